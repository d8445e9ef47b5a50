//! Seeded random instances. Networks are trees grown by leaf insertion with
//! optional reticulations added; food webs are random acyclic graphs.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diversity::pd;
use crate::error::{Error, Result};
use crate::model::{FoodWeb, Instance, PhyloNetwork, TaxonId, ViabilityMode, WebEdge};

/// Size parameters of a random network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkShape {
    pub taxa: usize,
    pub reticulations: usize,
    /// Largest allowed reticulation in-degree; at least 2 when reticulations are requested.
    pub max_in_degree: usize,
    /// Edge weights are drawn uniformly from `1..=max_weight`.
    pub max_weight: u64,
}

/// How γ values of a random web are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaScheme {
    /// Every edge gets γ = 1.
    Epsilon,
    /// Every edge into `x` gets `1/|prey(x)|`.
    One,
    /// Random fractions `p/q` with `1 ≤ p ≤ q ≤ max_denominator`.
    Random { max_denominator: u32 },
}

/// Full description of a random instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub network: NetworkShape,
    /// Probability of each admissible prey → predator pair being an edge.
    pub web_density: f64,
    pub gamma: GammaScheme,
    pub mode: ViabilityMode,
    /// Defaults to roughly half the taxa.
    pub k: Option<usize>,
    /// Defaults to roughly half the total weight.
    pub d: Option<u64>,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            network: NetworkShape { taxa: 6, reticulations: 0, max_in_degree: 2, max_weight: 3 },
            web_density: 0.3,
            gamma: GammaScheme::Epsilon,
            mode: ViabilityMode::Gamma,
            k: None,
            d: None,
            seed: 0,
        }
    }
}

struct Builder {
    edges: Vec<(usize, usize)>,
    next: usize,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    fn subdivide(&mut self, e: usize) -> usize {
        let (u, v) = self.edges[e];
        let w = self.fresh();
        self.edges[e] = (u, w);
        self.edges.push((w, v));
        w
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut stack = vec![from];
        let mut seen = vec![false; self.next];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            stack.extend(self.edges.iter().filter(|e| e.0 == v).map(|e| e.1));
        }
        false
    }

    fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == v).count()
    }
}

/// Draws a random network. Taxa are named `x1, x2, …` and appear in that order.
pub fn random_network(shape: &NetworkShape, rng: &mut impl Rng) -> Result<PhyloNetwork> {
    if shape.taxa == 0 {
        return Err(Error::Instance("a network needs at least one taxon".into()));
    }
    if shape.max_weight == 0 {
        return Err(Error::Instance("max_weight must be at least 1".into()));
    }
    if shape.reticulations > 0 && shape.max_in_degree < 2 {
        return Err(Error::Instance("reticulations need a maximum in-degree of at least 2".into()));
    }
    // Vertex 0 is the root and vertices 1..=taxa are the leaves.
    let n = shape.taxa;
    let mut b = Builder { edges: vec![(0, 1)], next: n + 1 };
    if n >= 2 {
        b.edges.push((0, 2));
    }
    for leaf in 3..=n {
        let internal: Vec<usize> = {
            let mut heads: Vec<usize> = b.edges.iter().map(|e| e.0).collect();
            heads.sort_unstable();
            heads.dedup();
            heads
        };
        if rng.gen_bool(0.5) {
            let e = rng.gen_range(0..b.edges.len());
            let w = b.subdivide(e);
            b.edges.push((w, leaf));
        } else {
            let u = *internal.choose(rng).expect("the root is internal");
            b.edges.push((u, leaf));
        }
    }
    for _ in 0..shape.reticulations {
        let mut placed = false;
        for _ in 0..64 {
            let e1 = rng.gen_range(0..b.edges.len());
            let e2 = rng.gen_range(0..b.edges.len());
            if e1 == e2 {
                continue;
            }
            let (a, _) = b.edges[e1];
            let (_, d) = b.edges[e2];
            if b.reaches(d, a) {
                continue;
            }
            let p = b.subdivide(e1);
            let r = b.subdivide(e2);
            b.edges.push((p, r));
            while b.in_degree(r) < shape.max_in_degree && rng.gen_bool(0.35) {
                let e = rng.gen_range(0..b.edges.len());
                let (a, h) = b.edges[e];
                if h == r || b.reaches(r, a) {
                    continue;
                }
                let q = b.subdivide(e);
                b.edges.push((q, r));
            }
            placed = true;
            break;
        }
        if !placed {
            return Err(Error::Instance("could not place the requested number of reticulations".into()));
        }
    }
    let name = |v: usize| -> String {
        match v {
            0 => "r".to_string(),
            v if v <= n => format!("x{v}"),
            v => format!("v{}", v - n),
        }
    };
    let mut edges: Vec<(usize, usize)> = b.edges;
    // Leaf edges go last in leaf order so taxon ids follow the names.
    edges.sort_by_key(|&(_, h)| if (1..=n).contains(&h) { (1, h) } else { (0, 0) });
    let list: Vec<(String, String, u64)> =
        edges.into_iter().map(|(u, v)| (name(u), name(v), rng.gen_range(1..=shape.max_weight))).collect();
    PhyloNetwork::from_edges(&list)
}

/// Draws a random acyclic web on the given taxa.
pub fn random_foodweb(names: &[String], density: f64, gamma: GammaScheme, rng: &mut impl Rng) -> Result<FoodWeb> {
    let n = names.len();
    let mut order: Vec<TaxonId> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    let mut indeg = vec![0i64; n];
    for &(_, v) in &pairs {
        indeg[v] += 1;
    }
    let edges = pairs
        .into_iter()
        .map(|(u, v)| {
            let gamma = match gamma {
                GammaScheme::Epsilon => BigRational::from_integer(1.into()),
                GammaScheme::One => BigRational::new(1.into(), indeg[v].into()),
                GammaScheme::Random { max_denominator } => {
                    let q = rng.gen_range(1..=max_denominator.max(1));
                    let p = rng.gen_range(1..=q);
                    BigRational::new(p.into(), q.into())
                }
            };
            WebEdge { prey: u, predator: v, gamma }
        })
        .collect();
    FoodWeb::new(names.to_vec(), edges)
}

/// Draws a full instance from `cfg`; the same configuration always yields the
/// same instance.
pub fn generate_instance(cfg: &GeneratorConfig) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let network = random_network(&cfg.network, &mut rng)?;
    let foodweb = random_foodweb(&network.taxon_names(), cfg.web_density, cfg.gamma, &mut rng)?;
    let n = network.num_taxa();
    let k = cfg.k.unwrap_or(n.div_ceil(2));
    if k > n {
        return Err(Error::Instance(format!("k = {k} exceeds the number of taxa ({n})")));
    }
    let all: Vec<TaxonId> = (0..n).collect();
    let d = cfg.d.unwrap_or(pd(&network, &all) / 2);
    Instance::new(network, foodweb, k, d, cfg.mode)
}
