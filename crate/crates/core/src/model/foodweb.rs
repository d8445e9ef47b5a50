use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::network::TaxonId;
use super::text::{format_rational, parse_rational, records};
use crate::error::{Error, Result};

pub type WebEdgeId = usize;

/// How the γ weights of a food web are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ViabilityMode {
    /// Use the γ values from the input.
    #[default]
    Gamma,
    /// Every edge has weight 1: a taxon survives if it keeps any prey.
    Epsilon,
    /// Every incoming edge of `x` has weight `1/|prey(x)|`: a taxon needs all its prey.
    One,
}

impl std::str::FromStr for ViabilityMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "gamma" => Ok(Self::Gamma),
            "epsilon" => Ok(Self::Epsilon),
            "one" => Ok(Self::One),
            other => Err(format!("unknown viability mode '{other}' (expected gamma, epsilon or one)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebEdge {
    pub prey: TaxonId,
    pub predator: TaxonId,
    pub gamma: BigRational,
}

/// A food web: an acyclic prey → predator graph on the taxa with exact
/// rational edge weights in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct FoodWeb {
    names: Vec<String>,
    edges: Vec<WebEdge>,
    prey_edges: Vec<Vec<WebEdgeId>>,
    predator_edges: Vec<Vec<WebEdgeId>>,
    topo: Vec<TaxonId>,
}

impl FoodWeb {
    /// Parses the `EDGE <prey> <predator> <gamma>` format over the given taxa.
    pub fn parse(text: &str, taxa: &[String]) -> Result<Self> {
        let index: HashMap<&str, TaxonId> = taxa.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut edges = Vec::new();
        for rec in records(text) {
            if rec.tokens[0].text != "EDGE" {
                return Err(rec.syntax(0, format!("expected EDGE, found '{}'", rec.tokens[0].text)));
            }
            if rec.tokens.len() != 4 {
                return Err(rec.syntax(
                    rec.tokens.len().min(3),
                    format!("EDGE needs 3 fields (prey predator gamma), found {}", rec.tokens.len() - 1),
                ));
            }
            let mut ends = [0; 2];
            for (slot, tok) in [1, 2].into_iter().enumerate() {
                let name = rec.tokens[tok].text;
                ends[slot] = *index.get(name).ok_or_else(|| rec.syntax(tok, format!("unknown taxon '{name}'")))?;
            }
            let gamma = parse_rational(rec.tokens[3].text)
                .ok_or_else(|| rec.syntax(3, format!("gamma '{}' is not a number", rec.tokens[3].text)))?;
            if gamma < BigRational::zero() || gamma > BigRational::one() {
                return Err(rec.syntax(3, format!("gamma {} lies outside [0,1]", rec.tokens[3].text)));
            }
            edges.push(WebEdge { prey: ends[0], predator: ends[1], gamma });
        }
        Self::new(taxa.to_vec(), edges)
    }

    /// Builds and validates a web over `names` (indexed by taxon id).
    pub fn new(names: Vec<String>, edges: Vec<WebEdge>) -> Result<Self> {
        let n = names.len();
        let mut prey_edges = vec![Vec::new(); n];
        let mut predator_edges = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (id, e) in edges.iter().enumerate() {
            if e.prey >= n || e.predator >= n {
                return Err(Error::FoodWeb(format!("edge {id} refers to an unknown taxon")));
            }
            if e.gamma < BigRational::zero() || e.gamma > BigRational::one() {
                return Err(Error::FoodWeb(format!(
                    "edge {}->{}: gamma {} lies outside [0,1]",
                    names[e.prey],
                    names[e.predator],
                    format_rational(&e.gamma)
                )));
            }
            if e.prey == e.predator {
                return Err(Error::FoodWeb(format!("cycle: {} preys on itself", names[e.prey])));
            }
            if !seen.insert((e.prey, e.predator)) {
                return Err(Error::FoodWeb(format!("duplicate edge {}->{}", names[e.prey], names[e.predator])));
            }
            prey_edges[e.predator].push(id);
            predator_edges[e.prey].push(id);
        }
        let mut indeg: Vec<usize> = prey_edges.iter().map(Vec::len).collect();
        let mut stack: Vec<TaxonId> = (0..n).rev().filter(|&x| indeg[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = stack.pop() {
            topo.push(x);
            for &e in predator_edges[x].iter().rev() {
                let y = edges[e].predator;
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if topo.len() != n {
            let culprit = (0..n).find(|&x| indeg[x] > 0).unwrap_or(0);
            return Err(Error::FoodWeb(format!("the food web contains a cycle through {}", names[culprit])));
        }
        Ok(Self { names, edges, prey_edges, predator_edges, topo })
    }

    /// Convenience constructor from `(prey, predator, gamma)` triples of taxon ids.
    pub fn from_triples(names: Vec<String>, triples: &[(TaxonId, TaxonId, BigRational)]) -> Result<Self> {
        let edges = triples.iter().map(|(u, v, g)| WebEdge { prey: *u, predator: *v, gamma: g.clone() }).collect();
        Self::new(names, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ =
                writeln!(out, "EDGE {} {} {}", self.names[e.prey], self.names[e.predator], format_rational(&e.gamma));
        }
        out
    }

    pub fn num_taxa(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: TaxonId) -> &str {
        &self.names[x]
    }

    pub fn edges(&self) -> &[WebEdge] {
        &self.edges
    }

    pub fn edge(&self, e: WebEdgeId) -> &WebEdge {
        &self.edges[e]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Incoming edges of `x` (one per prey).
    pub fn prey_edges(&self, x: TaxonId) -> &[WebEdgeId] {
        &self.prey_edges[x]
    }

    /// Outgoing edges of `x` (one per predator).
    pub fn predator_edges(&self, x: TaxonId) -> &[WebEdgeId] {
        &self.predator_edges[x]
    }

    pub fn prey(&self, x: TaxonId) -> impl Iterator<Item = TaxonId> + '_ {
        self.prey_edges[x].iter().map(|&e| self.edges[e].prey)
    }

    pub fn predators(&self, x: TaxonId) -> impl Iterator<Item = TaxonId> + '_ {
        self.predator_edges[x].iter().map(|&e| self.edges[e].predator)
    }

    pub fn is_source(&self, x: TaxonId) -> bool {
        self.prey_edges[x].is_empty()
    }

    pub fn sources(&self) -> Vec<TaxonId> {
        (0..self.num_taxa()).filter(|&x| self.is_source(x)).collect()
    }

    /// Taxa with every prey before its predators.
    pub fn topological_order(&self) -> &[TaxonId] {
        &self.topo
    }

    /// Total γ over a set of web edges.
    pub fn gamma_sum<'a>(&self, edges: impl IntoIterator<Item = &'a WebEdgeId>) -> BigRational {
        edges.into_iter().fold(BigRational::zero(), |acc, &e| acc + &self.edges[e].gamma)
    }
}

/// Re-weights a web according to the viability mode.
pub fn derive_gamma(fw: &FoodWeb, mode: ViabilityMode) -> FoodWeb {
    let mut web = fw.clone();
    match mode {
        ViabilityMode::Gamma => {}
        ViabilityMode::Epsilon => {
            for e in &mut web.edges {
                e.gamma = BigRational::one();
            }
        }
        ViabilityMode::One => {
            for x in 0..web.num_taxa() {
                let d = web.prey_edges[x].len();
                for &e in &fw.prey_edges[x] {
                    web.edges[e].gamma = BigRational::new(1.into(), (d as i64).into());
                }
            }
        }
    }
    web
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_edge_web() {
        let fw = FoodWeb::parse("EDGE a b 1\n", &names(&["a", "b"])).unwrap();
        assert_eq!(fw.num_edges(), 1);
        assert_eq!(fw.sources(), vec![0]);
    }

    #[test]
    fn decimal_and_fraction_literals_match() {
        let fw = FoodWeb::parse("EDGE a b 0.5\nEDGE c b 1/2\n", &names(&["a", "b", "c"])).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(fw.edge(0).gamma, half);
        assert_eq!(fw.edge(1).gamma, half);
    }

    #[test]
    fn cycles_and_bad_weights_are_rejected() {
        let taxa = names(&["a", "b"]);
        let err = FoodWeb::parse("EDGE a b 1\nEDGE b a 1\n", &taxa).unwrap_err();
        assert!(err.to_string().contains("cycle"), "{err}");
        assert!(FoodWeb::parse("EDGE a b 1.5\n", &taxa).is_err());
        assert!(FoodWeb::parse("EDGE a b -1/2\n", &taxa).is_err());
        let unknown = FoodWeb::parse("EDGE a z 1\n", &taxa).unwrap_err();
        assert!(unknown.to_string().contains("unknown taxon 'z'"), "{unknown}");
    }

    #[test]
    fn derived_weights() {
        let taxa = names(&["p1", "p2", "p3", "x"]);
        let fw = FoodWeb::parse("EDGE p1 x 0.4\nEDGE p2 x 0.1\nEDGE p3 x 0\n", &taxa).unwrap();
        let eps = derive_gamma(&fw, ViabilityMode::Epsilon);
        assert!(eps.edges().iter().all(|e| e.gamma == BigRational::one()));
        let one = derive_gamma(&fw, ViabilityMode::One);
        let third = BigRational::new(1.into(), 3.into());
        assert!(one.edges().iter().all(|e| e.gamma == third));
        assert_eq!(one.gamma_sum(one.prey_edges(3)), BigRational::one());
        let same = derive_gamma(&fw, ViabilityMode::Gamma);
        assert_eq!(same.edges(), fw.edges());
    }

    #[test]
    fn text_round_trip() {
        let taxa = names(&["a", "b", "c"]);
        let fw = FoodWeb::parse("EDGE a b 2/6\nEDGE b c 0.25\n", &taxa).unwrap();
        let again = FoodWeb::parse(&fw.to_text(), &taxa).unwrap();
        assert_eq!(fw.edges(), again.edges());
    }
}
