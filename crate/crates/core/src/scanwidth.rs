//! Tree extensions of a food web, their GW sets and scanwidth.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::text::records;
use crate::model::{FoodWeb, TaxonId, WebEdgeId};

/// Largest web handled by [`exact_extension`].
pub const EXACT_EXTENSION_CAP: usize = 14;

/// A rooted tree on the taxa in which every web edge joins an ancestor to a
/// descendant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeExtension {
    parent: Vec<Option<TaxonId>>,
    children: Vec<Vec<TaxonId>>,
    root: TaxonId,
    gw: Vec<Vec<WebEdgeId>>,
    width: usize,
    dfs_order: Vec<TaxonId>,
}

impl TreeExtension {
    pub fn root(&self) -> TaxonId {
        self.root
    }

    pub fn parent(&self, v: TaxonId) -> Option<TaxonId> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<TaxonId>] {
        &self.parent
    }

    /// Children in increasing taxon order.
    pub fn children(&self, v: TaxonId) -> &[TaxonId] {
        &self.children[v]
    }

    /// Web edges passing over the tree edge into `v`, in increasing id order.
    pub fn gw(&self, v: TaxonId) -> &[WebEdgeId] {
        &self.gw[v]
    }

    /// Largest `|GW(v)|`.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Preorder with children visited in taxon order.
    pub fn dfs_order(&self) -> &[TaxonId] {
        &self.dfs_order
    }

    pub fn num_taxa(&self) -> usize {
        self.parent.len()
    }

    /// Serializes to the `ROOT` / `EDGE` format.
    pub fn to_text(&self, fw: &FoodWeb) -> String {
        let mut out = format!("ROOT {}\n", fw.name(self.root));
        for &v in &self.dfs_order {
            for &c in &self.children[v] {
                let _ = writeln!(out, "EDGE {} {}", fw.name(v), fw.name(c));
            }
        }
        out
    }
}

/// Checks that `parent` describes a tree extension of `fw` and computes its
/// GW sets together with the width.
pub fn validate_extension(fw: &FoodWeb, parent: &[Option<TaxonId>]) -> Result<TreeExtension> {
    let n = fw.num_taxa();
    if parent.len() != n {
        return Err(Error::Extension(format!("the parent map covers {} taxa, the food web has {n}", parent.len())));
    }
    let roots: Vec<TaxonId> = (0..n).filter(|&v| parent[v].is_none()).collect();
    if roots.len() != 1 {
        return Err(Error::Extension(format!("not a tree: expected one root, found {}", roots.len())));
    }
    let root = roots[0];
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = parent[v] {
            if p >= n {
                return Err(Error::Extension(format!("{} has an unknown parent", fw.name(v))));
            }
            children[p].push(v);
        }
    }
    let mut dfs_order = Vec::with_capacity(n);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        dfs_order.push(v);
        stack.extend(children[v].iter().rev());
    }
    if dfs_order.len() != n {
        return Err(Error::Extension("not a tree: some taxa are not below the root".into()));
    }
    let mut gw = vec![Vec::new(); n];
    for (id, e) in fw.edges().iter().enumerate() {
        let mut v = e.predator;
        let mut passed = Vec::new();
        while v != e.prey {
            passed.push(v);
            match parent[v] {
                Some(p) => v = p,
                None => {
                    return Err(Error::Extension(format!(
                        "ancestor condition violated for edge {}->{}",
                        fw.name(e.prey),
                        fw.name(e.predator)
                    )))
                }
            }
        }
        for v in passed {
            gw[v].push(id);
        }
    }
    let width = gw.iter().map(Vec::len).max().unwrap_or(0);
    Ok(TreeExtension { parent: parent.to_vec(), children, root, gw, width, dfs_order })
}

/// The preorder used by both dynamic programs.
pub fn dfs_taxon_order(ext: &TreeExtension) -> &[TaxonId] {
    ext.dfs_order()
}

/// Parses the `ROOT <taxon>` / `EDGE <parent> <child>` format.
pub fn parse_tree_extension(text: &str, fw: &FoodWeb) -> Result<TreeExtension> {
    let n = fw.num_taxa();
    let mut root = None;
    let mut parent: Vec<Option<TaxonId>> = vec![None; n];
    for rec in records(text) {
        let arity = match rec.tokens[0].text {
            "ROOT" => 1,
            "EDGE" => 2,
            other => return Err(rec.syntax(0, format!("expected ROOT or EDGE, found '{other}'"))),
        };
        if rec.tokens.len() != arity + 1 {
            return Err(rec.syntax(
                rec.tokens.len().min(arity),
                format!("{} needs {arity} field(s), found {}", rec.tokens[0].text, rec.tokens.len() - 1),
            ));
        }
        let mut ids = [0; 2];
        for i in 0..arity {
            let name = rec.tokens[i + 1].text;
            ids[i] = fw
                .names()
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| rec.syntax(i + 1, format!("unknown taxon '{name}'")))?;
        }
        if arity == 1 {
            if root.replace(ids[0]).is_some() {
                return Err(rec.syntax(0, "more than one ROOT line"));
            }
        } else if parent[ids[1]].replace(ids[0]).is_some() {
            return Err(rec.syntax(2, format!("{} has two parents", rec.tokens[2].text)));
        }
    }
    let root = root.ok_or_else(|| Error::Extension("missing ROOT line".into()))?;
    if parent[root].is_some() {
        return Err(Error::Extension(format!("the root {} has a parent", fw.name(root))));
    }
    validate_extension(fw, &parent)
}

/// Incremental state of a bottom-up construction: taxa already placed form a
/// forest whose trees are the weak components of the placed subgraph.
struct Assembly {
    comp: Vec<usize>,
    inbound: Vec<usize>,
    top: Vec<TaxonId>,
    parent: Vec<Option<TaxonId>>,
    placed: Vec<bool>,
}

impl Assembly {
    fn new(n: usize) -> Self {
        Self {
            comp: (0..n).collect(),
            inbound: vec![0; n],
            top: (0..n).collect(),
            parent: vec![None; n],
            placed: vec![false; n],
        }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.comp[r] != r {
            r = self.comp[r];
        }
        let mut v = v;
        while self.comp[v] != r {
            let next = self.comp[v];
            self.comp[v] = r;
            v = next;
        }
        r
    }

    /// Components that `v` would absorb, and the resulting GW size of `v`.
    fn cost(&mut self, fw: &FoodWeb, v: TaxonId) -> (Vec<usize>, usize) {
        let mut comps: Vec<usize> = fw.predators(v).map(|w| self.find(w)).collect();
        comps.sort_unstable();
        comps.dedup();
        let absorbed: usize = comps.iter().map(|&c| self.inbound[c]).sum();
        (comps, absorbed + fw.prey_edges(v).len() - fw.predator_edges(v).len())
    }

    fn place(&mut self, fw: &FoodWeb, v: TaxonId) -> usize {
        let (comps, cost) = self.cost(fw, v);
        for c in comps {
            let t = self.top[c];
            self.parent[t] = Some(v);
            self.comp[c] = v;
        }
        self.inbound[v] = cost;
        self.top[v] = v;
        self.placed[v] = true;
        cost
    }

    fn ready(&self, fw: &FoodWeb, v: TaxonId) -> bool {
        !self.placed[v] && fw.predators(v).all(|w| self.placed[w])
    }

    fn finish(mut self, fw: &FoodWeb, last: TaxonId) -> Result<TreeExtension> {
        for v in 0..fw.num_taxa() {
            if v != last && self.parent[v].is_none() {
                self.parent[v] = Some(last);
            }
        }
        validate_extension(fw, &self.parent)
    }
}

fn build_from_order(fw: &FoodWeb, order: &[TaxonId]) -> Result<TreeExtension> {
    let mut asm = Assembly::new(fw.num_taxa());
    for &v in order {
        asm.place(fw, v);
    }
    let last = *order.last().expect("the web has taxa");
    asm.finish(fw, last)
}

/// A minimum-width tree extension, found by dynamic programming over the
/// successor-closed taxon sets. Requires at most [`EXACT_EXTENSION_CAP`] taxa.
pub fn exact_extension(fw: &FoodWeb) -> Result<TreeExtension> {
    exact_extension_with_cap(fw, EXACT_EXTENSION_CAP)
}

/// [`exact_extension`] with a custom size cap (at most 24).
pub fn exact_extension_with_cap(fw: &FoodWeb, cap: usize) -> Result<TreeExtension> {
    let n = fw.num_taxa();
    if n > cap.min(24) {
        return Err(Error::Infeasible(format!(
            "exact tree extension is limited to {} taxa (the web has {n}); supply a tree extension file or use the heuristic",
            cap.min(24)
        )));
    }
    if n == 0 {
        return Err(Error::Extension("the food web has no taxa".into()));
    }
    let pred_mask: Vec<u32> = (0..n).map(|v| fw.predators(v).fold(0, |m, w| m | 1 << w)).collect();
    let prey_mask: Vec<u32> = (0..n).map(|v| fw.prey(v).fold(0, |m, w| m | 1 << w)).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let cost = |p: u32, v: usize| -> usize {
        let closed = p | 1 << v;
        let mut comp = 1u32 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = (pred_mask[w] | prey_mask[w]) & closed & !comp;
            comp |= next;
            frontier |= next;
        }
        let mut c = 0;
        let mut rest = comp;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            c += (prey_mask[w] & !comp).count_ones() as usize;
        }
        c
    };
    let size = 1usize << n;
    let mut best = vec![usize::MAX; size];
    let mut choice = vec![u8::MAX; size];
    best[0] = 0;
    for p in 0..size as u32 {
        let bp = best[p as usize];
        if bp == usize::MAX {
            continue;
        }
        for v in 0..n {
            if p >> v & 1 == 1 || pred_mask[v] & !p != 0 {
                continue;
            }
            let q = p | 1 << v;
            let w = bp.max(cost(p, v));
            if w < best[q as usize] {
                best[q as usize] = w;
                choice[q as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut p = full;
    while p != 0 {
        let v = choice[p as usize] as usize;
        order.push(v);
        p &= !(1 << v);
    }
    order.reverse();
    build_from_order(fw, &order)
}

/// A valid tree extension built greedily: repeatedly place the ready taxon
/// with the smallest resulting GW set, ties to the smallest id.
pub fn heuristic_extension(fw: &FoodWeb) -> Result<TreeExtension> {
    let n = fw.num_taxa();
    if n == 0 {
        return Err(Error::Extension("the food web has no taxa".into()));
    }
    let mut asm = Assembly::new(n);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut pick: Option<(usize, TaxonId)> = None;
        for v in 0..n {
            if !asm.ready(fw, v) {
                continue;
            }
            let (_, c) = asm.cost(fw, v);
            if pick.is_none_or(|(bc, _)| c < bc) {
                pick = Some((c, v));
            }
        }
        let (_, v) = pick.expect("an acyclic web always has a ready taxon");
        asm.place(fw, v);
        order.push(v);
    }
    asm.finish(fw, order[n - 1])
}

/// Uses the exact search when the web is small enough, otherwise the greedy
/// heuristic.
pub fn auto_extension(fw: &FoodWeb) -> Result<TreeExtension> {
    if fw.num_taxa() <= EXACT_EXTENSION_CAP {
        exact_extension(fw)
    } else {
        heuristic_extension(fw)
    }
}

/// Returns the extension with a new root `new_root` placed above the old root.
/// `fw` must be the web that contains `new_root`.
pub fn extend_with_root(ext: &TreeExtension, fw: &FoodWeb, new_root: TaxonId) -> Result<TreeExtension> {
    let mut parent = Vec::with_capacity(fw.num_taxa());
    for v in 0..fw.num_taxa() {
        parent.push(if v == new_root {
            None
        } else if v == ext.root() {
            Some(new_root)
        } else {
            ext.parent(v)
        });
    }
    validate_extension(fw, &parent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_foodweb, GammaScheme};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn web(n: usize, edges: &[(usize, usize)]) -> FoodWeb {
        let names: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
        let one = num_rational::BigRational::from_integer(1.into());
        let triples: Vec<_> = edges.iter().map(|&(u, v)| (u, v, one.clone())).collect();
        FoodWeb::from_triples(names, &triples).unwrap()
    }

    fn chain(n: usize) -> FoodWeb {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        web(n, &edges)
    }

    /// Every tree extension of a web on at most six taxa, by brute force over
    /// all parent maps.
    fn all_extensions(fw: &FoodWeb) -> Vec<TreeExtension> {
        let n = fw.num_taxa();
        let mut out = Vec::new();
        let mut code = vec![0usize; n];
        loop {
            let parent: Vec<Option<TaxonId>> =
                code.iter().enumerate().map(|(v, &c)| if c == v { None } else { Some(c) }).collect();
            if let Ok(ext) = validate_extension(fw, &parent) {
                out.push(ext);
            }
            let mut i = 0;
            while i < n {
                code[i] += 1;
                if code[i] < n {
                    break;
                }
                code[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        out
    }

    #[test]
    fn chain_extension_has_width_one() {
        let fw = chain(3);
        let ext = validate_extension(&fw, &[None, Some(0), Some(1)]).unwrap();
        assert_eq!(ext.width(), 1);
        assert_eq!(ext.dfs_order(), &[0, 1, 2]);
        let err = validate_extension(&fw, &[Some(1), Some(2), None]).unwrap_err();
        assert!(err.to_string().contains("ancestor condition violated"), "{err}");
    }

    #[test]
    fn edgeless_star_has_width_zero() {
        let fw = web(4, &[]);
        let ext = validate_extension(&fw, &[Some(2), Some(2), None, Some(2)]).unwrap();
        assert_eq!(ext.width(), 0);
        assert_eq!(exact_extension(&fw).unwrap().width(), 0);
        assert_eq!(heuristic_extension(&fw).unwrap().width(), 0);
    }

    #[test]
    fn sibling_order_follows_taxon_order() {
        let fw = web(3, &[]);
        let ext = validate_extension(&fw, &[None, Some(0), Some(0)]).unwrap();
        assert_eq!(dfs_taxon_order(&ext), &[0, 1, 2]);
    }

    #[test]
    fn not_a_tree() {
        let fw = web(3, &[]);
        assert!(validate_extension(&fw, &[None, None, Some(0)]).is_err());
        assert!(validate_extension(&fw, &[Some(1), Some(0), None]).is_err());
    }

    #[test]
    fn exact_on_small_webs() {
        assert_eq!(exact_extension(&chain(4)).unwrap().width(), 1);
        assert_eq!(heuristic_extension(&chain(4)).unwrap().width(), 1);
        let bip = web(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let best = all_extensions(&bip).iter().map(TreeExtension::width).min().unwrap();
        assert_eq!(exact_extension(&bip).unwrap().width(), best);
    }

    #[test]
    fn cap_is_enforced() {
        let fw = web(EXACT_EXTENSION_CAP + 1, &[]);
        assert!(matches!(exact_extension(&fw), Err(Error::Infeasible(_))));
        assert!(auto_extension(&fw).is_ok());
    }

    #[test]
    fn text_round_trip() {
        let fw = web(4, &[(0, 1), (0, 2), (2, 3)]);
        let ext = exact_extension(&fw).unwrap();
        let again = parse_tree_extension(&ext.to_text(&fw), &fw).unwrap();
        assert_eq!(ext, again);
        assert!(parse_tree_extension("EDGE t0 t1\n", &fw).is_err());
        assert!(parse_tree_extension("ROOT t0\nEDGE t0 zz\n", &fw).is_err());
    }

    fn random_web(seed: u64, n: usize, density: f64) -> FoodWeb {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
        random_foodweb(&names, density, GammaScheme::Epsilon, &mut rng).unwrap()
    }

    #[test]
    fn heuristic_never_beats_exact_on_ten_taxa() {
        for seed in 0..20 {
            let fw = random_web(seed, 10, 0.3);
            let exact = exact_extension(&fw).unwrap().width();
            assert!(heuristic_extension(&fw).unwrap().width() >= exact);
        }
    }

    fn is_ancestor(ext: &TreeExtension, a: TaxonId, mut v: TaxonId) -> bool {
        loop {
            if v == a {
                return true;
            }
            match ext.parent(v) {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exact_is_minimal_on_six_taxa(seed in any::<u64>(), n in 1usize..=6, density in 0.0f64..0.8) {
            let fw = random_web(seed, n, density);
            let best = all_extensions(&fw).iter().map(TreeExtension::width).min().unwrap();
            prop_assert_eq!(exact_extension(&fw).unwrap().width(), best);
        }

        #[test]
        fn extensions_are_consistent(seed in any::<u64>(), n in 1usize..=12, density in 0.0f64..0.6) {
            let fw = random_web(seed, n, density);
            for ext in [exact_extension(&fw).unwrap(), heuristic_extension(&fw).unwrap()] {
                let mut count = vec![0usize; n];
                for e in fw.edges() {
                    prop_assert!(is_ancestor(&ext, e.prey, e.predator));
                    let mut v = e.predator;
                    while v != e.prey {
                        count[v] += 1;
                        v = ext.parent(v).unwrap();
                    }
                }
                prop_assert_eq!(count.iter().copied().max().unwrap_or(0), ext.width());
                for v in 0..n {
                    prop_assert_eq!(count[v], ext.gw(v).len());
                    for &e in ext.gw(v) {
                        let p = ext.parent(v).unwrap();
                        prop_assert!(ext.gw(p).contains(&e) || fw.edge(e).prey == p);
                    }
                }
                let order = ext.dfs_order();
                let pos: Vec<usize> = {
                    let mut pos = vec![0; n];
                    for (i, &v) in order.iter().enumerate() {
                        pos[v] = i;
                    }
                    pos
                };
                for v in 0..n {
                    if let Some(p) = ext.parent(v) {
                        prop_assert!(pos[p] < pos[v]);
                    }
                    let below = (0..n).filter(|&w| is_ancestor(&ext, v, w)).count();
                    for w in 0..n {
                        if is_ancestor(&ext, v, w) {
                            prop_assert!(pos[w] >= pos[v] && pos[w] < pos[v] + below);
                        }
                    }
                }
            }
        }
    }
}
