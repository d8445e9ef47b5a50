//! Suitable edge sets: edges credited to a saved taxon, with every colored
//! edge carrying its own color from the taxon's color set.

use crate::colorcoding::Coloring;
use crate::diversity::tree_edges_above;
use crate::model::{EdgeId, PhyloNetwork, TaxonId, VertexId, VertexKind};
use crate::solver_dbar::ColorSet;

/// A suitable set for one taxon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuitableSet {
    pub taxon: TaxonId,
    /// Colors of the colored edges of the set.
    pub colors: ColorSet,
    /// The edges, sorted.
    pub edges: Vec<EdgeId>,
    pub weight: u64,
}

/// Checks the definition of an `(x, χ)`-suitable set for `chi = χ(x)`:
/// colored edges carry distinct colors from `chi` and every edge has a path
/// to `x` inside the set. Uncolored edges are unconstrained.
pub fn is_suitable(net: &PhyloNetwork, coloring: &Coloring, x: TaxonId, chi: ColorSet, f: &[EdgeId]) -> bool {
    let mut in_f = vec![false; net.num_edges()];
    for &e in f {
        in_f[e] = true;
    }
    let mut used: ColorSet = 0;
    for &e in f {
        if let Some(c) = coloring.color(e) {
            let b = 1u64 << c;
            if b & chi == 0 || b & used != 0 {
                return false;
            }
            used |= b;
        }
    }
    let mut reaches = vec![false; net.num_vertices()];
    reaches[net.taxon_vertex(x)] = true;
    for &v in net.topological_order().iter().rev() {
        if net.out_edges(v).iter().any(|&e| in_f[e] && reaches[net.edge(e).head]) {
            reaches[v] = true;
        }
    }
    f.iter().all(|&e| reaches[net.edge(e).head])
}

/// Adds the incoming edges of every reticulation that is the tail of an edge
/// of `f`, repeatedly, together with the edge entering `x`.
fn close(net: &PhyloNetwork, x: TaxonId, f: &mut Vec<EdgeId>) {
    let mut in_f = vec![false; net.num_edges()];
    for &e in f.iter() {
        in_f[e] = true;
    }
    let first = net.taxon_edge(x);
    if !in_f[first] {
        in_f[first] = true;
        f.push(first);
    }
    let mut i = 0;
    while i < f.len() {
        let u = net.edge(f[i]).tail;
        if net.kind(u) == VertexKind::Reticulation {
            for &g in net.in_edges(u) {
                if !std::mem::replace(&mut in_f[g], true) {
                    f.push(g);
                }
            }
        }
        i += 1;
    }
    f.sort_unstable();
}

/// A suitable set of largest weight for `x` whose colors lie in `chi`,
/// found by trying every subset of the colored edges above `x`.
pub fn max_suitable_weight(net: &PhyloNetwork, coloring: &Coloring, x: TaxonId, chi: ColorSet) -> Option<SuitableSet> {
    let above = tree_edges_above(net, x);
    assert!(above.len() < 32, "too many tree edges above taxon {x}");
    let mut best: Option<SuitableSet> = None;
    for mask in 0u32..(1 << above.len()) {
        let mut f: Vec<EdgeId> = (0..above.len()).filter(|&i| mask >> i & 1 == 1).map(|i| above[i]).collect();
        close(net, x, &mut f);
        if !is_suitable(net, coloring, x, chi, &f) {
            continue;
        }
        let weight = f.iter().map(|&e| net.edge(e).weight).sum();
        if best.as_ref().is_none_or(|b| weight > b.weight) {
            let colors = f.iter().filter_map(|&e| coloring.color(e)).fold(0, |m, c| m | 1 << c);
            best = Some(SuitableSet { taxon: x, colors, edges: f, weight });
        }
    }
    best
}

/// Suitable sets of `x` grown upwards from its leaf edge: at every reached
/// tree vertex the entering edge is taken or not, at every reticulation all
/// entering edges are taken. Keeps the heaviest set per color set and drops
/// sets beaten by one with fewer colors.
pub(crate) fn suitable_options(net: &PhyloNetwork, colors: &[Option<ColorSet>], x: TaxonId) -> Vec<SuitableSet> {
    let first = net.taxon_edge(x);
    let mut search = Search {
        net,
        colors,
        taxon: x,
        edges: vec![first],
        visited: vec![false; net.num_vertices()],
        found: Vec::new(),
    };
    let tail = net.edge(first).tail;
    search.visited[tail] = true;
    search.explore(vec![tail], colors[first].unwrap_or(0), net.edge(first).weight);
    let mut found = search.found;
    found.sort_by(|a, b| {
        a.colors.count_ones().cmp(&b.colors.count_ones()).then(b.weight.cmp(&a.weight)).then(a.colors.cmp(&b.colors))
    });
    let mut kept: Vec<SuitableSet> = Vec::new();
    for s in found {
        if !kept.iter().any(|k| k.colors & !s.colors == 0 && k.weight >= s.weight) {
            kept.push(s);
        }
    }
    kept
}

struct Search<'a> {
    net: &'a PhyloNetwork,
    colors: &'a [Option<ColorSet>],
    taxon: TaxonId,
    edges: Vec<EdgeId>,
    visited: Vec<bool>,
    found: Vec<SuitableSet>,
}

impl Search<'_> {
    fn explore(&mut self, mut pending: Vec<VertexId>, used: ColorSet, weight: u64) {
        let net = self.net;
        let Some(u) = pending.pop() else {
            let mut edges = self.edges.clone();
            edges.sort_unstable();
            self.found.push(SuitableSet { taxon: self.taxon, colors: used, edges, weight });
            return;
        };
        match net.kind(u) {
            VertexKind::Reticulation => {
                let mut added = 0;
                let mut newly = Vec::new();
                let mut total = weight;
                let mut colors = used;
                for &e in net.in_edges(u) {
                    if let Some(b) = self.colors[e] {
                        if colors & b != 0 {
                            self.undo(added, newly);
                            return;
                        }
                        colors |= b;
                    }
                    self.edges.push(e);
                    added += 1;
                    total += net.edge(e).weight;
                    let t = net.edge(e).tail;
                    if !self.visited[t] {
                        self.visited[t] = true;
                        newly.push(t);
                        pending.push(t);
                    }
                }
                self.explore(pending, colors, total);
                self.undo(added, newly);
            }
            VertexKind::Tree => {
                self.explore(pending.clone(), used, weight);
                let e = net.in_edges(u)[0];
                let b = self.colors[e].unwrap_or(0);
                if used & b != 0 {
                    return;
                }
                self.edges.push(e);
                let t = net.edge(e).tail;
                let fresh = !self.visited[t];
                if fresh {
                    self.visited[t] = true;
                    pending.push(t);
                }
                self.explore(pending, used | b, weight + net.edge(e).weight);
                self.edges.pop();
                if fresh {
                    self.visited[t] = false;
                }
            }
            VertexKind::Root | VertexKind::Leaf => self.explore(pending, used, weight),
        }
    }

    fn undo(&mut self, added: usize, newly: Vec<VertexId>) {
        self.edges.truncate(self.edges.len() - added);
        for t in newly {
            self.visited[t] = false;
        }
    }
}
