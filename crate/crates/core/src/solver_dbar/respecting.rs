//! Respecting edge sets: the edges that disappear with a taxon, certified by
//! anchor edges whose colors lie in a given color set.

use crate::colorcoding::Coloring;
use crate::matching::{max_matching, saturates_left, BipartiteGraph};
use crate::model::{EdgeId, NetEdge, PhyloNetwork, TaxonId, VertexId};

/// A set of at most 64 colors as a bit mask.
pub type ColorSet = u64;

/// Largest palette the color-set masks can hold.
pub const MAX_COLORS: usize = 64;

/// An `(x, C)`-respecting edge set together with one anchor per tail that
/// needs one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RespectingSet {
    pub taxon: TaxonId,
    /// The color set `C` that anchors are drawn from and `F` must avoid.
    pub colors: ColorSet,
    /// The edges `F`, sorted.
    pub edges: Vec<EdgeId>,
    /// The anchors, sorted.
    pub anchors: Vec<EdgeId>,
    pub weight: u64,
    /// Colors of the edges of `F`.
    pub edge_colors: ColorSet,
}

fn bit(coloring: &Coloring, e: EdgeId) -> ColorSet {
    let c = coloring.color(e).unwrap_or_else(|| panic!("edge {e} has no color; respecting sets need a total coloring"));
    assert!((c as usize) < MAX_COLORS, "color {c} does not fit a 64-color mask");
    1 << c
}

fn out_colors(net: &PhyloNetwork, coloring: &Coloring, u: VertexId) -> ColorSet {
    net.out_edges(u).iter().fold(0, |m, &e| m | bit(coloring, e))
}

/// Computes `F_{x,C}` or reports that it does not exist.
///
/// # Panics
/// If the coloring leaves an edge uncolored or uses a color of 64 or more.
pub fn compute_respecting(
    net: &PhyloNetwork,
    coloring: &Coloring,
    x: TaxonId,
    c_set: ColorSet,
) -> Option<RespectingSet> {
    compute_respecting_with_order(net, coloring, x, c_set, |_| 0)
}

/// Like [`compute_respecting`], with `pick` choosing which pending tail is
/// expanded next: it receives the number of pending tails and returns an
/// index below it. The result does not depend on the choices.
pub fn compute_respecting_with_order(
    net: &PhyloNetwork,
    coloring: &Coloring,
    x: TaxonId,
    c_set: ColorSet,
    mut pick: impl FnMut(usize) -> usize,
) -> Option<RespectingSet> {
    let first = net.taxon_edge(x);
    let mut in_f = vec![false; net.num_edges()];
    let mut seen_tail = vec![false; net.num_vertices()];
    in_f[first] = true;
    let mut edges = vec![first];
    let mut pending = vec![net.edge(first).tail];
    seen_tail[net.edge(first).tail] = true;
    let mut requiring = Vec::new();
    while !pending.is_empty() {
        let u = pending.swap_remove(pick(pending.len()));
        if out_colors(net, coloring, u) & c_set != 0 {
            requiring.push(u);
            continue;
        }
        for &e in net.in_edges(u) {
            if !in_f[e] {
                in_f[e] = true;
                edges.push(e);
                let t = net.edge(e).tail;
                if !std::mem::replace(&mut seen_tail[t], true) {
                    pending.push(t);
                }
            }
        }
    }
    let mut edge_colors: ColorSet = 0;
    for &e in &edges {
        let b = bit(coloring, e);
        if b & c_set != 0 || b & edge_colors != 0 {
            return None;
        }
        edge_colors |= b;
    }
    requiring.sort_unstable();
    let palette: Vec<u32> = (0..MAX_COLORS as u32).filter(|c| c_set >> c & 1 == 1).collect();
    let adj: Vec<Vec<usize>> = requiring
        .iter()
        .map(|&u| {
            net.out_edges(u).iter().filter_map(|&e| palette.iter().position(|&c| bit(coloring, e) == 1 << c)).collect()
        })
        .collect();
    let graph = BipartiteGraph::new(palette.len(), adj);
    let matching = max_matching(&graph);
    if !saturates_left(&graph, &matching) {
        return None;
    }
    let mut anchors: Vec<EdgeId> = requiring
        .iter()
        .zip(&matching.left_to_right)
        .map(|(&u, r)| {
            let color = palette[r.expect("saturating matching")];
            *net.out_edges(u)
                .iter()
                .find(|&&e| bit(coloring, e) == 1 << color)
                .expect("matched color is on an out-edge")
        })
        .collect();
    anchors.sort_unstable();
    edges.sort_unstable();
    let weight = edges.iter().map(|&e| net.edge(e).weight).sum();
    Some(RespectingSet { taxon: x, colors: c_set, edges, anchors, weight, edge_colors })
}

/// Checks the definition of an `(x, C)`-respecting set literally for a given
/// edge set `f` and anchor set `anchors`.
pub fn is_respecting(
    net: &PhyloNetwork,
    coloring: &Coloring,
    x: TaxonId,
    c_set: ColorSet,
    f: &[EdgeId],
    anchors: &[EdgeId],
) -> bool {
    let mut in_f = vec![false; net.num_edges()];
    for &e in f {
        in_f[e] = true;
    }
    let mut in_a = vec![false; net.num_edges()];
    for &e in anchors {
        in_a[e] = true;
    }
    if !in_f[net.taxon_edge(x)] {
        return false;
    }
    if f.iter().any(|&e| bit(coloring, e) & c_set != 0) {
        return false;
    }
    if anchors.iter().any(|&e| bit(coloring, e) & c_set == 0) {
        return false;
    }
    let mut used: ColorSet = 0;
    for (i, &e) in f.iter().chain(anchors).enumerate() {
        let b = bit(coloring, e);
        if used & b != 0 {
            return false;
        }
        if i < f.len() && in_a[e] {
            return false;
        }
        used |= b;
    }
    let mut reaches = vec![false; net.num_vertices()];
    reaches[net.taxon_vertex(x)] = true;
    for &v in net.topological_order().iter().rev() {
        if net.out_edges(v).iter().any(|&e| in_f[e] && reaches[net.edge(e).head]) {
            reaches[v] = true;
        }
    }
    for &e in f {
        let NetEdge { tail: u, head: v, .. } = net.edge(e);
        if !reaches[v] {
            return false;
        }
        let all_in = net.in_edges(u).iter().all(|&g| in_f[g]);
        let none_in = net.in_edges(u).iter().all(|&g| !in_f[g]);
        let out = net.out_edges(u);
        let first = all_in && out.iter().all(|&g| bit(coloring, g) & c_set == 0);
        let second = none_in && out.iter().any(|&g| bit(coloring, g) & c_set != 0 && in_a[g]);
        if first == second {
            return false;
        }
    }
    true
}

/// Finds an `(x, C)`-respecting set by trying every edge subset and every
/// assignment of anchors to tails. Exponential in the number of edges.
pub fn brute_force_respecting(
    net: &PhyloNetwork,
    coloring: &Coloring,
    x: TaxonId,
    c_set: ColorSet,
) -> Option<(Vec<EdgeId>, Vec<EdgeId>)> {
    let q = net.num_edges();
    assert!(q <= 20, "brute force is limited to 20 edges");
    let candidates: Vec<EdgeId> = (0..q).filter(|&e| bit(coloring, e) & c_set != 0).collect();
    for mask in 0u32..(1 << q) {
        let f: Vec<EdgeId> = (0..q).filter(|&e| mask >> e & 1 == 1).collect();
        if !f.contains(&net.taxon_edge(x)) {
            continue;
        }
        let mut tails: Vec<VertexId> = f.iter().map(|&e| net.edge(e).tail).collect();
        tails.sort_unstable();
        tails.dedup();
        let mut chosen = Vec::new();
        if assign_anchors(net, coloring, x, c_set, &f, &tails, &candidates, &mut chosen) {
            return Some((f, chosen));
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn assign_anchors(
    net: &PhyloNetwork,
    coloring: &Coloring,
    x: TaxonId,
    c_set: ColorSet,
    f: &[EdgeId],
    tails: &[VertexId],
    candidates: &[EdgeId],
    chosen: &mut Vec<EdgeId>,
) -> bool {
    let Some((&u, rest)) = tails.split_first() else {
        return is_respecting(net, coloring, x, c_set, f, chosen);
    };
    if assign_anchors(net, coloring, x, c_set, f, rest, candidates, chosen) {
        return true;
    }
    for &e in candidates.iter().filter(|&&e| net.edge(e).tail == u) {
        chosen.push(e);
        if assign_anchors(net, coloring, x, c_set, f, rest, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Checks that `(a, chi1, chi2)` is a perfect triple, with `a` in the order
/// used for the ordered disjointness condition.
pub fn perfect_triple_check(
    a: &[TaxonId],
    chi1: &[ColorSet],
    chi2: &[ColorSet],
    net: &PhyloNetwork,
    coloring: &Coloring,
) -> bool {
    if chi1.len() != a.len() || chi2.len() != a.len() {
        return false;
    }
    for i in 0..a.len() {
        for j in 0..a.len() {
            if i != j && (chi1[i] & chi1[j] != 0 || chi2[i] & chi2[j] != 0) {
                return false;
            }
            if i <= j && chi1[i] & chi2[j] != 0 {
                return false;
            }
        }
    }
    a.iter()
        .zip(chi1)
        .zip(chi2)
        .all(|((&x, &c1), &c2)| compute_respecting(net, coloring, x, c2).is_some_and(|r| r.edge_colors == c1))
}

/// Every respecting set of `x` whose color set consists exactly of its
/// anchor colors and whose weight is at most `max_weight`, one per color set.
pub(crate) fn respecting_options(
    net: &PhyloNetwork,
    colors: &[ColorSet],
    x: TaxonId,
    max_weight: u64,
) -> Vec<RespectingSet> {
    let first = net.taxon_edge(x);
    if net.edge(first).weight > max_weight {
        return Vec::new();
    }
    let mut search = OptionSearch {
        net,
        colors,
        taxon: x,
        max_weight,
        in_f: vec![false; net.num_edges()],
        decided: vec![false; net.num_vertices()],
        edges: vec![first],
        anchors: Vec::new(),
        found: Vec::new(),
    };
    search.in_f[first] = true;
    let tail = net.edge(first).tail;
    search.decided[tail] = true;
    search.explore(vec![tail], colors[first], 0, colors[first], net.edge(first).weight);
    search.found.sort_by_key(|r| r.colors);
    search.found.dedup_by_key(|r| r.colors);
    search.found
}

struct OptionSearch<'a> {
    net: &'a PhyloNetwork,
    colors: &'a [ColorSet],
    taxon: TaxonId,
    max_weight: u64,
    in_f: Vec<bool>,
    decided: Vec<bool>,
    edges: Vec<EdgeId>,
    anchors: Vec<EdgeId>,
    found: Vec<RespectingSet>,
}

impl OptionSearch<'_> {
    /// `forbidden` holds the colors anchors may not take: colors of `F` and
    /// out-colors of tails whose in-edges were pulled into `F`.
    fn explore(
        &mut self,
        mut pending: Vec<VertexId>,
        edge_colors: ColorSet,
        c_set: ColorSet,
        forbidden: ColorSet,
        weight: u64,
    ) {
        let Some(u) = pending.pop() else {
            let mut edges = self.edges.clone();
            edges.sort_unstable();
            let mut anchors = self.anchors.clone();
            anchors.sort_unstable();
            self.found.push(RespectingSet { taxon: self.taxon, colors: c_set, edges, anchors, weight, edge_colors });
            return;
        };
        let net = self.net;
        let out = net.out_edges(u).iter().fold(0, |m, &e| m | self.colors[e]);
        if out & c_set == 0 {
            self.pull_in_edges(u, &pending, edge_colors, c_set, forbidden | out, weight);
        }
        let mut tried: ColorSet = 0;
        for &e in net.out_edges(u) {
            let b = self.colors[e];
            if self.in_f[e] || b & (c_set | forbidden | tried) != 0 {
                continue;
            }
            tried |= b;
            self.anchors.push(e);
            self.explore(pending.clone(), edge_colors, c_set | b, forbidden, weight);
            self.anchors.pop();
        }
    }

    fn pull_in_edges(
        &mut self,
        u: VertexId,
        pending: &[VertexId],
        edge_colors: ColorSet,
        c_set: ColorSet,
        forbidden: ColorSet,
        weight: u64,
    ) {
        let net = self.net;
        let mut colors = edge_colors;
        let mut total = weight;
        let mut added = Vec::new();
        let mut next = pending.to_vec();
        for &e in net.in_edges(u) {
            let b = self.colors[e];
            total += net.edge(e).weight;
            if b & (colors | c_set) != 0 || total > self.max_weight {
                return;
            }
            colors |= b;
            added.push(e);
        }
        let mut newly = Vec::new();
        for &e in &added {
            self.in_f[e] = true;
            self.edges.push(e);
            let t = net.edge(e).tail;
            if !self.decided[t] {
                self.decided[t] = true;
                newly.push(t);
                next.push(t);
            }
        }
        self.explore(next, colors, c_set, forbidden | colors, total);
        for &e in &added {
            self.in_f[e] = false;
        }
        self.edges.truncate(self.edges.len() - added.len());
        for t in newly {
            self.decided[t] = false;
        }
    }
}
