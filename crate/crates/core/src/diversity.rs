//! Offspring sets, all-paths phylogenetic diversity and structural parameters.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::model::{EdgeId, PhyloNetwork, TaxonId, VertexId, VertexKind};

/// Height-type parameters of a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralParams {
    /// Most reticulations on a root-to-leaf path.
    pub h_r: usize,
    /// Most tree vertices on a root-to-leaf path. The root is not a tree vertex.
    pub h_t: usize,
    /// `h_r + h_t`.
    pub h: usize,
    /// Largest in-degree of a reticulation, 0 on a tree.
    pub delta: usize,
    /// Largest number of edges into tree vertices that lie on some path to a
    /// single taxon.
    pub big_h: usize,
}

/// Taxa reachable from `v`.
pub fn offspring(net: &PhyloNetwork, v: VertexId) -> Result<Vec<TaxonId>> {
    if v >= net.num_vertices() {
        return Err(Error::Network(format!("unknown vertex id {v}")));
    }
    Ok(net.offspring_set(v).ones().collect())
}

fn taxon_mask(net: &PhyloNetwork, a: &[TaxonId]) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(net.num_taxa());
    for &x in a {
        mask.insert(x);
    }
    mask
}

/// Edges lying on a directed path to some member of `a`.
pub fn edge_support(net: &PhyloNetwork, a: &[TaxonId]) -> Vec<EdgeId> {
    let mask = taxon_mask(net, a);
    (0..net.num_edges()).filter(|&e| !net.offspring_set(net.edge(e).head).is_disjoint(&mask)).collect()
}

/// All-paths phylogenetic diversity of `a`.
pub fn pd(net: &PhyloNetwork, a: &[TaxonId]) -> u64 {
    edge_support(net, a).into_iter().map(|e| net.edge(e).weight).sum()
}

/// Weight of the edges all of whose offspring lie in `extinct`, i.e. the
/// diversity lost when exactly the taxa in `extinct` disappear.
pub fn lost_weight(net: &PhyloNetwork, extinct: &[TaxonId]) -> u64 {
    let mask = taxon_mask(net, extinct);
    (0..net.num_edges())
        .filter(|&e| net.offspring_set(net.edge(e).head).is_subset(&mask))
        .map(|e| net.edge(e).weight)
        .sum()
}

/// `pd(X ∖ extinct)` through the complement identity.
pub fn pd_of_survivors(net: &PhyloNetwork, extinct: &[TaxonId]) -> u64 {
    net.total_weight() - lost_weight(net, extinct)
}

/// Edges into tree vertices whose head reaches taxon `x`.
pub fn tree_edges_above(net: &PhyloNetwork, x: TaxonId) -> Vec<EdgeId> {
    net.internal_tree_edges().into_iter().filter(|&e| net.offspring_set(net.edge(e).head).contains(x)).collect()
}

/// Computes the height parameters by longest-path passes in topological order.
pub fn structural_params(net: &PhyloNetwork) -> StructuralParams {
    let nv = net.num_vertices();
    let mut ret = vec![0usize; nv];
    let mut tree = vec![0usize; nv];
    let mut both = vec![0usize; nv];
    let mut delta = 0;
    for &v in net.topological_order() {
        let (r, t) = match net.kind(v) {
            VertexKind::Reticulation => {
                delta = delta.max(net.in_edges(v).len());
                (1, 0)
            }
            VertexKind::Tree => (0, 1),
            VertexKind::Root | VertexKind::Leaf => (0, 0),
        };
        let parents = net.in_edges(v).iter().map(|&e| net.edge(e).tail);
        let (mut br, mut bt, mut bb) = (0, 0, 0);
        for p in parents {
            br = br.max(ret[p]);
            bt = bt.max(tree[p]);
            bb = bb.max(both[p]);
        }
        ret[v] = br + r;
        tree[v] = bt + t;
        both[v] = bb + r + t;
    }
    let leaves = net.taxa();
    let h_r = leaves.iter().map(|&v| ret[v]).max().unwrap_or(0);
    let h_t = leaves.iter().map(|&v| tree[v]).max().unwrap_or(0);
    let h = leaves.iter().map(|&v| both[v]).max().unwrap_or(0);
    let mut per_taxon = vec![0usize; net.num_taxa()];
    for e in net.internal_tree_edges() {
        for x in net.offspring_set(net.edge(e).head).ones() {
            per_taxon[x] += 1;
        }
    }
    StructuralParams { h_r, h_t, h, delta, big_h: per_taxon.into_iter().max().unwrap_or(0) }
}
