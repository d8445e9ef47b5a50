use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use super::text::records;
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type TaxonId = usize;

/// Upper bound on the total edge weight of an accepted network.
pub const MAX_TOTAL_WEIGHT: u64 = 1 << 62;

/// Structural class of a network vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Root,
    /// In-degree 1 and out-degree at least 2.
    Tree,
    /// Out-degree 1 and in-degree at least 2.
    Reticulation,
    /// In-degree 1 and out-degree 0; the leaves are the taxa.
    Leaf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NetEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: u64,
}

/// A rooted, edge-weighted phylogenetic network. Vertices get dense ids in
/// order of first appearance in the input, taxa are numbered in the same order.
#[derive(Debug, Clone)]
pub struct PhyloNetwork {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<NetEdge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    kinds: Vec<VertexKind>,
    root: VertexId,
    taxa: Vec<VertexId>,
    taxon_of: Vec<Option<TaxonId>>,
    topo: Vec<VertexId>,
    offspring: Vec<FixedBitSet>,
    total_weight: u64,
}

impl PhyloNetwork {
    /// Parses the `EDGE <tail> <head> <weight>` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for rec in records(text) {
            if rec.tokens[0].text != "EDGE" {
                return Err(rec.syntax(0, format!("expected EDGE, found '{}'", rec.tokens[0].text)));
            }
            if rec.tokens.len() != 4 {
                return Err(rec.syntax(
                    rec.tokens.len().min(3),
                    format!("EDGE needs 3 fields (tail head weight), found {}", rec.tokens.len() - 1),
                ));
            }
            let weight: u64 = rec.tokens[3]
                .text
                .parse()
                .map_err(|_| rec.syntax(3, format!("weight '{}' is not a nonnegative integer", rec.tokens[3].text)))?;
            edges.push((rec.tokens[1].text.to_string(), rec.tokens[2].text.to_string(), weight));
        }
        Self::from_edges(&edges)
    }

    /// Builds and validates a network from `(tail, head, weight)` triples.
    pub fn from_edges<S: AsRef<str>>(edge_list: &[(S, S, u64)]) -> Result<Self> {
        if edge_list.is_empty() {
            return Err(Error::Network("the network has no edges".into()));
        }
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, VertexId> = HashMap::new();
        let mut intern = |name: &str, names: &mut Vec<String>| -> VertexId {
            if let Some(&id) = index.get(name) {
                return id;
            }
            let id = names.len();
            names.push(name.to_string());
            index.insert(name.to_string(), id);
            id
        };
        let mut edges = Vec::with_capacity(edge_list.len());
        for (tail, head, weight) in edge_list {
            let (tail, head) = (tail.as_ref(), head.as_ref());
            if *weight == 0 {
                return Err(Error::Network(format!("edge {tail}->{head}: weight must be ≥ 1")));
            }
            if tail == head {
                return Err(Error::Network(format!("edge {tail}->{head} is a loop (cycle at {tail})")));
            }
            let t = intern(tail, &mut names);
            let h = intern(head, &mut names);
            edges.push(NetEdge { tail: t, head: h, weight: *weight });
        }
        let nv = names.len();
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        let mut seen = HashMap::new();
        for (id, e) in edges.iter().enumerate() {
            if seen.insert((e.tail, e.head), id).is_some() {
                return Err(Error::Network(format!("duplicate edge {}->{}", names[e.tail], names[e.head])));
            }
            out_edges[e.tail].push(id);
            in_edges[e.head].push(id);
        }

        let roots: Vec<VertexId> = (0..nv).filter(|&v| in_edges[v].is_empty()).collect();
        if roots.len() != 1 {
            let listed = roots.iter().map(|&v| names[v].as_str()).collect::<Vec<_>>().join(", ");
            return Err(Error::Network(format!(
                "expected exactly one root (in-degree 0), found {}: {listed}",
                roots.len()
            )));
        }
        let root = roots[0];

        let mut kinds = Vec::with_capacity(nv);
        for v in 0..nv {
            let (din, dout) = (in_edges[v].len(), out_edges[v].len());
            let kind = if v == root {
                VertexKind::Root
            } else if dout == 0 {
                if din != 1 {
                    return Err(Error::Network(format!("leaf {} has in-degree {din}, expected 1", names[v])));
                }
                VertexKind::Leaf
            } else if din == 1 && dout >= 2 {
                VertexKind::Tree
            } else if dout == 1 && din >= 2 {
                VertexKind::Reticulation
            } else {
                return Err(Error::Network(format!(
                    "vertex {} has in-degree {din} and out-degree {dout}; it is neither a tree vertex nor a reticulation",
                    names[v]
                )));
            };
            kinds.push(kind);
        }

        let topo = topological_order(nv, &edges, &out_edges, &in_edges)
            .map_err(|v| Error::Network(format!("the network contains a cycle through vertex {}", names[v])))?;

        let mut total: u64 = 0;
        for e in &edges {
            total = total
                .checked_add(e.weight)
                .filter(|&t| t <= MAX_TOTAL_WEIGHT)
                .ok_or_else(|| Error::Network("total edge weight exceeds 2^62".into()))?;
        }

        let mut taxa = Vec::new();
        let mut taxon_of = vec![None; nv];
        for v in 0..nv {
            if kinds[v] == VertexKind::Leaf {
                taxon_of[v] = Some(taxa.len());
                taxa.push(v);
            }
        }

        let n = taxa.len();
        let mut offspring = vec![FixedBitSet::with_capacity(n); nv];
        for &v in topo.iter().rev() {
            if let Some(t) = taxon_of[v] {
                offspring[v].insert(t);
            }
            for &e in &out_edges[v] {
                let child = edges[e].head;
                let (a, b) = if child < v {
                    let (lo, hi) = offspring.split_at_mut(v);
                    (&mut hi[0], &lo[child])
                } else {
                    let (lo, hi) = offspring.split_at_mut(child);
                    (&mut lo[v], &hi[0])
                };
                a.union_with(b);
            }
        }

        Ok(Self {
            names,
            index,
            edges,
            out_edges,
            in_edges,
            kinds,
            root,
            taxa,
            taxon_of,
            topo,
            offspring,
            total_weight: total,
        })
    }

    /// Serializes to the `EDGE` format; reparsing yields the same network.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "EDGE {} {} {}", self.names[e.tail], self.names[e.head], e.weight);
        }
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_taxa(&self) -> usize {
        self.taxa.len()
    }

    pub fn edges(&self) -> &[NetEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> NetEdge {
        self.edges[e]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kinds[v]
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    /// Leaf vertices in taxon order.
    pub fn taxa(&self) -> &[VertexId] {
        &self.taxa
    }

    pub fn taxon_vertex(&self, x: TaxonId) -> VertexId {
        self.taxa[x]
    }

    pub fn taxon_of(&self, v: VertexId) -> Option<TaxonId> {
        self.taxon_of[v]
    }

    pub fn taxon_name(&self, x: TaxonId) -> &str {
        &self.names[self.taxa[x]]
    }

    pub fn taxon_names(&self) -> Vec<String> {
        self.taxa.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn taxon_by_name(&self, name: &str) -> Option<TaxonId> {
        self.vertex(name).and_then(|v| self.taxon_of[v])
    }

    /// The unique edge entering taxon `x`.
    pub fn taxon_edge(&self, x: TaxonId) -> EdgeId {
        self.in_edges[self.taxa[x]][0]
    }

    /// Vertices from the root downwards.
    pub fn topological_order(&self) -> &[VertexId] {
        &self.topo
    }

    /// Taxa reachable from `v`, as a bitset over taxon ids.
    pub fn offspring_set(&self, v: VertexId) -> &FixedBitSet {
        &self.offspring[v]
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    /// True when the network has no reticulations.
    pub fn is_tree(&self) -> bool {
        !self.kinds.contains(&VertexKind::Reticulation)
    }

    /// Edges whose head is a tree vertex or a leaf.
    pub fn tree_edges(&self) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&e| matches!(self.kinds[self.edges[e].head], VertexKind::Tree | VertexKind::Leaf))
            .collect()
    }

    /// Edges whose head is a reticulation.
    pub fn reticulation_edges(&self) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.kinds[self.edges[e].head] == VertexKind::Reticulation).collect()
    }

    /// Edges whose head is a tree vertex. These are the edges that receive a
    /// color in the `k·H` algorithm.
    pub fn internal_tree_edges(&self) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.kinds[self.edges[e].head] == VertexKind::Tree).collect()
    }

    /// Returns a copy with one extra leaf attached to the root.
    pub(crate) fn with_root_leaf(&self, leaf: &str, weight: u64) -> Result<Self> {
        let mut list: Vec<(String, String, u64)> =
            self.edges.iter().map(|e| (self.names[e.tail].clone(), self.names[e.head].clone(), e.weight)).collect();
        list.push((self.names[self.root].clone(), leaf.to_string(), weight));
        Self::from_edges(&list)
    }
}

fn topological_order(
    nv: usize,
    edges: &[NetEdge],
    out_edges: &[Vec<EdgeId>],
    in_edges: &[Vec<EdgeId>],
) -> std::result::Result<Vec<VertexId>, VertexId> {
    let mut indeg: Vec<usize> = in_edges.iter().map(Vec::len).collect();
    let mut stack: Vec<VertexId> = (0..nv).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(nv);
    while let Some(v) = stack.pop() {
        order.push(v);
        for &e in out_edges[v].iter().rev() {
            let h = edges[e].head;
            indeg[h] -= 1;
            if indeg[h] == 0 {
                stack.push(h);
            }
        }
    }
    if order.len() == nv {
        Ok(order)
    } else {
        Err((0..nv).find(|&v| indeg[v] > 0).unwrap_or(0))
    }
}
