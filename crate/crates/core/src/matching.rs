//! Maximum bipartite matching by Hopcroft–Karp.

use std::collections::VecDeque;

/// Name reported in solver metadata.
pub const ALGORITHM: &str = "hopcroft-karp";

/// A bipartite graph given by the right neighbours of each left vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    num_right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Duplicate neighbours are dropped; neighbours outside `0..num_right` panic.
    pub fn new(num_right: usize, adj: Vec<Vec<usize>>) -> Self {
        let adj = adj
            .into_iter()
            .map(|mut list| {
                assert!(list.iter().all(|&r| r < num_right), "right vertex out of range");
                let mut seen = vec![false; num_right];
                list.retain(|&r| !std::mem::replace(&mut seen[r], true));
                list
            })
            .collect();
        Self { num_right, adj }
    }

    pub fn num_left(&self) -> usize {
        self.adj.len()
    }

    pub fn num_right(&self) -> usize {
        self.num_right
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }
}

/// A matching as a partial injection from left to right vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub left_to_right: Vec<Option<usize>>,
    /// Number of augmenting phases that increased the matching.
    pub phases: usize,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_to_right.iter().flatten().count()
    }
}

const FREE: usize = usize::MAX;

/// Maximum-cardinality matching. Deterministic for a fixed adjacency order.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let nl = g.num_left();
    let mut left = vec![FREE; nl];
    let mut right = vec![FREE; g.num_right];
    let mut dist = vec![0usize; nl];
    let mut phases = 0;
    loop {
        let mut queue = VecDeque::new();
        for l in 0..nl {
            if left[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &g.adj[l] {
                match right[r] {
                    FREE => found = true,
                    m if dist[m] == usize::MAX => {
                        dist[m] = dist[l] + 1;
                        queue.push_back(m);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut grew = false;
        for l in 0..nl {
            if left[l] == FREE && augment(g, l, &mut left, &mut right, &mut dist) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
        phases += 1;
    }
    Matching { left_to_right: left.into_iter().map(|r| (r != FREE).then_some(r)).collect(), phases }
}

fn augment(g: &BipartiteGraph, l: usize, left: &mut [usize], right: &mut [usize], dist: &mut [usize]) -> bool {
    for &r in &g.adj[l] {
        let m = right[r];
        let ok = m == FREE || (dist[m] == dist[l] + 1 && augment(g, m, left, right, dist));
        if ok {
            left[l] = r;
            right[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// True when every left vertex is matched.
pub fn saturates_left(g: &BipartiteGraph, matching: &Matching) -> bool {
    matching.left_to_right.len() == g.num_left() && matching.left_to_right.iter().all(Option::is_some)
}

/// Size of a maximum matching by exhaustive search over injections. Intended
/// for cross-checking on small graphs.
pub fn brute_force_max_matching(g: &BipartiteGraph) -> usize {
    fn go(g: &BipartiteGraph, l: usize, used: &mut Vec<bool>) -> usize {
        if l == g.num_left() {
            return 0;
        }
        let mut best = go(g, l + 1, used);
        for &r in &g.adj[l] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + go(g, l + 1, used));
                used[r] = false;
            }
        }
        best
    }
    go(g, 0, &mut vec![false; g.num_right])
}
