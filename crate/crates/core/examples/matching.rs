//! Maximum bipartite matching with Hopcroft-Karp.

use mapdd::matching::{max_matching, saturates_left, BipartiteGraph, ALGORITHM};

fn main() {
    let g = BipartiteGraph::new(4, vec![vec![0, 1], vec![0], vec![1, 2], vec![2]]);
    let m = max_matching(&g);
    println!("{ALGORITHM}: size {} after {} phases", m.size(), m.phases);
    for (l, r) in m.left_to_right.iter().enumerate() {
        println!("  left {l} -> {r:?}");
    }
    println!("saturates the left side: {}", saturates_left(&g, &m));
}
