//! Parse a network and compute its phylogenetic diversity and height parameters.

use mapdd::diversity::{edge_support, pd, structural_params};
use mapdd::PhyloNetwork;

const NETWORK: &str = "\
# two reticulations, h and g
EDGE r u 2
EDGE r w 1
EDGE u h 1
EDGE w h 3
EDGE w g 1
EDGE u g 2
EDGE h a 1
EDGE g b 2
EDGE u c 4
EDGE w d 1
";

fn main() -> mapdd::Result<()> {
    let net = PhyloNetwork::parse(NETWORK)?;
    println!("taxa: {:?}", net.taxon_names());
    println!("total weight: {}", net.total_weight());
    let a = net.taxon_by_name("a").unwrap();
    let c = net.taxon_by_name("c").unwrap();
    for set in [vec![a], vec![c], vec![a, c]] {
        let names: Vec<&str> = set.iter().map(|&x| net.taxon_name(x)).collect();
        println!("PD({names:?}) = {} over {} edges", pd(&net, &set), edge_support(&net, &set).len());
    }
    let p = structural_params(&net);
    println!("h_r = {}, h_t = {}, delta = {}, H = {}", p.h_r, p.h_t, p.delta, p.big_h);
    Ok(())
}
