//! Compute a tree extension of a food web and its scanwidth.

use mapdd::scanwidth::{auto_extension, exact_extension, heuristic_extension, parse_tree_extension};
use mapdd::{FoodWeb, PhyloNetwork};

fn main() -> mapdd::Result<()> {
    let net = PhyloNetwork::parse("EDGE r a 1\nEDGE r b 1\nEDGE r c 1\nEDGE r d 1\nEDGE r e 1\n")?;
    let fw = FoodWeb::parse("EDGE a b 1\nEDGE a c 1\nEDGE b d 1\nEDGE c d 1\nEDGE d e 1\n", &net.taxon_names())?;
    let exact = exact_extension(&fw)?;
    let heuristic = heuristic_extension(&fw)?;
    println!("exact width {}, heuristic width {}", exact.width(), heuristic.width());
    let text = auto_extension(&fw)?.to_text(&fw);
    print!("{text}");
    let reparsed = parse_tree_extension(&text, &fw)?;
    for &v in reparsed.dfs_order() {
        println!("{}: GW has {} edges", fw.name(v), reparsed.gw(v).len());
    }
    Ok(())
}
