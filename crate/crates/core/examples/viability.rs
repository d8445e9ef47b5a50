//! Check which taxon sets can survive on their own in a food web.

use mapdd::model::ViabilityMode;
use mapdd::viability::is_gamma_viable;
use mapdd::{FoodWeb, Instance, PhyloNetwork};

fn main() -> mapdd::Result<()> {
    let net = PhyloNetwork::parse("EDGE r grass 1\nEDGE r rabbit 1\nEDGE r fox 1\nEDGE r clover 1\n")?;
    let web = "EDGE grass rabbit 1/2\nEDGE clover rabbit 1/2\nEDGE rabbit fox 1\n";
    let fw = FoodWeb::parse(web, &net.taxon_names())?;
    let id = |name: &str| net.taxon_by_name(name).unwrap();
    let sets = [
        vec![id("grass"), id("rabbit")],
        vec![id("grass"), id("clover"), id("rabbit")],
        vec![id("grass"), id("clover"), id("rabbit"), id("fox")],
        vec![id("fox")],
    ];
    for mode in [ViabilityMode::Gamma, ViabilityMode::Epsilon, ViabilityMode::One] {
        let inst = Instance::new(net.clone(), fw.clone(), 2, 1, mode)?;
        println!("mode {mode:?}:");
        for set in &sets {
            let verdict = is_gamma_viable(inst.foodweb(), set);
            let names: Vec<&str> = set.iter().map(|&x| net.taxon_name(x)).collect();
            match verdict.first_violator {
                None => println!("  {names:?} viable"),
                Some(x) => {
                    println!("  {names:?} fails at {} (missing {})", net.taxon_name(x), verdict.deficit.unwrap())
                }
            }
        }
    }
    Ok(())
}
