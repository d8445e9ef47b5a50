//! Decide an instance with the solver parameterized by k and the tree height.

use mapdd::colorcoding::FamilyMode;
use mapdd::diversity::structural_params;
use mapdd::model::ViabilityMode;
use mapdd::solver_kh::{color_budget, solve_kh};
use mapdd::{FoodWeb, Instance, PhyloNetwork, SolveConfig};

fn main() -> mapdd::Result<()> {
    let mut net = String::new();
    for i in 0..10 {
        net.push_str(&format!("EDGE r v{i} 2\nEDGE v{i} a{i} {}\nEDGE v{i} b{i} 1\n", 1 + i % 4));
    }
    let net = PhyloNetwork::parse(&net)?;
    let fw = FoodWeb::parse("EDGE a0 a1 1\nEDGE a1 a2 1\nEDGE b3 a3 1\n", &net.taxon_names())?;
    println!("H = {}", structural_params(&net).big_h);
    for (k, d) in [(2, 8), (2, 10), (3, 13)] {
        let inst = Instance::new(net.clone(), fw.clone(), k, d, ViabilityMode::Gamma)?;
        let cfg = SolveConfig { family: FamilyMode::MonteCarlo, seed: 1, ..SolveConfig::default() };
        let out = solve_kh(&inst, None, &cfg)?;
        let witness: Vec<&str> = out.witness.iter().flatten().map(|&x| net.taxon_name(x)).collect();
        println!("k={k} D={d} ({} colors): answer {} witness {witness:?}", color_budget(&inst), out.answer);
    }
    Ok(())
}
