//! Decide an instance with the solver parameterized by the diversity loss.

use mapdd::model::ViabilityMode;
use mapdd::solver_dbar::{color_budget, solve_dbar};
use mapdd::{FoodWeb, Instance, PhyloNetwork, SolveConfig};

fn main() -> mapdd::Result<()> {
    let mut net = String::new();
    let mut web = String::new();
    for i in 0..12 {
        net.push_str(&format!("EDGE r x{i} {}\n", 1 + i % 3));
        if i > 0 {
            web.push_str(&format!("EDGE x{} x{i} 1\n", i - 1));
        }
    }
    let net = PhyloNetwork::parse(&net)?;
    let fw = FoodWeb::parse(&web, &net.taxon_names())?;
    let total = net.total_weight();
    for d in [total - 2, total - 5] {
        let inst = Instance::new(net.clone(), fw.clone(), 10, d, ViabilityMode::Gamma)?;
        let out = solve_dbar(&inst, None, &SolveConfig::default())?;
        println!(
            "D={d} (loss budget {}, {} colors): answer {} pd {:?} family {} x{}",
            inst.dbar(),
            color_budget(&inst),
            out.answer,
            out.pd,
            out.family_kind,
            out.family_size
        );
    }
    Ok(())
}
