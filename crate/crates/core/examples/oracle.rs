//! Exhaustive reference solver and witness verification.

use mapdd::model::ViabilityMode;
use mapdd::oracle::{oracle_solve, verify_witness};
use mapdd::{FoodWeb, Instance, PhyloNetwork};

fn main() -> mapdd::Result<()> {
    let net = PhyloNetwork::parse("EDGE r a 1\nEDGE r b 2\nEDGE r c 3\n")?;
    let fw = FoodWeb::parse("EDGE a b 1\nEDGE b c 1\n", &net.taxon_names())?;
    let inst = Instance::new(net.clone(), fw, 3, 3, ViabilityMode::Gamma)?;
    let table = oracle_solve(&inst)?;
    for (k, best) in table.best_pd.iter().enumerate() {
        let names: Vec<&str> = table.best_witness[k].iter().map(|&x| net.taxon_name(x)).collect();
        println!("k={k}: best PD {best} with {names:?}");
    }
    let report = verify_witness(&inst, &[1, 2]);
    println!("{{b, c}}: pd {} viable {} valid {}", report.pd, report.viability.viable, report.is_valid());
    Ok(())
}
