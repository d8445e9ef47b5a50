//! Generate a reproducible random instance and solve it with every solver.

use mapdd::generate::{generate_instance, GammaScheme, GeneratorConfig, NetworkShape};
use mapdd::oracle::solve_brute;
use mapdd::solver_dbar::solve_dbar;
use mapdd::solver_kh::solve_kh;
use mapdd::SolveConfig;

fn main() -> mapdd::Result<()> {
    let cfg = GeneratorConfig {
        network: NetworkShape { taxa: 8, reticulations: 2, max_in_degree: 2, max_weight: 3 },
        web_density: 0.35,
        gamma: GammaScheme::Random { max_denominator: 4 },
        seed: 42,
        ..GeneratorConfig::default()
    };
    let inst = generate_instance(&cfg)?;
    print!("{}", inst.network().to_text());
    print!("{}", inst.foodweb().to_text());
    let solve = SolveConfig::default();
    for out in [solve_brute(&inst)?, solve_dbar(&inst, None, &solve)?, solve_kh(&inst, None, &solve)?] {
        println!("{}: k={} D={} answer {} pd {:?}", out.algorithm, inst.k(), inst.d(), out.answer, out.pd);
    }
    Ok(())
}
