use crate::model::{FoodWeb, Instance, PhyloNetwork, ViabilityMode};

/// Five taxa, two reticulations; the running example for suitable sets.
pub const REFERENCE: &str = "\
EDGE 0 1 1
EDGE 0 2 1
EDGE 0 3 1
EDGE 1 4 1
EDGE 2 4 1
EDGE 2 5 1
EDGE 3 5 1
EDGE 5 6 1
EDGE 4 x2 1
EDGE 6 x3 1
EDGE 1 x1 1
EDGE 3 x5 1
EDGE 6 x4 1
";

pub fn instance(network: &str, web: &str, k: usize, d: u64, mode: ViabilityMode) -> Instance {
    let net = PhyloNetwork::parse(network).unwrap();
    let fw = FoodWeb::parse(web, &net.taxon_names()).unwrap();
    Instance::new(net, fw, k, d, mode).unwrap()
}

/// Star `r → a(1), b(2), c(3)` with the chain web `a → b → c`.
pub fn star_chain(k: usize, d: u64) -> Instance {
    instance("EDGE r a 1\nEDGE r b 2\nEDGE r c 3\n", "EDGE a b 1\nEDGE b c 1\n", k, d, ViabilityMode::Gamma)
}

/// A small random instance with weights at most 3 and random γ fractions.
pub fn random_instance(seed: u64, taxa: usize, reticulations: usize) -> Instance {
    use crate::generate::{generate_instance, GammaScheme, GeneratorConfig, NetworkShape};
    generate_instance(&GeneratorConfig {
        network: NetworkShape { taxa, reticulations, max_in_degree: 3, max_weight: 3 },
        web_density: 0.4,
        gamma: GammaScheme::Random { max_denominator: 4 },
        seed,
        ..GeneratorConfig::default()
    })
    .unwrap()
}
