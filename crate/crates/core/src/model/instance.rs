use num_rational::BigRational;
use num_traits::One;

use super::foodweb::{derive_gamma, FoodWeb, ViabilityMode, WebEdge};
use super::network::{PhyloNetwork, TaxonId};
use crate::error::{Error, Result};

/// Preferred name of the taxon added by [`ensure_single_source`].
pub const SUPER_SOURCE_NAME: &str = "s*";

/// A decision instance: keep at most `k` taxa, viable under the web, with
/// phylogenetic diversity at least `d`.
#[derive(Debug, Clone)]
pub struct Instance {
    network: PhyloNetwork,
    foodweb: FoodWeb,
    k: usize,
    d: u64,
    mode: ViabilityMode,
    super_source: Option<TaxonId>,
}

impl Instance {
    /// Validates the pieces against each other. The web's γ values are
    /// re-derived according to `mode`.
    pub fn new(network: PhyloNetwork, foodweb: FoodWeb, k: usize, d: u64, mode: ViabilityMode) -> Result<Self> {
        let taxa = network.taxon_names();
        if foodweb.names() != taxa.as_slice() {
            return Err(Error::Instance("the food web's taxa differ from the network's leaves".into()));
        }
        if k > taxa.len() {
            return Err(Error::Instance(format!("k = {k} exceeds the number of taxa ({})", taxa.len())));
        }
        let foodweb = derive_gamma(&foodweb, mode);
        Ok(Self { network, foodweb, k, d, mode, super_source: None })
    }

    /// Same network and web with a different budget.
    pub fn with_budget(&self, k: usize, d: u64) -> Result<Self> {
        if k > self.num_taxa() {
            return Err(Error::Instance(format!("k = {k} exceeds the number of taxa ({})", self.num_taxa())));
        }
        let mut inst = self.clone();
        inst.k = k;
        inst.d = d;
        Ok(inst)
    }

    pub fn network(&self) -> &PhyloNetwork {
        &self.network
    }

    pub fn foodweb(&self) -> &FoodWeb {
        &self.foodweb
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn mode(&self) -> ViabilityMode {
        self.mode
    }

    pub fn num_taxa(&self) -> usize {
        self.network.num_taxa()
    }

    /// `|X| − k`: the minimum number of taxa that go extinct.
    pub fn kbar(&self) -> usize {
        self.num_taxa() - self.k
    }

    /// Total weight minus `D`: the diversity that may be lost. Negative when
    /// `D` exceeds the total weight.
    pub fn dbar(&self) -> i64 {
        self.network.total_weight() as i64 - self.d.min(i64::MAX as u64) as i64
    }

    /// The taxon added by [`ensure_single_source`], if any.
    pub fn super_source(&self) -> Option<TaxonId> {
        self.super_source
    }

    /// Maps a witness of this instance back to the instance it was derived from.
    pub fn strip_super_source(&self, witness: &[TaxonId]) -> Vec<TaxonId> {
        witness.iter().copied().filter(|&x| Some(x) != self.super_source).collect()
    }
}

/// Returns an equivalent instance whose food web has exactly one source.
///
/// A fresh taxon is hung below the root with an edge of weight 1 and feeds
/// every former source with γ = 1, while `k` and `D` both grow by one. The new
/// taxon is the last taxon id, so the original ids stay valid.
pub fn ensure_single_source(inst: &Instance) -> Result<Instance> {
    let sources = inst.foodweb.sources();
    if sources.len() <= 1 {
        return Ok(inst.clone());
    }
    let net = &inst.network;
    let mut name = SUPER_SOURCE_NAME.to_string();
    let mut suffix = 0;
    while net.vertex(&name).is_some() {
        suffix += 1;
        name = format!("{SUPER_SOURCE_NAME}_{suffix}");
    }
    let network = net.with_root_leaf(&name, 1)?;
    let star = network.taxon_by_name(&name).expect("the new leaf is a taxon");
    debug_assert_eq!(star, net.num_taxa());
    let mut edges: Vec<WebEdge> = inst.foodweb.edges().to_vec();
    for s in sources {
        edges.push(WebEdge { prey: star, predator: s, gamma: BigRational::one() });
    }
    let foodweb = FoodWeb::new(network.taxon_names(), edges)?;
    Ok(Instance { network, foodweb, k: inst.k + 1, d: inst.d + 1, mode: inst.mode, super_source: Some(star) })
}
