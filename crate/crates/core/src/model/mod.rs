//! Phylogenetic networks and food webs, combined into problem instances.

mod foodweb;
mod instance;
mod network;
pub(crate) mod text;

pub use foodweb::{derive_gamma, FoodWeb, ViabilityMode, WebEdge, WebEdgeId};
pub use instance::{ensure_single_source, Instance, SUPER_SOURCE_NAME};
pub use network::{EdgeId, NetEdge, PhyloNetwork, TaxonId, VertexId, VertexKind, MAX_TOTAL_WEIGHT};
pub use text::{format_rational, parse_rational};

/// Parses a network document.
pub fn parse_network(text: &str) -> crate::Result<PhyloNetwork> {
    PhyloNetwork::parse(text)
}

/// Parses a food-web document over the given taxa.
pub fn parse_foodweb(text: &str, taxa: &[String]) -> crate::Result<FoodWeb> {
    FoodWeb::parse(text, taxa)
}
