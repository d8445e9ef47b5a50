//! The common result type of all solvers.

use std::fmt;
use std::str::FromStr;

use crate::model::TaxonId;

/// Which solver produced an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Brute,
    Dbar,
    Kh,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Brute => "brute",
            Algorithm::Dbar => "dbar",
            Algorithm::Kh => "kh",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Self::Brute),
            "dbar" => Ok(Self::Dbar),
            "kh" => Ok(Self::Kh),
            other => Err(format!("unknown algorithm '{other}'")),
        }
    }
}

/// Decision of one solve with its witness and bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub answer: bool,
    /// Taxa kept, in increasing id order. Present on every YES.
    pub witness: Option<Vec<TaxonId>>,
    /// Diversity of the witness.
    pub pd: Option<u64>,
    pub algorithm: Algorithm,
    /// Palette size of the color-coding family, 0 for the oracle.
    pub colors: usize,
    pub family_size: usize,
    pub family_kind: String,
    /// Members actually solved before the answer was known.
    pub members_tried: usize,
    /// Accepting members whose reconstructed solution failed verification.
    pub unverified_candidates: usize,
    /// Scanwidth of the tree extension used, if any.
    pub width: Option<usize>,
    pub seed: u64,
}

impl SolveOutcome {
    pub fn no(algorithm: Algorithm, seed: u64) -> Self {
        Self {
            answer: false,
            witness: None,
            pd: None,
            algorithm,
            colors: 0,
            family_size: 0,
            family_kind: "none".into(),
            members_tried: 0,
            unverified_candidates: 0,
            width: None,
            seed,
        }
    }
}
