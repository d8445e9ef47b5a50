//! γ-viability and part-γ-viability of taxon sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::model::{FoodWeb, TaxonId, WebEdgeId};

/// Outcome of a viability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViabilityVerdict {
    pub viable: bool,
    /// The first member (in taxon order) whose incoming weight is below 1.
    pub first_violator: Option<TaxonId>,
    /// `1 −` the violator's incoming weight.
    pub deficit: Option<BigRational>,
}

impl ViabilityVerdict {
    fn ok() -> Self {
        Self { viable: true, first_violator: None, deficit: None }
    }
}

/// Checks that every non-source member of `a` receives γ-weight at least 1
/// from prey inside `a`.
pub fn is_gamma_viable(fw: &FoodWeb, a: &[TaxonId]) -> ViabilityVerdict {
    is_part_gamma_viable(fw, a, &[])
}

/// Like [`is_gamma_viable`], but edges in `phi` count as available prey even
/// when their tail is not in `a`.
pub fn is_part_gamma_viable(fw: &FoodWeb, a: &[TaxonId], phi: &[WebEdgeId]) -> ViabilityVerdict {
    let mut member = vec![false; fw.num_taxa()];
    for &x in a {
        member[x] = true;
    }
    let mut granted = vec![false; fw.num_edges()];
    for &e in phi {
        granted[e] = true;
    }
    for x in 0..fw.num_taxa() {
        if !member[x] || fw.is_source(x) {
            continue;
        }
        let achieved = fw.gamma_sum(fw.prey_edges(x).iter().filter(|&&e| granted[e] || member[fw.edge(e).prey]));
        if achieved < BigRational::one() {
            return ViabilityVerdict {
                viable: false,
                first_violator: Some(x),
                deficit: Some(BigRational::one() - achieved),
            };
        }
    }
    ViabilityVerdict::ok()
}

/// Repeatedly deletes violators from `a`; the result is the largest viable
/// subset of `a`.
pub fn viability_closure_hint(fw: &FoodWeb, a: &[TaxonId]) -> Vec<TaxonId> {
    let index = GammaIndex::new(fw);
    let mut member = vec![false; fw.num_taxa()];
    for &x in a {
        member[x] = true;
    }
    loop {
        let mut changed = false;
        for x in 0..fw.num_taxa() {
            if member[x] && !index.reaches_one(fw, x, |e| member[fw.edge(e).prey]) {
                member[x] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..fw.num_taxa()).filter(|&x| member[x]).collect()
}

/// Precomputed integer form of each taxon's incoming γ weights, so that the
/// threshold test needs no big-number arithmetic in hot loops.
#[derive(Debug, Clone)]
pub(crate) struct GammaIndex {
    scaled: Vec<Option<Scaled>>,
}

#[derive(Debug, Clone)]
struct Scaled {
    denom: u128,
    numers: Vec<u128>,
}

impl GammaIndex {
    pub fn new(fw: &FoodWeb) -> Self {
        let scaled = (0..fw.num_taxa())
            .map(|x| {
                let edges = fw.prey_edges(x);
                let lcm = edges.iter().fold(BigInt::one(), |acc, &e| acc.lcm(fw.edge(e).gamma.denom()));
                let denom = lcm.to_u128()?;
                let mut numers = Vec::with_capacity(edges.len());
                let mut total: u128 = 0;
                for &e in edges {
                    let g = &fw.edge(e).gamma;
                    let num = (g.numer() * (&lcm / g.denom())).to_u128()?;
                    total = total.checked_add(num)?;
                    numers.push(num);
                }
                Some(Scaled { denom, numers })
            })
            .collect();
        Self { scaled }
    }

    /// Sources always pass; other taxa pass when the γ-weight of the edges
    /// accepted by `granted` reaches 1.
    pub fn reaches_one(&self, fw: &FoodWeb, x: TaxonId, mut granted: impl FnMut(WebEdgeId) -> bool) -> bool {
        let edges = fw.prey_edges(x);
        if edges.is_empty() {
            return true;
        }
        match &self.scaled[x] {
            Some(s) => {
                let mut sum: u128 = 0;
                for (i, &e) in edges.iter().enumerate() {
                    if granted(e) {
                        sum += s.numers[i];
                        if sum >= s.denom {
                            return true;
                        }
                    }
                }
                false
            }
            None => {
                let mut sum = BigRational::zero();
                for &e in edges {
                    if granted(e) {
                        sum += &fw.edge(e).gamma;
                    }
                }
                sum >= BigRational::one()
            }
        }
    }
}
