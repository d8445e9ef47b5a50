//! Brute-force ground truth by subset enumeration.

use crate::diversity::pd;
use crate::error::{Error, Result};
use crate::model::{Instance, TaxonId};
use crate::outcome::{Algorithm, SolveOutcome};
use crate::viability::{is_gamma_viable, viability_closure_hint, GammaIndex, ViabilityVerdict};

/// Largest instance the oracle enumerates.
pub const ORACLE_CAP: usize = 20;

/// Best viable diversity for every size budget `0..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// `best_pd[c]` is the largest diversity of a viable set with at most `c` taxa.
    pub best_pd: Vec<u64>,
    /// A set attaining `best_pd[c]`: fewest taxa first, then lexicographically smallest.
    pub best_witness: Vec<Vec<TaxonId>>,
    /// Whether `best_pd[k] ≥ D`.
    pub decision: bool,
}

impl OracleResult {
    /// Decides another `(k, D)` pair on the same network and web.
    pub fn decide(&self, k: usize, d: u64) -> bool {
        self.best_pd[k.min(self.best_pd.len() - 1)] >= d
    }
}

/// Enumerates all viable sets. Budgets are computed for every size up to the
/// number of taxa, so [`OracleResult::decide`] answers any `(k, D)`.
pub fn oracle_solve(inst: &Instance) -> Result<OracleResult> {
    let net = inst.network();
    let fw = inst.foodweb();
    let n = inst.num_taxa();
    if n > ORACLE_CAP {
        return Err(Error::Infeasible(format!(
            "the oracle enumerates at most {ORACLE_CAP} taxa (the instance has {n})"
        )));
    }
    let all: Vec<TaxonId> = (0..n).collect();
    let pool = viability_closure_hint(fw, &all);
    let index = GammaIndex::new(fw);
    let edges: Vec<(u64, u32)> = (0..net.num_edges())
        .map(|e| {
            let mask = net.offspring_set(net.edge(e).head).ones().fold(0u32, |m, x| m | 1 << x);
            (net.edge(e).weight, mask)
        })
        .collect();
    let mut exact: Vec<Option<(u64, u32)>> = vec![None; n + 1];
    let m = pool.len();
    for sub in 0u32..(1u32 << m) {
        let mut set = 0u32;
        let mut rest = sub;
        while rest != 0 {
            set |= 1 << pool[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        let viable = pool
            .iter()
            .filter(|&&x| set >> x & 1 == 1)
            .all(|&x| index.reaches_one(fw, x, |e| set >> fw.edge(e).prey & 1 == 1));
        if !viable {
            continue;
        }
        let value: u64 = edges.iter().filter(|(_, m)| m & set != 0).map(|(w, _)| w).sum();
        let c = set.count_ones() as usize;
        let better = match exact[c] {
            None => true,
            Some((bv, bs)) => value > bv || (value == bv && lex_less(set, bs)),
        };
        if better {
            exact[c] = Some((value, set));
        }
    }
    let mut best_pd = Vec::with_capacity(n + 1);
    let mut best_witness = Vec::with_capacity(n + 1);
    let mut current: (u64, u32) = (0, 0);
    for slot in exact.iter() {
        if let Some((v, s)) = *slot {
            if v > current.0 {
                current = (v, s);
            }
        }
        best_pd.push(current.0);
        best_witness.push((0..n).filter(|&x| current.1 >> x & 1 == 1).collect());
    }
    let decision = best_pd[inst.k()] >= inst.d();
    Ok(OracleResult { best_pd, best_witness, decision })
}

fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

/// The oracle as a solver.
pub fn solve_brute(inst: &Instance) -> Result<SolveOutcome> {
    let res = oracle_solve(inst)?;
    let mut out = SolveOutcome::no(Algorithm::Brute, 0);
    out.family_kind = "none".into();
    if res.decision {
        out.answer = true;
        out.pd = Some(res.best_pd[inst.k()]);
        out.witness = Some(res.best_witness[inst.k()].clone());
    }
    Ok(out)
}

/// Why a proposed solution is or is not acceptable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub size_ok: bool,
    pub viability: ViabilityVerdict,
    pub pd: u64,
    pub pd_ok: bool,
}

impl WitnessReport {
    pub fn is_valid(&self) -> bool {
        self.size_ok && self.viability.viable && self.pd_ok
    }
}

/// Checks that `s` is a viable set of at most `k` taxa with `pd(s) ≥ D`.
pub fn verify_witness(inst: &Instance, s: &[TaxonId]) -> WitnessReport {
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    let value = pd(inst.network(), &set);
    WitnessReport {
        size_ok: set.len() <= inst.k() && set.iter().all(|&x| x < inst.num_taxa()),
        viability: is_gamma_viable(inst.foodweb(), &set),
        pd: value,
        pd_ok: value >= inst.d(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_instance, GammaScheme, GeneratorConfig, NetworkShape};
    use crate::model::{ensure_single_source, ViabilityMode};
    use crate::testutil::{instance, star_chain};

    const STAR: &str = "EDGE r a 1\nEDGE r b 2\nEDGE r c 3\n";

    #[test]
    fn edgeless_star() {
        let res = oracle_solve(&instance(STAR, "", 2, 0, ViabilityMode::Gamma)).unwrap();
        assert_eq!(res.best_pd[2], 5);
        assert_eq!(res.best_witness[2], vec![1, 2]);
        assert_eq!(res.best_pd[0], 0);
        assert!(res.best_witness[0].is_empty());
    }

    #[test]
    fn chain_singletons() {
        let res = oracle_solve(&star_chain(1, 0)).unwrap();
        assert_eq!(res.best_pd[1], 1);
        assert_eq!(res.best_witness[1], vec![0]);
        let res = oracle_solve(&star_chain(2, 3)).unwrap();
        assert!(res.decision);
        assert_eq!(res.best_witness[2], vec![0, 1]);
        assert!(!oracle_solve(&star_chain(2, 6)).unwrap().decision);
    }

    #[test]
    fn witnesses() {
        let inst = star_chain(2, 3);
        assert!(verify_witness(&inst, &[0, 1]).is_valid());
        let bad = verify_witness(&inst, &[1]);
        assert!(!bad.is_valid());
        assert_eq!(bad.viability.first_violator, Some(1));
        assert!(verify_witness(&star_chain(2, 0), &[]).is_valid());
        assert!(!verify_witness(&inst, &[0, 1, 2]).is_valid());
    }

    fn random(seed: u64, taxa: usize, reticulations: usize) -> Instance {
        generate_instance(&GeneratorConfig {
            network: NetworkShape { taxa, reticulations, max_in_degree: 3, max_weight: 3 },
            web_density: 0.4,
            gamma: GammaScheme::Random { max_denominator: 4 },
            seed,
            ..GeneratorConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn budgets_are_monotone() {
        for seed in 0..40 {
            let inst = random(seed, 7, seed as usize % 3);
            let res = oracle_solve(&inst).unwrap();
            assert!(res.best_pd.windows(2).all(|w| w[0] <= w[1]));
            for (c, w) in res.best_witness.iter().enumerate() {
                let r = verify_witness(&inst.with_budget(c, res.best_pd[c]).unwrap(), w);
                assert!(r.is_valid(), "{seed} {c}");
            }
        }
    }

    #[test]
    fn single_source_transformation_preserves_answers() {
        for seed in 0..60 {
            let inst = random(seed, 1 + seed as usize % 6, seed as usize % 2);
            let res = oracle_solve(&inst).unwrap();
            for k in 0..=inst.num_taxa() {
                for d in 0..=inst.network().total_weight() + 1 {
                    let a = inst.with_budget(k, d).unwrap();
                    let t = ensure_single_source(&a).unwrap();
                    let tr = oracle_solve(&t).unwrap();
                    assert_eq!(res.decide(k, d), tr.decision, "seed {seed} k {k} d {d}");
                    if tr.decision {
                        let w = t.strip_super_source(&tr.best_witness[t.k()]);
                        assert!(verify_witness(&a, &w).is_valid());
                    }
                }
            }
        }
    }

    #[test]
    fn relabeling_invariance() {
        let a = instance(STAR, "EDGE a b 1\nEDGE b c 1\n", 2, 3, ViabilityMode::Gamma);
        let b =
            instance("EDGE r c 3\nEDGE r b 2\nEDGE r a 1\n", "EDGE a b 1\nEDGE b c 1\n", 2, 3, ViabilityMode::Gamma);
        assert_eq!(oracle_solve(&a).unwrap().best_pd, oracle_solve(&b).unwrap().best_pd);
    }
}
