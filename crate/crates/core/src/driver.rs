//! Pieces shared by the two color-coding solvers: instance preparation, a
//! cache of hash families and the loop over family members.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;

use crate::colorcoding::{build_family, ColoringFamily, FamilyMode};
use crate::error::{Error, Result};
use crate::model::{ensure_single_source, Instance, TaxonId};
use crate::scanwidth::{auto_extension, extend_with_root, validate_extension, TreeExtension};
use crate::viability::GammaIndex;

/// Settings common to both color-coding solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    pub family: FamilyMode,
    /// Per-instance failure probability of the Monte-Carlo family.
    pub fail_prob: BigRational,
    pub seed: u64,
    /// Number of worker threads for the member loop.
    pub jobs: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            family: FamilyMode::Deterministic,
            fail_prob: BigRational::new(1.into(), 1_000_000_000.into()),
            seed: 0,
            jobs: 1,
        }
    }
}

/// A single-source instance together with a tree extension of its web.
pub(crate) struct Prepared {
    pub inst: Instance,
    pub ext: TreeExtension,
}

/// Adds a super-source if needed and brings the extension in line with it.
/// A supplied extension must belong to the original web.
pub(crate) fn prepare(inst: &Instance, ext: Option<&TreeExtension>) -> Result<Prepared> {
    let single = ensure_single_source(inst)?;
    let ext = match (ext, single.super_source()) {
        (Some(given), Some(star)) => {
            let checked = validate_extension(inst.foodweb(), given.parents())?;
            extend_with_root(&checked, single.foodweb(), star)?
        }
        (Some(given), None) => validate_extension(single.foodweb(), given.parents())?,
        (None, _) => auto_extension(single.foodweb())?,
    };
    Ok(Prepared { inst: single, ext })
}

type FamilyKey = (usize, usize, FamilyMode, BigRational, u64);

fn family_cache() -> &'static Mutex<HashMap<FamilyKey, Arc<ColoringFamily>>> {
    static CACHE: OnceLock<Mutex<HashMap<FamilyKey, Arc<ColoringFamily>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds a family or reuses an identical earlier one.
pub(crate) fn cached_family(q: usize, n: usize, cfg: &SolveConfig) -> Result<Arc<ColoringFamily>> {
    let key = (q, n, cfg.family, cfg.fail_prob.clone(), cfg.seed);
    if let Some(f) = family_cache().lock().expect("cache lock").get(&key) {
        return Ok(Arc::clone(f));
    }
    let family = Arc::new(build_family(q, n, cfg.family, &cfg.fail_prob, cfg.seed)?);
    family_cache().lock().expect("cache lock").insert(key, Arc::clone(&family));
    Ok(family)
}

/// What a single member produced.
pub(crate) enum MemberResult<T> {
    Reject,
    /// The DP accepted but its solution did not survive verification.
    Unverified,
    Accept(T),
}

/// Result of looping over members.
pub(crate) struct LoopResult<T> {
    pub found: Option<T>,
    pub tried: usize,
    pub unverified: usize,
}

/// Runs `solve` on members in order and returns the first verified
/// acceptance. With several jobs, members are interleaved across threads
/// and the lowest accepting index wins, so the answer does not depend on
/// scheduling.
pub(crate) fn run_members<T: Send>(
    members: &[Vec<u32>],
    jobs: usize,
    solve: impl Fn(&[u32]) -> Result<MemberResult<T>> + Sync,
) -> Result<LoopResult<T>> {
    let jobs = jobs.max(1).min(members.len().max(1));
    if jobs == 1 {
        let mut unverified = 0;
        for (i, m) in members.iter().enumerate() {
            match solve(m)? {
                MemberResult::Reject => {}
                MemberResult::Unverified => unverified += 1,
                MemberResult::Accept(t) => {
                    return Ok(LoopResult { found: Some(t), tried: i + 1, unverified });
                }
            }
        }
        return Ok(LoopResult { found: None, tried: members.len(), unverified });
    }
    let best = AtomicUsize::new(usize::MAX);
    let tried = AtomicUsize::new(0);
    let unverified = AtomicUsize::new(0);
    let results: Vec<Result<Option<(usize, T)>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let (best, tried, unverified, solve) = (&best, &tried, &unverified, &solve);
                scope.spawn(move || -> Result<Option<(usize, T)>> {
                    let mut i = j;
                    while i < members.len() && i < best.load(Ordering::Relaxed) {
                        tried.fetch_add(1, Ordering::Relaxed);
                        match solve(&members[i])? {
                            MemberResult::Reject => {}
                            MemberResult::Unverified => {
                                unverified.fetch_add(1, Ordering::Relaxed);
                            }
                            MemberResult::Accept(t) => {
                                best.fetch_min(i, Ordering::Relaxed);
                                return Ok(Some((i, t)));
                            }
                        }
                        i += jobs;
                    }
                    Ok(None)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut found: Option<(usize, T)> = None;
    for r in results {
        if let Some((i, t)) = r? {
            if found.as_ref().is_none_or(|(b, _)| i < *b) {
                found = Some((i, t));
            }
        }
    }
    Ok(LoopResult { found: found.map(|(_, t)| t), tried: tried.into_inner(), unverified: unverified.into_inner() })
}

/// Where a bit of `GW(w)` comes from once the row of the parent `v` is fixed.
#[derive(Debug, Clone, Copy)]
enum Source {
    Parent(u32),
    /// An edge leaving `v` itself, granted only while `v` survives.
    FromParent,
}

/// Row bookkeeping of a tree extension: rows of vertex `v` are subsets of
/// `GW(v)` encoded as bit masks in the order of `ext.gw(v)`.
pub(crate) struct ExtensionRows<'a> {
    inst: &'a Instance,
    ext: &'a TreeExtension,
    gamma: GammaIndex,
    children: Vec<Vec<(TaxonId, Vec<Source>)>>,
}

impl<'a> ExtensionRows<'a> {
    /// Checks that `ext` fits the single-source instance and that its rows
    /// can be enumerated.
    pub(crate) fn new(inst: &'a Instance, ext: &'a TreeExtension, max_width: usize) -> Result<Self> {
        let fw = inst.foodweb();
        if ext.num_taxa() != inst.num_taxa() {
            return Err(Error::Instance(format!(
                "the extension covers {} taxa but the instance has {}",
                ext.num_taxa(),
                inst.num_taxa()
            )));
        }
        if fw.sources().len() > 1 {
            return Err(Error::Instance("the food web must have a single source".into()));
        }
        if ext.width() > max_width {
            return Err(Error::Infeasible(format!("scanwidth {} exceeds the table limit {max_width}", ext.width())));
        }
        let children = (0..inst.num_taxa())
            .map(|v| {
                ext.children(v)
                    .iter()
                    .map(|&w| {
                        let map = ext
                            .gw(w)
                            .iter()
                            .map(|&e| match ext.gw(v).binary_search(&e) {
                                Ok(i) => Source::Parent(i as u32),
                                Err(_) => Source::FromParent,
                            })
                            .collect();
                        (w, map)
                    })
                    .collect()
            })
            .collect();
        Ok(Self { inst, ext, gamma: GammaIndex::new(fw), children })
    }

    pub(crate) fn ext(&self) -> &TreeExtension {
        self.ext
    }

    /// Number of rows of `v`.
    pub(crate) fn rows(&self, v: TaxonId) -> u64 {
        1 << self.ext.gw(v).len()
    }

    /// Children of `v` in extension order.
    pub(crate) fn children(&self, v: TaxonId) -> impl Iterator<Item = TaxonId> + '_ {
        self.children[v].iter().map(|(w, _)| *w)
    }

    /// Row of the `i`-th child of `v` when `v` has row `phi` and does or does
    /// not grant its own outgoing edges.
    pub(crate) fn child_row(&self, v: TaxonId, i: usize, phi: u64, parent_grants: bool) -> usize {
        self.children[v][i].1.iter().enumerate().fold(0, |row, (j, s)| {
            let on = match *s {
                Source::Parent(b) => phi >> b & 1 == 1,
                Source::FromParent => parent_grants,
            };
            row | (on as usize) << j
        })
    }

    /// Whether `v` may survive when the edges of row `phi` are granted.
    pub(crate) fn viable(&self, v: TaxonId, phi: u64) -> bool {
        if self.ext.parent(v).is_none() {
            return true;
        }
        let gw = self.ext.gw(v);
        self.gamma.reaches_one(self.inst.foodweb(), v, |e| gw.binary_search(&e).is_ok_and(|i| phi >> i & 1 == 1))
    }
}
