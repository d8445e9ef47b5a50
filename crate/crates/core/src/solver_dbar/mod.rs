//! The solver parameterized by the acceptable diversity loss `D̄` and the
//! scanwidth of the food web.
//!
//! Killing a set `A` of taxa loses the edges whose offspring all lie in `A`.
//! Each extinct taxon is charged a respecting edge set, and a color coding
//! makes those sets pairwise distinguishable, so a table over a tree
//! extension of the food web can decide whether enough taxa can be dropped
//! while the loss stays within `D̄`.

mod dp;
mod respecting;

pub use dp::{DbarSolution, MAX_TABLE_WIDTH};
pub use respecting::{
    brute_force_respecting, compute_respecting, compute_respecting_with_order, is_respecting, perfect_triple_check,
    ColorSet, RespectingSet, MAX_COLORS,
};

use crate::colorcoding::{color_edges, Coloring};
use crate::diversity::pd;
use crate::driver::{cached_family, prepare, run_members, MemberResult, SolveConfig};
use crate::error::{Error, Result};
use crate::model::{EdgeId, Instance, TaxonId};
use crate::outcome::{Algorithm, SolveOutcome};
use crate::scanwidth::TreeExtension;
use crate::viability::{is_gamma_viable, viability_closure_hint};

/// How an earlier block and a later block of extinct taxa are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergeRule {
    /// Anchor colors of the later block must avoid the colors lost by the
    /// earlier block.
    #[default]
    Printed,
    /// Drops that requirement. Accepting runs are then not always backed by a
    /// perfect triple; the driver counts them as unverified.
    ProofText,
}

/// Whether the anchors of an extinct extension vertex may be lost later by
/// taxa of its own subtree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExtinctionAnchors {
    #[default]
    AllowSubtreeLosses,
    /// Forbids it. Sound, but misses some yes-instances.
    AsPrinted,
}

/// Variants of the table recurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DbarOptions {
    pub merge_rule: MergeRule,
    pub extinction_anchors: ExtinctionAnchors,
}

/// Runs the table for a single coloring. The instance must have a single
/// source, `ext` must be an extension of its food web and the coloring must
/// color every network edge with a color below 64.
pub fn solve_colored_dbar(inst: &Instance, ext: &TreeExtension, coloring: &Coloring) -> Result<Option<DbarSolution>> {
    solve_colored_dbar_with(inst, ext, coloring, DbarOptions::default())
}

pub fn solve_colored_dbar_with(
    inst: &Instance,
    ext: &TreeExtension,
    coloring: &Coloring,
    options: DbarOptions,
) -> Result<Option<DbarSolution>> {
    dp::DbarContext::new(inst, ext, options)?.solve(coloring)
}

/// Palette size for the color coding: `2·D̄` colors always suffice, and on
/// trees so do `4·ā − 2`, where `ā` is the smallest number of taxa an optimal
/// solution has to drop.
pub fn color_budget(inst: &Instance) -> usize {
    let dbar = inst.dbar().max(0) as usize;
    let general = 2 * dbar;
    let budget = if inst.network().is_tree() {
        let all: Vec<TaxonId> = (0..inst.num_taxa()).collect();
        let forced = inst.num_taxa() - viability_closure_hint(inst.foodweb(), &all).len();
        let abar = inst.kbar().max(forced);
        (4 * abar).saturating_sub(2).min(general)
    } else {
        general
    };
    budget.max(1)
}

/// Decides the instance with the default recurrences.
pub fn solve_dbar(inst: &Instance, ext: Option<&TreeExtension>, cfg: &SolveConfig) -> Result<SolveOutcome> {
    solve_dbar_with(inst, ext, cfg, DbarOptions::default())
}

/// Decides the instance: builds a perfect hash family over the network edges,
/// runs the table for each member and returns the first solution that passes
/// verification. `ext`, if given, must be an extension of the original web.
pub fn solve_dbar_with(
    inst: &Instance,
    ext: Option<&TreeExtension>,
    cfg: &SolveConfig,
    options: DbarOptions,
) -> Result<SolveOutcome> {
    if inst.dbar() < 0 {
        return Ok(SolveOutcome::no(Algorithm::Dbar, cfg.seed));
    }
    let prepared = prepare(inst, ext)?;
    let work = &prepared.inst;
    let net = work.network();
    let q = net.num_edges();
    let budget = color_budget(work);
    let palette = budget.min(q);
    if palette > MAX_COLORS {
        return Err(Error::Infeasible(format!(
            "the coloring needs {palette} colors, more than the supported {MAX_COLORS}"
        )));
    }
    let family = cached_family(q, budget, cfg)?;
    let edges: Vec<EdgeId> = (0..q).collect();
    let ctx = dp::DbarContext::new(work, &prepared.ext, options)?;
    let total = net.total_weight();
    let looped = run_members(&family.members, cfg.jobs, |member| {
        let coloring = color_edges(member, &edges, q, family.n_colors.min(MAX_COLORS))?;
        let Some(sol) = ctx.solve(&coloring)? else {
            return Ok(MemberResult::Reject);
        };
        let mut dead = vec![false; work.num_taxa()];
        for &x in &sol.extinct {
            dead[x] = true;
        }
        let kept: Vec<TaxonId> = (0..work.num_taxa()).filter(|&x| !dead[x]).collect();
        if !perfect_triple_check(&sol.extinct, &sol.chi1, &sol.chi2, net, &coloring) {
            return Ok(MemberResult::Unverified);
        }
        let value = pd(net, &kept);
        assert!(value + sol.loss >= total, "a perfect triple of weight {} left only {value} of {total}", sol.loss);
        let ok = kept.len() <= work.k() && value >= work.d() && is_gamma_viable(work.foodweb(), &kept).viable;
        Ok(if ok { MemberResult::Accept((kept, sol)) } else { MemberResult::Unverified })
    })?;
    let mut outcome = SolveOutcome::no(Algorithm::Dbar, cfg.seed);
    outcome.colors = palette;
    outcome.family_size = family.len();
    outcome.family_kind = family.kind.to_string();
    outcome.members_tried = looped.tried;
    outcome.unverified_candidates = looped.unverified;
    outcome.width = Some(prepared.ext.width());
    if let Some((kept, _)) = looped.found {
        let witness = work.strip_super_source(&kept);
        outcome.answer = true;
        outcome.pd = Some(pd(inst.network(), &witness));
        outcome.witness = Some(witness);
    }
    Ok(outcome)
}
