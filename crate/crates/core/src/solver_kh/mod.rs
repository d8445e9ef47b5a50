//! The solver parameterized by the number `k` of saved taxa, the tree-edge
//! height `H` and the scanwidth of the food web.
//!
//! A color coding of the edges into tree vertices with `k·H` colors lets every
//! saved taxon claim its own colors. The suitable sets of saved taxa with
//! disjoint color sets are pairwise disjoint, so their total weight is a lower
//! bound on the diversity of the saved set, and for a good coloring it is
//! exact.

mod dp;
mod suitable;

pub use dp::{KhSolution, MAX_TABLE_WIDTH};
pub use suitable::{is_suitable, max_suitable_weight, SuitableSet};

use crate::colorcoding::{color_edges, Coloring};
use crate::diversity::{pd, structural_params};
use crate::driver::{cached_family, prepare, run_members, MemberResult, SolveConfig};
use crate::error::{Error, Result};
use crate::model::{EdgeId, Instance};
use crate::outcome::{Algorithm, SolveOutcome};
use crate::scanwidth::TreeExtension;
use crate::solver_dbar::MAX_COLORS;
use crate::viability::is_gamma_viable;

/// Runs the table for one coloring of the edges into tree vertices and
/// returns the heaviest colorful choice, if its weight reaches `D`. The
/// instance must have a single source and `ext` must be an extension of its
/// food web.
pub fn solve_colored_kh(inst: &Instance, ext: &TreeExtension, coloring: &Coloring) -> Result<Option<KhSolution>> {
    let sol = dp::KhContext::new(inst, ext)?.solve(coloring)?;
    Ok((sol.value >= inst.d()).then_some(sol))
}

/// `k·H` for the instance.
pub fn color_budget(inst: &Instance) -> usize {
    inst.k() * structural_params(inst.network()).big_h
}

/// Whether the suitable sets of a solution are pairwise disjoint and its
/// color sets are pairwise disjoint.
pub fn is_colorful_and_disjoint(sol: &KhSolution) -> bool {
    let mut colors = 0;
    for &c in &sol.chi {
        if colors & c != 0 {
            return false;
        }
        colors |= c;
    }
    let mut edges: Vec<EdgeId> = sol.sets.iter().flatten().copied().collect();
    let total = edges.len();
    edges.sort_unstable();
    edges.dedup();
    edges.len() == total
}

/// Decides the instance by running the table for each member of a perfect
/// hash family over the edges into tree vertices. The first solution that
/// passes verification is returned. `ext`, if given, must be an extension
/// of the original web.
pub fn solve_kh(inst: &Instance, ext: Option<&TreeExtension>, cfg: &SolveConfig) -> Result<SolveOutcome> {
    let mut outcome = SolveOutcome::no(Algorithm::Kh, cfg.seed);
    if inst.dbar() < 0 {
        return Ok(outcome);
    }
    if inst.k() == 0 {
        if inst.d() == 0 {
            outcome.answer = true;
            outcome.witness = Some(Vec::new());
            outcome.pd = Some(0);
        }
        return Ok(outcome);
    }
    let prepared = prepare(inst, ext)?;
    let work = &prepared.inst;
    let net = work.network();
    let colored = net.internal_tree_edges();
    let budget = color_budget(work).max(1);
    let palette = budget.min(colored.len());
    if palette > MAX_COLORS {
        return Err(Error::Infeasible(format!(
            "the coloring needs {palette} colors, more than the supported {MAX_COLORS}"
        )));
    }
    let family = cached_family(colored.len(), budget, cfg)?;
    let ctx = dp::KhContext::new(work, &prepared.ext)?;
    let looped = run_members(&family.members, cfg.jobs, |member| {
        let coloring = color_edges(member, &colored, net.num_edges(), family.n_colors.min(MAX_COLORS))?;
        let sol = ctx.solve(&coloring)?;
        if sol.value < work.d() {
            return Ok(MemberResult::Reject);
        }
        let mut kept = sol.saved.clone();
        kept.sort_unstable();
        let value = pd(net, &kept);
        let ok = is_colorful_and_disjoint(&sol)
            && value >= sol.value
            && kept.len() <= work.k()
            && is_gamma_viable(work.foodweb(), &kept).viable;
        Ok(if ok { MemberResult::Accept(kept) } else { MemberResult::Unverified })
    })?;
    outcome.colors = palette;
    outcome.family_size = family.len();
    outcome.family_kind = family.kind.to_string();
    outcome.members_tried = looped.tried;
    outcome.unverified_candidates = looped.unverified;
    outcome.width = Some(prepared.ext.width());
    if let Some(kept) = looped.found {
        let witness = work.strip_super_source(&kept);
        outcome.answer = true;
        outcome.pd = Some(pd(inst.network(), &witness));
        outcome.witness = Some(witness);
    }
    Ok(outcome)
}
