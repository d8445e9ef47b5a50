//! The table over a tree extension for a single coloring.
//!
//! For an extension vertex `v` and a set `Φ ⊆ GW(v)` of web edges that are
//! granted from outside the subtree `Q` of `v`, the table maps a key
//! `(C1, C2, ℓ)` to the least total weight of respecting sets over choices of
//! extinct taxa `A ⊆ Q` such that `Q ∖ A` survives given `Φ`, `C1` and `C2`
//! are the unions of lost colors and anchor colors of `A`, and
//! `ℓ = min(|A|, k̄)`. Taxa of `A` are ordered by the depth-first order of the
//! extension, which is the order of the perfect-triple conditions.

use rustc_hash::FxHashMap;
use std::rc::Rc;

use super::respecting::{respecting_options, ColorSet, MAX_COLORS};
use super::{DbarOptions, ExtinctionAnchors, MergeRule};
use crate::colorcoding::Coloring;
use crate::driver::ExtensionRows;
use crate::error::{Error, Result};
use crate::model::{Instance, TaxonId};
use crate::scanwidth::TreeExtension;

/// Largest `|GW(v)|` the table accepts; it holds `2^|GW(v)|` rows per vertex.
pub const MAX_TABLE_WIDTH: usize = 20;

/// An accepted extinction set with the perfect triple that certifies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbarSolution {
    /// `Σ ω(F_{x,χ2(x)})` over the extinct taxa, at most `D̄`.
    pub loss: u64,
    /// The extinct taxa `A` in depth-first order of the extension.
    pub extinct: Vec<TaxonId>,
    pub chi1: Vec<ColorSet>,
    pub chi2: Vec<ColorSet>,
    /// `ω(F_{x,χ2(x)})` for each extinct taxon.
    pub weights: Vec<u64>,
}

#[derive(Debug)]
enum Trace {
    Kill { taxon: TaxonId, chi1: ColorSet, chi2: ColorSet, weight: u64 },
    Join(Rc<Trace>, Rc<Trace>),
}

#[derive(Debug, Clone)]
struct Entry {
    weight: u64,
    trace: Option<Rc<Trace>>,
}

type Key = (ColorSet, ColorSet, u16);
type Table = FxHashMap<Key, Entry>;

fn join(a: &Option<Rc<Trace>>, b: &Option<Rc<Trace>>) -> Option<Rc<Trace>> {
    match (a, b) {
        (None, t) | (t, None) => t.clone(),
        (Some(a), Some(b)) => Some(Rc::new(Trace::Join(Rc::clone(a), Rc::clone(b)))),
    }
}

fn unit() -> Table {
    let mut t = Table::default();
    t.insert((0, 0, 0), Entry { weight: 0, trace: None });
    t
}

/// Everything about an instance and extension that does not depend on the
/// coloring.
pub(crate) struct DbarContext<'a> {
    inst: &'a Instance,
    rows: ExtensionRows<'a>,
    kbar: u16,
    dbar: u64,
    options: DbarOptions,
}

impl<'a> DbarContext<'a> {
    pub(crate) fn new(inst: &'a Instance, ext: &'a TreeExtension, options: DbarOptions) -> Result<Self> {
        let rows = ExtensionRows::new(inst, ext, MAX_TABLE_WIDTH)?;
        let dbar = u64::try_from(inst.dbar())
            .map_err(|_| Error::Instance("the diversity target exceeds the total weight".into()))?;
        Ok(Self { inst, rows, kbar: inst.kbar() as u16, dbar, options })
    }

    fn insert(&self, out: &mut Table, key: Key, weight: u64, make: impl FnOnce() -> Option<Rc<Trace>>) {
        match out.get_mut(&key) {
            Some(entry) if entry.weight <= weight => {}
            Some(entry) => *entry = Entry { weight, trace: make() },
            None => {
                out.insert(key, Entry { weight, trace: make() });
            }
        }
    }

    /// Combines an earlier block `p` with a later block `l`.
    fn merge(&self, p: &Table, l: &Table, first_is_vertex: bool) -> Table {
        let mut out = Table::default();
        let strict = first_is_vertex && self.options.extinction_anchors == ExtinctionAnchors::AsPrinted;
        for (&(c1p, c2p, lp), ep) in p {
            for (&(c1l, c2l, ll), el) in l {
                if c1p & c1l != 0 || c2p & c2l != 0 {
                    continue;
                }
                if self.options.merge_rule == MergeRule::Printed && c1p & c2l != 0 {
                    continue;
                }
                if strict && c2p & c1l != 0 {
                    continue;
                }
                let weight = ep.weight + el.weight;
                if weight > self.dbar {
                    continue;
                }
                let key = (c1p | c1l, c2p | c2l, (lp + ll).min(self.kbar));
                self.insert(&mut out, key, weight, || join(&ep.trace, &el.trace));
            }
        }
        out
    }

    fn fold_children(&self, v: TaxonId, tables: &[Option<Vec<Table>>], phi: u64, survives: bool) -> Table {
        let mut acc = unit();
        for (i, w) in self.rows.children(v).enumerate() {
            let child =
                &tables[w].as_ref().expect("children are solved first")[self.rows.child_row(v, i, phi, survives)];
            acc = self.merge(&acc, child, false);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// Runs the table for one coloring and returns a minimum-loss accepted
    /// solution.
    pub(crate) fn solve(&self, coloring: &Coloring) -> Result<Option<DbarSolution>> {
        let net = self.inst.network();
        if coloring.num_edges() != net.num_edges() {
            return Err(Error::Instance(format!(
                "the coloring covers {} edges but the network has {}",
                coloring.num_edges(),
                net.num_edges()
            )));
        }
        let colors: Vec<ColorSet> = (0..net.num_edges())
            .map(|e| match coloring.color(e) {
                Some(c) if (c as usize) < MAX_COLORS => Ok(1u64 << c),
                Some(c) => Err(Error::Infeasible(format!("color {c} exceeds the 64-color limit"))),
                None => Err(Error::Instance(format!("edge {e} is uncolored"))),
            })
            .collect::<Result<_>>()?;
        let n = self.inst.num_taxa();
        let mut tables: Vec<Option<Vec<Table>>> = vec![None; n];
        let ext = self.rows.ext();
        for &v in ext.dfs_order().iter().rev() {
            let mut own = Table::default();
            for opt in respecting_options(net, &colors, v, self.dbar) {
                let trace =
                    Rc::new(Trace::Kill { taxon: v, chi1: opt.edge_colors, chi2: opt.colors, weight: opt.weight });
                self.insert(&mut own, (opt.edge_colors, opt.colors, 1.min(self.kbar)), opt.weight, || Some(trace));
            }
            let rows = (0..self.rows.rows(v))
                .map(|phi| {
                    let mut row = if self.rows.viable(v, phi) {
                        self.fold_children(v, &tables, phi, true)
                    } else {
                        Table::default()
                    };
                    if !own.is_empty() {
                        let rest = self.fold_children(v, &tables, phi, false);
                        for (key, entry) in self.merge(&own, &rest, true) {
                            self.insert(&mut row, key, entry.weight, || entry.trace.clone());
                        }
                    }
                    row
                })
                .collect();
            for w in self.rows.children(v) {
                tables[w] = None;
            }
            tables[v] = Some(rows);
        }
        let root = ext.root();
        let best = tables[root].as_ref().expect("root table")[0]
            .iter()
            .filter(|((_, _, l), _)| *l == self.kbar)
            .min_by_key(|(key, entry)| (entry.weight, **key));
        Ok(best.map(|(_, entry)| {
            let mut sol = DbarSolution {
                loss: entry.weight,
                extinct: Vec::new(),
                chi1: Vec::new(),
                chi2: Vec::new(),
                weights: Vec::new(),
            };
            if let Some(t) = &entry.trace {
                collect(t, &mut sol);
            }
            sol
        }))
    }
}

fn collect(t: &Trace, sol: &mut DbarSolution) {
    match t {
        Trace::Kill { taxon, chi1, chi2, weight } => {
            sol.extinct.push(*taxon);
            sol.chi1.push(*chi1);
            sol.chi2.push(*chi2);
            sol.weights.push(*weight);
        }
        Trace::Join(a, b) => {
            collect(a, sol);
            collect(b, sol);
        }
    }
}
