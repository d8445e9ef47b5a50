//! The table over a tree extension for a single coloring of the tree edges.
//!
//! For an extension vertex `v` and a row `Φ ⊆ GW(v)`, the table maps a key
//! `(C, ℓ)` to the largest total weight of suitable sets over colorful
//! choices of at most `ℓ` saved taxa in the subtree of `v` whose color sets
//! partition `C` and which survive given `Φ`.

use rustc_hash::FxHashMap;
use std::rc::Rc;

use super::suitable::{suitable_options, SuitableSet};
use crate::colorcoding::Coloring;
use crate::driver::ExtensionRows;
use crate::error::{Error, Result};
use crate::model::{EdgeId, Instance, TaxonId};
use crate::scanwidth::TreeExtension;
use crate::solver_dbar::{ColorSet, MAX_COLORS};

/// Largest `|GW(v)|` the table accepts.
pub const MAX_TABLE_WIDTH: usize = 20;

/// The best colorful choice of saved taxa for one coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KhSolution {
    /// Total weight of the suitable sets, a lower bound on the diversity of `saved`.
    pub value: u64,
    /// Saved taxa in depth-first order of the extension.
    pub saved: Vec<TaxonId>,
    /// Color set of each saved taxon.
    pub chi: Vec<ColorSet>,
    /// Suitable set of each saved taxon.
    pub sets: Vec<Vec<EdgeId>>,
}

#[derive(Debug)]
enum Trace {
    Save { taxon: TaxonId, option: usize },
    Join(Rc<Trace>, Rc<Trace>),
}

#[derive(Debug, Clone)]
struct Entry {
    weight: u64,
    trace: Option<Rc<Trace>>,
}

type Key = (ColorSet, u16);
type Table = FxHashMap<Key, Entry>;

fn join(a: &Option<Rc<Trace>>, b: &Option<Rc<Trace>>) -> Option<Rc<Trace>> {
    match (a, b) {
        (None, t) | (t, None) => t.clone(),
        (Some(a), Some(b)) => Some(Rc::new(Trace::Join(Rc::clone(a), Rc::clone(b)))),
    }
}

fn insert(out: &mut Table, key: Key, weight: u64, make: impl FnOnce() -> Option<Rc<Trace>>) {
    match out.get_mut(&key) {
        Some(entry) if entry.weight >= weight => {}
        Some(entry) => *entry = Entry { weight, trace: make() },
        None => {
            out.insert(key, Entry { weight, trace: make() });
        }
    }
}

pub(crate) struct KhContext<'a> {
    inst: &'a Instance,
    rows: ExtensionRows<'a>,
    k: u16,
}

impl<'a> KhContext<'a> {
    pub(crate) fn new(inst: &'a Instance, ext: &'a TreeExtension) -> Result<Self> {
        let rows = ExtensionRows::new(inst, ext, MAX_TABLE_WIDTH)?;
        let k = u16::try_from(inst.k()).map_err(|_| Error::Instance("k is too large".into()))?;
        Ok(Self { inst, rows, k })
    }

    fn merge(&self, p: &Table, l: &Table) -> Table {
        let mut out = Table::default();
        for (&(cp, lp), ep) in p {
            for (&(cl, ll), el) in l {
                if cp & cl != 0 || lp + ll > self.k {
                    continue;
                }
                insert(&mut out, (cp | cl, lp + ll), ep.weight + el.weight, || join(&ep.trace, &el.trace));
            }
        }
        out
    }

    fn fold_children(&self, v: TaxonId, tables: &[Option<Vec<Table>>], phi: u64, saved: bool) -> Table {
        let mut acc = Table::default();
        acc.insert((0, 0), Entry { weight: 0, trace: None });
        for (i, w) in self.rows.children(v).enumerate() {
            let child = &tables[w].as_ref().expect("children are solved first")[self.rows.child_row(v, i, phi, saved)];
            acc = self.merge(&acc, child);
        }
        acc
    }

    /// Runs the table for one coloring of the tree edges; reticulation and
    /// leaf edges must be uncolored.
    pub(crate) fn solve(&self, coloring: &Coloring) -> Result<KhSolution> {
        let net = self.inst.network();
        if coloring.num_edges() != net.num_edges() {
            return Err(Error::Instance(format!(
                "the coloring covers {} edges but the network has {}",
                coloring.num_edges(),
                net.num_edges()
            )));
        }
        let colors: Vec<Option<ColorSet>> = (0..net.num_edges())
            .map(|e| match coloring.color(e) {
                Some(c) if (c as usize) < MAX_COLORS => Ok(Some(1u64 << c)),
                Some(c) => Err(Error::Infeasible(format!("color {c} exceeds the 64-color limit"))),
                None => Ok(None),
            })
            .collect::<Result<_>>()?;
        let n = self.inst.num_taxa();
        let options: Vec<Vec<SuitableSet>> = (0..n).map(|x| suitable_options(net, &colors, x)).collect();
        let mut tables: Vec<Option<Vec<Table>>> = vec![None; n];
        let ext = self.rows.ext();
        for &v in ext.dfs_order().iter().rev() {
            let rows = (0..self.rows.rows(v))
                .map(|phi| {
                    let mut row = self.fold_children(v, &tables, phi, false);
                    if self.k >= 1 && self.rows.viable(v, phi) {
                        let rest = self.fold_children(v, &tables, phi, true);
                        for (&(c, l), entry) in &rest {
                            if l + 1 > self.k {
                                continue;
                            }
                            for (i, o) in options[v].iter().enumerate() {
                                if o.colors & c != 0 {
                                    continue;
                                }
                                insert(&mut row, (c | o.colors, l + 1), entry.weight + o.weight, || {
                                    join(&Some(Rc::new(Trace::Save { taxon: v, option: i })), &entry.trace)
                                });
                            }
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
        let root = tables[ext.root()].as_ref().expect("root table");
        let (_, best) = root[0]
            .iter()
            .max_by_key(|(&(c, l), entry)| (entry.weight, std::cmp::Reverse((l, c))))
            .expect("the empty choice is always present");
        let mut sol = KhSolution { value: best.weight, saved: Vec::new(), chi: Vec::new(), sets: Vec::new() };
        if let Some(t) = &best.trace {
            collect(t, &options, &mut sol);
        }
        Ok(sol)
    }
}

fn collect(t: &Trace, options: &[Vec<SuitableSet>], sol: &mut KhSolution) {
    match t {
        Trace::Save { taxon, option } => {
            let o = &options[*taxon][*option];
            sol.saved.push(*taxon);
            sol.chi.push(o.colors);
            sol.sets.push(o.edges.clone());
        }
        Trace::Join(a, b) => {
            collect(a, options, sol);
            collect(b, options, sol);
        }
    }
}
