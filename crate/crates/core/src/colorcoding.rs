//! Perfect hash families and the edge colorings derived from them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::EdgeId;

/// Largest number of `N`-subsets the deterministic construction will certify.
pub const DETERMINISTIC_SUBSET_CAP: u64 = 2_000_000;

const CANDIDATES_PER_ROUND: usize = 16;

/// How a family is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FamilyMode {
    /// Random members added until every subset is covered, certified exhaustively.
    #[default]
    Deterministic,
    /// Independent uniform random members, enough for the requested failure
    /// probability. When that would take at least as many members as there are
    /// subsets to cover, a certified family is built instead.
    MonteCarlo,
}

impl FromStr for FamilyMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "det" => Ok(Self::Deterministic),
            "mc" => Ok(Self::MonteCarlo),
            other => Err(format!("unknown family mode '{other}' (expected det or mc)")),
        }
    }
}

/// What guarantee a family carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// A single injective map, since the universe is no larger than the palette.
    Identity,
    /// Exhaustively certified perfect.
    Verified,
    /// Random members; a fixed subset is missed with probability at most `fail_prob`
    /// after a union bound over all subsets.
    MonteCarlo { fail_prob: BigRational },
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Identity => "identity",
            FamilyKind::Verified => "det-verified",
            FamilyKind::MonteCarlo { .. } => "monte-carlo",
        })
    }
}

/// A family of maps `[q] → [n_colors]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringFamily {
    pub q: usize,
    pub n_colors: usize,
    pub members: Vec<Vec<u32>>,
    pub kind: FamilyKind,
}

impl ColoringFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Builds a `(q, n_colors)` family.
pub fn build_family(
    q: usize,
    n_colors: usize,
    mode: FamilyMode,
    fail_prob: &BigRational,
    seed: u64,
) -> Result<ColoringFamily> {
    if n_colors == 0 {
        return Err(Error::Infeasible("a coloring family needs at least one color".into()));
    }
    if q <= n_colors {
        return Ok(ColoringFamily { q, n_colors, members: vec![(0..q as u32).collect()], kind: FamilyKind::Identity });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match mode {
        FamilyMode::Deterministic => {
            let subsets = binomial(q, n_colors);
            if subsets > BigUint::from(DETERMINISTIC_SUBSET_CAP) {
                return Err(Error::Infeasible(format!(
                    "a certified ({q},{n_colors})-perfect family would have to cover {subsets} subsets (cap {DETERMINISTIC_SUBSET_CAP}); use monte-carlo"
                )));
            }
            Ok(ColoringFamily { q, n_colors, members: greedy_cover(q, n_colors, &mut rng), kind: FamilyKind::Verified })
        }
        FamilyMode::MonteCarlo => {
            let subsets = binomial(q, n_colors);
            let random = monte_carlo_size(q, n_colors, fail_prob);
            let certify = subsets <= BigUint::from(DETERMINISTIC_SUBSET_CAP)
                && !matches!(random, Ok(t) if BigUint::from(t) < subsets);
            if certify {
                return Ok(ColoringFamily {
                    q,
                    n_colors,
                    members: greedy_cover(q, n_colors, &mut rng),
                    kind: FamilyKind::Verified,
                });
            }
            let t = random?;
            let members = (0..t).map(|_| (0..q).map(|_| rng.gen_range(0..n_colors as u32)).collect()).collect();
            Ok(ColoringFamily { q, n_colors, members, kind: FamilyKind::MonteCarlo { fail_prob: fail_prob.clone() } })
        }
    }
}

/// `C(n, k)` exactly.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Smallest `t` with `C(q, N) · (1 − N!/N^N)^t ≤ fail_prob`, decided in exact
/// integer arithmetic.
pub fn monte_carlo_size(q: usize, n_colors: usize, fail_prob: &BigRational) -> Result<u64> {
    if *fail_prob <= BigRational::zero() || *fail_prob >= BigRational::one() {
        return Err(Error::Infeasible("the failure probability must lie strictly between 0 and 1".into()));
    }
    let n = n_colors as u32;
    let total = BigUint::from(n_colors).pow(n);
    let factorial: BigUint = (1..=n_colors).map(BigUint::from).product();
    let miss = &total - &factorial;
    if miss.is_zero() {
        return Ok(1);
    }
    let subsets = binomial(q, n_colors);
    let numer = fail_prob.numer().to_biguint().expect("positive");
    let denom = fail_prob.denom().to_biguint().expect("positive");
    let fits = |t: u64| -> bool {
        let t = u32::try_from(t).unwrap_or(u32::MAX);
        &subsets * miss.pow(t) * &denom <= &numer * total.pow(t)
    };
    let p = factorial.to_f64().unwrap_or(f64::MAX) / total.to_f64().unwrap_or(f64::MAX);
    let ratio = subsets.to_f64().unwrap_or(f64::MAX) / fail_prob.to_f64().unwrap_or(f64::MIN_POSITIVE);
    let estimate = (ratio.ln() / -(-p).ln_1p()).ceil().max(1.0);
    if !estimate.is_finite() || estimate > 1e7 {
        return Err(Error::Infeasible(format!(
            "a monte-carlo ({q},{n_colors}) family needs about {estimate:.0} members"
        )));
    }
    let mut t = estimate as u64;
    while t > 1 && fits(t - 1) {
        t -= 1;
    }
    while !fits(t) {
        t += 1;
    }
    Ok(t)
}

fn injective(member: &[u32], subset: &[u32]) -> bool {
    let mut seen = 0u128;
    for &e in subset {
        let bit = 1u128 << (member[e as usize] % 128);
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    true
}

fn for_each_subset(q: usize, k: usize, mut f: impl FnMut(&[u32])) {
    if k > q {
        return;
    }
    let mut idx: Vec<u32> = (0..k as u32).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] as usize == q - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn greedy_cover(q: usize, n: usize, rng: &mut impl Rng) -> Vec<Vec<u32>> {
    let mut pending: Vec<u32> = Vec::new();
    for_each_subset(q, n, |s| pending.extend_from_slice(s));
    let mut members = Vec::new();
    let balanced = |rng: &mut dyn FnMut(&mut Vec<u32>)| -> Vec<u32> {
        let mut perm: Vec<u32> = (0..q as u32).collect();
        rng(&mut perm);
        let mut member = vec![0u32; q];
        for (pos, &e) in perm.iter().enumerate() {
            member[e as usize] = (pos % n) as u32;
        }
        member
    };
    while !pending.is_empty() {
        let mut best: Option<(usize, Vec<u32>)> = None;
        for _ in 0..CANDIDATES_PER_ROUND {
            let cand = balanced(&mut |p: &mut Vec<u32>| p.shuffle(rng));
            let covered = pending.chunks_exact(n).filter(|s| injective(&cand, s)).count();
            if best.as_ref().is_none_or(|(b, _)| covered > *b) {
                best = Some((covered, cand));
            }
        }
        let (covered, mut member) = best.expect("at least one candidate");
        if covered == 0 {
            for (c, &e) in pending[..n].iter().enumerate() {
                member[e as usize] = c as u32;
            }
        }
        let mut kept = Vec::with_capacity(pending.len());
        for s in pending.chunks_exact(n) {
            if !injective(&member, s) {
                kept.extend_from_slice(s);
            }
        }
        pending = kept;
        members.push(member);
    }
    members
}

/// Exhaustively checks that every subset of size at most `n_colors` is
/// colored injectively by some member.
pub fn is_perfect(family: &ColoringFamily) -> bool {
    let k = family.n_colors.min(family.q);
    let mut ok = true;
    for_each_subset(family.q, k, |s| {
        if ok && !family.members.iter().any(|m| injective(m, s)) {
            ok = false;
        }
    });
    ok
}

/// A partial edge coloring of a network, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Option<u32>>,
    n_colors: usize,
}

impl Coloring {
    /// Colors every edge `0..num_edges` by its own id.
    pub fn identity(num_edges: usize) -> Self {
        Self { colors: (0..num_edges as u32).map(Some).collect(), n_colors: num_edges }
    }

    pub fn from_colors(colors: Vec<Option<u32>>, n_colors: usize) -> Self {
        Self { colors, n_colors }
    }

    pub fn color(&self, e: EdgeId) -> Option<u32> {
        self.colors[e]
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    pub fn num_edges(&self) -> usize {
        self.colors.len()
    }
}

/// Gives `edges[j]` the color `member[j]`; edges not listed stay uncolored.
pub fn color_edges(member: &[u32], edges: &[EdgeId], num_edges: usize, n_colors: usize) -> Result<Coloring> {
    if member.len() != edges.len() {
        return Err(Error::Instance(format!(
            "the coloring map has {} entries for {} edges",
            member.len(),
            edges.len()
        )));
    }
    let mut colors = vec![None; num_edges];
    for (&e, &c) in edges.iter().zip(member) {
        if e >= num_edges || c as usize >= n_colors {
            return Err(Error::Instance(format!("edge {e} or color {c} is out of range")));
        }
        colors[e] = Some(c);
    }
    Ok(Coloring { colors, n_colors })
}
