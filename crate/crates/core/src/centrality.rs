//! Exact ST-path counting.
//!
//! `P_S(v)` (complexity) counts paths from any source to `v`, `P_T(v)` (generality) counts
//! paths from `v` to any target, and the path centrality is `P(v) = P_S(v) * P_T(v)`.
//! Counts grow exponentially with path length, so everything public is a [`BigUint`].
//! Internally the counting runs over [`PathCount`], which lets hot loops use `u128`
//! whenever the network's counts fit; counts never grow when vertices are removed, so a
//! network that fits at the start fits for the whole greedy run.

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{DependencyNetwork, VertexClass};

pub(crate) trait PathCount: Clone + Ord + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn is_nil(&self) -> bool;
    fn to_big(&self) -> BigUint;
}

impl PathCount for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        u128::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        u128::checked_mul(*self, *other)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl PathCount for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

/// Path counts on a network with some vertices removed. Removed and isolated vertices
/// get zero in both directions; sources and targets keep their original roles, so the
/// residual total counts exactly the original ST-paths that avoid every removed vertex.
#[derive(Clone, Debug)]
pub(crate) struct Counts<C> {
    pub ps: Vec<C>,
    pub pt: Vec<C>,
    pub total: C,
}

impl<C: PathCount> Counts<C> {
    pub fn new(n: usize) -> Self {
        Counts { ps: vec![C::zero(); n], pt: vec![C::zero(); n], total: C::zero() }
    }

    pub fn centrality(&self, v: usize) -> C {
        self.ps[v]
            .checked_mul(&self.pt[v])
            .expect("residual centrality bounded by the initial total")
    }

    /// Recomputes all counts in place. Returns `false` on overflow of `C`.
    pub fn recount(&mut self, g: &DependencyNetwork, removed: &[bool]) -> bool {
        let topo = g.topo_order();
        for &v in topo {
            let value = if removed[v] {
                C::zero()
            } else {
                match g.class(v) {
                    VertexClass::Isolated => C::zero(),
                    VertexClass::Source => C::one(),
                    _ => {
                        let mut sum = C::zero();
                        for &u in g.predecessors(v) {
                            if self.ps[u].is_nil() {
                                continue;
                            }
                            match sum.checked_add(&self.ps[u]) {
                                Some(s) => sum = s,
                                None => return false,
                            }
                        }
                        sum
                    }
                }
            };
            self.ps[v] = value;
        }
        for &v in topo.iter().rev() {
            let value = if removed[v] {
                C::zero()
            } else {
                match g.class(v) {
                    VertexClass::Isolated => C::zero(),
                    VertexClass::Target => C::one(),
                    _ => {
                        let mut sum = C::zero();
                        for &w in g.successors(v) {
                            if self.pt[w].is_nil() {
                                continue;
                            }
                            match sum.checked_add(&self.pt[w]) {
                                Some(s) => sum = s,
                                None => return false,
                            }
                        }
                        sum
                    }
                }
            };
            self.pt[v] = value;
        }
        let mut total = C::zero();
        for s in g.sources() {
            match total.checked_add(&self.pt[s]) {
                Some(t) => total = t,
                None => return false,
            }
        }
        // P(v) <= total for every v; make sure the products fit as well.
        for v in 0..g.vertex_count() {
            if self.ps[v].checked_mul(&self.pt[v]).is_none() {
                return false;
            }
        }
        self.total = total;
        true
    }

    pub fn compute(g: &DependencyNetwork, removed: &[bool]) -> Option<Self> {
        let mut counts = Self::new(g.vertex_count());
        counts.recount(g, removed).then_some(counts)
    }
}

/// Whether the whole network's path counts fit the `u128` fast path.
pub(crate) fn fits_u128(g: &DependencyNetwork) -> bool {
    Counts::<u128>::compute(g, &vec![false; g.vertex_count()]).is_some()
}

/// Per-vertex path counts for a dependency network.
#[derive(Clone, Debug, PartialEq)]
pub struct PathStats {
    ps: Vec<BigUint>,
    pt: Vec<BigUint>,
    p: Vec<BigUint>,
    loc: Vec<Option<f64>>,
    total: BigUint,
}

impl PathStats {
    pub fn vertex_count(&self) -> usize {
        self.ps.len()
    }

    /// Complexity: number of paths from any source to `v`.
    pub fn ps(&self, v: usize) -> &BigUint {
        &self.ps[v]
    }

    /// Generality: number of paths from `v` to any target.
    pub fn pt(&self, v: usize) -> &BigUint {
        &self.pt[v]
    }

    /// Path centrality: number of ST-paths through `v`.
    pub fn p(&self, v: usize) -> &BigUint {
        &self.p[v]
    }

    /// Total number of ST-paths.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn has_paths(&self) -> bool {
        !self.total.is_zero()
    }

    /// `P(v) / P`, or 0 when there are no paths.
    pub fn path_fraction(&self, v: usize) -> f64 {
        if self.total.is_zero() {
            0.0
        } else {
            ratio(&self.p[v], &self.total)
        }
    }

    pub fn location(&self, v: usize) -> Option<f64> {
        self.loc[v]
    }

    /// Vertices on at least one ST-path.
    pub fn on_path(&self, v: usize) -> bool {
        !self.p[v].is_zero()
    }

    pub(crate) fn require_paths(&self) -> Result<()> {
        if self.has_paths() {
            Ok(())
        } else {
            Err(Error::NoStPaths)
        }
    }
}

/// Runs the bottom-up and top-down passes. A network without ST-paths yields total 0
/// (see [`PathStats::has_paths`]) rather than an error.
pub fn compute_path_stats(g: &DependencyNetwork) -> Result<PathStats> {
    let none = vec![false; g.vertex_count()];
    let (ps, pt, total) = match Counts::<u128>::compute(g, &none) {
        Some(c) => (
            c.ps.iter().map(PathCount::to_big).collect::<Vec<_>>(),
            c.pt.iter().map(PathCount::to_big).collect::<Vec<_>>(),
            c.total.to_big(),
        ),
        None => {
            let c = Counts::<BigUint>::compute(g, &none).expect("big integers do not overflow");
            (c.ps, c.pt, c.total)
        }
    };

    let by_targets: BigUint = g.targets().map(|t| &ps[t]).sum();
    if by_targets != total {
        return Err(Error::Invariant(format!(
            "path conservation: sources see {total} ST-paths, targets see {by_targets}"
        )));
    }

    let p: Vec<BigUint> = ps.iter().zip(&pt).map(|(a, b)| a * b).collect();
    let loc = (0..g.vertex_count())
        .map(|v| location_from_counts(g.class(v), &ps[v], &pt[v]))
        .collect();
    Ok(PathStats { ps, pt, p, loc, total })
}

fn location_from_counts(class: VertexClass, ps: &BigUint, pt: &BigUint) -> Option<f64> {
    if ps.is_zero() || pt.is_zero() {
        return None;
    }
    match class {
        VertexClass::Isolated => None,
        VertexClass::Source => Some(0.0),
        VertexClass::Target => Some(1.0),
        VertexClass::Intermediate => {
            let up = ps - 1u32;
            let down = pt - 1u32;
            let sum = &up + &down;
            if sum.is_zero() {
                // P_S = P_T = 1: equally far from both ends.
                Some(0.5)
            } else {
                Some(ratio(&up, &sum))
            }
        }
    }
}

/// Location of `v` between the sources (0) and the targets (1). `None` for vertices on
/// no ST-path.
pub fn location(_g: &DependencyNetwork, stats: &PathStats, v: usize) -> Option<f64> {
    stats.location(v)
}

/// Mean number of edges per ST-path, from `sum over edges (u, v) of P_S(u) * P_T(v)`.
pub fn avg_st_path_length(g: &DependencyNetwork, stats: &PathStats) -> Result<f64> {
    stats.require_paths()?;
    let hops: BigUint = g.edges().map(|(u, v)| stats.ps(u) * stats.pt(v)).sum();
    Ok(ratio(&hops, stats.total()))
}

/// `num / den` rounded to the nearest double. The quotient is taken at 64 or more
/// significant bits before rounding, so the result stays accurate far beyond the range
/// where either operand converts to `f64`.
pub fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "ratio with zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    if num == den {
        return 1.0;
    }
    let shift = (den.bits() as i64 - num.bits() as i64 + 64).max(0);
    let quotient = (num << shift as usize) / den;
    let q = quotient.to_f64().unwrap_or(f64::INFINITY);
    scale_pow2(q, -shift)
}

fn scale_pow2(mut x: f64, mut exp: i64) -> f64 {
    while exp < -1000 {
        x *= 2f64.powi(-1000);
        exp += 1000;
    }
    x * 2f64.powi(exp as i32)
}

/// Whether `covered / total` reaches `tau`. Full coverage is tested exactly, so `tau = 1`
/// never stops early on a ratio that merely rounds to one. Otherwise the correctly
/// rounded coverage is compared with `tau`, which makes `0.9` mean nine tenths.
pub(crate) fn reaches_fraction(covered: &BigUint, total: &BigUint, tau: f64) -> bool {
    if covered == total {
        return true;
    }
    if tau >= 1.0 {
        return false;
    }
    ratio(covered, total) >= tau
}
