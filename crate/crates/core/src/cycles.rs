//! Free-choosability of cycles.
//!
//! A cycle `C_n` is `(a, b)`-free-choosable exactly when
//! `a / b >= 2 + 1 / floor(n / 2)`. Positive instances are solved by cutting
//! the cycle open at the precolored vertex, which yields a path whose two
//! endpoints both carry the forced set. For even `n` and ratios below the
//! threshold, [`counterexample_list`] builds a list that cannot be completed.
//!
//! All threshold comparisons are done with integers.

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hall::hall_check_path;
use crate::model::{
    Certificate, Color, ColorSet, Coloring, Decision, Instance, ListAssignment, Rational, Topology,
    Weights,
};

/// Lists of size `a` on every vertex with demand `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChoiceParameters {
    a: u64,
    b: u64,
}

impl ChoiceParameters {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidInput(format!(
                "a and b must be positive, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `a - 2b`, possibly negative.
    pub fn e(&self) -> i64 {
        self.a as i64 - 2 * self.b as i64
    }
}

/// A cycle with the colors of vertex `v0` fixed in advance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeChoiceInstance {
    cycle: Instance,
    v0: usize,
    forced: ColorSet,
}

impl FreeChoiceInstance {
    pub fn new(cycle: Instance, v0: usize, forced: ColorSet) -> Result<Self> {
        if cycle.topology() != Topology::Cycle {
            return Err(Error::InvalidInput("forced colors need a cycle".into()));
        }
        if v0 >= cycle.n_vertices() {
            return Err(Error::InvalidInput(format!(
                "forced vertex {v0} outside 0..{}",
                cycle.n_vertices()
            )));
        }
        if forced.len() != cycle.weights()[v0] {
            return Err(Error::InvalidInput(format!(
                "{} forced colors for weight {} at vertex {v0}",
                forced.len(),
                cycle.weights()[v0]
            )));
        }
        if !forced.is_subset(&cycle.lists()[v0]) {
            return Err(Error::InvalidInput(format!(
                "forced colors are not all in the list of vertex {v0}"
            )));
        }
        Ok(Self { cycle, v0, forced })
    }

    pub fn cycle(&self) -> &Instance {
        &self.cycle
    }

    pub fn v0(&self) -> usize {
        self.v0
    }

    pub fn forced(&self) -> &ColorSet {
        &self.forced
    }
}

/// Smallest even integer at least `x`.
pub fn even_ceil(x: Rational) -> Result<u64> {
    if x < Rational::zero() {
        return Err(Error::InvalidInput(format!("negative argument {x}")));
    }
    let up = x.ceil().to_integer() as u64;
    Ok(up + up % 2)
}

/// Whether `n` reaches `Even(2b / e)`, the length from which every path list
/// with endpoint lists of size `b` and interior lists of size `a` is
/// `(L, b)`-colorable.
pub fn endpoint_threshold(params: ChoiceParameters, n: u64) -> Result<bool> {
    let e = params.e();
    if e <= 0 {
        return Err(Error::NonPositive(e));
    }
    let bound = even_ceil(Rational::new(2 * params.b as i64, e))?;
    Ok(n >= bound)
}

/// Free-choice ratio of `C_n`: `2 + 1 / floor(n / 2)`.
pub fn fchr(n: u64) -> Result<Rational> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "a cycle needs n >= 3, got {n}"
        )));
    }
    Ok(Rational::from_integer(2) + Rational::new(1, (n / 2) as i64))
}

/// `a / b >= fchr(n)`, decided as `floor(n / 2) (a - 2b) >= b`.
pub fn is_free_choosable(a: u64, b: u64, n: u64) -> bool {
    let half = (n / 2) as i128;
    half * (a as i128 - 2 * b as i128) >= b as i128
}

/// Cuts the cycle open at `v0`.
///
/// Vertex `i` of the path is vertex `v0 + i (mod n)` of the cycle, and path
/// vertex `n` is a second copy of `v0`. Both copies get the forced set as
/// their list.
pub fn cycle_to_path(fi: &FreeChoiceInstance) -> Instance {
    let cycle = fi.cycle();
    let n = cycle.n_vertices();
    let at = |i: usize| (fi.v0 + i) % n;
    let lists: Vec<ColorSet> = std::iter::once(fi.forced.clone())
        .chain((1..n).map(|i| cycle.lists()[at(i)].clone()))
        .chain(std::iter::once(fi.forced.clone()))
        .collect();
    let weights: Vec<usize> = (0..=n).map(|i| cycle.weights()[at(i)]).collect();
    Instance::path(weights, lists).expect("cut cycle is a valid path")
}

/// Completes the forced precoloring to a coloring of the cycle, or returns
/// the violated interval of the cut-open path.
pub fn solve_free_choice(fi: &FreeChoiceInstance) -> Result<Decision> {
    let path = cycle_to_path(fi);
    let n = fi.cycle().n_vertices();
    match hall_check_path(path.lists(), path.weights())? {
        Decision::NotColorable(cert) => Ok(Decision::NotColorable(cert)),
        Decision::Colorable(c) => {
            let c = c.into_inner();
            let mut sets = vec![ColorSet::new(); n];
            for (i, set) in c.into_iter().take(n).enumerate() {
                sets[(fi.v0 + i) % n] = set;
            }
            Ok(Decision::Colorable(Coloring::from(sets)))
        }
    }
}

/// Decides an unforced cycle by trying every admissible color set on
/// vertex 0.
///
/// A negative answer carries the whole-cycle summary `(0, n - 1, |A|, Σw)`,
/// which records the outcome but is not itself a Hall violation.
pub fn decide_cycle(cycle: &Instance) -> Result<Decision> {
    if cycle.topology() != Topology::Cycle {
        return Err(Error::InvalidInput("expected a cycle".into()));
    }
    let w0 = cycle.weights()[0];
    for forced in cycle.lists()[0].iter().copied().combinations(w0) {
        let fi = FreeChoiceInstance::new(cycle.clone(), 0, forced.into_iter().collect())?;
        if let d @ Decision::Colorable(_) = solve_free_choice(&fi)? {
            return Ok(d);
        }
    }
    let n = cycle.n_vertices();
    Ok(Decision::NotColorable(Certificate {
        i: 0,
        j: n - 1,
        amplitude_size: cycle.lists().colors().len(),
        demand: cycle.weights().demand(0, n - 1),
    }))
}

/// The extremal list showing that `C_n`, `n` even, is not `(a, b)`-free-choosable
/// when `a / b < fchr(n)`. Vertex 0 is forced to `{1, ..., b}`.
///
/// Needs `a >= b` so that the forced set fits in a list of size `a`.
pub fn counterexample_list(a: u64, b: u64, n: u64) -> Result<FreeChoiceInstance> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::PreconditionFailed(format!(
            "counterexamples are built for even n >= 4, got {n}"
        )));
    }
    if a == 0 || b == 0 || a < b {
        return Err(Error::PreconditionFailed(format!(
            "need 1 <= b <= a, got a = {a}, b = {b}"
        )));
    }
    if is_free_choosable(a, b, n) {
        return Err(Error::PreconditionFailed(format!(
            "{a}/{b} is not below fchr({n}) = {}",
            fchr(n)?
        )));
    }

    let block = |lo: u64, hi: u64| (lo..=hi).map(|x| x as Color);
    let lists: Vec<ColorSet> = (0..n)
        .map(|i| match i {
            0 | 1 => block(1, a).collect(),
            _ if i == n - 1 => {
                let m = (n - 4) / 2 + 1;
                block(1, b)
                    .chain(block(1 + m * a, (m + 1) * a - b))
                    .collect()
            }
            _ if i % 2 == 1 => {
                let m = (i - 1) / 2;
                block(1 + m * a, (m + 1) * a).collect()
            }
            _ => {
                let m = (i - 2) / 2;
                block(b + 1 + m * a, b + (m + 1) * a).collect()
            }
        })
        .collect();
    debug_assert!(lists.iter().all(|l| l.len() as u64 == a));

    let cycle = Instance::cycle(
        Weights::uniform(n as usize, b as usize),
        ListAssignment::from(lists),
    )?;
    FreeChoiceInstance::new(cycle, 0, block(1, b).collect())
}
