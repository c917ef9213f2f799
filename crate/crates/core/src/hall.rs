//! Deciding `(L, w)`-colorability of weighted paths through Hall's condition.
//!
//! On a path the condition only needs checking on subpaths. For each subpath
//! `i..=j` and each color `k`, the supply of `k` is the independence number
//! of the vertices in `i..=j` whose lists hold `k`: a union of runs, each
//! contributing `ceil(len / 2)`. Hall's condition asks that total supply
//! reaches total weight on every subpath, and for paths that is also
//! sufficient.
//!
//! For waterfall lists every color's supply is one, so the sum collapses to
//! the amplitude size `|L(i) ∪ ... ∪ L(j)|`.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{
    first_bad_vertex, is_good, waterfall_violation, Certificate, Color, ColorSet, Coloring,
    Decision, ListAssignment, Weights,
};
use crate::waterfall::{pull_back_coloring, to_waterfall};

/// Contribution of one color to the Hall sum of a subpath.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HallSummand {
    pub color: Color,
    pub subpath: (usize, usize),
    pub alpha: usize,
}

/// Independence number of the vertices of `i..=j` whose lists contain `k`.
///
/// Panics if `i..=j` is not a valid interval of `lists`.
pub fn alpha_path(lists: &ListAssignment, i: usize, j: usize, k: Color) -> usize {
    assert!(i <= j && j < lists.len(), "interval {i}..={j} out of range");
    lists.as_slice()[i..=j]
        .iter()
        .map(|l| l.contains(&k))
        .dedup_with_count()
        .filter(|&(_, present)| present)
        .map(|(len, _)| len.div_ceil(2))
        .sum()
}

/// The nonzero summands of the Hall sum over `i..=j`, by color.
pub fn hall_summands(lists: &ListAssignment, i: usize, j: usize) -> Vec<HallSummand> {
    let colors: ColorSet = lists.as_slice()[i..=j].iter().flatten().copied().collect();
    colors
        .into_iter()
        .map(|color| HallSummand {
            color,
            subpath: (i, j),
            alpha: alpha_path(lists, i, j, color),
        })
        .collect()
}

fn check_lengths(lists: &ListAssignment, weights: &Weights) -> Result<()> {
    if lists.is_empty() || lists.len() != weights.len() {
        return Err(Error::InvalidInput(format!(
            "{} lists for {} weights",
            lists.len(),
            weights.len()
        )));
    }
    Ok(())
}

/// Smallest `(i, j)` in lexicographic order violating Hall's condition.
fn first_hall_violation(lists: &ListAssignment, weights: &Weights) -> Option<Certificate> {
    let n = lists.len();
    for i in 0..n {
        // Length of the current run of each color ending at the previous vertex.
        let mut runs: BTreeMap<Color, usize> = BTreeMap::new();
        let mut supply = 0;
        let mut demand = 0;
        for j in i..n {
            let mut next = BTreeMap::new();
            for &k in &lists[j] {
                let run = runs.get(&k).map_or(1, |r| r + 1);
                if run % 2 == 1 {
                    supply += 1;
                }
                next.insert(k, run);
            }
            runs = next;
            demand += weights[j];
            if supply < demand {
                return Some(Certificate {
                    i,
                    j,
                    amplitude_size: supply,
                    demand,
                });
            }
        }
    }
    None
}

/// Decides any path list through Hall's condition on all subpaths.
pub fn hall_check_path(lists: &ListAssignment, weights: &Weights) -> Result<Decision> {
    check_lengths(lists, weights)?;
    match first_hall_violation(lists, weights) {
        Some(cert) => Ok(Decision::NotColorable(cert)),
        None => construct_coloring_general(lists, weights).map(Decision::Colorable),
    }
}

/// `|L(j - 1) ∩ L(j)|` for each `j`, zero at `j = 0`.
fn overlaps(lists: &ListAssignment) -> Vec<usize> {
    std::iter::once(0)
        .chain(
            lists
                .as_slice()
                .windows(2)
                .map(|p| p[0].intersection(&p[1]).count()),
        )
        .collect()
}

/// Decides a waterfall list by comparing amplitude sizes to demands on all
/// intervals.
pub fn decide_waterfall(lists: &ListAssignment, weights: &Weights) -> Result<Decision> {
    check_lengths(lists, weights)?;
    if let Some(err) = waterfall_violation(lists) {
        return Err(err);
    }
    let n = lists.len();
    let overlap = overlaps(lists);
    for i in 0..n {
        let mut size = 0;
        let mut demand = 0;
        for j in i..n {
            size += lists[j].len();
            if j > i {
                size -= overlap[j];
            }
            demand += weights[j];
            if size < demand {
                return Ok(Decision::NotColorable(Certificate {
                    i,
                    j,
                    amplitude_size: size,
                    demand,
                }));
            }
        }
    }
    construct_coloring_waterfall(lists, weights).map(Decision::Colorable)
}

/// Decides a good waterfall list from prefix intervals `0..=j` alone.
///
/// Requires the list to be waterfall and good, and the last list to cover
/// the last weight.
pub fn decide_waterfall_prefix(lists: &ListAssignment, weights: &Weights) -> Result<Decision> {
    check_lengths(lists, weights)?;
    if let Some(err) = waterfall_violation(lists) {
        return Err(Error::PreconditionFailed(format!(
            "not a waterfall list ({err})"
        )));
    }
    if let Some(err) = first_bad_vertex(lists, weights) {
        return Err(Error::PreconditionFailed(format!(
            "not a good list ({err})"
        )));
    }
    let n = lists.len() - 1;
    if lists[n].len() < weights[n] {
        return Err(Error::PreconditionFailed(format!(
            "last list has {} colors for weight {}",
            lists[n].len(),
            weights[n]
        )));
    }
    let overlap = overlaps(lists);
    let mut size = 0;
    let mut demand = 0;
    for j in 0..=n {
        size += lists[j].len() - overlap[j];
        demand += weights[j];
        if size < demand {
            return Ok(Decision::NotColorable(Certificate {
                i: 0,
                j,
                amplitude_size: size,
                demand,
            }));
        }
    }
    construct_coloring_waterfall(lists, weights).map(Decision::Colorable)
}

/// Left-to-right depth-first search. At each vertex the candidates avoid the
/// previous vertex's colors and prefer colors absent from the next list,
/// smallest first. The first branch explored is the greedy choice.
fn backtrack(lists: &[ColorSet], weights: &[usize]) -> Option<Vec<ColorSet>> {
    fn extend(lists: &[ColorSet], weights: &[usize], chosen: &mut Vec<ColorSet>) -> bool {
        let v = chosen.len();
        if v == lists.len() {
            return true;
        }
        let prev = v.checked_sub(1).map(|u| &chosen[u]);
        let mut available: Vec<Color> = lists[v]
            .iter()
            .copied()
            .filter(|x| prev.is_none_or(|p| !p.contains(x)))
            .collect();
        if available.len() < weights[v] {
            return false;
        }
        if let Some(next) = lists.get(v + 1) {
            available.sort_by_key(|x| (next.contains(x), *x));
        }
        for pick in available.into_iter().combinations(weights[v]) {
            chosen.push(pick.into_iter().collect());
            if extend(lists, weights, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::with_capacity(lists.len());
    extend(lists, weights, &mut chosen).then_some(chosen)
}

/// Builds a coloring of a colorable waterfall list.
pub fn construct_coloring_waterfall(lists: &ListAssignment, weights: &Weights) -> Result<Coloring> {
    check_lengths(lists, weights)?;
    if let Some(err) = waterfall_violation(lists) {
        return Err(err);
    }
    backtrack(lists.as_slice(), weights.as_slice())
        .map(Coloring::from)
        .ok_or_else(|| {
            Error::InternalInvariant(
                "no coloring found for a waterfall list assumed colorable".into(),
            )
        })
}

/// Builds a coloring of any path list satisfying Hall's condition.
///
/// Good lists go through the waterfall transform and back; others are
/// searched directly.
pub fn construct_coloring_general(lists: &ListAssignment, weights: &Weights) -> Result<Coloring> {
    check_lengths(lists, weights)?;
    if is_good(lists, weights) {
        let (cascade, report) = to_waterfall(lists, weights)?;
        let c = match construct_coloring_waterfall(&cascade, weights) {
            Ok(c) => c,
            Err(Error::InternalInvariant(_)) => {
                return Err(Error::InternalInvariant(
                    "waterfall list of a Hall-feasible list is not colorable".into(),
                ))
            }
            Err(e) => return Err(e),
        };
        return pull_back_coloring(&report, &c, lists, weights);
    }
    backtrack(lists.as_slice(), weights.as_slice())
        .map(Coloring::from)
        .ok_or_else(|| {
            Error::InternalInvariant("no coloring found for a Hall-feasible list".into())
        })
}
