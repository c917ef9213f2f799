//! Exhaustive reference solver for small paths and cycles.
//!
//! Vertices are assigned in index order; the candidates at each vertex are
//! the `w(v)`-subsets of `L(v)` minus the previous vertex's colors, in
//! lexicographic order. The first complete assignment found is therefore the
//! lexicographically first coloring.

use itertools::Itertools;

use crate::cycles::FreeChoiceInstance;
use crate::error::{Error, Result};
use crate::model::{Certificate, Color, ColorSet, Coloring, Decision, Instance, Topology};

/// Cap on the number of candidate subsets tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl SearchBudget {
    pub const DEFAULT_NODES: u64 = 10_000_000;

    pub fn new(max_nodes: u64) -> Result<Self> {
        if max_nodes == 0 {
            return Err(Error::InvalidInput("search budget must be positive".into()));
        }
        Ok(Self { max_nodes })
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: Self::DEFAULT_NODES,
        }
    }
}

struct Search<'a> {
    inst: &'a Instance,
    pinned: Option<(usize, &'a ColorSet)>,
    budget: u64,
    visited: u64,
    chosen: Vec<ColorSet>,
}

impl Search<'_> {
    fn run(&mut self) -> Result<bool> {
        let v = self.chosen.len();
        let n = self.inst.n_vertices();
        if v == n {
            return Ok(true);
        }
        let closes_cycle = self.inst.topology() == Topology::Cycle && v == n - 1;
        let clashes = |x: &Color, chosen: &[ColorSet]| {
            (v > 0 && chosen[v - 1].contains(x)) || (closes_cycle && chosen[0].contains(x))
        };

        let w = self.inst.weights()[v];
        let candidates: Vec<Vec<Color>> = match self.pinned {
            Some((p, forced)) if p == v => {
                let fits = forced.len() == w
                    && forced.is_subset(&self.inst.lists()[v])
                    && !forced.iter().any(|x| clashes(x, &self.chosen));
                if fits {
                    vec![forced.iter().copied().collect()]
                } else {
                    Vec::new()
                }
            }
            _ => {
                let available: Vec<Color> = self.inst.lists()[v]
                    .iter()
                    .filter(|x| !clashes(x, &self.chosen))
                    .copied()
                    .collect();
                if available.len() < w {
                    Vec::new()
                } else {
                    available.into_iter().combinations(w).collect()
                }
            }
        };

        for pick in candidates {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::BudgetExceeded {
                    limit: self.budget,
                    visited: self.visited,
                });
            }
            self.chosen.push(pick.into_iter().collect());
            if self.run()? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

fn search(
    inst: &Instance,
    pinned: Option<(usize, &ColorSet)>,
    budget: SearchBudget,
) -> Result<Decision> {
    let mut s = Search {
        inst,
        pinned,
        budget: budget.max_nodes,
        visited: 0,
        chosen: Vec::with_capacity(inst.n_vertices()),
    };
    if s.run()? {
        return Ok(Decision::Colorable(Coloring::from(s.chosen)));
    }
    let n = inst.n_vertices();
    Ok(Decision::NotColorable(Certificate {
        i: 0,
        j: n - 1,
        amplitude_size: inst.lists().colors().len(),
        demand: inst.weights().demand(0, n - 1),
    }))
}

/// Decides `inst` by exhaustive search.
///
/// A negative answer carries the summary `(0, n - 1, |A(0, n - 1)|, Σw)`.
pub fn brute_force(inst: &Instance, budget: SearchBudget) -> Result<Decision> {
    search(inst, None, budget)
}

/// As [`brute_force`], with the colors of `fi.v0()` fixed to the forced set.
pub fn brute_force_forced(fi: &FreeChoiceInstance, budget: SearchBudget) -> Result<Decision> {
    search(fi.cycle(), Some((fi.v0(), fi.forced())), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::counterexample_list;

    #[test]
    fn two_vertices_one_color() {
        let inst = Instance::path(vec![1, 1], vec![vec![1], vec![1]]).unwrap();
        assert!(!brute_force(&inst, SearchBudget::default())
            .unwrap()
            .is_colorable());
    }

    #[test]
    fn odd_cycle_needs_three_colors() {
        let inst = Instance::cycle(vec![1; 3], vec![vec![1, 2]; 3]).unwrap();
        let d = brute_force(&inst, SearchBudget::default()).unwrap();
        assert_eq!(
            d,
            Decision::NotColorable(Certificate {
                i: 0,
                j: 2,
                amplitude_size: 2,
                demand: 3
            })
        );
    }

    #[test]
    fn first_solution_is_lexicographic() {
        let inst =
            Instance::path(vec![1, 2, 1], vec![vec![1, 2], vec![2, 3, 4], vec![4, 5]]).unwrap();
        assert_eq!(
            brute_force(&inst, SearchBudget::default()).unwrap(),
            Decision::Colorable(Coloring::new([vec![1], vec![2, 3], vec![4]]))
        );
    }

    #[test]
    fn forced_vertex_is_respected() {
        let cycle = Instance::cycle(vec![1; 3], vec![vec![1, 2, 3]; 3]).unwrap();
        let fi = FreeChoiceInstance::new(cycle, 1, ColorSet::from([1])).unwrap();
        let d = brute_force_forced(&fi, SearchBudget::default()).unwrap();
        assert_eq!(
            d,
            Decision::Colorable(Coloring::new([vec![2], vec![1], vec![3]]))
        );

        let cycle = Instance::cycle(vec![2; 4], vec![(1..=5).collect::<Vec<_>>(); 4]).unwrap();
        let fi = FreeChoiceInstance::new(cycle, 0, ColorSet::from([1, 2])).unwrap();
        assert!(brute_force_forced(&fi, SearchBudget::default())
            .unwrap()
            .is_colorable());
    }

    #[test]
    fn counterexample_has_no_extension() {
        let fi = counterexample_list(4, 2, 4).unwrap();
        let budget = SearchBudget::new(1_000).unwrap();
        assert!(!brute_force_forced(&fi, budget).unwrap().is_colorable());
    }

    #[test]
    fn budget_is_enforced() {
        let inst = Instance::path(vec![1; 6], vec![vec![1, 2]; 6]).unwrap();
        assert!(brute_force(&inst, SearchBudget::new(6).unwrap())
            .unwrap()
            .is_colorable());
        let mut lists = vec![vec![1, 2, 3]; 11];
        lists.push(vec![]);
        let inst = Instance::path(vec![1; 12], lists).unwrap();
        assert!(matches!(
            brute_force(&inst, SearchBudget::new(20).unwrap()),
            Err(Error::BudgetExceeded { limit: 20, .. })
        ));
        assert!(SearchBudget::new(0).is_err());
    }
}
