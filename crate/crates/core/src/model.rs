//! Instances, list assignments and colorings of weighted paths and cycles.
//!
//! A path with `n + 1` vertices is indexed `0..=n` with edges between
//! consecutive indices. A cycle on `n` vertices adds the wrap edge `(n - 1, 0)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Colors are opaque labels.
pub type Color = u32;

pub type ColorSet = BTreeSet<Color>;

/// Exact fraction, always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::Ratio<i64>;

/// One finite color set per vertex. Duplicates collapse on construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ListAssignment(Vec<ColorSet>);

impl ListAssignment {
    pub fn new<I, J>(lists: I) -> Self
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = Color>,
    {
        Self(lists.into_iter().map(|l| l.into_iter().collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ColorSet> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[ColorSet] {
        &self.0
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [ColorSet] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<ColorSet> {
        self.0
    }

    /// Every color used anywhere in the assignment.
    pub fn colors(&self) -> ColorSet {
        self.0.iter().flatten().copied().collect()
    }

    /// The list sizes, vertex by vertex.
    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(BTreeSet::len).collect()
    }

    /// For every color, the smallest and largest vertex whose list holds it.
    pub(crate) fn extents(&self) -> BTreeMap<Color, (usize, usize)> {
        let mut out = BTreeMap::new();
        for (v, list) in self.0.iter().enumerate() {
            for &x in list {
                out.entry(x)
                    .and_modify(|e: &mut (usize, usize)| e.1 = v)
                    .or_insert((v, v));
            }
        }
        out
    }
}

impl Index<usize> for ListAssignment {
    type Output = ColorSet;

    fn index(&self, v: usize) -> &ColorSet {
        &self.0[v]
    }
}

impl From<Vec<ColorSet>> for ListAssignment {
    fn from(lists: Vec<ColorSet>) -> Self {
        Self(lists)
    }
}

impl From<Vec<Vec<Color>>> for ListAssignment {
    fn from(lists: Vec<Vec<Color>>) -> Self {
        Self::new(lists)
    }
}

impl<'a> IntoIterator for &'a ListAssignment {
    type Item = &'a ColorSet;
    type IntoIter = std::slice::Iter<'a, ColorSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Number of colors each vertex must receive. Zero is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Weights(Vec<usize>);

impl Weights {
    pub fn new(w: Vec<usize>) -> Self {
        Self(w)
    }

    pub fn uniform(vertices: usize, w: usize) -> Self {
        Self(vec![w; vertices])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Total demand of the vertices `i..=j`.
    pub fn demand(&self, i: usize, j: usize) -> usize {
        self.0[i..=j].iter().sum()
    }
}

impl Index<usize> for Weights {
    type Output = usize;

    fn index(&self, v: usize) -> &usize {
        &self.0[v]
    }
}

impl From<Vec<usize>> for Weights {
    fn from(w: Vec<usize>) -> Self {
        Self(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    Path,
    Cycle,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::Path => f.write_str("path"),
            Topology::Cycle => f.write_str("cycle"),
        }
    }
}

/// A weighted path or cycle together with its list assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    topology: Topology,
    weights: Weights,
    lists: ListAssignment,
}

impl Instance {
    pub fn new(topology: Topology, weights: Weights, lists: ListAssignment) -> Result<Self> {
        if weights.len() != lists.len() {
            return Err(Error::InvalidInput(format!(
                "{} weights for {} lists",
                weights.len(),
                lists.len()
            )));
        }
        let min = match topology {
            Topology::Path => 1,
            Topology::Cycle => 3,
        };
        if lists.len() < min {
            return Err(Error::InvalidInput(format!(
                "a {topology} needs at least {min} vertices, got {}",
                lists.len()
            )));
        }
        Ok(Self {
            topology,
            weights,
            lists,
        })
    }

    pub fn path(weights: impl Into<Weights>, lists: impl Into<ListAssignment>) -> Result<Self> {
        Self::new(Topology::Path, weights.into(), lists.into())
    }

    pub fn cycle(weights: impl Into<Weights>, lists: impl Into<ListAssignment>) -> Result<Self> {
        Self::new(Topology::Cycle, weights.into(), lists.into())
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn n_vertices(&self) -> usize {
        self.lists.len()
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn lists(&self) -> &ListAssignment {
        &self.lists
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n_vertices();
        let wrap = (self.topology == Topology::Cycle).then_some((n - 1, 0));
        (0..n - 1).map(|k| (k, k + 1)).chain(wrap)
    }
}

/// One color set per vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<ColorSet>);

impl Coloring {
    pub fn new<I, J>(sets: I) -> Self
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = Color>,
    {
        Self(sets.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[ColorSet] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<ColorSet> {
        self.0
    }
}

impl Index<usize> for Coloring {
    type Output = ColorSet;

    fn index(&self, v: usize) -> &ColorSet {
        &self.0[v]
    }
}

impl From<Vec<ColorSet>> for Coloring {
    fn from(sets: Vec<ColorSet>) -> Self {
        Self(sets)
    }
}

impl From<Vec<Vec<Color>>> for Coloring {
    fn from(sets: Vec<Vec<Color>>) -> Self {
        Self::new(sets)
    }
}

/// An interval `i..=j` whose available supply falls short of its demand.
///
/// Hall-based deciders put the Hall sum (the amplitude size, for waterfall
/// lists) in `amplitude_size`; such certificates always satisfy
/// [`Certificate::is_violation`]. The exhaustive oracle only reports a
/// summary over the whole instance, which need not be a violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub i: usize,
    pub j: usize,
    pub amplitude_size: usize,
    pub demand: usize,
}

impl Certificate {
    pub fn is_violation(&self) -> bool {
        self.amplitude_size < self.demand
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Decision {
    Colorable(Coloring),
    NotColorable(Certificate),
}

impl Decision {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Decision::Colorable(_))
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Decision::Colorable(c) => Some(c),
            Decision::NotColorable(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Decision::Colorable(_) => None,
            Decision::NotColorable(cert) => Some(cert),
        }
    }
}

/// Checks that `c` is an `(L, w)`-coloring of `inst`.
pub fn validate_coloring(inst: &Instance, c: &Coloring) -> Result<bool> {
    if c.len() != inst.n_vertices() {
        return Err(Error::InvalidInput(format!(
            "coloring has {} entries for {} vertices",
            c.len(),
            inst.n_vertices()
        )));
    }
    let fits = c
        .as_slice()
        .iter()
        .zip(inst.lists())
        .zip(inst.weights().as_slice())
        .all(|((set, list), &w)| set.len() == w && set.is_subset(list));
    Ok(fits && inst.edges().all(|(u, v)| c[u].is_disjoint(&c[v])))
}

/// The union of `L(i), ..., L(j)`.
pub fn amplitude(lists: &ListAssignment, i: usize, j: usize) -> Result<ColorSet> {
    if i > j || j >= lists.len() {
        return Err(Error::InvalidInput(format!(
            "interval {i}..={j} outside 0..{}",
            lists.len()
        )));
    }
    Ok(lists.as_slice()[i..=j].iter().flatten().copied().collect())
}

/// `|L(i)| >= w(i) + w(i + 1)` at every interior vertex of the path.
///
/// Panics if the two sequences have different lengths.
pub fn is_good(lists: &ListAssignment, weights: &Weights) -> bool {
    first_bad_vertex(lists, weights).is_none()
}

pub(crate) fn first_bad_vertex(lists: &ListAssignment, weights: &Weights) -> Option<Error> {
    assert_eq!(
        lists.len(),
        weights.len(),
        "lists and weights differ in length"
    );
    let n = lists.len();
    (1..n.saturating_sub(1)).find_map(|i| {
        let required = weights[i] + weights[i + 1];
        let size = lists[i].len();
        (size < required).then_some(Error::NotGood {
            vertex: i,
            size,
            required,
        })
    })
}

/// Lists of vertices at distance two or more are disjoint.
pub fn is_waterfall(lists: &ListAssignment) -> bool {
    waterfall_violation(lists).is_none()
}

pub(crate) fn waterfall_violation(lists: &ListAssignment) -> Option<Error> {
    lists
        .extents()
        .into_iter()
        .find(|&(_, (first, last))| last >= first + 2)
        .map(|(color, (first, second))| Error::NotWaterfall {
            color,
            first,
            second,
        })
}
