//! Conversion of a good path list into a similar waterfall list, and the
//! reverse mapping of colorings.
//!
//! The conversion is a sequence of recorded [`Replacement`]s. Each one swaps
//! a color for a fresh one on a contiguous block of vertices. Replaying them
//! backwards with the exchange rules in [`pull_back_coloring`] turns any
//! coloring of the waterfall list into a coloring of the original list.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{
    first_bad_vertex, is_waterfall, Color, ColorSet, Coloring, ListAssignment, Weights,
};

/// Vertices `first..=last` are the occupancy of `color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSpan {
    pub first: usize,
    pub last: usize,
    pub color: Color,
}

/// Spans of every color, ordered by `(first, last)` and then by color.
///
/// Only meaningful once every color occupies consecutive vertices
/// (see [`normalize_runs`]); otherwise `first..=last` is the hull.
pub fn color_spans(lists: &ListAssignment) -> Vec<ColorSpan> {
    let mut spans: Vec<ColorSpan> = lists
        .extents()
        .into_iter()
        .map(|(color, (first, last))| ColorSpan { first, last, color })
        .collect();
    spans.sort_unstable();
    spans
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReplacementKind {
    /// A later run of a color that skipped at least one vertex.
    DetachedRun,
    /// The tail of a color spanning three or more vertices, cut two
    /// vertices after the start of its span.
    SpanTail,
}

/// `fresh` took the place of `original` in lists `first..=last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Replacement {
    pub kind: ReplacementKind,
    pub original: Color,
    pub fresh: Color,
    pub first: usize,
    pub last: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransformReport {
    /// In application order.
    pub replacements: Vec<Replacement>,
    pub fresh_colors: ColorSet,
    /// Number of [`ReplacementKind::SpanTail`] steps.
    pub iterations: usize,
}

impl TransformReport {
    fn record(&mut self, step: Replacement) {
        self.fresh_colors.insert(step.fresh);
        if step.kind == ReplacementKind::SpanTail {
            self.iterations += 1;
        }
        self.replacements.push(step);
    }
}

/// Hands out the smallest positive color not yet in use.
struct FreshColors {
    taken: ColorSet,
    cursor: Color,
}

impl FreshColors {
    fn new(taken: ColorSet) -> Self {
        Self { taken, cursor: 1 }
    }

    fn issue(&mut self) -> Color {
        while self.taken.contains(&self.cursor) {
            self.cursor += 1;
        }
        let y = self.cursor;
        self.taken.insert(y);
        y
    }
}

fn apply(lists: &mut ListAssignment, step: &Replacement) {
    for list in &mut lists.as_mut_slice()[step.first..=step.last] {
        list.remove(&step.original);
        list.insert(step.fresh);
    }
}

fn undo(lists: &mut ListAssignment, step: &Replacement) {
    for list in &mut lists.as_mut_slice()[step.first..=step.last] {
        list.remove(&step.fresh);
        list.insert(step.original);
    }
}

/// Maximal blocks of consecutive vertices whose lists contain `x`.
fn runs_of(lists: &ListAssignment, x: Color) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut open: Option<usize> = None;
    for (v, list) in lists.iter().enumerate() {
        match (list.contains(&x), open) {
            (true, None) => open = Some(v),
            (false, Some(start)) => {
                runs.push((start, v - 1));
                open = None;
            }
            _ => {}
        }
    }
    if let Some(start) = open {
        runs.push((start, lists.len() - 1));
    }
    runs
}

fn normalize_into(
    lists: &mut ListAssignment,
    fresh: &mut FreshColors,
    report: &mut TransformReport,
) {
    for x in lists.colors() {
        for (first, last) in runs_of(lists, x).into_iter().skip(1) {
            let step = Replacement {
                kind: ReplacementKind::DetachedRun,
                original: x,
                fresh: fresh.issue(),
                first,
                last,
            };
            apply(lists, &step);
            report.record(step);
        }
    }
}

/// Gives every run of a color after its first one a fresh color, so that
/// each color ends up on consecutive vertices. List sizes are unchanged.
pub fn normalize_runs(lists: &ListAssignment) -> (ListAssignment, TransformReport) {
    let mut out = lists.clone();
    let mut fresh = FreshColors::new(lists.colors());
    let mut report = TransformReport::default();
    normalize_into(&mut out, &mut fresh, &mut report);
    (out, report)
}

/// Transforms a good list into a similar waterfall list with the same list
/// sizes.
///
/// Colors are processed in span order. While some color spans three or more
/// vertices, the smallest such color keeps its first two vertices and a
/// fresh color replaces it on the rest of its span.
pub fn to_waterfall(
    lists: &ListAssignment,
    weights: &Weights,
) -> Result<(ListAssignment, TransformReport)> {
    if lists.len() != weights.len() {
        return Err(Error::InvalidInput(format!(
            "{} lists for {} weights",
            lists.len(),
            weights.len()
        )));
    }
    if let Some(err) = first_bad_vertex(lists, weights) {
        return Err(err);
    }

    let mut out = lists.clone();
    let mut fresh = FreshColors::new(lists.colors());
    let mut report = TransformReport::default();
    normalize_into(&mut out, &mut fresh, &mut report);

    let mut pending: BTreeSet<ColorSpan> = color_spans(&out)
        .into_iter()
        .filter(|s| s.last >= s.first + 2)
        .collect();
    while let Some(span) = pending.pop_first() {
        let step = Replacement {
            kind: ReplacementKind::SpanTail,
            original: span.color,
            fresh: fresh.issue(),
            first: span.first + 2,
            last: span.last,
        };
        apply(&mut out, &step);
        report.record(step);
        if step.last >= step.first + 2 {
            pending.insert(ColorSpan {
                first: step.first,
                last: step.last,
                color: step.fresh,
            });
        }
    }

    debug_assert!(is_waterfall(&out));
    debug_assert_eq!(out.sizes(), lists.sizes());
    Ok((out, report))
}

/// How one replacement was reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Exchange {
    /// Fresh color renamed back; nothing else moved.
    Rename,
    /// The vertex after the anchor traded the original color for an unused color.
    SwapUnused(Color),
    /// The anchor and the vertex after it traded colors.
    SwapWithAnchor(Color),
}

/// Turns a coloring of the transformed list into a coloring of `original`.
pub fn pull_back_coloring(
    report: &TransformReport,
    coloring: &Coloring,
    original: &ListAssignment,
    weights: &Weights,
) -> Result<Coloring> {
    pull_back_traced(report, coloring, original, weights).map(|(c, _)| c)
}

pub(crate) fn pull_back_traced(
    report: &TransformReport,
    coloring: &Coloring,
    original: &ListAssignment,
    weights: &Weights,
) -> Result<(Coloring, Vec<Exchange>)> {
    let n = original.len();
    if coloring.len() != n || weights.len() != n {
        return Err(Error::InvalidInput(format!(
            "coloring has {} entries, weights {}, lists {n}",
            coloring.len(),
            weights.len()
        )));
    }

    let mut lists = original.clone();
    for step in &report.replacements {
        let well_formed = step.first <= step.last
            && step.last < n
            && (step.first..=step.last).all(|k| lists[k].contains(&step.original))
            && lists.iter().all(|l| !l.contains(&step.fresh));
        if !well_formed {
            return Err(Error::InvalidInput(format!(
                "replacement {step:?} does not apply to the given list"
            )));
        }
        apply(&mut lists, step);
    }
    if !is_path_coloring(&lists, weights, coloring.as_slice()) {
        return Err(Error::InvalidInput(
            "coloring is not valid for the transformed list".into(),
        ));
    }

    let mut c = coloring.clone().into_inner();
    let mut trace = Vec::with_capacity(report.replacements.len());
    for step in report.replacements.iter().rev() {
        let (x, y) = (step.original, step.fresh);
        let exchange = match step.kind {
            ReplacementKind::DetachedRun => Exchange::Rename,
            ReplacementKind::SpanTail => {
                let anchor = step.first - 2;
                let mid = anchor + 1;
                if !c[mid].contains(&x) || !c[step.first].contains(&y) {
                    Exchange::Rename
                } else if let Some(z) = lists[mid].iter().copied().find(|z| {
                    !c[anchor].contains(z) && !c[mid].contains(z) && !c[step.first].contains(z)
                }) {
                    c[mid].remove(&x);
                    c[mid].insert(z);
                    Exchange::SwapUnused(z)
                } else if let Some(z) = c[anchor]
                    .iter()
                    .copied()
                    .find(|z| !c[step.first].contains(z) && lists[mid].contains(z))
                {
                    c[mid].remove(&x);
                    c[mid].insert(z);
                    c[anchor].remove(&z);
                    c[anchor].insert(x);
                    Exchange::SwapWithAnchor(z)
                } else {
                    return Err(Error::InternalInvariant(format!(
                        "no exchange color at vertex {mid} while undoing {step:?}"
                    )));
                }
            }
        };
        for set in &mut c[step.first..=step.last] {
            if set.remove(&y) {
                set.insert(x);
            }
        }
        undo(&mut lists, step);
        trace.push(exchange);
    }

    if !is_path_coloring(original, weights, &c) {
        return Err(Error::InternalInvariant(
            "pulled-back coloring is not valid for the original list".into(),
        ));
    }
    Ok((Coloring::from(c), trace))
}

fn is_path_coloring(lists: &ListAssignment, weights: &Weights, c: &[ColorSet]) -> bool {
    c.iter()
        .zip(lists)
        .zip(weights.as_slice())
        .all(|((set, list), &w)| set.len() == w && set.is_subset(list))
        && c.windows(2).all(|p| p[0].is_disjoint(&p[1]))
}
