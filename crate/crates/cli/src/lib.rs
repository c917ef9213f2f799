//! JSON documents read and written by the `cascade` command.
//!
//! An instance document looks like
//!
//! ```json
//! {"graph":"cycle","weights":[2,2,2,2],"lists":[[1,2,3,4],[1,2,3,4],[3,4,5,6],[1,2,5,6]],
//!  "forced":{"vertex":0,"colors":[1,2]}}
//! ```
//!
//! and a decision document is either `{"colorable":true,"coloring":[[...],...]}`
//! or `{"colorable":false,"certificate":{"i":..,"j":..,"amplitude":..,"demand":..}}`.

#![forbid(unsafe_code)]

use std::collections::BTreeSet;

use cascade::cycles::FreeChoiceInstance;
use cascade::waterfall::{Replacement, ReplacementKind, TransformReport};
use cascade::{
    Certificate, Color, ColorSet, Coloring, Decision, Instance, ListAssignment, Topology, Weights,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] cascade::Error),
}

impl CliError {
    /// 2 for bad input, 3 for a broken internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(cascade::Error::InternalInvariant(_)) => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends the position to its message; keep only the cause.
        let message = match message.rfind(" at line ") {
            Some(cut) => message[..cut].to_string(),
            None => message,
        };
        CliError::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Path,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcedDocument {
    pub vertex: i64,
    pub colors: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub graph: GraphKind,
    pub weights: Vec<i64>,
    pub lists: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forced: Option<ForcedDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedInstance {
    Plain(Instance),
    Forced(FreeChoiceInstance),
}

impl ParsedInstance {
    pub fn instance(&self) -> &Instance {
        match self {
            ParsedInstance::Plain(inst) => inst,
            ParsedInstance::Forced(fi) => fi.cycle(),
        }
    }
}

fn color(x: i64, what: &str) -> Result<Color, CliError> {
    Color::try_from(x).map_err(|_| {
        CliError::Validation(format!(
            "{what}: color {x} is not a non-negative 32-bit integer"
        ))
    })
}

/// Reads an instance document. Duplicate colors inside a list are dropped and
/// reported in the returned warnings.
pub fn parse_instance(text: &str) -> Result<(ParsedInstance, Vec<String>), CliError> {
    let doc: InstanceDocument = serde_json::from_str(text)?;
    let mut warnings = Vec::new();

    if doc.weights.len() != doc.lists.len() {
        return Err(CliError::Validation(format!(
            "{} weights for {} lists",
            doc.weights.len(),
            doc.lists.len()
        )));
    }
    let weights = doc
        .weights
        .iter()
        .enumerate()
        .map(|(v, &w)| {
            usize::try_from(w)
                .map_err(|_| CliError::Validation(format!("weights[{v}]: weight {w} is negative")))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut lists = Vec::with_capacity(doc.lists.len());
    for (v, raw) in doc.lists.iter().enumerate() {
        let mut set = ColorSet::new();
        for &x in raw {
            if !set.insert(color(x, &format!("lists[{v}]"))?) {
                warnings.push(format!(
                    "duplicate color {x} removed from list of vertex {v}"
                ));
            }
        }
        lists.push(set);
    }

    let topology = match doc.graph {
        GraphKind::Path => Topology::Path,
        GraphKind::Cycle => Topology::Cycle,
    };
    let inst = Instance::new(topology, Weights::new(weights), ListAssignment::from(lists))
        .map_err(|e| CliError::Validation(e.to_string()))?;

    let Some(forced) = doc.forced else {
        return Ok((ParsedInstance::Plain(inst), warnings));
    };
    if topology != Topology::Cycle {
        return Err(CliError::Validation(
            "forced colors are only valid for cycles".into(),
        ));
    }
    let vertex = usize::try_from(forced.vertex).map_err(|_| {
        CliError::Validation(format!("forced vertex {} is negative", forced.vertex))
    })?;
    let mut colors = BTreeSet::new();
    for &x in &forced.colors {
        if !colors.insert(color(x, "forced.colors")?) {
            warnings.push(format!("duplicate forced color {x} removed"));
        }
    }
    let fi = FreeChoiceInstance::new(inst, vertex, colors)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok((ParsedInstance::Forced(fi), warnings))
}

fn to_doc_lists(sets: &[ColorSet]) -> Vec<Vec<i64>> {
    sets.iter()
        .map(|s| s.iter().map(|&x| i64::from(x)).collect())
        .collect()
}

pub fn instance_document(parsed: &ParsedInstance) -> InstanceDocument {
    let inst = parsed.instance();
    InstanceDocument {
        graph: match inst.topology() {
            Topology::Path => GraphKind::Path,
            Topology::Cycle => GraphKind::Cycle,
        },
        weights: inst
            .weights()
            .as_slice()
            .iter()
            .map(|&w| w as i64)
            .collect(),
        lists: to_doc_lists(inst.lists().as_slice()),
        forced: match parsed {
            ParsedInstance::Plain(_) => None,
            ParsedInstance::Forced(fi) => Some(ForcedDocument {
                vertex: fi.v0() as i64,
                colors: fi.forced().iter().map(|&x| i64::from(x)).collect(),
            }),
        },
    }
}

pub fn emit_instance(parsed: &ParsedInstance) -> String {
    serde_json::to_string(&instance_document(parsed)).expect("instance documents serialize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub i: usize,
    pub j: usize,
    pub amplitude: usize,
    pub demand: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionDocument {
    pub colorable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<Vec<Color>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDocument>,
}

impl From<&Decision> for DecisionDocument {
    fn from(d: &Decision) -> Self {
        match d {
            Decision::Colorable(c) => DecisionDocument {
                colorable: true,
                coloring: Some(
                    c.as_slice()
                        .iter()
                        .map(|s| s.iter().copied().collect())
                        .collect(),
                ),
                certificate: None,
            },
            Decision::NotColorable(cert) => DecisionDocument {
                colorable: false,
                coloring: None,
                certificate: Some(CertificateDocument {
                    i: cert.i,
                    j: cert.j,
                    amplitude: cert.amplitude_size,
                    demand: cert.demand,
                }),
            },
        }
    }
}

pub fn emit_decision(d: &Decision) -> String {
    serde_json::to_string(&DecisionDocument::from(d)).expect("decision documents serialize")
}

pub fn parse_decision(text: &str) -> Result<Decision, CliError> {
    let doc: DecisionDocument = serde_json::from_str(text)?;
    match (doc.colorable, doc.coloring, doc.certificate) {
        (true, Some(c), None) => Ok(Decision::Colorable(Coloring::new(c))),
        (false, None, Some(cert)) => Ok(Decision::NotColorable(Certificate {
            i: cert.i,
            j: cert.j,
            amplitude_size: cert.amplitude,
            demand: cert.demand,
        })),
        _ => Err(CliError::Validation(
            "a decision has a coloring when colorable and a certificate otherwise".into(),
        )),
    }
}

/// Accepts either a decision document or a bare array of color arrays.
pub fn parse_coloring(text: &str) -> Result<Coloring, CliError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        Bare(Vec<Vec<Color>>),
        Decision(DecisionDocument),
    }
    match serde_json::from_str::<Input>(text)? {
        Input::Bare(c) => Ok(Coloring::new(c)),
        Input::Decision(DecisionDocument {
            coloring: Some(c), ..
        }) => Ok(Coloring::new(c)),
        Input::Decision(_) => Err(CliError::Validation("document carries no coloring".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplacementDocument {
    pub kind: &'static str,
    pub original: Color,
    pub fresh: Color,
    pub first: usize,
    pub last: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub iterations: usize,
    pub fresh_colors: Vec<Color>,
    pub replacements: Vec<ReplacementDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WaterfallDocument {
    pub lists: Vec<Vec<i64>>,
    pub report: ReportDocument,
}

fn replacement_doc(r: &Replacement) -> ReplacementDocument {
    ReplacementDocument {
        kind: match r.kind {
            ReplacementKind::DetachedRun => "detached_run",
            ReplacementKind::SpanTail => "span_tail",
        },
        original: r.original,
        fresh: r.fresh,
        first: r.first,
        last: r.last,
    }
}

pub fn emit_waterfall(lists: &ListAssignment, report: &TransformReport) -> String {
    let doc = WaterfallDocument {
        lists: to_doc_lists(lists.as_slice()),
        report: ReportDocument {
            iterations: report.iterations,
            fresh_colors: report.fresh_colors.iter().copied().collect(),
            replacements: report.replacements.iter().map(replacement_doc).collect(),
        },
    };
    serde_json::to_string(&doc).expect("waterfall documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let (p, warnings) =
            parse_instance(r#"{"graph":"path","weights":[1,1],"lists":[[1,2],[2,3]]}"#).unwrap();
        assert!(warnings.is_empty());
        let inst = p.instance();
        assert_eq!(inst.topology(), Topology::Path);
        assert_eq!(inst.lists(), &ListAssignment::new([vec![1, 2], vec![2, 3]]));
    }

    #[test]
    fn short_cycle_is_rejected() {
        let err =
            parse_instance(r#"{"graph":"cycle","weights":[1,1],"lists":[[1],[2]]}"#).unwrap_err();
        assert!(
            matches!(err, CliError::Validation(ref m) if m.contains("3 vertices")),
            "{err}"
        );
    }

    #[test]
    fn parses_forced_cycle() {
        let text = r#"{"graph":"cycle","weights":[2,2,2,2],"lists":[[1,2,3,4],[1,2,3,4],[3,4,5,6],[1,2,5,6]],"forced":{"vertex":0,"colors":[1,2]}}"#;
        let (p, _) = parse_instance(text).unwrap();
        let expected = cascade::cycles::counterexample_list(4, 2, 4).unwrap();
        assert_eq!(p, ParsedInstance::Forced(expected));
        assert_eq!(emit_instance(&p), text);
    }

    #[test]
    fn duplicates_warn() {
        let (p, warnings) =
            parse_instance(r#"{"graph":"path","weights":[1],"lists":[[2,2,3]]}"#).unwrap();
        assert_eq!(warnings.len(), 1);
        assert_eq!(p.instance().lists()[0], ColorSet::from([2, 3]));
    }

    #[test]
    fn validation_failures() {
        for text in [
            r#"{"graph":"path","weights":[1],"lists":[[-1]]}"#,
            r#"{"graph":"path","weights":[-1],"lists":[[1]]}"#,
            r#"{"graph":"path","weights":[1,1],"lists":[[1]]}"#,
            r#"{"graph":"path","weights":[1],"lists":[[1]],"forced":{"vertex":0,"colors":[1]}}"#,
            r#"{"graph":"cycle","weights":[1,1,1],"lists":[[1],[2],[3]],"forced":{"vertex":0,"colors":[2]}}"#,
            r#"{"graph":"cycle","weights":[1,1,1],"lists":[[1],[2],[3]],"forced":{"vertex":5,"colors":[1]}}"#,
        ] {
            assert!(
                matches!(parse_instance(text), Err(CliError::Validation(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_instance("{\n  \"graph\": \"tree\"}").unwrap_err();
        match err {
            CliError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
        assert!(matches!(
            parse_instance(r#"{"graph":"path"}"#),
            Err(CliError::Parse { .. })
        ));
    }

    #[test]
    fn decision_documents() {
        let ok = Decision::Colorable(Coloring::new([vec![1], vec![2]]));
        assert_eq!(
            emit_decision(&ok),
            r#"{"colorable":true,"coloring":[[1],[2]]}"#
        );
        let no = Decision::NotColorable(Certificate {
            i: 0,
            j: 1,
            amplitude_size: 1,
            demand: 2,
        });
        assert_eq!(
            emit_decision(&no),
            r#"{"colorable":false,"certificate":{"i":0,"j":1,"amplitude":1,"demand":2}}"#
        );
        for d in [ok, no] {
            assert_eq!(parse_decision(&emit_decision(&d)).unwrap(), d);
        }
        assert!(parse_decision(r#"{"colorable":true}"#).is_err());
    }

    #[test]
    fn coloring_inputs() {
        assert_eq!(
            parse_coloring("[[1],[2]]").unwrap(),
            Coloring::new([vec![1], vec![2]])
        );
        assert_eq!(
            parse_coloring(r#"{"colorable":true,"coloring":[[1],[2]]}"#).unwrap(),
            Coloring::new([vec![1], vec![2]])
        );
    }
}
