//! Text and JSON renderings shared by the CLI and the examples.
//!
//! JSON documents always come out with sorted keys and two-space
//! indentation, so parsing one back and re-rendering it is byte-identical.

use serde::{Deserialize, Serialize};

use crate::depminer::{Dependency, DependencySet};
use crate::impact::{DeltaImpactReport, ImpactSet, Presence};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DependencyDoc {
    pub source: String,
    pub kind: String,
    pub target: String,
}

impl From<&Dependency> for DependencyDoc {
    fn from(d: &Dependency) -> Self {
        DependencyDoc {
            source: d.source().to_string(),
            kind: d.kind().as_str().to_string(),
            target: d.target().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DependenciesDoc {
    pub dependencies: Vec<DependencyDoc>,
}

impl From<&DependencySet> for DependenciesDoc {
    fn from(set: &DependencySet) -> Self {
        DependenciesDoc {
            dependencies: set.iter().map(DependencyDoc::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImpactEntryDoc {
    pub polarity: PolarityDoc,
    pub source: String,
    pub kind: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImpactDoc {
    pub entries: Vec<ImpactEntryDoc>,
}

impl From<&ImpactSet> for ImpactDoc {
    fn from(set: &ImpactSet) -> Self {
        ImpactDoc {
            entries: set
                .iter()
                .map(|e| {
                    let d = DependencyDoc::from(&e.dependency);
                    ImpactEntryDoc {
                        polarity: e.polarity.into(),
                        source: d.source,
                        kind: d.kind,
                        target: d.target,
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarityDoc {
    Added,
    Removed,
}

impl From<crate::impact::Polarity> for PolarityDoc {
    fn from(p: crate::impact::Polarity) -> Self {
        match p {
            crate::impact::Polarity::Added => PolarityDoc::Added,
            crate::impact::Polarity::Removed => PolarityDoc::Removed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresenceDoc {
    Missing,
    Extra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictDoc {
    Clean,
    Suspect,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEntryDoc {
    pub presence: PresenceDoc,
    pub polarity: PolarityDoc,
    pub source: String,
    pub kind: String,
    pub target: String,
}

/// `{"verdict", "origin", "dest", "entries": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub verdict: VerdictDoc,
    pub origin: String,
    pub dest: String,
    pub entries: Vec<ReportEntryDoc>,
}

impl From<&DeltaImpactReport> for ReportDoc {
    fn from(r: &DeltaImpactReport) -> Self {
        ReportDoc {
            verdict: if r.is_clean() {
                VerdictDoc::Clean
            } else {
                VerdictDoc::Suspect
            },
            origin: r.origin_label.clone(),
            dest: r.dest_label.clone(),
            entries: r
                .entries()
                .iter()
                .map(|e| {
                    let d = DependencyDoc::from(&e.entry.dependency);
                    ReportEntryDoc {
                        presence: match e.presence {
                            Presence::MissingInDestination => PresenceDoc::Missing,
                            Presence::ExtraInDestination => PresenceDoc::Extra,
                        },
                        polarity: e.entry.polarity.into(),
                        source: d.source,
                        kind: d.kind,
                        target: d.target,
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct BisectDoc {
    pub first_conflict: Option<usize>,
    pub report: Option<ReportDoc>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("document serializes");
    let mut s = serde_json::to_string_pretty(&value).expect("json value");
    s.push('\n');
    s
}

pub fn from_json<'de, T: Deserialize<'de>>(text: &'de str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}

fn paint(text: &str, ansi: &str, color: bool) -> String {
    if color {
        format!("\x1b[{ansi}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

pub fn dependencies_text(set: &DependencySet) -> String {
    set.iter().map(|d| format!("{d}\n")).collect()
}

pub fn impact_text(set: &ImpactSet) -> String {
    set.iter().map(|e| format!("{e}\n")).collect()
}

/// Header lines, then one line per entry:
/// `MISSING in dest: + Log>>logAll/1 -[message-send]-> FilteredLog>>log/1`.
pub fn report_text(r: &DeltaImpactReport, color: bool) -> String {
    let mut out = String::new();
    let verdict = r.verdict().as_str();
    let verdict = if r.is_clean() {
        paint(verdict, "32", color)
    } else {
        paint(verdict, "1;31", color)
    };
    out.push_str(&format!("verdict: {verdict}\n"));
    out.push_str(&format!("origin: {}\n", r.origin_label));
    out.push_str(&format!("dest: {}\n", r.dest_label));
    for e in r.entries() {
        let tag = match e.presence {
            Presence::MissingInDestination => paint("MISSING in dest:", "31", color),
            Presence::ExtraInDestination => paint("EXTRA in dest:", "33", color),
        };
        out.push_str(&format!("{tag} {}\n", e.entry));
    }
    out
}

pub fn bisect_text(found: Option<&(usize, DeltaImpactReport)>, color: bool) -> String {
    match found {
        Some((i, report)) => format!("first-conflict: {i}\n{}", report_text(report, color)),
        None => "first-conflict: none\n".to_string(),
    }
}
