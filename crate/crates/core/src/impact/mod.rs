//! Impact of a delta on a codebase, delta-impact across two branches, and
//! the first conflicting snapshot in a history.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::delta::{apply, ApplyConflict, Delta};
use crate::depminer::{mine, DepError, Dependency};
use crate::lang::{Codebase, Diagnostic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Added,
    Removed,
}

impl Polarity {
    pub fn sign(self) -> char {
        match self {
            Polarity::Added => '+',
            Polarity::Removed => '-',
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Added => "added",
            Polarity::Removed => "removed",
        }
    }
}

/// A dependency the delta introduces into, or removes from, a codebase.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ImpactEntry {
    pub polarity: Polarity,
    pub dependency: Dependency,
}

impl ImpactEntry {
    pub fn added(dependency: Dependency) -> Self {
        ImpactEntry {
            polarity: Polarity::Added,
            dependency,
        }
    }

    pub fn removed(dependency: Dependency) -> Self {
        ImpactEntry {
            polarity: Polarity::Removed,
            dependency,
        }
    }
}

impl fmt::Display for ImpactEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.polarity.sign(), self.dependency)
    }
}

/// I(Δ, C), canonically ordered.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ImpactSet(BTreeSet<ImpactEntry>);

impl ImpactSet {
    pub fn iter(&self) -> impl Iterator<Item = &ImpactEntry> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, entry: &ImpactEntry) -> bool {
        self.0.contains(entry)
    }

    pub fn added(&self) -> impl Iterator<Item = &Dependency> {
        self.0
            .iter()
            .filter(|e| e.polarity == Polarity::Added)
            .map(|e| &e.dependency)
    }

    pub fn removed(&self) -> impl Iterator<Item = &Dependency> {
        self.0
            .iter()
            .filter(|e| e.polarity == Polarity::Removed)
            .map(|e| &e.dependency)
    }

    pub fn as_set(&self) -> &BTreeSet<ImpactEntry> {
        &self.0
    }
}

impl FromIterator<ImpactEntry> for ImpactSet {
    fn from_iter<I: IntoIterator<Item = ImpactEntry>>(iter: I) -> Self {
        ImpactSet(iter.into_iter().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Presence {
    /// In the origin impact, not in the destination one.
    MissingInDestination,
    /// In the destination impact, not in the origin one.
    ExtraInDestination,
}

impl Presence {
    pub fn as_str(self) -> &'static str {
        match self {
            Presence::MissingInDestination => "missing",
            Presence::ExtraInDestination => "extra",
        }
    }

    pub fn swapped(self) -> Presence {
        match self {
            Presence::MissingInDestination => Presence::ExtraInDestination,
            Presence::ExtraInDestination => Presence::MissingInDestination,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaImpactEntry {
    pub presence: Presence,
    pub entry: ImpactEntry,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Clean,
    /// The impacts differ. That is an indicator, not a proof, of a
    /// semantic conflict.
    Suspect,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Clean => "clean",
            Verdict::Suspect => "suspect",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeltaImpactReport {
    entries: Vec<DeltaImpactEntry>,
    pub origin_label: String,
    pub dest_label: String,
    pub diagnostics: Vec<Diagnostic>,
}

impl DeltaImpactReport {
    pub fn entries(&self) -> &[DeltaImpactEntry] {
        &self.entries
    }

    pub fn verdict(&self) -> Verdict {
        if self.entries.is_empty() {
            Verdict::Clean
        } else {
            Verdict::Suspect
        }
    }

    pub fn is_clean(&self) -> bool {
        self.verdict() == Verdict::Clean
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| !d.is_error())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ImpactError {
    /// The delta has syntactic conflicts with the codebase, so its impact
    /// there is undefined.
    #[error("impact undefined: delta does not apply to `{label}` ({} conflict(s); first: {})", .conflicts.len(), .conflicts[0])]
    Undefined {
        label: String,
        conflicts: Vec<ApplyConflict>,
    },
    #[error(transparent)]
    Mining(#[from] DepError),
}

/// An impact plus the warnings raised while computing it.
#[derive(Clone, Debug, Default)]
pub struct BranchImpact {
    pub impact: ImpactSet,
    /// Apply warnings and mining warnings on C+Δ.
    pub diagnostics: Vec<Diagnostic>,
}

/// I(Δ, C): dependencies of C+Δ not in C (added), and of C not in C+Δ
/// (removed).
pub fn impact(delta: &Delta, codebase: &Codebase) -> Result<ImpactSet, ImpactError> {
    Ok(branch_impact(delta, codebase)?.impact)
}

pub fn branch_impact(delta: &Delta, codebase: &Codebase) -> Result<BranchImpact, ImpactError> {
    let applied = apply(delta, codebase).map_err(|conflicts| ImpactError::Undefined {
        label: codebase.label().to_string(),
        conflicts,
    })?;
    let before = mine(codebase)?;
    let after = mine(&applied.codebase)?;
    let impact = after
        .dependencies
        .difference(&before.dependencies)
        .cloned()
        .map(ImpactEntry::added)
        .chain(
            before
                .dependencies
                .difference(&after.dependencies)
                .cloned()
                .map(ImpactEntry::removed),
        )
        .collect();
    let mut diagnostics = applied.warnings;
    diagnostics.extend(after.diagnostics);
    Ok(BranchImpact {
        impact,
        diagnostics,
    })
}

/// DI(Δ, origin, dest): the classified symmetric difference of the two
/// impacts.
pub fn delta_impact(
    delta: &Delta,
    origin: &Codebase,
    dest: &Codebase,
) -> Result<DeltaImpactReport, ImpactError> {
    let (o, d) = std::thread::scope(|s| {
        let d = s.spawn(|| branch_impact(delta, dest));
        let o = branch_impact(delta, origin);
        (o, d.join().expect("impact thread panicked"))
    });
    Ok(compare(&o?, d?, origin.label(), dest.label()))
}

fn compare(
    origin: &BranchImpact,
    dest: BranchImpact,
    origin_label: &str,
    dest_label: &str,
) -> DeltaImpactReport {
    let o = origin.impact.as_set();
    let d = dest.impact.as_set();
    let mut entries: Vec<DeltaImpactEntry> = o
        .difference(d)
        .map(|e| DeltaImpactEntry {
            presence: Presence::MissingInDestination,
            entry: e.clone(),
        })
        .chain(d.difference(o).map(|e| DeltaImpactEntry {
            presence: Presence::ExtraInDestination,
            entry: e.clone(),
        }))
        .collect();
    entries.sort_by(|a, b| a.entry.cmp(&b.entry).then(a.presence.cmp(&b.presence)));

    let mut diagnostics: Vec<Diagnostic> = origin.diagnostics.clone();
    diagnostics.extend(dest.diagnostics);
    let mut seen = BTreeSet::new();
    diagnostics.retain(|d| seen.insert(d.clone()));
    DeltaImpactReport {
        entries,
        origin_label: origin_label.to_string(),
        dest_label: dest_label.to_string(),
        diagnostics,
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BisectError {
    #[error("origin: {0}")]
    Origin(ImpactError),
    #[error("snapshot {index}: {source}")]
    Snapshot { index: usize, source: ImpactError },
}

/// Scan destinations oldest to newest; return the first whose
/// delta-impact is not clean.
pub fn bisect(
    delta: &Delta,
    origin: &Codebase,
    destinations: &[Codebase],
) -> Result<Option<(usize, DeltaImpactReport)>, BisectError> {
    let origin_impact = branch_impact(delta, origin).map_err(BisectError::Origin)?;
    for (index, dest) in destinations.iter().enumerate() {
        let d =
            branch_impact(delta, dest).map_err(|source| BisectError::Snapshot { index, source })?;
        let report = compare(&origin_impact, d, origin.label(), dest.label());
        if !report.is_clean() {
            return Ok(Some((index, report)));
        }
    }
    Ok(None)
}
