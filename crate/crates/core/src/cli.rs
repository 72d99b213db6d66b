//! The `dif` command line: argument parsing, workflows and exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::delta::diff;
use crate::depminer::mine;
use crate::impact::{bisect, delta_impact, impact, BisectError, ImpactError};
use crate::lang::{merge_sources, parse, Codebase, Diagnostic, SourceFile};
use crate::render::{self, BisectDoc, DependenciesDoc, ImpactDoc, ReportDoc};

/// Process exit status. Nothing else is ever returned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    /// Success, or a clean delta-impact.
    Clean = 0,
    /// A non-empty delta-impact: the merge needs a human.
    Suspect = 1,
    /// Usage, I/O, parse, validation or apply failure.
    Error = 2,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "dif",
    version,
    about = "Flag semantic merge conflicts by comparing the dependency impact of a change on two branches"
)]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the static dependency set of a snapshot
    Deps {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the entity-level delta between two snapshots
    Diff {
        base: PathBuf,
        head: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the impact of the base..head change on base
    Impact {
        base: PathBuf,
        head: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compare the impact of origin-base..origin-head on its origin and on dest
    Analyze {
        #[arg(long)]
        origin_base: PathBuf,
        #[arg(long)]
        origin_head: PathBuf,
        #[arg(long)]
        dest: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Treat warnings as a suspect finding
        #[arg(long)]
        fail_on_warnings: bool,
    },
    /// Check whether a package loaded onto a new platform version keeps its impact
    Migrate {
        #[arg(long)]
        package: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Find the first destination snapshot (oldest first) where the change's impact differs
    Bisect {
        #[arg(long)]
        origin_base: PathBuf,
        #[arg(long)]
        origin_head: PathBuf,
        #[arg(required = true)]
        dests: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// `DIF_COLOR=0|1` forces color off or on; otherwise use `is_tty`.
pub fn color_enabled(is_tty: bool) -> bool {
    match std::env::var("DIF_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => is_tty,
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return if e.use_stderr() {
                Exit::Error
            } else {
                Exit::Clean
            };
        }
    };
    let mut session = Session { out, err, color };
    match session.dispatch(inv.command) {
        Ok(exit) => exit,
        Err(lines) => {
            for l in lines {
                let _ = writeln!(session.err, "{l}");
            }
            Exit::Error
        }
    }
}

type CmdResult = Result<Exit, Vec<String>>;

struct Session<'o> {
    out: &'o mut dyn Write,
    err: &'o mut dyn Write,
    color: bool,
}

fn label(path: &Path) -> String {
    path.display().to_string()
}

fn read(path: &Path) -> Result<String, Vec<String>> {
    std::fs::read_to_string(path)
        .map_err(|e| vec![format!("error: cannot read {}: {e}", path.display())])
}

fn diag_lines(diags: &[Diagnostic]) -> Vec<String> {
    diags.iter().map(ToString::to_string).collect()
}

fn checked(cb: Codebase) -> Result<Codebase, Vec<String>> {
    if cb.has_errors() {
        Err(diag_lines(cb.diagnostics()))
    } else {
        Ok(cb)
    }
}

fn load(path: &Path) -> Result<Codebase, Vec<String>> {
    let text = read(path)?;
    let cb = parse(&text, &label(path)).map_err(|e| diag_lines(&e.diagnostics))?;
    checked(cb)
}

fn impact_error(e: ImpactError) -> Vec<String> {
    match e {
        ImpactError::Undefined { label, conflicts } => {
            let mut lines = vec![format!(
                "error: the change does not apply cleanly to {label}; delta-impact is undefined"
            )];
            lines.extend(conflicts.iter().map(|c| format!("  conflict: {c}")));
            lines
        }
        ImpactError::Mining(e) => vec![format!("error: {e}")],
    }
}

impl Session<'_> {
    fn emit(&mut self, text: &str) -> Result<(), Vec<String>> {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| vec![format!("error: cannot write output: {e}")])
    }

    fn warn(&mut self, diags: &[Diagnostic]) {
        for d in diags.iter().filter(|d| !d.is_error()) {
            let _ = writeln!(self.err, "{d}");
        }
    }

    fn dispatch(&mut self, command: Command) -> CmdResult {
        match command {
            Command::Deps { file, format } => self.deps(&file, format),
            Command::Diff { base, head, format } => {
                let (base, head) = (load(&base)?, load(&head)?);
                let delta = diff(&base, &head);
                let text = match format {
                    Format::Text => delta.to_string(),
                    Format::Json => delta.to_json(),
                };
                self.emit(&text)?;
                Ok(Exit::Clean)
            }
            Command::Impact { base, head, format } => {
                let (base, head) = (load(&base)?, load(&head)?);
                let set = impact(&diff(&base, &head), &base).map_err(impact_error)?;
                let text = match format {
                    Format::Text => render::impact_text(&set),
                    Format::Json => render::to_json(&ImpactDoc::from(&set)),
                };
                self.emit(&text)?;
                Ok(Exit::Clean)
            }
            Command::Analyze {
                origin_base,
                origin_head,
                dest,
                format,
                fail_on_warnings,
            } => {
                let base = load(&origin_base)?;
                let head = load(&origin_head)?;
                let dest = load(&dest)?;
                self.analyze(&base, &head, &dest, format, fail_on_warnings)
            }
            Command::Migrate {
                package,
                from,
                to,
                format,
            } => {
                let platform_text = read(&from)?;
                let package_text = read(&package)?;
                let from_cb = checked(
                    parse(&platform_text, &label(&from)).map_err(|e| diag_lines(&e.diagnostics))?,
                )?;
                let loaded = merge_sources(&[
                    SourceFile::new(label(&from), platform_text),
                    SourceFile::new(label(&package), package_text),
                ])
                .map_err(|e| diag_lines(&e.diagnostics))?;
                let loaded = checked(loaded)?;
                let to_cb = load(&to)?;
                self.analyze(&from_cb, &loaded, &to_cb, format, false)
            }
            Command::Bisect {
                origin_base,
                origin_head,
                dests,
                format,
            } => {
                let base = load(&origin_base)?;
                let head = load(&origin_head)?;
                let mut snapshots = Vec::with_capacity(dests.len());
                for (i, path) in dests.iter().enumerate() {
                    let cb = load(path).map_err(|mut lines| {
                        lines.insert(
                            0,
                            format!("error: snapshot {i} ({}) is invalid", path.display()),
                        );
                        lines
                    })?;
                    snapshots.push(cb);
                }
                let found =
                    bisect(&diff(&base, &head), &base, &snapshots).map_err(|e| match e {
                        BisectError::Origin(e) => impact_error(e),
                        BisectError::Snapshot { index, source } => {
                            let mut lines = impact_error(source);
                            lines.insert(
                                0,
                                format!("error: snapshot {index} ({})", dests[index].display()),
                            );
                            lines
                        }
                    })?;
                if let Some((_, r)) = &found {
                    self.warn(&r.diagnostics);
                }
                let text = match format {
                    Format::Text => render::bisect_text(found.as_ref(), self.color),
                    Format::Json => render::to_json(&BisectDoc {
                        first_conflict: found.as_ref().map(|(i, _)| *i),
                        report: found.as_ref().map(|(_, r)| ReportDoc::from(r)),
                    }),
                };
                self.emit(&text)?;
                Ok(if found.is_some() {
                    Exit::Suspect
                } else {
                    Exit::Clean
                })
            }
        }
    }

    fn deps(&mut self, file: &Path, format: Format) -> CmdResult {
        let cb = load(file)?;
        self.warn(cb.diagnostics());
        let mined = mine(&cb).map_err(|e| vec![format!("error: {e}")])?;
        self.warn(&mined.diagnostics);
        let text = match format {
            Format::Text => render::dependencies_text(&mined.dependencies),
            Format::Json => render::to_json(&DependenciesDoc::from(&mined.dependencies)),
        };
        self.emit(&text)?;
        Ok(Exit::Clean)
    }

    fn analyze(
        &mut self,
        base: &Codebase,
        head: &Codebase,
        dest: &Codebase,
        format: Format,
        fail_on_warnings: bool,
    ) -> CmdResult {
        let delta = diff(base, head);
        let report = delta_impact(&delta, base, dest).map_err(impact_error)?;
        self.warn(&report.diagnostics);
        let text = match format {
            Format::Text => render::report_text(&report, self.color),
            Format::Json => render::to_json(&ReportDoc::from(&report)),
        };
        self.emit(&text)?;
        if !report.is_clean() {
            return Ok(Exit::Suspect);
        }
        if fail_on_warnings && report.warnings().next().is_some() {
            let _ = writeln!(
                self.err,
                "note: failing because of warnings (--fail-on-warnings)"
            );
            return Ok(Exit::Suspect);
        }
        Ok(Exit::Clean)
    }
}
