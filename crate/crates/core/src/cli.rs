//! The `aris` command line.

use std::ffi::OsString;
use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::Value;

use crate::diagnostic::{Status, Verdict};
use crate::formula::{Formula, Style};
use crate::persistence;
use crate::proof::{check_proof, LineKind, ProofDocument};
use crate::protocol::{Request, RequestKind, Session};
use crate::rules::RuleId;

/// Exit status: every line valid and every goal achieved.
pub const EXIT_OK: u8 = 0;
/// Exit status: the document was checked but a line is not valid or a goal
/// is unmet.
pub const EXIT_FAILED: u8 = 1;
/// Exit status: bad arguments or an unreadable file.
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "aris", version, about = "Check natural-deduction proofs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every line of a proof file
    Check {
        file: PathBuf,
        /// Print the check as a protocol response
        #[arg(long)]
        json: bool,
        /// Print formulas with ASCII symbols
        #[arg(long)]
        ascii: bool,
    },
    /// Write a LaTeX rendering of a proof file
    ExportLatex {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rewrite a proof file in canonical form
    Fmt { file: PathBuf },
    /// Create an empty proof file
    New { file: PathBuf },
}

/// How human-readable output looks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Console {
    pub unicode: bool,
    pub color: bool,
}

impl Console {
    /// Unicode when the locale says UTF-8, color when stdout is a terminal
    /// and `ARIS_NO_COLOR` is unset.
    pub fn detect() -> Self {
        let locale = ["LC_ALL", "LC_CTYPE", "LANG"]
            .iter()
            .filter_map(|k| std::env::var(k).ok())
            .find(|v| !v.is_empty())
            .unwrap_or_default()
            .to_ascii_lowercase();
        Console {
            unicode: locale.contains("utf-8") || locale.contains("utf8"),
            color: io::stdout().is_terminal() && std::env::var_os("ARIS_NO_COLOR").is_none(),
        }
    }

    fn paint(&self, text: &str, status: Status) -> String {
        if !self.color {
            return text.to_string();
        }
        let code = match status {
            Status::Valid => "32",
            Status::Invalid => "31",
            Status::Unchecked => "33",
        };
        format!("\x1b[{code}m{text}\x1b[0m")
    }
}

/// Run with the process arguments, stdout and stderr.
pub fn main() -> u8 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut stderr.lock(),
        Console::detect(),
    )
}

/// Run the command line given by `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, console: Console) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return status;
        }
    };
    let result = match cli.command {
        Command::Check {
            file, json: true, ..
        } => check_json(&file, out),
        Command::Check { file, ascii, .. } => {
            let console = Console {
                unicode: console.unicode && !ascii,
                ..console
            };
            check_human(&file, out, console)
        }
        Command::ExportLatex { file, output } => persistence::load(&file)
            .map_err(|e| e.to_string())
            .and_then(|doc| {
                std::fs::write(&output, persistence::export_latex(&doc)).map_err(|e| e.to_string())
            })
            .map(|_| {
                let _ = writeln!(out, "wrote {}", output.display());
                EXIT_OK
            }),
        Command::Fmt { file } => persistence::load(&file)
            .map_err(|e| e.to_string())
            .and_then(|doc| persistence::write(&doc, &file).map_err(|e| e.to_string()))
            .map(|_| EXIT_OK),
        Command::New { file } => {
            let path = persistence::with_extension(&file);
            if path.exists() {
                Err(format!("{} already exists", path.display()))
            } else {
                persistence::save(&ProofDocument::new(), &path)
                    .map_err(|e| e.to_string())
                    .map(|p| {
                        let _ = writeln!(out, "created {}", p.display());
                        EXIT_OK
                    })
            }
        }
    };
    match result {
        Ok(status) => status,
        Err(message) => {
            let _ = writeln!(err, "aris: {message}");
            EXIT_ERROR
        }
    }
}

fn check_json(file: &std::path::Path, out: &mut dyn Write) -> Result<u8, String> {
    let content = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let mut session = Session::new();
    let loaded = session.handle(&Request::new(
        1,
        RequestKind::LoadDocument,
        serde_json::json!({ "content": content }),
    ));
    let (response, status) = if loaded.is_ok() {
        let checked = session.handle(&Request::new(2, RequestKind::CheckProof, Value::Null));
        let payload = checked
            .payload
            .as_ref()
            .expect("check_proof always succeeds");
        let success = payload["all_valid"] == Value::Bool(true)
            && payload["all_goals_achieved"] == Value::Bool(true);
        (checked, if success { EXIT_OK } else { EXIT_FAILED })
    } else {
        (loaded, EXIT_ERROR)
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string(&response).expect("responses serialize")
    )
    .map_err(|e| e.to_string())?;
    Ok(status)
}

fn justification(kind: LineKind, rule: Option<RuleId>, refs: &[usize]) -> String {
    match (kind, rule) {
        (LineKind::Premise, _) => "premise".into(),
        (LineKind::Assumption, _) => "assumption".into(),
        (LineKind::Conclusion, None) => "-".into(),
        (LineKind::Conclusion, Some(r)) if refs.is_empty() => r.name().into(),
        (LineKind::Conclusion, Some(RuleId::Subproof)) if refs.len() == 2 => {
            format!("Subproof {}-{}", refs[0], refs[1])
        }
        (LineKind::Conclusion, Some(r)) => {
            format!(
                "{} {}",
                r.name(),
                refs.iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        }
    }
}

fn describe(v: &Verdict) -> String {
    let mut text = v.to_string();
    if let Some(p) = v.position.as_ref().filter(|p| !p.is_root()) {
        text.push_str(&format!(" [at {p}]"));
    }
    text
}

fn check_human(
    file: &std::path::Path,
    out: &mut dyn Write,
    console: Console,
) -> Result<u8, String> {
    let doc = persistence::load(file).map_err(|e| e.to_string())?;
    let report = check_proof(&doc);
    let style = if console.unicode {
        Style::Unicode
    } else {
        Style::Ascii
    };
    let show = |f: &Formula| crate::formula::render(f, style);

    let rows: Vec<(String, String)> = doc
        .lines
        .iter()
        .map(|l| {
            let text = l
                .formula
                .as_ref()
                .map(show)
                .unwrap_or_else(|| "(empty)".into());
            let bar = if console.unicode { "│ " } else { "| " };
            (
                format!("{}{text}", bar.repeat(l.depth)),
                justification(l.kind, l.rule, &l.refs),
            )
        })
        .collect();
    let number_width = doc.len().to_string().len();
    let formula_width = rows
        .iter()
        .map(|(f, _)| f.chars().count())
        .max()
        .unwrap_or(0);
    let rule_width = rows
        .iter()
        .map(|(_, r)| r.chars().count())
        .max()
        .unwrap_or(0);

    let mut text = String::new();
    for (i, ((formula, rule), verdict)) in rows.iter().zip(&report.verdicts).enumerate() {
        let pad_f = formula_width - formula.chars().count();
        let pad_r = rule_width - rule.chars().count();
        text.push_str(&format!(
            "{:>number_width$}  {formula}{}  {rule}{}  {}\n",
            i + 1,
            " ".repeat(pad_f),
            " ".repeat(pad_r),
            console.paint(&describe(verdict), verdict.status)
        ));
    }
    for g in &report.goals {
        match g.line {
            Some(line) => text.push_str(&format!(
                "goal {}: goal achieved at line {line}\n",
                show(&g.goal)
            )),
            None => text.push_str(&format!("goal {}: not achieved\n", show(&g.goal))),
        }
    }
    let count = |s: Status| report.verdicts.iter().filter(|v| v.status == s).count();
    let achieved = report.goals.iter().filter(|g| g.achieved).count();
    text.push_str(&format!(
        "{} lines: {} valid, {} invalid, {} unchecked; {achieved} of {} goals achieved\n",
        doc.len(),
        count(Status::Valid),
        count(Status::Invalid),
        count(Status::Unchecked),
        report.goals.len()
    ));
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(if report.is_success() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}
