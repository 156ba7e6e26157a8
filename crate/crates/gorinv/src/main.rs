//! Command-line front end: JSON in, JSON or aligned tables out.
//!
//! Exit codes: 0 success, 1 domain error (single-line JSON on stderr),
//! 2 usage error, 3 replication mismatch.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gorinv::api;
use gorinv::error::{Error, Result};
use gorinv::group::DEFAULT_CLOSURE_CAP;
use gorinv::schema::ErrorJson;

#[derive(Parser)]
#[command(
    name = "gorinv",
    version,
    about = "Exact construction and verification of group-invariant Gorenstein quotients",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct IoArgs {
    /// Input: a file path, inline JSON (starts with '{'), or '-' for stdin.
    #[arg(long)]
    input: Option<String>,
    /// Output path; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output rendering; defaults to json (table for replicate).
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graded ideal annihilating a functional.
    Construct {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Dimensions and bases of the invariant subspaces of a group.
    Invariants {
        #[command(flatten)]
        io: IoArgs,
        /// Largest degree to report (default 6, or the input's max_degree).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Decide whether a group admits a nontrivial one-dimensional
    /// representation over its field.
    CheckGroup {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Rerun a bundled reference instance (ex34 or ex35) and diff against
    /// its recorded values. Exits 3 on any mismatch.
    Replicate {
        /// Instance id: ex34 or ex35.
        id: String,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Run the full pipeline on one instance spec.
    Verify {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Run a seed-deterministic sweep of random instances.
    Sweep {
        #[command(flatten)]
        io: IoArgs,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the config's per-cell instance count.
        #[arg(long)]
        count: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let line = serde_json::to_string(&ErrorJson::from(&e))
                .unwrap_or_else(|_| format!("{{\"kind\":\"internal\",\"message\":\"{e}\"}}"));
            eprintln!("{line}");
            ExitCode::from(1)
        }
    }
}

fn closure_cap() -> Result<usize> {
    match std::env::var("GORINV_GROUP_CAP") {
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
        Ok(v) => v
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad GORINV_GROUP_CAP value '{v}'"))),
    }
}

fn read_input(io: &IoArgs) -> Result<String> {
    let spec = io.input.as_deref().unwrap_or("-");
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(spec.to_string());
    }
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(spec)
        .map_err(|e| Error::InvalidInput(format!("cannot read '{spec}': {e}")))
}

fn write_output(io: &IoArgs, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &io.output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write '{}': {e}", path.display()))),
    }
}

fn format_of(io: &IoArgs, default: Format) -> Format {
    io.format.unwrap_or(default)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cap = closure_cap()?;
    match cli.command {
        Command::Construct { io } => {
            let out = api::run_construct(&read_input(&io)?, cap)?;
            let rendered = match format_of(&io, Format::Json) {
                Format::Json => out,
                Format::Table => table::construct(&out)?,
            };
            write_output(&io, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariants { io, max_degree } => {
            let out = api::run_invariants(&read_input(&io)?, max_degree, cap)?;
            let rendered = match format_of(&io, Format::Json) {
                Format::Json => out,
                Format::Table => table::invariants(&out)?,
            };
            write_output(&io, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckGroup { io } => {
            let out = api::run_check_group(&read_input(&io)?, cap)?;
            let rendered = match format_of(&io, Format::Json) {
                Format::Json => out,
                Format::Table => table::check_group(&out)?,
            };
            write_output(&io, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Replicate { id, io } => {
            let (out, matched) = api::run_replicate(&id)?;
            let rendered = match format_of(&io, Format::Table) {
                Format::Json => out,
                Format::Table => table::replicate(&out)?,
            };
            write_output(&io, &rendered)?;
            Ok(if matched {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Verify { io } => {
            let out = api::run_verify(&read_input(&io)?, cap)?;
            let rendered = match format_of(&io, Format::Json) {
                Format::Json => out,
                Format::Table => table::verify(&out)?,
            };
            write_output(&io, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { io, seed, count } => {
            let started = Instant::now();
            let cap_override = std::env::var("GORINV_GROUP_CAP").ok().map(|_| cap);
            let out = api::run_sweep(&read_input(&io)?, seed, count, cap_override)?;
            let elapsed = started.elapsed();
            let rendered = match format_of(&io, Format::Json) {
                Format::Json => out,
                Format::Table => table::sweep(&out, elapsed)?,
            };
            write_output(&io, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Aligned-table renderers over the JSON reports.
mod table {
    use std::time::Duration;

    use gorinv::error::{Error, Result};
    use serde_json::Value;

    fn parse(json: &str) -> Result<Value> {
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    fn rows_to_table(rows: &[(String, String)]) -> String {
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:width$}  {v}"))
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn dims(v: &Value) -> String {
        v.as_array()
            .map(|a| {
                a.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .unwrap_or_default()
    }

    fn yes_no(v: &Value) -> String {
        if v.as_bool().unwrap_or(false) {
            "YES".into()
        } else {
            "NO".into()
        }
    }

    fn poly_list(piece: &Value) -> String {
        let polys: Vec<String> = piece
            .as_array()
            .map(|rows| {
                rows.iter()
                    .map(|poly| {
                        poly.as_object()
                            .map(|m| {
                                m.iter()
                                    .map(|(k, v)| format!("{v}*{k}"))
                                    .collect::<Vec<_>>()
                                    .join(" + ")
                            })
                            .unwrap_or_default()
                    })
                    .collect()
            })
            .unwrap_or_default();
        if polys.is_empty() {
            "0".into()
        } else {
            polys.join(";  ")
        }
    }

    pub fn check_group(json: &str) -> Result<String> {
        let v = parse(json)?;
        Ok(rows_to_table(&[
            ("exists".into(), v["exists"].to_string()),
            ("witness prime".into(), v["witness_prime"].to_string()),
            ("r".into(), v["r"].to_string()),
        ]))
    }

    pub fn construct(json: &str) -> Result<String> {
        let v = parse(json)?;
        let mut rows = vec![
            ("ring dimension".into(), v["n"].to_string()),
            ("field".into(), v["field"].to_string()),
            ("top degree".into(), v["top"].to_string()),
        ];
        if let Some(pieces) = v["pieces"].as_array() {
            for (d, piece) in pieces.iter().enumerate() {
                rows.push((format!("ideal degree {d}"), poly_list(piece)));
            }
        }
        Ok(rows_to_table(&rows))
    }

    pub fn invariants(json: &str) -> Result<String> {
        let v = parse(json)?;
        let mut rows = vec![
            ("group order".into(), v["group_order"].to_string()),
            ("dims".into(), dims(&v["dims"])),
        ];
        if let Some(bases) = v["bases"].as_array() {
            for (d, basis) in bases.iter().enumerate() {
                rows.push((format!("basis degree {d}"), poly_list(basis)));
            }
        }
        Ok(rows_to_table(&rows))
    }

    pub fn verify(json: &str) -> Result<String> {
        let v = parse(json)?;
        Ok(verdict_rows(&v["report"]))
    }

    fn verdict_rows(r: &Value) -> String {
        rows_to_table(&[
            ("hypothesis holds".into(), r["hypothesis_holds"].to_string()),
            ("witness prime".into(), r["witness_prime"].to_string()),
            (
                "ideal G-invariant".into(),
                r["ideal_g_invariant"].to_string(),
            ),
            ("hilbert".into(), dims(&r["quotient"]["hilbert"])),
            (
                "quotient Gorenstein".into(),
                yes_no(&r["quotient"]["gorenstein"]),
            ),
            (
                "quotient a-invariant".into(),
                r["quotient"]["a_invariant"].to_string(),
            ),
            (
                "invariant quotient dims".into(),
                dims(&r["invariant_quotient"]["dims"]),
            ),
            (
                "invariant quotient Gorenstein".into(),
                yes_no(&r["invariant_quotient"]["gorenstein"]),
            ),
            (
                "invariant quotient a-invariant".into(),
                r["invariant_quotient"]["a_invariant"].to_string(),
            ),
            (
                "theorem satisfied".into(),
                r["theorem_satisfied"].to_string(),
            ),
            ("counterexample".into(), r["counterexample"].to_string()),
        ])
    }

    pub fn replicate(json: &str) -> Result<String> {
        let v = parse(json)?;
        let mut out = String::new();
        out.push_str(&format!(
            "replication: {}\n\n",
            v["example"].as_str().unwrap_or("?")
        ));
        let checks = v["checks"].as_array().cloned().unwrap_or_default();
        let qw = checks
            .iter()
            .filter_map(|c| c["quantity"].as_str().map(str::len))
            .max()
            .unwrap_or(8)
            .max("quantity".len());
        let ew = checks
            .iter()
            .filter_map(|c| c["expected"].as_str().map(str::len))
            .max()
            .unwrap_or(8)
            .max("expected".len());
        let cw = checks
            .iter()
            .filter_map(|c| c["computed"].as_str().map(str::len))
            .max()
            .unwrap_or(8)
            .max("computed".len());
        out.push_str(&format!(
            "{:qw$}  {:ew$}  {:cw$}  match\n",
            "quantity", "expected", "computed"
        ));
        for c in &checks {
            out.push_str(&format!(
                "{:qw$}  {:ew$}  {:cw$}  {}\n",
                c["quantity"].as_str().unwrap_or(""),
                c["expected"].as_str().unwrap_or(""),
                c["computed"].as_str().unwrap_or(""),
                if c["matches"].as_bool().unwrap_or(false) {
                    "yes"
                } else {
                    "NO"
                }
            ));
        }
        out.push('\n');
        out.push_str(&verdict_rows(&v["report"]));
        out.push('\n');
        if let Some(notes) = v["notes"].as_array() {
            for note in notes {
                out.push_str(&format!("note: {}\n", note.as_str().unwrap_or("")));
            }
        }
        out.push_str(&format!(
            "result: {}",
            if v["all_match"].as_bool().unwrap_or(false) {
                "MATCH"
            } else {
                "MISMATCH"
            }
        ));
        Ok(out)
    }

    pub fn sweep(json: &str, elapsed: Duration) -> Result<String> {
        let v = parse(json)?;
        let dist = v["a_invariant_distribution"]
            .as_object()
            .map(|m| {
                m.iter()
                    .map(|(k, c)| format!("a={k}: {c}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .unwrap_or_default();
        let mut rows = vec![
            ("instances run".into(), v["instances_run"].to_string()),
            (
                "instances skipped".into(),
                v["instances_skipped"].to_string(),
            ),
            ("counterexamples".into(), v["counterexamples"].to_string()),
            (
                "invariant quotient not Gorenstein".into(),
                v["invariant_quotient_not_gorenstein"].to_string(),
            ),
            ("a-invariant distribution".into(), dist),
            ("wall time".into(), format!("{:.3}s", elapsed.as_secs_f64())),
        ];
        if let Some(skips) = v["skipped"].as_array() {
            if !skips.is_empty() {
                let preview: Vec<String> = skips
                    .iter()
                    .take(5)
                    .map(|s| format!("#{} {}", s["index"], s["reason"].as_str().unwrap_or("")))
                    .collect();
                rows.push((
                    "first skips".into(),
                    format!(
                        "{}{}",
                        preview.join(", "),
                        if skips.len() > 5 { ", ..." } else { "" }
                    ),
                ));
            }
        }
        Ok(rows_to_table(&rows))
    }
}
