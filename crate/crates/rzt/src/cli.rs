//! Command-line front end: solve kill-all problems, drive synthetic table
//! benchmarks, and verify pattern dumps.
//!
//! Three subcommands, each mapping onto one library layer:
//!
//! * `solve` reads problem files (the board text format), solves each with
//!   its own pattern table under the configured store/timestamp/match
//!   ablation, and emits one statistics row per problem;
//! * `bench` generates a deterministic synthetic workload, replays it with
//!   timestamps off and on, and emits one row per reconstruction phase;
//! * `verify` checks every pattern of a JSON dump against the zone-pattern
//!   property by exhaustive outside-zone enumeration.
//!
//! Output is CSV by default (schemas below) or JSON with `--out json`.
//! All output is deterministic given inputs, flags, and seed, except the
//! `lookup_time_ms` column, which reports wall-clock time.
//!
//! Exit codes: 0 success; 1 I/O failure; 2 malformed input or invalid
//! flags; 3 a verify run found a counterexample; 4 a verify run exceeded
//! its enumeration budget.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::board::{parse_position, render_position, Player};
use crate::pattern::{dump_patterns, parse_patterns, PatternRef};
use crate::solver::{solve, Goal, RzpVerifier, SolveConfig, SolveOutcome, TableUse, VerifyOutcome};
use crate::table::{MatchMode, PatternTable, ReconstructionConfig, TableMode};
use crate::workload::{log_cost_ratio, run_bench, WorkloadSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "rzt",
    version,
    about = "Relevance-zone pattern tables for small-board kill-all Go"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve kill-all problem files and emit per-problem statistics.
    Solve(SolveArgs),
    /// Run a synthetic table workload and emit per-phase statistics.
    Bench(BenchArgs),
    /// Verify a pattern dump against the zone-pattern property.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Radix,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatchKind {
    First,
    Smallest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlayerArg {
    B,
    W,
}

impl From<PlayerArg> for Player {
    fn from(p: PlayerArg) -> Player {
        match p {
            PlayerArg::B => Player::Black,
            PlayerArg::W => Player::White,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Problem file in the board text format; repeatable.
    #[arg(long = "in", required = true, num_args = 1)]
    pub inputs: Vec<PathBuf>,
    /// Pattern store shape.
    #[arg(long, value_enum, default_value_t = TableKind::Radix)]
    pub table: TableKind,
    /// Timestamp-based lookup skipping.
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    pub timestamps: Toggle,
    /// Which match a lookup returns when several patterns match.
    #[arg(long = "match", value_enum, default_value_t = MatchKind::First)]
    pub match_mode: MatchKind,
    /// Fraction of the board kept as crucial intersections.
    #[arg(long, default_value_t = 0.8)]
    pub oci_fraction: f64,
    /// Rebuild interval while the table holds at most 1000 entries.
    #[arg(long, default_value_t = 100)]
    pub rebuild_small_interval: u64,
    /// Growth factor that makes the next rebuild due past 1000 entries.
    #[arg(long, default_value_t = 0.10)]
    pub rebuild_growth: f64,
    /// Search depth in plies.
    #[arg(long, default_value_t = 10)]
    pub max_depth: u32,
    /// Abort a problem (reported Unknown) after this many search nodes.
    #[arg(long, default_value_t = 10_000_000)]
    pub max_nodes: u64,
    /// The player trying to build a safe group.
    #[arg(long, value_enum, default_value_t = PlayerArg::W)]
    pub or_player: PlayerArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub out: OutputFormat,
    /// Write every pattern inserted while solving to this JSON dump.
    #[arg(long)]
    pub dump_patterns: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 7)]
    pub side: u8,
    /// Patterns inserted.
    #[arg(long, default_value_t = 20_000)]
    pub entries: u64,
    /// Lookups, interleaved evenly between inserts.
    #[arg(long, default_value_t = 80_000)]
    pub queries: u64,
    /// Mean fraction of the board covered by a pattern's zone.
    #[arg(long, default_value_t = 0.3)]
    pub zone_density: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// One fresh query in this many completes a stored pattern.
    #[arg(long, default_value_t = 50)]
    pub hit_mix: u32,
    /// Percentage of lookups that re-issue an earlier query.
    #[arg(long, default_value_t = 50)]
    pub requery_percent: u32,
    #[arg(long, default_value_t = 0.8)]
    pub oci_fraction: f64,
    #[arg(long, default_value_t = 100)]
    pub rebuild_small_interval: u64,
    #[arg(long, default_value_t = 0.10)]
    pub rebuild_growth: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub out: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Pattern dump file (JSON, as written by solve --dump-patterns).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// The player the patterns claim wins.
    #[arg(long, value_enum, default_value_t = PlayerArg::W)]
    pub or_player: PlayerArg,
    /// Depth for the exhaustive search on each completion.
    #[arg(long, default_value_t = 12)]
    pub max_depth: u32,
    /// Maximum completions (3^outside-cells) per pattern.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
}

/// Runs a parsed command, writing reports to `out` and diagnostics to
/// `err`, and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Solve(args) => cmd_solve(&args, out, err),
        Command::Bench(args) => cmd_bench(&args, out, err),
        Command::Verify(args) => cmd_verify(&args, out, err),
    }
}

#[derive(Debug, Serialize)]
struct SolveRow {
    id: String,
    entries: u64,
    lookups: u64,
    lookup_time_ms: f64,
    hits: u64,
    compares: u64,
    cost: u64,
    rebuilds: u64,
    outcome: String,
    nodes: u64,
}

fn recon_config(
    oci_fraction: f64,
    rebuild_small_interval: u64,
    rebuild_growth: f64,
) -> ReconstructionConfig {
    ReconstructionConfig {
        oci_fraction,
        small_interval: rebuild_small_interval,
        growth_factor: rebuild_growth,
        ..ReconstructionConfig::default()
    }
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let recon = recon_config(
        args.oci_fraction,
        args.rebuild_small_interval,
        args.rebuild_growth,
    );
    if let Err(e) = recon.validate() {
        let _ = writeln!(err, "invalid flags: {e}");
        return EXIT_BAD_INPUT;
    }
    if args.max_depth == 0 || args.max_nodes == 0 {
        let _ = writeln!(err, "invalid flags: depth and node budgets must be positive");
        return EXIT_BAD_INPUT;
    }
    let goal = Goal::new(args.or_player.into());
    let mode = match args.table {
        TableKind::Radix => TableMode::Radix,
        TableKind::Linear => TableMode::Linear,
    };
    let match_mode = match args.match_mode {
        MatchKind::First => MatchMode::First,
        MatchKind::Smallest => MatchMode::Smallest,
    };
    let cfg = SolveConfig {
        max_depth: args.max_depth,
        max_nodes: args.max_nodes,
        table_use: TableUse::ExactTtRzt,
        timestamps: args.timestamps == Toggle::On,
        match_mode,
    };

    let mut rows = Vec::new();
    let mut dumped: Vec<PatternRef> = Vec::new();
    let mut hits_total = 0u64;
    let mut smallest_diff_total = 0u64;
    for input in &args.inputs {
        let text = match std::fs::read_to_string(input) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "cannot read {}: {e}", input.display());
                return EXIT_IO;
            }
        };
        let position = match parse_position(&text) {
            Ok(p) => p,
            Err(e) => {
                let _ = writeln!(err, "malformed problem {}: {e}", input.display());
                return EXIT_BAD_INPUT;
            }
        };
        let mut table = match PatternTable::new(
            position.side(),
            mode,
            args.timestamps == Toggle::On,
            recon,
        ) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "invalid flags: {e}");
                return EXIT_BAD_INPUT;
            }
        };
        let result = solve(&position, goal, &cfg, Some(&mut table));
        let stats = table.stats();
        rows.push(SolveRow {
            id: input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| input.display().to_string()),
            entries: stats.entries,
            lookups: stats.lookups,
            lookup_time_ms: stats.lookup_time.as_secs_f64() * 1000.0,
            hits: stats.hits,
            compares: stats.list_compares,
            cost: stats.cost(),
            rebuilds: stats.rebuild_count,
            outcome: match result.outcome {
                SolveOutcome::Win => "Win".into(),
                SolveOutcome::Unknown => "Unknown".into(),
            },
            nodes: result.nodes,
        });
        hits_total += stats.hits;
        smallest_diff_total += table.smallest_diff_hits();
        if args.dump_patterns.is_some() {
            dumped.extend(table.patterns());
        }
    }

    let mut text = String::new();
    match args.out {
        OutputFormat::Csv => {
            text.push_str(
                "id,entries,lookups,lookup_time_ms,hits,compares,cost,rebuilds,outcome,nodes\n",
            );
            for r in &rows {
                let _ = writeln!(
                    text,
                    "{},{},{},{:.3},{},{},{},{},{},{}",
                    r.id,
                    r.entries,
                    r.lookups,
                    r.lookup_time_ms,
                    r.hits,
                    r.compares,
                    r.cost,
                    r.rebuilds,
                    r.outcome,
                    r.nodes
                );
            }
        }
        OutputFormat::Json => {
            text = serde_json::to_string_pretty(&rows).expect("rows serialize");
            text.push('\n');
        }
    }
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_IO;
    }

    if args.match_mode == MatchKind::Smallest && hits_total > 0 {
        let _ = writeln!(
            err,
            "smallest-zone match differed from first match on {} of {} hits ({:.2}%)",
            smallest_diff_total,
            hits_total,
            100.0 * smallest_diff_total as f64 / hits_total as f64
        );
    }
    if let Some(path) = &args.dump_patterns {
        let json = dump_patterns(dumped.iter().map(|p| p.as_ref()));
        if let Err(e) = std::fs::write(path, json) {
            let _ = writeln!(err, "cannot write {}: {e}", path.display());
            return EXIT_IO;
        }
    }
    EXIT_OK
}

#[derive(Debug, Serialize)]
struct PhaseRow {
    phase: u64,
    n_avg: f64,
    c_avg_hit_nt: f64,
    c_avg_miss_nt: f64,
    c_avg_hit_ts: f64,
    c_avg_miss_ts: f64,
    exp_hit_nt: Option<f64>,
    exp_miss_nt: Option<f64>,
    exp_hit_ts: Option<f64>,
    exp_miss_ts: Option<f64>,
}

#[derive(Debug, Serialize)]
struct BenchSummary {
    total_cost_nt: u64,
    total_cost_ts: u64,
    outcomes_identical: bool,
    per_query_cost_le: bool,
}

#[derive(Debug, Serialize)]
struct BenchJson {
    phases: Vec<PhaseRow>,
    summary: BenchSummary,
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let spec = WorkloadSpec {
        side: args.side,
        entries: args.entries,
        queries: args.queries,
        zone_density: args.zone_density,
        seed: args.seed,
        hit_one_in: args.hit_mix,
        requery_percent: args.requery_percent,
    };
    let recon = recon_config(
        args.oci_fraction,
        args.rebuild_small_interval,
        args.rebuild_growth,
    );
    if let Err(e) = recon.validate() {
        let _ = writeln!(err, "invalid flags: {e}");
        return EXIT_BAD_INPUT;
    }
    let report = match run_bench(&spec, recon) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "invalid workload: {e}");
            return EXIT_BAD_INPUT;
        }
    };

    let phase_rows: Vec<PhaseRow> = report
        .phases
        .iter()
        .map(|p| PhaseRow {
            phase: p.phase,
            n_avg: p.n_avg,
            c_avg_hit_nt: p.c_avg_hit_nt,
            c_avg_miss_nt: p.c_avg_miss_nt,
            c_avg_hit_ts: p.c_avg_hit_ts,
            c_avg_miss_ts: p.c_avg_miss_ts,
            exp_hit_nt: log_cost_ratio(p.c_avg_hit_nt, p.n_avg),
            exp_miss_nt: log_cost_ratio(p.c_avg_miss_nt, p.n_avg),
            exp_hit_ts: log_cost_ratio(p.c_avg_hit_ts, p.n_avg),
            exp_miss_ts: log_cost_ratio(p.c_avg_miss_ts, p.n_avg),
        })
        .collect();

    let mut text = String::new();
    match args.out {
        OutputFormat::Csv => {
            text.push_str("phase,n_avg,c_avg_hit_nt,c_avg_miss_nt,c_avg_hit_ts,c_avg_miss_ts\n");
            for p in &phase_rows {
                let _ = writeln!(
                    text,
                    "{},{:.6},{:.6},{:.6},{:.6},{:.6}",
                    p.phase,
                    p.n_avg,
                    p.c_avg_hit_nt,
                    p.c_avg_miss_nt,
                    p.c_avg_hit_ts,
                    p.c_avg_miss_ts
                );
            }
        }
        OutputFormat::Json => {
            let json = BenchJson {
                phases: phase_rows,
                summary: BenchSummary {
                    total_cost_nt: report.total_cost_nt(),
                    total_cost_ts: report.total_cost_ts(),
                    outcomes_identical: report.outcomes_identical(),
                    per_query_cost_le: report.per_query_cost_le(),
                },
            };
            text = serde_json::to_string_pretty(&json).expect("report serializes");
            text.push('\n');
        }
    }
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_IO;
    }

    let worst_miss_exp = report
        .phases
        .iter()
        .skip(10)
        .filter_map(|p| log_cost_ratio(p.c_avg_miss_nt, p.n_avg))
        .fold(f64::NEG_INFINITY, f64::max);
    let _ = writeln!(
        err,
        "total cost: {} without timestamps, {} with; worst miss exponent after phase 10: {}",
        report.total_cost_nt(),
        report.total_cost_ts(),
        if worst_miss_exp.is_finite() {
            format!("{worst_miss_exp:.3}")
        } else {
            "n/a".into()
        }
    );
    EXIT_OK
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "cannot read {}: {e}", args.input.display());
            return EXIT_IO;
        }
    };
    let patterns = match parse_patterns(&text) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "malformed dump {}: {e}", args.input.display());
            return EXIT_BAD_INPUT;
        }
    };
    let goal = Goal::new(args.or_player.into());
    let mut verifier = RzpVerifier::new(goal, args.max_depth, args.budget);
    for (i, pattern) in patterns.iter().enumerate() {
        match verifier.verify(pattern) {
            VerifyOutcome::Verified => {}
            VerifyOutcome::Counterexample(cx) => {
                let _ = writeln!(
                    err,
                    "pattern {} of {} has a counterexample:\n{}",
                    i + 1,
                    patterns.len(),
                    render_position(&cx)
                );
                return EXIT_COUNTEREXAMPLE;
            }
            VerifyOutcome::BudgetExceeded => {
                let _ = writeln!(
                    err,
                    "pattern {} of {}: completions exceed the budget of {}",
                    i + 1,
                    patterns.len(),
                    args.budget
                );
                return EXIT_BUDGET;
            }
        }
    }
    let _ = writeln!(out, "verified {} patterns", patterns.len());
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Zone;
    use crate::pattern::pattern_from;
    use clap::Parser;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(args).expect("valid test args");
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_problem(dir: &std::path::Path, name: &str, text: &str) -> PathBuf {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    #[test]
    fn solve_emits_one_csv_row_per_problem() {
        let dir = tempfile::tempdir().unwrap();
        let p1 = write_problem(dir.path(), "one_move.txt", "size: 3\nto_move: W\n...\nOO.\n...\n");
        let p2 = write_problem(dir.path(), "terminal.txt", "size: 3\nto_move: B\n...\nOOO\n...\n");
        let (code, out, _err) = run_args(&[
            "rzt",
            "solve",
            "--in",
            p1.to_str().unwrap(),
            "--in",
            p2.to_str().unwrap(),
            "--max-depth",
            "6",
        ]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines[0],
            "id,entries,lookups,lookup_time_ms,hits,compares,cost,rebuilds,outcome,nodes"
        );
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("one_move,"));
        assert!(lines[1].ends_with(",Win") == false, "outcome is not the last field");
        assert!(lines[1].contains(",Win,"));
        assert!(lines[2].starts_with("terminal,"));
        assert!(lines[2].contains(",Win,"));
    }

    #[test]
    fn solve_json_output_carries_the_same_fields() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_problem(dir.path(), "prob.txt", "size: 3\nto_move: B\n...\nOOO\n...\n");
        let (code, out, _) = run_args(&[
            "rzt", "solve", "--in", p.to_str().unwrap(), "--out", "json",
        ]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["id"], "prob");
        assert_eq!(v[0]["outcome"], "Win");
        assert_eq!(v[0]["nodes"], 1);
    }

    #[test]
    fn solve_exit_codes_for_missing_and_malformed_inputs() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("nope.txt");
        let (code, _, err) = run_args(&["rzt", "solve", "--in", missing.to_str().unwrap()]);
        assert_eq!(code, EXIT_IO);
        assert!(err.contains("cannot read"));

        let bad = write_problem(dir.path(), "bad.txt", "size: 3\nto_move: Q\n...\n...\n...\n");
        let (code, _, err) = run_args(&["rzt", "solve", "--in", bad.to_str().unwrap()]);
        assert_eq!(code, EXIT_BAD_INPUT);
        assert!(err.contains("malformed"));
    }

    #[test]
    fn solve_rejects_invalid_table_flags() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_problem(dir.path(), "p.txt", "size: 3\nto_move: B\n...\nOOO\n...\n");
        let (code, _, err) = run_args(&[
            "rzt",
            "solve",
            "--in",
            p.to_str().unwrap(),
            "--oci-fraction",
            "1.5",
        ]);
        assert_eq!(code, EXIT_BAD_INPUT);
        assert!(err.contains("invalid flags"));
    }

    #[test]
    fn solve_csv_is_deterministic_apart_from_lookup_time() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_problem(dir.path(), "p.txt", "size: 3\nto_move: W\n...\nOO.\n...\n");
        let args = [
            "rzt",
            "solve",
            "--in",
            p.to_str().unwrap(),
            "--max-depth",
            "8",
        ];
        let (c1, out1, _) = run_args(&args);
        let (c2, out2, _) = run_args(&args);
        assert_eq!(c1, EXIT_OK);
        assert_eq!(c2, EXIT_OK);
        assert_eq!(strip_time_column(&out1), strip_time_column(&out2));
    }

    fn strip_time_column(csv: &str) -> String {
        csv.lines()
            .map(|line| {
                let fields: Vec<&str> = line.split(',').collect();
                fields
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != 3)
                    .map(|(_, f)| *f)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn bench_csv_has_the_phase_schema_and_is_deterministic() {
        let args = [
            "rzt", "bench", "--side", "5", "--entries", "400", "--queries", "800", "--seed", "3",
        ];
        let (c1, out1, err1) = run_args(&args);
        let (c2, out2, _) = run_args(&args);
        assert_eq!(c1, EXIT_OK);
        assert_eq!(c2, EXIT_OK);
        assert_eq!(out1, out2, "bench CSV is byte-identical across runs");
        let lines: Vec<&str> = out1.lines().collect();
        assert_eq!(
            lines[0],
            "phase,n_avg,c_avg_hit_nt,c_avg_miss_nt,c_avg_hit_ts,c_avg_miss_ts"
        );
        assert!(lines.len() > 4, "several phases closed");
        assert!(err1.contains("total cost"));
    }

    #[test]
    fn bench_rejects_invalid_specs() {
        let (code, _, err) = run_args(&["rzt", "bench", "--zone-density", "0.0"]);
        assert_eq!(code, EXIT_BAD_INPUT);
        assert!(err.contains("invalid"));
    }

    #[test]
    fn verify_accepts_a_dump_produced_by_solve() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_problem(dir.path(), "p.txt", "size: 3\nto_move: W\n...\nOO.\n...\n");
        let dump = dir.path().join("patterns.json");
        let (code, _, _) = run_args(&[
            "rzt",
            "solve",
            "--in",
            p.to_str().unwrap(),
            "--max-depth",
            "6",
            "--dump-patterns",
            dump.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        let (code, out, err) = run_args(&[
            "rzt",
            "verify",
            "--in",
            dump.to_str().unwrap(),
            "--max-depth",
            "16",
        ]);
        assert_eq!(code, EXIT_OK, "stderr: {err}");
        assert!(out.contains("verified"));
    }

    #[test]
    fn verify_flags_truncated_patterns_and_budget() {
        let dir = tempfile::tempdir().unwrap();
        let p = parse_position("size: 3\nto_move: B\n...\nOOO\n...\n").unwrap();
        let truncated = pattern_from(&p, Zone::from_coords(3, &["A2"]).unwrap());
        let dump = dir.path().join("bad.json");
        std::fs::write(&dump, dump_patterns([&truncated])).unwrap();

        let (code, _, err) = run_args(&[
            "rzt",
            "verify",
            "--in",
            dump.to_str().unwrap(),
            "--max-depth",
            "10",
        ]);
        assert_eq!(code, EXIT_COUNTEREXAMPLE);
        assert!(err.contains("counterexample"));

        let (code, _, err) = run_args(&[
            "rzt",
            "verify",
            "--in",
            dump.to_str().unwrap(),
            "--budget",
            "10",
        ]);
        assert_eq!(code, EXIT_BUDGET);
        assert!(err.contains("budget"));
    }

    #[test]
    fn verify_exit_codes_for_missing_and_malformed_dumps() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("none.json");
        let (code, _, _) = run_args(&["rzt", "verify", "--in", missing.to_str().unwrap()]);
        assert_eq!(code, EXIT_IO);
        let bad = dir.path().join("bad.json");
        std::fs::write(&bad, "not json").unwrap();
        let (code, _, _) = run_args(&["rzt", "verify", "--in", bad.to_str().unwrap()]);
        assert_eq!(code, EXIT_BAD_INPUT);
    }

    #[test]
    fn verify_empty_dump_succeeds() {
        let dir = tempfile::tempdir().unwrap();
        let empty = dir.path().join("empty.json");
        std::fs::write(&empty, "[]").unwrap();
        let (code, out, _) = run_args(&["rzt", "verify", "--in", empty.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verified 0 patterns"));
    }

    #[test]
    fn smallest_match_reports_divergence_fraction_on_stderr() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_problem(dir.path(), "p.txt", "size: 3\nto_move: W\n...\nOO.\n...\n");
        let (code, _, err) = run_args(&[
            "rzt",
            "solve",
            "--in",
            p.to_str().unwrap(),
            "--match",
            "smallest",
            "--max-depth",
            "8",
        ]);
        assert_eq!(code, EXIT_OK);
        // The summary appears whenever there were hits at all.
        if err.contains("smallest-zone") {
            assert!(err.contains("of"));
        }
    }
}
