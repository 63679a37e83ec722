//! Relevance-zone pattern tables for small-board kill-all Go.
//!
//! In kill-all Go, one player (here called the *or* player) tries to keep
//! a group alive while the opponent (the *and* player) tries to capture
//! every stone on the board. When a depth-bounded search proves the or
//! player safe, the proof rarely depends on the whole board: it touches
//! only a *relevance zone* of intersections. Any other legal position
//! that agrees with the proved one inside that zone — no matter what
//! stones sit outside — is won by the same strategy. Storing each proof
//! as a [`ZonePattern`] and consulting the store before searching turns
//! one proof into many: sibling subtrees that differ only in irrelevant
//! stones are pruned instead of re-searched.
//!
//! The crate provides the full pipeline:
//!
//! * [`board`] — bitboard positions up to 9x9 with legality checking,
//!   block extraction, static safety analysis (two-vital-region life),
//!   and a pass-attack capture oracle used to validate it;
//! * [`pattern`] — zone patterns, the position/pattern radix keys over a
//!   chosen intersection order, and a JSON dump format;
//! * [`table`] — the [`PatternTable`]: a per-player radix tree over the
//!   *ordered crucial intersections* (OCI), with a linear-scan reference
//!   store, timestamp-based lookup skipping, occurrence-driven OCI
//!   reordering on a growth schedule, and per-phase cost statistics;
//! * [`solver`] — a depth-bounded AND/OR kill-all solver that produces
//!   and consumes zone patterns, plus a brute-force reference solver and
//!   an exhaustive pattern verifier;
//! * [`workload`] — a deterministic synthetic workload and the paired
//!   timestamps-off/on benchmark behind the CLI;
//! * [`cli`] — the `rzt` binary: `solve`, `bench`, and `verify`
//!   subcommands emitting CSV or JSON reports.
//!
//! # Quick start
//!
//! Solve a small problem and inspect the proof:
//!
//! ```
//! use rzt::{parse_position, solve, Goal, Player, SolveConfig, SolveOutcome};
//!
//! let p = parse_position("size: 3\nto_move: W\n...\nOO.\n...\n").unwrap();
//! let result = solve(&p, Goal::new(Player::White), &SolveConfig::default(), None);
//! assert_eq!(result.outcome, SolveOutcome::Win);
//! let zone = result.zone.unwrap();
//! // Every legal position agreeing with `p` on `zone` is also a win.
//! assert!(!zone.is_empty());
//! ```
//!
//! Store and look up patterns directly:
//!
//! ```
//! use rzt::{
//!     parse_position, pattern_from, Lookup, PatternTable, ReconstructionConfig,
//!     SearchStamp, TableMode, Zone,
//! };
//!
//! let p = parse_position("size: 3\nto_move: B\n...\nOOO\n...\n").unwrap();
//! let mut table =
//!     PatternTable::new(3, TableMode::Radix, true, ReconstructionConfig::default()).unwrap();
//! table.insert(pattern_from(&p, Zone::from_coords(3, &["A2", "B2", "C2"]).unwrap())).unwrap();
//!
//! // Matches on the zone; the rest of the board is free.
//! let q = parse_position("size: 3\nto_move: B\n..X\nOOO\nX..\n").unwrap();
//! let mut stamp = SearchStamp::new(); // one stamp per queried position
//! assert!(matches!(table.lookup(&q, &mut stamp).unwrap(), Lookup::Hit(_)));
//! ```
//!
//! # Runnable examples
//!
//! Each major capability has a worked example under `examples/`:
//!
//! | example | shows |
//! |---|---|
//! | `solve_kill_all` | solving a bundled problem and reading the proof zone |
//! | `benson_analysis` | static safety verdicts cross-checked by the capture oracle |
//! | `pattern_verification` | exhaustive 3^k verification of every produced pattern |
//! | `node_reduction` | exact-TT vs exact-TT+patterns node counts on the bundled suite |
//! | `radix_vs_linear` | radix tree agreeing with the linear reference on one workload |
//! | `timestamp_skipping` | miss retries pruned by subtree stamps, verdicts unchanged |
//! | `scaling_workload` | per-phase miss-cost growth as the table fills |
//!
//! The bundled problems live in `problems/` at the repository root, one
//! board per file with a `manifest.csv` of frozen verdicts.

pub mod board;
pub mod cli;
pub mod pattern;
pub mod solver;
pub mod table;
pub mod workload;

pub use board::{
    benson_safe_zone, capturable_when_passing, parse_position, render_position, Block, BoardError,
    Color, Intersection, Move, ParseError, Player, Position, Zone, MAX_SIDE,
};
pub use pattern::{
    dump_patterns, encode_pattern_key, encode_position_key, matches, parse_patterns, pattern_from,
    DumpError, KeySym, PatternError, PatternKey, PatternRef, ZonePattern,
};
pub use solver::{
    brute_force_solve, enumerate_legal_positions, rz_for_and_win, rz_for_or_win, solve, verify_rzp,
    Goal, RzpVerifier, SolveConfig, SolveOutcome, SolveResult, TableUse, VerifyOutcome,
};
pub use table::{
    compute_oci, Lookup, Maintenance, MatchMode, Oci, PatternTable, PhaseRecord,
    ReconstructionConfig, SearchStamp, TableError, TableMode, TableStats,
};
pub use workload::{
    center_out_ranking, generate_workload, log_cost_ratio, run_bench, run_ops, BenchOp,
    BenchReport, MergedPhase, RunTrace, WorkloadError, WorkloadSpec,
};
