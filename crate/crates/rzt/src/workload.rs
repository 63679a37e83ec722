//! Synthetic table workloads: deterministic generation of insert/lookup
//! streams and a paired benchmark driver that runs the same stream with
//! timestamps off and on.
//!
//! The generator is a pure function of its seed, so a stream can be
//! replayed against any table configuration and the runs compared
//! query-by-query. Pattern zones are *nested*: every zone consists of the
//! top `L` cells of a fixed center-out ranking, with `L` drawn so that
//! each cell's marginal membership probability equals the configured zone
//! density. Nesting makes stored keys share prefixes in the table's own
//! crucial-intersection order (the tally ranking converges to the same
//! center-out order), which is what gives radix lookups their sublinear
//! scaling; zone contents are uniform over black/white/empty.
//!
//! Queries mix three sources: re-issues of earlier queries (these give
//! per-position search stamps something to skip), completions of stored
//! patterns (guaranteed hits), and uniform random legal positions.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::board::{Intersection, Player, Position, Zone};
use crate::pattern::ZonePattern;
use crate::table::{
    PatternTable, ReconstructionConfig, SearchStamp, TableError, TableMode, TableStats,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorkloadError {
    #[error("invalid workload: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Parameters of a synthetic workload. Generation is deterministic given
/// the spec (including the seed).
#[derive(Debug, Clone, PartialEq)]
pub struct WorkloadSpec {
    pub side: u8,
    /// Number of patterns inserted.
    pub entries: u64,
    /// Number of lookups, interleaved evenly between inserts.
    pub queries: u64,
    /// Mean fraction of the board covered by a pattern's zone.
    pub zone_density: f64,
    pub seed: u64,
    /// One fresh query in this many is a completion of a stored pattern
    /// (a guaranteed hit); the rest are uniform random legal positions.
    pub hit_one_in: u32,
    /// Percentage of lookups that re-issue an earlier query instead of
    /// drawing a fresh one.
    pub requery_percent: u32,
}

impl Default for WorkloadSpec {
    fn default() -> Self {
        WorkloadSpec {
            side: 7,
            entries: 20_000,
            queries: 80_000,
            zone_density: 0.3,
            seed: 1,
            hit_one_in: 50,
            requery_percent: 50,
        }
    }
}

impl WorkloadSpec {
    pub fn validate(&self) -> Result<(), WorkloadError> {
        if self.side == 0 || self.side > crate::board::MAX_SIDE {
            return Err(WorkloadError::BadSpec(format!(
                "side must be 1..={}, got {}",
                crate::board::MAX_SIDE,
                self.side
            )));
        }
        if self.entries == 0 {
            return Err(WorkloadError::BadSpec("entries must be positive".into()));
        }
        if !(self.zone_density > 0.0 && self.zone_density <= 1.0) {
            return Err(WorkloadError::BadSpec(format!(
                "zone density must be in (0, 1], got {}",
                self.zone_density
            )));
        }
        if self.hit_one_in == 0 {
            return Err(WorkloadError::BadSpec("hit mix must be positive".into()));
        }
        if self.requery_percent > 100 {
            return Err(WorkloadError::BadSpec(format!(
                "re-query percentage must be at most 100, got {}",
                self.requery_percent
            )));
        }
        Ok(())
    }
}

/// One operation of a generated stream.
#[derive(Debug, Clone, PartialEq)]
pub enum BenchOp {
    Insert(ZonePattern),
    Lookup(Position),
}

/// Cells ordered center-out (squared distance to the board center,
/// ties by index). Zone nesting and, through the tallies, the table's
/// crucial-intersection order both follow this ranking.
pub fn center_out_ranking(side: u8) -> Vec<Intersection> {
    let s = side as i64;
    let mut cells: Vec<(i64, usize)> = (0..(side as usize * side as usize))
        .map(|i| {
            let row = (i / side as usize) as i64;
            let col = (i % side as usize) as i64;
            let dr = 2 * row - (s - 1);
            let dc = 2 * col - (s - 1);
            (dr * dr + dc * dc, i)
        })
        .collect();
    cells.sort();
    cells
        .into_iter()
        .map(|(_, i)| Intersection::new(i, side).expect("index in range"))
        .collect()
}

struct Generator {
    rng: ChaCha8Rng,
    spec: WorkloadSpec,
    ranking: Vec<Intersection>,
    /// All-empty completion of every inserted pattern (hit-query source).
    completions: Vec<Position>,
    /// Every issued query (re-query source).
    pool: Vec<Position>,
}

impl Generator {
    fn new(spec: &WorkloadSpec) -> Generator {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
            spec: spec.clone(),
            ranking: center_out_ranking(spec.side),
            completions: Vec::new(),
            pool: Vec::new(),
        }
    }

    fn random_player(&mut self) -> Player {
        if self.rng.gen_bool(0.5) {
            Player::Black
        } else {
            Player::White
        }
    }

    /// A fresh pattern plus its all-empty completion. Content is redrawn
    /// until the completion is a legal position, which guarantees every
    /// stored pattern has at least one legal matching position.
    fn random_pattern(&mut self) -> (ZonePattern, Position) {
        let side = self.spec.side;
        let cells = self.ranking.len();
        let mut len = 0usize;
        for _ in 0..cells {
            if self.rng.gen_bool(self.spec.zone_density) {
                len += 1;
            }
        }
        let len = len.max(1);
        let mut zone = Zone::empty(side);
        for cell in &self.ranking[..len] {
            zone.insert(*cell);
        }
        let player = self.random_player();
        loop {
            let mut black = Zone::empty(side);
            let mut white = Zone::empty(side);
            for cell in &self.ranking[..len] {
                match self.rng.gen_range(0..3u8) {
                    1 => black.insert(*cell),
                    2 => white.insert(*cell),
                    _ => {}
                }
            }
            if let Ok(completion) = Position::from_masks(side, black.bits(), white.bits(), player)
            {
                let pattern = ZonePattern::new(player, zone, black, white)
                    .expect("content drawn inside the zone");
                return (pattern, completion);
            }
        }
    }

    /// A uniform random legal position (content uniform over B/W/E per
    /// cell, redrawn until legal).
    fn random_position(&mut self) -> Position {
        let side = self.spec.side;
        let cells = self.ranking.len();
        loop {
            let mut black = Zone::empty(side);
            let mut white = Zone::empty(side);
            for i in 0..cells {
                let cell = Intersection::new(i, side).expect("index in range");
                match self.rng.gen_range(0..3u8) {
                    1 => black.insert(cell),
                    2 => white.insert(cell),
                    _ => {}
                }
            }
            let player = self.random_player();
            if let Ok(p) = Position::from_masks(side, black.bits(), white.bits(), player) {
                return p;
            }
        }
    }

    fn next_query(&mut self) -> Position {
        if !self.pool.is_empty()
            && self.rng.gen_range(0..100u32) < self.spec.requery_percent
        {
            let i = self.rng.gen_range(0..self.pool.len());
            return self.pool[i].clone();
        }
        let hit_biased = !self.completions.is_empty()
            && self.rng.gen_range(0..self.spec.hit_one_in) == 0;
        let q = if hit_biased {
            let i = self.rng.gen_range(0..self.completions.len());
            self.completions[i].clone()
        } else {
            self.random_position()
        };
        self.pool.push(q.clone());
        q
    }
}

/// Generates the operation stream for a spec: `entries` inserts with
/// `queries` lookups spread evenly between them.
pub fn generate_workload(spec: &WorkloadSpec) -> Result<Vec<BenchOp>, WorkloadError> {
    spec.validate()?;
    let mut gen = Generator::new(spec);
    let mut ops = Vec::with_capacity((spec.entries + spec.queries) as usize);
    let mut emitted = 0u64;
    for i in 0..spec.entries {
        let (pattern, completion) = gen.random_pattern();
        gen.completions.push(completion);
        ops.push(BenchOp::Insert(pattern));
        let due = (i + 1).saturating_mul(spec.queries) / spec.entries;
        while emitted < due {
            ops.push(BenchOp::Lookup(gen.next_query()));
            emitted += 1;
        }
    }
    Ok(ops)
}

/// Per-lookup record of one run over an operation stream.
#[derive(Debug, Clone)]
pub struct RunTrace {
    /// Stamp of the matched entry per lookup (`None` on a miss), in op
    /// order. Stamps identify entries uniquely, so equal vectors mean
    /// identical per-query outcomes.
    pub matches: Vec<Option<u64>>,
    /// Traversing cost (node visits + chain comparisons) per lookup.
    pub costs: Vec<u64>,
    /// Table statistics after the run.
    pub stats: TableStats,
}

/// Replays an operation stream against a table, keeping one search stamp
/// per distinct queried position (as a solver would).
pub fn run_ops(ops: &[BenchOp], table: &mut PatternTable) -> Result<RunTrace, TableError> {
    let mut stamps: HashMap<Position, SearchStamp> = HashMap::new();
    let mut matches = Vec::new();
    let mut costs = Vec::new();
    for op in ops {
        match op {
            BenchOp::Insert(pattern) => {
                table.insert(pattern.clone())?;
            }
            BenchOp::Lookup(position) => {
                let before = table.stats().cost();
                let stamp = stamps.entry(position.clone()).or_default();
                let outcome = table.lookup(position, stamp)?;
                costs.push(table.stats().cost() - before);
                matches.push(outcome.hit().map(|p| p.stamp()));
            }
        }
    }
    Ok(RunTrace {
        matches,
        costs,
        stats: *table.stats(),
    })
}

/// One reconstruction phase with the timestamps-off and timestamps-on
/// cost series side by side. Node counts are structural, so `n_avg` is
/// shared.
#[derive(Debug, Clone, Copy)]
pub struct MergedPhase {
    pub phase: u64,
    pub n_avg: f64,
    pub c_avg_hit_nt: f64,
    pub c_avg_miss_nt: f64,
    pub c_avg_hit_ts: f64,
    pub c_avg_miss_ts: f64,
}

/// log(c_avg)/log(n_avg), the scaling exponent of lookup cost in live
/// tree size. `None` when the tree is too small for the ratio to mean
/// anything (n_avg ≤ 1). Costs below 1 clamp to 1 (exponent 0).
pub fn log_cost_ratio(c_avg: f64, n_avg: f64) -> Option<f64> {
    if n_avg > 1.0 {
        Some(c_avg.max(1.0).ln() / n_avg.ln())
    } else {
        None
    }
}

/// Result of a paired benchmark: the same stream run with timestamps off
/// (`nt`) and on (`ts`) against otherwise identical radix tables.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub phases: Vec<MergedPhase>,
    pub nt: RunTrace,
    pub ts: RunTrace,
    /// Number of entries already inserted when each lookup ran (op order,
    /// same indexing as the traces).
    pub entries_before_lookup: Vec<u64>,
}

impl BenchReport {
    /// Per-query outcomes (matched entry or miss) identical across runs.
    pub fn outcomes_identical(&self) -> bool {
        self.nt.matches == self.ts.matches
    }

    /// Timestamps never made any single lookup more expensive.
    pub fn per_query_cost_le(&self) -> bool {
        self.nt
            .costs
            .iter()
            .zip(&self.ts.costs)
            .all(|(nt, ts)| ts <= nt)
    }

    pub fn total_cost_nt(&self) -> u64 {
        self.nt.costs.iter().sum()
    }

    pub fn total_cost_ts(&self) -> u64 {
        self.ts.costs.iter().sum()
    }

    /// Total (nt, ts) cost over lookups issued after the table held more
    /// than `min_entries` entries.
    pub fn cost_after(&self, min_entries: u64) -> (u64, u64) {
        let mut nt = 0;
        let mut ts = 0;
        for (i, &entries) in self.entries_before_lookup.iter().enumerate() {
            if entries > min_entries {
                nt += self.nt.costs[i];
                ts += self.ts.costs[i];
            }
        }
        (nt, ts)
    }
}

/// Runs the paired timestamps-off/on benchmark for a workload spec.
pub fn run_bench(
    spec: &WorkloadSpec,
    recon: ReconstructionConfig,
) -> Result<BenchReport, WorkloadError> {
    spec.validate()?;
    let ops = generate_workload(spec)?;
    let mut entries_before_lookup = Vec::new();
    let mut inserted = 0u64;
    for op in &ops {
        match op {
            BenchOp::Insert(_) => inserted += 1,
            BenchOp::Lookup(_) => entries_before_lookup.push(inserted),
        }
    }

    let run = |timestamps: bool| -> Result<(RunTrace, Vec<crate::table::PhaseRecord>), WorkloadError> {
        let mut table = PatternTable::new(spec.side, TableMode::Radix, timestamps, recon)?;
        let trace = run_ops(&ops, &mut table)?;
        table.finish_phase();
        Ok((trace, table.phases().to_vec()))
    };
    let (nt, nt_phases) = run(false)?;
    let (ts, ts_phases) = run(true)?;
    debug_assert_eq!(nt_phases.len(), ts_phases.len());

    let phases = nt_phases
        .iter()
        .zip(&ts_phases)
        .map(|(n, t)| MergedPhase {
            phase: n.phase(),
            n_avg: n.n_avg(),
            c_avg_hit_nt: n.c_avg_hit(),
            c_avg_miss_nt: n.c_avg_miss(),
            c_avg_hit_ts: t.c_avg_hit(),
            c_avg_miss_ts: t.c_avg_miss(),
        })
        .collect();

    Ok(BenchReport {
        phases,
        nt,
        ts,
        entries_before_lookup,
    })
}
