//! The pattern table: a radix tree over ordered crucial intersections,
//! with a linear-scan baseline behind the same interface.
//!
//! Patterns are stored per player to move, keyed by the table's ordered
//! crucial intersections (OCI). Each tree node has four children — `B`,
//! `W`, `E` by stone content and `N` for patterns whose zone skips the
//! intersection — and leaf nodes hold chains of patterns ordered newest
//! first. A lookup walks the concrete branch for the queried position at
//! every depth and backtracks through `N` branches, because a pattern that
//! ignores an intersection may still match the position.
//!
//! Two mechanisms keep lookups cheap as the table grows:
//!
//! * **Timestamps.** Every node carries the stamp of the newest pattern in
//!   its subtree. A caller keeps a per-position [`SearchStamp`]; after a
//!   failed lookup it is raised to the table's global stamp, and later
//!   lookups of the same position skip every subtree (and chain suffix)
//!   that has seen no newer insertion — those entries were already compared
//!   and cannot match now. Timestamps never change a lookup's outcome, only
//!   its cost.
//! * **Reconstruction.** The crucial intersections are chosen dynamically:
//!   occurrence tallies count how often each intersection appears in
//!   inserted zones, and on a growth schedule the table re-derives the OCI
//!   from the tallies and rebuilds the tree, reinserting all patterns in
//!   their original stamp order.
//!
//! Statistics distinguish node visits from chain (list) compares; their sum
//! is the traversal cost used when comparing configurations, while
//! per-phase scaling records count node visits alone.

use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::board::{cell_count, Intersection, Player, Position, MAX_SIDE};
use crate::pattern::{
    encode_pattern_key, encode_position_key, matches, KeySym, PatternKey, PatternRef, ZonePattern,
};

/// Errors raised by table operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("board side {0} out of range 1..={MAX_SIDE}")]
    BadSide(u8),
    #[error("table is for side {table}, argument has side {given}")]
    SideMismatch { table: u8, given: u8 },
    #[error("invalid reconstruction config: {0}")]
    BadConfig(String),
    #[error("OCI must be distinct intersections on the board")]
    BadOci,
}

/// Which store backs the table: the radix tree or the linear baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMode {
    Radix,
    Linear,
}

/// Which matching pattern a lookup returns: the first found in traversal
/// order, or the one with the smallest zone among all matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    First,
    Smallest,
}

/// Result of a maintenance step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Maintenance {
    Rebuilt,
    Unchanged,
}

/// Result of a lookup.
#[derive(Debug, Clone)]
pub enum Lookup {
    Hit(PatternRef),
    Miss,
}

impl Lookup {
    pub fn is_hit(&self) -> bool {
        matches!(self, Lookup::Hit(_))
    }

    pub fn hit(&self) -> Option<&PatternRef> {
        match self {
            Lookup::Hit(p) => Some(p),
            Lookup::Miss => None,
        }
    }
}

/// Reconstruction scheduling and OCI sizing parameters.
#[derive(Debug, Clone, Copy)]
pub struct ReconstructionConfig {
    /// Entry count up to which rebuilds run on a fixed interval.
    pub small_threshold: u64,
    /// Rebuild interval while at or below the threshold.
    pub small_interval: u64,
    /// Above the threshold, rebuild once the table has grown by this factor
    /// over the size at the last (attempted) rebuild.
    pub growth_factor: f64,
    /// Fraction of the board kept as crucial intersections.
    pub oci_fraction: f64,
}

impl Default for ReconstructionConfig {
    fn default() -> Self {
        ReconstructionConfig {
            small_threshold: 1000,
            small_interval: 100,
            growth_factor: 0.10,
            oci_fraction: 0.80,
        }
    }
}

impl ReconstructionConfig {
    pub fn validate(&self) -> Result<(), TableError> {
        if self.small_interval == 0 {
            return Err(TableError::BadConfig("small_interval must be positive".into()));
        }
        if !(self.growth_factor > 0.0) {
            return Err(TableError::BadConfig("growth_factor must be positive".into()));
        }
        if !(self.oci_fraction > 0.0 && self.oci_fraction <= 1.0) {
            return Err(TableError::BadConfig("oci_fraction must be in (0, 1]".into()));
        }
        Ok(())
    }

    /// Growth factor as integer per-mille, so the boundary case (e.g. 1100
    /// entries after a rebuild at 1000 with factor 0.10) is exact.
    fn growth_permille(&self) -> u64 {
        (self.growth_factor * 1000.0).round() as u64
    }
}

/// Ordered crucial intersections: the distinct board points, most frequent
/// first, that index the radix tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oci {
    points: Vec<Intersection>,
}

impl Oci {
    /// Builds an OCI from distinct intersections, preserving order.
    pub fn new<I>(points: I) -> Result<Oci, TableError>
    where
        I: IntoIterator<Item = Intersection>,
    {
        let points: Vec<Intersection> = points.into_iter().collect();
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(TableError::BadOci);
            }
        }
        Ok(Oci { points })
    }

    pub fn empty() -> Oci {
        Oci { points: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn as_slice(&self) -> &[Intersection] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Intersection> {
        self.points.iter()
    }
}

/// Derives the OCI from occurrence tallies: the `max(1, floor(fraction ×
/// side²))` most frequent intersections, most frequent first, ties broken
/// by ascending index.
pub fn compute_oci(tally: &[u64], fraction: f64, side: u8) -> Oci {
    let cells = cell_count(side);
    assert_eq!(tally.len(), cells, "tally length must equal side²");
    let mut order: Vec<usize> = (0..cells).collect();
    order.sort_by(|&a, &b| tally[b].cmp(&tally[a]).then(a.cmp(&b)));
    let n = ((fraction * cells as f64).floor() as usize).clamp(1, cells);
    Oci {
        points: order[..n]
            .iter()
            .map(|&i| Intersection::from_index_unchecked(i))
            .collect(),
    }
}

/// Per-position search timestamp, owned by the caller.
///
/// Starts at 0; a failed lookup raises it to the table's global stamp, a
/// hit leaves it unchanged. The value never decreases and never exceeds the
/// global stamp of the table it is used with.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStamp(u64);

impl SearchStamp {
    pub fn new() -> SearchStamp {
        SearchStamp(0)
    }

    /// Constructs a stamp at a given value; mainly for tests and examples
    /// that replay a known history.
    pub fn with_value(t: u64) -> SearchStamp {
        SearchStamp(t)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

/// Cumulative table counters.
#[derive(Debug, Clone, Copy, Default)]
pub struct TableStats {
    /// Patterns inserted over the table's lifetime.
    pub entries: u64,
    pub lookups: u64,
    pub hits: u64,
    /// Radix nodes entered during lookups.
    pub node_visits: u64,
    /// Chain (or linear-list) patterns compared during lookups.
    pub list_compares: u64,
    /// Completed tree rebuilds.
    pub rebuild_count: u64,
    /// Wall-clock time spent inside `lookup`.
    pub lookup_time: Duration,
}

impl TableStats {
    /// Traversal cost: node visits plus list compares.
    pub fn cost(&self) -> u64 {
        self.node_visits + self.list_compares
    }
}

/// Lookup-cost aggregates for one reconstruction phase (the interval
/// between two scheduled maintenance checkpoints, whether or not the OCI
/// changed at them). `n_avg` is the mean live node count sampled at each
/// lookup; the `c_avg` values are mean node visits per lookup, split by
/// hit and miss — chain compares are deliberately excluded here.
#[derive(Debug, Clone, Copy)]
pub struct PhaseRecord {
    phase: u64,
    lookups: u64,
    hits: u64,
    misses: u64,
    node_count_sum: u128,
    hit_visits: u64,
    miss_visits: u64,
}

impl PhaseRecord {
    pub fn phase(&self) -> u64 {
        self.phase
    }

    pub fn lookups(&self) -> u64 {
        self.lookups
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    /// Mean live node count over the phase's lookups.
    pub fn n_avg(&self) -> f64 {
        if self.lookups == 0 {
            0.0
        } else {
            self.node_count_sum as f64 / self.lookups as f64
        }
    }

    /// Mean node visits per hit lookup.
    pub fn c_avg_hit(&self) -> f64 {
        if self.hits == 0 {
            0.0
        } else {
            self.hit_visits as f64 / self.hits as f64
        }
    }

    /// Mean node visits per miss lookup.
    pub fn c_avg_miss(&self) -> f64 {
        if self.misses == 0 {
            0.0
        } else {
            self.miss_visits as f64 / self.misses as f64
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct PhaseAccum {
    lookups: u64,
    hits: u64,
    misses: u64,
    node_count_sum: u128,
    hit_visits: u64,
    miss_visits: u64,
}

/// One radix-tree node: the newest stamp in its subtree, four children
/// indexed by key symbol, and (at leaves) the pattern chain, newest first.
struct Node {
    stamp: u64,
    children: [Option<Box<Node>>; 4],
    chain: VecDeque<PatternRef>,
}

impl Node {
    fn new() -> Node {
        Node {
            stamp: 0,
            children: [None, None, None, None],
            chain: VecDeque::new(),
        }
    }
}

enum Store {
    Radix(Option<Box<Node>>),
    Linear(VecDeque<PatternRef>),
}

impl Store {
    fn new(mode: TableMode) -> Store {
        match mode {
            TableMode::Radix => Store::Radix(None),
            TableMode::Linear => Store::Linear(VecDeque::new()),
        }
    }
}

/// Traversal state for one lookup.
struct Cursor<'a> {
    position: &'a Position,
    t: u64,
    ts_enabled: bool,
    match_mode: MatchMode,
    visits: u64,
    compares: u64,
    first: Option<PatternRef>,
    best: Option<PatternRef>,
}

impl<'a> Cursor<'a> {
    fn offer(&mut self, pat: &PatternRef) -> bool {
        if self.first.is_none() {
            self.first = Some(pat.clone());
        }
        match &self.best {
            Some(b) if b.zone().len() <= pat.zone().len() => {}
            _ => self.best = Some(pat.clone()),
        }
        // In first-match mode the walk stops at the first match.
        self.match_mode == MatchMode::First
    }

    fn into_outcome(self) -> (Option<PatternRef>, bool, u64, u64) {
        let diverged = match (&self.first, &self.best) {
            (Some(f), Some(b)) => b.zone().len() < f.zone().len(),
            _ => false,
        };
        let chosen = match self.match_mode {
            MatchMode::First => self.first,
            MatchMode::Smallest => self.best,
        };
        (chosen, diverged, self.visits, self.compares)
    }
}

/// The relevance-zone pattern table.
///
/// Holds one store per player to move. See the module docs for the lookup,
/// timestamp, and reconstruction behavior.
pub struct PatternTable {
    side: u8,
    mode: TableMode,
    timestamps_enabled: bool,
    match_mode: MatchMode,
    config: ReconstructionConfig,
    oci: Oci,
    stores: [Store; 2],
    global_stamp: u64,
    tally: Vec<u64>,
    last_rebuild_size: u64,
    stats: TableStats,
    node_count: u64,
    smallest_diff_hits: u64,
    phases: Vec<PhaseRecord>,
    accum: PhaseAccum,
}

fn store_index(player: Player) -> usize {
    match player {
        Player::Black => 0,
        Player::White => 1,
    }
}

impl PatternTable {
    /// Creates an empty table. The OCI starts empty, which makes the radix
    /// tree a single chain — equivalent to the linear store — until the
    /// first reconstruction derives real crucial intersections.
    pub fn new(
        side: u8,
        mode: TableMode,
        timestamps: bool,
        config: ReconstructionConfig,
    ) -> Result<PatternTable, TableError> {
        if side == 0 || side > MAX_SIDE {
            return Err(TableError::BadSide(side));
        }
        config.validate()?;
        Ok(PatternTable {
            side,
            mode,
            timestamps_enabled: timestamps,
            match_mode: MatchMode::First,
            config,
            oci: Oci::empty(),
            stores: [Store::new(mode), Store::new(mode)],
            global_stamp: 0,
            tally: vec![0; cell_count(side)],
            last_rebuild_size: 0,
            stats: TableStats::default(),
            node_count: 0,
            smallest_diff_hits: 0,
            phases: Vec::new(),
            accum: PhaseAccum::default(),
        })
    }

    pub fn side(&self) -> u8 {
        self.side
    }

    pub fn mode(&self) -> TableMode {
        self.mode
    }

    pub fn timestamps_enabled(&self) -> bool {
        self.timestamps_enabled
    }

    pub fn match_mode(&self) -> MatchMode {
        self.match_mode
    }

    pub fn set_match_mode(&mut self, mode: MatchMode) {
        self.match_mode = mode;
    }

    pub fn config(&self) -> &ReconstructionConfig {
        &self.config
    }

    pub fn stats(&self) -> &TableStats {
        &self.stats
    }

    /// Total patterns ever inserted; also the newest stamp in use.
    pub fn global_stamp(&self) -> u64 {
        self.global_stamp
    }

    pub fn oci(&self) -> &Oci {
        &self.oci
    }

    /// Per-intersection occurrence tallies (never decremented).
    pub fn tally(&self) -> &[u64] {
        &self.tally
    }

    /// Entry count at the last rebuild or rebuild attempt.
    pub fn last_rebuild_size(&self) -> u64 {
        self.last_rebuild_size
    }

    /// Live radix nodes across both stores (0 in linear mode).
    pub fn node_count(&self) -> u64 {
        self.node_count
    }

    /// Hits where the smallest matching zone differed from the first match
    /// (only counted in [`MatchMode::Smallest`]).
    pub fn smallest_diff_hits(&self) -> u64 {
        self.smallest_diff_hits
    }

    /// Completed reconstruction phases.
    pub fn phases(&self) -> &[PhaseRecord] {
        &self.phases
    }

    /// Closes the running phase so its record appears in [`phases`]; used
    /// by workload drivers at the end of a run.
    ///
    /// [`phases`]: PatternTable::phases
    pub fn finish_phase(&mut self) {
        let accum = std::mem::take(&mut self.accum);
        self.phases.push(PhaseRecord {
            phase: self.phases.len() as u64 + 1,
            lookups: accum.lookups,
            hits: accum.hits,
            misses: accum.misses,
            node_count_sum: accum.node_count_sum,
            hit_visits: accum.hit_visits,
            miss_visits: accum.miss_visits,
        });
    }

    /// Inserts a pattern: assigns the next global stamp, updates tallies,
    /// stores the pattern (newest first), then runs [`maintenance`].
    ///
    /// [`maintenance`]: PatternTable::maintenance
    pub fn insert(&mut self, mut pat: ZonePattern) -> Result<(), TableError> {
        if pat.side() != self.side {
            return Err(TableError::SideMismatch {
                table: self.side,
                given: pat.side(),
            });
        }
        self.global_stamp += 1;
        pat.set_stamp(self.global_stamp);
        for p in pat.zone().iter() {
            self.tally[p.index()] += 1;
        }
        self.stats.entries += 1;
        let pat: PatternRef = PatternRef::new(pat);
        self.store_pattern(pat);
        self.maintenance();
        Ok(())
    }

    /// Stores an already-stamped pattern without touching stamps, tallies,
    /// or the schedule; shared by `insert` and `reconstruct`.
    fn store_pattern(&mut self, pat: PatternRef) {
        let stamp = pat.stamp();
        match &mut self.stores[store_index(pat.player())] {
            Store::Linear(list) => list.push_front(pat),
            Store::Radix(root) => {
                let key = encode_pattern_key(&pat, &self.oci);
                let mut node = root.get_or_insert_with(|| {
                    self.node_count += 1;
                    Box::new(Node::new())
                });
                node.stamp = node.stamp.max(stamp);
                for sym in key.syms() {
                    node = node.children[sym.branch_index()].get_or_insert_with(|| {
                        self.node_count += 1;
                        Box::new(Node::new())
                    });
                    node.stamp = node.stamp.max(stamp);
                }
                node.chain.push_front(pat);
            }
        }
    }

    /// Looks up a pattern matching `p`, updating statistics and — on a miss
    /// with timestamps enabled — raising the caller's search stamp to the
    /// global stamp. Timestamps only ever skip work; the outcome and the
    /// returned pattern are the same as with timestamps disabled.
    pub fn lookup(&mut self, p: &Position, s: &mut SearchStamp) -> Result<Lookup, TableError> {
        if p.side() != self.side {
            return Err(TableError::SideMismatch {
                table: self.side,
                given: p.side(),
            });
        }
        let start = Instant::now();
        self.stats.lookups += 1;
        let mut cursor = Cursor {
            position: p,
            t: s.value(),
            ts_enabled: self.timestamps_enabled,
            match_mode: self.match_mode,
            visits: 0,
            compares: 0,
            first: None,
            best: None,
        };
        match &self.stores[store_index(p.to_move())] {
            Store::Linear(list) => {
                for pat in list {
                    if cursor.ts_enabled && pat.stamp() < cursor.t {
                        break;
                    }
                    cursor.compares += 1;
                    if matches(p, pat) && cursor.offer(pat) {
                        break;
                    }
                }
            }
            Store::Radix(root) => {
                if let Some(root) = root {
                    let key = encode_position_key(p, &self.oci);
                    Self::walk(root, key.syms(), &mut cursor);
                }
            }
        }
        let (found, diverged, visits, compares) = cursor.into_outcome();
        self.stats.node_visits += visits;
        self.stats.list_compares += compares;
        self.accum.lookups += 1;
        self.accum.node_count_sum += self.node_count as u128;
        match &found {
            Some(_) => {
                self.stats.hits += 1;
                self.accum.hits += 1;
                self.accum.hit_visits += visits;
                if diverged {
                    self.smallest_diff_hits += 1;
                }
            }
            None => {
                self.accum.misses += 1;
                self.accum.miss_visits += visits;
                if self.timestamps_enabled {
                    *s = SearchStamp(self.global_stamp);
                }
            }
        }
        self.stats.lookup_time += start.elapsed();
        Ok(match found {
            Some(pat) => Lookup::Hit(pat),
            None => Lookup::Miss,
        })
    }

    /// Radix descent: at each depth take the branch for the position's
    /// content first, then the `N` branch. Returns true when the walk can
    /// stop (first-match mode found a pattern).
    fn walk(node: &Node, key: &[KeySym], cursor: &mut Cursor<'_>) -> bool {
        cursor.visits += 1;
        if cursor.ts_enabled && cursor.t >= node.stamp {
            // Nothing in this subtree is newer than the last failed lookup
            // of this position: every chain below was already compared.
            return false;
        }
        match key.split_first() {
            None => {
                for pat in &node.chain {
                    if cursor.ts_enabled && pat.stamp() < cursor.t {
                        break;
                    }
                    cursor.compares += 1;
                    if matches(cursor.position, pat) && cursor.offer(pat) {
                        return true;
                    }
                }
                false
            }
            Some((sym, rest)) => {
                if let Some(child) = &node.children[sym.branch_index()] {
                    if Self::walk(child, rest, cursor) {
                        return true;
                    }
                }
                if let Some(child) = &node.children[KeySym::N.branch_index()] {
                    if Self::walk(child, rest, cursor) {
                        return true;
                    }
                }
                false
            }
        }
    }

    /// Checks whether a rebuild is due at the current entry count: every
    /// `small_interval` entries up to `small_threshold`, afterwards once
    /// the table has grown by `growth_factor` since the last rebuild.
    pub fn rebuild_due(&self) -> bool {
        let n = self.stats.entries;
        if n == 0 {
            return false;
        }
        if n <= self.config.small_threshold {
            n % self.config.small_interval == 0
        } else {
            n * 1000 >= self.last_rebuild_size * (1000 + self.config.growth_permille())
        }
    }

    /// Runs the reconstruction schedule: when a rebuild is due, the
    /// running cost phase closes (every scheduled checkpoint starts a new
    /// phase), the OCI is recomputed from the tallies, and the tree is
    /// rebuilt — unless the OCI is unchanged, in which case only the
    /// schedule bookkeeping advances. No-op in linear mode (there is no
    /// tree to rebuild).
    pub fn maintenance(&mut self) -> Maintenance {
        if self.mode == TableMode::Linear || !self.rebuild_due() {
            return Maintenance::Unchanged;
        }
        self.finish_phase();
        let new_oci = compute_oci(&self.tally, self.config.oci_fraction, self.side);
        if new_oci == self.oci {
            self.last_rebuild_size = self.stats.entries;
            return Maintenance::Unchanged;
        }
        self.rebuild_around(new_oci)
            .expect("recomputed OCI is valid for this side");
        Maintenance::Rebuilt
    }

    /// Rebuilds the store around a new OCI: closes the running cost phase
    /// and delegates to the rebuild. For explicit OCI control (tests,
    /// examples); the schedule calls the internals itself.
    pub fn reconstruct(&mut self, oci: Oci) -> Result<(), TableError> {
        if oci.iter().any(|p| p.index() >= cell_count(self.side)) {
            return Err(TableError::BadOci);
        }
        self.finish_phase();
        self.rebuild_around(oci)
    }

    /// Collects all patterns and reinserts them around `oci` in ascending
    /// stamp order, preserving stamps, so that node timestamps regain the
    /// newest-in-subtree invariant. Advances the rebuild bookkeeping.
    fn rebuild_around(&mut self, oci: Oci) -> Result<(), TableError> {
        if oci.iter().any(|p| p.index() >= cell_count(self.side)) {
            return Err(TableError::BadOci);
        }
        self.oci = oci;
        let mut all = self.patterns();
        all.sort_by_key(|p| p.stamp());
        self.stores = [Store::new(self.mode), Store::new(self.mode)];
        self.node_count = 0;
        for pat in all {
            self.store_pattern(pat);
        }
        self.stats.rebuild_count += 1;
        self.last_rebuild_size = self.stats.entries;
        Ok(())
    }

    /// All stored patterns in ascending stamp order.
    pub fn patterns(&self) -> Vec<PatternRef> {
        let mut out = Vec::with_capacity(self.stats.entries as usize);
        for store in &self.stores {
            match store {
                Store::Linear(list) => out.extend(list.iter().cloned()),
                Store::Radix(root) => {
                    fn collect(node: &Node, out: &mut Vec<PatternRef>) {
                        out.extend(node.chain.iter().cloned());
                        for child in node.children.iter().flatten() {
                            collect(child, out);
                        }
                    }
                    if let Some(root) = root {
                        collect(root, &mut out);
                    }
                }
            }
        }
        out.sort_by_key(|p| p.stamp());
        out
    }

    /// Stamp of the radix node reached by `prefix` from the given player's
    /// root (the newest stamp in that subtree), or `None` if absent.
    /// Diagnostic introspection for tests and examples.
    pub fn node_stamp(&self, player: Player, prefix: &PatternKey) -> Option<u64> {
        let mut node = match &self.stores[store_index(player)] {
            Store::Radix(root) => root.as_deref()?,
            Store::Linear(_) => return None,
        };
        for sym in prefix.syms() {
            node = node.children[sym.branch_index()].as_deref()?;
        }
        Some(node.stamp)
    }

    /// Chain stamps (newest first) at the leaf reached by `key`, or an
    /// empty vector if the path does not exist. Diagnostic introspection.
    pub fn chain_stamps(&self, player: Player, key: &PatternKey) -> Vec<u64> {
        let mut node = match &self.stores[store_index(player)] {
            Store::Radix(root) => match root.as_deref() {
                Some(n) => n,
                None => return Vec::new(),
            },
            Store::Linear(_) => return Vec::new(),
        };
        for sym in key.syms() {
            match node.children[sym.branch_index()].as_deref() {
                Some(child) => node = child,
                None => return Vec::new(),
            }
        }
        node.chain.iter().map(|p| p.stamp()).collect()
    }
}

impl fmt::Debug for PatternTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PatternTable")
            .field("side", &self.side)
            .field("mode", &self.mode)
            .field("timestamps", &self.timestamps_enabled)
            .field("entries", &self.stats.entries)
            .field("oci_len", &self.oci.len())
            .field("node_count", &self.node_count)
            .field("rebuilds", &self.stats.rebuild_count)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{parse_position, Zone};
    use crate::pattern::pattern_from;

    fn at(coord: &str, side: u8) -> Intersection {
        Intersection::from_coord(coord, side).unwrap()
    }

    fn pos(text: &str) -> Position {
        parse_position(text).unwrap()
    }

    fn oci(coords: &[&str], side: u8) -> Oci {
        Oci::new(coords.iter().map(|c| at(c, side))).unwrap()
    }

    /// A pattern for `player` whose zone/content are given as
    /// (coord, content-char) pairs, where '.' is empty in the zone.
    fn pat(side: u8, player: Player, cells: &[(&str, char)]) -> ZonePattern {
        let mut zone = Zone::empty(side);
        let mut black = Zone::empty(side);
        let mut white = Zone::empty(side);
        for &(coord, c) in cells {
            let p = at(coord, side);
            zone.insert(p);
            match c {
                'B' => black.insert(p),
                'W' => white.insert(p),
                '.' => {}
                _ => panic!("bad content char {c:?}"),
            }
        }
        ZonePattern::new(player, zone, black, white).unwrap()
    }

    fn table(mode: TableMode, timestamps: bool) -> PatternTable {
        PatternTable::new(3, mode, timestamps, ReconstructionConfig::default()).unwrap()
    }

    #[test]
    fn fresh_table_lookup_is_a_miss_with_zero_cost() {
        for mode in [TableMode::Radix, TableMode::Linear] {
            let mut tbl = PatternTable::new(7, mode, true, ReconstructionConfig::default()).unwrap();
            assert_eq!(tbl.stats().entries, 0);
            let p = pos("size: 7\nto_move: B\n.......\n.......\n.......\n.......\n.......\n.......\n.......\n");
            let mut s = SearchStamp::new();
            let r = tbl.lookup(&p, &mut s).unwrap();
            assert!(!r.is_hit());
            assert_eq!(tbl.stats().lookups, 1);
            assert_eq!(tbl.stats().node_visits, 0);
            assert_eq!(tbl.stats().list_compares, 0);
        }
    }

    #[test]
    fn insert_then_lookup_round_trip() {
        let mut tbl = table(TableMode::Radix, true);
        let p = pos("size: 3\nto_move: B\n...\nXO.\n...\n");
        let zone = Zone::from_coords(3, &["A2", "B2"]).unwrap();
        tbl.insert(pattern_from(&p, zone)).unwrap();
        assert_eq!(tbl.stats().entries, 1);
        assert_eq!(tbl.global_stamp(), 1);
        let mut s = SearchStamp::new();
        let r = tbl.lookup(&p, &mut s).unwrap();
        let hit = r.hit().expect("pattern matches its source position");
        assert_eq!(hit.stamp(), 1);
        assert_eq!(hit.zone(), zone);
    }

    #[test]
    fn first_insert_with_two_point_oci_builds_the_key_path() {
        let mut tbl = table(TableMode::Radix, true);
        tbl.reconstruct(oci(&["A1", "B1"], 3)).unwrap();
        tbl.insert(pat(3, Player::Black, &[("A1", 'B')])).unwrap();
        // Key is "BN": A1 is black in the zone, B1 is outside the zone.
        assert_eq!(tbl.node_stamp(Player::Black, &PatternKey::parse("").unwrap()), Some(1));
        assert_eq!(tbl.node_stamp(Player::Black, &PatternKey::parse("B").unwrap()), Some(1));
        assert_eq!(tbl.node_stamp(Player::Black, &PatternKey::parse("BN").unwrap()), Some(1));
        assert_eq!(tbl.chain_stamps(Player::Black, &PatternKey::parse("BN").unwrap()), vec![1]);
        // Root, B child, N child.
        assert_eq!(tbl.node_count(), 3);
    }

    #[test]
    fn equal_keys_share_a_chain_newest_first() {
        let mut tbl = table(TableMode::Radix, true);
        tbl.reconstruct(oci(&["A1", "B1"], 3)).unwrap();
        // Same key "BN" (B1 outside both zones), different patterns.
        tbl.insert(pat(3, Player::Black, &[("A1", 'B')])).unwrap();
        tbl.insert(pat(3, Player::Black, &[("A1", 'B'), ("C3", 'W')]))
            .unwrap();
        let key = PatternKey::parse("BN").unwrap();
        assert_eq!(tbl.chain_stamps(Player::Black, &key), vec![2, 1]);
    }

    #[test]
    fn patterns_with_and_without_a_crucial_point_split_between_branch_and_n() {
        // OCI (E2, D1) on 5×5: patterns that skip D1 go under N at depth 2,
        // patterns that include both points go under concrete branches.
        let mut tbl = PatternTable::new(5, TableMode::Radix, true, ReconstructionConfig::default())
            .unwrap();
        tbl.reconstruct(oci(&["E2", "D1"], 5)).unwrap();
        let phi_b = pat(5, Player::White, &[("E2", 'B'), ("E1", 'W')]);
        let phi_b2 = pat(5, Player::White, &[("E2", 'B'), ("D2", 'W')]);
        let phi_c = pat(5, Player::White, &[("E2", 'B'), ("D1", 'W')]);
        let phi_c2 = pat(5, Player::White, &[("E2", 'B'), ("D1", '.')]);
        for p in [&phi_b, &phi_b2, &phi_c, &phi_c2] {
            tbl.insert(p.clone()).unwrap();
        }
        assert_eq!(
            tbl.chain_stamps(Player::White, &PatternKey::parse("BN").unwrap()),
            vec![2, 1]
        );
        assert_eq!(
            tbl.chain_stamps(Player::White, &PatternKey::parse("BW").unwrap()),
            vec![3]
        );
        assert_eq!(
            tbl.chain_stamps(Player::White, &PatternKey::parse("BE").unwrap()),
            vec![4]
        );
    }

    #[test]
    fn lookups_only_see_the_matching_players_store() {
        let mut tbl = table(TableMode::Radix, true);
        tbl.insert(pat(3, Player::Black, &[])).unwrap(); // empty zone: matches any black-to-move position
        let white_turn = pos("size: 3\nto_move: W\n...\n...\n...\n");
        let black_turn = pos("size: 3\nto_move: B\n...\n...\n...\n");
        let mut s = SearchStamp::new();
        assert!(!tbl.lookup(&white_turn, &mut s).unwrap().is_hit());
        let mut s2 = SearchStamp::new();
        assert!(tbl.lookup(&black_turn, &mut s2).unwrap().is_hit());
    }

    #[test]
    fn side_mismatch_is_an_error() {
        let mut tbl = table(TableMode::Radix, true);
        let p5 = pos("size: 5\nto_move: B\n.....\n.....\n.....\n.....\n.....\n");
        let mut s = SearchStamp::new();
        assert!(matches!(
            tbl.lookup(&p5, &mut s),
            Err(TableError::SideMismatch { table: 3, given: 5 })
        ));
        let pat5 = pattern_from(&p5, Zone::empty(5));
        assert!(matches!(
            tbl.insert(pat5),
            Err(TableError::SideMismatch { table: 3, given: 5 })
        ));
    }

    #[test]
    fn timestamped_walk_skips_stale_subtrees_and_chain_suffixes() {
        // Two-point OCI (A1, B1). History is arranged so the black tree has:
        //   root t=48, B child t=48,
        //   BW leaf with chain [32, 14, 7] (none matching the query),
        //   BN leaf with chain [22] (not matching),
        //   BB leaf with chain [48] (different branch, never visited).
        // Querying with T=25 must visit root, B, BW-leaf, BN-leaf (4 visits),
        // compare only the stamp-32 entry (stop before 14 < T), skip the BN
        // subtree entirely (T=25 ≥ 22), miss, and raise T to 48.
        let build = |timestamps: bool| {
            let mut tbl = table(TableMode::Radix, timestamps);
            tbl.reconstruct(oci(&["A1", "B1"], 3)).unwrap();
            let filler = |tbl: &mut PatternTable| {
                // White-store pattern: advances the global stamp without
                // touching the black tree.
                tbl.insert(pat(3, Player::White, &[("C3", 'W')])).unwrap();
            };
            let black_bw = |tbl: &mut PatternTable, extra: (&str, char)| {
                tbl.insert(pat(3, Player::Black, &[("A1", 'B'), ("B1", 'W'), extra]))
                    .unwrap();
            };
            for _ in 1..7 {
                filler(&mut tbl);
            }
            black_bw(&mut tbl, ("C1", 'B')); // stamp 7
            for _ in 8..14 {
                filler(&mut tbl);
            }
            black_bw(&mut tbl, ("C2", 'W')); // stamp 14
            for _ in 15..22 {
                filler(&mut tbl);
            }
            tbl.insert(pat(3, Player::Black, &[("A1", 'B'), ("A2", 'W')]))
                .unwrap(); // stamp 22, key BN
            for _ in 23..32 {
                filler(&mut tbl);
            }
            black_bw(&mut tbl, ("A3", 'B')); // stamp 32
            for _ in 33..48 {
                filler(&mut tbl);
            }
            tbl.insert(pat(3, Player::Black, &[("A1", 'B'), ("B1", 'B')]))
                .unwrap(); // stamp 48, key BB
            assert_eq!(tbl.global_stamp(), 48);
            tbl
        };

        let mut ts = build(true);
        assert_eq!(ts.node_stamp(Player::Black, &PatternKey::parse("").unwrap()), Some(48));
        assert_eq!(ts.node_stamp(Player::Black, &PatternKey::parse("B").unwrap()), Some(48));
        assert_eq!(ts.node_stamp(Player::Black, &PatternKey::parse("BW").unwrap()), Some(32));
        assert_eq!(ts.node_stamp(Player::Black, &PatternKey::parse("BN").unwrap()), Some(22));
        assert_eq!(ts.node_stamp(Player::Black, &PatternKey::parse("BB").unwrap()), Some(48));
        assert_eq!(
            ts.chain_stamps(Player::Black, &PatternKey::parse("BW").unwrap()),
            vec![32, 14, 7]
        );

        let query = pos("size: 3\nto_move: B\n...\n...\nXO.\n");
        let mut s = SearchStamp::with_value(25);
        let r = ts.lookup(&query, &mut s).unwrap();
        assert!(!r.is_hit());
        assert_eq!(ts.stats().node_visits, 4);
        assert_eq!(ts.stats().list_compares, 1);
        assert_eq!(s.value(), 48);

        // Immediate re-lookup: only the root check, no compares.
        let r = ts.lookup(&query, &mut s).unwrap();
        assert!(!r.is_hit());
        assert_eq!(ts.stats().node_visits, 5);
        assert_eq!(ts.stats().list_compares, 1);

        // The timestamp-free twin does strictly more work for the same miss.
        let mut nt = build(false);
        let mut s_nt = SearchStamp::new();
        let r = nt.lookup(&query, &mut s_nt).unwrap();
        assert!(!r.is_hit());
        assert_eq!(nt.stats().node_visits, 4);
        assert_eq!(nt.stats().list_compares, 4);
        // Timestamps disabled: the stamp is never advanced.
        assert_eq!(s_nt.value(), 0);
        assert!(ts.stats().cost() < nt.stats().cost());
    }

    #[test]
    fn linear_store_skips_chain_suffix_by_stamp() {
        let mut tbl = table(TableMode::Linear, true);
        for i in 0..9 {
            // None of these match the all-empty query board (every zone
            // cell holds a white stone).
            let coord = format!("{}{}", ['A', 'B', 'C'][i % 3], (i / 3) + 1);
            tbl.insert(pat(3, Player::Black, &[(&coord, 'W')])).unwrap();
        }
        let p = pos("size: 3\nto_move: B\n...\n...\n...\n");
        let mut s = SearchStamp::new();
        assert!(!tbl.lookup(&p, &mut s).unwrap().is_hit());
        assert_eq!(tbl.stats().list_compares, 9);
        assert_eq!(s.value(), 9);
        // Re-query: the scan stops at the first entry with stamp < T = 9,
        // so only the head entry (stamp 9) is compared again.
        assert!(!tbl.lookup(&p, &mut s).unwrap().is_hit());
        assert_eq!(tbl.stats().list_compares, 10);
        assert!(!tbl.lookup(&p, &mut s).unwrap().is_hit());
        assert_eq!(tbl.stats().list_compares, 11);
    }

    #[test]
    fn rebuild_schedule_is_exact() {
        let mut tbl = table(TableMode::Radix, true);
        // Each century of inserts hammers a different intersection, walking
        // the board in descending index order so the tie-broken OCI really
        // changes at every due point (the newly dominant cell jumps to the
        // front, ahead of the ascending-index ties).
        let coords = ["C3", "B3", "A3", "C2", "B2", "A2", "C1", "B1", "A1"];
        let mut expected_rebuilds = 0;
        for i in 1..=1105u64 {
            let century = ((i - 1) / 100) as usize;
            let coord = coords[century % coords.len()];
            tbl.insert(pat(3, Player::Black, &[(coord, 'B')])).unwrap();
            if i <= 1000 {
                if i % 100 == 0 {
                    expected_rebuilds += 1;
                }
                if i == 99 {
                    // Still a single root chain before the first rebuild.
                    assert_eq!(tbl.node_count(), 1, "entries 1..99 stay linear");
                    assert_eq!(tbl.stats().rebuild_count, 0);
                }
            } else if i == 1100 {
                expected_rebuilds += 1;
            }
            assert_eq!(
                tbl.stats().rebuild_count,
                expected_rebuilds,
                "rebuild count after {i} inserts"
            );
        }
        // 1105 entries: next growth point is ceil(1100 * 1.1) = 1210.
        assert_eq!(tbl.last_rebuild_size(), 1100);
    }

    #[test]
    fn maintenance_with_unchanged_oci_advances_bookkeeping_without_rebuilding() {
        let mut tbl = table(TableMode::Radix, true);
        // Identical zones forever: after the first rebuild the OCI can
        // never change, so every later due point is Unchanged.
        for i in 1..=300u64 {
            tbl.insert(pat(3, Player::Black, &[("B2", 'B')])).unwrap();
            let expected = match i {
                i if i < 100 => (0, 0),
                i if i < 200 => (1, 100),
                i if i < 300 => (1, 200),
                _ => (1, 300),
            };
            assert_eq!(
                (tbl.stats().rebuild_count, tbl.last_rebuild_size()),
                expected,
                "after {i} inserts"
            );
        }
    }

    #[test]
    fn maintenance_is_a_no_op_in_linear_mode() {
        let mut tbl = table(TableMode::Linear, true);
        for _ in 0..250 {
            tbl.insert(pat(3, Player::Black, &[("B2", 'B')])).unwrap();
        }
        assert_eq!(tbl.stats().rebuild_count, 0);
        assert_eq!(tbl.maintenance(), Maintenance::Unchanged);
        assert_eq!(tbl.node_count(), 0);
    }

    #[test]
    fn compute_oci_orders_by_count_then_index() {
        // All-zero tallies on 3×3 with fraction 0.8: floor(7.2) = 7 points,
        // ties broken by ascending index.
        let z = compute_oci(&[0; 9], 0.8, 3);
        assert_eq!(
            z.as_slice(),
            (0..7)
                .map(Intersection::from_index_unchecked)
                .collect::<Vec<_>>()
                .as_slice()
        );
        // Distinct counts dominate the order.
        let mut tally = [0u64; 9];
        tally[4] = 5;
        tally[7] = 9;
        tally[2] = 5;
        let z = compute_oci(&tally, 0.34, 3); // floor(3.06) = 3 points
        assert_eq!(z.len(), 3);
        let idx: Vec<usize> = z.iter().map(|p| p.index()).collect();
        assert_eq!(idx, vec![7, 2, 4]);
        // Fraction small enough to floor to zero still keeps one point.
        assert_eq!(compute_oci(&tally, 0.05, 3).len(), 1);
    }

    #[test]
    fn reconstruct_preserves_stamps_and_lookup_results() {
        let mut tbl = table(TableMode::Radix, true);
        let boards = [
            "size: 3\nto_move: B\nX..\n.O.\n..X\n",
            "size: 3\nto_move: B\n.O.\nXX.\n...\n",
            "size: 3\nto_move: W\n.X.\n.XO\nO..\n",
            "size: 3\nto_move: W\n...\nOO.\nXX.\n",
        ];
        let zones = [
            &["A1", "B2"][..],
            &["B3", "A2", "B2"][..],
            &["B3", "C2"][..],
            &["A1", "B1", "A2"][..],
        ];
        for (b, z) in boards.iter().zip(&zones) {
            let p = pos(b);
            tbl.insert(pattern_from(&p, Zone::from_coords(3, z).unwrap()))
                .unwrap();
        }
        let stamps_before: Vec<u64> = tbl.patterns().iter().map(|p| p.stamp()).collect();
        let results_before: Vec<Option<PatternRef>> = boards
            .iter()
            .map(|b| {
                let mut s = SearchStamp::new();
                tbl.lookup(&pos(b), &mut s).unwrap().hit().cloned()
            })
            .collect();

        let rebuilds = tbl.stats().rebuild_count;
        tbl.reconstruct(oci(&["C3", "B2", "A1", "B1"], 3)).unwrap();
        assert_eq!(tbl.stats().rebuild_count, rebuilds + 1);

        let stamps_after: Vec<u64> = tbl.patterns().iter().map(|p| p.stamp()).collect();
        assert_eq!(stamps_before, stamps_after);
        for (b, before) in boards.iter().zip(&results_before) {
            let mut s = SearchStamp::new();
            let after = tbl.lookup(&pos(b), &mut s).unwrap().hit().cloned();
            assert_eq!(
                before.as_deref(),
                after.as_deref(),
                "lookup changed across reconstruct for {b:?}"
            );
        }
    }

    #[test]
    fn reconstruct_rejects_out_of_range_oci() {
        let mut tbl = table(TableMode::Radix, true);
        let oci5 = Oci::new([Intersection::from_index_unchecked(10)]).unwrap();
        assert_eq!(tbl.reconstruct(oci5), Err(TableError::BadOci));
        assert!(Oci::new([
            Intersection::from_index_unchecked(1),
            Intersection::from_index_unchecked(1)
        ])
        .is_err());
    }

    #[test]
    fn smallest_match_mode_scans_all_and_counts_divergence() {
        let mut tbl = table(TableMode::Radix, true);
        tbl.reconstruct(oci(&["A1", "B1"], 3)).unwrap();
        // Small zone first (key BN), larger zone second (key BE). The walk
        // reaches the concrete E branch before N, so the first match is the
        // larger, newer pattern.
        tbl.insert(pat(3, Player::Black, &[("A1", 'B')])).unwrap();
        tbl.insert(pat(3, Player::Black, &[("A1", 'B'), ("B1", '.'), ("C3", '.')]))
            .unwrap();
        let query = pos("size: 3\nto_move: B\n...\n...\nX..\n");

        let mut s = SearchStamp::new();
        let first = tbl.lookup(&query, &mut s).unwrap();
        assert_eq!(first.hit().unwrap().zone().len(), 3);
        assert_eq!(tbl.smallest_diff_hits(), 0);

        tbl.set_match_mode(MatchMode::Smallest);
        let mut s = SearchStamp::new();
        let smallest = tbl.lookup(&query, &mut s).unwrap();
        assert_eq!(smallest.hit().unwrap().zone().len(), 1);
        assert_eq!(tbl.smallest_diff_hits(), 1);
    }

    #[test]
    fn phase_records_split_at_rebuilds() {
        let mut tbl = table(TableMode::Radix, true);
        let p = pos("size: 3\nto_move: B\n...\n...\n...\n");
        for i in 0..150u64 {
            let coords = ["A1", "B1", "C1", "A2", "B2", "C2", "A3", "B3", "C3"];
            let mut s = SearchStamp::new();
            tbl.lookup(&p, &mut s).unwrap();
            tbl.insert(pat(3, Player::Black, &[(coords[(i % 9) as usize], 'W')]))
                .unwrap();
        }
        tbl.finish_phase();
        // One rebuild at 100 entries → two phases: lookups 100 and 50.
        assert_eq!(tbl.stats().rebuild_count, 1);
        assert_eq!(tbl.phases().len(), 2);
        assert_eq!(tbl.phases()[0].phase(), 1);
        assert_eq!(tbl.phases()[0].lookups(), 100);
        assert_eq!(tbl.phases()[1].lookups(), 50);
        assert!(tbl.phases()[1].n_avg() > 1.0);
        assert!(tbl.phases()[0].c_avg_miss() > 0.0);
    }
}
