//! Go board core for small square boards (side ≤ 9).
//!
//! Positions are immutable bitboard values: one `u128` mask per color plus
//! the player to move. All rule operations (`play`, `legal_moves`) are pure
//! and return fresh positions. Captures follow the usual last-liberty rule,
//! suicide is illegal, `Pass` is always legal, and repetition is permitted —
//! callers that search bound the depth instead of tracking ko.
//!
//! The module also provides [`benson_safe_zone`], the static life test used
//! as the search terminal (a block is safe when it has two vital enclosed
//! regions under the standard iterative pruning), and
//! [`capturable_when_passing`], a brute-force reference oracle that checks
//! safety by letting the attacker play arbitrarily while the owner always
//! passes. The oracle exists so tests can cross-check the static test; it is
//! exponential and only meant for boards up to about 5×5.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Largest supported board side. Keeps `side * side` within the 128-bit
/// masks with room to spare and the coordinate letters single-character.
pub const MAX_SIDE: u8 = 9;

/// Column letters in board coordinates; `I` is skipped by Go convention.
const COL_LETTERS: [char; MAX_SIDE as usize] = ['A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'J'];

/// Errors raised by board construction and rule operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("board side {0} out of range 1..={MAX_SIDE}")]
    BadSide(u8),
    #[error("intersection index {index} out of range for side {side}")]
    BadIndex { index: usize, side: u8 },
    #[error("malformed coordinate {0:?}")]
    BadCoord(String),
    #[error("black and white stones overlap")]
    Overlap,
    #[error("block at {0} has no liberties")]
    NoLiberties(String),
    #[error("intersection {0} is occupied")]
    Occupied(String),
    #[error("playing at {0} would be suicide")]
    Suicide(String),
}

/// The two players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Black,
    White,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Black => Player::White,
            Player::White => Player::Black,
        }
    }

    /// One-letter name used by problem files and CSV output.
    pub fn letter(self) -> char {
        match self {
            Player::Black => 'B',
            Player::White => 'W',
        }
    }

    pub fn from_letter(c: char) -> Option<Player> {
        match c {
            'B' => Some(Player::Black),
            'W' => Some(Player::White),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Contents of one intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Empty,
    Black,
    White,
}

impl From<Player> for Color {
    fn from(p: Player) -> Color {
        match p {
            Player::Black => Color::Black,
            Player::White => Color::White,
        }
    }
}

/// A board point, stored as a flat index `row * side + col` with row 0 at
/// the bottom. The side is not stored; accessors that need geometry take it
/// as a parameter so the type stays a plain copyable index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Intersection(u16);

impl Intersection {
    pub fn new(index: usize, side: u8) -> Result<Intersection, BoardError> {
        if side == 0 || side > MAX_SIDE {
            return Err(BoardError::BadSide(side));
        }
        if index >= cell_count(side) {
            return Err(BoardError::BadIndex { index, side });
        }
        Ok(Intersection(index as u16))
    }

    pub fn from_row_col(row: u8, col: u8, side: u8) -> Result<Intersection, BoardError> {
        if side == 0 || side > MAX_SIDE {
            return Err(BoardError::BadSide(side));
        }
        if row >= side || col >= side {
            return Err(BoardError::BadIndex {
                index: row as usize * side as usize + col as usize,
                side,
            });
        }
        Ok(Intersection(row as u16 * side as u16 + col as u16))
    }

    /// Parses coordinates like `"E2"` (column letter, 1-based row number).
    pub fn from_coord(s: &str, side: u8) -> Result<Intersection, BoardError> {
        if side == 0 || side > MAX_SIDE {
            return Err(BoardError::BadSide(side));
        }
        let mut chars = s.chars();
        let col_char = chars
            .next()
            .ok_or_else(|| BoardError::BadCoord(s.to_string()))?
            .to_ascii_uppercase();
        let col = COL_LETTERS
            .iter()
            .position(|&c| c == col_char)
            .ok_or_else(|| BoardError::BadCoord(s.to_string()))?;
        let row: u8 = chars
            .as_str()
            .parse::<u8>()
            .ok()
            .and_then(|r| r.checked_sub(1))
            .ok_or_else(|| BoardError::BadCoord(s.to_string()))?;
        if col >= side as usize || row >= side {
            return Err(BoardError::BadCoord(s.to_string()));
        }
        Ok(Intersection(row as u16 * side as u16 + col as u16))
    }

    pub(crate) fn from_index_unchecked(index: usize) -> Intersection {
        Intersection(index as u16)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Row in `[0, side)`, counted from the bottom (display row minus one).
    pub fn row(self, side: u8) -> u8 {
        (self.0 / side as u16) as u8
    }

    pub fn col(self, side: u8) -> u8 {
        (self.0 % side as u16) as u8
    }

    /// Renders the coordinate string, e.g. index 0 → `"A1"`.
    pub fn coord(self, side: u8) -> String {
        format!(
            "{}{}",
            COL_LETTERS[self.col(side) as usize],
            self.row(side) + 1
        )
    }
}

impl fmt::Debug for Intersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Intersection({})", self.0)
    }
}

/// A set of intersections on a board of a fixed side.
///
/// Used for relevance zones, block stones, and liberty sets. Set operations
/// on zones of different sides panic: mixing board sizes is a programming
/// error, not a runtime condition.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zone {
    side: u8,
    bits: u128,
}

impl Zone {
    pub fn empty(side: u8) -> Zone {
        debug_assert!(side >= 1 && side <= MAX_SIDE);
        Zone { side, bits: 0 }
    }

    /// The set of all `side * side` intersections.
    pub fn full(side: u8) -> Zone {
        Zone {
            side,
            bits: full_mask(side),
        }
    }

    pub fn from_intersections<I>(side: u8, points: I) -> Zone
    where
        I: IntoIterator<Item = Intersection>,
    {
        let mut z = Zone::empty(side);
        for p in points {
            z.insert(p);
        }
        z
    }

    /// Builds a zone from coordinate strings; convenient in tests.
    pub fn from_coords(side: u8, coords: &[&str]) -> Result<Zone, BoardError> {
        let mut z = Zone::empty(side);
        for c in coords {
            z.insert(Intersection::from_coord(c, side)?);
        }
        Ok(z)
    }

    pub(crate) fn from_bits(side: u8, bits: u128) -> Zone {
        debug_assert_eq!(bits & !full_mask(side), 0);
        Zone { side, bits }
    }

    pub(crate) fn bits(self) -> u128 {
        self.bits
    }

    pub fn side(self) -> u8 {
        self.side
    }

    pub fn insert(&mut self, p: Intersection) {
        debug_assert!(p.index() < cell_count(self.side));
        self.bits |= 1u128 << p.index();
    }

    pub fn remove(&mut self, p: Intersection) {
        self.bits &= !(1u128 << p.index());
    }

    pub fn contains(self, p: Intersection) -> bool {
        p.index() < cell_count(self.side) && self.bits >> p.index() & 1 == 1
    }

    pub fn len(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn union(self, other: Zone) -> Zone {
        assert_eq!(self.side, other.side, "zone side mismatch");
        Zone {
            side: self.side,
            bits: self.bits | other.bits,
        }
    }

    pub fn union_with(&mut self, other: Zone) {
        assert_eq!(self.side, other.side, "zone side mismatch");
        self.bits |= other.bits;
    }

    pub fn intersection(self, other: Zone) -> Zone {
        assert_eq!(self.side, other.side, "zone side mismatch");
        Zone {
            side: self.side,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(self, other: Zone) -> Zone {
        assert_eq!(self.side, other.side, "zone side mismatch");
        Zone {
            side: self.side,
            bits: self.bits & !other.bits,
        }
    }

    pub fn complement(self) -> Zone {
        Zone {
            side: self.side,
            bits: full_mask(self.side) & !self.bits,
        }
    }

    pub fn is_subset_of(self, other: Zone) -> bool {
        assert_eq!(self.side, other.side, "zone side mismatch");
        self.bits & !other.bits == 0
    }

    /// Iterates members in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = Intersection> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(Intersection::from_index_unchecked(i))
            }
        })
    }

    /// Coordinate strings of all members, ascending by index.
    pub fn coords(self) -> Vec<String> {
        self.iter().map(|p| p.coord(self.side)).collect()
    }
}

impl fmt::Debug for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Zone({}: {})", self.side, self.coords().join(" "))
    }
}

/// A maximal connected set of same-colored stones and its liberties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub player: Player,
    pub stones: Zone,
    pub liberties: Zone,
}

/// A move: either a pass or a stone placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Play(Intersection),
    Pass,
}

impl Move {
    /// `"pass"` or the coordinate string.
    pub fn describe(self, side: u8) -> String {
        match self {
            Move::Pass => "pass".to_string(),
            Move::Play(p) => p.coord(side),
        }
    }
}

/// An immutable board position: stone masks per color plus the player to
/// move. Every reachable value satisfies the legality invariant that no
/// block has zero liberties; constructors validate it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Position {
    side: u8,
    black: u128,
    white: u128,
    to_move: Player,
}

impl Position {
    /// Creates an empty board.
    pub fn empty(side: u8, to_move: Player) -> Result<Position, BoardError> {
        if side == 0 || side > MAX_SIDE {
            return Err(BoardError::BadSide(side));
        }
        Ok(Position {
            side,
            black: 0,
            white: 0,
            to_move,
        })
    }

    /// Builds a position from explicit stone sets, validating legality.
    pub fn from_stones<B, W>(
        side: u8,
        black: B,
        white: W,
        to_move: Player,
    ) -> Result<Position, BoardError>
    where
        B: IntoIterator<Item = Intersection>,
        W: IntoIterator<Item = Intersection>,
    {
        let b = Zone::from_intersections(side, black);
        let w = Zone::from_intersections(side, white);
        Position::from_masks(side, b.bits(), w.bits(), to_move)
    }

    pub(crate) fn from_masks(
        side: u8,
        black: u128,
        white: u128,
        to_move: Player,
    ) -> Result<Position, BoardError> {
        if side == 0 || side > MAX_SIDE {
            return Err(BoardError::BadSide(side));
        }
        let full = full_mask(side);
        if black & !full != 0 || white & !full != 0 {
            return Err(BoardError::BadIndex {
                index: ((black | white) & !full).trailing_zeros() as usize,
                side,
            });
        }
        if black & white != 0 {
            return Err(BoardError::Overlap);
        }
        let pos = Position {
            side,
            black,
            white,
            to_move,
        };
        let empty = full & !(black | white);
        for mask in [black, white] {
            let mut rest = mask;
            while rest != 0 {
                let seed = rest & rest.wrapping_neg();
                let comp = flood(seed, mask, side);
                if neighbors_mask(comp, side) & empty == 0 {
                    let at = Intersection::from_index_unchecked(comp.trailing_zeros() as usize);
                    return Err(BoardError::NoLiberties(at.coord(side)));
                }
                rest &= !comp;
            }
        }
        Ok(pos)
    }

    pub fn side(&self) -> u8 {
        self.side
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn color_at(&self, p: Intersection) -> Color {
        let bit = 1u128 << p.index();
        if self.black & bit != 0 {
            Color::Black
        } else if self.white & bit != 0 {
            Color::White
        } else {
            Color::Empty
        }
    }

    pub fn stones(&self, player: Player) -> Zone {
        let bits = match player {
            Player::Black => self.black,
            Player::White => self.white,
        };
        Zone::from_bits(self.side, bits)
    }

    pub fn empties(&self) -> Zone {
        Zone::from_bits(
            self.side,
            full_mask(self.side) & !(self.black | self.white),
        )
    }

    pub(crate) fn stone_bits(&self, player: Player) -> u128 {
        match player {
            Player::Black => self.black,
            Player::White => self.white,
        }
    }

    /// Plays a move and returns the resulting position.
    ///
    /// Stone placements remove captured opponent blocks first, then reject
    /// the move as suicide if the placed stone's block would end up without
    /// liberties. `Pass` only flips the player to move.
    pub fn play(&self, m: Move) -> Result<Position, BoardError> {
        let at = match m {
            Move::Pass => {
                let mut next = self.clone();
                next.to_move = self.to_move.opponent();
                return Ok(next);
            }
            Move::Play(p) => p,
        };
        if at.index() >= cell_count(self.side) {
            return Err(BoardError::BadIndex {
                index: at.index(),
                side: self.side,
            });
        }
        let bit = 1u128 << at.index();
        if (self.black | self.white) & bit != 0 {
            return Err(BoardError::Occupied(at.coord(self.side)));
        }
        let (mut own, mut opp) = match self.to_move {
            Player::Black => (self.black, self.white),
            Player::White => (self.white, self.black),
        };
        own |= bit;

        // Capture: opponent blocks adjacent to the new stone that are left
        // without liberties.
        let mut adjacent = neighbors_mask(bit, self.side) & opp;
        let mut captured = 0u128;
        while adjacent != 0 {
            let seed = adjacent & adjacent.wrapping_neg();
            let comp = flood(seed, opp, self.side);
            let empty_after = full_mask(self.side) & !(own | opp);
            if neighbors_mask(comp, self.side) & empty_after == 0 {
                captured |= comp;
            }
            adjacent &= !comp;
        }
        opp &= !captured;

        let empty_after = full_mask(self.side) & !(own | opp);
        let own_comp = flood(bit, own, self.side);
        if neighbors_mask(own_comp, self.side) & empty_after == 0 {
            return Err(BoardError::Suicide(at.coord(self.side)));
        }

        let (black, white) = match self.to_move {
            Player::Black => (own, opp),
            Player::White => (opp, own),
        };
        Ok(Position {
            side: self.side,
            black,
            white,
            to_move: self.to_move.opponent(),
        })
    }

    /// All moves for the player to move: every empty cell where `play`
    /// succeeds, in ascending index order, then `Pass`.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut moves = Vec::new();
        for p in self.empties().iter() {
            if self.play(Move::Play(p)).is_ok() {
                moves.push(Move::Play(p));
            }
        }
        moves.push(Move::Pass);
        moves
    }

    /// All of `player`'s blocks, ordered by their lowest stone index.
    pub fn blocks(&self, player: Player) -> Vec<Block> {
        let stones = self.stone_bits(player);
        let empty = full_mask(self.side) & !(self.black | self.white);
        let mut out = Vec::new();
        let mut rest = stones;
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let comp = flood(seed, stones, self.side);
            out.push(Block {
                player,
                stones: Zone::from_bits(self.side, comp),
                liberties: Zone::from_bits(self.side, neighbors_mask(comp, self.side) & empty),
            });
            rest &= !comp;
        }
        out
    }

    /// The block containing the stone at `p`, if any.
    pub fn block_at(&self, p: Intersection) -> Option<Block> {
        let player = match self.color_at(p) {
            Color::Empty => return None,
            Color::Black => Player::Black,
            Color::White => Player::White,
        };
        let stones = self.stone_bits(player);
        let comp = flood(1u128 << p.index(), stones, self.side);
        let empty = full_mask(self.side) & !(self.black | self.white);
        Some(Block {
            player,
            stones: Zone::from_bits(self.side, comp),
            liberties: Zone::from_bits(self.side, neighbors_mask(comp, self.side) & empty),
        })
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\n{}", render_position(self))
    }
}

/// Returns the player's unconditionally safe blocks and their zone.
///
/// A block is safe when, after iteratively pruning, it retains at least two
/// vital regions: enclosed regions of non-player points whose every empty
/// point is a liberty of the block. The pruning alternates between dropping
/// blocks with fewer than two vital regions and dropping regions adjacent to
/// dropped blocks, until stable. The zone is the union of the safe blocks'
/// stones and all points of the surviving regions vital to at least one safe
/// block; it is empty exactly when no block is safe.
pub fn benson_safe_zone(p: &Position, player: Player) -> (Vec<Block>, Zone) {
    let side = p.side();
    let blocks = p.blocks(player);
    if blocks.is_empty() {
        return (Vec::new(), Zone::empty(side));
    }
    let full = full_mask(side);
    let stones: u128 = blocks.iter().fold(0, |acc, b| acc | b.stones.bits());
    let empty = full & !(p.stone_bits(Player::Black) | p.stone_bits(Player::White));

    // Regions: connected components of non-player points (empty cells and
    // opponent stones alike).
    let mut regions: Vec<u128> = Vec::new();
    let mut rest = full & !stones;
    while rest != 0 {
        let seed = rest & rest.wrapping_neg();
        let comp = flood(seed, full & !stones, side);
        regions.push(comp);
        rest &= !comp;
    }

    // vital[r][b]: every empty point of region r is a liberty of block b
    // (and r has at least one empty point, so a solid opponent pocket never
    // counts as an eye).
    let vital: Vec<Vec<bool>> = regions
        .iter()
        .map(|&r| {
            let r_empty = r & empty;
            blocks
                .iter()
                .map(|b| r_empty != 0 && r_empty & !b.liberties.bits() == 0)
                .collect()
        })
        .collect();

    let mut block_alive = vec![true; blocks.len()];
    let mut region_alive = vec![true; regions.len()];
    loop {
        let mut changed = false;
        for bi in 0..blocks.len() {
            if !block_alive[bi] {
                continue;
            }
            let vitals = (0..regions.len())
                .filter(|&ri| region_alive[ri] && vital[ri][bi])
                .count();
            if vitals < 2 {
                block_alive[bi] = false;
                changed = true;
            }
        }
        for (ri, &r) in regions.iter().enumerate() {
            if !region_alive[ri] {
                continue;
            }
            let touches_dead = blocks.iter().enumerate().any(|(bi, b)| {
                !block_alive[bi] && neighbors_mask(r, side) & b.stones.bits() != 0
            });
            if touches_dead {
                region_alive[ri] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let safe: Vec<Block> = blocks
        .iter()
        .enumerate()
        .filter(|&(bi, _)| block_alive[bi])
        .map(|(_, b)| b.clone())
        .collect();
    if safe.is_empty() {
        return (Vec::new(), Zone::empty(side));
    }
    let mut zone_bits: u128 = safe.iter().fold(0, |acc, b| acc | b.stones.bits());
    for (ri, &r) in regions.iter().enumerate() {
        if !region_alive[ri] {
            continue;
        }
        let vital_to_safe = blocks
            .iter()
            .enumerate()
            .any(|(bi, _)| block_alive[bi] && vital[ri][bi]);
        if vital_to_safe {
            zone_bits |= r;
        }
    }
    (safe, Zone::from_bits(side, zone_bits))
}

/// Brute-force safety oracle: can the opponent ever capture any stone of
/// `target` when the target's owner always passes?
///
/// Explores every attacker move sequence over the reachable position set
/// (captures can reopen cells, so this is a graph search with a visited
/// set, not a tree search). Exponential; intended for boards up to ~5×5 in
/// tests that validate [`benson_safe_zone`].
///
/// # Panics
///
/// Panics if `target` is empty or spans both colors.
pub fn capturable_when_passing(p: &Position, target: &Zone) -> bool {
    assert!(!target.is_empty(), "oracle target must be non-empty");
    assert_eq!(target.side(), p.side(), "target side mismatch");
    let first = target.iter().next().unwrap();
    let owner = match p.color_at(first) {
        Color::Black => Player::Black,
        Color::White => Player::White,
        Color::Empty => panic!("oracle target cell {} is empty", first.coord(p.side())),
    };
    assert!(
        target.bits() & !p.stone_bits(owner) == 0,
        "oracle target must be stones of one color"
    );
    let attacker = owner.opponent();

    let start = if p.to_move() == attacker {
        p.clone()
    } else {
        p.play(Move::Pass).expect("pass is always legal")
    };
    let mut seen: HashSet<Position> = HashSet::new();
    let mut stack = vec![start];
    while let Some(pos) = stack.pop() {
        if target.bits() & !pos.stone_bits(owner) != 0 {
            return true; // some target stone is gone
        }
        if !seen.insert(pos.clone()) {
            continue;
        }
        for p2 in pos.empties().iter() {
            if let Ok(after) = pos.play(Move::Play(p2)) {
                // Owner passes; attacker is to move again.
                let next = after.play(Move::Pass).expect("pass is always legal");
                if !seen.contains(&next) {
                    stack.push(next);
                }
            }
        }
    }
    false
}

/// Errors raised when reading a problem file.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("missing `size: S` header line")]
    MissingSize,
    #[error("missing `to_move: B|W` header line")]
    MissingToMove,
    #[error("line {line}: bad size {text:?}")]
    BadSize { line: usize, text: String },
    #[error("line {line}: bad to_move {text:?} (expected B or W)")]
    BadToMove { line: usize, text: String },
    #[error("line {line}: bad cell character {c:?} (expected '.', 'X', or 'O')")]
    BadCell { line: usize, c: char },
    #[error("line {line}: row has {got} cells, expected {expected}")]
    RowLength {
        line: usize,
        got: usize,
        expected: usize,
    },
    #[error("expected {expected} board rows, found {got}")]
    MissingRows { expected: usize, got: usize },
    #[error("line {line}: unexpected content after the board")]
    TrailingContent { line: usize },
    #[error("illegal position: {0}")]
    Illegal(#[from] BoardError),
}

/// Parses the problem-file text format.
///
/// Layout: a `size: S` line, a `to_move: B|W` line, then `S` rows of `S`
/// cells from `.` (empty), `X` (Black), `O` (White), topmost row first.
/// Blank lines and lines starting with `#` are ignored; whitespace between
/// cells is allowed. The stone configuration must be legal (no block
/// without liberties).
pub fn parse_position(text: &str) -> Result<Position, ParseError> {
    let mut size: Option<u8> = None;
    let mut to_move: Option<Player> = None;
    let mut rows: Vec<Vec<Color>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if size.is_none() {
            let value = line
                .strip_prefix("size:")
                .ok_or(ParseError::MissingSize)?
                .trim();
            let s: u8 = value.parse().map_err(|_| ParseError::BadSize {
                line: lineno,
                text: value.to_string(),
            })?;
            if s == 0 || s > MAX_SIDE {
                return Err(ParseError::BadSize {
                    line: lineno,
                    text: value.to_string(),
                });
            }
            size = Some(s);
            continue;
        }
        let side = size.unwrap();
        if to_move.is_none() {
            let value = line
                .strip_prefix("to_move:")
                .ok_or(ParseError::MissingToMove)?
                .trim();
            let player = (value.len() == 1)
                .then(|| Player::from_letter(value.chars().next().unwrap()))
                .flatten()
                .ok_or_else(|| ParseError::BadToMove {
                    line: lineno,
                    text: value.to_string(),
                })?;
            to_move = Some(player);
            continue;
        }
        if rows.len() == side as usize {
            return Err(ParseError::TrailingContent { line: lineno });
        }
        let mut row = Vec::with_capacity(side as usize);
        for c in line.chars() {
            if c.is_whitespace() {
                continue;
            }
            row.push(match c {
                '.' => Color::Empty,
                'X' => Color::Black,
                'O' => Color::White,
                _ => return Err(ParseError::BadCell { line: lineno, c }),
            });
        }
        if row.len() != side as usize {
            return Err(ParseError::RowLength {
                line: lineno,
                got: row.len(),
                expected: side as usize,
            });
        }
        rows.push(row);
    }

    let side = size.ok_or(ParseError::MissingSize)?;
    let to_move = to_move.ok_or(ParseError::MissingToMove)?;
    if rows.len() != side as usize {
        return Err(ParseError::MissingRows {
            expected: side as usize,
            got: rows.len(),
        });
    }

    let mut black = 0u128;
    let mut white = 0u128;
    for (row_pos, row) in rows.iter().enumerate() {
        let row_from_bottom = side as usize - 1 - row_pos;
        for (col, &color) in row.iter().enumerate() {
            let bit = 1u128 << (row_from_bottom * side as usize + col);
            match color {
                Color::Black => black |= bit,
                Color::White => white |= bit,
                Color::Empty => {}
            }
        }
    }
    Ok(Position::from_masks(side, black, white, to_move)?)
}

/// Renders a position in the problem-file format parsed by
/// [`parse_position`]; `parse_position(render_position(p)) == p`.
pub fn render_position(p: &Position) -> String {
    let side = p.side();
    let mut out = format!("size: {}\nto_move: {}\n", side, p.to_move().letter());
    for row in (0..side).rev() {
        for col in 0..side {
            let cell = Intersection::from_row_col(row, col, side).unwrap();
            out.push(match p.color_at(cell) {
                Color::Empty => '.',
                Color::Black => 'X',
                Color::White => 'O',
            });
        }
        out.push('\n');
    }
    out
}

const fn build_full_masks() -> [u128; MAX_SIDE as usize + 1] {
    let mut out = [0u128; MAX_SIDE as usize + 1];
    let mut side = 1;
    while side <= MAX_SIDE as usize {
        let cells = side * side;
        out[side] = if cells == 128 {
            u128::MAX
        } else {
            (1u128 << cells) - 1
        };
        side += 1;
    }
    out
}

const fn build_west_edges() -> [u128; MAX_SIDE as usize + 1] {
    let mut out = [0u128; MAX_SIDE as usize + 1];
    let mut side = 1;
    while side <= MAX_SIDE as usize {
        let mut mask = 0u128;
        let mut row = 0;
        while row < side {
            mask |= 1u128 << (row * side);
            row += 1;
        }
        out[side] = mask;
        side += 1;
    }
    out
}

const FULL_MASKS: [u128; MAX_SIDE as usize + 1] = build_full_masks();
const WEST_EDGES: [u128; MAX_SIDE as usize + 1] = build_west_edges();

pub(crate) fn cell_count(side: u8) -> usize {
    side as usize * side as usize
}

pub(crate) fn full_mask(side: u8) -> u128 {
    FULL_MASKS[side as usize]
}

/// Four-neighborhood dilation of `mask`, clipped to the board.
pub(crate) fn neighbors_mask(mask: u128, side: u8) -> u128 {
    let s = side as u32;
    let full = FULL_MASKS[side as usize];
    let west = WEST_EDGES[side as usize];
    let east = west << (s - 1);
    let right = (mask & !east) << 1;
    let left = (mask & !west) >> 1;
    let up = (mask << s) & full;
    let down = mask >> s;
    right | left | up | down
}

/// Connected component of `region` containing `seed` (4-connectivity).
pub(crate) fn flood(seed: u128, region: u128, side: u8) -> u128 {
    let mut comp = seed & region;
    loop {
        let grown = comp | (neighbors_mask(comp, side) & region);
        if grown == comp {
            return comp;
        }
        comp = grown;
    }
}
