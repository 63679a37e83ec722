//! Zone patterns: positions restricted to a relevance zone.
//!
//! A zone pattern is a triple of the player to move, a zone (set of
//! intersections), and the zone's stone content. A position matches a
//! pattern when the players to move agree and the position's cells equal
//! the pattern's content on every zone member — cells outside the zone are
//! free, so one pattern stands for a whole family of positions, and a
//! position can match many patterns.
//!
//! For table storage a pattern is flattened into a [`PatternKey`]: one
//! symbol per crucial intersection, `B`/`W`/`E` for zone members by their
//! content and `N` for intersections outside the zone ("not in zone", a
//! don't-care). Keys derived from positions use only `B`/`W`/`E` because a
//! position has concrete content everywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Color, Intersection, Player, Position, Zone};
use crate::table::Oci;

/// Errors raised by pattern construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern content lies outside the zone")]
    ContentOutsideZone,
    #[error("black and white pattern content overlap")]
    ContentOverlap,
}

/// A relevance-zone pattern: player to move, zone, and zone content.
///
/// Equality and hashing cover the semantic triple (player, zone, content)
/// and ignore the bookkeeping stamp, so two inserts of the same pattern at
/// different times compare equal.
#[derive(Clone)]
pub struct ZonePattern {
    player: Player,
    zone: Zone,
    black: u128,
    white: u128,
    stamp: u64,
}

impl ZonePattern {
    /// Builds a pattern from explicit content; zone cells not listed in
    /// `black`/`white` are empty in the pattern.
    pub fn new(player: Player, zone: Zone, black: Zone, white: Zone) -> Result<Self, PatternError> {
        if !black.is_subset_of(zone) || !white.is_subset_of(zone) {
            return Err(PatternError::ContentOutsideZone);
        }
        if !black.intersection(white).is_empty() {
            return Err(PatternError::ContentOverlap);
        }
        Ok(ZonePattern {
            player,
            zone,
            black: black.bits(),
            white: white.bits(),
            stamp: 0,
        })
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn zone(&self) -> Zone {
        self.zone
    }

    pub fn side(&self) -> u8 {
        self.zone.side()
    }

    /// Insertion timestamp; 0 until the pattern is stored in a table.
    pub fn stamp(&self) -> u64 {
        self.stamp
    }

    pub(crate) fn set_stamp(&mut self, stamp: u64) {
        self.stamp = stamp;
    }

    /// Content of a zone member, or `None` outside the zone.
    pub fn content_at(&self, p: Intersection) -> Option<Color> {
        if !self.zone.contains(p) {
            return None;
        }
        let bit = 1u128 << p.index();
        Some(if self.black & bit != 0 {
            Color::Black
        } else if self.white & bit != 0 {
            Color::White
        } else {
            Color::Empty
        })
    }

    /// Zone members with their content, ascending by index.
    pub fn content(&self) -> impl Iterator<Item = (Intersection, Color)> + '_ {
        self.zone.iter().map(move |p| (p, self.content_at(p).unwrap()))
    }

    pub(crate) fn black_bits(&self) -> u128 {
        self.black
    }

    pub(crate) fn white_bits(&self) -> u128 {
        self.white
    }
}

impl PartialEq for ZonePattern {
    fn eq(&self, other: &Self) -> bool {
        self.player == other.player
            && self.zone == other.zone
            && self.black == other.black
            && self.white == other.white
    }
}

impl Eq for ZonePattern {}

impl std::hash::Hash for ZonePattern {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.player.hash(state);
        self.zone.hash(state);
        self.black.hash(state);
        self.white.hash(state);
    }
}

impl fmt::Debug for ZonePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .content()
            .map(|(p, c)| {
                let tag = match c {
                    Color::Empty => 'E',
                    Color::Black => 'B',
                    Color::White => 'W',
                };
                format!("{}={}", p.coord(self.side()), tag)
            })
            .collect();
        write!(
            f,
            "ZonePattern(player={}, stamp={}, {})",
            self.player,
            self.stamp,
            cells.join(" ")
        )
    }
}

/// Extracts the pattern of `p` restricted to zone `z`.
///
/// The pattern's player is `p`'s player to move and its stamp is 0; tables
/// assign the real stamp at insertion. By construction `matches(p,
/// pattern_from(p, z))` holds.
pub fn pattern_from(p: &Position, z: Zone) -> ZonePattern {
    assert_eq!(p.side(), z.side(), "zone side mismatch");
    ZonePattern {
        player: p.to_move(),
        zone: z,
        black: p.stone_bits(Player::Black) & z.bits(),
        white: p.stone_bits(Player::White) & z.bits(),
        stamp: 0,
    }
}

/// True iff `p` matches `pat`: players to move agree and `p`'s cells equal
/// the pattern content on every zone member. Positions of a different board
/// side never match.
pub fn matches(p: &Position, pat: &ZonePattern) -> bool {
    p.side() == pat.side()
        && p.to_move() == pat.player
        && p.stone_bits(Player::Black) & pat.zone.bits() == pat.black
        && p.stone_bits(Player::White) & pat.zone.bits() == pat.white
}

/// One radix-key symbol: stone content for zone members, `N` for
/// intersections outside the zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KeySym {
    B,
    W,
    E,
    N,
}

impl KeySym {
    /// Child slot of this symbol in a radix-tree node.
    pub fn branch_index(self) -> usize {
        match self {
            KeySym::B => 0,
            KeySym::W => 1,
            KeySym::E => 2,
            KeySym::N => 3,
        }
    }

    pub fn from_char(c: char) -> Option<KeySym> {
        match c {
            'B' => Some(KeySym::B),
            'W' => Some(KeySym::W),
            'E' => Some(KeySym::E),
            'N' => Some(KeySym::N),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            KeySym::B => 'B',
            KeySym::W => 'W',
            KeySym::E => 'E',
            KeySym::N => 'N',
        }
    }

    fn of_color(c: Color) -> KeySym {
        match c {
            Color::Black => KeySym::B,
            Color::White => KeySym::W,
            Color::Empty => KeySym::E,
        }
    }
}

/// A radix key: one symbol per crucial intersection, in OCI order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternKey(Vec<KeySym>);

impl PatternKey {
    pub fn syms(&self) -> &[KeySym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a key from its display form, e.g. `"BNW"`.
    pub fn parse(s: &str) -> Option<PatternKey> {
        s.chars().map(KeySym::from_char).collect::<Option<Vec<_>>>().map(PatternKey)
    }
}

impl fmt::Display for PatternKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Encodes a pattern against an OCI: content symbol for crucial
/// intersections inside the pattern's zone, `N` for the rest.
pub fn encode_pattern_key(pat: &ZonePattern, oci: &Oci) -> PatternKey {
    PatternKey(
        oci.iter()
            .map(|&p| match pat.content_at(p) {
                Some(c) => KeySym::of_color(c),
                None => KeySym::N,
            })
            .collect(),
    )
}

/// Encodes a position against an OCI. Positions have concrete content at
/// every intersection, so the result never contains `N`.
pub fn encode_position_key(p: &Position, oci: &Oci) -> PatternKey {
    PatternKey(
        oci.iter()
            .map(|&i| KeySym::of_color(p.color_at(i)))
            .collect(),
    )
}

/// Errors raised when reading a pattern dump file.
#[derive(Debug, Error)]
pub enum DumpError {
    #[error("bad JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("entry {index}: bad player {text:?}")]
    BadPlayer { index: usize, text: String },
    #[error("entry {index}: bad side {side}")]
    BadSide { index: usize, side: u8 },
    #[error("entry {index}: bad coordinate {coord:?}")]
    BadCoord { index: usize, coord: String },
    #[error("entry {index}: bad content value {text:?} for {coord}")]
    BadContent {
        index: usize,
        coord: String,
        text: String,
    },
    #[error("entry {index}: content does not cover the zone exactly")]
    ContentMismatch { index: usize },
}

#[derive(Serialize, Deserialize)]
struct DumpEntry {
    player: String,
    side: u8,
    zone: Vec<String>,
    content: BTreeMap<String, String>,
    stamp: u64,
}

/// Serializes patterns to the JSON dump format: an array of objects with
/// the player, board side, zone coordinates, per-coordinate content
/// (`"B"`/`"W"`/`"E"`), and insertion stamp.
pub fn dump_patterns<'a, I>(patterns: I) -> String
where
    I: IntoIterator<Item = &'a ZonePattern>,
{
    let entries: Vec<DumpEntry> = patterns
        .into_iter()
        .map(|pat| {
            let content = pat
                .content()
                .map(|(p, c)| {
                    let v = match c {
                        Color::Black => "B",
                        Color::White => "W",
                        Color::Empty => "E",
                    };
                    (p.coord(pat.side()), v.to_string())
                })
                .collect();
            DumpEntry {
                player: pat.player().letter().to_string(),
                side: pat.side(),
                zone: pat.zone().coords(),
                content,
                stamp: pat.stamp(),
            }
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("dump entries serialize")
}

/// Parses a pattern dump produced by [`dump_patterns`].
pub fn parse_patterns(text: &str) -> Result<Vec<ZonePattern>, DumpError> {
    let entries: Vec<DumpEntry> = serde_json::from_str(text)?;
    let mut out = Vec::with_capacity(entries.len());
    for (index, e) in entries.into_iter().enumerate() {
        let player = (e.player.len() == 1)
            .then(|| Player::from_letter(e.player.chars().next().unwrap()))
            .flatten()
            .ok_or_else(|| DumpError::BadPlayer {
                index,
                text: e.player.clone(),
            })?;
        if e.side == 0 || e.side > crate::board::MAX_SIDE {
            return Err(DumpError::BadSide {
                index,
                side: e.side,
            });
        }
        let mut zone = Zone::empty(e.side);
        for coord in &e.zone {
            let p = Intersection::from_coord(coord, e.side).map_err(|_| DumpError::BadCoord {
                index,
                coord: coord.clone(),
            })?;
            zone.insert(p);
        }
        if e.content.len() != zone.len() as usize {
            return Err(DumpError::ContentMismatch { index });
        }
        let mut black = Zone::empty(e.side);
        let mut white = Zone::empty(e.side);
        for (coord, value) in &e.content {
            let p = Intersection::from_coord(coord, e.side).map_err(|_| DumpError::BadCoord {
                index,
                coord: coord.clone(),
            })?;
            if !zone.contains(p) {
                return Err(DumpError::ContentMismatch { index });
            }
            match value.as_str() {
                "B" => black.insert(p),
                "W" => white.insert(p),
                "E" => {}
                _ => {
                    return Err(DumpError::BadContent {
                        index,
                        coord: coord.clone(),
                        text: value.clone(),
                    })
                }
            }
        }
        let mut pat = ZonePattern::new(player, zone, black, white)
            .map_err(|_| DumpError::ContentMismatch { index })?;
        pat.set_stamp(e.stamp);
        out.push(pat);
    }
    Ok(out)
}

/// Shared pattern handle as stored in tables.
pub type PatternRef = Arc<ZonePattern>;
