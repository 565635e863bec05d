use std::fmt;

use serde::{Deserialize, Serialize};

use crate::logic::Pred;

/// Squares on each side of the center; the board is `GRID_SIZE × GRID_SIZE`.
pub const GRID_RADIUS: i8 = 10;
pub const GRID_SIZE: usize = 2 * GRID_RADIUS as usize + 1;
pub const SQUARE_COUNT: usize = GRID_SIZE * GRID_SIZE;

/// A square of the board. `col` grows to the right, `row` grows upward and
/// the center `(0, 0)` is the square labelled `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct GridCoord {
    col: i8,
    row: i8,
}

impl GridCoord {
    pub const CENTER: GridCoord = GridCoord { col: 0, row: 0 };

    pub fn new(col: i64, row: i64) -> Option<GridCoord> {
        let r = i64::from(GRID_RADIUS);
        if (-r..=r).contains(&col) && (-r..=r).contains(&row) {
            Some(GridCoord {
                col: col as i8,
                row: row as i8,
            })
        } else {
            None
        }
    }

    pub fn col(self) -> i64 {
        i64::from(self.col)
    }

    pub fn row(self) -> i64 {
        i64::from(self.row)
    }

    /// Dense index; ascending index order is ascending `(col, row)` order.
    pub fn index(self) -> usize {
        (self.col + GRID_RADIUS) as usize * GRID_SIZE + (self.row + GRID_RADIUS) as usize
    }

    pub fn from_index(i: usize) -> GridCoord {
        debug_assert!(i < SQUARE_COUNT);
        GridCoord {
            col: (i / GRID_SIZE) as i8 - GRID_RADIUS,
            row: (i % GRID_SIZE) as i8 - GRID_RADIUS,
        }
    }

    pub fn all() -> impl Iterator<Item = GridCoord> {
        (0..SQUARE_COUNT).map(GridCoord::from_index)
    }

    fn aligned(self, other: GridCoord) -> bool {
        self.row == other.row || self.col == other.col
    }

    fn manhattan(self, other: GridCoord) -> i64 {
        (self.col() - other.col()).abs() + (self.row() - other.row()).abs()
    }
}

impl TryFrom<[i64; 2]> for GridCoord {
    type Error = String;

    fn try_from([col, row]: [i64; 2]) -> Result<Self, Self::Error> {
        GridCoord::new(col, row).ok_or_else(|| format!("square [{col},{row}] is off the board"))
    }
}

impl From<GridCoord> for [i64; 2] {
    fn from(c: GridCoord) -> Self {
        [c.col(), c.row()]
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.col, self.row)
    }
}

/// Truth of a grid atom. Returns false for predicates outside the grid
/// dialect or a wrong number of arguments.
pub fn holds_atom(pred: Pred, args: &[GridCoord]) -> bool {
    if args.len() != pred.arity() {
        return false;
    }
    let (a, b) = (args[0], args[1]);
    match pred {
        Pred::Eq => a == b,
        Pred::Rechts => b.row == a.row && b.col > a.col,
        Pred::Links => b.row == a.row && b.col < a.col,
        Pred::Ueber => b.col == a.col && b.row > a.row,
        Pred::Unter => b.col == a.col && b.row < a.row,
        Pred::Nachbar => a.manhattan(b) == 1,
        Pred::DistEq => {
            let (x, y) = (args[2], args[3]);
            a.aligned(b) && x.aligned(y) && a.manhattan(b) == x.manhattan(y)
        }
        _ => false,
    }
}

const WORDS: usize = SQUARE_COUNT.div_ceil(64);

/// A set of squares as a fixed-size bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareSet {
    bits: [u64; WORDS],
}

impl SquareSet {
    pub const fn empty() -> Self {
        SquareSet { bits: [0; WORDS] }
    }

    pub fn full() -> Self {
        let mut s = SquareSet {
            bits: [u64::MAX; WORDS],
        };
        s.trim();
        s
    }

    fn trim(&mut self) {
        let extra = WORDS * 64 - SQUARE_COUNT;
        self.bits[WORDS - 1] &= u64::MAX >> extra;
    }

    pub fn insert(&mut self, c: GridCoord) {
        let i = c.index();
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, c: GridCoord) -> bool {
        self.contains_index(c.index())
    }

    pub(crate) fn contains_index(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == SquareSet::full()
    }

    pub fn union(&self, other: &SquareSet) -> SquareSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &SquareSet) -> SquareSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &SquareSet) -> SquareSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> SquareSet {
        let mut s = self.zip(self, |a, _| !a);
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &SquareSet) -> bool {
        self.difference(other).is_empty()
    }

    fn zip(&self, other: &SquareSet, f: impl Fn(u64, u64) -> u64) -> SquareSet {
        let mut bits = [0; WORDS];
        for (i, w) in bits.iter_mut().enumerate() {
            *w = f(self.bits[i], other.bits[i]);
        }
        SquareSet { bits }
    }

    /// Squares in ascending `(col, row)` order.
    pub fn iter(&self) -> impl Iterator<Item = GridCoord> + '_ {
        (0..SQUARE_COUNT)
            .filter(|i| self.contains_index(*i))
            .map(GridCoord::from_index)
    }
}

impl Default for SquareSet {
    fn default() -> Self {
        SquareSet::empty()
    }
}

impl FromIterator<GridCoord> for SquareSet {
    fn from_iter<I: IntoIterator<Item = GridCoord>>(iter: I) -> Self {
        let mut s = SquareSet::empty();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for SquareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for SquareSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for SquareSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coords = Vec::<GridCoord>::deserialize(d)?;
        Ok(coords.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(col: i64, row: i64) -> GridCoord {
        GridCoord::new(col, row).unwrap()
    }

    #[test]
    fn directional_atoms() {
        assert!(holds_atom(Pred::Rechts, &[c(0, 0), c(3, 0)]));
        assert!(!holds_atom(Pred::Rechts, &[c(0, 0), c(3, 1)]));
        assert!(holds_atom(Pred::Links, &[c(0, 0), c(-3, 0)]));
        assert!(holds_atom(Pred::Ueber, &[c(2, 1), c(2, 5)]));
        assert!(!holds_atom(Pred::Ueber, &[c(2, 1), c(2, 1)]));
        assert!(holds_atom(Pred::Unter, &[c(2, 1), c(2, -10)]));
    }

    #[test]
    fn neighbours_share_a_border() {
        assert!(holds_atom(Pred::Nachbar, &[c(0, 0), c(0, 1)]));
        assert!(!holds_atom(Pred::Nachbar, &[c(0, 0), c(1, 1)]));
        assert!(!holds_atom(Pred::Nachbar, &[c(0, 0), c(0, 0)]));
    }

    #[test]
    fn distances() {
        assert!(holds_atom(
            Pred::DistEq,
            &[c(0, 0), c(0, 4), c(2, 1), c(6, 1)]
        ));
        assert!(!holds_atom(
            Pred::DistEq,
            &[c(0, 0), c(1, 1), c(0, 0), c(1, 1)]
        ));
        // Zero distances are allowed.
        assert!(holds_atom(
            Pred::DistEq,
            &[c(3, 3), c(3, 3), c(-1, 2), c(-1, 2)]
        ));
    }

    #[test]
    fn coordinates() {
        assert!(GridCoord::new(11, 0).is_none());
        assert!(GridCoord::new(0, -11).is_none());
        assert_eq!(GridCoord::all().count(), 441);
        for (i, sq) in GridCoord::all().enumerate() {
            assert_eq!(sq.index(), i);
        }
        let sorted: Vec<_> = GridCoord::all().collect();
        assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn set_operations() {
        let full = SquareSet::full();
        assert_eq!(full.len(), 441);
        assert!(full.complement().is_empty());
        let mut s = SquareSet::empty();
        s.insert(c(10, 10));
        s.insert(c(-10, -10));
        assert_eq!(s.len(), 2);
        assert_eq!(s.complement().len(), 439);
        assert!(s.is_subset(&full));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![c(-10, -10), c(10, 10)]);
    }

    #[test]
    fn serde_shape() {
        let s: SquareSet = [c(1, 2), c(0, 0)].into_iter().collect();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[[0,0],[1,2]]");
        let back: SquareSet = serde_json::from_str("[[1,2],[0,0]]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<GridCoord>("[11,0]").is_err());
    }
}
