//! Code letters, column words, outlet words and the Z-statistic.
//!
//! A 2-factor visits every vertex with exactly two edges, so the local
//! picture at a vertex is one of six two-element subsets of
//! {up, down, left, right}.  Each subset gets a code letter `a`..`f`;
//! a column of the grid then reads as a word over those letters, and a
//! whole 2-factor as a matrix of them.  For transfer counting only one
//! bit per row survives: whether the letter reaches to the right
//! ("outlet").  This module defines the letters, validated column words
//! ([`AlphaWord`]), their binary projections ([`OutletWord`]) and the
//! Z-statistic that classifies outlet words into red/green classes.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One of the four edge directions around a grid vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Up,
        Direction::Down,
        Direction::Left,
        Direction::Right,
    ];

    /// Bit used for this direction inside a letter's edge mask.
    const fn mask(self) -> u8 {
        match self {
            Direction::Up => 1,
            Direction::Down => 2,
            Direction::Left => 4,
            Direction::Right => 8,
        }
    }

    /// The direction seen after flipping the grid upside down.
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
            other => other,
        }
    }
}

const UP: u8 = Direction::Up.mask();
const DOWN: u8 = Direction::Down.mask();
const LEFT: u8 = Direction::Left.mask();
const RIGHT: u8 = Direction::Right.mask();

/// A code letter: which two of the four incident edges a 2-factor uses
/// at one vertex.
///
/// The assignment is the unique one compatible with the boundary rules
/// (see the `edge_table_is_forced` test): `a` turns down-right, `b` runs
/// straight through vertically, `c` turns up-right, `d` turns down-left,
/// `e` runs straight through horizontally, `f` turns up-left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
}

/// Edge mask per letter, indexed by `Letter as usize`.
const EDGE_MASKS: [u8; 6] = [
    DOWN | RIGHT, // a
    UP | DOWN,    // b
    UP | RIGHT,   // c
    DOWN | LEFT,  // d
    LEFT | RIGHT, // e
    UP | LEFT,    // f
];

/// Image of each letter under an upside-down flip of the grid.
const REFLECTED: [Letter; 6] = [
    Letter::C,
    Letter::B,
    Letter::A,
    Letter::F,
    Letter::E,
    Letter::D,
];

impl Letter {
    pub const ALL: [Letter; 6] = [
        Letter::A,
        Letter::B,
        Letter::C,
        Letter::D,
        Letter::E,
        Letter::F,
    ];

    fn mask(self) -> u8 {
        EDGE_MASKS[self as usize]
    }

    /// The two directions this letter places in the 2-factor.
    pub fn edges(self) -> [Direction; 2] {
        let mut out = [Direction::Up; 2];
        let mut k = 0;
        for d in Direction::ALL {
            if self.contains(d) {
                out[k] = d;
                k += 1;
            }
        }
        debug_assert_eq!(k, 2);
        out
    }

    /// Does this letter use an edge in direction `d`?
    pub fn contains(self, d: Direction) -> bool {
        self.mask() & d.mask() != 0
    }

    /// The letter whose edge set is exactly `{x, y}`, if the two
    /// directions differ.
    pub fn from_edges(x: Direction, y: Direction) -> Option<Letter> {
        let mask = x.mask() | y.mask();
        if x == y {
            return None;
        }
        Letter::ALL.into_iter().find(|l| l.mask() == mask)
    }

    /// The letter seen at this vertex after flipping the grid upside
    /// down (swaps up and down; an involution).
    pub fn reflected(self) -> Letter {
        REFLECTED[self as usize]
    }

    pub fn as_char(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='f' => Some(Letter::ALL[(c as u8 - b'a') as usize]),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Can `lower` sit directly below `upper` in a column?  True exactly
/// when the two letters agree about the edge between them.
pub fn ud_compatible(upper: Letter, lower: Letter) -> bool {
    upper.contains(Direction::Down) == lower.contains(Direction::Up)
}

/// Is this letter sequence a valid column of some 2-factor?  Needs at
/// least two rows, no upward edge in row 1, no downward edge in the last
/// row, and vertical agreement between consecutive rows.
pub fn is_valid_column(letters: &[Letter]) -> bool {
    letters.len() >= 2
        && !letters[0].contains(Direction::Up)
        && !letters[letters.len() - 1].contains(Direction::Down)
        && letters.windows(2).all(|w| ud_compatible(w[0], w[1]))
}

/// A validated column word: the letters of one grid column, top to
/// bottom, satisfying the column rules of [`is_valid_column`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaWord {
    letters: Vec<Letter>,
}

impl AlphaWord {
    /// Validates and wraps a letter sequence, reporting the first
    /// violated rule with its 1-based row.
    pub fn new(letters: Vec<Letter>) -> Result<Self, Error> {
        if letters.len() < 2 {
            return Err(Error::InvalidColumn {
                row: 1,
                reason: format!("a column needs at least two rows, got {}", letters.len()),
            });
        }
        if letters[0].contains(Direction::Up) {
            return Err(Error::InvalidColumn {
                row: 1,
                reason: format!("row-1 letter {} uses an upward edge", letters[0]),
            });
        }
        for (i, w) in letters.windows(2).enumerate() {
            if !ud_compatible(w[0], w[1]) {
                return Err(Error::InvalidColumn {
                    row: i + 1,
                    reason: format!(
                        "letters {}{} disagree about the edge between rows {} and {}",
                        w[0],
                        w[1],
                        i + 1,
                        i + 2
                    ),
                });
            }
        }
        let last = letters[letters.len() - 1];
        if last.contains(Direction::Down) {
            return Err(Error::InvalidColumn {
                row: letters.len(),
                reason: format!("last-row letter {last} uses a downward edge"),
            });
        }
        Ok(AlphaWord { letters })
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid column always has at least two rows
    }

    /// The letters, top to bottom.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter at a 1-based row.
    pub fn letter(&self, row: usize) -> Letter {
        self.letters[row - 1]
    }

    /// Binary projection onto rightward edges: bit `row` is set exactly
    /// when the letter in that row reaches into the next column.
    pub fn outlet(&self) -> OutletWord {
        self.project(Direction::Right)
    }

    /// Binary projection onto leftward edges: bit `row` is set exactly
    /// when the letter in that row reaches into the previous column.
    pub fn left_pattern(&self) -> OutletWord {
        self.project(Direction::Left)
    }

    fn project(&self, d: Direction) -> OutletWord {
        let mut bits = 0u32;
        for (i, l) in self.letters.iter().enumerate() {
            if l.contains(d) {
                bits |= 1 << i;
            }
        }
        OutletWord {
            m: self.letters.len() as u8,
            bits,
        }
    }

    /// The column seen after flipping the grid upside down: reversed
    /// row order with every letter reflected.  An involution that maps
    /// valid columns to valid columns.
    pub fn reflected(&self) -> AlphaWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| l.reflected())
            .collect::<Vec<_>>();
        debug_assert!(is_valid_column(&letters));
        AlphaWord { letters }
    }

    /// All valid column words with `m` rows, in lexicographic order.
    /// There are (3^m + (-1)^m) / 2 of them, so `m` is capped at 14.
    pub fn enumerate_all(m: usize) -> Result<Vec<AlphaWord>, Error> {
        if !(2..=14).contains(&m) {
            return Err(Error::WidthOutOfRange { m, min: 2, max: 14 });
        }
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(m);
        fn go(stack: &mut Vec<Letter>, m: usize, out: &mut Vec<AlphaWord>) {
            if stack.len() == m {
                if !stack[m - 1].contains(Direction::Down) {
                    out.push(AlphaWord {
                        letters: stack.clone(),
                    });
                }
                return;
            }
            for next in Letter::ALL {
                let ok = match stack.last() {
                    None => !next.contains(Direction::Up),
                    Some(&prev) => ud_compatible(prev, next),
                };
                if ok {
                    stack.push(next);
                    go(stack, m, out);
                    stack.pop();
                }
            }
        }
        go(&mut stack, m, &mut out);
        Ok(out)
    }
}

impl fmt::Display for AlphaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for AlphaWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut letters = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            letters.push(Letter::from_char(c).ok_or_else(|| Error::InvalidColumn {
                row: i + 1,
                reason: format!("`{c}` is not a code letter (a..f)"),
            })?);
        }
        AlphaWord::new(letters)
    }
}

/// Can column `right` stand directly to the right of column `left`?
/// True exactly when every row agrees about the edge between the two
/// columns, i.e. the outlet of `left` equals the left pattern of
/// `right`.  Words of different lengths are never compatible.
pub fn lr_compatible(left: &AlphaWord, right: &AlphaWord) -> bool {
    left.outlet() == right.left_pattern()
}

/// A binary word of width 1..=30: one bit per row, row 1 in the lowest
/// bit.  Outlet words are the vertices of the transfer digraph.
///
/// Ordering and equality are numeric (width first, then bit value), so
/// sorted vertex lists are deterministic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutletWord {
    m: u8,
    bits: u32,
}

impl OutletWord {
    pub const MAX_WIDTH: usize = 30;

    pub fn new(m: usize, bits: u32) -> Result<Self, Error> {
        if !(1..=Self::MAX_WIDTH).contains(&m) {
            return Err(Error::WidthOutOfRange {
                m,
                min: 1,
                max: Self::MAX_WIDTH,
            });
        }
        if bits >> m != 0 {
            return Err(Error::BitsOutOfRange { m, bits });
        }
        Ok(OutletWord { m: m as u8, bits })
    }

    /// The all-zero word `0^m` (no rightward edges anywhere).
    pub fn zeros(m: usize) -> Result<Self, Error> {
        Self::new(m, 0)
    }

    /// The all-one word `1^m` (a rightward edge in every row).
    pub fn ones(m: usize) -> Result<Self, Error> {
        Self::new(m, (1u32 << m) - 1)
    }

    /// Number of rows.
    pub fn width(&self) -> usize {
        self.m as usize
    }

    /// Raw bit value; bit `row - 1` of the integer is row `row`.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Bit at a 1-based row, as 0 or 1.
    ///
    /// # Panics
    /// If `row` is not in `1..=width()`.
    pub fn bit(&self, row: usize) -> u8 {
        assert!((1..=self.width()).contains(&row), "row {row} out of range");
        ((self.bits >> (row - 1)) & 1) as u8
    }

    /// The word read bottom-to-top.  This is the outlet of the
    /// reflected column: flipping the grid upside down reverses outlet
    /// words.
    pub fn reversed(&self) -> OutletWord {
        OutletWord {
            m: self.m,
            bits: self.bits.reverse_bits() >> (32 - self.m as u32),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        *self == self.reversed()
    }

    /// The Z-statistic: zeros at odd rows minus zeros at even rows
    /// (rows 1-based).  Constant absolute value on every component of
    /// the transfer digraph.
    pub fn z(&self) -> i32 {
        let mut z = 0;
        for row in 1..=self.width() {
            if self.bit(row) == 0 {
                z += if row % 2 == 1 { 1 } else { -1 };
            }
        }
        z
    }

    /// The unique width-m word (m odd) that never occurs as a column
    /// outlet: zeros at odd rows, ones at even rows.  `None` for even
    /// widths, where every word occurs.
    ///
    /// # Panics
    /// If `m` is not in `1..=MAX_WIDTH`.
    pub fn excluded_word(m: usize) -> Option<OutletWord> {
        assert!((1..=Self::MAX_WIDTH).contains(&m), "width {m} out of range");
        if m.is_multiple_of(2) {
            return None;
        }
        let bits = 0xAAAA_AAAAu32 & ((1u32 << m) - 1);
        Some(OutletWord { m: m as u8, bits })
    }

    /// Is this the excluded alternating word of its (odd) width?
    pub fn is_excluded(&self) -> bool {
        Self::excluded_word(self.width()) == Some(*self)
    }

    /// Red/green classification by the sign of the Z-statistic.  The
    /// excluded word is the one word with no class.
    pub fn class(&self) -> Result<ZClass, Error> {
        if self.is_excluded() {
            return Err(Error::ExcludedWord {
                word: self.to_string(),
            });
        }
        let z = self.z();
        Ok(ZClass {
            s: z.unsigned_abs(),
            color: match z.signum() {
                0 => Color::Neutral,
                1 => Color::Red,
                _ => Color::Green,
            },
        })
    }
}

impl fmt::Display for OutletWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 1..=self.width() {
            write!(f, "{}", self.bit(row))?;
        }
        Ok(())
    }
}

impl FromStr for OutletWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut bits = 0u32;
        let mut m = 0usize;
        for c in s.chars() {
            match c {
                '0' => {}
                '1' => {
                    if m >= Self::MAX_WIDTH {
                        return Err(Error::WidthOutOfRange {
                            m: s.len(),
                            min: 1,
                            max: Self::MAX_WIDTH,
                        });
                    }
                    bits |= 1 << m;
                }
                _ => {
                    return Err(Error::BitsOutOfRange { m: s.len(), bits });
                }
            }
            m += 1;
        }
        OutletWord::new(m, bits)
    }
}

/// Sign class of an outlet word: `s` is `|Z|` and `color` the sign of Z.
/// `color` is `Neutral` exactly when `s == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZClass {
    pub s: u32,
    pub color: Color,
}

/// Sign of the Z-statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Neutral,
    Red,
    Green,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::binomial;

    fn word(s: &str) -> AlphaWord {
        s.parse().unwrap()
    }

    fn outlet(s: &str) -> OutletWord {
        s.parse().unwrap()
    }

    /// The edge table is not a convention: it is the unique assignment
    /// of two-direction subsets to the six letters that matches the
    /// membership rules for outlets (right), left patterns (left),
    /// first rows (no up) and last rows (no down).
    #[test]
    fn edge_table_is_forced() {
        let has_right = [true, false, true, false, true, false];
        let has_left = [false, false, false, true, true, true];
        let first_row_ok = [true, false, false, true, true, false]; // {a, d, e}
        let last_row_ok = [false, false, true, false, true, true]; // {c, e, f}

        let two_subsets: Vec<u8> = (0u8..16).filter(|m| m.count_ones() == 2).collect();
        assert_eq!(two_subsets.len(), 6);

        for l in Letter::ALL {
            let i = l as usize;
            let survivors: Vec<u8> = two_subsets
                .iter()
                .copied()
                .filter(|&s| {
                    (s & RIGHT != 0) == has_right[i]
                        && (s & LEFT != 0) == has_left[i]
                        && (s & UP == 0) == first_row_ok[i]
                        && (s & DOWN == 0) == last_row_ok[i]
                })
                .collect();
            assert_eq!(survivors, vec![l.mask()], "letter {l} not forced");
        }

        // All six masks distinct: the letters name different subsets.
        let mut masks: Vec<u8> = Letter::ALL.iter().map(|l| l.mask()).collect();
        masks.sort_unstable();
        masks.dedup();
        assert_eq!(masks.len(), 6);
    }

    #[test]
    fn reflection_swaps_up_and_down() {
        for l in Letter::ALL {
            let r = l.reflected();
            assert_eq!(r.reflected(), l, "reflection must be an involution");
            for d in Direction::ALL {
                assert_eq!(l.contains(d), r.contains(d.flipped()));
            }
        }
        assert_eq!(Letter::A.reflected(), Letter::C);
        assert_eq!(Letter::B.reflected(), Letter::B);
        assert_eq!(Letter::D.reflected(), Letter::F);
        assert_eq!(Letter::E.reflected(), Letter::E);
    }

    /// Each grid corner leaves exactly two directions available, which
    /// forces its letter.
    #[test]
    fn corner_letters_are_forced() {
        use Direction::*;
        assert_eq!(Letter::from_edges(Down, Right), Some(Letter::A)); // top-left
        assert_eq!(Letter::from_edges(Down, Left), Some(Letter::D)); // top-right
        assert_eq!(Letter::from_edges(Up, Right), Some(Letter::C)); // bottom-left
        assert_eq!(Letter::from_edges(Up, Left), Some(Letter::F)); // bottom-right
        assert_eq!(Letter::from_edges(Up, Up), None);
    }

    #[test]
    fn letter_chars_round_trip() {
        for l in Letter::ALL {
            assert_eq!(Letter::from_char(l.as_char()), Some(l));
        }
        assert_eq!(Letter::from_char('g'), None);
    }

    #[test]
    fn column_validity_examples() {
        assert!(is_valid_column(word("ac").letters()));
        assert!(is_valid_column(word("df").letters()));
        assert!("aa".parse::<AlphaWord>().is_err()); // a..a vertical conflict
        assert!("ba".parse::<AlphaWord>().is_err()); // b may not start a column
        assert!("db".parse::<AlphaWord>().is_err()); // b may not end a column
        assert!("e".parse::<AlphaWord>().is_err()); // too short
        assert!("ax".parse::<AlphaWord>().is_err()); // not a letter

        // First rows avoid upward edges, last rows avoid downward ones.
        for l in Letter::ALL {
            let first_ok = matches!(l, Letter::A | Letter::D | Letter::E);
            let last_ok = matches!(l, Letter::C | Letter::E | Letter::F);
            assert_eq!(!l.contains(Direction::Up), first_ok);
            assert_eq!(!l.contains(Direction::Down), last_ok);
        }
    }

    /// Column words are counted by (3^m + (-1)^m) / 2.
    #[test]
    fn column_count_formula() {
        for m in 2..=10usize {
            let all = AlphaWord::enumerate_all(m).unwrap();
            let expected = (3u64.pow(m as u32) as i64 + if m % 2 == 0 { 1 } else { -1 }) / 2;
            assert_eq!(all.len() as i64, expected, "m={m}");
            for w in &all {
                assert!(is_valid_column(w.letters()));
            }
            // Enumeration yields distinct, lexicographically sorted words.
            for pair in all.windows(2) {
                assert!(pair[0].letters() < pair[1].letters());
            }
        }
        assert!(AlphaWord::enumerate_all(1).is_err());
        assert!(AlphaWord::enumerate_all(15).is_err());
    }

    /// An 8-column code matrix of a 7x8 grid, used as a worked example
    /// throughout: every column is valid, consecutive columns are
    /// horizontally compatible, and the outlets are as expected.
    #[test]
    fn worked_seven_row_example() {
        let cols = [
            "acacabc", "eeeedce", "eeeeafe", "eeeedce", "eedfafe", "eeacdbf", "edfdbbc", "dbbbbbf",
        ];
        let words: Vec<AlphaWord> = cols.iter().map(|s| word(s)).collect();
        for pair in words.windows(2) {
            assert!(lr_compatible(&pair[0], &pair[1]));
        }
        // A rectangular grid needs a blank left edge on column 1 and a
        // blank right edge on the last column.
        assert_eq!(words[0].left_pattern(), outlet("0000000"));
        assert_eq!(words[7].outlet(), outlet("0000000"));

        let outlets: Vec<String> = words.iter().map(|w| w.outlet().to_string()).collect();
        assert_eq!(
            outlets,
            [
                "1111101", "1111011", "1111101", "1111011", "1100101", "1111000", "1000001",
                "0000000"
            ]
        );
        // Each interior seam repeats as the next column's left pattern.
        for pair in words.windows(2) {
            assert_eq!(pair[0].outlet(), pair[1].left_pattern());
        }
    }

    #[test]
    fn horizontal_compatibility_is_outlet_against_left_pattern() {
        // d and f reach left, so a column starting d and ending f cannot
        // follow a column with a blank right edge - not even itself.
        let w = word("dbbbbbf");
        assert_eq!(w.outlet(), outlet("0000000"));
        assert_eq!(w.left_pattern(), outlet("1000001"));
        assert!(!lr_compatible(&w, &w));
        assert!(lr_compatible(&word("edfdbbc"), &w));
        // Words of different widths are never compatible.
        assert!(!lr_compatible(&word("ac"), &word("ace")));
    }

    /// Flipping the grid upside down reverses both binary projections.
    #[test]
    fn reflection_reverses_projections() {
        for m in 2..=8usize {
            for w in AlphaWord::enumerate_all(m).unwrap() {
                let r = w.reflected();
                assert_eq!(r.reflected(), w);
                assert_eq!(r.outlet(), w.outlet().reversed());
                assert_eq!(r.left_pattern(), w.left_pattern().reversed());
            }
        }
        assert_eq!(word("acacabc").reflected(), word("abcacac"));
        assert_eq!(word("ac").reflected(), word("ac"));
        assert_eq!(word("df").reflected(), word("df"));
        assert_eq!(word("af").reflected(), word("dc"));
    }

    #[test]
    fn outlet_word_basics() {
        let w = outlet("1111101");
        assert_eq!(w.width(), 7);
        assert_eq!(w.bit(1), 1);
        assert_eq!(w.bit(6), 0);
        assert_eq!(w.to_string(), "1111101");
        assert_eq!(w.reversed().to_string(), "1011111");
        assert!(!w.is_palindrome());
        assert!(outlet("0110").is_palindrome());
        assert!(outlet("101").is_palindrome());

        assert_eq!(OutletWord::zeros(3).unwrap().to_string(), "000");
        assert_eq!(OutletWord::ones(4).unwrap().to_string(), "1111");
        assert!(OutletWord::new(0, 0).is_err());
        assert!(OutletWord::new(31, 0).is_err());
        assert!(OutletWord::new(3, 0b1000).is_err());
        assert!("10x".parse::<OutletWord>().is_err());
    }

    #[test]
    fn z_statistic_examples() {
        for (s, z) in [
            ("00", 0),
            ("11", 0),
            ("01", 1),
            ("10", -1),
            ("000", 1),
            ("111", 0),
            ("100", 0),
            ("001", 0),
            ("011", 1),
            ("110", 1),
            ("101", -1),
            ("010", 2),
            ("1111101", -1),
            ("0000000", 1),
        ] {
            assert_eq!(outlet(s).z(), z, "Z({s})");
        }
    }

    #[test]
    fn excluded_word_is_the_odd_alternating_word() {
        assert_eq!(OutletWord::excluded_word(3).unwrap().to_string(), "010");
        assert_eq!(OutletWord::excluded_word(5).unwrap().to_string(), "01010");
        assert_eq!(OutletWord::excluded_word(7).unwrap().to_string(), "0101010");
        assert_eq!(OutletWord::excluded_word(4), None);
        assert!(outlet("010").is_excluded());
        assert!(!outlet("0101").is_excluded());
        assert!(!outlet("101").is_excluded());

        // It is excluded because no valid column has it as outlet or as
        // left pattern.
        for m in [3usize, 5, 7] {
            let x = OutletWord::excluded_word(m).unwrap();
            for w in AlphaWord::enumerate_all(m).unwrap() {
                assert_ne!(w.outlet(), x);
                assert_ne!(w.left_pattern(), x);
            }
            // Its Z-statistic is the odd-width maximum, (m + 1) / 2.
            assert_eq!(x.z(), (m as i32 + 1) / 2);
        }
    }

    #[test]
    fn class_examples() {
        use Color::*;
        for (s, color, size) in [
            ("00", Neutral, 0u32),
            ("11", Neutral, 0),
            ("01", Red, 1),
            ("10", Green, 1),
            ("000", Red, 1),
            ("011", Red, 1),
            ("110", Red, 1),
            ("101", Green, 1),
            ("100", Neutral, 0),
            ("111", Neutral, 0),
            ("001", Neutral, 0),
        ] {
            let c = outlet(s).class().unwrap();
            assert_eq!((c.color, c.s), (color, size), "class({s})");
        }
        assert!(matches!(
            outlet("010").class(),
            Err(Error::ExcludedWord { .. })
        ));
        assert!(matches!(
            outlet("01010").class(),
            Err(Error::ExcludedWord { .. })
        ));
    }

    /// Cardinalities of the sign classes over all binary words: with
    /// m = 2k, both red and green classes of size parameter s hold
    /// C(2k, k-s) words; with m = 2k+1 the red class holds
    /// C(2k+1, k-s+1) and the green class C(2k+1, k-s); the neutral
    /// class always holds C(m, floor(m/2)).
    #[test]
    fn sign_class_cardinalities() {
        fn bin(n: usize, k: i64) -> u128 {
            if k < 0 || k > n as i64 {
                0
            } else {
                binomial(n as u64, k as u64)
            }
        }
        for m in 1..=14usize {
            let k = (m / 2) as i64;
            let mut by_z = std::collections::BTreeMap::<i32, u128>::new();
            for bits in 0..(1u32 << m) {
                let w = OutletWord::new(m, bits).unwrap();
                *by_z.entry(w.z()).or_insert(0) += 1;
            }
            let count = |z: i32| by_z.get(&z).copied().unwrap_or(0);
            assert_eq!(count(0), bin(m, k), "m={m} neutral");
            for s in 1..=(m as i64) {
                let (red, green) = if m % 2 == 0 {
                    (bin(m, k - s), bin(m, k - s))
                } else {
                    (bin(m, k - s + 1), bin(m, k - s))
                };
                assert_eq!(count(s as i32), red, "m={m} red s={s}");
                assert_eq!(count(-s as i32), green, "m={m} green s={s}");
            }
        }
    }

    /// Reversal preserves Z on odd widths and negates it on even widths.
    #[test]
    fn reversal_action_on_z() {
        for m in 1..=13usize {
            for bits in 0..(1u32 << m) {
                let w = OutletWord::new(m, bits).unwrap();
                let expect = if m % 2 == 1 { w.z() } else { -w.z() };
                assert_eq!(w.reversed().z(), expect);
            }
        }
    }

    /// Even-width palindromes all have Z = 0; an odd-width palindrome
    /// has odd Z exactly when its center bit is 0 (so |Z| = 1 forces a
    /// zero center).
    #[test]
    fn palindrome_z_properties() {
        for m in 2..=13usize {
            for bits in 0..(1u32 << m) {
                let w = OutletWord::new(m, bits).unwrap();
                if !w.is_palindrome() {
                    continue;
                }
                if m % 2 == 0 {
                    assert_eq!(w.z(), 0);
                } else {
                    let center_zero = w.bit(m / 2 + 1) == 0;
                    assert_eq!(w.z().rem_euclid(2) == 1, center_zero);
                }
            }
        }
    }
}
