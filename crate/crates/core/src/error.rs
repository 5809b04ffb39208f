//! Error types shared across the crate.

use thiserror::Error;

use crate::Family;

/// Top-level error for all fallible library operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A row count outside the range the operation supports.
    #[error("width m={m} outside supported range {min}..={max}")]
    WidthOutOfRange { m: usize, min: usize, max: usize },

    /// Raw bits that do not fit into a binary word of the given width.
    #[error("bit pattern {bits:#b} does not fit in a width-{m} word")]
    BitsOutOfRange { m: usize, bits: u32 },

    /// A column count below the minimum for the requested family.
    #[error("{family} needs at least {min} columns, got n={n}")]
    LengthTooSmall { family: Family, n: usize, min: usize },

    /// The alternating word of odd width never occurs as a column outlet,
    /// so it has no red/green classification.
    #[error("word {word} never occurs as an outlet and has no class")]
    ExcludedWord { word: String },

    /// A letter sequence that is not a valid column word.
    #[error("invalid column word at row {row}: {reason}")]
    InvalidColumn { row: usize, reason: String },

    /// Brute-force enumeration was asked for a graph above its size cap.
    #[error("{what} ({size}) exceeds the brute-force bound of {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    /// A code matrix that does not describe a 2-factor of the given family.
    #[error(transparent)]
    Code(#[from] CodeViolation),

    /// A counting-method name not present in the strategy registry.
    #[error("unknown counting method `{0}` (expected full, rstar, rstarstar or oracle)")]
    UnknownMethod(String),

    /// A graph-family name outside rg / tkc / ms.
    #[error("unknown grid family `{0}` (expected rg, tkc or ms)")]
    UnknownFamily(String),
}

/// The precise reason a code matrix fails to describe a 2-factor.
///
/// Rows and columns are 1-based, matching the way positions are displayed.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CodeViolation {
    /// A first-row letter that claims an edge above the grid.
    #[error("column {col}: the row-1 letter uses an upward edge")]
    ColumnTop { col: usize },

    /// A last-row letter that claims an edge below the grid.
    #[error("column {col}: the last-row letter uses a downward edge")]
    ColumnBottom { col: usize },

    /// Two vertically adjacent letters that disagree about the edge
    /// between them.
    #[error("column {col}, row {row}: vertical edge conflicts with the row below")]
    ColumnPair { col: usize, row: usize },

    /// A first-column letter that claims an edge to the left of a grid
    /// with no wrap-around.
    #[error("row {row}: the first-column letter uses a leftward edge")]
    FirstColumn { row: usize },

    /// A last-column letter that claims an edge to the right of a grid
    /// with no wrap-around.
    #[error("row {row}: the last-column letter uses a rightward edge")]
    LastColumn { row: usize },

    /// Two horizontally adjacent letters that disagree about the edge
    /// between them.
    #[error("column {col}, row {row}: horizontal edge conflicts with the next column")]
    Adjacency { col: usize, row: usize },

    /// Last and first column disagree about a wrap-around edge of the
    /// thick cylinder.
    #[error("row {row}: cylinder wrap-around edge conflicts between last and first column")]
    CylinderWrap { row: usize },

    /// Last and first column disagree about a wrap-around edge of the
    /// Moebius strip (the last column meets the first one upside down).
    #[error("row {row}: moebius wrap-around edge conflicts between last and first column")]
    MoebiusWrap { row: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_name_the_offending_position() {
        let e = Error::LengthTooSmall {
            family: Family::ThickCylinder,
            n: 2,
            min: 3,
        };
        assert_eq!(e.to_string(), "tkc needs at least 3 columns, got n=2");

        let v = CodeViolation::Adjacency { col: 3, row: 2 };
        assert!(v.to_string().contains("column 3, row 2"));

        let wrapped: Error = v.into();
        assert_eq!(wrapped.to_string(), v.to_string());
    }
}
