//! Brute-force ground truth: explicit grid graphs, exhaustive 2-factor
//! enumeration, and the bijection between 2-factors and code matrices.
//!
//! Everything here is deliberately independent of the transfer digraph:
//! graphs are edge lists, 2-factors are found by backtracking over
//! edges with degree pruning, and code matrices are counted by a direct
//! dynamic program over columns.  The fast counting paths in
//! [`crate::counting`] are tested against these routines.
//!
//! Grids are multigraphs.  This only matters for the two-column Moebius
//! strip with an odd row count, where the middle row's ordinary
//! horizontal edge and its wrap-around edge connect the same two
//! vertices; they stay distinct edges (the code letters distinguish
//! them), and a 2-factor may use both, forming a two-edge cycle.

use crate::alpha::{AlphaWord, Direction, Letter};
use crate::error::{CodeViolation, Error};
use crate::Family;

/// Largest vertex count [`enumerate_two_factors`] accepts.
pub const ENUMERATION_VERTEX_BOUND: usize = 24;

/// Largest row count [`count_code_matrices`] accepts.
pub const CODE_MATRIX_WIDTH_BOUND: usize = 10;

/// One edge of a grid graph, with the direction it occupies at each
/// endpoint (`dir_a` at vertex `a`, `dir_b` at vertex `b`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridEdge {
    pub a: u32,
    pub b: u32,
    pub dir_a: Direction,
    pub dir_b: Direction,
}

/// An explicit grid graph of one of the three families: vertices
/// `(row, col)` with `1 <= row <= m`, `1 <= col <= n`, and an edge list
/// in deterministic column-major order (verticals of column 1,
/// horizontals out of column 1, verticals of column 2, ...).
pub struct GridGraph {
    family: Family,
    m: usize,
    n: usize,
    edges: Vec<GridEdge>,
    /// Per vertex, the incident edge in each direction
    /// (indexed by `Direction as usize`).
    slots: Vec<[Option<u32>; 4]>,
}

impl GridGraph {
    pub fn build(family: Family, m: usize, n: usize) -> Result<GridGraph, Error> {
        if !(2..=30).contains(&m) {
            return Err(Error::WidthOutOfRange { m, min: 2, max: 30 });
        }
        if n < family.min_columns() {
            return Err(Error::LengthTooSmall {
                family,
                n,
                min: family.min_columns(),
            });
        }
        let mut g = GridGraph {
            family,
            m,
            n,
            edges: Vec::new(),
            slots: vec![[None; 4]; m * n],
        };
        for col in 1..=n {
            for row in 1..m {
                g.add_edge(
                    g.vertex_id(row, col),
                    g.vertex_id(row + 1, col),
                    Direction::Down,
                    Direction::Up,
                );
            }
            for row in 1..=m {
                if col < n {
                    g.add_edge(
                        g.vertex_id(row, col),
                        g.vertex_id(row, col + 1),
                        Direction::Right,
                        Direction::Left,
                    );
                } else {
                    match family {
                        Family::Rectangular => {}
                        Family::ThickCylinder => g.add_edge(
                            g.vertex_id(row, n),
                            g.vertex_id(row, 1),
                            Direction::Right,
                            Direction::Left,
                        ),
                        Family::MoebiusStrip => g.add_edge(
                            g.vertex_id(row, n),
                            g.vertex_id(m + 1 - row, 1),
                            Direction::Right,
                            Direction::Left,
                        ),
                    }
                }
            }
        }
        Ok(g)
    }

    fn add_edge(&mut self, a: u32, b: u32, dir_a: Direction, dir_b: Direction) {
        let id = self.edges.len() as u32;
        self.edges.push(GridEdge { a, b, dir_a, dir_b });
        let slot_a = &mut self.slots[a as usize][dir_a as usize];
        debug_assert!(slot_a.is_none(), "direction already occupied");
        *slot_a = Some(id);
        let slot_b = &mut self.slots[b as usize][dir_b as usize];
        debug_assert!(slot_b.is_none(), "direction already occupied");
        *slot_b = Some(id);
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.m * self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[GridEdge] {
        &self.edges
    }

    /// Vertex id of `(row, col)`, both 1-based.
    pub fn vertex_id(&self, row: usize, col: usize) -> u32 {
        debug_assert!((1..=self.m).contains(&row) && (1..=self.n).contains(&col));
        ((col - 1) * self.m + (row - 1)) as u32
    }

    /// Inverse of [`GridGraph::vertex_id`].
    pub fn vertex_pos(&self, id: u32) -> (usize, usize) {
        let id = id as usize;
        (id % self.m + 1, id / self.m + 1)
    }

    /// The edge leaving `(row, col)` in direction `dir`, if any.
    pub fn edge_at(&self, row: usize, col: usize, dir: Direction) -> Option<u32> {
        self.slots[self.vertex_id(row, col) as usize][dir as usize]
    }
}

/// A 2-factor given by its sorted edge-id list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwoFactor {
    pub edges: Vec<u32>,
}

/// All 2-factors of `g`, by backtracking over edges in index order
/// (each vertex must end at degree exactly 2).  The result order is
/// deterministic.  Graphs above [`ENUMERATION_VERTEX_BOUND`] vertices
/// are rejected.
pub fn enumerate_two_factors(g: &GridGraph) -> Result<Vec<TwoFactor>, Error> {
    if g.vertex_count() > ENUMERATION_VERTEX_BOUND {
        return Err(Error::BoundExceeded {
            what: "grid vertices",
            size: g.vertex_count(),
            bound: ENUMERATION_VERTEX_BOUND,
        });
    }
    let mut deg = vec![0u8; g.vertex_count()];
    let mut rem = vec![0u8; g.vertex_count()];
    for e in g.edges() {
        rem[e.a as usize] += 1;
        rem[e.b as usize] += 1;
    }
    let mut chosen: Vec<u32> = Vec::new();
    let mut out: Vec<TwoFactor> = Vec::new();
    backtrack(g, 0, &mut deg, &mut rem, &mut chosen, &mut out);
    Ok(out)
}

fn backtrack(
    g: &GridGraph,
    e: usize,
    deg: &mut [u8],
    rem: &mut [u8],
    chosen: &mut Vec<u32>,
    out: &mut Vec<TwoFactor>,
) {
    if e == g.edge_count() {
        debug_assert!(deg.iter().all(|&d| d == 2));
        out.push(TwoFactor {
            edges: chosen.clone(),
        });
        return;
    }
    let (a, b) = (g.edges()[e].a as usize, g.edges()[e].b as usize);
    rem[a] -= 1;
    rem[b] -= 1;

    // Leave the edge out: both endpoints must still be able to reach
    // degree 2 from the remaining undecided edges.
    if deg[a] + rem[a] >= 2 && deg[b] + rem[b] >= 2 {
        backtrack(g, e + 1, deg, rem, chosen, out);
    }

    // Take the edge: neither endpoint may exceed degree 2.
    if deg[a] < 2 && deg[b] < 2 {
        deg[a] += 1;
        deg[b] += 1;
        chosen.push(e as u32);
        backtrack(g, e + 1, deg, rem, chosen, out);
        chosen.pop();
        deg[a] -= 1;
        deg[b] -= 1;
    }

    rem[a] += 1;
    rem[b] += 1;
}

/// Number of 2-factors of `g`, by exhaustive enumeration.
pub fn count_two_factors(g: &GridGraph) -> Result<u64, Error> {
    Ok(enumerate_two_factors(g)?.len() as u64)
}

/// Number of cycles a 2-factor decomposes into (a two-edge cycle of
/// parallel edges counts as one).
pub fn cycle_count(g: &GridGraph, f: &TwoFactor) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut cycles = 0usize; // vertices - merges, counted incrementally
    let mut merged = 0usize;
    for &e in &f.edges {
        let edge = g.edges()[e as usize];
        let (ra, rb) = (find(&mut parent, edge.a), find(&mut parent, edge.b));
        if ra != rb {
            parent[ra as usize] = rb;
            merged += 1;
        }
    }
    debug_assert_eq!(f.edges.len(), n); // degree 2 everywhere
    cycles += n - merged;
    cycles
}

/// The code matrix of a 2-factor: for every vertex, the letter naming
/// the two directions its factor edges occupy.
pub fn code_matrix_of(g: &GridGraph, f: &TwoFactor) -> CodeMatrix {
    let mut used = vec![false; g.edge_count()];
    for &e in &f.edges {
        used[e as usize] = true;
    }
    let mut letters = Vec::with_capacity(g.vertex_count());
    for col in 1..=g.cols() {
        for row in 1..=g.rows() {
            let mut dirs = [Direction::Up; 2];
            let mut k = 0;
            for d in Direction::ALL {
                if let Some(e) = g.edge_at(row, col, d) {
                    if used[e as usize] {
                        assert!(k < 2, "vertex ({row},{col}) has degree above 2");
                        dirs[k] = d;
                        k += 1;
                    }
                }
            }
            assert_eq!(k, 2, "vertex ({row},{col}) has degree below 2");
            letters.push(Letter::from_edges(dirs[0], dirs[1]).expect("distinct directions"));
        }
    }
    CodeMatrix {
        m: g.rows(),
        n: g.cols(),
        letters,
    }
}

/// An m x n matrix of code letters, stored column-major.  May or may
/// not describe a 2-factor; [`CodeMatrix::validate`] decides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeMatrix {
    m: usize,
    n: usize,
    letters: Vec<Letter>,
}

impl CodeMatrix {
    /// Wraps a column-major letter sequence (length must be `m * n`).
    pub fn new(m: usize, n: usize, letters: Vec<Letter>) -> CodeMatrix {
        assert_eq!(letters.len(), m * n, "letter count must be m*n");
        CodeMatrix { m, n, letters }
    }

    /// Builds a matrix from whole columns (all of equal length).
    pub fn from_columns(cols: &[AlphaWord]) -> CodeMatrix {
        assert!(!cols.is_empty());
        let m = cols[0].len();
        assert!(cols.iter().all(|c| c.len() == m), "ragged columns");
        let letters = cols.iter().flat_map(|c| c.letters().iter().copied()).collect();
        CodeMatrix {
            m,
            n: cols.len(),
            letters,
        }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    /// Letter at 1-based (row, col).
    pub fn letter(&self, row: usize, col: usize) -> Letter {
        self.letters[(col - 1) * self.m + (row - 1)]
    }

    pub fn column_letters(&self, col: usize) -> &[Letter] {
        &self.letters[(col - 1) * self.m..col * self.m]
    }

    /// Column `col` as a validated word.
    pub fn column_word(&self, col: usize) -> Result<AlphaWord, Error> {
        AlphaWord::new(self.column_letters(col).to_vec())
    }

    /// Checks that this matrix describes a 2-factor of the given family,
    /// reporting the first violation in scan order (columns
    /// left-to-right, then horizontal seams, then the family's boundary
    /// or wrap-around rule).
    pub fn validate(&self, family: Family) -> Result<(), CodeViolation> {
        let (m, n) = (self.m, self.n);
        for col in 1..=n {
            if self.letter(1, col).contains(Direction::Up) {
                return Err(CodeViolation::ColumnTop { col });
            }
            for row in 1..m {
                if self.letter(row, col).contains(Direction::Down)
                    != self.letter(row + 1, col).contains(Direction::Up)
                {
                    return Err(CodeViolation::ColumnPair { col, row });
                }
            }
            if self.letter(m, col).contains(Direction::Down) {
                return Err(CodeViolation::ColumnBottom { col });
            }
        }
        for col in 1..n {
            for row in 1..=m {
                if self.letter(row, col).contains(Direction::Right)
                    != self.letter(row, col + 1).contains(Direction::Left)
                {
                    return Err(CodeViolation::Adjacency { col, row });
                }
            }
        }
        match family {
            Family::Rectangular => {
                for row in 1..=m {
                    if self.letter(row, 1).contains(Direction::Left) {
                        return Err(CodeViolation::FirstColumn { row });
                    }
                    if self.letter(row, n).contains(Direction::Right) {
                        return Err(CodeViolation::LastColumn { row });
                    }
                }
            }
            Family::ThickCylinder => {
                for row in 1..=m {
                    if self.letter(row, n).contains(Direction::Right)
                        != self.letter(row, 1).contains(Direction::Left)
                    {
                        return Err(CodeViolation::CylinderWrap { row });
                    }
                }
            }
            Family::MoebiusStrip => {
                for row in 1..=m {
                    if self.letter(row, n).contains(Direction::Right)
                        != self.letter(m + 1 - row, 1).contains(Direction::Left)
                    {
                        return Err(CodeViolation::MoebiusWrap { row });
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for CodeMatrix {
    /// Rows of letters, top row first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in 1..=self.m {
            for col in 1..=self.n {
                write!(f, "{}", self.letter(row, col))?;
            }
            if row < self.m {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// The 2-factor a valid code matrix describes on `g`.  Fails with the
/// precise [`CodeViolation`] if the matrix is not valid for `g`'s
/// family.
///
/// # Panics
/// If the matrix dimensions do not match the graph.
pub fn two_factor_of(g: &GridGraph, c: &CodeMatrix) -> Result<TwoFactor, Error> {
    assert_eq!((c.rows(), c.cols()), (g.rows(), g.cols()), "size mismatch");
    c.validate(g.family())?;
    let mut edges = Vec::with_capacity(g.vertex_count());
    for (id, e) in g.edges().iter().enumerate() {
        let (ra, ca) = g.vertex_pos(e.a);
        let (rb, cb) = g.vertex_pos(e.b);
        let use_a = c.letter(ra, ca).contains(e.dir_a);
        let use_b = c.letter(rb, cb).contains(e.dir_b);
        debug_assert_eq!(use_a, use_b, "validation guarantees agreement");
        if use_a {
            edges.push(id as u32);
        }
    }
    Ok(TwoFactor { edges })
}

/// Number of valid code matrices for the family, by direct dynamic
/// programming over columns (enumerate all column words, then chain
/// them on matching seam patterns).  Independent of the transfer
/// digraph; rows capped at [`CODE_MATRIX_WIDTH_BOUND`].
pub fn count_code_matrices(family: Family, m: usize, n: usize) -> Result<u64, Error> {
    if !(2..=CODE_MATRIX_WIDTH_BOUND).contains(&m) {
        return Err(Error::WidthOutOfRange {
            m,
            min: 2,
            max: CODE_MATRIX_WIDTH_BOUND,
        });
    }
    if n < family.min_columns() {
        return Err(Error::LengthTooSmall {
            family,
            n,
            min: family.min_columns(),
        });
    }
    let cols: Vec<(u32, u32)> = AlphaWord::enumerate_all(m)?
        .iter()
        .map(|w| (w.left_pattern().bits(), w.outlet().bits()))
        .collect();
    let size = 1usize << m;
    let reversed = |bits: u32| bits.reverse_bits() >> (32 - m as u32);

    let run = |start_left: u32, end_out: u32| -> u128 {
        let mut dp = vec![0u128; size];
        for &(l, o) in &cols {
            if l == start_left {
                dp[o as usize] += 1;
            }
        }
        for _ in 1..n {
            let mut next = vec![0u128; size];
            for &(l, o) in &cols {
                let from = dp[l as usize];
                if from != 0 {
                    next[o as usize] = next[o as usize]
                        .checked_add(from)
                        .expect("code-matrix count overflow");
                }
            }
            dp = next;
        }
        dp[end_out as usize]
    };

    let total: u128 = match family {
        Family::Rectangular => run(0, 0),
        Family::ThickCylinder => {
            let mut lefts: Vec<u32> = cols.iter().map(|&(l, _)| l).collect();
            lefts.sort_unstable();
            lefts.dedup();
            lefts.iter().map(|&l| run(l, l)).sum()
        }
        Family::MoebiusStrip => {
            let mut lefts: Vec<u32> = cols.iter().map(|&(l, _)| l).collect();
            lefts.sort_unstable();
            lefts.dedup();
            lefts.iter().map(|&l| run(l, reversed(l))).sum()
        }
    };
    Ok(u64::try_from(total).expect("code-matrix count overflow"))
}
