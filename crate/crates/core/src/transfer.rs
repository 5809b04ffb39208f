//! The transfer digraph over outlet words and its two reductions.
//!
//! Vertices are all binary words of width `m` except, for odd `m`, the
//! alternating word that no column can produce.  There is an arc from
//! `L` to `R` exactly when some column has left pattern `L` and outlet
//! `R`; that column is then unique ([`unique_column`]), so arcs are in
//! bijection with column words.  Walks in this digraph are in bijection
//! with 2-factors, which is what [`crate::counting`] exploits.
//!
//! Two reductions shrink the matrix without changing any count of
//! closed walks through the all-zero word: restriction to the connected
//! component of `0^m` (the "base component", [`TransferDigraph::base_component`])
//! and the quotient by the reflection symmetry `v -> reversed(v)`
//! ([`QuotientDigraph`]).

use std::fmt::Write as _;

use serde::Serialize;

use crate::alpha::{AlphaWord, Color, Direction, Letter, OutletWord};
use crate::error::Error;

/// Largest width [`TransferDigraph::build`] accepts; the digraph has
/// about `3^m / 2` arcs, so memory bounds the width well before time
/// does.
pub const MAX_BUILD_WIDTH: usize = 16;

/// Number of valid column words with `m` rows: `(3^m + (-1)^m) / 2`,
/// computed by a two-state dynamic program over rows (state: does the
/// current letter reach downward), not by materializing the words.
pub fn count_valid_columns(m: usize) -> Result<u64, Error> {
    if !(1..=40).contains(&m) {
        return Err(Error::WidthOutOfRange { m, min: 1, max: 40 });
    }
    // Letters by (reaches up, reaches down): {a,d} down only, {b} both,
    // {c,f} up only, {e} neither.  Row 1 must not reach up; the last
    // row must not reach down.
    let mut down: u64 = 2; // words so far ending in a letter that reaches down
    let mut flat: u64 = 1; // words so far ending in a letter that does not
    for _ in 1..m {
        let next_down = down + 2 * flat;
        let next_flat = 2 * down + flat;
        down = next_down;
        flat = next_flat;
    }
    Ok(flat)
}

/// The unique column word with left pattern `left` and outlet `right`,
/// if one exists.  Words of different widths never match.
///
/// The column is found by forward substitution: with `x_i` the vertical
/// edge between rows `i` and `i+1`, the degree-2 condition at row `i`
/// forces `x_i = 2 - left_i - right_i - x_(i-1)`; the candidate fails
/// exactly when some `x_i` falls outside {0, 1} or the last row ends up
/// with the wrong degree.
pub fn unique_column(left: OutletWord, right: OutletWord) -> Option<AlphaWord> {
    let m = left.width();
    if m != right.width() || m < 2 {
        return None;
    }
    let mut letters = Vec::with_capacity(m);
    let mut above: i32 = 0;
    for row in 1..=m {
        let l = left.bit(row) as i32;
        let r = right.bit(row) as i32;
        let below = if row < m {
            let x = 2 - l - r - above;
            if x != 0 && x != 1 {
                return None;
            }
            x
        } else {
            if above + l + r != 2 {
                return None;
            }
            0
        };
        let mut dirs = [Direction::Up; 2];
        let mut k = 0;
        for (flag, d) in [
            (above, Direction::Up),
            (below, Direction::Down),
            (l, Direction::Left),
            (r, Direction::Right),
        ] {
            if flag == 1 {
                dirs[k] = d;
                k += 1;
            }
        }
        debug_assert_eq!(k, 2);
        letters.push(Letter::from_edges(dirs[0], dirs[1]).expect("two distinct directions"));
        above = below;
    }
    let word = AlphaWord::new(letters).expect("forward substitution yields a valid column");
    debug_assert_eq!(word.left_pattern(), left);
    debug_assert_eq!(word.outlet(), right);
    Some(word)
}

/// One connected component of the transfer digraph.
#[derive(Clone, Debug)]
pub struct ComponentInfo {
    /// Common `|Z|` of the member words.
    pub s: u32,
    /// Members with positive Z.
    pub red: usize,
    /// Members with negative Z.
    pub green: usize,
    /// Members equal to their own reversal.
    pub palindromes: usize,
    members: Vec<u32>,
}

impl ComponentInfo {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Member vertex indices, ascending.
    pub fn members(&self) -> &[u32] {
        &self.members
    }
}

/// The transfer digraph for grids with `m` rows.
///
/// Vertices are outlet words in ascending numeric order, so the
/// all-zero word is always vertex 0.  Components are indexed by their
/// smallest member, so the base component is always component 0; that
/// is asserted, not assumed, by [`crate::verify`].
pub struct TransferDigraph {
    m: usize,
    excluded_bits: Option<u32>,
    vertices: Vec<OutletWord>,
    arcs: Vec<Vec<u32>>,
    arc_count: usize,
    component_of: Vec<u32>,
    components: Vec<ComponentInfo>,
}

impl TransferDigraph {
    /// Builds the digraph for width `m` (2..=[`MAX_BUILD_WIDTH`]):
    /// vertices, arcs, connected components and their statistics.
    pub fn build(m: usize) -> Result<TransferDigraph, Error> {
        if !(2..=MAX_BUILD_WIDTH).contains(&m) {
            return Err(Error::WidthOutOfRange {
                m,
                min: 2,
                max: MAX_BUILD_WIDTH,
            });
        }
        let excluded_bits = OutletWord::excluded_word(m).map(|w| w.bits());
        let vertices: Vec<OutletWord> = (0..1u32 << m)
            .filter(|&bits| Some(bits) != excluded_bits)
            .map(|bits| OutletWord::new(m, bits).expect("bits below 2^m"))
            .collect();
        let n = vertices.len();

        let index_of = |bits: u32| -> u32 {
            match excluded_bits {
                Some(x) if bits > x => bits - 1,
                _ => bits,
            }
        };

        let mut arcs: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut arc_count = 0usize;
        let mut dsu = Dsu::new(n);
        let mut rights = Vec::new();
        for (i, left) in vertices.iter().enumerate() {
            rights.clear();
            collect_right_outlets(m, left.bits(), 1, 0, 0, &mut rights);
            rights.sort_unstable();
            debug_assert!(rights.iter().all(|&b| Some(b) != excluded_bits));
            arcs[i] = rights.iter().map(|&bits| index_of(bits)).collect();
            arc_count += arcs[i].len();
            for &j in &arcs[i] {
                dsu.union(i as u32, j);
            }
        }

        // Components ordered by smallest member; members ascending.
        let mut comp_index: Vec<u32> = vec![u32::MAX; n];
        let mut component_of = vec![0u32; n];
        let mut components: Vec<ComponentInfo> = Vec::new();
        for i in 0..n {
            let root = dsu.find(i as u32) as usize;
            let id = if comp_index[root] == u32::MAX {
                comp_index[root] = components.len() as u32;
                components.push(ComponentInfo {
                    s: 0,
                    red: 0,
                    green: 0,
                    palindromes: 0,
                    members: Vec::new(),
                });
                comp_index[root]
            } else {
                comp_index[root]
            };
            component_of[i] = id;
            let comp = &mut components[id as usize];
            let w = vertices[i];
            if comp.members.is_empty() {
                comp.s = w.class().expect("vertices are never excluded").s;
            }
            match w.class().expect("vertices are never excluded").color {
                Color::Red => comp.red += 1,
                Color::Green => comp.green += 1,
                Color::Neutral => {}
            }
            if w.is_palindrome() {
                comp.palindromes += 1;
            }
            comp.members.push(i as u32);
        }

        Ok(TransferDigraph {
            m,
            excluded_bits,
            vertices,
            arcs,
            arc_count,
            component_of,
            components,
        })
    }

    /// Number of rows of the grids this digraph transfers over.
    pub fn width(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// All vertices in ascending numeric order.
    pub fn vertices(&self) -> &[OutletWord] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> OutletWord {
        self.vertices[i]
    }

    /// Index of a word among the vertices; `None` for the excluded word
    /// or a width mismatch.
    pub fn vertex_index(&self, w: OutletWord) -> Option<usize> {
        if w.width() != self.m || Some(w.bits()) == self.excluded_bits {
            return None;
        }
        Some(match self.excluded_bits {
            Some(x) if w.bits() > x => (w.bits() - 1) as usize,
            _ => w.bits() as usize,
        })
    }

    /// Out-neighbors of vertex `i`, ascending.
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.arcs[i]
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.arcs[from].binary_search(&(to as u32)).is_ok()
    }

    /// The column word an arc stands for.
    pub fn arc_column(&self, from: usize, to: usize) -> Option<AlphaWord> {
        unique_column(self.vertices[from], self.vertices[to])
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_id(&self, vertex: usize) -> usize {
        self.component_of[vertex] as usize
    }

    pub fn components(&self) -> &[ComponentInfo] {
        &self.components
    }

    /// The component of the all-zero word: the only component whose
    /// walks matter for rectangular grids, and the carrier of both
    /// reductions.
    pub fn base_component(&self) -> &ComponentInfo {
        let zero = self
            .vertex_index(OutletWord::zeros(self.m).expect("width validated"))
            .expect("the all-zero word is never excluded");
        &self.components[self.component_of[zero] as usize]
    }

    /// Graphviz rendering of the whole digraph: nodes labeled with
    /// their 0/1 word, filled by component, shaped by sign class
    /// (ellipse neutral, box red, hexagon green).
    pub fn to_dot(&self) -> String {
        self.dot_impl(&format!("dstar_{}", self.m), None)
    }

    /// Graphviz rendering of the sub-digraph induced by the base
    /// component.
    pub fn base_component_dot(&self) -> String {
        self.dot_impl(
            &format!("rstar_{}", self.m),
            Some(self.base_component().members()),
        )
    }

    fn dot_impl(&self, name: &str, restrict: Option<&[u32]>) -> String {
        let mut keep = vec![restrict.is_none(); self.vertex_count()];
        if let Some(members) = restrict {
            for &i in members {
                keep[i as usize] = true;
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  node [style=filled];");
        for (i, w) in self.vertices.iter().enumerate() {
            if !keep[i] {
                continue;
            }
            let class = w.class().expect("vertices are never excluded");
            let fill = PALETTE[self.component_of[i] as usize % PALETTE.len()];
            let _ = writeln!(
                out,
                "  v{i} [label=\"{w}\", shape={}, fillcolor=\"{fill}\"];",
                shape_for(class.color)
            );
        }
        for (i, outs) in self.arcs.iter().enumerate() {
            if !keep[i] {
                continue;
            }
            for &j in outs {
                if keep[j as usize] {
                    let _ = writeln!(out, "  v{i} -> v{j};");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Serializable summary: order, size, and per-component statistics
    /// sorted by the Z-parameter `s`.
    pub fn summary(&self) -> DigraphSummary {
        let mut components: Vec<ComponentSummary> = self
            .components
            .iter()
            .map(|c| ComponentSummary {
                s: c.s,
                size: c.size(),
                red: c.red,
                green: c.green,
                palindromes: c.palindromes,
            })
            .collect();
        components.sort_by_key(|c| c.s);
        DigraphSummary {
            m: self.m,
            vertices: self.vertex_count(),
            arcs: self.arc_count,
            components,
        }
    }
}

/// Depth-first enumeration of all outlets reachable from a fixed left
/// pattern, one grid row at a time; `above` is the vertical edge coming
/// into the current row.
fn collect_right_outlets(m: usize, left: u32, row: usize, above: i32, acc: u32, out: &mut Vec<u32>) {
    let l = ((left >> (row - 1)) & 1) as i32;
    if row == m {
        let r = 2 - l - above;
        if r == 0 || r == 1 {
            out.push(acc | (r as u32) << (m - 1));
        }
        return;
    }
    for r in 0..=1i32 {
        let below = 2 - l - r - above;
        if below == 0 || below == 1 {
            collect_right_outlets(m, left, row + 1, below, acc | (r as u32) << (row - 1), out);
        }
    }
}

/// JSON-facing summary of a transfer digraph.
#[derive(Serialize, Debug, Clone)]
pub struct DigraphSummary {
    pub m: usize,
    pub vertices: usize,
    pub arcs: usize,
    pub components: Vec<ComponentSummary>,
}

/// JSON-facing summary of one component.
#[derive(Serialize, Debug, Clone)]
pub struct ComponentSummary {
    pub s: u32,
    pub size: usize,
    pub red: usize,
    pub green: usize,
    pub palindromes: usize,
}

/// One vertex class of the reflection quotient: a word and its
/// reversal, collapsed.  `mate` is `None` for palindromes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    pub rep: OutletWord,
    pub mate: Option<OutletWord>,
}

impl OrbitClass {
    pub fn size(&self) -> usize {
        1 + self.mate.is_some() as usize
    }

    /// Display label, `rep` or `rep|mate`.
    pub fn label(&self) -> String {
        match self.mate {
            Some(mate) => format!("{}|{mate}", self.rep),
            None => self.rep.to_string(),
        }
    }
}

/// Quotient of a reflection-closed vertex set by `v -> reversed(v)`.
///
/// Entry (i, j) counts arcs from the representative of class `i` into
/// the members of class `j` (0, 1 or 2).  Because reversal is a digraph
/// automorphism, every member of class `i` sees the same number of arcs
/// into class `j` (checked in tests and by [`crate::verify`]), which is
/// exactly the condition making quotient walk counts equal original
/// walk counts.
pub struct QuotientDigraph {
    m: usize,
    classes: Vec<OrbitClass>,
    rows: Vec<Vec<(u32, u8)>>,
}

impl QuotientDigraph {
    /// Builds the quotient of the sub-digraph of `d` induced by
    /// `members` (ascending vertex indices, as stored in
    /// [`ComponentInfo::members`]).  Class representatives are the
    /// numerically smaller word of each pair, classes are ordered by
    /// representative, so the class of the all-zero word comes first
    /// when quotienting the base component.
    ///
    /// # Panics
    /// If `members` is not closed under reversal.
    pub fn build(d: &TransferDigraph, members: &[u32]) -> QuotientDigraph {
        let m = d.width();
        let mut class_of = vec![u32::MAX; d.vertex_count()];
        let mut classes = Vec::new();
        for &i in members {
            let w = d.vertex(i as usize);
            let rev = w.reversed();
            let rev_idx = d
                .vertex_index(rev)
                .filter(|&r| class_of.get(r).is_some() && members.binary_search(&(r as u32)).is_ok())
                .unwrap_or_else(|| panic!("vertex set not closed under reversal at {w}"));
            if rev.bits() < w.bits() {
                // already handled as the mate of its reversal
                debug_assert_ne!(class_of[rev_idx], u32::MAX);
                class_of[i as usize] = class_of[rev_idx];
                continue;
            }
            let id = classes.len() as u32;
            class_of[i as usize] = id;
            if rev.bits() > w.bits() {
                class_of[rev_idx] = id;
            }
            classes.push(OrbitClass {
                rep: w,
                mate: (rev != w).then_some(rev),
            });
        }

        let rows = classes
            .iter()
            .map(|class| {
                let rep_idx = d.vertex_index(class.rep).expect("member vertex");
                let mut row: Vec<(u32, u8)> = Vec::new();
                for &t in d.neighbors(rep_idx) {
                    let cls = class_of[t as usize];
                    if cls == u32::MAX {
                        continue; // arc leaves the member set
                    }
                    match row.iter_mut().find(|(c, _)| *c == cls) {
                        Some((_, mult)) => *mult += 1,
                        None => row.push((cls, 1)),
                    }
                }
                row.sort_unstable_by_key(|&(c, _)| c);
                row
            })
            .collect();

        QuotientDigraph { m, classes, rows }
    }

    pub fn width(&self) -> usize {
        self.m
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[OrbitClass] {
        &self.classes
    }

    /// Sparse row `i`: (target class, arc multiplicity), ascending.
    pub fn row(&self, i: usize) -> &[(u32, u8)] {
        &self.rows[i]
    }

    pub fn multiplicity(&self, from: usize, to: usize) -> u8 {
        self.rows[from]
            .iter()
            .find(|&&(c, _)| c as usize == to)
            .map_or(0, |&(_, mult)| mult)
    }

    /// Graphviz rendering: nodes labeled `rep` or `rep|mate`, shaped by
    /// sign class; arcs of multiplicity 2 are labeled.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph rstarstar_{} {{", self.m);
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  node [style=filled];");
        for (i, class) in self.classes.iter().enumerate() {
            let color = class.rep.class().expect("members are never excluded").color;
            let fill = match color {
                Color::Neutral => "#c7c7c7",
                Color::Red => "#ff9896",
                Color::Green => "#98df8a",
            };
            let _ = writeln!(
                out,
                "  q{i} [label=\"{}\", shape={}, fillcolor=\"{fill}\"];",
                class.label(),
                shape_for(color)
            );
        }
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, mult) in row {
                if mult > 1 {
                    let _ = writeln!(out, "  q{i} -> q{j} [label=\"{mult}\"];");
                } else {
                    let _ = writeln!(out, "  q{i} -> q{j};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn shape_for(color: Color) -> &'static str {
    match color {
        Color::Neutral => "ellipse",
        Color::Red => "box",
        Color::Green => "hexagon",
    }
}

const PALETTE: [&str; 10] = [
    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#dbdb8d",
    "#9edae5", "#c7c7c7",
];

/// Union-find with path halving; arcs are unioned as they are created,
/// so components are those of the underlying undirected graph.
struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}
