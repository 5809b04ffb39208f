//! Exact 2-factor counting as walk counting in the transfer digraph.
//!
//! A 2-factor of an m x n grid is the same thing as a length-n chain of
//! column words whose seam patterns match, which is a length-n walk in
//! the transfer digraph:
//!
//! * rectangle: a closed walk at the all-zero word (blank outer seams),
//! * thick cylinder: any closed walk (sum over start vertices: a trace),
//! * moebius strip: a walk from each vertex to its reversal (the wrap
//!   seam meets the first column upside down).
//!
//! Rectangles only need the component of the all-zero word, and on that
//! component the reflection quotient halves the matrix again; both
//! reductions are selectable per call and always agree with the full
//! digraph (verified mechanically in tests and by [`crate::verify`]).
//! All arithmetic is exact ([`BigUint`]).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::alpha::OutletWord;
use crate::error::Error;
use crate::oracle::{self, GridGraph};
use crate::transfer::{QuotientDigraph, TransferDigraph, MAX_BUILD_WIDTH};
use crate::Family;

/// Width cap for rectangle counting (the transfer digraph bound).
pub const MAX_WIDTH_LINEAR: usize = MAX_BUILD_WIDTH;

/// Width cap for cylinder and moebius counting, which exponentiate
/// dense per-component matrices instead of iterating one sparse row
/// vector.
pub const MAX_WIDTH_WRAPPED: usize = 12;

/// A counting back-end.  `Full`, `RStar` and `RStarStar` all count
/// transfer-digraph walks and always produce identical numbers; they
/// differ in how much of the digraph they touch for rectangles (whole
/// digraph / base component / reflection quotient of it).  Cylinder and
/// moebius counts need the whole digraph, so there the three coincide
/// computationally as well.  `Oracle` is brute-force enumeration,
/// available only for tiny grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Full,
    RStar,
    RStarStar,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Full, Method::RStar, Method::RStarStar, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Full => "full",
            Method::RStar => "rstar",
            Method::RStarStar => "rstarstar",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// One exact count with its full context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub count: BigUint,
    pub method: Method,
}

impl CountResult {
    pub const CSV_HEADER: &'static str = "family,m,n,count,method";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.family, self.m, self.n, self.count, self.method
        )
    }

    /// JSON object with the count as a decimal string (counts outgrow
    /// every fixed-width number type).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.name(),
            "m": self.m,
            "n": self.n,
            "count": self.count.to_string(),
            "method": self.method.name(),
        })
    }
}

/// Counts 2-factors of the m x n graph of `family` with the given
/// back-end.
pub fn count(family: Family, m: usize, n: usize, method: Method) -> Result<CountResult, Error> {
    let count = match method {
        Method::Oracle => {
            let g = GridGraph::build(family, m, n)?;
            BigUint::from(oracle::count_two_factors(&g)?)
        }
        _ => {
            validate(family, m, n)?;
            let d = TransferDigraph::build(m)?;
            match family {
                Family::Rectangular => rectangular_walks(&d, n, method),
                _ => wrapped_walks(&d, family, n),
            }
        }
    };
    Ok(CountResult {
        family,
        m,
        n,
        count,
        method,
    })
}

/// Rectangle count with the reflection-quotient back-end.
pub fn count_rectangular(m: usize, n: usize) -> Result<CountResult, Error> {
    count(Family::Rectangular, m, n, Method::RStarStar)
}

/// Thick-cylinder count (full transfer digraph).
pub fn count_thick_cylinder(m: usize, n: usize) -> Result<CountResult, Error> {
    count(Family::ThickCylinder, m, n, Method::Full)
}

/// Moebius-strip count (full transfer digraph).
pub fn count_moebius(m: usize, n: usize) -> Result<CountResult, Error> {
    count(Family::MoebiusStrip, m, n, Method::Full)
}

/// Counts for every n in `from..=to`, sharing one digraph and one pass.
pub fn count_sequence(
    family: Family,
    m: usize,
    from: usize,
    to: usize,
    method: Method,
) -> Result<Vec<CountResult>, Error> {
    if from > to {
        return Ok(Vec::new());
    }
    if method == Method::Oracle {
        return (from..=to).map(|n| count(family, m, n, method)).collect();
    }
    validate(family, m, from)?;
    let d = TransferDigraph::build(m)?;
    let counts: Vec<BigUint> = match family {
        Family::Rectangular => {
            let (rows, src) = rectangular_rows(&d, method);
            let mut v = unit_vector(rows.len(), src);
            let mut out = Vec::new();
            for n in 1..=to {
                v = sparse_step(&rows, &v);
                if n >= from {
                    out.push(v[src].clone());
                }
            }
            out
        }
        _ => {
            let mut totals = vec![BigUint::zero(); to - from + 1];
            for comp in d.components() {
                let a = CountMatrix::restricted(&d, comp.members());
                let mut p = a.pow(from as u64);
                for (slot, _) in (from..=to).enumerate() {
                    if slot > 0 {
                        p = p.mul(&a);
                    }
                    totals[slot] += wrapped_contribution(&d, comp.members(), &p, family);
                }
            }
            totals
        }
    };
    Ok(counts
        .into_iter()
        .zip(from..=to)
        .map(|(count, n)| CountResult {
            family,
            m,
            n,
            count,
            method,
        })
        .collect())
}

fn validate(family: Family, m: usize, n: usize) -> Result<(), Error> {
    let max = match family {
        Family::Rectangular => MAX_WIDTH_LINEAR,
        _ => MAX_WIDTH_WRAPPED,
    };
    if !(2..=max).contains(&m) {
        return Err(Error::WidthOutOfRange { m, min: 2, max });
    }
    if n < family.min_columns() {
        return Err(Error::LengthTooSmall {
            family,
            n,
            min: family.min_columns(),
        });
    }
    Ok(())
}

/// Closed walks at the all-zero word, by iterating a sparse row vector.
fn rectangular_walks(d: &TransferDigraph, n: usize, method: Method) -> BigUint {
    let (rows, src) = rectangular_rows(d, method);
    let mut v = unit_vector(rows.len(), src);
    for _ in 0..n {
        v = sparse_step(&rows, &v);
    }
    v.swap_remove(src)
}

/// Sparse arc rows for the chosen reduction level, and the index of the
/// all-zero word in them.
fn rectangular_rows(d: &TransferDigraph, method: Method) -> (Vec<Vec<(u32, u8)>>, usize) {
    let zero = d
        .vertex_index(OutletWord::zeros(d.width()).expect("valid width"))
        .expect("all-zero word is a vertex");
    match method {
        Method::Full => {
            let rows = (0..d.vertex_count())
                .map(|i| d.neighbors(i).iter().map(|&j| (j, 1u8)).collect())
                .collect();
            (rows, zero)
        }
        Method::RStar => {
            let members = d.base_component().members();
            let rows = members
                .iter()
                .map(|&i| {
                    d.neighbors(i as usize)
                        .iter()
                        .filter_map(|&t| {
                            members
                                .binary_search(&t)
                                .ok()
                                .map(|local| (local as u32, 1u8))
                        })
                        .collect()
                })
                .collect();
            let src = members
                .binary_search(&(zero as u32))
                .expect("all-zero word lies in its own component");
            (rows, src)
        }
        Method::RStarStar => {
            let q = QuotientDigraph::build(d, d.base_component().members());
            let src = q
                .classes()
                .iter()
                .position(|c| c.rep.bits() == 0)
                .expect("all-zero word has a class");
            let rows = (0..q.class_count()).map(|i| q.row(i).to_vec()).collect();
            (rows, src)
        }
        Method::Oracle => unreachable!("oracle counts never reach the walk engine"),
    }
}

fn unit_vector(dim: usize, at: usize) -> Vec<BigUint> {
    let mut v = vec![BigUint::zero(); dim];
    v[at] = BigUint::one();
    v
}

/// One transfer step of a row vector: out[j] = sum_i v[i] * mult(i, j).
fn sparse_step(rows: &[Vec<(u32, u8)>], v: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); v.len()];
    for (i, coeff) in v.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for &(j, mult) in &rows[i] {
            match mult {
                1 => out[j as usize] += coeff,
                _ => out[j as usize] += coeff * mult as u32,
            }
        }
    }
    out
}

/// Cylinder/moebius walk totals, one component at a time (components
/// are closed under both arcs and reversal, so traces and reversal
/// sums split across them).
fn wrapped_walks(d: &TransferDigraph, family: Family, n: usize) -> BigUint {
    let mut total = BigUint::zero();
    for comp in d.components() {
        let a = CountMatrix::restricted(d, comp.members());
        let p = a.pow(n as u64);
        total += wrapped_contribution(d, comp.members(), &p, family);
    }
    total
}

fn wrapped_contribution(
    d: &TransferDigraph,
    members: &[u32],
    power: &CountMatrix,
    family: Family,
) -> BigUint {
    match family {
        Family::ThickCylinder => power.trace(),
        Family::MoebiusStrip => {
            let mut sum = BigUint::zero();
            for (li, &vi) in members.iter().enumerate() {
                let rev = d.vertex(vi as usize).reversed();
                let rev_global = d.vertex_index(rev).expect("reversal of a vertex") as u32;
                let lj = members
                    .binary_search(&rev_global)
                    .expect("components are closed under reversal");
                sum += power.entry(li, lj);
            }
            sum
        }
        Family::Rectangular => unreachable!("rectangles use the sparse walk engine"),
    }
}

/// A dense square matrix of exact nonnegative integers, for
/// exponentiation by squaring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountMatrix {
    dim: usize,
    entries: Vec<BigUint>,
}

impl CountMatrix {
    pub fn zero(dim: usize) -> CountMatrix {
        CountMatrix {
            dim,
            entries: vec![BigUint::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> CountMatrix {
        let mut m = CountMatrix::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigUint::one();
        }
        m
    }

    /// 0/1 adjacency matrix of the whole digraph.
    pub fn adjacency(d: &TransferDigraph) -> CountMatrix {
        let mut m = CountMatrix::zero(d.vertex_count());
        for i in 0..d.vertex_count() {
            for &j in d.neighbors(i) {
                m.entries[i * m.dim + j as usize] = BigUint::one();
            }
        }
        m
    }

    /// 0/1 adjacency matrix of the sub-digraph induced by `members`
    /// (ascending vertex indices), reindexed locally.
    pub fn restricted(d: &TransferDigraph, members: &[u32]) -> CountMatrix {
        let mut m = CountMatrix::zero(members.len());
        for (li, &vi) in members.iter().enumerate() {
            for &t in d.neighbors(vi as usize) {
                if let Ok(lj) = members.binary_search(&t) {
                    m.entries[li * m.dim + lj] = BigUint::one();
                }
            }
        }
        m
    }

    /// Multiplicity matrix of a reflection quotient.
    pub fn of_quotient(q: &QuotientDigraph) -> CountMatrix {
        let mut m = CountMatrix::zero(q.class_count());
        for i in 0..q.class_count() {
            for &(j, mult) in q.row(i) {
                m.entries[i * m.dim + j as usize] = BigUint::from(mult);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, rhs: &CountMatrix) -> CountMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let dim = self.dim;
        let mut out = CountMatrix::zero(dim);
        for i in 0..dim {
            for k in 0..dim {
                let a = &self.entries[i * dim + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.entries[k * dim..(k + 1) * dim];
                let out_row = &mut out.entries[i * dim..(i + 1) * dim];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self` to the n-th power by binary exponentiation (n = 0 gives
    /// the identity).
    pub fn pow(&self, mut n: u64) -> CountMatrix {
        let mut result = CountMatrix::identity(self.dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn trace(&self) -> BigUint {
        let mut t = BigUint::zero();
        for i in 0..self.dim {
            t += &self.entries[i * self.dim + i];
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn value(family: Family, m: usize, n: usize, method: Method) -> BigUint {
        count(family, m, n, method).unwrap().count
    }

    #[test]
    fn matrix_algebra_basics() {
        let id = CountMatrix::identity(3);
        assert_eq!(id.pow(0), id);
        assert_eq!(id.pow(7), id);
        assert_eq!(id.trace(), big(3));

        // The two-class quotient of the two-row base component is the
        // Fibonacci matrix [[0,1],[1,1]].
        let d = TransferDigraph::build(2).unwrap();
        let q = QuotientDigraph::build(&d, d.base_component().members());
        let f = CountMatrix::of_quotient(&q);
        assert_eq!(
            (f.entry(0, 0), f.entry(0, 1), f.entry(1, 0), f.entry(1, 1)),
            (&big(0), &big(1), &big(1), &big(1))
        );
        let f4 = f.pow(4);
        assert_eq!(f4.entry(0, 0), &big(2));
        assert_eq!(f4.entry(1, 1), &big(5));
        assert_eq!(f.pow(1), f);
    }

    #[test]
    fn rectangle_counts_small() {
        for (n, expect) in [(2, 1u64), (3, 1), (4, 2), (5, 3), (6, 5), (7, 8)] {
            assert_eq!(count_rectangular(2, n).unwrap().count, big(expect));
        }
        assert_eq!(count_rectangular(3, 4).unwrap().count, big(3));
        // Odd-by-odd grids have no 2-factor.
        for (m, n) in [(3, 3), (3, 5), (5, 3), (5, 5), (7, 3)] {
            assert_eq!(count_rectangular(m, n).unwrap().count, big(0), "{m}x{n}");
        }
    }

    #[test]
    fn the_three_transfer_methods_agree() {
        for m in 2..=5usize {
            for n in 2..=8usize {
                let full = value(Family::Rectangular, m, n, Method::Full);
                assert_eq!(
                    full,
                    value(Family::Rectangular, m, n, Method::RStar),
                    "rstar {m}x{n}"
                );
                assert_eq!(
                    full,
                    value(Family::Rectangular, m, n, Method::RStarStar),
                    "rstarstar {m}x{n}"
                );
            }
        }
    }

    #[test]
    fn counts_match_brute_force() {
        for (fam, m, n) in [
            (Family::Rectangular, 3, 4),
            (Family::Rectangular, 4, 4),
            (Family::Rectangular, 2, 7),
            (Family::ThickCylinder, 2, 4),
            (Family::ThickCylinder, 3, 4),
            (Family::MoebiusStrip, 2, 3),
            (Family::MoebiusStrip, 3, 4),
            (Family::MoebiusStrip, 4, 2),
        ] {
            assert_eq!(
                value(fam, m, n, Method::Full),
                value(fam, m, n, Method::Oracle),
                "{fam} {m}x{n}"
            );
        }
    }

    #[test]
    fn wrapped_counts_frozen_values() {
        assert_eq!(count_thick_cylinder(2, 3).unwrap().count, big(4));
        assert_eq!(count_moebius(2, 2).unwrap().count, big(3));
        // The parallel-edge case: the two-column moebius strip with
        // three rows, including its two-edge cycle factor.
        assert_eq!(count_moebius(3, 2).unwrap().count, big(11));
    }

    /// Splitting the trace and the reversal sum across components is
    /// exactly the full-matrix computation.
    #[test]
    fn component_split_equals_full_matrix() {
        for m in 2..=4usize {
            let d = TransferDigraph::build(m).unwrap();
            let a = CountMatrix::adjacency(&d);
            for n in 3..=6usize {
                let p = a.pow(n as u64);
                assert_eq!(
                    p.trace(),
                    wrapped_walks(&d, Family::ThickCylinder, n),
                    "tkc m={m} n={n}"
                );
                let mut anti = BigUint::zero();
                for i in 0..d.vertex_count() {
                    let j = d.vertex_index(d.vertex(i).reversed()).unwrap();
                    anti += p.entry(i, j);
                }
                assert_eq!(
                    anti,
                    wrapped_walks(&d, Family::MoebiusStrip, n),
                    "ms m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn sequences_match_single_counts() {
        let seq = count_sequence(Family::Rectangular, 2, 2, 6, Method::RStarStar).unwrap();
        let counts: Vec<u64> = seq
            .iter()
            .map(|r| u64::try_from(&r.count).unwrap())
            .collect();
        assert_eq!(counts, [1, 1, 2, 3, 5]);
        assert!(seq.iter().zip(2..).all(|(r, n)| r.n == n));

        for fam in Family::ALL {
            let from = fam.min_columns();
            let seq = count_sequence(fam, 3, from, from + 4, Method::Full).unwrap();
            assert_eq!(seq.len(), 5);
            for r in &seq {
                assert_eq!(r.count, value(fam, 3, r.n, Method::Full), "{fam} n={}", r.n);
                assert_eq!((r.family, r.m, r.method), (fam, 3, Method::Full));
            }
        }

        assert!(count_sequence(Family::Rectangular, 2, 5, 4, Method::Full)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn result_serialization() {
        let r = count_rectangular(2, 5).unwrap();
        assert_eq!(r.csv_row(), "rg,2,5,3,rstarstar");
        let j = r.to_json();
        assert_eq!(j["family"], "rg");
        assert_eq!(j["count"], "3");
        assert_eq!(j["n"], 5);

        let m: Method = "rstar".parse().unwrap();
        assert_eq!(m, Method::RStar);
        assert!("fastest".parse::<Method>().is_err());
    }

    #[test]
    fn input_validation() {
        assert!(matches!(
            count(Family::Rectangular, 1, 4, Method::Full),
            Err(Error::WidthOutOfRange { .. })
        ));
        assert!(matches!(
            count(Family::ThickCylinder, 13, 4, Method::Full),
            Err(Error::WidthOutOfRange { .. })
        ));
        assert!(matches!(
            count(Family::ThickCylinder, 3, 2, Method::Full),
            Err(Error::LengthTooSmall { .. })
        ));
        assert!(matches!(
            count(Family::Rectangular, 2, 1, Method::RStarStar),
            Err(Error::LengthTooSmall { .. })
        ));
        // Oracle bounds are its own: vertex count, not width.
        assert!(matches!(
            count(Family::Rectangular, 5, 5, Method::Oracle),
            Err(Error::BoundExceeded { .. })
        ));
    }

    /// Big numbers round-trip exactly: a 12-row cylinder count is far
    /// beyond u64 but stays exact.
    #[test]
    fn counts_stay_exact_beyond_machine_words() {
        let r = count_rectangular(10, 40).unwrap();
        let s = r.count.to_string();
        assert!(s.len() > 20, "expected a big number, got {s}");
        // Decimal round trip.
        assert_eq!(s.parse::<BigUint>().unwrap(), r.count);
    }
}
