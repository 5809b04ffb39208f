//! Mechanical verification of every structural fact the fast counting
//! paths rely on.
//!
//! Each `verify_*` function builds the relevant objects for one width
//! and checks them against closed-form expectations and against the
//! brute-force oracle, reporting every check individually: a report is
//! always fully materialized, so one run diagnoses all drift at once
//! rather than stopping at the first failure.
//!
//! The facts checked here are exactly the ones the counting engine
//! assumes: arcs biject with column words and are symmetric; components
//! are the constant-|Z| classes, counted and sized by binomials; the
//! red/green split is the bipartition; reversal fixes every component
//! and the base component carries all closed walks at the all-zero
//! word; the reflection quotient is class-regular (so quotient walks
//! count original walks); and all counting back-ends agree with each
//! other and with exhaustive enumeration.

use std::fmt::Display;

use serde::Serialize;

use crate::alpha::{Color, OutletWord};
use crate::counting::{self, Method};
use crate::error::Error;
use crate::transfer::{count_valid_columns, unique_column, QuotientDigraph, TransferDigraph};
use crate::Family;

/// Largest grid (in vertices) compared against the brute-force
/// enumerator per family; chosen to keep a full verification run fast
/// while staying within the enumerator's own bound.
pub const ORACLE_BUDGET_RECTANGULAR: usize = 20;
pub const ORACLE_BUDGET_WRAPPED: usize = 16;

/// Exact binomial coefficient (multiplicative scheme, exact at every
/// intermediate step; no floating point anywhere).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - k + 1 + i) as u128 / (i + 1) as u128;
    }
    acc
}

/// One verified claim.
#[derive(Serialize, Clone, Debug)]
pub struct Check {
    pub name: String,
    pub locus: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// All checks for one width, with the overall verdict.
#[derive(Serialize, Clone, Debug)]
pub struct CheckReport {
    pub m: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl CheckReport {
    fn new(m: usize) -> CheckReport {
        CheckReport {
            m,
            checks: Vec::new(),
            pass: true,
        }
    }

    fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    fn push_eq<T: PartialEq + Display>(&mut self, name: &str, locus: &str, expected: T, actual: T) {
        self.push(Check {
            name: name.to_string(),
            locus: locus.to_string(),
            pass: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    fn push_fact(&mut self, name: &str, locus: &str, claim: &str, holds: bool) {
        self.push(Check {
            name: name.to_string(),
            locus: locus.to_string(),
            expected: claim.to_string(),
            actual: if holds { "holds" } else { "violated" }.to_string(),
            pass: holds,
        });
    }

    /// Appends another report for the same width.
    pub fn merge(&mut self, other: CheckReport) {
        debug_assert_eq!(self.m, other.m);
        self.pass &= other.pass;
        self.checks.extend(other.checks);
    }

    /// Plain-text rendering: one aligned line per check, then the
    /// verdict.
    pub fn render_text(&self) -> String {
        let name_w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let locus_w = self.checks.iter().map(|c| c.locus.len()).max().unwrap_or(0);
        let mut out = format!("verification report for m={}\n", self.m);
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {:<name_w$}  {:<locus_w$}  expected: {}  actual: {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.locus,
                c.expected,
                c.actual,
            ));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        if self.pass {
            out.push_str(&format!("result: PASS ({} checks)\n", self.checks.len()));
        } else {
            out.push_str(&format!(
                "result: FAIL ({passed}/{} checks passed)\n",
                self.checks.len()
            ));
        }
        out
    }
}

/// Closed-form size of the component with Z-parameter `s`.
fn component_size_formula(m: usize, s: u32) -> u128 {
    let (m64, s64) = (m as u64, s as u64);
    let half = m64 / 2;
    if s == 0 {
        binomial(m64, half)
    } else if s64 > half {
        0
    } else if m.is_multiple_of(2) {
        2 * binomial(m64, half - s64)
    } else {
        binomial(m64 + 1, half + 1 - s64)
    }
}

/// Closed-form (red, green) sizes inside the component with parameter
/// `s >= 1`.
fn red_green_formula(m: usize, s: u32) -> (u128, u128) {
    let (m64, s64) = (m as u64, s as u64);
    let k = m64 / 2;
    if s64 > k {
        return (0, 0);
    }
    if m.is_multiple_of(2) {
        (binomial(m64, k - s64), binomial(m64, k - s64))
    } else {
        (binomial(m64, k - s64 + 1), binomial(m64, k - s64))
    }
}

/// Palindromes inside the base component, in closed form.
fn base_palindromes_formula(m: usize) -> u128 {
    if m % 2 == 1 {
        let half = (m as u64).div_ceil(2);
        binomial(half, half / 2)
    } else {
        1u128 << (m / 2)
    }
}

/// Order of the base component, in closed form.
fn base_order_formula(m: usize) -> u128 {
    let m64 = m as u64;
    if m % 2 == 1 {
        binomial(m64 + 1, (m64 - 1) / 2)
    } else {
        binomial(m64, m64 / 2)
    }
}

/// Order of the reflection quotient of the base component, in closed
/// form.
fn quotient_order_formula(m: usize) -> u128 {
    (base_order_formula(m) + base_palindromes_formula(m)) / 2
}

/// Digraph-level structure: order, arc bijection and symmetry, the
/// component/|Z| correspondence with all sizes and color splits, and
/// the action of reversal.
pub fn verify_structure(m: usize) -> Result<CheckReport, Error> {
    let d = TransferDigraph::build(m)?;
    let mut r = CheckReport::new(m);

    r.push_eq(
        "vertex-count",
        "transfer digraph order",
        (1u128 << m) - (m % 2) as u128,
        d.vertex_count() as u128,
    );
    r.push_eq(
        "arc-count",
        "arcs biject with column words",
        count_valid_columns(m)? as u128,
        d.arc_count() as u128,
    );

    if let Some(x) = OutletWord::excluded_word(m) {
        let mut unreachable = d.vertex_index(x).is_none();
        for bits in 0..(1u32 << m) {
            let w = OutletWord::new(m, bits)?;
            unreachable &= unique_column(x, w).is_none() && unique_column(w, x).is_none();
        }
        r.push_fact(
            "excluded-word-unreachable",
            "excluded outlet word",
            "the alternating word is no seam of any column",
            unreachable,
        );
    }

    let symmetric = (0..d.vertex_count())
        .all(|i| d.neighbors(i).iter().all(|&j| d.has_arc(j as usize, i)));
    r.push_fact(
        "arc-symmetry",
        "arc reversibility",
        "every arc is present in both directions",
        symmetric,
    );

    r.push_eq(
        "component-count",
        "number of components",
        (m / 2 + 1) as u128,
        d.component_count() as u128,
    );

    let mut z_uniform = true;
    for (i, w) in d.vertices().iter().enumerate() {
        let comp = &d.components()[d.component_id(i)];
        z_uniform &= w.class().is_ok_and(|c| c.s == comp.s);
    }
    let mut s_values: Vec<u32> = d.components().iter().map(|c| c.s).collect();
    s_values.sort_unstable();
    let distinct = s_values.windows(2).all(|w| w[0] < w[1]);
    r.push_fact(
        "component-z-uniform",
        "components are the |Z| classes",
        "|Z| is constant on each component and distinct across components",
        z_uniform && distinct,
    );

    let mut by_s: Vec<_> = d.components().iter().collect();
    by_s.sort_by_key(|c| c.s);
    let sizes_expected: Vec<String> = (0..=m as u32 / 2)
        .map(|s| format!("s={s}:{}", component_size_formula(m, s)))
        .collect();
    let sizes_actual: Vec<String> = by_s.iter().map(|c| format!("s={}:{}", c.s, c.size())).collect();
    r.push_eq(
        "component-sizes",
        "component sizes by |Z|",
        sizes_expected.join(" "),
        sizes_actual.join(" "),
    );

    let split_expected: Vec<String> = (1..=m as u32 / 2)
        .map(|s| {
            let (red, green) = red_green_formula(m, s);
            format!("s={s}:{red}/{green}")
        })
        .collect();
    let split_actual: Vec<String> = by_s
        .iter()
        .filter(|c| c.s > 0)
        .map(|c| format!("s={}:{}/{}", c.s, c.red, c.green))
        .collect();
    r.push_eq(
        "red-green-split",
        "red/green class sizes",
        split_expected.join(" "),
        split_actual.join(" "),
    );

    let mut alternates = true;
    for (i, w) in d.vertices().iter().enumerate() {
        if d.components()[d.component_id(i)].s == 0 {
            continue;
        }
        let color = w.class()?.color;
        for &j in d.neighbors(i) {
            let other = d.vertex(j as usize).class()?.color;
            alternates &= color != other
                && color != Color::Neutral
                && other != Color::Neutral;
        }
    }
    r.push_fact(
        "red-green-alternation",
        "bipartition of nonneutral components",
        "every arc in an |Z| > 0 component joins red to green",
        alternates,
    );

    let mut rev_closed = true;
    let mut color_action = true;
    for (i, w) in d.vertices().iter().enumerate() {
        let rev = w.reversed();
        let ri = d.vertex_index(rev).expect("reversal of a vertex is a vertex");
        rev_closed &= d.component_id(i) == d.component_id(ri);
        let (c, rc) = (w.class()?.color, rev.class()?.color);
        if c != Color::Neutral {
            color_action &= if m % 2 == 1 { rc == c } else { rc != c && rc != Color::Neutral };
        }
    }
    r.push_fact(
        "reversal-closure",
        "reversal fixes components",
        "v and reversed(v) always share a component",
        rev_closed,
    );
    r.push_fact(
        "reversal-color-action",
        "reversal on colors",
        "reversal preserves colors for odd widths and swaps them for even widths",
        color_action,
    );

    r.push_eq(
        "base-component-class",
        "sign class of the all-zero word",
        (m % 2) as u32,
        d.base_component().s,
    );

    Ok(r)
}

/// The orders of the two reductions, and the soundness of the quotient:
/// multiplicities stay in {1, 2} and rows are class-regular.
pub fn verify_reductions(m: usize) -> Result<CheckReport, Error> {
    let d = TransferDigraph::build(m)?;
    let base = d.base_component();
    let mut r = CheckReport::new(m);

    r.push_eq(
        "rstar-order",
        "base component order",
        base_order_formula(m),
        base.size() as u128,
    );

    let q = QuotientDigraph::build(&d, base.members());
    r.push_eq(
        "rstarstar-order",
        "reflection quotient order",
        quotient_order_formula(m),
        q.class_count() as u128,
    );

    let bounded = (0..q.class_count())
        .all(|i| q.row(i).iter().all(|&(_, mult)| mult == 1 || mult == 2));
    r.push_fact(
        "quotient-multiplicities",
        "quotient arc multiplicities",
        "every quotient multiplicity is 1 or 2",
        bounded,
    );

    // Class-regularity: each member of a class, not only the
    // representative, has the same number of arcs into every class.
    // This is what makes quotient walks count original walks.
    let mut class_of = vec![u32::MAX; d.vertex_count()];
    for (ci, class) in q.classes().iter().enumerate() {
        class_of[d.vertex_index(class.rep).expect("member")] = ci as u32;
        if let Some(mate) = class.mate {
            class_of[d.vertex_index(mate).expect("member")] = ci as u32;
        }
    }
    let mut regular = true;
    for &v in base.members() {
        let ci = class_of[v as usize] as usize;
        let mut seen = vec![0u8; q.class_count()];
        for &t in d.neighbors(v as usize) {
            let cj = class_of[t as usize];
            if cj != u32::MAX {
                seen[cj as usize] += 1;
            }
        }
        for (cj, &count) in seen.iter().enumerate() {
            regular &= count == q.multiplicity(ci, cj);
        }
    }
    r.push_fact(
        "quotient-regularity",
        "equitable quotient rows",
        "every class member has the row of its representative",
        regular,
    );

    Ok(r)
}

/// Palindrome counts: total, inside the base component, and (for even
/// widths) concentration of all palindromes in the base component.
pub fn verify_palindromes(m: usize) -> Result<CheckReport, Error> {
    let d = TransferDigraph::build(m)?;
    let base = d.base_component();
    let mut r = CheckReport::new(m);

    let mut total = 0u128;
    let mut all_in_base = true;
    for (i, w) in d.vertices().iter().enumerate() {
        if w.is_palindrome() {
            total += 1;
            all_in_base &= d.component_id(i) == 0 && w.z() == 0;
        }
    }
    if m % 2 == 1 {
        // The excluded word is a palindrome too; count it back in.
        total += 1;
    }
    r.push_eq(
        "palindrome-total",
        "palindromes among all words",
        1u128 << m.div_ceil(2),
        total,
    );

    r.push_eq(
        "palindromes-in-base",
        "palindromes in the base component",
        base_palindromes_formula(m),
        base.palindromes as u128,
    );

    if m.is_multiple_of(2) {
        r.push_fact(
            "palindromes-concentrate",
            "palindromes for even widths",
            "every palindrome lies in the base component with Z = 0",
            all_in_base,
        );
    }

    Ok(r)
}

/// Numerical agreement: the three transfer back-ends on rectangles for
/// every length up to `n_max`, and all families against exhaustive
/// enumeration wherever the grid is small enough.
pub fn verify_counts(m: usize, n_max: usize) -> Result<CheckReport, Error> {
    let mut r = CheckReport::new(m);
    if n_max < 2 {
        return Ok(r);
    }

    let full = counting::count_sequence(Family::Rectangular, m, 2, n_max, Method::Full)?;
    let rstar = counting::count_sequence(Family::Rectangular, m, 2, n_max, Method::RStar)?;
    let rstarstar = counting::count_sequence(Family::Rectangular, m, 2, n_max, Method::RStarStar)?;
    for (i, n) in (2..=n_max).enumerate() {
        let (a, b, c) = (&full[i].count, &rstar[i].count, &rstarstar[i].count);
        if a == b && b == c {
            r.push_eq(
                &format!("methods-agree-n{n}"),
                "full = rstar = rstarstar",
                a.to_string(),
                a.to_string(),
            );
        } else {
            r.push_eq(
                &format!("methods-agree-n{n}"),
                "full = rstar = rstarstar",
                "three equal counts".to_string(),
                format!("full={a} rstar={b} rstarstar={c}"),
            );
        }
    }

    for n in 2..=n_max {
        if m * n <= ORACLE_BUDGET_RECTANGULAR {
            let oracle = counting::count(Family::Rectangular, m, n, Method::Oracle)?;
            r.push_eq(
                &format!("oracle-rg-n{n}"),
                "rectangle vs. enumeration",
                oracle.count.to_string(),
                rstarstar[n - 2].count.to_string(),
            );
        }
        if m * n <= ORACLE_BUDGET_WRAPPED {
            if n >= 3 {
                let oracle = counting::count(Family::ThickCylinder, m, n, Method::Oracle)?;
                let fast = counting::count(Family::ThickCylinder, m, n, Method::Full)?;
                r.push_eq(
                    &format!("oracle-tkc-n{n}"),
                    "thick cylinder vs. enumeration",
                    oracle.count.to_string(),
                    fast.count.to_string(),
                );
            }
            let oracle = counting::count(Family::MoebiusStrip, m, n, Method::Oracle)?;
            let fast = counting::count(Family::MoebiusStrip, m, n, Method::Full)?;
            r.push_eq(
                &format!("oracle-ms-n{n}"),
                "moebius strip vs. enumeration",
                oracle.count.to_string(),
                fast.count.to_string(),
            );
        }
    }

    Ok(r)
}

/// Runs every verification for one width and merges the reports.
pub fn verify_all(m: usize, n_max: usize) -> Result<CheckReport, Error> {
    let mut r = verify_structure(m)?;
    r.merge(verify_reductions(m)?);
    r.merge(verify_palindromes(m)?);
    r.merge(verify_counts(m, n_max)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascals_rule() {
        for n in 0..=20u64 {
            for k in 0..=n {
                let direct = binomial(n, k);
                let pascal = if k == 0 || k == n {
                    1
                } else {
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                };
                assert_eq!(direct, pascal, "C({n},{k})");
            }
        }
        assert_eq!(binomial(5, 9), 0);
        assert_eq!(binomial(12, 5), 792);
        assert_eq!(binomial(12, 6), 924);
    }

    #[test]
    fn structure_passes_for_small_widths() {
        for m in 2..=9usize {
            let report = verify_structure(m).unwrap();
            assert!(report.pass, "m={m}:\n{}", report.render_text());
        }
    }

    #[test]
    fn reductions_pass_for_small_widths() {
        for m in 2..=9usize {
            let report = verify_reductions(m).unwrap();
            assert!(report.pass, "m={m}:\n{}", report.render_text());
        }
        // Spot-check the reduction orders recorded in the report.
        let report = verify_reductions(7).unwrap();
        let find = |name: &str| {
            report
                .checks
                .iter()
                .find(|c| c.name == name)
                .unwrap_or_else(|| panic!("missing check {name}"))
                .clone()
        };
        assert_eq!(find("rstar-order").expected, "56");
        assert_eq!(find("rstarstar-order").expected, "31");
    }

    #[test]
    fn palindromes_pass_for_small_widths() {
        for m in 2..=9usize {
            let report = verify_palindromes(m).unwrap();
            assert!(report.pass, "m={m}:\n{}", report.render_text());
        }
        let report = verify_palindromes(5).unwrap();
        let base = report
            .checks
            .iter()
            .find(|c| c.name == "palindromes-in-base")
            .unwrap();
        assert_eq!(base.expected, "3");
    }

    #[test]
    fn counts_pass_for_small_widths() {
        for m in 2..=4usize {
            let report = verify_counts(m, 6).unwrap();
            assert!(report.pass, "m={m}:\n{}", report.render_text());
            assert!(!report.checks.is_empty());
        }
        assert!(verify_counts(2, 1).unwrap().checks.is_empty());
    }

    #[test]
    fn report_structure_and_rendering() {
        let mut r = CheckReport::new(3);
        r.push_eq("first", "somewhere", 4, 4);
        r.push_eq("second", "elsewhere", 7, 8);
        r.push_fact("third", "a law", "things hold", true);
        // All checks materialize even after a failure.
        assert_eq!(r.checks.len(), 3);
        assert!(!r.pass);
        assert!(r.checks[0].pass && !r.checks[1].pass && r.checks[2].pass);

        let text = r.render_text();
        assert!(text.contains("[PASS] first"));
        assert!(text.contains("[FAIL] second"));
        assert!(text.contains("expected: 7  actual: 8"));
        assert!(text.contains("result: FAIL (2/3 checks passed)"));

        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["m"], 3);
        assert_eq!(json["pass"], false);
        assert_eq!(json["checks"][1]["name"], "second");
        assert_eq!(json["checks"][1]["expected"], "7");
        assert_eq!(json["checks"][2]["pass"], true);
    }

    #[test]
    fn merged_report_covers_all_sections() {
        let all = verify_all(3, 5).unwrap();
        assert!(all.pass, "{}", all.render_text());
        for name in [
            "vertex-count",
            "arc-count",
            "excluded-word-unreachable",
            "component-sizes",
            "rstar-order",
            "rstarstar-order",
            "quotient-regularity",
            "palindromes-in-base",
            "methods-agree-n3",
            "oracle-rg-n4",
            "oracle-tkc-n3",
            "oracle-ms-n2",
        ] {
            assert!(
                all.checks.iter().any(|c| c.name == name),
                "missing {name} in:\n{}",
                all.render_text()
            );
        }
        let text = all.render_text();
        assert!(text.starts_with("verification report for m=3"));
        assert!(text.trim_end().ends_with("checks)"));
    }
}
