//! Runtime-selectable counting strategies.
//!
//! Every counting back-end lives behind the [`CountMethod`] trait and
//! is registered by name in [`METHODS`]; callers — the CLI in
//! particular — pick one at runtime with [`by_name`].  All registered
//! strategies return identical numbers on any input they all accept;
//! they differ in how they get there and in how large an input they can
//! stomach.

use crate::counting::{self, CountResult, Method};
use crate::error::Error;
use crate::Family;

/// One way of producing exact 2-factor counts.
pub trait CountMethod: Sync {
    /// Registry name, as selected on the command line.
    fn name(&self) -> &'static str;

    /// One-line description of how this strategy counts.
    fn describe(&self) -> &'static str;

    /// Exact count for the m x n graph of the family.
    fn count(&self, family: Family, m: usize, n: usize) -> Result<CountResult, Error>;

    /// Counts for every n in `from..=to` (empty when `from > to`).
    /// Strategies that can share work across lengths override this.
    fn sequence(
        &self,
        family: Family,
        m: usize,
        from: usize,
        to: usize,
    ) -> Result<Vec<CountResult>, Error> {
        (from..=to).map(|n| self.count(family, m, n)).collect()
    }
}

/// Walk counting on the full transfer digraph.
pub struct FullDigraph;

/// Walk counting restricted to the component of the all-zero word.
pub struct BaseComponent;

/// Walk counting on the reflection quotient of the base component.
pub struct ReflectionQuotient;

/// Exhaustive backtracking enumeration; tiny graphs only, but
/// completely independent of the transfer machinery.
pub struct BruteForce;

macro_rules! transfer_strategy {
    ($type:ty, $method:expr, $name:literal, $describe:literal) => {
        impl CountMethod for $type {
            fn name(&self) -> &'static str {
                $name
            }

            fn describe(&self) -> &'static str {
                $describe
            }

            fn count(&self, family: Family, m: usize, n: usize) -> Result<CountResult, Error> {
                counting::count(family, m, n, $method)
            }

            fn sequence(
                &self,
                family: Family,
                m: usize,
                from: usize,
                to: usize,
            ) -> Result<Vec<CountResult>, Error> {
                counting::count_sequence(family, m, from, to, $method)
            }
        }
    };
}

transfer_strategy!(
    FullDigraph,
    Method::Full,
    "full",
    "walk counts over the whole transfer digraph"
);
transfer_strategy!(
    BaseComponent,
    Method::RStar,
    "rstar",
    "walk counts restricted to the component of the all-zero word"
);
transfer_strategy!(
    ReflectionQuotient,
    Method::RStarStar,
    "rstarstar",
    "walk counts on the reflection quotient of the base component"
);
transfer_strategy!(
    BruteForce,
    Method::Oracle,
    "oracle",
    "exhaustive enumeration by backtracking (tiny graphs only)"
);

/// The strategy registry, in presentation order.
pub static METHODS: [&dyn CountMethod; 4] =
    [&FullDigraph, &BaseComponent, &ReflectionQuotient, &BruteForce];

/// Looks a strategy up by its registry name.
pub fn by_name(name: &str) -> Result<&'static dyn CountMethod, Error> {
    METHODS
        .iter()
        .copied()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::UnknownMethod(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_and_lookup() {
        let names: Vec<&str> = METHODS.iter().map(|m| m.name()).collect();
        assert_eq!(names, ["full", "rstar", "rstarstar", "oracle"]);
        for &strategy in &METHODS {
            assert_eq!(by_name(strategy.name()).unwrap().name(), strategy.name());
            assert!(!strategy.describe().is_empty());
        }
        assert!(matches!(by_name("fastest"), Err(Error::UnknownMethod(_))));
    }

    #[test]
    fn all_strategies_agree_where_all_apply() {
        for (family, m, n) in [
            (Family::Rectangular, 3, 4),
            (Family::ThickCylinder, 2, 4),
            (Family::MoebiusStrip, 3, 3),
        ] {
            let counts: Vec<_> = METHODS
                .iter()
                .map(|s| s.count(family, m, n).unwrap().count)
                .collect();
            assert!(
                counts.windows(2).all(|w| w[0] == w[1]),
                "{family} {m}x{n}: {counts:?}"
            );
        }
    }

    #[test]
    fn sequences_tag_their_strategy() {
        let seq = by_name("rstar")
            .unwrap()
            .sequence(Family::Rectangular, 2, 2, 5)
            .unwrap();
        assert_eq!(seq.len(), 4);
        assert!(seq.iter().all(|r| r.method == Method::RStar));

        // The default sequence implementation (used by the oracle) just
        // counts each length.
        let brute = by_name("oracle")
            .unwrap()
            .sequence(Family::Rectangular, 2, 2, 5)
            .unwrap();
        let fast: Vec<_> = seq.iter().map(|r| &r.count).collect();
        let slow: Vec<_> = brute.iter().map(|r| &r.count).collect();
        assert_eq!(fast, slow);
    }
}
