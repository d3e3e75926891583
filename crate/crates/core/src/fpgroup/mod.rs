//! Finitely presented groups: presentations, Tietze simplification, Smith
//! normal form, low-index subgroups and the `Iⁿ` invariant.

mod abelian;
mod lowindex;
mod presentation;
mod tietze;

use std::collections::BTreeSet;

pub use abelian::{abelianization, abs_determinant, first_homology, integer_rank, smith_normal_form, AbelianGroup};
pub use lowindex::{low_index_subgroups, subgroup_presentation, CosetTable};
pub use presentation::GroupPresentation;
pub use tietze::{tietze_simplify, DEFAULT_BUDGET};

/// The invariant `Iⁿ`: abelianizations of all subgroups of index at most `n`,
/// as a set of isomorphism classes.
pub fn invariant_in(p: &GroupPresentation, n: usize) -> BTreeSet<AbelianGroup> {
    low_index_subgroups(p, n)
        .iter()
        .map(|t| abelianization(&subgroup_presentation(p, t).expect("enumerated tables are valid")))
        .collect()
}

/// Renders an invariant value as `{A, B, ...}`.
pub fn format_invariant(set: &BTreeSet<AbelianGroup>) -> String {
    let parts: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> GroupPresentation {
        GroupPresentation::parse(text).unwrap()
    }

    #[test]
    fn invariant_examples() {
        let z = p("< a | >");
        for n in 1..=4 {
            assert_eq!(format_invariant(&invariant_in(&z, n)), "{Z}");
        }
        let trefoil = p("< x, y | x^2 y^-3 >");
        assert_eq!(format_invariant(&invariant_in(&trefoil, 2)), "{Z, Z + Z/3}");
        let figure_eight = p("< a, b | a b^-1 a^-1 b a b a^-1 b^-1 a^-1 b >");
        assert_eq!(abelianization(&figure_eight), AbelianGroup::free(1));
        assert_eq!(format_invariant(&invariant_in(&figure_eight, 2)), "{Z, Z + Z/5}");
    }

    #[test]
    fn invariant_survives_tietze_and_relabeling() {
        let a = p("< a, b, c | a b a^-1 c^-1, b c b^-1 a^-1 >");
        let b = tietze_simplify(&a, DEFAULT_BUDGET);
        let swapped = GroupPresentation::new(
            vec!["c".into(), "b".into(), "a".into()],
            a.relators.iter().map(|w| w.map_ids(|i| 2 - i)).collect(),
        );
        for n in 1..=3 {
            let base = invariant_in(&a, n);
            assert_eq!(invariant_in(&b, n), base);
            assert_eq!(invariant_in(&swapped, n), base);
        }
    }
}
