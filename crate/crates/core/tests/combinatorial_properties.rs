mod common;

use hypermotive::combinatorics::binomial;
use hypermotive::exterior::{graded_rank, graded_rank_rational, nbc_basis, os_generators, QuotientReducer};
use hypermotive::motive::{module_basis, poincare_polynomial, tate_twists};
use hypermotive::{Arrangement, Field};
use proptest::prelude::*;

fn arrangement_strategy() -> impl Strategy<Value = Arrangement> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n + 1), 1..=6).prop_filter_map(
            "distinct nonzero forms",
            move |rows| common::build(&Field::Rationals, n, &rows).ok(),
        )
    })
}

fn check_dual_algorithms(a: &Arrangement) -> Result<(), TestCaseError> {
    let g = graded_rank(a);
    prop_assert!(g.is_free(), "torsion in {}", a);
    prop_assert_eq!(&g.ranks, &graded_rank_rational(a));
    prop_assert_eq!(poincare_polynomial(a), g.trimmed());
    let basis = module_basis(a);
    prop_assert_eq!(basis.len(), g.total());
    prop_assert_eq!(&basis, &nbc_basis(a));
    for (n, m) in &tate_twists(a).counts {
        prop_assert!(*n <= a.dimension());
        prop_assert_eq!(*m, g.ranks[*n]);
    }
    prop_assert_eq!(tate_twists(a).multiplicity(0), 1);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twists_match_exterior_ranks(a in arrangement_strategy()) {
        check_dual_algorithms(&a)?;
    }

    #[test]
    fn twists_do_not_depend_on_order(a in arrangement_strategy(), rot in 0usize..6) {
        let r = a.len();
        let order: Vec<usize> = (0..r).map(|i| (i + rot) % r).collect();
        let b = a.permuted(&order).unwrap();
        prop_assert_eq!(tate_twists(&a), tate_twists(&b));
        prop_assert_eq!(graded_rank(&a).ranks, graded_rank(&b).ranks);
    }

    #[test]
    fn normal_crossing_counts(a in arrangement_strategy()) {
        if a.is_normal_crossing() {
            let g = graded_rank(&a);
            for (d, &rank) in g.ranks.iter().enumerate() {
                let expected = if d <= a.dimension() { binomial(a.len(), d) } else { 0 };
                prop_assert_eq!(rank, expected);
            }
        }
    }

    #[test]
    fn basis_is_an_integral_basis_of_the_quotient(a in arrangement_strategy()) {
        let reducer = QuotientReducer::new(&a);
        prop_assert!(reducer.is_ok(), "{:?}", reducer.err());
        let reducer = reducer.unwrap();
        for g in os_generators(&a) {
            prop_assert!(reducer.reduce(&g).is_zero());
        }
    }

    #[test]
    fn circuits_are_minimal_dependencies(a in arrangement_strategy()) {
        for c in a.circuits() {
            let flat = a.flat_of(&c.indices);
            prop_assert_eq!(c.constant == 1, flat.is_empty());
            for k in 0..c.indices.len() {
                let mut sub = c.indices.clone();
                sub.remove(k);
                prop_assert!(a.affine_dependency(&sub).is_none());
            }
        }
    }
}

#[test]
fn corpus_over_prime_fields_matches_too() {
    for field in [Field::Prime(2), Field::Prime(5), Field::Prime(7)] {
        for (name, a) in common::corpus_over(&field) {
            let g = graded_rank(&a);
            assert!(g.is_free(), "{name} over {field}");
            assert_eq!(poincare_polynomial(&a), g.trimmed(), "{name} over {field}");
            assert_eq!(module_basis(&a), nbc_basis(&a), "{name} over {field}");
        }
    }
}
