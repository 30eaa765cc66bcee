//! Property tests for the algebra kernel.

use hopfmi::algebra::{bilinear_extend, ratio, LinComb, Multiset, Rational};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn small_comb() -> impl Strategy<Value = LinComb<u8>> {
    proptest::collection::vec((0u8..6, small_rational()), 0..6)
        .prop_map(LinComb::from_terms)
}

fn small_multiset() -> impl Strategy<Value = Multiset<u8>> {
    proptest::collection::vec(0u8..4, 0..8).prop_map(Multiset::from_elements)
}

proptest! {
    #[test]
    fn addition_commutes_and_associates(x in small_comb(), y in small_comb(), z in small_comb()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
    }

    #[test]
    fn scalar_action_distributes(x in small_comb(), y in small_comb(), c in small_rational()) {
        prop_assert_eq!(x.add(&y).scale(&c), x.scale(&c).add(&y.scale(&c)));
        prop_assert_eq!(x.combine(&y, &c), x.add(&y.scale(&c)));
    }

    #[test]
    fn cancellation_gives_zero(x in small_comb()) {
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn bilinear_extension_is_additive(x in small_comb(), x2 in small_comb(), y in small_comb()) {
        let f = |a: &u8, b: &u8| LinComb::basis((*a, *b));
        let lhs = bilinear_extend(f, &x.add(&x2), &y);
        let rhs = bilinear_extend(f, &x, &y).add(&bilinear_extend(f, &x2, &y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn split_multiplicities_sum_to_two_power(m in small_multiset()) {
        let splits = m.splits();
        let total: u64 = splits.iter().map(|(_, _, k)| k).sum();
        prop_assert_eq!(total, 1u64 << m.len());
        for (sub, rest, _) in splits {
            prop_assert_eq!(sub.union(&rest), m.clone());
        }
    }
}
