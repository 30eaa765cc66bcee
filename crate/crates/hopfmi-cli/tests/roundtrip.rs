//! parse ∘ serialize is the identity: exhaustively over low-degree basis
//! elements and operation outputs, plus randomized combinations.

use hopfmi::algebra::{ratio, LinComb, Rational};
use hopfmi::alphabet::Alphabet;
use hopfmi::fertility::{jmath_monomial, PhiFibers};
use hopfmi::forests::Enumerator;
use hopfmi::hopflot::{antipode_bag, coproduct_lot_monomial};
use hopfmi::multiindex::{enumerate_bags, enumerate_monomials};
use hopfmi_cli::output::{parse_json_lincomb, parse_json_tensor_bag, OutputDoc};
use hopfmi_cli::parse::{parse, ExprValue};
use proptest::prelude::*;

fn alphabets() -> Vec<Alphabet> {
    vec![Alphabet::single_a(), Alphabet::new(['a', 'b']).unwrap()]
}

fn roundtrip(value: &ExprValue, alphabet: &Alphabet) {
    let text = OutputDoc::Lin(value.clone()).to_text(alphabet);
    let parsed = parse(&text, value.sort(), alphabet).unwrap_or_else(|e| {
        panic!("cannot reparse {text:?}: {e}");
    });
    assert_eq!(&parsed, value, "text was {text:?}");

    let json = OutputDoc::Lin(value.clone()).to_json(alphabet);
    let parsed = parse_json_lincomb(&json, alphabet).unwrap();
    assert_eq!(&parsed, value, "json was {json}");
}

#[test]
fn basis_elements_round_trip() {
    for alphabet in alphabets() {
        for d in 1..=4 {
            for k in enumerate_monomials(d, &alphabet) {
                roundtrip(&ExprValue::MultiIndex(LinComb::basis(k)), &alphabet);
            }
            for b in enumerate_bags(d, &alphabet) {
                roundtrip(&ExprValue::Bag(LinComb::basis(b)), &alphabet);
            }
        }
        let mut en = Enumerator::new(alphabet.clone());
        for d in 0..=4 {
            for f in en.forests(d).unwrap().iter() {
                roundtrip(&ExprValue::Forest(LinComb::basis(f.clone())), &alphabet);
            }
            for t in en.trees(d).unwrap().iter() {
                roundtrip(&ExprValue::Tree(LinComb::basis(t.clone())), &alphabet);
            }
        }
        roundtrip(&ExprValue::Bag(LinComb::zero()), &alphabet);
    }
}

#[test]
fn operation_outputs_round_trip() {
    let alphabet = Alphabet::single_a();
    let fibers = PhiFibers::new();
    for d in 1..=4 {
        for k in enumerate_monomials(d, &alphabet) {
            // embeddings carry coefficients > 1
            let j = jmath_monomial(&k, &fibers).unwrap();
            roundtrip(&ExprValue::Forest(j), &alphabet);
            // antipodes carry negative coefficients
            let bag = hopfmi::multiindex::MonomialBag::single(k.clone()).unwrap();
            roundtrip(&ExprValue::Bag(antipode_bag(&bag)), &alphabet);
            // coproducts round-trip through the tensor JSON
            let cop = coproduct_lot_monomial(&k).unwrap();
            let json = OutputDoc::tensor2_bag(&cop).to_json(&alphabet);
            assert_eq!(parse_json_tensor_bag(&json, &alphabet).unwrap(), cop);
        }
    }
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #[test]
    fn random_bag_combinations_round_trip(
        picks in proptest::collection::vec((0usize..12, coeff()), 0..5)
    ) {
        let alphabet = Alphabet::single_a();
        let mut pool = Vec::new();
        for d in 1..=4 {
            pool.extend(enumerate_bags(d, &alphabet));
        }
        let value = ExprValue::Bag(LinComb::from_terms(
            picks.into_iter().map(|(i, c)| (pool[i % pool.len()].clone(), c)),
        ));
        roundtrip(&value, &alphabet);
    }

    #[test]
    fn random_forest_combinations_round_trip(
        picks in proptest::collection::vec((0usize..16, coeff()), 0..5)
    ) {
        let alphabet = Alphabet::new(['a', 'b']).unwrap();
        let mut en = Enumerator::new(alphabet.clone());
        let pool = en.forests_up_to(3).unwrap();
        let value = ExprValue::Forest(LinComb::from_terms(
            picks.into_iter().map(|(i, c)| (pool[i % pool.len()].clone(), c)),
        ));
        roundtrip(&value, &alphabet);
    }
}
