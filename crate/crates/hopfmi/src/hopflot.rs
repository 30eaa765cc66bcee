//! The Hopf algebra of multi-indices on the monomial-bag basis: the
//! admissible-cut coproduct, the transposed operator L̄^a, the Guin-Oudom
//! and Grossman-Larson products on bags, the pairing-based duality oracle,
//! and the antipode.

use crate::algebra::{LinComb, Rational, Tensor2, TensorN};
use crate::alphabet::{Alphabet, Decoration};
use crate::error::AlgebraError;
use crate::multiindex::{
    dbar_pow, enumerate_bags, mi_admissible_cuts, novikov, novikov_decompositions, MonomialBag,
    MultiIndex, Slot,
};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// An element of the multi-index Hopf algebra.
pub type LotElement = LinComb<MonomialBag>;

/// The coproduct on a weight −1 monomial, summed over its admissible cuts:
/// each cut contributes multiplicity · bag ⊗ ∂̄^r(remainder), the full cut
/// contributing `monomial ⊗ 𝟙`.
pub fn coproduct_lot_monomial(
    k: &MultiIndex,
) -> Result<Tensor2<MonomialBag, MonomialBag>, AlgebraError> {
    let mut out = Tensor2::zero();
    for cut in mi_admissible_cuts(k)? {
        let mult = Rational::from_integer(cut.multiplicity.clone());
        if cut.is_full_cut() {
            out.add_term((cut.bag, MonomialBag::unit()), mult);
            continue;
        }
        let right = dbar_pow(&cut.remainder, cut.r);
        assert!(
            !right.is_zero(),
            "cut remainder {} admits {} lowerings",
            cut.remainder,
            cut.r
        );
        for (m, c) in right.iter() {
            let leg = MonomialBag::single(m.clone()).expect("lowered remainders have weight -1");
            out.add_term((cut.bag.clone(), leg), &mult * c);
        }
    }
    Ok(out)
}

/// The coproduct on a bag, extended multiplicatively (⊙ on each leg).
pub fn coproduct_lot(bag: &MonomialBag) -> Result<Tensor2<MonomialBag, MonomialBag>, AlgebraError> {
    let mut out = Tensor2::basis((MonomialBag::unit(), MonomialBag::unit()));
    for m in bag.factors().iter_elements() {
        let factor = coproduct_lot_monomial(m)?;
        let mut next = Tensor2::zero();
        for ((l1, r1), c1) in out.iter() {
            for ((l2, r2), c2) in factor.iter() {
                next.add_term((l1.odot(l2), r1.odot(r2)), c1 * c2);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Linear extension of the coproduct.
pub fn coproduct_lot_lin(
    x: &LotElement,
) -> Result<Tensor2<MonomialBag, MonomialBag>, AlgebraError> {
    x.try_linear_map(coproduct_lot)
}

/// Iterated coproduct with n legs (n ≥ 2), expanding the leftmost leg.
pub fn coproduct_lot_iterated(
    bag: &MonomialBag,
    n: usize,
) -> Result<TensorN<MonomialBag>, AlgebraError> {
    assert!(n >= 2, "tensor order must be at least 2");
    let mut out: TensorN<MonomialBag> =
        coproduct_lot(bag)?.map_basis(|(l, r)| vec![l.clone(), r.clone()]);
    for _ in 2..n {
        out = out.try_linear_map(|legs| {
            Ok(coproduct_lot(&legs[0])?.map_basis(|(l, r)| {
                let mut v = Vec::with_capacity(legs.len() + 1);
                v.push(l.clone());
                v.push(r.clone());
                v.extend(legs[1..].iter().cloned());
                v
            }))
        })?;
    }
    Ok(out)
}

/// The counit: coefficient of the unit bag.
pub fn counit_lot(x: &LotElement) -> Rational {
    x.coeff(&MonomialBag::unit())
}

/// The transpose L̄^a of L^a: Σ over bags 𝕄 with L^a(𝕄) = x^k of
/// (σ(x^k)/σ(𝕄)) 𝕄. Only weight −1 monomials are admissible.
pub fn lbar(k: &MultiIndex, a: Decoration) -> Result<LinComb<MonomialBag>, AlgebraError> {
    if k.weight() != -1 {
        return Err(AlgebraError::Weight {
            what: format!("monomial {k}"),
            weight: k.weight(),
        });
    }
    let k_fact = k.factorial();
    let mut out = LinComb::zero();
    // the bag must have r factors where x_{r-1}^a divides k
    let slots: Vec<Slot> = k
        .entries()
        .filter(|&(d, _, _)| d == a)
        .map(|(_, j, _)| j)
        .collect();
    for j in slots {
        let r = (j + 1) as usize;
        let var = MultiIndex::variable(a, j).expect("slot taken from k");
        let rest = k.checked_sub(&var).expect("variable divides k");
        for factors in novikov_decompositions(&rest, r) {
            let bag = MonomialBag::new(factors).expect("parts have weight -1");
            let coeff = Rational::new(k_fact.clone(), bag.sigma().total);
            out.add_term(bag, coeff);
        }
    }
    Ok(out)
}

/// The Guin-Oudom action on bags: 𝟙 ▷ Y = Y, a single monomial acts as a
/// derivation through the Novikov product, and
/// (x ⊙ X') ▷ Y = x ▷ (X' ▷ Y) − (x ▷ X') ▷ Y.
pub fn go_bags(x: &MonomialBag, y: &MonomialBag) -> LinComb<MonomialBag> {
    match x.factor_count() {
        0 => LinComb::basis(y.clone()),
        1 => {
            let m = x.factors().first().unwrap();
            novikov_on_bag(m, y)
        }
        _ => {
            let head = x.factors().first().unwrap().clone();
            let mut rest = x.factors().clone();
            rest.remove_one(&head);
            let x_rest = MonomialBag::new(rest).expect("factors of a valid bag");

            let inner = go_bags(&x_rest, y);
            let t1 = inner.linear_map(|b| novikov_on_bag(&head, b));
            let head_on_rest = novikov_on_bag(&head, &x_rest);
            let t2 = head_on_rest.linear_map(|b| go_bags(b, y));
            t1.sub(&t2)
        }
    }
}

/// One monomial acting on a bag as a derivation over its factors.
fn novikov_on_bag(m: &MultiIndex, y: &MonomialBag) -> LinComb<MonomialBag> {
    let factors: Vec<MultiIndex> = y.factors().iter_elements().cloned().collect();
    let mut out = LinComb::zero();
    for i in 0..factors.len() {
        for (p, c) in novikov(m, &factors[i]).iter() {
            let mut fs = factors.clone();
            fs[i] = p.clone();
            out.add_term(
                MonomialBag::from_factors(fs).expect("Novikov products keep weight -1"),
                c.clone(),
            );
        }
    }
    out
}

/// The Grossman-Larson product on bags: X ⋆ Y = Σ X₁ ⊙ (X₂ ▷ Y) over the
/// deshuffle of X.
pub fn gl_bags(x: &MonomialBag, y: &MonomialBag) -> LinComb<MonomialBag> {
    let mut out = LinComb::zero();
    for (left, right, mult) in x.factors().splits() {
        let left_bag = MonomialBag::new(left).expect("factors of a valid bag");
        let acted = go_bags(
            &MonomialBag::new(right).expect("factors of a valid bag"),
            y,
        );
        for (b, c) in acted.iter() {
            out.add_term(left_bag.odot(b), c * Rational::from_integer(mult.into()));
        }
    }
    out
}

/// Brute-force duality oracle for the coproduct of a weight −1 monomial:
/// the coefficient of P ⊗ Q is σ(x^k) · coeff_{x^k}(P ⋆ Q) / (σ(P) σ(Q)),
/// with the search bounded by the grading deg P + deg Q = deg k.
pub fn coproduct_dual_oracle(
    k: &MultiIndex,
    alphabet: &Alphabet,
) -> Result<Tensor2<MonomialBag, MonomialBag>, AlgebraError> {
    if k.weight() != -1 {
        return Err(AlgebraError::Weight {
            what: format!("monomial {k}"),
            weight: k.weight(),
        });
    }
    let n = k.degree();
    let target = MonomialBag::single(k.clone()).expect("weight -1 checked");
    let sigma_k = Rational::from_integer(k.factorial());
    let mut out = Tensor2::zero();
    for i in 0..=n {
        for p in enumerate_bags(i, alphabet) {
            for q in enumerate_bags(n - i, alphabet) {
                let c = gl_bags(&p, &q).coeff(&target);
                if c.is_zero() {
                    continue;
                }
                let denom = Rational::from_integer(p.sigma().total * q.sigma().total);
                out.add_term((p.clone(), q), &sigma_k * c / denom);
            }
        }
    }
    Ok(out)
}

/// The antipode, by the standard recursion in a graded connected Hopf
/// algebra: S(𝟙) = 𝟙 and S(z) = −z − Σ S(z') ⊙ z'' over the reduced
/// coproduct.
pub fn antipode_bag(bag: &MonomialBag) -> LotElement {
    let mut memo = HashMap::new();
    antipode_memo(bag, &mut memo)
}

fn antipode_memo(bag: &MonomialBag, memo: &mut HashMap<MonomialBag, LotElement>) -> LotElement {
    if bag.is_unit() {
        return LinComb::basis(MonomialBag::unit());
    }
    if let Some(v) = memo.get(bag) {
        return v.clone();
    }
    let cop = coproduct_lot(bag).expect("valid bag");
    let mut acc = LinComb::term(bag.clone(), -Rational::one());
    for ((l, r), c) in cop.iter() {
        if l.is_unit() || r.is_unit() {
            continue;
        }
        let s_left = antipode_memo(l, memo);
        acc = acc.combine(&s_left.map_basis(|b| b.odot(r)), &-c.clone());
    }
    memo.insert(bag.clone(), acc.clone());
    acc
}

/// Linear extension of the antipode.
pub fn antipode(x: &LotElement) -> LotElement {
    let mut memo = HashMap::new();
    x.linear_map(|b| antipode_memo(b, &mut memo))
}

/// Convolution S ∗ id evaluated on a basis bag; equals ε(𝕄)·𝟙 exactly when
/// the antipode axiom holds there.
pub fn antipode_convolution(bag: &MonomialBag) -> Result<LotElement, AlgebraError> {
    let cop = coproduct_lot(bag)?;
    let mut out = LinComb::zero();
    for ((l, r), c) in cop.iter() {
        out = out.combine(&antipode_bag(l).map_basis(|b| b.odot(r)), c);
    }
    Ok(out)
}

/// The reduced coproduct Δ̃(𝕄) = Δ(𝕄) − 𝕄⊗𝟙 − 𝟙⊗𝕄.
pub fn reduced_coproduct_lot(
    bag: &MonomialBag,
) -> Result<Tensor2<MonomialBag, MonomialBag>, AlgebraError> {
    let mut out = coproduct_lot(bag)?;
    out.add_term((bag.clone(), MonomialBag::unit()), -Rational::one());
    out.add_term((MonomialBag::unit(), bag.clone()), -Rational::one());
    Ok(out)
}

/// Whether the basis bag is primitive under the coproduct.
pub fn is_primitive(bag: &MonomialBag) -> Result<bool, AlgebraError> {
    if bag.is_unit() {
        return Ok(false);
    }
    Ok(reduced_coproduct_lot(bag)?.is_zero())
}
