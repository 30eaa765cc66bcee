//! The fertility map from forests to monomial bags, enumeration of its tree
//! fibers, the embedding of the multi-index Hopf algebra into the forest
//! Hopf algebra, and the named-identity verification engine tying the two
//! sides together.

use crate::algebra::{map_legs, tensor2, LinComb, Rational, Tensor2};
use crate::alphabet::{Alphabet, Decoration};
use crate::error::AlgebraError;
use crate::forests::{
    bminus, bplus, coproduct_bck, forest_cuts, gl_forest, graft, Enumerator, Forest, Tree,
};
use crate::hopflot::{
    coproduct_dual_oracle, coproduct_lot_lin, coproduct_lot_monomial, gl_bags, lbar, LotElement,
};
use crate::multiindex::{
    dbar_pow, dbar_pow_multinomial, enumerate_bags, enumerate_monomials, enumerate_with_weight,
    l_op, mi_admissible_cuts, novikov, novikov_decompositions, MonomialBag, MultiIndex, Slot,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

/// Largest degree accepted by `verify_identity`.
pub const MAX_VERIFY_DEGREE: usize = 8;

/// Φ on a tree: one factor `x_{f(v)-1}^{d(v)}` per vertex.
pub fn phi_tree(t: &Tree) -> MultiIndex {
    let mut acc: Vec<((Decoration, Slot), u32)> = Vec::new();
    fn walk(t: &Tree, acc: &mut Vec<((Decoration, Slot), u32)>) {
        acc.push(((t.decoration(), t.root_fertility() as Slot - 1), 1));
        for c in t.children() {
            walk(c, acc);
        }
    }
    walk(t, &mut acc);
    MultiIndex::from_entries(acc).expect("fertility slots are >= -1")
}

/// Φ extended multiplicatively: one bag factor per forest component.
pub fn phi_forest(f: &Forest) -> MonomialBag {
    MonomialBag::from_factors(f.trees().iter_elements().map(phi_tree))
        .expect("trees map to weight -1 monomials")
}

/// Memoized fibers of the fertility map. Pure lookups; safe to share.
#[derive(Default)]
pub struct PhiFibers {
    cache: Mutex<HashMap<MultiIndex, Arc<Vec<Tree>>>>,
}

impl PhiFibers {
    pub fn new() -> Self {
        PhiFibers::default()
    }

    /// All canonical trees `t` with `phi_tree(t) == k`, each exactly once.
    /// Only weight −1 monomials of positive degree have fibers; an empty
    /// fiber is reported as an error rather than assumed impossible.
    pub fn preimage(&self, k: &MultiIndex) -> Result<Arc<Vec<Tree>>, AlgebraError> {
        if k.weight() != -1 {
            return Err(AlgebraError::Weight {
                what: format!("monomial {k}"),
                weight: k.weight(),
            });
        }
        if let Some(v) = self.cache.lock().unwrap().get(k) {
            return Ok(v.clone());
        }
        let mut trees = self.compute_fiber(k)?;
        trees.sort();
        let before = trees.len();
        trees.dedup();
        debug_assert_eq!(before, trees.len(), "fiber construction double-counted");
        if trees.is_empty() {
            return Err(AlgebraError::EmptyFiber {
                monomial: k.to_string(),
            });
        }
        debug_assert!(trees.iter().all(|t| &phi_tree(t) == k));
        let arc = Arc::new(trees);
        self.cache
            .lock()
            .unwrap()
            .insert(k.clone(), arc.clone());
        Ok(arc)
    }

    fn compute_fiber(&self, k: &MultiIndex) -> Result<Vec<Tree>, AlgebraError> {
        let mut out = Vec::new();
        // pick the root's decoration and fertility from the entries of k
        for (a, j, _) in k.entries() {
            let fertility = (j + 1) as usize;
            let var = MultiIndex::variable(a, j).expect("slot taken from k");
            let rest = k.checked_sub(&var).expect("variable divides k");
            for parts in novikov_decompositions(&rest, fertility) {
                // per distinct part, choose an unordered selection of
                // subtrees from its fiber
                let mut child_sets: Vec<Vec<Vec<Tree>>> = Vec::new();
                let mut ok = true;
                for (part, count) in parts.iter_counts() {
                    let fiber = match self.preimage(part) {
                        Ok(f) => f,
                        Err(AlgebraError::EmptyFiber { .. }) => {
                            ok = false;
                            break;
                        }
                        Err(e) => return Err(e),
                    };
                    child_sets.push(multisets_of_size(&fiber, count));
                }
                if !ok {
                    continue;
                }
                let mut combos: Vec<Vec<Tree>> = vec![Vec::new()];
                for options in &child_sets {
                    let mut next = Vec::with_capacity(combos.len() * options.len());
                    for base in &combos {
                        for opt in options {
                            let mut v = base.clone();
                            v.extend(opt.iter().cloned());
                            next.push(v);
                        }
                    }
                    combos = next;
                }
                for children in combos {
                    out.push(Tree::node(a, children));
                }
            }
        }
        Ok(out)
    }

    /// Snapshot of all memoized fibers, sorted by monomial.
    pub fn entries(&self) -> Vec<(MultiIndex, Arc<Vec<Tree>>)> {
        let mut v: Vec<_> = self
            .cache
            .lock()
            .unwrap()
            .iter()
            .map(|(k, t)| (k.clone(), t.clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Installs an externally provided fiber after re-checking Φ on every
    /// tree. Used when loading a persisted cache.
    pub fn insert_checked(&self, k: MultiIndex, mut trees: Vec<Tree>) -> Result<(), AlgebraError> {
        if trees.is_empty() {
            return Err(AlgebraError::EmptyFiber {
                monomial: k.to_string(),
            });
        }
        for t in &trees {
            if phi_tree(t) != k {
                return Err(AlgebraError::invalid(
                    "fiber cache entry",
                    format!("tree {t} does not map to {k} under the fertility map"),
                ));
            }
        }
        trees.sort();
        trees.dedup();
        self.cache.lock().unwrap().insert(k, Arc::new(trees));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All unordered selections of `m` items (with repetition) from a pool.
fn multisets_of_size(pool: &[Tree], m: usize) -> Vec<Vec<Tree>> {
    fn rec(pool: &[Tree], start: usize, left: usize, acc: &mut Vec<Tree>, out: &mut Vec<Vec<Tree>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..pool.len() {
            acc.push(pool[i].clone());
            rec(pool, i, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, 0, m, &mut Vec::new(), &mut out);
    out
}

/// The embedding on a weight −1 monomial: Σ over its fiber of
/// (σ(x^k)/σ(t)) t. The coefficients are validated to be positive integers.
pub fn jmath_monomial(k: &MultiIndex, fibers: &PhiFibers) -> Result<LinComb<Forest>, AlgebraError> {
    let k_fact = k.factorial();
    let fiber = fibers.preimage(k)?;
    let mut out = LinComb::zero();
    for t in fiber.iter() {
        let coeff = Rational::new(k_fact.clone(), t.sigma());
        assert!(
            coeff.is_integer() && coeff.is_positive(),
            "embedding coefficient {coeff} for {t} is not a positive integer"
        );
        out.add_term(Forest::single(t.clone()), coeff);
    }
    Ok(out)
}

/// The embedding on a bag: the product (disjoint union) of the factor
/// images.
pub fn jmath(bag: &MonomialBag, fibers: &PhiFibers) -> Result<LinComb<Forest>, AlgebraError> {
    let mut acc = LinComb::basis(Forest::empty());
    for m in bag.factors().iter_elements() {
        let factor = jmath_monomial(m, fibers)?;
        let mut next = LinComb::zero();
        for (f, c1) in acc.iter() {
            for (g, c2) in factor.iter() {
                next.add_term(f.union(g), c1 * c2);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Linear extension of the embedding to combinations of bags.
pub fn jmath_lin(x: &LotElement, fibers: &PhiFibers) -> Result<LinComb<Forest>, AlgebraError> {
    x.try_linear_map(|b| jmath(b, fibers))
}

/// Linear extension over combinations of weight −1 monomials.
pub fn jmath_monomials(
    x: &LinComb<MultiIndex>,
    fibers: &PhiFibers,
) -> Result<LinComb<Forest>, AlgebraError> {
    x.try_linear_map(|m| jmath_monomial(m, fibers))
}

/// The checkable identities connecting the two Hopf algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityName {
    PhiPrelie,
    PhiHopf,
    Phib,
    Phibtr,
    Jdbar,
    HopfMorphism,
    CoprodRec,
    MainLemma,
    SymForestCount,
    Duality,
}

impl IdentityName {
    pub const ALL: [IdentityName; 10] = [
        IdentityName::PhiPrelie,
        IdentityName::PhiHopf,
        IdentityName::Phib,
        IdentityName::Phibtr,
        IdentityName::Jdbar,
        IdentityName::HopfMorphism,
        IdentityName::CoprodRec,
        IdentityName::MainLemma,
        IdentityName::SymForestCount,
        IdentityName::Duality,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityName::PhiPrelie => "phi-prelie",
            IdentityName::PhiHopf => "phi-hopf",
            IdentityName::Phib => "phib",
            IdentityName::Phibtr => "phibtr",
            IdentityName::Jdbar => "jdbar",
            IdentityName::HopfMorphism => "hopf-morphism",
            IdentityName::CoprodRec => "coprod-rec",
            IdentityName::MainLemma => "main-lemma",
            IdentityName::SymForestCount => "sym-forest-count",
            IdentityName::Duality => "duality",
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

/// Outcome of checking one identity exhaustively up to a degree bound.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub identity: IdentityName,
    pub max_degree: usize,
    pub alphabet: Alphabet,
    pub cases: u64,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} degree={} alphabet={} cases={} elapsed={:.3}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.identity,
            self.max_degree,
            self.alphabet,
            self.cases,
            self.elapsed.as_secs_f64()
        )?;
        for fail in &self.failures {
            write!(f, "\n  counterexample: {fail}")?;
        }
        Ok(())
    }
}

/// Exhaustively checks the named identity over all basis elements up to
/// `max_degree`. Deterministic; every failure is reported.
pub fn verify_identity(
    name: IdentityName,
    max_degree: usize,
    alphabet: &Alphabet,
    fibers: &PhiFibers,
) -> Result<VerifyReport, AlgebraError> {
    if max_degree > MAX_VERIFY_DEGREE {
        return Err(AlgebraError::Bound {
            requested: max_degree,
            bound: MAX_VERIFY_DEGREE,
        });
    }
    let start = Instant::now();
    let mut cases = 0u64;
    let mut failures = Vec::new();
    match name {
        IdentityName::PhiPrelie => check_phi_prelie(max_degree, alphabet, &mut cases, &mut failures)?,
        IdentityName::PhiHopf => check_phi_hopf(max_degree, alphabet, &mut cases, &mut failures)?,
        IdentityName::Phib => check_phib(max_degree, alphabet, &mut cases, &mut failures)?,
        IdentityName::Phibtr => {
            check_phibtr(max_degree, alphabet, fibers, &mut cases, &mut failures)?
        }
        IdentityName::Jdbar => check_jdbar(max_degree, alphabet, fibers, &mut cases, &mut failures)?,
        IdentityName::HopfMorphism => {
            check_hopf_morphism(max_degree, alphabet, fibers, &mut cases, &mut failures)?
        }
        IdentityName::CoprodRec => {
            check_coprod_rec(max_degree, alphabet, fibers, &mut cases, &mut failures)?
        }
        IdentityName::MainLemma => {
            check_main_lemma(max_degree, alphabet, fibers, &mut cases, &mut failures)?
        }
        IdentityName::SymForestCount => {
            check_sym_forest_count(max_degree, alphabet, fibers, &mut cases, &mut failures)?
        }
        IdentityName::Duality => {
            check_duality(max_degree, alphabet, &mut cases, &mut failures)?
        }
    }
    Ok(VerifyReport {
        identity: name,
        max_degree,
        alphabet: alphabet.clone(),
        cases,
        failures,
        elapsed: start.elapsed(),
    })
}

fn monomials_up_to(max_degree: usize, alphabet: &Alphabet) -> Vec<MultiIndex> {
    (1..=max_degree)
        .flat_map(|d| enumerate_monomials(d, alphabet))
        .collect()
}

/// Φ is a pre-Lie morphism: Φ(s → t) = Φ(s) ▷ Φ(t).
fn check_phi_prelie(
    max_degree: usize,
    alphabet: &Alphabet,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    let mut en = Enumerator::new(alphabet.clone());
    let mut trees: Vec<Tree> = Vec::new();
    for n in 1..=max_degree {
        trees.extend(en.trees(n)?.iter().cloned());
    }
    for s in &trees {
        for t in &trees {
            *cases += 1;
            let lhs = graft(s, t).map_basis(phi_tree);
            let rhs = novikov(&phi_tree(s), &phi_tree(t));
            if lhs != rhs {
                failures.push(format!("s={s} t={t}"));
            }
        }
    }
    Ok(())
}

/// Φ intertwines the Grossman-Larson products.
fn check_phi_hopf(
    max_degree: usize,
    alphabet: &Alphabet,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    let mut en = Enumerator::new(alphabet.clone());
    let forests = en.forests_up_to(max_degree)?;
    for f in &forests {
        for g in &forests {
            if f.size() + g.size() > max_degree {
                continue;
            }
            *cases += 1;
            let lhs = gl_forest(f, g).map_basis(phi_forest);
            let rhs = gl_bags(&phi_forest(f), &phi_forest(g));
            if lhs != rhs {
                failures.push(format!("F={f} G={g}"));
            }
        }
    }
    Ok(())
}

/// Φ ∘ B₊^a = L^a ∘ Φ.
fn check_phib(
    max_degree: usize,
    alphabet: &Alphabet,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    let mut en = Enumerator::new(alphabet.clone());
    let forests = en.forests_up_to(max_degree)?;
    for f in &forests {
        for &a in alphabet.decorations() {
            *cases += 1;
            let lhs = phi_tree(&bplus(f, a));
            let rhs = l_op(&phi_forest(f), a);
            if lhs != rhs {
                failures.push(format!("F={f} a={a}"));
            }
        }
    }
    Ok(())
}

/// ȷ ∘ L̄^a = B₋^a ∘ ȷ on weight −1 monomials.
fn check_phibtr(
    max_degree: usize,
    alphabet: &Alphabet,
    fibers: &PhiFibers,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    for k in monomials_up_to(max_degree, alphabet) {
        for &a in alphabet.decorations() {
            *cases += 1;
            let lhs = jmath_lin(&lbar(&k, a)?, fibers)?;
            let mut rhs = LinComb::zero();
            for (f, c) in jmath_monomial(&k, fibers)?.iter() {
                let t = f.as_single_tree().expect("monomial embeds into trees");
                if let Some(stripped) = bminus(t, a) {
                    rhs.add_term(stripped, c.clone());
                }
            }
            if lhs != rhs {
                failures.push(format!("k={k} a={a}"));
            }
        }
    }
    Ok(())
}

/// The embedding applied to ∂̄^r: every tree coefficient in
/// ȷ(∂̄^r x^k) is a positive integer multiple of k!/σ(t), and the whole
/// combination agrees with the independent multinomial expansion of ∂̄^r
/// pushed through the fibers.
fn check_jdbar(
    max_degree: usize,
    alphabet: &Alphabet,
    fibers: &PhiFibers,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    let max_slot = max_degree as i64 - 2;
    for degree in 1..=max_degree {
        for weight in -1..=(max_slot * degree as i64) {
            let r = (weight + 1) as usize;
            for k in enumerate_with_weight(degree, weight, max_slot, alphabet) {
                *cases += 1;
                let lhs = jmath_monomials(&dbar_pow(&k, r), fibers)?;
                let mut rhs = LinComb::zero();
                for (q, c) in dbar_pow_multinomial(&k, r).iter() {
                    let q_fact = q.factorial();
                    for t in fibers.preimage(q)?.iter() {
                        rhs.add_term(
                            Forest::single(t.clone()),
                            c * Rational::new(q_fact.clone(), t.sigma()),
                        );
                    }
                }
                if lhs != rhs {
                    failures.push(format!("k={k} r={r} (expansion mismatch)"));
                    continue;
                }
                let k_fact = Rational::from_integer(k.factorial());
                for (f, c) in lhs.iter() {
                    let t = f.as_single_tree().expect("single-tree support");
                    let ratio = c * Rational::from_integer(t.sigma()) / k_fact.clone();
                    if !(ratio.is_integer() && ratio.is_positive()) {
                        failures.push(format!(
                            "k={k} r={r} tree {t}: coefficient is not a multiple of k!/sigma(t)"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// (ȷ ⊗ ȷ) ∘ Δ on the multi-index side equals the forest coproduct after ȷ.
fn check_hopf_morphism(
    max_degree: usize,
    alphabet: &Alphabet,
    fibers: &PhiFibers,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    for k in monomials_up_to(max_degree, alphabet) {
        *cases += 1;
        let lhs = map_legs(
            &coproduct_lot_monomial(&k)?,
            |b| jmath(b, fibers),
            |b| jmath(b, fibers),
        )?;
        let rhs = jmath_monomial(&k, fibers)?.try_linear_map(|f| Ok(coproduct_bck(f)))?;
        if lhs != rhs {
            failures.push(format!("k={k}"));
        }
    }
    Ok(())
}

/// The recursive presentation of the coproduct through L̄^a and B₊^a.
fn check_coprod_rec(
    max_degree: usize,
    alphabet: &Alphabet,
    fibers: &PhiFibers,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    for k in monomials_up_to(max_degree, alphabet) {
        *cases += 1;
        let lhs = map_legs(
            &coproduct_lot_monomial(&k)?,
            |b| jmath(b, fibers),
            |b| jmath(b, fibers),
        )?;
        let mut rhs: Tensor2<Forest, Forest> =
            tensor2(&jmath_monomial(&k, fibers)?, &LinComb::basis(Forest::empty()));
        for &a in alphabet.decorations() {
            let inner = coproduct_lot_lin(&lbar(&k, a)?)?;
            let embedded = map_legs(&inner, |b| jmath(b, fibers), |b| jmath(b, fibers))?;
            for ((l, r), c) in embedded.iter() {
                rhs.add_term(
                    (l.clone(), Forest::single(bplus(r, a))),
                    c.clone(),
                );
            }
        }
        if lhs != rhs {
            failures.push(format!("k={k}"));
        }
    }
    Ok(())
}

/// For each admissible cut of a monomial, the multiplicity-weighted embedded
/// cut equals the matched-cut sum over the fiber trees.
fn check_main_lemma(
    max_degree: usize,
    alphabet: &Alphabet,
    fibers: &PhiFibers,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    for k in monomials_up_to(max_degree, alphabet) {
        let k_fact = k.factorial();
        let fiber = fibers.preimage(&k)?;
        // tree cuts grouped once per monomial
        type CutRow = (Forest, Forest, MonomialBag);
        let mut tree_cut_data: Vec<(Rational, Vec<CutRow>)> = Vec::new();
        for t in fiber.iter() {
            let coeff = Rational::new(k_fact.clone(), t.sigma());
            let cuts = forest_cuts(&Forest::single(t.clone()))
                .into_iter()
                .map(|c| {
                    let key = phi_forest(&c.pruning);
                    (c.pruning, c.trunk, key)
                })
                .collect();
            tree_cut_data.push((coeff, cuts));
        }
        for cut in mi_admissible_cuts(&k)? {
            *cases += 1;
            let right: LinComb<Forest> = if cut.is_full_cut() {
                LinComb::basis(Forest::empty())
            } else {
                jmath_monomials(&dbar_pow(&cut.remainder, cut.r), fibers)?
            };
            let left = jmath(&cut.bag, fibers)?;
            let lhs = tensor2(&left, &right).scale(&Rational::from_integer(cut.multiplicity.clone()));
            let mut rhs: Tensor2<Forest, Forest> = Tensor2::zero();
            for (coeff, cuts) in &tree_cut_data {
                for (pruning, trunk, key) in cuts {
                    if key == &cut.bag {
                        rhs.add_term((pruning.clone(), trunk.clone()), coeff.clone());
                    }
                }
            }
            if lhs != rhs {
                failures.push(format!("k={k} cut bag={}", cut.bag));
            }
        }
    }
    Ok(())
}

/// Orbit count: the number of ordered tuples of trees assembling a forest
/// F with prescribed fiber constraints equals σ_ext(𝕄)/σ_ext(F).
fn check_sym_forest_count(
    max_degree: usize,
    alphabet: &Alphabet,
    fibers: &PhiFibers,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    for degree in 1..=max_degree {
        for bag in enumerate_bags(degree, alphabet) {
            let factors: Vec<MultiIndex> = bag.factors().iter_elements().cloned().collect();
            let factor_fibers = factors
                .iter()
                .map(|m| fibers.preimage(m))
                .collect::<Result<Vec<_>, _>>()?;
            // count ordered tuples grouped by the assembled forest
            let mut counts: BTreeMap<Forest, u64> = BTreeMap::new();
            let mut pick = vec![0usize; factors.len()];
            loop {
                let forest = Forest::from_trees(
                    pick.iter()
                        .enumerate()
                        .map(|(i, &j)| factor_fibers[i][j].clone()),
                );
                *counts.entry(forest).or_insert(0) += 1;
                let mut i = 0;
                loop {
                    if i == pick.len() {
                        break;
                    }
                    if pick[i] + 1 < factor_fibers[i].len() {
                        pick[i] += 1;
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == pick.len() {
                    break;
                }
            }
            let ext_bag = bag.sigma().external;
            for (forest, count) in counts {
                *cases += 1;
                let ext_forest = forest.sigma().external;
                let expected = (&ext_bag / &ext_forest, &ext_bag % &ext_forest);
                if !expected.1.is_zero() || BigInt::from(count) != expected.0 {
                    failures.push(format!(
                        "bag={bag} F={forest}: {count} tuples vs sigma ratio {ext_bag}/{ext_forest}"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The explicit coproduct equals the Grossman-Larson duality oracle.
fn check_duality(
    max_degree: usize,
    alphabet: &Alphabet,
    cases: &mut u64,
    failures: &mut Vec<String>,
) -> Result<(), AlgebraError> {
    for k in monomials_up_to(max_degree, alphabet) {
        *cases += 1;
        let lhs = coproduct_lot_monomial(&k)?;
        let rhs = coproduct_dual_oracle(&k, alphabet)?;
        if lhs != rhs {
            failures.push(format!("k={k}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::testutil::{fo, mi, t};

    #[test]
    fn phi_examples() {
        assert_eq!(phi_tree(&t("a[a]")), mi("-1 0"));
        assert_eq!(phi_tree(&t("a[a,a]")), mi("-1 -1 1"));
        let f = fo("a a[a]");
        assert_eq!(
            phi_forest(&f),
            MonomialBag::from_factors([mi("-1"), mi("-1 0")]).unwrap()
        );
    }

    #[test]
    fn fiber_examples() {
        let fibers = PhiFibers::new();
        let f = fibers.preimage(&mi("-1 0")).unwrap();
        assert_eq!(f.as_slice(), &[t("a[a]")]);

        let f = fibers.preimage(&mi("-1 -1 0 1")).unwrap();
        let mut want = vec![t("a[a,a[a]]"), t("a[a[a,a]]")];
        want.sort();
        assert_eq!(f.as_slice(), want.as_slice());
    }

    #[test]
    fn fiber_sizes_sum_to_tree_count_in_degree_five() {
        let fibers = PhiFibers::new();
        let alphabet = Alphabet::single_a();
        let total: usize = enumerate_monomials(5, &alphabet)
            .iter()
            .map(|k| fibers.preimage(k).unwrap().len())
            .sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn fiber_needs_weight_minus_one() {
        let fibers = PhiFibers::new();
        assert!(matches!(
            fibers.preimage(&mi("0")),
            Err(AlgebraError::Weight { .. })
        ));
    }

    #[test]
    fn jmath_examples() {
        let fibers = PhiFibers::new();
        assert_eq!(
            jmath_monomial(&mi("-1 0"), &fibers).unwrap(),
            LinComb::basis(fo("a[a]"))
        );
        assert_eq!(
            jmath_monomial(&mi("-1 -1 1"), &fibers).unwrap(),
            LinComb::basis(fo("a[a,a]"))
        );
        let got = jmath_monomial(&mi("-1 -1 0 1"), &fibers).unwrap();
        let want = LinComb::from_terms([
            (fo("a[a,a[a]]"), rat(2)),
            (fo("a[a[a,a]]"), rat(1)),
        ]);
        assert_eq!(got, want);
        let got = jmath_monomial(&mi("-1 -1 -1 0 2"), &fibers).unwrap();
        let want = LinComb::from_terms([
            (fo("a[a[a,a,a]]"), rat(1)),
            (fo("a[a,a,a[a]]"), rat(3)),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn jmath_on_bags_is_multiplicative() {
        let fibers = PhiFibers::new();
        let bag = MonomialBag::from_factors([mi("-1"), mi("-1 0")]).unwrap();
        assert_eq!(
            jmath(&bag, &fibers).unwrap(),
            LinComb::basis(fo("a a[a]"))
        );
    }

    #[test]
    fn identity_names_round_trip() {
        for n in IdentityName::ALL {
            assert_eq!(n.as_str().parse::<IdentityName>().unwrap(), n);
        }
        assert!("nope".parse::<IdentityName>().is_err());
    }

    #[test]
    fn verify_phib_small() {
        let fibers = PhiFibers::new();
        let report =
            verify_identity(IdentityName::Phib, 4, &Alphabet::single_a(), &fibers).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.cases > 0);
    }

    #[test]
    fn verify_hopf_morphism_small() {
        let fibers = PhiFibers::new();
        let report = verify_identity(
            IdentityName::HopfMorphism,
            4,
            &Alphabet::single_a(),
            &fibers,
        )
        .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn verify_degree_bound() {
        let fibers = PhiFibers::new();
        assert!(matches!(
            verify_identity(IdentityName::Phib, 99, &Alphabet::single_a(), &fibers),
            Err(AlgebraError::Bound { .. })
        ));
    }

    #[test]
    fn jmath_is_injective_on_bags() {
        let fibers = PhiFibers::new();
        let alphabet = Alphabet::single_a();
        let mut images: Vec<(MonomialBag, LinComb<Forest>)> = Vec::new();
        for d in 0..=6usize {
            for b in enumerate_bags(d, &alphabet) {
                images.push((b.clone(), jmath(&b, &fibers).unwrap()));
            }
        }
        for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                assert_ne!(
                    images[i].1, images[j].1,
                    "bags {} and {} collide",
                    images[i].0, images[j].0
                );
            }
        }
    }

    #[test]
    fn insert_checked_rejects_wrong_fiber() {
        let fibers = PhiFibers::new();
        assert!(fibers.insert_checked(mi("-1 0"), vec![t("a[a,a]")]).is_err());
        assert!(fibers.insert_checked(mi("-1 0"), vec![t("a[a]")]).is_ok());
    }
}
