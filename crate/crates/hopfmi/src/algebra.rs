//! Exact scalars, finite multisets, and finitely supported linear
//! combinations over canonical bases.
//!
//! Everything here is immutable after construction and free of floating
//! point. `LinComb` never stores a zero coefficient, so structural equality
//! is mathematical equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Exact rational scalar with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`, reduced.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Internal and external symmetry factors of a composite object (a forest or
/// a monomial bag), with `total = external * internal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaFactors {
    pub total: BigInt,
    pub external: BigInt,
    pub internal: BigInt,
}

/// A finite multiset over a totally ordered key type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset {
            counts: BTreeMap::new(),
        }
    }
}

impl<T: Ord + Clone> Multiset<T> {
    pub fn new() -> Self {
        Multiset {
            counts: BTreeMap::new(),
        }
    }

    pub fn from_elements(items: impl IntoIterator<Item = T>) -> Self {
        let mut m = Multiset::new();
        for x in items {
            m.insert(x);
        }
        m
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total number of elements, with multiplicity.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn distinct_len(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, x: &T) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    pub fn insert(&mut self, x: T) {
        self.insert_n(x, 1);
    }

    pub fn insert_n(&mut self, x: T, n: usize) {
        if n > 0 {
            *self.counts.entry(x).or_insert(0) += n;
        }
    }

    /// Removes one occurrence; panics if absent.
    pub fn remove_one(&mut self, x: &T) {
        match self.counts.get_mut(x) {
            Some(c) if *c > 1 => *c -= 1,
            Some(_) => {
                self.counts.remove(x);
            }
            None => panic!("removing an element not present in the multiset"),
        }
    }

    /// Iterates over (element, multiplicity) pairs in key order.
    pub fn iter_counts(&self) -> impl Iterator<Item = (&T, usize)> {
        self.counts.iter().map(|(k, &c)| (k, c))
    }

    /// Iterates over elements with repetition, in key order.
    pub fn iter_elements(&self) -> impl Iterator<Item = &T> {
        self.counts
            .iter()
            .flat_map(|(k, &c)| std::iter::repeat_n(k, c))
    }

    /// The smallest element, if any.
    pub fn first(&self) -> Option<&T> {
        self.counts.keys().next()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in other.iter_counts() {
            out.insert_n(x.clone(), c);
        }
        out
    }

    /// All splits of the multiset into an (sub, complement) pair of
    /// multisets, each unordered content split listed exactly once together
    /// with the number of ways to realize it on element positions (a product
    /// of binomial coefficients). The multiplicities sum to `2^len`.
    pub fn splits(&self) -> Vec<(Multiset<T>, Multiset<T>, u64)> {
        let entries: Vec<(&T, usize)> = self.iter_counts().collect();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = vec![0; entries.len()];
        loop {
            let mut sub = Multiset::new();
            let mut rest = Multiset::new();
            let mut mult: u64 = 1;
            for (i, &(key, avail)) in entries.iter().enumerate() {
                sub.insert_n(key.clone(), chosen[i]);
                rest.insert_n(key.clone(), avail - chosen[i]);
                mult *= binomial(avail as u64, chosen[i] as u64);
            }
            out.push((sub, rest, mult));
            // odometer over 0..=avail per entry
            let mut i = 0;
            loop {
                if i == entries.len() {
                    return out;
                }
                if chosen[i] < entries[i].1 {
                    chosen[i] += 1;
                    break;
                }
                chosen[i] = 0;
                i += 1;
            }
        }
    }
}

/// A finitely supported linear combination over a canonical basis `B`,
/// with exact rational coefficients and no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

/// Ordered two-leg tensors: a linear combination over pairs.
pub type Tensor2<B1, B2> = LinComb<(B1, B2)>;

/// Rank-n tensors; every key has the same length.
pub type TensorN<B> = LinComb<Vec<B>>;

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    /// The single basis element with coefficient 1.
    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: B, c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(b, c);
        x
    }

    pub fn from_terms(items: impl IntoIterator<Item = (B, Rational)>) -> Self {
        let mut x = Self::zero();
        for (b, c) in items {
            x.add_term(b, c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self + c * other`.
    pub fn combine(&self, other: &Self, c: &Rational) -> Self {
        let mut out = self.clone();
        for (b, x) in other.iter() {
            out.add_term(b.clone(), c * x);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(b, x)| (b.clone(), c * x))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Extends a basis-level map linearly.
    pub fn linear_map<B2: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<B2>) -> LinComb<B2> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out = out.combine(&f(b), c);
        }
        out
    }

    pub fn try_linear_map<B2: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&B) -> Result<LinComb<B2>, E>,
    ) -> Result<LinComb<B2>, E> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out = out.combine(&f(b)?, c);
        }
        Ok(out)
    }

    /// Relabels basis elements (the map need not be injective; coefficients
    /// of collapsing keys add up).
    pub fn map_basis<B2: Ord + Clone>(&self, mut f: impl FnMut(&B) -> B2) -> LinComb<B2> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

/// Extends a basis-level bilinear map to linear combinations.
pub fn bilinear_extend<B1, B2, B3>(
    mut f: impl FnMut(&B1, &B2) -> LinComb<B3>,
    x: &LinComb<B1>,
    y: &LinComb<B2>,
) -> LinComb<B3>
where
    B1: Ord + Clone,
    B2: Ord + Clone,
    B3: Ord + Clone,
{
    let mut out = LinComb::zero();
    for (b1, c1) in x.iter() {
        for (b2, c2) in y.iter() {
            out = out.combine(&f(b1, b2), &(c1 * c2));
        }
    }
    out
}

pub fn try_bilinear_extend<B1, B2, B3, E>(
    mut f: impl FnMut(&B1, &B2) -> Result<LinComb<B3>, E>,
    x: &LinComb<B1>,
    y: &LinComb<B2>,
) -> Result<LinComb<B3>, E>
where
    B1: Ord + Clone,
    B2: Ord + Clone,
    B3: Ord + Clone,
{
    let mut out = LinComb::zero();
    for (b1, c1) in x.iter() {
        for (b2, c2) in y.iter() {
            out = out.combine(&f(b1, b2)?, &(c1 * c2));
        }
    }
    Ok(out)
}

/// Outer product of two combinations as a two-leg tensor.
pub fn tensor2<B1: Ord + Clone, B2: Ord + Clone>(
    x: &LinComb<B1>,
    y: &LinComb<B2>,
) -> Tensor2<B1, B2> {
    bilinear_extend(|a, b| LinComb::basis((a.clone(), b.clone())), x, y)
}

/// Applies independent linear maps to the two legs of a tensor.
pub fn map_legs<B1, B2, C1, C2, E>(
    t: &Tensor2<B1, B2>,
    mut left: impl FnMut(&B1) -> Result<LinComb<C1>, E>,
    mut right: impl FnMut(&B2) -> Result<LinComb<C2>, E>,
) -> Result<Tensor2<C1, C2>, E>
where
    B1: Ord + Clone,
    B2: Ord + Clone,
    C1: Ord + Clone,
    C2: Ord + Clone,
{
    let mut out = Tensor2::zero();
    for ((b1, b2), c) in t.iter() {
        let l = left(b1)?;
        let r = right(b2)?;
        out = out.combine(&tensor2(&l, &r), c);
    }
    Ok(out)
}
