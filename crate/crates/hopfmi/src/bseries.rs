//! Truncated multi-index B-series over one-dimensional polynomial vector
//! fields: elementary differentials indexed by weight −1 multi-indices and
//! the series Σ α(x^k)/σ(x^k) · F_f(x^k).

use crate::algebra::{LinComb, Rational};
use crate::alphabet::{Alphabet, Decoration};
use crate::error::AlgebraError;
use crate::forests::Tree;
use crate::multiindex::{enumerate_monomials, MultiIndex};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Cap on the truncation degree of a B-series.
pub const MAX_BSERIES_DEGREE: usize = 8;

/// A polynomial in one variable `y` with exact rational coefficients,
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut coeffs: Vec<Rational> = coeffs.into_iter().collect();
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs([c])
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        Poly::from_coeffs([Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into())),
        )
    }

    /// n-th derivative.
    pub fn derivative_n(&self, n: usize) -> Self {
        let mut acc = self.clone();
        for _ in 0..n {
            acc = acc.derivative();
        }
        acc
    }
}

impl fmt::Display for Poly {
    /// `c0 + c1*y + c2*y^2`, zero terms skipped, `0` for the zero
    /// polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*y")?,
                _ => write!(f, "{c}*y^{i}")?,
            }
        }
        Ok(())
    }
}

/// A family of polynomial vector fields on the line, one per decoration,
/// total on the session alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldFamily {
    fields: BTreeMap<Decoration, Poly>,
}

impl FieldFamily {
    pub fn new(
        fields: impl IntoIterator<Item = (Decoration, Poly)>,
        alphabet: &Alphabet,
    ) -> Result<Self, AlgebraError> {
        let fields: BTreeMap<Decoration, Poly> = fields.into_iter().collect();
        for &d in alphabet.decorations() {
            if !fields.contains_key(&d) {
                return Err(AlgebraError::invalid(
                    "field family",
                    format!("no vector field for decoration {d}"),
                ));
            }
        }
        Ok(FieldFamily { fields })
    }

    /// The same polynomial for every decoration.
    pub fn uniform(poly: Poly, alphabet: &Alphabet) -> Self {
        FieldFamily {
            fields: alphabet
                .decorations()
                .iter()
                .map(|&d| (d, poly.clone()))
                .collect(),
        }
    }

    pub fn get(&self, d: Decoration) -> Result<&Poly, AlgebraError> {
        self.fields.get(&d).ok_or_else(|| {
            AlgebraError::invalid("field family", format!("no vector field for decoration {d}"))
        })
    }
}

/// The linear functional α of a truncated B-series; entries override the
/// default value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffMap {
    default: Rational,
    entries: BTreeMap<MultiIndex, Rational>,
}

impl CoeffMap {
    pub fn constant(default: Rational) -> Self {
        CoeffMap {
            default,
            entries: BTreeMap::new(),
        }
    }

    pub fn new(
        default: Rational,
        entries: impl IntoIterator<Item = (MultiIndex, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let entries: BTreeMap<MultiIndex, Rational> = entries.into_iter().collect();
        for k in entries.keys() {
            if k.weight() != -1 {
                return Err(AlgebraError::Weight {
                    what: format!("coefficient-map key {k}"),
                    weight: k.weight(),
                });
            }
        }
        Ok(CoeffMap { default, entries })
    }

    pub fn get(&self, k: &MultiIndex) -> Rational {
        self.entries.get(k).cloned().unwrap_or_else(|| self.default.clone())
    }
}

/// The elementary differential of a weight −1 multi-index:
/// Π (d^{j+1} f_a / dy^{j+1})^{k_j^a}.
pub fn elementary_differential(k: &MultiIndex, f: &FieldFamily) -> Result<Poly, AlgebraError> {
    if k.weight() != -1 {
        return Err(AlgebraError::Weight {
            what: format!("monomial {k}"),
            weight: k.weight(),
        });
    }
    let mut acc = Poly::one();
    for (a, j, m) in k.entries() {
        let base = f.get(a)?.derivative_n((j + 1) as usize);
        acc = acc.mul(&base.pow(m));
    }
    Ok(acc)
}

/// Linear extension over combinations of weight −1 monomials.
pub fn elementary_differential_lin(
    x: &LinComb<MultiIndex>,
    f: &FieldFamily,
) -> Result<Poly, AlgebraError> {
    let mut acc = Poly::zero();
    for (k, c) in x.iter() {
        acc = acc.add(&elementary_differential(k, f)?.scale(c));
    }
    Ok(acc)
}

/// The classical elementary differential of a decorated tree, by the
/// recursion F(a[t_1,...,t_m]) = f_a^{(m)} · Π F(t_i). An independent route
/// to the same values as `elementary_differential` after the fertility map.
pub fn tree_elementary_differential(t: &Tree, f: &FieldFamily) -> Result<Poly, AlgebraError> {
    let mut acc = f
        .get(t.decoration())?
        .derivative_n(t.root_fertility());
    for c in t.children() {
        acc = acc.mul(&tree_elementary_differential(c, f)?);
    }
    Ok(acc)
}

/// The truncated B-series Σ over weight −1 multi-indices of degree ≤ N of
/// α(x^k)/σ(x^k) · F_f(x^k).
pub fn bseries_truncated(
    alpha: &CoeffMap,
    f: &FieldFamily,
    max_degree: usize,
    alphabet: &Alphabet,
) -> Result<Poly, AlgebraError> {
    if max_degree > MAX_BSERIES_DEGREE {
        return Err(AlgebraError::Bound {
            requested: max_degree,
            bound: MAX_BSERIES_DEGREE,
        });
    }
    let mut acc = Poly::zero();
    for degree in 1..=max_degree {
        for k in enumerate_monomials(degree, alphabet) {
            let weight = alpha.get(&k) / Rational::from_integer(k.factorial());
            if weight.is_zero() {
                continue;
            }
            acc = acc.add(&elementary_differential(&k, f)?.scale(&weight));
        }
    }
    Ok(acc)
}
