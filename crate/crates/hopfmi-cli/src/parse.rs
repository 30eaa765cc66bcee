//! The expression grammar: sums of rational-scaled basis terms of one
//! declared sort.
//!
//! ```text
//! rational  := int | int/int
//! monomial  := `1` | factors `x{j}^e` / `x{a,j}^e`   (decoration omitted
//!              iff the alphabet is a singleton; `^1` omitted)
//! bag       := monomials joined by `(.)`
//! tree      := d[children] with `d[]` = `d`
//! forest    := `1` | trees joined by `·` or whitespace
//! expr      := rational-scaled terms joined by `+`/`-`; `0` is the zero
//!              combination; whitespace insignificant
//! ```

use crate::error::CliError;
use hopfmi::algebra::{LinComb, Rational};
use hopfmi::alphabet::{Alphabet, Decoration};
use hopfmi::bseries::Poly;
use hopfmi::forests::{Forest, Tree};
use hopfmi::multiindex::{MonomialBag, MultiIndex, Slot};
use num_bigint::BigInt;
use num_traits::One;

/// The sort of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    MultiIndex,
    Bag,
    Tree,
    Forest,
}

impl Sort {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sort::MultiIndex => "multiindex",
            Sort::Bag => "bag",
            Sort::Tree => "tree",
            Sort::Forest => "forest",
        }
    }
}

/// A parsed expression: a linear combination in the declared sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprValue {
    MultiIndex(LinComb<MultiIndex>),
    Bag(LinComb<MonomialBag>),
    Tree(LinComb<Tree>),
    Forest(LinComb<Forest>),
}

impl ExprValue {
    pub fn sort(&self) -> Sort {
        match self {
            ExprValue::MultiIndex(_) => Sort::MultiIndex,
            ExprValue::Bag(_) => Sort::Bag,
            ExprValue::Tree(_) => Sort::Tree,
            ExprValue::Forest(_) => Sort::Forest,
        }
    }
}

pub fn parse(input: &str, sort: Sort, alphabet: &Alphabet) -> Result<ExprValue, CliError> {
    let mut cur = Cursor::new(input, alphabet);
    cur.skip_ws();
    // the zero combination
    if cur.peek() == Some('0') {
        let save = cur.pos;
        cur.bump();
        cur.skip_ws();
        if cur.at_end() {
            return Ok(zero_of(sort));
        }
        cur.pos = save;
    }
    let value = match sort {
        Sort::MultiIndex => ExprValue::MultiIndex(parse_expr(
            &mut cur,
            parse_monomial_basis,
            Some(MultiIndex::unit()),
        )?),
        Sort::Bag => ExprValue::Bag(parse_expr(&mut cur, parse_bag_basis, Some(MonomialBag::unit()))?),
        Sort::Tree => ExprValue::Tree(parse_expr(&mut cur, parse_tree_basis, None)?),
        Sort::Forest => {
            ExprValue::Forest(parse_expr(&mut cur, parse_forest_basis, Some(Forest::empty()))?)
        }
    };
    Ok(value)
}

fn zero_of(sort: Sort) -> ExprValue {
    match sort {
        Sort::MultiIndex => ExprValue::MultiIndex(LinComb::zero()),
        Sort::Bag => ExprValue::Bag(LinComb::zero()),
        Sort::Tree => ExprValue::Tree(LinComb::zero()),
        Sort::Forest => ExprValue::Forest(LinComb::zero()),
    }
}

/// Parses a rational written as `int` or `int/int` (no sign).
pub fn parse_rational_str(s: &str) -> Result<Rational, CliError> {
    let alphabet = Alphabet::single_a();
    let mut cur = Cursor::new(s, &alphabet);
    cur.skip_ws();
    let negative = cur.eat('-');
    let (r, _) = cur.parse_rational()?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.err("trailing input after rational"));
    }
    Ok(if negative { -r } else { r })
}

/// Parses a polynomial `c0 + c1*y + c2*y^2` with rational coefficients.
pub fn parse_poly(input: &str) -> Result<Poly, CliError> {
    let alphabet = Alphabet::single_a();
    let mut cur = Cursor::new(input, &alphabet);
    cur.skip_ws();
    if cur.at_end() {
        return Err(cur.err("empty polynomial"));
    }
    if cur.peek() == Some('0') {
        let save = cur.pos;
        cur.bump();
        cur.skip_ws();
        if cur.at_end() {
            return Ok(Poly::zero());
        }
        cur.pos = save;
    }
    let mut terms: Vec<(usize, Rational)> = Vec::new();
    let mut sign = Rational::one();
    if cur.eat('-') {
        sign = -sign;
    } else {
        cur.eat('+');
    }
    loop {
        cur.skip_ws();
        let coeff;
        let mut power = 0usize;
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let (r, _) = cur.parse_rational()?;
                coeff = r;
                cur.skip_ws();
                if cur.eat('*') {
                    cur.skip_ws();
                    cur.expect('y')?;
                    power = parse_power(&mut cur)?;
                }
            }
            Some('y') => {
                cur.bump();
                coeff = Rational::one();
                power = parse_power(&mut cur)?;
            }
            _ => return Err(cur.err("expected a polynomial term")),
        }
        terms.push((power, &sign * coeff));
        cur.skip_ws();
        if cur.eat('+') {
            sign = Rational::one();
        } else if cur.eat('-') {
            sign = -Rational::one();
        } else {
            break;
        }
    }
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.err("trailing input after polynomial"));
    }
    let top = terms.iter().map(|(p, _)| *p).max().unwrap_or(0);
    let mut coeffs = vec![Rational::from_integer(BigInt::from(0)); top + 1];
    for (p, c) in terms {
        coeffs[p] += c;
    }
    Ok(Poly::from_coeffs(coeffs))
}

fn parse_power(cur: &mut Cursor) -> Result<usize, CliError> {
    if cur.eat('^') {
        let n = cur.parse_uint()?;
        Ok(n as usize)
    } else {
        Ok(1)
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Cursor<'a> {
    fn new(input: &str, alphabet: &'a Alphabet) -> Cursor<'a> {
        Cursor {
            chars: input.chars().collect(),
            pos: 0,
            alphabet,
        }
    }

    fn err(&self, msg: impl Into<String>) -> CliError {
        CliError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos.min(self.chars.len())..]
            .starts_with(&want)
        {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected {c:?}")))
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn parse_uint(&mut self) -> Result<u64, CliError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| self.err(format!("integer {text} out of range")))
    }

    fn parse_int(&mut self) -> Result<i64, CliError> {
        let negative = self.eat('-');
        let n = self.parse_uint()? as i64;
        Ok(if negative { -n } else { n })
    }

    /// A rational `int[/int]`; the flag reports whether the text was the
    /// bare digit `1`, which doubles as the unit literal.
    fn parse_rational(&mut self) -> Result<(Rational, bool), CliError> {
        let start = self.pos;
        let numer = self.parse_uint()?;
        if self.eat('/') {
            let denom_pos = self.pos;
            let denom = self.parse_uint()?;
            if denom == 0 {
                return Err(CliError::Syntax {
                    pos: denom_pos,
                    msg: "zero denominator".into(),
                });
            }
            Ok((
                Rational::new(BigInt::from(numer), BigInt::from(denom)),
                false,
            ))
        } else {
            let plain_one = numer == 1 && self.pos == start + 1;
            Ok((Rational::from_integer(BigInt::from(numer)), plain_one))
        }
    }

    fn parse_decoration(&mut self) -> Result<Decoration, CliError> {
        let pos = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {
                let d = Decoration::new(c).expect("lowercase letter");
                if !self.alphabet.contains(d) {
                    return Err(CliError::Alphabet(format!(
                        "decoration {c:?} at position {pos} is not in the alphabet {{{}}}",
                        self.alphabet
                    )));
                }
                self.pos += 1;
                Ok(d)
            }
            _ => Err(self.err("expected a decoration symbol")),
        }
    }
}

fn parse_expr<B: Ord + Clone>(
    cur: &mut Cursor,
    parse_basis: impl Fn(&mut Cursor) -> Result<B, CliError>,
    unit: Option<B>,
) -> Result<LinComb<B>, CliError> {
    let mut out = LinComb::zero();
    cur.skip_ws();
    let mut sign = if cur.eat('-') {
        -Rational::one()
    } else {
        cur.eat('+');
        Rational::one()
    };
    loop {
        cur.skip_ws();
        let (basis, coeff) = match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let (r, plain_one) = cur.parse_rational()?;
                cur.skip_ws();
                if starts_basis(cur) {
                    (parse_basis(cur)?, r)
                } else if plain_one {
                    match &unit {
                        Some(u) => (u.clone(), Rational::one()),
                        None => return Err(cur.err("this sort has no unit element `1`")),
                    }
                } else {
                    return Err(cur.err("expected a basis element after the coefficient"));
                }
            }
            Some(_) => (parse_basis(cur)?, Rational::one()),
            None => return Err(cur.err("expected a term")),
        };
        out.add_term(basis, &sign * coeff);
        cur.skip_ws();
        if cur.eat('+') {
            sign = Rational::one();
        } else if cur.eat('-') {
            sign = -Rational::one();
        } else {
            break;
        }
    }
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(out)
}

fn starts_basis(cur: &Cursor) -> bool {
    matches!(cur.peek(), Some(c) if c == 'x' || c == '1' || c.is_ascii_lowercase())
}

/// One `x{...}^e` factor; returns its entry.
fn parse_factor(cur: &mut Cursor) -> Result<((Decoration, Slot), u32), CliError> {
    cur.expect('x')?;
    cur.expect('{')?;
    cur.skip_ws();
    let singleton = cur.alphabet.is_singleton();
    let decoration = if singleton {
        if matches!(cur.peek(), Some(c) if c.is_ascii_lowercase()) {
            return Err(cur.err(
                "the decoration is omitted when the alphabet has a single symbol: write x{j}",
            ));
        }
        cur.alphabet.decorations()[0]
    } else {
        if !matches!(cur.peek(), Some(c) if c.is_ascii_lowercase()) {
            return Err(cur.err(
                "a decoration is required when the alphabet has several symbols: write x{a,j}",
            ));
        }
        let d = cur.parse_decoration()?;
        cur.skip_ws();
        cur.expect(',')?;
        cur.skip_ws();
        d
    };
    let slot_pos = cur.pos;
    let slot = cur.parse_int()?;
    if slot < -1 {
        return Err(CliError::Syntax {
            pos: slot_pos,
            msg: format!("slot {slot} is below -1"),
        });
    }
    cur.skip_ws();
    cur.expect('}')?;
    let mult = if cur.eat('^') {
        let pos = cur.pos;
        let e = cur.parse_uint()?;
        if e == 0 {
            return Err(CliError::Syntax {
                pos,
                msg: "exponent must be positive".into(),
            });
        }
        u32::try_from(e).map_err(|_| cur.err("exponent out of range"))?
    } else {
        1
    };
    Ok(((decoration, slot as Slot), mult))
}

/// A nonunit monomial: one or more factors.
fn parse_monomial_factors(cur: &mut Cursor) -> Result<MultiIndex, CliError> {
    let mut entries = Vec::new();
    loop {
        entries.push(parse_factor(cur)?);
        let save = cur.pos;
        cur.skip_ws();
        if cur.peek() == Some('x') {
            continue;
        }
        cur.pos = save;
        break;
    }
    MultiIndex::from_entries(entries).map_err(CliError::Algebra)
}

fn parse_monomial_basis(cur: &mut Cursor) -> Result<MultiIndex, CliError> {
    cur.skip_ws();
    if cur.peek() == Some('1') {
        cur.bump();
        return Ok(MultiIndex::unit());
    }
    parse_monomial_factors(cur)
}

fn parse_bag_basis(cur: &mut Cursor) -> Result<MonomialBag, CliError> {
    cur.skip_ws();
    if cur.peek() == Some('1') {
        cur.bump();
        return Ok(MonomialBag::unit());
    }
    let mut factors = Vec::new();
    loop {
        let pos = cur.pos;
        let m = parse_monomial_factors(cur)?;
        if m.weight() != -1 {
            return Err(CliError::Syntax {
                pos,
                msg: format!("bag factor {m} has weight {}, expected -1", m.weight()),
            });
        }
        factors.push(m);
        let save = cur.pos;
        cur.skip_ws();
        if cur.eat_str("(.)") {
            cur.skip_ws();
            continue;
        }
        cur.pos = save;
        break;
    }
    MonomialBag::from_factors(factors).map_err(CliError::Algebra)
}

fn parse_tree_basis(cur: &mut Cursor) -> Result<Tree, CliError> {
    cur.skip_ws();
    let decoration = cur.parse_decoration()?;
    let save = cur.pos;
    cur.skip_ws();
    let mut children = Vec::new();
    if cur.eat('[') {
        cur.skip_ws();
        if !cur.eat(']') {
            loop {
                children.push(parse_tree_basis(cur)?);
                cur.skip_ws();
                if cur.eat(',') {
                    continue;
                }
                cur.expect(']')?;
                break;
            }
        }
    } else {
        cur.pos = save;
    }
    Ok(Tree::node(decoration, children))
}

fn parse_forest_basis(cur: &mut Cursor) -> Result<Forest, CliError> {
    cur.skip_ws();
    if cur.peek() == Some('1') {
        cur.bump();
        return Ok(Forest::empty());
    }
    let mut trees = vec![parse_tree_basis(cur)?];
    loop {
        let save = cur.pos;
        cur.skip_ws();
        if cur.eat('·') {
            cur.skip_ws();
            trees.push(parse_tree_basis(cur)?);
            continue;
        }
        if matches!(cur.peek(), Some(c) if c.is_ascii_lowercase()) {
            trees.push(parse_tree_basis(cur)?);
            continue;
        }
        cur.pos = save;
        break;
    }
    Ok(Forest::from_trees(trees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfmi::algebra::{rat, ratio};

    fn a() -> Alphabet {
        Alphabet::single_a()
    }

    fn mi(slots: &str) -> MultiIndex {
        let d = Decoration::new('a').unwrap();
        MultiIndex::from_entries(
            slots
                .split_whitespace()
                .map(|s| ((d, s.parse::<Slot>().unwrap()), 1)),
        )
        .unwrap()
    }

    #[test]
    fn parses_monomials() {
        let got = parse("x{-1}^2 x{0} x{1}", Sort::MultiIndex, &a()).unwrap();
        assert_eq!(got, ExprValue::MultiIndex(LinComb::basis(mi("-1 -1 0 1"))));
        let got = parse("1", Sort::MultiIndex, &a()).unwrap();
        assert_eq!(got, ExprValue::MultiIndex(LinComb::basis(MultiIndex::unit())));
        let got = parse("0", Sort::MultiIndex, &a()).unwrap();
        assert_eq!(got, ExprValue::MultiIndex(LinComb::zero()));
    }

    #[test]
    fn parses_decorated_monomials() {
        let two = Alphabet::new(['a', 'b']).unwrap();
        let got = parse("x{a,-1} x{b,0}", Sort::MultiIndex, &two).unwrap();
        let b = Decoration::new('b').unwrap();
        let d = Decoration::new('a').unwrap();
        let want = MultiIndex::from_entries([((d, -1), 1), ((b, 0), 1)]).unwrap();
        assert_eq!(got, ExprValue::MultiIndex(LinComb::basis(want)));
        // strict omission rule in both directions
        assert!(parse("x{a,-1}", Sort::MultiIndex, &a()).is_err());
        assert!(parse("x{-1}", Sort::MultiIndex, &two).is_err());
    }

    #[test]
    fn parses_bags() {
        let got = parse("x{-1} (.) x{-1} x{0}", Sort::Bag, &a()).unwrap();
        let want = MonomialBag::from_factors([mi("-1"), mi("-1 0")]).unwrap();
        assert_eq!(got, ExprValue::Bag(LinComb::basis(want)));
        // weight is checked per factor
        assert!(matches!(
            parse("x{0}", Sort::Bag, &a()),
            Err(CliError::Syntax { .. })
        ));
    }

    #[test]
    fn parses_trees_and_forests() {
        let got = parse("a[a,a[a]]", Sort::Tree, &a()).unwrap();
        let leaf = Tree::leaf(Decoration::new('a').unwrap());
        let chain = Tree::node(Decoration::new('a').unwrap(), vec![leaf.clone()]);
        let want = Tree::node(Decoration::new('a').unwrap(), vec![leaf.clone(), chain]);
        assert_eq!(got, ExprValue::Tree(LinComb::basis(want.clone())));

        let got = parse("a · a[a,a[a]]", Sort::Forest, &a()).unwrap();
        let f = Forest::from_trees([leaf.clone(), want.clone()]);
        assert_eq!(got, ExprValue::Forest(LinComb::basis(f.clone())));
        // whitespace also separates forest components
        let got = parse("a[a,a[a]] a", Sort::Forest, &a()).unwrap();
        assert_eq!(got, ExprValue::Forest(LinComb::basis(f)));
    }

    #[test]
    fn parses_linear_combinations() {
        let got = parse("2 a[a] - 1/2 a", Sort::Forest, &a()).unwrap();
        let ExprValue::Forest(x) = got else { panic!() };
        let leaf = Forest::from_trees([Tree::leaf(Decoration::new('a').unwrap())]);
        assert_eq!(x.coeff(&leaf), ratio(-1, 2));
        assert_eq!(x.num_terms(), 2);

        let got = parse("x{-1} - x{-1}", Sort::MultiIndex, &a()).unwrap();
        let ExprValue::MultiIndex(x) = got else { panic!() };
        assert!(x.is_zero());

        let got = parse("2 1 + x{-1}", Sort::Bag, &a()).unwrap();
        let ExprValue::Bag(x) = got else { panic!() };
        assert_eq!(x.coeff(&MonomialBag::unit()), rat(2));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("x{-1", Sort::MultiIndex, &a()) {
            Err(CliError::Syntax { pos, .. }) => assert!(pos >= 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("x{-2}", Sort::MultiIndex, &a()).is_err());
        assert!(parse("x{-1}^0", Sort::MultiIndex, &a()).is_err());
        assert!(parse("a[[", Sort::Tree, &a()).is_err());
        assert!(parse("q", Sort::Tree, &a()).is_err());
        assert!(parse("3", Sort::MultiIndex, &a()).is_err());
    }

    #[test]
    fn parses_polynomials() {
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
        assert_eq!(parse_poly("y").unwrap(), Poly::y());
        assert_eq!(
            parse_poly("5/2*y").unwrap(),
            Poly::y().scale(&ratio(5, 2))
        );
        let p = parse_poly("1 + 2*y^2 - y").unwrap();
        assert_eq!(p.coeff(0), rat(1));
        assert_eq!(p.coeff(1), rat(-1));
        assert_eq!(p.coeff(2), rat(2));
        assert!(parse_poly("y + ").is_err());
    }

    #[test]
    fn parses_rational_strings() {
        assert_eq!(parse_rational_str("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational_str("-7").unwrap(), rat(-7));
        assert!(parse_rational_str("1/0").is_err());
    }
}
