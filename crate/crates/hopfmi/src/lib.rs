//! Exact-arithmetic computer algebra for the Hopf algebra of decorated
//! multi-indices and the Hopf algebra of decorated rooted forests, with the
//! fertility map between them, the admissible-cut coproducts on both sides,
//! a Grossman-Larson duality oracle, and truncated B-series over polynomial
//! vector fields.
//!
//! All coefficients are arbitrary-precision rationals; every equality the
//! crate claims is exact.

pub mod algebra;
pub mod alphabet;
pub mod bseries;
pub mod error;
pub mod fertility;
pub mod forests;
pub mod hopflot;
pub mod multiindex;

pub use algebra::{LinComb, Multiset, Rational, SigmaFactors, Tensor2, TensorN};
pub use alphabet::{Alphabet, Decoration};
pub use error::AlgebraError;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::alphabet::Decoration;
    use crate::forests::{Forest, Tree};
    use crate::multiindex::{MultiIndex, Slot};

    pub fn dec(c: char) -> Decoration {
        Decoration::new(c).unwrap()
    }

    /// `mi("-1 -1 0 1")` is x{-1}^2 x{0} x{1} over the decoration `a`.
    pub fn mi(slots: &str) -> MultiIndex {
        let a = dec('a');
        MultiIndex::from_entries(
            slots
                .split_whitespace()
                .map(|s| ((a, s.parse::<Slot>().unwrap()), 1)),
        )
        .unwrap()
    }

    /// Minimal tree notation for tests: `a[a,a[a]]`, one-letter decorations.
    pub fn t(s: &str) -> Tree {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (tree, used) = parse_tree(&chars, 0);
        assert_eq!(used, chars.len(), "trailing input in tree literal {s:?}");
        tree
    }

    fn parse_tree(chars: &[char], mut i: usize) -> (Tree, usize) {
        let d = dec(chars[i]);
        i += 1;
        let mut children = Vec::new();
        if i < chars.len() && chars[i] == '[' {
            i += 1;
            loop {
                let (c, ni) = parse_tree(chars, i);
                children.push(c);
                i = ni;
                match chars[i] {
                    ',' => i += 1,
                    ']' => {
                        i += 1;
                        break;
                    }
                    other => panic!("unexpected {other:?} in tree literal"),
                }
            }
        }
        (Tree::node(d, children), i)
    }

    /// Whitespace-separated trees: `fo("a a[a]")`.
    pub fn fo(s: &str) -> Forest {
        Forest::from_trees(s.split_whitespace().map(t))
    }
}
