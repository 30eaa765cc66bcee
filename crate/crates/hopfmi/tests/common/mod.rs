//! Shared literals for the integration suites.

use hopfmi::alphabet::Decoration;
use hopfmi::forests::{Forest, Tree};
use hopfmi::multiindex::{MonomialBag, MultiIndex, Slot};

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

pub fn bag(factors: &[&str]) -> MonomialBag {
    MonomialBag::from_factors(factors.iter().map(|s| mi(s))).unwrap()
}

/// `t("a[a,a[a]]")` with one-letter decorations.
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
