//! Decorated rooted trees and forests in canonical form: symmetry factors,
//! grafting and its extension to forests, the Grossman-Larson product, the
//! B₊/B₋ operators, admissible cuts and the forest coproduct, enumeration,
//! and cut/graft counting.

use crate::algebra::{LinComb, Multiset, Rational, SigmaFactors, Tensor2, TensorN, big_factorial};
use crate::alphabet::{Alphabet, Decoration};
use crate::error::AlgebraError;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Default cap on enumeration degree.
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

/// A decorated rooted tree in canonical form: the children list is kept
/// sorted by the total order on trees, so structural equality is equality
/// of isomorphism classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    decoration: Decoration,
    children: Vec<Tree>,
}

impl Tree {
    pub fn leaf(decoration: Decoration) -> Self {
        Tree {
            decoration,
            children: Vec::new(),
        }
    }

    pub fn node(decoration: Decoration, mut children: Vec<Tree>) -> Self {
        children.sort();
        Tree {
            decoration,
            children,
        }
    }

    pub fn decoration(&self) -> Decoration {
        self.decoration
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    /// Fertility of the root: its number of children.
    pub fn root_fertility(&self) -> usize {
        self.children.len()
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Tree::size).sum::<usize>()
    }

    /// Order of the automorphism group: Π m_i! σ(s_i)^{m_i} over the
    /// distinct child subtrees.
    pub fn sigma(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.children.len() {
            let mut j = i;
            while j < self.children.len() && self.children[j] == self.children[i] {
                j += 1;
            }
            let m = (j - i) as u64;
            acc *= big_factorial(m) * self.children[i].sigma().pow(m as u32);
            i = j;
        }
        acc
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decoration)?;
        if !self.children.is_empty() {
            write!(f, "[")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// A finite multiset of trees. The empty forest is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Forest {
    trees: Multiset<Tree>,
}

impl Forest {
    pub fn empty() -> Self {
        Forest::default()
    }

    pub fn single(t: Tree) -> Self {
        Forest::from_trees([t])
    }

    pub fn from_trees(trees: impl IntoIterator<Item = Tree>) -> Self {
        Forest {
            trees: Multiset::from_elements(trees),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Total vertex count.
    pub fn size(&self) -> usize {
        self.trees.iter_counts().map(|(t, c)| t.size() * c).sum()
    }

    /// Number of connected components, with multiplicity.
    pub fn component_count(&self) -> usize {
        self.trees.len()
    }

    pub fn trees(&self) -> &Multiset<Tree> {
        &self.trees
    }

    /// Components expanded with multiplicity, in canonical order.
    pub fn component_list(&self) -> Vec<Tree> {
        self.trees.iter_elements().cloned().collect()
    }

    /// Disjoint union (the forest product).
    pub fn union(&self, other: &Self) -> Self {
        Forest {
            trees: self.trees.union(&other.trees),
        }
    }

    /// If the forest is one single tree, that tree.
    pub fn as_single_tree(&self) -> Option<&Tree> {
        if self.trees.len() == 1 {
            self.trees.first()
        } else {
            None
        }
    }

    /// σ(F) = ℓ_1!···ℓ_n! σ(t_1)^{ℓ_1}···σ(t_n)^{ℓ_n}, with external and
    /// internal parts.
    pub fn sigma(&self) -> SigmaFactors {
        let mut external = BigInt::one();
        let mut internal = BigInt::one();
        for (t, c) in self.trees.iter_counts() {
            external *= big_factorial(c as u64);
            internal *= t.sigma().pow(c as u32);
        }
        SigmaFactors {
            total: &external * &internal,
            external,
            internal,
        }
    }

    /// Addresses of all vertices as (component index, path of child indices),
    /// component indices referring to `component_list`.
    pub(crate) fn vertex_addresses(&self) -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        for (ci, t) in self.component_list().iter().enumerate() {
            collect_paths(t, &mut vec![], &mut |path| out.push((ci, path.to_vec())));
        }
        out
    }
}

fn collect_paths(t: &Tree, prefix: &mut Vec<usize>, sink: &mut impl FnMut(&[usize])) {
    sink(prefix);
    for (i, c) in t.children().iter().enumerate() {
        prefix.push(i);
        collect_paths(c, prefix, sink);
        prefix.pop();
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for t in self.trees.iter_elements() {
            if !first {
                write!(f, " · ")?;
            }
            first = false;
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Attaches `s` as a new child of the vertex of `t` at `path`.
fn graft_at(t: &Tree, path: &[usize], s: &Tree) -> Tree {
    if path.is_empty() {
        let mut children = t.children().to_vec();
        children.push(s.clone());
        Tree::node(t.decoration(), children)
    } else {
        let mut children = t.children().to_vec();
        children[path[0]] = graft_at(&children[path[0]], &path[1..], s);
        Tree::node(t.decoration(), children)
    }
}

/// The pre-Lie grafting product: the sum over all vertices of `t` of
/// attaching `s` there. Total coefficient mass equals the vertex count of
/// `t`.
pub fn graft(s: &Tree, t: &Tree) -> LinComb<Tree> {
    let mut out = LinComb::zero();
    collect_paths(t, &mut vec![], &mut |path| {
        out.add_term(graft_at(t, path, s), Rational::one());
    });
    out
}

/// Grafts a single tree on a forest as a derivation over components.
fn graft_tree_on_forest(s: &Tree, g: &Forest) -> LinComb<Forest> {
    let comps = g.component_list();
    let mut out = LinComb::zero();
    for i in 0..comps.len() {
        for (grafted, c) in graft(s, &comps[i]).iter() {
            let mut trees = comps.clone();
            trees[i] = grafted.clone();
            out.add_term(Forest::from_trees(trees), c.clone());
        }
    }
    out
}

/// The multi-grafting F ▷ G extending the pre-Lie product, built from the
/// defining recursion: 𝟙 ▷ G = G, single trees act as derivations, and
/// (x ⊙ F') ▷ G = x ▷ (F' ▷ G) − (x ▷ F') ▷ G.
pub fn guin_oudom_forest(f: &Forest, g: &Forest) -> LinComb<Forest> {
    match f.component_count() {
        0 => LinComb::basis(g.clone()),
        1 => graft_tree_on_forest(f.trees().first().unwrap(), g),
        _ => {
            let x = f.trees().first().unwrap().clone();
            let mut rest = f.trees().clone();
            rest.remove_one(&x);
            let f_rest = Forest { trees: rest };

            let inner = guin_oudom_forest(&f_rest, g);
            let t1 = inner.linear_map(|h| graft_tree_on_forest(&x, h));
            let x_on_rest = graft_tree_on_forest(&x, &f_rest);
            let t2 = x_on_rest.linear_map(|h| guin_oudom_forest(h, g));
            t1.sub(&t2)
        }
    }
}

/// Direct route to the multi-grafting: one forest per assignment of the
/// components of `f` to vertices of `g`. Independent of the recursion above.
pub fn multigraft_assignments(f: &Forest, g: &Forest) -> Vec<Forest> {
    let comps = f.component_list();
    let addrs = g.vertex_addresses();
    if comps.is_empty() {
        return vec![g.clone()];
    }
    if addrs.is_empty() {
        return Vec::new();
    }
    let g_comps = g.component_list();
    let mut out = Vec::new();
    let mut pick = vec![0usize; comps.len()];
    loop {
        // group attachments per component and path
        let mut per_comp: Vec<HashMap<Vec<usize>, Vec<Tree>>> =
            vec![HashMap::new(); g_comps.len()];
        for (i, &a) in pick.iter().enumerate() {
            let (ci, ref path) = addrs[a];
            per_comp[ci]
                .entry(path.clone())
                .or_default()
                .push(comps[i].clone());
        }
        let trees: Vec<Tree> = g_comps
            .iter()
            .enumerate()
            .map(|(ci, t)| attach_many(t, &mut vec![], &per_comp[ci]))
            .collect();
        out.push(Forest::from_trees(trees));

        let mut i = 0;
        loop {
            if i == pick.len() {
                return out;
            }
            if pick[i] + 1 < addrs.len() {
                pick[i] += 1;
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn attach_many(
    t: &Tree,
    prefix: &mut Vec<usize>,
    attachments: &HashMap<Vec<usize>, Vec<Tree>>,
) -> Tree {
    let mut children: Vec<Tree> = Vec::with_capacity(t.children().len());
    for (i, c) in t.children().iter().enumerate() {
        prefix.push(i);
        children.push(attach_many(c, prefix, attachments));
        prefix.pop();
    }
    if let Some(extra) = attachments.get(prefix.as_slice()) {
        children.extend(extra.iter().cloned());
    }
    Tree::node(t.decoration(), children)
}

/// Multi-grafting as a linear combination via the direct enumeration.
pub fn multigraft_direct(f: &Forest, g: &Forest) -> LinComb<Forest> {
    let mut out = LinComb::zero();
    for h in multigraft_assignments(f, g) {
        out.add_term(h, Rational::one());
    }
    out
}

/// Grafts all components of `f` under a new root decorated `a`.
pub fn bplus(f: &Forest, a: Decoration) -> Tree {
    Tree::node(a, f.component_list())
}

/// Removes the root when its decoration is `a`; `None` encodes the zero
/// combination.
pub fn bminus(t: &Tree, a: Decoration) -> Option<Forest> {
    if t.decoration() == a {
        Some(Forest::from_trees(t.children().to_vec()))
    } else {
        None
    }
}

/// Plain root removal, left inverse to every `bplus(·, c)`.
fn strip_root(t: &Tree) -> Forest {
    Forest::from_trees(t.children().to_vec())
}

/// The Grossman-Larson product through the deshuffle of the left factor:
/// F ⋆ G = Σ F₁ (F₂ ▷ G). In debug builds the graft-or-fall route is
/// checked against it.
pub fn gl_forest(f: &Forest, g: &Forest) -> LinComb<Forest> {
    let mut out = LinComb::zero();
    for (left, right, mult) in f.trees().splits() {
        let left_forest = Forest { trees: left };
        let acted = guin_oudom_forest(&Forest { trees: right }, g);
        for (h, c) in acted.iter() {
            out.add_term(left_forest.union(h), c * Rational::from_integer(mult.into()));
        }
    }
    debug_assert_eq!(out, {
        let c = f
            .trees()
            .first()
            .or_else(|| g.trees().first())
            .map(|t| t.decoration())
            .unwrap_or_else(|| Decoration::new('a').unwrap());
        gl_forest_graft_or_fall(f, g, c)
    });
    out
}

/// The graft-or-fall formula F ⋆ G = B₋(F ▷ B₊^c(G)); the result does not
/// depend on the decoration `c`.
pub fn gl_forest_graft_or_fall(f: &Forest, g: &Forest, c: Decoration) -> LinComb<Forest> {
    let rooted = bplus(g, c);
    guin_oudom_forest(f, &Forest::single(rooted)).map_basis(|h| {
        let t = h.as_single_tree().expect("grafting on a tree yields a tree");
        strip_root(t)
    })
}

/// One admissible cut of a forest: the pruned part (crown) and the trunk.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ForestCut {
    pub pruning: Forest,
    pub trunk: Forest,
}

/// Cuts of a single tree as (pruning, trunk) with `None` trunk for the full
/// cut; one entry per admissible vertex subset.
fn tree_cuts(t: &Tree) -> Vec<(Forest, Option<Tree>)> {
    let mut partial: Vec<(Forest, Vec<Tree>)> = vec![(Forest::empty(), Vec::new())];
    for child in t.children() {
        let child_cuts = tree_cuts(child);
        let mut next = Vec::with_capacity(partial.len() * child_cuts.len());
        for (pruning, trunk_children) in &partial {
            for (cp, ct) in &child_cuts {
                let mut tk = trunk_children.clone();
                if let Some(ct) = ct {
                    tk.push(ct.clone());
                }
                next.push((pruning.union(cp), tk));
            }
        }
        partial = next;
    }
    let mut out: Vec<(Forest, Option<Tree>)> = partial
        .into_iter()
        .map(|(p, tk)| (p, Some(Tree::node(t.decoration(), tk))))
        .collect();
    out.push((Forest::single(t.clone()), None));
    out
}

/// All admissible cuts of a forest, one per admissible vertex subset
/// (including the empty and full cuts).
pub fn forest_cuts(f: &Forest) -> Vec<ForestCut> {
    let mut acc: Vec<ForestCut> = vec![ForestCut {
        pruning: Forest::empty(),
        trunk: Forest::empty(),
    }];
    for t in f.trees().iter_elements() {
        let cuts = tree_cuts(t);
        let mut next = Vec::with_capacity(acc.len() * cuts.len());
        for prev in &acc {
            for (p, tk) in &cuts {
                let trunk = match tk {
                    Some(tree) => prev.trunk.union(&Forest::single(tree.clone())),
                    None => prev.trunk.clone(),
                };
                next.push(ForestCut {
                    pruning: prev.pruning.union(p),
                    trunk,
                });
            }
        }
        acc = next;
    }
    acc
}

/// The forest coproduct: Σ pruning ⊗ trunk over admissible cuts.
pub fn coproduct_bck(f: &Forest) -> Tensor2<Forest, Forest> {
    let mut out = Tensor2::zero();
    for cut in forest_cuts(f) {
        out.add_term((cut.pruning, cut.trunk), Rational::one());
    }
    out
}

/// Iterated coproduct with n legs (n ≥ 2), expanding the leftmost leg.
pub fn coproduct_bck_iterated(f: &Forest, n: usize) -> TensorN<Forest> {
    assert!(n >= 2, "tensor order must be at least 2");
    let mut out: TensorN<Forest> = coproduct_bck(f).map_basis(|(l, r)| vec![l.clone(), r.clone()]);
    for _ in 2..n {
        out = out.linear_map(|legs| {
            coproduct_bck(&legs[0]).map_basis(|(l, r)| {
                let mut v = Vec::with_capacity(legs.len() + 1);
                v.push(l.clone());
                v.push(r.clone());
                v.extend(legs[1..].iter().cloned());
                v
            })
        });
    }
    out
}

/// The counit: coefficient of the empty forest.
pub fn counit_forest(x: &LinComb<Forest>) -> Rational {
    x.coeff(&Forest::empty())
}

/// Enumerates canonical trees and forests by exact vertex count, memoized,
/// up to a configured bound.
pub struct Enumerator {
    alphabet: Alphabet,
    bound: usize,
    trees_memo: HashMap<usize, Arc<Vec<Tree>>>,
    forests_memo: HashMap<usize, Arc<Vec<Forest>>>,
}

impl Enumerator {
    pub fn new(alphabet: Alphabet) -> Self {
        Self::with_bound(alphabet, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn with_bound(alphabet: Alphabet, bound: usize) -> Self {
        Enumerator {
            alphabet,
            bound,
            trees_memo: HashMap::new(),
            forests_memo: HashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// All trees with exactly `n` vertices.
    pub fn trees(&mut self, n: usize) -> Result<Arc<Vec<Tree>>, AlgebraError> {
        if n > self.bound {
            return Err(AlgebraError::Bound {
                requested: n,
                bound: self.bound,
            });
        }
        if let Some(v) = self.trees_memo.get(&n) {
            return Ok(v.clone());
        }
        let result = if n == 0 {
            Vec::new()
        } else {
            let mut out = Vec::new();
            let branches = self.forests(n - 1)?;
            for &d in self.alphabet.decorations() {
                for f in branches.iter() {
                    out.push(Tree::node(d, f.component_list()));
                }
            }
            out.sort();
            out.dedup();
            out
        };
        let arc = Arc::new(result);
        self.trees_memo.insert(n, arc.clone());
        Ok(arc)
    }

    /// All forests with exactly `n` vertices (n = 0 gives the empty forest).
    pub fn forests(&mut self, n: usize) -> Result<Arc<Vec<Forest>>, AlgebraError> {
        if n > self.bound {
            return Err(AlgebraError::Bound {
                requested: n,
                bound: self.bound,
            });
        }
        if let Some(v) = self.forests_memo.get(&n) {
            return Ok(v.clone());
        }
        let mut pool: Vec<Tree> = Vec::new();
        for s in 1..=n {
            pool.extend(self.trees(s)?.iter().cloned());
        }
        pool.sort();
        fn rec(pool: &[Tree], start: usize, left: usize, acc: &mut Vec<Tree>, out: &mut Vec<Forest>) {
            if left == 0 {
                out.push(Forest::from_trees(acc.iter().cloned()));
                return;
            }
            for i in start..pool.len() {
                let s = pool[i].size();
                if s > left {
                    continue;
                }
                acc.push(pool[i].clone());
                rec(pool, i, left - s, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(&pool, 0, n, &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        let arc = Arc::new(out);
        self.forests_memo.insert(n, arc.clone());
        Ok(arc)
    }

    /// All forests of every size up to and including `n`.
    pub fn forests_up_to(&mut self, n: usize) -> Result<Vec<Forest>, AlgebraError> {
        let mut out = Vec::new();
        for s in 0..=n {
            out.extend(self.forests(s)?.iter().cloned());
        }
        Ok(out)
    }
}

/// All graftings of `v` on `w`, one forest per assignment of the components
/// of `v` to vertices of the rooted closure of `w`: landing on the phantom
/// root means falling as a new component. This is the notion of grafting
/// that undoes every admissible cut, whole-component prunings included.
pub fn graftings_with_fall(v: &Forest, w: &Forest) -> Vec<Forest> {
    let c = v
        .trees()
        .first()
        .or_else(|| w.trees().first())
        .map(|t| t.decoration())
        .unwrap_or_else(|| Decoration::new('a').unwrap());
    multigraft_assignments(v, &Forest::single(bplus(w, c)))
        .into_iter()
        .map(|h| {
            let t = h.as_single_tree().expect("grafting on a tree yields a tree");
            strip_root(t)
        })
        .collect()
}

/// C(u,v,w) and G(u,v,w): the number of admissible cuts of `u` with pruning
/// `v` and trunk `w`, and the number of graftings of `v` on `w` isomorphic
/// to `u`, both by exhaustive enumeration.
pub fn cut_graft_counts(u: &Forest, v: &Forest, w: &Forest) -> (u64, u64) {
    let c = forest_cuts(u)
        .into_iter()
        .filter(|cut| &cut.pruning == v && &cut.trunk == w)
        .count() as u64;
    let g = graftings_with_fall(v, w)
        .into_iter()
        .filter(|h| h == u)
        .count() as u64;
    (c, g)
}
