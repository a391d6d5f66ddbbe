//! Explicit λ-chains (type A) and extended λ-chains (type C), and the
//! folding-pair calculus on top of them.
//!
//! A folding pair `(w, J)` stands for the alcove walk obtained from `w(Π)` by
//! folding at the positions in `J`; everything needed downstream (the end
//! element `wφ(J)`, the weight `w(μ(J))`, the sign of each fold) is computed
//! from the pair directly.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::weyl::{enumerate_group, CartanType, GroupElement, RootLabel};

/// Which factor of the concatenation a chain position belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorTag {
    /// `Γ_j` of the type A chain `Γ_{λ_1} … Γ_2`.
    Column(usize),
    /// `Γ_{ij} = Γ_j(λ'_i)` of the type C chain.
    Unprimed { i: usize, j: usize },
    /// `Γ'_{ik} = Γ'_k` of the type C chain.
    Primed { i: usize, k: usize },
}

impl FactorTag {
    /// The column of `λ` the factor comes from (`i` in type C, `j` in type A).
    pub fn group(&self) -> usize {
        match *self {
            FactorTag::Column(j) => j,
            FactorTag::Unprimed { i, .. } | FactorTag::Primed { i, .. } => i,
        }
    }
}

impl fmt::Display for FactorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorTag::Column(j) => write!(f, "G{j}"),
            FactorTag::Unprimed { i, j } => write!(f, "G{i}{j}"),
            FactorTag::Primed { i, k } => write!(f, "G'{i}{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub tag: FactorTag,
    /// 0-based half-open range of chain positions; may be empty.
    pub range: Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaChain {
    cartan: CartanType,
    n: usize,
    lambda: Partition,
    roots: Vec<RootLabel>,
    levels: Vec<u32>,
    factors: Vec<Factor>,
}

impl LambdaChain {
    fn assemble(cartan: CartanType, n: usize, lambda: Partition, blocks: Vec<(FactorTag, Vec<RootLabel>)>) -> Self {
        let mut roots = Vec::new();
        let mut factors = Vec::with_capacity(blocks.len());
        for (tag, labels) in blocks {
            let start = roots.len();
            roots.extend(labels);
            factors.push(Factor { tag, range: start..roots.len() });
        }
        let mut seen: HashMap<RootLabel, u32> = HashMap::new();
        let levels = roots
            .iter()
            .map(|r| {
                let c = seen.entry(*r).or_insert(0);
                *c += 1;
                *c
            })
            .collect();
        Self { cartan, n, lambda, roots, levels, factors }
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootLabel] {
        &self.roots
    }

    /// Root at 1-based position `j`.
    pub fn root(&self, j: usize) -> RootLabel {
        self.roots[j - 1]
    }

    /// Level `l_j` at 1-based position `j`.
    pub fn level(&self, j: usize) -> u32 {
        self.levels[j - 1]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor_tags(&self) -> Vec<FactorTag> {
        let mut tags = Vec::with_capacity(self.len());
        for f in &self.factors {
            tags.extend(std::iter::repeat_n(f.tag, f.range.len()));
        }
        tags
    }

    /// `λ` as a weight vector of length `n`.
    pub fn weight(&self) -> Vec<i64> {
        self.lambda.weight(self.n)
    }

    /// Labels interleaved with `|` between factors and, in type C, `||`
    /// between the subchains of different columns.
    pub fn tokens(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (idx, f) in self.factors.iter().enumerate() {
            if idx > 0 {
                let prev = &self.factors[idx - 1];
                let sep = if self.cartan == CartanType::C && prev.tag.group() != f.tag.group() { "||" } else { "|" };
                out.push(sep.to_string());
            }
            out.extend(self.roots[f.range.clone()].iter().map(|r| r.to_string()));
        }
        out
    }

    /// One token per line: the chain dump format.
    pub fn dump(&self) -> String {
        let mut s = self.tokens().join("\n");
        s.push('\n');
        s
    }

    fn check_folds(&self, folds: &[usize]) -> Result<()> {
        if folds.iter().any(|&j| j == 0 || j > self.len()) || folds.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::Invariant(format!(
                "fold set {folds:?} is not a strictly increasing subset of 1..={}",
                self.len()
            )));
        }
        Ok(())
    }

    /// `φ(J) = r_{j_1} ⋯ r_{j_s}`.
    pub fn phi_of(&self, folds: &[usize]) -> Result<GroupElement> {
        self.check_folds(folds)?;
        folds
            .iter()
            .try_fold(GroupElement::identity(self.cartan, self.n), |u, &j| u.compose(self.root(j)))
    }

    /// `μ(J) = r̂_{j_1} ⋯ r̂_{j_s}(λ)`, with `r̂_{j_s}` applied first.
    pub fn mu_of(&self, folds: &[usize]) -> Result<Vec<i64>> {
        self.check_folds(folds)?;
        Ok(folds
            .iter()
            .rev()
            .fold(self.weight(), |mu, &j| self.root(j).affine_reflect(&mu, self.level(j) as i64)))
    }
}

impl fmt::Display for LambdaChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, factor) in self.factors.iter().enumerate() {
            if idx > 0 {
                let prev = &self.factors[idx - 1];
                let sep = if self.cartan == CartanType::C && prev.tag.group() != factor.tag.group() { "||" } else { "|" };
                write!(f, " {sep} ")?;
            }
            let labels: Vec<String> = self.roots[factor.range.clone()].iter().map(|r| r.to_string()).collect();
            write!(f, "{}", labels.join(","))?;
        }
        write!(f, ")")
    }
}

fn type_a_gamma(k: usize, n: usize, drop_last: bool) -> Vec<RootLabel> {
    let mut out = Vec::new();
    for i in (1..=k).rev() {
        let lo = if drop_last { k + 2 } else { k + 1 };
        out.extend((lo..=n).rev().map(|m| RootLabel::Plain(i, m)));
    }
    out
}

/// The λ-chain `Γ_{λ_1} ⋯ Γ_2` for a partition with `n - 1` distinct parts.
pub fn chain_type_a(lambda: &Partition, n: usize) -> Result<LambdaChain> {
    if n < 2 {
        return Err(Error::ShapeMismatch { expected: 1, found: lambda.len() });
    }
    lambda.require_parts(n - 1)?;
    let heights = lambda.conjugate();
    let mut blocks = Vec::new();
    for j in (2..=lambda.largest() as usize).rev() {
        let k = heights[j - 1];
        let first = heights.iter().position(|&h| h == k).unwrap() + 1 == j;
        blocks.push((FactorTag::Column(j), type_a_gamma(k, n, first)));
    }
    Ok(LambdaChain::assemble(CartanType::A, n, lambda.clone(), blocks))
}

fn gamma_primed(j: usize) -> Vec<RootLabel> {
    (1..j).map(|r| RootLabel::BarredPair(r, j)).collect()
}

fn gamma_unprimed(j: usize, k: usize, n: usize) -> Vec<RootLabel> {
    let mut out = gamma_primed(j);
    out.extend((k + 1..=n).map(|m| RootLabel::BarredPair(j, m)));
    out.push(RootLabel::Long(j));
    out.extend((k + 1..=n).rev().map(|m| RootLabel::Plain(j, m)));
    out
}

/// The extended λ-chain `Γ^{λ_1} ⋯ Γ^1` for a partition with `n` distinct parts.
pub fn chain_type_c(lambda: &Partition, n: usize) -> Result<LambdaChain> {
    if n < 2 {
        return Err(Error::ShapeMismatch { expected: 2, found: lambda.len() });
    }
    lambda.require_parts(n)?;
    let heights = lambda.conjugate();
    let mut blocks = Vec::new();
    for i in (1..=lambda.largest() as usize).rev() {
        let k = heights[i - 1];
        for kk in 2..=k {
            blocks.push((FactorTag::Primed { i, k: kk }, gamma_primed(kk)));
        }
        for j in 1..=k {
            blocks.push((FactorTag::Unprimed { i, j }, gamma_unprimed(j, k, n)));
        }
    }
    Ok(LambdaChain::assemble(CartanType::C, n, lambda.clone(), blocks))
}

/// A Weyl group element together with a set of fold positions (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingPair<'c> {
    chain: &'c LambdaChain,
    w: GroupElement,
    folds: Vec<usize>,
}

impl<'c> FoldingPair<'c> {
    pub fn new(chain: &'c LambdaChain, w: GroupElement, folds: Vec<usize>) -> Result<Self> {
        if w.cartan() != chain.cartan() || w.rank() != chain.rank() {
            return Err(Error::DimensionMismatch(w.rank(), chain.rank()));
        }
        chain.check_folds(&folds)?;
        Ok(Self { chain, w, folds })
    }

    pub fn chain(&self) -> &'c LambdaChain {
        self.chain
    }

    pub fn w(&self) -> &GroupElement {
        &self.w
    }

    pub fn folds(&self) -> &[usize] {
        &self.folds
    }

    /// The running elements `w, w r_{j_1}, …, w φ(J)`.
    pub fn bruhat_chain(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.folds.len() + 1);
        out.push(self.w.clone());
        for &j in &self.folds {
            let next = out.last().unwrap().compose(self.chain.root(j)).expect("chain label matches group");
            out.push(next);
        }
        out
    }

    /// `w φ(J)`.
    pub fn end(&self) -> GroupElement {
        self.bruhat_chain().pop().unwrap()
    }

    /// `w(μ(J))`.
    pub fn weight(&self) -> Vec<i64> {
        let mu = self.chain.mu_of(&self.folds).expect("validated folds");
        self.w.act_on_weight(&mu).expect("rank checked")
    }

    /// Split of `J` into positive folds (length drops) and negative folds.
    pub fn classify(&self) -> (Vec<usize>, Vec<usize>) {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut u = self.w.clone();
        let mut len_u = u.length();
        for &j in &self.folds {
            let next = u.compose(self.chain.root(j)).expect("chain label matches group");
            let len_next = next.length();
            if len_next < len_u {
                positive.push(j);
            } else {
                negative.push(j);
            }
            u = next;
            len_u = len_next;
        }
        (positive, negative)
    }

    pub fn is_positive(&self) -> bool {
        self.classify().1.is_empty()
    }
}

/// All of `W × 2^{[m]}`: by `w`, then by the bitmask of `J` counting upward.
pub fn enumerate_folding_pairs(chain: &LambdaChain) -> impl Iterator<Item = FoldingPair<'_>> + '_ {
    let m = chain.len();
    assert!(m < 64, "chain too long for exhaustive enumeration");
    enumerate_group(chain.cartan(), chain.rank()).flat_map(move |w| {
        (0u64..1 << m).map(move |mask| {
            let folds = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            FoldingPair { chain, w: w.clone(), folds }
        })
    })
}

/// Folding pairs with no negative fold, found by depth-first search that only
/// folds where the running element's length drops.
pub fn enumerate_positive_folding_pairs(chain: &LambdaChain) -> impl Iterator<Item = FoldingPair<'_>> + '_ {
    enumerate_group(chain.cartan(), chain.rank()).flat_map(move |w| positive_pairs_from(chain, w))
}

/// Positive folding pairs with a fixed starting element `w`.
pub fn positive_pairs_from(chain: &LambdaChain, w: GroupElement) -> Vec<FoldingPair<'_>> {
    let mut out = Vec::new();
    let mut folds = Vec::new();
    let len_w = w.length();
    positive_dfs(chain, &w, 0, &w, len_w, &mut folds, &mut out);
    out
}

fn positive_dfs<'c>(
    chain: &'c LambdaChain,
    start: &GroupElement,
    pos: usize,
    current: &GroupElement,
    len_current: usize,
    folds: &mut Vec<usize>,
    out: &mut Vec<FoldingPair<'c>>,
) {
    if pos == chain.len() {
        out.push(FoldingPair { chain, w: start.clone(), folds: folds.clone() });
        return;
    }
    positive_dfs(chain, start, pos + 1, current, len_current, folds, out);
    let next = current.compose(chain.roots[pos]).expect("chain label matches group");
    let len_next = next.length();
    if len_next < len_current {
        folds.push(pos + 1);
        positive_dfs(chain, start, pos + 1, &next, len_next, folds, out);
        folds.pop();
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn perm(w: &[i32]) -> GroupElement {
        GroupElement::new(CartanType::A, w.to_vec()).unwrap()
    }

    #[test]
    fn type_a_small_chains() {
        assert!(chain_type_a(&lam("1"), 2).unwrap().is_empty());
        let c = chain_type_a(&lam("2,1"), 3).unwrap();
        assert_eq!(c.roots(), &[RootLabel::Plain(1, 3)]);
        assert!(matches!(chain_type_a(&lam("2,1"), 4), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn type_a_worked_chain() {
        let c = chain_type_a(&lam("4,3,1"), 4).unwrap();
        let expected = "(1,4) (1,3) | (2,4) (2,3) (1,4) (1,3) | (2,4) (1,4)";
        assert_eq!(c.tokens().join(" "), expected);
        assert_eq!(c.levels(), &[1, 1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn type_c_two_by_one() {
        let c = chain_type_c(&lam("2,1"), 2).unwrap();
        assert_eq!(c.tokens().join(" "), "(1,-2) (1,-1) (1,2) || (1,-2) | (1,-1) | (1,-2) (2,-2)");
        assert!(matches!(chain_type_c(&lam("2"), 1), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn type_c_chain_length_equals_sum_of_coroot_pairings() {
        for (s, n) in [("2,1", 2), ("3,2,1", 3), ("4,2,1", 3), ("3,1", 2)] {
            let l = lam(s);
            let c = chain_type_c(&l, n).unwrap();
            let mu = l.weight(n);
            let total: i64 = crate::weyl::positive_roots(CartanType::C, n)
                .iter()
                .map(|r| r.coroot_pairing(&mu))
                .sum();
            assert_eq!(c.len() as i64, total, "{s}");
        }
    }

    #[test]
    fn levels_recount() {
        let c = chain_type_c(&lam("3,2,1"), 3).unwrap();
        for j in 1..=c.len() {
            let count = (1..=j).filter(|&i| c.root(i) == c.root(j)).count();
            assert_eq!(c.level(j) as usize, count);
        }
        let tags = c.factor_tags();
        assert_eq!(tags.len(), c.len());
    }

    #[test]
    fn phi_and_mu() {
        let c = chain_type_a(&lam("4,3,1"), 4).unwrap();
        assert!(c.phi_of(&[]).unwrap().is_identity());
        let phi = c.phi_of(&[1, 4, 6, 7]).unwrap();
        assert_eq!(phi, perm(&[2, 1, 4, 3]));
        let w = perm(&[2, 3, 4, 1]);
        let end = phi.window().iter().map(|&x| w.window()[x as usize - 1]).collect::<Vec<_>>();
        assert_eq!(end, vec![3, 2, 1, 4]);
        assert_eq!(c.phi_of(&[3]).unwrap(), perm(&[1, 4, 3, 2]));
        assert_eq!(c.mu_of(&[]).unwrap(), vec![4, 3, 1, 0]);
        assert_eq!(c.mu_of(&[1, 4, 6, 7]).unwrap(), vec![2, 3, 1, 2]);
        assert_eq!(c.mu_of(&[1]).unwrap(), vec![1, 3, 1, 3]);
        assert!(c.mu_of(&[4, 1]).is_err());
        assert!(c.phi_of(&[9]).is_err());
    }

    #[test]
    fn classify_worked_examples() {
        let c = chain_type_a(&lam("4,3,1"), 4).unwrap();
        let pair = FoldingPair::new(&c, perm(&[2, 3, 4, 1]), vec![1, 4, 6, 7]).unwrap();
        assert_eq!(pair.classify(), (vec![1, 7], vec![4, 6]));
        assert_eq!(pair.end(), perm(&[3, 2, 1, 4]));
        let empty = FoldingPair::new(&c, perm(&[2, 3, 4, 1]), vec![]).unwrap();
        assert_eq!(empty.classify(), (vec![], vec![]));

        let cc = chain_type_c(&lam("3,2,1"), 3).unwrap();
        let p = FoldingPair::new(&cc, GroupElement::negated_identity(3), vec![2, 6, 12, 13]).unwrap();
        let (pos, neg) = p.classify();
        assert_eq!(pos, vec![2, 6, 12, 13]);
        assert!(neg.is_empty());
    }

    #[test]
    fn pair_counts() {
        let c0 = chain_type_a(&lam("1"), 2).unwrap();
        assert_eq!(enumerate_folding_pairs(&c0).count(), 2);
        let c1 = chain_type_a(&lam("2,1"), 3).unwrap();
        assert_eq!(enumerate_folding_pairs(&c1).count(), 12);
        let c2 = chain_type_a(&lam("4,3,1"), 4).unwrap();
        assert_eq!(enumerate_folding_pairs(&c2).count(), 6144);
    }

    #[test]
    fn classification_is_stable_and_parity_holds() {
        let c = chain_type_a(&lam("4,3,1"), 4).unwrap();
        for pair in enumerate_folding_pairs(&c) {
            let (pos, neg) = pair.classify();
            let mut merged: Vec<usize> = pos.iter().chain(&neg).copied().collect();
            merged.sort();
            let again = FoldingPair::new(&c, pair.w().clone(), merged).unwrap();
            assert_eq!(again.classify(), (pos, neg));
            let diff = pair.w().length() as i64 - pair.end().length() as i64;
            assert_eq!((diff - pair.folds().len() as i64).rem_euclid(2), 0);
        }
    }

    fn as_set<'c>(pairs: impl Iterator<Item = FoldingPair<'c>>) -> BTreeSet<(Vec<i32>, Vec<usize>)> {
        pairs.map(|p| (p.w().window().to_vec(), p.folds().to_vec())).collect()
    }

    #[test]
    fn positive_dfs_matches_brute_filter() {
        let cases = [
            chain_type_c(&lam("2,1"), 2).unwrap(),
            chain_type_a(&lam("2,1"), 3).unwrap(),
            chain_type_a(&lam("3,2,1"), 4).unwrap(),
        ];
        for c in &cases {
            let dfs = as_set(enumerate_positive_folding_pairs(c));
            let brute = as_set(enumerate_folding_pairs(c).filter(|p| p.is_positive()));
            assert_eq!(dfs, brute);
            for (w, _) in &dfs {
                assert!(dfs.contains(&(w.clone(), vec![])));
            }
        }
    }

    #[test]
    fn positive_pairs_shrink_length_by_at_least_fold_count() {
        let c = chain_type_c(&lam("3,2,1"), 3).unwrap();
        let mut found_example = false;
        for p in enumerate_positive_folding_pairs(&c) {
            assert!(p.end().length() + p.folds().len() <= p.w().length());
            if p.w() == &GroupElement::negated_identity(3) && p.folds() == [2, 6, 12, 13] {
                found_example = true;
            }
        }
        assert!(found_example);
    }
}
