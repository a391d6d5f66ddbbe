//! Type A: non-attacking fillings, their statistics, the compressed formula,
//! the Ram-Yip sum over folding pairs, and the filling map between them.
//!
//! Cells are `(i, j)` with row `i` counted from the top and column `j`
//! counted from the right, so column `j` has height `λ'_j` and cell `(i, j)`
//! exists iff `j ≤ λ_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::chain::{chain_type_a, enumerate_folding_pairs, FactorTag, FoldingPair, LambdaChain};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qt::{
    geometry_weight_ramyip, CoeffKind, FactorDenominator, FractionSum, IntPoly2, QTFraction, WeightAccumulator,
    WeightPolynomial,
};
use crate::weyl::CartanType;

/// `(row, column)`, both 1-based, columns counted from the right.
pub type Cell = (usize, usize);

fn check_shape(lambda: &Partition, n: usize) -> Result<()> {
    lambda.require_parts(n.saturating_sub(1))?;
    if n < 2 {
        return Err(Error::ShapeMismatch { expected: 1, found: 0 });
    }
    Ok(())
}

/// `u` and `v` attack: same column, or adjacent columns with the cell in the
/// left column strictly above.
pub fn attacks(u: Cell, v: Cell) -> bool {
    let ((i, j), (k, l)) = (u, v);
    u != v && (j == l || (j == l + 1 && i < k) || (l == j + 1 && k < i))
}

/// An assignment of `1..=n` to the cells of `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filling {
    lambda: Partition,
    n: usize,
    /// `columns[j - 1]` is column `j`, top to bottom.
    columns: Vec<Vec<u32>>,
}

impl Filling {
    pub fn new(lambda: Partition, n: usize, columns: Vec<Vec<u32>>) -> Result<Self> {
        let heights = lambda.conjugate();
        if columns.len() != heights.len() {
            return Err(Error::ShapeMismatch { expected: heights.len(), found: columns.len() });
        }
        for (col, &h) in columns.iter().zip(&heights) {
            if col.len() != h {
                return Err(Error::ShapeMismatch { expected: h, found: col.len() });
            }
            if let Some(&bad) = col.iter().find(|&&x| x == 0 || x as usize > n) {
                return Err(Error::Invariant(format!("entry {bad} outside 1..={n}")));
            }
        }
        Ok(Self { lambda, n, columns })
    }

    /// From rows top to bottom, each listed left to right as displayed.
    pub fn from_display_rows(lambda: Partition, n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if rows.len() != lambda.len() {
            return Err(Error::ShapeMismatch { expected: lambda.len(), found: rows.len() });
        }
        let heights = lambda.conjugate();
        let mut columns: Vec<Vec<u32>> = heights.iter().map(|&h| Vec::with_capacity(h)).collect();
        for (i, row) in rows.iter().enumerate() {
            let width = lambda.part(i + 1) as usize;
            if row.len() != width {
                return Err(Error::ShapeMismatch { expected: width, found: row.len() });
            }
            for (j, &x) in row.iter().rev().enumerate() {
                columns[j].push(x);
            }
        }
        Self::new(lambda, n, columns)
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }

    pub fn get(&self, (i, j): Cell) -> u32 {
        self.columns[j - 1][i - 1]
    }

    fn contains(&self, (i, j): Cell) -> bool {
        j >= 1 && j <= self.columns.len() && i >= 1 && i <= self.columns[j - 1].len()
    }

    /// Cells in reading order: columns right to left, each top to bottom.
    pub fn cells(&self) -> Vec<Cell> {
        self.columns.iter().enumerate().flat_map(|(j, col)| (1..=col.len()).map(move |i| (i, j + 1))).collect()
    }

    /// Rows top to bottom, entries in display order (leftmost column first).
    pub fn display_rows(&self) -> Vec<Vec<u32>> {
        (1..=self.lambda.len())
            .map(|i| (1..=self.lambda.part(i) as usize).rev().map(|j| self.get((i, j))).collect())
            .collect()
    }

    pub fn is_nonattacking(&self) -> bool {
        let cells = self.cells();
        cells.iter().enumerate().all(|(a, &u)| cells[a + 1..].iter().all(|&v| !attacks(u, v) || self.get(u) != self.get(v)))
    }

    /// `content_k` = number of entries equal to `k`.
    pub fn content(&self) -> Vec<i64> {
        let mut c = vec![0; self.n];
        for col in &self.columns {
            for &x in col {
                c[x as usize - 1] += 1;
            }
        }
        c
    }

    pub fn arm(&self, (i, j): Cell) -> u32 {
        self.lambda.part(i) - j as u32
    }

    pub fn leg(&self, (i, j): Cell) -> u32 {
        (self.columns[j - 1].len() - i) as u32
    }

    pub fn stats(&self) -> FillingStats {
        let mut des = Vec::new();
        let mut diff = Vec::new();
        for u @ (i, j) in self.cells() {
            let left = (i, j + 1);
            if self.contains(left) && self.get(u) != self.get(left) {
                diff.push(u);
                if self.get(u) > self.get(left) {
                    des.push(u);
                }
            }
        }
        let cells = self.cells();
        let inversions = cells
            .iter()
            .enumerate()
            .map(|(a, &u)| cells[a + 1..].iter().filter(|&&v| attacks(u, v) && self.get(u) > self.get(v)).count())
            .sum::<usize>();
        let maj = des.iter().map(|&u| self.arm(u)).sum();
        let leg_sum: i64 = des.iter().map(|&u| self.leg(u) as i64).sum();
        FillingStats { inv: inversions as i64 - leg_sum, des, diff, inversions, maj, content: self.content() }
    }
}

/// Rows separated by `" / "`, entries by spaces, e.g. `2 1 3 3 / 3 4 2 / 1`.
impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .display_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingStats {
    /// Descent cells: `σ(u) > σ(left neighbour)`; a subset of `diff`.
    pub des: Vec<Cell>,
    pub diff: Vec<Cell>,
    /// Attacking pairs out of order in reading order.
    pub inversions: usize,
    pub maj: u32,
    /// `inversions − Σ_{des} leg`.
    pub inv: i64,
    pub content: Vec<i64>,
}

/// All non-attacking fillings, in lexicographic order of the reading word.
pub fn enumerate_nonattacking(lambda: &Partition, n: usize) -> Result<Vec<Filling>> {
    check_shape(lambda, n)?;
    let heights = lambda.conjugate();
    let order: Vec<Cell> =
        heights.iter().enumerate().flat_map(|(j, &h)| (1..=h).map(move |i| (i, j + 1))).collect();
    let mut columns: Vec<Vec<u32>> = heights.iter().map(|&h| vec![0; h]).collect();
    let mut out = Vec::new();
    fill_cells(&order, 0, n as u32, &mut columns, &mut |cols| {
        out.push(Filling { lambda: lambda.clone(), n, columns: cols.to_vec() });
    });
    Ok(out)
}

fn fill_cells(order: &[Cell], idx: usize, n: u32, columns: &mut [Vec<u32>], emit: &mut impl FnMut(&[Vec<u32>])) {
    let Some(&(i, j)) = order.get(idx) else {
        emit(columns);
        return;
    };
    for x in 1..=n {
        // Earlier cells: same column above, and the column to the right below.
        let clash = columns[j - 1][..i - 1].contains(&x)
            || (j >= 2 && columns[j - 2].get(i..).is_some_and(|below| below.contains(&x)));
        if clash {
            continue;
        }
        columns[j - 1][i - 1] = x;
        fill_cells(order, idx + 1, n, columns, emit);
    }
    columns[j - 1][i - 1] = 0;
}

/// Scalar part `t^{n(λ) − inv} q^{maj} Π_{Diff} (1 − t)/(1 − q^{arm} t^{leg+1})`.
pub fn compressed_weight(sigma: &Filling) -> Result<QTFraction> {
    let stats = sigma.stats();
    let t_exp = sigma.lambda.n_statistic() as i64 - stats.inv;
    let mut num = IntPoly2::monomial(BigInt::one(), stats.maj, t_exp as i32);
    num = &num * &IntPoly2::one_minus(0, 1).pow(stats.diff.len() as u32);
    let mut den = FactorDenominator::one();
    for &u in &stats.diff {
        den = den.with_factor(sigma.arm(u), sigma.leg(u) + 1, 1)?;
    }
    Ok(QTFraction::new(num, den))
}

/// One term of the compressed formula: `(content, weight)`.
pub fn compressed_term(sigma: &Filling) -> Result<(Vec<i64>, QTFraction)> {
    Ok((sigma.content(), compressed_weight(sigma)?))
}

pub fn macdonald_compressed(lambda: &Partition, n: usize) -> Result<WeightPolynomial> {
    let mut acc = WeightAccumulator::new(n, CoeffKind::QT);
    for sigma in enumerate_nonattacking(lambda, n)? {
        let (e, c) = compressed_term(&sigma)?;
        acc.add(e, &c)?;
    }
    acc.finish()
}

fn require_type_a(pair: &FoldingPair<'_>) -> Result<()> {
    if pair.chain().cartan() != CartanType::A {
        return Err(Error::KindMismatch("type A operation on a type C chain".into()));
    }
    Ok(())
}

/// Scalar Ram-Yip weight of one folding pair.
pub fn ramyip_weight(pair: &FoldingPair<'_>) -> Result<QTFraction> {
    require_type_a(pair)?;
    let chain = pair.chain();
    let (positive, negative) = pair.classify();
    let factors = |js: &[usize]| -> Result<Vec<(u32, u32)>> {
        js.iter().map(|&j| Ok((chain.level(j), chain.root(j).rho_pairing_type_a()?))).collect()
    };
    geometry_weight_ramyip(
        pair.w().length() as i64,
        pair.end().length() as i64,
        pair.folds().len() as i64,
        &factors(&positive)?,
        &factors(&negative)?,
    )
}

/// One Ram-Yip term: `(w(μ(J)), weight)`.
pub fn ramyip_term(pair: &FoldingPair<'_>) -> Result<(Vec<i64>, QTFraction)> {
    Ok((pair.weight(), ramyip_weight(pair)?))
}

pub fn macdonald_ramyip(lambda: &Partition, n: usize) -> Result<WeightPolynomial> {
    let chain = chain_type_a(lambda, n)?;
    let mut acc = WeightAccumulator::new(n, CoeffKind::QT);
    for pair in enumerate_folding_pairs(&chain) {
        let (e, c) = ramyip_term(&pair)?;
        acc.add(e, &c)?;
    }
    acc.finish()
}

/// Column `j` is the first `λ'_j` entries of `π_j = w T_{λ_1} ⋯ T_{j+1}`,
/// where `T_k` is the product of the folded reflections of factor `Γ_k`.
pub fn filling_map(pair: &FoldingPair<'_>) -> Result<Filling> {
    require_type_a(pair)?;
    let chain = pair.chain();
    let lambda = chain.lambda().clone();
    let heights = lambda.conjugate();
    let mut columns = vec![Vec::new(); heights.len()];
    let mut folds = pair.folds().iter().peekable();
    let mut pi = pair.w().clone();
    let truncate = |pi: &crate::weyl::GroupElement, j: usize| -> Vec<u32> {
        pi.window()[..heights[j - 1]].iter().map(|&x| x as u32).collect()
    };
    columns[heights.len() - 1] = truncate(&pi, heights.len());
    for factor in chain.factors() {
        let FactorTag::Column(j) = factor.tag else {
            return Err(Error::KindMismatch("unexpected factor in a type A chain".into()));
        };
        while let Some(&&pos) = folds.peek() {
            if pos > factor.range.end {
                break;
            }
            pi = pi.compose(chain.root(pos))?;
            folds.next();
        }
        columns[j - 2] = truncate(&pi, j - 1);
    }
    Filling::new(lambda, chain.rank(), columns)
}

/// Folding pairs grouped by their image under [`filling_map`].
pub fn fibers(chain: &LambdaChain) -> Result<BTreeMap<Filling, Vec<FoldingPair<'_>>>> {
    let mut out: BTreeMap<Filling, Vec<FoldingPair<'_>>> = BTreeMap::new();
    for pair in enumerate_folding_pairs(chain) {
        out.entry(filling_map(&pair)?).or_default().push(pair);
    }
    Ok(out)
}

/// How a filling's content compared with `w(μ(J))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContentMatch {
    Exact,
    /// Equal after removing a uniform shift along `(1, …, 1)`.
    Shifted,
    Mismatch,
}

pub fn compare_content(content: &[i64], weight: &[i64]) -> ContentMatch {
    if content == weight {
        return ContentMatch::Exact;
    }
    let d: Vec<i64> = content.iter().zip(weight).map(|(a, b)| a - b).collect();
    if content.len() == weight.len() && d.windows(2).all(|p| p[0] == p[1]) {
        ContentMatch::Shifted
    } else {
        ContentMatch::Mismatch
    }
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub filling: Filling,
    pub size: usize,
    pub fiber_sum: QTFraction,
    pub compressed: QTFraction,
    pub weights_agree: bool,
    /// Members whose content differs from `w(μ(J))` beyond a uniform shift.
    pub content_mismatches: usize,
    /// Members whose content agrees only after removing a uniform shift.
    pub content_shifted: usize,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.weights_agree && self.content_mismatches == 0
    }
}

impl fmt::Display for FiberReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAIL" };
        write!(f, "{}  size {}  {verdict}", self.filling, self.size)?;
        if !self.weights_agree {
            write!(f, "  fiber sum {} != compressed {}", self.fiber_sum, self.compressed)?;
        }
        if self.content_mismatches > 0 {
            write!(f, "  {} content mismatches", self.content_mismatches)?;
        }
        Ok(())
    }
}

/// Checks the fiber sum of Ram-Yip weights against the compressed weight of
/// `sigma`, and the content identity for every member.
pub fn verify_fiber(sigma: &Filling, fiber: &[FoldingPair<'_>]) -> Result<FiberReport> {
    let mut sum = FractionSum::new();
    let content = sigma.content();
    let (mut mismatches, mut shifted) = (0, 0);
    for pair in fiber {
        sum.add(&ramyip_weight(pair)?);
        match compare_content(&content, &pair.weight()) {
            ContentMatch::Exact => {}
            ContentMatch::Shifted => shifted += 1,
            ContentMatch::Mismatch => mismatches += 1,
        }
    }
    let fiber_sum = sum.total();
    let compressed = compressed_weight(sigma)?;
    Ok(FiberReport {
        filling: sigma.clone(),
        size: fiber.len(),
        weights_agree: fiber_sum.frac_equal(&compressed),
        fiber_sum,
        compressed,
        content_mismatches: mismatches,
        content_shifted: shifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::GroupElement;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn worked_filling() -> Filling {
        Filling::from_display_rows(lam("4,3,1"), 4, &[vec![2, 1, 3, 3], vec![3, 4, 2], vec![1]]).unwrap()
    }

    #[test]
    fn attacking_cells() {
        assert!(attacks((1, 2), (3, 2)));
        assert!(attacks((1, 2), (3, 1)));
        assert!(!attacks((3, 2), (1, 1)));
        assert!(attacks((3, 1), (1, 2)));
        assert!(!attacks((1, 3), (2, 1)));
    }

    #[test]
    fn small_enumerations() {
        let fs = enumerate_nonattacking(&lam("1"), 2).unwrap();
        assert_eq!(fs.iter().map(|f| f.to_string()).collect::<Vec<_>>(), ["1", "2"]);
        // Brute force over all 3^3 fillings of (2,1).
        let all = enumerate_nonattacking(&lam("2,1"), 3).unwrap();
        let mut brute = 0;
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    let f = Filling::new(lam("2,1"), 3, vec![vec![a, b], vec![c]]).unwrap();
                    if f.is_nonattacking() {
                        brute += 1;
                        assert!(all.contains(&f));
                    }
                }
            }
        }
        assert_eq!(all.len(), brute);
        assert!(all.iter().all(Filling::is_nonattacking));
        assert!(enumerate_nonattacking(&lam("4,3,1"), 4).unwrap().contains(&worked_filling()));
        assert!(matches!(enumerate_nonattacking(&lam("2,1"), 4), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn worked_example_statistics() {
        let f = worked_filling();
        let s = f.stats();
        assert_eq!(s.des, vec![(1, 2), (2, 2)]);
        assert_eq!(s.diff.len(), 4);
        assert_eq!(s.maj, 3);
        assert_eq!(s.inversions, 5);
        assert_eq!(s.inv, 4);
        assert_eq!(s.content, vec![2, 2, 3, 1]);
        let single = Filling::new(lam("1"), 2, vec![vec![1]]).unwrap().stats();
        assert!(single.des.is_empty());
        assert_eq!((single.maj, single.inv, single.content), (0, 0, vec![1, 0]));
    }

    #[test]
    fn worked_example_compressed_term() {
        let (e, w) = compressed_term(&worked_filling()).unwrap();
        assert_eq!(e, vec![2, 2, 3, 1]);
        let num = &IntPoly2::monomial(BigInt::one(), 3, 1) * &IntPoly2::one_minus(0, 1).pow(4);
        let den = FactorDenominator::factor(2, 2).unwrap().with_factor(2, 2, 1).unwrap().with_factor(1, 2, 1).unwrap().with_factor(1, 1, 1).unwrap();
        assert_eq!(w, QTFraction::new(num, den));
        let one = Filling::new(lam("1"), 2, vec![vec![1]]).unwrap();
        assert_eq!(compressed_term(&one).unwrap(), (vec![1, 0], QTFraction::one()));
    }

    #[test]
    fn rank_one_polynomials() {
        for p in [macdonald_compressed(&lam("1"), 2).unwrap(), macdonald_ramyip(&lam("1"), 2).unwrap()] {
            assert_eq!(p.to_string(), "x1 + x2");
        }
    }

    #[test]
    fn worked_example_filling_map() {
        let chain = chain_type_a(&lam("4,3,1"), 4).unwrap();
        let w = GroupElement::new(CartanType::A, vec![2, 3, 4, 1]).unwrap();
        let pair = FoldingPair::new(&chain, w, vec![1, 4, 6, 7]).unwrap();
        assert_eq!(filling_map(&pair).unwrap(), worked_filling());
        let (e, weight) = ramyip_term(&pair).unwrap();
        assert_eq!(e, vec![2, 2, 3, 1]);
        assert_eq!(weight.denominator().flat(), vec![(1, 1), (1, 3), (2, 2), (2, 2)]);
        let small = chain_type_a(&lam("2,1"), 3).unwrap();
        let id = FoldingPair::new(&small, GroupElement::identity(CartanType::A, 3), vec![]).unwrap();
        assert_eq!(filling_map(&id).unwrap().to_string(), "1 1 / 2");
        let w = GroupElement::new(CartanType::A, vec![3, 1, 2]).unwrap();
        let plain = FoldingPair::new(&small, w, vec![]).unwrap();
        assert_eq!(filling_map(&plain).unwrap().to_string(), "3 3 / 1");
    }

    #[test]
    fn small_fibers_compress() {
        let chain = chain_type_a(&lam("2,1"), 3).unwrap();
        let fibers = fibers(&chain).unwrap();
        let fillings = enumerate_nonattacking(&lam("2,1"), 3).unwrap();
        assert!(fibers.keys().eq(fillings.iter()));
        assert_eq!(fibers.values().map(Vec::len).sum::<usize>(), 12);
        for (sigma, fiber) in &fibers {
            let report = verify_fiber(sigma, fiber).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(report.content_shifted, 0);
        }
        let rank_one = chain_type_a(&lam("1"), 2).unwrap();
        let fibers = super::fibers(&rank_one).unwrap();
        assert_eq!(fibers.values().map(Vec::len).collect::<Vec<_>>(), [1, 1]);
    }

    #[test]
    fn content_comparison() {
        assert_eq!(compare_content(&[1, 2], &[1, 2]), ContentMatch::Exact);
        assert_eq!(compare_content(&[2, 3], &[1, 2]), ContentMatch::Shifted);
        assert_eq!(compare_content(&[2, 2], &[1, 2]), ContentMatch::Mismatch);
    }
}
