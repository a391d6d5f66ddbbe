//! Type C: fillings of the doubled shape, the column calculus behind the
//! statistics `N` and `des`, the compressed Hall-Littlewood formula, the sum
//! over positive folding pairs, and the filling map between them.
//!
//! Signed letters are nonzero integers; `-i` is the barred letter `ī`.
//! Column positions are 1-based.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::chain::{chain_type_c, enumerate_positive_folding_pairs, FactorTag, FoldingPair, LambdaChain};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qt::{geometry_weight_schwer, CoeffKind, IntPoly2, QTFraction, WeightAccumulator, WeightPolynomial};
use crate::weyl::{alphabet, alphabet_cmp, CartanType, RootLabel};

fn check_shape(lambda: &Partition, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::ShapeMismatch { expected: 2, found: lambda.len() });
    }
    lambda.require_parts(n)
}

/// Label of a column of the doubled shape: `C_{ij}` or `C'_{ik}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnLabel {
    Unprimed { i: usize, j: usize },
    Primed { i: usize, k: usize },
}

impl ColumnLabel {
    pub fn group(&self) -> usize {
        match *self {
            ColumnLabel::Unprimed { i, .. } | ColumnLabel::Primed { i, .. } => i,
        }
    }

    /// The position `j` (or `k`) at which this column folds into its right neighbour.
    pub fn index(&self) -> usize {
        match *self {
            ColumnLabel::Unprimed { j, .. } => j,
            ColumnLabel::Primed { k, .. } => k,
        }
    }

    pub fn context(&self) -> Context {
        match self {
            ColumnLabel::Unprimed { .. } => Context::Unprimed,
            ColumnLabel::Primed { .. } => Context::Primed,
        }
    }

    fn from_factor(tag: FactorTag) -> Option<Self> {
        match tag {
            FactorTag::Unprimed { i, j } => Some(ColumnLabel::Unprimed { i, j }),
            FactorTag::Primed { i, k } => Some(ColumnLabel::Primed { i, k }),
            FactorTag::Column(_) => None,
        }
    }
}

impl fmt::Display for ColumnLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ColumnLabel::Unprimed { i, j } => write!(f, "C{i}{j}"),
            ColumnLabel::Primed { i, k } => write!(f, "C'{i}{k}"),
        }
    }
}

/// The doubled shape: columns listed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubledShape {
    lambda: Partition,
    n: usize,
    labels: Vec<ColumnLabel>,
    heights: Vec<usize>,
}

impl DoubledShape {
    pub fn new(lambda: &Partition, n: usize) -> Result<Self> {
        check_shape(lambda, n)?;
        let conj = lambda.conjugate();
        let mut labels = Vec::new();
        let mut heights = Vec::new();
        for i in (1..=lambda.largest() as usize).rev() {
            let h = conj[i - 1];
            let last_unprimed = if i > 1 { h } else { 1 };
            let group = (2..=h).map(|k| ColumnLabel::Primed { i, k }).chain((1..=last_unprimed).map(|j| ColumnLabel::Unprimed { i, j }));
            for label in group {
                labels.push(label);
                heights.push(h);
            }
        }
        Ok(Self { lambda: lambda.clone(), n, labels, heights })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[ColumnLabel] {
        &self.labels
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Index of the column carrying `label`, with the wrap-around conventions:
    /// `C'_{i,λ'_i+1} = C_{i1}`, and `C_{i,λ'_i+1}` is `C'_{i-1,2}` or `C_{i-1,1}`.
    pub fn resolve(&self, label: ColumnLabel) -> Option<usize> {
        let h = |i: usize| self.lambda.conjugate().get(i.wrapping_sub(1)).copied();
        let canonical = match label {
            ColumnLabel::Primed { i, k } if Some(k) == h(i).map(|x| x + 1) => ColumnLabel::Unprimed { i, j: 1 },
            ColumnLabel::Unprimed { i, j } if i > 1 && Some(j) == h(i).map(|x| x + 1) => match h(i - 1) {
                Some(1) => ColumnLabel::Unprimed { i: i - 1, j: 1 },
                _ => ColumnLabel::Primed { i: i - 1, k: 2 },
            },
            other => other,
        };
        self.labels.iter().position(|&l| l == canonical)
    }
}

impl fmt::Display for DoubledShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, label) in self.labels.iter().enumerate() {
            if idx > 0 {
                let sep = if self.labels[idx - 1].group() != label.group() { " || " } else { " " };
                write!(f, "{sep}")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

/// A column over the signed alphabet with no two entries `a = ±b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column(Vec<i32>);

impl Column {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::InvalidWindow(entries));
        }
        for (a, x) in entries.iter().enumerate() {
            if entries[a + 1..].iter().any(|y| y.abs() == x.abs()) {
                return Err(Error::InvalidWindow(entries));
            }
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    /// Entry at 1-based position `r`.
    pub fn at(&self, r: usize) -> i32 {
        self.0[r - 1]
    }

    pub fn prefix(&self, d: usize) -> Column {
        Column(self.0[..d.min(self.0.len())].to_vec())
    }

    /// Pairs `r < s` with `C(r) > C(s)` in the alphabet order.
    pub fn inversions(&self) -> u32 {
        let v = &self.0;
        (0..v.len()).map(|a| v[a + 1..].iter().filter(|&&y| alphabet_cmp(v[a], y) == Ordering::Greater).count() as u32).sum()
    }

    /// Componentwise `self ≥ other` in the alphabet order, over `other`'s height.
    pub fn dominates(&self, other: &Column) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| alphabet_cmp(a, b) != Ordering::Less)
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Right action of a reflection on positions: swap for `(i,k)`, swap and
/// negate for `(i,k̄)`, negate for `(i,ī)`.
pub fn column_reflect(c: &Column, label: RootLabel) -> Result<Column> {
    let height = c.height();
    let pos = label.max_position();
    if pos > height {
        return Err(Error::PositionOutOfRange { position: pos, height });
    }
    let mut v = c.0.clone();
    match label {
        RootLabel::Plain(i, k) => v.swap(i - 1, k - 1),
        RootLabel::BarredPair(i, k) => {
            let (a, b) = (v[i - 1], v[k - 1]);
            v[i - 1] = -b;
            v[k - 1] = -a;
        }
        RootLabel::Long(i) => v[i - 1] = -v[i - 1],
    }
    Ok(Column(v))
}

/// `N_{ab}(seq)`: entries strictly between `a` and `b` in the alphabet order.
fn count_between(a: i32, b: i32, seq: &[i32]) -> u32 {
    seq.iter().filter(|&&x| alphabet_cmp(a, x) == Ordering::Less && alphabet_cmp(x, b) == Ordering::Less).count() as u32
}

/// `N(D, D(r, j̄))` for a single fold.
fn single_fold_n(d: &Column, r: usize, j: usize, n: usize) -> u32 {
    let (a, b) = (d.at(r), d.at(j));
    let inside = count_between(-b, a, &d.0[r..j - 1]);
    let used: Vec<i32> = d.0[..j].iter().flat_map(|&x| [x, -x]).collect();
    let free = alphabet(n)
        .into_iter()
        .filter(|&x| alphabet_cmp(-b, x) == Ordering::Less && alphabet_cmp(x, a) == Ordering::Less && !used.contains(&x))
        .count() as u32;
    let both_barred = u32::from(a < 0 && b < 0);
    inside + free + both_barred
}

/// Whether the left column of an adjacent pair is primed or unprimed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Context {
    Primed,
    Unprimed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdjacencyCase {
    /// `C = D`.
    Zero,
    /// One fold `(r, j̄)`.
    One,
    /// Several folds `(r_1, j̄) ⋯ (r_p, j̄)`.
    Two,
    /// Folds followed by a change of the entry in position `j`.
    Three,
}

/// How the right column `C` arises from the left column `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseDescriptor {
    pub case: AdjacencyCase,
    pub j: usize,
    /// Fold positions `r_1 < … < r_p < j`.
    pub folds: Vec<usize>,
    /// `D' = D(r_1, j̄) ⋯ (r_p, j̄)`.
    pub reflected: Column,
    /// `(C(j), D'(j))` in Case 3.
    pub changed: Option<(i32, i32)>,
}

/// Decomposes the adjacent pair `D | C` (with `C` cut to `D`'s height).
pub fn match_adjacent(d: &Column, c: &Column, context: Context, j: usize) -> Result<CaseDescriptor> {
    let height = d.height();
    if c.height() < height {
        return Err(Error::AdjacencyViolation(format!("{c} is shorter than {d}")));
    }
    if j == 0 || j > height {
        return Err(Error::PositionOutOfRange { position: j, height });
    }
    let c = c.prefix(height);
    let folds: Vec<usize> = (1..j).filter(|&r| d.at(r) != c.at(r)).collect();
    let mut reflected = d.clone();
    for &r in &folds {
        reflected = column_reflect(&reflected, RootLabel::BarredPair(r, j))?;
    }
    let violation = |why: &str| Err(Error::AdjacencyViolation(format!("{d} -> {c} at j={j}: {why}")));
    if (1..=height).any(|r| r != j && reflected.at(r) != c.at(r)) {
        return violation("columns differ outside the fold positions");
    }
    let (cj, dj) = (c.at(j), reflected.at(j));
    let changed = match context {
        Context::Primed if cj != dj => return violation("primed columns differ in the fold position"),
        Context::Primed => None,
        Context::Unprimed => {
            if alphabet_cmp(cj, dj) == Ordering::Greater {
                return violation("changed entry increased");
            }
            if (1..=height).any(|r| r != j && reflected.at(r).abs() == cj.abs()) {
                return violation("changed entry collides with another entry up to sign");
            }
            (cj != dj).then_some((cj, dj))
        }
    };
    let case = match (changed.is_some(), folds.len()) {
        (true, _) => AdjacencyCase::Three,
        (false, 0) => AdjacencyCase::Zero,
        (false, 1) => AdjacencyCase::One,
        (false, _) => AdjacencyCase::Two,
    };
    Ok(CaseDescriptor { case, j, folds, reflected, changed })
}

/// `(N(D, C), des(D, C))` for a decomposed pair over the alphabet `[n̄]`.
///
/// In Case 3 the changed position contributes one extra descent.
pub fn stat_pair(d: &Column, desc: &CaseDescriptor, n: usize) -> (u32, u32) {
    let j = desc.j;
    let mut current = d.clone();
    let mut total = 0;
    for &r in &desc.folds {
        total += single_fold_n(&current, r, j, n);
        current = column_reflect(&current, RootLabel::BarredPair(r, j)).expect("validated fold");
    }
    let mut des = desc.folds.len() as u32;
    if let Some((cj, dj)) = desc.changed {
        total += count_between(cj, dj, &d.0[j..]);
        des += 1;
    }
    (total, des)
}

/// A filling of the doubled shape, columns left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CFilling {
    shape: DoubledShape,
    columns: Vec<Column>,
}

impl CFilling {
    pub fn new(shape: DoubledShape, columns: Vec<Column>) -> Result<Self> {
        if columns.len() != shape.len() {
            return Err(Error::ShapeMismatch { expected: shape.len(), found: columns.len() });
        }
        for (c, &h) in columns.iter().zip(shape.heights()) {
            if c.height() != h {
                return Err(Error::ShapeMismatch { expected: h, found: c.height() });
            }
            if let Some(&x) = c.entries().iter().find(|x| x.unsigned_abs() as usize > shape.rank()) {
                return Err(Error::Invariant(format!("entry {x} outside [-{0}, {0}]", shape.rank())));
            }
        }
        Ok(Self { shape, columns })
    }

    pub fn from_entries(shape: DoubledShape, columns: Vec<Vec<i32>>) -> Result<Self> {
        let columns = columns.into_iter().map(Column::new).collect::<Result<_>>()?;
        Self::new(shape, columns)
    }

    pub fn shape(&self) -> &DoubledShape {
        &self.shape
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, label: ColumnLabel) -> Option<&Column> {
        self.shape.resolve(label).map(|idx| &self.columns[idx])
    }

    /// Rows top to bottom, left to right; barred letters are negative.
    pub fn display_rows(&self) -> Vec<Vec<i32>> {
        let top = self.shape.heights().iter().copied().max().unwrap_or(0);
        (1..=top).map(|r| self.columns.iter().filter(|c| c.height() >= r).map(|c| c.at(r)).collect()).collect()
    }

    fn adjacent_cases(&self) -> Result<Vec<CaseDescriptor>> {
        let labels = self.shape.labels();
        (0..self.columns.len().saturating_sub(1))
            .map(|idx| {
                let label = labels[idx];
                match_adjacent(&self.columns[idx], &self.columns[idx + 1], label.context(), label.index())
            })
            .collect()
    }

    /// Row monotonicity and the adjacency relation between neighbours.
    pub fn check_membership(&self) -> Result<()> {
        for (idx, pair) in self.columns.windows(2).enumerate() {
            if !pair[0].dominates(&pair[1]) {
                return Err(Error::AdjacencyViolation(format!("rows increase between columns {} and {}", idx + 1, idx + 2)));
            }
        }
        self.adjacent_cases().map(|_| ())
    }

    /// `(N, des)` of every adjacent pair, left to right.
    pub fn pair_stats(&self) -> Result<Vec<(u32, u32)>> {
        let n = self.shape.rank();
        Ok(self.adjacent_cases()?.iter().zip(&self.columns).map(|(desc, d)| stat_pair(d, desc, n)).collect())
    }

    /// `(N(σ), des(σ))`: pair sums plus the inversions of the rightmost column.
    pub fn stat_filling(&self) -> Result<(u32, u32)> {
        let pairs = self.pair_stats()?;
        let rightmost = self.columns.last().map_or(0, Column::inversions);
        Ok((pairs.iter().map(|p| p.0).sum::<u32>() + rightmost, pairs.iter().map(|p| p.1).sum()))
    }

    /// `σ̄`: the columns `C'_{i2} C_{i1}` for `i = λ_1, …, 1`.
    pub fn compress(&self) -> Vec<Column> {
        (1..=self.shape.lambda().largest() as usize)
            .rev()
            .flat_map(|i| [ColumnLabel::Primed { i, k: 2 }, ColumnLabel::Unprimed { i, j: 1 }])
            .map(|label| self.column(label).expect("compressed columns exist").clone())
            .collect()
    }

    /// `m_i = (#i − #ī)/2` over `σ̄`.
    pub fn content(&self) -> Result<Vec<i64>> {
        let mut twice = vec![0i64; self.shape.rank()];
        for c in self.compress() {
            for &x in c.entries() {
                twice[x.unsigned_abs() as usize - 1] += x.signum() as i64;
            }
        }
        if twice.iter().any(|m| m % 2 != 0) {
            return Err(Error::Invariant(format!("odd doubled content {twice:?}")));
        }
        Ok(twice.into_iter().map(|m| m / 2).collect())
    }
}

/// Columns separated by spaces within a row, rows by `" / "`.
impl fmt::Display for CFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .display_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// `t^{N(σ)} (1 − t)^{des(σ)}`.
pub fn compressed_weight_c(sigma: &CFilling) -> Result<IntPoly2> {
    let (n_stat, des) = sigma.stat_filling()?;
    Ok(&IntPoly2::t_pow(n_stat as i32) * &IntPoly2::one_minus(0, 1).pow(des))
}

pub fn hl_compressed(lambda: &Partition, n: usize) -> Result<WeightPolynomial> {
    let mut acc = WeightAccumulator::new(n, CoeffKind::TOnly);
    for sigma in enumerate_cfillings(lambda, n)? {
        acc.add(sigma.content()?, &QTFraction::from_poly(compressed_weight_c(&sigma)?))?;
    }
    acc.finish()
}

fn require_positive_c(pair: &FoldingPair<'_>) -> Result<()> {
    if pair.chain().cartan() != CartanType::C {
        return Err(Error::KindMismatch("type C operation on a type A chain".into()));
    }
    if !pair.is_positive() {
        return Err(Error::Invariant(format!("folding pair ({}, {:?}) has a negative fold", pair.w(), pair.folds())));
    }
    Ok(())
}

/// `t^{(ℓ(w) + ℓ(wφ(J)) − |J|)/2} (1 − t)^{|J|}` for a positive pair.
pub fn schwer_weight(pair: &FoldingPair<'_>) -> Result<IntPoly2> {
    require_positive_c(pair)?;
    geometry_weight_schwer(pair.w().length() as i64, pair.end().length() as i64, pair.folds().len() as i64)
}

/// One Schwer term: `(w(μ(J)), weight)`.
pub fn schwer_term(pair: &FoldingPair<'_>) -> Result<(Vec<i64>, IntPoly2)> {
    Ok((pair.weight(), schwer_weight(pair)?))
}

pub fn hl_schwer(lambda: &Partition, n: usize) -> Result<WeightPolynomial> {
    let chain = chain_type_c(lambda, n)?;
    let mut acc = WeightAccumulator::new(n, CoeffKind::TOnly);
    for pair in enumerate_positive_folding_pairs(&chain) {
        let (e, c) = schwer_term(&pair)?;
        acc.add(e, &QTFraction::from_poly(c))?;
    }
    acc.finish()
}

/// Each column is the prefix of `w` composed with the folded reflections of
/// all factors before the matching factor; the trailing factors `Γ_{1k}`,
/// `k ≥ 2`, have no column.
pub fn filling_map_c(pair: &FoldingPair<'_>) -> Result<CFilling> {
    require_positive_c(pair)?;
    let chain = pair.chain();
    let shape = DoubledShape::new(chain.lambda(), chain.rank())?;
    let mut columns = Vec::with_capacity(shape.len());
    let mut folds = pair.folds().iter().peekable();
    let mut pi = pair.w().clone();
    for (factor, (&label, &h)) in chain.factors().iter().zip(shape.labels().iter().zip(shape.heights())) {
        if ColumnLabel::from_factor(factor.tag) != Some(label) {
            return Err(Error::Invariant(format!("factor {} does not match column {label}", factor.tag)));
        }
        columns.push(Column::new(pi.window()[..h].to_vec())?);
        while let Some(&&pos) = folds.peek() {
            if pos > factor.range.end {
                break;
            }
            pi = pi.compose(chain.root(pos))?;
            folds.next();
        }
    }
    CFilling::new(shape, columns)
}

/// Fillings of the doubled shape generated column by column from conditions
/// (row monotonicity, signed distinctness, adjacency), independently of the
/// filling map. Columns are tried in lexicographic order of their entries.
pub fn enumerate_cfillings(lambda: &Partition, n: usize) -> Result<Vec<CFilling>> {
    let shape = DoubledShape::new(lambda, n)?;
    let mut candidates: BTreeMap<usize, Vec<Column>> = BTreeMap::new();
    for &h in shape.heights() {
        candidates.entry(h).or_insert_with(|| signed_arrangements(n, h));
    }
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(shape.len());
    extend_columns(&shape, &candidates, &mut stack, &mut out);
    Ok(out)
}

fn signed_arrangements(n: usize, h: usize) -> Vec<Column> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(h);
    fn go(n: usize, h: usize, current: &mut Vec<i32>, out: &mut Vec<Column>) {
        if current.len() == h {
            out.push(Column(current.clone()));
            return;
        }
        for x in (-(n as i32)..=n as i32).filter(|&x| x != 0) {
            if current.iter().all(|y| y.abs() != x.abs()) {
                current.push(x);
                go(n, h, current, out);
                current.pop();
            }
        }
    }
    go(n, h, &mut current, &mut out);
    out
}

fn extend_columns(
    shape: &DoubledShape,
    candidates: &BTreeMap<usize, Vec<Column>>,
    stack: &mut Vec<Column>,
    out: &mut Vec<CFilling>,
) {
    let idx = stack.len();
    if idx == shape.len() {
        out.push(CFilling { shape: shape.clone(), columns: stack.clone() });
        return;
    }
    for c in &candidates[&shape.heights()[idx]] {
        if let Some(d) = stack.last() {
            let label = shape.labels()[idx - 1];
            if !d.dominates(c) || match_adjacent(d, c, label.context(), label.index()).is_err() {
                continue;
            }
        }
        stack.push(c.clone());
        extend_columns(shape, candidates, stack, out);
        stack.pop();
    }
}

/// Positive folding pairs grouped by their image under [`filling_map_c`].
pub fn fibers_c(chain: &LambdaChain) -> Result<BTreeMap<CFilling, Vec<FoldingPair<'_>>>> {
    let mut out: BTreeMap<CFilling, Vec<FoldingPair<'_>>> = BTreeMap::new();
    for pair in enumerate_positive_folding_pairs(chain) {
        out.entry(filling_map_c(&pair)?).or_default().push(pair);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FiberReportC {
    pub filling: CFilling,
    pub size: usize,
    pub fiber_sum: IntPoly2,
    pub n_stat: u32,
    pub des: u32,
    pub compressed: IntPoly2,
    pub content_mismatches: usize,
}

impl FiberReportC {
    pub fn passed(&self) -> bool {
        self.fiber_sum == self.compressed && self.content_mismatches == 0
    }
}

impl fmt::Display for FiberReportC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAIL" };
        write!(f, "{}  size {}  N={} des={}  {verdict}", self.filling, self.size, self.n_stat, self.des)?;
        if self.fiber_sum != self.compressed {
            write!(f, "  fiber sum {} != {}", self.fiber_sum, self.compressed)?;
        }
        if self.content_mismatches > 0 {
            write!(f, "  {} content mismatches", self.content_mismatches)?;
        }
        Ok(())
    }
}

/// Checks the fiber sum of Schwer weights against `t^N (1 − t)^des`, and the
/// content identity for every member.
pub fn verify_fiber_c(sigma: &CFilling, fiber: &[FoldingPair<'_>]) -> Result<FiberReportC> {
    let content = sigma.content()?;
    let mut fiber_sum = IntPoly2::zero();
    let mut mismatches = 0;
    for pair in fiber {
        fiber_sum = &fiber_sum + &schwer_weight(pair)?;
        if pair.weight() != content {
            mismatches += 1;
        }
    }
    let (n_stat, des) = sigma.stat_filling()?;
    Ok(FiberReportC {
        filling: sigma.clone(),
        size: fiber.len(),
        fiber_sum,
        n_stat,
        des,
        compressed: compressed_weight_c(sigma)?,
        content_mismatches: mismatches,
    })
}
