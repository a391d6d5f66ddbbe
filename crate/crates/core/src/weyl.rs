//! Finite Weyl groups of type `A_{n-1}` (permutations) and `C_n` (signed
//! permutations) in window notation.
//!
//! Positions and values are 1-based. A barred letter `ī` is stored as `-i`.
//! Reflections act on the right, i.e. on positions of the window.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    C,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A => write!(f, "A"),
            CartanType::C => write!(f, "C"),
        }
    }
}

/// A positive root together with the reflection it defines.
///
/// `Plain(i, k)` is `ε_i - ε_k`, `BarredPair(i, k)` is `ε_i + ε_k` and
/// `Long(i)` is `2ε_i`; always `i < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLabel {
    Plain(usize, usize),
    BarredPair(usize, usize),
    Long(usize),
}

impl RootLabel {
    /// Largest position the label touches.
    pub fn max_position(&self) -> usize {
        match *self {
            RootLabel::Plain(_, k) | RootLabel::BarredPair(_, k) => k,
            RootLabel::Long(i) => i,
        }
    }

    fn is_valid(&self, n: usize) -> bool {
        match *self {
            RootLabel::Plain(i, k) | RootLabel::BarredPair(i, k) => 1 <= i && i < k && k <= n,
            RootLabel::Long(i) => 1 <= i && i <= n,
        }
    }

    /// Coordinates of the root in the `ε` basis.
    pub fn vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match *self {
            RootLabel::Plain(i, k) => {
                v[i - 1] = 1;
                v[k - 1] = -1;
            }
            RootLabel::BarredPair(i, k) => {
                v[i - 1] = 1;
                v[k - 1] = 1;
            }
            RootLabel::Long(i) => v[i - 1] = 2,
        }
        v
    }

    /// `⟨μ, β^∨⟩` for this root `β`.
    pub fn coroot_pairing(&self, mu: &[i64]) -> i64 {
        match *self {
            RootLabel::Plain(i, k) => mu[i - 1] - mu[k - 1],
            RootLabel::BarredPair(i, k) => mu[i - 1] + mu[k - 1],
            RootLabel::Long(i) => mu[i - 1],
        }
    }

    /// `⟨ρ, β^∨⟩` for type A, where `ρ = (n-1, …, 1, 0)`.
    pub fn rho_pairing_type_a(&self) -> Result<u32> {
        match *self {
            RootLabel::Plain(i, k) => Ok((k - i) as u32),
            other => Err(Error::KindMismatch(format!("{other} has no type A ρ-pairing"))),
        }
    }

    /// The affine reflection `s_{β,level}` applied to `mu`.
    pub fn affine_reflect(&self, mu: &[i64], level: i64) -> Vec<i64> {
        let c = self.coroot_pairing(mu) - level;
        let beta = self.vector(mu.len());
        mu.iter().zip(beta).map(|(m, b)| m - c * b).collect()
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RootLabel::Plain(i, k) => write!(f, "({i},{k})"),
            RootLabel::BarredPair(i, k) => write!(f, "({i},-{k})"),
            RootLabel::Long(i) => write!(f, "({i},-{i})"),
        }
    }
}

/// All positive roots of the given type and rank, in a fixed order.
pub fn positive_roots(cartan: CartanType, n: usize) -> Vec<RootLabel> {
    let mut roots = Vec::new();
    for i in 1..=n {
        for k in i + 1..=n {
            roots.push(RootLabel::Plain(i, k));
            if cartan == CartanType::C {
                roots.push(RootLabel::BarredPair(i, k));
            }
        }
        if cartan == CartanType::C {
            roots.push(RootLabel::Long(i));
        }
    }
    roots
}

/// Order on the signed alphabet `1 < 2 < … < n < n̄ < … < 1̄`.
pub fn alphabet_cmp(a: i32, b: i32) -> Ordering {
    alphabet_key(a).cmp(&alphabet_key(b))
}

fn alphabet_key(x: i32) -> (bool, i32) {
    (x < 0, x)
}

/// The letters of `[n̄]` in alphabet order.
pub fn alphabet(n: usize) -> Vec<i32> {
    let n = n as i32;
    (1..=n).chain(-n..=-1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    cartan: CartanType,
    window: Vec<i32>,
}

impl GroupElement {
    pub fn new(cartan: CartanType, window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &x in &window {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] || (cartan == CartanType::A && x < 0) {
                return Err(Error::InvalidWindow(window));
            }
            seen[a] = true;
        }
        Ok(Self { cartan, window })
    }

    pub fn identity(cartan: CartanType, n: usize) -> Self {
        Self { cartan, window: (1..=n as i32).collect() }
    }

    /// `-id`, the longest element of `B_n`.
    pub fn negated_identity(n: usize) -> Self {
        Self { cartan: CartanType::C, window: (1..=n as i32).map(|x| -x).collect() }
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    /// Right multiplication by the reflection of `label`.
    pub fn compose(&self, label: RootLabel) -> Result<Self> {
        if self.cartan == CartanType::A && !matches!(label, RootLabel::Plain(..)) {
            return Err(Error::KindMismatch(format!("{label} is not a reflection of a type A group")));
        }
        if !label.is_valid(self.rank()) {
            return Err(Error::DimensionMismatch(label.max_position(), self.rank()));
        }
        let mut window = self.window.clone();
        match label {
            RootLabel::Plain(i, k) => window.swap(i - 1, k - 1),
            RootLabel::BarredPair(i, k) => {
                let (a, b) = (window[i - 1], window[k - 1]);
                window[i - 1] = -b;
                window[k - 1] = -a;
            }
            RootLabel::Long(i) => window[i - 1] = -window[i - 1],
        }
        Ok(Self { cartan: self.cartan, window })
    }

    /// `w(μ)`: the coordinate of `μ` at position `i` moves to position
    /// `|w(i)|`, negated when `w(i)` is barred.
    pub fn act_on_weight(&self, mu: &[i64]) -> Result<Vec<i64>> {
        if mu.len() != self.rank() {
            return Err(Error::DimensionMismatch(mu.len(), self.rank()));
        }
        let mut out = vec![0; mu.len()];
        for (&x, &m) in self.window.iter().zip(mu) {
            let target = x.unsigned_abs() as usize - 1;
            out[target] = if x < 0 { -m } else { m };
        }
        Ok(out)
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let n = self.rank();
        positive_roots(self.cartan, n)
            .into_iter()
            .filter(|root| {
                let image = self
                    .act_on_weight(&root.vector(n))
                    .expect("root vector has the group rank");
                image.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
            })
            .count()
    }

    pub fn is_length_decreasing(&self, label: RootLabel) -> Result<bool> {
        Ok(self.compose(label)?.length() < self.length())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, x) in self.window.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Every element of `S_n` (type A) or `B_n` (type C), lexicographic on windows.
pub fn enumerate_group(cartan: CartanType, n: usize) -> impl Iterator<Item = GroupElement> {
    let letters: Vec<i32> = match cartan {
        CartanType::A => (1..=n as i32).collect(),
        CartanType::C => (-(n as i32)..=-1).chain(1..=n as i32).collect(),
    };
    let mut out = Vec::new();
    let mut window = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fill_windows(&letters, n, &mut window, &mut used, &mut |w: &[i32]| {
        out.push(GroupElement { cartan, window: w.to_vec() })
    });
    out.into_iter()
}

fn fill_windows(
    letters: &[i32],
    n: usize,
    window: &mut Vec<i32>,
    used: &mut [bool],
    emit: &mut impl FnMut(&[i32]),
) {
    if window.len() == n {
        emit(window);
        return;
    }
    for &x in letters {
        let a = x.unsigned_abs() as usize;
        if used[a] {
            continue;
        }
        used[a] = true;
        window.push(x);
        fill_windows(letters, n, window, used, emit);
        window.pop();
        used[a] = false;
    }
}
