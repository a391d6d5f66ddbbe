use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition with strictly decreasing positive parts (a regular dominant
/// weight).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let regular = !parts.is_empty()
            && parts.iter().all(|&p| p > 0)
            && parts.windows(2).all(|w| w[0] > w[1]);
        if !regular {
            return Err(Error::NotRegular(parts.into_iter().map(i64::from).collect()));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i`, 1-based.
    pub fn part(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn largest(&self) -> u32 {
        self.0[0]
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Column heights `λ'_1 ≥ λ'_2 ≥ …`.
    pub fn conjugate(&self) -> Vec<usize> {
        (1..=self.largest()).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_statistic(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// The parts as a weight of length `n`, padded with zeros.
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut v: Vec<i64> = self.0.iter().map(|&p| p as i64).collect();
        v.resize(n.max(v.len()), 0);
        v
    }

    pub fn require_parts(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::ShapeMismatch { expected, found: self.len() });
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Parses `4,3,1`. Zero or negative parts are reported as irregular.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<_>>()?;
        if raw.iter().any(|&p| p <= 0 || p > u32::MAX as i64) {
            return Err(Error::NotRegular(raw));
        }
        Partition::new(raw.into_iter().map(|p| p as u32).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
