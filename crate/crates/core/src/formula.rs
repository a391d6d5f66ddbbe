//! Dispatch over the available formulas for each Cartan type.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qt::{QTFraction, WeightPolynomial};
use crate::type_a::{macdonald_compressed, macdonald_ramyip};
use crate::type_c::{hl_compressed, hl_schwer};
use crate::weyl::CartanType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    /// Sum over all folding pairs (type A).
    RamYip,
    /// Sum over fillings.
    Compressed,
    /// Sum over positive folding pairs (type C).
    Schwer,
}

impl Formula {
    /// The folding-pair formula that the compressed one is checked against.
    pub fn reference(cartan: CartanType) -> Self {
        match cartan {
            CartanType::A => Formula::RamYip,
            CartanType::C => Formula::Schwer,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::RamYip => "ramyip",
            Formula::Compressed => "compressed",
            Formula::Schwer => "schwer",
        })
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ramyip" => Ok(Formula::RamYip),
            "compressed" => Ok(Formula::Compressed),
            "schwer" => Ok(Formula::Schwer),
            other => Err(Error::Parse(format!("unknown formula {other:?}"))),
        }
    }
}

/// `P_λ` of the given type by the given formula.
pub fn compute(cartan: CartanType, lambda: &Partition, n: usize, formula: Formula) -> Result<WeightPolynomial> {
    match (cartan, formula) {
        (CartanType::A, Formula::RamYip) => macdonald_ramyip(lambda, n),
        (CartanType::A, Formula::Compressed) => macdonald_compressed(lambda, n),
        (CartanType::C, Formula::Schwer) => hl_schwer(lambda, n),
        (CartanType::C, Formula::Compressed) => hl_compressed(lambda, n),
        (cartan, formula) => Err(Error::KindMismatch(format!("formula {formula} is not available in type {cartan}"))),
    }
}

/// The first monomial on which the compressed and reference formulas differ.
pub fn first_discrepancy(
    cartan: CartanType,
    lambda: &Partition,
    n: usize,
) -> Result<Option<(Vec<i64>, QTFraction, QTFraction)>> {
    let reference = compute(cartan, lambda, n, Formula::reference(cartan))?;
    let compressed = compute(cartan, lambda, n, Formula::Compressed)?;
    Ok(reference.first_difference(&compressed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch() {
        let lam: Partition = "2,1".parse().unwrap();
        assert!(matches!(compute(CartanType::A, &lam, 3, Formula::Schwer), Err(Error::KindMismatch(_))));
        assert!(matches!(compute(CartanType::C, &lam, 2, Formula::RamYip), Err(Error::KindMismatch(_))));
        assert_eq!(first_discrepancy(CartanType::C, &lam, 2).unwrap(), None);
        assert_eq!(first_discrepancy(CartanType::A, &lam, 3).unwrap(), None);
        for f in [Formula::RamYip, Formula::Compressed, Formula::Schwer] {
            assert_eq!(f.to_string().parse::<Formula>().unwrap(), f);
        }
    }
}
