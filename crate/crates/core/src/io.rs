//! Serializable documents for polynomials, plain and specialized.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::partition::Partition;
use crate::qt::{CoeffKind, FactorDenominator, IntPoly2, QTFraction, WeightPolynomial};
use crate::weyl::CartanType;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponent: Vec<i64>,
    /// Canonical numerator string.
    pub num: String,
    /// Denominator factors `(a, b)` for `1 - q^a t^b`, with repetition.
    pub den: Vec<[u32; 2]>,
}

/// Terms are sorted by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDocument {
    #[serde(rename = "type")]
    pub cartan: CartanType,
    pub lambda: Partition,
    pub n: usize,
    pub formula: Formula,
    pub terms: Vec<TermRecord>,
}

fn coeff_kind(cartan: CartanType) -> CoeffKind {
    match cartan {
        CartanType::A => CoeffKind::QT,
        CartanType::C => CoeffKind::TOnly,
    }
}

impl PolynomialDocument {
    pub fn new(cartan: CartanType, lambda: &Partition, formula: Formula, p: &WeightPolynomial) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| TermRecord {
                exponent: e.clone(),
                num: c.numerator().to_string(),
                den: c.denominator().flat().into_iter().map(|(a, b)| [a, b]).collect(),
            })
            .collect();
        Self { cartan, lambda: lambda.clone(), n: p.rank(), formula, terms }
    }

    pub fn to_polynomial(&self) -> Result<WeightPolynomial> {
        let mut out = WeightPolynomial::zero(self.n, coeff_kind(self.cartan));
        for term in &self.terms {
            let num: IntPoly2 = term.num.parse()?;
            let den = term.den.iter().try_fold(FactorDenominator::one(), |d, &[a, b]| d.with_factor(a, b, 1))?;
            out.add_term(term.exponent.clone(), &QTFraction::new(num, den))?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRecord {
    pub exponent: Vec<i64>,
    /// Exact rational `p/q` (or an integer).
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializedDocument {
    #[serde(rename = "type")]
    pub cartan: CartanType,
    pub lambda: Partition,
    pub n: usize,
    pub formula: Formula,
    pub q: String,
    pub t: String,
    pub terms: Vec<ValueRecord>,
}

impl SpecializedDocument {
    pub fn new(
        cartan: CartanType,
        lambda: &Partition,
        n: usize,
        formula: Formula,
        (q, t): (&BigRational, &BigRational),
        values: &BTreeMap<Vec<i64>, BigRational>,
    ) -> Self {
        let terms = values.iter().map(|(e, v)| ValueRecord { exponent: e.clone(), value: v.to_string() }).collect();
        Self { cartan, lambda: lambda.clone(), n, formula, q: q.to_string(), t: t.to_string(), terms }
    }

    pub fn values(&self) -> Result<BTreeMap<Vec<i64>, BigRational>> {
        self.terms
            .iter()
            .map(|r| Ok((r.exponent.clone(), r.value.parse().map_err(|e| Error::Parse(format!("{:?}: {e}", r.value)))?)))
            .collect()
    }
}

/// Parses `q=Q,t=T` with rational `Q`, `T` such as `1/2` or `-3`.
pub fn parse_specialization(s: &str) -> Result<(BigRational, BigRational)> {
    let mut q = None;
    let mut t = None;
    for part in s.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        let value: BigRational = value.trim().parse().map_err(|e| Error::Parse(format!("{value:?}: {e}")))?;
        match key.trim() {
            "q" => q = Some(value),
            "t" => t = Some(value),
            other => return Err(Error::Parse(format!("unknown parameter {other:?}"))),
        }
    }
    match (q, t) {
        (Some(q), Some(t)) => Ok((q, t)),
        _ => Err(Error::Parse("both q and t are required".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::compute;

    #[test]
    fn documents_round_trip() {
        let lam: Partition = "2,1".parse().unwrap();
        for (cartan, n, formula) in [(CartanType::A, 3, Formula::Compressed), (CartanType::C, 2, Formula::Schwer)] {
            let p = compute(cartan, &lam, n, formula).unwrap();
            let doc = PolynomialDocument::new(cartan, &lam, formula, &p);
            let text = serde_json::to_string(&doc).unwrap();
            let back: PolynomialDocument = serde_json::from_str(&text).unwrap();
            assert_eq!(back, doc);
            assert!(back.to_polynomial().unwrap().poly_equal(&p).unwrap());
        }
    }

    #[test]
    fn json_field_names() {
        let lam: Partition = "1".parse().unwrap();
        let p = compute(CartanType::A, &lam, 2, Formula::Compressed).unwrap();
        let value = serde_json::to_value(PolynomialDocument::new(CartanType::A, &lam, Formula::Compressed, &p)).unwrap();
        assert_eq!(value["type"], "A");
        assert_eq!(value["formula"], "compressed");
        assert_eq!(value["lambda"], serde_json::json!([1]));
        assert_eq!(value["terms"][0]["exponent"], serde_json::json!([0, 1]));
        assert_eq!(value["terms"][0]["num"], "1");
        assert_eq!(value["terms"][0]["den"], serde_json::json!([]));
    }

    #[test]
    fn specialization_arguments() {
        let (q, t) = parse_specialization("q=1/2,t=-3").unwrap();
        assert_eq!(q.to_string(), "1/2");
        assert_eq!(t.to_string(), "-3");
        assert!(parse_specialization("q=1").is_err());
        assert!(parse_specialization("q=1,t=x").is_err());
        assert!(parse_specialization("q=1,s=2").is_err());
    }
}
