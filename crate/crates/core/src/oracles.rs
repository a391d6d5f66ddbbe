//! Reference computations independent of both engines: Schur polynomials from
//! semistandard tableaux, symplectic Weyl characters from the alternant
//! quotient, orbit sums, monomial expansion, and dominance.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qt::{CoeffKind, IntPoly2, QTFraction, WeightPolynomial};
use crate::weyl::{enumerate_group, positive_roots, CartanType};

fn constant_poly(n: usize, terms: BTreeMap<Vec<i64>, BigInt>) -> Result<WeightPolynomial> {
    let mut out = WeightPolynomial::zero(n, CoeffKind::TOnly);
    for (e, c) in terms {
        out.add_term(e, &QTFraction::from_poly(IntPoly2::constant(c)))?;
    }
    Ok(out)
}

/// `s_λ(x_1, …, x_n)` as the content generating function of semistandard
/// tableaux. `shape` must be weakly decreasing.
pub fn schur_ssyt(shape: &[u32], n: usize) -> Result<WeightPolynomial> {
    if shape.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::Invariant(format!("{shape:?} is not a partition")));
    }
    let shape: Vec<usize> = shape.iter().filter(|&&p| p > 0).map(|&p| p as usize).collect();
    let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut tab: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len]).collect();
    fill_tableau(&cells, 0, n as u32, &mut tab, &mut |t| {
        let mut e = vec![0i64; n];
        for row in t {
            for &x in row {
                e[x as usize - 1] += 1;
            }
        }
        *terms.entry(e).or_default() += 1;
    });
    constant_poly(n, terms)
}

fn fill_tableau(cells: &[(usize, usize)], idx: usize, n: u32, tab: &mut [Vec<u32>], emit: &mut impl FnMut(&[Vec<u32>])) {
    let Some(&(r, c)) = cells.get(idx) else {
        emit(tab);
        return;
    };
    let left = if c > 0 { tab[r][c - 1] } else { 1 };
    let above = if r > 0 { tab[r - 1][c] + 1 } else { 1 };
    for x in left.max(above)..=n {
        tab[r][c] = x;
        fill_tableau(cells, idx + 1, n, tab, emit);
    }
    tab[r][c] = 0;
}

/// `ρ = (n, n−1, …, 1)`.
fn rho_c(n: usize) -> Vec<i64> {
    (1..=n as i64).rev().collect()
}

fn alternant(n: usize, weight: &[i64]) -> Result<BTreeMap<Vec<i64>, BigInt>> {
    let mut out: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for w in enumerate_group(CartanType::C, n) {
        let sign = if w.length() % 2 == 0 { 1 } else { -1 };
        *out.entry(w.act_on_weight(weight)?).or_default() += sign;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// The symplectic character of highest weight `λ` as the alternant quotient
/// `A(λ + ρ) / A(ρ)`, found by lexicographic leading-term elimination.
pub fn weyl_character_c(lambda: &Partition, n: usize) -> Result<WeightPolynomial> {
    lambda.require_parts(n)?;
    let rho = rho_c(n);
    let shifted: Vec<i64> = lambda.weight(n).iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut rem = alternant(n, &shifted)?;
    let divisor = alternant(n, &rho)?;
    let (lead, lead_c) = divisor.iter().next_back().expect("nonzero alternant");
    if lead != &rho || !lead_c.is_one() {
        return Err(Error::Invariant("alternant of ρ does not lead with x^ρ".into()));
    }
    let bound = lambda.largest() as i64;
    let mut quotient: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    while let Some((e, c)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let q: Vec<i64> = e.iter().zip(&rho).map(|(a, b)| a - b).collect();
        if q.iter().any(|x| x.abs() > bound) {
            return Err(Error::Invariant("alternant division is not exact".into()));
        }
        for (d, dc) in &divisor {
            let key: Vec<i64> = q.iter().zip(d).map(|(a, b)| a + b).collect();
            let slot = rem.entry(key.clone()).or_default();
            *slot -= &c * dc;
            if slot.is_zero() {
                rem.remove(&key);
            }
        }
        quotient.insert(q, c);
    }
    constant_poly(n, quotient)
}

/// `Π_{α > 0} ⟨λ + ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
pub fn weyl_dimension_c(lambda: &Partition, n: usize) -> Result<BigRational> {
    lambda.require_parts(n)?;
    let rho = rho_c(n);
    let shifted: Vec<i64> = lambda.weight(n).iter().zip(&rho).map(|(a, b)| a + b).collect();
    Ok(positive_roots(CartanType::C, n).iter().fold(BigRational::one(), |acc, r| {
        acc * BigRational::new(r.coroot_pairing(&shifted).into(), r.coroot_pairing(&rho).into())
    }))
}

/// `Σ x^{w(μ)}` over the distinct images of `μ` under the Weyl group.
pub fn orbit_sum(cartan: CartanType, weight: &[i64]) -> Result<WeightPolynomial> {
    let n = weight.len();
    let mut images = BTreeSet::new();
    for w in enumerate_group(cartan, n) {
        images.insert(w.act_on_weight(weight)?);
    }
    constant_poly(n, images.into_iter().map(|e| (e, BigInt::one())).collect())
}

/// The dominant representative of the orbit of an exponent vector.
pub fn dominant_representative(cartan: CartanType, exponent: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = match cartan {
        CartanType::A => exponent.to_vec(),
        CartanType::C => exponent.iter().map(|x| x.abs()).collect(),
    };
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Images of an exponent vector under the simple reflections.
fn simple_images(cartan: CartanType, exponent: &[i64]) -> Vec<Vec<i64>> {
    let n = exponent.len();
    let mut out: Vec<Vec<i64>> = (0..n.saturating_sub(1))
        .map(|i| {
            let mut v = exponent.to_vec();
            v.swap(i, i + 1);
            v
        })
        .collect();
    if cartan == CartanType::C && n > 0 {
        let mut v = exponent.to_vec();
        v[n - 1] = -v[n - 1];
        out.push(v);
    }
    out
}

/// Whether `P` is invariant under the Weyl group acting on exponents.
pub fn is_invariant(p: &WeightPolynomial, cartan: CartanType) -> bool {
    p.terms().all(|(e, c)| simple_images(cartan, e).iter().all(|img| p.coefficient(img).frac_equal(c)))
}

/// Coefficients of `P` on the orbit sums `m_μ`, keyed by dominant `μ`.
pub fn monomial_expand(p: &WeightPolynomial, cartan: CartanType) -> Result<BTreeMap<Vec<i64>, QTFraction>> {
    if let Some((e, c)) = p
        .terms()
        .find(|(e, c)| simple_images(cartan, e).iter().any(|img| !p.coefficient(img).frac_equal(c)))
    {
        return Err(Error::SymmetryViolation(format!("coefficient {c} of {e:?} is not invariant")));
    }
    Ok(p.terms().filter(|(e, _)| dominant_representative(cartan, e) == **e).map(|(e, c)| (e.clone(), c.clone())).collect())
}

/// `μ ≤ λ`: every prefix sum of `μ` is at most that of `λ`.
pub fn dominance_leq(mu: &[i64], lambda: &[i64]) -> bool {
    let len = mu.len().max(lambda.len());
    let (mut sm, mut sl) = (0, 0);
    (0..len).all(|i| {
        sm += mu.get(i).copied().unwrap_or(0);
        sl += lambda.get(i).copied().unwrap_or(0);
        sm <= sl
    })
}

/// Evaluates a polynomial with constant coefficients at a point `x`.
pub fn evaluate_at(values: &BTreeMap<Vec<i64>, BigRational>, x: &[BigRational]) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (e, c) in values {
        let mut term = c.clone();
        for (xi, &k) in x.iter().zip(e) {
            if k < 0 && xi.is_zero() {
                return Err(Error::EvaluationPole);
            }
            let base = if k < 0 { xi.recip() } else { xi.clone() };
            term *= num_traits::pow(base, k.unsigned_abs() as usize);
        }
        acc += term;
    }
    Ok(acc)
}

/// Whether every coefficient is a nonnegative integer constant.
pub fn has_nonnegative_integer_coefficients(p: &WeightPolynomial) -> bool {
    p.terms().all(|(_, c)| {
        c.is_polynomial()
            && c.numerator().terms().all(|(a, b, coeff)| a == 0 && b == 0 && !coeff.is_negative())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ones(n: usize) -> Vec<BigRational> {
        vec![BigRational::one(); n]
    }

    fn constants(p: &WeightPolynomial) -> BTreeMap<Vec<i64>, BigRational> {
        p.specialize(&BigRational::zero(), &BigRational::zero()).unwrap()
    }

    #[test]
    fn schur_small_cases() {
        assert_eq!(schur_ssyt(&[1], 2).unwrap().to_string(), "x1 + x2");
        assert_eq!(schur_ssyt(&[2, 1], 2).unwrap().to_string(), "x1^2*x2 + x1*x2^2");
        let s = schur_ssyt(&[2, 1], 3).unwrap();
        assert_eq!(evaluate_at(&constants(&s), &ones(3)).unwrap(), BigRational::from_integer(8.into()));
        let m = monomial_expand(&s, CartanType::A).unwrap();
        let shown: Vec<(Vec<i64>, String)> = m.iter().map(|(e, c)| (e.clone(), c.to_string())).collect();
        assert_eq!(shown, vec![(vec![1, 1, 1], "2".to_string()), (vec![2, 1, 0], "1".to_string())]);
        assert!(schur_ssyt(&[1, 2], 2).is_err());
    }

    #[test]
    fn symplectic_characters() {
        let ch = weyl_character_c(&lam("2,1"), 2).unwrap();
        assert!(is_invariant(&ch, CartanType::C));
        assert_eq!(evaluate_at(&constants(&ch), &ones(2)).unwrap(), weyl_dimension_c(&lam("2,1"), 2).unwrap());
        assert_eq!(weyl_dimension_c(&lam("2,1"), 2).unwrap(), BigRational::from_integer(16.into()));
        assert_eq!(ch.coefficient(&[2, 1]), QTFraction::one());
        let ch3 = weyl_character_c(&lam("3,2,1"), 3).unwrap();
        assert_eq!(evaluate_at(&constants(&ch3), &ones(3)).unwrap(), weyl_dimension_c(&lam("3,2,1"), 3).unwrap());
        assert!(has_nonnegative_integer_coefficients(&ch3));
    }

    #[test]
    fn expansions_and_dominance() {
        let mut x1 = WeightPolynomial::zero(2, CoeffKind::TOnly);
        x1.add_term(vec![1, 0], &QTFraction::one()).unwrap();
        assert!(matches!(monomial_expand(&x1, CartanType::A), Err(Error::SymmetryViolation(_))));
        let sym = orbit_sum(CartanType::A, &[1, 0]).unwrap();
        assert_eq!(monomial_expand(&sym, CartanType::A).unwrap().len(), 1);
        assert_eq!(orbit_sum(CartanType::C, &[2, 1]).unwrap().len(), 8);
        assert!(dominance_leq(&[1, 1, 1], &[2, 1, 0]));
        assert!(dominance_leq(&[2, 1, 0], &[2, 1, 0]));
        assert!(!dominance_leq(&[3, 0, 0], &[2, 1, 0]));
        assert_eq!(dominant_representative(CartanType::C, &[-1, 3]), vec![3, 1]);
    }
}
