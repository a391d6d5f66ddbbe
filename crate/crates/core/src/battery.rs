//! The verification battery: eight acceptance criteria, each reported as one
//! pass/fail line with its timing.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::chain::{chain_type_a, chain_type_c, enumerate_folding_pairs, enumerate_positive_folding_pairs, FoldingPair};
use crate::error::Result;
use crate::oracles::{dominance_leq, is_invariant, monomial_expand, orbit_sum, schur_ssyt, weyl_character_c};
use crate::partition::Partition;
use crate::qt::QTFraction;
use crate::type_a::{self, enumerate_nonattacking, filling_map, macdonald_compressed, macdonald_ramyip, verify_fiber};
use crate::type_c::{self, enumerate_cfillings, filling_map_c, hl_compressed, hl_schwer, verify_fiber_c, CFilling};
use crate::weyl::{CartanType, GroupElement};

/// Expected chain listings, tokens separated by single spaces.
pub const CHAIN_A_431: &str = "(1,4) (1,3) | (2,4) (2,3) (1,4) (1,3) | (2,4) (1,4)";
pub const CHAIN_C_321: &str = "(1,-2) (1,-3) (1,-1) (1,3) (1,2) || (1,-2) | (1,-3) (1,-1) (1,3) | \
(1,-2) (2,-3) (2,-2) (2,3) || (1,-2) | (1,-3) (2,-3) | (1,-1) | (1,-2) (2,-2) | (1,-3) (2,-3) (3,-3)";
/// The filling of the worked type A pair, rows as displayed.
pub const FILLING_A_431: &str = "2 1 3 3 / 3 4 2 / 1";
/// The filling of the worked type C pair, rows as displayed.
pub const FILLING_C_321: &str = "-1 3 2 2 2 2 2 / -2 -3 -3 1 1 1 / 3 3 3";

pub const CHAIN_TIME_LIMIT: Duration = Duration::from_millis(1);
pub const TYPE_A_COMPRESSION_LIMIT: Duration = Duration::from_secs(10);
pub const TYPE_C_COMPRESSION_LIMIT: Duration = Duration::from_secs(60);
/// Random rational points for the `q = t` specialization.
pub const SPECIALIZATION_POINTS: usize = 5;
pub const SPECIALIZATION_SEED: u64 = 0x0005_eed0_fa11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Smaller shapes only; meant to finish well under a minute.
    Quick,
    /// Every shape named in the criteria, plus extra shapes where cheap.
    Full,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Suite::Quick),
            "full" => Ok(Suite::Full),
            other => Err(crate::Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {}. {} ({:.3} s): {}", self.id, self.name, self.elapsed.as_secs_f64(), self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "chain reproduction"),
    (2, "worked-example fidelity"),
    (3, "type A compression"),
    (4, "type A specializations"),
    (5, "type C compression"),
    (6, "type C specializations"),
    (7, "image equality"),
    (8, "structural invariants"),
];

/// Collects failed checks; a criterion passes iff none fail.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self) -> (bool, String) {
        if self.failures.is_empty() {
            (true, self.notes.join("; "))
        } else {
            let mut shown: Vec<String> = self.failures.iter().take(5).cloned().collect();
            if self.failures.len() > 5 {
                shown.push(format!("… {} more", self.failures.len() - 5));
            }
            (false, shown.join("; "))
        }
    }
}

fn lam(s: &str) -> Partition {
    s.parse().expect("fixed partition")
}

fn type_a_cases(suite: Suite) -> Vec<(Partition, usize)> {
    let mut cases = vec![(lam("2,1"), 3), (lam("3,2,1"), 4)];
    if suite == Suite::Full {
        cases.push((lam("4,3,1"), 4));
    }
    cases
}

fn type_c_cases(suite: Suite) -> Vec<(Partition, usize)> {
    let mut cases = vec![(lam("2,1"), 2)];
    if suite == Suite::Full {
        cases.push((lam("3,2,1"), 3));
    }
    cases
}

fn timed_chain(build: impl Fn() -> Result<String>) -> Result<(String, Duration)> {
    build()?;
    const REPS: u32 = 20;
    let start = Instant::now();
    let mut listing = String::new();
    for _ in 0..REPS {
        listing = build()?;
    }
    Ok((listing, start.elapsed() / REPS))
}

fn criterion_chains(_: Suite) -> Result<Checks> {
    let mut c = Checks::default();
    let (a, ta) = timed_chain(|| Ok(chain_type_a(&lam("4,3,1"), 4)?.tokens().join(" ")))?;
    let (cc, tc) = timed_chain(|| Ok(chain_type_c(&lam("3,2,1"), 3)?.tokens().join(" ")))?;
    c.check(a == CHAIN_A_431, format!("type A chain {a}"));
    c.check(cc == CHAIN_C_321, format!("type C chain {cc}"));
    c.check(ta < CHAIN_TIME_LIMIT, format!("type A chain took {ta:?}"));
    c.check(tc < CHAIN_TIME_LIMIT, format!("type C chain took {tc:?}"));
    let len_c = chain_type_c(&lam("3,2,1"), 3)?.len();
    c.check(len_c == 22, format!("type C chain has {len_c} entries"));
    c.note(format!("A {:.1} µs, C {:.1} µs per chain (limit 1 ms)", ta.as_secs_f64() * 1e6, tc.as_secs_f64() * 1e6));
    Ok(c)
}

fn criterion_worked_examples(_: Suite) -> Result<Checks> {
    let mut c = Checks::default();
    let chain = chain_type_a(&lam("4,3,1"), 4)?;
    let pair = FoldingPair::new(&chain, GroupElement::new(CartanType::A, vec![2, 3, 4, 1])?, vec![1, 4, 6, 7])?;
    let f = filling_map(&pair)?.to_string();
    c.check(f == FILLING_A_431, format!("type A filling {f}"));
    let (pos, neg) = pair.classify();
    c.check(pos == [1, 7] && neg == [4, 6], format!("J+ = {pos:?}, J- = {neg:?}"));
    let chain = chain_type_c(&lam("3,2,1"), 3)?;
    let pair = FoldingPair::new(&chain, GroupElement::negated_identity(3), vec![2, 6, 12, 13])?;
    c.check(pair.is_positive(), "worked type C pair is not positive");
    let f = filling_map_c(&pair)?.to_string();
    c.check(f == FILLING_C_321, format!("type C filling {f}"));
    c.note("both fillings and the fold split reproduced");
    Ok(c)
}

fn criterion_type_a_compression(suite: Suite) -> Result<Checks> {
    let mut c = Checks::default();
    let start = Instant::now();
    for (lambda, n) in type_a_cases(suite) {
        let chain = chain_type_a(&lambda, n)?;
        let fibers = type_a::fibers(&chain)?;
        let mut failed = 0;
        for (sigma, fiber) in &fibers {
            let report = verify_fiber(sigma, fiber)?;
            if !report.passed() {
                failed += 1;
                c.check(false, format!("{lambda}: {report}"));
            }
        }
        let equal = macdonald_ramyip(&lambda, n)?.poly_equal(&macdonald_compressed(&lambda, n)?)?;
        c.check(equal, format!("{lambda}: Ram-Yip sum differs from the compressed sum"));
        c.note(format!("{lambda}: {}/{} fibers", fibers.len() - failed, fibers.len()));
    }
    let elapsed = start.elapsed();
    c.check(elapsed < TYPE_A_COMPRESSION_LIMIT, format!("took {elapsed:?} (limit 10 s)"));
    Ok(c)
}

fn random_unit_rational(rng: &mut StdRng) -> BigRational {
    let den: i64 = rng.gen_range(2..60);
    let num: i64 = rng.gen_range(1..den);
    BigRational::new(num.into(), den.into())
}

fn criterion_type_a_specializations(suite: Suite) -> Result<Checks> {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(SPECIALIZATION_SEED);
    for (lambda, n) in type_a_cases(suite) {
        let p = macdonald_compressed(&lambda, n)?;
        let schur = schur_ssyt(lambda.parts(), n)?.specialize(&BigRational::zero(), &BigRational::zero())?;
        for _ in 0..SPECIALIZATION_POINTS {
            let t0 = random_unit_rational(&mut rng);
            let at = p.specialize(&t0, &t0)?;
            c.check(at == schur, format!("{lambda}: q = t = {t0} differs from the Schur polynomial"));
        }
        c.check(is_invariant(&p, CartanType::A), format!("{lambda}: not symmetric"));
        match monomial_expand(&p, CartanType::A) {
            Ok(m) => {
                let top = lambda.weight(n);
                c.check(m.get(&top).is_some_and(|x| x.frac_equal(&QTFraction::one())), format!("{lambda}: m_λ coefficient is not 1"));
                let outside: Vec<_> = m.keys().filter(|mu| !dominance_leq(mu, &top)).collect();
                c.check(outside.is_empty(), format!("{lambda}: support outside dominance {outside:?}"));
            }
            Err(e) => c.check(false, format!("{lambda}: {e}")),
        }
        c.note(format!("{lambda}: {SPECIALIZATION_POINTS} points, symmetric, triangular"));
    }
    Ok(c)
}

fn criterion_type_c_compression(suite: Suite) -> Result<Checks> {
    let mut c = Checks::default();
    for (lambda, n) in type_c_cases(suite) {
        let start = Instant::now();
        let chain = chain_type_c(&lambda, n)?;
        let fibers = type_c::fibers_c(&chain)?;
        let mut failed = 0;
        for (sigma, fiber) in &fibers {
            let report = verify_fiber_c(sigma, fiber)?;
            if !report.passed() {
                failed += 1;
                c.check(false, format!("{lambda}: {report}"));
            }
        }
        let equal = hl_schwer(&lambda, n)?.poly_equal(&hl_compressed(&lambda, n)?)?;
        c.check(equal, format!("{lambda}: Schwer sum differs from the compressed sum"));
        let elapsed = start.elapsed();
        c.check(elapsed < TYPE_C_COMPRESSION_LIMIT, format!("{lambda}: took {elapsed:?} (limit 60 s)"));
        c.note(format!("{lambda}: {}/{} fibers in {:.2} s", fibers.len() - failed, fibers.len(), elapsed.as_secs_f64()));
    }
    Ok(c)
}

fn criterion_type_c_specializations(suite: Suite) -> Result<Checks> {
    let mut c = Checks::default();
    let (zero, one) = (BigRational::zero(), BigRational::one());
    for (lambda, n) in type_c_cases(suite) {
        let p = hl_compressed(&lambda, n)?;
        let character = weyl_character_c(&lambda, n)?.specialize(&zero, &zero)?;
        c.check(p.specialize(&zero, &zero)? == character, format!("{lambda}: t = 0 differs from the Weyl character"));
        let orbit = orbit_sum(CartanType::C, &lambda.weight(n))?.specialize(&zero, &zero)?;
        c.check(p.specialize(&zero, &one)? == orbit, format!("{lambda}: t = 1 differs from the orbit sum"));
        c.check(is_invariant(&p, CartanType::C), format!("{lambda}: not invariant under signed permutations"));
        c.note(format!("{lambda}: {} monomials", p.len()));
    }
    Ok(c)
}

fn criterion_image_equality(suite: Suite) -> Result<Checks> {
    let mut c = Checks::default();
    for (lambda, n) in [(lam("2,1"), 3), (lam("3,2,1"), 4)] {
        let chain = chain_type_a(&lambda, n)?;
        let image: BTreeSet<_> = enumerate_folding_pairs(&chain).map(|p| filling_map(&p)).collect::<Result<_>>()?;
        let generated: BTreeSet<_> = enumerate_nonattacking(&lambda, n)?.into_iter().collect();
        c.check(image.is_subset(&generated), format!("{lambda}: image has {} non-generated fillings", image.difference(&generated).count()));
        c.check(generated.is_subset(&image), format!("{lambda}: {} fillings not in the image", generated.difference(&image).count()));
        c.note(format!("A {lambda}: {} fillings", generated.len()));
    }
    for (lambda, n) in type_c_cases(suite) {
        let chain = chain_type_c(&lambda, n)?;
        let image: BTreeSet<CFilling> =
            enumerate_positive_folding_pairs(&chain).map(|p| filling_map_c(&p)).collect::<Result<_>>()?;
        let generated: BTreeSet<CFilling> = enumerate_cfillings(&lambda, n)?.into_iter().collect();
        c.check(image.is_subset(&generated), format!("{lambda}: image has {} non-generated fillings", image.difference(&generated).count()));
        c.check(generated.is_subset(&image), format!("{lambda}: {} fillings not in the image", generated.difference(&image).count()));
        c.note(format!("C {lambda}: {} fillings", generated.len()));
    }
    Ok(c)
}

fn criterion_structural(suite: Suite) -> Result<Checks> {
    let mut c = Checks::default();
    let mut pairs_a = 0usize;
    for (lambda, n) in type_a_cases(suite) {
        let chain = chain_type_a(&lambda, n)?;
        for pair in enumerate_folding_pairs(&chain) {
            pairs_a += 1;
            let drop = pair.w().length() as i64 - pair.end().length() as i64;
            c.check((drop - pair.folds().len() as i64) % 2 == 0, format!("{lambda}: parity fails at ({}, {:?})", pair.w(), pair.folds()));
            let content = filling_map(&pair)?.content();
            c.check(content == pair.weight(), format!("{lambda}: content fails at ({}, {:?})", pair.w(), pair.folds()));
        }
    }
    let mut pairs_c = 0usize;
    for (lambda, n) in type_c_cases(suite) {
        let chain = chain_type_c(&lambda, n)?;
        for pair in enumerate_positive_folding_pairs(&chain) {
            pairs_c += 1;
            let (lw, le, size) = (pair.w().length() as i64, pair.end().length() as i64, pair.folds().len() as i64);
            c.check((lw - le - size) % 2 == 0, format!("{lambda}: parity fails at ({}, {:?})", pair.w(), pair.folds()));
            let twice = lw + le - size;
            c.check(twice >= 0 && twice % 2 == 0, format!("{lambda}: Schwer exponent {twice}/2 at ({}, {:?})", pair.w(), pair.folds()));
            let sigma = filling_map_c(&pair)?;
            c.check(sigma.content()? == pair.weight(), format!("{lambda}: content fails at ({}, {:?})", pair.w(), pair.folds()));
            c.check(sigma.check_membership().is_ok(), format!("{lambda}: image filling {sigma} violates the filling conditions"));
        }
    }
    // Parity on all type C pairs, positive or not.
    let small = chain_type_c(&lam("2,1"), 2)?;
    for pair in enumerate_folding_pairs(&small) {
        let drop = pair.w().length() as i64 - pair.end().length() as i64;
        c.check((drop - pair.folds().len() as i64) % 2 == 0, format!("(2,1): parity fails at ({}, {:?})", pair.w(), pair.folds()));
    }
    c.note(format!("{pairs_a} type A pairs, {pairs_c} positive type C pairs"));
    Ok(c)
}

pub fn run_criterion(id: u8, suite: Suite) -> CriterionResult {
    let (_, name) = CRITERIA.iter().copied().find(|&(i, _)| i == id).unwrap_or((id, "unknown criterion"));
    let start = Instant::now();
    let outcome = match id {
        1 => criterion_chains(suite),
        2 => criterion_worked_examples(suite),
        3 => criterion_type_a_compression(suite),
        4 => criterion_type_a_specializations(suite),
        5 => criterion_type_c_compression(suite),
        6 => criterion_type_c_specializations(suite),
        7 => criterion_image_equality(suite),
        8 => criterion_structural(suite),
        _ => Err(crate::Error::Parse(format!("no criterion {id}"))),
    };
    let (passed, detail) = match outcome {
        Ok(checks) => checks.finish(),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, name, passed, detail, elapsed: start.elapsed() }
}

pub fn run_suite(suite: Suite) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, suite)).collect()
}
