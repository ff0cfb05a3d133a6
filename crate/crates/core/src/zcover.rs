//! Finite systems of residue classes `a_i + n_iℤ`.
//!
//! Everything here is periodic with period `lcm(n_1, …, n_k)`, so covering questions reduce to a
//! scan over one period. The scan is guarded by a [`PeriodBudget`]; exceeding it is an error and
//! never triggers sampling.
//!
//! The density identity for `⋃ n_iℤ` is checked in the finite form obtained by pulling the
//! smooth-number sum through inclusion–exclusion: for `P ⊇ P(n_i)`,
//! `Σ_{n ∈ mℤ⁺, P(n) ⊆ P} 1/n = (1/m)·∏_{p∈P} p/(p−1)`, so the right-hand side becomes
//! `∏(1−1/p) · Σ_{∅≠I} (−1)^{|I|+1} (1/lcm_I) · ∏ p/(p−1)`, an exact rational.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::arith::{self, euler_product, factorize, ArithError, Scalar};
use crate::{integer, rational, ExactRational};

/// Default limit on the period `lcm(n_i)` of a scanned system.
pub const DEFAULT_PERIOD_BUDGET: u64 = 10_000_000;
/// Periods up to this size keep the full per-residue multiplicity vector.
pub const FULL_PROFILE_LIMIT: u64 = 1_000_000;
/// Inclusion–exclusion runs over all nonempty subsets, so the class count is capped.
pub const MAX_INCLUSION_EXCLUSION_CLASSES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZcoverError {
    #[error("a residue system needs at least one class")]
    Empty,
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("residue {residue} out of range for modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },
    #[error("period {period} exceeds the budget {budget}")]
    PeriodTooLarge { period: BigUint, budget: u64 },
    #[error("system is not a uniform cover")]
    NotUniform,
    #[error("system is a trivial cover (every modulus is 1)")]
    Trivial,
    #[error("system is not an exact cover")]
    NotExactCover,
    #[error("need more than one class")]
    SingleClass,
    #[error("prime {0} does not divide the lcm of the moduli")]
    PrimeNotDividing(u64),
    #[error("alpha = {alpha} is not a positive member of {lambda:?}")]
    AlphaNotInLambda { alpha: u32, lambda: Vec<u32> },
    #[error("split step {step}: class index {index} out of range for {len} classes")]
    ScriptIndex { step: usize, index: usize, len: usize },
    #[error("split step {step}: factor {factor} must be at least 2")]
    SplitFactor { step: usize, factor: u64 },
    #[error("{0} classes exceed the inclusion-exclusion limit")]
    TooManyClasses(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The residue class `residue + modulus·ℤ` with `0 ≤ residue < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueClass {
    pub residue: u64,
    pub modulus: u64,
}

impl ResidueClass {
    pub fn new(residue: u64, modulus: u64) -> Result<Self, ZcoverError> {
        if modulus == 0 {
            return Err(ZcoverError::ZeroModulus);
        }
        if residue >= modulus {
            return Err(ZcoverError::ResidueOutOfRange { residue, modulus });
        }
        Ok(ResidueClass { residue, modulus })
    }

    pub fn contains(&self, x: u64) -> bool {
        x % self.modulus == self.residue
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.residue, self.modulus)
    }
}

/// A nonempty list of residue classes, kept in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSystem {
    classes: Vec<ResidueClass>,
}

impl ResidueSystem {
    pub fn new(classes: Vec<ResidueClass>) -> Result<Self, ZcoverError> {
        if classes.is_empty() {
            return Err(ZcoverError::Empty);
        }
        Ok(ResidueSystem { classes })
    }

    /// Build from `(residue, modulus)` pairs, validating each class.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self, ZcoverError> {
        pairs
            .iter()
            .map(|&(a, n)| ResidueClass::new(a, n))
            .collect::<Result<Vec<_>, _>>()
            .and_then(Self::new)
    }

    pub fn classes(&self) -> &[ResidueClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes sorted by (modulus, residue), realizing `n_1 ≤ … ≤ n_k`.
    pub fn canonical(&self) -> Vec<ResidueClass> {
        let mut v = self.classes.clone();
        v.sort_by_key(|c| (c.modulus, c.residue));
        v
    }

    /// Moduli in nondecreasing order.
    pub fn moduli(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.classes.iter().map(|c| c.modulus).collect();
        v.sort_unstable();
        v
    }

    /// The same moduli with every residue set to 0.
    pub fn zeroed(&self) -> ResidueSystem {
        ResidueSystem {
            classes: self
                .classes
                .iter()
                .map(|c| ResidueClass {
                    residue: 0,
                    modulus: c.modulus,
                })
                .collect(),
        }
    }

    pub fn period(&self, budget: PeriodBudget) -> Result<u64, ZcoverError> {
        let moduli: Vec<u64> = self.classes.iter().map(|c| c.modulus).collect();
        match arith::lcm_u64(&moduli) {
            Some(p) if p <= budget.0 => Ok(p),
            _ => Err(ZcoverError::PeriodTooLarge {
                period: arith::gcd_lcm(&moduli)?.1,
                budget: budget.0,
            }),
        }
    }

    /// Largest number of classes sharing one modulus.
    pub fn max_modulus_multiplicity(&self) -> usize {
        modulus_counts(&self.moduli()).values().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for ResidueSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.classes.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn modulus_counts(moduli: &[u64]) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for &n in moduli {
        *m.entry(n).or_insert(0) += 1;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodBudget(pub u64);

impl Default for PeriodBudget {
    fn default() -> Self {
        PeriodBudget(DEFAULT_PERIOD_BUDGET)
    }
}

/// The covering function `w(x) = |{i : x ≡ a_i (mod n_i)}|` over one period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityProfile {
    pub period: u64,
    /// Present when `period ≤ FULL_PROFILE_LIMIT`.
    pub counts: Option<Vec<u32>>,
    pub min_w: u32,
    pub max_w: u32,
    /// Σ_x w(x) over the period.
    pub total: u64,
    /// Number of residues with `w(x) ≥ 1`.
    pub covered: u64,
}

const SCAN_CHUNK: u64 = 1 << 18;

pub fn multiplicity_profile(
    sys: &ResidueSystem,
    budget: PeriodBudget,
) -> Result<MultiplicityProfile, ZcoverError> {
    let period = sys.period(budget)?;
    let keep = period <= FULL_PROFILE_LIMIT;
    let mut full = Vec::new();
    let (mut min_w, mut max_w, mut total, mut covered) = (u32::MAX, 0u32, 0u64, 0u64);
    let mut buf = vec![0u32; SCAN_CHUNK.min(period) as usize];
    let mut lo = 0;
    while lo < period {
        let hi = (lo + SCAN_CHUNK).min(period);
        let chunk = &mut buf[..(hi - lo) as usize];
        chunk.iter_mut().for_each(|c| *c = 0);
        for c in sys.classes() {
            // first x ≥ lo with x ≡ residue
            let mut x = lo + (c.residue + c.modulus - lo % c.modulus) % c.modulus;
            while x < hi {
                chunk[(x - lo) as usize] += 1;
                x += c.modulus;
            }
        }
        for &w in chunk.iter() {
            min_w = min_w.min(w);
            max_w = max_w.max(w);
            total += w as u64;
            covered += (w > 0) as u64;
        }
        if keep {
            full.extend_from_slice(chunk);
        }
        lo = hi;
    }
    Ok(MultiplicityProfile {
        period,
        counts: keep.then_some(full),
        min_w,
        max_w,
        total,
        covered,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_cover: bool,
    pub is_exact_cover: bool,
    /// `Some(m)` when every integer is covered exactly `m` times.
    pub uniform_m: Option<u32>,
    /// Every modulus equals 1.
    pub is_trivial: bool,
}

pub fn classify(sys: &ResidueSystem, budget: PeriodBudget) -> Result<Classification, ZcoverError> {
    let p = multiplicity_profile(sys, budget)?;
    Ok(Classification {
        is_cover: p.min_w >= 1,
        is_exact_cover: p.min_w == 1 && p.max_w == 1,
        uniform_m: (p.min_w == p.max_w).then_some(p.min_w),
        is_trivial: sys.classes().iter().all(|c| c.modulus == 1),
    })
}

/// Exact asymptotic density of `⋃ (a_i + n_iℤ)`.
pub fn density_union(sys: &ResidueSystem, budget: PeriodBudget) -> Result<ExactRational, ZcoverError> {
    let p = multiplicity_profile(sys, budget)?;
    Ok(rational(p.covered, p.period))
}

/// Σ_{∅≠I⊆[k]} (−1)^{|I|+1} / lcm_{i∈I} n_i, the density of `⋃ n_iℤ`.
pub fn inclusion_exclusion_density<T: Scalar>(moduli: &[u64]) -> Result<T, ZcoverError> {
    let k = moduli.len();
    if k > MAX_INCLUSION_EXCLUSION_CLASSES {
        return Err(ZcoverError::TooManyClasses(k));
    }
    if moduli.contains(&0) {
        return Err(ZcoverError::ZeroModulus);
    }
    let mut sum = T::zero();
    for mask in 1u32..(1 << k) {
        let subset: Vec<u64> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| moduli[i]).collect();
        let l = arith::gcd_lcm(&subset)?.1;
        let term = T::one() / biguint_scalar::<T>(&l);
        if mask.count_ones() % 2 == 1 {
            sum = sum + term;
        } else {
            sum = sum - term;
        }
    }
    Ok(sum)
}

fn biguint_scalar<T: Scalar>(n: &BigUint) -> T {
    // Horner over 32-bit digits keeps exact scalars exact.
    let base = T::from_u64_exact(1 << 32);
    n.iter_u32_digits()
        .rev()
        .fold(T::zero(), |acc, d| acc * base.clone() + T::from_u64_exact(d as u64))
}

/// μ(D(R)): the totient sum over every divisor of some member of `R`. μ(D(∅)) = 0.
pub fn mu_of_divisor_closure(r: &[u64]) -> Result<u64, ZcoverError> {
    let mut closure = BTreeSet::new();
    for &m in r {
        closure.extend(arith::divisor_list(m)?);
    }
    closure
        .into_iter()
        .map(|d| arith::euler_phi(d).map_err(ZcoverError::from))
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma34Report {
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub primes: Vec<u64>,
    pub holds: bool,
}

/// Density of `⋃ n_iℤ` two ways: by scanning a period, and through the smooth-number form.
pub fn check_lemma_3_4(moduli: &[u64], budget: PeriodBudget) -> Result<Lemma34Report, ZcoverError> {
    let sys = ResidueSystem::from_pairs(&moduli.iter().map(|&n| (0, n)).collect::<Vec<_>>())?;
    let lhs = density_union(&sys, budget)?;
    let mut primes = BTreeSet::new();
    for &n in moduli {
        primes.extend(factorize(n)?.primes());
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    let smooth_factor: ExactRational = euler_product(&primes);
    let smooth_sum = inclusion_exclusion_density::<ExactRational>(moduli)? * &smooth_factor;
    let rhs = smooth_sum / smooth_factor;
    Ok(Lemma34Report {
        holds: lhs == rhs,
        lhs,
        rhs,
        primes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RogersReport {
    pub period: u64,
    pub shifted_count: u64,
    pub zeroed_count: u64,
    pub holds: bool,
}

/// Shifting residue classes never shrinks their union over a common period.
pub fn check_rogers(sys: &ResidueSystem, budget: PeriodBudget) -> Result<RogersReport, ZcoverError> {
    let shifted = multiplicity_profile(sys, budget)?;
    let zeroed = multiplicity_profile(&sys.zeroed(), budget)?;
    Ok(RogersReport {
        period: shifted.period,
        shifted_count: shifted.covered,
        zeroed_count: zeroed.covered,
        holds: shifted.covered >= zeroed.covered,
    })
}

/// Distinct primes of `lcm(moduli)` with their exponents α_t, ascending.
fn lcm_prime_exponents(moduli: &[u64]) -> Result<Vec<(u64, u32)>, ZcoverError> {
    let mut exps: BTreeMap<u64, u32> = BTreeMap::new();
    for &n in moduli {
        for (p, e) in factorize(n)?.factors {
            let slot = exps.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    Ok(exps.into_iter().collect())
}

fn ord(p: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

#[derive(Debug, Clone, PartialEq)]
pub struct Thm42Report {
    pub prime: u64,
    /// All distinct primes of the lcm with exponents, ascending.
    pub prime_exponents: Vec<(u64, u32)>,
    pub alpha: u32,
    pub lambda: Vec<u32>,
    pub beta: u32,
    pub epsilon: ExactRational,
    pub multiplicity: usize,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub holds_4_8: bool,
    /// Largest multiplicity among moduli with the full power of `prime`.
    pub top_multiplicity: usize,
    pub top_bound: ExactRational,
    pub top_bound_weak: ExactRational,
    pub holds_4_10: bool,
}

/// Index bound for a nontrivial uniform cover of ℤ at a designated prime of the lcm.
///
/// `prime` defaults to the largest prime of `lcm(n_i)`; `alpha` must be a positive value of
/// `ord_prime n_i`.
pub fn check_thm_4_2(
    sys: &ResidueSystem,
    alpha: u32,
    prime: Option<u64>,
    budget: PeriodBudget,
) -> Result<Thm42Report, ZcoverError> {
    let class = classify(sys, budget)?;
    if class.uniform_m.is_none() {
        return Err(ZcoverError::NotUniform);
    }
    if class.is_trivial {
        return Err(ZcoverError::Trivial);
    }
    let moduli = sys.moduli();
    let pe = lcm_prime_exponents(&moduli)?;
    let q = prime.unwrap_or(pe.last().expect("nontrivial system has a prime").0);
    let alpha_q = pe
        .iter()
        .find(|&&(p, _)| p == q)
        .ok_or(ZcoverError::PrimeNotDividing(q))?
        .1;
    let lambda: Vec<u32> = moduli
        .iter()
        .map(|&n| ord(q, n))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if alpha == 0 || !lambda.contains(&alpha) {
        return Err(ZcoverError::AlphaNotInLambda { alpha, lambda });
    }
    let beta = lambda.iter().copied().filter(|&l| l < alpha).max().unwrap_or(0);

    let one = ExactRational::one();
    let mut epsilon = one.clone() - rational(1, q.pow(alpha_q - alpha + 1));
    for &(p, a) in pe.iter().filter(|&&(p, _)| p != q) {
        epsilon *= one.clone() - rational(1, p.pow(a + 1));
    }
    let counts = modulus_counts(&moduli);
    let qa = q.pow(alpha);
    let multiplicity = counts
        .iter()
        .filter(|(&n, _)| n % qa == 0)
        .map(|(_, &c)| c)
        .max()
        .unwrap_or(0);
    let all_primes: Vec<u64> = pe.iter().map(|&(p, _)| p).collect();
    let product: ExactRational = euler_product(&all_primes);
    let lhs = integer(q.pow(alpha - beta));
    let rhs = &epsilon * integer(multiplicity as u64) * &product;

    let top_multiplicity = counts
        .iter()
        .filter(|(&n, _)| ord(q, n) == alpha_q)
        .map(|(_, &c)| c)
        .max()
        .unwrap_or(0);
    let mut top_bound = integer(q);
    for &(p, _) in pe.iter().filter(|&&(p, _)| p != q) {
        top_bound *= rational(p - 1, p);
    }
    let top_bound_weak = rational(q, pe.len() as u64);
    Ok(Thm42Report {
        prime: q,
        holds_4_8: lhs <= rhs,
        holds_4_10: integer(top_multiplicity as u64) >= top_bound && top_bound >= top_bound_weak,
        prime_exponents: pe,
        alpha,
        lambda,
        beta,
        epsilon,
        multiplicity,
        lhs,
        rhs,
        top_multiplicity,
        top_bound,
        top_bound_weak,
    })
}

/// [`check_thm_4_2`] for every prime of the lcm and every admissible `alpha`.
pub fn check_thm_4_2_all(
    sys: &ResidueSystem,
    budget: PeriodBudget,
) -> Result<Vec<Thm42Report>, ZcoverError> {
    let moduli = sys.moduli();
    let mut out = Vec::new();
    for (p, _) in lcm_prime_exponents(&moduli)? {
        let lambda: BTreeSet<u32> = moduli.iter().map(|&n| ord(p, n)).filter(|&e| e > 0).collect();
        for alpha in lambda {
            out.push(check_thm_4_2(sys, alpha, Some(p), budget)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpsonReport {
    pub multiplicity: usize,
    pub primes: Vec<u64>,
    pub largest_prime: u64,
    pub rhs: ExactRational,
    pub holds: bool,
}

/// `p_r ≤ M·∏ p_t/(p_t−1)` for an exact cover with more than one class.
pub fn check_simpson(sys: &ResidueSystem, budget: PeriodBudget) -> Result<SimpsonReport, ZcoverError> {
    if sys.len() < 2 {
        return Err(ZcoverError::SingleClass);
    }
    if !classify(sys, budget)?.is_exact_cover {
        return Err(ZcoverError::NotExactCover);
    }
    let primes: Vec<u64> = lcm_prime_exponents(&sys.moduli())?
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let multiplicity = sys.max_modulus_multiplicity();
    let largest_prime = *primes.last().expect("an exact cover with k > 1 has a modulus > 1");
    let rhs = integer(multiplicity as u64) * euler_product::<ExactRational>(&primes);
    Ok(SimpsonReport {
        holds: integer(largest_prime) <= rhs,
        multiplicity,
        primes,
        largest_prime,
        rhs,
    })
}

/// One refinement: replace class `index` (`a mod n`) by the `factor` classes `a + jn mod factor·n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitStep {
    pub index: usize,
    pub factor: u64,
}

/// Run a split script starting from `{0 mod 1}`. Every intermediate system is an exact cover.
pub fn generate_exact_cover(script: &[SplitStep]) -> Result<ResidueSystem, ZcoverError> {
    let mut classes = vec![ResidueClass {
        residue: 0,
        modulus: 1,
    }];
    for (step, s) in script.iter().enumerate() {
        if s.index >= classes.len() {
            return Err(ZcoverError::ScriptIndex {
                step,
                index: s.index,
                len: classes.len(),
            });
        }
        if s.factor < 2 {
            return Err(ZcoverError::SplitFactor {
                step,
                factor: s.factor,
            });
        }
        let c = classes[s.index];
        let modulus = c.modulus * s.factor;
        let refined = (0..s.factor).map(|j| ResidueClass {
            residue: c.residue + j * c.modulus,
            modulus,
        });
        classes.splice(s.index..=s.index, refined);
    }
    ResidueSystem::new(classes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargestModulusReport {
    pub largest: u64,
    pub multiplicity: usize,
    pub least_prime: u64,
    pub holds: bool,
}

/// In a nontrivial uniform cover the largest modulus occurs at least as often as its least prime.
pub fn largest_modulus_multiplicity(sys: &ResidueSystem) -> Result<LargestModulusReport, ZcoverError> {
    let moduli = sys.moduli();
    let largest = *moduli.last().expect("nonempty");
    if largest == 1 {
        return Err(ZcoverError::Trivial);
    }
    let multiplicity = moduli.iter().filter(|&&n| n == largest).count();
    let least_prime = factorize(largest)?.smallest_prime().expect("largest > 1");
    Ok(LargestModulusReport {
        largest,
        multiplicity,
        least_prime,
        holds: multiplicity as u64 >= least_prime,
    })
}

/// The two largest moduli coincide (exact covers with more than one class).
pub fn two_largest_moduli_equal(sys: &ResidueSystem) -> bool {
    let m = sys.moduli();
    m.len() >= 2 && m[m.len() - 1] == m[m.len() - 2]
}

/// Σ 1/n_i, exact.
pub fn reciprocal_modulus_sum(sys: &ResidueSystem) -> ExactRational {
    sys.classes()
        .iter()
        .fold(ExactRational::zero(), |acc, c| acc + rational(1, c.modulus))
}

/// Random system with `1..=max_classes` classes and moduli in `1..=max_modulus`.
pub fn random_system<R: Rng>(rng: &mut R, max_classes: usize, max_modulus: u64) -> ResidueSystem {
    let k = rng.gen_range(1..=max_classes);
    let classes = (0..k)
        .map(|_| {
            let modulus = rng.gen_range(1..=max_modulus);
            ResidueClass {
                residue: rng.gen_range(0..modulus),
                modulus,
            }
        })
        .collect();
    ResidueSystem { classes }
}

/// Random split script of `1..=max_steps` steps with factors in `2..=max_factor`.
pub fn random_script<R: Rng>(rng: &mut R, max_steps: usize, max_factor: u64) -> Vec<SplitStep> {
    let steps = rng.gen_range(1..=max_steps);
    let mut len = 1usize;
    (0..steps)
        .map(|_| {
            let step = SplitStep {
                index: rng.gen_range(0..len),
                factor: rng.gen_range(2..=max_factor),
            };
            len += step.factor as usize - 1;
            step
        })
        .collect()
}

/// Sorted, distinct positive integers drawn at random.
pub fn random_set<R: Rng>(rng: &mut R, max_len: usize, max_value: u64) -> Vec<u64> {
    let len = rng.gen_range(0..=max_len);
    let set: BTreeSet<u64> = (0..len).map(|_| rng.gen_range(1..=max_value)).collect();
    set.into_iter().collect()
}

impl MultiplicityProfile {
    /// Σ_x w(x) equals Σ_i period/n_i.
    pub fn double_count_holds(&self, sys: &ResidueSystem) -> bool {
        let expected: u64 = sys.classes().iter().map(|c| self.period / c.modulus).sum();
        expected == self.total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sys(pairs: &[(u64, u64)]) -> ResidueSystem {
        ResidueSystem::from_pairs(pairs).unwrap()
    }

    /// Independent scan: count classes containing x, over 0..lcm.
    fn brute_counts(s: &ResidueSystem) -> Vec<u32> {
        let l = arith::lcm_u64(&s.moduli()).unwrap();
        (0..l)
            .map(|x| s.classes().iter().filter(|c| c.contains(x)).count() as u32)
            .collect()
    }

    const B: PeriodBudget = PeriodBudget(DEFAULT_PERIOD_BUDGET);

    #[test]
    fn class_validation() {
        assert_eq!(
            ResidueClass::new(2, 2),
            Err(ZcoverError::ResidueOutOfRange { residue: 2, modulus: 2 })
        );
        assert_eq!(ResidueClass::new(0, 0), Err(ZcoverError::ZeroModulus));
        assert_eq!(ResidueSystem::new(vec![]), Err(ZcoverError::Empty));
    }

    #[test]
    fn profiles() {
        let p = multiplicity_profile(&sys(&[(0, 1)]), B).unwrap();
        assert_eq!((p.period, p.counts.as_deref(), p.min_w, p.max_w), (1, Some(&[1u32][..]), 1, 1));

        let s = sys(&[(0, 2), (1, 4), (3, 4)]);
        let p = multiplicity_profile(&s, B).unwrap();
        assert_eq!(p.period, 4);
        assert_eq!(p.counts.clone().unwrap(), brute_counts(&s));
        assert_eq!(p.counts.unwrap(), vec![1, 1, 1, 1]);

        let s = sys(&[(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)]);
        let p = multiplicity_profile(&s, B).unwrap();
        assert_eq!(p.counts.clone().unwrap(), brute_counts(&s));
        assert_eq!((p.min_w, p.max_w), (1, 2));
        assert!(p.double_count_holds(&s));
    }

    #[test]
    fn streaming_profile_matches_small_chunks() {
        // period 2·3·5·7·11·13·17 = 510510 ≤ full limit; 19 pushes past it
        let s = sys(&[(1, 2), (2, 3), (4, 5), (0, 7), (3, 11), (12, 13), (5, 17), (7, 19)]);
        let p = multiplicity_profile(&s, B).unwrap();
        assert_eq!(p.period, 9_699_690);
        assert!(p.counts.is_none());
        assert!(p.double_count_holds(&s));
        let d = density_union(&s, B).unwrap();
        let ie: ExactRational = {
            // independent classes with coprime moduli: 1 − ∏(1 − 1/n)
            let prod = [2u64, 3, 5, 7, 11, 13, 17, 19]
                .iter()
                .fold(ExactRational::one(), |acc, &n| acc * rational(n - 1, n));
            ExactRational::one() - prod
        };
        assert_eq!(d, ie);
    }

    #[test]
    fn budget_is_enforced() {
        let s = sys(&[(0, 1_000_003), (0, 1_000_033)]);
        assert!(matches!(
            multiplicity_profile(&s, B),
            Err(ZcoverError::PeriodTooLarge { .. })
        ));
        assert!(multiplicity_profile(&sys(&[(0, 12)]), PeriodBudget(11)).is_err());
    }

    #[test]
    fn classification() {
        let c = classify(&sys(&[(0, 2), (1, 4), (3, 4)]), B).unwrap();
        assert!(c.is_exact_cover && c.is_cover && !c.is_trivial);
        assert_eq!(c.uniform_m, Some(1));

        let c = classify(&sys(&[(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]), B).unwrap();
        assert_eq!(c.uniform_m, Some(2));
        assert!(!c.is_exact_cover && c.is_cover);

        let c = classify(&sys(&[(0, 3)]), B).unwrap();
        assert!(!c.is_cover);
        assert_eq!(c.uniform_m, None);

        let c = classify(&sys(&[(0, 1), (0, 1)]), B).unwrap();
        assert!(c.is_trivial);
        assert_eq!(c.uniform_m, Some(2));
    }

    #[test]
    fn densities() {
        assert_eq!(density_union(&sys(&[(0, 1)]), B).unwrap(), integer(1));
        assert_eq!(density_union(&sys(&[(0, 2), (0, 3)]), B).unwrap(), rational(2, 3));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let s = random_system(&mut rng, 6, 24).zeroed();
            let ie: ExactRational = inclusion_exclusion_density(&s.moduli()).unwrap();
            assert_eq!(density_union(&s, B).unwrap(), ie);
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_of_divisor_closure(&[]).unwrap(), 0);
        assert_eq!(mu_of_divisor_closure(&[12]).unwrap(), 12);
        assert_eq!(mu_of_divisor_closure(&[4, 6]).unwrap(), 1 + 1 + 2 + 2 + 2);
    }

    #[test]
    fn mu_scaling_and_counting() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let r = random_set(&mut rng, 8, 100);
            let k = rng.gen_range(1..=20u64);
            let kr: Vec<u64> = r.iter().map(|&x| k * x).collect();
            assert_eq!(
                mu_of_divisor_closure(&kr).unwrap(),
                k * mu_of_divisor_closure(&r).unwrap()
            );
        }
        for _ in 0..200 {
            let n = rng.gen_range(1..=10_000u64);
            let divs = arith::divisor_list(n).unwrap();
            let picks: Vec<u64> = (0..rng.gen_range(1..=4))
                .map(|_| divs[rng.gen_range(0..divs.len())])
                .collect();
            let quotients: Vec<u64> = picks.iter().map(|&d| n / d).collect();
            let count = (0..n).filter(|x| picks.iter().any(|&d| x % d == 0)).count() as u64;
            assert_eq!(mu_of_divisor_closure(&quotients).unwrap(), count);
        }
    }

    #[test]
    fn lemma_3_4_examples() {
        let r = check_lemma_3_4(&[1], B).unwrap();
        assert!(r.holds && r.lhs == integer(1));
        let r = check_lemma_3_4(&[2, 3], B).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, rational(2, 3));
        assert_eq!(r.rhs, rational(2, 3));
    }

    #[test]
    fn smooth_sum_truncation_approaches_reduced_form() {
        // Σ over P-smooth multiples of 2 or 3 with P = {2,3}, truncated; the reduced form is 2/3·3 = 2.
        let mut sum = 0.0f64;
        for a in 0..60 {
            for b in 0..40 {
                let n = 2f64.powi(a) * 3f64.powi(b);
                if a >= 1 || b >= 1 {
                    sum += 1.0 / n;
                }
            }
        }
        let exact: f64 = inclusion_exclusion_density::<f64>(&[2, 3]).unwrap() * euler_product::<f64>(&[2, 3]);
        assert!((sum - exact).abs() < 1e-9);
    }

    #[test]
    fn rogers_examples() {
        let r = check_rogers(&sys(&[(0, 2), (0, 4)]), B).unwrap();
        assert_eq!(r.shifted_count, r.zeroed_count);
        let r = check_rogers(&sys(&[(1, 2), (0, 4)]), B).unwrap();
        assert_eq!((r.period, r.shifted_count, r.zeroed_count, r.holds), (4, 3, 2, true));
    }

    #[test]
    fn thm_4_2_examples() {
        let s = sys(&[(0, 2), (1, 4), (3, 4)]);
        let r = check_thm_4_2(&s, 2, None, B).unwrap();
        assert_eq!(r.lambda, vec![1, 2]);
        assert_eq!(r.beta, 1);
        assert_eq!(r.epsilon, rational(1, 2));
        assert_eq!(r.multiplicity, 2);
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (integer(2), integer(2)));
        assert!(r.holds_4_8);

        let r = check_thm_4_2(&s, 1, None, B).unwrap();
        assert_eq!(r.beta, 0);
        assert_eq!(r.epsilon, rational(3, 4));
        assert_eq!(r.multiplicity, 2);
        assert_eq!(r.lhs, integer(2));
        assert_eq!(r.rhs, integer(3));
        assert!(r.holds_4_8);

        assert_eq!(r.top_multiplicity, 2);
        assert_eq!(r.top_bound_weak, integer(2));
        assert!(r.holds_4_10);

        assert!(matches!(
            check_thm_4_2(&s, 3, None, B),
            Err(ZcoverError::AlphaNotInLambda { .. })
        ));
        assert_eq!(check_thm_4_2(&s, 1, Some(3), B), Err(ZcoverError::PrimeNotDividing(3)));
        assert_eq!(
            check_thm_4_2(&sys(&[(0, 2), (0, 4)]), 1, None, B),
            Err(ZcoverError::NotUniform)
        );
        assert_eq!(check_thm_4_2(&sys(&[(0, 1)]), 1, None, B), Err(ZcoverError::Trivial));
    }

    #[test]
    fn simpson_examples() {
        let r = check_simpson(&sys(&[(0, 2), (1, 4), (3, 4)]), B).unwrap();
        assert_eq!((r.multiplicity, r.largest_prime), (2, 2));
        assert_eq!(r.rhs, integer(4));
        assert!(r.holds);
        let r = check_simpson(&sys(&[(0, 2), (1, 2)]), B).unwrap();
        assert_eq!(r.rhs, integer(4));
        assert!(r.holds);
        assert_eq!(check_simpson(&sys(&[(0, 2)]), B), Err(ZcoverError::SingleClass));
        assert_eq!(
            check_simpson(&sys(&[(0, 2), (0, 2)]), B),
            Err(ZcoverError::NotExactCover)
        );
    }

    #[test]
    fn generator() {
        assert_eq!(generate_exact_cover(&[]).unwrap(), sys(&[(0, 1)]));
        let s = generate_exact_cover(&[
            SplitStep { index: 0, factor: 2 },
            SplitStep { index: 1, factor: 2 },
        ])
        .unwrap();
        assert_eq!(s, sys(&[(0, 2), (1, 4), (3, 4)]));
        assert!(matches!(
            generate_exact_cover(&[SplitStep { index: 1, factor: 2 }]),
            Err(ZcoverError::ScriptIndex { .. })
        ));
        assert!(matches!(
            generate_exact_cover(&[SplitStep { index: 0, factor: 1 }]),
            Err(ZcoverError::SplitFactor { .. })
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let script = random_script(&mut rng, 6, 5);
            let s = generate_exact_cover(&script).unwrap();
            let counts = brute_counts(&s);
            assert!(counts.iter().all(|&w| w == 1));
            assert!(classify(&s, B).unwrap().is_exact_cover);
            assert_eq!(reciprocal_modulus_sum(&s), integer(1));
        }
    }

    #[test]
    fn largest_modulus() {
        let r = largest_modulus_multiplicity(&sys(&[(0, 2), (1, 4), (3, 4)])).unwrap();
        assert_eq!((r.largest, r.multiplicity, r.least_prime, r.holds), (4, 2, 2, true));
        assert!(two_largest_moduli_equal(&sys(&[(0, 2), (1, 4), (3, 4)])));
        assert!(!two_largest_moduli_equal(&sys(&[(0, 2), (1, 4)])));
    }
}
