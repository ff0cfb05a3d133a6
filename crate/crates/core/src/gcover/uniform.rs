//! Index inequalities for nontrivial uniform covers.

use num_traits::ToPrimitive;

use super::{index_multiplicity_max, weight_profile, CosetSystem, GcoverError};
use crate::arith::factorize;
use crate::bounds::bound_report;
use crate::group::{core_of, has_normal_sylow, is_solvable, is_subnormal, quotient, quotient_by_core, FiniteGroup};
use crate::{integer, rational, ExactRational};

/// Slack for the binary64 comparison of the least-index bound.
pub const LOG_BOUND_SLACK: f64 = 1e-9;

/// Per-entry group-theoretic facts shared by every check below.
struct EntryFacts {
    subnormal: Vec<bool>,
    core_quotient_solvable: Vec<bool>,
    /// `G/(Gᵢ)_G` has a normal Sylow subgroup for the designated prime.
    core_quotient_normal_sylow: Vec<bool>,
    /// `Ḡ = G/(⋂Gᵢ)_G` is solvable with a normal Sylow subgroup for the largest prime of `|Ḡ|`.
    bar_solvable_normal_top_sylow: bool,
    bar_order: usize,
    bar: FiniteGroup,
}

fn entry_facts(sys: &CosetSystem, p: u64) -> Result<EntryFacts, GcoverError> {
    let g = sys.group();
    let mut subnormal = Vec::with_capacity(sys.len());
    let mut core_quotient_solvable = Vec::with_capacity(sys.len());
    let mut core_quotient_normal_sylow = Vec::with_capacity(sys.len());
    for e in sys.entries() {
        subnormal.push(is_subnormal(g, &e.subgroup)?.subnormal);
        let q = quotient_by_core(g, &e.subgroup)?;
        core_quotient_solvable.push(is_solvable(&q.group));
        core_quotient_normal_sylow.push(has_normal_sylow(&q.group, p)?);
    }
    let inter = sys.entries().iter().fold(g.full_subgroup(), |acc, e| acc.intersection(&e.subgroup));
    let bar = quotient(g, &core_of(g, &inter)?)?.group;
    let bar_order = bar.order();
    let top = factorize(bar_order as u64).expect("positive").largest_prime();
    let bar_solvable_normal_top_sylow = match top {
        Some(q) => is_solvable(&bar) && has_normal_sylow(&bar, q)?,
        None => true,
    };
    Ok(EntryFacts {
        subnormal,
        core_quotient_solvable,
        core_quotient_normal_sylow,
        bar_solvable_normal_top_sylow,
        bar_order,
        bar,
    })
}

/// The squarefree-order bound on the multiplicity of some index divisible by the largest prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeReport {
    /// Largest multiplicity among indices divisible by `p_r`.
    pub best_count: usize,
    /// `p₁⋯p_r / ∏_{t<r}(p_t + 1)`.
    pub bound: ExactRational,
    /// `max{p₁, 2p_r/(r+1)}`.
    pub floor_bound: ExactRational,
    pub holds: bool,
}

/// A pair of equal indices divisible by the largest prime `p` of the index lcm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualIndexPairReport {
    pub prime: u64,
    pub hypothesis_holds: bool,
    pub pair: Option<(usize, usize)>,
    /// `pair` exists, or the hypothesis fails.
    pub holds: bool,
}

/// Multiplicity lower bounds for the largest and smallest primes of the index lcm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub hypothesis_holds: bool,
    /// `M`, the largest multiplicity of any index.
    pub multiplicity_bound: usize,
    /// `p_*`.
    pub least_prime: u64,
    /// `p^*`.
    pub largest_prime: u64,
    /// `1 + ⌊p^* ∏_{p|N}(p−1)/p⌋`.
    pub required: u64,
    /// Largest multiplicity among indices divisible by `p^*`.
    pub best_multiple_count: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformCoverReport {
    pub m: u32,
    /// Indices in ascending order.
    pub indices: Vec<usize>,
    /// `(p_t, α_t)` for the lcm of the indices, primes ascending.
    pub primes: Vec<(u64, u32)>,
    /// `p_r`, the largest prime of the lcm.
    pub prime: u64,
    pub beta: u32,
    pub epsilon: ExactRational,
    pub m_r: usize,
    /// `p_r^β`.
    pub lhs: ExactRational,
    /// `ε M_r ∏ p_t/(p_t−1)`.
    pub rhs: ExactRational,
    pub holds: bool,
    pub condition_a: bool,
    /// Condition (a) holds only through an empty family.
    pub condition_a_vacuous: bool,
    pub condition_b: bool,
    pub condition_c: bool,
    /// `"a+b"`, `"c"` or `"a+b,c"` when the inequality is asserted.
    pub justified_by: Option<String>,
    /// Present when `|G|` is squarefree.
    pub squarefree: Option<SquarefreeReport>,
    pub equal_index_pair: EqualIndexPairReport,
    pub multiplicity: MultiplicityReport,
}

impl UniformCoverReport {
    pub fn conditions_apply(&self) -> bool {
        self.justified_by.is_some()
    }

    /// Every asserted statement holds.
    pub fn all_asserted_hold(&self) -> bool {
        (!self.conditions_apply() || self.holds)
            && self.squarefree.as_ref().is_none_or(|s| s.holds)
            && self.equal_index_pair.holds
            && (!self.multiplicity.hypothesis_holds || self.multiplicity.holds)
    }
}

fn ord(n: u64, p: u64) -> u32 {
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

fn require_uniform_nontrivial(sys: &CosetSystem) -> Result<u32, GcoverError> {
    let profile = weight_profile(sys);
    let m = profile.uniform_m.ok_or(GcoverError::NotUniform)?;
    if profile.is_trivial {
        return Err(GcoverError::Trivial);
    }
    Ok(m)
}

fn lcm_factors(indices: &[usize]) -> Vec<(u64, u32)> {
    let lcm = indices.iter().fold(1u64, |a, &b| num_integer::lcm(a, b as u64));
    factorize(lcm).expect("positive").factors
}

pub fn check_thm_4_1(sys: &CosetSystem) -> Result<UniformCoverReport, GcoverError> {
    let m = require_uniform_nontrivial(sys)?;
    let g = sys.group();
    let raw = sys.indices();
    let mut indices = raw.clone();
    indices.sort_unstable();
    let primes = lcm_factors(&raw);
    let &(pr, alpha_r) = primes.last().expect("nontrivial cover has an index above 1");
    let r = primes.len();

    let beta = raw.iter().map(|&n| ord(n as u64, pr)).filter(|&o| o >= 1).min().expect("p_r divides some index");
    let mut epsilon = integer(1) - rational(1, pr.pow(alpha_r - beta + 1));
    for &(p, a) in &primes[..r - 1] {
        epsilon *= integer(1) - rational(1, p.pow(a + 1));
    }
    let m_r = index_multiplicity_max(&raw, |n| (n as u64).is_multiple_of(pr));
    let euler = primes.iter().fold(integer(1), |acc, &(p, _)| acc * rational(p, p - 1));
    let lhs = integer(pr.pow(beta));
    let rhs = epsilon.clone() * integer(m_r as u64) * euler.clone();
    let holds = lhs <= rhs;

    let facts = entry_facts(sys, pr)?;
    let in_i: Vec<bool> = raw.iter().map(|&n| (n as u64).is_multiple_of(pr)).collect();
    let k = sys.len();
    let all_sub_i = (0..k).filter(|&i| in_i[i]).all(|i| facts.subnormal[i]);
    let solv_i = (0..k).filter(|&i| in_i[i]).all(|i| facts.core_quotient_solvable[i]);
    let solv_not_i = (0..k).filter(|&i| !in_i[i]).all(|i| facts.core_quotient_solvable[i]);
    let not_i_empty = in_i.iter().all(|&b| b);
    let condition_a = all_sub_i || solv_i || solv_not_i;
    let condition_a_vacuous = !all_sub_i && !solv_i && not_i_empty;
    let condition_b = (0..k)
        .filter(|&i| raw[i] as u64 > pr && !in_i[i])
        .all(|i| facts.subnormal[i] || facts.core_quotient_normal_sylow[i]);
    let condition_c = facts.bar_solvable_normal_top_sylow;
    let justified_by = match (condition_a && condition_b, condition_c) {
        (true, true) => Some("a+b,c".to_string()),
        (true, false) => Some("a+b".to_string()),
        (false, true) => Some("c".to_string()),
        (false, false) => None,
    };

    let squarefree = factorize(g.order() as u64).expect("positive").is_squarefree().then(|| {
        let best_count = index_multiplicity_max(&raw, |n| (n as u64).is_multiple_of(pr));
        let num: u64 = primes.iter().map(|&(p, _)| p).product();
        let den: u64 = primes[..r - 1].iter().map(|&(p, _)| p + 1).product();
        let bound = rational(num, den);
        let p1 = integer(primes[0].0);
        let second = rational(2 * pr, r as u64 + 1);
        let floor_bound = if p1 > second { p1 } else { second };
        let holds = integer(best_count as u64) >= bound && bound >= floor_bound;
        SquarefreeReport { best_count, bound, floor_bound, holds }
    });

    // the largest prime of the lcm exceeds r and divides |Ḡ|
    let big_subnormal = (0..k).filter(|&i| raw[i] as u64 >= pr).all(|i| facts.subnormal[i]);
    let bar_normal_sylow = is_solvable(&facts.bar) && has_normal_sylow(&facts.bar, pr)?;
    let pair_hypothesis = (facts.bar_order as u64).is_multiple_of(pr) && (big_subnormal || bar_normal_sylow);
    let pair = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .find(|&(i, j)| raw[i] == raw[j] && (raw[i] as u64).is_multiple_of(pr));
    let equal_index_pair =
        EqualIndexPairReport { prime: pr, hypothesis_holds: pair_hypothesis, pair, holds: !pair_hypothesis || pair.is_some() };

    let multiplicity_bound = index_multiplicity_max(&raw, |_| true);
    let least_prime = primes[0].0;
    let density = primes.iter().fold(integer(pr), |acc, &(p, _)| acc * rational(p - 1, p));
    let required = 1 + density.floor().to_integer().to_u64().expect("small integer");
    let best_multiple_count = m_r;
    let mult_hypothesis = big_subnormal || facts.bar_solvable_normal_top_sylow;
    let multiplicity = MultiplicityReport {
        hypothesis_holds: mult_hypothesis,
        multiplicity_bound,
        least_prime,
        largest_prime: pr,
        required,
        best_multiple_count,
        holds: multiplicity_bound as u64 >= least_prime
            && best_multiple_count as u64 >= required
            && required >= least_prime,
    };

    Ok(UniformCoverReport {
        m,
        indices,
        primes,
        prime: pr,
        beta,
        epsilon,
        m_r,
        lhs,
        rhs,
        holds,
        condition_a,
        condition_a_vacuous,
        condition_b,
        condition_c,
        justified_by,
        squarefree,
        equal_index_pair,
        multiplicity,
    })
}

/// Prime and least-index bounds in terms of the multiplicity bound `M` and `c(M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeastIndexBoundsReport {
    pub multiplicity_bound: u64,
    pub c: u64,
    pub pi_c: u64,
    pub alpha: u32,
    pub theta_c: f64,
    pub largest_index_prime: u64,
    pub distinct_primes: usize,
    pub log_least_index: f64,
    /// `α(M) θ(c(M))`.
    pub alpha_theta: f64,
    /// Every index prime is below `c(M)`.
    pub primes_below_c: bool,
    /// The number of distinct index primes is at most `π(c(M))`.
    pub prime_count_bounded: bool,
    /// `log n₁ ≤ α(M) θ(c(M))`, with slack [`LOG_BOUND_SLACK`].
    pub least_index_bounded: bool,
}

impl LeastIndexBoundsReport {
    pub fn holds(&self) -> bool {
        self.primes_below_c && self.prime_count_bounded && self.least_index_bounded
    }
}

pub fn check_thm_4_3_bounds(sys: &CosetSystem) -> Result<LeastIndexBoundsReport, GcoverError> {
    require_uniform_nontrivial(sys)?;
    let raw = sys.indices();
    let m = sys.max_index_multiplicity();
    if m < 2 {
        return Err(GcoverError::MultiplicityTooSmall(m));
    }
    let b = bound_report(m as u64)?;
    let primes = lcm_factors(&raw);
    let largest_index_prime = primes.last().map_or(1, |&(p, _)| p);
    let n1 = *raw.iter().min().expect("nonempty");
    let log_least_index = (n1 as f64).ln();
    Ok(LeastIndexBoundsReport {
        multiplicity_bound: m as u64,
        c: b.c,
        pi_c: b.pi_c,
        alpha: b.alpha,
        theta_c: b.theta_c,
        largest_index_prime,
        distinct_primes: primes.len(),
        log_least_index,
        alpha_theta: b.alpha_theta,
        primes_below_c: largest_index_prime < b.c,
        prime_count_bounded: primes.len() as u64 <= b.pi_c,
        least_index_bounded: log_least_index <= b.alpha_theta + LOG_BOUND_SLACK,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjecture41Report {
    pub n_max: usize,
    pub multiplicity: usize,
    pub least_prime: Option<u64>,
    /// Nontrivial uniform cover with every subgroup subnormal.
    pub precondition_met: bool,
    pub holds: bool,
    pub notes: Vec<String>,
}

/// Whether the largest index occurs at least as often as its least prime divisor.
pub fn probe_conjecture_4_1(sys: &CosetSystem) -> Result<Conjecture41Report, GcoverError> {
    let g = sys.group();
    let profile = weight_profile(sys);
    let mut notes = Vec::new();
    if profile.uniform_m.is_none() {
        notes.push("not a uniform cover".to_string());
    }
    if profile.is_trivial {
        notes.push("trivial cover".to_string());
    }
    let mut all_subnormal = true;
    for e in sys.entries() {
        if !is_subnormal(g, &e.subgroup)?.subnormal {
            all_subnormal = false;
        }
    }
    if !all_subnormal {
        notes.push("some subgroup is not subnormal".to_string());
    }
    let raw = sys.indices();
    let n_max = *raw.iter().max().expect("nonempty");
    let multiplicity = raw.iter().filter(|&&n| n == n_max).count();
    let least_prime = factorize(n_max as u64).expect("positive").smallest_prime();
    let holds = least_prime.is_none_or(|p| multiplicity as u64 >= p);
    Ok(Conjecture41Report {
        n_max,
        multiplicity,
        least_prime,
        precondition_met: notes.is_empty(),
        holds,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::z4_partition;
    use super::super::{CosetEntry, CosetSystem};
    use super::*;
    use crate::group::{catalog_group, cyclic_group};

    #[test]
    fn z4_partition_values() {
        let g = cyclic_group(4);
        let sys = z4_partition(&g);
        let r = check_thm_4_1(&sys).unwrap();
        assert_eq!(r.prime, 2);
        assert_eq!(r.primes, vec![(2, 2)]);
        assert_eq!(r.beta, 1);
        assert_eq!(r.epsilon, rational(3, 4));
        assert_eq!(r.m_r, 2);
        assert_eq!(r.lhs, integer(2));
        assert_eq!(r.rhs, integer(3));
        assert!(r.holds && r.condition_a && r.condition_b && r.condition_c);
        assert_eq!(r.justified_by.as_deref(), Some("a+b,c"));
        assert_eq!(r.equal_index_pair.pair, Some((1, 2)));
        assert!(r.equal_index_pair.hypothesis_holds);
        assert!(r.squarefree.is_none());
        assert_eq!(r.multiplicity.required, 2);
        assert!(r.multiplicity.holds);
        assert!(r.all_asserted_hold());

        let c = probe_conjecture_4_1(&sys).unwrap();
        assert_eq!((c.n_max, c.multiplicity, c.least_prime), (4, 2, Some(2)));
        assert!(c.holds && c.precondition_met);

        let b = check_thm_4_3_bounds(&sys).unwrap();
        assert_eq!(b.c, 9);
        assert!(b.holds());
    }

    #[test]
    fn rejects_nonuniform_and_trivial() {
        let g = cyclic_group(4);
        let trivial = CosetSystem::new(&g, vec![CosetEntry::new(0, g.full_subgroup())]).unwrap();
        assert_eq!(check_thm_4_1(&trivial), Err(GcoverError::Trivial));
        let c = probe_conjecture_4_1(&trivial).unwrap();
        assert!(!c.precondition_met);
        let partial = CosetSystem::new(&g, vec![CosetEntry::new(0, g.generate(&[2]))]).unwrap();
        assert_eq!(check_thm_4_1(&partial), Err(GcoverError::NotUniform));
    }

    #[test]
    fn squarefree_group() {
        // the three cosets of a transposition subgroup, then the two cosets of A3
        let g = catalog_group("S3").unwrap();
        let a3 = crate::group::sylow_subgroup(g, 3).unwrap();
        let t = g.subgroups().unwrap().iter().find(|h| h.size() == 2).unwrap().clone();
        let entries = g.left_transversal(&t).into_iter().map(|a| CosetEntry::new(a, t.clone())).collect();
        let sys = CosetSystem::new(g, entries).unwrap();
        assert_eq!(weight_profile(&sys).uniform_m, Some(1));
        let r = check_thm_4_1(&sys).unwrap();
        let sf = r.squarefree.clone().unwrap();
        assert_eq!(sf.bound, integer(3));
        assert_eq!(sf.best_count, 3);
        assert!(sf.holds);
        assert!(r.all_asserted_hold());
        let entries = g.left_transversal(&a3).into_iter().map(|a| CosetEntry::new(a, a3.clone())).collect();
        let two = CosetSystem::new(g, entries).unwrap();
        assert!(check_thm_4_1(&two).unwrap().all_asserted_hold());
    }
}
