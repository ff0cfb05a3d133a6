//! Lower bounds for unions of cosets of subgroups containing a fixed subgroup `H`.

use std::fmt;

use num_integer::Integer;

use super::{validate_entries, CosetEntry, GcoverError};
use crate::arith::{divisor_reciprocal_sum, factorize};
use crate::group::{
    is_solvable, is_subnormal, prime_quotient_series, quotient, quotient_by_core, FiniteGroup, Subgroup,
};
use crate::{integer, ElementId, ExactRational};

/// Which hypotheses of the coset-count bound hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thm31Hypothesis {
    /// Every `Gᵢ` is subnormal in `G`.
    pub all_subnormal: bool,
    /// A series from `H` to `G` with each step normal of prime index exists.
    pub prime_series: bool,
}

impl Thm31Hypothesis {
    pub fn applies(&self) -> bool {
        self.all_subnormal || self.prime_series
    }

    pub fn compute(g: &FiniteGroup, h: &Subgroup, entries: &[CosetEntry]) -> Result<Self, GcoverError> {
        let mut all_subnormal = true;
        for e in entries {
            if !is_subnormal(g, &e.subgroup)?.subnormal {
                all_subnormal = false;
                break;
            }
        }
        let prime_series = prime_quotient_series(g, h, None)?.is_some();
        Ok(Thm31Hypothesis { all_subnormal, prime_series })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm31Report {
    /// Number of left `H`-cosets inside `⋃ aᵢGᵢ`.
    pub lhs: usize,
    /// `|{0 ≤ n < [G:H] : [G:Gᵢ] | n for some i}|`.
    pub rhs: usize,
    pub holds: bool,
    pub hypothesis: Thm31Hypothesis,
}

/// Compares the number of `H`-cosets covered by `⋃ aᵢGᵢ` with the count of multiples of the
/// indices below `[G:H]`. When neither hypothesis holds the outcome is informational.
pub fn check_union_lower_bound(
    g: &FiniteGroup,
    h: &Subgroup,
    entries: &[CosetEntry],
) -> Result<Thm31Report, GcoverError> {
    validate_entries(g, entries)?;
    g.check_parent(h).map_err(GcoverError::Group)?;
    for (i, e) in entries.iter().enumerate() {
        if !h.is_subset_of(&e.subgroup) {
            return Err(GcoverError::NotContaining(i));
        }
    }
    let hypothesis = Thm31Hypothesis::compute(g, h, entries)?;
    Ok(union_lower_bound_with(g, h, entries, hypothesis))
}

/// [`check_union_lower_bound`] with the hypothesis already known; entries must contain `h`.
pub(crate) fn union_lower_bound_with(
    g: &FiniteGroup,
    h: &Subgroup,
    entries: &[CosetEntry],
    hypothesis: Thm31Hypothesis,
) -> Thm31Report {
    let mut leaders = vec![false; g.order()];
    for e in entries {
        for x in e.subgroup.members() {
            leaders[g.coset_leader(g.mul(e.rep, x), h) as usize] = true;
        }
    }
    let lhs = leaders.iter().filter(|&&b| b).count();
    let hi = h.index();
    let indices: Vec<usize> = entries.iter().map(CosetEntry::index).collect();
    let rhs = (0..hi).filter(|n| indices.iter().any(|d| n % d == 0)).count();
    Thm31Report { lhs, rhs, holds: lhs >= rhs, hypothesis }
}

/// Largest `[G:H]` accepted by [`union_bound_sweep`].
pub const SWEEP_INDEX_CAP: usize = 64;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnionSweepReport {
    pub instances: u64,
    /// Instances where a hypothesis applies.
    pub asserted: u64,
    /// Asserted instances where the inequality fails.
    pub violations: u64,
    /// Hypothesis-free instances where the inequality fails; logged, never asserted.
    pub informational_failures: u64,
    pub first_violation: Option<String>,
}

impl UnionSweepReport {
    pub fn merge(&mut self, other: UnionSweepReport) {
        self.instances += other.instances;
        self.asserted += other.asserted;
        self.violations += other.violations;
        self.informational_failures += other.informational_failures;
        if self.first_violation.is_none() {
            self.first_violation = other.first_violation;
        }
    }
}

/// Runs the union lower bound on every multiset of at most `k_max` cosets of overgroups of `H`,
/// for every subgroup `H` (or only the trivial one).
pub fn union_bound_sweep(g: &FiniteGroup, k_max: usize, trivial_h_only: bool) -> Result<UnionSweepReport, GcoverError> {
    let lattice = g.subgroups()?;
    let mut subnormal = Vec::with_capacity(lattice.len());
    for s in lattice {
        subnormal.push(is_subnormal(g, s)?.subnormal);
    }
    let mut report = UnionSweepReport::default();
    for h in lattice {
        if trivial_h_only && !h.is_trivial() {
            continue;
        }
        let hi = h.index();
        if hi > SWEEP_INDEX_CAP {
            continue;
        }
        let prime_series = prime_quotient_series(g, h, None)?.is_some();
        let leaders = g.left_transversal(h);
        let slot = |x: ElementId| leaders.binary_search(&g.coset_leader(x, h)).expect("leader listed");
        // (lattice position, representative, covered H-cosets, multiples of the index below [G:H])
        let mut cosets: Vec<(usize, ElementId, u64, u64)> = Vec::new();
        for (si, s) in lattice.iter().enumerate().filter(|(_, s)| h.is_subset_of(s)) {
            let n = s.index();
            let multiples = (0..hi).step_by(n).fold(0u64, |acc, j| acc | 1 << j);
            for a in g.left_transversal(s) {
                let mask = s.members().fold(0u64, |acc, x| acc | 1 << slot(g.mul(a, x)));
                cosets.push((si, a, mask, multiples));
            }
        }
        let mut stack: Vec<usize> = Vec::new();
        sweep_tuples(&cosets, k_max, 0, &mut stack, &mut |chosen| {
            report.instances += 1;
            let mut covered = 0u64;
            let mut multiples = 0u64;
            let mut all_subnormal = true;
            for &c in chosen {
                covered |= cosets[c].2;
                multiples |= cosets[c].3;
                all_subnormal &= subnormal[cosets[c].0];
            }
            let lhs = covered.count_ones();
            let rhs = multiples.count_ones();
            if all_subnormal || prime_series {
                report.asserted += 1;
                if lhs < rhs {
                    report.violations += 1;
                    if report.first_violation.is_none() {
                        let desc: Vec<String> = chosen
                            .iter()
                            .map(|&c| format!("{}+<{:?}>", cosets[c].1, lattice[cosets[c].0].members().collect::<Vec<_>>()))
                            .collect();
                        report.first_violation =
                            Some(format!("H={:?} entries {} lhs {lhs} rhs {rhs}", h.members().collect::<Vec<_>>(), desc.join(" ")));
                    }
                }
            } else if lhs < rhs {
                report.informational_failures += 1;
            }
        });
    }
    Ok(report)
}

fn sweep_tuples(
    cosets: &[(usize, ElementId, u64, u64)],
    k_max: usize,
    start: usize,
    stack: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if stack.len() == k_max {
        return;
    }
    for c in start..cosets.len() {
        stack.push(c);
        visit(stack);
        sweep_tuples(cosets, k_max, c, stack, visit);
        stack.pop();
    }
}

/// The four situations under which the gcd/divisor-sum bound is asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Thm32Case {
    /// All `Gᵢ` subnormal and `H` normal.
    A,
    /// All `Gᵢ` normal and `H` subnormal.
    B,
    /// All `Gᵢ` normal and `G/⋂Gᵢ` solvable.
    C,
    /// `H` normal, and `G/H` or every `G/(Gᵢ)_G` solvable.
    D,
}

impl fmt::Display for Thm32Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Thm32Case::A => "a",
            Thm32Case::B => "b",
            Thm32Case::C => "c",
            Thm32Case::D => "d",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm32Report {
    /// Every case whose hypotheses hold.
    pub cases: Vec<Thm32Case>,
    /// First applicable case in the order a, b, c, d; `None` makes the result informational.
    pub case: Option<Thm32Case>,
    /// Case d holds through both `G/H` and every `G/(Gᵢ)_G` being solvable.
    pub d_both_branches: bool,
    /// `(n₁,…,n_k) / (h, n₁,…,n_k)`.
    pub lhs: ExactRational,
    /// `sup_n |{i : nᵢ = n}| · Σ_{d | [n₁,…,n_k]/(n₁,…,n_k)} 1/d`.
    pub rhs: ExactRational,
    pub sup_multiplicity: usize,
    pub holds: bool,
}

pub fn check_thm_3_2(g: &FiniteGroup, h: &Subgroup, entries: &[CosetEntry]) -> Result<Thm32Report, GcoverError> {
    if entries.is_empty() {
        return Err(GcoverError::Empty);
    }
    validate_entries(g, entries)?;
    g.check_parent(h).map_err(GcoverError::Group)?;

    let mut union = vec![false; g.order()];
    for e in entries {
        for x in e.subgroup.members() {
            union[g.mul(e.rep, x) as usize] = true;
        }
    }
    let aligned = g
        .elements()
        .filter(|&x| union[x as usize])
        .all(|x| h.members().all(|y| union[g.mul(x, y) as usize]));
    if !aligned {
        return Err(GcoverError::NotAligned);
    }

    let indices: Vec<u64> = entries.iter().map(|e| e.index() as u64).collect();
    let hi = h.index() as u64;
    let gcd_n = indices.iter().fold(0u64, |a, &b| a.gcd(&b));
    let lcm_n = indices.iter().fold(1u64, |a, &b| a.lcm(&b));
    let gcd_hn = gcd_n.gcd(&hi);
    let lhs = integer(gcd_n / gcd_hn);
    let sup_multiplicity = super::index_multiplicity_max(&indices.iter().map(|&n| n as usize).collect::<Vec<_>>(), |_| true);
    let sum: ExactRational = divisor_reciprocal_sum(&factorize(lcm_n / gcd_n).expect("positive").factors);
    let rhs = integer(sup_multiplicity as u64) * sum;

    let mut all_subnormal = true;
    let mut all_normal = true;
    for e in entries {
        all_normal &= g.is_normal(&e.subgroup);
        all_subnormal &= is_subnormal(g, &e.subgroup)?.subnormal;
    }
    let h_normal = g.is_normal(h);
    let h_subnormal = h_normal || is_subnormal(g, h)?.subnormal;

    let mut cases = Vec::new();
    if all_subnormal && h_normal {
        cases.push(Thm32Case::A);
    }
    if all_normal && h_subnormal {
        cases.push(Thm32Case::B);
    }
    if all_normal {
        let inter = entries.iter().fold(g.full_subgroup(), |acc, e| acc.intersection(&e.subgroup));
        if is_solvable(&quotient(g, &inter)?.group) {
            cases.push(Thm32Case::C);
        }
    }
    let mut d_both_branches = false;
    if h_normal {
        let quotient_solvable = is_solvable(&quotient(g, h)?.group);
        let mut cores_solvable = true;
        for e in entries {
            if !is_solvable(&quotient_by_core(g, &e.subgroup)?.group) {
                cores_solvable = false;
                break;
            }
        }
        if quotient_solvable || cores_solvable {
            cases.push(Thm32Case::D);
            d_both_branches = quotient_solvable && cores_solvable;
        }
    }
    let holds = lhs <= rhs;
    Ok(Thm32Report { case: cases.first().copied(), cases, d_both_branches, lhs, rhs, sup_multiplicity, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, catalog_group, cyclic_group};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn z12_example() {
        let g = cyclic_group(12);
        let entries = vec![CosetEntry::new(1, g.generate(&[2])), CosetEntry::new(0, g.generate(&[3]))];
        let r = check_union_lower_bound(&g, &g.trivial_subgroup(), &entries).unwrap();
        assert_eq!((r.lhs, r.rhs), (8, 8));
        assert!(r.holds && r.hypothesis.applies());
    }

    #[test]
    fn full_subgroups() {
        let g = catalog_group("A4").unwrap();
        for h in g.subgroups().unwrap() {
            let entries = vec![CosetEntry::new(0, g.full_subgroup())];
            let r = check_union_lower_bound(g, h, &entries).unwrap();
            assert_eq!((r.lhs, r.rhs), (h.index(), h.index()));
            let r = check_thm_3_2(g, h, &entries).unwrap();
            assert_eq!(r.lhs, integer(1));
            assert!(r.holds);
        }
        let g = cyclic_group(6);
        let bad = vec![CosetEntry::new(0, g.generate(&[2]))];
        assert_eq!(check_union_lower_bound(&g, &g.generate(&[3]), &bad), Err(GcoverError::NotContaining(0)));
    }

    #[test]
    fn hypothesis_free_example_is_reported() {
        // in A4 an order-3 subgroup is not subnormal and has no overgroup of order 6 or 9
        let g = catalog_group("A4").unwrap();
        let c3 = g.subgroups().unwrap().iter().find(|h| h.size() == 3).unwrap().clone();
        let r = check_union_lower_bound(g, &c3, &[CosetEntry::new(0, c3.clone())]).unwrap();
        assert!(!r.hypothesis.applies());
    }

    #[test]
    fn sweep_matches_direct_check() {
        let g = catalog_group("D8").unwrap();
        let fast = union_bound_sweep(g, 2, false).unwrap();
        let lattice = g.subgroups().unwrap();
        let mut slow = UnionSweepReport::default();
        for h in lattice {
            let cosets: Vec<CosetEntry> = lattice
                .iter()
                .filter(|s| h.is_subset_of(s))
                .flat_map(|s| g.left_transversal(s).into_iter().map(move |a| CosetEntry::new(a, s.clone())))
                .collect();
            for i in 0..cosets.len() {
                for j in i..=cosets.len() {
                    let entries: Vec<CosetEntry> =
                        if j == cosets.len() { vec![cosets[i].clone()] } else { vec![cosets[i].clone(), cosets[j].clone()] };
                    let r = check_union_lower_bound(g, h, &entries).unwrap();
                    slow.instances += 1;
                    if r.hypothesis.applies() {
                        slow.asserted += 1;
                        slow.violations += u64::from(!r.holds);
                    } else {
                        slow.informational_failures += u64::from(!r.holds);
                    }
                }
            }
        }
        assert_eq!(
            (fast.instances, fast.asserted, fast.violations, fast.informational_failures),
            (slow.instances, slow.asserted, slow.violations, slow.informational_failures)
        );
        assert!(fast.instances > 500);
        assert_eq!(fast.violations, 0);
    }

    #[test]
    fn thm32_examples() {
        let g = cyclic_group(4);
        let two = g.generate(&[2]);
        let r = check_thm_3_2(&g, &two, &[CosetEntry::new(1, two.clone())]).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (integer(1), integer(1)));
        assert!(r.holds);
        assert_eq!(r.case, Some(Thm32Case::A));
        assert!(r.d_both_branches);
        assert_eq!(
            check_thm_3_2(&g, &g.full_subgroup(), &[CosetEntry::new(1, two)]),
            Err(GcoverError::NotAligned)
        );
    }

    #[test]
    fn thm32_random_aligned() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let mut asserted = 0;
        for e in catalog().unwrap().iter().filter(|e| e.group.order() <= 12) {
            let g = &e.group;
            let lattice = g.subgroups().unwrap();
            for _ in 0..40 {
                let h = &lattice[rng.gen_range(0..lattice.len())];
                let k = rng.gen_range(1..=3);
                let entries: Vec<CosetEntry> = (0..k)
                    .map(|_| {
                        let over: Vec<&Subgroup> = lattice.iter().filter(|s| h.is_subset_of(s)).collect();
                        CosetEntry::new(rng.gen_range(0..g.order() as u32), over[rng.gen_range(0..over.len())].clone())
                    })
                    .collect();
                let r = check_thm_3_2(g, h, &entries).unwrap();
                if r.case.is_some() {
                    asserted += 1;
                    assert!(r.holds, "{}: {r:?}", e.record.name);
                }
                let t = check_union_lower_bound(g, h, &entries).unwrap();
                if t.hypothesis.applies() {
                    assert!(t.holds, "{}: {t:?}", e.record.name);
                }
            }
        }
        assert!(asserted > 100);
    }
}
