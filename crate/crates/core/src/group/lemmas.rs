//! Index and normal-Hall properties checked exhaustively on a single group.

use std::collections::BTreeSet;

use super::structure::{
    core_of, has_normal_sylow, is_hall, is_pyramidal, is_solvable, normal_subgroups, prime_quotient_series,
    quotient, subnormal,
};
use super::{FiniteGroup, GroupError, Subgroup};
use crate::arith::factorize;

/// Count of instances checked and violated for one property.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaTally {
    pub checked: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl LemmaTally {
    fn record(&mut self, holds: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !holds {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(describe());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaSuiteReport {
    /// `[G : ⋂Gᵢ]` divides `∏[G:Gᵢ]` and the prime sets agree, for up to three subnormal `Gᵢ`.
    pub index_divisibility: LemmaTally,
    /// `P(|G/H_G|) = P([G:H])` for subnormal `H`.
    pub core_quotient_primes: LemmaTally,
    /// Subnormal Hall subgroups are normal.
    pub subnormal_hall_normal: LemmaTally,
    /// `G/H_G` has no normal Sylow `p`-subgroup for `p ∈ P(|G/H_G|) ∖ P([G:H])`.
    pub core_quotient_sylow: LemmaTally,
    /// Solvable with a normal Sylow `p`-subgroup ⇔ a prime-step series with the `p`-steps first.
    pub ordered_series_equivalence: LemmaTally,
    /// Pyramidal groups have a normal Sylow subgroup for the largest prime of the order.
    pub pyramidal_normal_sylow: LemmaTally,
    /// Every coset table `G/N` is a group of order `|G|/|N|`.
    pub quotient_construction: LemmaTally,
    /// Subgroups and quotients of pyramidal groups are pyramidal. Informational.
    pub pyramidal_heredity: LemmaTally,
}

impl LemmaSuiteReport {
    /// Whether every gating property holds; the heredity probe is excluded.
    pub fn all_hold(&self) -> bool {
        self.gating().iter().all(|(_, t)| t.holds())
    }

    pub fn gating(&self) -> [(&'static str, &LemmaTally); 7] {
        [
            ("index_divisibility", &self.index_divisibility),
            ("core_quotient_primes", &self.core_quotient_primes),
            ("subnormal_hall_normal", &self.subnormal_hall_normal),
            ("core_quotient_sylow", &self.core_quotient_sylow),
            ("ordered_series_equivalence", &self.ordered_series_equivalence),
            ("pyramidal_normal_sylow", &self.pyramidal_normal_sylow),
            ("quotient_construction", &self.quotient_construction),
        ]
    }
}

fn primes_of(n: usize) -> Result<BTreeSet<u64>, GroupError> {
    Ok(factorize(n as u64)?.primes().into_iter().collect())
}

fn describe(g: &FiniteGroup, h: &Subgroup) -> String {
    let gens: Vec<String> = h.members().map(|x| g.label(x)).collect();
    format!("subgroup {{{}}}", gens.join(", "))
}

/// Index tuples `i ≤ j ≤ l` of length one to three over `0..n`.
fn tuples_up_to_three(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push(vec![i]);
        for j in i..n {
            out.push(vec![i, j]);
            for l in j..n {
                out.push(vec![i, j, l]);
            }
        }
    }
    out
}

pub fn run_lemma_suite(g: &FiniteGroup) -> Result<LemmaSuiteReport, GroupError> {
    let mut rep = LemmaSuiteReport::default();
    let lattice = g.subgroups()?;
    let subnormals: Vec<&Subgroup> = lattice.iter().filter(|h| subnormal(g, h)).collect();

    for tuple in tuples_up_to_three(subnormals.len()) {
        let tuple: Vec<&Subgroup> = tuple.iter().map(|&i| subnormals[i]).collect();
        let inter = tuple.iter().skip(1).fold(tuple[0].clone(), |acc, h| acc.intersection(h));
        let product: usize = tuple.iter().map(|h| h.index()).product();
        let mut union = BTreeSet::new();
        for h in &tuple {
            union.extend(primes_of(h.index())?);
        }
        let holds = product.is_multiple_of(inter.index()) && primes_of(inter.index())? == union;
        rep.index_divisibility.record(holds, || {
            format!("tuple {:?}", tuple.iter().map(|h| describe(g, h)).collect::<Vec<_>>())
        });
    }

    for h in lattice {
        let core = core_of(g, h)?;
        let core_primes = primes_of(core.index())?;
        let index_primes = primes_of(h.index())?;
        let is_sub = subnormals.contains(&h);
        if is_sub {
            rep.core_quotient_primes.record(core_primes == index_primes, || describe(g, h));
            if is_hall(h) {
                rep.subnormal_hall_normal.record(g.is_normal(h), || describe(g, h));
            }
        }
        let missing: Vec<u64> = core_primes.difference(&index_primes).copied().collect();
        if !missing.is_empty() {
            let q = quotient(g, &core)?;
            for p in missing {
                let holds = !has_normal_sylow(&q.group, p)?;
                rep.core_quotient_sylow.record(holds, || format!("{} with p = {p}", describe(g, h)));
            }
        }
    }

    let solvable = is_solvable(g);
    let order_primes = primes_of(g.order())?;
    for &p in &order_primes {
        let lhs = solvable && has_normal_sylow(g, p)?;
        let rhs = prime_quotient_series(g, &g.trivial_subgroup(), Some(p))?.is_some();
        rep.ordered_series_equivalence.record(lhs == rhs, || format!("p = {p}: lhs {lhs}, rhs {rhs}"));
    }

    let pyramidal = is_pyramidal(g)?.pyramidal;
    if pyramidal {
        if let Some(&p) = order_primes.iter().next_back() {
            rep.pyramidal_normal_sylow.record(has_normal_sylow(g, p)?, || format!("p = {p}"));
        }
    }

    for n in normal_subgroups(g)? {
        let q = quotient(g, &n)?;
        rep.quotient_construction
            .record(q.group.order() * n.size() == g.order(), || describe(g, &n));
        if pyramidal {
            let holds = is_pyramidal(&q.group)?.pyramidal;
            rep.pyramidal_heredity.record(holds, || format!("quotient by {}", describe(g, &n)));
        }
    }
    if pyramidal {
        for h in lattice {
            let holds = is_pyramidal(&g.subgroup_as_group(h))?.pyramidal;
            rep.pyramidal_heredity.record(holds, || describe(g, h));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::super::catalog_group;
    use super::*;

    #[test]
    fn tuple_count() {
        // multisets of size 1..=3 from 4 items: 4 + 10 + 20
        assert_eq!(tuples_up_to_three(4).len(), 34);
    }

    #[test]
    fn suite_on_small_groups() {
        for name in ["C1", "S3", "D8", "A4", "Q8", "C2xC2xC2"] {
            let rep = run_lemma_suite(catalog_group(name).unwrap()).unwrap();
            assert!(rep.all_hold(), "{name}: {rep:?}");
            assert!(rep.pyramidal_heredity.holds(), "{name}");
        }
        let s3 = run_lemma_suite(catalog_group("S3").unwrap()).unwrap();
        // transposition subgroups have trivial core and index 3, so p = 2 is tested
        assert_eq!(s3.core_quotient_sylow.checked, 3);
        let a4 = run_lemma_suite(catalog_group("A4").unwrap()).unwrap();
        assert_eq!(a4.pyramidal_normal_sylow.checked, 0);
        assert_eq!(a4.ordered_series_equivalence.checked, 2);
    }
}
