//! Subgroup lattice, cores, subnormality, Sylow/Hall subgroups, solvability and chain searches.

use std::collections::{HashMap, HashSet};

use super::{FiniteGroup, GroupError, Subgroup};
use crate::arith::{factorize, is_prime};
use crate::ElementId;

/// Cyclic-extension enumeration: start from the cyclic subgroups and keep joining every known
/// subgroup with every cyclic subgroup until nothing new appears.
pub(super) fn enumerate_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut cyclic: Vec<(ElementId, Subgroup)> = Vec::new();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    for x in g.elements() {
        let c = g.generate(&[x]);
        if seen.insert(c.clone()) {
            cyclic.push((x, c));
        }
    }
    let mut work: Vec<(Subgroup, Vec<ElementId>)> =
        cyclic.iter().map(|(x, c)| (c.clone(), if *x == 0 { vec![] } else { vec![*x] })).collect();
    let mut head = 0;
    while head < work.len() {
        let (s, gens) = work[head].clone();
        for (x, c) in &cyclic {
            if c.is_subset_of(&s) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(*x);
            let t = g.generate(&next_gens);
            if seen.insert(t.clone()) {
                work.push((t, next_gens));
            }
        }
        head += 1;
    }
    let mut all: Vec<Subgroup> = work.into_iter().map(|(s, _)| s).collect();
    all.sort();
    all
}

/// Every subgroup of `g`, sorted by size and then member list.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    Ok(g.subgroups()?.to_vec())
}

pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    Ok(g.subgroups()?.iter().filter(|h| g.is_normal(h)).cloned().collect())
}

/// Whether `f` is normal in `k`, both subgroups of `g` with `f ⊆ k`.
pub fn is_normal_in(g: &FiniteGroup, k: &Subgroup, f: &Subgroup) -> bool {
    f.is_subset_of(k) && k.members().all(|x| f.members().all(|y| f.contains(g.conjugate(x, y))))
}

/// `H_G`, the intersection of all conjugates of `h`.
pub fn core_of(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup, GroupError> {
    g.check_parent(h)?;
    let mut core = h.clone();
    for x in g.elements() {
        if core.is_trivial() {
            break;
        }
        let conj = Subgroup::from_members(g.order(), h.members().map(|y| g.conjugate(x, y)));
        core = core.intersection(&conj);
    }
    Ok(core)
}

/// The normal closure of `h` inside `k` (the subgroup of `k` generated by the `k`-conjugates of
/// `h`). Requires `h ⊆ k`.
pub fn normal_closure_in(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<Subgroup, GroupError> {
    g.check_parent(h)?;
    g.check_parent(k)?;
    if !h.is_subset_of(k) {
        return Err(GroupError::NotASubgroup);
    }
    let mut gens = vec![false; g.order()];
    for x in k.members() {
        for y in h.members() {
            gens[g.conjugate(x, y) as usize] = true;
        }
    }
    let gens: Vec<ElementId> = g.elements().filter(|&x| gens[x as usize]).collect();
    Ok(g.generate(&gens))
}

pub fn normal_closure(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup, GroupError> {
    normal_closure_in(g, &g.full_subgroup(), h)
}

/// Result of the descending normal-closure test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubnormalReport {
    pub subnormal: bool,
    /// `K₀ = G ⊋ K₁ ⊋ …`, each the normal closure of `H` in its predecessor.
    pub chain: Vec<Subgroup>,
    /// Length of the chain when `H` is reached.
    pub defect: Option<usize>,
}

pub fn is_subnormal(g: &FiniteGroup, h: &Subgroup) -> Result<SubnormalReport, GroupError> {
    g.check_parent(h)?;
    let mut chain = vec![g.full_subgroup()];
    loop {
        let last = chain.last().expect("chain starts with G");
        if last == h {
            let defect = chain.len() - 1;
            return Ok(SubnormalReport { subnormal: true, chain, defect: Some(defect) });
        }
        let next = normal_closure_in(g, last, h)?;
        debug_assert!(is_normal_in(g, last, &next));
        if &next == last {
            return Ok(SubnormalReport { subnormal: false, chain, defect: None });
        }
        chain.push(next);
    }
}

pub(crate) fn subnormal(g: &FiniteGroup, h: &Subgroup) -> bool {
    is_subnormal(g, h).map(|r| r.subnormal).unwrap_or(false)
}

/// Verifies that every step of a subnormal witness is normal in its predecessor.
pub fn verify_subnormal_chain(g: &FiniteGroup, chain: &[Subgroup]) -> bool {
    chain.windows(2).all(|w| is_normal_in(g, &w[0], &w[1]))
}

fn prime_power_part(n: usize, primes: &[u64]) -> Result<usize, GroupError> {
    let f = factorize(n as u64)?;
    Ok(f.factors
        .iter()
        .filter(|(p, _)| primes.contains(p))
        .map(|&(p, e)| (p as usize).pow(e))
        .product())
}

/// The first Sylow `p`-subgroup in lattice order.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<Subgroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if !(g.order() as u64).is_multiple_of(p) {
        return Err(GroupError::PrimeNotDividing(p));
    }
    let target = prime_power_part(g.order(), &[p])?;
    Ok(g.subgroups()?
        .iter()
        .find(|h| h.size() == target)
        .expect("Sylow subgroups exist")
        .clone())
}

/// The first Hall `omega`-subgroup in lattice order, if any.
pub fn hall_subgroup(g: &FiniteGroup, omega: &[u64]) -> Result<Option<Subgroup>, GroupError> {
    let target = prime_power_part(g.order(), omega)?;
    Ok(g.subgroups()?.iter().find(|h| h.size() == target).cloned())
}

/// Whether `h` is a Hall subgroup: its order and index are coprime.
pub fn is_hall(h: &Subgroup) -> bool {
    num_integer::gcd(h.size(), h.index()) == 1
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The normal Sylow `p`-subgroup, if it exists. Uses the fact that a normal Sylow subgroup is
/// exactly the subgroup generated by all `p`-elements when that subgroup is a `p`-group.
pub fn normal_sylow(g: &FiniteGroup, p: u64) -> Result<Option<Subgroup>, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let pu = p as usize;
    let gens: Vec<ElementId> = g.elements().filter(|&x| is_p_power(g.element_order(x), pu)).collect();
    let s = g.generate(&gens);
    let target = prime_power_part(g.order(), &[p])?;
    Ok((s.size() == target).then_some(s))
}

pub fn has_normal_sylow(g: &FiniteGroup, p: u64) -> Result<bool, GroupError> {
    Ok(normal_sylow(g, p)?.is_some())
}

/// Commutator subgroup of `k`.
pub fn derived_subgroup(g: &FiniteGroup, k: &Subgroup) -> Subgroup {
    let mut gens = vec![false; g.order()];
    for a in k.members() {
        for b in k.members() {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            gens[c as usize] = true;
        }
    }
    let gens: Vec<ElementId> = g.elements().filter(|&x| gens[x as usize]).collect();
    g.generate(&gens)
}

/// The derived series `G ⊇ G' ⊇ G'' ⊇ …` until it stabilizes.
pub fn derived_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![g.full_subgroup()];
    loop {
        let next = derived_subgroup(g, series.last().expect("nonempty"));
        if &next == series.last().expect("nonempty") {
            return series;
        }
        series.push(next);
    }
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    derived_series(g).last().expect("nonempty").is_trivial()
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let members = g
        .elements()
        .filter(|&x| g.generators().iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    Subgroup::from_members(g.order(), members)
}

fn prime_index(big: &Subgroup, small: &Subgroup) -> Option<u64> {
    if !big.size().is_multiple_of(small.size()) || !small.is_subset_of(big) || big == small {
        return None;
    }
    let q = (big.size() / small.size()) as u64;
    is_prime(q).then_some(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyramidalReport {
    pub pyramidal: bool,
    /// `{e} = H₀ ⊂ H₁ ⊂ … ⊂ Hₙ = G`, ascending.
    pub chain: Option<Vec<Subgroup>>,
}

/// Searches for a chain from `{e}` to `G` whose successive indices are primes in non-ascending
/// order from the bottom.
pub fn is_pyramidal(g: &FiniteGroup) -> Result<PyramidalReport, GroupError> {
    let lattice = g.subgroups()?;
    let mut failed: HashSet<(usize, u64)> = HashSet::new();
    let top = lattice.len() - 1;
    let found = pyramid_down(lattice, top, 0, &mut failed);
    Ok(PyramidalReport {
        pyramidal: found.is_some(),
        chain: found.map(|ids| ids.into_iter().rev().map(|i| lattice[i].clone()).collect()),
    })
}

/// Descending search from `lattice[k]`; the next step down must have index at least `min_q`.
fn pyramid_down(
    lattice: &[Subgroup],
    k: usize,
    min_q: u64,
    failed: &mut HashSet<(usize, u64)>,
) -> Option<Vec<usize>> {
    if lattice[k].is_trivial() {
        return Some(vec![k]);
    }
    if failed.contains(&(k, min_q)) {
        return None;
    }
    for (j, l) in lattice.iter().enumerate() {
        if let Some(q) = prime_index(&lattice[k], l) {
            if q >= min_q {
                if let Some(mut rest) = pyramid_down(lattice, j, q, failed) {
                    rest.insert(0, k);
                    return Some(rest);
                }
            }
        }
    }
    failed.insert((k, min_q));
    None
}

/// A chain `H = F₀ ⊂ F₁ ⊂ … ⊂ F_m = G`, ascending, with each `F_j` normal of prime index in
/// `F_{j+1}`. With `ordered_prime = Some(p)`, all steps of index `p` must come first from the
/// bottom. `H = G` yields the one-element chain `[G]`.
pub fn prime_quotient_series(
    g: &FiniteGroup,
    h: &Subgroup,
    ordered_prime: Option<u64>,
) -> Result<Option<Vec<Subgroup>>, GroupError> {
    g.check_parent(h)?;
    let lattice = g.subgroups()?;
    let above: Vec<usize> = (0..lattice.len()).filter(|&i| h.is_subset_of(&lattice[i])).collect();
    let target = above.iter().copied().find(|&i| &lattice[i] == h).expect("h is in the lattice");
    let top = lattice.len() - 1;
    let mut failed: HashSet<(usize, bool)> = HashSet::new();
    let mut normal_cache: HashMap<(usize, usize), bool> = HashMap::new();
    let found = series_down(g, lattice, &above, top, target, false, ordered_prime, &mut failed, &mut normal_cache);
    Ok(found.map(|ids| ids.into_iter().rev().map(|i| lattice[i].clone()).collect()))
}

#[allow(clippy::too_many_arguments)]
fn series_down(
    g: &FiniteGroup,
    lattice: &[Subgroup],
    above: &[usize],
    k: usize,
    target: usize,
    in_p_phase: bool,
    ordered_prime: Option<u64>,
    failed: &mut HashSet<(usize, bool)>,
    normal_cache: &mut HashMap<(usize, usize), bool>,
) -> Option<Vec<usize>> {
    if k == target {
        return Some(vec![k]);
    }
    if failed.contains(&(k, in_p_phase)) {
        return None;
    }
    for &j in above {
        let Some(q) = prime_index(&lattice[k], &lattice[j]) else { continue };
        let next_phase = match ordered_prime {
            Some(p) if q == p => true,
            Some(_) if in_p_phase => continue,
            _ => in_p_phase,
        };
        let normal = *normal_cache
            .entry((k, j))
            .or_insert_with(|| is_normal_in(g, &lattice[k], &lattice[j]));
        if !normal {
            continue;
        }
        if let Some(mut rest) =
            series_down(g, lattice, above, j, target, next_phase, ordered_prime, failed, normal_cache)
        {
            rest.insert(0, k);
            return Some(rest);
        }
    }
    failed.insert((k, in_p_phase));
    None
}

/// `G/N` materialized as a coset table.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Coset id of each element of `G`; cosets are numbered by their least element id.
    pub projection: Vec<ElementId>,
    /// Least element of each coset.
    pub representatives: Vec<ElementId>,
}

pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient, GroupError> {
    g.check_parent(n)?;
    if !g.is_normal(n) {
        return Err(GroupError::NotNormal);
    }
    let representatives = g.left_transversal(n);
    let mut projection = vec![0 as ElementId; g.order()];
    for (i, &r) in representatives.iter().enumerate() {
        for x in n.members() {
            projection[g.mul(r, x) as usize] = i as ElementId;
        }
    }
    let q = representatives.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &representatives {
        for &b in &representatives {
            table.push(projection[g.mul(a, b) as usize]);
        }
    }
    let labels = representatives.iter().map(|&r| format!("{}N", g.label(r))).collect();
    let group = FiniteGroup::from_table(q, table, Some(labels))?;
    Ok(Quotient { group, projection, representatives })
}

/// `G/H_G` for an arbitrary subgroup `h`.
pub fn quotient_by_core(g: &FiniteGroup, h: &Subgroup) -> Result<Quotient, GroupError> {
    quotient(g, &core_of(g, h)?)
}
