//! Exhaustive searches over coset systems of small groups.

use super::{CosetEntry, CosetSystem, GcoverError};
use crate::group::FiniteGroup;
use crate::ElementId;

/// Largest group order accepted by the searches.
pub const MAX_SEARCH_ORDER: usize = 24;
/// Largest number of entries accepted by [`enumerate_uniform_covers`].
pub const MAX_SEARCH_ENTRIES: usize = 8;

/// Node budget for the enumeration; exceeding it sets the truncation flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget(pub u64);

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget(50_000_000)
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationResult<'g> {
    /// Covers in canonical order of their sorted coset lists.
    pub covers: Vec<CosetSystem<'g>>,
    pub truncated: bool,
    pub nodes: u64,
}

struct Coset {
    subgroup: usize,
    leader: ElementId,
    members: Vec<ElementId>,
    full: bool,
}

/// Every left coset of every subgroup, ordered by (index, subgroup, leader).
fn all_cosets(g: &FiniteGroup, proper_only: bool) -> Result<Vec<Coset>, GcoverError> {
    let lattice = g.subgroups()?;
    let mut order: Vec<usize> = (0..lattice.len()).collect();
    order.sort_by_key(|&i| (lattice[i].index(), i));
    let mut cosets = Vec::new();
    for i in order {
        let h = &lattice[i];
        if proper_only && h.is_full() {
            continue;
        }
        for leader in g.left_transversal(h) {
            cosets.push(Coset { subgroup: i, leader, members: g.left_coset(leader, h), full: h.is_full() });
        }
    }
    Ok(cosets)
}

fn check_caps(g: &FiniteGroup, k: usize) -> Result<(), GcoverError> {
    if g.order() > MAX_SEARCH_ORDER {
        return Err(GcoverError::OrderCap { order: g.order(), cap: MAX_SEARCH_ORDER });
    }
    if k > MAX_SEARCH_ENTRIES {
        return Err(GcoverError::EntryCap { k, cap: MAX_SEARCH_ENTRIES });
    }
    Ok(())
}

struct Enumerator<'a> {
    cosets: &'a [Coset],
    containing: Vec<Vec<usize>>,
    m: u32,
    k_max: usize,
    order: usize,
    weights: Vec<u32>,
    chosen: Vec<usize>,
    total: usize,
    nodes: u64,
    budget: u64,
    truncated: bool,
    found: Vec<Vec<usize>>,
}

impl Enumerator<'_> {
    /// Branches on the least element whose weight is below `m`. Consecutive picks for the same
    /// element are nondecreasing in coset order, so each multiset is produced once.
    fn run(&mut self, last: Option<(ElementId, usize)>) {
        if self.truncated {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
            return;
        }
        let target = self.m as usize * self.order;
        if self.total == target {
            if self.chosen.iter().any(|&c| !self.cosets[c].full) {
                self.found.push(self.chosen.clone());
            }
            return;
        }
        let slots = self.k_max - self.chosen.len();
        if slots == 0 || target - self.total > slots * self.order {
            return;
        }
        let x = (0..self.order).find(|&x| self.weights[x] < self.m).expect("deficit exists") as ElementId;
        for ci in 0..self.containing[x as usize].len() {
            let c = self.containing[x as usize][ci];
            if let Some((lx, lc)) = last {
                if lx == x && c < lc {
                    continue;
                }
            }
            let coset = &self.cosets[c];
            if coset.members.iter().any(|&y| self.weights[y as usize] >= self.m) {
                continue;
            }
            for &y in &coset.members {
                self.weights[y as usize] += 1;
            }
            self.total += coset.members.len();
            self.chosen.push(c);
            self.run(Some((x, c)));
            self.chosen.pop();
            self.total -= coset.members.len();
            for &y in &coset.members {
                self.weights[y as usize] -= 1;
            }
        }
    }
}

/// Every nontrivial uniform `m`-cover with at most `k_max` entries, up to reordering.
pub fn enumerate_uniform_covers(
    g: &FiniteGroup,
    k_max: usize,
    m: u32,
    budget: EnumerationBudget,
) -> Result<EnumerationResult<'_>, GcoverError> {
    check_caps(g, k_max)?;
    let cosets = all_cosets(g, false)?;
    let mut containing = vec![Vec::new(); g.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &y in &c.members {
            containing[y as usize].push(i);
        }
    }
    let mut e = Enumerator {
        cosets: &cosets,
        containing,
        m,
        k_max,
        order: g.order(),
        weights: vec![0; g.order()],
        chosen: Vec::new(),
        total: 0,
        nodes: 0,
        budget: budget.0,
        truncated: false,
        found: Vec::new(),
    };
    if m > 0 {
        e.run(None);
    }
    let lattice = g.subgroups()?;
    let mut keys: Vec<Vec<usize>> = e
        .found
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            v
        })
        .collect();
    keys.sort();
    let covers = keys
        .into_iter()
        .map(|v| {
            let entries = v
                .iter()
                .map(|&c| CosetEntry::new(cosets[c].leader, lattice[cosets[c].subgroup].clone()))
                .collect();
            CosetSystem::new(g, entries)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EnumerationResult { covers, truncated: e.truncated, nodes: e.nodes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsSearchResult {
    pub group_order: usize,
    /// A partition into cosets with pairwise distinct indices, if one exists.
    pub found: Option<Vec<CosetEntry>>,
    pub nodes_explored: u64,
    /// Index sets with `Σ 1/n = 1` over distinct proper-subgroup indices, ascending.
    pub index_sets_tried: Vec<Vec<usize>>,
}

/// Sets of at least two distinct indices of proper subgroups whose reciprocals sum to 1.
pub fn feasible_distinct_index_sets(g: &FiniteGroup) -> Result<Vec<Vec<usize>>, GcoverError> {
    let n = g.order();
    let mut available: Vec<usize> =
        g.subgroups()?.iter().filter(|h| !h.is_full()).map(|h| h.index()).collect();
    available.sort_unstable();
    available.dedup();
    let mut sets = Vec::new();
    for mask in 1u32..1 << available.len() {
        let set: Vec<usize> = (0..available.len()).filter(|&i| mask >> i & 1 == 1).map(|i| available[i]).collect();
        if set.len() > 1 && set.iter().map(|&d| n / d).sum::<usize>() == n {
            sets.push(set);
        }
    }
    sets.sort();
    Ok(sets)
}

/// Exhaustive search for a partition of `g` into cosets of proper subgroups with pairwise
/// distinct indices.
pub fn search_distinct_index_partition(g: &FiniteGroup) -> Result<HsSearchResult, GcoverError> {
    check_caps(g, 0)?;
    let sets = feasible_distinct_index_sets(g)?;
    let cosets = all_cosets(g, true)?;
    let lattice = g.subgroups()?;
    let mut nodes = 0;
    let mut found = None;
    for set in &sets {
        let mut containing = vec![Vec::new(); g.order()];
        for (i, c) in cosets.iter().enumerate() {
            if set.contains(&lattice[c.subgroup].index()) {
                for &y in &c.members {
                    containing[y as usize].push(i);
                }
            }
        }
        let mut covered = vec![false; g.order()];
        let mut used = vec![false; set.len()];
        let mut chosen = Vec::new();
        let ctx = Placement { cosets: &cosets, containing: &containing, set, lattice_index: &|c: usize| lattice[cosets[c].subgroup].index() };
        if ctx.place(&mut covered, &mut used, &mut chosen, &mut nodes) {
            found = Some(
                chosen
                    .iter()
                    .map(|&c| CosetEntry::new(cosets[c].leader, lattice[cosets[c].subgroup].clone()))
                    .collect(),
            );
            break;
        }
    }
    Ok(HsSearchResult { group_order: g.order(), found, nodes_explored: nodes, index_sets_tried: sets })
}

struct Placement<'a> {
    cosets: &'a [Coset],
    containing: &'a [Vec<usize>],
    set: &'a [usize],
    lattice_index: &'a dyn Fn(usize) -> usize,
}

impl Placement<'_> {
    /// Exact-cover placement with one coset per index of `set`.
    fn place(&self, covered: &mut [bool], used: &mut [bool], chosen: &mut Vec<usize>, nodes: &mut u64) -> bool {
        *nodes += 1;
        let Some(x) = covered.iter().position(|&c| !c) else {
            return used.iter().all(|&u| u);
        };
        for &c in &self.containing[x] {
            let slot = self.set.iter().position(|&d| d == (self.lattice_index)(c)).expect("index in set");
            if used[slot] || self.cosets[c].members.iter().any(|&y| covered[y as usize]) {
                continue;
            }
            used[slot] = true;
            for &y in &self.cosets[c].members {
                covered[y as usize] = true;
            }
            chosen.push(c);
            if self.place(covered, used, chosen, nodes) {
                return true;
            }
            chosen.pop();
            for &y in &self.cosets[c].members {
                covered[y as usize] = false;
            }
            used[slot] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::super::{reciprocal_index_sum, weight_profile};
    use super::*;
    use crate::group::{catalog, cyclic_group};
    use crate::integer;
    use std::collections::HashSet;

    #[test]
    fn cyclic_two() {
        let g = cyclic_group(2);
        let r = enumerate_uniform_covers(&g, 2, 1, EnumerationBudget::default()).unwrap();
        assert!(!r.truncated);
        assert_eq!(r.covers.len(), 1);
        assert_eq!(r.covers[0].indices(), vec![2, 2]);
    }

    #[test]
    fn cyclic_four_includes_mixed_partition() {
        let g = cyclic_group(4);
        let r = enumerate_uniform_covers(&g, 4, 1, EnumerationBudget::default()).unwrap();
        let shapes: Vec<Vec<usize>> = r.covers.iter().map(|c| c.indices()).collect();
        assert!(shapes.contains(&vec![2, 4, 4]));
        // {0,2} or {1,3} with two singletons, both index-2 cosets, or four singletons
        assert_eq!(r.covers.len(), 4);
    }

    #[test]
    fn enumerated_covers_are_uniform_and_distinct() {
        for e in catalog().unwrap().iter().filter(|e| e.group.order() <= 8) {
            for m in 1..=2 {
                let r = enumerate_uniform_covers(&e.group, 5, m, EnumerationBudget::default()).unwrap();
                assert!(!r.truncated);
                let mut seen = HashSet::new();
                for c in &r.covers {
                    let p = weight_profile(c);
                    assert_eq!(p.uniform_m, Some(m));
                    assert!(!p.is_trivial);
                    assert_eq!(reciprocal_index_sum(c), integer(m as u64));
                    assert!(seen.insert(c.canonical()), "duplicate in {}", e.record.name);
                }
            }
        }
    }

    #[test]
    fn brute_force_count_on_klein_group() {
        // all multisets of at most 3 cosets of C2xC2 that form a uniform 1-cover
        let g = &catalog().unwrap().iter().find(|e| e.record.name == "C2xC2").unwrap().group;
        let cosets = all_cosets(g, false).unwrap();
        let mut count = 0;
        let n = cosets.len();
        for a in 0..n {
            for b in a..n {
                for c in b..=n {
                    let pick: Vec<usize> = if c == n { vec![a, b] } else { vec![a, b, c] };
                    let mut w = [0; 4];
                    for &i in &pick {
                        for &y in &cosets[i].members {
                            w[y as usize] += 1;
                        }
                    }
                    if w.iter().all(|&x| x == 1) && pick.iter().any(|&i| !cosets[i].full) {
                        count += 1;
                    }
                }
            }
        }
        let r = enumerate_uniform_covers(g, 3, 1, EnumerationBudget::default()).unwrap();
        assert_eq!(r.covers.len(), count);
        assert_eq!(count, 9);
    }

    #[test]
    fn truncation_and_caps() {
        let g = cyclic_group(12);
        let r = enumerate_uniform_covers(&g, 6, 2, EnumerationBudget(10)).unwrap();
        assert!(r.truncated);
        assert!(matches!(
            enumerate_uniform_covers(&g, 9, 1, EnumerationBudget::default()),
            Err(GcoverError::EntryCap { .. })
        ));
        assert!(matches!(search_distinct_index_partition(&cyclic_group(25)), Err(GcoverError::OrderCap { .. })));
    }

    #[test]
    fn hs_examples() {
        let r = search_distinct_index_partition(&cyclic_group(4)).unwrap();
        assert!(r.found.is_none());
        assert!(r.index_sets_tried.is_empty());
        let r = search_distinct_index_partition(&cyclic_group(12)).unwrap();
        assert!(r.found.is_none());
        assert_eq!(r.index_sets_tried, vec![vec![2, 3, 6], vec![2, 4, 6, 12]]);
        assert!(r.nodes_explored > 0);
    }
}
