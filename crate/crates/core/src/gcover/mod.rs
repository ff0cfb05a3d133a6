//! Systems of left cosets `{aᵢGᵢ}` in a finite group.
//!
//! The covering function `w(x) = |{i : x ∈ aᵢGᵢ}|` drives everything here: uniform covers,
//! the kernel `K = {x : w(gx) = w(g) for all g}`, the coset-union inequalities, the uniform-cover
//! index bounds, and the exhaustive searches.

mod search;
mod uniform;
mod unions;

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::bounds::BoundsError;
use crate::group::{FiniteGroup, GroupError, Subgroup};
use crate::{integer, rational, ElementId, ExactRational};

pub use search::{
    enumerate_uniform_covers, feasible_distinct_index_sets, search_distinct_index_partition, EnumerationBudget,
    EnumerationResult, HsSearchResult, MAX_SEARCH_ENTRIES, MAX_SEARCH_ORDER,
};
pub use uniform::{
    check_thm_4_1, check_thm_4_3_bounds, probe_conjecture_4_1, Conjecture41Report, EqualIndexPairReport,
    LeastIndexBoundsReport, MultiplicityReport, SquarefreeReport, UniformCoverReport,
};
pub use unions::{
    check_thm_3_2, check_union_lower_bound, union_bound_sweep, Thm31Hypothesis, Thm31Report, Thm32Case, Thm32Report,
    UnionSweepReport, SWEEP_INDEX_CAP,
};

/// Subset sweeps in [`kernel_of`] are exhaustive up to this many entries.
pub const KERNEL_SUBSET_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcoverError {
    #[error("coset system has no entries")]
    Empty,
    #[error("representative {0} is not an element of the group")]
    RepOutOfRange(ElementId),
    #[error("subgroup of entry {0} belongs to another group")]
    WrongParent(usize),
    #[error("the system is not a uniform cover")]
    NotUniform,
    #[error("the cover is trivial (every subgroup is the whole group)")]
    Trivial,
    #[error("subgroup of entry {0} does not contain H")]
    NotContaining(usize),
    #[error("the union of the cosets is not a union of left cosets of H")]
    NotAligned,
    #[error("group order {order} exceeds the search cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("{k} entries exceed the search cap {cap}")]
    EntryCap { k: usize, cap: usize },
    #[error("the multiplicity bound must be at least 2, got {0}")]
    MultiplicityTooSmall(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// One left coset `rep · subgroup`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetEntry {
    pub rep: ElementId,
    pub subgroup: Subgroup,
}

impl CosetEntry {
    pub fn new(rep: ElementId, subgroup: Subgroup) -> Self {
        CosetEntry { rep, subgroup }
    }

    pub fn index(&self) -> usize {
        self.subgroup.index()
    }
}

/// A nonempty list of left cosets in one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSystem<'g> {
    group: &'g FiniteGroup,
    entries: Vec<CosetEntry>,
}

impl<'g> CosetSystem<'g> {
    pub fn new(group: &'g FiniteGroup, entries: Vec<CosetEntry>) -> Result<Self, GcoverError> {
        if entries.is_empty() {
            return Err(GcoverError::Empty);
        }
        validate_entries(group, &entries)?;
        Ok(CosetSystem { group, entries })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn entries(&self) -> &[CosetEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Indices `[G : Gᵢ]` in entry order.
    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(CosetEntry::index).collect()
    }

    /// Entries sorted by index, then subgroup, then coset leader; representatives are replaced by
    /// their coset leaders.
    pub fn canonical(&self) -> Vec<CosetEntry> {
        let mut v: Vec<CosetEntry> = self
            .entries
            .iter()
            .map(|e| CosetEntry::new(self.group.coset_leader(e.rep, &e.subgroup), e.subgroup.clone()))
            .collect();
        v.sort_by(|a, b| {
            a.index()
                .cmp(&b.index())
                .then_with(|| a.subgroup.cmp(&b.subgroup))
                .then_with(|| a.rep.cmp(&b.rep))
        });
        v
    }

    /// Whether every subgroup is the whole group.
    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|e| e.subgroup.is_full())
    }

    /// Largest number of entries sharing one index.
    pub fn max_index_multiplicity(&self) -> usize {
        index_multiplicity_max(&self.indices(), |_| true)
    }

    /// Membership mask of `aᵢGᵢ`.
    pub fn coset_mask(&self, i: usize) -> Vec<bool> {
        let e = &self.entries[i];
        let mut mask = vec![false; self.group.order()];
        for h in e.subgroup.members() {
            mask[self.group.mul(e.rep, h) as usize] = true;
        }
        mask
    }
}

impl fmt::Display for CosetSystem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{}·<{} of index {}>", self.group.label(e.rep), e.subgroup.size(), e.index()))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub(crate) fn validate_entries(group: &FiniteGroup, entries: &[CosetEntry]) -> Result<(), GcoverError> {
    for (i, e) in entries.iter().enumerate() {
        if e.rep as usize >= group.order() {
            return Err(GcoverError::RepOutOfRange(e.rep));
        }
        if e.subgroup.parent_order() != group.order() {
            return Err(GcoverError::WrongParent(i));
        }
    }
    Ok(())
}

/// `max_j |{i : nᵢ = nⱼ}|` over the `j` selected by `keep`; 0 if none is selected.
pub(crate) fn index_multiplicity_max(indices: &[usize], keep: impl Fn(usize) -> bool) -> usize {
    indices
        .iter()
        .filter(|&&n| keep(n))
        .map(|&n| indices.iter().filter(|&&m| m == n).count())
        .max()
        .unwrap_or(0)
}

/// The covering function and its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    pub weights: Vec<u32>,
    pub uniform_m: Option<u32>,
    pub is_partition: bool,
    pub is_trivial: bool,
}

impl WeightProfile {
    /// `Σ_x w(x) = Σᵢ |Gᵢ|`.
    pub fn double_count_holds(&self, sys: &CosetSystem) -> bool {
        let lhs: u64 = self.weights.iter().map(|&w| w as u64).sum();
        let rhs: u64 = sys.entries.iter().map(|e| e.subgroup.size() as u64).sum();
        lhs == rhs
    }
}

pub(crate) fn weights_of(group: &FiniteGroup, entries: &[CosetEntry]) -> Vec<u32> {
    let mut w = vec![0u32; group.order()];
    for e in entries {
        for h in e.subgroup.members() {
            w[group.mul(e.rep, h) as usize] += 1;
        }
    }
    w
}

pub fn weight_profile(sys: &CosetSystem) -> WeightProfile {
    let weights = weights_of(sys.group, &sys.entries);
    let first = weights[0];
    let uniform_m = weights.iter().all(|&w| w == first).then_some(first);
    WeightProfile { uniform_m, is_partition: uniform_m == Some(1), is_trivial: sys.is_trivial(), weights }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub kernel: Subgroup,
    /// `K ⊇ ⋂ Gᵢ`.
    pub contains_intersection: bool,
    /// Every checked union `⋃_{i∈I} aᵢGᵢ` is a union of left cosets of `K ∩ ⋂_{j∉I} Gⱼ`.
    pub union_property_verified: bool,
    pub subsets_checked: usize,
    /// Set when the entry count exceeds [`KERNEL_SUBSET_CAP`]; only the singletons, the
    /// co-singletons and the full index set are then checked.
    pub partial: bool,
}

pub fn kernel_of(sys: &CosetSystem) -> Result<KernelReport, GcoverError> {
    let g = sys.group;
    let w = weights_of(g, &sys.entries);
    let members: Vec<ElementId> =
        g.elements().filter(|&x| g.elements().all(|y| w[g.mul(y, x) as usize] == w[y as usize])).collect();
    let kernel = g.subgroup_from_elements(&members)?;
    let all = sys.entries.iter().fold(g.full_subgroup(), |acc, e| acc.intersection(&e.subgroup));
    let contains_intersection = all.is_subset_of(&kernel);

    let k = sys.len();
    let masks: Vec<Vec<bool>> = (0..k).map(|i| sys.coset_mask(i)).collect();
    let partial = k > KERNEL_SUBSET_CAP;
    let subsets: Vec<Vec<bool>> = if partial {
        let mut v: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| j == i).collect()).collect();
        v.extend((0..k).map(|i| (0..k).map(|j| j != i).collect()));
        v.push(vec![true; k]);
        v
    } else {
        (1u32..1 << k).map(|s| (0..k).map(|j| s >> j & 1 == 1).collect()).collect()
    };
    let mut verified = true;
    for inside in &subsets {
        let f = (0..k)
            .filter(|&j| !inside[j])
            .fold(kernel.clone(), |acc, j| acc.intersection(&sys.entries[j].subgroup));
        let union: Vec<bool> = (0..g.order()).map(|x| (0..k).any(|i| inside[i] && masks[i][x])).collect();
        let aligned = g
            .elements()
            .filter(|&x| union[x as usize])
            .all(|x| f.members().all(|y| union[g.mul(x, y) as usize]));
        if !aligned {
            verified = false;
            break;
        }
    }
    Ok(KernelReport {
        kernel,
        contains_intersection,
        union_property_verified: verified,
        subsets_checked: subsets.len(),
        partial,
    })
}

/// `Σ 1/[G:Gᵢ]`, exact.
pub fn reciprocal_index_sum(sys: &CosetSystem) -> ExactRational {
    sys.entries.iter().fold(integer(0), |acc, e| acc + rational(1, e.index() as u64))
}

/// A random system of `k` cosets, drawn uniformly over subgroups and representatives.
pub fn random_coset_system<'g, R: Rng>(
    rng: &mut R,
    group: &'g FiniteGroup,
    k: usize,
) -> Result<CosetSystem<'g>, GcoverError> {
    let lattice = group.subgroups()?;
    let entries = (0..k.max(1))
        .map(|_| {
            let h = lattice[rng.gen_range(0..lattice.len())].clone();
            CosetEntry::new(rng.gen_range(0..group.order() as ElementId), h)
        })
        .collect();
    CosetSystem::new(group, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, catalog_group, cyclic_group};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn z4_partition(g: &FiniteGroup) -> CosetSystem<'_> {
        let two = g.generate(&[2]);
        let triv = g.trivial_subgroup();
        CosetSystem::new(g, vec![CosetEntry::new(0, two), CosetEntry::new(1, triv.clone()), CosetEntry::new(3, triv)])
            .unwrap()
    }

    #[test]
    fn weight_examples() {
        let g = catalog_group("S3").unwrap();
        let whole = CosetSystem::new(g, vec![CosetEntry::new(0, g.full_subgroup())]).unwrap();
        let p = weight_profile(&whole);
        assert_eq!(p.uniform_m, Some(1));
        assert!(p.is_trivial && p.is_partition);

        let a3 = crate::group::sylow_subgroup(g, 3).unwrap();
        let t = g.elements().find(|&x| !a3.contains(x)).unwrap();
        assert_eq!(g.element_order(t), 2);
        let halves = CosetSystem::new(g, vec![CosetEntry::new(0, a3.clone()), CosetEntry::new(t, a3)]).unwrap();
        let p = weight_profile(&halves);
        assert!(p.is_partition && !p.is_trivial);

        let z4 = cyclic_group(4);
        let sys = z4_partition(&z4);
        let p = weight_profile(&sys);
        assert!(p.is_partition);
        assert_eq!(sys.indices(), vec![2, 4, 4]);
        assert_eq!(reciprocal_index_sum(&sys), integer(1));
        assert!(p.double_count_holds(&sys));
        assert!(CosetSystem::new(&z4, vec![]).is_err());
        assert!(CosetSystem::new(&z4, vec![CosetEntry::new(9, z4.full_subgroup())]).is_err());
    }

    #[test]
    fn trivial_sum() {
        let g = cyclic_group(3);
        let sys = CosetSystem::new(&g, vec![CosetEntry::new(0, g.full_subgroup()); 4]).unwrap();
        assert_eq!(reciprocal_index_sum(&sys), integer(4));
        assert_eq!(weight_profile(&sys).uniform_m, Some(4));
    }

    #[test]
    fn kernel_examples() {
        let z4 = cyclic_group(4);
        let r = kernel_of(&z4_partition(&z4)).unwrap();
        assert!(r.kernel.is_full());
        assert!(r.union_property_verified);
        let g = catalog_group("D8").unwrap();
        for h in g.subgroups().unwrap() {
            let single = CosetSystem::new(g, vec![CosetEntry::new(3, h.clone())]).unwrap();
            let r = kernel_of(&single).unwrap();
            assert!(h.is_subset_of(&r.kernel));
            assert!(r.contains_intersection && r.union_property_verified);
        }
    }

    #[test]
    fn kernel_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for e in catalog().unwrap().iter().filter(|e| e.group.order() <= 12) {
            for _ in 0..10 {
                let sys = random_coset_system(&mut rng, &e.group, 3).unwrap();
                let r = kernel_of(&sys).unwrap();
                assert!(r.contains_intersection && r.union_property_verified, "{}", e.record.name);
                assert!(weight_profile(&sys).double_count_holds(&sys));
            }
        }
    }

    #[test]
    fn canonical_view() {
        let z4 = cyclic_group(4);
        let sys = z4_partition(&z4);
        let c = sys.canonical();
        assert_eq!(c.iter().map(|e| e.index()).collect::<Vec<_>>(), vec![2, 4, 4]);
        assert_eq!(c.iter().map(|e| e.rep).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(sys.max_index_multiplicity(), 2);
    }
}
