//! Finite groups as Cayley tables, with element-subset subgroups.
//!
//! Elements are numbered `0..order` with the identity at 0. Groups built from permutations number
//! their elements in breadth-first discovery order from the identity, multiplying on the right by
//! the generators in the order given. All searches break ties by element id so every output is
//! deterministic.

mod catalog;
mod lemmas;
mod perm;
mod structure;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::arith::ArithError;
use crate::ElementId;

pub use catalog::{catalog, catalog_group, fingerprint, CatalogEntry, Fingerprint, GroupRecord};
pub use lemmas::{run_lemma_suite, LemmaSuiteReport, LemmaTally};
pub use perm::Permutation;
pub use structure::{
    all_subgroups, center, core_of, derived_series, derived_subgroup, hall_subgroup, has_normal_sylow, is_hall,
    is_normal_in, is_pyramidal, is_solvable, is_subnormal, normal_closure, normal_closure_in, normal_subgroups,
    normal_sylow, prime_quotient_series, quotient, quotient_by_core, sylow_subgroup, verify_subnormal_chain,
    PyramidalReport, Quotient, SubnormalReport,
};

/// Maximum closure size for [`group_from_generators`].
pub const DEFAULT_CLOSURE_CAP: usize = 5000;
/// Maximum group order for subgroup-lattice enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 200;
/// Associativity is verified at construction up to this order.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed permutation: {0}")]
    Malformed(String),
    #[error("generator has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("closure exceeds the cap of {cap} elements")]
    ClosureCap { cap: usize },
    #[error("group `{name}` has order {actual}, expected {expected}")]
    OrderMismatch { name: String, expected: usize, actual: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup belongs to a group of order {subgroup_parent}, not {group}")]
    WrongParent { group: usize, subgroup_parent: usize },
    #[error("group order {order} exceeds the lattice cap {cap}")]
    LatticeCap { order: usize, cap: usize },
    #[error("prime {0} does not divide the group order")]
    PrimeNotDividing(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("no catalog group named `{0}`")]
    UnknownGroup(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A subgroup given by its member set, stored as a bitset over the parent's element ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    bits: Vec<u64>,
    size: usize,
    parent_order: usize,
}

impl Subgroup {
    fn from_members(parent_order: usize, members: impl IntoIterator<Item = ElementId>) -> Self {
        let mut bits = vec![0u64; parent_order.div_ceil(64)];
        for m in members {
            bits[m as usize / 64] |= 1 << (m % 64);
        }
        let size = bits.iter().map(|w| w.count_ones() as usize).sum();
        Subgroup { bits, size, parent_order }
    }

    pub fn contains(&self, x: ElementId) -> bool {
        (x as usize) < self.parent_order && self.bits[x as usize / 64] >> (x % 64) & 1 == 1
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    /// `[G : H]`, exact by Lagrange.
    pub fn index(&self) -> usize {
        self.parent_order / self.size
    }

    /// Member ids in ascending order.
    pub fn members(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| (w * 64 + b) as ElementId)
        })
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Intersection, which is again a subgroup.
    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let bits: Vec<u64> = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        let size = bits.iter().map(|w| w.count_ones() as usize).sum();
        Subgroup { bits, size, parent_order: self.parent_order }
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_full(&self) -> bool {
        self.size == self.parent_order
    }

    /// Ordering by size, then lexicographically by the ascending member list.
    pub fn canonical_cmp(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.size.cmp(&other.size).then_with(|| self.members().cmp(other.members()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical_cmp(other)
    }
}

/// A finite group given by its full composition table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<ElementId>,
    inverse: Vec<ElementId>,
    generators: Vec<ElementId>,
    labels: Option<Vec<String>>,
    lattice: OnceLock<Vec<Subgroup>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a composition table in row-major order, `table[a*n+b] = a·b`.
    ///
    /// Element 0 must be the identity. Rows and columns must be permutations, and associativity
    /// is checked for orders up to [`ASSOCIATIVITY_CHECK_LIMIT`].
    pub fn from_table(order: usize, table: Vec<ElementId>, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let invalid = |why: String| Err(GroupError::InvalidTable(why));
        if order == 0 {
            return invalid("order 0".into());
        }
        if table.len() != order * order {
            return invalid(format!("table has {} entries, expected {}", table.len(), order * order));
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return invalid(format!("{} labels for {order} elements", l.len()));
            }
        }
        if table.iter().any(|&x| x as usize >= order) {
            return invalid("entry out of range".into());
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return invalid("element 0 is not the identity".into());
            }
        }
        let mut seen = vec![0usize; order];
        for a in 0..order {
            for b in 0..order {
                let x = table[a * order + b] as usize;
                if seen[x] == a + 1 {
                    return invalid(format!("row {a} repeats element {x}"));
                }
                seen[x] = a + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for b in 0..order {
            for a in 0..order {
                let x = table[a * order + b] as usize;
                if seen[x] == b + 1 {
                    return invalid(format!("column {b} repeats element {x}"));
                }
                seen[x] = b + 1;
            }
        }
        if order <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b] as usize;
                    for c in 0..order {
                        let bc = table[b * order + c] as usize;
                        if table[ab * order + c] != table[a * order + bc] {
                            return invalid(format!("not associative at ({a}, {b}, {c})"));
                        }
                    }
                }
            }
        }
        let mut inverse = vec![0; order];
        for a in 0..order {
            let b = (0..order).find(|&b| table[a * order + b] == 0).expect("Latin square row contains 0");
            inverse[a] = b as ElementId;
        }
        let mut g = FiniteGroup { order, table, inverse, generators: Vec::new(), labels, lattice: OnceLock::new() };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    fn greedy_generators(&self) -> Vec<ElementId> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for x in 0..self.order as ElementId {
            if !current.contains(x) {
                gens.push(x);
                current = self.generate(&gens);
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        0..self.order as ElementId
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverse[a as usize]
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: ElementId, x: ElementId) -> ElementId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// A generating set, in ascending id order.
    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn table(&self) -> &[ElementId] {
        &self.table
    }

    pub fn label(&self, x: ElementId) -> String {
        match &self.labels {
            Some(l) => l[x as usize].clone(),
            None => x.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn element_order(&self, x: ElementId) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self.order, [0])
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self.order, self.elements())
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[ElementId]) -> Subgroup {
        self.generate_over(&[0], gens)
    }

    /// Closure of `seed ∪ gens`, where `seed` is already closed or a subset to be closed.
    fn generate_over(&self, seed: &[ElementId], gens: &[ElementId]) -> Subgroup {
        let mut inside = vec![false; self.order];
        let mut queue: VecDeque<ElementId> = VecDeque::new();
        let mut all_gens: Vec<ElementId> = gens.to_vec();
        all_gens.extend_from_slice(seed);
        all_gens.sort_unstable();
        all_gens.dedup();
        inside[0] = true;
        queue.push_back(0);
        while let Some(x) = queue.pop_front() {
            for &g in &all_gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_members(self.order, (0..self.order as ElementId).filter(|&x| inside[x as usize]))
    }

    /// Join of two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<ElementId> = a.members().chain(b.members()).collect();
        self.generate(&gens)
    }

    /// Validates an element set as a subgroup.
    pub fn subgroup_from_elements(&self, elements: &[ElementId]) -> Result<Subgroup, GroupError> {
        if elements.iter().any(|&x| x as usize >= self.order) {
            return Err(GroupError::NotASubgroup);
        }
        let s = Subgroup::from_members(self.order, elements.iter().copied());
        if !s.contains(0) {
            return Err(GroupError::NotASubgroup);
        }
        for a in s.members() {
            if !s.contains(self.inv(a)) {
                return Err(GroupError::NotASubgroup);
            }
            for b in s.members() {
                if !s.contains(self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(s)
    }

    pub(crate) fn check_parent(&self, h: &Subgroup) -> Result<(), GroupError> {
        if h.parent_order != self.order {
            return Err(GroupError::WrongParent { group: self.order, subgroup_parent: h.parent_order });
        }
        Ok(())
    }

    /// Left coset `a H` as an ascending id list.
    pub fn left_coset(&self, a: ElementId, h: &Subgroup) -> Vec<ElementId> {
        let mut c: Vec<ElementId> = h.members().map(|x| self.mul(a, x)).collect();
        c.sort_unstable();
        c
    }

    /// Smallest element id of the left coset `a H`; the canonical coset representative.
    pub fn coset_leader(&self, a: ElementId, h: &Subgroup) -> ElementId {
        h.members().map(|x| self.mul(a, x)).min().expect("subgroups are nonempty")
    }

    /// Canonical left transversal: the coset leaders, ascending.
    pub fn left_transversal(&self, h: &Subgroup) -> Vec<ElementId> {
        let mut seen = vec![false; self.order];
        let mut reps = Vec::with_capacity(h.index());
        for a in self.elements() {
            if seen[a as usize] {
                continue;
            }
            reps.push(a);
            for x in h.members() {
                seen[self.mul(a, x) as usize] = true;
            }
        }
        reps
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&g| h.members().all(|x| h.contains(self.conjugate(g, x))))
    }

    /// The group structure on the members of `h`, renumbered in ascending id order.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let members: Vec<ElementId> = h.members().collect();
        let pos: HashMap<ElementId, ElementId> =
            members.iter().enumerate().map(|(i, &m)| (m, i as ElementId)).collect();
        let n = members.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                table.push(pos[&self.mul(a, b)]);
            }
        }
        let labels = members.iter().map(|&m| self.label(m)).collect();
        FiniteGroup::from_table(n, table, Some(labels)).expect("restriction of a group table is a group")
    }

    /// All subgroups sorted by size then member list, computed once and cached.
    pub fn subgroups(&self) -> Result<&[Subgroup], GroupError> {
        if self.order > DEFAULT_LATTICE_CAP {
            return Err(GroupError::LatticeCap { order: self.order, cap: DEFAULT_LATTICE_CAP });
        }
        Ok(self.lattice.get_or_init(|| structure::enumerate_subgroups(self)))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order)
    }
}

/// Builds the closure of permutation generators on `{1..degree}`.
pub fn group_from_generators(degree: usize, generators: &[Permutation]) -> Result<FiniteGroup, GroupError> {
    group_from_generators_capped(degree, generators, DEFAULT_CLOSURE_CAP)
}

pub fn group_from_generators_capped(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    for g in generators {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch { expected: degree, got: g.degree() });
        }
    }
    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, ElementId> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for g in generators {
            let y = elements[head].compose(g);
            if !index.contains_key(&y) {
                if elements.len() == cap {
                    return Err(GroupError::ClosureCap { cap });
                }
                index.insert(y.clone(), elements.len() as ElementId);
                elements.push(y);
            }
        }
        head += 1;
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&a.compose(b)]);
        }
    }
    let labels = elements.iter().map(|p| p.to_string()).collect();
    FiniteGroup::from_table(n, table, Some(labels))
}

/// Parses generator strings and builds the group.
pub fn group_from_cycle_strings(degree: usize, generators: &[String]) -> Result<FiniteGroup, GroupError> {
    let perms = generators
        .iter()
        .map(|s| Permutation::parse(degree, s))
        .collect::<Result<Vec<_>, _>>()?;
    group_from_generators(degree, &perms)
}

/// The cyclic group ℤ/n with element id x standing for the residue x.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(((a + b) % n) as ElementId);
        }
    }
    FiniteGroup::from_table(n, table, None).expect("addition table of ℤ/n is a group")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(degree: usize, gens: &[&str]) -> Vec<Permutation> {
        gens.iter().map(|g| Permutation::parse(degree, g).unwrap()).collect()
    }

    pub(crate) fn s3() -> FiniteGroup {
        group_from_generators(3, &perms(3, &["(1 2)", "(1 2 3)"])).unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(s3().order(), 6);
        let trivial = group_from_generators(1, &[]).unwrap();
        assert_eq!(trivial.order(), 1);
        let c4 = group_from_generators(4, &perms(4, &["(1 2 3 4)"])).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        assert!(c4.elements().any(|x| c4.element_order(x) == 4));
        assert!(!s3().is_abelian());
    }

    #[test]
    fn closure_cap_and_degree() {
        let s5 = perms(5, &["(1 2)", "(1 2 3 4 5)"]);
        assert_eq!(group_from_generators_capped(5, &s5, 100), Err(GroupError::ClosureCap { cap: 100 }));
        assert_eq!(group_from_generators(5, &s5).unwrap().order(), 120);
        assert!(matches!(group_from_generators(4, &s5), Err(GroupError::DegreeMismatch { .. })));
    }

    #[test]
    fn bfs_numbering_is_deterministic() {
        let g = s3();
        assert_eq!(g.label(0), "()");
        assert_eq!(g.label(1), "(1 2)");
        assert_eq!(g.label(2), "(1 2 3)");
        assert_eq!(g, s3());
    }

    #[test]
    fn table_validation() {
        // not a Latin square
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1], None).is_err());
        // identity not at 0
        assert!(FiniteGroup::from_table(2, vec![1, 0, 0, 1], None).is_err());
        // Latin square with identity 0 that is not associative (order 5 loop)
        let loop5 = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(FiniteGroup::from_table(5, loop5, None), Err(GroupError::InvalidTable(_))));
        assert_eq!(cyclic_group(7).order(), 7);
    }

    #[test]
    fn subgroup_basics() {
        let g = cyclic_group(12);
        let h = g.generate(&[4]);
        assert_eq!(h.members().collect::<Vec<_>>(), vec![0, 4, 8]);
        assert_eq!(h.index(), 4);
        assert!(g.is_normal(&h));
        assert_eq!(g.left_transversal(&h), vec![0, 1, 2, 3]);
        assert_eq!(g.coset_leader(9, &h), 1);
        assert!(g.subgroup_from_elements(&[0, 4]).is_err());
        assert!(g.subgroup_from_elements(&[0, 6]).is_ok());
        let k = g.generate(&[6]);
        assert_eq!(g.join(&h, &k).size(), 6);
        assert!(h.intersection(&k).is_trivial());
        let sub = g.subgroup_as_group(&g.generate(&[3]));
        assert_eq!(sub.order(), 4);
        assert!(sub.is_abelian());
    }
}
