//! The bundled catalog of small groups and the group record format.
//!
//! A record is a TOML table `{ name, degree, generators, expected_order }` with generators in
//! cycle notation over `1..=degree`. The catalog file is an array of such tables under `[[group]]`.
//! Loading builds every group, enforces `expected_order` and checks that no two entries share a
//! fingerprint.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::structure::center;
use super::{group_from_cycle_strings, FiniteGroup, GroupError};

const CATALOG_TOML: &str = include_str!("../../data/catalog.toml");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub name: String,
    pub degree: usize,
    #[serde(default)]
    pub generators: Vec<String>,
    pub expected_order: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct RecordFile {
    #[serde(default)]
    group: Vec<GroupRecord>,
}

impl GroupRecord {
    /// Builds the group and checks its order.
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let g = group_from_cycle_strings(self.degree, &self.generators)?;
        if g.order() != self.expected_order {
            return Err(GroupError::OrderMismatch {
                name: self.name.clone(),
                expected: self.expected_order,
                actual: g.order(),
            });
        }
        Ok(g)
    }

    /// Parses every `[[group]]` record of a TOML document.
    pub fn parse_all(text: &str) -> Result<Vec<GroupRecord>, GroupError> {
        let file: RecordFile = toml::from_str(text).map_err(|e| GroupError::Catalog(e.to_string()))?;
        Ok(file.group)
    }

    /// Serializes records in the same format [`GroupRecord::parse_all`] reads.
    pub fn to_toml(records: &[GroupRecord]) -> String {
        let file = RecordFile { group: records.to_vec() };
        toml::to_string(&file).expect("records serialize")
    }
}

/// Isomorphism invariants used to tell catalog entries apart.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    /// Element order → number of elements of that order.
    pub element_orders: BTreeMap<usize, usize>,
    pub abelian: bool,
    pub subgroup_count: usize,
    /// Element-order profile of the center.
    pub center_orders: BTreeMap<usize, usize>,
}

pub fn fingerprint(g: &FiniteGroup) -> Result<Fingerprint, GroupError> {
    let mut element_orders = BTreeMap::new();
    for x in g.elements() {
        *element_orders.entry(g.element_order(x)).or_insert(0) += 1;
    }
    let mut center_orders = BTreeMap::new();
    for x in center(g).members() {
        *center_orders.entry(g.element_order(x)).or_insert(0) += 1;
    }
    Ok(Fingerprint {
        order: g.order(),
        element_orders,
        abelian: g.is_abelian(),
        subgroup_count: g.subgroups()?.len(),
        center_orders,
    })
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub record: GroupRecord,
    pub group: FiniteGroup,
}

fn load(text: &str) -> Result<Vec<CatalogEntry>, GroupError> {
    let records = GroupRecord::parse_all(text)?;
    let mut entries = Vec::with_capacity(records.len());
    let mut prints: Vec<(Fingerprint, String)> = Vec::new();
    for record in records {
        if entries.iter().any(|e: &CatalogEntry| e.record.name == record.name) {
            return Err(GroupError::Catalog(format!("duplicate name `{}`", record.name)));
        }
        let group = record.build()?;
        let fp = fingerprint(&group)?;
        if let Some((_, other)) = prints.iter().find(|(f, _)| *f == fp) {
            return Err(GroupError::Catalog(format!(
                "`{}` and `{other}` have the same fingerprint",
                record.name
            )));
        }
        prints.push((fp, record.name.clone()));
        entries.push(CatalogEntry { record, group });
    }
    Ok(entries)
}

/// Every group of order at most 16, one per isomorphism class, ordered by group order.
///
/// Completeness relies on the published classification; the loader only proves the entries are
/// pairwise non-isomorphic.
pub fn catalog() -> Result<&'static [CatalogEntry], GroupError> {
    static CATALOG: OnceLock<Result<Vec<CatalogEntry>, GroupError>> = OnceLock::new();
    match CATALOG.get_or_init(|| load(CATALOG_TOML)) {
        Ok(v) => Ok(v),
        Err(e) => Err(e.clone()),
    }
}

pub fn catalog_group(name: &str) -> Result<&'static FiniteGroup, GroupError> {
    catalog()?
        .iter()
        .find(|e| e.record.name == name)
        .map(|e| &e.group)
        .ok_or_else(|| GroupError::UnknownGroup(name.to_string()))
}
