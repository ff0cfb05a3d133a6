//! Text formats for residue systems, group records and coset systems.
//!
//! Cover file: one class `a/n` per line with `0 ≤ a < n`. Everything after `#` is a comment and
//! blank lines are ignored. Whitespace around `a`, `/` and `n` is allowed.
//!
//! Group file: TOML, either top-level keys `name`, `degree`, `generators`, `expected_order` or a
//! list of `[[group]]` tables with those keys. Generators use 1-based cycle notation.
//!
//! Coset file: `#` comments and blank lines as above. The first line is a group header, either
//! `group NAME` for a catalog group or `group NAME DEGREE ORDER GEN...` for an inline record, where
//! each `GEN` is a cycle string without spaces such as `(1,2,3)(4,5)` or `()`. Every further line
//! is `REP : ID...`, the representative's element id followed by the element ids generating the
//! subgroup. An empty id list is the trivial subgroup and `*` is the whole group.

use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::gcover::{CosetEntry, CosetSystem, GcoverError};
use crate::group::{catalog_group, FiniteGroup, GroupError, GroupRecord, Subgroup};
use crate::zcover::{ResidueClass, ResidueSystem, ZcoverError};
use crate::ElementId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("no entries found")]
    Empty,
    #[error("expected exactly one group record, found {0}")]
    RecordCount(usize),
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Gcover(#[from] GcoverError),
    #[error(transparent)]
    Zcover(#[from] ZcoverError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> IoError {
    IoError::Syntax { line, column, message: message.into() }
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|e| IoError::Read { path: path.display().to_string(), message: e.to_string() })
}

/// Non-blank lines as (1-based line number, content before any `#`).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        (!body.trim().is_empty()).then_some((i + 1, body))
    })
}

/// 1-based column of the first non-space character of `part`, which must be a subslice of `line`.
fn column_of(line: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    let lead = part.len() - part.trim_start().len();
    line[..offset + lead].chars().count() + 1
}

fn parse_u64(line_no: usize, line: &str, part: &str, what: &str) -> Result<u64, IoError> {
    let t = part.trim();
    if t.is_empty() {
        return Err(syntax(line_no, column_of(line, part), format!("missing {what}")));
    }
    t.parse::<u64>().map_err(|_| syntax(line_no, column_of(line, part), format!("invalid {what} `{t}`")))
}

pub fn parse_cover_text(text: &str) -> Result<ResidueSystem, IoError> {
    let mut classes = Vec::new();
    for (line_no, line) in content_lines(text) {
        let Some(slash) = line.find('/') else {
            return Err(syntax(line_no, column_of(line, line), "expected `a/n`"));
        };
        let (a_part, n_part) = (&line[..slash], &line[slash + 1..]);
        let a = parse_u64(line_no, line, a_part, "residue")?;
        let n = parse_u64(line_no, line, n_part, "modulus")?;
        let class = ResidueClass::new(a, n).map_err(|e| syntax(line_no, column_of(line, line), e.to_string()))?;
        classes.push(class);
    }
    if classes.is_empty() {
        return Err(IoError::Empty);
    }
    Ok(ResidueSystem::new(classes)?)
}

pub fn read_cover_file(path: &Path) -> Result<ResidueSystem, IoError> {
    parse_cover_text(&read_text(path)?)
}

/// One `a/n` line per class in input order.
pub fn serialize_cover(sys: &ResidueSystem) -> String {
    sys.classes().iter().map(|c| format!("{c}\n")).collect()
}

/// All records of a group file, in either accepted layout.
pub fn parse_group_records(text: &str) -> Result<Vec<GroupRecord>, IoError> {
    if let Ok(single) = toml::from_str::<GroupRecord>(text) {
        return Ok(vec![single]);
    }
    Ok(GroupRecord::parse_all(text)?)
}

/// Reads a file holding exactly one record and builds the group, enforcing `expected_order`.
pub fn parse_group_text(text: &str) -> Result<(GroupRecord, FiniteGroup), IoError> {
    let mut records = parse_group_records(text)?;
    if records.len() != 1 {
        return Err(IoError::RecordCount(records.len()));
    }
    let record = records.pop().expect("one record");
    let group = record.build()?;
    Ok((record, group))
}

pub fn read_group_file(path: &Path) -> Result<(GroupRecord, FiniteGroup), IoError> {
    parse_group_text(&read_text(path)?)
}

pub fn serialize_group_record(record: &GroupRecord) -> String {
    GroupRecord::to_toml(std::slice::from_ref(record))
}

/// How a coset file names its group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupRef {
    Catalog(String),
    Inline(GroupRecord),
}

impl fmt::Display for GroupRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupRef::Catalog(name) => write!(f, "group {name}"),
            GroupRef::Inline(r) => {
                write!(f, "group {} {} {}", r.name, r.degree, r.expected_order)?;
                for gen in &r.generators {
                    write!(f, " {}", compact_cycles(gen))?;
                }
                Ok(())
            }
        }
    }
}

/// Cycle notation without spaces: points separated by single commas, cycles adjacent.
fn compact_cycles(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut inside = false;
    let mut pending = false;
    for ch in text.chars() {
        match ch {
            '(' => {
                inside = true;
                pending = false;
                out.push('(');
            }
            ')' => {
                inside = false;
                pending = false;
                out.push(')');
            }
            ',' | ' ' | '\t' => pending = inside && !out.ends_with('('),
            _ => {
                if pending {
                    out.push(',');
                    pending = false;
                }
                out.push(ch);
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct CosetFile {
    pub group_ref: GroupRef,
    pub group: FiniteGroup,
    pub entries: Vec<CosetEntry>,
}

impl CosetFile {
    pub fn system(&self) -> Result<CosetSystem<'_>, IoError> {
        Ok(CosetSystem::new(&self.group, self.entries.clone())?)
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(GroupRef, FiniteGroup), IoError> {
    let words: Vec<&str> = line.split_whitespace().collect();
    if words.first() != Some(&"group") || words.len() < 2 {
        return Err(syntax(line_no, column_of(line, line), "expected `group NAME` header"));
    }
    if words.len() == 2 {
        let g = catalog_group(words[1]).map_err(|e| syntax(line_no, column_of(line, words[1]), e.to_string()))?;
        return Ok((GroupRef::Catalog(words[1].to_string()), g.clone()));
    }
    if words.len() < 4 {
        return Err(syntax(line_no, column_of(line, line), "inline header needs NAME DEGREE ORDER"));
    }
    let degree = parse_u64(line_no, line, words[2], "degree")? as usize;
    let expected_order = parse_u64(line_no, line, words[3], "order")? as usize;
    let record = GroupRecord {
        name: words[1].to_string(),
        degree,
        generators: words[4..].iter().map(|s| s.to_string()).collect(),
        expected_order,
    };
    let g = record.build().map_err(|e| syntax(line_no, column_of(line, words[1]), e.to_string()))?;
    Ok((GroupRef::Inline(record), g))
}

pub fn parse_coset_text(text: &str) -> Result<CosetFile, IoError> {
    let mut lines = content_lines(text);
    let Some((header_no, header)) = lines.next() else {
        return Err(IoError::Empty);
    };
    let (group_ref, group) = parse_header(header_no, header)?;
    let n = group.order() as u64;
    let element = |line_no: usize, line: &str, part: &str| -> Result<ElementId, IoError> {
        let x = parse_u64(line_no, line, part, "element id")?;
        if x >= n {
            return Err(syntax(line_no, column_of(line, part), format!("element id {x} out of range for order {n}")));
        }
        Ok(x as ElementId)
    };
    let mut entries = Vec::new();
    for (line_no, line) in lines {
        let Some(colon) = line.find(':') else {
            return Err(syntax(line_no, column_of(line, line), "expected `REP : ID...`"));
        };
        let rep = element(line_no, line, &line[..colon])?;
        let rest = &line[colon + 1..];
        let subgroup = if rest.trim() == "*" {
            group.full_subgroup()
        } else {
            let mut gens = Vec::new();
            for word in rest.split_whitespace() {
                gens.push(element(line_no, line, word)?);
            }
            group.generate(&gens)
        };
        entries.push(CosetEntry::new(rep, subgroup));
    }
    if entries.is_empty() {
        return Err(IoError::Empty);
    }
    Ok(CosetFile { group_ref, group, entries })
}

pub fn read_coset_file(path: &Path) -> Result<CosetFile, IoError> {
    parse_coset_text(&read_text(path)?)
}

/// Greedy generating set: each member not yet generated is added, in ascending order.
pub fn subgroup_generators(g: &FiniteGroup, h: &Subgroup) -> Vec<ElementId> {
    let mut gens = Vec::new();
    let mut current = g.trivial_subgroup();
    for x in h.members() {
        if !current.contains(x) {
            gens.push(x);
            current = g.generate(&gens);
        }
    }
    gens
}

pub fn serialize_coset_system(group_ref: &GroupRef, sys: &CosetSystem) -> String {
    let g = sys.group();
    let mut out = format!("{group_ref}\n");
    for e in sys.entries() {
        if e.subgroup.is_full() {
            out.push_str(&format!("{} : *\n", e.rep));
        } else {
            out.push_str(&format!("{} :", e.rep));
            for x in subgroup_generators(g, &e.subgroup) {
                out.push_str(&format!(" {x}"));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zcover::{classify, PeriodBudget};

    #[test]
    fn cover_examples() {
        let sys = parse_cover_text("0/2\n1/4\n3/4").unwrap();
        assert_eq!(sys.len(), 3);
        assert!(classify(&sys, PeriodBudget::default()).unwrap().is_exact_cover);
        let full = parse_cover_text("# whole line\n0/1\n").unwrap();
        assert_eq!(full.classes(), &[ResidueClass { residue: 0, modulus: 1 }]);
        match parse_cover_text("2/2") {
            Err(IoError::Syntax { line: 1, column: 1, message }) => assert!(message.contains("out of range")),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_cover_text("# nothing\n\n"), Err(IoError::Empty));
    }

    #[test]
    fn cover_diagnostics() {
        let err = parse_cover_text("0/2\n  1/x\n").unwrap_err();
        assert_eq!(err, syntax(2, 5, "invalid modulus `x`"));
        let err = parse_cover_text("0/2\n\n 7\n").unwrap_err();
        assert_eq!(err, syntax(3, 2, "expected `a/n`"));
        let err = parse_cover_text("1/0").unwrap_err();
        assert!(matches!(err, IoError::Syntax { line: 1, .. }));
        assert_eq!(parse_cover_text(" 1 / 4 # c\n0/2\n3/4").unwrap().len(), 3);
    }

    #[test]
    fn cover_round_trip() {
        let sys = ResidueSystem::from_pairs(&[(0, 2), (2, 3), (1, 4), (5, 6), (7, 12)]).unwrap();
        assert_eq!(parse_cover_text(&serialize_cover(&sys)).unwrap(), sys);
    }

    #[test]
    fn group_examples() {
        let s3 = "name = \"S3\"\ndegree = 3\ngenerators = [\"(1,2,3)\", \"(1,2)\"]\nexpected_order = 6\n";
        let (record, g) = parse_group_text(s3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(parse_group_text(&serialize_group_record(&record)).unwrap().0, record);
        let trivial = "name = \"C1\"\ndegree = 1\nexpected_order = 1\n";
        assert_eq!(parse_group_text(trivial).unwrap().1.order(), 1);
        let bad = "name = \"X\"\ndegree = 2\ngenerators = [\"(1,2)\"]\nexpected_order = 5\n";
        assert!(matches!(parse_group_text(bad), Err(IoError::Group(GroupError::OrderMismatch { .. }))));
        let malformed = "name = \"X\"\ndegree = 2\ngenerators = [\"(1,3)\"]\nexpected_order = 2\n";
        assert!(matches!(parse_group_text(malformed), Err(IoError::Group(_))));
        let two = GroupRecord::to_toml(&[record.clone(), record]);
        assert_eq!(parse_group_text(&two).unwrap_err(), IoError::RecordCount(2));
    }

    #[test]
    fn coset_examples() {
        let f = parse_coset_text("# Z/4 partition\ngroup C4\n0 : 2\n1 :\n3 :\n").unwrap();
        let sys = f.system().unwrap();
        assert_eq!(sys.indices(), vec![2, 4, 4]);
        let text = serialize_coset_system(&f.group_ref, &sys);
        assert_eq!(text, "group C4\n0 : 2\n1 :\n3 :\n");

        let inline = parse_coset_text("group T 3 6 (1,2,3) (1,2)\n0 : *\n").unwrap();
        assert_eq!(inline.group.order(), 6);
        assert!(inline.entries[0].subgroup.is_full());
        let again = parse_coset_text(&serialize_coset_system(&inline.group_ref, &inline.system().unwrap())).unwrap();
        assert_eq!(again.group_ref, inline.group_ref);
        assert_eq!(again.entries, inline.entries);

        assert_eq!(parse_coset_text("group C4\n4 : 1\n").unwrap_err(), syntax(2, 1, "element id 4 out of range for order 4"));
        assert!(matches!(parse_coset_text("group Nope\n0 : 1\n"), Err(IoError::Syntax { line: 1, column: 7, .. })));
        assert_eq!(parse_coset_text("group C4\n0 1\n").unwrap_err(), syntax(2, 1, "expected `REP : ID...`"));
        assert!(matches!(parse_coset_text("group C4\n"), Err(IoError::Empty)));
    }

    #[test]
    fn cycles_are_compacted() {
        assert_eq!(compact_cycles("(1 2 3) (4, 5)"), "(1,2,3)(4,5)");
        assert_eq!(compact_cycles("( 1  2 )"), "(1,2)");
        assert_eq!(compact_cycles("()"), "()");
    }

    #[test]
    fn coset_round_trip_on_catalog() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for e in crate::group::catalog().unwrap() {
            let sys = crate::gcover::random_coset_system(&mut rng, &e.group, 4).unwrap();
            let r = GroupRef::Catalog(e.record.name.clone());
            let back = parse_coset_text(&serialize_coset_system(&r, &sys)).unwrap();
            assert_eq!(back.entries, sys.entries());
        }
    }
}
