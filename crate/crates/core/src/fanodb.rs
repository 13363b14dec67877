//! Smooth Fano threefold families and the identity components of their
//! automorphism groups, loaded from an embedded tab-separated table.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::catalog::{self, ROSTER};
use crate::error::{Error, Result};
use crate::lieclassify::{expected_signature, GroupExpr};

/// The embedded table; also readable on its own.
pub const DATA: &str = include_str!("../data/fano_families.tsv");

/// Families with infinite automorphisms for every member, as published.
pub const REFERENCE_ALWAYS: &[&str] = &[
    "1.15", "1.16", "1.17", "2.26", "2.27", "2.28", "2.29", "2.30", "2.31", "2.32", "2.33", "2.34", "2.35", "2.36",
    "3.9", "3.13", "3.14", "3.15", "3.16", "3.17", "3.18", "3.19", "3.20", "3.21", "3.22", "3.23", "3.24", "3.25",
    "3.26", "3.27", "3.28", "3.29", "3.30", "3.31", "4.2", "4.3", "4.4", "4.5", "4.6", "4.7", "4.8", "4.9", "4.10",
    "4.11", "4.12", "5.1", "5.2", "5.3", "6.1", "7.1", "8.1", "9.1", "10.1",
];

/// Families where only special members have infinite automorphisms, as published.
pub const REFERENCE_SOMETIMES: &[&str] = &["1.10", "2.20", "2.21", "2.22", "3.5", "3.8", "3.10", "4.13"];

/// Sometimes-infinite families whose lemmas are missing from [`REFERENCE_SOMETIMES`].
pub const SOMETIMES_DISCREPANCIES: &[&str] = &["2.24", "3.12"];

/// Always-infinite families with a non-reductive identity component, as published.
pub const REFERENCE_NONREDUCTIVE: &[&str] = &[
    "2.28", "2.30", "2.31", "2.33", "2.35", "2.36", "3.16", "3.18", "3.21", "3.22", "3.23", "3.24", "3.26", "3.28",
    "3.29", "3.30", "3.31", "4.8", "4.9", "4.10", "4.11", "4.12",
];

/// Families with a special non-reductive member, as published.
pub const REFERENCE_SOME_NONREDUCTIVE: &[&str] = &["1.10", "2.21", "2.26", "3.13"];

/// Families with positive `h^{1,2}` and infinite automorphisms, as published.
pub const REFERENCE_H12: &[&str] = &["2.28", "3.9", "3.14", "4.2"];

/// Picard rank and index within that rank, printed `rho.n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GimelId {
    pub rho: u8,
    pub n: u8,
}

/// Number of families of each Picard rank `1..=10`.
const FAMILIES_PER_RANK: [u8; 10] = [17, 36, 31, 13, 3, 1, 1, 1, 1, 1];

impl GimelId {
    pub fn new(rho: u8, n: u8) -> Result<Self> {
        let max = if (1..=10).contains(&rho) { FAMILIES_PER_RANK[rho as usize - 1] } else { 0 };
        if n == 0 || n > max {
            return Err(Error::UnknownFamily(format!("{rho}.{n}")));
        }
        Ok(GimelId { rho, n })
    }

    /// Every valid identifier in order.
    pub fn all() -> impl Iterator<Item = GimelId> {
        (1..=10u8).flat_map(|rho| (1..=FAMILIES_PER_RANK[rho as usize - 1]).map(move |n| GimelId { rho, n }))
    }
}

impl FromStr for GimelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownFamily(s.to_string());
        let (a, b) = s.trim().split_once('.').ok_or_else(unknown)?;
        GimelId::new(a.parse().map_err(|_| unknown())?, b.parse().map_err(|_| unknown())?)
    }
}

impl fmt::Display for GimelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.rho, self.n)
    }
}

impl Serialize for GimelId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InfinityClass {
    Always,
    Sometimes,
    Never,
}

impl FromStr for InfinityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "always" => Ok(InfinityClass::Always),
            "sometimes" => Ok(InfinityClass::Sometimes),
            "never" => Ok(InfinityClass::Never),
            _ => Err(Error::Parameter(format!("unknown infinity class `{s}`"))),
        }
    }
}

impl fmt::Display for InfinityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InfinityClass::Always => "always",
            InfinityClass::Sometimes => "sometimes",
            InfinityClass::Never => "never",
        })
    }
}

/// Identity component of the automorphism group of a general member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aut0 {
    Finite,
    Group(GroupExpr),
}

impl Aut0 {
    pub fn group(&self) -> Option<&GroupExpr> {
        match self {
            Aut0::Finite => None,
            Aut0::Group(g) => Some(g),
        }
    }
}

impl fmt::Display for Aut0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Aut0::Finite => f.write_str("finite"),
            Aut0::Group(g) => g.fmt(f),
        }
    }
}

impl Serialize for Aut0 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalMember {
    pub description: String,
    #[serde(serialize_with = "as_string")]
    pub group: GroupExpr,
    pub family_note: String,
}

fn as_string<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoFamily {
    pub id: GimelId,
    pub description: String,
    pub infinity_class: InfinityClass,
    pub generic_aut0: Aut0,
    pub exceptional_members: Vec<ExceptionalMember>,
    /// Anticanonical degree, only where it is known from the source text.
    pub degree: Option<u32>,
    pub ke_obstructed: bool,
    pub h12_note: Option<String>,
    pub model_refs: Vec<String>,
    pub notes: Vec<String>,
    pub anchor: String,
}

impl FanoFamily {
    /// Every group that occurs for some member.
    pub fn groups(&self) -> impl Iterator<Item = &GroupExpr> {
        self.generic_aut0.group().into_iter().chain(self.exceptional_members.iter().map(|m| &m.group))
    }

    /// Whether some member has a non-reductive identity component.
    pub fn some_nonreductive(&self) -> Result<bool> {
        for g in self.groups() {
            if !is_reductive(g)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn is_reductive(g: &GroupExpr) -> Result<bool> {
    expected_signature(g)?
        .reductive
        .ok_or_else(|| Error::InvalidGroupExpr(format!("reductivity of {g} is unspecified")))
}

/// The loaded table, keyed and ordered by id.
#[derive(Clone, Debug)]
pub struct FanoDb {
    families: BTreeMap<GimelId, FanoFamily>,
}

/// The embedded table, parsed once.
pub fn load() -> Result<&'static FanoDb> {
    static DB: OnceLock<std::result::Result<FanoDb, Error>> = OnceLock::new();
    DB.get_or_init(|| FanoDb::parse(DATA)).as_ref().map_err(Clone::clone)
}

impl FanoDb {
    /// Parses and validates a table in the embedded format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut families = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fam = parse_row(line).map_err(|e| match e {
                Error::Database { .. } => e,
                other => Error::Database { line: lineno, msg: other.to_string() },
            })?;
            fam_checks(&fam).map_err(|msg| Error::Database { line: lineno, msg })?;
            let id = fam.id;
            if families.insert(id, fam).is_some() {
                return Err(Error::Database { line: lineno, msg: format!("duplicate id {id}") });
            }
        }
        Ok(FanoDb { families })
    }

    pub fn families(&self) -> impl Iterator<Item = &FanoFamily> {
        self.families.values()
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn get(&self, id: GimelId) -> Option<&FanoFamily> {
        self.families.get(&id)
    }

    pub fn lookup(&self, id: &str) -> Result<&FanoFamily> {
        let g: GimelId = id.parse()?;
        self.get(g).ok_or_else(|| Error::UnknownFamily(id.to_string()))
    }

    fn with_class(&self, c: InfinityClass) -> BTreeSet<GimelId> {
        self.families().filter(|f| f.infinity_class == c).map(|f| f.id).collect()
    }

    pub fn infinite_always(&self) -> BTreeSet<GimelId> {
        self.with_class(InfinityClass::Always)
    }

    pub fn infinite_sometimes(&self) -> BTreeSet<GimelId> {
        self.with_class(InfinityClass::Sometimes)
    }

    /// Always-infinite families whose generic identity component is not reductive.
    pub fn nonreductive_always(&self) -> Result<BTreeSet<GimelId>> {
        let mut out = BTreeSet::new();
        for f in self.families().filter(|f| f.infinity_class == InfinityClass::Always) {
            if let Some(g) = f.generic_aut0.group() {
                if !is_reductive(g)? {
                    out.insert(f.id);
                }
            }
        }
        Ok(out)
    }

    /// Families flagged with positive `h^{1,2}` that have infinite automorphisms.
    pub fn h12_infinite(&self) -> BTreeSet<GimelId> {
        self.families()
            .filter(|f| f.h12_note.is_some() && f.infinity_class != InfinityClass::Never)
            .map(|f| f.id)
            .collect()
    }

    /// Compares the table with the published lists; one entry per check.
    pub fn consistency(&self) -> Result<Vec<Check>> {
        let ids = |xs: &[&str]| -> Result<BTreeSet<GimelId>> { xs.iter().map(|s| s.parse()).collect() };
        let mut sometimes = ids(REFERENCE_SOMETIMES)?;
        sometimes.extend(ids(SOMETIMES_DISCREPANCIES)?);
        let mut ke = ids(REFERENCE_NONREDUCTIVE)?;
        ke.extend(ids(REFERENCE_SOME_NONREDUCTIVE)?);
        let stored_ke: BTreeSet<GimelId> = self.families().filter(|f| f.ke_obstructed).map(|f| f.id).collect();
        let complete: BTreeSet<GimelId> = GimelId::all().collect();
        let present: BTreeSet<GimelId> = self.families.keys().copied().collect();
        let flagged = SOMETIMES_DISCREPANCIES.iter().filter_map(|s| self.lookup(s).ok()).all(|f| !f.notes.is_empty());
        Ok(vec![
            Check::sets("every family present", &complete, &present),
            Check::sets("infinite_always", &ids(REFERENCE_ALWAYS)?, &self.infinite_always()),
            Check::sets("infinite_sometimes", &sometimes, &self.infinite_sometimes()),
            Check::new("discrepancy notes", flagged, "2.24 and 3.12 carry notes".into()),
            Check::sets("nonreductive_always", &ids(REFERENCE_NONREDUCTIVE)?, &self.nonreductive_always()?),
            Check::sets("ke_obstructed", &ke, &stored_ke),
            Check::sets("h12_infinite", &ids(REFERENCE_H12)?, &self.h12_infinite()),
        ])
    }

    /// Builds every referenced catalog case with default parameters and
    /// checks its expected group against the row.
    pub fn model_expectations(&self) -> Result<Vec<(GimelId, String, bool)>> {
        let mut out = Vec::new();
        for f in self.families() {
            for name in &f.model_refs {
                let case = catalog::build(name, &catalog::Params::new())?;
                out.push((f.id, name.clone(), f.groups().any(|g| *g == case.expected)));
            }
        }
        Ok(out)
    }
}

/// Outcome of one consistency check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        Check { name, pass, detail }
    }

    fn sets(name: &'static str, want: &BTreeSet<GimelId>, got: &BTreeSet<GimelId>) -> Self {
        let fmt = |s: &BTreeSet<GimelId>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        let missing: BTreeSet<_> = want.difference(got).copied().collect();
        let extra: BTreeSet<_> = got.difference(want).copied().collect();
        let detail = if missing.is_empty() && extra.is_empty() {
            format!("{} ids", got.len())
        } else {
            format!("missing {{{}}}, extra {{{}}}", fmt(&missing), fmt(&extra))
        };
        Check::new(name, missing.is_empty() && extra.is_empty(), detail)
    }
}

fn parse_row(line: &str) -> Result<FanoFamily> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 7 {
        return Err(Error::Parameter(format!("expected 7 tab-separated fields, found {}", cols.len())));
    }
    let opt = |s: &str| (s != "-").then(|| s.to_string());
    let id: GimelId = cols[0].parse()?;
    let infinity_class: InfinityClass = cols[1].parse()?;
    let generic_aut0 = match cols[2] {
        "finite" => Aut0::Finite,
        g => Aut0::Group(g.parse()?),
    };
    let mut exceptional_members = Vec::new();
    if cols[3] != "-" {
        for m in cols[3].split(" ; ") {
            let parts: Vec<&str> = m.split(" @ ").map(str::trim).collect();
            let [g, d, n] = parts[..] else {
                return Err(Error::Parameter(format!("member `{m}` needs `expr @ who @ note`")));
            };
            exceptional_members.push(ExceptionalMember {
                group: g.parse()?,
                description: d.to_string(),
                family_note: n.to_string(),
            });
        }
    }
    let mut fam = FanoFamily {
        id,
        description: opt(cols[5]).unwrap_or_default(),
        infinity_class,
        generic_aut0,
        exceptional_members,
        degree: None,
        ke_obstructed: false,
        h12_note: None,
        model_refs: Vec::new(),
        notes: Vec::new(),
        anchor: opt(cols[6]).unwrap_or_default(),
    };
    if cols[4] != "-" {
        for flag in cols[4].split("; ") {
            match flag.split_once('=') {
                None if flag == "ke_obstructed" => fam.ke_obstructed = true,
                Some(("degree", v)) => {
                    fam.degree = Some(v.parse().map_err(|_| Error::Parameter(format!("bad degree `{v}`")))?)
                }
                Some(("h12", "positive")) => fam.h12_note = Some("h^{1,2}(X)>0".into()),
                Some(("h12", v)) => fam.h12_note = Some(format!("h^{{1,2}}(X)={v}")),
                Some(("models", v)) => fam.model_refs = v.split(',').map(str::to_string).collect(),
                Some(("note", v)) => fam.notes.push(v.to_string()),
                _ => return Err(Error::Parameter(format!("unknown flag `{flag}`"))),
            }
        }
    }
    Ok(fam)
}

/// Row-level invariants; the stored obstruction flag must match the grammar.
fn fam_checks(f: &FanoFamily) -> std::result::Result<(), String> {
    match (f.infinity_class, &f.generic_aut0, f.exceptional_members.is_empty()) {
        (InfinityClass::Always, Aut0::Finite, _) => return Err(format!("{}: always-infinite but finite", f.id)),
        (InfinityClass::Sometimes, Aut0::Group(_), _) | (InfinityClass::Sometimes, _, true) => {
            return Err(format!("{}: sometimes-infinite needs a finite generic member and special members", f.id))
        }
        (InfinityClass::Never, Aut0::Group(_), _) | (InfinityClass::Never, _, false) => {
            return Err(format!("{}: never-infinite row lists groups", f.id))
        }
        _ => {}
    }
    let recomputed = f.some_nonreductive().map_err(|e| e.to_string())?;
    if recomputed != f.ke_obstructed {
        return Err(format!("{}: stored ke_obstructed={} but groups give {recomputed}", f.id, f.ke_obstructed));
    }
    if let Some(bad) = f.model_refs.iter().find(|m| !ROSTER.contains(&m.as_str())) {
        return Err(format!("{}: unknown model `{bad}`", f.id));
    }
    Ok(())
}
