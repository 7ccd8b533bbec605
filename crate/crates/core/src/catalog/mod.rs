//! Singularity catalogs: data model, JSON format, bundled data and validation.

mod classification;
mod poly;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{total_chern, WeightVector};
use crate::{Error, Result};

pub use classification::{adjacency_l0, classification, classified_up_to, ClassifiedAlgebra};
pub use poly::{monomial_weight, render_monomial, GenotypePoly};

/// The Mather bound `M(ℓ)`: `6ℓ + 8` for `ℓ ≤ 3`, `6ℓ + 7` above.
pub fn mather_bound(ell: i64) -> Result<u32> {
    if ell < 0 {
        return Err(Error::NegativeEll(ell));
    }
    Ok(if ell <= 3 { 6 * ell as u32 + 8 } else { 6 * ell as u32 + 7 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenotypeVariable {
    pub name: String,
    pub weight: WeightVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenotypeRelation {
    pub poly: String,
    pub weight: WeightVector,
}

/// Minimal presentation `(x_1, …, x_a) ↦ (r_1, …, r_b, 0, …, 0)` of a
/// local algebra with torus weights on variables and relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenotypeSpec {
    pub variables: Vec<GenotypeVariable>,
    pub relations: Vec<GenotypeRelation>,
    #[serde(default)]
    pub padded: u32,
}

impl GenotypeSpec {
    pub fn var_names(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.name.clone()).collect()
    }

    pub fn var_weights(&self) -> Vec<WeightVector> {
        self.variables.iter().map(|v| v.weight.clone()).collect()
    }

    /// Rank of the torus acting on the genotype (without padded parameters).
    pub fn rank(&self) -> usize {
        self.variables
            .first()
            .map(|v| v.weight.rank())
            .or_else(|| self.relations.first().map(|r| r.weight.rank()))
            .unwrap_or(0)
    }

    /// Relative dimension `ℓ = b + padded − a`.
    pub fn ell(&self) -> i64 {
        self.relations.len() as i64 + self.padded as i64 - self.variables.len() as i64
    }

    pub fn presentation(&self) -> String {
        let rels: Vec<&str> = self.relations.iter().map(|r| r.poly.as_str()).collect();
        format!("({})", rels.join(","))
    }

    pub fn polys(&self) -> Result<Vec<GenotypePoly>> {
        let names = self.var_names();
        self.relations.iter().map(|r| GenotypePoly::parse(&r.poly, &names)).collect()
    }

    /// Weights of the target coordinates: the relations, then one fresh
    /// torus parameter per padded component.
    pub fn target_component_weights(&self) -> Vec<WeightVector> {
        let r0 = self.rank();
        let full = r0 + self.padded as usize;
        let mut out: Vec<WeightVector> = self.relations.iter().map(|r| r.weight.padded(full)).collect();
        out.extend((0..self.padded as usize).map(|t| WeightVector::unit(full, r0 + t)));
        out
    }

    /// Checks the structural invariants: consistent ranks, distinct variable
    /// names, relations weighted-homogeneous and of order at least two.
    pub fn check(&self) -> Result<()> {
        let r = self.rank();
        let names = self.var_names();
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != names.len() {
            return Err(Error::Genotype("duplicate variable names".into()));
        }
        if let Some(v) = self.variables.iter().find(|v| v.weight.rank() != r) {
            return Err(Error::Genotype(format!("variable {} has weight of rank {}, expected {r}", v.name, v.weight.rank())));
        }
        let weights = self.var_weights();
        for (rel, poly) in self.relations.iter().zip(self.polys()?) {
            if rel.weight.rank() != r {
                return Err(Error::Genotype(format!("relation {} has weight of rank {}", rel.poly, rel.weight.rank())));
            }
            if poly.is_zero() {
                return Err(Error::Genotype(format!("relation {} is zero", rel.poly)));
            }
            if poly.order().unwrap_or(0) < 2 {
                return Err(Error::Genotype(format!("relation {} is not in the square of the maximal ideal", rel.poly)));
            }
            if let Some(bad) = poly.monomial_weights(&weights).into_iter().find(|w| *w != rel.weight) {
                return Err(Error::Genotype(format!(
                    "relation {} is not weighted-homogeneous: monomial weight {bad} differs from declared {}",
                    rel.poly, rel.weight
                )));
            }
        }
        Ok(())
    }
}

/// One singularity record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityEntry {
    pub name: String,
    pub presentation: String,
    pub codim: u32,
    pub torus_rank: usize,
    pub genotype: GenotypeSpec,
    pub source_weights: Vec<WeightVector>,
    pub target_weights: Vec<WeightVector>,
    pub provenance: String,
}

impl SingularityEntry {
    /// Relative dimension implied by the weight counts.
    pub fn ell(&self) -> i64 {
        self.target_weights.len() as i64 - self.source_weights.len() as i64
    }

    /// Every invariant violation of this record, as `(invariant, detail)`.
    pub fn violations(&self, ell: u32) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if self.codim as usize != self.source_weights.len() {
            out.push((
                "codim = number of source weights",
                format!("codim {} but {} source weights", self.codim, self.source_weights.len()),
            ));
        }
        if self.target_weights.len() != self.source_weights.len() + ell as usize {
            out.push((
                "number of target weights = codim + ell",
                format!("{} target weights, {} source weights, ell {ell}", self.target_weights.len(), self.source_weights.len()),
            ));
        }
        let bad_rank = self.source_weights.iter().chain(&self.target_weights).find(|w| w.rank() != self.torus_rank);
        if let Some(w) = bad_rank {
            out.push(("weight rank = torus rank", format!("weight {w:?} in a rank-{} torus", self.torus_rank)));
        }
        if let Some(i) = self.source_weights.iter().position(WeightVector::is_zero) {
            out.push(("nonzero source weights", format!("source weight #{i} is zero")));
        }
        match self.genotype_problem(ell) {
            Some(detail) => out.push(("genotype", detail)),
            None => {
                if bad_rank.is_none() {
                    if let Some(detail) = self.cancellation_problem() {
                        out.push(("unfolding cancellation", detail));
                    }
                }
            }
        }
        out
    }

    fn genotype_problem(&self, ell: u32) -> Option<String> {
        let g = &self.genotype;
        if let Err(e) = g.check() {
            return Some(e.to_string());
        }
        if g.ell() != ell as i64 {
            return Some(format!("genotype has relative dimension {}, catalog has {ell}", g.ell()));
        }
        if g.rank() + g.padded as usize != self.torus_rank {
            return Some(format!(
                "genotype torus rank {} plus {} padded parameters differs from torus rank {}",
                g.rank(),
                g.padded,
                self.torus_rank
            ));
        }
        None
    }

    /// Checks `c(target)·c(variables) = c(relations, padding)·c(source)` exactly.
    fn cancellation_problem(&self) -> Option<String> {
        let r = self.torus_rank;
        let vars: Vec<WeightVector> = self.genotype.var_weights().iter().map(|w| w.padded(r)).collect();
        let rels = self.genotype.target_component_weights();
        let d = (self.target_weights.len() + vars.len()).max(self.source_weights.len() + rels.len()) as u32;
        let lhs = total_chern(&self.target_weights, r, d).and_then(|t| Ok(t.times(&total_chern(&vars, r, d)?)));
        let rhs = total_chern(&rels, r, d).and_then(|t| Ok(t.times(&total_chern(&self.source_weights, r, d)?)));
        match (lhs, rhs) {
            (Ok(l), Ok(rr)) if l == rr => None,
            (Ok(_), Ok(_)) => Some("c(target)/c(source) differs from the genotype quotient".into()),
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
        }
    }
}

/// A list of singularities for one relative dimension `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub ell: u32,
    pub max_codim: u32,
    pub entries: Vec<SingularityEntry>,
}

const BUNDLED: [&str; 3] = [
    include_str!("../../data/catalog_l0.json"),
    include_str!("../../data/catalog_l1.json"),
    include_str!("../../data/catalog_l2.json"),
];

impl Catalog {
    /// Parses JSON and checks every invariant.
    pub fn from_json(text: &str) -> Result<Catalog> {
        let cat: Catalog = serde_json::from_str(text).map_err(|e| Error::CatalogParse(e.to_string()))?;
        cat.check()?;
        Ok(cat)
    }

    /// The embedded catalog for `ℓ ∈ {0, 1, 2}`.
    pub fn bundled(ell: u32) -> Result<Catalog> {
        let text = BUNDLED
            .get(ell as usize)
            .ok_or_else(|| Error::InvalidCatalog(format!("no bundled catalog for ell = {ell}")))?;
        Catalog::from_json(text)
    }

    /// Checks the type invariants, reporting the first violation.
    pub fn check(&self) -> Result<()> {
        let bound = mather_bound(self.ell as i64)?;
        if self.max_codim > bound {
            return Err(Error::InvalidCatalog(format!("max_codim {} exceeds the Mather bound {bound}", self.max_codim)));
        }
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            if !seen.insert(e.name.as_str()) {
                return Err(Error::CatalogInvariant { entry: e.name.clone(), invariant: "unique names".into() });
            }
            if e.codim > self.max_codim {
                return Err(Error::CatalogInvariant {
                    entry: e.name.clone(),
                    invariant: format!("codim {} ≤ max_codim {}", e.codim, self.max_codim),
                });
            }
            if let Some((inv, detail)) = e.violations(self.ell).into_iter().next() {
                return Err(Error::CatalogInvariant { entry: e.name.clone(), invariant: format!("{inv} ({detail})") });
            }
        }
        let open = self.entries.iter().filter(|e| e.codim == 0).count();
        if open != 1 {
            return Err(Error::InvalidCatalog(format!("expected exactly one codimension-0 entry, found {open}")));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("catalog serializes");
        let mut out = String::new();
        write_json(&value, 0, &mut out);
        out.push('\n');
        out
    }

    /// Looks an entry up by name, literature alias (`b'24`, `b_{24}`, `III_24`) or
    /// presentation.
    pub fn entry(&self, query: &str) -> Result<&SingularityEntry> {
        let key = canonical_name(query);
        let squeeze = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        self.entries
            .iter()
            .find(|e| e.name == key)
            .or_else(|| self.entries.iter().find(|e| squeeze(&e.presentation) == squeeze(query)))
            .ok_or_else(|| Error::UnknownEntry(query.to_string()))
    }

    /// Entries of codimension at most `d`, in catalog order.
    pub fn up_to(&self, d: u32) -> Vec<&SingularityEntry> {
        self.entries.iter().filter(|e| e.codim <= d).collect()
    }

    /// A copy keeping only the named entries.
    pub fn restricted(&self, names: &[&str]) -> Result<Catalog> {
        let entries = names.iter().map(|n| self.entry(n).cloned()).collect::<Result<Vec<_>>>()?;
        let max_codim = entries.iter().map(|e| e.codim).max().unwrap_or(0);
        Ok(Catalog { ell: self.ell, max_codim, entries })
    }
}

/// Reads and checks a catalog file.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::CatalogParse(format!("{}: {e}", path.as_ref().display())))?;
    Catalog::from_json(&text)
}

/// Normalizes literature-style names: `b'_{24}` → `I24`, `b24` → `III24`,
/// `A_2` → `A2`.
pub fn canonical_name(query: &str) -> String {
    let s: String = query.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ' ')).collect();
    let digits_follow = |rest: &str| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit());
    if let Some(rest) = s.strip_prefix("b'") {
        if digits_follow(rest) {
            return format!("I{rest}");
        }
    }
    if let Some(rest) = s.strip_prefix('b') {
        if digits_follow(rest) {
            return format!("III{rest}");
        }
    }
    s
}

fn write_json(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    let flat = |v: &Value| match v {
        Value::Array(items) => items.iter().all(|i| match i {
            Value::Array(inner) => inner.iter().all(|x| !x.is_array() && !x.is_object()),
            Value::Object(_) => false,
            _ => true,
        }),
        Value::Object(map) => map.values().all(|x| match x {
            Value::Array(inner) => inner.iter().all(|y| !y.is_array() && !y.is_object()),
            Value::Object(_) => false,
            _ => true,
        }),
        _ => true,
    };
    match v {
        Value::Object(map) if flat(v) => {
            let fields: Vec<String> = map
                .iter()
                .map(|(k, x)| format!("{}: {}", serde_json::to_string(k).expect("json key"), x))
                .collect();
            out.push_str(&format!("{{{}}}", fields.join(", ")));
        }
        _ if flat(v) => out.push_str(&serde_json::to_string(v).expect("json value")),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("json key"));
                out.push_str(": ");
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

/// One line of a validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub subject: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, subject: &str, check: &str, problem: Option<String>) {
        self.checks.push(Check {
            subject: subject.to_string(),
            check: check.to_string(),
            passed: problem.is_none(),
            detail: problem.unwrap_or_default(),
        });
    }
}

/// Runs every catalog check relevant to degree `d` and collects the results.
pub fn validate_catalog(cat: &Catalog, d: u32) -> ValidationReport {
    let mut report = ValidationReport::default();
    let bound = mather_bound(cat.ell as i64).unwrap_or(0);
    report.push(
        "catalog",
        "degree within the Mather bound",
        (d > bound).then(|| format!("degree {d} exceeds M({}) = {bound}", cat.ell)),
    );
    report.push(
        "catalog",
        "max_codim within the Mather bound",
        (cat.max_codim > bound).then(|| format!("max_codim {} exceeds {bound}", cat.max_codim)),
    );
    let mut names = BTreeMap::new();
    for e in &cat.entries {
        *names.entry(e.name.as_str()).or_insert(0) += 1;
    }
    let repeated: Vec<&str> = names.iter().filter(|(_, &n)| n > 1).map(|(k, _)| *k).collect();
    report.push("catalog", "unique names", (!repeated.is_empty()).then(|| format!("repeated: {}", repeated.join(", "))));
    let open = cat.entries.iter().filter(|e| e.codim == 0).count();
    report.push("catalog", "single codimension-0 entry", (open != 1).then(|| format!("{open} entries of codimension 0")));

    for e in &cat.entries {
        let violations = e.violations(cat.ell);
        let find = |inv: &str| violations.iter().find(|(i, _)| *i == inv).map(|(_, d)| d.clone());
        report.push(&e.name, "euler", find("nonzero source weights"));
        let counts = find("codim = number of source weights").or_else(|| find("number of target weights = codim + ell"));
        report.push(&e.name, "codim", counts.or_else(|| find("weight rank = torus rank")));
        report.push(&e.name, "genotype", find("genotype"));
        report.push(&e.name, "cancellation", find("unfolding cancellation"));
    }

    report.push("catalog", "coverage", coverage_problem(cat, d));
    let dups = duplicate_scan(cat);
    report.push(
        "catalog",
        "repetition-free",
        (!dups.is_empty()).then(|| {
            dups.iter().map(|(a, b)| format!("{a} ~ {b}")).collect::<Vec<_>>().join(", ")
        }),
    );
    report
}

fn coverage_problem(cat: &Catalog, d: u32) -> Option<String> {
    let Some(limit) = classified_up_to(cat.ell) else {
        return Some(format!("no reference classification for ell = {}", cat.ell));
    };
    if d > limit {
        return Some(format!("reference classification for ell = {} stops at codimension {limit}", cat.ell));
    }
    let missing: Vec<String> = classification(cat.ell)
        .into_iter()
        .filter(|a| a.codim <= d)
        .filter(|a| !cat.entries.iter().any(|e| e.name == a.name && e.codim == a.codim))
        .map(|a| format!("{} (codim {})", a.name, a.codim))
        .collect();
    (!missing.is_empty()).then(|| format!("missing {}", missing.join(", ")))
}

/// Canonical form of an entry's restriction data under permutations and sign
/// changes of torus coordinates, after dividing each coordinate by the gcd of
/// its values.
type DuplicateKey = (u32, usize, Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>);

fn duplicate_key(e: &SingularityEntry) -> DuplicateKey {
    let r = e.torus_rank;
    let mut numerator: Vec<WeightVector> = e.target_weights.clone();
    let mut denominator = Vec::new();
    for w in &e.source_weights {
        match numerator.iter().position(|t| t == w) {
            Some(i) => {
                numerator.swap_remove(i);
            }
            None => denominator.push(w.clone()),
        }
    }
    let all: Vec<&WeightVector> = e.source_weights.iter().chain(&numerator).chain(&denominator).collect();
    let scale: Vec<i64> = (0..r)
        .map(|j| all.iter().fold(0i64, |g, w| num_integer::gcd(g, w.0[j])).max(1))
        .collect();
    let normalize = |ws: &[WeightVector], perm: &[usize], signs: u32| -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = ws
            .iter()
            .map(|w| {
                perm.iter()
                    .enumerate()
                    .map(|(k, &j)| {
                        let v = w.0[j] / scale[j];
                        if signs & (1 << k) != 0 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        out.sort();
        out
    };
    let mut best: Option<(Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>)> = None;
    for perm in permutations(r) {
        for signs in 0..(1u32 << r) {
            let cand = (
                normalize(&e.source_weights, &perm, signs),
                normalize(&numerator, &perm, signs),
                normalize(&denominator, &perm, signs),
            );
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let (s, n, dd) = best.unwrap_or_default();
    (e.codim, r, s, n, dd)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Pairs of entries whose restriction data agree after normalization; such
/// algebras cannot be told apart by any interpolation condition, so a
/// catalog listing both contains a repetition.
pub fn duplicate_scan(cat: &Catalog) -> Vec<(String, String)> {
    let keys: Vec<DuplicateKey> = cat.entries.iter().map(duplicate_key).collect();
    let mut out = Vec::new();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] == keys[j] {
                out.push((cat.entries[i].name.clone(), cat.entries[j].name.clone()));
            }
        }
    }
    out
}
