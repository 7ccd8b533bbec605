//! The interpolation system for SSM-Thom polynomials and its exact solution.
//!
//! Unknowns are the coefficients `v_λ` of `T = Σ v_λ c_λ` over all partitions
//! with `|λ| ≤ d`. Each catalog entry `i` of codimension `s_i ≤ d` contributes
//! rows through its restriction map `ψ_i`:
//!
//! * for the target, `ψ(T) = e(source) / c(source)` up to degree `d`;
//! * for every other entry, the parts of degree `s_i … d` of
//!   `ψ_i(T) · c(source_i)` vanish.
//!
//! Every row is a single torus monomial of a single degree.

mod bareiss;
mod dense;
mod modular;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{
    chern_images, enumerate_partitions, euler_class, substitute_with_unit, total_chern, ChernSeries, Partition,
    Scalar, TorusMonomial, TorusPolynomial,
};
use crate::catalog::{mather_bound, validate_catalog, Catalog, SingularityEntry};
use crate::{Error, Result};

use dense::{Homogeneous, MonomialTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `ψ_target(T) = e/c` of the target's prototype.
    Restriction,
    /// `ψ_i(T) · c(source_i)` vanishes from degree `codim_i` on.
    Vanishing,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Restriction => "axiom (1)",
            Axiom::Vanishing => "axiom (2)",
        })
    }
}

/// Where a row came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub entry: String,
    pub axiom: Axiom,
    pub degree: u32,
    pub monomial: Vec<u32>,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} for {} at degree {}, monomial {}",
            self.axiom,
            self.entry,
            self.degree,
            TorusMonomial(self.monomial.clone())
        )
    }
}

/// One scalar equation `Σ coeffs · v = rhs` with integer entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    /// Sparse coefficients sorted by column.
    pub coeffs: Vec<(usize, BigInt)>,
    pub rhs: BigInt,
    pub provenance: Provenance,
}

impl Row {
    /// Builds a row from rational data by clearing denominators.
    pub fn from_rational(coeffs: Vec<(usize, Scalar)>, rhs: Scalar, provenance: Provenance) -> Row {
        let lcm = coeffs.iter().map(|(_, c)| c.denom().clone()).fold(rhs.denom().clone(), |a, b| a.lcm(&b));
        let scale = |c: &Scalar| (c * Scalar::from_integer(lcm.clone())).to_integer();
        let mut coeffs: Vec<(usize, BigInt)> =
            coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (*i, scale(c))).collect();
        coeffs.sort_by_key(|(i, _)| *i);
        Row { coeffs, rhs: scale(&rhs), provenance }
    }

    pub fn coefficient(&self, col: usize) -> BigInt {
        self.coeffs.iter().find(|(c, _)| *c == col).map_or_else(BigInt::zero, |(_, v)| v.clone())
    }

    fn holds_for(&self, numerators: &[BigInt], common_denominator: &BigInt) -> bool {
        let lhs: BigInt = self.coeffs.iter().map(|(c, v)| v * &numerators[*c]).sum();
        lhs == &self.rhs * common_denominator
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub unknowns: Vec<Partition>,
    pub rows: Vec<Row>,
}

impl ConstraintSystem {
    pub fn column(&self, p: &Partition) -> Option<usize> {
        self.unknowns.iter().position(|q| q == p)
    }

    /// Index of the first row violated by `x`, if any.
    pub fn first_violation(&self, x: &[Scalar]) -> Option<usize> {
        let lcm = x.iter().fold(BigInt::one(), |a, v| a.lcm(v.denom()));
        let numerators: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        self.rows.iter().position(|r| !r.holds_for(&numerators, &lcm))
    }

    fn free_unknowns(&self, pivots: &[bool]) -> Vec<String> {
        self.unknowns.iter().zip(pivots).filter(|(_, p)| !**p).map(|(u, _)| format!("v{u}")).collect()
    }
}

/// `T(Q, ℓ)` up to degree `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SsmPolynomial {
    pub series: ChernSeries,
    pub entry: String,
    pub ell: u32,
    pub degree: u32,
    pub codim: u32,
}

impl SsmPolynomial {
    /// The lowest-degree part, i.e. the Thom polynomial.
    pub fn thom(&self) -> ChernSeries {
        self.series.homogeneous_part(self.codim)
    }
}

/// `e(source) / c(source)` of an entry up to degree `d`.
pub fn axiom_rhs(entry: &SingularityEntry, d: u32) -> Result<TorusPolynomial> {
    let r = entry.torus_rank;
    let e = euler_class(&entry.source_weights, r)?;
    let c = total_chern(&entry.source_weights, r, d)?;
    Ok(e.with_degree(d).times(&c.invert()?))
}

/// Rows contributed by one catalog entry in both roles.
struct EntryRows {
    name: String,
    restriction: Vec<Row>,
    vanishing: Vec<Row>,
}

fn entry_rows(entry: &SingularityEntry, unknowns: &[Partition], d: u32) -> Result<EntryRows> {
    let r = entry.torus_rank;
    let table = MonomialTable::new(r, d);
    let images = chern_images(&entry.source_weights, &entry.target_weights, r, d)?;
    let images: Vec<Homogeneous> = images.iter().enumerate().map(|(k, p)| table.dense(p, k as u32 + 1)).collect();
    let src = total_chern(&entry.source_weights, r, d)?;
    let src: Vec<Homogeneous> = (0..=d).map(|k| table.dense(&src, k)).collect();
    let rhs = axiom_rhs(entry, d)?;
    let rhs: Vec<Homogeneous> = (0..=d).map(|k| table.dense(&rhs, k)).collect();

    // ψ(c_λ) = ψ(c_{λ_1}) · ψ(c_{λ_2} c_{λ_3} …), memoized along the unknown order.
    let index: HashMap<&Partition, usize> = unknowns.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut psi: Vec<Homogeneous> = Vec::with_capacity(unknowns.len());
    for lambda in unknowns {
        let value = match lambda.parts().split_first() {
            None => Homogeneous::one(),
            Some((&first, rest)) => {
                let tail = &psi[index[&Partition::from_parts(rest.to_vec())]];
                table.product(&images[first as usize - 1], tail)
            }
        };
        psi.push(value);
    }

    let provenance = |axiom, k: u32, i: usize| Provenance {
        entry: entry.name.clone(),
        axiom,
        degree: k,
        monomial: table.monomial(k, i).to_vec(),
    };
    let mut restriction = Vec::new();
    for k in 0..=d {
        let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); table.count(k)];
        for (col, _) in unknowns.iter().enumerate().filter(|(_, l)| l.weight() == k) {
            for (i, c) in psi[col].coeffs.iter().enumerate() {
                if !c.is_zero() {
                    rows[i].push((col, c.clone()));
                }
            }
        }
        for (i, coeffs) in rows.into_iter().enumerate() {
            let rhs_value = rhs[k as usize].coeffs[i].clone();
            if coeffs.is_empty() && rhs_value.is_zero() {
                continue;
            }
            restriction.push(Row { coeffs, rhs: rhs_value, provenance: provenance(Axiom::Restriction, k, i) });
        }
    }
    let mut vanishing = Vec::new();
    for k in entry.codim..=d {
        let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); table.count(k)];
        for (col, lambda) in unknowns.iter().enumerate() {
            let w = lambda.weight();
            if w > k {
                continue;
            }
            let prod = table.product(&psi[col], &src[(k - w) as usize]);
            for (i, c) in prod.coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    rows[i].push((col, c));
                }
            }
        }
        for (i, coeffs) in rows.into_iter().enumerate() {
            if !coeffs.is_empty() {
                vanishing.push(Row { coeffs, rhs: BigInt::zero(), provenance: provenance(Axiom::Vanishing, k, i) });
            }
        }
    }
    Ok(EntryRows { name: entry.name.clone(), restriction, vanishing })
}

/// Interpolation data for one catalog and degree, shared by all targets.
pub struct Interpolator {
    catalog: Catalog,
    degree: u32,
    unknowns: Vec<Partition>,
    entries: Vec<EntryRows>,
}

impl Interpolator {
    /// Validates the catalog at degree `d` and generates the rows of every
    /// entry of codimension at most `d`.
    pub fn new(cat: &Catalog, d: u32) -> Result<Self> {
        let bound = mather_bound(cat.ell as i64)?;
        if d > bound {
            return Err(Error::DegreeTooLarge {
                degree: d,
                limit: bound,
                reason: format!("interpolation is only valid up to the Mather bound M({})", cat.ell),
            });
        }
        let report = validate_catalog(cat, d);
        if !report.passed() {
            let failures: Vec<String> =
                report.failures().map(|c| format!("{}: {} ({})", c.subject, c.check, c.detail)).collect();
            return Err(Error::InvalidCatalog(failures.join("; ")));
        }
        let unknowns = enumerate_partitions(d);
        let entries = cat
            .up_to(d)
            .par_iter()
            .map(|e| entry_rows(e, &unknowns, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Interpolator { catalog: cat.clone(), degree: d, unknowns, entries })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    /// The system whose unique solution is `T(target)` up to degree `d`.
    pub fn system(&self, target: &str) -> Result<ConstraintSystem> {
        let entry = self.catalog.entry(target)?;
        if entry.codim > self.degree {
            return Err(Error::DegreeTooLarge {
                degree: entry.codim,
                limit: self.degree,
                reason: format!("codimension of {} exceeds the requested degree", entry.name),
            });
        }
        let mut rows = Vec::new();
        for e in &self.entries {
            let part = if e.name == entry.name { &e.restriction } else { &e.vanishing };
            rows.extend(part.iter().cloned());
        }
        Ok(ConstraintSystem { unknowns: self.unknowns.clone(), rows })
    }

    pub fn solve(&self, target: &str) -> Result<SsmPolynomial> {
        let entry = self.catalog.entry(target)?;
        let sys = self.system(target)?;
        let x = solve_exact(&sys)?;
        package(entry, self.catalog.ell, self.degree, &sys.unknowns, x)
    }

    /// `T` for every entry of codimension at most `d`, in catalog order.
    pub fn solve_all(&self) -> Result<Vec<SsmPolynomial>> {
        let names: Vec<&str> = self.entries.iter().map(|e| e.name.as_str()).collect();
        names.par_iter().map(|n| self.solve(n)).collect()
    }
}

fn package(entry: &SingularityEntry, ell: u32, d: u32, unknowns: &[Partition], x: Vec<Scalar>) -> Result<SsmPolynomial> {
    let series = ChernSeries::from_terms(d, unknowns.iter().cloned().zip(x));
    let lowest = series.lowest_degree();
    if lowest != Some(entry.codim) {
        return Err(Error::DegreeLaw { expected: entry.codim, got: lowest });
    }
    Ok(SsmPolynomial { series, entry: entry.name.clone(), ell, degree: d, codim: entry.codim })
}

/// The interpolation system for `target` at degree `d`.
pub fn build_system(target: &str, cat: &Catalog, d: u32) -> Result<ConstraintSystem> {
    Interpolator::new(cat, d)?.system(target)
}

const MAX_PRIMES: usize = 64;

/// Solves exactly, requiring a unique solution that satisfies every row.
///
/// Elimination runs modulo 62-bit primes; a full-rank elimination proves
/// uniqueness over `Q`, and the rational reconstruction is accepted only once
/// it satisfies every row exactly. Rank deficiency or inconsistency is
/// reported only after it shows up modulo two different primes.
pub fn solve_exact(sys: &ConstraintSystem) -> Result<Vec<Scalar>> {
    let n = sys.unknowns.len();
    let mut crt = modular::Crt::new(n);
    let mut previous: Option<Vec<Scalar>> = None;
    let mut deficient = 0;
    let mut inconsistent = 0;
    for p in modular::primes().take(MAX_PRIMES) {
        match modular::solve_mod(&sys.rows, n, p) {
            modular::ModOutcome::Solved(residues) => {
                crt.add(&residues, p);
                let Some(candidate) = crt.reconstruct() else {
                    continue;
                };
                match sys.first_violation(&candidate) {
                    None => return Ok(candidate),
                    Some(row) if previous.as_ref() == Some(&candidate) => {
                        return Err(Error::Inconsistent(sys.rows[row].provenance.to_string()));
                    }
                    Some(_) => previous = Some(candidate),
                }
            }
            modular::ModOutcome::Deficient { pivots } => {
                deficient += 1;
                if deficient == 2 {
                    return Err(Error::Underdetermined { free: sys.free_unknowns(&pivots) });
                }
            }
            modular::ModOutcome::Inconsistent { row } => {
                inconsistent += 1;
                if inconsistent == 2 {
                    return Err(Error::Inconsistent(sys.rows[row].provenance.to_string()));
                }
            }
        }
    }
    Err(Error::Inconsistent(format!("no rational solution reconstructed after {MAX_PRIMES} primes")))
}

/// Solves by fraction-free elimination over the integers, pivoting on the
/// first nonzero entry in row-major order. Slower than [`solve_exact`] but
/// entirely independent of it.
pub fn solve_fraction_free(sys: &ConstraintSystem) -> Result<Vec<Scalar>> {
    match bareiss::solve(&sys.rows, sys.unknowns.len()) {
        bareiss::BareissOutcome::Solved(x) => match sys.first_violation(&x) {
            None => Ok(x),
            Some(row) => Err(Error::Inconsistent(sys.rows[row].provenance.to_string())),
        },
        bareiss::BareissOutcome::Deficient { pivots } => Err(Error::Underdetermined { free: sys.free_unknowns(&pivots) }),
        bareiss::BareissOutcome::Inconsistent { row } => Err(Error::Inconsistent(sys.rows[row].provenance.to_string())),
    }
}

/// `T(target, ℓ)` up to degree `d`.
pub fn ssm_thom(target: &str, ell: u32, d: u32, cat: &Catalog) -> Result<SsmPolynomial> {
    if cat.ell != ell {
        return Err(Error::InvalidCatalog(format!("catalog is for ell = {}, requested ell = {ell}", cat.ell)));
    }
    Interpolator::new(cat, d)?.solve(target)
}

/// The Thom polynomial of `target`: the lowest part of `T`, computed at
/// degree equal to the codimension.
pub fn thom_polynomial(target: &str, ell: u32, cat: &Catalog) -> Result<ChernSeries> {
    let codim = cat.entry(target)?.codim;
    Ok(ssm_thom(target, ell, codim, cat)?.thom())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub entry: String,
    pub axiom: Axiom,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Re-checks both axioms for `t` against every entry of codimension at most
/// `t.degree`, by direct substitution.
pub fn verify_axioms(t: &SsmPolynomial, cat: &Catalog) -> AxiomReport {
    let d = t.degree;
    let mut report = AxiomReport::default();
    for entry in cat.up_to(d) {
        let is_target = entry.name == t.entry;
        let axiom = if is_target { Axiom::Restriction } else { Axiom::Vanishing };
        let outcome = check_entry(t, entry, is_target);
        report.checks.push(AxiomCheck {
            entry: entry.name.clone(),
            axiom,
            passed: matches!(outcome, Ok(None)),
            detail: match outcome {
                Ok(None) => String::new(),
                Ok(Some(s)) => s,
                Err(e) => e.to_string(),
            },
        });
    }
    report
}

fn check_entry(t: &SsmPolynomial, entry: &SingularityEntry, is_target: bool) -> Result<Option<String>> {
    let d = t.degree;
    let r = entry.torus_rank;
    let images = chern_images(&entry.source_weights, &entry.target_weights, r, d)?;
    let restricted = substitute_with_unit(&t.series, &images, &TorusPolynomial::one(r, d))?;
    if is_target {
        let expected = axiom_rhs(entry, d)?;
        let diff = restricted.minus(&expected);
        return Ok(diff.terms().next().map(|(m, c)| format!("restriction differs by {c} at monomial {m}")));
    }
    let product = restricted.times(&total_chern(&entry.source_weights, r, d)?);
    let bad = product
        .terms()
        .find(|(m, _)| m.degree() >= entry.codim)
        .map(|(m, c)| format!("coefficient {c} at degree {}, monomial {m}", m.degree()));
    Ok(bad)
}
