//! Applications of SSM-Thom polynomials: characteristic classes of maps
//! between projective spaces, Euler characteristics of singularity loci,
//! hierarchy tests and the global sum rule.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{
    chern_images, enumerate_partitions, int, substitute_with_unit, ChernSeries, GradedAlgebra, ParamScalar,
    Partition, Scalar, TorusPolynomial, WeightVector,
};
use crate::bases::SchurTilde;
use crate::catalog::Catalog;
use crate::solver::{Interpolator, SsmPolynomial};
use crate::{Error, Result};

/// A class `Σ a_k h^k` in `H*(P^m)`, arithmetic modulo `h^{m+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveClass {
    dim: u32,
    coeffs: Vec<ParamScalar>,
}

impl ProjectiveClass {
    pub fn zero(dim: u32) -> Self {
        ProjectiveClass { dim, coeffs: vec![ParamScalar::zero(); dim as usize + 1] }
    }

    pub fn one(dim: u32) -> Self {
        Self::monomial(dim, 0, ParamScalar::one())
    }

    /// `c · h^k`, zero when `k > dim`.
    pub fn monomial(dim: u32, k: u32, c: ParamScalar) -> Self {
        let mut out = Self::zero(dim);
        if k <= dim {
            out.coeffs[k as usize] = c;
        }
        out
    }

    pub fn from_coeffs(dim: u32, coeffs: impl IntoIterator<Item = ParamScalar>) -> Self {
        let mut out = Self::zero(dim);
        for (k, c) in coeffs.into_iter().enumerate().take(dim as usize + 1) {
            out.coeffs[k] = c;
        }
        out
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Coefficient of `h^k`.
    pub fn coeff(&self, k: u32) -> ParamScalar {
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[ParamScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest `k` with a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|k| k as u32)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone());
        Self::from_coeffs(self.dim.min(other.dim), coeffs)
    }

    pub fn times(&self, other: &Self) -> Self {
        let dim = self.dim.min(other.dim) as usize;
        let mut out = Self::zero(dim as u32);
        for (i, a) in self.coeffs.iter().enumerate().take(dim + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(dim + 1 - i) {
                out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    /// Substitutes a value for a named parameter in every coefficient.
    pub fn eval(&self, name: &str, value: &Scalar) -> Self {
        Self::from_coeffs(self.dim, self.coeffs.iter().map(|c| c.eval(name, value)))
    }
}

impl GradedAlgebra for ProjectiveClass {
    fn unit(&self) -> Self {
        Self::one(self.dim)
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.dim)
    }

    fn add_scaled(&mut self, other: &Self, factor: &Scalar) {
        let scale = ParamScalar::constant(factor.clone());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.clone() + b.clone() * scale.clone();
        }
    }

    fn mul(&self, other: &Self) -> Self {
        self.times(other)
    }
}

impl fmt::Display for ProjectiveClass {
    /// `(7d - 6)h + (21d^2 - 42d + 21)h^2`, or `525h^4 - 5978h^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &ParamScalar)> = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in terms.into_iter().enumerate() {
            let power = match k {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{k}"),
            };
            match c.as_scalar() {
                Some(s) => {
                    match (i, s.is_negative()) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    let m = s.abs();
                    if k == 0 || !m.is_one() {
                        write!(f, "{m}")?;
                    }
                    f.write_str(&power)?;
                }
                None if k == 0 && i == 0 => write!(f, "{c}")?,
                None => write!(f, "{}({c}){power}", if i == 0 { "" } else { " + " })?,
            }
        }
        Ok(())
    }
}

fn binomial(n: u32, k: u32) -> Scalar {
    let mut out = Scalar::one();
    for i in 0..k {
        out = out * int((n - i) as i64) / int((i + 1) as i64);
    }
    out
}

/// `(1 + h)^{m+1}`, the total Chern class of `P^m`.
pub fn projective_tangent(m: u32) -> ProjectiveClass {
    ProjectiveClass::from_coeffs(m, (0..=m).map(|k| ParamScalar::constant(binomial(m + 1, k))))
}

/// `c_1(F) … c_m(F)` for a map `P^m → P^n` of degree `deg`, from
/// `c(F) = (1 + deg·h)^{n+1} / (1 + h)^{m+1}`.
pub fn chern_of_map(m: u32, n: u32, deg: &ParamScalar) -> Result<Vec<ProjectiveClass>> {
    if m < 1 || n < m {
        return Err(Error::Dimension(format!("need n >= m >= 1, got m = {m}, n = {n}")));
    }
    let pullback =
        ProjectiveClass::from_coeffs(m, (0..=m).map(|k| deg.pow(k) * ParamScalar::constant(binomial(n + 1, k))));
    let inverse = ProjectiveClass::from_coeffs(
        m,
        (0..=m).map(|k| {
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            ParamScalar::constant(sign * binomial(m + k, k))
        }),
    );
    let total = pullback.times(&inverse);
    Ok((1..=m).map(|k| ProjectiveClass::monomial(m, k, total.coeff(k))).collect())
}

/// `s^sm` of the locus: `T` evaluated at the Chern classes of the map.
pub fn ssm_of_locus(t: &SsmPolynomial, chern: &[ProjectiveClass], m: u32) -> Result<ProjectiveClass> {
    if t.degree < m {
        return Err(Error::Dimension(format!(
            "T({}) is known up to degree {} but P^{m} needs degree {m}",
            t.entry, t.degree
        )));
    }
    if let Some(bad) = chern.iter().find(|c| c.dim() != m) {
        return Err(Error::Dimension(format!("class in P^{} used on P^{m}", bad.dim())));
    }
    let mut images = chern.to_vec();
    images.resize(t.degree.max(1) as usize, ProjectiveClass::zero(m));
    substitute_with_unit(&t.series.truncate(m.min(t.degree)), &images, &ProjectiveClass::one(m))
}

/// `c^sm = s^sm · c(TP^m)`.
pub fn csm_from_ssm(s: &ProjectiveClass) -> ProjectiveClass {
    s.times(&projective_tangent(s.dim()))
}

/// A polynomial in `t`, lowest coefficient first, without trailing zeros.
pub type TPolynomial = Vec<ParamScalar>;

fn trim(mut p: TPolynomial) -> TPolynomial {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// `A(p)(t) = (t·p(-t-1) + p(0)) / (t + 1)`.
pub fn aluffi_involution(p: &[ParamScalar]) -> TPolynomial {
    let p = trim(p.to_vec());
    if p.is_empty() {
        return p;
    }
    let n = p.len();
    // q(t) = t·p(-t-1) + p(0), with p(-t-1) = Σ p_i (-1)^i (t+1)^i.
    let mut q = vec![ParamScalar::zero(); n + 1];
    for (i, pi) in p.iter().enumerate() {
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        for k in 0..=i {
            let c = ParamScalar::constant(&sign * binomial(i as u32, k as u32));
            q[k + 1] = q[k + 1].clone() + pi.clone() * c;
        }
    }
    q[0] = q[0].clone() + p[0].clone();
    // q(t) = (t + 1)·b(t): q_k = b_{k-1} + b_k.
    let mut b = vec![ParamScalar::zero(); n];
    b[n - 1] = q[n].clone();
    for k in (1..n).rev() {
        b[k - 1] = q[k].clone() - b[k].clone();
    }
    debug_assert!((q[0].clone() - b[0].clone()).is_zero(), "t + 1 must divide the numerator");
    trim(b)
}

/// Degree and Euler characteristics read off a CSM class.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerProfile {
    /// `γ(t) = Σ a_i t^{N-i}`.
    pub gamma: TPolynomial,
    /// `χ(t) = A(γ)(t)`; the coefficient of `(-t)^r` is the Euler
    /// characteristic of a section by `r` general hyperplanes.
    pub chi: TPolynomial,
    /// Coefficient of the lowest nonzero power of `h`.
    pub degree: ParamScalar,
    /// `χ(0)`.
    pub euler: ParamScalar,
    pub ambient_dim: u32,
}

pub fn euler_profile(c: &ProjectiveClass) -> EulerProfile {
    let n = c.dim() as usize;
    let gamma: TPolynomial = trim((0..=n).map(|j| c.coeff((n - j) as u32)).collect());
    let chi = aluffi_involution(&gamma);
    let degree = c.lowest_degree().map(|k| c.coeff(k)).unwrap_or_default();
    let euler = chi.first().cloned().unwrap_or_default();
    EulerProfile { gamma, chi, degree, euler, ambient_dim: c.dim() }
}

/// Outcome of comparing two entries in the hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Below,
    NotBelow,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Below => "below",
            Verdict::NotBelow => "not-below",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HierarchyResult {
    pub lower: String,
    pub upper: String,
    pub verdict: Verdict,
    /// `ψ_lower(Thom(upper))`.
    pub witness: TorusPolynomial,
    /// Whether some linear functional is positive on every source weight of
    /// `lower`.
    pub positive: bool,
}

impl fmt::Display for HierarchyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (witness {})", self.verdict, self.witness)
    }
}

/// Decides whether `lower` lies in the closure of the `upper` locus by
/// restricting the Thom polynomial of `upper` to the prototype of `lower`.
pub fn hierarchy_test(lower: &str, upper: &str, ell: u32, d: u32, cat: &Catalog) -> Result<HierarchyResult> {
    let lo = cat.entry(lower)?;
    let up = cat.entry(upper)?;
    if d < up.codim {
        return Err(Error::DegreeTooLarge {
            degree: up.codim,
            limit: d,
            reason: format!("{} has codimension above the requested degree", up.name),
        });
    }
    if cat.ell != ell {
        return Err(Error::InvalidCatalog(format!("catalog is for ell = {}, requested ell = {ell}", cat.ell)));
    }
    let thom = Interpolator::new(cat, d)?.solve(&up.name)?.thom();
    let witness = restrict(&thom, lo, up.codim)?;
    let positive = positive_functional_exists(&lo.source_weights);
    let verdict = match (witness.is_zero(), positive) {
        (false, _) => Verdict::Below,
        (true, true) => Verdict::NotBelow,
        (true, false) => Verdict::Inconclusive,
    };
    Ok(HierarchyResult { lower: lo.name.clone(), upper: up.name.clone(), verdict, witness, positive })
}

fn restrict(a: &ChernSeries, entry: &crate::catalog::SingularityEntry, d: u32) -> Result<TorusPolynomial> {
    let r = entry.torus_rank;
    let images = chern_images(&entry.source_weights, &entry.target_weights, r, d)?;
    substitute_with_unit(&a.truncate(d), &images, &TorusPolynomial::one(r, d))
}

/// Whether `w · y ≥ 1` has a rational solution for every `w` in `weights`,
/// decided by Fourier–Motzkin elimination.
pub fn positive_functional_exists(weights: &[WeightVector]) -> bool {
    let Some(rank) = weights.first().map(WeightVector::rank) else {
        return true;
    };
    // Each inequality is `coeffs · y ≥ rhs`.
    let mut system: BTreeSet<(Vec<Scalar>, Scalar)> =
        weights.iter().map(|w| normalize(w.entries().iter().map(|&x| int(x)).collect(), int(1))).collect();
    for var in 0..rank {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for (a, b) in system {
            if a[var].is_positive() {
                pos.push((a, b));
            } else if a[var].is_negative() {
                neg.push((a, b));
            } else {
                rest.insert((a, b));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                // Scale so the `var` coefficients cancel.
                let (sp, sn) = (-an[var].clone(), ap[var].clone());
                let a: Vec<Scalar> = ap.iter().zip(an).map(|(x, y)| x * &sp + y * &sn).collect();
                rest.insert(normalize(a, bp * &sp + bn * &sn));
            }
        }
        system = rest;
    }
    system.iter().all(|(_, b)| !b.is_positive())
}

/// Divides by the largest coefficient magnitude so duplicates coincide.
fn normalize(a: Vec<Scalar>, b: Scalar) -> (Vec<Scalar>, Scalar) {
    let scale = a.iter().map(|x| x.abs()).max().unwrap_or_else(Scalar::zero);
    if scale.is_zero() {
        let b = if b.is_positive() { int(1) } else if b.is_negative() { int(-1) } else { int(0) };
        return (a, b);
    }
    (a.iter().map(|x| x / &scale).collect(), b / scale)
}

/// The sum rule: the SSM-Thom polynomials of all entries add up to 1, and the
/// Schur-tilde expansion of 1 has every coefficient equal to 1.
#[derive(Clone, Debug)]
pub struct SumReport {
    pub degree: u32,
    pub entries: usize,
    pub sum: ChernSeries,
    pub sum_is_one: bool,
    /// `None` when the degree is past the tilde expansion limit.
    pub tilde_all_ones: Option<bool>,
}

impl SumReport {
    pub fn passed(&self) -> bool {
        self.sum_is_one && self.tilde_all_ones != Some(false)
    }
}

pub fn sum_check(cat: &Catalog, d: u32) -> Result<SumReport> {
    let interp = Interpolator::new(cat, d)?;
    let all = interp.solve_all()?;
    let sum = all.iter().fold(ChernSeries::zero(d), |acc, t| &acc + &t.series);
    let sum_is_one = sum == ChernSeries::one(d);
    let tilde_all_ones = match SchurTilde::new(d) {
        Ok(mut st) => {
            let e = st.expand(&sum)?;
            let every: Vec<Partition> = enumerate_partitions(d);
            Some(e.terms.len() == every.len() && every.iter().all(|p| e.coeff(p) == int(1)))
        }
        Err(Error::DegreeTooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SumReport { degree: d, entries: all.len(), sum, sum_is_one, tilde_all_ones })
}
