use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{int, Scalar};
use super::series::{substitute_with_unit, ChernSeries, GradedAlgebra};
use crate::{Error, Result};

/// Character of a rank-`r` torus, i.e. the linear form `Σ w_j a_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Self {
        WeightVector(entries)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Zero-extends to `rank` coordinates.
    pub fn padded(&self, rank: usize) -> WeightVector {
        let mut v = self.0.clone();
        v.resize(rank, 0);
        WeightVector(v)
    }

    pub fn unit(rank: usize, index: usize) -> WeightVector {
        let mut v = vec![0; rank];
        v[index] = 1;
        WeightVector(v)
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: i64) -> WeightVector {
        WeightVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for WeightVector {
    /// As a linear form, e.g. `2a-b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, &w) in self.0.iter().enumerate() {
            if w == 0 {
                continue;
            }
            if w < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if w.abs() != 1 {
                write!(f, "{}", w.abs())?;
            }
            f.write_str(&variable_name(j))?;
            first = false;
        }
        Ok(())
    }
}

/// Torus variable names: `a, b, c, …`, then `a26, a27, …`.
pub fn variable_name(j: usize) -> String {
    if j < 26 {
        ((b'a' + j as u8) as char).to_string()
    } else {
        format!("a{j}")
    }
}

/// Exponent vector; ordered by total degree, then lexicographically
/// descending (`a^2`, `ab`, `b^2`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TorusMonomial(pub Vec<u32>);

impl TorusMonomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for TorusMonomial {
    /// `a^2b`, or `1` for the constant monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        for (j, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => f.write_str(&variable_name(j))?,
                e => write!(f, "{}^{e}", variable_name(j))?,
            }
        }
        Ok(())
    }
}

impl Ord for TorusMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for TorusMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Truncated polynomial in torus variables `a_1 … a_r`, all of degree 1.
#[derive(Clone, PartialEq, Debug)]
pub struct TorusPolynomial {
    rank: usize,
    degree: u32,
    terms: BTreeMap<TorusMonomial, Scalar>,
}

impl TorusPolynomial {
    pub fn zero(rank: usize, degree: u32) -> Self {
        TorusPolynomial { rank, degree, terms: BTreeMap::new() }
    }

    pub fn constant(rank: usize, degree: u32, value: Scalar) -> Self {
        let mut out = Self::zero(rank, degree);
        out.add_term(TorusMonomial(vec![0; rank]), value);
        out
    }

    pub fn one(rank: usize, degree: u32) -> Self {
        Self::constant(rank, degree, Scalar::one())
    }

    /// The linear form `⟨w, a⟩`.
    pub fn linear(weight: &WeightVector, degree: u32) -> Self {
        let rank = weight.rank();
        let mut out = Self::zero(rank, degree);
        for (j, &w) in weight.entries().iter().enumerate() {
            out.add_term(TorusMonomial(WeightVector::unit(rank, j).0.iter().map(|&e| e as u32).collect()), int(w));
        }
        out
    }

    pub fn from_terms(rank: usize, degree: u32, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut out = Self::zero(rank, degree);
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), rank, "exponent vector length must equal the torus rank");
            out.add_term(TorusMonomial(exps), coeff);
        }
        out
    }

    pub fn add_term(&mut self, mono: TorusMonomial, coeff: Scalar) {
        if mono.degree() > self.degree || coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(Scalar::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TorusMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(&TorusMonomial(exps.to_vec())).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(TorusMonomial::degree)
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        TorusPolynomial {
            rank: self.rank,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, degree: u32) -> Self {
        let degree = degree.min(self.degree);
        TorusPolynomial {
            rank: self.rank,
            degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same terms, truncation degree set to `degree` (dropping terms above it).
    pub fn with_degree(&self, degree: u32) -> Self {
        TorusPolynomial {
            rank: self.rank,
            degree,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= degree).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.degree);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&int(-1)))
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(self.rank, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    pub fn times(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        let degree = self.degree.min(other.degree);
        let mut out = Self::zero(self.rank, degree);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > degree {
                break;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() > degree {
                    break;
                }
                let exps = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(TorusMonomial(exps), ca * cb);
            }
        }
        out
    }

    /// Inverse of a series with constant term 1, up to the own degree.
    pub fn invert(&self) -> Result<Self> {
        let constant = self.coeff(&vec![0; self.rank]);
        if !constant.is_one() {
            return Err(Error::NotInvertible(constant.to_string()));
        }
        let pieces: Vec<Self> = (0..=self.degree).map(|k| self.homogeneous_part(k)).collect();
        let mut inverse = vec![Self::one(self.rank, self.degree)];
        for k in 1..=self.degree as usize {
            let mut next = Self::zero(self.rank, self.degree);
            for j in 1..=k {
                next = next.minus(&pieces[j].times(&inverse[k - j]));
            }
            inverse.push(next);
        }
        Ok(inverse.iter().fold(Self::zero(self.rank, self.degree), |acc, p| acc.plus(p)))
    }
}

impl GradedAlgebra for TorusPolynomial {
    fn unit(&self) -> Self {
        Self::one(self.rank, self.degree)
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.rank, self.degree)
    }

    fn add_scaled(&mut self, other: &Self, factor: &Scalar) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    fn mul(&self, other: &Self) -> Self {
        self.times(other)
    }
}

impl fmt::Display for TorusPolynomial {
    /// `2a^2 - 6a^3`, degree-major.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            let magnitude = coeff.abs();
            match (i, coeff.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = mono.degree() == 0;
            if !magnitude.is_one() || constant {
                write!(f, "{magnitude}")?;
            }
            if !constant {
                write!(f, "{mono}")?;
            }
        }
        Ok(())
    }
}

fn check_rank(weights: &[WeightVector], rank: usize) -> Result<()> {
    for w in weights {
        if w.rank() != rank {
            return Err(Error::RankMismatch { weight: w.0.clone(), got: w.rank(), rank });
        }
    }
    Ok(())
}

/// `∏ (1 + ⟨w, a⟩)` truncated at `d`.
pub fn total_chern(weights: &[WeightVector], rank: usize, d: u32) -> Result<TorusPolynomial> {
    check_rank(weights, rank)?;
    Ok(weights.iter().fold(TorusPolynomial::one(rank, d), |acc, w| {
        acc.times(&TorusPolynomial::one(rank, d).plus(&TorusPolynomial::linear(w, d)))
    }))
}

/// `∏ ⟨w, a⟩`, homogeneous of degree `weights.len()`.
pub fn euler_class(weights: &[WeightVector], rank: usize) -> Result<TorusPolynomial> {
    check_rank(weights, rank)?;
    if let Some(index) = weights.iter().position(WeightVector::is_zero) {
        return Err(Error::ZeroEulerClass { index });
    }
    let d = weights.len() as u32;
    Ok(weights
        .iter()
        .fold(TorusPolynomial::one(rank, d), |acc, w| acc.times(&TorusPolynomial::linear(w, d))))
}

/// `c(target) / c(source)` up to degree `d`.
pub fn quotient_series(
    source: &[WeightVector],
    target: &[WeightVector],
    rank: usize,
    d: u32,
) -> Result<TorusPolynomial> {
    let numerator = total_chern(target, rank, d)?;
    let denominator = total_chern(source, rank, d)?.invert()?;
    Ok(numerator.times(&denominator))
}

/// Images of `c_1 … c_d` under `1 + c_1 + c_2 + … ↦ c(target)/c(source)`.
pub fn chern_images(
    source: &[WeightVector],
    target: &[WeightVector],
    rank: usize,
    d: u32,
) -> Result<Vec<TorusPolynomial>> {
    let quotient = quotient_series(source, target, rank, d)?;
    Ok((1..=d).map(|k| quotient.homogeneous_part(k)).collect())
}

/// Image of `a` under `1 + c_1 + … ↦ ∏_{j ≤ m+ℓ}(1+b_j) / ∏_{i ≤ m}(1+a_i)`.
///
/// The result lives in a torus ring of rank `2m + ℓ`: coordinates `0..m` are
/// the source roots `a_i`, the remaining `m + ℓ` are the target roots `b_j`.
pub fn split_to_roots(a: &ChernSeries<Scalar>, m: usize, ell: usize, d: u32) -> Result<TorusPolynomial> {
    let rank = 2 * m + ell;
    let source: Vec<WeightVector> = (0..m).map(|i| WeightVector::unit(rank, i)).collect();
    let target: Vec<WeightVector> = (m..rank).map(|j| WeightVector::unit(rank, j)).collect();
    let images = chern_images(&source, &target, rank, d)?;
    substitute_with_unit(&a.truncate(d), &images, &TorusPolynomial::one(rank, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Partition;

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec())
    }

    fn poly1(d: u32, coeffs: &[(u32, i64)]) -> TorusPolynomial {
        TorusPolynomial::from_terms(1, d, coeffs.iter().map(|&(e, c)| (vec![e], int(c))))
    }

    #[test]
    fn total_chern_examples() {
        assert_eq!(total_chern(&[w(&[1]), w(&[2])], 1, 5).unwrap(), poly1(5, &[(0, 1), (1, 3), (2, 2)]));
        assert_eq!(total_chern(&[], 1, 3).unwrap(), TorusPolynomial::one(1, 3));
        assert_eq!(
            total_chern(&[w(&[1]), w(&[1]), w(&[1])], 1, 2).unwrap(),
            poly1(2, &[(0, 1), (1, 3), (2, 3)])
        );
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_class(&[w(&[1]), w(&[2])], 1).unwrap(), poly1(2, &[(2, 2)]));
        assert_eq!(euler_class(&[w(&[1]), w(&[2]), w(&[3])], 1).unwrap(), poly1(3, &[(3, 6)]));
        assert!(matches!(euler_class(&[w(&[0])], 1), Err(Error::ZeroEulerClass { index: 0 })));
    }

    #[test]
    fn euler_is_top_part_of_total_chern() {
        let weights = [w(&[1, 2]), w(&[-1, 3]), w(&[2, 0])];
        let e = euler_class(&weights, 2).unwrap();
        let c = total_chern(&weights, 2, 3).unwrap();
        assert_eq!(e, c.homogeneous_part(3));
    }

    #[test]
    fn quotient_for_x2_y3() {
        let source = [w(&[1, 0]), w(&[0, 1])];
        let target = [w(&[2, 0]), w(&[0, 3])];
        let q = quotient_series(&source, &target, 2, 3).unwrap();
        // 1 + (a+2b) + (-a^2+2ab-2b^2) + (a^3-2a^2b-2ab^2+2b^3)
        let expected = TorusPolynomial::from_terms(
            2,
            3,
            [
                (vec![0, 0], 1),
                (vec![1, 0], 1),
                (vec![0, 1], 2),
                (vec![2, 0], -1),
                (vec![1, 1], 2),
                (vec![0, 2], -2),
                (vec![3, 0], 1),
                (vec![2, 1], -2),
                (vec![1, 2], -2),
                (vec![0, 3], 2),
            ]
            .into_iter()
            .map(|(e, c)| (e, int(c))),
        );
        assert_eq!(q, expected);
        assert_eq!(q.to_string(), "1 + a + 2b - a^2 + 2ab - 2b^2 + a^3 - 2a^2b - 2ab^2 + 2b^3");
    }

    #[test]
    fn images_for_a1() {
        let images = chern_images(&[w(&[1])], &[w(&[2])], 1, 3).unwrap();
        assert_eq!(images, vec![poly1(3, &[(1, 1)]), poly1(3, &[(2, -1)]), poly1(3, &[(3, 1)])]);
    }

    #[test]
    fn equal_multisets_give_zero_images() {
        let weights = [w(&[1, -1]), w(&[2, 3])];
        let images = chern_images(&weights, &[w(&[2, 3]), w(&[1, -1])], 2, 4).unwrap();
        assert!(images.iter().all(TorusPolynomial::is_zero));
    }

    #[test]
    fn shared_weights_cancel() {
        let src = [w(&[1, 0]), w(&[0, 1])];
        let tgt = [w(&[2, 0]), w(&[0, 3])];
        let shared = [w(&[2, -1]), w(&[-1, 3])];
        let plain = chern_images(&src, &tgt, 2, 5).unwrap();
        let src2: Vec<_> = src.iter().chain(&shared).cloned().collect();
        let tgt2: Vec<_> = tgt.iter().chain(&shared).cloned().collect();
        assert_eq!(plain, chern_images(&src2, &tgt2, 2, 5).unwrap());
    }

    #[test]
    fn rank_mismatch() {
        assert!(matches!(total_chern(&[w(&[1, 2])], 1, 2), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn roots_of_constant() {
        let one = ChernSeries::<Scalar>::one(4);
        assert_eq!(split_to_roots(&one, 2, 1, 4).unwrap(), TorusPolynomial::one(5, 4));
        let c1 = ChernSeries::<Scalar>::monomial(Partition::from_parts(vec![1]), int(1), 4);
        assert!(!split_to_roots(&c1, 1, 0, 4).unwrap().is_zero());
    }
}
