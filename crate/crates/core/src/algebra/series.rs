use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};



use super::partition::Partition;
use super::scalar::{Coefficient, Scalar};
use crate::{Error, Result};

/// Truncated power series in `c_1, c_2, …` with `deg c_i = i`.
///
/// Monomials are keyed by partitions: `(2,1,1)` is `c_2 c_1^2`. No stored
/// monomial has weight above the truncation degree, and absent monomials read
/// as zero.
#[derive(Clone, PartialEq, Debug)]
pub struct ChernSeries<C = Scalar> {
    degree: u32,
    terms: BTreeMap<Partition, C>,
}

impl<C: Coefficient> ChernSeries<C> {
    pub fn zero(degree: u32) -> Self {
        ChernSeries { degree, terms: BTreeMap::new() }
    }

    pub fn one(degree: u32) -> Self {
        Self::monomial(Partition::empty(), C::one(), degree)
    }

    /// `c_k`, with `c_0 = 1` and `c_k = 0` for negative `k`.
    pub fn c(k: i64, degree: u32) -> Self {
        match k {
            k if k < 0 => Self::zero(degree),
            0 => Self::one(degree),
            k => Self::monomial(Partition::from_parts(vec![k as u32]), C::one(), degree),
        }
    }

    pub fn monomial(partition: Partition, coeff: C, degree: u32) -> Self {
        let mut out = Self::zero(degree);
        out.add_term(partition, coeff);
        out
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Partition, C)>) -> Self {
        let mut out = Self::zero(degree);
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    /// Adds `coeff · c_λ`; silently dropped above the truncation degree.
    pub fn add_term(&mut self, partition: Partition, coeff: C) {
        if partition.weight() > self.degree || coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&partition) {
            Some(slot) => {
                let sum = slot.clone() + coeff;
                if sum.is_zero() {
                    self.terms.remove(&partition);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(partition, coeff);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, partition: &Partition) -> C {
        self.terms.get(partition).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().map(Partition::weight).min()
    }

    pub fn truncate(&self, degree: u32) -> Self {
        let degree = degree.min(self.degree);
        ChernSeries {
            degree,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.weight() <= degree)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same terms, reinterpreted with a different truncation degree.
    pub fn with_degree(&self, degree: u32) -> Self {
        Self::from_terms(degree, self.terms.iter().map(|(p, c)| (p.clone(), c.clone())))
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        ChernSeries {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.weight() == k)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        Self::from_terms(self.degree, self.terms.iter().map(|(p, c)| (p.clone(), c.scale(factor))))
    }

    pub fn mul(&self, other: &Self, degree: u32) -> Self {
        let degree = degree.min(self.degree).min(other.degree);
        let mut out = Self::zero(degree);
        for (pa, ca) in &self.terms {
            let wa = pa.weight();
            if wa > degree {
                continue;
            }
            for (pb, cb) in &other.terms {
                if wa + pb.weight() > degree {
                    continue;
                }
                let mut parts = pa.parts().to_vec();
                parts.extend_from_slice(pb.parts());
                out.add_term(Partition::from_parts(parts), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> ChernSeries<D> {
        ChernSeries::from_terms(self.degree, self.terms.iter().map(|(p, c)| (p.clone(), f(c))))
    }

    /// Homogeneous components indexed by degree `0..=self.degree`.
    fn graded_pieces(&self) -> Vec<Self> {
        (0..=self.degree).map(|k| self.homogeneous_part(k)).collect()
    }
}

impl<C: Coefficient> Add for &ChernSeries<C> {
    type Output = ChernSeries<C>;

    fn add(self, rhs: &ChernSeries<C>) -> ChernSeries<C> {
        let mut out = self.truncate(rhs.degree);
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl<C: Coefficient> Neg for &ChernSeries<C> {
    type Output = ChernSeries<C>;

    fn neg(self) -> ChernSeries<C> {
        self.map(|c| -c.clone())
    }
}

impl<C: Coefficient> Sub for &ChernSeries<C> {
    type Output = ChernSeries<C>;

    fn sub(self, rhs: &ChernSeries<C>) -> ChernSeries<C> {
        self + &(-rhs)
    }
}

pub fn series_mul<C: Coefficient>(a: &ChernSeries<C>, b: &ChernSeries<C>, d: u32) -> ChernSeries<C> {
    a.mul(b, d)
}

/// Multiplicative inverse up to degree `d`; the constant term must be 1.
pub fn series_invert<C: Coefficient>(a: &ChernSeries<C>, d: u32) -> Result<ChernSeries<C>> {
    let constant = a.coeff(&Partition::empty());
    if !constant.is_one() {
        return Err(Error::NotInvertible(constant.to_string()));
    }
    let d = d.min(a.degree);
    let pieces = a.truncate(d).graded_pieces();
    let mut inverse: Vec<ChernSeries<C>> = vec![ChernSeries::one(d)];
    for k in 1..=d as usize {
        let mut next = ChernSeries::zero(d);
        for j in 1..=k {
            next = &next - &pieces[j].mul(&inverse[k - j], d);
        }
        inverse.push(next);
    }
    let mut out = ChernSeries::zero(d);
    for piece in &inverse {
        out = &out + piece;
    }
    Ok(out)
}

pub fn homogeneous_part<C: Coefficient>(a: &ChernSeries<C>, k: u32) -> ChernSeries<C> {
    a.homogeneous_part(k)
}

/// Commutative graded ring with truncation, the codomain of [`substitute`].
pub trait GradedAlgebra: Clone {
    /// The unit of the ring `self` lives in.
    fn unit(&self) -> Self;

    fn zero_like(&self) -> Self;

    fn add_scaled(&mut self, other: &Self, factor: &Scalar);

    fn mul(&self, other: &Self) -> Self;
}

impl GradedAlgebra for ChernSeries<Scalar> {
    fn unit(&self) -> Self {
        ChernSeries::one(self.degree)
    }

    fn zero_like(&self) -> Self {
        ChernSeries::zero(self.degree)
    }

    fn add_scaled(&mut self, other: &Self, factor: &Scalar) {
        *self = &*self + &other.scale(factor);
    }

    fn mul(&self, other: &Self) -> Self {
        ChernSeries::mul(self, other, self.degree.max(other.degree))
    }
}

/// Ring homomorphism `c_k ↦ images[k-1]` applied to `a`.
///
/// Products of images are built once per partition prefix. Only the `c_k`
/// that actually occur in `a` need an image.
pub fn substitute<R: GradedAlgebra>(a: &ChernSeries<Scalar>, images: &[R]) -> Result<R> {
    let template = match images.first() {
        Some(first) => first.clone(),
        None => {
            return match a.terms().find(|(p, _)| !p.is_empty()) {
                Some((p, _)) => Err(Error::MissingImage(p.parts()[0])),
                None => Err(Error::MissingImage(1)),
            }
        }
    };
    substitute_with_unit(a, images, &template.unit())
}

/// Like [`substitute`] but with an explicit unit, so that an empty image list
/// is allowed for constant series.
pub fn substitute_with_unit<R: GradedAlgebra>(a: &ChernSeries<Scalar>, images: &[R], unit: &R) -> Result<R> {
    let mut cache: HashMap<Partition, R> = HashMap::new();
    cache.insert(Partition::empty(), unit.clone());
    let mut out = unit.zero_like();
    for (partition, coeff) in a.terms() {
        let value = monomial_image(partition, images, &mut cache)?;
        out.add_scaled(&value, coeff);
    }
    Ok(out)
}

fn monomial_image<R: GradedAlgebra>(
    partition: &Partition,
    images: &[R],
    cache: &mut HashMap<Partition, R>,
) -> Result<R> {
    if let Some(hit) = cache.get(partition) {
        return Ok(hit.clone());
    }
    let head = partition.parts()[0];
    let image = images.get(head as usize - 1).ok_or(Error::MissingImage(head))?;
    let tail = Partition::from_parts(partition.parts()[1..].to_vec());
    let rest = monomial_image(&tail, images, cache)?;
    let value = image.mul(&rest);
    cache.insert(partition.clone(), value.clone());
    Ok(value)
}

impl<C: Coefficient> fmt::Display for ChernSeries<C> {
    /// Plain-text rendering: `c1^2 + 3c2`, terms in storage order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if !p.is_empty() {
                write!(f, "*{}", chern_monomial_label(p))?;
            }
        }
        Ok(())
    }
}

/// `c1^2c2` for the partition (2,1,1): ascending indices, powers collapsed.
pub fn chern_monomial_label(p: &Partition) -> String {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &part in p.parts() {
        *counts.entry(part).or_insert(0) += 1;
    }
    let mut out = String::new();
    for (index, power) in counts {
        out.push_str(&format!("c{index}"));
        if power > 1 {
            out.push_str(&format!("^{power}"));
        }
    }
    out
}
