//! Schur and Schur-tilde polynomials in the quotient Chern classes, and exact
//! changes of basis.
//!
//! `s_λ = det(c_{λ_i + j - i})`. The Schur-tilde polynomial `s̃_λ` is the
//! image under `S : z^μ ↦ det(c_{μ_i + j - i})` of
//!
//! ```text
//!   ∏_i (z_i / (1 + z_i))^{λ_i} · ∏_{j ≥ 1} ∏_{i ≤ j} (1 + z_i - z_j) / (1 + z_i)
//! ```
//!
//! expanded in finitely many variables `z_1 … z_k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{enumerate_partitions, partitions_of, ChernSeries, Partition, Scalar};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Chern,
    Schur,
    #[serde(rename = "tilde")]
    SchurTilde,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Chern => "chern",
            Basis::Schur => "schur",
            Basis::SchurTilde => "tilde",
        })
    }
}

/// A truncated series written in one of the three bases.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpansion {
    pub basis: Basis,
    pub degree: u32,
    pub terms: BTreeMap<Partition, Scalar>,
}

impl BasisExpansion {
    pub fn new(basis: Basis, degree: u32) -> Self {
        BasisExpansion { basis, degree, terms: BTreeMap::new() }
    }

    pub fn coeff(&self, p: &Partition) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Partition, c: Scalar) {
        if p.weight() > self.degree || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    /// Terms of weight `k`.
    pub fn part(&self, k: u32) -> impl Iterator<Item = (&Partition, &Scalar)> {
        self.terms.iter().filter(move |(p, _)| p.weight() == k)
    }

    /// The same coefficients viewed in the Chern-monomial basis.
    pub fn from_chern(a: &ChernSeries) -> Self {
        BasisExpansion {
            basis: Basis::Chern,
            degree: a.degree(),
            terms: a.terms().map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }
}

/// `det(c_{μ_i + j - i})` for an arbitrary integer vector, truncated at `d`.
pub fn jacobi_trudi(mu: &[i64], d: u32) -> ChernSeries {
    let n = mu.len();
    if n == 0 {
        return ChernSeries::one(d);
    }
    // Expansion along rows; the state is the set of columns already used.
    let mut states: HashMap<u64, ChernSeries> = HashMap::from([(0u64, ChernSeries::one(d))]);
    for (i, &m) in mu.iter().enumerate() {
        let mut next: HashMap<u64, ChernSeries> = HashMap::new();
        for (mask, value) in &states {
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let k = m + j as i64 - i as i64;
                if k < 0 || k > d as i64 {
                    continue;
                }
                let mut term = value.mul(&ChernSeries::c(k, d), d);
                if (mask >> (j + 1)).count_ones() % 2 == 1 {
                    term = -&term;
                }
                if term.is_zero() {
                    continue;
                }
                let slot = next.entry(mask | (1 << j)).or_insert_with(|| ChernSeries::zero(d));
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    states.into_values().fold(ChernSeries::zero(d), |acc, v| &acc + &v)
}

/// `s_λ` truncated at `d`.
pub fn schur_polynomial(lambda: &Partition, d: u32) -> ChernSeries {
    let mu: Vec<i64> = lambda.parts().iter().map(|&p| p as i64).collect();
    jacobi_trudi(&mu, d)
}

/// Kostka numbers `K_{λμ}`: semistandard tableaux of shape `λ` and content `μ`.
#[derive(Default)]
struct Kostka {
    memo: HashMap<(Vec<u32>, Vec<u32>), u64>,
}

impl Kostka {
    fn get(&mut self, shape: &[u32], content: &[u32]) -> u64 {
        let shape: Vec<u32> = shape.iter().copied().filter(|&p| p > 0).collect();
        let total: u32 = shape.iter().sum();
        if total != content.iter().sum::<u32>() {
            return 0;
        }
        let Some((&last, rest)) = content.split_last() else {
            return u64::from(shape.is_empty());
        };
        let key = (shape.clone(), content.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        // The largest letter fills a horizontal strip of size `last`.
        let mut strips = Vec::new();
        horizontal_strips(&shape, last, 0, &mut Vec::new(), &mut strips);
        let value = strips.iter().map(|inner| self.get(inner, rest)).sum();
        self.memo.insert(key, value);
        value
    }
}

/// All `ν ⊆ λ` with `λ/ν` a horizontal strip of `size` boxes.
fn horizontal_strips(shape: &[u32], size: u32, i: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == shape.len() {
        if size == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let lower = shape.get(i + 1).copied().unwrap_or(0);
    for nu in lower..=shape[i] {
        let removed = shape[i] - nu;
        if removed > size {
            continue;
        }
        prefix.push(nu);
        horizontal_strips(shape, size - removed, i + 1, prefix, out);
        prefix.pop();
    }
}

/// Schur expansion, using `c_μ = h_μ = Σ_λ K_{λμ} s_λ`.
pub fn to_schur(a: &ChernSeries) -> BasisExpansion {
    let mut kostka = Kostka::default();
    let mut out = BasisExpansion::new(Basis::Schur, a.degree());
    let mut shapes: HashMap<u32, Vec<Partition>> = HashMap::new();
    for (mu, c) in a.terms() {
        let k = mu.weight();
        let lambdas = shapes.entry(k).or_insert_with(|| partitions_of(k));
        for lambda in lambdas.iter() {
            let kn = kostka.get(lambda.parts(), mu.parts());
            if kn != 0 {
                out.add_term(lambda.clone(), c * Scalar::from_integer(kn.into()));
            }
        }
    }
    out
}

/// `Σ coeff(λ) · s_λ` in the Chern-monomial basis.
pub fn from_schur(e: &BasisExpansion) -> ChernSeries {
    let d = e.degree;
    e.terms
        .iter()
        .fold(ChernSeries::zero(d), |acc, (lambda, c)| &acc + &schur_polynomial(lambda, d).scale(c))
}

/// Coefficient vectors for polynomials in `z_1 … z_k`, keyed by 5-bit packed
/// exponents.
type ZPoly = HashMap<u64, i128>;

const BITS: u32 = 5;
const MAX_TILDE_DEGREE: u32 = 10;

fn exponent(key: u64, i: usize) -> u32 {
    ((key >> (BITS as usize * i)) & ((1 << BITS) - 1)) as u32
}

fn key_degree(key: u64, k: usize) -> u32 {
    (0..k).map(|i| exponent(key, i)).sum()
}

fn add_into(p: &mut ZPoly, key: u64, c: i128) {
    if c == 0 {
        return;
    }
    let slot = p.entry(key).or_insert(0);
    *slot = slot.checked_add(c).expect("schur-tilde coefficient overflow");
    if *slot == 0 {
        p.remove(&key);
    }
}

/// Multiplies by `1/(1 + z_i)` up to total degree `d`.
fn divide_by_one_plus(p: &ZPoly, i: usize, k: usize, d: u32) -> ZPoly {
    let mut out = ZPoly::new();
    let unit = 1u64 << (BITS as usize * i);
    for (&key, &c) in p {
        let mut deg = key_degree(key, k);
        let (mut kk, mut sign) = (key, 1i128);
        while deg <= d {
            add_into(&mut out, kk, sign * c);
            kk += unit;
            sign = -sign;
            deg += 1;
        }
    }
    out
}

/// Multiplies by `1 + z_i - z_j` up to total degree `d`.
fn times_linear(p: &ZPoly, i: usize, j: usize, k: usize, d: u32) -> ZPoly {
    let mut out = ZPoly::new();
    let (ui, uj) = (1u64 << (BITS as usize * i), 1u64 << (BITS as usize * j));
    for (&key, &c) in p {
        add_into(&mut out, key, c);
        if key_degree(key, k) < d {
            add_into(&mut out, key + ui, c);
            add_into(&mut out, key + uj, -c);
        }
    }
    out
}

/// `S(z^e)` as `±s_λ`: sorts the rows `e_i - i` of the determinant.
fn straighten(key: u64, k: usize) -> Option<(i128, Partition)> {
    let mut beta: Vec<i64> = (0..k).map(|i| exponent(key, i) as i64 - i as i64).collect();
    let mut sign = 1i128;
    // Insertion sort into decreasing order, counting transpositions.
    for a in 1..beta.len() {
        let mut b = a;
        while b > 0 && beta[b - 1] < beta[b] {
            beta.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    if beta.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let parts: Vec<i64> = beta.iter().enumerate().map(|(i, b)| b + i as i64).collect();
    if parts.last().is_some_and(|&p| p < 0) {
        return None;
    }
    Some((sign, Partition::from_parts(parts.into_iter().map(|p| p as u32).collect())))
}

/// The double product in `k` variables, truncated at degree `d`.
struct TildeProduct {
    k: usize,
    d: u32,
    product: ZPoly,
}

impl TildeProduct {
    fn new(k: usize, d: u32) -> Self {
        let mut product = ZPoly::from([(0u64, 1i128)]);
        for j in 0..k {
            for i in 0..=j {
                if i != j {
                    product = times_linear(&product, i, j, k, d);
                }
                product = divide_by_one_plus(&product, i, k, d);
            }
        }
        TildeProduct { k, d, product }
    }

    /// `s̃_λ` in the Schur basis; `λ` must have at most `k` parts.
    fn schur_tilde(&self, lambda: &Partition) -> BasisExpansion {
        let mut out = BasisExpansion::new(Basis::Schur, self.d);
        let w = lambda.weight();
        if w > self.d {
            return out;
        }
        let room = self.d - w;
        let mut p: ZPoly = self.product.iter().filter(|(&key, _)| key_degree(key, self.k) <= room).map(|(&a, &b)| (a, b)).collect();
        for (i, &part) in lambda.parts().iter().enumerate() {
            for _ in 0..part {
                p = divide_by_one_plus(&p, i, self.k, room);
            }
        }
        let shift: u64 = lambda.parts().iter().enumerate().map(|(i, &part)| (part as u64) << (BITS as usize * i)).sum();
        let mut acc: BTreeMap<Partition, i128> = BTreeMap::new();
        for (&key, &c) in &p {
            if let Some((sign, nu)) = straighten(key + shift, self.k) {
                *acc.entry(nu).or_insert(0) += sign * c;
            }
        }
        for (nu, c) in acc {
            out.add_term(nu, Scalar::from_integer(c.into()));
        }
        out
    }
}

/// Schur-tilde polynomials up to a fixed degree, with the number of
/// expansion variables checked for stabilization.
pub struct SchurTilde {
    d: u32,
    base: TildeProduct,
    check: TildeProduct,
    cache: HashMap<Partition, BasisExpansion>,
}

impl SchurTilde {
    /// Uses `max(d, 1)` variables and checks every result against one more.
    pub fn new(d: u32) -> Result<Self> {
        if d > MAX_TILDE_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree: d,
                limit: MAX_TILDE_DEGREE,
                reason: "schur-tilde expansions are limited to low degree".into(),
            });
        }
        let k = d.max(1) as usize;
        Ok(SchurTilde { d, base: TildeProduct::new(k, d), check: TildeProduct::new(k + 1, d), cache: HashMap::new() })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// `s̃_λ` in the Schur basis.
    pub fn in_schur(&mut self, lambda: &Partition) -> Result<&BasisExpansion> {
        if !self.cache.contains_key(lambda) {
            if lambda.len() > self.base.k {
                // More parts than variables only happens for |λ| > d.
                self.cache.insert(lambda.clone(), BasisExpansion::new(Basis::Schur, self.d));
            } else {
                let value = self.base.schur_tilde(lambda);
                if value != self.check.schur_tilde(lambda) {
                    return Err(Error::NotStabilized(self.base.k));
                }
                self.cache.insert(lambda.clone(), value);
            }
        }
        Ok(&self.cache[lambda])
    }

    /// Tilde expansion by peeling off the lowest degree at each step.
    pub fn expand(&mut self, a: &ChernSeries) -> Result<BasisExpansion> {
        let d = self.d.min(a.degree());
        let mut residual = to_schur(&a.truncate(d));
        let mut out = BasisExpansion::new(Basis::SchurTilde, d);
        for k in 0..=d {
            let leading: Vec<(Partition, Scalar)> = residual.part(k).map(|(p, c)| (p.clone(), c.clone())).collect();
            for (lambda, c) in leading {
                let tilde = self.in_schur(&lambda)?.clone();
                for (nu, t) in tilde.terms {
                    residual.add_term(nu, -(t * &c));
                }
                out.add_term(lambda, c);
            }
        }
        Ok(out)
    }

    /// `Σ coeff(λ) · s̃_λ` in the Chern-monomial basis.
    pub fn reconstruct(&mut self, e: &BasisExpansion) -> Result<ChernSeries> {
        let d = e.degree.min(self.d);
        let mut schur = BasisExpansion::new(Basis::Schur, d);
        for (lambda, c) in &e.terms {
            for (nu, t) in self.in_schur(lambda)?.terms.clone() {
                schur.add_term(nu, t * c);
            }
        }
        Ok(from_schur(&schur))
    }
}

/// `s̃_λ` truncated at `d`, in the Chern-monomial basis.
pub fn schur_tilde(lambda: &Partition, d: u32) -> Result<ChernSeries> {
    let mut st = SchurTilde::new(d)?;
    let e = st.in_schur(lambda)?.clone();
    Ok(from_schur(&e))
}

/// Greedy tilde expansion of `a` up to degree `d`.
pub fn to_schur_tilde(a: &ChernSeries, d: u32) -> Result<BasisExpansion> {
    SchurTilde::new(d)?.expand(a)
}

/// Expansion of `a` in the requested basis.
pub fn expand(a: &ChernSeries, basis: Basis) -> Result<BasisExpansion> {
    match basis {
        Basis::Chern => Ok(BasisExpansion::from_chern(a)),
        Basis::Schur => Ok(to_schur(a)),
        Basis::SchurTilde => to_schur_tilde(a, a.degree()),
    }
}

/// Every Schur polynomial of weight at most `d`, keyed by partition.
pub fn schur_table(d: u32) -> BTreeMap<Partition, ChernSeries> {
    enumerate_partitions(d).into_iter().map(|p| {
        let s = schur_polynomial(&p, d);
        (p, s)
    }).collect()
}
