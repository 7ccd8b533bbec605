//! Dense homogeneous polynomials over a fixed torus, indexed through
//! per-degree monomial tables. Used for fast row generation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::TorusPolynomial;
#[cfg(test)]
use crate::algebra::Scalar;

/// All monomials of degree `0..=degree` in `rank` variables. Within a degree
/// the order is that of [`TorusMonomial`] (lexicographically descending).
pub(crate) struct MonomialTable {
    base: u64,
    by_degree: Vec<Vec<Vec<u32>>>,
    keys: Vec<Vec<u64>>,
    lookup: Vec<HashMap<u64, usize>>,
}

impl MonomialTable {
    pub fn new(rank: usize, degree: u32) -> Self {
        let base = degree as u64 + 1;
        assert!((base as f64).powi(rank as i32) < 1.8e19, "monomial key overflow");
        let mut by_degree = Vec::new();
        for k in 0..=degree {
            let mut monos = Vec::new();
            compositions(rank, k, &mut Vec::new(), &mut monos);
            monos.sort_by(|a, b| b.cmp(a));
            by_degree.push(monos);
        }
        let encode = |e: &[u32]| e.iter().rev().fold(0u64, |acc, &x| acc * base + x as u64);
        let keys: Vec<Vec<u64>> = by_degree.iter().map(|ms| ms.iter().map(|e| encode(e)).collect()).collect();
        let lookup = keys.iter().map(|ks| ks.iter().enumerate().map(|(i, &k)| (k, i)).collect()).collect();
        MonomialTable { base, by_degree, keys, lookup }
    }

    pub fn count(&self, k: u32) -> usize {
        self.by_degree.get(k as usize).map_or(0, Vec::len)
    }

    pub fn monomial(&self, k: u32, i: usize) -> &[u32] {
        &self.by_degree[k as usize][i]
    }

    pub fn degree(&self) -> u32 {
        self.by_degree.len() as u32 - 1
    }

    fn index(&self, k: u32, exps: &[u32]) -> usize {
        let key = exps.iter().rev().fold(0u64, |acc, &x| acc * self.base + x as u64);
        self.lookup[k as usize][&key]
    }

    /// Homogeneous degree-`k` part of `p` as a dense integer vector.
    pub fn dense(&self, p: &TorusPolynomial, k: u32) -> Homogeneous {
        let mut coeffs = vec![BigInt::zero(); self.count(k)];
        for (mono, c) in p.terms() {
            if mono.degree() == k {
                assert!(c.is_integer(), "expected an integral polynomial");
                coeffs[self.index(k, mono.exponents())] = c.to_integer();
            }
        }
        Homogeneous { degree: k, coeffs }
    }

    pub fn product(&self, a: &Homogeneous, b: &Homogeneous) -> Homogeneous {
        let k = a.degree + b.degree;
        let mut coeffs = vec![BigInt::zero(); self.count(k)];
        if k > self.degree() {
            return Homogeneous { degree: k, coeffs };
        }
        let (ka, kb) = (&self.keys[a.degree as usize], &self.keys[b.degree as usize]);
        let lookup = &self.lookup[k as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                coeffs[lookup[&(ka[i] + kb[j])]] += x * y;
            }
        }
        Homogeneous { degree: k, coeffs }
    }

    #[cfg(test)]
    pub fn to_polynomial(&self, rank: usize, parts: &[Homogeneous]) -> TorusPolynomial {
        let terms = parts.iter().flat_map(|h| {
            h.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (self.monomial(h.degree, i).to_vec(), Scalar::from_integer(c.clone())))
        });
        TorusPolynomial::from_terms(rank, self.degree(), terms)
    }
}

fn compositions(parts: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == parts {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in 0..=total {
        prefix.push(e);
        compositions(parts, total - e, prefix, out);
        prefix.pop();
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Homogeneous {
    pub degree: u32,
    pub coeffs: Vec<BigInt>,
}

impl Homogeneous {
    pub fn one() -> Self {
        Homogeneous { degree: 0, coeffs: vec![BigInt::from(1)] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, WeightVector};

    #[test]
    fn tables_and_products_agree_with_sparse_arithmetic() {
        let t = MonomialTable::new(2, 4);
        assert_eq!(t.count(0), 1);
        assert_eq!(t.count(3), 4);
        assert_eq!(t.monomial(2, 0), &[2, 0]);
        let p = TorusPolynomial::linear(&WeightVector::new(vec![2, -1]), 4);
        let q = TorusPolynomial::from_terms(2, 4, [(vec![1, 1], int(3)), (vec![0, 2], int(-1))]);
        let prod = t.product(&t.dense(&p, 1), &t.dense(&q, 2));
        assert_eq!(t.to_polynomial(2, &[prod]), p.times(&q));
    }

    #[test]
    fn rank_zero_table() {
        let t = MonomialTable::new(0, 3);
        assert_eq!(t.count(0), 1);
        assert_eq!(t.count(1), 0);
    }
}
