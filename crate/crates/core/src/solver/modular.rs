//! Linear solving by elimination modulo word-size primes, Chinese
//! remaindering and rational reconstruction.
//!
//! Full column rank modulo any prime implies full column rank over `Q`, so a
//! single successful elimination certifies uniqueness. The reconstructed
//! rational vector is only accepted by the caller after exact verification
//! against every row.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Row;
use crate::algebra::Scalar;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, largest first.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    let mut candidate = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(candidate) {
            candidate -= 2;
        }
        let p = candidate;
        candidate -= 2;
        Some(p)
    })
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    match c.to_i64() {
        Some(v) => v.rem_euclid(p as i64) as u64,
        None => c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits"),
    }
}

pub(crate) enum ModOutcome {
    Solved(Vec<u64>),
    /// Rank deficiency; `pivots[c]` tells whether column `c` carries a pivot.
    Deficient { pivots: Vec<bool> },
    /// Row `row` reduces to `0 = nonzero`.
    Inconsistent { row: usize },
}

/// Incremental echelon form modulo `p`, stopping once every column has a
/// pivot.
pub(crate) fn solve_mod(rows: &[Row], n: usize, p: u64) -> ModOutcome {
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; n];
    let mut rank = 0;
    let mut work = vec![0u64; n + 1];
    for (ri, row) in rows.iter().enumerate() {
        if rank == n {
            break;
        }
        work.iter_mut().for_each(|x| *x = 0);
        for (c, v) in &row.coeffs {
            work[*c] = reduce(v, p);
        }
        work[n] = reduce(&row.rhs, p);
        let mut lead = None;
        for c in 0..n {
            if work[c] == 0 {
                continue;
            }
            match &basis[c] {
                Some(piv) => {
                    let f = work[c];
                    for j in c..=n {
                        if piv[j] != 0 {
                            let t = mul_mod(f, piv[j], p);
                            work[j] = if work[j] >= t { work[j] - t } else { work[j] + p - t };
                        }
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        match lead {
            None if work[n] != 0 => return ModOutcome::Inconsistent { row: ri },
            None => {}
            Some(c) => {
                let inv = inv_mod(work[c], p);
                let mut piv = vec![0u64; n + 1];
                for j in c..=n {
                    piv[j] = mul_mod(work[j], inv, p);
                }
                basis[c] = Some(piv);
                rank += 1;
            }
        }
    }
    if rank < n {
        return ModOutcome::Deficient { pivots: basis.iter().map(Option::is_some).collect() };
    }
    let mut x = vec![0u64; n];
    for c in (0..n).rev() {
        let piv = basis[c].as_ref().expect("full rank");
        let mut acc = piv[n];
        for j in c + 1..n {
            if piv[j] != 0 {
                let t = mul_mod(piv[j], x[j], p);
                acc = if acc >= t { acc - t } else { acc + p - t };
            }
        }
        x[c] = acc;
    }
    ModOutcome::Solved(x)
}

/// Running Chinese-remainder accumulator for a vector of residues.
pub(crate) struct Crt {
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl Crt {
    pub fn new(n: usize) -> Self {
        Crt { modulus: BigInt::one(), values: vec![BigInt::zero(); n] }
    }

    pub fn add(&mut self, residues: &[u64], p: u64) {
        let pb = BigInt::from(p);
        let m_mod_p = reduce(&self.modulus, p);
        let m_inv = inv_mod(m_mod_p, p);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let x_mod_p = reduce(x, p);
            let diff = (r + p - x_mod_p) % p;
            let k = mul_mod(diff, m_inv, p);
            *x += &self.modulus * BigInt::from(k);
        }
        self.modulus *= pb;
    }

    /// Rational reconstruction of every component, `None` if any fails.
    pub fn reconstruct(&self) -> Option<Vec<Scalar>> {
        let bound = (&self.modulus / BigInt::from(2)).sqrt();
        self.values.iter().map(|v| rational_reconstruction(v, &self.modulus, &bound)).collect()
    }
}

fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Scalar> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(Scalar::new(num, den))
}
