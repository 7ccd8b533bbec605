use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::scalar::{Coefficient, Scalar};

/// Monomial in named parameters: sorted `(name, exponent)` pairs, exponents
/// positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamMonomial(Vec<(String, u32)>);

impl ParamMonomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    fn times(&self, other: &ParamMonomial) -> ParamMonomial {
        let mut merged: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (name, e) in &other.0 {
            *merged.entry(name.clone()).or_insert(0) += e;
        }
        ParamMonomial(merged.into_iter().collect())
    }
}

// Degree-major, higher degree first, then names.
impl Ord for ParamMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.degree().cmp(&self.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ParamMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in named formal parameters (such as a map degree `d`) with
/// rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamScalar {
    terms: BTreeMap<ParamMonomial, Scalar>,
}

impl ParamScalar {
    pub fn constant(value: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(ParamMonomial::default(), value);
        }
        ParamScalar { terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(ParamMonomial(vec![(name.to_string(), 1)]), Scalar::one());
        ParamScalar { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &Scalar)> {
        self.terms.iter()
    }

    /// The value if no parameter occurs.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&ParamMonomial::default()).cloned(),
            _ => None,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = ParamScalar::one();
        for _ in 0..exp {
            out = out * self.clone();
        }
        out
    }

    /// Substitutes a value for one parameter.
    pub fn eval(&self, name: &str, value: &Scalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (mono, coeff) in &self.terms {
            let mut rest = Vec::new();
            let mut factor = coeff.clone();
            for (n, e) in &mono.0 {
                if n == name {
                    for _ in 0..*e {
                        factor = &factor * value;
                    }
                } else {
                    rest.push((n.clone(), *e));
                }
            }
            out.add_term(ParamMonomial(rest), factor);
        }
        out
    }

    fn add_term(&mut self, mono: ParamMonomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }
}

impl Zero for ParamScalar {
    fn zero() -> Self {
        ParamScalar::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamScalar {
    fn one() -> Self {
        ParamScalar::constant(Scalar::one())
    }
}

impl Add for ParamScalar {
    type Output = ParamScalar;

    fn add(mut self, rhs: ParamScalar) -> ParamScalar {
        for (mono, coeff) in rhs.terms {
            self.add_term(mono, coeff);
        }
        self
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;

    fn neg(self) -> ParamScalar {
        ParamScalar {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for ParamScalar {
    type Output = ParamScalar;

    fn sub(self, rhs: ParamScalar) -> ParamScalar {
        self + (-rhs)
    }
}

impl Mul for ParamScalar {
    type Output = ParamScalar;

    fn mul(self, rhs: ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl From<Scalar> for ParamScalar {
    fn from(value: Scalar) -> Self {
        ParamScalar::constant(value)
    }
}

impl Coefficient for ParamScalar {
    fn from_scalar(value: Scalar) -> Self {
        ParamScalar::constant(value)
    }

    fn scale(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }
}

impl fmt::Display for ParamScalar {
    /// `21d^2 - 42d + 21`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            let magnitude = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else if coeff.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let is_unit = magnitude.is_one();
            if !is_unit || mono.0.is_empty() {
                if magnitude.is_integer() || mono.0.is_empty() {
                    write!(f, "{magnitude}")?;
                } else {
                    write!(f, "({magnitude})")?;
                }
            }
            for (name, e) in &mono.0 {
                if *e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
