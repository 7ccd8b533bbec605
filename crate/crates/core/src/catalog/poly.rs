//! Integer polynomials in the named genotype variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::WeightVector;
use crate::{Error, Result};

/// Sparse polynomial with integer coefficients, keyed by exponent vectors
/// over a fixed variable list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenotypePoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl GenotypePoly {
    pub fn zero(nvars: usize) -> Self {
        GenotypePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Self {
        let mut out = Self::zero(nvars);
        for (exps, c) in terms {
            out.add_term(exps, c);
        }
        out
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: i64) {
        assert_eq!(exps.len(), self.nvars);
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree of a monomial, `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> GenotypePoly {
        let mut out = Self::zero(self.nvars);
        for (exps, &c) in &self.terms {
            if exps[i] > 0 {
                let mut e = exps.clone();
                e[i] -= 1;
                out.add_term(e, c * exps[i] as i64);
            }
        }
        out
    }

    /// Torus weights of all monomials, given the variable weights.
    pub fn monomial_weights(&self, var_weights: &[WeightVector]) -> Vec<WeightVector> {
        self.terms.keys().map(|e| monomial_weight(e, var_weights)).collect()
    }

    /// Parses strings such as `x^2+y^3`, `x^2 - y^2 + z^3`, `xy` or `2*x*y^2`.
    /// Variable names are matched greedily against `vars`, longest first.
    pub fn parse(input: &str, vars: &[String]) -> Result<GenotypePoly> {
        let err = |reason: &str| Error::PolyParse { input: input.to_string(), reason: reason.to_string() };
        let mut names: Vec<(usize, &str)> = vars.iter().enumerate().map(|(i, v)| (i, v.as_str())).collect();
        names.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));

        let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        let s: String = chars.iter().collect();
        if s.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut out = GenotypePoly::zero(vars.len());
        let mut pos = 0;
        let bytes = s.as_str();
        while pos < bytes.len() {
            let mut sign = 1i64;
            let mut saw_sign = false;
            while let Some(c) = bytes[pos..].chars().next() {
                match c {
                    '+' => {}
                    '-' => sign = -sign,
                    _ => break,
                }
                saw_sign = true;
                pos += 1;
            }
            if pos > 0 && !saw_sign {
                return Err(err("expected `+` or `-` between terms"));
            }
            let digits: String = bytes[pos..].chars().take_while(|c| c.is_ascii_digit()).collect();
            let mut coeff = if digits.is_empty() {
                1
            } else {
                pos += digits.len();
                digits.parse::<i64>().map_err(|_| err("coefficient out of range"))?
            };
            let mut exps = vec![0u32; vars.len()];
            let mut factors = 0;
            loop {
                if bytes[pos..].starts_with('*') {
                    pos += 1;
                }
                let Some((idx, name)) = names.iter().find(|(_, n)| bytes[pos..].starts_with(n)) else {
                    break;
                };
                pos += name.len();
                let mut power = 1u32;
                if bytes[pos..].starts_with('^') {
                    pos += 1;
                    let p: String = bytes[pos..].chars().take_while(|c| c.is_ascii_digit()).collect();
                    if p.is_empty() {
                        return Err(err("missing exponent after `^`"));
                    }
                    pos += p.len();
                    power = p.parse().map_err(|_| err("exponent out of range"))?;
                }
                exps[*idx] += power;
                factors += 1;
            }
            if digits.is_empty() && factors == 0 {
                return Err(err(&format!("unexpected input at offset {pos}")));
            }
            coeff *= sign;
            out.add_term(exps, coeff);
            if pos < bytes.len() && !matches!(bytes[pos..].chars().next(), Some('+') | Some('-')) {
                return Err(err(&format!("unexpected character at offset {pos}")));
            }
        }
        Ok(out)
    }

    /// Renders using the given variable names, e.g. `x^2 - y^2 + z^3`.
    pub fn render(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // Highest degree first, then lexicographically largest exponents.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (i, (exps, &c)) in terms.into_iter().enumerate() {
            let mono = render_monomial(exps, vars);
            let abs = c.abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { "-" } else { "+" });
            }
            if abs != 1 || mono.is_empty() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

pub fn monomial_weight(exps: &[u32], var_weights: &[WeightVector]) -> WeightVector {
    let rank = var_weights.first().map_or(0, WeightVector::rank);
    let mut w = vec![0i64; rank];
    for (e, vw) in exps.iter().zip(var_weights) {
        for (slot, x) in w.iter_mut().zip(vw.entries()) {
            *slot += *e as i64 * x;
        }
    }
    WeightVector(w)
}

pub fn render_monomial(exps: &[u32], vars: &[String]) -> String {
    let mut s = String::new();
    for (e, v) in exps.iter().zip(vars) {
        match e {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{e}")),
        }
    }
    s
}

impl fmt::Display for GenotypePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.render(&vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn parses_implicit_products_and_signs() {
        let p = GenotypePoly::parse("x^2 - y^2 + z^3", &xyz()).unwrap();
        let expected = GenotypePoly::from_terms(3, [(vec![2, 0, 0], 1), (vec![0, 2, 0], -1), (vec![0, 0, 3], 1)]);
        assert_eq!(p, expected);
        let q = GenotypePoly::parse("xy+xz", &xyz()).unwrap();
        assert_eq!(q, GenotypePoly::from_terms(3, [(vec![1, 1, 0], 1), (vec![1, 0, 1], 1)]));
        let r = GenotypePoly::parse("-2*x*y^2+3", &xyz()).unwrap();
        assert_eq!(r, GenotypePoly::from_terms(3, [(vec![1, 2, 0], -2), (vec![0, 0, 0], 3)]));
    }

    #[test]
    fn longest_variable_name_wins() {
        let vars: Vec<String> = vec!["u".into(), "u1".into()];
        let p = GenotypePoly::parse("u1^2+u", &vars).unwrap();
        assert_eq!(p, GenotypePoly::from_terms(2, [(vec![0, 2], 1), (vec![1, 0], 1)]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(GenotypePoly::parse("x^", &xyz()).is_err());
        assert!(GenotypePoly::parse("x+w", &xyz()).is_err());
        assert!(GenotypePoly::parse("", &xyz()).is_err());
        assert!(GenotypePoly::parse("x y", &xyz()).is_ok()); // whitespace is ignored: xy
    }

    #[test]
    fn derivative_and_render() {
        let p = GenotypePoly::parse("x^2+yz", &xyz()).unwrap();
        assert_eq!(p.derivative(0).render(&xyz()), "2x");
        assert_eq!(p.derivative(1).render(&xyz()), "z");
        assert_eq!(p.render(&xyz()), "x^2+yz");
        let q = GenotypePoly::parse("x^2-y^2+z^3", &xyz()).unwrap();
        assert_eq!(q.render(&xyz()), "z^3+x^2-y^2");
    }

    #[test]
    fn roundtrip_render_parse() {
        let p = GenotypePoly::parse("x^2-y^2+z^3", &xyz()).unwrap();
        assert_eq!(GenotypePoly::parse(&p.render(&xyz()), &xyz()).unwrap(), p);
    }
}
