//! Shared helpers for the integration tests: parsers for transcribed LaTeX
//! and small independent oracles.
#![allow(dead_code)]

use std::collections::BTreeMap;

use ssm_thom::algebra::{int, ChernSeries, Partition, Scalar};
use ssm_thom::bases::{Basis, BasisExpansion};

pub fn data(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Splits `-3 c_{1}^3+ 20c_1c_3` style sums into signed terms.
fn signed_terms(s: &str) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut sign = 1;
    let mut current = String::new();
    for ch in s.chars() {
        if ch == '+' || ch == '-' {
            if !current.is_empty() {
                out.push((sign, std::mem::take(&mut current)));
            }
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            current.push(ch);
        }
    }
    if !current.is_empty() {
        out.push((sign, current));
    }
    out
}

fn split_coefficient(term: &str) -> (i64, &str) {
    let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
    let coeff = if digits == 0 { 1 } else { term[..digits].parse().unwrap() };
    (coeff, &term[digits..])
}

/// Parses a displayed Chern polynomial such as `(c_{2}+ c_{1}^2) + (-3 c_{1}^3 …) + h.o.t.`.
pub fn parse_chern_latex(src: &str) -> BTreeMap<Partition, Scalar> {
    let cleaned = src
        .replace("\\hskip 1 true cm", "")
        .replace("h.o.t.", "")
        .replace("\\\\", "")
        .replace(['&', '(', ')', '{', '}', ',', '.'], "")
        .replace("\\", "");
    let cleaned: String = cleaned.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out: BTreeMap<Partition, Scalar> = BTreeMap::new();
    for (sign, term) in signed_terms(&cleaned) {
        let (coeff, rest) = split_coefficient(&term);
        let mut parts = Vec::new();
        for factor in rest.split('c').filter(|f| !f.is_empty()) {
            let factor = factor.trim_start_matches('_');
            let (index, power) = match factor.split_once('^') {
                Some((i, p)) => (i.parse::<u32>().unwrap(), p.parse::<usize>().unwrap()),
                None => (factor.parse::<u32>().unwrap(), 1),
            };
            parts.extend(std::iter::repeat(index).take(power));
        }
        let p = Partition::from_parts(parts);
        assert!(!out.contains_key(&p), "duplicate term {p}");
        out.insert(p, int(sign * coeff));
    }
    out
}

pub fn series_from(d: u32, terms: &BTreeMap<Partition, Scalar>) -> ChernSeries {
    ChernSeries::from_terms(d, terms.iter().map(|(p, c)| (p.clone(), c.clone())))
}

/// Parses one cell of an expansion table: `-3\,s_{2}-2\,s_{11}`,
/// `\tilde{s}_{3} +2\,\tilde{s}_{21}`, `1` or `0`.
pub fn parse_cell(src: &str) -> BTreeMap<Partition, Scalar> {
    let cleaned: String = src.replace("\\tilde{s}", "s").replace("\\,", "").chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = BTreeMap::new();
    if cleaned.is_empty() || cleaned == "0" {
        return out;
    }
    if cleaned == "1" {
        out.insert(Partition::empty(), int(1));
        return out;
    }
    for (sign, term) in signed_terms(&cleaned) {
        let (coeff, rest) = split_coefficient(&term);
        let label = rest.trim_start_matches("s_{").trim_end_matches('}');
        let parts: Vec<u32> = if label == "0" { vec![] } else { label.chars().map(|c| c.to_digit(10).unwrap()).collect() };
        out.insert(Partition::from_parts(parts), int(sign * coeff));
    }
    out
}

/// Cell text with whitespace removed; a bare `1` is the unit `s_{0}` and an
/// empty cell is `0`.
pub fn normalize_cell(src: &str, basis: Basis) -> String {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    match (s.as_str(), basis) {
        ("", _) => "0".into(),
        ("1", Basis::SchurTilde) => "\\tilde{s}_{0}".into(),
        ("1", _) => "s_{0}".into(),
        _ => s,
    }
}

#[derive(Clone, Debug)]
pub struct GoldenCell {
    pub basis: Basis,
    pub entry: String,
    pub degree: u32,
    pub latex: String,
}

pub fn golden_cells(file: &str) -> Vec<GoldenCell> {
    data(file)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let fields: Vec<&str> = line.splitn(4, '\t').collect();
            let basis = match fields[0] {
                "schur" => Basis::Schur,
                "tilde" => Basis::SchurTilde,
                other => panic!("unknown basis {other}"),
            };
            GoldenCell {
                basis,
                entry: fields[1].to_string(),
                degree: fields[2].parse().unwrap(),
                latex: fields[3].to_string(),
            }
        })
        .collect()
}

/// The degree-`k` part of an expansion as a map.
pub fn cell_terms(e: &BasisExpansion, k: u32) -> BTreeMap<Partition, Scalar> {
    e.part(k).map(|(p, c)| (p.clone(), c.clone())).collect()
}

/// Laplace expansion of `det(c_{μ_i + j - i})` along the first row, written
/// independently of the library's column-mask recursion.
pub fn laplace_determinant(mu: &[i64], d: u32) -> ChernSeries {
    fn entry(k: i64, d: u32) -> ChernSeries {
        if k < 0 || k > d as i64 {
            ChernSeries::zero(d)
        } else {
            ChernSeries::c(k, d)
        }
    }
    fn det(rows: &[Vec<i64>], d: u32) -> ChernSeries {
        let n = rows.len();
        if n == 0 {
            return ChernSeries::one(d);
        }
        let mut acc = ChernSeries::zero(d);
        for j in 0..n {
            let minor: Vec<Vec<i64>> =
                rows[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let term = entry(rows[0][j], d).mul(&det(&minor, d), d);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let n = mu.len();
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| mu[i] + j as i64 - i as i64).collect()).collect();
    det(&rows, d)
}
