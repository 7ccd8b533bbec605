//! Text and LaTeX rendering of series and expansions in the layout of the
//! printed tables.

use std::cmp::Ordering;

use num_traits::{One, Signed};

use crate::algebra::{chern_monomial_label, ChernSeries, Partition, Scalar};
use crate::bases::{Basis, BasisExpansion};

/// Order of Chern monomials inside one degree block: lexicographic on the
/// ascending list of indices, so `c1^4, c1^2c2, c1c3, c2^2, c4`.
pub fn chern_order(a: &Partition, b: &Partition) -> Ordering {
    let asc = |p: &Partition| p.parts().iter().rev().copied().collect::<Vec<_>>();
    asc(a).cmp(&asc(b))
}

/// Order of partitions inside one degree cell of an expansion table.
///
/// Schur cells go by length and then increasing parts (`s6, s33, s42, s51`);
/// tilde cells by length and then decreasing parts (`s̃6, s̃51, s̃42, s̃33`).
pub fn cell_order(basis: Basis, a: &Partition, b: &Partition) -> Ordering {
    let by_len = a.weight().cmp(&b.weight()).then(a.len().cmp(&b.len()));
    match basis {
        Basis::Chern => a.weight().cmp(&b.weight()).then_with(|| chern_order(a, b)),
        Basis::Schur => by_len.then_with(|| a.parts().cmp(b.parts())),
        Basis::SchurTilde => by_len.then_with(|| b.parts().cmp(a.parts())),
    }
}

fn sorted_terms<'a>(basis: Basis, terms: impl Iterator<Item = (&'a Partition, &'a Scalar)>) -> Vec<(&'a Partition, &'a Scalar)> {
    let mut v: Vec<_> = terms.collect();
    v.sort_by(|x, y| cell_order(basis, x.0, y.0));
    v
}

/// `3`, `3/2` or `(3/2)` depending on whether a symbol follows.
fn magnitude(c: &Scalar, symbol_follows: bool) -> String {
    let m = c.abs();
    if symbol_follows && m.is_one() {
        String::new()
    } else if symbol_follows && !m.is_integer() {
        format!("({m})")
    } else {
        m.to_string()
    }
}

/// Terms joined tightly: `-3c1^3-6c1c2-3c3`.
fn tight(terms: &[(&Partition, &Scalar)], symbol: impl Fn(&Partition) -> String) -> String {
    let mut out = String::new();
    for (i, (p, c)) in terms.iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let s = symbol(p);
        out.push_str(&magnitude(c, !s.is_empty()));
        out.push_str(&s);
    }
    out
}

/// Terms joined loosely: `s1 - 3s2 - 2s11`.
fn loose(terms: &[(&Partition, &Scalar)], symbol: impl Fn(&Partition) -> String) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (p, c)) in terms.iter().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let s = symbol(p);
        out.push_str(&magnitude(c, !s.is_empty()));
        out.push_str(&s);
    }
    out
}

fn chern_symbol(p: &Partition) -> String {
    if p.is_empty() {
        String::new()
    } else {
        chern_monomial_label(p)
    }
}

/// `(c1^2+c2) + (-3c1^3-6c1c2-3c3)`: one parenthesized block per degree.
pub fn chern_text(a: &ChernSeries) -> String {
    let blocks: Vec<String> = (0..=a.degree())
        .filter_map(|k| {
            let terms = sorted_terms(Basis::Chern, a.terms().filter(|(p, _)| p.weight() == k));
            (!terms.is_empty()).then(|| tight(&terms, chern_symbol))
        })
        .collect();
    match blocks.len() {
        0 => "0".into(),
        1 => blocks.into_iter().next().unwrap_or_default(),
        _ => blocks.iter().map(|b| format!("({b})")).collect::<Vec<_>>().join(" + "),
    }
}

fn chern_latex_symbol(p: &Partition) -> String {
    let mut out = String::new();
    let parts = p.parts();
    let mut i = parts.len();
    while i > 0 {
        let v = parts[i - 1];
        let mut j = i - 1;
        while j > 0 && parts[j - 1] == v {
            j -= 1;
        }
        let power = i - j;
        out.push_str(&format!("c_{{{v}}}"));
        if power > 1 {
            out.push_str(&format!("^{power}"));
        }
        i = j;
    }
    out
}

/// Degree-`k` block of a Chern series in LaTeX: `c_{1}^2+c_{2}`.
pub fn chern_latex_block(a: &ChernSeries, k: u32) -> String {
    let terms = sorted_terms(Basis::Chern, a.terms().filter(|(p, _)| p.weight() == k));
    latex_join(&terms, chern_latex_symbol)
}

fn latex_join(terms: &[(&Partition, &Scalar)], symbol: impl Fn(&Partition) -> String) -> String {
    let mut out = String::new();
    for (i, (p, c)) in terms.iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let m = c.abs();
        if !m.is_one() {
            if m.is_integer() {
                out.push_str(&format!("{m}\\,"));
            } else {
                out.push_str(&format!("\\frac{{{}}}{{{}}}\\,", m.numer(), m.denom()));
            }
        }
        out.push_str(&symbol(p));
    }
    out
}

pub fn chern_latex(a: &ChernSeries) -> String {
    let blocks: Vec<String> = (0..=a.degree())
        .map(|k| chern_latex_block(a, k))
        .filter(|b| !b.is_empty())
        .collect();
    match blocks.len() {
        0 => "0".into(),
        1 => blocks.into_iter().next().unwrap_or_default(),
        _ => blocks.iter().map(|b| format!("\\left({b}\\right)")).collect::<Vec<_>>().join(" + "),
    }
}

fn text_symbol(basis: Basis) -> impl Fn(&Partition) -> String {
    move |p: &Partition| {
        let label = if p.is_empty() { "0".to_string() } else { p.label() };
        match basis {
            Basis::Chern => chern_symbol(p),
            Basis::Schur => format!("s{label}"),
            Basis::SchurTilde => format!("s~{label}"),
        }
    }
}

fn latex_symbol(basis: Basis) -> impl Fn(&Partition) -> String {
    move |p: &Partition| {
        let label = if p.is_empty() { "0".to_string() } else { p.label() };
        match basis {
            Basis::Chern => chern_latex_symbol(p),
            Basis::Schur => format!("s_{{{label}}}"),
            Basis::SchurTilde => format!("\\tilde{{s}}_{{{label}}}"),
        }
    }
}

/// `s1 - 3s2 - 2s11`, or `s~0 + s~1` for tilde expansions.
pub fn expansion_text(e: &BasisExpansion) -> String {
    let terms = sorted_terms(e.basis, e.terms.iter());
    loose(&terms, text_symbol(e.basis))
}

/// One table cell: the degree-`k` part, e.g. `-3\,s_{2}-2\,s_{11}`.
pub fn expansion_latex_cell(e: &BasisExpansion, k: u32) -> String {
    let terms = sorted_terms(e.basis, e.part(k));
    latex_join(&terms, latex_symbol(e.basis))
}

/// `A2` → `A_2`, `I22` → `I_{22}`, `III22` → `III_{22}`.
pub fn entry_latex_name(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (head, digits) = name.split_at(split);
    match digits.len() {
        0 => head.to_string(),
        1 => format!("{head}_{digits}"),
        _ => format!("{head}_{{{digits}}}"),
    }
}

/// A row of an expansion table: `{A_2} & & & cell & … \\`. Degrees below
/// `codim` are left blank; a vanishing part at or above it prints as `0`.
pub fn latex_table_row(entry: &str, codim: u32, e: &BasisExpansion) -> String {
    let mut cells = vec![format!("{{{}}}", entry_latex_name(entry))];
    for k in 0..=e.degree {
        let cell = if k < codim {
            String::new()
        } else {
            let c = match e.basis {
                Basis::Chern => latex_join(&sorted_terms(Basis::Chern, e.part(k)), chern_latex_symbol),
                _ => expansion_latex_cell(e, k),
            };
            if c.is_empty() { "0".into() } else { c }
        };
        cells.push(cell);
    }
    format!("{} \\\\", cells.join(" & "))
}
