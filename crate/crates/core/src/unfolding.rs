//! Torus weights of prototypes, read off a monomial basis of the normal space
//! to the contact orbit of a genotype.
//!
//! For a genotype `r = (r_1, …, r_b, 0, …, 0)` with `p = a + ℓ` target
//! components, the miniversal unfolding is spanned by monomial vectors
//! `x^α e_k` (`|α| ≥ 1`) complementing the extended tangent space
//!
//! ```text
//!   T = span{ h · ∂r/∂x_i }  +  span{ h · r_j · e_k }
//! ```
//!
//! with `h` ranging over all monomials. Everything is computed modulo
//! monomials of degree above a jet bound, one torus-weight class at a time.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::algebra::{int, Scalar, WeightVector};
use crate::catalog::{monomial_weight, render_monomial, GenotypePoly, GenotypeSpec, SingularityEntry};
use crate::{Error, Result};

/// The unfolding term `x^α e_k`; `weight` is the weight of the unfolding
/// parameter in front of it, `w(e_k) − w(x^α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialVector {
    pub exponents: Vec<u32>,
    pub component: usize,
    pub weight: WeightVector,
}

impl MonomialVector {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Renders as `xy·e2` (components counted from 1).
    pub fn render(&self, vars: &[String]) -> String {
        format!("{}·e{}", render_monomial(&self.exponents, vars), self.component + 1)
    }
}

fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, nvars: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == nvars {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            rec(prefix, nvars, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, max_degree, &mut out);
    out.sort_by_key(|e| e.iter().sum::<u32>());
    out
}

/// Preference order among representatives: lower degree, then lower
/// component, then lexicographically smaller exponent vector.
fn priority(exps: &[u32], component: usize) -> (u32, usize, Vec<u32>) {
    (exps.iter().sum(), component, exps.to_vec())
}

/// Monomial basis of the normal space, computed modulo degree `> jet_bound`.
///
/// Fails with [`Error::JetBoundTooSmall`] when a basis element sits in one of
/// the two top degrees, where truncation could still be hiding relations.
pub fn normal_basis(g: &GenotypeSpec, jet_bound: u32) -> Result<Vec<MonomialVector>> {
    g.check()?;
    let n = jet_bound;
    let a = g.variables.len();
    let polys = g.polys()?;
    let components = g.target_component_weights();
    let rank = components.first().map_or(g.rank(), WeightVector::rank);
    let var_weights: Vec<WeightVector> = g.var_weights().iter().map(|w| w.padded(rank)).collect();
    let p = components.len();

    let monos = monomials_up_to(a, n);
    let mut columns: Vec<(Vec<u32>, usize)> = Vec::new();
    for m in monos.iter().filter(|m| m.iter().sum::<u32>() >= 1) {
        for k in 0..p {
            columns.push((m.clone(), k));
        }
    }
    let weight_of = |exps: &[u32], k: usize| components[k].sub(&monomial_weight(exps, &var_weights));

    // Tangent generators as sparse vectors over (exponents, component).
    let mut generators: Vec<BTreeMap<(Vec<u32>, usize), Scalar>> = Vec::new();
    let mut push_product = |h: &[u32], parts: &[(usize, &GenotypePoly)]| {
        let mut v = BTreeMap::new();
        for &(k, poly) in parts {
            for (exps, &c) in poly.terms() {
                let e: Vec<u32> = exps.iter().zip(h).map(|(x, y)| x + y).collect();
                let deg: u32 = e.iter().sum();
                if deg == 0 || deg > n {
                    continue;
                }
                let slot = v.entry((e, k)).or_insert_with(Scalar::zero);
                *slot += int(c);
            }
        }
        v.retain(|_, c: &mut Scalar| !c.is_zero());
        if !v.is_empty() {
            generators.push(v);
        }
    };
    let derivatives: Vec<Vec<GenotypePoly>> =
        (0..a).map(|i| polys.iter().map(|r| r.derivative(i)).collect()).collect();
    for h in &monos {
        for d in &derivatives {
            let parts: Vec<(usize, &GenotypePoly)> = d.iter().enumerate().collect();
            push_product(h, &parts);
        }
        for r in &polys {
            for k in 0..p {
                push_product(h, &[(k, r)]);
            }
        }
    }

    // Group columns and generators by torus weight.
    let mut buckets: BTreeMap<WeightVector, (Vec<(Vec<u32>, usize)>, Vec<usize>)> = BTreeMap::new();
    for (exps, k) in &columns {
        buckets.entry(weight_of(exps, *k)).or_default().0.push((exps.clone(), *k));
    }
    for (gi, gen) in generators.iter().enumerate() {
        let ((exps, k), _) = gen.iter().next().expect("nonempty generator");
        buckets.entry(weight_of(exps, *k)).or_default().1.push(gi);
    }

    let mut basis = Vec::new();
    for (weight, (mut cols, gens)) in buckets {
        // Largest first, so that pivots land on large monomials and the
        // smallest ones survive as representatives.
        cols.sort_by(|x, y| priority(&y.0, y.1).cmp(&priority(&x.0, x.1)));
        let index: HashMap<&(Vec<u32>, usize), usize> = cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut rows: Vec<Vec<Scalar>> = gens
            .iter()
            .map(|&gi| {
                let mut row = vec![Scalar::zero(); cols.len()];
                for (key, c) in &generators[gi] {
                    let col = *index.get(key).expect("generator is weight-homogeneous");
                    row[col] = c.clone();
                }
                row
            })
            .collect();
        let pivots = rref_pivots(&mut rows, cols.len());
        for (ci, (exps, k)) in cols.iter().enumerate() {
            if !pivots[ci] {
                basis.push(MonomialVector { exponents: exps.clone(), component: *k, weight: weight.clone() });
            }
        }
    }

    if basis.iter().any(|m| m.degree() + 1 >= n) {
        return Err(Error::JetBoundTooSmall(n));
    }
    basis.sort_by(|x, y| {
        (x.component, x.degree())
            .cmp(&(y.component, y.degree()))
            .then_with(|| y.exponents.cmp(&x.exponents))
    });
    Ok(basis)
}

/// Row reduction in place; returns which columns carry a pivot.
fn rref_pivots(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<bool> {
    let mut pivots = vec![false; ncols];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    if !rows[r][j].is_zero() {
                        let delta = rows[r][j].clone() * f.clone();
                        rows[i][j] -= delta;
                    }
                }
            }
        }
        pivots[c] = true;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// True iff the normal basis is the same at `jet_bound` and `jet_bound + 1`.
pub fn check_stabilization(g: &GenotypeSpec, jet_bound: u32) -> bool {
    match (normal_basis(g, jet_bound), normal_basis(g, jet_bound + 1)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

/// Smallest jet bound at least `max relation degree + 2` at which the basis
/// has stabilized, searching up to twice that value.
pub fn default_jet_bound(g: &GenotypeSpec) -> Result<u32> {
    let start = g.polys()?.iter().map(GenotypePoly::max_degree).max().unwrap_or(1) + 2;
    let cap = (2 * start).max(start + 4);
    (start..=cap).find(|&n| check_stabilization(g, n)).ok_or(Error::JetBoundTooSmall(cap))
}

/// The genotype with its padding adjusted to relative dimension `ell`.
pub fn with_ell(g: &GenotypeSpec, ell: u32) -> Result<GenotypeSpec> {
    let padded = g.variables.len() as i64 + ell as i64 - g.relations.len() as i64;
    if padded < 0 {
        return Err(Error::Genotype(format!(
            "{} relations in {} variables need ell ≥ {}",
            g.relations.len(),
            g.variables.len(),
            g.relations.len() - g.variables.len()
        )));
    }
    Ok(GenotypeSpec { padded: padded as u32, ..g.clone() })
}

/// Prototype weight data of a genotype for relative dimension `ell`.
///
/// The entry is named after its presentation; callers rename as needed.
pub fn derive_entry(g: &GenotypeSpec, ell: u32, jet_bound: Option<u32>) -> Result<SingularityEntry> {
    let g = with_ell(g, ell)?;
    g.check()?;
    let names = g.var_names();
    if let Some(v) = g.variables.iter().find(|v| v.weight.is_zero()) {
        return Err(Error::ZeroUnfoldingWeight { monomial: format!("variable {}", v.name) });
    }
    let n = match jet_bound {
        Some(n) => n,
        None => default_jet_bound(&g)?,
    };
    let basis = normal_basis(&g, n)?;
    if let Some(m) = basis.iter().find(|m| m.weight.is_zero()) {
        return Err(Error::ZeroUnfoldingWeight { monomial: m.render(&names) });
    }
    let components = g.target_component_weights();
    let rank = g.rank() + g.padded as usize;
    let unfolding: Vec<WeightVector> = basis.iter().map(|m| m.weight.clone()).collect();
    let mut source: Vec<WeightVector> = g.var_weights().iter().map(|w| w.padded(rank)).collect();
    source.extend(unfolding.iter().cloned());
    let mut target = components;
    target.extend(unfolding);
    Ok(SingularityEntry {
        name: g.presentation(),
        presentation: g.presentation(),
        codim: source.len() as u32,
        torus_rank: rank,
        genotype: g,
        source_weights: source,
        target_weights: target,
        provenance: "derived".into(),
    })
}
