//! Reference classification of contact singularities in the nice dimensions:
//! the genotype of every algebra together with the codimension of its orbit.
//!
//! This table is the input of catalog regeneration and the reference list for
//! the coverage check. Weight data is not stored here; it is derived by the
//! unfolding module.

use super::{GenotypeRelation, GenotypeSpec, GenotypeVariable};
use crate::algebra::WeightVector;
use crate::catalog::poly::GenotypePoly;

/// One algebra of the classification for a fixed `ℓ`.
#[derive(Clone, Debug)]
pub struct ClassifiedAlgebra {
    pub name: String,
    pub codim: u32,
    pub variables: Vec<(String, Vec<i64>)>,
    pub relations: Vec<String>,
}

impl ClassifiedAlgebra {
    pub fn presentation(&self) -> String {
        if self.relations.is_empty() {
            return "(x)".into();
        }
        format!("({})", self.relations.join(","))
    }

    /// The genotype for relative dimension `ell`; relation weights are read
    /// off the first monomial of each relation.
    pub fn genotype(&self, ell: u32) -> GenotypeSpec {
        let names: Vec<String> = self.variables.iter().map(|(n, _)| n.clone()).collect();
        let weights: Vec<WeightVector> = self.variables.iter().map(|(_, w)| WeightVector::new(w.clone())).collect();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let poly = GenotypePoly::parse(r, &names).expect("classification relations parse");
                let weight = poly.monomial_weights(&weights).into_iter().next().expect("nonzero relation");
                GenotypeRelation { poly: r.clone(), weight }
            })
            .collect::<Vec<_>>();
        let padded = (names.len() as i64 + ell as i64 - relations.len() as i64).max(0) as u32;
        GenotypeSpec {
            variables: names.into_iter().zip(weights).map(|(name, weight)| GenotypeVariable { name, weight }).collect(),
            relations,
            padded,
        }
    }
}

/// Highest codimension covered by the reference classification for `ell`.
pub fn classified_up_to(ell: u32) -> Option<u32> {
    match ell {
        0 => Some(8),
        1 => Some(14),
        2 => Some(15),
        _ => None,
    }
}

fn alg(name: &str, codim: u32, vars: &[(&str, &[i64])], relations: &[&str]) -> ClassifiedAlgebra {
    ClassifiedAlgebra {
        name: name.to_string(),
        codim,
        variables: vars.iter().map(|(n, w)| (n.to_string(), w.to_vec())).collect(),
        relations: relations.iter().map(|r| r.to_string()).collect(),
    }
}

fn a_series(k: u32, codim: u32) -> ClassifiedAlgebra {
    if k == 0 {
        return alg("A0", codim, &[], &[]);
    }
    let rel = format!("x^{}", k + 1);
    alg(&format!("A{k}"), codim, &[("x", &[1])], &[&rel])
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `I_ab = (xy, x^a + y^b)`; `I_22` uses the monomial presentation `(x^2, y^2)`
/// of the same algebra, which carries a rank-2 torus.
fn i_series(a: u32, b: u32, codim: u32) -> ClassifiedAlgebra {
    let name = format!("I{a}{b}");
    if a == 2 && b == 2 {
        return alg(&name, codim, &[("x", &[1, 0]), ("y", &[0, 1])], &["x^2", "y^2"]);
    }
    let g = gcd(a as i64, b as i64);
    let (wx, wy) = (b as i64 / g, a as i64 / g);
    let rel = format!("x^{a}+y^{b}");
    alg(&name, codim, &[("x", &[wx]), ("y", &[wy])], &["xy", &rel])
}

/// `III_ab = (xy, x^a, y^b)`.
fn iii_series(a: u32, b: u32, codim: u32) -> ClassifiedAlgebra {
    let ra = format!("x^{a}");
    let rb = format!("y^{b}");
    alg(&format!("III{a}{b}"), codim, &[("x", &[1, 0]), ("y", &[0, 1])], &["xy", &ra, &rb])
}

const XY2: &[(&str, &[i64])] = &[("x", &[1, 0]), ("y", &[0, 1])];

/// The reference classification for `ell ∈ {0, 1, 2}`, in codimension order.
pub fn classification(ell: u32) -> Vec<ClassifiedAlgebra> {
    let mut out = Vec::new();
    match ell {
        0 => {
            out.extend((0..=8).map(|k| a_series(k, k)));
            for (a, b) in [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4), (2, 6), (3, 5), (4, 4)] {
                out.push(i_series(a, b, a + b));
            }
            out.push(alg("c2", 7, XY2, &["x^2", "y^3"]));
            out.push(alg("c4", 8, &[("x", &[3]), ("y", &[2])], &["x^2+y^3", "xy^2"]));
        }
        1 => {
            out.extend((0..=7).map(|k| a_series(k, 2 * k)));
            for (a, b) in [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4), (2, 6), (3, 5), (4, 4)] {
                out.push(iii_series(a, b, 2 * (a + b) - 2));
            }
            for (a, b) in [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4)] {
                out.push(i_series(a, b, 2 * (a + b) - 1));
            }
            out.push(alg("c1", 11, XY2, &["x^2", "xy^2", "y^3"]));
            out.push(alg("c2", 12, XY2, &["x^2", "y^3"]));
            out.push(alg("c3", 13, &[("x", &[3]), ("y", &[2])], &["x^2+y^3", "xy^2", "y^4"]));
            out.push(alg("c4", 14, &[("x", &[3]), ("y", &[2])], &["x^2+y^3", "xy^2"]));
            out.push(alg("c5", 14, XY2, &["x^2", "xy^2", "y^4"]));
            out.push(alg("d1", 12, &[("x", &[1]), ("y", &[1]), ("z", &[1])], &["x^2+y^2+z^2", "xy", "xz", "yz"]));
            out.push(alg("d2", 13, &[("x", &[1, 0]), ("y", &[0, 1]), ("z", &[0, 1])], &["x^2", "y^2", "z^2", "xy+xz"]));
            out.push(alg("d3", 14, &[("x", &[3]), ("y", &[3]), ("z", &[2])], &["x^2-y^2+z^3", "xy", "xz", "yz"]));
            out.push(alg("d4", 14, &[("x", &[1, 0]), ("y", &[0, 1]), ("z", &[2, -1])], &["x^2+yz", "xz", "y^2", "z^2"]));
        }
        2 => {
            out.extend((0..=5).map(|k| a_series(k, 3 * k)));
            out.push(iii_series(2, 2, 8));
            out.push(i_series(2, 2, 10));
            out.push(iii_series(2, 3, 11));
            out.push(i_series(2, 3, 13));
            out.push(iii_series(2, 4, 14));
            out.push(iii_series(3, 3, 14));
            out.push(alg("c1", 15, XY2, &["x^2", "xy^2", "y^3"]));
            out.push(alg(
                "D",
                15,
                &[("x", &[1]), ("y", &[1]), ("z", &[1])],
                &["x^2-y^2", "x^2-z^2", "xy", "xz", "yz"],
            ));
        }
        _ => {}
    }
    out.sort_by_key(|a| a.codim);
    out
}

/// Covering relations of the `ℓ = 0` adjacency diagram, as `(upper, lower)`
/// pairs where `lower` has codimension one more than `upper`.
pub fn adjacency_l0() -> Vec<(&'static str, &'static str)> {
    vec![
        ("A0", "A1"),
        ("A1", "A2"),
        ("A2", "A3"),
        ("A3", "A4"),
        ("A3", "I22"),
        ("A4", "A5"),
        ("A4", "I23"),
        ("I22", "I23"),
        ("A5", "A6"),
        ("A5", "I24"),
        ("A5", "I33"),
        ("I23", "I24"),
        ("I23", "I33"),
        ("A6", "A7"),
        ("A6", "I25"),
        ("A6", "I34"),
        ("I24", "I25"),
        ("I24", "I34"),
        ("I24", "c2"),
        ("I33", "I34"),
        ("I33", "c2"),
        ("A7", "A8"),
        ("A7", "I26"),
        ("A7", "I35"),
        ("A7", "I44"),
        ("I25", "I26"),
        ("I25", "I35"),
        ("I25", "c4"),
        ("I34", "I35"),
        ("I34", "I44"),
        ("I34", "c4"),
        ("c2", "c4"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_counts_match_the_diagrams() {
        assert_eq!(classification(0).len(), 20);
        assert_eq!(classification(1).len(), 32);
        assert_eq!(classification(2).len(), 14);
        assert!(classification(3).is_empty());
    }

    #[test]
    fn genotypes_are_weighted_homogeneous() {
        for ell in 0..=2 {
            for a in classification(ell) {
                a.genotype(ell).check().unwrap_or_else(|e| panic!("{}: {e}", a.name));
            }
        }
    }

    #[test]
    fn padding_counts() {
        let l1 = classification(1);
        let find = |n: &str| l1.iter().find(|a| a.name == n).unwrap().genotype(1);
        assert_eq!(find("A2").padded, 1);
        assert_eq!(find("III23").padded, 0);
        assert_eq!(find("I23").padded, 1);
        assert_eq!(find("d1").padded, 0);
    }
}
