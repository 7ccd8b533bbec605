mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use ssm_thom::algebra::{int, ChernSeries, Partition, Scalar};
use ssm_thom::catalog::Catalog;
use ssm_thom::solver::{
    build_system, solve_exact, solve_fraction_free, ssm_thom, verify_axioms, Axiom, ConstraintSystem, Provenance, Row,
};
use ssm_thom::Error;

fn p(parts: &[u32]) -> Partition {
    Partition::from_parts(parts.to_vec())
}

fn small_catalog() -> Catalog {
    Catalog::bundled(0).unwrap().restricted(&["A0", "A1", "A2", "A3"]).unwrap()
}

/// Dense coefficient vector of `row` over the given partitions, plus its rhs.
fn dense(sys: &ConstraintSystem, row: &Row, order: &[Partition]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = order.iter().map(|q| row.coefficient(sys.column(q).unwrap())).collect();
    v.push(row.rhs.clone());
    v
}

fn proportional(a: &[BigInt], b: &[i64]) -> bool {
    let b: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
    let Some(i) = b.iter().position(|x| *x != BigInt::from(0)) else {
        return a.iter().all(|x| *x == BigInt::from(0));
    };
    a.iter().zip(&b).all(|(x, y)| x * &b[i] == y * &a[i]) && a[i] != BigInt::from(0)
}

fn rows_for<'a>(sys: &'a ConstraintSystem, entry: &str) -> Vec<&'a Row> {
    sys.rows.iter().filter(|r| r.provenance.entry == entry).collect()
}

fn order3() -> Vec<Partition> {
    vec![p(&[]), p(&[1]), p(&[2]), p(&[3]), p(&[1, 1]), p(&[2, 1]), p(&[1, 1, 1])]
}

#[test]
fn a3_vanishing_row_at_degree_three() {
    let sys = build_system("A2", &small_catalog(), 3).unwrap();
    let rows = rows_for(&sys, "A3");
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].provenance.axiom, Axiom::Vanishing);
    let v = dense(&sys, rows[0], &order3());
    assert!(proportional(&v, &[6, 33, -18, 3, 54, -9, 27, 0]), "{v:?}");
}

#[test]
fn a1_vanishing_rows() {
    let sys = build_system("A2", &small_catalog(), 3).unwrap();
    let rows = rows_for(&sys, "A1");
    let order = order3();
    let by_degree: BTreeMap<u32, Vec<Vec<BigInt>>> = rows.iter().fold(BTreeMap::new(), |mut m, r| {
        m.entry(r.provenance.degree).or_default().push(dense(&sys, r, &order));
        m
    });
    assert_eq!(by_degree.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3]);
    assert!(proportional(&by_degree[&1][0], &[1, 1, 0, 0, 0, 0, 0, 0]));
    assert!(proportional(&by_degree[&2][0], &[0, 1, -1, 0, 1, 0, 0, 0]));
    assert!(proportional(&by_degree[&3][0], &[0, 0, -1, 1, 1, -1, 1, 0]));
}

#[test]
fn a2_up_to_degree_three() {
    let t = ssm_thom("A2", 0, 3, &small_catalog()).unwrap();
    let expected = ChernSeries::from_terms(
        3,
        [
            (p(&[2]), int(1)),
            (p(&[1, 1]), int(1)),
            (p(&[3]), int(-3)),
            (p(&[2, 1]), int(-6)),
            (p(&[1, 1, 1]), int(-3)),
        ],
    );
    assert_eq!(t.series, expected);
}

#[test]
fn both_eliminations_agree() {
    let cat = Catalog::bundled(0).unwrap();
    for (target, d) in [("A2", 5), ("I22", 6), ("A4", 6), ("c2", 7)] {
        let sys = build_system(target, &cat, d).unwrap();
        assert_eq!(solve_exact(&sys).unwrap(), solve_fraction_free(&sys).unwrap(), "{target} d={d}");
    }
}

#[test]
fn contradictory_row_is_inconsistent() {
    let mut sys = build_system("A2", &small_catalog(), 3).unwrap();
    let col = sys.column(&p(&[2])).unwrap();
    let provenance = Provenance { entry: "extra".into(), axiom: Axiom::Vanishing, degree: 2, monomial: vec![2] };
    sys.rows.push(Row::from_rational(vec![(col, int(1))], int(5), provenance));
    assert!(matches!(solve_exact(&sys), Err(Error::Inconsistent(_))));
    assert!(matches!(solve_fraction_free(&sys), Err(Error::Inconsistent(_))));
}

#[test]
fn missing_entry_leaves_unknowns_free() {
    let cat = Catalog::bundled(0).unwrap().restricted(&["A0", "A1", "A2"]).unwrap();
    let sys = build_system("A2", &cat, 2).unwrap();
    assert!(solve_exact(&sys).is_ok());
    let truncated = ConstraintSystem {
        unknowns: build_system("A2", &small_catalog(), 3).unwrap().unknowns,
        rows: build_system("A2", &small_catalog(), 3)
            .unwrap()
            .rows
            .into_iter()
            .filter(|r| r.provenance.entry != "A3")
            .collect(),
    };
    match solve_exact(&truncated) {
        Err(Error::Underdetermined { free }) => assert!(!free.is_empty()),
        other => panic!("expected underdetermined, got {other:?}"),
    }
}

#[test]
fn a2_degree_eight_matches_reference_series() {
    let cat = Catalog::bundled(0).unwrap();
    let t = ssm_thom("A2", 0, 8, &cat).unwrap();
    let expected = common::series_from(8, &common::parse_chern_latex(&common::data("a2_l0_degree8.tex")));
    assert_eq!(t.series, expected);
    assert_eq!(t.series.coeff(&p(&[8])), int(127));
    assert_eq!(t.series.coeff(&p(&[4, 2, 1, 1])), int(-1855));
}

#[test]
fn solutions_satisfy_both_axioms() {
    for ell in 0..=2u32 {
        let cat = Catalog::bundled(ell).unwrap();
        let d = 6;
        for entry in cat.up_to(d) {
            let t = ssm_thom(&entry.name, ell, d, &cat).unwrap();
            let report = verify_axioms(&t, &cat);
            assert!(report.passed(), "{} ell={ell}: {:?}", entry.name, report.checks);
        }
    }
}

#[test]
fn perturbed_solution_fails_verification() {
    let cat = Catalog::bundled(0).unwrap();
    let mut t = ssm_thom("A1", 0, 4, &cat).unwrap();
    t.series.add_term(p(&[2, 2]), Scalar::from_integer(1.into()));
    assert!(!verify_axioms(&t, &cat).passed());
}

#[test]
fn degree_beyond_mather_bound_is_refused() {
    let cat = Catalog::bundled(0).unwrap();
    assert!(matches!(ssm_thom("A1", 0, 9, &cat), Err(Error::DegreeTooLarge { .. })));
    assert!(matches!(ssm_thom("A5", 0, 3, &cat), Err(Error::DegreeTooLarge { .. })));
    assert!(matches!(ssm_thom("Z9", 0, 3, &cat), Err(Error::UnknownEntry(_))));
}
