//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p ssm-thom --test acceptance -- --nocapture` to see them.

mod common;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use ssm_thom::algebra::{int, ParamScalar, Partition, TorusPolynomial, WeightVector};
use ssm_thom::apps::{chern_of_map, csm_from_ssm, euler_profile, hierarchy_test, ssm_of_locus, sum_check, Verdict};
use ssm_thom::bases::{expand, schur_tilde, to_schur, Basis, BasisExpansion, SchurTilde};
use ssm_thom::catalog::{Catalog, GenotypeRelation, GenotypeSpec, GenotypeVariable};
use ssm_thom::render::{chern_text, expansion_latex_cell, expansion_text};
use ssm_thom::solver::{ssm_thom, verify_axioms, Interpolator, SsmPolynomial};
use ssm_thom::unfolding::{derive_entry, normal_basis, with_ell};

struct Outcome {
    pass: bool,
    summary: String,
    /// Everything computed, for the determinism comparison.
    output: String,
}

fn outcome(pass: bool, summary: impl Into<String>, output: String) -> Outcome {
    Outcome { pass, summary: summary.into(), output }
}

fn p(parts: &[u32]) -> Partition {
    Partition::from_parts(parts.to_vec())
}

fn cat(ell: u32) -> Catalog {
    Catalog::bundled(ell).unwrap()
}

fn criterion_1() -> Outcome {
    let t = ssm_thom("A2", 0, 3, &cat(0)).unwrap();
    let text = chern_text(&t.series);
    let expected = "(c1^2+c2) + (-3c1^3-6c1c2-3c3)";
    outcome(text == expected, format!("T(A2, 0, 3) = {text}"), text)
}

fn criterion_2() -> Outcome {
    let t = ssm_thom("A2", 0, 8, &cat(0)).unwrap();
    let golden = common::series_from(8, &common::parse_chern_latex(&common::data("a2_l0_degree8.tex")));
    let pass = t.series == golden && t.series.coeff(&p(&[8])) == int(127) && t.series.coeff(&p(&[4, 2, 1, 1])) == int(-1855);
    outcome(pass, format!("T(A2, 0, 8): {} terms, all equal to the reference series", t.series.len()), chern_text(&t.series))
}

/// Reference expansions for one ℓ, in both bases.
struct Table {
    file: &'static str,
    ell: u32,
    degree: u32,
}

const TABLES: [Table; 2] =
    [Table { file: "expansions_l0.tsv", ell: 0, degree: 5 }, Table { file: "expansions_l1.tsv", ell: 1, degree: 6 }];

/// Compares every golden cell of `basis`, treating cells missing from the
/// transcription as blank, i.e. zero. Returns (cells compared, mismatches, rendered output).
fn compare_tables(basis: Basis) -> (usize, Vec<String>, String) {
    let mut compared = 0;
    let mut bad = Vec::new();
    let mut out = String::new();
    for fig in &TABLES {
        let catalog = cat(fig.ell);
        let cells: Vec<_> = common::golden_cells(fig.file).into_iter().filter(|c| c.basis == basis).collect();
        let mut entries: Vec<String> = Vec::new();
        for c in &cells {
            if !entries.contains(&c.entry) {
                entries.push(c.entry.clone());
            }
        }
        let interp = Interpolator::new(&catalog, fig.degree).unwrap();
        for name in &entries {
            let t = interp.solve(name).unwrap();
            let e = expand(&t.series, basis).unwrap();
            for k in t.codim..=fig.degree {
                let golden = cells.iter().find(|c| &c.entry == name && c.degree == k).map_or("", |c| c.latex.as_str());
                let rendered = expansion_latex_cell(&e, k);
                writeln!(out, "{basis} l{} {name} {k}: {rendered}", fig.ell).unwrap();
                compared += 1;
                let same_text = common::normalize_cell(&rendered, basis) == common::normalize_cell(golden, basis);
                let same_terms = common::parse_cell(golden) == common::cell_terms(&e, k);
                if !(same_text && same_terms) {
                    bad.push(format!("ℓ={} {name} deg {k}: got {rendered}, expected {golden}", fig.ell));
                }
            }
        }
    }
    (compared, bad, out)
}

fn criterion_3() -> Outcome {
    let (n, bad, out) = compare_tables(Basis::Schur);
    outcome(bad.is_empty(), format!("{n} Schur cells compared, {} mismatches {bad:?}", bad.len()), out)
}

fn criterion_4() -> Outcome {
    let (n, bad, mut out) = compare_tables(Basis::SchurTilde);
    let a0 = ssm_thom("A0", 0, 6, &cat(0)).unwrap();
    let e0 = expand(&a0.series, Basis::SchurTilde).unwrap();
    let mut unit = BasisExpansion::new(Basis::SchurTilde, 6);
    unit.add_term(Partition::empty(), int(1));
    let a1 = ssm_thom("A0", 1, 6, &cat(1)).unwrap();
    let e1 = expand(&a1.series, Basis::SchurTilde).unwrap();
    let mut columns = BasisExpansion::new(Basis::SchurTilde, 6);
    for k in 0..=6 {
        columns.add_term(p(&vec![1; k]), int(1));
    }
    writeln!(out, "{}\n{}", expansion_text(&e0), expansion_text(&e1)).unwrap();
    let pass = bad.is_empty() && e0.terms == unit.terms && e1.terms == columns.terms;
    outcome(
        pass,
        format!(
            "{n} tilde cells compared, {} mismatches {bad:?}; T(A0,0) = {}; T(A0,1) = {}",
            bad.len(),
            expansion_text(&e0),
            expansion_text(&e1)
        ),
        out,
    )
}

fn criterion_5() -> Outcome {
    let s = schur_tilde(&p(&[4, 1]), 7).unwrap();
    let e = to_schur(&s);
    let expected = common::parse_cell("s_{41}-3\\,s_{411}-3\\,s_{42}-5\\,s_{51}");
    let got: BTreeMap<Partition, _> = e.terms.iter().filter(|(q, _)| q.weight() <= 6).map(|(q, c)| (q.clone(), c.clone())).collect();
    // The printed degree-7 block lists `10 s_42`; the only weight-7 shape
    // that fits is 421.
    let seven = common::parse_cell("6\\,s_{4111}+10\\,s_{421}+5\\,s_{43}+16\\,s_{511}+16\\,s_{52}+15\\,s_{61}");
    let pass = got == expected && common::cell_terms(&e, 7) == seven;
    let text = expansion_text(&e);
    outcome(pass, format!("s~41 = {text}"), text)
}

fn criterion_6() -> (Outcome, SsmPolynomial) {
    let t = ssm_thom("I24", 1, 11, &cat(1)).unwrap();
    let thom = t.thom();
    let golden = common::parse_chern_latex(&common::data("i24_l1_thom.tex"));
    let pass = thom == common::series_from(11, &golden);
    let text = chern_text(&thom);
    (outcome(pass, format!("Thom(I24, 1): {} terms, equal to the reference display", thom.len()), text), t)
}

fn criterion_7() -> Outcome {
    let catalog = cat(1);
    let below = hierarchy_test("d1", "I24", 1, 11, &catalog).unwrap();
    let not_below = hierarchy_test("d1", "I33", 1, 11, &catalog).unwrap();
    let six_a11 = TorusPolynomial::from_terms(1, below.witness.degree(), [(vec![11], int(6))]);
    let pass = below.verdict == Verdict::Below
        && below.witness == six_a11
        && not_below.verdict == Verdict::NotBelow
        && not_below.witness.is_zero();
    let text = format!("d1 vs I24: {below}; d1 vs I33: {not_below}");
    outcome(pass, text.clone(), text)
}

fn criterion_8() -> Outcome {
    let d = ParamScalar::var("d");
    let k = |v: i64| ParamScalar::constant(int(v));
    let poly = |cs: &[i64]| cs.iter().enumerate().fold(k(0), |acc, (i, &c)| acc + k(c) * d.pow(i as u32));
    let sq = poly(&[-1, 1]).pow(2);
    let t = ssm_thom("A2", 1, 5, &cat(1)).unwrap();
    let c = chern_of_map(5, 6, &d).unwrap();
    let expected_c = [
        poly(&[-6, 7]),
        k(21) * sq.clone(),
        k(7) * sq.clone() * poly(&[-8, 5]),
        k(7) * sq.clone() * poly(&[18, -20, 5]),
        k(21) * sq.clone() * poly(&[-2, 1]) * poly(&[6, -6, 1]),
    ];
    let c_ok = c.iter().enumerate().all(|(i, ci)| ci.coeff(i as u32 + 1) == expected_c[i] && ci.lowest_degree() == Some(i as u32 + 1));
    let degree = k(21) * sq.clone() * poly(&[-7, 6]).pow(2);
    let euler = k(-14) * sq.clone() * poly(&[-2019, 4887, -3928, 1048]);
    let s = ssm_of_locus(&t, &c, 5).unwrap();
    let s_ok = s.coeff(4) == degree && s.coeff(5) == k(-14) * sq.clone() * poly(&[-1578, 4131, -3604, 1048]) && s.lowest_degree() == Some(4);
    let csm = csm_from_ssm(&s);
    let csm_ok = csm.coeff(4) == degree && csm.coeff(5) == euler && csm.lowest_degree() == Some(4);
    let profile = euler_profile(&csm);
    let chi_ok = profile.degree == degree && profile.euler == euler && profile.chi == vec![euler.clone(), k(0) - degree.clone()];
    let mut out = String::new();
    for (i, ci) in c.iter().enumerate() {
        writeln!(out, "c{}(F) = {ci}", i + 1).unwrap();
    }
    writeln!(out, "s^sm = {s}\nc^sm = {csm}\ndegree = {}\neuler = {}", profile.degree, profile.euler).unwrap();
    outcome(c_ok && s_ok && csm_ok && chi_ok, format!("deg = {}, chi = {}", profile.degree, profile.euler), out)
}

fn criterion_9() -> Outcome {
    let r = sum_check(&cat(0), 8).unwrap();
    let pass = r.entries == 20 && r.sum_is_one && r.tilde_all_ones == Some(true);
    let text = format!("{} entries, sum = {}, tilde coefficients all one: {:?}", r.entries, chern_text(&r.sum), r.tilde_all_ones);
    outcome(pass, text.clone(), text)
}

fn criterion_10() -> Outcome {
    let w = |v: &[i64]| WeightVector::new(v.to_vec());
    let g = GenotypeSpec {
        variables: vec![
            GenotypeVariable { name: "x".into(), weight: w(&[1, 0]) },
            GenotypeVariable { name: "y".into(), weight: w(&[0, 1]) },
        ],
        relations: vec![
            GenotypeRelation { poly: "x^2".into(), weight: w(&[2, 0]) },
            GenotypeRelation { poly: "y^3".into(), weight: w(&[0, 3]) },
        ],
        padded: 0,
    };
    let names = vec!["x".to_string(), "y".to_string()];
    let params = |ell: u32| {
        let mut v: Vec<String> =
            normal_basis(&with_ell(&g, ell).unwrap(), 8).unwrap().iter().map(|m| m.render(&names)).collect();
        v.sort();
        v
    };
    let (p0, p1) = (params(0), params(1));
    let e = derive_entry(&g, 0, None).unwrap();
    let mut rho_u: Vec<Vec<i64>> = e.source_weights.iter().skip(2).map(|x| x.0.clone()).collect();
    rho_u.sort();
    let mut expected_rho = vec![vec![2, -1], vec![2, -2], vec![-1, 3], vec![0, 2], vec![-1, 2]];
    expected_rho.sort();

    let d1 = GenotypeSpec {
        variables: ["x", "y", "z"].iter().map(|n| GenotypeVariable { name: n.to_string(), weight: w(&[1]) }).collect(),
        relations: ["x^2+y^2+z^2", "xy", "xz", "yz"]
            .iter()
            .map(|r| GenotypeRelation { poly: r.to_string(), weight: w(&[2]) })
            .collect(),
        padded: 0,
    };
    let e1 = derive_entry(&d1, 1, None).unwrap();
    let mut target: Vec<i64> = e1.target_weights.iter().map(|x| x.0[0]).collect();
    target.sort();
    let expected_target: Vec<i64> = [vec![1; 9], vec![2; 4]].concat();
    let pass = p0.len() == 5
        && p1.len() == 10
        && p1.iter().filter(|m| p0.contains(m)).count() == 5
        && rho_u == expected_rho
        && e1.source_weights == vec![w(&[1]); 12]
        && target == expected_target;
    let text = format!(
        "(x^2,y^3): {} / {} unfolding monomials, rho_U = {rho_u:?}; three-variable algebra: {} source, target {target:?}",
        p0.len(),
        p1.len(),
        e1.source_weights.len()
    );
    outcome(pass, text.clone(), format!("{text}\n{p0:?}\n{p1:?}"))
}

/// Sign of the degree-`k` part of an expansion: `Some(±1)` if every
/// coefficient shares it, `Some(0)` if empty, `None` if mixed.
fn block_sign(e: &BasisExpansion, k: u32) -> Option<i32> {
    let signs: Vec<i32> = e.part(k).map(|(_, c)| if *c > int(0) { 1 } else { -1 }).collect();
    match signs.first() {
        None => Some(0),
        Some(&s) if signs.iter().all(|&x| x == s) => Some(s),
        _ => None,
    }
}

fn criterion_11(i24: &SsmPolynomial) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let catalog = cat(0);
    let all = Interpolator::new(&catalog, 8).unwrap().solve_all().unwrap();
    let mut axioms_ok = all.iter().all(|t| verify_axioms(t, &catalog).passed());
    axioms_ok &= verify_axioms(i24, &cat(1)).passed();
    if !axioms_ok {
        pass = false;
        notes.push("verify_axioms failed".to_string());
    }

    let mut tilde = SchurTilde::new(8).unwrap();
    let (mut alternating, mut checked) = (0, 0);
    let mut exceptions = Vec::new();
    for t in &all {
        let schur = to_schur(&t.series);
        let tl = tilde.expand(&t.series).unwrap();
        for (label, e) in [("schur", &schur), ("tilde", &tl)] {
            checked += 1;
            let ok = (t.codim..=8).all(|k| {
                let want = if (k - t.codim) % 2 == 0 { 1 } else { -1 };
                matches!(block_sign(e, k), Some(s) if s == want || s == 0)
            });
            if ok {
                alternating += 1;
            } else {
                exceptions.push(format!("{} {label}", t.entry));
            }
        }
    }
    notes.push(format!("alternating signs in {alternating}/{checked} ℓ=0 expansions up to degree 8 {exceptions:?}"));

    // Lowest parts are ordinary Thom polynomials, which are Schur positive.
    let mut positive = all.iter().all(|t| to_schur(&t.thom()).terms.values().all(|c| *c > int(0)));
    positive &= to_schur(&i24.thom()).terms.values().all(|c| *c > int(0));
    let l2 = cat(2);
    for t in Interpolator::new(&l2, 11).unwrap().solve_all().unwrap() {
        positive &= to_schur(&t.thom()).terms.values().all(|c| *c > int(0));
    }
    if !positive {
        pass = false;
    }
    notes.push(format!("lowest parts Schur positive: {positive}"));
    outcome(pass, notes.join("; "), String::new())
}

fn smoke_l1_d14() -> Outcome {
    let catalog = cat(1);
    let r = sum_check(&catalog, 14).unwrap();
    let pass = r.entries == 32 && r.sum_is_one;
    outcome(pass, format!("ℓ=1, d=14: {} unique solutions, sum equals 1: {}", r.entries, r.sum_is_one), String::new())
}

fn run_1_to_10() -> (Vec<(u32, Outcome, Duration, Duration)>, SsmPolynomial) {
    let mut results = Vec::new();
    let mut timed = |n: u32, limit: u64, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = f();
        results.push((n, o, start.elapsed(), Duration::from_secs(limit)));
    };
    timed(1, 1, &criterion_1);
    timed(2, 10, &criterion_2);
    timed(3, 30, &criterion_3);
    timed(4, 60, &criterion_4);
    timed(5, 5, &criterion_5);
    let start = Instant::now();
    let (o6, i24) = criterion_6();
    results.push((6, o6, start.elapsed(), Duration::from_secs(300)));
    let mut timed = |n: u32, limit: u64, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = f();
        results.push((n, o, start.elapsed(), Duration::from_secs(limit)));
    };
    timed(7, 10, &criterion_7);
    timed(8, 5, &criterion_8);
    timed(9, 60, &criterion_9);
    timed(10, 10, &criterion_10);
    (results, i24)
}

fn report(label: &str, pass: bool, summary: &str, elapsed: Duration) -> bool {
    println!("{} {label}: {summary} [{:.2}s]", if pass { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    pass
}

#[test]
fn acceptance() {
    let mut all_pass = true;
    let (first, i24) = run_1_to_10();
    for (n, o, elapsed, limit) in &first {
        let in_time = elapsed <= limit;
        let summary = if in_time { o.summary.clone() } else { format!("{} (over the {}s target)", o.summary, limit.as_secs()) };
        all_pass &= report(&format!("criterion {n}"), o.pass && in_time, &summary, *elapsed);
    }

    let start = Instant::now();
    let o11 = criterion_11(&i24);
    all_pass &= report("criterion 11", o11.pass, &o11.summary, start.elapsed());

    let start = Instant::now();
    let (second, _) = run_1_to_10();
    let same = first.iter().zip(&second).all(|(a, b)| a.1.output == b.1.output && a.1.summary == b.1.summary);
    let bytes: usize = first.iter().map(|r| r.1.output.len()).sum();
    all_pass &= report("criterion 12", same, &format!("second run of 1-10 byte-identical ({bytes} bytes)"), start.elapsed());

    let start = Instant::now();
    let smoke = smoke_l1_d14();
    let in_time = start.elapsed() <= Duration::from_secs(900);
    all_pass &= report("smoke d=14", smoke.pass && in_time, &smoke.summary, start.elapsed());

    assert!(all_pass, "some acceptance criteria failed");
}
