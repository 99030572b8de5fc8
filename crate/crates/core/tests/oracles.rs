//! Cross-checks against oracles written independently of the library code.

mod common;

use common::oracle::*;
use common::*;
use num_complex::Complex64;
use scheme_forge::action::{self, ActionFamily, ActionSpec, OrbitPartition};
use scheme_forge::duality::{self, Constancy};
use scheme_forge::gf::FieldSpec;
use scheme_forge::pipeline;
use scheme_forge::scheme::TranslationScheme;
use scheme_forge::space::{Point, SpaceSpec};

#[test]
fn orbit_classes_are_rank_classes() {
    let f = |p, e| FieldSpec { p, e, modulus: None };
    let cases = [
        (SpaceSpec::MatrixFull { m: 2, n: 2, field: f(2, 1) }, ActionSpec::Bilinear { m: None, n: None }, 1),
        (SpaceSpec::MatrixFull { m: 2, n: 3, field: f(3, 1) }, ActionSpec::Bilinear { m: None, n: None }, 1),
        (SpaceSpec::MatrixFull { m: 2, n: 2, field: f(2, 2) }, ActionSpec::Bilinear { m: None, n: None }, 1),
        (SpaceSpec::MatrixAlternating { m: 4, field: f(2, 1) }, ActionSpec::Alternating { m: None }, 2),
        (SpaceSpec::MatrixAlternating { m: 4, field: f(3, 1) }, ActionSpec::Alternating { m: None }, 2),
        (SpaceSpec::MatrixAlternating { m: 5, field: f(2, 1) }, ActionSpec::Alternating { m: None }, 2),
        (SpaceSpec::MatrixHermitian { m: 2, field: f(2, 2) }, ActionSpec::Hermitian { m: None }, 1),
        (SpaceSpec::MatrixHermitian { m: 3, field: f(2, 2) }, ActionSpec::Hermitian { m: None }, 1),
        (SpaceSpec::MatrixHermitian { m: 2, field: f(3, 2) }, ActionSpec::Hermitian { m: None }, 1),
    ];
    for (spec, action, step) in cases {
        let s = space(spec);
        let scheme = scheme_on(&s, action);
        let field = s.field().unwrap();
        for x in s.points() {
            let r = rank_oracle(field, matrix_rows(&s, x));
            assert_eq!(r % step, 0);
            assert_eq!(scheme.partition().class_of(x), r / step, "{} at {}", scheme.label(), s.describe(x));
        }
    }
}

fn q_binomial_rank_count(q: u64, m: u32, n: u32, r: u32) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..r {
        num *= (q.pow(m) - q.pow(i)) * (q.pow(n) - q.pow(i));
        den *= q.pow(r) - q.pow(i);
    }
    num / den
}

#[test]
fn bilinear_valencies_match_rank_counts() {
    for (p, m, n) in [(2u32, 2u32, 2u32), (3, 2, 3), (2, 3, 3)] {
        let s = space(SpaceSpec::MatrixFull {
            m: m as usize,
            n: n as usize,
            field: FieldSpec::prime(p),
        });
        let scheme = scheme_on(&s, ActionSpec::Bilinear { m: None, n: None });
        let expected: Vec<usize> = (0..=m).map(|r| q_binomial_rank_count(p as u64, m, n, r) as usize).collect();
        assert_eq!(scheme.valencies(), expected);
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn hamming_valencies() {
    for (n, p, e) in [(4usize, 3u32, 1u32), (3, 2, 2), (5, 2, 1), (3, 5, 1)] {
        let s = space(vector(n, p, e));
        let q = (p as u64).pow(e);
        let scheme = scheme_on(&s, ActionSpec::Hamming { n: None });
        let expected: Vec<usize> = (0..=n as u64).map(|i| (binomial(n as u64, i) * (q - 1).pow(i as u32)) as usize).collect();
        assert_eq!(scheme.valencies(), expected);
    }
}

fn krawtchouk(n: i64, q: i64, j: i64, i: i64) -> i64 {
    (0..=j)
        .map(|s| {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            sign * (q - 1).pow((j - s) as u32) * binomial(i as u64, s as u64) as i64 * binomial((n - i) as u64, (j - s) as u64) as i64
        })
        .sum()
}

#[test]
fn hamming_q_matrix_is_krawtchouk() {
    for (n, p, e) in [(4usize, 3u32, 1u32), (3, 2, 2), (3, 5, 1)] {
        let s = space(vector(n, p, e));
        let q = (p as i64).pow(e);
        let scheme = scheme_on(&s, ActionSpec::Hamming { n: None });
        let qm = duality::q_matrix(&scheme, &scheme).unwrap();
        for i in 0..=n {
            for j in 0..=n {
                assert_eq!(qm[i][j].as_rational_integer(), Some(krawtchouk(n as i64, q, j as i64, i as i64)));
            }
        }
    }
}

/// Character sums in floating point from the coordinate description of the
/// pairing, without the library's pairing or cyclotomic arithmetic.
fn float_q_matrix_vector_prime(n: usize, p: u32, g: &OrbitPartition, gc: &OrbitPartition) -> Vec<Vec<Complex64>> {
    let size = (p as usize).pow(n as u32);
    let digits = |x: usize| (0..n).map(move |k| (x / (p as usize).pow(k as u32)) % p as usize);
    let value = |y: usize, x: usize| {
        let dot: usize = digits(y).zip(digits(x)).map(|(a, b)| a * b).sum();
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (dot % p as usize) as f64 / p as f64)
    };
    (0..g.num_classes())
        .map(|i| {
            let y = g.representative(i).index();
            (0..gc.num_classes())
                .map(|j| (0..size).filter(|&x| gc.class_of(Point(x as u32)) == j).map(|x| value(y, x)).sum())
                .collect()
        })
        .collect()
}

#[test]
fn exact_q_matches_floating_brute_force() {
    let cases = [
        (3usize, 3u32, ActionSpec::Hamming { n: None }, None),
        (1, 13, ActionSpec::Cyclotomic { d: 3 }, None),
        (3, 2, ActionSpec::WeakHamming { levels: Some(vec![2, 1]) }, Some(ActionSpec::WeakHammingDual { levels: Some(vec![2, 1]) })),
        (3, 3, ActionSpec::WeakHamming { levels: Some(vec![1, 2]) }, Some(ActionSpec::WeakHammingDual { levels: Some(vec![1, 2]) })),
    ];
    for (n, p, a, b) in cases {
        let s = space(vector(n, p, 1));
        let g = scheme_on(&s, a.clone());
        let gc = scheme_on(&s, b.unwrap_or(a));
        let exact = duality::q_matrix(&g, &gc).unwrap();
        let float = float_q_matrix_vector_prime(n, p, g.partition(), gc.partition());
        for (er, fr) in exact.iter().zip(&float) {
            for (e, f) in er.iter().zip(fr) {
                assert!((e.approx().value - f).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn weak_hamming_classes_are_weight_spheres() {
    for (levels, p) in [(vec![1, 1], 2), (vec![2, 1], 2), (vec![1, 2], 2), (vec![1, 1, 2], 2), (vec![2, 1], 3), (vec![2, 2], 2)] {
        let n: usize = levels.iter().sum();
        let s = space(vector(n, p, 1));
        let level = standard_levels(&levels);
        let t = levels.len();
        let dual_level: Vec<usize> = level.iter().map(|&l| t - 1 - l).collect();
        let g = scheme_on(&s, ActionSpec::WeakHamming { levels: Some(levels.clone()) });
        let gc = scheme_on(&s, ActionSpec::WeakHammingDual { levels: Some(levels.clone()) });
        for x in s.points() {
            let v = s.vector(x);
            assert_eq!(g.partition().class_of(x), ideal_weight(&level, &v));
            assert_eq!(gc.partition().class_of(x), ideal_weight(&dual_level, &v));
        }
    }
}

#[test]
fn weak_hamming_relations_are_wreath_relations() {
    for (levels, p) in [(vec![1, 1], 2), (vec![2, 1], 2), (vec![1, 2], 3), (vec![2, 1, 1], 2), (vec![1, 1, 2, 1], 2)] {
        let n: usize = levels.iter().sum();
        let s = space(vector(n, p, 1));
        assert!(s.size() <= 256);
        let g = scheme_on(&s, ActionSpec::WeakHamming { levels: Some(levels.clone()) });
        for x in s.points() {
            for y in s.points() {
                assert_eq!(g.relation(x, y), wreath_oracle(&levels, &s.vector(x), &s.vector(y)));
            }
        }
    }
}

fn built_in_instances() -> Vec<(Box<dyn Fn() -> (TranslationScheme, ActionFamily)>, &'static str)> {
    let mut out: Vec<(Box<dyn Fn() -> (TranslationScheme, ActionFamily)>, &'static str)> = Vec::new();
    for (name, config) in suite() {
        out.push((
            Box::new(move || {
                let p = pipeline::prepare(&config, Default::default()).unwrap();
                (p.scheme, p.family)
            }),
            name,
        ));
    }
    out
}

#[test]
fn adjoint_pass_implies_constancy_pass() {
    for (make, name) in built_in_instances() {
        let (g, family) = make();
        let partner = pipeline::default_dual(&family);
        let gc = TranslationScheme::from_action(g.space().clone(), &partner).unwrap().0;
        let prepared = pipeline::Prepared {
            space: g.space().clone(),
            family: family.clone(),
            generators: action::generators(&family, g.space()).unwrap(),
            scheme: g.clone(),
        };
        let status = pipeline::adjoint_status(&prepared, &gc);
        assert_eq!(status.passed(), Some(true), "{name}");
        assert!(duality::constancy_test(&g, &gc).unwrap().passed(), "{name}");
    }
}

#[test]
fn constancy_membership_and_sigma_agree() {
    let s = space(vector(2, 3, 1));
    let h = scheme_on(&s, ActionSpec::Hamming { n: None });
    let z = |v: &[u32]| v.iter().map(|&i| Point(i)).collect::<Vec<_>>();
    // weight-1 class of F_3^2 split by coordinate
    let split = OrbitPartition::from_classes(9, vec![z(&[0]), z(&[1, 2]), z(&[3, 6]), z(&[4, 5, 7, 8])]).unwrap();
    let split = TranslationScheme::new(s.clone(), split, "split");
    let mut candidates = vec![(h.clone(), h.clone()), (h.clone(), split.clone()), (split.clone(), h.clone())];
    for (make, _) in built_in_instances() {
        let (g, family) = make();
        let gc = TranslationScheme::from_action(g.space().clone(), &pipeline::default_dual(&family)).unwrap().0;
        candidates.push((g, gc));
    }
    for (g, gc) in candidates {
        let constancy = matches!(duality::constancy_test(&g, &gc).unwrap(), Constancy::Pass(_));
        let e = duality::idempotents(&gc, 512).unwrap();
        let (report, sigma) = duality::verify_idempotents(&g, &gc, &e);
        assert_eq!(constancy, report.bose_mesner_membership, "{} / {}", g.label(), gc.label());
        assert_eq!(constancy, sigma.sigma.is_some() && report.eigenvector_relation, "{} / {}", g.label(), gc.label());
    }
}

#[test]
fn cyclotomic_schemes_are_self_dual() {
    for (p, e, d) in [(13u32, 1u32, 2u32), (13, 1, 3), (3, 2, 2), (5, 2, 3), (7, 1, 3)] {
        let config = scheme_forge::config::RunConfig::new(vector(1, p, e), ActionSpec::Cyclotomic { d });
        let cert = pipeline::dual(&config, None, Default::default()).unwrap();
        assert!(cert.pass && cert.self_dual, "F_{}^{} d = {d}", p, e);
    }
}
