mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use scheme_forge::action::{self, ActionFamily, ActionSpec, GeneratorSet, OrbitPartition};
use scheme_forge::cyclo::CycloInt;
use scheme_forge::duality::{self, Constancy};
use scheme_forge::scheme::TranslationScheme;
use scheme_forge::space::{Point, SpaceSpec};

use common::{scheme_on, space, vector};

fn instances() -> &'static [TranslationScheme] {
    static CELL: OnceLock<Vec<TranslationScheme>> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = |p, e| scheme_forge::gf::FieldSpec { p, e, modulus: None };
        vec![
            scheme_on(&space(SpaceSpec::CyclicProduct { moduli: vec![8] }), ActionSpec::Central),
            scheme_on(&space(SpaceSpec::CyclicProduct { moduli: vec![3, 9] }), ActionSpec::Central),
            scheme_on(&space(vector(1, 5, 1)), ActionSpec::Cyclotomic { d: 2 }),
            scheme_on(&space(vector(1, 13, 1)), ActionSpec::Cyclotomic { d: 3 }),
            scheme_on(&space(vector(2, 3, 1)), ActionSpec::Hamming { n: None }),
            scheme_on(&space(vector(3, 2, 1)), ActionSpec::Hamming { n: None }),
            scheme_on(
                &space(SpaceSpec::MatrixFull { m: 2, n: 2, field: f(2, 1) }),
                ActionSpec::Bilinear { m: None, n: None },
            ),
            scheme_on(&space(vector(2, 2, 1)), ActionSpec::WeakHamming { levels: Some(vec![1, 1]) }),
            scheme_on(&space(vector(3, 2, 1)), ActionSpec::WeakHamming { levels: Some(vec![2, 1]) }),
            scheme_on(&space(vector(3, 2, 1)), ActionSpec::WeakHammingDual { levels: Some(vec![2, 1]) }),
            scheme_on(
                &space(SpaceSpec::MatrixSymmetric { m: 2, field: f(3, 1) }),
                ActionSpec::Symmetric { m: None },
            ),
        ]
    })
}

fn self_dual_instances() -> Vec<&'static TranslationScheme> {
    instances()
        .iter()
        .filter(|s| !s.label().starts_with("weak_hamming") && !s.label().starts_with("symmetric"))
        .collect()
}

fn pick(len: usize) -> impl Strategy<Value = usize> {
    0..len
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclo_ring_laws(
        order in prop::sample::select(vec![3u32, 4, 5, 8, 9, 12]),
        a in prop::collection::vec(-5i64..=5, 12),
        b in prop::collection::vec(-5i64..=5, 12),
        c in prop::collection::vec(-5i64..=5, 12),
    ) {
        let n = order as usize;
        let (a, b, c) = (
            CycloInt::from_coeffs(order, &a[..n]),
            CycloInt::from_coeffs(order, &b[..n]),
            CycloInt::from_coeffs(order, &c[..n]),
        );
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!(&a - &a, CycloInt::zero(order));
        prop_assert_eq!(a.scale(7).div_exact(7), Some(a.clone()));
    }

    #[test]
    fn roots_of_unity_multiply(order in 2u32..=24, j in -50i64..50, k in -50i64..50) {
        let lhs = &CycloInt::root_of_unity(order, j) * &CycloInt::root_of_unity(order, k);
        prop_assert_eq!(lhs, CycloInt::root_of_unity(order, j + k));
    }

    #[test]
    fn relations_are_translation_invariant(i in pick(11), x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let s = &instances()[i];
        let n = s.space().size() as u32;
        let (x, y, z) = (Point(x % n), Point(y % n), Point(z % n));
        let sp = s.space();
        prop_assert_eq!(s.relation(sp.add(x, z), sp.add(y, z)), s.relation(x, y));
        prop_assert_eq!(s.relation(x, x), 0);
    }

    #[test]
    fn intersection_tensor_identities(i in pick(11)) {
        let s = &instances()[i];
        let t = s.intersection_numbers(false).unwrap();
        let v = s.valencies();
        let n = v.len();
        let part = s.partition();
        let transpose = |j: usize| part.class_of(s.space().neg(part.representative(j)));
        for a in 0..n {
            for k in 0..n {
                prop_assert_eq!(t.get(0, a, k), u64::from(a == k));
                prop_assert_eq!((0..n).map(|b| t.get(a, b, k)).sum::<u64>(), v[a] as u64);
                for b in 0..n {
                    prop_assert_eq!(t.get(a, b, k), t.get(b, a, k));
                    prop_assert_eq!(v[k] as u64 * t.get(a, b, k), v[a] as u64 * t.get(k, transpose(b), a));
                }
            }
        }
    }

    #[test]
    fn orbits_ignore_generator_order(i in pick(11), perm in Just(()).prop_perturb(|_, mut rng| rng.next_u64())) {
        let s = &instances()[i];
        let family = family_of(s);
        let gens = action::generators(&family, s.space()).unwrap();
        let mut shuffled: Vec<_> = gens.generators().to_vec();
        let len = shuffled.len();
        let mut state = perm;
        for k in (1..len).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(k, (state >> 33) as usize % (k + 1));
        }
        let reordered = GeneratorSet::from_generators(shuffled);
        let a = action::orbits(&gens, s.space());
        let b = action::orbits(&reordered, s.space());
        prop_assert_eq!(&a, &b);
        prop_assert!(action::verify_invariance(&reordered, &a).is_ok());
    }

    #[test]
    fn self_dual_eigenmatrices(i in pick(7)) {
        let list = self_dual_instances();
        let s = list[i % list.len()];
        let q = duality::q_matrix(s, s).unwrap();
        let p = duality::p_matrix(s, s).unwrap();
        let pq = duality::mat_mul(&p, &q);
        let size = s.space().size() as i64;
        let order = s.space().character_order();
        for (r, row) in pq.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                let expected = CycloInt::from_int(order, if r == c { size } else { 0 });
                prop_assert_eq!(entry, &expected);
            }
        }
        let v = s.valencies();
        for (j, &vj) in v.iter().enumerate() {
            prop_assert_eq!(&q[0][j], &CycloInt::from_int(order, vj as i64));
            prop_assert_eq!(&q[j][0], &CycloInt::one(order));
        }
    }

    #[test]
    fn constancy_matches_membership_on_random_partitions(labels in prop::collection::vec(0usize..3, 8)) {
        let sp = space(vector(2, 3, 1));
        let mut classes: Vec<Vec<Point>> = vec![vec![Point(0)], vec![], vec![], vec![]];
        for (k, &l) in labels.iter().enumerate() {
            classes[l + 1].push(Point(k as u32 + 1));
        }
        classes.retain(|c| !c.is_empty());
        let partition = OrbitPartition::from_classes(9, classes).unwrap();
        let g = TranslationScheme::new(sp.clone(), partition, "random");
        let gc = TranslationScheme::new(sp, g.partition().clone(), "random");
        let hamming = scheme_on(g.space(), ActionSpec::Hamming { n: None });
        for (a, b) in [(&g, &gc), (&hamming, &gc), (&g, &hamming)] {
            let constancy = matches!(duality::constancy_test(a, b).unwrap(), Constancy::Pass(_));
            let e = duality::idempotents(b, 512).unwrap();
            let (report, sigma) = duality::verify_idempotents(a, b, &e);
            prop_assert_eq!(constancy, report.bose_mesner_membership);
            prop_assert_eq!(constancy, sigma.sigma.is_some());
        }
    }
}

fn family_of(s: &TranslationScheme) -> ActionFamily {
    let label = s.label();
    let spec = if label.starts_with("central") {
        ActionSpec::Central
    } else if label.starts_with("cyclotomic") {
        let d = s.d() as u32;
        ActionSpec::Cyclotomic { d }
    } else if label.starts_with("hamming") {
        ActionSpec::Hamming { n: None }
    } else if label.starts_with("bilinear") {
        ActionSpec::Bilinear { m: None, n: None }
    } else if label.starts_with("weak_hamming_dual") {
        ActionSpec::WeakHammingDual { levels: Some(vec![2, 1]) }
    } else if label.starts_with("weak_hamming(1,1)") {
        ActionSpec::WeakHamming { levels: Some(vec![1, 1]) }
    } else if label.starts_with("weak_hamming") {
        ActionSpec::WeakHamming { levels: Some(vec![2, 1]) }
    } else {
        ActionSpec::Symmetric { m: None }
    };
    ActionFamily::resolve(&spec, s.space()).unwrap()
}
