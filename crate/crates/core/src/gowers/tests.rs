use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::{Complex, Complex64};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::budget::DEFAULT_BUDGET;
use crate::groups::GroupTable;
use crate::structures::CubeStructure;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn arc(g: GroupTable) -> Arc<GroupTable> {
    Arc::new(g)
}

/// Straight from the definition: every `(a_0..a_n)`, vertex by vertex.
fn brute_cubic_product(system: &FunctionSystem) -> Complex64 {
    let g = system.group();
    let n = system.n();
    let m = g.order();
    let total = m.pow(n as u32 + 1);
    let mut sum = c(0.0, 0.0);
    for t in 0..total {
        let a: Vec<usize> = (0..=n).map(|i| t / m.pow(i as u32) % m).collect();
        let mut prod = c(1.0, 0.0);
        for v in 0..1usize << n {
            let x = g.product(std::iter::once(a[0]).chain((1..=n).filter(|i| v >> (i - 1) & 1 == 1).map(|i| a[i])));
            let val = system.at(v).value(x);
            prod *= if v.count_ones() % 2 == 1 { val.conj() } else { val };
        }
        sum += prod;
    }
    sum / total as f64
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

#[test]
fn ones_give_one() {
    for g in [GroupTable::cyclic(5).unwrap(), GroupTable::symmetric(3).unwrap()] {
        let f = GroupFunction::constant(arc(g), c(1.0, 0.0)).unwrap();
        for n in 0..=3 {
            let s = FunctionSystem::uniform(&f, n).unwrap();
            assert_eq!(cubic_product(&s, DEFAULT_BUDGET).unwrap(), c(1.0, 0.0));
        }
    }
}

#[test]
fn identity_indicator_on_z2() {
    let f = GroupFunction::indicator(arc(GroupTable::cyclic(2).unwrap()), 0).unwrap();
    let s = FunctionSystem::uniform(&f, 1).unwrap();
    let p = cubic_product(&s, DEFAULT_BUDGET).unwrap();
    assert!(close(p, c(0.25, 0.0), 1e-15));
    assert!(close(p, brute_cubic_product(&s), 1e-15));
}

#[test]
fn character_of_z3() {
    let g = arc(GroupTable::cyclic(3).unwrap());
    let w = 2.0 * std::f64::consts::PI / 3.0;
    let chi = GroupFunction::from_fn(g, |x| Complex64::from_polar(1.0, w * x as f64)).unwrap();
    let s = FunctionSystem::uniform(&chi, 2).unwrap();
    assert!(close(cubic_product(&s, DEFAULT_BUDGET).unwrap(), c(1.0, 0.0), 1e-12));
    assert!(close(brute_cubic_product(&s), c(1.0, 0.0), 1e-12));
}

#[test]
fn matches_brute_force_on_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in [GroupTable::cyclic(4).unwrap(), GroupTable::symmetric(3).unwrap(), GroupTable::quaternion8()] {
        let g = arc(g);
        for n in 1..=3 {
            let fs = (0..1 << n).map(|_| GroupFunction::random(g.clone(), &mut rng)).collect();
            let s = FunctionSystem::new(n, fs).unwrap();
            assert!(close(cubic_product(&s, DEFAULT_BUDGET).unwrap(), brute_cubic_product(&s), 1e-12));
        }
    }
}

#[test]
fn constant_function_norm_is_modulus() {
    let g = arc(GroupTable::symmetric(3).unwrap());
    let z = c(0.6, -0.8) * 1.5;
    let f = GroupFunction::constant(g, z).unwrap();
    for n in 1..=3 {
        let norm = gowers_norm(&f, n, DEFAULT_BUDGET).unwrap();
        assert!((norm.norm - 1.5).abs() < 1e-12);
    }
}

#[test]
fn u2_matches_additive_formula_on_cyclic_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in [2usize, 5, 7] {
        let f = GroupFunction::random(arc(GroupTable::cyclic(m).unwrap()), &mut rng);
        // E_{x,h1,h2} f(x) conj f(x+h1) conj f(x+h2) f(x+h1+h2)
        let mut sum = c(0.0, 0.0);
        for x in 0..m {
            for h1 in 0..m {
                for h2 in 0..m {
                    sum += f.value(x)
                        * f.value((x + h1) % m).conj()
                        * f.value((x + h2) % m).conj()
                        * f.value((x + h1 + h2) % m);
                }
            }
        }
        let classical = (sum.re / (m * m * m) as f64).powf(0.25);
        assert!((gowers_norm(&f, 2, DEFAULT_BUDGET).unwrap().norm - classical).abs() < 1e-12);
    }
}

#[test]
fn u2_is_root_of_star_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in [GroupTable::cyclic(5).unwrap(), GroupTable::symmetric(3).unwrap()] {
        let g = arc(g);
        for _ in 0..20 {
            let f = GroupFunction::random(g.clone(), &mut rng);
            let u2 = gowers_norm(&f, 2, DEFAULT_BUDGET).unwrap().norm;
            let ff = star(&f, &f).unwrap();
            assert!((u2 - l2_norm(&ff).sqrt()).abs() < 1e-9);
        }
    }
}

#[test]
fn star_examples() {
    let g = arc(GroupTable::cyclic(2).unwrap());
    let one = GroupFunction::constant(g.clone(), c(1.0, 0.0)).unwrap();
    assert!(star(&one, &one).unwrap().values().iter().all(|&z| close(z, c(1.0, 0.0), 1e-15)));
    let delta = GroupFunction::indicator(g, 0).unwrap();
    let s = star(&delta, &delta).unwrap();
    assert_eq!(s.values(), &[c(0.5, 0.0), c(0.0, 0.0)]);
}

#[test]
fn star_uses_right_translation() {
    // On S3 the product order matters: (f ⋆ g)(x) averages f(xy) conj g(y).
    let g = arc(GroupTable::symmetric(3).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = GroupFunction::random(g.clone(), &mut rng);
    let h = GroupFunction::random(g.clone(), &mut rng);
    let s = star(&f, &h).unwrap();
    for x in 0..6 {
        let expected: Complex64 = (0..6).map(|y| f.value(g.mul(x, y)) * h.value(y).conj()).sum::<Complex64>() / 6.0;
        assert!(close(s.value(x), expected, 1e-15));
    }
}

#[test]
fn face_operator_fixes_uniform_systems() {
    let g = arc(GroupTable::symmetric(3).unwrap());
    let f = GroupFunction::random(g, &mut ChaCha8Rng::seed_from_u64(1));
    let s = FunctionSystem::uniform(&f, 3).unwrap();
    for d in 1..=3 {
        for r in 0..=1 {
            let q = s.face_operator(d, r).unwrap();
            assert!(q.functions().iter().all(|h| h.values() == f.values()));
        }
    }
    assert!(matches!(s.face_operator(0, 0), Err(GowersError::IndexOutOfRange { .. })));
    assert!(matches!(s.face_operator(4, 0), Err(GowersError::IndexOutOfRange { .. })));
    assert!(s.face_operator(1, 2).is_err());
}

#[test]
fn face_operator_copies_the_chosen_face() {
    let g = arc(GroupTable::cyclic(3).unwrap());
    let fs: Vec<GroupFunction> =
        (0..4).map(|v| GroupFunction::constant(g.clone(), c(v as f64, 0.0)).unwrap()).collect();
    let s = FunctionSystem::new(2, fs).unwrap();
    let label = |q: &FunctionSystem| -> Vec<f64> { q.functions().iter().map(|h| h.value(0).re).collect() };
    assert_eq!(label(&s.face_operator(1, 0).unwrap()), vec![0.0, 0.0, 2.0, 2.0]);
    assert_eq!(label(&s.face_operator(1, 1).unwrap()), vec![1.0, 1.0, 3.0, 3.0]);
    assert_eq!(label(&s.face_operator(2, 0).unwrap()), vec![0.0, 1.0, 0.0, 1.0]);
    assert_eq!(label(&s.face_operator(2, 1).unwrap()), vec![2.0, 3.0, 2.0, 3.0]);
}

#[test]
fn face_products_are_nonnegative_and_bound_the_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let g = arc(GroupTable::cyclic(3).unwrap());
    for _ in 0..50 {
        let fs = (0..4).map(|_| GroupFunction::random(g.clone(), &mut rng)).collect();
        let s = FunctionSystem::new(2, fs).unwrap();
        let p = cubic_product(&s, DEFAULT_BUDGET).unwrap();
        for d in 1..=2 {
            let q: Vec<Complex64> =
                (0..=1).map(|r| cubic_product(&s.face_operator(d, r).unwrap(), DEFAULT_BUDGET).unwrap()).collect();
            for z in &q {
                assert!(z.re >= -1e-12 && z.im.abs() <= 1e-12, "{z}");
            }
            assert!(p.norm() <= (q[0].re * q[1].re).sqrt() + 1e-12);
        }
    }
}

#[test]
fn mismatched_groups_are_rejected() {
    let a = GroupFunction::constant(arc(GroupTable::cyclic(6).unwrap()), c(1.0, 0.0)).unwrap();
    let b = GroupFunction::constant(arc(GroupTable::symmetric(3).unwrap()), c(1.0, 0.0)).unwrap();
    assert!(matches!(FunctionSystem::new(1, vec![a.clone(), b.clone()]), Err(GowersError::MismatchedGroups)));
    assert!(matches!(star(&a, &b), Err(GowersError::MismatchedGroups)));
    assert!(matches!(a.add(&b), Err(GowersError::MismatchedGroups)));
    // Equal tables in separate allocations count as the same group.
    let a2 = GroupFunction::constant(arc(GroupTable::cyclic(6).unwrap()), c(2.0, 0.0)).unwrap();
    assert!(a.add(&a2).is_ok());
}

#[test]
fn bad_values_are_rejected() {
    let g = arc(GroupTable::cyclic(3).unwrap());
    assert!(matches!(GroupFunction::new(g.clone(), vec![c(1.0, 0.0); 2]), Err(GowersError::LengthMismatch { .. })));
    let err = GroupFunction::new(g.clone(), vec![c(1.0, 0.0), c(f64::NAN, 0.0), c(0.0, 0.0)]).unwrap_err();
    assert!(matches!(err, GowersError::NonFinite { index: 1 }));
    assert!(GroupFunction::indicator(g, 3).is_err());
}

#[test]
fn budget_is_enforced() {
    let f = GroupFunction::constant(arc(GroupTable::cyclic(5).unwrap()), c(1.0, 0.0)).unwrap();
    let s = FunctionSystem::uniform(&f, 2).unwrap();
    // 5^3 tuples times 4 vertices
    assert_eq!(product_cost(5, 2), 500);
    assert!(cubic_product(&s, 500).is_ok());
    assert!(matches!(cubic_product(&s, 499), Err(GowersError::Budget(_))));
    assert!(matches!(gowers_norm(&f, 2, 499), Err(GowersError::Budget(_))));
}

#[test]
fn result_does_not_depend_on_thread_count() {
    let g = arc(GroupTable::symmetric(3).unwrap());
    let f = GroupFunction::random(g, &mut ChaCha8Rng::seed_from_u64(2));
    let s = FunctionSystem::uniform(&f, 3).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| (cubic_product(&s, DEFAULT_BUDGET).unwrap(), gowers_norm_mc(&f, 3, 10_000, 4).unwrap()))
    };
    let (p1, m1) = run(1);
    let (p4, m4) = run(4);
    assert!(close(p1, p4, 1e-12));
    assert_eq!(m1, m4);
}

#[test]
fn monte_carlo_basics() {
    let g = arc(GroupTable::cyclic(5).unwrap());
    let one = GroupFunction::constant(g.clone(), c(1.0, 0.0)).unwrap();
    let e = gowers_norm_mc(&one, 2, 1000, 0).unwrap();
    assert_eq!((e.mean, e.stderr, e.estimate), (1.0, 0.0, 1.0));
    let f = GroupFunction::random(g, &mut ChaCha8Rng::seed_from_u64(8));
    let a = gowers_norm_mc(&f, 2, 10_000, 7).unwrap();
    let b = gowers_norm_mc(&f, 2, 10_000, 7).unwrap();
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    assert_ne!(a.mean, gowers_norm_mc(&f, 2, 10_000, 8).unwrap().mean);
    let exact = gowers_norm(&f, 2, DEFAULT_BUDGET).unwrap().inner_re;
    assert!((a.mean - exact).abs() <= 5.0 * a.stderr);
    assert!(gowers_norm_mc(&f, 2, 1, 7).is_err());
}

#[test]
fn mc_index_draw_is_uniform_enough() {
    // Every element of Z5 turns up at close to rate 1/5 through the sampler:
    // an indicator at n = 1 has mean |E f|^2 = 1/25 on average.
    let f = GroupFunction::indicator(arc(GroupTable::cyclic(5).unwrap()), 2).unwrap();
    let e = gowers_norm_mc(&f, 1, 200_000, 1).unwrap();
    assert!((e.mean - 0.04).abs() <= 5.0 * e.stderr);
}

fn gauss(re: i128, im: i128) -> GaussianRational {
    Complex::new(Ratio::from_integer(re), Ratio::from_integer(im))
}

fn random_exact_system(g: &GroupTable, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<GaussianRational>> {
    (0..1 << n).map(|_| (0..g.order()).map(|_| gauss(rng.gen_range(-2..=2), rng.gen_range(-2..=2))).collect()).collect()
}

#[test]
fn exact_forms_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for g in [GroupTable::cyclic(2).unwrap(), GroupTable::cyclic(3).unwrap(), GroupTable::symmetric(3).unwrap()] {
        for n in 1..=2 {
            for _ in 0..3 {
                let values = random_exact_system(&g, n, &mut rng);
                let tuple = cubic_product_exact(&g, n, &values, DEFAULT_BUDGET).unwrap();
                let general = cubic_product_general_exact(&g, n, &values, DEFAULT_BUDGET).unwrap();
                assert_eq!(tuple, general);
            }
        }
    }
}

#[test]
fn exact_matches_floating_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let g = GroupTable::symmetric(3).unwrap();
    let values = random_exact_system(&g, 2, &mut rng);
    let exact = cubic_product_exact(&g, 2, &values, DEFAULT_BUDGET).unwrap();
    let to_f = |r: &Ratio<i128>| *r.numer() as f64 / *r.denom() as f64;
    let g = arc(g);
    let fs = values
        .iter()
        .map(|f| GroupFunction::new(g.clone(), f.iter().map(|z| c(to_f(&z.re), to_f(&z.im))).collect()).unwrap())
        .collect();
    let float = cubic_product(&FunctionSystem::new(2, fs).unwrap(), DEFAULT_BUDGET).unwrap();
    assert!(close(float, c(to_f(&exact.re), to_f(&exact.im)), 1e-12));
}

#[test]
fn exact_indicator_on_z2() {
    let g = GroupTable::cyclic(2).unwrap();
    let f = vec![gauss(1, 0), gauss(0, 0)];
    let p = cubic_product_exact(&g, 1, &[f.clone(), f], DEFAULT_BUDGET).unwrap();
    assert_eq!(p, Complex::new(Ratio::new(1, 4), Ratio::from_integer(0)));
}

#[test]
fn simple_distribution_on_z2() {
    let g = GroupTable::cyclic(2).unwrap();
    let d = cube_distribution(&g, 1, Variant::Simple, DEFAULT_BUDGET).unwrap();
    assert_eq!(d.probabilities().len(), 4);
    assert!(d.probabilities().values().all(|p| *p == Ratio::new(1, 4)));
    assert_eq!(d.total(), Ratio::from_integer(1));
}

#[test]
fn simple_support_is_the_cube_set() {
    for g in [GroupTable::symmetric(3).unwrap(), GroupTable::quaternion8()] {
        for k in 1..=2 {
            let d = cube_distribution(&g, k, Variant::Simple, DEFAULT_BUDGET).unwrap();
            let cubes: BTreeSet<Vec<usize>> =
                CubeStructure::d1(g.clone()).enumerate_values(k, DEFAULT_BUDGET).unwrap().into_iter().collect();
            assert_eq!(d.support(), cubes);
        }
    }
}

#[test]
fn simple_and_general_laws_agree_on_s3() {
    let g = GroupTable::symmetric(3).unwrap();
    let s = cube_distribution(&g, 2, Variant::Simple, DEFAULT_BUDGET).unwrap();
    let ge = cube_distribution(&g, 2, Variant::General, DEFAULT_BUDGET).unwrap();
    assert_eq!(s.tuples, 216);
    assert_eq!(ge.tuples, 1296);
    assert!(s.same_law(&ge));
    assert_eq!(s.total_variation(&ge), Ratio::from_integer(0));
}

#[test]
fn total_variation_of_different_laws() {
    let g = GroupTable::cyclic(2).unwrap();
    let a = cube_distribution(&g, 1, Variant::Simple, DEFAULT_BUDGET).unwrap();
    let b = cube_distribution(&g, 2, Variant::Simple, DEFAULT_BUDGET).unwrap();
    // disjoint supports (different lengths)
    assert_eq!(a.total_variation(&b), Ratio::from_integer(1));
    assert!(cube_distribution(&g, 0, Variant::General, DEFAULT_BUDGET).is_err());
}

#[test]
fn function_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let g = GroupTable::symmetric(3).unwrap();
    std::fs::write(dir.path().join("s3.json"), g.to_json()).unwrap();
    let f = GroupFunction::random(arc(g), &mut ChaCha8Rng::seed_from_u64(4));
    let file = f.to_file(crate::structures::GroupRef::Path("s3.json".into()));
    let path = dir.path().join("f.json");
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let (back, inputs) = GroupFunction::load(&path).unwrap();
    assert_eq!(back.values(), f.values());
    assert_eq!(inputs.len(), 2);
    std::fs::write(&path, r#"{"group":"s3.json","values":[[1,0]]}"#).unwrap();
    assert!(matches!(GroupFunction::load(&path), Err(GowersError::LengthMismatch { .. })));
}
