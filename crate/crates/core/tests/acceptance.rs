//! Acceptance criteria. One PASS/FAIL line per criterion, with the pinned
//! tolerance and runtime bound; sub-checks are listed below each line.
//!
//! Exits non-zero when a criterion fails that is not in `KNOWN_FAILURES`.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cubelab::algebra::{
    check_axioms, fibers, interchange_law_holds, quotient_structure, recover_abelian, recover_group, sim_relation,
    structure_tower, transposition_witness, verify_fiber_action, StepVerdict,
};
use cubelab::budget::DEFAULT_BUDGET;
use cubelab::cubes::{Category, VertexMap};
use cubelab::gowers::{
    cube_distribution, cubic_product, gowers_norm, gowers_norm_mc, l2_norm, star, FunctionSystem, GroupFunction,
    Variant,
};
use cubelab::groups::{g_morphism_free_test, z_morphism_test, GroupTable};
use cubelab::structures::CubeStructure;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot pass as stated, with the reason printed in the
/// report. They still run in full.
const KNOWN_FAILURES: &[(&str, &str)] = &[(
    "AC-8",
    "no transposition counterexample exists in H_Z,2(Q8): every commutator of Q8 lies in Z, so the defect of a \
     transposed cube is a degree-2 function into Z and is absorbed by D2(Z)",
)];

struct Outcome {
    checks: Vec<(bool, String)>,
}

impl Outcome {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.checks.push((ok, what.into()));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(ok, _)| *ok)
    }
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    tolerance: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn z(n: usize) -> GroupTable {
    GroupTable::cyclic(n).unwrap()
}

fn hzk_q8() -> CubeStructure {
    let q8 = GroupTable::quaternion8();
    let center = q8.center();
    CubeStructure::hzk(q8, &center, 2).unwrap()
}

fn ac1_distribution_identity() -> Outcome {
    let mut out = Outcome::new();
    let cases = [("Z2", z(2), 3), ("Z3", z(3), 2), ("S3", GroupTable::symmetric(3).unwrap(), 2)];
    for (name, g, kmax) in cases {
        for k in 1..=kmax {
            let s = cube_distribution(&g, k, Variant::Simple, DEFAULT_BUDGET).unwrap();
            let ge = cube_distribution(&g, k, Variant::General, DEFAULT_BUDGET).unwrap();
            let one = num_rational::Ratio::from_integer(1);
            let tv = s.total_variation(&ge);
            out.check(
                s.same_law(&ge) && tv == num_rational::Ratio::from_integer(0) && s.total() == one && ge.total() == one,
                format!(
                    "{name} k={k}: {} cubes, {} vs {} tuples, TV = {tv}",
                    s.probabilities().len(),
                    s.tuples,
                    ge.tuples
                ),
            );
        }
    }
    out
}

fn ac2_simple_equals_general() -> Outcome {
    let mut out = Outcome::new();
    let groups = [
        ("S3", GroupTable::symmetric(3).unwrap()),
        ("D4", GroupTable::dihedral(4).unwrap()),
        ("Q8", GroupTable::quaternion8()),
    ];
    for (name, g) in groups {
        for n in 0..=3 {
            let simple = common::simple_cube_set(&g, n);
            let general = if n == 0 {
                // no parameters: the general form degenerates to the identity
                simple.clone()
            } else {
                common::general_cube_set(&g, n)
            };
            let library: BTreeSet<Vec<usize>> =
                CubeStructure::d1(g.clone()).enumerate_values(n, DEFAULT_BUDGET).unwrap().into_iter().collect();
            out.check(
                simple == general && simple == library,
                format!(
                    "{name} n={n}: {} simple, {} general, {} enumerated",
                    simple.len(),
                    general.len(),
                    library.len()
                ),
            );
        }
    }
    out
}

const TOL: f64 = 1e-9;

fn ac3_norm_properties() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in [("Z5", z(5)), ("S3", GroupTable::symmetric(3).unwrap())] {
        let g = Arc::new(g);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut worst = [0.0f64; 5];
        let mut fails = [0usize; 5];
        for _ in 0..100 {
            let f = GroupFunction::random(g.clone(), &mut rng);
            let h = GroupFunction::random(g.clone(), &mut rng);
            let c = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let norm = |f: &GroupFunction, n| gowers_norm(f, n, DEFAULT_BUDGET).unwrap().norm;
            for n in 2..=3 {
                let nf = norm(&f, n);
                // excess > 0 means a violation
                let tri = norm(&f.add(&h).unwrap(), n) - nf - norm(&h, n);
                let hom = (norm(&f.scale(c), n) - c.norm() * nf).abs();
                let mono = norm(&f, n - 1) - nf;
                let system =
                    FunctionSystem::new(n, (0..1 << n).map(|_| GroupFunction::random(g.clone(), &mut rng)).collect())
                        .unwrap();
                let bound: f64 = system.functions().iter().map(|fv| norm(fv, n)).product();
                let cs = cubic_product(&system, DEFAULT_BUDGET).unwrap().norm() - bound;
                for (i, e) in [tri, hom, mono, cs].into_iter().enumerate() {
                    worst[i] = worst[i].max(e);
                    fails[i] += usize::from(e > TOL);
                }
            }
            let star_gap = (norm(&f, 2) - l2_norm(&star(&f, &f).unwrap()).sqrt()).abs();
            worst[4] = worst[4].max(star_gap);
            fails[4] += usize::from(star_gap > TOL);
        }
        let labels = [
            "triangle inequality",
            "|c|-homogeneity",
            "monotonicity U_(n-1) <= U_n",
            "|(F)| <= prod ||f_v||",
            "U2 = ||f*f||_2^(1/2)",
        ];
        for i in 0..5 {
            out.check(
                fails[i] == 0,
                format!("{name} {}: {} violations, worst excess {:.2e}", labels[i], fails[i], worst[i]),
            );
        }
    }
    out
}

fn ac4_mc_calibration() -> Outcome {
    let mut out = Outcome::new();
    let g = Arc::new(z(5));
    let mut covered = 0;
    for trial in 0..100u64 {
        let f = GroupFunction::random(g.clone(), &mut ChaCha8Rng::seed_from_u64(10_000 + trial));
        let exact = gowers_norm(&f, 2, DEFAULT_BUDGET).unwrap().inner_re;
        let mc = gowers_norm_mc(&f, 2, 10_000, trial).unwrap();
        covered += usize::from((mc.mean - exact).abs() <= 3.0 * mc.stderr);
    }
    out.check(covered >= 95, format!("{covered}/100 trials within 3 stderr (need >= 95)"));
    let f = GroupFunction::random(g, &mut ChaCha8Rng::seed_from_u64(1));
    let (a, b) = (gowers_norm_mc(&f, 2, 10_000, 7).unwrap(), gowers_norm_mc(&f, 2, 10_000, 7).unwrap());
    out.check(a.mean.to_bits() == b.mean.to_bits() && a.stderr.to_bits() == b.stderr.to_bits(), "same seed, same bits");
    out
}

fn ac5_d1_axioms() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in GroupTable::small_groups() {
        let m = g.order();
        let r = check_axioms(&CubeStructure::d1(g), 3, DEFAULT_BUDGET).unwrap();
        // The trivial group is already 0-step.
        let step = StepVerdict::Exactly(usize::from(m > 1));
        let ok = r.is_groupspace()
            && !r.has_skips()
            && r.completion.iter().all(|c| c.min_completions >= 1)
            && r.step == step;
        out.check(ok, format!("D1({name}): counts {:?}, step {:?}", r.cube_counts, r.step));
    }
    out
}

fn ac6_higher_degree() -> Outcome {
    let mut out = Outcome::new();
    for (m, nmax) in [(2usize, 4usize), (3, 3)] {
        let x = CubeStructure::dk(z(m), 2).unwrap();
        for n in 0..=nmax {
            let v = common::v_span(m, n, 2);
            let vp = common::v_prime(m, n, 2);
            let cubes: BTreeSet<Vec<usize>> = x.enumerate_values(n, DEFAULT_BUDGET).unwrap().into_iter().collect();
            out.check(
                v == vp && vp == cubes,
                format!("Z{m} n={n}: |V| = {}, |V'| = {}, |C^n| = {}", v.len(), vp.len(), cubes.len()),
            );
        }
        let r = check_axioms(&x, 3, DEFAULT_BUDGET).unwrap();
        out.check(
            r.is_groupspace() && r.step == StepVerdict::Exactly(2) && r.k_ergodic == Some(2),
            format!(
                "D2(Z{m}) axioms: groupspace {}, step {:?}, k-ergodic {:?}",
                r.is_groupspace(),
                r.step,
                r.k_ergodic
            ),
        );
    }
    out
}

fn ac7_group_recovery() -> Outcome {
    let mut out = Outcome::new();
    let mut groups = GroupTable::small_groups();
    groups.extend([
        ("Z9", z(9)),
        ("Z3xZ3", GroupTable::direct_product(&z(3), &z(3))),
        ("Z10", z(10)),
        ("D5", GroupTable::dihedral(5).unwrap()),
        ("Z11", z(11)),
        ("Z12", z(12)),
        ("Z2xZ6", GroupTable::direct_product(&z(2), &z(6))),
        ("D6", GroupTable::dihedral(6).unwrap()),
        ("A4", GroupTable::alternating(4).unwrap()),
    ]);
    for (name, g) in groups {
        let rec = recover_group(&CubeStructure::d1(g.clone()), DEFAULT_BUDGET).unwrap();
        let ok = rec.is_isomorphic(&g) && (g.order() > 8 || common::isomorphic_by_search(&rec, &g));
        out.check(ok, format!("recover_group(D1({name})) of order {}", rec.order()));
    }
    for (name, a) in [("Z2", z(2)), ("Z3", z(3)), ("Z4", z(4)), ("Z2xZ2", GroupTable::direct_product(&z(2), &z(2)))] {
        let rec = recover_abelian(&CubeStructure::dk(a.clone(), 2).unwrap(), 2, 0, DEFAULT_BUDGET).unwrap();
        let ok =
            rec.group.is_isomorphic(&a) && common::isomorphic_by_search(&rec.group, &a) && rec.classification_checked;
        out.check(ok, format!("recover_abelian(D2({name})) of order {}", rec.group.order()));
    }
    out
}

fn ac8_hzk_q8() -> Outcome {
    let mut out = Outcome::new();
    let h = hzk_q8();
    let q8 = GroupTable::quaternion8();
    let center = q8.center();
    let r = check_axioms(&h, 3, DEFAULT_BUDGET).unwrap();
    out.check(
        r.is_groupspace() && r.step == StepVerdict::Exactly(2),
        format!("axioms up to n=3: groupspace {}, step {:?}, counts {:?}", r.is_groupspace(), r.step, r.cube_counts),
    );
    let w = transposition_witness(&h, 3, DEFAULT_BUDGET).unwrap();
    out.check(w.is_some(), format!("transposition counterexample up to n=3: {w:?}"));

    let sim = sim_relation(&h, 1, DEFAULT_BUDGET).unwrap();
    let quotient = q8.quotient(&center).unwrap();
    out.check(sim.classes() == quotient.classes.as_slice(), format!("~1 classes {:?}", sim.classes()));

    let q = quotient_structure(&h, 1, 3, DEFAULT_BUDGET).unwrap();
    let d1 = CubeStructure::d1(quotient.group.clone());
    let same = (0..=3).all(|n| {
        let a: BTreeSet<Vec<usize>> = q.structure.enumerate_values(n, DEFAULT_BUDGET).unwrap().into_iter().collect();
        let b: BTreeSet<Vec<usize>> = d1.enumerate_values(n, DEFAULT_BUDGET).unwrap().into_iter().collect();
        a == b
    });
    out.check(same, "X/~1 cubes equal D1(Q8/Z) cubes for n <= 3 (cosets numbered by least member)");

    let fibs = fibers(&h, 2, 3, DEFAULT_BUDGET).unwrap();
    let mut groups = Vec::new();
    for f in &fibs {
        let r = check_axioms(&f.structure, 3, DEFAULT_BUDGET).unwrap();
        out.check(
            r.is_groupspace() && r.step == StepVerdict::Exactly(2) && r.k_ergodic == Some(2),
            format!("fiber {:?}: step {:?}, k-ergodic {:?}", f.points, r.step, r.k_ergodic),
        );
        groups.push(recover_abelian(&f.structure, 2, 0, DEFAULT_BUDGET).unwrap().group);
    }
    out.check(
        groups.iter().all(|g| g.is_isomorphic(&groups[0])),
        format!("{} fiber groups pairwise isomorphic", groups.len()),
    );

    let t = structure_tower(&h, 2, 3, DEFAULT_BUDGET).unwrap();
    let (l1, l2) = (&t.levels[0], &t.levels[1]);
    out.check(
        l1.group.is_isomorphic(&quotient.group) && l2.abelian && l2.fibers_isomorphic && t.projections_compatible,
        format!(
            "tower: |G1| = {}, G2 of order {} abelian {}, fibers isomorphic {}",
            l1.group.order(),
            l2.group.order(),
            l2.abelian,
            l2.fibers_isomorphic
        ),
    );
    out
}

fn ac9_eckmann_hilton() -> Outcome {
    let mut out = Outcome::new();
    let mut instances = vec![("D2(Z4)".to_string(), CubeStructure::dk(z(4), 2).unwrap())];
    for f in fibers(&hzk_q8(), 2, 3, DEFAULT_BUDGET).unwrap() {
        instances.push((format!("H_Z,2(Q8) fiber {:?}", f.points), f.structure));
    }
    for (name, x) in instances {
        let rec = recover_abelian(&x, 2, 0, DEFAULT_BUDGET).unwrap();
        let op = &rec.ops[0];
        let m = op.len();
        let commutative = (0..m).all(|a| (0..m).all(|b| op[a][b] == op[b][a]));
        out.check(rec.ops[1] == rec.ops[0] && commutative, format!("{name}: box_1 = box_2, commutative {commutative}"));
    }
    let rec = recover_abelian(&CubeStructure::dk(z(2), 2).unwrap(), 2, 0, DEFAULT_BUDGET).unwrap();
    for j in 1..=2 {
        for l in 1..=2 {
            out.check(interchange_law_holds(&rec, j, l), format!("D2(Z2) interchange law j={j} l={l}"));
        }
    }
    out
}

fn ac10_morphism_tests() -> Outcome {
    let mut out = Outcome::new();
    for m in [2, 3] {
        let (mut total, mut g_count, mut n_count, mut bad) = (0, 0, 0, 0);
        for phi in VertexMap::all(2, m) {
            let in_g = phi.in_category(Category::G);
            let in_n = phi.in_category(Category::N);
            bad += usize::from(g_morphism_free_test(&phi) != in_g) + usize::from(z_morphism_test(&phi) != in_n);
            total += 1;
            g_count += usize::from(in_g);
            n_count += usize::from(in_n);
        }
        out.check(
            bad == 0,
            format!("{total} maps {{0,1}}^2 -> {{0,1}}^{m}: {g_count} in G, {n_count} in N, {bad} disagreements"),
        );
    }
    out
}

fn ac11_fiber_action() -> Outcome {
    let mut out = Outcome::new();
    for (name, x) in [("D2(Z4)", CubeStructure::dk(z(4), 2).unwrap()), ("H_Z,2(Q8)", hzk_q8())] {
        let r = verify_fiber_action(&x, 2, 3, DEFAULT_BUDGET).unwrap();
        let abelian = fibers(&x, 2, 3, DEFAULT_BUDGET)
            .unwrap()
            .iter()
            .all(|f| recover_abelian(&f.structure, 2, 0, DEFAULT_BUDGET).unwrap().group.is_abelian());
        out.check(
            r.all_hold() && abelian,
            format!(
                "{name}: fibers {:?}, identity {}, law {}, free {}, transitive {}, base-point independent {} ({} base points), abelian {abelian}",
                r.fiber_sizes, r.identity_acts_trivially, r.action_law, r.free, r.transitive, r.base_point_independent, r.base_points_checked
            ),
        );
    }
    out
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: "AC-1",
            title: "simple and general cube laws agree",
            tolerance: "exact",
            limit: secs(30),
            run: ac1_distribution_identity,
        },
        Criterion {
            id: "AC-2",
            title: "simple and general cube sets agree",
            tolerance: "exact",
            limit: secs(60),
            run: ac2_simple_equals_general,
        },
        Criterion {
            id: "AC-3",
            title: "uniformity norm properties",
            tolerance: "1e-9",
            limit: secs(120),
            run: ac3_norm_properties,
        },
        Criterion {
            id: "AC-4",
            title: "Monte-Carlo calibration",
            tolerance: "3 stderr, >= 95/100",
            limit: secs(60),
            run: ac4_mc_calibration,
        },
        Criterion {
            id: "AC-5",
            title: "D1(G) axioms, |G| <= 8",
            tolerance: "exact",
            limit: secs(120),
            run: ac5_d1_axioms,
        },
        Criterion {
            id: "AC-6",
            title: "D2(A): V = V' and axioms",
            tolerance: "exact",
            limit: secs(120),
            run: ac6_higher_degree,
        },
        Criterion {
            id: "AC-7",
            title: "group recovery roundtrips",
            tolerance: "exact",
            limit: secs(120),
            run: ac7_group_recovery,
        },
        Criterion { id: "AC-8", title: "H_Z,2(Q8) suite", tolerance: "exact", limit: secs(300), run: ac8_hzk_q8 },
        Criterion { id: "AC-9", title: "Eckmann-Hilton", tolerance: "exact", limit: secs(60), run: ac9_eckmann_hilton },
        Criterion {
            id: "AC-10",
            title: "morphism cross-validation",
            tolerance: "exact",
            limit: secs(30),
            run: ac10_morphism_tests,
        },
        Criterion { id: "AC-11", title: "fiber action", tolerance: "exact", limit: secs(60), run: ac11_fiber_action },
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let ok = outcome.passed() && in_time;
        println!(
            "{} {} {} [tol {}] [{:.2}s / {}s]",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            c.tolerance,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        for (sub_ok, what) in &outcome.checks {
            println!("    {} {what}", if *sub_ok { "ok  " } else { "FAIL" });
        }
        if !in_time {
            println!("    FAIL runtime bound exceeded");
        }
        if ok {
            passed += 1;
        } else if let Some((_, why)) = KNOWN_FAILURES.iter().find(|(id, _)| *id == c.id) {
            println!("    known failure: {why}");
        } else {
            unexpected.push(c.id);
        }
    }
    println!("{passed}/{} criteria passed", criteria.len());
    if !unexpected.is_empty() {
        println!("unexpected failures: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
