use std::collections::{BTreeSet, HashMap};

use cubelab::algebra::{
    approx_classes, approx_related, compose_cubes, fibers, interchange_law_holds, is_composable, recover_abelian,
    recover_abelian_on_axis, sim_relation, structure_tower,
};
use cubelab::budget::DEFAULT_BUDGET;
use cubelab::cubes::CubeMorphism;
use cubelab::groups::GroupTable;
use cubelab::structures::{CubeMap, CubeStructure};

fn z(n: usize) -> GroupTable {
    GroupTable::cyclic(n).unwrap()
}

fn hzk_q8() -> CubeStructure {
    let q8 = GroupTable::quaternion8();
    let center = q8.center();
    CubeStructure::hzk(q8, &center, 2).unwrap()
}

/// The class of a composition depends only on the classes of its parts.
fn composition_respects_classes(x: &CubeStructure, n: usize) {
    let cubes: Vec<CubeMap> =
        x.enumerate_values(n, DEFAULT_BUDGET).unwrap().into_iter().map(|c| CubeMap::new(n, c).unwrap()).collect();
    for i in 1..=n + 1 {
        let classes = approx_classes(x, n, i, DEFAULT_BUDGET).unwrap();
        let class = |c: &CubeMap| classes.class_of(c.values()).unwrap();
        for j in 1..=n {
            // class pair -> class of the composition
            let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
            for c1 in &cubes {
                for c2 in &cubes {
                    if !is_composable(c1, c2, j) {
                        continue;
                    }
                    let c3 = compose_cubes(x, c1, c2, j).unwrap();
                    let got = class(&c3);
                    let prev = *seen.entry((class(c1), class(c2))).or_insert(got);
                    assert_eq!(prev, got, "i={i} j={j}: {c1:?} {c2:?}");
                }
            }
        }
    }
}

#[test]
fn composition_is_well_defined_on_classes() {
    composition_respects_classes(&CubeStructure::dk(z(2), 2).unwrap(), 2);
    composition_respects_classes(&CubeStructure::d1(GroupTable::symmetric(3).unwrap()), 1);
    composition_respects_classes(&CubeStructure::d1(GroupTable::symmetric(3).unwrap()), 2);
}

#[test]
fn interchange_law_on_classes() {
    for m in [2, 3] {
        let rec = recover_abelian(&CubeStructure::dk(z(m), 2).unwrap(), 2, 0, DEFAULT_BUDGET).unwrap();
        for j in 1..=2 {
            for l in 1..=2 {
                assert!(interchange_law_holds(&rec, j, l), "Z{m} j={j} l={l}");
            }
        }
    }
}

/// A cube fixed by a reflection is equivalent to a constant cube.
#[test]
fn reflection_symmetric_cubes_are_trivial() {
    for m in [2, 3, 4] {
        let x = CubeStructure::dk(z(m), 2).unwrap();
        let cubes = x.enumerate_values(2, DEFAULT_BUDGET).unwrap();
        for i in 1..=3 {
            for j in 1..=2 {
                let r = CubeMorphism::reflection(2, j).unwrap().table();
                for c in &cubes {
                    let reflected: Vec<usize> = r.iter().map(|&b| c[b as usize]).collect();
                    if reflected != *c {
                        continue;
                    }
                    for x0 in 0..m {
                        assert!(approx_related(&x, c, &[x0; 4], i), "Z{m} i={i} j={j} {c:?} x0={x0}");
                    }
                }
            }
        }
    }
}

/// Moving every vertex of a square within its `~_1` class keeps it a cube.
#[test]
fn squares_survive_moves_within_classes() {
    let x = hzk_q8();
    let sim = sim_relation(&x, 1, DEFAULT_BUDGET).unwrap();
    let cubes = x.enumerate_values(2, DEFAULT_BUDGET).unwrap();
    for c in &cubes {
        let options: Vec<&[usize]> = c.iter().map(|&p| sim.class(sim.class_of(p))).collect();
        let mut idx = [0usize; 4];
        loop {
            let f: Vec<usize> = (0..4).map(|v| options[v][idx[v]]).collect();
            assert!(x.contains_values(2, &f), "{c:?} -> {f:?}");
            let mut v = 0;
            while v < 4 {
                idx[v] += 1;
                if idx[v] < options[v].len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
            if v == 4 {
                break;
            }
        }
    }
}

/// Cubes that agree modulo `~_1` on vertices of height at most 1 agree
/// modulo `~_1` everywhere.
#[test]
fn agreement_on_the_low_hull_propagates() {
    let x = hzk_q8();
    let sim = sim_relation(&x, 1, DEFAULT_BUDGET).unwrap();
    let low: Vec<usize> = (0..8).filter(|v: &usize| v.count_ones() <= 1).collect();
    let mut by_low: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for c in x.enumerate_values(3, DEFAULT_BUDGET).unwrap() {
        let classes: Vec<usize> = c.iter().map(|&p| sim.class_of(p)).collect();
        let key: Vec<usize> = low.iter().map(|&v| classes[v]).collect();
        let prev = by_low.entry(key).or_insert_with(|| classes.clone());
        assert_eq!(*prev, classes);
    }
    // every class pattern on the low hull occurs: (Q8/Z)^4
    assert_eq!(by_low.len(), 4usize.pow(4));
}

/// Each fiber carries exactly the degree-2 structure of its recovered
/// group, up to dimension 3.
#[test]
fn fibers_are_degree_two_structures() {
    let mut cases: Vec<(String, CubeStructure)> = vec![
        ("D2(Z4)".into(), CubeStructure::dk(z(4), 2).unwrap()),
        ("D2(Z2xZ2)".into(), CubeStructure::dk(GroupTable::direct_product(&z(2), &z(2)), 2).unwrap()),
    ];
    for f in fibers(&hzk_q8(), 2, 3, DEFAULT_BUDGET).unwrap() {
        cases.push((format!("fiber {:?}", f.points), f.structure));
    }
    for (name, f) in cases {
        let rec = recover_abelian(&f, 2, 0, DEFAULT_BUDGET).unwrap();
        let model = CubeStructure::dk(rec.group.clone(), 2).unwrap();
        for n in 0..=3 {
            let a: BTreeSet<Vec<usize>> = f.enumerate_values(n, DEFAULT_BUDGET).unwrap().into_iter().collect();
            let b: BTreeSet<Vec<usize>> = model.enumerate_values(n, DEFAULT_BUDGET).unwrap().into_iter().collect();
            assert_eq!(a, b, "{name} n={n}");
        }
    }
}

#[test]
fn recovered_group_does_not_depend_on_the_axis() {
    let mut cases = vec![CubeStructure::dk(z(4), 2).unwrap(), CubeStructure::dk(z(3), 2).unwrap()];
    cases.extend(fibers(&hzk_q8(), 2, 3, DEFAULT_BUDGET).unwrap().into_iter().map(|f| f.structure));
    for x in cases {
        let base = recover_abelian(&x, 2, 0, DEFAULT_BUDGET).unwrap().group;
        for axis in 2..=3 {
            let other = recover_abelian_on_axis(&x, 2, 0, axis, DEFAULT_BUDGET).unwrap().group;
            assert_eq!(other.table(), base.table(), "axis {axis}");
        }
    }
}

#[test]
fn tower_projections_compose() {
    let cases = [
        CubeStructure::d1(GroupTable::symmetric(3).unwrap()),
        CubeStructure::dk(z(4), 2).unwrap(),
        hzk_q8(),
        CubeStructure::d1(GroupTable::quaternion8()),
    ];
    for x in cases {
        let t = structure_tower(&x, 2, 3, DEFAULT_BUDGET).unwrap();
        assert!(t.projections_compatible, "{}", x.describe());
        // the top level separates points once the structure is 2-step
        assert_eq!(t.levels[1].points, x.size());
    }
}
