use armtunnel::complex_enum::{enumerate_cubes, enumerate_states};
use armtunnel::pip::{build_coral_pip, complex_from_pip, pip_from_complex, Cube};
use armtunnel::{CubeComplex, Execution, Ideal, Pip, PipError};
use fixedbitset::FixedBitSet;
use proptest::prelude::*;

/// Consistent ideals by checking every subset.
fn brute_force_ideals<L>(p: &Pip<L>) -> usize {
    let n = p.len();
    (0u32..1 << n)
        .filter(|&mask| {
            let has = |i: usize| mask >> i & 1 == 1;
            (0..n).filter(|&j| has(j)).all(|j| {
                (0..n).all(|i| (!p.lt(i, j) || has(i)) && (!has(i) || !p.is_inconsistent(i, j)))
            })
        })
        .count()
}

/// A random PIP: order from a random DAG on `0..n` (edges go up in index),
/// inconsistency seeded on random pairs and closed upwards.
fn random_pip(n: usize, edges: &[bool], seeds: &[bool]) -> Option<Pip<usize>> {
    // Pair (i, j) with i < j reads flag number j(j-1)/2 + i.
    let flag = |v: &[bool], i: usize, j: usize| v[j * (j - 1) / 2 + i];
    let mut lt: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i < j && flag(edges, i, j)).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if lt[i][k] && lt[k][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    let mut inc = vec![vec![false; n]; n];
    for j in 0..n {
        for i in 0..j {
            if flag(seeds, i, j) && !lt[i][j] {
                for a in 0..n {
                    for b in 0..n {
                        if (a == i || lt[i][a]) && (b == j || lt[j][b]) {
                            inc[a][b] = true;
                            inc[b][a] = true;
                        }
                    }
                }
            }
        }
    }
    // Closing upwards can make comparable elements inconsistent; skip those.
    Pip::from_relation((0..n).collect(), |i, j| lt[i][j], |i, j| inc[i][j]).ok()
}

#[test]
fn rejects_broken_axioms() {
    let cyclic = Pip::from_relation(vec![0, 1], |i, j| i != j, |_, _| false);
    assert!(matches!(cyclic, Err(PipError::Invalid(_))));
    // 0 < 1 and 0 # 2 but 1 is consistent with 2.
    let unpropagated = Pip::from_relation(
        vec![0, 1, 2],
        |i, j| (i, j) == (0, 1),
        |i, j| matches!((i, j), (0, 2) | (2, 0)),
    );
    assert!(matches!(unpropagated, Err(PipError::Invalid(_))));
    let comparable = Pip::from_relation(vec![0, 1], |i, j| (i, j) == (0, 1), |i, j| i != j);
    assert!(matches!(comparable, Err(PipError::Invalid(_))));
}

#[test]
fn small_pip_ideals_and_covers() {
    // 0 < 1, 0 < 2, 1 # 2.
    let p = Pip::from_relation(
        vec!['a', 'b', 'c'],
        |i, j| i == 0 && j > 0,
        |i, j| i > 0 && j > 0 && i != j,
    )
    .unwrap();
    assert_eq!(p.covers(), vec![(0, 1), (0, 2)]);
    assert_eq!(p.minimal_inconsistent_pairs(), vec![(1, 2)]);
    assert_eq!(p.enumerate_ideals().len(), 4);
    let x = complex_from_pip(&p, None, Execution::Sequential);
    assert_eq!(x.f_vector().counts(), &[4, 3]);
    let mut full = Ideal::with_capacity(3);
    full.insert_range(..);
    assert!(!p.is_consistent_ideal(&full));
}

#[test]
fn unfilled_square_is_not_cat0() {
    let cubes = [(0, 1), (1, 3), (0, 2), (2, 3)]
        .map(|(a, b)| Cube {
            generators: vec![()],
            vertices: vec![a, b],
        })
        .to_vec();
    let x = CubeComplex::new(vec![(); 4], 0, cubes).unwrap();
    assert!(matches!(
        pip_from_complex(&x),
        Err(PipError::NotCat0Evidence(_))
    ));
}

#[test]
fn isolated_vertex_is_disconnected() {
    let cubes = vec![Cube {
        generators: vec![()],
        vertices: vec![0, 1],
    }];
    let x = CubeComplex::new(vec![(); 3], 0, cubes).unwrap();
    assert!(matches!(
        pip_from_complex(&x),
        Err(PipError::Disconnected(2))
    ));
}

#[test]
fn bad_cubes_are_rejected() {
    let short = vec![Cube {
        generators: vec![(), ()],
        vertices: vec![0, 1],
    }];
    assert!(matches!(
        CubeComplex::new(vec![(); 2], 0, short),
        Err(PipError::BadCube(_))
    ));
    assert!(matches!(
        CubeComplex::<(), ()>::new(vec![(); 2], 5, Vec::new()),
        Err(PipError::BadCube(_))
    ));
}

#[test]
fn coral_complex_matches_transition_complex() {
    for (m, n) in [(2, 6), (3, 5)] {
        let cp = build_coral_pip(m, n);
        let from_pip = complex_from_pip(cp.pip(), None, Execution::default());
        let direct = enumerate_cubes(&enumerate_states(m, n).unwrap());
        assert_eq!(from_pip.f_vector(), direct.f_vector(), "({m},{n})");
    }
}

#[test]
fn coral_pip_sizes() {
    assert_eq!(build_coral_pip(2, 1).pip().len(), 1);
    assert_eq!(build_coral_pip(2, 3).pip().len(), 6);
    assert!(build_coral_pip(2, 0).pip().is_empty());
}

#[test]
fn sequential_and_parallel_ideals_agree() {
    let cp = build_coral_pip(2, 8);
    let a = cp.pip().enumerate_ideals_with(Execution::Sequential);
    let b = cp.pip().enumerate_ideals_with(Execution::Parallel);
    assert_eq!(a, b);
}

#[test]
fn dot_and_json_exports() {
    let cp = build_coral_pip(2, 3);
    let dot = cp.to_dot();
    assert!(dot.starts_with("graph pip"));
    let json = cp.pip().to_json();
    assert_eq!(json["elements"].as_array().unwrap().len(), 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ideals_match_brute_force(
        edges in prop::collection::vec(prop::bool::weighted(0.3), 28),
        seeds in prop::collection::vec(prop::bool::weighted(0.15), 28),
        n in 1usize..=8,
    ) {
        prop_assume!(random_pip(n, &edges, &seeds).is_some());
        let p = random_pip(n, &edges, &seeds).unwrap();
        prop_assert_eq!(p.enumerate_ideals().len(), brute_force_ideals(&p));
    }

    #[test]
    fn hyperplanes_recover_random_pips(
        edges in prop::collection::vec(prop::bool::weighted(0.3), 21),
        seeds in prop::collection::vec(prop::bool::weighted(0.15), 21),
        n in 1usize..=7,
    ) {
        prop_assume!(random_pip(n, &edges, &seeds).is_some());
        let p = random_pip(n, &edges, &seeds).unwrap();
        let x = complex_from_pip(&p, None, Execution::Sequential);
        let r = pip_from_complex(&x).unwrap();
        let map = r.labelling(p.len(), |v| x.vertices()[v].clone()).unwrap();
        r.pip.check_isomorphism(&p, &map).unwrap();
        // Crossing sets of each vertex are exactly its ideal.
        for (v, ideal) in x.vertices().iter().enumerate() {
            let mut mapped = FixedBitSet::with_capacity(p.len());
            for h in r.crossing[v].ones() {
                mapped.insert(map[h]);
            }
            prop_assert_eq!(&mapped, ideal);
        }
    }
}
