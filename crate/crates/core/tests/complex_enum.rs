use std::collections::HashSet;

use armtunnel::complex_enum::{
    cube_move_graph, cube_to_word, enumerate_cubes, enumerate_cubes_with, enumerate_states,
    enumerate_states_with, factorize_word, Family, PartialWord, Symbol,
};
use armtunnel::{ArmState, EnumError, Execution, FVector, Link, Move};

fn st(s: &str, m: usize) -> ArmState {
    ArmState::parse(s, m).unwrap()
}

#[test]
fn f_vectors_width_three() {
    // Cross-checked against the cubes of the coral PIP in tests/pip.rs.
    for n in 0..=6 {
        let g = enumerate_states(3, n).unwrap();
        let fv = enumerate_cubes(&g).f_vector();
        assert_eq!(fv.euler_characteristic(), 1, "n={n}: {fv}");
        assert_eq!(fv.get(1) as usize, g.edge_count());
    }
}

#[test]
fn width_one_complexes_are_contractible_by_euler() {
    for n in 0..=10 {
        let g = enumerate_states(1, n).unwrap();
        assert_eq!(
            enumerate_cubes(&g).f_vector().euler_characteristic(),
            1,
            "n={n}"
        );
    }
}

#[test]
fn modes_agree() {
    let a = enumerate_states_with(3, 7, 1 << 20, Execution::Sequential).unwrap();
    let b = enumerate_states_with(3, 7, 1 << 20, Execution::Parallel).unwrap();
    assert_eq!(a.states(), b.states());
    let ca = enumerate_cubes_with(&a, None, Execution::Sequential);
    let cb = enumerate_cubes_with(&b, None, Execution::Parallel);
    assert_eq!(ca.cubes(), cb.cubes());
    assert_eq!(
        a.all_pairs_diameter_with(Execution::Sequential),
        b.all_pairs_diameter_with(Execution::Parallel)
    );
}

#[test]
fn dimension_cap_drops_higher_cubes() {
    let g = enumerate_states(2, 6).unwrap();
    let x = enumerate_cubes_with(&g, Some(1), Execution::Sequential);
    assert_eq!(x.f_vector().counts(), &[53, 81]);
}

#[test]
fn cube_vertices_are_distinct_and_canonical() {
    let g = enumerate_states(2, 7).unwrap();
    let x = enumerate_cubes(&g);
    let mut seen = HashSet::new();
    for c in x.cubes() {
        let verts: HashSet<_> = c.vertices.iter().collect();
        assert_eq!(verts.len(), c.vertices.len());
        let base = &x.vertices()[c.base()];
        assert!(c
            .vertices
            .iter()
            .all(|&v| x.vertices()[v].render() >= base.render()));
        let mut key = c.vertices.clone();
        key.sort_unstable();
        assert!(seen.insert(key), "cube listed twice");
    }
}

#[test]
fn cube_moves_join_opposite_corners() {
    let g = enumerate_states(2, 4).unwrap();
    let x = enumerate_cubes(&g);
    let adj = cube_move_graph(&x);
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    // One cube move per cube, counting squares once per diagonal pair.
    let f = x.f_vector();
    assert_eq!(edges as u64, f.get(1) + 2 * f.get(2));
}

#[test]
fn words_of_small_cubes() {
    let w = cube_to_word(&st("ru", 2), &[Move::SwitchCorner(1)]).unwrap();
    assert_eq!(w.symbols(), &[Symbol::Square(Link::Up)]);
    assert_eq!(w.weight(), (2, 1));
    let w = cube_to_word(&st("urr", 2), &[Move::FlipEnd(Link::Up)]).unwrap();
    assert_eq!(w.to_string(), "vr⌞");
    let w = cube_to_word(&st("urd", 2), &[]).unwrap();
    assert_eq!(w.primed(), "vrv′");
    assert!(matches!(
        cube_to_word(&st("uuu", 3), &[]),
        Err(EnumError::WidthUnsupported(3))
    ));
}

#[test]
fn factorization_of_one_word() {
    use Symbol::*;
    let w = PartialWord::new(vec![R, V(Link::Up), R, V(Link::Down), R, Claw(Link::Up)]);
    let factors = factorize_word(&w).unwrap();
    let fams: Vec<Family> = factors.iter().map(|(f, _)| *f).collect();
    assert_eq!(fams, vec![Family::M8, Family::F2]);
    assert_eq!(factors[0].1.to_string(), "rvrv");
    let stuck = PartialWord::new(vec![V(Link::Up), V(Link::Down)]);
    assert!(matches!(
        factorize_word(&stuck),
        Err(EnumError::UnclassifiableFactor(_))
    ));
}

#[test]
fn every_enumerated_cube_factorizes() {
    for n in 0..=8 {
        let g = enumerate_states(2, n).unwrap();
        let x = enumerate_cubes(&g);
        for c in x.cubes() {
            let w = cube_to_word(&x.vertices()[c.base()], &c.generators).unwrap();
            assert!(
                factorize_word(&w.with_leading_r()).is_ok(),
                "{}",
                w.primed()
            );
        }
    }
}

#[test]
fn f_vector_formatting() {
    let fv = FVector::new(vec![53, 81, 30, 1, 0, 0]);
    assert_eq!(fv.to_string(), "53,81,30,1");
    assert_eq!(fv.csv_row(2, 6), "2,6,53,81,30,1,1");
}

#[test]
fn exports_mention_every_state() {
    let g = enumerate_states(2, 3).unwrap();
    let dot = g.to_dot();
    assert!(g.states().iter().all(|s| dot.contains(&format!("\"{s}\""))));
    let json = g.to_json();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn zero_width_is_rejected() {
    assert!(matches!(enumerate_states(0, 3), Err(EnumError::ZeroWidth)));
}
