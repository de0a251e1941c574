mod common;

use armtunnel::{ArmError, ArmState, Link, Move};
use common::{parse, state};
use proptest::prelude::*;

#[test]
fn parse_examples() {
    assert_eq!(parse("rrrr", 2).links(), &[Link::Right; 4]);
    assert!(matches!(
        ArmState::parse("ud", 2),
        Err(ArmError::Reversal { .. })
    ));
    assert!(matches!(
        ArmState::parse("uuu", 2),
        Err(ArmError::Tunnel { .. })
    ));
    assert!(matches!(
        ArmState::parse("urx", 2),
        Err(ArmError::Char { ch: 'x', .. })
    ));
    assert!(matches!(
        ArmState::parse("d", 2),
        Err(ArmError::Tunnel { .. })
    ));
}

#[test]
fn render_examples() {
    assert_eq!(parse("uu", 2).render(), "uu");
    assert_eq!(parse("", 2).render(), "");
    assert_eq!(parse("uurddr", 2).render(), "uurddr");
}

#[test]
fn legal_move_examples() {
    assert_eq!(parse("rr", 2).legal_moves(), vec![Move::FlipEnd(Link::Up)]);
    assert_eq!(
        parse("uu", 2).legal_moves(),
        vec![Move::FlipEnd(Link::Right)]
    );
    assert!(parse("", 3).legal_moves().is_empty());
    // Both flips from a horizontal end inside the tunnel.
    let moves = parse("urr", 3).legal_moves();
    assert!(moves.contains(&Move::FlipEnd(Link::Up)));
    assert!(moves.contains(&Move::FlipEnd(Link::Down)));
    // Flipping down after an up link would fold the arm back.
    assert!(!parse("ur", 2)
        .legal_moves()
        .contains(&Move::FlipEnd(Link::Down)));
}

#[test]
fn apply_examples() {
    assert_eq!(
        parse("ru", 2).apply(Move::SwitchCorner(1)).unwrap(),
        parse("ur", 2)
    );
    assert_eq!(
        parse("ur", 2).apply(Move::FlipEnd(Link::Up)).unwrap(),
        parse("uu", 2)
    );
    assert!(matches!(
        parse("rr", 2).apply(Move::SwitchCorner(1)),
        Err(ArmError::IllegalMove { .. })
    ));
}

#[test]
fn independence_examples() {
    let s = parse("urur", 3);
    // Overlapping switches share link 2.
    assert!(!s
        .independent(Move::SwitchCorner(1), Move::SwitchCorner(2))
        .unwrap());
    // Disjoint switch and end flip: check against the explicit square.
    let (a, b) = (Move::SwitchCorner(1), Move::FlipEnd(Link::Up));
    let square = s
        .apply(a)
        .and_then(|x| x.apply(b))
        .ok()
        .zip(s.apply(b).and_then(|x| x.apply(a)).ok())
        .is_some_and(|(x, y)| x == y);
    assert_eq!(s.independent(a, b).unwrap(), square);
    assert!(matches!(
        s.independent(Move::SwitchCorner(1), Move::SwitchCorner(4)),
        Err(ArmError::IllegalMove { .. })
    ));
}

#[test]
fn state_counts_width_two() {
    let counts: Vec<usize> = (0..=6)
        .map(|n| {
            armtunnel::complex_enum::enumerate_states(2, n)
                .unwrap()
                .len()
        })
        .collect();
    assert_eq!(counts, vec![1, 2, 4, 8, 15, 28, 53]);
}

proptest! {
    #[test]
    fn parse_render_round_trip(s in state(4, 16)) {
        prop_assert_eq!(ArmState::parse(&s.render(), s.width()).unwrap(), s);
    }

    #[test]
    fn moves_have_inverses(s in state(4, 16)) {
        for mv in s.legal_moves() {
            let t = s.apply(mv).unwrap();
            prop_assert_eq!(t.len(), s.len());
            prop_assert!(t.legal_moves().iter().any(|&back| t.apply(back).unwrap() == s));
        }
    }

    #[test]
    fn independent_moves_span_squares(s in state(4, 14)) {
        let moves = s.legal_moves();
        for (i, &a) in moves.iter().enumerate() {
            for &b in &moves[i + 1..] {
                if s.independent(a, b).unwrap() {
                    let sa = s.apply(a).unwrap();
                    let sb = s.apply(b).unwrap();
                    let ab = sa.apply(b).unwrap();
                    prop_assert_eq!(&ab, &sb.apply(a).unwrap());
                    let four = [&s, &sa, &sb, &ab];
                    for x in 0..4 {
                        for y in x + 1..4 {
                            prop_assert_ne!(four[x], four[y]);
                        }
                    }
                }
            }
        }
    }
}
