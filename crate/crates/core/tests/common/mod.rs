#![allow(dead_code)]

use armtunnel::{ArmState, Link};
use proptest::prelude::*;

/// Build a valid state from arbitrary choices: at each position pick among
/// the links that keep the arm inside the tunnel and self-avoiding.
pub fn build_state(m: usize, choices: &[u8]) -> ArmState {
    let mut links = Vec::with_capacity(choices.len());
    let mut h = 0usize;
    for &c in choices {
        let prev = links.last().copied();
        let mut options = vec![Link::Right];
        if h < m && prev != Some(Link::Down) {
            options.push(Link::Up);
        }
        if h > 0 && prev != Some(Link::Up) {
            options.push(Link::Down);
        }
        let l = options[c as usize % options.len()];
        match l {
            Link::Up => h += 1,
            Link::Down => h -= 1,
            Link::Right => {}
        }
        links.push(l);
    }
    ArmState::new(m, links).expect("constructed state is valid")
}

pub fn state(max_m: usize, max_n: usize) -> impl Strategy<Value = ArmState> {
    (1..=max_m, prop::collection::vec(any::<u8>(), 0..=max_n)).prop_map(|(m, c)| build_state(m, &c))
}

/// Two states of the same width and length.
pub fn state_pair(max_m: usize, max_n: usize) -> impl Strategy<Value = (ArmState, ArmState)> {
    (1..=max_m, 0..=max_n).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(any::<u8>(), n),
            prop::collection::vec(any::<u8>(), n),
        )
            .prop_map(move |(a, b)| (build_state(m, &a), build_state(m, &b)))
    })
}

pub fn parse(s: &str, m: usize) -> ArmState {
    ArmState::parse(s, m).unwrap()
}
