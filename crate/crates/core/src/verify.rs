//! Cross-checks between the closed-form side of the crate (tableaux, PIPs,
//! distance formulas, generating functions) and brute-force enumeration.
//!
//! Each check returns a short summary on success and a description of the
//! first mismatch otherwise.

use std::time::Instant;

use serde::Serialize;

use crate::arm::ArmState;
use crate::complex_enum::{self, TransitionGraph};
use crate::coral;
use crate::genfun;
use crate::par::Execution;
use crate::pip::{self, CubeComplex};
use crate::planner;

pub type CheckResult = Result<String, String>;

fn graph(m: usize, n: usize) -> Result<TransitionGraph, String> {
    complex_enum::enumerate_states(m, n).map_err(|e| e.to_string())
}

/// State, tableau and ideal round trips, ideal counts, and the join of the
/// jump tights.
pub fn check_bijections(m: usize, n: usize) -> CheckResult {
    let g = graph(m, n)?;
    let cp = pip::build_coral_pip(m, n);
    let ideals = cp.pip().enumerate_ideals();
    if ideals.len() != g.len() {
        return Err(format!(
            "({m},{n}): {} ideals, {} states",
            ideals.len(),
            g.len()
        ));
    }
    let bad = Execution::default().map(g.states(), |s| check_state_bijections(&cp, s).err());
    if let Some(e) = bad.into_iter().flatten().next() {
        return Err(e);
    }
    Ok(format!("({m},{n}): {} states", g.len()))
}

fn check_state_bijections(cp: &pip::CoralPip, s: &ArmState) -> Result<(), String> {
    let (m, n) = (cp.width(), cp.length());
    let t = coral::state_to_tableau(s);
    if !t.is_type(m, n) || !t.shape().satisfies_color_rule() {
        return Err(format!("{s}: tableau {t} has the wrong type or shape"));
    }
    let back = coral::tableau_to_state(&t, m, n).map_err(|e| format!("{s}: {e}"))?;
    if &back != s {
        return Err(format!("{s}: tableau round trip gives {back}"));
    }
    let ideal = cp.tableau_to_ideal(&t).map_err(|e| format!("{s}: {e}"))?;
    if !cp.pip().is_consistent_ideal(&ideal) {
        return Err(format!("{s}: ideal is not a consistent order ideal"));
    }
    let again = cp
        .ideal_to_tableau(&ideal)
        .map_err(|e| format!("{s}: {e}"))?;
    if again != t {
        return Err(format!("{s}: ideal round trip gives {again}"));
    }
    let jumps = coral::jumps(&t, m, n);
    let tights: Vec<_> = jumps
        .iter()
        .map(|&i| coral::tight_tableau(&t.tight_at(i), m, n))
        .collect::<Result<_, _>>()
        .map_err(|e| format!("{s}: {e}"))?;
    let joined = coral::join(&tights).map_err(|e| format!("{s}: {e}"))?;
    if joined != t {
        return Err(format!("{s}: join of jump tights is {joined}"));
    }
    let maxes: Vec<_> = cp.pip().maximal(&ideal);
    let mut from_jumps: Vec<usize> = jumps
        .iter()
        .map(|&i| cp.index_of(&t.tight_at(i)).expect("tight element in PIP"))
        .collect();
    from_jumps.sort_unstable();
    if maxes != from_jumps {
        return Err(format!("{s}: jumps do not index the maximal elements"));
    }
    Ok(())
}

/// `distance_edge = distance_tableau = |I_p Δ I_q| = BFS` on all pairs.
pub fn check_distances(m: usize, n: usize) -> CheckResult {
    let g = graph(m, n)?;
    let cp = pip::build_coral_pip(m, n);
    let ideals: Vec<_> = g
        .states()
        .iter()
        .map(|s| {
            cp.tableau_to_ideal(&coral::state_to_tableau(s))
                .expect("type")
        })
        .collect();
    let results = Execution::default().map_range(g.len(), |a| {
        let dist = g.bfs_from(a);
        for (b, &bfs_steps) in dist.iter().enumerate() {
            let (p, q) = (&g.states()[a], &g.states()[b]);
            let edge = planner::distance_edge(p, q).map_err(|e| e.to_string())?;
            let tab = planner::distance_tableau(p, q).map_err(|e| e.to_string())?;
            let mut sym = ideals[a].clone();
            sym.symmetric_difference_with(&ideals[b]);
            let hyper = sym.count_ones(..) as u64;
            let bfs = bfs_steps as u64;
            if edge != bfs || tab != bfs || hyper != bfs {
                return Err(format!(
                    "{p} -> {q}: formula {edge}, tableau {tab}, ideals {hyper}, BFS {bfs}"
                ));
            }
        }
        Ok(())
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("({m},{n}): {} ordered pairs", g.len() * g.len()))
}

/// The geodesic between `p` and `q` is legal and as long as the distance.
pub fn check_geodesic(p: &ArmState, q: &ArmState) -> Result<(), String> {
    let moves = planner::geodesic_edge(p, q).map_err(|e| e.to_string())?;
    let d = planner::distance_edge(p, q).map_err(|e| e.to_string())?;
    if moves.len() as u64 != d {
        return Err(format!("{p} -> {q}: {} moves, distance {d}", moves.len()));
    }
    let states = planner::replay(p, &moves).map_err(|e| format!("{p} -> {q}: {e}"))?;
    if states.last() != Some(q) {
        return Err(format!(
            "{p} -> {q}: path ends at {}",
            states.last().unwrap()
        ));
    }
    Ok(())
}

pub fn check_geodesics(m: usize, n: usize) -> CheckResult {
    let g = graph(m, n)?;
    let results = Execution::default().map(g.states(), |p| {
        g.states().iter().try_for_each(|q| check_geodesic(p, q))
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("({m},{n}): {} geodesics", g.len() * g.len()))
}

/// Normal cube paths against BFS in the cube-move graph of the enumerated
/// complex.
pub fn check_cube_paths(m: usize, n: usize) -> CheckResult {
    let g = graph(m, n)?;
    let x = complex_enum::enumerate_cubes(&g);
    let adj = complex_enum::cube_move_graph(&x);
    let results = Execution::default().map_range(g.len(), |a| {
        let dist = complex_enum::bfs(a, g.len(), |u| adj[u].iter().copied());
        for (b, &bfs_steps) in dist.iter().enumerate() {
            let (p, q) = (&g.states()[a], &g.states()[b]);
            let path = planner::normal_cube_path(p, q).map_err(|e| e.to_string())?;
            let moves: usize = path.iter().map(|s| s.moves.len()).sum();
            let d = planner::distance_edge(p, q).map_err(|e| e.to_string())?;
            if path.len() as u32 != bfs_steps || moves as u64 != d {
                return Err(format!(
                    "{p} -> {q}: {} steps (BFS {bfs_steps}), {moves} moves (distance {d})",
                    path.len()
                ));
            }
            let mut cur = p.clone();
            for step in &path {
                for (i, &a) in step.moves.iter().enumerate() {
                    for &b in &step.moves[i + 1..] {
                        if !cur.independent(a, b).unwrap_or(false) {
                            return Err(format!(
                                "{p} -> {q}: {a} and {b} not independent at {cur}"
                            ));
                        }
                    }
                }
                let mut next = cur.clone();
                for &mv in &step.moves {
                    next = next.apply(mv).map_err(|e| e.to_string())?;
                }
                if next != step.state {
                    return Err(format!(
                        "{p} -> {q}: step lands on {next}, not {}",
                        step.state
                    ));
                }
                cur = next;
            }
        }
        Ok(())
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("({m},{n}): {} cube paths", g.len() * g.len()))
}

/// Hyperplanes of the enumerated complex rebuild the coral PIP.
pub fn check_pip_reconstruction(m: usize, n: usize) -> CheckResult {
    let g = graph(m, n)?;
    let x: CubeComplex<ArmState, _> = complex_enum::enumerate_cubes(&g);
    let cp = pip::build_coral_pip(m, n);
    let r = pip::pip_from_complex(&x).map_err(|e| e.to_string())?;
    let ideals: Vec<_> = x
        .vertices()
        .iter()
        .map(|s| {
            cp.tableau_to_ideal(&coral::state_to_tableau(s))
                .expect("type")
        })
        .collect();
    let map = r
        .labelling(cp.pip().len(), |v| ideals[v].clone())
        .map_err(|e| e.to_string())?;
    r.pip
        .check_isomorphism(cp.pip(), &map)
        .map_err(|e| e.to_string())?;
    if cp.pip().enumerate_ideals().len() != g.len() {
        return Err("ideal count differs from state count".into());
    }
    Ok(format!("({m},{n}): {} hyperplanes", cp.pip().len()))
}

/// Diameter formula against the BFS diameter.
pub fn check_diameter(m: usize, n: usize) -> CheckResult {
    let g = graph(m, n)?;
    let bfs = g.all_pairs_diameter();
    let formula = planner::diameter(m as u64, n as u64);
    if bfs != formula {
        return Err(format!("({m},{n}): formula {formula}, BFS {bfs}"));
    }
    Ok(format!("({m},{n}): {bfs}"))
}

/// Euler characteristic of the enumerated complex.
pub fn check_euler(m: usize, n: usize) -> CheckResult {
    let g = graph(m, n)?;
    let fv = complex_enum::enumerate_cubes(&g).f_vector();
    match fv.euler_characteristic() {
        1 => Ok(format!("({m},{n}): {fv}")),
        chi => Err(format!("({m},{n}): f-vector {fv}, chi = {chi}")),
    }
}

/// Generating-function identities and series against enumeration.
pub fn check_series(order: usize) -> CheckResult {
    let r = genfun::verify_identities(order).map_err(|e| e.to_string())?;
    if r.passed() {
        Ok(format!("order {order}"))
    } else {
        Err(r
            .first_discrepancy
            .unwrap_or_else(|| "identity failed".into()))
    }
}

/// One check of a suite and its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type Check = (String, Box<dyn Fn() -> CheckResult>);

fn small_suite() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    let mut add = |name: String, f: Box<dyn Fn() -> CheckResult>| checks.push((name, f));
    for (m, n) in [(1, 6), (2, 6), (3, 5)] {
        add(
            format!("bijections {m} {n}"),
            Box::new(move || check_bijections(m, n)),
        );
        add(
            format!("distance {m} {n}"),
            Box::new(move || check_distances(m, n)),
        );
        add(
            format!("geodesic {m} {n}"),
            Box::new(move || check_geodesics(m, n)),
        );
        add(
            format!("pip {m} {n}"),
            Box::new(move || check_pip_reconstruction(m, n)),
        );
        add(
            format!("euler {m} {n}"),
            Box::new(move || check_euler(m, n)),
        );
        add(
            format!("diameter {m} {n}"),
            Box::new(move || check_diameter(m, n)),
        );
    }
    add("cube paths 2 5".into(), Box::new(|| check_cube_paths(2, 5)));
    add("series 8".into(), Box::new(|| check_series(8)));
    checks
}

fn full_suite() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    let mut add = |name: String, f: Box<dyn Fn() -> CheckResult>| checks.push((name, f));
    for (m, n) in [(1, 10), (2, 8), (3, 7)] {
        add(
            format!("bijections {m} {n}"),
            Box::new(move || check_bijections(m, n)),
        );
        add(
            format!("distance {m} {n}"),
            Box::new(move || check_distances(m, n)),
        );
        add(
            format!("diameter {m} {n}"),
            Box::new(move || check_diameter(m, n)),
        );
        add(
            format!("euler {m} {n}"),
            Box::new(move || check_euler(m, n)),
        );
    }
    for (m, n) in [(2, 7), (3, 6)] {
        add(
            format!("geodesic {m} {n}"),
            Box::new(move || check_geodesics(m, n)),
        );
        add(
            format!("pip {m} {n}"),
            Box::new(move || check_pip_reconstruction(m, n)),
        );
    }
    add("cube paths 2 7".into(), Box::new(|| check_cube_paths(2, 7)));
    add("series 12".into(), Box::new(|| check_series(12)));
    checks
}

pub const SUITES: &[&str] = &["small", "full"];

/// Run a named suite; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Vec<Outcome>> {
    let checks = match name {
        "small" => small_suite(),
        "full" => full_suite(),
        _ => return None,
    };
    Some(
        checks
            .into_iter()
            .map(|(name, f)| {
                let start = Instant::now();
                let result = f();
                let seconds = start.elapsed().as_secs_f64();
                let (passed, detail) = match result {
                    Ok(d) => (true, d),
                    Err(d) => (false, d),
                };
                Outcome {
                    name,
                    passed,
                    detail,
                    seconds,
                }
            })
            .collect(),
    )
}
