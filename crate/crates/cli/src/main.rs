//! `armtunnel`: plan, measure and verify motions of a robotic arm in a tunnel.

mod svg;

use std::fmt::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use armtunnel::complex_enum::{self, enumerate_cubes_with, enumerate_states_with, MAX_STATES_VAR};
use armtunnel::genfun::{self, coeff, series_coeffs};
use armtunnel::pip::build_coral_pip;
use armtunnel::{planner, verify, ArmState, Execution, Move, TransitionGraph};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "armtunnel",
    version,
    about = "Motion planning for a robotic arm in a tunnel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two states in the edge and cube metrics.
    Distance(PairArgs),
    /// A shortest path between two states.
    Plan(PlanArgs),
    /// Diameter of the transition graph.
    Diameter(SizeArgs),
    /// Face counts of the state complex.
    Fvector(SizeArgs),
    /// Euler characteristic of the state complexes up to a length.
    Euler(SizeArgs),
    /// Coefficients of the cube generating function in width 2.
    Series(SeriesArgs),
    /// The coral PIP of a tunnel.
    Pip(SizeArgs),
    /// Run an oracle suite.
    Verify(VerifyArgs),
    /// Write one SVG frame per step of a shortest path.
    Animate(PlanArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
    SvgDir,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    Edge,
    Cube,
}

#[derive(Args)]
struct PairArgs {
    /// Tunnel width.
    #[arg(long)]
    width: usize,
    /// Start state as a u/d/r string.
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    /// Target state as a u/d/r string.
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, value_enum, default_value = "edge")]
    metric: Metric,
    /// Directory for SVG frames.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SizeArgs {
    #[arg(long)]
    width: usize,
    /// Number of links.
    #[arg(long)]
    length: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Confirm against breadth-first search on the enumerated graph.
    #[arg(long)]
    verify_bfs: bool,
    /// Refuse to enumerate more states than this.
    #[arg(long, env = MAX_STATES_VAR, default_value_t = complex_enum::DEFAULT_MAX_STATES)]
    max_states: usize,
}

#[derive(Args)]
struct SeriesArgs {
    /// Highest power of x.
    #[arg(long, default_value_t = 10)]
    order: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Compare every coefficient with enumerated f-vectors.
    #[arg(long)]
    verify_bfs: bool,
    #[arg(long, env = MAX_STATES_VAR, default_value_t = complex_enum::DEFAULT_MAX_STATES)]
    max_states: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "small", value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES))]
    suite: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Failures after the arguments parsed: invalid states, mismatches, I/O.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::InvalidValue, msg).exit()
}

fn require_format(format: Format, allowed: &[Format], cmd: &str) {
    if !allowed.contains(&format) {
        let name = format.to_possible_value().unwrap().get_name().to_string();
        usage(format!("--format {name} is not supported by `{cmd}`"));
    }
}

fn parse_pair(args: &PairArgs) -> Result<(ArmState, ArmState), Failure> {
    let p = ArmState::parse(&args.from, args.width).map_err(|e| Failure(format!("--from: {e}")))?;
    let q = ArmState::parse(&args.to, args.width).map_err(|e| Failure(format!("--to: {e}")))?;
    if p.len() != q.len() {
        return Err(Failure(format!(
            "--from and --to must have equal length ({} and {})",
            p.len(),
            q.len()
        )));
    }
    Ok((p, q))
}

fn states(width: usize, length: usize, cap: usize) -> Result<TransitionGraph, Failure> {
    Ok(enumerate_states_with(
        width,
        length,
        cap,
        Execution::default(),
    )?)
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn distance(args: &PairArgs) -> Outcome {
    require_format(args.format, &[Format::Text, Format::Json], "distance");
    let (p, q) = parse_pair(args)?;
    let edge = planner::distance_edge(&p, &q)?;
    let cube = planner::distance_cube(&p, &q)?;
    Ok(match args.format {
        Format::Json => json_line(json!({
            "width": p.width(),
            "length": p.len(),
            "from": p,
            "to": q,
            "edge": edge,
            "cube": cube,
        })),
        _ => format!("edge {edge}\ncube {cube}\n"),
    })
}

/// Frames of a plan: the move set leading into each state, starting with
/// the start state itself.
fn plan_frames(
    p: &ArmState,
    q: &ArmState,
    metric: Metric,
) -> Result<Vec<(Vec<Move>, ArmState)>, Failure> {
    let mut frames = vec![(Vec::new(), p.clone())];
    match metric {
        Metric::Edge => {
            let moves = planner::geodesic_edge(p, q)?;
            let path = planner::replay(p, &moves)?;
            frames.extend(
                moves
                    .into_iter()
                    .zip(path.into_iter().skip(1))
                    .map(|(m, s)| (vec![m], s)),
            );
        }
        Metric::Cube => {
            let steps = planner::normal_cube_path(p, q)?;
            frames.extend(steps.into_iter().map(|s| (s.moves, s.state)));
        }
    }
    Ok(frames)
}

fn metric_name(metric: Metric) -> &'static str {
    match metric {
        Metric::Edge => "edge",
        Metric::Cube => "cube",
    }
}

fn plan_text(frames: &[(Vec<Move>, ArmState)], metric: Metric) -> String {
    let mut out = format!(
        "metric {}\nsteps {}\n",
        metric_name(metric),
        frames.len() - 1
    );
    for (k, (moves, state)) in frames.iter().enumerate() {
        let names: Vec<String> = moves.iter().map(Move::to_string).collect();
        let moves = if names.is_empty() {
            "start".to_string()
        } else {
            names.join(" ")
        };
        let _ = writeln!(out, "{k} {moves} -> {state}");
    }
    out
}

fn plan(args: &PlanArgs, animate: bool) -> Outcome {
    let format = if animate {
        Format::SvgDir
    } else {
        args.pair.format
    };
    require_format(
        format,
        &[Format::Text, Format::Json, Format::SvgDir],
        "plan",
    );
    let out_dir = match (&args.out, format) {
        (Some(d), Format::SvgDir) => Some(d),
        (None, Format::SvgDir) => usage("writing frames needs --out <DIR>"),
        _ => None,
    };
    let (p, q) = parse_pair(&args.pair)?;
    let frames = plan_frames(&p, &q, args.metric)?;
    if let Some(dir) = out_dir {
        let written = svg::write_frames(dir, &frames)
            .map_err(|e| Failure(format!("cannot write frames to {}: {e}", dir.display())))?;
        let mut text = plan_text(&frames, args.metric);
        let _ = writeln!(text, "wrote {} frames to {}", written.len(), dir.display());
        return Ok(text);
    }
    Ok(match format {
        Format::Json => {
            let steps: Vec<_> = frames[1..]
                .iter()
                .map(|(moves, state)| json!({"moves": moves, "state": state}))
                .collect();
            json_line(json!({
                "width": p.width(),
                "length": p.len(),
                "from": p,
                "to": q,
                "metric": metric_name(args.metric),
                "steps": steps,
            }))
        }
        _ => plan_text(&frames, args.metric),
    })
}

fn diameter(args: &SizeArgs) -> Outcome {
    let format = args.format.unwrap_or(Format::Text);
    require_format(format, &[Format::Text, Format::Json], "diameter");
    let (m, n) = (args.width, args.length);
    if m == 0 {
        return Err(Failure("width must be at least 1".into()));
    }
    let d = planner::diameter(m as u64, n as u64);
    // Name a realizing pair when one of the special pairs attains it.
    let realized = planner::special_positions(m, n).ok().and_then(|sp| {
        [(sp.left.clone(), sp.left_plus), (sp.left, sp.horizontal)]
            .into_iter()
            .find(|(a, b)| planner::distance_edge(a, b).ok() == Some(d))
    });
    let bfs = if args.verify_bfs {
        Some(states(m, n, args.max_states)?.all_pairs_diameter())
    } else {
        None
    };
    let text = match format {
        Format::Json => json_line(json!({
            "width": m,
            "length": n,
            "diameter": d,
            "realized_by": realized.as_ref().map(|(a, b)| [a, b]),
            "bfs": bfs,
            "verified": bfs.map(|b| b == d),
        })),
        _ => {
            let mut out = format!("diameter {d}\n");
            if let Some((a, b)) = &realized {
                let _ = writeln!(out, "realized by {a} {b}");
            }
            if let Some(b) = bfs {
                let verdict = if b == d { "verified" } else { "MISMATCH" };
                let _ = writeln!(out, "bfs {b} {verdict}");
            }
            out
        }
    };
    match bfs {
        Some(b) if b != d => Err(Failure(format!(
            "{text}formula {d} differs from BFS diameter {b}"
        ))),
        _ => Ok(text),
    }
}

fn fvector(args: &SizeArgs) -> Outcome {
    let format = args.format.unwrap_or(Format::Text);
    require_format(
        format,
        &[Format::Text, Format::Json, Format::Csv],
        "fvector",
    );
    let g = states(args.width, args.length, args.max_states)?;
    let fv = enumerate_cubes_with(&g, None, Execution::default()).f_vector();
    let chi = fv.euler_characteristic();
    Ok(match format {
        Format::Json => json_line(json!({
            "width": args.width,
            "length": args.length,
            "f_vector": fv.counts(),
            "chi": chi,
        })),
        Format::Csv => {
            let dims: Vec<String> = (0..fv.counts().len()).map(|d| format!("f{d}")).collect();
            format!(
                "m,n,{},chi\n{}\n",
                dims.join(","),
                fv.csv_row(args.width, args.length)
            )
        }
        _ => format!("{fv} chi={chi}\n"),
    })
}

fn euler(args: &SizeArgs) -> Outcome {
    let format = args.format.unwrap_or(Format::Text);
    require_format(format, &[Format::Text, Format::Json, Format::Csv], "euler");
    let mut rows = Vec::new();
    for n in 0..=args.length {
        let g = states(args.width, n, args.max_states)?;
        rows.push((
            n,
            enumerate_cubes_with(&g, None, Execution::default()).f_vector(),
        ));
    }
    let identity = (args.width == 2).then(genfun::euler_identity_holds);
    let ok = rows.iter().all(|(_, fv)| fv.euler_characteristic() == 1) && identity != Some(false);
    let text = match format {
        Format::Json => json_line(json!({
            "width": args.width,
            "rows": rows.iter().map(|(n, fv)| json!({
                "length": n,
                "f_vector": fv.counts(),
                "chi": fv.euler_characteristic(),
            })).collect::<Vec<_>>(),
            "series_identity": identity,
        })),
        Format::Csv => {
            let mut out = String::from("m,n,chi\n");
            for (n, fv) in &rows {
                let _ = writeln!(out, "{},{n},{}", args.width, fv.euler_characteristic());
            }
            out
        }
        _ => {
            let mut out = String::new();
            for (n, fv) in &rows {
                let _ = writeln!(out, "n={n} f={fv} chi={}", fv.euler_characteristic());
            }
            if let Some(holds) = identity {
                let _ = writeln!(
                    out,
                    "C(x,-1) = 1/(1-x): {}",
                    if holds { "holds" } else { "FAILS" }
                );
            }
            out
        }
    };
    if ok {
        Ok(text)
    } else {
        Err(Failure(format!(
            "{text}Euler characteristic differs from 1"
        )))
    }
}

fn series(args: &SeriesArgs) -> Outcome {
    require_format(
        args.format,
        &[Format::Text, Format::Json, Format::Csv],
        "series",
    );
    let table = series_coeffs(&genfun::gf_c(), args.order);
    let mut text = match args.format {
        Format::Json => json_line(genfun::table_json(&table)),
        Format::Csv => genfun::table_csv(&table),
        _ => {
            let mut out = String::new();
            for (n, row) in table.iter().enumerate() {
                let _ = writeln!(out, "x^{n}: {}", genfun::row_string(row));
            }
            out
        }
    };
    if !args.verify_bfs {
        return Ok(text);
    }
    let mut problems = Vec::new();
    if !genfun::factorization_identity_holds() {
        problems.push("1 + xC != F/(1 - M)".to_string());
    }
    if !genfun::euler_identity_holds() {
        problems.push("C(x, -1) != 1/(1 - x)".to_string());
    }
    for n in 0..=args.order {
        let g = states(2, n, args.max_states)?;
        let fv = enumerate_cubes_with(&g, None, Execution::default()).f_vector();
        for d in 0..fv.counts().len().max(table[n].len()) {
            let (a, b) = (coeff(&table, n, d), BigInt::from(fv.get(d)));
            if a != b {
                problems.push(format!("x^{n} y^{d}: series {a}, enumeration {b}"));
            }
        }
    }
    if problems.is_empty() {
        if args.format == Format::Text {
            let _ = writeln!(text, "verified against enumeration up to x^{}", args.order);
        }
        Ok(text)
    } else {
        Err(Failure(problems.join("\n")))
    }
}

fn pip(args: &SizeArgs) -> Outcome {
    let format = args.format.unwrap_or(Format::Dot);
    require_format(format, &[Format::Text, Format::Json, Format::Dot], "pip");
    if args.width == 0 {
        return Err(Failure("width must be at least 1".into()));
    }
    let cp = build_coral_pip(args.width, args.length);
    Ok(match format {
        Format::Json => json_line(cp.pip().to_json()),
        Format::Text => {
            let p = cp.pip();
            let ideals = p.enumerate_ideals_with(Execution::default()).len();
            let mut out = format!(
                "elements {}\ncovers {}\nminimal inconsistent pairs {}\nconsistent ideals {ideals}\n",
                p.len(),
                p.covers().len(),
                p.minimal_inconsistent_pairs().len()
            );
            if args.verify_bfs {
                let g = states(args.width, args.length, args.max_states)?;
                if g.len() != ideals {
                    return Err(Failure(format!(
                        "{out}{ideals} ideals but {} states",
                        g.len()
                    )));
                }
                let _ = writeln!(out, "states {} verified", g.len());
            }
            out
        }
        _ => cp.to_dot(),
    })
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    require_format(args.format, &[Format::Text, Format::Json], "verify");
    let outcomes = verify::run_suite(&args.suite).expect("suite name validated by clap");
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let text = match args.format {
        Format::Json => json_line(json!({
            "suite": args.suite,
            "passed": failed == 0,
            "checks": outcomes,
        })),
        _ => {
            let mut out = String::new();
            for o in &outcomes {
                let tag = if o.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{tag} {}: {}", o.name, o.detail);
            }
            let _ = writeln!(
                out,
                "{} of {} checks passed",
                outcomes.len() - failed,
                outcomes.len()
            );
            out
        }
    };
    if failed == 0 {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure(format!("{failed} check(s) failed")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Distance(a) => distance(a),
        Command::Plan(a) => plan(a, false),
        Command::Animate(a) => plan(a, true),
        Command::Diameter(a) => diameter(a),
        Command::Fvector(a) => fvector(a),
        Command::Euler(a) => euler(a),
        Command::Series(a) => series(a),
        Command::Pip(a) => pip(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
