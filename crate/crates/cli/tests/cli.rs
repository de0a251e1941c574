use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_armtunnel"))
        .args(args)
        .env_remove("ARMTUNNEL_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn distance_left_to_horizontal() {
    let text = stdout(&[
        "distance", "--width", "2", "--from", "rrrrrr", "--to", "uurddr",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("edge 16"));
    let cube: u64 = lines
        .next()
        .unwrap()
        .strip_prefix("cube ")
        .unwrap()
        .parse()
        .unwrap();
    assert!(cube <= 16);
}

#[test]
fn distance_json() {
    let text = stdout(&[
        "distance", "--width", "2", "--from", "rr", "--to", "uu", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["edge"], 3);
    assert_eq!(v["cube"], 3);
    assert_eq!(v["from"], "rr");
}

#[test]
fn fvector_width_two() {
    assert_eq!(
        stdout(&["fvector", "--width", "2", "--length", "6"]),
        "53,81,30,1 chi=1\n"
    );
    assert_eq!(
        stdout(&["fvector", "--width", "2", "--length", "3", "--format", "csv"]),
        "m,n,f0,f1,f2,chi\n2,3,8,8,1,1\n"
    );
}

#[test]
fn diameter_with_bfs() {
    let text = stdout(&["diameter", "--width", "2", "--length", "6", "--verify-bfs"]);
    assert!(text.starts_with("diameter 17\n"));
    assert!(text.contains("bfs 17 verified"));
}

#[test]
fn state_cap_is_enforced() {
    let out = run(&[
        "fvector",
        "--width",
        "2",
        "--length",
        "8",
        "--max-states",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("10"));
    let out = Command::new(env!("CARGO_BIN_EXE_armtunnel"))
        .args(["fvector", "--width", "2", "--length", "8"])
        .env("ARMTUNNEL_MAX_STATES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn plan_edge_and_cube() {
    let edge = stdout(&["plan", "--width", "2", "--from", "rr", "--to", "uu"]);
    assert_eq!(
        edge,
        "metric edge\nsteps 3\n0 start -> rr\n1 flip(u) -> ru\n2 switch(1) -> ur\n3 flip(u) -> uu\n"
    );
    let args = [
        "plan", "--width", "3", "--from", "rrrrrrr", "--to", "uuurddd", "--metric", "cube",
        "--format", "json",
    ];
    let v: serde_json::Value = serde_json::from_str(&stdout(&args)).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.last().unwrap()["state"], "uuurddd");
    let total: usize = steps
        .iter()
        .map(|s| s["moves"].as_array().unwrap().len())
        .sum();
    let d = stdout(&[
        "distance", "--width", "3", "--from", "rrrrrrr", "--to", "uuurddd",
    ]);
    assert_eq!(format!("edge {total}"), d.lines().next().unwrap());
}

#[test]
fn animate_writes_one_frame_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frames");
    let out_s = out.to_str().unwrap();
    stdout(&[
        "animate", "--width", "2", "--from", "rr", "--to", "uu", "--out", out_s,
    ]);
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "frame_0000.svg",
            "frame_0001.svg",
            "frame_0002.svg",
            "frame_0003.svg"
        ]
    );
    let first = fs::read_to_string(out.join("frame_0000.svg")).unwrap();
    assert!(first.starts_with("<svg"));
    assert!(first.contains(r#"points="24,104 64,104 104,104""#));

    let same = dir.path().join("same");
    stdout(&[
        "animate",
        "--width",
        "2",
        "--from",
        "ur",
        "--to",
        "ur",
        "--out",
        same.to_str().unwrap(),
    ]);
    assert_eq!(fs::read_dir(&same).unwrap().count(), 1);
}

#[test]
fn cube_animation_is_no_longer_than_edge() {
    let dir = tempfile::tempdir().unwrap();
    let count = |metric: &str| {
        let d = dir.path().join(metric);
        let args = [
            "animate", "--width", "2", "--from", "rrrrrr", "--to", "uurddr", "--metric", metric,
        ];
        let mut args: Vec<&str> = args.to_vec();
        args.extend(["--out", d.to_str().unwrap()]);
        stdout(&args);
        fs::read_dir(&d).unwrap().count()
    };
    let (edge, cube) = (count("edge"), count("cube"));
    assert_eq!(edge, 17);
    assert!(cube <= edge);
}

#[test]
fn unwritable_frame_directory() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    fs::write(&file, "x").unwrap();
    let out = run(&[
        "animate",
        "--width",
        "2",
        "--from",
        "rr",
        "--to",
        "uu",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn domain_errors_exit_one() {
    let out = run(&["distance", "--width", "2", "--from", "uuu", "--to", "rrr"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("leaves the tunnel"));
    let out = run(&["distance", "--width", "2", "--from", "rr", "--to", "rrr"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("equal length"));
    let out = run(&["distance", "--width", "2", "--from", "ud", "--to", "rr"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("reverse"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["distance", "--width", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["fvector", "--width", "x", "--length", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--suite", "huge"]).status.code(), Some(2));
    assert_eq!(
        run(&["animate", "--width", "2", "--from", "r", "--to", "u"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["pip", "--width", "2", "--length", "2", "--format", "svg-dir"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn euler_and_series() {
    let text = stdout(&["euler", "--width", "3", "--length", "5"]);
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.ends_with("chi=1")));
    let text = stdout(&["series", "--order", "6", "--verify-bfs"]);
    assert!(text.contains("x^6: 53 + 81*y + 30*y^2 + y^3\n"));
    assert!(text.ends_with("verified against enumeration up to x^6\n"));
    let csv = stdout(&["series", "--order", "1", "--format", "csv"]);
    assert_eq!(csv, "n,d,c\n0,0,1\n1,0,2\n1,1,1\n");
}

#[test]
fn pip_exports() {
    let dot = stdout(&["pip", "--width", "2", "--length", "3"]);
    assert!(dot.starts_with("graph pip {"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "pip", "--width", "2", "--length", "3", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
    let text = stdout(&[
        "pip",
        "--width",
        "2",
        "--length",
        "6",
        "--format",
        "text",
        "--verify-bfs",
    ]);
    assert!(text.contains("consistent ideals 53\n"));
    assert!(text.contains("states 53 verified"));
}

#[test]
fn verify_small_suite() {
    let text = stdout(&["verify", "--suite", "small"]);
    assert!(text
        .lines()
        .filter(|l| !l.contains("checks passed"))
        .all(|l| l.starts_with("PASS")));
    assert!(text.ends_with("20 of 20 checks passed\n"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "plan", "--width", "3", "--from", "uurrdd", "--to", "rrruuu", "--metric", "cube",
            "--format", "json",
        ][..],
        &["pip", "--width", "3", "--length", "4"][..],
        &[
            "diameter", "--width", "3", "--length", "7", "--format", "json",
        ][..],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}
