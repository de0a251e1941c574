use std::fmt::Write;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use armtunnel::{ArmState, Move};

const CELL: i64 = 40;
const MARGIN: i64 = 24;

/// One SVG image: the tunnel as an `n x m` grid and the arm as a polyline
/// from the base at the lower-left corner.
pub fn frame(state: &ArmState, step: usize, moves: &[Move]) -> String {
    let cols = state.len().max(1) as i64;
    let rows = state.width() as i64;
    let (w, h) = (cols * CELL, rows * CELL);
    let px = |x: i64| MARGIN + x * CELL;
    let py = |y: i64| MARGIN + h - y * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {0} {1}">"#,
        w + 2 * MARGIN,
        h + 2 * MARGIN + 20
    );
    let label = if moves.is_empty() {
        format!("step {step}")
    } else {
        let names: Vec<String> = moves.iter().map(Move::to_string).collect();
        format!("step {step}: {}", names.join(" "))
    };
    let _ = writeln!(
        out,
        r#"  <text x="{MARGIN}" y="{}" font-family="monospace" font-size="12">{label}</text>"#,
        h + 2 * MARGIN + 12
    );
    out.push_str(r##"  <g stroke="#bbb" stroke-width="1">"##);
    out.push('\n');
    for x in 0..=cols {
        let _ = writeln!(
            out,
            r#"    <line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
            px(x),
            py(0),
            py(rows)
        );
    }
    for y in 0..=rows {
        let _ = writeln!(
            out,
            r#"    <line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#,
            py(y),
            px(0),
            px(cols)
        );
    }
    out.push_str("  </g>\n");
    let _ = writeln!(
        out,
        r##"  <rect x="{}" y="{}" width="{w}" height="{h}" fill="none" stroke="#333" stroke-width="2"/>"##,
        px(0),
        py(rows)
    );
    let points: Vec<String> = state
        .polyline()
        .iter()
        .map(|&(x, y)| format!("{},{}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        out,
        r##"  <polyline points="{}" fill="none" stroke="#c0392b" stroke-width="4" stroke-linejoin="round"/>"##,
        points.join(" ")
    );
    let _ = writeln!(
        out,
        r##"  <circle cx="{}" cy="{}" r="5" fill="#333"/>"##,
        px(0),
        py(0)
    );
    out.push_str("</svg>\n");
    out
}

/// Write `frame_0000.svg`, `frame_0001.svg`, ... into `dir`, creating it if
/// needed. `steps[k]` is the move set leading into frame `k` (empty for the
/// first frame).
pub fn write_frames(dir: &Path, frames: &[(Vec<Move>, ArmState)]) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    frames
        .iter()
        .enumerate()
        .map(|(k, (moves, state))| {
            let path = dir.join(format!("frame_{k:04}.svg"));
            fs::write(&path, frame(state, k, moves))?;
            Ok(path)
        })
        .collect()
}
