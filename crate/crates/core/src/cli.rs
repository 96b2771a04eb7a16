//! The `tiler` command line.
//!
//! Exit codes: 0 on success, 1 when the figure is untileable, 2 on usage,
//! input or parse errors, 3 on internal failures.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::components::ComponentKind;
use crate::flips::{local_flip_count, Flip, FlipDirection};
use crate::grid::{Color, GridVertex, Region};
use crate::io::{dominoes_json, parse_tiling_json, render_tiling, JSON_FORMAT};
use crate::lattice::{max_height, min_height};
use crate::oracle::brute_enumerate_capped;
use crate::sample::SampleError;
use crate::tiling::Tiling;
use crate::{Board, Error, Figure};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNTILEABLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tiler", version, about = "Domino tilings of figures with holes")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FigureArg {
    /// Figure file: rows of '#' (cell) and '.' (empty), top row first.
    pub file: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report size, holes, colour balance and tileability.
    Check(FigureArg),
    /// Print the minimal tiling.
    Min(FigureArg),
    /// Print the maximal tiling.
    Max(FigureArg),
    /// Count tilings.
    Count(FigureArg),
    /// List tilings in lexicographic order.
    Enum {
        #[command(flatten)]
        figure: FigureArg,
        /// Stop after this many tilings.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Draw uniform random tilings.
    Sample {
        #[command(flatten)]
        figure: FigureArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of samples, using seeds S, S+1, ...
        #[arg(short = 'n', default_value_t = 1)]
        n: u64,
    },
    /// Flip distance between two tilings given as JSON files.
    Dist {
        #[command(flatten)]
        figure: FigureArg,
        first: PathBuf,
        second: PathBuf,
        /// Also print a shortest flip sequence.
        #[arg(long)]
        path: bool,
    },
    /// List forced components and the edges between them.
    Components(FigureArg),
    /// Print hole step values and the non-zero equilibrium arcs.
    Eq(FigureArg),
    #[command(name = "oracle-count", hide = true)]
    OracleCount {
        #[command(flatten)]
        figure: FigureArg,
        #[arg(long, default_value_t = crate::oracle::DEFAULT_CELL_CAP)]
        cap: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Untileable(String),
    Usage(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Untileable(_) => EXIT_UNTILEABLE,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Untileable(m) | Failure::Usage(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_untileable() {
            return Failure::Untileable(e.to_string());
        }
        match e {
            Error::Figure(_) | Error::Tiling(_) => Failure::Usage(e.to_string()),
            Error::Sample(SampleError::NotTileable(u)) => Failure::Untileable(u.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(format!("write failed: {e}"))
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message());
            f.code()
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_board(arg: &FigureArg) -> Result<Board, Failure> {
    let text = read_text(&arg.file)?;
    let figure = Figure::parse(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", arg.file.display())))?;
    Ok(Board::new(figure))
}

fn load_tiling(board: &Board, path: &Path) -> Result<Tiling, Failure> {
    parse_tiling_json(board.figure(), &read_text(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit_json(out: &mut dyn Write, mut value: Value) -> Outcome {
    value["format"] = json!(JSON_FORMAT);
    writeln!(out, "{value}")?;
    Ok(())
}

fn vertex_json(v: GridVertex) -> Value {
    if v.copy == 0 {
        json!([v.x, v.y])
    } else {
        json!([v.x, v.y, v.copy])
    }
}

fn direction_name(d: FlipDirection) -> &'static str {
    match d {
        FlipDirection::Up => "up",
        FlipDirection::Down => "down",
    }
}

fn kind_name(k: ComponentKind) -> &'static str {
    match k {
        ComponentKind::Infinity => "infinity",
        ComponentKind::Single => "single",
        ComponentKind::Hole => "hole",
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Check(f) => check(&load_board(f)?, json, out),
        Command::Min(f) => extreme(&load_board(f)?, true, json, out),
        Command::Max(f) => extreme(&load_board(f)?, false, json, out),
        Command::Count(f) => {
            let n = load_board(f)?.count();
            if json {
                emit_json(out, json!({ "count": n }))
            } else {
                writeln!(out, "{n}")?;
                Ok(())
            }
        }
        Command::Enum { figure, limit } => enumerate(&load_board(figure)?, *limit, json, out),
        Command::Sample { figure, seed, n } => sample(&load_board(figure)?, *seed, *n, json, out),
        Command::Dist {
            figure,
            first,
            second,
            path,
        } => dist(&load_board(figure)?, first, second, *path, json, out),
        Command::Components(f) => components(&load_board(f)?, json, out),
        Command::Eq(f) => equilibrium(&load_board(f)?, json, out),
        Command::OracleCount { figure, cap } => {
            let board = load_board(figure)?;
            let set = brute_enumerate_capped(board.figure(), *cap)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            if json {
                emit_json(out, json!({ "count": set.len() }))
            } else {
                writeln!(out, "{}", set.len())?;
                Ok(())
            }
        }
    }
}

fn check(board: &Board, json: bool, out: &mut dyn Write) -> Outcome {
    let f = board.figure();
    let black = f.cells().iter().filter(|c| c.color() == Color::Black).count();
    let white = f.len() - black;
    let holes = board.graph().holes().len();
    let verdict = min_height(board.graph(), board.weights());
    if json {
        emit_json(
            out,
            json!({
                "cells": f.len(),
                "width": f.width(),
                "height": f.height(),
                "holes": holes,
                "black": black,
                "white": white,
                "tileable": verdict.is_ok(),
            }),
        )?;
    } else {
        writeln!(out, "cells: {}", f.len())?;
        writeln!(out, "size: {}x{}", f.width(), f.height())?;
        writeln!(out, "holes: {holes}")?;
        writeln!(out, "black: {black}, white: {white}")?;
        writeln!(out, "tileable: {}", if verdict.is_ok() { "yes" } else { "no" })?;
    }
    verdict.map(|_| ()).map_err(|e| Failure::Untileable(e.to_string()))
}

fn extreme(board: &Board, lowest: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let run = if lowest {
        min_height(board.graph(), board.weights())
    } else {
        max_height(board.graph(), board.weights())
    }
    .map_err(Error::from)?;
    let tiling = board.tiling(&run.height)?;
    if json {
        emit_json(
            out,
            json!({ "dominoes": dominoes_json(&tiling), "passes": run.passes }),
        )
    } else {
        write!(out, "{}", render_tiling(board.figure(), &tiling))?;
        Ok(())
    }
}

fn enumerate(board: &Board, limit: Option<usize>, json: bool, out: &mut dyn Write) -> Outcome {
    let tilings = board.enumerate()?.take(limit.unwrap_or(usize::MAX));
    if json {
        let list: Vec<Value> = tilings
            .map(|t| json!({ "dominoes": dominoes_json(&t) }))
            .collect();
        emit_json(out, json!({ "count": list.len(), "tilings": list }))
    } else {
        for (i, t) in tilings.enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "{}", render_tiling(board.figure(), &t))?;
        }
        Ok(())
    }
}

fn sample(board: &Board, seed: u64, n: u64, json: bool, out: &mut dyn Write) -> Outcome {
    let sampler = board.sampler()?;
    let mut samples = Vec::new();
    for k in 0..n {
        let s = seed.wrapping_add(k);
        let drawn = sampler.sample(s).map_err(Error::from)?;
        if json {
            samples.push(json!({
                "seed": s,
                "window": drawn.window,
                "dominoes": dominoes_json(&drawn.tiling),
            }));
        } else {
            if k > 0 {
                writeln!(out)?;
            }
            write!(out, "{}", render_tiling(board.figure(), &drawn.tiling))?;
        }
    }
    if json {
        emit_json(out, json!({ "samples": samples }))?;
    }
    Ok(())
}

fn flip_json(rep: GridVertex, flip: Flip) -> Value {
    json!({
        "component": flip.component,
        "direction": direction_name(flip.direction),
        "representative": vertex_json(rep),
    })
}

fn dist(
    board: &Board,
    first: &Path,
    second: &Path,
    with_path: bool,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let a = load_tiling(board, first)?;
    let b = load_tiling(board, second)?;
    let cg = board.components()?;
    let (ha, hb) = (board.height(&a)?, board.height(&b)?);
    let distance = crate::flips::flip_distance(&ha, &hb, &cg).map_err(Error::from)?;
    let local = local_flip_count(board.graph(), &ha, &hb).map_err(Error::from)?;
    let path = if with_path {
        Some(board.flip_path(&a, &b)?)
    } else {
        None
    };
    let rep = |f: &Flip| board.graph().vertex(cg.component(f.component).representative);
    if json {
        let mut v = json!({
            "distance": distance,
            "local_flip_connected": local.is_some(),
            "local_flips": local,
        });
        if let Some(p) = &path {
            v["path"] = p.iter().map(|f| flip_json(rep(f), *f)).collect();
        }
        emit_json(out, v)
    } else {
        writeln!(out, "distance: {distance}")?;
        match local {
            Some(k) => {
                writeln!(out, "local-flip connected: yes")?;
                writeln!(out, "local flips: {k}")?;
            }
            None => writeln!(out, "local-flip connected: no")?,
        }
        if let Some(p) = &path {
            for f in p {
                writeln!(
                    out,
                    "{} {} at {}",
                    direction_name(f.direction),
                    f.component,
                    rep(f)
                )?;
            }
        }
        Ok(())
    }
}

fn components(board: &Board, json: bool, out: &mut dyn Write) -> Outcome {
    let cg = board.components()?;
    let g = board.graph();
    if json {
        let list: Vec<Value> = cg
            .components()
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "kind": kind_name(c.kind),
                    "size": c.vertices.len(),
                    "representative": vertex_json(g.vertex(c.representative)),
                    "holes": c.holes,
                })
            })
            .collect();
        let edges: Vec<[usize; 2]> = cg
            .edges()
            .iter()
            .filter(|(a, b)| a < b)
            .map(|&(a, b)| [a, b])
            .collect();
        emit_json(out, json!({ "components": list, "edges": edges }))
    } else {
        writeln!(out, "components: {}", cg.len())?;
        for c in cg.components() {
            write!(
                out,
                "{} {} size={} rep={}",
                c.id,
                kind_name(c.kind),
                c.vertices.len(),
                g.vertex(c.representative)
            )?;
            if !c.holes.is_empty() {
                let holes: Vec<String> = c.holes.iter().map(usize::to_string).collect();
                write!(out, " holes={}", holes.join(","))?;
            }
            writeln!(out)?;
        }
        let edges: Vec<String> = cg
            .edges()
            .iter()
            .filter(|(a, b)| a < b)
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        writeln!(out, "edges: {}", edges.join(" "))?;
        Ok(())
    }
}

fn equilibrium(board: &Board, json: bool, out: &mut dyn Write) -> Outcome {
    let g = board.graph();
    let eq = board.equilibrium();
    let region_json = |r: Region| match r {
        Region::Outer => json!("outer"),
        Region::Hole(i) => json!(i),
    };
    if json {
        let holes: Vec<Value> = eq
            .cut_lines
            .iter()
            .map(|cl| {
                json!({
                    "id": cl.hole_id,
                    "step": eq.steps[cl.hole_id],
                    "column": cl.column,
                    "start_row": cl.start_row,
                    "end_row": cl.end_row,
                    "predecessor": region_json(cl.predecessor),
                })
            })
            .collect();
        let arcs: Vec<Value> = eq
            .nonzero()
            .map(|(a, v)| {
                let arc = g.arc(a);
                json!({
                    "from": vertex_json(g.vertex(arc.from)),
                    "to": vertex_json(g.vertex(arc.to)),
                    "value": v,
                })
            })
            .collect();
        emit_json(out, json!({ "holes": holes, "arcs": arcs }))
    } else {
        for cl in &eq.cut_lines {
            let pred = match cl.predecessor {
                Region::Outer => "outer".to_string(),
                Region::Hole(i) => format!("hole {i}"),
            };
            writeln!(
                out,
                "hole {}: step {} (cut x={}, rows {}..{}, to {pred})",
                cl.hole_id,
                eq.steps[cl.hole_id],
                cl.column,
                cl.start_row,
                cl.end_row
            )?;
        }
        for (a, v) in eq.nonzero() {
            let arc = g.arc(a);
            writeln!(out, "{}->{}: {v}", g.vertex(arc.from), g.vertex(arc.to))?;
        }
        Ok(())
    }
}
