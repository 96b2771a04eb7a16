//! Tiling JSON and ASCII rendering.

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::grid::{Cell, Figure};
use crate::tiling::{validate_tiling, Tiling, TilingError};

/// Version stamped into every JSON document as `"format"`.
pub const JSON_FORMAT: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid tiling JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported JSON format {0}")]
    Format(u32),
    #[error("invalid tiling: {0}")]
    Tiling(#[from] TilingError),
}

#[derive(Debug, Deserialize)]
struct TilingDoc {
    #[serde(default)]
    format: Option<u32>,
    dominoes: Vec<[[i32; 2]; 2]>,
}

fn domino_pairs(tiling: &Tiling) -> Vec<[[i32; 2]; 2]> {
    tiling
        .dominoes()
        .iter()
        .map(|d| {
            let [a, b] = d.cells();
            [[a.x, a.y], [b.x, b.y]]
        })
        .collect()
}

/// `[[[x,y],[x',y']], ...]`, the value of the `"dominoes"` key.
pub fn dominoes_json(tiling: &Tiling) -> Value {
    json!(domino_pairs(tiling))
}

/// A standalone tiling document: `{"format": 1, "dominoes": [...]}`.
pub fn tiling_to_json(tiling: &Tiling) -> Value {
    json!({ "format": JSON_FORMAT, "dominoes": dominoes_json(tiling) })
}

/// Parses a tiling document for `figure`. The `"format"` key is optional;
/// unknown keys are ignored so that any command's tiling output is accepted.
pub fn parse_tiling_json(figure: &Figure, text: &str) -> Result<Tiling, IoError> {
    let doc: TilingDoc = serde_json::from_str(text)?;
    if let Some(f) = doc.format.filter(|&f| f != JSON_FORMAT) {
        return Err(IoError::Format(f));
    }
    let pairs = doc
        .dominoes
        .into_iter()
        .map(|[[x0, y0], [x1, y1]]| (Cell::new(x0, y0), Cell::new(x1, y1)));
    Ok(validate_tiling(figure, pairs)?)
}

/// One letter per domino, cycling through `a..=z`; cells outside the figure
/// are spaces. Rows run top to bottom, trailing spaces are trimmed.
pub fn render_tiling(figure: &Figure, tiling: &Tiling) -> String {
    let owner = tiling.cell_owner(figure);
    let origin = figure.origin();
    let (w, h) = (figure.width(), figure.height());
    let mut grid = vec![vec![' '; w]; h];
    for (cell, o) in figure.cells().iter().zip(&owner) {
        let ch = match o {
            Some(i) => (b'a' + (i % 26) as u8) as char,
            None => '?',
        };
        let col = (cell.x - origin.x) as usize;
        let row = h - 1 - (cell.y - origin.y) as usize;
        grid[row][col] = ch;
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
