use std::fs;
use std::path::Path;

use qcrit_core::fixtures;
use qcrit_core::gf::Subspace;
use qcrit_core::lattice::{Lattice, SubspaceLattice};
use qcrit_core::rcode::{parse_code, Code};
use qcrit_core::wlat::{parse_wlat, LoadedWlat};

use crate::CliError;

pub enum Input {
    Code(Code),
    Wlat(LoadedWlat),
}

/// Reads `src` as a file path, falling back to a built-in fixture name.
pub fn read_text(src: &str) -> Result<String, CliError> {
    if Path::new(src).exists() {
        return fs::read_to_string(src).map_err(|e| CliError::Io(format!("{src}: {e}")));
    }
    if src == "ex3_7" {
        return Ok(fixtures::EX3_7_WLAT.to_string());
    }
    fixtures::code_text(src).map(str::to_string).ok_or_else(|| {
        CliError::Io(format!(
            "{src}: no such file or built-in fixture (built-ins: ex3_7, {})",
            fixtures::CODE_NAMES.join(", ")
        ))
    })
}

fn is_wlat(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().next() == Some("wlat"))
}

pub fn load(src: &str, cap: Option<u64>) -> Result<Input, CliError> {
    let text = read_text(src)?;
    if is_wlat(&text) {
        return Ok(Input::Wlat(parse_wlat(&text)?));
    }
    let code = parse_code(&text)?;
    Ok(Input::Code(match cap {
        Some(c) => code.with_cap(c),
        None => code,
    }))
}

pub fn load_code(src: &str, cap: Option<u64>) -> Result<Code, CliError> {
    match load(src, cap)? {
        Input::Code(c) => Ok(c),
        Input::Wlat(_) => Err(CliError::Usage(format!(
            "{src}: expected a code file, got a weighted lattice"
        ))),
    }
}

/// Rows of length `n` over GF(q), one per line, as digit strings or
/// whitespace-separated entries. `#` starts a comment.
pub fn read_rows(path: &str, n: usize, q: u64) -> Result<Vec<Vec<u32>>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::Core(qcrit_core::Error::Parse { line: i + 1, msg });
        let row: Vec<u32> = if line.contains(char::is_whitespace) {
            line.split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(format!("bad entry {t:?}"))))
                .collect::<Result<_, _>>()?
        } else {
            line.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad(format!("bad digit {c:?}"))))
                .collect::<Result<_, _>>()?
        };
        if row.len() != n {
            return Err(bad(format!("row has {} entries, expected {n}", row.len())));
        }
        if let Some(x) = row.iter().find(|&&x| x as u64 >= q) {
            return Err(bad(format!("entry {x} outside GF({q})")));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The span of the rows in `path`.
pub fn read_subspace(path: &str, lat: &SubspaceLattice) -> Result<Subspace, CliError> {
    let rows = read_rows(path, lat.rank(), lat.field().order() as u64)?;
    Ok(lat.span(&rows))
}
