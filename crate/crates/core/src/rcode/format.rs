//! Line-oriented code files.
//!
//! ```text
//! kind: matrix          kind: vector
//! q: 2                  q: 2
//! n: 3                  m: 3
//! m: 2                  modulus: 1 1 0 1
//! k: 1                  n: 3
//! generator:            k: 1
//! 1 0                   row: 1 2 4
//! 0 1
//! 0 0
//! ```
//!
//! `#` starts a comment. A leading `dual-of:` line makes the file describe
//! the dual of the code that follows. Vector entries are integers in
//! `[0, q^m)` read as base-q digit vectors in the polynomial basis.

use crate::error::{Error, Result};
use crate::gf::{ExtField, Field, Mat};

use super::{Code, MatrixCode, VectorCode};

#[derive(Default)]
struct Header {
    kind: Option<(usize, String)>,
    q: Option<u64>,
    n: Option<usize>,
    m: Option<usize>,
    k: Option<usize>,
    modulus: Option<(usize, Vec<u32>)>,
}

fn numbers(line: usize, s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(line, format!("bad number {t:?}"))))
        .collect()
}

fn single(line: usize, s: &str) -> Result<u64> {
    match numbers(line, s)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::parse(line, format!("expected one number, got {s:?}"))),
    }
}

pub fn parse_code(text: &str) -> Result<Code> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut dual = false;
    let mut h = Header::default();
    // generator blocks: (line of `generator:`, data lines)
    let mut blocks: Vec<(usize, Vec<(usize, &str)>)> = Vec::new();
    let mut rows: Vec<(usize, &str)> = Vec::new();

    for (idx, &(ln, l)) in lines.iter().enumerate() {
        let Some((key, val)) = l.split_once(':') else {
            match blocks.last_mut() {
                Some((_, data)) => data.push((ln, l)),
                None => return Err(Error::parse(ln, format!("unexpected line {l:?}"))),
            }
            continue;
        };
        let val = val.trim();
        match key.trim() {
            "dual-of" => {
                if idx != 0 || !val.is_empty() {
                    return Err(Error::parse(ln, "`dual-of:` must be the first line and stand alone"));
                }
                dual = true;
            }
            "kind" => h.kind = Some((ln, val.to_string())),
            "q" => h.q = Some(single(ln, val)?),
            "n" => h.n = Some(single(ln, val)? as usize),
            "m" => h.m = Some(single(ln, val)? as usize),
            "k" => h.k = Some(single(ln, val)? as usize),
            "modulus" => {
                let coeffs = numbers(ln, val)?.into_iter().map(|c| c as u32).collect();
                h.modulus = Some((ln, coeffs));
            }
            "generator" => {
                if !val.is_empty() {
                    return Err(Error::parse(ln, "`generator:` takes no value"));
                }
                blocks.push((ln, Vec::new()));
            }
            "row" => rows.push((ln, val)),
            other => return Err(Error::parse(ln, format!("unknown key {other:?}"))),
        }
    }

    let last = lines.last().map_or(1, |l| l.0);
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::parse(last, format!("missing `{name}:`")));
    let (kind_line, kind) = h.kind.clone().ok_or_else(|| Error::parse(last, "missing `kind:`"))?;
    let q = h.q.ok_or_else(|| Error::parse(last, "missing `q:`"))?;
    let field = Field::new(q)?;
    let (n, m, k) = (need(h.n, "n")?, need(h.m, "m")?, need(h.k, "k")?);

    let code = match kind.as_str() {
        "matrix" => {
            if !rows.is_empty() {
                return Err(Error::parse(rows[0].0, "`row:` belongs to vector codes"));
            }
            if blocks.len() != k {
                return Err(Error::parse(
                    last,
                    format!("k is {k} but {} generators are given", blocks.len()),
                ));
            }
            let mut gens = Vec::with_capacity(k);
            for (start, data) in &blocks {
                if data.len() != n {
                    return Err(Error::parse(
                        *start,
                        format!("generator has {} rows, expected {n}", data.len()),
                    ));
                }
                let mut entries = Vec::with_capacity(n * m);
                for &(ln, l) in data {
                    let r = numbers(ln, l)?;
                    if r.len() != m {
                        return Err(Error::parse(ln, format!("row has {} entries, expected {m}", r.len())));
                    }
                    if let Some(x) = r.iter().find(|&&x| x >= q) {
                        return Err(Error::parse(ln, format!("entry {x} outside GF({q})")));
                    }
                    entries.extend(r.into_iter().map(|x| x as u32));
                }
                gens.push(Mat::from_vec(n, m, entries));
            }
            Code::Matrix(MatrixCode::new(field, n, m, gens)?)
        }
        "vector" => {
            if let Some((ln, _)) = blocks.first() {
                return Err(Error::parse(*ln, "`generator:` belongs to matrix codes"));
            }
            let ext = match h.modulus {
                Some((ln, coeffs)) => {
                    if coeffs.len() != m + 1 {
                        return Err(Error::parse(ln, format!("modulus needs {} coefficients", m + 1)));
                    }
                    ExtField::with_modulus(field, coeffs)?
                }
                None => ExtField::new(field, m)?,
            };
            if rows.len() != k {
                return Err(Error::parse(
                    last,
                    format!("k is {k} but {} rows are given", rows.len()),
                ));
            }
            let mut g = Mat::zeros(k, n);
            for (i, &(ln, l)) in rows.iter().enumerate() {
                let r = numbers(ln, l)?;
                if r.len() != n {
                    return Err(Error::parse(ln, format!("row has {} entries, expected {n}", r.len())));
                }
                for (j, &x) in r.iter().enumerate() {
                    if x >= ext.order() as u64 {
                        return Err(Error::parse(ln, format!("entry {x} outside GF({})", ext.order())));
                    }
                    g.set(i, j, x as u32);
                }
            }
            Code::Vector(VectorCode::new(ext, g)?)
        }
        other => return Err(Error::parse(kind_line, format!("unknown kind {other:?}"))),
    };
    Ok(if dual { code.dual() } else { code })
}

pub fn write_code(code: &Code) -> String {
    let mut out = String::new();
    match code {
        Code::Matrix(c) => {
            out.push_str(&format!(
                "kind: matrix\nq: {}\nn: {}\nm: {}\nk: {}\n",
                c.field().order(),
                c.n(),
                c.m(),
                c.k()
            ));
            for g in c.generators() {
                out.push_str("generator:\n");
                out.push_str(&g.to_string());
            }
        }
        Code::Vector(c) => {
            let modulus: Vec<String> = c.ext().modulus().iter().map(u32::to_string).collect();
            out.push_str(&format!(
                "kind: vector\nq: {}\nm: {}\nmodulus: {}\nn: {}\nk: {}\n",
                c.base().order(),
                c.m(),
                modulus.join(" "),
                c.n(),
                c.k()
            ));
            for i in 0..c.k() {
                let r: Vec<String> = c.generator().row(i).iter().map(u32::to_string).collect();
                out.push_str(&format!("row: {}\n", r.join(" ")));
            }
        }
    }
    out
}
