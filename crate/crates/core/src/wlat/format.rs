//! Text format for explicit weighted lattices:
//!
//! ```text
//! wlat <q> <n> [r]
//! <height> <element> <weight>
//! ```
//!
//! An element is its basis rows joined by `;` (each row a digit string, or
//! comma-separated entries when q > 10), or `-` for the bottom. With `q = 1`
//! the lattice is Boolean and an element is an indicator string of length n.

use crate::error::{Error, Result};
use crate::gf::{Field, Subspace};
use crate::lattice::{BooleanLattice, Lattice, SubspaceLattice};

use super::WeightedLattice;

/// A parsed weighted lattice together with its polymatroid parameter `r`
/// (given in the header or the smallest value the weights allow).
#[derive(Debug)]
pub enum LoadedWlat {
    Subspace(WeightedLattice<SubspaceLattice>, u64),
    Boolean(WeightedLattice<BooleanLattice>, u64),
}

fn parse_row(line: usize, s: &str, n: usize, q: u32) -> Result<Vec<u32>> {
    let row: Vec<u32> = if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad entry {t:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::parse(line, format!("bad digit {c:?}")))
            })
            .collect::<Result<_>>()?
    };
    if row.len() != n {
        return Err(Error::parse(
            line,
            format!("row {s:?} has {} entries, expected {n}", row.len()),
        ));
    }
    if let Some(x) = row.iter().find(|&&x| x >= q) {
        return Err(Error::parse(line, format!("entry {x} outside GF({q})")));
    }
    Ok(row)
}

pub fn parse_wlat(text: &str) -> Result<LoadedWlat> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"wlat") || !(3..=4).contains(&toks.len()) {
        return Err(Error::parse(hl, "expected header `wlat <q> <n> [r]`"));
    }
    let num = |t: &str| {
        t.parse::<u64>()
            .map_err(|_| Error::parse(hl, format!("bad number {t:?}")))
    };
    let (q, n) = (num(toks[1])?, num(toks[2])? as usize);
    let r = toks.get(3).map(|t| num(t)).transpose()?;

    let mut raw = Vec::new();
    for (ln, l) in lines {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 3 {
            return Err(Error::parse(ln, "expected `<height> <element> <weight>`"));
        }
        let h: usize = t[0].parse().map_err(|_| Error::parse(ln, "bad height"))?;
        let w: u64 = t[2].parse().map_err(|_| Error::parse(ln, "bad weight"))?;
        raw.push((ln, h, t[1], w));
    }

    if q == 1 {
        if n > 63 {
            return Err(Error::InvalidParams(
                "Boolean lattice supports at most 63 points".into(),
            ));
        }
        let lat = BooleanLattice::new(n);
        let mut entries = Vec::new();
        for (ln, h, e, w) in raw {
            let mask = if e == "-" {
                0
            } else {
                let bits = parse_row(ln, e, n, 2)?;
                bits.iter().enumerate().fold(0u64, |m, (i, &b)| m | (b as u64) << i)
            };
            if mask.count_ones() as usize != h {
                return Err(Error::parse(ln, format!("element {e} does not have height {h}")));
            }
            entries.push((mask, w));
        }
        let wl = WeightedLattice::from_table(lat, entries)?;
        let r = match r {
            Some(r) => r,
            None => wl.infer_r()?,
        };
        return Ok(LoadedWlat::Boolean(wl, r));
    }

    let field = Field::new(q)?;
    let lat = SubspaceLattice::new(field.clone(), n);
    let mut entries = Vec::new();
    for (ln, h, e, w) in raw {
        let s = if e == "-" {
            Subspace::zero(n)
        } else {
            let rows = e
                .split(';')
                .map(|row| parse_row(ln, row, n, field.order()))
                .collect::<Result<Vec<_>>>()?;
            Subspace::span_vectors(&field, n, &rows)
        };
        if s.dim() != h {
            return Err(Error::parse(
                ln,
                format!("element {e} spans dimension {}, not {h}", s.dim()),
            ));
        }
        entries.push((s, w));
    }
    let wl = WeightedLattice::from_table(lat, entries)?;
    let r = match r {
        Some(r) => r,
        None => wl.infer_r()?,
    };
    Ok(LoadedWlat::Subspace(wl, r))
}

/// Writes every element of the interval in enumeration order.
pub fn write_wlat<L: Lattice>(w: &WeightedLattice<L>) -> Result<String> {
    let l = w.lattice();
    let mut out = format!("wlat {} {}\n", l.q(), l.rank());
    for x in w.interval().enumerate(None)? {
        out.push_str(&format!("{} {} {}\n", l.height(&x), l.render(&x), w.raw_weight(&x)));
    }
    Ok(out)
}
