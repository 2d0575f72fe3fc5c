//! Dense polynomials over a [`Field`], coefficients in ascending degree.
//! Only what extension-field construction needs: reduction, modular
//! products and irreducibility by trial division.

use super::field::Field;
use crate::error::{Error, Result};

pub(crate) fn digits(mut x: u32, q: u32, m: usize) -> Vec<u32> {
    let mut out = vec![0; m];
    for d in out.iter_mut() {
        *d = x % q;
        x /= q;
    }
    out
}

pub(crate) fn from_digits(d: &[u32], q: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * q + c)
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem(f: &Field, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let t = f.mul(lead, c);
            r[shift + i] = f.sub(r[shift + i], t);
        }
        r = trim(r);
    }
    r
}

fn pad(mut v: Vec<u32>, len: usize) -> Vec<u32> {
    v.resize(len, 0);
    v
}

/// `a * b mod modulus`, operands given as length-`deg(modulus)` digit vectors.
pub(crate) fn mul_mod(f: &Field, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    pad(rem(f, &prod, modulus), m)
}

pub(crate) fn mul_by_x_mod(f: &Field, a: &[u32], modulus: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let top = a[m - 1];
    let mut out = vec![0u32; m];
    out[1..m].copy_from_slice(&a[..m - 1]);
    if top != 0 {
        for i in 0..m {
            out[i] = f.sub(out[i], f.mul(top, modulus[i]));
        }
    }
    out
}

pub(crate) fn pow_mod(f: &Field, a: &[u32], mut e: u64, modulus: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut acc = vec![0u32; m];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(f, &acc, &base, modulus);
        }
        base = mul_mod(f, &base, &base, modulus);
        e >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &Field, poly: &[u32]) -> bool {
    let poly = trim(poly.to_vec());
    let deg = match poly.len() {
        0 | 1 => return false,
        l => l - 1,
    };
    let q = f.order() as u64;
    for d in 1..=deg / 2 {
        let count = q.pow(d as u32);
        for code in 0..count {
            let mut div = digits(code as u32, f.order(), d);
            div.push(1);
            // make the candidate monic so `rem` applies, then test divisibility
            if rem(f, &monic(f, &poly), &div).is_empty() {
                return false;
            }
        }
    }
    true
}

fn monic(f: &Field, p: &[u32]) -> Vec<u32> {
    let lead_inv = f.inv(*p.last().unwrap());
    p.iter().map(|&c| f.mul(c, lead_inv)).collect()
}

/// Smallest monic irreducible of degree `m` over `f`, ordering candidates by
/// the base-q integer of their low coefficients `(a_0, ..., a_{m-1})`.
pub(crate) fn smallest_irreducible_over(f: &Field, m: usize) -> Vec<u32> {
    let q = f.order() as u64;
    let count = q.pow(m as u32);
    for code in 0..count {
        let mut cand = digits(code as u32, f.order(), m);
        cand.push(1);
        if is_irreducible(f, &cand) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Smallest monic irreducible polynomial of degree `m` over GF(q), as an
/// ascending coefficient sequence of length `m + 1`.
pub fn smallest_irreducible(q: u64, m: usize) -> Result<Vec<u32>> {
    if m == 0 {
        return Err(Error::InvalidParams("degree must be at least 1".into()));
    }
    let f = Field::new(q)?;
    if (q as f64).powi(m as i32) > super::field::MAX_ORDER as f64 {
        return Err(Error::InvalidField(q));
    }
    Ok(smallest_irreducible_over(&f, m))
}
