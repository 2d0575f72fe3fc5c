use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Mat, Subspace};
use crate::rcode::VectorCode;

use super::{CritMethod, CritResult, CritValue, Witness};

/// The F_q-span of the columns of `G` inside `F_q^{mk}`. Coordinate
/// `i·m + d` holds digit `d` of row `i`.
pub fn q_system(c: &VectorCode) -> Subspace {
    let (m, k) = (c.m(), c.k());
    let mut cols = Mat::zeros(c.n(), m * k);
    for j in 0..c.n() {
        for i in 0..k {
            for (d, &x) in c.ext().digits(c.generator().get(i, j)).iter().enumerate() {
                cols.set(j, i * m + d, x);
            }
        }
    }
    cols.rowspace(c.base())
}

/// `{y : y·h = 0}` as an F_q-subspace of `F_q^{mk}`.
fn hyperplane(c: &VectorCode, h: &[u32]) -> Subspace {
    let (m, k) = (c.m(), c.k());
    let big = c.ext().field();
    let mut b = Mat::zeros(m, m * k);
    for (i, &hi) in h.iter().enumerate() {
        for d in 0..m {
            let image = big.mul(c.ext().basis_element(d), hi);
            for (row, &x) in c.ext().digits(image).iter().enumerate() {
                b.set(row, i * m + d, x);
            }
        }
    }
    b.kernel(c.base())
}

/// Normal vectors of the F_{q^m}-hyperplanes of `F_{q^m}^k`, one per
/// hyperplane, first nonzero entry 1, in increasing index order.
fn normals(c: &VectorCode) -> Result<Vec<Vec<u32>>> {
    let order = c.ext().order() as u64;
    let k = c.k() as u32;
    let total = order.checked_pow(k).filter(|&t| t <= c.cap());
    let Some(total) = total else {
        return Err(Error::limit(
            "hyperplane enumeration",
            num_bigint::BigUint::from(order).pow(k),
            c.cap(),
        ));
    };
    Ok((1..total)
        .filter_map(|idx| {
            let h = crate::rcode::index_digits(idx, order as u32, c.k());
            (h.iter().find(|&&x| x != 0) == Some(&1)).then_some(h)
        })
        .collect())
}

/// Least number of F_{q^m}-hyperplanes whose intersection meets the
/// q-system in 0. Breadth-first over intersections.
pub fn crit_via_hyperplanes(c: &VectorCode) -> Result<CritResult> {
    let f = c.base().clone();
    let sys = q_system(c);
    if sys.dim() < c.n() {
        return Err(Error::DegenerateCode);
    }
    let done = |t: usize, hs: Vec<Vec<u32>>| CritResult {
        value: CritValue::Finite(t as u64),
        method: CritMethod::HyperplaneSearch,
        witnesses: Some(Witness::Hyperplanes(hs)),
    };
    if sys.is_zero() {
        return Ok(done(0, Vec::new()));
    }
    let hs = normals(c)?;
    let planes: Vec<Subspace> = hs.par_iter().map(|h| hyperplane(c, h)).collect();

    // state -> (previous state, hyperplane index)
    let mut parent: HashMap<Subspace, (Subspace, usize)> = HashMap::new();
    parent.insert(sys.clone(), (sys.clone(), usize::MAX));
    let mut frontier = vec![sys.clone()];
    let mut t = 0;
    while !frontier.is_empty() {
        t += 1;
        let mut next = Vec::new();
        for state in &frontier {
            for (i, p) in planes.iter().enumerate() {
                let cut = state.meet(&f, p);
                if parent.contains_key(&cut) {
                    continue;
                }
                parent.insert(cut.clone(), (state.clone(), i));
                if cut.is_zero() {
                    let mut chosen = Vec::with_capacity(t);
                    let mut cur = cut;
                    while cur != sys {
                        let (prev, i) = parent[&cur].clone();
                        chosen.push(hs[i].clone());
                        cur = prev;
                    }
                    chosen.reverse();
                    return Ok(done(t, chosen));
                }
                next.push(cut);
            }
        }
        frontier = next;
    }
    Err(Error::Internal("hyperplane intersections never reached 0".into()))
}
