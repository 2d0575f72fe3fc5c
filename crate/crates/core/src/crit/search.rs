use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Mat, Subspace};
use crate::rcode::Code;

use super::{CritMethod, CritResult, CritValue, Witness};

/// First codeword, in enumeration order, for every nonzero support that
/// occurs. Words of vector codes are returned in expanded matrix form.
pub fn support_representatives(c: &Code) -> Result<BTreeMap<Subspace, Mat>> {
    let f = c.base_field().clone();
    let words: Vec<Mat> = match c {
        Code::Matrix(mc) => mc.words()?,
        Code::Vector(vc) => vc.words()?.par_iter().map(|x| vc.ext().gamma_expand(x)).collect(),
    };
    let supports: Vec<Subspace> = words.par_iter().map(|x| x.colspace(&f)).collect();
    let mut reps = BTreeMap::new();
    for (x, s) in words.into_iter().zip(supports) {
        if !s.is_zero() {
            reps.entry(s).or_insert(x);
        }
    }
    Ok(reps)
}

/// Least number of codewords whose supports sum to `F_q^n`, which is the
/// least dimension of a subcode with full support.
///
/// Breadth-first over partial support sums, trying supports in a fixed
/// order; the first full sum found gives the witnesses. Fails with
/// `ResourceLimit` if the search would go past `t_max` words.
pub fn crit_oracle(c: &Code, t_max: Option<usize>) -> Result<CritResult> {
    let f = c.base_field().clone();
    let n = c.n();
    let reps = support_representatives(c)?;
    let full = Subspace::full(&f, n);
    let done = |value, witnesses| CritResult {
        value,
        method: CritMethod::SubcodeSearch,
        witnesses,
    };
    if !c.is_nondegenerate() {
        return Ok(done(CritValue::Infinity, None));
    }
    let zero = Subspace::zero(n);
    if full == zero {
        return Ok(done(CritValue::Finite(0), Some(Witness::Words(Vec::new()))));
    }

    // state -> (previous state, support added)
    let mut parent: HashMap<Subspace, (Subspace, Subspace)> = HashMap::new();
    let mut frontier = vec![zero.clone()];
    let mut t = 0;
    loop {
        t += 1;
        if t_max.is_some_and(|cap| t > cap) {
            return Err(Error::limit("subcode search depth", t, t_max.unwrap_or(0) as u64));
        }
        let mut next = Vec::new();
        for state in &frontier {
            for s in reps.keys() {
                let joined = state.join(&f, s);
                if joined == zero || parent.contains_key(&joined) {
                    continue;
                }
                parent.insert(joined.clone(), (state.clone(), s.clone()));
                if joined == full {
                    let mut words = Vec::with_capacity(t);
                    let mut cur = joined;
                    while cur != zero {
                        let (prev, s) = parent[&cur].clone();
                        words.push(reps[&s].clone());
                        cur = prev;
                    }
                    words.reverse();
                    return Ok(done(CritValue::Finite(t as u64), Some(Witness::Words(words))));
                }
                next.push(joined);
            }
        }
        if next.is_empty() {
            return Err(Error::Internal(
                "support search stalled on a non-degenerate code".into(),
            ));
        }
        frontier = next;
    }
}

/// Whether `words` are `t` codewords of `c` (in matrix form) whose supports
/// sum to the whole space.
pub fn verify_witness(c: &Code, t: u64, words: &[Mat]) -> bool {
    if words.len() as u64 != t {
        return false;
    }
    let f = c.base_field();
    let mc = c.to_matrix_code();
    let mut sum = Subspace::zero(c.n());
    for x in words {
        if x.rows() != c.n() || x.cols() != c.m() || !mc.contains(x) {
            return false;
        }
        sum = sum.join(f, &x.colspace(f));
    }
    sum.is_full()
}
