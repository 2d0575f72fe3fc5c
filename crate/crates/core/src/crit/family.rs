use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::Result;
use crate::gf::Subspace;
use crate::lattice::Lattice;
use crate::qpm::QPolymatroid;
use crate::rcode::{classify_matrix_code, Code};
use crate::report::Report;

use super::{crit, crit_weighted, CritValue};

/// A predicted exponent and the family rule that gave it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub value: u64,
    pub rule: &'static str,
}

#[derive(Clone, Debug)]
pub struct BoundsAndFamily {
    /// `⌈n/m⌉`.
    pub lower: u64,
    /// Dimension over the scalar field.
    pub upper: u64,
    pub crit: CritValue,
    /// First applicable rule, if any.
    pub prediction: Option<Prediction>,
    /// Every applicable rule, checked against the computed exponent.
    pub report: Report,
}

fn rules(c: &Code) -> Result<Vec<Prediction>> {
    let (n, m) = (c.n(), c.m());
    let nondeg = c.is_nondegenerate();
    let ceil = n.div_ceil(m) as u64;
    let mut out = Vec::new();
    if !nondeg {
        return Ok(out);
    }
    if let Code::Vector(v) = c {
        out.push(Prediction {
            value: ceil,
            rule: "F_{q^m}-linear and non-degenerate",
        });
        if v.k() >= 2 && n == m * v.k() {
            out.push(Prediction {
                value: v.k() as u64,
                rule: "simplex [mk,k]",
            });
        }
    }
    let k = c.base_dim();
    if n >= 2 && m == n - 1 && k == n {
        out.push(Prediction {
            value: ceil,
            rule: "m = n-1, k = n, non-degenerate",
        });
    }
    if n <= m {
        let cl = classify_matrix_code(&c.to_matrix_code())?;
        if cl.mrd {
            out.push(Prediction {
                value: ceil,
                rule: "n <= m and MRD",
            });
        }
    } else {
        let d = c.min_distance()?;
        if n + d <= 2 * m {
            let cl = classify_matrix_code(&c.to_matrix_code())?;
            if cl.one_bmd {
                out.push(Prediction {
                    value: ceil,
                    rule: "m < n <= 2m-d and 1-BMD",
                });
            }
        }
    }
    Ok(out)
}

/// The bounds `⌈n/m⌉ ≤ crit ≤ k`, and the exact value predicted by the
/// known families, each checked against the computed exponent.
pub fn bounds_and_family(c: &Code) -> Result<BoundsAndFamily> {
    let value = crit(&QPolymatroid::from_code(c))?.value;
    let lower = c.n().div_ceil(c.m()) as u64;
    let upper = c.k() as u64;
    let params = format!("n={} m={} k={}", c.n(), c.m(), c.k());
    let mut report = Report::new("bounds and families");
    if c.is_nondegenerate() {
        report.check("lower bound", params.clone(), CritValue::Finite(lower) <= value, || {
            (lower.to_string(), value.to_string())
        });
        report.check("upper bound", params.clone(), value <= CritValue::Finite(upper), || {
            (value.to_string(), upper.to_string())
        });
    } else {
        report.compare("degenerate code", params.clone(), &value, &CritValue::Infinity);
    }
    let preds = rules(c)?;
    if preds.is_empty() {
        report.skip("family prediction", params.clone(), "no family rule applies");
    }
    for p in &preds {
        report.compare(
            &format!("family prediction ({})", p.rule),
            params.clone(),
            &CritValue::Finite(p.value),
            &value,
        );
    }
    Ok(BoundsAndFamily {
        lower,
        upper,
        crit: value,
        prediction: preds.into_iter().next(),
        report,
    })
}

fn minimal(set: &[Subspace], lat: &impl Lattice<Elem = Subspace>) -> BTreeSet<Subspace> {
    set.iter()
        .filter(|x| !set.iter().any(|y| y != *x && lat.leq(y, x)))
        .cloned()
        .collect()
}

/// Checks, over the whole lattice:
/// - `crit(M|T) ≤ crit(M) ≤ crit(M|T) + crit(M|T')` for `T ⊕ T' = E`, and
///   `crit(M) ≤ crit(M.T) + crit(M.T')`;
/// - for each `U`, some `W` with `W ∩ U = 0` has `crit(M/W) ≤ crit(M|U)`;
/// - `crit(M|T) ≤ crit(M/U)` for every complement `T` of `U`;
/// - for `n ≤ 4` and each `ℓ`, the minimal `S` with `crit(M|S') ≤ ℓ` for
///   every complement `S'` are the minimal `S` with `crit(M/S) ≤ ℓ`.
pub fn check_critical_inequalities(m: &QPolymatroid) -> Result<Report> {
    let mut rep = Report::new("critical exponent inequalities");
    let lat = m.lattice();
    let base = m.base();
    if !m.loops()?.is_empty() {
        rep.skip("inequalities", "", "polymatroid has loops");
        return Ok(rep);
    }
    let all = lat.full().enumerate(None)?;
    let top = lat.top();
    let bottom = lat.bottom();
    let restricted: Vec<CritValue> = all
        .par_iter()
        .map(|s| crit_weighted(&m.weighted().restriction(s)?, base))
        .collect::<Result<_>>()?;
    let contracted: Vec<CritValue> = all
        .par_iter()
        .map(|s| crit_weighted(&m.weighted().contraction(s)?, base))
        .collect::<Result<_>>()?;
    let index: HashMap<&Subspace, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let whole = restricted[index[&top]];
    let complements: Vec<Vec<usize>> = all
        .par_iter()
        .map(|s| Ok(lat.full().complements(s)?.iter().map(|t| index[t]).collect()))
        .collect::<Result<_>>()?;

    // crit(M.T) = crit(M/T^⊥)
    let contracted_to: Vec<CritValue> = all.iter().map(|t| contracted[index[&lat.perp(t)]]).collect();

    let mut pairs = 0usize;
    let mut below = Vec::new();
    let mut above = Vec::new();
    let mut above_to = Vec::new();
    for (i, comps) in complements.iter().enumerate() {
        for &j in comps {
            pairs += 1;
            if restricted[i] > whole {
                below.push((i, j));
            }
            if whole > restricted[i] + restricted[j] {
                above.push((i, j));
            }
            if whole > contracted_to[i] + contracted_to[j] {
                above_to.push((i, j));
            }
        }
    }
    rep.check(
        "restriction is at most the whole",
        format!("{pairs} pairs"),
        below.is_empty(),
        || {
            let (i, _) = below[0];
            (
                format!("crit(M|{}) = {}", all[i].compact(), restricted[i]),
                format!("crit(M) = {whole}"),
            )
        },
    );
    rep.check(
        "whole is at most the sum over a direct sum",
        format!("{pairs} pairs"),
        above.is_empty(),
        || {
            let (i, j) = above[0];
            (
                format!("crit(M) = {whole}"),
                format!(
                    "crit(M|{}) + crit(M|{}) = {}",
                    all[i].compact(),
                    all[j].compact(),
                    restricted[i] + restricted[j]
                ),
            )
        },
    );
    rep.check(
        "whole is at most the sum over contractions to a direct sum",
        format!("{pairs} pairs"),
        above_to.is_empty(),
        || {
            let (i, j) = above_to[0];
            (
                format!("crit(M) = {whole}"),
                format!(
                    "crit(M.{}) + crit(M.{}) = {}",
                    all[i].compact(),
                    all[j].compact(),
                    contracted_to[i] + contracted_to[j]
                ),
            )
        },
    );

    let mut no_w = Vec::new();
    let mut over = Vec::new();
    for (u, s) in all.iter().enumerate() {
        let exists = all
            .iter()
            .enumerate()
            .any(|(w, ws)| lat.meet(ws, s) == bottom && contracted[w] <= restricted[u]);
        if !exists {
            no_w.push(u);
        }
        for &t in &complements[u] {
            if restricted[t] > contracted[u] {
                over.push((u, t));
            }
        }
    }
    rep.check(
        "some contraction off U is at most the restriction to U",
        format!("{} subspaces", all.len()),
        no_w.is_empty(),
        || {
            let u = no_w[0];
            (
                format!("U = {}", all[u].compact()),
                format!("crit(M|U) = {}", restricted[u]),
            )
        },
    );
    rep.check(
        "restriction to a complement is at most the contraction",
        format!("{pairs} pairs"),
        over.is_empty(),
        || {
            let (u, t) = over[0];
            (
                format!("crit(M|{}) = {}", all[t].compact(), restricted[t]),
                format!("crit(M/{}) = {}", all[u].compact(), contracted[u]),
            )
        },
    );

    if lat.rank() > 4 {
        rep.skip("minimal sets", format!("n={}", lat.rank()), "checked for n <= 4 only");
        return Ok(rep);
    }
    let top_l = whole.finite().unwrap_or(0).max(1);
    for l in 1..=top_l {
        let lv = CritValue::Finite(l);
        let a: Vec<Subspace> = (0..all.len())
            .filter(|&s| complements[s].iter().all(|&t| restricted[t] <= lv))
            .map(|s| all[s].clone())
            .collect();
        let b: Vec<Subspace> = (0..all.len())
            .filter(|&s| contracted[s] <= lv)
            .map(|s| all[s].clone())
            .collect();
        let (ma, mb) = (minimal(&a, lat), minimal(&b, lat));
        let render = |s: &BTreeSet<Subspace>| {
            let v: Vec<String> = s.iter().map(Subspace::compact).collect();
            format!("{{{}}}", v.join(", "))
        };
        let extra_a: BTreeSet<Subspace> = ma.difference(&mb).cloned().collect();
        let extra_b: BTreeSet<Subspace> = mb.difference(&ma).cloned().collect();
        rep.check(
            "minimal for contractions are minimal for complements",
            format!("l={l}"),
            extra_b.is_empty(),
            || (render(&extra_b), "not minimal for complements".into()),
        );
        rep.check(
            "minimal for complements are minimal for contractions",
            format!("l={l}"),
            extra_a.is_empty(),
            || (render(&extra_a), "not minimal for contractions".into()),
        );
    }
    Ok(rep)
}
