use crate::error::Result;
use crate::lattice::Lattice;
use crate::poly::IntPoly;
use crate::report::Report;

use super::WeightedLattice;

#[derive(Clone, Debug)]
pub struct IdentityOptions {
    /// Polymatroid parameter; coloop identities are skipped without it.
    pub r: Option<u64>,
    /// Treat the weight as submodular without checking.
    pub assume_submodular: bool,
    /// Largest interval on which submodularity is checked pair by pair.
    pub submodular_cap: usize,
    /// Height-2 restrictions examined for the diamond identity.
    pub max_diamonds: usize,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions {
            r: None,
            assume_submodular: false,
            submodular_cap: 400,
            max_diamonds: 200,
        }
    }
}

/// The pieces of `z^(f(1)-f(H)) P(W|_H) - Σ_{y atom, y ≰ H} P(W/y)`.
#[derive(Clone, Debug)]
pub struct DecompositionTerms<E> {
    pub coatom: E,
    pub gap: u64,
    pub restriction: IntPoly,
    pub contractions: Vec<(E, IntPoly)>,
    pub total: IntPoly,
}

pub fn decomposition_terms<L: Lattice>(w: &WeightedLattice<L>, h: &L::Elem) -> Result<DecompositionTerms<L::Elem>> {
    let l = w.lattice();
    if !w.interval().coatoms()?.contains(h) {
        return Err(crate::Error::InvalidCoatom);
    }
    let gap = w.total() - w.f(h);
    let restriction = w.restriction(h)?.char_poly_direct()?;
    let mut total = &IntPoly::monomial(1, gap as usize) * &restriction;
    let mut contractions = Vec::new();
    for y in w.interval().atoms()? {
        if !l.leq(&y, h) {
            let p = w.contraction(&y)?.char_poly_direct()?;
            total = &total - &p;
            contractions.push((y, p));
        }
    }
    Ok(DecompositionTerms {
        coatom: h.clone(),
        gap,
        restriction,
        contractions,
        total,
    })
}

fn sum_contractions<'a, L: Lattice>(w: &WeightedLattice<L>, ys: impl Iterator<Item = &'a L::Elem>) -> Result<IntPoly>
where
    L::Elem: 'a,
{
    let mut s = IntPoly::zero();
    for y in ys {
        s = &s + &w.contraction(y)?.char_poly_direct()?;
    }
    Ok(s)
}

/// Checks every decomposition identity for the characteristic polynomial
/// that applies to `w`, one report line per identity instance.
pub fn check_identities<L: Lattice>(w: &WeightedLattice<L>, opts: &IdentityOptions) -> Result<Report> {
    let mut rep = Report::new("characteristic polynomial identities");
    let l = w.lattice();
    let iv = w.interval();
    let p = w.char_poly_direct()?;
    if w.height() == 0 {
        rep.compare("trivial interval", "", &p, &IntPoly::one());
        return Ok(rep);
    }

    rep.compare("value at 1 vanishes", "", &p.eval_i64(1), &0.into());

    let mut chardec = IntPoly::monomial(1, w.total() as usize);
    let elems = iv.enumerate(None)?;
    for b in elems.iter().filter(|b| **b != *w.lo()) {
        chardec = &chardec - &w.contraction(b)?.char_poly_direct()?;
    }
    rep.compare("top monomial minus upper contractions", "", &chardec, &p);

    if w.closure_is_respectful()? {
        for a in &elems {
            if !w.is_flat(a)? {
                let c = w.contraction(a)?.char_poly_direct()?;
                rep.compare("contraction by non-flat vanishes", l.render(a), &c, &IntPoly::zero());
            }
        }
    } else {
        rep.skip(
            "contraction by non-flat vanishes",
            "",
            "hypothesis not met: principal closure is not respectful",
        );
    }

    let submodular = if opts.assume_submodular {
        Some(true)
    } else if elems.len() <= opts.submodular_cap {
        Some(w.is_submodular()?)
    } else {
        None
    };

    let atoms = iv.atoms()?;
    for h in iv.coatoms()? {
        let hp = l.render(&h);
        rep.compare(
            "recursive matches direct",
            format!("H={hp}"),
            &w.char_poly_recursive(Some(&h))?,
            &p,
        );

        let outside: Vec<&L::Elem> = atoms.iter().filter(|y| !l.leq(y, &h)).collect();
        let restr = w.restriction(&h)?.char_poly_direct()?;
        let over = w.contraction(&h)?.char_poly_direct()?;
        let tail = sum_contractions(w, outside.iter().copied())?;

        let one_step = &(&restr * &(&over + &IntPoly::one())) - &tail;
        rep.compare("coatom decomposition", format!("H={hp}"), &one_step, &p);

        let gap = w.total() - w.f(&h);
        let scaled = &(&IntPoly::monomial(1, gap as usize) * &restr) - &tail;
        rep.compare("scaled restriction decomposition", format!("H={hp}"), &scaled, &p);

        if w.is_flat(&h)? {
            rep.skip("non-flat coatom decomposition", format!("H={hp}"), "H is a flat");
        } else {
            rep.compare(
                "non-flat coatom decomposition",
                format!("H={hp}"),
                &(&restr - &tail),
                &p,
            );
        }

        match submodular {
            Some(true) => {}
            Some(false) => {
                rep.skip(
                    "loop complement",
                    format!("H={hp}"),
                    "hypothesis not met: weight is not submodular",
                );
                rep.skip(
                    "coloop decomposition",
                    format!("H={hp}"),
                    "hypothesis not met: weight is not submodular",
                );
                continue;
            }
            None => {
                rep.skip(
                    "loop complement",
                    format!("H={hp}"),
                    "hypothesis not met: submodularity not verified",
                );
                rep.skip(
                    "coloop decomposition",
                    format!("H={hp}"),
                    "hypothesis not met: submodularity not verified",
                );
                continue;
            }
        }

        // the complements of a coatom are exactly the atoms outside it
        if outside.iter().any(|y| w.f(y) == 0) {
            rep.compare("loop complement", format!("H={hp}"), &restr, &tail);
        } else {
            rep.skip(
                "loop complement",
                format!("H={hp}"),
                "hypothesis not met: no complement of H is a loop",
            );
        }

        match opts.r {
            None => rep.skip(
                "coloop decomposition",
                format!("H={hp}"),
                "hypothesis not met: r unknown",
            ),
            Some(r) if gap != r => rep.skip(
                "coloop decomposition",
                format!("H={hp}"),
                "hypothesis not met: H is not a coloop",
            ),
            Some(_) => {
                for e in &outside {
                    let pe = w.restriction(e)?.char_poly_direct()?;
                    let ce = w.contraction(e)?.char_poly_direct()?;
                    let rest = sum_contractions(w, outside.iter().copied().filter(|y| y != e))?;
                    let rhs = &(&pe * &ce) - &rest;
                    rep.compare("coloop decomposition", format!("H={hp} e={}", l.render(e)), &rhs, &p);
                }
            }
        }
    }

    if w.height() >= 2 {
        let tops = iv.level(2)?;
        for x in tops.iter().take(opts.max_diamonds) {
            let d = w.restriction(x)?;
            let dp = d.char_poly_direct()?;
            let datoms = d.interval().atoms()?;
            for e in &datoms {
                let lhs = &(&d.restriction(e)?.char_poly_direct()?
                    * &(&d.contraction(e)?.char_poly_direct()? + &IntPoly::one()))
                    - &sum_contractions(&d, datoms.iter().filter(|a| *a != e))?;
                rep.compare("diamond", format!("X={} e={}", l.render(x), l.render(e)), &lhs, &dp);
            }
        }
        if tops.len() > opts.max_diamonds {
            rep.skip(
                "diamond",
                "",
                format!(
                    "{} further height-2 restrictions not examined",
                    tops.len() - opts.max_diamonds
                ),
            );
        }
    }
    Ok(rep)
}
