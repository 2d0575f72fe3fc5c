use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Subspace;
use crate::lattice::{gaussian_binomial, mobius_by_height, Lattice, SubspaceLattice};
use crate::qpm::{scaling_equivalence, QPolymatroid};
use crate::rcode::MatrixCode;

use super::convolve;

/// Largest number of word tuples enumerated for a brute count.
const TUPLE_CAP: u64 = 1 << 24;
/// Largest number of subcode tuples enumerated for a brute count.
const SUBCODE_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureKind {
    /// `t`-tuples of words of the first code.
    WordTuples(u32),
    /// One word from each code.
    CrossCode,
    /// Subcodes of the given dimensions, one per entry, taken from the
    /// matching code (or all from the single code given).
    Subcodes(Vec<usize>),
}

/// Structures counted by the support they span. Every code must share
/// `n` and `q`, and have a polymatroid that is a rescaling of the first
/// code's.
#[derive(Clone, Debug)]
pub struct StructureSpec {
    pub kind: StructureKind,
    pub codes: Vec<MatrixCode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCount {
    pub formula: BigUint,
    /// Absent when enumeration would exceed the brute-force caps.
    pub brute: Option<BigUint>,
    /// `ℓ_i` with `ρ = ℓ_i ρ_i`, one per factor.
    pub scalings: Vec<BigRational>,
}

enum Factor<'a> {
    Words(&'a MatrixCode),
    Subcodes(&'a MatrixCode, usize),
}

impl Factor<'_> {
    fn code(&self) -> &MatrixCode {
        match self {
            Factor::Words(c) | Factor::Subcodes(c, _) => c,
        }
    }

    /// Number of structures of this factor inside a code of dimension `dim`.
    fn theta(&self, dim: u64, q: u64) -> BigInt {
        match self {
            Factor::Words(_) => BigInt::from(q).pow(dim as u32),
            Factor::Subcodes(_, d) => BigInt::from(gaussian_binomial(dim, *d as u64, q)),
        }
    }

    fn size(&self, q: u64) -> BigUint {
        let k = self.code().k() as u64;
        match self {
            Factor::Words(_) => BigUint::from(q).pow(k as u32),
            Factor::Subcodes(_, d) => gaussian_binomial(k, *d as u64, q),
        }
    }

    /// Number of structures with each support.
    fn distribution(&self) -> Result<BTreeMap<Subspace, u64>> {
        match self {
            Factor::Words(c) => c.support_distribution(),
            Factor::Subcodes(c, d) => {
                let f = c.field().clone();
                let coeffs = SubspaceLattice::new(f.clone(), c.k());
                let subs = coeffs.full().level(*d)?;
                let supports: Vec<Subspace> = subs
                    .par_iter()
                    .map(|s| {
                        s.rows()
                            .fold(Subspace::zero(c.n()), |acc, a| acc.join(&f, &c.word(a).colspace(&f)))
                    })
                    .collect();
                let mut out = BTreeMap::new();
                for s in supports {
                    *out.entry(s).or_default() += 1;
                }
                Ok(out)
            }
        }
    }
}

fn factors(spec: &StructureSpec) -> Result<Vec<Factor<'_>>> {
    let codes = &spec.codes;
    if codes.is_empty() {
        return Err(Error::InvalidParams(
            "structure counting needs at least one code".into(),
        ));
    }
    let (n, q) = (codes[0].n(), codes[0].field().order());
    if let Some(c) = codes.iter().find(|c| c.n() != n || c.field().order() != q) {
        return Err(Error::DimensionMismatch(format!(
            "codes must share n={n} and q={q}, got n={} and q={}",
            c.n(),
            c.field().order()
        )));
    }
    Ok(match &spec.kind {
        StructureKind::WordTuples(t) => (0..*t).map(|_| Factor::Words(&codes[0])).collect(),
        StructureKind::CrossCode => codes.iter().map(Factor::Words).collect(),
        StructureKind::Subcodes(dims) => {
            if codes.len() != 1 && codes.len() != dims.len() {
                return Err(Error::InvalidParams(format!(
                    "{} dimensions given for {} codes",
                    dims.len(),
                    codes.len()
                )));
            }
            let mut out = Vec::with_capacity(dims.len());
            for (i, &d) in dims.iter().enumerate() {
                let c = if codes.len() == 1 { &codes[0] } else { &codes[i] };
                if d > c.k() {
                    return Err(Error::InvalidParams(format!(
                        "subcode dimension {d} exceeds k={}",
                        c.k()
                    )));
                }
                out.push(Factor::Subcodes(c, d));
            }
            out
        }
    })
}

/// Counts structures whose supports sum to exactly `U^⊥`, by Möbius
/// inversion over `[U, E]` on the sizes of shortened codes, and directly
/// when the enumeration fits the caps.
pub fn count_structures(spec: &StructureSpec, u: &Subspace) -> Result<StructureCount> {
    let factors = factors(spec)?;
    let first = &spec.codes[0];
    let q = first.field().order() as u64;
    let k = BigRational::from_integer(first.k().into());
    let m = QPolymatroid::from_matrix_code(first);

    let mut scalings = Vec::with_capacity(factors.len());
    for fac in &factors {
        let c = fac.code();
        let l = scaling_equivalence(&m, &QPolymatroid::from_matrix_code(c))?
            .ok_or_else(|| Error::ScalingMismatch("polymatroids are not rescalings of each other".into()))?;
        if &l * BigRational::from_integer(c.k().into()) != k {
            return Err(Error::ScalingMismatch(format!(
                "scaling {l} times k={} does not give k={}",
                c.k(),
                first.k()
            )));
        }
        scalings.push(l);
    }

    let lat = m.lattice();
    let mut total = BigInt::zero();
    for v in lat.enumerate(u, &lat.top(), None)? {
        let gap = &k - BigRational::from_integer(m.rank(&v).into());
        let mut theta = BigInt::one();
        for (fac, l) in factors.iter().zip(&scalings) {
            let dim = &gap / l;
            if !dim.is_integer() {
                return Err(Error::ScalingMismatch(format!(
                    "(k - rho)/l = {dim} is not an integer at {}",
                    v.compact()
                )));
            }
            let dim: u64 = dim
                .to_integer()
                .try_into()
                .map_err(|_| Error::ScalingMismatch(format!("negative dimension at {}", v.compact())))?;
            theta *= fac.theta(dim, q);
        }
        total += mobius_by_height(q, v.dim() - u.dim()) * theta;
    }
    let formula = total
        .to_biguint()
        .ok_or_else(|| Error::Internal(format!("negative structure count at {}", u.compact())))?;

    let work: BigUint = factors.iter().map(|f| f.size(q)).product();
    let cap = match spec.kind {
        StructureKind::Subcodes(_) => SUBCODE_CAP,
        _ => TUPLE_CAP,
    };
    let brute = if work <= BigUint::from(cap) {
        let f = first.field().clone();
        let mut acc: BTreeMap<Subspace, BigUint> = BTreeMap::new();
        acc.insert(Subspace::zero(first.n()), BigUint::one());
        for fac in &factors {
            acc = convolve(&f, &acc, &fac.distribution()?);
        }
        Some(acc.get(&lat.perp(u)).cloned().unwrap_or_default())
    } else {
        None
    };
    Ok(StructureCount {
        formula,
        brute,
        scalings,
    })
}
