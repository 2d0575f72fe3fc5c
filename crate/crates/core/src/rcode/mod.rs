//! Matrix and vector rank-metric codes.

mod format;
mod matrix;
mod vector;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gf::{Field, Mat, Subspace};
use crate::lattice::{mobius_by_height, Lattice, SubspaceLattice};

pub use format::{parse_code, write_code};
pub use matrix::MatrixCode;
pub use vector::VectorCode;

/// Default limit on codewords visited by exhaustive operations.
pub const WORD_CAP: u64 = 1 << 24;

/// Little-endian base-`q` digits of `idx`, `len` of them.
pub(crate) fn index_digits(mut idx: u64, q: u32, len: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push((idx % q as u64) as u32);
        idx /= q as u64;
    }
    d
}

pub(crate) fn check_puncture(f: &Field, a: &Mat, drop: &[usize], n: usize) -> Result<()> {
    if a.rows() != n || a.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "puncturing matrix is {}x{}, expected {n}x{n}",
            a.rows(),
            a.cols()
        )));
    }
    a.validate(f)?;
    if drop.is_empty() || drop.len() >= n {
        return Err(Error::InvalidIndexSet(format!(
            "need 0 < |I| < {n}, got {} indices",
            drop.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in drop {
        if i >= n || seen[i] {
            return Err(Error::InvalidIndexSet(format!(
                "index {} out of range or repeated",
                i + 1
            )));
        }
        seen[i] = true;
    }
    a.inverse(f)?;
    Ok(())
}

/// Either kind of rank-metric code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Code {
    Matrix(MatrixCode),
    Vector(VectorCode),
}

/// Singleton-bound data and family membership of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: usize,
    pub m: usize,
    /// F_q-dimension.
    pub k: usize,
    pub d: usize,
    pub dual_d: usize,
    /// `max(m,n)(min(m,n) - d + 1) - k`.
    pub singleton_defect: i64,
    pub mrd: bool,
    pub qmrd: bool,
    pub dqmrd: bool,
    pub one_bmd: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parameters: [{}x{},{},{}]", self.n, self.m, self.k, self.d)?;
        writeln!(f, "dual distance: {}", self.dual_d)?;
        writeln!(f, "singleton defect: {}", self.singleton_defect)?;
        writeln!(f, "MRD: {}", self.mrd)?;
        writeln!(f, "QMRD: {}", self.qmrd)?;
        writeln!(f, "DQMRD: {}", self.dqmrd)?;
        writeln!(f, "1-BMD: {}", self.one_bmd)
    }
}

fn is_mrd(n: usize, m: usize, k: usize, d: usize) -> bool {
    let (lo, hi) = (n.min(m), n.max(m));
    k.is_multiple_of(hi) && d + k / hi == lo + 1
}

fn is_qmrd(n: usize, m: usize, k: usize, d: usize) -> bool {
    let (lo, hi) = (n.min(m), n.max(m));
    !k.is_multiple_of(hi) && d + k.div_ceil(hi) == lo + 1
}

/// Distance data of a matrix code: minimum rank of a nonzero word, or
/// `min(n,m) + 1` for the zero code.
fn distance_from_weights(w: &[u64]) -> usize {
    w.iter()
        .enumerate()
        .skip(1)
        .find(|(_, &c)| c > 0)
        .map_or(w.len(), |(i, _)| i)
}

/// Classifies a matrix code by its own and its dual's minimum distance.
pub fn classify_matrix_code(c: &MatrixCode) -> Result<Classification> {
    let (n, m, k) = (c.n(), c.m(), c.k());
    let d = distance_from_weights(&weights_from_supports(&c.support_distribution()?, n.min(m)));
    let dual = c.dual();
    let dual_d = distance_from_weights(&weights_from_supports(&dual.support_distribution()?, n.min(m)));
    let (lo, hi) = (n.min(m), n.max(m));
    let singleton_defect = (hi * (lo + 1)) as i64 - (hi * d) as i64 - k as i64;
    let mrd = is_mrd(n, m, k, d);
    let qmrd = is_qmrd(n, m, k, d);
    let dqmrd = qmrd && is_qmrd(n, m, n * m - k, dual_d);
    Ok(Classification {
        n,
        m,
        k,
        d,
        dual_d,
        singleton_defect,
        mrd,
        qmrd,
        dqmrd,
        one_bmd: lo < d + dual_d,
    })
}

/// `W_i` = number of codewords of rank `i`, for `i = 0..=r`.
pub fn weights_from_supports(dist: &BTreeMap<Subspace, u64>, r: usize) -> Vec<u64> {
    let mut w = vec![0; r + 1];
    for (s, c) in dist {
        w[s.dim()] += c;
    }
    w
}

impl Code {
    pub fn kind(&self) -> &'static str {
        match self {
            Code::Matrix(_) => "matrix",
            Code::Vector(_) => "vector",
        }
    }

    pub fn base_field(&self) -> &Field {
        match self {
            Code::Matrix(c) => c.field(),
            Code::Vector(c) => c.base(),
        }
    }

    pub fn q(&self) -> u64 {
        self.base_field().order() as u64
    }

    pub fn n(&self) -> usize {
        match self {
            Code::Matrix(c) => c.n(),
            Code::Vector(c) => c.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Code::Matrix(c) => c.m(),
            Code::Vector(c) => c.m(),
        }
    }

    /// Dimension over the code's own scalar field.
    pub fn k(&self) -> usize {
        match self {
            Code::Matrix(c) => c.k(),
            Code::Vector(c) => c.k(),
        }
    }

    /// Dimension over F_q.
    pub fn base_dim(&self) -> usize {
        match self {
            Code::Matrix(c) => c.k(),
            Code::Vector(c) => c.k() * c.m(),
        }
    }

    /// Size of the scalar field: `q` for matrix codes, `q^m` for vector codes.
    pub fn scalar_order(&self) -> u64 {
        match self {
            Code::Matrix(c) => c.field().order() as u64,
            Code::Vector(c) => c.ext().order() as u64,
        }
    }

    pub fn with_cap(self, cap: u64) -> Self {
        match self {
            Code::Matrix(c) => Code::Matrix(c.with_cap(cap)),
            Code::Vector(c) => Code::Vector(c.with_cap(cap)),
        }
    }

    pub fn support(&self) -> Subspace {
        match self {
            Code::Matrix(c) => c.support(),
            Code::Vector(c) => c.support(),
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.support().is_full()
    }

    /// `dim_{F_q} C_U`.
    pub fn shortened_base_dim(&self, u: &Subspace) -> usize {
        match self {
            Code::Matrix(c) => c.shortened_dim(u),
            Code::Vector(c) => (c.k() - c.rank_g(u)) * c.m(),
        }
    }

    pub fn dual(&self) -> Code {
        match self {
            Code::Matrix(c) => Code::Matrix(c.dual()),
            Code::Vector(c) => Code::Vector(c.dual()),
        }
    }

    pub fn puncture(&self, a: &Mat, drop: &[usize]) -> Result<Code> {
        Ok(match self {
            Code::Matrix(c) => Code::Matrix(c.puncture(a, drop)?),
            Code::Vector(c) => Code::Vector(c.puncture(a, drop)?),
        })
    }

    pub fn to_matrix_code(&self) -> MatrixCode {
        match self {
            Code::Matrix(c) => c.clone(),
            Code::Vector(c) => c.to_matrix_code(),
        }
    }

    /// Number of codewords with each support, by enumeration.
    pub fn support_distribution(&self) -> Result<BTreeMap<Subspace, u64>> {
        match self {
            Code::Matrix(c) => c.support_distribution(),
            Code::Vector(c) => c.support_distribution(),
        }
    }

    /// `W_0, ..., W_{min(n,m)}` by enumeration.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        Ok(weights_from_supports(
            &self.support_distribution()?,
            self.n().min(self.m()),
        ))
    }

    /// Least rank of a nonzero codeword; `min(n,m) + 1` for the zero code.
    pub fn min_distance(&self) -> Result<usize> {
        Ok(distance_from_weights(&self.weight_distribution()?))
    }

    /// Classification of the F_q-linear matrix form of the code.
    pub fn classify(&self) -> Result<Classification> {
        classify_matrix_code(&self.to_matrix_code())
    }

    /// Number of codewords whose support is exactly `v`, by inclusion and
    /// exclusion over `[0, v]` on shortened-code sizes.
    pub fn count_exact_support(&self, v: &Subspace) -> Result<BigUint> {
        let f = self.base_field().clone();
        let q = self.q();
        let lat = SubspaceLattice::new(f.clone(), self.n());
        let mut total = BigInt::zero();
        for w in lat.enumerate(&lat.bottom(), v, None)? {
            let size = BigInt::from(q).pow(self.shortened_base_dim(&w.perp(&f)) as u32);
            total += mobius_by_height(q, v.dim() - w.dim()) * size;
        }
        total
            .to_biguint()
            .ok_or_else(|| Error::Internal(format!("negative support count for {}", v.compact())))
    }

    /// Same count by enumerating every codeword.
    pub fn count_exact_support_brute(&self, v: &Subspace) -> Result<u64> {
        Ok(self.support_distribution()?.get(v).copied().unwrap_or(0))
    }
}
