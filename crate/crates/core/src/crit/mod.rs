//! Critical exponents, tuple counts by support, and the checks built on
//! them.

mod family;
mod hyperplanes;
mod search;
mod structures;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::gf::{Mat, Subspace};
use crate::lattice::Lattice;
use crate::qpm::QPolymatroid;
use crate::rcode::Code;
use crate::wlat::WeightedLattice;

pub use family::{bounds_and_family, check_critical_inequalities, BoundsAndFamily, Prediction};
pub use hyperplanes::{crit_via_hyperplanes, q_system};
pub use search::{crit_oracle, support_representatives, verify_witness};
pub use structures::{count_structures, StructureCount, StructureKind, StructureSpec};

/// A critical exponent. Orders every finite value below infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CritValue {
    Finite(u64),
    Infinity,
}

impl CritValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            CritValue::Finite(t) => Some(t),
            CritValue::Infinity => None,
        }
    }
}

impl Ord for CritValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CritValue::Finite(a), CritValue::Finite(b)) => a.cmp(b),
            (CritValue::Finite(_), CritValue::Infinity) => Ordering::Less,
            (CritValue::Infinity, CritValue::Finite(_)) => Ordering::Greater,
            (CritValue::Infinity, CritValue::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for CritValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for CritValue {
    type Output = CritValue;
    fn add(self, rhs: CritValue) -> CritValue {
        match (self, rhs) {
            (CritValue::Finite(a), CritValue::Finite(b)) => CritValue::Finite(a + b),
            _ => CritValue::Infinity,
        }
    }
}

impl fmt::Display for CritValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CritValue::Finite(t) => write!(f, "{t}"),
            CritValue::Infinity => f.write_str("infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CritMethod {
    Formula,
    SubcodeSearch,
    HyperplaneSearch,
}

impl fmt::Display for CritMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CritMethod::Formula => "formula",
            CritMethod::SubcodeSearch => "subcode-search",
            CritMethod::HyperplaneSearch => "hyperplane-search",
        })
    }
}

/// What realises a critical exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Codewords in matrix form whose supports sum to the whole space.
    Words(Vec<Mat>),
    /// Normal vectors `h` of F_{q^m}-hyperplanes `{y : y·h = 0}` meeting
    /// the q-system trivially.
    Hyperplanes(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CritResult {
    pub value: CritValue,
    pub method: CritMethod,
    pub witnesses: Option<Witness>,
}

impl CritResult {
    fn formula(value: CritValue) -> Self {
        CritResult {
            value,
            method: CritMethod::Formula,
            witnesses: None,
        }
    }
}

/// Least `t ≥ 0` with `P(W; base^t) > 0`, or infinity when `W` has a loop.
/// A trivial interval has exponent 0.
pub fn crit_weighted<L: Lattice>(w: &WeightedLattice<L>, base: u64) -> Result<CritValue> {
    if !w.loops()?.is_empty() {
        return Ok(CritValue::Infinity);
    }
    let p = w.char_poly_direct()?;
    let base = BigInt::from(base);
    // P is monic of degree f(hi), so it is positive for large enough t.
    let limit = w.total() + 64;
    for t in 0..=limit {
        if p.eval(&base.pow(t as u32)).is_positive() {
            return Ok(CritValue::Finite(t));
        }
    }
    Err(Error::Internal(format!(
        "characteristic polynomial {p} stays non-positive up to exponent {limit}"
    )))
}

/// The critical exponent of `M`, evaluating at powers of `M.base()`.
///
/// Polymatroids of codes must reach positivity by `ρ(E)`; anything later
/// is an internal error.
pub fn crit(m: &QPolymatroid) -> Result<CritResult> {
    let value = crit_weighted(m.weighted(), m.base())?;
    if let (Some(_), CritValue::Finite(t)) = (m.source(), value) {
        if t > m.weighted().total() {
            return Err(Error::Internal(format!(
                "critical exponent {t} exceeds the rank {} of a code polymatroid",
                m.weighted().total()
            )));
        }
    }
    Ok(CritResult::formula(value))
}

/// `P(M/U^⊥; base^t)`: the number of `t`-tuples of codewords whose supports
/// sum to exactly `U`.
pub fn count_tuples_formula(m: &QPolymatroid, t: u32, u: &Subspace) -> Result<BigUint> {
    let minor = m.contraction(&m.lattice().perp(u))?;
    let value = minor.char_poly()?.eval(&BigInt::from(m.base()).pow(t));
    value
        .to_biguint()
        .ok_or_else(|| Error::Internal(format!("negative tuple count {value} at {}", u.compact())))
}

/// Distribution of `Σ supp(X_i)` over all `t`-tuples of codewords, built by
/// repeatedly combining the codeword support distribution.
pub fn tuple_support_distribution(c: &Code, t: u32) -> Result<BTreeMap<Subspace, BigUint>> {
    let words = c.support_distribution()?;
    let f = c.base_field().clone();
    let mut acc: BTreeMap<Subspace, BigUint> = BTreeMap::new();
    acc.insert(Subspace::zero(c.n()), BigUint::from(1u8));
    for _ in 0..t {
        acc = convolve(&f, &acc, &words);
    }
    Ok(acc)
}

pub(crate) fn convolve<C>(
    f: &crate::gf::Field,
    acc: &BTreeMap<Subspace, BigUint>,
    step: &BTreeMap<Subspace, C>,
) -> BTreeMap<Subspace, BigUint>
where
    C: Clone + Into<BigUint>,
{
    let mut next: BTreeMap<Subspace, BigUint> = BTreeMap::new();
    for (a, ca) in acc {
        for (s, cs) in step {
            *next.entry(a.join(f, s)).or_default() += ca * cs.clone().into();
        }
    }
    next
}

/// Same count as [`count_tuples_formula`], from the codewords themselves.
pub fn count_tuples_brute(c: &Code, t: u32, u: &Subspace) -> Result<BigUint> {
    Ok(tuple_support_distribution(c, t)?.get(u).cloned().unwrap_or_default())
}
