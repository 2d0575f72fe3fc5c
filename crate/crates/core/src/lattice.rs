//! The subspace lattice of `F_q^n` and the Boolean lattice on `n` points
//! behind one interface.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf::{Field, Mat, Subspace};

/// Default bound on the number of elements a single enumeration may produce.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Number of `k`-dimensional subspaces of `F_q^n`; the ordinary binomial
/// coefficient when `q = 1`.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    if q.is_one() {
        let (mut num, mut den) = (BigUint::one(), BigUint::one());
        for i in 0..k {
            num *= n - i;
            den *= i + 1;
        }
        return num / den;
    }
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// `(-1)^d q^(d choose 2)`, the Möbius value across a height difference `d`.
pub fn mobius_by_height(q: u64, d: usize) -> BigInt {
    let mag = BigInt::from(q).pow((d * d.saturating_sub(1) / 2) as u32);
    if d.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

pub trait Lattice: Clone + Send + Sync + Debug + 'static {
    type Elem: Clone + Ord + Hash + Debug + Send + Sync + 'static;

    /// `q`, or 1 for the Boolean lattice.
    fn q(&self) -> u64;
    fn rank(&self) -> usize;
    fn cap(&self) -> u64;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn height(&self, x: &Self::Elem) -> usize;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Elements of `[lo, hi]`, optionally only those of height `height`,
    /// ordered by height and then by canonical encoding.
    fn enumerate(&self, lo: &Self::Elem, hi: &Self::Elem, height: Option<usize>) -> Result<Vec<Self::Elem>>;

    /// Compact one-line text form.
    fn render(&self, x: &Self::Elem) -> String;

    fn mobius(&self, a: &Self::Elem, b: &Self::Elem) -> BigInt {
        if !self.leq(a, b) {
            return BigInt::zero();
        }
        mobius_by_height(self.q(), self.height(b) - self.height(a))
    }

    /// Size of `[lo, hi]` restricted to an optional height, assuming `lo ≤ hi`.
    fn interval_count(&self, lo: &Self::Elem, hi: &Self::Elem, height: Option<usize>) -> BigUint {
        let (a, b) = (self.height(lo) as u64, self.height(hi) as u64);
        let r = b - a;
        match height {
            Some(h) if (h as u64) < a || (h as u64) > b => BigUint::zero(),
            Some(h) => gaussian_binomial(r, h as u64 - a, self.q()),
            None => (0..=r).map(|k| gaussian_binomial(r, k, self.q())).sum(),
        }
    }

    fn check_cap(&self, what: &'static str, count: &BigUint) -> Result<()> {
        match count.to_u64() {
            Some(c) if c <= self.cap() => Ok(()),
            _ => Err(Error::limit(what, count, self.cap())),
        }
    }

    fn interval(&self, lo: Self::Elem, hi: Self::Elem) -> Result<Interval<'_, Self>> {
        Interval::new(self, lo, hi)
    }

    fn full(&self) -> Interval<'_, Self> {
        Interval {
            lattice: self,
            lo: self.bottom(),
            hi: self.top(),
        }
    }
}

/// A closed interval `[lo, hi]` of a lattice.
#[derive(Clone, Debug)]
pub struct Interval<'a, L: Lattice> {
    pub lattice: &'a L,
    pub lo: L::Elem,
    pub hi: L::Elem,
}

impl<'a, L: Lattice> Interval<'a, L> {
    pub fn new(lattice: &'a L, lo: L::Elem, hi: L::Elem) -> Result<Self> {
        if !lattice.leq(&lo, &hi) {
            return Err(Error::InvalidInterval);
        }
        Ok(Interval { lattice, lo, hi })
    }

    pub fn height(&self) -> usize {
        self.lattice.height(&self.hi) - self.lattice.height(&self.lo)
    }

    pub fn contains(&self, x: &L::Elem) -> bool {
        self.lattice.leq(&self.lo, x) && self.lattice.leq(x, &self.hi)
    }

    pub fn enumerate(&self, height: Option<usize>) -> Result<Vec<L::Elem>> {
        self.lattice.enumerate(&self.lo, &self.hi, height)
    }

    /// Elements of the given height relative to `lo`.
    pub fn level(&self, rel: usize) -> Result<Vec<L::Elem>> {
        self.enumerate(Some(self.lattice.height(&self.lo) + rel))
    }

    pub fn atoms(&self) -> Result<Vec<L::Elem>> {
        if self.height() == 0 {
            return Ok(Vec::new());
        }
        self.level(1)
    }

    pub fn coatoms(&self) -> Result<Vec<L::Elem>> {
        self.covers_below(&self.hi)
    }

    /// Elements of the interval covered by `v`.
    pub fn covers_below(&self, v: &L::Elem) -> Result<Vec<L::Elem>> {
        let h = self.lattice.height(v);
        if h == self.lattice.height(&self.lo) {
            return Ok(Vec::new());
        }
        self.lattice.enumerate(&self.lo, v, Some(h - 1))
    }

    /// Elements of the interval covering `v`.
    pub fn covers_above(&self, v: &L::Elem) -> Result<Vec<L::Elem>> {
        let h = self.lattice.height(v);
        if h == self.lattice.height(&self.hi) {
            return Ok(Vec::new());
        }
        self.lattice.enumerate(v, &self.hi, Some(h + 1))
    }

    /// All `d` in the interval with `u ∧ d = lo` and `u ∨ d = hi`.
    pub fn complements(&self, u: &L::Elem) -> Result<Vec<L::Elem>> {
        let l = self.lattice;
        let h = l.height(&self.hi) + l.height(&self.lo) - l.height(u);
        let cands = self.enumerate(Some(h))?;
        Ok(cands
            .into_iter()
            .filter(|d| l.meet(u, d) == self.lo && l.join(u, d) == self.hi)
            .collect())
    }
}

/// The lattice of subspaces of `F_q^n`.
#[derive(Clone, Debug)]
pub struct SubspaceLattice {
    field: Field,
    n: usize,
    cap: u64,
}

impl SubspaceLattice {
    pub fn new(field: Field, n: usize) -> Self {
        SubspaceLattice {
            field,
            n,
            cap: DEFAULT_CAP,
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn perp(&self, x: &Subspace) -> Subspace {
        x.perp(&self.field)
    }

    pub fn span(&self, vectors: &[Vec<u32>]) -> Subspace {
        Subspace::span_vectors(&self.field, self.n, vectors)
    }
}

/// Subspaces of `F_q^r` of dimension `k`, generated by RREF profile:
/// choose pivot columns, then fill the free positions.
fn rref_profiles(f: &Field, r: usize, k: usize, mut emit: impl FnMut(&Mat)) {
    let q = f.order();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..r {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let mut m = Mat::zeros(k, r);
        for (i, &p) in pivots.iter().enumerate() {
            m.set(i, p, 1);
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            for (&(i, j), &d) in free.iter().zip(&digits) {
                m.set(i, j, d);
            }
            emit(&m);
            // odometer over the free entries
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
        // next combination of pivot columns
        let Some(i) = (0..k).rev().find(|&i| pivots[i] < r - k + i) else {
            break;
        };
        pivots[i] += 1;
        for j in i + 1..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
}

impl Lattice for SubspaceLattice {
    type Elem = Subspace;

    fn q(&self) -> u64 {
        self.field.order() as u64
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn cap(&self) -> u64 {
        self.cap
    }

    fn bottom(&self) -> Subspace {
        Subspace::zero(self.n)
    }

    fn top(&self) -> Subspace {
        Subspace::full(&self.field, self.n)
    }

    fn height(&self, x: &Subspace) -> usize {
        x.dim()
    }

    fn leq(&self, a: &Subspace, b: &Subspace) -> bool {
        a.leq(&self.field, b)
    }

    fn join(&self, a: &Subspace, b: &Subspace) -> Subspace {
        a.join(&self.field, b)
    }

    fn meet(&self, a: &Subspace, b: &Subspace) -> Subspace {
        a.meet(&self.field, b)
    }

    fn enumerate(&self, lo: &Subspace, hi: &Subspace, height: Option<usize>) -> Result<Vec<Subspace>> {
        if !self.leq(lo, hi) {
            return Err(Error::InvalidInterval);
        }
        self.check_cap("interval enumeration", &self.interval_count(lo, hi, height))?;
        let f = &self.field;
        let w = lo.extension_basis(f, hi);
        let r = w.rows();
        let dims: Vec<usize> = match height {
            Some(h) if h < lo.dim() || h > hi.dim() => Vec::new(),
            Some(h) => vec![h - lo.dim()],
            None => (0..=r).collect(),
        };
        let mut out = Vec::new();
        for k in dims {
            let start = out.len();
            if k == 0 {
                out.push(lo.clone());
                continue;
            }
            rref_profiles(f, r, k, |s| {
                let lifted = s.mul(f, &w);
                out.push(Subspace::span(f, &lo.basis().stack(&lifted)));
            });
            out[start..].sort();
        }
        Ok(out)
    }

    fn render(&self, x: &Subspace) -> String {
        x.compact()
    }
}

/// The lattice of subsets of `{0, ..., n-1}`, elements as bit masks.
#[derive(Clone, Debug)]
pub struct BooleanLattice {
    n: usize,
    cap: u64,
}

impl BooleanLattice {
    pub fn new(n: usize) -> Self {
        assert!(n <= 63, "Boolean lattice supports at most 63 points");
        BooleanLattice { n, cap: DEFAULT_CAP }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn complement(&self, x: u64) -> u64 {
        !x & self.top()
    }
}

/// Indicator string order: element 0 is the leftmost character.
fn boolean_key(n: usize, x: u64) -> Vec<u8> {
    (0..n).map(|i| (x >> i & 1) as u8).collect()
}

impl Lattice for BooleanLattice {
    type Elem = u64;

    fn q(&self) -> u64 {
        1
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn cap(&self) -> u64 {
        self.cap
    }

    fn bottom(&self) -> u64 {
        0
    }

    fn top(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    fn height(&self, x: &u64) -> usize {
        x.count_ones() as usize
    }

    fn leq(&self, a: &u64, b: &u64) -> bool {
        a & !b == 0
    }

    fn join(&self, a: &u64, b: &u64) -> u64 {
        a | b
    }

    fn meet(&self, a: &u64, b: &u64) -> u64 {
        a & b
    }

    fn enumerate(&self, lo: &u64, hi: &u64, height: Option<usize>) -> Result<Vec<u64>> {
        if !self.leq(lo, hi) {
            return Err(Error::InvalidInterval);
        }
        self.check_cap("interval enumeration", &self.interval_count(lo, hi, height))?;
        let free = hi & !lo;
        let mut out = Vec::new();
        let mut sub = free;
        loop {
            let x = lo | sub;
            if height.is_none_or(|h| self.height(&x) == h) {
                out.push(x);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        out.sort_by_key(|&x| (x.count_ones(), boolean_key(self.n, x)));
        Ok(out)
    }

    fn render(&self, x: &u64) -> String {
        if *x == 0 {
            return "-".into();
        }
        boolean_key(self.n, *x).iter().map(|b| char::from(b'0' + b)).collect()
    }
}
