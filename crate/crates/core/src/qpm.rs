//! q-polymatroids with memoised rank functions, mostly induced by codes.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::Subspace;
use crate::lattice::{Lattice, SubspaceLattice};
use crate::poly::IntPoly;
use crate::rcode::{Code, MatrixCode, VectorCode};
use crate::report::Report;
use crate::wlat::{WeightFn, WeightedLattice};

type RankFn = Box<dyn Fn(&Subspace) -> u64 + Send + Sync>;

/// A rank oracle with a cache keyed by the canonical subspace.
struct MemoRank {
    oracle: RankFn,
    cache: RwLock<HashMap<Subspace, u64>>,
}

impl WeightFn<Subspace> for MemoRank {
    fn weight(&self, x: &Subspace) -> u64 {
        if let Some(&v) = self.cache.read().unwrap().get(x) {
            return v;
        }
        let v = (self.oracle)(x);
        self.cache.write().unwrap().insert(x.clone(), v);
        v
    }
}

/// A `(q, r)`-polymatroid on an interval of `L(F_q^n)`.
#[derive(Clone)]
pub struct QPolymatroid {
    w: WeightedLattice<SubspaceLattice>,
    r: u64,
    base: u64,
    source: Option<Arc<Code>>,
}

impl fmt::Debug for QPolymatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QPolymatroid")
            .field("q", &self.w.lattice().q())
            .field("n", &self.w.lattice().rank())
            .field("r", &self.r)
            .field("lo", &self.w.lo().compact())
            .field("hi", &self.w.hi().compact())
            .finish()
    }
}

/// How thoroughly [`QPolymatroid::validate_axioms`] checks submodularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomLevel {
    Off,
    /// Bottom, boundedness and monotonicity on covers only.
    Covers,
    /// Covers plus this many random pairs for submodularity.
    Sampled(usize),
    /// Covers plus every pair.
    Exhaustive,
}

impl Default for AxiomLevel {
    fn default() -> Self {
        AxiomLevel::Sampled(1000)
    }
}

impl QPolymatroid {
    fn with_oracle(lattice: SubspaceLattice, r: u64, base: u64, oracle: RankFn, source: Option<Arc<Code>>) -> Self {
        let memo = Arc::new(MemoRank {
            oracle,
            cache: RwLock::new(HashMap::new()),
        });
        QPolymatroid {
            w: WeightedLattice::new(lattice, memo),
            r,
            base,
            source,
        }
    }

    /// `ρ(U) = k - dim C_U`, a `(q, m)`-polymatroid.
    pub fn from_matrix_code(c: &MatrixCode) -> Self {
        let lattice = SubspaceLattice::new(c.field().clone(), c.n());
        let code = c.clone();
        Self::with_oracle(
            lattice,
            c.m() as u64,
            c.field().order() as u64,
            Box::new(move |u| code.rank_of(u) as u64),
            Some(Arc::new(Code::Matrix(c.clone()))),
        )
    }

    /// `ρ(U) = k - dim_{F_{q^m}} C_U`, a q-matroid evaluated at powers of `q^m`.
    pub fn from_vector_code(c: &VectorCode) -> Self {
        let lattice = SubspaceLattice::new(c.base().clone(), c.n());
        let code = c.clone();
        Self::with_oracle(
            lattice,
            1,
            c.ext().order() as u64,
            Box::new(move |u| (code.k() - code.shorten(u).k()) as u64),
            Some(Arc::new(Code::Vector(c.clone()))),
        )
    }

    pub fn from_code(c: &Code) -> Self {
        match c {
            Code::Matrix(c) => Self::from_matrix_code(c),
            Code::Vector(c) => Self::from_vector_code(c),
        }
    }

    /// Wraps an explicit weighted lattice; the evaluation base is `q`.
    pub fn from_weighted(w: &WeightedLattice<SubspaceLattice>, r: u64) -> Self {
        let inner = w.clone();
        Self::with_oracle(
            w.lattice().clone(),
            r,
            w.lattice().q(),
            Box::new(move |u| inner.raw_weight(u)),
            None,
        )
    }

    /// Sets the lattice enumeration cap.
    pub fn with_cap(mut self, cap: u64) -> Self {
        self.w = self.w.with_lattice(self.w.lattice().clone().with_cap(cap));
        self
    }

    pub fn weighted(&self) -> &WeightedLattice<SubspaceLattice> {
        &self.w
    }

    pub fn lattice(&self) -> &SubspaceLattice {
        self.w.lattice()
    }

    pub fn n(&self) -> usize {
        self.w.lattice().rank()
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// The value `z` is raised from when counting: `q`, or `q^m` for
    /// q-matroids of vector codes.
    pub fn base(&self) -> u64 {
        self.base
    }

    /// The code this polymatroid came from, when it is not a minor.
    pub fn source(&self) -> Option<&Code> {
        self.source.as_deref()
    }

    pub fn is_full(&self) -> bool {
        self.w.lo().is_zero() && self.w.hi().is_full()
    }

    /// Rank relative to the bottom of the interval.
    pub fn rank(&self, u: &Subspace) -> u64 {
        self.w.f(u)
    }

    pub fn nullity(&self, u: &Subspace) -> u64 {
        let h = (u.dim() - self.w.lo().dim()) as u64;
        self.r * h - self.rank(u)
    }

    pub fn char_poly(&self) -> Result<IntPoly> {
        self.w.char_poly_direct()
    }

    fn minor_of(&self, w: WeightedLattice<SubspaceLattice>) -> Self {
        QPolymatroid {
            w,
            r: self.r,
            base: self.base,
            source: None,
        }
    }

    pub fn minor(&self, x: &Subspace, y: &Subspace) -> Result<Self> {
        Ok(self.minor_of(self.w.minor(x, y)?))
    }

    pub fn restriction(&self, y: &Subspace) -> Result<Self> {
        Ok(self.minor_of(self.w.restriction(y)?))
    }

    pub fn contraction(&self, x: &Subspace) -> Result<Self> {
        Ok(self.minor_of(self.w.contraction(x)?))
    }

    /// `M.T = M/T^⊥`.
    pub fn contract_to(&self, t: &Subspace) -> Result<Self> {
        self.contraction(&self.lattice().perp(t))
    }

    /// Dual through `A ↦ A^⊥`: `ρ*(A) = r·dim A - ρ(E) + ρ(A^⊥)`.
    pub fn dual(&self) -> Result<Self> {
        if !self.is_full() {
            return Err(Error::InvalidParams(
                "the dual is defined for the whole lattice only".into(),
            ));
        }
        let inner = self.w.clone();
        let lattice = self.lattice().clone();
        let perp_lattice = lattice.clone();
        let r = self.r;
        let top = self.w.total();
        let oracle: RankFn = Box::new(move |a| r * a.dim() as u64 + inner.raw_weight(&perp_lattice.perp(a)) - top);
        let source = self.source.as_ref().map(|c| Arc::new(c.dual()));
        Ok(Self::with_oracle(lattice, r, self.base, oracle, source))
    }

    pub fn loops(&self) -> Result<Vec<Subspace>> {
        self.w.loops()
    }

    /// Coatoms `H` with `ρ(E) - ρ(H) = r`.
    pub fn coloops(&self) -> Result<Vec<Subspace>> {
        let top = self.w.total();
        Ok(self
            .w
            .interval()
            .coatoms()?
            .into_iter()
            .filter(|h| top - self.rank(h) == self.r)
            .collect())
    }

    /// `A(i; z) = Σ_{dim X = i} P(M/X^⊥; z)` for `i = 0..=n`.
    pub fn weight_enumerator(&self) -> Result<Vec<IntPoly>> {
        if !self.is_full() {
            return Err(Error::InvalidParams(
                "the weight enumerator is defined for the whole lattice only".into(),
            ));
        }
        let lat = self.lattice();
        let mut out = Vec::with_capacity(self.n() + 1);
        for i in 0..=self.n() {
            let mut a = IntPoly::zero();
            for x in lat.full().level(i)? {
                a = &a + &self.w.contraction(&lat.perp(&x))?.char_poly_direct()?;
            }
            out.push(a);
        }
        Ok(out)
    }

    /// Checks the bottom, boundedness, monotonicity and submodularity.
    /// Sampled pairs come from a fixed seed.
    pub fn validate_axioms(&self, level: AxiomLevel) -> Result<Report> {
        let mut rep = Report::new("q-polymatroid axioms");
        if level == AxiomLevel::Off {
            rep.skip("axioms", "", "validation disabled");
            return Ok(rep);
        }
        let iv = self.w.interval();
        let all = iv.enumerate(None)?;
        let lo = self.w.lo().dim();
        let r = self.r;
        rep.compare("bottom has rank zero", "", &self.rank(self.w.lo()), &0);

        let bad = all.iter().find(|a| self.rank(a) > r * (a.dim() - lo) as u64);
        rep.check("boundedness", "", bad.is_none(), || {
            let a = bad.unwrap();
            (
                format!("rho({}) = {}", a.compact(), self.rank(a)),
                format!("<= {}", r * (a.dim() - lo) as u64),
            )
        });

        let mut mono: Option<(Subspace, Subspace)> = None;
        'outer: for a in &all {
            for b in iv.covers_above(a)? {
                if self.rank(&b) < self.rank(a) {
                    mono = Some((a.clone(), b));
                    break 'outer;
                }
            }
        }
        rep.check("monotone on covers", "", mono.is_none(), || {
            let (a, b) = mono.clone().unwrap();
            (
                format!("rho({}) = {}", a.compact(), self.rank(&a)),
                format!("rho({}) = {}", b.compact(), self.rank(&b)),
            )
        });

        let lat = self.lattice();
        let violates = |a: &Subspace, b: &Subspace| {
            self.rank(&lat.join(a, b)) + self.rank(&lat.meet(a, b)) > self.rank(a) + self.rank(b)
        };
        let pairs: Vec<(usize, usize)> = match level {
            AxiomLevel::Off | AxiomLevel::Covers => Vec::new(),
            AxiomLevel::Sampled(count) => {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
                (0..count)
                    .map(|_| (rng.random_range(0..all.len()), rng.random_range(0..all.len())))
                    .collect()
            }
            AxiomLevel::Exhaustive => (0..all.len())
                .flat_map(|i| (i + 1..all.len()).map(move |j| (i, j)))
                .collect(),
        };
        if !pairs.is_empty() {
            let bad = pairs.iter().find(|&&(i, j)| violates(&all[i], &all[j]));
            rep.check("submodular", format!("{} pairs", pairs.len()), bad.is_none(), || {
                let (a, b) = (&all[bad.unwrap().0], &all[bad.unwrap().1]);
                (
                    format!("rho({}) + rho({})", lat.join(a, b).compact(), lat.meet(a, b).compact()),
                    format!("rho({}) + rho({})", a.compact(), b.compact()),
                )
            });
        }
        Ok(rep)
    }
}

/// `rk(G A^U)`, the rank of a vector code's generator matrix restricted to
/// `U`.
pub fn rho_g(c: &VectorCode, u: &Subspace) -> u64 {
    c.rank_g(u) as u64
}

/// The `λ` with `ρ₁(A) = λ ρ₂(A)` for every `A`, if there is one.
pub fn scaling_equivalence(a: &QPolymatroid, b: &QPolymatroid) -> Result<Option<BigRational>> {
    if a.n() != b.n() || a.lattice().q() != b.lattice().q() {
        return Ok(None);
    }
    let all = a.lattice().full().enumerate(None)?;
    let mut lambda: Option<BigRational> = None;
    for x in &all {
        let (ra, rb) = (BigInt::from(a.rank(x)), BigInt::from(b.rank(x)));
        match &lambda {
            None if rb != BigInt::from(0) => lambda = Some(BigRational::new(ra, rb)),
            None => {
                if ra != BigInt::from(0) {
                    return Ok(None);
                }
            }
            Some(l) => {
                if BigRational::from_integer(ra) != l * BigRational::from_integer(rb) {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(lambda.unwrap_or_else(|| BigRational::from_integer(1.into()))))
}

/// Compares two rank oracles on every element of the whole lattice.
pub fn compare_ranks(name: &str, a: &QPolymatroid, b: &QPolymatroid) -> Result<Report> {
    let mut rep = Report::new(name);
    let all = a.lattice().full().enumerate(None)?;
    let bad = all.iter().find(|x| a.rank(x) != b.rank(x));
    rep.check(name, format!("{} subspaces", all.len()), bad.is_none(), || {
        let x = bad.unwrap();
        (format!("{} at {}", a.rank(x), x.compact()), b.rank(x).to_string())
    });
    Ok(rep)
}
