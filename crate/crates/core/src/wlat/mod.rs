//! Weighted lattices and their characteristic polynomials.

mod format;
mod identities;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Field, Mat, Subspace};
use crate::lattice::{mobius_by_height, BooleanLattice, Interval, Lattice, SubspaceLattice};
use crate::poly::IntPoly;

pub use format::{parse_wlat, write_wlat, LoadedWlat};
pub use identities::{check_identities, decomposition_terms, DecompositionTerms, IdentityOptions};

/// A weight oracle on lattice elements.
pub trait WeightFn<E>: Send + Sync {
    fn weight(&self, x: &E) -> u64;
}

impl<E, F: Fn(&E) -> u64 + Send + Sync> WeightFn<E> for F {
    fn weight(&self, x: &E) -> u64 {
        self(x)
    }
}

/// Explicit weights for every element of a lattice.
#[derive(Clone, Debug)]
pub struct TableWeight<E: std::hash::Hash + Eq> {
    table: HashMap<E, u64>,
}

impl<E: std::hash::Hash + Eq + fmt::Debug + Send + Sync> WeightFn<E> for TableWeight<E> {
    fn weight(&self, x: &E) -> u64 {
        *self
            .table
            .get(x)
            .unwrap_or_else(|| panic!("no weight recorded for {x:?}"))
    }
}

impl<E: std::hash::Hash + Eq> TableWeight<E> {
    pub fn get(&self, x: &E) -> Option<u64> {
        self.table.get(x).copied()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

type PolyCache<E> = Arc<Mutex<HashMap<(E, E), IntPoly>>>;

/// A lattice interval `[lo, hi]` with a monotone weight, normalised so that
/// `f(lo) = 0`.
#[derive(Clone)]
pub struct WeightedLattice<L: Lattice> {
    lattice: L,
    lo: L::Elem,
    hi: L::Elem,
    weight: Arc<dyn WeightFn<L::Elem>>,
    direct_cache: PolyCache<L::Elem>,
    recursive_cache: PolyCache<L::Elem>,
}

impl<L: Lattice> fmt::Debug for WeightedLattice<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedLattice")
            .field("lattice", &self.lattice)
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .finish()
    }
}

impl<L: Lattice> WeightedLattice<L> {
    /// The full lattice with weight oracle `weight`, which must vanish at the bottom.
    pub fn new(lattice: L, weight: Arc<dyn WeightFn<L::Elem>>) -> Self {
        let (lo, hi) = (lattice.bottom(), lattice.top());
        WeightedLattice {
            lattice,
            lo,
            hi,
            weight,
            direct_cache: Default::default(),
            recursive_cache: Default::default(),
        }
    }

    /// Builds a weighted lattice from an explicit table, checking that every
    /// element has exactly one weight, the bottom has weight 0 and weights
    /// never decrease along covers.
    pub fn from_table(lattice: L, entries: Vec<(L::Elem, u64)>) -> Result<Self> {
        let all = lattice.full().enumerate(None)?;
        let mut table = HashMap::with_capacity(entries.len());
        for (x, w) in entries {
            if table.insert(x.clone(), w).is_some() {
                return Err(Error::InvalidParams(format!(
                    "element {} listed twice",
                    lattice.render(&x)
                )));
            }
        }
        if let Some(missing) = all.iter().find(|x| !table.contains_key(*x)) {
            return Err(Error::InvalidParams(format!(
                "no weight given for {}",
                lattice.render(missing)
            )));
        }
        if table.len() != all.len() {
            return Err(Error::InvalidParams("table lists elements outside the lattice".into()));
        }
        if table[&lattice.bottom()] != 0 {
            return Err(Error::InvalidParams("bottom element must have weight 0".into()));
        }
        let full = lattice.full();
        for x in &all {
            for c in full.covers_above(x)? {
                if table[&c] < table[x] {
                    return Err(Error::NotMonotone(format!(
                        "f({}) = {} > f({}) = {}",
                        lattice.render(x),
                        table[x],
                        lattice.render(&c),
                        table[&c]
                    )));
                }
            }
        }
        Ok(WeightedLattice::new(lattice, Arc::new(TableWeight { table })))
    }

    /// A random monotone weighting: each element gets the largest weight
    /// among the elements it covers plus a uniform step in `0..=max_step`.
    pub fn random_monotone(lattice: L, rng: &mut impl Rng, max_step: u64) -> Result<Self> {
        let all = lattice.full().enumerate(None)?;
        let full = lattice.full();
        let mut table: HashMap<L::Elem, u64> = HashMap::with_capacity(all.len());
        for x in &all {
            let base = full.covers_below(x)?.iter().map(|c| table[c]).max().unwrap_or(0);
            let step = if lattice.height(x) == 0 {
                0
            } else {
                rng.random_range(0..=max_step)
            };
            table.insert(x.clone(), base + step);
        }
        Ok(WeightedLattice::new(lattice, Arc::new(TableWeight { table })))
    }

    pub fn lattice(&self) -> &L {
        &self.lattice
    }

    pub fn lo(&self) -> &L::Elem {
        &self.lo
    }

    pub fn hi(&self) -> &L::Elem {
        &self.hi
    }

    pub fn interval(&self) -> Interval<'_, L> {
        Interval {
            lattice: &self.lattice,
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        }
    }

    pub fn height(&self) -> usize {
        self.lattice.height(&self.hi) - self.lattice.height(&self.lo)
    }

    /// Weight in the ambient lattice, before normalisation.
    pub fn raw_weight(&self, x: &L::Elem) -> u64 {
        self.weight.weight(x)
    }

    /// Normalised weight `f(x) - f(lo)`.
    pub fn f(&self, x: &L::Elem) -> u64 {
        self.raw_weight(x) - self.raw_weight(&self.lo)
    }

    /// `f(hi)`, the total weight of the interval.
    pub fn total(&self) -> u64 {
        self.f(&self.hi)
    }

    pub fn render(&self, x: &L::Elem) -> String {
        self.lattice.render(x)
    }

    /// The minor on `[x, y]`, sharing weight oracle and caches.
    pub fn minor(&self, x: &L::Elem, y: &L::Elem) -> Result<Self> {
        let l = &self.lattice;
        if !(l.leq(&self.lo, x) && l.leq(x, y) && l.leq(y, &self.hi)) {
            return Err(Error::InvalidInterval);
        }
        Ok(WeightedLattice {
            lattice: self.lattice.clone(),
            lo: x.clone(),
            hi: y.clone(),
            weight: self.weight.clone(),
            direct_cache: self.direct_cache.clone(),
            recursive_cache: self.recursive_cache.clone(),
        })
    }

    /// The same weighted interval over `lattice`, which must have the same
    /// elements (typically a copy with a different enumeration cap).
    pub fn with_lattice(&self, lattice: L) -> Self {
        WeightedLattice {
            lattice,
            ..self.clone()
        }
    }

    pub fn restriction(&self, y: &L::Elem) -> Result<Self> {
        self.minor(&self.lo.clone(), y)
    }

    pub fn contraction(&self, x: &L::Elem) -> Result<Self> {
        self.minor(x, &self.hi.clone())
    }

    /// `Σ μ(lo, X) z^(f(hi) - f(X))` over the whole interval.
    pub fn char_poly_direct(&self) -> Result<IntPoly> {
        let key = (self.lo.clone(), self.hi.clone());
        if let Some(p) = self.direct_cache.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = self.char_poly_uncached()?;
        self.direct_cache.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    fn char_poly_uncached(&self) -> Result<IntPoly> {
        let elems = self.interval().enumerate(None)?;
        let weights: Vec<(usize, u64)> = elems
            .par_iter()
            .map(|x| (self.lattice.height(x), self.raw_weight(x)))
            .collect();
        let top = self.raw_weight(&self.hi);
        let h0 = self.lattice.height(&self.lo);
        let q = self.lattice.q();
        let mut coeffs = vec![BigInt::from(0); (top - self.raw_weight(&self.lo)) as usize + 1];
        let mut mob = HashMap::new();
        for (h, w) in weights {
            let mu = mob.entry(h).or_insert_with(|| mobius_by_height(q, h - h0));
            coeffs[(top - w) as usize] += &*mu;
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }

    /// Characteristic polynomial by repeated coatom decomposition, splitting
    /// at `h` on the outermost step and at the first coatom on every
    /// sub-interval.
    pub fn char_poly_recursive(&self, h: Option<&L::Elem>) -> Result<IntPoly> {
        if let Some(h) = h {
            let l = &self.lattice;
            let covered = l.height(h) + 1 == l.height(&self.hi);
            if !(covered && l.leq(&self.lo, h) && l.leq(h, &self.hi)) {
                return Err(Error::InvalidCoatom);
            }
        }
        self.recurse(&self.lo, &self.hi, h)
    }

    fn recurse(&self, a: &L::Elem, b: &L::Elem, split: Option<&L::Elem>) -> Result<IntPoly> {
        let l = &self.lattice;
        let rel = l.height(b) - l.height(a);
        if rel == 0 {
            return Ok(IntPoly::one());
        }
        let gap = (self.raw_weight(b) - self.raw_weight(a)) as usize;
        if rel == 1 {
            return Ok(&IntPoly::monomial(1, gap) - &IntPoly::one());
        }
        let key = (a.clone(), b.clone());
        if split.is_none() {
            if let Some(p) = self.recursive_cache.lock().unwrap().get(&key) {
                return Ok(p.clone());
            }
        }
        let iv = Interval {
            lattice: l,
            lo: a.clone(),
            hi: b.clone(),
        };
        let h = match split {
            Some(h) => h.clone(),
            None => iv.coatoms()?.swap_remove(0),
        };
        let restricted = self.recurse(a, &h, None)?;
        let top_gap = (self.raw_weight(b) - self.raw_weight(&h)) as usize;
        // P(W/H) + 1 = z^(f(b) - f(H))
        let mut p = &restricted * &IntPoly::monomial(1, top_gap);
        for c in iv.atoms()? {
            if !l.leq(&c, &h) {
                p = &p - &self.recurse(&c, b, None)?;
            }
        }
        if split.is_none() {
            self.recursive_cache.lock().unwrap().insert(key, p.clone());
        }
        Ok(p)
    }

    /// Whether every element covering `x` inside the interval has strictly
    /// larger weight.
    pub fn is_flat(&self, x: &L::Elem) -> Result<bool> {
        let w = self.raw_weight(x);
        Ok(self.interval().covers_above(x)?.iter().all(|c| self.raw_weight(c) > w))
    }

    pub fn flats(&self) -> Result<Vec<L::Elem>> {
        let mut out = Vec::new();
        for x in self.interval().enumerate(None)? {
            if self.is_flat(&x)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Whether sending each element to the meet of the flats above it
    /// lands on a flat of the same weight.
    pub fn closure_is_respectful(&self) -> Result<bool> {
        let flats = self.flats()?;
        let l = &self.lattice;
        for a in self.interval().enumerate(None)? {
            let cl = flats
                .iter()
                .filter(|f| l.leq(&a, f))
                .fold(self.hi.clone(), |acc, f| l.meet(&acc, f));
            if self.raw_weight(&cl) != self.raw_weight(&a) || !self.is_flat(&cl)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Atoms of weight zero.
    pub fn loops(&self) -> Result<Vec<L::Elem>> {
        Ok(self
            .interval()
            .atoms()?
            .into_iter()
            .filter(|a| self.f(a) == 0)
            .collect())
    }

    /// Smallest `r ≥ 1` with `f(x) ≤ r·h(x)` for every element.
    pub fn infer_r(&self) -> Result<u64> {
        let mut r = 1;
        let h0 = self.lattice.height(&self.lo);
        for x in self.interval().enumerate(None)? {
            let h = (self.lattice.height(&x) - h0) as u64;
            if h > 0 {
                r = r.max(self.f(&x).div_ceil(h));
            }
        }
        Ok(r)
    }

    /// Whether `f(a ∨ b) + f(a ∧ b) ≤ f(a) + f(b)` for every pair.
    pub fn is_submodular(&self) -> Result<bool> {
        let all = self.interval().enumerate(None)?;
        let l = &self.lattice;
        Ok(all.par_iter().enumerate().all(|(i, a)| {
            all[i + 1..].iter().all(|b| {
                self.raw_weight(&l.join(a, b)) + self.raw_weight(&l.meet(a, b))
                    <= self.raw_weight(a) + self.raw_weight(b)
            })
        }))
    }
}

impl WeightedLattice<SubspaceLattice> {
    /// A random submodular monotone weighting `f(A) = Σ c_j dim(A·M_j)` for
    /// random linear maps `M_j`.
    pub fn random_subspace_polymatroid(field: Field, n: usize, rng: &mut impl Rng) -> Self {
        let q = field.order();
        let maps: Vec<(u64, Mat)> = (0..rng.random_range(1..=3))
            .map(|_| {
                let cols = rng.random_range(1..=n.max(1));
                let data = (0..n * cols).map(|_| rng.random_range(0..q)).collect();
                (rng.random_range(1..=2), Mat::from_vec(n, cols, data))
            })
            .collect();
        let f = field.clone();
        let weight = move |a: &Subspace| maps.iter().map(|(c, m)| c * a.map(&f, m).dim() as u64).sum();
        WeightedLattice::new(SubspaceLattice::new(field, n), Arc::new(weight))
    }
}

impl WeightedLattice<BooleanLattice> {
    /// A random submodular monotone weighting `f(A) = Σ c_j min(|A ∩ S_j|, k_j)`.
    pub fn random_boolean_polymatroid(n: usize, rng: &mut impl Rng) -> Self {
        let parts: Vec<(u64, u64, u32)> = (0..rng.random_range(1..=3))
            .map(|_| {
                let s = rng.random_range(1..1u64 << n);
                (rng.random_range(1..=2), s, rng.random_range(1..=s.count_ones()))
            })
            .collect();
        let weight = move |a: &u64| {
            parts
                .iter()
                .map(|&(c, s, k)| c * (a & s).count_ones().min(k) as u64)
                .sum()
        };
        WeightedLattice::new(BooleanLattice::new(n), Arc::new(weight))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn ex3_7() -> WeightedLattice<SubspaceLattice> {
        match parse_wlat(include_str!("../../../../fixtures/ex3_7.wlat")).unwrap() {
            LoadedWlat::Subspace(w, _) => w,
            LoadedWlat::Boolean(..) => unreachable!(),
        }
    }

    fn sp(w: &WeightedLattice<SubspaceLattice>, rows: &[&str]) -> Subspace {
        let v: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| (b - b'0') as u32).collect())
            .collect();
        w.lattice().span(&v)
    }

    #[test]
    fn ex3_7_polynomials() {
        let w = ex3_7();
        let p = w.char_poly_direct().unwrap();
        assert_eq!(p.to_string(), "z^5 - 2*z^3 - 5*z^2 + 6*z");
        let h = sp(&w, &["100", "010"]);
        assert_eq!(w.char_poly_recursive(Some(&h)).unwrap(), p);
        let r = w.restriction(&h).unwrap().char_poly_direct().unwrap();
        assert_eq!(r.to_string(), "z^5 - z^3 - 2*z^2 + 2");
        for (a, expect) in [
            ("001", "z^2 - 2*z + 1"),
            ("101", "z^2 - z"),
            ("111", "z^3 - 2*z + 1"),
            ("011", "z^2 - z"),
        ] {
            let c = w.contraction(&sp(&w, &[a])).unwrap().char_poly_direct().unwrap();
            assert_eq!(c.to_string(), expect, "contraction by {a}");
        }
    }

    #[test]
    fn flat_decided_by_cover_weights() {
        let w = ex3_7();
        // covers of <110> have ranks 5, 4, 5, all above 2
        assert!(w.is_flat(&sp(&w, &["110"])).unwrap());
        // <010, 001> has rank 4 and sits below the top of rank 5
        assert!(w.is_flat(&sp(&w, &["010", "001"])).unwrap());
        // <100, 010> has the same rank as the top
        assert!(!w.is_flat(&sp(&w, &["100", "010"])).unwrap());
        assert!(w.is_flat(w.hi()).unwrap());
    }

    #[test]
    fn trivial_cases() {
        let l = SubspaceLattice::new(Field::new(2).unwrap(), 1);
        let w = WeightedLattice::new(l, Arc::new(|x: &Subspace| x.dim() as u64));
        assert_eq!(w.char_poly_direct().unwrap().to_string(), "z - 1");
        let single = w.minor(w.hi(), w.hi()).unwrap();
        assert_eq!(single.char_poly_direct().unwrap(), IntPoly::one());
        assert_eq!(w.char_poly_recursive(None).unwrap().to_string(), "z - 1");
    }

    #[test]
    fn uniform_matroid_on_boolean_lattice() {
        let b = BooleanLattice::new(3);
        let w = WeightedLattice::new(b, Arc::new(|x: &u64| (x.count_ones() as u64).min(2)));
        assert_eq!(w.char_poly_direct().unwrap().to_string(), "z^2 - 3*z + 2");
        // independent Möbius sum over the 8 subsets
        let mut c = [0i64; 3];
        for s in 0u64..8 {
            let k = s.count_ones() as i64;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            c[(2 - k.min(2)) as usize] += sign;
        }
        assert_eq!(w.char_poly_direct().unwrap(), IntPoly::from_i64(&c));
    }

    #[test]
    fn diamond_by_hand() {
        // F_2^2 with every nonzero subspace of weight 1
        let l = SubspaceLattice::new(Field::new(2).unwrap(), 2);
        let w = WeightedLattice::new(l, Arc::new(|x: &Subspace| u64::from(x.dim() > 0)));
        // z - 3 + 2 = z - 1: one atom term per atom at z^0, mu(0, E) = 2
        let expect = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(w.char_poly_direct().unwrap(), expect);
        for h in w.interval().coatoms().unwrap() {
            assert_eq!(w.char_poly_recursive(Some(&h)).unwrap(), expect);
        }
    }

    #[test]
    fn invalid_inputs() {
        let w = ex3_7();
        let a = sp(&w, &["100"]);
        assert_eq!(w.char_poly_recursive(Some(&a)), Err(Error::InvalidCoatom));
        let b = sp(&w, &["010"]);
        assert!(matches!(w.minor(&a, &b), Err(Error::InvalidInterval)));
        let l = SubspaceLattice::new(Field::new(2).unwrap(), 2);
        let all = l.full().enumerate(None).unwrap();
        let bad: Vec<_> = all
            .iter()
            .map(|x| (x.clone(), if x.dim() == 2 { 0 } else { x.dim() as u64 }))
            .collect();
        assert!(matches!(
            WeightedLattice::from_table(l.clone(), bad),
            Err(Error::NotMonotone(_))
        ));
        let short: Vec<_> = all.iter().skip(1).map(|x| (x.clone(), 1)).collect();
        assert!(WeightedLattice::from_table(l, short).is_err());
    }

    #[test]
    fn non_flat_vanishing_needs_a_respectful_closure() {
        // a loop at one atom, the other two atoms of weight 1, top of weight 2
        let l = SubspaceLattice::new(Field::new(2).unwrap(), 2);
        let loop_atom = l.span(&[vec![1, 0]]);
        let table: Vec<_> = l
            .full()
            .enumerate(None)
            .unwrap()
            .into_iter()
            .map(|x| {
                let w = match x.dim() {
                    0 => 0,
                    1 if x == loop_atom => 0,
                    1 => 1,
                    _ => 2,
                };
                (x, w)
            })
            .collect();
        let w = WeightedLattice::from_table(l, table).unwrap();
        assert!(!w.is_flat(w.lo()).unwrap());
        assert_eq!(w.char_poly_direct().unwrap().to_string(), "-2*z + 2");
        assert!(!w.closure_is_respectful().unwrap());
        assert!(!w.is_submodular().unwrap());
    }

    #[test]
    fn random_polymatroids_are_submodular_and_respectful() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            let w = WeightedLattice::random_subspace_polymatroid(Field::new(2).unwrap(), n, &mut rng);
            assert!(w.is_submodular().unwrap());
            assert!(w.closure_is_respectful().unwrap());
            let b = WeightedLattice::random_boolean_polymatroid(n + 1, &mut rng);
            assert!(b.is_submodular().unwrap());
            assert!(b.closure_is_respectful().unwrap());
        }
    }

    #[test]
    fn random_weightings_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            let l = SubspaceLattice::new(Field::new(2).unwrap(), n);
            let w = WeightedLattice::random_monotone(l, &mut rng, 3).unwrap();
            let p = w.char_poly_direct().unwrap();
            assert_eq!(p.eval_i64(1), BigInt::from(0));
            for h in w.interval().coatoms().unwrap() {
                assert_eq!(w.char_poly_recursive(Some(&h)).unwrap(), p);
            }
        }
    }
}
