use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Field, Mat, Subspace};

use super::{check_puncture, index_digits, WORD_CAP};

/// An F_q-linear space of n×m matrices, held by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCode {
    field: Field,
    n: usize,
    m: usize,
    gens: Vec<Mat>,
    cap: u64,
}

fn flatten(gens: &[Mat], n: usize, m: usize) -> Mat {
    let mut data = Vec::with_capacity(gens.len() * n * m);
    for g in gens {
        data.extend_from_slice(g.data());
    }
    Mat::from_vec(gens.len(), n * m, data)
}

/// Keeps, in order, each generator that is independent of those kept so far.
fn independent_subset(field: &Field, gens: Vec<Mat>, n: usize, m: usize) -> Vec<Mat> {
    let mut kept: Vec<Mat> = Vec::new();
    let mut rank = 0;
    for g in gens {
        let mut trial = kept.clone();
        trial.push(g);
        let r = flatten(&trial, n, m).rank(field);
        if r > rank {
            rank = r;
            kept = trial;
        }
    }
    kept
}

impl MatrixCode {
    /// Builds the code spanned by `gens`. Dependent generators are dropped
    /// with a warning.
    pub fn new(field: Field, n: usize, m: usize, gens: Vec<Mat>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != n || g.cols() != m {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} is {}x{}, expected {n}x{m}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
            g.validate(&field)?;
        }
        let supplied = gens.len();
        let gens = independent_subset(&field, gens, n, m);
        if gens.len() < supplied {
            log::warn!("generators are dependent: kept {} of {supplied} as a basis", gens.len());
        }
        Ok(MatrixCode {
            field,
            n,
            m,
            gens,
            cap: WORD_CAP,
        })
    }

    /// The code spanned by `gens`, dropping dependent ones silently.
    pub fn spanned_by(field: Field, n: usize, m: usize, gens: Vec<Mat>) -> Self {
        let gens = independent_subset(&field, gens, n, m);
        MatrixCode {
            field,
            n,
            m,
            gens,
            cap: WORD_CAP,
        }
    }

    pub fn zero(field: Field, n: usize, m: usize) -> Self {
        MatrixCode {
            field,
            n,
            m,
            gens: Vec::new(),
            cap: WORD_CAP,
        }
    }

    /// All of `F_q^{n×m}`, with the matrix units as basis.
    pub fn full(field: Field, n: usize, m: usize) -> Self {
        let gens = (0..n * m)
            .map(|i| {
                let mut e = Mat::zeros(n, m);
                e.set(i / m, i % m, 1);
                e
            })
            .collect();
        MatrixCode {
            field,
            n,
            m,
            gens,
            cap: WORD_CAP,
        }
    }

    /// A code spanned by `k` uniformly random independent matrices.
    pub fn random(field: Field, n: usize, m: usize, k: usize, rng: &mut impl Rng) -> Result<Self> {
        if k > n * m {
            return Err(Error::InvalidParams(format!("k = {k} exceeds n*m = {}", n * m)));
        }
        let q = field.order();
        let mut gens: Vec<Mat> = Vec::new();
        while gens.len() < k {
            let data = (0..n * m).map(|_| rng.random_range(0..q)).collect();
            let mut trial = gens.clone();
            trial.push(Mat::from_vec(n, m, data));
            if flatten(&trial, n, m).rank(&field) == trial.len() {
                gens = trial;
            }
        }
        Ok(MatrixCode {
            field,
            n,
            m,
            gens,
            cap: WORD_CAP,
        })
    }

    /// Limit on the number of codewords any exhaustive operation may visit.
    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Mat] {
        &self.gens
    }

    /// The k×(nm) matrix of row-major flattened generators.
    pub fn flattened(&self) -> Mat {
        flatten(&self.gens, self.n, self.m)
    }

    /// `Σ a_i G_i`.
    pub fn word(&self, coeffs: &[u32]) -> Mat {
        assert_eq!(coeffs.len(), self.k());
        let f = &self.field;
        let mut data = vec![0; self.n * self.m];
        for (g, &a) in self.gens.iter().zip(coeffs) {
            if a == 0 {
                continue;
            }
            for (d, &x) in data.iter_mut().zip(g.data()) {
                *d = f.add(*d, f.mul(a, x));
            }
        }
        Mat::from_vec(self.n, self.m, data)
    }

    pub fn contains(&self, x: &Mat) -> bool {
        if x.rows() != self.n || x.cols() != self.m {
            return false;
        }
        let flat = self
            .flattened()
            .stack(&Mat::from_vec(1, self.n * self.m, x.data().to_vec()));
        flat.rank(&self.field) == self.k()
    }

    /// Sum of the column spaces of the generators, which is the sum over all
    /// codewords.
    pub fn support(&self) -> Subspace {
        let mut wide = Mat::zeros(self.n, self.k() * self.m);
        for (i, g) in self.gens.iter().enumerate() {
            for r in 0..self.n {
                for c in 0..self.m {
                    wide.set(r, i * self.m + c, g.get(r, c));
                }
            }
        }
        wide.colspace(&self.field)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.support().is_full()
    }

    /// Linear conditions on coefficient vectors `a` expressing
    /// `colsp(Σ a_i G_i) ≤ U^⊥`: one row per basis vector `u` of `U` and
    /// column `j`, holding `(u^T G_i)_j` in column `i`.
    fn shortening_system(&self, u: &Subspace) -> Mat {
        assert_eq!(u.ambient(), self.n, "subspace lives in the wrong ambient space");
        let f = &self.field;
        let mut sys = Mat::zeros(u.dim() * self.m, self.k());
        for (b, row) in u.rows().enumerate() {
            for (i, g) in self.gens.iter().enumerate() {
                for j in 0..self.m {
                    let mut s = 0;
                    for (r, &ur) in row.iter().enumerate() {
                        if ur != 0 {
                            s = f.add(s, f.mul(ur, g.get(r, j)));
                        }
                    }
                    sys.set(b * self.m + j, i, s);
                }
            }
        }
        sys
    }

    /// `k - dim C_U`.
    pub fn rank_of(&self, u: &Subspace) -> usize {
        if u.is_zero() || self.k() == 0 {
            return 0;
        }
        self.shortening_system(u).rank(&self.field)
    }

    /// `dim C_U` over F_q.
    pub fn shortened_dim(&self, u: &Subspace) -> usize {
        self.k() - self.rank_of(u)
    }

    /// The subcode `C_U` of words whose support lies in `U^⊥`.
    pub fn shorten(&self, u: &Subspace) -> MatrixCode {
        if u.is_zero() {
            return self.clone();
        }
        let ker = self.shortening_system(u).kernel(&self.field);
        let gens = ker.rows().map(|a| self.word(a)).collect();
        MatrixCode {
            field: self.field.clone(),
            n: self.n,
            m: self.m,
            gens,
            cap: self.cap,
        }
    }

    /// Dual under `Tr(X Y^T)`, which is the dot product of flattenings.
    pub fn dual(&self) -> MatrixCode {
        let (n, m) = (self.n, self.m);
        let ker = if self.k() == 0 {
            Subspace::full(&self.field, n * m)
        } else {
            self.flattened().kernel(&self.field)
        };
        let gens = ker.rows().map(|r| Mat::from_vec(n, m, r.to_vec())).collect();
        MatrixCode {
            field: self.field.clone(),
            n,
            m,
            gens,
            cap: self.cap,
        }
    }

    /// `{(A X)_I : X ∈ C}`: multiply by the invertible `A`, then delete the
    /// rows indexed by `I` (0-based).
    pub fn puncture(&self, a: &Mat, drop: &[usize]) -> Result<MatrixCode> {
        check_puncture(&self.field, a, drop, self.n)?;
        let gens = self
            .gens
            .iter()
            .map(|g| a.mul(&self.field, g).delete_rows(drop))
            .collect();
        Ok(MatrixCode::spanned_by(self.field.clone(), self.n - drop.len(), self.m, gens).with_cap(self.cap))
    }

    fn word_count(&self) -> Result<u64> {
        let q = self.field.order() as u64;
        match q.checked_pow(self.k() as u32) {
            Some(c) if c <= self.cap => Ok(c),
            _ => Err(Error::limit(
                "codeword enumeration",
                num_bigint::BigUint::from(q).pow(self.k() as u32),
                self.cap,
            )),
        }
    }

    /// Every codeword, in coefficient order (generator 1 varies fastest).
    pub fn words(&self) -> Result<Vec<Mat>> {
        let total = self.word_count()?;
        let q = self.field.order();
        Ok((0..total)
            .into_par_iter()
            .map(|idx| self.word(&index_digits(idx, q, self.k())))
            .collect())
    }

    /// Number of codewords with each support.
    pub fn support_distribution(&self) -> Result<BTreeMap<Subspace, u64>> {
        let total = self.word_count()?;
        let q = self.field.order();
        let counts = (0..total)
            .into_par_iter()
            .fold(HashMap::new, |mut acc: HashMap<Subspace, u64>, idx| {
                let w = self.word(&index_digits(idx, q, self.k()));
                *acc.entry(w.colspace(&self.field)).or_default() += 1;
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (s, c) in b {
                    *a.entry(s).or_default() += c;
                }
                a
            });
        Ok(counts.into_iter().collect())
    }
}
