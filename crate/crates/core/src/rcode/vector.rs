use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{ExtField, Field, Mat, Subspace};

use super::{check_puncture, index_digits, MatrixCode, WORD_CAP};

/// An F_{q^m}-linear code in `F_{q^m}^n`, held by a generator matrix with
/// independent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorCode {
    ext: ExtField,
    n: usize,
    g: Mat,
    cap: u64,
}

fn independent_rows(f: &Field, rows: Vec<Vec<u32>>, n: usize) -> Mat {
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for r in rows {
        let mut trial = kept.clone();
        trial.push(r);
        if Mat::from_rows(&trial).rank(f) == trial.len() {
            kept = trial;
        }
    }
    if kept.is_empty() {
        Mat::zeros(0, n)
    } else {
        Mat::from_rows(&kept)
    }
}

impl VectorCode {
    /// Builds the code spanned by the rows of `g`. Dependent rows are dropped
    /// with a warning.
    pub fn new(ext: ExtField, g: Mat) -> Result<Self> {
        g.validate(ext.field())?;
        let n = g.cols();
        let basis = independent_rows(ext.field(), g.row_vecs(), n);
        if basis.rows() < g.rows() {
            log::warn!(
                "generator rows are dependent: kept {} of {} as a basis",
                basis.rows(),
                g.rows()
            );
        }
        Ok(VectorCode {
            ext,
            n,
            g: basis,
            cap: WORD_CAP,
        })
    }

    fn spanned_by(ext: ExtField, n: usize, rows: Vec<Vec<u32>>, cap: u64) -> Self {
        let g = independent_rows(ext.field(), rows, n);
        VectorCode { ext, n, g, cap }
    }

    /// Gabidulin code with evaluation points `1, α, ..., α^{n-1}`:
    /// `G_ij = (α^j)^{q^i}`.
    pub fn gabidulin(q: u64, m: usize, n: usize, k: usize) -> Result<Self> {
        if n > m || k > n || n == 0 {
            return Err(Error::InvalidParams(format!(
                "Gabidulin code needs 1 <= k <= n <= m, got n={n}, m={m}, k={k}"
            )));
        }
        let ext = ExtField::new(Field::new(q)?, m)?;
        let mut g = Mat::zeros(k, n);
        for j in 0..n {
            let point = ext.basis_element(j);
            for i in 0..k {
                g.set(i, j, ext.frobenius(point, i as u32));
            }
        }
        Ok(VectorCode {
            ext,
            n,
            g,
            cap: WORD_CAP,
        })
    }

    /// The `[mk, k]` simplex code: row `i` carries `1, α, ..., α^{m-1}` in
    /// block `i` and zeros elsewhere.
    pub fn simplex(q: u64, m: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!("simplex code needs k >= 2, got {k}")));
        }
        let ext = ExtField::new(Field::new(q)?, m)?;
        let n = m * k;
        let mut g = Mat::zeros(k, n);
        for i in 0..k {
            for j in 0..m {
                g.set(i, i * m + j, ext.basis_element(j));
            }
        }
        Ok(VectorCode {
            ext,
            n,
            g,
            cap: WORD_CAP,
        })
    }

    /// A code spanned by `k` random independent vectors.
    pub fn random(ext: ExtField, n: usize, k: usize, rng: &mut impl Rng) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParams(format!("k = {k} exceeds n = {n}")));
        }
        let order = ext.order();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        while rows.len() < k {
            let mut trial = rows.clone();
            trial.push((0..n).map(|_| rng.random_range(0..order)).collect());
            if Mat::from_rows(&trial).rank(ext.field()) == trial.len() {
                rows = trial;
            }
        }
        let g = if k == 0 {
            Mat::zeros(0, n)
        } else {
            Mat::from_rows(&rows)
        };
        Ok(VectorCode {
            ext,
            n,
            g,
            cap: WORD_CAP,
        })
    }

    /// Random codes until one has full support. Needs `n <= m k`.
    pub fn random_nondegenerate(ext: ExtField, n: usize, k: usize, rng: &mut impl Rng) -> Result<Self> {
        if n > ext.degree() * k {
            return Err(Error::InvalidParams(format!(
                "no non-degenerate [{n},{k}] code over degree {}",
                ext.degree()
            )));
        }
        loop {
            let c = VectorCode::random(ext.clone(), n, k, rng)?;
            if c.is_nondegenerate() {
                return Ok(c);
            }
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn base(&self) -> &Field {
        self.ext.base()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.ext.degree()
    }

    /// Dimension over F_{q^m}.
    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn generator(&self) -> &Mat {
        &self.g
    }

    /// `a G`.
    pub fn word(&self, coeffs: &[u32]) -> Vec<u32> {
        let f = self.ext.field();
        let mut w = vec![0; self.n];
        for (i, &a) in coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, x) in w.iter_mut().enumerate() {
                *x = f.add(*x, f.mul(a, self.g.get(i, j)));
            }
        }
        w
    }

    /// Column space of the expansion `Γ(x)`.
    pub fn word_support(&self, x: &[u32]) -> Subspace {
        self.ext.gamma_expand(x).colspace(self.base())
    }

    /// Sum of the supports of the generator rows.
    pub fn support(&self) -> Subspace {
        let mut s = Subspace::zero(self.n);
        for i in 0..self.k() {
            s = s.join(self.base(), &self.word_support(self.g.row(i)));
        }
        s
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.support().is_full()
    }

    /// Dimension of the F_q-span of the columns of `G`, each column read as a
    /// vector of `F_q^{mk}`.
    pub fn column_span_dim(&self) -> usize {
        let m = self.m();
        let mut cols = Mat::zeros(self.n, self.k() * m);
        for j in 0..self.n {
            for i in 0..self.k() {
                for (d, &x) in self.ext.digits(self.g.get(i, j)).iter().enumerate() {
                    cols.set(j, i * m + d, x);
                }
            }
        }
        cols.rank(self.base())
    }

    /// Non-degeneracy through the column criterion: the columns of `G` are
    /// F_q-independent.
    pub fn is_nondegenerate_by_columns(&self) -> bool {
        self.column_span_dim() == self.n
    }

    /// `G A^U`, where the columns of `A^U` are a basis of `U`.
    fn times_basis(&self, u: &Subspace) -> Mat {
        assert_eq!(u.ambient(), self.n, "subspace lives in the wrong ambient space");
        self.g.mul(self.ext.field(), &u.basis().transpose())
    }

    /// `rk(G A^U)` over F_{q^m}.
    pub fn rank_g(&self, u: &Subspace) -> usize {
        if u.is_zero() || self.k() == 0 {
            return 0;
        }
        self.times_basis(u).rank(self.ext.field())
    }

    /// The subcode `C_U` of words whose support lies in `U^⊥`.
    pub fn shorten(&self, u: &Subspace) -> VectorCode {
        if u.is_zero() || self.k() == 0 {
            return self.clone();
        }
        let f = self.ext.field();
        let ker = self.times_basis(u).transpose().kernel(f);
        let rows: Vec<Vec<u32>> = ker.rows().map(|a| self.word(a)).collect();
        let g = if rows.is_empty() {
            Mat::zeros(0, self.n)
        } else {
            Mat::from_rows(&rows)
        };
        VectorCode {
            ext: self.ext.clone(),
            n: self.n,
            g,
            cap: self.cap,
        }
    }

    /// Dual under the standard dot product over F_{q^m}.
    pub fn dual(&self) -> VectorCode {
        let f = self.ext.field();
        let ker = if self.k() == 0 {
            Subspace::full(f, self.n)
        } else {
            self.g.kernel(f)
        };
        VectorCode {
            ext: self.ext.clone(),
            n: self.n,
            g: ker.basis(),
            cap: self.cap,
        }
    }

    /// `{(c A)_I : c ∈ C}` for `A` invertible over F_q, deleting the
    /// coordinates in `I` (0-based).
    pub fn puncture(&self, a: &Mat, drop: &[usize]) -> Result<VectorCode> {
        check_puncture(self.base(), a, drop, self.n)?;
        let ga = self
            .g
            .mul(self.ext.field(), a)
            .transpose()
            .delete_rows(drop)
            .transpose();
        Ok(VectorCode::spanned_by(
            self.ext.clone(),
            self.n - drop.len(),
            ga.row_vecs(),
            self.cap,
        ))
    }

    /// F_q-basis `Γ(α^j g_i)` of the expanded matrix code.
    pub fn to_matrix_code(&self) -> MatrixCode {
        let f = self.ext.field();
        let mut gens = Vec::with_capacity(self.k() * self.m());
        for i in 0..self.k() {
            for j in 0..self.m() {
                let a = self.ext.basis_element(j);
                let row: Vec<u32> = self.g.row(i).iter().map(|&x| f.mul(a, x)).collect();
                gens.push(self.ext.gamma_expand(&row));
            }
        }
        MatrixCode::spanned_by(self.base().clone(), self.n, self.m(), gens).with_cap(self.cap)
    }

    fn word_count(&self) -> Result<u64> {
        let order = self.ext.order() as u64;
        match order.checked_pow(self.k() as u32) {
            Some(c) if c <= self.cap => Ok(c),
            _ => Err(Error::limit(
                "codeword enumeration",
                num_bigint::BigUint::from(order).pow(self.k() as u32),
                self.cap,
            )),
        }
    }

    pub fn words(&self) -> Result<Vec<Vec<u32>>> {
        let total = self.word_count()?;
        let order = self.ext.order();
        Ok((0..total)
            .into_par_iter()
            .map(|idx| self.word(&index_digits(idx, order, self.k())))
            .collect())
    }

    pub fn support_distribution(&self) -> Result<BTreeMap<Subspace, u64>> {
        let total = self.word_count()?;
        let order = self.ext.order();
        let counts = (0..total)
            .into_par_iter()
            .fold(HashMap::new, |mut acc: HashMap<Subspace, u64>, idx| {
                let w = self.word(&index_digits(idx, order, self.k()));
                *acc.entry(self.word_support(&w)).or_default() += 1;
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
