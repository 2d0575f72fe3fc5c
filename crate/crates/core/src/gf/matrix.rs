use std::fmt;

use super::field::Field;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field. The field is passed to each
/// operation rather than stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`Mat::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Mat {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Mat { rows, cols, data }
    }

    /// Panics on ragged input. An empty slice gives a 0×0 matrix.
    pub fn from_rows(rows: &[Vec<u32>]) -> Mat {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Mat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Checks every entry lies in the field.
    pub fn validate(&self, f: &Field) -> Result<()> {
        match self.data.iter().find(|&&x| x >= f.order()) {
            Some(x) => Err(Error::InvalidParams(format!("entry {x} is not an element of {f:?}"))),
            None => Ok(()),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(l, j))));
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat::from_vec(self.rows, self.cols, data)
    }

    pub fn scale(&self, f: &Field, c: u32) -> Mat {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat::from_vec(self.rows, self.cols, data)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Mat) -> Mat {
        if self.rows == 0 {
            return other.clone();
        }
        if other.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat::from_vec(self.rows + other.rows, self.cols, data)
    }

    pub fn select_rows(&self, keep: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(keep.len() * self.cols);
        for &i in keep {
            data.extend_from_slice(self.row(i));
        }
        Mat::from_vec(keep.len(), self.cols, data)
    }

    pub fn delete_rows(&self, drop: &[usize]) -> Mat {
        let keep: Vec<usize> = (0..self.rows).filter(|i| !drop.contains(i)).collect();
        self.select_rows(&keep)
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self, f: &Field) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c));
            if inv != 1 {
                for j in c..m.cols {
                    let v = m.get(r, j);
                    m.set(r, j, f.mul(v, inv));
                }
            }
            for i in 0..m.rows {
                let a = m.get(i, c);
                if i != r && a != 0 {
                    m.axpy_row(f, i, r, f.neg(a), c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[dst] += c * row[src], touching columns from `from` onward.
    fn axpy_row(&mut self, f: &Field, dst: usize, src: usize, c: u32, from: usize) {
        for j in from..self.cols {
            let s = self.get(src, j);
            if s != 0 {
                let d = self.get(dst, j);
                self.set(dst, j, f.add(d, f.mul(c, s)));
            }
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).rank
    }

    /// Right null space `{x : M x = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self, f: &Field) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref(f);
        kernel_of_rref(f, &matrix, &pivots)
    }

    pub fn colspace(&self, f: &Field) -> Subspace {
        Subspace::span(f, &self.transpose())
    }

    pub fn rowspace(&self, f: &Field) -> Subspace {
        Subspace::span(f, self)
    }

    pub fn inverse(&self, f: &Field) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let r = aug.rref(f);
        if r.pivots.iter().take(n).copied().ne(0..n) {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j));
            }
        }
        Ok(inv)
    }
}

/// Kernel of a matrix already in RREF with the given pivot columns.
pub(crate) fn kernel_of_rref(f: &Field, r: &Mat, pivots: &[usize]) -> Subspace {
    let n = r.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Mat::zeros(free.len(), n);
    for (b, &fc) in free.iter().enumerate() {
        basis.set(b, fc, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            basis.set(b, pc, f.neg(r.get(i, fc)));
        }
    }
    Subspace::span(f, &basis)
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
