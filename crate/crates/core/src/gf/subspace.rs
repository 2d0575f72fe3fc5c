use std::fmt;

use super::field::Field;
use super::matrix::Mat;

/// A subspace of `F^n` held by its reduced row echelon basis.
///
/// Equal subspaces have equal representations, so the derived `Eq`, `Hash`
/// and `Ord` are set equality, hashing and the canonical (dimension, then
/// entries) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    dim: usize,
    entries: Vec<u32>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            ambient: n,
            dim: 0,
            entries: Vec::new(),
        }
    }

    pub fn full(_f: &Field, n: usize) -> Subspace {
        Subspace::from_rref_unchecked(n, Mat::identity(n).into_data())
    }

    /// Row span of `m`.
    pub fn span(f: &Field, m: &Mat) -> Subspace {
        let r = m.rref(f);
        let mut entries = r.matrix.into_data();
        entries.truncate(r.rank * m.cols());
        Subspace {
            ambient: m.cols(),
            dim: r.rank,
            entries,
        }
    }

    pub fn span_vectors(f: &Field, n: usize, vectors: &[Vec<u32>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(n);
        }
        Subspace::span(f, &Mat::from_rows(vectors))
    }

    /// Caller guarantees `entries` is already a reduced echelon basis.
    pub(crate) fn from_rref_unchecked(n: usize, entries: Vec<u32>) -> Subspace {
        let dim = entries.len().checked_div(n).unwrap_or(0);
        Subspace {
            ambient: n,
            dim,
            entries,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim == self.ambient
    }

    pub fn basis(&self) -> Mat {
        Mat::from_vec(self.dim, self.ambient, self.entries.clone())
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.dim).map(move |i| self.row(i))
    }

    /// Big-endian bytes of the ambient dimension and the basis entries.
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 * (1 + self.entries.len()));
        out.extend((self.ambient as u32).to_be_bytes());
        for &e in &self.entries {
            out.extend(e.to_be_bytes());
        }
        out
    }

    fn pivot(&self, i: usize) -> usize {
        self.row(i)
            .iter()
            .position(|&x| x != 0)
            .expect("basis rows are nonzero")
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    fn reduce(&self, f: &Field, v: &mut [u32]) {
        for i in 0..self.dim {
            let p = self.pivot(i);
            let c = v[p];
            if c != 0 {
                for (x, &b) in v.iter_mut().zip(self.row(i)) {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
    }

    pub fn contains(&self, f: &Field, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn leq(&self, f: &Field, other: &Subspace) -> bool {
        self.dim <= other.dim && self.rows().all(|r| other.contains(f, r))
    }

    pub fn join(&self, f: &Field, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim == 0 {
            return other.clone();
        }
        if other.dim == 0 {
            return self.clone();
        }
        Subspace::span(f, &self.basis().stack(&other.basis()))
    }

    pub fn meet(&self, f: &Field, other: &Subspace) -> Subspace {
        if self.leq(f, other) {
            return self.clone();
        }
        if other.leq(f, self) {
            return other.clone();
        }
        self.perp(f).join(f, &other.perp(f)).perp(f)
    }

    /// Orthogonal complement under the standard dot product.
    pub fn perp(&self, f: &Field) -> Subspace {
        if self.dim == 0 {
            return Subspace::full(f, self.ambient);
        }
        super::matrix::kernel_of_rref(f, &self.basis(), &self.pivots())
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim).map(|i| self.pivot(i)).collect()
    }

    /// Rows that extend a basis of `self` to a basis of `sup`, assuming
    /// `self ≤ sup`.
    pub fn extension_basis(&self, f: &Field, sup: &Subspace) -> Mat {
        let mut cur = self.clone();
        let mut ext = Vec::new();
        for r in sup.rows() {
            if !cur.contains(f, r) {
                ext.push(r.to_vec());
                cur = cur.join(f, &Subspace::span_vectors(f, self.ambient, &[r.to_vec()]));
            }
        }
        if ext.is_empty() {
            Mat::zeros(0, self.ambient)
        } else {
            Mat::from_rows(&ext)
        }
    }

    /// Image of the subspace under the linear map `x ↦ x·A` for an
    /// `ambient × c` matrix `A`.
    pub fn map(&self, f: &Field, a: &Mat) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(a.cols());
        }
        Subspace::span(f, &self.basis().mul(f, a))
    }

    /// Compact text form: rows as digit strings joined by `;`, `-` for zero.
    /// Entries are comma-separated when any exceeds 9.
    pub fn compact(&self) -> String {
        if self.dim == 0 {
            return "-".into();
        }
        let wide = self.entries.iter().any(|&e| e > 9);
        let rows: Vec<String> = self
            .rows()
            .map(|r| {
                let s: Vec<String> = r.iter().map(u32::to_string).collect();
                s.join(if wide { "," } else { "" })
            })
            .collect();
        rows.join(";")
    }
}

/// One basis row per line, entries space-separated; `0` for the zero space.
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 0 {
            return writeln!(f, "0");
        }
        write!(f, "{}", self.basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_vectors(n: usize) -> Vec<Vec<u32>> {
        (0..1u32 << n).map(|x| (0..n).map(|i| (x >> i) & 1).collect()).collect()
    }

    /// Every subspace of F_2^n by closing all subsets of vectors; slow but independent.
    fn all_subspaces_brute(n: usize) -> Vec<Subspace> {
        let f = Field::new(2).unwrap();
        let vs = all_vectors(n);
        let mut out: Vec<Subspace> = Vec::new();
        for mask in 0u64..1 << vs.len().min(16) {
            let chosen: Vec<Vec<u32>> = (0..vs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vs[i].clone())
                .collect();
            if chosen.len() > n {
                continue;
            }
            let s = Subspace::span_vectors(&f, n, &chosen);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn perp_examples() {
        let f = Field::new(2).unwrap();
        assert_eq!(Subspace::zero(3).perp(&f), Subspace::full(&f, 3));
        assert_eq!(Subspace::full(&f, 3).perp(&f), Subspace::zero(3));
        let d = Subspace::span_vectors(&f, 2, &[vec![1, 1]]);
        assert_eq!(d.perp(&f), d);
    }

    #[test]
    fn perp_is_involution_and_matches_dot_products() {
        let f = Field::new(2).unwrap();
        for n in 1..=4 {
            let vs = all_vectors(n);
            for u in all_subspaces_brute(n) {
                let p = u.perp(&f);
                assert_eq!(p.dim() + u.dim(), n);
                assert_eq!(p.perp(&f), u);
                for v in &vs {
                    let orth = u
                        .rows()
                        .all(|r| r.iter().zip(v).map(|(a, b)| a * b).sum::<u32>() % 2 == 0);
                    assert_eq!(orth, p.contains(&f, v));
                }
            }
        }
    }

    #[test]
    fn join_meet_examples() {
        let f = Field::new(2).unwrap();
        let e = |i: usize| {
            let mut v = vec![0; 3];
            v[i] = 1;
            v
        };
        let e1 = Subspace::span_vectors(&f, 3, &[e(0)]);
        let e2 = Subspace::span_vectors(&f, 3, &[e(1)]);
        assert_eq!(e1.join(&f, &Subspace::zero(3)), e1);
        assert_eq!(e1.meet(&f, &Subspace::full(&f, 3)), e1);
        assert_eq!(e1.join(&f, &e2), Subspace::span_vectors(&f, 3, &[e(0), e(1)]));
        let a = Subspace::span_vectors(&f, 3, &[e(0), e(1)]);
        let b = Subspace::span_vectors(&f, 3, &[e(1), e(2)]);
        assert_eq!(a.meet(&f, &b), e2);
    }

    #[test]
    fn dimension_formula_exhaustive_f2_3() {
        let f = Field::new(2).unwrap();
        let subs = all_subspaces_brute(3);
        assert_eq!(subs.len(), 16);
        let vs = all_vectors(3);
        for u in &subs {
            for v in &subs {
                let (j, m) = (u.join(&f, v), u.meet(&f, v));
                assert_eq!(j.dim() + m.dim(), u.dim() + v.dim());
                for x in &vs {
                    assert_eq!(m.contains(&f, x), u.contains(&f, x) && v.contains(&f, x));
                }
            }
        }
    }

    #[test]
    fn colspace_of_a_word() {
        // X_2 of the [5x3,6,1] example
        let f = Field::new(2).unwrap();
        let x2 = Mat::from_rows(&[
            vec![0, 1, 1],
            vec![1, 1, 1],
            vec![1, 1, 1],
            vec![0, 1, 0],
            vec![1, 0, 0],
        ]);
        let expect = Subspace::span_vectors(&f, 5, &[vec![0, 0, 0, 1, 0], vec![1, 1, 1, 0, 0], vec![0, 1, 1, 0, 1]]);
        assert_eq!(x2.colspace(&f), expect);
    }

    #[test]
    fn compact_and_display() {
        let f = Field::new(2).unwrap();
        let u = Subspace::span_vectors(&f, 3, &[vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.compact(), "110;001");
        assert_eq!(u.to_string(), "1 1 0\n0 0 1\n");
        assert_eq!(Subspace::zero(3).compact(), "-");
    }
}
