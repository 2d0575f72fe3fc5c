use super::field::{Field, MAX_ORDER};
use super::matrix::Mat;
use super::poly;
use crate::error::{Error, Result};

/// GF(q^m) presented over a base field GF(q) by a monic irreducible modulus.
///
/// Elements are integers in `[0, q^m)` whose base-q digits are coordinates
/// in the polynomial basis `(1, α, ..., α^{m-1})`. Base-field elements embed
/// as the constants `0..q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: Field,
    degree: usize,
    modulus: Vec<u32>,
    field: Field,
}

impl ExtField {
    pub fn new(base: Field, m: usize) -> Result<Self> {
        check_order(&base, m)?;
        let modulus = poly::smallest_irreducible_over(&base, m);
        Self::build(base, modulus)
    }

    pub fn with_modulus(base: Field, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= base.order()) {
            return Err(Error::InvalidModulus("coefficient outside the base field".into()));
        }
        check_order(&base, modulus.len() - 1)?;
        if !poly::is_irreducible(&base, &modulus) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible")));
        }
        Self::build(base, modulus)
    }

    fn build(base: Field, modulus: Vec<u32>) -> Result<Self> {
        let field = Field::from_modulus(&base, &modulus)?;
        Ok(ExtField {
            degree: modulus.len() - 1,
            base,
            modulus,
            field,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// The extension as a field in its own right.
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Coordinates of `x` in the polynomial basis.
    pub fn digits(&self, x: u32) -> Vec<u32> {
        poly::digits(x, self.base.order(), self.degree)
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        poly::from_digits(d, self.base.order())
    }

    /// The basis element `α^j`, `j < m`.
    pub fn basis_element(&self, j: usize) -> u32 {
        assert!(j < self.degree);
        self.base.order().pow(j as u32)
    }

    /// `x^(q^i)`.
    pub fn frobenius(&self, x: u32, i: u32) -> u32 {
        let e = (self.base.order() as u64).pow(i) % (self.order() as u64 - 1).max(1);
        if x == 0 {
            0
        } else if e == 0 {
            // x^(q^i) with q^i ≡ 0 mod (order - 1) means the full cycle
            self.field.pow(x, self.order() as u64 - 1)
        } else {
            self.field.pow(x, e)
        }
    }

    /// Expands a vector over GF(q^m) into the n×m matrix over GF(q) whose
    /// i-th row holds the coordinates of `x_i`.
    pub fn gamma_expand(&self, x: &[u32]) -> Mat {
        let mut data = Vec::with_capacity(x.len() * self.degree);
        for &xi in x {
            data.extend(self.digits(xi));
        }
        Mat::from_vec(x.len(), self.degree, data)
    }

    /// Inverse of [`ExtField::gamma_expand`].
    pub fn gamma_collapse(&self, m: &Mat) -> Vec<u32> {
        assert_eq!(m.cols(), self.degree);
        (0..m.rows()).map(|i| self.from_digits(m.row(i))).collect()
    }
}

fn check_order(base: &Field, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParams("extension degree must be at least 1".into()));
    }
    let ok = (base.order() as u64)
        .checked_pow(m as u32)
        .is_some_and(|o| o <= MAX_ORDER);
    if !ok {
        return Err(Error::InvalidField(base.order() as u64));
    }
    Ok(())
}
