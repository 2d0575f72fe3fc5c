//! Dense integer polynomials in `z`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Coefficient `i` multiplies `z^i`. Trailing zeros are never stored, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::from_coeffs(vec![c.into()])
    }

    /// `c * z^deg`.
    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c.into();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Adds `c * z^deg` in place.
    pub fn add_term(&mut self, c: &BigInt, deg: usize) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= deg {
            self.coeffs.resize(deg + 1, BigInt::zero());
        }
        self.coeffs[deg] += c;
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    pub fn eval_i64(&self, z: i64) -> BigInt {
        self.eval(&BigInt::from(z))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPoly::from_coeffs(c)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPoly::from_coeffs(c)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::zero(), |a, b| &a + &b)
    }
}

/// `z^6 - 4*z^4 - 25*z^3 + 44*z^2 + 40*z - 56`; unit coefficients are
/// dropped except on the constant term, and the zero polynomial is `0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let var = match deg {
                0 => String::new(),
                1 => "z".into(),
                d => format!("z^{d}"),
            };
            if deg == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_format() {
        let p = IntPoly::from_i64(&[-56, 40, 44, -25, -4, 0, 1]);
        assert_eq!(p.to_string(), "z^6 - 4*z^4 - 25*z^3 + 44*z^2 + 40*z - 56");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::from_i64(&[1, -2, 1]).to_string(), "z^2 - 2*z + 1");
        assert_eq!(IntPoly::from_i64(&[0, 0, -1]).to_string(), "-z^2");
        assert_eq!(IntPoly::from_i64(&[-1]).to_string(), "-1");
        assert_eq!(IntPoly::from_i64(&[0, -3]).to_string(), "-3*z");
    }

    #[test]
    fn evaluation() {
        let p = IntPoly::from_i64(&[-56, 40, 44, -25, -4, 0, 1]);
        assert_eq!(p.eval_i64(1), BigInt::zero());
        assert_eq!(p.eval_i64(2), BigInt::zero());
        assert_eq!(p.eval_i64(4), BigInt::from(2280));
        assert_eq!(IntPoly::zero().eval_i64(17), BigInt::zero());
    }

    #[test]
    fn normalisation() {
        let p = IntPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!((&p - &p).is_zero());
        assert_eq!(IntPoly::from_i64(&[0, 0]), IntPoly::zero());
    }

    fn poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-50i64..50, 0..6).prop_map(|c| IntPoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn eval_is_a_ring_homomorphism(a in poly(), b in poly(), z in -20i64..20) {
            let z = BigInt::from(z);
            prop_assert_eq!((&a + &b).eval(&z), a.eval(&z) + b.eval(&z));
            prop_assert_eq!((&a * &b).eval(&z), a.eval(&z) * b.eval(&z));
            prop_assert_eq!((&a - &b).eval(&z), a.eval(&z) - b.eval(&z));
        }
    }
}
