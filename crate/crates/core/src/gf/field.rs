//! Finite fields of prime-power order with log/antilog multiplication.
//!
//! Elements of a field of order `p^e` are encoded as integers in `[0, p^e)`;
//! the base-`p` digits of an element are its coordinates in the polynomial
//! basis of the defining modulus. Addition is digit-wise, multiplication goes
//! through discrete-log tables built once at construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    order: u32,
    p: u32,
    degree: u32,
    /// `exp[i] = g^i`, stored twice over so that `log a + log b` never wraps.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.order)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.order == other.0.order && self.0.exp == other.0.exp)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e`, returning `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The field of order `q`. Prime-power orders are realised over the prime
    /// field with the smallest irreducible modulus.
    pub fn new(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or(Error::InvalidField(q))?;
        if q > MAX_ORDER {
            return Err(Error::InvalidField(q));
        }
        let prime = Field::prime(p as u32);
        if e == 1 {
            return Ok(prime);
        }
        let modulus = super::poly::smallest_irreducible_over(&prime, e as usize);
        Field::from_modulus(&prime, &modulus)
    }

    fn prime(p: u32) -> Field {
        let n = p - 1;
        let factors = prime_factors(n as u64);
        let pow = |mut b: u64, mut e: u64| {
            let mut acc = 1u64;
            b %= p as u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * b % p as u64;
                }
                b = b * b % p as u64;
                e >>= 1;
            }
            acc
        };
        let g = (1..p as u64)
            .find(|&g| factors.iter().all(|r| pow(g, n as u64 / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![0u32; p as usize];
        let mut x = 1u64;
        for i in 0..n {
            exp.push(x as u32);
            log[x as usize] = i;
            x = x * g % p as u64;
        }
        exp.extend_from_within(..);
        Field(Arc::new(Inner {
            order: p,
            p,
            degree: 1,
            exp,
            log,
        }))
    }

    /// Builds `base[x]/(modulus)`. The modulus must be monic and irreducible;
    /// callers in this crate validate that beforehand.
    pub(crate) fn from_modulus(base: &Field, modulus: &[u32]) -> Result<Field> {
        let m = modulus.len() - 1;
        if m == 1 {
            return Ok(base.clone());
        }
        let q = base.order() as u64;
        let order = q.checked_pow(m as u32).filter(|&o| o <= MAX_ORDER);
        let order = order.ok_or(Error::InvalidField(q.saturating_pow(m as u32)))? as u32;
        let n = order - 1;
        let factors = prime_factors(n as u64);
        let to_digits = |x: u32| super::poly::digits(x, base.order(), m);
        let one = {
            let mut v = vec![0; m];
            v[0] = 1;
            v
        };
        let is_primitive = |g: u32| {
            let gd = to_digits(g);
            factors
                .iter()
                .all(|r| super::poly::pow_mod(base, &gd, n as u64 / r, modulus) != one)
        };
        let alpha = base.order();
        let g = if is_primitive(alpha) {
            alpha
        } else {
            (2..order)
                .find(|&g| is_primitive(g))
                .expect("multiplicative group is cyclic")
        };
        let gd = to_digits(g);
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![0u32; order as usize];
        let mut cur = one.clone();
        for i in 0..n {
            let x = super::poly::from_digits(&cur, base.order());
            exp.push(x);
            log[x as usize] = i;
            cur = if g == alpha {
                super::poly::mul_by_x_mod(base, &cur, modulus)
            } else {
                super::poly::mul_mod(base, &cur, &gd, modulus)
            };
        }
        exp.extend_from_within(..);
        Ok(Field(Arc::new(Inner {
            order,
            p: base.characteristic(),
            degree: base.0.degree * m as u32,
            exp,
            log,
        })))
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn prime_degree(&self) -> u32 {
        self.0.degree
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.order
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.degree == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut place, mut out) = (a, b, 1, 0);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 || a == 0 {
            return a;
        }
        if self.0.degree == 1 {
            return p - a;
        }
        let (mut a, mut place, mut out) = (a, 1, 0);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.order == 2 {
            return 1;
        }
        let i = self.0.log[a as usize] + self.0.log[b as usize];
        self.0.exp[i as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let n = self.0.order - 1;
        let l = self.0.log[a as usize];
        self.0.exp[((n - l) % n) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.order - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        self.0.exp[((l * (e % n)) % n) as usize]
    }
}
