//! Cyclotomic numbers of conductor dividing 24.
//!
//! Elements are polynomials in z = zeta_24 of degree < 8, reduced modulo the
//! 24th cyclotomic polynomial x^8 - x^4 + 1. This covers the 2nd, 3rd, 4th,
//! 6th, 8th, 12th and 24th roots of unity needed by the pencil invariance and
//! singularity checks; larger conductors are rejected.

use super::Rational;
use crate::error::{Error, Result};
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const DEG: usize = 8;
const CONDUCTOR: u64 = 24;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    // coefficients of 1, z, ..., z^7
    coeffs: [Rational; DEG],
}

fn zero_coeffs() -> [Rational; DEG] {
    std::array::from_fn(|_| Rational::zero())
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { coeffs: zero_coeffs() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c = zero_coeffs();
        c[0] = r;
        Cyclotomic { coeffs: c }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn i() -> Self {
        Self::zeta_pow(6)
    }

    /// zeta_24^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(CONDUCTOR as i64) as usize;
        let mut c = zero_coeffs();
        if k < DEG {
            c[k] = Rational::one();
            return Cyclotomic { coeffs: c };
        }
        // z^8 = z^4 - 1; reduce by repeated multiplication
        let mut acc = Cyclotomic::one();
        let z = {
            let mut c = zero_coeffs();
            c[1] = Rational::one();
            Cyclotomic { coeffs: c }
        };
        for _ in 0..k {
            acc = acc * z.clone();
        }
        acc
    }

    /// Primitive data: zeta_m^j where m must divide 24.
    pub fn root_of_unity(m: u64, j: i64) -> Result<Self> {
        if m == 0 || CONDUCTOR % m != 0 {
            return Err(Error::UnsupportedCyclotomicOrder(m));
        }
        let step = (CONDUCTOR / m) as i64;
        Ok(Self::zeta_pow(step * j))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn coefficients(&self) -> &[Rational; DEG] {
        &self.coeffs
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        let coeffs = std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]);
        Cyclotomic { coeffs }
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let coeffs = std::array::from_fn(|i| -self.coeffs[i].clone());
        Cyclotomic { coeffs }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        let mut raw = vec![Rational::zero(); 2 * DEG - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] = &raw[i + j] + &(a * b);
            }
        }
        // reduce top-down by x^8 = x^4 - 1
        for k in (DEG..raw.len()).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[k], Rational::zero());
            raw[k - 4] = &raw[k - 4] + &c;
            raw[k - 8] = &raw[k - 8] - &c;
        }
        let coeffs = std::array::from_fn(|i| raw[i].clone());
        Cyclotomic { coeffs }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", super::format_rational(c))?;
            } else {
                write!(f, "{}*z24^{}", super::format_rational(c), i)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
