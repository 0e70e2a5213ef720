//! Elements a + b*sqrt(s) of a real quadratic field, with exact sign decisions.
//!
//! `s` is a square-free positive integer; `s == 1` marks a plain rational
//! (b is folded into a). Mixing two distinct irrational fields panics: the
//! callers fix one ambient field per computation.

use super::{format_rational, rational_sign, squarefree_decompose, Rational};
use num::{BigInt, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    s: u64,
    a: Rational,
    b: Rational,
}

impl Quad {
    pub fn new(s: u64, a: Rational, b: Rational) -> Self {
        assert!(s >= 1, "field parameter must be positive");
        let (f, sf) = squarefree_decompose(s);
        assert!(f == 1, "field parameter {s} is not square-free");
        let mut q = Quad { s: sf, a, b };
        q.normalize();
        q
    }

    pub fn from_rational(a: Rational) -> Self {
        Quad { s: 1, a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Exact sqrt(n) for a positive integer n, as f*sqrt(s) with s square-free.
    pub fn sqrt_of(n: u64) -> Self {
        assert!(n > 0);
        let (f, s) = squarefree_decompose(n);
        if s == 1 {
            Quad::from_rational(Rational::from_integer(BigInt::from(f)))
        } else {
            Quad { s, a: Rational::zero(), b: Rational::from_integer(BigInt::from(f)) }
        }
    }

    pub fn field(&self) -> u64 {
        self.s
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.s == 1 {
            if !self.b.is_zero() {
                self.a = &self.a + &self.b;
                self.b = Rational::zero();
            }
        } else if self.b.is_zero() {
            self.s = 1;
        }
    }

    /// Unify field parameters; panics on genuinely incompatible surds.
    fn join_field(&self, other: &Quad) -> u64 {
        match (self.s, other.s) {
            (1, s) | (s, 1) => s,
            (s, t) if s == t => s,
            (s, t) => panic!("incompatible quadratic fields sqrt({s}) vs sqrt({t})"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: decides sign(a + b*sqrt(s)) via sign bookkeeping on a^2 - b^2 s.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // a and b have opposite signs: compare |a| against |b|sqrt(s).
        let s = Rational::from_integer(BigInt::from(self.s));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * s;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn inv(&self) -> Option<Quad> {
        if self.is_zero() {
            return None;
        }
        // 1/(a + b sqrt s) = (a - b sqrt s)/(a^2 - b^2 s)
        let s = Rational::from_integer(BigInt::from(self.s));
        let norm = &self.a * &self.a - &self.b * &self.b * s;
        if norm.is_zero() {
            // impossible for square-free s with (a,b) != 0
            unreachable!("zero field norm for nonzero quadratic number");
        }
        Some(Quad {
            s: self.s,
            a: &self.a / &norm,
            b: -(&self.b / &norm),
        })
        .map(|mut q| {
            q.normalize();
            q
        })
    }

    pub fn scale(&self, r: &Rational) -> Quad {
        let mut q = Quad { s: self.s, a: &self.a * r, b: &self.b * r };
        q.normalize();
        q
    }

    pub fn cmp_exact(&self, other: &Quad) -> std::cmp::Ordering {
        let d = self.clone() - other.clone();
        match d.sign() {
            x if x > 0 => std::cmp::Ordering::Greater,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Less,
        }
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, rhs: Quad) -> Quad {
        let s = self.join_field(&rhs);
        let mut q = Quad { s, a: &self.a + &rhs.a, b: &self.b + &rhs.b };
        q.normalize();
        q
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, rhs: Quad) -> Quad {
        self + (-rhs)
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { s: self.s, a: -self.a, b: -self.b }
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, rhs: Quad) -> Quad {
        let s = self.join_field(&rhs);
        let sr = Rational::from_integer(BigInt::from(s));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &sr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        let mut q = Quad { s, a, b };
        q.normalize();
        q
    }
}

impl<'a> Add<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn add(self, rhs: &Quad) -> Quad {
        self.clone() + rhs.clone()
    }
}
impl<'a> Sub<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn sub(self, rhs: &Quad) -> Quad {
        self.clone() - rhs.clone()
    }
}
impl<'a> Mul<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn mul(self, rhs: &Quad) -> Quad {
        self.clone() * rhs.clone()
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", format_rational(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", format_rational(&self.b), self.s)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                format_rational(&self.a),
                format_rational(&self.b),
                self.s
            )
        }
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Decimal approximation for display surfaces only.
pub fn quad_approx_f64(q: &Quad) -> f64 {
    super::approx_f64(q.rational_part()) + super::approx_f64(q.surd_part()) * (q.field() as f64).sqrt()
}
