//! Truncated universal Novikov field arithmetic: finite sorted term lists
//! with Gaussian-rational coefficients and rational exponents, explicit
//! truncation tracking, valuations, and exponent-scaling automorphisms.
//!
//! Truncation semantics: exponents at or above `trunc` are unknown. An
//! operation computes the tightest sound output truncation; equality is only
//! meaningful below the common truncation.

use crate::error::{Error, Result};
use crate::num::{Gaussian, Rational};
use num::{BigInt, Zero};
use std::fmt;

/// Truncation level: a finite exponent bound or fully known (+infinity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trunc {
    Finite(Rational),
    Infinite,
}

impl Trunc {
    fn min(a: &Trunc, b: &Trunc) -> Trunc {
        match (a, b) {
            (Trunc::Infinite, x) | (x, Trunc::Infinite) => x.clone(),
            (Trunc::Finite(x), Trunc::Finite(y)) => Trunc::Finite(x.clone().min(y.clone())),
        }
    }

    fn admits(&self, e: &Rational) -> bool {
        match self {
            Trunc::Infinite => true,
            Trunc::Finite(t) => e < t,
        }
    }

    /// Shift a finite truncation by a valuation-like offset.
    fn shift(&self, by: &Valuation) -> Trunc {
        match (self, by) {
            (Trunc::Finite(t), Valuation::Finite(v)) => Trunc::Finite(t + v),
            (Trunc::Finite(t), Valuation::Unknown(v)) => Trunc::Finite(t + v),
            _ => Trunc::Infinite,
        }
    }
}

/// Valuation of a truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(Rational),
    /// The series is exactly zero (no terms, no truncation).
    Infinity,
    /// No terms below the truncation: the valuation is only known to be at
    /// least this bound.
    Unknown(Rational),
}

/// A truncated Novikov series: strictly increasing exponents, nonzero
/// Gaussian-rational coefficients, all below the truncation level.
#[derive(Clone, PartialEq)]
pub struct NovikovSeries {
    terms: Vec<(Rational, Gaussian)>,
    trunc: Trunc,
}

impl fmt::Debug for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            let parts: Vec<String> = self
                .terms
                .iter()
                .map(|(e, c)| format!("({c}) q^{}", crate::num::format_rational(e)))
                .collect();
            write!(f, "{}", parts.join(" + "))?;
        }
        match &self.trunc {
            Trunc::Infinite => Ok(()),
            Trunc::Finite(t) => write!(f, " + O(q^{})", crate::num::format_rational(t)),
        }
    }
}

impl NovikovSeries {
    pub fn new(mut terms: Vec<(Rational, Gaussian)>, trunc: Trunc) -> Result<Self> {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        for w in terms.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidParameter(format!(
                    "duplicate exponent {}",
                    crate::num::format_rational(&w[0].0)
                )));
            }
        }
        if let Trunc::Finite(t) = &trunc {
            if terms.iter().any(|(e, _)| e >= t) {
                return Err(Error::InvalidParameter(
                    "terms at or above the truncation level".into(),
                ));
            }
        }
        Ok(NovikovSeries { terms, trunc })
    }

    /// The exact zero (fully known).
    pub fn zero() -> Self {
        NovikovSeries { terms: vec![], trunc: Trunc::Infinite }
    }

    /// An unknown tail: no visible terms below the bound.
    pub fn unknown_above(bound: Rational) -> Self {
        NovikovSeries { terms: vec![], trunc: Trunc::Finite(bound) }
    }

    pub fn constant(c: Gaussian) -> Self {
        NovikovSeries::new(vec![(Rational::zero(), c)], Trunc::Infinite).expect("single term")
    }

    pub fn constant_int(v: i64) -> Self {
        Self::constant(Gaussian::from_int(v))
    }

    /// c * q^e.
    pub fn monomial(e: Rational, c: Gaussian) -> Self {
        NovikovSeries::new(vec![(e, c)], Trunc::Infinite).expect("single term")
    }

    pub fn terms(&self) -> &[(Rational, Gaussian)] {
        &self.terms
    }

    pub fn trunc(&self) -> &Trunc {
        &self.trunc
    }

    /// No visible terms and no truncation: the literal zero element.
    pub fn is_structural_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc == Trunc::Infinite
    }

    pub fn negate(&self) -> Self {
        NovikovSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
            trunc: self.trunc.clone(),
        }
    }

    /// Equality below the common truncation level.
    pub fn eq_below_common_trunc(&self, other: &Self) -> bool {
        let t = Trunc::min(&self.trunc, &other.trunc);
        let mine: Vec<_> = self.terms.iter().filter(|(e, _)| t.admits(e)).collect();
        let theirs: Vec<_> = other.terms.iter().filter(|(e, _)| t.admits(e)).collect();
        mine == theirs
    }
}

/// First exponent with nonzero coefficient; Infinity for exact zero; Unknown
/// with the truncation bound when no term is visible.
pub fn nov_val(x: &NovikovSeries) -> Valuation {
    match x.terms.first() {
        Some((e, _)) => Valuation::Finite(e.clone()),
        None => match &x.trunc {
            Trunc::Infinite => Valuation::Infinity,
            Trunc::Finite(t) => Valuation::Unknown(t.clone()),
        },
    }
}

pub fn nov_add(x: &NovikovSeries, y: &NovikovSeries) -> NovikovSeries {
    let trunc = Trunc::min(&x.trunc, &y.trunc);
    let mut terms: Vec<(Rational, Gaussian)> = Vec::with_capacity(x.terms.len() + y.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < x.terms.len() || j < y.terms.len() {
        let take_x = match (x.terms.get(i), y.terms.get(j)) {
            (Some(a), Some(b)) => {
                if a.0 == b.0 {
                    let c = a.1.clone() + b.1.clone();
                    if !c.is_zero() {
                        terms.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                    continue;
                }
                a.0 < b.0
            }
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if take_x {
            terms.push(x.terms[i].clone());
            i += 1;
        } else {
            terms.push(y.terms[j].clone());
            j += 1;
        }
    }
    terms.retain(|(e, _)| trunc.admits(e));
    NovikovSeries { terms, trunc }
}

pub fn nov_sub(x: &NovikovSeries, y: &NovikovSeries) -> NovikovSeries {
    nov_add(x, &y.negate())
}

/// Cauchy product with the tightest sound truncation:
/// min(val x + trunc y, val y + trunc x).
pub fn nov_mul(x: &NovikovSeries, y: &NovikovSeries) -> NovikovSeries {
    let tx = x.trunc.shift(&nov_val(y));
    let ty = y.trunc.shift(&nov_val(x));
    let mut trunc = Trunc::min(&tx, &ty);
    // the exact zero annihilates truncation uncertainty
    if x.is_structural_zero() || y.is_structural_zero() {
        trunc = Trunc::Infinite;
    }
    let mut acc: std::collections::BTreeMap<Rational, Gaussian> = Default::default();
    for (e1, c1) in &x.terms {
        for (e2, c2) in &y.terms {
            let e = e1 + e2;
            if !trunc.admits(&e) {
                continue;
            }
            let add = c1.clone() * c2.clone();
            let entry = acc.entry(e).or_insert_with(Gaussian::zero);
            *entry = entry.clone() + add;
        }
    }
    let terms: Vec<(Rational, Gaussian)> =
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    NovikovSeries { terms, trunc }
}

/// The exponent-scaling automorphism q -> q^a for a > 0: multiplies every
/// exponent (and the truncation) by a; scales valuations by a.
pub fn nov_scale_exponents(a: &Rational, x: &NovikovSeries) -> Result<NovikovSeries> {
    if *a <= Rational::zero() {
        return Err(Error::InvalidParameter("exponent scale must be positive".into()));
    }
    let terms = x.terms.iter().map(|(e, c)| (e * a, c.clone())).collect();
    let trunc = match &x.trunc {
        Trunc::Infinite => Trunc::Infinite,
        Trunc::Finite(t) => Trunc::Finite(t * a),
    };
    Ok(NovikovSeries { terms, trunc })
}

/// Entrywise valuation vector. Zero entries (valuation +infinity) and
/// unknown-valuation entries are errors: the output is a rational vector.
pub fn valuation_vector(d: &[NovikovSeries]) -> Result<Vec<Rational>> {
    d.iter()
        .enumerate()
        .map(|(i, x)| match nov_val(x) {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinity => Err(Error::UnknownValuation(format!(
                "entry {i} is zero (valuation +infinity)"
            ))),
            Valuation::Unknown(b) => Err(Error::UnknownValuation(format!(
                "entry {i} has unknown valuation (>= {})",
                crate::num::format_rational(&b)
            ))),
        })
        .collect()
}

/// Exact avoidance of finitely many rational hyperplanes: true iff
/// <h, lambda> != 0 for every supplied normal vector h, decided in the
/// quadratic field (both the rational and surd parts must vanish for
/// membership).
pub fn avoids_rational_hyperplanes(
    lambda: &[crate::num::Quad],
    hyperplanes: &[Vec<Rational>],
) -> Result<bool> {
    for (i, h) in hyperplanes.iter().enumerate() {
        if h.len() != lambda.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} coordinates", lambda.len()),
                got: format!("hyperplane {i} has {}", h.len()),
            });
        }
        let mut acc = crate::num::Quad::zero();
        for (c, l) in h.iter().zip(lambda) {
            acc = acc + l.scale(c);
        }
        if acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience: q^e with coefficient 1.
pub fn q_power(num: i64, den: i64) -> NovikovSeries {
    NovikovSeries::monomial(Rational::new(BigInt::from(num), BigInt::from(den)), Gaussian::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, Quad};

    fn g(n: i64) -> Gaussian {
        Gaussian::from_int(n)
    }

    #[test]
    fn valuations() {
        let x = NovikovSeries::new(
            vec![(rat(2, 1), g(3)), (rat(1, 2), g(1))],
            Trunc::Infinite,
        )
        .unwrap();
        assert_eq!(nov_val(&x), Valuation::Finite(rat(1, 2)));
        assert_eq!(nov_val(&NovikovSeries::zero()), Valuation::Infinity);
        assert_eq!(
            nov_val(&NovikovSeries::unknown_above(rat(3, 1))),
            Valuation::Unknown(rat(3, 1))
        );
    }

    #[test]
    fn multiplication() {
        // (2 q^{1/3}) (5 q^{1/6}) = 10 q^{1/2}
        let a = NovikovSeries::monomial(rat(1, 3), g(2));
        let b = NovikovSeries::monomial(rat(1, 6), g(5));
        let p = nov_mul(&a, &b);
        assert_eq!(p.terms(), &[(rat(1, 2), g(10))]);

        // (1 + q)(1 - q) = 1 - q^2
        let one_plus = nov_add(&NovikovSeries::constant_int(1), &q_power(1, 1));
        let one_minus = nov_sub(&NovikovSeries::constant_int(1), &q_power(1, 1));
        let p = nov_mul(&one_plus, &one_minus);
        assert_eq!(p.terms(), &[(rat(0, 1), g(1)), (rat(2, 1), g(-2) + g(1))]);
    }

    #[test]
    fn val_is_multiplicative() {
        let a = NovikovSeries::new(vec![(rat(1, 2), g(1)), (rat(2, 1), g(3))], Trunc::Infinite)
            .unwrap();
        let b = NovikovSeries::new(vec![(rat(1, 3), g(2)), (rat(3, 1), g(7))], Trunc::Infinite)
            .unwrap();
        match (nov_val(&a), nov_val(&b), nov_val(&nov_mul(&a, &b))) {
            (Valuation::Finite(x), Valuation::Finite(y), Valuation::Finite(z)) => {
                assert_eq!(z, x + y)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn truncation_tracking() {
        // x = q + O(q^5), y = q^2 + O(q^3): x*y = q^3 + O(q^4):
        // trunc = min(val x + trunc y, val y + trunc x) = min(1+3, 2+5) = 4
        let x = NovikovSeries::new(vec![(rat(1, 1), g(1))], Trunc::Finite(rat(5, 1))).unwrap();
        let y = NovikovSeries::new(vec![(rat(2, 1), g(1))], Trunc::Finite(rat(3, 1))).unwrap();
        let p = nov_mul(&x, &y);
        assert_eq!(p.trunc(), &Trunc::Finite(rat(4, 1)));
        assert_eq!(p.terms(), &[(rat(3, 1), g(1))]);

        // addition: common truncation, terms above it dropped
        let s = nov_add(&x, &y);
        assert_eq!(s.trunc(), &Trunc::Finite(rat(3, 1)));
        assert_eq!(s.terms(), &[(rat(1, 1), g(1)), (rat(2, 1), g(1))]);
    }

    #[test]
    fn equality_below_common_truncation() {
        let x = NovikovSeries::new(vec![(rat(1, 1), g(1))], Trunc::Finite(rat(2, 1))).unwrap();
        let y = NovikovSeries::new(
            vec![(rat(1, 1), g(1)), (rat(5, 2), g(9))],
            Trunc::Finite(rat(3, 1)),
        )
        .unwrap();
        assert!(x.eq_below_common_trunc(&y));
        assert!(x != y);
    }

    #[test]
    fn exponent_scaling() {
        let x = NovikovSeries::new(vec![(rat(1, 2), g(1)), (rat(2, 1), g(3))], Trunc::Infinite)
            .unwrap();
        let s = nov_scale_exponents(&rat(2, 1), &x).unwrap();
        assert_eq!(s.terms(), &[(rat(1, 1), g(1)), (rat(4, 1), g(3))]);
        let id = nov_scale_exponents(&rat(1, 1), &x).unwrap();
        assert_eq!(id, x);
        assert!(nov_scale_exponents(&rat(-1, 1), &x).is_err());
        assert!(nov_scale_exponents(&rat(0, 1), &x).is_err());

        // automorphism property on a product
        let y = NovikovSeries::new(vec![(rat(1, 3), g(2))], Trunc::Infinite).unwrap();
        let lhs = nov_scale_exponents(&rat(3, 2), &nov_mul(&x, &y)).unwrap();
        let rhs = nov_mul(
            &nov_scale_exponents(&rat(3, 2), &x).unwrap(),
            &nov_scale_exponents(&rat(3, 2), &y).unwrap(),
        );
        assert_eq!(lhs, rhs);

        // composition law
        let ab = nov_scale_exponents(&rat(2, 1), &nov_scale_exponents(&rat(3, 1), &x).unwrap())
            .unwrap();
        let direct = nov_scale_exponents(&rat(6, 1), &x).unwrap();
        assert_eq!(ab, direct);
    }

    #[test]
    fn valuation_vectors() {
        let d = vec![q_power(1, 1), q_power(3, 2)];
        assert_eq!(valuation_vector(&d).unwrap(), vec![rat(1, 1), rat(3, 2)]);
        let with_zero = vec![q_power(1, 1), NovikovSeries::zero()];
        assert!(valuation_vector(&with_zero).is_err());
        let with_unknown = vec![NovikovSeries::unknown_above(rat(1, 1))];
        assert!(valuation_vector(&with_unknown).is_err());

        // scaled vector: val(psi_a(d)) = a * val(d)
        let a = rat(5, 3);
        let scaled: Vec<NovikovSeries> =
            d.iter().map(|x| nov_scale_exponents(&a, x).unwrap()).collect();
        let v = valuation_vector(&d).unwrap();
        let sv = valuation_vector(&scaled).unwrap();
        for (orig, s) in v.iter().zip(&sv) {
            assert_eq!(s, &(orig * &a));
        }
    }

    #[test]
    fn hyperplane_avoidance() {
        let s2 = Quad::sqrt_of(2);
        // (1, sqrt 2) avoids x - y = 0
        let lam = vec![Quad::one(), s2.clone()];
        let h = vec![vec![rat(1, 1), rat(-1, 1)]];
        assert!(avoids_rational_hyperplanes(&lam, &h).unwrap());
        // (sqrt2, sqrt2) lies on it
        let lam2 = vec![s2.clone(), s2];
        assert!(!avoids_rational_hyperplanes(&lam2, &h).unwrap());
        // empty list: trivially avoided
        assert!(avoids_rational_hyperplanes(&lam2, &[]).unwrap());
        // shape mismatch
        assert!(avoids_rational_hyperplanes(&lam2, &[vec![rat(1, 1)]]).is_err());
    }

    #[test]
    fn ring_axioms_below_truncation() {
        let xs = [
            NovikovSeries::new(vec![(rat(0, 1), g(2)), (rat(1, 2), g(-1))], Trunc::Finite(rat(3, 1)))
                .unwrap(),
            NovikovSeries::new(vec![(rat(1, 3), g(5))], Trunc::Infinite).unwrap(),
            NovikovSeries::new(
                vec![(rat(-1, 2), g(1)), (rat(1, 1), Gaussian::i())],
                Trunc::Finite(rat(2, 1)),
            )
            .unwrap(),
        ];
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    let assoc_l = nov_mul(&nov_mul(a, b), c);
                    let assoc_r = nov_mul(a, &nov_mul(b, c));
                    assert!(assoc_l.eq_below_common_trunc(&assoc_r));
                    let dist_l = nov_mul(a, &nov_add(b, c));
                    let dist_r = nov_add(&nov_mul(a, b), &nov_mul(a, c));
                    assert!(dist_l.eq_below_common_trunc(&dist_r));
                }
            }
        }
    }
}
