//! Monomial polynomials over exact coefficient rings: the Batyrev mirror
//! equation with Novikov coefficients, diagonal root-of-unity invariance of
//! the Dwork and double-plane pencils, and exact singular-point tests.

use crate::error::{Error, Result};
use crate::novikov::NovikovSeries;
use crate::num::{Cyclotomic, Rational};
use crate::subdivision::WeightVector;
use num::{BigInt, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Coefficient ring interface for monomial polynomials.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    fn c_zero() -> Self;
    fn c_add(&self, o: &Self) -> Self;
    fn c_mul(&self, o: &Self) -> Self;
    fn c_neg(&self) -> Self;
    fn c_is_zero(&self) -> bool;
    fn c_from_int(v: i64) -> Self;
}

impl CoeffRing for Rational {
    fn c_zero() -> Self {
        Rational::zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn c_neg(&self) -> Self {
        -self.clone()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl CoeffRing for Cyclotomic {
    fn c_zero() -> Self {
        Cyclotomic::zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn c_mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn c_neg(&self) -> Self {
        -self.clone()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_from_int(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

impl CoeffRing for NovikovSeries {
    fn c_zero() -> Self {
        NovikovSeries::zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        crate::novikov::nov_add(self, o)
    }
    fn c_mul(&self, o: &Self) -> Self {
        crate::novikov::nov_mul(self, o)
    }
    fn c_neg(&self) -> Self {
        self.negate()
    }
    fn c_is_zero(&self) -> bool {
        self.is_structural_zero()
    }
    fn c_from_int(v: i64) -> Self {
        NovikovSeries::constant_int(v)
    }
}

/// A polynomial as a map from integer exponent vectors to coefficients;
/// zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct MonomialPolynomial<C: CoeffRing> {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, C>,
}

impl<C: CoeffRing> fmt::Debug for MonomialPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialPolynomial({} vars, {} terms)", self.nvars, self.terms.len())
    }
}

impl<C: CoeffRing> MonomialPolynomial<C> {
    pub fn new(nvars: usize) -> Self {
        MonomialPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, expo: &[i64]) -> Option<&C> {
        self.terms.get(expo)
    }

    pub fn add_term(&mut self, expo: Vec<i64>, coeff: C) -> Result<()> {
        if expo.len() != self.nvars {
            return Err(Error::ShapeMismatch {
                expected: format!("{} exponents", self.nvars),
                got: format!("{}", expo.len()),
            });
        }
        let entry = self.terms.entry(expo);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get().c_add(&coeff);
                if merged.c_is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if !coeff.c_is_zero() {
                    v.insert(coeff);
                }
            }
        }
        Ok(())
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Vec<i64>, C)>) -> Result<Self> {
        let mut p = Self::new(nvars);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    /// Weighted degree of each monomial; None if not homogeneous.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        if weights.len() != self.nvars {
            return None;
        }
        let mut deg: Option<i64> = None;
        for e in self.terms.keys() {
            let d: i64 = e.iter().zip(weights).map(|(a, w)| a * w).sum();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing == d => {}
                _ => return None,
            }
        }
        deg
    }

    /// Formal partial derivative in variable i.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::new(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            let scaled = c.c_mul(&C::c_from_int(k));
            out.add_term(e2, scaled).expect("same arity");
        }
        out
    }

    /// Exact evaluation; negative exponents require invertible coordinates
    /// and are rejected here (the callers only use Laurent monomials with
    /// nonnegative exponents for evaluation).
    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::ShapeMismatch {
                expected: format!("{} coordinates", self.nvars),
                got: format!("{}", point.len()),
            });
        }
        let mut acc = C::c_zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k < 0 {
                    return Err(Error::InvalidParameter(
                        "evaluation needs nonnegative exponents".into(),
                    ));
                }
                for _ in 0..k {
                    term = term.c_mul(x);
                }
            }
            acc = acc.c_add(&term);
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Mirror equation
// ---------------------------------------------------------------------------

/// Result of assembling the mirror hypersurface equation: the polynomial
/// -chi^0 + sum d_kappa chi^kappa together with its valuation vector
/// (zero coefficients report valuation +infinity).
#[derive(Clone, Debug)]
pub struct MirrorEquation {
    pub polynomial: MonomialPolynomial<NovikovSeries>,
    pub valuations: Vec<crate::novikov::Valuation>,
}

impl MirrorEquation {
    /// The valuation vector as rationals; errors on zero or unknown entries.
    pub fn rational_valuations(&self) -> Result<Vec<Rational>> {
        self.valuations
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                crate::novikov::Valuation::Finite(r) => Ok(r.clone()),
                _ => Err(Error::UnknownValuation(format!("entry {i} is {v:?}"))),
            })
            .collect()
    }
}

/// Assemble the mirror equation for coefficients d indexed by Xi0 of the
/// dual polytope. Coefficients with unknown valuation are rejected.
pub fn mirror_equation(
    p_dual: &crate::polytope::LatticePolytope,
    d: &[NovikovSeries],
) -> Result<MirrorEquation> {
    let xi = crate::polytope::xi0(p_dual)?;
    if d.len() != xi.len() {
        return Err(Error::WeightMismatch(format!(
            "{} coefficients for {} Xi0 points",
            d.len(),
            xi.len()
        )));
    }
    let dim = p_dual.dim();
    let mut poly = MonomialPolynomial::new(dim);
    poly.add_term(vec![0; dim], NovikovSeries::constant_int(-1))?;
    let mut valuations = Vec::with_capacity(d.len());
    for (kappa, coeff) in xi.iter().zip(d) {
        if !coeff.is_structural_zero() {
            poly.add_term(kappa.clone(), coeff.clone())?;
        }
        match crate::novikov::nov_val(coeff) {
            crate::novikov::Valuation::Unknown(_) => {
                return Err(Error::UnknownValuation(format!(
                    "coefficient at {kappa:?} has unknown valuation"
                )))
            }
            v => valuations.push(v),
        }
    }
    Ok(MirrorEquation { polynomial: poly, valuations })
}

/// The coefficient family d_kappa = q^(lambda_kappa) for a rational weight
/// vector; by construction val(d) = lambda.
pub fn coefficients_from_weights(lambda: &WeightVector) -> Result<Vec<NovikovSeries>> {
    lambda
        .values()
        .iter()
        .map(|v| {
            let r = v
                .as_rational()
                .ok_or_else(|| {
                    Error::InvalidParameter(
                        "q-power coefficients need rational exponents".into(),
                    )
                })?
                .clone();
            Ok(NovikovSeries::monomial(r, crate::num::Gaussian::one()))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Diagonal invariance and singularity checks
// ---------------------------------------------------------------------------

/// A diagonal projective transformation x_j -> zeta_m^(a_j) x_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalElement {
    pub exponents: Vec<i64>,
    pub modulus: u64,
}

/// True iff every monomial is scaled by the same root of unity under each
/// group element. Requires F homogeneous for the declared weights.
pub fn diagonal_invariance_check<C: CoeffRing>(
    f: &MonomialPolynomial<C>,
    weights: &[i64],
    group: &[DiagonalElement],
) -> Result<bool> {
    if f.homogeneous_degree(weights).is_none() {
        return Err(Error::NotHomogeneous(format!(
            "polynomial is not homogeneous for weights {weights:?}"
        )));
    }
    for g in group {
        if g.exponents.len() != f.nvars() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} exponents", f.nvars()),
                got: format!("{}", g.exponents.len()),
            });
        }
        if g.modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        let m = g.modulus as i64;
        let mut phase: Option<i64> = None;
        for (e, _) in f.terms() {
            let p: i64 = e.iter().zip(&g.exponents).map(|(x, a)| x * a).sum::<i64>().rem_euclid(m);
            match phase {
                None => phase = Some(p),
                Some(q) if q == p => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// All 16 coset representatives of the quartic symmetry group: diagonal
/// (Z/4)^4 elements with exponent sum divisible by 4, modulo the projective
/// diagonal, normalized by a vanishing last exponent.
pub fn dwork_group() -> Vec<DiagonalElement> {
    let mut out = Vec::new();
    for a0 in 0..4i64 {
        for a1 in 0..4i64 {
            let a2 = (-(a0 + a1)).rem_euclid(4);
            out.push(DiagonalElement { exponents: vec![a0, a1, a2, 0], modulus: 4 });
        }
    }
    out
}

/// The 12 elements of the double-plane symmetry group Z/6 x Z/2, as diagonal
/// transformations of weighted projective (1,1,1,3) coordinates.
pub fn double_plane_group() -> Vec<DiagonalElement> {
    let g1: Vec<i64> = vec![1, 5, 0, 0];
    let g2: Vec<i64> = vec![0, 3, 3, 0];
    let mut out = Vec::new();
    for k in 0..6i64 {
        for l in 0..2i64 {
            let e: Vec<i64> =
                (0..4).map(|i| (k * g1[i] + l * g2[i]).rem_euclid(6)).collect();
            out.push(DiagonalElement { exponents: e, modulus: 6 });
        }
    }
    out
}

/// The Dwork pencil member x0^4 + x1^4 + x2^4 + x3^4 + 4 lambda x0 x1 x2 x3.
pub fn dwork_quartic(lambda: Rational) -> MonomialPolynomial<Cyclotomic> {
    let mut p = MonomialPolynomial::new(4);
    for i in 0..4 {
        let mut e = vec![0i64; 4];
        e[i] = 4;
        p.add_term(e, Cyclotomic::one()).unwrap();
    }
    let c = Cyclotomic::from_rational(lambda * Rational::from_integer(BigInt::from(4)));
    p.add_term(vec![1, 1, 1, 1], c).unwrap();
    p
}

/// The double-plane pencil member x0^6 + x1^6 + x2^6 + x3^2 + lambda x0x1x2x3.
pub fn double_plane_sextic(lambda: Rational) -> MonomialPolynomial<Cyclotomic> {
    let mut p = MonomialPolynomial::new(4);
    for (i, d) in [(0usize, 6i64), (1, 6), (2, 6), (3, 2)] {
        let mut e = vec![0i64; 4];
        e[i] = d;
        p.add_term(e, Cyclotomic::one()).unwrap();
    }
    p.add_term(vec![1, 1, 1, 1], Cyclotomic::from_rational(lambda)).unwrap();
    p
}

/// True iff F and all its partial derivatives vanish at the point.
pub fn is_singular_at(
    f: &MonomialPolynomial<Cyclotomic>,
    point: &[Cyclotomic],
) -> Result<bool> {
    if point.iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition("singularity test needs a nonzero point".into()));
    }
    if !f.evaluate(point)?.is_zero() {
        return Ok(false);
    }
    for v in 0..f.nvars() {
        if !f.partial(v).evaluate(point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{nov_val, Valuation};
    use crate::num::rat;
    use crate::polytope::{polar_dual, quartic_simplex};
    use crate::subdivision::jittered_weights;

    #[test]
    fn mirror_equation_term_count_and_valuations() {
        let p_dual = polar_dual(&quartic_simplex()).unwrap();
        let lam = jittered_weights(&p_dual, 3).unwrap();
        let d = coefficients_from_weights(&lam).unwrap();
        let eq = mirror_equation(&p_dual, &d).unwrap();
        assert_eq!(eq.polynomial.term_count(), 23); // |Xi0| + interior point
        // val(d) = lambda
        let expected: Vec<Rational> =
            lam.values().iter().map(|v| v.rational_part().clone()).collect();
        assert_eq!(eq.rational_valuations().unwrap(), expected);
        // interior point coefficient is -1
        let c = eq.polynomial.coefficient(&[0, 0, 0]).unwrap();
        assert_eq!(nov_val(c), Valuation::Finite(rat(0, 1)));

        // all-zero coefficients leave only -chi^0; valuations are infinite
        let zeros = vec![NovikovSeries::zero(); d.len()];
        let eq0 = mirror_equation(&p_dual, &zeros).unwrap();
        assert_eq!(eq0.polynomial.term_count(), 1);
        assert!(eq0.valuations.iter().all(|v| *v == Valuation::Infinity));
        assert!(eq0.rational_valuations().is_err());
    }

    #[test]
    fn mirror_equation_with_zero_entry() {
        // zero series has valuation +infinity: the valuation vector cannot
        // echo it as a finite entry, teach the caller via error on Unknown,
        // but Infinity maps to the zero placeholder by contract
        let p_dual = polar_dual(&quartic_simplex()).unwrap();
        let n = crate::polytope::xi0(&p_dual).unwrap().len();
        let mut d = vec![NovikovSeries::monomial(rat(1, 1), crate::num::Gaussian::one()); n];
        d[0] = NovikovSeries::zero();
        let eq = mirror_equation(&p_dual, &d).unwrap();
        assert_eq!(eq.polynomial.term_count(), n); // one term dropped, chi^0 added
    }

    #[test]
    fn dwork_invariance() {
        let q = dwork_quartic(rat(1, 1));
        let weights = [1i64, 1, 1, 1];
        assert_eq!(q.homogeneous_degree(&weights), Some(4));
        // invariant under a = (1,3,0,0) mod 4
        let ok = diagonal_invariance_check(
            &q,
            &weights,
            &[DiagonalElement { exponents: vec![1, 3, 0, 0], modulus: 4 }],
        )
        .unwrap();
        assert!(ok);
        // not invariant under a = (1,0,0,0)
        let bad = diagonal_invariance_check(
            &q,
            &weights,
            &[DiagonalElement { exponents: vec![1, 0, 0, 0], modulus: 4 }],
        )
        .unwrap();
        assert!(!bad);
        // the full 16-element group
        assert_eq!(dwork_group().len(), 16);
        assert!(diagonal_invariance_check(&q, &weights, &dwork_group()).unwrap());
    }

    #[test]
    fn double_plane_invariance() {
        let p = double_plane_sextic(rat(1, 1));
        let weights = [1i64, 1, 1, 3];
        assert_eq!(p.homogeneous_degree(&weights), Some(6));
        let group = double_plane_group();
        assert_eq!(group.len(), 12);
        assert!(diagonal_invariance_check(&p, &weights, &group).unwrap());
        // the group is genuinely Z/6 x Z/2: 12 distinct exponent vectors
        let distinct: std::collections::BTreeSet<Vec<i64>> =
            group.iter().map(|g| g.exponents.clone()).collect();
        assert_eq!(distinct.len(), 12);
    }

    #[test]
    fn inhomogeneous_input_rejected() {
        let mut f = MonomialPolynomial::<Cyclotomic>::new(2);
        f.add_term(vec![2, 0], Cyclotomic::one()).unwrap();
        f.add_term(vec![0, 1], Cyclotomic::one()).unwrap();
        assert!(diagonal_invariance_check(&f, &[1, 1], &dwork_group()[..1]).is_err());
    }

    #[test]
    fn dwork_singular_fibre() {
        // Q_{-1} has a node at (1,1,1,1)
        let q = dwork_quartic(rat(-1, 1));
        let one = Cyclotomic::one();
        let p = vec![one.clone(), one.clone(), one.clone(), one.clone()];
        assert!(is_singular_at(&q, &p).unwrap());

        // the Fermat quartic is smooth away from 0: check a point with all
        // coordinates nonzero, including an eighth root of unity
        let fermat = dwork_quartic(rat(0, 1));
        let z8 = Cyclotomic::root_of_unity(8, 1).unwrap();
        let p = vec![one.clone(), one.clone(), one.clone(), z8];
        assert!(!is_singular_at(&fermat, &p).unwrap());

        // x0^2 is singular along x0 = 0
        let mut f = MonomialPolynomial::<Cyclotomic>::new(4);
        f.add_term(vec![2, 0, 0, 0], Cyclotomic::one()).unwrap();
        let p = vec![Cyclotomic::zero(), one.clone(), Cyclotomic::zero(), Cyclotomic::zero()];
        assert!(is_singular_at(&f, &p).unwrap());

        // zero point rejected
        let z = vec![Cyclotomic::zero(); 4];
        assert!(is_singular_at(&f, &z).is_err());
    }

    #[test]
    fn dwork_nodal_locus_is_lambda_fourth_one() {
        // lambda^4 = 1: each fibre singular at a point with x^4 scaled
        // coordinates; lambda = i handled by cyclotomic coordinates
        let one = Cyclotomic::one();
        for (lam, pt) in [
            (rat(1, 1), vec![one.clone(), -one.clone(), one.clone(), one.clone()]),
            (rat(-1, 1), vec![one.clone(), one.clone(), one.clone(), one.clone()]),
        ] {
            let q = dwork_quartic(lam);
            assert!(is_singular_at(&q, &pt).unwrap());
        }
        // generic smooth member: lambda = 2 at the all-ones point is not singular
        let q2 = dwork_quartic(rat(2, 1));
        let p = vec![one.clone(), one.clone(), one.clone(), one];
        assert!(!is_singular_at(&q2, &p).unwrap());
    }

    #[test]
    fn partial_derivative() {
        let mut f = MonomialPolynomial::<Rational>::new(2);
        f.add_term(vec![3, 1], rat(2, 1)).unwrap();
        f.add_term(vec![0, 2], rat(1, 1)).unwrap();
        let fx = f.partial(0);
        assert_eq!(fx.coefficient(&[2, 1]), Some(&rat(6, 1)));
        let fy = f.partial(1);
        assert_eq!(fy.coefficient(&[3, 0]), Some(&rat(2, 1)));
        assert_eq!(fy.coefficient(&[0, 1]), Some(&rat(2, 1)));
    }
}
