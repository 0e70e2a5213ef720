//! The explicit hyperbolic-plane model of the period domain of U + <2n>:
//! period vectors, puncture sets, component and membership tests, the
//! Gram-Schmidt conformalization, the linear retraction onto a sublattice,
//! and bounded root-avoidance checks on the K3 lattice.
//!
//! All decisions are exact: coordinates live in Q(sqrt n), and the one square
//! root a conformal rescale may need is carried as a symbolic squared scale.

use crate::error::{Error, Result};
use crate::lattice::{self, Lattice, LatticeVector};
use crate::linalg::{self, mat_vec, FieldScalar, IntMatrix};
use crate::num::{Int, Quad, Rational};
use num::{BigInt, Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A point z = x + iy of the upper half plane with coordinates in Q(sqrt n).
#[derive(Clone, PartialEq, Eq)]
pub struct HPoint {
    n: u32,
    x: Quad,
    y: Quad,
}

impl fmt::Debug for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})i", self.x, self.y)
    }
}

impl HPoint {
    pub fn new(n: u32, x: Quad, y: Quad) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("half-plane model needs n >= 1".into()));
        }
        if y.sign() <= 0 {
            return Err(Error::Precondition("upper half plane needs y > 0".into()));
        }
        Ok(HPoint { n, x, y })
    }

    pub fn from_rational(n: u32, x: Rational, y: Rational) -> Result<Self> {
        Self::new(n, Quad::from_rational(x), Quad::from_rational(y))
    }

    /// The point i.
    pub fn i(n: u32) -> Self {
        HPoint { n, x: Quad::zero(), y: Quad::one() }
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn x(&self) -> &Quad {
        &self.x
    }

    pub fn y(&self) -> &Quad {
        &self.y
    }
}

/// A complex vector Omega = re + i*im in N_C, with an optional symbolic
/// positive scale on the imaginary part: Im Omega = sqrt(im_scale_sq) * im.
/// The scale stays 1 everywhere except in conformalization outputs.
#[derive(Clone, PartialEq)]
pub struct PeriodVector {
    lattice: Arc<Lattice>,
    re: Vec<Quad>,
    im: Vec<Quad>,
    im_scale_sq: Quad,
}

impl fmt::Debug for PeriodVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriodVector(re {:?}, im {:?}, scale^2 {})", self.re, self.im, self.im_scale_sq)
    }
}

impl PeriodVector {
    pub fn new(lattice: Arc<Lattice>, re: Vec<Quad>, im: Vec<Quad>) -> Result<Self> {
        Self::with_scale(lattice, re, im, Quad::one())
    }

    pub fn with_scale(
        lattice: Arc<Lattice>,
        re: Vec<Quad>,
        im: Vec<Quad>,
        im_scale_sq: Quad,
    ) -> Result<Self> {
        if re.len() != lattice.rank() || im.len() != lattice.rank() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} coordinates", lattice.rank()),
                got: format!("re {}, im {}", re.len(), im.len()),
            });
        }
        if im_scale_sq.sign() <= 0 {
            return Err(Error::InvalidParameter("imaginary scale must be positive".into()));
        }
        Ok(PeriodVector { lattice, re, im, im_scale_sq })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn re(&self) -> &[Quad] {
        &self.re
    }

    pub fn im(&self) -> &[Quad] {
        &self.im
    }

    pub fn im_scale_sq(&self) -> &Quad {
        &self.im_scale_sq
    }

    pub fn conjugate(&self) -> PeriodVector {
        PeriodVector {
            lattice: Arc::clone(&self.lattice),
            re: self.re.clone(),
            im: self.im.iter().map(|x| -x.clone()).collect(),
            im_scale_sq: self.im_scale_sq.clone(),
        }
    }
}

/// Exact pairing of two quadratic-coefficient vectors through the Gram matrix.
pub fn quad_pair(l: &Lattice, a: &[Quad], b: &[Quad]) -> Quad {
    let gram = l.gram();
    let mut acc = Quad::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() || gram[i][j].is_zero() {
                continue;
            }
            let g = Quad::from_rational(Rational::from_integer(gram[i][j].clone()));
            acc = acc + ai.clone() * g * bj.clone();
        }
    }
    acc
}

/// (Re, Re), (Im, Im) and (Re, Im) with the symbolic scale folded in where it
/// is rationally visible: returns ((Re,Re), s^2 (im,im), (Re,im), s^2).
fn plane_gram(v: &PeriodVector) -> (Quad, Quad, Quad, Quad) {
    let rr = quad_pair(&v.lattice, &v.re, &v.re);
    let ii_raw = quad_pair(&v.lattice, &v.im, &v.im);
    let ri_raw = quad_pair(&v.lattice, &v.re, &v.im);
    let ii = v.im_scale_sq.clone() * ii_raw;
    (rr, ii, ri_raw, v.im_scale_sq.clone())
}

/// The period parametrization z -> (-n z^2, 1, z) of Omega+(U + <2n>).
pub fn param(n: u32, z: &HPoint) -> Result<PeriodVector> {
    if z.level() != n {
        return Err(Error::InvalidParameter(format!(
            "point has level {}, expected {}",
            z.level(),
            n
        )));
    }
    let l = Lattice::u_plus_two_n(n)?;
    let x = z.x().clone();
    let y = z.y().clone();
    let nq = Quad::from_int(n as i64);
    // z^2 = (x^2 - y^2) + i (2xy)
    let re_z2 = &x * &x - &y * &y;
    let im_z2 = Quad::from_int(2) * x.clone() * y.clone();
    let re = vec![-(nq.clone() * re_z2), Quad::one(), x];
    let im = vec![-(nq * im_z2), Quad::zero(), y];
    PeriodVector::new(l, re, im)
}

/// Exact membership in Q(N): (Omega, Omega) = 0 and (Omega, conj Omega) > 0.
pub fn is_in_q(v: &PeriodVector) -> bool {
    let (rr, ii, ri, _s2) = plane_gram(v);
    // (Omega,Omega) = rr - ii + 2 i s ri: vanishes iff rr == ii and ri == 0
    if !(rr.clone() - ii.clone()).is_zero() || !ri.is_zero() {
        return false;
    }
    // (Omega, conj) = rr + ii
    (rr + ii).sign() > 0
}

/// Membership in P(N): the plane spanned by (Re, Im) is positive definite.
pub fn is_in_p(v: &PeriodVector) -> bool {
    let (rr, ii, ri, s2) = plane_gram(v);
    if rr.sign() <= 0 {
        return false;
    }
    // det of [[rr, s ri], [s ri, s^2 ii_raw]] = rr*ii - s^2 ri^2
    let det = rr * ii - s2 * ri.clone() * ri;
    det.sign() > 0
}

/// The value (Omega, conj Omega); for param(n, z) this equals 4 n y^2.
pub fn pairing_with_conjugate(v: &PeriodVector) -> Quad {
    let (rr, ii, _ri, _s2) = plane_gram(v);
    rr + ii
}

/// (Omega, Omega) as a complex pair (real part, imaginary part / sqrt(s^2)).
pub fn self_pairing(v: &PeriodVector) -> (Quad, Quad) {
    let (rr, ii, ri, _s2) = plane_gram(v);
    (rr - ii, Quad::from_int(2) * ri)
}

/// Gram-Schmidt conformalization: keep Re, orthogonalize Im against Re, and
/// record the squared rescale that equalizes the two norms. The output spans
/// the same oriented plane and lies in Q.
pub fn conformalize(v: &PeriodVector) -> Result<PeriodVector> {
    if !is_in_p(v) {
        return Err(Error::NotInPositivePlane);
    }
    let rr = quad_pair(&v.lattice, &v.re, &v.re);
    let ri = quad_pair(&v.lattice, &v.re, &v.im);
    let t = ri.clone() * rr.inv().expect("rr > 0 inside P");
    let im_orth: Vec<Quad> =
        v.im.iter().zip(&v.re).map(|(b, a)| b.clone() - t.clone() * a.clone()).collect();
    let oo = quad_pair(&v.lattice, &im_orth, &im_orth);
    // (im_orth)^2 > 0 because the plane is positive definite
    let scale_sq = rr * oo.inv().expect("orthogonalized norm positive in P");
    let new_scale = v.im_scale_sq.clone() * scale_sq;
    PeriodVector::with_scale(Arc::clone(&v.lattice), v.re.clone(), im_orth, new_scale)
}

// ---------------------------------------------------------------------------
// Punctures
// ---------------------------------------------------------------------------

/// A removed point c/b + i/(b sqrt n) of the punctured half plane; the
/// divisibility b | n c^2 + 1 is part of the data.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Puncture {
    pub n: u32,
    pub b: u64,
    pub c: i64,
}

impl Puncture {
    pub fn new(n: u32, b: u64, c: i64) -> Result<Self> {
        if n < 1 || b < 1 {
            return Err(Error::InvalidParameter("puncture needs n >= 1, b >= 1".into()));
        }
        let val: BigInt = BigInt::from(n) * BigInt::from(c) * BigInt::from(c) + 1;
        if !(&val % BigInt::from(b)).is_zero() {
            return Err(Error::Precondition(format!(
                "b = {b} does not divide n c^2 + 1 = {val}"
            )));
        }
        Ok(Puncture { n, b, c })
    }

    /// The underlying point c/b + i/(b sqrt n).
    pub fn point(&self) -> HPoint {
        let x = Quad::from_rational(Rational::new(BigInt::from(self.c), BigInt::from(self.b)));
        // 1/(b sqrt n) = sqrt(n) / (b n)
        let y = Quad::sqrt_of(self.n as u64)
            .scale(&Rational::new(BigInt::one(), BigInt::from(self.b) * BigInt::from(self.n)));
        HPoint::new(self.n, x, y).expect("puncture y-coordinate is positive")
    }

    /// The (-2)-class delta = (-(n c^2 + 1)/b, b, c) orthogonal to this puncture.
    pub fn root(&self) -> LatticeVector {
        let l = Lattice::u_plus_two_n(self.n).expect("valid level");
        let num: BigInt = BigInt::from(self.n) * BigInt::from(self.c) * BigInt::from(self.c) + 1;
        let a = -num / BigInt::from(self.b);
        l.vector_big(vec![a, BigInt::from(self.b), BigInt::from(self.c)]).unwrap()
    }
}

/// All punctures with b <= bmax and |c| <= cmax, sorted by (b, c).
pub fn punctures_in_box(n: u32, bmax: u64, cmax: i64) -> Result<Vec<Puncture>> {
    if n < 1 || bmax < 1 || cmax < 0 {
        return Err(Error::InvalidParameter("need n >= 1, bmax >= 1, cmax >= 0".into()));
    }
    let mut out = Vec::new();
    for b in 1..=bmax {
        for c in -cmax..=cmax {
            if let Ok(p) = Puncture::new(n, b, c) {
                out.push(p);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Solve (param(n, z), delta) = 0 for z in the upper half plane.
/// delta must be a (-2)-class; b = 0 is reported as an error (the orthogonal
/// locus misses the half-plane model).
pub fn puncture_from_root(n: u32, delta: &LatticeVector) -> Result<Puncture> {
    let ambient = Lattice::u_plus_two_n(n)?;
    if !delta.lattice().same_lattice(&ambient) {
        return Err(Error::LatticeMismatch("root must live in U + <2n>".into()));
    }
    if lattice::norm(delta) != BigInt::from(-2) {
        return Err(Error::Precondition("puncture_from_root needs a (-2)-class".into()));
    }
    let c64 = delta.coords();
    let (a, b, c) = (c64[0].clone(), c64[1].clone(), c64[2].clone());
    if b.is_zero() {
        return Err(Error::RootMissesHalfPlane);
    }
    let (_a, b, c) = if b.is_negative() { (-a, -b, -c) } else { (a, b, c) };
    let b_u = u64::try_from(&b).map_err(|_| Error::InvalidParameter("b too large".into()))?;
    let c_i = i64::try_from(&c).map_err(|_| Error::InvalidParameter("c too large".into()))?;
    Puncture::new(n, b_u, c_i)
}

/// Cross-check report for the roots <-> punctures correspondence.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BijectionReport {
    pub n: u32,
    pub height: u32,
    pub bmax: u64,
    pub cmax: i64,
    pub roots_scanned: usize,
    pub root_classes: usize,
    pub punctures_scanned: usize,
    pub failures: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies both directions of the puncture/root correspondence on boxes:
/// every root of bounded height maps to a valid puncture (round-tripping to
/// +-delta), and every puncture in the (bmax, cmax)-box arises from its
/// constructed root.
pub fn roots_punctures_bijection_check(
    n: u32,
    height: u32,
    bmax: u64,
    cmax: i64,
) -> Result<BijectionReport> {
    let l = Lattice::u_plus_two_n(n)?;
    let roots = lattice::enumerate_roots(&l, height, false);
    let classes = lattice::enumerate_roots(&l, height, true);
    let mut failures = Vec::new();
    let mut puncture_to_class: BTreeMap<Puncture, Vec<Int>> = BTreeMap::new();
    for r in &roots {
        match puncture_from_root(n, r) {
            Ok(p) => {
                // round trip: the constructed root must be +-r
                let back = p.root();
                if back != *r && back != r.negate() {
                    failures.push(format!(
                        "root {:?} -> puncture {:?} -> root {:?} is not +-original",
                        r.coords_i64(),
                        p,
                        back.coords_i64()
                    ));
                }
                puncture_to_class.entry(p).or_default();
            }
            Err(e) => failures.push(format!("root {:?}: {e}", r.coords_i64())),
        }
    }
    let punctures = punctures_in_box(n, bmax, cmax)?;
    for p in &punctures {
        let delta = p.root();
        if lattice::norm(&delta) != BigInt::from(-2) {
            failures.push(format!("puncture {p:?}: constructed vector is not a root"));
            continue;
        }
        match puncture_from_root(n, &delta) {
            Ok(back) if back == *p => {}
            Ok(back) => {
                failures.push(format!("puncture {p:?} round-trips to {back:?}"));
            }
            Err(e) => failures.push(format!("puncture {p:?}: {e}")),
        }
    }
    Ok(BijectionReport {
        n,
        height,
        bmax,
        cmax,
        roots_scanned: roots.len(),
        root_classes: classes.len(),
        punctures_scanned: punctures.len(),
        failures,
    })
}

// ---------------------------------------------------------------------------
// Components and retraction
// ---------------------------------------------------------------------------

/// Orientation of the plane of v relative to a fixed positive-definite
/// reference plane of the lattice: the sign of the determinant of the
/// projected frame. Errors when the projection degenerates.
fn orientation_sign(v: &PeriodVector, reference: &[Vec<Quad>; 2]) -> Result<i32> {
    // project Re and Im onto the reference plane along its orthogonal
    // complement using the pairing; in the reference basis (u1, u2) the
    // coordinates of w solve G_ref c = ((w,u1),(w,u2))
    let l = &v.lattice;
    let g11 = quad_pair(l, &reference[0], &reference[0]);
    let g12 = quad_pair(l, &reference[0], &reference[1]);
    let g22 = quad_pair(l, &reference[1], &reference[1]);
    let gref = vec![vec![g11, g12.clone()], vec![g12, g22]];
    let mut frame: Vec<Vec<Quad>> = Vec::with_capacity(2);
    for w in [&v.re, &v.im] {
        let rhs = vec![quad_pair(l, w, &reference[0]), quad_pair(l, w, &reference[1])];
        let c = linalg::solve_square(&gref, &rhs)
            .expect("reference plane is positive definite, so its Gram is invertible");
        frame.push(c);
    }
    let det = frame[0][0].f_mul(&frame[1][1]).f_sub(&frame[0][1].f_mul(&frame[1][0]));
    match det.sign() {
        0 => Err(Error::DegenerateProjection),
        s => Ok(s),
    }
}

/// A canonical positive-definite reference plane for a signature-(2,t) lattice:
/// built from the exact congruence diagonalization of the Gram matrix.
pub fn reference_plane(l: &Arc<Lattice>) -> Result<[Vec<Quad>; 2]> {
    let n = l.rank();
    let gram = l.gram_rational();
    // congruence elimination tracking the basis change
    let mut m = gram;
    let mut basis: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut positives: Vec<Vec<Rational>> = Vec::new();
    let mut i = 0usize;
    while i < n {
        if m[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(i, j);
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
                basis.swap(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                for k in 0..n {
                    let add = m[j][k].clone();
                    m[i][k] = &m[i][k] + &add;
                }
                for k in 0..n {
                    let add = m[k][j].clone();
                    m[k][i] = &m[k][i] + &add;
                }
                let add = basis[j].clone();
                for (x, y) in basis[i].iter_mut().zip(add) {
                    *x = &*x + &y;
                }
            } else {
                return Err(Error::InvalidLattice("degenerate form".into()));
            }
            continue;
        }
        if m[i][i].is_positive() {
            positives.push(basis[i].clone());
        }
        let d = m[i][i].clone();
        for j in i + 1..n {
            if m[j][i].is_zero() {
                continue;
            }
            let f = &m[j][i] / &d;
            for k in 0..n {
                let delta = &f * &m[i][k];
                m[j][k] = &m[j][k] - &delta;
            }
            for k in 0..n {
                let delta = &f * &m[k][i];
                m[k][j] = &m[k][j] - &delta;
            }
            let sub: Vec<Rational> = basis[i].iter().map(|x| &f * x).collect();
            for (x, y) in basis[j].iter_mut().zip(sub) {
                *x = &*x - &y;
            }
        }
        i += 1;
    }
    if positives.len() != 2 {
        return Err(Error::Precondition(format!(
            "reference plane needs signature (2,t), found {} positive directions",
            positives.len()
        )));
    }
    let to_quad =
        |v: &Vec<Rational>| v.iter().map(|r| Quad::from_rational(r.clone())).collect::<Vec<_>>();
    Ok([to_quad(&positives[0]), to_quad(&positives[1])])
}

/// True iff v and w lie in the same component of P(N): their plane
/// orientations agree relative to the common reference plane.
pub fn same_component(v: &PeriodVector, w: &PeriodVector) -> Result<bool> {
    if !v.lattice.same_lattice(&w.lattice) {
        return Err(Error::LatticeMismatch("component test needs one lattice".into()));
    }
    if !is_in_p(v) || !is_in_p(w) {
        return Err(Error::Precondition("component test needs vectors in P".into()));
    }
    let reference = reference_plane(&v.lattice)?;
    Ok(orientation_sign(v, &reference)? == orientation_sign(w, &reference)?)
}

/// The plus component of P(U + <2n>) is the one containing param(n, i).
pub fn is_in_plus_component(n: u32, v: &PeriodVector) -> Result<bool> {
    let base = param(n, &HPoint::i(n))?;
    same_component(v, &base)
}

/// True iff the symmetric Quad matrix is negative definite (Sylvester:
/// leading principal minors alternate in sign starting negative).
fn quad_negative_definite(g: &[Vec<Quad>]) -> bool {
    let n = g.len();
    for k in 1..=n {
        let minor: Vec<Vec<Quad>> = (0..k).map(|i| g[i][..k].to_vec()).collect();
        let d = quad_det(&minor);
        let expected = if k % 2 == 1 { -1 } else { 1 };
        if d.sign() != expected {
            return false;
        }
    }
    true
}

fn quad_det(m: &[Vec<Quad>]) -> Quad {
    let n = m.len();
    let mut a: Vec<Vec<Quad>> = m.to_vec();
    let mut det = Quad::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Quad::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = det * pivot.clone();
        let inv = pivot.inv().unwrap();
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone() * inv.clone();
            for j in col..n {
                let delta = f.clone() * a[col][j].clone();
                a[i][j] = a[i][j].clone() - delta;
            }
        }
    }
    det
}

/// Linear retraction of kappa^perp onto the sublattice part: project v onto
/// the rational span of `nk_basis` along `complement_basis`. The complement
/// may carry quadratic-irrational coordinates (the negative-definite rest of
/// an irrational Kaehler direction). Preconditions: the two bases are
/// orthogonal to each other and the complement part is negative definite
/// (both checked); v must lie in their joint span.
pub fn retract_to_sublattice(
    v: &PeriodVector,
    nk_basis: &IntMatrix,
    complement_basis: &[Vec<Quad>],
) -> Result<PeriodVector> {
    let l = &v.lattice;
    let nk_quad: Vec<Vec<Quad>> = nk_basis
        .iter()
        .map(|row| {
            row.iter().map(|x| Quad::from_rational(Rational::from_integer(x.clone()))).collect()
        })
        .collect();
    // orthogonality of the two bases
    for a in &nk_quad {
        for b in complement_basis {
            if !quad_pair(l, a, b).is_zero() {
                return Err(Error::Precondition(
                    "sublattice and complement bases are not orthogonal".into(),
                ));
            }
        }
    }
    // complement negative definite
    if !complement_basis.is_empty() {
        let k = complement_basis.len();
        let cg: Vec<Vec<Quad>> = (0..k)
            .map(|i| (0..k).map(|j| quad_pair(l, &complement_basis[i], &complement_basis[j])).collect())
            .collect();
        if !quad_negative_definite(&cg) {
            return Err(Error::Precondition("complement part is not negative definite".into()));
        }
    }
    // expand v in the joint basis, in Quad coordinates
    let joint: Vec<Vec<Quad>> =
        nk_quad.iter().cloned().chain(complement_basis.iter().cloned()).collect();
    let re_coeff = linalg::express_in_span(&joint, &v.re)
        .ok_or_else(|| Error::NotInSpan("Re(v) outside span of the given bases".into()))?;
    let im_coeff = linalg::express_in_span(&joint, &v.im)
        .ok_or_else(|| Error::NotInSpan("Im(v) outside span of the given bases".into()))?;
    let k = nk_basis.len();
    let sub_gram = lattice::induced_gram(l, nk_basis);
    let sub_lattice = Lattice::from_gram(sub_gram)
        .map_err(|_| Error::Precondition("sublattice basis is degenerate".into()))?;
    PeriodVector::with_scale(
        sub_lattice,
        re_coeff[..k].to_vec(),
        im_coeff[..k].to_vec(),
        v.im_scale_sq.clone(),
    )
}

/// Promote a period vector on a sublattice back to ambient coordinates.
pub fn promote(v: &PeriodVector, ambient: &Arc<Lattice>, basis: &IntMatrix) -> Result<PeriodVector> {
    if basis.len() != v.lattice.rank() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} basis rows", v.lattice.rank()),
            got: format!("{}", basis.len()),
        });
    }
    let n = ambient.rank();
    let expand = |coeffs: &[Quad]| -> Vec<Quad> {
        let mut out = vec![Quad::zero(); n];
        for (c, row) in coeffs.iter().zip(basis) {
            for (o, x) in out.iter_mut().zip(row) {
                let term = c.clone() * Quad::from_rational(Rational::from_integer(x.clone()));
                *o = o.clone() + term;
            }
        }
        out
    };
    PeriodVector::with_scale(
        Arc::clone(ambient),
        expand(&v.re),
        expand(&v.im),
        v.im_scale_sq.clone(),
    )
}

// ---------------------------------------------------------------------------
// Bounded K0 membership on the K3 lattice
// ---------------------------------------------------------------------------

/// Semi-decision verdict for the bounded root-avoidance scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum K0Verdict {
    /// Some delta with (Omega, delta) = 0 and (kappa, delta) = 0 was found.
    Fails(Vec<i64>),
    /// No such delta with coordinate height <= the bound.
    PassesUpToBound(u32),
}

/// Scans all (-2)-classes delta of sup-norm <= height for one orthogonal to
/// both Omega and kappa. Block-decomposes the Gram matrix so the inactive
/// blocks only contribute norm histograms; explicitly a semi-decision.
pub fn is_in_k0_bounded(
    omega: &PeriodVector,
    kappa: &LatticeVector,
    height: u32,
) -> Result<K0Verdict> {
    let l = omega.lattice();
    if !kappa.lattice().same_lattice(l) {
        return Err(Error::LatticeMismatch("kappa must live in Omega's lattice".into()));
    }
    if lattice::norm(kappa).sign() != num::bigint::Sign::Plus {
        return Err(Error::Precondition("kappa^2 > 0 required".into()));
    }
    if !is_in_q(omega) {
        return Err(Error::Precondition("Omega must lie in Q".into()));
    }
    let kq: Vec<Quad> = kappa
        .coords()
        .iter()
        .map(|x| Quad::from_rational(Rational::from_integer(x.clone())))
        .collect();
    if !quad_pair(l, &omega.re, &kq).is_zero() || !quad_pair(l, &omega.im, &kq).is_zero() {
        return Err(Error::Precondition("(Omega, kappa) = 0 required".into()));
    }
    if height == 0 {
        return Ok(K0Verdict::PassesUpToBound(0));
    }

    let rank = l.rank();
    let gram = l.gram_i64().ok_or_else(|| {
        Error::InvalidParameter("K0 scan expects small integer gram entries".into())
    })?;

    // rational constraint rows: split each pairing row into rational and surd parts
    let mut constraints: Vec<Vec<Rational>> = Vec::new();
    for w in [&omega.re, &omega.im] {
        let mut row_a = vec![Rational::zero(); rank];
        let mut row_b = vec![Rational::zero(); rank];
        for j in 0..rank {
            // (delta, w) = sum_j delta_j * (G w)_j
            let mut acc = Quad::zero();
            for t in 0..rank {
                if gram[j][t] == 0 {
                    continue;
                }
                acc = acc + Quad::from_int(gram[j][t]) * w[t].clone();
            }
            row_a[j] = acc.rational_part().clone();
            row_b[j] = acc.surd_part().clone();
        }
        if row_a.iter().any(|x| !x.is_zero()) {
            constraints.push(row_a);
        }
        if row_b.iter().any(|x| !x.is_zero()) {
            constraints.push(row_b);
        }
    }
    {
        let gk = mat_vec(l.gram(), kappa.coords());
        let row: Vec<Rational> = gk.into_iter().map(Rational::from_integer).collect();
        if row.iter().any(|x| !x.is_zero()) {
            constraints.push(row);
        }
    }
    // clear denominators to integer rows
    let constraints: Vec<Vec<Int>> = constraints
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            row.iter().map(|r| (r * Rational::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect();

    // connected components of the gram sparsity graph
    let blocks = gram_blocks(&gram);
    let h = height as i64;

    #[derive(Default)]
    struct BlockData {
        indices: Vec<usize>,
        /// active: (norm, profile) -> representative coords; free: norm -> rep
        entries: BTreeMap<(i64, Vec<Int>), Vec<i64>>,
    }

    let mut active_blocks: Vec<BlockData> = Vec::new();
    let mut free_blocks: Vec<BlockData> = Vec::new();
    for idx in blocks {
        let active = constraints.iter().any(|c| idx.iter().any(|&i| !c[i].is_zero()));
        let mut data = BlockData { indices: idx.clone(), entries: BTreeMap::new() };
        // enumerate the block box
        let k = idx.len();
        let mut coords = vec![-h; k];
        'outer: loop {
            // block norm
            let mut nrm: i64 = 0;
            for a in 0..k {
                for b in 0..k {
                    nrm += coords[a] * gram[idx[a]][idx[b]] * coords[b];
                }
            }
            let profile: Vec<Int> = if active {
                constraints
                    .iter()
                    .map(|c| {
                        idx.iter()
                            .zip(&coords)
                            .fold(BigInt::zero(), |acc, (&i, &x)| acc + &c[i] * BigInt::from(x))
                    })
                    .collect()
            } else {
                vec![]
            };
            data.entries.entry((nrm, profile)).or_insert_with(|| coords.clone());
            // advance odometer
            let mut d = 0;
            loop {
                if d == k {
                    break 'outer;
                }
                coords[d] += 1;
                if coords[d] <= h {
                    break;
                }
                coords[d] = -h;
                d += 1;
            }
        }
        if active {
            active_blocks.push(data);
        } else {
            free_blocks.push(data);
        }
    }

    // combine free blocks: achievable norm -> representative assignment
    let mut free_comb: BTreeMap<i64, Vec<(usize, Vec<i64>)>> = BTreeMap::new();
    free_comb.insert(0, vec![]);
    for (bi, blk) in free_blocks.iter().enumerate() {
        let mut next: BTreeMap<i64, Vec<(usize, Vec<i64>)>> = BTreeMap::new();
        for (acc_norm, picks) in &free_comb {
            for ((nrm, _), rep) in &blk.entries {
                let total = acc_norm + nrm;
                next.entry(total).or_insert_with(|| {
                    let mut p = picks.clone();
                    p.push((bi, rep.clone()));
                    p
                });
            }
        }
        free_comb = next;
    }
    let free_norm_min = *free_comb.keys().min().unwrap_or(&0);
    let free_norm_max = *free_comb.keys().max().unwrap_or(&0);

    // Active blocks: depth-first over all but the last, with per-constraint
    // reachable-range pruning; the last block is resolved by profile lookup.
    let n_constraints = constraints.len();
    struct ActiveInfo {
        indices: Vec<usize>,
        entries: Vec<(i64, Vec<Int>, Vec<i64>)>,
        max_abs: Vec<Int>,
        norm_min: i64,
        norm_max: i64,
    }
    let infos: Vec<ActiveInfo> = active_blocks
        .into_iter()
        .map(|blk| {
            let entries: Vec<(i64, Vec<Int>, Vec<i64>)> = blk
                .entries
                .into_iter()
                .map(|((nrm, prof), rep)| (nrm, prof, rep))
                .collect();
            let mut max_abs = vec![BigInt::zero(); n_constraints];
            let mut norm_min = i64::MAX;
            let mut norm_max = i64::MIN;
            for (nrm, prof, _) in &entries {
                norm_min = norm_min.min(*nrm);
                norm_max = norm_max.max(*nrm);
                for (m, p) in max_abs.iter_mut().zip(prof) {
                    let a = p.abs();
                    if a > *m {
                        *m = a;
                    }
                }
            }
            if entries.is_empty() {
                norm_min = 0;
                norm_max = 0;
            }
            ActiveInfo { indices: blk.indices, entries, max_abs, norm_min, norm_max }
        })
        .collect();

    let witness = if infos.is_empty() {
        // no active blocks: need total free norm -2 with nonzero vector
        free_comb
            .get(&-2)
            .map(|picks| (Vec::<(usize, Vec<i64>)>::new(), picks.clone()))
    } else {
        let last = infos.len() - 1;
        // profile -> list of (norm, rep) for the final block
        let mut last_map: BTreeMap<Vec<Int>, Vec<(i64, Vec<i64>)>> = BTreeMap::new();
        for (nrm, prof, rep) in &infos[last].entries {
            last_map.entry(prof.clone()).or_default().push((*nrm, rep.clone()));
        }
        // suffix bounds over blocks d..last (constraint reach and norm range)
        let mut suffix_abs = vec![vec![BigInt::zero(); n_constraints]; infos.len() + 1];
        let mut suffix_norm = vec![(0i64, 0i64); infos.len() + 1];
        for d in (0..infos.len()).rev() {
            for k in 0..n_constraints {
                suffix_abs[d][k] = &suffix_abs[d + 1][k] + &infos[d].max_abs[k];
            }
            suffix_norm[d] = (
                suffix_norm[d + 1].0 + infos[d].norm_min,
                suffix_norm[d + 1].1 + infos[d].norm_max,
            );
        }

        struct Search<'a> {
            infos: &'a [ActiveInfo],
            last_map: &'a BTreeMap<Vec<Int>, Vec<(i64, Vec<i64>)>>,
            free_comb: &'a BTreeMap<i64, Vec<(usize, Vec<i64>)>>,
            suffix_abs: &'a [Vec<Int>],
            suffix_norm: &'a [(i64, i64)],
            free_range: (i64, i64),
            n_constraints: usize,
        }
        impl<'a> Search<'a> {
            fn dfs(
                &self,
                depth: usize,
                norm_acc: i64,
                prof_acc: &[Int],
                picks: &mut Vec<(usize, Vec<i64>)>,
            ) -> Option<(Vec<(usize, Vec<i64>)>, Vec<(usize, Vec<i64>)>)> {
                let last = self.infos.len() - 1;
                if depth == last {
                    let needed: Vec<Int> = prof_acc.iter().map(|x| -x.clone()).collect();
                    if let Some(cands) = self.last_map.get(&needed) {
                        for (nrm, rep) in cands {
                            let rest = -2 - norm_acc - nrm;
                            if let Some(fp) = self.free_comb.get(&rest) {
                                let mut all = picks.clone();
                                all.push((last, rep.clone()));
                                return Some((all, fp.clone()));
                            }
                        }
                    }
                    return None;
                }
                for (nrm, prof, rep) in &self.infos[depth].entries {
                    let total = norm_acc + nrm;
                    // norm feasibility with remaining active and free ranges
                    let lo = total + self.suffix_norm[depth + 1].0 + self.free_range.0;
                    let hi = total + self.suffix_norm[depth + 1].1 + self.free_range.1;
                    if -2 < lo || -2 > hi {
                        continue;
                    }
                    // constraint reach pruning
                    let mut feasible = true;
                    for k in 0..self.n_constraints {
                        let p = &prof_acc[k] + &prof[k];
                        if p.abs() > self.suffix_abs[depth + 1][k] {
                            feasible = false;
                            break;
                        }
                    }
                    if !feasible {
                        continue;
                    }
                    let next_prof: Vec<Int> =
                        prof_acc.iter().zip(prof).map(|(a, b)| a + b).collect();
                    picks.push((depth, rep.clone()));
                    if let Some(hit) = self.dfs(depth + 1, total, &next_prof, picks) {
                        return Some(hit);
                    }
                    picks.pop();
                }
                None
            }
        }

        let search = Search {
            infos: &infos,
            last_map: &last_map,
            free_comb: &free_comb,
            suffix_abs: &suffix_abs,
            suffix_norm: &suffix_norm,
            free_range: (free_norm_min, free_norm_max),
            n_constraints,
        };
        let zero_prof = vec![BigInt::zero(); n_constraints];
        let mut picks = Vec::new();
        search
            .dfs(0, 0, &zero_prof, &mut picks)
            .map(|(a, f)| (a, f))
    };

    if let Some((a_picks, f_picks)) = witness {
        let mut delta = vec![0i64; rank];
        for (bi, rep) in &a_picks {
            for (slot, &i) in infos[*bi].indices.iter().enumerate() {
                delta[i] = rep[slot];
            }
        }
        for (bi, rep) in &f_picks {
            for (slot, &i) in free_blocks[*bi].indices.iter().enumerate() {
                delta[i] = rep[slot];
            }
        }
        if delta.iter().any(|&x| x != 0) {
            return Ok(K0Verdict::Fails(delta));
        }
    }
    Ok(K0Verdict::PassesUpToBound(height))
}

/// Connected components of the Gram sparsity graph, each sorted.
fn gram_blocks(gram: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = gram.len();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && (gram[i][j] != 0 || gram[j][i] != 0) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        blocks.push(comp);
    }
    blocks
}
