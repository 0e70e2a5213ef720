//! Integral lattices with exact pairings: signatures, discriminant groups,
//! isometry tests, (-2)-class enumeration, sublattice operations and
//! Mukai-vector arithmetic.

use crate::error::{Error, Result};
use crate::linalg::{
    self, det, field_rank, kernel_basis, mat_mul, mat_transpose, mat_vec, row_hnf, saturation,
    smith_normal_form, IntMatrix,
};
use crate::num::{Int, Rational};
use num::{BigInt, One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// A free Z-module of finite rank with a nondegenerate integral symmetric
/// bilinear form, stored as its Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    rank: usize,
    gram: IntMatrix,
    det: Int,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(rank {}, det {})", self.rank, self.det)
    }
}

/// Standard lattices used throughout: the hyperbolic plane U, negative-definite
/// E8, the rank-one lattice <2n>, and the K3 lattice U^3 + E8(-1)^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardLattice {
    U,
    E8Neg,
    TwoN(u32),
    K3,
}

impl Lattice {
    pub fn new(gram_rows: Vec<Vec<i64>>) -> Result<Arc<Lattice>> {
        let gram = linalg::int_matrix_from_i64(&gram_rows);
        Self::from_gram(gram)
    }

    pub fn from_gram(gram: IntMatrix) -> Result<Arc<Lattice>> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::InvalidLattice("rank must be positive".into()));
        }
        if gram.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidLattice("gram matrix must be square".into()));
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!(
                        "gram matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let d = det(&gram);
        if d.is_zero() {
            return Err(Error::InvalidLattice("gram matrix is degenerate (det = 0)".into()));
        }
        Ok(Arc::new(Lattice { rank, gram, det: d }))
    }

    pub fn standard(which: StandardLattice) -> Result<Arc<Lattice>> {
        match which {
            StandardLattice::U => Lattice::new(vec![vec![0, 1], vec![1, 0]]),
            StandardLattice::E8Neg => Lattice::from_gram(e8_negative_gram()),
            StandardLattice::TwoN(n) => {
                if n < 1 {
                    return Err(Error::InvalidParameter("TwoN(n) needs n >= 1".into()));
                }
                Lattice::new(vec![vec![2 * n as i64]])
            }
            StandardLattice::K3 => {
                let u = Lattice::standard(StandardLattice::U)?;
                let e8 = Lattice::standard(StandardLattice::E8Neg)?;
                let mut acc = direct_sum(&u, &u);
                acc = direct_sum(&acc, &u);
                acc = direct_sum(&acc, &e8);
                Ok(direct_sum(&acc, &e8))
            }
        }
    }

    /// U + <2n>, the ambient lattice of the upper half-plane period model.
    pub fn u_plus_two_n(n: u32) -> Result<Arc<Lattice>> {
        let u = Lattice::standard(StandardLattice::U)?;
        let t = Lattice::standard(StandardLattice::TwoN(n))?;
        Ok(direct_sum(&u, &t))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn gram_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(i64::try_from).collect::<std::result::Result<Vec<_>, _>>().ok())
            .collect()
    }

    pub fn det(&self) -> &Int {
        &self.det
    }

    pub fn gram_rational(&self) -> Vec<Vec<Rational>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect()
    }

    pub fn vector(self: &Arc<Self>, coords: Vec<i64>) -> Result<LatticeVector> {
        self.vector_big(coords.into_iter().map(BigInt::from).collect())
    }

    pub fn vector_big(self: &Arc<Self>, coords: Vec<Int>) -> Result<LatticeVector> {
        if coords.len() != self.rank {
            return Err(Error::ShapeMismatch {
                expected: format!("{} coordinates", self.rank),
                got: format!("{}", coords.len()),
            });
        }
        Ok(LatticeVector { lattice: Arc::clone(self), coords })
    }

    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self == other
    }
}

fn e8_negative_gram() -> IntMatrix {
    // Negative of the standard E8 Cartan matrix (simple roots, Bourbaki ordering).
    let c: [[i64; 8]; 8] = [
        [2, 0, -1, 0, 0, 0, 0, 0],
        [0, 2, 0, -1, 0, 0, 0, 0],
        [-1, 0, 2, -1, 0, 0, 0, 0],
        [0, -1, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, 0],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, 0, 0, -1, 2],
    ];
    c.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(-x)).collect())
        .collect()
}

/// A vector in a fixed lattice, stored by integer coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeVector {
    lattice: Arc<Lattice>,
    coords: Vec<Int>,
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

impl LatticeVector {
    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn coords_i64(&self) -> Vec<i64> {
        self.coords.iter().map(|x| i64::try_from(x).expect("coordinate fits i64")).collect()
    }

    pub fn negate(&self) -> LatticeVector {
        LatticeVector {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }
}

/// Exact pairing coords^T * gram * coords.
pub fn pair(v: &LatticeVector, w: &LatticeVector) -> Result<Int> {
    if !v.lattice.same_lattice(&w.lattice) {
        return Err(Error::LatticeMismatch("pair needs vectors of one lattice".into()));
    }
    let gv = mat_vec(v.lattice.gram(), &w.coords);
    Ok(v.coords.iter().zip(&gv).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
}

pub fn norm(v: &LatticeVector) -> Int {
    pair(v, v).expect("vector pairs with itself")
}

/// Same lattice with the sign of the pairing reversed.
pub fn negate(l: &Arc<Lattice>) -> Arc<Lattice> {
    let gram = l.gram.iter().map(|r| r.iter().map(|x| -x.clone()).collect()).collect();
    Lattice::from_gram(gram).expect("negation preserves nondegeneracy")
}

/// Block-diagonal direct sum.
pub fn direct_sum(a: &Arc<Lattice>, b: &Arc<Lattice>) -> Arc<Lattice> {
    let n = a.rank + b.rank;
    let mut gram = vec![vec![BigInt::zero(); n]; n];
    for i in 0..a.rank {
        for j in 0..a.rank {
            gram[i][j] = a.gram[i][j].clone();
        }
    }
    for i in 0..b.rank {
        for j in 0..b.rank {
            gram[a.rank + i][a.rank + j] = b.gram[i][j].clone();
        }
    }
    Lattice::from_gram(gram).expect("direct sum of nondegenerate lattices is nondegenerate")
}

/// Sylvester signature (p, q), by exact rational congruence elimination.
pub fn signature(l: &Lattice) -> (usize, usize) {
    linalg::symmetric_signature(&l.gram_rational())
        .expect("lattice invariant guarantees nondegeneracy")
}

/// Invariant factors > 1 of the discriminant group coker(gram).
pub fn discriminant_group(l: &Lattice) -> Vec<Int> {
    smith_normal_form(l.gram()).invariant_factors()
}

/// Order of the discriminant group (|det gram|).
pub fn discriminant_order(l: &Lattice) -> Int {
    l.det().abs()
}

/// g is an isometry iff g^T * gram * g = gram and det g = +-1.
pub fn is_isometry(l: &Lattice, g: &IntMatrix) -> Result<bool> {
    if g.len() != l.rank || g.iter().any(|r| r.len() != l.rank) {
        return Err(Error::ShapeMismatch {
            expected: format!("{0}x{0} matrix", l.rank),
            got: format!("{}x{}", g.len(), g.first().map_or(0, |r| r.len())),
        });
    }
    let gt = mat_transpose(g);
    if mat_mul(&mat_mul(&gt, l.gram()), g) != *l.gram() {
        return Ok(false);
    }
    let d = det(g);
    Ok(d.abs().is_one())
}

/// True iff g acts trivially on the discriminant group: (g - id) maps the dual
/// lattice gram^-1 Z^n into Z^n, i.e. (g - id) * gram^-1 is integral.
pub fn acts_trivially_on_discriminant(l: &Lattice, g: &IntMatrix) -> Result<bool> {
    if !is_isometry(l, g)? {
        return Err(Error::NotAnIsometry(
            "discriminant action is only defined for isometries".into(),
        ));
    }
    // adj(gram)/det = gram^-1; (g - id) adj(gram) must be divisible by det
    let mut g_minus_id = g.clone();
    for (i, row) in g_minus_id.iter_mut().enumerate() {
        row[i] = &row[i] - BigInt::one();
    }
    let adj = adjugate(l.gram());
    let prod = mat_mul(&g_minus_id, &adj);
    let d = l.det();
    Ok(prod.iter().flatten().all(|x| (x % d).is_zero()))
}

fn adjugate(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut minor = Vec::with_capacity(n - 1);
            for (r, row) in a.iter().enumerate() {
                if r == i {
                    continue;
                }
                let mrow: Vec<BigInt> =
                    row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect();
                minor.push(mrow);
            }
            let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            adj[j][i] = sign * det(&minor);
        }
    }
    adj
}

/// All v with sup-norm <= height and (v,v) = -2, in lexicographic order.
/// `modulo_pm` keeps one representative of each {v, -v} pair (the
/// lexicographically larger one).
pub fn enumerate_roots(l: &Arc<Lattice>, height: u32, modulo_pm: bool) -> Vec<LatticeVector> {
    let rank = l.rank();
    let gram: Vec<Vec<i64>> = l
        .gram_i64()
        .expect("root enumeration expects small gram entries");
    let h = height as i64;
    let mut out: Vec<LatticeVector> = Vec::new();
    let mut coords = vec![0i64; rank];
    // depth-first scan of the coordinate box, lexicographic by construction
    fn rec(
        gram: &[Vec<i64>],
        h: i64,
        coords: &mut Vec<i64>,
        depth: usize,
        l: &Arc<Lattice>,
        out: &mut Vec<LatticeVector>,
        modulo_pm: bool,
    ) {
        if depth == coords.len() {
            let mut n = 0i128;
            for (i, &a) in coords.iter().enumerate() {
                for (j, &b) in coords.iter().enumerate() {
                    n += (a as i128) * (gram[i][j] as i128) * (b as i128);
                }
            }
            if n == -2 {
                if modulo_pm {
                    let neg: Vec<i64> = coords.iter().map(|&x| -x).collect();
                    if coords.as_slice() < neg.as_slice() {
                        return;
                    }
                }
                out.push(l.vector(coords.clone()).unwrap());
            }
            return;
        }
        for x in -h..=h {
            coords[depth] = x;
            rec(gram, h, coords, depth + 1, l, out, modulo_pm);
        }
        coords[depth] = 0;
    }
    rec(&gram, h, &mut coords, 0, l, &mut out, modulo_pm);
    out
}

/// Basis (rows) of the saturated sublattice {v : (v, s) = 0 for all s in S},
/// together with the induced Gram matrix.
pub fn orthogonal_complement(
    l: &Arc<Lattice>,
    s: &[LatticeVector],
) -> Result<(IntMatrix, IntMatrix)> {
    for v in s {
        if !v.lattice().same_lattice(l) {
            return Err(Error::LatticeMismatch("complement vectors must live in the lattice".into()));
        }
    }
    // rows of constraints: (G s_i)^T x = 0
    let constraints: IntMatrix = s.iter().map(|v| mat_vec(l.gram(), v.coords())).collect();
    let basis = if constraints.is_empty() {
        linalg::identity(l.rank())
    } else {
        kernel_basis(&constraints)
    };
    let gram = induced_gram(l, &basis);
    Ok((basis, gram))
}

/// Gram matrix of the sublattice spanned by the given basis rows.
pub fn induced_gram(l: &Lattice, basis: &IntMatrix) -> IntMatrix {
    let bg = mat_mul(basis, l.gram());
    mat_mul(&bg, &mat_transpose(basis))
}

/// Saturation of the span of S in L (rows of the result are a basis).
pub fn primitive_closure(l: &Arc<Lattice>, s: &[LatticeVector]) -> Result<IntMatrix> {
    for v in s {
        if !v.lattice().same_lattice(l) {
            return Err(Error::LatticeMismatch("closure vectors must live in the lattice".into()));
        }
    }
    let rows: IntMatrix = s.iter().map(|v| v.coords().to_vec()).collect();
    Ok(saturation(&rows))
}

/// Canonical form of a row span, for lattice-equality assertions.
pub fn canonical_row_span(m: &IntMatrix) -> IntMatrix {
    row_hnf(m)
}

/// Index of the span of S inside its saturation.
pub fn span_saturation_index(s: &[LatticeVector]) -> Int {
    let rows: IntMatrix = s.iter().map(|v| v.coords().to_vec()).collect();
    linalg::span_index_in_saturation(&rows)
}

/// Picard-Lefschetz reflection in a (-2)-class: v -> v + (v, delta) delta.
/// Integral because delta^2 = -2; used for vanishing-cycle bookkeeping.
pub fn reflection_in_root(delta: &LatticeVector) -> Result<IntMatrix> {
    if norm(delta) != BigInt::from(-2) {
        return Err(Error::Precondition("reflection needs a (-2)-class".into()));
    }
    let l = delta.lattice();
    let n = l.rank();
    let gd = mat_vec(l.gram(), delta.coords());
    let mut m = linalg::identity(n);
    for i in 0..n {
        for j in 0..n {
            // column j of the matrix: e_j + (e_j, delta) delta
            m[i][j] = &m[i][j] + &delta.coords()[i] * &gd[j];
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Mukai vectors
// ---------------------------------------------------------------------------

/// Mukai vector (r, D, s) over a designated Picard lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiVector {
    pub r: Int,
    pub d: LatticeVector,
    pub s: Int,
}

impl MukaiVector {
    pub fn new(r: i64, d: LatticeVector, s: i64) -> Self {
        MukaiVector { r: BigInt::from(r), d, s: BigInt::from(s) }
    }
}

/// Mukai pairing D1.D2 - r1 s2 - r2 s1.
pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector) -> Result<Int> {
    let dd = pair(&v.d, &w.d)?;
    Ok(dd - &v.r * &w.s - &w.r * &v.s)
}

/// Euler pairing of the numerical Grothendieck lattice: chi(E, F) = -(v(E), v(F)).
pub fn mukai_euler_form(v: &MukaiVector, w: &MukaiVector) -> Result<Int> {
    Ok(-mukai_pairing(v, w)?)
}

/// Euler form on homology classes of Lagrangians: chi(K, L) = -[K].[L].
pub fn euler_form_fukaya(a: &LatticeVector, b: &LatticeVector) -> Result<Int> {
    Ok(-pair(a, b)?)
}

/// True iff the rows of `basis` rationally span a space containing `v`.
pub fn in_rational_span(basis: &IntMatrix, v: &[Int]) -> bool {
    let to_rat = |m: &IntMatrix| -> Vec<Vec<Rational>> {
        m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
    };
    let vr: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let rows = to_rat(basis);
    linalg::express_in_span(&rows, &vr).is_some()
}

/// Rank over Q of a set of integer rows.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let rows: Vec<Vec<Rational>> =
        m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    field_rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Arc<Lattice> {
        Lattice::standard(StandardLattice::K3).unwrap()
    }

    fn u() -> Arc<Lattice> {
        Lattice::standard(StandardLattice::U).unwrap()
    }

    #[test]
    fn standard_lattices() {
        assert_eq!(signature(&k3()), (3, 19));
        assert_eq!(signature(&u()), (1, 1));
        let t2 = Lattice::standard(StandardLattice::TwoN(2)).unwrap();
        assert_eq!(t2.gram()[0][0], BigInt::from(4));
        assert!(matches!(Lattice::standard(StandardLattice::TwoN(0)), Err(_)));
    }

    #[test]
    fn e8_is_even_negative_definite_unimodular() {
        let e8 = Lattice::standard(StandardLattice::E8Neg).unwrap();
        assert_eq!(signature(&e8), (0, 8));
        assert_eq!(e8.det().abs(), BigInt::one());
        for i in 0..8 {
            assert!((&e8.gram()[i][i] % BigInt::from(2)).is_zero());
        }
    }

    #[test]
    fn pairing_examples() {
        let u = u();
        let v = u.vector(vec![1, 0]).unwrap();
        let w = u.vector(vec![0, 1]).unwrap();
        assert_eq!(pair(&v, &w).unwrap(), BigInt::one());

        let l = Lattice::u_plus_two_n(2).unwrap();
        let x = l.vector(vec![1, -1, 0]).unwrap();
        assert_eq!(norm(&x), BigInt::from(-2));

        let l1 = Lattice::u_plus_two_n(1).unwrap();
        let y = l1.vector(vec![0, 0, 1]).unwrap();
        assert_eq!(norm(&y), BigInt::from(2));

        let other = Lattice::standard(StandardLattice::TwoN(1)).unwrap();
        let z = other.vector(vec![1]).unwrap();
        assert!(pair(&v, &z).is_err());
    }

    #[test]
    fn negate_is_involution() {
        let k = k3();
        assert_eq!(negate(&negate(&k)), k);
        let nu = negate(&u());
        assert_eq!(nu.gram()[0][1], BigInt::from(-1));
        let t1 = Lattice::standard(StandardLattice::TwoN(1)).unwrap();
        assert_eq!(negate(&t1).gram()[0][0], BigInt::from(-2));
    }

    #[test]
    fn direct_sum_examples() {
        let l = Lattice::u_plus_two_n(2).unwrap();
        assert_eq!(l.rank(), 3);
        assert_eq!(l.gram()[2][2], BigInt::from(4));
        assert_eq!(signature(&direct_sum(&u(), &u())), (2, 2));
        let e8 = Lattice::standard(StandardLattice::E8Neg).unwrap();
        assert_eq!(signature(&direct_sum(&e8, &e8)), (0, 16));
        assert_eq!(signature(&Lattice::u_plus_two_n(1).unwrap()), (2, 1));
    }

    #[test]
    fn discriminant_groups() {
        assert!(discriminant_group(&u()).is_empty());
        let t2 = Lattice::standard(StandardLattice::TwoN(2)).unwrap();
        assert_eq!(discriminant_group(&t2), vec![BigInt::from(4)]);
        let l = Lattice::u_plus_two_n(1).unwrap();
        assert_eq!(discriminant_group(&l), vec![BigInt::from(2)]);
        assert_eq!(discriminant_order(&l), BigInt::from(2));
    }

    #[test]
    fn isometry_tests() {
        let u = u();
        let swap = linalg::int_matrix_from_i64(&[vec![0, 1], vec![1, 0]]);
        assert!(is_isometry(&u, &swap).unwrap());
        let shear = linalg::int_matrix_from_i64(&[vec![1, 1], vec![0, 1]]);
        assert!(!is_isometry(&u, &shear).unwrap());
        assert!(is_isometry(&u, &linalg::identity(2)).unwrap());
        assert!(is_isometry(&u, &vec![vec![BigInt::one()]]).is_err());
    }

    #[test]
    fn discriminant_action() {
        // U + <4>: swapping the U coordinates fixes the discriminant Z/4
        let l = Lattice::u_plus_two_n(2).unwrap();
        let g = linalg::int_matrix_from_i64(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert!(acts_trivially_on_discriminant(&l, &g).unwrap());

        // <2>: -id acts as identity on the 2-torsion dual
        let t1 = Lattice::standard(StandardLattice::TwoN(1)).unwrap();
        let neg = linalg::int_matrix_from_i64(&[vec![-1]]);
        assert!(acts_trivially_on_discriminant(&t1, &neg).unwrap());

        // U + <2>: -id trivial on the discriminant (all 2-torsion)
        let l1 = Lattice::u_plus_two_n(1).unwrap();
        let negid = linalg::int_matrix_from_i64(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]);
        assert!(acts_trivially_on_discriminant(&l1, &negid).unwrap());

        // -id on <4> inverts the Z/4 dual generator: not trivial
        let t2 = Lattice::standard(StandardLattice::TwoN(2)).unwrap();
        let neg2 = linalg::int_matrix_from_i64(&[vec![-1]]);
        assert!(!acts_trivially_on_discriminant(&t2, &neg2).unwrap());

        // non-isometry input is an error
        let shear = linalg::int_matrix_from_i64(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(acts_trivially_on_discriminant(&l, &shear).is_err());
    }

    #[test]
    fn root_enumeration() {
        let l = Lattice::u_plus_two_n(2).unwrap();
        let roots = enumerate_roots(&l, 1, false);
        let coords: Vec<Vec<i64>> = roots.iter().map(|r| r.coords_i64()).collect();
        assert_eq!(coords, vec![vec![-1, 1, 0], vec![1, -1, 0]]);
        assert_eq!(enumerate_roots(&l, 1, true).len(), 1);

        let l1 = Lattice::u_plus_two_n(1).unwrap();
        let roots = enumerate_roots(&l1, 2, false);
        assert!(roots.iter().any(|r| r.coords_i64() == vec![1, -2, 1]));

        let pos = Lattice::standard(StandardLattice::TwoN(3)).unwrap();
        assert!(enumerate_roots(&pos, 5, false).is_empty());
    }

    #[test]
    fn roots_closed_under_negation_and_exact() {
        let l = Lattice::u_plus_two_n(1).unwrap();
        let roots = enumerate_roots(&l, 3, false);
        for r in &roots {
            assert_eq!(norm(r), BigInt::from(-2));
            let neg = r.negate();
            assert!(roots.iter().any(|x| x == &neg));
        }
    }

    #[test]
    fn orthogonal_complement_examples() {
        let l = direct_sum(&u(), &u());
        let s = vec![l.vector(vec![1, 1, 0, 0]).unwrap()];
        let (basis, _gram) = orthogonal_complement(&l, &s).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(in_rational_span(&basis, l.vector(vec![1, -1, 0, 0]).unwrap().coords()));

        let (all, _) = orthogonal_complement(&l, &[]).unwrap();
        assert_eq!(all.len(), 4);

        let u = u();
        let s = vec![u.vector(vec![1, 0]).unwrap()];
        let (basis, gram) = orthogonal_complement(&u, &s).unwrap();
        assert_eq!(canonical_row_span(&basis), linalg::int_matrix_from_i64(&[vec![1, 0]]));
        assert!(gram[0][0].is_zero());
    }

    #[test]
    fn complement_is_saturated() {
        let l = k3();
        let kappa = l.vector(vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let (basis, _) = orthogonal_complement(&l, &[kappa]).unwrap();
        assert_eq!(basis.len(), 21);
        let sat = saturation(&basis);
        assert_eq!(canonical_row_span(&basis), canonical_row_span(&sat));
    }

    #[test]
    fn primitive_closure_examples() {
        let u = u();
        let s = vec![u.vector(vec![2, 0]).unwrap()];
        let sat = primitive_closure(&u, &s).unwrap();
        assert_eq!(canonical_row_span(&sat), linalg::int_matrix_from_i64(&[vec![1, 0]]));

        let l = direct_sum(&u, &u);
        let s = vec![
            l.vector(vec![1, 1, 0, 0]).unwrap(),
            l.vector(vec![1, -1, 0, 0]).unwrap(),
        ];
        let sat = primitive_closure(&l, &s).unwrap();
        assert_eq!(
            canonical_row_span(&sat),
            linalg::int_matrix_from_i64(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])
        );
        assert_eq!(span_saturation_index(&s), BigInt::from(2));

        let basis: Vec<LatticeVector> =
            (0..4).map(|i| l.vector((0..4).map(|j| (i == j) as i64).collect()).unwrap()).collect();
        let sat = primitive_closure(&l, &basis).unwrap();
        assert_eq!(canonical_row_span(&sat), linalg::identity(4));
    }

    #[test]
    fn mukai_examples() {
        // Picard lattice <4> of the quartic
        let pic = Lattice::standard(StandardLattice::TwoN(2)).unwrap();
        let zero = pic.vector(vec![0]).unwrap();
        let v_o = MukaiVector::new(1, zero.clone(), 1);
        assert_eq!(mukai_pairing(&v_o, &v_o).unwrap(), BigInt::from(-2));
        let sky = MukaiVector::new(0, zero.clone(), 1);
        assert_eq!(mukai_pairing(&sky, &v_o).unwrap(), BigInt::from(-1));
        assert_eq!(mukai_euler_form(&sky, &v_o).unwrap(), BigInt::one());
        assert_eq!(mukai_pairing(&sky, &sky).unwrap(), BigInt::zero());
    }

    #[test]
    fn fukaya_euler_form() {
        let l = Lattice::u_plus_two_n(2).unwrap();
        let sphere = l.vector(vec![1, -1, 0]).unwrap();
        assert_eq!(euler_form_fukaya(&sphere, &sphere).unwrap(), BigInt::from(2));
        let torus = l.vector(vec![1, 0, 0]).unwrap();
        assert_eq!(euler_form_fukaya(&torus, &torus).unwrap(), BigInt::zero());
        let e = l.vector(vec![0, 0, 1]).unwrap();
        assert_eq!(euler_form_fukaya(&sphere, &e).unwrap(), BigInt::zero());
    }

    #[test]
    fn reflection_is_isometry_fixing_discriminant() {
        let l = Lattice::u_plus_two_n(2).unwrap();
        let delta = l.vector(vec![1, -1, 0]).unwrap();
        let r = reflection_in_root(&delta).unwrap();
        assert!(is_isometry(&l, &r).unwrap());
        assert!(acts_trivially_on_discriminant(&l, &r).unwrap());
        // reflection fixes delta^perp and negates delta
        let img = mat_vec(&r, delta.coords());
        assert_eq!(img, delta.negate().coords().to_vec());
        assert_eq!(mat_mul(&r, &r), linalg::identity(3));
    }

    #[test]
    fn gamma_stabilizer_spot_check() {
        // kappa in K3 with positive norm; any isometry fixing the complement
        // of N_kappa pointwise fixes kappa (kappa lies in that complement's span)
        let l = k3();
        let mut coords = vec![0i64; 22];
        coords[0] = 1;
        coords[1] = 1;
        let kappa = l.vector(coords).unwrap();
        assert_eq!(norm(&kappa), BigInt::from(2));
        let (nk_basis, _) = orthogonal_complement(&l, &[kappa.clone()]).unwrap();
        let nk_vecs: Vec<LatticeVector> =
            nk_basis.iter().map(|r| l.vector_big(r.clone()).unwrap()).collect();
        let (comp_basis, _) = orthogonal_complement(&l, &nk_vecs).unwrap();
        assert!(in_rational_span(&comp_basis, kappa.coords()));
    }
}
