//! Exact integer and field linear algebra: Smith/Hermite normal forms,
//! integer kernels and saturations, determinants, and generic Gaussian
//! elimination used by the rational and quadratic-field solvers.

use crate::num::{Int, Quad, Rational};
use num::{BigInt, Integer, One, Signed, Zero};

pub type IntMatrix = Vec<Vec<Int>>;

pub fn int_matrix_from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    assert!(a.is_empty() || a[0].len() == k, "dimension mismatch in mat_mul");
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[t][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &a[i][t] * &b[t][j];
            }
        }
    }
    out
}

pub fn mat_transpose(a: &IntMatrix) -> IntMatrix {
    if a.is_empty() {
        return vec![];
    }
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[Int]) -> Vec<Int> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (c, x)| acc + c * x))
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det(a: &IntMatrix) -> Int {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    assert_eq!(a[0].len(), n, "det needs a square matrix");
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num.checked_div(&prev).expect("bareiss divisibility");
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Smith normal form with transforms: u * a * v = d, u and v unimodular.
/// Also returns u_inv and v_inv (accumulated inverses of the row/col ops).
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        let n = self.d.len().min(if self.d.is_empty() { 0 } else { self.d[0].len() });
        (0..n).take_while(|&i| !self.d[i][i].is_zero()).count()
    }

    /// Nontrivial invariant factors (diagonal entries > 1), in divisibility order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.d.len().min(if self.d.is_empty() { 0 } else { self.d[0].len() });
        (0..n)
            .map(|i| self.d[i][i].abs())
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.to_vec();
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    // elementary operations, mirrored on the transform accumulators
    fn swap_rows(d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize) {
        d.swap(i, j);
        u.swap(i, j);
        // (swap)^-1 = swap, applied on the right of u_inv: swap columns
        for row in u_inv.iter_mut() {
            row.swap(i, j);
        }
    }
    fn swap_cols(d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize) {
        for row in d.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    }
    // row i -= q * row j
    fn add_row(d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for k in 0..d[i].len() {
            d[i][k] = &d[i][k] - q * &d[j][k];
        }
        for k in 0..u[i].len() {
            u[i][k] = &u[i][k] - q * &u[j][k];
        }
        // inverse op: row i += q * row j, on the right of u_inv: col j += q * col i
        for row in u_inv.iter_mut() {
            row[j] = &row[j] + q * &row[i];
        }
    }
    // col i -= q * col j
    fn add_col(d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in d.iter_mut() {
            row[i] = &row[i] - q * &row[j];
        }
        for row in v.iter_mut() {
            row[i] = &row[i] - q * &row[j];
        }
        for k in 0..v_inv[j].len() {
            v_inv[j][k] = &v_inv[j][k] + q * &v_inv[i][k];
        }
    }
    fn negate_row(d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize) {
        for x in d[i].iter_mut() {
            *x = -x.clone();
        }
        for x in u[i].iter_mut() {
            *x = -x.clone();
        }
        for row in u_inv.iter_mut() {
            row[i] = -row[i].clone();
        }
    }

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // find a pivot: smallest nonzero absolute value in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // remaining block is zero
        };
        if pi != t {
            swap_rows(&mut d, &mut u, &mut u_inv, t, pi);
        }
        if pj != t {
            swap_cols(&mut d, &mut v, &mut v_inv, t, pj);
        }
        // clear row and column t
        let mut clean = true;
        for i in t + 1..rows {
            let q = d[i][t].div_floor(&d[t][t]);
            add_row(&mut d, &mut u, &mut u_inv, i, t, &q);
            if !d[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = d[t][j].div_floor(&d[t][t]);
            add_col(&mut d, &mut v, &mut v_inv, j, t, &q);
            if !d[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue; // repeat with a smaller pivot
        }
        // enforce divisibility of later entries by d[t][t]
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    // add row i to row t to pull the entry into the pivot row
                    let minus_one = -BigInt::one();
                    add_row(&mut d, &mut u, &mut u_inv, t, i, &minus_one);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, &mut u, &mut u_inv, t);
        }
        t += 1;
    }
    Snf { d, u, u_inv, v, v_inv }
}

/// Basis (as rows) of the integer kernel {x : a * x^T = 0}; saturated by construction.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<Int>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    if a.is_empty() {
        return identity(cols);
    }
    let snf = smith_normal_form(a);
    let r = snf.rank();
    // a = u^-1 d v^-1, a x = 0 <=> d (v^-1 x) = 0 <=> v^-1 x supported on zero columns
    (r..cols).map(|j| snf.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Saturation of the row span of m inside Z^n: the primitive sublattice with
/// the same rational span. Rows of the result form a basis.
pub fn saturation(m: &IntMatrix) -> Vec<Vec<Int>> {
    if m.is_empty() {
        return vec![];
    }
    let mt = mat_transpose(m);
    let snf = smith_normal_form(&mt);
    let r = snf.rank();
    // column span of m^T saturates to the first r columns of u_inv
    (0..r).map(|j| snf.u_inv.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Index of the row span of `m` inside its saturation (product of invariant factors).
pub fn span_index_in_saturation(m: &IntMatrix) -> Int {
    if m.is_empty() {
        return BigInt::one();
    }
    let snf = smith_normal_form(m);
    let mut idx = BigInt::one();
    for i in 0..snf.rank() {
        idx *= snf.d[i][i].abs();
    }
    idx
}

/// Canonical row-style Hermite normal form of the row span (for lattice equality tests).
pub fn row_hnf(m: &IntMatrix) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = m.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if rows.is_empty() {
        return vec![];
    }
    let cols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        // find row with nonzero entry in this column at or below pivot_row
        let Some(_) = (pivot_row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        // reduce entries in this column to a single gcd entry via euclid
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows.len() {
                if !rows[i][col].is_zero()
                    && best.map_or(true, |b| rows[i][col].abs() < rows[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let b = best.unwrap();
            rows.swap(pivot_row, b);
            let mut any = false;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                for k in 0..cols {
                    rows[i][k] = &rows[i][k] - &q * &rows[pivot_row][k];
                }
                if !rows[i][col].is_zero() {
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        if rows[pivot_row][col].is_negative() {
            for k in 0..cols {
                rows[pivot_row][k] = -rows[pivot_row][k].clone();
            }
        }
        // reduce rows above
        for i in 0..pivot_row {
            let q = rows[i][col].div_floor(&rows[pivot_row][col]);
            if !q.is_zero() {
                for k in 0..cols {
                    rows[i][k] = &rows[i][k] - &q * &rows[pivot_row][k];
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

// ---------------------------------------------------------------------------
// Generic field elimination (rationals and quadratic numbers)
// ---------------------------------------------------------------------------

pub trait FieldScalar: Clone + PartialEq {
    fn f_zero() -> Self;
    fn f_one() -> Self;
    fn f_from_i64(x: i64) -> Self;
    fn f_add(&self, o: &Self) -> Self;
    fn f_sub(&self, o: &Self) -> Self;
    fn f_mul(&self, o: &Self) -> Self;
    fn f_neg(&self) -> Self;
    fn f_inv(&self) -> Option<Self>;
    fn f_is_zero(&self) -> bool;
}

impl FieldScalar for Rational {
    fn f_zero() -> Self {
        Rational::zero()
    }
    fn f_one() -> Self {
        Rational::one()
    }
    fn f_from_i64(x: i64) -> Self {
        Rational::from_integer(BigInt::from(x))
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_neg(&self) -> Self {
        -self.clone()
    }
    fn f_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl FieldScalar for Quad {
    fn f_zero() -> Self {
        Quad::zero()
    }
    fn f_one() -> Self {
        Quad::one()
    }
    fn f_from_i64(x: i64) -> Self {
        Quad::from_int(x)
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_neg(&self) -> Self {
        -self.clone()
    }
    fn f_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Solve a * x = b for a square system; None if singular.
pub fn solve_square<F: FieldScalar>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].f_is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].f_inv().unwrap();
        for k in col..=n {
            m[col][k] = m[col][k].f_mul(&inv);
        }
        for i in 0..n {
            if i != col && !m[i][col].f_is_zero() {
                let factor = m[i][col].clone();
                for k in col..=n {
                    let delta = factor.f_mul(&m[col][k]);
                    m[i][k] = m[i][k].f_sub(&delta);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Rank of a rectangular matrix over a field.
pub fn field_rank<F: FieldScalar>(a: &[Vec<F>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<F>> = a.to_vec();
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| !m[i][col].f_is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].f_inv().unwrap();
        for k in col..cols {
            m[rank][k] = m[rank][k].f_mul(&inv);
        }
        for i in 0..rows {
            if i != rank && !m[i][col].f_is_zero() {
                let factor = m[i][col].clone();
                for k in col..cols {
                    let delta = factor.f_mul(&m[rank][k]);
                    m[i][k] = m[i][k].f_sub(&delta);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Express b as a linear combination of the given (row) vectors, if possible.
pub fn express_in_span<F: FieldScalar>(vectors: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let k = vectors.len();
    if k == 0 {
        return if b.iter().all(|x| x.f_is_zero()) { Some(vec![]) } else { None };
    }
    let n = vectors[0].len();
    assert_eq!(b.len(), n);
    // solve (vectors^T) c = b by elimination on the augmented n x (k+1) system
    let mut m: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row: Vec<F> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(piv) = (rank..n).find(|&i| !m[i][col].f_is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].f_inv().unwrap();
        for t in col..=k {
            m[rank][t] = m[rank][t].f_mul(&inv);
        }
        for i in 0..n {
            if i != rank && !m[i][col].f_is_zero() {
                let factor = m[i][col].clone();
                for t in col..=k {
                    let delta = factor.f_mul(&m[rank][t]);
                    m[i][t] = m[i][t].f_sub(&delta);
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == n {
            break;
        }
    }
    // consistency: rows after rank must have zero rhs
    for row in m.iter().skip(rank) {
        if !row[k].f_is_zero() {
            return None;
        }
    }
    let mut coeffs = vec![F::f_zero(); k];
    for &(r, c) in &pivots {
        coeffs[c] = m[r][k].clone();
    }
    Some(coeffs)
}

/// Sylvester signature (p, q) of a symmetric rational matrix by congruence
/// elimination with pivoting on zero diagonals. Requires nondegeneracy.
pub fn symmetric_signature(gram: &[Vec<Rational>]) -> Result<(usize, usize), String> {
    let n = gram.len();
    let mut m: Vec<Vec<Rational>> = gram.to_vec();
    let mut p = 0usize;
    let mut q = 0usize;
    let mut i = 0usize;
    while i < n {
        if m[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                // symmetric swap of rows/cols i and j
                m.swap(i, j);
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                // isotropic pair: row/col addition creates 2*m[i][j] on the diagonal
                for k in 0..n {
                    let add = m[j][k].clone();
                    m[i][k] = &m[i][k] + &add;
                }
                for k in 0..n {
                    let add = m[k][j].clone();
                    m[k][i] = &m[k][i] + &add;
                }
            } else {
                return Err("degenerate symmetric form".to_string());
            }
            continue;
        }
        let d = m[i][i].clone();
        if d.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
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
        }
        i += 1;
    }
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn snf_transforms_are_consistent() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let snf = smith_normal_form(&a);
        assert_eq!(mat_mul(&mat_mul(&snf.u, &a), &snf.v), snf.d);
        assert_eq!(mat_mul(&snf.u, &snf.u_inv), identity(3));
        assert_eq!(mat_mul(&snf.v, &snf.v_inv), identity(3));
        // d1 = gcd(entries) = 2, d1*d2 = gcd(2x2 minors) = 4, d1*d2*d3 = |det| = 624
        let diag: Vec<BigInt> = (0..3).map(|i| snf.d[i][i].clone()).collect();
        assert_eq!(diag, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
        assert!((&diag[1] % &diag[0]).is_zero());
        assert!((&diag[2] % &diag[1]).is_zero());
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = m(&[&[6, 0], &[0, 4]]);
        let snf = smith_normal_form(&a);
        let d0 = snf.d[0][0].clone();
        let d1 = snf.d[1][1].clone();
        assert!((&d1 % &d0).is_zero());
        assert_eq!(&d0 * &d1, BigInt::from(24));
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let a = m(&[&[1, 1, 0], &[2, 2, 0]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn saturation_divides_content() {
        let mrows = m(&[&[2, 0]]);
        let sat = saturation(&mrows);
        assert_eq!(row_hnf(&sat), m(&[&[1, 0]]));
        assert_eq!(span_index_in_saturation(&mrows), BigInt::from(2));
    }

    #[test]
    fn bareiss_det() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&a), BigInt::from(-1));
        let b = m(&[&[2, 1], &[1, 2]]);
        assert_eq!(det(&b), BigInt::from(3));
    }

    #[test]
    fn signature_of_hyperbolic_block() {
        let gram = vec![
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(0, 1)],
        ];
        assert_eq!(symmetric_signature(&gram).unwrap(), (1, 1));
    }

    #[test]
    fn solve_square_rational() {
        let a = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(3, 1)]];
        let b = vec![rat(5, 1), rat(10, 1)];
        let x = solve_square(&a, &b).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(3, 1)]);
    }

    #[test]
    fn express_in_span_works() {
        let vs = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        let b = vec![rat(3, 1), rat(1, 1)];
        let c = express_in_span(&vs, &b).unwrap();
        assert_eq!(c, vec![rat(2, 1), rat(1, 1)]);
        assert!(express_in_span(&vs[..1].to_vec(), &b).is_none());
    }
}
