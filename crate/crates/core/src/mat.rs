//! Dense arbitrary-precision integer matrices and their canonical forms.
//!
//! The column Hermite normal form used throughout is: upper triangular,
//! positive diagonal, and every entry to the right of a diagonal entry
//! reduced into `[0, diag)`. With columns as basis vectors this gives a
//! unique representative for the column span, so lattice equality is
//! entrywise equality of bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Errors from exact matrix and lattice algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatError {
    #[error("column span does not have full rank")]
    RankDeficient,
    #[error("matrix is singular")]
    Singular,
    #[error("inner lattice is not contained in the outer lattice")]
    NotContained,
    #[error("dimension mismatch ({0} vs {1})")]
    DimensionMismatch(usize, usize),
}

/// Row-major integer matrix. Dimensions may be zero (the empty matrix is the
/// basis of the zero-dimensional lattice carried by the zero ring).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    e: Vec<BigInt>,
}

/// Convenience: `&[i64]` to an exact integer vector.
pub fn ivec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match dimensions");
        IntMat { rows, cols, e: entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, e: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diag(d: &[BigInt]) -> Self {
        let mut m = Self::zero(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Build from column vectors. All columns must have length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length must match row count");
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut e = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            e.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMat { rows: r, cols: c, e }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.e[i * self.cols + j] = v;
    }

    pub fn col_vec(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.col_vec(j)).collect()
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let mut m = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut m = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.at(k, j);
                    m.e[i * other.cols + j] += t;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length must match column count");
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let t = self.at(i, j) * &v[j];
                out[i] += t;
            }
        }
        out
    }

    pub fn scaled(&self, c: &BigInt) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|x| -x).collect() }
    }

    pub fn transpose(&self) -> IntMat {
        let mut m = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.at(i, j).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Zero::is_zero)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.e.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            let v = -std::mem::take(&mut self.e[idx]);
            self.e[idx] = v;
        }
    }

    /// col_dst += q * col_src
    fn addmul_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = self.at(i, src) * q;
            self.e[i * self.cols + dst] += t;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.e.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            let v = -std::mem::take(&mut self.e[idx]);
            self.e[idx] = v;
        }
    }

    /// row_dst += q * row_src
    fn addmul_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = self.at(src, j) * q;
            self.e[dst * self.cols + j] += t;
        }
    }

    /// Keep only columns `from..`.
    fn drop_leading_cols(&self, from: usize) -> IntMat {
        let kept = self.cols - from;
        let mut m = IntMat::zero(self.rows, kept);
        for i in 0..self.rows {
            for j in 0..kept {
                m.set(i, j, self.at(i, from + j).clone());
            }
        }
        m
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Column elimination engine shared by `hnf`, `kernel` and `solve_columns`.
///
/// Processes rows bottom-up; after completion the first `zero_cols` columns
/// of the returned matrix are zero and the rest form the canonical column
/// Hermite form of the span (pivots on a staircase ending at the last
/// column). If `track` is set, the unimodular transform `u` with
/// `m * u = result` is returned.
fn hnf_engine(m: &IntMat, track: bool) -> (IntMat, Option<IntMat>, usize) {
    let mut a = m.clone();
    let mut u = if track { Some(IntMat::identity(m.cols)) } else { None };
    let rows = a.rows;
    let cols = a.cols;
    let mut c = cols; // exclusive bound of the unplaced region
    for i in (0..rows).rev() {
        if c == 0 {
            break;
        }
        loop {
            let nz: Vec<usize> = (0..c).filter(|&j| !a.at(i, j).is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                let j = nz[0];
                a.swap_cols(j, c - 1);
                if let Some(u) = u.as_mut() {
                    u.swap_cols(j, c - 1);
                }
                if a.at(i, c - 1).is_negative() {
                    a.negate_col(c - 1);
                    if let Some(u) = u.as_mut() {
                        u.negate_col(c - 1);
                    }
                }
                // Reduce the already-placed columns to the right into [0, pivot).
                let piv = a.at(i, c - 1).clone();
                for j2 in c..cols {
                    let q = a.at(i, j2).div_floor(&piv);
                    if !q.is_zero() {
                        let nq = -q;
                        a.addmul_col(j2, c - 1, &nq);
                        if let Some(u) = u.as_mut() {
                            u.addmul_col(j2, c - 1, &nq);
                        }
                    }
                }
                c -= 1;
                break;
            }
            // Reduce every entry in the row against the one of least magnitude.
            let &jmin = nz
                .iter()
                .min_by(|&&x, &&y| a.at(i, x).abs().cmp(&a.at(i, y).abs()))
                .unwrap();
            for &j in &nz {
                if j == jmin {
                    continue;
                }
                let q = a.at(i, j).div_floor(a.at(i, jmin));
                let nq = -q;
                a.addmul_col(j, jmin, &nq);
                if let Some(u) = u.as_mut() {
                    u.addmul_col(j, jmin, &nq);
                }
            }
        }
    }
    (a, u, c)
}

/// Canonical column Hermite form of the column span of `m`, zero columns
/// removed. Idempotent; invariant under right multiplication by unimodular
/// matrices.
pub fn hnf(m: &IntMat) -> IntMat {
    let (a, _, c) = hnf_engine(m, false);
    a.drop_leading_cols(c)
}

/// As `hnf`, but errors unless the span has full rank (= row count).
pub fn hnf_full_rank(m: &IntMat) -> Result<IntMat, LatError> {
    let h = hnf(m);
    if h.cols() != m.rows() {
        return Err(LatError::RankDeficient);
    }
    Ok(h)
}

/// Basis of the integer kernel `{x : m x = 0}`, as columns. May have zero
/// columns (trivial kernel).
pub fn kernel(m: &IntMat) -> IntMat {
    let (_, u, c) = hnf_engine(m, true);
    let u = u.unwrap();
    let mut k = IntMat::zero(m.cols(), c);
    for j in 0..c {
        for i in 0..m.cols() {
            k.set(i, j, u.at(i, j).clone());
        }
    }
    k
}

/// One integer solution `x` of `m x = v`, if any.
pub fn solve_columns(m: &IntMat, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), v.len());
    let (h, u, c) = hnf_engine(m, true);
    let u = u.unwrap();
    let mut residual = v.to_vec();
    let mut t = vec![BigInt::zero(); m.cols()];
    for j in (c..m.cols()).rev() {
        // lowest nonzero row of column j is its pivot
        let piv_row = (0..m.rows()).rev().find(|&i| !h.at(i, j).is_zero());
        let Some(i) = piv_row else { continue };
        let (q, r) = residual[i].div_rem(h.at(i, j));
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for i2 in 0..m.rows() {
                let d = h.at(i2, j) * &q;
                residual[i2] -= d;
            }
            t[j] = q;
        }
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(u.mul_vec(&t))
}

/// Solve `h x = v` with `h` square, upper triangular, nonzero diagonal.
/// Returns `None` when the solution is not integral.
pub fn solve_upper_triangular(h: &IntMat, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.rows();
    assert!(h.is_square() && v.len() == n);
    let mut residual = v.to_vec();
    let mut x = vec![BigInt::zero(); n];
    for j in (0..n).rev() {
        let (q, r) = residual[j].div_rem(h.at(j, j));
        if !r.is_zero() {
            return None;
        }
        for i in 0..=j {
            let d = h.at(i, j) * &q;
            residual[i] -= d;
        }
        x[j] = q;
    }
    Some(x)
}

/// Smith decomposition of a square matrix: `u * m * v = diag(d)` with `u`,
/// `v` unimodular and `d_1 | d_2 | ... | d_n`, all entries nonnegative.
/// `u_inv` is maintained alongside (`u * u_inv = 1`).
pub struct SnfDecomp {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub diag: Vec<BigInt>,
}

pub fn snf_with_transform(m: &IntMat) -> SnfDecomp {
    assert!(m.is_square(), "Smith form restricted to square matrices here");
    let n = m.rows();
    let mut a = m.clone();
    let mut u = IntMat::identity(n);
    let mut u_inv = IntMat::identity(n);
    let mut v = IntMat::identity(n);

    // row op: a <- E a, u <- E u, u_inv <- u_inv E^{-1}
    macro_rules! row_swap {
        ($x:expr, $y:expr) => {{
            a.swap_rows($x, $y);
            u.swap_rows($x, $y);
            u_inv.swap_cols($x, $y);
        }};
    }
    macro_rules! row_addmul {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q = $q;
            a.addmul_row($dst, $src, &q);
            u.addmul_row($dst, $src, &q);
            let nq = -q;
            u_inv.addmul_col($src, $dst, &nq);
        }};
    }
    macro_rules! row_negate {
        ($x:expr) => {{
            a.negate_row($x);
            u.negate_row($x);
            u_inv.negate_col($x);
        }};
    }

    for t in 0..n {
        'pivot: loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a.at(i, j).is_zero()
                        && best
                            .map(|(bi, bj)| a.at(i, j).abs() < a.at(bi, bj).abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break }; // trailing block zero
            row_swap!(t, pi);
            if pj != t {
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                if !a.at(i, t).is_zero() {
                    let q = a.at(i, t).div_floor(a.at(t, t));
                    row_addmul!(i, t, -q);
                    if !a.at(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }
            for j in t + 1..n {
                if !a.at(t, j).is_zero() {
                    let q = a.at(t, j).div_floor(a.at(t, t));
                    let nq = -q;
                    a.addmul_col(j, t, &nq);
                    v.addmul_col(j, t, &nq);
                    if !a.at(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }
            // force the pivot to divide the whole trailing block
            for i in t + 1..n {
                for j in t + 1..n {
                    if !a.at(i, j).mod_floor(a.at(t, t)).is_zero() {
                        row_addmul!(t, i, BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if a.at(t, t).is_negative() {
            row_negate!(t);
        }
    }
    let diag = (0..n).map(|i| a.at(i, i).clone()).collect();
    SnfDecomp { u, u_inv, v, diag }
}

/// Smith invariant factors `d_1 | d_2 | ... | d_n` of a nonsingular square
/// matrix, all positive.
pub fn snf_diag(m: &IntMat) -> Result<Vec<BigInt>, LatError> {
    let d = snf_with_transform(m).diag;
    if d.iter().any(Zero::is_zero) {
        return Err(LatError::Singular);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMat {
        IntMat::from_i64(rows)
    }

    /// Independent 2x2 span-membership oracle: v in span{c1, c2} over Z,
    /// decided by Cramer's rule.
    fn in_span_2x2(c1: &[BigInt], c2: &[BigInt], v: &[BigInt]) -> bool {
        let det = &c1[0] * &c2[1] - &c1[1] * &c2[0];
        assert!(!det.is_zero());
        let a = &v[0] * &c2[1] - &v[1] * &c2[0];
        let b = &c1[0] * &v[1] - &c1[1] * &v[0];
        (&a % &det).is_zero() && (&b % &det).is_zero()
    }

    /// Brute-force canonical basis of a full-rank 2x2 column span, straight
    /// from the normal-form definition: h00 = least positive x with (x,0) in
    /// the span, h11 = least positive y with (*,y) in the span, h01 the
    /// unique representative in [0, h00).
    fn hnf2_bruteforce(c1: &[BigInt], c2: &[BigInt]) -> IntMat {
        let bound = 1000i64;
        let h00 = (1..=bound)
            .map(BigInt::from)
            .find(|x| in_span_2x2(c1, c2, &[x.clone(), BigInt::zero()]))
            .expect("full rank");
        let mut h11 = None;
        let mut h01 = None;
        'outer: for y in 1..=bound {
            for x in 0..bound {
                let v = ivec(&[x, y]);
                if in_span_2x2(c1, c2, &v) {
                    h11 = Some(BigInt::from(y));
                    h01 = Some(BigInt::from(x) % &h00);
                    break 'outer;
                }
            }
        }
        IntMat::from_cols(
            2,
            &[
                vec![h00, BigInt::zero()],
                vec![h01.unwrap(), h11.unwrap()],
            ],
        )
    }

    #[test]
    fn hnf_identity_fixed() {
        let i2 = IntMat::identity(2);
        assert_eq!(hnf(&i2), i2);
    }

    #[test]
    fn hnf_unimodular_input_gives_identity() {
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(hnf(&a), IntMat::identity(2));
    }

    #[test]
    fn hnf_two_by_two_matches_bruteforce() {
        let a = m(&[&[2, 4], &[0, 2]]);
        let expect = hnf2_bruteforce(&a.col_vec(0), &a.col_vec(1));
        assert_eq!(hnf(&a), expect);
        assert_eq!(hnf(&a), m(&[&[2, 0], &[0, 2]]));

        for (c1, c2) in [
            ([3i64, 1], [1i64, 2]),
            ([4, 2], [2, 4]),
            ([-5, 3], [7, 2]),
            ([6, 0], [3, 9]),
            ([2, 0], [1, 1]),
        ] {
            let a = IntMat::from_cols(2, &[ivec(&c1), ivec(&c2)]);
            assert_eq!(hnf(&a), hnf2_bruteforce(&ivec(&c1), &ivec(&c2)), "{a}");
        }
    }

    #[test]
    fn hnf_rank_checks() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(hnf_full_rank(&a), Err(LatError::RankDeficient));
        assert_eq!(hnf(&a).cols(), 1);
        assert!(hnf_full_rank(&m(&[&[2, 1], &[0, 3]])).is_ok());
    }

    #[test]
    fn hnf_redundant_generators() {
        // three generators of a rank-2 span
        let a = m(&[&[2, 0, 2], &[0, 2, 2]]);
        assert_eq!(hnf(&a), m(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let k = kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        // kernel generated by (2, -1) up to sign
        assert_eq!(k.at(0, 0).abs(), BigInt::from(2));
        assert_eq!(k.at(1, 0).abs(), BigInt::one());
    }

    #[test]
    fn solve_columns_basic() {
        let a = m(&[&[2, 3], &[0, 1]]);
        let x = solve_columns(&a, &ivec(&[7, 1])).unwrap();
        assert_eq!(a.mul_vec(&x), ivec(&[7, 1]));
        assert!(solve_columns(&a, &ivec(&[1, 0])).is_none());
    }

    #[test]
    fn snf_examples() {
        // already diagonal
        assert_eq!(snf_diag(&m(&[&[2, 0], &[0, 2]])).unwrap(), ivec(&[2, 2]));
        // 2x2 gcd/det oracle: d1 = gcd of entries, d1*d2 = |det|
        let a = m(&[&[2, 1], &[0, 1]]);
        assert_eq!(snf_diag(&a).unwrap(), ivec(&[1, 2]));
        assert_eq!(snf_diag(&m(&[&[6]])).unwrap(), ivec(&[6]));
        assert_eq!(snf_diag(&m(&[&[0]])), Err(LatError::Singular));
    }

    #[test]
    fn snf_transform_consistency() {
        let a = m(&[&[4, 6, 2], &[2, 8, 10], &[0, 4, 3]]);
        let d = snf_with_transform(&a);
        assert_eq!(d.u.mul(&a).mul(&d.v), IntMat::diag(&d.diag));
        assert_eq!(d.u.mul(&d.u_inv), IntMat::identity(3));
        for w in d.diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisor chain broken: {:?}", d.diag);
        }
    }

    #[test]
    fn triangular_solve() {
        let h = m(&[&[2, 1], &[0, 3]]);
        assert_eq!(solve_upper_triangular(&h, &ivec(&[3, 3])), Some(ivec(&[1, 1])));
        assert_eq!(solve_upper_triangular(&h, &ivec(&[1, 0])), None);
    }

    #[test]
    fn empty_matrix_is_legal() {
        let e = IntMat::zero(0, 0);
        assert_eq!(hnf(&e).cols(), 0);
        assert_eq!(snf_diag(&e).unwrap(), Vec::<BigInt>::new());
    }
}
