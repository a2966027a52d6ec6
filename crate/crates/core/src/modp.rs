//! Linear algebra over prime fields and splitting of finite commutative
//! F_p-algebras into their field factors.
//!
//! The radical is the kernel of an iterated Frobenius (which is F_p-linear),
//! and the semisimple part is split by Frobenius-fixed elements: the fixed
//! space has one dimension per field factor, a non-scalar fixed element has
//! a squarefree minimal polynomial with all roots in F_p, and the kernels of
//! `v - a` decompose the algebra. Elements are swept deterministically, so
//! the output order is reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn modp(x: &BigInt, p: &BigInt) -> BigInt {
    x.mod_floor(p)
}

fn inv_modp(x: &BigInt, p: &BigInt) -> BigInt {
    let e = x.extended_gcd(p);
    assert!(e.gcd.is_one(), "not invertible mod p");
    modp(&e.x, p)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct FpMat {
    pub p: BigInt,
    pub rows: usize,
    pub cols: usize,
    e: Vec<BigInt>,
}

impl FpMat {
    pub fn zero(p: &BigInt, rows: usize, cols: usize) -> Self {
        FpMat { p: p.clone(), rows, cols, e: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(p: &BigInt, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_cols(p: &BigInt, rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zero(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.e[i * self.cols + j] = modp(&v, &self.p);
    }

    pub fn col_vec(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn hstack(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zero(&self.p, self.rows, self.cols + other.cols);
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

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zero(&self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.at(i, j) * &v[j];
                }
                modp(&acc, &self.p)
            })
            .collect()
    }

    pub fn pow(&self, mut k: usize) -> FpMat {
        assert_eq!(self.rows, self.cols);
        let mut result = Self::identity(&self.p, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut m = Self::zero(&self.p, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j) - other.at(i, j));
            }
        }
        m
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
    pub fn rref(&self) -> (FpMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.e.swap(r * m.cols + j, pr * m.cols + j);
            }
            let inv = inv_modp(m.at(r, c), &m.p);
            for j in 0..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j) - &f * m.at(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, as columns.
    pub fn kernel(&self) -> FpMat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zero(&self.p, self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            k.set(fc, idx, BigInt::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                k.set(pc, idx, -r.at(prow, fc));
            }
        }
        k
    }

    /// Solve `self * x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let bm = FpMat::from_cols(&self.p, self.rows, &[b.to_vec()]);
        let aug = self.hstack(&bm);
        let (r, pivots) = aug.rref();
        let mut x = vec![BigInt::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            if pc == self.cols {
                return None; // pivot in the augmented column
            }
            x[pc] = r.at(prow, self.cols).clone();
        }
        Some(x)
    }
}

/// Finite-dimensional commutative unital algebra over F_p with explicit
/// structure constants: `mul_mats[i]` column j holds `e_i * e_j`.
#[derive(Clone, Debug)]
pub(crate) struct FpAlgebra {
    pub p: BigInt,
    pub dim: usize,
    pub mul_mats: Vec<FpMat>,
    pub one: Vec<BigInt>,
}

impl FpAlgebra {
    pub fn mul_matrix(&self, x: &[BigInt]) -> FpMat {
        let mut m = FpMat::zero(&self.p, self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..self.dim {
                for j in 0..self.dim {
                    let v = m.at(r, j) + c * self.mul_mats[i].at(r, j);
                    m.set(r, j, v);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.mul_matrix(x).mul_vec(y)
    }

    pub fn pow_elt(&self, x: &[BigInt], e: &BigInt) -> Vec<BigInt> {
        assert!(!e.is_negative());
        let mut result = self.one.clone();
        let mut base = x.to_vec();
        let mut e = e.clone();
        let two = BigInt::from(2u32);
        while e.is_positive() {
            if e.is_odd() {
                result = self.mul_vec(&result, &base);
            }
            e /= &two;
            if e.is_positive() {
                base = self.mul_vec(&base, &base);
            }
        }
        result
    }

    fn basis_elt(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim];
        v[i] = BigInt::one();
        v
    }

    /// Matrix of x -> x^p (F_p-linear in characteristic p).
    pub fn frobenius_matrix(&self) -> FpMat {
        let cols: Vec<Vec<BigInt>> = (0..self.dim)
            .map(|i| self.pow_elt(&self.basis_elt(i), &self.p))
            .collect();
        FpMat::from_cols(&self.p, self.dim, &cols)
    }

    /// Basis of the nilradical: kernel of Frobenius iterated until the
    /// exponent p^k reaches the algebra dimension.
    pub fn nilradical_basis(&self) -> FpMat {
        if self.dim == 0 {
            return FpMat::zero(&self.p, 0, 0);
        }
        let f = self.frobenius_matrix();
        let mut k = 1usize;
        let mut reach = self.p.clone();
        let dim_b = BigInt::from(self.dim);
        while reach < dim_b {
            reach *= &self.p;
            k += 1;
        }
        f.pow(k).kernel()
    }

    /// Minimal polynomial of `v`, monic, as the coefficient vector
    /// `[c_0, ..., c_{d-1}, 1]`.
    pub fn min_poly(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut powers: Vec<Vec<BigInt>> = vec![self.one.clone()];
        let mut cur = self.one.clone();
        loop {
            cur = self.mul_vec(&cur, v);
            let basis = FpMat::from_cols(&self.p, self.dim, &powers);
            if let Some(c) = basis.solve(&cur) {
                let mut coeffs: Vec<BigInt> = c.iter().map(|x| modp(&(-x), &self.p)).collect();
                coeffs.push(BigInt::one());
                return coeffs;
            }
            powers.push(cur.clone());
            assert!(powers.len() <= self.dim + 1, "minimal polynomial search overran dimension");
        }
    }
}

fn eval_poly(coeffs: &[BigInt], a: &BigInt, p: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = modp(&(acc * a + c), p);
    }
    acc
}

/// Maximal ideal of an F_p-algebra: its subspace basis and the residue
/// degree f (so the quotient is the field of p^f elements).
pub(crate) struct FpMaxIdeal {
    pub basis: FpMat,
    pub f: u32,
}

/// All maximal ideals of a nonzero finite commutative F_p-algebra.
pub(crate) fn maximal_ideals_fp(alg: &FpAlgebra) -> Vec<FpMaxIdeal> {
    assert!(alg.dim > 0);
    let nil = alg.nilradical_basis();
    let (quo, lift, _proj) = quotient_algebra(alg, &nil);
    let leaves = split_semisimple(&quo);
    let mut out = Vec::new();
    for i in 0..leaves.len() {
        // maximal ideal = radical + all other field-factor components
        let mut cols: Vec<Vec<BigInt>> = (0..nil.cols).map(|j| nil.col_vec(j)).collect();
        for (j, leaf) in leaves.iter().enumerate() {
            if j == i {
                continue;
            }
            for c in 0..leaf.cols {
                cols.push(lift(&leaf.col_vec(c)));
            }
        }
        let f = leaves[i].cols as u32;
        out.push(FpMaxIdeal { basis: FpMat::from_cols(&alg.p, alg.dim, &cols), f });
    }
    out
}

/// Quotient of an algebra by an ideal subspace; returns the quotient algebra
/// together with lift and project maps between coordinate systems.
#[allow(clippy::type_complexity)]
fn quotient_algebra(
    alg: &FpAlgebra,
    sub: &FpMat,
) -> (
    FpAlgebra,
    impl Fn(&[BigInt]) -> Vec<BigInt>,
    impl Fn(&[BigInt]) -> Vec<BigInt>,
) {
    let p = alg.p.clone();
    // row space of the subspace, reduced: reduction zeroes the pivot coords
    let (rr, pivots) = transpose_fp(sub).rref();
    let complement: Vec<usize> = (0..alg.dim).filter(|c| !pivots.contains(c)).collect();
    let pivots2 = pivots.clone();
    let rr2 = rr.clone();
    let complement2 = complement.clone();
    let pdim = alg.dim;
    let project = move |v: &[BigInt]| -> Vec<BigInt> {
        let mut w = v.to_vec();
        for (prow, &pc) in pivots2.iter().enumerate() {
            if w[pc].is_zero() {
                continue;
            }
            let f = w[pc].clone();
            for j in 0..pdim {
                let t = &w[j] - &f * rr2.at(prow, j);
                w[j] = modp(&t, &rr2.p);
            }
        }
        complement2.iter().map(|&c| w[c].clone()).collect()
    };
    let complement3 = complement.clone();
    let lift = move |u: &[BigInt]| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); pdim];
        for (idx, &c) in complement3.iter().enumerate() {
            v[c] = u[idx].clone();
        }
        v
    };
    let qdim = complement.len();
    let mut mul_mats = Vec::with_capacity(qdim);
    for &ci in &complement {
        let cols: Vec<Vec<BigInt>> = complement
            .iter()
            .map(|&cj| project(&alg.mul_vec(&unit_vec(alg.dim, ci), &unit_vec(alg.dim, cj))))
            .collect();
        mul_mats.push(FpMat::from_cols(&p, qdim, &cols));
    }
    let one = project(&alg.one);
    (FpAlgebra { p, dim: qdim, mul_mats, one }, lift, project)
}

fn unit_vec(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

fn transpose_fp(m: &FpMat) -> FpMat {
    let mut t = FpMat::zero(&m.p, m.cols, m.rows);
    for i in 0..m.rows {
        for j in 0..m.cols {
            t.set(j, i, m.at(i, j).clone());
        }
    }
    t
}

/// Decompose a semisimple commutative F_p-algebra into its field-factor
/// component subspaces (bases as columns, in the algebra's coordinates).
fn split_semisimple(alg: &FpAlgebra) -> Vec<FpMat> {
    if alg.dim == 0 {
        return Vec::new();
    }
    let f = alg.frobenius_matrix();
    let fixed = f.sub(&FpMat::identity(&alg.p, alg.dim)).kernel();
    if fixed.cols == 1 {
        return vec![FpMat::identity(&alg.p, alg.dim)];
    }
    // deterministic choice of a non-scalar Frobenius-fixed element
    let one_mat = FpMat::from_cols(&alg.p, alg.dim, std::slice::from_ref(&alg.one));
    let v = (0..fixed.cols)
        .map(|j| fixed.col_vec(j))
        .find(|v| {
            let joined = one_mat.hstack(&FpMat::from_cols(&alg.p, alg.dim, std::slice::from_ref(v)));
            joined.rank() == 2
        })
        .expect("a fixed space of dimension >= 2 contains a non-scalar element");
    let mu = alg.min_poly(&v);
    let deg = mu.len() - 1;
    // all roots of mu lie in the prime field; sweep ascending with early exit
    let mut roots = Vec::new();
    let mut a = BigInt::zero();
    while a < alg.p && roots.len() < deg {
        if eval_poly(&mu, &a, &alg.p).is_zero() {
            roots.push(a.clone());
        }
        a += 1u32;
    }
    let mut components: Vec<FpMat> = Vec::new();
    for a in &roots {
        let shifted: Vec<BigInt> = v
            .iter()
            .zip(&alg.one)
            .map(|(x, o)| modp(&(x - a * o), &alg.p))
            .collect();
        let k = alg.mul_matrix(&shifted).kernel();
        if k.cols > 0 {
            components.push(k);
        }
    }
    let total: usize = components.iter().map(|c| c.cols).sum();
    assert_eq!(total, alg.dim, "semisimple algebra must split completely over its fixed space");
    // recurse inside every component
    let all = components.iter().fold(
        FpMat::zero(&alg.p, alg.dim, 0),
        |acc, c| acc.hstack(c),
    );
    let one_coords = all.solve(&alg.one).expect("components span the algebra");
    let mut out = Vec::new();
    let mut offset = 0usize;
    for comp in &components {
        let sub_one: Vec<BigInt> = one_coords[offset..offset + comp.cols].to_vec();
        offset += comp.cols;
        let sub_dim = comp.cols;
        let mut sub_mats = Vec::with_capacity(sub_dim);
        for i in 0..sub_dim {
            let cols: Vec<Vec<BigInt>> = (0..sub_dim)
                .map(|j| {
                    let prod = alg.mul_vec(&comp.col_vec(i), &comp.col_vec(j));
                    comp.solve(&prod).expect("component is multiplicatively closed")
                })
                .collect();
            sub_mats.push(FpMat::from_cols(&alg.p, sub_dim, &cols));
        }
        let sub = FpAlgebra { p: alg.p.clone(), dim: sub_dim, mul_mats: sub_mats, one: sub_one };
        for leaf in split_semisimple(&sub) {
            out.push(comp.mul(&leaf));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::ivec;

    fn fp(p: u32) -> BigInt {
        BigInt::from(p)
    }

    fn alg_from_table(p: u32, dim: usize, table: &[&[&[i64]]], one: &[i64]) -> FpAlgebra {
        let p = fp(p);
        let mul_mats = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<BigInt>> = (0..dim).map(|j| ivec(table[i][j])).collect();
                FpMat::from_cols(&p, dim, &cols)
            })
            .collect();
        FpAlgebra { p, dim, mul_mats, one: ivec(one) }
    }

    #[test]
    fn kernel_and_solve() {
        let p = fp(5);
        let m = FpMat::from_cols(&p, 2, &[ivec(&[1, 2]), ivec(&[2, 4])]);
        let k = m.kernel();
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).col_vec(0).iter().all(|x| x.is_zero()));
        assert_eq!(m.solve(&ivec(&[1, 2])), Some(ivec(&[1, 0])));
        assert_eq!(m.solve(&ivec(&[1, 0])), None);
    }

    #[test]
    fn field_splits_as_single_factor() {
        // F_4 = F_2[x]/(x^2 + x + 1): e2^2 = e1 + e2
        let a = alg_from_table(
            2,
            2,
            &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 1]]],
            &[1, 0],
        );
        assert_eq!(a.nilradical_basis().cols, 0);
        let ms = maximal_ideals_fp(&a);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].f, 2);
        assert_eq!(ms[0].basis.cols, 0);
    }

    #[test]
    fn split_product_of_prime_fields() {
        // F_2 x F_2 on idempotent basis e1 = (1,1) (identity), e2 = (0,1)
        let a = alg_from_table(
            2,
            2,
            &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 1]]],
            &[1, 0],
        );
        let ms = maximal_ideals_fp(&a);
        assert_eq!(ms.len(), 2);
        for m in &ms {
            assert_eq!(m.f, 1);
            assert_eq!(m.basis.cols, 1);
        }
    }

    #[test]
    fn local_algebra_with_radical() {
        // F_2[x, y]/(x, y)^2: basis 1, x, y; all products of x, y vanish
        let z = &[0i64, 0, 0][..];
        let a = alg_from_table(
            2,
            3,
            &[
                &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
                &[&[0, 1, 0], z, z],
                &[&[0, 0, 1], z, z],
            ],
            &[1, 0, 0],
        );
        assert_eq!(a.nilradical_basis().cols, 2);
        let ms = maximal_ideals_fp(&a);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].f, 1);
        assert_eq!(ms[0].basis.cols, 2);
    }

    #[test]
    fn minimal_polynomials() {
        // in F_4, the non-rational basis element has degree 2
        let a = alg_from_table(
            2,
            2,
            &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 1]]],
            &[1, 0],
        );
        assert_eq!(a.min_poly(&ivec(&[0, 1])), ivec(&[1, 1, 1]));
        assert_eq!(a.min_poly(&ivec(&[1, 0])), ivec(&[1, 1]));
    }
}
