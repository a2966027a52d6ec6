//! Full-rank sublattices of Z^N in canonical form.
//!
//! A `Lattice` stores its basis as the columns of a square matrix in
//! canonical column Hermite form, so two lattices are equal iff their stored
//! bases are entrywise equal. These are the carriers for ideals, suborders
//! and conductors.

use crate::mat::{hnf_full_rank, kernel, solve_upper_triangular, IntMat, LatError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: IntMat,
}

impl Lattice {
    /// Canonical lattice spanned by the columns of `m`. Errors when the span
    /// does not have rank equal to the ambient dimension.
    pub fn from_generators(m: &IntMat) -> Result<Self, LatError> {
        Ok(Lattice { basis: hnf_full_rank(m)? })
    }

    /// Z^n.
    pub fn standard(n: usize) -> Self {
        Lattice { basis: IntMat::identity(n) }
    }

    /// x * Z^n (x nonzero).
    pub fn scaled(n: usize, x: &BigInt) -> Self {
        assert!(!x.is_zero());
        Lattice { basis: IntMat::diag(&vec![x.abs(); n]) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.col_vecs()
    }

    pub fn is_standard(&self) -> bool {
        self.basis == IntMat::identity(self.dim())
    }

    /// |det(basis)| = index of the lattice in Z^n. Positive by the normal
    /// form; 1 for the zero-dimensional lattice.
    pub fn det(&self) -> BigInt {
        let mut d = BigInt::one();
        for i in 0..self.dim() {
            d *= self.basis.at(i, i);
        }
        d
    }

    fn check_dim(&self, other: usize) -> Result<(), LatError> {
        if self.dim() != other {
            return Err(LatError::DimensionMismatch(self.dim(), other));
        }
        Ok(())
    }

    /// Coordinates of `v` in this basis, when `v` lies in the lattice.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim());
        solve_upper_triangular(&self.basis, v)
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LatError> {
        self.check_dim(v.len())?;
        Ok(self.coords_of(v).is_some())
    }

    pub fn contains_lattice(&self, inner: &Lattice) -> Result<bool, LatError> {
        self.check_dim(inner.dim())?;
        Ok((0..inner.dim()).all(|j| self.coords_of(&inner.basis.col_vec(j)).is_some()))
    }

    /// [self : inner], requires inner to be contained in self.
    pub fn index_over(&self, inner: &Lattice) -> Result<BigInt, LatError> {
        if !self.contains_lattice(inner)? {
            return Err(LatError::NotContained);
        }
        let (q, r) = num_integer::Integer::div_rem(&inner.det(), &self.det());
        debug_assert!(r.is_zero());
        let _ = r;
        Ok(q)
    }

    /// Smallest lattice containing both.
    pub fn sum(&self, other: &Lattice) -> Result<Lattice, LatError> {
        self.check_dim(other.dim())?;
        Lattice::from_generators(&self.basis.hstack(&other.basis))
    }

    /// Lattice spanned by self's basis together with extra generators.
    pub fn sum_with_vectors(&self, extra: &[Vec<BigInt>]) -> Result<Lattice, LatError> {
        let m = self.basis.hstack(&IntMat::from_cols(self.dim(), extra));
        Lattice::from_generators(&m)
    }

    /// Largest lattice contained in both.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice, LatError> {
        self.check_dim(other.dim())?;
        // {t : B t in other} pushed back through B
        let t = other.preimage_general(&self.basis);
        Lattice::from_generators(&self.basis.mul(t.basis()))
    }

    /// {x : m x in self} for square nonsingular m.
    pub fn preimage(&self, m: &IntMat) -> Result<Lattice, LatError> {
        if !m.is_square() || m.rows() != self.dim() {
            return Err(LatError::DimensionMismatch(m.rows(), self.dim()));
        }
        if hnf_full_rank(m).is_err() {
            return Err(LatError::Singular);
        }
        Ok(self.preimage_general(m))
    }

    /// {x : m x in self} for any integer map m: Z^k -> Z^dim. Always full
    /// rank in Z^k (the preimage contains det(self) * Z^k).
    pub(crate) fn preimage_general(&self, m: &IntMat) -> Lattice {
        assert_eq!(m.rows(), self.dim());
        let stacked = m.hstack(&self.basis.neg());
        let ker = kernel(&stacked);
        let mut x_part = IntMat::zero(m.cols(), ker.cols());
        for i in 0..m.cols() {
            for j in 0..ker.cols() {
                x_part.set(i, j, ker.at(i, j).clone());
            }
        }
        Lattice::from_generators(&x_part).expect("preimage of a full-rank lattice is full rank")
    }

    /// Image lattice m * self for a square nonsingular m (re-canonicalized).
    pub(crate) fn transform(&self, m: &IntMat) -> Lattice {
        Lattice::from_generators(&m.mul(&self.basis)).expect("nonsingular transform keeps full rank")
    }

    /// Canonical residue of `v` modulo the lattice: the unique coset
    /// representative with each coordinate in `[0, diag_i)` after triangular
    /// reduction.
    pub fn reduce_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim());
        let n = self.dim();
        let mut r = v.to_vec();
        for j in (0..n).rev() {
            let q = num_integer::Integer::div_floor(&r[j], self.basis.at(j, j));
            if !q.is_zero() {
                for i in 0..=j {
                    let d = self.basis.at(i, j) * &q;
                    r[i] -= d;
                }
            }
        }
        r
    }

    /// All coset representatives of Z^n modulo the lattice, in mixed-radix
    /// order over the diagonal. The caller is responsible for keeping the
    /// index (= det) small enough to enumerate.
    pub fn coset_reps(&self) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        let radii: Vec<u64> = (0..n)
            .map(|i| u64::try_from(self.basis.at(i, i).clone()).expect("coset space too large"))
            .collect();
        let total: u64 = radii.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        let mut counter = vec![0u64; n];
        loop {
            out.push(counter.iter().map(|&c| BigInt::from(c)).collect());
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                counter[i] += 1;
                if counter[i] < radii[i] {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lattice{}", self.basis)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
