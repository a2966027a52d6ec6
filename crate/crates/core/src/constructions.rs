//! Builders for the concrete families: maximal-rank suborders A + xS,
//! Matson orders, pullback orders at inert primes, sharp Artinian quotients,
//! truncated polynomial rings over Z/p^n, and truncated numerical-semigroup
//! rings.
//!
//! Power-series families are represented only through finite truncations;
//! every assertion made downstream is restricted to degrees the truncation
//! represents faithfully.

use crate::arith::is_prime;
use crate::finring::{quotient_ring, FinIdeal, FinRing, FinRingError, PresentationMap};
use crate::invariants::{primes_above, InvariantError};
use crate::lattice::Lattice;
use crate::mat::IntMat;
use crate::order::{suborder_from_lattice, EmbeddedOrder, Order, OrderError, PrimeSpot};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("x must be a nonzero nonunit integer")]
    UnitOrZeroX,
    #[error("degree parameter {0} is out of range")]
    BadDegree(u32),
    #[error("{0} has more than one prime above it in the ambient order")]
    SplitPrime(BigInt),
    #[error("the prime above {0} has residue degree 1, the pullback would be trivial")]
    DegreeOne(BigInt),
    #[error("{0} appears twice in the prime list")]
    DuplicatePrime(BigInt),
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("truncation degree {d} is too short, need at least {needed}")]
    TruncationTooShort { d: u32, needed: u32 },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Lat(#[from] crate::mat::LatError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    FinRing(#[from] FinRingError),
}

/// The suborder Z + xS of an order S, embedded: basis {1, x a_2, ..., x a_N}.
pub fn build_axs(s: &Order, x: &BigInt) -> Result<EmbeddedOrder, BuildError> {
    if x.is_zero() || x.abs().is_one() {
        return Err(BuildError::UnitOrZeroX);
    }
    let n = s.degree();
    let mut cols = vec![s.one()];
    cols.extend(IntMat::identity(n).scaled(x).col_vecs());
    let l = Lattice::from_generators(&IntMat::from_cols(n, &cols)).expect("contains x Z^N");
    Ok(suborder_from_lattice(s, &l)?)
}

/// The degree-n order Z + 2 Z[2^(1/n)] inside Z[2^(1/n)], of maximal rank n.
pub fn build_matson(n: u32) -> Result<EmbeddedOrder, BuildError> {
    if n < 2 {
        return Err(BuildError::BadDegree(n));
    }
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-2);
    coeffs[n as usize] = BigInt::one();
    let s = Order::from_poly(&coeffs)?;
    build_axs(&s, &BigInt::from(2))
}

/// Pullback order: the preimage in S of the product of prime subfields
/// under S -> prod S/P_p, over a list of distinct primes that are inert in
/// S with residue degree >= 2.
pub fn build_pullback(s: &Order, ps: &[BigInt]) -> Result<EmbeddedOrder, BuildError> {
    let n = s.degree();
    let mut l = Lattice::standard(n);
    for (i, p) in ps.iter().enumerate() {
        if ps[..i].contains(p) {
            return Err(BuildError::DuplicatePrime(p.clone()));
        }
        let spots = match primes_above(s, p) {
            Err(InvariantError::NotPrime(q)) => return Err(BuildError::NotPrime(q)),
            other => other?,
        };
        if spots.len() != 1 {
            return Err(BuildError::SplitPrime(p.clone()));
        }
        let spot = &spots[0];
        if spot.f < 2 {
            return Err(BuildError::DegreeOne(p.clone()));
        }
        // {x : x mod P lies in the prime subfield} = Z * 1 + P
        let lp = spot.ideal.lattice().sum_with_vectors(&[s.one()])?;
        l = l.intersect(&lp)?;
    }
    Ok(suborder_from_lattice(s, &l)?)
}

/// Artinian quotient attaining rank n with length n + 1: the Matson order of
/// degree n modulo the square of its unique singular prime. 2^(n+1)
/// elements.
#[derive(Clone, Debug)]
pub struct MatsonArtinian {
    pub ring: FinRing,
    pub map: PresentationMap,
    pub order: EmbeddedOrder,
    pub prime: PrimeSpot,
}

pub fn build_matson_artinian(n: u32) -> Result<MatsonArtinian, BuildError> {
    let emb = build_matson(n)?;
    let spots = primes_above(emb.order(), &BigInt::from(2))?;
    assert_eq!(spots.len(), 1, "the Matson order has a unique prime over 2");
    let prime = spots.into_iter().next().unwrap();
    let p2 = prime.ideal.pow(2)?;
    let (ring, map) = quotient_ring(emb.order(), &p2);
    Ok(MatsonArtinian { ring, map, order: emb, prime })
}

/// Z/p^n[t]/(t^d): additive group (Z/p^n)^d with truncated convolution.
pub fn build_trunc_poly(p: &BigInt, n: u32, d: u32) -> Result<FinRing, BuildError> {
    if !is_prime(p) {
        return Err(BuildError::NotPrime(p.clone()));
    }
    if n < 1 || d < 1 {
        return Err(BuildError::BadDegree(n.min(d)));
    }
    let k = d as usize;
    let q = p.pow(n);
    let mut mats = Vec::with_capacity(k);
    for i in 0..k {
        let mut m = IntMat::zero(k, k);
        for j in 0..k {
            if i + j < k {
                m.set(i + j, j, BigInt::one());
            }
        }
        mats.push(m);
    }
    let mut one = vec![BigInt::zero(); k];
    one[0] = BigInt::one();
    Ok(FinRing::new(vec![q; k], mats, one)?)
}

/// In Z/p^n[t]/(t^d) with d >= n + 1, the (n-1)-st power of the maximal
/// ideal (p, t) together with its generator count, which equals n.
pub fn trunc_poly_witness(p: &BigInt, n: u32, d: u32) -> Result<(FinIdeal, u32), BuildError> {
    if d < n + 1 {
        return Err(BuildError::TruncationTooShort { d, needed: n + 1 });
    }
    let r = build_trunc_poly(p, n, d)?;
    let mut p_elt = vec![BigInt::zero(); d as usize];
    p_elt[0] = p.clone();
    let t_elt = r.basis_elt(1);
    let m = r.ideal_from_gens(&[p_elt, t_elt]);
    let w = m.pow(n - 1);
    let mu = r.mu_fin(&w);
    assert_eq!(mu, n, "the witness power of (p, t) needs exactly n generators");
    Ok((w, mu))
}

/// Truncation of the numerical-semigroup ring F_p + t^n F_p[t]: the subring
/// of F_p[t]/(t^d) with basis {1, t^n, ..., t^(d-1)}. Returns the ring and
/// its maximal ideal (t^n, ..., t^(2n-1)). Requires d >= 2n + 1 so both the
/// maximal ideal and its square are represented faithfully.
pub fn build_semigroup_trunc(
    p: &BigInt,
    n: u32,
    d: u32,
) -> Result<(FinRing, FinIdeal), BuildError> {
    if !is_prime(p) {
        return Err(BuildError::NotPrime(p.clone()));
    }
    if n < 2 {
        return Err(BuildError::BadDegree(n));
    }
    if d < 2 * n + 1 {
        return Err(BuildError::TruncationTooShort { d, needed: 2 * n + 1 });
    }
    let n = n as usize;
    let d = d as usize;
    let k = d - n + 1; // basis exponents: 0, n, n+1, ..., d-1
    let expo = |i: usize| if i == 0 { 0 } else { n - 1 + i };
    let slot_of = |e: usize| if e == 0 { Some(0) } else if e < d { Some(e - n + 1) } else { None };
    let mut mats = Vec::with_capacity(k);
    for i in 0..k {
        let mut m = IntMat::zero(k, k);
        for j in 0..k {
            let e = expo(i) + expo(j);
            debug_assert!(e == 0 || e >= n);
            if let Some(s) = slot_of(e) {
                m.set(s, j, BigInt::one());
            }
        }
        mats.push(m);
    }
    let mut one = vec![BigInt::zero(); k];
    one[0] = BigInt::one();
    let ring = FinRing::new(vec![p.clone(); k], mats, one)?;
    let gens: Vec<Vec<BigInt>> = (1..=n).map(|i| ring.basis_elt(i)).collect();
    let m = ring.ideal_from_gens(&gens);
    Ok((ring, m))
}

/// F_p[x_1, ..., x_v]/(x_1, ..., x_v)^2: the local ring with square-zero
/// maximal ideal of dimension v.
pub fn build_square_zero(p: &BigInt, vars: u32) -> Result<FinRing, BuildError> {
    if !is_prime(p) {
        return Err(BuildError::NotPrime(p.clone()));
    }
    if vars < 1 {
        return Err(BuildError::BadDegree(vars));
    }
    let k = vars as usize + 1;
    let mut mats = Vec::with_capacity(k);
    for i in 0..k {
        let mut m = IntMat::zero(k, k);
        if i == 0 {
            m = IntMat::identity(k);
        } else {
            m.set(i, 0, BigInt::one());
        }
        mats.push(m);
    }
    let mut one = vec![BigInt::zero(); k];
    one[0] = BigInt::one();
    Ok(FinRing::new(vec![p.clone(); k], mats, one)?)
}
