//! The rank calculus for orders: local generator counts, tangent dimension,
//! multiplicity, singular primes through the conductor, and rank
//! certification.
//!
//! `rank_order` decides normality relative to the supplied ambient order
//! (conductor = unit ideal) and otherwise certifies the rank as the largest
//! multiplicity across the singular primes, with a witness ideal whose local
//! generator count attains it.

use crate::arith::{exact_log, is_prime};
use crate::finring::{quotient_ring, FinRingError};
use crate::order::{conductor, EmbeddedOrder, Order, OrderError, OrderIdeal, PrimeSpot};
use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("ideal and prime belong to different orders")]
    OwnerMismatch,
    #[error("index is not an integral power of the residue field size")]
    NonIntegralLog,
    #[error("Hilbert values did not stabilize within {0} steps")]
    NoStabilization(u32),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Lat(#[from] crate::mat::LatError),
    #[error(transparent)]
    FinRing(#[from] FinRingError),
}

/// Default iteration bound for the multiplicity computation.
pub const DEFAULT_MULTIPLICITY_CAP: u32 = 24;
/// Consecutive equal Hilbert values required to declare stabilization.
const STABLE_WINDOW: usize = 3;

/// Maximal ideals of `r` containing the rational prime `p`, each with its
/// residue degree, obtained through the finite ring R/pR.
pub fn primes_above(r: &Order, p: &BigInt) -> Result<Vec<PrimeSpot>, InvariantError> {
    if !is_prime(p) {
        return Err(InvariantError::NotPrime(p.clone()));
    }
    let mut p_one = r.one();
    for c in p_one.iter_mut() {
        *c *= p;
    }
    let p_ideal = r.ideal_from_gens(&[p_one])?;
    let (q, map) = quotient_ring(r, &p_ideal);
    let mut spots = Vec::new();
    for m in q.maximal_ideals()? {
        let lat = map.pull_back_lattice(m.ideal.lattice());
        let ideal = OrderIdeal::new(r, lat)?;
        spots.push(PrimeSpot::new(ideal, p.clone())?);
    }
    spots.sort_by_key(|s| s.ideal.lattice().basis().col_vecs().concat());
    Ok(spots)
}

/// Local generator count by Nakayama: dim over the residue field of I/PI,
/// computed as log_{p^f} [I : P I].
pub fn mu_p(i: &OrderIdeal, spot: &PrimeSpot) -> Result<u32, InvariantError> {
    if i.owner() != spot.ideal.owner() {
        return Err(InvariantError::OwnerMismatch);
    }
    let pi = spot.ideal.mul(i)?;
    let idx = i.lattice().index_over(pi.lattice())?;
    exact_log(&idx, &spot.residue_size()).ok_or(InvariantError::NonIntegralLog)
}

/// Embedding dimension at the prime: dim over the residue field of P/P^2.
pub fn z_p(spot: &PrimeSpot) -> Result<u32, InvariantError> {
    mu_p(&spot.ideal, spot)
}

/// A stabilized multiplicity value with the first index of the stable
/// window (so the witness ideal P^stable_from has local count = value).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    pub value: u32,
    pub stable_from: u32,
}

/// Multiplicity at a maximal ideal: the eventual constant value of
/// log_{p^f} [P^i : P^{i+1}], declared once three consecutive values agree,
/// capped.
pub fn e_p(spot: &PrimeSpot, cap: u32) -> Result<Multiplicity, InvariantError> {
    let q = spot.residue_size();
    let mut values: Vec<u32> = Vec::new();
    let mut power = spot.ideal.clone();
    for i in 1..=cap {
        let next = power.mul(&spot.ideal)?;
        let idx = power.lattice().index_over(next.lattice())?;
        let d = exact_log(&idx, &q).ok_or(InvariantError::NonIntegralLog)?;
        values.push(d);
        if values.len() >= STABLE_WINDOW {
            let w = &values[values.len() - STABLE_WINDOW..];
            if w.iter().all(|&x| x == w[0]) {
                return Ok(Multiplicity { value: w[0], stable_from: i + 1 - STABLE_WINDOW as u32 });
            }
        }
        power = next;
    }
    Err(InvariantError::NoStabilization(cap))
}

/// The primes where the embedded order fails to be locally maximal relative
/// to its ambient order: the maximal ideals containing the conductor, read
/// off the finite ring R/c.
pub fn singular_primes(emb: &EmbeddedOrder) -> Result<Vec<PrimeSpot>, InvariantError> {
    let c = conductor(emb);
    if c.in_suborder.is_unit() {
        return Ok(Vec::new());
    }
    let r = emb.order();
    let (q, map) = quotient_ring(r, &c.in_suborder);
    let mut spots = Vec::new();
    for m in q.maximal_ideals()? {
        let lat = map.pull_back_lattice(m.ideal.lattice());
        let ideal = OrderIdeal::new(r, lat)?;
        spots.push(PrimeSpot::new(ideal, m.p.clone())?);
    }
    spots.sort_by_key(|s| (s.p.clone(), s.ideal.lattice().basis().col_vecs().concat()));
    Ok(spots)
}

/// Either an exact generator count or the undecided normal-case dichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuValue {
    Exact(u32),
    /// Locally principal everywhere: one or two generators, not decided.
    OneOrTwo,
}

impl MuValue {
    pub fn exact(&self) -> Option<u32> {
        match self {
            MuValue::Exact(v) => Some(*v),
            MuValue::OneOrTwo => None,
        }
    }

    /// Largest value consistent with this result.
    pub fn upper(&self) -> u32 {
        match self {
            MuValue::Exact(v) => *v,
            MuValue::OneOrTwo => 2,
        }
    }
}

/// Global generator count of an ideal. The local count at a singular prime
/// bounds from below; the localization at every regular prime is a discrete
/// valuation ring, so those contribute 1. A local maximum >= 2 is exact;
/// otherwise the ideal is locally principal and the count is 1 or 2, decided
/// as 1 only when a stored basis vector alone generates.
pub fn mu_ideal(emb: &EmbeddedOrder, i: &OrderIdeal) -> Result<MuValue, InvariantError> {
    if i.owner() != emb.order() {
        return Err(InvariantError::OwnerMismatch);
    }
    let mut local_max = 1u32;
    for spot in singular_primes(emb)? {
        local_max = local_max.max(mu_p(i, &spot)?);
    }
    if local_max >= 2 {
        return Ok(MuValue::Exact(local_max));
    }
    for b in i.lattice().basis_vectors() {
        if &i.owner().ideal_from_gens(&[b])? == i {
            return Ok(MuValue::Exact(1));
        }
    }
    Ok(MuValue::OneOrTwo)
}

/// Per-prime invariant bundle inside a rank report.
#[derive(Clone, Debug)]
pub struct PrimeInvariants {
    pub spot: PrimeSpot,
    pub z: u32,
    pub e: u32,
    pub stable_from: u32,
}

/// Witness ideal with a certified local generator count equal to the rank.
#[derive(Clone, Debug)]
pub struct RankWitness {
    pub ideal: OrderIdeal,
    /// Index into the singular prime list where the count is attained.
    pub prime_index: usize,
    pub mu: u32,
}

/// Computed invariant bundle for an embedded order.
#[derive(Clone, Debug)]
pub struct RankReport {
    pub ring_id: String,
    pub degree: usize,
    /// Conductor equals the unit ideal, relative to the supplied ambient
    /// order.
    pub normal: bool,
    /// [R : conductor].
    pub conductor_index: BigInt,
    pub singular: Vec<PrimeInvariants>,
    pub rank: MuValue,
    pub witness: Option<RankWitness>,
    pub notes: Vec<String>,
}

/// Compute the full rank report. For a normal order (relative to the
/// supplied ambient) the rank is the undecided 1-or-2 dichotomy; otherwise
/// it is the maximum multiplicity over the singular primes, witnessed by a
/// stable power of the attaining prime.
pub fn rank_order(emb: &EmbeddedOrder, ring_id: &str) -> Result<RankReport, InvariantError> {
    rank_order_capped(emb, ring_id, DEFAULT_MULTIPLICITY_CAP)
}

pub fn rank_order_capped(
    emb: &EmbeddedOrder,
    ring_id: &str,
    cap: u32,
) -> Result<RankReport, InvariantError> {
    let degree = emb.order().degree();
    let c = conductor(emb);
    let conductor_index = c.in_suborder.norm();
    let spots = singular_primes(emb)?;
    let mut notes = vec![
        "normality is asserted relative to the supplied ambient order".to_string(),
    ];
    if spots.is_empty() {
        notes.push("no singular primes: every ideal is locally principal".to_string());
        return Ok(RankReport {
            ring_id: ring_id.to_string(),
            degree,
            normal: true,
            conductor_index,
            singular: Vec::new(),
            rank: MuValue::OneOrTwo,
            witness: None,
            notes,
        });
    }
    let mut singular = Vec::new();
    for spot in spots {
        let z = z_p(&spot)?;
        let m = e_p(&spot, cap)?;
        debug_assert!(z <= m.value);
        singular.push(PrimeInvariants { spot, z, e: m.value, stable_from: m.stable_from });
    }
    let best = singular
        .iter()
        .enumerate()
        .max_by_key(|(_, pi)| pi.e)
        .map(|(idx, _)| idx)
        .expect("nonempty singular list");
    let rank = singular[best].e;
    assert!(
        rank as usize <= degree,
        "rank is bounded by the degree (ideals are free of rank <= N over Z)"
    );
    let witness_ideal = singular[best].spot.ideal.pow(singular[best].stable_from)?;
    let witness_mu = mu_p(&witness_ideal, &singular[best].spot)?;
    debug_assert_eq!(witness_mu, rank);
    notes.push(format!(
        "multiplicity at each singular prime read from Hilbert indices, stable window {STABLE_WINDOW}"
    ));
    notes.push(format!(
        "witness is power {} of the attaining singular prime",
        singular[best].stable_from
    ));
    Ok(RankReport {
        ring_id: ring_id.to_string(),
        degree,
        normal: false,
        conductor_index,
        singular,
        rank: MuValue::Exact(rank),
        witness: Some(RankWitness { ideal: witness_ideal, prime_index: best, mu: witness_mu }),
        notes,
    })
}

impl RankReport {
    /// Per-prime (p, f, z, e) rows, for display and serialization.
    pub fn prime_rows(&self) -> Vec<(BigInt, u32, u32, u32)> {
        self.singular
            .iter()
            .map(|pi| (pi.spot.p.clone(), pi.spot.f, pi.z, pi.e))
            .collect()
    }
}

/// Verify that a quotient R/P is a field by scanning for zero divisors;
/// test-support for the PrimeSpot invariant, usable while the quotient stays
/// enumerable.
pub fn residue_ring_is_field(r: &Order, spot: &PrimeSpot) -> bool {
    let (q, _) = quotient_ring(r, &spot.ideal);
    let elems = q.elements();
    for x in &elems {
        if q.is_zero_elt(x) {
            continue;
        }
        if elems.iter().any(|y| !q.is_zero_elt(y) && q.is_zero_elt(&q.mul(x, y))) {
            return false;
        }
    }
    !BigInt::one().eq(&q.size())
}
