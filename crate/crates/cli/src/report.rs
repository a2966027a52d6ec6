//! Report schema: deterministic JSON documents. Field order is fixed by the
//! struct declarations; the timestamp is the only varying field and is
//! suppressed under --deterministic. Values that can exceed 64 bits
//! (indices, sizes, lattice entries) are decimal strings.

use crate::jobspec::{ExtraCheck, JInt};
use ringrank_core::finring::NilpotencyMode;
use ringrank_core::invariants::{rank_order, InvariantError, MuValue, RankReport};
use ringrank_core::order::EmbeddedOrder;
use ringrank_core::FinRing;
use serde::Serialize;
use std::time::{SystemTime, UNIX_EPOCH};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
#[serde(untagged)]
pub enum RankJson {
    Exact(u32),
    Interval { interval: [u32; 2] },
}

impl From<MuValue> for RankJson {
    fn from(v: MuValue) -> Self {
        match v {
            MuValue::Exact(n) => RankJson::Exact(n),
            MuValue::OneOrTwo => RankJson::Interval { interval: [1, 2] },
        }
    }
}

#[derive(Serialize)]
pub struct PrimeRow {
    pub p: JInt,
    pub f: u32,
    pub z: u32,
    pub e: u32,
}

#[derive(Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub prime_index: usize,
    pub mu: u32,
    /// Basis of the witness ideal, columns as decimal strings.
    pub basis: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct OrderReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub ring: String,
    pub degree: usize,
    pub normal: bool,
    pub rank: RankJson,
    pub conductor_index: String,
    pub singular_primes: Vec<PrimeRow>,
    pub witness: Option<WitnessJson>,
    pub checks: Vec<CheckEntry>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Serialize)]
pub struct MaxIdealRow {
    pub p: JInt,
    pub f: u32,
    pub index: String,
}

#[derive(Serialize)]
pub struct FinringReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub ring: String,
    pub size: String,
    pub divisors: Vec<String>,
    pub maximal_ideals: Vec<MaxIdealRow>,
    pub length: u64,
    pub nilpotency_elementwise: Option<u32>,
    pub nilpotency_idealwise: Option<u32>,
    pub rank: Option<u32>,
    pub checks: Vec<CheckEntry>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub error: ErrorBody,
}

fn timestamp(deterministic: bool) -> Option<String> {
    if deterministic {
        return None;
    }
    Some(
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_default(),
    )
}

pub fn order_report(
    emb: &EmbeddedOrder,
    id: &str,
    deterministic: bool,
) -> Result<OrderReport, InvariantError> {
    let rep: RankReport = rank_order(emb, id)?;
    let mut checks = Vec::new();
    for pi in &rep.singular {
        checks.push(CheckEntry {
            name: format!("z-le-e-at-{}", pi.spot.p),
            pass: pi.z <= pi.e,
            detail: format!("z = {}, e = {}", pi.z, pi.e),
        });
        checks.push(CheckEntry {
            name: format!("e-ge-2-at-{}", pi.spot.p),
            pass: pi.e >= 2,
            detail: format!("multiplicity {} at a singular prime", pi.e),
        });
    }
    checks.push(CheckEntry {
        name: "rank-le-degree".into(),
        pass: rep.rank.upper() as usize <= rep.degree,
        detail: format!("rank bound {} against degree {}", rep.rank.upper(), rep.degree),
    });
    if let (Some(w), MuValue::Exact(r)) = (&rep.witness, &rep.rank) {
        checks.push(CheckEntry {
            name: "witness-attains-rank".into(),
            pass: w.mu == *r,
            detail: format!("witness needs {} generators, rank {r}", w.mu),
        });
    }
    let witness = rep.witness.as_ref().map(|w| WitnessJson {
        prime_index: w.prime_index,
        mu: w.mu,
        basis: w
            .ideal
            .lattice()
            .basis()
            .col_vecs()
            .iter()
            .map(|c| c.iter().map(|x| x.to_string()).collect())
            .collect(),
    });
    Ok(OrderReport {
        schema_version: SCHEMA_VERSION,
        kind: "order",
        ring: rep.ring_id.clone(),
        degree: rep.degree,
        normal: rep.normal,
        rank: rep.rank.into(),
        conductor_index: rep.conductor_index.to_string(),
        singular_primes: rep
            .prime_rows()
            .into_iter()
            .map(|(p, f, z, e)| PrimeRow { p: JInt(p), f, z, e })
            .collect(),
        witness,
        checks,
        notes: rep.notes.clone(),
        timestamp: timestamp(deterministic),
    })
}

pub fn finring_report(
    ring: &FinRing,
    id: &str,
    cap: u64,
    extra: &[ExtraCheck],
    deterministic: bool,
) -> FinringReport {
    let mut notes = Vec::new();
    let mut checks: Vec<CheckEntry> = extra
        .iter()
        .map(|e| CheckEntry { name: e.name.clone(), pass: e.pass, detail: e.detail.clone() })
        .collect();
    let maximal_ideals = if ring.is_zero_ring() {
        notes.push("zero ring: no maximal ideals, rank 0".into());
        Vec::new()
    } else {
        ring.maximal_ideals()
            .expect("nonzero ring")
            .iter()
            .map(|m| MaxIdealRow {
                p: JInt(m.p.clone()),
                f: m.f,
                index: m.ideal.index_in_ring().to_string(),
            })
            .collect()
    };
    let length = ring.length();
    let nilpotency_elementwise = match ring.nilpotency_index(NilpotencyMode::Elementwise, cap) {
        Ok(n) => Some(n),
        Err(e) => {
            notes.push(format!("elementwise nilpotency skipped: {e}"));
            None
        }
    };
    let nilpotency_idealwise = match ring.nilpotency_index(NilpotencyMode::Idealwise, cap) {
        Ok(n) => Some(n),
        Err(e) => {
            notes.push(format!("idealwise nilpotency skipped: {e}"));
            None
        }
    };
    let rank = match ring.rank_exhaustive(cap) {
        Ok(r) => Some(r),
        Err(e) => {
            notes.push(format!("exhaustive rank skipped: {e}"));
            None
        }
    };
    if let (Some(r), l) = (rank, length) {
        if l >= 2 {
            checks.push(CheckEntry {
                name: "rank-le-length-minus-1".into(),
                pass: (r as u64) <= l - 1,
                detail: format!("rank {r}, length {l}"),
            });
        }
    }
    if let (Some(a), Some(b)) = (nilpotency_elementwise, nilpotency_idealwise) {
        checks.push(CheckEntry {
            name: "nilpotency-elementwise-le-idealwise".into(),
            pass: a <= b,
            detail: format!("elementwise {a}, idealwise {b}"),
        });
    }
    FinringReport {
        schema_version: SCHEMA_VERSION,
        kind: "finring",
        ring: id.to_string(),
        size: ring.size().to_string(),
        divisors: ring.divisors().iter().map(|d| d.to_string()).collect(),
        maximal_ideals,
        length,
        nilpotency_elementwise,
        nilpotency_idealwise,
        rank,
        checks,
        notes,
        timestamp: timestamp(deterministic),
    }
}
