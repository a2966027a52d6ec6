//! Input schema: jobs are JSON documents describing an order (minimal
//! polynomial or explicit table, optional suborder lattice), a finite ring
//! (divisors, structure constants, identity), or a named construction.
//!
//! Integers are accepted as JSON numbers or decimal strings, so values
//! beyond 64 bits stay exact.

use num_bigint::BigInt;
use ringrank_core::constructions::{
    build_axs, build_matson, build_matson_artinian, build_pullback, build_semigroup_trunc,
    build_square_zero, build_trunc_poly, trunc_poly_witness,
};
use ringrank_core::lattice::Lattice;
use ringrank_core::mat::IntMat;
use ringrank_core::order::{suborder_from_lattice, EmbeddedOrder, Order};
use ringrank_core::FinRing;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Exact integer that serializes as a JSON number when it fits in i64 and
/// as a decimal string otherwise; deserializes from either form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JInt(pub BigInt);

impl Serialize for JInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JInt, E> {
                Ok(JInt(BigInt::from(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JInt, E> {
                Ok(JInt(BigInt::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<JInt, E> {
                BigInt::from_str(v)
                    .map(JInt)
                    .map_err(|_| E::custom(format!("not a decimal integer: {v}")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize, Debug)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum JobSpec {
    Order(OrderSpec),
    Finring(FinringSpec),
    Construction(ConstructionSpec),
}

#[derive(Deserialize, Debug)]
pub struct OrderSpec {
    /// c_0 + c_1 x + ... + x^N, including the leading 1.
    pub minpoly: Option<Vec<JInt>>,
    /// Alternative to `minpoly`: explicit structure constants,
    /// `table[i][j]` = coordinates of e_i * e_j.
    pub table: Option<Vec<Vec<Vec<JInt>>>>,
    /// Basis vectors of the suborder in ambient coordinates. Absent means
    /// the ambient order itself is analyzed.
    pub suborder_basis: Option<Vec<Vec<JInt>>>,
    /// Only "ambient" is supported: the ambient order is asserted to be the
    /// normalization.
    pub normalization: Option<String>,
}

#[derive(Deserialize, Debug)]
pub struct FinringSpec {
    pub divisors: Vec<JInt>,
    pub table: Vec<Vec<Vec<JInt>>>,
    pub one: Vec<JInt>,
}

#[derive(Deserialize, Debug)]
pub struct ConstructionSpec {
    pub name: String,
    #[serde(default)]
    pub args: Vec<JInt>,
    /// Required by the constructions that take an ambient order (axs,
    /// pullback).
    pub minpoly: Option<Vec<JInt>>,
}

/// Serializable forms for `construct --emit`.
#[derive(Serialize)]
pub struct OrderSpecOut {
    pub kind: &'static str,
    pub minpoly: Vec<JInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suborder_basis: Option<Vec<Vec<JInt>>>,
    pub normalization: &'static str,
}

#[derive(Serialize)]
pub struct FinringSpecOut {
    pub kind: &'static str,
    pub divisors: Vec<JInt>,
    pub table: Vec<Vec<Vec<JInt>>>,
    pub one: Vec<JInt>,
}

/// Input-level failure: malformed schema or a construction rejected while
/// validating its inputs. Maps to exit code 2.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn ints(v: &[JInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

fn table_to_nested(table: &[Vec<Vec<JInt>>]) -> Vec<Vec<Vec<BigInt>>> {
    table.iter().map(|row| row.iter().map(|c| ints(c)).collect()).collect()
}

/// An extra verification carried from a construction into its report.
pub struct ExtraCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A job resolved into concrete objects ready for analysis.
pub enum Built {
    Order { emb: EmbeddedOrder, id: String },
    Finring { ring: FinRing, id: String, extra: Vec<ExtraCheck> },
}

pub fn build_job(spec: &JobSpec) -> Result<Built, SchemaError> {
    match spec {
        JobSpec::Order(o) => build_order_job(o),
        JobSpec::Finring(f) => {
            let ring = FinRing::from_table(
                ints(&f.divisors),
                &table_to_nested(&f.table),
                ints(&f.one),
            )
            .map_err(|e| SchemaError(e.to_string()))?;
            Ok(Built::Finring { ring, id: "finring".into(), extra: Vec::new() })
        }
        JobSpec::Construction(c) => build_construction(c),
    }
}

fn build_order_job(o: &OrderSpec) -> Result<Built, SchemaError> {
    if let Some(n) = &o.normalization {
        if n != "ambient" {
            return Err(SchemaError(format!(
                "unsupported normalization '{n}': only 'ambient' is available"
            )));
        }
    }
    let ambient = match (&o.minpoly, &o.table) {
        (Some(mp), None) => {
            Order::from_poly(&ints(mp)).map_err(|e| SchemaError(e.to_string()))?
        }
        (None, Some(t)) => {
            let n = t.len();
            let mats: Vec<IntMat> = t
                .iter()
                .map(|row| {
                    let cols: Vec<Vec<BigInt>> = row.iter().map(|c| ints(c)).collect();
                    IntMat::from_cols(n, &cols)
                })
                .collect();
            Order::from_mul_mats(mats).map_err(|e| SchemaError(e.to_string()))?
        }
        _ => {
            return Err(SchemaError(
                "an order job needs exactly one of 'minpoly' or 'table'".into(),
            ))
        }
    };
    let emb = match &o.suborder_basis {
        None => EmbeddedOrder::trivial(&ambient),
        Some(vecs) => {
            let cols: Vec<Vec<BigInt>> = vecs.iter().map(|v| ints(v)).collect();
            let m = IntMat::from_cols(ambient.degree(), &cols);
            let lat = Lattice::from_generators(&m).map_err(|e| SchemaError(e.to_string()))?;
            suborder_from_lattice(&ambient, &lat).map_err(|e| SchemaError(e.to_string()))?
        }
    };
    Ok(Built::Order { emb, id: "order".into() })
}

fn arg_u32(c: &ConstructionSpec, i: usize) -> Result<u32, SchemaError> {
    let v = c
        .args
        .get(i)
        .ok_or_else(|| SchemaError(format!("construction '{}' needs argument {i}", c.name)))?;
    u32::try_from(&v.0).map_err(|_| SchemaError(format!("argument {i} out of range")))
}

fn arg_big(c: &ConstructionSpec, i: usize) -> Result<BigInt, SchemaError> {
    c.args
        .get(i)
        .map(|v| v.0.clone())
        .ok_or_else(|| SchemaError(format!("construction '{}' needs argument {i}", c.name)))
}

fn ambient_from(c: &ConstructionSpec) -> Result<Order, SchemaError> {
    let mp = c
        .minpoly
        .as_ref()
        .ok_or_else(|| SchemaError(format!("construction '{}' needs a minpoly", c.name)))?;
    Order::from_poly(&ints(mp)).map_err(|e| SchemaError(e.to_string()))
}

fn build_construction(c: &ConstructionSpec) -> Result<Built, SchemaError> {
    let fail = |e: &dyn fmt::Display| SchemaError(e.to_string());
    match c.name.as_str() {
        "matson" => {
            let n = arg_u32(c, 0)?;
            let emb = build_matson(n).map_err(|e| fail(&e))?;
            Ok(Built::Order { emb, id: format!("matson-{n}") })
        }
        "axs" => {
            let s = ambient_from(c)?;
            let x = arg_big(c, 0)?;
            let emb = build_axs(&s, &x).map_err(|e| fail(&e))?;
            Ok(Built::Order { emb, id: format!("axs-x{x}") })
        }
        "pullback" => {
            let s = ambient_from(c)?;
            let ps: Vec<BigInt> = c.args.iter().map(|v| v.0.clone()).collect();
            if ps.is_empty() {
                return Err(SchemaError("pullback needs at least one prime".into()));
            }
            let emb = build_pullback(&s, &ps).map_err(|e| fail(&e))?;
            Ok(Built::Order { emb, id: "pullback".into() })
        }
        "matson-artinian" => {
            let n = arg_u32(c, 0)?;
            let a = build_matson_artinian(n).map_err(|e| fail(&e))?;
            Ok(Built::Finring { ring: a.ring, id: format!("matson-artinian-{n}"), extra: Vec::new() })
        }
        "trunc-poly" => {
            let (p, n, d) = (arg_big(c, 0)?, arg_u32(c, 1)?, arg_u32(c, 2)?);
            let ring = build_trunc_poly(&p, n, d).map_err(|e| fail(&e))?;
            Ok(Built::Finring { ring, id: format!("trunc-poly-{p}-{n}-{d}"), extra: Vec::new() })
        }
        "trunc-witness" => {
            let (p, n, d) = (arg_big(c, 0)?, arg_u32(c, 1)?, arg_u32(c, 2)?);
            let (w, mu) = trunc_poly_witness(&p, n, d).map_err(|e| fail(&e))?;
            let ring = w.ring().clone();
            let extra = vec![ExtraCheck {
                name: "witness-generators".into(),
                pass: mu == n,
                detail: format!("the (n-1)-st power of (p, t) needs {mu} generators, expected {n}"),
            }];
            Ok(Built::Finring { ring, id: format!("trunc-witness-{p}-{n}-{d}"), extra })
        }
        "semigroup-trunc" => {
            let (p, n, d) = (arg_big(c, 0)?, arg_u32(c, 1)?, arg_u32(c, 2)?);
            let (ring, m) = build_semigroup_trunc(&p, n, d).map_err(|e| fail(&e))?;
            let mu = ring.mu_fin(&m);
            let extra = vec![ExtraCheck {
                name: "maximal-ideal-generators".into(),
                pass: mu == n,
                detail: format!("the maximal ideal needs {mu} generators, expected {n}"),
            }];
            Ok(Built::Finring { ring, id: format!("semigroup-{p}-{n}-{d}"), extra })
        }
        "square-zero" => {
            let (p, v) = (arg_big(c, 0)?, arg_u32(c, 1)?);
            let ring = build_square_zero(&p, v).map_err(|e| fail(&e))?;
            Ok(Built::Finring { ring, id: format!("square-zero-{p}-{v}"), extra: Vec::new() })
        }
        other => Err(SchemaError(format!("unknown construction '{other}'"))),
    }
}

pub fn jint_vec(v: &[BigInt]) -> Vec<JInt> {
    v.iter().map(|x| JInt(x.clone())).collect()
}

pub fn jint_table(t: &[Vec<Vec<BigInt>>]) -> Vec<Vec<Vec<JInt>>> {
    t.iter().map(|row| row.iter().map(|c| jint_vec(c)).collect()).collect()
}
