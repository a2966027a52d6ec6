//! `construct`: build a named family and materialize it as an analyzable
//! job document (order jobs carry the minimal polynomial and suborder
//! basis; finite-ring jobs carry divisors, table and identity).

use crate::jobspec::{jint_table, jint_vec, FinringSpecOut, OrderSpecOut, SchemaError};
use num_bigint::BigInt;
use num_traits::One;
use ringrank_core::constructions::{
    build_axs, build_matson, build_matson_artinian, build_pullback, build_semigroup_trunc,
    build_square_zero, build_trunc_poly,
};
use ringrank_core::order::{EmbeddedOrder, Order};
use ringrank_core::FinRing;
use serde_json::Value;
use std::str::FromStr;

fn parse_big(s: &str) -> Result<BigInt, SchemaError> {
    BigInt::from_str(s.trim()).map_err(|_| SchemaError(format!("not an integer: {s}")))
}

fn parse_u32(s: &str) -> Result<u32, SchemaError> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| SchemaError(format!("not a small nonnegative integer: {s}")))
}

fn parse_minpoly(s: Option<&str>) -> Result<Vec<BigInt>, SchemaError> {
    let s = s.ok_or_else(|| SchemaError("this construction needs --minpoly c0,c1,...,1".into()))?;
    s.split(',').map(parse_big).collect()
}

fn order_out(minpoly: Vec<BigInt>, emb: &EmbeddedOrder) -> OrderSpecOut {
    OrderSpecOut {
        kind: "order",
        minpoly: jint_vec(&minpoly),
        suborder_basis: Some(
            emb.embedding().col_vecs().iter().map(|c| jint_vec(c)).collect(),
        ),
        normalization: "ambient",
    }
}

fn finring_out(ring: &FinRing) -> FinringSpecOut {
    FinringSpecOut {
        kind: "finring",
        divisors: jint_vec(ring.divisors()),
        table: jint_table(&ring.table()),
        one: jint_vec(ring.one()),
    }
}

fn arg<'a>(args: &'a [String], i: usize, name: &str) -> Result<&'a str, SchemaError> {
    args.get(i)
        .map(|s| s.as_str())
        .ok_or_else(|| SchemaError(format!("construction '{name}' needs argument {i}")))
}

/// Resolve a construction name and its CLI arguments to an emitted job
/// document.
pub fn materialize(
    name: &str,
    args: &[String],
    minpoly: Option<&str>,
) -> Result<Value, SchemaError> {
    let fail = |e: &dyn std::fmt::Display| SchemaError(e.to_string());
    let value = match name {
        "matson" => {
            let n = parse_u32(arg(args, 0, name)?)?;
            let emb = build_matson(n).map_err(|e| fail(&e))?;
            let mut coeffs = vec![BigInt::from(0); n as usize + 1];
            coeffs[0] = BigInt::from(-2);
            coeffs[n as usize] = BigInt::one();
            serde_json::to_value(order_out(coeffs, &emb))
        }
        "axs" => {
            let coeffs = parse_minpoly(minpoly)?;
            let s = Order::from_poly(&coeffs).map_err(|e| fail(&e))?;
            let x = parse_big(arg(args, 0, name)?)?;
            let emb = build_axs(&s, &x).map_err(|e| fail(&e))?;
            serde_json::to_value(order_out(coeffs, &emb))
        }
        "pullback" => {
            let coeffs = parse_minpoly(minpoly)?;
            let s = Order::from_poly(&coeffs).map_err(|e| fail(&e))?;
            let ps: Vec<BigInt> = args.iter().map(|a| parse_big(a)).collect::<Result<_, _>>()?;
            if ps.is_empty() {
                return Err(SchemaError("pullback needs at least one prime".into()));
            }
            let emb = build_pullback(&s, &ps).map_err(|e| fail(&e))?;
            serde_json::to_value(order_out(coeffs, &emb))
        }
        "matson-artinian" => {
            let n = parse_u32(arg(args, 0, name)?)?;
            let a = build_matson_artinian(n).map_err(|e| fail(&e))?;
            serde_json::to_value(finring_out(&a.ring))
        }
        "trunc-poly" => {
            let p = parse_big(arg(args, 0, name)?)?;
            let n = parse_u32(arg(args, 1, name)?)?;
            let d = parse_u32(arg(args, 2, name)?)?;
            let ring = build_trunc_poly(&p, n, d).map_err(|e| fail(&e))?;
            serde_json::to_value(finring_out(&ring))
        }
        "semigroup-trunc" => {
            let p = parse_big(arg(args, 0, name)?)?;
            let n = parse_u32(arg(args, 1, name)?)?;
            let d = parse_u32(arg(args, 2, name)?)?;
            let (ring, _) = build_semigroup_trunc(&p, n, d).map_err(|e| fail(&e))?;
            serde_json::to_value(finring_out(&ring))
        }
        "square-zero" => {
            let p = parse_big(arg(args, 0, name)?)?;
            let v = parse_u32(arg(args, 1, name)?)?;
            let ring = build_square_zero(&p, v).map_err(|e| fail(&e))?;
            serde_json::to_value(finring_out(&ring))
        }
        "trunc-witness" => {
            // the witness check is analysis-time work: emit the construction
            // job itself so `analyze` reruns it with the check attached
            let p = parse_big(arg(args, 0, name)?)?;
            let n = parse_u32(arg(args, 1, name)?)?;
            let d = parse_u32(arg(args, 2, name)?)?;
            Ok(serde_json::json!({
                "kind": "construction",
                "name": "trunc-witness",
                "args": [p.to_string(), n, d],
            }))
        }
        other => {
            return Err(SchemaError(format!(
                "unknown construction '{other}'; available: matson, axs, pullback, \
                 matson-artinian, trunc-poly, trunc-witness, semigroup-trunc, square-zero"
            )))
        }
    };
    value.map_err(|e| SchemaError(format!("serialization failed: {e}")))
}
