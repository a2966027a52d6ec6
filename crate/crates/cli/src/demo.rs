//! The demo catalog: every headline computation, re-run on demand with
//! expected values pinned in code. Each check prints one PASS/FAIL line;
//! the command exits nonzero iff an executed check fails.

use num_bigint::BigInt;
use ringrank_core::constructions::{
    build_axs, build_matson, build_matson_artinian, build_pullback, build_semigroup_trunc,
    build_square_zero, build_trunc_poly, trunc_poly_witness,
};
use ringrank_core::finring::NilpotencyMode;
use ringrank_core::invariants::{e_p, primes_above, rank_order, singular_primes, z_p,
    DEFAULT_MULTIPLICITY_CAP};
use ringrank_core::mat::ivec;
use ringrank_core::order::Order;
use ringrank_core::FinRing;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub struct Check {
    pub name: &'static str,
    pub statement: &'static str,
    pub run: fn(u64) -> Result<String, String>,
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, expected: T, got: T) -> Result<(), String> {
    if expected == got {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected:?}, got {got:?}"))
    }
}

fn matson_rank(n: u32) -> Result<String, String> {
    let emb = build_matson(n).map_err(|e| e.to_string())?;
    let rep = rank_order(&emb, "matson").map_err(|e| e.to_string())?;
    expect("rank", Some(n), rep.rank.exact())?;
    expect("singular primes", 1, rep.singular.len())?;
    expect("z", n, rep.singular[0].z)?;
    expect("e", n, rep.singular[0].e)?;
    Ok(format!("rank {n}, unique singular prime over 2, z = e = {n}"))
}

fn check_matson_2(_: u64) -> Result<String, String> {
    matson_rank(2)
}
fn check_matson_3(_: u64) -> Result<String, String> {
    matson_rank(3)
}
fn check_matson_4(_: u64) -> Result<String, String> {
    matson_rank(4)
}
fn check_matson_5(_: u64) -> Result<String, String> {
    matson_rank(5)
}

fn check_axs_cube(_: u64) -> Result<String, String> {
    let s = Order::from_poly(&ivec(&[-2, 0, 0, 1])).map_err(|e| e.to_string())?;
    let emb = build_axs(&s, &big(6)).map_err(|e| e.to_string())?;
    expect("ambient index", big(36), emb.index_in_ambient())?;
    for p in [2i64, 3] {
        let spots = primes_above(emb.order(), &big(p)).map_err(|e| e.to_string())?;
        expect(&format!("primes above {p}"), 1, spots.len())?;
        expect(&format!("z above {p}"), 3, z_p(&spots[0]).map_err(|e| e.to_string())?)?;
    }
    let rep = rank_order(&emb, "axs").map_err(|e| e.to_string())?;
    expect("rank", Some(3), rep.rank.exact())?;
    Ok("index 36, one prime above each of 2 and 3, z = 3 at both, rank 3".into())
}

fn check_pullback_pair(_: u64) -> Result<String, String> {
    let zi = Order::from_poly(&ivec(&[1, 0, 1])).map_err(|e| e.to_string())?;
    let emb = build_pullback(&zi, &[big(3), big(7)]).map_err(|e| e.to_string())?;
    let rep = rank_order(&emb, "pullback").map_err(|e| e.to_string())?;
    expect("singular primes", 2, rep.singular.len())?;
    for pi in &rep.singular {
        expect(&format!("e over {}", pi.spot.p), 2, pi.e)?;
    }
    expect("rank", Some(2), rep.rank.exact())?;
    Ok("two singular primes with multiplicity 2, rank 2".into())
}

fn check_pullback_matches_axs(_: u64) -> Result<String, String> {
    let zi = Order::from_poly(&ivec(&[1, 0, 1])).map_err(|e| e.to_string())?;
    let pb = build_pullback(&zi, &[big(3)]).map_err(|e| e.to_string())?;
    let ax = build_axs(&zi, &big(3)).map_err(|e| e.to_string())?;
    if pb.embedding_lattice() != ax.embedding_lattice() {
        return Err("pullback at one inert prime differs from Z + 3 Z[i]".into());
    }
    Ok("pullback of Z[i] at {3} equals Z + 3 Z[i] as a lattice".into())
}

fn artinian(n: u32, cap: u64) -> Result<String, String> {
    let a = build_matson_artinian(n).map_err(|e| e.to_string())?;
    expect("size", big(1i64 << (n + 1)), a.ring.size())?;
    expect("length", (n + 1) as u64, a.ring.length())?;
    let rank = a.ring.rank_exhaustive(cap).map_err(|e| e.to_string())?;
    expect("rank", n, rank)?;
    Ok(format!("{} elements, rank {n}, length {}", 1 << (n + 1), n + 1))
}

fn check_artinian_2(cap: u64) -> Result<String, String> {
    artinian(2, cap)
}
fn check_artinian_3(cap: u64) -> Result<String, String> {
    artinian(3, cap)
}

fn check_trunc_witnesses(_: u64) -> Result<String, String> {
    for p in [2i64, 3] {
        for n in 1u32..=5 {
            for d in [n + 1, n + 2, n + 3] {
                let (_, mu) = trunc_poly_witness(&big(p), n, d).map_err(|e| e.to_string())?;
                expect(&format!("mu at p={p}, n={n}, d={d}"), n, mu)?;
            }
        }
    }
    Ok("witness ideals need exactly n generators for p in {2, 3}, n = 1..5, three truncations each".into())
}

fn check_trunc_rank(cap: u64) -> Result<String, String> {
    let r = build_trunc_poly(&big(2), 2, 3).map_err(|e| e.to_string())?;
    let rank = r.rank_exhaustive(cap).map_err(|e| e.to_string())?;
    expect("rank of Z/4[t]/(t^3)", 2, rank)?;
    Ok("the 64-element truncation of Z/4[t] has exhaustive rank 2".into())
}

fn semigroup(n: u32) -> Result<String, String> {
    let d = 3 * n;
    let (ring, m) = build_semigroup_trunc(&big(2), n, d).map_err(|e| e.to_string())?;
    let mut i = 1;
    while (i + 1) * n <= d - n {
        expect(&format!("mu(m^{i})"), n, ring.mu_fin(&m.pow(i)))?;
        i += 1;
    }
    Ok(format!("generator count stays {n} across the faithful window of the degree-{d} truncation"))
}

fn check_semigroup_2(_: u64) -> Result<String, String> {
    semigroup(2)
}
fn check_semigroup_3(_: u64) -> Result<String, String> {
    semigroup(3)
}

fn demo_corpus() -> Vec<(String, FinRing)> {
    let mut out: Vec<(String, FinRing)> = Vec::new();
    for n in [4u64, 8, 9, 12, 27] {
        out.push((format!("Z/{n}"), FinRing::zn(&BigInt::from(n))));
    }
    out.push(("F2[x,y]/(x,y)^2".into(), build_square_zero(&big(2), 2).unwrap()));
    out.push(("F2[x,y,z]/(x,y,z)^2".into(), build_square_zero(&big(2), 3).unwrap()));
    out.push(("matson-artinian-2".into(), build_matson_artinian(2).unwrap().ring));
    out.push(("Z4[t]/(t^3)".into(), build_trunc_poly(&big(2), 2, 3).unwrap()));
    out.push(("semigroup(2,2,6)".into(), build_semigroup_trunc(&big(2), 2, 6).unwrap().0));
    out.push((
        "F2[x,y]/(x,y)^2 x Z/8".into(),
        FinRing::product(&build_square_zero(&big(2), 2).unwrap(), &FinRing::zn(&big(8))),
    ));
    out
}

fn check_oracle_corpus(cap: u64) -> Result<String, String> {
    let mut checked = 0;
    for (name, r) in demo_corpus() {
        for ideal in r.enumerate_ideals(cap).map_err(|e| e.to_string())? {
            let a = r.mu_fin(&ideal);
            let b = r.mu_exhaustive(&ideal, cap).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!(
                    "{name}: structural count {a} != exhaustive count {b} on an ideal of index {}",
                    ideal.index_in_ring()
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("structural and exhaustive generator counts agree on {checked} ideals"))
}

fn check_length_bounds(cap: u64) -> Result<String, String> {
    for (name, r) in demo_corpus() {
        let rank = r.rank_exhaustive(cap).map_err(|e| e.to_string())? as u64;
        let len = r.length();
        if rank > len || (len >= 2 && rank > len - 1) {
            return Err(format!("{name}: rank {rank} against length {len}"));
        }
    }
    Ok("rank <= length - 1 on every non-field of the corpus".into())
}

fn check_product_law(cap: u64) -> Result<String, String> {
    let corpus = demo_corpus();
    let budget = big(512);
    let mut pairs = 0;
    for i in 0..corpus.len() {
        for j in i..corpus.len() {
            if corpus[i].1.size() * corpus[j].1.size() > budget {
                continue;
            }
            let prod = FinRing::product(&corpus[i].1, &corpus[j].1);
            let r = prod.rank_exhaustive(cap).map_err(|e| e.to_string())?;
            let expected = corpus[i]
                .1
                .rank_exhaustive(cap)
                .map_err(|e| e.to_string())?
                .max(corpus[j].1.rank_exhaustive(cap).map_err(|e| e.to_string())?);
            if r != expected {
                return Err(format!(
                    "{} x {}: rank {r}, expected {expected}",
                    corpus[i].0, corpus[j].0
                ));
            }
            pairs += 1;
        }
    }
    Ok(format!("rank of a product is the max of the ranks, on {pairs} pairs"))
}

fn check_quotient_monotonicity(cap: u64) -> Result<String, String> {
    let mut count = 0;
    for (name, r) in demo_corpus() {
        let rank = r.rank_exhaustive(cap).map_err(|e| e.to_string())?;
        for ideal in r.enumerate_ideals(cap).map_err(|e| e.to_string())? {
            let (q, _) = r.quotient(&ideal);
            let qrank = q.rank_exhaustive(cap).map_err(|e| e.to_string())?;
            if qrank > rank {
                return Err(format!("{name}: a quotient has rank {qrank} > {rank}"));
            }
            count += 1;
        }
    }
    Ok(format!("surjections never raise the rank, on {count} quotients"))
}

fn check_nilpotency_chain(cap: u64) -> Result<String, String> {
    for (name, r) in demo_corpus() {
        let a = r
            .nilpotency_index(NilpotencyMode::Elementwise, cap)
            .map_err(|e| e.to_string())?;
        let b = r
            .nilpotency_index(NilpotencyMode::Idealwise, cap)
            .map_err(|e| e.to_string())?;
        let l = r.length() as u32;
        if !(a <= b && b <= l) {
            return Err(format!("{name}: elementwise {a}, idealwise {b}, length {l}"));
        }
    }
    Ok("elementwise <= idealwise nilpotency <= length across the corpus".into())
}

fn check_z_le_e(_: u64) -> Result<String, String> {
    let mut count = 0;
    for n in 2u32..=5 {
        let emb = build_matson(n).map_err(|e| e.to_string())?;
        for spot in singular_primes(&emb).map_err(|e| e.to_string())? {
            let z = z_p(&spot).map_err(|e| e.to_string())?;
            let e = e_p(&spot, DEFAULT_MULTIPLICITY_CAP).map_err(|e| e.to_string())?.value;
            if z > e {
                return Err(format!("z = {z} > e = {e} over {}", spot.p));
            }
            count += 1;
        }
    }
    let zi = Order::from_poly(&ivec(&[1, 0, 1])).map_err(|e| e.to_string())?;
    for p in [3i64, 5, 7] {
        for spot in primes_above(&zi, &big(p)).map_err(|e| e.to_string())? {
            let z = z_p(&spot).map_err(|e| e.to_string())?;
            let e = e_p(&spot, DEFAULT_MULTIPLICITY_CAP).map_err(|e| e.to_string())?.value;
            if z > e {
                return Err(format!("z = {z} > e = {e} over {p} in Z[i]"));
            }
            count += 1;
        }
    }
    Ok(format!("z <= e at {count} computed primes"))
}

pub fn catalog() -> Vec<Check> {
    vec![
        Check { name: "matson-rank-2", statement: "degree-2 member: rank 2 with z = e = 2", run: check_matson_2 },
        Check { name: "matson-rank-3", statement: "degree-3 member: rank 3 with z = e = 3", run: check_matson_3 },
        Check { name: "matson-rank-4", statement: "degree-4 member: rank 4 with z = e = 4", run: check_matson_4 },
        Check { name: "matson-rank-5", statement: "degree-5 member: rank 5 with z = e = 5", run: check_matson_5 },
        Check { name: "axs-cube-x6", statement: "Z + 6 Z[2^(1/3)]: index 36, singular at 2 and 3, rank 3", run: check_axs_cube },
        Check { name: "pullback-3-7", statement: "pullback of Z[i] at {3, 7}: two singular primes, rank 2", run: check_pullback_pair },
        Check { name: "pullback-equals-axs", statement: "pullback at one inert prime is A + pS", run: check_pullback_matches_axs },
        Check { name: "artinian-sharp-2", statement: "8-element quotient: rank 2, length 3", run: check_artinian_2 },
        Check { name: "artinian-sharp-3", statement: "16-element quotient: rank 3, length 4", run: check_artinian_3 },
        Check { name: "trunc-witness-grid", statement: "witness powers of (p, t) need exactly n generators", run: check_trunc_witnesses },
        Check { name: "trunc-rank-z4t", statement: "Z/4[t]/(t^3) has exhaustive rank 2", run: check_trunc_rank },
        Check { name: "semigroup-2", statement: "truncated semigroup ring, n = 2: constant counts", run: check_semigroup_2 },
        Check { name: "semigroup-3", statement: "truncated semigroup ring, n = 3: constant counts", run: check_semigroup_3 },
        Check { name: "oracle-corpus", statement: "structural equals exhaustive generator count on the corpus", run: check_oracle_corpus },
        Check { name: "rank-length-bound", statement: "rank <= length - 1 for non-fields", run: check_length_bounds },
        Check { name: "product-rank-law", statement: "rank of a product is the max of the ranks", run: check_product_law },
        Check { name: "quotient-monotonicity", statement: "quotients never raise the rank", run: check_quotient_monotonicity },
        Check { name: "nilpotency-chain", statement: "elementwise <= idealwise nilpotency <= length", run: check_nilpotency_chain },
        Check { name: "z-le-e", statement: "embedding dimension is at most the multiplicity", run: check_z_le_e },
    ]
}

/// Run the catalog, optionally filtered by substring. Returns the process
/// exit code: 0 iff every executed check passed.
pub fn run_demo(filter: Option<&str>, cap: u64) -> i32 {
    let checks = catalog();
    let selected: Vec<&Check> = checks
        .iter()
        .filter(|c| filter.map_or(true, |f| c.name.contains(f)))
        .collect();
    if selected.is_empty() {
        println!("warning: no checks match filter {:?}; nothing to run", filter.unwrap_or(""));
        return 0;
    }
    let mut failures = 0;
    for c in &selected {
        match (c.run)(cap) {
            Ok(got) => println!("PASS  {:<24} {} [{}]", c.name, c.statement, got),
            Err(why) => {
                failures += 1;
                println!("FAIL  {:<24} {} [{}]", c.name, c.statement, why);
            }
        }
    }
    println!(
        "{} of {} checks passed",
        selected.len() - failures,
        selected.len()
    );
    if failures == 0 {
        0
    } else {
        1
    }
}
