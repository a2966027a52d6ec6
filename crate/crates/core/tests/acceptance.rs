//! Acceptance suite: one test per criterion, each printing a pass line with
//! its measured runtime (visible under `--nocapture`). Every tolerance is
//! exact equality; stated runtime budgets are asserted.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringrank_core::constructions::{
    build_axs, build_matson, build_matson_artinian, build_pullback, build_semigroup_trunc,
    build_square_zero, build_trunc_poly, trunc_poly_witness,
};
use ringrank_core::finring::NilpotencyMode;
use ringrank_core::invariants::{e_p, primes_above, rank_order, singular_primes, z_p, DEFAULT_MULTIPLICITY_CAP};
use ringrank_core::lattice::Lattice;
use ringrank_core::mat::{hnf, ivec, snf_diag, IntMat};
use ringrank_core::order::{EmbeddedOrder, Order};
use ringrank_core::{FinRing, DEFAULT_SIZE_CAP as CAP};
use std::time::Instant;

fn finish(criterion: u32, budget_secs: f64, start: Instant, detail: &str) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance {criterion}: PASS ({elapsed:.3} s) - {detail}");
    assert!(
        elapsed <= budget_secs,
        "criterion {criterion} exceeded its {budget_secs} s budget: {elapsed:.3} s"
    );
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn criterion_1_matson_ranks() {
    let start = Instant::now();
    for n in 2u32..=5 {
        let emb = build_matson(n).expect("n >= 2");
        let rep = rank_order(&emb, &format!("matson-{n}")).unwrap();
        assert_eq!(rep.rank.exact(), Some(n), "rank of the degree-{n} member");
        assert_eq!(rep.singular.len(), 1, "unique singular prime");
        let pi = &rep.singular[0];
        assert_eq!(pi.spot.p, big(2));
        assert_eq!(pi.z, n);
        assert_eq!(pi.e, n);
        let w = rep.witness.as_ref().expect("exact rank >= 2 carries a witness");
        assert_eq!(w.mu, n);
    }
    finish(1, 1.0, start, "rank n with z = e = n at the unique prime over 2, n = 2..5");
}

#[test]
fn criterion_2_axs_claims_at_degree_three() {
    let start = Instant::now();
    let s = Order::from_poly(&ivec(&[-2, 0, 0, 1])).unwrap();
    let emb = build_axs(&s, &big(6)).unwrap();
    assert_eq!(emb.index_in_ambient(), big(36), "[S : R] = |x|^(N-1)");
    for p in [2i64, 3] {
        let spots = primes_above(emb.order(), &big(p)).unwrap();
        assert_eq!(spots.len(), 1, "exactly one prime above {p}");
        assert_eq!(z_p(&spots[0]).unwrap(), 3, "z = 3 above {p}");
    }
    let rep = rank_order(&emb, "axs-theta3-x6").unwrap();
    assert_eq!(rep.rank.exact(), Some(3));
    assert_eq!(rep.singular.len(), 2);
    finish(2, 1.0, start, "Z + 6 Z[2^(1/3)]: index 36, one prime above each of 2 and 3, z = 3, rank 3");
}

#[test]
fn criterion_3_pullback_orders() {
    let start = Instant::now();
    let zi = Order::from_poly(&ivec(&[1, 0, 1])).unwrap();
    let pb = build_pullback(&zi, &[big(3), big(7)]).unwrap();
    let rep = rank_order(&pb, "pullback-3-7").unwrap();
    assert_eq!(rep.singular.len(), 2, "exactly two singular primes");
    for pi in &rep.singular {
        assert_eq!(pi.e, 2, "multiplicity 2 at the prime over {}", pi.spot.p);
    }
    assert_eq!(rep.rank.exact(), Some(2));

    let single = build_pullback(&zi, &[big(3)]).unwrap();
    let axs = build_axs(&zi, &big(3)).unwrap();
    assert_eq!(single.embedding_lattice(), axs.embedding_lattice(), "pullback at one prime is A + pS");
    finish(3, 1.0, start, "pullback of Z[i] at {3, 7}: two singular primes with e = 2, rank 2");
}

#[test]
fn criterion_4_sharp_artinian_quotients() {
    let start = Instant::now();
    let a2 = build_matson_artinian(2).unwrap();
    assert_eq!(a2.ring.size(), big(8));
    assert_eq!(a2.ring.rank_exhaustive(CAP).unwrap(), 2, "full enumeration on 8 elements");
    assert_eq!(a2.ring.length(), 3);

    let a3 = build_matson_artinian(3).unwrap();
    assert_eq!(a3.ring.size(), big(16));
    assert_eq!(a3.ring.rank_nakayama(CAP).unwrap(), 3, "local generator counts give rank 3");
    assert_eq!(a3.ring.length(), 4);
    assert_eq!(a3.ring.rank_exhaustive(CAP).unwrap(), 3, "oracle confirms on 16 elements");
    finish(4, 5.0, start, "Artinian quotients: rank 2 / length 3 on 8 elements, rank 3 / length 4 on 16");
}

#[test]
fn criterion_5_truncated_polynomial_witnesses() {
    let start = Instant::now();
    for p in [2i64, 3] {
        for n in 1u32..=5 {
            let (_, mu) = trunc_poly_witness(&big(p), n, n + 1).unwrap();
            assert_eq!(mu, n, "mu = n at p = {p}, n = {n}, minimal truncation");
            // truncation stability
            for d in [n + 1, n + 2, n + 3] {
                let (_, mu) = trunc_poly_witness(&big(p), n, d).unwrap();
                assert_eq!(mu, n, "mu = n at p = {p}, n = {n}, d = {d}");
            }
        }
    }
    let z4t = build_trunc_poly(&big(2), 2, 3).unwrap();
    assert_eq!(z4t.size(), big(64));
    assert_eq!(z4t.rank_exhaustive(CAP).unwrap(), 2, "exhaustive rank of the 64-element truncation");
    finish(5, 30.0, start, "witness powers of (p, t) need exactly n generators; Z/4[t]/(t^3) has rank 2");
}

#[test]
fn criterion_6_semigroup_truncations() {
    let start = Instant::now();
    for n in [2u32, 3] {
        let d = 3 * n;
        let (ring, m) = build_semigroup_trunc(&big(2), n, d).unwrap();
        let mut i = 1u32;
        while (i + 1) * n <= d - n {
            assert_eq!(ring.mu_fin(&m.pow(i)), n, "mu(m^{i}) = {n} inside the faithful window");
            i += 1;
        }
        assert!(i > 1, "the window must contain at least i = 1");
    }
    finish(6, 5.0, start, "truncated semigroup rings: constant generator count n across the window, n = 2, 3");
}

/// The corpus for the oracle-equivalence and inequality suites: more than 20
/// finite rings, all of size at most 512.
fn corpus() -> Vec<(String, FinRing)> {
    let mut out: Vec<(String, FinRing)> = Vec::new();
    for n in [2u64, 3, 4, 5, 6, 8, 9, 12, 16, 25, 27, 30, 32, 49, 256] {
        out.push((format!("Z/{n}"), FinRing::zn(&BigInt::from(n))));
    }
    // GF(4) = F_2[x]/(x^2 + x + 1)
    let table = vec![
        vec![ivec(&[1, 0]), ivec(&[0, 1])],
        vec![ivec(&[0, 1]), ivec(&[1, 1])],
    ];
    out.push((
        "GF(4)".into(),
        FinRing::from_table(vec![big(2), big(2)], &table, ivec(&[1, 0])).unwrap(),
    ));
    out.push(("F2[x,y]/(x,y)^2".into(), build_square_zero(&big(2), 2).unwrap()));
    out.push(("F3[x,y]/(x,y)^2".into(), build_square_zero(&big(3), 2).unwrap()));
    out.push(("F2[x,y,z]/(x,y,z)^2".into(), build_square_zero(&big(2), 3).unwrap()));
    out.push(("matson-artinian-2".into(), build_matson_artinian(2).unwrap().ring));
    out.push(("matson-artinian-3".into(), build_matson_artinian(3).unwrap().ring));
    out.push(("Z4[t]/(t^3)".into(), build_trunc_poly(&big(2), 2, 3).unwrap()));
    out.push(("Z4[t]/(t^2)".into(), build_trunc_poly(&big(2), 2, 2).unwrap()));
    out.push(("F2[t]/(t^4)".into(), build_trunc_poly(&big(2), 1, 4).unwrap()));
    out.push(("F3[t]/(t^3)".into(), build_trunc_poly(&big(3), 1, 3).unwrap()));
    out.push(("Z9[t]/(t^2)".into(), build_trunc_poly(&big(3), 2, 2).unwrap()));
    out.push(("semigroup(2,2,6)".into(), build_semigroup_trunc(&big(2), 2, 6).unwrap().0));
    out.push((
        "F2[x,y]/(x,y)^2 x Z/8".into(),
        FinRing::product(&build_square_zero(&big(2), 2).unwrap(), &FinRing::zn(&big(8))),
    ));
    out.push((
        "Z/8 x Z/9".into(),
        FinRing::product(&FinRing::zn(&big(8)), &FinRing::zn(&big(9))),
    ));
    out
}

#[test]
fn criterion_7_oracle_equivalence() {
    let start = Instant::now();
    let corpus = corpus();
    assert!(corpus.len() >= 20, "corpus must contain at least 20 rings");
    let mut checked = 0usize;
    for (name, r) in &corpus {
        assert!(r.size() <= big(512), "{name} is larger than 512");
        for ideal in r.enumerate_ideals(CAP).unwrap() {
            let structural = r.mu_fin(&ideal);
            let exhaustive = r.mu_exhaustive(&ideal, CAP).unwrap();
            assert_eq!(structural, exhaustive, "generator count mismatch in {name} at {ideal:?}");
            checked += 1;
        }
    }
    finish(
        7,
        120.0,
        start,
        &format!("structural and exhaustive generator counts agree on {checked} ideals across {} rings", corpus.len()),
    );
}

#[test]
fn criterion_8_inequality_suite() {
    let start = Instant::now();
    let corpus = corpus();
    let mut ranks: Vec<u32> = Vec::new();

    // rank <= length - 1 for non-fields; rank <= length always
    for (name, r) in &corpus {
        let rank = r.rank_exhaustive(CAP).unwrap();
        let len = r.length() as u32;
        assert!(rank <= len, "rank > length in {name}");
        if len >= 2 {
            assert!(rank <= len - 1, "rank > length - 1 for the non-field {name}");
        }
        ranks.push(rank);
    }

    // product law on every corpus pair that stays enumerable (the exhaustive
    // rank has a size precondition, so pairs beyond the budget are excluded
    // by it); 1024 keeps the whole sweep fast
    let mut pairs = 0usize;
    for i in 0..corpus.len() {
        for j in i..corpus.len() {
            if corpus[i].1.size() * corpus[j].1.size() > big(1024) {
                continue;
            }
            let prod = FinRing::product(&corpus[i].1, &corpus[j].1);
            let rank = prod.rank_exhaustive(CAP).unwrap();
            assert_eq!(
                rank,
                ranks[i].max(ranks[j]),
                "product rank law failed for {} x {}",
                corpus[i].0,
                corpus[j].0
            );
            pairs += 1;
        }
    }
    assert!(pairs >= 50, "the pair sweep must cover a substantial corpus");

    // quotient monotonicity: surjections cannot raise the rank
    let mut quotients = 0usize;
    for ((name, r), &rank) in corpus.iter().zip(&ranks) {
        for ideal in r.enumerate_ideals(CAP).unwrap() {
            let (q, _) = r.quotient(&ideal);
            let qrank = q.rank_exhaustive(CAP).unwrap();
            assert!(qrank <= rank, "quotient of {name} has larger rank");
            quotients += 1;
        }
    }

    // elementwise <= idealwise nilpotency <= length
    for (name, r) in &corpus {
        let elem = r.nilpotency_index(NilpotencyMode::Elementwise, CAP).unwrap();
        let ideal = r.nilpotency_index(NilpotencyMode::Idealwise, CAP).unwrap();
        let len = r.length() as u32;
        assert!(elem <= ideal, "elementwise > idealwise nilpotency in {name}");
        assert!(ideal <= len, "idealwise nilpotency > length in {name}");
    }

    // z <= e at every computed order prime
    let mut order_primes = 0usize;
    for (emb, prime_list) in order_prime_panel() {
        for spot in prime_list {
            let z = z_p(&spot).unwrap();
            let e = e_p(&spot, DEFAULT_MULTIPLICITY_CAP).unwrap().value;
            assert!(z <= e, "z > e at the prime over {} of degree-{} order", spot.p, emb.order().degree());
            order_primes += 1;
        }
    }
    assert!(order_primes >= 12);

    finish(
        8,
        600.0,
        start,
        &format!("length bounds, {pairs} product pairs, {quotients} quotients, nilpotency chains, z <= e at {order_primes} primes"),
    );
}

/// Orders with a panel of computed primes (singular and regular) for the
/// z <= e sweep.
fn order_prime_panel() -> Vec<(EmbeddedOrder, Vec<ringrank_core::PrimeSpot>)> {
    let mut out = Vec::new();
    for n in 2u32..=5 {
        let emb = build_matson(n).unwrap();
        let spots = singular_primes(&emb).unwrap();
        out.push((emb, spots));
    }
    let theta = Order::from_poly(&ivec(&[-2, 0, 0, 1])).unwrap();
    let axs6 = build_axs(&theta, &big(6)).unwrap();
    let spots = singular_primes(&axs6).unwrap();
    out.push((axs6, spots));

    let zi = Order::from_poly(&ivec(&[1, 0, 1])).unwrap();
    let pb = build_pullback(&zi, &[big(3), big(7)]).unwrap();
    let spots = singular_primes(&pb).unwrap();
    out.push((pb, spots));

    // regular primes of maximal orders
    let triv = EmbeddedOrder::trivial(&zi);
    let mut spots = Vec::new();
    for p in [3i64, 5, 7, 13] {
        spots.extend(primes_above(&zi, &big(p)).unwrap());
    }
    out.push((triv, spots));

    // the index-2 nonmaximal order in Q(sqrt(-3))
    let zsqrtm3 = Order::from_poly(&ivec(&[3, 0, 1])).unwrap();
    let spots = primes_above(&zsqrtm3, &big(2)).unwrap();
    out.push((EmbeddedOrder::trivial(&zsqrtm3), spots));
    out
}

#[test]
fn criterion_9_canonical_form_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut count = 0usize;
    while count < 1000 {
        let n = rng.gen_range(1..=4usize);
        let m = random_mat(&mut rng, n, 30);
        // idempotence
        let h = hnf(&m);
        assert_eq!(hnf(&h), h, "idempotence failed on {m}");
        // unimodular invariance
        let u = random_unimodular(&mut rng, n);
        assert_eq!(hnf(&m.mul(&u)), h, "unimodular invariance failed on {m}");
        let det = det_cofactor(&m);
        if det != BigInt::from(0) {
            // Smith product = |det|
            let d = snf_diag(&m).unwrap();
            let prod: BigInt = d.iter().product();
            assert_eq!(prod, abs(&det), "Smith product mismatch on {m}");
            // index multiplicativity on a random chain
            let t1 = random_full_rank(&mut rng, n, 4);
            let t2 = random_full_rank(&mut rng, n, 4);
            let l1 = Lattice::from_generators(&m).unwrap();
            let l2 = Lattice::from_generators(&m.mul(&t1)).unwrap();
            let l3 = Lattice::from_generators(&m.mul(&t1).mul(&t2)).unwrap();
            let i12 = l1.index_over(&l2).unwrap();
            let i23 = l2.index_over(&l3).unwrap();
            let i13 = l1.index_over(&l3).unwrap();
            assert_eq!(i13, i12 * i23, "index multiplicativity failed on {m}");
        }
        count += 1;
    }
    finish(9, 10.0, start, "1000 random matrices: idempotence, unimodular invariance, chain indices, Smith products");
}

fn abs(x: &BigInt) -> BigInt {
    if x < &BigInt::from(0) {
        -x
    } else {
        x.clone()
    }
}

fn random_mat(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMat {
    let entries: Vec<BigInt> = (0..n * n).map(|_| big(rng.gen_range(-bound..=bound))).collect();
    IntMat::new(n, n, entries)
}

fn random_full_rank(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMat {
    loop {
        let m = random_mat(rng, n, bound);
        if det_cofactor(&m) != BigInt::from(0) {
            return m;
        }
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMat {
    let mut u = IntMat::identity(n);
    for _ in 0..6 {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let mut e = IntMat::identity(n);
        if rng.gen_bool(0.5) {
            e.set(a, b, big(rng.gen_range(-3..=3)));
        } else {
            e.set(a, a, big(0));
            e.set(b, b, big(0));
            e.set(a, b, big(1));
            e.set(b, a, big(-1));
        }
        u = u.mul(&e);
    }
    u
}

fn det_cofactor(m: &IntMat) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut acc = BigInt::from(0);
    for j in 0..n {
        let mut sub = IntMat::zero(n - 1, n - 1);
        for i in 1..n {
            let mut jj = 0;
            for j2 in 0..n {
                if j2 == j {
                    continue;
                }
                sub.set(i - 1, jj, m.at(i, j2).clone());
                jj += 1;
            }
        }
        let term = m.at(0, j) * det_cofactor(&sub);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
