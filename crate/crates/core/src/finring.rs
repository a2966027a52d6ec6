//! Finite commutative rings as explicit additive groups with structure
//! constants, their ideals as sublattices, and both routes to generator
//! counts: the Nakayama route through maximal ideals and the exhaustive
//! brute-force oracle.
//!
//! The additive group is `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`
//! (empty for the zero ring). An ideal is stored as the lattice of its
//! coordinate vectors, which always contains `diag(d_1, ..., d_k)`; ideal
//! equality is therefore bit-exact lattice equality.

use crate::arith::{exact_log, factor};
use crate::lattice::Lattice;
use crate::mat::{solve_columns, IntMat, LatError};
use crate::modp::{maximal_ideals_fp, FpAlgebra, FpMat};
use crate::order::{Order, OrderIdeal};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinRingError {
    #[error("the zero ring has no maximal ideals")]
    ZeroRing,
    #[error("ring of size {size} exceeds the cap {cap} for exhaustive operations")]
    SizeCapExceeded { size: BigInt, cap: u64 },
    #[error("invalid finite ring presentation: {0}")]
    InvalidStructure(String),
    #[error(transparent)]
    Lat(#[from] LatError),
}

#[derive(PartialEq, Eq)]
struct FinRingData {
    divisors: Vec<BigInt>,
    mul_mats: Vec<IntMat>,
    one: Vec<BigInt>,
}

/// Finite commutative ring. Cloning is cheap (shared presentation).
#[derive(Clone)]
pub struct FinRing {
    data: Arc<FinRingData>,
}

impl PartialEq for FinRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for FinRing {}

impl fmt::Debug for FinRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinRing(divisors {:?})", self.data.divisors)
    }
}

impl FinRing {
    /// Validating constructor. `mul_mats[i]` column j holds the coordinates
    /// of `g_i * g_j`, reduced componentwise.
    pub fn new(
        divisors: Vec<BigInt>,
        mul_mats: Vec<IntMat>,
        one: Vec<BigInt>,
    ) -> Result<Self, FinRingError> {
        let k = divisors.len();
        let err = |m: String| Err(FinRingError::InvalidStructure(m));
        if mul_mats.len() != k || one.len() != k {
            return err("table and identity must match the divisor count".into());
        }
        let two = BigInt::from(2u32);
        for (i, d) in divisors.iter().enumerate() {
            if d < &two {
                return err(format!("divisor {i} must be at least 2"));
            }
            if i + 1 < k && !(&divisors[i + 1] % d).is_zero() {
                return err(format!("divisor chain broken at position {i}"));
            }
        }
        for (i, m) in mul_mats.iter().enumerate() {
            if m.rows() != k || m.cols() != k {
                return err(format!("table block {i} must be {k} x {k}"));
            }
            for r in 0..k {
                for j in 0..k {
                    let c = m.at(r, j);
                    if c.is_negative() || c >= &divisors[r] {
                        return err(format!("entry ({i},{j},{r}) is not reduced"));
                    }
                    // d_i * (g_i g_j) must vanish for the product to be
                    // well defined on Z/d_i
                    if !(&divisors[i] * c).mod_floor(&divisors[r]).is_zero() {
                        return err(format!("product of generators {i},{j} is ill-defined"));
                    }
                }
            }
        }
        let ring = FinRing { data: Arc::new(FinRingData { divisors, mul_mats, one }) };
        if ring.reduce(&ring.data.one.clone()) != ring.data.one {
            return err("identity vector must be reduced".into());
        }
        for i in 0..k {
            for j in 0..i {
                if ring.data.mul_mats[i].col_vec(j) != ring.data.mul_mats[j].col_vec(i) {
                    return err(format!("commutativity fails at generators ({i}, {j})"));
                }
            }
        }
        for j in 0..k {
            if ring.mul(&ring.data.one, &ring.basis_elt(j)) != ring.basis_elt(j) {
                return err(format!("identity fails on generator {j}"));
            }
        }
        for i in 0..k {
            for j in 0..=i {
                let ij = ring.data.mul_mats[i].col_vec(j);
                for l in 0..k {
                    let left = ring.mul(&ij, &ring.basis_elt(l));
                    let jl = ring.data.mul_mats[j].col_vec(l);
                    let right = ring.mul(&ring.basis_elt(i), &jl);
                    if left != right {
                        return err(format!("associativity fails at generators ({i},{j},{l})"));
                    }
                }
            }
        }
        Ok(ring)
    }

    pub fn from_table(
        divisors: Vec<BigInt>,
        table: &[Vec<Vec<BigInt>>],
        one: Vec<BigInt>,
    ) -> Result<Self, FinRingError> {
        let k = divisors.len();
        if table.len() != k || table.iter().any(|row| row.len() != k) {
            return Err(FinRingError::InvalidStructure("table must be k x k x k".into()));
        }
        let mul_mats = (0..k).map(|i| IntMat::from_cols(k, &table[i])).collect();
        Self::new(divisors, mul_mats, one)
    }

    /// The zero ring (no generators, |R| = 1).
    pub fn zero_ring() -> Self {
        FinRing {
            data: Arc::new(FinRingData { divisors: vec![], mul_mats: vec![], one: vec![] }),
        }
    }

    /// Z/n; the zero ring when n = 1.
    pub fn zn(n: &BigInt) -> Self {
        assert!(n >= &BigInt::one());
        if n.is_one() {
            return Self::zero_ring();
        }
        FinRing::new(
            vec![n.clone()],
            vec![IntMat::identity(1)],
            vec![BigInt::one()],
        )
        .expect("Z/n is a valid presentation")
    }

    pub fn num_gens(&self) -> usize {
        self.data.divisors.len()
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.data.divisors
    }

    pub fn one(&self) -> &[BigInt] {
        &self.data.one
    }

    /// Structure constants as nested vectors: `table[i][j]` holds the
    /// coordinates of `g_i * g_j`.
    pub fn table(&self) -> Vec<Vec<Vec<BigInt>>> {
        let k = self.num_gens();
        (0..k)
            .map(|i| (0..k).map(|j| self.data.mul_mats[i].col_vec(j)).collect())
            .collect()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.num_gens() == 0
    }

    pub fn size(&self) -> BigInt {
        self.data.divisors.iter().product()
    }

    pub fn basis_elt(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.num_gens()];
        v[i] = BigInt::one();
        v
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .zip(&self.data.divisors)
            .map(|(x, d)| x.mod_floor(d))
            .collect()
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>())
    }

    pub fn neg(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&x.iter().map(|a| -a).collect::<Vec<_>>())
    }

    /// Bilinear product through the structure constants; inputs need not be
    /// reduced.
    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let k = self.num_gens();
        assert!(x.len() == k && y.len() == k);
        let mut acc = vec![BigInt::zero(); k];
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let gi_y = self.data.mul_mats[i].mul_vec(y);
            for r in 0..k {
                let t = &gi_y[r] * c;
                acc[r] += t;
            }
        }
        self.reduce(&acc)
    }

    pub fn pow(&self, x: &[BigInt], e: &BigInt) -> Vec<BigInt> {
        assert!(!e.is_negative());
        let mut result = self.data.one.clone();
        let mut base = self.reduce(x);
        let mut e = e.clone();
        let two = BigInt::from(2u32);
        while e.is_positive() {
            if e.is_odd() {
                result = self.mul(&result, &base);
            }
            e /= &two;
            if e.is_positive() {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn is_zero_elt(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// All canonical element vectors, in mixed-radix order. The caller keeps
    /// the size under control.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        Lattice::from_generators(&IntMat::diag(&self.data.divisors))
            .expect("divisors are positive")
            .coset_reps()
    }

    /// Columns `x * g_j` spanning the principal ideal of `x` additively.
    fn principal_cols(&self, x: &[BigInt]) -> Vec<Vec<BigInt>> {
        (0..self.num_gens()).map(|j| self.mul(x, &self.basis_elt(j))).collect()
    }

    fn relation_lattice(&self) -> Lattice {
        if self.num_gens() == 0 {
            return Lattice::standard(0);
        }
        Lattice::from_generators(&IntMat::diag(&self.data.divisors)).expect("positive divisors")
    }

    pub fn zero_ideal(&self) -> FinIdeal {
        FinIdeal { ring: self.clone(), lat: self.relation_lattice() }
    }

    pub fn unit_ideal(&self) -> FinIdeal {
        FinIdeal { ring: self.clone(), lat: Lattice::standard(self.num_gens()) }
    }

    /// Smallest ideal containing the generators.
    pub fn ideal_from_gens(&self, gens: &[Vec<BigInt>]) -> FinIdeal {
        let k = self.num_gens();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for g in gens {
            cols.extend(self.principal_cols(g));
        }
        cols.extend(IntMat::diag(&self.data.divisors).col_vecs());
        let lat = Lattice::from_generators(&IntMat::from_cols(k, &cols))
            .expect("contains the relation lattice");
        FinIdeal { ring: self.clone(), lat }
    }

    fn check_cap(&self, cap: u64) -> Result<u64, FinRingError> {
        let size = self.size();
        match u64::try_from(size.clone()) {
            Ok(s) if s <= cap => Ok(s),
            _ => Err(FinRingError::SizeCapExceeded { size, cap }),
        }
    }
}

/// Ideal of a finite ring, stored as the canonical lattice of its coordinate
/// vectors (always containing the relation lattice).
#[derive(Clone)]
pub struct FinIdeal {
    ring: FinRing,
    lat: Lattice,
}

impl PartialEq for FinIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.lat == other.lat
    }
}

impl Eq for FinIdeal {}

impl fmt::Debug for FinIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinIdeal(index {}, {})", self.index_in_ring(), self.lat)
    }
}

impl FinIdeal {
    /// Wrap a lattice as an ideal, verifying that it contains the relations
    /// and is closed under multiplication by every generator.
    pub fn from_lattice(ring: &FinRing, lat: Lattice) -> Result<Self, FinRingError> {
        if lat.dim() != ring.num_gens() {
            return Err(FinRingError::InvalidStructure(format!(
                "lattice dimension {} does not match {} generators",
                lat.dim(),
                ring.num_gens()
            )));
        }
        if !lat.contains_lattice(&ring.relation_lattice())? {
            return Err(FinRingError::InvalidStructure(
                "ideal lattice must contain the divisor relations".into(),
            ));
        }
        for b in lat.basis_vectors() {
            for j in 0..ring.num_gens() {
                let prod = ring.mul(&b, &ring.basis_elt(j));
                if !lat.contains(&prod)? {
                    return Err(FinRingError::InvalidStructure(
                        "lattice is not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(FinIdeal { ring: ring.clone(), lat })
    }

    pub fn ring(&self) -> &FinRing {
        &self.ring
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    /// [R : I].
    pub fn index_in_ring(&self) -> BigInt {
        self.lat.det()
    }

    /// |I|.
    pub fn size(&self) -> BigInt {
        self.ring.size() / self.lat.det()
    }

    pub fn is_zero(&self) -> bool {
        self.lat == self.ring.relation_lattice()
    }

    pub fn is_unit(&self) -> bool {
        self.lat.is_standard()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.lat.contains(&self.ring.reduce(v)).expect("dimensions agree")
    }

    pub fn mul(&self, other: &FinIdeal) -> FinIdeal {
        assert!(self.ring == other.ring, "ideal product needs a common ring");
        let k = self.ring.num_gens();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for a in self.lat.basis_vectors() {
            for b in other.lat.basis_vectors() {
                cols.push(self.ring.mul(&a, &b));
            }
        }
        cols.extend(IntMat::diag(self.ring.divisors()).col_vecs());
        let lat = Lattice::from_generators(&IntMat::from_cols(k, &cols))
            .expect("contains the relation lattice");
        FinIdeal { ring: self.ring.clone(), lat }
    }

    pub fn pow(&self, k: u32) -> FinIdeal {
        let mut result = self.ring.unit_ideal();
        let mut base = self.clone();
        let mut k = k;
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

    pub fn sum(&self, other: &FinIdeal) -> FinIdeal {
        assert!(self.ring == other.ring);
        FinIdeal {
            ring: self.ring.clone(),
            lat: self.lat.sum(&other.lat).expect("same dimension"),
        }
    }

    fn sum_with_principal(&self, x: &[BigInt]) -> FinIdeal {
        let cols = self.ring.principal_cols(x);
        FinIdeal {
            ring: self.ring.clone(),
            lat: self.lat.sum_with_vectors(&cols).expect("same dimension"),
        }
    }

    /// Elements of the ideal among the canonical ring elements.
    fn elements(&self) -> Vec<Vec<BigInt>> {
        self.ring
            .elements()
            .into_iter()
            .filter(|v| self.lat.contains(v).expect("dimensions agree"))
            .collect()
    }
}

/// Maximal ideal tagged with residue characteristic and degree:
/// |R/m| = p^f.
#[derive(Clone, Debug)]
pub struct MaximalIdeal {
    pub ideal: FinIdeal,
    pub p: BigInt,
    pub f: u32,
}

impl MaximalIdeal {
    pub fn residue_size(&self) -> BigInt {
        self.p.pow(self.f)
    }
}

/// Coordinate bridge for a quotient presentation: `project` maps source
/// coordinates onto the quotient generators, `pull_back_lattice` lifts ideal
/// lattices back to the source.
#[derive(Clone, Debug)]
pub struct PresentationMap {
    u: IntMat,
    u_inv: IntMat,
    divisors_full: Vec<BigInt>,
    kept: Vec<usize>,
}

impl PresentationMap {
    pub fn source_dim(&self) -> usize {
        self.u.rows()
    }

    pub fn project_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        let w = self.u.mul_vec(v);
        self.kept
            .iter()
            .map(|&i| w[i].mod_floor(&self.divisors_full[i]))
            .collect()
    }

    /// One preimage of a quotient element.
    pub fn lift_vec(&self, y: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(y.len(), self.kept.len());
        let mut full = vec![BigInt::zero(); self.source_dim()];
        for (s, &i) in self.kept.iter().enumerate() {
            full[i] = y[s].clone();
        }
        self.u_inv.mul_vec(&full)
    }

    /// Full preimage of a quotient ideal lattice, as a source lattice.
    pub fn pull_back_lattice(&self, l: &Lattice) -> Lattice {
        let m = self.source_dim();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for c in l.basis_vectors() {
            let mut full = vec![BigInt::zero(); m];
            for (s, &i) in self.kept.iter().enumerate() {
                full[i] = c[s].clone();
            }
            cols.push(full);
        }
        for i in 0..m {
            if !self.kept.contains(&i) {
                let mut full = vec![BigInt::zero(); m];
                full[i] = BigInt::one();
                cols.push(full);
            }
        }
        let in_d_coords = IntMat::from_cols(m, &cols);
        Lattice::from_generators(&self.u_inv.mul(&in_d_coords))
            .expect("preimage lattice has full rank")
    }

    /// Image of a source ideal lattice in the quotient ring.
    pub fn push_ideal(&self, target: &FinRing, src: &Lattice) -> FinIdeal {
        let gens: Vec<Vec<BigInt>> = src.basis_vectors().iter().map(|v| self.project_vec(v)).collect();
        target.ideal_from_gens(&gens)
    }
}

/// Normalize "Z^m modulo a full-rank relation lattice, with a bilinear
/// product and identity" to a canonical `FinRing` via the Smith form of the
/// relations. The product must descend to the quotient (relations form an
/// ideal), which holds for every caller here.
pub fn finring_from_presentation(
    rel: &Lattice,
    mul: impl Fn(&[BigInt], &[BigInt]) -> Vec<BigInt>,
    one: &[BigInt],
) -> (FinRing, PresentationMap) {
    let m = rel.dim();
    let decomp = crate::mat::snf_with_transform(rel.basis());
    let divisors_full = decomp.diag.clone();
    let kept: Vec<usize> = (0..m).filter(|&i| !divisors_full[i].is_one()).collect();
    let map = PresentationMap {
        u: decomp.u,
        u_inv: decomp.u_inv,
        divisors_full: divisors_full.clone(),
        kept: kept.clone(),
    };
    let k = kept.len();
    let lifts: Vec<Vec<BigInt>> = (0..k)
        .map(|s| {
            let mut y = vec![BigInt::zero(); k];
            y[s] = BigInt::one();
            map.lift_vec(&y)
        })
        .collect();
    let mut mul_mats = Vec::with_capacity(k);
    for i in 0..k {
        let cols: Vec<Vec<BigInt>> = (0..k)
            .map(|j| map.project_vec(&mul(&lifts[i], &lifts[j])))
            .collect();
        mul_mats.push(IntMat::from_cols(k, &cols));
    }
    let divisors: Vec<BigInt> = kept.iter().map(|&i| divisors_full[i].clone()).collect();
    let ring = FinRing::new(divisors, mul_mats, map.project_vec(one))
        .expect("a quotient presentation always normalizes to a valid ring");
    (ring, map)
}

/// R/I for a nonzero ideal of an order: a finite ring of size [R : I],
/// together with the projection map.
pub fn quotient_ring(r: &Order, i: &OrderIdeal) -> (FinRing, PresentationMap) {
    assert!(i.owner() == r, "ideal must belong to the order being quotiented");
    finring_from_presentation(
        i.lattice(),
        |x, y| r.mul(x, y).expect("vectors have the order degree"),
        &r.one(),
    )
}

impl FinRing {
    /// Quotient by an ideal, with the projection map.
    pub fn quotient(&self, i: &FinIdeal) -> (FinRing, PresentationMap) {
        assert!(i.ring() == self);
        finring_from_presentation(i.lattice(), |x, y| self.mul(x, y), &self.data.one)
    }

    /// Componentwise product of two rings, renormalized to a canonical
    /// divisor chain.
    pub fn product(a: &FinRing, b: &FinRing) -> FinRing {
        let (ka, kb) = (a.num_gens(), b.num_gens());
        let m = ka + kb;
        let all_divs: Vec<BigInt> = a
            .divisors()
            .iter()
            .chain(b.divisors().iter())
            .cloned()
            .collect();
        let rel = Lattice::from_generators(&IntMat::diag(&all_divs)).expect("positive divisors");
        let mul = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
            let pa = a.mul(&x[..ka], &y[..ka]);
            let pb = b.mul(&x[ka..], &y[ka..]);
            pa.into_iter().chain(pb).collect()
        };
        let mut one = a.one().to_vec();
        one.extend_from_slice(b.one());
        if m == 0 {
            return FinRing::zero_ring();
        }
        finring_from_presentation(&rel, mul, &one).0
    }

    /// The complete list of maximal ideals, each tagged with |R/m| = p^f.
    /// Computed per prime dividing |R| through the F_p-algebra R/pR.
    pub fn maximal_ideals(&self) -> Result<Vec<MaximalIdeal>, FinRingError> {
        if self.is_zero_ring() {
            return Err(FinRingError::ZeroRing);
        }
        let k = self.num_gens();
        let largest = self.data.divisors[k - 1].clone();
        let mut out = Vec::new();
        for (p, _) in factor(&largest) {
            let j_set: Vec<usize> = (0..k)
                .filter(|&i| (&self.data.divisors[i] % &p).is_zero())
                .collect();
            let dim = j_set.len();
            let mul_mats: Vec<FpMat> = j_set
                .iter()
                .map(|&a| {
                    let cols: Vec<Vec<BigInt>> = j_set
                        .iter()
                        .map(|&b| {
                            j_set
                                .iter()
                                .map(|&r| self.data.mul_mats[a].at(r, b).mod_floor(&p))
                                .collect()
                        })
                        .collect();
                    FpMat::from_cols(&p, dim, &cols)
                })
                .collect();
            let one: Vec<BigInt> = j_set.iter().map(|&i| self.data.one[i].mod_floor(&p)).collect();
            let alg = FpAlgebra { p: p.clone(), dim, mul_mats, one };
            for m in maximal_ideals_fp(&alg) {
                // pull the subspace back to a sublattice of Z^k
                let mut cols: Vec<Vec<BigInt>> = Vec::new();
                for c in 0..m.basis.cols {
                    let w = m.basis.col_vec(c);
                    let mut full = vec![BigInt::zero(); k];
                    for (s, &i) in j_set.iter().enumerate() {
                        full[i] = w[s].clone();
                    }
                    cols.push(full);
                }
                for &i in &j_set {
                    let mut full = vec![BigInt::zero(); k];
                    full[i] = p.clone();
                    cols.push(full);
                }
                for i in 0..k {
                    if !j_set.contains(&i) {
                        let mut full = vec![BigInt::zero(); k];
                        full[i] = BigInt::one();
                        cols.push(full);
                    }
                }
                let lat = Lattice::from_generators(&IntMat::from_cols(k, &cols))
                    .expect("maximal ideal lattice has full rank");
                let ideal = FinIdeal::from_lattice(self, lat)?;
                debug_assert_eq!(ideal.index_in_ring(), p.pow(m.f));
                out.push(MaximalIdeal { ideal, p: p.clone(), f: m.f });
            }
        }
        Ok(out)
    }

    /// Nilradical = Jacobson radical (the ring is Artinian): intersection of
    /// the maximal ideals.
    pub fn nilradical(&self) -> Result<FinIdeal, FinRingError> {
        let ms = self.maximal_ideals()?;
        let mut lat = Lattice::standard(self.num_gens());
        for m in &ms {
            lat = lat.intersect(m.ideal.lattice())?;
        }
        FinIdeal::from_lattice(self, lat)
    }

    /// Composition length of the ring as a module over itself, via the local
    /// decomposition: idempotents are lifted per maximal ideal and each
    /// local factor contributes log_{|R/m|} of its size.
    pub fn length(&self) -> u64 {
        self.local_lengths().iter().map(|l| l.length).sum()
    }

    /// Per-maximal-ideal local data: residue field size and local length.
    pub fn local_lengths(&self) -> Vec<LocalFactor> {
        if self.is_zero_ring() {
            return Vec::new();
        }
        let ms = self.maximal_ideals().expect("nonzero ring");
        if ms.len() == 1 {
            let q = ms[0].residue_size();
            let ell = exact_log(&self.size(), &q).expect("local ring size is a residue power");
            return vec![LocalFactor {
                p: ms[0].p.clone(),
                f: ms[0].f,
                length: ell as u64,
                size: self.size(),
            }];
        }
        let k = self.num_gens();
        let mut out = Vec::new();
        let mut total = BigInt::one();
        for (i, m) in ms.iter().enumerate() {
            // complement = intersection of all other maximal ideals
            let mut comp = Lattice::standard(k);
            for (j, mj) in ms.iter().enumerate() {
                if j != i {
                    comp = comp.intersect(mj.ideal.lattice()).expect("same dimension");
                }
            }
            // split 1 = u + v with u in the complement, v in m_i; u is
            // idempotent modulo the radical
            let stacked = comp.basis().hstack(m.ideal.lattice().basis());
            let sol = solve_columns(&stacked, &self.data.one)
                .expect("distinct maximal ideals are comaximal");
            let mut e = vec![BigInt::zero(); k];
            for (s, coef) in sol[..k].iter().enumerate() {
                let col = comp.basis().col_vec(s);
                for r in 0..k {
                    let t = &col[r] * coef;
                    e[r] += t;
                }
            }
            let mut e = self.reduce(&e);
            // Newton step e <- 3e^2 - 2e^3 squares the defect ideal
            for _ in 0..64 {
                let e2 = self.mul(&e, &e);
                if e2 == e {
                    break;
                }
                let e3 = self.mul(&e2, &e);
                let next: Vec<BigInt> = e2
                    .iter()
                    .zip(&e3)
                    .map(|(a, b)| BigInt::from(3u32) * a - BigInt::from(2u32) * b)
                    .collect();
                e = self.reduce(&next);
            }
            assert_eq!(self.mul(&e, &e), e, "idempotent iteration must converge");
            let local = self.ideal_from_gens(&[e]);
            let local_size = local.size();
            let q = m.residue_size();
            let ell = exact_log(&local_size, &q).expect("local factor size is a residue power");
            total *= &local_size;
            out.push(LocalFactor { p: m.p.clone(), f: m.f, length: ell as u64, size: local_size });
        }
        debug_assert_eq!(total, self.size(), "local factor sizes must multiply to |R|");
        out
    }

    /// Least n with x^n = 0 for every nilpotent x (elementwise; brute force
    /// over the nilradical, capped) or with N^n = 0 for the nilradical as an
    /// ideal (idealwise; uncapped).
    pub fn nilpotency_index(&self, mode: NilpotencyMode, cap: u64) -> Result<u32, FinRingError> {
        if self.is_zero_ring() {
            return Err(FinRingError::ZeroRing);
        }
        let nil = self.nilradical()?;
        match mode {
            NilpotencyMode::Idealwise => {
                let mut n = 1u32;
                let mut cur = nil.clone();
                while !cur.is_zero() {
                    cur = cur.mul(&nil);
                    n += 1;
                    assert!(n <= 4096, "nilradical power chain failed to terminate");
                }
                Ok(n)
            }
            NilpotencyMode::Elementwise => {
                self.check_cap(cap)?;
                let mut best = 1u32;
                for x in nil.elements() {
                    let mut cur = x.clone();
                    let mut n = 1u32;
                    while !self.is_zero_elt(&cur) {
                        cur = self.mul(&cur, &x);
                        n += 1;
                    }
                    best = best.max(n);
                }
                Ok(best)
            }
        }
    }

    /// Nakayama generator count: max over maximal m of dim_{R/m} I/mI.
    pub fn mu_fin(&self, i: &FinIdeal) -> u32 {
        assert!(i.ring() == self);
        if i.is_zero() {
            return 0;
        }
        let ms = self.maximal_ideals().expect("ring with a nonzero ideal is nonzero");
        let mut best = 0u32;
        for m in &ms {
            let mi = m.ideal.mul(i);
            let idx = mi.index_in_ring() / i.index_in_ring();
            let d = exact_log(&idx, &m.residue_size())
                .expect("[I : mI] must be a power of the residue size");
            best = best.max(d);
        }
        best
    }

    /// Every ideal, discovered by breadth-first closure over single-element
    /// enlargements, deduplicated through canonical lattices, sorted by
    /// index then basis.
    pub fn enumerate_ideals(&self, cap: u64) -> Result<Vec<FinIdeal>, FinRingError> {
        self.check_cap(cap)?;
        let mut seen: HashSet<Lattice> = HashSet::new();
        let mut out: Vec<FinIdeal> = Vec::new();
        let mut queue: VecDeque<FinIdeal> = VecDeque::new();
        let zero = self.zero_ideal();
        seen.insert(zero.lattice().clone());
        queue.push_back(zero.clone());
        out.push(zero);
        while let Some(i) = queue.pop_front() {
            // enlargements only depend on the coset of the new element
            for rep in i.lattice().coset_reps() {
                if rep.iter().all(Zero::is_zero) {
                    continue;
                }
                let j = i.sum_with_principal(&rep);
                if seen.insert(j.lattice().clone()) {
                    out.push(j.clone());
                    queue.push_back(j);
                }
            }
        }
        out.sort_by(|a, b| {
            a.index_in_ring()
                .cmp(&b.index_in_ring())
                .then_with(|| key(a.lattice()).cmp(&key(b.lattice())))
        });
        fn key(l: &Lattice) -> Vec<BigInt> {
            l.basis().col_vecs().concat()
        }
        Ok(out)
    }

    /// Least g such that some g elements of I generate it; the literal
    /// definition, searched in increasing g. Independent of `mu_fin`: only
    /// closures and lattice comparisons are used.
    pub fn mu_exhaustive(&self, i: &FinIdeal, cap: u64) -> Result<u32, FinRingError> {
        self.check_cap(cap)?;
        if i.is_zero() {
            return Ok(0);
        }
        // single generators first, caching the principal ideals
        let mut principals: Vec<FinIdeal> = Vec::new();
        for x in i.elements() {
            if x.iter().all(Zero::is_zero) {
                continue;
            }
            let px = self.ideal_from_gens(&[x]);
            if &px == i {
                return Ok(1);
            }
            principals.push(px);
        }
        // try the largest principal ideals first at the top level
        principals.sort_by(|a, b| a.index_in_ring().cmp(&b.index_in_ring()));
        principals.dedup();
        for g in 2..=(self.num_gens() as u32) {
            for start in &principals {
                if extend_generators(i, start, g - 1) {
                    return Ok(g);
                }
            }
        }
        // the lattice basis vectors always generate
        unreachable!("an ideal is generated by at most num_gens elements");
    }

    /// Supremum of `mu_exhaustive` over every ideal; 0 for the zero ring.
    pub fn rank_exhaustive(&self, cap: u64) -> Result<u32, FinRingError> {
        let ideals = self.enumerate_ideals(cap)?;
        let mut best = 0;
        for i in &ideals {
            best = best.max(self.mu_exhaustive(i, cap)?);
        }
        Ok(best)
    }

    /// Rank through the Nakayama count: max of `mu_fin` over every ideal.
    pub fn rank_nakayama(&self, cap: u64) -> Result<u32, FinRingError> {
        let ideals = self.enumerate_ideals(cap)?;
        Ok(ideals.iter().map(|i| self.mu_fin(i)).max().unwrap_or(0))
    }
}

/// Depth-first search for `extra` more generators on top of `current`,
/// inside `target`. Candidates range over coset representatives of
/// `current`, which is exhaustive: adding an element only depends on its
/// coset.
fn extend_generators(target: &FinIdeal, current: &FinIdeal, extra: u32) -> bool {
    if current == target {
        return true;
    }
    if extra == 0 {
        return false;
    }
    for rep in current.lattice().coset_reps() {
        if rep.iter().all(Zero::is_zero) {
            continue;
        }
        if !target.contains(&rep) {
            continue;
        }
        let next = current.sum_with_principal(&rep);
        if extend_generators(target, &next, extra - 1) {
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyMode {
    Elementwise,
    Idealwise,
}

/// Local factor data: the factor has size `size` = (p^f)^length.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub p: BigInt,
    pub f: u32,
    pub length: u64,
    pub size: BigInt,
}


impl LocalFactor {
    /// (p^f)^length, for consistency checks.
    pub fn residue_pow(&self) -> BigInt {
        self.p.pow(self.f).pow(u32::try_from(self.length).expect("desk-scale length"))
    }
}
