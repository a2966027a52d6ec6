//! Exact-arithmetic construction and certification of rank invariants for
//! rings of finite rank: nonmaximal orders in number fields, their Artinian
//! quotients, pullback orders, and truncated polynomial rings.
//!
//! Everything is computed over arbitrary-precision integers; there is no
//! floating point anywhere in this crate. Lattices are kept in a canonical
//! column Hermite form so that equality of ideals and suborders is a
//! bit-exact comparison. Invariants computed structurally (via Nakayama
//! quotients and Hilbert indices) can be cross-checked against a brute-force
//! oracle that enumerates every ideal of a finite ring.
//!
//! Certify the rank of a nonmaximal order:
//!
//! ```
//! use ringrank_core::constructions::build_matson;
//! use ringrank_core::invariants::rank_order;
//!
//! let emb = build_matson(3).unwrap();
//! let report = rank_order(&emb, "matson-3").unwrap();
//! assert_eq!(report.rank.exact(), Some(3));
//! assert_eq!(report.singular.len(), 1);
//! assert_eq!(report.singular[0].z, 3);
//! ```
//!
//! Measure a finite ring both structurally and by brute force:
//!
//! ```
//! use num_bigint::BigInt;
//! use ringrank_core::{FinRing, DEFAULT_SIZE_CAP};
//!
//! let r = FinRing::zn(&BigInt::from(8));
//! assert_eq!(r.length(), 3);
//! assert_eq!(r.rank_exhaustive(DEFAULT_SIZE_CAP).unwrap(), 1);
//! ```

pub mod arith;
pub mod constructions;
pub mod finring;
pub mod invariants;
pub mod lattice;
pub mod mat;
pub mod order;

mod modp;

pub use finring::{FinIdeal, FinRing, MaximalIdeal, PresentationMap};
pub use invariants::{MuValue, PrimeInvariants, RankReport};
pub use lattice::Lattice;
pub use mat::{IntMat, LatError};
pub use order::{Conductor, EmbeddedOrder, Order, OrderError, OrderIdeal, PrimeSpot};

/// Default cap on the cardinality of a finite ring for exhaustive
/// (element-level) operations: ideal enumeration, generator search,
/// elementwise nilpotency.
pub const DEFAULT_SIZE_CAP: u64 = 4096;
