//! Almost complete subsets of the conic in PG(2,q).
//!
//! A subset of the conic `C = {(1,t,t²)} ∪ {(0,0,1)}` is almost complete
//! (AC) when its bisecants cover every point of the plane off the conic
//! (and off the nucleus for even `q`). The crate computes the smallest size
//! `t(q)` of such subsets, constructs small ones by randomized greedy search,
//! evaluates the known upper bounds on `t(q)`, and checks completeness of
//! normal rational curves in PG(N,q).
//!
//! ```
//! use conic_ac::{field::FieldCtx, geometry::ConicModel, search};
//!
//! let model = ConicModel::new(FieldCtx::with_order(9).unwrap()).unwrap();
//! let best = search::exhaustive_min_ac(&model, &Default::default()).unwrap();
//! assert_eq!(best.t, 6);
//! ```

pub mod bounds;
pub mod error;
pub mod field;
pub mod geometry;
pub mod nrc;
pub mod primes;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use field::FieldCtx;
pub use geometry::{ConicModel, Param};
