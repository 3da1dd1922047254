//! Exact-arithmetic toolkit for sumset growth in integer lattices and
//! finite cyclic product groups.
//!
//! The crate has four pillars:
//!
//! * [`lattice`] — canonical point sets in `Z^d` with exact sumsets,
//!   affine dimension, line projections, and rational convex-position
//!   tests.
//! * [`select`] — constructive translate selection: given a set `A`, find
//!   a small `S` (subsets of `A` or of a second set `B`) so that `|A + S|`
//!   provably meets a stated growth target, plus a brute-force
//!   minimal-witness oracle for ground truth at desk scale.
//! * [`structure`] — parallel-line covers, dense-line detection, and a
//!   battery of additive-combinatorics inequality checkers (Freiman,
//!   Ruzsa, Pluennecke-Ruzsa, ...) evaluated in exact rational arithmetic.
//! * [`cyclic`] — a simulator for `Z_p x Z_m`: convolutions, popular
//!   product sets, random-covering experiments, and interval-fiber
//!   translate selection with integer-exact growth certificates.
//!
//! All operations are pure functions over immutable values; anything
//! randomized takes an explicit seed.

pub mod cyclic;
pub mod error;
pub mod generate;
pub mod io;
pub mod lattice;
pub mod report;
pub mod select;
pub mod structure;

pub use error::{Error, Result};
pub use lattice::{Direction, LatticePoint, PointSet};
pub use report::{MetricValue, Report, Verdict};
pub use select::{SelectionBudget, SourceLabel, TranslateWitness};
pub use structure::LineCover;
