//! Numerics for q-deformed coherent states and even/odd Schrodinger cat
//! states on a truncated Fock space.
//!
//! The crate keeps two independent evaluation paths for every observable:
//! closed forms built from the q-exponential series ([`observables`]) and a
//! brute-force path of matrix-vector products over explicitly truncated
//! coefficient vectors ([`oracle`]). The [`verify`] module compares the two
//! on a parameter grid and reports every discrepancy, distinguishing the
//! first-principles (`derived`) readings, which must agree with the oracle,
//! from the printed (`paper`) variants, which are documented as found.

pub mod error;
pub mod observables;
pub mod operators;
pub mod oracle;
pub mod par;
pub mod qmath;
pub mod states;
pub mod verify;

pub use error::Error;
pub use observables::{CatMoments, MomentSet, NumberReport, QuadratureReport};
pub use operators::{build_ladder_set, LadderSet, OperatorMatrix};
pub use oracle::{DiscrepancyRecord, Variant};
pub use qmath::{DeformationParameter, QSeriesValue, DEFAULT_TOL};
pub use states::{Parity, StateKind, StateSpec, TruncatedState};
pub use verify::{GridPoint, OracleConfig, VerificationReport};
