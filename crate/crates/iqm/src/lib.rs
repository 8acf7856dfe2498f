//! Interval quantum mechanics: states known only up to sets of density
//! matrices ("parcels"), interval-valued observables, unitary evolution and
//! fuzzy measurement updates.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod exec;
pub mod hull;
pub mod lp;
pub mod measurement;
pub mod observables;
pub mod operator;
pub mod parcel;

pub use error::{Error, Result};
pub use exec::Execution;
pub use observables::RealInterval;
pub use operator::{DensityMatrix, HermitianOperator, ObservableBasis};
pub use parcel::{DoubleParcel, HyperRectParcel, Parcel, VertexParcel};
