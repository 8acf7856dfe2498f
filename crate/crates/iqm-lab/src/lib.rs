//! Executable constructions: double slit, Schrödinger cat, Bell pair,
//! reduction ladder and the two update counterexamples.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bell;
pub mod cat;
pub mod counterexample;
pub mod double_slit;
pub mod reduction;
pub mod result;

pub use bell::{run_bell, run_bell_with};
pub use cat::{run_cat, CatDouble, CatOptions};
pub use counterexample::run_counterexample;
pub use double_slit::run_double_slit;
pub use reduction::run_reduction;
pub use result::{Row, ScenarioResult, Value};
