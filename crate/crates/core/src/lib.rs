//! Polymers on classical Dynkin diagrams with finite Galois actions.
//!
//! The crate decides whether a Hodge-type representation, described
//! combinatorially by a polymer and a Galois action on its Dynkin diagram,
//! is perfectly tensor-twisted. It also carries the exact matrix calculus
//! behind the tensor index rule and enumerates Deligne polymers.

pub mod cli;
pub mod diagram;
pub mod error;
pub mod galois;
pub mod nilmat;
pub mod polymer;
pub mod repdim;
pub mod twist;

pub use error::{Error, Result};
