//! Sampling discretization of integral norms on finite-dimensional function spaces.
//!
//! The crate builds point sets and weights that reproduce (exactly or up to
//! two-sided constants) the `L_q` norms of trigonometric polynomials and of
//! general real systems, and measures the resulting constants with
//! eigenvalue, linear-programming and seeded randomized probes.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command line
//! live in the `normgrid` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod math;
pub mod rng;
pub mod tol;

pub mod certify;
pub mod exact;
pub mod extremal;
pub mod greedy;
pub mod hypercross;
pub mod numkernel;
pub mod random;
pub mod spaces;
pub mod universal;

pub use error::{Error, Result};
pub use tol::Tolerances;
