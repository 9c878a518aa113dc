//! Nonlocal bistable dispersal on exterior domains.
//!
//! The crate solves `u_t = int_Omega J(x - y)[u(y) - u(x)] dy + f(u)` outside a convex
//! obstacle `K`, computes the planar traveling wave `(phi, c)`, and checks the explicit
//! sub- and super-solutions used to build and control entire solutions.

// `!(x > 0.0)` is kept on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod banded;
pub mod certificates;
pub mod conv;
pub mod domain;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod field_io;
pub mod kernels;
pub mod nonlinearity;
mod quad;
pub mod traveling_wave;

pub use error::{Error, Result};
pub use kernels::{Kernel, Kernel1D};
pub use nonlinearity::{Bistable, ConditionF, Family};
pub use traveling_wave::{Asymptotics, WaveProfile};
pub use domain::{ExteriorGrid, GridBox, ObstacleSpec};
pub use evolution::{Closure, Evolver, Field, Scheme, Trajectory};
pub use experiments::{EntireSolutionApprox, FrontDiagnostics};
pub use field_io::FieldDump;
