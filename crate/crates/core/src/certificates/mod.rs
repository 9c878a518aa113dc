//! Explicit sub- and super-solutions and their residual checks.

pub mod floors;
pub mod large_time;
pub mod planar;
pub mod residual;
pub mod shift;
pub mod zfn;

pub use floors::{mid_zone, shift_floors, MidZone, ShiftFloors};
pub use large_time::{DriftFloors, LargeTime, LargeTimeParams, TiltConstants, TiltForm};
pub use planar::{PlanarPair, PlanarSqueezeParams};
pub use residual::{certificate_residual, linspace, Certificate, LargeTimeCert, PlanarCert, ResidualReport, TwoFrontCert, Which};
pub use shift::{ShiftParams, TwoFront};
pub use zfn::{ZFunction, ZParams};
