//! Placement engine for stationary airborne RF chargers that recharge
//! receiver UAVs while they cruise along the edges of a square service area.
//!
//! The numerical code is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`; `*F32` variants exist
//! for single precision.
//!
//! ```
//! use wpt_core::{energy, AreaConfig, Placement, RfParams, Trajectory};
//!
//! let area = AreaConfig::new(80.0, 5.0, 10.0).unwrap();
//! let rf = RfParams::table_one();
//! let r = energy::report(&[Placement::new(40.0, 5.0)], &Trajectory::both(), &area, &rf).unwrap();
//! assert!((r.total_avg_power_dbm - 25.5121).abs() < 5e-3);
//! ```

pub mod energy;
pub mod error;
pub mod geometry;
pub mod placement;
pub mod propagation;
pub mod quadrature;
pub mod scalar;

pub use error::{Error, Result};
pub use geometry::{Edge, Trajectory};
pub use placement::AllocationPolicy;
pub use scalar::Scalar;

pub type AreaConfig = geometry::AreaConfig<f64>;
pub type Placement = geometry::Placement<f64>;
pub type Point = geometry::Point<f64>;
pub type RfParams = propagation::RfParams<f64>;
pub type EnergyReport = energy::EnergyReport<f64>;
pub type SweepGrid = placement::SweepGrid<f64>;
pub type SweepRow = placement::SweepRow<f64>;

pub type AreaConfigF32 = geometry::AreaConfig<f32>;
pub type PlacementF32 = geometry::Placement<f32>;
pub type PointF32 = geometry::Point<f32>;
pub type RfParamsF32 = propagation::RfParams<f32>;
pub type EnergyReportF32 = energy::EnergyReport<f32>;
pub type SweepGridF32 = placement::SweepGrid<f32>;
