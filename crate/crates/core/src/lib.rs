//! Waste-factor analysis for cascaded systems.
//!
//! The waste factor `W` measures the power a signal path consumes per watt
//! delivered at its output, the exact output-referred dual of the
//! input-referred noise factor `F`. This crate computes both for arbitrary
//! cascades, applies `W` to data-center energy accounting (transmission
//! efficiency, PUE, and the facility waste factor), and evaluates the
//! consumption efficiency factor (bits per joule) of 28 GHz and 142 GHz
//! links under seeded, reproducible network sweeps.
//!
//! ```
//! use wastefactor_core::{CascadeSpec, StageSpec};
//!
//! // A 28% efficient PA feeding a 3 dB pad.
//! let cascade = CascadeSpec::new(vec![
//!     StageSpec::new("pa", 100.0, 1.0 / 0.28, 1.0).unwrap(),
//!     StageSpec::passive("pad", 0.5).unwrap(),
//! ])
//! .unwrap();
//!
//! let w = cascade.waste_factor();
//! assert!((w - (2.0 + (1.0 / 0.28 - 1.0) / 0.5)).abs() < 1e-12);
//! assert!((cascade.power_trace().unwrap().waste_factor - w).abs() < 1e-12 * w);
//! ```

pub mod cascade;
pub mod datacenter;
pub mod device;
pub mod error;
pub mod io;
pub mod radio;
pub mod scenario;
pub mod units;

pub use cascade::{CascadeReport, CascadeSpec, GeneralizedLink, LinkWaste, StageSpec};
pub use datacenter::{
    compare_datacenters, inter_datacenter_w, ComparisonVerdict, DataCenterComparison,
    DataCenterProfile, DataCenterReport,
};
pub use device::{antenna_stage, lna_dc_power, pa_stage, passive_stage, LnaSpec, NonPathLoad};
pub use error::{Error, Result};
pub use radio::{shannon_rate, CefMode, Direction, LinkReport, RadioProfile};
pub use scenario::{
    evaluate_network, place_entities, run_sweep, BandSelection, DirectionSelection, LosPolicy,
    NetworkReport, Placements, ProfileOverrides, ScenarioConfig, SweepParameter, SweepRow,
    SweepSpec,
};
pub use units::{db_to_linear, dbm_to_watts, linear_to_db, watts_to_dbm};
