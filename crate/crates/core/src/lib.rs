//! Loss allocation for solidly bonded three-core armored HVAC power cables.
//!
//! Splits the total losses of an SL-type cable (three conductors, one lead
//! sheath per core, common steel-wire armor) into conductor, sheath and
//! armor shares, three ways:
//!
//! - [`iec60287`]: the standard analytical loss factors (circulating and
//!   eddy sheath currents, armor factor);
//! - [`corrections`]: closed-form correction factors for the twisting and
//!   armor effects the standard formulas miss, plus the corrected conductor
//!   and sheath equivalent resistances built from them;
//! - [`em_pipeline`]: armor-loss estimation from paired unarmored/armored
//!   laboratory tests by the difference method, in its original, legacy and
//!   improved variants.
//!
//! [`cable_model`] holds the cable description and derived geometry,
//! [`mesh_oracle`] an independent filamentary circuit solve used to certify
//! the circulating-current model, and [`bench_io`] the file format, bundled
//! templates, batch/sweep engines and report writers.

pub mod bench_io;
pub mod cable_model;
pub mod corrections;
pub mod em_pipeline;
pub mod error;
pub mod iec60287;
pub mod mesh_oracle;

pub use error::{CoreError, Warning};
