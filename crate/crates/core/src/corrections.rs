//! Analytical correction factors for twisted, armored three-core cables.
//!
//! The standard formulas of [`crate::iec60287`] ignore the relative twisting
//! of cores and armor wires and the effect of magnetic armor on the
//! conductors. Three closed-form corrections, fitted against a large set of
//! 3D field solutions of real 10-275 kV cable designs, compensate this:
//!
//! - `f_c` scales the conductor proximity factor for the presence of
//!   magnetic armor: `R'_c = R_dc (1 + y_s + y_p f_c)`;
//! - `y_c` turns the DC sheath resistance into an equivalent resistance
//!   capturing circulating plus eddy losses of an unarmored twisted cable:
//!   `R_s_eq = R_s_dc (1 + y_c)`, with `P_s = 3 R_s_eq I_s^2`;
//! - `y_a` adds the armor presence on top: `R_s_eq' = R_s_eq (1 + y_a)`.
//!
//! The crossing pitch enters `f_c` and `y_a` in meters. Everything else is a
//! unit-free ratio. Inputs outside the fitted envelope show up as a bracket
//! sign flip (`f_c < 1`, `y_a < 0`); those values are passed through with an
//! out-of-fit-domain flag so extrapolation stays visible.
//!
//! Only the real part of the armor permeability enters these expressions;
//! mu'' plays no role here.

use crate::cable_model::{CableSpec, DerivedGeometry};
use crate::error::Warning;

/// The three correction factors for one cable, with out-of-fit-domain flags.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionFactors {
    /// Conductor proximity correction (1 for nonmagnetic armor).
    pub f_c: f64,
    /// Unarmored sheath eddy correction, > 0 for physical trefoil geometry.
    pub y_c: f64,
    /// Armor presence correction on the sheath equivalent resistance.
    pub y_a: f64,
    pub flags: Vec<Warning>,
}

/// Conductor proximity correction factor
/// `f_c = 1 + (100/(1.5+CP) (s/D_a) (d/d_a) - 60) (d_a/D_a)^2 ln mu'`.
///
/// `crossing_pitch` in meters; the remaining lengths only enter as ratios.
pub fn conductor_proximity_correction(
    crossing_pitch: f64,
    spacing: f64,
    armor_mean_diameter: f64,
    mean_sheath_diameter: f64,
    armor_wire_diameter: f64,
    mu_prime: f64,
) -> f64 {
    let bracket = 100.0 / (1.5 + crossing_pitch)
        * (spacing / armor_mean_diameter)
        * (mean_sheath_diameter / armor_wire_diameter)
        - 60.0;
    let wire_ratio = armor_wire_diameter / armor_mean_diameter;
    1.0 + bracket * wire_ratio * wire_ratio * mu_prime.ln()
}

/// Corrected AC conductor resistance `R'_c = R_dc (1 + y_s + y_p f_c)`, Ω/m.
pub fn corrected_conductor_resistance(r_dc: f64, y_s: f64, y_p: f64, f_c: f64) -> f64 {
    r_dc * (1.0 + y_s + y_p * f_c)
}

/// Sheath eddy correction for unarmored twisted cables,
/// `y_c = (6.6 + 2.6 sqrt(LF^2 - 1)) / (5.2 (d_c/d) + (2s/d)^4)`.
pub fn sheath_eddy_correction(
    lay_factor: f64,
    conductor_diameter: f64,
    mean_sheath_diameter: f64,
    spacing: f64,
) -> f64 {
    let twist = (lay_factor * lay_factor - 1.0).max(0.0).sqrt();
    let spacing_ratio = 2.0 * spacing / mean_sheath_diameter;
    (6.6 + 2.6 * twist)
        / (5.2 * (conductor_diameter / mean_sheath_diameter) + spacing_ratio.powi(4))
}

/// Armor presence correction `y_a = 6e-3 (ln mu' - CP^2)`, crossing pitch in
/// meters.
pub fn armor_presence_correction(crossing_pitch: f64, mu_prime: f64) -> f64 {
    6e-3 * (mu_prime.ln() - crossing_pitch * crossing_pitch)
}

/// Sheath equivalent resistance: `R_s_dc (1 + y_c)` for the unarmored cable,
/// times `(1 + y_a)` when armored. Sheath losses are `P_s = 3 R_eq I_s^2`.
pub fn sheath_equivalent_resistance(r_s_dc: f64, y_c: f64, y_a: f64, armored: bool) -> f64 {
    let unarmored = r_s_dc * (1.0 + y_c);
    if armored {
        unarmored * (1.0 + y_a)
    } else {
        unarmored
    }
}

/// All three correction factors for a cable, with fit-domain flags attached.
pub fn correction_factors(spec: &CableSpec, geom: &DerivedGeometry) -> CorrectionFactors {
    let f_c = conductor_proximity_correction(
        geom.crossing_pitch,
        geom.spacing,
        spec.armor_mean_diameter,
        geom.mean_sheath_diameter,
        spec.armor_wire_diameter,
        spec.armor_mu_real,
    );
    let y_c = sheath_eddy_correction(
        geom.lay_factor,
        spec.conductor_diameter,
        geom.mean_sheath_diameter,
        geom.spacing,
    );
    let y_a = armor_presence_correction(geom.crossing_pitch, spec.armor_mu_real);
    let mut flags = Vec::new();
    if f_c < 1.0 {
        flags.push(Warning::ProximityCorrectionBelowUnity { f_c });
    }
    if y_a < 0.0 {
        flags.push(Warning::NegativeArmorCorrection { y_a });
    }
    CorrectionFactors {
        f_c,
        y_c,
        y_a,
        flags,
    }
}
