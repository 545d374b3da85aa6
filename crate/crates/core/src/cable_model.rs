//! Cable description and purely geometric derived quantities.
//!
//! A three-core cable with one lead sheath per core and a common layer of
//! helical steel armor wires is described by [`CableSpec`]. Everything the
//! loss models need that follows from geometry alone (trefoil spacing, mean
//! sheath diameter, crossing pitch, lay factor) lives in [`DerivedGeometry`].
//!
//! All lengths are SI meters internally; file ingestion converts from the
//! customary mm / km units at the boundary.

use crate::error::CoreError;

/// Conductor materials supported by the built-in resistance defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConductorMaterial {
    Copper,
    Aluminum,
}

impl ConductorMaterial {
    pub fn name(&self) -> &'static str {
        match self {
            ConductorMaterial::Copper => "copper",
            ConductorMaterial::Aluminum => "aluminum",
        }
    }
}

/// Sheath materials. Separated-sheath three-core cables use lead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheathMaterial {
    Lead,
}

impl SheathMaterial {
    pub fn name(&self) -> &'static str {
        match self {
            SheathMaterial::Lead => "lead",
        }
    }
}

/// Full geometric and material description of one three-core armored cable.
///
/// Lengths in meters, currents in amperes, `cross_section` in m². The armor
/// wire permeability is complex, `mu' - j mu''`; only the real part enters
/// the analytical corrections, the imaginary part is carried as cable data.
#[derive(Debug, Clone, PartialEq)]
pub struct CableSpec {
    /// Rated voltage, kV (identification only).
    pub voltage_kv: f64,
    /// Rated conductor current, A rms.
    pub rated_current: f64,
    /// Conductor external diameter d_c, m.
    pub conductor_diameter: f64,
    /// Sheath external diameter d_s, m.
    pub sheath_outer_diameter: f64,
    /// Sheath thickness t_s, m.
    pub sheath_thickness: f64,
    /// Distance from a conductor center to the cable axis, c, m.
    pub core_center_radius: f64,
    /// Armor wire diameter d_a, m.
    pub armor_wire_diameter: f64,
    /// Mean armor diameter D_a, m.
    pub armor_mean_diameter: f64,
    /// Number of armor wires N.
    pub armor_wire_count: u32,
    /// Lay length of the phases L_c, m.
    pub conductor_lay_length: f64,
    /// Lay length of the armor wires L_a, m.
    pub armor_lay_length: f64,
    pub conductor_material: ConductorMaterial,
    pub sheath_material: SheathMaterial,
    /// Real part of the armor wire relative permeability, mu' >= 1.
    pub armor_mu_real: f64,
    /// Imaginary part (hysteresis), mu'' >= 0.
    pub armor_mu_imag: f64,
    /// Conductor cross section, m².
    pub cross_section: f64,
}

impl CableSpec {
    /// Checks every spec invariant, naming the first offending field.
    pub fn validate(&self) -> Result<(), CoreError> {
        let positive: [(&'static str, f64); 9] = [
            ("d_c", self.conductor_diameter),
            ("d_s", self.sheath_outer_diameter),
            ("t_s", self.sheath_thickness),
            ("c", self.core_center_radius),
            ("d_a", self.armor_wire_diameter),
            ("D_a", self.armor_mean_diameter),
            ("L_c", self.conductor_lay_length),
            ("L_a", self.armor_lay_length),
            ("cross_section", self.cross_section),
        ];
        for (field, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(CoreError::invalid_spec(
                    field,
                    format!("must be positive, got {value}"),
                ));
            }
        }
        if self.rated_current < 0.0 {
            return Err(CoreError::invalid_spec(
                "rated_current",
                format!("must be non-negative, got {}", self.rated_current),
            ));
        }
        if self.armor_wire_count < 1 {
            return Err(CoreError::invalid_spec("n_wires", "must be at least 1"));
        }
        if self.sheath_outer_diameter <= 2.0 * self.sheath_thickness {
            return Err(CoreError::invalid_spec(
                "t_s",
                format!(
                    "sheath thickness {} m incompatible with outer diameter {} m (d_s must exceed 2 t_s)",
                    self.sheath_thickness, self.sheath_outer_diameter
                ),
            ));
        }
        if self.armor_mean_diameter <= self.armor_wire_diameter {
            return Err(CoreError::invalid_spec(
                "D_a",
                "mean armor diameter must exceed the armor wire diameter",
            ));
        }
        if self.armor_mu_real < 1.0 {
            return Err(CoreError::invalid_spec(
                "mu_real",
                format!(
                    "relative permeability must be >= 1, got {}",
                    self.armor_mu_real
                ),
            ));
        }
        if self.armor_mu_imag < 0.0 {
            return Err(CoreError::invalid_spec(
                "mu_imag",
                format!("must be >= 0, got {}", self.armor_mu_imag),
            ));
        }
        // 2s/d > 1 keeps the sheath-reactance log argument above one.
        let s = trefoil_spacing(self.core_center_radius);
        let d = self.sheath_outer_diameter - self.sheath_thickness;
        if 2.0 * s <= d {
            return Err(CoreError::invalid_spec(
                "c",
                format!(
                    "trefoil spacing too small: 2s/d = {:.4} must exceed 1",
                    2.0 * s / d
                ),
            ));
        }
        Ok(())
    }
}

/// Geometry-derived quantities used by the loss models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedGeometry {
    /// Conductor axis spacing s = sqrt(3) c, m.
    pub spacing: f64,
    /// Mean sheath diameter d = d_s - t_s, m.
    pub mean_sheath_diameter: f64,
    /// Crossing pitch, m: distance in which an armor wire makes a full
    /// revolution around a phase (contralay cables).
    pub crossing_pitch: f64,
    /// Shortest periodic model length CP/N, m.
    pub model_length: f64,
    /// Periodic-boundary rotation angle over one model length, rad.
    pub rotation: f64,
    /// Helical length multiplier of the phases, >= 1.
    pub lay_factor: f64,
}

/// Conductor axis spacing of a symmetric trefoil, s = sqrt(3) c.
pub fn trefoil_spacing(core_center_radius: f64) -> f64 {
    3.0_f64.sqrt() * core_center_radius
}

/// Crossing pitch of a contralay cable: harmonic combination of the phase
/// and armor lay lengths, 1 / (1/L_a + 1/L_c).
pub fn crossing_pitch(conductor_lay_length: f64, armor_lay_length: f64) -> Result<f64, CoreError> {
    if !conductor_lay_length.is_finite() || conductor_lay_length <= 0.0 {
        return Err(CoreError::invalid_spec(
            "L_c",
            format!("lay length must be positive, got {conductor_lay_length}"),
        ));
    }
    if !armor_lay_length.is_finite() || armor_lay_length <= 0.0 {
        return Err(CoreError::invalid_spec(
            "L_a",
            format!("lay length must be positive, got {armor_lay_length}"),
        ));
    }
    Ok(1.0 / (1.0 / armor_lay_length + 1.0 / conductor_lay_length))
}

/// Shortest cable length containing all electromagnetic interactions once,
/// CP/N.
pub fn model_length(crossing_pitch: f64, n_wires: u32) -> f64 {
    debug_assert!(crossing_pitch > 0.0 && n_wires >= 1);
    crossing_pitch / f64::from(n_wires)
}

/// Relative rotation between the two periodic boundary coordinate systems,
/// 2 pi L / L_c.
pub fn boundary_rotation(model_length: f64, conductor_lay_length: f64) -> f64 {
    debug_assert!(model_length > 0.0 && conductor_lay_length > 0.0);
    2.0 * std::f64::consts::PI * model_length / conductor_lay_length
}

/// Lay factor sqrt(1 + (2 pi c / L_c)^2): per-axial-meter length of the
/// helical core path. Both arguments in meters.
pub fn lay_factor(core_center_radius: f64, conductor_lay_length: f64) -> f64 {
    debug_assert!(core_center_radius >= 0.0 && conductor_lay_length > 0.0);
    let ratio = 2.0 * std::f64::consts::PI * core_center_radius / conductor_lay_length;
    (1.0 + ratio * ratio).sqrt()
}

/// Lay factor of the armor wire helix on the armor circle,
/// sqrt(1 + (pi D_a / L_a)^2).
pub fn armor_lay_factor(armor_mean_diameter: f64, armor_lay_length: f64) -> f64 {
    debug_assert!(armor_mean_diameter > 0.0 && armor_lay_length > 0.0);
    let ratio = std::f64::consts::PI * armor_mean_diameter / armor_lay_length;
    (1.0 + ratio * ratio).sqrt()
}

/// Validates the spec and computes every derived geometric quantity.
pub fn derive_geometry(spec: &CableSpec) -> Result<DerivedGeometry, CoreError> {
    spec.validate()?;
    let cp = crossing_pitch(spec.conductor_lay_length, spec.armor_lay_length)?;
    let length = model_length(cp, spec.armor_wire_count);
    Ok(DerivedGeometry {
        spacing: trefoil_spacing(spec.core_center_radius),
        mean_sheath_diameter: spec.sheath_outer_diameter - spec.sheath_thickness,
        crossing_pitch: cp,
        model_length: length,
        rotation: boundary_rotation(length, spec.conductor_lay_length),
        lay_factor: lay_factor(spec.core_center_radius, spec.conductor_lay_length),
    })
}
