//! IEC 60287-1-1 loss model for solidly bonded three-core armored cables.
//!
//! Implements the standard's loss allocation as applied to SL-type cables:
//!
//! - AC conductor resistance `R_c = R_dc (1 + y_s + y_p)` with the skin and
//!   proximity factors of clause 2.1 (k_s = k_p = 1 unless overridden);
//! - sheath reactance `X = 2 w 1e-7 ln(2s/d)` and the circulating-current
//!   loss factor `lambda1' = (R_s/R_c) * 1.5 / (1 + (R_s/X)^2)`;
//! - sheath eddy-current loss factor `lambda1''` per clause 2.3.6 for three
//!   single-core cables in trefoil (g_s, lambda0, beta1, Delta1, Delta2);
//! - armor loss factor `lambda2` per clause 2.4.2.5;
//! - the allocation `P_s = lambda1 P_c`, `P_a = lambda2 P_c`.
//!
//! Sheath resistance entering the factors is the DC resistance at
//! temperature: circulating currents flow axially and the sheath is thin
//! enough that its own skin effect is negligible here.
//!
//! All resistances are Ω/m, lengths meters, angular frequency rad/s.

use crate::cable_model::{armor_lay_factor, CableSpec, ConductorMaterial, DerivedGeometry};
use crate::error::{CoreError, Warning};

/// Validity bound of the clause 2.1 skin/proximity formulas.
const SKIN_ARGUMENT_LIMIT: f64 = 2.8;

/// Resistivity and linear temperature coefficient of a metal, both at 20 °C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialProps {
    /// Electrical resistivity at 20 °C, Ω·m.
    pub resistivity_20c: f64,
    /// Linear temperature coefficient at 20 °C, 1/K.
    pub temp_coefficient: f64,
}

impl MaterialProps {
    /// Resistivity scaled to `theta` °C by the linear law.
    pub fn resistivity_at(&self, theta: f64) -> f64 {
        self.resistivity_20c * (1.0 + self.temp_coefficient * (theta - 20.0))
    }
}

/// Standard conductor/sheath/armor material constants (IEC 60287-1-1 Table 1).
pub mod materials {
    use super::MaterialProps;

    pub const COPPER: MaterialProps = MaterialProps {
        resistivity_20c: 1.7241e-8,
        temp_coefficient: 3.93e-3,
    };
    pub const ALUMINUM: MaterialProps = MaterialProps {
        resistivity_20c: 2.8264e-8,
        temp_coefficient: 4.03e-3,
    };
    pub const LEAD: MaterialProps = MaterialProps {
        resistivity_20c: 21.4e-8,
        temp_coefficient: 4.0e-3,
    };
    /// Galvanized steel armor wire.
    pub const STEEL_WIRE: MaterialProps = MaterialProps {
        resistivity_20c: 13.8e-8,
        temp_coefficient: 4.5e-3,
    };
}

/// Electrical state a cable is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// System frequency, Hz.
    pub frequency: f64,
    /// Ambient (test) temperature, °C; all metallic parts assumed at it.
    pub ambient_temp: f64,
    /// Injected conductor current, A rms.
    pub conductor_current: f64,
}

impl OperatingPoint {
    pub fn validate(&self) -> Result<(), CoreError> {
        if !self.frequency.is_finite() || self.frequency <= 0.0 {
            return Err(CoreError::invalid_spec(
                "frequency",
                format!("must be positive, got {}", self.frequency),
            ));
        }
        if self.conductor_current < 0.0 {
            return Err(CoreError::invalid_spec(
                "current",
                format!("must be non-negative, got {}", self.conductor_current),
            ));
        }
        Ok(())
    }

    pub fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.frequency
    }
}

/// Material set used to compute DC resistances for a cable, with optional
/// measured overrides (Ω/m at 20 °C) taking precedence over the
/// geometry-based defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CableMaterials {
    pub conductor: MaterialProps,
    pub sheath: MaterialProps,
    pub armor: MaterialProps,
    /// Skin-effect coefficient k_s (1.0 for plain stranded conductors).
    pub k_s: f64,
    /// Proximity-effect coefficient k_p.
    pub k_p: f64,
    pub r_c_dc_20_override: Option<f64>,
    pub r_s_dc_20_override: Option<f64>,
    pub r_a_dc_20_override: Option<f64>,
}

impl CableMaterials {
    /// Default material set for a spec: standard constants selected by the
    /// conductor material, lead sheath, steel armor wire.
    pub fn for_spec(spec: &CableSpec) -> Self {
        let conductor = match spec.conductor_material {
            ConductorMaterial::Copper => materials::COPPER,
            ConductorMaterial::Aluminum => materials::ALUMINUM,
        };
        CableMaterials {
            conductor,
            sheath: materials::LEAD,
            armor: materials::STEEL_WIRE,
            k_s: 1.0,
            k_p: 1.0,
            r_c_dc_20_override: None,
            r_s_dc_20_override: None,
            r_a_dc_20_override: None,
        }
    }
}

/// DC resistances of the three metallic parts at a given temperature, Ω/m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcResistances {
    pub r_c_dc: f64,
    pub r_s_dc: f64,
    pub r_a_dc: f64,
}

/// Linear temperature correction R(θ) = R20 (1 + α (θ - 20)).
pub fn dc_resistance_at_temp(r_dc_20: f64, alpha: f64, theta: f64) -> f64 {
    r_dc_20 * (1.0 + alpha * (theta - 20.0))
}

/// DC resistances per unit cable length at `theta` °C.
///
/// Defaults follow the construction: conductor `rho LF / A`, sheath
/// `rho LF / (pi d t_s)` (thin tube), armor `rho LF_a / (N pi/4 d_a^2)`,
/// each with its helical length factor. Measured overrides win.
pub fn dc_resistances(
    spec: &CableSpec,
    geom: &DerivedGeometry,
    mats: &CableMaterials,
    theta: f64,
) -> DcResistances {
    let lf = geom.lay_factor;
    let r_c_20 = mats
        .r_c_dc_20_override
        .unwrap_or_else(|| mats.conductor.resistivity_20c * lf / spec.cross_section);
    let sheath_section = std::f64::consts::PI * geom.mean_sheath_diameter * spec.sheath_thickness;
    let r_s_20 = mats
        .r_s_dc_20_override
        .unwrap_or_else(|| mats.sheath.resistivity_20c * lf / sheath_section);
    let armor_section = f64::from(spec.armor_wire_count)
        * std::f64::consts::FRAC_PI_4
        * spec.armor_wire_diameter
        * spec.armor_wire_diameter;
    let lf_a = armor_lay_factor(spec.armor_mean_diameter, spec.armor_lay_length);
    let r_a_20 = mats
        .r_a_dc_20_override
        .unwrap_or_else(|| mats.armor.resistivity_20c * lf_a / armor_section);
    DcResistances {
        r_c_dc: dc_resistance_at_temp(r_c_20, mats.conductor.temp_coefficient, theta),
        r_s_dc: dc_resistance_at_temp(r_s_20, mats.sheath.temp_coefficient, theta),
        r_a_dc: dc_resistance_at_temp(r_a_20, mats.armor.temp_coefficient, theta),
    }
}

/// Skin and proximity factors with their arguments and any validity warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct SkinProximityFactors {
    pub y_s: f64,
    pub y_p: f64,
    pub x_s: f64,
    pub x_p: f64,
    pub warnings: Vec<Warning>,
}

/// Skin (y_s) and proximity (y_p) effect factors per IEC 60287-1-1 clause 2.1
/// for round conductors in trefoil.
///
/// `r_dc` is the conductor DC resistance at operating temperature (Ω/m),
/// `conductor_diameter` and `spacing` in consistent units (only their ratio
/// enters). Valid for x <= 2.8; larger arguments are flagged, the formula
/// value is still returned.
pub fn skin_proximity_factors(
    r_dc: f64,
    frequency: f64,
    conductor_diameter: f64,
    spacing: f64,
    k_s: f64,
    k_p: f64,
) -> SkinProximityFactors {
    let base = 8.0 * std::f64::consts::PI * frequency * 1e-7 / r_dc;
    let x_s2 = base * k_s;
    let x_p2 = base * k_p;
    let y_s = x_s2 * x_s2 / (192.0 + 0.8 * x_s2 * x_s2);
    let fp = x_p2 * x_p2 / (192.0 + 0.8 * x_p2 * x_p2);
    let ratio = conductor_diameter / spacing;
    let y_p = fp * ratio * ratio * (0.312 * ratio * ratio + 1.18 / (fp + 0.27));
    let x_s = x_s2.sqrt();
    let x_p = x_p2.sqrt();
    let mut warnings = Vec::new();
    if x_s > SKIN_ARGUMENT_LIMIT {
        warnings.push(Warning::SkinFactorOutOfRange {
            which: "x_s",
            x: x_s,
        });
    }
    if x_p > SKIN_ARGUMENT_LIMIT {
        warnings.push(Warning::SkinFactorOutOfRange {
            which: "x_p",
            x: x_p,
        });
    }
    SkinProximityFactors {
        y_s,
        y_p,
        x_s,
        x_p,
        warnings,
    }
}

/// AC conductor resistance R_dc (1 + y_s + y_p).
pub fn conductor_ac_resistance(r_dc: f64, y_s: f64, y_p: f64) -> f64 {
    r_dc * (1.0 + y_s + y_p)
}

/// Sheath reactance per unit length, X = 2 w 1e-7 ln(2s/d), Ω/m.
///
/// Negative (2s < d) is nonphysical for this cable class: flagged, value
/// returned as computed.
pub fn sheath_reactance(
    omega: f64,
    spacing: f64,
    mean_sheath_diameter: f64,
) -> (f64, Option<Warning>) {
    let arg = 2.0 * spacing / mean_sheath_diameter;
    let x = 2.0 * omega * 1e-7 * arg.ln();
    let warning = (arg <= 1.0).then_some(Warning::NonPhysicalSheathSpacing { two_s_over_d: arg });
    (x, warning)
}

/// Sheath circulating-current loss factor,
/// lambda1' = (R_s/R_c) 1.5 / (1 + (R_s/X)^2).
///
/// X = 0 means no mutual coupling and therefore no circulating current: 0.
pub fn lambda1_prime(r_s: f64, r_c_ac: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ratio = r_s / x;
    (r_s / r_c_ac) * 1.5 / (1.0 + ratio * ratio)
}

/// Inputs of the sheath eddy-current loss factor. Lengths in meters,
/// resistances Ω/m, resistivity Ω·m at the operating temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheathEddyParams {
    pub r_s_dc: f64,
    pub r_c_ac: f64,
    pub omega: f64,
    pub sheath_thickness: f64,
    pub sheath_outer_diameter: f64,
    pub spacing: f64,
    pub mean_sheath_diameter: f64,
    pub sheath_resistivity: f64,
}

/// Sheath eddy-current loss factor lambda1'' per IEC 60287-1-1 clause 2.3.6,
/// case of three single-core cables in trefoil formation:
///
/// ```text
/// lambda1'' = (R_s/R_c) [ g_s lambda0 (1 + D1 + D2) + (b1 t_s)^4 / 12 ]
/// g_s      = 1 + (t_s/D_s)^1.74 (b1 D_s - 1.6)
/// b1       = sqrt(4 pi w / (1e7 rho_s))
/// m        = w 1e-7 / R_s
/// lambda0  = 3 (m^2/(1+m^2)) (d/2s)^2
/// D1       = (1.14 m^2.45 + 0.33) (d/2s)^(0.92 m + 1.66),  D2 = 0
/// ```
///
/// The standard states these with t_s, D_s in mm; here all lengths are meters
/// and the mm scale factors are absorbed (b1 D_s 1e-3 -> b1 D_s,
/// (b1 t_s)^4 / 12e12 -> (b1 t_s)^4 / 12).
pub fn lambda1_doubleprime(p: &SheathEddyParams) -> Result<f64, CoreError> {
    for (name, value) in [
        ("r_s_dc", p.r_s_dc),
        ("r_c_ac", p.r_c_ac),
        ("omega", p.omega),
        ("sheath_outer_diameter", p.sheath_outer_diameter),
        ("spacing", p.spacing),
        ("mean_sheath_diameter", p.mean_sheath_diameter),
        ("sheath_resistivity", p.sheath_resistivity),
    ] {
        if !value.is_finite() || value <= 0.0 {
            return Err(CoreError::config(
                match name {
                    "r_s_dc" => "r_s_dc",
                    "r_c_ac" => "r_c_ac",
                    "omega" => "omega",
                    "sheath_outer_diameter" => "sheath_outer_diameter",
                    "spacing" => "spacing",
                    "mean_sheath_diameter" => "mean_sheath_diameter",
                    _ => "sheath_resistivity",
                },
                format!("must be positive, got {value}"),
            ));
        }
    }
    if p.sheath_thickness < 0.0 {
        return Err(CoreError::config(
            "sheath_thickness",
            format!("must be non-negative, got {}", p.sheath_thickness),
        ));
    }
    let beta1 = (4.0 * std::f64::consts::PI * p.omega / (1e7 * p.sheath_resistivity)).sqrt();
    let g_s = 1.0
        + (p.sheath_thickness / p.sheath_outer_diameter).powf(1.74)
            * (beta1 * p.sheath_outer_diameter - 1.6);
    let m = p.omega * 1e-7 / p.r_s_dc;
    let d_over_2s = p.mean_sheath_diameter / (2.0 * p.spacing);
    let lambda0 = 3.0 * (m * m / (1.0 + m * m)) * d_over_2s * d_over_2s;
    let delta1 = (1.14 * m.powf(2.45) + 0.33) * d_over_2s.powf(0.92 * m + 1.66);
    let delta2 = 0.0;
    let thickness_term = (beta1 * p.sheath_thickness).powi(4) / 12.0;
    Ok((p.r_s_dc / p.r_c_ac) * (g_s * lambda0 * (1.0 + delta1 + delta2) + thickness_term))
}

/// Armor loss factor per IEC 60287-1-1 clause 2.4.2.5 (SL-type cables):
///
/// ```text
/// lambda2 = 1.23 (R_a/R_c) (2c/D_a)^2 (1 - (R_c/R_s) lambda1')
///           / ((2.77 R_a 1e6 / w)^2 + 1)
/// ```
///
/// R_a in Ω/m, w in rad/s, c and D_a in consistent units. A negative result
/// (possible when (R_c/R_s) lambda1' > 1) is returned as computed with an
/// out-of-model warning, never clamped.
pub fn lambda2(
    r_a: f64,
    r_c_ac: f64,
    r_s: f64,
    core_center_radius: f64,
    armor_mean_diameter: f64,
    lambda1_prime: f64,
    omega: f64,
) -> (f64, Option<Warning>) {
    let geometry = 2.0 * core_center_radius / armor_mean_diameter;
    let denom_term = 2.77 * r_a * 1e6 / omega;
    let value =
        1.23 * (r_a / r_c_ac) * geometry * geometry * (1.0 - (r_c_ac / r_s) * lambda1_prime)
            / (denom_term * denom_term + 1.0);
    let warning = (value < 0.0).then_some(Warning::NegativeArmorLossFactor { lambda2: value });
    (value, warning)
}

/// Whether the eddy-current subfactor lambda1'' is included in lambda1 for
/// solidly bonded sheaths. The standard neglects it; including it tracks the
/// observed sheath losses better, so `Include` is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SheathEddyMode {
    #[default]
    Include,
    Neglect,
}

/// Loss factors and the electrical quantities they were built from.
#[derive(Debug, Clone, PartialEq)]
pub struct IecLossFactors {
    pub lambda1_prime: f64,
    pub lambda1_doubleprime: f64,
    pub lambda2: f64,
    /// Sheath reactance, Ω/m.
    pub x: f64,
    /// AC conductor resistance, Ω/m.
    pub r_c_ac: f64,
    /// Sheath resistance used in the factors (DC at temperature), Ω/m.
    pub r_s: f64,
    /// Armor resistance, Ω/m.
    pub r_a: f64,
}

/// Complete IEC loss allocation of one cable at one operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct LossBreakdown {
    /// Conductor losses 3 R_c I^2, W/m.
    pub p_c: f64,
    /// Sheath losses lambda1 P_c, W/m.
    pub p_s: f64,
    /// Armor losses lambda2 P_c, W/m.
    pub p_a: f64,
    pub factors: IecLossFactors,
    pub dc: DcResistances,
    pub skin: SkinProximityFactors,
    pub mode: SheathEddyMode,
    pub warnings: Vec<Warning>,
}

/// Full IEC loss allocation: DC resistances at ambient temperature, skin and
/// proximity corrected conductor resistance, loss factors, and the
/// allocation P_c / P_s / P_a.
pub fn allocate_iec(
    spec: &CableSpec,
    geom: &DerivedGeometry,
    op: &OperatingPoint,
    mats: &CableMaterials,
    mode: SheathEddyMode,
) -> Result<LossBreakdown, CoreError> {
    op.validate()?;
    let omega = op.omega();
    let dc = dc_resistances(spec, geom, mats, op.ambient_temp);
    let skin = skin_proximity_factors(
        dc.r_c_dc,
        op.frequency,
        spec.conductor_diameter,
        geom.spacing,
        mats.k_s,
        mats.k_p,
    );
    let r_c_ac = conductor_ac_resistance(dc.r_c_dc, skin.y_s, skin.y_p);
    let (x, x_warning) = sheath_reactance(omega, geom.spacing, geom.mean_sheath_diameter);
    let l1p = lambda1_prime(dc.r_s_dc, r_c_ac, x);
    let l1pp = lambda1_doubleprime(&SheathEddyParams {
        r_s_dc: dc.r_s_dc,
        r_c_ac,
        omega,
        sheath_thickness: spec.sheath_thickness,
        sheath_outer_diameter: spec.sheath_outer_diameter,
        spacing: geom.spacing,
        mean_sheath_diameter: geom.mean_sheath_diameter,
        sheath_resistivity: mats.sheath.resistivity_at(op.ambient_temp),
    })?;
    let (l2, l2_warning) = lambda2(
        dc.r_a_dc,
        r_c_ac,
        dc.r_s_dc,
        spec.core_center_radius,
        spec.armor_mean_diameter,
        l1p,
        omega,
    );
    let lambda1 = match mode {
        SheathEddyMode::Include => l1p + l1pp,
        SheathEddyMode::Neglect => l1p,
    };
    let i = op.conductor_current;
    let p_c = 3.0 * r_c_ac * i * i;
    let mut warnings = skin.warnings.clone();
    warnings.extend(x_warning);
    warnings.extend(l2_warning);
    Ok(LossBreakdown {
        p_c,
        p_s: lambda1 * p_c,
        p_a: l2 * p_c,
        factors: IecLossFactors {
            lambda1_prime: l1p,
            lambda1_doubleprime: l1pp,
            lambda2: l2,
            x,
            r_c_ac,
            r_s: dc.r_s_dc,
            r_a: dc.r_a_dc,
        },
        dc,
        skin,
        mode,
        warnings,
    })
}
