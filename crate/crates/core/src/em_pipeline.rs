//! Armor-loss allocation from paired unarmored/armored cable tests.
//!
//! A laboratory measures the total dissipated power of two identical cable
//! pieces, one without armor (subscript 0) and one with (subscript 1), at the
//! same injected conductor current, together with DC resistances and sheath
//! currents. The armor losses follow by difference:
//!
//! ```text
//! P_a = dP_m - dP_c^J - dP_s^J - dP_s^ec
//! ```
//!
//! Three variants of estimating the difference terms are implemented:
//!
//! - **original**: conductor AC resistance identical in both tests
//!   (dP_c^J = 0), sheath Joule losses from DC resistance
//!   (dP_s^J = 3 R_s (I_s1^2 - I_s0^2)), eddy-current change neglected;
//! - **legacy**: fixed numerical corrections P_c1 ~ 1.02 P_c0 and
//!   P_s1^ec ~ 1.35 P_s0^ec on top of the original method;
//! - **improved**: the analytical correction factors of
//!   [`crate::corrections`] replace the numerical ones:
//!   dP_c^J = 3 R_c_dc y_p I_c^2 (f_c - 1),
//!   dP_s^J = 3 R_s_dc (1 + y_c) ((1 + y_a) I_s1^2 - I_s0^2),
//!   dP_s^ec = 0.
//!
//! All tests are taken at ambient temperature over a short period, so the
//! measured DC resistances are used as-is, no thermal rescaling.

use crate::cable_model::{CableSpec, DerivedGeometry};
use crate::corrections::{correction_factors, CorrectionFactors};
use crate::error::{CoreError, Warning};

/// Quantities reported by a laboratory (or a virtual test bench) for the
/// unarmored/armored test pair. Resistances Ω/m at the test temperature,
/// powers W/m, currents A rms.
#[derive(Debug, Clone, PartialEq)]
pub struct TestMeasurements {
    /// Measured total power, unarmored piece.
    pub p_m0: f64,
    /// Measured total power, armored piece.
    pub p_m1: f64,
    /// Injected conductor current in each test (the methods require these
    /// to be equal).
    pub i_c0: f64,
    pub i_c1: f64,
    /// Sheath currents in each test.
    pub i_s0: f64,
    pub i_s1: f64,
    /// Measured DC resistances, Ω/m.
    pub r_c_dc: f64,
    pub r_s_dc: f64,
    pub r_a_dc: f64,
    /// Test (ambient) temperature, °C.
    pub theta_test: f64,
    /// Skin and proximity factors of this conductor, pinned from the test
    /// report or computed from geometry.
    pub y_s: f64,
    pub y_p: f64,
    /// Per-part temperatures, when the two tests reached different thermal
    /// regimens. Carried for reporting; the difference methods themselves
    /// always evaluate at the measured resistances.
    pub conductor_temp: Option<f64>,
    pub sheath_temp: Option<f64>,
    pub armor_temp: Option<f64>,
}

impl TestMeasurements {
    pub fn validate(&self) -> Result<(), CoreError> {
        for (name, value) in [
            ("r_c_dc", self.r_c_dc),
            ("r_s_dc", self.r_s_dc),
            ("r_a_dc", self.r_a_dc),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(CoreError::config(
                    match name {
                        "r_c_dc" => "r_c_dc",
                        "r_s_dc" => "r_s_dc",
                        _ => "r_a_dc",
                    },
                    format!("measured resistance must be positive, got {value}"),
                ));
            }
        }
        Ok(())
    }

    /// Measured power difference dP_m = P_m1 - P_m0.
    pub fn delta_p_m(&self) -> f64 {
        self.p_m1 - self.p_m0
    }
}

/// Which difference-method variant produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmMethod {
    Original,
    Legacy,
    Improved,
}

impl EmMethod {
    pub fn name(&self) -> &'static str {
        match self {
            EmMethod::Original => "original",
            EmMethod::Legacy => "legacy",
            EmMethod::Improved => "improved",
        }
    }
}

impl std::fmt::Display for EmMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Armor-loss estimate with its difference components. The identity
/// `p_a = delta_p_m - delta_p_c_j - delta_p_s_j - delta_p_s_ec` holds
/// exactly by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationResult {
    pub method: EmMethod,
    /// Estimated armor losses, W/m.
    pub p_a: f64,
    pub delta_p_m: f64,
    pub delta_p_c_j: f64,
    pub delta_p_s_j: f64,
    pub delta_p_s_ec: f64,
    /// Correction factors used (improved method only).
    pub corrections: Option<CorrectionFactors>,
    pub warnings: Vec<Warning>,
}

impl AllocationResult {
    fn from_components(
        method: EmMethod,
        delta_p_m: f64,
        delta_p_c_j: f64,
        delta_p_s_j: f64,
        delta_p_s_ec: f64,
        corrections: Option<CorrectionFactors>,
        mut warnings: Vec<Warning>,
    ) -> Self {
        let p_a = delta_p_m - delta_p_c_j - delta_p_s_j - delta_p_s_ec;
        if delta_p_m < 0.0 {
            warnings.push(Warning::ArmoredPowerBelowUnarmored { delta_p_m });
        }
        if p_a < 0.0 {
            warnings.push(Warning::NegativeArmorLoss { p_a });
        }
        AllocationResult {
            method,
            p_a,
            delta_p_m,
            delta_p_c_j,
            delta_p_s_j,
            delta_p_s_ec,
            corrections,
            warnings,
        }
    }
}

/// Tunables of the difference methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmConfig {
    /// Maximum relative mismatch between the two injected conductor
    /// currents before the equal-current working assumption is considered
    /// violated.
    pub current_tolerance: f64,
}

impl Default for EmConfig {
    fn default() -> Self {
        EmConfig {
            current_tolerance: 1e-3,
        }
    }
}

/// Checks the equal-current assumption and returns the common test current.
fn common_current(m: &TestMeasurements, cfg: &EmConfig) -> Result<f64, CoreError> {
    let scale = m.i_c0.abs().max(m.i_c1.abs());
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mismatch = (m.i_c0 - m.i_c1).abs() / scale;
    if mismatch > cfg.current_tolerance {
        return Err(CoreError::AssumptionViolated(format!(
            "conductor currents differ by {:.3}% (I_c0 = {} A, I_c1 = {} A); the difference \
             methods require the same current in both tests (tolerance {:.3}%)",
            mismatch * 100.0,
            m.i_c0,
            m.i_c1,
            cfg.current_tolerance * 100.0
        )));
    }
    Ok(0.5 * (m.i_c0 + m.i_c1))
}

/// Original difference method: identical conductor resistance in both tests,
/// DC sheath resistance, eddy-current change neglected.
pub fn original_em(m: &TestMeasurements, cfg: &EmConfig) -> Result<AllocationResult, CoreError> {
    m.validate()?;
    common_current(m, cfg)?;
    let delta_p_s_j = 3.0 * m.r_s_dc * (m.i_s1 * m.i_s1 - m.i_s0 * m.i_s0);
    Ok(AllocationResult::from_components(
        EmMethod::Original,
        m.delta_p_m(),
        0.0,
        delta_p_s_j,
        0.0,
        None,
        Vec::new(),
    ))
}

/// Legacy corrected method: the armored-cable conductor losses are taken as
/// 1.02 of the unarmored ones and the sheath eddy losses as 1.35, so
///
/// ```text
/// P_a = dP_m - 3 R_c I_c^2 (0.02 + 0.35 lambda1'') - 3 R_s (I_s1^2 - I_s0^2)
/// ```
///
/// with `R_c = R_c_dc (1 + y_s + y_p)` and `R_s = R_s_dc`. The 0.02 lump is
/// the conductor Joule excess and the `0.35 lambda1''` lump the eddy-current
/// excess, so they land in `delta_p_c_j` and `delta_p_s_ec` respectively.
pub fn legacy_em(
    m: &TestMeasurements,
    lambda1_doubleprime: f64,
    cfg: &EmConfig,
) -> Result<AllocationResult, CoreError> {
    m.validate()?;
    let i_c = common_current(m, cfg)?;
    let r_c_ac = crate::iec60287::conductor_ac_resistance(m.r_c_dc, m.y_s, m.y_p);
    let p_c0 = 3.0 * r_c_ac * i_c * i_c;
    let delta_p_c_j = 0.02 * p_c0;
    let delta_p_s_ec = 0.35 * lambda1_doubleprime * p_c0;
    let delta_p_s_j = 3.0 * m.r_s_dc * (m.i_s1 * m.i_s1 - m.i_s0 * m.i_s0);
    Ok(AllocationResult::from_components(
        EmMethod::Legacy,
        m.delta_p_m(),
        delta_p_c_j,
        delta_p_s_j,
        delta_p_s_ec,
        None,
        Vec::new(),
    ))
}

/// Improved method with explicitly supplied correction factors.
///
/// [`improved_em`] computes the factors from the cable geometry; this entry
/// point exists for pinned factors and degeneracy checks (`f_c = 1`,
/// `y_c = y_a = 0` reproduces the original method exactly).
pub fn improved_em_with_factors(
    m: &TestMeasurements,
    factors: CorrectionFactors,
    cfg: &EmConfig,
) -> Result<AllocationResult, CoreError> {
    m.validate()?;
    let i_c = common_current(m, cfg)?;
    let delta_p_c_j = 3.0 * m.r_c_dc * m.y_p * i_c * i_c * (factors.f_c - 1.0);
    let delta_p_s_j = 3.0
        * m.r_s_dc
        * (1.0 + factors.y_c)
        * ((1.0 + factors.y_a) * m.i_s1 * m.i_s1 - m.i_s0 * m.i_s0);
    let warnings = factors.flags.clone();
    Ok(AllocationResult::from_components(
        EmMethod::Improved,
        m.delta_p_m(),
        delta_p_c_j,
        delta_p_s_j,
        0.0,
        Some(factors),
        warnings,
    ))
}

/// Improved difference method: analytical corrections evaluated at the test
/// geometry and armor permeability.
pub fn improved_em(
    m: &TestMeasurements,
    geom: &DerivedGeometry,
    spec: &CableSpec,
    cfg: &EmConfig,
) -> Result<AllocationResult, CoreError> {
    improved_em_with_factors(m, correction_factors(spec, geom), cfg)
}

/// One method's estimate against a reference armor loss.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodError {
    pub method: EmMethod,
    pub p_a: f64,
    /// Signed relative difference to the reference, percent.
    pub relative_error_pct: f64,
}

/// All three methods evaluated against an externally supplied reference P_a.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodComparison {
    pub reference_p_a: f64,
    pub methods: Vec<MethodError>,
}

/// Runs the three methods on the same measurements and reports each one's
/// signed relative error against `reference_p_a` (W/m, e.g. from a field
/// solution or an independent measurement).
pub fn compare_methods(
    m: &TestMeasurements,
    geom: &DerivedGeometry,
    spec: &CableSpec,
    lambda1_doubleprime: f64,
    reference_p_a: f64,
    cfg: &EmConfig,
) -> Result<MethodComparison, CoreError> {
    if !reference_p_a.is_finite() || reference_p_a <= 0.0 {
        return Err(CoreError::InvalidReference(format!(
            "reference P_a must be positive, got {reference_p_a}"
        )));
    }
    let results = [
        original_em(m, cfg)?,
        legacy_em(m, lambda1_doubleprime, cfg)?,
        improved_em(m, geom, spec, cfg)?,
    ];
    let methods = results
        .into_iter()
        .map(|r| MethodError {
            method: r.method,
            p_a: r.p_a,
            relative_error_pct: (r.p_a - reference_p_a) / reference_p_a * 100.0,
        })
        .collect();
    Ok(MethodComparison {
        reference_p_a,
        methods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cable_model::derive_geometry;
    use approx::assert_relative_eq;

    /// Table-derived 30 kV test pair: only the power difference is known,
    /// so p_m0 is set to zero and p_m1 carries the difference.
    pub(crate) fn measurements_30kv() -> TestMeasurements {
        let skin = crate::iec60287::skin_proximity_factors(
            0.128e-3,
            50.0,
            13.4e-3,
            40.9976426152e-3,
            1.0,
            1.0,
        );
        TestMeasurements {
            p_m0: 0.0,
            p_m1: 0.868,
            i_c0: 200.0,
            i_c1: 200.0,
            i_s0: 8.97,
            i_s1: 12.09,
            r_c_dc: 0.128e-3,
            r_s_dc: 1.194e-3,
            r_a_dc: 0.168e-3,
            theta_test: 30.0,
            y_s: skin.y_s,
            y_p: skin.y_p,
            conductor_temp: None,
            sheath_temp: None,
            armor_temp: None,
        }
    }

    #[test]
    fn original_em_30kv() {
        let r = original_em(&measurements_30kv(), &EmConfig::default()).unwrap();
        assert_eq!(r.delta_p_c_j, 0.0);
        assert_eq!(r.delta_p_s_ec, 0.0);
        assert_relative_eq!(r.delta_p_s_j, 0.2353631904, max_relative = 1e-9);
        assert_relative_eq!(r.p_a, 0.6326368096, max_relative = 1e-9);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn original_em_zero_difference() {
        let mut m = measurements_30kv();
        m.p_m1 = m.p_m0;
        m.i_s1 = m.i_s0;
        let r = original_em(&m, &EmConfig::default()).unwrap();
        assert_eq!(r.p_a, 0.0);
    }

    #[test]
    fn original_em_negative_p_a_warns() {
        let mut m = measurements_30kv();
        m.p_m1 = m.p_m0; // equal measured powers but larger armored sheath current
        let r = original_em(&m, &EmConfig::default()).unwrap();
        assert!(r.p_a < 0.0);
        assert!(r
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::NegativeArmorLoss { .. })));
    }

    #[test]
    fn current_mismatch_rejected() {
        let mut m = measurements_30kv();
        m.i_c1 = 201.0; // 0.5% off
        let err = original_em(&m, &EmConfig::default()).unwrap_err();
        assert!(matches!(err, CoreError::AssumptionViolated(_)));
        // A looser tolerance admits it.
        assert!(original_em(
            &m,
            &EmConfig {
                current_tolerance: 0.01
            }
        )
        .is_ok());
    }

    #[test]
    fn legacy_em_reduces_to_original_without_corrections() {
        let mut m = measurements_30kv();
        m.i_c0 = 0.0;
        m.i_c1 = 0.0;
        let legacy = legacy_em(&m, 0.0, &EmConfig::default()).unwrap();
        let original = original_em(&m, &EmConfig::default()).unwrap();
        assert_eq!(legacy.p_a, original.p_a);
        assert_eq!(legacy.delta_p_c_j, 0.0);
        assert_eq!(legacy.delta_p_s_ec, 0.0);
    }

    #[test]
    fn legacy_em_golden_30kv() {
        // lambda1'' evaluated at the test state (frozen in the iec60287
        // tests) and the tabulated measurements.
        let r = legacy_em(&measurements_30kv(), 3.8661356938e-3, &EmConfig::default()).unwrap();
        assert_relative_eq!(r.p_a, 0.3022550351, max_relative = 1e-8);
    }

    #[test]
    fn improved_em_full_chain_30kv() {
        let spec = crate::test_fixtures::spec_30kv();
        let geom = derive_geometry(&spec).unwrap();
        let r = improved_em(&measurements_30kv(), &geom, &spec, &EmConfig::default()).unwrap();
        assert_relative_eq!(r.delta_p_c_j, 0.0417732318, max_relative = 1e-8);
        assert_relative_eq!(r.delta_p_s_j, 0.3081575676, max_relative = 1e-8);
        assert_eq!(r.delta_p_s_ec, 0.0);
        assert_relative_eq!(r.p_a, 0.5180692007, max_relative = 1e-8);
        let corr = r.corrections.unwrap();
        assert_relative_eq!(corr.f_c, 2.1774625014, max_relative = 1e-9);
    }

    #[test]
    fn improved_em_identity_is_exact() {
        let spec = crate::test_fixtures::spec_30kv();
        let geom = derive_geometry(&spec).unwrap();
        let r = improved_em(&measurements_30kv(), &geom, &spec, &EmConfig::default()).unwrap();
        assert_eq!(
            r.p_a,
            r.delta_p_m - r.delta_p_c_j - r.delta_p_s_j - r.delta_p_s_ec
        );
    }

    #[test]
    fn improved_degenerates_to_original() {
        let m = measurements_30kv();
        let neutral = CorrectionFactors {
            f_c: 1.0,
            y_c: 0.0,
            y_a: 0.0,
            flags: Vec::new(),
        };
        let improved = improved_em_with_factors(&m, neutral, &EmConfig::default()).unwrap();
        let original = original_em(&m, &EmConfig::default()).unwrap();
        assert_eq!(improved.p_a, original.p_a);
        assert_eq!(improved.delta_p_c_j, 0.0);
        assert_eq!(improved.delta_p_s_j, original.delta_p_s_j);
    }

    #[test]
    fn compare_methods_30kv() {
        let spec = crate::test_fixtures::spec_30kv();
        let geom = derive_geometry(&spec).unwrap();
        let reference = 0.518 / 1.023;
        let cmp = compare_methods(
            &measurements_30kv(),
            &geom,
            &spec,
            3.8661356938e-3,
            reference,
            &EmConfig::default(),
        )
        .unwrap();
        let improved = cmp
            .methods
            .iter()
            .find(|e| e.method == EmMethod::Improved)
            .unwrap();
        assert_relative_eq!(improved.relative_error_pct, 2.313666, max_relative = 1e-5);
        let original = cmp
            .methods
            .iter()
            .find(|e| e.method == EmMethod::Original)
            .unwrap();
        assert_relative_eq!(original.relative_error_pct, 24.939663, max_relative = 1e-5);
    }

    #[test]
    fn compare_methods_rejects_bad_reference() {
        let spec = crate::test_fixtures::spec_30kv();
        let geom = derive_geometry(&spec).unwrap();
        let err = compare_methods(
            &measurements_30kv(),
            &geom,
            &spec,
            0.0,
            0.0,
            &EmConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CoreError::InvalidReference(_)));
    }
}
