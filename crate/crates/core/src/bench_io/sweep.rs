//! Parametric sweeps over one cable parameter.
//!
//! Each sweep point clones the base cable, substitutes the swept value,
//! re-derives geometry and reports the standard loss allocation together
//! with the correction factors, so fit-domain boundaries are visible across
//! the sweep. A point whose value violates the cable invariants becomes a
//! row-level error entry instead of aborting the sweep.

use crate::cable_model::derive_geometry;
use crate::corrections::correction_factors;
use crate::em_pipeline::EmConfig;
use crate::error::CoreError;
use crate::iec60287::SheathEddyMode;

use super::batch::{rows_for_cable, BatchMethod};
use super::format::CableFile;
use super::report::ReportRow;

/// Parameters a sweep can vary. Values are interpreted in the file-format
/// units of the parameter (mm for the wire diameter, m for lay lengths,
/// °C, Hz).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    /// Armor permeability real part mu'.
    MuPrime,
    /// Phase lay length L_c, m.
    ConductorLayLength,
    /// Armor lay length L_a, m.
    ArmorLayLength,
    /// Armor wire diameter d_a, mm.
    ArmorWireDiameter,
    /// Armor wire count N (integer).
    ArmorWireCount,
    /// Ambient temperature, °C.
    AmbientTemperature,
    /// System frequency, Hz.
    Frequency,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::MuPrime => "mu_real",
            SweepParameter::ConductorLayLength => "L_c_m",
            SweepParameter::ArmorLayLength => "L_a_m",
            SweepParameter::ArmorWireDiameter => "d_a_mm",
            SweepParameter::ArmorWireCount => "n_wires",
            SweepParameter::AmbientTemperature => "temperature_c",
            SweepParameter::Frequency => "frequency_hz",
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mu_real" | "mu_prime" => Ok(SweepParameter::MuPrime),
            "L_c_m" | "L_c" => Ok(SweepParameter::ConductorLayLength),
            "L_a_m" | "L_a" => Ok(SweepParameter::ArmorLayLength),
            "d_a_mm" | "d_a" => Ok(SweepParameter::ArmorWireDiameter),
            "n_wires" => Ok(SweepParameter::ArmorWireCount),
            "temperature_c" | "theta_amb" => Ok(SweepParameter::AmbientTemperature),
            "frequency_hz" | "frequency" => Ok(SweepParameter::Frequency),
            other => Err(format!(
                "unknown sweep parameter '{other}' (expected mu_real, L_c_m, L_a_m, d_a_mm, \
                 n_wires, temperature_c or frequency_hz)"
            )),
        }
    }
}

/// Values of a sweep: an inclusive linear range or an explicit list.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepValues {
    Range { start: f64, stop: f64, steps: usize },
    List(Vec<f64>),
}

impl SweepValues {
    fn expand(&self) -> Result<Vec<f64>, CoreError> {
        match self {
            SweepValues::List(values) => {
                if values.is_empty() {
                    Err(CoreError::EmptyInput("sweep values"))
                } else {
                    Ok(values.clone())
                }
            }
            SweepValues::Range { start, stop, steps } => match steps {
                0 => Err(CoreError::EmptyInput("sweep steps")),
                1 => Ok(vec![*start]),
                n => {
                    let step = (stop - start) / (*n - 1) as f64;
                    Ok((0..*n).map(|i| start + step * i as f64).collect())
                }
            },
        }
    }
}

/// A sweep description: which parameter, over which values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub parameter: SweepParameter,
    pub values: SweepValues,
}

/// Applies one swept value to a copy of the base cable.
fn apply(base: &CableFile, parameter: SweepParameter, value: f64) -> Result<CableFile, CoreError> {
    let mut file = base.clone();
    match parameter {
        SweepParameter::MuPrime => file.spec.armor_mu_real = value,
        SweepParameter::ConductorLayLength => file.spec.conductor_lay_length = value,
        SweepParameter::ArmorLayLength => file.spec.armor_lay_length = value,
        SweepParameter::ArmorWireDiameter => file.spec.armor_wire_diameter = value * 1e-3,
        SweepParameter::ArmorWireCount => {
            if value < 1.0 || value.fract() != 0.0 || value > f64::from(u32::MAX) {
                return Err(CoreError::invalid_spec(
                    "n_wires",
                    format!("swept wire count must be a positive integer, got {value}"),
                ));
            }
            file.spec.armor_wire_count = value as u32;
        }
        SweepParameter::AmbientTemperature => file.operating.ambient_temp = value,
        SweepParameter::Frequency => file.operating.frequency = value,
    }
    file.spec.validate()?;
    file.operating.validate()?;
    Ok(file)
}

/// Runs the sweep: one row per point, labelled `id[param=value]`, standard
/// allocation plus correction factors. Invalid points become error rows.
pub fn run_sweep(
    base: &CableFile,
    base_id: &str,
    plan: &SweepPlan,
    mode: SheathEddyMode,
) -> Result<Vec<ReportRow>, CoreError> {
    let values = plan.values.expand()?;
    let cfg = EmConfig::default();
    let mut rows = Vec::with_capacity(values.len());
    for value in values {
        let id = format!("{base_id}[{}={}]", plan.parameter.name(), value);
        match apply(base, plan.parameter, value) {
            Err(e) => rows.push(ReportRow::from_error(&id, "iec", e)),
            Ok(file) => {
                let mut row = rows_for_cable(&id, &file, BatchMethod::Iec, mode, &cfg);
                if row.status == "ok" {
                    // Attach the corrections so fit-domain flags show up in
                    // sweep output.
                    match derive_geometry(&file.spec) {
                        Ok(geom) => {
                            let corr = correction_factors(&file.spec, &geom);
                            row.f_c = Some(corr.f_c);
                            row.y_c = Some(corr.y_c);
                            row.y_a = Some(corr.y_a);
                            row.warnings
                                .extend(corr.flags.iter().map(|w| w.to_string()));
                        }
                        Err(e) => row = ReportRow::from_error(&id, "iec", e),
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(rows)
}
