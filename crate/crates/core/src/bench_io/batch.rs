//! Batch evaluation of many cable files.
//!
//! Each input file is processed independently: a file that fails to parse or
//! validate contributes exactly one error row and never aborts the rest.
//! Output order is deterministic (input order, then method order).

use std::path::{Path, PathBuf};

use crate::cable_model::derive_geometry;
use crate::em_pipeline::{improved_em, legacy_em, original_em, EmConfig};
use crate::error::CoreError;
use crate::iec60287::{
    allocate_iec, conductor_ac_resistance, lambda1_doubleprime, SheathEddyMode, SheathEddyParams,
};

use super::format::{load_cable_file, CableFile};
use super::report::ReportRow;

/// Computations a batch run can apply per cable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatchMethod {
    /// Standard loss allocation at the operating point (no measurements
    /// needed).
    Iec,
    /// Difference methods on the cable's test pair.
    Original,
    Legacy,
    Improved,
}

impl BatchMethod {
    pub const ALL: [BatchMethod; 4] = [
        BatchMethod::Iec,
        BatchMethod::Original,
        BatchMethod::Legacy,
        BatchMethod::Improved,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BatchMethod::Iec => "iec",
            BatchMethod::Original => "original",
            BatchMethod::Legacy => "legacy",
            BatchMethod::Improved => "improved",
        }
    }
}

impl std::str::FromStr for BatchMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iec" => Ok(BatchMethod::Iec),
            "original" => Ok(BatchMethod::Original),
            "legacy" => Ok(BatchMethod::Legacy),
            "improved" => Ok(BatchMethod::Improved),
            other => Err(format!(
                "unknown method '{other}' (expected iec, original, legacy or improved)"
            )),
        }
    }
}

/// Identifier for a cable source: the file stem.
fn cable_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Eddy-current loss subfactor at the test state, for the legacy method.
fn lambda1_doubleprime_at_test(file: &CableFile) -> Result<f64, CoreError> {
    let m = file
        .measurements
        .as_ref()
        .expect("caller checks measurements");
    let geom = derive_geometry(&file.spec)?;
    lambda1_doubleprime(&SheathEddyParams {
        r_s_dc: m.r_s_dc,
        r_c_ac: conductor_ac_resistance(m.r_c_dc, m.y_s, m.y_p),
        omega: file.operating.omega(),
        sheath_thickness: file.spec.sheath_thickness,
        sheath_outer_diameter: file.spec.sheath_outer_diameter,
        spacing: geom.spacing,
        mean_sheath_diameter: geom.mean_sheath_diameter,
        sheath_resistivity: file.materials.sheath.resistivity_at(m.theta_test),
    })
}

/// Rows for one parsed cable under one method.
pub fn rows_for_cable(
    id: &str,
    file: &CableFile,
    method: BatchMethod,
    mode: SheathEddyMode,
    cfg: &EmConfig,
) -> ReportRow {
    let result = (|| -> Result<ReportRow, CoreError> {
        let geom = derive_geometry(&file.spec)?;
        match method {
            BatchMethod::Iec => {
                let breakdown =
                    allocate_iec(&file.spec, &geom, &file.operating, &file.materials, mode)?;
                Ok(ReportRow::from_iec(
                    id,
                    file.operating.frequency,
                    file.operating.ambient_temp,
                    file.operating.conductor_current,
                    &breakdown,
                    &file.load_warnings,
                ))
            }
            BatchMethod::Original | BatchMethod::Legacy | BatchMethod::Improved => {
                let m = file.measurements.as_ref().ok_or_else(|| {
                    CoreError::config(
                        "measurements",
                        format!("method '{}' needs a [measurements] section", method.name()),
                    )
                })?;
                let allocation = match method {
                    BatchMethod::Original => original_em(m, cfg)?,
                    BatchMethod::Legacy => legacy_em(m, lambda1_doubleprime_at_test(file)?, cfg)?,
                    BatchMethod::Improved => improved_em(m, &geom, &file.spec, cfg)?,
                    BatchMethod::Iec => unreachable!(),
                };
                Ok(ReportRow::from_em(
                    id,
                    file.operating.frequency,
                    &allocation,
                    m,
                    &file.load_warnings,
                ))
            }
        }
    })();
    result.unwrap_or_else(|e| ReportRow::from_error(id, method.name(), e))
}

/// Runs every method over every input file. One bad file yields exactly one
/// error row; the batch continues.
pub fn run_batch(
    inputs: &[PathBuf],
    methods: &[BatchMethod],
    mode: SheathEddyMode,
    cfg: &EmConfig,
) -> Result<Vec<ReportRow>, CoreError> {
    if inputs.is_empty() {
        return Err(CoreError::EmptyInput("batch inputs"));
    }
    if methods.is_empty() {
        return Err(CoreError::EmptyInput("batch methods"));
    }
    let mut rows = Vec::with_capacity(inputs.len() * methods.len());
    for path in inputs {
        let id = cable_id(path);
        match load_cable_file(path) {
            Err(e) => rows.push(ReportRow::from_error(&id, "-", e)),
            Ok(file) => {
                for &method in methods {
                    rows.push(rows_for_cable(&id, &file, method, mode, cfg));
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench_io::templates::{template_names, template_text};
    use std::io::Write as _;

    fn materialize_templates(dir: &Path) -> Vec<PathBuf> {
        template_names()
            .iter()
            .map(|name| {
                let path = dir.join(format!("{name}.cable"));
                let mut f = std::fs::File::create(&path).unwrap();
                f.write_all(template_text(name).unwrap().as_bytes())
                    .unwrap();
                path
            })
            .collect()
    }

    #[test]
    fn batch_cardinality_six_templates_three_em_methods() {
        let dir = tempfile::tempdir().unwrap();
        let inputs = materialize_templates(dir.path());
        let rows = run_batch(
            &inputs,
            &[
                BatchMethod::Original,
                BatchMethod::Legacy,
                BatchMethod::Improved,
            ],
            SheathEddyMode::Include,
            &EmConfig::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 18);
        // The two templates without measurements produce error rows.
        let errors = rows.iter().filter(|r| r.status == "error").count();
        assert_eq!(errors, 6);
        assert!(rows.iter().filter(|r| r.status == "error").all(|r| r
            .error
            .as_deref()
            .unwrap()
            .contains("measurements")));
    }

    #[test]
    fn corrupt_file_is_isolated() {
        let dir = tempfile::tempdir().unwrap();
        let mut inputs = materialize_templates(dir.path());
        let bad = dir.path().join("broken.cable");
        std::fs::write(&bad, "[cable]\nvoltage_kv = oops\n").unwrap();
        inputs.push(bad);
        let rows = run_batch(
            &inputs,
            &[BatchMethod::Iec],
            SheathEddyMode::Include,
            &EmConfig::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows.iter().filter(|r| r.status == "error").count(), 1);
        assert_eq!(rows.iter().filter(|r| r.status == "ok").count(), 6);
    }

    #[test]
    fn empty_inputs_rejected() {
        assert!(matches!(
            run_batch(
                &[],
                &[BatchMethod::Iec],
                SheathEddyMode::Include,
                &EmConfig::default()
            ),
            Err(CoreError::EmptyInput(_))
        ));
    }
}
