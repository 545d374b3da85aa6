//! Report rows and CSV/JSON emission.
//!
//! One [`ReportRow`] per (cable, method) pair or sweep point, with a fixed
//! column order. Resistances are reported in Ω/km, powers in W/m. Fields
//! that do not apply to a method are left empty (CSV) / null (JSON).
//! Formatting is fully deterministic: identical inputs give byte-identical
//! output, no timestamps or ambient state.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::em_pipeline::AllocationResult;
use crate::error::{CoreError, Warning};
use crate::iec60287::LossBreakdown;

/// Ω/m -> Ω/km for presentation.
const TO_KM: f64 = 1e3;

/// One output row of a batch or sweep run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub cable: String,
    pub method: String,
    /// "ok" for a computed row, "error" for a per-cable failure entry.
    pub status: String,
    pub frequency_hz: Option<f64>,
    pub temperature_c: Option<f64>,
    pub current_a: Option<f64>,
    pub r_c_dc_ohm_km: Option<f64>,
    pub r_s_dc_ohm_km: Option<f64>,
    pub r_a_dc_ohm_km: Option<f64>,
    pub r_c_ac_ohm_km: Option<f64>,
    pub x_ohm_km: Option<f64>,
    pub y_s: Option<f64>,
    pub y_p: Option<f64>,
    pub lambda1_prime: Option<f64>,
    pub lambda1_doubleprime: Option<f64>,
    pub lambda2: Option<f64>,
    pub f_c: Option<f64>,
    pub y_c: Option<f64>,
    pub y_a: Option<f64>,
    pub p_c_w_m: Option<f64>,
    pub p_s_w_m: Option<f64>,
    pub p_a_w_m: Option<f64>,
    pub delta_p_m_w_m: Option<f64>,
    pub delta_p_c_j_w_m: Option<f64>,
    pub delta_p_s_j_w_m: Option<f64>,
    pub delta_p_s_ec_w_m: Option<f64>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
}

impl ReportRow {
    /// Row with every value column empty.
    pub fn empty(cable: impl Into<String>, method: impl Into<String>) -> Self {
        ReportRow {
            cable: cable.into(),
            method: method.into(),
            status: "ok".to_string(),
            frequency_hz: None,
            temperature_c: None,
            current_a: None,
            r_c_dc_ohm_km: None,
            r_s_dc_ohm_km: None,
            r_a_dc_ohm_km: None,
            r_c_ac_ohm_km: None,
            x_ohm_km: None,
            y_s: None,
            y_p: None,
            lambda1_prime: None,
            lambda1_doubleprime: None,
            lambda2: None,
            f_c: None,
            y_c: None,
            y_a: None,
            p_c_w_m: None,
            p_s_w_m: None,
            p_a_w_m: None,
            delta_p_m_w_m: None,
            delta_p_c_j_w_m: None,
            delta_p_s_j_w_m: None,
            delta_p_s_ec_w_m: None,
            warnings: Vec::new(),
            error: None,
        }
    }

    /// Failure entry for a cable (or cable/method pair).
    pub fn from_error(
        cable: impl Into<String>,
        method: impl Into<String>,
        error: impl std::fmt::Display,
    ) -> Self {
        let mut row = ReportRow::empty(cable, method);
        row.status = "error".to_string();
        row.error = Some(error.to_string());
        row
    }

    /// Row for a standard loss allocation at an operating point.
    pub fn from_iec(
        cable: impl Into<String>,
        frequency: f64,
        temperature: f64,
        current: f64,
        breakdown: &LossBreakdown,
        extra_warnings: &[Warning],
    ) -> Self {
        let mut row = ReportRow::empty(cable, "iec");
        row.frequency_hz = Some(frequency);
        row.temperature_c = Some(temperature);
        row.current_a = Some(current);
        row.r_c_dc_ohm_km = Some(breakdown.dc.r_c_dc * TO_KM);
        row.r_s_dc_ohm_km = Some(breakdown.dc.r_s_dc * TO_KM);
        row.r_a_dc_ohm_km = Some(breakdown.dc.r_a_dc * TO_KM);
        row.r_c_ac_ohm_km = Some(breakdown.factors.r_c_ac * TO_KM);
        row.x_ohm_km = Some(breakdown.factors.x * TO_KM);
        row.y_s = Some(breakdown.skin.y_s);
        row.y_p = Some(breakdown.skin.y_p);
        row.lambda1_prime = Some(breakdown.factors.lambda1_prime);
        row.lambda1_doubleprime = Some(breakdown.factors.lambda1_doubleprime);
        row.lambda2 = Some(breakdown.factors.lambda2);
        row.p_c_w_m = Some(breakdown.p_c);
        row.p_s_w_m = Some(breakdown.p_s);
        row.p_a_w_m = Some(breakdown.p_a);
        row.warnings = extra_warnings
            .iter()
            .chain(breakdown.warnings.iter())
            .map(|w| w.to_string())
            .collect();
        row
    }

    /// Row for a difference-method allocation from test measurements.
    pub fn from_em(
        cable: impl Into<String>,
        frequency: f64,
        result: &AllocationResult,
        m: &crate::em_pipeline::TestMeasurements,
        extra_warnings: &[Warning],
    ) -> Self {
        let mut row = ReportRow::empty(cable, result.method.name());
        row.frequency_hz = Some(frequency);
        row.temperature_c = Some(m.theta_test);
        row.current_a = Some(0.5 * (m.i_c0 + m.i_c1));
        row.r_c_dc_ohm_km = Some(m.r_c_dc * TO_KM);
        row.r_s_dc_ohm_km = Some(m.r_s_dc * TO_KM);
        row.r_a_dc_ohm_km = Some(m.r_a_dc * TO_KM);
        row.y_s = Some(m.y_s);
        row.y_p = Some(m.y_p);
        if let Some(corr) = &result.corrections {
            row.f_c = Some(corr.f_c);
            row.y_c = Some(corr.y_c);
            row.y_a = Some(corr.y_a);
        }
        row.p_a_w_m = Some(result.p_a);
        row.delta_p_m_w_m = Some(result.delta_p_m);
        row.delta_p_c_j_w_m = Some(result.delta_p_c_j);
        row.delta_p_s_j_w_m = Some(result.delta_p_s_j);
        row.delta_p_s_ec_w_m = Some(result.delta_p_s_ec);
        row.warnings = extra_warnings
            .iter()
            .chain(result.warnings.iter())
            .map(|w| w.to_string())
            .collect();
        row
    }
}

/// Output encodings of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

const COLUMNS: [&str; 28] = [
    "cable",
    "method",
    "status",
    "frequency_hz",
    "temperature_c",
    "current_a",
    "R_c_dc_ohm_km",
    "R_s_dc_ohm_km",
    "R_a_dc_ohm_km",
    "R_c_ac_ohm_km",
    "X_ohm_km",
    "y_s",
    "y_p",
    "lambda1_prime",
    "lambda1_doubleprime",
    "lambda2",
    "f_c",
    "y_c",
    "y_a",
    "P_c_w_m",
    "P_s_w_m",
    "P_a_w_m",
    "dP_m_w_m",
    "dP_c_J_w_m",
    "dP_s_J_w_m",
    "dP_s_ec_w_m",
    "warnings",
    "error",
];

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// CSV-quotes a free-text field (warnings, error messages).
fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('"', "\"\""))
}

/// Renders rows to the requested format. Errors on an empty row set.
pub fn render_report(rows: &[ReportRow], format: ReportFormat) -> Result<String, CoreError> {
    if rows.is_empty() {
        return Err(CoreError::EmptyInput("report rows"));
    }
    match format {
        ReportFormat::Json => {
            let mut text =
                serde_json::to_string_pretty(rows).expect("report rows serialize infallibly");
            text.push('\n');
            Ok(text)
        }
        ReportFormat::Csv => {
            let mut out = String::new();
            out.push_str("# resistances in ohm/km, reactance X in ohm/km, powers in W/m,\n");
            out.push_str("# currents in A rms, loss factors and corrections dimensionless.\n");
            out.push_str("# dP_* are armored-minus-unarmored difference terms.\n");
            out.push_str(&COLUMNS.join(","));
            out.push('\n');
            for row in rows {
                let fields = [
                    quote(&row.cable),
                    quote(&row.method),
                    row.status.clone(),
                    fmt_opt(row.frequency_hz),
                    fmt_opt(row.temperature_c),
                    fmt_opt(row.current_a),
                    fmt_opt(row.r_c_dc_ohm_km),
                    fmt_opt(row.r_s_dc_ohm_km),
                    fmt_opt(row.r_a_dc_ohm_km),
                    fmt_opt(row.r_c_ac_ohm_km),
                    fmt_opt(row.x_ohm_km),
                    fmt_opt(row.y_s),
                    fmt_opt(row.y_p),
                    fmt_opt(row.lambda1_prime),
                    fmt_opt(row.lambda1_doubleprime),
                    fmt_opt(row.lambda2),
                    fmt_opt(row.f_c),
                    fmt_opt(row.y_c),
                    fmt_opt(row.y_a),
                    fmt_opt(row.p_c_w_m),
                    fmt_opt(row.p_s_w_m),
                    fmt_opt(row.p_a_w_m),
                    fmt_opt(row.delta_p_m_w_m),
                    fmt_opt(row.delta_p_c_j_w_m),
                    fmt_opt(row.delta_p_s_j_w_m),
                    fmt_opt(row.delta_p_s_ec_w_m),
                    quote(&row.warnings.join("; ")),
                    quote(row.error.as_deref().unwrap_or("")),
                ];
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Writes a rendered report to any writer.
pub fn emit_report(
    rows: &[ReportRow],
    format: ReportFormat,
    writer: &mut dyn Write,
) -> Result<(), CoreError> {
    let text = render_report(rows, format)?;
    writer
        .write_all(text.as_bytes())
        .map_err(|e| CoreError::io("<writer>", e))
}

/// Writes a rendered report to a file, surfacing the path on failure.
pub fn emit_report_to_path(
    rows: &[ReportRow],
    format: ReportFormat,
    path: &Path,
) -> Result<(), CoreError> {
    let text = render_report(rows, format)?;
    std::fs::write(path, text).map_err(|e| CoreError::io(path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_row() -> ReportRow {
        let mut row = ReportRow::empty("30kv", "iec");
        row.frequency_hz = Some(50.0);
        row.lambda2 = Some(0.1232);
        row.warnings = vec!["w1".to_string(), "w2, with comma".to_string()];
        row
    }

    #[test]
    fn empty_rows_rejected() {
        assert!(render_report(&[], ReportFormat::Csv).is_err());
        assert!(render_report(&[], ReportFormat::Json).is_err());
    }

    #[test]
    fn csv_has_header_and_one_line_per_row() {
        let rows = vec![sample_row(), ReportRow::from_error("bad", "-", "boom")];
        let text = render_report(&rows, ReportFormat::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        let header_idx = lines.iter().position(|l| l.starts_with("cable,")).unwrap();
        assert_eq!(lines.len() - header_idx - 1, 2);
        assert!(lines[header_idx + 2].contains("error"));
        assert!(lines[header_idx + 2].contains("boom"));
    }

    #[test]
    fn csv_quotes_commas_in_warnings() {
        let text = render_report(&[sample_row()], ReportFormat::Csv).unwrap();
        assert!(text.contains("\"w1; w2, with comma\""));
    }

    #[test]
    fn json_round_trip_preserves_fields() {
        let rows = vec![sample_row()];
        let text = render_report(&rows, ReportFormat::Json).unwrap();
        let back: Vec<ReportRow> = serde_json::from_str(&text).unwrap();
        assert_eq!(rows, back);
    }

    #[test]
    fn rendering_is_deterministic() {
        let rows = vec![sample_row(), sample_row()];
        let a = render_report(&rows, ReportFormat::Csv).unwrap();
        let b = render_report(&rows, ReportFormat::Csv).unwrap();
        assert_eq!(a, b);
    }
}
