//! Bundled cable templates: six representative three-core armored designs
//! from 30 kV to 275 kV, four of them with a recorded unarmored/armored
//! test pair.

use crate::error::CoreError;

use super::format::{parse_cable_file, CableFile};

/// (name, file text) pairs, ordered by voltage.
pub const TEMPLATES: [(&str, &str); 6] = [
    ("30kv", include_str!("../../templates/30kv.cable")),
    ("115kv", include_str!("../../templates/115kv.cable")),
    ("132kv", include_str!("../../templates/132kv.cable")),
    ("150kv", include_str!("../../templates/150kv.cable")),
    ("220kv", include_str!("../../templates/220kv.cable")),
    ("275kv", include_str!("../../templates/275kv.cable")),
];

/// Names of the bundled templates, in voltage order.
pub fn template_names() -> Vec<&'static str> {
    TEMPLATES.iter().map(|(name, _)| *name).collect()
}

/// Raw text of a bundled template.
pub fn template_text(name: &str) -> Option<&'static str> {
    TEMPLATES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

/// Parses a bundled template by name.
pub fn load_template(name: &str) -> Result<CableFile, CoreError> {
    let text = template_text(name).ok_or_else(|| CoreError::UnknownTemplate(name.to_string()))?;
    parse_cable_file(text, &format!("<template:{name}>"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_templates_parse_and_validate() {
        for name in template_names() {
            let file = load_template(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(file.spec.voltage_kv > 0.0);
        }
    }

    #[test]
    fn measured_templates_have_test_pairs() {
        for name in ["30kv", "132kv", "150kv", "275kv"] {
            assert!(
                load_template(name).unwrap().measurements.is_some(),
                "{name}"
            );
        }
        for name in ["115kv", "220kv"] {
            assert!(
                load_template(name).unwrap().measurements.is_none(),
                "{name}"
            );
        }
    }

    #[test]
    fn unknown_template_errors() {
        assert!(matches!(
            load_template("400kv"),
            Err(CoreError::UnknownTemplate(_))
        ));
    }

    #[test]
    fn template_spec_matches_published_geometry() {
        let file = load_template("30kv").unwrap();
        assert_eq!(file.spec.armor_wire_count, 69);
        assert!((file.spec.armor_mean_diameter - 97.17e-3).abs() < 1e-9);
        let m = file.measurements.unwrap();
        assert!((m.r_s_dc - 1.194e-3).abs() < 1e-12);
        assert_eq!(m.theta_test, 30.0);
    }
}
