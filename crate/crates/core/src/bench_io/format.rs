//! Sectioned key=value cable description files.
//!
//! The on-disk format mirrors the customary cable datasheet units (mm for
//! diameters, m for lay lengths, Ω/km for resistances, kV, A, °C) and keeps
//! one unit per key, fixed by the key name. Internally everything converts
//! to SI at this boundary. Keys are case-sensitive (`d_a_mm` is the armor
//! wire diameter, `D_a_mm` the mean armor diameter). `#` starts a comment.
//!
//! ```text
//! [cable]        # geometry and identification, required
//! [materials]    # optional resistivity/temp-coefficient/measured overrides
//! [operating]    # frequency, temperature, current, required
//! [measurements] # optional unarmored/armored test pair
//! ```
//!
//! Unknown sections or keys are rejected with line/column positions, as are
//! missing required keys and any cable-spec invariant violation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::cable_model::{derive_geometry, CableSpec, ConductorMaterial, SheathMaterial};
use crate::em_pipeline::TestMeasurements;
use crate::error::{CoreError, Warning};
use crate::iec60287::{skin_proximity_factors, CableMaterials, MaterialProps, OperatingPoint};

/// A parsed cable file: validated domain objects plus any load-time
/// diagnostics (e.g. skin-formula validity warnings raised while computing
/// y_s/y_p from the measured conductor resistance).
#[derive(Debug, Clone, PartialEq)]
pub struct CableFile {
    pub spec: CableSpec,
    pub materials: CableMaterials,
    pub operating: OperatingPoint,
    pub measurements: Option<TestMeasurements>,
    pub load_warnings: Vec<Warning>,
}

const MM: f64 = 1e-3;
/// Ω/km -> Ω/m.
const PER_KM: f64 = 1e-3;

struct RawValue {
    value: String,
    line: usize,
    key_col: usize,
    value_col: usize,
}

/// Keys of one section with their source locations.
struct Section {
    name: &'static str,
    header_line: usize,
    path: String,
    entries: BTreeMap<String, RawValue>,
}

impl Section {
    fn parse_err(&self, line: usize, column: usize, message: String) -> CoreError {
        CoreError::Parse {
            path: self.path.clone(),
            line,
            column,
            message,
        }
    }

    fn take_raw(&mut self, key: &str) -> Option<RawValue> {
        self.entries.remove(key)
    }

    fn take_f64(&mut self, key: &str) -> Result<f64, CoreError> {
        match self.take_opt_f64(key)? {
            Some(v) => Ok(v),
            None => Err(self.missing(key)),
        }
    }

    fn take_opt_f64(&mut self, key: &str) -> Result<Option<f64>, CoreError> {
        match self.take_raw(key) {
            None => Ok(None),
            Some(raw) => raw.value.parse::<f64>().map(Some).map_err(|_| {
                self.parse_err(
                    raw.line,
                    raw.value_col,
                    format!("key '{key}': expected a number, got '{}'", raw.value),
                )
            }),
        }
    }

    fn take_u32(&mut self, key: &str) -> Result<u32, CoreError> {
        let raw = self.take_raw(key).ok_or_else(|| self.missing(key))?;
        raw.value.parse::<u32>().map_err(|_| {
            self.parse_err(
                raw.line,
                raw.value_col,
                format!(
                    "key '{key}': expected a non-negative integer, got '{}'",
                    raw.value
                ),
            )
        })
    }

    fn missing(&self, key: &str) -> CoreError {
        self.parse_err(
            self.header_line,
            1,
            format!("missing key '{key}' in [{}]", self.name),
        )
    }

    /// Every key must have been consumed; the first leftover is unknown.
    fn finish(self) -> Result<(), CoreError> {
        if let Some((key, raw)) = self.entries.into_iter().next() {
            return Err(CoreError::Parse {
                path: self.path,
                line: raw.line,
                column: raw.key_col,
                message: format!("unknown key '{key}' in [{}]", self.name),
            });
        }
        Ok(())
    }
}

const SECTION_NAMES: [&str; 4] = ["cable", "materials", "operating", "measurements"];

/// Parses and validates a cable file from text. `path` is used only for
/// error attribution.
pub fn parse_cable_file(text: &str, path: &str) -> Result<CableFile, CoreError> {
    let mut sections: BTreeMap<&'static str, Section> = BTreeMap::new();
    let mut current: Option<&'static str> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let col = line.find('[').unwrap_or(0) + 1;
            let name = rest.strip_suffix(']').ok_or_else(|| CoreError::Parse {
                path: path.to_string(),
                line: line_no,
                column: col,
                message: format!("unterminated section header '{trimmed}'"),
            })?;
            let canonical = SECTION_NAMES
                .iter()
                .find(|&&s| s == name)
                .ok_or_else(|| CoreError::Parse {
                    path: path.to_string(),
                    line: line_no,
                    column: col,
                    message: format!(
                        "unknown section '[{name}]' (expected one of [cable], [materials], [operating], [measurements])"
                    ),
                })?;
            if sections.contains_key(canonical) {
                return Err(CoreError::Parse {
                    path: path.to_string(),
                    line: line_no,
                    column: col,
                    message: format!("duplicate section '[{name}]'"),
                });
            }
            sections.insert(
                canonical,
                Section {
                    name: canonical,
                    header_line: line_no,
                    path: path.to_string(),
                    entries: BTreeMap::new(),
                },
            );
            current = Some(canonical);
            continue;
        }
        let key_col = line.len() - line.trim_start().len() + 1;
        let section_name = current.ok_or_else(|| CoreError::Parse {
            path: path.to_string(),
            line: line_no,
            column: key_col,
            message: format!("'{trimmed}' appears before any section header"),
        })?;
        let eq = trimmed.find('=').ok_or_else(|| CoreError::Parse {
            path: path.to_string(),
            line: line_no,
            column: key_col,
            message: format!("expected 'key = value', got '{trimmed}'"),
        })?;
        let key = trimmed[..eq].trim();
        let value = trimmed[eq + 1..].trim();
        let value_col =
            key_col + eq + 1 + (trimmed[eq + 1..].len() - trimmed[eq + 1..].trim_start().len());
        if key.is_empty() || value.is_empty() {
            return Err(CoreError::Parse {
                path: path.to_string(),
                line: line_no,
                column: key_col,
                message: format!("expected 'key = value', got '{trimmed}'"),
            });
        }
        let section = sections.get_mut(section_name).expect("section exists");
        if section.entries.contains_key(key) {
            return Err(CoreError::Parse {
                path: path.to_string(),
                line: line_no,
                column: key_col,
                message: format!("duplicate key '{key}' in [{section_name}]"),
            });
        }
        section.entries.insert(
            key.to_string(),
            RawValue {
                value: value.to_string(),
                line: line_no,
                key_col,
                value_col,
            },
        );
    }

    let mut cable = sections.remove("cable").ok_or_else(|| CoreError::Parse {
        path: path.to_string(),
        line: 1,
        column: 1,
        message: "missing required section [cable]".to_string(),
    })?;
    let mut operating = sections
        .remove("operating")
        .ok_or_else(|| CoreError::Parse {
            path: path.to_string(),
            line: 1,
            column: 1,
            message: "missing required section [operating]".to_string(),
        })?;
    let materials_section = sections.remove("materials");
    let measurements_section = sections.remove("measurements");

    // --- [cable] ---
    let conductor_material = {
        let raw = cable
            .take_raw("conductor_material")
            .ok_or_else(|| cable.missing("conductor_material"))?;
        match raw.value.as_str() {
            "copper" => ConductorMaterial::Copper,
            "aluminum" => ConductorMaterial::Aluminum,
            other => {
                return Err(cable.parse_err(
                    raw.line,
                    raw.value_col,
                    format!("conductor_material must be 'copper' or 'aluminum', got '{other}'"),
                ))
            }
        }
    };
    let sheath_material = {
        let raw = cable
            .take_raw("sheath_material")
            .ok_or_else(|| cable.missing("sheath_material"))?;
        match raw.value.as_str() {
            "lead" => SheathMaterial::Lead,
            other => {
                return Err(cable.parse_err(
                    raw.line,
                    raw.value_col,
                    format!("sheath_material must be 'lead', got '{other}'"),
                ))
            }
        }
    };
    if let Some(raw) = cable.take_raw("lay_direction") {
        if raw.value != "contralay" {
            return Err(cable.parse_err(
                raw.line,
                raw.value_col,
                format!(
                    "lay_direction '{}' not supported: the crossing-pitch model requires phases \
                     and armor twisted in opposite directions (contralay)",
                    raw.value
                ),
            ));
        }
    }
    let spec = CableSpec {
        voltage_kv: cable.take_f64("voltage_kv")?,
        rated_current: cable.take_f64("rated_current_a")?,
        conductor_diameter: cable.take_f64("d_c_mm")? * MM,
        sheath_outer_diameter: cable.take_f64("d_s_mm")? * MM,
        sheath_thickness: cable.take_f64("t_s_mm")? * MM,
        core_center_radius: cable.take_f64("c_mm")? * MM,
        armor_wire_diameter: cable.take_f64("d_a_mm")? * MM,
        armor_mean_diameter: cable.take_f64("D_a_mm")? * MM,
        armor_wire_count: cable.take_u32("n_wires")?,
        conductor_lay_length: cable.take_f64("L_c_m")?,
        armor_lay_length: cable.take_f64("L_a_m")?,
        conductor_material,
        sheath_material,
        armor_mu_real: cable.take_f64("mu_real")?,
        armor_mu_imag: cable.take_f64("mu_imag")?,
        cross_section: cable.take_f64("cross_section_mm2")? * 1e-6,
    };
    cable.finish()?;
    spec.validate()?;

    // --- [materials] ---
    let mut materials = CableMaterials::for_spec(&spec);
    if let Some(mut section) = materials_section {
        if let Some(v) = section.take_opt_f64("conductor_rho_20c_ohm_m")? {
            materials.conductor.resistivity_20c = v;
        }
        if let Some(v) = section.take_opt_f64("conductor_alpha_per_k")? {
            materials.conductor.temp_coefficient = v;
        }
        if let Some(v) = section.take_opt_f64("sheath_rho_20c_ohm_m")? {
            materials.sheath.resistivity_20c = v;
        }
        if let Some(v) = section.take_opt_f64("sheath_alpha_per_k")? {
            materials.sheath.temp_coefficient = v;
        }
        if let Some(v) = section.take_opt_f64("armor_rho_20c_ohm_m")? {
            materials.armor.resistivity_20c = v;
        }
        if let Some(v) = section.take_opt_f64("armor_alpha_per_k")? {
            materials.armor.temp_coefficient = v;
        }
        if let Some(v) = section.take_opt_f64("k_s")? {
            materials.k_s = v;
        }
        if let Some(v) = section.take_opt_f64("k_p")? {
            materials.k_p = v;
        }
        materials.r_c_dc_20_override = section
            .take_opt_f64("R_c_dc_20_ohm_km")?
            .map(|v| v * PER_KM);
        materials.r_s_dc_20_override = section
            .take_opt_f64("R_s_dc_20_ohm_km")?
            .map(|v| v * PER_KM);
        materials.r_a_dc_20_override = section
            .take_opt_f64("R_a_dc_20_ohm_km")?
            .map(|v| v * PER_KM);
        section.finish()?;
    }

    // --- [operating] ---
    let operating_point = OperatingPoint {
        frequency: operating.take_f64("frequency_hz")?,
        ambient_temp: operating.take_f64("temperature_c")?,
        conductor_current: operating.take_f64("current_a")?,
    };
    operating.finish()?;
    operating_point.validate()?;

    // --- [measurements] ---
    let mut load_warnings = Vec::new();
    let measurements = match measurements_section {
        None => None,
        Some(mut section) => {
            let mut m = TestMeasurements {
                p_m0: section.take_f64("P_m0_w_m")?,
                p_m1: section.take_f64("P_m1_w_m")?,
                i_c0: section.take_f64("I_c0_a")?,
                i_c1: section.take_f64("I_c1_a")?,
                i_s0: section.take_f64("I_s0_a")?,
                i_s1: section.take_f64("I_s1_a")?,
                r_c_dc: section.take_f64("R_c_dc_ohm_km")? * PER_KM,
                r_s_dc: section.take_f64("R_s_dc_ohm_km")? * PER_KM,
                r_a_dc: section.take_f64("R_a_dc_ohm_km")? * PER_KM,
                theta_test: section.take_f64("temperature_c")?,
                y_s: f64::NAN,
                y_p: f64::NAN,
                conductor_temp: section.take_opt_f64("conductor_temp_c")?,
                sheath_temp: section.take_opt_f64("sheath_temp_c")?,
                armor_temp: section.take_opt_f64("armor_temp_c")?,
            };
            let pinned_y_s = section.take_opt_f64("y_s")?;
            let pinned_y_p = section.take_opt_f64("y_p")?;
            section.finish()?;
            m.validate()?;
            if let (Some(y_s), Some(y_p)) = (pinned_y_s, pinned_y_p) {
                m.y_s = y_s;
                m.y_p = y_p;
            } else {
                let geom = derive_geometry(&spec)?;
                let skin = skin_proximity_factors(
                    m.r_c_dc,
                    operating_point.frequency,
                    spec.conductor_diameter,
                    geom.spacing,
                    materials.k_s,
                    materials.k_p,
                );
                m.y_s = pinned_y_s.unwrap_or(skin.y_s);
                m.y_p = pinned_y_p.unwrap_or(skin.y_p);
                load_warnings.extend(skin.warnings);
            }
            Some(m)
        }
    };

    Ok(CableFile {
        spec,
        materials,
        operating: operating_point,
        measurements,
        load_warnings,
    })
}

/// Loads and validates a cable file from disk.
pub fn load_cable_file(path: &Path) -> Result<CableFile, CoreError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CoreError::io(path.display().to_string(), e))?;
    parse_cable_file(&text, &path.display().to_string())
}

fn defaults_for(material: ConductorMaterial) -> MaterialProps {
    match material {
        ConductorMaterial::Copper => crate::iec60287::materials::COPPER,
        ConductorMaterial::Aluminum => crate::iec60287::materials::ALUMINUM,
    }
}

/// Serializes a cable file back to the text format. Numbers are written with
/// the shortest round-trip representation, so load -> write -> load is
/// lossless on the domain objects.
pub fn write_cable_file(file: &CableFile) -> String {
    let spec = &file.spec;
    let mut out = String::new();
    let _ = writeln!(out, "[cable]");
    let _ = writeln!(out, "voltage_kv = {}", spec.voltage_kv);
    let _ = writeln!(out, "rated_current_a = {}", spec.rated_current);
    let _ = writeln!(out, "d_c_mm = {}", spec.conductor_diameter / MM);
    let _ = writeln!(out, "d_s_mm = {}", spec.sheath_outer_diameter / MM);
    let _ = writeln!(out, "t_s_mm = {}", spec.sheath_thickness / MM);
    let _ = writeln!(out, "c_mm = {}", spec.core_center_radius / MM);
    let _ = writeln!(out, "d_a_mm = {}", spec.armor_wire_diameter / MM);
    let _ = writeln!(out, "D_a_mm = {}", spec.armor_mean_diameter / MM);
    let _ = writeln!(out, "n_wires = {}", spec.armor_wire_count);
    let _ = writeln!(out, "L_c_m = {}", spec.conductor_lay_length);
    let _ = writeln!(out, "L_a_m = {}", spec.armor_lay_length);
    let _ = writeln!(out, "lay_direction = contralay");
    let _ = writeln!(
        out,
        "conductor_material = {}",
        spec.conductor_material.name()
    );
    let _ = writeln!(out, "sheath_material = {}", spec.sheath_material.name());
    let _ = writeln!(out, "mu_real = {}", spec.armor_mu_real);
    let _ = writeln!(out, "mu_imag = {}", spec.armor_mu_imag);
    let _ = writeln!(out, "cross_section_mm2 = {}", spec.cross_section * 1e6);

    let mats = &file.materials;
    let defaults = CableMaterials {
        conductor: defaults_for(spec.conductor_material),
        ..CableMaterials::for_spec(spec)
    };
    let mut lines = Vec::new();
    if mats.conductor.resistivity_20c != defaults.conductor.resistivity_20c {
        lines.push(format!(
            "conductor_rho_20c_ohm_m = {}",
            mats.conductor.resistivity_20c
        ));
    }
    if mats.conductor.temp_coefficient != defaults.conductor.temp_coefficient {
        lines.push(format!(
            "conductor_alpha_per_k = {}",
            mats.conductor.temp_coefficient
        ));
    }
    if mats.sheath.resistivity_20c != defaults.sheath.resistivity_20c {
        lines.push(format!(
            "sheath_rho_20c_ohm_m = {}",
            mats.sheath.resistivity_20c
        ));
    }
    if mats.sheath.temp_coefficient != defaults.sheath.temp_coefficient {
        lines.push(format!(
            "sheath_alpha_per_k = {}",
            mats.sheath.temp_coefficient
        ));
    }
    if mats.armor.resistivity_20c != defaults.armor.resistivity_20c {
        lines.push(format!(
            "armor_rho_20c_ohm_m = {}",
            mats.armor.resistivity_20c
        ));
    }
    if mats.armor.temp_coefficient != defaults.armor.temp_coefficient {
        lines.push(format!(
            "armor_alpha_per_k = {}",
            mats.armor.temp_coefficient
        ));
    }
    if mats.k_s != 1.0 {
        lines.push(format!("k_s = {}", mats.k_s));
    }
    if mats.k_p != 1.0 {
        lines.push(format!("k_p = {}", mats.k_p));
    }
    if let Some(v) = mats.r_c_dc_20_override {
        lines.push(format!("R_c_dc_20_ohm_km = {}", v / PER_KM));
    }
    if let Some(v) = mats.r_s_dc_20_override {
        lines.push(format!("R_s_dc_20_ohm_km = {}", v / PER_KM));
    }
    if let Some(v) = mats.r_a_dc_20_override {
        lines.push(format!("R_a_dc_20_ohm_km = {}", v / PER_KM));
    }
    if !lines.is_empty() {
        let _ = writeln!(out, "\n[materials]");
        for line in lines {
            let _ = writeln!(out, "{line}");
        }
    }

    let _ = writeln!(out, "\n[operating]");
    let _ = writeln!(out, "frequency_hz = {}", file.operating.frequency);
    let _ = writeln!(out, "temperature_c = {}", file.operating.ambient_temp);
    let _ = writeln!(out, "current_a = {}", file.operating.conductor_current);

    if let Some(m) = &file.measurements {
        let _ = writeln!(out, "\n[measurements]");
        let _ = writeln!(out, "P_m0_w_m = {}", m.p_m0);
        let _ = writeln!(out, "P_m1_w_m = {}", m.p_m1);
        let _ = writeln!(out, "I_c0_a = {}", m.i_c0);
        let _ = writeln!(out, "I_c1_a = {}", m.i_c1);
        let _ = writeln!(out, "I_s0_a = {}", m.i_s0);
        let _ = writeln!(out, "I_s1_a = {}", m.i_s1);
        let _ = writeln!(out, "R_c_dc_ohm_km = {}", m.r_c_dc / PER_KM);
        let _ = writeln!(out, "R_s_dc_ohm_km = {}", m.r_s_dc / PER_KM);
        let _ = writeln!(out, "R_a_dc_ohm_km = {}", m.r_a_dc / PER_KM);
        let _ = writeln!(out, "temperature_c = {}", m.theta_test);
        let _ = writeln!(out, "y_s = {}", m.y_s);
        let _ = writeln!(out, "y_p = {}", m.y_p);
        if let Some(v) = m.conductor_temp {
            let _ = writeln!(out, "conductor_temp_c = {v}");
        }
        if let Some(v) = m.sheath_temp {
            let _ = writeln!(out, "sheath_temp_c = {v}");
        }
        if let Some(v) = m.armor_temp {
            let _ = writeln!(out, "armor_temp_c = {v}");
        }
    }
    out
}
