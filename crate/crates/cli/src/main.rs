//! Command-line loss allocation for three-core armored power cables.
//!
//! Subcommands: `info` (derived geometry), `iec` (standard allocation),
//! `corrected` (correction factors and corrected resistances),
//! `em-allocate` (difference-method armor loss from a test pair), `oracle`
//! (filament circuit solve vs the standard circulating-current factor),
//! `sweep` and `batch`. Exit code 0 on success, 1 on any failure with a
//! diagnostic on stderr.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cableloss::bench_io::{
    load_cable_file, load_template, render_report, run_batch, run_sweep, BatchMethod, CableFile,
    ReportFormat, ReportRow, SweepParameter, SweepPlan, SweepValues,
};
use cableloss::cable_model::{derive_geometry, DerivedGeometry};
use cableloss::corrections::{
    corrected_conductor_resistance, correction_factors, sheath_equivalent_resistance,
};
use cableloss::em_pipeline::{improved_em, legacy_em, original_em, EmConfig};
use cableloss::iec60287::{
    allocate_iec, conductor_ac_resistance, dc_resistances, lambda1_doubleprime,
    skin_proximity_factors, SheathEddyMode, SheathEddyParams,
};
use cableloss::mesh_oracle::{lambda_ratio_sweep, log_spaced};

#[derive(Parser)]
#[command(
    name = "cableloss",
    version,
    about = "Loss allocation for solidly bonded three-core armored HVAC cables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derived geometry of a cable (spacing, crossing pitch, lay factor).
    Info {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Standard loss allocation at the cable's operating point.
    Iec {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Include the sheath eddy-current subfactor lambda1'' in lambda1.
        #[arg(long = "lambda1dp", value_enum, default_value_t = Lambda1DpFlag::On)]
        lambda1dp: Lambda1DpFlag,
    },
    /// Correction factors f_c, y_c, y_a and the corrected resistances.
    Corrected {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Armor-loss estimate from the cable's unarmored/armored test pair.
    #[command(name = "em-allocate")]
    EmAllocate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Difference-method variant.
        #[arg(long, value_enum)]
        method: EmMethodFlag,
    },
    /// Filament circuit solve vs the standard circulating-current factor
    /// over a sweep of R_s/X.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Number of sweep points.
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Lower bound of the swept R_s/X ratio.
        #[arg(long, default_value_t = 0.05)]
        ratio_min: f64,
        /// Upper bound of the swept R_s/X ratio.
        #[arg(long, default_value_t = 5.0)]
        ratio_max: f64,
    },
    /// Parametric sweep of one cable or operating parameter.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Swept parameter: mu_real, L_c_m, L_a_m, d_a_mm, n_wires,
        /// temperature_c or frequency_hz.
        #[arg(long)]
        param: String,
        /// Explicit comma-separated values (alternative to start/stop/steps).
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["start", "stop", "steps"])]
        values: Option<Vec<f64>>,
        #[arg(long, requires = "stop")]
        start: Option<f64>,
        #[arg(long, requires = "start")]
        stop: Option<f64>,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long = "lambda1dp", value_enum, default_value_t = Lambda1DpFlag::On)]
        lambda1dp: Lambda1DpFlag,
    },
    /// Evaluate many cable files; one row per (cable, method).
    Batch {
        /// Cable files to process.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
        /// Methods to apply to every cable.
        #[arg(long, value_delimiter = ',', default_values_t = vec![
            MethodFlag::Iec, MethodFlag::Original, MethodFlag::Legacy, MethodFlag::Improved
        ])]
        methods: Vec<MethodFlag>,
        #[arg(long = "lambda1dp", value_enum, default_value_t = Lambda1DpFlag::On)]
        lambda1dp: Lambda1DpFlag,
    },
    /// List the bundled templates or print one.
    Template {
        /// Template to print; lists all names when omitted.
        name: Option<String>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Cable file to load.
    #[arg(conflicts_with = "template")]
    file: Option<PathBuf>,
    /// Bundled template name (see `cableloss template`).
    #[arg(long)]
    template: Option<String>,
}

impl InputArgs {
    fn load(&self) -> Result<(String, CableFile)> {
        match (&self.file, &self.template) {
            (Some(path), None) => {
                let id = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                Ok((id, load_cable_file(path)?))
            }
            (None, Some(name)) => Ok((name.clone(), load_template(name)?)),
            (None, None) => bail!("no input: pass a cable file or --template <name>"),
            (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format. Single-cable commands default to text, sweep/batch to
    /// csv.
    #[arg(long, value_enum)]
    format: Option<FormatFlag>,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn write(&self, text: &str) -> Result<()> {
        match &self.out {
            None => {
                std::io::stdout()
                    .write_all(text.as_bytes())
                    .context("writing to stdout")?;
                Ok(())
            }
            Some(path) => {
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatFlag {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lambda1DpFlag {
    On,
    Off,
}

impl From<Lambda1DpFlag> for SheathEddyMode {
    fn from(flag: Lambda1DpFlag) -> Self {
        match flag {
            Lambda1DpFlag::On => SheathEddyMode::Include,
            Lambda1DpFlag::Off => SheathEddyMode::Neglect,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmMethodFlag {
    Original,
    Legacy,
    Improved,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodFlag {
    Iec,
    Original,
    Legacy,
    Improved,
}

impl std::fmt::Display for MethodFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MethodFlag::Iec => "iec",
            MethodFlag::Original => "original",
            MethodFlag::Legacy => "legacy",
            MethodFlag::Improved => "improved",
        })
    }
}

impl From<MethodFlag> for BatchMethod {
    fn from(flag: MethodFlag) -> Self {
        match flag {
            MethodFlag::Iec => BatchMethod::Iec,
            MethodFlag::Original => BatchMethod::Original,
            MethodFlag::Legacy => BatchMethod::Legacy,
            MethodFlag::Improved => BatchMethod::Improved,
        }
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Info { input, output } => info(input, output),
        Command::Iec {
            input,
            output,
            lambda1dp,
        } => iec(input, output, lambda1dp.into()),
        Command::Corrected { input, output } => corrected(input, output),
        Command::EmAllocate {
            input,
            output,
            method,
        } => em_allocate(input, output, method),
        Command::Oracle {
            input,
            output,
            points,
            ratio_min,
            ratio_max,
        } => oracle(input, output, points, ratio_min, ratio_max),
        Command::Sweep {
            input,
            output,
            param,
            values,
            start,
            stop,
            steps,
            lambda1dp,
        } => sweep(
            input,
            output,
            param,
            values,
            start,
            stop,
            steps,
            lambda1dp.into(),
        ),
        Command::Batch {
            files,
            output,
            methods,
            lambda1dp,
        } => batch(files, output, methods, lambda1dp.into()),
        Command::Template { name } => template(name),
    }
}

const MM: f64 = 1e3;
const KM: f64 = 1e3;

fn info(input: InputArgs, output: OutputArgs) -> Result<()> {
    let (id, file) = input.load()?;
    let geom = derive_geometry(&file.spec)?;
    let text = match output.format.unwrap_or(FormatFlag::Text) {
        FormatFlag::Text => info_text(&id, &file, &geom),
        FormatFlag::Json => {
            let mut json = serde_json::to_string_pretty(&serde_json::json!({
                "cable": id,
                "voltage_kv": file.spec.voltage_kv,
                "rated_current_a": file.spec.rated_current,
                "s_mm": geom.spacing * MM,
                "d_mm": geom.mean_sheath_diameter * MM,
                "crossing_pitch_m": geom.crossing_pitch,
                "model_length_mm": geom.model_length * MM,
                "rotation_rad": geom.rotation,
                "lay_factor": geom.lay_factor,
            }))?;
            json.push('\n');
            json
        }
        FormatFlag::Csv => format!(
            "cable,voltage_kv,rated_current_a,s_mm,d_mm,crossing_pitch_m,model_length_mm,rotation_rad,lay_factor\n{},{},{},{},{},{},{},{},{}\n",
            id,
            file.spec.voltage_kv,
            file.spec.rated_current,
            geom.spacing * MM,
            geom.mean_sheath_diameter * MM,
            geom.crossing_pitch,
            geom.model_length * MM,
            geom.rotation,
            geom.lay_factor
        ),
    };
    output.write(&text)
}

fn info_text(id: &str, file: &CableFile, geom: &DerivedGeometry) -> String {
    format!(
        "cable: {id} ({} kV, rated {} A)\n\
         s  (conductor spacing)      = {:.4} mm\n\
         d  (mean sheath diameter)   = {:.4} mm\n\
         CP (crossing pitch)         = {:.6} m\n\
         L  (model length, CP/N)     = {:.4} mm\n\
         theta (boundary rotation)   = {:.6} rad\n\
         LF (lay factor)             = {:.6}\n",
        file.spec.voltage_kv,
        file.spec.rated_current,
        geom.spacing * MM,
        geom.mean_sheath_diameter * MM,
        geom.crossing_pitch,
        geom.model_length * MM,
        geom.rotation,
        geom.lay_factor
    )
}

fn report_output(output: &OutputArgs, rows: &[ReportRow], default: FormatFlag) -> Result<()> {
    let format = match output.format.unwrap_or(default) {
        FormatFlag::Text => bail!("this command has no text format; use --format csv or json"),
        FormatFlag::Csv => ReportFormat::Csv,
        FormatFlag::Json => ReportFormat::Json,
    };
    output.write(&render_report(rows, format)?)
}

fn iec(input: InputArgs, output: OutputArgs, mode: SheathEddyMode) -> Result<()> {
    let (id, file) = input.load()?;
    let geom = derive_geometry(&file.spec)?;
    let b = allocate_iec(&file.spec, &geom, &file.operating, &file.materials, mode)?;
    match output.format.unwrap_or(FormatFlag::Text) {
        FormatFlag::Text => {
            let mut text = format!(
                "cable: {id} at {} Hz, {} C, {} A\n\
                 R_c_dc = {:.6} ohm/km    R_s_dc = {:.6} ohm/km    R_a_dc = {:.6} ohm/km\n\
                 y_s = {:.6}    y_p = {:.6}    R_c_ac = {:.6} ohm/km\n\
                 X = {:.6e} ohm/km\n\
                 lambda1' = {:.6}    lambda1'' = {:.6}{}    lambda2 = {:.6}\n\
                 P_c = {:.6} W/m\nP_s = {:.6} W/m\nP_a = {:.6} W/m\n",
                file.operating.frequency,
                file.operating.ambient_temp,
                file.operating.conductor_current,
                b.dc.r_c_dc * KM,
                b.dc.r_s_dc * KM,
                b.dc.r_a_dc * KM,
                b.skin.y_s,
                b.skin.y_p,
                b.factors.r_c_ac * KM,
                b.factors.x * KM,
                b.factors.lambda1_prime,
                b.factors.lambda1_doubleprime,
                if b.mode == SheathEddyMode::Neglect {
                    " (neglected in lambda1)"
                } else {
                    ""
                },
                b.factors.lambda2,
                b.p_c,
                b.p_s,
                b.p_a,
            );
            for w in file.load_warnings.iter().chain(b.warnings.iter()) {
                text.push_str(&format!("warning: {w}\n"));
            }
            output.write(&text)
        }
        _ => {
            let row = ReportRow::from_iec(
                &id,
                file.operating.frequency,
                file.operating.ambient_temp,
                file.operating.conductor_current,
                &b,
                &file.load_warnings,
            );
            report_output(&output, &[row], FormatFlag::Csv)
        }
    }
}

fn corrected(input: InputArgs, output: OutputArgs) -> Result<()> {
    let (id, file) = input.load()?;
    let geom = derive_geometry(&file.spec)?;
    let corr = correction_factors(&file.spec, &geom);
    let dc = dc_resistances(
        &file.spec,
        &geom,
        &file.materials,
        file.operating.ambient_temp,
    );
    let skin = skin_proximity_factors(
        dc.r_c_dc,
        file.operating.frequency,
        file.spec.conductor_diameter,
        geom.spacing,
        file.materials.k_s,
        file.materials.k_p,
    );
    let r_c_corrected = corrected_conductor_resistance(dc.r_c_dc, skin.y_s, skin.y_p, corr.f_c);
    let r_s_eq0 = sheath_equivalent_resistance(dc.r_s_dc, corr.y_c, corr.y_a, false);
    let r_s_eq1 = sheath_equivalent_resistance(dc.r_s_dc, corr.y_c, corr.y_a, true);
    match output.format.unwrap_or(FormatFlag::Text) {
        FormatFlag::Text => {
            let mut text = format!(
                "cable: {id} at {} Hz, {} C\n\
                 f_c = {:.6}\ny_c = {:.6}\ny_a = {:.6}\n\
                 R_c corrected (1 + y_s + y_p f_c)    = {:.6} ohm/km\n\
                 R_s equivalent, unarmored (1 + y_c)  = {:.6} ohm/km\n\
                 R_s equivalent, armored  (x 1 + y_a) = {:.6} ohm/km\n",
                file.operating.frequency,
                file.operating.ambient_temp,
                corr.f_c,
                corr.y_c,
                corr.y_a,
                r_c_corrected * KM,
                r_s_eq0 * KM,
                r_s_eq1 * KM,
            );
            for w in corr.flags.iter().chain(skin.warnings.iter()) {
                text.push_str(&format!("warning: {w}\n"));
            }
            output.write(&text)
        }
        _ => {
            let mut row = ReportRow::empty(&id, "corrected");
            row.frequency_hz = Some(file.operating.frequency);
            row.temperature_c = Some(file.operating.ambient_temp);
            row.r_c_dc_ohm_km = Some(dc.r_c_dc * KM);
            row.r_s_dc_ohm_km = Some(dc.r_s_dc * KM);
            row.r_a_dc_ohm_km = Some(dc.r_a_dc * KM);
            row.r_c_ac_ohm_km = Some(r_c_corrected * KM);
            row.y_s = Some(skin.y_s);
            row.y_p = Some(skin.y_p);
            row.f_c = Some(corr.f_c);
            row.y_c = Some(corr.y_c);
            row.y_a = Some(corr.y_a);
            row.warnings = corr
                .flags
                .iter()
                .chain(skin.warnings.iter())
                .map(|w| w.to_string())
                .collect();
            report_output(&output, &[row], FormatFlag::Csv)
        }
    }
}

fn em_allocate(input: InputArgs, output: OutputArgs, method: EmMethodFlag) -> Result<()> {
    let (id, file) = input.load()?;
    let geom = derive_geometry(&file.spec)?;
    let m = file
        .measurements
        .as_ref()
        .ok_or_else(|| anyhow!("cable '{id}' has no [measurements] section"))?;
    let cfg = EmConfig::default();
    let result = match method {
        EmMethodFlag::Original => original_em(m, &cfg)?,
        EmMethodFlag::Legacy => {
            let l1pp = lambda1_doubleprime(&SheathEddyParams {
                r_s_dc: m.r_s_dc,
                r_c_ac: conductor_ac_resistance(m.r_c_dc, m.y_s, m.y_p),
                omega: file.operating.omega(),
                sheath_thickness: file.spec.sheath_thickness,
                sheath_outer_diameter: file.spec.sheath_outer_diameter,
                spacing: geom.spacing,
                mean_sheath_diameter: geom.mean_sheath_diameter,
                sheath_resistivity: file.materials.sheath.resistivity_at(m.theta_test),
            })?;
            legacy_em(m, l1pp, &cfg)?
        }
        EmMethodFlag::Improved => improved_em(m, &geom, &file.spec, &cfg)?,
    };
    match output.format.unwrap_or(FormatFlag::Text) {
        FormatFlag::Text => {
            let mut text = format!(
                "cable: {id}, method: {}, test at {} C\n\
                 dP_m    = {:.6} W/m\n\
                 dP_c^J  = {:.6} W/m\n\
                 dP_s^J  = {:.6} W/m\n\
                 dP_s^ec = {:.6} W/m\n\
                 P_a     = {:.6} W/m\n",
                result.method,
                m.theta_test,
                result.delta_p_m,
                result.delta_p_c_j,
                result.delta_p_s_j,
                result.delta_p_s_ec,
                result.p_a,
            );
            if let Some(corr) = &result.corrections {
                text.push_str(&format!(
                    "f_c = {:.6}, y_c = {:.6}, y_a = {:.6}\n",
                    corr.f_c, corr.y_c, corr.y_a
                ));
            }
            for w in file.load_warnings.iter().chain(result.warnings.iter()) {
                text.push_str(&format!("warning: {w}\n"));
            }
            output.write(&text)
        }
        _ => {
            let row = ReportRow::from_em(
                &id,
                file.operating.frequency,
                &result,
                m,
                &file.load_warnings,
            );
            report_output(&output, &[row], FormatFlag::Csv)
        }
    }
}

fn oracle(
    input: InputArgs,
    output: OutputArgs,
    points: usize,
    ratio_min: f64,
    ratio_max: f64,
) -> Result<()> {
    if points < 2 {
        bail!("--points must be at least 2");
    }
    if !(ratio_min > 0.0 && ratio_max > ratio_min) {
        bail!("ratio bounds must satisfy 0 < ratio-min < ratio-max");
    }
    let (id, file) = input.load()?;
    let geom = derive_geometry(&file.spec)?;
    let dc = dc_resistances(
        &file.spec,
        &geom,
        &file.materials,
        file.operating.ambient_temp,
    );
    let skin = skin_proximity_factors(
        dc.r_c_dc,
        file.operating.frequency,
        file.spec.conductor_diameter,
        geom.spacing,
        file.materials.k_s,
        file.materials.k_p,
    );
    let r_c_ac = conductor_ac_resistance(dc.r_c_dc, skin.y_s, skin.y_p);
    let sweep = lambda_ratio_sweep(
        r_c_ac,
        file.operating.omega(),
        geom.spacing,
        geom.mean_sheath_diameter,
        file.operating.conductor_current,
        &log_spaced(ratio_min, ratio_max, points),
    )?;
    let text = match output.format.unwrap_or(FormatFlag::Csv) {
        FormatFlag::Text | FormatFlag::Csv => {
            let mut text = format!(
                "# cable {id}: filament solve vs standard factor; X = {:.6e} ohm/km\n\
                 ratio_rs_over_x,R_s_ohm_km,I_s_a,oracle_lambda1,iec_lambda1_prime,oracle_over_iec\n",
                sweep[0].x * KM
            );
            for p in &sweep {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    p.ratio,
                    p.r_s * KM,
                    p.i_s_mag,
                    p.oracle_lambda1,
                    p.iec_lambda1_prime,
                    p.oracle_lambda1 / p.iec_lambda1_prime
                ));
            }
            text
        }
        FormatFlag::Json => {
            let rows: Vec<serde_json::Value> = sweep
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "ratio_rs_over_x": p.ratio,
                        "r_s_ohm_km": p.r_s * KM,
                        "x_ohm_km": p.x * KM,
                        "i_s_a": p.i_s_mag,
                        "oracle_lambda1": p.oracle_lambda1,
                        "iec_lambda1_prime": p.iec_lambda1_prime,
                        "oracle_over_iec": p.oracle_lambda1 / p.iec_lambda1_prime,
                    })
                })
                .collect();
            let mut json = serde_json::to_string_pretty(&rows)?;
            json.push('\n');
            json
        }
    };
    output.write(&text)
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    input: InputArgs,
    output: OutputArgs,
    param: String,
    values: Option<Vec<f64>>,
    start: Option<f64>,
    stop: Option<f64>,
    steps: usize,
    mode: SheathEddyMode,
) -> Result<()> {
    let parameter: SweepParameter = param.parse().map_err(|e: String| anyhow!(e))?;
    let values = match (values, start, stop) {
        (Some(list), None, None) => SweepValues::List(list),
        (None, Some(start), Some(stop)) => SweepValues::Range { start, stop, steps },
        _ => bail!("pass either --values or --start/--stop (with optional --steps)"),
    };
    let (id, file) = input.load()?;
    let rows = run_sweep(&file, &id, &SweepPlan { parameter, values }, mode)?;
    report_output(&output, &rows, FormatFlag::Csv)
}

fn batch(
    files: Vec<PathBuf>,
    output: OutputArgs,
    methods: Vec<MethodFlag>,
    mode: SheathEddyMode,
) -> Result<()> {
    let methods: Vec<BatchMethod> = methods.into_iter().map(Into::into).collect();
    let rows = run_batch(&files, &methods, mode, &EmConfig::default())?;
    report_output(&output, &rows, FormatFlag::Csv)
}

fn template(name: Option<String>) -> Result<()> {
    match name {
        None => {
            for name in cableloss::bench_io::template_names() {
                println!("{name}");
            }
            Ok(())
        }
        Some(name) => {
            let text = cableloss::bench_io::template_text(&name)
                .ok_or_else(|| anyhow!("unknown template '{name}'"))?;
            print!("{text}");
            Ok(())
        }
    }
}
