//! Operational surface: cable file format, bundled templates, batch and
//! sweep engines, report emission.

pub mod batch;
pub mod format;
pub mod report;
pub mod sweep;
pub mod templates;

pub use batch::{run_batch, BatchMethod};
pub use format::{load_cable_file, parse_cable_file, write_cable_file, CableFile};
pub use report::{emit_report, emit_report_to_path, render_report, ReportFormat, ReportRow};
pub use sweep::{run_sweep, SweepParameter, SweepPlan, SweepValues};
pub use templates::{load_template, template_names, template_text};
