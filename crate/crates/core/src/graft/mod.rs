//! Differential forms sampled on grid charts, contact-positivity margins and
//! the interpolation of contact forms across a product collar.

mod chart;
mod contact;
mod form;
mod fs;
#[allow(clippy::module_inception)]
mod graft;

pub use chart::{Axis, GridChart};
pub use contact::{
    calabi_positive_path, compatibility_check, contact_margin, contact_margin_where, masked_min, top_margin,
    PositivityReport, Singularity,
};
pub use form::{basis, derivative_weights, exterior_derivative, partial, wedge, FormField};
pub use fs::{
    fs_liouville, smoothed_corner_chart, torus_slice_chart, verify_fs_identities, Coord, FsIdentityReport, PolarSlice,
};
pub use graft::{
    collar_example, graft_margin, grafted_form, grafted_form_with_derivative, saddle_example, smoothstep, tune_graft, GraftConfig, GraftInput,
    TuneReport, BUMP_CELLS, MAX_TUNE_STEPS,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraftError {
    #[error("invalid chart: {0}")]
    Chart(String),
    #[error("forms live on different charts")]
    ChartMismatch,
    #[error("degree {degree} exceeds chart dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("invalid form: {0}")]
    Form(String),
    #[error("chart coordinate {0} is neither an axis nor fixed")]
    UnnamedCoordinate(String),
    #[error("profile parameters out of range: {0}")]
    Profile(String),
    #[error("no positive margin after {steps} evaluations (best {best_margin:e})")]
    SearchExhausted { best_margin: f64, steps: usize },
}
