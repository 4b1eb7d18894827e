use std::f64::consts::PI;

use super::chart::{Axis, GridChart};
use super::contact::{contact_margin, PositivityReport};
use super::form::FormField;
use super::GraftError;
use crate::scalar::Real;

/// How one polar coordinate of the affine chart `[z1 : z2 : 1]` is read off a grid chart.
#[derive(Clone, Copy, Debug)]
pub enum Coord {
    Axis(usize),
    Fixed(f64),
    /// A function of one axis; allowed for radii only.
    Along { axis: usize, f: fn(f64) -> f64 },
}

/// Embedding of a grid chart into `(r1, θ1, r2, θ2)`.
#[derive(Clone, Copy, Debug)]
pub struct PolarSlice {
    pub r1: Coord,
    pub theta1: Coord,
    pub r2: Coord,
    pub theta2: Coord,
}

impl PolarSlice {
    /// Matches axes named `r1`, `theta1`, `r2`, `theta2`; the rest must be fixed.
    pub fn from_names(chart: &GridChart, fixed: &[(&str, f64)]) -> Result<Self, GraftError> {
        let pick = |name: &str| -> Result<Coord, GraftError> {
            if let Some(i) = chart.axis_index(name) {
                return Ok(Coord::Axis(i));
            }
            fixed
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| Coord::Fixed(*v))
                .ok_or_else(|| GraftError::UnnamedCoordinate(name.to_string()))
        };
        Ok(PolarSlice { r1: pick("r1")?, theta1: pick("theta1")?, r2: pick("r2")?, theta2: pick("theta2")? })
    }

    fn eval(c: Coord, p: &[f64]) -> f64 {
        match c {
            Coord::Axis(i) => p[i],
            Coord::Fixed(v) => v,
            Coord::Along { axis, f } => f(p[axis]),
        }
    }

    fn angle_axis(c: Coord) -> Result<Option<usize>, GraftError> {
        match c {
            Coord::Axis(i) => Ok(Some(i)),
            Coord::Fixed(_) => Ok(None),
            Coord::Along { .. } => Err(GraftError::Chart("angles must be axes or fixed".into())),
        }
    }
}

/// `(dθ1, dθ2)` coefficients of the standard Liouville form of the affine
/// chart where `z_{λ-1} = 1`, written in the polar coordinates of `[z1 : z2 : 1]`.
fn liouville_coefficients(lambda: usize, r1: f64, r2: f64) -> (f64, f64) {
    let pair = |a: f64, b: f64| {
        let den = 1.0 + a * a + b * b;
        (2.0 * a * a / den, 2.0 * b * b / den)
    };
    match lambda {
        1 => pair(r1, r2),
        // w2 = z2 / z1, w3 = 1 / z1: dφ2 = dθ2 - dθ1, dφ3 = -dθ1
        2 => {
            let (a, b) = pair(r2 / r1, 1.0 / r1);
            (-a - b, a)
        }
        // s1 = z1 / z2, s3 = 1 / z2: dψ1 = dθ1 - dθ2, dψ3 = -dθ2
        _ => {
            let (a, b) = pair(r1 / r2, 1.0 / r2);
            (a, -a - b)
        }
    }
}

/// Samples the Liouville primitive `α_λ` of the Fubini–Study form on a slice
/// of the affine chart `[z1 : z2 : 1]`.
pub fn fs_liouville<T: Real>(lambda: usize, chart: &GridChart, slice: &PolarSlice) -> Result<FormField<T>, GraftError> {
    if !(1..=3).contains(&lambda) {
        return Err(GraftError::Form(format!("sector {lambda} is not 1, 2 or 3")));
    }
    let t1 = PolarSlice::angle_axis(slice.theta1)?;
    let t2 = PolarSlice::angle_axis(slice.theta2)?;
    let dim = chart.dim();
    FormField::from_fn(chart, 1, |p| {
        let r1 = PolarSlice::eval(slice.r1, p);
        let r2 = PolarSlice::eval(slice.r2, p);
        let (a1, a2) = liouville_coefficients(lambda, r1, r2);
        let mut out = vec![0.0; dim];
        if let Some(i) = t1 {
            out[i] += a1;
        }
        if let Some(i) = t2 {
            out[i] += a2;
        }
        out
    })
}

/// Closed form of `dα_1` on the slice `r2 = 1` with axes `(r1, θ1, θ2)`.
fn d_alpha1_on_torus(p: &[f64]) -> Vec<f64> {
    let r1 = p[0];
    let den = 2.0 + r1 * r1;
    let d1 = 8.0 * r1 / (den * den);
    let d2 = -4.0 * r1 / (den * den);
    // basis order: (r1,θ1), (r1,θ2), (θ1,θ2)
    vec![d1, d2, 0.0]
}

/// The torus slice `|z2| = 1` used for the sector-change identity.
pub fn torus_slice_chart(resolution: usize) -> Result<GridChart, GraftError> {
    GridChart::new(vec![
        Axis::new("r1", resolution, 0.25, 1.0, false),
        Axis::new("theta1", resolution, 0.0, 2.0 * PI, true),
        Axis::new("theta2", resolution, 0.0, 2.0 * PI, true),
    ])
}

const CORNER_POWER: i32 = 6;
const CORNER_INSET: f64 = 0.05;

fn corner_r1(v: f64) -> f64 {
    let (c, s) = (v.cos(), v.sin());
    c / (c.powi(CORNER_POWER) + s.powi(CORNER_POWER)).powf(1.0 / CORNER_POWER as f64)
}

fn corner_r2(v: f64) -> f64 {
    corner_r1(0.5 * PI - v)
}

/// Smoothed boundary of the polydisk `|z1|, |z2| <= 1`, axes `(θ1, v, θ2)`
/// ordered so the chart orientation is the boundary orientation.
pub fn smoothed_corner_chart(resolution: usize) -> Result<(GridChart, PolarSlice), GraftError> {
    let chart = GridChart::new(vec![
        Axis::new("theta1", resolution, 0.0, 2.0 * PI, true),
        Axis::new("v", resolution, CORNER_INSET, 0.5 * PI - CORNER_INSET, false),
        Axis::new("theta2", resolution, 0.0, 2.0 * PI, true),
    ])?;
    let slice = PolarSlice {
        r1: Coord::Along { axis: 1, f: corner_r1 },
        theta1: Coord::Axis(0),
        r2: Coord::Along { axis: 1, f: corner_r2 },
        theta2: Coord::Axis(2),
    };
    Ok((chart, slice))
}

/// Residuals of the sector-change identity `α1 - α3 = 2 dθ2`, its derivative
/// check, and the contact margin of `α1` on the smoothed polydisk boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct FsIdentityReport {
    pub resolution: usize,
    /// `max |α1 - α3 - 2 dθ2|` on the torus slice.
    pub identity_residual: f64,
    /// `max |dα1 - dα3|` with both derivatives taken numerically.
    pub derivative_agreement: f64,
    /// `max |dα1 - closed form|`; shrinks under refinement.
    pub derivative_residual: f64,
    pub boundary: PositivityReport,
}

pub fn verify_fs_identities(resolution: usize) -> Result<FsIdentityReport, GraftError> {
    let chart = torus_slice_chart(resolution)?;
    let slice = PolarSlice::from_names(&chart, &[("r2", 1.0)])?;
    let a1 = fs_liouville::<f64>(1, &chart, &slice)?;
    let a3 = fs_liouville::<f64>(3, &chart, &slice)?;
    let two_dtheta2 = FormField::<f64>::from_fn(&chart, 1, |_| vec![0.0, 0.0, 2.0])?;
    let identity_residual = a1.sub(&a3)?.sub(&two_dtheta2)?.max_abs();
    let (d1, d3) = (a1.d()?, a3.d()?);
    let derivative_agreement = d1.sub(&d3)?.max_abs();
    let exact = FormField::<f64>::from_fn(&chart, 2, d_alpha1_on_torus)?;
    let derivative_residual = d1.sub(&exact)?.max_abs();

    let (corner, cslice) = smoothed_corner_chart(resolution)?;
    let alpha = fs_liouville::<f64>(1, &corner, &cslice)?;
    let boundary = contact_margin(&alpha)?;
    Ok(FsIdentityReport { resolution, identity_residual, derivative_agreement, derivative_residual, boundary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_change_identity_and_boundary_margin() {
        let r = verify_fs_identities(32).unwrap();
        assert!(r.identity_residual < 1e-12, "{r:?}");
        assert!(r.derivative_agreement < 1e-8, "{r:?}");
        assert!(r.boundary.margin > 0.0, "{r:?}");
        let fine = verify_fs_identities(64).unwrap();
        assert!(fine.derivative_residual * 8.0 <= r.derivative_residual, "{r:?} {fine:?}");
    }

    #[test]
    fn all_sectors_differ_by_closed_forms() {
        let chart = torus_slice_chart(16).unwrap();
        let slice = PolarSlice::from_names(&chart, &[("r2", 1.0)]).unwrap();
        let a1 = fs_liouville::<f64>(1, &chart, &slice).unwrap();
        let a2 = fs_liouville::<f64>(2, &chart, &slice).unwrap();
        let two_dtheta1 = FormField::<f64>::from_fn(&chart, 1, |_| vec![0.0, 2.0, 0.0]).unwrap();
        assert!(a1.sub(&a2).unwrap().sub(&two_dtheta1).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn unnamed_coordinates_are_rejected() {
        let chart = torus_slice_chart(16).unwrap();
        assert!(matches!(PolarSlice::from_names(&chart, &[]), Err(GraftError::UnnamedCoordinate(n)) if n == "r2"));
    }
}
