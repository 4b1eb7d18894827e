use std::collections::VecDeque;

use rayon::prelude::*;

use super::chart::GridChart;
use super::form::FormField;
use super::GraftError;
use crate::scalar::Real;
use crate::verdict::{Status, Verdict};

/// Minimum of a top-degree coefficient against the chart's coordinate volume.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub margin: f64,
    /// Coordinates of the first sample attaining the margin.
    pub argmin: Vec<f64>,
    pub samples: usize,
    /// Named auxiliary residuals attached by the caller.
    pub residuals: Vec<(String, f64)>,
}

impl PositivityReport {
    pub fn is_positive(&self) -> bool {
        self.margin > 0.0
    }

    pub fn with_residual(mut self, name: &str, value: f64) -> Self {
        self.residuals.push((name.to_string(), value));
        self
    }
}

/// Smallest value of `f` over samples accepted by `keep`; ties go to the lowest index.
pub fn masked_min<T: Real>(chart: &GridChart, f: &[T], keep: impl Fn(&[f64]) -> bool + Sync) -> Option<(f64, usize)> {
    (0..chart.len())
        .into_par_iter()
        .filter(|&i| keep(&chart.coords(i)))
        .map(|i| (f[i].to_f64().unwrap_or(f64::NAN), i))
        .reduce_with(|a, b| {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) || a.0.is_nan() {
                b
            } else {
                a
            }
        })
}

/// Margin of `α ∧ dα` over the whole chart.
pub fn contact_margin<T: Real>(alpha: &FormField<T>) -> Result<PositivityReport, GraftError> {
    contact_margin_where(alpha, |_| true)
}

/// Margin of `α ∧ dα` over the samples accepted by `keep`.
pub fn contact_margin_where<T: Real>(
    alpha: &FormField<T>,
    keep: impl Fn(&[f64]) -> bool + Sync,
) -> Result<PositivityReport, GraftError> {
    let chart = alpha.chart();
    if chart.dim() != 3 || alpha.degree() != 1 {
        return Err(GraftError::Form("contact margin needs a 1-form on a 3-chart".into()));
    }
    let top = alpha.wedge(&alpha.d()?)?;
    top_margin(&top, keep)
}

/// Margin of a top-degree form over the samples accepted by `keep`.
pub fn top_margin<T: Real>(top: &FormField<T>, keep: impl Fn(&[f64]) -> bool + Sync) -> Result<PositivityReport, GraftError> {
    let chart = top.chart();
    if top.degree() != chart.dim() {
        return Err(GraftError::Form("margin needs a top-degree form".into()));
    }
    let f = &top.components()[0];
    let Some((margin, at)) = masked_min(chart, f, &keep) else {
        return Err(GraftError::Form("no samples selected".into()));
    };
    let samples = (0..chart.len()).filter(|&i| keep(&chart.coords(i))).count();
    Ok(PositivityReport { margin, argmin: chart.coords(at), samples, residuals: Vec::new() })
}

/// A declared singular point of a pair of boundary forms, with the
/// orientation signs the two forms induce there.
#[derive(Clone, Debug, PartialEq)]
pub struct Singularity {
    pub at: (f64, f64),
    pub sign1: i8,
    pub sign2: i8,
}

impl Singularity {
    pub fn new(x: f64, y: f64, sign: i8) -> Self {
        Singularity { at: (x, y), sign1: sign, sign2: sign }
    }
}

/// Samples where the coefficient norm is within one cell's worth of zero.
fn near_zeros<T: Real>(beta: &FormField<T>) -> Vec<bool> {
    let norm = beta.pointwise_norm();
    let h = beta.chart().axes().iter().map(|a| a.spacing()).fold(0.0, f64::max);
    let scale = norm.iter().copied().fold(0.0, f64::max);
    let cut = scale * h;
    norm.iter().map(|&v| v <= cut).collect()
}

/// Chebyshev grid distance at most one, respecting periodic wrap.
fn within_one_cell(chart: &GridChart, a: usize, b: usize) -> bool {
    let (ia, ib) = (chart.multi_index(a), chart.multi_index(b));
    ia.iter().zip(&ib).zip(chart.axes()).all(|((&x, &y), ax)| {
        let d = x.abs_diff(y);
        let d = if ax.periodic { d.min(ax.samples - d) } else { d };
        d <= 1
    })
}

fn nearest_sample(chart: &GridChart, p: (f64, f64)) -> usize {
    let idx: Vec<usize> = [p.0, p.1]
        .iter()
        .zip(chart.axes())
        .map(|(&v, a)| {
            let raw = ((v - a.lo) / a.spacing()).round() as i64;
            if a.periodic {
                raw.rem_euclid(a.samples as i64) as usize
            } else {
                raw.clamp(0, a.samples as i64 - 1) as usize
            }
        })
        .collect();
    chart.flat_index(&idx)
}

/// Pointwise compatibility of two boundary 1-forms on a surface chart:
/// `β1 ∧ β2 >= -tol`, matching zero loci, strict positivity away from the
/// zeros, and agreeing orientation signs at declared singular points.
pub fn compatibility_check<T: Real>(
    beta1: &FormField<T>,
    beta2: &FormField<T>,
    singularities: &[Singularity],
    tol: f64,
) -> Verdict {
    let chart = beta1.chart();
    if chart.dim() != 2 || beta1.degree() != 1 || beta2.degree() != 1 {
        return Verdict::error("compatibility needs two 1-forms on a 2-chart");
    }
    let wedge = match beta1.wedge(beta2) {
        Ok(w) => w,
        Err(e) => return Verdict::error(e.to_string()),
    };
    let coeff = &wedge.components()[0];
    let (min, at) = masked_min(chart, coeff, |_| true).expect("nonempty chart");
    let witness_at = |i: usize| format!("{:?}", chart.coords(i));
    if min < -tol {
        return Verdict::new(Status::Violated)
            .with_slack(min)
            .at_stage("wedge")
            .with_witness("at", witness_at(at))
            .because("wedge coefficient is negative");
    }
    let (z1, z2) = (near_zeros(beta1), near_zeros(beta2));
    let zeros1: Vec<usize> = (0..chart.len()).filter(|&i| z1[i]).collect();
    let zeros2: Vec<usize> = (0..chart.len()).filter(|&i| z2[i]).collect();
    for (from, to, label) in [(&zeros1, &zeros2, "first"), (&zeros2, &zeros1, "second")] {
        if let Some(&lonely) = from.iter().find(|&&i| !to.iter().any(|&j| within_one_cell(chart, i, j))) {
            return Verdict::new(Status::Violated)
                .at_stage("zeros")
                .with_witness("at", witness_at(lonely))
                .because(format!("zero of the {label} form has no partner within one cell"));
        }
    }
    let near_any = |i: usize| zeros1.iter().chain(&zeros2).any(|&j| within_one_cell(chart, i, j));
    let strict = (0..chart.len())
        .into_par_iter()
        .filter(|&i| !near_any(i))
        .map(|i| (coeff[i].to_f64().unwrap_or(f64::NAN), i))
        .reduce_with(|a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    if let Some((v, i)) = strict {
        if v <= tol {
            return Verdict::new(Status::Violated)
                .with_slack(v)
                .at_stage("strict")
                .with_witness("at", witness_at(i))
                .because("wedge coefficient is not strictly positive away from the zeros");
        }
    }
    for (k, s) in singularities.iter().enumerate() {
        let i = nearest_sample(chart, s.at);
        if !zeros1.iter().any(|&j| within_one_cell(chart, i, j)) {
            return Verdict::new(Status::Violated)
                .at_stage("orientation")
                .with_witness("singularity", k)
                .because("declared singular point is not a zero of the forms");
        }
        if s.sign1 != s.sign2 || s.sign1.abs() != 1 {
            return Verdict::new(Status::Violated)
                .at_stage("orientation")
                .with_witness("singularity", k)
                .because("orientation signs disagree");
        }
    }
    Verdict::new(Status::Holds)
        .with_slack(min)
        .at_stage("compatibility")
        .with_witness("zeros", zeros1.len())
}

/// Whether `q` is reachable from `p` along grid steps on which `β` is
/// positive, judged by the midpoint value of `β` on the step.
pub fn calabi_positive_path<T: Real>(beta: &FormField<T>, p: &[usize], q: &[usize], tol: f64) -> Verdict {
    let chart = beta.chart();
    if beta.degree() != 1 {
        return Verdict::error("path search needs a 1-form");
    }
    let dim = chart.dim();
    if p.len() != dim || q.len() != dim || p.iter().chain(q).zip(chart.axes().iter().cycle()).any(|(i, a)| *i >= a.samples) {
        return Verdict::error("endpoint outside the chart");
    }
    let norm = beta.pointwise_norm();
    let (pf, qf) = (chart.flat_index(p), chart.flat_index(q));
    for (name, f) in [("start", pf), ("end", qf)] {
        if norm[f] <= tol {
            return Verdict::error(format!("{name} point is a zero of the form"));
        }
    }
    let comps: Vec<Vec<f64>> = beta
        .components()
        .iter()
        .map(|c| c.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let mut seen = vec![false; chart.len()];
    let mut queue = VecDeque::from([pf]);
    seen[pf] = true;
    while let Some(u) = queue.pop_front() {
        if u == qf {
            return Verdict::new(Status::Holds).at_stage("positive-path");
        }
        let iu = chart.multi_index(u);
        for (axis, ax) in chart.axes().iter().enumerate() {
            for dir in [1i64, -1] {
                let next = iu[axis] as i64 + dir;
                let next = if ax.periodic {
                    next.rem_euclid(ax.samples as i64) as usize
                } else if next < 0 || next >= ax.samples as i64 {
                    continue;
                } else {
                    next as usize
                };
                let mut iv = iu.clone();
                iv[axis] = next;
                let v = chart.flat_index(&iv);
                if seen[v] {
                    continue;
                }
                let mid = 0.5 * (comps[axis][u] + comps[axis][v]);
                if mid * dir as f64 * ax.spacing() > tol {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    Verdict::new(Status::Violated)
        .at_stage("positive-path")
        .because("no positive path")
        .with_witness("reached", seen.iter().filter(|s| **s).count())
}

#[cfg(test)]
mod tests {
    use super::super::chart::Axis;
    use super::*;

    fn plane(n: usize) -> GridChart {
        GridChart::new(vec![Axis::new("x", n, -1.0, 1.0, false), Axis::new("y", n, -1.0, 1.0, false)]).unwrap()
    }

    #[test]
    fn standard_contact_form_has_margin_two() {
        let c = GridChart::new(vec![
            Axis::new("x", 16, -1.0, 1.0, false),
            Axis::new("y", 16, -1.0, 1.0, false),
            Axis::new("t", 16, -1.0, 1.0, false),
        ])
        .unwrap();
        let a = FormField::<f64>::from_fn(&c, 1, |p| vec![-p[1], p[0], 1.0]).unwrap();
        let r = contact_margin(&a).unwrap();
        assert!((r.margin - 2.0).abs() < 1e-9, "{}", r.margin);
    }

    #[test]
    fn compatibility_examples() {
        let c = plane(33);
        let dx = FormField::<f64>::from_fn(&c, 1, |_| vec![1.0, 0.0]).unwrap();
        let dy = FormField::<f64>::from_fn(&c, 1, |_| vec![0.0, 1.0]).unwrap();
        assert!(compatibility_check(&dx, &dy, &[], 1e-9).is_holds());
        let v = compatibility_check(&dx, &dy.scale(-1.0), &[], 1e-9);
        assert_eq!((v.status, v.stage.as_deref()), (Status::Violated, Some("wedge")));
        let b1 = FormField::<f64>::from_fn(&c, 1, |p| vec![2.0 * p[0], -2.0 * p[1]]).unwrap();
        let b2 = FormField::<f64>::from_fn(&c, 1, |p| vec![2.0 * p[1], 2.0 * p[0]]).unwrap();
        let v = compatibility_check(&b1, &b2, &[Singularity::new(0.0, 0.0, 1)], 1e-9);
        assert!(v.is_holds(), "{v}");
        let bad = Singularity { at: (0.0, 0.0), sign1: 1, sign2: -1 };
        assert_eq!(compatibility_check(&b1, &b2, &[bad], 1e-9).stage.as_deref(), Some("orientation"));
    }

    #[test]
    fn positive_paths() {
        let c = GridChart::new(vec![Axis::new("x", 16, 0.0, 1.0, true), Axis::new("y", 16, 0.0, 1.0, true)]).unwrap();
        let dx = FormField::<f64>::from_fn(&c, 1, |_| vec![1.0, 0.0]).unwrap();
        assert!(calabi_positive_path(&dx, &[0, 0], &[5, 0], 1e-9).is_holds());
        assert_eq!(calabi_positive_path(&dx, &[0, 0], &[0, 5], 1e-9).status, Status::Violated);
        let zero = FormField::<f64>::zero(&c, 1).unwrap();
        assert_eq!(calabi_positive_path(&zero, &[0, 0], &[1, 0], 1e-9).status, Status::Error);
    }
}
