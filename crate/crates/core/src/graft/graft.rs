use rayon::prelude::*;

use super::chart::{Axis, GridChart};
use super::contact::{top_margin, PositivityReport, Singularity};
use super::form::FormField;
use super::GraftError;
use crate::scalar::Real;

/// Quintic smoothstep clamped to `[0, 1]`.
pub fn smoothstep(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * u * (10.0 - 15.0 * u + 6.0 * u * u)
}

fn smoothstep_slope(u: f64) -> f64 {
    if (0.0..=1.0).contains(&u) {
        30.0 * u * u * (1.0 - u) * (1.0 - u)
    } else {
        0.0
    }
}

/// Patch radius in grid cells used by [`GraftConfig::for_chart`].
pub const BUMP_CELLS: f64 = 8.0;

/// Parameters of the interpolation across the collar `Σ × [-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraftConfig {
    /// Weight of the collar primitives.
    pub epsilon: f64,
    /// Weight of the patches around singular arcs.
    pub delta: f64,
    /// Width of each collar cutoff transition.
    pub epsilon0: f64,
    /// Radius of a singular patch in chart units.
    pub bump_radius: f64,
}

impl Default for GraftConfig {
    fn default() -> Self {
        GraftConfig { epsilon: 0.5, delta: 0.5, epsilon0: 0.25, bump_radius: 0.25 }
    }
}

impl GraftConfig {
    /// Default weights with the patch radius set to [`BUMP_CELLS`] surface cells.
    pub fn for_chart(chart: &GridChart) -> Self {
        let h = chart.axes()[..2].iter().map(|a| a.spacing()).fold(0.0, f64::max);
        GraftConfig { bump_radius: BUMP_CELLS * h, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), GraftError> {
        let ok = self.epsilon >= 0.0
            && self.delta >= 0.0
            && self.epsilon0 > 0.0
            && self.epsilon0 <= 0.5
            && self.bump_radius > 0.0
            && self.epsilon.is_finite()
            && self.delta.is_finite();
        if ok {
            Ok(())
        } else {
            Err(GraftError::Profile(format!("{self:?}")))
        }
    }

    /// Interpolation weight, 0 below `t = -1` and 1 above `t = 1`.
    pub fn phi(&self, t: f64) -> f64 {
        smoothstep((t + 1.0) / 2.0)
    }

    fn phi_slope(&self, t: f64) -> f64 {
        smoothstep_slope((t + 1.0) / 2.0) / 2.0
    }

    /// Bump carrying the singular patches, supported in `(-1, 1)`.
    pub fn q(&self, t: f64) -> f64 {
        if t.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - t * t).powi(3)
        }
    }

    fn q_slope(&self, t: f64) -> f64 {
        if t.abs() >= 1.0 {
            0.0
        } else {
            -6.0 * t * (1.0 - t * t).powi(2)
        }
    }

    /// Cutoff for the collar at `t = -1`: 1 below `-1 + ε0`, 0 above `-1 + 2ε0`.
    pub fn psi_low(&self, t: f64) -> f64 {
        1.0 - smoothstep((t - (-1.0 + self.epsilon0)) / self.epsilon0)
    }

    fn psi_low_slope(&self, t: f64) -> f64 {
        -smoothstep_slope((t - (-1.0 + self.epsilon0)) / self.epsilon0) / self.epsilon0
    }

    /// Mirror image of [`GraftConfig::psi_low`] at `t = 1`.
    pub fn psi_high(&self, t: f64) -> f64 {
        self.psi_low(-t)
    }

    fn psi_high_slope(&self, t: f64) -> f64 {
        -self.psi_low_slope(-t)
    }

    /// Radial patch profile and its radial slope.
    fn bump(&self, r: f64) -> (f64, f64) {
        let u = (r / self.bump_radius - 0.5) / 0.5;
        (1.0 - smoothstep(u), -2.0 * smoothstep_slope(u) / self.bump_radius)
    }
}

/// Boundary data for a graft, sampled on `Σ × T` with `T ⊇ [-1, 1]` as the last axis.
#[derive(Clone, Debug)]
pub struct GraftInput<T> {
    /// Boundary form on the side `t >= 1`.
    pub beta1: FormField<T>,
    /// Boundary form on the side `t <= -1`.
    pub beta2: FormField<T>,
    /// Primitive with `β1 ∧ dμ1 > 0` near `t = 1`.
    pub mu1: FormField<T>,
    /// Primitive with `β2 ∧ dμ2 > 0` near `t = -1`.
    pub mu2: FormField<T>,
    pub singularities: Vec<Singularity>,
    /// Restricts the margin to `|t| <= slab` when set.
    pub slab: Option<f64>,
}

impl<T: Real> GraftInput<T> {
    /// Lifts surface forms to the product and takes `μ1 = -t β2`, `μ2 = t β1`.
    pub fn from_surface(
        beta1: &FormField<T>,
        beta2: &FormField<T>,
        t_axis: Axis,
        singularities: Vec<Singularity>,
    ) -> Result<Self, GraftError> {
        let chart = beta1.chart().product(t_axis)?;
        let b1 = beta1.lift_to(&chart)?;
        let b2 = beta2.lift_to(&chart)?;
        let t = FormField::<T>::function(&chart, |p| p[2])?;
        let tt = &t.components()[0];
        let mu1 = b2.times(tt).scale(-T::one());
        let mu2 = b1.times(tt);
        Ok(GraftInput { beta1: b1, beta2: b2, mu1, mu2, singularities, slab: None })
    }

    pub fn chart(&self) -> &GridChart {
        self.beta1.chart()
    }

    fn validate(&self) -> Result<(), GraftError> {
        let c = self.chart();
        if c.dim() != 3 {
            return Err(GraftError::Chart("graft needs a 3-chart".into()));
        }
        for f in [&self.beta2, &self.mu1, &self.mu2] {
            if f.chart() != c {
                return Err(GraftError::ChartMismatch);
            }
        }
        if [&self.beta1, &self.beta2, &self.mu1, &self.mu2].iter().any(|f| f.degree() != 1) {
            return Err(GraftError::Form("graft inputs must be 1-forms".into()));
        }
        let t = &c.axes()[2];
        if t.periodic || t.lo > -1.0 || t.hi < 1.0 {
            return Err(GraftError::Chart("last axis must be an open interval containing [-1, 1]".into()));
        }
        Ok(())
    }

    /// Samples where the margin is measured.
    pub fn in_region(&self, p: &[f64]) -> bool {
        self.slab.is_none_or(|s| p[2].abs() <= s)
    }
}

/// Interpolated form `ε ψ_low μ2 + α0 + δ Σ q a_s + ε ψ_high μ1` with
/// `α0 = φ β1 + (1 - φ) β2` and `a_s` the standard contact patch at each
/// singular arc.
pub fn grafted_form<T: Real>(input: &GraftInput<T>, cfg: &GraftConfig) -> Result<FormField<T>, GraftError> {
    Ok(grafted_form_with_derivative(input, cfg, false)?.0)
}

/// The grafted form and, when asked, its exterior derivative. Profiles are
/// differentiated in closed form; only the sampled inputs use finite differences.
pub fn grafted_form_with_derivative<T: Real>(
    input: &GraftInput<T>,
    cfg: &GraftConfig,
    want_derivative: bool,
) -> Result<(FormField<T>, Option<FormField<T>>), GraftError> {
    input.validate()?;
    cfg.validate()?;
    let chart = input.chart().clone();
    let profile = |f: &(dyn Fn(f64) -> f64 + Sync)| -> Vec<T> {
        (0..chart.len()).into_par_iter().map(|i| T::c(f(chart.coords(i)[2]))).collect()
    };
    type Weight<'a> = (&'a (dyn Fn(f64) -> f64 + Sync), &'a (dyn Fn(f64) -> f64 + Sync));
    let eps = cfg.epsilon;
    let terms: [(&FormField<T>, Weight); 4] = [
        (&input.beta1, (&|t| cfg.phi(t), &|t| cfg.phi_slope(t))),
        (&input.beta2, (&|t| 1.0 - cfg.phi(t), &|t| -cfg.phi_slope(t))),
        (&input.mu2, (&|t| eps * cfg.psi_low(t), &|t| eps * cfg.psi_low_slope(t))),
        (&input.mu1, (&|t| eps * cfg.psi_high(t), &|t| eps * cfg.psi_high_slope(t))),
    ];
    let dt = FormField::<T>::from_fn(&chart, 1, |_| vec![0.0, 0.0, 1.0])?;
    let mut alpha = FormField::zero(&chart, 1)?;
    let mut d_alpha = FormField::zero(&chart, 2)?;
    for (form, (w, w_slope)) in terms {
        let weight = profile(w);
        alpha = alpha.add(&form.times(&weight))?;
        if want_derivative {
            let slope = profile(w_slope);
            d_alpha = d_alpha.add(&dt.wedge(form)?.times(&slope))?.add(&form.d()?.times(&weight))?;
        }
    }
    if cfg.delta > 0.0 && !input.singularities.is_empty() {
        let sings = &input.singularities;
        // value, gradient of the patch coefficient for each singularity at p
        let coeff = |p: &[f64], s: &Singularity| -> (f64, [f64; 3]) {
            let (x, y) = (p[0] - s.at.0, p[1] - s.at.1);
            let r = (x * x + y * y).sqrt();
            let (b, b_r) = cfg.bump(r);
            let (q, q_t) = (cfg.q(p[2]), cfg.q_slope(p[2]));
            let k = cfg.delta * s.sign1 as f64;
            let (gx, gy) = if r > 0.0 { (b_r * x / r, b_r * y / r) } else { (0.0, 0.0) };
            (k * q * b, [k * q * gx, k * q * gy, k * q_t * b])
        };
        let patch = FormField::<T>::from_fn(&chart, 1, |p| {
            let mut out = vec![0.0; 3];
            for s in sings {
                let c = coeff(p, s).0;
                out[0] -= c * (p[1] - s.at.1);
                out[1] += c * (p[0] - s.at.0);
                out[2] += c;
            }
            out
        })?;
        alpha = alpha.add(&patch)?;
        if want_derivative {
            let d_patch = FormField::<T>::from_fn(&chart, 2, |p| {
                let mut out = vec![0.0; 3];
                for s in sings {
                    let (c, g) = coeff(p, s);
                    let eta = [-(p[1] - s.at.1), p[0] - s.at.0, 1.0];
                    out[0] += g[0] * eta[1] - g[1] * eta[0] + 2.0 * c;
                    out[1] += g[0] * eta[2] - g[2] * eta[0];
                    out[2] += g[1] * eta[2] - g[2] * eta[1];
                }
                out
            })?;
            d_alpha = d_alpha.add(&d_patch)?;
        }
    }
    Ok((alpha, want_derivative.then_some(d_alpha)))
}

/// Margin of the grafted form over the input's region.
pub fn graft_margin<T: Real>(input: &GraftInput<T>, cfg: &GraftConfig) -> Result<PositivityReport, GraftError> {
    let (alpha, d_alpha) = grafted_form_with_derivative(input, cfg, true)?;
    let top = alpha.wedge(&d_alpha.expect("derivative requested"))?;
    top_margin(&top, |p| input.in_region(p))
}

/// Outcome of a parameter search.
#[derive(Clone, Debug, PartialEq)]
pub struct TuneReport {
    pub config: GraftConfig,
    pub report: PositivityReport,
    /// Margin after halving `ε` from the returned config.
    pub halved_epsilon_margin: f64,
    /// Every evaluated config with its margin, in order.
    pub log: Vec<(GraftConfig, f64)>,
}

pub const MAX_TUNE_STEPS: usize = 40;

/// Greedy halving search over `(ε, δ, ε0)` for a positive margin.
pub fn tune_graft<T: Real>(input: &GraftInput<T>, start: GraftConfig, budget: usize) -> Result<TuneReport, GraftError> {
    let budget = budget.min(MAX_TUNE_STEPS);
    let mut log = Vec::new();
    let eval = |cfg: GraftConfig, log: &mut Vec<(GraftConfig, f64)>| -> Result<PositivityReport, GraftError> {
        let r = graft_margin(input, &cfg)?;
        log.push((cfg, r.margin));
        Ok(r)
    };
    let mut best = (start, eval(start, &mut log)?);
    while !best.1.is_positive() && log.len() < budget {
        let c = best.0;
        let mut moves = vec![GraftConfig { epsilon: c.epsilon / 2.0, ..c }, GraftConfig { epsilon0: c.epsilon0 / 2.0, ..c }];
        if !input.singularities.is_empty() {
            moves.push(GraftConfig { delta: c.delta / 2.0, ..c });
        }
        let mut round: Option<(GraftConfig, PositivityReport)> = None;
        for m in moves {
            if log.len() >= budget {
                break;
            }
            let r = eval(m, &mut log)?;
            if round.as_ref().is_none_or(|b| r.margin > b.1.margin) {
                round = Some((m, r));
            }
        }
        match round {
            Some(r) => best = r,
            None => break,
        }
    }
    if !best.1.is_positive() {
        return Err(GraftError::SearchExhausted { best_margin: best.1.margin, steps: log.len() });
    }
    let halved = GraftConfig { epsilon: best.0.epsilon / 2.0, ..best.0 };
    let halved_epsilon_margin = graft_margin(input, &halved)?.margin;
    Ok(TuneReport { config: best.0, report: best.1, halved_epsilon_margin, log })
}

/// Product-collar example with `β1 = dx`, `β2 = dy` on the flat torus.
pub fn collar_example<T: Real>(samples: usize) -> Result<GraftInput<T>, GraftError> {
    let surface = GridChart::new(vec![Axis::new("x", samples, 0.0, 1.0, true), Axis::new("y", samples, 0.0, 1.0, true)])?;
    let dx = FormField::<T>::from_fn(&surface, 1, |_| vec![1.0, 0.0])?;
    let dy = FormField::<T>::from_fn(&surface, 1, |_| vec![0.0, 1.0])?;
    GraftInput::from_surface(&dx, &dy, Axis::new("t", samples, -1.25, 1.25, false), Vec::new())
}

/// Saddle pair `d(x² - y²)`, `d(2xy)` with one positive singular arc at the
/// origin. Odd sample counts put the origin on the grid.
pub fn saddle_example<T: Real>(samples: usize) -> Result<GraftInput<T>, GraftError> {
    let n = samples | 1;
    let surface = GridChart::new(vec![Axis::new("x", n, -1.0, 1.0, false), Axis::new("y", n, -1.0, 1.0, false)])?;
    let b1 = FormField::<T>::from_fn(&surface, 1, |p| vec![2.0 * p[0], -2.0 * p[1]])?;
    let b2 = FormField::<T>::from_fn(&surface, 1, |p| vec![2.0 * p[1], 2.0 * p[0]])?;
    let mut input = GraftInput::from_surface(&b1, &b2, Axis::new("t", samples, -1.25, 1.25, false), vec![Singularity::new(0.0, 0.0, 1)])?;
    input.slab = Some(0.5);
    Ok(input)
}
