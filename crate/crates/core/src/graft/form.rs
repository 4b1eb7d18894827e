use rayon::prelude::*;

use super::chart::GridChart;
use super::GraftError;
use crate::scalar::Real;

/// Increasing index sets of size `k` drawn from `0..dim`, in lexicographic order.
pub fn basis(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            go(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= dim {
        go(0, dim, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Sign of the permutation sorting the concatenation `a ++ b`, or 0 on overlap.
fn merge_sign(a: &[usize], b: &[usize]) -> i32 {
    let mut inversions = 0;
    for &x in a {
        for &y in b {
            if x == y {
                return 0;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn merged(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut m: Vec<usize> = a.iter().chain(b).copied().collect();
    m.sort_unstable();
    m
}

/// First-derivative weights at `x0` for the nodes `xs` (Fornberg's recursion).
pub fn derivative_weights(x0: f64, xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    // c[j][m]: weight of node j for derivative order m, m in {0, 1}.
    let mut c = vec![[0.0f64; 2]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    for i in 1..n {
        let mut c2 = 1.0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                let m1 = c1 / c2;
                c[i][1] = m1 * (c[i - 1][0] - (xs[i - 1] - x0) * c[i - 1][1]);
                c[i][0] = -m1 * (xs[i - 1] - x0) * c[i - 1][0];
            }
            c[j][1] = ((xs[i] - x0) * c[j][1] - c[j][0]) / c3;
            c[j][0] = (xs[i] - x0) * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|w| w[1]).collect()
}

const WIDTH: usize = 7;
const HALF: usize = 3;
const CENTRAL: [f64; 3] = [3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];

/// Sixth-order first-derivative operator along one axis.
struct AxisStencil<T> {
    n: usize,
    stride: usize,
    periodic: bool,
    inv_h: T,
    central: [T; 3],
    /// One-sided windows for the first and last three samples of an open axis.
    edge: Vec<Vec<T>>,
}

impl<T: Real> AxisStencil<T> {
    fn new(chart: &GridChart, axis: usize) -> Self {
        let a = &chart.axes()[axis];
        let xs: Vec<f64> = (0..WIDTH).map(|i| i as f64).collect();
        let edge = (0..HALF)
            .map(|p| derivative_weights(p as f64, &xs).into_iter().map(T::c).collect())
            .collect();
        AxisStencil {
            n: a.samples,
            stride: chart.strides()[axis],
            periodic: a.periodic,
            inv_h: T::c(1.0 / a.spacing()),
            central: CENTRAL.map(T::c),
            edge,
        }
    }

    /// Derivative at the sample whose position along the axis is `i` and whose
    /// flat index with that position zeroed is `base`.
    fn apply(&self, f: &[T], base: usize, i: usize) -> T {
        let at = |j: usize| f[base + j * self.stride];
        let n = self.n;
        if self.periodic || (i >= HALF && i + HALF < n) {
            let mut acc = T::zero();
            for k in 1..=HALF {
                let (p, m) = if self.periodic { ((i + k) % n, (i + n - k) % n) } else { (i + k, i - k) };
                acc = acc + self.central[k - 1] * (at(p) - at(m));
            }
            return acc * self.inv_h;
        }
        let mut acc = T::zero();
        if i < HALF {
            for (k, w) in self.edge[i].iter().enumerate() {
                acc = acc + *w * at(k);
            }
            acc * self.inv_h
        } else {
            let p = n - 1 - i;
            for (k, w) in self.edge[p].iter().enumerate() {
                acc = acc + *w * at(n - 1 - k);
            }
            -acc * self.inv_h
        }
    }
}

/// Partial derivative of a sampled function along `axis`.
pub fn partial<T: Real>(chart: &GridChart, f: &[T], axis: usize) -> Vec<T> {
    let st = AxisStencil::<T>::new(chart, axis);
    (0..chart.len())
        .into_par_iter()
        .map(|flat| {
            let i = (flat / st.stride) % st.n;
            st.apply(f, flat - i * st.stride, i)
        })
        .collect()
}

/// A differential form sampled on a grid chart, one array per basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct FormField<T> {
    chart: GridChart,
    degree: usize,
    components: Vec<Vec<T>>,
}

impl<T: Real> FormField<T> {
    pub fn zero(chart: &GridChart, degree: usize) -> Result<Self, GraftError> {
        if degree > chart.dim() {
            return Err(GraftError::DegreeOverflow { degree, dim: chart.dim() });
        }
        let count = basis(chart.dim(), degree).len();
        Ok(FormField { chart: chart.clone(), degree, components: vec![vec![T::zero(); chart.len()]; count] })
    }

    pub fn from_components(chart: &GridChart, degree: usize, components: Vec<Vec<T>>) -> Result<Self, GraftError> {
        let f = Self::zero(chart, degree)?;
        if components.len() != f.components.len() || components.iter().any(|c| c.len() != chart.len()) {
            return Err(GraftError::Form(format!(
                "expected {} components of length {}",
                f.components.len(),
                chart.len()
            )));
        }
        Ok(FormField { components, ..f })
    }

    /// Samples `f(coords) -> coefficients` at every grid point.
    pub fn from_fn<F>(chart: &GridChart, degree: usize, f: F) -> Result<Self, GraftError>
    where
        F: Fn(&[f64]) -> Vec<f64> + Sync,
    {
        let count = basis(chart.dim(), degree).len();
        let mut out = Self::zero(chart, degree)?;
        let samples: Vec<Vec<f64>> = (0..chart.len()).into_par_iter().map(|i| f(&chart.coords(i))).collect();
        for (i, s) in samples.iter().enumerate() {
            if s.len() != count {
                return Err(GraftError::Form(format!("sampler returned {} coefficients, expected {count}", s.len())));
            }
            for (c, v) in s.iter().enumerate() {
                out.components[c][i] = T::c(*v);
            }
        }
        Ok(out)
    }

    pub fn function<F>(chart: &GridChart, f: F) -> Result<Self, GraftError>
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        Self::from_fn(chart, 0, |p| vec![f(p)])
    }

    pub fn chart(&self) -> &GridChart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Vec<T>] {
        &self.components
    }

    pub fn component(&self, index: &[usize]) -> Option<&[T]> {
        basis(self.chart.dim(), self.degree)
            .iter()
            .position(|b| b == index)
            .map(|p| self.components[p].as_slice())
    }

    fn same_chart(&self, other: &Self) -> Result<(), GraftError> {
        if self.chart != other.chart {
            Err(GraftError::ChartMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GraftError> {
        self.same_chart(other)?;
        if self.degree != other.degree {
            return Err(GraftError::Form(format!("cannot add degrees {} and {}", self.degree, other.degree)));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x + *y).collect())
            .collect();
        Ok(FormField { components, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GraftError> {
        self.add(&other.scale(-T::one()))
    }

    pub fn scale(&self, s: T) -> Self {
        self.map_points(|_, v| v * s)
    }

    /// Multiplies by a sampled function.
    pub fn times(&self, f: &[T]) -> Self {
        self.map_points(|i, v| v * f[i])
    }

    fn map_points(&self, g: impl Fn(usize, T) -> T + Sync) -> Self {
        let components = self
            .components
            .iter()
            .map(|c| c.par_iter().enumerate().map(|(i, v)| g(i, *v)).collect())
            .collect();
        FormField { components, ..self.clone() }
    }

    /// Largest absolute coefficient over all components.
    pub fn max_abs(&self) -> f64 {
        self.components
            .iter()
            .flat_map(|c| c.iter())
            .map(|v| v.abs().to_f64().unwrap_or(f64::NAN))
            .fold(0.0, f64::max)
    }

    /// Pointwise Euclidean norm of the coefficient vector.
    pub fn pointwise_norm(&self) -> Vec<f64> {
        (0..self.chart.len())
            .map(|i| {
                self.components
                    .iter()
                    .map(|c| c[i].to_f64().unwrap_or(f64::NAN).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }

    /// Exterior derivative by sixth-order finite differences.
    pub fn d(&self) -> Result<Self, GraftError> {
        exterior_derivative(self)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, GraftError> {
        wedge(self, other)
    }

    /// Extends a form on a 2-chart to the product chart, constant along the new axis.
    pub fn lift_to(&self, product: &GridChart) -> Result<Self, GraftError> {
        let dim = self.chart.dim();
        if product.dim() != dim + 1 || product.axes()[..dim] != self.chart.axes()[..] {
            return Err(GraftError::ChartMismatch);
        }
        let inner = product.axes()[dim].samples;
        let small = basis(dim, self.degree);
        let big = basis(dim + 1, self.degree);
        let mut out = Self::zero(product, self.degree)?;
        for (c, b) in small.iter().enumerate() {
            let target = big.iter().position(|x| x == b).expect("sub-basis");
            out.components[target] = self.components[c].iter().flat_map(|v| std::iter::repeat_n(*v, inner)).collect();
        }
        Ok(out)
    }
}

pub fn exterior_derivative<T: Real>(form: &FormField<T>) -> Result<FormField<T>, GraftError> {
    let chart = &form.chart;
    let dim = chart.dim();
    let k = form.degree;
    if k + 1 > dim {
        return Err(GraftError::DegreeOverflow { degree: k + 1, dim });
    }
    let src = basis(dim, k);
    let dst = basis(dim, k + 1);
    let mut out = FormField::zero(chart, k + 1)?;
    for (c, idx) in src.iter().enumerate() {
        for axis in 0..dim {
            let sign = merge_sign(&[axis], idx);
            if sign == 0 {
                continue;
            }
            let target = dst.iter().position(|b| *b == merged(&[axis], idx)).expect("basis element");
            let p = partial(chart, &form.components[c], axis);
            let acc = &mut out.components[target];
            for (a, v) in acc.iter_mut().zip(p) {
                *a = if sign > 0 { *a + v } else { *a - v };
            }
        }
    }
    Ok(out)
}

/// Pointwise wedge product. Terms are summed in an order fixed by the
/// lower-degree factor, so `a ∧ b` and `b ∧ a` agree up to sign bit for bit.
pub fn wedge<T: Real>(a: &FormField<T>, b: &FormField<T>) -> Result<FormField<T>, GraftError> {
    a.same_chart(b)?;
    let dim = a.chart.dim();
    let (p, q) = (a.degree, b.degree);
    if p + q > dim {
        return Err(GraftError::DegreeOverflow { degree: p + q, dim });
    }
    let (ba, bb, bk) = (basis(dim, p), basis(dim, q), basis(dim, p + q));
    let lead_is_a = p <= q;
    let mut out = FormField::zero(&a.chart, p + q)?;
    for (kc, kset) in bk.iter().enumerate() {
        // (index into a, index into b, sign) for each split of kset
        let mut terms = Vec::new();
        let lead_basis = if lead_is_a { &ba } else { &bb };
        for (li, lset) in lead_basis.iter().enumerate() {
            if !lset.iter().all(|x| kset.contains(x)) {
                continue;
            }
            let rest: Vec<usize> = kset.iter().copied().filter(|x| !lset.contains(x)).collect();
            let (ai, bi, sign) = if lead_is_a {
                let bi = bb.iter().position(|x| *x == rest).expect("basis");
                (li, bi, merge_sign(lset, &rest))
            } else {
                let ai = ba.iter().position(|x| *x == rest).expect("basis");
                (ai, li, merge_sign(&rest, lset))
            };
            terms.push((ai, bi, sign));
        }
        out.components[kc] = (0..a.chart.len())
            .into_par_iter()
            .map(|i| {
                let mut acc = T::zero();
                for &(ai, bi, sign) in &terms {
                    let t = a.components[ai][i] * b.components[bi][i];
                    acc = if sign > 0 { acc + t } else { acc - t };
                }
                acc
            })
            .collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::super::chart::Axis;
    use super::*;

    fn torus(n: usize) -> GridChart {
        GridChart::new(vec![Axis::new("x", n, 0.0, 1.0, true), Axis::new("y", n, 0.0, 1.0, true)]).unwrap()
    }

    #[test]
    fn fornberg_reproduces_central_weights() {
        let xs: Vec<f64> = (-3..=3).map(|i| i as f64).collect();
        let w = derivative_weights(0.0, &xs);
        assert!((w[4] - 0.75).abs() < 1e-14 && (w[6] - 1.0 / 60.0).abs() < 1e-14);
        let one_sided = derivative_weights(0.0, &(0..7).map(|i| i as f64).collect::<Vec<_>>());
        assert!((one_sided[0] + 49.0 / 20.0).abs() < 1e-13);
    }

    #[test]
    fn sine_derivative_is_accurate() {
        let c = torus(64);
        let f = FormField::<f64>::function(&c, |p| (2.0 * PI * p[0]).sin()).unwrap();
        let df = f.d().unwrap();
        let exact = FormField::<f64>::from_fn(&c, 1, |p| vec![2.0 * PI * (2.0 * PI * p[0]).cos(), 0.0]).unwrap();
        assert!(df.sub(&exact).unwrap().max_abs() < 1e-6);
    }

    #[test]
    fn open_axis_edges_keep_accuracy() {
        let c = GridChart::new(vec![Axis::new("x", 64, -1.0, 1.0, false), Axis::new("y", 64, 0.0, 1.0, true)]).unwrap();
        let f = FormField::<f64>::function(&c, |p| (1.3 * p[0]).exp()).unwrap();
        let exact = FormField::<f64>::from_fn(&c, 1, |p| vec![1.3 * (1.3 * p[0]).exp(), 0.0]).unwrap();
        assert!(f.d().unwrap().sub(&exact).unwrap().max_abs() < 1e-7);
    }

    #[test]
    fn constant_form_is_closed_and_dd_vanishes() {
        let c = torus(32);
        let dy = FormField::<f64>::from_fn(&c, 1, |_| vec![0.0, 1.0]).unwrap();
        assert_eq!(dy.d().unwrap().max_abs(), 0.0);
        let open = GridChart::new(vec![Axis::new("x", 64, -1.0, 1.0, false), Axis::new("y", 64, -1.0, 1.0, false)]).unwrap();
        let f = FormField::<f64>::function(&open, |p| (p[0] * p[1]).sin() + p[0].powi(3)).unwrap();
        assert!(f.d().unwrap().d().unwrap().max_abs() < 1e-9);
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let c = GridChart::new(vec![
            Axis::new("x", 8, 0.0, 1.0, true),
            Axis::new("y", 8, 0.0, 1.0, true),
            Axis::new("t", 8, 0.0, 1.0, false),
        ])
        .unwrap();
        let a = FormField::<f64>::from_fn(&c, 1, |p| vec![p[0].sin(), p[1] * 0.3 + 0.1, p[2].cos()]).unwrap();
        let b = FormField::<f64>::from_fn(&c, 1, |p| vec![p[2], p[0] * p[1], 1.7]).unwrap();
        let g = FormField::<f64>::from_fn(&c, 2, |p| vec![p[0], p[1] - 0.2, p[2] * 3.0]).unwrap();
        assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(-1.0));
        assert_eq!(a.wedge(&g).unwrap(), g.wedge(&a).unwrap());
        assert_eq!(a.wedge(&a).unwrap().max_abs(), 0.0);
        assert!(matches!(g.wedge(&g), Err(GraftError::DegreeOverflow { .. })));
    }
}
