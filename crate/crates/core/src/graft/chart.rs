use super::GraftError;

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub samples: usize,
    pub lo: f64,
    pub hi: f64,
    pub periodic: bool,
}

impl Axis {
    pub fn new(name: &str, samples: usize, lo: f64, hi: f64, periodic: bool) -> Self {
        Axis { name: name.to_string(), samples, lo, hi, periodic }
    }

    /// Periodic axes sample `[lo, hi)`; open axes include both ends.
    pub fn spacing(&self) -> f64 {
        if self.periodic {
            (self.hi - self.lo) / self.samples as f64
        } else {
            (self.hi - self.lo) / (self.samples - 1) as f64
        }
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.lo + i as f64 * self.spacing()
    }
}

/// Regular sample grid on a 2- or 3-dimensional box. The last axis varies fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridChart {
    axes: Vec<Axis>,
}

impl GridChart {
    pub fn new(axes: Vec<Axis>) -> Result<Self, GraftError> {
        if !(2..=3).contains(&axes.len()) {
            return Err(GraftError::Chart(format!("dimension {} is not 2 or 3", axes.len())));
        }
        for a in &axes {
            if a.samples < 8 {
                return Err(GraftError::Chart(format!("axis {} has {} samples; need at least 8", a.name, a.samples)));
            }
            if !(a.hi > a.lo) || !a.lo.is_finite() || !a.hi.is_finite() {
                return Err(GraftError::Chart(format!("axis {} has an empty range", a.name)));
            }
        }
        Ok(GridChart { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis_index(&self, name: &str) -> Option<usize> {
        self.axes.iter().position(|a| a.name == name)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.samples).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat stride of each axis.
    pub fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dim()];
        for k in (0..self.dim() - 1).rev() {
            s[k] = s[k + 1] * self.axes[k + 1].samples;
        }
        s
    }

    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        let mut rest = flat;
        let mut out = vec![0; self.dim()];
        for k in (0..self.dim()).rev() {
            out[k] = rest % self.axes[k].samples;
            rest /= self.axes[k].samples;
        }
        out
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(self.strides()).map(|(i, s)| i * s).sum()
    }

    pub fn coords(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .iter()
            .zip(&self.axes)
            .map(|(&i, a)| a.coord(i))
            .collect()
    }

    /// Same chart with every axis resampled to `factor` times the spacing density.
    pub fn refined(&self, factor: usize) -> GridChart {
        let axes = self
            .axes
            .iter()
            .map(|a| {
                let samples = if a.periodic { a.samples * factor } else { (a.samples - 1) * factor + 1 };
                Axis { samples, ..a.clone() }
            })
            .collect();
        GridChart { axes }
    }

    /// Product of a 2-chart with one more axis.
    pub fn product(&self, axis: Axis) -> Result<GridChart, GraftError> {
        let mut axes = self.axes.clone();
        axes.push(axis);
        GridChart::new(axes)
    }
}
