use super::TrisectError;

/// Symmetric integer intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    m: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn new(m: Vec<Vec<i64>>) -> Result<Self, TrisectError> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(TrisectError::Lattice("form must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(TrisectError::Lattice("form must be symmetric".into()));
                }
            }
        }
        Ok(IntersectionForm { m })
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let m = (0..n).map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect()).collect();
        IntersectionForm { m }
    }

    /// `k` copies of the hyperbolic plane.
    pub fn hyperbolic(k: usize) -> Self {
        let mut m = vec![vec![0; 2 * k]; 2 * k];
        for i in 0..k {
            m[2 * i][2 * i + 1] = 1;
            m[2 * i + 1][2 * i] = 1;
        }
        IntersectionForm { m }
    }

    /// The `E8` form, negated when `sign < 0`.
    pub fn e8(sign: i64) -> Self {
        let s = sign.signum();
        let mut m = vec![vec![0; 8]; 8];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2 * s;
        }
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        for (a, b) in edges {
            m[a][b] = -s;
            m[b][a] = -s;
        }
        IntersectionForm { m }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let mut m = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            m[i][..a].copy_from_slice(&self.m[i]);
        }
        for i in 0..b {
            m[a + i][a..].copy_from_slice(&other.m[i]);
        }
        IntersectionForm { m }
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in self.m.iter().enumerate() {
            for (j, q) in row.iter().enumerate() {
                s += x[i] * q * y[j];
            }
        }
        s
    }

    /// `c·x ≡ x·x (mod 2)` on every basis vector, hence on the whole lattice.
    pub fn is_characteristic(&self, c: &[i64]) -> bool {
        (0..self.rank()).all(|i| {
            let ci: i64 = (0..self.rank()).map(|j| self.m[i][j] * c[j]).sum();
            (ci - self.m[i][i]).rem_euclid(2) == 0
        })
    }

    fn diagonal_entries(&self) -> Option<Vec<i64>> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.m[i][j] != 0 {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.m[i][i]).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInput {
    pub form: IntersectionForm,
    /// topological Euler characteristic of the 4-manifold
    pub chi: i64,
    pub sigma: i64,
    pub classes: Vec<Vec<i64>>,
    /// known first Chern classes; enumerated when absent
    pub candidates: Option<Vec<Vec<i64>>>,
    /// coordinate bound for enumeration
    pub bound: i64,
    /// coefficient of the signature in the square target
    pub sigma_coefficient: i64,
}

impl LatticeInput {
    pub fn new(form: IntersectionForm, chi: i64, sigma: i64, classes: Vec<Vec<i64>>) -> Self {
        LatticeInput { form, chi, sigma, classes, candidates: None, bound: 19, sigma_coefficient: 3 }
    }

    pub fn target(&self) -> i64 {
        2 * self.chi + self.sigma_coefficient * self.sigma
    }
}

/// Degree-`d` hypersurface in projective 3-space, restricted to the hyperplane class.
pub fn hypersurface_input(d: i64) -> LatticeInput {
    let chi = d * d * d - 4 * d * d + 6 * d;
    let sigma = -d * (d * d - 4) / 3;
    let mut inp = LatticeInput::new(IntersectionForm::diagonal(&[d]), chi, sigma, vec![vec![1]]);
    inp.candidates = Some(vec![vec![4 - d]]);
    inp
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBound {
    pub class: Vec<i64>,
    pub square: i64,
    pub pairing: i64,
    /// `<c, K> - K·K`
    pub bound: i64,
    /// `-|<c, K>| - K·K`
    pub zero_area_bound: i64,
    pub sphere_ruled_out: bool,
    pub torus_ruled_out: bool,
    /// smallest genus allowed by the bound
    pub min_genus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub c: Vec<i64>,
    pub classes: Vec<ClassBound>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LatticeReport {
    pub target: i64,
    pub candidates: Vec<CandidateReport>,
    pub warnings: Vec<String>,
}

impl LatticeReport {
    /// Class `k` cannot be a sphere for any candidate.
    pub fn sphere_ruled_out_for_all(&self, k: usize) -> bool {
        !self.candidates.is_empty() && self.candidates.iter().all(|c| c.classes[k].sphere_ruled_out)
    }

    pub fn candidate(&self, c: &[i64]) -> Option<&CandidateReport> {
        self.candidates.iter().find(|r| r.c == c)
    }

    /// Largest genus lower bound that holds for every candidate.
    pub fn min_genus_for_all(&self, k: usize) -> Option<i64> {
        self.candidates.iter().map(|c| c.classes[k].min_genus).min()
    }
}

fn class_bound(form: &IntersectionForm, c: &[i64], k: &[i64]) -> ClassBound {
    let square = form.pair(k, k);
    let pairing = form.pair(c, k);
    let bound = pairing - square;
    // χ = 2 - 2g <= bound
    let min_genus = if bound >= 2 { 0 } else { (2 - bound + 1) / 2 };
    ClassBound {
        class: k.to_vec(),
        square,
        pairing,
        bound,
        zero_area_bound: -pairing.abs() - square,
        sphere_ruled_out: bound < 2,
        torus_ruled_out: bound < 0,
        min_genus,
    }
}

fn enumerate_diagonal(diag: &[i64], target: i64, bound: i64) -> Result<Vec<Vec<i64>>, TrisectError> {
    let definite = diag.iter().all(|d| *d > 0) || diag.iter().all(|d| *d < 0);
    if !definite && diag.len() > 4 {
        return Err(TrisectError::Lattice("indefinite enumeration is limited to rank 4".into()));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(diag.len());
    fn rec(
        diag: &[i64],
        target: i64,
        bound: i64,
        definite: bool,
        acc: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let i = cur.len();
        if i == diag.len() {
            if acc == target {
                out.push(cur.clone());
            }
            return;
        }
        let parity = diag[i].rem_euclid(2);
        for v in -bound..=bound {
            if v.rem_euclid(2) != parity {
                continue;
            }
            let next = acc + diag[i] * v * v;
            if definite && (next - target) * diag[i].signum() > 0 {
                continue;
            }
            cur.push(v);
            rec(diag, target, bound, definite, next, cur, out);
            cur.pop();
        }
    }
    rec(diag, target, bound, definite, 0, &mut cur, &mut out);
    Ok(out)
}

/// Characteristic vectors with square `2χ + kσ` and the adjunction bound they
/// give for each class. The default `k` is 3; `k = 2` is accepted with a warning.
pub fn lattice_obstructions(inp: &LatticeInput) -> Result<LatticeReport, TrisectError> {
    let n = inp.form.rank();
    if let Some(k) = inp.classes.iter().find(|k| k.len() != n) {
        return Err(TrisectError::Lattice(format!("class {k:?} has the wrong rank")));
    }
    let mut report = LatticeReport { target: inp.target(), ..Default::default() };
    match inp.sigma_coefficient {
        3 => {}
        2 => report
            .warnings
            .push("signature coefficient 2 does not give the square of c1 for an almost-complex structure".into()),
        k => return Err(TrisectError::Lattice(format!("signature coefficient must be 2 or 3, got {k}"))),
    }
    let cands = match &inp.candidates {
        Some(cs) => {
            let mut keep = Vec::new();
            for c in cs {
                if c.len() != n {
                    return Err(TrisectError::Lattice(format!("candidate {c:?} has the wrong rank")));
                } else if !inp.form.is_characteristic(c) {
                    report.warnings.push(format!("candidate {c:?} is not characteristic"));
                } else if inp.form.pair(c, c) != report.target {
                    report.warnings.push(format!("candidate {c:?} has square {}", inp.form.pair(c, c)));
                } else {
                    keep.push(c.clone());
                }
            }
            keep
        }
        None => {
            let diag = inp
                .form
                .diagonal_entries()
                .ok_or_else(|| TrisectError::Lattice("enumeration needs a diagonal form; supply candidates".into()))?;
            enumerate_diagonal(&diag, report.target, inp.bound)?
        }
    };
    if cands.is_empty() {
        report.warnings.push(format!("no characteristic vector has square {}", report.target));
    }
    report.candidates = cands
        .into_iter()
        .map(|c| CandidateReport {
            classes: inp.classes.iter().map(|k| class_bound(&inp.form, &c, k)).collect(),
            c,
        })
        .collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_planes() {
        let inp = LatticeInput::new(IntersectionForm::diagonal(&[1, 1, 1]), 5, 3, vec![vec![0, 0, 1]]);
        let r = lattice_obstructions(&inp).unwrap();
        assert_eq!(r.target, 19);
        assert_eq!(r.candidates.len(), 24);
        for c in &r.candidates {
            let mut a: Vec<i64> = c.c.iter().map(|x| x.abs()).collect();
            a.sort_unstable();
            assert_eq!(a, vec![1, 3, 3]);
        }
        assert!(!r.sphere_ruled_out_for_all(0));
        let third_is_one: Vec<_> = r.candidates.iter().filter(|c| c.c[2].abs() == 1).collect();
        assert_eq!(third_is_one.len(), 8);
        assert!(third_is_one.iter().all(|c| c.classes[0].sphere_ruled_out));
        let standard = r.candidate(&[3, 3, 1]).unwrap();
        assert_eq!(standard.classes[0].bound, 0);
        let with_two = LatticeInput { sigma_coefficient: 2, ..inp };
        let r2 = lattice_obstructions(&with_two).unwrap();
        assert_eq!(r2.target, 16);
        assert!(!r2.warnings.is_empty());
    }

    #[test]
    fn k3_spheres() {
        let form = IntersectionForm::hyperbolic(3)
            .direct_sum(&IntersectionForm::e8(-1))
            .direct_sum(&IntersectionForm::e8(-1));
        let mut e = vec![0; 22];
        e[0] = 1;
        let mut inp = LatticeInput::new(form, 24, -16, vec![e]);
        inp.candidates = Some(vec![vec![0; 22]]);
        let r = lattice_obstructions(&inp).unwrap();
        assert_eq!(r.candidates.len(), 1);
        assert_eq!(r.candidates[0].classes[0].bound, 0);
        assert!(r.sphere_ruled_out_for_all(0));
        assert!(!r.candidates[0].classes[0].torus_ruled_out);
    }

    #[test]
    fn quintic_genus() {
        let r = lattice_obstructions(&hypersurface_input(5)).unwrap();
        let b = &r.candidates[0].classes[0];
        assert_eq!((b.pairing, b.bound, b.min_genus), (-5, -10, 6));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn e8_is_even_and_unimodular_looking() {
        let e = IntersectionForm::e8(1);
        assert!(e.is_characteristic(&[0; 8]));
        assert!(IntersectionForm::new(vec![vec![1, 2], vec![3, 1]]).is_err());
    }
}
