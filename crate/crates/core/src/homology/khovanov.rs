use std::collections::BTreeMap;

use rayon::prelude::*;

use super::cube::{Algebra, Cube};
use super::linalg::{sparse_rank, Coefficient, Echelon, ExactInt, Gf2, SparseVec};
use super::{HomologyError, LaurentPoly, PlanarDiagram};

/// Default crossing budget for homology computations.
pub const KHOVANOV_BUDGET: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Rationals,
    Two,
}

impl CoefficientField {
    pub fn name(self) -> &'static str {
        match self {
            CoefficientField::Rationals => <ExactInt as Coefficient>::NAME,
            CoefficientField::Two => Gf2::NAME,
        }
    }
}

/// Nonzero ranks of `Kh^{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedRanks {
    pub field: CoefficientField,
    pub ranks: BTreeMap<(i32, i32), usize>,
}

impl BigradedRanks {
    pub fn get(&self, i: i32, j: i32) -> usize {
        self.ranks.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }

    /// `Σ (−1)^i q^j rank(i, j)`.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, j), &r) in &self.ranks {
            p.add_term(j, if i % 2 == 0 { r as i64 } else { -(r as i64) });
        }
        p
    }

    /// Ranks at `(−i, −j)`.
    pub fn dual(&self) -> BigradedRanks {
        BigradedRanks {
            field: self.field,
            ranks: self.ranks.iter().map(|(&(i, j), &r)| ((-i, -j), r)).collect(),
        }
    }
}

fn block_ranks<C: Coefficient>(cube: &Cube, r: usize) -> BTreeMap<i32, usize> {
    let gens = cube.generators(r);
    let images: Vec<SparseVec<C>> = cube.differential(Algebra::Khovanov, r);
    let mut blocks: BTreeMap<i32, Vec<SparseVec<C>>> = BTreeMap::new();
    for ((_, _, q), img) in gens.into_iter().zip(images) {
        blocks.entry(q).or_default().push(img);
    }
    blocks
        .into_par_iter()
        .map(|(q, vs)| (q, sparse_rank(vs).rank()))
        .collect()
}

fn khovanov_over<C: Coefficient>(cube: &Cube, field: CoefficientField) -> BigradedRanks {
    let n = cube.crossings();
    let d_ranks: Vec<BTreeMap<i32, usize>> = (0..=n).into_par_iter().map(|r| block_ranks::<C>(cube, r)).collect();
    let mut ranks = BTreeMap::new();
    for r in 0..=n {
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        for (_, _, q) in cube.generators(r) {
            *dims.entry(q).or_default() += 1;
        }
        for (q, dim) in dims {
            let out = d_ranks[r].get(&q).copied().unwrap_or(0);
            let inc = if r > 0 { d_ranks[r - 1].get(&q).copied().unwrap_or(0) } else { 0 };
            let h = dim - out - inc;
            if h > 0 {
                ranks.insert((cube.homological(r), q), h);
            }
        }
    }
    BigradedRanks { field, ranks }
}

pub fn khovanov(d: &PlanarDiagram, field: CoefficientField) -> Result<BigradedRanks, HomologyError> {
    khovanov_with_budget(d, field, KHOVANOV_BUDGET)
}

/// Khovanov homology ranks by exact sparse elimination per bidegree.
pub fn khovanov_with_budget(
    d: &PlanarDiagram,
    field: CoefficientField,
    budget: usize,
) -> Result<BigradedRanks, HomologyError> {
    let cube = Cube::new(d, budget)?;
    Ok(match field {
        CoefficientField::Rationals => khovanov_over::<ExactInt>(&cube, field),
        CoefficientField::Two => khovanov_over::<Gf2>(&cube, field),
    })
}

/// Lee homology over ℚ and, for knots, the quantum filtration levels of the canonical classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeSummary {
    pub total_rank: usize,
    /// rank by homological degree
    pub ranks: BTreeMap<i32, usize>,
    /// filtration grades of `s_o` and of `s_o ± s_ō` (best of the two)
    pub levels: Option<(i32, i32)>,
    pub s: Option<i32>,
}

/// Lee homology ranks over ℚ.
pub fn lee_ranks(d: &PlanarDiagram, budget: usize) -> Result<BTreeMap<i32, usize>, HomologyError> {
    let cube = Cube::new(d, budget)?;
    let n = cube.crossings();
    let d_rank: Vec<usize> = (0..=n)
        .into_par_iter()
        .map(|r| sparse_rank::<ExactInt>(cube.differential(Algebra::Lee, r)).rank())
        .collect();
    let mut ranks = BTreeMap::new();
    for r in 0..=n {
        let h = cube.dim(r) - d_rank[r] - if r > 0 { d_rank[r - 1] } else { 0 };
        if h > 0 {
            ranks.insert(cube.homological(r), h);
        }
    }
    Ok(ranks)
}

/// Filtration grades `(s_min, s_max)` of the canonical Lee generators of a knot.
pub fn lee_levels(d: &PlanarDiagram, budget: usize) -> Result<(i32, i32), HomologyError> {
    if d.components() != 1 {
        return Err(HomologyError::NotAKnot(d.components()));
    }
    let cube = Cube::new(d, budget)?;
    let r0 = cube.n_minus() as usize;
    let vo = cube.oriented_state(d);
    let gens = cube.generators(r0);
    // rows ordered by (quantum degree, index) so the leading entry is the lowest filtration level
    let mut order: Vec<u32> = (0..gens.len() as u32).collect();
    order.sort_by_key(|&k| (gens[k as usize].2, k));
    let mut pos = vec![0u32; gens.len()];
    for (rank, &k) in order.iter().enumerate() {
        pos[k as usize] = rank as u32;
    }
    let relabel = |v: SparseVec<ExactInt>| -> SparseVec<ExactInt> {
        let mut v: SparseVec<ExactInt> = v.into_iter().map(|(k, c)| (pos[k as usize], c)).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    };
    let mut boundaries = Echelon::<ExactInt>::new();
    if r0 > 0 {
        let mut cols: Vec<SparseVec<ExactInt>> =
            cube.differential::<ExactInt>(Algebra::Lee, r0 - 1).into_par_iter().map(relabel).collect();
        cols.sort_by_key(|c| c.len());
        for c in cols {
            if !c.is_empty() {
                boundaries.insert(c);
            }
        }
    }
    let bmask = cube.seifert_coloring(vo).ok_or_else(|| HomologyError::Diagram("oriented resolution is not two-colorable".into()))?;
    let (offset, circles) = cube.state_block(vo);
    let canonical = |flip: bool| -> SparseVec<ExactInt> {
        // a = 1 + x on circles not in the mask, b = 1 − x on the others; flip swaps a and b
        let colored = if flip { !bmask } else { bmask };
        let v: SparseVec<ExactInt> = (0..1u64 << circles)
            .map(|m| {
                let neg = (m & colored).count_ones() % 2 == 1;
                ((offset as u64 + m) as u32, ExactInt::from_i64(if neg { -1 } else { 1 }))
            })
            .collect();
        relabel(v)
    };
    let grade = |v: SparseVec<ExactInt>| -> Result<i32, HomologyError> {
        let red = boundaries.reduce(v);
        let lead = red.first().ok_or_else(|| HomologyError::Diagram("canonical class is a boundary".into()))?;
        Ok(gens[order[lead.0 as usize] as usize].2)
    };
    let so = canonical(false);
    let sbar = canonical(true);
    let s_min = grade(so.clone())?;
    let sum = add(&so, &sbar, 1);
    let diff = add(&so, &sbar, -1);
    let s_max = grade(sum)?.max(grade(diff)?);
    Ok((s_min, s_max))
}

fn add(a: &SparseVec<ExactInt>, b: &SparseVec<ExactInt>, sign: i64) -> SparseVec<ExactInt> {
    ExactInt::combine(a, b, &ExactInt::from_i64(1), &ExactInt::from_i64(-sign))
}

pub fn lee_s_invariant(d: &PlanarDiagram) -> Result<LeeSummary, HomologyError> {
    lee_s_invariant_with_budget(d, KHOVANOV_BUDGET)
}

/// Lee ranks plus `s = s_min + 1` for knots.
pub fn lee_s_invariant_with_budget(d: &PlanarDiagram, budget: usize) -> Result<LeeSummary, HomologyError> {
    if d.components() != 1 {
        return Err(HomologyError::NotAKnot(d.components()));
    }
    let ranks = lee_ranks(d, budget)?;
    let levels = lee_levels(d, budget)?;
    Ok(LeeSummary {
        total_rank: ranks.values().sum(),
        ranks,
        levels: Some(levels),
        s: Some(levels.0 + 1),
    })
}

/// Lee ranks without the knot restriction.
pub fn lee_summary(d: &PlanarDiagram, budget: usize) -> Result<LeeSummary, HomologyError> {
    let ranks = lee_ranks(d, budget)?;
    let (levels, s) = if d.components() == 1 {
        let l = lee_levels(d, budget)?;
        (Some(l), Some(l.0 + 1))
    } else {
        (None, None)
    };
    Ok(LeeSummary { total_rank: ranks.values().sum(), ranks, levels, s })
}

/// Rasmussen `s` alone, skipping the full Lee ranks.
pub fn s_invariant(d: &PlanarDiagram, budget: usize) -> Result<i32, HomologyError> {
    Ok(lee_levels(d, budget)?.0 + 1)
}
