//! Cube of resolutions and the Khovanov/Lee differentials.

use rayon::prelude::*;

use super::linalg::{Coefficient, SparseVec};
use super::{HomologyError, PlanarDiagram};

/// Frobenius algebra on each circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    /// `x² = 0`
    Khovanov,
    /// `x² = 1`
    Lee,
}

struct State {
    /// circle of each edge, indexed by `label - 1`
    circle_of: Vec<u8>,
    /// circles through crossings; free loops are numbered after these
    traced: usize,
    /// one edge per traced circle
    reps: Vec<usize>,
}

pub(crate) struct Cube {
    n: usize,
    n_plus: i32,
    n_minus: i32,
    free: usize,
    edges: Vec<[usize; 4]>,
    states: Vec<State>,
    by_degree: Vec<Vec<u64>>,
    /// offset of a state's generators inside its degree
    offset: Vec<usize>,
    dims: Vec<usize>,
}

fn smoothing_circles(d: &PlanarDiagram, v: u64) -> State {
    let e = d.edge_count();
    let mut parent: Vec<usize> = (0..e).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let join = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a - 1), find(p, b - 1));
        if ra != rb {
            p[ra.max(rb)] = ra.min(rb);
        }
    };
    for (k, c) in d.crossings().iter().enumerate() {
        let [a, b, cc, dd] = c.edges;
        if v >> k & 1 == 0 {
            join(&mut parent, a, b);
            join(&mut parent, cc, dd);
        } else {
            join(&mut parent, a, dd);
            join(&mut parent, b, cc);
        }
    }
    let mut id = vec![u8::MAX; e];
    let mut circle_of = vec![0u8; e];
    let mut reps = Vec::new();
    for l in 0..e {
        let r = find(&mut parent, l);
        if id[r] == u8::MAX {
            id[r] = reps.len() as u8;
            reps.push(l);
        }
        circle_of[l] = id[r];
    }
    State { circle_of, traced: reps.len(), reps }
}

impl Cube {
    pub(crate) fn new(d: &PlanarDiagram, budget: usize) -> Result<Self, HomologyError> {
        let n = d.crossing_count();
        if n > budget {
            return Err(HomologyError::Budget { crossings: n, budget });
        }
        if n >= 40 || d.edge_count() + d.free_loops() >= 60 {
            return Err(HomologyError::Budget { crossings: n, budget: n.min(39) });
        }
        let states: Vec<State> = (0..1u64 << n).into_par_iter().map(|v| smoothing_circles(d, v)).collect();
        let free = d.free_loops();
        let mut by_degree = vec![Vec::new(); n + 1];
        for v in 0..1u64 << n {
            by_degree[v.count_ones() as usize].push(v);
        }
        let mut offset = vec![0; states.len()];
        let mut dims = vec![0; n + 1];
        for (r, list) in by_degree.iter().enumerate() {
            for &v in list {
                offset[v as usize] = dims[r];
                dims[r] += 1usize << (states[v as usize].traced + free);
            }
        }
        Ok(Cube {
            n,
            n_plus: d.n_plus() as i32,
            n_minus: d.n_minus() as i32,
            free,
            edges: d.crossings().iter().map(|c| c.edges).collect(),
            states,
            by_degree,
            offset,
            dims,
        })
    }

    pub(crate) fn crossings(&self) -> usize {
        self.n
    }

    pub(crate) fn n_minus(&self) -> i32 {
        self.n_minus
    }

    /// Homological degree of cube height `r`.
    pub(crate) fn homological(&self, r: usize) -> i32 {
        r as i32 - self.n_minus
    }

    pub(crate) fn dim(&self, r: usize) -> usize {
        self.dims.get(r).copied().unwrap_or(0)
    }

    fn circles(&self, v: u64) -> usize {
        self.states[v as usize].traced + self.free
    }

    fn quantum(&self, r: usize, circles: usize, mask: u64) -> i32 {
        circles as i32 - 2 * mask.count_ones() as i32 + r as i32 + self.n_plus - 2 * self.n_minus
    }

    /// `(state, labeling, quantum degree)` of every generator at height `r`, in index order.
    pub(crate) fn generators(&self, r: usize) -> Vec<(u64, u64, i32)> {
        let mut out = Vec::with_capacity(self.dim(r));
        for &v in &self.by_degree[r] {
            let k = self.circles(v);
            for mask in 0..1u64 << k {
                out.push((v, mask, self.quantum(r, k, mask)));
            }
        }
        out
    }

    /// Circle in `w` of each circle of `v`.
    fn circle_map(&self, v: u64, w: u64) -> Vec<usize> {
        let sv = &self.states[v as usize];
        let sw = &self.states[w as usize];
        let mut map: Vec<usize> = sv.reps.iter().map(|&e| sw.circle_of[e] as usize).collect();
        map.extend((0..self.free).map(|j| sw.traced + j));
        map
    }

    /// Differential of one generator, as a vector over height `r+1`.
    pub(crate) fn image<C: Coefficient>(&self, alg: Algebra, v: u64, mask: u64) -> SparseVec<C> {
        let mut out: Vec<(u32, C)> = Vec::new();
        let sv = &self.states[v as usize];
        for k in 0..self.n {
            if v >> k & 1 == 1 {
                continue;
            }
            let w = v | 1 << k;
            let sign: i64 = if (v & ((1 << k) - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
            let [a, b, c, _] = self.edges[k];
            let ca = sv.circle_of[a - 1] as usize;
            let cc = sv.circle_of[c - 1] as usize;
            let map = self.circle_map(v, w);
            let sw = &self.states[w as usize];
            let base = self.offset[w as usize];
            // labels of untouched circles carried over
            let mut rest = 0u64;
            for (i, &j) in map.iter().enumerate() {
                if i != ca && i != cc && mask >> i & 1 == 1 {
                    rest |= 1 << j;
                }
            }
            let mut emit = |m: u64, coeff: i64| out.push(((base + m as usize) as u32, C::from_i64(sign * coeff)));
            if ca != cc {
                let m = sw.circle_of[a - 1] as usize;
                let xa = mask >> ca & 1;
                let xc = mask >> cc & 1;
                match (xa + xc, alg) {
                    (0, _) => emit(rest, 1),
                    (1, _) => emit(rest | 1 << m, 1),
                    (_, Algebra::Khovanov) => {}
                    (_, Algebra::Lee) => emit(rest, 1),
                }
            } else {
                let s1 = sw.circle_of[a - 1] as usize;
                let s2 = sw.circle_of[b - 1] as usize;
                if mask >> ca & 1 == 0 {
                    emit(rest | 1 << s2, 1);
                    emit(rest | 1 << s1, 1);
                } else {
                    emit(rest | 1 << s1 | 1 << s2, 1);
                    if alg == Algebra::Lee {
                        emit(rest, 1);
                    }
                }
            }
        }
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// Images of all generators at height `r`, in index order.
    pub(crate) fn differential<C: Coefficient>(&self, alg: Algebra, r: usize) -> Vec<SparseVec<C>> {
        if r >= self.n {
            return vec![Vec::new(); self.dim(r)];
        }
        self.generators(r).into_par_iter().map(|(v, mask, _)| self.image(alg, v, mask)).collect()
    }

    /// Oriented resolution state.
    pub(crate) fn oriented_state(&self, d: &PlanarDiagram) -> u64 {
        d.crossings()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.positive)
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }

    /// Proper two-coloring of the circles of `v` across every crossing.
    ///
    /// Returns the mask of circles colored `b`, or `None` if the circles at
    /// some crossing coincide or the adjacency graph is not bipartite.
    pub(crate) fn seifert_coloring(&self, v: u64) -> Option<u64> {
        let sv = &self.states[v as usize];
        let k = sv.traced;
        let mut adj = vec![Vec::new(); k];
        for e in &self.edges {
            let (x, y) = (sv.circle_of[e[0] - 1] as usize, sv.circle_of[e[2] - 1] as usize);
            if x == y {
                return None;
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut color = vec![u8::MAX; k];
        for s in 0..k {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        stack.push(y);
                    } else if color[y] == color[x] {
                        return None;
                    }
                }
            }
        }
        Some((0..k).filter(|&i| color[i] == 1).fold(0, |acc, i| acc | 1 << i))
    }

    /// Offset and circle count of a state.
    pub(crate) fn state_block(&self, v: u64) -> (usize, usize) {
        (self.offset[v as usize], self.circles(v))
    }
}
