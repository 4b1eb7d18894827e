use crate::homology::{Crossing, PlanarDiagram};

use super::BraidWord;

/// Trace closure as a PD code.
///
/// Strands run upward; `σ_i` crosses strand `i` over strand `i+1` from
/// lower left to upper right (a positive crossing). Each closing arc joins
/// the top of position `p` to its bottom, and labels are renumbered in order
/// of first appearance. Positions never touched by a letter become free loops.
pub fn closure_pd(a: &BraidWord) -> PlanarDiagram {
    let n = a.strands();
    let mut current: Vec<usize> = (1..=n).collect();
    let mut next_label = n + 1;
    let mut raw: Vec<([usize; 4], bool)> = Vec::with_capacity(a.len());
    for &l in a.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let (ei, ej) = (current[i], current[i + 1]);
        let (fi, fj) = (next_label, next_label + 1);
        next_label += 2;
        if l > 0 {
            raw.push(([ej, fj, fi, ei], true));
        } else {
            raw.push(([ei, ej, fj, fi], false));
        }
        current[i] = fi;
        current[i + 1] = fj;
    }
    // identify each top label with the bottom label of its position
    let mut ident: Vec<usize> = (0..next_label).collect();
    for (p, &top) in current.iter().enumerate() {
        ident[top] = p + 1;
    }
    let mut renumber = vec![0usize; next_label];
    let mut fresh = 0;
    let crossings = raw
        .into_iter()
        .map(|(edges, positive)| {
            let edges = edges.map(|e| {
                let e = ident[e];
                if renumber[e] == 0 {
                    fresh += 1;
                    renumber[e] = fresh;
                }
                renumber[e]
            });
            Crossing { edges, positive }
        })
        .collect();
    PlanarDiagram::new(crossings, a.closure_components()).expect("trace closure is a valid diagram")
}

/// Self-linking of the transverse closure: exponent sum minus strand count.
pub fn transverse_self_linking(a: &BraidWord) -> i64 {
    a.exponent_sum() - a.strands() as i64
}

/// Closure component of each starting position, numbered by lowest position.
pub fn strand_components(a: &BraidWord) -> Vec<usize> {
    let perm = a.permutation();
    let mut comp = vec![usize::MAX; perm.len()];
    let mut next = 0;
    for s in 0..perm.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut p = s;
        while comp[p] == usize::MAX {
            comp[p] = next;
            p = perm[p];
        }
        next += 1;
    }
    comp
}

/// Linking matrix of the closure read off the word.
///
/// Off-diagonal entries are linking numbers, diagonal entries are the writhe of
/// each component with itself. Components are numbered as in [`strand_components`].
pub fn closure_linking_matrix(a: &BraidWord) -> Vec<Vec<i64>> {
    let comp = strand_components(a);
    let k = comp.iter().max().map_or(0, |m| m + 1);
    let mut twice = vec![vec![0i64; k]; k];
    let mut at: Vec<usize> = (0..a.strands()).collect(); // starting position of the strand at each position
    for &l in a.letters() {
        let i = l.unsigned_abs() as usize;
        let (x, y) = (comp[at[i - 1]], comp[at[i]]);
        let s = l.signum() as i64;
        if x == y {
            twice[x][x] += 2 * s;
        } else {
            twice[x][y] += s;
            twice[y][x] += s;
        }
        at.swap(i - 1, i);
    }
    twice.into_iter().map(|row| row.into_iter().map(|v| v / 2).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn closure_counts() {
        let d = closure_pd(&w(2, &[1]));
        assert_eq!((d.crossing_count(), d.components()), (1, 1));
        let d = closure_pd(&w(2, &[1, 1, 1]));
        assert_eq!((d.crossing_count(), d.components()), (3, 1));
        assert_eq!(d.writhe(), 3);
        let d = closure_pd(&w(2, &[1, 1]));
        assert_eq!((d.crossing_count(), d.components()), (2, 2));
        let d = closure_pd(&w(3, &[1]));
        assert_eq!((d.components(), d.free_loops()), (2, 1));
        let d = closure_pd(&w(1, &[]));
        assert_eq!((d.crossing_count(), d.components()), (0, 1));
    }

    #[test]
    fn hopf_linking_number() {
        let d = closure_pd(&w(2, &[1, 1]));
        assert_eq!(d.linking_number(0, 1), 1);
        let d = closure_pd(&w(2, &[1, -1]));
        assert_eq!(d.linking_number(0, 1), 0);
    }

    #[test]
    fn self_linking() {
        assert_eq!(transverse_self_linking(&w(2, &[1, 1, 1])), 1);
        assert_eq!(transverse_self_linking(&w(1, &[])), -1);
        assert_eq!(transverse_self_linking(&w(3, &[1, 1, 1, 2])), 1);
        assert_eq!(transverse_self_linking(&w(3, &[1, 1, 1, -2])), -1);
    }

    #[test]
    fn linking_matrix_matches_diagram() {
        let a = w(3, &[1, 1, 2, 2, 2, 2]);
        let m = closure_linking_matrix(&a);
        assert_eq!(m, vec![vec![0, 1, 0], vec![1, 0, 2], vec![0, 2, 0]]);
        let t = w(3, &[1, 2, -1, 2]);
        let d = closure_pd(&t);
        assert_eq!(closure_linking_matrix(&t), vec![vec![d.self_writhe(0)]]);
        let hopf_plus_loop = w(3, &[1, 1]);
        assert_eq!(strand_components(&hopf_plus_loop), vec![0, 1, 2]);
        assert_eq!(closure_linking_matrix(&hopf_plus_loop)[0], vec![0, 1, 0]);
    }
}
