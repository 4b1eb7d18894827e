use rayon::prelude::*;

use super::{HomologyError, LaurentPoly, PlanarDiagram};

/// State sums are `2^c`; this keeps them desk-sized.
pub const BRACKET_BUDGET: usize = 20;

fn circle_count(d: &PlanarDiagram, v: u64, parent: &mut Vec<usize>) -> usize {
    let e = d.edge_count();
    parent.clear();
    parent.extend(0..e);
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut circles = e;
    for (k, c) in d.crossings().iter().enumerate() {
        let [a, b, cc, dd] = c.edges;
        let pairs = if v >> k & 1 == 0 { [(a, b), (cc, dd)] } else { [(a, dd), (b, cc)] };
        for (x, y) in pairs {
            let (rx, ry) = (find(parent, x - 1), find(parent, y - 1));
            if rx != ry {
                parent[rx] = ry;
                circles -= 1;
            }
        }
    }
    circles + d.free_loops()
}

pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<LaurentPoly, HomologyError> {
    kauffman_bracket_with_budget(d, BRACKET_BUDGET)
}

/// Unnormalized Jones polynomial from the state sum.
///
/// `(−1)^{n₋} q^{n₊−2n₋} Σ_v (−q)^{|v|} (q+q⁻¹)^{circles(v)}`; the unknot gives `q + q⁻¹`.
pub fn kauffman_bracket_with_budget(d: &PlanarDiagram, budget: usize) -> Result<LaurentPoly, HomologyError> {
    let n = d.crossing_count();
    if n > budget || n >= 63 {
        return Err(HomologyError::Budget { crossings: n, budget });
    }
    let max_circles = d.edge_count().max(1) + d.free_loops() + 1;
    // histogram[r][k]: states of height r with k circles
    let hist = (0..1u64 << n)
        .into_par_iter()
        .fold(
            || (vec![vec![0i64; max_circles + 1]; n + 1], Vec::new()),
            |(mut h, mut scratch), v| {
                let k = circle_count(d, v, &mut scratch);
                h[v.count_ones() as usize][k] += 1;
                (h, scratch)
            },
        )
        .map(|(h, _)| h)
        .reduce(
            || vec![vec![0i64; max_circles + 1]; n + 1],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    let circle = LaurentPoly::circle();
    let powers: Vec<LaurentPoly> = (0..=max_circles).map(|k| circle.pow(k)).collect();
    let mut sum = LaurentPoly::zero();
    for (r, row) in hist.iter().enumerate() {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        for (k, &count) in row.iter().enumerate() {
            if count != 0 {
                sum = sum.add(&powers[k].scale(sign * count, r as i32));
            }
        }
    }
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    Ok(sum.scale(sign, np - 2 * nm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{closure_pd, BraidWord};

    #[test]
    fn unknots_and_unlinks() {
        let c = LaurentPoly::circle();
        assert_eq!(kauffman_bracket(&PlanarDiagram::unlink(1)).unwrap(), c);
        assert_eq!(kauffman_bracket(&PlanarDiagram::unlink(2)).unwrap(), c.pow(2));
        let kink = closure_pd(&BraidWord::new(2, vec![1]).unwrap());
        assert_eq!(kauffman_bracket(&kink).unwrap(), c);
        let kink = closure_pd(&BraidWord::new(2, vec![-1]).unwrap());
        assert_eq!(kauffman_bracket(&kink).unwrap(), c);
    }

    #[test]
    fn right_trefoil() {
        let t = closure_pd(&BraidWord::new(2, vec![1, 1, 1]).unwrap());
        let j = kauffman_bracket(&t).unwrap();
        assert_eq!(format!("{j}"), "q + q^3 + q^5 - q^9");
        let m = kauffman_bracket(&t.mirror()).unwrap();
        assert_eq!(m, j.invert_variable());
    }
}
