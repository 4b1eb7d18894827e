//! Link diagrams, the Kauffman bracket, Khovanov and Lee homology.

mod bracket;
mod cube;
mod diagram;
mod khovanov;
mod linalg;
mod poly;

pub use bracket::{kauffman_bracket, kauffman_bracket_with_budget, BRACKET_BUDGET};
pub use cube::Algebra;
pub use diagram::{Crossing, PlanarDiagram};
pub use khovanov::{
    khovanov, khovanov_with_budget, lee_levels, lee_ranks, lee_s_invariant, lee_s_invariant_with_budget,
    lee_summary, s_invariant, BigradedRanks, CoefficientField, LeeSummary, KHOVANOV_BUDGET,
};
pub use linalg::{sparse_rank, Coefficient, Echelon, ExactInt, Gf2, SparseVec};
pub use poly::LaurentPoly;

use thiserror::Error;

use crate::braid::{closure_pd, transverse_self_linking, BraidWord};
use crate::verdict::{Status, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("{crossings} crossings exceed the budget of {budget}")]
    Budget { crossings: usize, budget: usize },
    #[error("inconsistent diagram: {0}")]
    Diagram(String),
    #[error("s is defined for knots; diagram has {0} components")]
    NotAKnot(usize),
    #[error("the s-invariant bound is only certified in the 3-sphere (k = 0), got k = {0}")]
    UncertifiedAmbient(u32),
}

/// `(s − 1) − sl` for the closure of a braid whose closure is a knot.
pub fn slice_bennequin_gap(a: &BraidWord) -> Result<i64, HomologyError> {
    slice_bennequin_gap_with_budget(a, KHOVANOV_BUDGET)
}

pub fn slice_bennequin_gap_with_budget(a: &BraidWord, budget: usize) -> Result<i64, HomologyError> {
    let d = closure_pd(a);
    if d.components() != 1 {
        return Err(HomologyError::NotAKnot(d.components()));
    }
    let s = s_invariant(&d, budget)? as i64;
    Ok((s - 1) - transverse_self_linking(a))
}

/// Upper bound `s − 1` on self-linking in `#_k S¹×S²`; only `k = 0` is certified.
pub fn certified_sl_bound(s: i32, k: u32) -> Result<i64, HomologyError> {
    if k > 0 {
        return Err(HomologyError::UncertifiedAmbient(k));
    }
    Ok(s as i64 - 1)
}

/// Ranks of the `c`-component unlink: `binom(c, m)` at `(0, c − 2m)`.
pub fn unlink_ranks(c: usize, field: CoefficientField) -> BigradedRanks {
    let mut ranks = std::collections::BTreeMap::new();
    let mut binom = 1usize;
    for m in 0..=c {
        ranks.insert((0, c as i32 - 2 * m as i32), binom);
        binom = binom * (c - m) / (m + 1);
    }
    BigradedRanks { field, ranks }
}

/// Necessary test for being an unlink: bracket and Khovanov ranks over F2.
pub fn unlink_certificate(d: &PlanarDiagram) -> Verdict {
    unlink_certificate_with_budget(d, KHOVANOV_BUDGET)
}

pub fn unlink_certificate_with_budget(d: &PlanarDiagram, budget: usize) -> Verdict {
    let c = d.components();
    let bracket = match kauffman_bracket(d) {
        Ok(b) => b,
        Err(e) => return Verdict::error(e.to_string()).at_stage("bracket"),
    };
    let expected = LaurentPoly::circle().pow(c);
    if bracket != expected {
        return Verdict::new(Status::Refuted)
            .at_stage("bracket")
            .with_witness("bracket", &bracket)
            .with_witness("unlink", &expected);
    }
    let kh = match khovanov_with_budget(d, CoefficientField::Two, budget) {
        Ok(k) => k,
        Err(e) => return Verdict::error(e.to_string()).at_stage("khovanov"),
    };
    if kh != unlink_ranks(c, CoefficientField::Two) {
        return Verdict::new(Status::Refuted).at_stage("khovanov").with_witness("total_rank", kh.total());
    }
    Verdict::new(Status::Consistent)
        .at_stage("khovanov")
        .with_witness("components", c)
        .warn("consistent with an unlink; not a proof")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn unknot_and_trefoil_ranks() {
        let u = khovanov(&PlanarDiagram::unlink(1), CoefficientField::Rationals).unwrap();
        assert_eq!(u.ranks.into_iter().collect::<Vec<_>>(), vec![((0, -1), 1), ((0, 1), 1)]);
        let t = closure_pd(&w(2, &[1, 1, 1]));
        let kh = khovanov(&t, CoefficientField::Rationals).unwrap();
        let support: Vec<_> = kh.ranks.iter().map(|(&k, &r)| (k, r)).collect();
        assert_eq!(support, vec![((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)]);
        assert_eq!(kh.euler_characteristic(), kauffman_bracket(&t).unwrap());
        let m = khovanov(&t.mirror(), CoefficientField::Rationals).unwrap();
        assert_eq!(m, kh.dual());
    }

    #[test]
    fn trefoil_has_torsion_visible_over_f2() {
        let t = closure_pd(&w(2, &[1, 1, 1]));
        let kh = khovanov(&t, CoefficientField::Two).unwrap();
        assert_eq!(kh.get(2, 7), 1);
        assert_eq!(kh.get(3, 7), 1);
        assert_eq!(kh.euler_characteristic(), kauffman_bracket(&t).unwrap());
    }

    #[test]
    fn s_values() {
        assert_eq!(lee_s_invariant(&PlanarDiagram::unlink(1)).unwrap().s, Some(0));
        let t = lee_s_invariant(&closure_pd(&w(2, &[1, 1, 1]))).unwrap();
        assert_eq!((t.total_rank, t.s, t.levels), (2, Some(2), Some((1, 3))));
        assert_eq!(s_invariant(&closure_pd(&w(2, &[-1, -1, -1])), 14).unwrap(), -2);
        assert_eq!(s_invariant(&closure_pd(&w(3, &[1, -2, 1, -2])), 14).unwrap(), 0);
        assert_eq!(s_invariant(&closure_pd(&w(2, &[1; 5])), 14).unwrap(), 4);
    }

    #[test]
    fn hopf_lee_rank() {
        let h = lee_summary(&closure_pd(&w(2, &[1, 1])), 14).unwrap();
        assert_eq!(h.total_rank, 4);
        assert_eq!(h.s, None);
    }

    #[test]
    fn gaps() {
        assert_eq!(slice_bennequin_gap(&w(2, &[1, 1, 1])).unwrap(), 0);
        assert_eq!(slice_bennequin_gap(&w(2, &[-1, -1, -1])).unwrap(), 2);
        assert_eq!(slice_bennequin_gap(&w(1, &[])).unwrap(), 0);
        assert!(slice_bennequin_gap(&w(2, &[1, 1])).is_err());
        assert!(certified_sl_bound(2, 1).is_err());
    }

    #[test]
    fn unlink_certificates() {
        assert_eq!(unlink_certificate(&PlanarDiagram::unlink(3)).status, Status::Consistent);
        assert_eq!(unlink_certificate(&closure_pd(&w(2, &[1, 1]))).status, Status::Refuted);
        assert_eq!(unlink_certificate(&closure_pd(&w(2, &[1]))).status, Status::Consistent);
        assert_eq!(unlink_certificate(&closure_pd(&w(2, &[1, -1]))).status, Status::Consistent);
    }
}
