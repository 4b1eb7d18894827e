//! Sparse exact elimination.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sorted list of `(index, nonzero coefficient)` pairs.
pub type SparseVec<C> = Vec<(u32, C)>;

/// Coefficients admitting exact elimination.
pub trait Coefficient: Clone + Debug + PartialEq + Send + Sync + 'static {
    const NAME: &'static str;

    fn from_i64(v: i64) -> Self;

    fn is_zero(&self) -> bool;

    /// `(ft, fp)` such that `ft·target_lead − fp·pivot_lead = 0`.
    fn factors(target_lead: &Self, pivot_lead: &Self) -> (Self, Self);

    /// `ft·t − fp·p`, both sorted, dropping zeros.
    fn combine(t: &[(u32, Self)], p: &[(u32, Self)], ft: &Self, fp: &Self) -> SparseVec<Self>;

    /// Scales a vector into a canonical representative of its line.
    fn normalize(_v: &mut SparseVec<Self>) {}
}

/// The two-element field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf2;

impl Coefficient for Gf2 {
    const NAME: &'static str = "F2";

    fn from_i64(v: i64) -> Self {
        debug_assert!(v % 2 != 0, "zero entries are never stored");
        Gf2
    }

    fn is_zero(&self) -> bool {
        false
    }

    fn factors(_: &Self, _: &Self) -> (Self, Self) {
        (Gf2, Gf2)
    }

    fn combine(t: &[(u32, Self)], p: &[(u32, Self)], _: &Self, _: &Self) -> SparseVec<Self> {
        let mut out = Vec::with_capacity(t.len() + p.len());
        let (mut i, mut j) = (0, 0);
        while i < t.len() && j < p.len() {
            match t[i].0.cmp(&p[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(t[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(p[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&t[i..]);
        out.extend_from_slice(&p[j..]);
        out
    }
}

/// Integers with fraction-free elimination; ranks equal ranks over ℚ.
impl Coefficient for BigInt {
    const NAME: &'static str = "Q";

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn factors(t: &Self, p: &Self) -> (Self, Self) {
        let g = t.gcd(p);
        (p / &g, t / &g)
    }

    fn combine(t: &[(u32, Self)], p: &[(u32, Self)], ft: &Self, fp: &Self) -> SparseVec<Self> {
        let ft_one = ft.is_one();
        let mut out = Vec::with_capacity(t.len() + p.len());
        let (mut i, mut j) = (0, 0);
        let scale_t = |c: &BigInt| if ft_one { c.clone() } else { c * ft };
        while i < t.len() || j < p.len() {
            let ti = t.get(i).map_or(u32::MAX, |e| e.0);
            let pj = p.get(j).map_or(u32::MAX, |e| e.0);
            if ti < pj {
                out.push((ti, scale_t(&t[i].1)));
                i += 1;
            } else if pj < ti {
                out.push((pj, -(&p[j].1 * fp)));
                j += 1;
            } else {
                let v = scale_t(&t[i].1) - &p[j].1 * fp;
                if !Zero::is_zero(&v) {
                    out.push((ti, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    fn normalize(v: &mut SparseVec<Self>) {
        if v.is_empty() {
            return;
        }
        if v.iter().any(|(_, c)| c.abs() != BigInt::one()) {
            let mut g = BigInt::zero();
            for (_, c) in v.iter() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_one() {
                for (_, c) in v.iter_mut() {
                    *c = &*c / &g;
                }
            }
        }
        if v[0].1.is_negative() {
            for (_, c) in v.iter_mut() {
                *c = -&*c;
            }
        }
    }
}

/// Integer that stays machine-sized until an operation overflows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactInt {
    Small(i64),
    Big(BigInt),
}

impl ExactInt {
    fn big(&self) -> BigInt {
        match self {
            ExactInt::Small(v) => BigInt::from(*v),
            ExactInt::Big(b) => b.clone(),
        }
    }

    fn shrink(b: BigInt) -> Self {
        use num_traits::ToPrimitive;
        match b.to_i64() {
            Some(v) if v != i64::MIN => ExactInt::Small(v),
            _ => ExactInt::Big(b),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        if let (ExactInt::Small(a), ExactInt::Small(b)) = (self, o) {
            if let Some(v) = a.checked_mul(*b) {
                if v != i64::MIN {
                    return ExactInt::Small(v);
                }
            }
        }
        Self::shrink(self.big() * o.big())
    }

    fn sub(&self, o: &Self) -> Self {
        if let (ExactInt::Small(a), ExactInt::Small(b)) = (self, o) {
            if let Some(v) = a.checked_sub(*b) {
                if v != i64::MIN {
                    return ExactInt::Small(v);
                }
            }
        }
        Self::shrink(self.big() - o.big())
    }

    fn neg(&self) -> Self {
        match self {
            ExactInt::Small(v) => ExactInt::Small(-v),
            ExactInt::Big(b) => Self::shrink(-b),
        }
    }

    fn gcd(&self, o: &Self) -> Self {
        match (self, o) {
            (ExactInt::Small(a), ExactInt::Small(b)) => ExactInt::Small(a.gcd(b)),
            _ => Self::shrink(self.big().gcd(&o.big())),
        }
    }

    fn div(&self, o: &Self) -> Self {
        match (self, o) {
            (ExactInt::Small(a), ExactInt::Small(b)) => ExactInt::Small(a / b),
            _ => Self::shrink(self.big() / o.big()),
        }
    }

    fn is_unit(&self) -> bool {
        matches!(self, ExactInt::Small(1) | ExactInt::Small(-1))
    }

    fn is_negative(&self) -> bool {
        match self {
            ExactInt::Small(v) => *v < 0,
            ExactInt::Big(b) => b.is_negative(),
        }
    }
}

/// Fraction-free elimination over ℤ; ranks equal ranks over ℚ.
impl Coefficient for ExactInt {
    const NAME: &'static str = "Q";

    fn from_i64(v: i64) -> Self {
        ExactInt::Small(v)
    }

    fn is_zero(&self) -> bool {
        matches!(self, ExactInt::Small(0))
    }

    fn factors(t: &Self, p: &Self) -> (Self, Self) {
        let g = t.gcd(p);
        (p.div(&g), t.div(&g))
    }

    fn combine(t: &[(u32, Self)], p: &[(u32, Self)], ft: &Self, fp: &Self) -> SparseVec<Self> {
        let ft_one = matches!(ft, ExactInt::Small(1));
        let mut out = Vec::with_capacity(t.len() + p.len());
        let (mut i, mut j) = (0, 0);
        let scale_t = |c: &ExactInt| if ft_one { c.clone() } else { c.mul(ft) };
        while i < t.len() || j < p.len() {
            let ti = t.get(i).map_or(u32::MAX, |e| e.0);
            let pj = p.get(j).map_or(u32::MAX, |e| e.0);
            if ti < pj {
                out.push((ti, scale_t(&t[i].1)));
                i += 1;
            } else if pj < ti {
                out.push((pj, p[j].1.mul(fp).neg()));
                j += 1;
            } else {
                let v = scale_t(&t[i].1).sub(&p[j].1.mul(fp));
                if !v.is_zero() {
                    out.push((ti, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    fn normalize(v: &mut SparseVec<Self>) {
        if v.is_empty() {
            return;
        }
        if !v.iter().all(|(_, c)| c.is_unit()) {
            let mut g = ExactInt::Small(0);
            for (_, c) in v.iter() {
                g = g.gcd(c);
                if g.is_unit() {
                    break;
                }
            }
            if !g.is_unit() {
                for (_, c) in v.iter_mut() {
                    *c = c.div(&g);
                }
            }
        }
        if v[0].1.is_negative() {
            for (_, c) in v.iter_mut() {
                *c = c.neg();
            }
        }
    }
}

/// Row echelon form keyed by leading index.
#[derive(Clone, Debug)]
pub struct Echelon<C> {
    pivots: HashMap<u32, SparseVec<C>>,
}

impl<C: Coefficient> Default for Echelon<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coefficient> Echelon<C> {
    pub fn new() -> Self {
        Echelon { pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivots.keys().copied()
    }

    /// Eliminates leading terms until the lead is not a pivot.
    pub fn reduce(&self, mut v: SparseVec<C>) -> SparseVec<C> {
        while let Some((lead, c)) = v.first() {
            let Some(p) = self.pivots.get(lead) else { break };
            let (ft, fp) = C::factors(c, &p[0].1);
            v = C::combine(&v, p, &ft, &fp);
            C::normalize(&mut v);
        }
        v
    }

    /// Adds a vector; returns its new pivot, or `None` if it was dependent.
    pub fn insert(&mut self, v: SparseVec<C>) -> Option<u32> {
        let mut v = self.reduce(v);
        if v.is_empty() {
            return None;
        }
        C::normalize(&mut v);
        let lead = v[0].0;
        self.pivots.insert(lead, v);
        Some(lead)
    }
}

/// Rank of a set of sparse vectors, inserted sparsest first.
pub fn sparse_rank<C: Coefficient>(mut vectors: Vec<SparseVec<C>>) -> Echelon<C> {
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&k| (vectors[k].len(), k));
    let mut ech = Echelon::new();
    for k in order {
        let v = std::mem::take(&mut vectors[k]);
        if !v.is_empty() {
            ech.insert(v);
        }
    }
    ech
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<SparseVec<BigInt>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i as u32, BigInt::from(c)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn integer_rank() {
        assert_eq!(sparse_rank(bi(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])).rank(), 2);
        assert_eq!(sparse_rank(bi(&[&[2, 0], &[0, 3]])).rank(), 2);
        assert_eq!(sparse_rank(bi(&[&[2, 4], &[3, 6]])).rank(), 1);
    }

    #[test]
    fn gf2_rank_differs_from_rational() {
        // rows (1,1), (1,-1): rank 2 over Q, 1 over F2
        assert_eq!(sparse_rank(bi(&[&[1, 1], &[1, -1]])).rank(), 2);
        let f2: Vec<SparseVec<Gf2>> = vec![vec![(0, Gf2), (1, Gf2)], vec![(0, Gf2), (1, Gf2)]];
        assert_eq!(sparse_rank(f2).rank(), 1);
    }

    #[test]
    fn reduce_maximizes_lead() {
        let mut e = Echelon::new();
        for v in bi(&[&[1, 1, 0], &[0, 1, 1]]) {
            e.insert(v);
        }
        let r = e.reduce(bi(&[&[1, 0, 0]]).remove(0));
        assert_eq!(r[0].0, 2);
    }
}
