use std::fmt;

use super::{FreeWord, Letter};

/// Generator conjugated by a power of the longitude: `x@k = l^{-k} x l^{k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shifted<G> {
    pub gen: G,
    pub shift: i64,
}

impl<G: fmt::Display> fmt::Display for Shifted<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.gen, self.shift)
    }
}

/// Writes `γ = l^p γ₀` with `γ₀` free of `l`.
///
/// Each `l` letter is moved to the front with `x l = l (l⁻¹ x l)`, so a
/// letter ends up shifted by the `l`-exponent of the suffix after it.
pub fn longitude_normal_form<G: Clone + PartialEq>(gamma: &FreeWord<G>, l: &G) -> (i64, FreeWord<Shifted<G>>) {
    // letters are stored with the exponent seen so far; moving past the
    // remaining suffix adds (p_final − p_seen)
    let mut seen = 0i64;
    let mut pending: Vec<(Letter<G>, i64)> = Vec::new();
    for x in gamma.letters() {
        if &x.gen == l {
            seen += x.exponent();
        } else {
            pending.push((x.clone(), seen));
        }
    }
    let p = seen;
    let mut rest = FreeWord::identity();
    for (x, at) in pending {
        rest.push_reduced(Letter::new(Shifted { gen: x.gen, shift: p - at }, x.inv));
    }
    (p, rest)
}

/// Re-expands shifted letters as conjugates by `l`.
pub fn expand_shifted<G: Clone + PartialEq>(w: &FreeWord<Shifted<G>>, l: &G) -> FreeWord<G> {
    let mut out = FreeWord::identity();
    for x in w.letters() {
        let k = x.gen.shift;
        for y in FreeWord::power(l.clone(), -k)
            .letters()
            .iter()
            .cloned()
            .chain(std::iter::once(Letter::new(x.gen.gen.clone(), x.inv)))
            .chain(FreeWord::power(l.clone(), k).letters().iter().cloned())
        {
            out.push_reduced(y);
        }
    }
    out
}

/// `l^q`-conjugation of a shifted word: `l^{-q} w l^{q}`.
pub fn shift_word<G: Clone + PartialEq>(w: &FreeWord<Shifted<G>>, q: i64) -> FreeWord<Shifted<G>> {
    w.map_gens(|s| Shifted { gen: s.gen.clone(), shift: s.shift + q })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord<String> {
        FreeWord::parse(s).unwrap()
    }

    #[test]
    fn moves_longitudes_to_the_front() {
        let l = "l".to_string();
        let (p, g0) = longitude_normal_form(&w("x l x"), &l);
        assert_eq!(p, 1);
        assert_eq!(g0.to_string(), "x@1 x@0");
        assert_eq!(expand_shifted(&g0, &l), w("l^-1 x l x"));
        let (p, g0) = longitude_normal_form(&w("l l l"), &l);
        assert_eq!((p, g0.len()), (3, 0));
        let g = w("x l^-1 y l");
        let (p, g0) = longitude_normal_form(&g, &l);
        assert_eq!(p, 0);
        assert_eq!(FreeWord::power(l.clone(), p).mul(&expand_shifted(&g0, &l)), g.reduced());
    }
}
