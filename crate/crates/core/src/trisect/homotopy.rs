use std::collections::{BTreeSet, VecDeque};

use crate::group::{longitude_normal_form, FreeWord, Letter, Shifted};
use crate::scalar::Scalar;

use super::{TorusDiagram, TrisectError};

/// Generator name of the longitude in arc classes.
pub const LONGITUDE: &str = "l";

/// Homotopy class of an arc rel endpoints, as a word in the longitude and
/// named loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcClass {
    pub word: FreeWord<String>,
}

impl ArcClass {
    pub fn new(word: FreeWord<String>) -> Self {
        ArcClass { word: word.reduced() }
    }

    pub fn longitude_power(p: i64) -> Self {
        ArcClass { word: FreeWord::power(LONGITUDE.to_string(), p) }
    }

    /// Exponent sum of the longitude.
    pub fn p(&self) -> i64 {
        self.word.exponent_of(&LONGITUDE.to_string())
    }

    /// Longitude-free remainder after moving every longitude to the front.
    pub fn residual(&self) -> FreeWord<Shifted<String>> {
        longitude_normal_form(&self.word, &LONGITUDE.to_string()).1
    }

    /// `p = 0` and every other letter is a declared flat loop.
    pub fn is_flat(&self, flat_alphabet: &BTreeSet<String>) -> bool {
        self.p() == 0 && self.word.generators().all(|g| g == LONGITUDE || flat_alphabet.contains(g))
    }
}

/// Arc of `τ_sector` from a negative to a positive bridge point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyArc {
    pub sector: usize,
    pub from: usize,
    pub to: usize,
    pub class: ArcClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceHomotopyRecord {
    signs: Vec<i8>,
    arcs: Vec<HomotopyArc>,
    flat_alphabet: BTreeSet<String>,
    basepoint_sheet: usize,
}

impl SurfaceHomotopyRecord {
    pub fn new(
        signs: Vec<i8>,
        arcs: Vec<HomotopyArc>,
        flat_alphabet: BTreeSet<String>,
        basepoint_sheet: usize,
    ) -> Result<Self, TrisectError> {
        let bad = |m: String| Err(TrisectError::Record(m));
        if signs.is_empty() || !signs.len().is_multiple_of(2) || signs.iter().any(|s| *s != 1 && *s != -1) {
            return bad("bridge point signs must be an even, nonempty list of ±1".into());
        }
        if flat_alphabet.contains(LONGITUDE) {
            return bad("the longitude cannot be a flat loop".into());
        }
        if basepoint_sheet == 0 {
            return bad("sheets are numbered from 1".into());
        }
        let mut degree = vec![[0usize; 3]; signs.len()];
        for (k, a) in arcs.iter().enumerate() {
            if !(1..=3).contains(&a.sector) {
                return bad(format!("arc {k} has sector {}", a.sector));
            }
            for (end, want) in [(a.from, -1), (a.to, 1)] {
                match signs.get(end) {
                    None => return Err(TrisectError::UnknownBridgePoint(end)),
                    Some(s) if *s != want => return bad(format!("arc {k} must run from a negative to a positive point")),
                    _ => degree[end][a.sector - 1] += 1,
                }
            }
        }
        if let Some(i) = degree.iter().position(|d| *d != [1, 1, 1]) {
            return bad(format!("bridge point {i} does not meet one arc of each sector"));
        }
        let arcs = arcs
            .into_iter()
            .map(|a| HomotopyArc { class: ArcClass::new(a.class.word), ..a })
            .collect();
        Ok(SurfaceHomotopyRecord { signs, arcs, flat_alphabet, basepoint_sheet })
    }

    /// Classes read off a torus diagram: each arc is its family's longitude to
    /// the power of its lattice lift.
    pub fn from_diagram<T: Scalar>(d: &TorusDiagram<T>) -> Result<Self, TrisectError> {
        let signs = d.points().iter().map(|p| p.sign).collect();
        let arcs = d
            .arcs()
            .iter()
            .enumerate()
            .map(|(k, a)| HomotopyArc {
                sector: a.family.sector(),
                from: a.from,
                to: a.to,
                class: ArcClass::longitude_power(d.longitude_exponent(k)),
            })
            .collect();
        Self::new(signs, arcs, BTreeSet::new(), 1)
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn arcs(&self) -> &[HomotopyArc] {
        &self.arcs
    }

    pub fn flat_alphabet(&self) -> &BTreeSet<String> {
        &self.flat_alphabet
    }

    pub fn basepoint_sheet(&self) -> usize {
        self.basepoint_sheet
    }

    pub fn b(&self) -> i64 {
        self.signs.len() as i64 / 2
    }

    /// Components of `τ_λ ∪ τ_{λ+1}`.
    pub fn patch_counts(&self) -> [i64; 3] {
        let mut out = [0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            let pair = [i + 1, (i + 1) % 3 + 1];
            *o = self.components(|a| pair.contains(&a.sector)) as i64;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.patch_counts().iter().sum::<i64>() - self.b()
    }

    pub fn is_connected(&self) -> bool {
        self.components(|_| true) == 1
    }

    fn components(&self, keep: impl Fn(&HomotopyArc) -> bool) -> usize {
        let n = self.signs.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in self.arcs.iter().filter(|a| keep(a)) {
            let (x, y) = (find(&mut parent, a.from), find(&mut parent, a.to));
            parent[x] = y;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Net longitude exponent over all arcs.
    pub fn longitude_count(&self) -> i64 {
        self.arcs.iter().map(|a| a.class.p()).sum()
    }

    fn arc_at(&self, point: usize, sector: usize) -> usize {
        self.arcs
            .iter()
            .position(|a| a.sector == sector && (a.from == point || a.to == point))
            .expect("validated degree")
    }

    /// Drags bridge point `x` once around `l^q μ0`.
    ///
    /// Arcs ending at a positive point gain the loop on the right; arcs
    /// starting at a negative point gain its inverse on the left.
    pub fn point_push(&self, x: usize, q: i64, mu0: &FreeWord<String>) -> Result<Self, TrisectError> {
        let sign = *self.signs.get(x).ok_or(TrisectError::UnknownBridgePoint(x))?;
        let mu = FreeWord::power(LONGITUDE.to_string(), q).mul(mu0);
        let mut out = self.clone();
        for a in out.arcs.iter_mut().filter(|a| a.from == x || a.to == x) {
            a.class.word = if sign > 0 { a.class.word.mul(&mu) } else { mu.inverse().mul(&a.class.word) };
        }
        Ok(out)
    }

    /// Drags the endpoints of a flat `τ_2` or `τ_3` arc around the longitude
    /// `times` times: the `τ_1` arc at its negative end gains `l^-times` on the
    /// left, the one at its positive end gains `l^times` on the right.
    pub fn transfer_longitude(&self, arc: usize, times: i64) -> Result<Self, TrisectError> {
        let a = self.arcs.get(arc).ok_or(TrisectError::UnknownArc(arc))?;
        if a.sector == 1 {
            return Err(TrisectError::Record(format!("arc {arc} is in the first sector")));
        }
        if !a.class.is_flat(&self.flat_alphabet) {
            return Err(TrisectError::NonFlatDrag(arc));
        }
        let (tail, head) = (self.arc_at(a.from, 1), self.arc_at(a.to, 1));
        let l = |k| FreeWord::power(LONGITUDE.to_string(), k);
        let mut out = self.clone();
        out.arcs[tail].class.word = l(-times).mul(&out.arcs[tail].class.word);
        out.arcs[head].class.word = out.arcs[head].class.word.mul(&l(times));
        Ok(out)
    }

    /// Moves the whole longitude count onto the first `τ_1` arc by transfers
    /// along a spanning tree.
    pub fn concentrate_longitudes(&self) -> Result<Self, TrisectError> {
        if !self.is_connected() {
            return Err(TrisectError::Disconnected);
        }
        let firsts: Vec<usize> = (0..self.arcs.len()).filter(|&k| self.arcs[k].sector == 1).collect();
        let root = firsts[0];
        // breadth-first tree over first-sector arcs joined by other arcs
        let mut parent_edge = vec![None; self.arcs.len()];
        let mut seen = vec![false; self.arcs.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(t) = queue.pop_front() {
            order.push(t);
            let ends = [self.arcs[t].from, self.arcs[t].to];
            for (j, e) in self.arcs.iter().enumerate() {
                if e.sector == 1 {
                    continue;
                }
                let (u, v) = (self.arc_at(e.from, 1), self.arc_at(e.to, 1));
                if !ends.contains(&e.from) && !ends.contains(&e.to) {
                    continue;
                }
                let other = if u == t { v } else { u };
                if !seen[other] {
                    seen[other] = true;
                    parent_edge[other] = Some(j);
                    queue.push_back(other);
                }
            }
        }
        let mut out = self.clone();
        for &t in order.iter().rev() {
            let Some(j) = parent_edge[t] else { continue };
            let p = out.arcs[t].class.p();
            let e = &out.arcs[j];
            let times = if out.arc_at(e.from, 1) == t { p } else { -p };
            out = out.transfer_longitude(j, times)?;
        }
        Ok(out)
    }

    /// Splits every arc whose class has more than one factor into one arc per
    /// factor, adding a bridge pair and a patch for each cut. Returns the new
    /// record, the net longitude count and whether it is positive.
    pub fn flatten_and_count(&self) -> Result<(Self, i64, bool), TrisectError> {
        if !self.is_connected() {
            return Err(TrisectError::Disconnected);
        }
        let mut signs = self.signs.clone();
        let mut arcs = Vec::new();
        for a in &self.arcs {
            let letters = a.class.word.letters();
            for l in letters {
                if l.gen != LONGITUDE && !self.flat_alphabet.contains(&l.gen) {
                    return Err(TrisectError::Unexpressible(l.gen.clone()));
                }
            }
            if letters.len() <= 1 {
                arcs.push(a.clone());
                continue;
            }
            let mut start = a.from;
            for (i, l) in letters.iter().enumerate() {
                let single = ArcClass::new(FreeWord::from_letters(vec![Letter::new(l.gen.clone(), l.inv)]));
                if i + 1 == letters.len() {
                    arcs.push(HomotopyArc { sector: a.sector, from: start, to: a.to, class: single });
                    break;
                }
                let pos = signs.len();
                let neg = pos + 1;
                signs.extend([1, -1]);
                arcs.push(HomotopyArc { sector: a.sector, from: start, to: pos, class: single });
                for s in [a.sector % 3 + 1, (a.sector + 1) % 3 + 1] {
                    arcs.push(HomotopyArc { sector: s, from: neg, to: pos, class: ArcClass::new(FreeWord::identity()) });
                }
                start = neg;
            }
        }
        let out = Self::new(signs, arcs, self.flat_alphabet.clone(), self.basepoint_sheet)?;
        let count = out.longitude_count();
        Ok((out, count, count > 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trisect::line_diagram;
    use crate::Rational;

    fn class(s: &str) -> ArcClass {
        ArcClass::new(FreeWord::parse(s).unwrap())
    }

    /// Two bridge pairs: first-sector arcs 0→1 and 2→3, the others crossing over.
    fn two_pairs(p0: &str, p1: &str) -> SurfaceHomotopyRecord {
        let arc = |sector, from, to, c: &str| HomotopyArc { sector, from, to, class: class(c) };
        SurfaceHomotopyRecord::new(
            vec![-1, 1, -1, 1],
            vec![
                arc(1, 0, 1, p0),
                arc(1, 2, 3, p1),
                arc(2, 0, 3, "1"),
                arc(2, 2, 1, "1"),
                arc(3, 0, 1, "1"),
                arc(3, 2, 3, "1"),
            ],
            BTreeSet::from(["z".to_string()]),
            1,
        )
        .unwrap()
    }

    fn ps(r: &SurfaceHomotopyRecord) -> Vec<i64> {
        r.arcs().iter().filter(|a| a.sector == 1).map(|a| a.class.p()).collect()
    }

    #[test]
    fn transfers_move_one_longitude() {
        // arc 3 runs from the second first-sector arc's tail to the first one's head
        let r = two_pairs("l", "l^-1");
        let t = r.transfer_longitude(3, -1).unwrap();
        assert_eq!(ps(&t), vec![0, 0]);
        let r = two_pairs("l^2", "1");
        assert_eq!(ps(&r.transfer_longitude(2, 1).unwrap()), vec![1, 1]);
        assert!(r.transfer_longitude(0, 1).is_err());
    }

    #[test]
    fn concentration_keeps_the_count() {
        let r = two_pairs("l^2 z", "l^3");
        let c = r.concentrate_longitudes().unwrap();
        assert_eq!(ps(&c), vec![5, 0]);
        assert_eq!(c.euler_characteristic(), r.euler_characteristic());
    }

    #[test]
    fn pushes_cancel() {
        let r = two_pairs("l z", "1");
        let mu = FreeWord::parse("z^-1 y").unwrap();
        assert_eq!(r.point_push(1, 0, &FreeWord::identity()).unwrap(), r);
        let there = r.point_push(1, 2, &mu).unwrap();
        assert_ne!(there, r);
        let back = there.point_push(1, -2, &FreeWord::identity()).unwrap();
        let back = back.point_push(1, 0, &mu.inverse()).unwrap();
        let undone = there.point_push(1, 0, &FreeWord::identity()).unwrap();
        assert_eq!(undone, there);
        // l^2 mu followed by its inverse
        let inv = FreeWord::power(LONGITUDE.to_string(), 2).mul(&mu).inverse();
        assert_eq!(there.point_push(1, 0, &inv).unwrap(), r);
        assert_eq!(back.arcs()[0].class.p(), r.arcs()[0].class.p());
        let first = r.point_push(1, 1, &FreeWord::identity()).unwrap();
        assert_eq!(ps(&first), vec![2, 0]);
    }

    #[test]
    fn flatten_splits_and_keeps_euler_characteristic() {
        let r = two_pairs("l z", "1");
        let (f, count, pos) = r.flatten_and_count().unwrap();
        assert_eq!((f.b(), count, pos), (3, 1, true));
        assert_eq!(f.euler_characteristic(), r.euler_characteristic());
        assert_eq!(f.patch_counts().iter().sum::<i64>(), r.patch_counts().iter().sum::<i64>() + 1);
        let (g, _, _) = f.flatten_and_count().unwrap();
        assert_eq!(g, f);
        assert_eq!(two_pairs("l y", "1").flatten_and_count(), Err(TrisectError::Unexpressible("y".into())));
    }

    #[test]
    fn line_record_has_one_longitude() {
        let d = line_diagram::<Rational>();
        let r = SurfaceHomotopyRecord::from_diagram(&d).unwrap();
        let (f, count, pos) = r.flatten_and_count().unwrap();
        assert_eq!((count, pos), (1, true));
        assert_eq!(f, r);
        assert_eq!(r.euler_characteristic(), 2);
    }
}
