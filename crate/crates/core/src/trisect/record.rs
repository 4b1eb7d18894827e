use crate::braid::{closure_linking_matrix, strand_components, transverse_self_linking, BraidWord};
use crate::verdict::{Provenance, Verdict};
use crate::Rational;

use super::{Family, TorusDiagram, TrisectError};

/// Link diagram of a sector: `K` together with the two core links, as a braid
/// closure. `roles[i]` tags closure component `i` as `K`, `L` (this sector's
/// core link), `N` (the next sector's core link) or `-` (ignored).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorLink {
    pub braid: BraidWord,
    pub roles: Vec<char>,
}

impl SectorLink {
    /// `(w, lk(K, L), lk(K, N))` by signed crossing counts.
    pub fn integers(&self) -> Result<(i64, i64, i64), TrisectError> {
        let comps = strand_components(&self.braid).iter().max().map_or(0, |m| m + 1);
        if self.roles.len() != comps {
            return Err(TrisectError::Record(format!(
                "link has {comps} components but {} roles",
                self.roles.len()
            )));
        }
        let ks: Vec<usize> = (0..comps).filter(|&i| self.roles[i] == 'K').collect();
        if ks.len() != 1 {
            return Err(TrisectError::Record("link roles must name exactly one K".into()));
        }
        if let Some(r) = self.roles.iter().find(|r| !matches!(r, 'K' | 'L' | 'N' | '-')) {
            return Err(TrisectError::Record(format!("unknown link role {r}")));
        }
        let k = ks[0];
        let m = closure_linking_matrix(&self.braid);
        let lk = |tag: char| (0..comps).filter(|&i| self.roles[i] == tag).map(|i| m[k][i]).sum::<i64>();
        Ok((m[k][k], lk('L'), lk('N')))
    }
}

/// Per-sector integers. `provenance` covers `[w, lk_self, lk_next]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SectorData {
    /// writhe framing of `K`
    pub w: Option<i64>,
    /// linking of `K` with this sector's core link
    pub lk_self: Option<i64>,
    /// linking of `K` with the next sector's core link
    pub lk_next: Option<i64>,
    /// braid whose transverse closure is `K`
    pub braid: Option<BraidWord>,
    pub link: Option<SectorLink>,
    pub provenance: [Provenance; 3],
}

impl SectorData {
    fn get(&self, sector: usize) -> Result<(i64, i64, i64), TrisectError> {
        let miss = |field| TrisectError::MissingData { sector, field };
        Ok((
            self.w.ok_or_else(|| miss("w"))?,
            self.lk_self.ok_or_else(|| miss("lk_self"))?,
            self.lk_next.ok_or_else(|| miss("lk_next"))?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BridgeTrisectionRecord {
    pub b: i64,
    pub c: [i64; 3],
    pub sectors: [SectorData; 3],
    pub diagram: Option<TorusDiagram<Rational>>,
}

pub const FIELD_NAMES: [&str; 3] = ["w", "lk_self", "lk_next"];

impl BridgeTrisectionRecord {
    pub fn new(b: i64, c: [i64; 3], sectors: [SectorData; 3]) -> Result<Self, TrisectError> {
        let r = BridgeTrisectionRecord { b, c, sectors, diagram: None };
        r.validate()?;
        Ok(r)
    }

    pub fn with_diagram(mut self, d: TorusDiagram<Rational>) -> Result<Self, TrisectError> {
        self.diagram = Some(d);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), TrisectError> {
        let max_c = *self.c.iter().max().expect("three counts");
        let min_c = *self.c.iter().min().expect("three counts");
        if min_c < 1 || self.b < max_c {
            return Err(TrisectError::Record(format!(
                "need b >= max(c) and every c >= 1, got b={} c={:?}",
                self.b, self.c
            )));
        }
        if let Some(d) = &self.diagram {
            if d.bridge_index() as i64 != self.b {
                return Err(TrisectError::Record(format!(
                    "diagram has {} bridge points, record says b={}",
                    d.points().len(),
                    self.b
                )));
            }
            let counts = patch_counts(d);
            if counts != self.c {
                return Err(TrisectError::Record(format!("diagram patch counts {counts:?} differ from c={:?}", self.c)));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.c.iter().sum::<i64>() - self.b
    }

    fn sector(&self, lambda: usize) -> Result<&SectorData, TrisectError> {
        self.sectors
            .get(lambda.wrapping_sub(1))
            .ok_or_else(|| TrisectError::Record(format!("no sector {lambda}")))
    }

    pub fn c1_pairing(&self) -> Result<i64, TrisectError> {
        let mut total = 0;
        for (i, s) in self.sectors.iter().enumerate() {
            let (_, a, n) = s.get(i + 1)?;
            total += a - n;
        }
        Ok(total)
    }

    pub fn self_intersection(&self) -> Result<i64, TrisectError> {
        let mut total = self.b;
        for (i, s) in self.sectors.iter().enumerate() {
            total += s.get(i + 1)?.0;
        }
        Ok(total)
    }

    /// `w - lk(K, L) + lk(K, N)`, with a warning when an attached braid disagrees.
    pub fn sector_self_linking(&self, lambda: usize) -> Result<(i64, Option<String>), TrisectError> {
        let s = self.sector(lambda)?;
        let (w, a, n) = s.get(lambda)?;
        let sl = w - a + n;
        let warning = s.braid.as_ref().and_then(|br| {
            let t = transverse_self_linking(br);
            (t != sl).then(|| format!("sector {lambda}: record gives sl={sl}, braid closure gives {t}"))
        });
        Ok((sl, warning))
    }

    /// Sum of sector self-linking numbers against `K·K - <c1, K> - b`.
    ///
    /// A sector with an attached braid contributes the braid's transverse
    /// self-linking; the others use the record's integers.
    pub fn total_self_linking_identity(&self) -> Verdict {
        let run = || -> Result<Verdict, TrisectError> {
            let mut lhs = 0;
            let mut warnings = Vec::new();
            for lambda in 1..=3 {
                let (sl, warn) = self.sector_self_linking(lambda)?;
                lhs += match &self.sectors[lambda - 1].braid {
                    Some(br) => transverse_self_linking(br),
                    None => sl,
                };
                warnings.extend(warn);
            }
            let rhs = self.self_intersection()? - self.c1_pairing()? - self.b;
            let mut v = Verdict::eq(lhs, rhs).at_stage("total-sl");
            for (i, s) in self.sectors.iter().enumerate() {
                for (f, p) in FIELD_NAMES.iter().zip(s.provenance) {
                    v = v.with_provenance(format!("{f}{}", i + 1), p);
                }
            }
            for w in warnings {
                v = v.warn(w);
            }
            Ok(v)
        };
        run().unwrap_or_else(|e| Verdict::error(e.to_string()).at_stage("total-sl"))
    }

    /// Integers recomputed from the attached sector links.
    pub fn diagram_integers(&self) -> Result<[Option<(i64, i64, i64)>; 3], TrisectError> {
        let mut out = [None; 3];
        for (i, s) in self.sectors.iter().enumerate() {
            if let Some(l) = &s.link {
                out[i] = Some(l.integers()?);
            }
        }
        Ok(out)
    }

    /// Replaces stored integers by the link-computed ones wherever a link is attached.
    pub fn recomputed(&self) -> Result<Self, TrisectError> {
        let mut r = self.clone();
        for (i, v) in self.diagram_integers()?.into_iter().enumerate() {
            if let Some((w, a, n)) = v {
                let s = &mut r.sectors[i];
                s.w = Some(w);
                s.lk_self = Some(a);
                s.lk_next = Some(n);
                s.provenance = [Provenance::DiagramComputed; 3];
            }
        }
        Ok(r)
    }

    /// Stored integers against the link-computed ones.
    pub fn link_consistency(&self) -> Verdict {
        let ints = match self.diagram_integers() {
            Ok(v) => v,
            Err(e) => return Verdict::error(e.to_string()).at_stage("links"),
        };
        let mut v = Verdict::from_bool(true).at_stage("links");
        for (i, computed) in ints.iter().enumerate() {
            let Some((w, a, n)) = computed else { continue };
            let s = &self.sectors[i];
            for (f, (stored, got)) in FIELD_NAMES.iter().zip([(s.w, *w), (s.lk_self, *a), (s.lk_next, *n)]) {
                if stored != Some(got) {
                    let shown = stored.map_or("missing".to_string(), |x| x.to_string());
                    v = Verdict::from_bool(false)
                        .at_stage("links")
                        .because(format!("{f}{} stored {shown}, link gives {got}", i + 1))
                        .with_witness("sector", i + 1)
                        .with_witness("field", f);
                    return v;
                }
            }
            v = v.with_witness(format!("sector{}", i + 1), "match");
        }
        v
    }

    /// `(χ(F), sl(L))` after attaching bands along `n` Whitney arcs, with the
    /// slice-Bennequin check `sl(L) <= -χ(F)`.
    pub fn whitney_band_bookkeeping(&self, n: i64) -> Result<(i64, i64, Verdict), TrisectError> {
        if n < 0 {
            return Err(TrisectError::Record(format!("negative Whitney arc count {n}")));
        }
        let chi_f = self.c.iter().sum::<i64>() - 2 * n;
        let sl_l = self.self_intersection()? - self.c1_pairing()? - self.b + 2 * n;
        let v = Verdict::le(sl_l, -chi_f).at_stage("slice-bennequin");
        Ok((chi_f, sl_l, v))
    }
}

/// Whitney arcs, each tagged with the sector it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyBookkeeping {
    sectors: Vec<usize>,
}

impl WhitneyBookkeeping {
    pub fn new(sectors: Vec<usize>) -> Result<Self, TrisectError> {
        if let Some(s) = sectors.iter().find(|s| !(1..=3).contains(*s)) {
            return Err(TrisectError::Record(format!("Whitney arc tagged with sector {s}")));
        }
        Ok(WhitneyBookkeeping { sectors })
    }

    pub fn n(&self) -> usize {
        self.sectors.len()
    }

    pub fn per_sector(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for &s in &self.sectors {
            out[s - 1] += 1;
        }
        out
    }

    pub fn apply(&self, rec: &BridgeTrisectionRecord) -> Result<(i64, i64, Verdict), TrisectError> {
        rec.whitney_band_bookkeeping(self.n() as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjunctionMode {
    /// `χ <= <c1, K> - K·K`
    Standard,
    /// `χ <= -|<c1, K>| - K·K`
    ZeroArea,
}

pub fn adjunction_verdict(chi: i64, c1k: i64, k2: i64, mode: AdjunctionMode) -> Verdict {
    let bound = match mode {
        AdjunctionMode::Standard => c1k - k2,
        AdjunctionMode::ZeroArea => -c1k.abs() - k2,
    };
    Verdict::le(chi, bound).at_stage("adjunction")
}

/// Components of `τ_λ ∪ τ_{λ+1}` for each sector.
fn patch_counts(d: &TorusDiagram<Rational>) -> [i64; 3] {
    let n = d.points().len();
    let mut out = [0; 3];
    for (i, out_i) in out.iter_mut().enumerate() {
        let fams = [Family::ALL[i], Family::ALL[(i + 1) % 3]];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in d.arcs().iter().filter(|a| fams.contains(&a.family)) {
            let (x, y) = (find(&mut parent, a.from), find(&mut parent, a.to));
            parent[x] = y;
        }
        *out_i = (0..n).filter(|&x| find(&mut parent, x) == x).count() as i64;
    }
    out
}

/// The line in the projective plane: one bridge pair, three unknotted sectors,
/// each `K` linking its own core circle once.
pub fn line_record() -> BridgeTrisectionRecord {
    let sector = || SectorData {
        w: Some(0),
        lk_self: Some(1),
        lk_next: Some(0),
        braid: Some(BraidWord::identity(1)),
        link: Some(SectorLink {
            braid: BraidWord::new(3, vec![1, 1]).expect("valid word"),
            roles: vec!['K', 'L', 'N'],
        }),
        provenance: [Provenance::DiagramComputed; 3],
    };
    BridgeTrisectionRecord::new(1, [1, 1, 1], [sector(), sector(), sector()])
        .and_then(|r| r.with_diagram(super::line_diagram()))
        .expect("line record is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bare(b: i64, c: [i64; 3], w: [i64; 3]) -> BridgeTrisectionRecord {
        let s = |w| SectorData { w: Some(w), lk_self: Some(0), lk_next: Some(0), ..Default::default() };
        BridgeTrisectionRecord::new(b, c, [s(w[0]), s(w[1]), s(w[2])]).unwrap()
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(bare(1, [1, 1, 1], [0; 3]).euler_characteristic(), 2);
        assert_eq!(bare(2, [1, 1, 1], [0; 3]).euler_characteristic(), 1);
        assert_eq!(bare(4, [2, 1, 1], [0; 3]).euler_characteristic(), 0);
        assert!(BridgeTrisectionRecord::new(0, [1, 1, 1], Default::default()).is_err());
    }

    #[test]
    fn self_intersections() {
        assert_eq!(bare(2, [1, 1, 1], [0, 0, 0]).self_intersection().unwrap(), 2);
        assert_eq!(bare(1, [1, 1, 1], [-1, -1, 0]).self_intersection().unwrap(), -1);
        let missing = BridgeTrisectionRecord::new(1, [1, 1, 1], Default::default()).unwrap();
        assert_eq!(missing.self_intersection(), Err(TrisectError::MissingData { sector: 1, field: "w" }));
    }

    #[test]
    fn line_record_numbers() {
        let r = line_record();
        assert_eq!(r.euler_characteristic(), 2);
        assert_eq!(r.c1_pairing().unwrap(), 3);
        assert_eq!(r.self_intersection().unwrap(), 1);
        for l in 1..=3 {
            assert_eq!(r.sector_self_linking(l).unwrap(), (-1, None));
        }
        let v = r.total_self_linking_identity();
        assert!(v.is_holds(), "{v}");
        assert_eq!(v.lhs, Some((-3).into()));
        assert_eq!(r.whitney_band_bookkeeping(0).unwrap().0, 3);
        assert_eq!(r.whitney_band_bookkeeping(0).unwrap().1, -3);
        assert!(r.whitney_band_bookkeeping(0).unwrap().2.is_holds());
        assert!(r.link_consistency().is_holds());
        assert_eq!(r.recomputed().unwrap().sectors, r.sectors);
    }

    #[test]
    fn braid_mismatch_is_flagged() {
        let mut r = line_record();
        r.sectors[0].w = Some(1);
        let (sl, warn) = r.sector_self_linking(1).unwrap();
        assert_eq!(sl, 0);
        assert!(warn.is_some());
        assert!(!r.total_self_linking_identity().is_holds());
        assert!(!r.link_consistency().is_holds());
    }

    #[test]
    fn adjunction_examples() {
        let v = adjunction_verdict(2, 0, 0, AdjunctionMode::Standard);
        assert!(!v.is_holds());
        assert!(!adjunction_verdict(2, 1, 1, AdjunctionMode::Standard).is_holds());
        let t = adjunction_verdict(0, 0, 0, AdjunctionMode::Standard);
        assert!(t.is_holds());
        assert_eq!(t.slack, Some(0.into()));
        assert!(!adjunction_verdict(0, 3, 1, AdjunctionMode::ZeroArea).is_holds());
        assert!(adjunction_verdict(2, 3, 1, AdjunctionMode::Standard).is_holds());
    }

    #[test]
    fn whitney_slack_is_independent_of_n() {
        let r = line_record();
        let slack = |n| {
            let (x, s, _) = r.whitney_band_bookkeeping(n).unwrap();
            (-x) - s
        };
        let (x0, s0, _) = r.whitney_band_bookkeeping(4).unwrap();
        let (x1, s1, _) = r.whitney_band_bookkeeping(5).unwrap();
        assert_eq!((x1 - x0, s1 - s0), (-2, 2));
        assert_eq!(slack(0), slack(7));
        assert_eq!(WhitneyBookkeeping::new(vec![1, 3, 3]).unwrap().per_sector(), [1, 0, 2]);
        assert!(WhitneyBookkeeping::new(vec![4]).is_err());
    }
}
