use std::fmt;

use crate::scalar::Scalar;

use super::TrisectError;

/// Arc family, one per handlebody.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::B, Family::C];

    /// Sector index 1, 2 or 3.
    pub fn sector(self) -> usize {
        match self {
            Family::A => 1,
            Family::B => 2,
            Family::C => 3,
        }
    }

    pub fn from_sector(s: usize) -> Option<Family> {
        match s {
            1 => Some(Family::A),
            2 => Some(Family::B),
            3 => Some(Family::C),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "A" | "a" | "1" => Some(Family::A),
            "B" | "b" | "2" => Some(Family::B),
            "C" | "c" | "3" => Some(Family::C),
            _ => None,
        }
    }

    /// The constant foliation form of the sector evaluated on a displacement:
    /// `dy`, `-dx`, `dx - dy`.
    pub fn beta<T: Scalar>(self, dx: &T, dy: &T) -> T {
        match self {
            Family::A => dy.clone(),
            Family::B => -dx.clone(),
            Family::C => dx.clone() - dy.clone(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BridgePoint<T> {
    pub x: T,
    pub y: T,
    pub sign: i8,
}

/// Polyline on the torus. Segment `i` runs from `points[i]` to
/// `points[i + 1] + lifts[i]` in the universal cover.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusArc<T> {
    pub family: Family,
    pub points: Vec<(T, T)>,
    pub lifts: Vec<(i64, i64)>,
    /// negative bridge point
    pub from: usize,
    /// positive bridge point
    pub to: usize,
}

impl<T: Scalar> TorusArc<T> {
    /// Lifted displacement of every segment.
    pub fn displacements(&self, index: usize) -> Result<Vec<(T, T)>, TrisectError> {
        if self.points.len() < 2 {
            return Err(TrisectError::Diagram(format!("arc {index} needs at least one segment")));
        }
        if self.lifts.len() != self.points.len() - 1 {
            return Err(TrisectError::MissingLift(index));
        }
        let mut out = Vec::with_capacity(self.lifts.len());
        for (i, w) in self.points.windows(2).enumerate() {
            let (nx, ny) = self.lifts[i];
            let dx = w[1].0.clone() + T::from_i64(nx) - w[0].0.clone();
            let dy = w[1].1.clone() + T::from_i64(ny) - w[0].1.clone();
            if dx.is_zero() && dy.is_zero() {
                return Err(TrisectError::ZeroLengthSegment { arc: index, segment: i });
            }
            out.push((dx, dy));
        }
        Ok(out)
    }

    /// Strict positivity of the sector form on every segment.
    pub fn beta_positive(&self, sector: Family) -> Result<bool, TrisectError> {
        Ok(self
            .displacements(0)?
            .iter()
            .all(|(dx, dy)| sector.beta(dx, dy) > T::zero()))
    }

    /// Exact line integral of the family's form along the lifted polyline.
    pub fn integral(&self, index: usize) -> Result<T, TrisectError> {
        Ok(self
            .displacements(index)?
            .iter()
            .fold(T::zero(), |acc, (dx, dy)| acc + self.family.beta(dx, dy)))
    }
}

/// Bridge points and the three arc families on the unit torus.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusDiagram<T> {
    points: Vec<BridgePoint<T>>,
    arcs: Vec<TorusArc<T>>,
}

impl<T: Scalar> TorusDiagram<T> {
    pub fn new(points: Vec<BridgePoint<T>>, arcs: Vec<TorusArc<T>>) -> Result<Self, TrisectError> {
        let bad = |m: String| Err(TrisectError::Diagram(m));
        let one = T::one();
        for (i, p) in points.iter().enumerate() {
            if p.x < T::zero() || p.x >= one || p.y < T::zero() || p.y >= one {
                return bad(format!("bridge point {i} lies outside [0,1)^2"));
            }
            if p.sign != 1 && p.sign != -1 {
                return bad(format!("bridge point {i} has sign {}", p.sign));
            }
        }
        if !points.len().is_multiple_of(2) || points.is_empty() {
            return bad(format!("{} bridge points; need a positive even count", points.len()));
        }
        let mut meets = vec![[0usize; 3]; points.len()];
        for (k, a) in arcs.iter().enumerate() {
            a.displacements(k)?;
            for (end, want) in [(a.from, -1), (a.to, 1)] {
                let Some(p) = points.get(end) else {
                    return bad(format!("arc {k} ends at undeclared point {end}"));
                };
                if p.sign != want {
                    return bad(format!("arc {k} must run from a negative to a positive point"));
                }
                meets[end][a.family.sector() - 1] += 1;
            }
            let first = &a.points[0];
            let last = a.points.last().expect("checked length");
            let (s, e) = (&points[a.from], &points[a.to]);
            if first.0 != s.x || first.1 != s.y || last.0 != e.x || last.1 != e.y {
                return bad(format!("arc {k} polyline does not start and end at its bridge points"));
            }
            for q in &a.points {
                if q.0 < T::zero() || q.0 >= one || q.1 < T::zero() || q.1 >= one {
                    return bad(format!("arc {k} has a vertex outside [0,1)^2"));
                }
            }
        }
        for (i, m) in meets.iter().enumerate() {
            if *m != [1, 1, 1] {
                return bad(format!("bridge point {i} meets families {m:?} times"));
            }
        }
        let d = TorusDiagram { points, arcs };
        if let Some((x, y)) = d.family_crossing() {
            return bad(format!("arcs {x} and {y} of the same family intersect"));
        }
        Ok(d)
    }

    pub fn points(&self) -> &[BridgePoint<T>] {
        &self.points
    }

    pub fn arcs(&self) -> &[TorusArc<T>] {
        &self.arcs
    }

    /// Bridge index: half the number of bridge points.
    pub fn bridge_index(&self) -> usize {
        self.points.len() / 2
    }

    /// Every arc is positive for its own family's form.
    pub fn is_transverse(&self) -> bool {
        self.arcs.iter().all(|a| a.beta_positive(a.family).unwrap_or(false))
    }

    /// Sum over arcs of the exact line integrals.
    pub fn symplectic_area(&self) -> Result<T, TrisectError> {
        let mut total = T::zero();
        for (k, a) in self.arcs.iter().enumerate() {
            total = total + a.integral(k)?;
        }
        Ok(total)
    }

    /// Lattice lift exponents of an arc measured by its family's form.
    pub fn longitude_exponent(&self, arc: usize) -> i64 {
        let a = &self.arcs[arc];
        let (nx, ny) = a.lifts.iter().fold((0i64, 0i64), |(x, y), (a, b)| (x + a, y + b));
        match a.family {
            Family::A => ny,
            Family::B => -nx,
            Family::C => nx - ny,
        }
    }

    fn segments(&self) -> Vec<Segment<T>> {
        let mut out = Vec::new();
        for (k, a) in self.arcs.iter().enumerate() {
            let ds = a.displacements(k).expect("validated");
            for (i, (dx, dy)) in ds.into_iter().enumerate() {
                let p = a.points[i].clone();
                let q = (p.0.clone() + dx, p.1.clone() + dy);
                out.push(Segment { arc: k, index: i, p, q });
            }
        }
        out
    }

    /// First pair of same-family arcs that meet.
    fn family_crossing(&self) -> Option<(usize, usize)> {
        let segs = self.segments();
        for (i, s) in segs.iter().enumerate() {
            for t in &segs[i..] {
                if self.arcs[s.arc].family != self.arcs[t.arc].family {
                    continue;
                }
                let same = s.arc == t.arc && s.index == t.index;
                let consecutive = s.arc == t.arc && s.index.abs_diff(t.index) == 1;
                for (tx, ty) in translations(s, t) {
                    if same && tx == 0 && ty == 0 {
                        continue;
                    }
                    let shift = (T::from_i64(tx), T::from_i64(ty));
                    let t2 = (t.p.0.clone() + shift.0.clone(), t.p.1.clone() + shift.1.clone());
                    let t3 = (t.q.0.clone() + shift.0, t.q.1.clone() + shift.1);
                    if !meet(&s.p, &s.q, &t2, &t3) {
                        continue;
                    }
                    if consecutive && touch_only_at_joint(&s.p, &s.q, &t2, &t3) {
                        continue;
                    }
                    return Some((s.arc, t.arc));
                }
            }
        }
        None
    }
}

struct Segment<T> {
    arc: usize,
    index: usize,
    p: (T, T),
    q: (T, T),
}

fn translations<T: Scalar>(s: &Segment<T>, t: &Segment<T>) -> Vec<(i64, i64)> {
    let span = |a: &T, b: &T| {
        let (x, y) = (a.to_f64(), b.to_f64());
        (x.min(y), x.max(y))
    };
    let (sx0, sx1) = span(&s.p.0, &s.q.0);
    let (sy0, sy1) = span(&s.p.1, &s.q.1);
    let (tx0, tx1) = span(&t.p.0, &t.q.0);
    let (ty0, ty1) = span(&t.p.1, &t.q.1);
    let lo_x = (sx0 - tx1).floor() as i64 - 1;
    let hi_x = (sx1 - tx0).ceil() as i64 + 1;
    let lo_y = (sy0 - ty1).floor() as i64 - 1;
    let hi_y = (sy1 - ty0).ceil() as i64 + 1;
    let mut out = Vec::new();
    for x in lo_x..=hi_x {
        for y in lo_y..=hi_y {
            out.push((x, y));
        }
    }
    out
}

fn orient<T: Scalar>(a: &(T, T), b: &(T, T), c: &(T, T)) -> i8 {
    let v = (b.0.clone() - a.0.clone()) * (c.1.clone() - a.1.clone())
        - (b.1.clone() - a.1.clone()) * (c.0.clone() - a.0.clone());
    if v > T::zero() {
        1
    } else if v < T::zero() {
        -1
    } else {
        0
    }
}

fn within<T: Scalar>(a: &(T, T), b: &(T, T), c: &(T, T)) -> bool {
    let between = |x: &T, y: &T, z: &T| (x <= z && z <= y) || (y <= z && z <= x);
    between(&a.0, &b.0, &c.0) && between(&a.1, &b.1, &c.1)
}

/// Closed segments `ab` and `cd` share a point.
fn meet<T: Scalar>(a: &(T, T), b: &(T, T), c: &(T, T), d: &(T, T)) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within(a, b, c))
        || (o2 == 0 && within(a, b, d))
        || (o3 == 0 && within(c, d, a))
        || (o4 == 0 && within(c, d, b))
}

/// Consecutive segments that only share their common vertex.
fn touch_only_at_joint<T: Scalar>(a: &(T, T), b: &(T, T), c: &(T, T), d: &(T, T)) -> bool {
    let joint = if b == c {
        Some((a, b, d))
    } else if d == a {
        Some((c, a, b))
    } else {
        None
    };
    let Some((x, j, y)) = joint else { return false };
    if orient(x, j, y) != 0 {
        return true;
    }
    // collinear: fine when the two pieces leave the joint in opposite directions
    let dot = (x.0.clone() - j.0.clone()) * (y.0.clone() - j.0.clone())
        + (x.1.clone() - j.1.clone()) * (y.1.clone() - j.1.clone());
    dot < T::zero()
}

/// Torus diagram of a complex line in the projective plane: one bridge pair,
/// the `A` arc wrapping once around the `y` direction.
pub fn line_diagram<T: Scalar>() -> TorusDiagram<T> {
    let r = |p: i64, q: i64| T::from_i64(p) / T::from_i64(q);
    let q = (r(3, 5), r(7, 10));
    let p = (r(2, 5), r(1, 5));
    let m = (r(9, 20), r(7, 20));
    let points = vec![
        BridgePoint { x: q.0.clone(), y: q.1.clone(), sign: -1 },
        BridgePoint { x: p.0.clone(), y: p.1.clone(), sign: 1 },
    ];
    let arcs = vec![
        TorusArc { family: Family::A, points: vec![q.clone(), p.clone()], lifts: vec![(0, 1)], from: 0, to: 1 },
        TorusArc { family: Family::B, points: vec![q.clone(), p.clone()], lifts: vec![(0, 0)], from: 0, to: 1 },
        TorusArc { family: Family::C, points: vec![q, m, p], lifts: vec![(0, 0), (0, 0)], from: 0, to: 1 },
    ];
    TorusDiagram::new(points, arcs).expect("line diagram is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn seg(dx: f64, dy: f64) -> TorusArc<f64> {
        TorusArc { family: Family::A, points: vec![(0.0, 0.0), (dx, dy)], lifts: vec![(0, 0)], from: 0, to: 1 }
    }

    #[test]
    fn beta_signs() {
        assert!(seg(0.2, 0.5).beta_positive(Family::A).unwrap());
        assert!(!seg(0.2, 0.5).beta_positive(Family::B).unwrap());
        assert!(seg(0.5, 0.2).beta_positive(Family::C).unwrap());
        assert_eq!(seg(0.0, 0.0).beta_positive(Family::A), Err(TrisectError::ZeroLengthSegment { arc: 0, segment: 0 }));
    }

    #[test]
    fn line_area_is_one() {
        let d = line_diagram::<Rational>();
        assert_eq!(d.symplectic_area().unwrap(), Rational::from_integer(1.into()));
        assert!(d.is_transverse());
        assert_eq!(d.bridge_index(), 1);
        assert_eq!((0..3).map(|a| d.longitude_exponent(a)).collect::<Vec<_>>(), vec![1, 0, 0]);
        let f = line_diagram::<f64>();
        assert!((f.symplectic_area().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_contractible_loop_integrates_to_zero() {
        // a triangle split into two arcs of one family
        let tri: [(f64, f64); 3] = [(0.1, 0.1), (0.6, 0.2), (0.3, 0.7)];
        let a = TorusArc { family: Family::C, points: vec![tri[0], tri[1], tri[2]], lifts: vec![(0, 0); 2], from: 0, to: 1 };
        let b = TorusArc { family: Family::C, points: vec![tri[2], tri[0]], lifts: vec![(0, 0)], from: 0, to: 1 };
        assert!((a.integral(0).unwrap() + b.integral(1).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn same_family_crossing_is_rejected() {
        let pts = |xy: [(f64, f64); 4]| {
            xy.iter()
                .enumerate()
                .map(|(i, &(x, y))| BridgePoint { x, y, sign: if i % 2 == 0 { -1 } else { 1 } })
                .collect::<Vec<_>>()
        };
        let p = pts([(0.1, 0.1), (0.5, 0.5), (0.1, 0.5), (0.5, 0.1)]);
        let arc = |f, a: usize, b: usize, lift| TorusArc {
            family: f,
            points: vec![(p[a].x, p[a].y), (p[b].x, p[b].y)],
            lifts: vec![lift],
            from: a,
            to: b,
        };
        // the two A arcs are the diagonals of a square
        let crossing = vec![
            arc(Family::A, 0, 1, (0, 0)),
            arc(Family::A, 2, 3, (0, 0)),
            arc(Family::B, 0, 3, (0, 0)),
            arc(Family::B, 2, 1, (0, 0)),
            arc(Family::C, 0, 3, (0, -1)),
            arc(Family::C, 2, 1, (1, 0)),
        ];
        assert!(matches!(TorusDiagram::new(p.clone(), crossing), Err(TrisectError::Diagram(_))));
        let fine = vec![
            arc(Family::A, 0, 3, (0, 0)),
            arc(Family::A, 2, 1, (0, 0)),
            arc(Family::B, 0, 1, (0, 0)),
            arc(Family::B, 2, 3, (0, 1)),
            arc(Family::C, 0, 3, (0, 1)),
            arc(Family::C, 2, 1, (0, 1)),
        ];
        let d = TorusDiagram::new(p, fine).unwrap();
        assert_eq!(d.bridge_index(), 2);
    }
}
