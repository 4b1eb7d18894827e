use std::collections::BTreeMap;
use std::fmt;

use crate::braid::{BraidWord, Factor, FactorizationRecord};
use crate::graft::{Axis, FormField, GridChart};
use crate::group::{Endpoint, FreeWord, MonodromyAssignment, Perm, TangleCrossing, TangleDiagram};
use crate::homology::{Crossing, PlanarDiagram};
use crate::scalar::Scalar;
use crate::trisect::{
    BridgePoint, BridgeTrisectionRecord, Family, IntersectionForm, LatticeInput, SectorData, SectorLink, TorusArc,
    TorusDiagram,
};
use crate::verdict::Provenance;
use crate::Rational;

use super::text::{join, list, one, parse_document, Document, Reader};
use super::{Manifest, ParseError};

/// Every file format the tool reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Braid,
    Pd,
    Tangle,
    Monodromy,
    TorusDiagram,
    Trirec,
    Lattice,
    Grid,
    FormField,
    Factorization,
    Manifest,
}

impl Kind {
    pub const ALL: [Kind; 11] = [
        Kind::Braid,
        Kind::Pd,
        Kind::Tangle,
        Kind::Monodromy,
        Kind::TorusDiagram,
        Kind::Trirec,
        Kind::Lattice,
        Kind::Grid,
        Kind::FormField,
        Kind::Factorization,
        Kind::Manifest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Braid => "braid",
            Kind::Pd => "pd",
            Kind::Tangle => "tangle",
            Kind::Monodromy => "monodromy",
            Kind::TorusDiagram => "torusdiagram",
            Kind::Trirec => "trirec",
            Kind::Lattice => "lattice",
            Kind::Grid => "grid",
            Kind::FormField => "formfield",
            Kind::Factorization => "factorization",
            Kind::Manifest => "manifest",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A tangle diagram with the relation words to check against it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleFile {
    pub diagram: TangleDiagram,
    pub relations: Vec<FreeWord<String>>,
    /// half-twist count of the band this tangle models, if any
    pub twists: Option<i32>,
}

/// Lattice input together with how its form was written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFile {
    pub input: LatticeInput,
    pub form: FormSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    /// Orthogonal summands: integers (rank-one forms), `H`, `E8`, `-E8`.
    Summands(Vec<String>),
    Matrix,
}

impl FormSpec {
    pub fn build(tokens: &[String]) -> Result<IntersectionForm, String> {
        let mut acc: Option<IntersectionForm> = None;
        for t in tokens {
            let part = match t.as_str() {
                "H" => IntersectionForm::hyperbolic(1),
                "E8" => IntersectionForm::e8(1),
                "-E8" => IntersectionForm::e8(-1),
                other => IntersectionForm::diagonal(&[other.parse::<i64>().map_err(|_| format!("unknown summand {other}"))?]),
            };
            acc = Some(match acc {
                Some(a) => a.direct_sum(&part),
                None => part,
            });
        }
        acc.ok_or_else(|| "empty form".to_string())
    }
}

/// Any parsed input file.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Braid(BraidWord),
    Pd(PlanarDiagram),
    Tangle(TangleFile),
    Monodromy(MonodromyAssignment),
    TorusDiagram(TorusDiagram<Rational>),
    Trirec(BridgeTrisectionRecord),
    Lattice(LatticeFile),
    Grid(GridChart),
    FormField(FormField<f64>),
    Factorization(FactorizationRecord),
    Manifest(Manifest),
}

impl Input {
    pub fn kind(&self) -> Kind {
        match self {
            Input::Braid(_) => Kind::Braid,
            Input::Pd(_) => Kind::Pd,
            Input::Tangle(_) => Kind::Tangle,
            Input::Monodromy(_) => Kind::Monodromy,
            Input::TorusDiagram(_) => Kind::TorusDiagram,
            Input::Trirec(_) => Kind::Trirec,
            Input::Lattice(_) => Kind::Lattice,
            Input::Grid(_) => Kind::Grid,
            Input::FormField(_) => Kind::FormField,
            Input::Factorization(_) => Kind::Factorization,
            Input::Manifest(_) => Kind::Manifest,
        }
    }
}

/// Parses any supported file, dispatching on its header line.
pub fn parse_input(src: &str) -> Result<Input, ParseError> {
    let (doc, mut r) = parse_document(src)?;
    let kind = Kind::parse(&doc.kind).ok_or_else(|| ParseError::at(1, format!("unknown format {}", doc.kind)))?;
    let out = match kind {
        Kind::Braid => Input::Braid(read_braid(&mut r)?),
        Kind::Pd => Input::Pd(read_pd(&mut r)?),
        Kind::Tangle => Input::Tangle(read_tangle(&mut r)?),
        Kind::Monodromy => Input::Monodromy(read_monodromy(&mut r)?),
        Kind::TorusDiagram => Input::TorusDiagram(read_torus(&mut r)?.ok_or_else(|| ParseError::at(0, "no bridge points"))?),
        Kind::Trirec => Input::Trirec(read_trirec(&mut r)?),
        Kind::Lattice => Input::Lattice(read_lattice(&mut r)?),
        Kind::Grid => Input::Grid(read_grid(&mut r)?),
        Kind::FormField => Input::FormField(read_formfield(&mut r)?),
        Kind::Factorization => Input::Factorization(read_factorization(&mut r)?),
        Kind::Manifest => Input::Manifest(Manifest::read(&mut r)?),
    };
    r.finish()?;
    Ok(out)
}

/// Parses a file that must be of the given kind.
pub fn parse_kind(src: &str, kind: Kind) -> Result<Input, ParseError> {
    let input = parse_input(src)?;
    if input.kind() != kind {
        return Err(ParseError::at(1, format!("expected a {kind} file, got {}", input.kind())));
    }
    Ok(input)
}

/// Canonical text of a value.
pub fn emit(input: &Input) -> String {
    let mut d = Document::new(input.kind().name());
    match input {
        Input::Braid(b) => write_braid(&mut d, b),
        Input::Pd(p) => write_pd(&mut d, p),
        Input::Tangle(t) => write_tangle(&mut d, t),
        Input::Monodromy(m) => write_monodromy(&mut d, m),
        Input::TorusDiagram(t) => write_torus(&mut d, t),
        Input::Trirec(r) => write_trirec(&mut d, r),
        Input::Lattice(l) => write_lattice(&mut d, l),
        Input::Grid(g) => write_grid(&mut d, g),
        Input::FormField(f) => write_formfield(&mut d, f),
        Input::Factorization(f) => write_factorization(&mut d, f),
        Input::Manifest(m) => m.write(&mut d),
    }
    d.emit()
}

fn bad(line: usize, e: impl fmt::Display) -> ParseError {
    ParseError::at(line, e.to_string())
}

fn braid_word(strands: usize, letters: &str, line: usize) -> Result<BraidWord, ParseError> {
    let letters: Vec<i32> = list(letters, line)?;
    if let Some(&z) = letters.iter().find(|&&l| l == 0) {
        return Err(ParseError::at(line, format!("generator index {z} is illegal")));
    }
    BraidWord::new(strands, letters).map_err(|e| bad(line, e))
}

fn read_braid(r: &mut Reader) -> Result<BraidWord, ParseError> {
    let (s, ls) = r.req("strands")?;
    let (w, lw) = r.req("word")?;
    braid_word(one(&s, ls)?, &w, lw)
}

fn write_braid(d: &mut Document, b: &BraidWord) {
    d.push("strands", b.strands());
    d.push("word", join(b.letters()));
}

fn read_pd(r: &mut Reader) -> Result<PlanarDiagram, ParseError> {
    let (c, lc) = r.req("components")?;
    let mut crossings = Vec::new();
    for (v, line) in r.indexed("x") {
        let toks: Vec<&str> = v.split_whitespace().collect();
        let positive = match toks.first() {
            Some(&"+") => true,
            Some(&"-") => false,
            _ => return Err(ParseError::at(line, "crossing must start with + or -")),
        };
        let e: Vec<usize> = list(&toks[1..].join(" "), line)?;
        let edges: [usize; 4] = e.try_into().map_err(|_| ParseError::at(line, "crossing needs four edge labels"))?;
        crossings.push(Crossing { edges, positive });
    }
    PlanarDiagram::new(crossings, one(&c, lc)?).map_err(|e| bad(lc, e))
}

fn write_pd(d: &mut Document, p: &PlanarDiagram) {
    d.push("components", p.components());
    for (i, c) in p.crossings().iter().enumerate() {
        d.push(format!("x.{}", i + 1), format!("{} {}", if c.positive { "+" } else { "-" }, join(&c.edges)));
    }
}

fn word(v: &str, line: usize) -> Result<FreeWord<String>, ParseError> {
    FreeWord::parse(v).map_err(|e| bad(line, e))
}

fn read_tangle(r: &mut Reader) -> Result<TangleFile, ParseError> {
    let (a, _) = r.req("arcs")?;
    let arcs: Vec<String> = a.split_whitespace().map(str::to_string).collect();
    let mut crossings = Vec::new();
    for (v, line) in r.indexed("x") {
        let t: Vec<&str> = v.split_whitespace().collect();
        let [s, over, incoming, outgoing] = t[..] else {
            return Err(ParseError::at(line, "crossing is `sign over incoming outgoing`"));
        };
        let positive = match s {
            "+" => true,
            "-" => false,
            _ => return Err(ParseError::at(line, "crossing sign must be + or -")),
        };
        crossings.push(TangleCrossing {
            over: over.into(),
            incoming: incoming.into(),
            outgoing: outgoing.into(),
            positive,
        });
    }
    let mut endpoints = Vec::new();
    for (v, line) in r.indexed("endpoint") {
        let t: Vec<&str> = v.split_whitespace().collect();
        let [name, arc, exp] = t[..] else {
            return Err(ParseError::at(line, "endpoint is `name arc exponent`"));
        };
        let exp: i32 = one(exp, line)?;
        if exp.abs() != 1 {
            return Err(ParseError::at(line, "endpoint exponent must be 1 or -1"));
        }
        endpoints.push(Endpoint { name: name.into(), arc: arc.into(), exp });
    }
    let kill = r.opt("kill").map(|(v, _)| v.split_whitespace().map(str::to_string).collect()).unwrap_or_default();
    let longitude = match r.opt("longitude") {
        Some((v, l)) => Some(word(&v, l)?),
        None => None,
    };
    let relations = r.indexed("relation").into_iter().map(|(v, l)| word(&v, l)).collect::<Result<_, _>>()?;
    let twists = match r.opt("twists") {
        Some((v, l)) => Some(one(&v, l)?),
        None => None,
    };
    Ok(TangleFile { diagram: TangleDiagram { arcs, crossings, endpoints, kill, longitude }, relations, twists })
}

fn write_tangle(d: &mut Document, t: &TangleFile) {
    let g = &t.diagram;
    d.push("arcs", g.arcs.join(" "));
    for (i, c) in g.crossings.iter().enumerate() {
        let s = if c.positive { "+" } else { "-" };
        d.push(format!("x.{}", i + 1), format!("{s} {} {} {}", c.over, c.incoming, c.outgoing));
    }
    for (i, e) in g.endpoints.iter().enumerate() {
        d.push(format!("endpoint.{}", i + 1), format!("{} {} {}", e.name, e.arc, e.exp));
    }
    if !g.kill.is_empty() {
        d.push("kill", g.kill.join(" "));
    }
    if let Some(l) = &g.longitude {
        d.push("longitude", l);
    }
    for (i, w) in t.relations.iter().enumerate() {
        d.push(format!("relation.{}", i + 1), w);
    }
    if let Some(k) = t.twists {
        d.push("twists", k);
    }
}

fn read_monodromy(r: &mut Reader) -> Result<MonodromyAssignment, ParseError> {
    let (dg, ld) = r.req("degree")?;
    let degree: usize = one(&dg, ld)?;
    let mut images = BTreeMap::new();
    for (g, v, line) in r.named("image") {
        let p = Perm::from_images(&list::<usize>(&v, line)?).map_err(|e| bad(line, e))?;
        images.insert(g, p);
    }
    MonodromyAssignment::new(degree, images).map_err(|e| bad(ld, e))
}

fn write_monodromy(d: &mut Document, m: &MonodromyAssignment) {
    d.push("degree", m.degree);
    for (g, p) in &m.images {
        d.push(format!("image.{g}"), join(&p.images()));
    }
}

fn rational(t: &str, line: usize) -> Result<Rational, ParseError> {
    Rational::parse_scalar(t).ok_or_else(|| ParseError::at(line, format!("cannot read rational {t:?}")))
}

fn read_torus(r: &mut Reader) -> Result<Option<TorusDiagram<Rational>>, ParseError> {
    let pts = r.indexed("point");
    let arcs_raw = r.indexed("arc");
    if pts.is_empty() && arcs_raw.is_empty() {
        return Ok(None);
    }
    let mut points = Vec::new();
    for (v, line) in &pts {
        let t: Vec<&str> = v.split_whitespace().collect();
        let [x, y, s] = t[..] else {
            return Err(ParseError::at(*line, "point is `x y sign`"));
        };
        let sign = match s {
            "+" => 1,
            "-" => -1,
            _ => return Err(ParseError::at(*line, "point sign must be + or -")),
        };
        points.push(BridgePoint { x: rational(x, *line)?, y: rational(y, *line)?, sign });
    }
    let mut arcs = Vec::new();
    for (v, line) in &arcs_raw {
        let line = *line;
        let parts: Vec<&str> = v.split('|').map(str::trim).collect();
        let [head, poly, lifts] = parts[..] else {
            return Err(ParseError::at(line, "arc is `family from to | x y, ... | dx dy, ...`"));
        };
        let h: Vec<&str> = head.split_whitespace().collect();
        let [fam, from, to] = h[..] else {
            return Err(ParseError::at(line, "arc head is `family from to`"));
        };
        let family = Family::parse(fam).ok_or_else(|| ParseError::at(line, format!("unknown family {fam}")))?;
        let (from, to): (usize, usize) = (one(from, line)?, one(to, line)?);
        if from == 0 || to == 0 {
            return Err(ParseError::at(line, "bridge points are numbered from 1"));
        }
        let points = poly
            .split(',')
            .map(|p| {
                let c: Vec<&str> = p.split_whitespace().collect();
                match c[..] {
                    [x, y] => Ok((rational(x, line)?, rational(y, line)?)),
                    _ => Err(ParseError::at(line, "polyline vertex needs two coordinates")),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let lifts = if lifts.is_empty() {
            Vec::new()
        } else {
            lifts
                .split(',')
                .map(|p| match list::<i64>(p, line)?[..] {
                    [a, b] => Ok((a, b)),
                    _ => Err(ParseError::at(line, "lift needs two integers")),
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        arcs.push(TorusArc { family, points, lifts, from: from - 1, to: to - 1 });
    }
    TorusDiagram::new(points, arcs).map(Some).map_err(|e| bad(pts.first().map_or(0, |p| p.1), e))
}

fn write_torus(d: &mut Document, t: &TorusDiagram<Rational>) {
    for (i, p) in t.points().iter().enumerate() {
        d.push(format!("point.{}", i + 1), format!("{} {} {}", p.x, p.y, if p.sign > 0 { "+" } else { "-" }));
    }
    for (i, a) in t.arcs().iter().enumerate() {
        let poly: Vec<String> = a.points.iter().map(|(x, y)| format!("{x} {y}")).collect();
        let lifts: Vec<String> = a.lifts.iter().map(|(x, y)| format!("{x} {y}")).collect();
        d.push(
            format!("arc.{}", i + 1),
            format!("{} {} {} | {} | {}", a.family, a.from + 1, a.to + 1, poly.join(", "), lifts.join(", ")),
        );
    }
}

fn triple_opt(r: &mut Reader, key: &str) -> Result<[Option<i64>; 3], ParseError> {
    let Some((v, line)) = r.opt(key) else { return Ok([None; 3]) };
    let toks: Vec<&str> = v.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(ParseError::at(line, format!("{key} needs three entries")));
    }
    let mut out = [None; 3];
    for (o, t) in out.iter_mut().zip(toks) {
        if t != "?" {
            *o = Some(one(t, line)?);
        }
    }
    Ok(out)
}

fn read_trirec(r: &mut Reader) -> Result<BridgeTrisectionRecord, ParseError> {
    let (b, lb) = r.req("b")?;
    let (c, lc) = r.req("c")?;
    let c: [i64; 3] = list::<i64>(&c, lc)?.try_into().map_err(|_| ParseError::at(lc, "c needs three entries"))?;
    let w = triple_opt(r, "w")?;
    let a = triple_opt(r, "lk_self")?;
    let n = triple_opt(r, "lk_next")?;
    let mut sectors: [SectorData; 3] = Default::default();
    for (i, s) in sectors.iter_mut().enumerate() {
        s.w = w[i];
        s.lk_self = a[i];
        s.lk_next = n[i];
    }
    for (f, field) in crate::trisect::FIELD_NAMES.iter().enumerate() {
        if let Some((v, line)) = r.opt(&format!("provenance.{field}")) {
            let toks: Vec<&str> = v.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(ParseError::at(line, "provenance needs three entries"));
            }
            for (s, t) in sectors.iter_mut().zip(toks) {
                s.provenance[f] = Provenance::parse(t).ok_or_else(|| ParseError::at(line, format!("unknown provenance {t}")))?;
            }
        }
    }
    for (i, s) in sectors.iter_mut().enumerate() {
        if let Some((v, line)) = r.opt(&format!("braid.{}", i + 1)) {
            let Some((n, letters)) = v.split_once(':') else {
                return Err(ParseError::at(line, "braid is `strands : letters`"));
            };
            s.braid = Some(braid_word(one(n.trim(), line)?, letters, line)?);
        }
        if let Some((v, line)) = r.opt(&format!("link.{}", i + 1)) {
            let parts: Vec<&str> = v.split(':').collect();
            let [n, letters, roles] = parts[..] else {
                return Err(ParseError::at(line, "link is `strands : letters : roles`"));
            };
            let roles: Vec<char> = roles
                .split_whitespace()
                .map(|t| {
                    let mut ch = t.chars();
                    match (ch.next(), ch.next()) {
                        (Some(c), None) => Ok(c),
                        _ => Err(ParseError::at(line, format!("role {t:?} is not one character"))),
                    }
                })
                .collect::<Result<_, _>>()?;
            s.link = Some(SectorLink { braid: braid_word(one(n.trim(), line)?, letters, line)?, roles });
        }
    }
    let diagram = read_torus(r)?;
    let mut rec = BridgeTrisectionRecord::new(one(&b, lb)?, c, sectors).map_err(|e| bad(lb, e))?;
    if let Some(d) = diagram {
        rec = rec.with_diagram(d).map_err(|e| bad(lb, e))?;
    }
    if let Some(s) = rec.sectors.iter().filter_map(|s| s.link.as_ref()).find_map(|l| l.integers().err()) {
        return Err(bad(lb, s));
    }
    Ok(rec)
}

fn write_trirec(d: &mut Document, r: &BridgeTrisectionRecord) {
    d.push("b", r.b);
    d.push("c", join(&r.c));
    let triple = |f: fn(&SectorData) -> Option<i64>| {
        r.sectors.iter().map(|s| f(s).map_or("?".to_string(), |v| v.to_string())).collect::<Vec<_>>().join(" ")
    };
    d.push("w", triple(|s| s.w));
    d.push("lk_self", triple(|s| s.lk_self));
    d.push("lk_next", triple(|s| s.lk_next));
    for (f, field) in crate::trisect::FIELD_NAMES.iter().enumerate() {
        let p: Vec<&str> = r.sectors.iter().map(|s| s.provenance[f].as_str()).collect();
        d.push(format!("provenance.{field}"), p.join(" "));
    }
    for (i, s) in r.sectors.iter().enumerate() {
        if let Some(b) = &s.braid {
            d.push(format!("braid.{}", i + 1), format!("{} : {}", b.strands(), join(b.letters())).trim_end().to_string());
        }
        if let Some(l) = &s.link {
            let roles: Vec<String> = l.roles.iter().map(|c| c.to_string()).collect();
            d.push(
                format!("link.{}", i + 1),
                format!("{} : {} : {}", l.braid.strands(), join(l.braid.letters()), roles.join(" ")),
            );
        }
    }
    if let Some(t) = &r.diagram {
        write_torus(d, t);
    }
}

fn read_lattice(r: &mut Reader) -> Result<LatticeFile, ParseError> {
    let (form, written) = match (r.opt("form"), r.opt("matrix")) {
        (Some((v, line)), None) => {
            let toks: Vec<String> = v.split_whitespace().map(str::to_string).collect();
            (FormSpec::build(&toks).map_err(|e| bad(line, e))?, FormSpec::Summands(toks))
        }
        (None, Some((v, line))) => {
            let rows = v.split(';').map(|row| list::<i64>(row, line)).collect::<Result<Vec<_>, _>>()?;
            (IntersectionForm::new(rows).map_err(|e| bad(line, e))?, FormSpec::Matrix)
        }
        _ => return Err(ParseError::at(0, "give exactly one of form, matrix")),
    };
    let (chi, lchi) = r.req("chi")?;
    let (sigma, ls) = r.req("sigma")?;
    let rank = form.rank();
    let vec_of = |v: &str, line: usize| -> Result<Vec<i64>, ParseError> {
        let x: Vec<i64> = list(v, line)?;
        if x.len() != rank {
            return Err(ParseError::at(line, format!("vector has {} entries, form has rank {rank}", x.len())));
        }
        Ok(x)
    };
    let classes = r.indexed("class").iter().map(|(v, l)| vec_of(v, *l)).collect::<Result<Vec<_>, _>>()?;
    let cands = r.indexed("candidate");
    let mut input = LatticeInput::new(form, one(&chi, lchi)?, one(&sigma, ls)?, classes);
    if !cands.is_empty() {
        input.candidates = Some(cands.iter().map(|(v, l)| vec_of(v, *l)).collect::<Result<_, _>>()?);
    }
    if let Some((v, l)) = r.opt("bound") {
        input.bound = one(&v, l)?;
        if input.bound < 0 {
            return Err(ParseError::at(l, "bound must be nonnegative"));
        }
    }
    if let Some((v, l)) = r.opt("sigma_coefficient") {
        input.sigma_coefficient = one(&v, l)?;
        if !matches!(input.sigma_coefficient, 2 | 3) {
            return Err(ParseError::at(l, "sigma_coefficient must be 2 or 3"));
        }
    }
    Ok(LatticeFile { input, form: written })
}

fn write_lattice(d: &mut Document, l: &LatticeFile) {
    let inp = &l.input;
    match &l.form {
        FormSpec::Summands(t) => d.push("form", t.join(" ")),
        FormSpec::Matrix => {
            let rows: Vec<String> = inp.form.matrix().iter().map(|r| join(r)).collect();
            d.push("matrix", rows.join("; "));
        }
    }
    d.push("chi", inp.chi);
    d.push("sigma", inp.sigma);
    for (i, c) in inp.classes.iter().enumerate() {
        d.push(format!("class.{}", i + 1), join(c));
    }
    for (i, c) in inp.candidates.iter().flatten().enumerate() {
        d.push(format!("candidate.{}", i + 1), join(c));
    }
    d.push("bound", inp.bound);
    d.push("sigma_coefficient", inp.sigma_coefficient);
}

fn read_grid(r: &mut Reader) -> Result<GridChart, ParseError> {
    let axes = r.indexed("axis");
    let first = axes.first().map_or(0, |a| a.1);
    let mut out = Vec::new();
    for (v, line) in axes {
        let t: Vec<&str> = v.split_whitespace().collect();
        let [name, n, lo, hi, kind] = t[..] else {
            return Err(ParseError::at(line, "axis is `name samples lo hi periodic|open`"));
        };
        let periodic = match kind {
            "periodic" => true,
            "open" => false,
            _ => return Err(ParseError::at(line, "axis kind must be periodic or open")),
        };
        out.push(Axis::new(name, one(n, line)?, one(lo, line)?, one(hi, line)?, periodic));
    }
    GridChart::new(out).map_err(|e| bad(first, e))
}

fn write_grid(d: &mut Document, g: &GridChart) {
    for (i, a) in g.axes().iter().enumerate() {
        let kind = if a.periodic { "periodic" } else { "open" };
        d.push(format!("axis.{}", i + 1), format!("{} {} {} {} {kind}", a.name, a.samples, a.lo, a.hi));
    }
}

fn read_formfield(r: &mut Reader) -> Result<FormField<f64>, ParseError> {
    let chart = read_grid(r)?;
    let (dg, ld) = r.req("degree")?;
    let comps = r.indexed("component");
    let mut data = Vec::new();
    for (v, line) in &comps {
        let vals: Vec<f64> = list(v, *line)?;
        if vals.len() != chart.len() {
            return Err(ParseError::at(*line, format!("component has {} samples, grid has {}", vals.len(), chart.len())));
        }
        if vals.iter().any(|x| !x.is_finite()) {
            return Err(ParseError::at(*line, "non-finite sample"));
        }
        data.push(vals);
    }
    FormField::from_components(&chart, one(&dg, ld)?, data).map_err(|e| bad(ld, e))
}

fn write_formfield(d: &mut Document, f: &FormField<f64>) {
    write_grid(d, f.chart());
    d.push("degree", f.degree());
    for (i, c) in f.components().iter().enumerate() {
        d.push(format!("component.{}", i + 1), join(c));
    }
}

fn read_factorization(r: &mut Reader) -> Result<FactorizationRecord, ParseError> {
    let (dg, ld) = r.req("degree")?;
    let degree: usize = one(&dg, ld)?;
    let mut factors = Vec::new();
    for (v, line) in r.indexed("factor") {
        let Some((e, g)) = v.split_once(':') else {
            return Err(ParseError::at(line, "factor is `exponent : conjugator letters`"));
        };
        factors.push(Factor::new(braid_word(degree, g, line)?, one(e.trim(), line)?));
    }
    FactorizationRecord::new(degree, factors).map_err(|e| bad(ld, e))
}

fn write_factorization(d: &mut Document, f: &FactorizationRecord) {
    d.push("degree", f.degree);
    for (i, x) in f.factors.iter().enumerate() {
        d.push(format!("factor.{}", i + 1), format!("{} : {}", x.exponent, join(x.conjugator.letters())).trim_end().to_string());
    }
}
