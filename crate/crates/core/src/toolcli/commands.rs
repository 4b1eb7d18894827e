use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use crate::braid::{closure_pd, transverse_self_linking, verify_factorization_with_limit, BraidError, DEFAULT_WORD_LIMIT};
use crate::graft::{
    collar_example, compatibility_check, graft_margin, saddle_example, tune_graft, verify_fs_identities, Axis,
    GraftConfig, GraftError, GraftInput, Singularity, MAX_TUNE_STEPS,
};
use crate::group::{
    boundary_relation_orders, half_twist_relations, local_model, rewrite_relation, wirtinger, FreeWord, GroupError,
    TangleDiagram, TABLE_EXPONENTS,
};
use crate::homology::{
    kauffman_bracket_with_budget, khovanov_with_budget, s_invariant, unlink_certificate_with_budget, CoefficientField,
    HomologyError, PlanarDiagram, KHOVANOV_BUDGET,
};
use crate::trisect::{adjunction_verdict, lattice_obstructions, AdjunctionMode, BridgeTrisectionRecord};
use crate::verdict::Status;

use super::corpus::corpus_dir;
use super::formats::{emit, parse_input, Input, Kind};
use super::report::{exit_code, Report, EXIT_BUDGET, EXIT_INPUT};
use super::text::{one, Document, Reader};
use super::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    VerifyFactorization,
    SInvariant,
    Sl,
    Kh,
    UnlinkCert,
    TrisectCheck,
    Adjunction,
    Whitney,
    Lattice,
    GraftVerify,
    FsCheck,
    RelationsTable,
    Roundtrip,
}

impl Command {
    pub const ALL: [Command; 13] = [
        Command::VerifyFactorization,
        Command::SInvariant,
        Command::Sl,
        Command::Kh,
        Command::UnlinkCert,
        Command::TrisectCheck,
        Command::Adjunction,
        Command::Whitney,
        Command::Lattice,
        Command::GraftVerify,
        Command::FsCheck,
        Command::RelationsTable,
        Command::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyFactorization => "verify-factorization",
            Command::SInvariant => "s-invariant",
            Command::Sl => "sl",
            Command::Kh => "kh",
            Command::UnlinkCert => "unlink-cert",
            Command::TrisectCheck => "trisect-check",
            Command::Adjunction => "adjunction",
            Command::Whitney => "whitney",
            Command::Lattice => "lattice",
            Command::GraftVerify => "graft-verify",
            Command::FsCheck => "fs-check",
            Command::RelationsTable => "relations-table",
            Command::Roundtrip => "roundtrip",
        }
    }

    pub fn parse(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Command-specific parameters accepted as `param.<name>`.
pub const PARAM_KEYS: [&str; 8] = ["chi", "c1k", "k2", "mode", "n", "example", "field", "singularities"];

pub const GRID_RANGE: (usize, usize) = (8, 256);
pub const BUDGET_RANGE: (usize, usize) = (1, 64);

/// A fully specified invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub command: Command,
    pub inputs: Vec<String>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub budget: Option<usize>,
    pub sigma_coefficient: Option<i64>,
    pub output: Option<String>,
    pub params: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(command: Command) -> Self {
        Manifest {
            command,
            inputs: Vec::new(),
            grid: None,
            tol: None,
            budget: None,
            sigma_coefficient: None,
            output: None,
            params: BTreeMap::new(),
        }
    }

    pub fn input(mut self, path: impl Into<String>) -> Self {
        self.inputs.push(path.into());
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Range checks on the numeric options and parameter names.
    pub fn validate(&self) -> Result<(), String> {
        if let Some(g) = self.grid {
            if !(GRID_RANGE.0..=GRID_RANGE.1).contains(&g) {
                return Err(format!("grid {g} outside {}..={}", GRID_RANGE.0, GRID_RANGE.1));
            }
        }
        if let Some(b) = self.budget {
            if !(BUDGET_RANGE.0..=BUDGET_RANGE.1).contains(&b) {
                return Err(format!("budget {b} outside {}..={}", BUDGET_RANGE.0, BUDGET_RANGE.1));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t <= 0.1) {
                return Err(format!("tol {t} outside (0, 0.1]"));
            }
        }
        if let Some(s) = self.sigma_coefficient {
            if !matches!(s, 2 | 3) {
                return Err(format!("sigma coefficient {s} is not 2 or 3"));
            }
        }
        if let Some(k) = self.params.keys().find(|k| !PARAM_KEYS.contains(&k.as_str())) {
            return Err(format!("unknown parameter {k}"));
        }
        Ok(())
    }

    pub(super) fn read(r: &mut Reader) -> Result<Manifest, ParseError> {
        let (c, lc) = r.req("command")?;
        let command = Command::parse(&c).ok_or_else(|| ParseError::at(lc, format!("unknown command {c}")))?;
        let mut m = Manifest::new(command);
        m.inputs = r.indexed("input").into_iter().map(|(v, _)| v).collect();
        let mut first_line = lc;
        if let Some((v, l)) = r.opt("grid") {
            m.grid = Some(one(&v, l)?);
            first_line = l;
        }
        if let Some((v, l)) = r.opt("tol") {
            m.tol = Some(one(&v, l)?);
            first_line = l;
        }
        if let Some((v, l)) = r.opt("budget") {
            m.budget = Some(one(&v, l)?);
            first_line = l;
        }
        if let Some((v, l)) = r.opt("sigma_coefficient") {
            m.sigma_coefficient = Some(one(&v, l)?);
            first_line = l;
        }
        m.output = r.opt("output").map(|(v, _)| v);
        for (k, v, l) in r.named("param") {
            if !PARAM_KEYS.contains(&k.as_str()) {
                return Err(ParseError::at(l, format!("unknown parameter {k}")));
            }
            m.params.insert(k, v);
        }
        m.validate().map_err(|e| ParseError::at(first_line, e))?;
        Ok(m)
    }

    pub(super) fn write(&self, d: &mut Document) {
        d.push("command", self.command);
        for (i, p) in self.inputs.iter().enumerate() {
            d.push(format!("input.{}", i + 1), p);
        }
        if let Some(g) = self.grid {
            d.push("grid", g);
        }
        if let Some(t) = self.tol {
            d.push("tol", t);
        }
        if let Some(b) = self.budget {
            d.push("budget", b);
        }
        if let Some(s) = self.sigma_coefficient {
            d.push("sigma_coefficient", s);
        }
        if let Some(o) = &self.output {
            d.push("output", o);
        }
        for (k, v) in &self.params {
            d.push(format!("param.{k}"), v);
        }
    }
}

/// Exit code and report of one command run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Report,
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Budget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::WordLimit { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<GraftError> for Failure {
    fn from(e: GraftError) -> Self {
        match e {
            GraftError::SearchExhausted { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn input_err(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

/// Resolves `corpus:<name>` against the corpus directory and other paths against `base`.
pub fn resolve(path: &str, base: &Path) -> PathBuf {
    match path.strip_prefix("corpus:") {
        Some(name) => corpus_dir().join(name),
        None => base.join(path),
    }
}

struct Run<'a> {
    m: &'a Manifest,
    base: &'a Path,
    report: Report,
}

impl Run<'_> {
    fn load(&self, i: usize) -> Result<(Input, String), Failure> {
        let p = self
            .m
            .inputs
            .get(i)
            .ok_or_else(|| Failure::Input(format!("{} needs input {}", self.m.command, i + 1)))?;
        let path = resolve(p, self.base);
        let raw = std::fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let v = parse_input(&raw).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        Ok((v, raw))
    }

    fn load_kind(&self, i: usize, kinds: &[Kind]) -> Result<Input, Failure> {
        let (v, _) = self.load(i)?;
        if !kinds.contains(&v.kind()) {
            let names: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
            return Err(Failure::Input(format!("input {} must be one of {}", i + 1, names.join(", "))));
        }
        Ok(v)
    }

    fn record(&self) -> Result<BridgeTrisectionRecord, Failure> {
        match self.load_kind(0, &[Kind::Trirec])? {
            Input::Trirec(r) => Ok(r),
            _ => unreachable!("kind checked"),
        }
    }

    fn diagram(&self) -> Result<PlanarDiagram, Failure> {
        match self.load_kind(0, &[Kind::Braid, Kind::Pd])? {
            Input::Braid(b) => Ok(closure_pd(&b)),
            Input::Pd(p) => Ok(p),
            _ => unreachable!("kind checked"),
        }
    }

    fn param<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, Failure> {
        match self.m.params.get(key) {
            Some(v) => v.trim().parse().map(Some).map_err(|_| Failure::Input(format!("cannot read parameter {key}={v}"))),
            None => Ok(None),
        }
    }

    fn budget(&self) -> usize {
        self.m.budget.unwrap_or(KHOVANOV_BUDGET)
    }

    fn dispatch(&mut self) -> Result<Status, Failure> {
        match self.m.command {
            Command::VerifyFactorization => self.verify_factorization(),
            Command::SInvariant => self.s_invariant(),
            Command::Sl => self.sl(),
            Command::Kh => self.kh(),
            Command::UnlinkCert => self.unlink_cert(),
            Command::TrisectCheck => self.trisect_check(),
            Command::Adjunction => self.adjunction(),
            Command::Whitney => self.whitney(),
            Command::Lattice => self.lattice(),
            Command::GraftVerify => self.graft_verify(),
            Command::FsCheck => self.fs_check(),
            Command::RelationsTable => self.relations_table(),
            Command::Roundtrip => self.roundtrip(),
        }
    }

    fn verify_factorization(&mut self) -> Result<Status, Failure> {
        let Input::Factorization(f) = self.load_kind(0, &[Kind::Factorization])? else { unreachable!() };
        let v = verify_factorization_with_limit(&f, DEFAULT_WORD_LIMIT)?;
        self.report.set("degree", f.degree);
        self.report.set("factors", f.factors.len());
        self.report.verdict("factorization", &v);
        Ok(v.status)
    }

    fn s_invariant(&mut self) -> Result<Status, Failure> {
        let d = self.diagram()?;
        let s = s_invariant(&d, self.budget())?;
        self.report.say(format!("s = {s}"));
        self.report.set("s", s);
        Ok(Status::Holds)
    }

    fn sl(&mut self) -> Result<Status, Failure> {
        let Input::Braid(b) = self.load_kind(0, &[Kind::Braid])? else { unreachable!() };
        let sl = transverse_self_linking(&b);
        self.report.say(format!("{sl}"));
        self.report.set("sl", sl);
        self.report.set("writhe", b.exponent_sum());
        self.report.set("strands", b.strands());
        Ok(Status::Holds)
    }

    fn kh(&mut self) -> Result<Status, Failure> {
        let d = self.diagram()?;
        let field = match self.m.params.get("field").map(String::as_str) {
            None | Some("q") | Some("Q") => CoefficientField::Rationals,
            Some("2") | Some("f2") | Some("F2") => CoefficientField::Two,
            Some(other) => return Err(Failure::Input(format!("unknown field {other}"))),
        };
        let kh = khovanov_with_budget(&d, field, self.budget())?;
        let bracket = kauffman_bracket_with_budget(&d, self.budget())?;
        self.report.set("field", field.name());
        for (&(i, j), &r) in &kh.ranks {
            self.report.say(format!("Kh^{{{i},{j}}} rank {r}"));
            self.report.set(format!("rank.{i}.{j}"), r);
        }
        self.report.set("total_rank", kh.total());
        let ok = kh.euler_characteristic() == bracket;
        self.report.set("euler_matches_bracket", ok);
        Ok(if ok { Status::Holds } else { Status::Violated })
    }

    fn unlink_cert(&mut self) -> Result<Status, Failure> {
        let d = self.diagram()?;
        let v = unlink_certificate_with_budget(&d, self.budget());
        if v.status == Status::Error {
            if let Some(r) = &v.reason {
                if r.contains("exceed the budget") {
                    return Err(Failure::Budget(r.clone()));
                }
            }
        }
        self.report.verdict("unlink", &v);
        Ok(v.status)
    }

    fn trisect_check(&mut self) -> Result<Status, Failure> {
        let rec = self.record()?;
        let chi = rec.euler_characteristic();
        self.report.say(format!("b = {}, c = {:?}", rec.b, rec.c));
        self.report.set("b", rec.b);
        self.report.set("chi", chi);
        let c1 = rec.c1_pairing().map_err(input_err)?;
        let k2 = rec.self_intersection().map_err(input_err)?;
        self.report.say(format!("euler characteristic {chi}, c1 pairing {c1}, self-intersection {k2}"));
        self.report.set("c1k", c1);
        self.report.set("k2", k2);
        for lambda in 1..=3 {
            let (sl, _) = rec.sector_self_linking(lambda).map_err(input_err)?;
            self.report.set(format!("sl{lambda}"), sl);
        }
        if let Some(d) = &rec.diagram {
            let area = d.symplectic_area().map_err(input_err)?;
            let longitudes: i64 = (0..d.arcs().len()).map(|a| d.longitude_exponent(a)).sum();
            self.report.say(format!("diagram area {area}, longitude count {longitudes}"));
            self.report.set("area", &area);
            self.report.set("longitudes", longitudes);
            self.report.set("transverse", d.is_transverse());
        }
        let total = rec.total_self_linking_identity();
        self.report.verdict("total_sl", &total);
        let mut status = total.status;
        if rec.sectors.iter().any(|s| s.link.is_some()) {
            let links = rec.link_consistency();
            self.report.verdict("links", &links);
            if status.is_positive() && !links.status.is_positive() {
                status = links.status;
            }
        }
        Ok(status)
    }

    fn adjunction(&mut self) -> Result<Status, Failure> {
        let mode = match self.m.params.get("mode").map(String::as_str) {
            None | Some("standard") => AdjunctionMode::Standard,
            Some("zero-area") => AdjunctionMode::ZeroArea,
            Some(other) => return Err(Failure::Input(format!("unknown adjunction mode {other}"))),
        };
        let (chi, c1k, k2) = if self.m.inputs.is_empty() {
            let need = |k: &str| -> Result<i64, Failure> {
                self.param::<i64>(k)?.ok_or_else(|| Failure::Input(format!("adjunction needs --{k} or a record")))
            };
            (need("chi")?, need("c1k")?, need("k2")?)
        } else {
            let rec = self.record()?;
            (
                rec.euler_characteristic(),
                rec.c1_pairing().map_err(input_err)?,
                rec.self_intersection().map_err(input_err)?,
            )
        };
        self.report.set("chi", chi);
        self.report.set("c1k", c1k);
        self.report.set("k2", k2);
        let v = adjunction_verdict(chi, c1k, k2, mode);
        self.report.verdict("adjunction", &v);
        Ok(v.status)
    }

    fn whitney(&mut self) -> Result<Status, Failure> {
        let rec = self.record()?;
        let n: i64 = self.param("n")?.unwrap_or(0);
        let (chi_f, sl_l, v) = rec.whitney_band_bookkeeping(n).map_err(input_err)?;
        self.report.set("n", n);
        self.report.set("chi_f", chi_f);
        self.report.set("sl_l", sl_l);
        self.report.verdict("slice_bennequin", &v);
        Ok(v.status)
    }

    fn lattice(&mut self) -> Result<Status, Failure> {
        let Input::Lattice(mut l) = self.load_kind(0, &[Kind::Lattice])? else { unreachable!() };
        if let Some(s) = self.m.sigma_coefficient {
            l.input.sigma_coefficient = s;
        }
        let rep = lattice_obstructions(&l.input).map_err(input_err)?;
        self.report.set("target", rep.target);
        self.report.set("candidates", rep.candidates.len());
        self.report.say(format!("square target {}, {} candidate classes", rep.target, rep.candidates.len()));
        for (i, c) in rep.candidates.iter().enumerate() {
            let shown: Vec<String> = c.c.iter().map(|x| x.to_string()).collect();
            self.report.set(format!("candidate.{}", i + 1), shown.join(" "));
        }
        for k in 0..l.input.classes.len() {
            let ruled = rep.sphere_ruled_out_for_all(k);
            let genus = rep.min_genus_for_all(k);
            self.report.say(format!(
                "class {}: sphere ruled out for every candidate: {ruled}; genus bound {}",
                k + 1,
                genus.map_or("none".to_string(), |g| g.to_string())
            ));
            self.report.set(format!("class.{}.sphere_ruled_out", k + 1), ruled);
            if let Some(g) = genus {
                self.report.set(format!("class.{}.min_genus", k + 1), g);
            }
            for (i, c) in rep.candidates.iter().enumerate() {
                let b = &c.classes[k];
                self.report.set(format!("class.{}.candidate.{}.bound", k + 1, i + 1), b.bound);
                self.report.set(format!("class.{}.candidate.{}.sphere_ruled_out", k + 1, i + 1), b.sphere_ruled_out);
            }
        }
        for (i, w) in rep.warnings.iter().enumerate() {
            self.report.say(format!("warning: {w}"));
            self.report.set(format!("warning.{i}"), w);
        }
        Ok(if rep.candidates.is_empty() { Status::Refuted } else { Status::Consistent })
    }

    fn graft_verify(&mut self) -> Result<Status, Failure> {
        let grid = self.m.grid.unwrap_or(32);
        let budget = self.m.budget.unwrap_or(MAX_TUNE_STEPS);
        let (input, refined, start) = if self.m.inputs.is_empty() {
            let example = self.m.params.get("example").map_or("collar", String::as_str);
            let (a, b) = match example {
                "collar" => (collar_example::<f64>(grid)?, collar_example::<f64>(2 * grid)?),
                "saddle" => (saddle_example::<f64>(grid)?, saddle_example::<f64>(2 * grid)?),
                other => return Err(Failure::Input(format!("unknown example {other}"))),
            };
            let mut start = GraftConfig::for_chart(a.chart());
            if example == "saddle" {
                start.delta = 0.2;
            }
            self.report.set("example", example);
            (a, Some(b), start)
        } else {
            let Input::FormField(b1) = self.load_kind(0, &[Kind::FormField])? else { unreachable!() };
            let Input::FormField(b2) = self.load_kind(1, &[Kind::FormField])? else { unreachable!() };
            let sings = parse_singularities(self.m.params.get("singularities").map_or("", String::as_str))?;
            let tol = self.m.tol.unwrap_or(1e-9);
            let compat = compatibility_check(&b1, &b2, &sings, tol);
            self.report.verdict("compatibility", &compat);
            if !compat.status.is_positive() {
                return Ok(compat.status);
            }
            let t = Axis::new("t", grid, -1.25, 1.25, false);
            let input = GraftInput::from_surface(&b1, &b2, t, sings)?;
            let start = GraftConfig::for_chart(input.chart());
            (input, None, start)
        };
        let tuned = tune_graft(&input, start, budget)?;
        let c = tuned.config;
        self.report.say(format!(
            "margin {:e} at epsilon {}, delta {}, epsilon0 {} after {} evaluations",
            tuned.report.margin,
            c.epsilon,
            c.delta,
            c.epsilon0,
            tuned.log.len()
        ));
        self.report.set("grid", grid);
        self.report.set("epsilon", c.epsilon);
        self.report.set("delta", c.delta);
        self.report.set("epsilon0", c.epsilon0);
        self.report.set("bump_radius", c.bump_radius);
        self.report.set("evaluations", tuned.log.len());
        self.report.set("margin", format!("{:e}", tuned.report.margin));
        self.report.set("halved_epsilon_margin", format!("{:e}", tuned.halved_epsilon_margin));
        let mut ok = tuned.report.margin > 0.0 && tuned.halved_epsilon_margin > 0.0;
        if let Some(fine) = refined {
            let m = graft_margin(&fine, &c)?.margin;
            let drift = (m - tuned.report.margin).abs() / m.abs().max(tuned.report.margin.abs());
            self.report.say(format!("doubled grid margin {m:e}, relative drift {drift:e}"));
            self.report.set("refined_margin", format!("{m:e}"));
            self.report.set("refined_drift", format!("{drift:e}"));
            ok &= m > 0.0 && drift < 0.1;
        }
        Ok(if ok { Status::Holds } else { Status::Violated })
    }

    fn fs_check(&mut self) -> Result<Status, Failure> {
        let grid = self.m.grid.unwrap_or(64);
        let tol = self.m.tol.unwrap_or(1e-8);
        let r = verify_fs_identities(grid)?;
        self.report.say(format!(
            "identity residual {:e}, derivative agreement {:e}, derivative residual {:e}, boundary margin {:e}",
            r.identity_residual, r.derivative_agreement, r.derivative_residual, r.boundary.margin
        ));
        self.report.set("grid", grid);
        self.report.set("tol", tol);
        self.report.set("identity_residual", format!("{:e}", r.identity_residual));
        self.report.set("derivative_agreement", format!("{:e}", r.derivative_agreement));
        self.report.set("derivative_residual", format!("{:e}", r.derivative_residual));
        self.report.set("boundary_margin", format!("{:e}", r.boundary.margin));
        let ok = r.identity_residual < tol && r.derivative_agreement < tol && r.boundary.margin > 0.0;
        Ok(if ok { Status::Holds } else { Status::Violated })
    }

    fn relations_table(&mut self) -> Result<Status, Failure> {
        let mut trivial = 0;
        let mut total = 0;
        let mut check = |label: String, words: &[FreeWord<String>], d: &TangleDiagram, report: &mut Report| -> Result<(), Failure> {
            let pres = wirtinger(d).map_err(input_err)?;
            for (i, w) in words.iter().enumerate() {
                total += 1;
                let key = format!("{label}.relation.{}", i + 1);
                match rewrite_relation(w, &pres) {
                    Ok(rewritten) => {
                        let ok = rewritten.is_empty();
                        trivial += ok as usize;
                        report.say(format!("{label} relation {}: {w} -> {rewritten}", i + 1));
                        report.set(&key, if ok { "trivial" } else { "nontrivial" });
                        report.set(format!("{key}.reduced"), &rewritten);
                    }
                    Err(GroupError::Cyclic(arc)) => {
                        report.say(format!("{label} relation {}: {w} undecided, arc {arc} has no forward rule", i + 1));
                        report.set(&key, "undecided");
                    }
                    Err(e) => return Err(input_err(e)),
                }
            }
            if let [r1, r2] = words {
                let orders = boundary_relation_orders(r1, r2).len();
                if orders == 0 {
                    report.say(format!("{label}: no boundary order of the four loops kills both words"));
                }
                report.set(format!("{label}.boundary_orders"), orders);
            }
            Ok(())
        };
        if self.m.inputs.is_empty() {
            for k in TABLE_EXPONENTS {
                let (r1, r2) = half_twist_relations(k).map_err(input_err)?;
                let d = local_model(k).and_then(|m| m.diagram()).map_err(input_err)?;
                check(format!("row{k}"), &[r1, r2], &d, &mut self.report)?;
            }
        } else {
            for i in 0..self.m.inputs.len() {
                let Input::Tangle(t) = self.load_kind(i, &[Kind::Tangle])? else { unreachable!() };
                check(format!("input{}", i + 1), &t.relations, &t.diagram, &mut self.report)?;
            }
        }
        self.report.set("trivial", trivial);
        self.report.set("total", total);
        Ok(if trivial == total { Status::Holds } else { Status::Violated })
    }

    fn roundtrip(&mut self) -> Result<Status, Failure> {
        let mut ok = true;
        for i in 0..self.m.inputs.len() {
            let (v, raw) = self.load(i)?;
            let same = emit(&v) == raw;
            ok &= same;
            self.report.set(format!("input.{}.kind", i + 1), v.kind());
            self.report.set(format!("input.{}.identical", i + 1), same);
        }
        if self.m.inputs.is_empty() {
            return Err(Failure::Input("roundtrip needs at least one input".into()));
        }
        Ok(if ok { Status::Holds } else { Status::Violated })
    }
}

fn parse_singularities(s: &str) -> Result<Vec<Singularity>, Failure> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let t: Vec<&str> = p.split_whitespace().collect();
            let [x, y, sign] = t[..] else {
                return Err(Failure::Input(format!("singularity {p:?} is not `x y sign`")));
            };
            let num = |v: &str| v.parse::<f64>().map_err(|_| Failure::Input(format!("cannot read {v:?}")));
            let sign: i8 = sign.parse().map_err(|_| Failure::Input(format!("cannot read sign {sign:?}")))?;
            if sign.abs() != 1 {
                return Err(Failure::Input("singularity sign must be 1 or -1".into()));
            }
            Ok(Singularity::new(num(x)?, num(y)?, sign))
        })
        .collect()
}

/// Runs a manifest. Relative input paths resolve against `base`.
pub fn run_command(m: &Manifest, base: &Path) -> Outcome {
    let mut run = Run { m, base, report: Report::new(m.command.name()) };
    run.report.set("command", m.command);
    for (i, p) in m.inputs.iter().enumerate() {
        run.report.set(format!("input.{}", i + 1), p);
    }
    let result = match m.validate() {
        Ok(()) => run.dispatch(),
        Err(e) => Err(Failure::Input(e)),
    };
    let mut report = run.report;
    let code = match result {
        Ok(status) => {
            report.say(format!("result: {status}"));
            report.set("status", status);
            exit_code(status)
        }
        Err(Failure::Input(reason)) => {
            report.say(format!("error: {reason}"));
            report.set("status", Status::Error);
            report.set("reason", reason);
            EXIT_INPUT
        }
        Err(Failure::Budget(reason)) => {
            report.say(format!("budget exceeded: {reason}"));
            report.set("status", Status::Error);
            report.set("reason", format!("budget: {reason}"));
            EXIT_BUDGET
        }
    };
    Outcome { code, report }
}

