//! Acceptance run: one line per criterion with its measured values.
//!
//! Exits nonzero when a criterion fails, except for criteria listed in
//! `KNOWN_FAILURES`, whose failure is reported but expected.

use std::collections::BTreeSet;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trisect_core::braid::{artin_equal, closure_pd, full_twist, verify_factorization, BraidWord, Factor, FactorizationRecord};
use trisect_core::graft::{
    collar_example, contact_margin_where, graft_margin, grafted_form, saddle_example, tune_graft, verify_fs_identities,
    GraftConfig, MAX_TUNE_STEPS,
};
use trisect_core::group::{
    boundary_relation_orders, expand_shifted, half_twist_relations, local_model, longitude_normal_form, verify_relation_trivial, wirtinger,
    FreeWord, Letter, TABLE_EXPONENTS,
};
use trisect_core::homology::{
    kauffman_bracket, khovanov, lee_ranks, s_invariant, slice_bennequin_gap, CoefficientField, PlanarDiagram,
    KHOVANOV_BUDGET,
};
use trisect_core::toolcli::{corpus_dir, emit, parse_input, Input};
use trisect_core::trisect::{
    adjunction_verdict, hypersurface_input, lattice_obstructions, line_record, AdjunctionMode, BridgePoint, Family,
    HomotopyArc, ArcClass, IntersectionForm, LatticeInput, SurfaceHomotopyRecord, TorusArc, TorusDiagram,
};
use trisect_core::{Rational, Status};

/// Criteria that cannot be met; the twisted rows of the relation table have no
/// four-endpoint model in which their words die.
const KNOWN_FAILURES: [u32; 1] = [3];

const SEED: u64 = 0x0721_5EC7;

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn random_braid(rng: &mut ChaCha8Rng, n: usize, len: std::ops::RangeInclusive<usize>) -> BraidWord {
    let len = rng.gen_range(len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) { g } else { -g }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

fn cat(parts: &[&BraidWord]) -> BraidWord {
    parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.compose(p).unwrap())
}

fn criterion_1(o: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut negatives = 0;
    for case in 0..500 {
        let n = rng.gen_range(3..=6);
        let i = rng.gen_range(1..n as i32);
        let (lhs, rhs): (Vec<i32>, Vec<i32>) = match case % 3 {
            0 if i + 1 < n as i32 => (vec![i, i + 1, i], vec![i + 1, i, i + 1]),
            1 => {
                let j = (1..n as i32).filter(|j| (j - i).abs() >= 2).collect::<Vec<_>>();
                match j.choose(&mut rng) {
                    Some(&j) => (vec![i, j], vec![j, i]),
                    None => (vec![i, -i], vec![]),
                }
            }
            _ => (vec![-i, i], vec![]),
        };
        let budget = 40 - lhs.len();
        let u = random_braid(&mut rng, n, 0..=budget / 2);
        let v = random_braid(&mut rng, n, 0..=budget / 2);
        let a = cat(&[&u, &BraidWord::new(n, lhs.clone()).unwrap(), &v]);
        let b = cat(&[&u, &BraidWord::new(n, rhs).unwrap(), &v]);
        o.check(a.len() <= 40 && artin_equal(&a, &b).unwrap(), format!("relation case {case} not recognized"));
        if lhs.len() == 3 {
            // σi σi+1 against σi+1 σi: same length and exponent sum, different braids
            let x = cat(&[&u, &BraidWord::new(n, vec![i, i + 1]).unwrap(), &v]);
            let y = cat(&[&u, &BraidWord::new(n, vec![i + 1, i]).unwrap(), &v]);
            o.check(!artin_equal(&x, &y).unwrap(), format!("case {case}: distinct braids reported equal"));
            negatives += 1;
        }
    }
    let id = |n| BraidWord::identity(n);
    let good = FactorizationRecord::new(2, vec![Factor::new(id(2), 2)]).unwrap();
    o.check(verify_factorization(&good).unwrap().status == Status::Holds, "(2, [(id, 2)]) rejected");
    let corrupt = [
        ("exponents", FactorizationRecord::new(2, vec![Factor::new(id(2), 4)]).unwrap()),
        ("exponent-sum", FactorizationRecord::new(2, vec![Factor::new(id(2), 1)]).unwrap()),
        (
            "permutation",
            FactorizationRecord::new(3, vec![Factor::new(id(3), 3), Factor::new(BraidWord::new(3, vec![2]).unwrap(), 3)]).unwrap(),
        ),
        ("artin", FactorizationRecord::new(3, vec![Factor::new(id(3), 3), Factor::new(id(3), 3)]).unwrap()),
    ];
    for (stage, rec) in corrupt {
        let v = verify_factorization(&rec).unwrap();
        o.check(
            v.status == Status::Violated && v.stage.as_deref() == Some(stage),
            format!("corruption at {stage} gave {v}"),
        );
    }
    for k in 0..100 {
        let n = rng.gen_range(2..=6);
        let w = random_braid(&mut rng, n, 0..=20);
        let t = full_twist(n).unwrap();
        o.check(artin_equal(&cat(&[&t, &w]), &cat(&[&w, &t])).unwrap(), format!("twist not central on word {k}"));
    }
    o.note(format!("500 relation cases, {negatives} distinct pairs, 4 corruptions, 100 centrality words"));
}

fn positive_words(n: usize, max_len: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 1..n as i32 {
                let mut x = w.clone();
                x.push(g);
                let b = BraidWord::new(n, x.clone()).unwrap();
                if b.closure_components() == 1 {
                    out.push(b);
                }
                next.push(x);
            }
        }
        frontier = next;
    }
    out
}

fn corpus_diagrams() -> Vec<(String, PlanarDiagram)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "pd") {
            if let Input::Pd(d) = parse_input(&std::fs::read_to_string(&path).unwrap()).unwrap() {
                out.push((path.file_name().unwrap().to_string_lossy().into_owned(), d));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn criterion_2(o: &mut Outcome) {
    let b = |n, w: Vec<i32>| BraidWord::new(n, w).unwrap();
    let ranks = |d: &PlanarDiagram| khovanov(d, CoefficientField::Rationals).unwrap().ranks;
    let unknot = ranks(&closure_pd(&b(2, vec![1])));
    o.check(unknot.into_iter().collect::<Vec<_>>() == vec![((0, -1), 1), ((0, 1), 1)], "Kh(unknot)");
    let trefoil = ranks(&closure_pd(&b(2, vec![1, 1, 1])));
    let expected = vec![((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)];
    o.check(trefoil.into_iter().collect::<Vec<_>>() == expected, "Kh(right trefoil)");

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut diagrams = corpus_diagrams();
    while diagrams.len() < 60 {
        let n = rng.gen_range(2..=4);
        let w = random_braid(&mut rng, n, 1..=10);
        diagrams.push((format!("random {:?}", w.letters()), closure_pd(&w)));
    }
    for (name, d) in &diagrams {
        if d.crossing_count() > 10 {
            continue;
        }
        let kh = khovanov(d, CoefficientField::Rationals).unwrap();
        o.check(kh.euler_characteristic() == kauffman_bracket(d).unwrap(), format!("Euler characteristic of {name}"));
        let lee: usize = lee_ranks(d, KHOVANOV_BUDGET).unwrap().values().sum();
        o.check(lee == 1 << d.components(), format!("Lee rank of {name} is {lee}"));
    }
    for (name, w, s) in [("trefoil", b(2, vec![1; 3]), 2), ("T(2,5)", b(2, vec![1; 5]), 4), ("figure-eight", b(3, vec![1, -2, 1, -2]), 0)] {
        let got = s_invariant(&closure_pd(&w), KHOVANOV_BUDGET).unwrap();
        o.check(got == s, format!("s({name}) = {got}, expected {s}"));
    }
    let mut positives = 0;
    for (n, len) in [(2, 9), (3, 10), (4, 8)] {
        for w in positive_words(n, len) {
            positives += 1;
            let gap = slice_bennequin_gap(&w).unwrap();
            o.check(gap == 0, format!("gap {gap} on positive braid {:?}", w.letters()));
        }
    }
    let mut random = 0;
    while random < 200 {
        let n = rng.gen_range(2..=4);
        let w = random_braid(&mut rng, n, 1..=10);
        if w.closure_components() != 1 {
            continue;
        }
        random += 1;
        let gap = slice_bennequin_gap(&w).unwrap();
        o.check(gap >= 0, format!("gap {gap} on {:?}", w.letters()));
    }
    o.note(format!("{} diagrams, {positives} positive braid knots, {random} random knots", diagrams.len()));
}

fn random_free_word(rng: &mut ChaCha8Rng, gens: &[&str], len: usize) -> FreeWord<String> {
    FreeWord::from_letters((0..len).map(|_| Letter::new(gens.choose(rng).unwrap().to_string(), rng.gen_bool(0.5))).collect())
}

fn criterion_3(o: &mut Outcome) {
    let mut dead = 0;
    let mut obstructed = Vec::new();
    for k in TABLE_EXPONENTS {
        let (r1, r2) = half_twist_relations(k).unwrap();
        if boundary_relation_orders(&r1, &r2).is_empty() {
            obstructed.push(k);
        }
        let pres = wirtinger(&local_model(k).unwrap().diagram().unwrap()).unwrap();
        for (i, r) in [r1, r2].iter().enumerate() {
            match verify_relation_trivial(r, &pres) {
                Ok(true) => dead += 1,
                Ok(false) => o.check(false, format!("k={k} word {} survives", i + 1)),
                Err(e) => o.check(false, format!("k={k} word {}: {e}", i + 1)),
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for case in 0..1000 {
        let len = rng.gen_range(0..=30);
        let w = random_free_word(&mut rng, &["l", "x", "y", "z"], len);
        let l = "l".to_string();
        let (p, rest) = longitude_normal_form(&w, &l);
        let back = FreeWord::power(l.clone(), p).mul(&expand_shifted(&rest, &l));
        o.check(back == w.reduced(), format!("normal form case {case} does not re-expand"));
    }
    o.note(format!("{dead}/8 table words die in their models; rows {obstructed:?} admit no boundary order; 1000 normal forms"));
}

fn criterion_4(o: &mut Outcome) {
    let rec = line_record();
    let chi = rec.euler_characteristic();
    let c1 = rec.c1_pairing().unwrap();
    let k2 = rec.self_intersection().unwrap();
    o.check((chi, c1, k2) == (2, 3, 1), format!("line record gives χ={chi}, c1={c1}, K²={k2}"));
    let sl = rec.total_self_linking_identity();
    o.check(
        sl.status == Status::Holds && sl.lhs.as_ref().map(|q| q.to_string()).as_deref() == Some("-3")
            && sl.rhs.as_ref().map(|q| q.to_string()).as_deref() == Some("-3"),
        format!("total-sl: {sl}"),
    );
    let (chi_f, sl_l, w) = rec.whitney_band_bookkeeping(0).unwrap();
    o.check(w.status == Status::Holds && (sl_l, -chi_f) == (-3, -3), format!("whitney n=0: {w}"));
    let adj = adjunction_verdict(chi, c1, k2, AdjunctionMode::Standard);
    o.check(adj.status == Status::Holds && adj.slack.as_ref().map(|q| q.to_string()).as_deref() == Some("0"), format!("adjunction: {adj}"));

    let three = lattice_obstructions(&LatticeInput::new(IntersectionForm::diagonal(&[1, 1, 1]), 5, 3, vec![vec![0, 0, 1]])).unwrap();
    let mut found: Vec<Vec<i64>> = three.candidates.iter().map(|c| c.c.clone()).collect();
    found.sort();
    let mut expected = Vec::new();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        for signs in 0..8 {
            let base = [3i64, 3, 1];
            let v: Vec<i64> = (0..3).map(|i| base[perm[i]] * if signs >> i & 1 == 1 { -1 } else { 1 }).collect();
            expected.push(v);
        }
    }
    expected.sort();
    expected.dedup();
    o.check(found == expected, format!("#3CP2 candidates: {} found, {} expected", found.len(), expected.len()));
    // the sphere survives only where <c, (0,0,1)> = 3, i.e. where it is the line
    let survivors: Vec<&Vec<i64>> = three.candidates.iter().filter(|c| !c.classes[0].sphere_ruled_out).map(|c| &c.c).collect();
    o.check(
        survivors.len() == 8 && survivors.iter().all(|c| c[2] == 3),
        format!("(0,0,1) sphere survives for {} candidates", survivors.len()),
    );

    let k3_form = IntersectionForm::hyperbolic(3).direct_sum(&IntersectionForm::e8(-1)).direct_sum(&IntersectionForm::e8(-1));
    let mut e = vec![0; 22];
    e[0] = 1;
    let mut k3 = LatticeInput::new(k3_form, 24, -16, vec![e]);
    k3.candidates = Some(vec![vec![0; 22]]);
    let r = lattice_obstructions(&k3).unwrap();
    o.check(r.sphere_ruled_out_for_all(0), "K3 square-zero sphere not ruled out");
    let q = lattice_obstructions(&hypersurface_input(5)).unwrap();
    o.check(q.min_genus_for_all(0) == Some(6), format!("quintic genus bound {:?}", q.min_genus_for_all(0)));
    o.note(format!("{} candidates; line slack 0; quintic genus >= 6", found.len()));
}

fn random_record(rng: &mut ChaCha8Rng) -> SurfaceHomotopyRecord {
    loop {
        let b = rng.gen_range(1..=3);
        let mut signs: Vec<i8> = (0..2 * b).map(|i| if i < b { -1 } else { 1 }).collect();
        signs.shuffle(rng);
        let neg: Vec<usize> = (0..2 * b).filter(|&i| signs[i] < 0).collect();
        let pos: Vec<usize> = (0..2 * b).filter(|&i| signs[i] > 0).collect();
        let mut arcs = Vec::new();
        for sector in 1..=3 {
            let mut targets = pos.clone();
            targets.shuffle(rng);
            for (&from, &to) in neg.iter().zip(&targets) {
                let len = rng.gen_range(0..=4);
                let gens: &[&str] = if sector == 1 || rng.gen_bool(0.3) { &["l", "z", "w"] } else { &["z", "w"] };
                let word = random_free_word(rng, gens, len);
                arcs.push(HomotopyArc { sector, from, to, class: ArcClass::new(word) });
            }
        }
        let flat = BTreeSet::from(["z".to_string(), "w".to_string()]);
        let r = SurfaceHomotopyRecord::new(signs, arcs, flat, 1).unwrap();
        if r.is_connected() {
            return r;
        }
    }
}

fn random_diagram(rng: &mut ChaCha8Rng) -> TorusDiagram<Rational> {
    let q = |k: i64| Rational::new(k.into(), 20.into());
    loop {
        let b = rng.gen_range(1..=2);
        let mut cells: Vec<(i64, i64)> = (0..20).flat_map(|x| (0..20).map(move |y| (x, y))).collect();
        cells.shuffle(rng);
        let points: Vec<BridgePoint<Rational>> = cells[..2 * b]
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| BridgePoint { x: q(x), y: q(y), sign: if i < b { -1 } else { 1 } })
            .collect();
        let mut arcs = Vec::new();
        for family in Family::ALL {
            let mut targets: Vec<usize> = (b..2 * b).collect();
            targets.shuffle(rng);
            for (from, &to) in (0..b).zip(&targets) {
                let (s, e) = (&points[from], &points[to]);
                arcs.push(TorusArc {
                    family,
                    points: vec![(s.x.clone(), s.y.clone()), (e.x.clone(), e.y.clone())],
                    lifts: vec![(rng.gen_range(-1..=1), rng.gen_range(-1..=1))],
                    from,
                    to,
                });
            }
        }
        if let Ok(d) = TorusDiagram::new(points, arcs) {
            if SurfaceHomotopyRecord::from_diagram(&d).is_ok_and(|r| r.is_connected()) {
                return d;
            }
        }
    }
}

fn criterion_5(o: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let (mut transfers, mut with_diagram, mut concentrated) = (0, 0, 0);
    for case in 0..200 {
        let (r, area) = if case % 4 == 0 {
            let d = random_diagram(&mut rng);
            with_diagram += 1;
            (SurfaceHomotopyRecord::from_diagram(&d).unwrap(), Some(d.symplectic_area().unwrap()))
        } else {
            (random_record(&mut rng), None)
        };
        let (chi, count) = (r.euler_characteristic(), r.longitude_count());
        for (k, a) in r.arcs().iter().enumerate() {
            if a.sector == 1 || !a.class.is_flat(r.flat_alphabet()) {
                continue;
            }
            let times = rng.gen_range(-2..=2);
            let t = r.transfer_longitude(k, times).unwrap();
            transfers += 1;
            o.check(
                (t.euler_characteristic(), t.longitude_count()) == (chi, count),
                format!("case {case}: transfer along arc {k} changed χ or the count"),
            );
        }
        // concentration drags along τ2/τ3 arcs and is refused when one of them is not flat
        let all_flat = r.arcs().iter().all(|a| a.sector == 1 || a.class.is_flat(r.flat_alphabet()));
        match r.concentrate_longitudes() {
            Ok(c) => {
                concentrated += 1;
                o.check((c.euler_characteristic(), c.longitude_count()) == (chi, count), format!("case {case}: concentration"));
            }
            Err(e) => o.check(!all_flat, format!("case {case}: concentration refused a flat record: {e}")),
        }
        let (f, n, positive) = r.flatten_and_count().unwrap();
        o.check(f.euler_characteristic() == chi && n == count, format!("case {case}: flatten"));
        if let Some(area) = area {
            let area_sign = area > Rational::from_integer(0.into());
            o.check(positive == area_sign, format!("case {case}: area {area} but positive={positive}"));
        }
    }
    o.note(format!("200 connected records, {with_diagram} with diagrams, {transfers} transfers, {concentrated} concentrations"));
}

fn drift(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn criterion_6(o: &mut Outcome) {
    let fs = verify_fs_identities(64).unwrap();
    let fs32 = verify_fs_identities(32).unwrap();
    o.check(fs.identity_residual < 1e-8, format!("identity residual {:e}", fs.identity_residual));
    o.check(fs.boundary.margin > 0.0, format!("smoothed boundary margin {:e}", fs.boundary.margin));
    o.check(drift(fs.boundary.margin, fs32.boundary.margin) < 0.1, "boundary margin drift");

    let coarse = collar_example::<f64>(32).unwrap();
    let t = tune_graft(&coarse, GraftConfig::for_chart(coarse.chart()), MAX_TUNE_STEPS).unwrap();
    let fine = graft_margin(&collar_example::<f64>(64).unwrap(), &t.config).unwrap().margin;
    o.check(t.report.margin > 0.0 && fine > 0.0, format!("collar margins {:e}, {fine:e}", t.report.margin));
    o.check(drift(t.report.margin, fine) < 0.1, "collar margin drift");

    let coarse = saddle_example::<f64>(33).unwrap();
    let s = tune_graft(&coarse, GraftConfig { delta: 0.2, ..GraftConfig::for_chart(coarse.chart()) }, MAX_TUNE_STEPS).unwrap();
    let fine_input = saddle_example::<f64>(65).unwrap();
    let sfine = graft_margin(&fine_input, &s.config).unwrap().margin;
    o.check(s.report.margin > 0.0 && sfine > 0.0, format!("saddle margins {:e}, {sfine:e}", s.report.margin));
    o.check(drift(s.report.margin, sfine) < 0.1, "saddle margin drift");
    let flat = grafted_form(&fine_input, &GraftConfig { delta: 0.0, ..s.config }).unwrap();
    let arc = contact_margin_where(&flat, |p| p[0] == 0.0 && p[1] == 0.0 && p[2].abs() <= 0.5).unwrap();
    o.check(arc.margin <= 0.0, format!("delta=0 margin on the singular arc {:e}", arc.margin));
    o.note(format!(
        "FS residual {:.1e}, boundary {:.4}, collar {:.4}/{:.4}, saddle {:.3e}/{:.3e}, singular arc {:.1e}",
        fs.identity_residual, fs.boundary.margin, t.report.margin, fine, s.report.margin, sfine, arc.margin
    ));
}

fn trisect(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_trisect")).args(args).output().expect("run trisect");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_7(o: &mut Outcome) {
    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.trirec");
    let base = emit(&Input::Trirec(line_record()));
    std::fs::write(&line, &base).unwrap();
    let path = line.to_str().unwrap();
    let (code, out) = trisect(&["trisect-check", "--input", path, "--machine"]);
    o.check(code == 0 && out.contains("total_sl.status=holds"), format!("trisect-check exit {code}"));
    let (code, _) = trisect(&["adjunction", "--input", path, "--machine"]);
    o.check(code == 0, format!("adjunction exit {code}"));

    let mut detected = 0;
    for sector in 0..3 {
        for field in 0..3 {
            let mut rec = line_record();
            let s = &mut rec.sectors[sector];
            let slot = [&mut s.w, &mut s.lk_self, &mut s.lk_next][field].as_mut().expect("line record is complete");
            *slot += 1;
            let file = dir.path().join(format!("mutant_{sector}_{field}.trirec"));
            std::fs::write(&file, emit(&Input::Trirec(rec))).unwrap();
            let (code, out) = trisect(&["trisect-check", "--input", file.to_str().unwrap(), "--machine"]);
            if code == 1 && out.contains("total_sl.status=violated") {
                detected += 1;
            } else {
                o.check(false, format!("mutation of sector {} field {field} not detected (exit {code})", sector + 1));
            }
        }
    }
    o.note(format!("{detected}/9 mutations detected"));
}

fn main() {
    let criteria: [(u32, &str, fn(&mut Outcome), Duration); 7] = [
        (1, "braid kernel", criterion_1, Duration::from_secs(10)),
        (2, "homology engine", criterion_2, Duration::from_secs(300)),
        (3, "relation table", criterion_3, Duration::from_secs(30)),
        (4, "trisection formulas", criterion_4, Duration::from_secs(5)),
        (5, "homotopy normalization", criterion_5, Duration::from_secs(30)),
        (6, "graft lab", criterion_6, Duration::from_secs(120)),
        (7, "end to end", criterion_7, Duration::from_secs(60)),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run, limit) in criteria {
        let mut o = Outcome::new();
        let start = Instant::now();
        run(&mut o);
        let took = start.elapsed();
        o.check(took <= limit, format!("took {took:.1?}, limit {limit:?}"));
        let pass = o.failures.is_empty();
        let verdict = match (pass, KNOWN_FAILURES.contains(&n)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        println!("criterion {n} [{name}]: {verdict} in {:.2}s; {}", took.as_secs_f64(), o.notes.join("; "));
        for f in o.failures.iter().take(8) {
            println!("    {f}");
        }
        if !pass && !KNOWN_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
