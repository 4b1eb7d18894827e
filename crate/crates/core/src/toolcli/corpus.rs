use std::path::{Path, PathBuf};

use crate::braid::{closure_pd, BraidWord, Factor, FactorizationRecord};
use crate::graft::{Axis, FormField, GridChart};
use crate::group::{half_twist_relations, local_model, TABLE_EXPONENTS};
use crate::trisect::{hypersurface_input, line_record, LatticeInput};

use super::commands::{Command, Manifest};
use super::formats::{emit, FormSpec, Input, LatticeFile, TangleFile};

/// Directory holding the bundled fixtures. `TRISECT_CORPUS` overrides it.
pub fn corpus_dir() -> PathBuf {
    match std::env::var_os("TRISECT_CORPUS") {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"),
    }
}

fn braid(strands: usize, letters: Vec<i32>) -> BraidWord {
    BraidWord::new(strands, letters).expect("fixture braid")
}

fn lattice(form: &[&str], chi: i64, sigma: i64, classes: Vec<Vec<i64>>, candidates: Option<Vec<Vec<i64>>>) -> Input {
    let tokens: Vec<String> = form.iter().map(|s| s.to_string()).collect();
    let mut input = LatticeInput::new(FormSpec::build(&tokens).expect("fixture form"), chi, sigma, classes);
    input.candidates = candidates;
    Input::Lattice(LatticeFile { input, form: FormSpec::Summands(tokens) })
}

fn surface_form(dx: f64, dy: f64) -> Input {
    let chart = GridChart::new(vec![Axis::new("x", 16, 0.0, 1.0, true), Axis::new("y", 16, 0.0, 1.0, true)])
        .expect("fixture chart");
    Input::FormField(FormField::from_fn(&chart, 1, |_| vec![dx, dy]).expect("fixture form"))
}

fn manifest(command: Command, inputs: &[&str], params: &[(&str, &str)]) -> Input {
    let mut m = Manifest::new(command);
    for i in inputs {
        m = m.input(*i);
    }
    for (k, v) in params {
        m = m.param(k, v);
    }
    Input::Manifest(m)
}

/// Every fixture as `(file name, contents)`, generated from the engines.
pub fn corpus_files() -> Vec<(String, String)> {
    let mut out: Vec<(String, Input)> = Vec::new();
    let mut add = |name: &str, v: Input| out.push((name.to_string(), v));

    add("line.trirec", Input::Trirec(line_record()));
    for (name, b) in [
        ("trefoil", braid(2, vec![1, 1, 1])),
        ("hopf", braid(2, vec![1, 1])),
        ("unknot", braid(2, vec![1])),
        ("figure_eight", braid(3, vec![1, -2, 1, -2])),
    ] {
        add(&format!("{name}.pd"), Input::Pd(closure_pd(&b)));
        add(&format!("{name}.braid"), Input::Braid(b));
    }
    for k in TABLE_EXPONENTS {
        let (r1, r2) = half_twist_relations(k).expect("table row");
        let diagram = local_model(k).and_then(|m| m.diagram()).expect("local model");
        let name = if k < 0 { format!("half_twist_m{}.tangle", -k) } else { format!("half_twist_{k}.tangle") };
        add(&name, Input::Tangle(TangleFile { diagram, relations: vec![r1, r2], twists: Some(k) }));
    }
    add("collar_dx.formfield", surface_form(1.0, 0.0));
    add("collar_dy.formfield", surface_form(0.0, 1.0));
    add("three_planes.lattice", lattice(&["1", "1", "1"], 5, 3, vec![vec![0, 0, 1]], None));
    let mut e = vec![0; 22];
    e[0] = 1;
    add("k3.lattice", lattice(&["H", "H", "H", "-E8", "-E8"], 24, -16, vec![e], Some(vec![vec![0; 22]])));
    let q = hypersurface_input(5);
    add("quintic.lattice", lattice(&["5"], q.chi, q.sigma, q.classes, q.candidates));
    let delta2 = FactorizationRecord::new(2, vec![Factor::new(BraidWord::identity(2), 2)]).expect("fixture");
    add("delta2.factorization", Input::Factorization(delta2));
    let sigma12 = braid(3, vec![1, 2]);
    let factors = (0..6).map(|k| Factor::new(if k % 2 == 0 { BraidWord::identity(3) } else { sigma12.clone() }, 1));
    add("delta3.factorization", Input::Factorization(FactorizationRecord::new(3, factors.collect()).expect("fixture")));

    add("line_check.manifest", manifest(Command::TrisectCheck, &["line.trirec"], &[]));
    add("line_adjunction.manifest", manifest(Command::Adjunction, &["line.trirec"], &[]));
    add("line_whitney.manifest", manifest(Command::Whitney, &["line.trirec"], &[("n", "0")]));
    add("trefoil_s.manifest", manifest(Command::SInvariant, &["trefoil.braid"], &[]));
    add("collar_graft.manifest", manifest(Command::GraftVerify, &[], &[("example", "collar")]));
    add("relations.manifest", manifest(Command::RelationsTable, &[], &[]));
    add("fs.manifest", manifest(Command::FsCheck, &[], &[]));
    add("three_planes.manifest", manifest(Command::Lattice, &["three_planes.lattice"], &[]));

    out.into_iter().map(|(n, v)| (n, emit(&v))).collect()
}

/// Writes the generated fixtures into `dir`.
pub fn write_corpus(dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, body) in corpus_files() {
        std::fs::write(dir.join(name), body)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toolcli::parse_input;

    #[test]
    fn fixtures_parse_back() {
        for (name, body) in corpus_files() {
            let v = parse_input(&body).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(emit(&v), body, "{name}");
        }
    }
}
