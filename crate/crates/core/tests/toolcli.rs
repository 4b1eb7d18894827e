use std::path::Path;

use trisect_core::toolcli::{
    corpus_dir, corpus_files, emit, parse_input, run_command, write_corpus, Command, Input, Manifest, EXIT_BUDGET,
    EXIT_INPUT,
};

fn corpus() -> &'static Path {
    static DIR: std::sync::OnceLock<std::path::PathBuf> = std::sync::OnceLock::new();
    DIR.get_or_init(corpus_dir)
}

#[test]
fn corpus_matches_generator() {
    if std::env::var_os("TRISECT_REGEN").is_some() {
        write_corpus(corpus()).unwrap();
    }
    for (name, body) in corpus_files() {
        let on_disk = std::fs::read_to_string(corpus().join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk, body, "{name} is stale; rerun with TRISECT_REGEN=1");
    }
}

fn run_manifest(name: &str) -> trisect_core::toolcli::Outcome {
    let src = std::fs::read_to_string(corpus().join(name)).unwrap();
    let Input::Manifest(m) = parse_input(&src).unwrap() else { panic!("{name} is not a manifest") };
    run_command(&m, corpus())
}

#[test]
fn line_record_checks() {
    let o = run_manifest("line_check.manifest");
    println!("{}", o.report.render());
    assert_eq!(o.code, 0);
    assert_eq!(o.report.get("chi"), Some("2"));
    assert_eq!(o.report.get("c1k"), Some("3"));
    assert_eq!(o.report.get("k2"), Some("1"));
    let a = run_manifest("line_adjunction.manifest");
    assert_eq!(a.code, 0);
    assert_eq!(a.report.get("adjunction.slack"), Some("0"));
    assert_eq!(run_manifest("line_whitney.manifest").code, 0);
}

#[test]
fn knot_commands() {
    let o = run_manifest("trefoil_s.manifest");
    assert_eq!(o.report.get("s"), Some("2"));
    let sl = run_command(&Manifest::new(Command::Sl).input("trefoil.braid"), corpus());
    assert_eq!(sl.report.get("sl"), Some("1"));
    let kh = run_command(&Manifest::new(Command::Kh).input("trefoil.pd").param("field", "2"), corpus());
    assert_eq!(kh.code, 0, "{}", kh.report.render());
    let un = run_command(&Manifest::new(Command::UnlinkCert).input("unknot.braid"), corpus());
    assert_eq!(un.code, 0);
    let tr = run_command(&Manifest::new(Command::UnlinkCert).input("trefoil.braid"), corpus());
    assert_eq!(tr.code, 1);
    let small = Manifest { budget: Some(2), ..Manifest::new(Command::Kh).input("figure_eight.braid") };
    assert_eq!(run_command(&small, corpus()).code, EXIT_BUDGET);
}

#[test]
fn factorizations_and_lattices() {
    for f in ["delta2.factorization", "delta3.factorization"] {
        let o = run_command(&Manifest::new(Command::VerifyFactorization).input(f), corpus());
        assert_eq!(o.code, 0, "{}", o.report.render());
    }
    let o = run_manifest("three_planes.manifest");
    assert_eq!(o.report.get("candidates"), Some("24"));
    assert_eq!(o.report.get("class.1.sphere_ruled_out"), Some("false"));
    let k3 = run_command(&Manifest::new(Command::Lattice).input("k3.lattice"), corpus());
    assert_eq!(k3.report.get("class.1.sphere_ruled_out"), Some("true"));
    let q = run_command(&Manifest::new(Command::Lattice).input("quintic.lattice"), corpus());
    assert_eq!(q.report.get("class.1.min_genus"), Some("6"));
    let two = Manifest { sigma_coefficient: Some(2), ..Manifest::new(Command::Lattice).input("three_planes.lattice") };
    assert!(run_command(&two, corpus()).report.get("warning.0").is_some());
}

#[test]
fn relations_table_reports_unsatisfiable_rows() {
    let o = run_manifest("relations.manifest");
    println!("{}", o.report.render());
    assert_eq!(o.code, 1);
    assert_eq!(o.report.get("row1.relation.1"), Some("trivial"));
    assert_eq!(o.report.get("row-2.relation.2"), Some("trivial"));
    assert_ne!(o.report.get("row2.relation.1"), Some("trivial"));
    assert_eq!(o.report.get("row2.boundary_orders"), Some("0"));
    assert_eq!(o.report.get("row3.boundary_orders"), Some("0"));
}

#[test]
fn graft_and_fs_commands() {
    let o = run_manifest("fs.manifest");
    assert_eq!(o.code, 0, "{}", o.report.render());
    let c = run_manifest("collar_graft.manifest");
    assert_eq!(c.code, 0, "{}", c.report.render());
    let files = Manifest::new(Command::GraftVerify).input("collar_dx.formfield").input("collar_dy.formfield");
    let f = run_command(&Manifest { grid: Some(16), ..files.clone() }, corpus());
    assert_eq!(f.code, 0, "{}", f.report.render());
    let swapped = Manifest::new(Command::GraftVerify).input("collar_dy.formfield").input("collar_dx.formfield");
    assert_eq!(run_command(&swapped, corpus()).code, 1);
}

#[test]
fn every_fixture_round_trips_and_bad_input_exits_2() {
    let mut m = Manifest::new(Command::Roundtrip);
    for (name, _) in corpus_files() {
        m = m.input(name);
    }
    assert_eq!(run_command(&m, corpus()).code, 0);
    let missing = run_command(&Manifest::new(Command::TrisectCheck).input("nope.trirec"), corpus());
    assert_eq!(missing.code, EXIT_INPUT);
    let wrong = run_command(&Manifest::new(Command::TrisectCheck).input("trefoil.braid"), corpus());
    assert_eq!(wrong.code, EXIT_INPUT);
    let bad_grid = Manifest { grid: Some(4), ..Manifest::new(Command::FsCheck) };
    assert_eq!(run_command(&bad_grid, corpus()).code, EXIT_INPUT);
    let canonical = emit(&Input::Manifest(Manifest::new(Command::FsCheck).param("n", 2)));
    assert_eq!(canonical, "manifest\ncommand = fs-check\nparam.n = 2\n");
    assert!(parse_input("manifest\ncommand = fs-check\nparam.bogus = 1\n").is_err());
}
