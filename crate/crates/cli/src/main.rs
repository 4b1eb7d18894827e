use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trisect_core::toolcli::{parse_kind, run_command, write_corpus, Command, Input, Kind, Manifest, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "trisect", version, about = "Checks for braid factorizations, trisection records and grafted contact forms")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone, Default)]
struct Opts {
    /// input file; repeat for commands taking several, `corpus:<name>` for bundled fixtures
    #[arg(long = "input", short = 'i')]
    inputs: Vec<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(i64).range(2..=3))]
    sigma_coefficient: Option<i64>,
    /// also write the report here
    #[arg(long)]
    output: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    c1k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    k2: Option<i64>,
    /// adjunction mode: standard or zero-area
    #[arg(long)]
    mode: Option<String>,
    /// Whitney band count
    #[arg(long)]
    n: Option<i64>,
    /// graft example: collar or saddle
    #[arg(long)]
    example: Option<String>,
    /// Khovanov coefficients: q or 2
    #[arg(long)]
    field: Option<String>,
    /// singular arcs as `x y sign; ...`
    #[arg(long, allow_hyphen_values = true)]
    singularities: Option<String>,
    /// print only the key=value block
    #[arg(long)]
    machine: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a full-twist factorization
    VerifyFactorization(Opts),
    /// Rasmussen invariant of a knot from its Lee spectral sequence
    SInvariant(Opts),
    /// Transverse self-linking of a braid closure
    Sl(Opts),
    /// Bigraded Khovanov ranks
    Kh(Opts),
    /// Necessary test for a diagram of the unlink
    UnlinkCert(Opts),
    /// Homological formulas and the self-linking identity of a record
    TrisectCheck(Opts),
    /// Adjunction inequality from numbers or a record
    Adjunction(Opts),
    /// Whitney band bookkeeping with the slice-Bennequin check
    Whitney(Opts),
    /// Characteristic-vector obstructions
    Lattice(Opts),
    /// Build and tune a grafted contact form
    GraftVerify(Opts),
    /// Identities of the round Liouville form on the corner chart
    FsCheck(Opts),
    /// Half-twist relation words against their local models
    RelationsTable(Opts),
    /// Parse and re-emit inputs byte for byte
    Roundtrip(Opts),
    /// Run a manifest file
    Run {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        machine: bool,
    },
    /// Write the bundled fixtures into a directory
    WriteCorpus { dir: PathBuf },
}

fn manifest_from(command: Command, o: &Opts) -> Manifest {
    let mut m = Manifest::new(command);
    m.inputs = o.inputs.clone();
    m.tol = o.tol;
    m.grid = o.grid;
    m.budget = o.budget;
    m.sigma_coefficient = o.sigma_coefficient;
    m.output = o.output.clone();
    let params = [
        ("chi", o.chi.map(|v| v.to_string())),
        ("c1k", o.c1k.map(|v| v.to_string())),
        ("k2", o.k2.map(|v| v.to_string())),
        ("mode", o.mode.clone()),
        ("n", o.n.map(|v| v.to_string())),
        ("example", o.example.clone()),
        ("field", o.field.clone()),
        ("singularities", o.singularities.clone()),
    ];
    for (k, v) in params {
        if let Some(v) = v {
            m.params.insert(k.to_string(), v);
        }
    }
    m
}

fn execute(m: &Manifest, base: &Path, machine: bool) -> ExitCode {
    let outcome = run_command(m, base);
    let text = if machine { outcome.report.machine_block() } else { outcome.report.render() };
    print!("{text}");
    if let Some(out) = &m.output {
        if let Err(e) = std::fs::write(base.join(out), outcome.report.render()) {
            eprintln!("cannot write {out}: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(outcome.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Cmd::Run { manifest, machine } => {
            let base = manifest.parent().map(Path::to_path_buf).unwrap_or_default();
            let parsed = std::fs::read_to_string(&manifest)
                .map_err(|e| e.to_string())
                .and_then(|src| parse_kind(&src, Kind::Manifest).map_err(|e| e.to_string()));
            return match parsed {
                Ok(Input::Manifest(m)) => execute(&m, &base, machine),
                Ok(_) => unreachable!("kind checked"),
                Err(e) => {
                    eprintln!("{}: {e}", manifest.display());
                    ExitCode::from(EXIT_INPUT as u8)
                }
            };
        }
        Cmd::WriteCorpus { dir } => {
            return match write_corpus(&dir) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("{}: {e}", dir.display());
                    ExitCode::from(EXIT_INPUT as u8)
                }
            };
        }
        Cmd::VerifyFactorization(o) => (Command::VerifyFactorization, o),
        Cmd::SInvariant(o) => (Command::SInvariant, o),
        Cmd::Sl(o) => (Command::Sl, o),
        Cmd::Kh(o) => (Command::Kh, o),
        Cmd::UnlinkCert(o) => (Command::UnlinkCert, o),
        Cmd::TrisectCheck(o) => (Command::TrisectCheck, o),
        Cmd::Adjunction(o) => (Command::Adjunction, o),
        Cmd::Whitney(o) => (Command::Whitney, o),
        Cmd::Lattice(o) => (Command::Lattice, o),
        Cmd::GraftVerify(o) => (Command::GraftVerify, o),
        Cmd::FsCheck(o) => (Command::FsCheck, o),
        Cmd::RelationsTable(o) => (Command::RelationsTable, o),
        Cmd::Roundtrip(o) => (Command::Roundtrip, o),
    };
    let m = manifest_from(command, &opts);
    execute(&m, Path::new("."), opts.machine)
}
