//! Command-line front end: parse problem files, run the analysis pipelines
//! with explicit seeds and tolerances, and emit machine-readable reports or
//! human-readable tables.
//!
//! Exit codes: 0 success, 2 input/schema error, 3 numerical failure,
//! 4 budget exceeded.

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use encuniv::decompose::InvariantSubspace;
use encuniv::error::Error;
use encuniv::group::{group_algebra_analyze, group_closure};
use encuniv::lie::lie_closure;
use encuniv::linalg::fnorm;
use encuniv::problem::ProblemFile;
use encuniv::report::{render_table, to_json, CheckDoc, ConfigDoc, ReportDoc};
use encuniv::universality::{analyze, code_universality, input_digest, restrict};
use encuniv::{Tolerances, UniversalityReport};

#[derive(Parser)]
#[command(
    name = "encuniv",
    about = "Universal-control analysis of quantum subspaces and subsystems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a set of Hamiltonians: Lie closure, decomposition, verdicts.
    Analyze {
        /// Problem file (JSON).
        problem: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Close a finite group from unitary generators and analyze generic
    /// Hermitian group-algebra samples.
    Group {
        /// Problem file (JSON) with a `group_generators` field.
        problem: PathBuf,
        /// Number of independent Hermitian samples to draw (≥ 2).
        #[arg(long, default_value_t = 2)]
        samples: u32,
        /// Cap on the group order during closure.
        #[arg(long, default_value_t = 4096)]
        max_order: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write a ready-made problem file from the bundled catalog.
    Examples {
        /// Model name (example1, example1-prime, swap:<n>, boson:<L>:<N>,
        /// dihedral, z2-commutant).
        name: String,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verdict for a user-supplied code subspace.
    Check {
        /// Problem file (JSON).
        problem: PathBuf,
        /// Code name defined in the problem file, or a comma-separated list
        /// of basis indices such as "1,2".
        #[arg(long)]
        code: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// RNG seed for the generic-element draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rank threshold relative to the largest eigen/singular value.
    #[arg(long, default_value_t = 1e-9)]
    tol_rank: f64,
    /// Invariance residual threshold.
    #[arg(long, default_value_t = 1e-8)]
    tol_inv: f64,
    /// Floor for the eigenvalue clustering gap.
    #[arg(long, default_value_t = 1e-7)]
    cluster_gap: f64,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; defaults to a table on a terminal and JSON otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

impl CommonArgs {
    fn tolerances(&self) -> Result<Tolerances, Error> {
        for (name, v) in [
            ("--tol-rank", self.tol_rank),
            ("--tol-inv", self.tol_inv),
            ("--cluster-gap", self.cluster_gap),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Schema(format!("{name}: must be a positive number")));
            }
        }
        Ok(Tolerances {
            rank: self.tol_rank,
            invariance: self.tol_inv,
            cluster_gap: self.cluster_gap,
        })
    }

    fn format(&self) -> Format {
        match self.format {
            Some(f) => f,
            // tables are for eyes; anything piped or redirected gets JSON
            None if self.out.is_none() && std::io::stdout().is_terminal() => Format::Table,
            None => Format::Json,
        }
    }
}

fn read_problem(path: &Path) -> Result<ProblemFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
    ProblemFile::from_json(&text)
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Schema(format!("cannot write {}: {e}", path.display()))),
        None => {
            std::io::stdout()
                .write_all(content.as_bytes())
                .map_err(|e| Error::Schema(format!("cannot write to stdout: {e}")))?;
            Ok(())
        }
    }
}

fn emit_report(report: &UniversalityReport, common: &CommonArgs) -> Result<(), Error> {
    let content = match common.format() {
        Format::Json => to_json(&ReportDoc::from(report)),
        Format::Table => render_table(report),
    };
    write_output(&common.out, &content)
}

fn cmd_analyze(problem: &Path, common: &CommonArgs) -> Result<(), Error> {
    let tols = common.tolerances()?;
    let file = read_problem(problem)?;
    let generators = file.hamiltonian_matrices()?;
    if generators.is_empty() {
        return Err(Error::Schema("hamiltonians: must not be empty".into()));
    }
    let report = analyze(&generators, common.seed, &tols)?;
    emit_report(&report, common)
}

fn cmd_group(
    problem: &Path,
    samples: u32,
    max_order: usize,
    common: &CommonArgs,
) -> Result<(), Error> {
    let tols = common.tolerances()?;
    if samples < 2 {
        return Err(Error::Schema("--samples: must be at least 2".into()));
    }
    let file = read_problem(problem)?;
    let generators = file.group_matrices()?;
    let rep = group_closure(&generators, None, max_order)?;
    let report = group_algebra_analyze(&rep, common.seed, samples, &tols)?;
    emit_report(&report, common)
}

fn cmd_examples(name: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    let file = encuniv::catalog::problem_for(name)?;
    write_output(out, &file.to_json())
}

fn parse_index_list(spec: &str) -> Option<Vec<usize>> {
    if spec.is_empty() || !spec.chars().all(|c| c.is_ascii_digit() || c == ',') {
        return None;
    }
    spec.split(',')
        .map(|part| part.parse::<usize>().ok())
        .collect()
}

fn resolve_code_frame(file: &ProblemFile, spec: &str) -> Result<encuniv::CMatrix, Error> {
    if let Some(codes) = &file.codes {
        if let Some(code) = codes.iter().find(|c| c.name == spec) {
            return file.code_frame(code);
        }
    }
    if let Some(indices) = parse_index_list(spec) {
        let code = encuniv::problem::CodeSpec {
            name: spec.to_string(),
            indices: Some(indices),
            frame: None,
        };
        return file.code_frame(&code);
    }
    let known: Vec<&str> = file
        .codes
        .iter()
        .flatten()
        .map(|c| c.name.as_str())
        .collect();
    Err(Error::Schema(format!(
        "--code {spec:?} names no code in the file (known: [{}]) and is not an index list",
        known.join(", ")
    )))
}

fn cmd_check(problem: &Path, code_spec: &str, common: &CommonArgs) -> Result<(), Error> {
    let tols = common.tolerances()?;
    let file = read_problem(problem)?;
    let generators = file.hamiltonian_matrices()?;
    if generators.is_empty() {
        return Err(Error::Schema("hamiltonians: must not be empty".into()));
    }
    let frame = resolve_code_frame(&file, code_spec)?;
    let n = file.dimension;
    let closure = lie_closure(&generators, tols.rank, n * n)?;

    // invariance of the supplied frame under the generated algebra
    let mut max_residual: f64 = 0.0;
    for l in &closure.elements {
        let (_, residual) = restrict(l, &frame)?;
        max_residual = max_residual.max(residual / fnorm(l).max(1.0));
    }
    let config = ConfigDoc {
        seed: common.seed,
        samples: None,
        tolerances: (&tols).into(),
    };
    let digest = input_digest(&generators);
    let doc = if max_residual > tols.invariance {
        CheckDoc {
            schema_version: encuniv::problem::SCHEMA_VERSION.into(),
            input_digest: digest,
            code: code_spec.to_string(),
            status: "invariance_violation".into(),
            max_residual,
            d: Some(frame.ncols()),
            restricted_dim: None,
            deficiency: None,
            universal: None,
            trivial_code: None,
            config,
        }
    } else {
        let subspace = InvariantSubspace {
            dim: frame.ncols(),
            frame,
            isotypic_label: None,
            invariance_residual: max_residual,
        };
        let verdict = code_universality(&closure, &subspace, &tols)?;
        CheckDoc {
            schema_version: encuniv::problem::SCHEMA_VERSION.into(),
            input_digest: digest,
            code: code_spec.to_string(),
            status: "ok".into(),
            max_residual,
            d: Some(verdict.dim),
            restricted_dim: Some(verdict.restricted_dim),
            deficiency: Some(verdict.deficiency),
            universal: Some(verdict.universal),
            trivial_code: Some(verdict.trivial_code),
            config,
        }
    };
    let content = match common.format() {
        Format::Json => to_json(&doc),
        Format::Table => {
            let mut s = format!("code {:?}: status {}", doc.code, doc.status);
            if let (Some(d), Some(rd), Some(def), Some(uni)) =
                (doc.d, doc.restricted_dim, doc.deficiency, doc.universal)
            {
                s.push_str(&format!(
                    ", d = {d}, restricted_dim = {rd}, deficiency = {def}, universal = {uni}"
                ));
            } else {
                s.push_str(&format!(" (max residual {:.3e})", doc.max_residual));
            }
            s.push('\n');
            s
        }
    };
    write_output(&common.out, &content)
}

fn run(cli: Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Analyze { problem, common } => cmd_analyze(problem, common),
        Command::Group {
            problem,
            samples,
            max_order,
            common,
        } => cmd_group(problem, *samples, *max_order, common),
        Command::Examples { name, out } => cmd_examples(name, out),
        Command::Check {
            problem,
            code,
            common,
        } => cmd_check(problem, code, common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
