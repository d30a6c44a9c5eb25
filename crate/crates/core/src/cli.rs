//! The `mubueb` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a verification or precondition fails,
//! 2 on usage, IO or malformed-input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::axioms::{build_structure_tensors, verify_all};
use crate::characters::{
    additive_character_matrix, hadamard_residual, is_dephased, multiplicative_character_matrix, ControlledHadamard,
};
use crate::construct::{conjugate_ueb, eigendata, partition_residual, phi_h, ueb_from_field};
use crate::cplx::{C64, DEFAULT_TOL};
use crate::error::Error;
use crate::gf::FiniteField;
use crate::manifest::{FieldSpec, Manifest, ReportDoc};
use crate::mub::{is_maximal_mub_family, mub_family_residual, theta};

/// Seed for the randomized eigenbasis extraction when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "mubueb", version, about = "Mutually unbiased bases and unitary error bases from finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Ueb,
    Mub,
    Chi,
    Psi,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the finite-field UEB and related objects and write them as JSON.
    Construct {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        /// Modulus coefficients, constant term first (default: smallest irreducible).
        #[arg(long, value_delimiter = ',')]
        poly: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "all")]
        emit: Emit,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Conjugate the UEB by χ/√d so that C_* is diagonal.
        #[arg(long)]
        canonical: bool,
    },
    /// Check a manifest against the laws of its kind.
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Common eigenbases of a partitioned UEB.
    Theta {
        ueb: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the eigenvalue tables (h.json, g.json) of a canonical-form UEB here.
        #[arg(long)]
        eigendata: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Partitioned UEB from a MUB family, a controlled Hadamard and a Hadamard G.
    Phi {
        mub: PathBuf,
        hadamards: PathBuf,
        g: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Evaluate every equation of the diagrammatic field calculus.
    Axioms {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        poly: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

enum Failure {
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn check(e: impl std::fmt::Display) -> Failure {
    Failure::Check(e.to_string())
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Construct { p, n, poly, emit, out: dir, seed, tol, canonical } => {
            construct(p, n, poly.as_deref(), emit, &dir, seed, tol, canonical, out)
        }
        Command::Verify { path, tol } => verify(&path, tol, out),
        Command::Theta { ueb, out: target, eigendata, seed, tol } => {
            theta_cmd(&ueb, &target, eigendata.as_deref(), seed, tol, out)
        }
        Command::Phi { mub, hadamards, g, out: target, tol } => phi_cmd(&mub, &hadamards, &g, &target, tol, out),
        Command::Axioms { p, n, poly, tol, json } => axioms_cmd(p, n, poly.as_deref(), tol, json.as_deref(), out),
    }
}

fn say(out: &mut dyn Write, line: impl std::fmt::Display) -> Outcome {
    writeln!(out, "{line}").map_err(usage)
}

fn write_manifest(path: &Path, m: &Manifest) -> Outcome {
    fs::write(path, m.to_json()).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_manifest(path: &Path) -> std::result::Result<Manifest, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Manifest::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn construct(
    p: usize,
    n: usize,
    poly: Option<&[usize]>,
    emit: Emit,
    dir: &Path,
    seed: u64,
    tol: f64,
    canonical: bool,
    out: &mut dyn Write,
) -> Outcome {
    let f = FiniteField::new(p, n, poly).map_err(usage)?;
    fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let chi = additive_character_matrix(&f);
    let mut u = ueb_from_field(&f);
    if canonical {
        let d = f.order();
        let w = chi.matrix().scale(C64::new(1.0 / (d as f64).sqrt(), 0.0));
        u = conjugate_ueb(&u, &w, tol).map_err(usage)?;
    }
    let wants = |e: Emit| emit == e || emit == Emit::All;
    let mut written = Vec::new();
    if emit == Emit::All {
        written.push(("field.json", Manifest::Field(FieldSpec::of(&f))));
    }
    if wants(Emit::Ueb) {
        written.push(("ueb.json", Manifest::from_ueb(&u, Some(&f))));
    }
    if wants(Emit::Mub) {
        let m = theta(&u, tol, seed).map_err(usage)?;
        written.push(("mub.json", Manifest::from_mub(&m)));
    }
    if wants(Emit::Chi) {
        written.push(("chi.json", Manifest::from_hadamard(&chi)));
    }
    if wants(Emit::Psi) {
        written.push(("psi.json", Manifest::from_hadamard(&multiplicative_character_matrix(&f))));
    }
    for (name, m) in &written {
        let path = dir.join(name);
        write_manifest(&path, m)?;
        say(out, format!("wrote {}", path.display()))?;
    }
    Ok(())
}

fn verdict(out: &mut dyn Write, pass: bool, what: &str) -> Outcome {
    say(out, format!("{}: {what}", if pass { "PASS" } else { "FAIL" }))?;
    if pass {
        Ok(())
    } else {
        Err(check(format!("{what} failed")))
    }
}

fn verify(path: &Path, tol: f64, out: &mut dyn Write) -> Outcome {
    let manifest = read_manifest(path)?;
    say(out, format!("kind: {}", manifest.kind()))?;
    match manifest {
        Manifest::Field(spec) => {
            let f = spec.build().map_err(check)?;
            say(out, format!("order: {}", f.order()))?;
            verdict(out, true, "field")
        }
        Manifest::Hadamard(doc) => {
            let h = doc.to_hadamard().map_err(usage)?;
            let r = hadamard_residual(h.matrix()).map_err(usage)?;
            say(out, format!("hadamard residual: {r:.3e}"))?;
            say(out, format!("dephased: {}", is_dephased(h.matrix(), tol).map_err(usage)?))?;
            verdict(out, r < tol, "is_hadamard")
        }
        Manifest::ControlledHadamard(doc) => {
            let h = doc.to_controlled_hadamard().map_err(usage)?;
            let mut worst: f64 = 0.0;
            for (x, m) in h.members().iter().enumerate() {
                let r = hadamard_residual(m).map_err(usage)?;
                say(out, format!("member {x} hadamard residual: {r:.3e}"))?;
                worst = worst.max(r);
            }
            verdict(out, worst < tol, "is_controlled_hadamard")
        }
        Manifest::Ueb(doc) => {
            let u = doc.to_ueb().map_err(usage)?;
            let r = partition_residual(&u).map_err(usage)?;
            say(out, format!("unitarity residual: {:.3e}", r.ueb.unitarity))?;
            say(out, format!("trace-law residual: {:.3e}", r.ueb.trace_law))?;
            say(out, format!("identity residual: {:.3e}", r.identity))?;
            say(out, format!("C_* commutator residual: {:.3e}", r.star_commutator))?;
            say(out, format!("C_x commutator residual: {:.3e}", r.class_commutator))?;
            let sizes: Vec<String> = r.class_sizes.iter().map(usize::to_string).collect();
            say(out, format!("class sizes: {}", sizes.join(",")))?;
            verdict(out, r.passes(tol), "is_partitioned_ueb")
        }
        Manifest::Mub(doc) => {
            let m = doc.to_mub().map_err(usage)?;
            let r = mub_family_residual(&m).map_err(usage)?;
            say(out, format!("overlap residual: {r:.3e}"))?;
            let pass = match is_maximal_mub_family(&m, tol) {
                Ok(pass) => pass,
                Err(e @ Error::NotUnitary(_)) => {
                    say(out, &e)?;
                    false
                }
                Err(e) => return Err(usage(e)),
            };
            verdict(out, pass, "is_maximal_mub_family")
        }
        Manifest::Report(doc) => {
            for c in &doc.entries {
                say(out, format!("{} {} {:.3e}", if c.pass { "ok  " } else { "FAIL" }, c.equation, c.residual))?;
            }
            verdict(out, doc.passed && doc.entries.iter().all(|c| c.pass), "report")
        }
    }
}

fn theta_cmd(ueb: &Path, target: &Path, eigen_dir: Option<&Path>, seed: u64, tol: f64, out: &mut dyn Write) -> Outcome {
    let Manifest::Ueb(doc) = read_manifest(ueb)? else {
        return Err(usage(format!("{}: expected a ueb manifest", ueb.display())));
    };
    let u = doc.to_ueb().map_err(usage)?;
    let m = theta(&u, tol, seed).map_err(check)?;
    write_manifest(target, &Manifest::from_mub(&m))?;
    say(out, format!("wrote {}", target.display()))?;
    if let Some(dir) = eigen_dir {
        let data = eigendata(&u, tol, seed).map_err(check)?;
        fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        for (name, m) in
            [("h.json", Manifest::from_controlled_hadamard(&data.h)), ("g.json", Manifest::from_hadamard(&data.g))]
        {
            let path = dir.join(name);
            write_manifest(&path, &m)?;
            say(out, format!("wrote {}", path.display()))?;
        }
    }
    Ok(())
}

fn phi_cmd(mub: &Path, hadamards: &Path, g: &Path, target: &Path, tol: f64, out: &mut dyn Write) -> Outcome {
    let Manifest::Mub(doc) = read_manifest(mub)? else {
        return Err(usage(format!("{}: expected a mub manifest", mub.display())));
    };
    let m = doc.to_mub().map_err(usage)?;
    let h = match read_manifest(hadamards)? {
        Manifest::ControlledHadamard(doc) => doc.to_controlled_hadamard().map_err(usage)?,
        // a single Hadamard is used for every control value
        Manifest::Hadamard(doc) => ControlledHadamard::constant(&doc.to_hadamard().map_err(usage)?, m.dimension()),
        other => return Err(usage(format!("{}: unexpected kind {}", hadamards.display(), other.kind()))),
    };
    let Manifest::Hadamard(gdoc) = read_manifest(g)? else {
        return Err(usage(format!("{}: expected a hadamard manifest", g.display())));
    };
    let g = gdoc.to_hadamard().map_err(usage)?;
    let result = phi_h(&m, &h, &g, tol).map_err(|e| match e {
        Error::PreconditionFailed(law) => check(law),
        other => check(other),
    })?;
    for w in &result.warnings {
        say(out, format!("warning: {w}"))?;
    }
    write_manifest(target, &Manifest::from_ueb(&result.ueb, None))?;
    say(out, format!("wrote {}", target.display()))
}

fn axioms_cmd(
    p: usize,
    n: usize,
    poly: Option<&[usize]>,
    tol: f64,
    json: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let f = FiniteField::new(p, n, poly).map_err(usage)?;
    let t = build_structure_tensors(&f);
    let report = verify_all(&t, tol).map_err(check)?;
    for c in &report.entries {
        say(out, format!("{} {:<48} {:.3e}", if c.pass { "ok  " } else { "FAIL" }, c.equation, c.residual))?;
    }
    let failures = report.failures().count();
    say(out, format!("{} equations, {} failed", report.entries.len(), failures))?;
    if let Some(path) = json {
        let doc =
            ReportDoc { field: Some(FieldSpec::of(&f)), passed: report.passed(), entries: report.entries.clone() };
        write_manifest(path, &Manifest::Report(doc))?;
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(check(format!("{failures} equations failed")))
    }
}
