//! Subcommand dispatch.
//!
//! Exit codes are part of the contract: 0 success (including negative or
//! unknown verdicts — those are successful computations), 2 parse errors
//! (expressions, JSON, usage), 3 precondition violations (non-isolated
//! germs, ring mismatches, invalid factorizations), 4 budget exhaustion
//! (degree caps hit without a certificate).  1 is reserved for internal
//! errors that indicate a bug.  Diagnostics go to stderr only.

use std::io::{Read, Write};
use std::sync::Arc;

use clap::{ArgAction, Args, Parser, Subcommand};
use serde::Deserialize;

use singeq_core::classify::{decide_dg_equivalence, verify_verdict, DecisionBudget};
use singeq_core::error::Error;
use singeq_core::mf::{stable_hom_dimension, MatrixFactorization, MfMorphism, PolyMat};
use singeq_core::ring::RingContext;
use singeq_core::singularity::{invariants, tyurina_algebra, Germ};

use crate::manifest::{
    germ_from_desc, hom_manifest, invariants_manifest, mf_manifest, tyurina_manifest,
    verdict_from_manifest, verdict_manifest, GermDesc, Manifest, Payload,
};
use crate::parser::parse_poly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "singeq",
    about = "Exact invariants of hypersurface singularities, matrix factorizations, and the stable-equivalence classifier",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Milnor/Tyurina numbers, corank, determinacy bound and ADE type of a germ
    Invariants(GermArgs),
    /// Full Tyurina algebra: basis, Hilbert function, multiplication table
    Tyurina(GermArgs),
    /// Check that a manifest holds a valid matrix factorization
    MfValidate(MfArgs),
    /// Swap the two matrices (the shift functor)
    MfShift(MfArgs),
    /// Extend a factorization to f + x*y (or f + u^2 + v^2 with --squares)
    MfKnoerrer(KnoerrerArgs),
    /// Split off trivial summands
    MfReduce(MfArgs),
    /// Mapping cone of a morphism between two factorizations
    MfCone(ConeArgs),
    /// Truncated stable-Hom dimension between two factorizations
    MfHom(HomArgs),
    /// Decide stable equivalence of two germs
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
pub struct GermArgs {
    /// Comma-separated variable names, e.g. --vars z0,z1
    #[arg(long)]
    pub vars: String,
    /// Polynomial expression for the germ
    pub germ: String,
    #[arg(long, default_value_t = 32)]
    pub degree_cap: u32,
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct MfArgs {
    /// Path to a manifest with an mf payload, or '-' for standard input
    #[arg(long, default_value = "-")]
    pub input: String,
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct KnoerrerArgs {
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Names of the two fresh variables
    #[arg(long, default_value = "x,y")]
    pub fresh: String,
    /// Use square coordinates: extend by u^2 + v^2 instead of x*y
    #[arg(long)]
    pub squares: bool,
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct ConeArgs {
    /// Manifest of the source factorization (path or '-')
    #[arg(long)]
    pub source: String,
    /// Manifest of the target factorization (path)
    #[arg(long)]
    pub target: String,
    /// Morphism component u as a JSON matrix of expressions (inline or @path)
    #[arg(long)]
    pub u: String,
    /// Morphism component v as a JSON matrix of expressions (inline or @path)
    #[arg(long)]
    pub v: String,
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct HomArgs {
    #[arg(long)]
    pub source: String,
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value_t = 4)]
    pub degree_bound: u32,
    #[arg(long, default_value_t = 32)]
    pub degree_cap: u32,
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Variable declaration for each germ, given once per germ
    #[arg(long = "vars", action = ArgAction::Append)]
    pub vars: Vec<String>,
    /// The two germ expressions
    pub germs: Vec<String>,
    #[arg(long, default_value_t = 32)]
    pub degree_cap: u32,
    /// Witness-search effort: number of linear candidates
    #[arg(long, default_value_t = 512)]
    pub budget: usize,
    /// Replay the certificate of the fresh verdict before emitting it
    #[arg(long)]
    pub verify: bool,
    /// Read newline-delimited JSON germ pairs from standard input
    #[arg(long)]
    pub batch: bool,
    /// Re-check the certificate embedded in a saved verdict manifest
    #[arg(long)]
    pub replay: Option<String>,
    #[arg(long, default_value = "json")]
    pub format: String,
}

/// A failure carrying its exit code and a stderr message.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: EXIT_PARSE, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INTERNAL, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::IncompleteBasis { .. } | Error::BudgetExhausted { .. } | Error::Inconclusive { .. } => {
                EXIT_BUDGET
            }
            _ => EXIT_PRECONDITION,
        };
        Failure { code, message: err.to_string() }
    }
}

impl From<crate::parser::ParseError> for Failure {
    fn from(err: crate::parser::ParseError) -> Self {
        Failure::parse(err.to_string())
    }
}

/// Run the CLI against explicit argv and streams; returns the exit code.
pub fn execute<W: Write, E: Write>(argv: &[String], out: &mut W, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            return EXIT_PARSE;
        }
    };
    match run_command(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn check_format(format: &str) -> Result<(), Failure> {
    if format == "json" {
        Ok(())
    } else {
        Err(Failure::parse(format!("unsupported format '{format}' (only json in v1)")))
    }
}

fn split_vars(vars: &str) -> Vec<String> {
    vars.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_germ(vars: &str, text: &str) -> Result<Germ, Failure> {
    let ring = RingContext::new(split_vars(vars))?;
    let poly = parse_poly(text, &ring)?;
    Ok(Germ::new(poly)?)
}

fn emit<W: Write>(out: &mut W, manifest: &Manifest) -> Result<(), Failure> {
    writeln!(out, "{}", manifest.to_json())
        .map_err(|e| Failure::internal(format!("cannot write to stdout: {e}")))
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::parse(format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))
    }
}

/// Inline JSON or `@path` indirection for small arguments.
fn read_inline_or_file(arg: &str) -> Result<String, Failure> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn load_mf(path: &str) -> Result<MatrixFactorization, Failure> {
    let text = read_input(path)?;
    let manifest =
        Manifest::from_json(&text).map_err(|e| Failure::parse(format!("bad manifest: {e}")))?;
    mf_from_manifest(&manifest)
}

fn mf_from_manifest(manifest: &Manifest) -> Result<MatrixFactorization, Failure> {
    let Payload::Mf(desc) = &manifest.payload else {
        return Err(Failure::parse("manifest payload is not an mf"));
    };
    let ring_desc =
        manifest.ring.as_ref().ok_or_else(|| Failure::parse("mf manifest missing ring"))?;
    let ring = RingContext::new(ring_desc.variables.clone())?;
    let a = parse_matrix(&desc.a, &ring)?;
    let b = parse_matrix(&desc.b, &ring)?;
    let f = parse_poly(&desc.f, &ring)?;
    Ok(MatrixFactorization::validate(a, b, f)?)
}

fn parse_matrix(rows: &[Vec<String>], ring: &Arc<RingContext>) -> Result<PolyMat, Failure> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(r * c);
    for row in rows {
        if row.len() != c {
            return Err(Failure::parse("ragged matrix rows"));
        }
        for cell in row {
            entries.push(parse_poly(cell, ring)?);
        }
    }
    Ok(PolyMat::new(ring, r, c, entries)?)
}

fn parse_morphism_matrix(arg: &str, ring: &Arc<RingContext>) -> Result<PolyMat, Failure> {
    let text = read_inline_or_file(arg)?;
    let rows: Vec<Vec<String>> = serde_json::from_str(&text)
        .map_err(|e| Failure::parse(format!("bad matrix JSON: {e}")))?;
    parse_matrix(&rows, ring)
}

#[derive(Deserialize)]
struct BatchPair {
    left: GermDesc,
    right: GermDesc,
}

fn run_command<W: Write>(command: Command, out: &mut W) -> Result<(), Failure> {
    match command {
        Command::Invariants(args) => {
            check_format(&args.format)?;
            let germ = parse_germ(&args.vars, &args.germ)?;
            let inv = invariants(&germ, args.degree_cap)?;
            emit(out, &invariants_manifest(&germ, &inv))
        }
        Command::Tyurina(args) => {
            check_format(&args.format)?;
            let germ = parse_germ(&args.vars, &args.germ)?;
            let algebra = tyurina_algebra(&germ, args.degree_cap)?;
            emit(out, &tyurina_manifest(&germ, &algebra))
        }
        Command::MfValidate(args) => {
            check_format(&args.format)?;
            let mf = load_mf(&args.input)?;
            emit(out, &mf_manifest(&mf))
        }
        Command::MfShift(args) => {
            check_format(&args.format)?;
            let mf = load_mf(&args.input)?;
            emit(out, &mf_manifest(&mf.shift()))
        }
        Command::MfKnoerrer(args) => {
            check_format(&args.format)?;
            let mf = load_mf(&args.input)?;
            let names = split_vars(&args.fresh);
            if names.len() != 2 {
                return Err(Failure::parse("--fresh needs exactly two names, e.g. x,y"));
            }
            let extended = if args.squares {
                mf.knoerrer_squares(&names[0], &names[1])?
            } else {
                mf.knoerrer(&names[0], &names[1])?
            };
            emit(out, &mf_manifest(&extended))
        }
        Command::MfReduce(args) => {
            check_format(&args.format)?;
            let mf = load_mf(&args.input)?;
            emit(out, &mf_manifest(&singeq_core::mf::reduce(&mf)))
        }
        Command::MfCone(args) => {
            check_format(&args.format)?;
            let source = load_mf(&args.source)?;
            let target = load_mf(&args.target)?;
            let u = parse_morphism_matrix(&args.u, source.ring())?;
            let v = parse_morphism_matrix(&args.v, source.ring())?;
            let phi = MfMorphism::new(source, target, u, v)?;
            emit(out, &mf_manifest(&phi.cone()?))
        }
        Command::MfHom(args) => {
            check_format(&args.format)?;
            let source = load_mf(&args.source)?;
            let target = load_mf(&args.target)?;
            let dim = stable_hom_dimension(&source, &target, args.degree_bound, args.degree_cap)?;
            emit(out, &hom_manifest(source.ring(), &dim))
        }
        Command::Classify(args) => run_classify(args, out),
    }
}

fn run_classify<W: Write>(args: ClassifyArgs, out: &mut W) -> Result<(), Failure> {
    check_format(&args.format)?;
    let budget =
        DecisionBudget { degree_cap: args.degree_cap, linear_candidates: args.budget };

    if let Some(path) = &args.replay {
        let text = read_input(path)?;
        let manifest =
            Manifest::from_json(&text).map_err(|e| Failure::parse(format!("bad manifest: {e}")))?;
        let (left, right, verdict, stored_budget) =
            verdict_from_manifest(&manifest).map_err(Failure::parse)?;
        verify_verdict(&left, &right, &verdict, &stored_budget).map_err(|msg| Failure {
            code: EXIT_PRECONDITION,
            message: format!("certificate replay failed: {msg}"),
        })?;
        return emit(out, &verdict_manifest(&left, &right, &verdict, &stored_budget));
    }

    if args.batch {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::parse(format!("cannot read standard input: {e}")))?;
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let pair: BatchPair = serde_json::from_str(line)
                .map_err(|e| Failure::parse(format!("bad batch line: {e}")))?;
            let left = germ_from_desc(&pair.left).map_err(Failure::parse)?;
            let right = germ_from_desc(&pair.right).map_err(Failure::parse)?;
            classify_pair(&left, &right, &budget, args.verify, out)?;
        }
        return Ok(());
    }

    if args.vars.len() != 2 || args.germs.len() != 2 {
        return Err(Failure::parse(
            "classify needs two germs, each preceded by its own --vars declaration",
        ));
    }
    let left = parse_germ(&args.vars[0], &args.germs[0])?;
    let right = parse_germ(&args.vars[1], &args.germs[1])?;
    classify_pair(&left, &right, &budget, args.verify, out)
}

fn classify_pair<W: Write>(
    left: &Germ,
    right: &Germ,
    budget: &DecisionBudget,
    verify: bool,
    out: &mut W,
) -> Result<(), Failure> {
    let verdict = decide_dg_equivalence(left, right, budget)?;
    if verify {
        verify_verdict(left, right, &verdict, budget)
            .map_err(|msg| Failure::internal(format!("fresh verdict failed replay: {msg}")))?;
    }
    emit(out, &verdict_manifest(left, right, &verdict, budget))
}
