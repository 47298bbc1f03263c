//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use annkh::complex::{build_complex, build_cube, check_functoriality, check_splitting, ChainComplex};
use annkh::diagram::{AnnularDiagram, DiagramFile, OrientationChoice};
use annkh::homology::{homology, localized_homology, span_in_homology, verify_canonical, BigradedHomology};
use annkh::ring::{
    AlphaEval, AlphaPolys, AlphaRing, CoefficientRing, EuclideanRing, Integers, PrimeField, RatPolyH, Rationals,
};
use annkh::tl::{kernel_rank_experiment, parse_tangle, reduce, spin_evaluate};
use annkh::tqft::{Tqft, Variant};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "annkh", version, about = "Equivariant annular Khovanov homology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    /// Diagram file (JSON).
    pub file: PathBuf,
    /// Rotate slightly when the diagram is tangent to the reference ray.
    #[arg(long)]
    pub nudge: bool,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// generic, int, rat, gfP, qh or alpha:a0,a1.
    #[arg(long)]
    pub ring: Option<String>,
    /// annular, planar, or an explicit variant name.
    #[arg(long, default_value = "annular")]
    pub variant: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the homology table.
    Homology {
        #[command(flatten)]
        input: DiagramArgs,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        /// Also write the chain complex to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Check d^2 = 0, gradings, and the splitting of the full maps.
    Verify {
        #[command(flatten)]
        input: DiagramArgs,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Compare the homology of two diagrams.
    Invariance {
        first: PathBuf,
        second: PathBuf,
        /// Compare over these rings only (repeatable).
        #[arg(long)]
        ring: Vec<String>,
        #[arg(long, default_value = "annular")]
        variant: String,
        #[arg(long)]
        nudge: bool,
    },
    /// Total rank of the localized homology.
    LeeRank {
        #[command(flatten)]
        input: DiagramArgs,
    },
    /// Canonical generators for every orientation.
    Canonical {
        #[command(flatten)]
        input: DiagramArgs,
    },
    /// Reduce a dotted tangle and evaluate it on essential circles.
    TlEval {
        tangle: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "generic")]
        ring: String,
        #[arg(long, default_value = "annular")]
        variant: String,
    },
    /// Rank of the evaluation map on reduced tangles.
    TlRank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Values of (a0, a1).
        #[arg(long, default_value = "0,1")]
        alpha: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("unsupported ring {ring} for {what}")]
    UnsupportedRing { ring: String, what: &'static str },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// Result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stderr: text, ..Default::default() }
            } else {
                Outcome { code: 0, stdout: text, ..Default::default() }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli.command, &mut out) {
        Ok(()) => Outcome { code: 0, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: out, stderr: format!("annkh: {e}\n") },
    }
}

pub fn load(file: &Path, nudge: bool) -> Result<AnnularDiagram, CliError> {
    if !nudge {
        return AnnularDiagram::load(file).map_err(|e| CliError::Input(format!("{}: {e}", file.display())));
    }
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    DiagramFile::from_json(&text)
        .and_then(|f| AnnularDiagram::from_file_nudged(&f))
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))
}

pub fn parse_ring(text: &str) -> Result<CoefficientRing, CliError> {
    text.parse().map_err(input)
}

/// `annular` and `planar` pick a variant to suit the ring; other names are
/// taken literally.
pub fn resolve_variant(flag: &str, ring: &CoefficientRing) -> Result<Variant, CliError> {
    match flag {
        "annular" => Ok(match ring {
            CoefficientRing::GenericAlpha => Variant::AnnularAlpha,
            CoefficientRing::RatPolyH => Variant::AnnularH,
            CoefficientRing::RatAlphaEval(a, b) if a != b => Variant::AnnularD,
            CoefficientRing::RatAlphaEval(..) => Variant::AnnularAlpha,
            CoefficientRing::Int | CoefficientRing::Rat | CoefficientRing::PrimeField(_) => Variant::AnnularZero,
        }),
        other => other.parse().map_err(CliError::Input),
    }
}

macro_rules! with_alpha_ring {
    ($desc:expr, $r:ident => $body:expr) => {
        match $desc {
            CoefficientRing::Int => { let $r = Integers; $body }
            CoefficientRing::Rat => { let $r = Rationals; $body }
            CoefficientRing::PrimeField(p) => { let $r = PrimeField::new(*p).map_err(input)?; $body }
            CoefficientRing::RatPolyH => { let $r = RatPolyH; $body }
            CoefficientRing::RatAlphaEval(a, b) => { let $r = AlphaEval::new(a.clone(), b.clone()); $body }
            CoefficientRing::GenericAlpha => { let $r = AlphaPolys; $body }
        }
    };
}

macro_rules! with_euclidean_ring {
    ($desc:expr, $what:expr, $r:ident => $body:expr) => {
        match $desc {
            CoefficientRing::Int => { let $r = Integers; $body }
            CoefficientRing::Rat => { let $r = Rationals; $body }
            CoefficientRing::PrimeField(p) => { let $r = PrimeField::new(*p).map_err(input)?; $body }
            CoefficientRing::RatPolyH => { let $r = RatPolyH; $body }
            CoefficientRing::RatAlphaEval(a, b) => { let $r = AlphaEval::new(a.clone(), b.clone()); $body }
            CoefficientRing::GenericAlpha => {
                return Err(CliError::UnsupportedRing { ring: CoefficientRing::GenericAlpha.to_string(), what: $what })
            }
        }
    };
}

fn complex_over<R: AlphaRing>(ring: R, variant: Variant, d: &AnnularDiagram) -> Result<ChainComplex<R>, CliError> {
    let t = Tqft::new(ring, variant).map_err(input)?;
    build_complex(d, &t).map_err(input)
}

fn homology_over<R: EuclideanRing + AlphaRing>(ring: R, variant: Variant, d: &AnnularDiagram) -> Result<(BigradedHomology, String), CliError> {
    let c = complex_over(ring, variant, d)?;
    Ok((homology(&c), c.dump()))
}

pub fn compute_homology(d: &AnnularDiagram, ring: &CoefficientRing, variant: Variant) -> Result<(BigradedHomology, String), CliError> {
    if variant == Variant::Beta {
        return Err(CliError::Input("homology is not defined for the beta variant".into()));
    }
    with_euclidean_ring!(ring, "homology", r => homology_over(r, variant, d))
}

/// One named check and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn line<E: std::fmt::Debug>(name: &'static str, r: Result<String, E>) -> CheckLine {
    match r {
        Ok(detail) => CheckLine { name, passed: true, detail },
        Err(e) => CheckLine { name, passed: false, detail: format!("{e:?}") },
    }
}

fn checks_over<R: AlphaRing>(ring: R, variant: Variant, d: &AnnularDiagram) -> Result<Vec<CheckLine>, CliError> {
    let t = Tqft::new(ring, variant).map_err(input)?;
    let cube = build_cube(d, &t).map_err(input)?;
    let c = build_complex(d, &t).map_err(input)?;
    let mut lines = vec![
        line("d_squared", c.verify_d_squared().map(|_| format!("{} differentials", c.differentials.len()))),
        line("grading", c.check_grading().map(|_| String::new())),
        line("splitting", check_splitting(&cube, &t).map(|n| format!("{n} edges"))),
        line("functoriality", check_functoriality(&cube, &t).map(|n| format!("{n} pairs"))),
    ];
    if variant == Variant::Beta {
        lines.push(line("beta", c.verify_beta().map(|_| String::new())));
    }
    Ok(lines)
}

pub fn verify(d: &AnnularDiagram, ring: &CoefficientRing, variant: Variant) -> Result<Vec<CheckLine>, CliError> {
    with_alpha_ring!(ring, r => checks_over(r, variant, d))
}

fn parse_alpha(text: &str) -> Result<(BigRational, BigRational), CliError> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| CliError::Input(format!("expected a0,a1, got {text:?}")))?;
    let q = |s: &str| s.trim().parse::<BigRational>().map_err(|e| CliError::Input(format!("{s:?}: {e}")));
    Ok((q(a)?, q(b)?))
}

fn render_lines(lines: &[CheckLine], out: &mut String) -> bool {
    for l in lines {
        let verdict = if l.passed { "PASS" } else { "FAIL" };
        if l.detail.is_empty() {
            let _ = writeln!(out, "{}\t{verdict}", l.name);
        } else {
            let _ = writeln!(out, "{}\t{verdict}\t{}", l.name, l.detail);
        }
    }
    lines.iter().all(|l| l.passed)
}

fn tl_eval_over<R: AlphaRing>(ring: R, variant: Variant, f: &annkh::tl::TlMorphism, out: &mut String) -> Result<(), CliError> {
    let t = Tqft::new(ring, variant).map_err(input)?;
    let m = spin_evaluate(f, &t).map_err(input)?;
    let r = t.ring();
    let _ = writeln!(out, "map\t{}x{}", m.matrix.rows(), m.matrix.cols());
    for (row, col, v) in m.matrix.iter() {
        let to = m.codomain.label(row);
        let from = m.domain.label(col);
        let _ = writeln!(out, "{}\t{}\t{}", if from.is_empty() { "1" } else { &from }, if to.is_empty() { "1" } else { &to }, r.format(v));
    }
    Ok(())
}

fn execute(cmd: &Command, out: &mut String) -> Result<(), CliError> {
    match cmd {
        Command::Homology { input: a, ring, format, dump } => {
            let desc = parse_ring(ring.ring.as_deref().unwrap_or("int"))?;
            let variant = resolve_variant(&ring.variant, &desc)?;
            let d = load(&a.file, a.nudge)?;
            let (h, text) = compute_homology(&d, &desc, variant)?;
            if let Some(path) = dump {
                std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            match format {
                Format::Tsv => out.push_str(&h.to_tsv()),
                Format::Json => {
                    out.push_str(&h.to_json());
                    out.push('\n');
                }
            }
            Ok(())
        }
        Command::Verify { input: a, ring } => {
            let desc = parse_ring(ring.ring.as_deref().unwrap_or("generic"))?;
            let variant = resolve_variant(&ring.variant, &desc)?;
            let d = load(&a.file, a.nudge)?;
            let lines = verify(&d, &desc, variant)?;
            if render_lines(&lines, out) {
                Ok(())
            } else {
                Err(CliError::Failed("verification failed".into()))
            }
        }
        Command::Invariance { first, second, ring, variant, nudge } => {
            let names: Vec<String> = if ring.is_empty() {
                ["int", "gf2", "qh", "alpha:0,1"].map(String::from).to_vec()
            } else {
                ring.clone()
            };
            let (d1, d2) = (load(first, *nudge)?, load(second, *nudge)?);
            let mut same = true;
            for name in &names {
                let desc = parse_ring(name)?;
                let v = resolve_variant(variant, &desc)?;
                let equal = compute_homology(&d1, &desc, v)?.0 == compute_homology(&d2, &desc, v)?.0;
                same &= equal;
                let _ = writeln!(out, "{desc}\t{v}\t{}", if equal { "EQUAL" } else { "DIFFERENT" });
            }
            let _ = writeln!(out, "{}", if same { "PASS" } else { "FAIL" });
            if same {
                Ok(())
            } else {
                Err(CliError::Failed("homology differs".into()))
            }
        }
        Command::LeeRank { input: a } => {
            let d = load(&a.file, a.nudge)?;
            let rank = localized_homology(&d).map_err(input)?.total_rank();
            let expect = 1usize << d.component_count();
            let ok = rank == expect;
            let _ = writeln!(out, "{rank}\t{}", if ok { "PASS" } else { "FAIL" });
            if ok {
                Ok(())
            } else {
                Err(CliError::Failed(format!("expected rank {expect}")))
            }
        }
        Command::Canonical { input: a } => {
            let d = load(&a.file, a.nudge)?;
            let c = complex_over(AlphaEval::from_ints(0, 1), Variant::AnnularD, &d)?;
            let _ = writeln!(out, "orientation\tsmoothing\tgenerator\tdegree\tadeg\texpected\tcycle\tverdict");
            let mut all = true;
            let mut gens = Vec::new();
            for o in OrientationChoice::all(d.component_count()) {
                let rep = verify_canonical(&c, &d, &o).map_err(input)?;
                let flags: String = o.flags.iter().map(|&f| if f { '1' } else { '0' }).collect();
                let u: String = rep.generator.smoothing.iter().map(|b| char::from(b'0' + b)).collect();
                let g = &rep.generator;
                let _ = writeln!(
                    out,
                    "{flags}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    if u.is_empty() { "-" } else { &u },
                    g.word_label,
                    g.degree,
                    g.adeg,
                    rep.expected_adeg,
                    if rep.is_cycle { "yes" } else { "no" },
                    if rep.passed() { "PASS" } else { "FAIL" }
                );
                all &= rep.passed();
                gens.push(rep.generator);
            }
            let span = span_in_homology(&c, &gens);
            let expect = 1usize << d.component_count();
            all &= span == expect;
            let _ = writeln!(out, "span\t{span}\t{expect}\t{}", if span == expect { "PASS" } else { "FAIL" });
            if all {
                Ok(())
            } else {
                Err(CliError::Failed("canonical generator check failed".into()))
            }
        }
        Command::TlEval { tangle, n, m, ring, variant } => {
            let t = parse_tangle(tangle, *n, *m).map_err(input)?;
            let f = reduce(&t);
            let _ = writeln!(out, "reduced\t{f}");
            let desc = parse_ring(ring)?;
            let v = resolve_variant(variant, &desc)?;
            with_alpha_ring!(&desc, r => tl_eval_over(r, v, &f, out))
        }
        Command::TlRank { n, m, alpha } => {
            let (a0, a1) = parse_alpha(alpha)?;
            let (rank, kernel) = kernel_rank_experiment(*n, *m, AlphaEval::new(a0, a1)).map_err(input)?;
            let _ = writeln!(out, "rank\t{rank}\nkernel\t{kernel}");
            Ok(())
        }
    }
}
