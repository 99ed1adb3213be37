use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use etalink::eta::{rho, sigma, sigma_f, EvalOptions};
use etalink::reps::UnitaryTuple;
use etalink::seifert::{random_certificate_search, verify_metabolic, SeifertMatrix};
use etalink::Mode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::examples::run_examples;
use crate::fixtures;
use crate::formats::{digest, parse_certificate, parse_forms, parse_rep, parse_seifert, read_text, CertificateFile, FormatError};
use crate::report::{certify_p_group, ObstructionReport, CERTIFY_BOUND};
use crate::scan::{run_scan, to_csv, Family, ScanOutcome, ScanSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_OBSTRUCTION: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    AbelianGrid,
    PdpEnumeration,
    RandomUnitary,
}

fn parse_epsilon(s: &str) -> Result<i8, String> {
    match s.trim_start_matches('+') {
        "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("epsilon must be +1 or -1, got {s}")),
    }
}

/// Exact and floating-point rho-invariants and signatures of boundary-link
/// Seifert matrices. File arguments of the form `@name` load a shipped example.
#[derive(Debug, Parser)]
#[command(name = "etalink", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Sign of the Seifert form; overrides the file.
    #[arg(long, global = true, allow_negative_numbers = true, value_parser = parse_epsilon, conflicts_with = "q")]
    pub epsilon: Option<i8>,
    /// Dimension parameter; sets epsilon = (-1)^q.
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Arithmetic; defaults to exact when the representation is exact.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Accept Seifert matrices that violate the axioms (stamped in the output).
    #[arg(long, global = true)]
    pub relaxed: bool,
    /// Replace a non-hermitian twisted matrix by its hermitian part.
    #[arg(long, global = true)]
    pub hermitize: bool,
    /// Tolerance for floating-point zero tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    pub out: OutFormat,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for scans.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Seifert matrix axioms.
    Validate { seifert: String },
    /// Multivariable Alexander polynomial det(AT - A^t).
    Alexander { seifert: String },
    /// Rho-invariant for a unitary representation.
    Rho {
        seifert: String,
        #[arg(long)]
        rep: String,
    },
    /// Signature of the twisted matrix and singular-set membership.
    Sigma {
        seifert: String,
        #[arg(long)]
        rep: String,
    },
    /// Signature of the form assembled from blocks F_ij.
    SigmaF {
        seifert: String,
        #[arg(long)]
        forms: String,
    },
    /// Rho over the n x ... x n grid of one-dimensional representations.
    AbelianScan {
        seifert: String,
        #[arg(long, default_value_t = 64)]
        n: u64,
    },
    /// Rho over a family of representations.
    Scan {
        seifert: String,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 16)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        max_order: u64,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Check a metabolizer certificate, or search for one.
    MetabolicVerify {
        seifert: String,
        #[arg(long)]
        cert: Option<String>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        bound: i64,
    },
    /// Replay the worked examples on the shipped fixtures.
    Examples {
        #[arg(long, default_value_t = 64)]
        n: u64,
    },
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<etalink::Error> for Failure {
    fn from(e: etalink::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(arg: &str) -> Result<String, Failure> {
    if let Some(name) = arg.strip_prefix('@') {
        return fixtures::get(name)
            .map(str::to_string)
            .ok_or_else(|| Failure::Input(format!("no shipped example named {name}")));
    }
    Ok(read_text(Path::new(arg))?)
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn epsilon(&self) -> Option<i8> {
        self.cli
            .epsilon
            .or(self.cli.q.map(|q| if q % 2 == 0 { 1 } else { -1 }))
    }

    fn opts(&self) -> EvalOptions {
        EvalOptions {
            hermitize: self.cli.hermitize,
            tol: self.cli.tol,
            ..Default::default()
        }
    }

    fn seifert(&self, arg: &str) -> Result<(SeifertMatrix, String), Failure> {
        let text = load(arg)?;
        let a = parse_seifert(&text, self.cli.relaxed)?;
        let a = match self.epsilon() {
            Some(e) if e != a.epsilon() => {
                let b = a.with_epsilon(e)?;
                if b.is_relaxed() && !self.cli.relaxed {
                    let list: Vec<String> = b.violations().iter().map(|v| v.to_string()).collect();
                    return Err(Failure::Input(format!(
                        "matrix violates the axioms for epsilon = {e}: {} (use --relaxed to continue)",
                        list.join("; ")
                    )));
                }
                b
            }
            _ => a,
        };
        Ok((a, digest(&text)))
    }

    fn rep(&self, arg: &str) -> Result<UnitaryTuple, Failure> {
        let alpha = parse_rep(&load(arg)?)?;
        match (self.cli.mode, alpha.mode()) {
            (Some(ModeArg::Float), Mode::Exact) => Ok(alpha.to_float()),
            (Some(ModeArg::Exact), Mode::Float) => Err(Failure::Input(
                "representation has floating-point entries; use --mode float".into(),
            )),
            _ => Ok(alpha),
        }
    }

    fn emit(&mut self, s: &str) {
        let _ = writeln!(self.out, "{s}");
    }

    fn emit_report(&mut self, r: &ObstructionReport) {
        match self.cli.out {
            OutFormat::Text => self.emit(&r.text()),
            OutFormat::Json => self.emit(&serde_json::to_string_pretty(r).expect("report serializes")),
            OutFormat::Csv => {
                self.emit("invariant,value,singular,verdict");
                self.emit(&format!("{},{},{},{}", r.invariant, r.value, r.singular, r.verdict.as_str()));
            }
        }
    }
}

fn sizes_text(sizes: &[usize]) -> String {
    let s: Vec<String> = sizes.iter().map(|g| g.to_string()).collect();
    format!("({})", s.join(","))
}

fn run_command(ctx: &mut Ctx) -> Result<i32, Failure> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Validate { seifert } => {
            let text = load(seifert)?;
            let a = match parse_seifert(&text, cli.relaxed) {
                Ok(a) => a,
                Err(FormatError::Math(etalink::Error::Axioms(list))) => {
                    return Err(Failure::Input(format!(
                        "not a boundary-link Seifert matrix: {list} (use --relaxed to continue)"
                    )))
                }
                Err(e) => return Err(e.into()),
            };
            let violations: Vec<String> = a.violations().iter().map(|v| v.to_string()).collect();
            match cli.out {
                OutFormat::Json => ctx.emit(
                    &serde_json::to_string_pretty(&json!({
                        "valid": violations.is_empty(),
                        "epsilon": a.epsilon(),
                        "sizes": a.sizes(),
                        "violations": violations,
                        "input_digest": digest(&text),
                    }))
                    .unwrap(),
                ),
                _ if violations.is_empty() => ctx.emit(&format!(
                    "valid ε={} boundary-link Seifert matrix, sizes {}",
                    a.epsilon(),
                    sizes_text(a.sizes())
                )),
                _ => {
                    ctx.emit(&format!(
                        "relaxed ε={} Seifert matrix, sizes {}, {} axiom violation(s):",
                        a.epsilon(),
                        sizes_text(a.sizes()),
                        violations.len()
                    ));
                    for v in &violations {
                        ctx.emit(&format!("  {v}"));
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Alexander { seifert } => {
            let (a, _) = ctx.seifert(seifert)?;
            let d = a.alexander();
            let n = d.normalized();
            match cli.out {
                OutFormat::Json => ctx.emit(
                    &serde_json::to_string_pretty(&json!({
                        "raw": d.to_string(),
                        "normalized": n.to_string(),
                        "relaxed": a.is_relaxed(),
                    }))
                    .unwrap(),
                ),
                _ => {
                    ctx.emit(&format!("raw: {d}"));
                    ctx.emit(&format!("normalized: {n}"));
                    if a.is_relaxed() {
                        ctx.emit("[relaxed]");
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Rho { seifert, rep } => {
            let (a, dig) = ctx.seifert(seifert)?;
            let alpha = ctx.rep(rep)?;
            let r = rho(&a, &alpha, None, &ctx.opts())?;
            let group = certify_p_group(&alpha, CERTIFY_BOUND);
            let report = ObstructionReport::from_rho(&dig, a.epsilon(), &alpha, &r, group);
            ctx.emit_report(&report);
            Ok(exit_for(report.verdict.is_obstruction()))
        }
        Command::Sigma { seifert, rep } => {
            let (a, dig) = ctx.seifert(seifert)?;
            let alpha = ctx.rep(rep)?;
            let s = sigma(&a, &alpha, &ctx.opts())?;
            let group = certify_p_group(&alpha, CERTIFY_BOUND);
            let report = ObstructionReport::from_sigma(&dig, a.epsilon(), a.is_relaxed(), Some(&alpha), &s, group);
            ctx.emit_report(&report);
            Ok(exit_for(report.verdict.is_obstruction()))
        }
        Command::SigmaF { seifert, forms } => {
            let (a, dig) = ctx.seifert(seifert)?;
            let f = parse_forms(&load(forms)?)?;
            let s = sigma_f(&a, &f, &ctx.opts())?;
            // a half-dimensional isotropic subspace forces |sign| <= nullity
            let metabolic_excluded = s.sign.unsigned_abs() as usize > s.inertia.zero;
            match cli.out {
                OutFormat::Json => ctx.emit(
                    &serde_json::to_string_pretty(&json!({
                        "input_digest": dig,
                        "invariant": "sigma_f",
                        "epsilon": a.epsilon(),
                        "mode": s.mode.to_string(),
                        "value": s.sign,
                        "singular": s.singular,
                        "relaxed": a.is_relaxed(),
                        "not_metabolic": metabolic_excluded,
                    }))
                    .unwrap(),
                ),
                OutFormat::Csv => {
                    ctx.emit("invariant,value,singular,not_metabolic");
                    ctx.emit(&format!("sigma_f,{},{},{metabolic_excluded}", s.sign, s.singular));
                }
                OutFormat::Text => {
                    let stamp = if s.singular { " [singular]" } else { "" };
                    ctx.emit(&format!("sigma_f = {} (eps = {}, {} mode){stamp}", s.sign, a.epsilon(), s.mode));
                    ctx.emit(if metabolic_excluded {
                        "the Seifert matrix is not metabolic"
                    } else {
                        "no information on metabolicity"
                    });
                }
            }
            Ok(exit_for(metabolic_excluded))
        }
        Command::AbelianScan { seifert, n } => {
            let (a, dig) = ctx.seifert(seifert)?;
            scan(ctx, &a, &dig, Family::AbelianGrid { n: *n })
        }
        Command::Scan {
            seifert,
            family,
            n,
            p,
            k,
            max_order,
            budget,
        } => {
            let (a, dig) = ctx.seifert(seifert)?;
            if *budget == 0 {
                return Err(Failure::Usage("budget must be positive".into()));
            }
            let family = match family {
                FamilyArg::AbelianGrid => Family::AbelianGrid { n: *n },
                FamilyArg::PdpEnumeration => Family::PdpEnumeration {
                    p: *p,
                    k: *k,
                    max_order: *max_order,
                    budget: *budget,
                    seed: cli.seed,
                },
                FamilyArg::RandomUnitary => Family::RandomUnitary {
                    k: *k,
                    budget: *budget,
                    seed: cli.seed,
                },
            };
            scan(ctx, &a, &dig, family)
        }
        Command::MetabolicVerify {
            seifert,
            cert,
            trials,
            bound,
        } => {
            let (a, _) = ctx.seifert(seifert)?;
            let found = match cert {
                Some(c) => {
                    let c = parse_certificate(&load(c)?)?;
                    verify_metabolic(&a, &c)?.then_some(c)
                }
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    random_certificate_search(&a, *trials, *bound, &mut rng)
                }
            };
            match (&found, cli.out) {
                (Some(c), OutFormat::Json) => ctx.emit(
                    &serde_json::to_string_pretty(&json!({
                        "metabolic": true,
                        "certificate": CertificateFile::from_certificate(c),
                    }))
                    .unwrap(),
                ),
                (None, OutFormat::Json) => ctx.emit(&json!({ "metabolic": null }).to_string()),
                (Some(c), _) => {
                    ctx.emit("metabolizer verified");
                    ctx.emit(&serde_json::to_string(&CertificateFile::from_certificate(c)).unwrap());
                }
                (None, _) if cert.is_some() => ctx.emit("certificate does not exhibit a metabolizer"),
                (None, _) => ctx.emit(&format!("no certificate found in {trials} trials (inconclusive)")),
            }
            Ok(EXIT_OK)
        }
        Command::Examples { n } => {
            let lines = run_examples(*n);
            match cli.out {
                OutFormat::Json => ctx.emit(&serde_json::to_string_pretty(&lines).unwrap()),
                _ => {
                    for l in &lines {
                        let mark = if l.matches { "match" } else { "MISMATCH" };
                        let note = if l.note.is_empty() { String::new() } else { format!(" ({})", l.note) };
                        ctx.emit(&format!("{mark:8} {}: expected {}, got {}{note}", l.name, l.expected, l.got));
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn exit_for(obstruction: bool) -> i32 {
    if obstruction {
        EXIT_OBSTRUCTION
    } else {
        EXIT_OK
    }
}

fn scan(ctx: &mut Ctx, a: &SeifertMatrix, dig: &str, family: Family) -> Result<i32, Failure> {
    let cli = ctx.cli;
    let spec = ScanSpec {
        family,
        epsilon: None,
        mode: match cli.mode {
            Some(ModeArg::Float) => Mode::Float,
            _ => Mode::Exact,
        },
        opts: ctx.opts(),
        jobs: cli.jobs,
    };
    let outcome = run_scan(a, dig, &spec);
    match cli.out {
        OutFormat::Csv => {
            let _ = write!(ctx.out, "{}", to_csv(&outcome));
        }
        OutFormat::Json => ctx.emit(&serde_json::to_string_pretty(&outcome).expect("outcome serializes")),
        OutFormat::Text => ctx.emit(&scan_text(&outcome)),
    }
    Ok(exit_for(outcome.summary.verdict().is_obstruction()))
}

fn scan_text(o: &ScanOutcome) -> String {
    let s = &o.summary;
    let range = match (s.min, s.max) {
        (Some(lo), Some(hi)) => format!("values in [{lo}, {hi}]"),
        _ => "no values".into(),
    };
    let mut out = format!(
        "evaluated {} of {} ({} errors): {} zero, {} nonzero, {} singular; {range}\nverdict: {}",
        s.evaluated,
        s.family_size,
        s.errors,
        s.zero,
        s.nonzero,
        s.singular,
        s.verdict().as_str()
    );
    if let Some(i) = s.first_certificate {
        if let Some(item) = o.items.iter().find(|it| it.index == i) {
            let r = item.report.as_ref().expect("certificates come from evaluated items");
            out.push_str(&format!(
                "\nfirst certificate: index {i} [{}] value {}\nrepresentation: {}",
                item.params.join("; "),
                r.value,
                serde_json::to_string(&r.representation).unwrap()
            ));
        }
    }
    out
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut ctx = Ctx { cli: &cli, out };
    match run_command(&mut ctx) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
    }
}
