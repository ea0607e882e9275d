//! `katores`: residue symbols, Witt decompositions, preparations and reciprocity audits.
//!
//! Exit codes: 0 success, 1 reciprocity violated, 2 parse error, 3 precondition
//! violated, 4 precision exhausted.

mod expr;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use katores_core::arith::split_p_part;
use katores_core::laurent::{witt_decompose, LaurentUnit};
use katores_core::serial::{
    to_canonical_string, AuditInput, GrElemJson, PreparedJson, ReportJson, SymbolValueJson, WittJson,
};
use katores_core::symbols::{contou_carrere, kato_symbol, tame_boundary};
use katores_core::weierstrass::prepare_integer;
use katores_core::{Error, GrElem, GrPoly, IntPoly, Poly, Ring, RingDesc};

use expr::LaurentPoly;

#[derive(Parser)]
#[command(name = "katores", version, about = "Residue symbols and reciprocity audits on two-dimensional local fields")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one symbol of two Laurent polynomials in T.
    Symbol(SymbolArgs),
    /// Witt parameters of a Laurent polynomial in T.
    Witt(WittArgs),
    /// Weierstrass preparation of an integer polynomial in T.
    Prepare(PrepareArgs),
    /// Run a reciprocity audit described by a JSON file.
    Audit(AuditArgs),
}

#[derive(Args)]
struct RingArgs {
    /// Residue characteristic.
    #[arg(long)]
    p: u64,
    /// Precision: coefficients live in Z/p^N.
    #[arg(long = "N")]
    n: u32,
    /// Treat inputs as known on exponents LO..=HI only.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Which {
    /// Kato's residue symbol.
    #[arg(long)]
    kato: bool,
    /// The Contou-Carrère symbol.
    #[arg(long)]
    cc: bool,
    /// The tame symbol of the reductions.
    #[arg(long)]
    tame: bool,
}

#[derive(Args)]
struct SymbolArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[command(flatten)]
    which: Which,
    #[arg(allow_hyphen_values = true)]
    f: String,
    #[arg(allow_hyphen_values = true)]
    g: String,
}

#[derive(Args)]
struct WittArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(allow_hyphen_values = true)]
    f: String,
}

#[derive(Args)]
struct PrepareArgs {
    #[arg(long)]
    p: u64,
    #[arg(long = "N")]
    n: u32,
    #[arg(allow_hyphen_values = true)]
    f: String,
}

#[derive(Args)]
struct AuditArgs {
    /// Audit input file.
    file: std::path::PathBuf,
    /// Drop the place with this label before folding the product.
    #[arg(long)]
    omit: Option<String>,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn parse(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PrecisionExhausted(_) | Error::WindowUnderflow => 4,
            _ => 3,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_threads() {
        eprintln!("error: {}", f.msg);
        return ExitCode::from(f.code);
    }
    let result = match &cli.cmd {
        Command::Symbol(a) => cmd_symbol(a, cli.format),
        Command::Witt(a) => cmd_witt(a, cli.format),
        Command::Prepare(a) => cmd_prepare(a, cli.format),
        Command::Audit(a) => cmd_audit(a, cli.format),
    };
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("KATORES_THREADS") else {
        return Ok(());
    };
    let n: usize =
        v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| Failure::parse(format!("KATORES_THREADS={v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure { code: 3, msg: e.to_string() })
}

fn parse_expr(s: &str) -> Result<LaurentPoly, Failure> {
    expr::parse(s).map_err(|e| Failure::parse(format!("{s:?}: {e}")))
}

/// `p^v · Σ c_k T^k` with the `p`-content pulled into `v`, as a unit over `Z/p^N`.
fn to_unit(f: &LaurentPoly, ring: &Ring, window: Option<(i64, i64)>) -> Result<LaurentUnit, Failure> {
    if f.is_zero() {
        return Err(Error::NotAUnit.into());
    }
    let p = ring.p();
    let val = |c: &BigRational| split_p_part(c.numer(), p).0 as i64 - split_p_part(c.denom(), p).0 as i64;
    let v = f.0.values().map(val).min().expect("nonzero");
    let pv = BigRational::from_integer(BigInt::from(p).pow(v.unsigned_abs() as u32));
    let scale = if v >= 0 { pv.recip() } else { pv };
    let mut terms = Vec::with_capacity(f.0.len());
    for (k, c) in &f.0 {
        terms.push((*k, GrElem::from_rational(ring, &(c * &scale))?));
    }
    Ok(LaurentUnit::make(ring, v, &terms, window)?)
}

fn ring_of(a: &RingArgs) -> Result<Ring, Failure> {
    Ok(RingDesc::prime(a.p, a.n)?)
}

fn cmd_symbol(a: &SymbolArgs, format: Format) -> Result<(String, u8), Failure> {
    let (fe, ge) = (parse_expr(&a.f)?, parse_expr(&a.g)?);
    let ring = ring_of(&a.ring)?;
    let f = to_unit(&fe, &ring, a.ring.window)?;
    let g = to_unit(&ge, &ring, a.ring.window)?;
    if a.which.tame {
        let t = tame_boundary(&f, &g)?;
        let out = match format {
            Format::Json => to_canonical_string(&GrElemJson::from_elem(&t)),
            Format::Table => format!("symbol  tame\nvalue   {t}\n"),
        };
        return Ok((out, 0));
    }
    let (name, v) =
        if a.which.kato { ("kato", kato_symbol(&f, &g)?) } else { ("contou_carrere", contou_carrere(&f, &g)?) };
    let out = match format {
        Format::Json => to_canonical_string(&SymbolValueJson::from_value(&v)),
        Format::Table => format!("symbol  {name}\np_val   {}\nunit    {}\nprec    {}\n", v.p_val, v.unit, v.prec),
    };
    Ok((out, 0))
}

fn cmd_witt(a: &WittArgs, format: Format) -> Result<(String, u8), Failure> {
    let fe = parse_expr(&a.f)?;
    let ring = ring_of(&a.ring)?;
    let wd = witt_decompose(&to_unit(&fe, &ring, a.ring.window)?)?;
    let out = match format {
        Format::Json => to_canonical_string(&WittJson::from_data(&wd)),
        Format::Table => {
            let mut s = format!("w          {}\np_exp      {}\nf0         {}\n", wd.w, wd.p_exp, wd.f0);
            for (i, c) in &wd.neg {
                s += &format!("f_-{i:<7} {c}\n");
            }
            for (i, c) in &wd.pos {
                s += &format!("f_{i:<8} {c}\n");
            }
            let known = if wd.pos_known == i64::MAX { "all".to_string() } else { format!("i <= {}", wd.pos_known) };
            s += &format!("known      {known}\n");
            s
        }
    };
    Ok((out, 0))
}

fn int_display(f: &GrPoly) -> String {
    let ip: IntPoly = Poly::from_coeffs(f.coeffs().iter().map(|c| BigInt::from(c.coords()[0])).collect());
    ip.to_string()
}

fn cmd_prepare(a: &PrepareArgs, format: Format) -> Result<(String, u8), Failure> {
    let fe = parse_expr(&a.f)?;
    if fe.low().is_some_and(|k| k < 0) || fe.0.values().any(|c| !c.is_integer()) {
        return Err(Failure::parse(format!("{:?} is not a polynomial with integer coefficients", a.f)));
    }
    let top = fe.0.keys().next_back().copied().unwrap_or(0);
    let coeffs: Vec<BigInt> = (0..=top).map(|k| fe.0.get(&k).map_or_else(BigInt::zero, |c| c.to_integer())).collect();
    let ring = RingDesc::prime(a.p, a.n)?;
    let pf = prepare_integer(&Poly::from_coeffs(coeffs), &ring)?;
    let out = match format {
        Format::Json => to_canonical_string(&PreparedJson::from_form(&pf)),
        Format::Table => format!(
            "f0  p^{} · {}\na   {}\nb   {}\nu   {}\n",
            pf.f0.0,
            pf.f0.1,
            int_display(&pf.a),
            int_display(&pf.b),
            int_display(&pf.u)
        ),
    };
    Ok((out, 0))
}

fn cmd_audit(a: &AuditArgs, format: Format) -> Result<(String, u8), Failure> {
    let text = std::fs::read_to_string(&a.file).map_err(|e| Failure::parse(format!("{}: {e}", a.file.display())))?;
    let mut input = AuditInput::parse(&text).map_err(|e| Failure::parse(e.to_string()))?;
    if a.omit.is_some() {
        input.omit = a.omit.clone();
    }
    let report = input.run()?;
    let out = match format {
        Format::Json => to_canonical_string(&ReportJson::from_report(&report)),
        Format::Table => format!("{report}\n"),
    };
    Ok((out, if report.pass { 0 } else { 1 }))
}
