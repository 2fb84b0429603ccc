//! Command-line driver. [`run`] does all the work and returns what `main`
//! should print along with the exit code, so tests can drive it in-process.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use qonsager::adjoint::{verify_catalogue, Direction, Elem, IdentityId};
use qonsager::currentalg::aq_system;
use qonsager::error::Error;
use qonsager::freealg::NcPoly;
use qonsager::onsager::{HigherDgMode, OnsagerContext};
use qonsager::qcoeff::{parse_rational, CoefficientMode, Field, Numeric, QField, Symbolic};
use qonsager::repn::{
    higher_dg_matrix, import_td_pair_str, leonard_pair, td_pair_d1, twist_module, untwist_module, verify_conjugation,
    SpectralData, TDPair,
};
use qonsager::report::{Report, Status, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(
    name = "qonsager",
    version,
    about = "Exact checks for the q-Onsager algebra and its Lusztig automorphism"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficient mode; defaults to numeric when --q is given.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Value of q for numeric mode, e.g. 3/2.
    #[arg(long, global = true, value_parser = rational)]
    q: Option<BigRational>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DirArg {
    #[value(alias = "forward")]
    Fwd,
    #[value(alias = "inverse")]
    Inv,
}

impl From<DirArg> for Direction {
    fn from(d: DirArg) -> Self {
        match d {
            DirArg::Fwd => Direction::Forward,
            DirArg::Inv => Direction::Inverse,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Certified,
    Rewrite,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Identity catalogue.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Rewriting-based computations in the q-Onsager algebra.
    #[command(subcommand)]
    Onsager(OnsagerCmd),
    /// The current algebra.
    #[command(subcommand)]
    Current(CurrentCmd),
    /// Exact matrix models.
    #[command(subcommand)]
    Repn(RepnCmd),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    Identities {
        #[arg(long, default_value_t = 3)]
        max_index: usize,
        /// Restrict to these catalogue names (repeatable).
        #[arg(long = "id")]
        ids: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum OnsagerCmd {
    /// Image of an expression under L or its inverse.
    Lusztig {
        /// JSON file, or a word such as "BAB" or "A*B".
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "fwd")]
        direction: DirArg,
    },
    /// (bad A)_{r+1}(B^r) = 0.
    HigherDg {
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, value_enum, default_value = "certified")]
        method: MethodArg,
    },
    /// L(uv) = L(u) L(v) for words split after their first letter.
    Homcheck {
        #[arg(default_values_t = ["AB".to_string(), "BA".to_string(), "BB".to_string()])]
        words: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum CurrentCmd {
    Verify {
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct SpectralArgs {
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, value_parser = rational, default_value = "3")]
    a: BigRational,
}

#[derive(Subcommand, Debug)]
enum RepnCmd {
    /// Scalar sum identity for every (i, j).
    Ssum {
        #[command(flatten)]
        sp: SpectralArgs,
    },
    /// L(X) against conjugation by Psi on random matrices.
    Conjugation {
        #[command(flatten)]
        sp: SpectralArgs,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Higher-order relation on random degree-one matrices.
    HigherDg {
        #[command(flatten)]
        sp: SpectralArgs,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// The two-dimensional tridiagonal pair.
    D1 {
        #[arg(long, value_parser = rational, default_value = "3")]
        a: BigRational,
        #[arg(long, value_parser = rational, default_value = "2")]
        b: BigRational,
    },
    /// Validate a pair stored as JSON.
    Import { file: PathBuf },
    /// Twist a pair by Psi and check the result; the pair is generated
    /// unless --input is given.
    Twist {
        #[command(flatten)]
        sp: SpectralArgs,
        #[arg(long, value_parser = rational, default_value = "2")]
        b: BigRational,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Everything `main` needs to finish the process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// What a command produced: a report, or a computed object plus its checks.
enum Output {
    Report(Report),
    Value { text: String, json: Value, code: i32 },
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => emit(&cli, out),
        Err(Failure::Usage(m)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
            code: EXIT_USAGE,
        },
        Err(Failure::Io(m)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
            code: EXIT_IO,
        },
    }
}

fn emit(cli: &Cli, out: Output) -> Outcome {
    let (text, value, code) = match out {
        Output::Report(r) => (r.to_string(), r.to_json(), report_exit_code(&r)),
        Output::Value { text, json, code } => (text, json, code),
    };
    let pretty = serde_json::to_string_pretty(&value).expect("json values serialize") + "\n";
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &pretty) {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
                code: EXIT_IO,
            };
        }
    }
    let stdout = if cli.json { pretty } else { text + "\n" };
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}

/// 1 if any record failed, else 2 if any was inconclusive, else 0.
pub fn report_exit_code(r: &Report) -> i32 {
    match r.exit_code() {
        1 => EXIT_FAIL,
        2 => EXIT_INCONCLUSIVE,
        _ => EXIT_PASS,
    }
}

fn mode(cli: &Cli) -> Result<CoefficientMode, Failure> {
    match (cli.mode, &cli.q) {
        (Some(ModeArg::Symbolic), Some(_)) => Err(Failure::Usage("--q is only meaningful with --mode numeric".into())),
        (Some(ModeArg::Symbolic), None) | (None, None) => Ok(CoefficientMode::SymbolicQ),
        (Some(ModeArg::Numeric), None) => Err(Failure::Usage("--mode numeric needs --q".into())),
        (_, Some(q)) => Ok(CoefficientMode::numeric(q.clone())?),
    }
}

/// Runs `$body` with `$f` bound to the coefficient field selected by `$mode`.
macro_rules! with_field {
    ($mode:expr, |$f:ident| $body:expr) => {
        match $mode {
            CoefficientMode::SymbolicQ => {
                let $f = &Symbolic;
                $body
            }
            CoefficientMode::NumericQ(q0) => {
                let $f = &Numeric::new(q0.clone())?;
                $body
            }
        }
    };
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let mode = mode(cli)?;
    match &cli.command {
        Command::Verify(VerifyCmd::Identities { max_index, ids }) => {
            let ids = ids
                .iter()
                .map(|s| IdentityId::parse(s).ok_or_else(|| Failure::Usage(format!("unknown identity {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Output::Report(verify_catalogue(&ids, *max_index, &mode)?))
        }
        Command::Onsager(cmd) => with_field!(&mode, |f| onsager(f, &mode, cmd)),
        Command::Current(CurrentCmd::Verify { kmax }) => {
            with_field!(&mode, |f| Ok(Output::Report(aq_system(f, *kmax)?.verify_all()?)))
        }
        Command::Repn(cmd) => {
            match cmd {
                RepnCmd::Import { file } => return import(file),
                RepnCmd::Twist { input: Some(file), .. } => {
                    let tp = import_td_pair_str(&read_file(file)?)?;
                    let cfg = json!({"file": file.display().to_string()});
                    return Ok(Output::Report(twist_report(&tp, cfg)?));
                }
                _ => {}
            }
            with_field!(&mode, |f| repn(f, &mode, cli.seed, cmd))
        }
    }
}

fn config(mode: &CoefficientMode, extra: Value) -> Value {
    let mut c = json!({"mode": mode.label()});
    if let CoefficientMode::NumericQ(q) = mode {
        c["q"] = json!(q.to_string());
    }
    if let (Some(c), Value::Object(extra)) = (c.as_object_mut(), extra) {
        c.extend(extra);
    }
    c
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn onsager<Q: QField>(f: &Q, mode: &CoefficientMode, cmd: &OnsagerCmd) -> Result<Output, Failure> {
    let ctx = OnsagerContext::new(f)?;
    match cmd {
        OnsagerCmd::Lusztig { expr, direction } => {
            let x = parse_expr(&ctx, expr)?;
            let dir = Direction::from(*direction);
            let img = ctx.lusztig(&x, dir)?;
            let json = json!({
                "direction": dir.label(),
                "mode": mode.label(),
                "input": x.to_json(),
                "image": img.to_json(),
            });
            Ok(Output::Value {
                text: img.to_string(),
                json,
                code: EXIT_PASS,
            })
        }
        OnsagerCmd::HigherDg { r, method } => {
            let m = match method {
                MethodArg::Certified => HigherDgMode::Certified,
                MethodArg::Rewrite => HigherDgMode::Rewrite,
            };
            let mut rep = Report::new("onsager higher-dg", config(mode, json!({"r": r, "method": m.label()})));
            rep.push(ctx.higher_dg_check(*r, m)?);
            Ok(Output::Report(rep))
        }
        OnsagerCmd::Homcheck { words } => {
            let al = ctx.alphabet().clone();
            let mut rep = Report::new("onsager homcheck", config(mode, json!({"words": words})));
            for w in words {
                let word = al
                    .word(w)
                    .map_err(|_| Failure::Usage(format!("{w:?} is not a word in A, B")))?;
                if word.len() < 2 {
                    return Err(Failure::Usage(format!("{w:?} needs at least two letters")));
                }
                let (u, v) = (word.slice(0, 1), word.slice(1, word.len()));
                rep.push(ctx.homomorphism_spotcheck(&u, &v)?);
            }
            Ok(Output::Report(rep))
        }
    }
}

/// A path to a JSON polynomial, or an inline word.
fn parse_expr<Q: QField>(ctx: &OnsagerContext<Q>, expr: &str) -> Result<NcPoly<Elem<Q>>, Failure> {
    let path = Path::new(expr);
    if path.exists() || expr.ends_with(".json") {
        let text = read_file(path)?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("{}: line {} column {}: {e}", expr, e.line(), e.column())))?;
        return Ok(NcPoly::from_json_with(&v, ctx.alphabet())?);
    }
    ctx.word(expr)
        .map_err(|_| Failure::Usage(format!("{expr:?} is neither a file nor a word in A, B")))
}

fn repn<Q: QField>(f: &Q, mode: &CoefficientMode, seed: u64, cmd: &RepnCmd) -> Result<Output, Failure> {
    match cmd {
        RepnCmd::Ssum { sp } => {
            let sd = SpectralData::new(f, sp.d, &sp.a)?;
            let mut rep = Report::new("repn ssum", config(mode, json!({"d": sp.d, "a": sp.a.to_string()})));
            for i in 0..=sp.d {
                for j in 0..=sp.d {
                    rep.push(ssum_record(&sd, i, j)?);
                }
            }
            Ok(Output::Report(rep))
        }
        RepnCmd::Conjugation { sp, trials } => {
            let sd = SpectralData::new(f, sp.d, &sp.a)?;
            let cfg = json!({"d": sp.d, "a": sp.a.to_string(), "trials": trials, "seed": seed});
            let mut rep = Report::new("repn conjugation", config(mode, cfg));
            rep.push(verify_conjugation(&sd, *trials, seed)?);
            Ok(Output::Report(rep))
        }
        RepnCmd::HigherDg { sp, r } => {
            let sd = SpectralData::new(f, sp.d, &sp.a)?;
            let cfg = json!({"d": sp.d, "a": sp.a.to_string(), "r": r, "seed": seed});
            let mut rep = Report::new("repn higher-dg", config(mode, cfg));
            rep.push(higher_dg_matrix(*r, &sd, seed)?);
            Ok(Output::Report(rep))
        }
        RepnCmd::D1 { a, b } => {
            let tp = td_pair_d1(f, a, b)?;
            let mut rep = Report::new("repn d1", config(mode, json!({"a": a.to_string(), "b": b.to_string()})));
            rep.push(tp.check_spectral()?);
            Ok(Output::Report(rep))
        }
        RepnCmd::Import { .. } => unreachable!("handled before field dispatch"),
        RepnCmd::Twist { sp, b, input } => {
            let tp = match input {
                Some(_) => unreachable!("handled before field dispatch"),
                None if sp.d == 1 => td_pair_d1(f, &sp.a, b)?,
                None => leonard_pair(f, sp.d, &sp.a, b, None)?,
            };
            let cfg = json!({"d": sp.d, "a": sp.a.to_string(), "b": b.to_string()});
            Ok(Output::Report(twist_report(&tp, config(mode, cfg))?))
        }
    }
}

fn ssum_record<Q: QField>(sd: &SpectralData<Q>, i: usize, j: usize) -> Result<VerificationReport, Error> {
    let mut bad = Vec::new();
    for dir in [Direction::Forward, Direction::Inverse] {
        if sd.scalar_s_ratio(i, j, dir)? != sd.t_ratio(i, j, dir)? {
            bad.push(format!("{} sum differs from t ratio", dir.label()));
        }
        for n in i.abs_diff(j) + 1..=sd.d() + 1 {
            if !sd.spectral_term(n, i, j, dir)?.is_zero() {
                bad.push(format!("{} term n={n} nonzero", dir.label()));
            }
        }
    }
    let rep = VerificationReport::new("ssum", "lem:ssum", Status::from_bool(bad.is_empty()))
        .with_params(vec![sd.d() as i64, i as i64, j as i64])
        .with_mode(&sd.field().mode());
    Ok(if bad.is_empty() {
        rep
    } else {
        rep.with_detail(bad.join("; "))
    })
}

fn twist_report<Q: QField>(tp: &TDPair<Q>, cfg: Value) -> Result<Report, Failure> {
    let sd = tp.spectral_a().clone();
    let mut rep = Report::new("repn twist", cfg);
    let tw = twist_module(tp, &sd)?;
    rep.push(tp.check_spectral()?);
    rep.push(VerificationReport {
        name: "twisted".into(),
        ..tw.check_spectral()?
    });
    let back = untwist_module(&tw, &sd)?;
    let same = back.b() == tp.b() && tw.a() == tp.a();
    rep.push(
        VerificationReport::new("twist_round_trip", "thm:Oq", Status::from_bool(same))
            .with_params(vec![tp.d() as i64])
            .with_mode(&tp.field().mode()),
    );
    Ok(rep)
}

fn import(file: &Path) -> Result<Output, Failure> {
    let text = read_file(file)?;
    let cfg = json!({"file": file.display().to_string()});
    let mut rep = Report::new("repn import", cfg);
    match import_td_pair_str(&text) {
        Ok(tp) => rep.push(tp.check_spectral()?),
        Err(Error::InvariantViolation(v)) => rep
            .push(VerificationReport::new("td_pair_invariants", "eq:tripProd", Status::Fail).with_detail(v.join("; "))),
        Err(e) => return Err(e.into()),
    }
    Ok(Output::Report(rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_selection() {
        let cli = Cli::try_parse_from(["qonsager", "repn", "ssum", "--q", "2"]).unwrap();
        assert!(matches!(mode(&cli), Ok(CoefficientMode::NumericQ(_))));
        let cli = Cli::try_parse_from(["qonsager", "--mode", "numeric", "repn", "ssum"]).unwrap();
        assert!(matches!(mode(&cli), Err(Failure::Usage(_))));
    }
}
