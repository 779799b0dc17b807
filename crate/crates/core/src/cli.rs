//! The `llct` command line: every verb prints one JSON object with sorted keys.

use crate::algebra::{init_q, render_rational, Scalar};
use crate::bernstein::{extended_point_of, point_of};
use crate::dsl::{parse_matrix, parse_rational, parse_rep, parse_scalar_list};
use crate::error::{Error, Result};
use crate::local::{self, epsilon_ratio_check, sign_constancy_check};
use crate::multiseg::{llc_gen, surjection_exists, SurjectionKind};
use crate::oracle::{self, MatrixWD};
use crate::partitions::jordan_type;
use crate::wd::{WDFamily, WDRep};
use crate::zeta::{self, SatakeData};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::io::Write;

#[derive(Parser, Debug)]
#[command(name = "llct", version, about = "Exact computations with Weil-Deligne representations and their local factors")]
pub struct Cli {
    /// Residue field size.
    #[arg(long, global = true, default_value_t = 3)]
    pub q: u64,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug)]
pub struct RepArg {
    /// Representation, e.g. "Sp(unr(1), 2) + unr(q^-1)".
    #[arg(long)]
    pub rep: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical Speh-block form of a representation, or of a matrix pair via the oracle.
    Classify {
        #[arg(long, conflicts_with_all = ["phi", "n"])]
        rep: Option<String>,
        /// Frobenius matrix, e.g. "[[1,0],[0,1/3]]".
        #[arg(long, requires = "n")]
        phi: Option<String>,
        /// Monodromy matrix.
        #[arg(long, requires = "phi")]
        n: Option<String>,
    },
    /// Multisegment of the generic correspondent and Bernstein coordinates.
    Llc(RepArg),
    /// Inverse L-factor det(1 - phi T | (Ker N)^I).
    #[command(name = "L")]
    L(RepArg),
    /// Inverse L-factor of the semisimple part.
    #[command(name = "Lss")]
    Lss(RepArg),
    /// Rankin-Selberg inverse L-factor of a pair, optionally shifted by T -> q^-s T.
    #[command(name = "rsL")]
    RsL {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        rep2: String,
        /// Half-integer shift s.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        shift: String,
    },
    /// Gamma factor as a rational function in T, with its epsilon part.
    Gamma(RepArg),
    /// Epsilon factor: unit and conductor exponent.
    Eps(RepArg),
    /// Truncated unramified zeta integral for GL_n x GL_1 or GL_n x GL_n.
    Zeta {
        /// Rank n of the first factor.
        #[arg(long)]
        n1: usize,
        #[arg(long, default_value_t = 1)]
        n2: usize,
        /// Comma-separated Satake parameters of the first factor.
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// Parameters of the second factor (GL_n x GL_n only).
        #[arg(long, allow_hyphen_values = true)]
        params2: Option<String>,
        /// Half-integer twist m of the integrand.
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Truncation degree in T.
        #[arg(long, default_value_t = 40)]
        bound: i64,
    },
    /// The unramified invariant pairing.
    Pairing {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, default_value_t = 40)]
        bound: i64,
    },
    /// Monodromy of a one-parameter family at sample points.
    FamilyCheck {
        /// Nilpotent matrix over Q[x], e.g. "[[0,x],[0,0]]".
        #[arg(long, conflicts_with = "rep")]
        matrix: Option<String>,
        /// A representation whose alphas involve x.
        #[arg(long)]
        rep: Option<String>,
        /// Comma-separated sample points.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Cross-checks against the matrix oracle.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Identities of the local factors.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Whether pi_gen(rep) surjects onto pi_gen(rep2).
    Surjection {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        rep2: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// Realize as matrices and classify back.
    Roundtrip(RepArg),
    /// Structured tensor product against the classified matrix tensor product.
    Tensor {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        rep2: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// The epsilon ratio identity for det(-phi | r^I / (Ker N)^I).
    EpsRatio(RepArg),
    /// Root-number constancy on a self-dual family in x.
    Sign(RepArg),
    /// Functional equation of the unramified GL_2 x GL_1 zeta integral.
    Feqg {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, default_value_t = 40)]
        bound: i64,
    },
}

fn rep_json(r: &WDRep) -> Result<Value> {
    let weights: Vec<Value> = r.weights()?.into_iter().map(|w| json!(w)).collect();
    Ok(json!({
        "rep": r.render(),
        "structure": r.to_json(),
        "jordan": r.jordan_data().to_json(),
        "weights": weights,
        "pure_weight": r.pure_weight()?,
    }))
}

fn satake(src: &str) -> Result<SatakeData> {
    SatakeData::new(parse_scalar_list(src)?)
}

fn points(src: &str) -> Result<Vec<BigRational>> {
    src.split(',').map(|s| parse_rational(s.trim())).collect()
}

/// JSON output plus the exit code: 0, or 4 when a truncated series is not certified.
pub struct Output {
    pub value: Value,
    pub code: i32,
}

fn certified(value: Value, ok: bool) -> Result<Output> {
    Ok(Output { value, code: if ok { 0 } else { Error::Uncertified(String::new()).exit_code() } })
}

fn family_check(matrix: Option<&str>, rep: Option<&str>, at: &str) -> Result<Value> {
    let fam = match (matrix, rep) {
        (Some(m), None) => {
            let n = parse_matrix(m)?;
            jordan_type(&n)?;
            WDFamily::nilpotent(n)
        }
        (None, Some(r)) => WDFamily::structured(parse_rep(r)?),
        _ => return Err(Error::domain("give exactly one of --matrix or --rep")),
    };
    let generic = fam.generic_jordan_data()?;
    let mut rows = Vec::new();
    for a in points(at)? {
        let j = fam.jordan_data_at(&a)?;
        let kind = fam.check_interpolation(&a)?;
        rows.push(json!({"at": render_rational(&a), "jordan": j.to_json(), "interpolation": kind.name()}));
    }
    Ok(json!({"generic_jordan": generic.to_json(), "points": rows}))
}

/// Run one command and return its JSON output.
pub fn run(cli: &Cli) -> Result<Output> {
    init_q(cli.q)?;
    let value = match &cli.cmd {
        Command::Classify { rep, phi, n } => match (rep, phi, n) {
            (Some(r), None, None) => rep_json(&parse_rep(r)?),
            (None, Some(p), Some(n)) => {
                let m = MatrixWD::new(parse_matrix(p)?, parse_matrix(n)?)?;
                rep_json(&oracle::classify(&m)?)
            }
            _ => Err(Error::domain("give --rep, or both --phi and --n")),
        },
        Command::Llc(a) => {
            let r = parse_rep(&a.rep)?;
            Ok(json!({
                "multisegment": llc_gen(&r)?.to_json(),
                "bernstein_point": point_of(&r)?.to_json(),
                "extended_point": extended_point_of(&r)?.to_json(),
            }))
        }
        Command::L(a) => Ok(json!({"L_inverse": local::l_inverse(&parse_rep(&a.rep)?).render()})),
        Command::Lss(a) => Ok(json!({"Lss_inverse": local::l_ss_inverse(&parse_rep(&a.rep)?).render()})),
        Command::RsL { rep, rep2, shift } => {
            let s = parse_rational(shift)?;
            let s2 = s.clone() * BigRational::from_integer(2.into());
            if !s2.is_integer() {
                return Err(Error::domain("shift must be a half-integer"));
            }
            let s2 = s2.to_integer().try_into().map_err(|_| Error::domain("shift out of range"))?;
            let p = local::rs_l_inverse(&parse_rep(rep)?, &parse_rep(rep2)?)?;
            Ok(json!({"rs_L_inverse": local::shift(&p, s2).render(), "shift": render_rational(&s)}))
        }
        Command::Gamma(a) => Ok(local::gamma(&parse_rep(&a.rep)?)?.to_json()),
        Command::Eps(a) => {
            let r = parse_rep(&a.rep)?;
            Ok(json!({"epsilon": local::epsilon(&r).to_json(), "epsilon_ss": local::epsilon_ss(&r).to_json()}))
        }
        Command::Zeta { n1, n2, params, params2, m, bound } => {
            let d1 = satake(params)?;
            if d1.n() != *n1 {
                return Err(Error::domain(format!("--params has {} entries, expected {n1}", d1.n())));
            }
            let m = parse_rational(m)?;
            let z = match (*n2, params2) {
                (1, None) if *n1 > 1 => zeta::zeta_gl_n_gl1(&d1, &m, *bound)?,
                (k, p2) if k == *n1 => {
                    let d2 = match p2 {
                        Some(p) => satake(p)?,
                        None if k == 1 => SatakeData::new(vec![Scalar::one()])?,
                        None => return Err(Error::domain("GL_n x GL_n needs --params2")),
                    };
                    if d2.n() != k {
                        return Err(Error::domain(format!("--params2 has {} entries, expected {k}", d2.n())));
                    }
                    zeta::zeta_gl_n_gl_n(&d1, &d2, &m, *bound)?
                }
                _ => return Err(Error::unsupported("only GL_n x GL_1 and GL_n x GL_n are implemented")),
            };
            let ok = z.is_certified();
            return certified(z.to_json(), ok);
        }
        Command::Pairing { params, bound } => {
            let p = zeta::invariant_pairing(&satake(params)?, *bound)?;
            let ok = p.via_zeta.is_certified();
            return certified(p.to_json(), ok);
        }
        Command::FamilyCheck { matrix, rep, at } => family_check(matrix.as_deref(), rep.as_deref(), at),
        Command::Oracle { what } => match what {
            OracleCmd::Roundtrip(a) => {
                let r = parse_rep(&a.rep)?;
                let back = oracle::classify(&oracle::realize(&r)?)?;
                Ok(json!({"rep": r.render(), "classified": back.render(), "ok": back.is_isomorphic(&r)}))
            }
            OracleCmd::Tensor { rep, rep2 } => {
                let (r1, r2) = (parse_rep(rep)?, parse_rep(rep2)?);
                let structured = r1.tensor(&r2)?;
                let matrix = oracle::classify(&oracle::realize(&r1)?.tensor(&oracle::realize(&r2)?))?;
                Ok(json!({
                    "structured": structured.render(),
                    "oracle": matrix.render(),
                    "ok": structured.is_isomorphic(&matrix),
                }))
            }
        },
        Command::Check { what } => match what {
            CheckCmd::EpsRatio(a) => {
                let rep = epsilon_ratio_check(&parse_rep(&a.rep)?)?;
                Ok(json!({
                    "ok": rep.ok(),
                    "ratio": rep.ratio.render(),
                    "matches_det": rep.matches_det,
                    "matches_epsilon": rep.matches_epsilon,
                    "value_at_one": rep.value_at_one.map(|(a, b)| json!([a.render(), b.render()])),
                }))
            }
            CheckCmd::Sign(a) => {
                let rep = sign_constancy_check(&WDFamily::structured(parse_rep(&a.rep)?))?;
                let signs: serde_json::Map<String, Value> = rep.signs.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                Ok(json!({"constant": rep.constant, "signs": signs, "skipped": rep.skipped}))
            }
            CheckCmd::Feqg { params, bound } => Ok(zeta::gl2_gamma_functional_equation(&satake(params)?, *bound)?.to_json()),
        },
        Command::Surjection { rep, rep2 } => {
            let kind = match surjection_exists(&parse_rep(rep)?, &parse_rep(rep2)?)? {
                SurjectionKind::Iso => "Iso",
                SurjectionKind::Surjection => "Surjection",
                SurjectionKind::None => "None",
            };
            Ok(json!({"surjection": kind}))
        }
    }?;
    Ok(Output { value, code: 0 })
}

/// Parse arguments, run, print, and return the process exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.value).expect("json output");
            // A closed pipe on stdout is not an error of the computation.
            let _ = writeln!(std::io::stdout(), "{text}");
            out.code
        }
        Err(e) => {
            eprintln!("{}", json!({"error": e.to_string()}));
            e.exit_code()
        }
    }
}
