use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use multibern::exact::{fmt_rational, parse_rational, parse_rational_list, to_f64};
use multibern::oracle::{compare, direct_sum, OracleConfig};
use multibern::witten::{self, PiValue};
use multibern::*;

#[derive(Parser, Debug)]
#[command(name = "multibern", version, about = "Exact multiple Bernoulli series and Witten volumes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Value of B(Φ, Λ)(v), or a one-sided limit at a non-regular point.
    Bernoulli {
        #[command(flatten)]
        series: SeriesArgs,
        /// Point in ambient coordinates, e.g. `1/15,1/30`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Take the limit along v + εδ instead of requiring a regular point.
        #[arg(long)]
        limit: bool,
        /// Direction δ for --limit (defaults to a fixed generic direction).
        #[arg(long, allow_hyphen_values = true, requires = "limit")]
        direction: Option<String>,
    },
    /// Step polynomial valid on all of V.
    StepPoly {
        #[command(flatten)]
        series: SeriesArgs,
        /// Write the polynomial to this file when it has more than --max-inline terms.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 500)]
        max_inline: usize,
    },
    /// Polynomial agreeing with B on the tope containing a sample point.
    TopePoly {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Volume of the moduli space of flat connections on a marked surface.
    WittenVolume {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        genus: u32,
        /// One marking per occurrence.
        #[arg(long, allow_hyphen_values = true)]
        marking: Vec<String>,
        #[arg(long, value_enum, default_value_t = Coords::Ambient)]
        marking_coords: Coords,
    },
    /// Witten zeta value at even Weyl-invariant exponents.
    Zeta {
        #[command(flatten)]
        series: SeriesArgs,
        /// Also print a decimal approximation.
        #[arg(long)]
        decimal: bool,
    },
    /// ζ(2k, …, 2k) of the given depth.
    Mzv {
        #[arg(long)]
        depth: usize,
        /// The common argument 2k.
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        decimal: bool,
    },
    /// SU(2) Verlinde number with one marking.
    VerlindeSu2 {
        #[arg(long)]
        t: String,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        genus: u32,
    },
    /// Compare the exact value with a truncated lattice sum.
    OracleCheck {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value_t = 200)]
        radius: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        no_extrapolate: bool,
    },
}

#[derive(Args, Debug)]
struct SystemArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    sys: SystemArgs,
    /// `coroot-A`, `coweight-A`, `coroot-B`, `coroot-C` or `coroot-D` (default: the coroot lattice).
    #[arg(long)]
    lattice: Option<String>,
    /// Exponents keyed by root label, e.g. `e1=2,e2=1,e1+e2=1,e1-e2=1`.
    #[arg(long, conflicts_with_all = ["all", "list"])]
    exp: Option<String>,
    /// Same exponent on every positive root.
    #[arg(long, conflicts_with = "list")]
    all: Option<u32>,
    /// Positional exponents, e.g. `6,6,6,6,4,2,2,2,2,2`; needs --order.
    #[arg(long, requires = "order")]
    list: Option<String>,
    #[arg(long, value_enum)]
    order: Option<Order>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Order {
    /// A, D: e_i-e_j (lex) then e_i+e_j (lex); B: e_i-e_j, e_i+e_j, e_i; C: 2e_i, e_i+e_j, e_i-e_j.
    Canonical,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Coords {
    Ambient,
    SimpleCoroot,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Out = std::result::Result<(Value, Value, &'static str), Failure>;

fn system(a: &SystemArgs) -> Result<RootSystem> {
    RootSystem::new(Family::parse(&a.family)?, a.rank)
}

fn exponents(a: &SeriesArgs, sys: RootSystem) -> Result<ExponentMap> {
    if let Some(e) = &a.exp {
        return ExponentMap::parse(sys, e);
    }
    if let Some(m) = a.all {
        return Ok(ExponentMap::uniform(sys, m));
    }
    if let Some(l) = &a.list {
        let values = l
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent `{x}`"))))
            .collect::<Result<Vec<_>>>()?;
        return ExponentMap::from_canonical_list(sys, &values);
    }
    Err(Error::Parse("one of --exp, --all or --list is required".into()))
}

fn series_setup(a: &SeriesArgs) -> Result<(RootSystem, LatticeKind, ExponentMap, Value)> {
    let sys = system(&a.sys)?;
    let lattice = match &a.lattice {
        Some(l) => LatticeKind::parse(l)?,
        None => LatticeKind::coroot(sys.family()),
    };
    let e = exponents(a, sys)?;
    let q = json!({
        "family": sys.family().to_string(),
        "rank": sys.rank(),
        "lattice": lattice.name(),
        "exponents": e.to_text(),
    });
    Ok((sys, lattice, e, q))
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_rational(x))).collect())
}

/// `log10 |x|` for rationals far outside the `f64` range.
fn log10_abs(x: &Rational) -> f64 {
    let lg = |n: &BigInt| {
        let bits = n.bits();
        let shift = bits.saturating_sub(60);
        let top = to_f64(&Rational::from_integer(BigInt::from(n.magnitude().clone()) >> shift));
        top.log10() + shift as f64 * std::f64::consts::LOG10_2
    };
    lg(x.numer()) - lg(x.denom())
}

fn pi_json(p: &PiValue, decimal: bool) -> Value {
    let mut v = json!({ "coeff": fmt_rational(&p.coeff), "pi_power": p.pi_power });
    if decimal && p.coeff != Rational::from_integer(0.into()) {
        let l = log10_abs(&p.coeff) + p.pi_power as f64 * std::f64::consts::PI.log10();
        let exp = l.floor();
        let sign = if p.coeff < Rational::from_integer(0.into()) { "-" } else { "" };
        v["decimal"] = Value::String(format!("{sign}{:.12}e{}", 10f64.powf(l - exp), exp as i64));
    }
    v
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Bernoulli { series, at, limit, direction } => {
            let (sys, lattice, e, mut q) = series_setup(&series)?;
            let v = parse_rational_list(&at)?;
            let dir = direction.as_deref().map(parse_rational_list).transpose()?;
            q["at"] = rationals(&v);
            let mode = if limit {
                if let Some(d) = &dir {
                    q["direction"] = rationals(d);
                }
                QueryMode::Limit(dir)
            } else {
                QueryMode::Value
            };
            let out = bernoulli_eval(&BernoulliQuery { sys, lattice, exponents: e, v, mode })?;
            match out {
                BernoulliOutput::Value(x) => Ok((q, Value::String(fmt_rational(&x)), "rational")),
                _ => Err(Failure::Domain("unexpected output".into())),
            }
        }
        Cmd::StepPoly { series, out, max_inline } => {
            let (sys, lattice, e, q) = series_setup(&series)?;
            let s = BernoulliSeries::new(sys, lattice, &e)?.step_polynomial()?;
            let doc = s.to_json();
            if s.num_terms() > max_inline {
                let path = out.ok_or_else(|| {
                    Failure::Usage(format!("step polynomial has {} terms; pass --out to write it to a file", s.num_terms()))
                })?;
                let text = serde_json::to_string(&doc).map_err(|e| Failure::Usage(e.to_string()))?;
                std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                let r = json!({ "file": path.display().to_string(), "terms": s.num_terms() });
                return Ok((q, r, "step_polynomial"));
            }
            Ok((q, doc, "step_polynomial"))
        }
        Cmd::TopePoly { series, at } => {
            let (sys, lattice, e, mut q) = series_setup(&series)?;
            let v = parse_rational_list(&at)?;
            q["at"] = rationals(&v);
            let p = BernoulliSeries::new(sys, lattice, &e)?.tope_polynomial(&v)?;
            let vars: Vec<String> = (1..=sys.ambient_dim()).map(|i| format!("v{i}")).collect();
            Ok((q, json!({ "text": p.to_string(), "variables": vars, "terms": p.num_terms() }), "polynomial"))
        }
        Cmd::WittenVolume { sys, genus, marking, marking_coords } => {
            let sys = system(&sys)?;
            let mut marks = Vec::new();
            for m in &marking {
                let a = parse_rational_list(m)?;
                marks.push(match marking_coords {
                    Coords::Ambient => a,
                    Coords::SimpleCoroot => sys.from_simple_coroot_coords(&a)?,
                });
            }
            let q = json!({
                "family": sys.family().to_string(),
                "rank": sys.rank(),
                "genus": genus,
                "markings": marks.iter().map(|m| rationals(m)).collect::<Vec<_>>(),
            });
            let v = witten::volume(sys, genus, &marks)?;
            Ok((q, Value::String(fmt_rational(&v)), "rational"))
        }
        Cmd::Zeta { series, decimal } => {
            let (_, _, e, q) = series_setup(&series)?;
            let z = witten::zeta_even(&e)?;
            Ok((q, pi_json(&z, decimal), "pi_value"))
        }
        Cmd::Mzv { depth, weight, decimal } => {
            let q = json!({ "depth": depth, "weight": weight });
            let z = witten::mzv(depth, weight)?;
            Ok((q, pi_json(&z, decimal), "pi_value"))
        }
        Cmd::VerlindeSu2 { t, level, genus } => {
            let t = parse_rational(&t)?;
            let q = json!({ "t": fmt_rational(&t), "level": level, "genus": genus });
            let v = witten::verlinde_su2(&t, level, genus)?;
            Ok((q, Value::String(fmt_rational(&v)), "rational"))
        }
        Cmd::OracleCheck { series, at, radius, tol, no_extrapolate } => {
            let (sys, lattice, e, mut q) = series_setup(&series)?;
            let v = parse_rational_list(&at)?;
            q["at"] = rationals(&v);
            q["radius"] = json!(radius);
            let s = BernoulliSeries::new(sys, lattice, &e)?;
            let exact = if s.is_regular(&v)? { s.value(&v)? } else { s.limit(&v, None)? };
            let cfg = OracleConfig { radius, extrapolate: !no_extrapolate, ..Default::default() };
            let o = direct_sum(sys, lattice, &e, &v, &cfg)?;
            let c = compare(&exact, o.value, tol);
            let r = json!({
                "pass": c.pass,
                "engine": fmt_rational(&exact),
                "engine_f64": c.engine,
                "oracle": o.value,
                "oracle_raw": o.raw,
                "rel_error": c.rel_error,
                "tail_estimate": o.tail_estimate,
                "points": o.points,
                "message": c.message,
            });
            Ok((q, r, "report"))
        }
    }
}

fn subcommand_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Bernoulli { .. } => "bernoulli",
        Cmd::StepPoly { .. } => "step-poly",
        Cmd::TopePoly { .. } => "tope-poly",
        Cmd::WittenVolume { .. } => "witten-volume",
        Cmd::Zeta { .. } => "zeta",
        Cmd::Mzv { .. } => "mzv",
        Cmd::VerlindeSu2 { .. } => "verlinde-su2",
        Cmd::OracleCheck { .. } => "oracle-check",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = subcommand_name(&cli.cmd);
    let start = Instant::now();
    match run(cli.cmd) {
        Ok((mut query, result, kind)) => {
            query["command"] = Value::String(name.into());
            let doc = json!({
                "query": query,
                "result": result,
                "result_kind": kind,
                "timing_ms": start.elapsed().as_secs_f64() * 1000.0,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
