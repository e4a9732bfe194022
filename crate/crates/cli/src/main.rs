use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use upsig_core::bounds::{
    braid_index_bound_for_word, cobordism_report, parse_operand, slice_bennequin_tau, BraidIndexBound, BraidIndexScope,
};
use upsig_core::braid::BraidWord;
use upsig_core::homogenize::{hom_ups_beta_n, hom_ups_torus_braid, kn_sandwich, HomogenizedProfile};
use upsig_core::knot::{KnotExpr, TorusKnot};
use upsig_core::plcalc::PlFunction;
use upsig_core::rational::{format_decimal, format_rational, parse_rational, rat, Rational};
use upsig_core::semigroup::torus_counting;
use upsig_core::signature::{braid_signature, expr_signature, sweep, OmegaPoint, SeifertMatrix, SweepValue};
use upsig_core::upsilon::{torus_table, ups_expr, Route};
use upsig_core::{selftest, svg, Error, Result};

#[derive(Parser, Debug)]
#[command(name = "upsig", version, about = "Upsilon, Levine-Tristram signatures and cobordism bounds for torus knots and braids")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "UPSIG_FORMAT", default_value = "human")]
    format: Format,

    /// Round rationals to this many decimal places (display only).
    #[arg(long, global = true, value_name = "K")]
    decimal: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Υ of a torus knot or a connected sum of torus knots.
    #[command(subcommand)]
    Upsilon(UpsilonCmd),
    /// Semigroup counting function of ⟨a, b⟩.
    Semigroup { a: u64, b: u64 },
    /// Levine-Tristram signature of a braid closure or a torus-knot sum.
    Signature(SignatureArgs),
    /// Cobordism-distance and braid-index bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Homogenized Υ of the torus-braid and beta_n families.
    Homogenize(HomogenizeArgs),
    /// Tables of Υ values.
    #[command(subcommand)]
    Table(TableCmd),
    /// Runs the validation suite.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum UpsilonCmd {
    /// Υ of T(p, q).
    Torus {
        p: u64,
        q: u64,
        #[command(flatten)]
        opts: UpsilonOpts,
    },
    /// Υ of an expression such as `T(8,11) # -2*T(3,4)`.
    Expr {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        opts: UpsilonOpts,
    },
}

#[derive(Args, Debug)]
struct UpsilonOpts {
    /// Evaluate at t instead of printing the whole function.
    #[arg(long, value_name = "T")]
    eval: Option<String>,
    /// Computation route; `both` cross-checks the two.
    #[arg(long, value_enum, default_value = "both")]
    route: RouteArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Euclid,
    Semigroup,
    Both,
}

#[derive(Args, Debug)]
struct SignatureArgs {
    /// Braid word, e.g. "1 1 1 2 2 2 2 2 2 2".
    #[arg(long, conflicts_with = "knot", required_unless_present = "knot")]
    braid: Option<String>,
    /// Torus-knot expression instead of a braid.
    #[arg(long, allow_hyphen_values = true)]
    knot: Option<String>,
    /// Strand count; defaults to the largest generator plus one.
    #[arg(long, requires = "braid")]
    strands: Option<usize>,
    /// ω = exp(iπs), 0 < s <= 1.
    #[arg(long, value_name = "S", default_value = "1", conflicts_with = "sweep")]
    omega: String,
    /// Evaluate at s = j/k for j = 1..k-1.
    #[arg(long, value_name = "K", requires = "braid")]
    sweep: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Lower bounds for d(K, L).
    Cobordism {
        /// Knot expression or certificate literal `cert(n=..,k=..,g4=..[,m=..])`.
        #[arg(long = "K", value_name = "KNOT", allow_hyphen_values = true)]
        k: String,
        #[arg(long = "L", value_name = "KNOT", allow_hyphen_values = true)]
        l: String,
        /// Shorthand for `--format json`.
        #[arg(long)]
        json: bool,
    },
    /// Slice-Bennequin lower bound (ℓ − n + 1)/2 for τ and g4.
    Bennequin {
        #[arg(long)]
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Braid-index bound over the concordance class of a twisted positive braid.
    BraidIndex {
        #[arg(long, conflicts_with = "knot", required_unless_present = "knot")]
        braid: Option<String>,
        /// A single positive torus knot.
        #[arg(long)]
        knot: Option<String>,
        #[arg(long, requires = "braid")]
        strands: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct HomogenizeArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: u64,
    /// Exponent of (a_1⋯a_{n−1}) for the torus family.
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    /// Evaluate at t.
    #[arg(long, value_name = "T")]
    t: Option<String>,
    /// Report convexity of the profile (and the K_n sandwich for beta_n).
    #[arg(long)]
    check_convexity: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Torus,
    #[value(name = "beta_n")]
    BetaN,
}

#[derive(Subcommand, Debug)]
enum TableCmd {
    /// Υ_T(p,q)(t) for 2 <= p < q, p <= pmax, q <= qmax.
    Torus {
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        qmax: u64,
        #[arg(long, value_name = "T")]
        t: String,
    },
}

struct Out {
    format: Format,
    decimal: Option<usize>,
}

impl Out {
    fn num(&self, r: &Rational) -> String {
        match self.decimal {
            Some(k) => format_decimal(r, k),
            None => format_rational(r),
        }
    }

    fn function(&self, f: &PlFunction, title: &str) -> String {
        match self.format {
            Format::Human => {
                let mut s = format!("{title}\n");
                for (t, v) in f.breakpoints() {
                    s.push_str(&format!("  t = {:<8} {}\n", self.num(t), self.num(v)));
                }
                s
            }
            Format::Json => f.to_json().to_string() + "\n",
            Format::Csv => f.to_csv(),
            Format::Svg => svg::render(f, title),
        }
    }

    fn value(&self, name: &str, r: &Rational) -> Result<String> {
        Ok(match self.format {
            Format::Human => format!("{}\n", self.num(r)),
            Format::Json => json!({ name: self.num(r) }).to_string() + "\n",
            Format::Csv => format!("{name}\n{}\n", self.num(r)),
            Format::Svg => return Err(no_svg()),
        })
    }
}

fn no_svg() -> Error {
    Error::Argument("svg output is only available for piecewise-linear functions".into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { format: cli.format, decimal: cli.decimal };
    match run(cli.command, out) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command, mut out: Out) -> Result<(String, u8)> {
    let text = match command {
        Command::Upsilon(cmd) => upsilon(cmd, &out)?,
        Command::Semigroup { a, b } => semigroup(a, b, &out)?,
        Command::Signature(args) => signature(args, &out)?,
        Command::Bounds(cmd) => {
            if let BoundsCmd::Cobordism { json: true, .. } = cmd {
                out.format = Format::Json;
            }
            bounds(cmd, &out)?
        }
        Command::Homogenize(args) => homogenize(args, &out)?,
        Command::Table(TableCmd::Torus { pmax, qmax, t }) => table(pmax, qmax, &t, &out)?,
        Command::Selftest => return selftest_cmd(&out),
    };
    Ok((text, 0))
}

fn upsilon(cmd: UpsilonCmd, out: &Out) -> Result<String> {
    let (expr, opts) = match cmd {
        UpsilonCmd::Torus { p, q, opts } => (KnotExpr::single(TorusKnot::positive(p, q)?), opts),
        UpsilonCmd::Expr { expr, opts } => (KnotExpr::parse(&expr)?, opts),
    };
    let f = match opts.route {
        RouteArg::Euclid => ups_expr(&expr, Route::Euclid)?,
        RouteArg::Semigroup => ups_expr(&expr, Route::Semigroup)?,
        RouteArg::Both => {
            let (a, b) = (ups_expr(&expr, Route::Euclid)?, ups_expr(&expr, Route::Semigroup)?);
            if a != b {
                return Err(Error::Validation(format!("routes disagree for {expr}: {a} vs {b}")));
            }
            a
        }
    };
    match opts.eval {
        Some(t) => out.value("upsilon", &f.eval(&parse_rational(&t)?)?),
        None => Ok(out.function(&f, &format!("Upsilon of {expr}"))),
    }
}

fn semigroup(a: u64, b: u64, out: &Out) -> Result<String> {
    let h = torus_counting(a, b)?;
    let gaps = h.gaps();
    Ok(match out.format {
        Format::Json => json!({ "genus": h.genus(), "gaps": gaps, "H": h.values() }).to_string() + "\n",
        Format::Svg => return Err(no_svg()),
        Format::Human | Format::Csv => {
            let gaps: Vec<String> = gaps.iter().map(u64::to_string).collect();
            let mut s = format!("# genus {}\n# gaps {}\ni,H\n", h.genus(), gaps.join(" "));
            for (i, v) in h.values().iter().enumerate() {
                s.push_str(&format!("{i},{v}\n"));
            }
            s
        }
    })
}

fn parse_braid(word: &str, strands: Option<usize>) -> Result<BraidWord> {
    BraidWord::parse(word, strands)
}

fn signature(args: SignatureArgs, out: &Out) -> Result<String> {
    if let Some(k) = args.sweep {
        let b = parse_braid(args.braid.as_deref().unwrap_or_default(), args.strands)?;
        let v = SeifertMatrix::from_braid(&b)?;
        let rows = sweep(&v, k)?;
        return Ok(match out.format {
            Format::Json => {
                let rows: Vec<_> = rows
                    .iter()
                    .map(|(s, value)| match value {
                        SweepValue::Value(x) => json!({ "s": format_rational(s), "sigma": x }),
                        SweepValue::Jump => json!({ "s": format_rational(s), "sigma": "JUMP" }),
                    })
                    .collect();
                serde_json::Value::from(rows).to_string() + "\n"
            }
            Format::Svg => return Err(no_svg()),
            Format::Human | Format::Csv => {
                let mut s = String::from("s,sigma\n");
                for (x, value) in &rows {
                    match value {
                        SweepValue::Value(v) => s.push_str(&format!("{},{v}\n", out.num(x))),
                        SweepValue::Jump => s.push_str(&format!("{},JUMP\n", out.num(x))),
                    }
                }
                s
            }
        });
    }
    let w = OmegaPoint::new(parse_rational(&args.omega)?)?;
    let sigma = match (&args.braid, &args.knot) {
        (Some(word), _) => braid_signature(&parse_braid(word, args.strands)?, &w)?,
        (None, Some(e)) => expr_signature(&KnotExpr::parse(e)?, &w)?,
        (None, None) => unreachable!("clap requires one of --braid and --knot"),
    };
    out.value("sigma", &Rational::from_integer(sigma.into()))
}

fn bounds(cmd: BoundsCmd, out: &Out) -> Result<String> {
    match cmd {
        BoundsCmd::Cobordism { k, l, .. } => {
            let (ck, cl) = (parse_operand(&k)?, parse_operand(&l)?);
            let report = cobordism_report(&ck, &cl);
            Ok(match out.format {
                Format::Json => {
                    let mut v = report.to_json();
                    v["K"] = json!(ck.to_string());
                    v["L"] = json!(cl.to_string());
                    v.to_string() + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("rule,value\n");
                    for w in &report.witnesses {
                        s.push_str(&format!("{},{}\n", w.rule, out.num(&w.value)));
                    }
                    s.push_str(&format!("best,{}\n", out.num(&report.best_lower)));
                    s
                }
                Format::Svg => return Err(no_svg()),
                Format::Human => format!("K: {ck} [{}]\nL: {cl} [{}]\n{report}", ck.provenance(), cl.provenance()),
            })
        }
        BoundsCmd::Bennequin { braid, strands } => {
            out.value("tau_lower", &slice_bennequin_tau(&parse_braid(&braid, strands)?)?)
        }
        BoundsCmd::BraidIndex { braid, knot, strands } => {
            let word = match (braid, knot) {
                (Some(w), _) => parse_braid(&w, strands)?,
                (None, Some(k)) => {
                    let e = KnotExpr::parse(&k)?;
                    match e.summands() {
                        [(t, 1)] if !t.is_mirrored() => BraidWord::torus_braid(t.p() as usize, t.q() as usize)?,
                        _ => return Err(Error::Unsupported(format!("`{e}` is not a single positive torus knot"))),
                    }
                }
                (None, None) => unreachable!("clap requires one of --braid and --knot"),
            };
            let bound = braid_index_bound_for_word(&word)?;
            braid_index_text(bound, out)
        }
    }
}

fn braid_index_text(bound: Option<BraidIndexBound>, out: &Out) -> Result<String> {
    let scope = |s: BraidIndexScope| match s {
        BraidIndexScope::AllConcordant => "all concordant knots",
        BraidIndexScope::QuasiPositiveOnly => "quasi-positive concordant knots only",
    };
    Ok(match (out.format, bound) {
        (Format::Svg, _) => return Err(no_svg()),
        (Format::Json, Some(b)) => json!({ "braid_index_lower": b.value, "scope": scope(b.scope) }).to_string() + "\n",
        (Format::Json, None) => json!({ "braid_index_lower": null, "scope": "inapplicable" }).to_string() + "\n",
        (_, Some(b)) => format!("braid index >= {} for {}\n", b.value, scope(b.scope)),
        (_, None) => "inapplicable: the word does not start with a full twist\n".into(),
    })
}

fn homogenize(args: HomogenizeArgs, out: &Out) -> Result<String> {
    let profile: HomogenizedProfile = match args.family {
        FamilyArg::Torus => {
            let m = args.m.ok_or_else(|| Error::Argument("--family torus needs --m".into()))?;
            hom_ups_torus_braid(args.n, m)?
        }
        FamilyArg::BetaN => hom_ups_beta_n(args.n)?,
    };
    let title = match args.family {
        FamilyArg::Torus => format!("homogenized Upsilon of (a1...a{})^{}", args.n.saturating_sub(1), args.m.unwrap_or(0)),
        FamilyArg::BetaN => format!("homogenized Upsilon of beta_{}", args.n),
    };
    let mut text = match &args.t {
        Some(t) => out.value("upsilon", &profile.profile.eval(&parse_rational(t)?)?)?,
        None => out.function(&profile.profile, &title),
    };
    if args.check_convexity {
        let convex = profile.profile.is_convex();
        let sandwich = if args.family == FamilyArg::BetaN && args.n >= 1 {
            let (_, upper) = kn_sandwich(args.n, &rat(2, 3))?;
            let (lower, _) = kn_sandwich(args.n, &rat(1, 1))?;
            Some((upper.clone() < lower, upper, lower))
        } else {
            None
        };
        match out.format {
            Format::Json => {
                let mut v = json!({ "convex": convex });
                if let Some((certified, upper, lower)) = &sandwich {
                    v["kn_nonconvex_certified"] = json!(certified);
                    v["kn_upper_2_3"] = json!(format_rational(upper));
                    v["kn_lower_1"] = json!(format_rational(lower));
                }
                text = v.to_string() + "\n";
            }
            _ => {
                text.push_str(&format!("convex: {convex}\n"));
                if let Some((certified, upper, lower)) = sandwich {
                    text.push_str(&format!(
                        "K_{} sandwich: upper(2/3) = {}, lower(1) = {}; non-convexity certified: {certified}\n",
                        args.n,
                        out.num(&upper),
                        out.num(&lower)
                    ));
                }
            }
        }
    }
    Ok(text)
}

fn table(pmax: u64, qmax: u64, t: &str, out: &Out) -> Result<String> {
    let t = parse_rational(t)?;
    let cells = torus_table(pmax, qmax, &t)?;
    Ok(match out.format {
        Format::Json => {
            let rows: Vec<_> =
                cells.iter().map(|c| json!({ "p": c.p, "q": c.q, "value": out.num(&c.value) })).collect();
            serde_json::Value::from(rows).to_string() + "\n"
        }
        Format::Svg => return Err(no_svg()),
        Format::Human | Format::Csv => {
            let mut s = String::from("p,q,upsilon\n");
            for c in &cells {
                s.push_str(&format!("{},{},{}\n", c.p, c.q, out.num(&c.value)));
            }
            s
        }
    })
}

fn selftest_cmd(out: &Out) -> Result<(String, u8)> {
    let start = Instant::now();
    let outcomes = selftest::run_all();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let text = match out.format {
        Format::Json => {
            let rows: Vec<_> = outcomes
                .iter()
                .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail, "seconds": o.elapsed.as_secs_f64() }))
                .collect();
            serde_json::Value::from(rows).to_string() + "\n"
        }
        _ => {
            let mut s = String::new();
            for o in &outcomes {
                let verdict = if o.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{verdict} [{:>2}] {} ({:.2?}): {}\n", o.id, o.title, o.elapsed, o.detail));
            }
            s.push_str(&format!("{} of {} criteria passed in {:.2?}\n", outcomes.len() - failed, outcomes.len(), start.elapsed()));
            s
        }
    };
    let code = if failed == 0 { 0 } else { Error::Validation(String::new()).exit_code() as u8 };
    Ok((text, code))
}
