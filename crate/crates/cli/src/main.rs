use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use cms_laurent::finite::{phi_mn, phi_n, FiniteLaurentPoly};
use cms_laurent::jack::{jack_laurent, jack_laurent_in, jt_limit, JackLaurent};
use cms_laurent::ops::{apply, Operator, OperatorKind};
use cms_laurent::pieri::{pieri_expand, pieri_p_minus_one};
use cms_laurent::report::Report;
use cms_laurent::verify::{self, Item, Suite};
use cms_laurent::{BiPartition, BigRational, Coeff, Error, Params, Partition, RatFunc, SymFunc};

#[derive(Parser)]
#[command(
    name = "cms-laurent",
    version,
    about = "Jack-Laurent symmetric functions and CMS operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for P_{λ,μ} and print it in the power-sum and monomial bases.
    JackLaurent {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Expand p_1 P_{λ,μ} (or p_{-1} P_{λ,μ}) in Jack-Laurent functions.
    Pieri {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Multiply by p_{-1} instead of p_1.
        #[arg(long)]
        minus: bool,
    },
    /// P_{λ,μ} at k = -1.
    JtLimit {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Apply an operator to an expression in p_i, w, k, p0.
    ApplyOp {
        /// One of trig-stable, trig-param, rational, bc-rational, laurent,
        /// laurent-ext, momentum-trig, momentum-rational.
        #[arg(long)]
        op: String,
        #[arg(long)]
        input: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run verification suites.
    Verify {
        /// dualities, pieri, specialization, jt, eigen, diagrams or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Degree bound for test monomials, or the largest |λ|, |μ|.
        #[arg(long)]
        degree: Option<u32>,
        /// Seed for the numeric spot checks of the eigen suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Specialize P_{λ,μ} (or --input) to N variables, or to m|n variables.
    Specialize {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        input: Option<String>,
        #[arg(long = "N", conflicts_with_all = ["m", "n"])]
        n_vars: Option<usize>,
        #[arg(long, requires = "n")]
        m: Option<usize>,
        #[arg(long, requires = "m")]
        n: Option<usize>,
        /// Value of k; defaults to -1 for the m|n specialization.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct PairArgs {
    /// Comma-separated decreasing parts; `0` or omitted for the empty partition.
    #[arg(long, default_value = "0")]
    lam: String,
    #[arg(long, default_value = "0")]
    mu: String,
}

#[derive(Args)]
struct ModeArgs {
    /// Evaluate at the rational point given by --k and --p0.
    #[arg(long, requires_all = ["k", "p0"])]
    numeric: bool,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p0: Option<String>,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    out: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Result of a command: its output and whether all checks passed.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

fn parse_partition(s: &str) -> Result<Partition, Error> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad partition part {x:?} in {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if parts.contains(&0) {
        return Err(Error::Parse(format!("partition {s:?} has a zero part")));
    }
    Partition::new(parts)
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

impl PairArgs {
    fn pair(&self) -> Result<BiPartition, Error> {
        Ok(BiPartition::new(
            parse_partition(&self.lam)?,
            parse_partition(&self.mu)?,
        ))
    }
}

impl ModeArgs {
    fn params(&self) -> Result<Option<Params<BigRational>>, Error> {
        match (self.numeric, &self.k, &self.p0) {
            (true, Some(k), Some(p0)) => Ok(Some(Params::numeric(
                parse_rational(k)?,
                parse_rational(p0)?,
            ))),
            (false, None, None) => Ok(None),
            _ => Err(Error::Invalid(
                "--k and --p0 are used together with --numeric".into(),
            )),
        }
    }
}

fn mode_json(params: &Option<Params<BigRational>>) -> Value {
    match params {
        None => json!({"mode": "symbolic"}),
        Some(p) => json!({"mode": "numeric", "k": p.k.to_string(), "p0": p.p0.to_string()}),
    }
}

fn coeff_list<C: Coeff>(m: &std::collections::BTreeMap<BiPartition, C>) -> Value {
    Value::Array(
        m.iter()
            .rev()
            .map(|(nu, c)| json!({"pair": nu, "coeff": c.to_string()}))
            .collect(),
    )
}

fn render<C: Coeff>(j: &JackLaurent<C>) -> (Value, Value, String, String) {
    (
        serde_json::to_value(&j.p_form).expect("serializable"),
        coeff_list(&j.m_coeffs),
        j.eigenvalue.to_string(),
        j.p_form.to_string(),
    )
}

fn jack_command(pair: &PairArgs, mode: &ModeArgs) -> Result<Outcome, Error> {
    let b = pair.pair()?;
    let params = mode.params()?;
    let (p, m, e, text) = match &params {
        None => render(&*jack_laurent(&b)?),
        Some(ps) => render(&jack_laurent_in(&b, ps)?),
    };
    let mut json = json!({"pair": b, "eigenvalue": e, "p": p, "m": m});
    merge(&mut json, mode_json(&params));
    Ok(Outcome {
        text: format!("P{b} = {text}\nE = {e}"),
        json,
        ok: true,
    })
}

fn pieri_command(pair: &PairArgs, mode: &ModeArgs, minus: bool) -> Result<Outcome, Error> {
    let b = pair.pair()?;
    let params = mode.params()?;
    let terms = if minus {
        pieri_p_minus_one(&b)?
    } else {
        pieri_expand(&b)?
    };
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for t in terms {
        let coeff = match &params {
            None => t.coeff.to_string(),
            Some(ps) => t.coeff.eval_at(&ps.k, &ps.p0)?.to_string(),
        };
        lines.push(format!("{}  {}", t.target, coeff));
        rows.push(json!({"target": t.target, "kind": t.kind, "coeff": coeff}));
    }
    let mut json = json!({
        "pair": b,
        "generator": if minus { -1 } else { 1 },
        "terms": rows,
    });
    merge(&mut json, mode_json(&params));
    Ok(Outcome {
        text: lines.join("\n"),
        json,
        ok: true,
    })
}

fn jt_command(pair: &PairArgs) -> Result<Outcome, Error> {
    let b = pair.pair()?;
    let f = jt_limit(&b)?;
    Ok(Outcome {
        text: f.to_string(),
        json: json!({"pair": b, "k": "-1", "p": f.to_json(), "text": f.to_string()}),
        ok: true,
    })
}

fn apply_command(op: &str, input: &str, mode: &ModeArgs) -> Result<Outcome, Error> {
    let kind: OperatorKind = op.parse()?;
    let f: SymFunc<RatFunc> = input.parse()?;
    let params = mode.params()?;
    let (text, value) = match &params {
        None => {
            let g = apply(kind, &f)?;
            (
                g.to_string(),
                serde_json::to_value(&g).expect("serializable"),
            )
        }
        Some(ps) => {
            let g = Operator::new(kind, ps).apply(&f.specialize(ps)?)?;
            (
                g.to_string(),
                serde_json::to_value(&g).expect("serializable"),
            )
        }
    };
    let mut json =
        json!({"op": kind.name(), "input": f.to_string(), "result": value, "text": text});
    merge(&mut json, mode_json(&params));
    Ok(Outcome {
        text,
        json,
        ok: true,
    })
}

fn finite_json<C: Coeff>(p: &FiniteLaurentPoly<C>) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .rev()
            .map(|(e, c)| json!({"exps": e, "coeff": c.to_string()}))
            .collect(),
    )
}

fn specialize_command(
    pair: &PairArgs,
    input: Option<&str>,
    n_vars: Option<usize>,
    m: Option<usize>,
    n: Option<usize>,
    k: Option<&str>,
) -> Result<Outcome, Error> {
    let (source, f) = match input {
        Some(s) => (json!(s), s.parse::<SymFunc<RatFunc>>()?),
        None => {
            let b = pair.pair()?;
            (json!({"pair": b}), jack_laurent(&b)?.p_form.clone())
        }
    };
    match (n_vars, m, n) {
        (Some(nv), None, None) => {
            let mut img = phi_n(&f, nv)?;
            let mut at = Value::Null;
            if let Some(k) = k {
                let kq = parse_rational(k)?;
                let kr = RatFunc::from_rational(kq.clone());
                img = img.map_coeffs(|c| c.substitute(&kr, &RatFunc::p0()))?;
                at = json!(kq.to_string());
            }
            Ok(Outcome {
                text: img.to_string(),
                json: json!({"source": source, "N": nv, "k": at, "terms": finite_json(&img), "text": img.to_string()}),
                ok: true,
            })
        }
        (None, Some(m), Some(n)) => {
            let kq = match k {
                Some(k) => parse_rational(k)?,
                None => BigRational::from_integer((-1).into()),
            };
            let img = phi_mn(&f, m, n, &kq)?;
            Ok(Outcome {
                text: img.to_string(),
                json: json!({
                    "source": source,
                    "m": m,
                    "n": n,
                    "k": kq.to_string(),
                    "terms": finite_json(&img.poly),
                    "text": img.to_string(),
                }),
                ok: true,
            })
        }
        _ => Err(Error::Invalid("give either --N or both --m and --n".into())),
    }
}

/// Parameter points for the numeric spot checks, drawn from `seed`.
fn sample_points(seed: u64) -> Vec<(BigRational, BigRational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = |allow_zero: bool| loop {
        let num: i64 = rng.random_range(-20..=20);
        let den: i64 = rng.random_range(1..=13);
        if allow_zero || num != 0 {
            return BigRational::new(num.into(), den.into());
        }
    };
    (0..3).map(|_| (q(false), q(true))).collect()
}

fn verify_command(suite: &str, degree: Option<u32>, seed: u64) -> Result<Outcome, Error> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let mut work: Vec<(Suite, Item)> = Vec::new();
    for &s in &suites {
        work.extend(verify::items(s, degree).into_iter().map(|i| (s, i)));
        if s == Suite::Eigen {
            work.extend(
                verify::numeric_items(&sample_points(seed))
                    .into_iter()
                    .map(|i| (s, i)),
            );
        }
    }
    let results: Vec<Result<Report, Error>> =
        work.par_iter().map(|(_, item)| verify::run(item)).collect();
    let mut reports = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for ((s, _), r) in work.iter().zip(results) {
        let r = r?;
        ok &= r.passed();
        lines.push(format!("[{s}] {r}"));
        reports.push(json!({"suite": s.name(), "report": r}));
    }
    let passed = reports.len() - lines.iter().filter(|l| l.contains("] FAIL ")).count();
    lines.push(format!("{passed}/{} checks passed", reports.len()));
    Ok(Outcome {
        text: lines.join("\n"),
        json: json!({
            "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "degree": degree,
            "seed": seed,
            "passed": ok,
            "reports": reports,
        }),
        ok,
    })
}

fn merge(into: &mut Value, extra: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, extra) {
        a.extend(b);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match &cli.command {
        Command::JackLaurent { pair, mode, out } => (jack_command(pair, mode), out.out),
        Command::Pieri {
            pair,
            mode,
            out,
            minus,
        } => (pieri_command(pair, mode, *minus), out.out),
        Command::JtLimit { pair, out } => (jt_command(pair), out.out),
        Command::ApplyOp {
            op,
            input,
            mode,
            out,
        } => (apply_command(op, input, mode), out.out),
        Command::Verify {
            suite,
            degree,
            seed,
            out,
        } => (verify_command(suite, *degree, *seed), out.out),
        Command::Specialize {
            pair,
            input,
            n_vars,
            m,
            n,
            k,
            out,
        } => (
            specialize_command(pair, input.as_deref(), *n_vars, *m, *n, k.as_deref()),
            out.out,
        ),
    };
    match result {
        Ok(o) => {
            match format {
                Format::Text => println!("{}", o.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("serializable")
                ),
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", json!({"error": e.to_string()})),
            }
            ExitCode::from(2)
        }
    }
}
