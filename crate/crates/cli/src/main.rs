use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use derivkit::bell::{bell_general, bell_special};
use derivkit::closed_forms::{ClosedFormExpr, Family};
use derivkit::coeffs::{paper_closed_form, CoeffTable};
use derivkit::numeric::{Numeric, DEFAULT_BITS};
use derivkit::verifier::{run_suite, Suite, DEFAULT_SEED};
use derivkit::{BasisValue, Error, Rational};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(name = "derivkit", version, about = "Exact nth derivatives, Bell polynomials and their cross-checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump the arcsine coefficient triangle a(m,k).
    Coeffs {
        #[arg(long, default_value_t = 10)]
        max_m: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        /// Add the published closed form and whether it agrees.
        #[arg(long)]
        compare_paper_form: bool,
    },
    /// Print or evaluate a partial Bell polynomial B(n,k).
    Bell {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Closed form of B(n,k)(x, 1, 0, ..., 0).
        #[arg(long, conflicts_with = "args")]
        special: bool,
        /// Comma-separated rational arguments x1,x2,...
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        args: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Closed-form nth derivative of a named function.
    Derive {
        #[arg(long)]
        function: String,
        #[arg(long)]
        order: u32,
        /// Evaluate exactly at this rational point.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Exponent for pow_1px2 and pow_1mx2.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Also print a floating value with this many bits (requires --at).
        #[arg(long, num_args = 0..=1, default_missing_value = "256", requires = "at")]
        numeric: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the cross-check suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
        #[arg(long, default_value_t = 10)]
        max_order: u32,
        #[arg(long, env = "DERIVKIT_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Coeffs { max_m, format, compare_paper_form } => coeffs(max_m, format, compare_paper_form),
        Cmd::Bell { n, k, special, args, format } => bell(n, k, special, args, format),
        Cmd::Derive { function, order, at, alpha, numeric, format } => {
            derive(&function, order, at.as_deref(), alpha.as_deref(), numeric, format)
        }
        Cmd::Verify { suite, max_order, seed, format } => return verify(&suite, max_order, seed, format),
    };
    match out {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Failure::Usage(format!("{s:?} is not a rational P/Q")))
}

fn rational_json(q: &Rational) -> Value {
    json!({ "den": q.denom().to_string(), "num": q.numer().to_string() })
}

fn integer_json(v: impl ToString) -> Value {
    json!({ "den": "1", "num": v.to_string() })
}

fn coeffs(max_m: usize, format: TableFormat, compare: bool) -> Result<String, Failure> {
    if max_m < 2 {
        return Err(Failure::Usage("--max-m must be at least 2".into()));
    }
    let table = CoeffTable::build(max_m);
    let mut rows = Vec::new();
    let mut csv = String::from("m,k,a,paper,agrees");
    for (m, k, a) in table.entries() {
        let paper = if compare {
            paper_closed_form(m as u32, k as u32).ok()
        } else {
            None
        };
        let agrees = paper.as_ref().map(|p| *p == Rational::from_integer(a.clone().into()));
        let mut row = json!({ "a": integer_json(a), "k": k, "m": m });
        if compare {
            row["paper"] = paper.as_ref().map_or(Value::Null, rational_json);
            row["agrees"] = agrees.map_or(Value::Null, Value::Bool);
        }
        rows.push(row);
        let p = paper.map(|p| p.to_string()).unwrap_or_default();
        let g = agrees.map(|g| g.to_string()).unwrap_or_default();
        csv.push_str(&format!("\n{m},{k},{a},{p},{g}"));
    }
    Ok(match format {
        TableFormat::Csv => csv,
        TableFormat::Json => json!({ "max_m": max_m, "rows": rows }).to_string(),
    })
}

fn bell(n: u32, k: u32, special: bool, args: Option<Vec<String>>, format: Format) -> Result<String, Failure> {
    if k > n {
        return Err(Failure::Usage(format!("--k {k} exceeds --n {n}")));
    }
    if special {
        let f = bell_special(n, k)?;
        return Ok(match format {
            Format::Text => f.to_string(),
            Format::Json => json!({
                "coefficient": rational_json(&f.coefficient),
                "k": k,
                "n": n,
                "x_power": f.x_power,
            })
            .to_string(),
        });
    }
    let p = bell_general(n, k)?;
    if let Some(args) = args {
        let xs = args.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        let v = p.evaluate(&xs)?;
        return Ok(match format {
            Format::Text => v.to_string(),
            Format::Json => json!({ "k": k, "n": n, "value": rational_json(&v) }).to_string(),
        });
    }
    Ok(match format {
        Format::Text => p.to_string(),
        Format::Json => {
            let terms: Vec<Value> = p
                .terms()
                .map(|(e, c)| json!({ "coefficient": integer_json(c), "exponents": e }))
                .collect();
            json!({ "k": k, "n": n, "terms": terms }).to_string()
        }
    })
}

fn expr_json(e: &ClosedFormExpr) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(factors, c)| {
            let fs: Vec<Value> = factors
                .iter()
                .map(|(a, p)| json!({ "atom": a.to_string(), "exponent": rational_json(p) }))
                .collect();
            json!({ "coefficient": rational_json(c), "factors": fs })
        })
        .collect();
    Value::Array(terms)
}

fn value_json(v: &BasisValue) -> Value {
    let terms: Vec<Value> = v
        .terms()
        .map(|(m, c)| json!({ "basis": m.to_string(), "coefficient": rational_json(c) }))
        .collect();
    Value::Array(terms)
}

fn derive(
    name: &str,
    order: u32,
    at: Option<&str>,
    alpha: Option<&str>,
    numeric: Option<usize>,
    format: Format,
) -> Result<String, Failure> {
    let family = Family::from_name(name).ok_or_else(|| {
        let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
        Failure::Usage(format!("unknown function {name:?}; expected one of {}", names.join(", ")))
    })?;
    if order == 0 {
        return Err(Failure::Usage("--order must be at least 1".into()));
    }
    let alpha = alpha.map(parse_rational).transpose()?;
    if alpha.is_some() && !family.needs_alpha() {
        return Err(Failure::Usage(format!("{name} takes no --alpha")));
    }
    let expr = family.build(order, alpha.as_ref())?;
    let Some(at) = at else {
        return Ok(match format {
            Format::Text => expr.to_string(),
            Format::Json => json!({ "function": name, "order": order, "terms": expr_json(&expr) }).to_string(),
        });
    };
    let x0 = parse_rational(at)?;
    let v = expr.evaluate_exact(&x0)?;
    let num = match numeric {
        Some(bits) => Some(Numeric::new(bits)?.render(&v)?),
        None => None,
    };
    Ok(match format {
        Format::Text => match num {
            Some(n) => format!("{v}\n{n}"),
            None => v.to_string(),
        },
        Format::Json => {
            let mut o = json!({
                "at": rational_json(&x0),
                "function": name,
                "order": order,
                "value": value_json(&v),
            });
            if let Some(n) = num {
                o["numeric"] = json!({ "bits": numeric.unwrap_or(DEFAULT_BITS), "value": n });
            }
            o.to_string()
        }
    })
}

fn verify(suite: &str, max_order: u32, seed: u64, format: Format) -> ExitCode {
    let suite: Suite = suite.parse().expect("validated by clap");
    let report = match run_suite(suite, max_order, seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.summary.fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
