use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use tame_measure::dsl::{self, Definitions, ParseError};
use tame_measure::measure::{self, MeasureResult};
use tame_measure::sampler::{self, SampleOptions};
use tame_measure::{crofton, BoxComplex64, Error, XPoly64, XReal64};

#[derive(Parser)]
#[command(
    name = "tame-measure",
    version,
    about = "Polynomial-valued measures on box complexes"
)]
struct Cli {
    /// File of `name = expr` definitions usable in expressions.
    #[arg(long, global = true, value_name = "FILE")]
    defs: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print mu, chi and dimension of a set.
    Measure {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare two sets in the lexicographic order of mu.
    Compare {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Report inclusion and equality of two sets.
    Subset { a: String, b: String },
    /// Monte Carlo estimate of the top or codimension-1 intrinsic volume.
    Crofton {
        expr: String,
        /// `d`, `d-1`, or the index as a number.
        #[arg(long)]
        index: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Least N at which every polynomial is within epsilon of an integer.
    FindN {
        /// Coefficients "c0,c1,..."; repeat for several polynomials.
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1_000_000)]
        nmax: u64,
        #[arg(long, default_value_t = 1)]
        nstart: u64,
    },
    /// Build a finite sample whose counts track mu at a common scale N.
    Sample {
        #[arg(long = "set")]
        sets: Vec<String>,
        /// Forced point "x,y,...".
        #[arg(long = "point")]
        points: Vec<String>,
        /// epsilon = 1/m.
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        nstart: u64,
        #[arg(long, default_value_t = 1_000_000)]
        nmax: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exact Hausdorff measure, optionally checked against a finite sample.
    Hausdorff {
        expr: String,
        #[arg(long)]
        index: usize,
        #[arg(long, requires = "m")]
        check_ratio: bool,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 1)]
        nstart: u64,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    Exhausted(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Exhausted(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Exhausted(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::SearchExhausted(_) => Failure::Exhausted(msg),
            Error::Parse(_)
            | Error::UnknownName(_)
            | Error::CyclicDefinition(_)
            | Error::DuplicateDefinition(_)
            | Error::InvalidArgument(_) => Failure::Usage(msg),
            _ => Failure::Domain(msg),
        }
    }
}

type Outcome = Result<(), Failure>;

fn caret(label: &str, src: &str, e: &ParseError) -> String {
    let line = src.lines().nth(e.line - 1).unwrap_or("");
    format!("{label}: {e}\n  {line}\n  {}^", " ".repeat(e.column - 1))
}

struct Session {
    env: HashMap<String, BoxComplex64>,
}

impl Session {
    fn load(defs: Option<&PathBuf>) -> Result<Self, Failure> {
        let Some(path) = defs else {
            return Ok(Session {
                env: HashMap::new(),
            });
        };
        let src = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let label = path.display().to_string();
        let defs = Definitions::parse(&src).map_err(|e| match e {
            Error::Parse(pe) => Failure::Usage(caret(&label, &src, &pe)),
            other => Failure::from(other),
        })?;
        Ok(Session {
            env: defs.resolve()?,
        })
    }

    fn set(&self, src: &str) -> Result<BoxComplex64, Failure> {
        let e = dsl::parse(src).map_err(|pe| Failure::Usage(caret("expression", src, &pe)))?;
        Ok(dsl::evaluate(&e, &self.env)?)
    }
}

fn print_json<S: Serialize>(v: &S) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn measure_text(r: &MeasureResult<f64>) -> String {
    format!(
        "mu = {}, chi = {}, dim = {}\nbounded = {}, finite = {}",
        r.mu,
        r.mu.coeff(0),
        r.dim,
        yes(r.in_ub),
        yes(r.in_uf)
    )
}

fn cmd_measure(s: &Session, expr: &str, json: bool) -> Outcome {
    let r = measure::mu(&s.set(expr)?)?;
    if json {
        print_json(&r);
    } else {
        println!("{}", measure_text(&r));
    }
    Ok(())
}

#[derive(Serialize)]
struct Comparison {
    verdict: &'static str,
    a: MeasureResult<f64>,
    b: MeasureResult<f64>,
}

fn cmd_compare(s: &Session, a: &str, b: &str, json: bool) -> Outcome {
    let (a, b) = (measure::mu(&s.set(a)?)?, measure::mu(&s.set(b)?)?);
    let verdict = match a.mu.lex_cmp(&b.mu) {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    };
    if json {
        print_json(&Comparison { verdict, a, b });
    } else {
        println!("{verdict}");
        println!("A: mu = {}", a.mu);
        println!("B: mu = {}", b.mu);
    }
    Ok(())
}

fn cmd_subset(s: &Session, a: &str, b: &str) -> Outcome {
    let (a, b) = (s.set(a)?, s.set(b)?);
    let ab = a.is_subset(&b)?;
    let ba = b.is_subset(&a)?;
    println!("A subset of B: {ab}");
    println!("B subset of A: {ba}");
    println!("equal: {}", ab && ba);
    Ok(())
}

fn cmd_crofton(
    s: &Session,
    expr: &str,
    index: &str,
    samples: u64,
    seed: u64,
    json: bool,
) -> Outcome {
    let set = s.set(expr)?;
    let d = set.ambient_dim();
    let i = match index {
        "d" => d,
        "d-1" if d >= 1 => d - 1,
        other => other.parse::<usize>().map_err(|_| {
            Failure::Usage(format!("--index must be d, d-1 or a number, got {other}"))
        })?,
    };
    let est = if i == d {
        crofton::estimate_volume(&set, samples, seed)?
    } else if i + 1 == d {
        crofton::estimate_codim1(&set, samples, seed)?
    } else {
        return Err(Failure::Usage(format!(
            "only indices {} and {} can be estimated in dimension {d}",
            d,
            d.saturating_sub(1)
        )));
    };
    if json {
        print_json(&est);
        return Ok(());
    }
    println!(
        "estimate = {} +/- {} (samples = {}, seed = {})",
        est.estimate, est.std_error, est.n_samples, est.seed
    );
    let exact = measure::intrinsic_volume(&set, i)?;
    println!("exact = {exact}");
    if let XReal64::Finite(v) = exact {
        if est.std_error > 0.0 {
            println!("z = {:.3}", (est.estimate - v) / est.std_error);
        } else {
            println!("z = n/a (zero standard error)");
        }
    }
    Ok(())
}

fn parse_numbers(what: &str, s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => t
                    .parse::<f64>()
                    .ok()
                    .filter(|v| !v.is_nan())
                    .ok_or_else(|| Failure::Usage(format!("bad number `{t}` in {what} \"{s}\""))),
            }
        })
        .collect()
}

fn cmd_find_n(polys: &[String], epsilon: f64, nmax: u64, nstart: u64) -> Outcome {
    let ps = polys
        .iter()
        .map(|s| {
            let c = parse_numbers("--poly", s)?;
            Ok(XPoly64::new(c.into_iter().map(XReal64::new).collect()))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let n = sampler::find_near_integer_n(&ps, epsilon, nstart, nmax, |_| true)?;
    println!("N = {n}");
    for (p, dist) in ps.iter().zip(sampler::distances(&ps, n)?) {
        println!("  p(N) = {} for p = {}, distance {:e}", p.eval(n)?, p, dist);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    s: &Session,
    sets: &[String],
    points: &[String],
    m: u64,
    nstart: u64,
    nmax: u64,
    json: bool,
) -> Outcome {
    let sets = sets
        .iter()
        .map(|e| s.set(e))
        .collect::<Result<Vec<_>, _>>()?;
    let points = points
        .iter()
        .map(|p| parse_numbers("--point", p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut opts = SampleOptions::new(m);
    opts.n_start = nstart;
    opts.n_max = nmax;
    let r = sampler::build_sample(&sets, &points, opts)?;
    if json {
        print_json(&r);
        return Ok(());
    }
    println!(
        "N = {}, epsilon = {}, points = {}",
        r.n,
        r.epsilon,
        r.points.len()
    );
    for (k, c) in r.per_set.iter().enumerate() {
        println!(
            "set {k}: count = {}, mu(N) = {}, discrepancy = {:e}",
            c.count, c.mu_at_n, c.discrepancy
        );
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_hausdorff(
    s: &Session,
    expr: &str,
    index: usize,
    check: bool,
    m: Option<u64>,
    nstart: u64,
    json: bool,
) -> Outcome {
    let set = s.set(expr)?;
    let h = measure::hausdorff_measure(&set, index);
    let ratio = match (check, m) {
        (true, Some(m)) => {
            let mut opts = SampleOptions::new(m);
            opts.n_start = nstart;
            Some(sampler::hausdorff_ratio_check(&set, index, opts)?)
        }
        _ => None,
    };
    if json {
        #[derive(Serialize)]
        struct Out {
            index: usize,
            measure: XReal64,
            #[serde(skip_serializing_if = "Option::is_none")]
            ratio_check: Option<sampler::HausdorffRatio<f64>>,
        }
        print_json(&Out {
            index,
            measure: h,
            ratio_check: ratio,
        });
        return Ok(());
    }
    println!("H^{index} = {h}");
    if let Some(r) = ratio {
        println!(
            "N = {}, count = {}, count/N^{index} = {}, gap = {:e}, bound = {:e}",
            r.n, r.count, r.ratio, r.gap, r.bound
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let s = Session::load(cli.defs.as_ref())?;
    match cli.command {
        Command::Measure { expr, json } => cmd_measure(&s, &expr, json),
        Command::Compare { a, b, json } => cmd_compare(&s, &a, &b, json),
        Command::Subset { a, b } => cmd_subset(&s, &a, &b),
        Command::Crofton {
            expr,
            index,
            samples,
            seed,
            json,
        } => cmd_crofton(&s, &expr, &index, samples, seed, json),
        Command::FindN {
            polys,
            epsilon,
            nmax,
            nstart,
        } => cmd_find_n(&polys, epsilon, nmax, nstart),
        Command::Sample {
            sets,
            points,
            m,
            nstart,
            nmax,
            json,
        } => cmd_sample(&s, &sets, &points, m, nstart, nmax, json),
        Command::Hausdorff {
            expr,
            index,
            check_ratio,
            m,
            nstart,
            json,
        } => cmd_hausdorff(&s, &expr, index, check_ratio, m, nstart, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
