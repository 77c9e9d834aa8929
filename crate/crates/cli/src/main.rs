//! `hermite-kit`: command-line access to the hermite-kit library.
//!
//! Exit status is 0 on success, 2 for invalid arguments and 3 when an input
//! file cannot be read or parsed.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use hermite_kit::expansions::{deconvolve_exact, default_quad_order, gram_charlier_series};
use hermite_kit::{
    complete_kpartite, count_complete_matches, eval_hermite, eval_hermite_function, evaluate_series,
    fourier_eigen_check, fourier_hermite_coeffs, gauss_hermite_rule, gram_charlier_density, hermite_explicit,
    hermite_product_integral, linearization_coeffs, matching_polynomial, wce_coeffs_1d, ExactPolynomial,
    HermiteFunctionKind, HermiteSeries, MatchCountTable, MultipartiteSpec, PolyFamily, SeriesConvention,
    SimpleGraph, StandardizedMoments,
};

use output::{list, num, Cell, Format, Table};

const QUAD_ORDER_ENV: &str = "HERMITE_KIT_QUAD_ORDER";
const MAX_POLY_DEGREE: usize = 200;

#[derive(Parser)]
#[command(name = "hermite-kit", version, about = "Hermite polynomials, quadrature, expansions and matchings")]
struct Cli {
    /// Output format for tabular results
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficients of He_n or H_n, constant term first
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "he")]
        family: Family,
    },
    /// Gauss-Hermite nodes and weights for the weight e^(-x^2/2)
    Quad {
        #[arg(long)]
        n: usize,
    },
    /// Sample a polynomial, Hermite function or series on a uniform grid
    Plotdata(PlotArgs),
    /// Matching counts and Hermite product integrals
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Hermite expansions of densities and functions
    #[command(subcommand)]
    Expand(ExpandCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    He,
    H,
}

impl Family {
    fn poly(self) -> PolyFamily {
        match self {
            Family::He => PolyFamily::ProbabilistHe,
            Family::H => PolyFamily::PhysicistH,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    Poly,
    Function,
    Series,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, value_enum)]
    kind: PlotKind,
    /// Degree (poly, function)
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, value_enum, default_value = "he")]
    family: Family,
    /// Series coefficients a_0,a_1,... (series)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Vec<f64>,
    #[arg(long, value_enum, default_value = "density-weighted")]
    convention: Convention,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long, default_value_t = 101)]
    samples: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    DensityWeighted,
    PlainRv,
}

impl From<Convention> for SeriesConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::DensityWeighted => SeriesConvention::DensityWeighted,
            Convention::PlainRv => SeriesConvention::PlainRv,
        }
    }
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Matching polynomial of a graph read from an edge-list file
    MatchPoly {
        #[arg(long)]
        file: PathBuf,
    },
    /// Number of j-matches (all j unless --j is given)
    Matches {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        j: Option<usize>,
    },
    /// Perfect-match counts P and integrals J of complete multipartite graphs
    Kpartite {
        /// Part sizes, e.g. 1,1,2; repeat for several rows
        #[arg(long, required = true)]
        parts: Vec<String>,
        /// Also count on the explicit graph (at most 24 vertices)
        #[arg(long)]
        brute_force: bool,
    },
    /// Integral of e^(-x^2/2) times a product of He_n
    ProductIntegral {
        #[arg(long)]
        parts: String,
    },
    /// Coefficients a_l of He_m He_n = sum a_l He_l
    Linearize {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum ExpandCommand {
    /// Fourier-Hermite coefficients of a built-in density
    FourierHermite {
        #[arg(long, value_enum, default_value = "normal")]
        density: Density,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        sigma: f64,
        /// Truncation order
        #[arg(long)]
        n: usize,
        #[arg(long)]
        quad_order: Option<usize>,
    },
    /// Gram-Charlier density from standardized moments
    GramCharlier(GramCharlierArgs),
    /// Wiener chaos coefficients b_n of f(Y), Y standard normal
    Wce {
        /// Built-in function of y
        #[arg(long, value_enum, conflicts_with = "poly")]
        function: Option<WceFunction>,
        /// Polynomial coefficients c_0,c_1,... of f
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        poly: Vec<f64>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        quad_order: Option<usize>,
    },
    /// Undo Gaussian smoothing of a polynomial g: find f with phi_sigma * f = g
    Deconvolve {
        /// Coefficients of g, constant term first; decimals and fractions are exact
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        /// Keep only the first terms of the operator series
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Largest deviation of the numeric Fourier transform of h_n from (-i)^n h_n
    FourierCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3.0)]
        kmax: f64,
        #[arg(long, default_value_t = 61)]
        points: usize,
        #[arg(long)]
        quad_order: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Density {
    /// N(mu, sigma^2)
    Normal,
    /// Logistic with location mu and scale sigma
    Logistic,
}

#[derive(Clone, Copy, ValueEnum)]
enum WceFunction {
    Exp,
    Sin,
    Cos,
    Abs,
    Square,
    Cube,
}

#[derive(Args)]
struct GramCharlierArgs {
    /// File with mu, sigma, nu3, nu4, ... one per line
    #[arg(long, conflicts_with_all = ["mu", "sigma", "nu3", "nu4"])]
    moments: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    nu3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    nu4: Option<f64>,
    /// Highest Hermite term; defaults to every supplied moment
    #[arg(long)]
    order: Option<usize>,
    /// Single evaluation point
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["from", "to"])]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "to")]
    from: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "from")]
    to: Option<f64>,
    #[arg(long, default_value_t = 101)]
    samples: usize,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<hermite_kit::Error> for Failure {
    fn from(e: hermite_kit::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let fmt = |default| cli.format.unwrap_or(default);
    match cli.command {
        Command::Poly { n, family } => poly(n, family, fmt(Format::Csv)),
        Command::Quad { n } => quad(n, fmt(Format::Csv)),
        Command::Plotdata(args) => plotdata(&args, fmt(Format::Tsv)),
        Command::Graph(cmd) => graph(cmd, cli.format),
        Command::Expand(cmd) => expand(cmd, cli.format),
    }
}

fn exact_cells(coeffs: &[BigRational]) -> Vec<Cell> {
    coeffs.iter().map(|c| Cell::Exact(c.to_string())).collect()
}

fn poly(n: usize, family: Family, format: Format) -> CliResult {
    if n > MAX_POLY_DEGREE {
        return Err(Failure::Usage(format!("degree must be at most {MAX_POLY_DEGREE}, got {n}")));
    }
    Ok(list(&exact_cells(hermite_explicit(n, family.poly()).coeffs()), format))
}

fn quad(n: usize, format: Format) -> CliResult {
    let rule = gauss_hermite_rule::<f64>(n)?;
    let mut table = Table::new(vec!["node", "weight"]);
    for (x, w) in rule.iter() {
        table.push(vec![Cell::Num(x), Cell::Num(w)]);
    }
    Ok(table.render(format))
}

fn grid(from: f64, to: f64, samples: usize) -> Result<Vec<f64>, Failure> {
    if !(from.is_finite() && to.is_finite()) || from >= to {
        return Err(Failure::Usage(format!("empty range [{from}, {to}]")));
    }
    if samples < 2 {
        return Err(Failure::Usage("need at least 2 samples".into()));
    }
    let step = (to - from) / (samples - 1) as f64;
    Ok((0..samples).map(|i| if i + 1 == samples { to } else { from + step * i as f64 }).collect())
}

fn plotdata(args: &PlotArgs, format: Format) -> CliResult {
    let xs = grid(args.from, args.to, args.samples)?;
    let series = match args.kind {
        PlotKind::Series => Some(HermiteSeries::new(args.convention.into(), args.coeffs.clone())?),
        _ => None,
    };
    let mut table = Table::new(vec!["x", "y"]);
    for x in xs {
        let y = match args.kind {
            PlotKind::Poly => eval_hermite(args.n, x, args.family.poly())?,
            PlotKind::Function => {
                let kind = match args.family {
                    Family::He => HermiteFunctionKind::ChebyshevHermite,
                    Family::H => HermiteFunctionKind::Hermite,
                };
                eval_hermite_function(args.n, x, kind)
            }
            PlotKind::Series => evaluate_series(series.as_ref().expect("built above"), x),
        };
        table.push(vec![Cell::Num(x), Cell::Num(y)]);
    }
    Ok(table.render(format))
}

fn read_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    SimpleGraph::parse_edge_list(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_parts(s: &str) -> Result<MultipartiteSpec, Failure> {
    Ok(MultipartiteSpec::from_str(s)?)
}

fn graph(cmd: GraphCommand, format: Option<Format>) -> CliResult {
    match cmd {
        GraphCommand::MatchPoly { file } => {
            let g = read_graph(&file)?;
            let alpha = matching_polynomial(&g)?;
            Ok(list(&exact_cells(alpha.coeffs()), format.unwrap_or(Format::Csv)))
        }
        GraphCommand::Matches { file, j } => {
            let table = MatchCountTable::new(&read_graph(&file)?)?;
            let format = format.unwrap_or(Format::Csv);
            match j {
                Some(j) => Ok(list(&[Cell::Exact(table.get(j).to_string())], format)),
                None => {
                    let mut out = Table::new(vec!["j", "count"]);
                    for (j, c) in table.counts().iter().enumerate() {
                        out.push(vec![Cell::Exact(j.to_string()), Cell::Exact(c.to_string())]);
                    }
                    Ok(out.render(format))
                }
            }
        }
        GraphCommand::Kpartite { parts, brute_force } => {
            let header = if brute_force { vec!["parts", "P", "J", "P_graph"] } else { vec!["parts", "P", "J"] };
            let mut out = Table::new(header);
            for p in &parts {
                let spec = parse_parts(p)?;
                let count = count_complete_matches(&spec);
                let label = spec.parts().iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                let mut row = vec![
                    Cell::Text(label),
                    Cell::Exact(count.to_string()),
                    Cell::Num(hermite_product_integral(spec.parts())),
                ];
                if brute_force {
                    let total = spec.total();
                    let graph_count = if total % 2 == 0 {
                        hermite_kit::count_j_matches(&complete_kpartite(&spec), total / 2)?.to_string()
                    } else {
                        "0".into()
                    };
                    row.push(Cell::Exact(graph_count));
                }
                out.push(row);
            }
            Ok(out.render(format.unwrap_or(Format::Csv)))
        }
        GraphCommand::ProductIntegral { parts } => {
            let spec = parse_parts(&parts)?;
            Ok(list(&[Cell::Num(hermite_product_integral(spec.parts()))], format.unwrap_or(Format::Csv)))
        }
        GraphCommand::Linearize { m, n } => {
            let coeffs = linearization_coeffs(m, n);
            match format.unwrap_or(Format::Json) {
                Format::Json => {
                    // exact integers, highest degree first
                    let body: Vec<String> = coeffs.iter().rev().map(|(l, a)| format!("\"{l}\":{a}")).collect();
                    Ok(format!("{{{}}}\n", body.join(",")))
                }
                f => {
                    let mut out = Table::new(vec!["l", "a"]);
                    for (l, a) in coeffs.iter().rev() {
                        out.push(vec![Cell::Exact(l.to_string()), Cell::Exact(a.to_string())]);
                    }
                    Ok(out.render(f))
                }
            }
        }
    }
}

/// `--quad-order`, else `HERMITE_KIT_QUAD_ORDER`, else the command default.
fn quad_order(flag: Option<usize>, default: usize) -> Result<usize, Failure> {
    if let Some(q) = flag {
        return Ok(q);
    }
    match std::env::var(QUAD_ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("{QUAD_ORDER_ENV} must be a positive integer, got '{v}'"))),
        Err(_) => Ok(default),
    }
}

fn series_output(series: &HermiteSeries<f64>, format: Format) -> CliResult {
    match format {
        Format::Json => Ok(format!("{}\n", serde_json::to_string(series).expect("finite coefficients serialize"))),
        f => {
            let mut out = Table::new(vec!["n", "coeff"]);
            for (n, a) in series.coeffs.iter().enumerate() {
                out.push(vec![Cell::Exact(n.to_string()), Cell::Num(*a)]);
            }
            Ok(out.render(f))
        }
    }
}

fn positive_sigma(sigma: f64) -> Result<f64, Failure> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(sigma)
    } else {
        Err(Failure::Usage(format!("sigma must be positive, got {sigma}")))
    }
}

fn expand(cmd: ExpandCommand, format: Option<Format>) -> CliResult {
    match cmd {
        ExpandCommand::FourierHermite { density, mu, sigma, n, quad_order: q } => {
            let sigma = positive_sigma(sigma)?;
            let q = quad_order(q, default_quad_order(n))?;
            let f = move |x: f64| {
                let z = (x - mu) / sigma;
                match density {
                    Density::Normal => (-z * z / 2.0).exp() / (std::f64::consts::TAU.sqrt() * sigma),
                    Density::Logistic => {
                        let e = (-z.abs()).exp();
                        e / (sigma * (1.0 + e) * (1.0 + e))
                    }
                }
            };
            let series = fourier_hermite_coeffs(f, n, q)?;
            eprintln!("tail |a_N|*sqrt(N!) = {}", num(series.tail_diagnostic()));
            series_output(&series, format.unwrap_or(Format::Json))
        }
        ExpandCommand::GramCharlier(args) => gram_charlier(&args, format),
        ExpandCommand::Wce { function, poly, n, quad_order: q } => {
            let q = quad_order(q, default_quad_order(n))?;
            let series = match (function, poly.is_empty()) {
                (Some(func), _) => wce_coeffs_1d(
                    |y: f64| match func {
                        WceFunction::Exp => y.exp(),
                        WceFunction::Sin => y.sin(),
                        WceFunction::Cos => y.cos(),
                        WceFunction::Abs => y.abs(),
                        WceFunction::Square => y * y,
                        WceFunction::Cube => y * y * y,
                    },
                    n,
                    q,
                )?,
                (None, false) => wce_coeffs_1d(|y: f64| poly.iter().rev().fold(0.0, |acc, c| acc * y + c), n, q)?,
                (None, true) => return Err(Failure::Usage("give --function or --poly".into())),
            };
            series_output(&series, format.unwrap_or(Format::Json))
        }
        ExpandCommand::Deconvolve { coeffs, sigma, terms } => {
            let g = ExactPolynomial::from_coeffs(coeffs.iter().map(|c| parse_exact(c)).collect::<Result<_, _>>()?);
            let sigma = parse_exact(&sigma)?;
            let f = deconvolve_exact(&g, &sigma, terms)?;
            Ok(list(&exact_cells(f.coeffs()), format.unwrap_or(Format::Csv)))
        }
        ExpandCommand::FourierCheck { n, kmax, points, quad_order: q } => {
            let ks = grid(-kmax.abs(), kmax.abs(), points)?;
            let q = quad_order(q, (2 * n + 10).max(60))?;
            let err = fourier_eigen_check(n, &ks, q)?;
            Ok(list(&[Cell::Num(err)], format.unwrap_or(Format::Csv)))
        }
    }
}

fn gram_charlier(args: &GramCharlierArgs, format: Option<Format>) -> CliResult {
    let moments = match &args.moments {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            StandardizedMoments::parse_lines(&text).map_err(|e| match e {
                hermite_kit::Error::Parse { .. } => Failure::Input(format!("{}: {e}", path.display())),
                other => other.into(),
            })?
        }
        None => {
            let mu = args.mu.unwrap_or(0.0);
            let sigma = args.sigma.unwrap_or(1.0);
            let nu: Vec<f64> = match (args.nu3, args.nu4) {
                (Some(a), Some(b)) => vec![a, b],
                (Some(a), None) => vec![a],
                (None, Some(b)) => vec![0.0, b],
                (None, None) => vec![],
            };
            StandardizedMoments::new(mu, sigma, nu)?
        }
    };
    let order = args.order.unwrap_or(moments.max_order().max(2));
    let series = gram_charlier_series(&moments, order)?;
    eprintln!("tail |a_N|*sqrt(N!) = {}", num(series.tail_diagnostic()));

    if let Some(x) = args.x {
        let d = gram_charlier_density(&moments, order, x)?;
        if d.negative {
            eprintln!("warning: truncated density is negative at x = {}", num(x));
        }
        return Ok(list(&[Cell::Num(d.value)], format.unwrap_or(Format::Csv)));
    }
    let (from, to) = match (args.from, args.to) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            let half = 4.0 * moments.sigma();
            (moments.mu() - half, moments.mu() + half)
        }
    };
    let mut out = Table::new(vec!["x", "density", "negative"]);
    for x in grid(from, to, args.samples)? {
        let d = gram_charlier_density(&moments, order, x)?;
        out.push(vec![Cell::Num(x), Cell::Num(d.value), Cell::Flag(d.negative)]);
    }
    Ok(out.render(format.unwrap_or(Format::Tsv)))
}

/// Integers, fractions (`3/4`) and decimals (`-1.25e-2`), all converted exactly.
fn parse_exact(s: &str) -> Result<BigRational, Failure> {
    let s = s.trim();
    let bad = || Failure::Usage(format!("invalid number '{s}'"));
    if s.contains('/') {
        return BigRational::from_str(s).map_err(|_| bad());
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let (negative, int) = match int.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, int.strip_prefix('+').unwrap_or(int)),
    };
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if shift >= 0 {
        BigRational::from_integer(digits * ten.pow(shift as u32))
    } else {
        BigRational::new(digits, ten.pow((-shift) as u32))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}
