//! `blockperm`: evaluate and analyze block-permutation functions from spec files.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blockperm::analysis::{self, DEFAULT_CELL_BUDGET, DEFAULT_SEARCH_DEPTH};
use blockperm::config::parse_function_spec;
use blockperm::rational::parse_rational;
use blockperm::report::{self, Record, Report};
use blockperm::verify::{self, VerifyOptions};
use blockperm::{DigitExpansion, Error, Form, LambdaFunction};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "blockperm",
    version,
    about = "Exact analysis of block-permutation digit functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Function spec file
    #[arg(long)]
    spec: PathBuf,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add decimal renderings next to exact fractions
    #[arg(long)]
    decimal: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print f(x) exactly, with its expansion
    Eval {
        #[command(flatten)]
        common: Common,
        /// `num/den`, a decimal, or an expansion literal `s:<base>:<pos|neg>:<pre>:(<per>)`
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Linearity, twin and monotonicity witnesses, invariant set
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SEARCH_DEPTH)]
        depth: usize,
    },
    /// Invariant-set classification and covers
    Invariants {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        ranks: Vec<usize>,
    },
    /// Exact Lebesgue integral and midpoint Riemann sums
    Integral {
        #[command(flatten)]
        common: Common,
        /// Largest number of digits per Riemann grid (default: grids up to 10^6 cells)
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Box-count series of the graph as CSV
    Boxdim {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4])]
        ranks: Vec<usize>,
    },
    /// Graph samples at the left ends of the rank-N cells as CSV
    Graph {
        #[command(flatten)]
        common: Common,
        /// Digits N of the sampling grid
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Run the check suite; exits 1 if any check fails
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SEARCH_DEPTH)]
        depth: usize,
        /// Box-count ranks (default: every rank with at most 10^6 cells)
        #[arg(long, value_delimiter = ',')]
        ranks: Option<Vec<usize>>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(path: &Path) -> Result<LambdaFunction, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_function_spec(&text).map_err(|e| match e {
        Error::Parse { line, message } => Failure::Usage(format!("{}:{line}: {message}", path.display())),
        other => Failure::Usage(format!("{}: {other}", path.display())),
    })
}

fn emit(common: &Common, bytes: &[u8]) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn eval(f: &LambdaFunction, point: &str) -> Result<Report, Failure> {
    let input = if point.trim_start().starts_with("s:") {
        point.parse::<DigitExpansion>()?
    } else {
        DigitExpansion::from_rational(&parse_rational(point)?, f.base(), f.domain_kind())?
    };
    let image = f.evaluate_expansion(&input)?;
    let mut r = Report::new();
    r.push(
        Record::new("eval")
            .text("function", f)
            .rational("point", &input.value())
            .text("input", &input)
            .rational("value", &image.value())
            .text("expansion", &image),
    );
    Ok(r)
}

fn invariants(f: &LambdaFunction, ranks: &[usize]) -> Result<Report, Failure> {
    let mut r = Report::new();
    r.push(report::function_record(f));
    match f.form() {
        Form::Fsk => {
            let inv = analysis::invariant_set_fsk(f)?;
            r.push(report::invariant_record(&inv));
            if inv.fixed_block_count() > 0 {
                for &m in ranks {
                    r.push(report::invariant_box_record(&analysis::invariant_set_box_count(
                        f,
                        m,
                        DEFAULT_CELL_BUDGET,
                    )?));
                }
            }
        }
        Form::FPlus => r.push(
            Record::new("invariant_set")
                .text("characterization", "odd-position digits are 0")
                .text("dimension", analysis::fplus_fixed_dimension(f.base())),
        ),
        other => r.push(
            Record::new("invariant_set")
                .text("classification", "not available")
                .text("reason", format!("no invariant-set law for form {}", other.name())),
        ),
    }
    Ok(r)
}

fn integral(f: &LambdaFunction, depth: Option<usize>) -> Result<Report, Failure> {
    let budget = match depth {
        Some(n) => u128::from(f.base())
            .checked_pow(n as u32)
            .filter(|&c| c <= DEFAULT_CELL_BUDGET)
            .ok_or_else(|| Failure::Usage(format!("--depth {n} exceeds the cell budget")))?,
        None => 1_000_000,
    };
    let mut r = Report::new();
    r.push(report::function_record(f));
    r.push(report::integral_record(&analysis::lebesgue_integral_exact(f, budget)?));
    Ok(r)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval { common, point } => {
            let f = load(&common.spec)?;
            emit(&common, eval(&f, &point)?.render(common.decimal).as_bytes())
        }
        Command::Analyze { common, depth } => {
            let f = load(&common.spec)?;
            emit(&common, verify::analyze(&f, depth)?.render(common.decimal).as_bytes())
        }
        Command::Invariants { common, ranks } => {
            let f = load(&common.spec)?;
            emit(&common, invariants(&f, &ranks)?.render(common.decimal).as_bytes())
        }
        Command::Integral { common, depth } => {
            let f = load(&common.spec)?;
            emit(&common, integral(&f, depth)?.render(common.decimal).as_bytes())
        }
        Command::Boxdim { common, ranks } => {
            let f = load(&common.spec)?;
            let series = analysis::box_count_series(&f, &ranks, DEFAULT_CELL_BUDGET)?;
            let mut buf = Vec::new();
            report::write_box_count_csv(&mut buf, &series, common.decimal)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&common, &buf)
        }
        Command::Graph { common, depth } => {
            let f = load(&common.spec)?;
            let samples = analysis::graph_samples(&f, depth, DEFAULT_CELL_BUDGET)?;
            let mut buf = Vec::new();
            report::write_graph_csv(&mut buf, depth, &samples).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&common, &buf)
        }
        Command::Verify { common, depth, ranks } => {
            let f = load(&common.spec)?;
            let opts = VerifyOptions {
                depth,
                ranks,
                ..VerifyOptions::default()
            };
            let v = verify::verify(&f, &opts);
            let mut text = v.report.render(common.decimal);
            let failed = v.checks.iter().filter(|c| c.status == verify::Status::Fail).count();
            text.push_str(&format!(
                "\n[summary]\nchecks = {}\nfailed = {failed}\nresult = {}\n",
                v.checks.len(),
                if v.passed() { "PASS" } else { "FAIL" }
            ));
            emit(&common, text.as_bytes())?;
            if v.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
