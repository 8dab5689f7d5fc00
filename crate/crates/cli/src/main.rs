//! Command line front end: normal forms, the recursive operator elements,
//! actions on the symmetric tensor space, basis/dimension queries, the
//! verification suites, and product-table validation.
//!
//! Exit codes: 0 on success / all checks passing, 1 on computation or
//! verification failure, 2 on usage errors.

use sl21_cli::parser;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use sl21_core::algebra::{Algebra, ProductTable};
use sl21_core::operators::Operators;
use sl21_core::tensor::{act_elem, highest_weight_vector, ts_basis, TsSolver};
use sl21_core::verify::{run_named_check, Profile, Ranges};

#[derive(Parser)]
#[command(
    name = "sl21",
    version,
    about = "Exact computer algebra for the sl(2,1) map superalgebra",
    after_help = "Algebras: poly | trunc:N | table:PATH. Basis labels: 1, t, t^2, ... \
                  (poly/trunc) or the labels from the table file."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct AlgebraOpt {
    /// Coefficient algebra: poly | trunc:N | table:PATH
    #[arg(long, default_value = "poly")]
    algebra: String,
}

impl AlgebraOpt {
    fn load(&self) -> Result<Algebra> {
        Algebra::from_spec(&self.algebra).with_context(|| format!("--algebra {}", self.algebra))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Rewrite an expression into its normal form
    Nf {
        expr: String,
        #[command(flatten)]
        algebra: AlgebraOpt,
        /// Print machine-readable JSON instead of the human form
        #[arg(long)]
        json: bool,
    },
    /// The recursive element p1(phi, chi); arguments are multiset literals
    P1 {
        phi: String,
        chi: String,
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        json: bool,
    },
    /// The recursive element q1(phi, chi); arguments are multiset literals
    Q1 {
        phi: String,
        chi: String,
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        json: bool,
    },
    /// The element p(phi1, phi2, xi); two multisets and a tuple
    P {
        phi1: String,
        phi2: String,
        xi: String,
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        json: bool,
    },
    /// Apply an expression to the degree-m highest weight tensor and print
    /// its coordinates in the symmetric-subspace basis
    PAct {
        expr: String,
        /// Tensor degree
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        algebra: AlgebraOpt,
        /// Basis window (defaults to the algebra dimension; required for poly)
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// List the index basis of the symmetric subspace at degree m
    Basis {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Print the dimension of the symmetric subspace at degree m
    Dim {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Run verification checks; exits 0 only if every instance passes
    Verify {
        /// all | structure | pbw | degp | degp1..degp7 | p1-coproduct |
        /// p1-action | p-basis | spanning | wtilde
        #[arg(default_value = "all")]
        check: String,
        #[arg(long, default_value = "trunc:2")]
        algebra: String,
        /// quick (CI sizes) or full (release sizes)
        #[arg(long, default_value = "quick")]
        profile: String,
        /// Override the multiset size bound
        #[arg(long)]
        max_size: Option<u32>,
        /// Override the tensor degree bound
        #[arg(long)]
        m: Option<usize>,
        /// Seed for the fuzzed checks
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Validate a product-table file: commutativity, associativity, unit
    ValidateTable {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn window_for(alg: &Algebra, window: Option<usize>) -> Result<usize> {
    match (window, alg.dim()) {
        (Some(w), Some(d)) if w > d => bail!("--window {w} exceeds the algebra dimension {d}"),
        (Some(w), _) => Ok(w),
        (None, Some(d)) => Ok(d),
        (None, None) => bail!("--window is required with the polynomial algebra"),
    }
}

fn parsed_elem(src: &str, alg: &Algebra) -> Result<sl21_core::UElem> {
    let parsed = parser::parse_expr(src, alg).map_err(anyhow::Error::new)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.elem)
}

fn print_elem(u: &sl21_core::UElem, alg: &Algebra, json: bool) {
    if json {
        println!("{}", u.to_json());
    } else {
        println!("{}", u.render(alg));
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Nf { expr, algebra, json } => {
            let alg = algebra.load()?;
            let u = parsed_elem(&expr, &alg)?;
            print_elem(&u, &alg, json);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::P1 { phi, chi, algebra, json } => {
            let alg = algebra.load()?;
            let phi = parser::parse_multiset(&phi, &alg).map_err(anyhow::Error::new)?;
            let chi = parser::parse_multiset(&chi, &alg).map_err(anyhow::Error::new)?;
            let ops = Operators::new(&alg);
            print_elem(&ops.p1(&phi, &chi)?, &alg, json);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Q1 { phi, chi, algebra, json } => {
            let alg = algebra.load()?;
            let phi = parser::parse_multiset(&phi, &alg).map_err(anyhow::Error::new)?;
            let chi = parser::parse_multiset(&chi, &alg).map_err(anyhow::Error::new)?;
            let ops = Operators::new(&alg);
            print_elem(&ops.q1(&phi, &chi)?, &alg, json);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::P { phi1, phi2, xi, algebra, json } => {
            let alg = algebra.load()?;
            let phi1 = parser::parse_multiset(&phi1, &alg).map_err(anyhow::Error::new)?;
            let phi2 = parser::parse_multiset(&phi2, &alg).map_err(anyhow::Error::new)?;
            let xi = parser::parse_tuple(&xi, &alg).map_err(anyhow::Error::new)?;
            let ops = Operators::new(&alg);
            print_elem(&ops.p(&phi1, &phi2, &xi)?, &alg, json);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::PAct { expr, m, algebra, window, json } => {
            let alg = algebra.load()?;
            let window = window_for(&alg, window)?;
            let u = parsed_elem(&expr, &alg)?;
            let image = act_elem(&alg, &u, &highest_weight_vector(m))?;
            let mut solver = TsSolver::new(&alg, m, window)?;
            let coords = solver.express(&image)?;
            if json {
                let arr: Vec<serde_json::Value> = coords
                    .iter()
                    .map(|(i, c)| {
                        serde_json::json!({
                            "coeff": c.to_string(),
                            "index": solver.indices()[*i].to_json(&alg),
                        })
                    })
                    .collect();
                println!("{}", serde_json::Value::Array(arr));
            } else if coords.is_empty() {
                println!("0");
            } else {
                for (i, c) in &coords {
                    println!("{} * {}", c, solver.indices()[*i].render(&alg));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Basis { m, algebra, window, json } => {
            let alg = algebra.load()?;
            let window = window_for(&alg, window)?;
            let indices = ts_basis(m, window);
            if json {
                let arr: Vec<serde_json::Value> =
                    indices.iter().map(|i| i.to_json(&alg)).collect();
                println!("{}", serde_json::Value::Array(arr));
            } else {
                for idx in &indices {
                    println!("{}", idx.render(&alg));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dim { m, algebra, window } => {
            let alg = algebra.load()?;
            let window = window_for(&alg, window)?;
            println!("{}", ts_basis(m, window).len());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { check, algebra, profile, max_size, m, seed, json } => {
            let alg = Algebra::from_spec(&algebra)?;
            let profile = match profile.as_str() {
                "quick" => Profile::Quick,
                "full" => Profile::Full,
                other => bail!("unknown profile '{other}' (quick | full)"),
            };
            let mut ranges: Ranges = profile.ranges();
            ranges.seed = seed;
            if let Some(s) = max_size {
                ranges.max_size = s;
            }
            if let Some(m) = m {
                ranges.m_max = m;
            }
            let reports = run_named_check(&alg, &check, &ranges, profile)?;
            let all_pass = reports.iter().all(|r| r.passed());
            if json {
                let arr: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
                println!("{}", serde_json::Value::Array(arr));
            } else {
                for r in &reports {
                    println!("{}", r.summary_line());
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::ValidateTable { path, json } => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", path.display()))?;
            let table = ProductTable::from_json(&value)?;
            let violations = table.validate();
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "valid": violations.is_empty(),
                        "violations": violations,
                    })
                );
            } else if violations.is_empty() {
                println!("valid");
            } else {
                for v in &violations {
                    println!("violation: {v}");
                }
            }
            Ok(if violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
