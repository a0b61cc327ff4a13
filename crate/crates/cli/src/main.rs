//! `maxtree`: max-algebra reports for matrix files.
//!
//! Exit status is 0 on success, 1 when the input is valid but the
//! operation does not apply (reducible matrix, `μ > 1`, a failed check) and
//! 2 when a file cannot be read or parsed.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maxtree::dequantize::{convergence_run, default_sweep, p0_threshold, DEFAULT_SWEEP_CAP};
use maxtree::io::{matrix_to_csv, matrix_to_json, read_matrix};
use maxtree::spectral::kleene_star_with;
use maxtree::{
    ahp_rank, critical_structure, is_irreducible, is_max_stochastic, is_sr_matrix,
    judge_competitor_rank, kleene_star, max_cycle_geometric_mean, max_rst_vector, min_critical_row,
    normalize_max_stochastic, sum_rst_vector, verify_vis_kleene_blocks, Error, NonnegMatrix,
    RankingResult, Tolerance, DEFAULT_ENUMERATION_CAP,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "maxtree",
    version,
    about = "Max-algebra reports for nonnegative matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Relative tolerance for equality tests.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EPS)]
    tol: f64,

    /// Output format; `dequantize` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Largest matrix order for which trees are enumerated.
    #[arg(long = "max-enum", global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_enum: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum cycle geometric mean.
    Mu { input: PathBuf },
    /// Kleene star `I ⊕ A ⊕ … ⊕ A^(n-1)`.
    Kleene {
        input: PathBuf,
        /// Divide by μ first when μ > 1 instead of failing.
        #[arg(long)]
        renormalize: bool,
    },
    /// Critical nodes, edges and components.
    Critical { input: PathBuf },
    /// Maximal rooted spanning tree vector with witness trees.
    Rst { input: PathBuf },
    /// Sum-over-trees vector and its normalization.
    ClassicalRst { input: PathBuf },
    /// Convergence of p-stochastic approximants to the max case.
    Dequantize {
        input: PathBuf,
        /// Comma-separated p values; defaults to P0, 2·P0, … up to 1024.
        #[arg(long, value_delimiter = ',')]
        p: Vec<u32>,
    },
    /// Tree theorem residual, min critical row bound and block law.
    Verify {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Ranking from a comparison matrix, or from judge and competitor files.
    Rank {
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
    },
    /// Ranking of competitors from judge scores J and competitor scores C.
    Judges {
        judges: PathBuf,
        competitors: PathBuf,
    },
    /// Re-emit a matrix file.
    Echo { input: PathBuf },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    /// Valid input the operation does not apply to.
    Domain(String),
    /// Unreadable or malformed input.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidMatrix(_) | Error::InvalidVector(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// A report and whether it counts as success.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn json(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string(value).expect("reports serialize");
    text.push('\n');
    text
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 fields")
}

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn read(path: &Path) -> Result<NonnegMatrix, Failure> {
    Ok(read_matrix(path)?)
}

fn matrix_output(m: &NonnegMatrix, format: Format) -> Output {
    Output::ok(match format {
        Format::Json => json(&matrix_to_json(m)),
        Format::Csv => matrix_to_csv(m),
    })
}

fn vector_rows(w: &[f64]) -> impl Iterator<Item = Vec<String>> + '_ {
    w.iter()
        .enumerate()
        .map(|(i, &x)| vec![(i + 1).to_string(), num(x)])
}

fn ranking_output(r: &RankingResult, format: Format) -> Output {
    Output::ok(match format {
        Format::Json => json(&report::Ranking::from(r)),
        Format::Csv => csv_table(
            &["rank", "option", "weight"],
            r.order
                .iter()
                .enumerate()
                .map(|(k, &i)| vec![(k + 1).to_string(), (i + 1).to_string(), num(r.weights[i])]),
        ),
    })
}

fn verify_one(path: &Path, tol: Tolerance) -> Result<report::Verify, Failure> {
    let a = read(path)?;
    a.require_square()?;
    let normalized = !is_max_stochastic(&a, tol);
    let a = if normalized {
        normalize_max_stochastic(&a)?.0
    } else {
        a
    };
    if !is_irreducible(&a)? {
        return Err(Error::Reducible(
            maxtree::WeightedDigraph::from_matrix(&a)?.strongly_connected_components(),
        )
        .into());
    }

    let rst = max_rst_vector(&a)?;
    let w = &rst.vector;
    let star = kleene_star(&a, tol)?;
    let cs = critical_structure(&a, tol)?;
    let mcr = min_critical_row(&star, &cs)?;
    let n = a.n();
    let components = cs.dc_components.len();

    let mut checks = vec![
        report::Check {
            name: "max tree theorem",
            pass: rst.residual <= tol.rel_eps(),
            detail: format!("residual {:e}", rst.residual),
        },
        report::Check {
            name: "bound (i)",
            pass: (0..n).all(|j| tol.le(w[j], mcr[j])),
            detail: "w <= min critical row".into(),
        },
    ];
    if components == 1 {
        checks.push(report::Check {
            name: "bound (ii)",
            pass: (0..n).all(|j| tol.eq(w[j], mcr[j])),
            detail: "w = min critical row".into(),
        });
    }
    if components <= 2 {
        checks.push(report::Check {
            name: "bound (iii)",
            pass: cs.critical_nodes.iter().all(|&c| tol.eq(w[c], mcr[c])),
            detail: "w = min critical row on critical nodes".into(),
        });
    }
    let blocks = verify_vis_kleene_blocks(&a, tol)?;
    checks.push(report::Check {
        name: "block law",
        pass: blocks.holds,
        detail: format!(
            "{} components, {} violations",
            cs.r_prime(),
            blocks.violations.len()
        ),
    });

    let pass = checks.iter().all(|c| c.pass);
    Ok(report::Verify {
        input: path.display().to_string(),
        normalized,
        checks,
        pass,
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let tol = Tolerance::new(cli.tol).map_err(|e| Failure::Input(e.to_string()))?;
    let format = cli.format.unwrap_or(match cli.command {
        Command::Dequantize { .. } => Format::Csv,
        _ => Format::Json,
    });

    match &cli.command {
        Command::Mu { input } => {
            let mu = max_cycle_geometric_mean(&read(input)?)?;
            Ok(Output::ok(match format {
                Format::Json => json(&report::Mu { mu }),
                Format::Csv => csv_table(&["mu"], [vec![num(mu)]]),
            }))
        }
        Command::Kleene { input, renormalize } => {
            let ks = kleene_star_with(&read(input)?, tol, *renormalize)?;
            Ok(matrix_output(&ks.star, format))
        }
        Command::Critical { input } => {
            let cs = critical_structure(&read(input)?, tol)?;
            Ok(Output::ok(match format {
                Format::Json => json(&report::Critical::from(&cs)),
                Format::Csv => {
                    let owner = cs.component_of();
                    csv_table(
                        &["node", "critical", "dcstar_component"],
                        (0..owner.len()).map(|v| {
                            vec![
                                (v + 1).to_string(),
                                cs.is_critical(v).to_string(),
                                (owner[v] + 1).to_string(),
                            ]
                        }),
                    )
                }
            }))
        }
        Command::Rst { input } => {
            let r = max_rst_vector(&read(input)?)?;
            Ok(Output::ok(match format {
                Format::Json => json(&report::Rst::from(&r)),
                Format::Csv => csv_table(&["node", "w"], vector_rows(r.vector.as_slice())),
            }))
        }
        Command::ClassicalRst { input } => {
            let r = sum_rst_vector(&read(input)?, cli.max_enum)?;
            Ok(Output::ok(match format {
                Format::Json => json(&report::ClassicalRst::from(&r)),
                Format::Csv => csv_table(
                    &["node", "w", "normalized"],
                    r.vector
                        .iter()
                        .zip(r.normalized().iter())
                        .enumerate()
                        .map(|(i, (w, x))| vec![(i + 1).to_string(), num(w), num(x)]),
                ),
            }))
        }
        Command::Dequantize { input, p } => {
            let a = read(input)?;
            let sweep = if p.is_empty() {
                default_sweep(p0_threshold(&a, tol)?, DEFAULT_SWEEP_CAP)
            } else {
                p.clone()
            };
            let steps = convergence_run(&a, &sweep, tol, cli.max_enum)?;
            Ok(Output::ok(match format {
                Format::Json => json(&steps.iter().map(report::Step::from).collect::<Vec<_>>()),
                Format::Csv => csv_table(
                    &["p", "err_matrix", "err_vector", "bound"],
                    steps.iter().map(|s| {
                        vec![
                            s.p.to_string(),
                            num(s.err_matrix),
                            num(s.err_vector),
                            num(s.bound),
                        ]
                    }),
                ),
            }))
        }
        Command::Verify { inputs } => {
            let reports = inputs
                .iter()
                .map(|path| verify_one(path, tol))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = reports.iter().all(|r| r.pass);
            let text = match format {
                Format::Json => json(&reports),
                Format::Csv => csv_table(
                    &["input", "check", "pass", "detail"],
                    reports.iter().flat_map(|r| {
                        r.checks.iter().map(|c| {
                            vec![
                                r.input.clone(),
                                c.name.into(),
                                c.pass.to_string(),
                                c.detail.clone(),
                            ]
                        })
                    }),
                ),
            };
            Ok(Output { text, ok })
        }
        Command::Rank { inputs } => match inputs.as_slice() {
            [single] => {
                let a = read(single)?;
                if !is_sr_matrix(&a, tol) {
                    return Err(Failure::Domain(format!(
                        "{} is not symmetrically reciprocal",
                        single.display()
                    )));
                }
                Ok(ranking_output(&ahp_rank(&a, tol)?, format))
            }
            [judges, competitors] => judges_output(judges, competitors, tol, format),
            _ => unreachable!("clap enforces one or two inputs"),
        },
        Command::Judges {
            judges,
            competitors,
        } => judges_output(judges, competitors, tol, format),
        Command::Echo { input } => Ok(matrix_output(&read(input)?, format)),
    }
}

fn judges_output(
    judges: &Path,
    competitors: &Path,
    tol: Tolerance,
    format: Format,
) -> Result<Output, Failure> {
    let (_, r) = judge_competitor_rank(&read(judges)?, &read(competitors)?, tol)?;
    Ok(ranking_output(&r, format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("maxtree: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("maxtree: {msg}");
            ExitCode::from(2)
        }
    }
}
