//! Command-line front end for the 2-factor counting library.
//!
//! Subcommands: `count` and `sequence` run one of the registered
//! counting strategies; `verify` runs the structural self-checks for a
//! width and exits nonzero if any fails; `oracle` enumerates 2-factors
//! of a small graph directly; `export` emits the transfer digraph and
//! its reductions as DOT or JSON; `methods` lists the registry.
//!
//! Exit codes: 0 on success, 1 when a verification fails (or output
//! cannot be written), 2 for usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gridfactor::counting::CountResult;
use gridfactor::methods;
use gridfactor::oracle::{code_matrix_of, enumerate_two_factors, GridGraph};
use gridfactor::transfer::{QuotientDigraph, TransferDigraph};
use gridfactor::verify;
use gridfactor::Family;

#[derive(Parser)]
#[command(
    name = "gridfactor",
    version,
    about = "Counts 2-factors of grid, cylinder and Moebius-strip graphs",
    long_about = "Counts the 2-factors (spanning collections of vertex-disjoint cycles) \
                  of rectangular grids (rg), thick cylinders (tkc) and Moebius strips (ms) \
                  by walk counting in a transfer digraph, with brute-force cross-checks \
                  on small graphs."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the 2-factors of a single graph.
    Count {
        /// Graph family: rg, tkc or ms.
        family: Family,
        /// Number of rows.
        m: usize,
        /// Number of columns.
        n: usize,
        /// Counting strategy, by registry name (see `methods`).
        #[arg(long, default_value = "rstarstar")]
        method: String,
        #[arg(long, value_enum, default_value_t = CountFormat::Text)]
        format: CountFormat,
        /// Write the result to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count 2-factors for every length in a range.
    Sequence {
        /// Graph family: rg, tkc or ms.
        family: Family,
        /// Number of rows.
        m: usize,
        /// First length of the range (defaults to the smallest valid).
        #[arg(long)]
        from: Option<usize>,
        /// Last length of the range.
        #[arg(long)]
        to: usize,
        /// Counting strategy, by registry name (see `methods`).
        #[arg(long, default_value = "rstarstar")]
        method: String,
        #[arg(long, value_enum, default_value_t = CountFormat::Text)]
        format: CountFormat,
        /// Write the results to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the structural facts behind the fast counting paths.
    Verify {
        /// Number of rows to verify.
        #[arg(short = 'm', long = "rows")]
        m: usize,
        /// Compare counting back-ends for lengths up to this value.
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Write the report to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate 2-factors of a small graph by brute force.
    Oracle {
        /// Graph family: rg, tkc or ms.
        family: Family,
        /// Number of rows.
        m: usize,
        /// Number of columns.
        n: usize,
        /// What to print: the count, the factors, or their code matrices.
        #[arg(long, value_enum, default_value_t = EmitKind::Count)]
        emit: EmitKind,
        /// Write the output to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the transfer digraph or one of its reductions.
    Export {
        /// Which digraph: the full transfer digraph, its base
        /// component, or the reflection quotient of the base component.
        what: ExportWhat,
        /// Number of rows.
        #[arg(short = 'm', long = "rows")]
        m: usize,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        /// Write the output to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the registered counting strategies.
    Methods,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportWhat {
    Dstar,
    Rstar,
    Rstarstar,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitKind {
    Count,
    Factors,
    Codes,
}

enum Failure {
    Usage(gridfactor::Error),
    Io(std::io::Error),
}

impl From<gridfactor::Error> for Failure {
    fn from(e: gridfactor::Error) -> Failure {
        Failure::Usage(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Count {
            family,
            m,
            n,
            method,
            format,
            output,
        } => {
            let strategy = methods::by_name(&method)?;
            let result = strategy.count(family, m, n)?;
            emit(&output, &render_counts(&[result], format, false))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sequence {
            family,
            m,
            from,
            to,
            method,
            format,
            output,
        } => {
            let strategy = methods::by_name(&method)?;
            let from = from.unwrap_or_else(|| family.min_columns());
            let results = strategy.sequence(family, m, from, to)?;
            emit(&output, &render_counts(&results, format, true))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            m,
            n_max,
            format,
            output,
        } => {
            let report = verify::verify_all(m, n_max)?;
            let text = match format {
                ReportFormat::Text => report.render_text(),
                ReportFormat::Json => {
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
            };
            emit(&output, &text)?;
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Oracle {
            family,
            m,
            n,
            emit: kind,
            output,
        } => {
            let graph = GridGraph::build(family, m, n)?;
            let factors = enumerate_two_factors(&graph)?;
            let text = match kind {
                EmitKind::Count => format!("{}\n", factors.len()),
                EmitKind::Factors => {
                    // One factor per line: a JSON array of edges, each
                    // edge a pair of (row, col) endpoints.
                    factors
                        .iter()
                        .map(|f| {
                            let edges: Vec<serde_json::Value> = f
                                .edges
                                .iter()
                                .map(|&e| {
                                    let edge = &graph.edges()[e as usize];
                                    let (ra, ca) = graph.vertex_pos(edge.a);
                                    let (rb, cb) = graph.vertex_pos(edge.b);
                                    serde_json::json!([[ra, ca], [rb, cb]])
                                })
                                .collect();
                            serde_json::Value::Array(edges).to_string() + "\n"
                        })
                        .collect()
                }
                EmitKind::Codes => {
                    let blocks: Vec<String> = factors
                        .iter()
                        .map(|f| code_matrix_of(&graph, f).to_string())
                        .collect();
                    blocks.join("\n\n") + "\n"
                }
            };
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Export {
            what,
            m,
            format,
            output,
        } => {
            let text = render_export(what, m, format)?;
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Methods => {
            let mut text = String::new();
            for method in methods::METHODS {
                text.push_str(&format!("{:<10} {}\n", method.name(), method.describe()));
            }
            emit(&None, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn render_counts(results: &[CountResult], format: CountFormat, with_length: bool) -> String {
    match format {
        CountFormat::Text => results
            .iter()
            .map(|r| {
                if with_length {
                    format!("{} {}\n", r.n, r.count)
                } else {
                    format!("{}\n", r.count)
                }
            })
            .collect(),
        CountFormat::Csv => {
            let mut out = String::from(CountResult::CSV_HEADER);
            out.push('\n');
            for r in results {
                out.push_str(&r.csv_row());
                out.push('\n');
            }
            out
        }
        CountFormat::Json => results
            .iter()
            .map(|r| r.to_json().to_string() + "\n")
            .collect(),
    }
}

fn render_export(what: ExportWhat, m: usize, format: ExportFormat) -> Result<String, Failure> {
    let d = TransferDigraph::build(m)?;
    let text = match (what, format) {
        (ExportWhat::Dstar, ExportFormat::Dot) => d.to_dot(),
        (ExportWhat::Dstar, ExportFormat::Json) => {
            serde_json::to_string_pretty(&d.summary()).expect("summary serializes") + "\n"
        }
        (ExportWhat::Rstar, ExportFormat::Dot) => d.base_component_dot(),
        (ExportWhat::Rstar, ExportFormat::Json) => {
            let base = d.base_component();
            let arcs: usize = base
                .members()
                .iter()
                .map(|&v| d.neighbors(v as usize).len())
                .sum();
            let value = serde_json::json!({
                "m": m,
                "vertices": base.size(),
                "arcs": arcs,
                "s": base.s,
                "red": base.red,
                "green": base.green,
                "palindromes": base.palindromes,
            });
            serde_json::to_string_pretty(&value).expect("base summary serializes") + "\n"
        }
        (ExportWhat::Rstarstar, fmt) => {
            let q = QuotientDigraph::build(&d, d.base_component().members());
            match fmt {
                ExportFormat::Dot => q.to_dot(),
                ExportFormat::Json => {
                    let labels: Vec<String> =
                        q.classes().iter().map(|c| c.label()).collect();
                    let paired = q.classes().iter().filter(|c| c.mate.is_some()).count();
                    let arcs: Vec<serde_json::Value> = (0..q.class_count())
                        .flat_map(|i| {
                            let labels = &labels;
                            q.row(i).iter().map(move |&(j, mult)| {
                                serde_json::json!({
                                    "from": labels[i],
                                    "to": labels[j as usize],
                                    "mult": mult,
                                })
                            })
                        })
                        .collect();
                    let value = serde_json::json!({
                        "m": m,
                        "classes": labels,
                        "paired": paired,
                        "fixed": q.class_count() - paired,
                        "arcs": arcs,
                    });
                    serde_json::to_string_pretty(&value).expect("quotient serializes") + "\n"
                }
            }
        }
    };
    Ok(text)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
