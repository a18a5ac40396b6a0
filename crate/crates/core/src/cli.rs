//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a definitive negative answer (infeasible,
//! uncolorable, invalid coloring), 2 a search ran out of budget, 3 bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use crate::constructions::{self, ConstructionTrace, ThreeUniformHypergraph};
use crate::fast_paths;
use crate::graph::Graph;
use crate::hypergraph::{worm_violations, Coloring, MixedHypergraph};
use crate::io::{
    self, BudgetStatus, GraphPayload, InputDescriptor, Payload, RunReport, SCHEMA_VERSION,
};
use crate::solver::{self, ChromaticValue, SearchBudget, SearchOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dimacs,
}

#[derive(Debug, Parser)]
#[command(
    name = "worm",
    version,
    about = "Colorings where every triangle gets exactly two colors"
)]
struct Cli {
    /// Time limit for each individual search, in seconds.
    #[arg(long, global = true, default_value_t = 60.0)]
    budget_seconds: f64,
    /// Include one witness coloring per feasible color count.
    #[arg(long, global = true)]
    witnesses: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit wall-clock timing so reports are byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a coloring file against a graph.
    Check { graph: PathBuf, coloring: PathBuf },
    /// Every feasible number of colors.
    Spectrum { graph: PathBuf },
    /// Lower WORM chromatic number.
    Wminus { graph: PathBuf },
    /// Upper WORM chromatic number.
    Wplus { graph: PathBuf },
    /// Build a derived graph.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        /// DIMACS graph, or a hypergraph file for `k4free` and `reduce-h2c`.
        input: PathBuf,
        /// 1-based anchor vertex for `tripleid`.
        #[arg(long, default_value_t = 1)]
        anchor: usize,
        /// Number of chained copies for `k4free`.
        #[arg(long, default_value_t = 3)]
        copies: usize,
        /// Designated hyperedge for `k4free`, as three 1-based ids `a,b,c`;
        /// defaults to the first hyperedge.
        #[arg(long, value_delimiter = ',')]
        designated: Option<Vec<usize>>,
    },
    /// Closed-form upper WORM chromatic number for maximum degree 3.
    WplusCubic { graph: PathBuf },
    /// A coloring with at most two colors.
    TwoColor {
        #[arg(value_enum)]
        method: TwoColorMethod,
        graph: PathBuf,
        /// Proper 4-coloring for `from4col`; computed when omitted.
        proper: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    Myc,
    Boxk2,
    Tripleid,
    K4free,
    #[value(name = "reduce-h2c")]
    ReduceH2c,
    #[value(name = "reduce-3col")]
    Reduce3col,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TwoColorMethod {
    Degenerate,
    From4col,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

enum Output {
    Report(Box<RunReport>),
    Text(String),
}

pub fn run_cli<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_INPUT
                }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok((code, output)) => {
            let text = match output {
                Output::Report(mut report) => {
                    if !cli.no_timing {
                        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                    }
                    report.to_json()
                }
                Output::Text(text) => text,
            };
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, InputError> {
    io::parse_dimacs(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_hypergraph(path: &Path) -> Result<ThreeUniformHypergraph, InputError> {
    io::parse_hypergraph(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_coloring(path: &Path) -> Result<Coloring, InputError> {
    io::parse_coloring(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn describe(path: &Path, g: &Graph) -> InputDescriptor {
    InputDescriptor {
        path: Some(path.display().to_string()),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
    }
}

fn budget_of(cli: &Cli) -> Result<SearchBudget, InputError> {
    if !cli.budget_seconds.is_finite() || cli.budget_seconds <= 0.0 {
        return Err(InputError(format!(
            "--budget-seconds must be positive, got {}",
            cli.budget_seconds
        )));
    }
    Ok(SearchBudget::time(Duration::from_secs_f64(
        cli.budget_seconds,
    ))?)
}

fn require_format(cli: &Cli, allowed: &[Format], command: &str) -> Result<(), InputError> {
    if allowed.contains(&cli.format) {
        Ok(())
    } else {
        Err(InputError(format!(
            "format {:?} is not available for `{command}`",
            cli.format
        )))
    }
}

struct ReportBuilder<'a> {
    cli: &'a Cli,
    command: String,
    input: InputDescriptor,
}

impl ReportBuilder<'_> {
    fn finish(self, result: Payload, exceeded: bool, searched: bool) -> Output {
        Output::Report(Box::new(RunReport {
            schema: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: self.command,
            input: self.input,
            budget: BudgetStatus {
                seconds_per_search: searched.then_some(self.cli.budget_seconds),
                exceeded,
            },
            elapsed_ms: None,
            result,
        }))
    }
}

fn chromatic_exit(value: &ChromaticValue) -> i32 {
    match value {
        ChromaticValue::Exact { .. } => EXIT_OK,
        ChromaticValue::Uncolorable => EXIT_NEGATIVE,
        ChromaticValue::Unresolved { .. } => EXIT_BUDGET,
    }
}

fn execute(cli: &Cli) -> Result<(i32, Output), InputError> {
    match &cli.command {
        Command::Check { graph, coloring } => {
            require_format(cli, &[Format::Json], "check")?;
            let g = load_graph(graph)?;
            let c = load_coloring(coloring)?;
            if c.len() != g.vertex_count() {
                return Err(InputError(format!(
                    "coloring has {} entries for {} vertices",
                    c.len(),
                    g.vertex_count()
                )));
            }
            let violations = worm_violations(&g, &c)?;
            let valid = violations.is_empty();
            let builder = ReportBuilder {
                cli,
                command: "check".into(),
                input: describe(graph, &g),
            };
            let payload = Payload::Check {
                valid,
                colors: c.num_colors(),
                violations: violations.into_iter().map(Into::into).collect(),
            };
            Ok((
                if valid { EXIT_OK } else { EXIT_NEGATIVE },
                builder.finish(payload, false, false),
            ))
        }
        Command::Spectrum { graph } => {
            require_format(cli, &[Format::Json, Format::Csv], "spectrum")?;
            let g = load_graph(graph)?;
            let budget = budget_of(cli)?;
            let report =
                solver::feasible_set(&MixedHypergraph::from_graph_k3(&g), budget, cli.witnesses);
            let code = match report.colorable {
                Some(true) if report.is_complete() => EXIT_OK,
                Some(false) => EXIT_NEGATIVE,
                _ => EXIT_BUDGET,
            };
            if cli.format == Format::Csv {
                return Ok((
                    code,
                    Output::Text(io::spectrum_csv(g.vertex_count(), &report)),
                ));
            }
            let exceeded = !report.is_complete();
            let builder = ReportBuilder {
                cli,
                command: "spectrum".into(),
                input: describe(graph, &g),
            };
            Ok((
                code,
                builder.finish(Payload::Spectrum(report), exceeded, true),
            ))
        }
        Command::Wminus { graph } | Command::Wplus { graph } => {
            let lower = matches!(cli.command, Command::Wminus { .. });
            let name = if lower { "wminus" } else { "wplus" };
            require_format(cli, &[Format::Json, Format::Csv], name)?;
            let g = load_graph(graph)?;
            let budget = budget_of(cli)?;
            let h = MixedHypergraph::from_graph_k3(&g);
            let value = if lower {
                solver::lower_chromatic(&h, budget)
            } else {
                solver::upper_chromatic(&h, budget)
            };
            let code = chromatic_exit(&value);
            let quantity = if lower { "w_minus" } else { "w_plus" };
            if cli.format == Format::Csv {
                let shown = match value {
                    ChromaticValue::Exact { value } => value.to_string(),
                    ChromaticValue::Uncolorable => "uncolorable".into(),
                    ChromaticValue::Unresolved { .. } => "unknown".into(),
                };
                return Ok((
                    code,
                    Output::Text(format!("quantity,value\n{quantity},{shown}\n")),
                ));
            }
            let exceeded = matches!(value, ChromaticValue::Unresolved { .. });
            let builder = ReportBuilder {
                cli,
                command: name.into(),
                input: describe(graph, &g),
            };
            let payload = Payload::Chromatic {
                quantity: quantity.into(),
                value,
            };
            Ok((code, builder.finish(payload, exceeded, true)))
        }
        Command::Construct {
            kind,
            input,
            anchor,
            copies,
            designated,
        } => construct(cli, *kind, input, *anchor, *copies, designated.as_deref()),
        Command::WplusCubic { graph } => {
            require_format(cli, &[Format::Json, Format::Csv], "wplus-cubic")?;
            let g = load_graph(graph)?;
            let w_plus = fast_paths::wplus_maxdeg3(&g)?;
            if cli.format == Format::Csv {
                return Ok((
                    EXIT_OK,
                    Output::Text(format!("quantity,value\nw_plus,{w_plus}\n")),
                ));
            }
            let census = g.triangle_core().census;
            let builder = ReportBuilder {
                cli,
                command: "wplus-cubic".into(),
                input: describe(graph, &g),
            };
            Ok((
                EXIT_OK,
                builder.finish(Payload::Formula { w_plus, census }, false, false),
            ))
        }
        Command::TwoColor {
            method,
            graph,
            proper,
        } => {
            require_format(cli, &[Format::Json], "two-color")?;
            let g = load_graph(graph)?;
            let builder = ReportBuilder {
                cli,
                command: "two-color".into(),
                input: describe(graph, &g),
            };
            let (coloring, name, searched) = match method {
                TwoColorMethod::Degenerate => {
                    (fast_paths::two_color_3degenerate(&g)?, "degenerate", false)
                }
                TwoColorMethod::From4col => {
                    let (proper, searched) = match proper {
                        Some(path) => (load_coloring(path)?, false),
                        None => match solver::proper_coloring(&g, 4, budget_of(cli)?) {
                            SearchOutcome::Found(c) => (c, true),
                            SearchOutcome::Infeasible => {
                                return Ok((
                                    EXIT_NEGATIVE,
                                    builder.finish(
                                        Payload::Chromatic {
                                            quantity: "proper_4_coloring".into(),
                                            value: ChromaticValue::Uncolorable,
                                        },
                                        false,
                                        true,
                                    ),
                                ));
                            }
                            SearchOutcome::BudgetExceeded => {
                                return Ok((
                                    EXIT_BUDGET,
                                    builder.finish(
                                        Payload::Chromatic {
                                            quantity: "proper_4_coloring".into(),
                                            value: ChromaticValue::Unresolved {
                                                lower: 1,
                                                upper: g.vertex_count(),
                                                colorable: false,
                                            },
                                        },
                                        true,
                                        true,
                                    ),
                                ));
                            }
                        },
                    };
                    (
                        fast_paths::two_color_from_proper4(&g, &proper)?,
                        "from4col",
                        searched,
                    )
                }
            };
            let payload = Payload::Coloring {
                method: name.into(),
                colors: coloring.num_colors(),
                coloring,
            };
            Ok((EXIT_OK, builder.finish(payload, false, searched)))
        }
    }
}

fn construct(
    cli: &Cli,
    kind: ConstructKind,
    input: &Path,
    anchor: usize,
    copies: usize,
    designated: Option<&[usize]>,
) -> Result<(i32, Output), InputError> {
    require_format(cli, &[Format::Json, Format::Dimacs], "construct")?;
    let mut notes = Vec::new();
    let (descriptor, name, g, trace): (InputDescriptor, &str, Graph, Option<ConstructionTrace>) =
        match kind {
            ConstructKind::K4free | ConstructKind::ReduceH2c => {
                let h = load_hypergraph(input)?;
                let descriptor = InputDescriptor {
                    path: Some(input.display().to_string()),
                    vertices: h.vertex_count(),
                    edges: h.edges().len(),
                };
                if kind == ConstructKind::ReduceH2c {
                    let (g, trace) = constructions::reduce_h2c_to_worm2(&h);
                    (descriptor, "reduce-h2c", g, Some(trace))
                } else {
                    let designated = match designated {
                        Some(ids) => {
                            if ids.len() != 3 {
                                return Err(InputError(format!(
                                    "--designated needs 3 vertices, got {}",
                                    ids.len()
                                )));
                            }
                            let mut d = [0; 3];
                            for (slot, &id) in d.iter_mut().zip(ids) {
                                if id == 0 || id > h.vertex_count() {
                                    return Err(InputError(format!(
                                        "designated vertex {id} out of range"
                                    )));
                                }
                                *slot = id - 1;
                            }
                            d
                        }
                        None => *h
                            .edges()
                            .first()
                            .ok_or_else(|| InputError("hypergraph has no hyperedges".into()))?,
                    };
                    let (g, trace) = constructions::k4free_steps(&h, designated, copies)?;
                    notes.push(
                        "edge-criticality of the input hypergraph is not verified".to_string(),
                    );
                    (descriptor, "k4free", g, Some(trace))
                }
            }
            _ => {
                let source = load_graph(input)?;
                let descriptor = describe(input, &source);
                match kind {
                    ConstructKind::Myc => {
                        (descriptor, "myc", constructions::mycielskian(&source), None)
                    }
                    ConstructKind::Boxk2 => {
                        let (g, trace) = constructions::box_product_k2(&source);
                        (descriptor, "boxk2", g, Some(trace))
                    }
                    ConstructKind::Tripleid => {
                        if anchor == 0 || anchor > source.vertex_count() {
                            return Err(InputError(format!("anchor {anchor} out of range")));
                        }
                        let (h, trace) = constructions::box_product_k2(&source);
                        let (g, trace) =
                            constructions::triple_identification(&h, &trace, anchor - 1)?;
                        (descriptor, "tripleid", g, Some(trace))
                    }
                    _ => {
                        let (g, trace) = constructions::reduce_3col_to_worm3(&source)?;
                        (descriptor, "reduce-3col", g, Some(trace))
                    }
                }
            }
        };
    if cli.format == Format::Dimacs {
        let mut comments = vec![format!("construct {name}")];
        comments.extend(notes);
        return Ok((EXIT_OK, Output::Text(io::write_dimacs(&g, &comments))));
    }
    let builder = ReportBuilder {
        cli,
        command: format!("construct {name}"),
        input: descriptor,
    };
    let payload = Payload::Construction {
        name: name.into(),
        graph: GraphPayload::new(&g, trace.as_ref()),
        notes,
    };
    Ok((EXIT_OK, builder.finish(payload, false, false)))
}
