//! Command line front end: catalog browsing, graph construction, spectra,
//! family certification, and JSON/DOT export.
//!
//! Exit codes: 0 success (or certified), 1 error, 2 valid but uncertified.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use isofactory::factory::{self, BlockParams, FrameSpec, Partition};
use isofactory::io::{GraphJson, Provenance, SpectrumJson};
use isofactory::spectra;
use isofactory::verify::{self, Verdict};

#[derive(Parser)]
#[command(
    name = "isofactory",
    version,
    about = "Isospectral magnetic graph families from frames and partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List the building block catalog, or show one block as graph JSON
    Catalog {
        /// block name; omit to list all entries
        name: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Enumerate the s-partitions of r
    Partitions {
        r: usize,
        s: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Construct a block, frame member or contracted frame union as JSON
    Build {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        construct: ConstructArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Eigenvalues of the normalised magnetic Laplacian of a graph JSON file
    Spectrum {
        /// graph JSON path, or "-" for stdin
        input: String,
        /// Dirichlet vertices, comma separated
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        dirichlet: Vec<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build every s-partition union and certify the family
    Family {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Pairwise certification of two graph JSON files
    Verify {
        g1: PathBuf,
        g2: PathBuf,
        /// also evaluate the equilateral metric-graph predicate
        #[arg(long)]
        metric: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Construct and render as Graphviz DOT
    ExportDot {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        construct: ConstructArgs,
        /// extra vertices to draw as Dirichlet, comma separated
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        dirichlet: Vec<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// numerical tolerance for spectra comparisons
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// write the output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// output format (default depends on the command)
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct ParamArgs {
    /// potential parameter, radians or multiples of pi ("0.5pi"); repeatable
    #[arg(long = "theta", value_name = "ANGLE")]
    thetas: Vec<String>,
    /// leaf count for the star block
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct SourceArgs {
    /// catalog block name
    #[arg(long, conflicts_with = "file")]
    block: Option<String>,
    /// graph JSON file used as the building block
    #[arg(long)]
    file: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    /// identification set V0 (required with --file unless the JSON has provenance)
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    v0: Vec<usize>,
    /// distinguished set V1 ⊆ V0
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    v1: Vec<usize>,
}

#[derive(Args)]
struct ConstructArgs {
    /// build the V1-contracted union for this partition, e.g. "3,1"
    #[arg(long, value_delimiter = ',', conflicts_with = "member")]
    partition: Vec<usize>,
    /// build the a-th frame member instead
    #[arg(long)]
    member: Option<usize>,
    /// build the disjoint union (V1 ignored) for --partition
    #[arg(long)]
    disjoint: bool,
}

fn parse_angle(text: &str) -> Result<f64, String> {
    let t = text.trim();
    if let Some(mult) = t.strip_suffix("pi") {
        let mult = mult.trim();
        let x: f64 = if mult.is_empty() {
            1.0
        } else {
            mult.parse().map_err(|_| format!("bad angle '{text}'"))?
        };
        Ok(x * std::f64::consts::PI)
    } else {
        t.parse().map_err(|_| format!("bad angle '{text}'"))
    }
}

fn block_params(p: &ParamArgs) -> Result<BlockParams, String> {
    let thetas = p
        .thetas
        .iter()
        .map(|t| parse_angle(t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlockParams { thetas, m: p.m })
}

struct NamedSpec {
    spec: FrameSpec,
    block_name: String,
}

fn load_spec(source: &SourceArgs) -> Result<NamedSpec, String> {
    if let Some(name) = &source.block {
        let params = block_params(&source.params)?;
        let spec = factory::building_block_catalog(name, &params).map_err(|e| e.to_string())?;
        if !source.v0.is_empty() || !source.v1.is_empty() {
            let v0: BTreeSet<usize> = if source.v0.is_empty() {
                spec.v0().clone()
            } else {
                source.v0.iter().copied().collect()
            };
            let v1: BTreeSet<usize> = source.v1.iter().copied().collect();
            let spec = FrameSpec::new(spec.block().clone(), v0, v1).map_err(|e| e.to_string())?;
            return Ok(NamedSpec {
                spec,
                block_name: name.clone(),
            });
        }
        Ok(NamedSpec {
            spec,
            block_name: name.clone(),
        })
    } else if let Some(path) = &source.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let parsed: GraphJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let graph = parsed.to_graph().map_err(|e| e.to_string())?;
        let (v0, v1) = if !source.v0.is_empty() {
            (
                source.v0.iter().copied().collect(),
                source.v1.iter().copied().collect(),
            )
        } else if let Some(p) = &parsed.provenance {
            (
                p.v0.iter().copied().collect(),
                p.v1.iter().copied().collect(),
            )
        } else {
            return Err("--file sources need --v0 (and optionally --v1)".into());
        };
        let spec = FrameSpec::new(graph, v0, v1).map_err(|e| e.to_string())?;
        let block_name = path.display().to_string();
        Ok(NamedSpec { spec, block_name })
    } else {
        Err("need --block or --file".into())
    }
}

fn construct(
    named: &NamedSpec,
    args: &ConstructArgs,
) -> Result<(isofactory::MagneticGraph, BTreeSet<usize>, Provenance), String> {
    let spec = &named.spec;
    let provenance = |partition: Option<Vec<usize>>| Provenance {
        block: named.block_name.clone(),
        v0: spec.v0().iter().copied().collect(),
        v1: spec.v1().iter().copied().collect(),
        partition,
    };
    if let Some(a) = args.member {
        let member = factory::frame_member(spec, a).map_err(|e| e.to_string())?;
        let distinguished = spec
            .v1()
            .iter()
            .map(|&v| member.vertex_of(0, 0, v))
            .collect();
        return Ok((
            member.into_graph(),
            distinguished,
            provenance(Some(vec![a])),
        ));
    }
    if !args.partition.is_empty() {
        let partition = Partition::new(args.partition.clone()).map_err(|e| e.to_string())?;
        let union = if args.disjoint {
            factory::disjoint_frame_union(spec, &partition)
        } else {
            factory::contracted_frame_union(spec, &partition)
        };
        let distinguished = union.distinguished_vertices();
        let parts = partition.parts().to_vec();
        return Ok((union.into_graph(), distinguished, provenance(Some(parts))));
    }
    // no construction flags: the bare block
    let distinguished = spec.v1().clone();
    Ok((spec.block().clone(), distinguished, provenance(None)))
}

fn emit(common: &CommonArgs, text: String) -> Result<(), String> {
    match &common.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Catalog {
            name,
            params,
            common,
        } => {
            match name {
                None => {
                    let entries = factory::catalog_entries();
                    let text = match common.format.unwrap_or(Format::Table) {
                        Format::Json => {
                            serde_json::to_string_pretty(&entries).map_err(|e| e.to_string())?
                                + "\n"
                        }
                        _ => {
                            let mut out = String::new();
                            for e in entries {
                                let mut extras = Vec::new();
                                if e.theta_params > 0 {
                                    extras.push(format!("{} theta param(s)", e.theta_params));
                                }
                                if e.takes_m {
                                    extras.push("takes --m".into());
                                }
                                let extra = if extras.is_empty() {
                                    String::new()
                                } else {
                                    format!(" [{}]", extras.join(", "))
                                };
                                out.push_str(&format!(
                                    "{:<14} {}{}\n",
                                    e.name, e.description, extra
                                ));
                            }
                            out
                        }
                    };
                    emit(&common, text)?;
                }
                Some(name) => {
                    let params = block_params(&params)?;
                    let spec = factory::building_block_catalog(&name, &params)
                        .map_err(|e| e.to_string())?;
                    let json = GraphJson::from_graph(
                        spec.block(),
                        Some(Provenance {
                            block: name,
                            v0: spec.v0().iter().copied().collect(),
                            v1: spec.v1().iter().copied().collect(),
                            partition: None,
                        }),
                    );
                    let text =
                        serde_json::to_string_pretty(&json).map_err(|e| e.to_string())? + "\n";
                    emit(&common, text)?;
                }
            }
            Ok(0)
        }
        Command::Partitions { r, s, common } => {
            let partitions = factory::enumerate_partitions(r, s).map_err(|e| e.to_string())?;
            let text = match common.format.unwrap_or(Format::Table) {
                Format::Json => {
                    let rows: Vec<&[usize]> = partitions.iter().map(|p| p.parts()).collect();
                    serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())? + "\n"
                }
                _ => {
                    let mut out = String::new();
                    for p in &partitions {
                        out.push_str(&p.to_string());
                        out.push('\n');
                    }
                    out
                }
            };
            emit(&common, text)?;
            Ok(0)
        }
        Command::Build {
            source,
            construct: cargs,
            common,
        } => {
            let named = load_spec(&source)?;
            let (graph, _, provenance) = construct(&named, &cargs)?;
            let json = GraphJson::from_graph(&graph, Some(provenance));
            let text = serde_json::to_string_pretty(&json).map_err(|e| e.to_string())? + "\n";
            emit(&common, text)?;
            Ok(0)
        }
        Command::Spectrum {
            input,
            dirichlet,
            common,
        } => {
            let text = if input == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| e.to_string())?;
                buf
            } else {
                std::fs::read_to_string(&input).map_err(|e| format!("cannot read {input}: {e}"))?
            };
            let parsed: GraphJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let graph = parsed.to_graph().map_err(|e| e.to_string())?;
            let set: BTreeSet<usize> = dirichlet.into_iter().collect();
            let bg = if set.is_empty() {
                graph.unmarked()
            } else {
                graph.virtualise(&set).map_err(|e| e.to_string())?
            };
            let s = spectra::spectrum(&bg).map_err(|e| e.to_string())?;
            let out = SpectrumJson::from_multiset(&s);
            let text = match common.format.unwrap_or(Format::Json) {
                Format::Table => {
                    let mut t = String::new();
                    for c in &out.clusters {
                        t.push_str(&format!("{:.12}  x{}\n", c.value, c.multiplicity));
                    }
                    t
                }
                _ => serde_json::to_string_pretty(&out).map_err(|e| e.to_string())? + "\n",
            };
            emit(&common, text)?;
            Ok(0)
        }
        Command::Family {
            source,
            r,
            s,
            common,
        } => {
            let named = load_spec(&source)?;
            let report =
                verify::family_report(&named.spec, r, s, common.tol).map_err(|e| e.to_string())?;
            let text = match common.format.unwrap_or(Format::Table) {
                Format::Json => {
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
                }
                _ => report.to_table(),
            };
            emit(&common, text)?;
            Ok(match report.verdict {
                Verdict::Certified => 0,
                _ => 2,
            })
        }
        Command::Verify {
            g1,
            g2,
            metric,
            common,
        } => {
            let load = |path: &PathBuf| -> Result<isofactory::MagneticGraph, String> {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                let parsed: GraphJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                parsed.to_graph().map_err(|e| e.to_string())
            };
            let a = load(&g1)?;
            let b = load(&g2)?;
            let iso = verify::check_isospectral(&a.unmarked(), &b.unmarked(), common.tol)
                .map_err(|e| e.to_string())?;
            let distinct = verify::check_degree_distinct(a.graph(), b.graph());
            let metric_result = if metric {
                Some(
                    verify::metric_isospectral_predicate(&a, &b, common.tol)
                        .map_err(|e| e.to_string())?,
                )
            } else {
                None
            };
            let certified = iso.isospectral && distinct;
            let text = match common.format.unwrap_or(Format::Table) {
                Format::Json => {
                    let payload = serde_json::json!({
                        "isospectral": iso.isospectral,
                        "deviation": iso.deviation,
                        "degree_distinct": distinct,
                        "metric_isospectral": metric_result,
                        "certified": certified,
                    });
                    serde_json::to_string_pretty(&payload).map_err(|e| e.to_string())? + "\n"
                }
                _ => {
                    let mut t = format!(
                        "isospectral: {} (deviation {:.2e})\ndegree multisets distinct: {}\n",
                        iso.isospectral, iso.deviation, distinct
                    );
                    if let Some(m) = metric_result {
                        t.push_str(&format!("metric Kirchhoff isospectral: {m}\n"));
                    }
                    t.push_str(&format!(
                        "certified isospectral and non-isomorphic: {certified}\n"
                    ));
                    t
                }
            };
            emit(&common, text)?;
            Ok(if certified { 0 } else { 2 })
        }
        Command::ExportDot {
            source,
            construct: cargs,
            dirichlet,
            common,
        } => {
            let named = load_spec(&source)?;
            let (graph, distinguished, _) = construct(&named, &cargs)?;
            let dirichlet: BTreeSet<usize> = dirichlet.into_iter().collect();
            let text = isofactory::io::to_dot(&graph, &dirichlet, &distinguished);
            emit(&common, text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
