//! Thin command-line front end over the library. Exit codes: 0 on
//! success or an inconclusive-but-reported verdict, 1 on usage and input
//! errors, 2 when a theorem-backed harness suite records a violation.

use std::cmp::Ordering;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use stallings::compress::{deflate, inflate, is_compressed, CompressionVerdict};
use stallings::dot::export_dot;
use stallings::echelon::{
    check_echelon_form, generalized_echelon_certificate, non_echelon_witness, NonEchelonVerdict,
};
use stallings::essential::{injective_maximal_essential, maximal_essential_sets};
use stallings::fold::{fold_all, wedge_of_cycles};
use stallings::graph::{Alphabet, LabeledGraph};
use stallings::harness::{run_harness, HarnessConfig, SuiteKind};
use stallings::inert::{certify_inert, refute_inertness, InertnessVerdict, RefuteBudget};
use stallings::json::{
    certificate_to_json, graph_to_json, read_graph, read_line_spec, write_graph,
};
use stallings::order::{bridge_in_line, BridgeVerdict, LabelOrder};
use stallings::pullback::{based_component, bound_report, fiber_product};
use stallings::word::Word;
use stallings::{Error, Result};

#[derive(Parser)]
#[command(name = "stallings", version, about = "Subgroups of free groups as labeled graph immersions")]
struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON on stdout; with a FILE argument, write it there instead.
    #[arg(long, global = true, num_args = 0..=1, value_name = "FILE", default_missing_value = "-")]
    json: Option<String>,
    /// Suppress informational output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fold the wedge of generator cycles into a subgroup graph.
    Build {
        /// Comma-separated generator words, e.g. "abAB,ABab".
        #[arg(long)]
        gens: String,
        /// Comma-separated alphabet names, e.g. "a,b".
        #[arg(long)]
        alphabet: String,
        /// Also write a DOT rendering.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Fiber product of two subgroup graphs with the intersection bounds.
    Intersect {
        #[arg(long = "h", value_name = "FILE")]
        h: PathBuf,
        #[arg(long = "k", value_name = "FILE")]
        k: PathBuf,
        /// Write the bound report as JSON.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        /// DOT rendering of the based component.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Rank, Euler characteristic, core, arcs, and branching vertices.
    Analyze {
        #[arg(long = "h", value_name = "FILE")]
        h: PathBuf,
    },
    /// Certify inertness or search for a refuting opponent.
    CheckInert {
        #[arg(long = "h", value_name = "FILE")]
        h: PathBuf,
        #[arg(long, default_value_t = 8)]
        budget_edges: usize,
        #[arg(long, default_value_t = 10000)]
        trials: usize,
    },
    /// Decide compressedness by exhaustive quotient enumeration.
    CheckCompressed {
        #[arg(long = "h", value_name = "FILE")]
        h: PathBuf,
        #[arg(long, default_value_t = 8)]
        budget_edges: usize,
    },
    /// Replace the arc containing an edge by that edge.
    Deflate {
        #[arg(long = "h", value_name = "FILE")]
        h: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Replace an edge by a subdivided arc spelling a word.
    Inflate {
        #[arg(long = "h", value_name = "FILE")]
        h: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        word: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Enumerate maximal essential sets, or find an injective one.
    Essential {
        #[arg(long = "h", value_name = "FILE")]
        h: PathBuf,
        /// List every maximal essential set (default).
        #[arg(long, conflicts_with = "injective")]
        all: bool,
        /// Report one injectively labeled maximal essential set.
        #[arg(long)]
        injective: bool,
    },
    /// Check echelon form of an ordered generating set.
    CheckEchelon {
        #[arg(long)]
        gens: String,
        /// Ordered basis names, e.g. "a,b,c,d,e".
        #[arg(long)]
        basis: String,
    },
    /// Search for a generalized echelon certificate.
    CheckGeneralizedEchelon {
        #[arg(long = "h", value_name = "FILE")]
        h: PathBuf,
        /// Write the certificate as JSON.
        #[arg(long, value_name = "FILE")]
        certificate: Option<PathBuf>,
    },
    /// Find the largest edge of an eventually periodic labeled line.
    BridgeLine {
        #[arg(long, value_name = "FILE")]
        line: PathBuf,
        /// Alphabet names, e.g. "a,b".
        #[arg(long)]
        alphabet: String,
        /// Label order, smallest first (defaults to the alphabet order).
        #[arg(long)]
        order: Option<String>,
        /// Position ranking for tie-breaking, best last, e.g. "3,0,1".
        #[arg(long)]
        ranking: Option<String>,
    },
    /// Run the property-test harness.
    Harness {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        max_edges: usize,
        #[arg(long, default_value_t = 3)]
        alphabet_size: usize,
        /// Comma-separated suite names (default: all).
        #[arg(long)]
        suites: Option<String>,
        /// Write the report as JSON.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
    /// Write the DOT rendering of a graph.
    ExportDot {
        #[arg(long = "h", value_name = "FILE")]
        h: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

struct Output {
    json: Option<String>,
    quiet: bool,
}

impl Output {
    fn info(&self, text: &str) {
        if !self.quiet {
            println!("{text}");
        }
    }

    /// Emits the JSON document if requested: to stdout for `--json`, to a
    /// file for `--json FILE`.
    fn json_doc(&self, doc: &str) -> Result<()> {
        match self.json.as_deref() {
            None => Ok(()),
            Some("-") => {
                println!("{doc}");
                Ok(())
            }
            Some(path) => std::fs::write(path, format!("{doc}\n")).map_err(|e| Error::Io {
                path: path.to_owned(),
                message: e.to_string(),
            }),
        }
    }
}

fn parse_alphabet(names: &str) -> Result<Alphabet> {
    Alphabet::new(names.split(',').map(str::trim).filter(|s| !s.is_empty()))
}

fn parse_gens(gens: &str, alphabet: &Alphabet) -> Result<Vec<Word>> {
    gens.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|t| Word::parse(t, alphabet))
        .collect()
}

fn write_dot(path: &Path, g: &LabeledGraph) -> Result<()> {
    std::fs::write(path, export_dot(g)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = Output { json: cli.json.clone(), quiet: cli.quiet };
    match cli.cmd {
        Cmd::Build { gens, alphabet, dot } => {
            let alphabet = parse_alphabet(&alphabet)?;
            let gens = parse_gens(&gens, &alphabet)?;
            let wedge = wedge_of_cycles(&gens, &alphabet);
            for i in &wedge.dropped {
                out.info(&format!("warning: generator {i} reduces to the identity; dropped"));
            }
            let h = fold_all(&wedge.graph);
            out.info(&format!(
                "built subgroup graph: {} vertices, {} edges, rank {}",
                h.vertex_count(),
                h.edge_count(),
                h.rank()?
            ));
            if let Some(path) = dot {
                write_dot(&path, &h)?;
            }
            out.json_doc(&graph_to_json(&h))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Intersect { h, k, report, dot } => {
            let h = read_graph(&h)?;
            let k = read_graph(&k)?;
            let r = bound_report(&h, &k)?;
            let p = fiber_product(&h, &k)?;
            let comp = based_component(&p)?;
            out.info(&format!(
                "intersection rank {} (mrank {}); howson <= {}, hanna-neumann-weak <= {}, hanna-neumann <= {}; all satisfied: {}",
                r.actual_rank, r.actual, r.howson_bound, r.hn_weak_bound, r.hnc_bound, r.all_satisfied
            ));
            let doc = serde_json::to_string_pretty(&r).expect("report serializes");
            if let Some(path) = report {
                std::fs::write(&path, format!("{doc}\n")).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            if let Some(path) = dot {
                write_dot(&path, &comp)?;
            }
            out.json_doc(&doc)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Analyze { h } => {
            let h = read_graph(&h)?;
            let core = h.core();
            let branching = h.branching_vertices();
            let arcs = if core.is_core() && !core.is_empty() { core.arcs()?.len() } else { 0 };
            out.info(&format!(
                "vertices {}, edges {}, chi {}, reduced rank {}, components {}, branching vertices {:?}, core edges {}, core arcs {}",
                h.vertex_count(),
                h.edge_count(),
                h.euler_characteristic(),
                h.reduced_rank(),
                h.components().len(),
                branching,
                core.edge_count(),
                arcs,
            ));
            let doc = serde_json::json!({
                "vertices": h.vertex_count(),
                "edges": h.edge_count(),
                "euler_characteristic": h.euler_characteristic(),
                "reduced_rank": h.reduced_rank(),
                "components": h.components().len(),
                "branching_vertices": branching,
                "core": serde_json::from_str::<serde_json::Value>(&graph_to_json(&core)).unwrap(),
            });
            out.json_doc(&serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckInert { h, budget_edges, trials } => {
            let h = read_graph(&h)?;
            match certify_inert(&h)? {
                InertnessVerdict::CertifiedInert { kind } => {
                    out.info(&format!("certified inert ({kind:?})"));
                    out.json_doc(&serde_json::json!({"verdict": "certified_inert", "kind": format!("{kind:?}")}).to_string())?;
                    return Ok(ExitCode::SUCCESS);
                }
                _ => out.info("no highly-inert certificate; searching for a refutation"),
            }
            let budget = RefuteBudget { max_edges: budget_edges, trials, seed: cli.seed };
            match refute_inertness(&h, &budget)? {
                InertnessVerdict::Refuted { witness, intersection_rank, witness_rank } => {
                    out.info(&format!(
                        "refuted: opponent of rank {witness_rank} meets it in rank {intersection_rank}"
                    ));
                    out.json_doc(
                        &serde_json::json!({
                            "verdict": "refuted",
                            "witness": serde_json::from_str::<serde_json::Value>(&graph_to_json(&witness)).unwrap(),
                            "intersection_rank": intersection_rank,
                            "witness_rank": witness_rank,
                        })
                        .to_string(),
                    )?;
                }
                _ => {
                    out.info("unknown: no refutation within the budget");
                    out.json_doc(&serde_json::json!({"verdict": "unknown"}).to_string())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckCompressed { h, budget_edges } => {
            let h = read_graph(&h)?;
            match is_compressed(&h, budget_edges)? {
                CompressionVerdict::CompressedVerified { budget_edges } => {
                    out.info(&format!("compressed (verified by exhaustion within {budget_edges} edges)"));
                    out.json_doc(&serde_json::json!({"verdict": "compressed_verified", "budget_edges": budget_edges}).to_string())?;
                }
                CompressionVerdict::NotCompressed(w) => {
                    out.info(&format!(
                        "not compressed: reduced rank drops {} -> {}",
                        w.source_mrank, w.target_mrank
                    ));
                    out.json_doc(
                        &serde_json::json!({
                            "verdict": "not_compressed",
                            "target": serde_json::from_str::<serde_json::Value>(&graph_to_json(&w.target)).unwrap(),
                            "source_mrank": w.source_mrank,
                            "target_mrank": w.target_mrank,
                        })
                        .to_string(),
                    )?;
                }
                CompressionVerdict::Unknown { budget_edges } => {
                    out.info(&format!("unknown: graph exceeds the {budget_edges}-edge budget"));
                    out.json_doc(&serde_json::json!({"verdict": "unknown", "budget_edges": budget_edges}).to_string())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Deflate { h, edge, out: out_path } => {
            let h = read_graph(&h)?;
            let arcs = h.arcs()?;
            let arc = arcs
                .iter()
                .find(|a| a.contains_edge(edge))
                .ok_or(Error::UnknownEdge(edge))?;
            let deflated = deflate(&h, arc, edge)?;
            out.info(&format!(
                "deflated arc of {} edges down to edge {edge}",
                arc.len()
            ));
            if let Some(path) = out_path {
                write_graph(&path, &deflated)?;
            }
            out.json_doc(&graph_to_json(&deflated))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Inflate { h, edge, word, out: out_path } => {
            let h = read_graph(&h)?;
            let word = Word::parse(&word, h.alphabet())?;
            let inflated = inflate(&h, edge, &word)?;
            out.info(&format!("inflated edge {edge} into an arc of {} edges", word.len()));
            if let Some(path) = out_path {
                write_graph(&path, &inflated)?;
            }
            out.json_doc(&graph_to_json(&inflated))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Essential { h, all, injective } => {
            let h = read_graph(&h)?;
            if injective {
                match injective_maximal_essential(&h)? {
                    Some(set) => {
                        let ids: Vec<usize> = set.edges.iter().copied().collect();
                        out.info(&format!("injective maximal essential set: {ids:?}"));
                        out.json_doc(&serde_json::json!({"injective": ids}).to_string())?;
                    }
                    None => {
                        out.info("no injectively labeled maximal essential set");
                        out.json_doc(&serde_json::json!({"injective": serde_json::Value::Null}).to_string())?;
                    }
                }
            } else {
                let _ = all;
                let sets = maximal_essential_sets(&h)?;
                let lists: Vec<Vec<usize>> =
                    sets.iter().map(|s| s.edges.iter().copied().collect()).collect();
                out.info(&format!("{} maximal essential sets", lists.len()));
                out.json_doc(&serde_json::to_string(&lists).unwrap())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckEchelon { gens, basis } => {
            let alphabet = parse_alphabet(&basis)?;
            let gens = parse_gens(&gens, &alphabet)?;
            let report = check_echelon_form(&gens);
            let fresh: Vec<Vec<&str>> = report
                .fresh
                .iter()
                .map(|set| set.iter().map(|&l| alphabet.name(l)).collect())
                .collect();
            out.info(&format!("echelon form: {}; fresh letters {fresh:?}", report.echelon));
            out.json_doc(&serde_json::json!({"echelon": report.echelon, "fresh": fresh}).to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckGeneralizedEchelon { h, certificate } => {
            let h = read_graph(&h)?;
            match generalized_echelon_certificate(&h)? {
                Some(cert) => {
                    let labels: Vec<&str> =
                        cert.essential_labels.iter().map(|&l| h.alphabet().name(l)).collect();
                    out.info(&format!(
                        "generalized echelon: essential edges {:?} with labels {labels:?}",
                        cert.essential
                    ));
                    let doc = certificate_to_json(&cert, h.alphabet());
                    if let Some(path) = certificate {
                        std::fs::write(&path, format!("{doc}\n")).map_err(|e| Error::Io {
                            path: path.display().to_string(),
                            message: e.to_string(),
                        })?;
                    }
                    out.json_doc(&doc)?;
                }
                None => {
                    let witness = match non_echelon_witness(&h) {
                        Ok(NonEchelonVerdict::NotEchelonByAbelianization) => "not_echelon_by_abelianization",
                        _ => "inconclusive",
                    };
                    out.info(&format!("no generalized echelon certificate found; abelianization check: {witness}"));
                    out.json_doc(&serde_json::json!({"certificate": serde_json::Value::Null, "abelianization": witness}).to_string())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::BridgeLine { line, alphabet, order, ranking } => {
            let alphabet = parse_alphabet(&alphabet)?;
            let spec = read_line_spec(&line, &alphabet)?;
            let d_order = match order {
                None => LabelOrder::identity(alphabet.size()),
                Some(names) => {
                    let seq: Vec<usize> = names
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|name| {
                            alphabet.index_of(name).ok_or_else(|| {
                                Error::InvalidArgument(format!("unknown label {name:?}"))
                            })
                        })
                        .collect::<Result<_>>()?;
                    LabelOrder::from_sequence(&seq)?
                }
            };
            let ranks: Option<Vec<usize>> = match ranking {
                None => None,
                Some(text) => Some(
                    text.split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| {
                            s.parse::<usize>().map_err(|e| {
                                Error::InvalidArgument(format!("bad ranking entry {s:?}: {e}"))
                            })
                        })
                        .collect::<Result<_>>()?,
                ),
            };
            let mut cmp = move |x: usize, y: usize| -> Ordering {
                match &ranks {
                    None => x.cmp(&y),
                    Some(order) => {
                        let rank =
                            |p: usize| order.iter().position(|&q| q == p).map_or(0, |i| i + 1);
                        rank(x).cmp(&rank(y)).then(x.cmp(&y))
                    }
                }
            };
            let verdict = bridge_in_line(&spec, &d_order, &mut cmp)?;
            let (text, doc) = match verdict {
                BridgeVerdict::BridgeAt(i) => (
                    format!("bridge at marked middle position {i}"),
                    serde_json::json!({"verdict": "bridge_at", "index": i}),
                ),
                BridgeVerdict::NotMarkedMax(i) => (
                    format!("largest edge is at middle position {i}, not the marked one"),
                    serde_json::json!({"verdict": "not_marked_max", "index": i}),
                ),
                BridgeVerdict::NoMaximum => (
                    "no maximum: the largest label recurs in a periodic tail".to_owned(),
                    serde_json::json!({"verdict": "no_maximum"}),
                ),
            };
            out.info(&text);
            out.json_doc(&doc.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Harness { trials, max_edges, alphabet_size, suites, report } => {
            let suites = match suites {
                None => SuiteKind::all(),
                Some(names) => names
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|name| {
                        SuiteKind::from_name(name).ok_or_else(|| {
                            Error::InvalidArgument(format!("unknown suite {name:?}"))
                        })
                    })
                    .collect::<Result<_>>()?,
            };
            let config = HarnessConfig { seed: cli.seed, trials, max_edges, alphabet_size, suites };
            let r = run_harness(&config)?;
            let doc = r.to_json();
            out.info(&format!(
                "harness: {} suites, {} violations, wall {:?}",
                r.suites.len(),
                r.total_violations,
                r.wall
            ));
            if let Some(path) = report {
                std::fs::write(&path, format!("{doc}\n")).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            out.json_doc(&doc)?;
            if r.total_violations > 0 {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ExportDot { h, out: out_path } => {
            let h = read_graph(&h)?;
            let dot = export_dot(&h);
            match out_path {
                Some(path) => std::fs::write(&path, &dot).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?,
                None => print!("{dot}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
