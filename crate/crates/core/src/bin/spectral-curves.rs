use std::fs;
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rug::Rational;
use serde_json::{json, Value};

use spectral_curves::game::{serve_game, solve_game, ServerConfig, SolverConfig, TcpTransport};
use spectral_curves::graph::{sum_distinct_labels, LabelScheme};
use spectral_curves::matrix::level_node;
use spectral_curves::oracles::run_oracle_suite;
use spectral_curves::reconstruct::reconstruct_from_polynomial;
use spectral_curves::spectra::{
    cluster_and_assign, digits_for_bits, recover_from_level_zero, recover_spectral_poly,
    separation_experiment, simulate_spectrum, ClusterAssignment, SpectrumSample,
};
use spectral_curves::{
    spectral_polynomial, DiffusionPair, Error, Graph, Result, SpectralPolynomial,
};

#[derive(Parser)]
#[command(
    name = "spectral-curves",
    version,
    about = "Spectral polynomials, p-adic Laplacian spectra and graph reconstruction"
)]
struct Cli {
    /// Working precision for numeric commands.
    #[arg(long, global = true, default_value_t = 512)]
    precision_bits: u32,
    /// Level window `r_min:r_max`.
    #[arg(long, global = true, default_value = "0:1", allow_hyphen_values = true)]
    window: String,
    /// `powers-of-two` or a comma-separated list attached to the sorted edges.
    #[arg(long, global = true)]
    labels: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral polynomial of a graph or labelled pair file.
    Curve { graph: PathBuf },
    /// Lowest-degree homogeneous part of a polynomial file.
    TangentCone { poly: PathBuf },
    /// Substitute `Y = y`, or `Y = q^(1-r)` when `--q` and `--r` are given.
    Evaluate {
        poly: PathBuf,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i64>,
    },
    /// Rebuild the labelled graph from a polynomial file.
    Reconstruct { poly: PathBuf },
    /// Union of level spectra over the window.
    Simulate {
        graph: PathBuf,
        #[arg(long)]
        q: u64,
    },
    /// Split spectrum files (at least two primes) into levels.
    Cluster {
        #[arg(required = true, num_args = 2..)]
        spectra: Vec<PathBuf>,
    },
    /// Recover the spectral polynomial from spectrum files.
    Recover {
        #[arg(required = true, num_args = 2..)]
        spectra: Vec<PathBuf>,
        /// Y-degree bound; interpolation is used when enough levels exist.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Perturbation experiment on two graphs.
    Separate {
        graph_1: PathBuf,
        graph_2: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
    },
    /// Forest expansion, cofactor and Kel'mans checks on small graphs.
    OracleCheck {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 200)]
        draws: usize,
    },
    /// Serve the game for a hidden graph.
    GameServe {
        graph: PathBuf,
        #[arg(long, default_value_t = 7878)]
        port: u16,
        #[arg(long)]
        max_sessions: Option<usize>,
    },
    /// Play the game against a server.
    GameSolve {
        address: String,
        #[arg(long, value_delimiter = ',', default_value = "101,1009,10007")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        budget: usize,
        /// Write the session transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match (cli.format, out) {
                (Format::Text, Output { text, .. }) => print!("{text}"),
                (Format::Json, Output { json, .. }) => println!("{json}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Self { text, json }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidArgument(format!("window must be `r_min:r_max`, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn label_scheme(spec: &str) -> Result<LabelScheme> {
    if spec == "powers-of-two" {
        return Ok(LabelScheme::PowersOfTwo);
    }
    let list = spec
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidArgument(format!("bad label list `{spec}`")))?;
    Ok(LabelScheme::Custom(list))
}

/// `--labels` wins; otherwise labels in the file, otherwise powers of two.
fn load_pair(path: &Path, labels: Option<&str>) -> Result<DiffusionPair> {
    let text = read(path)?;
    if let Some(spec) = labels {
        let g = Graph::from_text(&text)?;
        let ls = sum_distinct_labels(g.num_edges(), &label_scheme(spec)?)?;
        return DiffusionPair::from_graph(&g, &ls);
    }
    if DiffusionPair::text_has_labels(&text)? {
        DiffusionPair::from_text_allow_repeated_labels(&text)
    } else {
        DiffusionPair::with_powers_of_two(&Graph::from_text(&text)?)
    }
}

fn load_poly(path: &Path) -> Result<SpectralPolynomial> {
    SpectralPolynomial::from_text(&read(path)?)
}

fn poly_json(p: &SpectralPolynomial) -> Value {
    let monos: Vec<Value> = p
        .monomials()
        .into_iter()
        .map(|(c, j, k)| json!({"c": c.to_string(), "x": j, "y": k}))
        .collect();
    json!({"n": p.n(), "monomials": monos})
}

fn short(x: &rug::Float) -> String {
    x.to_string_radix(10, Some(12))
}

fn best_assignment(samples: &[SpectrumSample]) -> Result<Vec<ClusterAssignment>> {
    let mut a = cluster_and_assign(samples)?;
    a.sort_by_key(|x| std::cmp::Reverse(x.q));
    Ok(a)
}

fn run(cli: &Cli) -> Result<Output> {
    let prec = cli.precision_bits;
    match &cli.command {
        Command::Curve { graph } => {
            let p = spectral_polynomial(&load_pair(graph, cli.labels.as_deref())?);
            Ok(Output::new(p.to_text(), poly_json(&p)))
        }
        Command::TangentCone { poly } => {
            let t = load_poly(poly)?.tangent_cone()?;
            let terms: Vec<Value> = t
                .terms
                .iter()
                .map(|(c, j, k)| json!({"c": c.to_string(), "x": j, "y": k}))
                .collect();
            Ok(Output::new(
                format!("{t}\n"),
                json!({"degree": t.degree, "terms": terms}),
            ))
        }
        Command::Evaluate { poly, y, q, r } => {
            let p = load_poly(poly)?;
            let y = match (y, q, r) {
                (Some(s), None, None) => s
                    .parse::<Rational>()
                    .map_err(|_| Error::InvalidArgument(format!("bad rational `{s}`")))?,
                (None, Some(q), Some(r)) => level_node(*q, *r),
                _ => {
                    return Err(Error::InvalidArgument(
                        "give --y, or both --q and --r".into(),
                    ))
                }
            };
            let e = p.evaluate_y(&y);
            let coeffs: Vec<String> = e.coeffs().iter().map(|c| c.to_string()).collect();
            Ok(Output::new(
                format!("{e}\n"),
                json!({"y": y.to_string(), "coeffs": coeffs}),
            ))
        }
        Command::Reconstruct { poly } => {
            let dp = reconstruct_from_polynomial(&load_poly(poly)?)?;
            let edges: Vec<Value> = dp
                .weighted_edges()
                .map(|(u, v, a)| json!([u, v, a]))
                .collect();
            Ok(Output::new(
                dp.to_text(),
                json!({"n": dp.n(), "edges": edges}),
            ))
        }
        Command::Simulate { graph, q } => {
            let (r_min, r_max) = parse_window(&cli.window)?;
            let dp = load_pair(graph, cli.labels.as_deref())?;
            let s = simulate_spectrum(&dp, *q, r_min, r_max, prec)?;
            let digits = digits_for_bits(s.precision_bits);
            let values: Vec<String> = s
                .values
                .iter()
                .map(|v| v.to_string_radix(10, Some(digits)))
                .collect();
            Ok(Output::new(
                s.to_text(),
                json!({"q": s.q, "r_min": s.r_min, "r_max": s.r_max, "precision_bits": s.precision_bits, "values": values}),
            ))
        }
        Command::Cluster { spectra } => {
            let samples = spectra
                .iter()
                .map(|p| SpectrumSample::from_text(&read(p)?))
                .collect::<Result<Vec<_>>>()?;
            let assignments = cluster_and_assign(&samples)?;
            let mut text = String::new();
            let mut out = Vec::new();
            for a in &assignments {
                text.push_str(&format!(
                    "q={} inter_gap={:.3e} intra_gap={:.3e}\n",
                    a.q, a.min_inter_gap, a.max_intra_gap
                ));
                let mut levels = serde_json::Map::new();
                for (r, vals) in &a.levels {
                    let vs: Vec<String> = vals.iter().map(short).collect();
                    text.push_str(&format!("  r={r}: {}\n", vs.join(" ")));
                    levels.insert(r.to_string(), json!(vs));
                }
                out.push(json!({"q": a.q, "levels": levels}));
            }
            Ok(Output::new(text, json!(out)))
        }
        Command::Recover {
            spectra,
            degree_bound,
        } => {
            let samples = spectra
                .iter()
                .map(|p| SpectrumSample::from_text(&read(p)?))
                .collect::<Result<Vec<_>>>()?;
            let mut last = Error::InsufficientLevels { needed: 1, got: 0 };
            for a in best_assignment(&samples)? {
                let got = match degree_bound {
                    Some(d) if a.levels.len() > *d => recover_spectral_poly(&a, a.q, *d),
                    _ => recover_from_level_zero(&a, a.q),
                };
                match got {
                    Ok(rec) => {
                        let mut j = poly_json(&rec.poly);
                        j["residual"] = json!(rec.residual);
                        return Ok(Output::new(rec.poly.to_text(), j));
                    }
                    Err(e) => last = e,
                }
            }
            Err(last)
        }
        Command::Separate {
            graph_1,
            graph_2,
            epsilon,
        } => {
            let g1 = Graph::from_text(&read(graph_1)?)?;
            let g2 = Graph::from_text(&read(graph_2)?)?;
            let rep = separation_experiment(&g1, &g2, *epsilon, prec)?;
            let mut text = format!(
                "epsilon={}\ncommon={} only_1={:?} only_2={:?}\nhausdorff={}\nmax_prediction_error={}\n",
                rep.epsilon,
                rep.common.len(),
                rep.only_1,
                rep.only_2,
                short(&rep.hausdorff),
                short(&rep.max_prediction_error())
            );
            let sep = rep.separating.as_ref().map(|s| {
                text.push_str(&format!(
                    "separating eigenvalue={} seminorm_1={} seminorm_2={}\n",
                    short(&s.eigenvalue),
                    short(&s.seminorm_1),
                    short(&s.seminorm_2)
                ));
                json!({"eigenvalue": short(&s.eigenvalue), "seminorm_1": short(&s.seminorm_1), "seminorm_2": short(&s.seminorm_2)})
            });
            Ok(Output::new(
                text,
                json!({"epsilon": rep.epsilon, "hausdorff": short(&rep.hausdorff), "max_prediction_error": short(&rep.max_prediction_error()), "separating": sep}),
            ))
        }
        Command::OracleCheck { max_n, draws } => {
            if !(1..=7).contains(max_n) {
                return Err(Error::InvalidArgument("--max-n must be in 1..=7".into()));
            }
            let rep = run_oracle_suite(*max_n, *draws, cli.seed)?;
            let mut text = format!(
                "graphs={} label_draws={} failures={}\n",
                rep.graphs,
                rep.label_draws,
                rep.failures.len()
            );
            for f in &rep.failures {
                text.push_str(&format!("  {f}\n"));
            }
            if !rep.passed() {
                eprint!("{text}");
                return Err(Error::InvalidArgument(format!(
                    "{} oracle mismatches",
                    rep.failures.len()
                )));
            }
            Ok(Output::new(
                text,
                json!({"graphs": rep.graphs, "label_draws": rep.label_draws, "failures": rep.failures}),
            ))
        }
        Command::GameServe {
            graph,
            port,
            max_sessions,
        } => {
            let (r_min, r_max) = parse_window(&cli.window)?;
            let hidden = Graph::from_text(&read(graph)?)?;
            let config = ServerConfig {
                r_min,
                r_max,
                precision_bits: prec,
                seed: cli.seed,
            };
            let listener = TcpListener::bind(("127.0.0.1", *port))?;
            eprintln!("listening on {}", listener.local_addr()?);
            serve_game(listener, hidden, config, *max_sessions)?;
            Ok(Output::new(String::new(), json!({"served": true})))
        }
        Command::GameSolve {
            address,
            primes,
            budget,
            transcript,
        } => {
            let mut t = TcpTransport::connect(address.as_str())?;
            let config = SolverConfig {
                primes: primes.clone(),
                budget: *budget,
            };
            let rep = solve_game(&mut t, &config)?;
            if let Some(path) = transcript {
                fs::write(path, rep.transcript.to_text())?;
            }
            let outcome = match rep.outcome {
                Some(o) => format!("{o:?}").to_lowercase(),
                None => "no submission".into(),
            };
            let mut text = format!(
                "session={} edges={} primes={:?} outcome={outcome}\n",
                rep.session_id, rep.edge_count, rep.primes_used
            );
            if let Some(g) = &rep.submitted {
                text.push_str(&g.to_text());
            }
            if let Some(f) = &rep.failure {
                text.push_str(&format!("failure: {f}\n"));
            }
            let j = json!({
                "session_id": rep.session_id,
                "edge_count": rep.edge_count,
                "primes": rep.primes_used,
                "outcome": outcome,
                "submitted": rep.submitted.as_ref().map(|g| g.edges().to_vec()),
                "failure": rep.failure,
            });
            if rep.outcome.is_none() {
                print!(
                    "{}",
                    if cli.format == Format::Json {
                        format!("{j}\n")
                    } else {
                        text
                    }
                );
                return Err(Error::GaveUp(rep.failure.unwrap_or_default()));
            }
            Ok(Output::new(text, j))
        }
    }
}
