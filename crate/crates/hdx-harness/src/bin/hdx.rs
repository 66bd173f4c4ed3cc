//! Experiment CLI. Exit codes: 0 success, 1 usage/validation error,
//! 2 runtime failure.

use clap::{Parser, Subcommand};
use hdx_algebra::Rng;
use hdx_harness::{
    measure_congestion, measure_sampler, run_and_write, ExperimentConfig, HashBadSet,
    SamplerMode, SystemSpec,
};
use hdx_kms::{route_randomized, route_subset_internal, uniform_sl, CanonicalCoset};
use hdx_subspace::{inclusion_graph_joint, intersection_graph_joint};

#[derive(Parser)]
#[command(name = "hdx", version, about = "direct-product code experiment driver")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Experiment config file (flat key = value lines).
    #[arg(long, global = true)]
    config: Option<String>,
    /// Root seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report output path override.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Trial count override.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct the configured system and sanity-check its neighbor maps.
    Build,
    /// Measure sampler quality of the configured subspace system.
    Sampler {
        /// exact_spectral or monte_carlo.
        #[arg(long, default_value = "exact_spectral")]
        mode: String,
    },
    /// Route random pairs and report validity, length, and congestion.
    Route,
    /// Run the encode -> corrupt -> decode campaign and write a report.
    Decode,
    /// Time core operations of the configured system.
    Bench,
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, String> {
    let path = cli.config.as_deref().ok_or("--config is required")?;
    let mut cfg = ExperimentConfig::load(path).map_err(|e| e.to_string())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = cli.trials {
        cfg.trials = trials;
        cfg.validate().map_err(|e| e.to_string())?;
    }
    Ok(cfg)
}

fn emit(json: bool, value: serde_json::Value, plain: String) {
    if json {
        println!("{value}");
    } else {
        println!("{plain}");
    }
}

// Validation failure -> Err(1, msg); runtime failure -> Err(2, msg).
fn run(cli: &Cli) -> Result<(), (i32, String)> {
    let invalid = |m: String| (1, m);
    let runtime = |m: String| (2, m);
    match &cli.cmd {
        Cmd::Build => {
            let cfg = load_config(cli).map_err(invalid)?;
            let sys = cfg.build_system().map_err(|e| invalid(e.to_string()))?;
            let mut rng = Rng::new(cfg.seed);
            for _ in 0..20 {
                let s = sys.random_edge(&mut rng).map_err(|e| runtime(e.to_string()))?;
                let v = sys
                    .nbr_down(&s, rng.below(sys.degree()))
                    .map_err(|e| runtime(e.to_string()))?;
                let j = sys.inv_index(&v, &s).map_err(|e| runtime(e.to_string()))?;
                let back = sys.nbr_up(&v, j).map_err(|e| runtime(e.to_string()))?;
                if back != s {
                    return Err(runtime(format!("neighbor roundtrip broke at {s}")));
                }
            }
            emit(
                cli.json,
                serde_json::json!({
                    "system": cfg.system_id(),
                    "degree": sys.degree(),
                    "up_degree": sys.up_degree(),
                    "edge_degree": sys.edge_degree(),
                    "sanity": "ok",
                }),
                format!(
                    "{}: degree {} up_degree {} edge_degree {} sanity ok",
                    cfg.system_id(),
                    sys.degree(),
                    sys.up_degree(),
                    sys.edge_degree()
                ),
            );
            Ok(())
        }
        Cmd::Sampler { mode } => {
            let cfg = load_config(cli).map_err(invalid)?;
            let mode = match mode.as_str() {
                "exact_spectral" => SamplerMode::ExactSpectral,
                "monte_carlo" => SamplerMode::MonteCarlo,
                other => return Err(invalid(format!("unknown sampler mode {other}"))),
            };
            let params = cfg
                .subspace_params()
                .ok_or_else(|| invalid("sampler needs a subspace system".into()))?;
            let mut rng = Rng::new(cfg.seed);
            let s = hdx_subspace::uniform_subspace(&params, hdx_subspace::Level::S, &mut rng);
            let joints = [
                ("intersection", intersection_graph_joint(&params, &s)),
                ("inclusion", inclusion_graph_joint(&params)),
            ];
            let mut results = Vec::new();
            for (name, joint) in &joints {
                let est = measure_sampler(joint, mode, 4000, &mut rng)
                    .map_err(|e| runtime(e.to_string()))?;
                results.push(serde_json::json!({
                    "graph": name,
                    "gap": est.gap,
                    "converged": est.converged,
                }));
                if !cli.json {
                    println!("{name}: gap {:.6} (converged: {})", est.gap, est.converged);
                }
            }
            if cli.json {
                println!("{}", serde_json::json!({ "sampler": results }));
            }
            Ok(())
        }
        Cmd::Route => {
            let cfg = load_config(cli).map_err(invalid)?;
            let trials = cfg.trials.max(100);
            let bad = HashBadSet { key: cfg.seed ^ 0xbad5e7, measure: 0.01 };
            let mut rng = Rng::new(cfg.seed);
            let (est, t_bound) = match cfg.system {
                SystemSpec::Subspace { d, .. } => {
                    let sys = cfg.build_system().map_err(|e| invalid(e.to_string()))?;
                    let route = |rng: &mut Rng| -> Option<Vec<String>> {
                        let a = sys.random_edge(rng).ok()?;
                        let b = sys.random_edge(rng).ok()?;
                        sys.route(&a, &b, rng).ok()
                    };
                    (measure_congestion(route, &bad, trials, &mut rng), d)
                }
                SystemSpec::Kms { d, .. } => {
                    let params = cfg
                        .kms_params()
                        .ok_or_else(|| invalid("bad kms parameters".into()))?;
                    let vert = params.color_shift(2);
                    let route = |rng: &mut Rng| -> Option<Vec<String>> {
                        let a = CanonicalCoset::new(
                            &params,
                            &uniform_sl(&params, rng).ok()?,
                            vert.clone(),
                        )
                        .ok()?;
                        let b = CanonicalCoset::new(
                            &params,
                            &uniform_sl(&params, rng).ok()?,
                            vert.clone(),
                        )
                        .ok()?;
                        let path = if params.d() % 7 == 0 {
                            route_subset_internal(&params, &a, &b, &|_| true, rng).ok()?
                        } else {
                            route_randomized(&params, &a, &b, rng).ok()?
                        };
                        if path.fail {
                            None
                        } else {
                            Some(path.nodes)
                        }
                    };
                    // Path-length scale for the congestion bound.
                    (measure_congestion(route, &bad, trials, &mut rng), 4 * d * d)
                }
                SystemSpec::Complete { .. } => {
                    return Err(invalid("complete systems have no router".into()))
                }
            };
            let bound = t_bound as f64 * bad.measure;
            emit(
                cli.json,
                serde_json::json!({
                    "routed": est.routed,
                    "route_failures": est.route_failures,
                    "bad_measure": bad.measure,
                    "hit_probability": est.hit_probability,
                    "stderr": est.stderr,
                    "bound": bound,
                    "within_bound": est.within(bound),
                }),
                format!(
                    "routed {} (failures {}), bad-set hits {:.4} +/- {:.4}, bound {:.4}: {}",
                    est.routed,
                    est.route_failures,
                    est.hit_probability,
                    est.stderr,
                    bound,
                    if est.within(bound) { "ok" } else { "EXCEEDED" }
                ),
            );
            Ok(())
        }
        Cmd::Decode => {
            let cfg = load_config(cli).map_err(invalid)?;
            let report = run_and_write(&cfg, cli.out.as_deref())
                .map_err(|e| runtime(e.to_string()))?;
            emit(
                cli.json,
                serde_json::json!({ "summary": report.summary }),
                format!(
                    "{}: {} trials, success rate {:.3} +/- {:.3}",
                    report.summary.system,
                    report.summary.trials,
                    report.summary.success_rate,
                    report.summary.success_stderr
                ),
            );
            Ok(())
        }
        Cmd::Bench => {
            let cfg = load_config(cli).map_err(invalid)?;
            let sys = cfg.build_system().map_err(|e| invalid(e.to_string()))?;
            let mut rng = Rng::new(cfg.seed);
            let reps = 50usize;
            let t0 = std::time::Instant::now();
            let mut edges = Vec::with_capacity(reps);
            for _ in 0..reps {
                edges.push(sys.random_edge(&mut rng).map_err(|e| runtime(e.to_string()))?);
            }
            let sample_us = t0.elapsed().as_micros() as f64 / reps as f64;
            let f = hdx_dpcode::Message::seeded(cfg.sigma, cfg.seed)
                .map_err(|e| runtime(e.to_string()))?;
            let t1 = std::time::Instant::now();
            for s in &edges {
                let _ = hdx_dpcode::dp_encode_block(sys.as_ref(), &f, s);
            }
            let encode_us = t1.elapsed().as_micros() as f64 / reps as f64;
            let t2 = std::time::Instant::now();
            let mut routed = 0;
            for pair in edges.chunks(2) {
                if let [a, b] = pair {
                    if sys.route(a, b, &mut rng).is_ok() {
                        routed += 1;
                    }
                }
            }
            let route_us = if routed > 0 {
                t2.elapsed().as_micros() as f64 / routed as f64
            } else {
                f64::NAN
            };
            emit(
                cli.json,
                serde_json::json!({
                    "system": cfg.system_id(),
                    "sample_edge_us": sample_us,
                    "encode_block_us": encode_us,
                    "route_us": route_us,
                }),
                format!(
                    "{}: sample {:.1}us encode {:.1}us route {:.1}us",
                    cfg.system_id(),
                    sample_us,
                    encode_us,
                    route_us
                ),
            );
            Ok(())
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Usage and parse problems are validation errors (exit 1);
            // --help/--version print and exit 0.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err((code, msg)) = run(&cli) {
        eprintln!("hdx: {msg}");
        std::process::exit(code);
    }
}
