//! Command-line surface over the ball algebra, state composition, distance
//! functions, and verification suites. Output is JSON lines on stdout
//! (`--pretty` for humans); exit codes: 0 success, 1 domain error, 2 usage
//! error, 3 suite violation.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use gyroqubit::density::DensityMatrix;
use gyroqubit::gyrovector::{
    boost_compose, einstein_add, einstein_add_closed, gyration, lorentz_boost, scalar_mul,
    BlochVector,
};
use gyroqubit::metrics::{gyrometric, prop_bound, rapidity_metric, trace_metric};
use gyroqubit::verify::{run_all, run_suite, summarize, TrialConfig, SUITE_IDS};
use gyroqubit::{Error, Hermitian2};

#[derive(Parser)]
#[command(
    name = "gyroqubit",
    about = "Velocity addition on the unit ball, qubit states, their metrics, and verification suites",
    version
)]
struct Cli {
    /// Pretty-print JSON instead of one object per line.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

fn parse_vector(s: &str) -> Result<BlochVector, String> {
    s.parse()
}

fn parse_suite_id(s: &str) -> Result<String, String> {
    if SUITE_IDS.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("unknown suite (choose from {})", SUITE_IDS.join(", ")))
    }
}

fn parse_cap(s: &str) -> Result<f64, String> {
    let cap: f64 = s.parse().map_err(|e| format!("bad radius cap: {e}"))?;
    if cap > 0.0 && cap < 1.0 {
        Ok(cap)
    } else {
        Err("radius cap must be strictly between 0 and 1".to_string())
    }
}

fn parse_finite(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("bad number: {e}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err("must be finite".to_string())
    }
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let tol: f64 = s.parse().map_err(|e| format!("bad tolerance: {e}"))?;
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err("tolerance must be finite and positive".to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricKind {
    Gyrometric,
    Rapidity,
    Trace,
    Prop52,
}

#[derive(Subcommand)]
enum Command {
    /// Einstein addition u (+) v.
    Add {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        u: BlochVector,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: BlochVector,
        /// Use the extension to the closed ball (boundary vectors absorb).
        #[arg(long)]
        closed: bool,
    },
    /// Thomas gyration gyr[u, v] as a matrix, or its image of w.
    Gyr {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        u: BlochVector,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: BlochVector,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        w: Option<BlochVector>,
    },
    /// Scalar multiplication t . u along the rapidity line.
    Mul {
        #[arg(allow_hyphen_values = true, value_parser = parse_finite)]
        t: f64,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        u: BlochVector,
    },
    /// Lorentz boost of u as a 4x4 matrix, or the boost-composed sum with v.
    Boost {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        u: BlochVector,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: Option<BlochVector>,
    },
    /// Density matrix of a Bloch vector.
    Density {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: BlochVector,
    },
    /// Bloch vector of a density matrix given as JSON (a bare
    /// {"a11":..,"a22":..,"re12":..,"im12":..} object, or any object
    /// carrying it under "matrix", or one carrying "bloch").
    Bloch { json: String },
    /// Square root of the density matrix of v.
    Sqrt {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: BlochVector,
    },
    /// State composition rho_u (.) rho_v.
    Odot {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        u: BlochVector,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: BlochVector,
    },
    /// Gyrogroup inverse state of u.
    Inv {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        u: BlochVector,
        /// Also evaluate the single-gamma coefficient that circulates in
        /// print; its trace comes out as gamma rather than 1.
        #[arg(long = "printed-eqn")]
        printed_eqn: bool,
    },
    /// Distances between u and v (all of them, or a --metric subset).
    Dist {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        u: BlochVector,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: BlochVector,
        /// Comma-separated subset of gyrometric, rapidity, trace, prop52.
        #[arg(long, value_delimiter = ',')]
        metric: Vec<MetricKind>,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long, value_parser = parse_suite_id)]
        suite: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Relative tolerance override (default 1e-9).
        #[arg(long, value_parser = parse_tolerance)]
        tol: Option<f64>,
        /// Sampling radius cap override (default 0.999).
        #[arg(long, value_parser = parse_cap)]
        cap: Option<f64>,
    },
    /// Emit n deterministic uniform samples from the ball of radius 0.999,
    /// one JSON array per line.
    Sample {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        seed: u64,
    },
}

fn emit(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value).expect("finite values serialize")
    } else {
        serde_json::to_string(value).expect("finite values serialize")
    };
    println!("{text}");
}

/// The closed-ball extension is total on its domain, but the domain still
/// has to be checked at the boundary of the program.
fn require_closed_ball(v: &BlochVector) -> Result<(), Error> {
    let norm = v.norm();
    if norm > 1.0 + 1e-12 {
        Err(Error::NormExceedsOne(norm))
    } else {
        Ok(())
    }
}

fn run(command: Command, pretty: bool) -> Result<i32, Error> {
    match command {
        Command::Add { u, v, closed } => {
            let result = if closed {
                require_closed_ball(&u)?;
                require_closed_ball(&v)?;
                einstein_add_closed(&u, &v)
            } else {
                einstein_add(&u, &v)?
            };
            emit(&json!({ "result": result }), pretty);
            Ok(0)
        }
        Command::Gyr { u, v, w } => {
            let rotation = gyration(&u, &v)?;
            match w {
                Some(w) => emit(&json!({ "result": rotation.apply(&w) }), pretty),
                None => emit(&json!({ "matrix": rotation }), pretty),
            }
            Ok(0)
        }
        Command::Mul { t, u } => {
            emit(&json!({ "result": scalar_mul(t, &u)? }), pretty);
            Ok(0)
        }
        Command::Boost { u, v } => {
            match v {
                Some(v) => {
                    let (t, sum) = boost_compose(&u, &v)?;
                    emit(&json!({ "t": t, "result": sum }), pretty);
                }
                None => emit(&json!({ "matrix": lorentz_boost(&u)? }), pretty),
            }
            Ok(0)
        }
        Command::Density { v } => {
            let dm = DensityMatrix::from_bloch(v)?;
            emit(&json!({ "bloch": dm.bloch(), "matrix": dm.matrix() }), pretty);
            Ok(0)
        }
        Command::Bloch { json } => {
            let value: Value = match serde_json::from_str(&json) {
                Ok(v) => v,
                Err(e) => {
                    emit(&json!({ "error": "usage", "detail": format!("bad JSON: {e}") }), pretty);
                    return Ok(2);
                }
            };
            let dm = density_from_value(&value, pretty)?;
            match dm {
                Some(dm) => {
                    emit(&json!({ "bloch": dm.bloch() }), pretty);
                    Ok(0)
                }
                None => Ok(2),
            }
        }
        Command::Sqrt { v } => {
            emit(&json!({ "matrix": DensityMatrix::from_bloch(v)?.sqrt()? }), pretty);
            Ok(0)
        }
        Command::Odot { u, v } => {
            let out = DensityMatrix::from_bloch(u)?.odot(&DensityMatrix::from_bloch(v)?)?;
            emit(&json!({ "bloch": out.bloch() }), pretty);
            Ok(0)
        }
        Command::Inv { u, printed_eqn } => {
            let rho = DensityMatrix::from_bloch(u)?;
            let inverse = rho.inverse()?;
            if printed_eqn {
                let printed = rho.inverse_printed_form()?;
                emit(
                    &json!({
                        "bloch": inverse.bloch(),
                        "printed_matrix": printed,
                        "printed_trace": printed.trace(),
                    }),
                    pretty,
                );
            } else {
                emit(&json!({ "bloch": inverse.bloch() }), pretty);
            }
            Ok(0)
        }
        Command::Dist { u, v, metric } => {
            let mut record = Map::new();
            let full = metric.is_empty();
            if full {
                record.insert("u".into(), json!(u));
                record.insert("v".into(), json!(v));
            }
            let wants = |k: MetricKind| full || metric.contains(&k);
            if wants(MetricKind::Gyrometric) {
                record.insert("gyrometric".into(), json!(gyrometric(&u, &v)?));
            }
            if wants(MetricKind::Rapidity) {
                record.insert("rapidity".into(), json!(rapidity_metric(&u, &v)?));
            }
            if wants(MetricKind::Trace) {
                let a = DensityMatrix::from_bloch(u)?.matrix();
                let b = DensityMatrix::from_bloch(v)?.matrix();
                record.insert("trace".into(), json!(trace_metric(&a, &b)?));
            }
            if wants(MetricKind::Prop52) {
                record.insert("prop52_bound".into(), json!(prop_bound(&u, &v)?));
            }
            if full {
                let lhs = std::f64::consts::SQRT_2 * rapidity_metric(&u, &v)?;
                record.insert("thm53_lhs".into(), json!(lhs));
            }
            emit(&Value::Object(record), pretty);
            Ok(0)
        }
        Command::Verify { suite, trials, seed, tol, cap } => {
            let cfg = TrialConfig {
                seed,
                trials,
                radius_cap: cap.unwrap_or(0.999),
                tol_rel: tol.unwrap_or(1e-9),
                ..TrialConfig::default()
            };
            let summary = if suite == "all" {
                let reports = run_all(&cfg);
                for r in &reports {
                    emit(&serde_json::to_value(r).expect("report serializes"), pretty);
                    eprintln!(
                        "{}: {} trials, {} violations, {:.1} ms",
                        r.suite_id, r.trials_run, r.violations, r.elapsed_ms
                    );
                }
                summarize(&reports)
            } else {
                run_suite(&suite, &cfg)?
            };
            emit(&serde_json::to_value(&summary).expect("report serializes"), pretty);
            eprintln!(
                "{}: {} trials, {} violations, {:.1} ms",
                summary.suite_id, summary.trials_run, summary.violations, summary.elapsed_ms
            );
            Ok(if summary.violations == 0 { 0 } else { 3 })
        }
        Command::Sample { n, seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            for _ in 0..n {
                let v = gyroqubit::verify::sample_ball(&mut rng, 0.999);
                emit(&json!(v), pretty);
            }
            Ok(0)
        }
    }
}

/// Interpret a JSON value as a density matrix. Returns `Ok(None)` after
/// printing a usage record when the shape is unrecognizable.
fn density_from_value(value: &Value, pretty: bool) -> Result<Option<DensityMatrix>, Error> {
    let from_matrix_value = |m: &Value| -> Result<Option<DensityMatrix>, Error> {
        match serde_json::from_value::<Hermitian2>(m.clone()) {
            Ok(h) => DensityMatrix::from_matrix(&h).map(Some),
            Err(e) => {
                emit(&json!({ "error": "usage", "detail": format!("bad matrix object: {e}") }), pretty);
                Ok(None)
            }
        }
    };
    if value.get("a11").is_some() {
        return from_matrix_value(value);
    }
    if let Some(m) = value.get("matrix") {
        return from_matrix_value(m);
    }
    if let Some(b) = value.get("bloch") {
        match serde_json::from_value::<BlochVector>(b.clone()) {
            Ok(v) => return DensityMatrix::from_bloch(v).map(Some),
            Err(e) => {
                emit(&json!({ "error": "usage", "detail": format!("bad bloch array: {e}") }), pretty);
                return Ok(None);
            }
        }
    }
    emit(
        &json!({
            "error": "usage",
            "detail": "expected a matrix object with a11/a22/re12/im12, or keys \"matrix\" or \"bloch\"",
        }),
        pretty,
    );
    Ok(None)
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command, cli.pretty) {
        Ok(code) => code,
        Err(err) => {
            emit(&json!({ "error": err.code(), "detail": err.to_string() }), cli.pretty);
            1
        }
    };
    std::process::exit(code);
}
