use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use coxeter_core::config::{ConfigError, NamedSystem, SystemConfig};
use coxeter_core::oracle::Ball;
use coxeter_core::ray::DEFAULT_HORIZON;
use coxeter_core::suite::lemma_suite;
use coxeter_core::{CoxeterError, TraceReport};

/// Exact computations in Coxeter systems.
///
/// Systems come from a preset (--system A2|A3|B3|H3|I2(m)|I2(inf)|tilde-A2|G1)
/// or a JSON file (--config path) of the form
/// {"generators": ["s0","t0","t1"], "orders": [[1,"inf",3],["inf",1,2],[3,2,1]]}.
/// Words and subsets are comma-separated generator names. Results are JSON on
/// stdout; diagnostics go to stderr.
#[derive(Parser)]
#[command(name = "coxeter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Preset system name.
    #[arg(long, conflicts_with = "config")]
    system: Option<String>,
    /// JSON file describing the system.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a Coxeter matrix and print it back.
    Validate(SystemArgs),
    /// Canonical reduced form of a word.
    Reduce {
        #[command(flatten)]
        sys: SystemArgs,
        /// Word, e.g. a,b,a,b
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Right and left descent sets of the element a word represents.
    Descents {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        word: String,
    },
    /// Sphericity verdict for a generator subset.
    Spherical {
        #[command(flatten)]
        sys: SystemArgs,
        /// Subset, e.g. t0,t1 (empty for the empty subset)
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// All maximal spherical subsets.
    MaximalSpherical(SystemArgs),
    /// Enumerate the ball of the given radius as JSON lines.
    Enumerate {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// Also write the Cayley graph of the ball in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Longest element of the coset W_T·w.
    LongestCoset {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value = "")]
        subset: String,
        #[arg(long)]
        word: String,
    },
    /// Exhaustively verify the lemmas over balls of each system.
    LemmaSuite {
        /// Preset systems to check (repeatable).
        #[arg(long = "system")]
        systems: Vec<String>,
        /// JSON system files to check (repeatable).
        #[arg(long = "config")]
        configs: Vec<PathBuf>,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// Omit wall-clock timings so the report is byte-for-byte reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Follow the coset correction x_i along the ray prefix·period^∞.
    Trace {
        #[command(flatten)]
        sys: SystemArgs,
        /// Spherical subset T.
        #[arg(long)]
        subset: String,
        #[arg(long, default_value = "")]
        prefix: String,
        #[arg(long)]
        period: String,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        /// With --t0, also check the W^{s0} / W^{t0} memberships.
        #[arg(long, requires = "t0")]
        s0: Option<String>,
        #[arg(long, requires = "s0")]
        t0: Option<String>,
        /// Write (i, l(w_i), l(x_i)) rows to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Whether every check in the command passed.
type Outcome = Result<bool, CliError>;

fn load(args: &SystemArgs) -> Result<NamedSystem, CliError> {
    match (&args.system, &args.config) {
        (Some(name), None) => Ok(NamedSystem::preset(name)?),
        (None, Some(path)) => {
            let path = path.to_string_lossy();
            Ok(SystemConfig::from_path(&path)?.build(&path)?)
        }
        _ => Err(CliError::Usage("exactly one of --system or --config is required".into())),
    }
}

fn emit(value: &Value) {
    use std::io::Write;
    let line = serde_json::to_string(value).expect("JSON values serialize");
    // a closed reader (e.g. `| head`) is not an error worth reporting
    if let Err(e) = writeln!(std::io::stdout().lock(), "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate(sys) => {
            let named = load(&sys)?;
            emit(&json!({
                "generators": named.generators,
                "orders": named.system.matrix().rows(),
                "rank": named.system.rank(),
            }));
            Ok(true)
        }
        Command::Reduce { sys, word } => {
            let named = load(&sys)?;
            let w = named.system.reduce(&named.parse_word(&word)?)?;
            emit(&json!({ "canonical": named.element_names(&w), "length": w.length() }));
            Ok(true)
        }
        Command::Descents { sys, word } => {
            let named = load(&sys)?;
            let w = named.system.reduce(&named.parse_word(&word)?)?;
            emit(&json!({
                "element": named.element_names(&w),
                "length": w.length(),
                "right_descents": named.subset_names(named.system.right_descents(&w)?),
                "left_descents": named.subset_names(named.system.left_descents(&w)?),
            }));
            Ok(true)
        }
        Command::Spherical { sys, subset } => {
            let named = load(&sys)?;
            let verdict = named.system.matrix().classify(named.parse_subset(&subset)?);
            let components: Vec<Value> = verdict
                .components
                .iter()
                .map(|c| json!({ "members": named.subset_names(c.members), "type": c.label.to_string() }))
                .collect();
            emit(&json!({
                "spherical": verdict.spherical,
                "components": components,
                "order": serde_json::to_value(&verdict.order).expect("order serializes"),
            }));
            Ok(true)
        }
        Command::MaximalSpherical(sys) => {
            let named = load(&sys)?;
            let subsets: Vec<Vec<String>> = named
                .system
                .matrix()
                .maximal_spherical_subsets()
                .into_iter()
                .map(|t| named.subset_names(t))
                .collect();
            emit(&json!({ "maximal_spherical": subsets }));
            Ok(true)
        }
        Command::Enumerate { sys, radius, dot } => {
            let named = load(&sys)?;
            let ball = Ball::new(named.system.matrix(), radius)?;
            for v in 0..ball.len() {
                emit(&json!({
                    "element": named.word_names(ball.canonical_word(v)),
                    "length": ball.depth(v),
                    "descents": named.subset_names(ball.descents(v)),
                }));
            }
            if let Some(path) = dot {
                write_file(&path, &ball.to_dot(&named.generators))?;
            }
            Ok(true)
        }
        Command::LongestCoset { sys, subset, word } => {
            let named = load(&sys)?;
            let t = named.parse_subset(&subset)?;
            let w = named.system.reduce(&named.parse_word(&word)?)?;
            let r = named.system.longest_in_coset(t, &w)?;
            emit(&json!({
                "subset": named.subset_names(t),
                "base": named.element_names(&r.base),
                "x": named.element_names(&r.x),
                "v": named.element_names(&r.v),
                "length_x": r.x.length(),
                "length_v": r.v.length(),
            }));
            Ok(true)
        }
        Command::LemmaSuite { systems, configs, radius, no_timing } => {
            let mut named = Vec::new();
            for name in &systems {
                named.push(NamedSystem::preset(name)?);
            }
            for path in &configs {
                let path = path.to_string_lossy();
                named.push(SystemConfig::from_path(&path)?.build(&path)?);
            }
            let report = lemma_suite(&named, radius, !no_timing)?;
            for s in &report.systems {
                for (lemma, r) in &s.lemmas {
                    if !r.passed() {
                        eprintln!("{}: {lemma}: {} failures", s.name, r.failure_count);
                    }
                }
            }
            emit(&serde_json::to_value(&report).expect("report serializes"));
            Ok(report.passed)
        }
        Command::Trace { sys, subset, prefix, period, horizon, s0, t0, csv } => {
            let named = load(&sys)?;
            let system = &named.system;
            let t = named.parse_subset(&subset)?;
            let ray = system.make_ray(&named.parse_word(&prefix)?, &named.parse_word(&period)?, horizon)?;
            let report = match (s0, t0) {
                (Some(s0), Some(t0)) => {
                    let s0 = named.generator_index(&s0)?;
                    let t0 = named.generator_index(&t0)?;
                    system.theorem_trace(&ray, t, s0, t0, horizon)?
                }
                _ => system.stabilize(t, &ray, horizon)?,
            };
            if let Some(path) = csv {
                let mut text = String::from("i,len_w,len_x\n");
                for step in &report.steps {
                    text.push_str(&format!("{},{},{}\n", step.i, step.w.length(), step.len_x));
                }
                write_file(&path, &text)?;
            }
            let ok = report.memberships_pass();
            if !ok {
                eprintln!("membership check failed after stabilization");
            }
            emit(&trace_json(&named, &report));
            Ok(ok)
        }
    }
}

fn trace_json(named: &NamedSystem, report: &TraceReport) -> Value {
    let steps: Vec<Value> = report
        .steps
        .iter()
        .map(|st| {
            json!({
                "i": st.i,
                "w": named.element_names(&st.w),
                "x": named.element_names(&st.x),
                "len_x": st.len_x,
                "relation": serde_json::to_value(st.relation).expect("relation serializes"),
            })
        })
        .collect();
    json!({
        "subset": named.subset_names(report.subset),
        "horizon": report.horizon,
        "steps": steps,
        "stabilization": serde_json::to_value(report.stabilization).expect("stabilization serializes"),
        "x_limit": named.element_names(&report.x_limit),
        "memberships": serde_json::to_value(&report.memberships).expect("memberships serialize"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
