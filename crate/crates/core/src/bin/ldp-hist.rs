//! `ldp-hist`: Monte Carlo simulator and calculators for locally private
//! histogram estimation.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ldp_hist::bounds::{self, BoundCurve};
use ldp_hist::experiment::{
    simulate_all, write_csv, BaseKind, ExperimentConfig, ProtocolSpec, SamplingMode,
};
use ldp_hist::shuffle;
use ldp_hist::{Error, Result};

#[derive(Parser)]
#[command(name = "ldp-hist", version)]
#[command(about = "Locally private histogram estimation: simulate, bounds, amplification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run repeated experiments and write one CSV row per repeat
    Simulate(SimulateArgs),
    /// Evaluate closed-form error curves over an epsilon grid
    Bounds(BoundsArgs),
    /// Shuffle-model amplification in both directions
    Amplify(AmplifyArgs),
    /// Protocol catalogue
    Protocols {
        #[command(subcommand)]
        action: ProtocolsAction,
    },
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON experiment config; flags given here override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Protocol name(s), comma separated, e.g. `rappor,pgr,split(krr)`
    #[arg(long)]
    protocol: Option<String>,
    /// Epsilon value(s), comma separated
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Distribution(s): point_mass(i), uniform, zipf(a), file(path)
    #[arg(long)]
    dist: Option<String>,
    /// `fixed` or `iid`
    #[arg(long)]
    sampling: Option<SamplingMode>,
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    parallelism: Option<usize>,
    /// Cap on the repetitions of split protocols
    #[arg(long)]
    split_cap: Option<u32>,
    #[arg(long)]
    include_padding: bool,
    #[arg(long)]
    shuffle_messages: bool,
    #[arg(long)]
    record_timing: bool,
    /// Output CSV; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Curve name(s), comma separated
    #[arg(long)]
    curve: String,
    /// `start:end:steps`, inclusive
    #[arg(long)]
    eps_grid: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: u64,
    /// Multiplier for curves without a known constant
    #[arg(long, default_value_t = 1.0)]
    constant: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AmplifyArgs {
    /// Target central epsilon
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    n: u64,
    /// Local epsilon to amplify; defaults to the one derived from `--eps`
    #[arg(long)]
    eps_local: Option<f64>,
}

#[derive(Subcommand)]
enum ProtocolsAction {
    /// Name, message space and message size for each protocol
    List {
        #[arg(long, default_value_t = 1000)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
    },
}

/// Splits on commas outside parentheses.
fn split_list(text: &str) -> Vec<String> {
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                items.push(current.trim().to_string());
                current.clear();
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    items.push(current.trim().to_string());
    items.into_iter().filter(|s| !s.is_empty()).collect()
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let base = match &args.config {
        Some(path) => Some(ExperimentConfig::from_json_file(path)?),
        None => None,
    };
    let protocols = match (&args.protocol, &base) {
        (Some(p), _) => split_list(p),
        (None, Some(b)) => vec![b.protocol.clone()],
        (None, None) => return Err(Error::Config("--protocol is required".into())),
    };
    let epsilons: Vec<f64> = match (&args.eps, &base) {
        (Some(e), _) => split_list(e)
            .iter()
            .map(|v| v.parse().map_err(|_| Error::Config(format!("bad epsilon {v:?}"))))
            .collect::<Result<_>>()?,
        (None, Some(b)) => vec![b.epsilon],
        (None, None) => return Err(Error::Config("--eps is required".into())),
    };
    let dists = match (&args.dist, &base) {
        (Some(d), _) => split_list(d),
        (None, Some(b)) => vec![b.distribution.clone()],
        (None, None) => vec!["point_mass(0)".to_string()],
    };
    let k = args
        .k
        .or(base.as_ref().map(|b| b.k))
        .ok_or_else(|| Error::Config("--k is required".into()))?;
    let n = args
        .n
        .or(base.as_ref().map(|b| b.n))
        .ok_or_else(|| Error::Config("--n is required".into()))?;

    let mut configs = Vec::new();
    for protocol in &protocols {
        for &eps in &epsilons {
            for dist in &dists {
                let mut c = base
                    .clone()
                    .unwrap_or_else(|| ExperimentConfig::new(protocol, eps, k, n));
                c.protocol = protocol.clone();
                c.epsilon = eps;
                c.k = k;
                c.n = n;
                c.distribution = dist.clone();
                if args.sampling.is_some() {
                    c.sampling = args.sampling;
                }
                if let Some(r) = args.repeats {
                    c.repeats = r;
                }
                if let Some(s) = args.seed {
                    c.master_seed = s;
                }
                if args.parallelism.is_some() {
                    c.parallelism = args.parallelism;
                }
                if args.split_cap.is_some() {
                    c.split_cap = args.split_cap;
                }
                if args.out.is_some() {
                    c.output = args.out.clone();
                }
                c.include_padding |= args.include_padding;
                c.shuffle_messages |= args.shuffle_messages;
                c.record_timing |= args.record_timing;
                configs.push(c);
            }
        }
    }
    // validate everything before the first run
    for c in &configs {
        c.validate_fields()?;
    }
    let records = simulate_all(&configs)?;
    let out = open_output(configs[0].output.as_ref())?;
    write_csv(&records, out)
}

fn bounds_cmd(args: BoundsArgs) -> Result<()> {
    let curves = split_list(&args.curve)
        .iter()
        .map(|name| BoundCurve::parse(name, args.constant))
        .collect::<Result<Vec<_>>>()?;
    let grid = bounds::parse_grid(&args.eps_grid)?;
    for curve in &curves {
        let outside = grid
            .iter()
            .filter(|&&e| !curve.in_regime(e, args.k, args.n))
            .count();
        if outside > 0 {
            eprintln!("note: {outside} grid point(s) lie outside the regime of {curve}");
        }
    }
    let out = open_output(args.out.as_ref())?;
    bounds::write_curves_csv(&curves, &grid, args.k, args.n, out)
}

fn amplify(args: AmplifyArgs) -> Result<()> {
    let limit = shuffle::max_local_epsilon(args.delta, args.n);
    let mut out = io::stdout().lock();
    writeln!(out, "n = {}, delta = {}", args.n, args.delta)?;
    writeln!(out, "max local epsilon for amplification: {limit}")?;
    let mut failed = None;
    match shuffle::local_epsilon_for(args.eps, args.delta, args.n) {
        Ok(el) => {
            writeln!(out, "target central epsilon {} -> local epsilon {el}", args.eps)?;
            match shuffle::amplified_epsilon(el, args.delta, args.n) {
                Ok(back) => writeln!(out, "  check: local {el} amplifies to {back}")?,
                Err(e) => writeln!(out, "  check failed: {e}")?,
            }
        }
        Err(e) => {
            writeln!(out, "target central epsilon {}: {e}", args.eps)?;
            failed = Some(e);
        }
    }
    if let Some(el) = args.eps_local {
        match shuffle::amplified_epsilon(el, args.delta, args.n) {
            Ok(central) => {
                writeln!(out, "local epsilon {el} -> central epsilon {central}")?;
                failed = None;
            }
            Err(e) => {
                writeln!(out, "local epsilon {el}: {e}")?;
                failed = Some(e);
            }
        }
    }
    if args.eps > 0.0 && args.eps <= 1.0 {
        let need = shuffle::shuffled_pgr_min_users(args.eps, args.delta);
        let verdict = if args.n >= need { "inside" } else { "outside" };
        writeln!(out, "shuffled PGR regime needs n >= {need} ({verdict})")?;
    }
    out.flush()?;
    failed.map_or(Ok(()), Err)
}

fn protocols_list(k: usize, eps: f64) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{:<14} {:>8} {:>14}  message space", "name", "inputs", "message bits")?;
    for base in BaseKind::ALL {
        for split in [false, true] {
            let spec = ProtocolSpec { base, split };
            match spec.build(k, eps, None) {
                Ok(p) => {
                    let d = p.descriptor();
                    writeln!(
                        out,
                        "{:<14} {:>8} {:>14}  {}",
                        spec.to_string(),
                        d.k,
                        d.message_bits,
                        d.message_space
                    )?;
                }
                Err(e) => writeln!(out, "{:<14} unavailable: {e}", spec.to_string())?,
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Amplify(a) => amplify(a),
        Command::Protocols {
            action: ProtocolsAction::List { k, eps },
        } => protocols_list(k, eps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
