//! Command-line front end.

use std::env;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use relcoh_core::{
    acceleration_parameter, ChannelKind, GridSpec, NoisePolicy, PhysicalAcceleration, Subsystem,
};

use crate::config::Config;
use crate::error::{CliError, Result, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use crate::figures::write_figures;
use crate::suite::{run_suite_parallel, write_report};
use crate::sweep::{cartesian, channel_name, evaluate, fmt_float, run_sweep, tied, write_csv, SweepSpec};
use crate::values::{parse_list, parse_number};

/// Directory used for output files when no explicit path is given.
pub const OUT_DIR_ENV: &str = "RELCOH_OUT_DIR";

pub const DEFAULT_SWEEP_FILE: &str = "sweep.csv";
pub const DEFAULT_REPORT_FILE: &str = "verify_report.json";
pub const DEFAULT_FIGURES_DIR: &str = "figures";

const AFTER_HELP: &str = "\
Numeric lists accept comma-separated values or linspace:a:b:n; values may use pi, e.g. 3*pi/16.
Angles are in radians. Output paths default to $RELCOH_OUT_DIR (or the working directory).
A JSON object passed with --config supplies any long flag by name; flags given on the command line win.
Exit codes: 0 success, 1 verification failure, 2 usage, 3 I/O.";

#[derive(Debug, Parser)]
#[command(name = "relcoh", version, about = "Tripartite coherence under Unruh dilation and local noise", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one scenario, simulated and closed form
    Eval(EvalArgs),
    /// Write a CSV sweep with one sim row and one paper row per grid point
    Sweep(SweepArgs),
    /// Compare simulation with the closed forms over a grid and write a JSON report
    Verify(VerifyArgs),
    /// Write the six canonical figure datasets as CSV
    Figures(FiguresArgs),
}

/// Acceleration inputs. Give `--r` (tied), or `--rb`/`--rc`, or `--accel`.
#[derive(Debug, Args)]
pub struct AccelArgs {
    /// r_b = r_c in [0, pi/4] [default: 0 for eval, linspace:0:pi/4:51 for sweep]
    #[arg(long)]
    pub r: Option<String>,
    /// Bob's r_b [default: 0]
    #[arg(long)]
    pub rb: Option<String>,
    /// Charlie's r_c [default: 0]
    #[arg(long)]
    pub rc: Option<String>,
    /// Proper accelerations a, resolved to a tied r with --omega and --light-speed
    #[arg(long)]
    pub accel: Option<String>,
    /// Mode frequency used with --accel [default: 1]
    #[arg(long)]
    pub omega: Option<String>,
    /// Speed of light used with --accel [default: 1]
    #[arg(long)]
    pub light_speed: Option<String>,
}

/// Noise inputs. Give `--p` (tied) or `--pb`/`--pc`.
#[derive(Debug, Args)]
pub struct NoiseArgs {
    /// none, damping, phase-flip or bit-flip [default: none]
    #[arg(long)]
    pub channel: Option<String>,
    /// reduced-qubit or rindler-mode [default: reduced-qubit]
    #[arg(long)]
    pub policy: Option<String>,
    /// P_b = P_c in [0, 1] [default: 0]
    #[arg(long)]
    pub p: Option<String>,
    /// Bob's P_b [default: 0]
    #[arg(long)]
    pub pb: Option<String>,
    /// Charlie's P_c [default: 0]
    #[arg(long)]
    pub pc: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// JSON config file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// ab1c1, ab2c1, ab1c2, ab2c2, ab1b2 or ac1c2 [default: ab1c1]
    #[arg(long)]
    pub subsystem: Option<String>,
    /// GHZ weight alpha in [0, 1] [default: 1]
    #[arg(long)]
    pub alpha: Option<String>,
    #[command(flatten)]
    pub accel: AccelArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    /// Convex-roof seed [default: 0]
    #[arg(long)]
    pub seed: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON config file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Subsystem list [default: ab1c1,ab1c2,ab2c1,ab2c2]
    #[arg(long)]
    pub subsystems: Option<String>,
    /// Alpha list [default: 0.7071067811865476]
    #[arg(long)]
    pub alpha: Option<String>,
    #[command(flatten)]
    pub accel: AccelArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    /// Convex-roof seed [default: 0]
    #[arg(long)]
    pub seed: Option<String>,
    /// Output CSV [default: $RELCOH_OUT_DIR/sweep.csv]
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// JSON config file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Subsystem list [default: all six]
    #[arg(long)]
    pub subsystems: Option<String>,
    /// Channel list, `none` for noiseless [default: none,damping,phase-flip,bit-flip]
    #[arg(long)]
    pub channels: Option<String>,
    /// reduced-qubit or rindler-mode [default: reduced-qubit]
    #[arg(long)]
    pub policy: Option<String>,
    /// Alpha list [default: linspace:0:1:5]
    #[arg(long)]
    pub alpha: Option<String>,
    /// r_b list [default: linspace:0:pi/4:5]
    #[arg(long)]
    pub rb: Option<String>,
    /// r_c list [default: linspace:0:pi/4:5]
    #[arg(long)]
    pub rc: Option<String>,
    /// P_b list for noisy channels [default: 0.3]
    #[arg(long)]
    pub pb: Option<String>,
    /// P_c list for noisy channels [default: 0.6]
    #[arg(long)]
    pub pc: Option<String>,
    /// Convex-roof seed [default: 0]
    #[arg(long)]
    pub seed: Option<String>,
    /// Exit 1 on known discrepancies as well
    #[arg(long)]
    pub fail_on_known: bool,
    /// Output JSON [default: $RELCOH_OUT_DIR/verify_report.json]
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// JSON config file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory [default: $RELCOH_OUT_DIR/figures]
    #[arg(long)]
    pub out_dir: Option<String>,
}

fn allowed_keys<A: Args>() -> Vec<String> {
    A::augment_args(clap::Command::new("keys"))
        .get_arguments()
        .filter_map(|a| a.get_long().map(str::to_owned))
        .collect()
}

fn load_config<A: Args>(path: Option<&Path>) -> Result<Config> {
    let keys = allowed_keys::<A>();
    let keys: Vec<&str> = keys.iter().map(String::as_str).collect();
    Config::load(path, &keys)
}

fn usage_err(flag: &str) -> impl Fn(String) -> CliError + '_ {
    move |e| CliError::usage(format!("--{flag}: {e}"))
}

fn list(value: Option<String>, default: &str, flag: &str) -> Result<Vec<f64>> {
    parse_list(value.as_deref().unwrap_or(default)).map_err(usage_err(flag))
}

fn number(value: Option<String>, default: &str, flag: &str) -> Result<f64> {
    parse_number(value.as_deref().unwrap_or(default)).map_err(usage_err(flag))
}

fn names<T: std::str::FromStr<Err = relcoh_core::Error>>(value: &str, flag: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|s| s.trim().parse::<T>().map_err(|e| CliError::usage(format!("--{flag}: {e}"))))
        .collect()
}

fn channel(value: &str) -> Result<Option<ChannelKind>> {
    match value.trim() {
        "none" => Ok(None),
        other => other.parse().map(Some).map_err(|e| CliError::usage(format!("--channel: {e}"))),
    }
}

fn policy(value: Option<String>) -> Result<NoisePolicy> {
    match value {
        None => Ok(NoisePolicy::default()),
        Some(v) => v.parse().map_err(|e| CliError::usage(format!("--policy: {e}"))),
    }
}

fn seed(value: Option<String>) -> Result<u64> {
    value.map_or(Ok(0), |v| v.trim().parse().map_err(|_| CliError::usage(format!("--seed: invalid seed `{v}`"))))
}

fn resolve_r(cfg: &Config, a: &AccelArgs, default_r: &str) -> Result<Vec<(f64, f64)>> {
    let r = cfg.pick(&a.r, "r");
    let rb = cfg.pick(&a.rb, "rb");
    let rc = cfg.pick(&a.rc, "rc");
    let accel = cfg.pick(&a.accel, "accel");
    let omega = cfg.pick(&a.omega, "omega");
    let light = cfg.pick(&a.light_speed, "light-speed");

    if let Some(accel) = accel {
        if r.is_some() || rb.is_some() || rc.is_some() {
            return Err(CliError::usage("--accel cannot be combined with --r, --rb or --rc"));
        }
        let omega = number(omega, "1", "omega")?;
        let c = number(light, "1", "light-speed")?;
        let rs = list(Some(accel), "", "accel")?
            .into_iter()
            .map(|a| Ok(acceleration_parameter(PhysicalAcceleration::new(omega, a, c)?)?.value()))
            .collect::<Result<Vec<_>>>()?;
        return Ok(tied(&rs));
    }
    if omega.is_some() || light.is_some() {
        return Err(CliError::usage("--omega and --light-speed need --accel"));
    }
    match (r, rb, rc) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            Err(CliError::usage("--r cannot be combined with --rb or --rc"))
        }
        (r, None, None) => Ok(tied(&list(r, default_r, "r")?)),
        (None, rb, rc) => Ok(cartesian(&list(rb, "0", "rb")?, &list(rc, "0", "rc")?)),
    }
}

fn resolve_p(cfg: &Config, n: &NoiseArgs) -> Result<Vec<(f64, f64)>> {
    let p = cfg.pick(&n.p, "p");
    let pb = cfg.pick(&n.pb, "pb");
    let pc = cfg.pick(&n.pc, "pc");
    match (p, pb, pc) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            Err(CliError::usage("--p cannot be combined with --pb or --pc"))
        }
        (p, None, None) => Ok(tied(&list(p, "0", "p")?)),
        (None, pb, pc) => Ok(cartesian(&list(pb, "0", "pb")?, &list(pc, "0", "pc")?)),
    }
}

fn default_path(name: &str) -> PathBuf {
    env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".")).join(name)
}

fn sweep_spec_from(cfg: &Config, args: &SweepArgs) -> Result<SweepSpec> {
    let subsystems = cfg.pick(&args.subsystems, "subsystems").unwrap_or_else(|| "ab1c1,ab1c2,ab2c1,ab2c2".into());
    Ok(SweepSpec {
        subsystems: names(&subsystems, "subsystems")?,
        channel: channel(&cfg.pick(&args.noise.channel, "channel").unwrap_or_else(|| "none".into()))?,
        policy: policy(cfg.pick(&args.noise.policy, "policy"))?,
        alphas: list(cfg.pick(&args.alpha, "alpha"), "0.7071067811865476", "alpha")?,
        r_pairs: resolve_r(cfg, &args.accel, "linspace:0:pi/4:51")?,
        p_pairs: resolve_p(cfg, &args.noise)?,
        seed: seed(cfg.pick(&args.seed, "seed"))?,
    })
}

fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<u8> {
    let cfg = load_config::<EvalArgs>(args.config.as_deref())?;
    let subsystem = cfg.pick(&args.subsystem, "subsystem").unwrap_or_else(|| "ab1c1".into());
    let spec = SweepSpec {
        subsystems: vec![subsystem.trim().parse::<Subsystem>().map_err(|e| CliError::usage(format!("--subsystem: {e}")))?],
        channel: channel(&cfg.pick(&args.noise.channel, "channel").unwrap_or_else(|| "none".into()))?,
        policy: policy(cfg.pick(&args.noise.policy, "policy"))?,
        alphas: vec![number(cfg.pick(&args.alpha, "alpha"), "1", "alpha")?],
        r_pairs: resolve_r(&cfg, &args.accel, "0")?,
        p_pairs: resolve_p(&cfg, &args.noise)?,
        seed: seed(cfg.pick(&args.seed, "seed"))?,
    };
    if spec.r_pairs.len() != 1 || spec.p_pairs.len() != 1 {
        return Err(CliError::usage("eval takes a single value per parameter; use sweep for lists"));
    }
    let s = spec.scenarios()?[0];
    let p = evaluate(&s, spec.seed, 0)?;
    let lines = [
        ("subsystem", s.subsystem.name().to_owned()),
        ("channel", channel_name(s.channel).to_owned()),
        ("policy", s.policy.name().to_owned()),
        ("alpha", fmt_float(s.alpha)),
        ("r_b", fmt_float(s.rb.value())),
        ("r_c", fmt_float(s.rc.value())),
        ("p_b", fmt_float(s.pb)),
        ("p_c", fmt_float(s.pc)),
        ("concurrence_sim", fmt_float(p.sim.upper)),
        ("concurrence_sim_lower", fmt_float(p.sim.lower)),
        ("concurrence_paper", fmt_float(p.paper)),
        ("method", p.sim.method.name().to_owned()),
        ("l1_sim", fmt_float(p.sim_l1)),
        ("l1_paper", fmt_float(p.paper_l1)),
        ("x_shaped", p.sim_x_shaped.to_string()),
    ];
    for (k, v) in lines {
        writeln!(out, "{k} = {v}").map_err(|e| CliError::io("<stdout>", e))?;
    }
    Ok(EXIT_OK)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<u8> {
    let cfg = load_config::<SweepArgs>(args.config.as_deref())?;
    let spec = sweep_spec_from(&cfg, args)?;
    let path = cfg.pick(&args.out, "out").map_or_else(|| default_path(DEFAULT_SWEEP_FILE), PathBuf::from);
    let rows = run_sweep(&spec)?;
    write_csv(&rows, create(&path)?).map_err(|source| CliError::Csv { path: path.clone(), source })?;
    writeln!(out, "wrote {} rows to {}", rows.len(), path.display()).map_err(|e| CliError::io("<stdout>", e))?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let cfg = load_config::<VerifyArgs>(args.config.as_deref())?;
    let defaults = GridSpec::default();
    let subsystems = match cfg.pick(&args.subsystems, "subsystems") {
        Some(v) => names(&v, "subsystems")?,
        None => defaults.subsystems,
    };
    let channels = match cfg.pick(&args.channels, "channels") {
        Some(v) => v.split(',').map(channel).collect::<Result<Vec<_>>>()?,
        None => defaults.channels,
    };
    let grid = GridSpec {
        subsystems,
        channels,
        policy: policy(cfg.pick(&args.policy, "policy"))?,
        alphas: list(cfg.pick(&args.alpha, "alpha"), "linspace:0:1:5", "alpha")?,
        rbs: list(cfg.pick(&args.rb, "rb"), "linspace:0:pi/4:5", "rb")?,
        rcs: list(cfg.pick(&args.rc, "rc"), "linspace:0:pi/4:5", "rc")?,
        pbs: list(cfg.pick(&args.pb, "pb"), "0.3", "pb")?,
        pcs: list(cfg.pick(&args.pc, "pc"), "0.6", "pc")?,
    };
    let seed = seed(cfg.pick(&args.seed, "seed"))?;
    let fail_on_known = cfg.flag(args.fail_on_known, "fail-on-known")?;
    let path = cfg.pick(&args.out, "out").map_or_else(|| default_path(DEFAULT_REPORT_FILE), PathBuf::from);

    let report = run_suite_parallel(&grid, seed)?;
    write_report(&report, create(&path)?).map_err(|e| CliError::io(&path, e))?;
    let s = report.summary;
    let passed = report.passed(fail_on_known);
    writeln!(
        out,
        "records={} match={} known_discrepancy={} unexpected={} -> {} ({})",
        report.records.len(),
        s.matched,
        s.known_discrepancy,
        s.unexpected,
        if passed { "pass" } else { "fail" },
        path.display()
    )
    .map_err(|e| CliError::io("<stdout>", e))?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_figures(args: &FiguresArgs, out: &mut dyn Write) -> Result<u8> {
    let cfg = load_config::<FiguresArgs>(args.config.as_deref())?;
    let dir = cfg.pick(&args.out_dir, "out-dir").map_or_else(|| default_path(DEFAULT_FIGURES_DIR), PathBuf::from);
    for path in write_figures(&dir)? {
        writeln!(out, "{}", path.display()).map_err(|e| CliError::io("<stdout>", e))?;
    }
    Ok(EXIT_OK)
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Figures(a) => cmd_figures(a, out),
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    match dispatch(&cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Usage(_) | CliError::Core(_)) {
                eprintln!("run `relcoh --help` for usage");
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("relcoh").chain(args.iter().copied())).unwrap()
    }

    fn eval_output(args: &[&str]) -> String {
        let mut buf = Vec::new();
        dispatch(&parse(args), &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn eval_prints_both_readings() {
        let text = eval_output(&["eval", "--subsystem", "ab2c2", "--alpha", "0.5", "--r", "pi/4"]);
        let field = |key: &str| -> f64 {
            let prefix = format!("{key} = ");
            text.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap().parse().unwrap()
        };
        assert!((field("concurrence_sim") - 0.25).abs() < 1e-12, "{text}");
        assert!((field("concurrence_paper") - 0.25).abs() < 1e-12, "{text}");
        assert!(text.contains("x_shaped = true"));
    }

    #[test]
    fn conflicting_acceleration_flags() {
        let mut sink = Vec::new();
        let cli = parse(&["eval", "--r", "0.1", "--rb", "0.2"]);
        assert!(matches!(dispatch(&cli, &mut sink), Err(CliError::Usage(_))));
        let cli = parse(&["eval", "--omega", "1"]);
        assert!(matches!(dispatch(&cli, &mut sink), Err(CliError::Usage(_))));
        let cli = parse(&["eval", "--r", "0.1,0.2"]);
        assert!(matches!(dispatch(&cli, &mut sink), Err(CliError::Usage(_))));
    }

    #[test]
    fn accel_resolves_to_r() {
        let a = AccelArgs {
            r: None,
            rb: None,
            rc: None,
            accel: Some("pi".into()),
            omega: Some("0.5".into()),
            light_speed: None,
        };
        let pairs = resolve_r(&Config::default(), &a, "0").unwrap();
        let expected = (1.0 / ((-1.0f64).exp() + 1.0).sqrt()).acos();
        assert!((pairs[0].0 - expected).abs() < 1e-15);
        assert_eq!(pairs[0].0, pairs[0].1);
    }

    #[test]
    fn config_keys_follow_flags() {
        let keys = allowed_keys::<SweepArgs>();
        for k in ["subsystems", "alpha", "r", "light-speed", "channel", "p", "out", "seed"] {
            assert!(keys.iter().any(|x| x == k), "{k}");
        }
        assert!(allowed_keys::<VerifyArgs>().iter().any(|x| x == "fail-on-known"));
    }
}
