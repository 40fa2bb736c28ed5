//! `mcqhe`: CSV data for minimal-coupling qubit heat engines.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use mcqhe_core::{
    correlated_distribution, evolve_cycles, operating_region, optimal_multistroke,
    otto_optimal, reference_efficiencies, single_bath_wmax, stationary_state,
    uncorrelated_distribution, EngineSpec, JointLadderState,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_OUTSIDE_REGION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mcqhe", version, about = "Minimal-coupling qubit heat engine data as CSV")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Whether the engine runs with positive efficiency.
    Region(EngineArgs),
    /// Optimal three-stroke efficiency, work and cycle energies.
    Optimal(EngineArgs),
    /// Optimal efficiency and work for 1..=n-max hot/battery stroke pairs.
    Multistroke {
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// Optimal efficiency and work over a grid of bath temperatures.
    Sweep(SweepArgs),
    /// Maximal Otto work per gap as a function of Otto efficiency.
    Otto {
        /// Inverse-temperature ratio β_C/β_H.
        #[arg(long)]
        y: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximal work extractable from one bath by repeated stroke pairs.
    Extract {
        #[arg(long)]
        beta_omega: f64,
        /// Initial energy of the passive qubit in units of the gap.
        #[arg(long, default_value_t = 0.0)]
        energy: f64,
        /// Sweep the energy over [0, energy] in this many points instead.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cycle-by-cycle evolution of the explicit qubit-battery realization.
    Simulate {
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, default_value_t = 200)]
        cycles: usize,
        /// Initial excited population; defaults to the ground state.
        #[arg(long, default_value_t = 0.0)]
        initial_excited: f64,
    },
    /// Battery distributions for correlated and uncorrelated charging.
    Fluct {
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, default_value_t = 2)]
        cycles: usize,
    },
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EngineArgs {
    #[arg(long)]
    beta_h_omega: f64,
    #[arg(long)]
    beta_c_omega: f64,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1)]
    n_strokes: u32,
    #[command(flatten)]
    output: OutputArgs,
}

impl EngineArgs {
    fn spec(&self) -> anyhow::Result<EngineSpec> {
        EngineSpec::from_products(self.beta_h_omega, self.beta_c_omega, self.omega, self.n_strokes)
            .context("invalid engine parameters")
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    bh_min: f64,
    #[arg(long)]
    bh_max: f64,
    #[arg(long)]
    bh_steps: usize,
    #[arg(long)]
    bc_min: f64,
    #[arg(long)]
    bc_max: f64,
    #[arg(long)]
    bc_steps: usize,
    #[arg(long, default_value_t = 1)]
    n_strokes: u32,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Result of a subcommand: CSV text, destination and exit status.
struct Report {
    csv: String,
    out: PathBuf,
    status: i32,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let report = match execute(cli.command) {
        Ok(report) => report,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_USAGE;
        }
    };
    let written = if report.out.as_os_str() == "-" {
        stdout.write_all(report.csv.as_bytes()).context("failed to write to standard output")
    } else {
        std::fs::write(&report.out, &report.csv)
            .with_context(|| format!("failed to write {}", report.out.display()))
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e:#}");
        return EXIT_USAGE;
    }
    if report.status == EXIT_OUTSIDE_REGION {
        let _ = writeln!(stderr, "engine parameters lie outside the operating region");
    }
    report.status
}

fn execute(command: Command) -> anyhow::Result<Report> {
    match command {
        Command::Region(engine) => region(&engine),
        Command::Optimal(engine) => optimal(&engine),
        Command::Multistroke { engine, n_max } => multistroke(&engine, n_max),
        Command::Sweep(args) => sweep(&args),
        Command::Otto { y, steps, output } => otto(y, steps, output.out),
        Command::Extract {
            beta_omega,
            energy,
            steps,
            omega,
            output,
        } => extract(beta_omega, energy, steps, omega, output.out),
        Command::Simulate {
            engine,
            cycles,
            initial_excited,
        } => simulate(&engine, cycles, initial_excited),
        Command::Fluct { engine, cycles } => fluct(&engine, cycles),
    }
}

/// Nine significant digits; plain decimal for moderate magnitudes.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.8e}");
    let (_, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !(-5..9).contains(&exponent) {
        return sci;
    }
    let rounded: f64 = sci.parse().expect("round trip");
    let decimals = (8 - exponent).max(0) as usize;
    let plain = format!("{rounded:.decimals$}");
    trim_zeros(plain)
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

fn outside_region(csv: String, out: PathBuf) -> Report {
    Report {
        csv,
        out,
        status: EXIT_OUTSIDE_REGION,
    }
}

fn ok(csv: String, out: PathBuf) -> Report {
    Report {
        csv,
        out,
        status: EXIT_OK,
    }
}

fn region(engine: &EngineArgs) -> anyhow::Result<Report> {
    let spec = engine.spec()?;
    let inside = operating_region(&spec);
    let mut csv = String::from("quantity,value\n");
    writeln!(csv, "in_region,{inside}")?;
    writeln!(csv, "boundary_sum,{}", format_number(spec.boundary_sum()))?;
    writeln!(csv, "n_strokes,{}", spec.n_strokes())?;
    let out = engine.output.out.clone();
    Ok(if inside { ok(csv, out) } else { outside_region(csv, out) })
}

fn optimal(engine: &EngineArgs) -> anyhow::Result<Report> {
    let spec = engine.spec()?.with_strokes(1)?;
    let mut csv = String::from("eta_1,p1_over_omega,e0,e1,e2\n");
    let Ok(cycle) = optimal_multistroke(&spec) else {
        return Ok(outside_region(csv, engine.output.out.clone()));
    };
    let fields: Vec<String> = [cycle.efficiency, cycle.work / spec.omega()]
        .into_iter()
        .chain(cycle.energies.iter().copied())
        .map(format_number)
        .collect();
    writeln!(csv, "{}", fields.join(","))?;
    Ok(ok(csv, engine.output.out.clone()))
}

fn multistroke(engine: &EngineArgs, n_max: u32) -> anyhow::Result<Report> {
    if n_max == 0 {
        bail!("--n-max must be at least 1");
    }
    let base = engine.spec()?;
    let mut csv = String::from("n,in_region,eta_n,pn_over_omega\n");
    let mut any = false;
    for n in 1..=n_max {
        let spec = base.with_strokes(n)?;
        let cycle = optimal_multistroke(&spec).ok();
        any |= cycle.is_some();
        writeln!(
            csv,
            "{n},{},{},{}",
            cycle.is_some(),
            optional(cycle.as_ref().map(|c| c.efficiency)),
            optional(cycle.as_ref().map(|c| c.work / spec.omega())),
        )?;
    }
    let out = engine.output.out.clone();
    Ok(if any { ok(csv, out) } else { outside_region(csv, out) })
}

fn axis(name: &str, min: f64, max: f64, steps: usize) -> anyhow::Result<Vec<f64>> {
    if steps < 2 {
        bail!("{name} axis needs at least 2 steps, got {steps}");
    }
    if !(min > 0.0 && min.is_finite() && max.is_finite()) {
        bail!("{name} axis must lie in the positive reals");
    }
    if min >= max {
        bail!("{name} axis needs min < max, got [{min}, {max}]");
    }
    Ok((0..steps)
        .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
        .collect())
}

fn sweep(args: &SweepArgs) -> anyhow::Result<Report> {
    let bh_axis = axis("beta-h", args.bh_min, args.bh_max, args.bh_steps)?;
    let bc_axis = axis("beta-c", args.bc_min, args.bc_max, args.bc_steps)?;
    let mut csv =
        String::from("beta_h_omega,beta_c_omega,in_region,eta_1,p1_over_omega,eta_carnot\n");
    for &bh in &bh_axis {
        for &bc in &bc_axis {
            let spec = EngineSpec::from_products(bh, bc, args.omega, args.n_strokes)?;
            let cycle = optimal_multistroke(&spec).ok();
            let carnot = reference_efficiencies(&spec).ok().map(|r| r.carnot);
            writeln!(
                csv,
                "{},{},{},{},{},{}",
                format_number(bh),
                format_number(bc),
                operating_region(&spec),
                optional(cycle.as_ref().map(|c| c.efficiency)),
                optional(cycle.as_ref().map(|c| c.work / spec.omega())),
                optional(carnot),
            )?;
        }
    }
    Ok(ok(csv, args.output.out.clone()))
}

fn otto(y: f64, steps: usize, out: PathBuf) -> anyhow::Result<Report> {
    if steps < 2 {
        bail!("--steps must be at least 2");
    }
    if !(y >= 1.0 && y.is_finite()) {
        bail!("--y must be a finite ratio of at least 1, got {y}");
    }
    let carnot = 1.0 - 1.0 / y;
    let mut csv = String::from("y,eta_otto,work_per_gap,z_opt\n");
    for i in 0..steps {
        let eta = carnot * i as f64 / (steps - 1) as f64;
        let best = otto_optimal(y, eta)?;
        writeln!(
            csv,
            "{},{},{},{}",
            format_number(y),
            format_number(eta),
            format_number(best.work_per_gap),
            format_number(best.z)
        )?;
    }
    Ok(ok(csv, out))
}

fn extract(
    beta_omega: f64,
    energy: f64,
    steps: Option<usize>,
    omega: f64,
    out: PathBuf,
) -> anyhow::Result<Report> {
    if !(omega > 0.0 && omega.is_finite()) {
        bail!("--omega must be positive, got {omega}");
    }
    let energies: Vec<f64> = match steps {
        None => vec![energy],
        Some(s) if s >= 2 => (0..s).map(|i| energy * i as f64 / (s - 1) as f64).collect(),
        Some(s) => bail!("--steps must be at least 2, got {s}"),
    };
    let mut csv = String::from("energy_over_omega,beta_omega,strokes,w_max\n");
    for e in energies {
        let w = single_bath_wmax(e * omega, beta_omega / omega, omega)?;
        writeln!(
            csv,
            "{},{},{},{}",
            format_number(e),
            format_number(beta_omega),
            w.strokes,
            format_number(w.max_work)
        )?;
    }
    Ok(ok(csv, out))
}

fn simulate(engine: &EngineArgs, cycles: usize, initial_excited: f64) -> anyhow::Result<Report> {
    let spec = engine.spec()?;
    let out = engine.output.out.clone();
    let mut csv = String::from("cycle,excited_population,battery_mean,work\n");
    if !operating_region(&spec) {
        return Ok(outside_region(csv, out));
    }
    let half_width = cycles * spec.n_strokes() as usize;
    let mut state = JointLadderState::product(half_width, initial_excited)?;
    writeln!(csv, "0,{},0,", format_number(state.excited_population()))?;
    for cycle in 1..=cycles {
        let step = evolve_cycles(&state, &spec, 1)?;
        state = step.final_state;
        writeln!(
            csv,
            "{cycle},{},{},{}",
            format_number(state.excited_population()),
            format_number(spec.omega() * state.battery_mean_offset()),
            format_number(step.per_cycle_work[0])
        )?;
    }
    Ok(ok(csv, out))
}

fn fluct(engine: &EngineArgs, cycles: usize) -> anyhow::Result<Report> {
    if cycles == 0 {
        bail!("--cycles must be at least 1");
    }
    let spec = engine.spec()?;
    if spec.n_strokes() != 1 {
        bail!("fluct compares one stroke pair per cycle; drop --n-strokes");
    }
    let out = engine.output.out.clone();
    let mut csv = String::from("offset,p_correlated,p_uncorrelated\n");
    if !operating_region(&spec) {
        return Ok(outside_region(csv, out));
    }
    let p = stationary_state(&spec).excited_population;
    let correlated = correlated_distribution(cycles, p, &spec)?.oracle;
    let uncorrelated = uncorrelated_distribution(cycles, &spec)?.oracle;
    let reach = cycles as i64;
    for k in -reach..=reach {
        writeln!(
            csv,
            "{k},{},{}",
            format_number(correlated.prob(k)),
            format_number(uncorrelated.prob(k))
        )?;
    }
    Ok(ok(csv, out))
}
