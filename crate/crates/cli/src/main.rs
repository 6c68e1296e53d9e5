use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qsann::densesim::{apply, StateVector};
use qsann::markov::{AnnealingSchedule, ProblemSpec};
use qsann::mux_expander::expand_file;
use qsann::qsa_codegen::{emit_full, log_text, GeneratorConfig, PeParams};
use qsann::seo_ir::{parse_english, picture_width_qubits, write_english, write_picture};
use qsann::verify::{verify_config, Corruption};

/// Largest register `simulate` will hold in memory.
const SIMULATE_MAX_QUBITS: usize = 24;

#[derive(Parser)]
#[command(
    name = "qsann",
    version,
    about = "Quantum simulated annealing circuit generator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the English, Picture and log files of an annealing circuit.
    Generate(GenerateArgs),
    /// Replace every multiplexor of an English/Picture pair by ROTY and CNOT.
    Expand(ExpandArgs),
    /// Run an English file on a basis state and print the outcome distribution.
    Simulate(SimulateArgs),
    /// Check generated sub-circuits against their defining identities.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Number of state bits nb.
    #[arg(long, default_value_t = 1)]
    nb: usize,
    /// Probe bits per phase-estimation step a.
    #[arg(long, default_value_t = 1)]
    probe_bits: usize,
    /// Number of phase-estimation steps c.
    #[arg(long, default_value_t = 1)]
    pe_steps: usize,
    #[arg(long, default_value_t = 3.0)]
    up_bd_neig: f64,
    /// Number of inverse temperatures t_f + 1.
    #[arg(long, default_value_t = 2)]
    num_betas: usize,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    delta_beta: f64,
}

#[derive(Args)]
struct GenerateArgs {
    /// Output files are <prefix>_qsann_{log,eng,pic}.txt.
    #[arg(long, default_value = "test")]
    prefix: String,
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, default_value_t = 1)]
    grover_depth: usize,
    /// Prepend Hadamards preparing the uniform β = 0 distribution.
    #[arg(long)]
    prep: bool,
    /// Use e^{-iπ/3} in the source reflection of each step.
    #[arg(long)]
    conjugate_q: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Oracular,
}

#[derive(Args)]
struct ExpandArgs {
    /// Reads <in-prefix>_eng.txt and <in-prefix>_pic.txt.
    #[arg(long)]
    in_prefix: String,
    /// Writes <out-prefix>_{log,eng,pic}.txt.
    #[arg(long)]
    out_prefix: String,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Only meaningful for the oracular mode; ignored.
    #[arg(long)]
    bit_precision: Option<u32>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Reads <in-prefix>_eng.txt (and <in-prefix>_pic.txt if present).
    #[arg(long)]
    in_prefix: String,
    /// Index of the initial basis state; bit k is qubit k.
    #[arg(long, default_value_t = 0)]
    initial: usize,
    /// Number of most likely outcomes to print.
    #[arg(long, default_value_t = 16)]
    top: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Degrees added to the first q-embedding angle (negative control).
    #[arg(long, hide = true, allow_negative_numbers = true)]
    corrupt_angle: Option<f64>,
}

fn config(p: &ProblemArgs, d_f: usize) -> Result<GeneratorConfig> {
    if p.nb == 0 {
        bail!("Number of State Bits must be ≥ 1");
    }
    if p.nb > 10 {
        bail!("Number of State Bits must be ≤ 10");
    }
    if p.probe_bits == 0 {
        bail!("Number of Probe Bits must be ≥ 1");
    }
    if p.probe_bits > 62 {
        bail!("Number of Probe Bits must be ≤ 62");
    }
    if p.pe_steps == 0 {
        bail!("Number of Phase Estimation (PE) Steps must be ≥ 1");
    }
    let spec = ProblemSpec::qusann_default(p.nb, p.up_bd_neig)?;
    let schedule = AnnealingSchedule::new(p.delta_beta, p.num_betas)?;
    let pe = PeParams {
        a: p.probe_bits,
        c: p.pe_steps,
        d_f,
    };
    Ok(GeneratorConfig::new(spec, pe, schedule)?)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn with_suffix(prefix: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}{suffix}"))
}

fn generate(args: &GenerateArgs) -> Result<()> {
    if args.grover_depth == 0 {
        bail!("Grover Depth must be ≥ 1");
    }
    let mut cfg = config(&args.problem, args.grover_depth)?;
    cfg.file_prefix = args.prefix.clone();
    cfg.prep = args.prep;
    cfg.conjugate_q = args.conjugate_q;
    let generated = emit_full(&cfg)?;
    let log = log_text(&cfg, &generated);
    let base = format!("{}_qsann", args.prefix);
    write(&with_suffix(&base, "_log.txt"), &log)?;
    write(
        &with_suffix(&base, "_eng.txt"),
        &write_english(&generated.circuit),
    )?;
    write(
        &with_suffix(&base, "_pic.txt"),
        &write_picture(&generated.circuit),
    )?;
    print!("{log}");
    println!("Wrote {base}_log.txt, {base}_eng.txt, {base}_pic.txt");
    Ok(())
}

fn expand(args: &ExpandArgs) -> Result<()> {
    if args.mode == Mode::Oracular {
        bail!("unsupported mode: oracular approximation is not implemented, use --mode exact");
    }
    if args.bit_precision.is_some() {
        eprintln!("warning: --bit-precision only applies to the oracular mode and is ignored");
    }
    let eng = read(&with_suffix(&args.in_prefix, "_eng.txt"))?;
    let pic = read(&with_suffix(&args.in_prefix, "_pic.txt"))?;
    let out = expand_file(&eng, &pic)?;
    let log = out.log_text(&args.in_prefix, &args.out_prefix);
    write(&with_suffix(&args.out_prefix, "_log.txt"), &log)?;
    write(&with_suffix(&args.out_prefix, "_eng.txt"), &out.english)?;
    write(&with_suffix(&args.out_prefix, "_pic.txt"), &out.picture)?;
    print!("{log}");
    Ok(())
}

fn simulate(args: &SimulateArgs) -> Result<()> {
    let eng = read(&with_suffix(&args.in_prefix, "_eng.txt"))?;
    let pic_path = with_suffix(&args.in_prefix, "_pic.txt");
    let width = if pic_path.exists() {
        picture_width_qubits(&read(&pic_path)?)
    } else {
        0
    };
    let inferred = parse_english(&eng, None)?.num_qubits();
    let circuit = parse_english(&eng, Some(inferred.max(width)))?;
    let n = circuit.num_qubits();
    if n > SIMULATE_MAX_QUBITS {
        bail!("{n} qubits exceeds simulation cap of {SIMULATE_MAX_QUBITS}");
    }
    if args.initial >> n != 0 {
        bail!("initial state {} does not fit in {n} qubits", args.initial);
    }
    let out = apply(&circuit, &StateVector::basis(n, args.initial))?;
    let mut probs: Vec<(usize, f64)> = out
        .amplitudes()
        .iter()
        .map(|z| z.norm_sqr())
        .enumerate()
        .collect();
    probs.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    println!("Number of Qubits: {n}");
    println!(
        "Number of Elementary Operations: {}",
        circuit.count_elementary_ops()
    );
    println!("Norm: {:.12}", out.norm());
    for (index, p) in probs.into_iter().take(args.top).filter(|(_, p)| *p > 1e-15) {
        println!("{index:0width$b}  {p:.10}", width = n);
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let cfg = config(&args.problem, 1)?;
    let corruption = Corruption {
        qembed_angle_deg: args.corrupt_angle.unwrap_or(0.0),
    };
    let results = verify_config(&cfg, corruption).map_err(anyhow::Error::msg)?;
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut ok = true;
    for r in &results {
        println!(
            "{:<width$}  {}  error {:.2e}  tolerance {:.0e}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.error,
            r.tolerance
        );
        ok &= r.passed;
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => generate(a).map(|()| true),
        Command::Expand(a) => expand(a).map(|()| true),
        Command::Simulate(a) => simulate(a).map(|()| true),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("Message: {e:#}");
            ExitCode::from(1)
        }
    }
}
