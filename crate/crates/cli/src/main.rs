use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use salpeter_wigner::field::FieldSpec;
use salpeter_wigner::grid::{make_grid, WignerField};
use salpeter_wigner::packets::PacketKind;
use salpeter_wigner::params::PhysicsParams;
use salpeter_wigner::report::VerificationReport;
use salpeter_wigner::verify::{run_suite, Suite};

use salpeter_wigner_cli::config::{Command, DefArg, FormArg, Format, Range, RunConfig};
use salpeter_wigner_cli::figures;
use salpeter_wigner_cli::output::{write_csv, write_json, RunOutput};

const EXIT_INVALID: u8 = 1;
const EXIT_FLAGGED: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_CHECK_FAILED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "salpeter-wigner",
    version,
    about = "Wigner functions of free Salpeter wave packets"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a Wigner function on a phase-space grid.
    Eval(EvalArgs),
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Write the data behind one of the canned figures.
    Figures(FiguresArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "def", value_enum)]
    definition: DefArg,
    #[arg(long)]
    packet: PacketKind,
    /// Mass; defaults to 0 for massless packets and 1 otherwise.
    #[arg(long)]
    m: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Position axis as lo:hi:n.
    #[arg(long)]
    x: Range,
    /// Momentum axis as lo:hi:n.
    #[arg(long)]
    p: Range,
    /// Comma-separated times.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    t: Vec<f64>,
    #[arg(long, value_enum, default_value_t)]
    form: FormArg,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FiguresArgs {
    #[arg(long)]
    id: u8,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// An error tagged with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

trait Tag<T> {
    fn or_exit(self, code: u8) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> Tag<T> for Result<T, E> {
    fn or_exit(self, code: u8) -> Result<T, Failure> {
        self.map_err(|e| Failure { code, error: e.into() })
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("SW_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("SW_THREADS must be a positive integer, got `{raw}`"))?;
    anyhow::ensure!(n > 0, "SW_THREADS must be positive");
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn evaluate(config: &RunConfig) -> Result<Vec<WignerField>, Failure> {
    config.validate().or_exit(EXIT_INVALID)?;
    let (Some(definition), Some(packet), Some(params), Some(grid)) =
        (config.definition, config.packet, config.params, config.grid)
    else {
        return Err(Failure {
            code: EXIT_INVALID,
            error: anyhow!("incomplete field description"),
        });
    };
    let spec = FieldSpec::new(definition, packet, params, config.form).or_exit(EXIT_INVALID)?;
    config
        .times
        .iter()
        .map(|&t| spec.evaluate_field(&grid.at_time(t)).or_exit(EXIT_INVALID))
        .collect()
}

fn write_fields(config: &RunConfig, fields: Vec<WignerField>) -> Result<usize, Failure> {
    let flagged = fields.iter().map(WignerField::flagged_count).sum();
    let path = Path::new(&config.output_path);
    match config.format {
        Format::Csv => write_csv(path, &fields),
        Format::Json => write_json(
            path,
            &RunOutput {
                config: config.clone(),
                fields,
                report: VerificationReport::new(),
            },
        ),
    }
    .or_exit(EXIT_IO)?;
    Ok(flagged)
}

fn flagged_exit(flagged: usize) -> u8 {
    if flagged > 0 {
        eprintln!("warning: {flagged} grid points did not reach their tolerance (flag = 1)");
        EXIT_FLAGGED
    } else {
        0
    }
}

fn cmd_eval(args: EvalArgs) -> Result<u8, Failure> {
    let mass = args.m.unwrap_or(if args.packet.is_massless() { 0.0 } else { 1.0 });
    let params = PhysicsParams::new(mass, args.a).or_exit(EXIT_INVALID)?;
    let grid = make_grid(args.x.lo, args.x.hi, args.x.n, args.p.lo, args.p.hi, args.p.n, 0.0).or_exit(EXIT_INVALID)?;
    let config = RunConfig {
        command: Command::Eval,
        definition: Some(args.definition.into()),
        packet: Some(args.packet),
        params: Some(params),
        grid: Some(grid),
        times: args.t,
        form: args.form.into(),
        suite: None,
        note: None,
        output_path: args.out.display().to_string(),
        format: args.format,
    };
    let fields = evaluate(&config)?;
    let flagged = write_fields(&config, fields)?;
    Ok(flagged_exit(flagged))
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let report = run_suite(args.suite).or_exit(EXIT_INVALID)?;
    for e in &report.entries {
        let status = if e.passed { "ok" } else { "FAILED" };
        println!(
            "{status:>6}  {:<44} {:>12.4e}  (tol {:.1e}, {:?})",
            e.check_name, e.residual, e.tolerance, e.expect
        );
    }
    let passed = report.all_passed();
    let output = RunOutput {
        config: RunConfig {
            command: Command::Verify,
            definition: None,
            packet: None,
            params: None,
            grid: None,
            times: Vec::new(),
            form: Default::default(),
            suite: Some(args.suite),
            note: None,
            output_path: args.out.display().to_string(),
            format: Format::Json,
        },
        fields: Vec::new(),
        report,
    };
    write_json(&args.out, &output).or_exit(EXIT_IO)?;
    Ok(if passed { 0 } else { EXIT_CHECK_FAILED })
}

fn cmd_figures(args: FiguresArgs) -> Result<u8, Failure> {
    let fig = figures::figure(args.id).or_exit(EXIT_INVALID)?;
    let ext = match args.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let path = args.out.join(format!("figure{}.{ext}", fig.id));
    let config = RunConfig {
        command: Command::Figures,
        definition: Some(fig.definition),
        packet: Some(fig.packet),
        params: Some(fig.params),
        grid: Some(fig.grid),
        times: fig.times.clone(),
        form: fig.form,
        suite: None,
        note: Some(format!("{}; {}", fig.title, figures::note())),
        output_path: path.display().to_string(),
        format: args.format,
    };
    let fields = evaluate(&config)?;
    let flagged = write_fields(&config, fields)?;
    // The CSV carries no metadata, so the configuration goes beside it.
    let meta = args.out.join(format!("figure{}.meta.json", fig.id));
    let text = serde_json::to_string_pretty(&config).or_exit(EXIT_IO)?;
    std::fs::write(&meta, text + "\n")
        .with_context(|| format!("writing {}", meta.display()))
        .or_exit(EXIT_IO)?;
    println!("figure {}: {} -> {}", fig.id, fig.title, path.display());
    Ok(flagged_exit(flagged))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INVALID);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_INVALID);
    }
    let result = match cli.command {
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Figures(args) => cmd_figures(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
