use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multiphase::random::Bounds;
use multiphase::ChartRef;
use multiphase_cli::commands::{self, Output, ShowObject};
use multiphase_cli::doc::{read_chart, read_field, read_generators, Envelope};
use multiphase_cli::report::run_suite;
use multiphase_cli::suites::{Ctx, Mutation, SuiteName};
use multiphase_cli::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "multiphase", version, about = "Classify hamiltonian vector fields on multiphase charts")]
struct Cli {
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
    /// Decide whether a vector field is hamiltonian.
    Classify {
        #[arg(long)]
        chart: PathBuf,
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the hamiltonian field of a generators document.
    Construct {
        #[arg(long)]
        chart: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recover the field of a hamiltonian form or section.
    Solve {
        #[arg(long)]
        chart: PathBuf,
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a randomized property suite and print a trial report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: SuiteName,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = Bounds::default().max_degree)]
        max_degree: u32,
        #[arg(long, default_value_t = Bounds::default().max_terms)]
        max_terms: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Corrupt a formula to check that the harness notices.
        #[arg(long, hide = true)]
        mutate: Option<Mutation>,
    },
    /// Print a canonical form of a chart.
    Show {
        #[arg(long)]
        chart: PathBuf,
        object: ShowObject,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn read_envelope(path: &Path) -> CliResult<Envelope> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Envelope::parse(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_chart(path: &Path) -> CliResult<ChartRef> {
    read_chart(&read_envelope(path)?)
}

fn emit(output: &Output, out: Option<&Path>, format: Format) -> CliResult<()> {
    if let Some(path) = out {
        std::fs::write(path, output.document.to_json())
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    match format {
        Format::Text => print!("{}", output.text),
        Format::Json => println!("{}", output.document.to_json()),
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Classify { chart, field, out, format } => {
            let chart = load_chart(&chart)?;
            let field = read_field(&chart, &read_envelope(&field)?)?;
            let (_, output) = commands::classify(&chart, &field)?;
            emit(&output, out.as_deref(), format)?;
        }
        Command::Construct { chart, data, out, format } => {
            let chart = load_chart(&chart)?;
            let g = read_generators(&chart, &read_envelope(&data)?)?;
            let (_, output) = commands::construct(&chart, &g)?;
            emit(&output, out.as_deref(), format)?;
        }
        Command::Solve { chart, form, out, format } => {
            let chart = load_chart(&chart)?;
            let (_, output) = commands::solve(&chart, &read_envelope(&form)?)?;
            emit(&output, out.as_deref(), format)?;
        }
        Command::Verify { suite, trials, seed, max_degree, max_terms, format, mutate } => {
            let ctx = Ctx { bounds: Bounds { max_degree, max_terms }, mutation: mutate, ..Ctx::default() };
            let report = run_suite(suite, trials, seed, &ctx);
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            if !report.ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Show { chart, object, out, format } => {
            let chart = load_chart(&chart)?;
            let output = commands::show(&chart, object)?;
            emit(&output, out.as_deref(), format)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("multiphase: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
