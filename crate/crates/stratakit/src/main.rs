use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stratakit::run::{exit_code, load, run_analyze, run_check, run_gfd, Input, InputError, EXIT_INPUT};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "stratakit", version, about = "Stratified algebras, tilting modules and good filtration dimensions")]
struct Cli {
    /// Maximal length of projective resolutions.
    #[arg(long, global = true, default_value_t = 20)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classification and homological dimensions.
    Analyze { file: String },
    /// Run every applicable check; with --borel also the subalgebra checks.
    Check {
        file: String,
        #[arg(long)]
        borel: Option<String>,
        /// File whose `embedding` block maps the subalgebra arrows.
        #[arg(long, requires = "borel")]
        embedding: Option<String>,
    },
    /// Dimensions of one module (a literal from the file or e.g. `simple:1`).
    Gfd {
        file: String,
        #[arg(long)]
        module: String,
    },
}

fn execute(cli: &Cli) -> Result<(stratakit::report::Report, i32), InputError> {
    let (report, status) = match &cli.command {
        Command::Analyze { file } => run_analyze(&load(file)?, cli.cap)?,
        Command::Check { file, borel, embedding } => {
            let main = load(file)?;
            let borel: Option<Input> = borel.as_deref().map(load).transpose()?;
            let emb: Option<Input> = embedding.as_deref().map(load).transpose()?;
            run_check(&main, borel.as_ref(), emb.as_ref(), cli.cap)?
        }
        Command::Gfd { file, module } => run_gfd(&load(file)?, module, cli.cap)?,
    };
    Ok((report, exit_code(status)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((report, code)) => {
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Machine => print!("{}", report.render_machine()),
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
