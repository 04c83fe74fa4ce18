use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use ccqed_cli::{Cli, CliError};

fn run(cli: &Cli) -> Result<(), CliError> {
    let table = cli.command.run()?;
    let format = cli.command.format();
    match &cli.output {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            table.write(format, &mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            table.write(format, &mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("ccqed: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
