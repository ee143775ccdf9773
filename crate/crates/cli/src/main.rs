use std::process::ExitCode;

use clap::Parser;

use tropvar_cli::{run, Cli, Format};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.output {
                Format::Json => println!("{}", out.json),
                Format::Pretty => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: check failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
