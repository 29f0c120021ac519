use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use clifford::metric::{Count, Signature};
use clifford::repl::{Outcome, Session};

/// Clifford algebra calculator.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// Run the lines of a script file instead of reading stdin.
    #[arg(long, value_name = "PATH")]
    script: Option<PathBuf>,

    /// Initial signature: `p,q`, `p` (q = 0) or `inf`.
    #[arg(long, value_name = "P,Q", value_parser = parse_signature)]
    signature: Option<Signature>,

    /// Separator printed between blade indices.
    #[arg(long, value_name = "SEP", allow_hyphen_values = true)]
    basissep: Option<String>,
}

fn parse_signature(s: &str) -> Result<Signature, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let count = |t: &str| t.parse::<Count>().map_err(|e| e.to_string());
    match parts.as_slice() {
        [p] => Ok(Signature::positive(count(p)?)),
        [p, q] => Ok(Signature::new(count(p)?, count(q)?)),
        _ => Err(format!("expected `p,q`, `p` or `inf`, got `{s}`")),
    }
}

fn interactive(session: &mut Session) -> ExitCode {
    let stdin = io::stdin();
    let prompt = stdin.is_terminal();
    let mut stdout = io::stdout();
    let mut lines = stdin.lock().lines();
    loop {
        if prompt {
            print!("> ");
            let _ = stdout.flush();
        }
        let Some(line) = lines.next() else {
            return ExitCode::SUCCESS;
        };
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        };
        match session.run_command(&line) {
            Ok(Outcome::Silent) => {}
            Ok(Outcome::Print(text)) => println!("{text}"),
            Ok(Outcome::Quit) => return ExitCode::SUCCESS,
            Err(e) => eprintln!("error: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = Session::new();
    if let Some(sig) = cli.signature {
        session.signature = sig;
    }
    if let Some(sep) = &cli.basissep {
        if let Err(e) = session.print_options.set_basis_sep(sep) {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let Some(path) = cli.script else {
        return interactive(&mut session);
    };
    let script = match std::fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    };
    match session.run_script(&script, io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::FAILURE
        }
    }
}
