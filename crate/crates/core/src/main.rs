use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use idealcore::cli::{exit_code, parse_jobspec, run};

/// Cores of ideals and an ideal calculator.
///
/// The job is read from FILE (or standard input), for example:
///
///     ring Q[U,V]
///     ideal I = U^3, U*V^3, V^4
///     core --method both
#[derive(Parser)]
#[command(version, verbatim_doc_comment)]
struct Args {
    /// Job file; `-` or nothing reads standard input.
    file: Option<PathBuf>,
    /// Job text given inline instead of a file.
    #[arg(short = 'e', long = "eval", conflicts_with = "file")]
    eval: Option<String>,
    /// Print the JSON report (same as `--json` in the job).
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let src = match (&args.eval, &args.file) {
        (Some(text), _) => text.clone(),
        (None, Some(p)) if p.as_os_str() != "-" => match std::fs::read_to_string(p) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", p.display());
                return ExitCode::from(1);
            }
        },
        _ => {
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                eprintln!("error: cannot read standard input: {e}");
                return ExitCode::from(1);
            }
            s
        }
    };
    let job = match parse_jobspec(&src) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    match run(&job) {
        Ok(report) => {
            if args.json || job.options.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
