use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use flatcert::{exit, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            });
        }
    };
    let out = run(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    if let Some(e) = &out.error {
        eprintln!("error: {e}");
    }
    match serde_json::to_string(&out.report) {
        Ok(s) => eprintln!("{s}"),
        Err(e) => eprintln!("error: cannot serialize run report: {e}"),
    }
    ExitCode::from(out.code)
}
