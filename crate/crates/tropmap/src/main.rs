use std::io::{IsTerminal, Read, Write};
use std::process::ExitCode;

use tropmap::{run, ProcessEnv};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut stdin = String::new();
    let reads_stdin = !std::io::stdin().is_terminal();
    if reads_stdin && std::io::stdin().read_to_string(&mut stdin).is_err() {
        eprintln!("error: stdin is not valid UTF-8");
        return ExitCode::from(2);
    }
    let out = run(&args, &stdin, &ProcessEnv);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
