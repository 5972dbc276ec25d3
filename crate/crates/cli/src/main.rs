use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = collin_cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = collin_cli::run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
