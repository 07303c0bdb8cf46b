use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("CHOWKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    let outcome = chowkit_core::cli::run(std::env::args_os());
    let _ = std::io::stdout().lock().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
