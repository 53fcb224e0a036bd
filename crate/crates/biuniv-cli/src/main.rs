//! `biuniv` — compute coefficient bounds for a family of bi-univalent
//! function classes, verify them against brute-force and sampling oracles,
//! and emit plot-ready sweep surfaces.
//!
//! Exit codes: 0 = success / all checks pass; 1 = a mathematical check
//! failed (the report carries the witness); 2 = configuration error.

use clap::Parser;

mod args;
mod bounds_cmd;
mod checks;
mod fmt;
mod sweep_cmd;
mod verify_cmd;

fn main() {
    // clap itself exits with code 2 on usage errors.
    let cli = args::Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}

fn run(cli: args::Cli) -> Result<i32, String> {
    init_thread_pool()?;
    match cli.command {
        args::Command::Bounds(a) => bounds_cmd::run(a).map(|()| 0),
        args::Command::Verify(a) => verify_cmd::run(a),
        args::Command::Sweep(a) => sweep_cmd::run(a).map(|()| 0),
    }
}

/// `BIUNIV_THREADS` caps the worker count; 0 or unset means automatic.
fn init_thread_pool() -> Result<(), String> {
    match std::env::var("BIUNIV_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(format!("BIUNIV_THREADS: {e}")),
        Ok(raw) => {
            let n: usize = raw.trim().parse().map_err(|_| {
                format!("BIUNIV_THREADS must be a nonnegative integer, got {raw:?}")
            })?;
            if n == 0 {
                return Ok(());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| format!("thread pool: {e}"))
        }
    }
}
