//! Files, reports and the command-line front end for `horoflow-core`.
//!
//! * [`spec_io`]: JSON group-spec files;
//! * [`output`]: JSON and CSV writers with 17 significant digits;
//! * [`verify`]: seeded identity checks;
//! * [`cli`]: the `horoflow` command.
//!
//! The environment variable `HOROFLOW_THREADS` caps the worker threads used
//! by the verify suite.

pub mod cli;
pub mod output;
pub mod spec_io;
pub mod verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Runs `f` on a pool sized by `HOROFLOW_THREADS` when it is set to a
/// positive integer, on the global pool otherwise.
pub fn with_thread_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("HOROFLOW_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0);
    match threads.map(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build()) {
        Some(Ok(pool)) => pool.install(f),
        _ => f(),
    }
}
