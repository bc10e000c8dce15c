//! Library half of the `steerlab` binary: sweep construction, preset
//! tables, verification checks, and config-file handling. The binary is a
//! thin argument-parsing shell over these functions, so integration tests
//! drive the same code paths as the executable.

pub mod config;
pub mod error;
pub mod sweep;
pub mod verify;

pub use error::{CliError, CliResult};

/// Cap the global thread pool from `STEERLAB_THREADS` (default: all cores).
///
/// Must run before any parallel work; later calls are ignored once the pool
/// exists.
pub fn init_threads() {
    if let Ok(raw) = std::env::var("STEERLAB_THREADS") {
        if let Ok(threads) = raw.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}
