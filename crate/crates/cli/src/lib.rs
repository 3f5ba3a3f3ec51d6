//! Library backing the `lw` binary: file formats, verification suites, and
//! machine-readable reports.

pub mod formats;
pub mod report;
pub mod sample;
pub mod suites;

/// Default search budget, overridable through the `LW_BUDGET` environment
/// variable.
pub fn budget_from_env() -> u64 {
    std::env::var("LW_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(layered_wheel::Budget::DEFAULT_NODES)
}
