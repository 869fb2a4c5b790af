//! Seeded verification sweeps, as run by `catdyn verify`.

use catdyn::cli::{run_sweep, SUITES};

fn main() -> catdyn::Result<()> {
    for suite in SUITES {
        let s = run_sweep(suite, 0, 50)?;
        println!(
            "{:<16} passed {:>3}/{} (not applicable {}), max violation {:.3e}",
            s.suite, s.passed, s.count, s.not_applicable, s.max_violation
        );
    }
    Ok(())
}
