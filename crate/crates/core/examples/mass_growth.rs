//! Mass growth of an auto-equivalence: exact piecewise-linear form against
//! the estimate from `α^n` applied to the simples.

use catdyn::dynamics::{mass_growth_estimate, mass_growth_exact, mass_growth_slopes, AutoEquivalence};
use catdyn::semisimple::StabilityCondition;

fn main() -> catdyn::Result<()> {
    let alpha = AutoEquivalence::new(vec![1, 2, 0, 3], vec![2, -1, 1, -3])?;
    let sigma = StabilityCondition::new(vec![1.0, 0.7, 1.8, 1.2], vec![0.1, -0.6, 0.9, 0.0])?;
    let (minus, plus) = mass_growth_slopes(&alpha)?;
    println!("slopes ({minus}, {plus})");
    println!("{:>5} {:>10} {:>10} {:>10}", "t", "exact", "n = 10", "n = 60");
    for t in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        println!(
            "{t:>5.1} {:>10.5} {:>10.5} {:>10.5}",
            mass_growth_exact(&alpha, t)?,
            mass_growth_estimate(&alpha, &sigma, t, 10)?,
            mass_growth_estimate(&alpha, &sigma, t, 60)?
        );
    }
    Ok(())
}
