//! Fekete estimate of the eventual displacement, orbit separation and the
//! sandwich on the quotient by the C-action.

use catdyn::dynamics::{
    estimate_displacement, verify_free_proper, verify_quotient_bounds, AutoEquivalence, DEFAULT_N_MAX,
};
use catdyn::semisimple::StabilityCondition;

fn main() -> catdyn::Result<()> {
    let alpha = AutoEquivalence::new(vec![1, 0, 2], vec![1, 0, 2])?;
    let sigma = StabilityCondition::new(vec![1.0, 2.0, 0.5], vec![0.0, 0.3, -0.4])?;

    let est = estimate_displacement(&alpha, &sigma, DEFAULT_N_MAX)?;
    println!("exact d = {}, envelope {:.4}", est.exact, est.envelope);
    for n in [1, 2, 5, 10, 30, 60] {
        println!(
            "n = {n:>2}: d(sigma, alpha^n sigma)/n = {:.6}, running inf {:.6}",
            est.ratios[n - 1],
            est.running_infimum[n - 1]
        );
    }

    let fp = verify_free_proper(&alpha, &sigma, DEFAULT_N_MAX)?;
    println!("epsilon = {:.4}, min separation {:.4}, holds {}", fp.epsilon, fp.min_separation, fp.holds());

    let q = verify_quotient_bounds(&alpha, &sigma, DEFAULT_N_MAX)?;
    println!("quotient: {:.4} <= {:.4} <= {:.4} (slack {:.4})", q.lower, q.estimate, q.upper, q.slack);
    Ok(())
}
