//! The metric on stability conditions, the C-action and the quotient metric.

use catdyn::semisimple::{
    bridgeland_distance, c_action, mass_with_parameter, quotient_distance_of, GradedObject, StabilityCondition,
};
use num_complex::Complex64;

fn main() -> catdyn::Result<()> {
    let sigma = StabilityCondition::new(vec![1.0, 2.0, 0.5], vec![0.0, 0.25, -0.5])?;
    let tau = StabilityCondition::new(vec![1.5, 1.0, 0.5], vec![0.5, 0.0, -0.25])?;

    let e = GradedObject::from_summands(3, [(0, 0, 2), (1, 1, 1), (2, -1, 3)]);
    println!("m_sigma(E) = {:.6}", mass_with_parameter(&sigma, &e, 0.0)?);
    println!("m_sigma,1(E) = {:.6}", mass_with_parameter(&sigma, &e, 1.0)?);

    let d = bridgeland_distance(&sigma, &tau)?;
    println!("d(sigma, tau) = {d:.6}");

    let w = Complex64::new(0.4, 0.2);
    let moved = c_action(&tau, w);
    println!("d(sigma, w.tau) = {:.6}", bridgeland_distance(&sigma, &moved)?);
    println!(
        "quotient distance {:.6} (unchanged by w: {:.6})",
        quotient_distance_of(&sigma, &tau)?,
        quotient_distance_of(&sigma, &moved)?
    );
    Ok(())
}
