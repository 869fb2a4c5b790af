//! Asymptotic slopes and the piecewise-linear region around `h_t`.

use catdyn::laurent::{LaurentMatrix, LaurentPoly};
use catdyn::perron::{asymptotic_slopes, check_pl_bounds, default_grid, entropy_at};

fn main() -> catdyn::Result<()> {
    // off-diagonal z: h_t = -t/2, while the degree range alone would suggest slope 0
    let swap = LaurentMatrix::from_rows(vec![
        vec![LaurentPoly::zero(), LaurentPoly::monomial(1, 1)],
        vec![LaurentPoly::one(), LaurentPoly::zero()],
    ])?;
    let s = asymptotic_slopes(&swap)?;
    println!("degree range {:?}, slopes ({}, {})", swap.degree_range()?, s.minus, s.plus);
    println!("h(10)/10 = {:.6}", entropy_at(&swap, 10.0)? / 10.0);

    let m = LaurentMatrix::from_rows(vec![
        vec![LaurentPoly::from_terms([(-1, 1), (2, 1)]), LaurentPoly::monomial(0, 2)],
        vec![LaurentPoly::monomial(3, 1), LaurentPoly::monomial(-2, 1)],
    ])?;
    let rep = check_pl_bounds(&m, &default_grid())?;
    println!(
        "h_0 = {:.6}, slopes ({}, {}), max violation {:.3e}",
        rep.h_zero, rep.slopes.minus, rep.slopes.plus, rep.max_violation
    );
    for s in rep.curve.samples.iter().step_by(25) {
        println!("t = {:>5.1}: {:>9.4} <= {:>9.4} <= {:>9.4}", s.t, s.lower_sharp(), s.value, s.upper_basic());
    }
    Ok(())
}
