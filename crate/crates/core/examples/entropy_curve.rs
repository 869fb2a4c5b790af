//! Entropy `h_t = log ρ(M(e^{-t}))` of a Laurent matrix, written as CSV.

use catdyn::laurent::{LaurentMatrix, LaurentPoly};
use catdyn::perron::{entropy_at, entropy_curve, uniform_grid};

fn main() -> catdyn::Result<()> {
    // [[z + z^{-1}]]: h_t = log(e^{-t} + e^t)
    let m = LaurentMatrix::from_rows(vec![vec![LaurentPoly::from_terms([(1, 1), (-1, 1)])]])?;
    for t in [-2.0, 0.0, 2.0] {
        let h = entropy_at(&m, t)?;
        println!("h({t}) = {h:.12}  closed form {:.12}", ((-t).exp() + t.exp()).ln());
    }

    let a = LaurentMatrix::from_rows(vec![
        vec![LaurentPoly::monomial(0, 1), LaurentPoly::monomial(-2, 1)],
        vec![LaurentPoly::monomial(1, 1), LaurentPoly::from_terms([(0, 1), (1, 2)])],
    ])?;
    print!("{}", entropy_curve(&a, &uniform_grid(-3.0, 3.0, 13)?)?.to_csv());
    Ok(())
}
