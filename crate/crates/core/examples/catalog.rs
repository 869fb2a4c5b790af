//! Closed-form mass growth of known auto-equivalences, checked against the
//! general bounds.

use catdyn::catalog::{closed_form_displacement, consistency_with_bounds, ClosedForm};
use catdyn::perron::default_grid;

fn main() -> catdyn::Result<()> {
    let entries = [
        ClosedForm::Shift { n: 2 },
        ClosedForm::Gepner { w: 0.4 },
        ClosedForm::Dhkk { r: 2.5, f0: 1 },
        ClosedForm::SphericalTwist { big_n: 3 },
        ClosedForm::SerreFractionalCy { m: 5, n: 3 },
    ];
    for cf in &entries {
        let rep = consistency_with_bounds(cf, &default_grid())?;
        let d = closed_form_displacement(cf)?;
        println!(
            "{:<20} h_0 = {:.4}, slopes ({:.4}, {:.4}), d = {:.4}, violations {}",
            cf.label(),
            rep.h_zero,
            rep.slope_minus,
            rep.slope_plus,
            d.d,
            rep.violations
        );
    }
    Ok(())
}
