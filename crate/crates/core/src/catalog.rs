//! Closed-form mass growth and displacement of standard auto-equivalences.
//!
//! These are formulas rather than models: no category is built. They serve
//! as reference data for the generic bound checks.
//!
//! | entry | `h_t` | `d` |
//! |---|---|---|
//! | shift `[n]` | `n t` | `|n|` |
//! | Gepner point, `ασ = σ·w`, `w ∈ R` | `w t` | `|w|` |
//! | pseudo-Anosov with stretch `r`, `|r| > 1`, `f(0) ∈ Z` | `log|r| − f(0) t` | `max{log|r|, |f(0)|}` |
//! | spherical twist, `N ≥ 2` | `(1−N) t` for `t < 0`, `0` for `t ≥ 0` | `N − 1` |
//! | Serre functor with `S^n ≅ [m]` | `m t / n` | `|m| / n` |
//! | Serre functor with Serre dimensions `lower ≤ upper` | slopes only | at least `max{−lower, upper}` |

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perron::{EntropyCurve, EntropySample};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum ClosedForm {
    Shift { n: i64 },
    Gepner { w: f64 },
    Dhkk { r: f64, f0: i64 },
    SphericalTwist { big_n: i64 },
    SerreFractionalCy { m: i64, n: i64 },
    SerreDim { lower: f64, upper: f64 },
}

/// Displacement data; `l` is `None` where no closed form is recorded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Displacement {
    pub d: f64,
    pub l: Option<f64>,
}

impl ClosedForm {
    /// Checks the parameter domain.
    pub fn validate(&self) -> Result<()> {
        let finite = |x: f64, what: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!("{what} must be finite")))
            }
        };
        match *self {
            Self::Shift { .. } => Ok(()),
            Self::Gepner { w } => finite(w, "w"),
            Self::Dhkk { r, .. } => {
                finite(r, "r")?;
                if r.abs() > 1.0 {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("stretch factor needs |r| > 1, got {r}")))
                }
            }
            Self::SphericalTwist { big_n } => {
                if big_n >= 2 {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("spherical twist needs N >= 2, got {big_n}")))
                }
            }
            Self::SerreFractionalCy { n, .. } => {
                if n >= 1 {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("fractional dimension needs n >= 1, got {n}")))
                }
            }
            Self::SerreDim { lower, upper } => {
                finite(lower, "lower")?;
                finite(upper, "upper")?;
                if lower <= upper {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("need lower <= upper, got {lower} > {upper}")))
                }
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Shift { .. } => "shift",
            Self::Gepner { .. } => "gepner",
            Self::Dhkk { .. } => "dhkk",
            Self::SphericalTwist { .. } => "spherical-twist",
            Self::SerreFractionalCy { .. } => "serre-fractional-cy",
            Self::SerreDim { .. } => "serre-dim",
        }
    }

    /// `(φ⁻, φ⁺)`, the limits of `h_t / t` as `t → ∓∞`.
    pub fn slopes(&self) -> Result<(f64, f64)> {
        self.validate()?;
        Ok(match *self {
            Self::Shift { n } => (n as f64, n as f64),
            Self::Gepner { w } => (w, w),
            Self::Dhkk { f0, .. } => (-f0 as f64, -f0 as f64),
            Self::SphericalTwist { big_n } => ((1 - big_n) as f64, 0.0),
            Self::SerreFractionalCy { m, n } => (m as f64 / n as f64, m as f64 / n as f64),
            Self::SerreDim { lower, upper } => (lower, upper),
        })
    }

    /// `h_0(α^{-1})` where it is known in closed form.
    pub fn h_zero_inverse(&self) -> Option<f64> {
        match *self {
            Self::Shift { .. } | Self::Gepner { .. } => Some(0.0),
            Self::Dhkk { r, .. } => Some(r.abs().ln()),
            _ => None,
        }
    }
}

/// `h_t` of the catalog entry.
pub fn closed_form_mass_growth(cf: &ClosedForm, t: f64) -> Result<f64> {
    cf.validate()?;
    Ok(match *cf {
        ClosedForm::Shift { n } => n as f64 * t,
        ClosedForm::Gepner { w } => w * t,
        ClosedForm::Dhkk { r, f0 } => r.abs().ln() - f0 as f64 * t,
        ClosedForm::SphericalTwist { big_n } => {
            if t < 0.0 {
                (1 - big_n) as f64 * t
            } else {
                0.0
            }
        }
        ClosedForm::SerreFractionalCy { m, n } => m as f64 / n as f64 * t,
        ClosedForm::SerreDim { .. } => return Err(Error::Undetermined("only the asymptotic slopes are known".into())),
    })
}

/// Eventual displacement and, where recorded, translation length.
pub fn closed_form_displacement(cf: &ClosedForm) -> Result<Displacement> {
    cf.validate()?;
    Ok(match *cf {
        ClosedForm::Shift { n } => Displacement { d: n.unsigned_abs() as f64, l: None },
        ClosedForm::Gepner { w } => Displacement { d: w.abs(), l: (w == 0.0).then_some(0.0) },
        ClosedForm::Dhkk { r, f0 } => {
            let d = r.abs().ln().max(f0.unsigned_abs() as f64);
            Displacement { d, l: Some(d) }
        }
        ClosedForm::SphericalTwist { big_n } => {
            let d = (big_n - 1) as f64;
            Displacement { d, l: Some(d) }
        }
        ClosedForm::SerreFractionalCy { m, n } => Displacement { d: m.unsigned_abs() as f64 / n as f64, l: None },
        ClosedForm::SerreDim { lower, upper } => {
            return Err(Error::Undetermined(format!("only the lower bound d >= {} is known", (-lower).max(upper))))
        }
    })
}

/// The closed form sampled on a grid, with the bound columns for its own
/// `h_0` and slopes.
pub fn closed_form_curve(cf: &ClosedForm, grid: &[f64]) -> Result<EntropyCurve> {
    let (slope_minus, slope_plus) = cf.slopes()?;
    let h_zero = closed_form_mass_growth(cf, 0.0)?;
    let samples = grid
        .iter()
        .map(|&t| {
            closed_form_mass_growth(cf, t).map(|value| EntropySample { t, value, slope_minus, slope_plus, h_zero })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyCurve { grid: grid.to_vec(), samples })
}

/// How a catalog entry sits inside the general bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub entry: ClosedForm,
    pub h_zero: f64,
    pub slope_minus: f64,
    pub slope_plus: f64,
    /// Largest distance of `h_t` outside `[lower_sharp, upper_basic]` on the grid.
    pub region_violation: f64,
    /// Largest `|h_t − lower_basic(t)|` on the grid; zero when the basic lower
    /// bound is attained everywhere.
    pub gap_to_lower_basic: f64,
    pub displacement: Displacement,
    /// `max{h_0, |φ⁻|, |φ⁺|}`, a lower bound for `d`.
    pub displacement_lower: f64,
    /// `max{(h_0(α) + h_0(α^{-1}))/2, (φ⁺ − φ⁻)/2}`, a lower bound for the
    /// displacement on the quotient by `C`, which is at most `d`.
    pub quotient_lower: f64,
    pub violations: usize,
}

impl ConsistencyReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks the entry against the piecewise-linear region, the metric bound
/// `max{h_0, |φ^±|} ≤ d` and the quotient bound.
pub fn consistency_with_bounds(cf: &ClosedForm, grid: &[f64]) -> Result<ConsistencyReport> {
    if grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidGrid("grid points must be finite".into()));
    }
    let curve = closed_form_curve(cf, grid)?;
    let (slope_minus, slope_plus) = cf.slopes()?;
    let h_zero = closed_form_mass_growth(cf, 0.0)?;
    let displacement = closed_form_displacement(cf)?;
    let region_violation = curve.max_violation();
    let gap_to_lower_basic = curve.samples.iter().map(|s| (s.value - s.lower_basic()).abs()).fold(0.0, f64::max);
    let displacement_lower = h_zero.max(slope_minus.abs()).max(slope_plus.abs());
    let quotient_lower = (0.5 * (h_zero + cf.h_zero_inverse().unwrap_or(0.0))).max(0.5 * (slope_plus - slope_minus));

    const TOL: f64 = 1e-12;
    let mut violations = curve.samples.iter().filter(|s| s.violation() > TOL).count();
    if displacement_lower > displacement.d + TOL {
        violations += 1;
    }
    if quotient_lower > displacement.d + TOL {
        violations += 1;
    }
    if displacement.l.is_some_and(|l| l < displacement.d - TOL) {
        violations += 1;
    }
    Ok(ConsistencyReport {
        entry: *cf,
        h_zero,
        slope_minus,
        slope_plus,
        region_violation,
        gap_to_lower_basic,
        displacement,
        displacement_lower,
        quotient_lower,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{mass_growth_exact, AutoEquivalence};
    use crate::laurent::{LaurentMatrix, LaurentPoly};
    use crate::perron::{default_grid, entropy_at};

    #[test]
    fn mass_growth_examples() {
        let h = |cf: ClosedForm, t| closed_form_mass_growth(&cf, t).unwrap();
        assert_eq!(h(ClosedForm::Shift { n: 3 }, 2.0), 6.0);
        assert_eq!(h(ClosedForm::SphericalTwist { big_n: 3 }, -1.0), 2.0);
        assert_eq!(h(ClosedForm::SphericalTwist { big_n: 3 }, 1.0), 0.0);
        assert_eq!(h(ClosedForm::Dhkk { r: 2.0, f0: 0 }, 0.0), 2f64.ln());
        assert_eq!(h(ClosedForm::Dhkk { r: -2.0, f0: 1 }, 1.0), 2f64.ln() - 1.0);
        assert_eq!(h(ClosedForm::SerreFractionalCy { m: 3, n: 2 }, 2.0), 3.0);
        assert!(matches!(
            closed_form_mass_growth(&ClosedForm::SerreDim { lower: -1.0, upper: 2.0 }, 0.0),
            Err(Error::Undetermined(_))
        ));
    }

    #[test]
    fn domains() {
        for bad in [
            ClosedForm::Dhkk { r: 1.0, f0: 0 },
            ClosedForm::Dhkk { r: -0.5, f0: 0 },
            ClosedForm::SphericalTwist { big_n: 1 },
            ClosedForm::SerreFractionalCy { m: 1, n: 0 },
            ClosedForm::SerreDim { lower: 1.0, upper: 0.0 },
            ClosedForm::Gepner { w: f64::NAN },
        ] {
            assert!(matches!(closed_form_mass_growth(&bad, 0.0), Err(Error::Domain(_))), "{bad:?}");
            assert!(closed_form_displacement(&bad).is_err());
        }
    }

    #[test]
    fn displacement_examples() {
        let d = |cf: ClosedForm| closed_form_displacement(&cf).unwrap();
        assert_eq!(d(ClosedForm::SphericalTwist { big_n: 4 }), Displacement { d: 3.0, l: Some(3.0) });
        assert_eq!(d(ClosedForm::Dhkk { r: 2.0, f0: 3 }), Displacement { d: 3.0, l: Some(3.0) });
        assert_eq!(d(ClosedForm::Dhkk { r: 2.0, f0: 1 }).d, 1.0);
        assert_eq!(d(ClosedForm::Dhkk { r: 10.0, f0: -1 }).d, 10f64.ln());
        assert_eq!(d(ClosedForm::Gepner { w: 0.0 }), Displacement { d: 0.0, l: Some(0.0) });
        assert_eq!(d(ClosedForm::Gepner { w: -1.5 }), Displacement { d: 1.5, l: None });
        assert_eq!(d(ClosedForm::SerreFractionalCy { m: -3, n: 2 }).d, 1.5);
        assert!(matches!(
            closed_form_displacement(&ClosedForm::SerreDim { lower: -1.0, upper: 0.5 }),
            Err(Error::Undetermined(_))
        ));
    }

    #[test]
    fn every_entry_is_consistent() {
        let grid = default_grid();
        let mut entries: Vec<ClosedForm> = (2..=6).map(|big_n| ClosedForm::SphericalTwist { big_n }).collect();
        entries.extend((-3..=3).map(|n| ClosedForm::Shift { n }));
        entries.extend([-1.5, 0.0, 0.25].map(|w| ClosedForm::Gepner { w }));
        entries.extend([(2.0, 0), (2.0, 1), (-5.0, -2), (1.5, 3)].map(|(r, f0)| ClosedForm::Dhkk { r, f0 }));
        entries.extend([(3, 2), (-1, 3), (0, 1)].map(|(m, n)| ClosedForm::SerreFractionalCy { m, n }));
        for cf in entries {
            let rep = consistency_with_bounds(&cf, &grid).unwrap();
            assert!(rep.holds(), "{rep:?}");
            assert_eq!(rep.region_violation, 0.0);
            // every entry attains the metric bound
            assert!((rep.displacement_lower - rep.displacement.d).abs() < 1e-12, "{cf:?}");
        }
    }

    #[test]
    fn spherical_twist_meets_the_basic_bounds() {
        for big_n in 2..=6 {
            let rep = consistency_with_bounds(&ClosedForm::SphericalTwist { big_n }, &default_grid()).unwrap();
            assert_eq!(rep.h_zero, 0.0);
            assert_eq!((rep.slope_minus, rep.slope_plus), ((1 - big_n) as f64, 0.0));
            assert_eq!(rep.gap_to_lower_basic, 0.0);
            assert_eq!(rep.quotient_lower, (big_n - 1) as f64 / 2.0);
        }
    }

    #[test]
    fn dhkk_entry() {
        let rep = consistency_with_bounds(&ClosedForm::Dhkk { r: 3.0, f0: 2 }, &default_grid()).unwrap();
        assert_eq!(rep.h_zero, 3f64.ln());
        assert_eq!(ClosedForm::Dhkk { r: 3.0, f0: 2 }.h_zero_inverse(), Some(3f64.ln()));
        assert_eq!(rep.quotient_lower, 3f64.ln());
        assert!(rep.holds());
    }

    #[test]
    fn gepner_is_odd_and_linear() {
        let cf = ClosedForm::Gepner { w: 0.7 };
        for t in [0.5, 1.0, 4.0] {
            let h = closed_form_mass_growth(&cf, t).unwrap();
            assert_eq!(h, -closed_form_mass_growth(&cf, -t).unwrap());
            assert!((h - 0.7 * t).abs() < 1e-15);
        }
        assert_eq!(closed_form_mass_growth(&cf, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn shift_matches_dynamics_and_entropy() {
        for n in -4..=4 {
            let cf = ClosedForm::Shift { n };
            let alpha = AutoEquivalence::shift(3, n);
            let m = LaurentMatrix::scalar(3, &LaurentPoly::monomial(-n, 1));
            assert_eq!(alpha.matrix(), m);
            for t in default_grid() {
                let want = closed_form_mass_growth(&cf, t).unwrap();
                assert!((mass_growth_exact(&alpha, t).unwrap() - want).abs() < 1e-12);
                assert!((entropy_at(&m, t).unwrap() - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn serialization_names_the_entry() {
        let json = serde_json::to_string(&ClosedForm::SphericalTwist { big_n: 3 }).unwrap();
        assert_eq!(json, r#"{"name":"spherical-twist","big_n":3}"#);
    }
}
