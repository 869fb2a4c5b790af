//! Entropy, mass growth and metric dynamics of endofunctors of the derived
//! category `D^b(F)` of a finite semisimple abelian category.
//!
//! An endofunctor sends each simple `S_i` to a sum of shifted simples and is
//! recorded as a matrix of Laurent polynomials with nonnegative integer
//! coefficients, `z^m` standing for the shift `[−m]`.
//!
//! - [`laurent`]: exact Laurent polynomials and matrices.
//! - [`perron`]: `h_t = log ρ(M(e^{-t}))`, its asymptotic slopes and the
//!   piecewise-linear region containing it.
//! - [`semisimple`]: objects, stability conditions, the closed-form metric and
//!   the quotient by the `C`-action.
//! - [`dynamics`]: auto-equivalences `S_i ↦ S_{π(i)}[m_i]`, their displacement,
//!   translation length, mass growth and classification.
//! - [`catalog`]: closed forms for shifts, Gepner points, pseudo-Anosov
//!   auto-equivalences, spherical twists and Serre functors.
//! - [`cli`]: the `catdyn` command line (`entropy`, `classify`, `verify`,
//!   `catalog`).
//!
//! ```
//! use catdyn::laurent::{LaurentMatrix, LaurentPoly};
//! use catdyn::perron::entropy_at;
//!
//! let m = LaurentMatrix::from_rows(vec![vec![LaurentPoly::from_terms([(1, 1), (-1, 1)])]]).unwrap();
//! let h = entropy_at(&m, 1.0).unwrap();
//! assert!((h - (1f64.exp() + (-1f64).exp()).ln()).abs() < 1e-12);
//! ```

pub mod catalog;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod laurent;
pub mod perron;
pub mod semisimple;

pub use error::{Error, Result};
