//! Stability conditions on `D^b(F)` for a finite set `F`, graded objects,
//! masses with parameter, the Bridgeland metric and the `C`-action.
//!
//! A stability condition is fixed by a mass `m_i > 0` and a phase `φ_i ∈ R`
//! for every simple `S_i`; phases live on the universal cover and are never
//! reduced. Every object is a finite sum `⊕ S_i[n]^{c_{i,n}}`, stored as one
//! Laurent polynomial per simple with `c_{i,n}` the coefficient of `z^{-n}`.
//!
//! # The metric on simples
//!
//! The Bridgeland distance is a supremum over nonzero objects `E` of
//! `max{|log m_σ(E)/m_τ(E)|, |φ⁺_σ(E) − φ⁺_τ(E)|, |φ⁻_σ(E) − φ⁻_τ(E)|}`.
//! Here it equals `max_i max{|log m_i/m'_i|, |φ_i − φ'_i|}`:
//!
//! * Taking `E = S_i` shows the supremum is at least this value.
//! * For `E = ⊕ S_i[n]^{c_{i,n}}` the HN factors are the summands grouped by
//!   phase `φ_i + n`, so `m_σ(E) = Σ c_{i,n} m_i` and `m_τ(E) = Σ c_{i,n} m'_i`.
//!   A ratio of two positive sums lies between the smallest and largest
//!   termwise ratio, hence `|log m_σ(E)/m_τ(E)| ≤ max_i |log m_i/m'_i|`.
//! * `φ⁺_σ(E)` is the maximum of `φ_i + n` over the summands and `φ⁺_τ(E)` the
//!   maximum of `φ'_i + n` over the same summands. Two maxima over a common
//!   index set differ by at most the largest termwise difference, so
//!   `|φ⁺_σ(E) − φ⁺_τ(E)| ≤ max_i |φ_i − φ'_i|`, and likewise for `φ⁻`.
//!
//! # The quotient by `C`
//!
//! `w ∈ C` sends `(m_i, φ_i)` to `(m_i e^{π Im w}, φ_i − Re w)`. With
//! `a_i = log(m_i/m'_i)` and `b_i = φ_i − φ'_i`, the distance from `σ` to `τ·w`
//! is `max{max_i |a_i − π Im w|, max_i |b_i + Re w|}`. The real and imaginary
//! parts of `w` enter separate terms, so the infimum splits into two
//! one-dimensional problems `inf_s max_i |x_i − s|`, each solved by the
//! midpoint of the range with value half the spread:
//! `d(σ̄, τ̄) = max{(max a − min a)/2, (max b − min b)/2}`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentMatrix, LaurentPoly};

/// An object `⊕ S_i[n]^{c_{i,n}}` of `D^b(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedObject {
    slots: Vec<LaurentPoly>,
}

impl GradedObject {
    pub fn new(slots: Vec<LaurentPoly>) -> Self {
        Self { slots }
    }

    pub fn zero(size: usize) -> Self {
        Self { slots: vec![LaurentPoly::zero(); size] }
    }

    /// `S_i[n]`.
    pub fn simple(size: usize, i: usize, n: i64) -> Self {
        let mut obj = Self::zero(size);
        obj.slots[i] = LaurentPoly::monomial(-n, 1);
        obj
    }

    /// `S_i[n]^c` summed over the given `(i, n, c)` triples.
    pub fn from_summands(size: usize, summands: impl IntoIterator<Item = (usize, i64, u64)>) -> Self {
        let mut obj = Self::zero(size);
        for (i, n, c) in summands {
            obj.slots[i] = &obj.slots[i] + &LaurentPoly::monomial(-n, c);
        }
        obj
    }

    pub fn size(&self) -> usize {
        self.slots.len()
    }

    pub fn slot(&self, i: usize) -> &LaurentPoly {
        &self.slots[i]
    }

    pub fn slots(&self) -> &[LaurentPoly] {
        &self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(LaurentPoly::is_zero)
    }

    /// `E[k]`.
    pub fn shifted(&self, k: i64) -> Self {
        Self { slots: self.slots.iter().map(|p| p.shifted(-k)).collect() }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        check_sizes(self.size(), other.size())?;
        Ok(Self { slots: self.slots.iter().zip(&other.slots).map(|(a, b)| a + b).collect() })
    }

    /// Summands as `(i, n, c_{i,n})`, i.e. `S_i[n]` with multiplicity `c`.
    pub fn summands(&self) -> impl Iterator<Item = (usize, i64, f64)> + '_ {
        self.slots.iter().enumerate().flat_map(|(i, p)| p.terms().map(move |(d, c)| (i, -d, biguint_to_f64(c))))
    }
}

fn biguint_to_f64(c: &num_bigint::BigUint) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::INFINITY)
}

fn check_sizes(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::SizeMismatch { left, right })
    }
}

#[derive(Deserialize)]
struct RawStability {
    masses: Vec<f64>,
    phases: Vec<f64>,
}

impl TryFrom<RawStability> for StabilityCondition {
    type Error = Error;

    fn try_from(raw: RawStability) -> Result<Self> {
        StabilityCondition::new(raw.masses, raw.phases)
    }
}

/// A point of `Stab(D^b(F)) ≅ C^F`: `Z(S_i) = m_i e^{iπφ_i}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStability")]
pub struct StabilityCondition {
    masses: Vec<f64>,
    phases: Vec<f64>,
}

impl StabilityCondition {
    pub fn new(masses: Vec<f64>, phases: Vec<f64>) -> Result<Self> {
        if masses.len() != phases.len() {
            return Err(Error::InvalidStability(format!("{} masses but {} phases", masses.len(), phases.len())));
        }
        if masses.is_empty() {
            return Err(Error::InvalidStability("no simple objects".into()));
        }
        if let Some(m) = masses.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
            return Err(Error::InvalidStability(format!("mass {m} is not a positive real")));
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidStability("phases must be finite".into()));
        }
        Ok(Self { masses, phases })
    }

    /// All masses 1 and all phases 0.
    pub fn standard(size: usize) -> Self {
        Self { masses: vec![1.0; size], phases: vec![0.0; size] }
    }

    pub fn size(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn charge(&self, i: usize) -> Complex64 {
        Complex64::from_polar(self.masses[i], std::f64::consts::PI * self.phases[i])
    }
}

/// `m_{σ,t}(E) = Σ c_{i,n} m_i e^{(φ_i + n) t}`; zero for the zero object.
pub fn mass_with_parameter(sigma: &StabilityCondition, e: &GradedObject, t: f64) -> Result<f64> {
    check_sizes(sigma.size(), e.size())?;
    Ok(e.summands().map(|(i, n, c)| c * sigma.masses[i] * ((sigma.phases[i] + n as f64) * t).exp()).sum())
}

/// The image of `E` under the functor with matrix `M`.
pub fn apply_functor(m: &LaurentMatrix, e: &GradedObject) -> Result<GradedObject> {
    check_sizes(m.size(), e.size())?;
    let n = m.size();
    let slots = (0..n).map(|i| (0..n).fold(LaurentPoly::zero(), |acc, j| &acc + &(m.get(i, j) * e.slot(j)))).collect();
    Ok(GradedObject { slots })
}

/// Bridgeland distance, computed on the simples (see the module docs).
pub fn bridgeland_distance(sigma: &StabilityCondition, tau: &StabilityCondition) -> Result<f64> {
    check_sizes(sigma.size(), tau.size())?;
    Ok((0..sigma.size())
        .map(|i| (sigma.masses[i].ln() - tau.masses[i].ln()).abs().max((sigma.phases[i] - tau.phases[i]).abs()))
        .fold(0.0, f64::max))
}

/// `Z ↦ e^{−iπw} Z`: masses scale by `e^{π Im w}`, phases drop by `Re w`.
pub fn c_action(sigma: &StabilityCondition, w: Complex64) -> StabilityCondition {
    let scale = (std::f64::consts::PI * w.im).exp();
    StabilityCondition {
        masses: sigma.masses.iter().map(|m| m * scale).collect(),
        phases: sigma.phases.iter().map(|p| p - w.re).collect(),
    }
}

fn midrange(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let hi = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    let lo = xs.fold(f64::INFINITY, f64::min);
    (0.5 * (hi + lo), 0.5 * (hi - lo))
}

/// A `C`-orbit of stability conditions, stored by its representative with
/// `max log m + min log m = 0` and `max φ + min φ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientPoint {
    rep: StabilityCondition,
}

impl QuotientPoint {
    pub fn new(sigma: &StabilityCondition) -> Self {
        let (log_mid, _) = midrange(sigma.masses.iter().map(|m| m.ln()));
        let (phase_mid, _) = midrange(sigma.phases.iter().copied());
        Self { rep: c_action(sigma, Complex64::new(phase_mid, -log_mid / std::f64::consts::PI)) }
    }

    pub fn representative(&self) -> &StabilityCondition {
        &self.rep
    }

    pub fn size(&self) -> usize {
        self.rep.size()
    }

    /// Componentwise comparison of canonical representatives.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.size() == other.size()
            && self.rep.masses.iter().zip(&other.rep.masses).all(|(a, b)| (a.ln() - b.ln()).abs() <= tol)
            && self.rep.phases.iter().zip(&other.rep.phases).all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl From<&StabilityCondition> for QuotientPoint {
    fn from(sigma: &StabilityCondition) -> Self {
        Self::new(sigma)
    }
}

/// `inf_{w ∈ C} d(σ, τ·w)` in closed form (see the module docs).
pub fn quotient_distance(p: &QuotientPoint, q: &QuotientPoint) -> Result<f64> {
    quotient_distance_of(&p.rep, &q.rep)
}

/// Quotient distance between the orbits of two stability conditions.
pub fn quotient_distance_of(sigma: &StabilityCondition, tau: &StabilityCondition) -> Result<f64> {
    check_sizes(sigma.size(), tau.size())?;
    let n = sigma.size();
    let a = (0..n).map(|i| sigma.masses[i].ln() - tau.masses[i].ln());
    let b = (0..n).map(|i| sigma.phases[i] - tau.phases[i]);
    Ok(midrange(a).1.max(midrange(b).1))
}

/// A stability condition with masses uniform in `mass_range` and phases
/// uniform in `phase_range` (both inclusive), drawn from ChaCha8 seeded by `seed`.
pub fn random_stability(
    seed: u64,
    size: usize,
    mass_range: (f64, f64),
    phase_range: (f64, f64),
) -> Result<StabilityCondition> {
    random_stability_with(&mut ChaCha8Rng::seed_from_u64(seed), size, mass_range, phase_range)
}

pub fn random_stability_with<R: Rng + ?Sized>(
    rng: &mut R,
    size: usize,
    mass_range: (f64, f64),
    phase_range: (f64, f64),
) -> Result<StabilityCondition> {
    let (mlo, mhi) = mass_range;
    let (plo, phi) = phase_range;
    if !(mlo > 0.0 && mlo <= mhi && mhi.is_finite()) {
        return Err(Error::Domain(format!("mass range must satisfy 0 < lo <= hi, got ({mlo}, {mhi})")));
    }
    if !(plo <= phi && plo.is_finite() && phi.is_finite()) {
        return Err(Error::Domain(format!("phase range must satisfy lo <= hi, got ({plo}, {phi})")));
    }
    let mut masses = Vec::with_capacity(size);
    let mut phases = Vec::with_capacity(size);
    for _ in 0..size {
        masses.push(rng.random_range(mlo..=mhi));
        phases.push(rng.random_range(plo..=phi));
    }
    StabilityCondition::new(masses, phases)
}
