//! Auto-equivalences of `D^b(F)` acting isometrically on stability
//! conditions: orbits, eventual displacement, translation length,
//! mass growth and the bounds relating them to entropy.
//!
//! An auto-equivalence is a permutation `π` of the simples with shifts `m_i`,
//! `α S_i = S_{π(i)}[−m_i]`. On a cycle `O` of `π` with orbit sum
//! `s = Σ_{j∈O} m_j`, the power `α^k` (`k` the order of `π`) shifts every
//! simple of `O` by `−s·k/#O`. Hence `M_α^k` is diagonal with exponents
//! `e_i = s·k/#O`, and
//!
//! * `d(α) = max_i |e_i| / k = max_O |s_O| / #O`,
//! * `l(α) = d(α)`, attained by masses 1 and phases with
//!   `φ_{π(i)} − φ_i = m_i − s_O/#O`,
//! * `h_t(α) = min_i(−e_i/k)·t` for `t ≤ 0` and `max_i(−e_i/k)·t` for `t ≥ 0`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::perron::{asymptotic_slopes, entropy_at, ratio_to_f64};
use crate::semisimple::{
    apply_functor, bridgeland_distance, mass_with_parameter, quotient_distance, GradedObject, QuotientPoint,
    StabilityCondition,
};

/// Default number of orbit steps for the numeric estimators. A multiple of
/// every cycle length up to 6, so that `α^60` is a pure shift in the sweeps.
pub const DEFAULT_N_MAX: usize = 60;

#[derive(Deserialize)]
struct RawAutoEquivalence {
    permutation: Vec<usize>,
    shifts: Vec<i64>,
}

impl TryFrom<RawAutoEquivalence> for AutoEquivalence {
    type Error = Error;

    fn try_from(raw: RawAutoEquivalence) -> Result<Self> {
        AutoEquivalence::new(raw.permutation, raw.shifts)
    }
}

/// `α S_i = S_{π(i)}[−m_i]`, with `π` 0-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAutoEquivalence")]
pub struct AutoEquivalence {
    permutation: Vec<usize>,
    shifts: Vec<i64>,
}

impl AutoEquivalence {
    pub fn new(permutation: Vec<usize>, shifts: Vec<i64>) -> Result<Self> {
        let n = permutation.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        if shifts.len() != n {
            return Err(Error::InvalidPermutation(format!("{} shifts for {n} simples", shifts.len())));
        }
        let mut seen = vec![false; n];
        for &p in &permutation {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!("{permutation:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Self { permutation, shifts })
    }

    pub fn identity(size: usize) -> Self {
        Self::shift(size, 0)
    }

    /// The shift functor `[n]`.
    pub fn shift(size: usize, n: i64) -> Self {
        Self { permutation: (0..size).collect(), shifts: vec![-n; size] }
    }

    pub fn size(&self) -> usize {
        self.permutation.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    /// The matrix with entry `(π(i), i) = z^{m_i}`.
    pub fn matrix(&self) -> LaurentMatrix {
        let n = self.size();
        let mut m = LaurentMatrix::zero(n);
        for i in 0..n {
            m.set(self.permutation[i], i, LaurentPoly::monomial(self.shifts[i], 1));
        }
        m
    }

    /// `self ∘ other`, i.e. apply `other` first. Its matrix is `M_self · M_other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch { left: self.size(), right: other.size() });
        }
        let permutation = other.permutation.iter().map(|&j| self.permutation[j]).collect();
        let shifts = (0..self.size()).map(|i| other.shifts[i] + self.shifts[other.permutation[i]]).collect();
        Ok(Self { permutation, shifts })
    }

    pub fn inverse(&self) -> Self {
        let n = self.size();
        let mut permutation = vec![0; n];
        let mut shifts = vec![0; n];
        for i in 0..n {
            permutation[self.permutation[i]] = i;
            shifts[self.permutation[i]] = -self.shifts[i];
        }
        Self { permutation, shifts }
    }

    /// `α^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity(self.size());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same size");
            }
            base = base.compose(&base).expect("same size");
            e >>= 1;
        }
        acc
    }

    /// `α ∘ [d]`.
    pub fn then_shift(&self, d: i64) -> Self {
        Self { permutation: self.permutation.clone(), shifts: self.shifts.iter().map(|m| m - d).collect() }
    }

    /// Cycles of `π`, each listed from its smallest element along `π`.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.permutation[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Order of `π`.
    pub fn order(&self) -> i64 {
        self.cycles().iter().fold(1i64, |acc, c| acc.lcm(&(c.len() as i64)))
    }

    /// Uniform permutation of `size` simples with shifts in `[−max_shift, max_shift]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, size: usize, max_shift: i64) -> Self {
        let mut permutation: Vec<usize> = (0..size).collect();
        permutation.shuffle(rng);
        let shifts = (0..size).map(|_| rng.random_range(-max_shift..=max_shift)).collect();
        Self { permutation, shifts }
    }
}

fn check_size(alpha: &AutoEquivalence, sigma: &StabilityCondition) -> Result<()> {
    if alpha.size() == sigma.size() {
        Ok(())
    } else {
        Err(Error::SizeMismatch { left: alpha.size(), right: sigma.size() })
    }
}

/// `α·σ`: `S_{π(i)}` gets mass `m_i` and phase `φ_i + m_i`.
pub fn act(alpha: &AutoEquivalence, sigma: &StabilityCondition) -> Result<StabilityCondition> {
    check_size(alpha, sigma)?;
    let n = alpha.size();
    let mut masses = vec![0.0; n];
    let mut phases = vec![0.0; n];
    for i in 0..n {
        let j = alpha.permutation[i];
        masses[j] = sigma.masses()[i];
        phases[j] = sigma.phases()[i] + alpha.shifts[i] as f64;
    }
    StabilityCondition::new(masses, phases)
}

/// `|d(ασ, ατ) − d(σ, τ)|`.
pub fn isometry_check(alpha: &AutoEquivalence, sigma: &StabilityCondition, tau: &StabilityCondition) -> Result<f64> {
    let before = bridgeland_distance(sigma, tau)?;
    let after = bridgeland_distance(&act(alpha, sigma)?, &act(alpha, tau)?)?;
    Ok((after - before).abs())
}

/// Classification by the definitions: elliptic iff there is a fixed point,
/// hyperbolic iff the translation length is positive and attained,
/// parabolic otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Elliptic,
    Hyperbolic,
    Parabolic,
}

/// The trichotomy by the cycle-type rule: elliptic iff every orbit sum
/// vanishes, hyperbolic iff `π` is a single cycle with `l > 0`, otherwise
/// parabolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PaperClassification {
    Elliptic,
    Hyperbolic,
    ParabolicPaperConvention,
}

fn ser_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Exact {
        num: i64,
        den: i64,
    }
    Exact { num: *r.numer(), den: *r.denom() }.serialize(s)
}

/// Exact isometry data of an auto-equivalence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsometryReport {
    pub order_k: i64,
    pub cycles: Vec<Vec<usize>>,
    /// `Σ_{j∈O} m_j` per cycle, in the order of `cycles`.
    pub orbit_totals: Vec<i64>,
    /// Exponents of the diagonal matrix `M_α^k`, per simple.
    pub diagonal_exponents: Vec<i64>,
    #[serde(serialize_with = "ser_ratio")]
    pub eventual_displacement: Ratio<i64>,
    #[serde(serialize_with = "ser_ratio")]
    pub translation_length: Ratio<i64>,
    pub attained_at: Option<StabilityCondition>,
    pub attained: bool,
    pub classification: Classification,
    pub paper_classification: PaperClassification,
}

fn witness(alpha: &AutoEquivalence, cycles: &[Vec<usize>], totals: &[i64]) -> Result<StabilityCondition> {
    let n = alpha.size();
    let mut phases = vec![0.0; n];
    for (cycle, &s) in cycles.iter().zip(totals) {
        let drift = Ratio::new(s, cycle.len() as i64);
        let mut phase = Ratio::zero();
        for &i in cycle {
            phases[i] = ratio_to_f64(phase);
            phase += Ratio::from_integer(alpha.shifts[i]) - drift;
        }
    }
    StabilityCondition::new(vec![1.0; n], phases)
}

/// Order, orbit sums, `d(α)`, `l(α)`, a witness attaining `l(α)`, and both
/// classifications.
pub fn exact_report(alpha: &AutoEquivalence) -> Result<IsometryReport> {
    let cycles = alpha.cycles();
    let k = alpha.order();
    let totals: Vec<i64> = cycles.iter().map(|c| c.iter().map(|&i| alpha.shifts[i]).sum()).collect();
    let mut exponents = vec![0; alpha.size()];
    let mut length = Ratio::zero();
    for (cycle, &s) in cycles.iter().zip(&totals) {
        let len = cycle.len() as i64;
        for &i in cycle {
            exponents[i] = s * (k / len);
        }
        length = length.max(Ratio::new(s.abs(), len));
    }
    let displacement = exponents.iter().map(|e| Ratio::new(e.abs(), k)).max().unwrap_or_else(Ratio::zero);

    let sigma = witness(alpha, &cycles, &totals)?;
    let attained = (bridgeland_distance(&sigma, &act(alpha, &sigma)?)? - ratio_to_f64(length)).abs() <= 1e-12;

    let classification = if length.is_zero() && attained {
        Classification::Elliptic
    } else if attained {
        Classification::Hyperbolic
    } else {
        Classification::Parabolic
    };
    let paper_classification = if totals.iter().all(|s| *s == 0) && attained {
        PaperClassification::Elliptic
    } else if cycles.len() == 1 && length > Ratio::zero() {
        PaperClassification::Hyperbolic
    } else {
        PaperClassification::ParabolicPaperConvention
    };

    Ok(IsometryReport {
        order_k: k,
        cycles,
        orbit_totals: totals,
        diagonal_exponents: exponents,
        eventual_displacement: displacement,
        translation_length: length,
        attained_at: Some(sigma),
        attained,
        classification,
        paper_classification,
    })
}

/// Orbit displacements `d(σ, α^n σ)` for `n = 0..=n_max`.
fn orbit_distances(alpha: &AutoEquivalence, sigma: &StabilityCondition, n_max: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut cur = sigma.clone();
    out.push(0.0);
    for _ in 0..n_max {
        cur = act(alpha, &cur)?;
        out.push(bridgeland_distance(sigma, &cur)?);
    }
    Ok(out)
}

/// Numeric eventual displacement from the orbit of `σ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisplacementEstimate {
    /// `d(σ, α^n σ)/n` for `n = 1..=n_max`.
    pub ratios: Vec<f64>,
    /// Running infimum of `ratios`.
    pub running_infimum: Vec<f64>,
    pub infimum: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub exact: Ratio<i64>,
    /// `2K/n_max` with `K = max_{0≤j≤k} d(σ, α^j σ)`.
    pub envelope: f64,
}

impl DisplacementEstimate {
    /// The infimum is no smaller than the exact value and within the envelope of it.
    pub fn consistent(&self) -> bool {
        let exact = ratio_to_f64(self.exact);
        self.infimum >= exact - 1e-12 && self.infimum <= exact + self.envelope + 1e-12
    }
}

pub fn estimate_displacement(
    alpha: &AutoEquivalence,
    sigma: &StabilityCondition,
    n_max: usize,
) -> Result<DisplacementEstimate> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let report = exact_report(alpha)?;
    let k = report.order_k as usize;
    let dists = orbit_distances(alpha, sigma, n_max.max(k))?;
    let ratios: Vec<f64> = (1..=n_max).map(|n| dists[n] / n as f64).collect();
    let running_infimum: Vec<f64> = ratios
        .iter()
        .scan(f64::INFINITY, |acc, &r| {
            *acc = acc.min(r);
            Some(*acc)
        })
        .collect();
    let big_k = dists[..=k].iter().cloned().fold(0.0, f64::max);
    Ok(DisplacementEstimate {
        infimum: *running_infimum.last().expect("n_max >= 1"),
        ratios,
        running_infimum,
        exact: report.eventual_displacement,
        envelope: 2.0 * big_k / n_max as f64,
    })
}

/// Exact slopes `(minus, plus)` of the mass growth: `min_i(−e_i/k)` and `max_i(−e_i/k)`.
pub fn mass_growth_slopes(alpha: &AutoEquivalence) -> Result<(Ratio<i64>, Ratio<i64>)> {
    let report = exact_report(alpha)?;
    let k = report.order_k;
    let values = report.diagonal_exponents.iter().map(|e| Ratio::new(-e, k));
    let minus = values.clone().min().expect("non-empty");
    let plus = values.max().expect("non-empty");
    Ok((minus, plus))
}

/// `h_t(α)`, piecewise linear in `t`.
pub fn mass_growth_exact(alpha: &AutoEquivalence, t: f64) -> Result<f64> {
    let (minus, plus) = mass_growth_slopes(alpha)?;
    Ok(if t < 0.0 {
        ratio_to_f64(minus) * t
    } else if t > 0.0 {
        ratio_to_f64(plus) * t
    } else {
        0.0
    })
}

/// `max_i (1/n) log m_{σ,t}(α^n S_i)` at `n = n_max`.
pub fn mass_growth_estimate(alpha: &AutoEquivalence, sigma: &StabilityCondition, t: f64, n_max: usize) -> Result<f64> {
    check_size(alpha, sigma)?;
    if n_max < 2 {
        return Err(Error::Domain("n_max must be at least 2".into()));
    }
    let power = alpha.pow(n_max as i64).matrix();
    let n = alpha.size();
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        let image = apply_functor(&power, &GradedObject::simple(n, i, 0))?;
        let mass = mass_with_parameter(sigma, &image, t)?;
        if mass <= 0.0 {
            return Err(Error::Nilpotent);
        }
        best = best.max(mass.ln() / n_max as f64);
    }
    Ok(best)
}

/// `max{h_0(α), |φ^±(α)|}` against `d(α)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricBoundsReport {
    #[serde(serialize_with = "ser_ratio")]
    pub displacement: Ratio<i64>,
    pub h_zero: f64,
    /// Slopes from the cycle means of `M_α`.
    #[serde(serialize_with = "ser_ratio")]
    pub slope_minus: Ratio<i64>,
    #[serde(serialize_with = "ser_ratio")]
    pub slope_plus: Ratio<i64>,
    /// Slopes read off the diagonal matrix `M_α^k` divided by `k`.
    #[serde(serialize_with = "ser_ratio")]
    pub power_slope_minus: Ratio<i64>,
    #[serde(serialize_with = "ser_ratio")]
    pub power_slope_plus: Ratio<i64>,
    pub violation: f64,
    pub holds: bool,
}

/// Checks `max{h_0(α), |φ^−|, |φ^+|} = d(α)`, exactly on the slope part.
///
/// `σ` only fixes the component of the stability manifold, which is all of
/// it here; it is validated for size but does not enter the values.
pub fn verify_metric_bounds(alpha: &AutoEquivalence, sigma: &StabilityCondition) -> Result<MetricBoundsReport> {
    check_size(alpha, sigma)?;
    let report = exact_report(alpha)?;
    let m = alpha.matrix();
    let h_zero = entropy_at(&m, 0.0)?;
    let slopes = asymptotic_slopes(&m)?;
    let k = report.order_k;
    let (lo, hi) = m.pow(k as u64).degree_range()?;
    let power_slope_minus = Ratio::new(-hi, k);
    let power_slope_plus = Ratio::new(-lo, k);
    let slope_max = slopes.minus.abs().max(slopes.plus.abs());
    let d = report.eventual_displacement;
    let lhs = h_zero.max(ratio_to_f64(slope_max));
    let violation = (lhs - ratio_to_f64(d)).abs();
    let holds =
        slope_max == d && h_zero.abs() <= 1e-12 && (slopes.minus, slopes.plus) == (power_slope_minus, power_slope_plus);
    Ok(MetricBoundsReport {
        displacement: d,
        h_zero,
        slope_minus: slopes.minus,
        slope_plus: slopes.plus,
        power_slope_minus,
        power_slope_plus,
        violation,
        holds,
    })
}

/// Separation of the orbit from the `ε`-ball around `σ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FreeProperReport {
    pub epsilon: f64,
    pub min_separation: f64,
    /// Steps `n` with `d(σ, α^n σ) < 2ε`.
    pub violations: Vec<usize>,
}

impl FreeProperReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// With `ε = d(α)/4`, checks `d(σ, α^n σ) ≥ 2ε` for `1 ≤ n ≤ n_max`.
pub fn verify_free_proper(
    alpha: &AutoEquivalence,
    sigma: &StabilityCondition,
    n_max: usize,
) -> Result<FreeProperReport> {
    let d = exact_report(alpha)?.eventual_displacement;
    if d.is_zero() {
        return Err(Error::NotApplicable("eventual displacement is zero".into()));
    }
    let epsilon = ratio_to_f64(d) / 4.0;
    let dists = orbit_distances(alpha, sigma, n_max)?;
    let violations = (1..=n_max).filter(|&n| dists[n] < 2.0 * epsilon).collect();
    let min_separation = dists[1..].iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(FreeProperReport { epsilon, min_separation, violations })
}

/// The sandwich for the displacement of `α` on `Stab/C`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientBoundsReport {
    pub lower: f64,
    pub upper: f64,
    /// Fekete infimum of `d(σ̄, ᾱ^n σ̄)/n` over `n ≤ n_max`.
    pub estimate: f64,
    /// `2K'/n_max` with `K' = max_{0≤j≤k} d(σ̄, ᾱ^j σ̄)`.
    pub slack: f64,
    pub violation: f64,
}

impl QuotientBoundsReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.violation <= tol
    }
}

pub fn verify_quotient_bounds(
    alpha: &AutoEquivalence,
    sigma: &StabilityCondition,
    n_max: usize,
) -> Result<QuotientBoundsReport> {
    check_size(alpha, sigma)?;
    if n_max < 2 {
        return Err(Error::Domain("n_max must be at least 2".into()));
    }
    let m = alpha.matrix();
    let h_zero = entropy_at(&m, 0.0)?;
    let h_zero_inv = entropy_at(&alpha.inverse().matrix(), 0.0)?;
    let slopes = asymptotic_slopes(&m)?;
    let (minus, plus) = (slopes.minus_f64(), slopes.plus_f64());
    let lower = (0.5 * (h_zero + h_zero_inv)).max(0.5 * (plus - minus));
    let upper = h_zero.max(minus.abs()).max(plus.abs());

    let k = alpha.order() as usize;
    let base = QuotientPoint::new(sigma);
    let mut cur = sigma.clone();
    let mut dists = vec![0.0];
    for _ in 0..n_max.max(k) {
        cur = act(alpha, &cur)?;
        dists.push(quotient_distance(&base, &QuotientPoint::new(&cur))?);
    }
    let estimate = (1..=n_max).map(|n| dists[n] / n as f64).fold(f64::INFINITY, f64::min);
    let slack = 2.0 * dists[..=k].iter().cloned().fold(0.0, f64::max) / n_max as f64;
    let violation = (lower - estimate).max(estimate - upper).max(0.0);
    Ok(QuotientBoundsReport { lower, upper, estimate, slack, violation })
}

/// Conjugation invariance of mass growth and displacement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjugationReport {
    pub max_gap: f64,
    pub displacement_equal: bool,
    pub translation_length_equal: bool,
}

impl ConjugationReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_gap <= tol && self.displacement_equal && self.translation_length_equal
    }
}

/// Compares `α^{-1} β α` with `β` on a grid of `t`.
pub fn conjugation_invariance_check(
    alpha: &AutoEquivalence,
    beta: &AutoEquivalence,
    grid: &[f64],
) -> Result<ConjugationReport> {
    let conj = alpha.inverse().compose(beta)?.compose(alpha)?;
    let mut max_gap = 0.0f64;
    for &t in grid {
        max_gap = max_gap.max((mass_growth_exact(&conj, t)? - mass_growth_exact(beta, t)?).abs());
    }
    let (a, b) = (exact_report(&conj)?, exact_report(beta)?);
    Ok(ConjugationReport {
        max_gap,
        displacement_equal: a.eventual_displacement == b.eventual_displacement,
        translation_length_equal: a.translation_length == b.translation_length,
    })
}
