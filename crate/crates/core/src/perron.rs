//! Spectral radius of nonnegative matrices and the entropy function
//! `h_t = log ρ(M(e^{-t}))` of a Laurent matrix.
//!
//! The spectral radius is computed per strongly connected component. Each
//! irreducible block is solved by Noda iteration (inverse iteration shifted
//! by the Collatz–Wielandt upper bound), which keeps the iterate positive and
//! brackets `ρ` between the smallest and largest ratio `(Ax)_i / x_i`.
//! The bracket is computed with positive arithmetic only, so its width is a
//! reliable error estimate even when entries span many orders of magnitude.
//!
//! The asymptotic slopes `lim_{t→±∞} h_t / t` are exact rationals: they are
//! tropical eigenvalues of the degree data, i.e. extremal cycle means of the
//! lowest (for `t → +∞`) and highest (for `t → −∞`) degrees.

use nalgebra::{DMatrix, DVector};
use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::sig17;
use crate::laurent::LaurentMatrix;

/// Stop once the Collatz–Wielandt bracket is this tight (relative).
const BRACKET_TOL: f64 = 1e-14;
const NODA_MAX_ITER: usize = 100;
const BALANCE_SWEEPS: usize = 200;
const POWER_MAX_ITER: usize = 200_000;
/// Bracket width accepted from the power-iteration fallback.
const POWER_TOL: f64 = 1e-12;

/// Default grid: 201 uniform points on `[-10, 10]`.
pub fn default_grid() -> Vec<f64> {
    uniform_grid(-10.0, 10.0, 201).expect("valid default grid")
}

/// `n` uniformly spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidGrid("bounds must be finite".into()));
    }
    match n {
        0 => Err(Error::InvalidGrid("need at least one point".into())),
        1 => Ok(vec![lo]),
        _ => {
            if hi <= lo {
                return Err(Error::InvalidGrid(format!("need lo < hi, got {lo}:{hi}")));
            }
            let step = (hi - lo) / (n - 1) as f64;
            Ok((0..n).map(|i| if i + 1 == n { hi } else { lo + step * i as f64 }).collect())
        }
    }
}

fn check_nonnegative(a: &DMatrix<f64>) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare { rows: a.nrows(), row: 0, len: a.ncols() });
    }
    if a.nrows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let v = a[(i, j)];
            if !v.is_finite() {
                return Err(Error::NonFiniteEntry { row: i, col: j });
            }
            if v < 0.0 {
                return Err(Error::NegativeEntry { row: i, col: j, value: v });
            }
        }
    }
    Ok(())
}

/// Strongly connected components that carry at least one cycle, for the
/// directed graph with an edge `i -> j` whenever `edge(i, j)`.
pub(crate) fn cyclic_components(n: usize, edge: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut reach = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            reach[i * n + j] = edge(i, j);
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i * n + k] {
                for j in 0..n {
                    if reach[k * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] || !reach[i * n + i] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&j| reach[i * n + j] && reach[j * n + i]).collect();
        for &j in &comp {
            seen[j] = true;
        }
        out.push(comp);
    }
    out
}

/// Spectral radius of a square matrix with nonnegative finite entries.
pub fn spectral_radius(a: &DMatrix<f64>) -> Result<f64> {
    check_nonnegative(a)?;
    let n = a.nrows();
    let comps = cyclic_components(n, |i, j| a[(i, j)] > 0.0);
    Ok(comps
        .iter()
        .map(|comp| {
            let block = DMatrix::from_fn(comp.len(), comp.len(), |r, c| a[(comp[r], comp[c])]);
            irreducible_radius(&block)
        })
        .fold(0.0, f64::max))
}

/// Collatz–Wielandt ratios `(Ax)_i / x_i` as `(min, max)`.
fn cw_bracket(a: &DMatrix<f64>, x: &DVector<f64>) -> (f64, f64) {
    let y = a * x;
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for i in 0..x.len() {
        let r = y[i] / x[i];
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (lo, hi)
}

/// Osborne balancing: a positive vector `x` such that `X^{-1} A X` has
/// off-diagonal row sums close to its column sums. Used as the starting
/// vector, it removes the scale disparity that otherwise makes the first
/// Noda steps converge only linearly.
fn balancing_scale(a: &DMatrix<f64>) -> DVector<f64> {
    let n = a.nrows();
    let mut x = DVector::from_element(n, 1.0);
    for _ in 0..BALANCE_SWEEPS {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (mut row, mut col) = (0.0, 0.0);
            for j in (0..n).filter(|&j| j != i) {
                row += a[(i, j)] * (x[j] / x[i]);
                col += a[(j, i)] * (x[i] / x[j]);
            }
            if row > 0.0 && col > 0.0 {
                let f = (row / col).sqrt();
                x[i] *= f;
                worst = worst.max(f.ln().abs());
            }
        }
        if worst < 1e-3 {
            break;
        }
    }
    let scale = x.max();
    x / scale
}

fn irreducible_radius(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    if n == 1 {
        return a[(0, 0)];
    }
    let mut x = balancing_scale(a);
    let (mut best_lo, mut best_hi) = cw_bracket(a, &x);

    for _ in 0..NODA_MAX_ITER {
        let (lo, hi) = cw_bracket(a, &x);
        best_lo = best_lo.max(lo);
        best_hi = best_hi.min(hi);
        if best_hi - best_lo <= BRACKET_TOL * best_hi {
            return 0.5 * (best_lo + best_hi);
        }
        // Work in the basis scaled by x so that the solve is well conditioned:
        // C = X^{-1} A X has row sums (Ax)_i / x_i.
        let c = DMatrix::from_fn(n, n, |i, j| a[(i, j)] * x[j] / x[i]);
        // Diagonal of hi·I − C as (hi − row sum) + off-diagonal sum, which
        // avoids cancelling hi against a diagonal entry of the same size.
        let mut shifted = -c.clone();
        for i in 0..n {
            let off: f64 = (0..n).filter(|&j| j != i).map(|j| c[(i, j)]).sum();
            let row_sum = c.row(i).sum();
            shifted[(i, i)] = (hi - row_sum).max(0.0) + off;
        }
        let Some(u) = shifted.lu().solve(&DVector::from_element(n, 1.0)) else {
            break;
        };
        if u.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            break;
        }
        let next = x.component_mul(&u);
        let scale = next.max();
        x = next / scale;
    }

    // Fallback: power iteration on A + εI with ε tied to the current estimate,
    // which makes the block primitive.
    let eps = 1e-2 * best_hi.max(f64::MIN_POSITIVE);
    let shifted = a + DMatrix::from_diagonal_element(n, n, eps);
    for _ in 0..POWER_MAX_ITER {
        let y = &shifted * &x;
        let (lo, hi) = cw_bracket(&shifted, &x);
        best_lo = best_lo.max(lo - eps);
        best_hi = best_hi.min(hi - eps);
        if best_hi - best_lo <= POWER_TOL * best_hi {
            break;
        }
        let scale = y.max();
        x = y / scale;
    }
    0.5 * (best_lo + best_hi)
}

/// Cycle means of a weighted digraph on `n` nodes (`weight[i*n + j]` is the
/// edge `i -> j`, `None` meaning no edge). Returns the minimum (or maximum)
/// mean weight over all cycles, or `None` when the graph is acyclic.
///
/// Karp's algorithm with walks allowed to start at any node.
pub(crate) fn extreme_cycle_mean(n: usize, weight: &[Option<i64>], minimize: bool) -> Option<Ratio<i64>> {
    let sign = if minimize { 1 } else { -1 };
    // dist[k][v]: minimal signed weight of a walk with exactly k edges ending at v
    let mut dist: Vec<Vec<Option<i64>>> = vec![vec![Some(0); n]];
    for k in 1..=n {
        let prev = &dist[k - 1];
        let mut row = vec![None; n];
        for v in 0..n {
            for u in 0..n {
                if let (Some(du), Some(w)) = (prev[u], weight[u * n + v]) {
                    let cand = du + sign * w;
                    row[v] = Some(row[v].map_or(cand, |cur: i64| cur.min(cand)));
                }
            }
        }
        dist.push(row);
    }
    let mut best: Option<Ratio<i64>> = None;
    for (v, dn) in dist[n].iter().enumerate() {
        let Some(dn) = *dn else { continue };
        let worst = (0..n).filter_map(|k| dist[k][v].map(|dk| Ratio::new(dn - dk, (n - k) as i64))).max();
        if let Some(w) = worst {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    best.map(|b| b * sign)
}

/// Limits of `h_t / t` as `t → −∞` (`minus`) and `t → +∞` (`plus`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AsymptoticSlopes {
    pub minus: Ratio<i64>,
    pub plus: Ratio<i64>,
}

impl AsymptoticSlopes {
    pub fn minus_f64(&self) -> f64 {
        ratio_to_f64(self.minus)
    }

    pub fn plus_f64(&self) -> f64 {
        ratio_to_f64(self.plus)
    }
}

pub(crate) fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact asymptotic slopes of `t ↦ log ρ(M(e^{-t}))`.
///
/// As `t → +∞` an entry `Σ c_d e^{-dt}` is dominated by its lowest degree,
/// and the spectral radius grows like `e^{-μ t}` where `μ` is the minimum
/// cycle mean of the lowest degrees; symmetrically for `t → −∞` with the
/// maximum cycle mean of the highest degrees. For `|F| = 1` (or whenever the
/// extremal-degree parts are non-nilpotent) this reduces to `(−D, −d)` with
/// `(d, D)` the degree range.
pub fn asymptotic_slopes(m: &LaurentMatrix) -> Result<AsymptoticSlopes> {
    let n = m.size();
    let mut low = Vec::with_capacity(n * n);
    let mut high = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let p = m.get(i, j);
            low.push(p.min_degree());
            high.push(p.max_degree());
        }
    }
    let min_low = extreme_cycle_mean(n, &low, true).ok_or(Error::Nilpotent)?;
    let max_high = extreme_cycle_mean(n, &high, false).ok_or(Error::Nilpotent)?;
    Ok(AsymptoticSlopes { minus: -max_high, plus: -min_low })
}

fn has_cycle(m: &LaurentMatrix) -> bool {
    !cyclic_components(m.size(), |i, j| !m.get(i, j).is_zero()).is_empty()
}

/// `h_t = log ρ(M(e^{-t}))`.
pub fn entropy_at(m: &LaurentMatrix, t: f64) -> Result<f64> {
    if !has_cycle(m) {
        return Err(Error::Nilpotent);
    }
    let a = m.eval((-t).exp())?;
    Ok(spectral_radius(&a)?.ln())
}

/// One point of the entropy curve together with the data that fixes the
/// piecewise-linear bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropySample {
    pub t: f64,
    pub value: f64,
    pub slope_minus: f64,
    pub slope_plus: f64,
    pub h_zero: f64,
}

impl EntropySample {
    /// `φ⁻ t` for `t ≤ 0`, `φ⁺ t` for `t ≥ 0`.
    pub fn lower_basic(&self) -> f64 {
        if self.t <= 0.0 {
            self.slope_minus * self.t
        } else {
            self.slope_plus * self.t
        }
    }

    /// `h_0 + φ⁻ t` for `t ≤ 0`, `h_0 + φ⁺ t` for `t ≥ 0`.
    pub fn upper_basic(&self) -> f64 {
        if self.t <= 0.0 {
            self.h_zero + self.slope_minus * self.t
        } else {
            self.h_zero + self.slope_plus * self.t
        }
    }

    /// Sharpened lower bound, valid when the category has an algebraic
    /// stability condition (always the case for `D^b(F)`).
    pub fn lower_sharp(&self) -> f64 {
        if self.t <= 0.0 {
            (self.slope_minus * self.t).max(self.h_zero + self.slope_plus * self.t)
        } else {
            (self.slope_plus * self.t).max(self.h_zero + self.slope_minus * self.t)
        }
    }

    /// How far the value sits outside `[lower_sharp, upper_basic]` (0 if inside).
    pub fn violation(&self) -> f64 {
        (self.lower_sharp() - self.value).max(self.value - self.upper_basic()).max(0.0)
    }
}

/// The entropy function sampled on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyCurve {
    pub grid: Vec<f64>,
    pub samples: Vec<EntropySample>,
}

pub const CURVE_CSV_HEADER: &str = "t,h,lower_basic,upper_basic,lower_sharp";

impl EntropyCurve {
    pub fn max_violation(&self) -> f64 {
        self.samples.iter().map(EntropySample::violation).fold(0.0, f64::max)
    }

    /// CSV with header `t,h,lower_basic,upper_basic,lower_sharp`, LF line
    /// endings and 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.samples.len() + 1));
        out.push_str(CURVE_CSV_HEADER);
        out.push('\n');
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                sig17(s.t),
                sig17(s.value),
                sig17(s.lower_basic()),
                sig17(s.upper_basic()),
                sig17(s.lower_sharp())
            ));
        }
        out
    }
}

fn check_grid(grid: &[f64], min_len: usize) -> Result<()> {
    if grid.len() < min_len {
        return Err(Error::InvalidGrid(format!("need at least {min_len} points, got {}", grid.len())));
    }
    if grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidGrid("grid points must be finite".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Samples `h_t` on a strictly increasing grid. Sampling runs in parallel;
/// the result does not depend on scheduling.
pub fn entropy_curve(m: &LaurentMatrix, grid: &[f64]) -> Result<EntropyCurve> {
    check_grid(grid, 1)?;
    let slopes = asymptotic_slopes(m)?;
    let h_zero = entropy_at(m, 0.0)?;
    let (slope_minus, slope_plus) = (slopes.minus_f64(), slopes.plus_f64());
    let samples = grid
        .par_iter()
        .map(|&t| entropy_at(m, t).map(|value| EntropySample { t, value, slope_minus, slope_plus, h_zero }))
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyCurve { grid: grid.to_vec(), samples })
}

/// Result of checking the piecewise-linear region on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub h_zero: f64,
    pub slopes: AsymptoticSlopes,
    pub curve: EntropyCurve,
    pub max_violation: f64,
}

impl BoundReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_violation <= tol
    }
}

/// Checks that `h_t` lies between the sharpened lower bound and the basic
/// upper bound at every grid point.
pub fn check_pl_bounds(m: &LaurentMatrix, grid: &[f64]) -> Result<BoundReport> {
    let slopes = asymptotic_slopes(m)?;
    let curve = entropy_curve(m, grid)?;
    let h_zero = entropy_at(m, 0.0)?;
    let max_violation = curve.max_violation();
    Ok(BoundReport { h_zero, slopes, curve, max_violation })
}

/// Discrete convexity: each interior sample lies on or below the chord
/// through its neighbours, up to `1e-9`.
pub fn convexity_check(m: &LaurentMatrix, grid: &[f64]) -> Result<bool> {
    check_grid(grid, 3)?;
    let curve = entropy_curve(m, grid)?;
    Ok(samples_convex(&curve.samples, 1e-9))
}

pub(crate) fn samples_convex(samples: &[EntropySample], tol: f64) -> bool {
    samples.windows(3).all(|w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        let lam = (b.t - a.t) / (c.t - a.t);
        let chord = (1.0 - lam) * a.value + lam * c.value;
        b.value <= chord + tol
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{LaurentPoly, RandomLaurentParams};
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(terms: &[(i64, u64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn lm(rows: Vec<Vec<LaurentPoly>>) -> LaurentMatrix {
        LaurentMatrix::from_rows(rows).unwrap()
    }

    fn dm(n: usize, vals: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(n, n, vals)
    }

    // -- independent oracles -------------------------------------------------

    /// Characteristic polynomial coefficients (monic, highest first) by
    /// Faddeev–LeVerrier.
    fn char_poly(a: &DMatrix<f64>) -> Vec<f64> {
        let n = a.nrows();
        let mut coeffs = vec![1.0];
        let mut mk = DMatrix::<f64>::zeros(n, n);
        let id = DMatrix::<f64>::identity(n, n);
        let mut c = 1.0;
        for k in 1..=n {
            mk = a * &mk + &id * c;
            let amk = a * &mk;
            c = -amk.trace() / k as f64;
            coeffs.push(c);
        }
        coeffs
    }

    /// All complex roots of a monic polynomial by Durand–Kerner.
    fn roots(coeffs: &[f64]) -> Vec<Complex64> {
        let n = coeffs.len() - 1;
        let eval = |z: Complex64| coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let bound = 1.0 + coeffs[1..].iter().map(|c| c.abs()).fold(0.0, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound).collect();
        for _ in 0..2000 {
            let prev = z.clone();
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                let zi = z[i];
                z[i] = zi - eval(zi) / den;
            }
            let moved = z.iter().zip(&prev).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            if moved < 1e-15 * bound {
                break;
            }
        }
        z
    }

    fn charpoly_radius(a: &DMatrix<f64>) -> f64 {
        roots(&char_poly(a)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `log ||A^(2^s)||^(1/2^s)` with renormalisation at each squaring.
    fn gelfand_log(a: &DMatrix<f64>, squarings: u32) -> f64 {
        let mut m = a.clone();
        let mut log_scale = 0.0;
        for _ in 0..squarings {
            let s = m.amax();
            if s == 0.0 {
                return f64::NEG_INFINITY;
            }
            m /= s;
            log_scale = 2.0 * (log_scale + s.ln());
            m = &m * &m;
        }
        (log_scale + m.norm().ln()) / 2f64.powi(squarings as i32)
    }

    fn random_nonneg(rng: &mut ChaCha8Rng, n: usize, density: f64) -> DMatrix<f64> {
        use rand::Rng;
        DMatrix::from_fn(n, n, |_, _| if rng.random_bool(density) { rng.random_range(0.0..3.0) } else { 0.0 })
    }

    /// Brute-force cycle means by enumerating simple cycles.
    fn brute_cycle_mean(n: usize, w: &[Option<i64>], minimize: bool) -> Option<Ratio<i64>> {
        #[allow(clippy::too_many_arguments)]
        fn go(
            n: usize,
            w: &[Option<i64>],
            start: usize,
            cur: usize,
            used: &mut Vec<bool>,
            len: i64,
            sum: i64,
            out: &mut Vec<Ratio<i64>>,
        ) {
            for next in 0..n {
                let Some(e) = w[cur * n + next] else { continue };
                if next == start {
                    out.push(Ratio::new(sum + e, len + 1));
                } else if next > start && !used[next] {
                    used[next] = true;
                    go(n, w, start, next, used, len + 1, sum + e, out);
                    used[next] = false;
                }
            }
        }
        let mut means = Vec::new();
        for s in 0..n {
            let mut used = vec![false; n];
            used[s] = true;
            go(n, w, s, s, &mut used, 0, 0, &mut means);
        }
        if minimize {
            means.into_iter().min()
        } else {
            means.into_iter().max()
        }
    }

    // -- spectral radius -------------------------------------------------------

    #[test]
    fn radius_examples() {
        assert_eq!(spectral_radius(&dm(1, &[2.0])).unwrap(), 2.0);
        assert!((spectral_radius(&dm(2, &[0.0, 1.0, 1.0, 0.0])).unwrap() - 1.0).abs() < 1e-14);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((spectral_radius(&dm(2, &[1.0, 1.0, 1.0, 0.0])).unwrap() - golden).abs() < 1e-14);
        assert!((golden - 1.6180339887).abs() < 1e-10);
    }

    #[test]
    fn radius_rejects_bad_input() {
        assert!(matches!(
            spectral_radius(&dm(2, &[1.0, -1.0, 0.0, 1.0])),
            Err(Error::NegativeEntry { row: 0, col: 1, .. })
        ));
        assert!(matches!(spectral_radius(&dm(1, &[f64::NAN])), Err(Error::NonFiniteEntry { .. })));
        assert!(spectral_radius(&DMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn radius_of_nilpotent_and_jordan_like() {
        assert_eq!(spectral_radius(&dm(2, &[0.0, 5.0, 0.0, 0.0])).unwrap(), 0.0);
        // reducible with equal block radii: plain power iteration converges like 1/n here
        let r = spectral_radius(&dm(2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r, 1.0);
        let r = spectral_radius(&dm(3, &[2.0, 7.0, 1.0, 0.0, 2.0, 3.0, 0.0, 0.0, 2.0])).unwrap();
        assert_eq!(r, 2.0);
    }

    #[test]
    fn radius_of_long_cycle_and_bad_scaling() {
        // 8-cycle: periodic, all eigenvalues on the circle of radius 3
        let mut a = DMatrix::zeros(8, 8);
        for i in 0..8 {
            a[(i, (i + 1) % 8)] = 3.0;
        }
        assert!((spectral_radius(&a).unwrap() - 3.0).abs() < 1e-13);
        // entries spanning e^{±50}: ρ = 1 exactly
        let big = 50f64.exp();
        let r = spectral_radius(&dm(2, &[0.0, big, 1.0 / big, 0.0])).unwrap();
        assert!((r - 1.0).abs() < 1e-13, "{r}");
    }

    #[test]
    fn radius_matches_charpoly_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..300 {
            let n = 1 + trial % 4;
            let a = random_nonneg(&mut rng, n, 0.7);
            let got = spectral_radius(&a).unwrap();
            let want = charpoly_radius(&a);
            // defective eigenvalues limit the root finder to ~sqrt(eps)
            assert!((got - want).abs() <= 1e-6 * want.max(1.0), "{a} got {got} want {want}");
        }
    }

    #[test]
    fn radius_matches_gelfand() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let a = random_nonneg(&mut rng, 4, 0.8);
            let rho = spectral_radius(&a).unwrap();
            if rho == 0.0 {
                continue;
            }
            let g64 = gelfand_log(&a, 6);
            let g4096 = gelfand_log(&a, 12);
            assert!((g64 - rho.ln()).abs() <= 0.1, "{a}");
            assert!((g4096 - rho.ln()).abs() <= (g64 - rho.ln()).abs() + 1e-12);
        }
    }

    #[test]
    fn radius_blockwise_matches_whole_matrix_roots() {
        // block-triangular 6x6 with random blocks: ρ = max of the block roots
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let b1 = random_nonneg(&mut rng, 3, 0.8);
            let b2 = random_nonneg(&mut rng, 3, 0.8);
            let off = random_nonneg(&mut rng, 3, 0.5);
            let mut a = DMatrix::zeros(6, 6);
            a.view_mut((0, 0), (3, 3)).copy_from(&b1);
            a.view_mut((3, 3), (3, 3)).copy_from(&b2);
            a.view_mut((0, 3), (3, 3)).copy_from(&off);
            let want = charpoly_radius(&b1).max(charpoly_radius(&b2));
            let got = spectral_radius(&a).unwrap();
            assert!((got - want).abs() <= 1e-6 * want.max(1.0));
        }
    }

    // -- cycle means -----------------------------------------------------------

    #[test]
    fn karp_matches_cycle_enumeration() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let n = rng.random_range(1..=5);
            let w: Vec<Option<i64>> =
                (0..n * n).map(|_| rng.random_bool(0.45).then(|| rng.random_range(-5..=5))).collect();
            for minimize in [true, false] {
                assert_eq!(extreme_cycle_mean(n, &w, minimize), brute_cycle_mean(n, &w, minimize), "{w:?}");
            }
        }
    }

    // -- entropy ----------------------------------------------------------------

    #[test]
    fn entropy_monomial_is_linear() {
        for d in [-3i64, 0, 2] {
            let m = lm(vec![vec![p(&[(d, 1)])]]);
            for t in [-4.0, -0.5, 0.0, 1.5, 7.0] {
                assert!((entropy_at(&m, t).unwrap() + d as f64 * t).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn entropy_z_plus_inverse() {
        let m = lm(vec![vec![p(&[(1, 1), (-1, 1)])]]);
        for t in [-10.0f64, -1.0, 0.0, 0.3, 10.0] {
            let want = ((-t).exp() + t.exp()).ln();
            assert!((entropy_at(&m, t).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_identity_and_nilpotent() {
        assert_eq!(entropy_at(&LaurentMatrix::identity(3), 2.5).unwrap(), 0.0);
        let nil = lm(vec![vec![LaurentPoly::zero(), p(&[(0, 1)])], vec![LaurentPoly::zero(), LaurentPoly::zero()]]);
        assert_eq!(entropy_at(&nil, 0.0), Err(Error::Nilpotent));
        assert_eq!(asymptotic_slopes(&nil), Err(Error::Nilpotent));
        assert!(check_pl_bounds(&nil, &[0.0]).is_err());
    }

    #[test]
    fn slopes_examples() {
        let r = |a, b| Ratio::new(a, b);
        let m = lm(vec![vec![p(&[(1, 1), (-1, 1)])]]);
        assert_eq!(asymptotic_slopes(&m).unwrap(), AsymptoticSlopes { minus: r(-1, 1), plus: r(1, 1) });
        let id = LaurentMatrix::identity(2);
        assert_eq!(asymptotic_slopes(&id).unwrap(), AsymptoticSlopes { minus: r(0, 1), plus: r(0, 1) });
        let z3 = lm(vec![vec![p(&[(3, 1)])]]);
        let s = asymptotic_slopes(&z3).unwrap();
        assert_eq!((s.minus, s.plus), (r(-3, 1), r(-3, 1)));
        for t in [-200.0, 200.0] {
            assert!((entropy_at(&z3, t).unwrap() / t + 3.0).abs() < 1e-6);
        }
    }

    #[test]
    fn slopes_differ_from_degree_range_off_the_diagonal() {
        // M^2 = z I, so h_t = -t/2 although the lowest degree is 0
        let swap = lm(vec![vec![LaurentPoly::zero(), p(&[(1, 1)])], vec![LaurentPoly::one(), LaurentPoly::zero()]]);
        let s = asymptotic_slopes(&swap).unwrap();
        assert_eq!((s.minus, s.plus), (Ratio::new(-1, 2), Ratio::new(-1, 2)));
        assert_eq!(swap.degree_range().unwrap(), (0, 1));
        assert!((entropy_at(&swap, 3.0).unwrap() + 1.5).abs() < 1e-12);
        // triangular: the constant entry lies on no cycle
        let tri = lm(vec![vec![p(&[(1, 1)]), LaurentPoly::one()], vec![LaurentPoly::zero(), p(&[(1, 1)])]]);
        let s = asymptotic_slopes(&tri).unwrap();
        assert_eq!(s.plus, Ratio::from_integer(-1));
        assert!((entropy_at(&tri, 5.0).unwrap() + 5.0).abs() < 1e-12);
    }

    #[test]
    fn slopes_match_large_t_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let params = RandomLaurentParams::default();
        for _ in 0..100 {
            let m = LaurentMatrix::random_non_nilpotent(&mut rng, &params);
            let s = asymptotic_slopes(&m).unwrap();
            // h_t = slope·t + c + O(e^{-g|t|}) with a rational gap g; the
            // difference quotient cancels c
            for (t, slope) in [(60.0, s.plus_f64()), (-60.0, s.minus_f64())] {
                let fd = (entropy_at(&m, t).unwrap() - entropy_at(&m, t / 2.0).unwrap()) / (t / 2.0);
                assert!((fd - slope).abs() < 1e-3, "{m}: {fd} vs {slope}");
            }
        }
    }

    #[test]
    fn pl_bounds_examples() {
        let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let m = lm(vec![vec![p(&[(1, 1), (-1, 1)])]]);
        let rep = check_pl_bounds(&m, &grid).unwrap();
        assert_eq!(rep.max_violation, 0.0);
        for s in &rep.curve.samples {
            let t: f64 = s.t;
            assert!((s.lower_sharp() - t.abs().max(2f64.ln() - t.abs())).abs() < 1e-15);
            assert!((s.upper_basic() - (2f64.ln() + t.abs())).abs() < 1e-15);
        }

        let mono = lm(vec![vec![p(&[(2, 1)])]]);
        let rep = check_pl_bounds(&mono, &grid).unwrap();
        assert_eq!(rep.h_zero, 0.0);
        for s in &rep.curve.samples {
            assert_eq!(s.lower_basic(), s.value);
            assert_eq!(s.upper_basic(), s.value);
        }

        let mixed = lm(vec![vec![LaurentPoly::one(), p(&[(1, 1)])], vec![LaurentPoly::one(), LaurentPoly::one()]]);
        let rep = check_pl_bounds(&mixed, &default_grid()).unwrap();
        assert!(rep.h_zero > 0.0);
        assert!((rep.h_zero - 2f64.ln()).abs() < 1e-12);
        assert!(rep.holds(1e-9));
    }

    #[test]
    fn convexity_examples() {
        let grid = default_grid();
        let a = lm(vec![vec![p(&[(1, 1), (-1, 1)])]]);
        let b = lm(vec![vec![p(&[(2, 1)])]]);
        let c = lm(vec![vec![LaurentPoly::one(), p(&[(1, 1)])], vec![p(&[(-1, 1)]), LaurentPoly::one()]]);
        for m in [&a, &b, &c] {
            assert!(convexity_check(m, &grid).unwrap());
        }
        assert!(convexity_check(&a, &[0.0, 1.0]).is_err());
        assert!(convexity_check(&a, &[0.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn concave_samples_are_rejected() {
        let s = |t: f64, value: f64| EntropySample { t, value, slope_minus: 0.0, slope_plus: 0.0, h_zero: 0.0 };
        assert!(!samples_convex(&[s(0.0, 0.0), s(1.0, 1.0), s(2.0, 0.0)], 1e-9));
        assert!(samples_convex(&[s(0.0, 1.0), s(1.0, 0.0), s(3.0, 2.0)], 1e-9));
    }

    #[test]
    fn curve_csv_and_order() {
        let m = lm(vec![vec![p(&[(1, 1), (-1, 1)])]]);
        let curve = entropy_curve(&m, &uniform_grid(-1.0, 1.0, 3).unwrap()).unwrap();
        let csv = curve.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CURVE_CSV_HEADER));
        assert_eq!(lines.next(), Some("-1,1.1269280110429725,1,1.6931471805599454,1"));
        assert!(!csv.contains('\r'));
        let grid: Vec<f64> = curve.samples.iter().map(|s| s.t).collect();
        assert_eq!(grid, vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn uniform_grid_endpoints() {
        let g = default_grid();
        assert_eq!(g.len(), 201);
        assert_eq!((g[0], g[100], g[200]), (-10.0, 0.0, 10.0));
        assert!(uniform_grid(1.0, 0.0, 3).is_err());
        assert_eq!(uniform_grid(2.0, 2.0, 1).unwrap(), vec![2.0]);
    }

    #[test]
    fn nearly_equal_huge_diagonal() {
        // diagonal entries ~7e17 agreeing to 5 digits, coupled through ~1e-5
        // and ~5e21 entries; reference value from 80-digit arithmetic
        let m: LaurentMatrix = serde_json::from_str(
            "[[[],[[-4,3]],[[1,3]],[[0,1],[2,1],[4,3]]],[[],[[-4,3],[-3,3],[1,2]],[[1,1],[4,2]],[]],\
             [[],[[0,1],[5,3]],[[-4,3],[-2,2],[-1,1]],[[-5,1],[-2,2],[-1,3]]],[[],[[-3,3]],[],[[-3,3],[1,2],[4,2]]]]",
        )
        .unwrap();
        let h = entropy_at(&m, 10.0).unwrap();
        assert!((h - 41.098657687567326557).abs() <= 1e-13, "{h}");
        assert!((entropy_at(&m.pow(3), 10.0).unwrap() - 3.0 * h).abs() <= 1e-12);
    }
}
