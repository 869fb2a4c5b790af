//! Laurent polynomials with nonnegative integer coefficients and square
//! matrices over them.
//!
//! A matrix `M(z)` encodes an exact endofunctor of `D^b(F)`: entry `(j, i)`
//! is the Poincaré polynomial of the kernel component sending `S_i` to
//! `S_j`, with the convention that `z^m` stands for the shift `[-m]`.
//! Coefficients are arbitrary precision so that powers never overflow.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite sum `Σ c_d z^d` with `c_d > 0`. The zero polynomial is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigUint>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `coeff · z^degree`; a zero coefficient gives the zero polynomial.
    pub fn monomial(degree: i64, coeff: u64) -> Self {
        Self::from_terms([(degree, coeff)])
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs. Repeated
    /// degrees are summed and zero coefficients dropped.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, u64)>,
    {
        Self::from_big_terms(terms.into_iter().map(|(d, c)| (d, BigUint::from(c))))
    }

    pub fn from_big_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigUint)>,
    {
        let mut coeffs: BTreeMap<i64, BigUint> = BTreeMap::new();
        for (d, c) in terms {
            if c.is_zero() {
                continue;
            }
            *coeffs.entry(d).or_default() += c;
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigUint)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn coeff(&self, degree: i64) -> BigUint {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Multiplication by `z^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect() }
    }

    /// Sum of the coefficients, i.e. the value at `z = 1`.
    pub fn at_one(&self) -> BigUint {
        self.coeffs.values().sum()
    }

    /// Evaluates `Σ c_d x^d` at a positive real `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x <= 0.0 || !x.is_finite() {
            return Err(Error::NonPositiveBase(x));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let ln_x = x.ln();
        self.coeffs.iter().map(|(d, c)| big_to_f64(c) * (*d as f64 * ln_x).exp()).sum()
    }
}

fn big_to_f64(c: &BigUint) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (d, c) in &rhs.coeffs {
            *coeffs.entry(*d).or_default() += c;
        }
        LaurentPoly { coeffs }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, BigUint> = BTreeMap::new();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                *coeffs.entry(da + db).or_default() += ca * cb;
            }
        }
        LaurentPoly { coeffs }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest degree first
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let unit = c.is_one();
            match (*d, unit) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{c}z")?,
                (d, true) => write!(f, "z^{d}")?,
                (d, false) => write!(f, "{c}z^{d}")?,
            }
        }
        Ok(())
    }
}

/// Coefficients are written as JSON integers when they fit in a `u64`
/// and as decimal strings otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(u64),
    Big(String),
}

impl From<&BigUint> for CoeffRepr {
    fn from(c: &BigUint) -> Self {
        match c.to_u64() {
            Some(v) => CoeffRepr::Small(v),
            None => CoeffRepr::Big(c.to_str_radix(10)),
        }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (d, c) in &self.coeffs {
            seq.serialize_element(&(*d, CoeffRepr::from(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i64, CoeffRepr)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (d, c) in raw {
            let c = match c {
                CoeffRepr::Small(v) => BigUint::from(v),
                CoeffRepr::Big(s) => {
                    s.parse::<BigUint>().map_err(|e| de::Error::custom(format!("bad coefficient `{s}`: {e}")))?
                }
            };
            terms.push((d, c));
        }
        Ok(LaurentPoly::from_big_terms(terms))
    }
}

/// Square matrix of Laurent polynomials, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    size: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(size * size);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::NotSquare { rows: size, row: r, len: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { size, entries })
    }

    pub fn zero(size: usize) -> Self {
        assert!(size > 0, "matrix size must be at least 1");
        Self { size, entries: vec![LaurentPoly::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        Self::scalar(size, &LaurentPoly::one())
    }

    /// `p · I`.
    pub fn scalar(size: usize, p: &LaurentPoly) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.entries[i * size + i] = p.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: LaurentPoly) {
        self.entries[row * self.size + col] = p;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly]> + '_ {
        self.entries.chunks(self.size)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// Exact matrix product `self · rhs`.
    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.size != rhs.size {
            return Err(Error::SizeMismatch { left: self.size, right: rhs.size });
        }
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let slot = &mut out.entries[i * n + j];
                    *slot = &*slot + &prod;
                }
            }
        }
        Ok(out)
    }

    /// `self^n` by repeated squaring, with `self^0 = I`.
    pub fn pow(&self, mut n: u64) -> LaurentMatrix {
        let mut result = Self::identity(self.size);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base).expect("same size");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same size");
            }
        }
        result
    }

    /// Entrywise multiplication by `z^k`; `z^{-n}·M` is the functor `α[n]`.
    pub fn shifted(&self, k: i64) -> LaurentMatrix {
        Self { size: self.size, entries: self.entries.iter().map(|p| p.shifted(k)).collect() }
    }

    pub fn add(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.size != rhs.size {
            return Err(Error::SizeMismatch { left: self.size, right: rhs.size });
        }
        Ok(Self { size: self.size, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() })
    }

    /// The integer matrix `M(1)`, row-major.
    pub fn at_one(&self) -> Vec<BigUint> {
        self.entries.iter().map(LaurentPoly::at_one).collect()
    }

    /// True iff `M^{|F|} = 0`.
    ///
    /// Decided on the integer matrix `M(1)`: since all coefficients are
    /// nonnegative, an entry of `M(z)^n` vanishes iff the same entry of
    /// `M(1)^n` does.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.size;
        let a = self.at_one();
        let mut p = a.clone();
        for _ in 1..n {
            let mut next = vec![BigUint::zero(); n * n];
            for i in 0..n {
                for k in 0..n {
                    if p[i * n + k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if !a[k * n + j].is_zero() {
                            next[i * n + j] += &p[i * n + k] * &a[k * n + j];
                        }
                    }
                }
            }
            p = next;
        }
        p.iter().all(Zero::is_zero)
    }

    /// `(d, D)`: the lowest and highest powers of `z` over all entries.
    pub fn degree_range(&self) -> Result<(i64, i64)> {
        let lo = self.entries.iter().filter_map(LaurentPoly::min_degree).min();
        let hi = self.entries.iter().filter_map(LaurentPoly::max_degree).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            _ => Err(Error::ZeroMatrix),
        }
    }

    /// Entrywise evaluation at a positive real.
    pub fn eval(&self, x: f64) -> Result<DMatrix<f64>> {
        if x <= 0.0 || !x.is_finite() {
            return Err(Error::NonPositiveBase(x));
        }
        let n = self.size;
        Ok(DMatrix::from_fn(n, n, |i, j| self.get(i, j).eval_unchecked(x)))
    }

    /// Uniformly random matrix; see [`RandomLaurentParams`].
    pub fn random<R: Rng + ?Sized>(rng: &mut R, params: &RandomLaurentParams) -> LaurentMatrix {
        let size = rng.random_range(params.min_size..=params.max_size);
        let mut m = Self::zero(size);
        for slot in m.entries.iter_mut() {
            if !rng.random_bool(params.density) {
                continue;
            }
            let terms = rng.random_range(1..=params.max_terms);
            *slot = LaurentPoly::from_terms((0..terms).map(|_| {
                (rng.random_range(params.min_degree..=params.max_degree), rng.random_range(1..=params.max_coeff))
            }));
        }
        m
    }

    /// Draws random matrices until one is not nilpotent.
    pub fn random_non_nilpotent<R: Rng + ?Sized>(rng: &mut R, params: &RandomLaurentParams) -> LaurentMatrix {
        loop {
            let m = Self::random(rng, params);
            if !m.is_nilpotent() {
                return m;
            }
        }
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, p) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for LaurentMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[LaurentPoly]> = self.rows().collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<LaurentPoly>> = Vec::deserialize(deserializer)?;
        LaurentMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

/// Shape of random Laurent matrices used by sweeps and tests.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomLaurentParams {
    pub min_size: usize,
    pub max_size: usize,
    /// Probability that an entry is nonzero.
    pub density: f64,
    pub max_terms: usize,
    pub min_degree: i64,
    pub max_degree: i64,
    pub max_coeff: u64,
}

impl Default for RandomLaurentParams {
    fn default() -> Self {
        Self { min_size: 1, max_size: 4, density: 0.6, max_terms: 3, min_degree: -5, max_degree: 5, max_coeff: 3 }
    }
}
