//! The truncated tensor algebra over `R^d`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::{shuffle, Word};

/// A truncated series `Σ ⟨F,w⟩ w` over words of length at most `level`.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSeries<S> {
    dim: usize,
    level: usize,
    coeffs: BTreeMap<Word, S>,
}

impl<S: Scalar> TensorSeries<S> {
    pub fn zero(dim: usize, level: usize) -> Self {
        TensorSeries { dim, level, coeffs: BTreeMap::new() }
    }

    /// The unit `ε`: coefficient 1 on the empty word.
    pub fn unit(dim: usize, level: usize) -> Self {
        let mut t = Self::zero(dim, level);
        t.coeffs.insert(Word::empty(), S::one());
        t
    }

    /// Builds a series from `(word, coefficient)` pairs, summing repeated words.
    pub fn from_terms<I>(dim: usize, level: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, S)>,
    {
        let mut t = Self::zero(dim, level);
        for (w, c) in terms {
            t.check_word(&w)?;
            t.add_to(w, c);
        }
        Ok(t)
    }

    /// Single-letter Lie element `Σ x_i · i`.
    pub fn from_increment(x: &[S], level: usize) -> Self {
        let mut t = Self::zero(x.len(), level);
        if level >= 1 {
            for (i, xi) in x.iter().enumerate() {
                t.add_to(Word::letter(i as u8 + 1), xi.clone());
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> usize {
        self.level
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.max_letter() as usize > self.dim {
            return Err(Error::LetterOutOfRange { letter: w.max_letter(), dim: self.dim });
        }
        if w.len() > self.level {
            return Err(Error::WordTooLong { word: w.clone(), level: self.level });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch { expected: self.level, found: other.level });
        }
        Ok(())
    }

    /// Adds `c` to the coefficient of `w`, silently dropping words above the level.
    pub(crate) fn add_to(&mut self, w: Word, c: S) {
        if w.len() > self.level || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `⟨F, w⟩`, zero when absent.
    pub fn coeff(&self, w: &Word) -> S {
        self.coeffs.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeff_ref(&self, w: &Word) -> Option<&S> {
        self.coeffs.get(w)
    }

    pub fn set(&mut self, w: Word, c: S) -> Result<()> {
        self.check_word(&w)?;
        if c.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, c);
        }
        Ok(())
    }

    /// Nonzero terms in canonical word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Projection onto words of length exactly `k`.
    pub fn level_part(&self, k: usize) -> Self {
        let mut t = Self::zero(self.dim, self.level);
        for (w, c) in self.coeffs.iter().filter(|(w, _)| w.len() == k) {
            t.coeffs.insert(w.clone(), c.clone());
        }
        t
    }

    /// Projection `π_{≤n}`; also lowers the stored level to `n`.
    pub fn truncate(&self, n: usize) -> Self {
        TensorSeries {
            dim: self.dim,
            level: n.min(self.level),
            coeffs: self.coeffs.iter().filter(|(w, _)| w.len() <= n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut t = self.clone();
        for (w, c) in &other.coeffs {
            t.add_to(w.clone(), c.clone());
        }
        Ok(t)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut t = Self::zero(self.dim, self.level);
        for (w, c) in &self.coeffs {
            t.add_to(w.clone(), c.clone() * s);
        }
        t
    }

    /// Concatenation product, truncated at the common level.
    pub fn concat_product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut t = Self::zero(self.dim, self.level);
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                if u.len() + v.len() > self.level {
                    // Words are sorted by length, so later `v` are longer.
                    break;
                }
                t.add_to(u.concat(v), a.clone() * b);
            }
        }
        Ok(t)
    }

    /// `Σ_{k≤n} L^k / k!`; requires `⟨L, 𝖾⟩ = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(&Word::empty()).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut sum = Self::unit(self.dim, self.level);
        let mut term = Self::unit(self.dim, self.level);
        for k in 1..=self.level {
            term = term.concat_product(self)?.scale(&(S::one() / S::from_i64(k as i64)));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term)?;
        }
        Ok(sum)
    }

    /// `Σ_{k≤n} (-1)^{k-1} (G-ε)^k / k`; requires `⟨G, 𝖾⟩ = 1`.
    pub fn log(&self) -> Result<Self> {
        if self.coeff(&Word::empty()) != S::one() {
            return Err(Error::NotGroupLike);
        }
        let x = self.sub(&Self::unit(self.dim, self.level))?;
        let mut sum = Self::zero(self.dim, self.level);
        let mut power = Self::unit(self.dim, self.level);
        for k in 1..=self.level {
            power = power.concat_product(&x)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { S::one() } else { -S::one() };
            sum = sum.add(&power.scale(&(sign / S::from_i64(k as i64))))?;
        }
        Ok(sum)
    }

    /// `⟨F, Σ c_w w⟩` for a finite word combination.
    pub fn pair(&self, combination: &BTreeMap<Word, u64>) -> S {
        let mut acc = S::zero();
        for (w, &m) in combination {
            if let Some(c) = self.coeffs.get(w) {
                acc += c.clone() * S::from_i64(m as i64);
            }
        }
        acc
    }

    /// Checks the shuffle relations `⟨F,u⟩⟨F,v⟩ = ⟨F,u⧢v⟩` (and `⟨F,𝖾⟩ = 1`).
    ///
    /// Floating comparisons use `tol` relative to the magnitudes involved.
    pub fn is_character(&self, tol: f64) -> bool {
        if !close(&self.coeff(&Word::empty()), &S::one(), tol) {
            return false;
        }
        self.shuffle_pairs(tol, |f, u, v, s| close(&(f.coeff(u) * &f.coeff(v)), s, tol))
    }

    /// Checks `⟨F,𝖾⟩ = 0` and `⟨F, u⧢v⟩ = 0` for nonempty `u`, `v`.
    pub fn is_infinitesimal(&self, tol: f64) -> bool {
        if !close(&self.coeff(&Word::empty()), &S::zero(), tol) {
            return false;
        }
        let scale = self.max_abs();
        self.shuffle_pairs(tol, |_, _, _, s| close(s, &S::zero(), tol * scale.max(1.0)))
    }

    fn shuffle_pairs<F>(&self, _tol: f64, mut check: F) -> bool
    where
        F: FnMut(&Self, &Word, &Word, &S) -> bool,
    {
        let n = self.level;
        for a in 1..n {
            for b in a..=(n - a) {
                for u in Word::all_of_length(self.dim, a) {
                    for v in Word::all_of_length(self.dim, b) {
                        if a == b && v < u {
                            continue;
                        }
                        let s = self.pair(&shuffle(&u, &v));
                        if !check(self, &u, &v, &s) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Largest absolute coefficient, as a double.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Coefficientwise conversion into another scalar field.
    pub fn convert<T: Scalar>(&self) -> TensorSeries<T> {
        let mut t = TensorSeries::zero(self.dim, self.level);
        for (w, c) in &self.coeffs {
            t.add_to(w.clone(), T::from_f64(c.to_f64()));
        }
        t
    }

    /// Dense level-`k` coefficients, indexed by [`Word::dense_index`].
    pub(crate) fn dense_level(&self, k: usize) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim.pow(k as u32)];
        for (w, c) in self.coeffs.iter().filter(|(w, _)| w.len() == k) {
            out[w.dense_index(self.dim)] = c.clone();
        }
        out
    }
}

/// The shuffle `u ⧢ v` as a series with integer coefficients.
pub fn shuffle_series<S: Scalar>(u: &Word, v: &Word, dim: usize, level: usize) -> Result<TensorSeries<S>> {
    TensorSeries::from_terms(
        dim,
        level.max(u.len() + v.len()),
        shuffle(u, v).into_iter().map(|(w, m)| (w, S::from_i64(m as i64))),
    )
}

fn close<S: Scalar>(a: &S, b: &S, tol: f64) -> bool {
    if S::EXACT {
        return a == b;
    }
    let (x, y) = (a.to_f64(), b.to_f64());
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}
