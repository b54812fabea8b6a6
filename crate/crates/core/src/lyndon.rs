//! Lyndon words, the Lyndon bracket basis and coordinates of the first kind.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::tensor::TensorSeries;
use crate::word::Word;

/// Default relative tolerance for the Lie residual check in floating mode.
pub const LIE_TOL: f64 = 1e-9;

/// A word strictly smaller than each of its proper suffixes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord(Word);

pub fn is_lyndon(w: &Word) -> bool {
    if w.is_empty() {
        return false;
    }
    let l = w.letters();
    (1..l.len()).all(|i| l < &l[i..])
}

impl LyndonWord {
    pub fn new(w: Word) -> Result<Self> {
        if is_lyndon(&w) {
            Ok(LyndonWord(w))
        } else {
            Err(Error::NotLyndon(w))
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let w = Word::parse(s).ok_or_else(|| Error::InvalidArgument(format!("bad word {s:?}")))?;
        Self::new(w)
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `h = uv` with `v` the longest proper Lyndon suffix; `None` for letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        let l = self.0.letters();
        (1..l.len()).find_map(|i| {
            let v = Word::from_letters(&l[i..]);
            is_lyndon(&v).then(|| (LyndonWord(Word::from_letters(&l[..i])), LyndonWord(v)))
        })
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lyndon({})", self.0)
    }
}

impl From<LyndonWord> for Word {
    fn from(h: LyndonWord) -> Word {
        h.0
    }
}

type Cache<K, V> = OnceLock<RwLock<HashMap<K, Arc<V>>>>;

/// All Lyndon words of length `1..=n`, ascending length then lexicographic.
pub fn lyndon_words(d: usize, n: usize) -> Vec<LyndonWord> {
    static CACHE: Cache<(usize, usize), Vec<LyndonWord>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&(d, n)) {
        return v.as_ref().clone();
    }
    let mut out = duval(d, n);
    out.sort();
    cache.write().unwrap().insert((d, n), Arc::new(out.clone()));
    out
}

/// Duval's generation of Lyndon words up to length `n` over `d` letters.
fn duval(d: usize, n: usize) -> Vec<LyndonWord> {
    let mut out = Vec::new();
    if d == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![1];
    loop {
        out.push(LyndonWord(Word::from_letters(&w)));
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(d as u8)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Integer word expansion of the bracket `b_h`, memoized.
fn bracket_integer(h: &LyndonWord) -> Arc<BTreeMap<Word, i64>> {
    static CACHE: Cache<Word, BTreeMap<Word, i64>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(h.word()) {
        return v.clone();
    }
    let expansion = match h.standard_factorization() {
        None => BTreeMap::from([(h.word().clone(), 1)]),
        Some((u, v)) => {
            let (bu, bv) = (bracket_integer(&u), bracket_integer(&v));
            let mut out: BTreeMap<Word, i64> = BTreeMap::new();
            for (x, a) in bu.iter() {
                for (y, b) in bv.iter() {
                    *out.entry(x.concat(y)).or_insert(0) += a * b;
                    *out.entry(y.concat(x)).or_insert(0) -= a * b;
                }
            }
            out.retain(|_, c| *c != 0);
            out
        }
    };
    let expansion = Arc::new(expansion);
    cache.write().unwrap().insert(h.word().clone(), expansion.clone());
    expansion
}

/// The bracket `b_h` expanded in the word basis, homogeneous of degree `|h|`.
pub fn bracket_expand<S: Scalar>(h: &LyndonWord, dim: usize) -> TensorSeries<S> {
    let mut t = TensorSeries::zero(dim, h.len());
    for (w, c) in bracket_integer(h).iter() {
        t.add_to(w.clone(), S::from_i64(*c));
    }
    t
}

/// Coordinates `c_h` of a Lie element in the Lyndon bracket basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LieCoordinates<S> {
    dim: usize,
    level: usize,
    coords: BTreeMap<LyndonWord, S>,
}

impl<S: Scalar> LieCoordinates<S> {
    pub fn zero(dim: usize, level: usize) -> Self {
        LieCoordinates { dim, level, coords: BTreeMap::new() }
    }

    /// Builds coordinates from `(word, value)` pairs; words must be Lyndon.
    pub fn from_pairs<I>(dim: usize, level: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, S)>,
    {
        let mut c = Self::zero(dim, level);
        for (w, v) in pairs {
            c.set(&w, v)?;
        }
        Ok(c)
    }

    /// Convenience for literals like `[("1", x), ("12", y)]`.
    pub fn from_strs(dim: usize, level: usize, pairs: &[(&str, S)]) -> Result<Self> {
        let mut c = Self::zero(dim, level);
        for (s, v) in pairs {
            let w = Word::parse(s).ok_or_else(|| Error::InvalidArgument(format!("bad word {s:?}")))?;
            c.set(&w, v.clone())?;
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn set(&mut self, w: &Word, v: S) -> Result<()> {
        if w.max_letter() as usize > self.dim {
            return Err(Error::LetterOutOfRange { letter: w.max_letter(), dim: self.dim });
        }
        if w.len() > self.level {
            return Err(Error::WordTooLong { word: w.clone(), level: self.level });
        }
        let h = LyndonWord::new(w.clone())?;
        if v.is_zero() {
            self.coords.remove(&h);
        } else {
            self.coords.insert(h, v);
        }
        Ok(())
    }

    /// `c_w`, zero for absent or non-Lyndon words.
    pub fn get(&self, w: &Word) -> S {
        self.coords.get(&LyndonWord(w.clone())).cloned().unwrap_or_else(S::zero)
    }

    /// `c_w` for a word literal such as `"112"`.
    pub fn get_str(&self, s: &str) -> S {
        Word::parse(s).map(|w| self.get(&w)).unwrap_or_else(S::zero)
    }

    /// Nonzero coordinates in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&LyndonWord, &S)> {
        self.coords.iter()
    }

    /// All coordinates (zeros included) in canonical Lyndon order.
    pub fn dense(&self) -> Vec<(LyndonWord, S)> {
        lyndon_words(self.dim, self.level)
            .into_iter()
            .map(|h| {
                let v = self.coords.get(&h).cloned().unwrap_or_else(S::zero);
                (h, v)
            })
            .collect()
    }

    pub fn truncate(&self, n: usize) -> Self {
        LieCoordinates {
            dim: self.dim,
            level: n.min(self.level),
            coords: self.coords.iter().filter(|(h, _)| h.len() <= n).map(|(h, v)| (h.clone(), v.clone())).collect(),
        }
    }

    /// `Σ c_h b_h` in the word basis.
    pub fn expand(&self) -> TensorSeries<S> {
        let mut t = TensorSeries::zero(self.dim, self.level);
        for (h, c) in &self.coords {
            for (w, m) in bracket_integer(h).iter() {
                t.add_to(w.clone(), c.clone() * S::from_i64(*m));
            }
        }
        t
    }

    /// Largest absolute coordinate among words of length `k`.
    pub fn max_abs_at_level(&self, k: usize) -> f64 {
        self.coords.iter().filter(|(h, _)| h.len() == k).map(|(_, c)| c.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn convert<T: Scalar>(&self) -> LieCoordinates<T> {
        let mut c = LieCoordinates::zero(self.dim, self.level);
        for (h, v) in &self.coords {
            let t = T::from_f64(v.to_f64());
            if !t.is_zero() {
                c.coords.insert(h.clone(), t);
            }
        }
        c
    }
}

/// Lyndon coordinates of a Lie element, with the floating tolerance [`LIE_TOL`].
pub fn tensor_to_lyndon<S: Scalar>(l: &TensorSeries<S>) -> Result<LieCoordinates<S>> {
    tensor_to_lyndon_tol(l, LIE_TOL)
}

/// Lyndon coordinates by level-wise back-substitution.
///
/// Lyndon words of each length are processed in increasing lexicographic
/// order; since `b_h = h + (larger words)`, the current residual's coefficient
/// on `h` is `c_h`. A nonzero final residual (relative to `tol` in floating
/// mode, exactly in rational mode) means the input was not a Lie element.
pub fn tensor_to_lyndon_tol<S: Scalar>(l: &TensorSeries<S>, tol: f64) -> Result<LieCoordinates<S>> {
    let (dim, level) = (l.dim(), l.level());
    let mut coords = LieCoordinates::zero(dim, level);
    let lyndon = lyndon_words(dim, level);
    let scale = l.max_abs().max(1.0);
    if !l.coeff(&Word::empty()).is_negligible(tol * scale) {
        return Err(Error::NotLieElement { word: Word::empty() });
    }
    for k in 1..=level {
        let mut residual: BTreeMap<Word, S> =
            l.iter().filter(|(w, _)| w.len() == k).map(|(w, c)| (w.clone(), c.clone())).collect();
        for h in lyndon.iter().filter(|h| h.len() == k) {
            let Some(c) = residual.get(h.word()).cloned() else { continue };
            for (w, m) in bracket_integer(h).iter() {
                let e = residual.entry(w.clone()).or_insert_with(S::zero);
                *e -= c.clone() * S::from_i64(*m);
            }
            residual.retain(|_, v| !v.is_zero());
            if !c.is_zero() {
                coords.coords.insert(h.clone(), c);
            }
        }
        if let Some((w, _)) = residual.iter().find(|(_, v)| !v.is_negligible(tol * scale)) {
            return Err(Error::NotLieElement { word: w.clone() });
        }
    }
    Ok(coords)
}

/// An element of `R^d ⊕ so(d)`: the level-1 vector and the skew matrix of level-2 coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Level2Pair<S> {
    pub v: Vec<S>,
    pub m: Matrix<S>,
}

impl<S: Scalar> Level2Pair<S> {
    /// Validates sizes and antisymmetry.
    pub fn new(v: Vec<S>, m: Matrix<S>) -> Result<Self> {
        let d = v.len();
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: m.rows() });
        }
        for i in 0..d {
            for j in 0..d {
                if m[(i, j)] != -m[(j, i)].clone() && (S::EXACT || !m[(i, j)].approx_eq(&-m[(j, i)].clone(), 1e-12)) {
                    return Err(Error::InvalidArgument("matrix is not antisymmetric".into()));
                }
            }
        }
        Ok(Level2Pair { v, m })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// Entries `M_ij` for `i < j`, row by row.
    pub fn upper_triangle(&self) -> Vec<S> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                out.push(self.m[(i, j)].clone());
            }
        }
        out
    }
}

/// `v_i = c_i`, `M_ij = c_ij = -M_ji` for `i < j`.
pub fn lyndon_to_level2<S: Scalar>(c: &LieCoordinates<S>) -> Level2Pair<S> {
    let d = c.dim();
    let v = (1..=d).map(|i| c.get(&Word::letter(i as u8))).collect();
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i + 1..d {
            let x = c.get(&Word::from_letters(&[i as u8 + 1, j as u8 + 1]));
            m[(j, i)] = -x.clone();
            m[(i, j)] = x;
        }
    }
    Level2Pair { v, m }
}

/// Inverse of [`lyndon_to_level2`], at truncation level 2.
pub fn level2_to_lyndon<S: Scalar>(p: &Level2Pair<S>) -> LieCoordinates<S> {
    let d = p.dim();
    let mut c = LieCoordinates::zero(d, 2);
    for i in 0..d {
        if !p.v[i].is_zero() {
            c.coords.insert(LyndonWord(Word::letter(i as u8 + 1)), p.v[i].clone());
        }
        for j in i + 1..d {
            if !p.m[(i, j)].is_zero() {
                c.coords.insert(LyndonWord(Word::from_letters(&[i as u8 + 1, j as u8 + 1])), p.m[(i, j)].clone());
            }
        }
    }
    c
}
