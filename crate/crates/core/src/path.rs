//! Piecewise-linear paths and their (log-)signatures.

use crate::error::{Error, Result};
use crate::lyndon::{tensor_to_lyndon, LieCoordinates};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::tensor::TensorSeries;
use crate::word::Word;

/// Linear interpolation of an ordered list of points in `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinearPath<S> {
    dim: usize,
    points: Vec<Vec<S>>,
}

impl<S: Scalar> PiecewiseLinearPath<S> {
    pub fn new(points: Vec<Vec<S>>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyPath)?.len();
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        Ok(PiecewiseLinearPath { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn increments(&self) -> impl Iterator<Item = Vec<S>> + '_ {
        self.points.windows(2).map(|w| w[1].iter().zip(&w[0]).map(|(b, a)| b.clone() - a.clone()).collect())
    }

    /// `A·Z`, applied pointwise.
    pub fn transformed(&self, a: &Matrix<S>) -> Result<Self> {
        let points = self.points.iter().map(|p| a.mul_vec(p)).collect::<Result<Vec<_>>>()?;
        Ok(PiecewiseLinearPath { dim: a.rows(), points })
    }

    pub fn translated(&self, b: &[S]) -> Result<Self> {
        if b.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: b.len() });
        }
        let points = self.points.iter().map(|p| p.iter().zip(b).map(|(x, y)| x.clone() + y).collect()).collect();
        Ok(PiecewiseLinearPath { dim: self.dim, points })
    }

    /// `Z₁ ⋆ Z₂`: `other` translated to start where `self` ends.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let end = self.points.last().expect("non-empty");
        let start = &other.points[0];
        let shift: Vec<S> = end.iter().zip(start).map(|(e, s)| e.clone() - s.clone()).collect();
        let mut points = self.points.clone();
        points.extend(other.translated(&shift)?.points.into_iter().skip(1));
        Ok(PiecewiseLinearPath { dim: self.dim, points })
    }

    /// The same trace run backwards.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        PiecewiseLinearPath { dim: self.dim, points }
    }
}

/// Signature of a straight segment: `⟨S, w⟩ = ∏ x_{w_k} / |w|!`.
pub fn segment_signature<S: Scalar>(increment: &[S], level: usize) -> TensorSeries<S> {
    let d = increment.len();
    let mut out = TensorSeries::unit(d, level);
    let mut prev: Vec<(Word, S)> = vec![(Word::empty(), S::one())];
    for k in 1..=level {
        let inv_k = S::one() / S::from_i64(k as i64);
        let mut next = Vec::with_capacity(prev.len() * d);
        for (w, c) in &prev {
            for (a, x) in increment.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(a as u8 + 1);
                next.push((w2, c.clone() * x * &inv_k));
            }
        }
        for (w, c) in &next {
            out.add_to(w.clone(), c.clone());
        }
        prev = next;
    }
    out
}

/// Ordered Chen product of the segment signatures.
pub fn path_signature<S: Scalar>(z: &PiecewiseLinearPath<S>, level: usize) -> TensorSeries<S> {
    z.increments().fold(TensorSeries::unit(z.dim(), level), |acc, inc| {
        acc.concat_product(&segment_signature(&inc, level)).expect("compatible by construction")
    })
}

/// `tensor_to_lyndon(log(path_signature(Z, n)))`.
pub fn log_signature<S: Scalar>(z: &PiecewiseLinearPath<S>, level: usize) -> Result<LieCoordinates<S>> {
    tensor_to_lyndon(&path_signature(z, level).log()?)
}

/// Exact signature of `t ↦ (t^{k_1}, …, t^{k_d})` on `[0, 1]`:
/// `⟨S, w⟩ = ∏_j k_{w_j} / (k_{w_1} + … + k_{w_j})`.
pub fn polynomial_moment_signature<S: Scalar>(exponents: &[u32], level: usize) -> Result<TensorSeries<S>> {
    if exponents.contains(&0) {
        return Err(Error::InvalidArgument("exponents must be positive".into()));
    }
    let d = exponents.len();
    let mut out = TensorSeries::unit(d, level);
    // (word, coefficient, exponent sum)
    let mut prev: Vec<(Word, S, i64)> = vec![(Word::empty(), S::one(), 0)];
    for _ in 1..=level {
        let mut next = Vec::with_capacity(prev.len() * d);
        for (w, c, total) in &prev {
            for (a, &k) in exponents.iter().enumerate() {
                let mut w2 = w.clone();
                w2.push(a as u8 + 1);
                let t = total + k as i64;
                next.push((w2, c.clone() * S::from_ratio(k as i64, t), t));
            }
        }
        for (w, c, _) in &next {
            out.add_to(w.clone(), c.clone());
        }
        prev = next;
    }
    Ok(out)
}

/// `samples + 1` equally spaced points of `t ↦ (t^{k_1}, …, t^{k_d})`.
pub fn sample_moment_curve(exponents: &[u32], samples: usize) -> Result<PiecewiseLinearPath<f64>> {
    let samples = samples.max(1);
    let points = (0..=samples)
        .map(|i| {
            let t = i as f64 / samples as f64;
            exponents.iter().map(|&k| t.powi(k as i32)).collect()
        })
        .collect();
    PiecewiseLinearPath::new(points)
}
