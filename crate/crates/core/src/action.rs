//! The diagonal action of `O(d)` (and, where harmless, of any square matrix)
//! on tensor series, Lie coordinates and level-2 pairs.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::lyndon::{tensor_to_lyndon, Level2Pair, LieCoordinates};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::tensor::TensorSeries;
use crate::word::Word;

/// Default tolerance for accepting a floating matrix as orthogonal.
pub const ORTHO_TOL: f64 = 1e-10;

/// A square matrix with `A Aᵀ = I` (exactly, or within a tolerance for `f64`).
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalMatrix<S>(Matrix<S>);

impl<S: Scalar> OrthogonalMatrix<S> {
    /// Validates orthogonality with [`ORTHO_TOL`] (exactly in rational mode).
    pub fn new(m: Matrix<S>) -> Result<Self> {
        Self::with_tolerance(m, ORTHO_TOL)
    }

    pub fn with_tolerance(m: Matrix<S>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
        }
        let ok = if S::EXACT {
            m.mul(&m.transpose())? == Matrix::identity(m.rows())
        } else {
            m.orthogonality_defect() <= tol
        };
        if ok {
            Ok(OrthogonalMatrix(m))
        } else {
            Err(Error::NotOrthogonal { deviation: m.orthogonality_defect() })
        }
    }

    pub(crate) fn new_unchecked(m: Matrix<S>) -> Self {
        OrthogonalMatrix(m)
    }

    pub fn identity(d: usize) -> Self {
        OrthogonalMatrix(Matrix::identity(d))
    }

    /// `A e_j = signs[j] e_{perm[j]}` (0-based `perm`).
    pub fn signed_permutation(perm: &[usize], signs: &[i8]) -> Result<Self> {
        let d = perm.len();
        if signs.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: signs.len() });
        }
        let mut m = Matrix::zeros(d, d);
        for (j, (&i, &s)) in perm.iter().zip(signs).enumerate() {
            if i >= d || s.abs() != 1 {
                return Err(Error::InvalidArgument("not a signed permutation".into()));
            }
            m[(i, j)] = S::from_i64(s as i64);
        }
        Self::new(m)
    }

    /// Rotation by `(cos, sin) = ((p²-q²)/(p²+q²), 2pq/(p²+q²))` in the plane
    /// of coordinates `i < j`; exact for rational scalars.
    pub fn pythagorean_rotation(d: usize, i: usize, j: usize, p: i64, q: i64) -> Result<Self> {
        if i >= d || j >= d || i == j || (p == 0 && q == 0) {
            return Err(Error::InvalidArgument("bad rotation plane or parameters".into()));
        }
        let h = S::from_i64(p * p + q * q);
        let c = S::from_i64(p * p - q * q) / h.clone();
        let s = S::from_i64(2 * p * q) / h;
        let mut m = Matrix::identity(d);
        m[(i, i)] = c.clone();
        m[(j, j)] = c;
        m[(i, j)] = -s.clone();
        m[(j, i)] = s;
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.0
    }

    pub fn transpose(&self) -> Self {
        OrthogonalMatrix(self.0.transpose())
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(OrthogonalMatrix(self.0.mul(&other.0)?))
    }

    /// `+1` or `-1`.
    pub fn det_sign(&self) -> i8 {
        if self.0.det().to_f64() < 0.0 {
            -1
        } else {
            1
        }
    }

    pub fn to_f64(&self) -> OrthogonalMatrix<f64> {
        OrthogonalMatrix(self.0.to_f64())
    }
}

/// Seeded sample from `O(d)`: Gram–Schmidt on a Gaussian matrix, which gives
/// the Haar distribution. Both determinant signs occur.
pub fn random_orthogonal(d: usize, seed: u64) -> OrthogonalMatrix<f64> {
    random_orthogonal_with(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_orthogonal_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> OrthogonalMatrix<f64> {
    loop {
        let g: Vec<Vec<f64>> = (0..d).map(|_| (0..d).map(|_| rng.sample(StandardNormal)).collect()).collect();
        if let Some(q) = gram_schmidt(g) {
            // Columns of `q` are the orthonormalized Gaussian columns.
            return OrthogonalMatrix(Matrix::from_fn(d, d, |i, j| q[j][i]));
        }
    }
}

/// Modified Gram–Schmidt on the given vectors; `None` if nearly dependent.
fn gram_schmidt(mut vs: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    for k in 0..vs.len() {
        for j in 0..k {
            let dot: f64 = vs[k].iter().zip(&vs[j]).map(|(a, b)| a * b).sum();
            let prev = vs[j].clone();
            for (x, p) in vs[k].iter_mut().zip(&prev) {
                *x -= dot * p;
            }
        }
        let norm = vs[k].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        for x in vs[k].iter_mut() {
            *x /= norm;
        }
    }
    Some(vs)
}

/// Level-wise Kronecker action: `⟨A·F, i1…ik⟩ = Σ_j a_{i1 j1}⋯a_{ik jk} ⟨F, j1…jk⟩`.
///
/// Defined for any square matrix; for orthogonal `A` this is the diagonal
/// group action and `A·sig(Z) = sig(AZ)`.
pub fn act_on_tensor_by<S: Scalar>(a: &Matrix<S>, f: &TensorSeries<S>) -> Result<TensorSeries<S>> {
    let d = f.dim();
    if a.rows() != d || a.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: a.rows() });
    }
    let mut out = TensorSeries::zero(d, f.level());
    for k in 0..=f.level() {
        let mut x = f.dense_level(k);
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        for mode in 0..k {
            x = apply_mode(a, &x, d, k, mode);
        }
        for (w, c) in Word::all_of_length(d, k).zip(x) {
            out.add_to(w, c);
        }
    }
    Ok(out)
}

/// Multiplies the `mode`-th tensor index of a dense level-`k` block by `a`.
fn apply_mode<S: Scalar>(a: &Matrix<S>, x: &[S], d: usize, k: usize, mode: usize) -> Vec<S> {
    let stride = d.pow((k - 1 - mode) as u32);
    let mut y = vec![S::zero(); x.len()];
    for (idx, slot) in y.iter_mut().enumerate() {
        let i = (idx / stride) % d;
        let base = idx - i * stride;
        let mut acc = S::zero();
        for j in 0..d {
            let xv = &x[base + j * stride];
            let aij = &a[(i, j)];
            if !xv.is_zero() && !aij.is_zero() {
                acc += aij.clone() * xv;
            }
        }
        *slot = acc;
    }
    y
}

pub fn act_on_tensor<S: Scalar>(a: &OrthogonalMatrix<S>, f: &TensorSeries<S>) -> Result<TensorSeries<S>> {
    act_on_tensor_by(a.matrix(), f)
}

/// Action on Lyndon coordinates through the word expansion.
pub fn act_on_lie_by<S: Scalar>(a: &Matrix<S>, c: &LieCoordinates<S>) -> Result<LieCoordinates<S>> {
    tensor_to_lyndon(&act_on_tensor_by(a, &c.expand())?)
}

pub fn act_on_lie<S: Scalar>(a: &OrthogonalMatrix<S>, c: &LieCoordinates<S>) -> Result<LieCoordinates<S>> {
    act_on_lie_by(a.matrix(), c)
}

/// `(v, M) ↦ (Av, A M Aᵀ)`.
pub fn act_on_level2<S: Scalar>(a: &OrthogonalMatrix<S>, p: &Level2Pair<S>) -> Result<Level2Pair<S>> {
    let a = a.matrix();
    if a.rows() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: a.rows() });
    }
    Ok(Level2Pair { v: a.mul_vec(&p.v)?, m: a.mul(&p.m)?.mul(&a.transpose())? })
}
