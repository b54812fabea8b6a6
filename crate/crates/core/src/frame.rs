//! Moving frames for the diagonal `O(d)` action on Lyndon coordinates.
//!
//! The cross-section is
//! `K = { c_i = 0 (i < d), c_{j(i+1)} = 0 (j < i), c_d > 0, c_{i(i+1)} > 0 }`.
//! A frame `ρ(c)` is the unique orthogonal matrix with `ρ(c)·c ∈ K`; it only
//! depends on the level-1 and level-2 coordinates.

use crate::action::{act_on_lie, act_on_lie_by, OrthogonalMatrix};
use crate::error::{Error, Result};
use crate::lyndon::{lyndon_to_level2, LieCoordinates};
use crate::matrix::Matrix;
use crate::path::{log_signature, PiecewiseLinearPath};
use crate::scalar::Scalar;
use crate::word::Word;

/// Default relative tolerance for domain membership.
pub const FRAME_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameOptions {
    /// Relative tolerance for the domain witnesses.
    pub tol: f64,
    /// Restrict to `SO(d)`: the sign of `c_12` on the section is left free.
    pub proper: bool,
}

impl Default for FrameOptions {
    fn default() -> Self {
        FrameOptions { tol: FRAME_TOL, proper: false }
    }
}

impl FrameOptions {
    pub fn with_tol(tol: f64) -> Self {
        FrameOptions { tol, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MovingFrameResult {
    /// `ρ(c)`; `None` outside the domain.
    pub frame: Option<OrthogonalMatrix<f64>>,
    /// `ρ(c)·c` at the input level; `None` outside the domain.
    pub canonical: Option<LieCoordinates<f64>>,
    pub in_domain: bool,
    /// Named quantities whose non-vanishing defines the domain.
    pub witnesses: Vec<(String, f64)>,
}

impl MovingFrameResult {
    fn outside(witnesses: Vec<(String, f64)>) -> Self {
        MovingFrameResult { frame: None, canonical: None, in_domain: false, witnesses }
    }

    fn inside(rho: Matrix<f64>, c: &LieCoordinates<f64>, witnesses: Vec<(String, f64)>) -> Result<Self> {
        let rho = OrthogonalMatrix::new_unchecked(rho);
        let canonical = act_on_lie(&rho, c)?;
        Ok(MovingFrameResult { frame: Some(rho), canonical: Some(canonical), in_domain: true, witnesses })
    }
}

/// `max(max |c_i|, sqrt(max |c_ij|))`, the natural length scale of `c`.
pub fn coordinate_scale<S: Scalar>(c: &LieCoordinates<S>) -> f64 {
    c.max_abs_at_level(1).max(c.max_abs_at_level(2).sqrt())
}

fn sgn(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn lie2(c: &LieCoordinates<f64>, i: usize, j: usize) -> f64 {
    c.get(&Word::from_letters(&[i as u8, j as u8]))
}

fn lie1(c: &LieCoordinates<f64>, i: usize) -> f64 {
    c.get(&Word::letter(i as u8))
}

/// Membership in the cross-section, with margins relative to the coordinate scale.
///
/// In `proper` mode `c_12` only has to be nonzero.
pub fn on_cross_section<S: Scalar>(c: &LieCoordinates<S>, tol: f64, proper: bool) -> bool {
    let d = c.dim();
    if d < 2 || c.level() < 2 {
        return false;
    }
    let c = c.convert::<f64>();
    let s1 = coordinate_scale(&c);
    let s2 = s1 * s1;
    if s1 == 0.0 {
        return false;
    }
    if (1..d).any(|i| lie1(&c, i).abs() > tol * s1) || lie1(&c, d) <= tol * s1 {
        return false;
    }
    for k in 2..=d {
        for j in 1..k - 1 {
            if lie2(&c, j, k).abs() > tol * s2 {
                return false;
            }
        }
        let sup = lie2(&c, k - 1, k);
        let ok = if proper && k == 2 { sup.abs() > tol * s2 } else { sup > tol * s2 };
        if !ok {
            return false;
        }
    }
    true
}

fn require_dim<S>(c: &LieCoordinates<S>, d: usize, op: &'static str) -> Result<()>
where
    S: Scalar,
{
    if c.dim() != d {
        return Err(Error::UnsupportedDimension { op, dim: c.dim() });
    }
    Ok(())
}

/// Closed-form frame for `d = 2`:
/// `ρ₂ = (1/√p₁) [[sgn(c₁₂) c₂, -sgn(c₁₂) c₁], [c₁, c₂]]`, `p₁ = c₁² + c₂²`.
pub fn frame_d2(c: &LieCoordinates<f64>, opts: FrameOptions) -> Result<MovingFrameResult> {
    require_dim(c, 2, "frame_d2")?;
    let (c1, c2, c12) = (lie1(c, 1), lie1(c, 2), lie2(c, 1, 2));
    let p1 = c1 * c1 + c2 * c2;
    let witnesses = vec![("p1".to_string(), p1), ("c12".to_string(), c12)];
    let s = coordinate_scale(c);
    if !(p1.sqrt() > opts.tol * s && c12.abs() > opts.tol * s * s) {
        return Ok(MovingFrameResult::outside(witnesses));
    }
    let sg = if opts.proper { 1.0 } else { sgn(c12) };
    let r = p1.sqrt();
    let rho = Matrix::from_rows(vec![vec![sg * c2 / r, -sg * c1 / r], vec![c1 / r, c2 / r]])?;
    MovingFrameResult::inside(rho, c, witnesses)
}

/// The `d = 3` invariants `p₁ = |v|²`, `p₂ = |Mv|²`, `p₃ = c₁c₂₃ - c₂c₁₃ + c₃c₁₂`.
pub fn p123<S: Scalar>(c: &LieCoordinates<S>) -> (S, S, S) {
    let g1 = |i: u8| c.get(&Word::letter(i));
    let g2 = |i: u8, j: u8| c.get(&Word::from_letters(&[i, j]));
    let (c1, c2, c3) = (g1(1), g1(2), g1(3));
    let (c12, c13, c23) = (g2(1, 2), g2(1, 3), g2(2, 3));
    let p1 = c1.clone() * &c1 + c2.clone() * &c2 + c3.clone() * &c3;
    let mv = mv3(&[c1.clone(), c2.clone(), c3.clone()], &c12, &c13, &c23);
    let p2 = mv.iter().fold(S::zero(), |acc, x| acc + x.clone() * x);
    let p3 = c1 * &c23 - c2 * &c13 + c3 * &c12;
    (p1, p2, p3)
}

/// `M v` for the skew matrix with upper entries `c12, c13, c23`.
fn mv3<S: Scalar>(v: &[S; 3], c12: &S, c13: &S, c23: &S) -> [S; 3] {
    let [c1, c2, c3] = v.clone();
    [
        c12.clone() * &c2 + c13.clone() * &c3,
        -(c12.clone() * &c1) + c23.clone() * &c3,
        -(c13.clone() * &c1) - c23.clone() * &c2,
    ]
}

/// The polynomial matrix `ν₃` with rows `Mv × v`, `Mv`, `v`.
pub fn nu3<S: Scalar>(c: &LieCoordinates<S>) -> Matrix<S> {
    let g1 = |i: u8| c.get(&Word::letter(i));
    let g2 = |i: u8, j: u8| c.get(&Word::from_letters(&[i, j]));
    let v = [g1(1), g1(2), g1(3)];
    let mv = mv3(&v, &g2(1, 2), &g2(1, 3), &g2(2, 3));
    let cross = [
        mv[1].clone() * &v[2] - mv[2].clone() * &v[1],
        mv[2].clone() * &v[0] - mv[0].clone() * &v[2],
        mv[0].clone() * &v[1] - mv[1].clone() * &v[0],
    ];
    Matrix::from_rows(vec![cross.to_vec(), mv.to_vec(), v.to_vec()]).expect("3x3")
}

/// Closed-form frame for `d = 3`: `ρ₃ = μ₃ ν₃` with
/// `μ₃ = diag(sgn(p₃)/√(p₁p₂), 1/√p₂, 1/√p₁)`.
pub fn frame_d3(c: &LieCoordinates<f64>, opts: FrameOptions) -> Result<MovingFrameResult> {
    require_dim(c, 3, "frame_d3")?;
    let (p1, p2, p3) = p123(c);
    let witnesses = vec![("p1".to_string(), p1), ("p2".to_string(), p2), ("p3".to_string(), p3)];
    let s = coordinate_scale(c);
    let s3 = s * s * s;
    if !(p2.sqrt() > opts.tol * s3 && p3.abs() > opts.tol * s3) {
        return Ok(MovingFrameResult::outside(witnesses));
    }
    let sg = if opts.proper { 1.0 } else { sgn(p3) };
    let mu = Matrix::diagonal(&[sg / (p1 * p2).sqrt(), 1.0 / p2.sqrt(), 1.0 / p1.sqrt()]);
    let rho = mu.mul(&nu3(c))?;
    MovingFrameResult::inside(rho, c, witnesses)
}

/// Rotation in the plane `(i, i+1)` that maps `(a, b)` to `(0, √(a²+b²))`.
fn givens(d: usize, i: usize, a: f64, b: f64) -> Option<Matrix<f64>> {
    let w = a.hypot(b);
    if w == 0.0 {
        return None;
    }
    let mut g = Matrix::identity(d);
    g[(i, i)] = b / w;
    g[(i, i + 1)] = -a / w;
    g[(i + 1, i)] = a / w;
    g[(i + 1, i + 1)] = b / w;
    Some(g)
}

/// Frame for any `d ≥ 2` by successive Givens rotations.
///
/// First `v` is rotated onto the last axis. Then, for columns `k = d, …, 3`
/// of `M`, rotations in the leading `k - 1` coordinates clear the column above
/// the superdiagonal. Finally a diagonal sign matrix makes `c_d` and the
/// superdiagonal positive. The witnesses are the pivot norms `F_1 = |v|`,
/// the cleared column norms, and `|c_12|` on the reduced point.
pub fn frame_general(c: &LieCoordinates<f64>, opts: FrameOptions) -> Result<MovingFrameResult> {
    let d = c.dim();
    if d < 2 {
        return Err(Error::UnsupportedDimension { op: "frame_general", dim: d });
    }
    let p = lyndon_to_level2(&c.truncate(2));
    let (mut v, mut m) = (p.v, p.m);
    let mut rho = Matrix::identity(d);
    let apply = |g: &Matrix<f64>, v: &mut Vec<f64>, m: &mut Matrix<f64>, rho: &mut Matrix<f64>| {
        *v = g.mul_vec(v).expect("square");
        *m = g.mul(m).and_then(|x| x.mul(&g.transpose())).expect("square");
        *rho = g.mul(rho).expect("square");
    };
    for i in 0..d - 1 {
        if let Some(g) = givens(d, i, v[i], v[i + 1]) {
            apply(&g, &mut v, &mut m, &mut rho);
        }
    }
    let mut witnesses = vec![("F1".to_string(), v[d - 1].abs())];
    for k in (2..d).rev() {
        for j in 0..k - 1 {
            if let Some(g) = givens(d, j, m[(j, k)], m[(j + 1, k)]) {
                apply(&g, &mut v, &mut m, &mut rho);
            }
        }
        witnesses.push((format!("F{}", witnesses.len() + 1), m[(k - 1, k)].abs()));
    }
    witnesses.push((format!("F{d}"), m[(0, 1)].abs()));

    let s = coordinate_scale(c);
    let in_domain = witnesses.iter().enumerate().all(|(i, (_, f))| *f > opts.tol * if i == 0 { s } else { s * s });
    if !in_domain {
        return Ok(MovingFrameResult::outside(witnesses));
    }
    let mut w = vec![1.0; d];
    w[d - 1] = sgn(v[d - 1]);
    for i in (0..d - 1).rev() {
        w[i] = sgn(m[(i, i + 1)]) * w[i + 1];
    }
    let mut rho = Matrix::diagonal(&w).mul(&rho)?;
    if opts.proper && rho.det() < 0.0 {
        for j in 0..d {
            rho[(0, j)] = -rho[(0, j)];
        }
    }
    MovingFrameResult::inside(rho, c, witnesses)
}

/// Closed form for `d = 2, 3`, Givens reduction otherwise.
pub fn moving_frame(c: &LieCoordinates<f64>, opts: FrameOptions) -> Result<MovingFrameResult> {
    match c.dim() {
        2 => frame_d2(c, opts),
        3 => frame_d3(c, opts),
        _ => frame_general(c, opts),
    }
}

/// Rotates the path by the frame of its level-2 log-signature.
///
/// The returned result carries the canonical coordinates at level `n`.
pub fn invariantize_path(
    z: &PiecewiseLinearPath<f64>,
    level: usize,
    opts: FrameOptions,
) -> Result<(MovingFrameResult, PiecewiseLinearPath<f64>)> {
    let c = log_signature(z, level.max(2))?;
    let mut res = moving_frame(&c, opts)?;
    let Some(rho) = res.frame.as_ref() else { return Err(Error::OutOfDomain) };
    let y = z.transformed(rho.matrix())?;
    res.canonical = res.canonical.map(|k| k.truncate(level));
    Ok((res, y))
}

/// Data of an almost-polynomial frame: `λ` diagonal and invariant, `λρ`
/// polynomial in `c`, and the scaled canonical point `λρ·c`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostPolynomialFrame<S> {
    pub lambda: Vec<f64>,
    pub lambda_rho: Matrix<S>,
    pub scaled_canonical: LieCoordinates<S>,
}

/// `λρ` and `λρ·c` computed exactly in `S`; `λ` in floating point.
///
/// For `d = 2`: `λ = diag(|c₁₂|√p₁, √p₁)` and `λρ = [[c₁₂c₂, -c₁₂c₁], [c₁, c₂]]`.
/// For `d = 3`: `λ = diag(|p₃|√(p₁p₂), √p₂, √p₁)` and `λρ = diag(p₃, 1, 1)·ν₃`.
pub fn almost_polynomial_frame<S: Scalar>(c: &LieCoordinates<S>, tol: f64) -> Result<AlmostPolynomialFrame<S>> {
    let s = coordinate_scale(c);
    match c.dim() {
        2 => {
            let (c1, c2, c12) = (c.get_str("1"), c.get_str("2"), c.get_str("12"));
            let p1 = c1.clone() * &c1 + c2.clone() * &c2;
            if p1.to_f64().sqrt() <= tol * s || c12.is_negligible(tol * s * s) {
                return Err(Error::OutOfDomain);
            }
            let r = p1.to_f64().sqrt();
            let lambda = vec![c12.to_f64().abs() * r, r];
            let lambda_rho = Matrix::from_rows(vec![vec![c12.clone() * &c2, -(c12.clone() * &c1)], vec![c1, c2]])?;
            let scaled_canonical = act_on_lie_by(&lambda_rho, c)?;
            Ok(AlmostPolynomialFrame { lambda, lambda_rho, scaled_canonical })
        }
        3 => {
            let (p1, p2, p3) = p123(c);
            let s3 = s * s * s;
            if p2.to_f64().sqrt() <= tol * s3 || p3.is_negligible(tol * s3) {
                return Err(Error::OutOfDomain);
            }
            let (f1, f2, f3) = (p1.to_f64(), p2.to_f64(), p3.to_f64());
            let lambda = vec![f3.abs() * (f1 * f2).sqrt(), f2.sqrt(), f1.sqrt()];
            let lambda_rho = Matrix::diagonal(&[p3, S::one(), S::one()]).mul(&nu3(c))?;
            let scaled_canonical = act_on_lie_by(&lambda_rho, c)?;
            Ok(AlmostPolynomialFrame { lambda, lambda_rho, scaled_canonical })
        }
        d => Err(Error::UnsupportedDimension { op: "almost_polynomial_frame", dim: d }),
    }
}

/// Recovers `λ` from the scaled canonical point.
///
/// `d = 2`: `(√ĉ₁₂, √ĉ₂)`; `d = 3`: `(√(ĉ₃ĉ₁₂), √ĉ₂₃, √ĉ₃)`.
pub fn kappa<S: Scalar>(scaled: &LieCoordinates<S>) -> Result<Vec<f64>> {
    let g = |s: &str| scaled.get_str(s).to_f64();
    match scaled.dim() {
        2 => Ok(vec![g("12").sqrt(), g("2").sqrt()]),
        3 => Ok(vec![(g("3") * g("12")).sqrt(), g("23").sqrt(), g("3").sqrt()]),
        d => Err(Error::UnsupportedDimension { op: "kappa", dim: d }),
    }
}
