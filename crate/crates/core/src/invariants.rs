//! Orthogonal invariants of Lyndon coordinates and curve comparison.

use std::fmt;

use crate::action::{act_on_lie_by, OrthogonalMatrix};
use crate::error::{Error, Result};
use crate::frame::{coordinate_scale, moving_frame, FrameOptions, MovingFrameResult};
use crate::lyndon::{lyndon_to_level2, lyndon_words, Level2Pair, LieCoordinates};
use crate::matrix::Matrix;
use crate::path::{log_signature, PiecewiseLinearPath};
use crate::scalar::Scalar;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantFamily {
    /// `|v|², |Mv|², …` for all `d`.
    IM,
    /// The `p` polynomials (`d = 2, 3`).
    P,
    /// The `q_h` polynomials (`d = 2`).
    Q,
    /// Coordinates of the canonical point (all `d`).
    Frame,
    /// Closed-form invariantized coordinates (`d = 2`, level `≤ 4`).
    Invariantized,
}

impl fmt::Display for InvariantFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvariantFamily::IM => "im",
            InvariantFamily::P => "p",
            InvariantFamily::Q => "q",
            InvariantFamily::Frame => "frame",
            InvariantFamily::Invariantized => "invariantized",
        })
    }
}

/// Named invariant values.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantVector<S> {
    pub family: InvariantFamily,
    pub dim: usize,
    pub level: usize,
    pub labels: Vec<String>,
    pub values: Vec<S>,
}

impl<S: Scalar> InvariantVector<S> {
    fn new(family: InvariantFamily, dim: usize, level: usize) -> Self {
        InvariantVector { family, dim, level, labels: Vec::new(), values: Vec::new() }
    }

    fn push(&mut self, label: impl Into<String>, value: S) {
        self.labels.push(label.into());
        self.values.push(value);
    }

    pub fn get(&self, label: &str) -> Option<&S> {
        self.labels.iter().position(|l| l == label).map(|i| &self.values[i])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest entrywise deviation relative to the larger magnitude.
    pub fn max_relative_deviation(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                let (a, b) = (a.to_f64(), b.to_f64());
                let den = a.abs().max(b.abs());
                if den == 0.0 {
                    0.0
                } else {
                    (a - b).abs() / den
                }
            })
            .fold(0.0, f64::max)
    }
}

fn dot<S: Scalar>(x: &[S], y: &[S]) -> S {
    x.iter().zip(y).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
}

/// `⟨M^k v, M^k v⟩` for `k = 0..count`.
pub fn im_norms<S: Scalar>(p: &Level2Pair<S>, count: usize) -> Vec<S> {
    let mut x = p.v.clone();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        if k > 0 {
            x = p.m.mul_vec(&x).expect("square");
        }
        out.push(dot(&x, &x));
    }
    out
}

/// `[⟨v,v⟩, ⟨Mv,Mv⟩, …, ⟨M^{d-1}v, M^{d-1}v⟩]`.
pub fn invariants_im<S: Scalar>(p: &Level2Pair<S>) -> InvariantVector<S> {
    let d = p.dim();
    let mut out = InvariantVector::new(InvariantFamily::IM, d, 2);
    for (k, val) in im_norms(p, d).into_iter().enumerate() {
        let label = match k {
            0 => "|v|^2".to_string(),
            1 => "|Mv|^2".to_string(),
            k => format!("|M^{k}v|^2"),
        };
        out.push(label, val);
    }
    out
}

fn coord<S: Scalar>(c: &LieCoordinates<S>, s: &str) -> S {
    c.get_str(s)
}

/// `p₂` in the expanded form
/// `c₁²(c₁₂²+c₁₃²) + 2c₁c₂₃(c₁₃c₂-c₁₂c₃) + c₂²(c₁₂²+c₂₃²) + 2c₁₂c₁₃c₂c₃ + c₃²(c₁₃²+c₂₃²)`.
pub fn p2_expanded<S: Scalar>(c: &LieCoordinates<S>) -> S {
    let g = |s| coord(c, s);
    let (c1, c2, c3, c12, c13, c23) = (g("1"), g("2"), g("3"), g("12"), g("13"), g("23"));
    let two = S::from_i64(2);
    c1.clone() * &c1 * (c12.clone() * &c12 + c13.clone() * &c13)
        + two.clone() * &c1 * &c23 * (c13.clone() * &c2 - c12.clone() * &c3)
        + c2.clone() * &c2 * (c12.clone() * &c12 + c23.clone() * &c23)
        + two * &c12 * &c13 * &c2 * &c3
        + c3.clone() * &c3 * (c13.clone() * &c13 + c23.clone() * &c23)
}

/// `p₂ = (c₁₂c₁ - c₂₃c₃)² + (c₁₃c₁ + c₂₃c₂)² + (c₁₂c₂ + c₁₃c₃)²`.
pub fn p2_sum_of_squares<S: Scalar>(c: &LieCoordinates<S>) -> S {
    let g = |s| coord(c, s);
    let (c1, c2, c3, c12, c13, c23) = (g("1"), g("2"), g("3"), g("12"), g("13"), g("23"));
    let a = c12.clone() * &c1 - c23.clone() * &c3;
    let b = c13.clone() * &c1 + c23.clone() * &c2;
    let e = c12 * &c2 + c13 * &c3;
    a.clone() * &a + b.clone() * &b + e.clone() * &e
}

/// `[p₁, p₂, p₃²]`, plus the reflection-odd `p₃` when `proper`.
pub fn invariants_p_d3<S: Scalar>(c: &LieCoordinates<S>, proper: bool) -> Result<InvariantVector<S>> {
    if c.dim() != 3 {
        return Err(Error::UnsupportedDimension { op: "p invariants (d=3 form)", dim: c.dim() });
    }
    let (p1, _, p3) = crate::frame::p123(c);
    let mut out = InvariantVector::new(InvariantFamily::P, 3, c.level().min(2));
    out.push("p1", p1);
    out.push("p2", p2_expanded(c));
    out.push("p3^2", p3.clone() * &p3);
    if proper {
        out.push("p3", p3);
    }
    Ok(out)
}

/// The planar polynomial invariants `p₁ … p₇`, truncated to what level `n` supports:
/// `p₁` (n = 1), `p₁, p₂` (n = 2), `p₁ … p₄` (n = 3), `p₁ … p₇` (n ≥ 4).
pub fn invariants_p_d2<S: Scalar>(c: &LieCoordinates<S>) -> Result<InvariantVector<S>> {
    if c.dim() != 2 {
        return Err(Error::UnsupportedDimension { op: "p invariants (d=2 form)", dim: c.dim() });
    }
    let n = c.level().min(4);
    let g = |s| coord(c, s);
    let (c1, c2, c12) = (g("1"), g("2"), g("12"));
    let (c112, c122) = (g("112"), g("122"));
    let (c1112, c1122, c1222) = (g("1112"), g("1122"), g("1222"));
    let mut out = InvariantVector::new(InvariantFamily::P, 2, n);
    out.push("p1", c1.clone() * &c1 + c2.clone() * &c2);
    if n >= 2 {
        out.push("p2", c12.clone() * &c12);
    }
    if n >= 3 {
        out.push("p3", c1.clone() * &c122 + c112.clone() * &c2);
        out.push("p4", c12.clone() * (-(c1.clone() * &c112) + c122.clone() * &c2));
    }
    if n >= 4 {
        let (a, b, ab) = (c1.clone() * &c1, c2.clone() * &c2, c1.clone() * &c2);
        out.push("p5", c12.clone() * (a.clone() * &c1222 + ab.clone() * &c1122 + b.clone() * &c1112));
        out.push(
            "p6",
            -(a.clone() * &c1122) + S::from_i64(2) * &ab * (c1222.clone() - c1112.clone()) + b.clone() * &c1122,
        );
        out.push("p7", c12.clone() * (a * &c1112 - ab * &c1122 + b * &c1222));
    }
    Ok(out)
}

/// `p₄' = c₁₂(c₁₁₁₂ + c₁₂₂₂)`, an alternative to `p₄` or `p₇`.
pub fn p4_prime<S: Scalar>(c: &LieCoordinates<S>) -> S {
    coord(c, "12") * (coord(c, "1112") + coord(c, "1222"))
}

/// Closed-form coordinates of the invariantized planar path, level `≤ 4`.
pub fn invariantized_coords_d2(c: &LieCoordinates<f64>, tol: f64) -> Result<InvariantVector<f64>> {
    if c.dim() != 2 {
        return Err(Error::UnsupportedDimension { op: "invariantized coordinates", dim: c.dim() });
    }
    let g = |s| coord(c, s);
    let (c1, c2, c12) = (g("1"), g("2"), g("12"));
    let p1 = c1 * c1 + c2 * c2;
    let s = coordinate_scale(c);
    if p1.sqrt() <= tol * s || c12.abs() <= tol * s * s {
        return Err(Error::OutOfDomain);
    }
    let r = p1.sqrt();
    let sg = c12.signum();
    let n = c.level().min(4);
    let mut out = InvariantVector::new(InvariantFamily::Invariantized, 2, n);
    out.push("c2(Y)", r);
    if n >= 2 {
        out.push("c12(Y)", c12.abs());
    }
    if n >= 3 {
        let (c112, c122) = (g("112"), g("122"));
        out.push("c112(Y)", (c1 * c122 + c112 * c2) / r);
        out.push("c122(Y)", sg * (-c1 * c112 + c122 * c2) / r);
    }
    if n >= 4 {
        let (c1112, c1122, c1222) = (g("1112"), g("1122"), g("1222"));
        out.push("c1112(Y)", sg * (c1 * c1 * c1222 + c1 * c2 * c1122 + c2 * c2 * c1112) / p1);
        out.push("c1122(Y)", (-c1 * c1 * c1122 + 2.0 * c1 * c2 * (c1222 - c1112) + c2 * c2 * c1122) / p1);
        out.push("c1222(Y)", sg * (c1 * c1 * c1112 - c1 * c2 * c1122 + c2 * c2 * c1222) / p1);
    }
    Ok(out)
}

/// `ν₂ = [[c₂, -c₁], [c₁, c₂]]`.
fn nu2<S: Scalar>(c: &LieCoordinates<S>) -> Matrix<S> {
    let (c1, c2) = (coord(c, "1"), coord(c, "2"));
    Matrix::from_rows(vec![vec![c2.clone(), -c1.clone()], vec![c1, c2]]).expect("2x2")
}

/// Parity of the number of letters `1` in `h`.
fn m_parity(h: &Word) -> u32 {
    (h.count(1) % 2) as u32
}

/// `q_h = c₁₂^{m(h)} · c_h(ν₂·c)` for every Lyndon word `h` of length `≤ n`,
/// where `m(h)` is the parity of the number of letters `1` in `h`.
pub fn invariants_q_d2<S: Scalar>(c: &LieCoordinates<S>) -> Result<InvariantVector<S>> {
    if c.dim() != 2 {
        return Err(Error::UnsupportedDimension { op: "q invariants", dim: c.dim() });
    }
    let moved = act_on_lie_by(&nu2(c), c)?;
    let c12 = coord(c, "12");
    let mut out = InvariantVector::new(InvariantFamily::Q, 2, c.level());
    for h in lyndon_words(2, c.level()) {
        let mut val = moved.get(h.word());
        if m_parity(h.word()) == 1 {
            val = val * &c12;
        }
        out.push(format!("q{h}"), val);
    }
    Ok(out)
}

/// Canonical coordinates from the `q_h`:
/// `ĉ_h = q_h √q₂^{m(h)} / (√q₁₂^{m(h)} √q₂^{|h|})`.
pub fn canonical_from_q(q: &InvariantVector<f64>) -> Result<LieCoordinates<f64>> {
    if q.family != InvariantFamily::Q || q.dim != 2 {
        return Err(Error::InvalidArgument("expected planar q invariants".into()));
    }
    let get = |s: &str| q.get(s).copied().unwrap_or(0.0);
    let (q2, q12) = (get("q2"), get("q12"));
    let mut out = LieCoordinates::zero(2, q.level);
    for (label, &val) in q.labels.iter().zip(&q.values) {
        let w = Word::parse(&label[1..]).ok_or_else(|| Error::InvalidArgument(label.clone()))?;
        let m = m_parity(&w) as i32;
        let x = val * q2.sqrt().powi(m) / (q12.sqrt().powi(m) * q2.sqrt().powi(w.len() as i32));
        out.set(&w, x)?;
    }
    Ok(out)
}

/// Canonical point coordinates as an invariant vector, with the frame result.
pub fn invariants_frame(
    c: &LieCoordinates<f64>,
    opts: FrameOptions,
) -> Result<(InvariantVector<f64>, MovingFrameResult)> {
    let res = moving_frame(c, opts)?;
    let mut out = InvariantVector::new(InvariantFamily::Frame, c.dim(), c.level());
    if let Some(k) = &res.canonical {
        for (h, v) in k.dense() {
            out.push(format!("c{h}"), v);
        }
    }
    Ok((out, res))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CompareMethod {
    /// Canonical coordinates at every level.
    #[default]
    Frame,
    /// `I_M` for levels `≤ 2` (canonical coordinates above).
    IM,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareOptions {
    pub method: CompareMethod,
    pub frame: FrameOptions,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { method: CompareMethod::Frame, frame: FrameOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub level: usize,
    pub tol: f64,
    pub method: CompareMethod,
    pub in_domain: [bool; 2],
    pub canonical: [Option<LieCoordinates<f64>>; 2],
    pub frames: [Option<OrthogonalMatrix<f64>>; 2],
    /// Relative deviation of canonical coordinates per level `1..=n`.
    pub level_deviation: Vec<f64>,
    /// Relative deviation of the `I_M` vectors.
    pub im_deviation: f64,
    pub max_deviation: f64,
    pub first_disagreement: Option<usize>,
    pub equivalent: bool,
    /// `g = ρ(c₂)ᵀ ρ(c₁)` with `g·Z₁ ≃ Z₂`, when equivalent.
    pub rotation: Option<OrthogonalMatrix<f64>>,
}

/// Compares two coordinate vectors up to the orthogonal action.
pub fn compare_coordinates(
    c1: &LieCoordinates<f64>,
    c2: &LieCoordinates<f64>,
    level: usize,
    tol: f64,
    opts: CompareOptions,
) -> Result<EquivalenceReport> {
    if c1.dim() != c2.dim() {
        return Err(Error::DimensionMismatch { expected: c1.dim(), found: c2.dim() });
    }
    let (c1, c2) = (c1.truncate(level.max(2)), c2.truncate(level.max(2)));
    let r1 = moving_frame(&c1, opts.frame)?;
    let r2 = moving_frame(&c2, opts.frame)?;
    let im1 = invariants_im(&lyndon_to_level2(&c1));
    let im2 = invariants_im(&lyndon_to_level2(&c2));
    let im_deviation = im1.max_relative_deviation(&im2);

    let mut report = EquivalenceReport {
        level,
        tol,
        method: opts.method,
        in_domain: [r1.in_domain, r2.in_domain],
        canonical: [r1.canonical.map(|k| k.truncate(level)), r2.canonical.map(|k| k.truncate(level))],
        frames: [r1.frame, r2.frame],
        level_deviation: Vec::new(),
        im_deviation,
        max_deviation: f64::NAN,
        first_disagreement: None,
        equivalent: false,
        rotation: None,
    };
    let (Some(k1), Some(k2)) = (&report.canonical[0], &report.canonical[1]) else {
        return Ok(report);
    };
    let scale = coordinate_scale(k1).max(coordinate_scale(k2));
    report.level_deviation = (1..=level).map(|k| level_deviation(k1, k2, k, scale)).collect();
    let im_levels = if opts.frame.proper { 0 } else { 2 };
    let checked: Vec<(usize, f64)> = match opts.method {
        CompareMethod::Frame => report.level_deviation.iter().copied().enumerate().map(|(i, x)| (i + 1, x)).collect(),
        CompareMethod::IM => {
            let mut v: Vec<(usize, f64)> = report
                .level_deviation
                .iter()
                .copied()
                .enumerate()
                .filter(|(i, _)| i + 1 > im_levels)
                .map(|(i, x)| (i + 1, x))
                .collect();
            v.insert(0, (2.min(level), im_deviation));
            v
        }
    };
    report.max_deviation = checked.iter().map(|(_, x)| *x).fold(0.0, f64::max);
    report.first_disagreement = checked.iter().filter(|(_, x)| *x > tol).map(|(k, _)| *k).min();
    report.equivalent = report.first_disagreement.is_none();
    if report.equivalent {
        let (f1, f2) = (report.frames[0].as_ref().unwrap(), report.frames[1].as_ref().unwrap());
        report.rotation = Some(f2.transpose().compose(f1)?);
    }
    Ok(report)
}

/// Deviation of level-`k` coordinates relative to their magnitude, with a
/// floor of `1e-12·scale^k` against rounding noise.
fn level_deviation(a: &LieCoordinates<f64>, b: &LieCoordinates<f64>, k: usize, scale: f64) -> f64 {
    let den = a.max_abs_at_level(k).max(b.max_abs_at_level(k)).max(1e-12 * scale.powi(k as i32));
    let num = lyndon_words(a.dim(), k)
        .iter()
        .filter(|h| h.len() == k)
        .map(|h| (a.get(h.word()) - b.get(h.word())).abs())
        .fold(0.0, f64::max);
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Log-signatures of both curves, then [`compare_coordinates`].
pub fn compare_curves(
    z1: &PiecewiseLinearPath<f64>,
    z2: &PiecewiseLinearPath<f64>,
    level: usize,
    tol: f64,
    opts: CompareOptions,
) -> Result<EquivalenceReport> {
    let n = level.max(2);
    compare_coordinates(&log_signature(z1, n)?, &log_signature(z2, n)?, level, tol, opts)
}
