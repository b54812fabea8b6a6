use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use sigframes::{
    compare_curves, invariantize_path, invariants_frame, invariants_im, invariants_p_d2, invariants_p_d3,
    invariants_q_d2, log_signature, lyndon_to_level2, moving_frame, path_signature, polynomial_moment_signature,
    sample_moment_curve, tensor_to_lyndon, CompareMethod, CompareOptions, FrameOptions, InvariantVector,
    LieCoordinates, PiecewiseLinearPath, Rational, Scalar, TensorSeries, Word,
};

use crate::args::{CompareArgs, Demo, Family, InvariantizeArgs, InvariantsArgs, Method, SignatureArgs, Source};
use crate::curve::CurveFile;
use crate::document::{Encoder, ResultDocument};

/// Samples used when a built-in curve has to be approximated by a polyline.
const DEMO_SAMPLES: usize = 2000;

/// Outcome of a command: the document to print and the process exit code.
pub struct Outcome {
    pub document: ResultDocument,
    pub code: u8,
}

impl Outcome {
    fn ok(document: ResultDocument) -> Self {
        Outcome { document, code: 0 }
    }
}

enum Input {
    File(CurveFile),
    Demo(Demo),
}

impl Input {
    fn from_source(src: &Source, dim: Option<usize>) -> Result<Self> {
        let input = match (&src.input, src.demo) {
            (Some(p), _) => Input::File(CurveFile::read(p)?),
            (None, Some(d)) => Input::Demo(d),
            (None, None) => bail!("one of --input or --demo is required"),
        };
        if let Some(d) = dim {
            if d != input.dim() {
                bail!("dimension mismatch: --dim {d} but the curve has dimension {}", input.dim());
            }
        }
        Ok(input)
    }

    /// `demo:NAME` or a CSV path.
    fn from_arg(arg: &str) -> Result<Self> {
        match arg.strip_prefix("demo:") {
            Some("moment") => Ok(Input::Demo(Demo::Moment)),
            Some("moment-rotated") => Ok(Input::Demo(Demo::MomentRotated)),
            Some(other) => bail!("unknown demo curve {other:?} (expected moment or moment-rotated)"),
            None => Ok(Input::File(CurveFile::read(Path::new(arg))?)),
        }
    }

    fn dim(&self) -> usize {
        match self {
            Input::File(f) => f.dim(),
            Input::Demo(d) => d.exponents().len(),
        }
    }

    fn signature<S: Scalar>(
        &self,
        level: usize,
        parse: impl Fn(&CurveFile) -> Result<PiecewiseLinearPath<S>>,
    ) -> Result<TensorSeries<S>> {
        match self {
            Input::File(f) => Ok(path_signature(&parse(f)?, level)),
            Input::Demo(d) => Ok(polynomial_moment_signature(d.exponents(), level)?),
        }
    }

    fn log_signature<S: Scalar>(
        &self,
        level: usize,
        parse: impl Fn(&CurveFile) -> Result<PiecewiseLinearPath<S>>,
    ) -> Result<LieCoordinates<S>> {
        let sig = self.signature(level, parse)?;
        Ok(tensor_to_lyndon(&sig.log()?)?)
    }

    fn float_path(&self) -> Result<(PiecewiseLinearPath<f64>, bool)> {
        match self {
            Input::File(f) => Ok((f.to_f64()?, false)),
            Input::Demo(d) => Ok((sample_moment_curve(d.exponents(), DEMO_SAMPLES)?, true)),
        }
    }
}

fn float_log_signature(input: &Input, level: usize) -> Result<LieCoordinates<f64>> {
    input.log_signature(level, CurveFile::to_f64)
}

fn exact_log_signature(input: &Input, level: usize) -> Result<LieCoordinates<Rational>> {
    input.log_signature(level, CurveFile::to_rational)
}

fn check_level(level: usize, min: usize) -> Result<()> {
    if level < min {
        bail!("--level must be at least {min}");
    }
    Ok(())
}

pub fn signature(args: &SignatureArgs, enc: Encoder) -> Result<Outcome> {
    let input = Input::from_source(&args.source, args.dim)?;
    let family = if args.lyndon { "log-signature" } else { "signature" };
    let mut doc = ResultDocument::new(input.dim(), args.level, family);
    let (labels, values) = if args.exact {
        signature_table(&input, args.level, args.lyndon, enc, CurveFile::to_rational)?
    } else {
        signature_table(&input, args.level, args.lyndon, enc, CurveFile::to_f64)?
    };
    doc.labels = labels;
    doc.values = values;
    Ok(Outcome::ok(doc))
}

fn signature_table<S: Scalar>(
    input: &Input,
    level: usize,
    lyndon: bool,
    enc: Encoder,
    parse: impl Fn(&CurveFile) -> Result<PiecewiseLinearPath<S>>,
) -> Result<(Vec<String>, Vec<Value>)> {
    if lyndon {
        let c = input.log_signature(level, parse)?;
        return Ok(enc.coordinates(&c));
    }
    let sig = input.signature(level, parse)?;
    Ok(Word::all_up_to(input.dim(), level).map(|w| (w.to_string(), enc.value(&sig.coeff(&w)))).unzip())
}

fn fill<S: Scalar>(doc: &mut ResultDocument, v: &InvariantVector<S>, enc: Encoder) {
    doc.labels = v.labels.clone();
    doc.values = enc.values(&v.values);
}

pub fn invariants(args: &InvariantsArgs, tol: f64, enc: Encoder) -> Result<Outcome> {
    let input = Input::from_source(&args.source, args.dim)?;
    let d = input.dim();
    let n = args.level;
    let supported = match args.family {
        Family::Im => true,
        Family::P => d == 2 || d == 3,
        Family::Q => d == 2,
        Family::Frame => d >= 2,
    };
    if !supported {
        bail!(
            "family {:?} is not available in dimension {d}; supported: im (any d), p (d=2,3), q (d=2), frame (d>=2)",
            args.family
        );
    }
    if args.family == Family::Frame && args.exact {
        bail!("the frame family involves square roots and has no exact mode");
    }
    check_level(
        n,
        match (args.family, d) {
            (Family::P, 3) => 3,
            (Family::Im, _) | (Family::P, _) | (Family::Q, _) | (Family::Frame, _) => 2,
        },
    )?;

    let family = format!("{:?}", args.family).to_lowercase();
    let mut doc = ResultDocument::new(d, n, family);
    let opts = FrameOptions { tol, proper: args.proper };
    let float_c = float_log_signature(&input, n)?;
    if d >= 2 {
        doc.set_frame(enc, &moving_frame(&float_c, opts)?);
    } else {
        doc.in_domain = false;
    }

    if args.family == Family::Frame {
        let (v, res) = invariants_frame(&float_c, opts)?;
        doc.set_frame(enc, &res);
        fill(&mut doc, &v, enc);
    } else if args.exact {
        let c = exact_log_signature(&input, n)?;
        fill(&mut doc, &algebraic_invariants(&c, args.family, args.proper)?, enc);
    } else {
        fill(&mut doc, &algebraic_invariants(&float_c, args.family, args.proper)?, enc);
    }
    Ok(Outcome::ok(doc))
}

fn algebraic_invariants<S: Scalar>(c: &LieCoordinates<S>, family: Family, proper: bool) -> Result<InvariantVector<S>> {
    Ok(match (family, c.dim()) {
        (Family::Im, _) => invariants_im(&lyndon_to_level2(c)),
        (Family::P, 2) => invariants_p_d2(c)?,
        (Family::P, _) => invariants_p_d3(c, proper)?,
        (Family::Q, _) => invariants_q_d2(c)?,
        (Family::Frame, _) => unreachable!("frame family handled separately"),
    })
}

pub fn compare(args: &CompareArgs, tol: f64, enc: Encoder) -> Result<Outcome> {
    check_level(args.level, 1)?;
    let a = Input::from_arg(&args.a).context("curve --a")?;
    let b = Input::from_arg(&args.b).context("curve --b")?;
    if a.dim() != b.dim() {
        bail!("dimension mismatch: {} vs {}", a.dim(), b.dim());
    }
    let (za, approx_a) = a.float_path()?;
    let (zb, approx_b) = b.float_path()?;
    let method = match args.method {
        Method::Frame => CompareMethod::Frame,
        Method::Im => CompareMethod::IM,
    };
    let opts = CompareOptions { method, frame: FrameOptions { tol, proper: args.proper } };
    let r = compare_curves(&za, &zb, args.level, tol, opts)?;

    let mut doc = ResultDocument::new(a.dim(), args.level, "compare");
    doc.approximate = approx_a || approx_b;
    doc.in_domain = r.in_domain.iter().all(|&x| x);
    if let Some(g) = &r.rotation {
        doc.frame = Some(enc.matrix(g.matrix()));
    }
    let num = |x: f64| enc.value(&x);
    doc.report = Some(json!({
        "equivalent": r.equivalent,
        "method": format!("{:?}", args.method).to_lowercase(),
        "tol": tol,
        "in_domain": r.in_domain,
        "level_deviation": r.level_deviation.iter().map(|&x| num(x)).collect::<Vec<_>>(),
        "im_deviation": num(r.im_deviation),
        "max_deviation": if r.max_deviation.is_nan() { Value::Null } else { num(r.max_deviation) },
        "first_disagreement": r.first_disagreement,
        "canonical": r.canonical.iter().map(|k| k.as_ref().map(|k| enc.coordinates_object(k))).collect::<Vec<_>>(),
        "frames": r.frames.iter().map(|f| f.as_ref().map(|f| enc.matrix(f.matrix()))).collect::<Vec<_>>(),
    }));
    let code = if !doc.in_domain {
        2
    } else if r.equivalent {
        0
    } else {
        1
    };
    Ok(Outcome { document: doc, code })
}

pub fn invariantize(args: &InvariantizeArgs, tol: f64, enc: Encoder) -> Result<Outcome> {
    check_level(args.level, 1)?;
    let input = Input::from_source(&args.source, args.dim)?;
    let d = input.dim();
    let mut doc = ResultDocument::new(d, args.level, "invariantized");
    if d < 2 {
        bail!("invariantization needs dimension at least 2");
    }
    let (z, approximate) = input.float_path()?;
    doc.approximate = approximate;
    let opts = FrameOptions { tol, proper: args.proper };
    let c = log_signature(&z, args.level.max(2))?;
    let res = moving_frame(&c, opts)?;
    doc.set_frame(enc, &res);
    if !res.in_domain {
        return Ok(Outcome { document: doc, code: 2 });
    }
    let (res, y) = invariantize_path(&z, args.level, opts)?;
    if let Some(k) = &res.canonical {
        let (labels, values) = enc.coordinates(k);
        doc.labels = labels;
        doc.values = values;
    }
    let file = match &input {
        Input::File(f) => f.with_points(y.points()),
        Input::Demo(_) => {
            CurveFile { header: Some((1..=d).map(|i| format!("x{i}")).collect()), times: None, rows: Vec::new() }
                .with_points(y.points())
        }
    };
    file.write(&args.output)?;
    Ok(Outcome::ok(doc))
}
