//! JSON result documents.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sigframes::{LieCoordinates, Matrix, MovingFrameResult, Scalar};

#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    pub dim: usize,
    pub level: usize,
    pub family: String,
    pub labels: Vec<String>,
    pub values: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<Value>>,
    pub in_domain: bool,
    pub domain_witnesses: BTreeMap<String, Value>,
    /// Set when a built-in curve was replaced by a sampled polyline.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub approximate: bool,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Value>,
}

/// Value encoding: strings by default, JSON numbers with `--float`.
#[derive(Debug, Clone, Copy)]
pub struct Encoder {
    pub float: bool,
}

impl Encoder {
    pub fn value<S: Scalar>(&self, x: &S) -> Value {
        if self.float {
            serde_json::Number::from_f64(x.to_f64()).map(Value::Number).unwrap_or(Value::Null)
        } else {
            Value::String(x.format_value())
        }
    }

    pub fn values<S: Scalar>(&self, xs: &[S]) -> Vec<Value> {
        xs.iter().map(|x| self.value(x)).collect()
    }

    pub fn matrix<S: Scalar>(&self, m: &Matrix<S>) -> Vec<Value> {
        self.values(m.as_slice())
    }

    pub fn coordinates<S: Scalar>(&self, c: &LieCoordinates<S>) -> (Vec<String>, Vec<Value>) {
        c.dense().into_iter().map(|(h, v)| (h.to_string(), self.value(&v))).unzip()
    }

    pub fn coordinates_object<S: Scalar>(&self, c: &LieCoordinates<S>) -> Value {
        let (labels, values) = self.coordinates(c);
        serde_json::json!({ "labels": labels, "values": values })
    }
}

impl ResultDocument {
    pub fn new(dim: usize, level: usize, family: impl Into<String>) -> Self {
        ResultDocument {
            dim,
            level,
            family: family.into(),
            labels: Vec::new(),
            values: Vec::new(),
            frame: None,
            in_domain: true,
            domain_witnesses: BTreeMap::new(),
            approximate: false,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            report: None,
        }
    }

    pub fn set_frame(&mut self, enc: Encoder, res: &MovingFrameResult) {
        self.in_domain = res.in_domain;
        self.frame = res.frame.as_ref().map(|f| enc.matrix(f.matrix()));
        self.domain_witnesses = res.witnesses.iter().map(|(k, v)| (k.clone(), enc.value(v))).collect();
    }
}
