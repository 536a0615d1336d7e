use qta_core::linalg::{self, Matrix};
use qta_core::linf::{Element, Homogeneous};
use qta_core::qta::{LawCheck, LawReport};
use qta_core::Scalar;
use serde_json::{json, Map, Value};

use crate::file::{matrix_values, scalar_value};

/// What a command hands back to `main`.
pub struct Outcome {
    pub body: Map<String, Value>,
    pub passed: bool,
    pub summary: String,
}

impl Outcome {
    pub fn new(passed: bool, summary: impl Into<String>) -> Outcome {
        Outcome {
            body: Map::new(),
            passed,
            summary: summary.into(),
        }
    }

    pub fn with(mut self, key: &str, v: Value) -> Outcome {
        self.body.insert(key.to_string(), v);
        self
    }
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_value).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    json!(matrix_values(m))
}

pub fn law(c: &LawCheck) -> Value {
    let witness = match &c.witness {
        None => Value::Null,
        Some(w) => json!({
            "tuple": w.tuple,
            "lhs": vector(&w.lhs),
            "rhs": vector(&w.rhs),
            "defect": vector(&linalg::sub(&w.lhs, &w.rhs)),
        }),
    };
    json!({ "name": c.name, "pass": c.holds(), "witness": witness })
}

pub fn laws(r: &LawReport) -> Value {
    Value::Array(r.checks.iter().map(law).collect())
}

pub fn count_passed(r: &LawReport) -> (usize, usize) {
    (
        r.checks.iter().filter(|c| c.holds()).count(),
        r.checks.len(),
    )
}

pub fn homogeneous(h: &Homogeneous) -> Value {
    json!({
        "shifted": h.shifted,
        "arity": h.map.arity(),
        "coeffs": vector(h.map.coeffs()),
    })
}

pub fn element(e: &Element) -> Value {
    Value::Array(e.components().iter().map(homogeneous).collect())
}
