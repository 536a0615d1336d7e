//! The JSON algebra file: structure constants on `A ⊕ B`, optional named
//! linear maps, an optional factory call and an optional tridendriform section.
//!
//! Tensors are flat arrays in `(i, j, k)` order, `k` fastest: entry
//! `(i · right + j) · out + k` is the `k`-th coordinate of the product of basis
//! vectors `i` and `j`. Matrices are arrays of rows.

use std::collections::BTreeMap;

use qta_core::bigraded::{SplitSpace, StructureMaps};
use qta_core::defmap;
use qta_core::linalg::Matrix;
use qta_core::multilinear::Bilinear;
use qta_core::qta::{factories, Algebra, Bimodule, QuasiTwilledAlgebra};
use qta_core::tridend::{NonAbelianCocycle, TwistedTridendriform};
use qta_core::{Field, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::InputError;

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub version: u32,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Dims>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tr: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tl: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rh: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lh: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factory: Option<FactorySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ttd: Option<TtdSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime { prime: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dims {
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "B")]
    pub b: usize,
}

/// `name` is one of [`FACTORIES`]; `algebra` and `b` name algebras as in [`named_algebra`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorySpec {
    pub name: String,
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TtdSpec {
    pub dim: usize,
    pub prec: Vec<Value>,
    pub succ: Vec<Value>,
    pub vee: Vec<Value>,
    pub dot: Vec<Value>,
}

pub const FACTORIES: &[&str] = &[
    "direct_product",
    "semidirect",
    "algebra_in_bimodules",
    "left_module_only",
    "right_module_only",
    "box",
    "theta_twisted_semidirect",
    "reynolds",
    "matched_pair_box",
];

/// A parsed file.
pub struct Loaded {
    pub field: Field,
    pub q: QuasiTwilledAlgebra,
    pub maps: BTreeMap<String, Matrix>,
    pub ttd: Option<TwistedTridendriform>,
}

impl Loaded {
    pub fn map(&self, name: &str) -> Result<&Matrix, InputError> {
        self.maps
            .get(name)
            .ok_or_else(|| InputError(format!("the file has no map named {name:?}")))
    }

    /// The non-abelian 2-cocycle carried by the file, which needs `⇀ = ↼ = 0`.
    pub fn cocycle(&self) -> Result<NonAbelianCocycle, InputError> {
        let m = self.q.maps();
        if !m.rh.is_zero() || !m.lh.is_zero() {
            return Err(InputError(
                "rh and lh must vanish for a non-abelian 2-cocycle".into(),
            ));
        }
        NonAbelianCocycle::unchecked(
            Algebra::unchecked(m.mu.clone()),
            Algebra::unchecked(m.nu.clone()),
            m.tr.clone(),
            m.tl.clone(),
            m.theta.clone(),
        )
        .map_err(|e| InputError(e.to_string()))
    }
}

pub fn read(path: &str) -> Result<Loaded, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
    parse(&text).map_err(|InputError(m)| InputError(format!("{path}:{m}")))
}

/// Errors carry a `line:column:` prefix for syntax problems.
pub fn parse(text: &str) -> Result<Loaded, InputError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
        InputError(format!(
            "{}:{}: {}",
            e.line(),
            e.column(),
            strip_position(&e.to_string())
        ))
    })?;
    load(&file).map_err(|InputError(m)| InputError(format!(" {m}")))
}

fn strip_position(msg: &str) -> &str {
    msg.split(" at line ").next().unwrap_or(msg)
}

pub fn field_of(spec: &FieldSpec) -> Result<Field, InputError> {
    match spec {
        FieldSpec::Named(s) if s == "rational" => Ok(Field::Rational),
        FieldSpec::Named(s) => Err(InputError(format!(
            "unknown field {s:?}; use \"rational\" or {{\"prime\": p}}"
        ))),
        FieldSpec::Prime { prime } => Field::prime(*prime).map_err(|e| InputError(e.to_string())),
    }
}

pub fn spec_of(field: Field) -> FieldSpec {
    match field {
        Field::Rational => FieldSpec::Named("rational".into()),
        Field::Prime(p) => FieldSpec::Prime { prime: p },
    }
}

pub fn entry(field: Field, what: &str, v: &Value) -> Result<Scalar, InputError> {
    match (field, v) {
        (Field::Rational, Value::String(s)) => field
            .parse(s)
            .map_err(|_| InputError(format!("{what}: {s:?} is not a rational \"p/q\""))),
        (Field::Rational, other) => Err(InputError(format!(
            "{what}: rational entries are strings, got {other}"
        ))),
        (Field::Prime(p), Value::Number(n)) => match n.as_u64() {
            Some(x) if x < p => Ok(field.from_i64(x as i64)),
            _ => Err(InputError(format!(
                "{what}: {n} is not an integer in [0, {p})"
            ))),
        },
        (Field::Prime(p), other) => Err(InputError(format!(
            "{what}: entries over F_{p} are integers, got {other}"
        ))),
    }
}

pub fn scalar_value(s: &Scalar) -> Value {
    match s.as_residue() {
        Some(x) => Value::from(x),
        None => Value::String(s.to_string()),
    }
}

pub fn tensor(
    field: Field,
    name: &str,
    values: Option<&Vec<Value>>,
    shape: (usize, usize, usize),
) -> Result<Bilinear, InputError> {
    let (l, r, o) = shape;
    let Some(values) = values else {
        return Ok(Bilinear::zero(field, l, r, o));
    };
    if values.len() != l * r * o {
        return Err(InputError(format!(
            "{name} needs {} entries for shape {l}×{r}→{o}, got {}",
            l * r * o,
            values.len()
        )));
    }
    let coeffs = values
        .iter()
        .enumerate()
        .map(|(i, v)| entry(field, &format!("{name}[{i}]"), v))
        .collect::<Result<Vec<_>, _>>()?;
    Bilinear::from_coeffs(field, l, r, o, coeffs).map_err(|e| InputError(e.to_string()))
}

pub fn tensor_values(b: &Bilinear) -> Vec<Value> {
    b.coeffs().iter().map(scalar_value).collect()
}

fn matrix(field: Field, name: &str, rows: &[Vec<Value>]) -> Result<Matrix, InputError> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| entry(field, &format!("maps.{name}[{i}][{j}]"), v))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(field, parsed).map_err(|e| InputError(format!("maps.{name}: {e}")))
}

pub fn matrix_values(m: &Matrix) -> Vec<Vec<Value>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(scalar_value).collect())
        .collect()
}

/// `K1`, `D2` (dual numbers), `KxK`, `T2` (upper triangular 2×2), `zero:n`,
/// `trunc:n` (`K[x]/(xⁿ)`), `nil:n`.
pub fn named_algebra(field: Field, name: &str) -> Result<Algebra, InputError> {
    let sized = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
    };
    match name {
        "K1" => Ok(Algebra::k1(field)),
        "D2" => Ok(Algebra::dual_numbers(field)),
        "KxK" => Ok(Algebra::k_times_k(field)),
        "T2" => Ok(Algebra::upper_triangular(field)),
        _ => {
            if let Some(n) = sized("zero:") {
                Ok(Algebra::zero(field, n))
            } else if let Some(n) = sized("trunc:") {
                Ok(Algebra::truncated_polynomials(field, n))
            } else if let Some(n) = sized("nil:") {
                Ok(Algebra::nilpotent(field, n))
            } else {
                Err(InputError(format!("unknown algebra {name:?}")))
            }
        }
    }
}

fn build_factory(field: Field, f: &FactorySpec) -> Result<QuasiTwilledAlgebra, InputError> {
    let a = named_algebra(field, &f.algebra)?;
    let err = |e: qta_core::Error| InputError(format!("factory {}: {e}", f.name));
    let reg = Bimodule::regular(&a);
    match f.name.as_str() {
        "direct_product" => {
            let b = named_algebra(field, f.b.as_deref().unwrap_or(&f.algebra))?;
            factories::direct_product(&a, &b).map_err(err)
        }
        "semidirect" => factories::semidirect(&a, &reg).map_err(err),
        "algebra_in_bimodules" => factories::algebra_in_bimodules(&a, &a, &reg).map_err(err),
        "left_module_only" => factories::left_module_only(&a, &a.mu).map_err(err),
        "right_module_only" => factories::right_module_only(&a, &a.mu).map_err(err),
        "box" => factories::box_product(&a).map_err(err),
        "theta_twisted_semidirect" => {
            factories::theta_twisted_semidirect(&a, &reg, &a.mu).map_err(err)
        }
        "reynolds" => factories::reynolds_shape(&a).map_err(err),
        "matched_pair_box" => {
            let q = factories::box_product(&a).map_err(err)?;
            defmap::induced_matched_pair(&q, &Matrix::identity(field, a.dim()))
                .map(|m| m.into_qta())
                .map_err(err)
        }
        other => Err(InputError(format!(
            "unknown factory {other:?}; expected one of {}",
            FACTORIES.join(", ")
        ))),
    }
}

pub fn load(file: &AlgebraFile) -> Result<Loaded, InputError> {
    if file.version != VERSION {
        return Err(InputError(format!(
            "unsupported version {}; expected {VERSION}",
            file.version
        )));
    }
    let field = field_of(&file.field)?;
    let tensors = [
        &file.mu,
        &file.nu,
        &file.tr,
        &file.tl,
        &file.rh,
        &file.lh,
        &file.theta,
    ];
    let q = match &file.factory {
        Some(f) => {
            if tensors.iter().any(|t| t.is_some()) {
                return Err(InputError(
                    "give either a factory or structure tensors, not both".into(),
                ));
            }
            let q = build_factory(field, f)?;
            if let Some(d) = file.dims {
                if (d.a, d.b) != (q.dim_a(), q.dim_b()) {
                    return Err(InputError(format!(
                        "dims {{A: {}, B: {}}} disagree with the factory's ({}, {})",
                        d.a,
                        d.b,
                        q.dim_a(),
                        q.dim_b()
                    )));
                }
            }
            q
        }
        None => {
            let d = file
                .dims
                .ok_or_else(|| InputError("dims is required without a factory".into()))?;
            let (a, b) = (d.a, d.b);
            let maps = StructureMaps {
                mu: tensor(field, "mu", file.mu.as_ref(), (a, a, a))?,
                nu: tensor(field, "nu", file.nu.as_ref(), (b, b, b))?,
                tr: tensor(field, "tr", file.tr.as_ref(), (a, b, b))?,
                tl: tensor(field, "tl", file.tl.as_ref(), (b, a, b))?,
                rh: tensor(field, "rh", file.rh.as_ref(), (b, a, a))?,
                lh: tensor(field, "lh", file.lh.as_ref(), (a, b, a))?,
                theta: tensor(field, "theta", file.theta.as_ref(), (a, a, b))?,
            };
            QuasiTwilledAlgebra::unchecked(field, SplitSpace::new(a, b), maps)
                .map_err(|e| InputError(e.to_string()))?
        }
    };
    let maps = file
        .maps
        .iter()
        .map(|(name, rows)| Ok((name.clone(), matrix(field, name, rows)?)))
        .collect::<Result<BTreeMap<_, _>, InputError>>()?;
    let ttd = match &file.ttd {
        None => None,
        Some(t) => {
            let n = t.dim;
            let shape = (n, n, n);
            Some(
                TwistedTridendriform::unchecked(
                    tensor(field, "ttd.prec", Some(&t.prec), shape)?,
                    tensor(field, "ttd.succ", Some(&t.succ), shape)?,
                    tensor(field, "ttd.vee", Some(&t.vee), shape)?,
                    tensor(field, "ttd.dot", Some(&t.dot), shape)?,
                )
                .map_err(|e| InputError(e.to_string()))?,
            )
        }
    };
    Ok(Loaded {
        field,
        q,
        maps,
        ttd,
    })
}

/// Raw tensors for `q`, with every structure map written out.
pub fn to_file(
    q: &QuasiTwilledAlgebra,
    maps: &BTreeMap<String, Matrix>,
    ttd: Option<&TwistedTridendriform>,
) -> AlgebraFile {
    let m = q.maps();
    AlgebraFile {
        version: VERSION,
        field: spec_of(q.field()),
        dims: Some(Dims {
            a: q.dim_a(),
            b: q.dim_b(),
        }),
        mu: Some(tensor_values(&m.mu)),
        nu: Some(tensor_values(&m.nu)),
        tr: Some(tensor_values(&m.tr)),
        tl: Some(tensor_values(&m.tl)),
        rh: Some(tensor_values(&m.rh)),
        lh: Some(tensor_values(&m.lh)),
        theta: Some(tensor_values(&m.theta)),
        maps: maps
            .iter()
            .map(|(k, v)| (k.clone(), matrix_values(v)))
            .collect(),
        factory: None,
        ttd: ttd.map(|t| TtdSpec {
            dim: t.dim(),
            prec: tensor_values(&t.prec),
            succ: tensor_values(&t.succ),
            vee: tensor_values(&t.vee),
            dot: tensor_values(&t.dot),
        }),
    }
}
