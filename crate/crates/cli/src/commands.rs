use std::collections::BTreeMap;

use qta_core::defmap;
use qta_core::linalg::Matrix;
use qta_core::qta::{
    cohomology_from_differentials, differential_matrix, matched_pair_differential,
    qta_differential, Bimodule, Complex, MatchedPair, QuasiTwilledAlgebra,
};
use qta_core::tridend::{self, Degeneracy};
use qta_core::Field;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::file::{self, tensor_values, Loaded};
use crate::report::{self, count_passed, law, laws, Outcome};
use crate::{Failure, Kind, SearchKind, Theory};

pub fn require_valid(q: &QuasiTwilledAlgebra) -> Result<(), Failure> {
    match q.validate_axioms().first_failure() {
        None => Ok(()),
        Some(c) => Err(Failure::Math(format!(
            "the algebra is not quasi-twilled: {} fails",
            c.name
        ))),
    }
}

fn describe(l: &Loaded) -> Value {
    json!({
        "field": l.field.to_string(),
        "dims": { "A": l.q.dim_a(), "B": l.q.dim_b() },
        "origin": format!("{:?}", l.q.origin()),
    })
}

pub fn validate(l: &Loaded) -> Outcome {
    let q = &l.q;
    let axioms = q.validate_axioms();
    let mc = q.validate_via_mc();
    let agree = mc == axioms.passed();
    let (ok, total) = count_passed(&axioms);
    let mut passed = axioms.passed() && agree;
    let mut summary = format!(
        "validate: {ok}/{total} axioms hold; Maurer-Cartan test {}",
        if mc { "passes" } else { "fails" }
    );
    if !agree {
        summary.push_str(" (DISAGREES with the axioms)");
    }
    let mut out = Outcome::new(false, "")
        .with("algebra", describe(l))
        .with("checks", laws(&axioms))
        .with("maurer_cartan", json!(mc))
        .with("agree", json!(agree));

    let m = q.maps();
    if m.theta.is_zero() {
        let a = Bimodule {
            left: m.tr.clone(),
            right: m.tl.clone(),
        }
        .laws(&q.algebra_a());
        let b = Bimodule {
            left: m.rh.clone(),
            right: m.lh.clone(),
        }
        .laws(&q.algebra_b());
        passed &= a.passed() && b.passed();
        summary.push_str(&format!(
            "; matched pair checks {}",
            if a.passed() && b.passed() {
                "pass"
            } else {
                "fail"
            }
        ));
        out = out.with(
            "matched_pair",
            json!({ "B_over_A": laws(&a), "A_over_B": laws(&b) }),
        );
    }
    if let Some(t) = &l.ttd {
        let r = t.laws();
        passed &= r.passed();
        summary.push_str(&format!(
            "; tridendriform section {}",
            if r.passed() { "passes" } else { "fails" }
        ));
        out = out.with(
            "ttd",
            json!({ "checks": laws(&r), "degeneracy": format!("{:?}", t.degeneracy()) }),
        );
    }
    out.passed = passed;
    out.summary = summary;
    out
}

fn default_map(kind: Kind) -> &'static str {
    match kind {
        Kind::Strong => "D",
        Kind::Weak => "r",
    }
}

pub fn check_map(l: &Loaded, kind: Kind, name: Option<&str>) -> Result<Outcome, Failure> {
    let q = &l.q;
    require_valid(q)?;
    let name = name.unwrap_or(default_map(kind));
    let m = l.map(name)?;
    let tags = defmap::recognize(q);
    let (check, graph, tag) = match kind {
        Kind::Strong => (
            defmap::strong_check(q, m)?,
            defmap::graph_check_strong(q, m)?,
            tags.strong,
        ),
        Kind::Weak => (
            defmap::weak_check(q, m)?,
            defmap::graph_check_weak(q, m)?,
            tags.weak,
        ),
    };
    let agree = check.holds() == graph;
    let passed = check.holds() && graph;
    let word = match kind {
        Kind::Strong => "strong",
        Kind::Weak => "weak",
    };
    let summary = if passed {
        format!("check-map: {name} is a {word} deformation map ({tag})")
    } else {
        format!("check-map: {name} is not a {word} deformation map")
    };
    Ok(Outcome::new(passed && agree, summary)
        .with("algebra", describe(l))
        .with("kind", json!(word))
        .with("map", json!(name))
        .with("matrix", report::matrix(m))
        .with("equation", law(&check))
        .with("graph_closed", json!(graph))
        .with("agree", json!(agree))
        .with(
            "operator",
            json!(if passed {
                Value::from(tag.to_string())
            } else {
                Value::Null
            }),
        ))
}

pub fn cohomology(
    l: &Loaded,
    theory: Theory,
    max_degree: usize,
    name: Option<&str>,
) -> Result<Outcome, Failure> {
    let q = &l.q;
    require_valid(q)?;
    let (f, sp) = (q.field(), q.space());
    let mats: Vec<Matrix> = match theory {
        Theory::Qta => (0..=max_degree)
            .map(|n| {
                differential_matrix(f, &sp, Complex::QuasiTwilled, n, |c| qta_differential(q, c))
            })
            .collect::<Result<_, _>>()?,
        Theory::Matched => {
            let mp = MatchedPair::new(q.clone())?;
            (0..=max_degree)
                .map(|n| {
                    differential_matrix(f, &sp, Complex::MatchedPair, n, |c| {
                        matched_pair_differential(&mp, c)
                    })
                })
                .collect::<Result<_, _>>()?
        }
        Theory::Strong => {
            let c = defmap::strong_complex(q, l.map(name.unwrap_or("D"))?)?;
            (0..=max_degree).map(|n| c.matrix(n)).collect()
        }
        Theory::Weak => {
            let c = defmap::weak_complex(q, l.map(name.unwrap_or("r"))?)?;
            (0..=max_degree).map(|n| c.matrix(n)).collect()
        }
    };
    let square_zero = mats.windows(2).all(|w| w[1].mul(&w[0]).is_zero());
    let dims = cohomology_from_differentials(&mats);
    let cochains: Vec<usize> = mats.iter().map(Matrix::cols).collect();
    let summary = if square_zero {
        format!("cohomology ({theory:?}): dims {dims:?} in degrees 0..={max_degree}")
    } else {
        "cohomology: the differential does not square to zero".to_string()
    };
    Ok(Outcome::new(square_zero, summary)
        .with("algebra", describe(l))
        .with("theory", json!(format!("{theory:?}").to_lowercase()))
        .with("max_degree", json!(max_degree))
        .with("delta_squared_zero", json!(square_zero))
        .with("cochain_dims", json!(cochains))
        .with("dims", json!(dims)))
}

fn space_size(p: u64, coords: usize) -> u128 {
    (p as u128).checked_pow(coords as u32).unwrap_or(u128::MAX)
}

pub fn search(
    l: &Loaded,
    kind: SearchKind,
    p: u64,
    budget: u128,
    dim: Option<usize>,
) -> Result<Outcome, Failure> {
    let field = Field::prime(p)?;
    let q = if l.field == field {
        l.q.clone()
    } else if l.field == Field::Rational {
        l.q.reduce(p).ok_or_else(|| {
            Failure::Input(format!("the structure constants do not reduce modulo {p}"))
        })?
    } else {
        return Err(Failure::Input(format!(
            "the file is over {} but the search asks for F_{p}",
            l.field
        )));
    };
    let (size, solutions): (u128, Vec<Value>) = match kind {
        SearchKind::Strong | SearchKind::Weak => {
            let (rows, cols) = match kind {
                SearchKind::Strong => (q.dim_b(), q.dim_a()),
                _ => (q.dim_a(), q.dim_b()),
            };
            let size = space_size(p, rows * cols);
            if size > budget {
                return Err(qta_core::Error::BudgetExceeded { size, budget }.into());
            }
            let all: Vec<Matrix> = defmap::all_matrices(field, rows, cols).collect();
            let found: Vec<Matrix> = all
                .into_par_iter()
                .filter(|m| match kind {
                    SearchKind::Strong => defmap::is_strong(&q, m).expect("shape fixed above"),
                    _ => defmap::is_weak(&q, m).expect("shape fixed above"),
                })
                .collect();
            (size, found.iter().map(report::matrix).collect())
        }
        SearchKind::Cocycle => {
            let (a, b) = (q.algebra_a(), q.algebra_b());
            let (da, db) = (a.dim(), b.dim());
            let found = tridend::all_cocycles(&a, &b, budget)?;
            let size = space_size(p, da * db * db * 2 + da * da * db);
            let v = found
                .iter()
                .map(|c| json!({ "tr": tensor_values(&c.tr), "tl": tensor_values(&c.tl), "theta": tensor_values(&c.theta) }))
                .collect();
            (size, v)
        }
        SearchKind::Ttd => {
            let d = dim.unwrap_or(q.dim_b());
            let found = tridend::all_ttds(field, d, budget)?;
            let v = found
                .iter()
                .map(|t| {
                    json!({
                        "prec": tensor_values(&t.prec),
                        "succ": tensor_values(&t.succ),
                        "vee": tensor_values(&t.vee),
                        "dot": tensor_values(&t.dot),
                    })
                })
                .collect();
            (space_size(p, 4 * d.pow(3)), v)
        }
    };
    let name = format!("{kind:?}").to_lowercase();
    Ok(Outcome::new(
        true,
        format!(
            "search {name} over F_{p}: {} of {size} candidates",
            solutions.len()
        ),
    )
    .with("algebra", describe(l))
    .with("kind", json!(name))
    .with("field", json!(field.to_string()))
    .with("space_size", json!(size.to_string()))
    .with("count", json!(solutions.len()))
    .with("solutions", Value::Array(solutions)))
}

pub fn induce(
    l: &Loaded,
    kind: crate::InduceKind,
    name: Option<&str>,
) -> Result<(Outcome, file::AlgebraFile), Failure> {
    use crate::InduceKind as K;
    let q = &l.q;
    let none = BTreeMap::new();
    let (file, summary) = match kind {
        K::Strong => {
            require_valid(q)?;
            let d = l.map(name.unwrap_or("D"))?;
            let mp = defmap::induced_matched_pair(q, d)?;
            (
                file::to_file(mp.qta(), &none, None),
                "induce: the matched pair A_D ⋈ B".to_string(),
            )
        }
        K::Weak => {
            require_valid(q)?;
            let r = l.map(name.unwrap_or("r"))?;
            let deformed = defmap::deformed_qta(q, r)?;
            (
                file::to_file(&deformed, &none, None),
                "induce: the quasi-twilled algebra deformed by r".to_string(),
            )
        }
        K::Ttd => {
            let c = l.cocycle()?;
            if let Some(failed) = c.laws().first_failure() {
                return Err(Failure::Math(format!(
                    "not a non-abelian 2-cocycle: {} fails",
                    failed.name
                )));
            }
            let r = l.map(name.unwrap_or("r"))?;
            let t = tridend::induce_ttd(&c, r)?;
            let double = tridend::double_qta(&t)?;
            let kind = match t.degeneracy() {
                Degeneracy::General => "twisted tridendriform",
                Degeneracy::Tridendriform => "tridendriform (⋎ = 0)",
                Degeneracy::Ns => "NS (· = 0)",
                Degeneracy::Dendriform => "dendriform (⋎ = · = 0)",
            };
            (
                file::to_file(&double, &none, Some(&t)),
                format!("induce: a {kind} algebra and its double"),
            )
        }
    };
    let value = serde_json::to_value(&file).expect("serializable");
    Ok((
        Outcome::new(true, summary)
            .with("algebra", describe(l))
            .with("induced", value),
        file,
    ))
}
