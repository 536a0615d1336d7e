//! Sampled law checks for the L∞-algebras attached to a file.

use std::sync::Arc;

use qta_core::bigraded::{Bidegree, Side, SplitSpace};
use qta_core::defmap;
use qta_core::linalg::Matrix;
use qta_core::linf::{
    self, DegreeWindow, Element, Homogeneous, LInfinity, Projection, SignFlipped,
};
use qta_core::multilinear::{HomMap, MultiMap};
use qta_core::qta::QuasiTwilledAlgebra;
use qta_core::{Field, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::require_valid;
use crate::file::Loaded;
use crate::report::{self, Outcome};
use crate::{Failure, Which};

/// Candidate maps are enumerated when there are at most this many.
const ENUMERATE: u128 = 4096;
/// Budget for the `(Ω′, m′)` exhaustion of the simultaneous check.
const EXHAUST: u128 = 1 << 12;

pub struct Options {
    pub which: Which,
    pub samples: usize,
    pub seed: u64,
    pub window: usize,
    pub flip: Option<usize>,
}

#[derive(Clone, Copy)]
enum Carrier {
    /// Plain maps `from^{⊗n} → to`.
    Plain(Side, Side),
    /// Plain maps as above, or shifted elements of `𝒬`.
    Mixed(Side, Side),
}

struct Target {
    name: &'static str,
    l: Arc<dyn LInfinity>,
    carrier: Carrier,
    /// Side of the maps whose MC property is compared with a predicate.
    kind: Projection,
    /// The map the algebra is twisted by, if any.
    base: Option<Matrix>,
    simultaneous: bool,
}

fn small(field: Field, rng: &mut impl Rng) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

fn block(
    field: Field,
    space: SplitSpace,
    from: Side,
    to: Side,
    arity: usize,
    rng: &mut impl Rng,
) -> MultiMap {
    let (i, o) = (space.dim(from), space.dim(to));
    let h = HomMap::from_fn(field, i, o, arity, |_| {
        (0..o).map(|_| small(field, rng)).collect()
    });
    space.embed(&h, from, to)
}

fn in_q(field: Field, space: SplitSpace, arity: usize, rng: &mut impl Rng) -> MultiMap {
    let d = space.total();
    let f = MultiMap::from_fn(field, d, arity, |_| {
        (0..d).map(|_| small(field, rng)).collect()
    });
    let mut acc = MultiMap::zero(field, d, arity);
    for k in 0..=arity as i64 {
        acc.add_assign(&space.project(&f, Bidegree::new(k, arity as i64 - 1 - k)));
    }
    acc
}

fn sample(field: Field, space: SplitSpace, c: Carrier, rng: &mut impl Rng) -> Homogeneous {
    let arity = if rng.gen_bool(0.7) { 1 } else { 2 };
    match c {
        Carrier::Plain(from, to) => Homogeneous::plain(block(field, space, from, to, arity, rng)),
        Carrier::Mixed(from, to) => {
            if rng.gen_bool(0.5) {
                Homogeneous::shifted(in_q(field, space, arity, rng))
            } else {
                Homogeneous::plain(block(field, space, from, to, arity, rng))
            }
        }
    }
}

fn sides(p: Projection) -> (Side, Side) {
    match p {
        Projection::A => (Side::A, Side::B),
        Projection::B => (Side::B, Side::A),
    }
}

fn predicate(q: &QuasiTwilledAlgebra, p: Projection, m: &Matrix) -> Result<bool, Failure> {
    Ok(match p {
        Projection::A => defmap::is_strong(q, m)?,
        Projection::B => defmap::is_weak(q, m)?,
    })
}

fn element(q: &QuasiTwilledAlgebra, p: Projection, m: &Matrix) -> Element {
    match p {
        Projection::A => linf::strong_element(q, m),
        Projection::B => linf::weak_element(q, m),
    }
}

/// All maps over a small prime field, otherwise zero plus seeded samples.
fn candidates(
    q: &QuasiTwilledAlgebra,
    p: Projection,
    samples: usize,
    rng: &mut impl Rng,
) -> Vec<Matrix> {
    let field = q.field();
    let (from, to) = sides(p);
    let (rows, cols) = (q.space().dim(to), q.space().dim(from));
    let c = field.characteristic() as u128;
    if c > 0
        && c.checked_pow((rows * cols) as u32)
            .is_some_and(|n| n <= ENUMERATE)
    {
        return defmap::all_matrices(field, rows, cols).collect();
    }
    let mut v = vec![Matrix::zeros(field, rows, cols)];
    v.extend((0..samples).map(|_| {
        Matrix::from_fn(field, rows, cols, |_, _| {
            field.from_i64(rng.gen_range(-1..=1))
        })
    }));
    v
}

fn targets(l: &Loaded, o: &Options) -> Result<Vec<Target>, Failure> {
    let q = &l.q;
    let w = DegreeWindow::new(o.window)?;
    let (plain_a, plain_b) = (
        Carrier::Plain(Side::A, Side::B),
        Carrier::Plain(Side::B, Side::A),
    );
    let t = |name, l: Arc<dyn LInfinity>, carrier, kind, base, simultaneous| Target {
        name,
        l,
        carrier,
        kind,
        base,
        simultaneous,
    };
    let v = match o.which {
        Which::ControllingStrong => {
            vec![t(
                "controlling strong",
                Arc::new(linf::controlling_strong(q, w)?),
                plain_a,
                Projection::A,
                None,
                false,
            )]
        }
        Which::ControllingWeak => {
            vec![t(
                "controlling weak",
                Arc::new(linf::controlling_weak(q, w)?),
                plain_b,
                Projection::B,
                None,
                false,
            )]
        }
        Which::Governing => {
            let mut v = Vec::new();
            if let Some(d) = l.maps.get("D") {
                v.push(t(
                    "governing strong",
                    Arc::new(linf::governing_strong(q, d, w)?),
                    plain_a,
                    Projection::A,
                    Some(d.clone()),
                    false,
                ));
            }
            if let Some(r) = l.maps.get("r") {
                v.push(t(
                    "governing weak",
                    Arc::new(linf::governing_weak(q, r, w)?),
                    plain_b,
                    Projection::B,
                    Some(r.clone()),
                    false,
                ));
            }
            if v.is_empty() {
                return Err(Failure::Input(
                    "governing needs a map named \"D\" or \"r\" in the file".into(),
                ));
            }
            v
        }
        Which::Simultaneous => {
            let (f, sp) = (q.field(), q.space());
            vec![
                t(
                    "simultaneous strong",
                    Arc::new(linf::simultaneous_strong(f, sp, w)?),
                    Carrier::Mixed(Side::A, Side::B),
                    Projection::A,
                    None,
                    true,
                ),
                t(
                    "simultaneous weak",
                    Arc::new(linf::simultaneous_weak(f, sp, w)?),
                    Carrier::Mixed(Side::B, Side::A),
                    Projection::B,
                    None,
                    true,
                ),
            ]
        }
    };
    Ok(v.into_iter()
        .map(|mut t| {
            if let Some(k) = o.flip {
                t.l = Arc::new(SignFlipped::new(t.l, k));
            }
            t
        })
        .collect())
}

fn laws(t: &Target, o: &Options, rng: &mut impl Rng) -> Result<(Value, Value, usize), Failure> {
    let (field, space) = (t.l.field(), t.l.space());
    let (mut jacobi_fail, mut sym_fail) = (0, 0);
    let (mut jacobi_first, mut sym_first) = (Value::Null, Value::Null);
    let mut sym_checked = 0;
    for s in 0..o.samples {
        let n = rng.gen_range(0..=4);
        let xs: Vec<Homogeneous> = (0..n)
            .map(|_| sample(field, space, t.carrier, rng))
            .collect();
        let defect = linf::jacobi_defect(t.l.as_ref(), &xs)?;
        if !defect.is_zero() {
            jacobi_fail += 1;
            if jacobi_first.is_null() {
                jacobi_first = json!({
                    "sample": s,
                    "N": n,
                    "inputs": xs.iter().map(report::homogeneous).collect::<Vec<_>>(),
                    "defect": report::element(&defect),
                });
            }
        }
        if n >= 2 && n <= t.l.top_arity() {
            let i = rng.gen_range(0..n - 1);
            sym_checked += 1;
            let d = linf::symmetry_defect(t.l.as_ref(), &xs, i)?;
            if !d.is_zero() {
                sym_fail += 1;
                if sym_first.is_null() {
                    sym_first = json!({
                        "sample": s,
                        "N": n,
                        "swap": i,
                        "inputs": xs.iter().map(report::homogeneous).collect::<Vec<_>>(),
                    });
                }
            }
        }
    }
    Ok((
        json!({ "samples": o.samples, "failures": jacobi_fail, "first_failure": jacobi_first }),
        json!({ "samples": sym_checked, "failures": sym_fail, "first_failure": sym_first }),
        jacobi_fail + sym_fail,
    ))
}

/// MC elements against the direct predicate on candidate maps.
fn mc_checks(
    q: &QuasiTwilledAlgebra,
    t: &Target,
    o: &Options,
    rng: &mut impl Rng,
) -> Result<(Value, usize, Vec<Matrix>), Failure> {
    let valid = q.validate_axioms().passed();
    let (mut mc_count, mut direct_count, mut mismatches) = (0, 0, 0);
    let mut first = Value::Null;
    let mut solutions = Vec::new();
    let cands = candidates(q, t.kind, o.samples, rng);
    for m in &cands {
        let (elem, direct) = match (&t.base, t.simultaneous) {
            (Some(b), _) => (element(q, t.kind, m), predicate(q, t.kind, &b.add(m))?),
            (None, true) => (
                linf::pair_element(q, &element(q, t.kind, m)),
                valid && predicate(q, t.kind, m)?,
            ),
            (None, false) => (element(q, t.kind, m), predicate(q, t.kind, m)?),
        };
        let mc = linf::is_mc(t.l.as_ref(), &elem)?;
        mc_count += mc as usize;
        direct_count += direct as usize;
        if direct {
            solutions.push(m.clone());
        }
        if mc != direct {
            mismatches += 1;
            if first.is_null() {
                first =
                    json!({ "map": report::matrix(m), "maurer_cartan": mc, "predicate": direct });
            }
        }
    }
    let v = json!({
        "candidates": cands.len(),
        "maurer_cartan": mc_count,
        "predicate": direct_count,
        "mismatches": mismatches,
        "first_mismatch": first,
    });
    Ok((v, mismatches, solutions))
}

/// `mc_residual(l, α + β) = mc_residual(l^α, β)` for MC `α` and random `β`.
fn twist_checks(
    q: &QuasiTwilledAlgebra,
    t: &Target,
    solutions: &[Matrix],
    rng: &mut impl Rng,
) -> Result<(Value, usize), Failure> {
    let (from, to) = sides(t.kind);
    let (mut checks, mut failures) = (0, 0);
    for m in solutions.iter().take(2) {
        let alpha = element(q, t.kind, m);
        let twisted = linf::Twisted::new(t.l.clone(), alpha.clone())?;
        for _ in 0..3 {
            let beta = Element::plain(block(q.field(), q.space(), from, to, 1, rng));
            checks += 1;
            if linf::mc_residual(t.l.as_ref(), &alpha.add(&beta))?
                != linf::mc_residual(&twisted, &beta)?
            {
                failures += 1;
            }
        }
    }
    Ok((json!({ "checks": checks, "failures": failures }), failures))
}

fn exhaustion(
    q: &QuasiTwilledAlgebra,
    t: &Target,
    solutions: &[Matrix],
    window: usize,
) -> Result<(Value, usize), Failure> {
    if q.field().characteristic() == 0 || !q.validate_axioms().passed() {
        return Ok((Value::Null, 0));
    }
    let w = DegreeWindow::new(window)?;
    let mut runs = Vec::new();
    let mut bad = 0;
    for base in solutions.iter().take(2) {
        let cases = match linf::exhaust_pairs(q, t.kind, base, w, EXHAUST) {
            Ok(c) => c,
            Err(qta_core::Error::BudgetExceeded { .. }) => {
                return Ok((json!("skipped: search space too large"), 0))
            }
            Err(e) => return Err(e.into()),
        };
        let mismatches = cases.iter().filter(|c| c.mc != c.direct).count();
        bad += mismatches;
        runs.push(json!({
            "base": report::matrix(base),
            "candidates": cases.len(),
            "solutions": cases.iter().filter(|c| c.direct).count(),
            "mismatches": mismatches,
        }));
    }
    Ok((Value::Array(runs), bad))
}

pub fn run(l: &Loaded, o: &Options) -> Result<Outcome, Failure> {
    let q = &l.q;
    if !matches!(o.which, Which::Simultaneous) {
        require_valid(q)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut results = Vec::new();
    let mut failures = 0;
    let mut lines = Vec::new();
    for t in targets(l, o)? {
        let (jacobi, symmetry, f1) = laws(&t, o, &mut rng)?;
        let (mc, f2, solutions) = mc_checks(q, &t, o, &mut rng)?;
        let mut entry = json!({ "name": t.name, "top_arity": t.l.top_arity(), "jacobi": jacobi, "symmetry": symmetry, "maurer_cartan": mc });
        let f3;
        if t.simultaneous {
            let (v, bad) = exhaustion(q, &t, &solutions, o.window)?;
            entry["exhaustion"] = v;
            f3 = bad;
        } else if t.base.is_none() {
            let (v, bad) = twist_checks(q, &t, &solutions, &mut rng)?;
            entry["twist"] = v;
            f3 = bad;
        } else {
            let curved = !t.l.curvature()?.is_zero();
            entry["curvature_zero"] = json!(!curved);
            f3 = curved as usize;
        }
        let f = f1 + f2 + f3;
        lines.push(format!(
            "{}: {}",
            t.name,
            if f == 0 {
                "pass".to_string()
            } else {
                format!("{f} failure(s)")
            }
        ));
        failures += f;
        results.push(entry);
    }
    Ok(
        Outcome::new(failures == 0, format!("linf-check: {}", lines.join("; ")))
            .with("window", json!(o.window))
            .with("samples", json!(o.samples))
            .with("sign_flip", json!(o.flip))
            .with("algebras", Value::Array(results)),
    )
}
