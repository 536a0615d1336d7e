//! Strong deformation maps `D: A → B` and weak deformation maps `r: B → A`.
//!
//! Maps are plain matrices in the fixed bases: `D` has `dim B` rows and
//! `dim A` columns, `r` has `dim A` rows and `dim B` columns.

use std::fmt;

use crate::bigraded::{Side, StructureMaps};
use crate::linalg::{self, unit_vector, Matrix};
use crate::multilinear::{pow, Bilinear, HomMap, MultiMap};
use crate::qta::factories::{self, MatchedPairData};
use crate::qta::{
    check_law, cohomology_from_differentials, Algebra, LawCheck, LawReport, MatchedPair, Origin,
    QuasiTwilledAlgebra,
};
use crate::{Error, Field, Scalar};

fn check_shape(m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<(), Error> {
    if (m.rows(), m.cols()) != (rows, cols) {
        return Err(Error::Dimension(format!(
            "{what} must be a {rows}×{cols} matrix, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn strong_shape(q: &QuasiTwilledAlgebra, d: &Matrix) -> Result<(), Error> {
    check_shape(d, q.dim_b(), q.dim_a(), "D: A → B")
}

fn weak_shape(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<(), Error> {
    check_shape(r, q.dim_a(), q.dim_b(), "r: B → A")
}

fn bilinear(
    field: Field,
    l: usize,
    r: usize,
    o: usize,
    f: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
) -> Bilinear {
    Bilinear::from_fn(field, l, r, o, |i, j| {
        f(&unit_vector(field, l, i), &unit_vector(field, r, j))
    })
}

fn sum(vs: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut it = vs.iter();
    let mut acc = it.next().expect("nonempty").clone();
    for v in it {
        acc = linalg::add(&acc, v);
    }
    acc
}

// ---------------------------------------------------------------- strong maps

/// The defect `D(ab + a↼Db + Da⇀b) − (DaDb + a▷Db + Da◁b + θ(a,b))`.
fn strong_defect(
    q: &QuasiTwilledAlgebra,
    d: &Matrix,
    a: &[Scalar],
    b: &[Scalar],
) -> (Vec<Scalar>, Vec<Scalar>) {
    let (da, db) = (d.apply(a), d.apply(b));
    let lhs = d.apply(&sum(&[q.mu(a, b), q.lh(a, &db), q.rh(&da, b)]));
    let rhs = sum(&[q.nu(&da, &db), q.tr(a, &db), q.tl(&da, b), q.theta(a, b)]);
    (lhs, rhs)
}

/// The strong deformation map equation on every pair of basis vectors of `A`,
/// with the first failing pair.
pub fn strong_check(q: &QuasiTwilledAlgebra, d: &Matrix) -> Result<LawCheck, Error> {
    strong_shape(q, d)?;
    let n = q.dim_a();
    Ok(check_law(q.field(), "strong", &[n, n], |v| {
        strong_defect(q, d, &v[0], &v[1])
    }))
}

pub fn is_strong(q: &QuasiTwilledAlgebra, d: &Matrix) -> Result<bool, Error> {
    Ok(strong_check(q, d)?.holds())
}

/// Whether `Gr(D) = {(a, Da)}` is closed under the total product.
pub fn graph_check_strong(q: &QuasiTwilledAlgebra, d: &Matrix) -> Result<bool, Error> {
    strong_shape(q, d)?;
    let f = q.field();
    let sp = q.space();
    let prod = q.total_product();
    let graph = |a: &[Scalar]| {
        let mut v = sp.include(Side::A, a, f);
        for (i, c) in d.apply(a).into_iter().enumerate() {
            v[sp.global(Side::B, i)] = c;
        }
        v
    };
    for i in 0..q.dim_a() {
        for j in 0..q.dim_a() {
            let u = graph(&unit_vector(f, q.dim_a(), i));
            let w = graph(&unit_vector(f, q.dim_a(), j));
            let p = prod.eval(&[&u, &w]);
            if p != graph(&sp.part(Side::A, &p)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn require_strong(q: &QuasiTwilledAlgebra, d: &Matrix) -> Result<(), Error> {
    if !is_strong(q, d)? {
        return Err(Error::NotStrong);
    }
    Ok(())
}

/// `a·_D b = ab + a↼D(b) + D(a)⇀b`, validated associative.
pub fn induced_a_d(q: &QuasiTwilledAlgebra, d: &Matrix) -> Result<Algebra, Error> {
    require_strong(q, d)?;
    Algebra::new(mu_d(q, d))
}

fn mu_d(q: &QuasiTwilledAlgebra, d: &Matrix) -> Bilinear {
    let n = q.dim_a();
    bilinear(q.field(), n, n, n, |a, b| {
        sum(&[q.mu(a, b), q.lh(a, &d.apply(b)), q.rh(&d.apply(a), b)])
    })
}

/// `(▷_D, ◁_D)` with `a▷_D x = a▷x + D(a)x − D(a↼x)` and `x◁_D a = x◁a + xD(a) − D(x⇀a)`.
fn actions_d(q: &QuasiTwilledAlgebra, d: &Matrix) -> (Bilinear, Bilinear) {
    let (na, nb) = (q.dim_a(), q.dim_b());
    let f = q.field();
    let tr = bilinear(f, na, nb, nb, |a, x| {
        linalg::sub(
            &linalg::add(&q.tr(a, x), &q.nu(&d.apply(a), x)),
            &d.apply(&q.lh(a, x)),
        )
    });
    let tl = bilinear(f, nb, na, nb, |x, a| {
        linalg::sub(
            &linalg::add(&q.tl(x, a), &q.nu(x, &d.apply(a))),
            &d.apply(&q.rh(x, a)),
        )
    });
    (tr, tl)
}

/// `(A_{μ_D}, B_ν, ▷_D, ◁_D, ⇀, ↼)`, validated as a matched pair.
pub fn induced_matched_pair(q: &QuasiTwilledAlgebra, d: &Matrix) -> Result<MatchedPair, Error> {
    require_strong(q, d)?;
    let (tr, tl) = actions_d(q, d);
    factories::matched_pair(&MatchedPairData {
        a: Algebra::unchecked(mu_d(q, d)),
        b: q.algebra_b(),
        tr,
        tl,
        rh: q.maps().rh.clone(),
        lh: q.maps().lh.clone(),
    })
}

/// The Hochschild complex of an algebra with coefficients in a bimodule,
/// `C^n = Hom(X^{⊗n}, M)`.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    /// `X × X → X`
    pub product: Bilinear,
    /// `X × M → M`
    pub left: Bilinear,
    /// `M × X → M`
    pub right: Bilinear,
}

impl HochschildComplex {
    pub fn field(&self) -> Field {
        self.product.field()
    }

    pub fn algebra_dim(&self) -> usize {
        self.product.shape().0
    }

    pub fn module_dim(&self) -> usize {
        self.left.shape().2
    }

    pub fn cochain_dim(&self, n: usize) -> usize {
        pow(self.algebra_dim(), n) * self.module_dim()
    }

    /// `δf(x_1,…,x_{n+1}) = x_1·f(x_2,…) + Σ (−1)^i f(…,x_i x_{i+1},…) + (−1)^{n+1} f(x_1,…,x_n)·x_{n+1}`.
    pub fn differential(&self, f: &HomMap) -> HomMap {
        let field = self.field();
        let (x, m) = (self.algebra_dim(), self.module_dim());
        assert_eq!((f.input(), f.output()), (x, m), "cochain shape");
        let n = f.arity();
        HomMap::from_fn(field, x, m, n + 1, |t| {
            let mut out = self.left.apply(&unit_vector(field, x, t[0]), f.at(&t[1..]));
            for i in 0..n {
                let prod = self.product.value(t[i], t[i + 1]);
                let mut args: Vec<Vec<Scalar>> = Vec::with_capacity(n);
                for (k, &ti) in t.iter().enumerate() {
                    if k == i {
                        args.push(prod.to_vec());
                    } else if k != i + 1 {
                        args.push(unit_vector(field, x, ti));
                    }
                }
                let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
                let term = f.eval(&refs);
                out = if i % 2 == 0 {
                    linalg::sub(&out, &term)
                } else {
                    linalg::add(&out, &term)
                };
            }
            let last = self
                .right
                .apply(f.at(&t[..n]), &unit_vector(field, x, t[n]));
            if n % 2 == 0 {
                linalg::sub(&out, &last)
            } else {
                linalg::add(&out, &last)
            }
        })
    }

    /// Matrix of `δ: C^n → C^{n+1}` in the coefficient bases.
    pub fn matrix(&self, n: usize) -> Matrix {
        let field = self.field();
        let (x, m) = (self.algebra_dim(), self.module_dim());
        let (src, dst) = (self.cochain_dim(n), self.cochain_dim(n + 1));
        let mut mat = Matrix::zeros(field, dst, src);
        for j in 0..src {
            let mut coeffs = vec![field.zero(); src];
            coeffs[j] = field.one();
            let f = HomMap::from_coeffs(field, x, m, n, coeffs).expect("basis cochain");
            for (i, c) in self.differential(&f).coeffs().iter().enumerate() {
                mat.set(i, j, c.clone());
            }
        }
        mat
    }

    pub fn cohomology_dims(&self, max_degree: usize) -> Vec<usize> {
        let mats: Vec<Matrix> = (0..=max_degree).map(|n| self.matrix(n)).collect();
        cohomology_from_differentials(&mats)
    }
}

/// The complex of `A_D` with coefficients in `(B, ▷_D, ◁_D)`.
pub fn strong_complex(q: &QuasiTwilledAlgebra, d: &Matrix) -> Result<HochschildComplex, Error> {
    require_strong(q, d)?;
    let (left, right) = actions_d(q, d);
    Ok(HochschildComplex {
        product: mu_d(q, d),
        left,
        right,
    })
}

/// `δ^D f` for `f ∈ Hom(A^{⊗n}, B)`.
pub fn delta_d(q: &QuasiTwilledAlgebra, d: &Matrix, f: &HomMap) -> Result<HomMap, Error> {
    if (f.input(), f.output()) != (q.dim_a(), q.dim_b()) {
        return Err(Error::Dimension("δ^D acts on Hom(A^⊗n, B)".into()));
    }
    Ok(strong_complex(q, d)?.differential(f))
}

pub fn strong_cohomology_dims(
    q: &QuasiTwilledAlgebra,
    d: &Matrix,
    max_degree: usize,
) -> Result<Vec<usize>, Error> {
    Ok(strong_complex(q, d)?.cohomology_dims(max_degree))
}

// ------------------------------------------------------------------ weak maps

/// `x·_r y = xy + r(x)▷y + x◁r(y) + θ(rx, ry)`.
fn nu_r_at(q: &QuasiTwilledAlgebra, r: &Matrix, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let (rx, ry) = (r.apply(x), r.apply(y));
    sum(&[q.nu(x, y), q.tr(&rx, y), q.tl(x, &ry), q.theta(&rx, &ry)])
}

/// The `A`-valued defect of the weak equation, which is also `ψ_r` on `B ⊗ B`.
fn weak_defect(q: &QuasiTwilledAlgebra, r: &Matrix, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let (rx, ry) = (r.apply(x), r.apply(y));
    let lhs = sum(&[q.mu(&rx, &ry), q.lh(&rx, y), q.rh(x, &ry)]);
    linalg::sub(&lhs, &r.apply(&nu_r_at(q, r, x, y)))
}

/// The weak deformation map equation on every pair of basis vectors of `B`,
/// with the first failing pair.
pub fn weak_check(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<LawCheck, Error> {
    weak_shape(q, r)?;
    let n = q.dim_b();
    Ok(check_law(q.field(), "weak", &[n, n], |v| {
        let (rx, ry) = (r.apply(&v[0]), r.apply(&v[1]));
        let lhs = sum(&[q.mu(&rx, &ry), q.lh(&rx, &v[1]), q.rh(&v[0], &ry)]);
        (lhs, r.apply(&nu_r_at(q, r, &v[0], &v[1])))
    }))
}

pub fn is_weak(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<bool, Error> {
    Ok(weak_check(q, r)?.holds())
}

/// Whether `Gr(r) = {(rx, x)}` is closed under the total product.
pub fn graph_check_weak(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<bool, Error> {
    weak_shape(q, r)?;
    let f = q.field();
    let sp = q.space();
    let prod = q.total_product();
    let graph = |x: &[Scalar]| {
        let mut v = sp.include(Side::B, x, f);
        for (i, c) in r.apply(x).into_iter().enumerate() {
            v[sp.global(Side::A, i)] = c;
        }
        v
    };
    for i in 0..q.dim_b() {
        for j in 0..q.dim_b() {
            let u = graph(&unit_vector(f, q.dim_b(), i));
            let w = graph(&unit_vector(f, q.dim_b(), j));
            let p = prod.eval(&[&u, &w]);
            if p != graph(&sp.part(Side::B, &p)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn require_weak(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<(), Error> {
    if !is_weak(q, r)? {
        return Err(Error::NotWeak);
    }
    Ok(())
}

/// The product of `B_r`, validated associative.
pub fn induced_b_r(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<Algebra, Error> {
    require_weak(q, r)?;
    let n = q.dim_b();
    Algebra::new(bilinear(q.field(), n, n, n, |x, y| nu_r_at(q, r, x, y)))
}

/// The seven maps `(μ_r, ν_r, ▷_r, ◁_r, ⇀_r, ↼_r, θ)` for any linear `r`.
fn deformed_maps(q: &QuasiTwilledAlgebra, r: &Matrix) -> StructureMaps {
    let f = q.field();
    let (na, nb) = (q.dim_a(), q.dim_b());
    let mu = bilinear(f, na, na, na, |a, b| {
        linalg::sub(&q.mu(a, b), &r.apply(&q.theta(a, b)))
    });
    let nu = bilinear(f, nb, nb, nb, |x, y| nu_r_at(q, r, x, y));
    let tr = bilinear(f, na, nb, nb, |a, x| {
        linalg::add(&q.tr(a, x), &q.theta(a, &r.apply(x)))
    });
    let tl = bilinear(f, nb, na, nb, |x, a| {
        linalg::add(&q.tl(x, a), &q.theta(&r.apply(x), a))
    });
    let rh = bilinear(f, nb, na, na, |x, a| {
        let rx = r.apply(x);
        let plus = linalg::add(&q.rh(x, a), &q.mu(&rx, a));
        let minus = r.apply(&linalg::add(&q.tl(x, a), &q.theta(&rx, a)));
        linalg::sub(&plus, &minus)
    });
    let lh = bilinear(f, na, nb, na, |a, x| {
        let rx = r.apply(x);
        let plus = linalg::add(&q.lh(a, x), &q.mu(a, &rx));
        let minus = r.apply(&linalg::add(&q.tr(a, x), &q.theta(a, &rx)));
        linalg::sub(&plus, &minus)
    });
    StructureMaps {
        mu,
        nu,
        tr,
        tl,
        rh,
        lh,
        theta: q.maps().theta.clone(),
    }
}

/// The deformed quasi-twilled algebra `𝔸_r`, validated.
pub fn deformed_qta(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<QuasiTwilledAlgebra, Error> {
    require_weak(q, r)?;
    QuasiTwilledAlgebra::new(q.field(), q.space(), deformed_maps(q, r))
}

/// The four pieces of `Ω_r = θ̃ + (μ̂)_r + (ν̂)_r + ψ_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaR {
    pub theta: MultiMap,
    pub mu: MultiMap,
    pub nu: MultiMap,
    /// Bidegree `−1|2`: `B ⊗ B → A`.
    pub psi: MultiMap,
}

impl OmegaR {
    pub fn total(&self) -> MultiMap {
        self.theta.add(&self.mu).add(&self.nu).add(&self.psi)
    }
}

/// `ψ_r : B × B → A`, vanishing exactly when `r` is weak.
pub fn psi_r(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<Bilinear, Error> {
    weak_shape(q, r)?;
    let (na, nb) = (q.dim_a(), q.dim_b());
    Ok(bilinear(q.field(), nb, nb, na, |x, y| {
        weak_defect(q, r, x, y)
    }))
}

/// Componentwise `Ω_r` for an arbitrary linear `r`.
pub fn omega_r_parts(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<OmegaR, Error> {
    let psi = psi_r(q, r)?;
    let sp = q.space();
    let m = deformed_maps(q, r);
    let (theta, mu, nu) = sp.hat_components(&m)?;
    Ok(OmegaR {
        theta,
        mu,
        nu,
        psi: sp.hat(&psi, Side::B, Side::B, Side::A),
    })
}

/// `φ⁻¹ ∘ Ω ∘ (φ ⊗ φ)` with `φ(a, x) = (a + r(x), x)`.
///
/// This is the product of `A ⊕ B` transported along the automorphism that
/// sends `B` onto `Gr(r)`, so it is associative for every `r`.
pub fn omega_r_conjugate(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<MultiMap, Error> {
    weak_shape(q, r)?;
    let sp = q.space();
    let f = q.field();
    let n = sp.total();
    let phi = |v: &[Scalar], sign: &Scalar| {
        let shift = linalg::scale(sign, &r.apply(&sp.part(Side::B, v)));
        let mut out = v.to_vec();
        for (i, c) in shift.into_iter().enumerate() {
            out[sp.global(Side::A, i)] += &c;
        }
        out
    };
    let (plus, minus) = (f.one(), -f.one());
    let omega = q.omega();
    Ok(MultiMap::from_fn(f, n, 2, |t| {
        let u = phi(&unit_vector(f, n, t[0]), &plus);
        let v = phi(&unit_vector(f, n, t[1]), &plus);
        phi(&omega.eval(&[&u, &v]), &minus)
    }))
}

/// The complex of `B_r` with coefficients in `(A, ⇀_r, ↼_r)`.
pub fn weak_complex(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<HochschildComplex, Error> {
    require_weak(q, r)?;
    let m = deformed_maps(q, r);
    Ok(HochschildComplex {
        product: m.nu,
        left: m.rh,
        right: m.lh,
    })
}

/// `δ^r f` for `f ∈ Hom(B^{⊗n}, A)`.
pub fn delta_r(q: &QuasiTwilledAlgebra, r: &Matrix, f: &HomMap) -> Result<HomMap, Error> {
    if (f.input(), f.output()) != (q.dim_b(), q.dim_a()) {
        return Err(Error::Dimension("δ^r acts on Hom(B^⊗n, A)".into()));
    }
    Ok(weak_complex(q, r)?.differential(f))
}

pub fn weak_cohomology_dims(
    q: &QuasiTwilledAlgebra,
    r: &Matrix,
    max_degree: usize,
) -> Result<Vec<usize>, Error> {
    Ok(weak_complex(q, r)?.cohomology_dims(max_degree))
}

// ----------------------------------------------------------------- searching

/// Every `rows × cols` matrix over a prime field, in lexicographic order of
/// the row-major entries.
pub fn all_matrices(field: Field, rows: usize, cols: usize) -> impl Iterator<Item = Matrix> {
    let p = field.characteristic();
    assert!(p > 0, "only finite fields can be enumerated");
    let n = rows * cols;
    let count = (p as u128)
        .checked_pow(n as u32)
        .expect("search space fits in u128");
    (0..count).map(move |mut k| {
        let mut entries = vec![field.zero(); n];
        for slot in entries.iter_mut().rev() {
            *slot = field.from_i64((k % p as u128) as i64);
            k /= p as u128;
        }
        Matrix::from_fn(field, rows, cols, |i, j| entries[i * cols + j].clone())
    })
}

// ---------------------------------------------------------------- recognizer

/// Classical operator names that strong and weak maps specialize to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    AlgebraHomomorphism,
    Derivation,
    CrossedHomomorphism,
    ModifiedRMatrix,
    RotaBaxterWeight0,
    RotaBaxterWeight1,
    TwistedRotaBaxter,
    ReynoldsOperator,
    LeftAveraging,
    RightAveraging,
    MatchedPairDeformationMap,
    NonAbelianTwistedRotaBaxter,
    GenericStrong,
    GenericWeak,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OperatorKind::AlgebraHomomorphism => "algebra homomorphism",
            OperatorKind::Derivation => "derivation",
            OperatorKind::CrossedHomomorphism => "crossed homomorphism",
            OperatorKind::ModifiedRMatrix => "modified associative r-matrix",
            OperatorKind::RotaBaxterWeight0 => "relative Rota-Baxter operator of weight 0",
            OperatorKind::RotaBaxterWeight1 => "relative Rota-Baxter operator of weight 1",
            OperatorKind::TwistedRotaBaxter => "theta-twisted Rota-Baxter operator",
            OperatorKind::ReynoldsOperator => "Reynolds operator",
            OperatorKind::LeftAveraging => "relative left averaging operator",
            OperatorKind::RightAveraging => "relative right averaging operator",
            OperatorKind::MatchedPairDeformationMap => "deformation map in a matched pair",
            OperatorKind::NonAbelianTwistedRotaBaxter => {
                "Rota-Baxter operator twisted by a non-abelian 2-cocycle"
            }
            OperatorKind::GenericStrong => "strong deformation map",
            OperatorKind::GenericWeak => "weak deformation map",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Recognized {
    pub strong: OperatorKind,
    pub weak: OperatorKind,
}

/// Names the operators that strong and weak maps become for a factory-built algebra.
pub fn recognize(q: &QuasiTwilledAlgebra) -> Recognized {
    use OperatorKind::*;
    let (strong, weak) = match q.origin() {
        Origin::DirectProduct => (AlgebraHomomorphism, AlgebraHomomorphism),
        Origin::Semidirect => (Derivation, RotaBaxterWeight0),
        Origin::AlgebraInBimodules => (CrossedHomomorphism, RotaBaxterWeight1),
        Origin::LeftModuleOnly => (GenericStrong, LeftAveraging),
        Origin::RightModuleOnly => (GenericStrong, RightAveraging),
        Origin::MatchedPair => (GenericStrong, MatchedPairDeformationMap),
        Origin::Box => (ModifiedRMatrix, GenericWeak),
        Origin::ThetaTwistedSemidirect => (GenericStrong, TwistedRotaBaxter),
        Origin::ReynoldsShape => (GenericStrong, ReynoldsOperator),
        Origin::NonabelianBoxtimes => (GenericStrong, NonAbelianTwistedRotaBaxter),
        Origin::Raw => (GenericStrong, GenericWeak),
    };
    Recognized { strong, weak }
}

/// All laws a deformed structure must satisfy, for diagnostics.
pub fn deformed_report(q: &QuasiTwilledAlgebra, r: &Matrix) -> Result<LawReport, Error> {
    weak_shape(q, r)?;
    Ok(
        QuasiTwilledAlgebra::unchecked(q.field(), q.space(), deformed_maps(q, r))?
            .validate_axioms(),
    )
}

/// `HomMap` basis cochain with a single nonzero coefficient.
pub fn basis_cochain(
    field: Field,
    input: usize,
    output: usize,
    arity: usize,
    index: usize,
) -> HomMap {
    let mut coeffs = vec![field.zero(); pow(input, arity) * output];
    coeffs[index] = field.one();
    HomMap::from_coeffs(field, input, output, arity, coeffs).expect("valid index")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qta::factories::*;
    use crate::qta::Bimodule;

    const Q: Field = Field::Rational;

    fn scalar_map(field: Field, lambda: i64) -> Matrix {
        Matrix::from_i64(field, &[&[lambda]])
    }

    #[test]
    fn homomorphisms_of_k1() {
        let q = direct_product(&Algebra::k1(Q), &Algebra::k1(Q)).unwrap();
        for l in -3..=3 {
            let d = scalar_map(Q, l);
            let expected = l == 0 || l == 1;
            assert_eq!(is_strong(&q, &d).unwrap(), expected, "λ = {l}");
            assert_eq!(graph_check_strong(&q, &d).unwrap(), expected);
        }
    }

    #[test]
    fn modified_r_matrix_on_k1() {
        let q = box_product(&Algebra::k1(Q)).unwrap();
        for l in -3..=3 {
            assert_eq!(is_strong(&q, &scalar_map(Q, l)).unwrap(), l == 1 || l == -1);
        }
        let ad = induced_a_d(&q, &scalar_map(Q, 1)).unwrap();
        assert_eq!(ad.mu, Bilinear::from_i64(Q, 1, 1, 1, &[2]));
    }

    #[test]
    fn weak_scalars_on_k1() {
        let k = Algebra::k1(Q);
        let semi = semidirect(&k, &Bimodule::regular(&k)).unwrap();
        let w1 = algebra_in_bimodules(&k, &k, &Bimodule::regular(&k)).unwrap();
        let rey = reynolds_shape(&k).unwrap();
        for l in -3..=3 {
            let r = scalar_map(Q, l);
            assert_eq!(is_weak(&semi, &r).unwrap(), l == 0);
            assert_eq!(is_weak(&w1, &r).unwrap(), l == 0 || l == -1);
            assert_eq!(is_weak(&rey, &r).unwrap(), l == 0 || l == 1);
            for q in [&semi, &w1, &rey] {
                assert_eq!(is_weak(q, &r).unwrap(), graph_check_weak(q, &r).unwrap());
                assert_eq!(
                    omega_r_parts(q, &r).unwrap().total(),
                    omega_r_conjugate(q, &r).unwrap()
                );
            }
        }
        assert_eq!(
            induced_b_r(&w1, &scalar_map(Q, -1)).unwrap().mu,
            Bilinear::from_i64(Q, 1, 1, 1, &[-1])
        );
        assert_eq!(
            induced_b_r(&rey, &scalar_map(Q, 1)).unwrap().mu,
            Bilinear::from_i64(Q, 1, 1, 1, &[1])
        );
    }

    #[test]
    fn hochschild_squares_to_zero() {
        let d2 = Algebra::dual_numbers(Q);
        let c = HochschildComplex {
            product: d2.mu.clone(),
            left: d2.mu.clone(),
            right: d2.mu.clone(),
        };
        for n in 0..3 {
            assert!(c.matrix(n + 1).mul(&c.matrix(n)).is_zero());
        }
    }

    #[test]
    fn all_matrices_counts() {
        let f3 = Field::Prime(3);
        assert_eq!(all_matrices(f3, 1, 2).count(), 9);
        assert_eq!(all_matrices(f3, 0, 2).count(), 1);
    }
}
