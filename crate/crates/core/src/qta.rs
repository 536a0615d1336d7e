//! Quasi-twilled associative algebras: validation, cochains and cohomology.
//!
//! A quasi-twilled algebra is stored as its seven component maps
//! `(μ, ν, ▷, ◁, ⇀, ↼, θ)`; the total product on `A ⊕ B` is
//!
//! ```text
//! (a,x)·(b,y) = (ab + a↼y + x⇀b, xy + a▷y + x◁b + θ(a,b)).
//! ```

use crate::bigraded::{Bidegree, Side, SplitSpace, StructureMaps};
use crate::linalg::{self, unit_vector, Matrix};
use crate::multilinear::{decode, Bilinear, MultiMap};
use crate::{Error, Field, Scalar};

/// A basis tuple on which a law failed, with both sides of the law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// One local basis index per argument of the law, in the order the law
    /// names its variables.
    pub tuple: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub name: &'static str,
    pub witness: Option<Witness>,
}

impl LawCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Outcome of checking a list of multilinear identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawCheck::holds)
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| !c.holds())
    }

    pub fn get(&self, name: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Turns the first failure into an error naming `what` failed.
    pub fn into_result(self, what: &str) -> Result<(), Error> {
        match self.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::Law {
                what: what.to_string(),
                law: c.name.to_string(),
                witness: c
                    .witness
                    .as_ref()
                    .map(|w| w.tuple.clone())
                    .unwrap_or_default(),
            }),
        }
    }
}

/// Checks a multilinear identity on every basis tuple of the given spaces.
pub fn check_law(
    field: Field,
    name: &'static str,
    dims: &[usize],
    law: impl Fn(&[Vec<Scalar>]) -> (Vec<Scalar>, Vec<Scalar>),
) -> LawCheck {
    let total: usize = dims.iter().product();
    let mut tuple = vec![0; dims.len()];
    for mut idx in 0..total {
        for (slot, &d) in tuple.iter_mut().zip(dims).rev() {
            *slot = idx % d;
            idx /= d;
        }
        let args: Vec<Vec<Scalar>> = tuple
            .iter()
            .zip(dims)
            .map(|(&i, &d)| unit_vector(field, d, i))
            .collect();
        let (lhs, rhs) = law(&args);
        if lhs != rhs {
            return LawCheck {
                name,
                witness: Some(Witness {
                    tuple: tuple.clone(),
                    lhs,
                    rhs,
                }),
            };
        }
    }
    LawCheck {
        name,
        witness: None,
    }
}

/// A finite-dimensional algebra given by its structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub mu: Bilinear,
}

impl Algebra {
    /// Checks associativity.
    pub fn new(mu: Bilinear) -> Result<Algebra, Error> {
        let a = Algebra::unchecked(mu);
        a.associativity().into_result("algebra")?;
        Ok(a)
    }

    pub fn unchecked(mu: Bilinear) -> Algebra {
        let (l, r, o) = mu.shape();
        assert!(l == r && r == o, "an algebra product maps V×V→V");
        Algebra { mu }
    }

    pub fn field(&self) -> Field {
        self.mu.field()
    }

    pub fn dim(&self) -> usize {
        self.mu.shape().0
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.mu.apply(a, b)
    }

    pub fn associativity(&self) -> LawReport {
        let d = self.dim();
        LawReport {
            checks: vec![check_law(self.field(), "associativity", &[d, d, d], |v| {
                (
                    self.mul(&self.mul(&v[0], &v[1]), &v[2]),
                    self.mul(&v[0], &self.mul(&v[1], &v[2])),
                )
            })],
        }
    }

    /// The field itself, `e·e = e`.
    pub fn k1(field: Field) -> Algebra {
        Algebra::unchecked(Bilinear::from_i64(field, 1, 1, 1, &[1]))
    }

    /// Dual numbers `K[ε]/ε²` on the basis `{1, ε}`.
    pub fn dual_numbers(field: Field) -> Algebra {
        let mut mu = Bilinear::zero(field, 2, 2, 2);
        mu.set(0, 0, 0, field.one());
        mu.set(0, 1, 1, field.one());
        mu.set(1, 0, 1, field.one());
        Algebra::unchecked(mu)
    }

    /// The zero product on a space of dimension `dim`.
    pub fn zero(field: Field, dim: usize) -> Algebra {
        Algebra::unchecked(Bilinear::zero(field, dim, dim, dim))
    }

    /// `K × K` with componentwise product.
    pub fn k_times_k(field: Field) -> Algebra {
        let mut mu = Bilinear::zero(field, 2, 2, 2);
        mu.set(0, 0, 0, field.one());
        mu.set(1, 1, 1, field.one());
        Algebra::unchecked(mu)
    }

    /// Upper triangular 2×2 matrices on the basis `{E11, E12, E22}`.
    pub fn upper_triangular(field: Field) -> Algebra {
        let mut mu = Bilinear::zero(field, 3, 3, 3);
        mu.set(0, 0, 0, field.one());
        mu.set(0, 1, 1, field.one());
        mu.set(1, 2, 1, field.one());
        mu.set(2, 2, 2, field.one());
        Algebra::unchecked(mu)
    }

    /// `K[t]/t^n` on the basis `{1, t, …, t^{n−1}}`.
    pub fn truncated_polynomials(field: Field, n: usize) -> Algebra {
        let mu = Bilinear::from_fn(field, n, n, n, |i, j| {
            let mut v = vec![field.zero(); n];
            if i + j < n {
                v[i + j] = field.one();
            }
            v
        });
        Algebra::unchecked(mu)
    }

    /// The non-unital algebra spanned by `t, …, t^n` inside `K[t]/t^{n+1}`.
    pub fn nilpotent(field: Field, n: usize) -> Algebra {
        let mu = Bilinear::from_fn(field, n, n, n, |i, j| {
            let mut v = vec![field.zero(); n];
            if i + j + 1 < n {
                v[i + j + 1] = field.one();
            }
            v
        });
        Algebra::unchecked(mu)
    }

    /// Transports the product along the basis change `p` (columns are the new
    /// basis vectors in old coordinates).
    pub fn change_basis(&self, p: &Matrix) -> Option<Algebra> {
        let inv = p.inverse()?;
        let f = self.field();
        let d = self.dim();
        let mu = Bilinear::from_fn(f, d, d, d, |i, j| {
            inv.apply(&self.mul(&p.column(i), &p.column(j)))
        });
        Some(Algebra::unchecked(mu))
    }
}

/// A bimodule `(M, ▷, ◁)` over an algebra of dimension `algebra_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    /// `A × M → M`
    pub left: Bilinear,
    /// `M × A → M`
    pub right: Bilinear,
}

impl Bimodule {
    pub fn new(algebra: &Algebra, left: Bilinear, right: Bilinear) -> Result<Bimodule, Error> {
        let m = Bimodule { left, right };
        m.laws(algebra).into_result("bimodule")?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.left.shape().2
    }

    /// The algebra acting on itself by multiplication.
    pub fn regular(algebra: &Algebra) -> Bimodule {
        Bimodule {
            left: algebra.mu.clone(),
            right: algebra.mu.clone(),
        }
    }

    pub fn zero(algebra: &Algebra, dim: usize) -> Bimodule {
        let f = algebra.field();
        let a = algebra.dim();
        Bimodule {
            left: Bilinear::zero(f, a, dim, dim),
            right: Bilinear::zero(f, dim, a, dim),
        }
    }

    pub fn laws(&self, algebra: &Algebra) -> LawReport {
        let f = algebra.field();
        let (a, m) = (algebra.dim(), self.dim());
        let l = |x: &[Scalar], y: &[Scalar]| self.left.apply(x, y);
        let r = |x: &[Scalar], y: &[Scalar]| self.right.apply(x, y);
        let mu = |x: &[Scalar], y: &[Scalar]| algebra.mul(x, y);
        LawReport {
            checks: vec![
                check_law(f, "left action", &[a, a, m], |v| {
                    (l(&mu(&v[0], &v[1]), &v[2]), l(&v[0], &l(&v[1], &v[2])))
                }),
                check_law(f, "right action", &[m, a, a], |v| {
                    (r(&r(&v[0], &v[1]), &v[2]), r(&v[0], &mu(&v[1], &v[2])))
                }),
                check_law(f, "bimodule compatibility", &[a, m, a], |v| {
                    (r(&l(&v[0], &v[1]), &v[2]), l(&v[0], &r(&v[1], &v[2])))
                }),
            ],
        }
    }
}

/// Which example family a quasi-twilled algebra was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Raw,
    DirectProduct,
    Semidirect,
    AlgebraInBimodules,
    LeftModuleOnly,
    RightModuleOnly,
    MatchedPair,
    Box,
    ThetaTwistedSemidirect,
    ReynoldsShape,
    NonabelianBoxtimes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiTwilledAlgebra {
    field: Field,
    space: SplitSpace,
    maps: StructureMaps,
    origin: Origin,
}

impl QuasiTwilledAlgebra {
    /// Validates all axioms.
    pub fn new(
        field: Field,
        space: SplitSpace,
        maps: StructureMaps,
    ) -> Result<QuasiTwilledAlgebra, Error> {
        let q = QuasiTwilledAlgebra::unchecked(field, space, maps)?;
        q.validate_axioms().into_result("quasi-twilled algebra")?;
        Ok(q)
    }

    /// Only checks shapes. Useful for exploring structures that may fail the axioms.
    pub fn unchecked(
        field: Field,
        space: SplitSpace,
        maps: StructureMaps,
    ) -> Result<QuasiTwilledAlgebra, Error> {
        maps.check_shapes(space)?;
        Ok(QuasiTwilledAlgebra {
            field,
            space,
            maps,
            origin: Origin::Raw,
        })
    }

    /// Reads the components off an arity-2 map on `A ⊕ B`.
    pub fn from_product(
        field: Field,
        space: SplitSpace,
        product: &MultiMap,
    ) -> Result<QuasiTwilledAlgebra, Error> {
        if product.arity() != 2 || product.dim() != space.total() {
            return Err(Error::Dimension(
                "total product must be bilinear on A⊕B".into(),
            ));
        }
        if !space.project(product, Bidegree::new(-1, 2)).is_zero() {
            return Err(Error::Invalid("B is not closed under the product".into()));
        }
        QuasiTwilledAlgebra::unchecked(field, space, space.components_of(product))
    }

    pub fn with_origin(mut self, origin: Origin) -> QuasiTwilledAlgebra {
        self.origin = origin;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space(&self) -> SplitSpace {
        self.space
    }

    pub fn maps(&self) -> &StructureMaps {
        &self.maps
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn dim_a(&self) -> usize {
        self.space.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.space.dim_b
    }

    pub fn mu(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.maps.mu.apply(a, b)
    }

    pub fn nu(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.maps.nu.apply(x, y)
    }

    /// `a ▷ x`
    pub fn tr(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.maps.tr.apply(a, x)
    }

    /// `x ◁ a`
    pub fn tl(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.maps.tl.apply(x, a)
    }

    /// `x ⇀ a`
    pub fn rh(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.maps.rh.apply(x, a)
    }

    /// `a ↼ x`
    pub fn lh(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.maps.lh.apply(a, x)
    }

    pub fn theta(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.maps.theta.apply(a, b)
    }

    pub fn algebra_a(&self) -> Algebra {
        Algebra::unchecked(self.maps.mu.clone())
    }

    pub fn algebra_b(&self) -> Algebra {
        Algebra::unchecked(self.maps.nu.clone())
    }

    /// Every coefficient replaced by its integer lift to ℚ.
    pub fn lift(&self) -> QuasiTwilledAlgebra {
        QuasiTwilledAlgebra {
            field: Field::Rational,
            space: self.space,
            maps: self.maps.map_all(Bilinear::lift),
            origin: self.origin,
        }
    }

    /// Reduction modulo `p`; `None` if a denominator is divisible by `p`.
    pub fn reduce(&self, p: u64) -> Option<QuasiTwilledAlgebra> {
        let m = &self.maps;
        let maps = StructureMaps {
            mu: m.mu.reduce(p)?,
            nu: m.nu.reduce(p)?,
            tr: m.tr.reduce(p)?,
            tl: m.tl.reduce(p)?,
            rh: m.rh.reduce(p)?,
            lh: m.lh.reduce(p)?,
            theta: m.theta.reduce(p)?,
        };
        Some(QuasiTwilledAlgebra {
            field: Field::Prime(p),
            space: self.space,
            maps,
            origin: self.origin,
        })
    }

    /// ν associative, `(A, ⇀, ↼)` a `B`-bimodule, and (b1)–(b11), each checked
    /// literally on basis tuples.
    pub fn validate_axioms(&self) -> LawReport {
        let f = self.field;
        let (da, db) = (self.dim_a(), self.dim_b());
        let q = self;
        let add = |u: Vec<Scalar>, v: Vec<Scalar>| linalg::add(&u, &v);
        let mut checks = vec![
            check_law(f, "nu associative", &[db, db, db], |v| {
                (
                    q.nu(&q.nu(&v[0], &v[1]), &v[2]),
                    q.nu(&v[0], &q.nu(&v[1], &v[2])),
                )
            }),
            check_law(f, "A left B-module", &[db, db, da], |v| {
                (
                    q.rh(&q.nu(&v[0], &v[1]), &v[2]),
                    q.rh(&v[0], &q.rh(&v[1], &v[2])),
                )
            }),
            check_law(f, "A right B-module", &[da, db, db], |v| {
                (
                    q.lh(&q.lh(&v[0], &v[1]), &v[2]),
                    q.lh(&v[0], &q.nu(&v[1], &v[2])),
                )
            }),
            check_law(f, "A B-bimodule compatibility", &[db, da, db], |v| {
                (
                    q.lh(&q.rh(&v[0], &v[1]), &v[2]),
                    q.rh(&v[0], &q.lh(&v[1], &v[2])),
                )
            }),
        ];
        // (b1) a(bc) + a↼θ(b,c) = (ab)c + θ(a,b)⇀c
        checks.push(check_law(f, "b1", &[da, da, da], |v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            (
                add(q.mu(a, &q.mu(b, c)), q.lh(a, &q.theta(b, c))),
                add(q.mu(&q.mu(a, b), c), q.rh(&q.theta(a, b), c)),
            )
        }));
        // (b2) (ab)▷x + θ(a,b)x = a▷(b▷x) + θ(a, b↼x)
        checks.push(check_law(f, "b2", &[da, da, db], |v| {
            let (a, b, x) = (&v[0], &v[1], &v[2]);
            (
                add(q.tr(&q.mu(a, b), x), q.nu(&q.theta(a, b), x)),
                add(q.tr(a, &q.tr(b, x)), q.theta(a, &q.lh(b, x))),
            )
        }));
        // (b3) x◁(ab) + xθ(a,b) = (x◁a)◁b + θ(x⇀a, b)
        checks.push(check_law(f, "b3", &[db, da, da], |v| {
            let (x, a, b) = (&v[0], &v[1], &v[2]);
            (
                add(q.tl(x, &q.mu(a, b)), q.nu(x, &q.theta(a, b))),
                add(q.tl(&q.tl(x, a), b), q.theta(&q.rh(x, a), b)),
            )
        }));
        // (b4) a▷(x◁b) + θ(a, x⇀b) = (a▷x)◁b + θ(a↼x, b)
        checks.push(check_law(f, "b4", &[da, db, da], |v| {
            let (a, x, b) = (&v[0], &v[1], &v[2]);
            (
                add(q.tr(a, &q.tl(x, b)), q.theta(a, &q.rh(x, b))),
                add(q.tl(&q.tr(a, x), b), q.theta(&q.lh(a, x), b)),
            )
        }));
        // (b5) a▷(xy) = (a▷x)y + (a↼x)▷y
        checks.push(check_law(f, "b5", &[da, db, db], |v| {
            let (a, x, y) = (&v[0], &v[1], &v[2]);
            (
                q.tr(a, &q.nu(x, y)),
                add(q.nu(&q.tr(a, x), y), q.tr(&q.lh(a, x), y)),
            )
        }));
        // (b6) (xy)◁a = x(y◁a) + x◁(y⇀a)
        checks.push(check_law(f, "b6", &[db, db, da], |v| {
            let (x, y, a) = (&v[0], &v[1], &v[2]);
            (
                q.tl(&q.nu(x, y), a),
                add(q.nu(x, &q.tl(y, a)), q.tl(x, &q.rh(y, a))),
            )
        }));
        // (b7) x◁(a↼y) + x(a▷y) = (x⇀a)▷y + (x◁a)y
        checks.push(check_law(f, "b7", &[db, da, db], |v| {
            let (x, a, y) = (&v[0], &v[1], &v[2]);
            (
                add(q.tl(x, &q.lh(a, y)), q.nu(x, &q.tr(a, y))),
                add(q.tr(&q.rh(x, a), y), q.nu(&q.tl(x, a), y)),
            )
        }));
        // (b8) x⇀(ab) = (x⇀a)b + (x◁a)⇀b
        checks.push(check_law(f, "b8", &[db, da, da], |v| {
            let (x, a, b) = (&v[0], &v[1], &v[2]);
            (
                q.rh(x, &q.mu(a, b)),
                add(q.mu(&q.rh(x, a), b), q.rh(&q.tl(x, a), b)),
            )
        }));
        // (b9) (ab)↼x = a(b↼x) + a↼(b▷x)
        checks.push(check_law(f, "b9", &[da, da, db], |v| {
            let (a, b, x) = (&v[0], &v[1], &v[2]);
            (
                q.lh(&q.mu(a, b), x),
                add(q.mu(a, &q.lh(b, x)), q.lh(a, &q.tr(b, x))),
            )
        }));
        // (b10) a↼(x◁b) + a(x⇀b) = (a▷x)⇀b + (a↼x)b
        checks.push(check_law(f, "b10", &[da, db, da], |v| {
            let (a, x, b) = (&v[0], &v[1], &v[2]);
            (
                add(q.lh(a, &q.tl(x, b)), q.mu(a, &q.rh(x, b))),
                add(q.rh(&q.tr(a, x), b), q.mu(&q.lh(a, x), b)),
            )
        }));
        // (b11) θ(a, bc) + a▷θ(b,c) = θ(ab, c) + θ(a,b)◁c
        checks.push(check_law(f, "b11", &[da, da, da], |v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            (
                add(q.theta(a, &q.mu(b, c)), q.tr(a, &q.theta(b, c))),
                add(q.theta(&q.mu(a, b), c), q.tl(&q.theta(a, b), c)),
            )
        }));
        LawReport { checks }
    }

    /// `(θ̃, μ̂, ν̂)`.
    pub fn hats(&self) -> (MultiMap, MultiMap, MultiMap) {
        self.space
            .hat_components(&self.maps)
            .expect("shapes checked at construction")
    }

    /// `Ω = θ̃ + μ̂ + ν̂ ∈ 𝒬_1`.
    pub fn omega(&self) -> MultiMap {
        let (t, m, n) = self.hats();
        t.add(&m).add(&n)
    }

    /// Maurer–Cartan test `½[Ω,Ω] = Ω⋄Ω = 0`.
    ///
    /// Over fields of characteristic other than 2 this is the same as
    /// `[Ω,Ω] = 0`; the square keeps the test meaningful over F₂.
    pub fn validate_via_mc(&self) -> bool {
        self.omega().square().is_zero()
    }

    /// The product of `A ⊕ B`, assembled directly from its defining formula.
    pub fn total_product(&self) -> MultiMap {
        let f = self.field;
        let sp = self.space;
        let n = sp.total();
        MultiMap::from_fn(f, n, 2, |t| {
            let u = unit_vector(f, n, t[0]);
            let v = unit_vector(f, n, t[1]);
            let (a, x) = (sp.part(Side::A, &u), sp.part(Side::B, &u));
            let (b, y) = (sp.part(Side::A, &v), sp.part(Side::B, &v));
            let pa = linalg::add(
                &linalg::add(&self.mu(&a, &b), &self.lh(&a, &y)),
                &self.rh(&x, &b),
            );
            let pb = linalg::add(
                &linalg::add(&self.nu(&x, &y), &self.tr(&a, &y)),
                &linalg::add(&self.tl(&x, &b), &self.theta(&a, &b)),
            );
            let mut out = sp.include(Side::A, &pa, f);
            for (i, c) in pb.into_iter().enumerate() {
                out[sp.global(Side::B, i)] = c;
            }
            out
        })
    }

    /// Multiplies two elements of `A ⊕ B`.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.omega().eval(&[u, v])
    }
}

/// A quasi-twilled algebra with `θ = 0`, so that both `A` and `B` are subalgebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair(QuasiTwilledAlgebra);

impl MatchedPair {
    pub fn new(q: QuasiTwilledAlgebra) -> Result<MatchedPair, Error> {
        if !q.maps.theta.is_zero() {
            return Err(Error::ThetaNonzero);
        }
        let a = q.algebra_a();
        a.associativity().into_result("A")?;
        Bimodule {
            left: q.maps.tr.clone(),
            right: q.maps.tl.clone(),
        }
        .laws(&a)
        .into_result("B as an A-bimodule")?;
        q.validate_axioms().into_result("matched pair")?;
        Ok(MatchedPair(q))
    }

    pub fn qta(&self) -> &QuasiTwilledAlgebra {
        &self.0
    }

    pub fn into_qta(self) -> QuasiTwilledAlgebra {
        self.0
    }
}

/// The two cochain complexes attached to a quasi-twilled algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Complex {
    /// `C^n = 𝒬_{n−1}` with components `F_0 … F_n`.
    QuasiTwilled,
    /// `C^n = ℳ_{n−1}` with components `F_1 … F_n`.
    MatchedPair,
}

impl Complex {
    /// Component indices `r` present in degree `n ≥ 1`.
    fn components(self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            Complex::QuasiTwilled => 0..=n,
            Complex::MatchedPair => 1..=n,
        }
    }

    /// Whether the coordinate `(tuple, out)` of an arity-`n` map is a cochain coordinate.
    fn admits(self, space: &SplitSpace, tuple: &[usize], out: usize) -> bool {
        if tuple.is_empty() {
            return self == Complex::QuasiTwilled;
        }
        let d = space.bidegree_of(tuple, out);
        match self {
            Complex::QuasiTwilled => d.k != -1,
            Complex::MatchedPair => d.k != -1 && d.l != -1,
        }
    }

    /// Flat coefficient positions spanning `C^n`.
    pub fn basis(self, space: &SplitSpace, n: usize) -> Vec<usize> {
        let d = space.total();
        let mut out = Vec::new();
        for t in 0..crate::multilinear::pow(d, n) {
            let tuple = decode(d, n, t);
            for o in 0..d {
                if self.admits(space, &tuple, o) {
                    out.push(t * d + o);
                }
            }
        }
        out
    }
}

/// A cochain of degree `n`, stored by bidegree components.
///
/// Component `r` lies in `C^{n−r|r−1}`. Degree-0 cochains are vectors of
/// `A ⊕ B`, stored as a single arity-0 component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    complex: Complex,
    degree: usize,
    components: Vec<(usize, MultiMap)>,
}

impl Cochain {
    pub fn zero(field: Field, space: &SplitSpace, complex: Complex, degree: usize) -> Cochain {
        Cochain::from_total(
            space,
            complex,
            &MultiMap::zero(field, space.total(), degree),
        )
        .expect("zero is a cochain")
    }

    /// Splits a map into components, rejecting coordinates outside the complex.
    pub fn from_total(
        space: &SplitSpace,
        complex: Complex,
        f: &MultiMap,
    ) -> Result<Cochain, Error> {
        let n = f.arity();
        if f.dim() != space.total() {
            return Err(Error::Dimension("cochain on the wrong space".into()));
        }
        if n == 0 {
            if complex == Complex::MatchedPair && !f.is_zero() {
                return Err(Error::Invalid(
                    "C^0 of the MatchedPair complex is zero".into(),
                ));
            }
            return Ok(Cochain {
                complex,
                degree: 0,
                components: vec![(0, f.clone())],
            });
        }
        let components: Vec<(usize, MultiMap)> = complex
            .components(n)
            .map(|r| {
                (
                    r,
                    space.project(f, Bidegree::new(n as i64 - r as i64, r as i64 - 1)),
                )
            })
            .collect();
        let mut sum = MultiMap::zero(f.field(), f.dim(), n);
        for (_, c) in &components {
            sum.add_assign(c);
        }
        if &sum != f {
            return Err(Error::Invalid(format!(
                "map has components outside C^{n} of the {complex:?} complex"
            )));
        }
        Ok(Cochain {
            complex,
            degree: n,
            components,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn complex(&self) -> Complex {
        self.complex
    }

    /// `F_r`, or `None` when `r` is out of range.
    pub fn component(&self, r: usize) -> Option<&MultiMap> {
        self.components
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, m)| m)
    }

    pub fn components(&self) -> &[(usize, MultiMap)] {
        &self.components
    }

    /// `F_0 + … + F_n`.
    pub fn total(&self) -> MultiMap {
        let mut it = self.components.iter();
        let mut sum = it.next().expect("at least one component").1.clone();
        for (_, c) in it {
            sum.add_assign(c);
        }
        sum
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|(_, c)| c.is_zero())
    }
}

fn sign_scalar(field: Field, negative: bool) -> Scalar {
    if negative {
        -field.one()
    } else {
        field.one()
    }
}

fn differential(
    q: &QuasiTwilledAlgebra,
    f: &Cochain,
    complex: Complex,
    theta: Option<&MultiMap>,
    mu: &MultiMap,
    nu: &MultiMap,
) -> Result<Cochain, Error> {
    if f.complex != complex {
        return Err(Error::Invalid("cochain belongs to another complex".into()));
    }
    let field = q.field;
    let space = q.space;
    let n = f.degree;
    // (−1)^{n−1}; at n = 0 this is −1.
    let s = sign_scalar(field, n % 2 == 0);
    if n == 0 && complex == Complex::MatchedPair {
        return Ok(Cochain::zero(field, &space, complex, 1));
    }
    if n == 0 {
        let v = &f.components[0].1;
        let mut sum = mu.bracket(v)?.add(&nu.bracket(v)?);
        if let Some(t) = theta {
            sum.add_assign(&t.bracket(v)?);
        }
        return Cochain::from_total(&space, complex, &sum.scale(&s));
    }
    let mut components = Vec::new();
    for r in complex.components(n + 1) {
        let mut acc = MultiMap::zero(field, space.total(), n + 1);
        if let (Some(t), Some(g)) = (theta, f.component(r + 1)) {
            acc.add_assign(&t.bracket(g)?);
        }
        if let Some(g) = f.component(r) {
            acc.add_assign(&mu.bracket(g)?);
        }
        if let Some(g) = r.checked_sub(1).and_then(|i| f.component(i)) {
            acc.add_assign(&nu.bracket(g)?);
        }
        components.push((r, acc.scale(&s)));
    }
    Ok(Cochain {
        complex,
        degree: n + 1,
        components,
    })
}

/// `δ(F)_r = (−1)^{n−1}([θ̃,F_{r+1}] + [μ̂,F_r] + [ν̂,F_{r−1}])`, and
/// `δ(v) = −[Ω, v]` in degree 0.
pub fn qta_differential(q: &QuasiTwilledAlgebra, f: &Cochain) -> Result<Cochain, Error> {
    let (t, m, n) = q.hats();
    differential(q, f, Complex::QuasiTwilled, Some(&t), &m, &n)
}

/// The same differential as a single bracket `(−1)^{n−1}[Ω, F_0+…+F_n]`.
pub fn qta_differential_by_bracket(q: &QuasiTwilledAlgebra, f: &Cochain) -> Result<Cochain, Error> {
    let n = f.degree;
    let s = sign_scalar(q.field, n % 2 == 0);
    let image = q.omega().bracket(&f.total())?.scale(&s);
    Cochain::from_total(&q.space, f.complex, &image)
}

/// `δ(F)_r = (−1)^{n−1}([μ̂,F_r] + [ν̂,F_{r−1}])` on `ℳ`.
///
/// `C^0 = ℳ_{−1}` is zero: `−[μ̂ + ν̂, v]` for `v ∈ A ⊕ B` has a `1|−1` or
/// `−1|1` part whenever the actions are nonzero, so it does not land in `ℳ`.
pub fn matched_pair_differential(mp: &MatchedPair, f: &Cochain) -> Result<Cochain, Error> {
    let q = mp.qta();
    let (_, m, n) = q.hats();
    differential(q, f, Complex::MatchedPair, None, &m, &n)
}

/// The matrix of `δ: C^n → C^{n+1}` in the coordinate bases of [`Complex::basis`].
pub fn differential_matrix(
    field: Field,
    space: &SplitSpace,
    complex: Complex,
    n: usize,
    delta: impl Fn(&Cochain) -> Result<Cochain, Error>,
) -> Result<Matrix, Error> {
    let src = complex.basis(space, n);
    let dst = complex.basis(space, n + 1);
    let d = space.total();
    let mut m = Matrix::zeros(field, dst.len(), src.len());
    for (j, &pos) in src.iter().enumerate() {
        let mut unit = MultiMap::zero(field, d, n);
        *unit.coeff_mut(pos) = field.one();
        let image = delta(&Cochain::from_total(space, complex, &unit)?)?.total();
        for (i, &row) in dst.iter().enumerate() {
            m.set(i, j, image.coeffs()[row].clone());
        }
    }
    Ok(m)
}

/// Cohomology dimensions in degrees `0..=max_degree` from the differentials
/// `d_0, …, d_max` (with `d_n : C^n → C^{n+1}`).
pub fn cohomology_from_differentials(differentials: &[Matrix]) -> Vec<usize> {
    let ranks: Vec<usize> = differentials.iter().map(Matrix::rank).collect();
    differentials
        .iter()
        .enumerate()
        .map(|(n, d)| d.cols() - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect()
}

pub fn qta_cohomology_dims(
    q: &QuasiTwilledAlgebra,
    max_degree: usize,
) -> Result<Vec<usize>, Error> {
    let mats = (0..=max_degree)
        .map(|n| {
            differential_matrix(q.field, &q.space, Complex::QuasiTwilled, n, |f| {
                qta_differential(q, f)
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(cohomology_from_differentials(&mats))
}

pub fn matched_pair_cohomology_dims(
    mp: &MatchedPair,
    max_degree: usize,
) -> Result<Vec<usize>, Error> {
    let q = mp.qta();
    let mats = (0..=max_degree)
        .map(|n| {
            differential_matrix(q.field, &q.space, Complex::MatchedPair, n, |f| {
                matched_pair_differential(mp, f)
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(cohomology_from_differentials(&mats))
}

/// The example families, each validating its inputs before assembling the
/// quasi-twilled algebra.
pub mod factories {
    use super::*;

    fn assemble(
        field: Field,
        space: SplitSpace,
        maps: StructureMaps,
        origin: Origin,
    ) -> Result<QuasiTwilledAlgebra, Error> {
        Ok(QuasiTwilledAlgebra::new(field, space, maps)?.with_origin(origin))
    }

    fn require_same_field(a: &Algebra, b_field: Field) -> Result<Field, Error> {
        if a.field() != b_field {
            return Err(Error::InvalidField(
                "inputs live over different fields".into(),
            ));
        }
        Ok(a.field())
    }

    /// `(a,x)⊙(b,y) = (ab, xy)`.
    pub fn direct_product(a: &Algebra, b: &Algebra) -> Result<QuasiTwilledAlgebra, Error> {
        let field = require_same_field(a, b.field())?;
        a.associativity().into_result("A")?;
        b.associativity().into_result("B")?;
        let space = SplitSpace::new(a.dim(), b.dim());
        let mut maps = StructureMaps::zero(field, space);
        maps.mu = a.mu.clone();
        maps.nu = b.mu.clone();
        assemble(field, space, maps, Origin::DirectProduct)
    }

    /// `(a,x)⋉(b,y) = (ab, a▷y + x◁b)`.
    pub fn semidirect(a: &Algebra, m: &Bimodule) -> Result<QuasiTwilledAlgebra, Error> {
        theta_twisted(a, m, None, Origin::Semidirect)
    }

    /// `(a,x)⊙⋉(b,y) = (ab, xy + a▷y + x◁b)` for an algebra object `B` in `A`-bimodules.
    pub fn algebra_in_bimodules(
        a: &Algebra,
        b: &Algebra,
        m: &Bimodule,
    ) -> Result<QuasiTwilledAlgebra, Error> {
        let field = require_same_field(a, b.field())?;
        a.associativity().into_result("A")?;
        b.associativity().into_result("B")?;
        m.laws(a).into_result("B as an A-bimodule")?;
        let (da, db) = (a.dim(), b.dim());
        let tr = |u: &[Scalar], v: &[Scalar]| m.left.apply(u, v);
        let tl = |u: &[Scalar], v: &[Scalar]| m.right.apply(u, v);
        let nu = |u: &[Scalar], v: &[Scalar]| b.mul(u, v);
        LawReport {
            checks: vec![
                check_law(field, "a▷(xy) = (a▷x)y", &[da, db, db], |v| {
                    (tr(&v[0], &nu(&v[1], &v[2])), nu(&tr(&v[0], &v[1]), &v[2]))
                }),
                check_law(field, "(xy)◁a = x(y◁a)", &[db, db, da], |v| {
                    (tl(&nu(&v[0], &v[1]), &v[2]), nu(&v[0], &tl(&v[1], &v[2])))
                }),
                check_law(field, "(x◁a)y = x(a▷y)", &[db, da, db], |v| {
                    (nu(&tl(&v[0], &v[1]), &v[2]), nu(&v[0], &tr(&v[1], &v[2])))
                }),
            ],
        }
        .into_result("algebra in A-bimodules")?;
        let space = SplitSpace::new(da, db);
        let mut maps = StructureMaps::zero(field, space);
        maps.mu = a.mu.clone();
        maps.nu = b.mu.clone();
        maps.tr = m.left.clone();
        maps.tl = m.right.clone();
        assemble(field, space, maps, Origin::AlgebraInBimodules)
    }

    /// `(a,x)·(b,y) = (ab, a▷y)` for a left `A`-module `(B, ▷)`.
    pub fn left_module_only(a: &Algebra, left: &Bilinear) -> Result<QuasiTwilledAlgebra, Error> {
        let field = a.field();
        a.associativity().into_result("A")?;
        let (da, db) = (a.dim(), left.shape().2);
        let l = |u: &[Scalar], v: &[Scalar]| left.apply(u, v);
        LawReport {
            checks: vec![check_law(field, "left action", &[da, da, db], |v| {
                (l(&a.mul(&v[0], &v[1]), &v[2]), l(&v[0], &l(&v[1], &v[2])))
            })],
        }
        .into_result("left A-module")?;
        let space = SplitSpace::new(da, db);
        let mut maps = StructureMaps::zero(field, space);
        maps.mu = a.mu.clone();
        maps.tr = left.clone();
        assemble(field, space, maps, Origin::LeftModuleOnly)
    }

    /// `(a,x)·(b,y) = (ab, x◁b)` for a right `A`-module `(B, ◁)`.
    pub fn right_module_only(a: &Algebra, right: &Bilinear) -> Result<QuasiTwilledAlgebra, Error> {
        let field = a.field();
        a.associativity().into_result("A")?;
        let (da, db) = (a.dim(), right.shape().2);
        let r = |u: &[Scalar], v: &[Scalar]| right.apply(u, v);
        LawReport {
            checks: vec![check_law(field, "right action", &[db, da, da], |v| {
                (r(&r(&v[0], &v[1]), &v[2]), r(&v[0], &a.mul(&v[1], &v[2])))
            })],
        }
        .into_result("right A-module")?;
        let space = SplitSpace::new(da, db);
        let mut maps = StructureMaps::zero(field, space);
        maps.mu = a.mu.clone();
        maps.tl = right.clone();
        assemble(field, space, maps, Origin::RightModuleOnly)
    }

    /// The data of a matched pair of algebras.
    #[derive(Clone, Debug)]
    pub struct MatchedPairData {
        pub a: Algebra,
        pub b: Algebra,
        pub tr: Bilinear,
        pub tl: Bilinear,
        pub rh: Bilinear,
        pub lh: Bilinear,
    }

    /// `(a,x)⋈(b,y) = (ab + a↼y + x⇀b, xy + a▷y + x◁b)`.
    pub fn matched_pair(data: &MatchedPairData) -> Result<MatchedPair, Error> {
        let field = require_same_field(&data.a, data.b.field())?;
        data.a.associativity().into_result("A")?;
        data.b.associativity().into_result("B")?;
        Bimodule {
            left: data.tr.clone(),
            right: data.tl.clone(),
        }
        .laws(&data.a)
        .into_result("B as an A-bimodule")?;
        let space = SplitSpace::new(data.a.dim(), data.b.dim());
        let mut maps = StructureMaps::zero(field, space);
        maps.mu = data.a.mu.clone();
        maps.nu = data.b.mu.clone();
        maps.tr = data.tr.clone();
        maps.tl = data.tl.clone();
        maps.rh = data.rh.clone();
        maps.lh = data.lh.clone();
        MatchedPair::new(assemble(field, space, maps, Origin::MatchedPair)?)
    }

    /// `(a,a')□(b,b') = (ab' + a'b, ab + a'b')` on `A ⊕ A`.
    pub fn box_product(a: &Algebra) -> Result<QuasiTwilledAlgebra, Error> {
        let field = a.field();
        a.associativity().into_result("A")?;
        let d = a.dim();
        let space = SplitSpace::new(d, d);
        let mut maps = StructureMaps::zero(field, space);
        maps.nu = a.mu.clone();
        maps.rh = a.mu.clone();
        maps.lh = a.mu.clone();
        maps.theta = a.mu.clone();
        assemble(field, space, maps, Origin::Box)
    }

    /// `(a,x)⋉_θ(b,y) = (ab, a▷y + x◁b + θ(a,b))` for a Hochschild 2-cocycle θ.
    pub fn theta_twisted_semidirect(
        a: &Algebra,
        m: &Bimodule,
        theta: &Bilinear,
    ) -> Result<QuasiTwilledAlgebra, Error> {
        theta_twisted(a, m, Some(theta), Origin::ThetaTwistedSemidirect)
    }

    fn theta_twisted(
        a: &Algebra,
        m: &Bimodule,
        theta: Option<&Bilinear>,
        origin: Origin,
    ) -> Result<QuasiTwilledAlgebra, Error> {
        let field = a.field();
        a.associativity().into_result("A")?;
        m.laws(a).into_result("B as an A-bimodule")?;
        let space = SplitSpace::new(a.dim(), m.dim());
        let mut maps = StructureMaps::zero(field, space);
        maps.mu = a.mu.clone();
        maps.tr = m.left.clone();
        maps.tl = m.right.clone();
        if let Some(t) = theta {
            if t.shape() != (a.dim(), a.dim(), m.dim()) {
                return Err(Error::Dimension("θ must map A×A→B".into()));
            }
            let da = a.dim();
            let th = |u: &[Scalar], v: &[Scalar]| t.apply(u, v);
            LawReport {
                checks: vec![check_law(
                    field,
                    "Hochschild 2-cocycle",
                    &[da, da, da],
                    |v| {
                        let (x, y, z) = (&v[0], &v[1], &v[2]);
                        (
                            linalg::add(&m.left.apply(x, &th(y, z)), &th(x, &a.mul(y, z))),
                            linalg::add(&th(&a.mul(x, y), z), &m.right.apply(&th(x, y), z)),
                        )
                    },
                )],
            }
            .into_result("θ")?;
            maps.theta = t.clone();
        }
        assemble(field, space, maps, origin)
    }

    /// `(a,a')⋉_{−μ}(b,b') = (ab, ab' + a'b − ab)` on `A ⊕ A`.
    pub fn reynolds_shape(a: &Algebra) -> Result<QuasiTwilledAlgebra, Error> {
        let minus = a.mu.scale(&-a.field().one());
        let q = theta_twisted_semidirect(a, &Bimodule::regular(a), &minus)?;
        Ok(q.with_origin(Origin::ReynoldsShape))
    }

    /// `(a,x)⊠(b,y) = (ab, xy + a▷y + x◁b + θ(a,b))` for a non-abelian 2-cocycle.
    pub fn nonabelian_boxtimes(
        c: &crate::tridend::NonAbelianCocycle,
    ) -> Result<QuasiTwilledAlgebra, Error> {
        crate::tridend::boxtimes(c)
    }
}
