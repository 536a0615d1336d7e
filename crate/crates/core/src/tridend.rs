//! Non-abelian 2-cocycles, Rota–Baxter operators twisted by them, and twisted
//! tridendriform algebras.

use std::collections::HashSet;

use rand::Rng;
use rayon::prelude::*;

use crate::bigraded::{SplitSpace, StructureMaps};
use crate::linalg::{self, unit_vector, Matrix};
use crate::multilinear::{Bilinear, MultiMap};
use crate::qta::{check_law, Algebra, LawCheck, LawReport, Origin, QuasiTwilledAlgebra};
use crate::{Error, Field, Scalar};

/// `(▷, ◁, θ)` on `A` with values in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAbelianCocycle {
    pub a: Algebra,
    pub b: Algebra,
    pub tr: Bilinear,
    pub tl: Bilinear,
    pub theta: Bilinear,
}

impl NonAbelianCocycle {
    pub fn new(
        a: Algebra,
        b: Algebra,
        tr: Bilinear,
        tl: Bilinear,
        theta: Bilinear,
    ) -> Result<NonAbelianCocycle, Error> {
        let c = NonAbelianCocycle::unchecked(a, b, tr, tl, theta)?;
        c.laws().into_result("non-abelian 2-cocycle")?;
        Ok(c)
    }

    /// Checks shapes only.
    pub fn unchecked(
        a: Algebra,
        b: Algebra,
        tr: Bilinear,
        tl: Bilinear,
        theta: Bilinear,
    ) -> Result<NonAbelianCocycle, Error> {
        let (da, db) = (a.dim(), b.dim());
        if a.field() != b.field() || [&tr, &tl, &theta].iter().any(|m| m.field() != a.field()) {
            return Err(Error::InvalidField(
                "cocycle data over different fields".into(),
            ));
        }
        if tr.shape() != (da, db, db) || tl.shape() != (db, da, db) || theta.shape() != (da, da, db)
        {
            return Err(Error::Dimension("cocycle maps do not fit A and B".into()));
        }
        Ok(NonAbelianCocycle {
            a,
            b,
            tr,
            tl,
            theta,
        })
    }

    /// `θ = 0`, `▷`, `◁` the given bimodule: the weight-1 setting.
    pub fn algebra_in_bimodules(
        a: Algebra,
        b: Algebra,
        left: Bilinear,
        right: Bilinear,
    ) -> Result<NonAbelianCocycle, Error> {
        let theta = Bilinear::zero(a.field(), a.dim(), a.dim(), b.dim());
        NonAbelianCocycle::new(a, b, left, right, theta)
    }

    /// `B = A` with zero product, `▷ = ◁ = μ`, `θ = −μ`.
    pub fn reynolds(a: &Algebra) -> Result<NonAbelianCocycle, Error> {
        let field = a.field();
        let b = Algebra::zero(field, a.dim());
        NonAbelianCocycle::new(
            a.clone(),
            b,
            a.mu.clone(),
            a.mu.clone(),
            a.mu.scale(&-field.one()),
        )
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    fn ma(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.a.mul(x, y)
    }

    fn mb(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.b.mul(x, y)
    }

    fn tr(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.tr.apply(a, x)
    }

    fn tl(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.tl.apply(x, a)
    }

    fn th(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.theta.apply(a, b)
    }

    /// Associativity of both algebras and the seven cocycle identities,
    /// named `nab1`–`nab7`.
    pub fn laws(&self) -> LawReport {
        LawReport {
            checks: self.checks().iter().map(|c| c()).collect(),
        }
    }

    /// Stops at the first failing law.
    pub fn holds(&self) -> bool {
        self.checks().iter().all(|c| c().holds())
    }

    /// Only `nab1`–`nab7`, for searches over fixed algebras.
    fn cocycle_holds(&self) -> bool {
        self.checks()[2..].iter().all(|c| c().holds())
    }

    fn checks(&self) -> Vec<Box<dyn Fn() -> LawCheck + '_>> {
        let f = self.field();
        let (da, db) = (self.dim_a(), self.dim_b());
        let add = |x: Vec<Scalar>, y: Vec<Scalar>| linalg::add(&x, &y);
        vec![
            Box::new(move || {
                check_law(f, "A associative", &[da, da, da], |v| {
                    (
                        self.ma(&self.ma(&v[0], &v[1]), &v[2]),
                        self.ma(&v[0], &self.ma(&v[1], &v[2])),
                    )
                })
            }),
            Box::new(move || {
                check_law(f, "B associative", &[db, db, db], |v| {
                    (
                        self.mb(&self.mb(&v[0], &v[1]), &v[2]),
                        self.mb(&v[0], &self.mb(&v[1], &v[2])),
                    )
                })
            }),
            Box::new(move || {
                check_law(f, "nab1", &[da, da, db], |v| {
                    let (a, b, x) = (&v[0], &v[1], &v[2]);
                    (
                        add(self.tr(&self.ma(a, b), x), self.mb(&self.th(a, b), x)),
                        self.tr(a, &self.tr(b, x)),
                    )
                })
            }),
            Box::new(move || {
                check_law(f, "nab2", &[da, db, da], |v| {
                    let (a, x, b) = (&v[0], &v[1], &v[2]);
                    (self.tl(&self.tr(a, x), b), self.tr(a, &self.tl(x, b)))
                })
            }),
            Box::new(move || {
                check_law(f, "nab3", &[db, da, da], |v| {
                    let (x, a, b) = (&v[0], &v[1], &v[2]);
                    (
                        self.tl(&self.tl(x, a), b),
                        add(self.tl(x, &self.ma(a, b)), self.mb(x, &self.th(a, b))),
                    )
                })
            }),
            Box::new(move || {
                check_law(f, "nab4", &[da, db, db], |v| {
                    let (a, x, y) = (&v[0], &v[1], &v[2]);
                    (self.mb(&self.tr(a, x), y), self.tr(a, &self.mb(x, y)))
                })
            }),
            Box::new(move || {
                check_law(f, "nab5", &[db, da, db], |v| {
                    let (x, a, y) = (&v[0], &v[1], &v[2]);
                    (self.mb(&self.tl(x, a), y), self.mb(x, &self.tr(a, y)))
                })
            }),
            Box::new(move || {
                check_law(f, "nab6", &[db, db, da], |v| {
                    let (x, y, a) = (&v[0], &v[1], &v[2]);
                    (self.tl(&self.mb(x, y), a), self.mb(x, &self.tl(y, a)))
                })
            }),
            Box::new(move || {
                check_law(f, "nab7", &[da, da, da], |v| {
                    let (a, b, c) = (&v[0], &v[1], &v[2]);
                    (
                        add(self.tl(&self.th(a, b), c), self.th(&self.ma(a, b), c)),
                        add(self.tr(a, &self.th(b, c)), self.th(a, &self.ma(b, c))),
                    )
                })
            }),
        ]
    }
}

pub fn validate_cocycle(c: &NonAbelianCocycle) -> LawReport {
    c.laws()
}

/// `(a,x)⊠(b,y) = (ab, xy + a▷y + x◁b + θ(a,b))`.
pub fn boxtimes(c: &NonAbelianCocycle) -> Result<QuasiTwilledAlgebra, Error> {
    c.laws().into_result("non-abelian 2-cocycle")?;
    let field = c.field();
    let space = SplitSpace::new(c.dim_a(), c.dim_b());
    let mut maps = StructureMaps::zero(field, space);
    maps.mu = c.a.mu.clone();
    maps.nu = c.b.mu.clone();
    maps.tr = c.tr.clone();
    maps.tl = c.tl.clone();
    maps.theta = c.theta.clone();
    Ok(QuasiTwilledAlgebra::new(field, space, maps)?.with_origin(Origin::NonabelianBoxtimes))
}

/// `r(x)r(y) = r(r(x)▷y + x◁r(y) + xy + θ(r(x), r(y)))` on basis pairs.
pub fn twisted_rb_check(c: &NonAbelianCocycle, r: &Matrix) -> Result<LawCheck, Error> {
    if (r.rows(), r.cols()) != (c.dim_a(), c.dim_b()) || r.field() != c.field() {
        return Err(Error::Dimension(format!(
            "r must be a {}×{} matrix",
            c.dim_a(),
            c.dim_b()
        )));
    }
    let db = c.dim_b();
    Ok(check_law(
        c.field(),
        "twisted Rota-Baxter",
        &[db, db],
        |v| {
            let (x, y) = (&v[0], &v[1]);
            let (rx, ry) = (r.apply(x), r.apply(y));
            let inner = [c.tr(&rx, y), c.tl(x, &ry), c.mb(x, y), c.th(&rx, &ry)]
                .into_iter()
                .reduce(|p, q| linalg::add(&p, &q))
                .unwrap();
            (c.ma(&rx, &ry), r.apply(&inner))
        },
    ))
}

pub fn is_twisted_rb(c: &NonAbelianCocycle, r: &Matrix) -> Result<bool, Error> {
    Ok(twisted_rb_check(c, r)?.holds())
}

/// `(𝒜, ≺, ≻, ⋎, ·)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedTridendriform {
    pub prec: Bilinear,
    pub succ: Bilinear,
    pub vee: Bilinear,
    pub dot: Bilinear,
}

/// Which of the classical structures a twisted tridendriform algebra reduces to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    General,
    /// `⋎ = 0`
    Tridendriform,
    /// `· = 0`
    Ns,
    /// `⋎ = · = 0`
    Dendriform,
}

impl TwistedTridendriform {
    pub fn new(
        prec: Bilinear,
        succ: Bilinear,
        vee: Bilinear,
        dot: Bilinear,
    ) -> Result<TwistedTridendriform, Error> {
        let t = TwistedTridendriform::unchecked(prec, succ, vee, dot)?;
        t.laws().into_result("twisted tridendriform algebra")?;
        Ok(t)
    }

    pub fn unchecked(
        prec: Bilinear,
        succ: Bilinear,
        vee: Bilinear,
        dot: Bilinear,
    ) -> Result<TwistedTridendriform, Error> {
        let (d, _, _) = prec.shape();
        let field = prec.field();
        for m in [&prec, &succ, &vee, &dot] {
            if m.shape() != (d, d, d) {
                return Err(Error::Dimension("all four products must be d×d→d".into()));
            }
            if m.field() != field {
                return Err(Error::InvalidField("products over different fields".into()));
            }
        }
        Ok(TwistedTridendriform {
            prec,
            succ,
            vee,
            dot,
        })
    }

    pub fn zero(field: Field, dim: usize) -> TwistedTridendriform {
        let z = Bilinear::zero(field, dim, dim, dim);
        TwistedTridendriform {
            prec: z.clone(),
            succ: z.clone(),
            vee: z.clone(),
            dot: z,
        }
    }

    pub fn field(&self) -> Field {
        self.prec.field()
    }

    pub fn dim(&self) -> usize {
        self.prec.shape().0
    }

    /// `x ⋆ y = x≺y + x≻y + x⋎y + x·y`, never stored.
    pub fn star(&self) -> Bilinear {
        self.prec.add(&self.succ).add(&self.vee).add(&self.dot)
    }

    /// Both sides of TT1–TT8 at `(x, y, z)`.
    pub fn sides(
        &self,
        x: &[Scalar],
        y: &[Scalar],
        z: &[Scalar],
    ) -> [(Vec<Scalar>, Vec<Scalar>); 8] {
        let star = self.star();
        std::array::from_fn(|k| self.side(&star, k, x, y, z))
    }

    fn side(
        &self,
        star: &Bilinear,
        k: usize,
        x: &[Scalar],
        y: &[Scalar],
        z: &[Scalar],
    ) -> (Vec<Scalar>, Vec<Scalar>) {
        let (l, g, v, d) = (&self.prec, &self.succ, &self.vee, &self.dot);
        let s = |p: &[Scalar], q: &[Scalar]| star.apply(p, q);
        let add = |p: Vec<Scalar>, q: Vec<Scalar>| linalg::add(&p, &q);
        match k {
            0 => (
                l.apply(&l.apply(x, y), z),
                add(l.apply(x, &s(y, z)), d.apply(x, &v.apply(y, z))),
            ),
            1 => (l.apply(&g.apply(x, y), z), g.apply(x, &l.apply(y, z))),
            2 => (
                add(g.apply(&s(x, y), z), d.apply(&v.apply(x, y), z)),
                g.apply(x, &g.apply(y, z)),
            ),
            3 => (d.apply(&g.apply(x, y), z), g.apply(x, &d.apply(y, z))),
            4 => (d.apply(&l.apply(x, y), z), d.apply(x, &g.apply(y, z))),
            5 => (l.apply(&d.apply(x, y), z), d.apply(x, &l.apply(y, z))),
            6 => (d.apply(&d.apply(x, y), z), d.apply(x, &d.apply(y, z))),
            _ => (
                add(l.apply(&v.apply(x, y), z), v.apply(&s(x, y), z)),
                add(g.apply(x, &v.apply(y, z)), v.apply(x, &s(y, z))),
            ),
        }
    }

    /// TT1–TT8, named `TT1`…`TT8`.
    pub fn laws(&self) -> LawReport {
        let star = self.star();
        LawReport {
            checks: (0..8).map(|k| self.check(&star, k)).collect(),
        }
    }

    /// Stops at the first failing law.
    pub fn holds(&self) -> bool {
        let star = self.star();
        (0..8).all(|k| self.check(&star, k).holds())
    }

    fn check(&self, star: &Bilinear, k: usize) -> LawCheck {
        const NAMES: [&str; 8] = ["TT1", "TT2", "TT3", "TT4", "TT5", "TT6", "TT7", "TT8"];
        let d = self.dim();
        check_law(self.field(), NAMES[k], &[d, d, d], |v| {
            self.side(star, k, &v[0], &v[1], &v[2])
        })
    }

    pub fn degeneracy(&self) -> Degeneracy {
        match (self.vee.is_zero(), self.dot.is_zero()) {
            (false, false) => Degeneracy::General,
            (true, false) => Degeneracy::Tridendriform,
            (false, true) => Degeneracy::Ns,
            (true, true) => Degeneracy::Dendriform,
        }
    }

    /// Loday–Ronco's seven axioms for `(≺, ≻, ·)` with `⋆ = ≺ + ≻ + ·`.
    pub fn tridendriform_laws(&self) -> LawReport {
        let (l, g, m) = (&self.prec, &self.succ, &self.dot);
        let star = l.add(g).add(m);
        let d = self.dim();
        let f = self.field();
        let s = |p: &[Scalar], q: &[Scalar]| star.apply(p, q);
        LawReport {
            checks: vec![
                check_law(f, "(x≺y)≺z = x≺(y⋆z)", &[d, d, d], |v| {
                    (
                        l.apply(&l.apply(&v[0], &v[1]), &v[2]),
                        l.apply(&v[0], &s(&v[1], &v[2])),
                    )
                }),
                check_law(f, "(x≻y)≺z = x≻(y≺z)", &[d, d, d], |v| {
                    (
                        l.apply(&g.apply(&v[0], &v[1]), &v[2]),
                        g.apply(&v[0], &l.apply(&v[1], &v[2])),
                    )
                }),
                check_law(f, "(x⋆y)≻z = x≻(y≻z)", &[d, d, d], |v| {
                    (
                        g.apply(&s(&v[0], &v[1]), &v[2]),
                        g.apply(&v[0], &g.apply(&v[1], &v[2])),
                    )
                }),
                check_law(f, "(x≻y)·z = x≻(y·z)", &[d, d, d], |v| {
                    (
                        m.apply(&g.apply(&v[0], &v[1]), &v[2]),
                        g.apply(&v[0], &m.apply(&v[1], &v[2])),
                    )
                }),
                check_law(f, "(x≺y)·z = x·(y≻z)", &[d, d, d], |v| {
                    (
                        m.apply(&l.apply(&v[0], &v[1]), &v[2]),
                        m.apply(&v[0], &g.apply(&v[1], &v[2])),
                    )
                }),
                check_law(f, "(x·y)≺z = x·(y≺z)", &[d, d, d], |v| {
                    (
                        l.apply(&m.apply(&v[0], &v[1]), &v[2]),
                        m.apply(&v[0], &l.apply(&v[1], &v[2])),
                    )
                }),
                check_law(f, "(x·y)·z = x·(y·z)", &[d, d, d], |v| {
                    (
                        m.apply(&m.apply(&v[0], &v[1]), &v[2]),
                        m.apply(&v[0], &m.apply(&v[1], &v[2])),
                    )
                }),
            ],
        }
    }

    /// Uchino's NS-algebra axioms for `(≺, ≻, ⋎)` with `⋆ = ≺ + ≻ + ⋎`.
    pub fn ns_laws(&self) -> LawReport {
        let (l, g, v) = (&self.prec, &self.succ, &self.vee);
        let star = l.add(g).add(v);
        let d = self.dim();
        let f = self.field();
        let s = |p: &[Scalar], q: &[Scalar]| star.apply(p, q);
        LawReport {
            checks: vec![
                check_law(f, "(x≺y)≺z = x≺(y⋆z)", &[d, d, d], |w| {
                    (
                        l.apply(&l.apply(&w[0], &w[1]), &w[2]),
                        l.apply(&w[0], &s(&w[1], &w[2])),
                    )
                }),
                check_law(f, "(x≻y)≺z = x≻(y≺z)", &[d, d, d], |w| {
                    (
                        l.apply(&g.apply(&w[0], &w[1]), &w[2]),
                        g.apply(&w[0], &l.apply(&w[1], &w[2])),
                    )
                }),
                check_law(f, "(x⋆y)≻z = x≻(y≻z)", &[d, d, d], |w| {
                    (
                        g.apply(&s(&w[0], &w[1]), &w[2]),
                        g.apply(&w[0], &g.apply(&w[1], &w[2])),
                    )
                }),
                check_law(
                    f,
                    "(x⋎y)≺z + (x⋆y)⋎z = x≻(y⋎z) + x⋎(y⋆z)",
                    &[d, d, d],
                    |w| {
                        let (x, y, z) = (&w[0], &w[1], &w[2]);
                        (
                            linalg::add(&l.apply(&v.apply(x, y), z), &v.apply(&s(x, y), z)),
                            linalg::add(&g.apply(x, &v.apply(y, z)), &v.apply(x, &s(y, z))),
                        )
                    },
                ),
            ],
        }
    }

    /// Loday's dendriform axioms for `(≺, ≻)` with `⋆ = ≺ + ≻`.
    pub fn dendriform_laws(&self) -> LawReport {
        let (l, g) = (&self.prec, &self.succ);
        let star = l.add(g);
        let d = self.dim();
        let f = self.field();
        let s = |p: &[Scalar], q: &[Scalar]| star.apply(p, q);
        LawReport {
            checks: vec![
                check_law(f, "(x≺y)≺z = x≺(y⋆z)", &[d, d, d], |w| {
                    (
                        l.apply(&l.apply(&w[0], &w[1]), &w[2]),
                        l.apply(&w[0], &s(&w[1], &w[2])),
                    )
                }),
                check_law(f, "(x≻y)≺z = x≻(y≺z)", &[d, d, d], |w| {
                    (
                        l.apply(&g.apply(&w[0], &w[1]), &w[2]),
                        g.apply(&w[0], &l.apply(&w[1], &w[2])),
                    )
                }),
                check_law(f, "(x⋆y)≻z = x≻(y≻z)", &[d, d, d], |w| {
                    (
                        g.apply(&s(&w[0], &w[1]), &w[2]),
                        g.apply(&w[0], &g.apply(&w[1], &w[2])),
                    )
                }),
            ],
        }
    }
}

pub fn validate_ttd(t: &TwistedTridendriform) -> LawReport {
    t.laws()
}

/// `x ≺_r y = x◁r(y)`, `x ≻_r y = r(x)▷y`, `x ⋎_r y = θ(r(x), r(y))`, `·_B`.
pub fn induce_ttd(c: &NonAbelianCocycle, r: &Matrix) -> Result<TwistedTridendriform, Error> {
    if !is_twisted_rb(c, r)? {
        return Err(Error::NotTwistedRotaBaxter);
    }
    let (field, db) = (c.field(), c.dim_b());
    let e = |i: usize| unit_vector(field, db, i);
    let re = |i: usize| r.apply(&e(i));
    let prec = Bilinear::from_fn(field, db, db, db, |i, j| c.tl(&e(i), &re(j)));
    let succ = Bilinear::from_fn(field, db, db, db, |i, j| c.tr(&re(i), &e(j)));
    let vee = Bilinear::from_fn(field, db, db, db, |i, j| c.th(&re(i), &re(j)));
    TwistedTridendriform::unchecked(prec, succ, vee, c.b.mu.clone())
}

pub fn star_product(t: &TwistedTridendriform) -> Result<Bilinear, Error> {
    t.laws().into_result("twisted tridendriform algebra")?;
    Ok(t.star())
}

/// `▷ = ≻`, `◁ = ≺`, `θ = ⋎` on `(𝒜, ⋆)` with values in `(𝒜, ·)`.
pub fn ttd_to_cocycle(t: &TwistedTridendriform) -> Result<NonAbelianCocycle, Error> {
    let star = star_product(t)?;
    NonAbelianCocycle::new(
        Algebra::new(star)?,
        Algebra::new(t.dot.clone())?,
        t.succ.clone(),
        t.prec.clone(),
        t.vee.clone(),
    )
}

/// `Id` is a twisted Rota–Baxter operator for [`ttd_to_cocycle`] and induces `t` back.
pub fn identity_roundtrip(t: &TwistedTridendriform) -> Result<bool, Error> {
    let c = ttd_to_cocycle(t)?;
    let id = Matrix::identity(t.field(), t.dim());
    if !is_twisted_rb(&c, &id)? {
        return Ok(false);
    }
    Ok(&induce_ttd(&c, &id)? == t)
}

/// `(x,x')∗(y,y') = (x⋆y, x'·y' + x≻y' + x'≺y + x⋎y)` on `𝒜 ⊕ 𝒜`.
pub fn double_qta(t: &TwistedTridendriform) -> Result<QuasiTwilledAlgebra, Error> {
    let star = star_product(t)?;
    let (field, d) = (t.field(), t.dim());
    let space = SplitSpace::new(d, d);
    let product = MultiMap::from_fn(field, 2 * d, 2, |tuple| {
        let (u, v) = (
            unit_vector(field, 2 * d, tuple[0]),
            unit_vector(field, 2 * d, tuple[1]),
        );
        let (x, x1) = (&u[..d], &u[d..]);
        let (y, y1) = (&v[..d], &v[d..]);
        let first = star.apply(x, y);
        let second = [
            t.dot.apply(x1, y1),
            t.succ.apply(x, y1),
            t.prec.apply(x1, y),
            t.vee.apply(x, y),
        ]
        .into_iter()
        .reduce(|p, q| linalg::add(&p, &q))
        .unwrap();
        first.into_iter().chain(second).collect()
    });
    let q = QuasiTwilledAlgebra::from_product(field, space, &product)?;
    q.validate_axioms().into_result("quasi-twilled algebra")?;
    Ok(q.with_origin(Origin::NonabelianBoxtimes))
}

// ------------------------------------------------------------------ searches

fn prime_elements(field: Field) -> Result<Vec<Scalar>, Error> {
    match field {
        Field::Prime(_) => Ok(field.elements()),
        Field::Rational => Err(Error::InvalidField(
            "exhaustive search needs a prime field".into(),
        )),
    }
}

fn search_size(p: u64, coeffs: usize, budget: u128) -> Result<u128, Error> {
    let size = (p as u128).checked_pow(coeffs as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(size)
}

fn decode_coeffs(elements: &[Scalar], mut index: u128, n: usize) -> Vec<Scalar> {
    let p = elements.len() as u128;
    (0..n)
        .map(|_| {
            let v = elements[(index % p) as usize].clone();
            index /= p;
            v
        })
        .collect()
}

fn split_bilinear(
    field: Field,
    coeffs: &[Scalar],
    shapes: &[(usize, usize, usize)],
) -> Vec<Bilinear> {
    let mut at = 0;
    shapes
        .iter()
        .map(|&(l, r, o)| {
            let n = l * r * o;
            let b = Bilinear::from_coeffs(field, l, r, o, coeffs[at..at + n].to_vec())
                .expect("sized above");
            at += n;
            b
        })
        .collect()
}

/// Every `(▷, ◁, θ)` on the given algebras, by exhaustion.
pub fn all_cocycles(
    a: &Algebra,
    b: &Algebra,
    budget: u128,
) -> Result<Vec<NonAbelianCocycle>, Error> {
    let field = a.field();
    let elements = prime_elements(field)?;
    let (da, db) = (a.dim(), b.dim());
    let shapes = [(da, db, db), (db, da, db), (da, da, db)];
    let n: usize = shapes.iter().map(|&(l, r, o)| l * r * o).sum();
    let size = search_size(field.characteristic(), n, budget)?;
    a.associativity().into_result("A")?;
    b.associativity().into_result("B")?;
    let found: Vec<NonAbelianCocycle> = (0..size)
        .into_par_iter()
        .filter_map(|i| {
            let m = split_bilinear(field, &decode_coeffs(&elements, i, n), &shapes);
            let c = NonAbelianCocycle::unchecked(
                a.clone(),
                b.clone(),
                m[0].clone(),
                m[1].clone(),
                m[2].clone(),
            )
            .ok()?;
            c.cocycle_holds().then_some(c)
        })
        .collect();
    Ok(found)
}

/// Every twisted tridendriform structure of the given dimension, by exhaustion.
pub fn all_ttds(
    field: Field,
    dim: usize,
    budget: u128,
) -> Result<Vec<TwistedTridendriform>, Error> {
    let elements = prime_elements(field)?;
    let shapes = [(dim, dim, dim); 4];
    let n = 4 * dim.pow(3);
    let size = search_size(field.characteristic(), n, budget)?;
    Ok((0..size)
        .into_par_iter()
        .filter_map(|i| {
            let m = split_bilinear(field, &decode_coeffs(&elements, i, n), &shapes);
            let t = TwistedTridendriform::unchecked(
                m[0].clone(),
                m[1].clone(),
                m[2].clone(),
                m[3].clone(),
            )
            .ok()?;
            t.holds().then_some(t)
        })
        .collect())
}

/// A random coefficient vector with at most `max_nonzero` nonzero entries.
fn sparse(field: Field, n: usize, max_nonzero: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    let p = field.characteristic();
    for _ in 0..rng.gen_range(0..=max_nonzero) {
        let value = if p == 0 {
            rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 }
        } else {
            rng.gen_range(1..p) as i64
        };
        v[rng.gen_range(0..n)] = field.from_i64(value);
    }
    v
}

/// Rejection sampling over sparse cocycle data (all five tensors), keeping the
/// distinct candidates that pass every law.
pub fn sample_cocycles(
    field: Field,
    da: usize,
    db: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Vec<NonAbelianCocycle> {
    let shapes = [
        (da, da, da),
        (db, db, db),
        (da, db, db),
        (db, da, db),
        (da, da, db),
    ];
    let n: usize = shapes.iter().map(|&(l, r, o)| l * r * o).sum();
    let candidates: Vec<Vec<Scalar>> = (0..samples).map(|_| sparse(field, n, 6, rng)).collect();
    let mut seen = HashSet::new();
    candidates
        .into_iter()
        .filter_map(|coeffs| {
            let m = split_bilinear(field, &coeffs, &shapes);
            let c = NonAbelianCocycle::unchecked(
                Algebra::unchecked(m[0].clone()),
                Algebra::unchecked(m[1].clone()),
                m[2].clone(),
                m[3].clone(),
                m[4].clone(),
            )
            .ok()?;
            (c.holds() && seen.insert(coeffs)).then_some(c)
        })
        .collect()
}

/// Rejection sampling over sparse quadruples of products.
pub fn sample_ttds(
    field: Field,
    dim: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Vec<TwistedTridendriform> {
    let shapes = [(dim, dim, dim); 4];
    let n = 4 * dim.pow(3);
    let candidates: Vec<Vec<Scalar>> = (0..samples).map(|_| sparse(field, n, 6, rng)).collect();
    let mut seen = HashSet::new();
    candidates
        .into_iter()
        .filter_map(|coeffs| {
            let m = split_bilinear(field, &coeffs, &shapes);
            let t = TwistedTridendriform::unchecked(
                m[0].clone(),
                m[1].clone(),
                m[2].clone(),
                m[3].clone(),
            )
            .ok()?;
            (t.holds() && seen.insert(coeffs)).then_some(t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qta::factories;

    const Q: Field = Field::Rational;

    fn scalar(x: i64) -> Matrix {
        Matrix::from_i64(Q, &[&[x]])
    }

    #[test]
    fn reynolds_cocycle_gives_reynolds_shape() {
        let k1 = Algebra::k1(Q);
        let c = NonAbelianCocycle::reynolds(&k1).unwrap();
        let q = boxtimes(&c).unwrap();
        let r = factories::reynolds_shape(&k1).unwrap();
        assert_eq!(q.maps(), r.maps());
        let found: Vec<i64> = (-3..=3)
            .filter(|&x| is_twisted_rb(&c, &scalar(x)).unwrap())
            .collect();
        assert_eq!(found, vec![0, 1]);
    }

    #[test]
    fn weight_one_on_k1() {
        let k1 = Algebra::k1(Q);
        let c = NonAbelianCocycle::algebra_in_bimodules(
            k1.clone(),
            k1.clone(),
            k1.mu.clone(),
            k1.mu.clone(),
        )
        .unwrap();
        let found: Vec<i64> = (-3..=3)
            .filter(|&x| is_twisted_rb(&c, &scalar(x)).unwrap())
            .collect();
        assert_eq!(found, vec![-1, 0]);
        let t = induce_ttd(&c, &scalar(-1)).unwrap();
        assert!(t.laws().passed());
        assert_eq!(t.degeneracy(), Degeneracy::Tridendriform);
        assert!(t.tridendriform_laws().passed());
        // ≺ = ≻ = −μ, · = μ, so ⋆ = −μ.
        assert_eq!(star_product(&t).unwrap(), k1.mu.scale(&-Q.one()));
        assert!(identity_roundtrip(&t).unwrap());
        let d = double_qta(&t).unwrap();
        assert_eq!(
            d.maps(),
            boxtimes(&ttd_to_cocycle(&t).unwrap()).unwrap().maps()
        );
    }

    #[test]
    fn planted_nab3_violation() {
        let k1 = Algebra::k1(Q);
        let c = NonAbelianCocycle::reynolds(&k1).unwrap();
        let broken = NonAbelianCocycle::unchecked(
            c.a.clone(),
            c.b.clone(),
            c.tr.clone(),
            c.tl.scale(&Q.from_i64(2)),
            c.theta.clone(),
        )
        .unwrap();
        let report = broken.laws();
        assert!(!report.get("nab3").unwrap().holds());
        assert!(report.get("nab3").unwrap().witness.is_some());
        assert!(matches!(boxtimes(&broken), Err(Error::Law { .. })));
    }

    #[test]
    fn zero_ttd_is_trivial() {
        let t = TwistedTridendriform::zero(Q, 2);
        assert!(t.laws().passed());
        assert!(star_product(&t).unwrap().is_zero());
        assert!(identity_roundtrip(&t).unwrap());
        assert_eq!(t.degeneracy(), Degeneracy::Dendriform);
        assert!(double_qta(&t).unwrap().maps().mu.is_zero());
    }
}
