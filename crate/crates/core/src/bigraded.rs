//! Maps on a split space `A ⊕ B`, graded by bidegree.
//!
//! Basis vectors of `A` come first, then those of `B`. A map of arity `n`
//! has bidegree `k|l` (with `k + l = n − 1`) when it sends tuples with `k+1`
//! inputs from `A` into `A`, tuples with `k` inputs from `A` into `B`, and
//! kills everything else. Every coordinate of a dense map belongs to exactly
//! one bidegree, so projections are plain coordinate filters.

use std::collections::BTreeSet;
use std::fmt;

use crate::linalg::Matrix;
use crate::multilinear::{decode, encode, pow, Bilinear, HomMap, MultiMap};
use crate::{Error, Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub k: i64,
    pub l: i64,
}

impl Bidegree {
    pub fn new(k: i64, l: i64) -> Bidegree {
        Bidegree { k, l }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.k, self.l)
    }
}

/// The graded Lie subalgebras `𝒬 ⊇ ℳ` and `ℛ ⊇ ℳ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subalgebra {
    /// Excludes `Hom(B^{⊗n+1}, A)`.
    Q,
    /// Excludes both `Hom(B^{⊗n+1}, A)` and `Hom(A^{⊗n+1}, B)`.
    M,
    /// Excludes `Hom(A^{⊗n+1}, B)`.
    R,
}

/// The seven bilinear structure maps of a quasi-twilled algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMaps {
    /// `A × A → A`
    pub mu: Bilinear,
    /// `B × B → B`
    pub nu: Bilinear,
    /// `▷ : A × B → B`
    pub tr: Bilinear,
    /// `◁ : B × A → B`
    pub tl: Bilinear,
    /// `⇀ : B × A → A`
    pub rh: Bilinear,
    /// `↼ : A × B → A`
    pub lh: Bilinear,
    /// `θ : A × A → B`
    pub theta: Bilinear,
}

impl StructureMaps {
    pub fn zero(field: Field, space: SplitSpace) -> StructureMaps {
        let (a, b) = (space.dim_a, space.dim_b);
        StructureMaps {
            mu: Bilinear::zero(field, a, a, a),
            nu: Bilinear::zero(field, b, b, b),
            tr: Bilinear::zero(field, a, b, b),
            tl: Bilinear::zero(field, b, a, b),
            rh: Bilinear::zero(field, b, a, a),
            lh: Bilinear::zero(field, a, b, a),
            theta: Bilinear::zero(field, a, a, b),
        }
    }

    pub fn check_shapes(&self, space: SplitSpace) -> Result<(), Error> {
        let (a, b) = (space.dim_a, space.dim_b);
        let expected = [
            ("mu", &self.mu, (a, a, a)),
            ("nu", &self.nu, (b, b, b)),
            ("tr", &self.tr, (a, b, b)),
            ("tl", &self.tl, (b, a, b)),
            ("rh", &self.rh, (b, a, a)),
            ("lh", &self.lh, (a, b, a)),
            ("theta", &self.theta, (a, a, b)),
        ];
        for (name, m, shape) in expected {
            if m.shape() != shape {
                return Err(Error::Dimension(format!(
                    "{name} has shape {:?}, expected {shape:?}",
                    m.shape()
                )));
            }
        }
        Ok(())
    }

    pub fn map_all(&self, f: impl Fn(&Bilinear) -> Bilinear) -> StructureMaps {
        StructureMaps {
            mu: f(&self.mu),
            nu: f(&self.nu),
            tr: f(&self.tr),
            tl: f(&self.tl),
            rh: f(&self.rh),
            lh: f(&self.lh),
            theta: f(&self.theta),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitSpace {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl SplitSpace {
    pub fn new(dim_a: usize, dim_b: usize) -> SplitSpace {
        SplitSpace { dim_a, dim_b }
    }

    pub fn total(&self) -> usize {
        self.dim_a + self.dim_b
    }

    pub fn dim(&self, side: Side) -> usize {
        match side {
            Side::A => self.dim_a,
            Side::B => self.dim_b,
        }
    }

    pub fn side(&self, i: usize) -> Side {
        if i < self.dim_a {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn local(&self, i: usize) -> usize {
        if i < self.dim_a {
            i
        } else {
            i - self.dim_a
        }
    }

    pub fn global(&self, side: Side, local: usize) -> usize {
        match side {
            Side::A => local,
            Side::B => self.dim_a + local,
        }
    }

    /// Global basis indices of one side.
    pub fn indices(&self, side: Side) -> std::ops::Range<usize> {
        match side {
            Side::A => 0..self.dim_a,
            Side::B => self.dim_a..self.total(),
        }
    }

    /// Embeds a vector of `A` or `B` into `A ⊕ B`.
    pub fn include(&self, side: Side, v: &[Scalar], field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.total()];
        for (i, x) in v.iter().enumerate() {
            out[self.global(side, i)] = x.clone();
        }
        out
    }

    /// The `A` or `B` part of a vector of `A ⊕ B`.
    pub fn part(&self, side: Side, v: &[Scalar]) -> Vec<Scalar> {
        v[self.indices(side)].to_vec()
    }

    /// The bidegree that the coordinate `(tuple, out)` belongs to.
    pub fn bidegree_of(&self, tuple: &[usize], out: usize) -> Bidegree {
        let p = tuple.iter().filter(|&&i| i < self.dim_a).count() as i64;
        let q = tuple.len() as i64 - p;
        match self.side(out) {
            Side::A => Bidegree::new(p - 1, q),
            Side::B => Bidegree::new(p, q - 1),
        }
    }

    /// All bidegrees that can occur at a given arity, from `n|−1` down to `−1|n`.
    pub fn bidegrees(&self, arity: usize) -> Vec<Bidegree> {
        let n = arity as i64;
        (-1..=n)
            .rev()
            .map(|k| Bidegree::new(k, n - 1 - k))
            .collect()
    }

    fn check(&self, f: &MultiMap) -> Result<(), Error> {
        if f.dim() != self.total() {
            return Err(Error::Dimension(format!(
                "map on dimension {} used on A⊕B of dimension {}",
                f.dim(),
                self.total()
            )));
        }
        Ok(())
    }

    /// The set of bidegrees carrying a nonzero coefficient of `f`.
    pub fn support(&self, f: &MultiMap) -> BTreeSet<Bidegree> {
        let d = f.dim();
        let mut out = BTreeSet::new();
        for t in 0..f.tuple_count() {
            let tuple = decode(d, f.arity(), t);
            for (o, c) in f.value(t).iter().enumerate() {
                if !c.is_zero() {
                    out.insert(self.bidegree_of(&tuple, o));
                }
            }
        }
        out
    }

    /// The bidegree of a homogeneous nonzero map; `None` for zero or mixed maps.
    pub fn classify(&self, f: &MultiMap) -> Result<Option<Bidegree>, Error> {
        self.check(f)?;
        let s = self.support(f);
        Ok(if s.len() == 1 {
            s.into_iter().next()
        } else {
            None
        })
    }

    fn filter(&self, f: &MultiMap, mut keep: impl FnMut(&[usize], usize) -> bool) -> MultiMap {
        let d = f.dim();
        let mut out = f.clone();
        for t in 0..f.tuple_count() {
            let tuple = decode(d, f.arity(), t);
            for o in 0..d {
                if !keep(&tuple, o) {
                    *out.coeff_mut(t * d + o) = f.field().zero();
                }
            }
        }
        out
    }

    /// The `C^{k|l}` component of `f`.
    pub fn project(&self, f: &MultiMap, d: Bidegree) -> MultiMap {
        self.filter(f, |t, o| self.bidegree_of(t, o) == d)
    }

    pub fn in_subalgebra(&self, f: &MultiMap, which: Subalgebra) -> bool {
        if f.arity() == 0 {
            return true;
        }
        self.support(f).iter().all(|d| match which {
            Subalgebra::Q => d.k != -1,
            Subalgebra::M => d.k != -1 && d.l != -1,
            Subalgebra::R => d.l != -1,
        })
    }

    /// Projection onto `𝔞 = ⊕ Hom(A^{⊗n+1}, B)`.
    pub fn p_a(&self, f: &MultiMap) -> MultiMap {
        self.pure_part(f, Side::A, Side::B)
    }

    /// Projection onto `𝔟 = ⊕ Hom(B^{⊗n+1}, A)`.
    pub fn p_b(&self, f: &MultiMap) -> MultiMap {
        self.pure_part(f, Side::B, Side::A)
    }

    fn pure_part(&self, f: &MultiMap, from: Side, to: Side) -> MultiMap {
        if f.arity() == 0 {
            return MultiMap::zero(f.field(), f.dim(), 0);
        }
        self.filter(f, |t, o| {
            self.side(o) == to && t.iter().all(|&i| self.side(i) == from)
        })
    }

    /// Lifts a bilinear map between the summands to a map on `A ⊕ B`.
    pub fn hat(&self, m: &Bilinear, left: Side, right: Side, out: Side) -> MultiMap {
        let field = m.field();
        let n = self.total();
        let mut res = MultiMap::zero(field, n, 2);
        for i in 0..self.dim(left) {
            for j in 0..self.dim(right) {
                let gi = self.global(left, i);
                let gj = self.global(right, j);
                for (k, c) in m.value(i, j).iter().enumerate() {
                    res.set(&[gi, gj], self.global(out, k), c.clone());
                }
            }
        }
        res
    }

    /// `(θ̃, μ̂, ν̂)` of bidegrees `2|−1`, `1|0` and `0|1`.
    pub fn hat_components(
        &self,
        s: &StructureMaps,
    ) -> Result<(MultiMap, MultiMap, MultiMap), Error> {
        s.check_shapes(*self)?;
        use Side::{A, B};
        let theta = self.hat(&s.theta, A, A, B);
        let mu = self
            .hat(&s.mu, A, A, A)
            .add(&self.hat(&s.tr, A, B, B))
            .add(&self.hat(&s.tl, B, A, B));
        let nu = self
            .hat(&s.nu, B, B, B)
            .add(&self.hat(&s.lh, A, B, A))
            .add(&self.hat(&s.rh, B, A, A));
        Ok((theta, mu, nu))
    }

    /// Reads the seven structure maps back off an arity-2 map on `A ⊕ B`.
    pub fn components_of(&self, m: &MultiMap) -> StructureMaps {
        use Side::{A, B};
        let part = |left: Side, right: Side, out: Side| {
            Bilinear::from_fn(
                m.field(),
                self.dim(left),
                self.dim(right),
                self.dim(out),
                |i, j| {
                    let v = m.at(&[self.global(left, i), self.global(right, j)]);
                    self.part(out, v)
                },
            )
        };
        StructureMaps {
            mu: part(A, A, A),
            nu: part(B, B, B),
            tr: part(A, B, B),
            tl: part(B, A, B),
            rh: part(B, A, A),
            lh: part(A, B, A),
            theta: part(A, A, B),
        }
    }

    /// Embeds `h : X^{⊗n} → Y` as a map on `A ⊕ B` vanishing off `X^{⊗n}`.
    pub fn embed(&self, h: &HomMap, from: Side, to: Side) -> MultiMap {
        assert_eq!(
            (h.input(), h.output()),
            (self.dim(from), self.dim(to)),
            "hom-space shape"
        );
        let n = self.total();
        let mut res = MultiMap::zero(h.field(), n, h.arity());
        for t in 0..pow(h.input(), h.arity()) {
            let local = decode(h.input(), h.arity(), t);
            let global: Vec<usize> = local.iter().map(|&i| self.global(from, i)).collect();
            for (k, c) in h.at(&local).iter().enumerate() {
                res.set(&global, self.global(to, k), c.clone());
            }
        }
        res
    }

    /// The `X^{⊗n} → Y` block of a map on `A ⊕ B`.
    pub fn restrict(&self, f: &MultiMap, from: Side, to: Side) -> HomMap {
        HomMap::from_fn(
            f.field(),
            self.dim(from),
            self.dim(to),
            f.arity(),
            |local| {
                let global: Vec<usize> = local.iter().map(|&i| self.global(from, i)).collect();
                self.part(to, f.value(encode(self.total(), &global)))
            },
        )
    }

    /// A linear map `X → Y` (matrix with `dim Y` rows) as an arity-1 map.
    pub fn embed_linear(&self, m: &Matrix, from: Side, to: Side) -> MultiMap {
        assert_eq!(
            (m.rows(), m.cols()),
            (self.dim(to), self.dim(from)),
            "linear map shape"
        );
        let h = HomMap::from_fn(m.field(), m.cols(), m.rows(), 1, |t| m.column(t[0]));
        self.embed(&h, from, to)
    }

    pub fn restrict_linear(&self, f: &MultiMap, from: Side, to: Side) -> Matrix {
        assert_eq!(f.arity(), 1);
        let h = self.restrict(f, from, to);
        Matrix::from_fn(f.field(), self.dim(to), self.dim(from), |i, j| {
            h.at(&[j])[i].clone()
        })
    }
}
