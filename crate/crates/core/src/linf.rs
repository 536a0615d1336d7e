//! Curved L∞-algebras built from derived brackets on the Gerstenhaber algebra
//! of `A ⊕ B`.
//!
//! Everything is stored as a multilinear map on the total space. Carrier
//! elements are either plain (`Hom(A^{⊗n}, B)`, `Hom(B^{⊗n}, A)`) or shifted
//! (`x[1]` for `x ∈ 𝒬`). All structure maps `l_k` have degree 1 and are graded
//! symmetric with plain Koszul signs, where a plain map of arity `n` has
//! degree `n − 1` and a shifted one degree `n − 2`.
//!
//! Coefficients `1/k!` do not exist over small prime fields. There the
//! Maurer–Cartan residual and the twisted brackets are computed from integer
//! lifts over ℚ and reduced back, which is legitimate because the reduced
//! expressions are polynomials with integer coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::bigraded::{Bidegree, Side, SplitSpace, Subalgebra};
use crate::linalg::{self, unit_vector, Matrix};
use crate::multilinear::{HomMap, MultiMap};
use crate::qta::{Algebra, MatchedPair, QuasiTwilledAlgebra};
use crate::{defmap, Error, Field, Scalar};

/// Largest arity of any map an operation may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    max_arity: usize,
}

impl DegreeWindow {
    pub fn new(max_arity: usize) -> Result<DegreeWindow, Error> {
        if max_arity < 2 {
            return Err(Error::Invalid("a degree window needs max_arity ≥ 2".into()));
        }
        Ok(DegreeWindow { max_arity })
    }

    pub fn max_arity(self) -> usize {
        self.max_arity
    }

    fn check(self, needed: usize) -> Result<(), Error> {
        if needed > self.max_arity {
            return Err(Error::WindowOverflow {
                needed,
                max: self.max_arity,
            });
        }
        Ok(())
    }
}

impl Default for DegreeWindow {
    fn default() -> Self {
        DegreeWindow { max_arity: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous {
    pub shifted: bool,
    pub map: MultiMap,
}

impl Homogeneous {
    pub fn plain(map: MultiMap) -> Homogeneous {
        Homogeneous {
            shifted: false,
            map,
        }
    }

    pub fn shifted(map: MultiMap) -> Homogeneous {
        Homogeneous { shifted: true, map }
    }

    pub fn degree(&self) -> i64 {
        self.map.arity() as i64 - 1 - i64::from(self.shifted)
    }
}

/// A finite sum of homogeneous pieces, one per `(shifted, arity)`.
///
/// Zero pieces are never stored, so equality is equality of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    field: Field,
    dim: usize,
    parts: BTreeMap<(bool, usize), MultiMap>,
}

impl Element {
    pub fn zero(field: Field, dim: usize) -> Element {
        Element {
            field,
            dim,
            parts: BTreeMap::new(),
        }
    }

    pub fn from_homogeneous(h: &Homogeneous) -> Element {
        let mut e = Element::zero(h.map.field(), h.map.dim());
        e.add_homogeneous(h);
        e
    }

    pub fn plain(map: MultiMap) -> Element {
        Element::from_homogeneous(&Homogeneous::plain(map))
    }

    pub fn shifted(map: MultiMap) -> Element {
        Element::from_homogeneous(&Homogeneous::shifted(map))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, shifted: bool, arity: usize) -> Option<&MultiMap> {
        self.parts.get(&(shifted, arity))
    }

    pub fn components(&self) -> Vec<Homogeneous> {
        self.parts
            .iter()
            .map(|(&(shifted, _), m)| Homogeneous {
                shifted,
                map: m.clone(),
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add_homogeneous(&mut self, h: &Homogeneous) {
        assert_eq!(
            (h.map.field(), h.map.dim()),
            (self.field, self.dim),
            "element shape"
        );
        let key = (h.shifted, h.map.arity());
        match self.parts.get_mut(&key) {
            Some(m) => {
                m.add_assign(&h.map);
                if m.is_zero() {
                    self.parts.remove(&key);
                }
            }
            None if !h.map.is_zero() => {
                self.parts.insert(key, h.map.clone());
            }
            None => {}
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for h in other.components() {
            self.add_homogeneous(&h);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_assign(other);
        e
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut e = Element::zero(self.field, self.dim);
        for h in self.components() {
            e.add_homogeneous(&Homogeneous {
                shifted: h.shifted,
                map: h.map.scale(c),
            });
        }
        e
    }

    pub fn lift(&self) -> Element {
        let mut e = Element::zero(Field::Rational, self.dim);
        for h in self.components() {
            e.add_homogeneous(&Homogeneous {
                shifted: h.shifted,
                map: h.map.lift(),
            });
        }
        e
    }

    pub fn reduce(&self, p: u64) -> Option<Element> {
        let mut e = Element::zero(Field::Prime(p), self.dim);
        for h in self.components() {
            e.add_homogeneous(&Homogeneous {
                shifted: h.shifted,
                map: h.map.reduce(p)?,
            });
        }
        Some(e)
    }
}

/// A curved L∞-algebra whose carrier is a space of maps on `A ⊕ B`.
pub trait LInfinity: Send + Sync {
    fn field(&self) -> Field;
    fn space(&self) -> SplitSpace;
    fn window(&self) -> DegreeWindow;
    /// No `l_k` with `k` above this is ever nonzero.
    fn top_arity(&self) -> usize;
    /// `l_0`.
    fn curvature(&self) -> Result<Element, Error>;
    fn contains(&self, h: &Homogeneous) -> bool;
    /// `l_k` on `k ≥ 1` homogeneous carrier elements.
    fn bracket(&self, inputs: &[&Homogeneous]) -> Result<Element, Error>;
    /// The same formulas with every coefficient lifted to ℚ.
    fn to_rational(&self) -> Arc<dyn LInfinity>;
}

/// Which abelian subalgebra the derived brackets project onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Projection {
    /// `𝔞 = ⊕ Hom(A^{⊗n+1}, B)`
    A,
    /// `𝔟 = ⊕ Hom(B^{⊗n+1}, A)`
    B,
}

impl Projection {
    fn apply(self, space: &SplitSpace, f: &MultiMap) -> MultiMap {
        match self {
            Projection::A => space.p_a(f),
            Projection::B => space.p_b(f),
        }
    }

    fn contains(self, space: &SplitSpace, f: &MultiMap) -> bool {
        f.arity() >= 1 && &self.apply(space, f) == f
    }

    /// How many brackets with carrier elements bring a map of bidegree `d`
    /// into the image of the projection.
    fn steps(self, d: Bidegree) -> Option<usize> {
        let s = match self {
            Projection::A => d.l + 1,
            Projection::B => d.k + 1,
        };
        usize::try_from(s).ok()
    }

    fn reach(self, space: &SplitSpace, f: &MultiMap) -> BTreeSet<usize> {
        space
            .support(f)
            .into_iter()
            .filter_map(|d| self.steps(d))
            .collect()
    }
}

fn sign(field: Field, negative: bool) -> Scalar {
    if negative {
        -field.one()
    } else {
        field.one()
    }
}

/// `P[⋯[[Δ, a_1], a_2], …, a_k]`.
fn nested(
    space: &SplitSpace,
    window: DegreeWindow,
    p: Projection,
    start: &MultiMap,
    args: &[&Homogeneous],
) -> Result<MultiMap, Error> {
    let needed = start.arity() + args.iter().map(|a| a.map.arity() - 1).sum::<usize>();
    window.check(needed)?;
    let mut acc = start.clone();
    for a in args {
        acc = acc.bracket(&a.map)?;
        if acc.is_zero() {
            return Ok(MultiMap::zero(start.field(), start.dim(), needed));
        }
    }
    Ok(p.apply(space, &acc))
}

/// Voronov's derived brackets `l_k = P[⋯[Δ, a_1]⋯, a_k]` on an abelian subalgebra.
#[derive(Clone, Debug)]
pub struct DerivedBrackets {
    space: SplitSpace,
    window: DegreeWindow,
    delta: MultiMap,
    projection: Projection,
    reach: BTreeSet<usize>,
}

impl DerivedBrackets {
    /// Requires `[Δ, Δ] = 0`.
    pub fn new(
        space: SplitSpace,
        delta: MultiMap,
        projection: Projection,
        window: DegreeWindow,
    ) -> Result<DerivedBrackets, Error> {
        if delta.dim() != space.total() {
            return Err(Error::Dimension("Δ lives on the wrong space".into()));
        }
        if !delta.square().is_zero() {
            return Err(Error::NotMaurerCartan);
        }
        let reach = projection.reach(&space, &delta);
        Ok(DerivedBrackets {
            space,
            window,
            delta,
            projection,
            reach,
        })
    }

    pub fn delta(&self) -> &MultiMap {
        &self.delta
    }

    /// The nested bracket computed even where it is known to vanish.
    pub fn literal(&self, inputs: &[&Homogeneous]) -> Result<MultiMap, Error> {
        nested(
            &self.space,
            self.window,
            self.projection,
            &self.delta,
            inputs,
        )
    }
}

impl LInfinity for DerivedBrackets {
    fn field(&self) -> Field {
        self.delta.field()
    }

    fn space(&self) -> SplitSpace {
        self.space
    }

    fn window(&self) -> DegreeWindow {
        self.window
    }

    fn top_arity(&self) -> usize {
        self.reach.iter().next_back().copied().unwrap_or(0)
    }

    fn curvature(&self) -> Result<Element, Error> {
        Ok(Element::plain(
            self.projection.apply(&self.space, &self.delta),
        ))
    }

    fn contains(&self, h: &Homogeneous) -> bool {
        !h.shifted && self.projection.contains(&self.space, &h.map)
    }

    fn bracket(&self, inputs: &[&Homogeneous]) -> Result<Element, Error> {
        let zero = Element::zero(self.field(), self.space.total());
        if !self.reach.contains(&inputs.len()) {
            return Ok(zero);
        }
        Ok(Element::plain(self.literal(inputs)?))
    }

    fn to_rational(&self) -> Arc<dyn LInfinity> {
        let mut lifted = self.clone();
        lifted.delta = self.delta.lift();
        Arc::new(lifted)
    }
}

/// Voronov's extension to `𝒬[1] ⊕ 𝔞` (or `𝒬[1] ⊕ 𝔟`):
///
/// ```text
/// l_0            = P(Δ)
/// l_1(x[1])      = [Δ,x][1] + P(x)
/// l_2(x[1],y[1]) = (−1)^{|x|} [x,y][1]
/// l_k(x[1],a…)   = P[⋯[x,a_1]⋯,a_{k−1}]     k ≥ 2
/// l_k(a…)        = P[⋯[Δ,a_1]⋯,a_k]
/// ```
///
/// with every other combination zero up to Koszul-signed reordering.
#[derive(Clone, Debug)]
pub struct Extended {
    space: SplitSpace,
    window: DegreeWindow,
    delta: MultiMap,
    projection: Projection,
}

impl Extended {
    pub fn new(
        space: SplitSpace,
        delta: MultiMap,
        projection: Projection,
        window: DegreeWindow,
    ) -> Result<Extended, Error> {
        if delta.dim() != space.total() {
            return Err(Error::Dimension("Δ lives on the wrong space".into()));
        }
        if !delta.square().is_zero() {
            return Err(Error::NotMaurerCartan);
        }
        if !space.in_subalgebra(&delta.bracket(&delta)?, Subalgebra::Q)
            || !space.in_subalgebra(&delta, Subalgebra::Q)
        {
            return Err(Error::NotInCarrier("Δ must preserve 𝒬".into()));
        }
        Ok(Extended {
            space,
            window,
            delta,
            projection,
        })
    }
}

impl LInfinity for Extended {
    fn field(&self) -> Field {
        self.delta.field()
    }

    fn space(&self) -> SplitSpace {
        self.space
    }

    fn window(&self) -> DegreeWindow {
        self.window
    }

    fn top_arity(&self) -> usize {
        // A shifted input of arity at most `max_arity` needs at most
        // `max_arity + 1` brackets to reach the projection.
        self.window.max_arity + 2
    }

    fn curvature(&self) -> Result<Element, Error> {
        Ok(Element::plain(
            self.projection.apply(&self.space, &self.delta),
        ))
    }

    fn contains(&self, h: &Homogeneous) -> bool {
        if h.shifted {
            h.map.arity() >= 1 && self.space.in_subalgebra(&h.map, Subalgebra::Q)
        } else {
            self.projection.contains(&self.space, &h.map)
        }
    }

    fn bracket(&self, inputs: &[&Homogeneous]) -> Result<Element, Error> {
        let field = self.field();
        let zero = Element::zero(field, self.space.total());
        let k = inputs.len();
        let shifted: Vec<usize> = (0..k).filter(|&i| inputs[i].shifted).collect();
        match shifted.len() {
            0 => {
                if !self.projection.reach(&self.space, &self.delta).contains(&k) {
                    return Ok(zero);
                }
                Ok(Element::plain(nested(
                    &self.space,
                    self.window,
                    self.projection,
                    &self.delta,
                    inputs,
                )?))
            }
            1 => {
                let pos = shifted[0];
                let x = inputs[pos];
                if k == 1 {
                    let mut e = Element::plain(self.projection.apply(&self.space, &x.map));
                    if !self.delta.is_zero() {
                        self.window.check(x.map.arity() + 1)?;
                        e.add_homogeneous(&Homogeneous::shifted(self.delta.bracket(&x.map)?));
                    }
                    return Ok(e);
                }
                if !self
                    .projection
                    .reach(&self.space, &x.map)
                    .contains(&(k - 1))
                {
                    return Ok(zero);
                }
                let before: i64 = inputs[..pos].iter().map(|a| a.degree()).sum();
                let s = sign(field, (x.degree() * before).rem_euclid(2) == 1);
                let rest: Vec<&Homogeneous> = inputs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != pos)
                    .map(|(_, a)| *a)
                    .collect();
                let m = nested(&self.space, self.window, self.projection, &x.map, &rest)?;
                Ok(Element::plain(m.scale(&s)))
            }
            2 if k == 2 => {
                let (x, y) = (inputs[0], inputs[1]);
                self.window.check(x.map.arity() + y.map.arity() - 1)?;
                let s = sign(field, (x.map.arity() - 1) % 2 == 1);
                Ok(Element::shifted(x.map.bracket(&y.map)?.scale(&s)))
            }
            _ => Ok(zero),
        }
    }

    fn to_rational(&self) -> Arc<dyn LInfinity> {
        let mut lifted = self.clone();
        lifted.delta = self.delta.lift();
        Arc::new(lifted)
    }
}

fn expand(
    field: Field,
    dim: usize,
    elems: &[&Element],
    f: impl Fn(&[&Homogeneous]) -> Result<Element, Error>,
) -> Result<Element, Error> {
    let comps: Vec<Vec<Homogeneous>> = elems.iter().map(|e| e.components()).collect();
    let mut acc = Element::zero(field, dim);
    if comps.iter().any(Vec::is_empty) {
        return Ok(acc);
    }
    let mut idx = vec![0; comps.len()];
    loop {
        let picked: Vec<&Homogeneous> = idx.iter().zip(&comps).map(|(&i, c)| &c[i]).collect();
        acc.add_assign(&f(&picked)?);
        let mut slot = comps.len();
        loop {
            if slot == 0 {
                return Ok(acc);
            }
            slot -= 1;
            idx[slot] += 1;
            if idx[slot] < comps[slot].len() {
                break;
            }
            idx[slot] = 0;
        }
    }
}

/// `l_k` extended multilinearly to arbitrary elements.
pub fn bracket_elements(l: &dyn LInfinity, elems: &[&Element]) -> Result<Element, Error> {
    if elems.is_empty() {
        return l.curvature();
    }
    expand(l.field(), l.space().total(), elems, |hs| l.bracket(hs))
}

/// The first `k` with no `1/k!` in the field, if `k ≤ top`.
fn missing_factorial(field: Field, top: usize) -> Option<usize> {
    (0..=top).find(|&k| field.inverse_factorial(k).is_none())
}

fn ensure_member(l: &dyn LInfinity, e: &Element) -> Result<(), Error> {
    for h in e.components() {
        if !l.contains(&h) {
            return Err(Error::NotInCarrier(format!(
                "{} map of arity {}",
                if h.shifted { "shifted" } else { "plain" },
                h.map.arity()
            )));
        }
    }
    Ok(())
}

fn residual_direct(l: &dyn LInfinity, alpha: &Element) -> Result<Element, Error> {
    let field = l.field();
    let mut acc = l.curvature()?;
    for k in 1..=l.top_arity() {
        let c = field.inverse_factorial(k).expect("checked by caller");
        let args = vec![alpha; k];
        acc.add_assign(&bracket_elements(l, &args)?.scale(&c));
    }
    Ok(acc)
}

/// `l_0 + Σ_k (1/k!) l_k(α, …, α)`.
pub fn mc_residual(l: &dyn LInfinity, alpha: &Element) -> Result<Element, Error> {
    ensure_member(l, alpha)?;
    if let Some(h) = alpha.components().iter().find(|h| h.degree() != 0) {
        return Err(Error::NotDegreeZero(h.degree()));
    }
    let field = l.field();
    match missing_factorial(field, l.top_arity()) {
        None => residual_direct(l, alpha),
        Some(k) => {
            let p = field.characteristic();
            let lifted = l.to_rational();
            let r = residual_direct(lifted.as_ref(), &alpha.lift())?;
            r.reduce(p).ok_or(Error::FactorialNotInvertible(k, p))
        }
    }
}

pub fn is_mc(l: &dyn LInfinity, alpha: &Element) -> Result<bool, Error> {
    Ok(mc_residual(l, alpha)?.is_zero())
}

/// `l^α_k(x…) = Σ_n (1/n!) l_{n+k}(α, …, α, x…)`.
#[derive(Clone)]
pub struct Twisted {
    base: Arc<dyn LInfinity>,
    alpha: Element,
    /// Rational lifts used when the field lacks some `1/n!`.
    formal: Option<(Arc<dyn LInfinity>, Element)>,
}

impl Twisted {
    /// No Maurer–Cartan check; see [`twist`].
    pub fn new(base: Arc<dyn LInfinity>, alpha: Element) -> Result<Twisted, Error> {
        ensure_member(base.as_ref(), &alpha)?;
        let formal = missing_factorial(base.field(), base.top_arity())
            .map(|_| (base.to_rational(), alpha.lift()));
        Ok(Twisted {
            base,
            alpha,
            formal,
        })
    }

    pub fn alpha(&self) -> &Element {
        &self.alpha
    }

    pub fn base(&self) -> &Arc<dyn LInfinity> {
        &self.base
    }

    fn raw(
        base: &dyn LInfinity,
        alpha: &Element,
        inputs: &[&Homogeneous],
    ) -> Result<Element, Error> {
        let field = base.field();
        let k = inputs.len();
        let mut acc = Element::zero(field, base.space().total());
        for n in 0..=base.top_arity().saturating_sub(k) {
            let c = field
                .inverse_factorial(n)
                .expect("rational or large characteristic");
            let mut elems: Vec<Element> = vec![alpha.clone(); n];
            elems.extend(inputs.iter().map(|h| Element::from_homogeneous(h)));
            let refs: Vec<&Element> = elems.iter().collect();
            acc.add_assign(&bracket_elements(base, &refs)?.scale(&c));
        }
        Ok(acc)
    }
}

impl LInfinity for Twisted {
    fn field(&self) -> Field {
        self.base.field()
    }

    fn space(&self) -> SplitSpace {
        self.base.space()
    }

    fn window(&self) -> DegreeWindow {
        self.base.window()
    }

    fn top_arity(&self) -> usize {
        self.base.top_arity()
    }

    fn curvature(&self) -> Result<Element, Error> {
        mc_residual(self.base.as_ref(), &self.alpha)
    }

    fn contains(&self, h: &Homogeneous) -> bool {
        self.base.contains(h)
    }

    fn bracket(&self, inputs: &[&Homogeneous]) -> Result<Element, Error> {
        match &self.formal {
            None => Twisted::raw(self.base.as_ref(), &self.alpha, inputs),
            Some((base_q, alpha_q)) => {
                let p = self.field().characteristic();
                let lifted: Vec<Homogeneous> = inputs
                    .iter()
                    .map(|h| Homogeneous {
                        shifted: h.shifted,
                        map: h.map.lift(),
                    })
                    .collect();
                let refs: Vec<&Homogeneous> = lifted.iter().collect();
                let r = Twisted::raw(base_q.as_ref(), alpha_q, &refs)?;
                let k = missing_factorial(self.field(), self.top_arity()).unwrap_or(0);
                r.reduce(p).ok_or(Error::FactorialNotInvertible(k, p))
            }
        }
    }

    fn to_rational(&self) -> Arc<dyn LInfinity> {
        Arc::new(
            Twisted::new(self.base.to_rational(), self.alpha.lift())
                .expect("lifted element stays in the carrier"),
        )
    }
}

/// Twists by a Maurer–Cartan element.
pub fn twist(base: Arc<dyn LInfinity>, alpha: Element) -> Result<Twisted, Error> {
    if !is_mc(base.as_ref(), &alpha)? {
        return Err(Error::NotMaurerCartan);
    }
    Twisted::new(base, alpha)
}

/// Koszul sign of the `(i, N−i)` unshuffle that puts `chosen` first.
fn shuffle_sign(degrees: &[i64], chosen: &[usize]) -> bool {
    let mut odd = false;
    for &c in chosen {
        for j in 0..c {
            if !chosen.contains(&j) && (degrees[c] * degrees[j]).rem_euclid(2) == 1 {
                odd = !odd;
            }
        }
    }
    odd
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    go(0, n, size, &mut cur, &mut out);
    out
}

/// `Σ_i Σ_σ ε(σ) l_{N−i+1}(l_i(x_σ(1), …, x_σ(i)), x_σ(i+1), …, x_σ(N))`,
/// which vanishes in a curved L∞-algebra.
pub fn jacobi_defect(l: &dyn LInfinity, xs: &[Homogeneous]) -> Result<Element, Error> {
    for x in xs {
        ensure_member(l, &Element::from_homogeneous(x))?;
    }
    let field = l.field();
    let n = xs.len();
    let degrees: Vec<i64> = xs.iter().map(Homogeneous::degree).collect();
    let mut acc = Element::zero(field, l.space().total());
    for i in 0..=n {
        if n - i + 1 > l.top_arity() || i > l.top_arity() {
            continue;
        }
        for chosen in subsets(n, i) {
            let inner_args: Vec<&Homogeneous> = chosen.iter().map(|&c| &xs[c]).collect();
            let inner = if i == 0 {
                l.curvature()?
            } else {
                l.bracket(&inner_args)?
            };
            if inner.is_zero() {
                continue;
            }
            let rest: Vec<Element> = (0..n)
                .filter(|j| !chosen.contains(j))
                .map(|j| Element::from_homogeneous(&xs[j]))
                .collect();
            let mut outer: Vec<&Element> = vec![&inner];
            outer.extend(rest.iter());
            let term = bracket_elements(l, &outer)?;
            let s = sign(field, shuffle_sign(&degrees, &chosen));
            acc.add_assign(&term.scale(&s));
        }
    }
    Ok(acc)
}

/// `l(…, x_{i+1}, x_i, …) − (−1)^{|x_i||x_{i+1}|} l(…, x_i, x_{i+1}, …)`.
pub fn symmetry_defect(l: &dyn LInfinity, xs: &[Homogeneous], i: usize) -> Result<Element, Error> {
    let refs: Vec<&Homogeneous> = xs.iter().collect();
    let mut swapped = refs.clone();
    swapped.swap(i, i + 1);
    let s = sign(
        l.field(),
        (xs[i].degree() * xs[i + 1].degree()).rem_euclid(2) == 1,
    );
    Ok(l.bracket(&swapped)?.sub(&l.bracket(&refs)?.scale(&s)))
}

/// `L` with `l_k` negated for one `k`. Used to confirm that the law checks
/// can fail.
#[derive(Clone)]
pub struct SignFlipped {
    inner: Arc<dyn LInfinity>,
    arity: usize,
}

impl SignFlipped {
    pub fn new(inner: Arc<dyn LInfinity>, arity: usize) -> SignFlipped {
        SignFlipped { inner, arity }
    }
}

impl LInfinity for SignFlipped {
    fn field(&self) -> Field {
        self.inner.field()
    }

    fn space(&self) -> SplitSpace {
        self.inner.space()
    }

    fn window(&self) -> DegreeWindow {
        self.inner.window()
    }

    fn top_arity(&self) -> usize {
        self.inner.top_arity()
    }

    fn curvature(&self) -> Result<Element, Error> {
        let c = self.inner.curvature()?;
        Ok(if self.arity == 0 {
            c.scale(&-self.field().one())
        } else {
            c
        })
    }

    fn contains(&self, h: &Homogeneous) -> bool {
        self.inner.contains(h)
    }

    fn bracket(&self, inputs: &[&Homogeneous]) -> Result<Element, Error> {
        let b = self.inner.bracket(inputs)?;
        Ok(if inputs.len() == self.arity {
            b.scale(&-self.field().one())
        } else {
            b
        })
    }

    fn to_rational(&self) -> Arc<dyn LInfinity> {
        Arc::new(SignFlipped {
            inner: self.inner.to_rational(),
            arity: self.arity,
        })
    }
}

// ------------------------------------------------------------ constructions

/// `D: A → B` as a carrier element.
pub fn strong_element(q: &QuasiTwilledAlgebra, d: &Matrix) -> Element {
    Element::plain(q.space().embed_linear(d, Side::A, Side::B))
}

/// `r: B → A` as a carrier element.
pub fn weak_element(q: &QuasiTwilledAlgebra, r: &Matrix) -> Element {
    Element::plain(q.space().embed_linear(r, Side::B, Side::A))
}

/// `(Ω[1], m)` for a plain carrier element `m`.
pub fn pair_element(q: &QuasiTwilledAlgebra, m: &Element) -> Element {
    Element::shifted(q.omega()).add(m)
}

/// `(𝔞, l_0 = θ, l_1 = [μ̂,·], l_2 = [[ν̂,·],·])`, whose MC elements are the strong maps.
pub fn controlling_strong(
    q: &QuasiTwilledAlgebra,
    window: DegreeWindow,
) -> Result<DerivedBrackets, Error> {
    DerivedBrackets::new(q.space(), q.omega(), Projection::A, window)
}

/// `(𝔟, [ν̂,·], [[μ̂,·],·], [[[θ̃,·],·],·])`, whose MC elements are the weak maps.
pub fn controlling_weak(
    q: &QuasiTwilledAlgebra,
    window: DegreeWindow,
) -> Result<DerivedBrackets, Error> {
    DerivedBrackets::new(q.space(), q.omega(), Projection::B, window)
}

pub fn governing_strong(
    q: &QuasiTwilledAlgebra,
    d: &Matrix,
    window: DegreeWindow,
) -> Result<Twisted, Error> {
    if !defmap::is_strong(q, d)? {
        return Err(Error::NotStrong);
    }
    twist(
        Arc::new(controlling_strong(q, window)?),
        strong_element(q, d),
    )
}

pub fn governing_weak(
    q: &QuasiTwilledAlgebra,
    r: &Matrix,
    window: DegreeWindow,
) -> Result<Twisted, Error> {
    if !defmap::is_weak(q, r)? {
        return Err(Error::NotWeak);
    }
    twist(Arc::new(controlling_weak(q, window)?), weak_element(q, r))
}

/// `𝒬[1] ⊕ 𝔞` over bare vector spaces.
pub fn simultaneous_strong(
    field: Field,
    space: SplitSpace,
    window: DegreeWindow,
) -> Result<Extended, Error> {
    Extended::new(
        space,
        MultiMap::zero(field, space.total(), 2),
        Projection::A,
        window,
    )
}

/// `𝒬[1] ⊕ 𝔟` over bare vector spaces.
pub fn simultaneous_weak(
    field: Field,
    space: SplitSpace,
    window: DegreeWindow,
) -> Result<Extended, Error> {
    Extended::new(
        space,
        MultiMap::zero(field, space.total(), 2),
        Projection::B,
        window,
    )
}

pub fn governing_pair_strong(
    q: &QuasiTwilledAlgebra,
    d: &Matrix,
    window: DegreeWindow,
) -> Result<Twisted, Error> {
    let base = simultaneous_strong(q.field(), q.space(), window)?;
    twist(Arc::new(base), pair_element(q, &strong_element(q, d)))
}

pub fn governing_pair_weak(
    q: &QuasiTwilledAlgebra,
    r: &Matrix,
    window: DegreeWindow,
) -> Result<Twisted, Error> {
    let base = simultaneous_weak(q.field(), q.space(), window)?;
    twist(Arc::new(base), pair_element(q, &weak_element(q, r)))
}

// ------------------------------------------------- literal specializations

/// `f` evaluated on basis vectors `t`, with slot `pos` replaced by `v`.
fn eval_at(f: &HomMap, t: &[usize], pos: usize, v: &[Scalar]) -> Vec<Scalar> {
    let field = f.field();
    let args: Vec<Vec<Scalar>> = t
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            if i == pos {
                v.to_vec()
            } else {
                unit_vector(field, f.input(), b)
            }
        })
        .collect();
    let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
    f.eval(&refs)
}

fn signed(field: Field, exp: usize) -> Scalar {
    sign(field, exp % 2 == 1)
}

/// The explicit curved L∞-algebra on `⊕ Hom(A^{⊗n+1}, A)` whose MC elements
/// are the modified associative r-matrices: `l_0 = μ`, only `l_2` besides.
///
/// Maps are carried as `A → B` blocks on the split space `A ⊕ A`, so that the
/// result can be compared with the controlling algebra of the box product.
#[derive(Clone, Debug)]
pub struct ModifiedRMatrix {
    algebra: Algebra,
    window: DegreeWindow,
}

impl ModifiedRMatrix {
    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.algebra.mul(x, y)
    }

    fn l2(&self, f: &HomMap, g: &HomMap) -> HomMap {
        let field = self.algebra.field();
        let d = self.algebra.dim();
        let (m, n) = (f.arity(), g.arity());
        HomMap::from_fn(field, d, d, m + n, |t| {
            let e = |i: usize| unit_vector(field, d, t[i]);
            let mut out = vec![field.zero(); d];
            let mut add =
                |c: Scalar, v: Vec<Scalar>| out = linalg::add(&out, &linalg::scale(&c, &v));
            // f with g(a_i…)·a_{i+n} or a_i·g(a_{i+1}…) inserted at slot i.
            for i in 0..m {
                let ga = self.mul(g.at(&t[i..i + n]), &e(i + n));
                let outer: Vec<usize> = t[..i].iter().chain(&t[i + n..]).copied().collect();
                add(signed(field, m + i * n), eval_at(f, &outer, i, &ga));
                let ag = self.mul(&e(i), g.at(&t[i + 1..i + 1 + n]));
                let outer: Vec<usize> = t[..i].iter().chain(&t[i + n..]).copied().collect();
                add(-signed(field, m + (i + 1) * n), eval_at(f, &outer, i, &ag));
            }
            let s = m * (n + 1);
            for i in 0..n {
                let fa = self.mul(f.at(&t[i..i + m]), &e(i + m));
                let outer: Vec<usize> = t[..i].iter().chain(&t[i + m..]).copied().collect();
                add(-signed(field, s + i * m), eval_at(g, &outer, i, &fa));
                let af = self.mul(&e(i), f.at(&t[i + 1..i + 1 + m]));
                let outer: Vec<usize> = t[..i].iter().chain(&t[i + m..]).copied().collect();
                add(signed(field, s + (i + 1) * m), eval_at(g, &outer, i, &af));
            }
            add(signed(field, s), self.mul(f.at(&t[..m]), g.at(&t[m..])));
            add(-signed(field, m), self.mul(g.at(&t[..n]), f.at(&t[n..])));
            out
        })
    }
}

pub fn modified_rmatrix_controlling(
    a: &Algebra,
    window: DegreeWindow,
) -> Result<ModifiedRMatrix, Error> {
    a.associativity().into_result("A")?;
    Ok(ModifiedRMatrix {
        algebra: a.clone(),
        window,
    })
}

impl LInfinity for ModifiedRMatrix {
    fn field(&self) -> Field {
        self.algebra.field()
    }

    fn space(&self) -> SplitSpace {
        SplitSpace::new(self.algebra.dim(), self.algebra.dim())
    }

    fn window(&self) -> DegreeWindow {
        self.window
    }

    fn top_arity(&self) -> usize {
        2
    }

    fn curvature(&self) -> Result<Element, Error> {
        Ok(Element::plain(self.space().hat(
            &self.algebra.mu,
            Side::A,
            Side::A,
            Side::B,
        )))
    }

    fn contains(&self, h: &Homogeneous) -> bool {
        !h.shifted && Projection::A.contains(&self.space(), &h.map)
    }

    fn bracket(&self, inputs: &[&Homogeneous]) -> Result<Element, Error> {
        let sp = self.space();
        if inputs.len() != 2 {
            return Ok(Element::zero(self.field(), sp.total()));
        }
        let (f, g) = (
            sp.restrict(&inputs[0].map, Side::A, Side::B),
            sp.restrict(&inputs[1].map, Side::A, Side::B),
        );
        self.window.check(f.arity() + g.arity())?;
        Ok(Element::plain(sp.embed(&self.l2(&f, &g), Side::A, Side::B)))
    }

    fn to_rational(&self) -> Arc<dyn LInfinity> {
        Arc::new(ModifiedRMatrix {
            algebra: Algebra::unchecked(self.algebra.mu.lift()),
            window: self.window,
        })
    }
}

/// The explicit L∞-algebra on `⊕ Hom(B^{⊗n+1}, A)` whose MC elements are the
/// deformation maps of a matched pair.
#[derive(Clone, Debug)]
pub struct MatchedPairWeak {
    q: QuasiTwilledAlgebra,
    window: DegreeWindow,
}

pub fn matched_pair_weak_controlling(
    mp: &MatchedPair,
    window: DegreeWindow,
) -> Result<MatchedPairWeak, Error> {
    Ok(MatchedPairWeak {
        q: mp.qta().clone(),
        window,
    })
}

impl MatchedPairWeak {
    fn l1(&self, f: &HomMap) -> HomMap {
        let q = &self.q;
        let field = q.field();
        let (da, db) = (q.dim_a(), q.dim_b());
        let m = f.arity();
        HomMap::from_fn(field, db, da, m + 1, |t| {
            let e = |i: usize| unit_vector(field, db, t[i]);
            let mut out = linalg::scale(&signed(field, m + 1), &q.rh(&e(0), f.at(&t[1..])));
            out = linalg::add(&out, &q.lh(f.at(&t[..m]), &e(m)));
            for i in 0..m {
                let xy = q.nu(&e(i), &e(i + 1));
                let outer: Vec<usize> = t[..i].iter().chain(&t[i + 1..]).copied().collect();
                out = linalg::add(
                    &out,
                    &linalg::scale(&signed(field, i + 1 + m + 1), &eval_at(f, &outer, i, &xy)),
                );
            }
            out
        })
    }

    fn l2(&self, f: &HomMap, g: &HomMap) -> HomMap {
        let q = &self.q;
        let field = q.field();
        let (da, db) = (q.dim_a(), q.dim_b());
        let (m, n) = (f.arity(), g.arity());
        HomMap::from_fn(field, db, da, m + n, |t| {
            let e = |i: usize| unit_vector(field, db, t[i]);
            let mut out = vec![field.zero(); da];
            let mut add =
                |c: Scalar, v: Vec<Scalar>| out = linalg::add(&out, &linalg::scale(&c, &v));
            for i in 0..m {
                let gx = q.tr(g.at(&t[i..i + n]), &e(i + n));
                let outer: Vec<usize> = t[..i].iter().chain(&t[i + n..]).copied().collect();
                add(signed(field, m + i * n), eval_at(f, &outer, i, &gx));
                let xg = q.tl(&e(i), g.at(&t[i + 1..i + 1 + n]));
                add(-signed(field, m + (i + 1) * n), eval_at(f, &outer, i, &xg));
            }
            let s = m * (n + 1);
            for i in 0..n {
                let fx = q.tr(f.at(&t[i..i + m]), &e(i + m));
                let outer: Vec<usize> = t[..i].iter().chain(&t[i + m..]).copied().collect();
                add(-signed(field, s + i * m), eval_at(g, &outer, i, &fx));
                let xf = q.tl(&e(i), f.at(&t[i + 1..i + 1 + m]));
                add(signed(field, s + (i + 1) * m), eval_at(g, &outer, i, &xf));
            }
            add(signed(field, s), q.mu(f.at(&t[..m]), g.at(&t[m..])));
            add(-signed(field, m), q.mu(g.at(&t[..n]), f.at(&t[n..])));
            out
        })
    }
}

impl LInfinity for MatchedPairWeak {
    fn field(&self) -> Field {
        self.q.field()
    }

    fn space(&self) -> SplitSpace {
        self.q.space()
    }

    fn window(&self) -> DegreeWindow {
        self.window
    }

    fn top_arity(&self) -> usize {
        2
    }

    fn curvature(&self) -> Result<Element, Error> {
        Ok(Element::zero(self.field(), self.space().total()))
    }

    fn contains(&self, h: &Homogeneous) -> bool {
        !h.shifted && Projection::B.contains(&self.space(), &h.map)
    }

    fn bracket(&self, inputs: &[&Homogeneous]) -> Result<Element, Error> {
        let sp = self.space();
        let r = |h: &Homogeneous| sp.restrict(&h.map, Side::B, Side::A);
        match inputs {
            [f] => {
                let f = r(f);
                self.window.check(f.arity() + 1)?;
                Ok(Element::plain(sp.embed(&self.l1(&f), Side::B, Side::A)))
            }
            [f, g] => {
                let (f, g) = (r(f), r(g));
                self.window.check(f.arity() + g.arity())?;
                Ok(Element::plain(sp.embed(&self.l2(&f, &g), Side::B, Side::A)))
            }
            _ => Ok(Element::zero(self.field(), sp.total())),
        }
    }

    fn to_rational(&self) -> Arc<dyn LInfinity> {
        Arc::new(MatchedPairWeak {
            q: self.q.lift(),
            window: self.window,
        })
    }
}


// ---------------------------------------------------------- pair exhaustion

/// One candidate `(Ω′, m′)` around a fixed `(Ω, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCase {
    /// `Ω′`, an arity-2 element of `𝒬`.
    pub omega: MultiMap,
    /// `D′` (as `B × A`) or `r′` (as `A × B`).
    pub map: Matrix,
    /// `(Ω′[1], m′)` is Maurer–Cartan in the governing algebra of the pair.
    pub mc: bool,
    /// `Ω + Ω′` is quasi-twilled and `m + m′` is a strong (weak) map for it.
    pub direct: bool,
}

/// Every `(Ω′, m′)` over a prime field, compared against direct validation.
/// `base` is `D` for [`Projection::A`] and `r` for [`Projection::B`].
pub fn exhaust_pairs(
    q: &QuasiTwilledAlgebra,
    projection: Projection,
    base: &Matrix,
    window: DegreeWindow,
    budget: u128,
) -> Result<Vec<PairCase>, Error> {
    use rayon::prelude::*;

    let field = q.field();
    if field.characteristic() == 0 {
        return Err(Error::InvalidField("exhaustion needs a prime field".into()));
    }
    let space = q.space();
    let (from, to) = match projection {
        Projection::A => (Side::A, Side::B),
        Projection::B => (Side::B, Side::A),
    };
    let (rows, cols) = (space.dim(to), space.dim(from));
    let slots = crate::qta::Complex::QuasiTwilled.basis(&space, 2);
    let coords = slots.len() + rows * cols;
    let p = field.characteristic() as u128;
    let size = p.checked_pow(coords as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let governing = match projection {
        Projection::A => governing_pair_strong(q, base, window)?,
        Projection::B => governing_pair_weak(q, base, window)?,
    };
    let omega = q.omega();
    (0..size)
        .into_par_iter()
        .map(|mut code| {
            let mut digit = || {
                let d = field.from_i64((code % p) as i64);
                code /= p;
                d
            };
            let mut delta = MultiMap::zero(field, space.total(), 2);
            for &s in &slots {
                *delta.coeff_mut(s) = digit();
            }
            let map = Matrix::from_fn(field, rows, cols, |_, _| digit());
            let element = Element::shifted(delta.clone())
                .add(&Element::plain(space.embed_linear(&map, from, to)));
            let mc = is_mc(&governing, &element)?;
            let deformed = QuasiTwilledAlgebra::from_product(field, space, &omega.add(&delta))?;
            let total = base.add(&map);
            let direct = deformed.validate_axioms().passed()
                && match projection {
                    Projection::A => defmap::is_strong(&deformed, &total)?,
                    Projection::B => defmap::is_weak(&deformed, &total)?,
                };
            Ok(PairCase {
                omega: delta,
                map,
                mc,
                direct,
            })
        })
        .collect()
}
