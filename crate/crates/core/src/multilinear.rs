//! Dense multilinear maps and the Gerstenhaber bracket.
//!
//! A [`MultiMap`] of arity `n` on a space `V` of dimension `d` stores, for each
//! basis tuple `(i_1, …, i_n)` in row-major order, the `d` output coordinates.
//! Its graded degree is `n − 1`, so arity-0 maps (vectors) sit in degree −1.

use crate::{Error, Field, Scalar};

pub(crate) fn pow(base: usize, exp: usize) -> usize {
    base.checked_pow(exp as u32).expect("tensor too large")
}

/// Row-major index of a basis tuple.
pub fn encode(dim: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * dim + i)
}

/// Inverse of [`encode`].
pub fn decode(dim: usize, arity: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = index % dim;
        index /= dim;
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiMap {
    field: Field,
    dim: usize,
    arity: usize,
    coeffs: Vec<Scalar>,
}

impl MultiMap {
    pub fn zero(field: Field, dim: usize, arity: usize) -> MultiMap {
        MultiMap {
            field,
            dim,
            arity,
            coeffs: vec![field.zero(); pow(dim, arity) * dim],
        }
    }

    pub fn from_coeffs(
        field: Field,
        dim: usize,
        arity: usize,
        coeffs: Vec<Scalar>,
    ) -> Result<MultiMap, Error> {
        if coeffs.len() != pow(dim, arity) * dim {
            return Err(Error::Dimension(format!(
                "arity-{arity} map on dimension {dim} needs {} coefficients, got {}",
                pow(dim, arity) * dim,
                coeffs.len()
            )));
        }
        Ok(MultiMap {
            field,
            dim,
            arity,
            coeffs,
        })
    }

    /// Builds a map from its values on basis tuples.
    pub fn from_fn(
        field: Field,
        dim: usize,
        arity: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Scalar>,
    ) -> MultiMap {
        let mut coeffs = Vec::with_capacity(pow(dim, arity) * dim);
        for t in 0..pow(dim, arity) {
            let out = f(&decode(dim, arity, t));
            assert_eq!(out.len(), dim, "output length");
            coeffs.extend(out);
        }
        MultiMap {
            field,
            dim,
            arity,
            coeffs,
        }
    }

    pub fn identity(field: Field, dim: usize) -> MultiMap {
        MultiMap::from_fn(field, dim, 1, |t| {
            crate::linalg::unit_vector(field, dim, t[0])
        })
    }

    /// The arity-0 map with value `v`.
    pub fn constant(field: Field, v: Vec<Scalar>) -> MultiMap {
        MultiMap {
            field,
            dim: v.len(),
            arity: 0,
            coeffs: v,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn tuple_count(&self) -> usize {
        pow(self.dim, self.arity)
    }

    /// Output coordinates on the basis tuple with row-major index `t`.
    pub fn value(&self, t: usize) -> &[Scalar] {
        &self.coeffs[t * self.dim..(t + 1) * self.dim]
    }

    pub fn at(&self, tuple: &[usize]) -> &[Scalar] {
        debug_assert_eq!(tuple.len(), self.arity);
        self.value(encode(self.dim, tuple))
    }

    pub fn get(&self, tuple: &[usize], out: usize) -> &Scalar {
        &self.at(tuple)[out]
    }

    pub fn set(&mut self, tuple: &[usize], out: usize, v: Scalar) {
        let i = encode(self.dim, tuple) * self.dim + out;
        self.coeffs[i] = v;
    }

    pub fn coeff_mut(&mut self, flat: usize) -> &mut Scalar {
        &mut self.coeffs[flat]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Evaluates on arbitrary vectors by multilinear expansion.
    pub fn eval(&self, args: &[&[Scalar]]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.arity, "argument count");
        let mut out = vec![self.field.zero(); self.dim];
        let mut tuple = vec![0; self.arity];
        self.eval_rec(args, 0, &self.field.one(), &mut tuple, &mut out);
        out
    }

    fn eval_rec(
        &self,
        args: &[&[Scalar]],
        slot: usize,
        weight: &Scalar,
        tuple: &mut Vec<usize>,
        out: &mut [Scalar],
    ) {
        if slot == self.arity {
            for (o, c) in out.iter_mut().zip(self.at(tuple)) {
                o.add_mul(weight, c);
            }
            return;
        }
        for (i, x) in args[slot].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            tuple[slot] = i;
            self.eval_rec(args, slot + 1, &(weight * x), tuple, out);
        }
    }

    fn check_same(&self, other: &MultiMap) -> Result<(), Error> {
        if self.dim != other.dim || self.field != other.field {
            return Err(Error::Dimension(format!(
                "maps on dimension {} over {} and {} over {}",
                self.dim, self.field, other.dim, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiMap) -> MultiMap {
        assert_eq!(
            (self.dim, self.arity),
            (other.dim, other.arity),
            "shape mismatch in add"
        );
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        self.with_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &MultiMap) -> MultiMap {
        assert_eq!(
            (self.dim, self.arity),
            (other.dim, other.arity),
            "shape mismatch in sub"
        );
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        self.with_coeffs(self.field, coeffs)
    }

    pub fn add_assign(&mut self, other: &MultiMap) {
        assert_eq!(
            (self.dim, self.arity),
            (other.dim, other.arity),
            "shape mismatch in add"
        );
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiMap {
        self.with_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> MultiMap {
        self.with_coeffs(self.field, self.coeffs.iter().map(|a| -a).collect())
    }

    fn with_coeffs(&self, field: Field, coeffs: Vec<Scalar>) -> MultiMap {
        MultiMap {
            field,
            dim: self.dim,
            arity: self.arity,
            coeffs,
        }
    }

    /// The map with every coefficient replaced by its integer lift.
    pub fn lift(&self) -> MultiMap {
        self.with_coeffs(
            Field::Rational,
            self.coeffs.iter().map(Scalar::lift).collect(),
        )
    }

    /// Reduction mod `p`; `None` if some denominator is divisible by `p`.
    pub fn reduce(&self, p: u64) -> Option<MultiMap> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce(p))
            .collect::<Option<Vec<_>>>()?;
        Some(self.with_coeffs(Field::Prime(p), coeffs))
    }

    /// The circle product `f ⋄ g`: insert `g` into each slot of `f` with sign
    /// `(−1)^{(i−1)(n−1)}`, where `n` is the arity of `g`.
    ///
    /// A constant `f` gives zero. Two constants have no product of sensible
    /// arity and are rejected.
    pub fn circle(&self, g: &MultiMap) -> Result<MultiMap, Error> {
        self.check_same(g)?;
        let (m, n, d) = (self.arity, g.arity, self.dim);
        if m + n == 0 {
            return Err(Error::Dimension("circle product of two constants".into()));
        }
        let r = m + n - 1;
        let mut res = MultiMap::zero(self.field, d, r);
        if m == 0 || self.is_zero() || g.is_zero() {
            return Ok(res);
        }
        let plus = self.field.one();
        let minus = -&plus;
        for i in 0..m {
            let s = if i * (n + 1) % 2 == 0 { &plus } else { &minus };
            let suffix = pow(d, m - i - 1);
            let prefix = pow(d, i);
            let gn = pow(d, n);
            for gi in 0..gn {
                let gv = g.value(gi);
                for (k, gk) in gv.iter().enumerate() {
                    if gk.is_zero() {
                        continue;
                    }
                    let w = s * gk;
                    for p in 0..prefix {
                        for q in 0..suffix {
                            let fi = (p * d + k) * suffix + q;
                            let fv = self.value(fi);
                            if fv.iter().all(Scalar::is_zero) {
                                continue;
                            }
                            let t = (p * gn + gi) * suffix + q;
                            for (o, c) in res.coeffs[t * d..(t + 1) * d].iter_mut().zip(fv) {
                                o.add_mul(&w, c);
                            }
                        }
                    }
                }
            }
        }
        Ok(res)
    }

    /// The Gerstenhaber bracket `[f,g] = f⋄g − (−1)^{|f||g|} g⋄f`.
    pub fn bracket(&self, g: &MultiMap) -> Result<MultiMap, Error> {
        let fg = self.circle(g)?;
        let gf = g.circle(self)?;
        if (self.degree() * g.degree()).rem_euclid(2) == 1 {
            Ok(fg.add(&gf))
        } else {
            Ok(fg.sub(&gf))
        }
    }

    /// `f ⋄ f`, which is `½[f,f]` for odd `|f|` and makes sense in every
    /// characteristic, including 2.
    pub fn square(&self) -> MultiMap {
        self.circle(self).expect("same space")
    }

    /// Associativity as a Maurer–Cartan condition: `m ⋄ m = 0`.
    pub fn is_associative(&self) -> Result<bool, Error> {
        if self.arity != 2 {
            return Err(Error::Dimension(format!(
                "associativity needs arity 2, got {}",
                self.arity
            )));
        }
        Ok(self.square().is_zero())
    }

    /// Pointwise associator check on all basis triples.
    pub fn associator_vanishes(&self) -> bool {
        assert_eq!(self.arity, 2);
        let d = self.dim;
        let basis: Vec<Vec<Scalar>> = (0..d)
            .map(|i| crate::linalg::unit_vector(self.field, d, i))
            .collect();
        for a in &basis {
            for b in &basis {
                let ab = self.eval(&[a, b]);
                for c in &basis {
                    let bc = self.eval(&[b, c]);
                    if self.eval(&[&ab, c]) != self.eval(&[a, &bc]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A bilinear map `X × Y → Z` between possibly different spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bilinear {
    field: Field,
    left: usize,
    right: usize,
    out: usize,
    coeffs: Vec<Scalar>,
}

impl Bilinear {
    pub fn zero(field: Field, left: usize, right: usize, out: usize) -> Bilinear {
        Bilinear {
            field,
            left,
            right,
            out,
            coeffs: vec![field.zero(); left * right * out],
        }
    }

    pub fn from_coeffs(
        field: Field,
        left: usize,
        right: usize,
        out: usize,
        coeffs: Vec<Scalar>,
    ) -> Result<Bilinear, Error> {
        if coeffs.len() != left * right * out {
            return Err(Error::Dimension(format!(
                "bilinear map {left}x{right}->{out} needs {} coefficients, got {}",
                left * right * out,
                coeffs.len()
            )));
        }
        Ok(Bilinear {
            field,
            left,
            right,
            out,
            coeffs,
        })
    }

    pub fn from_i64(
        field: Field,
        left: usize,
        right: usize,
        out: usize,
        coeffs: &[i64],
    ) -> Bilinear {
        let c = coeffs.iter().map(|&x| field.from_i64(x)).collect();
        Bilinear::from_coeffs(field, left, right, out, c).expect("literal shape")
    }

    pub fn from_fn(
        field: Field,
        left: usize,
        right: usize,
        out: usize,
        mut f: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Bilinear {
        let mut coeffs = Vec::with_capacity(left * right * out);
        for i in 0..left {
            for j in 0..right {
                let v = f(i, j);
                assert_eq!(v.len(), out, "output length");
                coeffs.extend(v);
            }
        }
        Bilinear {
            field,
            left,
            right,
            out,
            coeffs,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn value(&self, i: usize, j: usize) -> &[Scalar] {
        let s = (i * self.right + j) * self.out;
        &self.coeffs[s..s + self.out]
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.value(i, j)[k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.coeffs[(i * self.right + j) * self.out + k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(
            (x.len(), y.len()),
            (self.left, self.right),
            "argument lengths"
        );
        let mut out = vec![self.field.zero(); self.out];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (o, c) in out.iter_mut().zip(self.value(i, j)) {
                    o.add_mul(&w, c);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Bilinear) -> Bilinear {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Bilinear {
            coeffs,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> Bilinear {
        Bilinear {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn lift(&self) -> Bilinear {
        Bilinear {
            field: Field::Rational,
            coeffs: self.coeffs.iter().map(Scalar::lift).collect(),
            ..self.clone()
        }
    }

    pub fn reduce(&self, p: u64) -> Option<Bilinear> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce(p))
            .collect::<Option<Vec<_>>>()?;
        Some(Bilinear {
            field: Field::Prime(p),
            coeffs,
            ..self.clone()
        })
    }

    /// The same map viewed as an arity-2 [`MultiMap`] (requires `X = Y = Z`).
    pub fn to_multimap(&self) -> MultiMap {
        assert!(
            self.left == self.right && self.right == self.out,
            "not an endo-bilinear map"
        );
        MultiMap {
            field: self.field,
            dim: self.out,
            arity: 2,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn from_multimap(m: &MultiMap) -> Bilinear {
        assert_eq!(m.arity, 2);
        Bilinear {
            field: m.field,
            left: m.dim,
            right: m.dim,
            out: m.dim,
            coeffs: m.coeffs.clone(),
        }
    }
}

/// A multilinear map `X^{⊗n} → Y`; the cochains of the deformation-map
/// cohomologies live here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomMap {
    field: Field,
    input: usize,
    output: usize,
    arity: usize,
    coeffs: Vec<Scalar>,
}

impl HomMap {
    pub fn zero(field: Field, input: usize, output: usize, arity: usize) -> HomMap {
        HomMap {
            field,
            input,
            output,
            arity,
            coeffs: vec![field.zero(); pow(input, arity) * output],
        }
    }

    pub fn from_coeffs(
        field: Field,
        input: usize,
        output: usize,
        arity: usize,
        coeffs: Vec<Scalar>,
    ) -> Result<HomMap, Error> {
        if coeffs.len() != pow(input, arity) * output {
            return Err(Error::Dimension("cochain coefficient count".into()));
        }
        Ok(HomMap {
            field,
            input,
            output,
            arity,
            coeffs,
        })
    }

    pub fn from_fn(
        field: Field,
        input: usize,
        output: usize,
        arity: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Scalar>,
    ) -> HomMap {
        let mut coeffs = Vec::with_capacity(pow(input, arity) * output);
        for t in 0..pow(input, arity) {
            let v = f(&decode(input, arity, t));
            assert_eq!(v.len(), output, "output length");
            coeffs.extend(v);
        }
        HomMap {
            field,
            input,
            output,
            arity,
            coeffs,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn input(&self) -> usize {
        self.input
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn at(&self, tuple: &[usize]) -> &[Scalar] {
        let t = encode(self.input, tuple);
        &self.coeffs[t * self.output..(t + 1) * self.output]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Evaluates on arbitrary vectors by multilinear expansion.
    pub fn eval(&self, args: &[&[Scalar]]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.arity, "argument count");
        let mut out = vec![self.field.zero(); self.output];
        for t in 0..pow(self.input, self.arity) {
            let tuple = decode(self.input, self.arity, t);
            let mut w = self.field.one();
            for (slot, &i) in tuple.iter().enumerate() {
                if args[slot][i].is_zero() {
                    w = self.field.zero();
                    break;
                }
                w = w * &args[slot][i];
            }
            if w.is_zero() {
                continue;
            }
            for (o, c) in out
                .iter_mut()
                .zip(&self.coeffs[t * self.output..(t + 1) * self.output])
            {
                o.add_mul(&w, c);
            }
        }
        out
    }

    pub fn add(&self, other: &HomMap) -> HomMap {
        assert_eq!(
            (self.input, self.output, self.arity),
            (other.input, other.output, other.arity)
        );
        HomMap {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> HomMap {
        HomMap {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }
}
