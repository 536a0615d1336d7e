mod common;

use common::*;
use proptest::prelude::*;
use qta_core::linalg::unit_vector;
use qta_core::multilinear::{decode, encode, MultiMap};
use qta_core::{Error, Field, Scalar};

fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Q.one()
    } else {
        -Q.one()
    }
}

fn table(field: Field, dim: usize, entries: &[(usize, usize, usize, i64)]) -> MultiMap {
    let mut m = MultiMap::zero(field, dim, 2);
    for &(i, j, k, c) in entries {
        m.set(&[i, j], k, field.from_i64(c));
    }
    m
}

#[test]
fn row_major_tuple_order() {
    assert_eq!(encode(3, &[0, 0, 1]), 1);
    assert_eq!(encode(3, &[1, 0, 0]), 9);
    assert_eq!(decode(3, 3, 9), vec![1, 0, 0]);
    let m = MultiMap::from_fn(Q, 2, 2, |t| vec![Q.from_i64(encode(2, t) as i64), Q.zero()]);
    assert_eq!(m.at(&[1, 0])[0], Q.from_i64(2));
}

#[test]
fn circle_of_linear_maps_is_composition() {
    let mut r = rng(1);
    for _ in 0..20 {
        let f = random_multimap(Q, 3, 1, &mut r);
        let g = random_multimap(Q, 3, 1, &mut r);
        let fg = f.circle(&g).unwrap();
        for i in 0..3 {
            let e = unit_vector(Q, 3, i);
            assert_eq!(fg.eval(&[&e]), f.eval(&[&g.eval(&[&e])]));
        }
    }
}

#[test]
fn circle_with_identity_scales_by_arity() {
    let mut r = rng(2);
    let id = MultiMap::identity(Q, 1);
    for arity in 1..=3 {
        let f = random_multimap(Q, 1, arity, &mut r);
        assert_eq!(f.circle(&id).unwrap(), f.scale(&Q.from_i64(arity as i64)));
        assert_eq!(id.circle(&f).unwrap(), f);
    }
}

#[test]
fn bracket_with_identity() {
    // [id, g] = (1 − n)·g; only linear g commute with id.
    let mut r = rng(3);
    for dim in 1..=2 {
        let id = MultiMap::identity(Q, dim);
        for n in 1..=3 {
            let g = random_multimap(Q, dim, n, &mut r);
            let expected = g.scale(&Q.from_i64(1 - n as i64));
            assert_eq!(id.bracket(&g).unwrap(), expected);
            if n == 1 {
                assert!(id.bracket(&g).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn self_bracket_is_twice_the_associator() {
    let mut r = rng(4);
    for _ in 0..10 {
        let m = random_multimap(Q, 2, 2, &mut r);
        let mm = m.bracket(&m).unwrap();
        assert_eq!(mm, m.square().scale(&Q.from_i64(2)));
        for t in 0..8 {
            let tuple = decode(2, 3, t);
            let [a, b, c] = [0, 1, 2].map(|i| unit_vector(Q, 2, tuple[i]));
            let left = m.eval(&[&m.eval(&[&a, &b]), &c]);
            let right = m.eval(&[&a, &m.eval(&[&b, &c])]);
            let expected: Vec<Scalar> = left
                .iter()
                .zip(&right)
                .map(|(x, y)| &Q.from_i64(2) * &(x - y))
                .collect();
            assert_eq!(mm.at(&tuple), &expected[..]);
        }
    }
}

#[test]
fn associativity_examples() {
    let k1 = table(Q, 1, &[(0, 0, 0, 1)]);
    assert!(k1.is_associative().unwrap());
    // 1 = e0, ε = e1
    let d2 = table(Q, 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]);
    assert!(d2.is_associative().unwrap());
    let bad = table(Q, 2, &[(0, 0, 1, 1), (1, 0, 0, 1)]);
    assert!(!bad.is_associative().unwrap());
    assert!(!bad.associator_vanishes());
    let e0 = unit_vector(Q, 2, 0);
    assert_ne!(
        bad.eval(&[&bad.eval(&[&e0, &e0]), &e0]),
        bad.eval(&[&e0, &bad.eval(&[&e0, &e0])])
    );
    assert!(matches!(
        MultiMap::identity(Q, 2).is_associative(),
        Err(Error::Dimension(_))
    ));
}

#[test]
fn associativity_exhaustive_over_f2_dim1() {
    let f2 = Field::prime(2).unwrap();
    for c in f2.elements() {
        let m = MultiMap::from_coeffs(f2, 1, 2, vec![c.clone()]).unwrap();
        assert_eq!(m.is_associative().unwrap(), m.associator_vanishes());
        assert!(m.associator_vanishes());
    }
    // every bilinear map on F₂² as well
    for code in 0..256u32 {
        let m = MultiMap::from_fn(f2, 2, 2, |t| {
            (0..2)
                .map(|o| f2.from_i64(((code >> (2 * encode(2, t) + o)) & 1) as i64))
                .collect()
        });
        assert_eq!(
            m.is_associative().unwrap(),
            m.associator_vanishes(),
            "{code}"
        );
    }
}

#[test]
fn constants_insert_with_signs() {
    let m = table(Q, 2, &[(0, 1, 0, 1), (1, 0, 1, 1)]);
    let c = MultiMap::constant(Q, vec![Q.from_i64(1), Q.from_i64(2)]);
    let mc = m.circle(&c).unwrap();
    assert_eq!(mc.arity(), 1);
    // slot 1 gets +, slot 2 gets (−1)^{1·(0−1)} = −
    for i in 0..2 {
        let x = unit_vector(Q, 2, i);
        let expected: Vec<Scalar> = m
            .eval(&[c.coeffs(), &x])
            .iter()
            .zip(m.eval(&[&x, c.coeffs()]))
            .map(|(a, b)| a - &b)
            .collect();
        assert_eq!(mc.eval(&[&x]), expected);
    }
    assert!(c.circle(&m).unwrap().is_zero());
    assert!(c.circle(&c).is_err());
    assert!(m.circle(&MultiMap::identity(Q, 3)).is_err());
}

fn graded(f: &MultiMap) -> i64 {
    f.arity() as i64 - 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_antisymmetry(seed in any::<u64>(), dim in 1usize..=3, m in 1usize..=3, n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_multimap(Q, dim, m, &mut r);
        let g = random_multimap(Q, dim, n, &mut r);
        let fg = f.bracket(&g).unwrap();
        let gf = g.bracket(&f).unwrap();
        prop_assert_eq!(fg.degree(), f.degree() + g.degree());
        prop_assert_eq!(fg, gf.scale(&-sign(graded(&f) * graded(&g))));
    }

    #[test]
    fn graded_jacobi(seed in any::<u64>(), dim in 1usize..=2, a in 1usize..=3, b in 1usize..=3, c in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_multimap(Q, dim, a, &mut r);
        let g = random_multimap(Q, dim, b, &mut r);
        let h = random_multimap(Q, dim, c, &mut r);
        let (df, dg, dh) = (graded(&f), graded(&g), graded(&h));
        let t1 = f.bracket(&g).unwrap().bracket(&h).unwrap().scale(&sign(df * dh));
        let t2 = g.bracket(&h).unwrap().bracket(&f).unwrap().scale(&sign(dg * df));
        let t3 = h.bracket(&f).unwrap().bracket(&g).unwrap().scale(&sign(dh * dg));
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn bracket_square_detects_associativity(seed in any::<u64>(), dim in 1usize..=3, sparse in any::<bool>()) {
        let mut r = rng(seed);
        let mut m = random_multimap(Q, dim, 2, &mut r);
        if sparse {
            // sparse tensors are associative far more often
            use rand::Rng;
            for c in 0..m.coeffs().len() {
                if r.gen_bool(0.8) {
                    *m.coeff_mut(c) = Q.zero();
                }
            }
        }
        prop_assert_eq!(m.bracket(&m).unwrap().is_zero(), m.associator_vanishes());
        prop_assert_eq!(m.is_associative().unwrap(), m.associator_vanishes());
    }

    #[test]
    fn linear_algebra_of_tensors(seed in any::<u64>(), dim in 1usize..=3, arity in 0usize..=3) {
        let mut r = rng(seed);
        let f = random_multimap(Q, dim, arity, &mut r);
        let g = random_multimap(Q, dim, arity, &mut r);
        prop_assert_eq!(f.add(&g).sub(&g), f.clone());
        prop_assert!(f.add(&f.neg()).is_zero());
        let f7 = f.reduce(7).unwrap();
        prop_assert_eq!(f7.lift().reduce(7).unwrap(), f7);
    }
}
