mod common;

use common::*;
use proptest::prelude::*;
use qta_core::bigraded::{Bidegree, Side, SplitSpace, StructureMaps, Subalgebra};
use qta_core::linalg::unit_vector;
use qta_core::multilinear::{decode, Bilinear, MultiMap};
use qta_core::qta::{factories, Algebra};
use qta_core::Scalar;
use rand::Rng;

fn bd(k: i64, l: i64) -> Bidegree {
    Bidegree::new(k, l)
}

/// `(a, x)` as a vector of `A ⊕ B`.
fn pair(space: SplitSpace, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len() + x.len(), space.total());
    a.iter().chain(x).cloned().collect()
}

/// A random map concentrated in one bidegree.
fn homogeneous(space: SplitSpace, arity: usize, d: Bidegree, rng: &mut impl Rng) -> MultiMap {
    space.project(&random_multimap(Q, space.total(), arity, rng), d)
}

#[test]
fn classify_examples() {
    let s = SplitSpace::new(2, 1);
    let d2 = Algebra::dual_numbers(Q);
    let mut maps = StructureMaps::zero(Q, s);
    maps.mu = d2.mu.clone();
    let (theta, mu, nu) = s.hat_components(&maps).unwrap();
    assert_eq!(s.classify(&mu).unwrap(), Some(bd(1, 0)));
    assert!(theta.is_zero() && nu.is_zero());
    assert_eq!(s.classify(&theta).unwrap(), None);

    maps.theta = Bilinear::from_fn(Q, 2, 2, 1, |i, j| vec![Q.from_i64((i + j) as i64 + 1)]);
    maps.nu = Bilinear::from_fn(Q, 1, 1, 1, |_, _| vec![Q.one()]);
    let (theta, mu, nu) = s.hat_components(&maps).unwrap();
    assert_eq!(s.classify(&theta).unwrap(), Some(bd(2, -1)));
    assert_eq!(s.classify(&nu).unwrap(), Some(bd(0, 1)));
    assert_eq!(s.classify(&mu.add(&nu)).unwrap(), None);
    assert!(s.classify(&MultiMap::zero(Q, 2, 2)).is_err());
}

#[test]
fn bidegrees_of_coordinates() {
    let s = SplitSpace::new(1, 1);
    // a ∈ A is index 0, x ∈ B is index 1
    assert_eq!(s.bidegree_of(&[0, 0], 0), bd(1, 0));
    assert_eq!(s.bidegree_of(&[0, 0], 1), bd(2, -1));
    assert_eq!(s.bidegree_of(&[1, 1], 0), bd(-1, 2));
    assert_eq!(s.bidegree_of(&[0, 1], 1), bd(1, 0));
    assert_eq!(s.bidegree_of(&[], 1), bd(0, -1));
    assert_eq!(
        s.bidegrees(2),
        vec![bd(2, -1), bd(1, 0), bd(0, 1), bd(-1, 2)]
    );
}

#[test]
fn projections_of_homogeneous_maps() {
    let s = SplitSpace::new(1, 2);
    let mut r = rng(11);
    for arity in 1..=3 {
        for d in s.bidegrees(arity) {
            let f = homogeneous(s, arity, d, &mut r);
            assert_eq!(s.project(&f, d), f);
            for e in s.bidegrees(arity) {
                if e != d {
                    assert!(s.project(&f, e).is_zero());
                }
            }
        }
    }
}

#[test]
fn hat_components_of_the_direct_product() {
    let d2 = Algebra::dual_numbers(Q);
    let k1 = Algebra::k1(Q);
    let q = factories::direct_product(&d2, &k1).unwrap();
    let s = q.space();
    let (theta, mu, nu) = s.hat_components(q.maps()).unwrap();
    assert!(theta.is_zero());
    let mut r = rng(12);
    for _ in 0..10 {
        let (a, b) = (
            random_multimap(Q, 2, 0, &mut r).coeffs().to_vec(),
            random_multimap(Q, 2, 0, &mut r).coeffs().to_vec(),
        );
        let (x, y) = (vec![small(Q, &mut r)], vec![small(Q, &mut r)]);
        let (u, v) = (pair(s, &a, &x), pair(s, &b, &y));
        assert_eq!(mu.eval(&[&u, &v]), pair(s, &d2.mul(&a, &b), &[Q.zero()]));
        assert_eq!(
            nu.eval(&[&u, &v]),
            pair(s, &[Q.zero(), Q.zero()], &k1.mul(&x, &y))
        );
    }
}

#[test]
fn hat_components_of_the_box_product() {
    let d2 = Algebra::dual_numbers(Q);
    let q = factories::box_product(&d2).unwrap();
    let s = q.space();
    let (theta, _, nu) = s.hat_components(q.maps()).unwrap();
    let mut r = rng(13);
    let mut v2 = || vec![small(Q, &mut r), small(Q, &mut r)];
    for _ in 0..10 {
        let (a, a2, b, b2) = (v2(), v2(), v2(), v2());
        let first: Vec<Scalar> = d2
            .mul(&a, &b2)
            .iter()
            .zip(d2.mul(&a2, &b))
            .map(|(p, q)| p + &q)
            .collect();
        assert_eq!(
            nu.eval(&[&pair(s, &a, &a2), &pair(s, &b, &b2)]),
            pair(s, &first, &d2.mul(&a2, &b2))
        );
        assert_eq!(
            theta.eval(&[&pair(s, &a, &a2), &pair(s, &b, &b2)]),
            pair(s, &[Q.zero(), Q.zero()], &d2.mul(&a, &b))
        );
    }
}

#[test]
fn subalgebra_membership() {
    let s = SplitSpace::new(1, 1);
    let q = nonabelian(&Algebra::k1(Q));
    let (theta, mu, nu) = q.hats();
    assert!(s.in_subalgebra(&theta, Subalgebra::Q));
    assert!(!s.in_subalgebra(&theta, Subalgebra::M));
    assert!(!s.in_subalgebra(&theta, Subalgebra::R));
    for m in [&mu, &nu] {
        for w in [Subalgebra::Q, Subalgebra::M, Subalgebra::R] {
            assert!(s.in_subalgebra(m, w));
        }
    }
    let mut r = rng(14);
    let bottom = homogeneous(s, 2, bd(-1, 2), &mut r);
    assert!(!bottom.is_zero());
    assert!(s.in_subalgebra(&bottom, Subalgebra::R));
    assert!(!s.in_subalgebra(&bottom, Subalgebra::Q));
    assert!(!s.in_subalgebra(&bottom, Subalgebra::M));
}

#[test]
fn pure_projections() {
    let a = Algebra::dual_numbers(Q);
    let q = nonabelian(&a);
    let s = q.space();
    let (theta, mu, nu) = q.hats();
    assert_eq!(
        s.restrict(&s.p_a(&theta), Side::A, Side::B).coeffs(),
        q.maps().theta.coeffs()
    );
    assert!(s.p_b(&theta).is_zero());
    assert!(s.p_a(&nu).is_zero());
    assert!(s.p_b(&nu).is_zero());
    assert!(s.p_a(&mu).is_zero());
    // the whole product projects to θ under P_a
    assert_eq!(s.p_a(&q.omega()), theta);
}

#[test]
fn components_roundtrip_through_the_total_map() {
    for (name, q) in fixtures(Q) {
        let s = q.space();
        assert_eq!(&s.components_of(&q.total_product()), q.maps(), "{name}");
    }
}

#[test]
fn embed_and_restrict_are_inverse() {
    let s = SplitSpace::new(2, 1);
    let mut r = rng(15);
    for (from, to) in [(Side::A, Side::B), (Side::B, Side::A), (Side::A, Side::A)] {
        for arity in 1..=2 {
            let h = random_hom(Q, s.dim(from), s.dim(to), arity, &mut r);
            let e = s.embed(&h, from, to);
            assert_eq!(s.restrict(&e, from, to), h);
            let x: Vec<Vec<Scalar>> = (0..arity).map(|_| unit_vector(Q, s.total(), 0)).collect();
            let refs: Vec<&[Scalar]> = x.iter().map(Vec::as_slice).collect();
            if from == Side::B {
                assert!(e.eval(&refs).iter().all(Scalar::is_zero));
            }
        }
    }
}

fn bidegree_strategy() -> impl Strategy<Value = (usize, i64)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), -1i64..=n as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projections_reconstruct(seed in any::<u64>(), da in 1usize..=2, db in 1usize..=2, arity in 0usize..=3) {
        let s = SplitSpace::new(da, db);
        let mut r = rng(seed);
        let f = random_multimap(Q, s.total(), arity, &mut r);
        let mut acc = MultiMap::zero(Q, s.total(), arity);
        for d in s.bidegrees(arity) {
            acc.add_assign(&s.project(&f, d));
        }
        prop_assert_eq!(acc, f);
    }

    // bracket(C^{k|l}, C^{k'|l'}) ⊆ C^{k+k'|l+l'}
    #[test]
    fn bracket_bidegree_is_additive(seed in any::<u64>(), (m, kf) in bidegree_strategy(), (n, kg) in bidegree_strategy()) {
        let s = SplitSpace::new(2, 2);
        let mut r = rng(seed);
        let df = bd(kf, m as i64 - 1 - kf);
        let dg = bd(kg, n as i64 - 1 - kg);
        let f = homogeneous(s, m, df, &mut r);
        let g = homogeneous(s, n, dg, &mut r);
        let h = f.bracket(&g).unwrap();
        let c = s.classify(&h).unwrap();
        prop_assert!(h.is_zero() || c == Some(bd(df.k + dg.k, df.l + dg.l)), "{:?} {:?} -> {:?}", df, dg, c);
    }

    #[test]
    fn subalgebras_are_closed(seed in any::<u64>(), m in 1usize..=3, n in 1usize..=3, which in prop::sample::select(vec![Subalgebra::Q, Subalgebra::M, Subalgebra::R])) {
        let s = SplitSpace::new(1, 2);
        let mut r = rng(seed);
        let member = |arity: usize, r: &mut _| {
            let mut acc = MultiMap::zero(Q, s.total(), arity);
            for d in s.bidegrees(arity) {
                let allowed = match which {
                    Subalgebra::Q => d.k != -1,
                    Subalgebra::M => d.k != -1 && d.l != -1,
                    Subalgebra::R => d.l != -1,
                };
                if allowed {
                    acc.add_assign(&homogeneous(s, arity, d, r));
                }
            }
            acc
        };
        let f = member(m, &mut r);
        let g = member(n, &mut r);
        prop_assert!(s.in_subalgebra(&f, which) && s.in_subalgebra(&g, which));
        prop_assert!(s.in_subalgebra(&f.bracket(&g).unwrap(), which));
    }

    #[test]
    fn kernel_of_p_a_is_closed(seed in any::<u64>(), m in 1usize..=3, n in 1usize..=3) {
        let s = SplitSpace::new(2, 1);
        let mut r = rng(seed);
        let mut kernel = |arity: usize| {
            let f = random_multimap(Q, s.total(), arity, &mut r);
            f.sub(&s.p_a(&f))
        };
        let (f, g) = (kernel(m), kernel(n));
        prop_assert!(s.p_a(&f).is_zero() && s.p_a(&g).is_zero());
        prop_assert!(s.p_a(&f.bracket(&g).unwrap()).is_zero());
    }

    #[test]
    fn subspace_a_is_abelian(seed in any::<u64>(), m in 1usize..=3, n in 1usize..=3) {
        let s = SplitSpace::new(1, 2);
        let mut r = rng(seed);
        let f = random_block(Q, s, Side::A, Side::B, m, &mut r);
        let g = random_block(Q, s, Side::A, Side::B, n, &mut r);
        prop_assert!(f.bracket(&g).unwrap().is_zero());
        let f = random_block(Q, s, Side::B, Side::A, m, &mut r);
        let g = random_block(Q, s, Side::B, Side::A, n, &mut r);
        prop_assert!(f.bracket(&g).unwrap().is_zero());
    }
}

#[test]
fn decode_matches_bidegree_counting() {
    let s = SplitSpace::new(2, 1);
    for t in 0..27 {
        let tuple = decode(3, 3, t);
        let p = tuple.iter().filter(|&&i| i < 2).count() as i64;
        assert_eq!(s.bidegree_of(&tuple, 0), bd(p - 1, 3 - p));
        assert_eq!(s.bidegree_of(&tuple, 2), bd(p, 2 - p));
    }
}
