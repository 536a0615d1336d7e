mod common;

use common::*;
use proptest::prelude::*;
use qta_core::bigraded::Side;
use qta_core::defmap::{self, OperatorKind};
use qta_core::linalg::{unit_vector, Matrix};
use qta_core::multilinear::{Bilinear, HomMap};
use qta_core::qta::{factories, Algebra, Bimodule, MatchedPair, QuasiTwilledAlgebra};
use qta_core::{Error, Field, Scalar};
use rand::Rng;

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn scalar(field: Field, l: i64) -> Matrix {
    Matrix::from_i64(field, &[&[l]])
}

fn k1_family(field: Field) -> [(&'static str, QuasiTwilledAlgebra); 4] {
    let k = Algebra::k1(field);
    let reg = Bimodule::regular(&k);
    [
        ("direct", factories::direct_product(&k, &k).unwrap()),
        ("semidirect", factories::semidirect(&k, &reg).unwrap()),
        (
            "weight-1",
            factories::algebra_in_bimodules(&k, &k, &reg).unwrap(),
        ),
        ("reynolds", factories::reynolds_shape(&k).unwrap()),
    ]
}

/// `{λ : D(e) = λe is strong}` (or weak) by exhaustion over F_p.
fn scalar_solutions(q: &QuasiTwilledAlgebra, strong: bool) -> Vec<u64> {
    let f = q.field();
    (0..f.characteristic())
        .filter(|&l| {
            let m = scalar(f, l as i64);
            if strong {
                defmap::is_strong(q, &m).unwrap()
            } else {
                defmap::is_weak(q, &m).unwrap()
            }
        })
        .collect()
}

#[test]
fn strong_scalar_examples() {
    let k = Algebra::k1(Q);
    let direct = factories::direct_product(&k, &k).unwrap();
    let boxed = factories::box_product(&k).unwrap();
    for l in -4..=4 {
        let d = scalar(Q, l);
        // λ = λ² and λ² = 2λ² − 1
        assert_eq!(
            defmap::is_strong(&direct, &d).unwrap(),
            l * l == l,
            "direct {l}"
        );
        assert_eq!(
            defmap::is_strong(&boxed, &d).unwrap(),
            l * l == 1,
            "box {l}"
        );
        assert_eq!(defmap::graph_check_strong(&direct, &d).unwrap(), l * l == l);
        assert_eq!(defmap::graph_check_strong(&boxed, &d).unwrap(), l * l == 1);
    }
    let k5 = Algebra::k1(f5());
    assert_eq!(
        scalar_solutions(&factories::direct_product(&k5, &k5).unwrap(), true),
        vec![0, 1]
    );
    let f7 = Field::prime(7).unwrap();
    assert_eq!(
        scalar_solutions(&factories::box_product(&Algebra::k1(f7)).unwrap(), true),
        vec![1, 6]
    );
}

#[test]
fn derivations_of_dual_numbers() {
    let d2 = Algebra::dual_numbers(Q);
    let q = factories::semidirect(&d2, &Bimodule::regular(&d2)).unwrap();
    for l in -3..=3 {
        let d = Matrix::from_i64(Q, &[&[0, 0], &[0, l]]);
        assert!(defmap::is_strong(&q, &d).unwrap(), "λ = {l}");
        assert!(defmap::graph_check_strong(&q, &d).unwrap());
        // ⇀ and ↼ vanish, so μ_D = μ
        assert_eq!(defmap::induced_a_d(&q, &d).unwrap(), d2);
    }
    // D(1) ≠ 0 is never a derivation
    assert!(!defmap::is_strong(&q, &Matrix::from_i64(Q, &[&[0, 0], &[1, 0]])).unwrap());
}

#[test]
fn weak_scalar_examples() {
    let [_, (_, semi), (_, w1), (_, rey)] = k1_family(Q);
    for l in -4..=4 {
        let r = scalar(Q, l);
        assert_eq!(
            defmap::is_weak(&semi, &r).unwrap(),
            l == 0,
            "semidirect {l}"
        );
        assert_eq!(
            defmap::is_weak(&w1, &r).unwrap(),
            l == 0 || l == -1,
            "weight-1 {l}"
        );
        assert_eq!(
            defmap::is_weak(&rey, &r).unwrap(),
            l == 0 || l == 1,
            "reynolds {l}"
        );
        for q in [&semi, &w1, &rey] {
            assert_eq!(
                defmap::graph_check_weak(q, &r).unwrap(),
                defmap::is_weak(q, &r).unwrap()
            );
        }
    }
    let [_, (_, semi5), (_, w15), (_, rey5)] = k1_family(f5());
    assert_eq!(scalar_solutions(&semi5, false), vec![0]);
    assert_eq!(scalar_solutions(&w15, false), vec![0, 4]);
    assert_eq!(scalar_solutions(&rey5, false), vec![0, 1]);
}

#[test]
fn shapes_are_checked() {
    let q = factories::direct_product(&Algebra::dual_numbers(Q), &Algebra::k1(Q)).unwrap();
    assert!(matches!(
        defmap::is_strong(&q, &Matrix::zeros(Q, 2, 1)),
        Err(Error::Dimension(_))
    ));
    assert!(defmap::is_strong(&q, &Matrix::zeros(Q, 1, 2)).is_ok());
    assert!(matches!(
        defmap::is_weak(&q, &Matrix::zeros(Q, 1, 2)),
        Err(Error::Dimension(_))
    ));
    assert!(defmap::is_weak(&q, &Matrix::zeros(Q, 2, 1)).is_ok());
}

#[test]
fn induced_structures_reject_non_solutions() {
    let k = Algebra::k1(Q);
    let q = factories::direct_product(&k, &k).unwrap();
    let two = scalar(Q, 2);
    assert_eq!(defmap::induced_a_d(&q, &two), Err(Error::NotStrong));
    assert!(matches!(
        defmap::induced_matched_pair(&q, &two),
        Err(Error::NotStrong)
    ));
    assert!(matches!(
        defmap::strong_complex(&q, &two),
        Err(Error::NotStrong)
    ));
    assert_eq!(defmap::induced_b_r(&q, &two), Err(Error::NotWeak));
    assert!(matches!(
        defmap::deformed_qta(&q, &two),
        Err(Error::NotWeak)
    ));
    assert!(matches!(
        defmap::weak_complex(&q, &two),
        Err(Error::NotWeak)
    ));
}

#[test]
fn induced_algebra_examples() {
    let k = Algebra::k1(Q);
    let boxed = factories::box_product(&k).unwrap();
    assert_eq!(
        defmap::induced_a_d(&boxed, &scalar(Q, 1)).unwrap().mu,
        Bilinear::from_i64(Q, 1, 1, 1, &[2])
    );
    assert_eq!(
        defmap::induced_a_d(&boxed, &scalar(Q, -1)).unwrap().mu,
        Bilinear::from_i64(Q, 1, 1, 1, &[-2])
    );

    for mp in [matched_pair_k1(Q), matched_pair_d2(Q)] {
        let q = mp.qta();
        let zero = Matrix::zeros(Q, q.dim_b(), q.dim_a());
        assert_eq!(defmap::induced_a_d(q, &zero).unwrap(), q.algebra_a());
        assert_eq!(&defmap::induced_matched_pair(q, &zero).unwrap(), &mp);
    }
}

#[test]
fn induced_actions_follow_the_table() {
    let mut r = rng(31);
    // crossed homomorphisms on the weight-1 shape: a▷_D x = a▷x + D(a)x
    let (kk, module) = scalar_action(Q, 2);
    let k = Algebra::k1(Q);
    let q = factories::algebra_in_bimodules(&k, &kk, &module).unwrap();
    let strong = strong_maps(&q);
    assert!(strong.len() > 1);
    for d in &strong {
        let mp = defmap::induced_matched_pair(&q, d).unwrap();
        for _ in 0..5 {
            let (a, x) = (
                vec![small(Q, &mut r)],
                vec![small(Q, &mut r), small(Q, &mut r)],
            );
            let expected: Vec<Scalar> = q
                .tr(&a, &x)
                .iter()
                .zip(q.nu(&d.apply(&a), &x))
                .map(|(s, t)| s + &t)
                .collect();
            assert_eq!(mp.qta().tr(&a, &x), expected);
        }
    }
    // modified r-matrices on the box product: a▷_D x = D(a)x − D(ax)
    let d2 = Algebra::dual_numbers(Q);
    let q = factories::box_product(&d2).unwrap();
    let strong = strong_maps(&q);
    assert!(strong.len() > 2);
    for d in &strong {
        let mp = defmap::induced_matched_pair(&q, d).unwrap();
        for _ in 0..5 {
            let (a, x) = (
                vec![small(Q, &mut r), small(Q, &mut r)],
                vec![small(Q, &mut r), small(Q, &mut r)],
            );
            let expected: Vec<Scalar> = d2
                .mul(&d.apply(&a), &x)
                .iter()
                .zip(d.apply(&d2.mul(&a, &x)))
                .map(|(s, t)| s - &t)
                .collect();
            assert_eq!(mp.qta().tr(&a, &x), expected);
        }
    }
}

#[test]
fn induced_b_r_examples() {
    let [_, (_, semi), (_, w1), (_, rey)] = k1_family(Q);
    for q in [&semi, &w1, &rey] {
        assert_eq!(
            defmap::induced_b_r(q, &scalar(Q, 0)).unwrap(),
            q.algebra_b()
        );
    }
    // xy + (−x)y + x(−y) = −xy
    assert_eq!(
        defmap::induced_b_r(&w1, &scalar(Q, -1)).unwrap().mu,
        Bilinear::from_i64(Q, 1, 1, 1, &[-1])
    );
    // 0 + xy + xy − xy = xy
    assert_eq!(
        defmap::induced_b_r(&rey, &scalar(Q, 1)).unwrap().mu,
        Bilinear::from_i64(Q, 1, 1, 1, &[1])
    );
}

#[test]
fn deformed_qta_examples() {
    for (name, q) in fixtures(Q) {
        let zero = Matrix::zeros(Q, q.dim_a(), q.dim_b());
        assert_eq!(
            defmap::deformed_qta(&q, &zero).unwrap().maps(),
            q.maps(),
            "{name}"
        );
    }
    let [_, _, (_, w1), _] = k1_family(Q);
    let r = scalar(Q, -1);
    let deformed = defmap::deformed_qta(&w1, &r).unwrap();
    assert!(deformed.validate_axioms().passed());
    assert_eq!(deformed.maps().nu, defmap::induced_b_r(&w1, &r).unwrap().mu);

    // μ_r(a,b) = ab − r(θ(a,b)) on the θ-twisted semidirect product
    let d2 = Algebra::dual_numbers(Q);
    let q = factories::theta_twisted_semidirect(&d2, &Bimodule::regular(&d2), &d2.mu).unwrap();
    let weak = weak_maps(&q);
    assert!(weak.len() > 1);
    let mut rng = rng(32);
    for r in &weak {
        let dq = defmap::deformed_qta(&q, r).unwrap();
        for _ in 0..5 {
            let (a, b) = (
                vec![small(Q, &mut rng), small(Q, &mut rng)],
                vec![small(Q, &mut rng), small(Q, &mut rng)],
            );
            let expected: Vec<Scalar> = d2
                .mul(&a, &b)
                .iter()
                .zip(r.apply(&q.theta(&a, &b)))
                .map(|(s, t)| s - &t)
                .collect();
            assert_eq!(dq.mu(&a, &b), expected);
        }
    }
}

#[test]
fn omega_r_at_zero_is_omega() {
    for (name, q) in fixtures(Q) {
        let parts = defmap::omega_r_parts(&q, &Matrix::zeros(Q, q.dim_a(), q.dim_b())).unwrap();
        let (theta, mu, nu) = q.hats();
        assert_eq!(
            (parts.theta.clone(), parts.mu.clone(), parts.nu.clone()),
            (theta, mu, nu),
            "{name}"
        );
        assert!(parts.psi.is_zero());
        assert_eq!(parts.total(), q.omega());
    }
}

#[test]
fn psi_r_is_the_weak_defect() {
    let mut rng = rng(33);
    for (name, q) in fixtures(Q) {
        let sp = q.space();
        for _ in 0..10 {
            let r = random_matrix(Q, q.dim_a(), q.dim_b(), &mut rng);
            let parts = defmap::omega_r_parts(&q, &r).unwrap();
            let psi = sp.restrict(&parts.psi, Side::B, Side::A);
            for i in 0..q.dim_b() {
                for j in 0..q.dim_b() {
                    let (x, y) = (unit_vector(Q, q.dim_b(), i), unit_vector(Q, q.dim_b(), j));
                    let (rx, ry) = (r.apply(&x), r.apply(&y));
                    let lhs = [q.mu(&rx, &ry), q.lh(&rx, &y), q.rh(&x, &ry)];
                    let inner = [
                        q.nu(&x, &y),
                        q.tr(&rx, &y),
                        q.tl(&x, &ry),
                        q.theta(&rx, &ry),
                    ];
                    let add = |vs: &[Vec<Scalar>]| {
                        vs.iter().skip(1).fold(vs[0].clone(), |acc, v| {
                            acc.iter().zip(v).map(|(s, t)| s + t).collect()
                        })
                    };
                    let defect: Vec<Scalar> = add(&lhs)
                        .iter()
                        .zip(r.apply(&add(&inner)))
                        .map(|(s, t)| s - &t)
                        .collect();
                    assert_eq!(psi.eval(&[&x, &y]), defect, "{name}");
                }
            }
            assert_eq!(
                parts.psi.is_zero(),
                defmap::is_weak(&q, &r).unwrap(),
                "{name}"
            );
        }
    }
}

#[test]
fn uchino_identity_for_non_weak_maps_over_f3() {
    let f3 = Field::prime(3).unwrap();
    let mut rng = rng(34);
    let mut non_weak = 0;
    for (name, q) in fixtures(f3) {
        for _ in 0..20 {
            let r = Matrix::from_fn(f3, q.dim_a(), q.dim_b(), |_, _| {
                f3.from_i64(rng.gen_range(0..3))
            });
            let parts = defmap::omega_r_parts(&q, &r).unwrap();
            if !defmap::is_weak(&q, &r).unwrap() {
                non_weak += 1;
                assert!(!parts.psi.is_zero(), "{name}");
            }
            assert!(parts.total().square().is_zero(), "{name}");
        }
    }
    assert!(non_weak > 100);
}

#[test]
fn recognized_operators() {
    let k = Algebra::k1(Q);
    let reg = Bimodule::regular(&k);
    let cases = [
        (
            factories::direct_product(&k, &k).unwrap(),
            "algebra homomorphism",
            "algebra homomorphism",
        ),
        (
            factories::semidirect(&k, &reg).unwrap(),
            "derivation",
            "relative Rota-Baxter operator of weight 0",
        ),
        (
            factories::algebra_in_bimodules(&k, &k, &reg).unwrap(),
            "crossed homomorphism",
            "relative Rota-Baxter operator of weight 1",
        ),
        (
            factories::reynolds_shape(&k).unwrap(),
            "strong deformation map",
            "Reynolds operator",
        ),
        (
            factories::box_product(&k).unwrap(),
            "modified associative r-matrix",
            "weak deformation map",
        ),
        (
            factories::left_module_only(&k, &k.mu).unwrap(),
            "strong deformation map",
            "relative left averaging operator",
        ),
        (
            factories::right_module_only(&k, &k.mu).unwrap(),
            "strong deformation map",
            "relative right averaging operator",
        ),
        (
            factories::theta_twisted_semidirect(&k, &reg, &k.mu).unwrap(),
            "strong deformation map",
            "theta-twisted Rota-Baxter operator",
        ),
        (
            matched_pair_k1(Q).into_qta(),
            "strong deformation map",
            "deformation map in a matched pair",
        ),
    ];
    for (q, strong, weak) in cases {
        let tags = defmap::recognize(&q);
        assert_eq!(
            (
                tags.strong.to_string().as_str(),
                tags.weak.to_string().as_str()
            ),
            (strong, weak)
        );
    }
    let raw = QuasiTwilledAlgebra::unchecked(
        Q,
        k1_family(Q)[0].1.space(),
        k1_family(Q)[0].1.maps().clone(),
    )
    .unwrap();
    assert_eq!(defmap::recognize(&raw).weak, OperatorKind::GenericWeak);
}

/// Hochschild cohomology of `(X, M)` assembled from the three products as closures.
fn hochschild_oracle(
    field: Field,
    x: usize,
    m: usize,
    mul: &dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    left: &dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    right: &dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    top: usize,
) -> Vec<usize> {
    let dim = |n: usize| x.pow(n as u32) * m;
    let e = |i: usize| unit_vector(field, x, i);
    // f on a tuple of vectors, multilinearly
    fn eval(field: Field, x: usize, m: usize, f: &[Scalar], args: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut out = vec![field.zero(); m];
        let n = args.len();
        for t in 0..x.pow(n as u32) {
            let mut c = field.one();
            let mut idx = t;
            let mut flat = 0;
            for (k, a) in args.iter().enumerate() {
                let i = (idx / x.pow((n - k - 1) as u32)) % x;
                idx %= x.pow((n - k - 1) as u32);
                c = &c * &a[i];
                flat = flat * x + i;
            }
            if c.is_zero() {
                continue;
            }
            for o in 0..m {
                out[o] += &(&c * &f[flat * m + o]);
            }
        }
        out
    }
    let matrix = |n: usize| {
        Matrix::from_fn(field, dim(n + 1), dim(n), |row, col| {
            let mut f = vec![field.zero(); dim(n)];
            f[col] = field.one();
            let (t, o) = (row / m, row % m);
            let args: Vec<Vec<Scalar>> = (0..=n)
                .map(|k| e((t / x.pow((n - k) as u32)) % x))
                .collect();
            let mut acc = left(&args[0], &eval(field, x, m, &f, &args[1..]));
            for i in 0..n {
                let mut inner = args[..i].to_vec();
                inner.push(mul(&args[i], &args[i + 1]));
                inner.extend_from_slice(&args[i + 2..]);
                let term = eval(field, x, m, &f, &inner);
                for (a, b) in acc.iter_mut().zip(term) {
                    if i % 2 == 0 {
                        *a -= &b;
                    } else {
                        *a += &b;
                    }
                }
            }
            let last = right(&eval(field, x, m, &f, &args[..n]), &args[n]);
            for (a, b) in acc.iter_mut().zip(last) {
                if n % 2 == 0 {
                    *a -= &b;
                } else {
                    *a += &b;
                }
            }
            acc[o].clone()
        })
    };
    let ranks: Vec<usize> = (0..=top).map(|n| matrix(n).rank()).collect();
    (0..=top)
        .map(|n| dim(n) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect()
}

fn add3(u: Vec<Scalar>, v: Vec<Scalar>, w: Vec<Scalar>) -> Vec<Scalar> {
    u.iter()
        .zip(&v)
        .zip(&w)
        .map(|((a, b), c)| &(a + b) + c)
        .collect()
}

fn sub(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

#[test]
fn strong_cohomology_matches_the_oracle() {
    let d2 = Algebra::dual_numbers(Q);
    let q = factories::semidirect(&d2, &Bimodule::regular(&d2)).unwrap();
    let mut cases = vec![(q, Matrix::from_i64(Q, &[&[0, 0], &[0, 1]]))];
    let boxed = factories::box_product(&Algebra::k1(Q)).unwrap();
    cases.push((boxed, scalar(Q, 1)));
    let (kk, module) = scalar_action(Q, 2);
    let w1 = factories::algebra_in_bimodules(&Algebra::k1(Q), &kk, &module).unwrap();
    for d in strong_maps(&w1).into_iter().take(4) {
        cases.push((w1.clone(), d));
    }
    for (q, d) in cases {
        let mu_d = |a: &[Scalar], b: &[Scalar]| {
            add3(q.mu(a, b), q.lh(a, &d.apply(b)), q.rh(&d.apply(a), b))
        };
        let tr_d = |a: &[Scalar], x: &[Scalar]| {
            sub(
                &add3(q.tr(a, x), q.nu(&d.apply(a), x), vec![Q.zero(); x.len()]),
                &d.apply(&q.lh(a, x)),
            )
        };
        let tl_d = |x: &[Scalar], a: &[Scalar]| {
            sub(
                &add3(q.tl(x, a), q.nu(x, &d.apply(a)), vec![Q.zero(); x.len()]),
                &d.apply(&q.rh(x, a)),
            )
        };
        let oracle = hochschild_oracle(Q, q.dim_a(), q.dim_b(), &mu_d, &tr_d, &tl_d, 3);
        assert_eq!(defmap::strong_cohomology_dims(&q, &d, 3).unwrap(), oracle);
    }
}

#[test]
fn weak_cohomology_matches_the_oracle() {
    let mut cases = Vec::new();
    for (name, q) in fixtures(Q) {
        for r in weak_maps(&q).into_iter().take(3) {
            cases.push((name, q.clone(), r));
        }
    }
    assert!(cases.len() > 15);
    for (name, q, r) in cases {
        let nu_r = |x: &[Scalar], y: &[Scalar]| {
            let (rx, ry) = (r.apply(x), r.apply(y));
            add3(
                add3(q.nu(x, y), q.tr(&rx, y), q.tl(x, &ry)),
                q.theta(&rx, &ry),
                vec![Q.zero(); x.len()],
            )
        };
        let rh_r = |x: &[Scalar], a: &[Scalar]| {
            let rx = r.apply(x);
            let inner = add3(q.tl(x, a), q.theta(&rx, a), vec![Q.zero(); x.len()]);
            sub(
                &add3(q.rh(x, a), q.mu(&rx, a), vec![Q.zero(); a.len()]),
                &r.apply(&inner),
            )
        };
        let lh_r = |a: &[Scalar], x: &[Scalar]| {
            let rx = r.apply(x);
            let inner = add3(q.tr(a, x), q.theta(a, &rx), vec![Q.zero(); x.len()]);
            sub(
                &add3(q.lh(a, x), q.mu(a, &rx), vec![Q.zero(); a.len()]),
                &r.apply(&inner),
            )
        };
        let top = if q.space().total() <= 3 { 3 } else { 2 };
        let oracle = hochschild_oracle(Q, q.dim_b(), q.dim_a(), &nu_r, &rh_r, &lh_r, top);
        assert_eq!(
            defmap::weak_cohomology_dims(&q, &r, top).unwrap(),
            oracle,
            "{name}"
        );
    }
}

#[test]
fn differentials_square_to_zero() {
    let mut rng = rng(35);
    for (name, q) in fixtures(Q) {
        for d in strong_maps(&q).into_iter().take(3) {
            for n in 0..=3 {
                let f = random_hom(Q, q.dim_a(), q.dim_b(), n, &mut rng);
                let df = defmap::delta_d(&q, &d, &f).unwrap();
                assert!(
                    defmap::delta_d(&q, &d, &df).unwrap().is_zero(),
                    "{name} n={n}"
                );
                let zero = HomMap::zero(Q, q.dim_a(), q.dim_b(), n);
                assert!(defmap::delta_d(&q, &d, &zero).unwrap().is_zero());
            }
        }
        for r in weak_maps(&q).into_iter().take(3) {
            for n in 0..=3 {
                let f = random_hom(Q, q.dim_b(), q.dim_a(), n, &mut rng);
                let df = defmap::delta_r(&q, &r, &f).unwrap();
                assert!(
                    defmap::delta_r(&q, &r, &df).unwrap().is_zero(),
                    "{name} n={n}"
                );
            }
        }
        let wrong = HomMap::zero(Q, q.dim_a() + 1, q.dim_b(), 1);
        let d0 = Matrix::zeros(Q, q.dim_b(), q.dim_a());
        if defmap::is_strong(&q, &d0).unwrap() {
            assert!(matches!(
                defmap::delta_d(&q, &d0, &wrong),
                Err(Error::Dimension(_))
            ));
        }
    }
}

#[test]
fn solutions_induce_valid_structures() {
    for field in [Q, Field::prime(3).unwrap()] {
        for (name, q) in fixtures(field) {
            for d in strong_maps(&q) {
                assert!(
                    defmap::induced_a_d(&q, &d)
                        .unwrap()
                        .associativity()
                        .passed(),
                    "{name}"
                );
                let mp: MatchedPair = defmap::induced_matched_pair(&q, &d).unwrap();
                assert!(mp.qta().validate_axioms().passed(), "{name}");
            }
            for r in weak_maps(&q) {
                let dq = defmap::deformed_qta(&q, &r).unwrap();
                assert!(dq.validate_axioms().passed(), "{name}");
                assert_eq!(
                    dq.maps().nu,
                    defmap::induced_b_r(&q, &r).unwrap().mu,
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn inverse_of_a_strong_map_is_weak_over_f3() {
    let f3 = Field::prime(3).unwrap();
    let mut checked = 0;
    for (name, q) in fixtures(f3) {
        if q.dim_a() != q.dim_b() {
            continue;
        }
        for d in defmap::all_matrices(f3, q.dim_b(), q.dim_a()) {
            if let Some(inv) = d.inverse() {
                checked += 1;
                assert_eq!(
                    defmap::is_strong(&q, &d).unwrap(),
                    defmap::is_weak(&q, &inv).unwrap(),
                    "{name}"
                );
            }
        }
    }
    assert!(checked > 250);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn predicates_agree_with_graph_checks(seed in any::<u64>(), which in 0usize..15) {
        let (name, q) = fixtures(Q).swap_remove(which);
        let mut r = rng(seed);
        let d = random_matrix(Q, q.dim_b(), q.dim_a(), &mut r);
        prop_assert_eq!(defmap::is_strong(&q, &d).unwrap(), defmap::graph_check_strong(&q, &d).unwrap(), "{}", name);
        let w = random_matrix(Q, q.dim_a(), q.dim_b(), &mut r);
        prop_assert_eq!(defmap::is_weak(&q, &w).unwrap(), defmap::graph_check_weak(&q, &w).unwrap(), "{}", name);
        prop_assert!(defmap::omega_r_parts(&q, &w).unwrap().total().square().is_zero());
    }

    #[test]
    fn invertible_strong_maps_invert_to_weak_maps(seed in any::<u64>(), which in 0usize..15) {
        let (name, q) = fixtures(Q).swap_remove(which);
        prop_assume!(q.dim_a() == q.dim_b());
        let mut r = rng(seed);
        let mut candidates = strong_maps(&q);
        candidates.push(random_matrix(Q, q.dim_b(), q.dim_a(), &mut r));
        for d in candidates {
            if let Some(inv) = d.inverse() {
                prop_assert_eq!(defmap::is_strong(&q, &d).unwrap(), defmap::is_weak(&q, &inv).unwrap(), "{}", name);
            }
        }
    }
}
