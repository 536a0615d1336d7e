#![allow(dead_code)]

use qta_core::bigraded::{Side, SplitSpace, StructureMaps};
use qta_core::defmap;
use qta_core::linalg::Matrix;
use qta_core::multilinear::{Bilinear, HomMap, MultiMap};
use qta_core::qta::factories::{self, MatchedPairData};
use qta_core::qta::{Algebra, Bimodule, MatchedPair, QuasiTwilledAlgebra};
use qta_core::{Field, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const Q: Field = Field::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(field: Field, rng: &mut impl Rng) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

/// `K × K` with the scalar action of `K1` on both sides.
pub fn scalar_action(field: Field, n: usize) -> (Algebra, Bimodule) {
    let k1 = Algebra::k1(field);
    let b = Algebra::new(Bilinear::from_fn(field, n, n, n, |i, j| {
        let mut v = vec![field.zero(); n];
        if i == j {
            v[i] = field.one();
        }
        v
    }))
    .unwrap();
    let act = Bilinear::from_fn(field, 1, n, n, |_, j| {
        qta_core::linalg::unit_vector(field, n, j)
    });
    let right = Bilinear::from_fn(field, n, 1, n, |i, _| {
        qta_core::linalg::unit_vector(field, n, i)
    });
    let m = Bimodule::new(&k1, act, right).unwrap();
    (b, m)
}

/// One representative of every factory family.
pub fn fixtures(field: Field) -> Vec<(&'static str, QuasiTwilledAlgebra)> {
    let k1 = Algebra::k1(field);
    let d2 = Algebra::dual_numbers(field);
    let reg = |a: &Algebra| Bimodule::regular(a);
    let (kk, kk_mod) = scalar_action(field, 2);
    let mut v = vec![
        ("direct K1⊕K1", factories::direct_product(&k1, &k1).unwrap()),
        ("direct D2⊕K1", factories::direct_product(&d2, &k1).unwrap()),
        (
            "semidirect K1",
            factories::semidirect(&k1, &reg(&k1)).unwrap(),
        ),
        (
            "semidirect D2",
            factories::semidirect(&d2, &reg(&d2)).unwrap(),
        ),
        (
            "weight-1 K1",
            factories::algebra_in_bimodules(&k1, &k1, &reg(&k1)).unwrap(),
        ),
        (
            "weight-1 K1 on K×K",
            factories::algebra_in_bimodules(&k1, &kk, &kk_mod).unwrap(),
        ),
        (
            "left-only K1",
            factories::left_module_only(&k1, &k1.mu).unwrap(),
        ),
        (
            "right-only D2",
            factories::right_module_only(&d2, &d2.mu).unwrap(),
        ),
        ("box K1", factories::box_product(&k1).unwrap()),
        ("box D2", factories::box_product(&d2).unwrap()),
        (
            "θ-twisted D2",
            factories::theta_twisted_semidirect(&d2, &reg(&d2), &d2.mu).unwrap(),
        ),
        ("reynolds K1", factories::reynolds_shape(&k1).unwrap()),
        ("reynolds D2", factories::reynolds_shape(&d2).unwrap()),
        ("nonabelian K1", nonabelian(&k1)),
        ("nonabelian D2", nonabelian(&d2)),
    ];
    if field.characteristic() != 2 {
        v.push((
            "matched pair from box K1",
            matched_pair_k1(field).into_qta(),
        ));
    }
    v
}

/// `(a,x)(b,y) = (ab, xy − ay − xb + 2ab)` on `A ⊕ A`, the weight-1 product
/// transported along `(a,x) ↦ (a, x + 2a)`. Every structure map but the harpoons
/// is nonzero.
pub fn nonabelian(a: &Algebra) -> QuasiTwilledAlgebra {
    let field = a.field();
    let space = SplitSpace::new(a.dim(), a.dim());
    let mut maps = StructureMaps::zero(field, space);
    maps.mu = a.mu.clone();
    maps.nu = a.mu.clone();
    maps.tr = a.mu.scale(&-field.one());
    maps.tl = a.mu.scale(&-field.one());
    maps.theta = a.mu.scale(&field.from_i64(2));
    QuasiTwilledAlgebra::new(field, space, maps).unwrap()
}

/// The matched pair induced by the modified r-matrix `D = id` on `box(K1)`.
pub fn matched_pair_k1(field: Field) -> MatchedPair {
    let q = factories::box_product(&Algebra::k1(field)).unwrap();
    defmap::induced_matched_pair(&q, &Matrix::identity(field, 1)).unwrap()
}

/// A matched pair with both sides two-dimensional: `D2 ⋈ D2` induced by `D = id` on `box(D2)`.
pub fn matched_pair_d2(field: Field) -> MatchedPair {
    let q = factories::box_product(&Algebra::dual_numbers(field)).unwrap();
    defmap::induced_matched_pair(&q, &Matrix::identity(field, 2)).unwrap()
}

pub fn matched_pair_data_of(mp: &MatchedPair) -> MatchedPairData {
    let q = mp.qta();
    let m = q.maps();
    MatchedPairData {
        a: Algebra::new(m.mu.clone()).unwrap(),
        b: Algebra::new(m.nu.clone()).unwrap(),
        tr: m.tr.clone(),
        tl: m.tl.clone(),
        rh: m.rh.clone(),
        lh: m.lh.clone(),
    }
}

/// All matrices with entries in `-1..=1`.
pub fn small_matrices(field: Field, rows: usize, cols: usize) -> Vec<Matrix> {
    let n = rows * cols;
    (0..3usize.pow(n as u32))
        .map(|mut code| {
            Matrix::from_fn(field, rows, cols, |_, _| {
                let v = (code % 3) as i64 - 1;
                code /= 3;
                field.from_i64(v)
            })
        })
        .collect()
}

pub fn strong_maps(q: &QuasiTwilledAlgebra) -> Vec<Matrix> {
    small_matrices(q.field(), q.dim_b(), q.dim_a())
        .into_iter()
        .filter(|d| defmap::is_strong(q, d).unwrap())
        .collect()
}

pub fn weak_maps(q: &QuasiTwilledAlgebra) -> Vec<Matrix> {
    small_matrices(q.field(), q.dim_a(), q.dim_b())
        .into_iter()
        .filter(|r| defmap::is_weak(q, r).unwrap())
        .collect()
}

pub fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| small(field, rng))
}

pub fn random_hom(
    field: Field,
    input: usize,
    output: usize,
    arity: usize,
    rng: &mut impl Rng,
) -> HomMap {
    HomMap::from_fn(field, input, output, arity, |_| {
        (0..output).map(|_| small(field, rng)).collect()
    })
}

pub fn random_multimap(field: Field, dim: usize, arity: usize, rng: &mut impl Rng) -> MultiMap {
    MultiMap::from_fn(field, dim, arity, |_| {
        (0..dim).map(|_| small(field, rng)).collect()
    })
}

/// A random map `from^{⊗n} → to`, embedded in the total space.
pub fn random_block(
    field: Field,
    space: SplitSpace,
    from: Side,
    to: Side,
    arity: usize,
    rng: &mut impl Rng,
) -> MultiMap {
    let h = random_hom(field, space.dim(from), space.dim(to), arity, rng);
    space.embed(&h, from, to)
}
