use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use ns_chern::arith::reduce_big;
use ns_chern::chern::{ChernMap, TConvention};
use ns_chern::field::Field;
use ns_chern::lattice::{
    coords_to_matrix, intersect, j_of_delta, matmul, matrix_to_coords, pullback, DivisorCoords,
    DivisorMatrix, OrderMatrix,
};
use ns_chern::quat::{AlgebraParams, OrderElement, QuatElement};

const PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101, 197];

fn config() -> Config {
    Config {
        cases: 1000,
        rng_seed: RngSeed::Fixed(0x5eed_2024),
        failure_persistence: None,
        ..Config::default()
    }
}

fn params() -> impl Strategy<Value = AlgebraParams> {
    prop::sample::select(PRIMES.to_vec()).prop_map(|p| AlgebraParams::find(p).unwrap())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-60i64..60, 1i64..24).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn quat_for(params: AlgebraParams) -> impl Strategy<Value = QuatElement> {
    prop::array::uniform4(rational()).prop_map(move |c| QuatElement::new(params, c))
}

fn order_for(params: AlgebraParams) -> impl Strategy<Value = OrderElement> {
    prop::array::uniform4(-40i64..40).prop_map(move |c| OrderElement::from_ints(params, c))
}

fn coords() -> impl Strategy<Value = DivisorCoords> {
    prop::array::uniform6(-30i64..30).prop_map(DivisorCoords::from_ints)
}

/// Product via a hand-entered table of basis products `e_i e_j = s·e_k`,
/// with `e = (1, F, α, Fα)`. Entries are `(k, sign, uses p, uses q)`.
#[allow(clippy::needless_range_loop)]
fn table_mul(x: &QuatElement, y: &QuatElement) -> QuatElement {
    let pr = x.params();
    type Entry = (usize, i64, bool, bool);
    #[rustfmt::skip]
    let table: [[Entry; 4]; 4] = [
        [(0, 1, false, false), (1, 1, false, false), (2, 1, false, false), (3, 1, false, false)],
        [(1, 1, false, false), (0, -1, true, false), (3, 1, false, false), (2, -1, true, false)],
        [(2, 1, false, false), (3, -1, false, false), (0, -1, false, true), (1, 1, false, true)],
        [(3, 1, false, false), (2, 1, true, false), (1, -1, false, true), (0, -1, true, true)],
    ];
    let mut out: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
    for i in 0..4 {
        for j in 0..4 {
            let (k, sign, use_p, use_q) = table[i][j];
            let mut s = sign;
            if use_p {
                s *= pr.p as i64;
            }
            if use_q {
                s *= pr.q as i64;
            }
            out[k] += &x.coeffs()[i] * &y.coeffs()[j] * BigRational::from_integer(s.into());
        }
    }
    QuatElement::new(pr, out)
}

fn params_and_quats(n: usize) -> impl Strategy<Value = (AlgebraParams, Vec<QuatElement>)> {
    params().prop_flat_map(move |pr| (Just(pr), prop::collection::vec(quat_for(pr), n)))
}

fn params_and_orders(n: usize) -> impl Strategy<Value = (AlgebraParams, Vec<OrderElement>)> {
    params().prop_flat_map(move |pr| (Just(pr), prop::collection::vec(order_for(pr), n)))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn product_matches_structure_table((_, xs) in params_and_quats(2)) {
        prop_assert_eq!(&xs[0] * &xs[1], table_mul(&xs[0], &xs[1]));
    }

    #[test]
    fn conjugation_is_an_anti_automorphism((_, xs) in params_and_quats(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert_eq!((x * y).conj(), &y.conj() * &x.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
    }

    #[test]
    fn norm_is_multiplicative_and_trace_is_x_plus_conj((pr, xs) in params_and_quats(3)) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!((x * y).nrd(), x.nrd() * y.nrd());
        prop_assert_eq!(&(x * y) * z, x * &(y * z));
        prop_assert_eq!(x + &x.conj(), QuatElement::one(pr).scale(&x.trd()));
        prop_assert_eq!(x * &x.conj(), QuatElement::one(pr).scale(&x.nrd()));
        if !x.is_zero() {
            prop_assert!(x.nrd().is_positive());
        }
    }

    #[test]
    fn order_is_a_ring((_, xs) in params_and_orders(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let prod = x.to_quat().checked_mul(&y.to_quat()).unwrap();
        prop_assert!(prod.to_order_coords().is_ok());
        prop_assert!(x.to_quat().nrd().is_integer());
        prop_assert_eq!(x.to_quat().to_order_element().unwrap(), x.clone());
        prop_assert!(x.conj().to_quat() == x.to_quat().conj());
    }

    #[test]
    fn coordinates_round_trip(pr in params(), v in coords()) {
        prop_assert_eq!(matrix_to_coords(&coords_to_matrix(pr, &v)), v);
    }

    #[test]
    fn intersection_is_symmetric_and_bilinear(pr in params(), u in coords(), v in coords(), w in coords(), n in -9i64..9) {
        let (lu, lv, lw) = (coords_to_matrix(pr, &u), coords_to_matrix(pr, &v), coords_to_matrix(pr, &w));
        let uv = intersect(&lu, &lv).unwrap();
        prop_assert_eq!(&uv, &intersect(&lv, &lu).unwrap());
        let lhs = intersect(&(&lu.scale(&BigInt::from(n)) + &lw), &lv).unwrap();
        prop_assert_eq!(lhs, uv * n + intersect(&lw, &lv).unwrap());
        let sq = intersect(&lu, &lu).unwrap();
        prop_assert_eq!(&sq, &lu.self_intersection());
        prop_assert!((&sq % BigInt::from(2)).is_zero());
    }

    #[test]
    fn fibre_intersections_read_the_diagonal(pr in params(), v in coords()) {
        let l = coords_to_matrix(pr, &v);
        prop_assert_eq!(intersect(&l, &DivisorMatrix::e1(pr)).unwrap(), l.a.clone());
        prop_assert_eq!(intersect(&l, &DivisorMatrix::e2(pr)).unwrap(), l.d.clone());
    }

    #[test]
    fn delta_intersection_is_norm_of_difference((pr, xs) in params_and_orders(2)) {
        let one = OrderElement::one(pr);
        let (dx, dy) = (j_of_delta(&one, &xs[0]), j_of_delta(&one, &xs[1]));
        prop_assert_eq!(intersect(&dx, &dy).unwrap(), (&xs[0] - &xs[1]).nrd());
    }

    #[test]
    fn pullback_is_contravariant((pr, xs) in params_and_orders(8), v in coords()) {
        let g: OrderMatrix = [[xs[0].clone(), xs[1].clone()], [xs[2].clone(), xs[3].clone()]];
        let h: OrderMatrix = [[xs[4].clone(), xs[5].clone()], [xs[6].clone(), xs[7].clone()]];
        let l = coords_to_matrix(pr, &v);
        let direct = pullback(&matmul(&g, &h), &l).unwrap();
        let composed = pullback(&h, &pullback(&g, &l).unwrap()).unwrap();
        prop_assert_eq!(direct, composed);
    }

    #[test]
    fn phi_is_a_ring_homomorphism((pr, xs) in params_and_orders(2), n in -1000i64..1000) {
        let map = ChernMap::new(pr);
        let k = map.field();
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert_eq!(map.phi(&(x + y)), k.add(&map.phi(x), &map.phi(y)));
        prop_assert_eq!(map.phi(&(x * y)), k.mul(&map.phi(x), &map.phi(y)));
        prop_assert_eq!(map.phi(&x.conj()), k.frobenius(&map.phi(x)));
        prop_assert_eq!(Some(map.phi(x)), map.phi_quat(&x.to_quat()));
        let phi_x = map.phi(x);
        if !k.is_zero(&phi_x) {
            let nrd = reduce_big(&x.nrd(), pr.p);
            prop_assert_eq!(k.frobenius(&phi_x), k.scale(nrd, &k.inv(&phi_x).unwrap()));
        }
        let int = OrderElement::from_ints(pr, [n, 0, 0, 0]);
        prop_assert_eq!(map.phi(&int), k.from_i128(n as i128));
    }

    #[test]
    fn c1_is_linear_on_coordinates(pr in params(), v in coords()) {
        let map = ChernMap::new(pr);
        let residue = v.0.clone().map(|c| reduce_big(&c, pr.p));
        prop_assert_eq!(map.c1(&coords_to_matrix(pr, &v)), map.matrix().apply(&residue));
    }
}

#[test]
fn kernel_is_galois_invariant() {
    for p in PRIMES {
        let pr = AlgebraParams::find(p).unwrap();
        let plus = ChernMap::with_convention(pr, TConvention::AlphaIsT).kernel();
        let minus = ChernMap::with_convention(pr, TConvention::AlphaIsMinusT).kernel();
        assert_eq!(plus, minus, "p = {p}");
    }
}

#[test]
fn found_params_satisfy_invariants_by_enumeration() {
    for p in (3..400u64).filter(|&n| (2..n).all(|d| n % d != 0)) {
        let pr = AlgebraParams::find(p).unwrap();
        let (q, a) = (pr.q, pr.a);
        assert!((2..q).all(|d| q % d != 0));
        assert_eq!(q % 8, 3);
        assert_ne!(q, p);
        let minus_q = (p - q % p) % p;
        assert!(
            (0..p).all(|x| x * x % p != minus_q),
            "-q is a square mod {p}"
        );
        assert_eq!((a * a + p) % q, 0);
    }
}
