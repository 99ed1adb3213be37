mod common;

use common::*;
use etalink::algebra::{Cyclotomic, LaurentPoly, Matrix, RootOfUnity};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn random_cyclotomic<R: Rng>(order: u32, r: &mut R) -> Cyclotomic {
    let c: Vec<i64> = (0..order).map(|_| r.random_range(-3..=3)).collect();
    Cyclotomic::from_int_coeffs(order, &c)
}

fn random_laurent<R: Rng>(nvars: usize, r: &mut R) -> LaurentPoly {
    let terms = (0..r.random_range(0..4)).map(|_| {
        let e: Vec<i32> = (0..nvars).map(|_| r.random_range(-2..=2)).collect();
        (e, BigInt::from(r.random_range(-3..=3)))
    });
    LaurentPoly::from_terms(nvars, terms.collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cyclotomic_field_operations(seed in any::<u64>(), oi in 0usize..5) {
        let mut r = rng(seed);
        let order = [3u32, 4, 8, 12, 15][oi];
        let (a, b) = (random_cyclotomic(order, &mut r), random_cyclotomic(order, &mut r));
        let prod = &a * &b;
        if !b.is_zero() {
            prop_assert_eq!(&(&prod / &b), &a);
        }
        prop_assert_eq!(prod.conj(), &a.conj() * &b.conj());
        let (ca, cb, cp) = (a.to_complex(), b.to_complex(), prod.to_complex());
        prop_assert!((ca * cb - cp).norm() < 1e-9 * (1.0 + cp.norm()));
    }

    #[test]
    fn cyclotomic_determinants_agree(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let m = Matrix::from_fn(n, n, |_, _| random_cyclotomic(8, &mut r));
        prop_assert_eq!(m.det_cofactor(), m.det_bareiss());
    }

    #[test]
    fn laurent_determinants_agree(seed in any::<u64>(), n in 1usize..5, nvars in 1usize..3) {
        let mut r = rng(seed);
        let m = Matrix::from_fn(n, n, |_, _| random_laurent(nvars, &mut r));
        prop_assert_eq!(m.det_cofactor(), m.det_bareiss());
    }

    #[test]
    fn alexander_polynomial_evaluates_to_twisted_determinant(seed in any::<u64>(), plus in any::<bool>(), m in 1usize..3) {
        let mut r = rng(seed);
        let a = random_seifert(if plus { 1 } else { -1 }, m, 2, &mut r);
        let zs: Vec<RootOfUnity> = (0..m).map(|_| random_root(&mut r)).collect();
        let delta = a.alexander();
        // det(A Z - A^t) directly over the cyclotomic field
        let n = a.dim();
        let direct = Matrix::from_fn(n, n, |i, j| {
            let zc = zs[a.component_of(j)].to_cyclotomic();
            &zc.scale_int(a.entries()[(i, j)]) - &int(a.entries()[(j, i)])
        });
        prop_assert_eq!(delta.eval_roots(&zs), direct.det_bareiss());
    }
}
