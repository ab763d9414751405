use nccr_core::bwb::line_bundle;
use nccr_core::cohengine::Side;
use nccr_core::kfunctor::{flop_flop_check, kclass_of_bundle, reduce_line, twist_intertwines};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// `[O(a)] = Σ_i ℓ_i(a) [O(i)]` with `ℓ_i` the Lagrange basis on `0..n`.
fn lagrange(a: i64, n: usize) -> Vec<BigInt> {
    (0..n as i64)
        .map(|i| {
            let mut num = BigInt::from(1);
            let mut den = BigInt::from(1);
            for j in (0..n as i64).filter(|&j| j != i) {
                num *= a - j;
                den *= i - j;
            }
            let r = BigRational::new(num, den);
            assert!(r.is_integer());
            r.to_integer()
        })
        .collect()
}

proptest! {
    #[test]
    fn reduce_line_is_lagrange(n in 2usize..=7, a in -20i64..=20) {
        prop_assert_eq!(reduce_line(a, n).coords, lagrange(a, n));
    }

    #[test]
    fn bundle_class_of_line(n in 2usize..=5, a in -6i64..=6) {
        prop_assert_eq!(kclass_of_bundle(&line_bundle(n, a).unwrap(), Side::Y), reduce_line(a, n));
    }

    #[test]
    fn flop_flop_and_twists(n in 2usize..=5, k in -6i64..=6) {
        prop_assert!(flop_flop_check(k, n).unwrap().is_identity);
        prop_assert!(twist_intertwines(k, n).unwrap());
    }
}
