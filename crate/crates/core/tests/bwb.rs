use nccr_core::bwb::{
    cohomology, euler_line_bundle, hom_bundle, line_bundle, omega, sym_tangent, wedge_tangent, BundleExpr,
};
use nccr_core::combinat::{lr_product, weyl_dim, Partition};
use proptest::prelude::*;

fn partition(max_len: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn serre(e: &BundleExpr) -> bool {
    let n = e.n();
    cohomology(e) == cohomology(&e.dual().twist(-(n as i64))).reversed(n - 1)
}

proptest! {
    #[test]
    fn lr_dimensions_multiply(l in partition(3, 3), m in partition(3, 3), rows in 3usize..=5) {
        let dim = |p: &Partition| weyl_dim(rows, &p.padded(rows)).unwrap();
        prop_assume!(l.length() <= rows && m.length() <= rows);
        let total: u64 = lr_product(&l, &m)
            .truncate_rows(rows)
            .terms
            .iter()
            .map(|(nu, c)| c * dim(nu))
            .sum();
        prop_assert_eq!(total, dim(&l) * dim(&m));
    }

    #[test]
    fn lr_commutes(l in partition(3, 4), m in partition(3, 4)) {
        prop_assert_eq!(lr_product(&l, &m), lr_product(&m, &l));
    }

    #[test]
    fn serre_duality(n in 2usize..=5, p in 0i64..5, t in -8i64..=8, m in 0u32..=3) {
        prop_assume!(p < n as i64);
        let e = omega(n, p, 0).unwrap().tensor(&sym_tangent(n, m, t).unwrap());
        prop_assert!(serre(&e));
        prop_assert!(serre(&wedge_tangent(n, p, t).unwrap()));
    }

    #[test]
    fn hom_bundle_is_hom(n in 2usize..=5, a in 1i64..=5, b in 1i64..=5, c in -6i64..=6) {
        prop_assume!(a <= n as i64 && b <= n as i64);
        let direct = omega(n, b - 1, b).unwrap().dual().tensor(&omega(n, a - 1, a).unwrap()).twist(-c);
        prop_assert_eq!(cohomology(&hom_bundle(a, b, c, n).unwrap()), cohomology(&direct));
    }

    #[test]
    fn line_bundle_euler(n in 2usize..=6, t in -12i64..=12) {
        let e = cohomology(&line_bundle(n, t).unwrap());
        prop_assert_eq!(e.euler_characteristic(), euler_line_bundle(n, t));
        prop_assert!(e.entries().len() <= 1);
    }
}

#[test]
fn euler_sequence_ranks() {
    for n in 2..=6usize {
        for p in 1..n as i64 {
            // 0 -> Ω^p -> Λ^p V ⊗ O(-p) -> Ω^{p-1} -> 0
            let lhs = omega(n, p, 0).unwrap().rank() + omega(n, p - 1, 0).unwrap().rank();
            assert_eq!(lhs as u64, nccr_core::combinat::dim_wedge(n, p));
        }
    }
}

#[test]
fn sections_of_tangent() {
    for n in 2..=6usize {
        let t = cohomology(&wedge_tangent(n, 1, 0).unwrap());
        assert_eq!(t.get(0), (n * n - 1) as i64);
        assert!(t.higher_vanishes());
    }
}
