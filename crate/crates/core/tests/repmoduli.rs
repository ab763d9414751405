use nccr_core::repmoduli::{
    check_relations, dual_rep, is_simple, isomorphic, rep_from_triple, to_point, triple_from_rep, Rep, RelationCheck,
    RepTriple,
};
use nccr_core::{Field, Gf, Q};
use proptest::prelude::*;

/// `(α, β)` with `β` built orthogonal to `α` from the entries of `γ`.
fn triple<F: Field>(alpha: &[i64], gamma: &[i64]) -> Option<RepTriple<F>> {
    let p = alpha.iter().position(|&x| x != 0)?;
    let lift = |v: &[i64]| v.iter().map(|&x| F::from_i64(x)).collect::<Vec<F>>();
    let a = lift(alpha);
    let mut b = lift(gamma);
    let rest = (0..a.len())
        .filter(|&i| i != p)
        .fold(F::zero(), |acc, i| acc + a[i].clone() * b[i].clone());
    b[p] = F::zero() - rest / a[p].clone();
    RepTriple::new(a, b).ok()
}

fn rescale<F: Field>(r: &Rep<F>, d: &[i64]) -> Rep<F> {
    let mut out = r.clone();
    let d: Vec<F> = d.iter().map(|&x| F::from_i64(x)).collect();
    for k in 0..r.n {
        for i in 0..r.n {
            if k + 1 < r.n {
                out.f[k][i] = d[k + 1].clone() * r.f[k][i].clone() / d[k].clone();
            }
            if k >= 1 {
                out.v[k][i] = d[k - 1].clone() * r.v[k][i].clone() / d[k].clone();
            }
        }
    }
    out
}

fn properties<F: Field>(alpha: &[i64], gamma: &[i64], d: &[i64]) -> Result<(), TestCaseError> {
    let Some(t) = triple::<F>(alpha, gamma) else { return Ok(()) };
    let r = rep_from_triple(&t);
    let p = to_point(&t);
    let beta_nonzero = t.beta.iter().any(|x| !x.is_zero());
    prop_assert_eq!(check_relations(&r), RelationCheck::Pass);
    prop_assert_eq!(is_simple(&r), beta_nonzero);
    prop_assert_eq!(p.rank_x() == 1, beta_nonzero);
    prop_assert!(p.x_squared_is_zero());
    prop_assert!(p.image_in_line());
    prop_assert_eq!(&triple_from_rep(&r).unwrap(), &t);
    prop_assert_eq!(dual_rep(&dual_rep(&r)), r.clone());
    prop_assert_eq!(check_relations(&dual_rep(&r)), RelationCheck::Pass);
    if beta_nonzero {
        let swapped = RepTriple::new(t.beta.clone(), t.alpha.clone()).unwrap();
        prop_assert_eq!(to_point(&swapped).x, p.x.transpose());
    }
    prop_assert!(isomorphic(&r, &rescale(&r, d)));
    Ok(())
}

fn case() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>)> {
    (2usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec(-4i64..=4, n),
            proptest::collection::vec(-4i64..=4, n),
            proptest::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], n),
        )
    })
}

proptest! {
    #[test]
    fn triples_over_q((a, g, d) in case()) {
        properties::<Q>(&a, &g, &d)?;
    }

    #[test]
    fn triples_over_fp((a, g, d) in case()) {
        properties::<Gf>(&a, &g, &d)?;
    }
}

#[test]
fn different_lines_not_isomorphic() {
    let q = |v: &[i64]| v.iter().map(|&x| Q::from_i64(x)).collect::<Vec<_>>();
    let r1 = rep_from_triple(&RepTriple::new(q(&[1, 0, 0]), q(&[0, 1, 0])).unwrap());
    let r2 = rep_from_triple(&RepTriple::new(q(&[0, 1, 0]), q(&[1, 0, 0])).unwrap());
    assert!(!isomorphic(&r1, &r2));
}
