use nccr_core::linalg::{sparse_from_entries, FractionFreeEchelon};
use nccr_core::quiveralg::{enumerate_paths, graded_dim, relation_instances, Quiver};
use num_bigint::BigInt;
use std::collections::HashMap;

fn full_rank(q: &Quiver, a: usize, b: usize, len: usize) -> usize {
    let paths = enumerate_paths(q, a, b, len);
    let index: HashMap<_, _> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut e = FractionFreeEchelon::new();
    for c in relation_instances(q, a, b, len) {
        let v = sparse_from_entries(c.iter().map(|(k, w)| (index[&w.arrows], BigInt::from(*k))));
        if !v.is_empty() {
            e.insert(v);
        }
    }
    e.rank()
}

#[test]
fn union_find_matches_full_elimination() {
    for n in 2..=3 {
        let q = Quiver::new(n).unwrap();
        for a in 0..n {
            for b in 0..n {
                for len in 0..=5 {
                    let cell = graded_dim(&q, a, b, len);
                    assert_eq!(cell.relation_rank, full_rank(&q, a, b, len), "n={n} ({a},{b},{len})");
                }
            }
        }
    }
}

#[test]
fn reversal_symmetry() {
    for n in 2..=4 {
        let q = Quiver::new(n).unwrap();
        for a in 0..n {
            for b in 0..n {
                for len in 0..=4 {
                    let d = graded_dim(&q, a, b, len).dim;
                    assert_eq!(d, graded_dim(&q, b, a, len).dim);
                    assert_eq!(d, graded_dim(&q, n - 1 - a, n - 1 - b, len).dim);
                }
            }
        }
    }
}
