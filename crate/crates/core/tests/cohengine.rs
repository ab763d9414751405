use nccr_core::cohengine::{
    hilbert_M, hom_y_graded, hom_y_graded_side, hom_z_graded, trace_mult_matrix, Family, FamilyName, Side,
    tilting_check,
};

#[test]
fn hilbert_symmetric_under_negation() {
    for n in 2..=4usize {
        let top = n as i64 - 1;
        for a in -top..=top {
            assert_eq!(hilbert_M(a, n, 4).unwrap(), hilbert_M(-a, n, 4).unwrap(), "n={n} a={a}");
        }
    }
}

#[test]
fn sides_agree() {
    for n in 2..=4usize {
        let top = n as i64 - 1;
        for a in 0..=top {
            for b in 0..=top {
                assert_eq!(
                    hom_y_graded(a, b, n, 3).unwrap(),
                    hom_y_graded_side(Side::YPlus, a, b, n, 3).unwrap()
                );
            }
        }
    }
}

#[test]
fn trace_is_injective() {
    for n in 2..=4usize {
        for shift in -(n as i64) + 1..n as i64 {
            for k in 0..3 {
                let m = trace_mult_matrix(n, k, shift);
                assert_eq!(m.rank(), m.cols, "n={n} shift={shift} k={k}");
            }
        }
    }
}

#[test]
fn y_is_cokernel_of_trace() {
    for n in 2..=3usize {
        let z = hom_z_graded(0, 1, n, 4).unwrap();
        let y = hom_y_graded(0, 1, n, 4).unwrap();
        for k in 1..=4 {
            assert_eq!(y.get(k), z.get(k) - z.get(k - 1), "n={n} k={k}");
        }
    }
}

#[test]
fn window_too_wide_is_not_tilting() {
    let f = Family::new(FamilyName::Tk, 3, 0).unwrap();
    assert!(tilting_check(&f).pass);
    assert!(Family::new(FamilyName::Sk, 3, 3).is_err());
}
