use nccr_core::cohengine::Side;
use nccr_core::mutation::{
    euler_sequence, line_modules_agree, mutate_step, orbit_check, recursion_check, restart, MutationState,
    ModuleLabel,
};

#[test]
fn kernels_from_both_ends() {
    for n in 2..=4 {
        for side in [Side::Y, Side::YPlus] {
            assert!(recursion_check(n, side, 6).unwrap(), "n={n} {side:?}");
        }
    }
}

#[test]
fn line_modules_match_trace_ring() {
    for n in 2..=4 {
        assert!(line_modules_agree(n, 5).unwrap());
    }
}

#[test]
fn rank_three_orbit() {
    let r = orbit_check(3, 6).unwrap();
    assert!(r.pass);
    let path: Vec<_> = r.steps.iter().map(|s| (s.from, s.to)).collect();
    assert_eq!(
        path,
        [
            (ModuleLabel::M(2), ModuleLabel::L(1)),
            (ModuleLabel::L(1), ModuleLabel::M(-1)),
            (ModuleLabel::M(-1), ModuleLabel::LPlus(1)),
            (ModuleLabel::LPlus(1), ModuleLabel::M(2)),
        ]
    );
}

#[test]
fn first_step_records_approximation() {
    let s = MutationState::start(4).unwrap();
    let (next, rec) = mutate_step(&s, 3).unwrap();
    assert_eq!(next.k, 2);
    assert_eq!(rec.approximation_term.label, ModuleLabel::M(2));
    assert_eq!(rec.approximation_term.multiplicity, 4);
    assert!(rec.exact);
}

#[test]
fn ascending_sequence_starts_at_minus_one() {
    let s = euler_sequence(3, Side::Y).unwrap();
    let labels: Vec<_> = s.iter().map(|t| t.label).collect();
    assert_eq!(labels, [ModuleLabel::M(-1), ModuleLabel::M(0), ModuleLabel::M(1), ModuleLabel::M(2)]);
    let mut st = MutationState::start(3).unwrap();
    for _ in 0..2 {
        st = mutate_step(&st, 2).unwrap().0;
    }
    assert!(restart(&st).is_ok());
}
