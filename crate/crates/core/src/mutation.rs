//! Label-level bookkeeping for iterated Iyama–Wemyss mutations at
//! `W = M_0 ⊕ ... ⊕ M_{n-2}`.
//!
//! On `Y⁺` the module `M_a` is the pushforward of `O(-a)` and
//! `L_k = φ⁺_* π'^* Ω^k(1)`; the twisted Euler sequences
//! `0 -> L_k -> Λ^k V ⊗ M_{k-1} -> L_{k-1} -> 0` splice into the long
//! sequence from `M_{n-1}` to `M_{-1}`. On `Y`, `M_a` is `O(a)` and
//! `L⁺_j = φ_* π^* Ω^j(n-1)` runs back from `M_{-1}` to `M_{n-1}`.
//! Hilbert series are graded by fibre degree: the degree `m` piece of the
//! pushforward of `E` is `H^0(E ⊗ Sym^m T)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bwb::{cohomology, line_bundle, omega, sym_tangent, wedge_tangent, BundleExpr};
use crate::cohengine::{hilbert_M, hilbert_fiber, nccr_rank, tilting_check, Family, FamilyName, GradedDims, Side};
use crate::combinat::dim_wedge;
use crate::error::{check_range, check_rank, Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ModuleLabel {
    M(i64),
    /// Kernel of the descending chain, on `Y⁺`.
    L(usize),
    /// Kernel of the ascending chain, on `Y`.
    LPlus(usize),
    /// `φ⁺_*(π'^* Λ^k T ⊗ O(-1))`, the dual of `L(k)`.
    WedgeT(usize),
}

impl fmt::Debug for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::M(a) => write!(f, "M({a})"),
            ModuleLabel::L(k) => write!(f, "L({k})"),
            ModuleLabel::LPlus(k) => write!(f, "L+({k})"),
            ModuleLabel::WedgeT(k) => write!(f, "WedgeT({k})"),
        }
    }
}

impl ModuleLabel {
    /// Replaces end-of-chain kernels by the `M` they coincide with.
    pub fn normalized(self, n: usize) -> ModuleLabel {
        let top = n - 1;
        match self {
            ModuleLabel::L(k) if k == top => ModuleLabel::M(top as i64),
            ModuleLabel::L(0) => ModuleLabel::M(-1),
            ModuleLabel::LPlus(k) if k == top => ModuleLabel::M(-1),
            ModuleLabel::LPlus(0) => ModuleLabel::M(top as i64),
            ModuleLabel::WedgeT(0) => ModuleLabel::M(1),
            ModuleLabel::WedgeT(k) if k == top => ModuleLabel::M(-(top as i64)),
            l => l,
        }
    }

    fn validate(self, n: usize) -> Result<()> {
        let top = n as i64 - 1;
        match self {
            ModuleLabel::M(a) => check_range("a", a, -top, top),
            ModuleLabel::L(k) | ModuleLabel::LPlus(k) | ModuleLabel::WedgeT(k) => {
                check_range("k", k as i64, 0, top)
            }
        }
    }
}

/// The bundle on the base of `side` whose pushforward is the module.
pub fn bundle_of(label: ModuleLabel, side: Side, n: usize) -> Result<BundleExpr> {
    check_rank(n)?;
    label.validate(n)?;
    match (label, side) {
        (ModuleLabel::M(a), Side::Y) => line_bundle(n, a),
        (ModuleLabel::M(a), Side::YPlus) => line_bundle(n, -a),
        (ModuleLabel::L(k), Side::YPlus) => omega(n, k as i64, 1),
        (ModuleLabel::WedgeT(k), Side::YPlus) => wedge_tangent(n, k as i64, -1),
        (ModuleLabel::LPlus(j), Side::Y) => omega(n, j as i64, n as i64 - 1),
        (l, s) => Err(Error::Mutation(format!("{l:?} does not live on {s:?}"))),
    }
}

/// `m ↦ h^0(E ⊗ Sym^m T)`, `m <= cap`; errors if higher cohomology appears.
pub fn fiber_hilbert(label: ModuleLabel, side: Side, n: usize, cap: usize) -> Result<GradedDims> {
    let e = bundle_of(label, side, n)?;
    let mut dims = Vec::with_capacity(cap + 1);
    for m in 0..=cap {
        let t = cohomology(&e.tensor(&sym_tangent(n, m as u32, 0)?));
        if !t.higher_vanishes() {
            return Err(Error::Mutation(format!(
                "{label:?} on {side:?} has higher cohomology in fibre degree {m}"
            )));
        }
        dims.push(t.get(0) as u64);
    }
    Ok(GradedDims { dims })
}

fn home_side(label: ModuleLabel) -> Side {
    match label {
        ModuleLabel::LPlus(_) => Side::Y,
        _ => Side::YPlus,
    }
}

/// `M(a)` by the trace-ring count, kernels by the fibre grading of their home side.
pub fn hilbert_of_label(label: ModuleLabel, n: usize, cap: usize) -> Result<GradedDims> {
    match label {
        ModuleLabel::M(a) => hilbert_M(a, n, cap),
        l => fiber_hilbert(l, home_side(l), n, cap),
    }
}

/// Hilbert data with the grading shift removed, `cap + 1` entries.
pub fn normalized_hilbert(label: ModuleLabel, n: usize, cap: usize) -> Result<GradedDims> {
    let first = hilbert_of_label(label, n, cap)?;
    let zeros = first.dims.iter().take_while(|&&d| d == 0).count();
    if zeros == 0 {
        return Ok(first);
    }
    let raw = hilbert_of_label(label, n, cap + zeros)?.normalized();
    if raw.dims.len() <= cap {
        return Err(Error::Mutation(format!("{label:?} vanishes below degree {}", cap + zeros)));
    }
    Ok(raw.truncated(cap))
}

/// `Λ^wedge V ⊗ label`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerTerm {
    pub wedge: usize,
    pub multiplicity: u64,
    pub label: ModuleLabel,
}

/// Nonzero terms of the long Euler sequence, left to right.
pub fn euler_sequence(n: usize, side: Side) -> Result<Vec<EulerTerm>> {
    check_rank(n)?;
    let top = n as i64 - 1;
    let term = |wedge: usize, label| EulerTerm {
        wedge,
        multiplicity: dim_wedge(n, wedge as i64),
        label,
    };
    let (first, last) = match side {
        Side::YPlus => (ModuleLabel::M(top), ModuleLabel::M(-1)),
        Side::Y => (ModuleLabel::M(-1), ModuleLabel::M(top)),
    };
    let mut out = vec![term(0, first)];
    for k in (1..n).rev() {
        let a = match side {
            Side::YPlus => k as i64 - 1,
            Side::Y => top - k as i64,
        };
        out.push(term(k, ModuleLabel::M(a)));
    }
    out.push(term(0, last));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chain {
    /// `E_{n-1} -> E_0` on `Y⁺`.
    Descending,
    /// `E⁺_{n-1} -> E⁺_0` on `Y`.
    Ascending,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationState {
    pub n: usize,
    pub chain: Chain,
    /// Index of the kernel currently mutated.
    pub k: usize,
    pub step: usize,
}

impl MutationState {
    pub fn start(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(MutationState {
            n,
            chain: Chain::Descending,
            k: n - 1,
            step: 0,
        })
    }

    /// The non-`W` summand, before normalization.
    pub fn kernel(&self) -> ModuleLabel {
        match self.chain {
            Chain::Descending => ModuleLabel::L(self.k),
            Chain::Ascending => ModuleLabel::LPlus(self.k),
        }
    }

    pub fn summands(&self) -> BTreeMap<ModuleLabel, u32> {
        let mut out: BTreeMap<ModuleLabel, u32> = (0..self.n as i64 - 1).map(|a| (ModuleLabel::M(a), 1)).collect();
        *out.entry(self.kernel().normalized(self.n)).or_insert(0) += 1;
        out
    }

    /// Normalized Hilbert data of every summand, the kernel computed from its bundle.
    pub fn hilbert_data(&self, cap: usize) -> Result<Vec<(ModuleLabel, Vec<u64>)>> {
        let mut out: Vec<_> = (0..self.n as i64 - 1)
            .map(|a| Ok((ModuleLabel::M(a), normalized_hilbert(ModuleLabel::M(a), self.n, cap)?.dims)))
            .collect::<Result<_>>()?;
        let kernel = self.kernel();
        let dims = normalized_hilbert(kernel, self.n, cap)?.dims;
        out.push((kernel.normalized(self.n), dims));
        out.sort();
        Ok(out)
    }

    fn side(&self) -> Side {
        match self.chain {
            Chain::Descending => Side::YPlus,
            Chain::Ascending => Side::Y,
        }
    }

    /// `M` term of the splice `0 -> K_k -> Λ^k V ⊗ M -> K_{k-1} -> 0`.
    fn middle(&self) -> ModuleLabel {
        match self.chain {
            Chain::Descending => ModuleLabel::M(self.k as i64 - 1),
            Chain::Ascending => ModuleLabel::M(self.n as i64 - 1 - self.k as i64),
        }
    }
}

/// Splice used by a step, with its degreewise exactness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub k: usize,
    pub from: ModuleLabel,
    pub to: ModuleLabel,
    /// The approximation `Λ^k V ⊗ M ⊕ W`, listed by its first term.
    pub approximation_term: EulerTerm,
    pub summands: BTreeMap<ModuleLabel, u32>,
    /// `(degree, kernel, middle, cokernel)` dimensions in fibre grading.
    pub degrees: Vec<(usize, u64, u64, u64)>,
    pub exact: bool,
}

fn splice_record(s: &MutationState, next: &MutationState, cap: usize) -> Result<StepRecord> {
    let n = s.n;
    let side = s.side();
    let middle = s.middle();
    let mult = dim_wedge(n, s.k as i64);
    let ker = fiber_hilbert(s.kernel(), side, n, cap)?;
    let mid = fiber_hilbert(middle, side, n, cap)?;
    let coker = fiber_hilbert(next.kernel(), side, n, cap)?;
    let degrees: Vec<_> = (0..=cap)
        .map(|m| (m, ker.get(m), mult * mid.get(m), coker.get(m)))
        .collect();
    let exact = degrees.iter().all(|&(_, a, b, c)| a + c == b);
    Ok(StepRecord {
        k: s.k,
        from: s.kernel().normalized(n),
        to: next.kernel().normalized(n),
        approximation_term: EulerTerm {
            wedge: s.k,
            multiplicity: mult,
            label: middle,
        },
        summands: next.summands(),
        degrees,
        exact,
    })
}

/// One mutation `E_k -> E_{k-1}` with the splice that realizes it.
pub fn mutate_step(s: &MutationState, cap: usize) -> Result<(MutationState, StepRecord)> {
    if s.k == 0 {
        return Err(Error::Mutation("chain already at E_0; restart the opposite chain".into()));
    }
    let next = MutationState {
        k: s.k - 1,
        step: s.step + 1,
        ..s.clone()
    };
    let record = splice_record(s, &next, cap)?;
    Ok((next, record))
}

/// Relabels the descending endpoint `E_0` as the ascending start `E⁺_{n-1}`.
pub fn restart(s: &MutationState) -> Result<MutationState> {
    if s.chain != Chain::Descending || s.k != 0 {
        return Err(Error::Mutation("only the end of the descending chain restarts".into()));
    }
    Ok(MutationState {
        chain: Chain::Ascending,
        k: s.n - 1,
        ..s.clone()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub n: usize,
    pub cap: usize,
    pub steps: Vec<StepRecord>,
    /// Multiset after `n - 1` steps is `W ⊕ M(-1)`.
    pub half_orbit_is_nu: bool,
    pub summands_return: bool,
    pub hilbert_return: bool,
    /// Normalized Hilbert data of each intermediate kernel matches the start or end `M`.
    pub hilbert_consistent: bool,
    pub all_exact: bool,
    pub pass: bool,
}

/// Runs `n - 1` descending and `n - 1` ascending steps from `E_{n-1}`.
pub fn orbit_check(n: usize, cap: usize) -> Result<OrbitReport> {
    check_rank(n)?;
    let start = MutationState::start(n)?;
    let start_data = start.hilbert_data(cap)?;
    let mut s = start.clone();
    let mut steps = Vec::new();
    let mut hilbert_consistent = true;
    let mut half_orbit_is_nu = false;
    for _ in 0..2 * (n - 1) {
        if s.k == 0 {
            let mut expected = start.summands();
            expected.remove(&ModuleLabel::M(n as i64 - 1));
            expected.insert(ModuleLabel::M(-1), 1);
            half_orbit_is_nu = s.summands() == expected;
            s = restart(&s)?;
        }
        let (next, record) = mutate_step(&s, cap)?;
        steps.push(record);
        s = next;
        let kernel = s.kernel();
        if kernel.normalized(n) != kernel {
            hilbert_consistent &=
                normalized_hilbert(kernel, n, cap)? == normalized_hilbert(kernel.normalized(n), n, cap)?;
        }
    }
    let summands_return = s.summands() == start.summands();
    let hilbert_return = s.hilbert_data(cap)? == start_data;
    let all_exact = steps.iter().all(|r| r.exact);
    let pass = half_orbit_is_nu && summands_return && hilbert_return && hilbert_consistent && all_exact;
    Ok(OrbitReport {
        n,
        cap,
        steps,
        half_orbit_is_nu,
        summands_return,
        hilbert_return,
        hilbert_consistent,
        all_exact,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointReport {
    pub n: usize,
    /// `(k, tilting check passed, rank)` for each `E_k`.
    pub intermediate: Vec<(usize, bool, u64)>,
    pub endpoint_ranks: (u64, u64),
    pub pass: bool,
}

/// Each `E_k` corresponds to the bundle `S_k`; checks those are tilting and
/// that both endpoints have rank `2n`.
pub fn endpoint_algebra_check(n: usize) -> Result<EndpointReport> {
    check_rank(n)?;
    let mut intermediate = Vec::new();
    for k in 0..n {
        let family = Family::new(FamilyName::Sk, n, k as i64)?;
        intermediate.push((k, tilting_check(&family).pass, nccr_rank(&family)));
    }
    let endpoint_ranks = (intermediate[n - 1].2, intermediate[0].2);
    let pass = intermediate.iter().all(|x| x.1) && endpoint_ranks == (2 * n as u64, 2 * n as u64);
    Ok(EndpointReport {
        n,
        intermediate,
        endpoint_ranks,
        pass,
    })
}

/// Kernel Hilbert series forced by the splices from each end of the long
/// sequence, compared with the values computed from the bundles.
pub fn recursion_check(n: usize, side: Side, cap: usize) -> Result<bool> {
    check_rank(n)?;
    let seq = euler_sequence(n, side)?;
    let series = |l| -> Result<Vec<i128>> {
        Ok(fiber_hilbert(l, side, n, cap)?.dims.into_iter().map(i128::from).collect())
    };
    // seq[i], 1 <= i <= n - 1, is the middle of the splice with kernel index n - i
    let middles: Vec<Vec<i128>> = seq[1..n]
        .iter()
        .map(|t| Ok(series(t.label)?.into_iter().map(|x| x * t.multiplicity as i128).collect()))
        .collect::<Result<_>>()?;
    let kernel = |k: usize| match side {
        Side::YPlus => ModuleLabel::L(k),
        Side::Y => ModuleLabel::LPlus(k),
    };
    let direct: Vec<Vec<i128>> = (0..n).map(|k| series(kernel(k))).collect::<Result<_>>()?;
    let sub = |a: &[i128], b: &[i128]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>();

    let mut from_top = vec![Vec::new(); n];
    from_top[n - 1] = series(seq[0].label)?;
    for k in (1..n).rev() {
        from_top[k - 1] = sub(&middles[n - 1 - k], &from_top[k]);
    }
    let mut from_bottom = vec![Vec::new(); n];
    from_bottom[0] = series(seq[n].label)?;
    for k in 1..n {
        from_bottom[k] = sub(&middles[n - 1 - k], &from_bottom[k - 1]);
    }
    Ok(from_top == direct && from_bottom == direct)
}

/// `M(a)` on `side` from its bundle agrees with the trace-ring computation.
pub fn line_modules_agree(n: usize, cap: usize) -> Result<bool> {
    let top = n as i64 - 1;
    for side in [Side::Y, Side::YPlus] {
        for a in -top..=top {
            let direct = fiber_hilbert(ModuleLabel::M(a), side, n, cap)?;
            let twist = if side == Side::Y { a } else { -a };
            if direct != hilbert_fiber(side, twist, n, cap)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_sequence_shape() {
        let s = euler_sequence(2, Side::YPlus).unwrap();
        let labels: Vec<_> = s.iter().map(|t| t.label).collect();
        assert_eq!(labels, [ModuleLabel::M(1), ModuleLabel::M(0), ModuleLabel::M(-1)]);
        assert_eq!(s[1].multiplicity, 2);
        for n in 2..=6 {
            for side in [Side::Y, Side::YPlus] {
                let s = euler_sequence(n, side).unwrap();
                assert_eq!(s.len(), n + 1);
                let total: u64 = s[1..n].iter().map(|t| t.multiplicity).sum();
                assert_eq!(total, (1 << n) - 2);
            }
        }
    }

    #[test]
    fn step_from_e0_rejected() {
        let s = MutationState {
            n: 3,
            chain: Chain::Descending,
            k: 0,
            step: 2,
        };
        assert!(mutate_step(&s, 3).is_err());
        assert!(restart(&MutationState::start(3).unwrap()).is_err());
    }

    #[test]
    fn wedge_t_ends() {
        for n in 2..=5 {
            let top = n - 1;
            assert_eq!(
                normalized_hilbert(ModuleLabel::WedgeT(0), n, 4).unwrap(),
                normalized_hilbert(ModuleLabel::M(1), n, 4).unwrap()
            );
            assert_eq!(
                normalized_hilbert(ModuleLabel::WedgeT(top), n, 4).unwrap(),
                normalized_hilbert(ModuleLabel::M(-(top as i64)), n, 4).unwrap()
            );
        }
    }

    #[test]
    fn orbit_closes() {
        for n in 3..=4 {
            let r = orbit_check(n, 4).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.steps.len(), 2 * n - 2);
        }
    }

    #[test]
    fn endpoints() {
        let r = endpoint_algebra_check(3).unwrap();
        assert!(r.pass);
        assert_eq!(r.endpoint_ranks, (6, 6));
    }

    #[test]
    fn kernels_forced_from_both_ends() {
        for n in 2..=4 {
            assert!(recursion_check(n, Side::YPlus, 4).unwrap());
            assert!(recursion_check(n, Side::Y, 4).unwrap());
        }
    }

    #[test]
    fn bundles_match_trace_route() {
        assert!(line_modules_agree(3, 5).unwrap());
    }
}
