use serde::Serialize;

use crate::bwb::{cohomology, cohomology_weight, line_bundle, omega, BundleExpr};
use crate::error::{check_range, check_rank, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyName {
    /// `⊕_{a=-n+k+1}^{k} O(a)` on `Y`.
    Tk,
    /// The same window on `Y⁺`.
    TkPlus,
    /// `⊕_{a=1}^{n} Ω^{a-1}(a)`.
    TPrime,
    /// `⊕_{a=-n+2}^{0} O(a) ⊕ Ω^k(1)`, `0 <= k <= n - 1`.
    Sk,
    SkDual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Family {
    pub name: FamilyName,
    pub n: usize,
    pub k: i64,
}

impl Family {
    pub fn new(name: FamilyName, n: usize, k: i64) -> Result<Self> {
        check_rank(n)?;
        if matches!(name, FamilyName::Sk | FamilyName::SkDual) {
            check_range("k", k, 0, n as i64 - 1)?;
        }
        Ok(Family { name, n, k })
    }

    /// Named summands as bundles on the base.
    pub fn summands(&self) -> Vec<(String, BundleExpr)> {
        let n = self.n as i64;
        let line = |a: i64| (format!("O({a})"), line_bundle(self.n, a).expect("n >= 2"));
        match self.name {
            FamilyName::Tk | FamilyName::TkPlus => (-n + self.k + 1..=self.k).map(line).collect(),
            FamilyName::TPrime => (1..=n)
                .map(|a| {
                    (
                        format!("Omega^{}({a})", a - 1),
                        omega(self.n, a - 1, a).expect("index in range"),
                    )
                })
                .collect(),
            FamilyName::Sk | FamilyName::SkDual => {
                let mut out: Vec<_> = (-n + 2..=0).map(line).collect();
                out.push((
                    format!("Omega^{}(1)", self.k),
                    omega(self.n, self.k, 1).expect("index in range"),
                ));
                if self.name == FamilyName::SkDual {
                    out = out
                        .into_iter()
                        .map(|(name, e)| (format!("({name})^*"), e.dual()))
                        .collect();
                }
                out
            }
        }
    }
}

/// First nonvanishing higher cohomology found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub source: String,
    pub target: String,
    pub degree: usize,
    pub twist: i64,
    pub dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TiltingReport {
    pub family: Family,
    pub pass: bool,
    pub witness: Option<Witness>,
    /// Twists `0..=bound` were checked; beyond it every constituent is dominant.
    pub stabilization_bound: i64,
    pub pairs_checked: usize,
}

/// Smallest twist from which an irreducible stays in the dominant chamber.
fn dominance_threshold(e: &BundleExpr) -> i64 {
    e.terms()
        .map(|(w, _)| (w.rest()[0] - w.first()).max(0))
        .max()
        .unwrap_or(0)
}

/// Checks `H^i(P, A^* ⊗ B ⊗ O(j)) = 0` for `i > 0`, `j >= 0`, over all summand pairs.
pub fn tilting_check(family: &Family) -> TiltingReport {
    let (witness, bound, pairs) = check_summands(&family.summands());
    TiltingReport {
        family: family.clone(),
        pass: witness.is_none(),
        witness,
        stabilization_bound: bound,
        pairs_checked: pairs,
    }
}

/// Vanishing check over an arbitrary summand list: `(witness, bound, pairs)`.
pub fn check_summands(summands: &[(String, BundleExpr)]) -> (Option<Witness>, i64, usize) {
    let mut bound = 0;
    let mut witness = None;
    let mut pairs = 0;
    'outer: for (sa, a) in summands {
        for (sb, b) in summands {
            pairs += 1;
            let e = a.dual().tensor(b);
            let threshold = dominance_threshold(&e);
            let local_bound = 2 * threshold;
            bound = bound.max(local_bound);
            for (w, _) in e.terms() {
                let top = w.twist(threshold);
                debug_assert!(cohomology_weight(&top).is_none_or(|(q, _)| q == 0));
            }
            for j in 0..=local_bound {
                let table = cohomology(&e.twist(j));
                if let Some((&q, &d)) = table.entries().iter().find(|(&q, _)| q > 0) {
                    witness = Some(Witness {
                        source: sa.clone(),
                        target: sb.clone(),
                        degree: q,
                        twist: j,
                        dim: d,
                    });
                    break 'outer;
                }
            }
        }
    }
    (witness, bound, pairs)
}

/// Rank convention: twice the total rank of the summands.
pub fn nccr_rank(family: &Family) -> u64 {
    2 * family
        .summands()
        .iter()
        .map(|(_, e)| e.rank() as u64)
        .sum::<u64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_is_tilting() {
        let r = tilting_check(&Family::new(FamilyName::Tk, 3, 0).unwrap());
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn wide_window_fails() {
        let summands = vec![
            ("O(0)".to_string(), line_bundle(3, 0).unwrap()),
            ("O(-3)".to_string(), line_bundle(3, -3).unwrap()),
        ];
        let (witness, bound, _) = check_summands(&summands);
        let w = witness.unwrap();
        assert_eq!((w.source.as_str(), w.target.as_str(), w.degree, w.twist), ("O(0)", "O(-3)", 2, 0));
        assert_eq!(bound, 6);
    }

    #[test]
    fn ranks() {
        for n in 2..=6 {
            assert_eq!(nccr_rank(&Family::new(FamilyName::Tk, n, 0).unwrap()), 2 * n as u64);
            assert_eq!(nccr_rank(&Family::new(FamilyName::TPrime, n, 0).unwrap()), 1 << n);
        }
    }

    #[test]
    fn sk_index_checked() {
        assert!(Family::new(FamilyName::Sk, 3, 3).is_err());
    }
}
