//! Homogeneous bundles on `P^{n-1}` and their cohomology.
//!
//! A bundle is a formal sum of Levi weights `(first; rest)`: `first` is the
//! `GL_1` character and `rest` a dominant `GL_{n-1}` weight. The line bundle
//! `O(t)` is `(t; 0, ..., 0)` and `Ω(1)` is `(0; 1, 0, ..., 0)`. Weights are
//! normalized so the last entry of `first ⧺ rest` is zero.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::combinat::{binomial, lr_product, weyl_dim, Partition};
use crate::error::{check_range, check_rank, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LeviWeight {
    n: usize,
    first: i64,
    rest: Vec<i64>,
}

impl LeviWeight {
    pub fn new(n: usize, first: i64, rest: Vec<i64>) -> Result<Self> {
        check_rank(n)?;
        if rest.len() != n - 1 {
            return Err(Error::Length {
                expected: n - 1,
                got: rest.len(),
            });
        }
        if rest.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(rest));
        }
        let shift = *rest.last().expect("n >= 2");
        Ok(LeviWeight {
            n,
            first: first - shift,
            rest: rest.into_iter().map(|r| r - shift).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first(&self) -> i64 {
        self.first
    }

    pub fn rest(&self) -> &[i64] {
        &self.rest
    }

    /// `first ⧺ rest`.
    pub fn full(&self) -> Vec<i64> {
        std::iter::once(self.first)
            .chain(self.rest.iter().copied())
            .collect()
    }

    pub fn rank(&self) -> u64 {
        weyl_dim(self.n - 1, &self.rest).expect("rest is dominant")
    }

    pub fn dual(&self) -> Self {
        let rest = self.rest.iter().rev().map(|r| -r).collect();
        LeviWeight::new(self.n, -self.first, rest).expect("dual of dominant is dominant")
    }

    pub fn twist(&self, t: i64) -> Self {
        LeviWeight {
            n: self.n,
            first: self.first + t,
            rest: self.rest.clone(),
        }
    }

    pub fn tensor(&self, other: &LeviWeight) -> BundleExpr {
        assert_eq!(self.n, other.n, "tensor across different projective spaces");
        let rows = self.n - 1;
        let shift_a = *self.rest.last().expect("n >= 2");
        let shift_b = *other.rest.last().expect("n >= 2");
        let to_partition = |rest: &[i64], shift: i64| {
            Partition::new(rest.iter().map(|r| (r - shift) as u32).collect()).expect("dominant")
        };
        let la = to_partition(&self.rest, shift_a);
        let lb = to_partition(&other.rest, shift_b);
        let mut out = BundleExpr::zero(self.n);
        for (nu, c) in lr_product(&la, &lb).truncate_rows(rows).terms {
            let rest = nu
                .padded(rows)
                .into_iter()
                .map(|x| x + shift_a + shift_b)
                .collect();
            let w = LeviWeight::new(self.n, self.first + other.first, rest).expect("dominant");
            out.add_weight(w, c as i64);
        }
        out
    }
}

impl fmt::Debug for LeviWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {:?})", self.first, self.rest)
    }
}

/// A virtual homogeneous bundle: integer combination of irreducibles.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct BundleExpr {
    n: usize,
    terms: BTreeMap<LeviWeight, i64>,
}

impl BundleExpr {
    pub fn zero(n: usize) -> Self {
        BundleExpr {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn irreducible(w: LeviWeight) -> Self {
        let mut e = Self::zero(w.n);
        e.add_weight(w, 1);
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_weight(&mut self, w: LeviWeight, c: i64) {
        assert_eq!(w.n, self.n);
        let slot = self.terms.entry(w.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LeviWeight, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &BundleExpr) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_weight(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in self.terms() {
            out.add_weight(w.clone(), c * k);
        }
        out
    }

    pub fn tensor(&self, other: &BundleExpr) -> Self {
        let mut out = Self::zero(self.n);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                for (w, c) in a.tensor(b).terms() {
                    out.add_weight(w.clone(), c * ca * cb);
                }
            }
        }
        out
    }

    pub fn dual(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in self.terms() {
            out.add_weight(w.dual(), c);
        }
        out
    }

    pub fn twist(&self, t: i64) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in self.terms() {
            out.add_weight(w.twist(t), c);
        }
        out
    }

    /// Virtual rank.
    pub fn rank(&self) -> i64 {
        self.terms().map(|(w, c)| c * w.rank() as i64).sum()
    }
}

impl fmt::Debug for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Cohomology dimensions by degree; zero entries are omitted.
#[derive(Clone, PartialEq, Eq, Default, Serialize)]
pub struct CohTable(BTreeMap<usize, i64>);

impl CohTable {
    pub fn new() -> Self {
        CohTable(BTreeMap::new())
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        let mut t = Self::new();
        for &(q, d) in pairs {
            t.add(q, d);
        }
        t
    }

    pub fn add(&mut self, q: usize, d: i64) {
        let slot = self.0.entry(q).or_insert(0);
        *slot += d;
        if *slot == 0 {
            self.0.remove(&q);
        }
    }

    pub fn get(&self, q: usize) -> i64 {
        self.0.get(&q).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<usize, i64> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .map(|(&q, &d)| if q % 2 == 0 { d } else { -d })
            .sum()
    }

    /// True when every degree above zero vanishes.
    pub fn higher_vanishes(&self) -> bool {
        self.0.keys().all(|&q| q == 0)
    }

    /// Degree `q` moved to `top - q`.
    pub fn reversed(&self, top: usize) -> Self {
        let mut t = Self::new();
        for (&q, &d) in &self.0 {
            t.add(top - q, d);
        }
        t
    }
}

impl fmt::Debug for CohTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

pub fn line_bundle(n: usize, t: i64) -> Result<BundleExpr> {
    check_rank(n)?;
    Ok(BundleExpr::irreducible(LeviWeight::new(n, t, vec![0; n - 1])?))
}

/// `S_λ(Ω(1)) ⊗ O(t)`; zero when `λ` has more than `n - 1` parts.
pub fn schur_of_omega1(n: usize, lambda: &Partition, t: i64) -> Result<BundleExpr> {
    check_rank(n)?;
    if lambda.length() > n - 1 {
        return Ok(BundleExpr::zero(n));
    }
    Ok(BundleExpr::irreducible(LeviWeight::new(n, t, lambda.padded(n - 1))?))
}

/// `Ω^p(t)`.
pub fn omega(n: usize, p: i64, t: i64) -> Result<BundleExpr> {
    check_rank(n)?;
    check_range("p", p, 0, n as i64 - 1)?;
    schur_of_omega1(n, &Partition::column(p as usize), t - p)
}

/// `Λ^p T ⊗ O(t)`.
pub fn wedge_tangent(n: usize, p: i64, t: i64) -> Result<BundleExpr> {
    check_rank(n)?;
    check_range("p", p, 0, n as i64 - 1)?;
    Ok(omega(n, p, 0)?.dual().twist(t))
}

/// `Sym^m T ⊗ O(t)`.
pub fn sym_tangent(n: usize, m: u32, t: i64) -> Result<BundleExpr> {
    check_rank(n)?;
    let mut rest = vec![0; n - 1];
    rest[n - 2] = -(m as i64);
    Ok(BundleExpr::irreducible(LeviWeight::new(n, m as i64 + t, rest)?))
}

/// Cohomology of one irreducible: `Some((degree, dim))` or `None` if acyclic.
pub fn cohomology_weight(w: &LeviWeight) -> Option<(usize, u64)> {
    let n = w.n;
    let shifted: Vec<i64> = w
        .full()
        .iter()
        .enumerate()
        .map(|(i, x)| x + (n - 1 - i) as i64)
        .collect();
    let mut sorted = shifted.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    let inversions = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| shifted[i] < shifted[j])
        .count();
    let dominant: Vec<i64> = sorted
        .iter()
        .enumerate()
        .map(|(i, x)| x - (n - 1 - i) as i64)
        .collect();
    Some((inversions, weyl_dim(n, &dominant).expect("sorted weight is dominant")))
}

pub fn cohomology(e: &BundleExpr) -> CohTable {
    let mut t = CohTable::new();
    for (w, c) in e.terms() {
        if let Some((q, d)) = cohomology_weight(w) {
            t.add(q, c * d as i64);
        }
    }
    t
}

/// Closed-form cohomology of `Ω^p(t)` on `P^{n-1}`.
pub fn bott_closed_form(n: usize, p: i64, t: i64) -> Result<CohTable> {
    check_rank(n)?;
    let m = n as i64 - 1;
    check_range("p", p, 0, m)?;
    let mut table = CohTable::new();
    if t > p {
        table.add(0, (binomial(t + m - p, t) * binomial(t - 1, p)) as i64);
    }
    if t == 0 {
        table.add(p as usize, 1);
    }
    if t < p - m {
        table.add(m as usize, (binomial(-t + p, -t) * binomial(-t - 1, m - p)) as i64);
    }
    Ok(table)
}

/// `χ(O(t)) = C(t + n - 1, n - 1)` as a polynomial in `t`.
pub fn euler_line_bundle(n: usize, t: i64) -> i64 {
    let r = n as i64 - 1;
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 1..=r {
        num *= (t + i) as i128;
        den *= i as i128;
    }
    (num / den) as i64
}

/// `Hom(Ω^{b-1}(b), Ω^{a-1}(a)) ⊗ O(-c)`, expanded through
/// `(Ω^{b-1}(b))^* ≅ Ω^{n-b}(n-b)`.
pub fn hom_bundle(a: i64, b: i64, c: i64, n: usize) -> Result<BundleExpr> {
    check_rank(n)?;
    let top = n as i64;
    check_range("a", a, 1, top)?;
    check_range("b", b, 1, top)?;
    let left = Partition::column((top - b) as usize);
    let right = Partition::column((a - 1) as usize);
    let rows = n - 1;
    let mut out = BundleExpr::zero(n);
    for (nu, mult) in lr_product(&left, &right).truncate_rows(rows).terms {
        let w = LeviWeight::new(n, 1 - c, nu.padded(rows))?;
        out.add_weight(w, mult as i64);
    }
    Ok(out)
}

/// Which clause of the vanishing classification admits `H^d(M_a^b(-c)) ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlvCase {
    /// No clause admits a nonzero group.
    Vanishes,
    /// `d - c > 0`: `d = 0`, `c < 0`.
    Case1,
    /// `d = c`: `c + b ∈ [max(a, b), min(n, a + b - 1)]`.
    Case2,
    /// `d = c - 1`: `c - a ∈ [max(0, n - a - b - 1), min(n - b, n - a)]`.
    Case3,
    /// `d - c < -1`: `d = n - 1`, `c > n`.
    Case4,
}

impl BlvCase {
    pub fn admits_nonzero(self) -> bool {
        self != BlvCase::Vanishes
    }
}

pub fn blv_classify(a: i64, b: i64, c: i64, d: i64, n: usize) -> BlvCase {
    let n = n as i64;
    let diff = d - c;
    if diff > 0 {
        if d == 0 && c < 0 {
            BlvCase::Case1
        } else {
            BlvCase::Vanishes
        }
    } else if diff == 0 {
        let s = c + b;
        if a.max(b) <= s && s <= n.min(a + b - 1) {
            BlvCase::Case2
        } else {
            BlvCase::Vanishes
        }
    } else if diff == -1 {
        let s = c - a;
        if 0.max(n - a - b - 1) <= s && s <= (n - b).min(n - a) {
            BlvCase::Case3
        } else {
            BlvCase::Vanishes
        }
    } else if d == n - 1 && c > n {
        BlvCase::Case4
    } else {
        BlvCase::Vanishes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h0_of_o1() {
        for n in 2..=6 {
            let t = cohomology(&line_bundle(n, 1).unwrap());
            assert_eq!(t, CohTable::from_pairs(&[(0, n as i64)]));
        }
    }

    #[test]
    fn canonical_bundle_top_degree() {
        let t = cohomology(&line_bundle(3, -3).unwrap());
        assert_eq!(t, CohTable::from_pairs(&[(2, 1)]));
        assert!(cohomology(&line_bundle(3, -2).unwrap()).is_zero());
    }

    #[test]
    fn omega_examples() {
        let t = cohomology(&omega(3, 1, 0).unwrap());
        assert_eq!(t, CohTable::from_pairs(&[(1, 1)]));
        let t = cohomology(&omega(3, 1, 3).unwrap());
        assert_eq!(t, CohTable::from_pairs(&[(0, 8)]));
        assert_eq!(omega(4, 3, 0).unwrap(), line_bundle(4, -4).unwrap());
    }

    #[test]
    fn bott_example() {
        let t = bott_closed_form(3, 1, -3).unwrap();
        assert_eq!(t, CohTable::from_pairs(&[(2, 8)]));
    }

    #[test]
    fn tangent_sections_are_adjoint() {
        for n in 2..=5 {
            let t = cohomology(&wedge_tangent(n, 1, 0).unwrap());
            assert_eq!(t, CohTable::from_pairs(&[(0, (n * n - 1) as i64)]));
        }
    }

    #[test]
    fn hom_bundle_identity_case() {
        assert_eq!(hom_bundle(1, 1, 0, 4).unwrap(), line_bundle(4, 0).unwrap());
        let id = hom_bundle(2, 2, 0, 3).unwrap();
        assert_eq!(cohomology(&id).get(0), 1);
    }

    #[test]
    fn hom_bundle_rank_three_example() {
        assert_eq!(hom_bundle(1, 2, 0, 3).unwrap(), omega(3, 1, 2).unwrap());
        assert_eq!(hom_bundle(2, 1, 0, 3).unwrap(), omega(3, 1, 1).unwrap());
    }

    #[test]
    fn bad_arguments() {
        assert!(omega(3, 3, 0).is_err());
        assert!(hom_bundle(0, 1, 0, 3).is_err());
        assert!(LeviWeight::new(3, 0, vec![0, 1]).is_err());
        assert!(line_bundle(1, 0).is_err());
    }
}
