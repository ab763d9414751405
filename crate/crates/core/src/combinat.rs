//! Partitions, binomials, Weyl dimensions and Littlewood–Richardson products.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A partition, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(parts.iter().map(|&p| p as i64).collect()));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The column `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    /// The row `(k)`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition(vec![k])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<i64> {
        (0..len).map(|i| self.part(i) as i64).collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `C(n, k)` for `n >= 0`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Generalized binomial `x (x-1) ... (x-k+1) / k!` for any integer `x`.
pub fn binomial_poly(x: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(x - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `dim Sym^k C^n`, zero for `k < 0`.
pub fn dim_sym(n: usize, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    if n == 0 {
        return u64::from(k == 0);
    }
    binomial(n as i64 + k - 1, k)
}

/// `dim Λ^k C^n`.
pub fn dim_wedge(n: usize, k: i64) -> u64 {
    binomial(n as i64, k)
}

/// Dimension of the irreducible `GL_m` module of highest weight `weight`.
///
/// Entries may be negative; only weak decrease is required.
pub fn weyl_dim(m: usize, weight: &[i64]) -> Result<u64> {
    if weight.len() != m {
        return Err(Error::Length {
            expected: m,
            got: weight.len(),
        });
    }
    if weight.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDominant(weight.to_vec()));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        for j in i + 1..m {
            num *= BigInt::from(weight[i] - weight[j] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    Ok((num / den).to_u64().expect("Weyl dimension overflows u64"))
}

/// Littlewood–Richardson expansion `s_λ s_μ = Σ c^ν_{λμ} s_ν`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct LRProduct {
    pub terms: BTreeMap<Partition, u64>,
}

impl LRProduct {
    pub fn coefficient(&self, nu: &Partition) -> u64 {
        self.terms.get(nu).copied().unwrap_or(0)
    }

    /// Keeps only constituents with at most `rows` parts.
    pub fn truncate_rows(mut self, rows: usize) -> Self {
        self.terms.retain(|nu, _| nu.length() <= rows);
        self
    }
}

/// Adds horizontal strips of size `mu[letter]` to `shape`, recording per-row
/// letter counts, and checks the lattice condition letter by letter.
struct LrSearch<'a> {
    mu: &'a [u32],
    out: BTreeMap<Partition, u64>,
}

impl LrSearch<'_> {
    fn run(&mut self, shape: Vec<u32>, counts: Vec<Vec<u32>>, letter: usize) {
        if letter == self.mu.len() {
            let nu = Partition::new(shape).expect("strip addition keeps shape");
            *self.out.entry(nu).or_insert(0) += 1;
            return;
        }
        let m = self.mu[letter];
        let mut added = vec![0u32; shape.len() + 1];
        self.strips(&shape, &counts, letter, 0, m, &mut added);
    }

    fn strips(
        &mut self,
        shape: &[u32],
        counts: &[Vec<u32>],
        letter: usize,
        row: usize,
        remaining: u32,
        added: &mut Vec<u32>,
    ) {
        if row == added.len() {
            if remaining == 0 {
                self.place(shape, counts, letter, added);
            }
            return;
        }
        let current = shape.get(row).copied().unwrap_or(0);
        let cap = if row == 0 {
            remaining
        } else {
            (shape[row - 1] - current).min(remaining)
        };
        for a in 0..=cap {
            added[row] = a;
            self.strips(shape, counts, letter, row + 1, remaining - a, added);
        }
        added[row] = 0;
    }

    fn place(&mut self, shape: &[u32], counts: &[Vec<u32>], letter: usize, added: &[u32]) {
        let rows = added.len();
        let mut new_shape: Vec<u32> = (0..rows)
            .map(|r| shape.get(r).copied().unwrap_or(0) + added[r])
            .collect();
        let mut new_counts: Vec<Vec<u32>> = counts.to_vec();
        new_counts.resize(rows, vec![0; self.mu.len()]);
        for r in 0..rows {
            new_counts[r][letter] = added[r];
        }
        if letter > 0 {
            let mut above_prev = 0u32;
            let mut upto_cur = 0u32;
            for row_counts in new_counts.iter().take(rows) {
                upto_cur += row_counts[letter];
                if upto_cur > above_prev {
                    return;
                }
                above_prev += row_counts[letter - 1];
            }
        }
        while new_shape.last() == Some(&0) {
            new_shape.pop();
            new_counts.pop();
        }
        self.run(new_shape, new_counts, letter + 1);
    }
}

/// Product of Schur functions by enumeration of LR skew tableaux.
pub fn lr_product(lambda: &Partition, mu: &Partition) -> LRProduct {
    let (big, small) = if lambda.size() >= mu.size() {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let mut search = LrSearch {
        mu: small.parts(),
        out: BTreeMap::new(),
    };
    let counts = vec![vec![0; small.length()]; big.length()];
    search.run(big.parts().to_vec(), counts, 0);
    LRProduct { terms: search.out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(dim_sym(3, 2), 6);
        assert_eq!(dim_sym(3, -1), 0);
        assert_eq!(dim_wedge(4, 2), 6);
        assert_eq!(weyl_dim(3, &[2, 1, 0]).unwrap(), 8);
        assert_eq!(binomial_poly(-2, 3), BigInt::from(-4));
    }

    #[test]
    fn weyl_dim_rejects_increasing() {
        assert!(matches!(weyl_dim(2, &[0, 1]), Err(Error::NotDominant(_))));
        assert!(weyl_dim(2, &[1]).is_err());
    }

    #[test]
    fn box_times_box() {
        let prod = lr_product(&p(&[1]), &p(&[1]));
        assert_eq!(prod.terms.len(), 2);
        assert_eq!(prod.coefficient(&p(&[2])), 1);
        assert_eq!(prod.coefficient(&p(&[1, 1])), 1);
    }

    #[test]
    fn classical_coefficient() {
        // c^{(3,2,1)}_{(2,1),(2,1)} = 2
        let prod = lr_product(&p(&[2, 1]), &p(&[2, 1]));
        assert_eq!(prod.coefficient(&p(&[3, 2, 1])), 2);
        assert_eq!(prod.terms.values().sum::<u64>(), 8);
    }
}
