//! Graded Hom spaces between line bundles on the total spaces `Z = |V*⊗O(-1)|`
//! and `Y = |Ω|`, and tilting checks.
//!
//! Degrees are R-degrees: the number of `v·f` pairs in a monomial, i.e.
//! `min(#V, #V*)`.

mod tilting;

pub use tilting::{check_summands, nccr_rank, tilting_check, Family, FamilyName, TiltingReport, Witness};

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::combinat::dim_sym;
use crate::error::{check_range, check_rank, Result};
use crate::linalg::{rank_fraction_free, SparseVec};

/// Which total space: `Y = |Ω_P|` or `Y⁺ = |Ω_{P∨}|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Y,
    YPlus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: Vec<u64>,
}

impl GradedDims {
    pub fn cap(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn get(&self, k: usize) -> u64 {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// Drops leading zeros.
    pub fn normalized(&self) -> GradedDims {
        let start = self.dims.iter().position(|&d| d != 0).unwrap_or(self.dims.len());
        GradedDims {
            dims: self.dims[start..].to_vec(),
        }
    }

    pub fn truncated(&self, cap: usize) -> GradedDims {
        GradedDims {
            dims: self.dims.iter().copied().take(cap + 1).collect(),
        }
    }
}

/// Degree splitting `(V-degree, V*-degree)` of R-degree `k` at shift `s`.
fn bidegree(side: Side, k: usize, s: i64) -> (usize, usize) {
    let lo = k;
    let (pos, neg) = (s.max(0) as usize, (-s).max(0) as usize);
    match side {
        Side::Y => (lo + neg, lo + pos),
        Side::YPlus => (lo + pos, lo + neg),
    }
}

/// Exponent vectors of total degree `d` in `n` variables, lexicographically
/// descending.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<u8>> {
    fn go(n: usize, d: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n - 1 {
            prefix.push(d as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u8);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Multiplication by the trace `Σ v_i ⊗ f_i` from R-degree `k` to `k + 1`
/// of `Hom_Z(O(0), O(shift))`, as image vectors of the source monomials.
#[derive(Clone, Debug)]
pub struct TraceMultMatrix {
    pub n: usize,
    pub k: usize,
    pub shift: i64,
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec<BigInt>>,
}

pub fn trace_mult_matrix(n: usize, k: usize, shift: i64) -> TraceMultMatrix {
    trace_mult_matrix_side(Side::Y, n, k, shift)
}

pub fn trace_mult_matrix_side(side: Side, n: usize, k: usize, shift: i64) -> TraceMultMatrix {
    let (sv, sf) = bidegree(side, k, shift);
    let (tv, tf) = bidegree(side, k + 1, shift);
    let src_v = monomials(n, sv);
    let src_f = monomials(n, sf);
    let tgt_v = monomials(n, tv);
    let tgt_f = monomials(n, tf);
    let index = |ms: &[Vec<u8>]| -> HashMap<Vec<u8>, usize> {
        ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
    };
    let iv = index(&tgt_v);
    let jf = index(&tgt_f);
    let mut columns = Vec::with_capacity(src_v.len() * src_f.len());
    for mv in &src_v {
        for mf in &src_f {
            let mut col: SparseVec<BigInt> = (0..n)
                .map(|i| {
                    let mut a = mv.clone();
                    let mut b = mf.clone();
                    a[i] += 1;
                    b[i] += 1;
                    (iv[&a] * tgt_f.len() + jf[&b], BigInt::one())
                })
                .collect();
            col.sort_by_key(|(i, _)| *i);
            columns.push(col);
        }
    }
    TraceMultMatrix {
        n,
        k,
        shift,
        rows: tgt_v.len() * tgt_f.len(),
        cols: src_v.len() * src_f.len(),
        columns,
    }
}

impl TraceMultMatrix {
    pub fn rank(&self) -> usize {
        rank_fraction_free(self.columns.iter().cloned())
    }
}

/// `dim Hom_Z(O(a), O(b))` by R-degree.
pub fn hom_z_graded(a: i64, b: i64, n: usize, cap: usize) -> Result<GradedDims> {
    check_rank(n)?;
    let s = b - a;
    let dims = (0..=cap)
        .map(|k| {
            let (dv, df) = bidegree(Side::Y, k, s);
            dim_sym(n, dv as i64) * dim_sym(n, df as i64)
        })
        .collect();
    Ok(GradedDims { dims })
}

/// `dim Hom_Y(O(a), O(b))` by R-degree: Z-piece minus the trace image.
pub fn hom_y_graded(a: i64, b: i64, n: usize, cap: usize) -> Result<GradedDims> {
    hom_y_graded_side(Side::Y, a, b, n, cap)
}

pub fn hom_y_graded_side(side: Side, a: i64, b: i64, n: usize, cap: usize) -> Result<GradedDims> {
    check_rank(n)?;
    let s = b - a;
    check_range("b - a", s, -(n as i64) + 1, n as i64 - 1)?;
    let z = hom_z_graded(a, b, n, cap)?;
    let dims = (0..=cap)
        .map(|k| {
            let image = if k == 0 {
                0
            } else {
                trace_mult_matrix_side(side, n, k - 1, s).rank() as u64
            };
            z.get(k) - image
        })
        .collect();
    Ok(GradedDims { dims })
}

/// Hilbert function of `M_a = H^0(Y, O(a))`.
#[allow(non_snake_case)]
pub fn hilbert_M(a: i64, n: usize, cap: usize) -> Result<GradedDims> {
    check_rank(n)?;
    check_range("a", a, -(n as i64) + 1, n as i64 - 1)?;
    hom_y_graded(0, a, n, cap)
}

/// `H^0(side, O(a))` graded by fiber degree instead of R-degree.
pub fn hilbert_fiber(side: Side, a: i64, n: usize, cap: usize) -> Result<GradedDims> {
    let offset = (-a).max(0) as usize;
    let r = hom_y_graded_side(side, 0, a, n, cap)?;
    let dims = (0..=cap)
        .map(|m| if m < offset { 0 } else { r.get(m - offset) })
        .collect();
    Ok(GradedDims { dims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        for n in 1..5 {
            for d in 0..5 {
                assert_eq!(monomials(n, d).len() as u64, dim_sym(n, d as i64));
            }
        }
    }

    #[test]
    fn hilbert_rank_two() {
        assert_eq!(hilbert_M(0, 2, 3).unwrap().dims, vec![1, 3, 5, 7]);
    }

    #[test]
    fn z_piece_examples() {
        assert_eq!(hom_z_graded(0, 1, 3, 0).unwrap().get(0), 3);
        assert_eq!(hom_z_graded(1, 0, 3, 0).unwrap().get(0), 3);
    }

    #[test]
    fn trace_matrix_shape() {
        let m = trace_mult_matrix(3, 1, 0);
        assert_eq!((m.rows, m.cols), (36, 9));
        assert_eq!(m.rank(), 9);
    }

    #[test]
    fn shift_out_of_range() {
        assert!(hom_y_graded(0, -3, 3, 2).is_err());
        assert!(hilbert_M(3, 3, 2).is_err());
    }
}
