//! Grothendieck-group shadows of the flop functors, the Fourier–Mukai image
//! table of `KN_0`, and the Ext ledger behind the `P`-twist computation.
//!
//! `K_0(Y) ≅ K_0(P^{n-1})`; classes are written in the window basis
//! `[O(0)], ..., [O(n-1)]`.

mod ledger;
mod lemma;

pub use ledger::{
    ext_profile, kclass_of_object, ptwist_ledger_check, ExtProfile, LedgerObject, LedgerReport, LedgerStep,
};
pub use lemma::{kn0_image_table, KnImageRow, ShiftedObject};

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bwb::{cohomology, BundleExpr};
use crate::cohengine::Side;
use crate::combinat::binomial;
use crate::error::{check_rank, Error, Result};
use crate::linalg::DenseMatrix;
use crate::{QMatrix, ZMatrix};

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct KClass {
    pub n: usize,
    pub side: Side,
    pub coords: Vec<BigInt>,
}

impl KClass {
    pub fn zero(n: usize, side: Side) -> Self {
        KClass {
            n,
            side,
            coords: vec![BigInt::zero(); n],
        }
    }

    pub fn basis(n: usize, side: Side, i: usize) -> Self {
        let mut k = Self::zero(n, side);
        k.coords[i] = BigInt::one();
        k
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        KClass {
            n: self.n,
            side: self.side,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Ring product, using `[O(a)][O(b)] = [O(a + b)]`.
    pub fn mul(&self, other: &KClass) -> KClass {
        assert_eq!((self.n, self.side), (other.n, other.side));
        let mut out = Self::zero(self.n, self.side);
        for (i, x) in self.coords.iter().enumerate() {
            for (j, y) in other.coords.iter().enumerate() {
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let line = reduce_line_on(self.side, (i + j) as i64, self.n);
                out = out + line.scale(&(x * y));
            }
        }
        out
    }

    /// `[E ⊗ O(t)]`.
    pub fn twist(&self, t: i64) -> KClass {
        self.mul(&reduce_line_on(self.side, t, self.n))
    }
}

impl Add for KClass {
    type Output = KClass;
    fn add(self, rhs: KClass) -> KClass {
        assert_eq!((self.n, self.side), (rhs.n, rhs.side));
        KClass {
            n: self.n,
            side: self.side,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Neg for KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for KClass {
    type Output = KClass;
    fn sub(self, rhs: KClass) -> KClass {
        self + (-rhs)
    }
}

impl fmt::Debug for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            write!(f, "{}[O({i})]", c.abs())?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `[O(a)]` on `Y` in the window basis.
pub fn reduce_line(a: i64, n: usize) -> KClass {
    reduce_line_on(Side::Y, a, n)
}

/// Repeated use of `Σ_{i=0}^{n} (-1)^i C(n, i) [O(a - i)] = 0`.
pub fn reduce_line_on(side: Side, a: i64, n: usize) -> KClass {
    let top = n as i64;
    if (0..top).contains(&a) {
        return KClass::basis(n, side, a as usize);
    }
    // (c_0, ..., c_{n-1}) are the classes of n consecutive line bundles.
    let mut window: Vec<KClass> = (0..n).map(|i| KClass::basis(n, side, i)).collect();
    let mut lo = 0i64;
    let sign = |i: i64| if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    while a >= lo + top {
        // [O(lo + n)] = -Σ_{i=1}^{n} (-1)^i C(n, i) [O(lo + n - i)]
        let mut next = KClass::zero(n, side);
        for i in 1..=top {
            let c = -(sign(i) * BigInt::from(binomial(top, i)));
            next = next + window[(top - i) as usize].scale(&c);
        }
        window.remove(0);
        window.push(next);
        lo += 1;
    }
    while a < lo {
        // (-1)^n [O(lo - 1)] = -Σ_{i=0}^{n-1} (-1)^i C(n, i) [O(lo - 1 + n - i)]
        let mut acc = KClass::zero(n, side);
        for i in 0..top {
            let c = -(sign(i) * BigInt::from(binomial(top, i)));
            acc = acc + window[(top - 1 - i) as usize].scale(&c);
        }
        let prev = acc.scale(&sign(top));
        window.pop();
        window.insert(0, prev);
        lo -= 1;
    }
    window[(a - lo) as usize].clone()
}

/// `[Λ^p T]`, from `0 -> Λ^{p-1} T -> Λ^p V ⊗ O(p) -> Λ^p T -> 0`.
pub fn wedge_tangent_class(side: Side, p: usize, n: usize) -> KClass {
    let mut cur = KClass::basis(n, side, 0);
    for q in 1..=p {
        cur = reduce_line_on(side, q as i64, n).scale(&BigInt::from(binomial(n as i64, q as i64))) - cur;
    }
    cur
}

/// Koszul class `Σ_p (-1)^p [Λ^p T]` of the zero section.
fn koszul_factor(side: Side, n: usize) -> KClass {
    (0..n).fold(KClass::zero(n, side), |acc, p| {
        let t = wedge_tangent_class(side, p, n);
        if p % 2 == 0 {
            acc + t
        } else {
            acc - t
        }
    })
}

/// `[j_* G]` for a class `G` on the base.
pub fn kclass_push(g: &KClass) -> KClass {
    g.mul(&koszul_factor(g.side, g.n))
}

/// `[j_* O_P(b)]` on `Y`.
pub fn kclass_jp(b: i64, n: usize) -> KClass {
    kclass_push(&reduce_line(b, n))
}

/// `[j'_* O_{P∨}(b)]` on `Y⁺`.
pub fn kclass_jp_dual(b: i64, n: usize) -> KClass {
    kclass_push(&reduce_line_on(Side::YPlus, b, n))
}

/// Class of a homogeneous bundle, solved from `χ(E(t))`, `0 <= t < n`.
pub fn kclass_of_bundle(e: &BundleExpr, side: Side) -> KClass {
    let n = e.n();
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let m: QMatrix = DenseMatrix::from_rows(
        (0..n as i64)
            .map(|t| (0..n as i64).map(|a| q(crate::bwb::euler_line_bundle(n, a + t))).collect())
            .collect(),
    );
    let rhs: Vec<BigRational> = (0..n as i64)
        .map(|t| q(cohomology(&e.twist(t)).euler_characteristic()))
        .collect();
    let sol = m.inverse().expect("Euler pairing is unimodular").apply(&rhs);
    KClass {
        n,
        side,
        coords: sol
            .into_iter()
            .map(|x| {
                assert!(x.is_integer(), "K-class with fractional coordinate");
                x.to_integer()
            })
            .collect(),
    }
}

/// `χ(j_* O(c), x) = Σ_a x_a (-1)^{n-1} χ(O(a - c - n))`.
pub fn chi_jp(c: i64, x: &KClass) -> BigInt {
    let n = x.n as i64;
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    x.coords
        .iter()
        .enumerate()
        .map(|(a, xa)| xa * BigInt::from(sign * crate::bwb::euler_line_bundle(x.n, a as i64 - c - n)))
        .sum()
}

fn matrix_from_columns(cols: &[KClass]) -> QMatrix {
    let n = cols.len();
    let mut m = QMatrix::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.coords.iter().enumerate() {
            m.set(i, j, BigRational::from_integer(x.clone()));
        }
    }
    m
}

fn to_integer_matrix(m: &QMatrix) -> Result<ZMatrix> {
    let mut out = ZMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j);
            if !x.is_integer() {
                return Err(Error::NotUnimodular);
            }
            out.set(i, j, x.to_integer());
        }
    }
    Ok(out)
}

/// `⊗ O(t)` on `K_0`.
pub fn twist_matrix(side: Side, t: i64, n: usize) -> ZMatrix {
    let cols: Vec<KClass> = (0..n as i64).map(|a| reduce_line_on(side, a + t, n)).collect();
    to_integer_matrix(&matrix_from_columns(&cols)).expect("integer columns")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `KN_k : D(Y) -> D(Y⁺)`
    Kn,
    /// `KN'_k : D(Y⁺) -> D(Y)`
    KnPrime,
}

/// Matrix of `KN_k` (or `KN'_k`) in the window bases: the functor sends
/// `[O(a)]` to `[O(-a)]` for `a ∈ [-n + k + 1, k]`.
pub fn kn_matrix(k: i64, n: usize, dir: Direction) -> Result<ZMatrix> {
    check_rank(n)?;
    let (src, dst) = match dir {
        Direction::Kn => (Side::Y, Side::YPlus),
        Direction::KnPrime => (Side::YPlus, Side::Y),
    };
    let window: Vec<i64> = (-(n as i64) + k + 1..=k).collect();
    let b = matrix_from_columns(&window.iter().map(|&a| reduce_line_on(src, a, n)).collect::<Vec<_>>());
    let t = matrix_from_columns(&window.iter().map(|&a| reduce_line_on(dst, -a, n)).collect::<Vec<_>>());
    let binv = b.inverse().ok_or(Error::NotUnimodular)?;
    to_integer_matrix(&t.matmul(&binv))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlopFlopReport {
    pub k: i64,
    pub n: usize,
    pub product: ZMatrix,
    pub is_identity: bool,
}

/// `KN'_{-k} ∘ KN_{n+k}` on `K_0(Y)`.
pub fn flop_flop_check(k: i64, n: usize) -> Result<FlopFlopReport> {
    let product = kn_matrix(-k, n, Direction::KnPrime)?.matmul(&kn_matrix(n as i64 + k, n, Direction::Kn)?);
    let is_identity = product.is_identity();
    Ok(FlopFlopReport {
        k,
        n,
        product,
        is_identity,
    })
}

/// `KN_{k+1} = T^{Y⁺}_{-1} ∘ KN_k ∘ T^Y_{-1}` on `K_0`.
pub fn twist_intertwines(k: i64, n: usize) -> Result<bool> {
    let lhs = kn_matrix(k + 1, n, Direction::Kn)?;
    let rhs = twist_matrix(Side::YPlus, -1, n)
        .matmul(&kn_matrix(k, n, Direction::Kn)?)
        .matmul(&twist_matrix(Side::Y, -1, n));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_minus_one() {
        let k = reduce_line(-1, 3);
        assert_eq!(k.coords, vec![3.into(), (-3).into(), 1.into()]);
    }

    #[test]
    fn self_euler_of_zero_section() {
        for n in 2..=6 {
            for b in -3..=3 {
                assert_eq!(chi_jp(b, &kclass_jp(b, n)), BigInt::from(n as i64));
            }
        }
    }

    #[test]
    fn wedge_tangent_matches_bundle_class() {
        for n in 2..=5 {
            for p in 0..n {
                let e = crate::bwb::wedge_tangent(n, p as i64, 0).unwrap();
                assert_eq!(wedge_tangent_class(Side::Y, p, n), kclass_of_bundle(&e, Side::Y));
            }
        }
    }

    #[test]
    fn inverse_pair() {
        for n in 2..=5 {
            for k in -(n as i64)..=n as i64 {
                let m = kn_matrix(k, n, Direction::Kn)
                    .unwrap()
                    .matmul(&kn_matrix(n as i64 - k - 1, n, Direction::KnPrime).unwrap());
                assert!(m.is_identity());
            }
        }
    }
}
