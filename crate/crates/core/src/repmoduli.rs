//! Representations of the doubled quiver with dimension vector `(1, ..., 1)`
//! and their points `([α], X = α βᵀ)` in the resolution of the orbit closure.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_rank, Error, Result};
use crate::linalg::DenseMatrix;
use crate::quiveralg::{generating_relations, Arrow, Quiver, RelationKind};
use crate::scalar::Field;

/// `α ∈ V \ 0` up to scale, `β ∈ V*` with `⟨β, α⟩ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepTriple<F> {
    pub alpha: Vec<F>,
    pub beta: Vec<F>,
}

impl<F: Field> RepTriple<F> {
    pub fn new(alpha: Vec<F>, beta: Vec<F>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::Length {
                expected: alpha.len(),
                got: beta.len(),
            });
        }
        check_rank(alpha.len())?;
        if alpha.iter().all(F::is_zero) {
            return Err(Error::BadTriple("alpha is zero".into()));
        }
        if !pairing(&alpha, &beta).is_zero() {
            return Err(Error::BadTriple("<beta, alpha> is nonzero".into()));
        }
        Ok(RepTriple { alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }
}

fn pairing<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Scalars of each arrow: `f[k][i] : W_k -> W_{k+1}` for `k < n - 1`,
/// `v[k][j] : W_k -> W_{k-1}` for `k >= 1` (entry `v[0]` is unused).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rep<F> {
    pub n: usize,
    pub f: Vec<Vec<F>>,
    pub v: Vec<Vec<F>>,
}

impl<F: Field> Rep<F> {
    pub fn zero(n: usize) -> Self {
        Rep {
            n,
            f: vec![vec![F::zero(); n]; n],
            v: vec![vec![F::zero(); n]; n],
        }
    }

    /// Scalar of `arrow` leaving `vertex`; `None` if the arrow does not exist.
    pub fn scalar(&self, vertex: usize, arrow: Arrow) -> Option<F> {
        let q = Quiver::new(self.n).ok()?;
        q.step(vertex, arrow)?;
        Some(match arrow {
            Arrow::F(i) => self.f[vertex][i as usize].clone(),
            Arrow::V(j) => self.v[vertex][j as usize].clone(),
        })
    }

    fn word_scalar(&self, source: usize, word: &[Arrow]) -> F {
        let q = Quiver::new(self.n).expect("rank checked");
        let mut at = source;
        let mut acc: Option<F> = None;
        for &a in word {
            let s = self.scalar(at, a).expect("composable word");
            if s.is_zero() {
                return F::zero();
            }
            acc = Some(match acc {
                None => s,
                Some(x) => x * s,
            });
            at = q.step(at, a).expect("composable word");
        }
        acc.unwrap_or_else(F::one)
    }
}

pub fn rep_from_triple<F: Field>(t: &RepTriple<F>) -> Rep<F> {
    let n = t.n();
    let mut r = Rep::zero(n);
    for k in 0..n {
        if k + 1 < n {
            r.f[k] = t.alpha.clone();
        }
        if k >= 1 {
            r.v[k] = t.beta.clone();
        }
    }
    r
}

/// Outcome of checking the relations on a representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RelationCheck {
    Pass,
    Fail { relation: String, vertex: usize },
}

const CHECK_ORDER: [RelationKind; 7] = [
    RelationKind::VComm,
    RelationKind::FComm,
    RelationKind::Mixed,
    RelationKind::Fvf,
    RelationKind::Vfv,
    RelationKind::TraceFv,
    RelationKind::TraceVf,
];

pub fn check_relations<F: Field>(r: &Rep<F>) -> RelationCheck {
    let Ok(q) = Quiver::new(r.n) else {
        return RelationCheck::Pass;
    };
    let rels = generating_relations(&q);
    for kind in CHECK_ORDER {
        for rel in rels.iter().filter(|x| x.kind == kind) {
            let value = rel.terms.iter().fold(F::zero(), |acc, (c, w)| {
                let x = r.word_scalar(rel.source, w);
                match c {
                    1 => acc + x,
                    -1 => acc - x,
                    _ => acc + F::from_i64(*c) * x,
                }
            });
            if !value.is_zero() {
                return RelationCheck::Fail {
                    relation: kind.name().to_string(),
                    vertex: rel.source,
                };
            }
        }
    }
    RelationCheck::Pass
}

/// Vertices reachable from `start` along arrows with nonzero scalars.
fn reachable<F: Field>(r: &Rep<F>, start: usize) -> BTreeSet<usize> {
    let q = Quiver::new(r.n).expect("rank checked");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for a in q.arrows() {
            if let (Some(y), Some(s)) = (q.step(x, a), r.scalar(x, a)) {
                if !s.is_zero() && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    seen
}

/// Whether the subrepresentation generated by `W_vertex` is everything.
pub fn generated_by<F: Field>(r: &Rep<F>, vertex: usize) -> bool {
    reachable(r, vertex).len() == r.n
}

/// No proper nonzero subrepresentation: every vertex reaches every other.
pub fn is_simple<F: Field>(r: &Rep<F>) -> bool {
    (0..r.n).all(|v| reachable(r, v).len() == r.n)
}

/// A point `([α], X)` with `α` scaled so its first nonzero entry is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliPoint<F> {
    pub line: Vec<F>,
    pub x: DenseMatrix<F>,
}

impl<F: Field> ModuliPoint<F> {
    pub fn x_squared_is_zero(&self) -> bool {
        let sq = self.x.matmul(&self.x);
        (0..sq.rows()).all(|i| sq.row(i).iter().all(F::is_zero))
    }

    /// `Im X ⊆ [α]`.
    pub fn image_in_line(&self) -> bool {
        let n = self.line.len();
        let p = self.line.iter().position(|x| !x.is_zero()).expect("nonzero line");
        (0..n).all(|j| {
            let col = self.x.column(j);
            let c = col[p].clone() / self.line[p].clone();
            col.iter()
                .zip(&self.line)
                .all(|(x, l)| (x.clone() - c.clone() * l.clone()).is_zero())
        })
    }

    pub fn rank_x(&self) -> usize {
        self.x.rank()
    }
}

fn normalize_line<F: Field>(alpha: &[F]) -> Vec<F> {
    let lead = alpha.iter().find(|x| !x.is_zero()).expect("nonzero").clone();
    alpha.iter().map(|x| x.clone() / lead.clone()).collect()
}

pub fn to_point<F: Field>(t: &RepTriple<F>) -> ModuliPoint<F> {
    let rows = t
        .alpha
        .iter()
        .map(|a| t.beta.iter().map(|b| a.clone() * b.clone()).collect())
        .collect();
    ModuliPoint {
        line: normalize_line(&t.alpha),
        x: DenseMatrix::from_rows(rows),
    }
}

/// Reads off `α` from `W_0 -> W_1` and `β` from `W_1 -> W_0`; determined up to
/// `(α, β) ↦ (cα, c⁻¹β)`.
pub fn triple_from_rep<F: Field>(r: &Rep<F>) -> Result<RepTriple<F>> {
    if !generated_by(r, 0) {
        return Err(Error::NotGenerated(0));
    }
    let alpha = r.f[0].clone();
    let beta = r.v[1].clone();
    RepTriple::new(alpha, beta)
}

/// Isomorphism of `(1, ..., 1)` representations generated by `W_0`:
/// looks for diagonal `d_k ≠ 0` with `d_{k+1} r1 = r2 d_k` on every arrow.
pub fn isomorphic<F: Field>(r1: &Rep<F>, r2: &Rep<F>) -> bool {
    if r1.n != r2.n {
        return false;
    }
    let n = r1.n;
    let q = Quiver::new(n).expect("rank checked");
    let mut d: Vec<Option<F>> = vec![None; n];
    d[0] = Some(F::one());
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for a in q.arrows() {
            let Some(y) = q.step(x, a) else { continue };
            let (s1, s2) = (r1.scalar(x, a).unwrap(), r2.scalar(x, a).unwrap());
            if d[y].is_none() && !s1.is_zero() {
                let dx = d[x].clone().unwrap();
                d[y] = Some(s2 * dx / s1);
                stack.push(y);
            }
        }
    }
    let Some(d) = d.into_iter().collect::<Option<Vec<F>>>() else {
        return false;
    };
    if d.iter().any(F::is_zero) {
        return false;
    }
    (0..n).all(|x| {
        q.arrows().all(|a| match q.step(x, a) {
            None => true,
            Some(y) => {
                let (s1, s2) = (r1.scalar(x, a).unwrap(), r2.scalar(x, a).unwrap());
                d[y].clone() * s1 == s2 * d[x].clone()
            }
        })
    })
}

/// Transposed representation: vertex `k` becomes `n-1-k` and `f_i ↔ v_i`.
/// A triple `(α, β)` goes to `(β, α)`, so `X` goes to `Xᵀ`.
pub fn dual_rep<F: Field>(r: &Rep<F>) -> Rep<F> {
    let n = r.n;
    let mut out = Rep::zero(n);
    for k in 0..n {
        let kk = n - 1 - k;
        if k >= 1 {
            out.f[kk] = r.v[k].clone();
        }
        if k + 1 < n {
            out.v[kk] = r.f[k].clone();
        }
    }
    out
}

/// Integer triples: `α` uniform in `[-bound, bound]^n \ 0`, `β` uniform among
/// the solutions of `⟨β, α⟩ = 0` in the same box.
pub fn sample_triples<F: Field>(n: usize, count: usize, bound: i64, seed: u64) -> Result<Vec<RepTriple<F>>> {
    check_rank(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let alpha: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if alpha.iter().all(|&a| a == 0) {
            continue;
        }
        let p = (0..n)
            .filter(|&i| alpha[i] != 0)
            .min_by_key(|&i| alpha[i].abs())
            .expect("alpha nonzero");
        let beta = loop {
            let mut beta: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
            let rest: i64 = (0..n).filter(|&i| i != p).map(|i| alpha[i] * beta[i]).sum();
            if rest % alpha[p] == 0 && (-rest / alpha[p]).abs() <= bound {
                beta[p] = -rest / alpha[p];
                break beta;
            }
        };
        let lift = |v: &[i64]| v.iter().map(|&x| F::from_i64(x)).collect();
        out.push(RepTriple::new(lift(&alpha), lift(&beta))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_i64(x)).collect()
    }

    #[test]
    fn corner_point() {
        let t = RepTriple::new(q(&[0, 0, 1]), q(&[1, 0, 0])).unwrap();
        let p = to_point(&t);
        assert_eq!(p.line, q(&[0, 0, 1]));
        let mut x0 = DenseMatrix::zeros(3, 3);
        x0.set(2, 0, Q::from_i64(1));
        assert_eq!(p.x, x0);
        assert!(is_simple(&rep_from_triple(&t)));
    }

    #[test]
    fn zero_beta_not_simple() {
        let t = RepTriple::new(q(&[1, 2]), q(&[0, 0])).unwrap();
        let r = rep_from_triple(&t);
        assert!(!is_simple(&r));
        assert!(generated_by(&r, 0));
        assert!(!generated_by(&r, 1));
    }

    #[test]
    fn bad_triples() {
        assert!(RepTriple::new(q(&[0, 0]), q(&[1, 0])).is_err());
        assert!(RepTriple::new(q(&[1, 0]), q(&[1, 0])).is_err());
    }

    #[test]
    fn hand_built_rep_fails_trace() {
        let mut r = Rep::<Q>::zero(2);
        r.f[0] = q(&[1, 0]);
        r.v[1] = q(&[1, 0]);
        assert_eq!(
            check_relations(&r),
            RelationCheck::Fail {
                relation: RelationKind::TraceFv.name().into(),
                vertex: 1
            }
        );
    }
}
