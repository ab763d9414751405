//! The doubled Beilinson quiver with relations and its graded dimensions.
//!
//! Vertices `0..n`; `f_i : j -> j+1` and `v_i : j -> j-1`. Words list arrows
//! in the order they are traversed, so the composite `v_j f_i` (first `f_i`)
//! is the word `[F(i), V(j)]`. Vertex `j` corresponds to `O(j)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohengine::hom_y_graded;
use crate::error::{check_rank, Result};
use crate::linalg::{sparse_from_entries, FractionFreeEchelon};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Arrow {
    /// `f_{i+1}`
    F(u8),
    /// `v_{i+1}`
    V(u8),
}

impl fmt::Debug for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arrow::F(i) => write!(f, "f{}", i + 1),
            Arrow::V(i) => write!(f, "v{}", i + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    n: usize,
}

impl Quiver {
    pub fn new(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(Quiver { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> {
        let n = self.n as u8;
        (0..n).map(Arrow::F).chain((0..n).map(Arrow::V))
    }

    /// Target of `arrow` leaving `vertex`, if it exists.
    pub fn step(&self, vertex: usize, arrow: Arrow) -> Option<usize> {
        match arrow {
            Arrow::F(_) if vertex + 1 < self.n => Some(vertex + 1),
            Arrow::V(_) if vertex >= 1 => Some(vertex - 1),
            _ => None,
        }
    }

    pub fn walk(&self, source: usize, arrows: &[Arrow]) -> Option<usize> {
        arrows.iter().try_fold(source, |v, &a| self.step(v, a))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct QuiverWord {
    pub source: usize,
    pub arrows: Vec<Arrow>,
}

/// Torus weight `(#v_i - #f_i)_i`; every relation is homogeneous for it.
fn torus_weight(n: usize, arrows: &[Arrow]) -> Vec<i8> {
    let mut w = vec![0i8; n];
    for a in arrows {
        match a {
            Arrow::F(i) => w[*i as usize] -= 1,
            Arrow::V(i) => w[*i as usize] += 1,
        }
    }
    w
}

/// All paths of length `len` from `a` to `b`, in lexicographic order.
pub fn enumerate_paths(q: &Quiver, a: usize, b: usize, len: usize) -> Vec<Vec<Arrow>> {
    fn go(q: &Quiver, at: usize, b: usize, left: usize, cur: &mut Vec<Arrow>, out: &mut Vec<Vec<Arrow>>) {
        if left == 0 {
            if at == b {
                out.push(cur.clone());
            }
            return;
        }
        if at.abs_diff(b) > left {
            return;
        }
        for arrow in q.arrows() {
            if let Some(next) = q.step(at, arrow) {
                cur.push(arrow);
                go(q, next, b, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if a < q.n && b < q.n {
        go(q, a, b, len, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RelationKind {
    /// `v_i v_j = v_j v_i`
    VComm,
    /// `f_i f_j = f_j f_i`
    FComm,
    /// `v_j f_i = f_i v_j`
    Mixed,
    /// `f_k v_j f_i = f_i v_j f_k`
    Fvf,
    /// `v_j f_i v_l = v_l f_i v_j`
    Vfv,
    /// `Σ f_i v_i = 0`
    TraceFv,
    /// `Σ v_i f_i = 0`
    TraceVf,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::VComm => "v_i v_j = v_j v_i",
            RelationKind::FComm => "f_i f_j = f_j f_i",
            RelationKind::Mixed => "v_j f_i = f_i v_j",
            RelationKind::Fvf => "f_k v_j f_i = f_i v_j f_k",
            RelationKind::Vfv => "v_j f_i v_l = v_l f_i v_j",
            RelationKind::TraceFv => "Σ f_i v_i = 0",
            RelationKind::TraceVf => "Σ v_i f_i = 0",
        }
    }
}

/// A generating relation placed at a source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(i64, Vec<Arrow>)>,
}

type Shape = (RelationKind, Vec<(i64, Vec<Arrow>)>);

/// Generating relations at every vertex where all their words compose.
pub fn generating_relations(q: &Quiver) -> Vec<Relation> {
    use Arrow::{F, V};
    let n = q.n as u8;
    let mut shapes: Vec<Shape> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            shapes.push((RelationKind::VComm, vec![(1, vec![V(j), V(i)]), (-1, vec![V(i), V(j)])]));
            shapes.push((RelationKind::FComm, vec![(1, vec![F(j), F(i)]), (-1, vec![F(i), F(j)])]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            shapes.push((RelationKind::Mixed, vec![(1, vec![F(i), V(j)]), (-1, vec![V(j), F(i)])]));
        }
    }
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                shapes.push((
                    RelationKind::Fvf,
                    vec![(1, vec![F(i), V(j), F(k)]), (-1, vec![F(k), V(j), F(i)])],
                ));
            }
        }
    }
    for j in 0..n {
        for l in j + 1..n {
            for i in 0..n {
                shapes.push((
                    RelationKind::Vfv,
                    vec![(1, vec![V(l), F(i), V(j)]), (-1, vec![V(j), F(i), V(l)])],
                ));
            }
        }
    }
    shapes.push((RelationKind::TraceFv, (0..n).map(|i| (1, vec![V(i), F(i)])).collect()));
    shapes.push((RelationKind::TraceVf, (0..n).map(|i| (1, vec![F(i), V(i)])).collect()));

    let mut out = Vec::new();
    for (kind, terms) in shapes {
        for s in 0..q.n {
            let targets: Vec<Option<usize>> = terms.iter().map(|(_, w)| q.walk(s, w)).collect();
            if let Some(Some(t)) = targets.first() {
                if targets.iter().all(|x| *x == Some(*t)) {
                    out.push(Relation {
                        kind,
                        source: s,
                        target: *t,
                        terms: terms.clone(),
                    });
                }
            }
        }
    }
    out
}

/// A formal linear combination of words.
pub type Combination = Vec<(i64, QuiverWord)>;

/// Calls `visit` on every `prefix · relation · suffix` from `a` to `b` of length `len`.
fn for_each_instance<G: FnMut(&Relation, &[Arrow], &[Arrow])>(q: &Quiver, a: usize, b: usize, len: usize, mut visit: G) {
    let relations = generating_relations(q);
    let mut cache: HashMap<(usize, usize, usize), Vec<Vec<Arrow>>> = HashMap::new();
    let mut paths = |x: usize, y: usize, l: usize| -> Vec<Vec<Arrow>> {
        cache
            .entry((x, y, l))
            .or_insert_with(|| enumerate_paths(q, x, y, l))
            .clone()
    };
    for rel in &relations {
        let r = rel.terms[0].1.len();
        if r > len {
            continue;
        }
        for i in 0..=len - r {
            let prefixes = paths(a, rel.source, i);
            if prefixes.is_empty() {
                continue;
            }
            let suffixes = paths(rel.target, b, len - i - r);
            for p in &prefixes {
                for s in &suffixes {
                    visit(rel, p, s);
                }
            }
        }
    }
}

/// Every contextual embedding of a generating relation into paths `a -> b` of length `len`.
pub fn relation_instances(q: &Quiver, a: usize, b: usize, len: usize) -> Vec<Combination> {
    let mut out = Vec::new();
    for_each_instance(q, a, b, len, |rel, p, s| {
        out.push(
            rel.terms
                .iter()
                .map(|(c, w)| {
                    let arrows = p.iter().chain(w).chain(s).copied().collect();
                    (*c, QuiverWord { source: a, arrows })
                })
                .collect(),
        );
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellDims {
    pub a: usize,
    pub b: usize,
    pub len: usize,
    pub paths: usize,
    pub relation_rank: usize,
    pub dim: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.0[rx.max(ry)] = rx.min(ry);
        }
    }
}

/// `dim e_b (CΓ/J) e_a` in path length `len`.
///
/// Binomial relations `u - w` are quotiented by merging words into classes;
/// the remaining relations are reduced over the classes by fraction-free
/// elimination, one torus-weight block at a time.
pub fn graded_dim(q: &Quiver, a: usize, b: usize, len: usize) -> CellDims {
    let paths = enumerate_paths(q, a, b, len);
    let index: HashMap<&[Arrow], usize> = paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut uf = UnionFind((0..paths.len()).collect());
    let mut others: Vec<Vec<(usize, i64)>> = Vec::new();
    let mut word = Vec::with_capacity(len);
    for_each_instance(q, a, b, len, |rel, p, s| {
        let mut row = Vec::with_capacity(rel.terms.len());
        for (c, w) in &rel.terms {
            word.clear();
            word.extend_from_slice(p);
            word.extend_from_slice(w);
            word.extend_from_slice(s);
            row.push((index[word.as_slice()], *c));
        }
        if row.len() == 2 && row[0].1 == -row[1].1 {
            uf.union(row[0].0, row[1].0);
        } else {
            others.push(row);
        }
    });
    let mut class_of = vec![usize::MAX; paths.len()];
    let mut classes = 0;
    for i in 0..paths.len() {
        let r = uf.find(i);
        if class_of[r] == usize::MAX {
            class_of[r] = classes;
            classes += 1;
        }
        class_of[i] = class_of[r];
    }
    let mut blocks: BTreeMap<Vec<i8>, FractionFreeEchelon> = BTreeMap::new();
    for row in others {
        let v = sparse_from_entries(row.iter().map(|&(i, c)| (class_of[i], BigInt::from(c))));
        if v.is_empty() {
            continue;
        }
        let key = torus_weight(q.n, &paths[row[0].0]);
        blocks.entry(key).or_default().insert(v);
    }
    let trace_rank: usize = blocks.values().map(FractionFreeEchelon::rank).sum();
    let relation_rank = paths.len() - classes + trace_rank;
    CellDims {
        a,
        b,
        len,
        paths: paths.len(),
        relation_rank,
        dim: paths.len() - relation_rank,
    }
}

/// All cells `(a, b, len)` with `len <= max_len`, computed in parallel.
pub fn dimension_table(q: &Quiver, max_len: usize) -> Vec<CellDims> {
    let n = q.n;
    let cells: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..=max_len).map(move |l| (a, b, l))))
        .collect();
    cells.par_iter().map(|&(a, b, l)| graded_dim(q, a, b, l)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareCell {
    pub a: usize,
    pub b: usize,
    pub len: usize,
    pub quiver_dim: usize,
    pub nccr_dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub n: usize,
    pub max_len: usize,
    pub cells: Vec<CompareCell>,
    pub mismatches: Vec<CompareCell>,
}

impl CompareReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// A path of length `len` from `a` to `b` lies in R-degree `(len - |b - a|) / 2`
/// of `Hom_Y(O(a), O(b))`.
pub fn nccr_degree(a: usize, b: usize, len: usize) -> Option<usize> {
    let d = a.abs_diff(b);
    (len >= d && (len - d).is_multiple_of(2)).then(|| (len - d) / 2)
}

pub fn compare_with_nccr(n: usize, max_len: usize) -> Result<CompareReport> {
    let q = Quiver::new(n)?;
    let cap = max_len / 2;
    let mut homs = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            homs.insert((a, b), hom_y_graded(a as i64, b as i64, n, cap)?);
        }
    }
    let cells: Vec<CompareCell> = dimension_table(&q, max_len)
        .into_iter()
        .map(|c| CompareCell {
            a: c.a,
            b: c.b,
            len: c.len,
            quiver_dim: c.dim,
            nccr_dim: nccr_degree(c.a, c.b, c.len).map_or(0, |k| homs[&(c.a, c.b)].get(k)),
        })
        .collect();
    let mismatches = cells
        .iter()
        .filter(|c| c.quiver_dim as u64 != c.nccr_dim)
        .cloned()
        .collect();
    Ok(CompareReport {
        n,
        max_len,
        cells,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trace_instance_at_corner() {
        let q = Quiver::new(2).unwrap();
        let inst = relation_instances(&q, 0, 0, 2);
        assert_eq!(inst.len(), 1);
        assert_eq!(inst[0].len(), 2);
        assert_eq!(graded_dim(&q, 0, 0, 2).dim, 3);
    }

    #[test]
    fn rank_two_line() {
        let q = Quiver::new(2).unwrap();
        for l in 0..=6 {
            for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let expect = if nccr_degree(a, b, l).is_some() { l + 1 } else { 0 };
                assert_eq!(graded_dim(&q, a, b, l).dim, expect, "({a},{b},{l})");
            }
        }
    }

    #[test]
    fn boundary_vertices_drop_one_sided_relations() {
        let q = Quiver::new(3).unwrap();
        let rels = generating_relations(&q);
        assert!(rels
            .iter()
            .filter(|r| r.kind == RelationKind::Mixed)
            .all(|r| r.source == 1));
        assert!(rels
            .iter()
            .filter(|r| r.kind == RelationKind::TraceVf)
            .all(|r| r.source < 2));
    }
}
