//! J-skeleta: the greedy construction, enumeration of all skeleta of a
//! representation, abstract skeleton enumeration for a shape, and the path
//! universes.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::matrix::RowSpace;
use crate::quiver::{ExtendedQuiver, FramedPath, FramedShape, Quiver};
use crate::rep::{FramedRep, RowBundle};

/// A prefix-closed set of framed paths with exactly alpha_i paths starting
/// at each vertex, each vertex list sorted canonically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Skeleton {
    /// per vertex (0-based): paths starting there, canonical order
    per_vertex: Vec<Vec<FramedPath>>,
    shape: FramedShape,
}

impl Skeleton {
    pub fn from_paths(
        quiver: &Quiver,
        shape: &FramedShape,
        paths: Vec<FramedPath>,
    ) -> Result<Skeleton, Error> {
        let mut per_vertex: Vec<Vec<FramedPath>> = vec![Vec::new(); quiver.vertex_count()];
        for p in &paths {
            per_vertex[p.start(quiver) - 1].push(p.clone());
        }
        for v in &mut per_vertex {
            v.sort_by(|a, b| a.canonical_compare(b));
            v.dedup();
        }
        let s = Skeleton { per_vertex, shape: shape.clone() };
        s.check(quiver)?;
        Ok(s)
    }

    fn check(&self, quiver: &Quiver) -> Result<(), Error> {
        for (i, v) in self.per_vertex.iter().enumerate() {
            if v.len() != self.shape.alpha[i] {
                return Err(Error::Document(format!(
                    "skeleton has {} paths at vertex {}, alpha demands {}",
                    v.len(),
                    i + 1,
                    self.shape.alpha[i]
                )));
            }
        }
        if !self.is_prefix_closed(quiver) {
            return Err(Error::Document("skeleton is not prefix-closed".into()));
        }
        Ok(())
    }

    pub fn vertex_paths(&self, vertex: usize) -> &[FramedPath] {
        &self.per_vertex[vertex - 1]
    }

    pub fn shape(&self) -> &FramedShape {
        &self.shape
    }

    pub fn contains(&self, quiver: &Quiver, p: &FramedPath) -> bool {
        self.per_vertex[p.start(quiver) - 1].contains(p)
    }

    /// All paths merged, in canonical order.
    pub fn all_paths(&self) -> Vec<FramedPath> {
        let mut all: Vec<FramedPath> = self.per_vertex.iter().flatten().cloned().collect();
        all.sort_by(|a, b| a.canonical_compare(b));
        all
    }

    /// Sorted key used for the deterministic ordering of skeleton lists.
    pub fn sort_key(&self) -> Vec<(usize, usize, usize, Vec<usize>)> {
        self.all_paths().iter().map(|p| p.canonical_key()).collect()
    }

    pub fn is_prefix_closed(&self, quiver: &Quiver) -> bool {
        self.per_vertex.iter().flatten().all(|p| match p.parent() {
            Some(parent) => self.contains(quiver, &parent),
            None => true,
        })
    }

    /// The index of `p` within its vertex list, if present.
    pub fn position(&self, quiver: &Quiver, p: &FramedPath) -> Option<usize> {
        self.per_vertex[p.start(quiver) - 1].iter().position(|x| x == p)
    }
}

/// Gamma (all paths occurring in skeleta of the shape) and Gamma-tilde
/// (Gamma plus its one-arrow extensions), both canonically ordered.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathUniverse {
    pub gamma: Vec<FramedPath>,
    pub gamma_tilde: Vec<FramedPath>,
}

impl PathUniverse {
    /// Exact universe: the union of all abstract skeleta.
    pub fn compute(quiver: &Quiver, shape: &FramedShape) -> Result<PathUniverse, Error> {
        let skeleta = enumerate_abstract_skeleta(quiver, shape)?;
        let mut gamma: BTreeSet<(usize, usize, usize, Vec<usize>)> = BTreeSet::new();
        let mut gamma_paths: Vec<FramedPath> = Vec::new();
        for s in &skeleta {
            for p in s.all_paths() {
                if gamma.insert(p.canonical_key()) {
                    gamma_paths.push(p);
                }
            }
        }
        gamma_paths.sort_by(|a, b| a.canonical_compare(b));
        Ok(Self::from_gamma(quiver, gamma_paths))
    }

    /// Superset universe for loop-type shapes: every framed path with plain
    /// length below the total dimension. Coarser than the exact Gamma.
    pub fn superset(quiver: &Quiver, shape: &FramedShape) -> Result<PathUniverse, Error> {
        let eq = ExtendedQuiver::build(quiver, shape)?;
        let bound = shape.total_dim().saturating_sub(1);
        let gamma = eq.enumerate_framed_paths(bound);
        Ok(Self::from_gamma(quiver, gamma))
    }

    fn from_gamma(quiver: &Quiver, gamma: Vec<FramedPath>) -> PathUniverse {
        let mut tilde: BTreeSet<(usize, usize, usize, Vec<usize>)> =
            gamma.iter().map(|p| p.canonical_key()).collect();
        let mut gamma_tilde = gamma.clone();
        for p in &gamma {
            let start = p.start(quiver);
            for (ai, a) in quiver.arrows().iter().enumerate() {
                if a.head == start {
                    let ext = p.extend(ai, quiver).expect("heads match");
                    if tilde.insert(ext.canonical_key()) {
                        gamma_tilde.push(ext);
                    }
                }
            }
        }
        gamma_tilde.sort_by(|a, b| a.canonical_compare(b));
        PathUniverse { gamma, gamma_tilde }
    }

    pub fn tilde_at_vertex(&self, quiver: &Quiver, vertex: usize) -> Vec<FramedPath> {
        self.gamma_tilde.iter().filter(|p| p.start(quiver) == vertex).cloned().collect()
    }
}

/// Greedy construction of the canonical skeleton of a stable pair: seed with
/// independent framing rows in (i, q) order, then repeatedly add the
/// canonically-least extension whose row is independent at its start vertex.
pub fn greedy_skeleton(rep: &FramedRep) -> Result<Skeleton, Error> {
    let quiver = rep.quiver();
    let shape = rep.shape();
    let n = quiver.vertex_count();
    let mut spaces: Vec<RowSpace> =
        (0..n).map(|i| RowSpace::new(shape.alpha[i], rep.field())).collect();
    let mut selected: Vec<FramedPath> = Vec::new();

    for i in 1..=n {
        for q in 1..=shape.zeta[i - 1] {
            let p = FramedPath::framing(i, q);
            if spaces[i - 1].is_full() {
                continue;
            }
            let row = rep.row_of_path(&p)?;
            if spaces[i - 1].insert(&row) {
                selected.push(p);
            }
        }
    }

    loop {
        let mut candidates: Vec<FramedPath> = Vec::new();
        for p in &selected {
            let start = p.start(quiver);
            for (ai, a) in quiver.arrows().iter().enumerate() {
                if a.head == start {
                    let ext = p.extend(ai, quiver).expect("heads match");
                    if !selected.contains(&ext) {
                        candidates.push(ext);
                    }
                }
            }
        }
        candidates.sort_by(|a, b| a.canonical_compare(b));
        candidates.dedup();
        let mut progressed = false;
        for c in candidates {
            let v = c.start(quiver) - 1;
            if spaces[v].is_full() {
                continue;
            }
            let row = rep.row_of_path(&c)?;
            if spaces[v].insert(&row) {
                selected.push(c);
                progressed = true;
            }
        }
        if spaces.iter().all(RowSpace::is_full) {
            break;
        }
        if !progressed {
            return Err(Error::NotStable);
        }
    }
    Skeleton::from_paths(quiver, shape, selected)
}

/// All prefix-closed framed path sets with exactly alpha_i paths per start
/// vertex, via backtracking over canonically increasing candidates. Plain
/// lengths are capped at (sum alpha_i) - 1, the prefix-chain bound.
pub fn enumerate_abstract_skeleta(
    quiver: &Quiver,
    shape: &FramedShape,
) -> Result<Vec<Skeleton>, Error> {
    shape.check(quiver)?;
    let max_plain = shape.total_dim().saturating_sub(1);
    let mut out = Vec::new();
    let mut chosen: Vec<FramedPath> = Vec::new();
    let mut counts = vec![0usize; quiver.vertex_count()];
    backtrack(quiver, shape, max_plain, &mut chosen, &mut counts, &mut out);
    out.sort_by_key(Skeleton::sort_key);
    Ok(out)
}

fn backtrack(
    quiver: &Quiver,
    shape: &FramedShape,
    max_plain: usize,
    chosen: &mut Vec<FramedPath>,
    counts: &mut Vec<usize>,
    out: &mut Vec<Skeleton>,
) {
    if counts.iter().zip(&shape.alpha).all(|(c, a)| c == a) {
        let s = Skeleton::from_paths(quiver, shape, chosen.clone())
            .expect("construction preserves the invariants");
        out.push(s);
        return;
    }
    let mut candidates: Vec<FramedPath> = Vec::new();
    for (i, &z) in shape.zeta.iter().enumerate() {
        for q in 1..=z {
            candidates.push(FramedPath::framing(i + 1, q));
        }
    }
    for p in chosen.iter() {
        if p.plain.len() >= max_plain {
            continue;
        }
        let start = p.start(quiver);
        for (ai, a) in quiver.arrows().iter().enumerate() {
            if a.head == start {
                candidates.push(p.extend(ai, quiver).expect("heads match"));
            }
        }
    }
    candidates.sort_by(|a, b| a.canonical_compare(b));
    candidates.dedup();
    let last_key = chosen.last().map(FramedPath::canonical_key);
    for c in candidates {
        if let Some(ref lk) = last_key {
            if c.canonical_key() <= *lk {
                continue;
            }
        }
        let v = c.start(quiver) - 1;
        if counts[v] >= shape.alpha[v] {
            continue;
        }
        chosen.push(c);
        counts[v] += 1;
        backtrack(quiver, shape, max_plain, chosen, counts, out);
        counts[v] -= 1;
        chosen.pop();
    }
}

/// All abstract skeleta whose submatrices B(S_i) are nonsingular for `rep`.
/// Empty exactly when `rep` is unstable.
pub fn skeleta_of_rep(rep: &FramedRep) -> Result<Vec<Skeleton>, Error> {
    let abstracts = enumerate_abstract_skeleta(rep.quiver(), rep.shape())?;
    skeleta_of_rep_among(rep, &abstracts)
}

/// Filters a precomputed abstract-skeleton list against `rep`.
pub fn skeleta_of_rep_among(
    rep: &FramedRep,
    abstracts: &[Skeleton],
) -> Result<Vec<Skeleton>, Error> {
    let quiver = rep.quiver();
    let mut out = Vec::new();
    'skel: for s in abstracts {
        for i in 1..=quiver.vertex_count() {
            let paths = s.vertex_paths(i);
            if paths.is_empty() {
                continue;
            }
            let rows: Vec<crate::matrix::Matrix> =
                paths.iter().map(|p| rep.row_of_path(p)).collect::<Result<_, _>>()?;
            let refs: Vec<&crate::matrix::Matrix> = rows.iter().collect();
            let block = crate::matrix::Matrix::vstack(&refs)?;
            if block.det()?.is_zero() {
                continue 'skel;
            }
        }
        out.push(s.clone());
    }
    Ok(out)
}

/// The square block B(S_i) of a bundle for one vertex of a skeleton.
pub fn skeleton_block(
    bundle: &RowBundle,
    s: &Skeleton,
    vertex: usize,
) -> Result<crate::matrix::Matrix, Error> {
    bundle.stack(vertex, s.vertex_paths(vertex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::Matrix;

    fn field() -> Field {
        Field::Rational
    }

    fn loop_rep(q: usize, m: usize, zeta: usize, mats: &[&[i64]], f: &[&[i64]]) -> FramedRep {
        let quiver = Quiver::loop_quiver(q);
        let shape = FramedShape::new(vec![m], vec![zeta]);
        let arrow_mats = mats.iter().map(|d| Matrix::from_i64(m, m, field(), d)).collect();
        let framing = f
            .iter()
            .flat_map(|rows| rows.chunks(m))
            .flatten()
            .copied()
            .collect::<Vec<i64>>();
        let framing = vec![Matrix::from_i64(zeta, m, field(), &framing)];
        FramedRep::new(quiver, shape, field(), arrow_mats, framing).unwrap()
    }

    #[test]
    fn abstract_counts_match_the_examples() {
        let l1 = Quiver::loop_quiver(1);
        for m in 1..=4 {
            let s = enumerate_abstract_skeleta(&l1, &FramedShape::new(vec![m], vec![1])).unwrap();
            assert_eq!(s.len(), 1, "L_1 zeta=1 alpha={m}");
        }
        let s = enumerate_abstract_skeleta(&l1, &FramedShape::new(vec![2], vec![2])).unwrap();
        assert_eq!(s.len(), 3);
        let l2 = Quiver::loop_quiver(2);
        let s = enumerate_abstract_skeleta(&l2, &FramedShape::new(vec![2], vec![1])).unwrap();
        assert_eq!(s.len(), 2);
        let labels: Vec<Vec<String>> = s
            .iter()
            .map(|sk| sk.all_paths().iter().map(|p| p.format(&l2)).collect())
            .collect();
        assert_eq!(labels, vec![vec!["f1.1", "f1.1*a"], vec!["f1.1", "f1.1*b"]]);
    }

    #[test]
    fn universe_sizes() {
        let l1 = Quiver::loop_quiver(1);
        for m in 1..=4 {
            let u = PathUniverse::compute(&l1, &FramedShape::new(vec![m], vec![1])).unwrap();
            assert_eq!(u.gamma_tilde.len(), m + 1);
        }
        let u = PathUniverse::compute(&l1, &FramedShape::new(vec![2], vec![2])).unwrap();
        assert_eq!(u.gamma_tilde.len(), 6);
        let l2 = Quiver::loop_quiver(2);
        let u = PathUniverse::compute(&l2, &FramedShape::new(vec![2], vec![1])).unwrap();
        assert_eq!(u.gamma_tilde.len(), 7);
        assert!(u.gamma.len() <= u.gamma_tilde.len());
    }

    #[test]
    fn greedy_on_the_companion_example() {
        let rep = loop_rep(1, 3, 1, &[&[0, 1, 0, 0, 0, 1, 5, -2, 7]], &[&[1, 0, 0]]);
        let s = greedy_skeleton(&rep).unwrap();
        let q = rep.quiver();
        let labels: Vec<String> = s.all_paths().iter().map(|p| p.format(q)).collect();
        assert_eq!(labels, vec!["f1.1", "f1.1*a", "f1.1*a*a"]);
    }

    #[test]
    fn greedy_seeds_framing_rows_first() {
        // Example with two independent framing rows: greedy picks {f1, f2}
        let rep = loop_rep(1, 2, 2, &[&[1, 2, 3, 4]], &[&[1, 0, 0, 1]]);
        let s = greedy_skeleton(&rep).unwrap();
        let q = rep.quiver();
        let labels: Vec<String> = s.all_paths().iter().map(|p| p.format(q)).collect();
        assert_eq!(labels, vec!["f1.1", "f1.2"]);
    }

    #[test]
    fn greedy_rejects_unstable() {
        let rep = loop_rep(1, 2, 1, &[&[0, 0, 0, 1]], &[&[1, 0]]);
        assert_eq!(greedy_skeleton(&rep), Err(Error::NotStable));
        assert!(skeleta_of_rep(&rep).unwrap().is_empty());
    }

    #[test]
    fn skeleta_of_generic_and_degenerate_triples() {
        // generic triple of L_1 zeta=2: all three skeleta
        let rep = loop_rep(1, 2, 2, &[&[1, 2, 3, 4]], &[&[1, 0, 0, 1]]);
        assert_eq!(skeleta_of_rep(&rep).unwrap().len(), 3);
        // f2 = 0 kills every minor containing the f2 row
        let rep = loop_rep(1, 2, 2, &[&[1, 2, 3, 4]], &[&[1, 0, 0, 0]]);
        let s = skeleta_of_rep(&rep).unwrap();
        assert_eq!(s.len(), 1);
        let labels: Vec<String> =
            s[0].all_paths().iter().map(|p| p.format(rep.quiver())).collect();
        assert_eq!(labels, vec!["f1.1", "f1.1*a"]);
    }

    #[test]
    fn greedy_result_is_listed() {
        let rep = loop_rep(2, 2, 1, &[&[1, 2, 3, 4], &[0, 1, 1, 0]], &[&[1, 1]]);
        let g = greedy_skeleton(&rep).unwrap();
        let all = skeleta_of_rep(&rep).unwrap();
        assert!(all.contains(&g));
    }

    #[test]
    fn skeleton_length_bound() {
        let l2 = Quiver::loop_quiver(2);
        let shape = FramedShape::new(vec![3], vec![1]);
        for s in enumerate_abstract_skeleta(&l2, &shape).unwrap() {
            for p in s.all_paths() {
                assert!(p.plain.len() <= shape.total_dim() - 1);
            }
        }
    }
}
