//! Chart projections, sections, normal forms, the isomorphism decision, and
//! numeric transition maps between charts.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{FramedPath, Quiver};
use crate::rep::{FramedRep, GroupElement, RowBundle};
use crate::skeleton::{skeleta_of_rep, skeleton_block, Skeleton};

/// Local coordinates on the chart of a skeleton: per vertex, rows indexed by
/// the complement paths (one-arrow extensions of the skeleton not in it,
/// plus unused framing arrows), each row of width alpha_i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartPoint {
    skeleton: Skeleton,
    /// per vertex (0-based): (path, 1 x alpha_i row) in canonical order
    rows: Vec<Vec<(FramedPath, Matrix)>>,
}

impl ChartPoint {
    pub fn new(
        quiver: &Quiver,
        skeleton: Skeleton,
        mut rows: Vec<Vec<(FramedPath, Matrix)>>,
    ) -> Result<ChartPoint, Error> {
        let expected = complement_paths(quiver, &skeleton);
        if rows.len() != expected.len() {
            return Err(Error::IndexMismatch("vertex count".into()));
        }
        for v in &mut rows {
            v.sort_by(|a, b| a.0.canonical_compare(&b.0));
        }
        for (i, (got, want)) in rows.iter().zip(&expected).enumerate() {
            let got_paths: Vec<&FramedPath> = got.iter().map(|(p, _)| p).collect();
            let want_paths: Vec<&FramedPath> = want.iter().collect();
            if got_paths != want_paths {
                return Err(Error::IndexMismatch(format!(
                    "rows at vertex {} do not match the skeleton complement",
                    i + 1
                )));
            }
            for (_, r) in got {
                if r.rows() != 1 || r.cols() != skeleton.shape().alpha[i] {
                    return Err(Error::IndexMismatch(format!(
                        "row width at vertex {} must be {}",
                        i + 1,
                        skeleton.shape().alpha[i]
                    )));
                }
            }
        }
        Ok(ChartPoint { skeleton, rows })
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn vertex_rows(&self, vertex: usize) -> &[(FramedPath, Matrix)] {
        &self.rows[vertex - 1]
    }

    pub fn row_for(&self, vertex: usize, path: &FramedPath) -> Option<&Matrix> {
        self.rows[vertex - 1].iter().find(|(p, _)| p == path).map(|(_, m)| m)
    }

    /// Number of coordinate entries, which equals the chart dimension.
    pub fn entry_count(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, v)| v.len() * self.skeleton.shape().alpha[i])
            .sum()
    }
}

/// The complement index sets: per vertex, the one-arrow extensions of
/// skeleton paths and the unused framing arrows, minus the skeleton itself.
pub fn complement_paths(quiver: &Quiver, s: &Skeleton) -> Vec<Vec<FramedPath>> {
    let n = quiver.vertex_count();
    let mut sets: Vec<BTreeSet<(usize, usize, usize, Vec<usize>)>> = vec![BTreeSet::new(); n];
    let mut paths: Vec<Vec<FramedPath>> = vec![Vec::new(); n];
    let push = |sets: &mut Vec<BTreeSet<_>>, paths: &mut Vec<Vec<FramedPath>>, p: FramedPath| {
        let v = p.start(quiver) - 1;
        if !s.contains(quiver, &p) && sets[v].insert(p.canonical_key()) {
            paths[v].push(p);
        }
    };
    for i in 1..=n {
        for p in s.vertex_paths(i) {
            let start = p.start(quiver);
            for (ai, a) in quiver.arrows().iter().enumerate() {
                if a.head == start {
                    push(&mut sets, &mut paths, p.extend(ai, quiver).expect("heads match"));
                }
            }
        }
    }
    for (i, &z) in s.shape().zeta.iter().enumerate() {
        for q in 1..=z {
            push(&mut sets, &mut paths, FramedPath::framing(i + 1, q));
        }
    }
    for v in &mut paths {
        v.sort_by(|a, b| a.canonical_compare(b));
    }
    paths
}

/// Recovers the arrow matrices from a bundle that lies in the chart of `s`:
/// M_a = B(S_{h(a)})^{-1} B(S_{h(a)} a), the extension rows read at t(a).
pub fn recover_arrow_maps(
    bundle: &RowBundle,
    s: &Skeleton,
    quiver: &Quiver,
) -> Result<Vec<Matrix>, Error> {
    let mut out = Vec::new();
    for (ai, a) in quiver.arrows().iter().enumerate() {
        let block = skeleton_block(bundle, s, a.head)?;
        let inv = block.invert()?;
        let extended: Vec<FramedPath> = s
            .vertex_paths(a.head)
            .iter()
            .map(|p| p.extend(ai, quiver).expect("heads match"))
            .collect();
        let ext_block = bundle.stack(a.tail, &extended)?;
        out.push(inv.mul(&ext_block)?);
    }
    Ok(out)
}

/// The chart projection pi_S: complement rows of B^{(i)} B(S_i)^{-1}.
pub fn project_chart(rep: &FramedRep, s: &Skeleton) -> Result<ChartPoint, Error> {
    let quiver = rep.quiver();
    let n = quiver.vertex_count();
    let mut inverses: Vec<Matrix> = Vec::with_capacity(n);
    for i in 1..=n {
        let paths = s.vertex_paths(i);
        let rows: Vec<Matrix> =
            paths.iter().map(|p| rep.row_of_path(p)).collect::<Result<_, _>>()?;
        let refs: Vec<&Matrix> = rows.iter().collect();
        let block = if refs.is_empty() {
            Matrix::identity(0, rep.field())
        } else {
            Matrix::vstack(&refs)?
        };
        inverses.push(block.invert().map_err(|e| match e {
            Error::Singular => Error::NotInChart,
            other => other,
        })?);
    }
    let complement = complement_paths(quiver, s);
    let mut rows = Vec::with_capacity(n);
    for (i, paths) in complement.iter().enumerate() {
        let mut vrows = Vec::with_capacity(paths.len());
        for p in paths {
            let row = rep.row_of_path(p)?.mul(&inverses[i])?;
            vrows.push((p.clone(), row));
        }
        rows.push(vrows);
    }
    ChartPoint::new(quiver, s.clone(), rows)
}

/// The section of pi_S: rebuilds the unique representation in the fiber with
/// B(S_i) the identity.
pub fn section(
    quiver: &Quiver,
    field: Field,
    s: &Skeleton,
    c: &ChartPoint,
) -> Result<FramedRep, Error> {
    if c.skeleton() != s {
        return Err(Error::IndexMismatch("chart point is indexed by another skeleton".into()));
    }
    let shape = s.shape().clone();
    let row_for = |p: &FramedPath| -> Result<Matrix, Error> {
        let start = p.start(quiver);
        if let Some(j) = s.position(quiver, p) {
            Ok(Matrix::identity(shape.alpha[start - 1], field).row(j))
        } else {
            c.row_for(start, p)
                .cloned()
                .ok_or_else(|| Error::IndexMismatch(format!("missing row for {p}")))
        }
    };
    let mut arrow_mats = Vec::new();
    for (ai, a) in quiver.arrows().iter().enumerate() {
        let rows: Vec<Matrix> = s
            .vertex_paths(a.head)
            .iter()
            .map(|p| row_for(&p.extend(ai, quiver).expect("heads match")))
            .collect::<Result<_, _>>()?;
        let refs: Vec<&Matrix> = rows.iter().collect();
        let m = if refs.is_empty() {
            Matrix::zero(0, shape.alpha[a.tail - 1], field)
        } else {
            Matrix::vstack(&refs)?
        };
        arrow_mats.push(m);
    }
    let mut framing = Vec::new();
    for (i, &z) in shape.zeta.iter().enumerate() {
        let rows: Vec<Matrix> =
            (1..=z).map(|q| row_for(&FramedPath::framing(i + 1, q))).collect::<Result<_, _>>()?;
        let refs: Vec<&Matrix> = rows.iter().collect();
        let m = if refs.is_empty() {
            Matrix::zero(0, shape.alpha[i], field)
        } else {
            Matrix::vstack(&refs)?
        };
        framing.push(m);
    }
    FramedRep::new(quiver.clone(), shape, field, arrow_mats, framing)
}

/// The normal form of `rep` with respect to one of its skeleta.
pub fn normal_form(rep: &FramedRep, s: &Skeleton) -> Result<FramedRep, Error> {
    let c = project_chart(rep, s)?;
    section(rep.quiver(), rep.field(), s, &c)
}

/// Outcome of the isomorphism decision.
#[derive(Clone, Debug)]
pub enum IsoDecision {
    Isomorphic { witness: GroupElement, skeleton: Skeleton },
    NotIsomorphic,
}

impl IsoDecision {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoDecision::Isomorphic { .. })
    }
}

/// Decides whether two stable pairs are in the same orbit. On success the
/// witness g satisfies act(g, rep1) = rep2 and is verified before returning.
pub fn iso_check(rep1: &FramedRep, rep2: &FramedRep) -> Result<IsoDecision, Error> {
    if rep1.quiver() != rep2.quiver()
        || rep1.shape() != rep2.shape()
        || rep1.field() != rep2.field()
    {
        return Err(Error::ShapeMismatch("isomorphism requires matching quiver/shape/field".into()));
    }
    let s1 = skeleta_of_rep(rep1)?;
    let s2 = skeleta_of_rep(rep2)?;
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::NotStable);
    }
    let common = s1.iter().find(|s| s2.contains(s));
    let Some(s) = common else {
        return Ok(IsoDecision::NotIsomorphic);
    };
    let nf1 = normal_form(rep1, s)?;
    let nf2 = normal_form(rep2, s)?;
    if nf1 != nf2 {
        return Ok(IsoDecision::NotIsomorphic);
    }
    // B = g(B) B^C with g(B)_i = B(S_i): both reps reach the same normal
    // form, so g = g2^{-1} g1 carries rep1 to rep2.
    let quiver = rep1.quiver();
    let mut blocks = Vec::new();
    for i in 1..=quiver.vertex_count() {
        let b1 = stack_rows(rep1, s.vertex_paths(i))?;
        let b2 = stack_rows(rep2, s.vertex_paths(i))?;
        blocks.push(b2.invert()?.mul(&b1)?);
    }
    let witness = GroupElement::new(blocks)?;
    if rep1.act(&witness)? != *rep2 {
        return Err(Error::Document("internal: witness failed verification".into()));
    }
    Ok(IsoDecision::Isomorphic { witness, skeleton: s.clone() })
}

fn stack_rows(rep: &FramedRep, paths: &[FramedPath]) -> Result<Matrix, Error> {
    let rows: Vec<Matrix> = paths.iter().map(|p| rep.row_of_path(p)).collect::<Result<_, _>>()?;
    let refs: Vec<&Matrix> = rows.iter().collect();
    if refs.is_empty() {
        return Ok(Matrix::identity(0, rep.field()));
    }
    Matrix::vstack(&refs)
}

/// The numeric transition map between the charts of `s` and `t`.
pub fn transition(
    quiver: &Quiver,
    field: Field,
    s: &Skeleton,
    t: &Skeleton,
    c: &ChartPoint,
) -> Result<ChartPoint, Error> {
    let rep = section(quiver, field, s, c)?;
    project_chart(&rep, t)
}
