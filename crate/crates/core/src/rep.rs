//! Framed representations, the base-change action, path evaluation rows,
//! and the maximal subrepresentation inside the kernel of the framing.

use crate::error::Error;
use crate::field::Field;
use crate::matrix::{Matrix, RowSpace};
use crate::quiver::{ExtendedQuiver, FramedPath, FramedShape, Quiver};

/// A pair (M, f): one matrix per arrow and one framing matrix per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FramedRep {
    quiver: Quiver,
    shape: FramedShape,
    field: Field,
    /// arrow_mats[a]: alpha_{h(a)} x alpha_{t(a)}
    arrow_mats: Vec<Matrix>,
    /// framing[i]: zeta_i x alpha_i
    framing: Vec<Matrix>,
}

impl FramedRep {
    pub fn new(
        quiver: Quiver,
        shape: FramedShape,
        field: Field,
        arrow_mats: Vec<Matrix>,
        framing: Vec<Matrix>,
    ) -> Result<FramedRep, Error> {
        shape.check(&quiver)?;
        if arrow_mats.len() != quiver.arrows().len() || framing.len() != quiver.vertex_count() {
            return Err(Error::QuiverShapeMismatch);
        }
        for (idx, m) in arrow_mats.iter().enumerate() {
            let a = quiver.arrow(idx);
            if m.rows() != shape.alpha[a.head - 1] || m.cols() != shape.alpha[a.tail - 1] {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` matrix must be {}x{}",
                    a.name,
                    shape.alpha[a.head - 1],
                    shape.alpha[a.tail - 1]
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        for (i, m) in framing.iter().enumerate() {
            if m.rows() != shape.zeta[i] || m.cols() != shape.alpha[i] {
                return Err(Error::ShapeMismatch(format!(
                    "framing at vertex {} must be {}x{}",
                    i + 1,
                    shape.zeta[i],
                    shape.alpha[i]
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(FramedRep { quiver, shape, field, arrow_mats, framing })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn shape(&self) -> &FramedShape {
        &self.shape
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arrow_matrix(&self, idx: usize) -> &Matrix {
        &self.arrow_mats[idx]
    }

    pub fn framing_matrix(&self, vertex: usize) -> &Matrix {
        &self.framing[vertex - 1]
    }

    pub fn extended_quiver(&self) -> ExtendedQuiver {
        ExtendedQuiver::build(&self.quiver, &self.shape).expect("shape validated on construction")
    }

    /// Row f_{iq} M_{a1} ... M_{ak}, a 1 x alpha_{start(p)} matrix.
    pub fn row_of_path(&self, p: &FramedPath) -> Result<Matrix, Error> {
        let f = &self.framing[p.vertex - 1];
        if p.slot == 0 || p.slot > f.rows() {
            return Err(Error::SlotOutOfRange { vertex: p.vertex, slot: p.slot });
        }
        let mut row = f.row(p.slot - 1);
        for &a in p.plain.word() {
            row = row.mul(&self.arrow_mats[a])?;
        }
        Ok(row)
    }

    /// Applies g in GL(alpha): M'_a = g_{h(a)} M_a g_{t(a)}^{-1},
    /// f'_i = f_i g_i^{-1}.
    pub fn act(&self, g: &GroupElement) -> Result<FramedRep, Error> {
        if g.blocks.len() != self.quiver.vertex_count() {
            return Err(Error::QuiverShapeMismatch);
        }
        for (i, b) in g.blocks.iter().enumerate() {
            if b.rows() != self.shape.alpha[i] {
                return Err(Error::ShapeMismatch(format!(
                    "group block at vertex {} must be {0}x{0}-sized {1}",
                    i + 1,
                    self.shape.alpha[i]
                )));
            }
        }
        let inverses: Vec<Matrix> =
            g.blocks.iter().map(|b| b.invert()).collect::<Result<_, _>>()?;
        let arrow_mats = self
            .arrow_mats
            .iter()
            .enumerate()
            .map(|(idx, m)| {
                let a = self.quiver.arrow(idx);
                g.blocks[a.head - 1].mul(m)?.mul(&inverses[a.tail - 1])
            })
            .collect::<Result<Vec<_>, _>>()?;
        let framing = self
            .framing
            .iter()
            .enumerate()
            .map(|(i, f)| f.mul(&inverses[i]))
            .collect::<Result<Vec<_>, _>>()?;
        FramedRep::new(self.quiver.clone(), self.shape.clone(), self.field, arrow_mats, framing)
    }

    /// Per-vertex echelon bases of the saturated row span: the smallest
    /// per-vertex row spaces containing every f_{iq} row and closed under
    /// right multiplication by the arrow matrices.
    fn saturated_row_spaces(&self) -> Vec<RowSpace> {
        let n = self.quiver.vertex_count();
        let mut spaces: Vec<RowSpace> =
            (0..n).map(|i| RowSpace::new(self.shape.alpha[i], self.field)).collect();
        // frontier: rows whose one-arrow extensions are still unexplored
        let mut frontier: Vec<(usize, Matrix)> = Vec::new();
        for i in 0..n {
            for q in 0..self.shape.zeta[i] {
                let row = self.framing[i].row(q);
                if spaces[i].insert(&row) {
                    frontier.push((i, row));
                }
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (vertex, row) in frontier {
                for (idx, a) in self.quiver.arrows().iter().enumerate() {
                    if a.head == vertex + 1 {
                        let extended = row.mul(&self.arrow_mats[idx]).expect("shapes agree");
                        if spaces[a.tail - 1].insert(&extended) {
                            next.push((a.tail - 1, extended));
                        }
                    }
                }
            }
            frontier = next;
        }
        spaces
    }

    /// The maximal subrepresentation contained in ker f, as a per-vertex
    /// column basis.
    pub fn max_submodule_in_kernel(&self) -> GradedSubspace {
        let spaces = self.saturated_row_spaces();
        let bases = spaces.iter().map(|s| s.basis_matrix().kernel_basis()).collect::<Vec<_>>();
        GradedSubspace {
            bases: bases
                .into_iter()
                .enumerate()
                .map(|(i, cols)| {
                    if cols.is_empty() {
                        Matrix::zero(self.shape.alpha[i], 0, self.field)
                    } else {
                        let width = cols.len();
                        Matrix::from_fn(self.shape.alpha[i], width, self.field, |r, c| {
                            cols[c].at(r, 0).clone()
                        })
                    }
                })
                .collect(),
        }
    }

    /// A pair is stable iff the saturated row span is full at every vertex.
    pub fn is_stable(&self) -> bool {
        self.saturated_row_spaces().iter().all(RowSpace::is_full)
    }
}

/// An element of GL(alpha): one invertible block per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    blocks: Vec<Matrix>,
}

impl GroupElement {
    pub fn new(blocks: Vec<Matrix>) -> Result<GroupElement, Error> {
        for b in &blocks {
            b.invert()?; // surfaces Singular for degenerate blocks
        }
        Ok(GroupElement { blocks })
    }

    pub fn identity(shape: &FramedShape, field: Field) -> GroupElement {
        GroupElement {
            blocks: shape.alpha.iter().map(|&a| Matrix::identity(a, field)).collect(),
        }
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, vertex: usize) -> &Matrix {
        &self.blocks[vertex - 1]
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            blocks: self.blocks.iter().map(|b| b.invert().expect("validated invertible")).collect(),
        }
    }

    /// self composed after other (block-wise product).
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, Error> {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupElement { blocks })
    }
}

/// Per-vertex matrices with path-labeled rows: the finite-dimensional image
/// of a representation under all framed-path row maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RowBundle {
    /// per vertex i (0-based): rows (path, 1 x alpha_i) in canonical order
    rows: Vec<Vec<(FramedPath, Matrix)>>,
}

impl RowBundle {
    /// Evaluates every universe path against `rep`, grouped by start vertex.
    pub fn build(rep: &FramedRep, universe: &[FramedPath]) -> Result<RowBundle, Error> {
        let n = rep.quiver().vertex_count();
        let mut rows: Vec<Vec<(FramedPath, Matrix)>> = vec![Vec::new(); n];
        for p in universe {
            let row = rep.row_of_path(p)?;
            rows[p.start(rep.quiver()) - 1].push((p.clone(), row));
        }
        for vertex_rows in &mut rows {
            vertex_rows.sort_by(|a, b| a.0.canonical_compare(&b.0));
        }
        Ok(RowBundle { rows })
    }

    /// Assembles a bundle from explicit rows, not necessarily evaluated from
    /// a representation; rows are grouped by path start vertex and sorted.
    pub fn from_rows(
        quiver: &Quiver,
        flat: Vec<(FramedPath, Matrix)>,
    ) -> Result<RowBundle, Error> {
        let n = quiver.vertex_count();
        let mut rows: Vec<Vec<(FramedPath, Matrix)>> = vec![Vec::new(); n];
        for (p, row) in flat {
            let v = p.start(quiver);
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange(v));
            }
            rows[v - 1].push((p, row));
        }
        for vertex_rows in &mut rows {
            vertex_rows.sort_by(|a, b| a.0.canonical_compare(&b.0));
        }
        Ok(RowBundle { rows })
    }

    pub fn vertex_rows(&self, vertex: usize) -> &[(FramedPath, Matrix)] {
        &self.rows[vertex - 1]
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row_for(&self, vertex: usize, path: &FramedPath) -> Option<&Matrix> {
        self.rows[vertex - 1].iter().find(|(p, _)| p == path).map(|(_, m)| m)
    }

    /// Stacks the rows for the given paths (all starting at `vertex`).
    pub fn stack(&self, vertex: usize, paths: &[FramedPath]) -> Result<Matrix, Error> {
        let rows: Vec<&Matrix> = paths
            .iter()
            .map(|p| {
                self.row_for(vertex, p)
                    .ok_or_else(|| Error::MissingRow(format!("{p} at vertex {vertex}")))
            })
            .collect::<Result<_, _>>()?;
        Matrix::vstack(&rows)
    }

    /// The full per-vertex matrix B^{(i)}.
    pub fn matrix(&self, vertex: usize) -> Matrix {
        let refs: Vec<&Matrix> = self.rows[vertex - 1].iter().map(|(_, m)| m).collect();
        Matrix::vstack(&refs).expect("uniform widths")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::FramedPath;

    fn field() -> Field {
        Field::Rational
    }

    pub(crate) fn loop_rep(a: &[i64], f_row: &[i64]) -> FramedRep {
        let q = Quiver::loop_quiver(1);
        let m = a.len();
        let m = (m as f64).sqrt() as usize;
        let shape = FramedShape::new(vec![m], vec![1]);
        FramedRep::new(
            q.clone(),
            shape,
            field(),
            vec![Matrix::from_i64(m, m, field(), a)],
            vec![Matrix::from_i64(1, m, field(), f_row)],
        )
        .unwrap()
    }

    #[test]
    fn row_of_path_examples() {
        let rep = loop_rep(&[0, 1, 2, 3], &[1, 0]);
        let q = rep.quiver().clone();
        let f = FramedPath::framing(1, 1);
        let fa = f.extend(0, &q).unwrap();
        let fa2 = fa.extend(0, &q).unwrap();
        assert_eq!(rep.row_of_path(&f).unwrap(), Matrix::from_i64(1, 2, field(), &[1, 0]));
        assert_eq!(rep.row_of_path(&fa).unwrap(), Matrix::from_i64(1, 2, field(), &[0, 1]));
        assert_eq!(rep.row_of_path(&fa2).unwrap(), Matrix::from_i64(1, 2, field(), &[2, 3]));
    }

    #[test]
    fn bundle_stacks_in_canonical_order() {
        let rep = loop_rep(&[1, 2, 3, 4], &[1, 0]);
        let eq = rep.extended_quiver();
        let universe = eq.enumerate_framed_paths(2);
        let b = RowBundle::build(&rep, &universe).unwrap();
        let m = b.matrix(1);
        assert_eq!(m, Matrix::from_i64(3, 2, field(), &[1, 0, 1, 2, 7, 10]));
    }

    #[test]
    fn act_identity_and_scalar() {
        let rep = loop_rep(&[1, 2, 3, 4], &[1, 0]);
        let g = GroupElement::identity(rep.shape(), field());
        assert_eq!(rep.act(&g).unwrap(), rep);

        // scalar t*E fixes the loop matrix and scales f by 1/t
        let t = Matrix::from_i64(2, 2, field(), &[3, 0, 0, 3]);
        let g = GroupElement::new(vec![t]).unwrap();
        let acted = rep.act(&g).unwrap();
        assert_eq!(acted.arrow_matrix(0), rep.arrow_matrix(0));
        let third = crate::field::Scalar::parse("1/3", field()).unwrap();
        assert_eq!(acted.framing_matrix(1).at(0, 0), &third);
    }

    #[test]
    fn equivariance_of_bundles() {
        let rep = loop_rep(&[1, 2, 3, 4], &[2, 5]);
        let g = GroupElement::new(vec![Matrix::from_i64(2, 2, field(), &[1, 1, 0, 1])]).unwrap();
        let acted = rep.act(&g).unwrap();
        let eq = rep.extended_quiver();
        let universe = eq.enumerate_framed_paths(2);
        let b = RowBundle::build(&rep, &universe).unwrap();
        let b2 = RowBundle::build(&acted, &universe).unwrap();
        let ginv = g.block(1).invert().unwrap();
        assert_eq!(b.matrix(1).mul(&ginv).unwrap(), b2.matrix(1));
    }

    #[test]
    fn stability_examples() {
        // nilpotent with cyclic functional: stable
        assert!(loop_rep(&[0, 1, 0, 0], &[1, 0]).is_stable());
        // e2 spans an invariant line inside ker f: unstable
        let rep = loop_rep(&[0, 0, 0, 1], &[1, 0]);
        assert!(!rep.is_stable());
        let sub = rep.max_submodule_in_kernel();
        assert_eq!(sub.bases[0], Matrix::from_i64(2, 1, field(), &[0, 1]));
        // zero framing: everything is in the kernel
        let rep = loop_rep(&[1, 0, 0, 1], &[0, 0]);
        assert_eq!(rep.max_submodule_in_kernel().bases[0], Matrix::identity(2, field()));
        // 1x1 case: stable iff f nonzero
        assert!(loop_rep(&[5], &[3]).is_stable());
        assert!(!loop_rep(&[5], &[0]).is_stable());
    }

    #[test]
    fn row_extension_consistency() {
        let rep = loop_rep(&[1, 2, 3, 4], &[5, 7]);
        let q = rep.quiver().clone();
        let mut p = FramedPath::framing(1, 1);
        for _ in 0..4 {
            let ext = p.extend(0, &q).unwrap();
            let lhs = rep.row_of_path(&ext).unwrap();
            let rhs = rep.row_of_path(&p).unwrap().mul(rep.arrow_matrix(0)).unwrap();
            assert_eq!(lhs, rhs);
            p = ext;
        }
    }
}

/// Per-vertex column bases of a graded subspace of the representation space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSubspace {
    /// bases[i]: alpha_i x d_i matrix with independent columns
    pub bases: Vec<Matrix>,
}

impl GradedSubspace {
    pub fn is_zero(&self) -> bool {
        self.bases.iter().all(|b| b.cols() == 0)
    }
}
