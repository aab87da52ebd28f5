//! JSON document formats: field, quiver, representation, skeleton, chart
//! point, and relation files. Emission is canonical (sorted keys, reduced
//! scalars) so serialized documents diff cleanly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chart::ChartPoint;
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::quiver::{ExtendedQuiver, FramedPath, FramedShape, Quiver};
use crate::rep::FramedRep;
use crate::skeleton::Skeleton;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldDoc {
    Rational,
    Prime { p: u64 },
}

impl FieldDoc {
    pub fn to_field(&self) -> Result<Field, Error> {
        match self {
            FieldDoc::Rational => Ok(Field::Rational),
            FieldDoc::Prime { p } => Field::prime(*p),
        }
    }

    pub fn from_field(field: Field) -> FieldDoc {
        match field {
            Field::Rational => FieldDoc::Rational,
            Field::Prime(p) => FieldDoc::Prime { p },
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: usize,
    pub arrows: Vec<ArrowDoc>,
}

impl QuiverDoc {
    pub fn to_quiver(&self) -> Result<Quiver, Error> {
        Quiver::new(
            self.vertices,
            self.arrows.iter().map(|a| (a.name.clone(), a.tail, a.head)).collect(),
        )
    }

    pub fn from_quiver(q: &Quiver) -> QuiverDoc {
        QuiverDoc {
            vertices: q.vertex_count(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowDoc { name: a.name.clone(), tail: a.tail, head: a.head })
                .collect(),
        }
    }
}

/// The main document: field, quiver, dimension vectors, and (optionally) the
/// matrices. Shape-only documents omit `arrows` and `framing`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RepDoc {
    pub field: FieldDoc,
    pub quiver: QuiverDoc,
    pub alpha: Vec<usize>,
    pub zeta: Vec<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub framing: BTreeMap<String, Vec<Vec<String>>>,
}

fn matrix_to_doc(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_string()).collect())
        .collect()
}

fn matrix_from_doc(
    doc: &[Vec<String>],
    rows: usize,
    cols: usize,
    field: Field,
    what: &str,
) -> Result<Matrix, Error> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        return Err(Error::Document(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in doc {
        for e in row {
            entries.push(Scalar::parse(e, field)?);
        }
    }
    Matrix::from_entries(rows, cols, field, entries)
}

impl RepDoc {
    /// The context common to full and shape-only documents.
    pub fn context(&self) -> Result<(Quiver, FramedShape, Field), Error> {
        let quiver = self.quiver.to_quiver()?;
        let shape = FramedShape::new(self.alpha.clone(), self.zeta.clone());
        shape.check(&quiver)?;
        let field = self.field.to_field()?;
        Ok((quiver, shape, field))
    }

    pub fn to_rep(&self) -> Result<FramedRep, Error> {
        let (quiver, shape, field) = self.context()?;
        let mut arrow_mats = Vec::new();
        for a in quiver.arrows() {
            let doc = self
                .arrows
                .get(&a.name)
                .ok_or_else(|| Error::Document(format!("missing matrix for arrow `{}`", a.name)))?;
            arrow_mats.push(matrix_from_doc(
                doc,
                shape.alpha[a.head - 1],
                shape.alpha[a.tail - 1],
                field,
                &format!("arrow `{}`", a.name),
            )?);
        }
        let mut framing = Vec::new();
        for i in 1..=quiver.vertex_count() {
            let rows = shape.zeta[i - 1];
            let cols = shape.alpha[i - 1];
            let doc = match self.framing.get(&i.to_string()) {
                Some(d) => d.clone(),
                None if rows == 0 => Vec::new(),
                None => {
                    return Err(Error::Document(format!("missing framing matrix at vertex {i}")))
                }
            };
            framing.push(matrix_from_doc(&doc, rows, cols, field, &format!("framing {i}"))?);
        }
        for name in self.arrows.keys() {
            if quiver.arrow_by_name(name).is_none() {
                return Err(Error::UnknownArrow(name.clone()));
            }
        }
        FramedRep::new(quiver, shape, field, arrow_mats, framing)
    }

    pub fn from_rep(rep: &FramedRep) -> RepDoc {
        let quiver = rep.quiver();
        let mut arrows = BTreeMap::new();
        for (ai, a) in quiver.arrows().iter().enumerate() {
            arrows.insert(a.name.clone(), matrix_to_doc(rep.arrow_matrix(ai)));
        }
        let mut framing = BTreeMap::new();
        for i in 1..=quiver.vertex_count() {
            if rep.shape().zeta[i - 1] > 0 {
                framing.insert(i.to_string(), matrix_to_doc(rep.framing_matrix(i)));
            }
        }
        RepDoc {
            field: FieldDoc::from_field(rep.field()),
            quiver: QuiverDoc::from_quiver(quiver),
            alpha: rep.shape().alpha.clone(),
            zeta: rep.shape().zeta.clone(),
            arrows,
            framing,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SkeletonDoc {
    pub paths: Vec<String>,
}

impl SkeletonDoc {
    pub fn from_skeleton(s: &Skeleton, quiver: &Quiver) -> SkeletonDoc {
        SkeletonDoc { paths: s.all_paths().iter().map(|p| p.format(quiver)).collect() }
    }

    pub fn to_skeleton(
        &self,
        quiver: &Quiver,
        shape: &FramedShape,
    ) -> Result<Skeleton, Error> {
        let eq = ExtendedQuiver::build(quiver, shape)?;
        let paths: Vec<FramedPath> = self
            .paths
            .iter()
            .map(|t| FramedPath::parse(t, &eq))
            .collect::<Result<_, _>>()?;
        Skeleton::from_paths(quiver, shape, paths)
    }
}

/// Parses a comma-separated path list like `f1.1,f1.1*a` into a skeleton.
pub fn skeleton_from_list(
    list: &str,
    quiver: &Quiver,
    shape: &FramedShape,
) -> Result<Skeleton, Error> {
    let paths: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
    SkeletonDoc { paths }.to_skeleton(quiver, shape)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ChartPointDoc {
    pub skeleton: Vec<String>,
    /// vertex (1-based, as a string) -> row label -> row entries
    pub coords: BTreeMap<String, BTreeMap<String, Vec<String>>>,
}

impl ChartPointDoc {
    pub fn from_chart_point(c: &ChartPoint, quiver: &Quiver) -> ChartPointDoc {
        let mut coords = BTreeMap::new();
        for i in 1..=quiver.vertex_count() {
            let rows = c.vertex_rows(i);
            if rows.is_empty() {
                continue;
            }
            let mut m = BTreeMap::new();
            for (p, row) in rows {
                m.insert(
                    p.format(quiver),
                    (0..row.cols()).map(|j| row.at(0, j).to_string()).collect(),
                );
            }
            coords.insert(i.to_string(), m);
        }
        ChartPointDoc {
            skeleton: SkeletonDoc::from_skeleton(c.skeleton(), quiver).paths,
            coords,
        }
    }

    pub fn to_chart_point(
        &self,
        quiver: &Quiver,
        shape: &FramedShape,
        field: Field,
    ) -> Result<ChartPoint, Error> {
        let eq = ExtendedQuiver::build(quiver, shape)?;
        let s = SkeletonDoc { paths: self.skeleton.clone() }.to_skeleton(quiver, shape)?;
        let mut rows: Vec<Vec<(FramedPath, Matrix)>> = vec![Vec::new(); quiver.vertex_count()];
        for (vkey, vrows) in &self.coords {
            let vertex: usize = vkey
                .parse()
                .map_err(|_| Error::Document(format!("bad vertex key `{vkey}`")))?;
            if vertex == 0 || vertex > quiver.vertex_count() {
                return Err(Error::VertexOutOfRange(vertex));
            }
            for (label, entries) in vrows {
                let p = FramedPath::parse(label, &eq)?;
                let row = matrix_from_doc(
                    std::slice::from_ref(&entries.clone()),
                    1,
                    shape.alpha[vertex - 1],
                    field,
                    &format!("coordinate row `{label}`"),
                )?;
                rows[vertex - 1].push((p, row));
            }
        }
        ChartPoint::new(quiver, s, rows)
    }
}

/// Canonical emission for any serializable document.
pub fn emit<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn ingest<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}
