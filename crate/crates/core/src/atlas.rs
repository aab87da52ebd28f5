//! Pluecker coordinates of the Grassmannian embedding, essential/exceed
//! coordinate classification, chart dimensions, chart-membership equations,
//! and point-wise relation verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chart::{complement_paths, recover_arrow_maps};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::quiver::{ExtendedQuiver, FramedPath, FramedShape, Quiver};
use crate::rep::RowBundle;
use crate::skeleton::{enumerate_abstract_skeleta, PathUniverse, Skeleton};

type PathKey = (usize, usize, usize, Vec<usize>);

fn subset_key(paths: &[FramedPath]) -> Vec<PathKey> {
    paths.iter().map(|p| p.canonical_key()).collect()
}

/// The label of a coordinate: `p[path,path,...]` over the sorted subset.
pub fn coordinate_label(quiver: &Quiver, paths: &[FramedPath]) -> String {
    let parts: Vec<String> = paths.iter().map(|p| p.format(quiver)).collect();
    format!("p[{}]", parts.join(","))
}

/// Parses `p[path,path,...]`; returns the paths sorted canonically together
/// with the sign of the sorting permutation relative to the written order.
pub fn parse_coordinate_label(
    label: &str,
    eq: &ExtendedQuiver,
) -> Result<(Vec<FramedPath>, i64), Error> {
    let inner = label
        .strip_prefix("p[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::PathSyntax(format!("`{label}`: expected p[...]")))?;
    let mut paths = Vec::new();
    for part in inner.split(',') {
        paths.push(FramedPath::parse(part.trim(), eq)?);
    }
    let sign = sort_sign(&mut paths)?;
    Ok((paths, sign))
}

/// Sorts in place; returns the permutation sign, or an error on repeats.
fn sort_sign(paths: &mut [FramedPath]) -> Result<i64, Error> {
    let mut sign = 1i64;
    // insertion sort, counting swaps
    for i in 1..paths.len() {
        let mut j = i;
        while j > 0 && paths[j - 1].canonical_compare(&paths[j]) == std::cmp::Ordering::Greater {
            paths.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in paths.windows(2) {
        if w[0] == w[1] {
            return Err(Error::PathSyntax("repeated path in a coordinate subset".into()));
        }
    }
    Ok(sign)
}

/// All per-vertex maximal minors of a row bundle, keyed by the canonically
/// sorted path subsets.
#[derive(Clone, PartialEq, Debug)]
pub struct PlueckerVector {
    per_vertex: Vec<Vec<(Vec<FramedPath>, Scalar)>>,
}

impl PlueckerVector {
    pub fn vertex_coordinates(&self, vertex: usize) -> &[(Vec<FramedPath>, Scalar)] {
        &self.per_vertex[vertex - 1]
    }

    pub fn vertex_count(&self) -> usize {
        self.per_vertex.len()
    }

    /// Looks a coordinate up by its sorted path subset.
    pub fn coordinate(&self, quiver: &Quiver, paths: &[FramedPath]) -> Option<&Scalar> {
        let vertex = paths.first()?.start(quiver);
        let key = subset_key(paths);
        self.per_vertex
            .get(vertex - 1)?
            .iter()
            .find(|(r, _)| subset_key(r) == key)
            .map(|(_, v)| v)
    }

    /// Flattens to label -> value, for relation evaluation and emission.
    pub fn labels(&self, quiver: &Quiver) -> BTreeMap<String, Scalar> {
        let mut out = BTreeMap::new();
        for v in &self.per_vertex {
            for (paths, value) in v {
                out.insert(coordinate_label(quiver, paths), value.clone());
            }
        }
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Computes every maximal minor of the bundle at every vertex.
pub fn pluecker(bundle: &RowBundle, quiver: &Quiver) -> Result<PlueckerVector, Error> {
    let mut per_vertex = Vec::with_capacity(bundle.vertex_count());
    for v in 1..=bundle.vertex_count() {
        let rows = bundle.vertex_rows(v);
        let mat = bundle.matrix(v);
        let m = mat.cols();
        let mut coords = Vec::new();
        for subset in combinations(rows.len(), m) {
            let paths: Vec<FramedPath> = subset.iter().map(|&i| rows[i].0.clone()).collect();
            let value = mat.minor_det(&subset)?;
            coords.push((paths, value));
        }
        coords.sort_by(|a, b| subset_key(&a.0).cmp(&subset_key(&b.0)));
        per_vertex.push(coords);
    }
    let _ = quiver;
    Ok(PlueckerVector { per_vertex })
}

/// How an essential coordinate arises from a chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Provenance {
    /// index into the abstract-skeleton list
    pub skeleton: usize,
    /// None for the skeleton subset itself
    pub replacement: Option<Replacement>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Replacement {
    /// position within the skeleton's vertex block that was replaced
    pub position: usize,
    pub inserted: FramedPath,
    /// parity relating the Cramer row order to the sorted subset:
    /// local coordinate entry = sign * p_R / p_S
    pub sign: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EssentialKey {
    pub vertex: usize,
    pub paths: Vec<FramedPath>,
    pub provenance: Vec<Provenance>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexClassification {
    pub vertex: usize,
    pub all: Vec<Vec<FramedPath>>,
    pub essential: Vec<EssentialKey>,
    pub exceed: Vec<Vec<FramedPath>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordinateClassification {
    pub skeleta: Vec<Skeleton>,
    pub per_vertex: Vec<VertexClassification>,
}

impl CoordinateClassification {
    pub fn total(&self) -> usize {
        self.per_vertex.iter().map(|v| v.all.len()).sum()
    }

    pub fn essential_count(&self) -> usize {
        self.per_vertex.iter().map(|v| v.essential.len()).sum()
    }

    pub fn exceed_count(&self) -> usize {
        self.per_vertex.iter().map(|v| v.exceed.len()).sum()
    }
}

/// Splits the alpha_i-subsets of the extended path set at each vertex into
/// essential coordinates (a skeleton subset, or a skeleton with one element
/// replaced by an element of its complement) and the remaining exceed ones.
pub fn classify_coordinates(
    quiver: &Quiver,
    shape: &FramedShape,
) -> Result<CoordinateClassification, Error> {
    let skeleta = enumerate_abstract_skeleta(quiver, shape)?;
    let universe = PathUniverse::compute(quiver, shape)?;
    let n = quiver.vertex_count();
    let mut per_vertex = Vec::with_capacity(n);

    // per skeleton, the complement sets are shared across vertices
    let complements: Vec<Vec<Vec<FramedPath>>> =
        skeleta.iter().map(|s| complement_paths(quiver, s)).collect();

    for i in 1..=n {
        let tilde = universe.tilde_at_vertex(quiver, i);
        let m = shape.alpha[i - 1];
        let all: Vec<Vec<FramedPath>> = combinations(tilde.len(), m)
            .into_iter()
            .map(|c| c.iter().map(|&j| tilde[j].clone()).collect())
            .collect();

        let mut essential: BTreeMap<Vec<PathKey>, (Vec<FramedPath>, Vec<Provenance>)> =
            BTreeMap::new();
        for (si, s) in skeleta.iter().enumerate() {
            let block = s.vertex_paths(i);
            essential
                .entry(subset_key(block))
                .or_insert_with(|| (block.to_vec(), Vec::new()))
                .1
                .push(Provenance { skeleton: si, replacement: None });
            for p in &complements[si][i - 1] {
                for j in 0..m {
                    let mut subset = block.to_vec();
                    subset[j] = p.clone();
                    let Ok(sign) = sort_sign(&mut subset) else { continue };
                    essential
                        .entry(subset_key(&subset))
                        .or_insert_with(|| (subset.clone(), Vec::new()))
                        .1
                        .push(Provenance {
                            skeleton: si,
                            replacement: Some(Replacement {
                                position: j,
                                inserted: p.clone(),
                                sign,
                            }),
                        });
                }
            }
        }

        let mut ess_list = Vec::new();
        let mut exceed = Vec::new();
        for subset in &all {
            match essential.get(&subset_key(subset)) {
                Some((paths, prov)) => ess_list.push(EssentialKey {
                    vertex: i,
                    paths: paths.clone(),
                    provenance: prov.clone(),
                }),
                None => exceed.push(subset.clone()),
            }
        }
        per_vertex.push(VertexClassification { vertex: i, all, essential: ess_list, exceed });
    }
    Ok(CoordinateClassification { skeleta, per_vertex })
}

/// Excess of incoming skeleton rows over the dimension at a vertex; the
/// number of local coordinate rows there.
pub fn vertex_surplus(quiver: &Quiver, shape: &FramedShape, vertex: usize) -> i64 {
    let mut t = shape.zeta[vertex - 1] as i64 - shape.alpha[vertex - 1] as i64;
    for a in quiver.arrows() {
        if a.tail == vertex {
            t += shape.alpha[a.head - 1] as i64;
        }
    }
    t
}

/// Chart dimension of the moduli space: total matrix entries minus the group
/// dimension. May be negative, in which case no stable points are expected.
pub fn chart_dimension(quiver: &Quiver, shape: &FramedShape) -> i64 {
    let mut d = 0i64;
    for a in quiver.arrows() {
        d += (shape.alpha[a.head - 1] * shape.alpha[a.tail - 1]) as i64;
    }
    for i in 0..shape.alpha.len() {
        d += (shape.zeta[i] * shape.alpha[i]) as i64;
        d -= (shape.alpha[i] * shape.alpha[i]) as i64;
    }
    let surplus: i64 = (1..=quiver.vertex_count())
        .map(|i| vertex_surplus(quiver, shape, i) * shape.alpha[i - 1] as i64)
        .sum();
    debug_assert_eq!(d, surplus);
    d
}

/// Checks that every extension row of the bundle is reproduced by the arrow
/// matrices recovered from the skeleton blocks: B_{ta} = B_t M_a.
pub fn verify_chart_membership(
    bundle: &RowBundle,
    s: &Skeleton,
    quiver: &Quiver,
) -> Result<bool, Error> {
    let maps = recover_arrow_maps(bundle, s, quiver)?;
    for v in 1..=bundle.vertex_count() {
        for (p, row) in bundle.vertex_rows(v) {
            let Some(parent) = p.parent() else { continue };
            let a = *p.plain.word().last().expect("non-framing path");
            let Some(parent_row) = bundle.row_for(parent.start(quiver), &parent) else {
                continue;
            };
            if parent_row.mul(&maps[a])? != *row {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A polynomial with integer coefficients in named Pluecker coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelationPoly {
    pub terms: Vec<RelationTerm>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelationTerm {
    pub coef: String,
    pub monomial: BTreeMap<String, u32>,
}

impl RelationPoly {
    /// Convenience constructor from (coefficient, [(label, power)]) pairs.
    pub fn from_terms(terms: &[(i64, &[(&str, u32)])]) -> RelationPoly {
        RelationPoly {
            terms: terms
                .iter()
                .map(|(c, m)| RelationTerm {
                    coef: c.to_string(),
                    monomial: m.iter().map(|(k, e)| (k.to_string(), *e)).collect(),
                })
                .collect(),
        }
    }

    pub fn evaluate(
        &self,
        values: &BTreeMap<String, Scalar>,
        field: Field,
    ) -> Result<Scalar, Error> {
        let mut total = field.zero();
        for term in &self.terms {
            let mut acc = Scalar::parse(&term.coef, field)?;
            for (var, &power) in &term.monomial {
                let v = values
                    .get(var)
                    .ok_or_else(|| Error::UnknownVariable(var.clone()))?;
                for _ in 0..power {
                    acc = acc.mul(v);
                }
            }
            total = total.add(&acc);
        }
        Ok(total)
    }
}

/// Per-(relation, sample) outcome of point-wise relation verification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationReport {
    /// entry [r][s]: value of relation r at sample s is zero
    pub zero: Vec<Vec<bool>>,
}

impl RelationReport {
    pub fn all_zero(&self) -> bool {
        self.zero.iter().all(|row| row.iter().all(|&z| z))
    }
}

/// Evaluates each relation on the Pluecker labels of each sample.
pub fn verify_relations(
    relations: &[RelationPoly],
    samples: &[BTreeMap<String, Scalar>],
    field: Field,
) -> Result<RelationReport, Error> {
    let mut zero = Vec::with_capacity(relations.len());
    for r in relations {
        let mut row = Vec::with_capacity(samples.len());
        for s in samples {
            row.push(r.evaluate(s, field)?.is_zero());
        }
        zero.push(row);
    }
    Ok(RelationReport { zero })
}
