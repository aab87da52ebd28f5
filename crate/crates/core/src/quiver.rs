//! Quivers, the framed extension, and framed paths with their canonical
//! order and text grammar.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// A directed multigraph. Vertices are 1-based to match the usual diagrams;
/// arrow declaration order fixes the canonical path order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(impl Into<String>, usize, usize)>) -> Result<Quiver, Error> {
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(name, tail, head)| Arrow { name: name.into(), tail, head })
            .collect();
        for a in &arrows {
            if a.tail == 0 || a.tail > vertices || a.head == 0 || a.head > vertices {
                return Err(Error::VertexOutOfRange(a.tail.max(a.head)));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Document(format!("duplicate arrow name `{}`", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// The quiver with one vertex and `q` loops a1..aq, or a,b,... for small q.
    pub fn loop_quiver(q: usize) -> Quiver {
        let names = ["a", "b", "c", "d", "e"];
        let arrows: Vec<(String, usize, usize)> = (0..q)
            .map(|i| {
                let n = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("a{}", i + 1));
                (n, 1, 1)
            })
            .collect();
        Quiver::new(1, arrows).expect("loop quiver is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, idx: usize) -> &Arrow {
        &self.arrows[idx]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// Dimension vectors of the framed problem: alpha for the representation,
/// zeta for the framing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FramedShape {
    pub alpha: Vec<usize>,
    pub zeta: Vec<usize>,
}

impl FramedShape {
    pub fn new(alpha: Vec<usize>, zeta: Vec<usize>) -> FramedShape {
        FramedShape { alpha, zeta }
    }

    pub fn check(&self, quiver: &Quiver) -> Result<(), Error> {
        if self.alpha.len() != quiver.vertex_count() || self.zeta.len() != quiver.vertex_count() {
            return Err(Error::QuiverShapeMismatch);
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.alpha.iter().sum()
    }
}

/// A path in the base quiver: either the trivial path at a vertex or a
/// composable arrow word stored head-first (a1 ... ak with t(aj) = h(a{j+1})).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlainPath {
    head: usize,
    arrows: Vec<usize>,
}

impl PlainPath {
    pub fn trivial(vertex: usize) -> PlainPath {
        PlainPath { head: vertex, arrows: Vec::new() }
    }

    pub fn from_word(quiver: &Quiver, arrows: Vec<usize>) -> Result<PlainPath, Error> {
        let Some(&first) = arrows.first() else {
            return Err(Error::PathSyntax("empty word has no head".into()));
        };
        for w in arrows.windows(2) {
            if quiver.arrow(w[0]).tail != quiver.arrow(w[1]).head {
                return Err(Error::NotComposable);
            }
        }
        Ok(PlainPath { head: quiver.arrow(first).head, arrows })
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn tail(&self, quiver: &Quiver) -> usize {
        match self.arrows.last() {
            Some(&a) => quiver.arrow(a).tail,
            None => self.head,
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.arrows
    }

    /// sigma * tau: concatenation, requires h(tau) = t(sigma).
    pub fn compose(&self, tau: &PlainPath, quiver: &Quiver) -> Result<PlainPath, Error> {
        if tau.head() != self.tail(quiver) {
            return Err(Error::NotComposable);
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&tau.arrows);
        Ok(PlainPath { head: if self.is_empty() { tau.head } else { self.head }, arrows })
    }
}

/// A path f_{iq} * tau in the extended quiver, ending at the framing vertex.
/// `vertex` is the framing vertex i = h(tau); `slot` is q, 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FramedPath {
    pub vertex: usize,
    pub slot: usize,
    pub plain: PlainPath,
}

impl FramedPath {
    pub fn framing(vertex: usize, slot: usize) -> FramedPath {
        FramedPath { vertex, slot, plain: PlainPath::trivial(vertex) }
    }

    pub fn new(vertex: usize, slot: usize, plain: PlainPath) -> Result<FramedPath, Error> {
        if plain.head() != vertex {
            return Err(Error::NotComposable);
        }
        Ok(FramedPath { vertex, slot, plain })
    }

    /// The vertex where evaluation starts: the tail of the plain part.
    pub fn start(&self, quiver: &Quiver) -> usize {
        self.plain.tail(quiver)
    }

    /// Total length: the framing arrow plus the plain word.
    pub fn len(&self) -> usize {
        1 + self.plain.len()
    }

    /// Appends an arrow: p * a, requires h(a) = start(p).
    pub fn extend(&self, arrow_idx: usize, quiver: &Quiver) -> Result<FramedPath, Error> {
        if quiver.arrow(arrow_idx).head != self.start(quiver) {
            return Err(Error::NotComposable);
        }
        let mut arrows = self.plain.arrows.clone();
        arrows.push(arrow_idx);
        Ok(FramedPath {
            vertex: self.vertex,
            slot: self.slot,
            plain: PlainPath { head: self.vertex, arrows },
        })
    }

    /// Drops the last arrow: the prefix whose extension is `self`.
    pub fn parent(&self) -> Option<FramedPath> {
        if self.plain.is_empty() {
            return None;
        }
        let mut arrows = self.plain.arrows.clone();
        arrows.pop();
        Some(FramedPath {
            vertex: self.vertex,
            slot: self.slot,
            plain: PlainPath { head: self.vertex, arrows },
        })
    }

    /// Canonical total order: length, then framing vertex, slot, then the
    /// arrow-index word. Length-first keeps prefixes before extensions.
    pub fn canonical_key(&self) -> (usize, usize, usize, Vec<usize>) {
        (self.len(), self.vertex, self.slot, self.plain.arrows.clone())
    }

    pub fn canonical_compare(&self, other: &FramedPath) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }

    /// Text form: `f<i>.<q>` followed by `*<arrow>` per word letter.
    pub fn format(&self, quiver: &Quiver) -> String {
        let mut s = format!("f{}.{}", self.vertex, self.slot);
        for &a in self.plain.word() {
            s.push('*');
            s.push_str(&quiver.arrow(a).name);
        }
        s
    }

    pub fn parse(text: &str, eq: &ExtendedQuiver) -> Result<FramedPath, Error> {
        let mut parts = text.split('*');
        let head = parts.next().ok_or_else(|| Error::PathSyntax(text.into()))?;
        let rest = head
            .strip_prefix('f')
            .ok_or_else(|| Error::PathSyntax(format!("`{text}`: expected leading f")))?;
        let (i, q) = rest
            .split_once('.')
            .ok_or_else(|| Error::PathSyntax(format!("`{text}`: expected f<i>.<q>")))?;
        let vertex: usize =
            i.parse().map_err(|_| Error::PathSyntax(format!("`{text}`: bad vertex")))?;
        let slot: usize =
            q.parse().map_err(|_| Error::PathSyntax(format!("`{text}`: bad slot")))?;
        let quiver = eq.base();
        if vertex == 0 || vertex > quiver.vertex_count() {
            return Err(Error::VertexOutOfRange(vertex));
        }
        if slot == 0 || slot > eq.zeta()[vertex - 1] {
            return Err(Error::SlotOutOfRange { vertex, slot });
        }
        let mut path = FramedPath::framing(vertex, slot);
        for name in parts {
            let idx = quiver
                .arrow_by_name(name)
                .ok_or_else(|| Error::UnknownArrow(name.to_string()))?;
            path = path.extend(idx, quiver)?;
        }
        Ok(path)
    }
}

impl fmt::Display for FramedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}.{}(+{} arrows)", self.vertex, self.slot, self.plain.len())
    }
}

/// The quiver Q^zeta: the base quiver plus a vertex at infinity and zeta_i
/// framing arrows f_{iq} at each vertex, enumerated in (i, q) order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtendedQuiver {
    base: Quiver,
    zeta: Vec<usize>,
}

impl ExtendedQuiver {
    pub fn build(quiver: &Quiver, shape: &FramedShape) -> Result<ExtendedQuiver, Error> {
        shape.check(quiver)?;
        Ok(ExtendedQuiver { base: quiver.clone(), zeta: shape.zeta.clone() })
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn zeta(&self) -> &[usize] {
        &self.zeta
    }

    /// Framing arrows in (i, q) lexicographic order.
    pub fn framing_arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &z) in self.zeta.iter().enumerate() {
            for q in 1..=z {
                out.push((i + 1, q));
            }
        }
        out
    }

    /// All framed paths with plain part of length <= `max_plain_length`,
    /// in canonical order.
    pub fn enumerate_framed_paths(&self, max_plain_length: usize) -> Vec<FramedPath> {
        let mut all: Vec<FramedPath> =
            self.framing_arrows().into_iter().map(|(i, q)| FramedPath::framing(i, q)).collect();
        let mut frontier = all.clone();
        for _ in 0..max_plain_length {
            let mut next = Vec::new();
            for p in &frontier {
                let start = p.start(&self.base);
                for (ai, a) in self.base.arrows().iter().enumerate() {
                    if a.head == start {
                        next.push(p.extend(ai, &self.base).expect("heads match"));
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort_by(|a, b| a.canonical_compare(b));
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l1() -> Quiver {
        Quiver::loop_quiver(1)
    }

    #[test]
    fn extended_quiver_framing_order() {
        // 3-vertex quiver with arrows a: 1->3, b: 1->2, c: 2->3 and zeta (1,2,3)
        let q = Quiver::new(3, vec![("a", 1, 3), ("b", 1, 2), ("c", 2, 3)]).unwrap();
        let shape = FramedShape::new(vec![2, 2, 1], vec![1, 2, 3]);
        let eq = ExtendedQuiver::build(&q, &shape).unwrap();
        assert_eq!(
            eq.framing_arrows(),
            vec![(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]
        );

        let zero = FramedShape::new(vec![2, 2, 1], vec![0, 0, 0]);
        assert!(ExtendedQuiver::build(&q, &zero).unwrap().framing_arrows().is_empty());

        let eq1 = ExtendedQuiver::build(&l1(), &FramedShape::new(vec![2], vec![1])).unwrap();
        assert_eq!(eq1.framing_arrows(), vec![(1, 1)]);

        let bad = FramedShape::new(vec![1], vec![1]);
        assert_eq!(ExtendedQuiver::build(&q, &bad), Err(Error::QuiverShapeMismatch));
    }

    #[test]
    fn compose_units_and_errors() {
        let q = Quiver::new(2, vec![("a", 1, 2)]).unwrap();
        let e1 = PlainPath::trivial(1);
        assert_eq!(e1.compose(&e1, &q).unwrap(), e1);
        let a = PlainPath::from_word(&q, vec![0]).unwrap();
        // a * e_{t(a)} = a
        assert_eq!(a.compose(&PlainPath::trivial(1), &q).unwrap(), a);
        assert_eq!(PlainPath::trivial(2).compose(&a, &q).unwrap(), a);
        // a * a undefined on 1 -> 2
        assert_eq!(a.compose(&a, &q), Err(Error::NotComposable));
    }

    #[test]
    fn extend_and_parent() {
        let q = Quiver::loop_quiver(2);
        let eq = ExtendedQuiver::build(&q, &FramedShape::new(vec![2], vec![1])).unwrap();
        let f = FramedPath::framing(1, 1);
        let fa = f.extend(0, &q).unwrap();
        let fab = fa.extend(1, &q).unwrap();
        assert_eq!(fab.format(&q), "f1.1*a*b");
        assert_eq!(fab.parent().unwrap(), fa);
        assert_eq!(f.parent(), None);
        // non-matching vertices: a has head 2, the path starts at 1
        let two = Quiver::new(2, vec![("a", 1, 2), ("c", 2, 1)]).unwrap();
        let g = FramedPath::framing(1, 1);
        assert_eq!(g.extend(0, &two), Err(Error::NotComposable));
        // c has head 1, so it extends, and the path then starts at t(c) = 2
        let gc = g.extend(1, &two).unwrap();
        assert_eq!(gc.start(&two), 2);
        let _ = eq;
    }

    #[test]
    fn canonical_order() {
        let q = Quiver::loop_quiver(2);
        let f = FramedPath::framing(1, 1);
        let fa = f.extend(0, &q).unwrap();
        let fb = f.extend(1, &q).unwrap();
        let faa = fa.extend(0, &q).unwrap();
        let fab = fa.extend(1, &q).unwrap();
        assert_eq!(f.canonical_compare(&fa), Ordering::Less);
        assert_eq!(fa.canonical_compare(&fb), Ordering::Less);
        assert_eq!(faa.canonical_compare(&fab), Ordering::Less);
    }

    #[test]
    fn parse_format_round_trip() {
        let q = Quiver::loop_quiver(1);
        let eq = ExtendedQuiver::build(&q, &FramedShape::new(vec![2], vec![1])).unwrap();
        let p = FramedPath::parse("f1.1*a*a", &eq).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.format(&q), "f1.1*a*a");
        assert_eq!(FramedPath::parse("f1.1", &eq).unwrap(), FramedPath::framing(1, 1));
        assert!(matches!(FramedPath::parse("f1.2", &eq), Err(Error::SlotOutOfRange { .. })));
        assert!(matches!(FramedPath::parse("f1.1*z", &eq), Err(Error::UnknownArrow(_))));

        // f2.1 over a 2-vertex quiver
        let two = Quiver::new(2, vec![("a", 1, 2), ("c", 2, 1)]).unwrap();
        let eq2 = ExtendedQuiver::build(&two, &FramedShape::new(vec![1, 1], vec![1, 1])).unwrap();
        let p = FramedPath::parse("f2.1", &eq2).unwrap();
        assert_eq!(p, FramedPath::framing(2, 1));
        // a heads at 2, not 1, so f1.1*a is not composable
        assert_eq!(FramedPath::parse("f1.1*a", &eq2), Err(Error::NotComposable));
    }

    #[test]
    fn enumeration_counts() {
        let q = Quiver::loop_quiver(1);
        for m in 0..5 {
            let eq = ExtendedQuiver::build(&q, &FramedShape::new(vec![m], vec![1])).unwrap();
            assert_eq!(eq.enumerate_framed_paths(m).len(), m + 1);
        }
        let eq = ExtendedQuiver::build(&q, &FramedShape::new(vec![2], vec![2])).unwrap();
        assert_eq!(eq.enumerate_framed_paths(2).len(), 6);
        let l2 = Quiver::loop_quiver(2);
        let eq = ExtendedQuiver::build(&l2, &FramedShape::new(vec![2], vec![1])).unwrap();
        let paths = eq.enumerate_framed_paths(2);
        assert_eq!(paths.len(), 7);
        let labels: Vec<String> = paths.iter().map(|p| p.format(&l2)).collect();
        assert_eq!(
            labels,
            vec!["f1.1", "f1.1*a", "f1.1*b", "f1.1*a*a", "f1.1*a*b", "f1.1*b*a", "f1.1*b*b"]
        );
    }

    #[test]
    fn enumeration_is_sorted_and_prefix_closed() {
        let q = Quiver::new(2, vec![("a", 1, 2), ("b", 2, 1)]).unwrap();
        let eq = ExtendedQuiver::build(&q, &FramedShape::new(vec![2, 1], vec![1, 2])).unwrap();
        let paths = eq.enumerate_framed_paths(3);
        for w in paths.windows(2) {
            assert_eq!(w[0].canonical_compare(&w[1]), Ordering::Less);
        }
        for p in &paths {
            if let Some(parent) = p.parent() {
                assert!(paths.contains(&parent));
            }
        }
    }
}
