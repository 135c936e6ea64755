//! Pseudomonoids in the bicategory of spans: the one carried by a 2-Segal
//! set, verification of the triangle and pentagon equations, and the
//! simplicial set rebuilt from a pseudomonoid.

mod reconstruct;
mod tree;

use std::sync::Arc;

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::jsonio::{pretty, Doc, LoadError};
use crate::simplicial::{SimplicialError, SimplicialSet};
use crate::span::{
    canonical_iso, compose, product, slide, whisker, FinSet, FiniteSpan, SpanError, SpanExpr, SpanMorphism, Value,
};

pub use reconstruct::{roundtrip_isomorphic, to_simplicial, RoundtripReport};
pub use tree::{Rewriter, Rule, Step, Strategy, Tree};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PseudoError {
    #[error("not 2-Segal: {map} has {preimages} preimages over {element}")]
    NotTwoSegal {
        map: String,
        element: String,
        preimages: usize,
    },
    #[error("truncation degree {0} is too low, need at least 3")]
    TooShort(usize),
    #[error("bad tree: {0}")]
    BadTree(String),
    #[error(transparent)]
    Span(#[from] SpanError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// An object `X` with unit `η : {•} → X`, multiplication `μ : X × X → X`
/// and invertible cells `a`, `ℓ`, `r`.
#[derive(Clone, Debug)]
pub struct Pseudomonoid {
    pub carrier: Arc<FinSet>,
    pub eta: Arc<FiniteSpan>,
    pub mu: Arc<FiniteSpan>,
    /// `μ ∘ (μ × id) ⇒ μ ∘ (id × μ)`.
    pub assoc: SpanMorphism,
    /// `μ ∘ (η × id) ⇒ id`.
    pub left_unitor: SpanMorphism,
    /// `μ ∘ (id × η) ⇒ id`.
    pub right_unitor: SpanMorphism,
}

fn atoms(labels: &[String]) -> Arc<FinSet> {
    Arc::new(FinSet::atoms(labels).expect("level labels are distinct"))
}

/// Source of `a`: `μ ∘ (μ × id)`.
pub fn assoc_source(mu: &Arc<FiniteSpan>, x: &Arc<FinSet>) -> Result<FiniteSpan, SpanError> {
    let id = Arc::new(FiniteSpan::identity(x.clone()));
    compose(&Arc::new(product(mu, &id)?), mu)
}

/// Target of `a`: `μ ∘ (id × μ)`.
pub fn assoc_target(mu: &Arc<FiniteSpan>, x: &Arc<FinSet>) -> Result<FiniteSpan, SpanError> {
    let id = Arc::new(FiniteSpan::identity(x.clone()));
    compose(&Arc::new(product(&id, mu)?), mu)
}

/// Source of `ℓ` (`left`) or `r`: `μ ∘ (η × id)` or `μ ∘ (id × η)`.
pub fn unitor_source(
    eta: &Arc<FiniteSpan>,
    mu: &Arc<FiniteSpan>,
    x: &Arc<FinSet>,
    left: bool,
) -> Result<FiniteSpan, SpanError> {
    let id = Arc::new(FiniteSpan::identity(x.clone()));
    let whiskered = if left { product(eta, &id)? } else { product(&id, eta)? };
    compose(&Arc::new(whiskered), mu)
}

/// A map `X_3 → apex` that must be a bijection, as an index table.
fn taco(
    s: &SimplicialSet,
    apex: &FinSet,
    name: &str,
    value: impl Fn(usize) -> Value,
) -> Result<Vec<usize>, PseudoError> {
    let mut hits = vec![Vec::new(); apex.len()];
    for w in 0..s.level_size(3) {
        let v = value(w);
        let k = apex.index_of(&v).ok_or_else(|| PseudoError::NotTwoSegal {
            map: name.into(),
            element: v.to_string(),
            preimages: 0,
        })?;
        hits[k].push(w);
    }
    if let Some(k) = hits.iter().position(|h| h.len() != 1) {
        return Err(PseudoError::NotTwoSegal {
            map: name.into(),
            element: apex.get(k).to_string(),
            preimages: hits[k].len(),
        });
    }
    Ok(hits.into_iter().map(|h| h[0]).collect())
}

impl Pseudomonoid {
    /// The pseudomonoid on `X_1` with `η = ({•} ← X_0 → X_1)` via `s_0`,
    /// `μ = (X_1 × X_1 ← X_2 → X_1)` via `(d_2, d_0)` and `d_1`, the
    /// associator `𝒯_02 ∘ 𝒯_13⁻¹` and the unitors given by `d_1` on
    /// degenerate triangles.
    pub fn from_2segal(s: &SimplicialSet) -> Result<Self, PseudoError> {
        if s.top() < 3 {
            return Err(PseudoError::TooShort(s.top()));
        }
        let x1 = s.level(1);
        let carrier = Arc::new(FinSet::of_letters(x1));
        let point = Arc::new(FinSet::point());
        let xx = Arc::new(carrier.product(&carrier)?);
        let k = x1.len();

        let eta = Arc::new(FiniteSpan::new(
            point,
            carrier.clone(),
            atoms(s.level(0)),
            vec![0; s.level_size(0)],
            (0..s.level_size(0)).map(|u| s.degeneracy(0, 0, u)).collect(),
        )?);
        let mu = Arc::new(FiniteSpan::new(
            xx,
            carrier.clone(),
            atoms(s.level(2)),
            (0..s.level_size(2)).map(|w| s.face(2, 2, w) * k + s.face(2, 0, w)).collect(),
            (0..s.level_size(2)).map(|w| s.face(2, 1, w)).collect(),
        )?);

        let atom = |n: usize, x: usize| Value::atom(&s.level(n)[x]);
        let letter = |x: usize| Value::word(&[&x1[x]]);
        let src = Arc::new(assoc_source(&mu, &carrier)?);
        let tgt = Arc::new(assoc_target(&mu, &carrier)?);
        // left comb: triangles 012 and 023 glued along 02
        let t13 = taco(s, &src.apex, "T_13", |w| {
            let edge23 = s.face(2, 0, s.face(3, 0, w));
            Value::pair(Value::pair(atom(2, s.face(3, 3, w)), letter(edge23)), atom(2, s.face(3, 1, w)))
        })?;
        // right comb: triangles 123 and 013 glued along 13
        let t02 = taco(s, &tgt.apex, "T_02", |w| {
            let edge01 = s.face(2, 2, s.face(3, 3, w));
            Value::pair(Value::pair(letter(edge01), atom(2, s.face(3, 0, w))), atom(2, s.face(3, 2, w)))
        })?;
        let mut pos02 = vec![0; t02.len()];
        for (k, &w) in t02.iter().enumerate() {
            pos02[w] = k;
        }
        let assoc = SpanMorphism::new(src, tgt, t13.iter().map(|&w| pos02[w]).collect())?;

        let unitor = |left: bool| -> Result<SpanMorphism, PseudoError> {
            let from = Arc::new(unitor_source(&eta, &mu, &carrier, left)?);
            let id = Arc::new(FiniteSpan::identity(carrier.clone()));
            let map: Vec<usize> = (0..from.apex_len()).map(|a| from.right[a]).collect();
            let name = if left { "left unitor" } else { "right unitor" };
            let mut count = vec![0; id.apex_len()];
            for &b in &map {
                count[b] += 1;
            }
            if let Some(b) = count.iter().position(|&c| c != 1) {
                return Err(PseudoError::NotTwoSegal {
                    map: name.into(),
                    element: id.value(b).to_string(),
                    preimages: count[b],
                });
            }
            Ok(SpanMorphism::new(from, id, map)?)
        };
        let left_unitor = unitor(true)?;
        let right_unitor = unitor(false)?;
        Ok(Self {
            carrier,
            eta,
            mu,
            assoc,
            left_unitor,
            right_unitor,
        })
    }

    /// The same data with the associator's map replaced, unchecked.
    pub fn with_assoc_map(&self, map: Vec<usize>) -> Self {
        let mut p = self.clone();
        p.assoc = SpanMorphism::new_unchecked(self.assoc.from.clone(), self.assoc.to.clone(), map);
        p
    }

    /// `μ_n`: `η`, the identity, `μ`, then `μ_{n-1} ∘ (μ × id_{X^{n-2}})`.
    pub fn nfold_mult(&self, n: usize) -> Result<Arc<FiniteSpan>, PseudoError> {
        let mut rw = Rewriter::new(self);
        let e = rw.nfold(n);
        Ok(rw.ev.eval(&e)?)
    }

    /// Structural cells that fail to commute with their legs or to be
    /// invertible, by name.
    pub fn invalid_cells(&self) -> Vec<String> {
        [
            ("assoc", &self.assoc),
            ("left_unitor", &self.left_unitor),
            ("right_unitor", &self.right_unitor),
        ]
        .into_iter()
        .filter_map(|(name, c)| match c.check() {
            Err(e) => Some(format!("{name}: {e}")),
            Ok(()) if !c.is_invertible() => Some(format!("{name}: not invertible")),
            Ok(()) => None,
        })
        .collect()
    }

    pub fn to_json(&self) -> String {
        pretty(&json!({
            "carrier": self.carrier.to_json(),
            "eta": self.eta.to_json_value(),
            "mu": self.mu.to_json_value(),
            "assoc": self.assoc.to_json_value(),
            "left_unitor": self.left_unitor.to_json_value(),
            "right_unitor": self.right_unitor.to_json_value(),
        }))
    }

    /// Reads the bundle written by `to_json`. Cell endpoints are recomputed
    /// from `η` and `μ` and must match the stored apex lists; the cell maps
    /// themselves are only range-checked, so broken cells load and are
    /// reported by `verify_coherence`.
    pub fn from_json(raw: &str) -> Result<Self, LoadError> {
        let doc = Doc::parse(raw)?;
        let root = doc.root()?;
        let span = |key: &str| -> Result<Arc<FiniteSpan>, LoadError> {
            let obj = doc
                .field(root, key)?
                .as_object()
                .ok_or_else(|| doc.err(key, "expected a span object"))?;
            Ok(Arc::new(FiniteSpan::from_json_in(&doc, obj)?))
        };
        let carrier = Arc::new(FinSet::from_json_in(&doc, doc.field(root, "carrier")?, "carrier")?);
        let eta = span("eta")?;
        let mu = span("mu")?;
        let xx = carrier.product(&carrier).map_err(|e| doc.err("carrier", e.to_string()))?;
        if *eta.src != FinSet::point() || *eta.tgt != *carrier {
            return Err(doc.err("eta", "must be a span from the point to the carrier"));
        }
        if *mu.src != xx || *mu.tgt != *carrier {
            return Err(doc.err("mu", "must be a span from carrier x carrier to the carrier"));
        }
        let rebuilt = |r: Result<FiniteSpan, SpanError>, key: &str| r.map(Arc::new).map_err(|e| doc.err(key, e.to_string()));
        let id = Arc::new(FiniteSpan::identity(carrier.clone()));
        let cell = |key: &str, from: Arc<FiniteSpan>, to: Arc<FiniteSpan>| -> Result<SpanMorphism, LoadError> {
            let obj = doc
                .field(root, key)?
                .as_object()
                .ok_or_else(|| doc.err(key, "expected a cell object"))?;
            for (side, span) in [("from", &from), ("to", &to)] {
                let stored = FinSet::from_json_in(&doc, doc.field(obj, side)?, key)?;
                if stored != *span.apex {
                    return Err(doc.err_within(key, side, "apex differs from the one recomputed from eta and mu"));
                }
            }
            let map = doc.indices_of(doc.field(obj, "map")?, key)?;
            if map.len() != from.apex_len() || map.iter().any(|&b| b >= to.apex_len()) {
                return Err(doc.err_within(key, "map", "map does not fit the apexes"));
            }
            Ok(SpanMorphism::new_unchecked(from, to, map))
        };
        let assoc = cell(
            "assoc",
            rebuilt(assoc_source(&mu, &carrier), "assoc")?,
            rebuilt(assoc_target(&mu, &carrier), "assoc")?,
        )?;
        let left_unitor = cell(
            "left_unitor",
            rebuilt(unitor_source(&eta, &mu, &carrier, true), "left_unitor")?,
            id.clone(),
        )?;
        let right_unitor = cell(
            "right_unitor",
            rebuilt(unitor_source(&eta, &mu, &carrier, false), "right_unitor")?,
            id,
        )?;
        Ok(Self {
            carrier,
            eta,
            mu,
            assoc,
            left_unitor,
            right_unitor,
        })
    }
}

/// Outcome of one coherence equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Verdict {
    fn compare(left: Result<SpanMorphism, PseudoError>, right: Result<SpanMorphism, PseudoError>) -> Self {
        match (left, right) {
            (Ok(l), Ok(r)) => match l.first_difference(&r) {
                None if l.same_as(&r) => Verdict {
                    holds: true,
                    witness: None,
                },
                None => Verdict {
                    holds: false,
                    witness: Some("the two sides have different endpoints".into()),
                },
                Some(v) => {
                    let k = l.from.apex.index_of(&v).expect("element of the source");
                    Verdict {
                        holds: false,
                        witness: Some(format!(
                            "{v} goes to {} on the left and {} on the right",
                            l.to.value(l.map[k]),
                            r.to.value(r.map[k])
                        )),
                    }
                }
            },
            (Err(e), _) | (_, Err(e)) => Verdict {
                holds: false,
                witness: Some(e.to_string()),
            },
        }
    }

    fn to_json(&self) -> Json {
        json!({ "holds": self.holds, "witness": self.witness })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub invalid_cells: Vec<String>,
    pub triangle: Verdict,
    pub pentagon: Verdict,
}

impl CoherenceReport {
    pub fn holds(&self) -> bool {
        self.invalid_cells.is_empty() && self.triangle.holds && self.pentagon.holds
    }

    pub fn to_json(&self) -> Json {
        json!({
            "cells_valid": self.invalid_cells.is_empty(),
            "invalid_cells": self.invalid_cells,
            "triangle": self.triangle.to_json(),
            "pentagon": self.pentagon.to_json(),
        })
    }
}

/// Both sides of the triangle equation on `μ(μ(x, η), y)`: `ℓ` after `a`,
/// and `r`.
pub fn triangle_sides(p: &Pseudomonoid) -> (Result<SpanMorphism, PseudoError>, Result<SpanMorphism, PseudoError>) {
    let mut rw = Rewriter::new(p);
    let t = Tree::node(Tree::node(Tree::Leaf, Tree::Cap), Tree::Leaf);
    let left = rw
        .run(&t, &[Step::new(&[], Rule::Assoc), Step::new(&[1], Rule::LeftUnit)])
        .map(|(_, c)| c);
    let right = rw.run(&t, &[Step::new(&[0], Rule::RightUnit)]).map(|(_, c)| c);
    (left, right)
}

/// One move of a coherence diagram: bring `from` into `form` canonically,
/// apply `cell` at `path`, then bring `result` into `to` canonically.
#[allow(clippy::too_many_arguments)]
fn apply_at(
    rw: &mut Rewriter,
    from: &SpanExpr,
    form: &SpanExpr,
    path: &[usize],
    cell: &SpanMorphism,
    repl: &SpanExpr,
    result: &SpanExpr,
    to: &SpanExpr,
) -> Result<SpanMorphism, PseudoError> {
    let c1 = canonical_iso(&mut rw.ev, from, form)?;
    let c2 = whisker(&mut rw.ev, form, path, cell, repl)?;
    let c3 = canonical_iso(&mut rw.ev, result, to)?;
    Ok(c1.then(&c2)?.then(&c3)?)
}

/// Both sides of the pentagon equation from `((ab)c)d` to `a(b(cd))`,
/// diagrams written row by row. The left side applies `a × id`, `a`,
/// `id × a`; the right side applies `a`, the slide move `c_{μ,μ}`, `a`.
pub fn pentagon_sides(p: &Pseudomonoid) -> (Result<SpanMorphism, PseudoError>, Result<SpanMorphism, PseudoError>) {
    let mut rw = Rewriter::new(p);
    let i = rw.id(1);
    let i2 = rw.id(2);
    let m = |lo: usize, hi: usize| rw.mu(lo, hi);
    let (m01, m02, m03, m12, m13, m23) = (m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3));
    let rows = |a: SpanExpr, b: SpanExpr, c: SpanExpr| a.then(b).then(c);
    let (ii, a) = (i.clone().times(i.clone()), &p.assoc);

    let d1 = rows(m01.clone().times(i.clone()).times(i.clone()), m02.clone().times(i.clone()), m03.clone());
    let d2 = rows(i.clone().times(m12.clone()).times(i.clone()), m02.clone().times(i.clone()), m03.clone());
    let d3 = rows(i.clone().times(m12.clone()).times(i.clone()), i.clone().times(m13.clone()), m03.clone());
    let d4 = rows(ii.clone().times(m23.clone()), i.clone().times(m13.clone()), m03.clone());
    let e2 = rows(m01.clone().times(i.clone()).times(i.clone()), i.clone().times(m23.clone()), m03.clone());
    let e3 = rows(ii.times(m23.clone()), m01.clone().times(i.clone()), m03.clone());

    let left = |rw: &mut Rewriter| -> Result<SpanMorphism, PseudoError> {
        let l1 = apply_at(
            rw,
            &d1,
            &m01.clone().times(i.clone()).then(m02.clone()).times(i.clone()).then(m03.clone()),
            &[0, 0],
            a,
            &i.clone().times(m12.clone()).then(m02.clone()),
            &i.clone().times(m12.clone()).then(m02.clone()).times(i.clone()).then(m03.clone()),
            &d2,
        )?;
        let top = i.clone().times(m12.clone()).times(i.clone());
        let l2 = apply_at(
            rw,
            &d2,
            &top.clone().then(m02.clone().times(i.clone()).then(m03.clone())),
            &[1],
            a,
            &i.clone().times(m13.clone()).then(m03.clone()),
            &top.then(i.clone().times(m13.clone()).then(m03.clone())),
            &d3,
        )?;
        let l3 = apply_at(
            rw,
            &d3,
            &i.clone().times(m12.clone().times(i.clone()).then(m13.clone())).then(m03.clone()),
            &[0, 1],
            a,
            &i.clone().times(m23.clone()).then(m13.clone()),
            &i.clone().times(i.clone().times(m23.clone()).then(m13.clone())).then(m03.clone()),
            &d4,
        )?;
        Ok(l1.then(&l2)?.then(&l3)?)
    };
    let left = left(&mut rw);

    let right = |rw: &mut Rewriter| -> Result<SpanMorphism, PseudoError> {
        let top = m01.clone().times(i.clone()).times(i.clone());
        let r1 = apply_at(
            rw,
            &d1,
            &top.clone().then(m02.clone().times(i.clone()).then(m03.clone())),
            &[1],
            a,
            &i.clone().times(m23.clone()).then(m03.clone()),
            &top.then(i.clone().times(m23.clone()).then(m03.clone())),
            &e2,
        )?;
        let c = slide(&p.mu, &p.mu)?;
        let r2 = apply_at(
            rw,
            &e2,
            &m01.clone().times(i2.clone()).then(i.clone().times(m23.clone())).then(m03.clone()),
            &[0],
            &c,
            &i2.clone().times(m23.clone()).then(m01.clone().times(i.clone())),
            &i2.clone().times(m23.clone()).then(m01.clone().times(i.clone())).then(m03.clone()),
            &e3,
        )?;
        let top = i2.clone().times(m23.clone());
        let r3 = apply_at(
            rw,
            &e3,
            &top.clone().then(m01.clone().times(i.clone()).then(m03.clone())),
            &[1],
            a,
            &i.clone().times(m13.clone()).then(m03.clone()),
            &top.then(i.clone().times(m13.clone()).then(m03.clone())),
            &d4,
        )?;
        Ok(r1.then(&r2)?.then(&r3)?)
    };
    let right = right(&mut rw);
    (left, right)
}

/// Evaluates both coherence equations extensionally.
pub fn verify_coherence(p: &Pseudomonoid) -> CoherenceReport {
    let (tl, tr) = triangle_sides(p);
    let (pl, pr) = pentagon_sides(p);
    CoherenceReport {
        invalid_cells: p.invalid_cells(),
        triangle: Verdict::compare(tl, tr),
        pentagon: Verdict::compare(pl, pr),
    }
}

/// `expr(t1) ⇒ expr(t2)` normalizing with the rightmost-innermost order.
pub fn coherence_cell(p: &Pseudomonoid, t1: &Tree, t2: &Tree) -> Result<SpanMorphism, PseudoError> {
    Rewriter::new(p).coherence_cell(t1, t2, Strategy::RightmostInnermost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cyclic_group, exponential_set, nerve, point, truncated_monoid};
    use crate::span::spans_isomorphic;

    fn z2() -> Pseudomonoid {
        Pseudomonoid::from_2segal(&nerve(&cyclic_group(2), 3).unwrap()).unwrap()
    }

    #[test]
    fn sizes_from_nerves() {
        let p = z2();
        assert_eq!(p.mu.apex_len(), 4);
        assert_eq!(p.assoc.map.len(), 8);
        assert!(p.assoc.is_invertible());
        let q = Pseudomonoid::from_2segal(&nerve(&truncated_monoid(3), 3).unwrap()).unwrap();
        assert_eq!(q.mu.apex_len(), 10);
        assert_eq!(q.eta.apex_len(), 1);
        let t = Pseudomonoid::from_2segal(&point(3)).unwrap();
        assert_eq!(t.mu.apex_len(), 1);
        assert!(t.assoc.is_identity() || t.assoc.map == vec![0]);
    }

    #[test]
    fn composite_sizes() {
        let p = z2();
        assert_eq!(p.assoc.from.apex_len(), 8);
        let id = Arc::new(FiniteSpan::identity(p.carrier.clone()));
        assert_eq!(product(&p.mu, &id).unwrap().apex_len(), 8);
        assert_eq!(p.nfold_mult(3).unwrap().apex_len(), 8);
        assert_eq!(p.nfold_mult(0).unwrap(), p.eta);
        assert_eq!(*p.nfold_mult(2).unwrap(), *p.mu);
    }

    #[test]
    fn tensorator_on_group_data() {
        let p = z2();
        let id = Arc::new(FiniteSpan::identity(p.carrier.clone()));
        let t = crate::span::tensorator(&p.mu, &p.mu, &id, &id).unwrap();
        assert_eq!(t.map.len(), 16);
        assert!(t.is_invertible());
    }

    #[test]
    fn projection_of_triple_composite_lands_in_x2() {
        let p = z2();
        let pi = p.assoc.from.projection(true).unwrap();
        assert_eq!(pi.target.size, 4);
    }

    #[test]
    fn associator_of_a_group_is_the_only_cell() {
        let p = z2();
        let found = spans_isomorphic(&p.assoc.from, &p.assoc.to).unwrap();
        assert!(found.same_as(&p.assoc));
    }

    #[test]
    fn coherence_holds_for_nerves() {
        for s in [nerve(&cyclic_group(2), 3).unwrap(), nerve(&truncated_monoid(3), 3).unwrap(), point(3)] {
            let r = verify_coherence(&Pseudomonoid::from_2segal(&s).unwrap());
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn mutated_associator_breaks_the_pentagon() {
        let p = z2();
        let mut map = p.assoc.map.clone();
        map.swap(0, 1);
        let r = verify_coherence(&p.with_assoc_map(map));
        assert!(!r.pentagon.holds);
        assert!(r.pentagon.witness.is_some());
        assert!(!r.invalid_cells.is_empty());
    }

    #[test]
    fn leg_preserving_mutation_is_caught_extensionally() {
        let p = Pseudomonoid::from_2segal(&exponential_set(2, 3).unwrap()).unwrap();
        let a = &p.assoc;
        let (x, y) = (0..a.map.len())
            .flat_map(|x| (x + 1..a.map.len()).map(move |y| (x, y)))
            .find(|&(x, y)| a.from.left[x] == a.from.left[y] && a.from.right[x] == a.from.right[y])
            .expect("two triples with the same legs");
        let mut map = a.map.clone();
        map.swap(x, y);
        let q = p.with_assoc_map(map);
        assert!(q.invalid_cells().is_empty());
        let r = verify_coherence(&q);
        assert!(!r.pentagon.holds || !r.triangle.holds, "{r:?}");
    }

    #[test]
    fn json_round_trip() {
        let p = z2();
        let text = p.to_json();
        let q = Pseudomonoid::from_json(&text).unwrap();
        assert_eq!(q.to_json(), text);
        assert!(verify_coherence(&q).holds());
        let broken = text.replacen("\"mu\"", "\"mux\"", 1);
        assert!(Pseudomonoid::from_json(&broken).is_err());
    }

    #[test]
    fn too_short_is_rejected() {
        let s = nerve(&cyclic_group(2), 2).unwrap();
        assert_eq!(Pseudomonoid::from_2segal(&s).unwrap_err(), PseudoError::TooShort(2));
    }

    #[test]
    fn coherence_cells_are_path_independent() {
        for s in [nerve(&cyclic_group(2), 3).unwrap(), nerve(&truncated_monoid(3), 3).unwrap()] {
            let p = Pseudomonoid::from_2segal(&s).unwrap();
            let mut rw = Rewriter::new(&p);
            for n in 1..=4 {
                for t in Tree::all(n) {
                    let a = rw.normalize(&t, Strategy::RightmostInnermost).unwrap();
                    let b = rw.normalize(&t, Strategy::LeftmostOutermost).unwrap();
                    assert!(a.same_as(&b), "{t}");
                }
            }
        }
    }

    #[test]
    fn right_comb_to_left_comb_is_the_inverse_associator() {
        let p = z2();
        let mut rw = Rewriter::new(&p);
        let c = rw.coherence_cell(&Tree::right_comb(3), &Tree::left_comb(3), Strategy::RightmostInnermost).unwrap();
        let direct = rw.run(&Tree::right_comb(3), &[Step::new(&[], Rule::AssocInv)]).unwrap().1;
        assert!(c.same_as(&direct));
        let same = rw.coherence_cell(&Tree::right_comb(3), &Tree::right_comb(3), Strategy::RightmostInnermost).unwrap();
        assert!(same.is_identity());
    }
}
