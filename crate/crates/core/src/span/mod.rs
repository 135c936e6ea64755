//! The bicategory of spans of finite sets with its cartesian monoidal
//! structure.
//!
//! Objects are finite sets whose elements are words (tuples of labels), so
//! the product of objects concatenates words and is strictly associative
//! and unital. Apex elements of composites and products are pairs that
//! remember the components they came from.

mod expr;
mod json;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::simplicial::{FiniteMap, SetDesc};

pub use expr::{canonical_iso, whisker, Evaluator, SpanExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanError {
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("map does not commute with the legs at {0}")]
    LegMismatch(String),
    #[error("span was not built as a composite or product")]
    NoProvenance,
    #[error("no canonical isomorphism: {0}")]
    NotCanonical(String),
    #[error("cell is not invertible")]
    NotInvertible,
    #[error("invalid path {0:?} into expression")]
    BadPath(Vec<usize>),
}

/// An element of an object or apex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Atom(Arc<str>),
    Word(Arc<[Arc<str>]>),
    Pair(Arc<Value>, Arc<Value>),
}

impl Value {
    pub fn atom(s: &str) -> Self {
        Value::Atom(Arc::from(s))
    }

    pub fn word<S: AsRef<str>>(items: &[S]) -> Self {
        Value::Word(items.iter().map(|s| Arc::from(s.as_ref())).collect())
    }

    pub fn unit() -> Self {
        Value::Word(Arc::from(Vec::new()))
    }

    pub fn pair(a: Value, b: Value) -> Self {
        Value::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&[Arc<str>]> {
        match self {
            Value::Word(w) => Some(w),
            _ => None,
        }
    }

    /// Labels in left-to-right order with all bracketing removed.
    pub fn flatten(&self) -> Vec<Arc<str>> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Value::Atom(a) => out.push(a.clone()),
            Value::Word(w) => out.extend(w.iter().cloned()),
            Value::Pair(a, b) => {
                a.flatten_into(out);
                b.flatten_into(out);
            }
        }
    }

    fn concat(&self, other: &Value) -> Option<Value> {
        let (a, b) = (self.as_word()?, other.as_word()?);
        Some(Value::Word(a.iter().chain(b.iter()).cloned().collect()))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(a) => write!(f, "{a}"),
            Value::Word(w) => write!(f, "[{}]", w.join(", ")),
            Value::Pair(a, b) => write!(f, "<{a}, {b}>"),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite set of values with an index for lookup.
#[derive(Clone)]
pub struct FinSet {
    elements: Vec<Value>,
    index: HashMap<Value, usize>,
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for FinSet {}

impl Hash for FinSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

impl FinSet {
    pub fn new(elements: Vec<Value>) -> Result<Self, SpanError> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, v) in elements.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(SpanError::TypeMismatch(format!("duplicate element {v}")));
            }
        }
        Ok(Self { elements, index })
    }

    /// The object whose elements are the one-letter words on `labels`.
    pub fn of_letters<S: AsRef<str>>(labels: &[S]) -> Self {
        Self::new(labels.iter().map(|l| Value::word(&[l.as_ref()])).collect()).expect("labels are distinct")
    }

    pub fn atoms<S: AsRef<str>>(labels: &[S]) -> Result<Self, SpanError> {
        Self::new(labels.iter().map(|l| Value::atom(l.as_ref())).collect())
    }

    /// The monoidal unit `{[]}`.
    pub fn point() -> Self {
        Self::new(vec![Value::unit()]).expect("singleton")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Value] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Value {
        &self.elements[i]
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_object(&self) -> bool {
        self.elements.iter().all(|v| v.as_word().is_some())
    }

    /// Cartesian product of objects: concatenated words in lexicographic
    /// order.
    pub fn product(&self, other: &FinSet) -> Result<FinSet, SpanError> {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.elements {
            for b in &other.elements {
                out.push(a.concat(b).ok_or_else(|| {
                    SpanError::TypeMismatch(format!("product of non-word elements {a} and {b}"))
                })?);
            }
        }
        FinSet::new(out)
    }

    pub fn desc(&self, name: &str) -> SetDesc {
        SetDesc::new(name, self.len())
    }
}

/// How a span was built; needed to project apex pairs onto components.
#[derive(Clone, Debug)]
pub enum Provenance {
    Primitive,
    Composite { first: Arc<FiniteSpan>, second: Arc<FiniteSpan> },
    Product { left: Arc<FiniteSpan>, right: Arc<FiniteSpan> },
}

/// `src <- apex -> tgt`.
#[derive(Clone)]
pub struct FiniteSpan {
    pub src: Arc<FinSet>,
    pub tgt: Arc<FinSet>,
    pub apex: Arc<FinSet>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub provenance: Provenance,
}

impl PartialEq for FiniteSpan {
    fn eq(&self, other: &Self) -> bool {
        same_set(&self.src, &other.src)
            && same_set(&self.tgt, &other.tgt)
            && same_set(&self.apex, &other.apex)
            && self.left == other.left
            && self.right == other.right
    }
}

impl fmt::Debug for FiniteSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Span({} <- {} -> {})",
            self.src.len(),
            self.apex.len(),
            self.tgt.len()
        )
    }
}

fn same_set(a: &Arc<FinSet>, b: &Arc<FinSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FiniteSpan {
    pub fn new(
        src: Arc<FinSet>,
        tgt: Arc<FinSet>,
        apex: Arc<FinSet>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self, SpanError> {
        if left.len() != apex.len() || right.len() != apex.len() {
            return Err(SpanError::TypeMismatch("leg length differs from apex size".into()));
        }
        if left.iter().any(|&x| x >= src.len()) || right.iter().any(|&y| y >= tgt.len()) {
            return Err(SpanError::TypeMismatch("leg points outside its foot".into()));
        }
        Ok(Self {
            src,
            tgt,
            apex,
            left,
            right,
            provenance: Provenance::Primitive,
        })
    }

    pub fn identity(x: Arc<FinSet>) -> Self {
        let ids: Vec<usize> = (0..x.len()).collect();
        Self {
            src: x.clone(),
            tgt: x.clone(),
            apex: x,
            left: ids.clone(),
            right: ids,
            provenance: Provenance::Primitive,
        }
    }

    pub fn apex_len(&self) -> usize {
        self.apex.len()
    }

    pub fn same_endpoints(&self, other: &FiniteSpan) -> bool {
        same_set(&self.src, &other.src) && same_set(&self.tgt, &other.tgt)
    }

    /// The apex element as a value.
    pub fn value(&self, a: usize) -> &Value {
        self.apex.get(a)
    }

    /// Projection of an apex element onto the first (or second) component
    /// of the composite or product it was built as.
    pub fn projection(&self, second: bool) -> Result<FiniteMap, SpanError> {
        let component = match &self.provenance {
            Provenance::Primitive => return Err(SpanError::NoProvenance),
            Provenance::Composite { first, second: s } => {
                if second {
                    s
                } else {
                    first
                }
            }
            Provenance::Product { left, right } => {
                if second {
                    right
                } else {
                    left
                }
            }
        };
        let table = self
            .apex
            .elements()
            .iter()
            .map(|v| {
                let (a, b) = v.as_pair().expect("composite apexes hold pairs");
                component
                    .apex
                    .index_of(if second { b } else { a })
                    .expect("component value lies in component apex")
            })
            .collect();
        Ok(FiniteMap::new(
            self.apex.desc("apex"),
            component.apex.desc("component apex"),
            table,
        ))
    }
}

/// `g ∘ f`: apex `{<a, b> : f.right(a) = g.left(b)}` in lexicographic order.
pub fn compose(f: &Arc<FiniteSpan>, g: &Arc<FiniteSpan>) -> Result<FiniteSpan, SpanError> {
    if !same_set(&f.tgt, &g.src) {
        return Err(SpanError::TypeMismatch(format!(
            "composing through feet of sizes {} and {}",
            f.tgt.len(),
            g.src.len()
        )));
    }
    let mut by_left: Vec<Vec<usize>> = vec![Vec::new(); g.src.len()];
    for (b, &y) in g.left.iter().enumerate() {
        by_left[y].push(b);
    }
    let mut apex = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in 0..f.apex.len() {
        for &b in &by_left[f.right[a]] {
            apex.push(Value::pair(f.value(a).clone(), g.value(b).clone()));
            left.push(f.left[a]);
            right.push(g.right[b]);
        }
    }
    Ok(FiniteSpan {
        src: f.src.clone(),
        tgt: g.tgt.clone(),
        apex: Arc::new(FinSet::new(apex)?),
        left,
        right,
        provenance: Provenance::Composite {
            first: f.clone(),
            second: g.clone(),
        },
    })
}

/// `f × h`, componentwise with pair apex elements.
pub fn product(f: &Arc<FiniteSpan>, h: &Arc<FiniteSpan>) -> Result<FiniteSpan, SpanError> {
    let src = Arc::new(f.src.product(&h.src)?);
    let tgt = Arc::new(f.tgt.product(&h.tgt)?);
    let mut apex = Vec::with_capacity(f.apex_len() * h.apex_len());
    let mut left = Vec::with_capacity(apex.capacity());
    let mut right = Vec::with_capacity(apex.capacity());
    for a in 0..f.apex_len() {
        for c in 0..h.apex_len() {
            apex.push(Value::pair(f.value(a).clone(), h.value(c).clone()));
            left.push(f.left[a] * h.src.len() + h.left[c]);
            right.push(f.right[a] * h.tgt.len() + h.right[c]);
        }
    }
    Ok(FiniteSpan {
        src,
        tgt,
        apex: Arc::new(FinSet::new(apex)?),
        left,
        right,
        provenance: Provenance::Product {
            left: f.clone(),
            right: h.clone(),
        },
    })
}

/// A map of spans `from ⇒ to`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanMorphism {
    pub from: Arc<FiniteSpan>,
    pub to: Arc<FiniteSpan>,
    pub map: Vec<usize>,
}

impl SpanMorphism {
    /// Checks endpoints and leg commutation.
    pub fn new(from: Arc<FiniteSpan>, to: Arc<FiniteSpan>, map: Vec<usize>) -> Result<Self, SpanError> {
        let cell = Self::new_unchecked(from, to, map);
        cell.check()?;
        Ok(cell)
    }

    /// No checks at all; for building deliberately broken cells.
    pub fn new_unchecked(from: Arc<FiniteSpan>, to: Arc<FiniteSpan>, map: Vec<usize>) -> Self {
        Self { from, to, map }
    }

    pub fn check(&self) -> Result<(), SpanError> {
        if !self.from.same_endpoints(&self.to) {
            return Err(SpanError::TypeMismatch("cell between spans with different feet".into()));
        }
        if self.map.len() != self.from.apex_len() {
            return Err(SpanError::TypeMismatch("cell map length differs from apex size".into()));
        }
        for (a, &b) in self.map.iter().enumerate() {
            if b >= self.to.apex_len()
                || self.from.left[a] != self.to.left[b]
                || self.from.right[a] != self.to.right[b]
            {
                return Err(SpanError::LegMismatch(self.from.value(a).to_string()));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn is_invertible(&self) -> bool {
        if self.map.len() != self.to.apex_len() {
            return false;
        }
        let mut seen = vec![false; self.map.len()];
        self.map.iter().all(|&b| b < seen.len() && !std::mem::replace(&mut seen[b], true))
    }

    pub fn identity(f: Arc<FiniteSpan>) -> Self {
        let map = (0..f.apex_len()).collect();
        Self {
            from: f.clone(),
            to: f,
            map,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.from == self.to && self.map.iter().enumerate().all(|(a, &b)| a == b)
    }

    pub fn inverse(&self) -> Result<Self, SpanError> {
        if !self.is_invertible() {
            return Err(SpanError::NotInvertible);
        }
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Ok(Self {
            from: self.to.clone(),
            to: self.from.clone(),
            map: inv,
        })
    }

    /// `self` then `next`.
    pub fn then(&self, next: &SpanMorphism) -> Result<Self, SpanError> {
        if *self.to != *next.from {
            return Err(SpanError::TypeMismatch("vertical composite of cells with different middle spans".into()));
        }
        Ok(Self {
            from: self.from.clone(),
            to: next.to.clone(),
            map: self.map.iter().map(|&b| next.map[b]).collect(),
        })
    }

    /// `beta ∘ alpha` horizontally: a cell between composites.
    pub fn horizontal(alpha: &SpanMorphism, beta: &SpanMorphism) -> Result<Self, SpanError> {
        let from = Arc::new(compose(&alpha.from, &beta.from)?);
        let to = Arc::new(compose(&alpha.to, &beta.to)?);
        Self::componentwise(from, to, alpha, beta)
    }

    /// `alpha × beta`: a cell between products.
    pub fn tensor(alpha: &SpanMorphism, beta: &SpanMorphism) -> Result<Self, SpanError> {
        let from = Arc::new(product(&alpha.from, &beta.from)?);
        let to = Arc::new(product(&alpha.to, &beta.to)?);
        Self::componentwise(from, to, alpha, beta)
    }

    fn componentwise(
        from: Arc<FiniteSpan>,
        to: Arc<FiniteSpan>,
        alpha: &SpanMorphism,
        beta: &SpanMorphism,
    ) -> Result<Self, SpanError> {
        let mut map = Vec::with_capacity(from.apex_len());
        for v in from.apex.elements() {
            let (a, b) = v.as_pair().expect("pair apex");
            let ia = alpha.from.apex.index_of(a).expect("component");
            let ib = beta.from.apex.index_of(b).expect("component");
            let image = Value::pair(
                alpha.to.value(alpha.map[ia]).clone(),
                beta.to.value(beta.map[ib]).clone(),
            );
            let j = to
                .apex
                .index_of(&image)
                .ok_or_else(|| SpanError::LegMismatch(v.to_string()))?;
            map.push(j);
        }
        Self::new(from, to, map)
    }

    /// Extensional equality: same spans and same map.
    pub fn same_as(&self, other: &SpanMorphism) -> bool {
        self.from == other.from && self.to == other.to && self.map == other.map
    }

    /// First apex element on which two parallel cells differ.
    pub fn first_difference(&self, other: &SpanMorphism) -> Option<Value> {
        self.map
            .iter()
            .zip(&other.map)
            .position(|(a, b)| a != b)
            .map(|a| self.from.value(a).clone())
    }
}

fn remap(
    from: Arc<FiniteSpan>,
    to: Arc<FiniteSpan>,
    f: impl Fn(&Value) -> Option<Value>,
) -> Result<SpanMorphism, SpanError> {
    let map = from
        .apex
        .elements()
        .iter()
        .map(|v| {
            f(v).and_then(|w| to.apex.index_of(&w))
                .ok_or_else(|| SpanError::NotCanonical(format!("no image for {v}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    SpanMorphism::new(from, to, map)
}

/// `(h ∘ g) ∘ f ⇒ h ∘ (g ∘ f)` in application order: `<<a, b>, c> ↦ <a, <b, c>>`.
pub fn associator(f: &Arc<FiniteSpan>, g: &Arc<FiniteSpan>, h: &Arc<FiniteSpan>) -> Result<SpanMorphism, SpanError> {
    let from = Arc::new(compose(&Arc::new(compose(f, g)?), h)?);
    let to = Arc::new(compose(f, &Arc::new(compose(g, h)?))?);
    remap(from, to, |v| {
        let (ab, c) = v.as_pair()?;
        let (a, b) = ab.as_pair()?;
        Some(Value::pair(a.clone(), Value::pair(b.clone(), c.clone())))
    })
}

/// `id ∘ f ⇒ f`: `<a, y> ↦ a`.
pub fn left_unitor(f: &Arc<FiniteSpan>) -> Result<SpanMorphism, SpanError> {
    let id = Arc::new(FiniteSpan::identity(f.tgt.clone()));
    let from = Arc::new(compose(f, &id)?);
    remap(from, f.clone(), |v| Some(v.as_pair()?.0.clone()))
}

/// `f ∘ id ⇒ f`: `<x, a> ↦ a`.
pub fn right_unitor(f: &Arc<FiniteSpan>) -> Result<SpanMorphism, SpanError> {
    let id = Arc::new(FiniteSpan::identity(f.src.clone()));
    let from = Arc::new(compose(&id, f)?);
    remap(from, f.clone(), |v| Some(v.as_pair()?.1.clone()))
}

/// `(f' × g') ∘ (f × g) ⇒ (f' ∘ f) × (g' ∘ g)`:
/// `<<a, b>, <a', b'>> ↦ <<a, a'>, <b, b'>>`.
pub fn tensorator(
    f: &Arc<FiniteSpan>,
    g: &Arc<FiniteSpan>,
    f2: &Arc<FiniteSpan>,
    g2: &Arc<FiniteSpan>,
) -> Result<SpanMorphism, SpanError> {
    let from = Arc::new(compose(&Arc::new(product(f, g)?), &Arc::new(product(f2, g2)?))?);
    let to = Arc::new(product(&Arc::new(compose(f, f2)?), &Arc::new(compose(g, g2)?))?);
    remap(from, to, |v| {
        let (ab, ab2) = v.as_pair()?;
        let (a, b) = ab.as_pair()?;
        let (a2, b2) = ab2.as_pair()?;
        Some(Value::pair(
            Value::pair(a.clone(), a2.clone()),
            Value::pair(b.clone(), b2.clone()),
        ))
    })
}

/// Source of the slide move: `(id_{X'} × g) ∘ (f × id_Y)`.
pub fn slide_source(f: &Arc<FiniteSpan>, g: &Arc<FiniteSpan>) -> Result<FiniteSpan, SpanError> {
    let first = Arc::new(product(f, &Arc::new(FiniteSpan::identity(g.src.clone())))?);
    let second = Arc::new(product(&Arc::new(FiniteSpan::identity(f.tgt.clone())), g)?);
    compose(&first, &second)
}

/// Target of the slide move: `(f × id_{Y'}) ∘ (id_X × g)`.
pub fn slide_target(f: &Arc<FiniteSpan>, g: &Arc<FiniteSpan>) -> Result<FiniteSpan, SpanError> {
    let first = Arc::new(product(&Arc::new(FiniteSpan::identity(f.src.clone())), g)?);
    let second = Arc::new(product(f, &Arc::new(FiniteSpan::identity(g.tgt.clone())))?);
    compose(&first, &second)
}

/// The slide move `c_{f,g}`: `<<a, y>, <x', b>> ↦ <<x, b>, <a, y'>>` where
/// `x`, `y'` are the outer leg values of `a`, `b`.
pub fn slide(f: &Arc<FiniteSpan>, g: &Arc<FiniteSpan>) -> Result<SpanMorphism, SpanError> {
    let from = Arc::new(slide_source(f, g)?);
    let to = Arc::new(slide_target(f, g)?);
    remap(from, to, |v| {
        let (ay, xb) = v.as_pair()?;
        let a = ay.as_pair()?.0;
        let b = xb.as_pair()?.1;
        let ia = f.apex.index_of(a)?;
        let ib = g.apex.index_of(b)?;
        let x = f.src.get(f.left[ia]).clone();
        let y2 = g.tgt.get(g.right[ib]).clone();
        Some(Value::pair(Value::pair(x, b.clone()), Value::pair(a.clone(), y2)))
    })
}

/// The same slide move assembled from the tensorator and unitors.
pub fn slide_via_tensorator(f: &Arc<FiniteSpan>, g: &Arc<FiniteSpan>) -> Result<SpanMorphism, SpanError> {
    let id_x = Arc::new(FiniteSpan::identity(f.src.clone()));
    let id_x2 = Arc::new(FiniteSpan::identity(f.tgt.clone()));
    let id_y = Arc::new(FiniteSpan::identity(g.src.clone()));
    let id_y2 = Arc::new(FiniteSpan::identity(g.tgt.clone()));
    // (id × g) ∘ (f × id) ⇒ (id ∘ f) × (g ∘ id) ⇒ f × g
    let t1 = tensorator(f, &id_y, &id_x2, g)?;
    let u1 = SpanMorphism::tensor(&left_unitor(f)?, &right_unitor(g)?)?;
    // (f × id) ∘ (id × g) ⇒ (f ∘ id) × (id ∘ g) ⇒ f × g
    let t2 = tensorator(&id_x, g, f, &id_y2)?;
    let u2 = SpanMorphism::tensor(&right_unitor(f)?, &left_unitor(g)?)?;
    t1.then(&u1)?.then(&u2.inverse()?)?.then(&t2.inverse()?)
}

/// A leg-commuting bijection `f ⇒ g`, if one exists. Within each fiber over
/// `(src, tgt)`, elements with equal flattening are matched first, then the
/// rest in order.
pub fn spans_isomorphic(f: &Arc<FiniteSpan>, g: &Arc<FiniteSpan>) -> Option<SpanMorphism> {
    if !f.same_endpoints(g) || f.apex_len() != g.apex_len() {
        return None;
    }
    let mut fibers: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for b in 0..g.apex_len() {
        fibers.entry((g.left[b], g.right[b])).or_default().push(b);
    }
    let mut used = vec![false; g.apex_len()];
    let mut map = vec![usize::MAX; f.apex_len()];
    for a in 0..f.apex_len() {
        let flat = f.value(a).flatten();
        let fiber = fibers.get(&(f.left[a], f.right[a]))?;
        if let Some(&b) = fiber.iter().find(|&&b| !used[b] && g.value(b).flatten() == flat) {
            used[b] = true;
            map[a] = b;
        }
    }
    for a in 0..f.apex_len() {
        if map[a] == usize::MAX {
            let fiber = fibers.get(&(f.left[a], f.right[a]))?;
            let &b = fiber.iter().find(|&&b| !used[b])?;
            used[b] = true;
            map[a] = b;
        }
    }
    SpanMorphism::new(f.clone(), g.clone(), map).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(labels: &[&str]) -> Arc<FinSet> {
        Arc::new(FinSet::of_letters(labels))
    }

    fn span(src: &Arc<FinSet>, tgt: &Arc<FinSet>, apex: &[&str], left: Vec<usize>, right: Vec<usize>) -> Arc<FiniteSpan> {
        Arc::new(
            FiniteSpan::new(
                src.clone(),
                tgt.clone(),
                Arc::new(FinSet::atoms(apex).unwrap()),
                left,
                right,
            )
            .unwrap(),
        )
    }

    fn sample() -> (Arc<FiniteSpan>, Arc<FiniteSpan>, Arc<FiniteSpan>) {
        let x = obj(&["x0", "x1"]);
        let y = obj(&["y0", "y1", "y2"]);
        let z = obj(&["z0"]);
        let f = span(&x, &y, &["a0", "a1", "a2"], vec![0, 1, 1], vec![0, 0, 2]);
        let g = span(&y, &z, &["b0", "b1", "b2"], vec![0, 2, 2], vec![0, 0, 0]);
        let h = span(&z, &x, &["c0", "c1"], vec![0, 0], vec![1, 0]);
        (f, g, h)
    }

    #[test]
    fn flatten_is_associative() {
        let (a, b, c) = (Value::atom("a"), Value::word(&["b", "b'"]), Value::unit());
        let l = Value::pair(Value::pair(a.clone(), b.clone()), c.clone());
        let r = Value::pair(a, Value::pair(b, c));
        assert_eq!(l.flatten(), r.flatten());
        assert_ne!(l, r);
    }

    #[test]
    fn composition_is_a_pullback() {
        let (f, g, _) = sample();
        let gf = compose(&f, &g).unwrap();
        // pairs (a, b) with f.right(a) = g.left(b)
        assert_eq!(gf.apex_len(), 2 + 2 + 2 - 2);
        for v in gf.apex.elements() {
            let (a, b) = v.as_pair().unwrap();
            let ia = f.apex.index_of(a).unwrap();
            let ib = g.apex.index_of(b).unwrap();
            assert_eq!(f.right[ia], g.left[ib]);
        }
        let bad = compose(&g, &g);
        assert!(matches!(bad, Err(SpanError::TypeMismatch(_))));
    }

    #[test]
    fn identity_composites_and_unitors() {
        let (f, _, _) = sample();
        let l = left_unitor(&f).unwrap();
        let r = right_unitor(&f).unwrap();
        assert!(l.is_invertible() && r.is_invertible());
        assert_eq!(l.from.apex_len(), f.apex_len());
    }

    #[test]
    fn singleton_spans() {
        let p = Arc::new(FinSet::point());
        let s = span(&p, &p, &["s"], vec![0], vec![0]);
        let t = span(&p, &p, &["t"], vec![0], vec![0]);
        assert_eq!(compose(&s, &t).unwrap().apex_len(), 1);
        assert_eq!(product(&s, &t).unwrap().apex_len(), 1);
        let c = slide(&s, &t).unwrap();
        assert_eq!(c.map, vec![0]);
    }

    #[test]
    fn product_with_unit_object() {
        let (f, _, _) = sample();
        let one = Arc::new(FiniteSpan::identity(Arc::new(FinSet::point())));
        let fp = product(&f, &one).unwrap();
        assert_eq!(*fp.src, *f.src);
        assert_eq!(*fp.tgt, *f.tgt);
        assert_eq!(fp.left, f.left);
        assert!(spans_isomorphic(&Arc::new(fp), &f).is_some());
    }

    #[test]
    fn associator_matches_search() {
        let (f, g, h) = sample();
        let a = associator(&f, &g, &h).unwrap();
        let found = spans_isomorphic(&a.from, &a.to).unwrap();
        assert!(found.same_as(&a));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let (f, _, _) = sample();
        let x = f.src.clone();
        let y = f.tgt.clone();
        let small = span(&x, &y, &["only"], vec![0], vec![0]);
        assert!(spans_isomorphic(&f, &small).is_none());
        assert!(spans_isomorphic(&f, &f).unwrap().is_identity());
    }

    #[test]
    fn slide_agrees_with_tensorator_route() {
        let (f, g, _) = sample();
        let direct = slide(&f, &g).unwrap();
        let routed = slide_via_tensorator(&f, &g).unwrap();
        assert!(direct.same_as(&routed));
        assert!(direct.is_invertible());
    }

    #[test]
    fn span_pentagon_and_triangle() {
        let (f, g, h) = sample();
        let k = span(&f.src, &f.src, &["k0", "k1", "k2"], vec![0, 1, 1], vec![1, 1, 0]);
        // (((f g) h) k) ⇒ ((f g) (h k)) ⇒ (f (g (h k)))
        let fg = Arc::new(compose(&f, &g).unwrap());
        let hk = Arc::new(compose(&h, &k).unwrap());
        let top = associator(&fg, &h, &k).unwrap().then(&associator(&f, &g, &hk).unwrap()).unwrap();
        // (((f g) h) k) ⇒ ((f (g h)) k) ⇒ (f ((g h) k)) ⇒ (f (g (h k)))
        let gh = Arc::new(compose(&g, &h).unwrap());
        let s1 = SpanMorphism::horizontal(&associator(&f, &g, &h).unwrap(), &SpanMorphism::identity(k.clone())).unwrap();
        let s2 = associator(&f, &gh, &k).unwrap();
        let s3 = SpanMorphism::horizontal(&SpanMorphism::identity(f.clone()), &associator(&g, &h, &k).unwrap()).unwrap();
        let bottom = s1.then(&s2).unwrap().then(&s3).unwrap();
        assert!(top.same_as(&bottom));

        // triangle: (id ∘ g) ∘ f ⇒ id... here with the identity in the middle
        let id_y = Arc::new(FiniteSpan::identity(f.tgt.clone()));
        let a = associator(&f, &id_y, &g).unwrap();
        let right = SpanMorphism::horizontal(&SpanMorphism::identity(f.clone()), &right_unitor(&g).unwrap()).unwrap();
        let left = SpanMorphism::horizontal(&left_unitor(&f).unwrap(), &SpanMorphism::identity(g.clone())).unwrap();
        assert!(a.then(&right).unwrap().same_as(&left));
    }

    #[test]
    fn interchange_law() {
        let (f, g, _) = sample();
        let af = spans_isomorphic(&f, &f).unwrap();
        let ag = spans_isomorphic(&g, &g).unwrap();
        let lf = left_unitor(&f).unwrap();
        let lg = left_unitor(&g).unwrap();
        let lhs = SpanMorphism::horizontal(&lf.then(&af).unwrap(), &lg.then(&ag).unwrap()).unwrap();
        let rhs = SpanMorphism::horizontal(&lf, &lg)
            .unwrap()
            .then(&SpanMorphism::horizontal(&af, &ag).unwrap())
            .unwrap();
        assert!(lhs.same_as(&rhs));
    }

    #[test]
    fn projections() {
        let (f, g, _) = sample();
        assert_eq!(f.projection(false), Err(SpanError::NoProvenance));
        let gf = compose(&f, &g).unwrap();
        let p1 = gf.projection(false).unwrap();
        let p2 = gf.projection(true).unwrap();
        for a in 0..gf.apex_len() {
            assert_eq!(f.right[p1.apply(a)], g.left[p2.apply(a)]);
        }
        let fg = product(&f, &g).unwrap();
        assert_eq!(fg.projection(false).unwrap().table.len(), 9);
    }

    #[test]
    fn unchecked_cell_is_detected() {
        let (f, _, _) = sample();
        let bad = SpanMorphism::new_unchecked(f.clone(), f.clone(), vec![1, 0, 2]);
        assert!(matches!(bad.check(), Err(SpanError::LegMismatch(_))));
    }
}
