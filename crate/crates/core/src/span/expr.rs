//! Formal composites of generating spans, their evaluation, and the
//! canonical isomorphisms between differently bracketed composites.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{compose, product, FinSet, FiniteSpan, SpanError, SpanMorphism, Value};

/// A composite of generators and identities. Generators are told apart by
/// their tag, which must be unique within one expression.
#[derive(Clone, Debug)]
pub enum SpanExpr {
    Gen { tag: Arc<str>, span: Arc<FiniteSpan> },
    Id(Arc<FinSet>),
    /// First argument applied first.
    Compose(Box<SpanExpr>, Box<SpanExpr>),
    Product(Box<SpanExpr>, Box<SpanExpr>),
}

impl PartialEq for SpanExpr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SpanExpr::Gen { tag: a, .. }, SpanExpr::Gen { tag: b, .. }) => a == b,
            (SpanExpr::Id(a), SpanExpr::Id(b)) => Arc::ptr_eq(a, b) || a == b,
            (SpanExpr::Compose(a, b), SpanExpr::Compose(c, d)) => a == c && b == d,
            (SpanExpr::Product(a, b), SpanExpr::Product(c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for SpanExpr {}

impl Hash for SpanExpr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            SpanExpr::Gen { tag, .. } => tag.hash(state),
            SpanExpr::Id(x) => x.len().hash(state),
            SpanExpr::Compose(a, b) | SpanExpr::Product(a, b) => {
                a.hash(state);
                b.hash(state);
            }
        }
    }
}

impl SpanExpr {
    pub fn gen(tag: &str, span: Arc<FiniteSpan>) -> Self {
        SpanExpr::Gen {
            tag: Arc::from(tag),
            span,
        }
    }

    pub fn id(x: Arc<FinSet>) -> Self {
        SpanExpr::Id(x)
    }

    pub fn then(self, next: SpanExpr) -> Self {
        SpanExpr::Compose(Box::new(self), Box::new(next))
    }

    pub fn times(self, other: SpanExpr) -> Self {
        SpanExpr::Product(Box::new(self), Box::new(other))
    }

    /// Left-nested product of the given factors; the unit object's identity
    /// when empty.
    pub fn product_of(mut factors: Vec<SpanExpr>) -> Self {
        if factors.is_empty() {
            return SpanExpr::Id(Arc::new(FinSet::point()));
        }
        let first = factors.remove(0);
        factors.into_iter().fold(first, SpanExpr::times)
    }

    pub fn at(&self, path: &[usize]) -> Result<&SpanExpr, SpanError> {
        let mut cur = self;
        for (k, &step) in path.iter().enumerate() {
            cur = match (cur, step) {
                (SpanExpr::Compose(a, _) | SpanExpr::Product(a, _), 0) => a,
                (SpanExpr::Compose(_, b) | SpanExpr::Product(_, b), 1) => b,
                _ => return Err(SpanError::BadPath(path[..=k].to_vec())),
            };
        }
        Ok(cur)
    }

    pub fn replace_at(&self, path: &[usize], replacement: SpanExpr) -> Result<SpanExpr, SpanError> {
        let Some((&step, rest)) = path.split_first() else {
            return Ok(replacement);
        };
        let rebuild = |a: &SpanExpr, b: &SpanExpr, product: bool| -> Result<SpanExpr, SpanError> {
            let (a, b) = match step {
                0 => (a.replace_at(rest, replacement.clone())?, b.clone()),
                1 => (a.clone(), b.replace_at(rest, replacement.clone())?),
                _ => return Err(SpanError::BadPath(path.to_vec())),
            };
            Ok(if product { a.times(b) } else { a.then(b) })
        };
        match self {
            SpanExpr::Compose(a, b) => rebuild(a, b, false),
            SpanExpr::Product(a, b) => rebuild(a, b, true),
            _ => Err(SpanError::BadPath(path.to_vec())),
        }
    }

    /// `(tag, generator value)` for every generator in an apex element of
    /// this expression's evaluation.
    fn components(&self, v: &Value, out: &mut Vec<(Arc<str>, Value)>) {
        match self {
            SpanExpr::Gen { tag, .. } => out.push((tag.clone(), v.clone())),
            SpanExpr::Id(_) => {}
            SpanExpr::Compose(a, b) | SpanExpr::Product(a, b) => {
                let (x, y) = v.as_pair().expect("composite apex elements are pairs");
                a.components(x, out);
                b.components(y, out);
            }
        }
    }
}

/// Evaluates expressions to spans, caching every subexpression.
#[derive(Default)]
pub struct Evaluator {
    cache: HashMap<SpanExpr, Arc<FiniteSpan>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, e: &SpanExpr) -> Result<Arc<FiniteSpan>, SpanError> {
        if let Some(s) = self.cache.get(e) {
            return Ok(s.clone());
        }
        let s = match e {
            SpanExpr::Gen { span, .. } => span.clone(),
            SpanExpr::Id(x) => Arc::new(FiniteSpan::identity(x.clone())),
            SpanExpr::Compose(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                Arc::new(compose(&a, &b)?)
            }
            SpanExpr::Product(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                Arc::new(product(&a, &b)?)
            }
        };
        self.cache.insert(e.clone(), s.clone());
        Ok(s)
    }
}

type NormalForm = (usize, usize, Vec<(Arc<str>, Value)>);

fn normal_form(e: &SpanExpr, s: &FiniteSpan, a: usize) -> NormalForm {
    let mut comps = Vec::new();
    e.components(s.value(a), &mut comps);
    comps.sort();
    (s.left[a], s.right[a], comps)
}

/// The isomorphism between two composites of the same tagged generators
/// that matches elements with the same boundary values and the same
/// generator components.
pub fn canonical_iso(ev: &mut Evaluator, e1: &SpanExpr, e2: &SpanExpr) -> Result<SpanMorphism, SpanError> {
    let s1 = ev.eval(e1)?;
    let s2 = ev.eval(e2)?;
    if !s1.same_endpoints(&s2) {
        return Err(SpanError::TypeMismatch("canonical iso between spans with different feet".into()));
    }
    if s1.apex_len() != s2.apex_len() {
        return Err(SpanError::NotCanonical(format!(
            "apex sizes {} and {} differ",
            s1.apex_len(),
            s2.apex_len()
        )));
    }
    let mut index: HashMap<NormalForm, usize> = HashMap::with_capacity(s2.apex_len());
    for b in 0..s2.apex_len() {
        if index.insert(normal_form(e2, &s2, b), b).is_some() {
            return Err(SpanError::NotCanonical(format!(
                "element {} is not determined by its components",
                s2.value(b)
            )));
        }
    }
    let map = (0..s1.apex_len())
        .map(|a| {
            index
                .get(&normal_form(e1, &s1, a))
                .copied()
                .ok_or_else(|| SpanError::NotCanonical(format!("no match for {}", s1.value(a))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cell = SpanMorphism::new(s1, s2, map)?;
    if !cell.is_invertible() {
        return Err(SpanError::NotCanonical("matching is not a bijection".into()));
    }
    Ok(cell)
}

/// Extends `cell : e[path] ⇒ replacement` to `e ⇒ e[path := replacement]`
/// by composing and multiplying with identity cells.
pub fn whisker(
    ev: &mut Evaluator,
    e: &SpanExpr,
    path: &[usize],
    cell: &SpanMorphism,
    replacement: &SpanExpr,
) -> Result<SpanMorphism, SpanError> {
    let Some((&step, rest)) = path.split_first() else {
        let from = ev.eval(e)?;
        let to = ev.eval(replacement)?;
        if *cell.from != *from || *cell.to != *to {
            return Err(SpanError::TypeMismatch("cell does not fit the subexpression".into()));
        }
        return Ok(cell.clone());
    };
    let (a, b, is_product) = match e {
        SpanExpr::Compose(a, b) => (a, b, false),
        SpanExpr::Product(a, b) => (a, b, true),
        _ => return Err(SpanError::BadPath(path.to_vec())),
    };
    let (x, y) = match step {
        0 => (
            whisker(ev, a, rest, cell, replacement)?,
            SpanMorphism::identity(ev.eval(b)?),
        ),
        1 => (
            SpanMorphism::identity(ev.eval(a)?),
            whisker(ev, b, rest, cell, replacement)?,
        ),
        _ => return Err(SpanError::BadPath(path.to_vec())),
    };
    if is_product {
        SpanMorphism::tensor(&x, &y)
    } else {
        SpanMorphism::horizontal(&x, &y)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{associator, slide};
    use super::*;

    fn sample() -> (Arc<FinSet>, Arc<FiniteSpan>, Arc<FiniteSpan>) {
        let x = Arc::new(FinSet::of_letters(&["p", "q"]));
        let xx = Arc::new(x.product(&x).unwrap());
        let apex = Arc::new(FinSet::atoms(&["m0", "m1", "m2", "m3", "m4"]).unwrap());
        let mu = Arc::new(FiniteSpan::new(xx, x.clone(), apex, vec![0, 1, 1, 2, 3], vec![0, 1, 1, 1, 0]).unwrap());
        let f = Arc::new(
            FiniteSpan::new(
                x.clone(),
                x.clone(),
                Arc::new(FinSet::atoms(&["f0", "f1", "f2"]).unwrap()),
                vec![0, 0, 1],
                vec![1, 0, 1],
            )
            .unwrap(),
        );
        (x, mu, f)
    }

    #[test]
    fn canonical_iso_recovers_associator() {
        let (_, _, f) = sample();
        let (a, b, c) = (SpanExpr::gen("a", f.clone()), SpanExpr::gen("b", f.clone()), SpanExpr::gen("c", f.clone()));
        let left = a.clone().then(b.clone()).then(c.clone());
        let right = a.then(b.then(c));
        let mut ev = Evaluator::new();
        let iso = canonical_iso(&mut ev, &left, &right).unwrap();
        assert!(iso.same_as(&associator(&f, &f, &f).unwrap()));
    }

    #[test]
    fn canonical_iso_recovers_slide() {
        let (x, mu, _) = sample();
        let xx = mu.src.clone();
        let f = SpanExpr::gen("f", mu.clone());
        let g = SpanExpr::gen("g", mu.clone());
        let src = f.clone().times(SpanExpr::id(xx.clone())).then(SpanExpr::id(x.clone()).times(g.clone()));
        let tgt = SpanExpr::id(xx).times(g).then(f.times(SpanExpr::id(x)));
        let mut ev = Evaluator::new();
        let iso = canonical_iso(&mut ev, &src, &tgt).unwrap();
        assert!(iso.same_as(&slide(&mu, &mu).unwrap()));
    }

    #[test]
    fn whiskering_an_identity_gives_identity() {
        let (x, mu, _) = sample();
        let m = SpanExpr::gen("m", mu.clone());
        let e = m.clone().times(SpanExpr::id(x)).then(SpanExpr::gen("n", mu.clone()));
        let mut ev = Evaluator::new();
        let cell = SpanMorphism::identity(mu);
        let w = whisker(&mut ev, &e, &[0, 0], &cell, &m).unwrap();
        assert!(w.is_identity());
        assert!(whisker(&mut ev, &e, &[2], &cell, &m).is_err());
    }
}
