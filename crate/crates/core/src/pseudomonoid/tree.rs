//! Planar binary trees built from `μ` and `η`, and their rewriting to the
//! left comb by associator and unitor cells.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::span::{canonical_iso, whisker, Evaluator, FinSet, SpanExpr, SpanMorphism};

use super::{PseudoError, Pseudomonoid};

/// A composite of `μ` and `η`: leaves are open inputs or `η` caps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Cap,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    /// `μ_n` as a tree: `η` for 0, a leaf for 1, `((o o) o) …` otherwise.
    pub fn left_comb(n: usize) -> Tree {
        match n {
            0 => Tree::Cap,
            1 => Tree::Leaf,
            _ => Tree::node(Tree::left_comb(n - 1), Tree::Leaf),
        }
    }

    pub fn right_comb(n: usize) -> Tree {
        match n {
            0 => Tree::Cap,
            1 => Tree::Leaf,
            _ => Tree::node(Tree::Leaf, Tree::right_comb(n - 1)),
        }
    }

    /// Open and capped leaves together.
    pub fn width(&self) -> usize {
        match self {
            Tree::Leaf | Tree::Cap => 1,
            Tree::Node(l, r) => l.width() + r.width(),
        }
    }

    pub fn open_leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Cap => 0,
            Tree::Node(l, r) => l.open_leaves() + r.open_leaves(),
        }
    }

    pub fn is_normal(&self) -> bool {
        *self == Tree::left_comb(self.open_leaves())
    }

    /// Every tree shape with exactly `width` uncapped leaves.
    pub fn all(width: usize) -> Vec<Tree> {
        match width {
            0 => Vec::new(),
            1 => vec![Tree::Leaf],
            _ => {
                let mut out = Vec::new();
                for k in 1..width {
                    for l in Tree::all(k) {
                        for r in Tree::all(width - k) {
                            out.push(Tree::node(l.clone(), r.clone()));
                        }
                    }
                }
                out
            }
        }
    }

    /// Every way of capping some leaves of `self`.
    pub fn cappings(&self) -> Vec<Tree> {
        match self {
            Tree::Leaf | Tree::Cap => vec![Tree::Leaf, Tree::Cap],
            Tree::Node(l, r) => {
                let rs = r.cappings();
                l.cappings()
                    .into_iter()
                    .flat_map(|a| rs.iter().map(move |b| Tree::node(a.clone(), b.clone())))
                    .collect()
            }
        }
    }

    /// Leaf `k` (counting caps) replaced by `t`.
    pub fn replace_leaf(&self, k: usize, t: Tree) -> Tree {
        match self {
            Tree::Leaf | Tree::Cap => t,
            Tree::Node(l, r) => {
                let w = l.width();
                if k < w {
                    Tree::node(l.replace_leaf(k, t), (**r).clone())
                } else {
                    Tree::node((**l).clone(), r.replace_leaf(k - w, t))
                }
            }
        }
    }

    pub fn at(&self, path: &[usize]) -> Option<&Tree> {
        let mut cur = self;
        for &s in path {
            cur = match (cur, s) {
                (Tree::Node(l, _), 0) => l,
                (Tree::Node(_, r), 1) => r,
                _ => return None,
            };
        }
        Some(cur)
    }

    fn replace_at(&self, path: &[usize], t: Tree) -> Tree {
        match (self, path.split_first()) {
            (_, None) => t,
            (Tree::Node(l, r), Some((&0, rest))) => Tree::node(l.replace_at(rest, t), (**r).clone()),
            (Tree::Node(l, r), Some((_, rest))) => Tree::node((**l).clone(), r.replace_at(rest, t)),
            _ => self.clone(),
        }
    }

    /// Number of leaves strictly left of the subtree at `path`.
    fn offset_of(&self, path: &[usize]) -> usize {
        let mut cur = self;
        let mut off = 0;
        for &s in path {
            if let Tree::Node(l, r) = cur {
                if s == 0 {
                    cur = l;
                } else {
                    off += l.width();
                    cur = r;
                }
            }
        }
        off
    }

    pub fn apply(&self, step: &Step) -> Option<Tree> {
        let u = self.at(&step.path)?;
        let rewritten = match (step.rule, u) {
            (Rule::Assoc, Tree::Node(ab, c)) => match &**ab {
                Tree::Node(a, b) => Tree::node((**a).clone(), Tree::node((**b).clone(), (**c).clone())),
                _ => return None,
            },
            (Rule::AssocInv, Tree::Node(a, bc)) => match &**bc {
                Tree::Node(b, c) => Tree::node(Tree::node((**a).clone(), (**b).clone()), (**c).clone()),
                _ => return None,
            },
            (Rule::LeftUnit, Tree::Node(e, t)) if **e == Tree::Cap => (**t).clone(),
            (Rule::RightUnit, Tree::Node(t, e)) if **e == Tree::Cap => (**t).clone(),
            _ => return None,
        };
        Some(self.replace_at(&step.path, rewritten))
    }

    /// Every step that moves `self` towards the left comb: unit removals
    /// and inverse associators, at any position.
    pub fn redexes(&self) -> Vec<Step> {
        fn walk(t: &Tree, path: &mut Vec<usize>, out: &mut Vec<Step>) {
            let Tree::Node(l, r) = t else { return };
            if **l == Tree::Cap {
                out.push(Step::new(path, Rule::LeftUnit));
            }
            if **r == Tree::Cap {
                out.push(Step::new(path, Rule::RightUnit));
            }
            if matches!(**r, Tree::Node(..)) {
                out.push(Step::new(path, Rule::AssocInv));
            }
            for (k, c) in [(0, l), (1, r)] {
                path.push(k);
                walk(c, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "o"),
            Tree::Cap => write!(f, "e"),
            Tree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl FromStr for Tree {
    type Err = PseudoError;

    /// Parses the `Display` form, e.g. `((o e) o)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        fn parse(t: &[char], pos: &mut usize) -> Option<Tree> {
            let c = *t.get(*pos)?;
            *pos += 1;
            match c {
                'o' => Some(Tree::Leaf),
                'e' => Some(Tree::Cap),
                '(' => {
                    let l = parse(t, pos)?;
                    let r = parse(t, pos)?;
                    (t.get(*pos) == Some(&')')).then(|| {
                        *pos += 1;
                        Tree::node(l, r)
                    })
                }
                _ => None,
            }
        }
        let mut pos = 0;
        match parse(&tokens, &mut pos) {
            Some(t) if pos == tokens.len() => Ok(t),
            _ => Err(PseudoError::BadTree(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `μ(μ(A, B), C) ⇒ μ(A, μ(B, C))`.
    Assoc,
    AssocInv,
    /// `μ(η, T) ⇒ T`.
    LeftUnit,
    /// `μ(T, η) ⇒ T`.
    RightUnit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub path: Vec<usize>,
    pub rule: Rule,
}

impl Step {
    pub fn new(path: &[usize], rule: Rule) -> Self {
        Self {
            path: path.to_vec(),
            rule,
        }
    }
}

/// Order in which redexes are rewritten on the way to the left comb. Caps
/// are always removed before any reassociation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    RightmostInnermost,
    LeftmostOutermost,
}

impl Strategy {
    pub fn next_step(self, t: &Tree) -> Option<Step> {
        let unit = |u: &Tree| match u {
            Tree::Node(l, r) => {
                let (left, right) = (**l == Tree::Cap, **r == Tree::Cap);
                match self {
                    Strategy::RightmostInnermost if right => Some(Rule::RightUnit),
                    _ if left => Some(Rule::LeftUnit),
                    _ if right => Some(Rule::RightUnit),
                    _ => None,
                }
            }
            _ => None,
        };
        let assoc = |u: &Tree| match u {
            Tree::Node(_, r) if matches!(**r, Tree::Node(..)) => Some(Rule::AssocInv),
            _ => None,
        };
        self.find(t, &mut Vec::new(), &unit)
            .or_else(|| self.find(t, &mut Vec::new(), &assoc))
    }

    fn find(self, t: &Tree, path: &mut Vec<usize>, redex: &dyn Fn(&Tree) -> Option<Rule>) -> Option<Step> {
        let Tree::Node(l, r) = t else {
            return None;
        };
        let here = |path: &Vec<usize>| redex(t).map(|rule| Step::new(path, rule));
        let child = |k: usize, c: &Tree, path: &mut Vec<usize>| {
            path.push(k);
            let found = self.find(c, path, redex);
            path.pop();
            found
        };
        match self {
            Strategy::RightmostInnermost => child(1, r, path)
                .or_else(|| child(0, l, path))
                .or_else(|| here(path)),
            Strategy::LeftmostOutermost => here(path)
                .or_else(|| child(0, l, path))
                .or_else(|| child(1, r, path)),
        }
    }
}

/// Turns trees into span expressions and rewrite steps into cells.
///
/// Each `μ` in a tree is tagged by the interval of leaves below it and each
/// `η` by its leaf position, so two expressions drawn from the same tree
/// share tags and are related by a canonical isomorphism.
pub struct Rewriter<'a> {
    p: &'a Pseudomonoid,
    pub(crate) ev: Evaluator,
    powers: Vec<Arc<FinSet>>,
    assoc_inv: Option<SpanMorphism>,
}

impl<'a> Rewriter<'a> {
    pub fn new(p: &'a Pseudomonoid) -> Self {
        Self {
            p,
            ev: Evaluator::new(),
            powers: vec![Arc::new(FinSet::point()), p.carrier.clone()],
            assoc_inv: None,
        }
    }

    pub fn mu(&self, lo: usize, hi: usize) -> SpanExpr {
        SpanExpr::gen(&format!("m{lo}-{hi}"), self.p.mu.clone())
    }

    pub fn eta(&self, k: usize) -> SpanExpr {
        SpanExpr::gen(&format!("e{k}"), self.p.eta.clone())
    }

    /// The identity on `X^k`.
    pub fn id(&mut self, k: usize) -> SpanExpr {
        while self.powers.len() <= k {
            let next = self.powers.last().expect("nonempty").product(&self.p.carrier).expect("words");
            self.powers.push(Arc::new(next));
        }
        SpanExpr::id(self.powers[k].clone())
    }

    pub fn expr(&mut self, t: &Tree) -> SpanExpr {
        self.expr_at(t, 0)
    }

    fn expr_at(&mut self, t: &Tree, off: usize) -> SpanExpr {
        match t {
            Tree::Leaf => self.id(1),
            Tree::Cap => self.eta(off),
            Tree::Node(l, r) => {
                let el = self.expr_at(l, off);
                let er = self.expr_at(r, off + l.width());
                el.times(er).then(self.mu(off, off + t.width() - 1))
            }
        }
    }

    /// `μ_m` applied to parts of the given widths, in the shape
    /// `μ_m = μ_{m-1} ∘ (μ × id_{X^{m-2}})`, tagged as the left comb.
    pub fn comb(&mut self, widths: &[usize], off: usize) -> SpanExpr {
        match widths {
            [] => self.eta(off),
            [_] => self.id(1),
            [a, b] => self.mu(off, off + a + b - 1),
            [a, b, rest @ ..] => {
                let first = self.mu(off, off + a + b - 1).times(self.id(rest.len()));
                let mut merged = vec![a + b];
                merged.extend_from_slice(rest);
                first.then(self.comb(&merged, off))
            }
        }
    }

    /// The expression of `μ_n`.
    pub fn nfold(&mut self, n: usize) -> SpanExpr {
        self.comb(&vec![1; n], 0)
    }

    /// `t` with the subtree at `path` replaced by `local`, and the path of
    /// `local` inside the result.
    fn embed(&mut self, t: &Tree, path: &[usize], off: usize, local: SpanExpr) -> (SpanExpr, Vec<usize>) {
        let (Some((&s, rest)), Tree::Node(l, r)) = (path.split_first(), t) else {
            return (local, Vec::new());
        };
        let tag = self.mu(off, off + t.width() - 1);
        let (e, mut p) = if s == 0 {
            let (el, p) = self.embed(l, rest, off, local);
            (el.times(self.expr_at(r, off + l.width())), p)
        } else {
            let el = self.expr_at(l, off);
            let (er, p) = self.embed(r, rest, off + l.width(), local);
            (el.times(er), p)
        };
        p.splice(0..0, [0, s]);
        (e.then(tag), p)
    }

    fn assoc_inverse(&mut self) -> Result<SpanMorphism, PseudoError> {
        if self.assoc_inv.is_none() {
            self.assoc_inv = Some(self.p.assoc.inverse()?);
        }
        Ok(self.assoc_inv.clone().expect("just set"))
    }

    /// The cell `expr(t) ⇒ expr(t')` for one rewrite step, with `t'`.
    pub fn step(&mut self, t: &Tree, step: &Step) -> Result<(Tree, SpanMorphism), PseudoError> {
        let t2 = t
            .apply(step)
            .ok_or_else(|| PseudoError::BadTree(format!("{:?} does not apply to {t} at {:?}", step.rule, step.path)))?;
        let u = t.at(&step.path).expect("step applied");
        let off = t.offset_of(&step.path);
        let w = u.width();
        let Tree::Node(l, r) = u else { unreachable!("redexes are nodes") };

        let (local, cell_path, cell, repl, local2) = match step.rule {
            Rule::Assoc | Rule::AssocInv => {
                let (a, b, c) = match (step.rule, &**l, &**r) {
                    (Rule::Assoc, Tree::Node(a, b), c) => (&**a, &**b, c),
                    (_, a, Tree::Node(b, c)) => (a, &**b, &**c),
                    _ => unreachable!("checked by apply"),
                };
                let (wa, wb) = (a.width(), b.width());
                let ea = self.expr_at(a, off);
                let eb = self.expr_at(b, off + wa);
                let ec = self.expr_at(c, off + wa + wb);
                let inputs = ea.times(eb).times(ec);
                let left_inner = self.mu(off, off + wa + wb - 1);
                let right_inner = self.mu(off + wa, off + w - 1);
                let root = self.mu(off, off + w - 1);
                let lhs = left_inner.times(self.id(1)).then(root.clone());
                let rhs = self.id(1).times(right_inner).then(root);
                let (src, dst, cell) = if step.rule == Rule::Assoc {
                    (lhs, rhs, self.p.assoc.clone())
                } else {
                    (rhs, lhs, self.assoc_inverse()?)
                };
                (inputs.clone().then(src), vec![1], cell, dst.clone(), inputs.then(dst))
            }
            Rule::LeftUnit | Rule::RightUnit => {
                let left = step.rule == Rule::LeftUnit;
                let (body, body_off, cap_off) = if left {
                    (&**r, off + 1, off)
                } else {
                    (&**l, off, off + l.width())
                };
                let eb = self.expr_at(body, body_off);
                let cap = self.eta(cap_off);
                let unit = if left {
                    cap.times(self.id(1))
                } else {
                    self.id(1).times(cap)
                };
                let src = unit.then(self.mu(off, off + w - 1));
                let cell = if left {
                    self.p.left_unitor.clone()
                } else {
                    self.p.right_unitor.clone()
                };
                let eb2 = self.expr_at(body, off);
                let id = self.id(1);
                (eb.then(src), vec![1], cell, id.clone(), eb2.then(id))
            }
        };

        let (form, mut path) = self.embed(t, &step.path, 0, local);
        path.extend(cell_path);
        let (form2, _) = self.embed(&t2, &step.path, 0, local2);
        let from = self.expr(t);
        let to = self.expr(&t2);
        let c1 = canonical_iso(&mut self.ev, &from, &form)?;
        let c2 = whisker(&mut self.ev, &form, &path, &cell, &repl)?;
        let c3 = canonical_iso(&mut self.ev, &form2, &to)?;
        Ok((t2, c1.then(&c2)?.then(&c3)?))
    }

    /// Runs a fixed list of steps from `t`.
    pub fn run(&mut self, t: &Tree, steps: &[Step]) -> Result<(Tree, SpanMorphism), PseudoError> {
        let start = self.expr(t);
        let mut cell = SpanMorphism::identity(self.ev.eval(&start)?);
        let mut cur = t.clone();
        for s in steps {
            let (next, c) = self.step(&cur, s)?;
            cell = cell.then(&c)?;
            cur = next;
        }
        Ok((cur, cell))
    }

    /// The steps `strategy` takes from `t` to the left comb.
    pub fn normalization_path(t: &Tree, strategy: Strategy) -> Vec<Step> {
        let mut steps = Vec::new();
        let mut cur = t.clone();
        while let Some(s) = strategy.next_step(&cur) {
            cur = cur.apply(&s).expect("strategies only return redexes");
            steps.push(s);
        }
        steps
    }

    /// `expr(t) ⇒ μ_n`.
    pub fn normalize(&mut self, t: &Tree, strategy: Strategy) -> Result<SpanMorphism, PseudoError> {
        let steps = Self::normalization_path(t, strategy);
        self.normalize_along(t, &steps)
    }

    /// `expr(t) ⇒ μ_n` through the given steps, which must end at the left
    /// comb.
    pub fn normalize_along(&mut self, t: &Tree, steps: &[Step]) -> Result<SpanMorphism, PseudoError> {
        let (normal, cell) = self.run(t, steps)?;
        if !normal.is_normal() {
            return Err(PseudoError::BadTree(format!("the steps stop at {normal}, not at a left comb")));
        }
        let from = self.expr(&normal);
        let to = self.nfold(normal.open_leaves());
        Ok(cell.then(&canonical_iso(&mut self.ev, &from, &to)?)?)
    }

    /// `expr(t1) ⇒ expr(t2)` through the left comb.
    pub fn coherence_cell(&mut self, t1: &Tree, t2: &Tree, strategy: Strategy) -> Result<SpanMorphism, PseudoError> {
        if t1.open_leaves() != t2.open_leaves() {
            return Err(PseudoError::BadTree(format!("{t1} and {t2} have different numbers of open leaves")));
        }
        let a = self.normalize(t1, strategy)?;
        let b = self.normalize(t2, strategy)?;
        Ok(a.then(&b.inverse()?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_parsing() {
        assert_eq!(Tree::all(4).len(), 5);
        assert_eq!(Tree::all(5).len(), 14);
        assert_eq!(Tree::left_comb(3).to_string(), "((o o) o)");
        let t: Tree = "((o e) (o o))".parse().unwrap();
        assert_eq!(t.open_leaves(), 3);
        assert_eq!(t.width(), 4);
        assert!("(o o".parse::<Tree>().is_err());
        assert_eq!(Tree::node(Tree::Leaf, Tree::Leaf).cappings().len(), 4);
    }

    #[test]
    fn strategies_reach_the_left_comb() {
        for n in 1..=5 {
            for t in Tree::all(n) {
                for c in t.cappings() {
                    for s in [Strategy::RightmostInnermost, Strategy::LeftmostOutermost] {
                        let mut cur = c.clone();
                        for step in Rewriter::normalization_path(&c, s) {
                            cur = cur.apply(&step).unwrap();
                        }
                        assert!(cur.is_normal(), "{c} -> {cur}");
                    }
                }
            }
        }
    }

    #[test]
    fn strategies_differ_on_four_leaves() {
        let t = Tree::right_comb(4);
        let a = Rewriter::normalization_path(&t, Strategy::RightmostInnermost);
        let b = Rewriter::normalization_path(&t, Strategy::LeftmostOutermost);
        assert_ne!(a, b);
    }
}
