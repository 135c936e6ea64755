use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::segal::check_isomorphism;
use crate::simplicial::SimplicialSet;
use crate::span::{canonical_iso, FiniteSpan, Provenance, SpanExpr, SpanMorphism, Value};

use super::{PseudoError, Pseudomonoid, Rewriter, Strategy, Tree};

fn component(span: &Arc<FiniteSpan>, second: bool) -> Arc<FiniteSpan> {
    match &span.provenance {
        Provenance::Composite { first, second: s } => if second { s } else { first }.clone(),
        Provenance::Product { left, right } => if second { right } else { left }.clone(),
        Provenance::Primitive => span.clone(),
    }
}

/// The map `X_n → X_m` obtained by passing through the canonical cell
/// `μ_n ⇒ expr(tree)`, rewriting to `form`, then projecting along `proj`.
fn structure_map(
    rw: &mut Rewriter,
    tree: &Tree,
    form: &SpanExpr,
    proj: &[bool],
    target: &Arc<FiniteSpan>,
) -> Result<Vec<usize>, PseudoError> {
    let to_tree = rw.normalize(tree, Strategy::RightmostInnermost)?.inverse()?;
    let from = rw.expr(tree);
    let cell: SpanMorphism = to_tree.then(&canonical_iso(&mut rw.ev, &from, form)?)?;
    let mut span = cell.to.clone();
    let mut table = cell.map.clone();
    for &second in proj {
        let p = span.projection(second)?;
        table = table.iter().map(|&y| p.apply(y)).collect();
        span = component(&span, second);
    }
    if span.apex != target.apex {
        return Err(PseudoError::BadTree(format!("projection from {tree} does not land in the expected level")));
    }
    Ok(table)
}

/// The simplicial set with `X_n` the apex of `μ_n`, faces and degeneracies
/// read off the canonical cells to the trees that isolate one `μ` or `η`.
pub fn to_simplicial(p: &Pseudomonoid, top: usize) -> Result<SimplicialSet, PseudoError> {
    let mut rw = Rewriter::new(p);
    let apexes = (0..=top)
        .map(|n| {
            let e = rw.nfold(n);
            rw.ev.eval(&e)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let levels: Vec<Vec<String>> = apexes
        .iter()
        .map(|s| s.apex.elements().iter().map(Value::to_string).collect())
        .collect();

    let mut faces = vec![Vec::new(); top + 1];
    for n in 1..=top {
        for i in 0..=n {
            let (tree, form, proj) = if i == 0 || i == n {
                let comb = Tree::left_comb(n - 1);
                let tree = if i == 0 {
                    Tree::node(Tree::Leaf, comb)
                } else {
                    Tree::node(comb, Tree::Leaf)
                };
                let root = rw.mu(0, tree.width() - 1);
                let ones = vec![1; n - 1];
                let inner = if i == 0 {
                    let c = rw.comb(&ones, 1);
                    rw.id(1).times(c)
                } else {
                    rw.comb(&ones, 0).times(rw.id(1))
                };
                (tree, inner.then(root), vec![false, i == 0])
            } else {
                let tree = Tree::left_comb(n - 1).replace_leaf(i - 1, Tree::node(Tree::Leaf, Tree::Leaf));
                let mut widths = vec![1; n - 1];
                widths[i - 1] = 2;
                let layer = rw.id(i - 1).times(rw.mu(i - 1, i)).times(rw.id(n - i - 1));
                (tree, layer.then(rw.comb(&widths, 0)), vec![true])
            };
            faces[n].push(structure_map(&mut rw, &tree, &form, &proj, &apexes[n - 1])?);
        }
    }

    let mut degeneracies = vec![Vec::new(); top];
    for n in 0..top {
        for i in 0..=n {
            let tree = Tree::left_comb(n + 1).replace_leaf(i, Tree::Cap);
            let layer = rw.id(i).times(rw.eta(i)).times(rw.id(n - i));
            let form = layer.then(rw.comb(&vec![1; n + 1], 0));
            degeneracies[n].push(structure_map(&mut rw, &tree, &form, &[true], &apexes[n + 1])?);
        }
    }
    Ok(SimplicialSet::new(levels, faces, degeneracies)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub holds: bool,
    pub failure: Option<String>,
    pub level_sizes: Vec<usize>,
    /// `maps[n][x]` is the image of `x ∈ X_n` in the rebuilt set.
    pub maps: Vec<Vec<usize>>,
}

impl RoundtripReport {
    pub fn to_json(&self) -> Json {
        json!({
            "holds": self.holds,
            "failure": self.failure,
            "level_sizes": self.level_sizes,
        })
    }
}

/// Rebuilds `S` through its pseudomonoid and checks the result against
/// `S` with the bijection sending `ω ∈ X_n` to
/// `<<ω|012, [e_3 ω, …, e_n ω]>, image of d_1 ω>`.
pub fn roundtrip_isomorphic(s: &SimplicialSet) -> Result<RoundtripReport, PseudoError> {
    let p = Pseudomonoid::from_2segal(s)?;
    let t = to_simplicial(&p, s.top())?;
    let mut values: Vec<Vec<Value>> = Vec::with_capacity(s.top() + 1);
    for n in 0..=s.top() {
        let level = s.level(n);
        let row = match n {
            0 | 2 => level.iter().map(|l| Value::atom(l)).collect(),
            1 => level.iter().map(|l| Value::word(&[l])).collect(),
            _ => {
                let front = s.induced_map(&[0, 1, 2], n)?;
                let edges = (3..=n).map(|k| s.vertebra(n, k)).collect::<Result<Vec<_>, _>>()?;
                (0..level.len())
                    .map(|x| {
                        let word: Vec<&str> = edges.iter().map(|e| s.level(1)[e.apply(x)].as_str()).collect();
                        Value::pair(
                            Value::pair(Value::atom(&s.level(2)[front.apply(x)]), Value::word(&word)),
                            values[n - 1][s.face(n, 1, x)].clone(),
                        )
                    })
                    .collect()
            }
        };
        values.push(row);
    }
    let mut maps = Vec::with_capacity(values.len());
    let mut failure = None;
    for (n, row) in values.iter().enumerate() {
        let mut m = Vec::with_capacity(row.len());
        for v in row {
            match t.find(n, &v.to_string()) {
                Some(y) => m.push(y),
                None => {
                    failure.get_or_insert_with(|| format!("level {n}: {v} has no counterpart"));
                    m.push(usize::MAX);
                }
            }
        }
        maps.push(m);
    }
    if failure.is_none() {
        if let Err(e) = check_isomorphism(s, &t, &maps) {
            failure = Some(e.to_string());
        }
    }
    Ok(RoundtripReport {
        holds: failure.is_none(),
        failure,
        level_sizes: t.level_sizes(),
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cyclic_group, nerve, point, powerset_cover_set, truncated_monoid};
    use crate::segal::check_2segal;

    #[test]
    fn rebuilt_sizes() {
        let p = Pseudomonoid::from_2segal(&nerve(&cyclic_group(2), 3).unwrap()).unwrap();
        let t = to_simplicial(&p, 3).unwrap();
        assert_eq!(t.level_sizes(), vec![1, 2, 4, 8]);
        assert!(t.validate_identities().violations.is_empty());
        let q = Pseudomonoid::from_2segal(&nerve(&truncated_monoid(3), 3).unwrap()).unwrap();
        assert_eq!(to_simplicial(&q, 3).unwrap().level_sizes(), vec![1, 4, 10, 20]);
        let one = to_simplicial(&Pseudomonoid::from_2segal(&point(3)).unwrap(), 3).unwrap();
        assert_eq!(one.level_sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn round_trips() {
        for s in [
            nerve(&cyclic_group(2), 4).unwrap(),
            nerve(&truncated_monoid(3), 4).unwrap(),
            powerset_cover_set(2, 4).unwrap(),
        ] {
            let r = roundtrip_isomorphic(&s).unwrap();
            assert!(r.holds, "{r:?}");
            let p = Pseudomonoid::from_2segal(&s).unwrap();
            assert!(check_2segal(&to_simplicial(&p, 4).unwrap()).unwrap().holds());
        }
    }
}
