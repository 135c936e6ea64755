//! Example categories, partial categories and simplicial sets.

use crate::category::{CategoryError, Morphism, PartialCategory};
use crate::simplicial::{SimplicialError, SimplicialSet};

fn one_object_monoid(
    names: Vec<String>,
    unit: usize,
    mul: impl Fn(usize, usize) -> Option<usize>,
) -> PartialCategory {
    let morphisms = names
        .into_iter()
        .map(|name| Morphism { name, src: 0, tgt: 0 })
        .collect::<Vec<_>>();
    let n = morphisms.len();
    let mut comps = Vec::new();
    for f in 0..n {
        for g in 0..n {
            if let Some(h) = mul(f, g) {
                comps.push((g, f, h));
            }
        }
    }
    PartialCategory::new(vec!["*".into()], morphisms, comps, vec![unit])
        .expect("one-object generators satisfy the axioms")
}

/// The simplicial set with one element at every level.
pub fn point(top: usize) -> SimplicialSet {
    SimplicialSet::from_elements(vec![vec![()]; top + 1], |_, _| "*".into(), |_, _, _| (), |_, _, _| ())
        .expect("constant tables are well formed")
}

/// `Z/k` as a one-object category with morphisms `e, g, g^2, ...`.
pub fn cyclic_group(k: usize) -> PartialCategory {
    assert!(k >= 1);
    let names = (0..k)
        .map(|a| match a {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{a}"),
        })
        .collect();
    one_object_monoid(names, 0, |f, g| Some((f + g) % k))
}

/// The symmetric group on three letters, morphisms named by one-line
/// notation; `g ∘ f` is the composite function `x ↦ g(f(x))`.
pub fn symmetric_group3() -> PartialCategory {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let names = perms
        .iter()
        .map(|p| p.iter().map(|&x| char::from(b'1' + x as u8)).collect())
        .collect();
    let lookup = perms.clone();
    one_object_monoid(names, 0, move |f, g| {
        let comp = [0, 1, 2].map(|x| lookup[g][lookup[f][x]]);
        lookup.iter().position(|p| *p == comp)
    })
}

/// `{1, x, ..., x^L}` with `x^i ∘ x^j = x^{i+j}` when `i + j <= L`.
pub fn truncated_monoid(l: usize) -> PartialCategory {
    assert!(l >= 1);
    let names = (0..=l)
        .map(|a| match a {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{a}"),
        })
        .collect();
    one_object_monoid(names, 0, |f, g| (f + g <= l).then_some(f + g))
}

fn subset_label(mask: u32, ground: &[String]) -> String {
    let items: Vec<&str> = ground
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, s)| s.as_str())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Subsets of `ground` under disjoint union.
pub fn disjoint_union_monoid(ground: &[String]) -> PartialCategory {
    assert!(ground.len() < 16);
    let count = 1u32 << ground.len();
    let names = (0..count).map(|m| subset_label(m, ground)).collect();
    one_object_monoid(names, 0, |f, g| {
        let (f, g) = (f as u32, g as u32);
        (f & g == 0).then_some((f | g) as usize)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    /// `(name, source, target)` by vertex index.
    pub edges: Vec<(String, usize, usize)>,
}

/// Identities `id_v` followed by the edges; only composites with an
/// identity are defined.
pub fn quiver_partial_category(q: &Quiver) -> Result<PartialCategory, CategoryError> {
    let nv = q.vertices.len();
    let mut morphisms: Vec<Morphism> = q
        .vertices
        .iter()
        .enumerate()
        .map(|(v, name)| Morphism {
            name: format!("id_{name}"),
            src: v,
            tgt: v,
        })
        .collect();
    for (name, s, t) in &q.edges {
        if *s >= nv || *t >= nv {
            return Err(CategoryError::Unknown {
                kind: "vertex of edge",
                name: name.clone(),
            });
        }
        morphisms.push(Morphism {
            name: name.clone(),
            src: *s,
            tgt: *t,
        });
    }
    let mut comps = Vec::new();
    for (f, m) in morphisms.iter().enumerate() {
        comps.push((m.tgt, f, f));
        if f >= nv {
            comps.push((f, m.src, f));
        }
    }
    PartialCategory::new(q.vertices.clone(), morphisms, comps, (0..nv).collect())
}

/// The category of a finite poset. `leq(a, b)` is checked for reflexivity,
/// antisymmetry and transitivity.
pub fn poset_category(
    elements: &[String],
    leq: impl Fn(usize, usize) -> bool,
) -> Result<PartialCategory, CategoryError> {
    let n = elements.len();
    for a in 0..n {
        if !leq(a, a) {
            return Err(CategoryError::NotAPoset(format!("{} <= {} fails", elements[a], elements[a])));
        }
        for b in 0..n {
            if a != b && leq(a, b) && leq(b, a) {
                return Err(CategoryError::NotAPoset(format!(
                    "{} and {} are distinct but comparable both ways",
                    elements[a], elements[b]
                )));
            }
            for c in 0..n {
                if leq(a, b) && leq(b, c) && !leq(a, c) {
                    return Err(CategoryError::NotAPoset(format!(
                        "{} <= {} <= {} but not {} <= {}",
                        elements[a], elements[b], elements[c], elements[a], elements[c]
                    )));
                }
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut index = vec![vec![None; n]; n];
    for a in 0..n {
        for b in 0..n {
            if leq(a, b) {
                index[a][b] = Some(morphisms.len());
                morphisms.push(Morphism {
                    name: format!("{}->{}", elements[a], elements[b]),
                    src: a,
                    tgt: b,
                });
            }
        }
    }
    let mut comps = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if let (Some(f), Some(g), Some(h)) = (index[a][b], index[b][c], index[a][c]) {
                    comps.push((g, f, h));
                }
            }
        }
    }
    let ids = (0..n).map(|a| index[a][a].expect("reflexive")).collect();
    PartialCategory::new(elements.to_vec(), morphisms, comps, ids)
}

/// `0 < 1 < ... < k-1`.
pub fn chain_poset(k: usize) -> PartialCategory {
    let elements: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    poset_category(&elements, |a, b| a <= b).expect("a chain is a poset")
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Divisors of `n` ordered by divisibility.
pub fn divisor_poset(n: u64) -> PartialCategory {
    let ds = divisors(n);
    let elements: Vec<String> = ds.iter().map(u64::to_string).collect();
    poset_category(&elements, |a, b| ds[b] % ds[a] == 0).expect("divisibility is a partial order")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum NerveElement {
    Object(usize),
    Chain(Vec<usize>),
}

/// The nerve truncated at level `top`: objects, then fully composable
/// chains `(f_1, ..., f_n)` in lexicographic order of morphism indices.
pub fn nerve(c: &PartialCategory, top: usize) -> Result<SimplicialSet, SimplicialError> {
    if top < 2 {
        return Err(SimplicialError::TruncationTooLow(top));
    }
    let nm = c.morphisms().len();
    let mut levels: Vec<Vec<NerveElement>> = vec![(0..c.objects().len()).map(NerveElement::Object).collect()];
    // chains at the current level with their total composite
    let mut chains: Vec<(Vec<usize>, usize)> = (0..nm).map(|f| (vec![f], f)).collect();
    for _ in 1..=top {
        levels.push(chains.iter().map(|(ch, _)| NerveElement::Chain(ch.clone())).collect());
        let mut next = Vec::new();
        for (ch, total) in &chains {
            for f in 0..nm {
                if let Some(t) = c.compose(*total, f) {
                    let mut ext = ch.clone();
                    ext.push(f);
                    next.push((ext, t));
                }
            }
        }
        chains = next;
    }

    let label = |_: usize, e: &NerveElement| match e {
        NerveElement::Object(x) => c.objects()[*x].clone(),
        NerveElement::Chain(ch) if ch.len() == 1 => c.morphism(ch[0]).name.clone(),
        NerveElement::Chain(ch) => {
            let names: Vec<&str> = ch.iter().map(|&f| c.morphism(f).name.as_str()).collect();
            format!("({})", names.join(","))
        }
    };
    let face = |n: usize, i: usize, e: &NerveElement| {
        let NerveElement::Chain(ch) = e else { unreachable!() };
        if n == 1 {
            let m = c.morphism(ch[0]);
            return NerveElement::Object(if i == 0 { m.tgt } else { m.src });
        }
        let mut out = ch.clone();
        if i == 0 {
            out.remove(0);
        } else if i == n {
            out.pop();
        } else {
            let comp = c
                .compose(ch[i - 1], ch[i])
                .expect("inner composites of a composable chain are defined");
            out.splice(i - 1..=i, [comp]);
        }
        NerveElement::Chain(out)
    };
    let degeneracy = |_: usize, i: usize, e: &NerveElement| match e {
        NerveElement::Object(x) => NerveElement::Chain(vec![c.identity(*x)]),
        NerveElement::Chain(ch) => {
            let vertex = if i == 0 {
                c.morphism(ch[0]).src
            } else {
                c.morphism(ch[i - 1]).tgt
            };
            let mut out = ch.clone();
            out.insert(i, c.identity(vertex));
            NerveElement::Chain(out)
        }
    };
    SimplicialSet::from_elements(levels, label, face, degeneracy)
}

fn all_subsets_label(mask: u32, size: usize) -> String {
    let items: Vec<String> = (0..size)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Tuples `(B_0, ..., B_n)` of subsets of `{1..a}` whose union is the whole
/// set. Faces merge neighbours, with `d_n` merging the last block into the
/// first; degeneracies insert the empty set.
pub fn powerset_cover_set(a: usize, top: usize) -> Result<SimplicialSet, SimplicialError> {
    if a > 4 {
        return Err(SimplicialError::BadArguments(format!("|A| = {a} is above the supported 4")));
    }
    let full: u32 = (1 << a) - 1;
    let mut levels: Vec<Vec<Vec<u32>>> = Vec::new();
    for n in 0..=top {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n + 1];
        fn rec(pos: usize, cur: &mut Vec<u32>, full: u32, out: &mut Vec<Vec<u32>>) {
            if pos == cur.len() {
                if cur.iter().fold(0, |acc, b| acc | b) == full {
                    out.push(cur.clone());
                }
                return;
            }
            for b in 0..=full {
                cur[pos] = b;
                rec(pos + 1, cur, full, out);
            }
        }
        rec(0, &mut cur, full, &mut out);
        levels.push(out);
    }
    SimplicialSet::from_elements(
        levels,
        |_, t| {
            let parts: Vec<String> = t.iter().map(|&b| all_subsets_label(b, a)).collect();
            format!("({})", parts.join(","))
        },
        |n, i, t| {
            let mut out = t.clone();
            if i < n {
                out[i] |= out[i + 1];
                out.remove(i + 1);
            } else {
                out[0] |= out[n];
                out.pop();
            }
            out
        },
        |_, i, t| {
            let mut out = t.clone();
            out.insert(i + 1, 0);
            out
        },
    )
}

/// `(m; S_1, ..., S_n)` with `m <= max_m` and `S_1, ..., S_n` an ordered
/// partition of `{1..m}` into possibly empty blocks. Stored as `m` and the
/// block number (1-based) of each element.
pub fn exponential_set(max_m: usize, top: usize) -> Result<SimplicialSet, SimplicialError> {
    let mut levels: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
    for n in 0..=top {
        let mut out = Vec::new();
        for m in 0..=max_m {
            if n == 0 {
                if m == 0 {
                    out.push((0, vec![]));
                }
                continue;
            }
            // base-n counting with the first element most significant
            let count = n.pow(m as u32);
            for code in 0..count {
                let mut blocks = vec![0usize; m];
                let mut c = code;
                for slot in blocks.iter_mut().rev() {
                    *slot = c % n + 1;
                    c /= n;
                }
                out.push((m, blocks));
            }
        }
        levels.push(out);
    }
    SimplicialSet::from_elements(
        levels,
        |n, (m, blocks)| {
            if n == 0 {
                return format!("({m})");
            }
            let parts: Vec<String> = (1..=n)
                .map(|b| {
                    let items: Vec<String> = blocks
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k == b)
                        .map(|(e, _)| (e + 1).to_string())
                        .collect();
                    format!("{{{}}}", items.join(","))
                })
                .collect();
            format!("({m};{})", parts.join("|"))
        },
        |n, i, (_, blocks)| {
            let out: Vec<usize> = if i == 0 {
                blocks.iter().filter(|&&k| k != 1).map(|&k| k - 1).collect()
            } else if i == n {
                blocks.iter().copied().filter(|&k| k != n).collect()
            } else {
                blocks.iter().map(|&k| if k > i { k - 1 } else { k }).collect()
            };
            (out.len(), out)
        },
        |_, i, (m, blocks)| (*m, blocks.iter().map(|&k| if k > i { k + 1 } else { k }).collect()),
    )
}

/// The largest simplicial subset of `s` none of whose `k`-simplex faces
/// lies in `excluded` (indices into `X_k`).
pub fn avoiding(s: &SimplicialSet, k: usize, excluded: &[usize]) -> Result<SimplicialSet, SimplicialError> {
    s.check_level(k)?;
    let mut levels: Vec<Vec<(usize, usize)>> = Vec::new();
    for n in 0..=s.top() {
        let mut maps = Vec::new();
        if n >= k {
            for subset in combinations(n + 1, k + 1) {
                maps.push(s.induced_map(&subset, n)?);
            }
        }
        let kept = (0..s.level_size(n))
            .filter(|&x| maps.iter().all(|m| !excluded.contains(&m.apply(x))))
            .map(|x| (n, x))
            .collect();
        levels.push(kept);
    }
    SimplicialSet::from_elements(
        levels,
        |_, &(n, x)| s.level(n)[x].clone(),
        |_, i, &(n, x)| (n - 1, s.face(n, i, x)),
        |_, i, &(n, x)| (n + 1, s.degeneracy(n, i, x)),
    )
}

/// Increasing `r`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nerve_level_counts() {
        let z2 = nerve(&cyclic_group(2), 2).unwrap();
        assert_eq!(z2.level_sizes(), vec![1, 2, 4]);
        let chain = nerve(&chain_poset(3), 2).unwrap();
        assert_eq!(chain.level_sizes(), vec![3, 6, 10]);
        let l3 = nerve(&truncated_monoid(3), 3).unwrap();
        assert_eq!(l3.level_sizes()[2..], [10, 20]);
    }

    #[test]
    fn truncated_monoid_composition() {
        let l1 = truncated_monoid(1);
        assert_eq!(l1.morphisms().len(), 2);
        assert_eq!(l1.compose(1, 1), None);
        let l3 = truncated_monoid(3);
        let x = l3.find_morphism("x").unwrap();
        let x2 = l3.find_morphism("x^2").unwrap();
        assert_eq!(l3.compose(x2, x), l3.find_morphism("x^3"));
        assert_eq!(l3.compose(x2, x2), None);
    }

    #[test]
    fn disjoint_union() {
        let one = disjoint_union_monoid(&["1".into()]);
        let e = one.find_morphism("{}").unwrap();
        let s = one.find_morphism("{1}").unwrap();
        assert_eq!(one.compose(e, s), Some(s));
        assert_eq!(one.compose(s, s), None);
        let two = disjoint_union_monoid(&["1".into(), "2".into()]);
        let a = two.find_morphism("{1}").unwrap();
        let b = two.find_morphism("{2}").unwrap();
        assert_eq!(two.compose(b, a), two.find_morphism("{1,2}"));
    }

    #[test]
    fn quivers() {
        let point = quiver_partial_category(&Quiver {
            vertices: vec!["v".into()],
            edges: vec![],
        })
        .unwrap();
        assert_eq!(point.morphisms().len(), 1);
        assert!(point.is_total());

        let arrow = quiver_partial_category(&Quiver {
            vertices: vec!["a".into(), "b".into()],
            edges: vec![("f".into(), 0, 1)],
        })
        .unwrap();
        assert_eq!(arrow.morphisms().len(), 3);
        assert_eq!(arrow.composites().count(), 4);

        let lp = quiver_partial_category(&Quiver {
            vertices: vec!["v".into()],
            edges: vec![("e".into(), 0, 0)],
        })
        .unwrap();
        let e = lp.find_morphism("e").unwrap();
        assert_eq!(lp.compose(e, e), None);
        let n = nerve(&lp, 3).unwrap();
        // 1-skeletal: every 2-simplex is degenerate
        assert_eq!(n.level_sizes(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn posets() {
        assert_eq!(divisor_poset(12).objects().len(), 6);
        let anti = poset_category(&["a".into(), "b".into()], |a, b| a == b).unwrap();
        assert_eq!(anti.morphisms().len(), 2);
        assert_eq!(chain_poset(2).morphisms().len(), 3);
        let bad = poset_category(&["a".into(), "b".into()], |_, _| true);
        assert!(matches!(bad, Err(CategoryError::NotAPoset(_))));
    }

    #[test]
    fn powerset_levels() {
        assert!(powerset_cover_set(0, 3).unwrap().level_sizes().iter().all(|&s| s == 1));
        assert_eq!(powerset_cover_set(1, 2).unwrap().level_size(1), 3);
        assert_eq!(powerset_cover_set(2, 2).unwrap().level_size(1), 9);
    }

    #[test]
    fn exponential_levels() {
        let e = exponential_set(2, 3).unwrap();
        assert_eq!(e.level(0), ["(0)"]);
        assert_eq!(e.level(1), ["(0;{})", "(1;{1})", "(2;{1,2})"]);
        assert_eq!(e.level_size(2), 7);
        assert!(e.find(2, "(2;{1}|{2})").is_some());
    }

    #[test]
    fn avoiding_removes_cofaces() {
        let z2 = nerve(&cyclic_group(2), 4).unwrap();
        let ggg = z2.find(3, "(g,g,g)").unwrap();
        let punctured = avoiding(&z2, 3, &[ggg]).unwrap();
        assert_eq!(punctured.level_sizes()[..3], [1, 2, 4]);
        assert_eq!(punctured.level_size(3), 7);
        assert!(punctured.find(4, "(g,g,g,e)").is_none());
        assert!(punctured.validate_identities().is_clean());
    }

    #[test]
    fn generators_satisfy_identities() {
        let sets = [
            nerve(&cyclic_group(3), 4).unwrap(),
            nerve(&symmetric_group3(), 3).unwrap(),
            nerve(&divisor_poset(12), 3).unwrap(),
            powerset_cover_set(2, 4).unwrap(),
            exponential_set(3, 4).unwrap(),
        ];
        for s in &sets {
            let r = s.validate_identities();
            assert!(r.is_clean(), "{:?}", r.violations.first());
        }
    }
}
