//! Maps derived from the face and degeneracy tables: induced maps of
//! monotone maps of ordinals, vertex/vertebra/long-edge maps, the spine,
//! interval and polygon subdivision maps, and the fiber products they land in.

use std::collections::HashMap;
use std::fmt;

use super::{SimplicialError, SimplicialSet};

/// Name and size of a finite set that a map reads from or writes to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDesc {
    pub name: String,
    pub size: usize,
}

impl SetDesc {
    pub fn new(name: impl Into<String>, size: usize) -> Self {
        Self {
            name: name.into(),
            size,
        }
    }

    pub fn level(s: &SimplicialSet, n: usize) -> Self {
        Self::new(format!("X_{n}"), s.level_size(n))
    }
}

impl fmt::Display for SetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.size)
    }
}

/// A total map between finite sets given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMap {
    pub source: SetDesc,
    pub target: SetDesc,
    pub table: Vec<usize>,
}

impl FiniteMap {
    pub fn new(source: SetDesc, target: SetDesc, table: Vec<usize>) -> Self {
        debug_assert_eq!(source.size, table.len());
        debug_assert!(table.iter().all(|&t| t < target.size));
        Self {
            source,
            target,
            table,
        }
    }

    pub fn identity(set: SetDesc) -> Self {
        let table = (0..set.size).collect();
        Self::new(set.clone(), set, table)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FiniteMap) -> FiniteMap {
        let table = self.table.iter().map(|&x| other.table[x]).collect();
        FiniteMap::new(self.source.clone(), other.target.clone(), table)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size == self.target.size && self.is_injective()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size];
        self.table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }
}

/// Equality constraint `left_map(t[left]) == right_map(t[right])` on the
/// components of a tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub left: usize,
    pub left_map: Vec<usize>,
    pub right: usize,
    pub right_map: Vec<usize>,
}

/// An iterated fiber product of level sets, enumerated in lexicographic
/// order of component indices.
#[derive(Clone, Debug)]
pub struct FiberProductSet {
    factors: Vec<SetDesc>,
    constraints: Vec<Constraint>,
    elements: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl PartialEq for FiberProductSet {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.elements == other.elements
    }
}

impl FiberProductSet {
    pub fn new(factors: Vec<SetDesc>, constraints: Vec<Constraint>) -> Self {
        let k = factors.len();
        // For each factor, the constraints tying it to an earlier factor,
        // with a preimage index on the later side.
        let mut back: Vec<Vec<(usize, &Constraint, HashMap<usize, Vec<usize>>)>> =
            (0..k).map(|_| Vec::new()).collect();
        for c in &constraints {
            let (early, late, late_map) = if c.left < c.right {
                (c.left, c.right, &c.right_map)
            } else {
                (c.right, c.left, &c.left_map)
            };
            let mut pre: HashMap<usize, Vec<usize>> = HashMap::new();
            for (x, &b) in late_map.iter().enumerate() {
                pre.entry(b).or_default().push(x);
            }
            back[late].push((early, c, pre));
        }

        let mut elements = Vec::new();
        let mut current = Vec::with_capacity(k);
        fn value(c: &Constraint, factor: usize, x: usize) -> usize {
            if c.left == factor {
                c.left_map[x]
            } else {
                c.right_map[x]
            }
        }
        fn descend(
            factors: &[SetDesc],
            back: &[Vec<(usize, &Constraint, HashMap<usize, Vec<usize>>)>],
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let pos = current.len();
            if pos == factors.len() {
                out.push(current.clone());
                return;
            }
            let all: Vec<usize>;
            let candidates: &[usize] = match back[pos].first() {
                Some((early, c, pre)) => {
                    let b = value(c, *early, current[*early]);
                    pre.get(&b).map(Vec::as_slice).unwrap_or(&[])
                }
                None => {
                    all = (0..factors[pos].size).collect();
                    &all
                }
            };
            for &x in candidates {
                let ok = back[pos]
                    .iter()
                    .skip(1)
                    .all(|(early, c, _)| value(c, *early, current[*early]) == value(c, pos, x));
                if ok {
                    current.push(x);
                    descend(factors, back, current, out);
                    current.pop();
                }
            }
        }
        descend(&factors, &back, &mut current, &mut elements);
        drop(back);

        let lookup = elements
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Self {
            factors,
            constraints,
            elements,
            lookup,
        }
    }

    /// `X_{k_1} ×_{X_0} ... ×_{X_0} X_{k_l}` glued last vertex to first vertex.
    pub fn over_vertices(s: &SimplicialSet, levels: &[usize]) -> Result<Self, SimplicialError> {
        let mut factors = Vec::new();
        let mut constraints = Vec::new();
        for (k, &lvl) in levels.iter().enumerate() {
            s.check_level(lvl)?;
            factors.push(SetDesc::level(s, lvl));
            if k > 0 {
                let prev = levels[k - 1];
                constraints.push(Constraint {
                    left: k - 1,
                    left_map: induced_map(s, &[prev], prev)?.table,
                    right: k,
                    right_map: induced_map(s, &[0], lvl)?.table,
                });
            }
        }
        Ok(Self::new(factors, constraints))
    }

    pub fn factors(&self) -> &[SetDesc] {
        &self.factors
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn tuple(&self, index: usize) -> &[usize] {
        &self.elements[index]
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.lookup.get(tuple).copied()
    }

    pub fn desc(&self) -> SetDesc {
        let name = self
            .factors
            .iter()
            .map(|f| f.name.as_str())
            .collect::<Vec<_>>()
            .join(" x ");
        SetDesc::new(name, self.len())
    }
}

/// An element of a fiber product whose preimage count is not one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub preimages: Vec<usize>,
}

/// A map from a level set into a fiber product.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberMap {
    pub source: SetDesc,
    pub target: FiberProductSet,
    pub table: Vec<usize>,
}

impl FiberMap {
    /// Builds the map from its component functions. Fails if some image
    /// tuple violates a constraint of the target.
    pub fn from_components(
        name: &str,
        source: SetDesc,
        target: FiberProductSet,
        components: &[FiniteMap],
    ) -> Result<Self, SimplicialError> {
        let mut table = Vec::with_capacity(source.size);
        for x in 0..source.size {
            let tuple: Vec<usize> = components.iter().map(|m| m.apply(x)).collect();
            let idx = target
                .index_of(&tuple)
                .ok_or_else(|| SimplicialError::InternalInconsistency {
                    map: name.to_string(),
                    level: 0,
                    element: x,
                })?;
            table.push(idx);
        }
        Ok(Self {
            source,
            target,
            table,
        })
    }

    pub fn image(&self, x: usize) -> &[usize] {
        self.target.tuple(self.table[x])
    }

    pub fn as_finite_map(&self) -> FiniteMap {
        FiniteMap::new(self.source.clone(), self.target.desc(), self.table.clone())
    }

    pub fn preimages(&self) -> Vec<Vec<usize>> {
        let mut pre = vec![Vec::new(); self.target.len()];
        for (x, &t) in self.table.iter().enumerate() {
            pre[t].push(x);
        }
        pre
    }

    pub fn is_bijective(&self) -> bool {
        self.preimages().iter().all(|p| p.len() == 1)
    }

    pub fn is_injective(&self) -> bool {
        self.preimages().iter().all(|p| p.len() <= 1)
    }

    /// Number of target elements that are hit.
    pub fn image_size(&self) -> usize {
        self.preimages().iter().filter(|p| !p.is_empty()).count()
    }

    /// First target element, in tuple order, with a preimage count other
    /// than one.
    pub fn bijectivity_witness(&self) -> Option<Witness> {
        self.preimages()
            .into_iter()
            .enumerate()
            .find(|(_, p)| p.len() != 1)
            .map(|(t, preimages)| Witness {
                tuple: self.target.tuple(t).to_vec(),
                preimages,
            })
    }

    /// Target element with the most preimages, if any has two or more.
    /// Ties go to the first in tuple order.
    pub fn largest_collision(&self) -> Option<Witness> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (t, p) in self.preimages().into_iter().enumerate() {
            if p.len() >= 2 && best.as_ref().map_or(true, |(_, b)| p.len() > b.len()) {
                best = Some((t, p));
            }
        }
        best.map(|(t, preimages)| Witness {
            tuple: self.target.tuple(t).to_vec(),
            preimages,
        })
    }
}

/// Which chain of face maps realizes the injective part of a monotone map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factorization {
    /// Remove missing vertices from the largest down.
    Descending,
    /// Remove missing vertices from the smallest up, shifting indices.
    Ascending,
}

fn check_monotone(f: &[usize], n: usize) -> Result<(), SimplicialError> {
    if f.is_empty() {
        return Err(SimplicialError::BadArguments("empty monotone map".into()));
    }
    if f.windows(2).any(|w| w[0] > w[1]) || f.iter().any(|&v| v > n) {
        return Err(SimplicialError::BadArguments(format!(
            "{f:?} is not a monotone map into [{n}]"
        )));
    }
    Ok(())
}

/// The map `X_n -> X_m` induced by the monotone map `f : [m] -> [n]`
/// (given as its list of values), using one specific factorization.
pub fn induced_map_with(
    s: &SimplicialSet,
    f: &[usize],
    n: usize,
    order: Factorization,
) -> Result<FiniteMap, SimplicialError> {
    check_monotone(f, n)?;
    s.check_level(n)?;
    let m = f.len() - 1;
    s.check_level(m)?;

    let mut image: Vec<usize> = f.to_vec();
    image.dedup();
    let k = image.len() - 1;
    let missing: Vec<usize> = (0..=n).filter(|v| !image.contains(v)).collect();
    let collapses: Vec<usize> = (0..m).filter(|&p| f[p] == f[p + 1]).collect();

    // (level the map applies at, face or degeneracy, index)
    let mut steps: Vec<(bool, usize, usize)> = Vec::new();
    let mut level = n;
    match order {
        Factorization::Descending => {
            for &j in missing.iter().rev() {
                steps.push((true, level, j));
                level -= 1;
            }
        }
        Factorization::Ascending => {
            for (r, &j) in missing.iter().enumerate() {
                steps.push((true, level, j - r));
                level -= 1;
            }
        }
    }
    debug_assert_eq!(level, k);
    match order {
        Factorization::Descending => {
            for &p in &collapses {
                steps.push((false, level, p));
                level += 1;
            }
        }
        Factorization::Ascending => {
            for (t, &p) in collapses.iter().enumerate().rev() {
                steps.push((false, level, p - t));
                level += 1;
            }
        }
    }
    debug_assert_eq!(level, m);

    let table = (0..s.level_size(n))
        .map(|x| {
            steps.iter().fold(x, |y, &(face, lvl, i)| {
                if face {
                    s.face(lvl, i, y)
                } else {
                    s.degeneracy(lvl, i, y)
                }
            })
        })
        .collect();
    Ok(FiniteMap::new(SetDesc::level(s, n), SetDesc::level(s, m), table))
}

/// The map induced by `f : [m] -> [n]`, computed by two factorizations that
/// must agree.
pub fn induced_map(s: &SimplicialSet, f: &[usize], n: usize) -> Result<FiniteMap, SimplicialError> {
    let a = induced_map_with(s, f, n, Factorization::Descending)?;
    let b = induced_map_with(s, f, n, Factorization::Ascending)?;
    if let Some(x) = (0..a.table.len()).find(|&x| a.table[x] != b.table[x]) {
        return Err(SimplicialError::InternalInconsistency {
            map: format!("{f:?} into [{n}]"),
            level: n,
            element: x,
        });
    }
    Ok(a)
}

/// Vertex maps `v_i`, vertebrae `e_i` and the long edge `e_out` at level `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedMaps {
    pub vertex: Vec<FiniteMap>,
    /// `vertebra[k]` is `e_{k+1}`.
    pub vertebra: Vec<FiniteMap>,
    pub long_edge: FiniteMap,
}

impl SimplicialSet {
    pub fn induced_map(&self, f: &[usize], n: usize) -> Result<FiniteMap, SimplicialError> {
        induced_map(self, f, n)
    }

    pub fn derived_maps(&self, n: usize) -> Result<DerivedMaps, SimplicialError> {
        self.check_level(n)?;
        let vertex = (0..=n)
            .map(|i| induced_map(self, &[i], n))
            .collect::<Result<_, _>>()?;
        let vertebra = (1..=n)
            .map(|i| induced_map(self, &[i - 1, i], n))
            .collect::<Result<_, _>>()?;
        let long_edge = self.long_edge(n)?;
        Ok(DerivedMaps {
            vertex,
            vertebra,
            long_edge,
        })
    }

    pub fn vertex_map(&self, n: usize, i: usize) -> Result<FiniteMap, SimplicialError> {
        induced_map(self, &[i], n)
    }

    pub fn vertebra(&self, n: usize, i: usize) -> Result<FiniteMap, SimplicialError> {
        if i == 0 || i > n {
            return Err(SimplicialError::BadArguments(format!("vertebra e_{i} at level {n}")));
        }
        induced_map(self, &[i - 1, i], n)
    }

    pub fn long_edge(&self, n: usize) -> Result<FiniteMap, SimplicialError> {
        induced_map(self, &[0, n], n)
    }

    /// `T_n : X_n -> X_1 ×_{X_0} ... ×_{X_0} X_1`.
    pub fn spine_map(&self, n: usize) -> Result<FiberMap, SimplicialError> {
        if n == 0 {
            return Err(SimplicialError::BadArguments("spine map needs n >= 1".into()));
        }
        self.check_level(n)?;
        let target = FiberProductSet::over_vertices(self, &vec![1; n])?;
        let comps = (1..=n)
            .map(|i| self.vertebra(n, i))
            .collect::<Result<Vec<_>, _>>()?;
        FiberMap::from_components(&format!("T_{n}"), SetDesc::level(self, n), target, &comps)
    }

    /// `ω ↦ (Q̂_i ω, P̂_i ω) ∈ X_i ×_{X_0} X_{n-i}`.
    pub fn interval_map(&self, n: usize, i: usize) -> Result<FiberMap, SimplicialError> {
        if i > n {
            return Err(SimplicialError::BadArguments(format!("interval map i={i} > n={n}")));
        }
        self.check_level(n)?;
        let target = FiberProductSet::over_vertices(self, &[i, n - i])?;
        let q: Vec<usize> = (0..=i).collect();
        let p: Vec<usize> = (i..=n).collect();
        let comps = [induced_map(self, &q, n)?, induced_map(self, &p, n)?];
        FiberMap::from_components(
            &format!("interval {n},{i}"),
            SetDesc::level(self, n),
            target,
            &comps,
        )
    }

    /// Monotone maps `(P_ij, Q_ij)` cutting the polygon along the diagonal
    /// from vertex `i` to vertex `j`.
    pub fn subdivision_vertices(n: usize, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
        let p: Vec<usize> = (i..=j).collect();
        let q: Vec<usize> = (0..=i).chain(j..=n).collect();
        (p, q)
    }

    /// `ω ↦ (P̂_ij ω, Q̂_ij ω) ∈ X_{j-i} ×_{X_1} X_{n+i-j+1}` with
    /// `e_out` of the first factor matched against `e_{i+1}` of the second.
    pub fn polygon_subdivision_map(&self, n: usize, i: usize, j: usize) -> Result<FiberMap, SimplicialError> {
        if !(i <= j && j <= n) {
            return Err(SimplicialError::BadArguments(format!(
                "subdivision needs 0 <= i <= j <= n, got n={n} i={i} j={j}"
            )));
        }
        self.check_level(n)?;
        let a = j - i;
        let b = n + i + 1 - j;
        self.check_level(b)?;
        let target = FiberProductSet::new(
            vec![SetDesc::level(self, a), SetDesc::level(self, b)],
            vec![Constraint {
                left: 0,
                left_map: self.long_edge(a)?.table,
                right: 1,
                right_map: self.vertebra(b, i + 1)?.table,
            }],
        );
        let (p, q) = Self::subdivision_vertices(n, i, j);
        let comps = [induced_map(self, &p, n)?, induced_map(self, &q, n)?];
        FiberMap::from_components(
            &format!("subdivision {n},{i},{j}"),
            SetDesc::level(self, n),
            target,
            &comps,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cyclic_group, nerve, truncated_monoid};

    fn zmod2() -> SimplicialSet {
        nerve(&cyclic_group(2), 4).unwrap()
    }

    fn l3() -> SimplicialSet {
        nerve(&truncated_monoid(3), 4).unwrap()
    }

    fn idx(s: &SimplicialSet, n: usize, label: &str) -> usize {
        s.find(n, label).unwrap_or_else(|| panic!("{label} not in X_{n}: {:?}", s.level(n)))
    }

    #[test]
    fn both_factorizations_of_v1_in_level3_match_face_words() {
        let s = zmod2();
        let v = s.vertex_map(3, 1).unwrap();
        for x in 0..s.level_size(3) {
            let a = s.face(1, 0, s.face(2, 2, s.face(3, 3, x)));
            let b = s.face(1, 1, s.face(2, 1, s.face(3, 0, x)));
            assert_eq!(v.apply(x), a);
            assert_eq!(v.apply(x), b);
        }
    }

    #[test]
    fn long_edge_low_levels() {
        let s = l3();
        let e1 = s.long_edge(1).unwrap();
        assert_eq!(e1, FiniteMap::identity(SetDesc::level(&s, 1)));
        let e0 = s.long_edge(0).unwrap();
        assert_eq!(e0.table, s.degeneracy_table(0, 0));
    }

    #[test]
    fn zmod2_derived_maps_on_gg() {
        let s = zmod2();
        let gg = idx(&s, 2, "(g,g)");
        let d = s.derived_maps(2).unwrap();
        let g = idx(&s, 1, "g");
        let e = idx(&s, 1, "e");
        assert_eq!(d.vertebra[0].apply(gg), g);
        assert_eq!(d.vertebra[1].apply(gg), g);
        assert_eq!(d.long_edge.apply(gg), e);
        assert_eq!(d.long_edge.apply(gg), s.face(2, 1, gg));
    }

    #[test]
    fn spine_of_l3_hits_ten_of_sixteen() {
        let s = l3();
        let t = s.spine_map(2).unwrap();
        assert_eq!(t.target.len(), 16);
        assert!(t.is_injective());
        assert_eq!(t.image_size(), 10);
        for x in 0..s.level_size(2) {
            let img = t.image(x);
            let i = img[0];
            let j = img[1];
            assert!(i + j <= 3, "x^{i}, x^{j}");
        }
    }

    #[test]
    fn spine_of_zmod2_is_bijective() {
        let s = zmod2();
        assert!(s.spine_map(2).unwrap().is_bijective());
        let t1 = s.spine_map(1).unwrap();
        assert!(t1.is_bijective());
        assert!(t1.table.iter().enumerate().all(|(x, &t)| t1.target.tuple(t) == [x]));
    }

    #[test]
    fn interval_maps() {
        let s = zmod2();
        for n in 0..=3 {
            let i0 = s.interval_map(n, 0).unwrap();
            let v0 = s.vertex_map(n, 0).unwrap();
            let vn = s.vertex_map(n, n).unwrap();
            let inn = s.interval_map(n, n).unwrap();
            for x in 0..s.level_size(n) {
                assert_eq!(i0.image(x), [v0.apply(x), x]);
                assert_eq!(inn.image(x), [x, vn.apply(x)]);
            }
        }
        let gg = idx(&s, 2, "(g,g)");
        let g = idx(&s, 1, "g");
        assert_eq!(s.interval_map(2, 1).unwrap().image(gg), [g, g]);
    }

    #[test]
    fn degenerate_subdivisions_follow_explicit_formulas() {
        let s = l3();
        for n in 1..=3 {
            let e_out = s.long_edge(n).unwrap();
            let whole = s.polygon_subdivision_map(n, 0, n).unwrap();
            for x in 0..s.level_size(n) {
                assert_eq!(whole.image(x), [x, e_out.apply(x)]);
            }
            for i in 0..n {
                let m = s.polygon_subdivision_map(n, i, i + 1).unwrap();
                let e = s.vertebra(n, i + 1).unwrap();
                for x in 0..s.level_size(n) {
                    assert_eq!(m.image(x), [e.apply(x), x]);
                }
            }
            for i in 0..=n {
                let m = s.polygon_subdivision_map(n, i, i).unwrap();
                let v = s.vertex_map(n, i).unwrap();
                for x in 0..s.level_size(n) {
                    assert_eq!(m.image(x), [v.apply(x), s.degeneracy(n, i, x)]);
                }
            }
        }
    }

    #[test]
    fn l3_subdivision_on_xxx() {
        let s = l3();
        let m = s.polygon_subdivision_map(3, 1, 3).unwrap();
        let w = idx(&s, 3, "(x,x,x)");
        let img = m.image(w);
        assert_eq!(img, [idx(&s, 2, "(x,x)"), idx(&s, 2, "(x,x^2)")]);
    }

    #[test]
    fn bad_arguments_are_rejected() {
        let s = l3();
        assert!(s.polygon_subdivision_map(3, 2, 1).is_err());
        assert!(s.interval_map(2, 3).is_err());
        assert!(s.spine_map(5).is_err());
        assert!(induced_map(&s, &[1, 0], 2).is_err());
    }

    #[test]
    fn corrupted_table_is_caught_by_factorization_check() {
        let mut s = nerve(&crate::generators::chain_poset(3), 3).unwrap();
        let size = s.level_size(2);
        let shifted: Vec<usize> = s.face_table(3, 0).iter().map(|&v| (v + 1) % size).collect();
        s.faces_mut()[3][0] = shifted;
        let err = s.vertex_map(3, 1).unwrap_err();
        assert!(matches!(err, SimplicialError::InternalInconsistency { .. }));
    }
}
