//! Segal and 2-Segal conditions, unitality, the partial-category criterion,
//! and recovery of a partial category from its nerve.
//!
//! All checks are exhaustive over the stored levels, so a verdict of `true`
//! certifies the condition only up to the truncation degree.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::category::{CategoryError, Morphism, PartialCategory};
use crate::generators::nerve;
use crate::simplicial::{
    Constraint, FiberMap, FiberProductSet, SetDesc, SimplicialError, SimplicialSet, Witness,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SegalError {
    #[error("not 2-Segal: {0}")]
    NotTwoSegal(Failure),
    #[error("T_2 is not injective: {0}")]
    NotInjective(Failure),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error("extracted data is not a partial category: {0}")]
    Category(#[from] CategoryError),
}

/// A map that should be a bijection, and the target element showing it is
/// not.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub map: String,
    pub witness: Witness,
    pub rendered: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} has {} preimages over {}",
            self.map,
            self.witness.preimages.len(),
            self.rendered
        )
    }
}

fn render_tuple(s: &SimplicialSet, target: &FiberProductSet, tuple: &[usize]) -> String {
    let parts: Vec<String> = tuple
        .iter()
        .zip(target.factors())
        .map(|(&x, f)| {
            let level: usize = f.name.trim_start_matches("X_").parse().unwrap_or(0);
            s.level(level)[x].clone()
        })
        .collect();
    format!("({})", parts.join(", "))
}

fn failure(s: &SimplicialSet, name: String, map: &FiberMap, witness: Witness) -> Failure {
    let rendered = render_tuple(s, &map.target, &witness.tuple);
    Failure {
        map: name,
        witness,
        rendered,
    }
}

fn witness_json(s: &SimplicialSet, source_level: usize, f: &Failure) -> Value {
    json!({
        "map": f.map,
        "target": f.rendered,
        "preimages": f.witness.preimages.iter().map(|&x| s.level(source_level)[x].clone()).collect::<Vec<_>>(),
    })
}

/// Running conjunction of per-level verdicts.
fn cumulative(v: &BTreeMap<usize, bool>) -> BTreeMap<usize, bool> {
    let mut acc = true;
    v.iter()
        .map(|(&n, &b)| {
            acc &= b;
            (n, acc)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegalReport {
    pub top: usize,
    /// Spine map bijective at level `n`.
    pub spine: BTreeMap<usize, bool>,
    pub witnesses: BTreeMap<usize, Failure>,
    /// Every interval map at level `n` bijective.
    pub interval: BTreeMap<usize, bool>,
    pub interval_witnesses: BTreeMap<usize, Failure>,
    /// Whether the two conditions, taken over all levels up to `n`, agree.
    pub agreement: BTreeMap<usize, bool>,
}

impl SegalReport {
    pub fn holds(&self) -> bool {
        self.spine.values().all(|&b| b)
    }

    pub fn agrees(&self) -> bool {
        self.agreement.values().all(|&b| b)
    }

    pub fn to_json(&self, s: &SimplicialSet) -> Value {
        let keyed = |m: &BTreeMap<usize, bool>| -> BTreeMap<String, bool> {
            m.iter().map(|(n, b)| (n.to_string(), *b)).collect()
        };
        let wit = |m: &BTreeMap<usize, Failure>| -> BTreeMap<String, Value> {
            m.iter().map(|(n, f)| (n.to_string(), witness_json(s, *n, f))).collect()
        };
        json!({
            "checked_up_to": self.top,
            "holds": self.holds(),
            "segal": keyed(&self.spine),
            "witnesses": wit(&self.witnesses),
            "interval": keyed(&self.interval),
            "interval_witnesses": wit(&self.interval_witnesses),
            "agreement": keyed(&self.agreement),
        })
    }
}

/// Spine bijectivity per level, with the interval-map formulation
/// evaluated alongside.
pub fn check_segal(s: &SimplicialSet) -> Result<SegalReport, SegalError> {
    let mut spine = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    let mut interval = BTreeMap::new();
    let mut interval_witnesses = BTreeMap::new();
    for n in 1..=s.top() {
        let t = s.spine_map(n)?;
        let w = t.bijectivity_witness();
        spine.insert(n, w.is_none());
        if let Some(w) = w {
            witnesses.insert(n, failure(s, format!("T_{n}"), &t, w));
        }
        let mut ok = true;
        for i in 0..=n {
            let m = s.interval_map(n, i)?;
            if let Some(w) = m.bijectivity_witness() {
                ok = false;
                interval_witnesses
                    .entry(n)
                    .or_insert_with(|| failure(s, format!("interval {n},{i}"), &m, w));
            }
        }
        interval.insert(n, ok);
    }
    let a = cumulative(&spine);
    let b = cumulative(&interval);
    let agreement = a.iter().map(|(&n, &x)| (n, x == b[&n])).collect();
    Ok(SegalReport {
        top: s.top(),
        spine,
        witnesses,
        interval,
        interval_witnesses,
        agreement,
    })
}

/// Triangles `(a, b, c)` with `a < b < c`.
pub type Triangle = [usize; 3];

/// All triangulations of the convex polygon with vertices `0..=n`.
pub fn triangulations(n: usize) -> Vec<Vec<Triangle>> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<Triangle>> {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in lo + 1..hi {
            for left in rec(lo, k) {
                for right in rec(k, hi) {
                    let mut t = vec![[lo, k, hi]];
                    t.extend(left.iter().copied());
                    t.extend(right.iter().copied());
                    out.push(t);
                }
            }
        }
        out
    }
    if n < 2 {
        return vec![Vec::new()];
    }
    rec(0, n)
}

fn edge_face(t: &Triangle, edge: (usize, usize)) -> Option<usize> {
    match edge {
        e if e == (t[0], t[1]) => Some(2),
        e if e == (t[1], t[2]) => Some(0),
        e if e == (t[0], t[2]) => Some(1),
        _ => None,
    }
}

/// `X_n -> X_2 ×_{X_1} ... ×_{X_1} X_2`, one factor per triangle, glued
/// along shared diagonals.
pub fn triangulation_map(s: &SimplicialSet, n: usize, tri: &[Triangle]) -> Result<FiberMap, SegalError> {
    let d = |i: usize| s.face_table(2, i).to_vec();
    let mut constraints = Vec::new();
    for (a, ta) in tri.iter().enumerate() {
        for (b, tb) in tri.iter().enumerate().skip(a + 1) {
            for edge in [(ta[0], ta[1]), (ta[1], ta[2]), (ta[0], ta[2])] {
                if let (Some(fa), Some(fb)) = (edge_face(ta, edge), edge_face(tb, edge)) {
                    constraints.push(Constraint {
                        left: a,
                        left_map: d(fa),
                        right: b,
                        right_map: d(fb),
                    });
                }
            }
        }
    }
    let target = FiberProductSet::new(vec![SetDesc::level(s, 2); tri.len()], constraints);
    let comps = tri
        .iter()
        .map(|t| s.induced_map(t, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiberMap::from_components(
        &format!("triangulation {}", render_triangulation(tri)),
        SetDesc::level(s, n),
        target,
        &comps,
    )?)
}

pub fn render_triangulation(tri: &[Triangle]) -> String {
    let parts: Vec<String> = tri.iter().map(|t| format!("{}{}{}", t[0], t[1], t[2])).collect();
    format!("[{}]", parts.join(" "))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionVerdict {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub failure: Option<Failure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriangulationVerdict {
    pub n: usize,
    pub triangles: Vec<Triangle>,
    pub failure: Option<Failure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoSegalReport {
    pub top: usize,
    pub subdivisions: Vec<SubdivisionVerdict>,
    pub triangulations: Vec<TriangulationVerdict>,
    /// All subdivision maps at level `n` bijective.
    pub condition1: BTreeMap<usize, bool>,
    /// All triangulation maps at level `n` bijective.
    pub condition3: BTreeMap<usize, bool>,
    /// Whether the two conditions, taken over all levels up to `n`, agree.
    pub agreement: BTreeMap<usize, bool>,
}

impl TwoSegalReport {
    pub fn holds(&self) -> bool {
        self.condition1.values().all(|&b| b) && self.condition3.values().all(|&b| b)
    }

    pub fn agrees(&self) -> bool {
        self.agreement.values().all(|&b| b)
    }

    /// The first failing subdivision, in `(n, i, j)` order.
    pub fn first_failure(&self) -> Option<&Failure> {
        self.subdivisions
            .iter()
            .find_map(|v| v.failure.as_ref())
            .or_else(|| self.triangulations.iter().find_map(|v| v.failure.as_ref()))
    }

    pub fn to_json(&self, s: &SimplicialSet) -> Value {
        let keyed = |m: &BTreeMap<usize, bool>| -> BTreeMap<String, bool> {
            m.iter().map(|(n, b)| (n.to_string(), *b)).collect()
        };
        let subdivisions: BTreeMap<String, bool> = self
            .subdivisions
            .iter()
            .map(|v| (format!("{},{},{}", v.n, v.i, v.j), v.failure.is_none()))
            .collect();
        let mut triangulations: BTreeMap<String, BTreeMap<String, bool>> = BTreeMap::new();
        for v in &self.triangulations {
            triangulations
                .entry(v.n.to_string())
                .or_default()
                .insert(render_triangulation(&v.triangles), v.failure.is_none());
        }
        let mut witnesses = BTreeMap::new();
        for v in &self.subdivisions {
            if let Some(f) = &v.failure {
                witnesses.insert(format!("{},{},{}", v.n, v.i, v.j), witness_json(s, v.n, f));
            }
        }
        for v in &self.triangulations {
            if let Some(f) = &v.failure {
                witnesses.insert(render_triangulation(&v.triangles), witness_json(s, v.n, f));
            }
        }
        json!({
            "checked_up_to": self.top,
            "holds": self.holds(),
            "condition1": keyed(&self.condition1),
            "condition3": keyed(&self.condition3),
            "agreement": keyed(&self.agreement),
            "subdivisions": subdivisions,
            "triangulations": triangulations,
            "witnesses": witnesses,
        })
    }
}

/// Subdivision maps for all `0 <= i < j <= n` and triangulation maps for
/// every triangulation of the `(n+1)`-gon, for `1 <= n <= N`.
pub fn check_2segal(s: &SimplicialSet) -> Result<TwoSegalReport, SegalError> {
    let mut subdivisions = Vec::new();
    let mut tris = Vec::new();
    let mut condition1 = BTreeMap::new();
    let mut condition3 = BTreeMap::new();
    for n in 1..=s.top() {
        let mut ok1 = true;
        for i in 0..n {
            for j in i + 1..=n {
                let m = s.polygon_subdivision_map(n, i, j)?;
                let failure = m
                    .bijectivity_witness()
                    .map(|w| failure(s, format!("subdivision {n},{i},{j}"), &m, w));
                ok1 &= failure.is_none();
                subdivisions.push(SubdivisionVerdict { n, i, j, failure });
            }
        }
        condition1.insert(n, ok1);

        let mut ok3 = true;
        if n >= 2 {
            for t in triangulations(n) {
                let m = triangulation_map(s, n, &t)?;
                let failure = m
                    .bijectivity_witness()
                    .map(|w| failure(s, format!("triangulation {} of level {n}", render_triangulation(&t)), &m, w));
                ok3 &= failure.is_none();
                tris.push(TriangulationVerdict {
                    n,
                    triangles: t,
                    failure,
                });
            }
        }
        condition3.insert(n, ok3);
    }
    let a = cumulative(&condition1);
    let b = cumulative(&condition3);
    let agreement = a.iter().map(|(&n, &x)| (n, x == b[&n])).collect();
    Ok(TwoSegalReport {
        top: s.top(),
        subdivisions,
        triangulations: tris,
        condition1,
        condition3,
        agreement,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitalityReport {
    pub top: usize,
    /// Level `n` verdict covers every `0 <= i <= n`.
    pub verdicts: BTreeMap<usize, bool>,
    pub witnesses: BTreeMap<usize, Failure>,
}

impl UnitalityReport {
    pub fn holds(&self) -> bool {
        self.verdicts.values().all(|&b| b)
    }

    pub fn to_json(&self, s: &SimplicialSet) -> Value {
        json!({
            "checked_up_to": self.top - 1,
            "holds": self.holds(),
            "unital": self.verdicts.iter().map(|(n, b)| (n.to_string(), *b)).collect::<BTreeMap<_, _>>(),
            "witnesses": self.witnesses.iter().map(|(n, f)| (n.to_string(), witness_json(s, *n, f))).collect::<BTreeMap<_, _>>(),
        })
    }
}

/// The comparison map `X_n -> X_0 ×_{X_1} X_{n+1}`, `ω ↦ (v_i ω, s_i ω)`,
/// into the pullback of `s_0` and `e_{i+1}`.
pub fn unitality_map(s: &SimplicialSet, n: usize, i: usize) -> Result<FiberMap, SegalError> {
    let pullback = FiberProductSet::new(
        vec![SetDesc::level(s, 0), SetDesc::level(s, n + 1)],
        vec![Constraint {
            left: 0,
            left_map: s.degeneracy_table(0, 0).to_vec(),
            right: 1,
            right_map: s.vertebra(n + 1, i + 1)?.table,
        }],
    );
    let degeneracy = crate::simplicial::FiniteMap::new(
        SetDesc::level(s, n),
        SetDesc::level(s, n + 1),
        s.degeneracy_table(n, i).to_vec(),
    );
    let comps = [s.vertex_map(n, i)?, degeneracy];
    Ok(FiberMap::from_components(
        &format!("unit square {n},{i}"),
        SetDesc::level(s, n),
        pullback,
        &comps,
    )?)
}

/// Whether each degeneracy square is a pullback, for `0 <= n <= N-1`.
pub fn check_unitality(s: &SimplicialSet) -> Result<UnitalityReport, SegalError> {
    let mut verdicts = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for n in 0..s.top() {
        let mut ok = true;
        for i in 0..=n {
            let m = unitality_map(s, n, i)?;
            if let Some(w) = m.bijectivity_witness() {
                ok = false;
                witnesses
                    .entry(n)
                    .or_insert_with(|| failure(s, format!("unit square {n},{i}"), &m, w));
            }
        }
        verdicts.insert(n, ok);
    }
    Ok(UnitalityReport {
        top: s.top(),
        verdicts,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub injective: bool,
    /// Two distinct 2-simplices with the same spine, taken from the largest
    /// fiber.
    pub witness: Option<(usize, usize)>,
    pub fiber: Option<Failure>,
}

impl CriterionReport {
    pub fn to_json(&self, s: &SimplicialSet) -> Value {
        json!({
            "injective": self.injective,
            "witness": self.witness.map(|(a, b)| vec![s.level(2)[a].clone(), s.level(2)[b].clone()]),
            "fiber": self.fiber.as_ref().map(|f| witness_json(s, 2, f)),
        })
    }
}

fn require_2segal(s: &SimplicialSet) -> Result<(), SegalError> {
    let r = check_2segal(s)?;
    match r.first_failure() {
        Some(f) => Err(SegalError::NotTwoSegal(f.clone())),
        None => Ok(()),
    }
}

/// `T_2` injective, decided on a 2-Segal set.
pub fn check_partial_category_criterion(s: &SimplicialSet) -> Result<CriterionReport, SegalError> {
    require_2segal(s)?;
    let t = s.spine_map(2)?;
    Ok(match t.largest_collision() {
        None => CriterionReport {
            injective: true,
            witness: None,
            fiber: None,
        },
        Some(w) => CriterionReport {
            injective: false,
            witness: Some((w.preimages[0], w.preimages[1])),
            fiber: Some(failure(s, "T_2".into(), &t, w)),
        },
    })
}

/// Objects `X_0`, morphisms `X_1` from `d_1` to `d_0`, composites read off
/// `X_2` through `T_2`, identities `s_0`.
pub fn extract_category(s: &SimplicialSet) -> Result<PartialCategory, SegalError> {
    require_2segal(s)?;
    let t = s.spine_map(2)?;
    if let Some(w) = t.largest_collision() {
        return Err(SegalError::NotInjective(failure(s, "T_2".into(), &t, w)));
    }
    let objects = s.level(0).to_vec();
    let morphisms = (0..s.level_size(1))
        .map(|f| Morphism {
            name: s.level(1)[f].clone(),
            src: s.face(1, 1, f),
            tgt: s.face(1, 0, f),
        })
        .collect();
    let compositions = (0..s.level_size(2))
        .map(|w| {
            let spine = t.image(w);
            (spine[1], spine[0], s.face(2, 1, w))
        })
        .collect();
    let identities = (0..s.level_size(0)).map(|x| s.degeneracy(0, 0, x)).collect();
    Ok(PartialCategory::new(objects, morphisms, compositions, identities)?)
}

/// Where two simplicial sets fail to be isomorphic through given maps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoFailure {
    #[error("level {level}: sizes {source_size} and {target_size} differ")]
    Size {
        level: usize,
        source_size: usize,
        target_size: usize,
    },
    #[error("level {level}: map is not a bijection")]
    NotBijective { level: usize },
    #[error("{kind} {n},{i} does not commute on element {element}")]
    NotNatural {
        kind: &'static str,
        n: usize,
        i: usize,
        element: String,
    },
    #[error("truncations differ: {0} vs {1}")]
    Truncation(usize, usize),
}

/// Checks that `maps[n] : S_n -> T_n` are bijections commuting with every
/// face and degeneracy table.
pub fn check_isomorphism(s: &SimplicialSet, t: &SimplicialSet, maps: &[Vec<usize>]) -> Result<(), IsoFailure> {
    if s.top() != t.top() || maps.len() != s.top() + 1 {
        return Err(IsoFailure::Truncation(s.top(), t.top()));
    }
    for (n, m) in maps.iter().enumerate() {
        if s.level_size(n) != t.level_size(n) || m.len() != s.level_size(n) {
            return Err(IsoFailure::Size {
                level: n,
                source_size: s.level_size(n),
                target_size: t.level_size(n),
            });
        }
        let mut seen = vec![false; m.len()];
        for &y in m {
            if y >= seen.len() || std::mem::replace(&mut seen[y], true) {
                return Err(IsoFailure::NotBijective { level: n });
            }
        }
    }
    for n in 1..=s.top() {
        for i in 0..=n {
            for x in 0..s.level_size(n) {
                if maps[n - 1][s.face(n, i, x)] != t.face(n, i, maps[n][x]) {
                    return Err(IsoFailure::NotNatural {
                        kind: "face",
                        n,
                        i,
                        element: s.level(n)[x].clone(),
                    });
                }
            }
        }
    }
    for n in 0..s.top() {
        for i in 0..=n {
            for x in 0..s.level_size(n) {
                if maps[n + 1][s.degeneracy(n, i, x)] != t.degeneracy(n, i, maps[n][x]) {
                    return Err(IsoFailure::NotNatural {
                        kind: "degeneracy",
                        n,
                        i,
                        element: s.level(n)[x].clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Re-nerves the extracted partial category and matches simplices by their
/// spines. Returns the level-wise bijections after checking them.
pub fn category_roundtrip(s: &SimplicialSet) -> Result<Result<Vec<Vec<usize>>, IsoFailure>, SegalError> {
    let c = extract_category(s)?;
    let rebuilt = nerve(&c, s.top())?;
    let mut maps = vec![(0..s.level_size(0)).collect::<Vec<_>>()];
    for n in 1..=s.top() {
        let ts = s.spine_map(n)?;
        let tr = rebuilt.spine_map(n)?;
        // both spines land in the same fiber product since X_0, X_1 agree
        let mut by_spine = vec![None; tr.target.len()];
        for y in 0..rebuilt.level_size(n) {
            by_spine[tr.table[y]] = Some(y);
        }
        let mut m = Vec::with_capacity(s.level_size(n));
        for x in 0..s.level_size(n) {
            match by_spine[ts.table[x]] {
                Some(y) => m.push(y),
                None => return Ok(Err(IsoFailure::NotBijective { level: n })),
            }
        }
        maps.push(m);
    }
    Ok(check_isomorphism(s, &rebuilt, &maps).map(|_| maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (2..=7).map(|n| triangulations(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
        for t in triangulations(5) {
            assert_eq!(t.len(), 4);
        }
    }

    #[test]
    fn segal_verdicts() {
        let chain = nerve(&chain_poset(3), 4).unwrap();
        let r = check_segal(&chain).unwrap();
        assert!(r.holds() && r.agrees());
        assert!(check_segal(&point(4)).unwrap().holds());

        let l3 = nerve(&truncated_monoid(3), 4).unwrap();
        let r = check_segal(&l3).unwrap();
        assert!(!r.holds());
        assert!(r.agrees());
        assert_eq!(r.spine[&1], true);
        assert_eq!(r.spine[&2], false);
        let w = &r.witnesses[&2];
        assert!(w.witness.preimages.is_empty());
        assert_eq!(s_count(&l3.spine_map(2).unwrap()), (10, 16));
    }

    fn s_count(m: &FiberMap) -> (usize, usize) {
        (m.image_size(), m.target.len())
    }

    #[test]
    fn two_segal_examples() {
        for s in [
            nerve(&truncated_monoid(3), 4).unwrap(),
            powerset_cover_set(2, 4).unwrap(),
            nerve(
                &quiver_partial_category(&Quiver {
                    vertices: vec!["v".into()],
                    edges: vec![("e".into(), 0, 0)],
                })
                .unwrap(),
                4,
            )
            .unwrap(),
        ] {
            let r = check_2segal(&s).unwrap();
            assert!(r.holds(), "{:?}", r.first_failure());
            assert!(r.agrees());
            assert_eq!(r.triangulations.iter().filter(|t| t.n == 4).count(), 5);
        }
    }

    #[test]
    fn unitality() {
        assert!(check_unitality(&point(3)).unwrap().holds());
        assert!(check_unitality(&nerve(&cyclic_group(2), 4).unwrap()).unwrap().holds());
    }

    #[test]
    fn unit_square_matches_degenerate_subdivision() {
        let s = powerset_cover_set(1, 3).unwrap();
        for n in 0..3 {
            for i in 0..=n {
                let a = unitality_map(&s, n, i).unwrap();
                let b = s.polygon_subdivision_map(n, i, i).unwrap();
                assert_eq!(a.table, b.table);
                assert_eq!(a.target.elements(), b.target.elements());
            }
        }
    }

    #[test]
    fn partial_category_criterion() {
        let p = powerset_cover_set(2, 4).unwrap();
        let r = check_partial_category_criterion(&p).unwrap();
        assert!(!r.injective);
        let (a, b) = r.witness.unwrap();
        assert_eq!(p.level(2)[a], "({},{1,2},{1,2})");
        assert_eq!(p.level(2)[b], "({1},{1,2},{1,2})");
        assert_eq!(r.fiber.unwrap().witness.preimages.len(), 4);

        let l3 = nerve(&truncated_monoid(3), 4).unwrap();
        assert!(check_partial_category_criterion(&l3).unwrap().injective);

        // 1 o 1 has two preimages: {1}|{2} and {2}|{1}
        let e = exponential_set(2, 4).unwrap();
        let r = check_partial_category_criterion(&e).unwrap();
        assert!(!r.injective);
    }

    #[test]
    fn extraction_recovers_categories() {
        let chain = chain_poset(3);
        let got = extract_category(&nerve(&chain, 4).unwrap()).unwrap();
        assert_eq!(got, chain);
        let z2 = cyclic_group(2);
        let got = extract_category(&nerve(&z2, 4).unwrap()).unwrap();
        assert_eq!(got, z2);
        assert!(got.is_total());
        let l3 = truncated_monoid(3);
        let got = extract_category(&nerve(&l3, 4).unwrap()).unwrap();
        assert_eq!(got, l3);
        assert!(!got.is_total());
    }

    #[test]
    fn extraction_rejects_collisions() {
        let p = powerset_cover_set(2, 3).unwrap();
        assert!(matches!(extract_category(&p), Err(SegalError::NotInjective(_))));
    }

    #[test]
    fn roundtrip_through_category() {
        let s = nerve(&divisor_poset(12), 3).unwrap();
        let maps = category_roundtrip(&s).unwrap().unwrap();
        assert_eq!(maps.len(), 4);
    }

    #[test]
    fn isomorphism_checker_catches_non_natural_maps() {
        let s = nerve(&cyclic_group(2), 2).unwrap();
        let mut maps: Vec<Vec<usize>> = (0..=2).map(|n| (0..s.level_size(n)).collect()).collect();
        assert!(check_isomorphism(&s, &s, &maps).is_ok());
        maps[1] = vec![1, 0];
        assert!(matches!(
            check_isomorphism(&s, &s, &maps),
            Err(IsoFailure::NotNatural { .. })
        ));
    }
}
