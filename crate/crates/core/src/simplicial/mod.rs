//! Finite truncated simplicial sets stored as explicit lookup tables.
//!
//! A [`SimplicialSet`] holds the level sets `X_0..X_N` as label lists and
//! every face map `d_i^n : X_n -> X_{n-1}` and degeneracy map
//! `s_i^n : X_n -> X_{n+1}` as an index table. Everything downstream
//! (Segal checks, span constructions, algebras) reads these tables.

mod json;
mod maps;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use maps::{
    induced_map, induced_map_with, Constraint, DerivedMaps, Factorization, FiberMap,
    FiberProductSet, FiniteMap, SetDesc, Witness,
};

/// Reference to one element of a level set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId {
    pub level: usize,
    pub index: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("truncation degree {0} is below the minimum of 2")]
    TruncationTooLow(usize),
    #[error("expected {expected} level sets, found {found}")]
    LevelCount { expected: usize, found: usize },
    #[error("duplicate label {label:?} in level {level}")]
    DuplicateLabel { level: usize, label: String },
    #[error("missing table {kind} {n},{i}")]
    MissingTable { kind: &'static str, n: usize, i: usize },
    #[error("table {kind} {n},{i} has length {found}, expected {expected}")]
    TableLength {
        kind: &'static str,
        n: usize,
        i: usize,
        expected: usize,
        found: usize,
    },
    #[error("table {kind} {n},{i} entry {entry} points to {target}, outside level of size {size}")]
    OutOfRange {
        kind: &'static str,
        n: usize,
        i: usize,
        entry: usize,
        target: usize,
        size: usize,
    },
    #[error("{kind} {n},{i} sends element {element} of level {n} outside the generated levels")]
    NotClosed {
        kind: &'static str,
        n: usize,
        i: usize,
        element: String,
    },
    #[error("level {requested} is outside the truncation range 0..={top}")]
    LevelOutOfRange { requested: usize, top: usize },
    #[error("invalid index arguments: {0}")]
    BadArguments(String),
    #[error("factorizations of {map} disagree on element {element} of level {level}")]
    InternalInconsistency {
        map: String,
        level: usize,
        element: usize,
    },
}

/// A finite simplicial set truncated at level `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    top: usize,
    levels: Vec<Vec<String>>,
    // faces[n][i] for 1 <= n <= top; faces[0] is empty.
    faces: Vec<Vec<Vec<usize>>>,
    // degeneracies[n][i] for 0 <= n < top.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSet {
    /// Builds a set from raw tables, checking that every table is present,
    /// has the right length, and points into the correct level.
    pub fn new(
        levels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, SimplicialError> {
        if levels.len() < 3 {
            return Err(SimplicialError::TruncationTooLow(levels.len().saturating_sub(1)));
        }
        let top = levels.len() - 1;
        for (n, level) in levels.iter().enumerate() {
            let mut seen = HashMap::new();
            for label in level {
                if seen.insert(label.as_str(), ()).is_some() {
                    return Err(SimplicialError::DuplicateLabel {
                        level: n,
                        label: label.clone(),
                    });
                }
            }
        }
        check_tables("face", &levels, &faces, 1..=top, |n| n + 1, |n| n - 1)?;
        check_tables("degeneracy", &levels, &degeneracies, 0..top, |n| n + 1, |n| n + 1)?;
        Ok(Self {
            top,
            levels,
            faces,
            degeneracies,
        })
    }

    /// Builds a set from structured elements, resolving every face and
    /// degeneracy value by lookup. Fails if a map leaves the given levels.
    pub fn from_elements<T, L, F, D>(
        elements: Vec<Vec<T>>,
        label: L,
        face: F,
        degeneracy: D,
    ) -> Result<Self, SimplicialError>
    where
        T: Clone + Eq + Hash,
        L: Fn(usize, &T) -> String,
        F: Fn(usize, usize, &T) -> T,
        D: Fn(usize, usize, &T) -> T,
    {
        if elements.len() < 3 {
            return Err(SimplicialError::TruncationTooLow(elements.len().saturating_sub(1)));
        }
        let top = elements.len() - 1;
        let index: Vec<HashMap<&T, usize>> = elements
            .iter()
            .map(|lvl| lvl.iter().enumerate().map(|(k, x)| (x, k)).collect())
            .collect();
        let resolve = |kind: &'static str, n: usize, i: usize, src: &T, target_level: usize, value: T| {
            index[target_level]
                .get(&value)
                .copied()
                .ok_or_else(|| SimplicialError::NotClosed {
                    kind,
                    n,
                    i,
                    element: label(n, src),
                })
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let mut per_n = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let table = elements[n]
                    .iter()
                    .map(|x| resolve("face", n, i, x, n - 1, face(n, i, x)))
                    .collect::<Result<Vec<_>, _>>()?;
                per_n.push(table);
            }
            faces.push(per_n);
        }
        let mut degeneracies = Vec::new();
        for n in 0..top {
            let mut per_n = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let table = elements[n]
                    .iter()
                    .map(|x| resolve("degeneracy", n, i, x, n + 1, degeneracy(n, i, x)))
                    .collect::<Result<Vec<_>, _>>()?;
                per_n.push(table);
            }
            degeneracies.push(per_n);
        }
        let levels = elements
            .iter()
            .enumerate()
            .map(|(n, lvl)| lvl.iter().map(|x| label(n, x)).collect())
            .collect();
        Self::new(levels, faces, degeneracies)
    }

    /// Truncation degree `N`.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn level(&self, n: usize) -> &[String] {
        &self.levels[n]
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn label(&self, id: ElementId) -> &str {
        &self.levels[id.level][id.index]
    }

    pub fn find(&self, level: usize, label: &str) -> Option<usize> {
        self.levels.get(level)?.iter().position(|l| l == label)
    }

    /// Table of `d_i^n`.
    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    /// Table of `s_i^n`.
    pub fn degeneracy_table(&self, n: usize, i: usize) -> &[usize] {
        &self.degeneracies[n][i]
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.degeneracies[n][i][x]
    }

    pub(crate) fn faces_mut(&mut self) -> &mut Vec<Vec<Vec<usize>>> {
        &mut self.faces
    }

    pub(crate) fn degeneracies_mut(&mut self) -> &mut Vec<Vec<Vec<usize>>> {
        &mut self.degeneracies
    }

    /// Swaps two face tables of the same level. Used to produce corrupted
    /// inputs for the identity checker.
    pub fn swap_faces(&mut self, n: usize, i: usize, j: usize) {
        self.faces[n].swap(i, j);
    }

    /// Overwrites one entry of a face table without any checking beyond
    /// range.
    pub fn set_face(&mut self, n: usize, i: usize, x: usize, value: usize) -> Result<(), SimplicialError> {
        let size = self.levels[n - 1].len();
        if value >= size {
            return Err(SimplicialError::OutOfRange {
                kind: "face",
                n,
                i,
                entry: x,
                target: value,
                size,
            });
        }
        self.faces_mut()[n][i][x] = value;
        Ok(())
    }

    /// Keeps levels `0..=top` only.
    pub fn truncate(&self, top: usize) -> Result<Self, SimplicialError> {
        if top < 2 {
            return Err(SimplicialError::TruncationTooLow(top));
        }
        if top >= self.top {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        out.top = top;
        out.levels.truncate(top + 1);
        out.faces.truncate(top + 1);
        out.degeneracies_mut().truncate(top);
        Ok(out)
    }

    pub fn check_level(&self, n: usize) -> Result<(), SimplicialError> {
        if n > self.top {
            Err(SimplicialError::LevelOutOfRange {
                requested: n,
                top: self.top,
            })
        } else {
            Ok(())
        }
    }

    /// Lists every instance of a simplicial identity that fails within the
    /// truncation. An empty report means the tables form a truncated
    /// simplicial set.
    pub fn validate_identities(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let top = self.top;

        // d_i d_j = d_{j-1} d_i for i < j
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    for x in 0..self.level_size(n) {
                        let lhs = self.face(n - 1, i, self.face(n, j, x));
                        let rhs = self.face(n - 1, j - 1, self.face(n, i, x));
                        if lhs != rhs {
                            violations.push(Violation {
                                identity: Identity::FaceFace { i, j },
                                level: n,
                                element: x,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }

        // d_i s_j on X_n, s_j : X_n -> X_{n+1}
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for x in 0..self.level_size(n) {
                        let lhs = self.face(n + 1, i, self.degeneracy(n, j, x));
                        let rhs = if i < j {
                            self.degeneracy(n - 1, j - 1, self.face(n, i, x))
                        } else if i == j || i == j + 1 {
                            x
                        } else {
                            self.degeneracy(n - 1, j, self.face(n, i - 1, x))
                        };
                        if lhs != rhs {
                            violations.push(Violation {
                                identity: Identity::FaceDegeneracy { i, j },
                                level: n,
                                element: x,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }

        // s_i s_j = s_{j+1} s_i for i <= j
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    for x in 0..self.level_size(n) {
                        let lhs = self.degeneracy(n + 1, i, self.degeneracy(n, j, x));
                        let rhs = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, x));
                        if lhs != rhs {
                            violations.push(Violation {
                                identity: Identity::DegeneracyDegeneracy { i, j },
                                level: n,
                                element: x,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }

        ValidationReport { violations }
    }
}

fn check_tables(
    kind: &'static str,
    levels: &[Vec<String>],
    tables: &[Vec<Vec<usize>>],
    range: impl Iterator<Item = usize>,
    count: impl Fn(usize) -> usize,
    target: impl Fn(usize) -> usize,
) -> Result<(), SimplicialError> {
    for n in range {
        let per_n = tables.get(n);
        for i in 0..count(n) {
            let table = per_n
                .and_then(|t| t.get(i))
                .ok_or(SimplicialError::MissingTable { kind, n, i })?;
            if table.len() != levels[n].len() {
                return Err(SimplicialError::TableLength {
                    kind,
                    n,
                    i,
                    expected: levels[n].len(),
                    found: table.len(),
                });
            }
            let size = levels[target(n)].len();
            if let Some((entry, &t)) = table.iter().enumerate().find(|(_, &t)| t >= size) {
                return Err(SimplicialError::OutOfRange {
                    kind,
                    n,
                    i,
                    entry,
                    target: t,
                    size,
                });
            }
        }
    }
    Ok(())
}

/// Which simplicial identity an instance belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `d_i d_j = d_{j-1} d_i`, `i < j`.
    FaceFace { i: usize, j: usize },
    /// `d_i s_j` against its three-case right-hand side.
    FaceDegeneracy { i: usize, j: usize },
    /// `s_i s_j = s_{j+1} s_i`, `i <= j`.
    DegeneracyDegeneracy { i: usize, j: usize },
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Identity::FaceFace { i, j } => write!(f, "d_{i} d_{j} = d_{} d_{i}", j - 1),
            Identity::FaceDegeneracy { i, j } => {
                if i < j {
                    write!(f, "d_{i} s_{j} = s_{} d_{i}", j - 1)
                } else if i == j || i == j + 1 {
                    write!(f, "d_{i} s_{j} = id")
                } else {
                    write!(f, "d_{i} s_{j} = s_{j} d_{}", i - 1)
                }
            }
            Identity::DegeneracyDegeneracy { i, j } => {
                write!(f, "s_{i} s_{j} = s_{} s_{i}", j + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    /// Level of the element the composite is applied to.
    pub level: usize,
    pub element: usize,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self, set: &SimplicialSet) -> serde_json::Value {
        let items: Vec<_> = self
            .violations
            .iter()
            .map(|v| {
                serde_json::json!({
                    "identity": v.identity.to_string(),
                    "level": v.level,
                    "element": set.level(v.level)[v.element],
                    "lhs": v.lhs,
                    "rhs": v.rhs,
                })
            })
            .collect();
        serde_json::json!({ "valid": self.is_clean(), "violations": items })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn point(top: usize) -> SimplicialSet {
        let elements = vec![vec![()]; top + 1];
        SimplicialSet::from_elements(elements, |_, _| "*".into(), |_, _, _| (), |_, _, _| ()).unwrap()
    }

    #[test]
    fn one_point_set_is_valid() {
        assert!(point(4).validate_identities().is_clean());
    }

    #[test]
    fn zmod2_nerve_is_valid() {
        let s = generators::nerve(&generators::cyclic_group(2), 3).unwrap();
        assert!(s.validate_identities().is_clean());
    }

    #[test]
    fn swapped_level2_faces_are_reported() {
        let mut s = generators::nerve(&generators::cyclic_group(2), 3).unwrap();
        s.swap_faces(2, 0, 1);
        let report = s.validate_identities();
        assert!(!report.is_clean());
        // d_0 d_2 = d_1 d_0 applied to X_3
        assert!(report
            .violations
            .iter()
            .any(|v| v.identity == Identity::FaceFace { i: 0, j: 2 } && v.level == 3));
    }

    #[test]
    fn construction_rejects_bad_tables() {
        let levels = vec![vec!["a".to_string()], vec!["b".to_string()], vec!["c".to_string()]];
        let faces = vec![vec![], vec![vec![0], vec![0]], vec![vec![0], vec![3], vec![0]]];
        let degens = vec![vec![vec![0]], vec![vec![0], vec![0]]];
        let err = SimplicialSet::new(levels.clone(), faces, degens.clone()).unwrap_err();
        assert!(matches!(err, SimplicialError::OutOfRange { n: 2, i: 1, .. }));

        let faces = vec![vec![], vec![vec![0], vec![0]], vec![vec![0], vec![0]]];
        let err = SimplicialSet::new(levels, faces, degens).unwrap_err();
        assert_eq!(err, SimplicialError::MissingTable { kind: "face", n: 2, i: 2 });
    }

    #[test]
    fn truncation_floor_is_two() {
        assert!(matches!(point(4).truncate(1), Err(SimplicialError::TruncationTooLow(1))));
        assert_eq!(point(4).truncate(2).unwrap().top(), 2);
    }
}
