//! Finite partial categories: composition is a partial operation that is
//! associative in the strong sense (one side is defined exactly when the
//! other is) and unital.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::jsonio::{quote, Doc, LoadError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("duplicate {kind} name {name:?}")]
    Duplicate { kind: &'static str, name: String },
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
    #[error("{g} o {f}: target of {f} is not the source of {g}")]
    NotComposable { f: String, g: String },
    #[error("{g} o {f} = {h}, but {h} does not run from the source of {f} to the target of {g}")]
    WrongHom { f: String, g: String, h: String },
    #[error("{g} o {f} is listed twice")]
    DuplicateComposite { f: String, g: String },
    #[error("identity {id} of {object} is not an endomorphism of {object}")]
    BadIdentity { object: String, id: String },
    #[error("unit law fails for {morphism}: {detail}")]
    UnitLaw { morphism: String, detail: String },
    #[error("associativity fails for ({h}, {g}, {f}): {detail}")]
    Associativity {
        f: String,
        g: String,
        h: String,
        detail: String,
    },
    #[error("not a poset: {0}")]
    NotAPoset(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    // (f, g) -> g o f, where f is applied first
    compose: BTreeMap<(usize, usize), usize>,
    identities: Vec<usize>,
}

impl PartialCategory {
    /// Builds and validates a partial category. `compositions` lists
    /// `(g, f, g∘f)` by morphism index.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        compositions: Vec<(usize, usize, usize)>,
        identities: Vec<usize>,
    ) -> Result<Self, CategoryError> {
        check_unique("object", objects.iter())?;
        check_unique("morphism", morphisms.iter().map(|m| &m.name))?;
        if identities.len() != objects.len() {
            return Err(CategoryError::Unknown {
                kind: "identity list of length",
                name: identities.len().to_string(),
            });
        }
        let name = |m: usize| morphisms[m].name.clone();
        let mut compose = BTreeMap::new();
        for &(g, f, h) in &compositions {
            if morphisms[f].tgt != morphisms[g].src {
                return Err(CategoryError::NotComposable { f: name(f), g: name(g) });
            }
            if morphisms[h].src != morphisms[f].src || morphisms[h].tgt != morphisms[g].tgt {
                return Err(CategoryError::WrongHom {
                    f: name(f),
                    g: name(g),
                    h: name(h),
                });
            }
            if compose.insert((f, g), h).is_some() {
                return Err(CategoryError::DuplicateComposite { f: name(f), g: name(g) });
            }
        }
        let cat = Self {
            objects,
            morphisms,
            compose,
            identities,
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let name = |m: usize| self.morphisms[m].name.clone();
        for (x, &id) in self.identities.iter().enumerate() {
            let m = &self.morphisms[id];
            if m.src != x || m.tgt != x {
                return Err(CategoryError::BadIdentity {
                    object: self.objects[x].clone(),
                    id: m.name.clone(),
                });
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            let after = self.compose(f, self.identities[m.tgt]);
            let before = self.compose(self.identities[m.src], f);
            if after != Some(f) {
                return Err(CategoryError::UnitLaw {
                    morphism: m.name.clone(),
                    detail: format!("id_{} o {} is {}", self.objects[m.tgt], m.name, self.describe(after)),
                });
            }
            if before != Some(f) {
                return Err(CategoryError::UnitLaw {
                    morphism: m.name.clone(),
                    detail: format!("{} o id_{} is {}", m.name, self.objects[m.src], self.describe(before)),
                });
            }
        }
        // h first, then g, then f: compare (f o g) o h with f o (g o h).
        for h in 0..self.morphisms.len() {
            for g in self.starting_at(self.morphisms[h].tgt) {
                for f in self.starting_at(self.morphisms[g].tgt) {
                    let left = self.compose(g, f).and_then(|fg| self.compose(h, fg));
                    let right = self.compose(h, g).and_then(|gh| self.compose(gh, f));
                    if left != right {
                        return Err(CategoryError::Associativity {
                            f: name(f),
                            g: name(g),
                            h: name(h),
                            detail: format!(
                                "(f o g) o h is {}, f o (g o h) is {}",
                                self.describe(left),
                                self.describe(right)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn describe(&self, m: Option<usize>) -> String {
        m.map_or("undefined".to_string(), |m| self.morphisms[m].name.clone())
    }

    fn starting_at(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.morphisms
            .iter()
            .enumerate()
            .filter(move |(_, m)| m.src == x)
            .map(|(i, _)| i)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    /// `g ∘ f` when defined; `f` is applied first.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    /// All defined composites as `(f, g, g∘f)`.
    pub fn composites(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.compose.iter().map(|(&(f, g), &h)| (f, g, h))
    }

    /// Morphisms `x -> y`.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.starting_at(x).filter(|&m| self.morphisms[m].tgt == y).collect()
    }

    /// True when every pair with matching endpoints composes.
    pub fn is_total(&self) -> bool {
        (0..self.morphisms.len()).all(|f| {
            self.starting_at(self.morphisms[f].tgt)
                .all(|g| self.compose(f, g).is_some())
        })
    }

    pub fn from_json(raw: &str) -> Result<Self, LoadError> {
        let doc = Doc::parse(raw)?;
        let root = doc.root()?;
        let objects = doc.strings_of(doc.field(root, "objects")?, "objects")?;
        let obj_index: HashMap<&str, usize> =
            objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let lookup_obj = |key: &str, name: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| doc.err_within(key, name, format!("unknown object {name:?}")))
        };

        let mut morphisms = Vec::new();
        let ms = doc
            .field(root, "morphisms")?
            .as_array()
            .ok_or_else(|| doc.err("morphisms", "expected an array"))?;
        for m in ms {
            let get = |k: &str| {
                m.get(k)
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| doc.err("morphisms", format!("each morphism needs a string \"{k}\"")))
            };
            let name = get("name")?.to_string();
            let src = lookup_obj("morphisms", get("src")?)?;
            let tgt = lookup_obj("morphisms", get("tgt")?)?;
            morphisms.push(Morphism { name, src, tgt });
        }
        let mor_index: HashMap<&str, usize> =
            morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect();
        let lookup_mor = |key: &str, name: &str| {
            mor_index
                .get(name)
                .copied()
                .ok_or_else(|| doc.err_within(key, name, format!("unknown morphism {name:?}")))
        };

        let mut compositions = Vec::new();
        let cs = doc
            .field(root, "compose")?
            .as_array()
            .ok_or_else(|| doc.err("compose", "expected an array of [g, f, gf] triples"))?;
        for c in cs {
            let parts = doc.strings_of(c, "compose")?;
            if parts.len() != 3 {
                return Err(doc.err("compose", "expected an array of [g, f, gf] triples"));
            }
            compositions.push((
                lookup_mor("compose", &parts[0])?,
                lookup_mor("compose", &parts[1])?,
                lookup_mor("compose", &parts[2])?,
            ));
        }

        let ids = doc
            .field(root, "identities")?
            .as_object()
            .ok_or_else(|| doc.err("identities", "expected an object from objects to morphisms"))?;
        let mut identities = Vec::with_capacity(objects.len());
        for o in &objects {
            let id = ids
                .get(o)
                .and_then(|v| v.as_str())
                .ok_or_else(|| doc.err("identities", format!("missing identity for {o:?}")))?;
            identities.push(lookup_mor("identities", id)?);
        }

        PartialCategory::new(objects, morphisms, compositions, identities).map_err(|e| {
            let key = match &e {
                CategoryError::Duplicate { kind: "object", .. } => "objects",
                CategoryError::Duplicate { .. } => "morphisms",
                CategoryError::BadIdentity { .. } | CategoryError::UnitLaw { .. } => "identities",
                _ => "compose",
            };
            doc.err(key, e.to_string())
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"objects\": [");
        out.push_str(&self.objects.iter().map(|o| quote(o)).collect::<Vec<_>>().join(", "));
        out.push_str("],\n  \"morphisms\": [\n");
        let ms: Vec<String> = self
            .morphisms
            .iter()
            .map(|m| {
                format!(
                    "    {{\"name\": {}, \"src\": {}, \"tgt\": {}}}",
                    quote(&m.name),
                    quote(&self.objects[m.src]),
                    quote(&self.objects[m.tgt])
                )
            })
            .collect();
        out.push_str(&ms.join(",\n"));
        out.push_str("\n  ],\n  \"compose\": [\n");
        let cs: Vec<String> = self
            .compose
            .iter()
            .map(|(&(f, g), &h)| {
                format!(
                    "    [{}, {}, {}]",
                    quote(&self.morphisms[g].name),
                    quote(&self.morphisms[f].name),
                    quote(&self.morphisms[h].name)
                )
            })
            .collect();
        out.push_str(&cs.join(",\n"));
        out.push_str("\n  ],\n  \"identities\": {");
        let ids: Vec<String> = self
            .objects
            .iter()
            .zip(&self.identities)
            .map(|(o, &m)| format!("{}: {}", quote(o), quote(&self.morphisms[m].name)))
            .collect();
        out.push_str(&ids.join(", "));
        out.push_str("}\n}\n");
        out
    }
}

fn check_unique<'a>(kind: &'static str, names: impl Iterator<Item = &'a String>) -> Result<(), CategoryError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(CategoryError::Duplicate {
                kind,
                name: n.clone(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cyclic_group, truncated_monoid};

    #[test]
    fn json_round_trip() {
        for c in [cyclic_group(2), truncated_monoid(2)] {
            let text = c.to_json();
            let back = PartialCategory::from_json(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn one_sided_associativity_is_rejected() {
        // a o a = b and b o a = c, but a o b is undefined.
        let objects = vec!["*".to_string()];
        let m = |n: &str| Morphism { name: n.into(), src: 0, tgt: 0 };
        let morphisms = vec![m("1"), m("a"), m("b"), m("c")];
        let mut comps = vec![];
        for x in 0..4 {
            comps.push((0, x, x));
            if x != 0 {
                comps.push((x, 0, x));
            }
        }
        comps.push((1, 1, 2));
        comps.push((2, 1, 3));
        let err = PartialCategory::new(objects, morphisms, comps, vec![0]).unwrap_err();
        assert!(matches!(err, CategoryError::Associativity { .. }), "{err}");
    }

    #[test]
    fn missing_unit_composite_is_rejected() {
        let objects = vec!["*".to_string()];
        let morphisms = vec![
            Morphism { name: "1".into(), src: 0, tgt: 0 },
            Morphism { name: "a".into(), src: 0, tgt: 0 },
        ];
        let err = PartialCategory::new(objects, morphisms, vec![(0, 0, 0), (0, 1, 1)], vec![0]).unwrap_err();
        assert!(matches!(err, CategoryError::UnitLaw { .. }), "{err}");
    }

    #[test]
    fn loader_points_at_unknown_morphism() {
        let text = cyclic_group(2).to_json().replacen("[\"g\", \"g\", \"e\"]", "[\"g\", \"h\", \"e\"]", 1);
        let err = PartialCategory::from_json(&text).unwrap_err();
        assert!(err.to_string().contains("unknown morphism \"h\""), "{err}");
        let line = text.lines().position(|l| l.contains("\"h\"")).unwrap() + 1;
        assert_eq!(err.line(), line);
    }
}
