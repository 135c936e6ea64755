use crate::jsonio::{index_list, quote, string_list, Doc, LoadError};

use super::{SimplicialError, SimplicialSet};

impl SimplicialSet {
    /// Reads the `{"N", "levels", "face", "degeneracy"}` document.
    pub fn from_json(raw: &str) -> Result<Self, LoadError> {
        let doc = Doc::parse(raw)?;
        let root = doc.root()?;
        let top = doc.usize_of(doc.field(root, "N")?, "N")?;
        if top < 2 {
            return Err(doc.err("N", "truncation degree must be at least 2"));
        }
        let levels_v = doc
            .field(root, "levels")?
            .as_array()
            .ok_or_else(|| doc.err("levels", "expected an array of level lists"))?;
        if levels_v.len() != top + 1 {
            return Err(doc.err(
                "levels",
                format!("expected {} level lists, found {}", top + 1, levels_v.len()),
            ));
        }
        let levels = levels_v
            .iter()
            .map(|l| doc.strings_of(l, "levels"))
            .collect::<Result<Vec<_>, _>>()?;

        let read_tables = |name: &str, range: std::ops::RangeInclusive<usize>, target: &dyn Fn(usize) -> usize| {
            let obj = doc
                .field(root, name)?
                .as_object()
                .ok_or_else(|| doc.err(name, "expected an object keyed by \"n,i\""))?;
            for key in obj.keys() {
                let ok = key
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                    .is_some_and(|(n, i)| range.contains(&n) && i <= n);
                if !ok {
                    return Err(doc.err_within(name, key, "not a valid \"n,i\" key for this table"));
                }
            }
            let mut tables: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
            for n in range.clone() {
                for i in 0..=n {
                    let key = format!("{n},{i}");
                    let v = obj
                        .get(&key)
                        .ok_or_else(|| doc.err(name, format!("missing table {key}")))?;
                    let table = doc
                        .indices_of(v, &key)
                        .map_err(|_| doc.err_within(name, &key, "expected an array of indices"))?;
                    if table.len() != levels[n].len() {
                        return Err(doc.err_within(
                            name,
                            &key,
                            format!("has {} entries, level {n} has {}", table.len(), levels[n].len()),
                        ));
                    }
                    let size = levels[target(n)].len();
                    if let Some((e, t)) = table.iter().enumerate().find(|(_, &t)| t >= size) {
                        return Err(doc.err_within(
                            name,
                            &key,
                            format!("entry {e} is {t}, outside level {} of size {size}", target(n)),
                        ));
                    }
                    tables[n].push(table);
                }
            }
            Ok(tables)
        };
        let faces = read_tables("face", 1..=top, &|n| n - 1)?;
        let mut degeneracies = read_tables("degeneracy", 0..=top - 1, &|n| n + 1)?;
        degeneracies.truncate(top);

        SimplicialSet::new(levels, faces, degeneracies).map_err(|e| match e {
            SimplicialError::DuplicateLabel { ref label, .. } => doc.err_within("levels", label, e.to_string()),
            other => doc.err("N", other.to_string()),
        })
    }

    /// Writes the document with one level or table per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"N\": {},\n", self.top));
        out.push_str("  \"levels\": [\n");
        let lines: Vec<String> = self.levels.iter().map(|l| format!("    {}", string_list(l))).collect();
        out.push_str(&lines.join(",\n"));
        out.push_str("\n  ],\n");

        let section = |tables: &[Vec<Vec<usize>>], range: std::ops::Range<usize>| {
            let mut lines = Vec::new();
            for n in range {
                for (i, t) in tables[n].iter().enumerate() {
                    lines.push(format!("    {}: {}", quote(&format!("{n},{i}")), index_list(t)));
                }
            }
            lines.join(",\n")
        };
        out.push_str("  \"face\": {\n");
        out.push_str(&section(&self.faces, 1..self.top + 1));
        out.push_str("\n  },\n  \"degeneracy\": {\n");
        out.push_str(&section(&self.degeneracies, 0..self.top));
        out.push_str("\n  }\n}\n");
        out
    }
}
