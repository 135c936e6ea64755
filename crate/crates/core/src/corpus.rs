//! The checked-in example corpus: which files exist and how each one is
//! produced from the generators.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::algebra::{hall_algebra, incidence_coalgebra};
use crate::category::PartialCategory;
use crate::generators::{
    avoiding, chain_poset, cyclic_group, disjoint_union_monoid, divisor_poset, exponential_set, nerve, point,
    powerset_cover_set, quiver_partial_category, truncated_monoid, Quiver,
};
use crate::pseudomonoid::Pseudomonoid;
use crate::simplicial::SimplicialSet;

/// Truncation degree of every corpus set.
pub const TOP: usize = 4;

pub struct Member {
    pub name: &'static str,
    pub set: SimplicialSet,
}

fn loop_quiver() -> Quiver {
    Quiver {
        vertices: vec!["v".into()],
        edges: vec![("e".into(), 0, 0)],
    }
}

fn edge_quiver() -> Quiver {
    Quiver {
        vertices: vec!["a".into(), "b".into()],
        edges: vec![("f".into(), 0, 1)],
    }
}

fn ground(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// The partial categories whose nerves are in the corpus.
pub fn categories() -> Vec<(&'static str, PartialCategory)> {
    vec![
        ("zmod2", cyclic_group(2)),
        ("chain3", chain_poset(3)),
        ("truncated1", truncated_monoid(1)),
        ("truncated2", truncated_monoid(2)),
        ("truncated3", truncated_monoid(3)),
        ("disjoint1", disjoint_union_monoid(&ground(1))),
        ("disjoint2", disjoint_union_monoid(&ground(2))),
        ("quiver-loop", quiver_partial_category(&loop_quiver()).expect("loop quiver")),
        ("quiver-edge", quiver_partial_category(&edge_quiver()).expect("edge quiver")),
        ("divisor12", divisor_poset(12)),
    ]
}

/// Every corpus set, truncated at `TOP`.
pub fn members() -> Vec<Member> {
    let mut out: Vec<Member> = Vec::new();
    let names = [
        "zmod2-nerve",
        "chain3-nerve",
        "truncated1-nerve",
        "truncated2-nerve",
        "truncated3-nerve",
        "disjoint1-nerve",
        "disjoint2-nerve",
        "quiver-loop-nerve",
        "quiver-edge-nerve",
        "divisor12-nerve",
    ];
    for (name, (_, c)) in names.into_iter().zip(categories()) {
        out.push(Member {
            name,
            set: nerve(&c, TOP).expect("corpus nerve"),
        });
    }
    for (name, a) in [("powerset0", 0), ("powerset1", 1), ("powerset2", 2)] {
        out.push(Member {
            name,
            set: powerset_cover_set(a, TOP).expect("corpus power-set example"),
        });
    }
    for (name, m) in [("exponential1", 1), ("exponential2", 2), ("exponential3", 3)] {
        out.push(Member {
            name,
            set: exponential_set(m, TOP).expect("corpus exponential example"),
        });
    }
    out.push(Member {
        name: "point",
        set: point(TOP),
    });
    let z2 = nerve(&cyclic_group(2), TOP).expect("corpus nerve");
    let ggg = z2.find(3, "(g,g,g)").expect("(g,g,g) is a 3-simplex");
    out.push(Member {
        name: "zmod2-punctured",
        set: avoiding(&z2, 3, &[ggg]).expect("simplicial subset"),
    });
    out
}

pub fn member(name: &str) -> Option<SimplicialSet> {
    members().into_iter().find(|m| m.name == name).map(|m| m.set)
}

/// Relative path and contents of every generated corpus file.
pub fn files() -> Vec<(PathBuf, String)> {
    let mut out = Vec::new();
    for (name, c) in categories() {
        out.push((Path::new("categories").join(format!("{name}.json")), c.to_json()));
    }
    let members = members();
    for m in &members {
        out.push((Path::new("sets").join(format!("{}.json", m.name)), m.set.to_json()));
    }
    for m in &members {
        let Ok(h) = hall_algebra(&m.set) else { continue };
        out.push((Path::new("tables").join(format!("{}.hall.txt", m.name)), h.render_table()));
        out.push((
            Path::new("tables").join(format!("{}.incidence.txt", m.name)),
            incidence_coalgebra(&m.set).render_table(),
        ));
    }
    for name in ["zmod2-nerve", "truncated3-nerve"] {
        let s = member(name).expect("registered member");
        let p = Pseudomonoid::from_2segal(&s).expect("2-Segal corpus member");
        out.push((Path::new("pseudomonoids").join(format!("{name}.json")), p.to_json()));
    }
    out
}

/// Writes every corpus file under `dir`, returning the paths written.
pub fn write(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for (rel, contents) in files() {
        let path = dir.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, contents)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = members().iter().map(|m| m.name).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn punctured_set_is_smaller() {
        let s = member("zmod2-punctured").unwrap();
        assert_eq!(s.level_size(3), 7);
    }
}
