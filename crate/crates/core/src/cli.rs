//! Command-line front end. `run` parses arguments, executes one verb and
//! returns the process exit code: 0 when the checked property holds or the
//! construction succeeded, 1 when it is falsified, 2 on input or usage
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::algebra::{
    compare_closed_form, convolve, hall_algebra, incidence_coalgebra, AlgebraError, FnOnBasis,
};
use crate::category::PartialCategory;
use crate::corpus;
use crate::generators::nerve;
use crate::jsonio::pretty;
use crate::pseudomonoid::{roundtrip_isomorphic, verify_coherence, Pseudomonoid};
use crate::segal::{
    category_roundtrip, check_2segal, check_segal, check_unitality, extract_category, SegalError,
};
use crate::simplicial::SimplicialSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "twosegal", version, about = "Finite 2-Segal sets, pseudomonoids in spans, Hall and incidence algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Highest level to use; inputs are truncated to it.
    #[arg(long, global = true, env = "TWO_SEGAL_MAX_LEVEL")]
    pub max_level: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the simplicial identities.
    Validate { set: PathBuf },
    /// Spine maps and interval maps at every level.
    Segal { set: PathBuf },
    /// Subdivision maps and triangulation maps at every level.
    TwoSegal { set: PathBuf },
    /// Whether the degeneracy squares are pullbacks.
    Unitality { set: PathBuf },
    /// Nerve of a partial category, up to --max-level (default 4).
    Nerve { category: PathBuf },
    /// Partial category of a 2-Segal set with injective T_2.
    Extract { set: PathBuf },
    /// The pseudomonoid in spans of a 2-Segal set.
    Pseudomonoid { set: PathBuf },
    /// Pentagon and triangle for a pseudomonoid file or a 2-Segal set.
    Coherence { input: PathBuf },
    /// Rebuild a set through its pseudomonoid, or with --category through
    /// its partial category, and compare.
    Roundtrip {
        set: PathBuf,
        #[arg(long)]
        category: bool,
    },
    /// Hall algebra table and axiom check.
    Hall { set: PathBuf },
    /// Incidence coalgebra and axiom check.
    Incidence { set: PathBuf },
    /// Convolution product of two functions on X_1.
    Convolve { set: PathBuf, psi1: PathBuf, psi2: PathBuf },
    /// Compare with a classical closed form: group, poset, dirichlet,
    /// truncated_poly or exponential.
    Compare { example: String },
    /// Regenerate the example corpus.
    Generate {
        #[arg(default_value = "corpus")]
        dir: PathBuf,
    },
}

enum Failure {
    Usage(String),
}

struct Outcome {
    holds: bool,
    json: Json,
    text: String,
}

impl Outcome {
    fn report(holds: bool, json: Json) -> Self {
        let text = render_text(&json);
        Outcome { holds, json, text }
    }
}

/// A document in its own JSON format, printed the same way under both
/// output formats.
struct Document(String);

enum Output {
    Report(Outcome),
    Document(Document),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_set(path: &Path, max_level: Option<usize>) -> Result<SimplicialSet, Failure> {
    let s = SimplicialSet::from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    match max_level {
        None => Ok(s),
        Some(n) if n > s.top() => Err(Failure::Usage(format!(
            "{}: stores levels up to {}, --max-level asks for {n}",
            path.display(),
            s.top()
        ))),
        Some(n) => s
            .truncate(n)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
    }
}

fn usage<E: std::fmt::Display>(path: &Path) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Usage(format!("{}: {e}", path.display()))
}

/// Nested `key: value` lines, two spaces per level.
pub fn render_text(v: &Json) -> String {
    fn scalar(v: &Json) -> Option<String> {
        match v {
            Json::Null => Some("none".into()),
            Json::Bool(b) => Some(b.to_string()),
            Json::Number(n) => Some(n.to_string()),
            Json::String(s) => Some(s.clone()),
            Json::Array(a) if a.is_empty() => Some("[]".into()),
            Json::Object(o) if o.is_empty() => Some("{}".into()),
            Json::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
                let items: Vec<String> = a.iter().filter_map(scalar).collect();
                Some(format!("[{}]", items.join(", ")))
            }
            _ => None,
        }
    }
    fn walk(v: &Json, indent: usize, out: &mut String) {
        let pad = " ".repeat(indent);
        match v {
            Json::Object(o) => {
                for (k, x) in o {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            walk(x, indent + 2, out);
                        }
                    }
                }
            }
            Json::Array(a) => {
                for x in a {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            walk(x, indent + 2, out);
                        }
                    }
                }
            }
            _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
        }
    }
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

fn not_two_segal(e: &SegalError) -> Option<Json> {
    match e {
        SegalError::NotTwoSegal(f) | SegalError::NotInjective(f) => Some(json!({
            "map": f.map,
            "target": f.rendered,
            "preimages": f.witness.preimages.len(),
        })),
        _ => None,
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let ml = cli.max_level;
    let out = match &cli.command {
        Command::Validate { set } => {
            let s = load_set(set, ml)?;
            let r = s.validate_identities();
            Output::Report(Outcome::report(r.is_clean(), r.to_json(&s)))
        }
        Command::Segal { set } => {
            let s = load_set(set, ml)?;
            let r = check_segal(&s).map_err(usage(set))?;
            Output::Report(Outcome::report(r.holds(), r.to_json(&s)))
        }
        Command::TwoSegal { set } => {
            let s = load_set(set, ml)?;
            let r = check_2segal(&s).map_err(usage(set))?;
            Output::Report(Outcome::report(r.holds(), r.to_json(&s)))
        }
        Command::Unitality { set } => {
            let s = load_set(set, ml)?;
            let r = check_unitality(&s).map_err(usage(set))?;
            Output::Report(Outcome::report(r.holds(), r.to_json(&s)))
        }
        Command::Nerve { category } => {
            let c = PartialCategory::from_json(&read(category)?).map_err(usage(category))?;
            let s = nerve(&c, ml.unwrap_or(corpus::TOP)).map_err(usage(category))?;
            Output::Document(Document(s.to_json()))
        }
        Command::Extract { set } => {
            let s = load_set(set, ml)?;
            match extract_category(&s) {
                Ok(c) => Output::Document(Document(c.to_json())),
                Err(e) => match not_two_segal(&e) {
                    Some(w) => Output::Report(Outcome::report(
                        false,
                        json!({"extracted": false, "reason": e.to_string(), "witness": w}),
                    )),
                    None => return Err(usage(set)(e)),
                },
            }
        }
        Command::Pseudomonoid { set } => {
            let s = load_set(set, ml)?;
            match Pseudomonoid::from_2segal(&s) {
                Ok(p) => Output::Document(Document(p.to_json())),
                Err(e) => Output::Report(Outcome::report(
                    false,
                    json!({"constructed": false, "reason": e.to_string()}),
                )),
            }
        }
        Command::Coherence { input } => {
            let raw = read(input)?;
            let is_bundle = serde_json::from_str::<Json>(&raw)
                .ok()
                .and_then(|v| v.as_object().map(|o| o.contains_key("carrier")))
                .unwrap_or(false);
            let p = if is_bundle {
                Pseudomonoid::from_json(&raw).map_err(usage(input))?
            } else {
                let s = load_set(input, ml)?;
                match Pseudomonoid::from_2segal(&s) {
                    Ok(p) => p,
                    Err(e) => {
                        return Ok(Output::Report(Outcome::report(
                            false,
                            json!({"constructed": false, "reason": e.to_string()}),
                        )))
                    }
                }
            };
            let r = verify_coherence(&p);
            Output::Report(Outcome::report(r.holds(), r.to_json()))
        }
        Command::Roundtrip { set, category } => {
            let s = load_set(set, ml)?;
            if *category {
                let json = match category_roundtrip(&s) {
                    Ok(Ok(maps)) => json!({
                        "holds": true,
                        "failure": null,
                        "level_sizes": maps.iter().map(Vec::len).collect::<Vec<_>>(),
                    }),
                    Ok(Err(iso)) => json!({"holds": false, "failure": iso.to_string()}),
                    Err(e) if not_two_segal(&e).is_some() => json!({"holds": false, "failure": e.to_string()}),
                    Err(e) => return Err(usage(set)(e)),
                };
                let holds = json["holds"] == json!(true);
                Output::Report(Outcome::report(holds, json))
            } else {
                match roundtrip_isomorphic(&s) {
                    Ok(r) => Output::Report(Outcome::report(r.holds, r.to_json())),
                    Err(e) => Output::Report(Outcome::report(
                        false,
                        json!({"holds": false, "failure": e.to_string()}),
                    )),
                }
            }
        }
        Command::Hall { set } => {
            let s = load_set(set, ml)?;
            match hall_algebra(&s) {
                Ok(h) => {
                    let axioms = h.verify_axioms();
                    let mut text = h.render_table();
                    text.push_str(&render_text(&json!({ "axioms": axioms.to_json() })));
                    Output::Report(Outcome {
                        holds: axioms.holds(),
                        json: json!({"algebra": h.to_json(), "axioms": axioms.to_json()}),
                        text,
                    })
                }
                Err(AlgebraError::Segal(e)) if not_two_segal(&e).is_some() => Output::Report(Outcome::report(
                    false,
                    json!({"constructed": false, "reason": e.to_string()}),
                )),
                Err(e) => return Err(usage(set)(e)),
            }
        }
        Command::Incidence { set } => {
            let s = load_set(set, ml)?;
            let c = incidence_coalgebra(&s);
            let axioms = c.verify_axioms();
            let mut text = c.render_table();
            text.push_str(&render_text(&json!({ "axioms": axioms.to_json() })));
            Output::Report(Outcome {
                holds: axioms.holds(),
                json: json!({"coalgebra": c.to_json(), "axioms": axioms.to_json()}),
                text,
            })
        }
        Command::Convolve { set, psi1, psi2 } => {
            let s = load_set(set, ml)?;
            let basis = s.level(1);
            let f1 = FnOnBasis::from_json(&read(psi1)?, basis).map_err(usage(psi1))?;
            let f2 = FnOnBasis::from_json(&read(psi2)?, basis).map_err(usage(psi2))?;
            let r = convolve(&s, &f1, &f2).map_err(usage(set))?;
            Output::Report(Outcome {
                holds: true,
                json: r.to_json(basis),
                text: r.render(basis),
            })
        }
        Command::Compare { example } => {
            let r = compare_closed_form(example).map_err(|e| Failure::Usage(e.to_string()))?;
            Output::Report(Outcome {
                holds: r.holds(),
                json: r.to_json(),
                text: r.render(),
            })
        }
        Command::Generate { dir } => {
            let written = corpus::write(dir).map_err(usage(dir))?;
            let lines: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
            Output::Report(Outcome {
                holds: true,
                json: json!({ "written": lines }),
                text: lines.iter().map(|l| format!("{l}\n")).collect(),
            })
        }
    };
    Ok(out)
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let (holds, body) = match execute(&cli) {
        Ok(Output::Document(Document(d))) => (true, d),
        Ok(Output::Report(o)) => (
            o.holds,
            match cli.format {
                Format::Json => pretty(&o.json),
                Format::Text => o.text,
            },
        ),
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &body) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    if holds {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering() {
        let v = json!({"a": true, "b": {"c": [1, 2]}, "d": [{"e": null}]});
        assert_eq!(render_text(&v), "a: true\nb:\n  c: [1, 2]\nd:\n  -\n    e: none\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["twosegal", "frobnicate"], &mut out, &mut err), 2);
        assert_eq!(run(["twosegal", "compare", "matrices"], &mut out, &mut err), 2);
        assert!(String::from_utf8_lossy(&err).contains("matrices"));
    }

    #[test]
    fn compare_exit_0() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["twosegal", "compare", "truncated_poly"], &mut out, &mut err), 0);
        assert!(String::from_utf8(out).unwrap().starts_with("truncated_poly:"));
    }
}
