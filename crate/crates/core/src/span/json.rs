use std::sync::Arc;

use serde_json::{json, Map, Value as Json};

use crate::jsonio::{pretty, Doc, LoadError};

use super::{FinSet, FiniteSpan, SpanMorphism, Value};

impl Value {
    /// Atoms are strings, words are string arrays, pairs are `{"pair": [a, b]}`.
    pub fn to_json(&self) -> Json {
        match self {
            Value::Atom(a) => Json::String(a.to_string()),
            Value::Word(w) => Json::Array(w.iter().map(|s| Json::String(s.to_string())).collect()),
            Value::Pair(a, b) => json!({ "pair": [a.to_json(), b.to_json()] }),
        }
    }

    pub fn from_json(v: &Json) -> Option<Value> {
        match v {
            Json::String(s) => Some(Value::atom(s)),
            Json::Array(items) => {
                let words: Option<Vec<&str>> = items.iter().map(Json::as_str).collect();
                Some(Value::word(&words?))
            }
            Json::Object(o) if o.len() == 1 => {
                let pair = o.get("pair")?.as_array()?;
                match pair.as_slice() {
                    [a, b] => Some(Value::pair(Value::from_json(a)?, Value::from_json(b)?)),
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

impl FinSet {
    pub fn to_json(&self) -> Json {
        Json::Array(self.elements().iter().map(Value::to_json).collect())
    }

    pub(crate) fn from_json_in(doc: &Doc, v: &Json, key: &str) -> Result<FinSet, LoadError> {
        let items = v
            .as_array()
            .ok_or_else(|| doc.err(key, "expected an array of elements"))?;
        let values = items
            .iter()
            .enumerate()
            .map(|(k, x)| Value::from_json(x).ok_or_else(|| doc.err(key, format!("element {k} is malformed"))))
            .collect::<Result<Vec<_>, _>>()?;
        FinSet::new(values).map_err(|e| doc.err(key, e.to_string()))
    }
}

impl FiniteSpan {
    pub fn to_json_value(&self) -> Json {
        json!({
            "src": self.src.to_json(),
            "tgt": self.tgt.to_json(),
            "apex": self.apex.to_json(),
            "left": self.left,
            "right": self.right,
        })
    }

    /// `{"src", "tgt", "apex", "left", "right"}`.
    pub fn to_json(&self) -> String {
        pretty(&self.to_json_value())
    }

    pub fn from_json(raw: &str) -> Result<FiniteSpan, LoadError> {
        let doc = Doc::parse(raw)?;
        let root = doc.root()?;
        Self::from_json_in(&doc, root)
    }

    pub(crate) fn from_json_in(doc: &Doc, obj: &Map<String, Json>) -> Result<FiniteSpan, LoadError> {
        let src = FinSet::from_json_in(doc, doc.field(obj, "src")?, "src")?;
        let tgt = FinSet::from_json_in(doc, doc.field(obj, "tgt")?, "tgt")?;
        let apex = FinSet::from_json_in(doc, doc.field(obj, "apex")?, "apex")?;
        for (key, set) in [("src", &src), ("tgt", &tgt)] {
            if !set.is_object() {
                return Err(doc.err(key, "feet must consist of words"));
            }
        }
        let left = doc.indices_of(doc.field(obj, "left")?, "left")?;
        let right = doc.indices_of(doc.field(obj, "right")?, "right")?;
        FiniteSpan::new(Arc::new(src), Arc::new(tgt), Arc::new(apex), left, right).map_err(|e| {
            let key = if e.to_string().contains("length") { "apex" } else { "left" };
            doc.err(key, e.to_string())
        })
    }
}

impl SpanMorphism {
    /// The apex map together with both apexes; the spans themselves are
    /// recomputed by whoever owns the cell.
    pub fn to_json_value(&self) -> Json {
        json!({
            "from": self.from.apex.to_json(),
            "to": self.to.apex.to_json(),
            "map": self.map,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip() {
        let v = Value::pair(
            Value::pair(Value::atom("(g,g)"), Value::word(&["a", "b"])),
            Value::unit(),
        );
        assert_eq!(Value::from_json(&v.to_json()), Some(v));
        assert_eq!(Value::from_json(&json!({"pair": [1, "a"]})), None);
    }

    #[test]
    fn span_round_trip() {
        let x = Arc::new(FinSet::of_letters(&["p", "q"]));
        let apex = Arc::new(FinSet::atoms(&["<a, b>", "c"]).unwrap());
        let s = FiniteSpan::new(x.clone(), x, apex, vec![0, 1], vec![1, 1]).unwrap();
        let text = s.to_json();
        let back = FiniteSpan::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn bad_leg_is_rejected() {
        let raw = r#"{"src": [["p"]], "tgt": [["p"]], "apex": ["a"], "left": [3], "right": [0]}"#;
        assert!(FiniteSpan::from_json(raw).is_err());
    }
}
