//! Shared helpers for the JSON document formats: parse errors that carry a
//! line number and the offending key, and small typed accessors.

use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoadError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: key \"{key}\": {message}")]
    Schema {
        line: usize,
        key: String,
        message: String,
    },
}

impl LoadError {
    pub fn line(&self) -> usize {
        match self {
            LoadError::Syntax { line, .. } | LoadError::Schema { line, .. } => *line,
        }
    }
}

/// A parsed document together with its source text, so schema errors can
/// point at the line where a key appears.
pub struct Doc<'a> {
    raw: &'a str,
    pub value: Value,
}

impl<'a> Doc<'a> {
    pub fn parse(raw: &'a str) -> Result<Self, LoadError> {
        let value = serde_json::from_str(raw).map_err(|e| LoadError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Ok(Self { raw, value })
    }

    /// Line of the first occurrence of `"key"`, or 1 when absent.
    pub fn line_of(&self, key: &str) -> usize {
        let needle = serde_json::to_string(key).unwrap_or_default();
        match self.raw.find(&needle) {
            Some(pos) => self.raw[..pos].matches('\n').count() + 1,
            None => 1,
        }
    }

    /// Line of the first occurrence of `"inner"` after `"outer"`.
    pub fn line_of_within(&self, outer: &str, inner: &str) -> usize {
        let o = serde_json::to_string(outer).unwrap_or_default();
        let i = serde_json::to_string(inner).unwrap_or_default();
        let start = self.raw.find(&o).unwrap_or(0);
        match self.raw[start..].find(&i) {
            Some(pos) => self.raw[..start + pos].matches('\n').count() + 1,
            None => self.line_of(outer),
        }
    }

    pub fn err(&self, key: &str, message: impl Into<String>) -> LoadError {
        LoadError::Schema {
            line: self.line_of(key),
            key: key.to_string(),
            message: message.into(),
        }
    }

    pub fn err_within(&self, outer: &str, inner: &str, message: impl Into<String>) -> LoadError {
        LoadError::Schema {
            line: self.line_of_within(outer, inner),
            key: format!("{outer}.{inner}"),
            message: message.into(),
        }
    }

    pub fn root(&self) -> Result<&Map<String, Value>, LoadError> {
        self.value.as_object().ok_or(LoadError::Schema {
            line: 1,
            key: String::new(),
            message: "document must be an object".into(),
        })
    }

    pub fn field<'v>(&self, obj: &'v Map<String, Value>, key: &str) -> Result<&'v Value, LoadError> {
        obj.get(key).ok_or_else(|| LoadError::Schema {
            line: 1,
            key: key.to_string(),
            message: "missing".into(),
        })
    }

    pub fn usize_of(&self, v: &Value, key: &str) -> Result<usize, LoadError> {
        v.as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| self.err(key, "expected a non-negative integer"))
    }

    pub fn strings_of(&self, v: &Value, key: &str) -> Result<Vec<String>, LoadError> {
        let arr = v.as_array().ok_or_else(|| self.err(key, "expected an array of strings"))?;
        arr.iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| self.err(key, "expected an array of strings"))
            })
            .collect()
    }

    pub fn indices_of(&self, v: &Value, key: &str) -> Result<Vec<usize>, LoadError> {
        let arr = v.as_array().ok_or_else(|| self.err(key, "expected an array of indices"))?;
        arr.iter().map(|x| self.usize_of(x, key)).collect()
    }
}

/// JSON string literal for `s`.
pub fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// `["a", "b"]` on one line.
pub fn string_list(items: &[String]) -> String {
    let inner: Vec<String> = items.iter().map(|s| quote(s)).collect();
    format!("[{}]", inner.join(", "))
}

/// `[0, 1, 2]` on one line.
pub fn index_list(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(usize::to_string).collect();
    format!("[{}]", inner.join(", "))
}

/// Pretty JSON with two-space indentation and a trailing newline. Object
/// keys keep the order of the value, which for reports is sorted.
pub fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s
}
