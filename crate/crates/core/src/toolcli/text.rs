use std::collections::BTreeMap;
use std::str::FromStr;

use super::ParseError;

/// A parsed `key = value` file: a kind header followed by unique keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub kind: String,
    pub entries: Vec<(String, String)>,
}

impl Document {
    pub fn new(kind: &str) -> Self {
        Document { kind: kind.to_string(), entries: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    /// Canonical text: header, then one `key = value` line per entry.
    pub fn emit(&self) -> String {
        let mut out = format!("{}\n", self.kind);
        for (k, v) in &self.entries {
            if v.is_empty() {
                out.push_str(&format!("{k} =\n"));
            } else {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        out
    }
}

fn valid_key(k: &str) -> bool {
    !k.is_empty() && k.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

/// Parses the grammar; blank lines and lines starting with `#` are skipped.
pub fn parse_document(src: &str) -> Result<(Document, Reader), ParseError> {
    let mut kind: Option<String> = None;
    let mut doc = Document::new("");
    let mut map = BTreeMap::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if kind.is_none() {
            if t.contains('=') || !valid_key(t) {
                return Err(ParseError::at(line, "expected a format name on the first line"));
            }
            kind = Some(t.to_string());
            continue;
        }
        let Some((k, v)) = t.split_once('=') else {
            return Err(ParseError::at(line, format!("expected `key = value`, got {t:?}")));
        };
        let (k, v) = (k.trim(), v.trim());
        if !valid_key(k) {
            return Err(ParseError::at(line, format!("invalid key {k:?}")));
        }
        if map.insert(k.to_string(), (v.to_string(), line)).is_some() {
            return Err(ParseError::at(line, format!("duplicate key {k}")));
        }
        doc.push(k, v);
    }
    let Some(kind) = kind else {
        return Err(ParseError::at(1, "empty input"));
    };
    doc.kind = kind;
    Ok((doc, Reader { map }))
}

/// Consumes keys of a parsed document; [`Reader::finish`] rejects leftovers.
#[derive(Debug)]
pub struct Reader {
    map: BTreeMap<String, (String, usize)>,
}

impl Reader {
    pub fn opt(&mut self, key: &str) -> Option<(String, usize)> {
        self.map.remove(key)
    }

    pub fn req(&mut self, key: &str) -> Result<(String, usize), ParseError> {
        self.opt(key).ok_or_else(|| ParseError::at(0, format!("missing key {key}")))
    }

    /// Values of `prefix.1`, `prefix.2`, ... up to the first gap.
    pub fn indexed(&mut self, prefix: &str) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        while let Some(v) = self.opt(&format!("{prefix}.{}", out.len() + 1)) {
            out.push(v);
        }
        out
    }

    /// Values of every `prefix.<name>` key, by name.
    pub fn named(&mut self, prefix: &str) -> Vec<(String, String, usize)> {
        let dotted = format!("{prefix}.");
        let keys: Vec<String> = self.map.keys().filter(|k| k.starts_with(&dotted)).cloned().collect();
        keys.into_iter()
            .map(|k| {
                let (v, l) = self.map.remove(&k).expect("listed key");
                (k[dotted.len()..].to_string(), v, l)
            })
            .collect()
    }

    pub fn finish(self) -> Result<(), ParseError> {
        match self.map.iter().min_by_key(|(_, (_, l))| *l) {
            Some((k, (_, l))) => Err(ParseError::at(*l, format!("unknown key {k}"))),
            None => Ok(()),
        }
    }
}

/// Whitespace-separated values of one type.
pub fn list<T: FromStr>(value: &str, line: usize) -> Result<Vec<T>, ParseError> {
    value
        .split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| ParseError::at(line, format!("cannot read {t:?}"))))
        .collect()
}

pub fn one<T: FromStr>(value: &str, line: usize) -> Result<T, ParseError> {
    let v: Vec<T> = list(value, line)?;
    match <[T; 1]>::try_from(v) {
        Ok([x]) => Ok(x),
        Err(_) => Err(ParseError::at(line, format!("expected one value, got {value:?}"))),
    }
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trip_and_errors() {
        let src = "braid\n# note\nstrands = 2\nword = 1 1 1\n";
        let (doc, mut r) = parse_document(src).unwrap();
        assert_eq!(doc.emit(), "braid\nstrands = 2\nword = 1 1 1\n");
        assert_eq!(r.req("strands").unwrap().0, "2");
        assert_eq!(r.finish().unwrap_err().line, 4);
        assert_eq!(parse_document("braid\na = 1\na = 2\n").unwrap_err().line, 3);
        assert!(parse_document("braid\nnonsense\n").is_err());
        assert_eq!(list::<i32>("1 -2 3", 1).unwrap(), vec![1, -2, 3]);
        assert!(one::<i32>("1 2", 7).is_err());
    }
}
