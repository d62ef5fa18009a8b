//! Instance files.
//!
//! A file is a JSON object with keys in this order:
//!
//! ```text
//! kind   "knapsack" | "standard"
//! m, n
//! A      rows
//! b, c
//! lo     standard only
//! u      upper bounds
//! meta   optional: seed, generator, known_opt, delta
//! ```
//!
//! [`InstanceFile::to_canonical`] writes one key per line with two-space
//! indentation and every array on a single line; parsing canonical text and
//! writing it back reproduces the bytes.

use std::fmt::Write as _;
use std::path::Path;

use deltakp::{Instance, IntMatrix, KnapsackInstance, StandardFormInstance};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub seed: Option<u64>,
    /// Free-form generator description, e.g. `knapsack m=2 n=6 max_entry=4`.
    pub generator: Option<String>,
    pub known_opt: Option<i64>,
    pub delta: Option<u64>,
}

impl Meta {
    fn is_empty(&self) -> bool {
        *self == Meta::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub meta: Meta,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    kind: String,
    m: usize,
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
    b: Vec<i64>,
    c: Vec<i64>,
    lo: Option<Vec<i64>>,
    u: Vec<i64>,
    meta: Option<Meta>,
}

impl InstanceFile {
    pub fn new(instance: impl Into<Instance>) -> Self {
        InstanceFile { instance: instance.into(), meta: Meta::default() }
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if raw.a.len() != raw.m {
            return Err(CliError::Parse(format!("A has {} rows, m = {}", raw.a.len(), raw.m)));
        }
        if let Some(row) = raw.a.iter().find(|r| r.len() != raw.n) {
            return Err(CliError::Parse(format!("A row of length {}, n = {}", row.len(), raw.n)));
        }
        if raw.m == 0 || raw.n == 0 {
            return Err(CliError::Parse("m and n must be positive".into()));
        }
        let a = IntMatrix::from_rows(&raw.a);
        let instance = match (raw.kind.as_str(), raw.lo) {
            ("knapsack", None) => Instance::Knapsack(KnapsackInstance::new(a, raw.b, raw.c, raw.u)?),
            ("knapsack", Some(_)) => return Err(CliError::Parse("knapsack instances take no `lo`".into())),
            ("standard", Some(lo)) => Instance::Standard(StandardFormInstance::new(a, raw.b, raw.c, lo, raw.u)?),
            ("standard", None) => return Err(CliError::Parse("standard instances need `lo`".into())),
            (k, _) => return Err(CliError::Parse(format!("unknown kind `{k}`"))),
        };
        Ok(InstanceFile { instance, meta: raw.meta.unwrap_or_default() })
    }

    pub fn kind(&self) -> &'static str {
        match self.instance {
            Instance::Knapsack(_) => "knapsack",
            Instance::Standard(_) => "standard",
        }
    }

    pub fn to_canonical(&self) -> String {
        let a = self.instance.a();
        let mut s = String::from("{\n");
        let _ = writeln!(s, "  \"kind\": \"{}\",", self.kind());
        let _ = writeln!(s, "  \"m\": {},", a.rows());
        let _ = writeln!(s, "  \"n\": {},", a.cols());
        let rows: Vec<String> = a.to_rows().iter().map(|r| array(r)).collect();
        let _ = writeln!(s, "  \"A\": [{}],", rows.join(", "));
        let (b, c, lo, u) = match &self.instance {
            Instance::Knapsack(k) => (k.b(), k.c(), None, k.u()),
            Instance::Standard(st) => (st.b(), st.c(), Some(st.lo()), st.up()),
        };
        let _ = writeln!(s, "  \"b\": {},", array(b));
        let _ = writeln!(s, "  \"c\": {},", array(c));
        if let Some(lo) = lo {
            let _ = writeln!(s, "  \"lo\": {},", array(lo));
        }
        if self.meta.is_empty() {
            let _ = writeln!(s, "  \"u\": {}", array(u));
        } else {
            let _ = writeln!(s, "  \"u\": {},", array(u));
            let mut fields = Vec::new();
            if let Some(v) = self.meta.seed {
                fields.push(format!("\"seed\": {v}"));
            }
            if let Some(g) = &self.meta.generator {
                fields.push(format!("\"generator\": {}", serde_json::to_string(g).expect("string")));
            }
            if let Some(v) = self.meta.known_opt {
                fields.push(format!("\"known_opt\": {v}"));
            }
            if let Some(v) = self.meta.delta {
                fields.push(format!("\"delta\": {v}"));
            }
            let _ = writeln!(s, "  \"meta\": {{{}}}", fields.join(", "));
        }
        s.push_str("}\n");
        s
    }
}

fn array(v: &[i64]) -> String {
    let items: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE_ITEMS: &str = r#"{
  "kind": "knapsack",
  "m": 1,
  "n": 3,
  "A": [[3, 4, 5]],
  "b": [10],
  "c": [3, 4, 5],
  "u": [1, 1, 1],
  "meta": {"known_opt": 9, "delta": 5}
}
"#;

    #[test]
    fn canonical_round_trip() {
        let f = InstanceFile::parse(THREE_ITEMS).unwrap();
        assert_eq!(f.meta.known_opt, Some(9));
        assert_eq!(f.to_canonical(), THREE_ITEMS);
    }

    #[test]
    fn standard_round_trip_without_meta() {
        let text = "{\n  \"kind\": \"standard\",\n  \"m\": 1,\n  \"n\": 2,\n  \"A\": [[1, -1]],\n  \"b\": [0],\n  \"c\": [1, 0],\n  \"lo\": [-2, 0],\n  \"u\": [2, 2]\n}\n";
        let f = InstanceFile::parse(text).unwrap();
        assert_eq!(f.kind(), "standard");
        assert_eq!(f.to_canonical(), text);
    }

    #[test]
    fn loose_formatting_canonicalizes() {
        let loose = r#"{"kind":"knapsack","m":1,"n":3,"A":[[3,4,5]],"b":[10],"c":[3,4,5],"u":[1,1,1],"meta":{"delta":5,"known_opt":9}}"#;
        assert_eq!(InstanceFile::parse(loose).unwrap().to_canonical(), THREE_ITEMS);
    }

    #[test]
    fn generator_strings_are_escaped() {
        let mut f = InstanceFile::parse(THREE_ITEMS).unwrap();
        f.meta.generator = Some("a \"quoted\" name".into());
        let back = InstanceFile::parse(&f.to_canonical()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(InstanceFile::parse("{"), Err(CliError::Parse(_))));
        let wrong_m = THREE_ITEMS.replace("\"m\": 1", "\"m\": 2");
        assert!(matches!(InstanceFile::parse(&wrong_m), Err(CliError::Parse(_))));
        let negative = THREE_ITEMS.replace("\"b\": [10]", "\"b\": [-1]");
        assert!(matches!(InstanceFile::parse(&negative), Err(CliError::Invalid(_))));
        let extra = THREE_ITEMS.replace("\"u\"", "\"lo\": [0, 0, 0],\n  \"u\"");
        assert!(matches!(InstanceFile::parse(&extra), Err(CliError::Parse(_))));
    }
}
