//! JSON code descriptors accepted by the command-line tool.
//!
//! ```json
//! {"polar": {"n": 64, "k": 48, "eps": "3/10"}}
//! {"crc": {"g": "x^8+x^2+1", "N": 48}}
//! {"bch": {"m": 8, "t": 2, "N": 48, "primitive_poly": "x^8+x^4+x^3+x^2+1"}}
//! {"concat": {"outer": {...}, "inner": {...}, "interleaver": "identity" | {"seed": 7}}}
//! {"matrix_file": "g.txt"}
//! ```
//!
//! The outer-code file format `{"kind": "crc" | "bch", ...}` is accepted too.
//! Relative matrix paths resolve against the descriptor file's directory.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::code::LinearCode;
use crate::cyclic::{CoordinateOrder, Gf2Poly, Gf2mField, OuterCodeJson, OuterCodeSpec};
use crate::ensemble::{concat_code, Interleaver};
use crate::error::{Error, Result};
use crate::exact::parse_rational;
use crate::gf2::BitMatrix;
use crate::polar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarParams {
    pub n: usize,
    pub k: usize,
    pub eps: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrcParams {
    pub g: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub order: CoordinateOrder,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BchParams {
    pub m: u32,
    pub t: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub primitive_poly: Option<String>,
    #[serde(default)]
    pub order: CoordinateOrder,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InterleaverSpec {
    Named(String),
    Seeded { seed: u64 },
}

impl InterleaverSpec {
    pub fn resolve(&self) -> Result<Interleaver> {
        match self {
            InterleaverSpec::Named(s) if s == "identity" => Ok(Interleaver::Identity),
            InterleaverSpec::Named(s) => Err(Error::Parse(format!(
                "interleaver: expected \"identity\" or {{\"seed\": N}}, got {s:?}"
            ))),
            InterleaverSpec::Seeded { seed } => Ok(Interleaver::Seed(*seed)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcatParams {
    pub outer: Box<CodeDescriptor>,
    pub inner: Box<CodeDescriptor>,
    #[serde(default = "identity_spec")]
    pub interleaver: InterleaverSpec,
}

fn identity_spec() -> InterleaverSpec {
    InterleaverSpec::Named("identity".into())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeDescriptor {
    Polar(PolarParams),
    Crc(CrcParams),
    Bch(BchParams),
    Concat(ConcatParams),
    MatrixFile(PathBuf),
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum Raw {
    Polar(PolarParams),
    Crc(CrcParams),
    Bch(BchParams),
    Concat(ConcatParams),
    MatrixFile(PathBuf),
}

impl<'de> Deserialize<'de> for CodeDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CodeDescriptor::from_value(Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A descriptor together with the bytes it was read from.
#[derive(Clone, Debug)]
pub struct LoadedDescriptor {
    pub descriptor: CodeDescriptor,
    pub base_dir: PathBuf,
    pub source: String,
}

fn field_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("malformed code descriptor: {e}"))
}

impl CodeDescriptor {
    /// Parses descriptor JSON, accepting the `{"kind": ...}` outer-code form.
    pub fn from_value(v: Value) -> Result<Self> {
        if let Some(obj) = v.as_object() {
            if obj.contains_key("kind") {
                let doc: OuterCodeJson = serde_json::from_value(v).map_err(field_error)?;
                return Ok(match doc.build()?.bch {
                    Some((m, t, poly)) => CodeDescriptor::Bch(BchParams {
                        m,
                        t,
                        n: doc.n,
                        primitive_poly: Some(poly.to_string()),
                        order: doc.order,
                    }),
                    None => CodeDescriptor::Crc(CrcParams { g: doc.g, n: doc.n, order: doc.order }),
                });
            }
            if obj.len() != 1 {
                return Err(Error::Parse(format!(
                    "code descriptor must have exactly one of polar/crc/bch/concat/matrix_file, found {:?}",
                    obj.keys().collect::<Vec<_>>()
                )));
            }
        }
        Ok(match serde_json::from_value::<Raw>(v).map_err(field_error)? {
            Raw::Polar(p) => CodeDescriptor::Polar(p),
            Raw::Crc(c) => CodeDescriptor::Crc(c),
            Raw::Bch(b) => CodeDescriptor::Bch(b),
            Raw::Concat(c) => CodeDescriptor::Concat(c),
            Raw::MatrixFile(p) => CodeDescriptor::MatrixFile(p),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_value(serde_json::from_str(text).map_err(field_error)?)
    }

    pub fn build(&self, base_dir: &Path) -> Result<LinearCode> {
        match self {
            CodeDescriptor::Polar(p) => polar::systematic_polar_code(p.n, p.k, &parse_rational(&p.eps)?),
            CodeDescriptor::Crc(c) => OuterCodeSpec::crc(Gf2Poly::parse(&c.g)?, c.n)?.with_order(c.order).code(),
            CodeDescriptor::Bch(b) => {
                let field = match &b.primitive_poly {
                    Some(p) => Gf2mField::new(b.m, Gf2Poly::parse(p)?)?,
                    None => Gf2mField::default_for(b.m)?,
                };
                OuterCodeSpec::bch(&field, b.t, b.n)?.with_order(b.order).code()
            }
            CodeDescriptor::Concat(c) => {
                let outer = c.outer.build(base_dir)?;
                let inner = c.inner.build(base_dir)?;
                let pi = c.interleaver.resolve()?.permutation(outer.n());
                concat_code(&outer, &pi, &inner)
            }
            CodeDescriptor::MatrixFile(p) => {
                let path = if p.is_absolute() { p.clone() } else { base_dir.join(p) };
                let text = fs::read_to_string(&path).map_err(|e| {
                    Error::Parse(format!("matrix_file {}: {e}", path.display()))
                })?;
                LinearCode::from_generator(&BitMatrix::from_text(&text)?)
            }
        }
    }

    /// Outer and inner parts of a concatenation descriptor.
    pub fn concat_parts(&self) -> Option<(&CodeDescriptor, &CodeDescriptor, &InterleaverSpec)> {
        match self {
            CodeDescriptor::Concat(c) => Some((&c.outer, &c.inner, &c.interleaver)),
            _ => None,
        }
    }
}

impl LoadedDescriptor {
    /// Reads inline JSON (anything starting with `{`) or a descriptor file.
    pub fn load(arg: &str) -> Result<Self> {
        let (source, base_dir) = if arg.trim_start().starts_with('{') {
            (arg.to_string(), PathBuf::from("."))
        } else {
            let text = fs::read_to_string(arg)
                .map_err(|e| Error::Parse(format!("descriptor file {arg}: {e}")))?;
            let dir = Path::new(arg).parent().map(Path::to_path_buf).unwrap_or_default();
            (text, dir)
        };
        Ok(LoadedDescriptor { descriptor: CodeDescriptor::from_json(&source)?, base_dir, source })
    }

    pub fn build(&self) -> Result<LinearCode> {
        self.descriptor.build(&self.base_dir)
    }

    /// SHA-256 of the descriptor text as given.
    pub fn sha256(&self) -> String {
        crate::io::sha256_hex(self.source.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_variant() {
        let d = CodeDescriptor::from_json(r#"{"polar":{"n":64,"k":48,"eps":"3/10"}}"#).unwrap();
        assert_eq!(d.build(Path::new(".")).unwrap().k(), 48);
        let d = CodeDescriptor::from_json(r#"{"crc":{"g":"x^8+x^2+1","N":48}}"#).unwrap();
        assert_eq!(d.build(Path::new(".")).unwrap().k(), 40);
        let d = CodeDescriptor::from_json(r#"{"bch":{"m":8,"t":2,"N":48}}"#).unwrap();
        assert_eq!(d.build(Path::new(".")).unwrap().k(), 32);
        let d = CodeDescriptor::from_json(
            r#"{"concat":{"outer":{"crc":{"g":"x^8+x^2+1","N":48}},
                          "inner":{"polar":{"n":64,"k":48,"eps":"0.3"}},
                          "interleaver":{"seed":3}}}"#,
        )
        .unwrap();
        let c = d.build(Path::new(".")).unwrap();
        assert_eq!((c.n(), c.k()), (64, 40));
        assert!(d.concat_parts().is_some());
        let d = CodeDescriptor::from_json(
            r#"{"concat":{"outer":{"kind":"crc","g":"x^8+x^2+1","N":48},
                          "inner":{"polar":{"n":64,"k":48,"eps":"3/10"}}}}"#,
        )
        .unwrap();
        assert_eq!(d.build(Path::new(".")).unwrap().k(), 40);
        let d = CodeDescriptor::from_json(r#"{"kind":"bch","N":48,"m":8,"t":1}"#).unwrap();
        assert!(matches!(d, CodeDescriptor::Bch(ref b) if b.t == 1));
    }

    #[test]
    fn field_level_errors() {
        let e = CodeDescriptor::from_json(r#"{"polar":{"n":64,"k":48}}"#).unwrap_err();
        assert!(e.to_string().contains("eps"), "{e}");
        let e = CodeDescriptor::from_json(r#"{"crc":{"g":"x^8+1","N":48,"bogus":1}}"#).unwrap_err();
        assert!(e.to_string().contains("bogus"), "{e}");
        assert!(CodeDescriptor::from_json(r#"{"polar":{"n":4,"k":2,"eps":"1/2"},"crc":{}}"#).is_err());
        let d = CodeDescriptor::from_json(
            r#"{"concat":{"outer":{"crc":{"g":"x+1","N":3}},"inner":{"polar":{"n":4,"k":3,"eps":"1/2"}},"interleaver":"random"}}"#,
        )
        .unwrap();
        assert!(d.build(Path::new(".")).is_err());
    }
}
