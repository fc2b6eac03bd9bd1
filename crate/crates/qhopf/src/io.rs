//! Presentation files: a JSON document holding the structure constants of a
//! quasi-Hopf algebra and an optional R-matrix.
//!
//! The canonical form has a fixed key order, one sparse entry per line
//! sorted by index tuple, no explicit zeros, and every scalar written as a
//! string in lowest terms. [`Presentation::to_json`] always emits it and
//! [`Presentation::from_json`] accepts any key order or entry order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::algebra::{Algebra, Coalgebra};
use crate::error::{Error, Result};
use crate::linear::CoordVector;
use crate::quasihopf::{map_tensor, QuasiHopf};
use crate::scalar::{Field, Scalar};
use crate::tensor::SparseTensor;

pub const FORMAT_VERSION: u32 = 1;

/// A quasi-Hopf algebra with an optional R-matrix, as stored in a file.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub hopf: QuasiHopf,
    pub r_matrix: Option<SparseTensor>,
    pub labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format_version: u32,
    field: RawField,
    dim: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    mult: Vec<(Vec<usize>, String)>,
    unit: Vec<String>,
    comult: Vec<(Vec<usize>, String)>,
    counit: Vec<String>,
    phi: Vec<(Vec<usize>, String)>,
    antipode: Vec<(Vec<usize>, String)>,
    alpha: Vec<String>,
    beta: Vec<String>,
    #[serde(default)]
    r_matrix: Option<Vec<(Vec<usize>, String)>>,
}

fn field_of(raw: &RawField) -> Result<Field> {
    match raw {
        RawField::Name(s) if s == "Q" => Ok(Field::Q),
        RawField::Name(s) => Err(Error::Invalid(format!("unknown field \"{s}\""))),
        RawField::Prime { fp } => Field::fp(*fp),
    }
}

fn sparse(name: &str, field: &Field, dim: usize, arity: usize, entries: &[(Vec<usize>, String)]) -> Result<SparseTensor> {
    let mut seen = BTreeMap::new();
    for (idx, v) in entries {
        if idx.len() != arity {
            return Err(Error::Invalid(format!("{name}: index {idx:?} has arity {}, expected {arity}", idx.len())));
        }
        if idx.iter().any(|&i| i >= dim) {
            return Err(Error::Invalid(format!("{name}: index out of bounds {idx:?} for dimension {dim}")));
        }
        let v = Scalar::parse_canonical(field, v).map_err(|e| Error::Invalid(format!("{name}: {e}")))?;
        if v.is_zero() {
            return Err(Error::Invalid(format!("{name}: explicit zero entry at {idx:?}")));
        }
        if seen.insert(idx.clone(), v).is_some() {
            return Err(Error::Invalid(format!("{name}: duplicate index {idx:?}")));
        }
    }
    let mut t = SparseTensor::zero(vec![dim; arity]);
    for (idx, v) in seen {
        t.add_idx(&idx, v);
    }
    Ok(t)
}

fn dense(name: &str, field: &Field, dim: usize, v: &[String]) -> Result<CoordVector> {
    if v.len() != dim {
        return Err(Error::Invalid(format!("{name}: {} coordinates for dimension {dim}", v.len())));
    }
    v.iter().map(|s| Scalar::parse_canonical(field, s).map_err(|e| Error::Invalid(format!("{name}: {e}")))).collect()
}

impl Presentation {
    pub fn from_json(text: &str) -> Result<Presentation> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("schema violation: {e}")))?;
        if raw.format_version != FORMAT_VERSION {
            return Err(Error::Invalid(format!("unsupported format_version {}", raw.format_version)));
        }
        let f = field_of(&raw.field)?;
        let n = raw.dim;
        if n == 0 {
            return Err(Error::Invalid("dim must be positive".into()));
        }
        if raw.labels.as_ref().is_some_and(|l| l.len() != n) {
            return Err(Error::Invalid("labels: one label per basis element required".into()));
        }
        let alg = Algebra::new_unchecked(f, sparse("mult", &f, n, 3, &raw.mult)?, dense("unit", &f, n, &raw.unit)?)?;
        let coalg = Coalgebra::new(f, sparse("comult", &f, n, 3, &raw.comult)?, dense("counit", &f, n, &raw.counit)?)?;
        let antipode = sparse("antipode", &f, n, 2, &raw.antipode)?.to_matrix(f).transpose();
        let hopf = QuasiHopf::new(
            alg,
            coalg,
            sparse("phi", &f, n, 3, &raw.phi)?,
            antipode,
            dense("alpha", &f, n, &raw.alpha)?,
            dense("beta", &f, n, &raw.beta)?,
        )?;
        let r_matrix = raw.r_matrix.as_deref().map(|e| sparse("r_matrix", &f, n, 2, e)).transpose()?;
        Ok(Presentation { hopf, r_matrix, labels: raw.labels })
    }

    /// The canonical text, ending in a newline.
    pub fn to_json(&self) -> String {
        let h = &self.hopf;
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"format_version\": {FORMAT_VERSION},");
        let field = match h.field {
            Field::Q => "\"Q\"".to_string(),
            Field::Fp(p) => format!("{{\"Fp\": {p}}}"),
        };
        let _ = writeln!(out, "  \"field\": {field},");
        let _ = writeln!(out, "  \"dim\": {},", h.dim);
        if let Some(l) = &self.labels {
            let _ = writeln!(out, "  \"labels\": {},", serde_json::to_string(l).expect("strings serialize").replace("\",\"", "\", \""));
        }
        let mut parts = vec![
            tensor_field("mult", &h.alg.mult),
            vector_field("unit", &h.alg.unit),
            tensor_field("comult", &h.coalg.comult),
            vector_field("counit", &h.coalg.counit),
            tensor_field("phi", &h.phi),
            tensor_field("antipode", &map_tensor(&h.antipode)),
            vector_field("alpha", &h.alpha),
            vector_field("beta", &h.beta),
        ];
        if let Some(r) = &self.r_matrix {
            parts.push(tensor_field("r_matrix", r));
        }
        out.push_str(&parts.join(",\n"));
        out.push_str("\n}\n");
        out
    }

    pub fn read(path: &std::path::Path) -> Result<Presentation> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        Presentation::from_json(&text)
    }
}

fn quoted(v: &Scalar) -> String {
    format!("\"{}\"", v.to_canonical())
}

fn vector_field(name: &str, v: &[Scalar]) -> String {
    let items: Vec<String> = v.iter().map(quoted).collect();
    format!("  \"{name}\": [{}]", items.join(", "))
}

fn tensor_field(name: &str, t: &SparseTensor) -> String {
    // iteration order is the flat index, which is lexicographic in the index tuple
    let lines: Vec<String> = t
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| {
            let idx: Vec<String> = t.unflat(k).iter().map(usize::to_string).collect();
            format!("    [[{}], {}]", idx.join(", "), quoted(v))
        })
        .collect();
    if lines.is_empty() {
        format!("  \"{name}\": []")
    } else {
        format!("  \"{name}\": [\n{}\n  ]", lines.join(",\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cocycle_dual, group_algebra, sweedler_h4};

    #[test]
    fn canonical_round_trip() {
        let f7 = Field::fp(7).unwrap();
        for p in [
            group_algebra(Field::Q, 2).unwrap(),
            group_algebra(f7, 3).unwrap(),
            cocycle_dual(Field::Q, 2).unwrap(),
            sweedler_h4(Field::Q, Some(Field::Q.ratio(1, 3).unwrap())).unwrap(),
        ] {
            let text = p.to_json();
            let back = Presentation::from_json(&text).unwrap();
            assert_eq!(back.to_json(), text);
            assert_eq!(back.hopf.alg.mult, p.hopf.alg.mult);
            assert_eq!(back.hopf.antipode, p.hopf.antipode);
        }
    }

    #[test]
    fn kz2_file_text() {
        let text = group_algebra(Field::Q, 2).unwrap().to_json();
        assert!(text.starts_with("{\n  \"format_version\": 1,\n  \"field\": \"Q\",\n  \"dim\": 2,\n  \"labels\": [\"g^0\", \"g^1\"],\n"));
        assert!(text.contains("  \"mult\": [\n    [[0, 0, 0], \"1\"],\n    [[0, 1, 1], \"1\"],\n    [[1, 0, 1], \"1\"],\n    [[1, 1, 0], \"1\"]\n  ],\n"));
        assert!(text.contains("  \"antipode\": [\n    [[0, 0], \"1\"],\n    [[1, 1], \"1\"]\n  ],\n"));
    }

    fn edit(from: &str, to: &str) -> Result<Presentation> {
        let text = group_algebra(Field::Q, 2).unwrap().to_json();
        assert!(text.contains(from));
        Presentation::from_json(&text.replacen(from, to, 1))
    }

    #[test]
    fn rejects_malformed_files() {
        let msg = |r: Result<Presentation>| r.unwrap_err().to_string();
        assert!(msg(edit("[[1, 1, 0], \"1\"]", "[[1, 1, 5], \"1\"]")).contains("index out of bounds"));
        assert!(msg(edit("[[1, 1, 0], \"1\"]", "[[1, 1, 0], \"2/4\"]")).contains("non-canonical rational"));
        assert!(msg(edit("[[1, 1, 0], \"1\"]", "[[1, 0, 1], \"1\"]")).contains("duplicate index"));
        assert!(msg(edit("[[1, 1, 0], \"1\"]", "[[1, 1], \"1\"]")).contains("arity"));
        assert!(msg(edit("\"dim\": 2", "\"dims\": 2")).contains("schema violation"));
        assert!(msg(edit("\"field\": \"Q\"", "\"field\": {\"Fp\": 4}")).contains("prime"));
        assert!(msg(edit("\"counit\": [\"1\", \"1\"]", "\"counit\": [\"1\"]")).contains("counit"));
    }

    #[test]
    fn accepts_any_entry_order() {
        let a = edit("[[0, 0, 0], \"1\"],\n    [[0, 1, 1], \"1\"]", "[[0, 1, 1], \"1\"],\n    [[0, 0, 0], \"1\"]").unwrap();
        assert_eq!(a.to_json(), group_algebra(Field::Q, 2).unwrap().to_json());
    }
}
