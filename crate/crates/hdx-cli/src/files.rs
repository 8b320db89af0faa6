//! JSON file formats for complexes and cochains, with rationals as
//! canonical `"p/q"` strings.

use serde::{Deserialize, Serialize};

use hdx_core::cochain::Cochain;
use hdx_core::complex::SimplicialComplex;
use hdx_core::face::Face;
use hdx_core::group::FiniteAbelianGroup;
use hdx_core::ratio::{self, Ratio};

/// A parse or validation problem with field context.
#[derive(Debug)]
pub struct FileError(pub String);

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for FileError {}

fn err<T>(msg: impl Into<String>) -> Result<T, FileError> {
    Err(FileError(msg.into()))
}

/// Accepts a rational as either a canonical string ("2/3", "1") or a plain
/// JSON integer.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Int(i64),
    Str(String),
}

impl WeightSpec {
    pub fn to_ratio(&self, context: &str) -> Result<Ratio, FileError> {
        match self {
            WeightSpec::Int(n) => Ok(ratio::int(*n)),
            WeightSpec::Str(s) => match ratio::parse(s) {
                Some(r) => Ok(r),
                None => err(format!("{context}: invalid rational '{s}'")),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopFaceEntry {
    pub vertices: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightSpec>,
}

/// On-disk complex: named weighted top faces (weights default to uniform).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub name: String,
    pub top_faces: Vec<TopFaceEntry>,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<ComplexFile, FileError> {
        serde_json::from_str(text).map_err(|e| FileError(format!("complex file: {e}")))
    }

    /// Canonical serialization: weights always written as canonical
    /// rational strings.
    pub fn to_canonical_json(&self) -> Result<String, FileError> {
        let mut canonical = self.clone();
        for (i, entry) in canonical.top_faces.iter_mut().enumerate() {
            let w = match &entry.weight {
                Some(spec) => spec.to_ratio(&format!("top_faces[{i}].weight"))?,
                None => ratio::int(1),
            };
            entry.weight = Some(WeightSpec::Str(w.to_string()));
        }
        serde_json::to_string_pretty(&canonical)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| FileError(format!("serialize complex: {e}")))
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, FileError> {
        let mut tops = Vec::new();
        for (i, entry) in self.top_faces.iter().enumerate() {
            let face = Face::new(entry.vertices.clone())
                .map_err(|e| FileError(format!("top_faces[{i}].vertices: {e}")))?;
            let weight = match &entry.weight {
                Some(spec) => {
                    let w = spec.to_ratio(&format!("top_faces[{i}].weight"))?;
                    if !ratio::is_positive(&w) {
                        return err(format!("top_faces[{i}].weight: must be positive, got {w}"));
                    }
                    w
                }
                None => ratio::int(1),
            };
            tops.push((face, weight));
        }
        SimplicialComplex::build(tops).map_err(|e| FileError(format!("complex file: {e}")))
    }

    /// Generator specs: `complete:n:d`, `two_triangles`,
    /// `two_triangles_weighted`, `bowtie`.
    pub fn generate(spec: &str) -> Result<ComplexFile, FileError> {
        let complex = match spec {
            "two_triangles" => SimplicialComplex::two_triangles(),
            "two_triangles_weighted" => SimplicialComplex::two_triangles_weighted(),
            "bowtie" => SimplicialComplex::bowtie(),
            other => {
                let parts: Vec<&str> = other.split(':').collect();
                if parts.len() == 3 && parts[0] == "complete" {
                    let n: u32 = parts[1]
                        .parse()
                        .map_err(|_| FileError(format!("bad generator '{other}'")))?;
                    let d: u32 = parts[2]
                        .parse()
                        .map_err(|_| FileError(format!("bad generator '{other}'")))?;
                    SimplicialComplex::complete(n, d)
                        .map_err(|e| FileError(format!("generator '{other}': {e}")))?
                } else {
                    return err(format!(
                        "unknown generator '{other}' (expected complete:n:d, two_triangles, \
                         two_triangles_weighted, or bowtie)"
                    ));
                }
            }
        };
        Ok(ComplexFile::from_complex(spec, &complex))
    }

    pub fn from_complex(name: &str, complex: &SimplicialComplex) -> ComplexFile {
        let top_faces = complex
            .faces(complex.dim())
            .iter()
            .map(|face| TopFaceEntry {
                vertices: face.vertices().to_vec(),
                weight: Some(WeightSpec::Str(
                    complex.top_weight(face).expect("top face").to_string(),
                )),
            })
            .collect();
        ComplexFile {
            name: name.to_string(),
            top_faces,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainEntry {
    pub face: Vec<u32>,
    pub value: Vec<u64>,
}

/// On-disk cochain: dimension, group spec, and the nonzero values on
/// canonical (ascending) faces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainFile {
    pub dimension: i32,
    pub group: String,
    pub values: Vec<CochainEntry>,
}

impl CochainFile {
    pub fn parse(text: &str) -> Result<CochainFile, FileError> {
        serde_json::from_str(text).map_err(|e| FileError(format!("cochain file: {e}")))
    }

    pub fn to_canonical_json(&self) -> Result<String, FileError> {
        serde_json::to_string_pretty(self)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| FileError(format!("serialize cochain: {e}")))
    }

    pub fn group(&self) -> Result<FiniteAbelianGroup, FileError> {
        FiniteAbelianGroup::parse(&self.group).map_err(|e| FileError(e.to_string()))
    }

    /// Validates faces (canonical, distinct, present in the complex) and
    /// values (in range, nonzero), listing offenders.
    pub fn to_cochain(&self, complex: &SimplicialComplex) -> Result<Cochain, FileError> {
        let group = self.group()?;
        let mut offenders = Vec::new();
        let mut values = Vec::new();
        for (i, entry) in self.values.iter().enumerate() {
            let ascending = entry.face.windows(2).all(|w| w[0] < w[1]);
            if !ascending {
                offenders.push(format!(
                    "values[{i}].face {:?} is not strictly ascending",
                    entry.face
                ));
                continue;
            }
            let face = match Face::new(entry.face.clone()) {
                Ok(f) => f,
                Err(e) => {
                    offenders.push(format!("values[{i}].face: {e}"));
                    continue;
                }
            };
            if face.dim() != self.dimension {
                offenders.push(format!(
                    "values[{i}].face {face} has dimension {} != {}",
                    face.dim(),
                    self.dimension
                ));
                continue;
            }
            if !complex.contains(&face) {
                offenders.push(format!("values[{i}].face {face} is not a face of the complex"));
                continue;
            }
            match group.from_residues(&entry.value) {
                Ok(v) if v.is_zero() => {
                    offenders.push(format!("values[{i}].value is zero (omit zero entries)"));
                }
                Ok(v) => values.push((face, v)),
                Err(e) => offenders.push(format!("values[{i}].value: {e}")),
            }
        }
        if !offenders.is_empty() {
            return err(format!("invalid cochain entries:\n  {}", offenders.join("\n  ")));
        }
        Cochain::from_values(complex, self.dimension, group, values)
            .map_err(|e| FileError(format!("cochain file: {e}")))
    }

    pub fn from_cochain(cochain: &Cochain) -> CochainFile {
        CochainFile {
            dimension: cochain.dim(),
            group: cochain.group().spec_string(),
            values: cochain
                .iter()
                .map(|(face, v)| CochainEntry {
                    face: face.vertices().to_vec(),
                    value: cochain.group().residues(*v),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_round_trip_is_idempotent() {
        let file = ComplexFile::generate("complete:4:2").unwrap();
        let first = file.to_canonical_json().unwrap();
        let reparsed = ComplexFile::parse(&first).unwrap();
        let second = reparsed.to_canonical_json().unwrap();
        assert_eq!(first, second);
        assert_eq!(reparsed.top_faces.len(), 4);
    }

    #[test]
    fn weight_parsing_rejects_zero_denominator() {
        let text = r#"{"name":"x","top_faces":[{"vertices":[0,1],"weight":"3/0"}]}"#;
        let file = ComplexFile::parse(text).unwrap();
        let e = file.to_complex().unwrap_err();
        assert!(e.0.contains("3/0"), "{e}");
    }

    #[test]
    fn unknown_generator_and_bad_sizes() {
        assert!(ComplexFile::generate("torus").is_err());
        assert!(ComplexFile::generate("complete:2:2").is_err());
        assert!(ComplexFile::generate("complete:3:2").is_ok());
    }

    #[test]
    fn cochain_validation_lists_offenders() {
        let complex = SimplicialComplex::complete(4, 2).unwrap();
        let text = r#"{
            "dimension": 1,
            "group": "z2",
            "values": [
                {"face": [1, 0], "value": [1]},
                {"face": [0, 9], "value": [1]},
                {"face": [0, 1], "value": [0]},
                {"face": [0, 2], "value": [2]}
            ]
        }"#;
        let file = CochainFile::parse(text).unwrap();
        let e = file.to_cochain(&complex).unwrap_err();
        assert!(e.0.contains("not strictly ascending"));
        assert!(e.0.contains("not a face"));
        assert!(e.0.contains("zero"));
        assert!(e.0.contains("out of range"));
    }

    #[test]
    fn cochain_round_trip() {
        let complex = SimplicialComplex::complete(5, 2).unwrap();
        let g = FiniteAbelianGroup::parse("z2xz4").unwrap();
        let f = Cochain::from_values(
            &complex,
            1,
            g.clone(),
            vec![
                (Face::new(vec![0, 1]).unwrap(), g.from_residues(&[1, 3]).unwrap()),
                (Face::new(vec![2, 4]).unwrap(), g.from_residues(&[0, 2]).unwrap()),
            ],
        )
        .unwrap();
        let file = CochainFile::from_cochain(&f);
        let text = file.to_canonical_json().unwrap();
        let back = CochainFile::parse(&text).unwrap().to_cochain(&complex).unwrap();
        assert_eq!(back, f);
    }
}
