//! JSON mesh and basis files. Every rational is a string such as `"3"` or
//! `"-5/2"`; emitted files are canonical (reduced rationals, fixed key
//! order, two-space indentation, trailing newline).

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use ptspline_bspline::{KnotVector, SplineCombination, SplineTag, TensorBSpline};
use ptspline_eee::PtBasis;
use ptspline_exact::{format_rational, parse_rational, Rational};
use ptspline_mesh::{build_mesh, MeshError, Segment, TMesh};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("invalid mesh: {0}")]
    Mesh(#[from] MeshError),
}

fn field_error(field: impl Into<String>, message: impl ToString) -> FileError {
    FileError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

fn rational(text: &str, field: impl Into<String>) -> Result<Rational, FileError> {
    parse_rational(text).map_err(|e| field_error(field, e))
}

fn rationals(values: &[String], field: &str) -> Result<Vec<Rational>, FileError> {
    values
        .iter()
        .enumerate()
        .map(|(i, s)| rational(s, format!("{field}[{i}]")))
        .collect()
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentEntry {
    pub fixed: String,
    pub lo: String,
    pub hi: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshFile {
    pub degrees: [usize; 2],
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub hsegments: Vec<SegmentEntry>,
    pub vsegments: Vec<SegmentEntry>,
}

impl MeshFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_mesh(mesh: &TMesh) -> Self {
        let seg = |s: Segment| SegmentEntry {
            fixed: format_rational(&s.fixed),
            lo: format_rational(&s.lo),
            hi: format_rational(&s.hi),
        };
        let (d1, d2) = mesh.degrees();
        MeshFile {
            degrees: [d1, d2],
            x: strings(mesh.xs()),
            y: strings(mesh.ys()),
            hsegments: mesh.hsegments().into_iter().map(seg).collect(),
            vsegments: mesh.vsegments().into_iter().map(seg).collect(),
        }
    }

    pub fn to_mesh(&self) -> Result<TMesh, FileError> {
        let segs = |list: &[SegmentEntry], field: &str| -> Result<Vec<Segment>, FileError> {
            list.iter()
                .enumerate()
                .map(|(i, s)| {
                    let f = |v: &str, k: &str| rational(v, format!("{field}[{i}].{k}"));
                    Ok(Segment::new(
                        f(&s.fixed, "fixed")?,
                        f(&s.lo, "lo")?,
                        f(&s.hi, "hi")?,
                    ))
                })
                .collect()
        };
        Ok(build_mesh(
            self.degrees[0],
            self.degrees[1],
            rationals(&self.x, "x")?,
            rationals(&self.y, "y")?,
            segs(&self.hsegments, "hsegments")?,
            segs(&self.vsegments, "vsegments")?,
        )?)
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }
}

/// SHA-256 of the canonical mesh file, in hex.
pub fn mesh_hash(mesh: &TMesh) -> String {
    let digest = Sha256::digest(MeshFile::from_mesh(mesh).to_json().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn format_tag(tag: SplineTag) -> String {
    tag.to_string()
}

pub fn parse_tag(text: &str) -> Option<SplineTag> {
    if text == "cross" {
        return Some(SplineTag::Cross);
    }
    let (kind, id) = text.split_once(':')?;
    let id = id.parse().ok()?;
    match kind {
        "tledge" => Some(SplineTag::TLedge(id)),
        "ray" => Some(SplineTag::Ray(id)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub xknots: Vec<String>,
    pub yknots: Vec<String>,
    pub coeff: String,
    pub tag: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisMetadata {
    pub dimension: usize,
    pub extension_steps: usize,
    pub extended_edges: usize,
    pub eee_blocks: usize,
    pub eee_rows: usize,
    pub route: String,
    pub nonnegative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub mesh_hash: String,
    pub metadata: BasisMetadata,
    pub splines: Vec<Vec<TermEntry>>,
}

impl BasisFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_basis(basis: &PtBasis, nonnegative: bool) -> Self {
        let splines = basis
            .splines
            .iter()
            .map(|s| {
                s.terms
                    .iter()
                    .map(|(i, c)| {
                        let b = basis.extended.get(*i);
                        TermEntry {
                            xknots: strings(b.x.knots()),
                            yknots: strings(b.y.knots()),
                            coeff: format_rational(c),
                            tag: format_tag(basis.extended.provenance[*i].tag),
                        }
                    })
                    .collect()
            })
            .collect();
        BasisFile {
            mesh_hash: mesh_hash(&basis.mesh),
            metadata: BasisMetadata {
                dimension: basis.len(),
                extension_steps: basis.plan.steps.len(),
                extended_edges: basis.plan.extended_edges.len(),
                eee_blocks: basis.system.blocks.len(),
                eee_rows: basis.system.rows.len(),
                route: format!("{:?}", basis.plan.route),
                nonnegative,
            },
            splines,
        }
    }

    pub fn to_combinations(&self) -> Result<Vec<SplineCombination>, FileError> {
        self.splines
            .iter()
            .enumerate()
            .map(|(k, terms)| {
                let terms = terms
                    .iter()
                    .enumerate()
                    .map(|(t, e)| {
                        let at = format!("splines[{k}][{t}]");
                        let knots = |v: &[String], name: &str| {
                            KnotVector::new(rationals(v, &format!("{at}.{name}"))?)
                                .map_err(|err| field_error(format!("{at}.{name}"), err))
                        };
                        let tag = parse_tag(&e.tag)
                            .ok_or_else(|| field_error(format!("{at}.tag"), "unknown tag"))?;
                        Ok((
                            rational(&e.coeff, format!("{at}.coeff"))?,
                            TensorBSpline::new(
                                knots(&e.xknots, "xknots")?,
                                knots(&e.yknots, "yknots")?,
                                tag,
                            ),
                        ))
                    })
                    .collect::<Result<Vec<_>, FileError>>()?;
                Ok(SplineCombination::new(terms))
            })
            .collect()
    }

    /// Name of function `k` in sample headers: its index and the tag of its
    /// last term.
    pub fn label(&self, k: usize) -> String {
        match self.splines[k].last() {
            Some(t) => format!("f{k}[{}]", t.tag),
            None => format!("f{k}"),
        }
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptspline_mesh::generate::integer_tensor_mesh;

    #[test]
    fn tags_round_trip() {
        for t in [SplineTag::Cross, SplineTag::TLedge(3), SplineTag::Ray(0)] {
            assert_eq!(parse_tag(&format_tag(t)), Some(t));
        }
        assert_eq!(parse_tag("tledge:x"), None);
        assert_eq!(parse_tag("edge:1"), None);
    }

    #[test]
    fn bad_rational_is_addressed() {
        let text =
            r#"{"degrees":[2,2],"x":["0","1"],"y":["0","1/0"],"hsegments":[],"vsegments":[]}"#;
        let err = MeshFile::parse(text).unwrap().to_mesh().unwrap_err();
        assert!(err.to_string().starts_with("y[1]:"), "{err}");
    }

    #[test]
    fn mesh_file_is_canonical() {
        let mesh = integer_tensor_mesh(2, 2, 2, 2);
        let text = MeshFile::from_mesh(&mesh).to_json();
        let again = MeshFile::parse(&text).unwrap().to_mesh().unwrap();
        assert_eq!(MeshFile::from_mesh(&again).to_json(), text);
        assert_eq!(mesh_hash(&again), mesh_hash(&mesh));
        assert_eq!(mesh_hash(&mesh).len(), 64);
    }
}
