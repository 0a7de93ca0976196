//! The v1 JSON manifest formats and their conversion to library values.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use nervekit::fixtures::{self, Fixture};
use nervekit::{IndexedCover, Poset, PosetMap, Simplex, SimplicialComplex, VertexId};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const COMPLEX_FORMAT: &str = "nervekit-complex-v1";
pub const POSET_FORMAT: &str = "nervekit-poset-v1";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl Metadata {
    fn is_empty(&self) -> bool {
        self.name.is_none() && self.notes.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(flatten)]
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format")]
pub enum Payload {
    #[serde(rename = "nervekit-complex-v1")]
    Complex(ComplexDoc),
    #[serde(rename = "nervekit-poset-v1")]
    Poset(PosetDoc),
    #[serde(rename = "nervekit-cover-v1")]
    Cover(CoverDoc),
    #[serde(rename = "nervekit-posetmap-v1")]
    PosetMap(PosetMapDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    /// `[a, b]` reads `a < b`, before transitive closure.
    pub relations: Vec<(String, String)>,
}

/// A complex or poset nested inside another manifest. The format tag is
/// optional on input and always written on output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nested<T> {
    #[serde(default)]
    pub format: Option<String>,
    #[serde(flatten)]
    pub doc: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDoc {
    pub facets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub space: Nested<ComplexDoc>,
    pub index_order: Vec<String>,
    pub members: BTreeMap<String, MemberDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetMapDoc {
    pub domain: Nested<PosetDoc>,
    pub codomain: Nested<PosetDoc>,
    pub map: BTreeMap<String, String>,
}

fn invalid(at: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{at}: {msg}"))
}

fn strings<'a>(it: impl IntoIterator<Item = &'a VertexId>) -> Vec<String> {
    it.into_iter().map(|v| v.to_string()).collect()
}

fn facets_doc(k: &SimplicialComplex) -> Vec<Vec<String>> {
    k.facets().iter().map(|f| strings(f.vertices())).collect()
}

fn token(at: &str, s: &str) -> Result<VertexId, CliError> {
    VertexId::new(s).map_err(|e| invalid(at, e))
}

fn no_duplicates(at: &str, items: &[String]) -> Result<(), CliError> {
    let mut seen = BTreeSet::new();
    for s in items {
        if !seen.insert(s) {
            return Err(invalid(at, format!("duplicate entry {s:?}")));
        }
    }
    Ok(())
}

fn simplices(at: &str, facets: &[Vec<String>]) -> Result<Vec<Simplex>, CliError> {
    facets
        .iter()
        .enumerate()
        .map(|(i, f)| Simplex::from_tokens(f).map_err(|e| invalid(&format!("{at}[{i}]"), e)))
        .collect()
}

fn check_nested(at: &str, format: &Option<String>, expected: &str) -> Result<(), CliError> {
    match format {
        Some(f) if f != expected => Err(invalid(
            at,
            format!("format {f:?} where {expected:?} is required"),
        )),
        _ => Ok(()),
    }
}

impl ComplexDoc {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexDoc {
            vertices: strings(k.vertices()),
            facets: facets_doc(k),
        }
    }

    pub fn to_complex(&self, at: &str) -> Result<SimplicialComplex, CliError> {
        no_duplicates(&format!("{at}vertices"), &self.vertices)?;
        let vertices = self
            .vertices
            .iter()
            .map(|v| token(&format!("{at}vertices"), v))
            .collect::<Result<Vec<_>, _>>()?;
        let facets = simplices(&format!("{at}facets"), &self.facets)?;
        SimplicialComplex::new(vertices, facets).map_err(|e| invalid(&format!("{at}facets"), e))
    }
}

impl PosetDoc {
    pub fn from_poset(p: &Poset) -> Self {
        PosetDoc {
            elements: strings(p.elements()),
            relations: p
                .cover_relation_tokens()
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }

    pub fn to_poset(&self, at: &str) -> Result<Poset, CliError> {
        no_duplicates(&format!("{at}elements"), &self.elements)?;
        let elements = self
            .elements
            .iter()
            .map(|v| token(&format!("{at}elements"), v))
            .collect::<Result<Vec<_>, _>>()?;
        let relations = self
            .relations
            .iter()
            .map(|(a, b)| {
                Ok((
                    token(&format!("{at}relations"), a)?,
                    token(&format!("{at}relations"), b)?,
                ))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Poset::new(elements, relations).map_err(|e| invalid(&format!("{at}relations"), e))
    }
}

impl Manifest {
    pub fn new(payload: Payload) -> Self {
        Manifest {
            payload,
            metadata: Metadata::default(),
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.metadata.name = Some(name.to_string());
        self
    }

    pub fn from_value(value: &Fixture) -> Self {
        Manifest::new(match value {
            Fixture::Complex(k) => Payload::Complex(ComplexDoc::from_complex(k)),
            Fixture::Poset(p) => Payload::Poset(PosetDoc::from_poset(p)),
            Fixture::Cover(c) => Payload::Cover(CoverDoc {
                space: Nested {
                    format: Some(COMPLEX_FORMAT.into()),
                    doc: ComplexDoc::from_complex(c.ambient()),
                },
                index_order: strings(c.index_order()),
                members: c
                    .index_order()
                    .iter()
                    .zip(c.members())
                    .map(|(i, m)| {
                        (
                            i.to_string(),
                            MemberDoc {
                                facets: facets_doc(m),
                            },
                        )
                    })
                    .collect(),
            }),
            Fixture::PosetMap(f) => Payload::PosetMap(PosetMapDoc {
                domain: Nested {
                    format: Some(POSET_FORMAT.into()),
                    doc: PosetDoc::from_poset(f.domain()),
                },
                codomain: Nested {
                    format: Some(POSET_FORMAT.into()),
                    doc: PosetDoc::from_poset(f.codomain()),
                },
                map: f
                    .assignment_tokens()
                    .into_iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
            }),
        })
    }

    /// Builds and validates the library value.
    pub fn to_value(&self) -> Result<Fixture, CliError> {
        Ok(match &self.payload {
            Payload::Complex(d) => Fixture::Complex(d.to_complex("")?),
            Payload::Poset(d) => Fixture::Poset(d.to_poset("")?),
            Payload::Cover(d) => {
                check_nested("space", &d.space.format, COMPLEX_FORMAT)?;
                let ambient = d.space.doc.to_complex("space.")?;
                no_duplicates("index_order", &d.index_order)?;
                let listed: BTreeSet<&String> = d.index_order.iter().collect();
                if let Some(extra) = d.members.keys().find(|k| !listed.contains(k)) {
                    return Err(invalid("members", format!("{extra:?} is not in index_order")));
                }
                let mut index = Vec::new();
                let mut members = Vec::new();
                for i in &d.index_order {
                    let at = format!("members.{i}");
                    let m = d.members.get(i).ok_or_else(|| invalid(&at, "missing"))?;
                    index.push(token("index_order", i)?);
                    members.push(SimplicialComplex::from_simplices(simplices(
                        &format!("{at}.facets"),
                        &m.facets,
                    )?));
                }
                Fixture::Cover(IndexedCover::new(ambient, index, members).map_err(|e| invalid("members", e))?)
            }
            Payload::PosetMap(d) => {
                check_nested("domain", &d.domain.format, POSET_FORMAT)?;
                check_nested("codomain", &d.codomain.format, POSET_FORMAT)?;
                let domain = d.domain.doc.to_poset("domain.")?;
                let codomain = d.codomain.doc.to_poset("codomain.")?;
                let assign = d
                    .map
                    .iter()
                    .map(|(a, b)| Ok((token("map", a)?, token("map", b)?)))
                    .collect::<Result<HashMap<_, _>, CliError>>()?;
                if let Some(extra) = assign.keys().find(|a| domain.index_of_id(a).is_none()) {
                    return Err(invalid("map", format!("{extra} is not a domain element")));
                }
                Fixture::PosetMap(PosetMap::new(domain, codomain, &assign).map_err(|e| invalid("map", e))?)
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::Complex(_) => "complex",
            Payload::Poset(_) => "poset",
            Payload::Cover(_) => "cover",
            Payload::PosetMap(_) => "posetmap",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifests serialize")
    }

    pub fn from_json(text: &str, source: &str) -> Result<Self, CliError> {
        let m: Manifest = serde_json::from_str(text).map_err(|e| invalid(source, e))?;
        m.to_value().map_err(|e| invalid(source, e))?;
        Ok(m)
    }
}

/// Reads and validates a manifest file.
pub fn load(path: &Path) -> Result<Manifest, CliError> {
    let text = fs::read_to_string(path).map_err(|e| invalid(&path.display().to_string(), e))?;
    Manifest::from_json(&text, &path.display().to_string())
}

pub fn save(m: &Manifest, path: &Path) -> Result<(), CliError> {
    fs::write(path, m.to_json() + "\n").map_err(|e| invalid(&path.display().to_string(), e))
}

/// A fixture as a manifest carrying its name.
pub fn fixture(name: &str) -> Result<Manifest, CliError> {
    let value = fixtures::by_name(name).ok_or_else(|| {
        CliError::Input(format!(
            "unknown fixture {name:?}; known: {}",
            fixtures::NAMES.join(", ")
        ))
    })?;
    Ok(Manifest::from_value(&value).named(name))
}

/// A fixture name, or otherwise a manifest path.
pub fn resolve(arg: &str) -> Result<Fixture, CliError> {
    match fixtures::by_name(arg) {
        Some(v) => Ok(v),
        None if !Path::new(arg).exists() => Err(CliError::Input(format!(
            "{arg}: neither a fixture ({}) nor an existing file",
            fixtures::NAMES.join(", ")
        ))),
        None => load(Path::new(arg))?.to_value(),
    }
}
