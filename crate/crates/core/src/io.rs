//! Text and JSON formats for complexes, vertex maps and bundles.
//!
//! Facet lists hold one facet per line with labels separated by spaces;
//! lines starting with `#` are comments. Map files hold one `from to` pair
//! per line. JSON output is canonical: facets and vertices in label order,
//! fixed key order, so equal inputs serialize byte-identically.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::bundle::ConstructionBundle;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::orientation::{signs_are_coherent, Sign};
use crate::simplex::{parse_ordered, Simplex};
use crate::simplicial_map::VertexMap;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("line {line}: {m}")),
        other => other,
    })
}

pub fn complex_to_text(k: &Complex) -> String {
    k.facets().iter().map(|f| format!("{f}\n")).collect()
}

pub fn complex_from_text(text: &str) -> Result<Complex> {
    let facets = content_lines(text)
        .map(|(n, l)| at_line(n, l.parse::<Simplex>()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Complex::from_simplices(facets))
}

pub fn map_to_text(f: &VertexMap) -> String {
    f.pairs().map(|(a, b)| format!("{a} {b}\n")).collect()
}

pub fn map_from_text(text: &str) -> Result<VertexMap> {
    let mut out = BTreeMap::new();
    for (n, line) in content_lines(text) {
        let labels = at_line(n, parse_ordered(line))?;
        let [from, to]: [VertexLabel; 2] =
            labels.try_into().map_err(|_| Error::Parse(format!("line {n}: expected `from to`")))?;
        if out.insert(from.clone(), to).is_some() {
            return Err(Error::Parse(format!("line {n}: {from} mapped twice")));
        }
    }
    Ok(VertexMap::new(out))
}

struct OrientationDoc<'a>(&'a BTreeMap<Simplex, Sign>);

impl Serialize for OrientationDoc<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (f, sign) in self.0 {
            m.serialize_entry(&f.to_string(), &i8::from(*sign))?;
        }
        m.end()
    }
}

#[derive(Serialize)]
struct ComplexOut<'a> {
    dimension: isize,
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orientation: Option<OrientationDoc<'a>>,
}

impl<'a> ComplexOut<'a> {
    fn new(k: &Complex, orientation: Option<&'a BTreeMap<Simplex, Sign>>) -> Self {
        Self {
            dimension: k.dim(),
            vertices: k.vertices().iter().map(ToString::to_string).collect(),
            facets: k.facets().iter().map(|f| f.vertices().iter().map(ToString::to_string).collect()).collect(),
            orientation: orientation.map(OrientationDoc),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexIn {
    dimension: isize,
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
    #[serde(default)]
    orientation: Option<BTreeMap<String, i8>>,
}

/// A complex read from JSON, with its orientation when one was recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDocument {
    pub complex: Complex,
    pub orientation: Option<BTreeMap<Simplex, Sign>>,
}

fn parse_labels(items: &[String]) -> Result<Vec<VertexLabel>> {
    items.iter().map(|s| s.parse()).collect()
}

impl ComplexIn {
    fn into_document(self) -> Result<ComplexDocument> {
        let facets = self
            .facets
            .iter()
            .map(|f| Simplex::new(parse_labels(f)?))
            .collect::<Result<Vec<_>>>()?;
        let complex = Complex::from_simplices(facets);
        if complex.dim() != self.dimension {
            return Err(Error::Parse(format!("dimension {} but facets have dimension {}", self.dimension, complex.dim())));
        }
        let listed: std::collections::BTreeSet<VertexLabel> = parse_labels(&self.vertices)?.into_iter().collect();
        if listed != complex.vertices() {
            return Err(Error::Parse("vertex list does not match the facets".into()));
        }
        let orientation = match self.orientation {
            None => None,
            Some(raw) => {
                let mut signs = BTreeMap::new();
                for (key, value) in raw {
                    let facet: Simplex = key.parse()?;
                    if !complex.facets().contains(&facet) {
                        return Err(Error::Parse(format!("orientation names non-facet {key}")));
                    }
                    let sign = Sign::try_from(value).map_err(|_| Error::Parse(format!("sign {value} for {key}")))?;
                    signs.insert(facet, sign);
                }
                if signs.len() != complex.facet_count() || !signs_are_coherent(&complex, &signs) {
                    return Err(Error::Parse("orientation is incomplete or not coherent".into()));
                }
                Some(signs)
            }
        };
        Ok(ComplexDocument { complex, orientation })
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn complex_to_json(k: &Complex, orientation: Option<&BTreeMap<Simplex, Sign>>) -> String {
    serde_json::to_string_pretty(&ComplexOut::new(k, orientation)).expect("serializable") + "\n"
}

pub fn complex_from_json(text: &str) -> Result<ComplexDocument> {
    serde_json::from_str::<ComplexIn>(text).map_err(json_error)?.into_document()
}

/// Reads either format, deciding by the first non-blank character.
pub fn read_complex(text: &str) -> Result<ComplexDocument> {
    if text.trim_start().starts_with('{') {
        complex_from_json(text)
    } else {
        Ok(ComplexDocument { complex: complex_from_text(text)?, orientation: None })
    }
}

#[derive(Serialize)]
struct BundleOut<'a> {
    label: &'a str,
    expected_degree: i64,
    expected_vertices: usize,
    source_base: Vec<String>,
    target_base: Vec<String>,
    map: Vec<[String; 2]>,
    source: ComplexOut<'a>,
    target: ComplexOut<'a>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleIn {
    label: String,
    expected_degree: i64,
    #[serde(default)]
    expected_vertices: Option<usize>,
    source_base: Vec<String>,
    #[serde(default)]
    target_base: Option<Vec<String>>,
    map: Vec<[String; 2]>,
    source: ComplexIn,
    target: ComplexIn,
}

/// Writes a bundle; orientations, when given, are embedded in the complexes.
pub fn bundle_to_json(
    b: &ConstructionBundle,
    source_orientation: Option<&BTreeMap<Simplex, Sign>>,
    target_orientation: Option<&BTreeMap<Simplex, Sign>>,
) -> String {
    let strings = |v: &[VertexLabel]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let doc = BundleOut {
        label: &b.label,
        expected_degree: b.expected_degree,
        expected_vertices: b.expected_vertices,
        source_base: strings(&b.source_base),
        target_base: strings(&b.target_base),
        map: b.map.pairs().map(|(x, y)| [x.to_string(), y.to_string()]).collect(),
        source: ComplexOut::new(&b.source, source_orientation),
        target: ComplexOut::new(&b.target, target_orientation),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// Reads a bundle. A missing `target_base` defaults to the first target
/// facet in sorted order and a missing `expected_vertices` to the source
/// vertex count.
pub fn bundle_from_json(text: &str) -> Result<ConstructionBundle> {
    let raw: BundleIn = serde_json::from_str(text).map_err(json_error)?;
    let source = raw.source.into_document()?.complex;
    let target = raw.target.into_document()?.complex;
    let mut map = BTreeMap::new();
    for [a, b] in &raw.map {
        if map.insert(a.parse::<VertexLabel>()?, b.parse::<VertexLabel>()?).is_some() {
            return Err(Error::Parse(format!("{a} mapped twice")));
        }
    }
    let source_base = parse_labels(&raw.source_base)?;
    let target_base = match raw.target_base {
        Some(t) => parse_labels(&t)?,
        None => target
            .facets()
            .first()
            .ok_or_else(|| Error::Parse("target has no facets".into()))?
            .vertices()
            .to_vec(),
    };
    for (name, base, k) in [("source_base", &source_base, &source), ("target_base", &target_base, &target)] {
        if !k.facets().contains(&Simplex::new(base.iter().cloned())?) {
            return Err(Error::Parse(format!("{name} is not a facet")));
        }
    }
    let expected_vertices = raw.expected_vertices.unwrap_or_else(|| source.vertices().len());
    Ok(ConstructionBundle {
        label: raw.label,
        source,
        target,
        map: VertexMap::new(map),
        source_base,
        target_base,
        expected_degree: raw.expected_degree,
        expected_vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::swap_map;
    use crate::fixtures;
    use crate::orientation::coherent_orientation;

    #[test]
    fn text_round_trip() {
        let k = fixtures::delta4_reference();
        let text = complex_to_text(&k);
        assert_eq!(complex_from_text(&text).unwrap(), k);
        let with_comments = format!("# disc\n\n{text}");
        assert_eq!(complex_from_text(&with_comments).unwrap(), k);
        assert!(matches!(complex_from_text("a b\nc C\n"), Err(Error::Parse(m)) if m.starts_with("line 2")));
    }

    #[test]
    fn json_round_trip_with_orientation() {
        let k = Complex::standard_sphere(2);
        let o = coherent_orientation(&k, k.facets().first().unwrap(), Sign::Positive).unwrap();
        let json = complex_to_json(&k, Some(o.signs()));
        let doc = complex_from_json(&json).unwrap();
        assert_eq!(doc.complex, k);
        assert_eq!(doc.orientation.as_ref(), Some(o.signs()));
        assert_eq!(complex_to_json(&doc.complex, doc.orientation.as_ref()), json);
        assert!(json.contains("\"v1 v2 v3\": 1"));
    }

    #[test]
    fn json_rejects_bad_orientation() {
        let k = Complex::standard_sphere(2);
        let signs: BTreeMap<Simplex, Sign> = k.facets().iter().map(|f| (f.clone(), Sign::Positive)).collect();
        let json = complex_to_json(&k, Some(&signs));
        assert!(complex_from_json(&json).is_err());
        assert!(complex_from_json("{\"dimension\": 1, \"vertices\": [\"a\"], \"facets\": [[\"a\", \"b\"]]}").is_err());
    }

    #[test]
    fn map_format() {
        let f = map_from_text("# map\nu1 v1\nu2 v1\n").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(map_to_text(&f), "u1 v1\nu2 v1\n");
        assert!(map_from_text("u1 v1 v2\n").is_err());
        assert!(map_from_text("u1 v1\nu1 v2\n").is_err());
    }

    #[test]
    fn bundle_round_trip() {
        let b = swap_map(3);
        let json = bundle_to_json(&b, None, None);
        let back = bundle_from_json(&json).unwrap();
        assert_eq!(back, b);
        assert_eq!(bundle_to_json(&back, None, None), json);
    }
}
