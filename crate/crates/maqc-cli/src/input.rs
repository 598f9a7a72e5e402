//! Input JSON parsing.
//!
//! Two schemas share the front door: a simplicial complex
//! `{"vertices": [...], "facets": [[...]], "partition": [[...]]?}` (a
//! missing partition defaults to the trivial one) and a simplicial poset
//! `{"elements": [{"id", "rank", "vertices", "facets"}]}`.

use serde::Deserialize;

use maqc_core::poset::{PosetElementSpec, SimplicialPoset};
use maqc_core::ColoredComplex;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexInput {
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
    #[serde(default)]
    partition: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetInput {
    elements: Vec<PosetElementInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetElementInput {
    id: String,
    rank: usize,
    #[serde(default)]
    vertices: Vec<String>,
    #[serde(default)]
    facets: Vec<String>,
}

/// A parsed input file.
pub enum Input {
    Complex(ColoredComplex),
    Poset(SimplicialPoset),
}

/// Parses UTF-8 JSON into a validated domain object.
pub fn parse_input(text: &str) -> Result<Input, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))?;
    if value.get("elements").is_some() {
        let raw: PosetInput =
            serde_json::from_value(value).map_err(|e| format!("bad poset input: {e}"))?;
        let specs: Vec<PosetElementSpec> = raw
            .elements
            .into_iter()
            .map(|e| PosetElementSpec {
                id: e.id,
                rank: e.rank,
                vertices: e.vertices,
                facets: e.facets,
            })
            .collect();
        let poset = SimplicialPoset::validate(&specs).map_err(|e| e.to_string())?;
        Ok(Input::Poset(poset))
    } else {
        let raw: ComplexInput =
            serde_json::from_value(value).map_err(|e| format!("bad complex input: {e}"))?;
        let cc = ColoredComplex::from_facets(&raw.vertices, &raw.facets, raw.partition.as_deref())
            .map_err(|e| e.to_string())?;
        Ok(Input::Complex(cc))
    }
}

/// Serializes a complex back to the input schema (used by `stretch` and by
/// the verify harness's failure reproducers).
pub fn complex_to_json(cc: &ColoredComplex) -> serde_json::Value {
    serde_json::json!({
        "vertices": cc.names(),
        "facets": cc.facet_names(),
        "partition": cc.block_names(),
    })
}
