//! JSON monoid configuration.
//!
//! ```json
//! {
//!   "label": "path:3",
//!   "generators": [{"name": "a", "weight": {"num": 1, "den": 1}}, ...],
//!   "commuting_pairs": [["a", "b"], ["b", "c"]]
//! }
//! ```

use std::collections::HashSet;
use std::path::Path;

use qlo_core::{IndependenceGraph, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub weight: WeightSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub generators: Vec<GeneratorSpec>,
    pub commuting_pairs: Vec<[String; 2]>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Malformed(String),
    #[error("invalid `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error(transparent)]
    Graph(#[from] qlo_core::Error),
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Schema {
        field: field.into(),
        message: message.into(),
    }
}

pub fn parse_config(path: &Path) -> Result<MonoidConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<MonoidConfig, ConfigError> {
    let config: MonoidConfig = serde_json::from_str(text).map_err(|e| ConfigError::Malformed(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

impl MonoidConfig {
    /// Checks the schema invariants, naming the offending field, and then
    /// the graph invariants.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.generators.is_empty() {
            return Err(schema("generators", "at least one generator is required"));
        }
        let mut names = HashSet::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.name.trim().is_empty() {
                return Err(schema(format!("generators[{i}].name"), "name must be nonempty"));
            }
            if !names.insert(g.name.as_str()) {
                return Err(schema(format!("generators[{i}].name"), format!("duplicate generator `{}`", g.name)));
            }
            if g.weight.num <= 0 {
                return Err(schema(format!("generators[{i}].weight.num"), "must be a positive integer"));
            }
            if g.weight.den <= 0 {
                return Err(schema(format!("generators[{i}].weight.den"), "must be a positive integer"));
            }
        }
        for (i, [a, b]) in self.commuting_pairs.iter().enumerate() {
            for (j, end) in [a, b].into_iter().enumerate() {
                if !names.contains(end.as_str()) {
                    return Err(schema(format!("commuting_pairs[{i}][{j}]"), format!("unknown generator `{end}`")));
                }
            }
            if a == b {
                return Err(schema(format!("commuting_pairs[{i}]"), format!("pair [{a}, {a}] is a self-loop")));
            }
        }
        self.to_graph()?;
        Ok(())
    }

    pub fn to_graph(&self) -> Result<IndependenceGraph, qlo_core::Error> {
        IndependenceGraph::new(
            self.generators
                .iter()
                .map(|g| (g.name.clone(), Rational::new(g.weight.num, g.weight.den))),
            self.commuting_pairs.iter().map(|[a, b]| (a.clone(), b.clone())),
        )
    }

    pub fn from_graph(g: &IndependenceGraph, label: Option<String>) -> Self {
        Self {
            label,
            generators: g
                .generators()
                .map(|s| {
                    let w = g.weight(s);
                    GeneratorSpec {
                        name: g.name(s).to_string(),
                        weight: WeightSpec {
                            num: *w.numer(),
                            den: *w.denom(),
                        },
                    }
                })
                .collect(),
            commuting_pairs: g
                .edges()
                .into_iter()
                .map(|(a, b)| [g.name(a).to_string(), g.name(b).to_string()])
                .collect(),
        }
    }

    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_weight_accepted() {
        let c = parse_config_str(
            r#"{"generators": [{"name": "a", "weight": {"num": 3, "den": 2}}], "commuting_pairs": []}"#,
        )
        .unwrap();
        let g = c.to_graph().unwrap();
        assert_eq!(g.weights(), [Rational::new(3, 2)]);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let cases = [
            (r#"{"generators": [{"name": "a", "weight": {"num": 1, "den": 1}}], "commuting_pairs": [["a", "a"]]}"#, "commuting_pairs[0]"),
            (r#"{"generators": [{"name": "a", "weight": {"num": 0, "den": 1}}], "commuting_pairs": []}"#, "generators[0].weight.num"),
            (r#"{"generators": [{"name": "a", "weight": {"num": 1, "den": -2}}], "commuting_pairs": []}"#, "generators[0].weight.den"),
            (r#"{"generators": [{"name": "a", "weight": {"num": 1, "den": 1}}], "commuting_pairs": [["a", "z"]]}"#, "commuting_pairs[0][1]"),
            (r#"{"generators": [], "commuting_pairs": []}"#, "generators"),
        ];
        for (text, field) in cases {
            match parse_config_str(text) {
                Err(ConfigError::Schema { field: f, .. }) => assert_eq!(f, field),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn malformed_input() {
        for text in ["", "{", r#"{"generators": [{"name": "a", "weight": 1.5}], "commuting_pairs": []}"#] {
            assert!(matches!(parse_config_str(text), Err(ConfigError::Malformed(_))));
        }
        let dup = r#"{"generators": [{"name": "a", "weight": {"num": 1, "den": 1}}, {"name": "b", "weight": {"num": 1, "den": 1}}],
                     "commuting_pairs": [["a", "b"], ["b", "a"]]}"#;
        assert!(matches!(parse_config_str(dup), Err(ConfigError::Graph(qlo_core::Error::DuplicateEdge(..)))));
    }

    #[test]
    fn round_trip() {
        let g = qlo_core::presets::path(4).unwrap();
        let c = MonoidConfig::from_graph(&g, Some("path:4".into()));
        assert_eq!(parse_config_str(&c.emit()).unwrap(), c);
        assert_eq!(c.to_graph().unwrap(), g);
    }
}
