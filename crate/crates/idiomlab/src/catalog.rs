//! Built-in instances and the JSON input format.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finalg::{ModuleSpec, RingSpec};

/// One analyzable instance: a ring, a module over it, and run options.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub ring: RingSpec,
    pub module: ModuleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<AnalysisOptions>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisOptions {
    /// "all" (default) or "basic" (skip the derived-module audits).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl InstanceSpec {
    pub fn display_name(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("{:?}/{:?}", self.ring, self.module))
    }
}

pub fn parse_instance(path: &Path) -> Result<InstanceSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::SchemaError {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_instance_str(&text).map_err(|e| match e {
        Error::ParseError(reason) => Error::SchemaError {
            path: path.display().to_string(),
            reason,
        },
        other => other,
    })
}

pub fn parse_instance_str(text: &str) -> Result<InstanceSpec> {
    let spec: InstanceSpec =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    if let Some(opts) = &spec.options {
        if let Some(audit) = &opts.audit {
            if audit != "all" && audit != "basic" {
                return Err(Error::ParseError(format!(
                    "options.audit must be \"all\" or \"basic\", got {audit:?}"
                )));
            }
        }
    }
    Ok(spec)
}

fn zn(n: usize) -> RingSpec {
    RingSpec::Zn { n }
}

fn regular(name: &str, ring: RingSpec) -> InstanceSpec {
    InstanceSpec {
        name: Some(name.to_string()),
        ring,
        module: ModuleSpec::Regular,
        options: None,
    }
}

fn abelian(name: &str, n: usize, invariants: &[usize]) -> InstanceSpec {
    InstanceSpec {
        name: Some(name.to_string()),
        ring: zn(n),
        module: ModuleSpec::Abelian {
            invariants: invariants.to_vec(),
        },
        options: None,
    }
}

/// The built-in catalog, in a fixed order.
pub fn catalog() -> Vec<InstanceSpec> {
    let z2_plus_z3 = abelian("Z2+Z3", 6, &[2, 3]);
    let square = InstanceSpec {
        name: Some("Z2+Z3-square".to_string()),
        ring: zn(6),
        module: ModuleSpec::DirectSum {
            of: Box::new(z2_plus_z3.module.clone()),
            copies: 2,
        },
        options: None,
    };
    vec![
        regular("Z2", zn(2)),
        regular("Z4", zn(4)),
        regular("Z6", zn(6)),
        regular("Z12", zn(12)),
        regular("Z30", zn(30)),
        abelian("Z2xZ2-over-F2", 2, &[2, 2]),
        abelian("Z3+Z2", 6, &[3, 2]),
        abelian("Z3+Z2^2", 6, &[3, 2, 2]),
        regular(
            "triangular-Z2",
            RingSpec::UpperTriangular {
                base: Box::new(zn(2)),
                size: 2,
            },
        ),
        z2_plus_z3,
        square,
        regular(
            "M2F2",
            RingSpec::Matrix {
                base: Box::new(zn(2)),
                size: 2,
            },
        ),
        regular(
            "Z4xZ3",
            RingSpec::Product {
                factors: vec![zn(4), zn(3)],
            },
        ),
    ]
}

pub fn catalog_get(name: &str) -> Result<InstanceSpec> {
    catalog()
        .into_iter()
        .find(|s| s.name.as_deref() == Some(name))
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trips_through_json() {
        for spec in catalog() {
            let text = serde_json::to_string(&spec).unwrap();
            assert_eq!(parse_instance_str(&text).unwrap(), spec);
        }
    }

    #[test]
    fn documented_examples_parse() {
        let s =
            parse_instance_str(r#"{"name":"Z12","ring":{"kind":"Zn","n":12},"module":{"kind":"regular"}}"#)
                .unwrap();
        assert_eq!(s.ring, RingSpec::Zn { n: 12 });
        let s = parse_instance_str(
            r#"{"ring":{"kind":"upper_triangular","base":{"kind":"zn","n":2},"size":2},"module":{"kind":"regular"}}"#,
        )
        .unwrap();
        assert!(s.name.is_none());
        parse_instance_str(
            r#"{"ring":{"kind":"zn","n":6},"module":{"kind":"abelian","invariants":[2,3]}}"#,
        )
        .unwrap();
    }

    #[test]
    fn bad_audit_option_is_rejected() {
        let err = parse_instance_str(
            r#"{"ring":{"kind":"zn","n":2},"module":{"kind":"regular"},"options":{"audit":"everything"}}"#,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_entry_errors() {
        assert!(catalog_get("nope").is_err());
        assert!(catalog_get("triangular-Z2").is_ok());
    }
}
