//! The JSON instance format shared by the library and the command line.
//!
//! Every document carries a `kind` tag:
//!
//! ```json
//! { "kind": "fincat", "name": "arrow", "preset": "chain:1" }
//! ```
//!
//! A `fincat` or `internal_category` is given by a `preset` name, or by tables:
//! `category` (objects, arrows, identities, composition) for the former and
//! `head` (structure maps) or `sset` (operator tables) for the latter.
//! A `simplicial_object` names its `base` and carries `sset`; a `truncated_sset`
//! carries `sset` alone. A `suite` lists commands over other instance files.
//! An optional `expected` block maps command names to results a run should reproduce.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog::preset;
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinSetBase};
use crate::internal::{internal_nerve, InternalCategory, InternalHead};
use crate::sset::{nerve, TruncSSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub instance: Instance,
    /// Expected results keyed by command name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, Expected>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Instance {
    Fincat {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        preset: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        category: Option<FinCat>,
    },
    InternalCategory {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        preset: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        head: Option<InternalHead>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sset: Option<TruncSSet>,
    },
    SimplicialObject {
        base: BaseRef,
        sset: TruncSSet,
    },
    TruncatedSset {
        sset: TruncSSet,
    },
    Suite {
        items: Vec<SuiteItem>,
    },
}

/// The base a simplicial object lives in; only finite sets are available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseRef {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

/// One command of a suite, with inputs relative to the suite file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteItem {
    pub command: String,
    #[serde(default)]
    pub inputs: Vec<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

/// Results a run should reproduce; absent fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<usize>>,
}

/// What an instance file denotes once names are resolved.
#[derive(Clone, Debug)]
pub enum Loaded {
    Category(FinCat),
    Internal(InternalCategory),
    SSet(TruncSSet),
    Suite(Vec<SuiteItem>),
}

fn exactly_one<T>(what: &str, options: Vec<Option<T>>) -> Result<T> {
    let mut given = options.into_iter().flatten();
    match (given.next(), given.next()) {
        (Some(t), None) => Ok(t),
        (None, _) => Err(Error::Malformed(format!("{what} needs one of its sources"))),
        _ => Err(Error::Malformed(format!("{what} has more than one source"))),
    }
}

impl Instance {
    pub fn resolve(self, base: &FinSetBase) -> Result<Loaded> {
        Ok(match self {
            Instance::Fincat { preset: p, category } => {
                Loaded::Category(exactly_one("fincat", vec![p.map(|p| preset(&p)).transpose()?, category])?)
            }
            Instance::InternalCategory { preset: p, head, sset } => {
                let from_preset = p.map(|p| preset(&p).and_then(|c| InternalCategory::from_fincat(&c, base))).transpose()?;
                let from_head = head.map(|h| internal_nerve(&h, base)).transpose()?;
                let from_sset = sset.map(|s| InternalCategory::new(s, base)).transpose()?;
                Loaded::Internal(exactly_one("internal_category", vec![from_preset, from_head, from_sset])?)
            }
            Instance::SimplicialObject { base: b, sset } => {
                if b.name != "finset" {
                    return Err(Error::Malformed(format!("unknown base {:?}", b.name)));
                }
                if let Some(bound) = b.bound {
                    for &l in sset.levels() {
                        FinSetBase::new(bound).check("simplicial object level", l)?;
                    }
                }
                Loaded::SSet(sset)
            }
            Instance::TruncatedSset { sset } => Loaded::SSet(sset),
            Instance::Suite { items } => Loaded::Suite(items),
        })
    }
}

impl Loaded {
    /// The simplicial set presented: a category by its nerve at truncation `k`.
    pub fn sset(&self, k: usize, base: &FinSetBase) -> Result<TruncSSet> {
        match self {
            Loaded::Category(c) => nerve(c, k, base),
            Loaded::Internal(x) => Ok(x.sset().clone()),
            Loaded::SSet(s) => Ok(s.clone()),
            Loaded::Suite(_) => Err(Error::Malformed("a suite is not a simplicial set".into())),
        }
    }

    pub fn internal(&self, base: &FinSetBase) -> Result<InternalCategory> {
        match self {
            Loaded::Category(c) => InternalCategory::from_fincat(c, base),
            Loaded::Internal(x) => Ok(x.clone()),
            Loaded::SSet(s) => InternalCategory::new(s.clone(), base),
            Loaded::Suite(_) => Err(Error::Malformed("a suite is not an internal category".into())),
        }
    }

    /// The underlying category, when the instance presents one.
    pub fn category(&self, base: &FinSetBase) -> Result<FinCat> {
        match self {
            Loaded::Category(c) => Ok(c.clone()),
            other => Ok(other.internal(base)?.underlying().clone()),
        }
    }
}

pub fn parse(text: &str) -> Result<InstanceFile> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn load(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> FinSetBase {
        FinSetBase::new(4096)
    }

    #[test]
    fn preset_fincat() {
        let f = parse(r#"{ "kind": "fincat", "name": "arrow", "preset": "chain:1" }"#).unwrap();
        assert_eq!(f.name.as_deref(), Some("arrow"));
        let Loaded::Category(c) = f.instance.resolve(&base()).unwrap() else { panic!() };
        assert_eq!(c, FinCat::chain(1));
    }

    #[test]
    fn tables_round_trip() {
        for c in [FinCat::parallel_pair(), FinCat::cyclic_group(3)] {
            let file = InstanceFile {
                name: None,
                instance: Instance::Fincat { preset: None, category: Some(c.clone()) },
                expected: [("check-complete".to_string(), Expected { pass: Some(true), ..Expected::default() })].into(),
            };
            let text = serde_json::to_string(&file).unwrap();
            assert_eq!(parse(&text).unwrap(), file);
        }
    }

    #[test]
    fn internal_from_head_and_sset() {
        let head = InternalHead::of(&FinCat::chain(2));
        let text = serde_json::json!({ "kind": "internal_category", "head": head }).to_string();
        let a = parse(&text).unwrap().instance.resolve(&base()).unwrap().internal(&base()).unwrap();
        let sset = nerve(&FinCat::chain(2), 3, &base()).unwrap();
        let text = serde_json::json!({ "kind": "truncated_sset", "sset": sset }).to_string();
        let b = parse(&text).unwrap().instance.resolve(&base()).unwrap().internal(&base()).unwrap();
        assert_eq!(a.sset().levels(), b.sset().levels());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse(r#"{ "kind": "monoid" }"#).is_err());
        let both = parse(r#"{ "kind": "fincat" }"#).unwrap().instance.resolve(&base());
        assert!(matches!(both, Err(Error::Malformed(_))));
        let unknown = parse(r#"{ "kind": "fincat", "preset": "nowhere" }"#).unwrap().instance.resolve(&base());
        assert!(unknown.is_err());
        let sset = TruncSSet::standard_simplex(1, 2);
        let text = serde_json::json!({ "kind": "simplicial_object", "base": { "name": "sets" }, "sset": sset }).to_string();
        assert!(parse(&text).unwrap().instance.resolve(&base()).is_err());
    }
}
