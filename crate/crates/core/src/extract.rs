use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::coreex::{extract_coreex, CoreexParams};
use crate::dom::{DomTree, NodeId};
use crate::econ::{extract_econ, BacktrackTrace, EconParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Coreex,
    Econ,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Coreex => "coreex",
            Strategy::Econ => "econ",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coreex" => Ok(Strategy::Coreex),
            "econ" => Ok(Strategy::Econ),
            other => Err(Error::InvalidParams(format!("unknown strategy {other:?}"))),
        }
    }
}

/// A configured extractor.
#[derive(Debug, Clone, PartialEq)]
pub enum Extractor {
    Coreex(CoreexParams),
    Econ(EconParams),
}

impl Extractor {
    pub fn default_for(strategy: Strategy) -> Self {
        match strategy {
            Strategy::Coreex => Extractor::Coreex(CoreexParams::default()),
            Strategy::Econ => Extractor::Econ(EconParams::default()),
        }
    }

    pub fn strategy(&self) -> Strategy {
        match self {
            Extractor::Coreex(_) => Strategy::Coreex,
            Extractor::Econ(_) => Strategy::Econ,
        }
    }

    pub fn extract(&self, tree: &DomTree) -> Result<ExtractionResult> {
        match self {
            Extractor::Coreex(p) => extract_coreex(tree, p),
            Extractor::Econ(p) => extract_econ(tree, p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractionResult {
    pub source_name: String,
    pub strategy: Strategy,
    /// Ids from the root down to the selected node.
    pub node_path: Vec<NodeId>,
    pub text: String,
    pub word_count: u64,
    pub punc_num: u64,
    #[serde(serialize_with = "fixed6::serialize_opt")]
    pub score: Option<f64>,
    #[serde(serialize_with = "serialize_trace")]
    pub trace: Option<BacktrackTrace>,
}

impl ExtractionResult {
    pub fn node(&self) -> NodeId {
        *self.node_path.last().expect("node_path is never empty")
    }
}

fn serialize_trace<S: Serializer>(
    trace: &Option<BacktrackTrace>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    trace.as_ref().map(|t| t.steps.as_slice()).serialize(s)
}

/// Serde helpers that write reals with exactly six decimals, so JSON output
/// is byte-stable.
pub mod fixed6 {
    use serde::{Serialize, Serializer};
    use serde_json::value::RawValue;

    pub fn format(x: f64) -> String {
        format!("{x:.6}")
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if !x.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(format(*x))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }

    pub fn serialize_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => serialize(v, s),
            None => s.serialize_none(),
        }
    }

    /// Wrapper for reals nested inside collections.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct Fixed6(pub f64);

    impl Serialize for Fixed6 {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize(&self.0, s)
        }
    }
}
