//! JSON run configurations.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::{ActionFamily, ActionSpec};
use crate::error::{Error, Result};
use crate::poset::PosetSpec;
use crate::space::{AbelianSpace, SpaceSpec, DEFAULT_SIZE_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceConfig {
    #[serde(flatten)]
    pub spec: SpaceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_multiplier: Option<u32>,
}

/// ```json
/// {
///   "space": {"kind": "vector", "n": 4, "field": {"p": 3}},
///   "action": {"family": "hamming"}
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub space: SpaceConfig,
    pub action: ActionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify_representatives: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx_digits: Option<usize>,
}

impl RunConfig {
    pub fn new(space: SpaceSpec, action: ActionSpec) -> Self {
        RunConfig {
            space: SpaceConfig { spec: space, lambda_multiplier: None },
            action,
            poset: None,
            verify_representatives: None,
            matrix_bound: None,
            size_bound: None,
            approx_digits: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn build_space(&self, size_bound: Option<usize>) -> Result<Arc<AbelianSpace>> {
        let bound = size_bound.or(self.size_bound).unwrap_or(DEFAULT_SIZE_BOUND);
        let lambda = self.space.lambda_multiplier.unwrap_or(1);
        Ok(Arc::new(AbelianSpace::with_options(&self.space.spec, bound, lambda)?))
    }

    /// The action, with `poset.levels` filled into weak Hamming families.
    pub fn action_spec(&self) -> Result<ActionSpec> {
        let from_poset = self.poset.as_ref().map(|p| p.levels.clone());
        let merge = |levels: &Option<Vec<usize>>| -> Result<Option<Vec<usize>>> {
            match (levels, &from_poset) {
                (Some(a), Some(b)) if a != b => Err(Error::Config(format!(
                    "action levels {a:?} disagree with poset levels {b:?}"
                ))),
                (Some(a), _) => Ok(Some(a.clone())),
                (None, b) => Ok(b.clone()),
            }
        };
        Ok(match &self.action {
            ActionSpec::WeakHamming { levels } => ActionSpec::WeakHamming { levels: merge(levels)? },
            ActionSpec::WeakHammingDual { levels } => ActionSpec::WeakHammingDual { levels: merge(levels)? },
            other => {
                if from_poset.is_some() {
                    return Err(Error::Config("a poset is only meaningful for weak Hamming actions".into()));
                }
                other.clone()
            }
        })
    }

    pub fn resolve(&self, space: &AbelianSpace) -> Result<ActionFamily> {
        ActionFamily::resolve(&self.action_spec()?, space)
    }
}
