use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fairness::FairnessSpec;
use crate::matroid::MatroidSpec;
use crate::objective::ObjectiveSpec;
use crate::set::ElementSet;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    universe: usize,
    colors: Vec<usize>,
    matroid: MatroidSpec,
    fairness: Bounds,
    objective: ObjectiveSpec,
    #[serde(default)]
    metadata: Metadata,
}

/// A validated problem instance: matroid, coloring with bounds, objective.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "InstanceFile", into = "InstanceFile")]
pub struct Instance {
    pub matroid: MatroidSpec,
    pub fairness: FairnessSpec,
    pub objective: ObjectiveSpec,
    pub metadata: Metadata,
}

impl TryFrom<InstanceFile> for Instance {
    type Error = Error;

    fn try_from(f: InstanceFile) -> Result<Self> {
        let inst = Instance {
            matroid: f.matroid,
            fairness: FairnessSpec {
                colors: f.colors,
                lower: f.fairness.lower,
                upper: f.fairness.upper,
            },
            objective: f.objective,
            metadata: f.metadata,
        };
        if inst.universe_size() != f.universe {
            return Err(Error::malformed(format!(
                "universe is {}, but {} colors are given",
                f.universe,
                inst.universe_size()
            )));
        }
        inst.validate()?;
        Ok(inst)
    }
}

impl From<Instance> for InstanceFile {
    fn from(i: Instance) -> Self {
        InstanceFile {
            universe: i.fairness.colors.len(),
            colors: i.fairness.colors,
            matroid: i.matroid,
            fairness: Bounds {
                lower: i.fairness.lower,
                upper: i.fairness.upper,
            },
            objective: i.objective,
            metadata: i.metadata,
        }
    }
}

impl Instance {
    pub fn new(
        matroid: MatroidSpec,
        fairness: FairnessSpec,
        objective: ObjectiveSpec,
        metadata: Metadata,
    ) -> Result<Self> {
        let inst = Instance { matroid, fairness, objective, metadata };
        inst.validate()?;
        Ok(inst)
    }

    pub fn universe_size(&self) -> usize {
        self.fairness.colors.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.universe_size();
        self.fairness.validate()?;
        self.matroid.validate()?;
        self.objective.validate()?;
        for (what, size) in [
            ("matroid", self.matroid.universe_size()),
            ("objective", self.objective.universe_size()),
        ] {
            if size != n {
                return Err(Error::malformed(format!(
                    "{what} covers {size} elements, the coloring {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical serialization; loading it back gives an equal instance.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| context(e, path))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

fn context(e: Error, path: &Path) -> Error {
    match e {
        Error::Json(j) => Error::malformed(format!("{}: {j}", path.display())),
        Error::Malformed(m) => Error::malformed(format!("{}: {m}", path.display())),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub elements: ElementSet,
}

impl Solution {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| context(e.into(), path))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, serde_json::to_string(self)? + "\n")?;
        Ok(())
    }
}
