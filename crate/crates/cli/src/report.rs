//! JSON payloads written by `--format json`.

use serde::{Deserialize, Serialize};

use sedf_core::{BlockFamily, EquivalenceWitness, FamilyRecord, ParamSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub group: Option<String>,
    pub parameters: serde_json::Value,
    /// Omitted from table output so repeated runs are byte-identical.
    pub wall_time_ms: Option<f64>,
    pub payload: Payload,
    pub version: String,
}

impl RunReport {
    pub fn new(command: Vec<String>, payload: Payload) -> Self {
        Self {
            command,
            group: None,
            parameters: serde_json::Value::Null,
            wall_time_ms: None,
            payload,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Every family carried by the payload, re-read from its labels.
    pub fn families(&self) -> sedf_core::Result<Vec<BlockFamily>> {
        let records: Vec<&FamilyRecord> = match &self.payload {
            Payload::Families { families, .. } => families.iter().collect(),
            Payload::Classes { classes } => classes
                .iter()
                .flat_map(|c| c.members.iter().map(|m| &m.family))
                .collect(),
            Payload::Cells { cells } => cells
                .iter()
                .flat_map(|c| c.classes.iter().map(|k| &k.representative))
                .collect(),
            _ => Vec::new(),
        };
        records.into_iter().map(BlockFamily::from_record).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Families {
        families: Vec<FamilyRecord>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nodes: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        equivalent: Option<bool>,
    },
    Classes {
        classes: Vec<ClassRecord>,
    },
    Params {
        rows: Vec<ParamSet>,
    },
    Groups {
        groups: Vec<GroupRecord>,
    },
    Verification(VerificationRecord),
    Cells {
        cells: Vec<CellRecord>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub name: String,
    pub order: usize,
    pub abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// Image label of each source element under the automorphism.
    pub alpha: Vec<String>,
    pub g: String,
    pub h: String,
    pub permutation: Vec<usize>,
}

impl WitnessRecord {
    pub fn from_witness(w: &EquivalenceWitness) -> Self {
        let t = w.alpha.target();
        Self {
            alpha: w
                .alpha
                .image()
                .iter()
                .map(|&x| t.label(x as usize).to_string())
                .collect(),
            g: t.label(w.g).to_string(),
            h: t.label(w.h).to_string(),
            permutation: w.permutation.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberRecord {
    pub family: FamilyRecord,
    /// Maps this member onto the class representative.
    pub witness: WitnessRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub group: String,
    pub representative: FamilyRecord,
    pub size: usize,
    pub members: Vec<MemberRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramRow {
    /// Block index, or `None` for a histogram over the whole family.
    pub block: Option<usize>,
    pub counts: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub property: String,
    pub family: FamilyRecord,
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub histogram: Vec<HistogramRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellClass {
    pub representative: FamilyRecord,
    pub example: FamilyRecord,
    pub cases: Vec<String>,
    pub members: usize,
}

/// One (parameters, group) cell of a classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub params: (usize, usize, usize, usize),
    pub group: String,
    pub abelian: bool,
    pub families_found: usize,
    pub classes: Vec<CellClass>,
}

impl CellRecord {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}
