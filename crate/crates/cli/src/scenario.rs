//! Scenario files: one algebra block and a list of jobs. Exact numbers are
//! written as strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub algebra: AlgebraBlock,
    pub jobs: Vec<Job>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraBlock {
    ShiftAlgebra {
        n: String,
        m: String,
    },
    QshiftAlgebra {
        n: String,
        m: String,
    },
    Gwa {
        #[serde(default)]
        preset: Option<String>,
        #[serde(default)]
        base: Vec<String>,
        #[serde(default)]
        params: Vec<String>,
        #[serde(default)]
        sigma: Vec<SigmaBlock>,
        #[serde(default)]
        a: Vec<String>,
    },
    Gt {
        n: String,
    },
    Nilhecke {
        n: String,
    },
}

/// One automorphism of a GWA: `shift` maps a variable to its offset,
/// `scale` maps a variable to the exponents of parameters multiplying it.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaBlock {
    #[serde(default)]
    pub shift: BTreeMap<String, String>,
    #[serde(default)]
    pub scale: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub name: String,
    pub op: String,
    #[serde(default = "empty_object")]
    pub params: Value,
    #[serde(default)]
    pub expect: Expectation,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

/// `status`: whether the job's checks should pass (default) or fail.
/// `value`: fields that must equal the computed value.
/// `interval`: a numeric field of the value that must lie in `[lo, hi]`.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<ExpectedStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ExpectedStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Interval {
    pub field: String,
    pub lo: String,
    pub hi: String,
}

/// Operation parameters, selected by the job's `op`.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "op", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum Op {
    VerifyGwa {},
    VerifyRelations {
        #[serde(default)]
        table: Option<String>,
        #[serde(default)]
        relations: Vec<(String, String)>,
    },
    CheckInvariance {},
    SupportLatticeRank {
        #[serde(default)]
        generators: Option<Vec<String>>,
    },
    CenterCandidates {
        degree: String,
    },
    CommutantFilter {
        candidates: Vec<String>,
        #[serde(default)]
        against: Option<Vec<String>>,
    },
    OreWitness {
        s: String,
        u: String,
    },
    StandardIdentity {
        args: Vec<String>,
        #[serde(default)]
        cap: Option<String>,
    },
    GrowthProfile {
        frame: Vec<String>,
        k_max: String,
    },
    MonoidGrowth {
        generators: Vec<Vec<String>>,
        k_max: String,
    },
    HeckeCheck {
        element: String,
        #[serde(default)]
        mode: Option<String>,
        #[serde(default)]
        shift: Option<String>,
    },
    GammaIndependence {
        seed: String,
    },
}

impl Job {
    pub fn parse_op(&self) -> Result<Op, serde_json::Error> {
        serde_json::from_value(serde_json::json!({ "op": self.op, "params": self.params }))
    }
}
