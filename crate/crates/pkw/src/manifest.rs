//! Run manifest: everything needed to replay a run, plus timings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardPlanJson {
    pub depth: usize,
    pub count: u64,
    pub ids: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub command: String,
    pub a: usize,
    pub b: usize,
    pub seed: u64,
    pub lambdas: Vec<String>,
    pub shard_plan: ShardPlanJson,
    pub workers: usize,
    /// per-partition wall time in milliseconds
    pub elapsed_ms: BTreeMap<String, u128>,
    pub total_elapsed_ms: u128,
}

impl Manifest {
    pub fn write(&self, path: &Path) -> Result<(), Error> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}
