use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use zigzag_msr::cluster::{stripe_count, FileMeta, TRITS_PER_BYTE};
use zigzag_msr::CodeParams;

use crate::error::CliError;

pub const MANIFEST_NAME: &str = "manifest.json";

/// Written next to the shard files by `encode`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub k: usize,
    pub stripes: u64,
    pub original_len: u64,
    /// CRC32 of each node's packed payload, indexed by node id.
    pub shard_crc: Vec<u32>,
}

impl Manifest {
    pub fn meta(&self, params: &CodeParams) -> Result<FileMeta, CliError> {
        if self.k != params.k() || self.shard_crc.len() != params.node_count() {
            return Err(CliError::Manifest(format!(
                "k = {} with {} shard CRCs does not describe a k = {} code",
                self.k,
                self.shard_crc.len(),
                params.k()
            )));
        }
        let data = self.original_len * TRITS_PER_BYTE as u64;
        let padding_trits = (self.stripes * params.file_symbols() as u64)
            .checked_sub(data)
            .filter(|_| self.stripes == stripe_count(params, self.original_len))
            .ok_or_else(|| {
                CliError::Manifest(format!(
                    "{} stripes cannot hold {} bytes",
                    self.stripes, self.original_len
                ))
            })?;
        Ok(FileMeta {
            original_len: self.original_len,
            stripes: self.stripes,
            padding_trits,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Manifest(format!("{}: {e}", path.display())))
    }

    pub fn store(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
    }
}
