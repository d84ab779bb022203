//! In-process simulation of a `k + 2`-node cluster storing one striped file,
//! with failure injection, metered repair, and shard persistence.

mod ingest;
mod node;
mod shard_file;
mod state;

pub use ingest::{
    byte_to_trits, extract, ingest, stripe_count, trits_to_byte, FileMeta, TRITS_PER_BYTE,
};
pub use node::{NodeStatus, NodeStore};
pub use shard_file::{pack_trits, unpack_trits, ShardFile, HEADER_LEN, MAGIC, VERSION};
pub use state::{
    ClusterState, Command, Mismatch, RepairMode, RepairReport, ScrubReport, FALLBACK_LABEL,
    MAX_FAILURES,
};
