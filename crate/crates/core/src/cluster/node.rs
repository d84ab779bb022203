use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf3::Gf3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeStatus {
    Healthy,
    Failed,
}

/// One node's symbols across every stripe, with read and transfer meters.
///
/// Meters are atomic so that concurrent repair reads of distinct stripes can
/// share a `&NodeStore`.
#[derive(Debug)]
pub struct NodeStore {
    id: usize,
    symbols: Vec<Gf3>,
    status: NodeStatus,
    reads: AtomicU64,
    sent: AtomicU64,
}

impl Clone for NodeStore {
    fn clone(&self) -> Self {
        NodeStore {
            id: self.id,
            symbols: self.symbols.clone(),
            status: self.status,
            reads: AtomicU64::new(self.read_counter()),
            sent: AtomicU64::new(self.sent_counter()),
        }
    }
}

impl PartialEq for NodeStore {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.status == other.status
            && self.symbols == other.symbols
            && self.read_counter() == other.read_counter()
            && self.sent_counter() == other.sent_counter()
    }
}

impl Eq for NodeStore {}

impl NodeStore {
    pub fn new(id: usize, symbols: Vec<Gf3>) -> Self {
        NodeStore {
            id,
            symbols,
            status: NodeStatus::Healthy,
            reads: AtomicU64::new(0),
            sent: AtomicU64::new(0),
        }
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn status(&self) -> NodeStatus {
        self.status
    }

    pub fn is_healthy(&self) -> bool {
        self.status == NodeStatus::Healthy
    }

    /// Symbols read from this node's disk so far.
    pub fn read_counter(&self) -> u64 {
        self.reads.load(Ordering::Relaxed)
    }

    /// Symbols this node has transferred to a repairer so far.
    pub fn sent_counter(&self) -> u64 {
        self.sent.load(Ordering::Relaxed)
    }

    /// Raw contents without metering. Empty while failed.
    pub fn symbols(&self) -> &[Gf3] {
        &self.symbols
    }

    pub(crate) fn symbols_mut(&mut self) -> &mut [Gf3] {
        &mut self.symbols
    }

    /// Reads `columns` of the `n`-symbol block at `stripe`, metering one read
    /// per symbol.
    pub fn read(&self, n: usize, stripe: usize, columns: &[usize]) -> Result<Vec<Gf3>> {
        if !self.is_healthy() {
            return Err(Error::NodeUnavailable(self.id));
        }
        let block = &self.symbols[stripe * n..(stripe + 1) * n];
        self.reads
            .fetch_add(columns.len() as u64, Ordering::Relaxed);
        Ok(columns.iter().map(|&c| block[c]).collect())
    }

    /// Reads the whole `n`-symbol block at `stripe`.
    pub fn read_stripe(&self, n: usize, stripe: usize) -> Result<Vec<Gf3>> {
        if !self.is_healthy() {
            return Err(Error::NodeUnavailable(self.id));
        }
        self.reads.fetch_add(n as u64, Ordering::Relaxed);
        Ok(self.symbols[stripe * n..(stripe + 1) * n].to_vec())
    }

    pub fn record_sent(&self, count: usize) {
        self.sent.fetch_add(count as u64, Ordering::Relaxed);
    }

    /// Marks the node failed and wipes its contents.
    pub(crate) fn fail(&mut self) {
        self.status = NodeStatus::Failed;
        self.symbols = Vec::new();
    }

    pub(crate) fn restore(&mut self, symbols: Vec<Gf3>) {
        self.symbols = symbols;
        self.status = NodeStatus::Healthy;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_node_serves_no_reads() {
        let mut n = NodeStore::new(2, vec![Gf3::ONE; 4]);
        assert_eq!(n.read(2, 1, &[0, 1]).unwrap(), vec![Gf3::ONE; 2]);
        assert_eq!(n.read_counter(), 2);
        n.fail();
        assert_eq!(n.read(2, 0, &[0]), Err(Error::NodeUnavailable(2)));
        assert_eq!(n.read_counter(), 2);
        assert!(n.symbols().is_empty());
    }
}
