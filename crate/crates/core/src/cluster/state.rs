use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gf3::Gf3;
use crate::repair::{plan_repair, RepairPlan, RepairVariant};
use crate::zigzag::{CodeParams, FileParts, ZigzagCode};

use super::ingest::{extract, ingest, FileMeta};
use super::node::{NodeStatus, NodeStore};
use super::shard_file::ShardFile;

/// Failures the code tolerates.
pub const MAX_FAILURES: usize = 2;

pub const FALLBACK_LABEL: &str = "fallback: full download, reads=kN";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepairMode {
    /// Parity repair with `N/2` symbols from each of the `k + 1` survivors.
    Optimal,
    /// Decode the file from `k` whole shards and re-encode the lost one.
    FullDownload,
    /// Target was healthy; nothing done.
    NoOp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepairReport {
    pub node: usize,
    pub mode: RepairMode,
    pub variant: Option<RepairVariant>,
    pub stripes: u64,
    /// `(node, symbols read)` for every node that was read.
    pub reads_per_node: Vec<(usize, u64)>,
    pub sent_per_node: Vec<(usize, u64)>,
    pub total_reads: u64,
    pub total_sent: u64,
    /// For optimal repairs, `kN + N - k` per stripe.
    pub expected_reads_per_stripe: Option<u64>,
    pub warning: Option<String>,
}

impl RepairReport {
    pub fn reads_per_stripe(&self) -> u64 {
        self.total_reads.checked_div(self.stripes).unwrap_or(0)
    }

    pub fn sent_per_stripe(&self) -> u64 {
        self.total_sent.checked_div(self.stripes).unwrap_or(0)
    }

    /// Whether measured reads equal the expected optimal count. `None` for
    /// non-optimal repairs.
    pub fn matches_expected(&self) -> Option<bool> {
        self.expected_reads_per_stripe
            .map(|e| e * self.stripes == self.total_reads)
    }

    pub fn label(&self) -> &'static str {
        match self.mode {
            RepairMode::Optimal => "optimal parity repair",
            RepairMode::FullDownload => FALLBACK_LABEL,
            RepairMode::NoOp => "no-op: node is healthy",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Mismatch {
    pub node: usize,
    pub stripe: u64,
    pub row: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScrubReport {
    pub mismatches: Vec<Mismatch>,
    /// Parity nodes that could not be checked because they, or a systematic
    /// node they depend on, are failed.
    pub unchecked: Vec<usize>,
}

impl ScrubReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.unchecked.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Command {
    Fail(usize),
    Repair(usize),
}

/// A simulated `k + 2`-node cluster holding one striped file.
///
/// All mutation goes through `&mut self`, so commands are applied one at a
/// time. Repair reads run in parallel over stripes when the execution mode
/// allows it.
#[derive(Clone, Debug)]
pub struct ClusterState {
    code: ZigzagCode,
    nodes: Vec<NodeStore>,
    meta: FileMeta,
    exec: Execution,
}

impl PartialEq for ClusterState {
    fn eq(&self, other: &Self) -> bool {
        self.params() == other.params() && self.nodes == other.nodes && self.meta == other.meta
    }
}

impl ClusterState {
    /// Ingests `bytes`, encodes every stripe, and places shard `i` on node `i`.
    pub fn encode(params: CodeParams, bytes: &[u8], exec: Execution) -> Self {
        let code = ZigzagCode::from_params(params);
        let (stripes, meta) = ingest(&params, bytes);
        let codewords = exec.map_slice(&stripes, |s| code.encode(s));
        let n = params.symbols_per_node();
        let nodes = (0..params.node_count())
            .map(|i| {
                let mut symbols = Vec::with_capacity(stripes.len() * n);
                for cw in &codewords {
                    symbols.extend_from_slice(cw.shard(i));
                }
                NodeStore::new(i, symbols)
            })
            .collect();
        ClusterState {
            code,
            nodes,
            meta,
            exec,
        }
    }

    /// Rebuilds a cluster from persisted shards. Missing entries become
    /// failed nodes.
    pub fn from_shards(
        params: CodeParams,
        meta: FileMeta,
        shards: Vec<Option<ShardFile>>,
        exec: Execution,
    ) -> Result<Self> {
        if shards.len() != params.node_count() {
            return Err(Error::ShapeMismatch {
                op: "from_shards",
                left: (shards.len(), 1),
                right: (params.node_count(), 1),
            });
        }
        let mut nodes = Vec::with_capacity(shards.len());
        for (i, s) in shards.into_iter().enumerate() {
            let mut node = NodeStore::new(i, Vec::new());
            match s {
                Some(f) => {
                    f.validate(&params)?;
                    if usize::from(f.node_id) != i {
                        return Err(Error::Format(format!(
                            "shard for node {} placed at {i}",
                            f.node_id
                        )));
                    }
                    if u64::from(f.stripe_count) != meta.stripes {
                        return Err(Error::Inconsistent(format!(
                            "node {i} holds {} stripes, manifest says {}",
                            f.stripe_count, meta.stripes
                        )));
                    }
                    node.restore(f.symbols);
                }
                None => node.fail(),
            }
            nodes.push(node);
        }
        let failed = nodes.iter().filter(|n| !n.is_healthy()).count();
        if failed > MAX_FAILURES {
            return Err(Error::InsufficientData {
                available: nodes.len() - failed,
                required: params.k(),
            });
        }
        Ok(ClusterState {
            code: ZigzagCode::from_params(params),
            nodes,
            meta,
            exec,
        })
    }

    pub fn params(&self) -> &CodeParams {
        self.code.params()
    }

    pub fn meta(&self) -> &FileMeta {
        &self.meta
    }

    pub fn nodes(&self) -> &[NodeStore] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> Result<&NodeStore> {
        self.params().check_node(id)?;
        Ok(&self.nodes[id])
    }

    pub fn failed_nodes(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| !n.is_healthy())
            .map(NodeStore::id)
            .collect()
    }

    pub fn stripe_count(&self) -> usize {
        self.meta.stripes as usize
    }

    /// Every node's contents, for comparing whole-cluster state.
    pub fn contents(&self) -> Vec<Vec<Gf3>> {
        self.nodes.iter().map(|n| n.symbols().to_vec()).collect()
    }

    /// `(reads, sent)` for every node.
    pub fn meters(&self) -> Vec<(u64, u64)> {
        self.nodes
            .iter()
            .map(|n| (n.read_counter(), n.sent_counter()))
            .collect()
    }

    pub fn shard_file(&self, id: usize) -> Result<ShardFile> {
        let node = self.node(id)?;
        if !node.is_healthy() {
            return Err(Error::NodeUnavailable(id));
        }
        ShardFile::new(
            self.params(),
            id,
            self.meta.stripes as u32,
            node.symbols().to_vec(),
        )
    }

    /// Fails node `id`, wiping its contents. Refuses when that would leave
    /// more than two nodes failed. Failing an already failed node is a no-op.
    pub fn fail_node(&mut self, id: usize) -> Result<()> {
        self.params().check_node(id)?;
        if !self.nodes[id].is_healthy() {
            return Ok(());
        }
        let failed = self.failed_nodes().len();
        if failed >= MAX_FAILURES {
            return Err(Error::DataLoss { node: id, failed });
        }
        self.nodes[id].fail();
        Ok(())
    }

    /// Rebuilds node `id`. A parity node with every other node healthy gets
    /// the optimal repair; anything else decodes from `k` whole shards.
    pub fn repair_node(&mut self, id: usize) -> Result<RepairReport> {
        self.params().check_node(id)?;
        let p = *self.params();
        if self.nodes[id].is_healthy() {
            return Ok(RepairReport {
                node: id,
                mode: RepairMode::NoOp,
                variant: None,
                stripes: self.meta.stripes,
                reads_per_node: Vec::new(),
                sent_per_node: Vec::new(),
                total_reads: 0,
                total_sent: 0,
                expected_reads_per_stripe: None,
                warning: Some(format!("node {id} is healthy; nothing to repair")),
            });
        }
        let before = self.meters();
        let optimal = p.is_parity(id) && self.failed_nodes() == [id];
        let (symbols, mode, variant) = if optimal {
            let plan = plan_repair(&self.code, id)?;
            (
                self.optimal_repair(&plan)?,
                RepairMode::Optimal,
                Some(plan.variant()),
            )
        } else {
            (
                self.full_download_repair(id)?,
                RepairMode::FullDownload,
                None,
            )
        };
        self.nodes[id].restore(symbols);

        let after = self.meters();
        let mut reads_per_node = Vec::new();
        let mut sent_per_node = Vec::new();
        for (i, (b, a)) in before.iter().zip(&after).enumerate() {
            if a.0 > b.0 {
                reads_per_node.push((i, a.0 - b.0));
            }
            if a.1 > b.1 {
                sent_per_node.push((i, a.1 - b.1));
            }
        }
        Ok(RepairReport {
            node: id,
            mode,
            variant,
            stripes: self.meta.stripes,
            total_reads: reads_per_node.iter().map(|r| r.1).sum(),
            total_sent: sent_per_node.iter().map(|r| r.1).sum(),
            reads_per_node,
            sent_per_node,
            expected_reads_per_stripe: optimal.then(|| p.parity_repair_io() as u64),
            warning: None,
        })
    }

    fn optimal_repair(&self, plan: &RepairPlan) -> Result<Vec<Gf3>> {
        let n = self.params().symbols_per_node();
        let half = self.params().half();
        let nodes = &self.nodes;
        let stripes = self.exec.map_range(self.stripe_count(), |s| {
            let downloads = plan
                .helpers()
                .iter()
                .map(|h| {
                    let node = &nodes[h.node];
                    let reads = node.read(n, s, &h.read_columns)?;
                    let d = h.download_from_reads(&reads)?;
                    node.record_sent(half);
                    Ok(d)
                })
                .collect::<Result<Vec<_>>>()?;
            plan.execute(&downloads)
        });
        flatten(stripes, n)
    }

    fn full_download_repair(&self, id: usize) -> Result<Vec<Gf3>> {
        let p = *self.params();
        let n = p.symbols_per_node();
        let sources: Vec<usize> = (0..p.node_count())
            .filter(|&i| i != id && self.nodes[i].is_healthy())
            .take(p.k())
            .collect();
        let decoder = self.code.decoder(&sources)?;
        let nodes = &self.nodes;
        let code = &self.code;
        let stripes = self.exec.map_range(self.stripe_count(), |s| {
            let mut shards: Vec<Option<Vec<Gf3>>> = vec![None; p.node_count()];
            for &src in &sources {
                shards[src] = Some(nodes[src].read_stripe(n, s)?);
                nodes[src].record_sent(n);
            }
            let refs: Vec<Option<&[Gf3]>> = shards.iter().map(|s| s.as_deref()).collect();
            let parts = decoder.decode(&refs)?;
            Ok(rebuild_shard(code, &parts, id))
        });
        flatten(stripes, n)
    }

    /// Decodes every stripe from healthy nodes and returns the original bytes.
    /// Does not touch the meters.
    pub fn read_file(&self) -> Result<Vec<u8>> {
        let p = *self.params();
        let n = p.symbols_per_node();
        let healthy: Vec<usize> = (0..p.node_count())
            .filter(|&i| self.nodes[i].is_healthy())
            .collect();
        let decoder = self.code.decoder(&healthy)?;
        let nodes = &self.nodes;
        let stripes = self
            .exec
            .map_range(self.stripe_count(), |s| {
                let refs: Vec<Option<&[Gf3]>> = nodes
                    .iter()
                    .map(|nd| nd.is_healthy().then(|| &nd.symbols()[s * n..(s + 1) * n]))
                    .collect();
                decoder.decode(&refs)
            })
            .into_iter()
            .collect::<Result<Vec<FileParts>>>()?;
        extract(&p, &stripes, &self.meta)
    }

    /// Recomputes both parities from the systematic nodes and lists every
    /// position where a stored parity disagrees.
    pub fn scrub(&self) -> ScrubReport {
        let p = *self.params();
        let n = p.symbols_per_node();
        let parities = [p.first_parity(), p.second_parity()];
        if (0..p.k()).any(|j| !self.nodes[j].is_healthy()) {
            return ScrubReport {
                mismatches: Vec::new(),
                unchecked: parities.to_vec(),
            };
        }
        let checked: Vec<usize> = parities
            .iter()
            .copied()
            .filter(|&i| self.nodes[i].is_healthy())
            .collect();
        let nodes = &self.nodes;
        let code = &self.code;
        let per_stripe = self.exec.map_range(self.stripe_count(), |s| {
            let parts: Vec<Vec<Gf3>> = (0..p.k())
                .map(|j| nodes[j].symbols()[s * n..(s + 1) * n].to_vec())
                .collect();
            let parts = FileParts::new(&p, parts).expect("systematic blocks have N symbols");
            let mut out = Vec::new();
            for &node in &checked {
                let expect = rebuild_shard(code, &parts, node);
                let stored = &nodes[node].symbols()[s * n..(s + 1) * n];
                for (row, (a, b)) in expect.iter().zip(stored).enumerate() {
                    if a != b {
                        out.push(Mismatch {
                            node,
                            stripe: s as u64,
                            row,
                        });
                    }
                }
            }
            out
        });
        let mut mismatches: Vec<Mismatch> = per_stripe.into_iter().flatten().collect();
        mismatches.sort_by_key(|m| (m.node, m.stripe, m.row));
        ScrubReport {
            mismatches,
            unchecked: parities
                .iter()
                .copied()
                .filter(|i| !checked.contains(i))
                .collect(),
        }
    }

    /// Adds one to the symbol at `index` of node `id`, bypassing the meters.
    /// For fault-injection tests.
    pub fn corrupt_symbol(&mut self, id: usize, index: usize) -> Result<()> {
        let node = &mut self.nodes[id];
        let len = node.symbols().len();
        let sym = node.symbols_mut().get_mut(index).ok_or(Error::OutOfRange {
            what: "symbol index",
            value: index,
            bound: len,
        })?;
        *sym += Gf3::ONE;
        Ok(())
    }

    pub fn apply(&mut self, cmd: Command) -> Result<Option<RepairReport>> {
        match cmd {
            Command::Fail(id) => self.fail_node(id).map(|_| None),
            Command::Repair(id) => self.repair_node(id).map(Some),
        }
    }

    pub fn status(&self) -> Vec<NodeStatus> {
        self.nodes.iter().map(NodeStore::status).collect()
    }
}

fn rebuild_shard(code: &ZigzagCode, parts: &FileParts, node: usize) -> Vec<Gf3> {
    let p = code.params();
    if node < p.k() {
        parts.part(node).to_vec()
    } else if node == p.first_parity() {
        code.first_parity(parts)
    } else {
        code.second_parity_matrix(parts)
    }
}

fn flatten(stripes: Vec<Result<Vec<Gf3>>>, n: usize) -> Result<Vec<Gf3>> {
    let mut out = Vec::with_capacity(stripes.len() * n);
    for s in stripes {
        out.extend(s?);
    }
    Ok(out)
}
