use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gf3::{add_assign, solve_left, Gf3, Gf3Lu, Gf3Matrix};
use crate::zigzag::{CodeParams, ZigzagCode};

use super::conditions::{
    download_matrices, interference_image, useful_system, verify_repair_conditions,
};
use super::matrices::{build_repair_pair, RepairMatrixPair, RepairVariant};

/// One surviving node's contribution to a repair.
#[derive(Clone, Debug)]
pub struct Helper {
    pub node: usize,
    /// `N/2 × N` download matrix.
    pub matrix: Gf3Matrix,
    /// Columns of `matrix` with a nonzero entry: the symbols that must be read.
    pub read_columns: Vec<usize>,
    /// `matrix` restricted to `read_columns`.
    compressed: Gf3Matrix,
}

impl Helper {
    fn new(node: usize, matrix: Gf3Matrix) -> Self {
        let read_columns = matrix.nonzero_columns();
        let mut compressed = Gf3Matrix::zeros(matrix.rows(), read_columns.len());
        for r in 0..matrix.rows() {
            for (c, &src) in read_columns.iter().enumerate() {
                compressed.set(r, c, matrix.get(r, src));
            }
        }
        Helper {
            node,
            matrix,
            read_columns,
            compressed,
        }
    }

    /// The `N/2` symbols this helper sends, given the full shard.
    pub fn download(&self, shard: &[Gf3]) -> Result<Vec<Gf3>> {
        self.matrix.mul_vec(shard)
    }

    /// The `N/2` symbols this helper sends, given only the symbols at
    /// [`Helper::read_columns`], in that order.
    pub fn download_from_reads(&self, reads: &[Gf3]) -> Result<Vec<Gf3>> {
        self.compressed.mul_vec(reads)
    }
}

/// Everything needed to rebuild one parity node from `N/2` symbols per
/// helper. Immutable once built; [`RepairPlan::execute`] is reentrant.
#[derive(Clone, Debug)]
pub struct RepairPlan {
    params: CodeParams,
    failed: usize,
    variant: RepairVariant,
    pair: RepairMatrixPair,
    /// Systematic nodes `0..k` in order, then the surviving parity.
    helpers: Vec<Helper>,
    /// `T_l` with `T_l · S = S~ (B_0 - B_l)`, for `l = 1..k`.
    projectors: Vec<Gf3Matrix>,
    system: Gf3Lu,
}

/// Disk-I/O and bandwidth summary of a plan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanSummary {
    pub k: usize,
    pub failed_node: usize,
    pub variant: RepairVariant,
    pub io_per_node: Vec<(usize, usize)>,
    pub total_io: usize,
    pub bandwidth: usize,
    pub expected_io: usize,
}

/// Builds the repair plan for parity node `failed` (`k` or `k + 1`).
pub fn plan_repair(code: &ZigzagCode, failed: usize) -> Result<RepairPlan> {
    RepairPlan::new(code, failed)
}

impl RepairPlan {
    pub fn new(code: &ZigzagCode, failed: usize) -> Result<Self> {
        let params = *code.params();
        let variant = RepairVariant::for_node(&params, failed)?;
        let pair = build_repair_pair(params.k(), variant)?;
        Self::with_pair(code, pair, variant)
    }

    /// Builds a plan from an arbitrary pair. Fails if the pair does not
    /// satisfy the optimal-repair conditions for `variant`.
    pub fn with_pair(
        code: &ZigzagCode,
        pair: RepairMatrixPair,
        variant: RepairVariant,
    ) -> Result<Self> {
        let params = *code.params();
        let cm = code.coding_matrices();
        let report = verify_repair_conditions(&pair, cm, variant, Execution::Sequential);
        if let Some(bad) = report.violations().first() {
            return Err(Error::Internal(format!(
                "repair matrices violate {}: rank {} != {}",
                bad.label, bad.actual, bad.expected
            )));
        }
        let projectors = (1..params.k())
            .map(|l| {
                solve_left(&pair.s, &interference_image(&pair.s_tilde, cm, l, variant))
                    .map_err(|e| Error::Internal(format!("interference projector {l}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let system = Gf3Lu::factor(&useful_system(&pair.s, &pair.s_tilde, cm, variant))
            .map_err(|e| Error::Internal(format!("repair system: {e}")))?;
        let helpers = download_matrices(&pair, cm, variant)
            .into_iter()
            .map(|(node, m)| Helper::new(node, m))
            .collect();
        Ok(RepairPlan {
            params,
            failed: variant.failed_node(&params),
            variant,
            pair,
            helpers,
            projectors,
            system,
        })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn failed_node(&self) -> usize {
        self.failed
    }

    pub fn variant(&self) -> RepairVariant {
        self.variant
    }

    pub fn pair(&self) -> &RepairMatrixPair {
        &self.pair
    }

    pub fn helpers(&self) -> &[Helper] {
        &self.helpers
    }

    pub fn projectors(&self) -> &[Gf3Matrix] {
        &self.projectors
    }

    pub fn io_per_node(&self) -> Vec<(usize, usize)> {
        self.helpers
            .iter()
            .map(|h| (h.node, h.read_columns.len()))
            .collect()
    }

    pub fn total_io(&self) -> usize {
        self.helpers.iter().map(|h| h.read_columns.len()).sum()
    }

    /// `(k+1) · N/2` symbols transferred.
    pub fn bandwidth(&self) -> usize {
        self.helpers.len() * self.params.half()
    }

    pub fn summary(&self) -> PlanSummary {
        PlanSummary {
            k: self.params.k(),
            failed_node: self.failed,
            variant: self.variant,
            io_per_node: self.io_per_node(),
            total_io: self.total_io(),
            bandwidth: self.bandwidth(),
            expected_io: self.params.parity_repair_io(),
        }
    }

    /// Rebuilds the failed parity from one download per helper, in helper
    /// order.
    pub fn execute(&self, downloads: &[Vec<Gf3>]) -> Result<Vec<Gf3>> {
        let k = self.params.k();
        let half = self.params.half();
        if downloads.len() != self.helpers.len() {
            return Err(Error::ShapeMismatch {
                op: "execute_repair",
                left: (downloads.len(), half),
                right: (self.helpers.len(), half),
            });
        }
        if let Some(d) = downloads.iter().find(|d| d.len() != half) {
            return Err(Error::ShapeMismatch {
                op: "execute_repair",
                left: (d.len(), 1),
                right: (half, 1),
            });
        }
        // Top block:    S x = Σ_j d_j
        // Bottom block: S~ B_0 x = d_parity + Σ_l T_l d_l
        let mut rhs = vec![Gf3::ZERO; 2 * half];
        let (top, bottom) = rhs.split_at_mut(half);
        for d in &downloads[..k] {
            add_assign(top, d);
        }
        bottom.copy_from_slice(&downloads[k]);
        for (t, d) in self.projectors.iter().zip(&downloads[1..k]) {
            for (r, out) in bottom.iter_mut().enumerate() {
                let row = t.row(r);
                let s: Gf3 = row.iter().zip(d).map(|(&a, &b)| a * b).sum();
                *out += s;
            }
        }
        self.system
            .solve(&rhs)
            .map_err(|e| Error::Internal(format!("repair solve: {e}")))
    }

    /// Convenience: computes every download from full shards (indexed by
    /// node) and executes the repair.
    pub fn repair_from_shards(&self, shards: &[Vec<Gf3>]) -> Result<Vec<Gf3>> {
        let downloads = self
            .helpers
            .iter()
            .map(|h| {
                let shard = shards.get(h.node).ok_or(Error::NodeUnavailable(h.node))?;
                h.download(shard)
            })
            .collect::<Result<Vec<_>>>()?;
        self.execute(&downloads)
    }
}

/// Free-function form of [`RepairPlan::execute`].
pub fn execute_repair(plan: &RepairPlan, downloads: &[Vec<Gf3>]) -> Result<Vec<Gf3>> {
    plan.execute(downloads)
}
