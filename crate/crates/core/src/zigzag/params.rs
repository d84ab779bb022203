use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `k` accepted by [`CodeParams::new`]. Use
/// [`CodeParams::with_cap`] to go beyond it.
pub const DEFAULT_MAX_K: usize = 16;

/// Shape of a `(k+2, k)` Zigzag code: `k` systematic nodes, two parity nodes,
/// `N = 2^(k-1)` symbols per node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CodeParams {
    k: usize,
}

impl CodeParams {
    pub fn new(k: usize) -> Result<Self> {
        Self::with_cap(k, DEFAULT_MAX_K)
    }

    pub fn with_cap(k: usize, max_k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!(
                "k must be at least 2, got {k}"
            )));
        }
        // N must fit the u32 index width used by signed permutations.
        if k > max_k || k > 32 {
            return Err(Error::InvalidParams(format!(
                "k = {k} exceeds the configured cap of {}",
                max_k.min(32)
            )));
        }
        Ok(CodeParams { k })
    }

    /// Number of systematic nodes.
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Symbols per node, `N = 2^(k-1)`.
    #[inline]
    pub fn symbols_per_node(&self) -> usize {
        1 << (self.k - 1)
    }

    /// Rows of every repair matrix, `N/2`.
    #[inline]
    pub fn half(&self) -> usize {
        self.symbols_per_node() / 2
    }

    /// Total node count `n = k + 2`.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.k + 2
    }

    /// Symbols per stripe of user data, `M = kN`.
    #[inline]
    pub fn file_symbols(&self) -> usize {
        self.k * self.symbols_per_node()
    }

    /// Index of the row-sum parity node.
    #[inline]
    pub fn first_parity(&self) -> usize {
        self.k
    }

    /// Index of the zigzag parity node.
    #[inline]
    pub fn second_parity(&self) -> usize {
        self.k + 1
    }

    #[inline]
    pub fn is_parity(&self, node: usize) -> bool {
        node == self.k || node == self.k + 1
    }

    /// Optimal repair bandwidth `(k+1)N/2`.
    pub fn repair_bandwidth(&self) -> usize {
        (self.k + 1) * self.half()
    }

    /// Disk I/O of the constructed parity repair, `kN + N - k`.
    pub fn parity_repair_io(&self) -> usize {
        let n = self.symbols_per_node();
        self.k * n + n - self.k
    }

    /// Errors unless `node` is a valid node id, `0..k+2`.
    pub fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.node_count() {
            return Err(Error::OutOfRange {
                what: "node",
                value: node,
                bound: self.node_count(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_systematic(&self, j: usize) -> Result<()> {
        if j >= self.k {
            return Err(Error::OutOfRange {
                what: "systematic node",
                value: j,
                bound: self.k,
            });
        }
        Ok(())
    }

    pub(crate) fn check_row(&self, x: usize) -> Result<()> {
        if x >= self.symbols_per_node() {
            return Err(Error::OutOfRange {
                what: "row index",
                value: x,
                bound: self.symbols_per_node(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_sizes() {
        let p = CodeParams::new(4).unwrap();
        assert_eq!(p.symbols_per_node(), 8);
        assert_eq!(p.half(), 4);
        assert_eq!(p.node_count(), 6);
        assert_eq!(p.file_symbols(), 32);
        assert_eq!(p.repair_bandwidth(), 20);
        assert_eq!(p.parity_repair_io(), 36);
    }

    #[test]
    fn rejects_bad_k() {
        assert!(CodeParams::new(1).is_err());
        assert!(CodeParams::new(0).is_err());
        assert!(CodeParams::new(17).is_err());
        assert!(CodeParams::with_cap(17, 20).is_ok());
    }
}
