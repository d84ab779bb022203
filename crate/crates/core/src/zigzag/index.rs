//! Row indices as bit vectors, the permutations `x ↦ x ⊕ e_j`, zigzag sets,
//! and the sign coefficients of the second parity.
//!
//! A row index `i < N = 2^(k-1)` is read as the bit vector `(i_1, …, i_{k-1})`
//! with `i_1` the most significant bit: `i = Σ 2^(k-1-j) i_j`. The unit
//! vector `e_j` therefore has integer value `2^(k-1-j)`, and `e_0 = 0`.

use crate::error::Result;
use crate::gf3::Gf3;

use super::params::CodeParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryIndex {
    value: usize,
    width: usize,
}

impl BinaryIndex {
    pub fn new(params: &CodeParams, value: usize) -> Result<Self> {
        params.check_row(value)?;
        Ok(BinaryIndex {
            value,
            width: params.k() - 1,
        })
    }

    /// Builds an index from `(i_1, …, i_{k-1})`, most significant first.
    pub fn from_bits(bits: &[u8]) -> Self {
        let value = bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b & 1));
        BinaryIndex {
            value,
            width: bits.len(),
        }
    }

    #[inline]
    pub fn value(self) -> usize {
        self.value
    }

    /// `(i_1, …, i_{k-1})`.
    pub fn bits(self) -> Vec<u8> {
        (1..=self.width).map(|j| self.bit(j)).collect()
    }

    /// `i_j` for `1 ≤ j ≤ k-1`.
    #[inline]
    pub fn bit(self, j: usize) -> u8 {
        ((self.value >> (self.width - j)) & 1) as u8
    }

    /// `self ⊕ e_j`.
    #[inline]
    pub fn flip(self, j: usize) -> Self {
        BinaryIndex {
            value: self.value ^ unit(self.width + 1, j),
            width: self.width,
        }
    }
}

/// Integer value of `e_j` for a code with `k` systematic nodes.
#[inline]
pub(crate) fn unit(k: usize, j: usize) -> usize {
    if j == 0 {
        0
    } else {
        1 << (k - 1 - j)
    }
}

/// `P_j(x) = x ⊕ e_j`. Self-inverse.
pub fn permutation_apply(params: &CodeParams, j: usize, x: usize) -> Result<usize> {
    params.check_systematic(j)?;
    params.check_row(x)?;
    Ok(x ^ unit(params.k(), j))
}

/// The `(row, node)` pairs combined into row `l` of the second parity:
/// `{(l ⊕ e_j, j) : 0 ≤ j < k}`, ordered by node.
pub fn zigzag_set(params: &CodeParams, l: usize) -> Result<Vec<(usize, usize)>> {
    params.check_row(l)?;
    Ok((0..params.k())
        .map(|j| (l ^ unit(params.k(), j), j))
        .collect())
}

/// Sign coefficient of symbol `(i, j)` in the second parity:
/// `1` for `j = 0`, otherwise `(-1)^(i_1 + … + i_j)`.
pub fn beta(params: &CodeParams, i: usize, j: usize) -> Result<Gf3> {
    params.check_row(i)?;
    params.check_systematic(j)?;
    Ok(beta_unchecked(params.k(), i, j))
}

#[inline]
pub(crate) fn beta_unchecked(k: usize, i: usize, j: usize) -> Gf3 {
    if j == 0 {
        return Gf3::ONE;
    }
    // The top j of the k-1 bits are i_1..i_j.
    let leading = i >> (k - 1 - j);
    Gf3::sign(leading.count_ones())
}
