//! The `(k+2, k)` Zigzag code over GF(3): index arithmetic, coding matrices,
//! encoding, and decoding from any `k` shards.
//!
//! Node `k` stores row sums of the systematic parts. Node `k+1` stores
//! `Σ_j A_j f_j`, where each `A_j` is a signed permutation. Equivalently, its
//! row `l` sums the zigzag set `{(l ⊕ e_j, j)}` with sign coefficients.

mod codec;
mod coding;
mod index;
mod params;

pub use codec::{Codeword, Decoder, FileParts, ZigzagCode};
pub use coding::{
    build_coding_matrices, coding_matrix_from_zigzag, verify_mds,
    verify_signed_permutation_structure, CodingMatrixSet, MdsReport, SignedPermutationReport,
};
pub use index::{beta, permutation_apply, zigzag_set, BinaryIndex};
pub use params::{CodeParams, DEFAULT_MAX_K};

pub(crate) use index::unit;
