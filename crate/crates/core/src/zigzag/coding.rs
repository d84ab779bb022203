//! The coding matrices `A_0 … A_{k-1}` of the second parity.
//!
//! Two independent constructions live here: the block recursion
//! ([`build_coding_matrices`]) and the entrywise description from the
//! zigzag permutations and sign coefficients ([`coding_matrix_from_zigzag`]).
//! They must agree entrywise for every `k`.

use serde::Serialize;

use crate::error::Result;
use crate::exec::Execution;
use crate::gf3::{Gf3, Gf3Matrix, SignedPermutation};
use crate::report::{self, RankCheck};

use super::index::{beta_unchecked, unit};
use super::params::CodeParams;

/// `A_0^(k) … A_{k-1}^(k)` as signed permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingMatrixSet {
    params: CodeParams,
    matrices: Vec<SignedPermutation>,
}

impl CodingMatrixSet {
    /// Wraps an arbitrary matrix family. Used to feed deliberately broken
    /// sets through the verifiers.
    pub fn from_parts(params: CodeParams, matrices: Vec<SignedPermutation>) -> Result<Self> {
        if matrices.len() != params.k() {
            return Err(crate::Error::InvalidParams(format!(
                "expected {} coding matrices, got {}",
                params.k(),
                matrices.len()
            )));
        }
        let n = params.symbols_per_node();
        if let Some(bad) = matrices.iter().find(|m| m.size() != n) {
            return Err(crate::Error::ShapeMismatch {
                op: "coding_matrix_set",
                left: (bad.size(), bad.size()),
                right: (n, n),
            });
        }
        Ok(CodingMatrixSet { params, matrices })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn matrices(&self) -> &[SignedPermutation] {
        &self.matrices
    }

    #[inline]
    pub fn get(&self, j: usize) -> &SignedPermutation {
        &self.matrices[j]
    }

    pub fn dense(&self, j: usize) -> Gf3Matrix {
        self.matrices[j].to_dense()
    }

    /// Flips the sign of one entry of `A_j`. Fault injection for tests and
    /// the CLI verifier.
    pub fn perturb_sign(&mut self, j: usize, row: usize) {
        self.matrices[j].flip_sign(row);
    }

    /// The family built entrywise from the zigzag description.
    pub fn from_zigzag(params: &CodeParams) -> Self {
        let matrices = (0..params.k())
            .map(|j| zigzag_signed_perm(params, j))
            .collect();
        CodingMatrixSet {
            params: *params,
            matrices,
        }
    }
}

/// Builds `A_j^(k)` by the block recursion
/// `A_0 = I`, `A_1 = [[0, -I], [I, 0]]`, `A_j = diag(A_{j-1}^(k-1), -A_{j-1}^(k-1))`.
pub fn build_coding_matrices(params: &CodeParams) -> CodingMatrixSet {
    CodingMatrixSet {
        params: *params,
        matrices: recursive_family(params.k()),
    }
}

fn recursive_family(k: usize) -> Vec<SignedPermutation> {
    let n = 1usize << (k - 1);
    let half = n / 2;
    let a1 = {
        let target = (0..n).map(|i| ((i + half) % n) as u32).collect();
        let sign = (0..n)
            .map(|i| if i < half { Gf3::MINUS_ONE } else { Gf3::ONE })
            .collect();
        SignedPermutation::new(target, sign).expect("rotation by N/2 is a permutation")
    };
    let mut out = vec![SignedPermutation::identity(n), a1];
    if k > 2 {
        let prev = recursive_family(k - 1);
        out.extend(
            prev[1..]
                .iter()
                .map(|a| SignedPermutation::block_diag(a, &a.negated())),
        );
    }
    out
}

fn zigzag_signed_perm(params: &CodeParams, j: usize) -> SignedPermutation {
    let k = params.k();
    let e = unit(k, j);
    let (target, sign) = (0..params.symbols_per_node())
        .map(|l| {
            let i = l ^ e;
            (i as u32, beta_unchecked(k, i, j))
        })
        .unzip();
    SignedPermutation::new(target, sign).expect("xor with a fixed mask is a permutation")
}

/// Dense `A_j` from its zigzag description: entry `(l, l ⊕ e_j)` is
/// `β_{l ⊕ e_j, j}`, everything else zero.
pub fn coding_matrix_from_zigzag(params: &CodeParams, j: usize) -> Result<Gf3Matrix> {
    params.check_systematic(j)?;
    let k = params.k();
    let n = params.symbols_per_node();
    let mut m = Gf3Matrix::zeros(n, n);
    for l in 0..n {
        let i = l ^ unit(k, j);
        m.set(l, i, beta_unchecked(k, i, j));
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct MdsReport {
    pub k: usize,
    pub checks: Vec<RankCheck>,
}

impl MdsReport {
    pub fn passed(&self) -> bool {
        report::all_passed(&self.checks)
    }

    pub fn violations(&self) -> Vec<&RankCheck> {
        report::violations(&self.checks)
    }
}

/// Checks `rank(A_i) = N` and `rank(A_i - A_j) = N` for all `i ≠ j`.
///
/// `A_i - A_j` and `A_j - A_i` differ by a sign, so each unordered pair is
/// eliminated once.
pub fn verify_mds(cm: &CodingMatrixSet, exec: Execution) -> MdsReport {
    let k = cm.params.k();
    let n = cm.params.symbols_per_node();
    let mut jobs: Vec<(usize, Option<usize>)> = (0..k).map(|i| (i, None)).collect();
    for i in 0..k {
        for j in i + 1..k {
            jobs.push((i, Some(j)));
        }
    }
    let checks = exec.map_slice(&jobs, |&(i, j)| match j {
        None => RankCheck::new(format!("rank(A_{i})"), n, cm.dense(i).rank()),
        Some(j) => {
            let diff = cm.dense(i).sub(&cm.dense(j)).expect("same shape");
            RankCheck::new(format!("rank(A_{i} - A_{j})"), n, diff.rank())
        }
    });
    MdsReport { k, checks }
}

/// Result of checking `A_j² = -I` and the one-nonzero-per-row/column shape.
#[derive(Clone, Debug, Serialize)]
pub struct SignedPermutationReport {
    pub k: usize,
    /// `j` for which `A_j · A_j ≠ -I` (only `j ≥ 1` is checked).
    pub square_violations: Vec<usize>,
    /// `j` for which the dense matrix is not a signed permutation.
    pub shape_violations: Vec<usize>,
}

impl SignedPermutationReport {
    pub fn passed(&self) -> bool {
        self.square_violations.is_empty() && self.shape_violations.is_empty()
    }
}

pub fn verify_signed_permutation_structure(cm: &CodingMatrixSet) -> SignedPermutationReport {
    let n = cm.params.symbols_per_node();
    let minus_identity = SignedPermutation::identity(n).negated();
    let mut square_violations = Vec::new();
    let mut shape_violations = Vec::new();
    for (j, a) in cm.matrices.iter().enumerate() {
        let dense = a.to_dense();
        let rows_ok = (0..n).all(|r| dense.row(r).iter().filter(|v| !v.is_zero()).count() == 1);
        let cols_ok = (0..n).all(|c| dense.column(c).iter().filter(|v| !v.is_zero()).count() == 1);
        if !(rows_ok && cols_ok) {
            shape_violations.push(j);
        }
        if j >= 1 && a.compose(a).expect("same size") != minus_identity {
            square_violations.push(j);
        }
    }
    SignedPermutationReport {
        k: cm.params.k(),
        square_violations,
        shape_violations,
    }
}
