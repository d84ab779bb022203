//! Rank conditions for optimal parity repair, the duality between the two
//! parity nodes, and the zero-column structure behind the I/O lower bound.
//!
//! With `B_j = A_j` (first parity) or `B_j = A_j^{-1}` (second parity), a pair
//! `(S, S~)` repairs the target parity at optimal bandwidth iff
//!
//! * `rank [S; S~ B_0] = N`, and
//! * `rank [S; S~ (B_0 - B_l)] = N/2` for every `1 ≤ l < k`.
//!
//! The second family is the interference-alignment condition: every unwanted
//! term lands in the row space of `S` and can be cancelled.

use serde::Serialize;

use crate::exec::Execution;
use crate::gf3::{Gf3Matrix, SignedPermutation};
use crate::report::{self, RankCheck};
use crate::zigzag::{unit, CodingMatrixSet};

use super::matrices::{RepairMatrixPair, RepairVariant};

/// `B_j` for the given target parity.
pub(crate) fn transform(
    cm: &CodingMatrixSet,
    j: usize,
    variant: RepairVariant,
) -> SignedPermutation {
    match variant {
        RepairVariant::FirstParity => cm.get(j).clone(),
        RepairVariant::SecondParity => cm.get(j).inverse(),
    }
}

/// `S~ · (B_0 - B_l)`.
pub(crate) fn interference_image(
    s_tilde: &Gf3Matrix,
    cm: &CodingMatrixSet,
    l: usize,
    variant: RepairVariant,
) -> Gf3Matrix {
    let b0 = s_tilde
        .mul_signed_perm(&transform(cm, 0, variant))
        .expect("repair matrix width matches N");
    let bl = s_tilde
        .mul_signed_perm(&transform(cm, l, variant))
        .expect("repair matrix width matches N");
    b0.sub(&bl).expect("same shape")
}

/// `[S; S~ B_0]`, the system solved for the lost parity.
pub(crate) fn useful_system(
    pair_s: &Gf3Matrix,
    s_tilde: &Gf3Matrix,
    cm: &CodingMatrixSet,
    variant: RepairVariant,
) -> Gf3Matrix {
    let bottom = s_tilde
        .mul_signed_perm(&transform(cm, 0, variant))
        .expect("repair matrix width matches N");
    Gf3Matrix::vstack(pair_s, &bottom).expect("same width")
}

fn stacked_rank(top: &Gf3Matrix, bottom: &Gf3Matrix) -> usize {
    Gf3Matrix::vstack(top, bottom).expect("same width").rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub k: usize,
    pub variant: RepairVariant,
    pub checks: Vec<RankCheck>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        report::all_passed(&self.checks)
    }

    pub fn violations(&self) -> Vec<&RankCheck> {
        report::violations(&self.checks)
    }
}

/// Checks the optimal-repair rank conditions of `pair` against `variant`.
/// Also confirms both matrices have full row rank `N/2`.
pub fn verify_repair_conditions(
    pair: &RepairMatrixPair,
    cm: &CodingMatrixSet,
    variant: RepairVariant,
    exec: Execution,
) -> ConditionReport {
    let k = cm.params().k();
    let n = cm.params().symbols_per_node();
    let half = cm.params().half();
    let tag = match variant {
        RepairVariant::FirstParity => "A",
        RepairVariant::SecondParity => "A^-1",
    };
    // Job 0: full-rank system; jobs 1..k: interference alignment per l.
    let mut checks = vec![
        RankCheck::new("rank(S)", half, pair.s.rank()),
        RankCheck::new("rank(S~)", half, pair.s_tilde.rank()),
    ];
    checks.extend(exec.map_range(k, |l| {
        if l == 0 {
            let m = useful_system(&pair.s, &pair.s_tilde, cm, variant);
            RankCheck::new(format!("rank[S; S~ {tag}_0]"), n, m.rank())
        } else {
            let img = interference_image(&pair.s_tilde, cm, l, variant);
            RankCheck::new(
                format!("rank[S; S~ ({tag}_0 - {tag}_{l})]"),
                half,
                stacked_rank(&pair.s, &img),
            )
        }
    }));
    ConditionReport { k, variant, checks }
}

/// One link of the rank chain relating the two parity repairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    /// `0` compares the full-rank systems, `l ≥ 1` the alignment conditions.
    pub l: usize,
    /// Rank computed with `pair` in its own role.
    pub direct: usize,
    /// Rank computed with the roles swapped and the opposite parity.
    pub dual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub k: usize,
    /// The swapped pair checked against the other parity node.
    pub swapped: ConditionReport,
    pub chain: Vec<ChainCheck>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.swapped.passed() && self.chain.iter().all(|c| c.direct == c.dual)
    }
}

/// Repair matrices for one parity node, swapped, repair the other. This
/// checks the swapped pair directly and also compares every rank in the
/// chain one by one.
pub fn verify_duality(
    pair: &RepairMatrixPair,
    cm: &CodingMatrixSet,
    exec: Execution,
) -> DualityReport {
    let k = cm.params().k();
    let v = pair.variant;
    let swapped = pair.swapped();
    let chain = exec.map_range(k, |l| {
        if l == 0 {
            ChainCheck {
                l,
                direct: useful_system(&pair.s, &pair.s_tilde, cm, v).rank(),
                dual: useful_system(&swapped.s, &swapped.s_tilde, cm, v.opposite()).rank(),
            }
        } else {
            ChainCheck {
                l,
                direct: stacked_rank(&pair.s, &interference_image(&pair.s_tilde, cm, l, v)),
                dual: stacked_rank(
                    &swapped.s,
                    &interference_image(&swapped.s_tilde, cm, l, v.opposite()),
                ),
            }
        }
    });
    DualityReport {
        k,
        swapped: verify_repair_conditions(&swapped, cm, v.opposite(), exec),
        chain,
    }
}

/// Which symbols each helper must read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IoCensus {
    pub k: usize,
    pub variant: RepairVariant,
    pub zero_columns_s: Vec<usize>,
    pub zero_columns_s_tilde: Vec<usize>,
    /// `(node, nonzero columns of its download matrix)`, systematic nodes
    /// first, then the surviving parity.
    pub per_node: Vec<(usize, usize)>,
    pub total: usize,
}

/// Download matrix for each helper: `S` or `S·A_j` for systematic node `j`,
/// `S~` for the surviving parity.
pub(crate) fn download_matrices(
    pair: &RepairMatrixPair,
    cm: &CodingMatrixSet,
    variant: RepairVariant,
) -> Vec<(usize, Gf3Matrix)> {
    let params = cm.params();
    let mut out: Vec<(usize, Gf3Matrix)> = (0..params.k())
        .map(|j| {
            let m = match variant {
                RepairVariant::FirstParity => pair.s.clone(),
                RepairVariant::SecondParity => pair.s.mul_signed_perm(cm.get(j)).expect("width N"),
            };
            (j, m)
        })
        .collect();
    out.push((variant.surviving_parity(params), pair.s_tilde.clone()));
    out
}

pub fn io_census(
    pair: &RepairMatrixPair,
    cm: &CodingMatrixSet,
    variant: RepairVariant,
) -> IoCensus {
    let per_node: Vec<(usize, usize)> = download_matrices(pair, cm, variant)
        .iter()
        .map(|(node, m)| (*node, m.nonzero_column_count()))
        .collect();
    IoCensus {
        k: cm.params().k(),
        variant,
        zero_columns_s: pair.s.zero_columns(),
        zero_columns_s_tilde: pair.s_tilde.zero_columns(),
        total: per_node.iter().map(|(_, c)| c).sum(),
        per_node,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationFailure {
    /// `"S"` if the zero column was in `S`, `"S~"` if in `S~`.
    pub zero_in: &'static str,
    pub column: usize,
    pub l: usize,
}

/// Zero-column structure of a pair viewed as first-parity repair matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationReport {
    pub k: usize,
    /// Number of `(zero column, l)` cases examined.
    pub cases: usize,
    pub failures: Vec<PropagationFailure>,
    /// Nonzero columns of `S` and `S~` (first-parity roles).
    pub nonzero_s: usize,
    pub nonzero_s_tilde: usize,
    /// Whether both counts reach `N - N/(2(k-1))`.
    pub per_matrix_bound_holds: bool,
}

impl PropagationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.per_matrix_bound_holds
    }
}

fn column_is_signed_copy(a: &[crate::Gf3], b: &[crate::Gf3]) -> bool {
    a == b || a.iter().zip(b).all(|(&x, &y)| x == -y)
}

/// If column `i` of `S` is zero then `S~[i ⊕ e_l] = ±S~[i]` for every
/// `1 ≤ l < k`; symmetrically, a zero column `i` of `S~` forces
/// `S[i ⊕ e_l] = ±S[i]`. Both follow from the alignment conditions and the
/// shape of the coding matrices; they drive the per-matrix bound
/// `N_1, N_2 ≥ N - N/(2(k-1))`.
///
/// A second-parity pair is swapped into first-parity roles first.
pub fn zero_column_propagation(pair: &RepairMatrixPair) -> PropagationReport {
    let pair = match pair.variant {
        RepairVariant::FirstParity => pair.clone(),
        RepairVariant::SecondParity => pair.swapped(),
    };
    let n = pair.s.cols();
    let k = n.trailing_zeros() as usize + 1;
    let mut cases = 0;
    let mut failures = Vec::new();
    for (zero_in, zero_m, other) in [
        ("S", &pair.s, &pair.s_tilde),
        ("S~", &pair.s_tilde, &pair.s),
    ] {
        for i in zero_m.zero_columns() {
            let base = other.column(i);
            for l in 1..k {
                cases += 1;
                if !column_is_signed_copy(&other.column(i ^ unit(k, l)), &base) {
                    failures.push(PropagationFailure {
                        zero_in,
                        column: i,
                        l,
                    });
                }
            }
        }
    }
    let nonzero_s = pair.s.nonzero_column_count();
    let nonzero_s_tilde = pair.s_tilde.nonzero_column_count();
    // N_i ≥ N - N/(2(k-1))  ⇔  2(k-1) N_i ≥ 2(k-1) N - N
    let scale = 2 * (k - 1);
    let floor = scale * n - n;
    PropagationReport {
        k,
        cases,
        failures,
        nonzero_s,
        nonzero_s_tilde,
        per_matrix_bound_holds: scale * nonzero_s >= floor && scale * nonzero_s_tilde >= floor,
    }
}
