use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf3::Gf3Matrix;
use crate::zigzag::CodeParams;

/// Which parity node a repair strategy targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepairVariant {
    /// Node `k`, the row-sum parity.
    FirstParity,
    /// Node `k + 1`, the zigzag parity.
    SecondParity,
}

impl RepairVariant {
    pub fn opposite(self) -> Self {
        match self {
            RepairVariant::FirstParity => RepairVariant::SecondParity,
            RepairVariant::SecondParity => RepairVariant::FirstParity,
        }
    }

    pub fn failed_node(self, params: &CodeParams) -> usize {
        match self {
            RepairVariant::FirstParity => params.first_parity(),
            RepairVariant::SecondParity => params.second_parity(),
        }
    }

    /// The parity node that survives and acts as a helper.
    pub fn surviving_parity(self, params: &CodeParams) -> usize {
        self.opposite().failed_node(params)
    }

    pub fn for_node(params: &CodeParams, node: usize) -> Result<Self> {
        if node == params.first_parity() {
            Ok(RepairVariant::FirstParity)
        } else if node == params.second_parity() {
            Ok(RepairVariant::SecondParity)
        } else {
            Err(Error::NotParityNode(node))
        }
    }
}

/// The block-diagonal helper families `E^(k)`, `F^(k)`, each
/// `2^(k-2) × 2^(k-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HelperMatrices {
    pub e: Gf3Matrix,
    pub f: Gf3Matrix,
    pub variant: RepairVariant,
}

/// Two `N/2 × N` repair matrices. `s` is applied to systematic data (composed
/// with `A_j` when repairing the second parity), `s_tilde` to the surviving
/// parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairMatrixPair {
    pub s: Gf3Matrix,
    pub s_tilde: Gf3Matrix,
    pub variant: RepairVariant,
}

impl RepairMatrixPair {
    /// Exchanges the two roles and the target parity.
    pub fn swapped(&self) -> Self {
        RepairMatrixPair {
            s: self.s_tilde.clone(),
            s_tilde: self.s.clone(),
            variant: self.variant.opposite(),
        }
    }
}

struct Family {
    e: Gf3Matrix,
    f: Gf3Matrix,
    s: Gf3Matrix,
    s_tilde: Gf3Matrix,
}

// Base cases at k = 2. The second set is the one whose swapped pair repairs
// node k+1 with only one zero column per systematic download.
fn initials(variant: RepairVariant) -> Family {
    let row = |a: i64, b: i64| Gf3Matrix::from_rows(&[[a, b]]);
    match variant {
        RepairVariant::FirstParity => Family {
            e: row(0, -1),
            f: row(-1, 0),
            s: row(0, 1),
            s_tilde: row(1, 1),
        },
        RepairVariant::SecondParity => Family {
            e: row(-1, 0),
            f: row(0, -1),
            s: row(1, -1),
            s_tilde: row(0, 1),
        },
    }
}

fn family(k: usize, variant: RepairVariant) -> Result<Family> {
    CodeParams::new(k)?;
    let mut fam = initials(variant);
    for _ in 3..=k {
        let half = fam.s.rows();
        let cols = fam.s.cols();
        // S = [[S, E], [0, S~]],  S~ = [[S~, -F], [0, S]]
        let s = Gf3Matrix::from_blocks(
            (Some(&fam.s), Some(&fam.e)),
            (None, Some(&fam.s_tilde)),
            (half, cols),
            half,
            cols,
        )?;
        let neg_f = fam.f.neg();
        let s_tilde = Gf3Matrix::from_blocks(
            (Some(&fam.s_tilde), Some(&neg_f)),
            (None, Some(&fam.s)),
            (half, cols),
            half,
            cols,
        )?;
        let e = Gf3Matrix::block_diag(&fam.e, &fam.f);
        let f = Gf3Matrix::block_diag(&fam.f, &fam.e);
        fam = Family { e, f, s, s_tilde };
    }
    Ok(fam)
}

pub fn build_helpers(k: usize, variant: RepairVariant) -> Result<HelperMatrices> {
    let fam = family(k, variant)?;
    Ok(HelperMatrices {
        e: fam.e,
        f: fam.f,
        variant,
    })
}

/// Repair matrices for the given parity node.
///
/// For the first parity these are `(S_a, S~_a)` from the first set of base
/// cases. For the second parity they are `(S~_a, S_a)` from the second set,
/// i.e. `S_b = S~_a` and `S~_b = S_a`.
pub fn build_repair_pair(k: usize, variant: RepairVariant) -> Result<RepairMatrixPair> {
    let fam = family(k, variant)?;
    Ok(match variant {
        RepairVariant::FirstParity => RepairMatrixPair {
            s: fam.s,
            s_tilde: fam.s_tilde,
            variant,
        },
        RepairVariant::SecondParity => RepairMatrixPair {
            s: fam.s_tilde,
            s_tilde: fam.s,
            variant,
        },
    })
}

/// The first-parity pair reused for the second parity by swapping roles.
/// Valid, but its disk I/O is `kN + N - 1` rather than `kN + N - k`.
pub fn swapped_first_parity_pair(k: usize) -> Result<RepairMatrixPair> {
    Ok(build_repair_pair(k, RepairVariant::FirstParity)?.swapped())
}
