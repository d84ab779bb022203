//! Exhaustive search for the cheapest first-parity repair at tiny `k`.
//!
//! Both rank conditions and nonzero-column counts are unchanged by invertible
//! row operations applied to `S` or `S~` separately, so it suffices to range
//! over reduced row echelon forms: one representative per `N/2`-dimensional
//! row space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gf3::{Gf3, Gf3Matrix};
use crate::zigzag::{build_coding_matrices, CodeParams, CodingMatrixSet};

use super::bound::io_lower_bound;
use super::conditions::{interference_image, useful_system};
use super::matrices::{RepairMatrixPair, RepairVariant};

pub const BRUTE_FORCE_MAX_K: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct BruteForceReport {
    pub k: usize,
    /// Canonical full-rank `N/2 × N` matrices enumerated per role.
    pub canonical_matrices: usize,
    pub pairs_examined: usize,
    /// Pairs satisfying every optimal-repair condition.
    pub valid_pairs: usize,
    /// Smallest `k·N_1 + N_2` over valid pairs.
    pub min_io: usize,
    /// Valid pairs reaching `min_io`.
    pub minimal_pairs: usize,
    #[serde(serialize_with = "witness_rows")]
    pub witness: RepairMatrixPair,
    pub lower_bound_ceil: i64,
    pub construction_io: usize,
}

fn witness_rows<S: serde::Serializer>(
    p: &RepairMatrixPair,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("witness", 2)?;
    st.serialize_field("s", &p.s.to_residue_rows())?;
    st.serialize_field("s_tilde", &p.s_tilde.to_residue_rows())?;
    st.end()
}

/// Every `rows × cols` matrix over GF(3) in reduced row echelon form with
/// full row rank, ordered by pivot set then free entries.
pub fn canonical_full_rank(rows: usize, cols: usize) -> Vec<Gf3Matrix> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(rows);
    pivot_sets(cols, rows, 0, &mut pivots, &mut |piv| {
        // Free slots: in row r, every non-pivot column to the right of piv[r].
        let free: Vec<(usize, usize)> = (0..rows)
            .flat_map(|r| {
                let piv = piv.to_vec();
                (piv[r] + 1..cols)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let combos = 3usize.pow(free.len() as u32);
        for mut code in 0..combos {
            let mut m = Gf3Matrix::zeros(rows, cols);
            for (r, &c) in piv.iter().enumerate() {
                m.set(r, c, Gf3::ONE);
            }
            for &(r, c) in &free {
                m.set(r, c, Gf3::new((code % 3) as i64));
                code /= 3;
            }
            out.push(m);
        }
    });
    out
}

fn pivot_sets(
    cols: usize,
    need: usize,
    start: usize,
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if cur.len() == need {
        f(cur);
        return;
    }
    for c in start..cols {
        cur.push(c);
        pivot_sets(cols, need, c + 1, cur, f);
        cur.pop();
    }
}

fn satisfies_first_parity(s: &Gf3Matrix, s_tilde: &Gf3Matrix, cm: &CodingMatrixSet) -> bool {
    let p = cm.params();
    let v = RepairVariant::FirstParity;
    if useful_system(s, s_tilde, cm, v).rank() != p.symbols_per_node() {
        return false;
    }
    (1..p.k()).all(|l| {
        let img = interference_image(s_tilde, cm, l, v);
        Gf3Matrix::vstack(s, &img).expect("same width").rank() == p.half()
    })
}

#[derive(Clone, Copy)]
struct RowResult {
    valid: usize,
    best: Option<(usize, usize)>, // (io, s_tilde index)
    minimal: usize,
}

/// Enumerates canonical `(S, S~)` pairs satisfying the first-parity
/// conditions and reports the minimum disk I/O `k·N_1 + N_2`.
///
/// By the parity duality the same minimum applies to the second parity.
pub fn brute_force_min_io(k: usize, exec: Execution) -> Result<BruteForceReport> {
    if k > BRUTE_FORCE_MAX_K {
        return Err(Error::UnsupportedScale {
            k,
            max: BRUTE_FORCE_MAX_K,
        });
    }
    let params = CodeParams::new(k)?;
    let cm = build_coding_matrices(&params);
    let candidates = canonical_full_rank(params.half(), params.symbols_per_node());
    let nonzero: Vec<usize> = candidates
        .iter()
        .map(Gf3Matrix::nonzero_column_count)
        .collect();

    let rows = exec.map_range(candidates.len(), |si| {
        let mut r = RowResult {
            valid: 0,
            best: None,
            minimal: 0,
        };
        for (ti, t) in candidates.iter().enumerate() {
            if !satisfies_first_parity(&candidates[si], t, &cm) {
                continue;
            }
            r.valid += 1;
            let io = k * nonzero[si] + nonzero[ti];
            match r.best {
                Some((b, _)) if b < io => {}
                Some((b, _)) if b == io => r.minimal += 1,
                _ => {
                    r.best = Some((io, ti));
                    r.minimal = 1;
                }
            }
        }
        r
    });

    let mut valid_pairs = 0;
    let mut best: Option<(usize, usize, usize)> = None; // (io, si, ti)
    let mut minimal_pairs = 0;
    for (si, r) in rows.iter().enumerate() {
        valid_pairs += r.valid;
        let Some((io, ti)) = r.best else { continue };
        match best {
            Some((b, _, _)) if b < io => {}
            Some((b, _, _)) if b == io => minimal_pairs += r.minimal,
            _ => {
                best = Some((io, si, ti));
                minimal_pairs = r.minimal;
            }
        }
    }
    let (min_io, si, ti) =
        best.ok_or_else(|| Error::Internal("no pair satisfies the repair conditions".into()))?;
    let bound = io_lower_bound(k)?;
    Ok(BruteForceReport {
        k,
        canonical_matrices: candidates.len(),
        pairs_examined: candidates.len() * candidates.len(),
        valid_pairs,
        min_io,
        minimal_pairs,
        witness: RepairMatrixPair {
            s: candidates[si].clone(),
            s_tilde: candidates[ti].clone(),
            variant: RepairVariant::FirstParity,
        },
        lower_bound_ceil: bound.lower_bound_ceil,
        construction_io: params.parity_repair_io(),
    })
}
