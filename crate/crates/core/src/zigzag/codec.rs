use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf3::{add_assign, sub_assign, Gf3, Gf3Lu};

use super::coding::{build_coding_matrices, CodingMatrixSet};
use super::index::{beta_unchecked, unit};
use super::params::CodeParams;

/// The `k` systematic parts `f_0 … f_{k-1}` of one stripe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileParts {
    parts: Vec<Vec<Gf3>>,
}

impl FileParts {
    pub fn new(params: &CodeParams, parts: Vec<Vec<Gf3>>) -> Result<Self> {
        if parts.len() != params.k() {
            return Err(Error::InvalidParams(format!(
                "expected {} parts, got {}",
                params.k(),
                parts.len()
            )));
        }
        if let Some(p) = parts.iter().find(|p| p.len() != params.symbols_per_node()) {
            return Err(Error::ShapeMismatch {
                op: "file_parts",
                left: (p.len(), 1),
                right: (params.symbols_per_node(), 1),
            });
        }
        Ok(FileParts { parts })
    }

    pub fn zeros(params: &CodeParams) -> Self {
        FileParts {
            parts: vec![vec![Gf3::ZERO; params.symbols_per_node()]; params.k()],
        }
    }

    pub fn random<R: Rng + ?Sized>(params: &CodeParams, rng: &mut R) -> Self {
        let parts = (0..params.k())
            .map(|_| {
                (0..params.symbols_per_node())
                    .map(|_| Gf3::new(rng.random_range(0..3)))
                    .collect()
            })
            .collect();
        FileParts { parts }
    }

    pub fn parts(&self) -> &[Vec<Gf3>] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> &[Gf3] {
        &self.parts[j]
    }

    pub fn into_parts(self) -> Vec<Vec<Gf3>> {
        self.parts
    }
}

/// All `k + 2` shards of one encoded stripe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    shards: Vec<Vec<Gf3>>,
}

impl Codeword {
    pub fn shards(&self) -> &[Vec<Gf3>] {
        &self.shards
    }

    pub fn shard(&self, node: usize) -> &[Gf3] {
        &self.shards[node]
    }

    pub fn into_shards(self) -> Vec<Vec<Gf3>> {
        self.shards
    }
}

/// A `(k+2, k)` Zigzag code: parameters plus coding matrices.
#[derive(Clone, Debug)]
pub struct ZigzagCode {
    params: CodeParams,
    coding: CodingMatrixSet,
}

impl ZigzagCode {
    pub fn new(k: usize) -> Result<Self> {
        Ok(Self::from_params(CodeParams::new(k)?))
    }

    pub fn from_params(params: CodeParams) -> Self {
        ZigzagCode {
            params,
            coding: build_coding_matrices(&params),
        }
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn coding_matrices(&self) -> &CodingMatrixSet {
        &self.coding
    }

    /// Row sums `Σ_j f_j`.
    pub fn first_parity(&self, parts: &FileParts) -> Vec<Gf3> {
        let mut out = vec![Gf3::ZERO; self.params.symbols_per_node()];
        for p in &parts.parts {
            add_assign(&mut out, p);
        }
        out
    }

    /// `Σ_j A_j f_j` through the signed-permutation form.
    pub fn second_parity_matrix(&self, parts: &FileParts) -> Vec<Gf3> {
        let mut out = vec![Gf3::ZERO; self.params.symbols_per_node()];
        for (a, p) in self.coding.matrices().iter().zip(&parts.parts) {
            a.apply_add_into(p, &mut out);
        }
        out
    }

    /// Row `l` is `Σ_{(i,j) ∈ Z_l} β_{i,j} f_{i,j}`.
    pub fn second_parity_zigzag(&self, parts: &FileParts) -> Vec<Gf3> {
        let k = self.params.k();
        (0..self.params.symbols_per_node())
            .map(|l| {
                (0..k)
                    .map(|j| {
                        let i = l ^ unit(k, j);
                        beta_unchecked(k, i, j) * parts.parts[j][i]
                    })
                    .sum()
            })
            .collect()
    }

    pub fn encode(&self, parts: &FileParts) -> Codeword {
        debug_assert_eq!(parts.parts.len(), self.params.k());
        let mut shards = parts.parts.clone();
        shards.push(self.first_parity(parts));
        let second = self.second_parity_matrix(parts);
        debug_assert_eq!(second, self.second_parity_zigzag(parts));
        shards.push(second);
        Codeword { shards }
    }

    /// Prepares a decoder for a fixed set of available nodes. The returned
    /// decoder caches any factorization it needs, so it can be reused across
    /// stripes with the same erasure pattern.
    pub fn decoder(&self, available: &[usize]) -> Result<Decoder<'_>> {
        Decoder::new(self, available)
    }

    /// Reconstructs the systematic parts from any `k` (or more) shards.
    pub fn decode_from_any_k(&self, available: &BTreeMap<usize, Vec<Gf3>>) -> Result<FileParts> {
        let ids: Vec<usize> = available.keys().copied().collect();
        let decoder = self.decoder(&ids)?;
        let mut shards: Vec<Option<&[Gf3]>> = vec![None; self.params.node_count()];
        for (&id, s) in available {
            shards[id] = Some(s);
        }
        decoder.decode(&shards)
    }
}

#[derive(Clone, Debug)]
enum Strategy {
    Direct,
    /// One systematic node missing, recovered from the row sums.
    FromRowSum {
        missing: usize,
    },
    /// One systematic node missing, first parity absent: invert `A_missing`.
    FromZigzag {
        missing: usize,
    },
    /// Two systematic nodes missing; `(A_a - A_b)` is factored once.
    Pair {
        a: usize,
        b: usize,
        lu: Box<Gf3Lu>,
    },
}

/// Decoder for one erasure pattern.
#[derive(Clone, Debug)]
pub struct Decoder<'a> {
    code: &'a ZigzagCode,
    available: Vec<bool>,
    strategy: Strategy,
}

impl<'a> Decoder<'a> {
    fn new(code: &'a ZigzagCode, ids: &[usize]) -> Result<Self> {
        let p = &code.params;
        let mut available = vec![false; p.node_count()];
        for &id in ids {
            p.check_node(id)?;
            available[id] = true;
        }
        let count = available.iter().filter(|&&a| a).count();
        if count < p.k() {
            return Err(Error::InsufficientData {
                available: count,
                required: p.k(),
            });
        }
        let missing: Vec<usize> = (0..p.k()).filter(|&j| !available[j]).collect();
        let strategy = match missing.as_slice() {
            [] => Strategy::Direct,
            [m] if available[p.first_parity()] => Strategy::FromRowSum { missing: *m },
            [m] => Strategy::FromZigzag { missing: *m },
            [a, b] => {
                let cm = &code.coding;
                let diff = cm.dense(*a).sub(&cm.dense(*b))?;
                let lu = Gf3Lu::factor(&diff)?;
                Strategy::Pair {
                    a: *a,
                    b: *b,
                    lu: Box::new(lu),
                }
            }
            _ => unreachable!("at least k of k+2 nodes are available"),
        };
        Ok(Decoder {
            code,
            available,
            strategy,
        })
    }

    /// `shards[node]` must be `Some` for every node this decoder was built
    /// for. Extra parities are checked against the decoded data.
    pub fn decode(&self, shards: &[Option<&[Gf3]>]) -> Result<FileParts> {
        let p = &self.code.params;
        let n = p.symbols_per_node();
        let cm = &self.code.coding;
        let get = |node: usize| -> Result<&[Gf3]> {
            let s = shards
                .get(node)
                .copied()
                .flatten()
                .ok_or(Error::NodeUnavailable(node))?;
            if s.len() != n {
                return Err(Error::ShapeMismatch {
                    op: "decode",
                    left: (s.len(), 1),
                    right: (n, 1),
                });
            }
            Ok(s)
        };

        let mut parts: Vec<Vec<Gf3>> = vec![Vec::new(); p.k()];
        for (j, part) in parts.iter_mut().enumerate() {
            if self.available[j] {
                *part = get(j)?.to_vec();
            }
        }
        match &self.strategy {
            Strategy::Direct => {}
            Strategy::FromRowSum { missing } => {
                let mut f = get(p.first_parity())?.to_vec();
                for (j, part) in parts.iter().enumerate() {
                    if j != *missing {
                        sub_assign(&mut f, part);
                    }
                }
                parts[*missing] = f;
            }
            Strategy::FromZigzag { missing } => {
                let mut r = get(p.second_parity())?.to_vec();
                for (j, part) in parts.iter().enumerate() {
                    if j != *missing {
                        let mut t = vec![Gf3::ZERO; n];
                        cm.get(j).apply_add_into(part, &mut t);
                        sub_assign(&mut r, &t);
                    }
                }
                parts[*missing] = cm.get(*missing).inverse().apply(&r);
            }
            Strategy::Pair { a, b, lu } => {
                // r1 = f_a + f_b, r2 = A_a f_a + A_b f_b.
                let mut r1 = get(p.first_parity())?.to_vec();
                let mut r2 = get(p.second_parity())?.to_vec();
                for (j, part) in parts.iter().enumerate() {
                    if j != *a && j != *b {
                        sub_assign(&mut r1, part);
                        let mut t = vec![Gf3::ZERO; n];
                        cm.get(j).apply_add_into(part, &mut t);
                        sub_assign(&mut r2, &t);
                    }
                }
                // (A_a - A_b) f_a = r2 - A_b r1
                sub_assign(&mut r2, &cm.get(*b).apply(&r1));
                let fa = lu.solve(&r2)?;
                sub_assign(&mut r1, &fa);
                parts[*a] = fa;
                parts[*b] = r1;
            }
        }

        let decoded = FileParts { parts };
        if self.available[p.first_parity()]
            && self.code.first_parity(&decoded) != get(p.first_parity())?
        {
            return Err(Error::Inconsistent(
                "first parity disagrees with decoded data".into(),
            ));
        }
        if self.available[p.second_parity()]
            && self.code.second_parity_matrix(&decoded) != get(p.second_parity())?
        {
            return Err(Error::Inconsistent(
                "second parity disagrees with decoded data".into(),
            ));
        }
        Ok(decoded)
    }
}
