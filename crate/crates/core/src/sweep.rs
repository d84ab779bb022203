//! Full verification sweep over a range of `k`: coding-matrix structure,
//! equivalence of the two encoder descriptions, MDS ranks, repair conditions
//! for both parities, duality, the disk-I/O census, and zero-column
//! propagation.

use std::ops::RangeInclusive;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exec::Execution;
use crate::gf3::Gf3;
use crate::repair::{
    build_repair_pair, io_census, io_lower_bound, swapped_first_parity_pair, verify_duality,
    verify_repair_conditions, zero_column_propagation, RepairVariant,
};
use crate::zigzag::{
    build_coding_matrices, coding_matrix_from_zigzag, verify_mds,
    verify_signed_permutation_structure, CodeParams, CodingMatrixSet, FileParts, ZigzagCode,
};

/// Deliberate corruption applied before checking, to prove the sweep notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Fault {
    /// Flip the sign of row `row` of `A_j`.
    FlipSign { j: usize, row: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KReport {
    pub k: usize,
    pub checks: Vec<CheckResult>,
}

impl KReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub k_min: usize,
    pub k_max: usize,
    pub fault: Option<Fault>,
    pub results: Vec<KReport>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(KReport::passed)
    }

    pub fn violations(&self) -> Vec<(usize, &CheckResult)> {
        self.results
            .iter()
            .flat_map(|r| r.checks.iter().filter(|c| !c.passed).map(move |c| (r.k, c)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    /// Random files per `k` for the encoder-equivalence check.
    pub random_files: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
    pub exec: Execution,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            random_files: 100,
            seed: 0,
            fault: None,
            exec: Execution::Parallel,
        }
    }
}

pub fn verify_range(ks: RangeInclusive<usize>, opts: &SweepOptions) -> Result<SweepReport> {
    let (k_min, k_max) = (*ks.start(), *ks.end());
    let mut results = Vec::new();
    for k in ks {
        results.push(verify_k(k, opts)?);
    }
    Ok(SweepReport {
        k_min,
        k_max,
        fault: opts.fault,
        results,
    })
}

fn second_parity(cm: &CodingMatrixSet, parts: &FileParts) -> Vec<Gf3> {
    let mut out = vec![Gf3::ZERO; cm.params().symbols_per_node()];
    for (a, p) in cm.matrices().iter().zip(parts.parts()) {
        a.apply_add_into(p, &mut out);
    }
    out
}

pub fn verify_k(k: usize, opts: &SweepOptions) -> Result<KReport> {
    let params = CodeParams::new(k)?;
    let exec = opts.exec;
    let n = params.symbols_per_node();
    let mut cm = build_coding_matrices(&params);
    if let Some(Fault::FlipSign { j, row }) = opts.fault {
        if j < k && row < n {
            cm.perturb_sign(j, row);
        }
    }
    let mut checks = Vec::new();

    let sp = verify_signed_permutation_structure(&cm);
    checks.push(CheckResult::new(
        "coding matrices are signed permutations with A_j^2 = -I",
        sp.passed(),
        format!(
            "square violations {:?}, shape violations {:?}",
            sp.square_violations, sp.shape_violations
        ),
    ));

    let mismatched: Vec<usize> = exec
        .map_range(k, |j| {
            let zz = coding_matrix_from_zigzag(&params, j).expect("j < k");
            (cm.dense(j) != zz).then_some(j)
        })
        .into_iter()
        .flatten()
        .collect();
    checks.push(CheckResult::new(
        "recursive A_j equal the zigzag/beta construction",
        mismatched.is_empty(),
        format!("mismatched j: {mismatched:?}"),
    ));

    let code = ZigzagCode::from_params(params);
    let disagreements = exec
        .map_range(opts.random_files, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((k as u64) << 32) ^ i as u64);
            let parts = FileParts::random(&params, &mut rng);
            second_parity(&cm, &parts) != code.second_parity_zigzag(&parts)
        })
        .into_iter()
        .filter(|&d| d)
        .count();
    checks.push(CheckResult::new(
        format!(
            "matrix and zigzag encoders agree on {} random files",
            opts.random_files
        ),
        disagreements == 0,
        format!("{disagreements} disagreements"),
    ));

    let mds = verify_mds(&cm, exec);
    checks.push(CheckResult::new(
        "MDS: rank(A_i) = rank(A_i - A_j) = N",
        mds.passed(),
        format!(
            "{} checks, {} violations",
            mds.checks.len(),
            mds.violations().len()
        ),
    ));

    for variant in [RepairVariant::FirstParity, RepairVariant::SecondParity] {
        let name = match variant {
            RepairVariant::FirstParity => "first parity",
            RepairVariant::SecondParity => "second parity",
        };
        let pair = build_repair_pair(k, variant)?;
        let cond = verify_repair_conditions(&pair, &cm, variant, exec);
        let bad: Vec<String> = cond.violations().iter().map(|c| c.label.clone()).collect();
        checks.push(CheckResult::new(
            format!("repair conditions, {name}"),
            cond.passed(),
            format!("{} checks, violations {bad:?}", cond.checks.len()),
        ));

        let dual = verify_duality(&pair, &cm, exec);
        checks.push(CheckResult::new(
            format!("duality of swapped pair, {name}"),
            dual.passed(),
            format!("{} rank equalities", dual.chain.len()),
        ));

        let census = io_census(&pair, &cm, variant);
        let expect = params.parity_repair_io();
        checks.push(CheckResult::new(
            format!("disk I/O census, {name} = kN + N - k"),
            census.total == expect,
            format!("total {} expected {expect}", census.total),
        ));

        if k >= 3 {
            let prop = zero_column_propagation(&pair);
            checks.push(CheckResult::new(
                format!("zero-column propagation and per-matrix floor, {name}"),
                prop.passed(),
                format!(
                    "{} cases, {} failures, nonzero columns ({}, {})",
                    prop.cases,
                    prop.failures.len(),
                    prop.nonzero_s,
                    prop.nonzero_s_tilde
                ),
            ));
        }
    }

    let swapped = swapped_first_parity_pair(k)?;
    let census = io_census(&swapped, &cm, RepairVariant::SecondParity);
    let expect = k * n + n - 1;
    checks.push(CheckResult::new(
        "first-parity initials reused for second parity cost kN + N - 1",
        census.total == expect,
        format!("total {} expected {expect}", census.total),
    ));

    let bound = io_lower_bound(k)?;
    checks.push(CheckResult::new(
        "achieved I/O meets the lower bound",
        bound.achieved_meets_bound(),
        format!("achieved {} bound {}", bound.achieved_io, bound.lower_bound),
    ));

    Ok(KReport { k, checks })
}
