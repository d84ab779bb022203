//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod golden;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zigzag_msr::cluster::{ClusterState, RepairMode, ShardFile, FALLBACK_LABEL};
use zigzag_msr::repair::{
    brute_force_min_io, build_repair_pair, io_lower_bound, plan_repair, verify_duality,
    verify_repair_conditions, zero_column_propagation, RepairVariant,
};
use zigzag_msr::zigzag::{build_coding_matrices, coding_matrix_from_zigzag, verify_mds, FileParts};
use zigzag_msr::{CodeParams, Execution, Gf3, Gf3Matrix, ZigzagCode};

const EXEC: Execution = Execution::Parallel;

// Runtime budgets, per criterion.
const BUDGET_GOLDEN: Duration = Duration::from_secs(1);
const BUDGET_EQUIVALENCE: Duration = Duration::from_secs(30);
const BUDGET_CONDITIONS: Duration = Duration::from_secs(120);
const BUDGET_BRUTE_FORCE: Duration = Duration::from_secs(600);

const RANDOM_FILES_EQUIVALENCE: usize = 100;
const RANDOM_FILES_REPAIR: usize = 200;
const E2E_BYTES: usize = 1 << 20;
const E2E_K: usize = 4;
const E2E_PARITY_READS: u64 = 36;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within(budget: Duration, start: Instant) -> (bool, String) {
    let el = start.elapsed();
    (
        el <= budget,
        format!(
            "{:.2}s of {:.0}s budget",
            el.as_secs_f64(),
            budget.as_secs_f64()
        ),
    )
}

fn params(k: usize) -> CodeParams {
    CodeParams::new(k).expect("k in range")
}

fn golden_matrices() -> Outcome {
    let start = Instant::now();
    type Golden = &'static [&'static [i64]];
    let table: [(usize, RepairVariant, Golden, Golden); 6] = [
        (
            3,
            RepairVariant::FirstParity,
            golden::S_A3,
            golden::S_TILDE_A3,
        ),
        (
            4,
            RepairVariant::FirstParity,
            golden::S_A4,
            golden::S_TILDE_A4,
        ),
        (
            5,
            RepairVariant::FirstParity,
            golden::S_A5,
            golden::S_TILDE_A5,
        ),
        (
            3,
            RepairVariant::SecondParity,
            golden::S_B3,
            golden::S_TILDE_B3,
        ),
        (
            4,
            RepairVariant::SecondParity,
            golden::S_B4,
            golden::S_TILDE_B4,
        ),
        (
            5,
            RepairVariant::SecondParity,
            golden::S_B5,
            golden::S_TILDE_B5,
        ),
    ];
    let mut bad = Vec::new();
    for (k, v, s, st) in table {
        let pair = build_repair_pair(k, v).expect("k >= 2");
        if pair.s != Gf3Matrix::from_rows(s) {
            bad.push(format!("S k={k} {v:?}"));
        }
        if pair.s_tilde != Gf3Matrix::from_rows(st) {
            bad.push(format!("S~ k={k} {v:?}"));
        }
    }
    let (fast, t) = within(BUDGET_GOLDEN, start);
    outcome(
        bad.is_empty() && fast,
        format!("12 matrices, mismatches {bad:?}, {t}"),
    )
}

fn encoder_equivalence() -> Outcome {
    let start = Instant::now();
    let mut matrix_mismatch = Vec::new();
    let mut encode_mismatch = 0;
    for k in 2..=10 {
        let p = params(k);
        let cm = build_coding_matrices(&p);
        for j in 0..k {
            if cm.dense(j) != coding_matrix_from_zigzag(&p, j).expect("j < k") {
                matrix_mismatch.push((k, j));
            }
        }
        let code = ZigzagCode::from_params(p);
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
        for _ in 0..RANDOM_FILES_EQUIVALENCE {
            let f = FileParts::random(&p, &mut rng);
            if code.second_parity_matrix(&f) != code.second_parity_zigzag(&f) {
                encode_mismatch += 1;
            }
        }
    }
    let (fast, t) = within(BUDGET_EQUIVALENCE, start);
    outcome(
        matrix_mismatch.is_empty() && encode_mismatch == 0 && fast,
        format!(
            "k=2..10, dense mismatches {matrix_mismatch:?}, {encode_mismatch} encoder disagreements over {} files/k, {t}",
            RANDOM_FILES_EQUIVALENCE
        ),
    )
}

fn condition_sweep() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    let mut violations = Vec::new();
    for k in 2..=10 {
        let cm = build_coding_matrices(&params(k));
        let mds = verify_mds(&cm, EXEC);
        checks += mds.checks.len();
        violations.extend(
            mds.violations()
                .iter()
                .map(|c| format!("k={k} {}", c.label)),
        );
        for v in [RepairVariant::FirstParity, RepairVariant::SecondParity] {
            let pair = build_repair_pair(k, v).expect("k >= 2");
            let cond = verify_repair_conditions(&pair, &cm, v, EXEC);
            checks += cond.checks.len();
            violations.extend(
                cond.violations()
                    .iter()
                    .map(|c| format!("k={k} {v:?} {}", c.label)),
            );
            let dual = verify_duality(&pair, &cm, EXEC);
            checks += dual.chain.len() + dual.swapped.checks.len();
            if !dual.passed() {
                violations.push(format!("k={k} {v:?} duality"));
            }
        }
    }
    let (fast, t) = within(BUDGET_CONDITIONS, start);
    outcome(
        violations.is_empty() && fast,
        format!("{checks} rank checks over k=2..10, violations {violations:?}, {t}"),
    )
}

/// Repairs `failed` from a codeword whose failed shard is overwritten, so a
/// plan that touched it would produce garbage.
fn repair_matches(code: &ZigzagCode, f: &FileParts, failed: usize) -> bool {
    let truth = code.encode(f).into_shards();
    let mut shards = truth.clone();
    shards[failed] = vec![Gf3::ONE; shards[failed].len()];
    let plan = plan_repair(code, failed).expect("parity node");
    plan.repair_from_shards(&shards).expect("well-formed") == truth[failed]
}

fn repair_correctness() -> Outcome {
    let mut cases = 0;
    let mut mismatches = 0;
    let p = params(2);
    let code = ZigzagCode::from_params(p);
    for x in 0..81i64 {
        let symbols: Vec<Gf3> = (0..4).map(|d| Gf3::new(x / 3i64.pow(d) % 3)).collect();
        let f = FileParts::new(&p, vec![symbols[..2].to_vec(), symbols[2..].to_vec()])
            .expect("2 parts of 2");
        for node in [2, 3] {
            cases += 1;
            mismatches += usize::from(!repair_matches(&code, &f, node));
        }
    }
    for k in 3..=6 {
        let p = params(k);
        let code = ZigzagCode::from_params(p);
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_5500 + k as u64);
        for _ in 0..RANDOM_FILES_REPAIR {
            let f = FileParts::random(&p, &mut rng);
            for node in [k, k + 1] {
                cases += 1;
                mismatches += usize::from(!repair_matches(&code, &f, node));
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{cases} repairs (k=2 exhaustive, k=3..6 random), {mismatches} mismatches"),
    )
}

fn io_meters() -> Outcome {
    let mut bad = Vec::new();
    for k in 2..=10 {
        let p = params(k);
        let code = ZigzagCode::from_params(p);
        let bound = io_lower_bound(k).expect("k >= 2");
        for node in [k, k + 1] {
            let plan = plan_repair(&code, node).expect("parity node");
            let n = p.symbols_per_node();
            let io_ok = plan.total_io() == k * n + n - k;
            let bw_ok = plan.bandwidth() == (k + 1) * n / 2;
            let bound_ok =
                *bound.lower_bound.numer() < 0 || plan.total_io() as i64 >= bound.lower_bound_ceil;
            if !(io_ok && bw_ok && bound_ok) {
                bad.push((k, node, plan.total_io(), plan.bandwidth()));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("k=2..10 both parities, failures {bad:?}"),
    )
}

fn lower_bound_mechanics() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for k in 3..=10 {
        for v in [RepairVariant::FirstParity, RepairVariant::SecondParity] {
            let r = zero_column_propagation(&build_repair_pair(k, v).expect("k >= 2"));
            cases += r.cases;
            if !r.passed() {
                bad.push(format!(
                    "k={k} {v:?}: {} failures, floor {}",
                    r.failures.len(),
                    r.per_matrix_bound_holds
                ));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("k=3..10, {cases} propagation cases, failures {bad:?}"),
    )
}

fn brute_force() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [2, 3] {
        let r = brute_force_min_io(k, EXEC).expect("k <= 3");
        let in_range = r.lower_bound_ceil <= r.min_io as i64 && r.min_io <= r.construction_io;
        ok &= in_range;
        parts.push(format!(
            "k={k}: min {} in [{}, {}] over {} valid pairs",
            r.min_io, r.lower_bound_ceil, r.construction_io, r.valid_pairs
        ));
    }
    let (fast, t) = within(BUDGET_BRUTE_FORCE, start);
    outcome(ok && fast, format!("{}, {t}", parts.join("; ")))
}

fn end_to_end() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE2E);
    let mut bytes = vec![0u8; E2E_BYTES];
    rng.fill_bytes(&mut bytes);
    let p = params(E2E_K);
    let mut cluster = ClusterState::encode(p, &bytes, EXEC);
    let original = cluster.contents();
    let mut problems = Vec::new();
    for node in 0..p.node_count() {
        cluster.fail_node(node).expect("single failure");
        let r = cluster.repair_node(node).expect("repairable");
        if p.is_parity(node) {
            if r.mode != RepairMode::Optimal
                || r.reads_per_stripe() != E2E_PARITY_READS
                || r.total_reads != E2E_PARITY_READS * r.stripes
            {
                problems.push(format!(
                    "node {node}: {} reads/stripe",
                    r.reads_per_stripe()
                ));
            }
        } else if r.mode != RepairMode::FullDownload || r.label() != FALLBACK_LABEL {
            problems.push(format!("node {node}: not labeled fallback"));
        }
        if cluster.contents() != original {
            problems.push(format!("node {node}: content differs after repair"));
        }
    }
    // Persist and reload through the shard format, then decode.
    let shards = (0..p.node_count())
        .map(|n| {
            let bytes = cluster.shard_file(n).expect("healthy").to_bytes();
            Some(ShardFile::from_bytes(&bytes).expect("round trip"))
        })
        .collect();
    let reloaded =
        ClusterState::from_shards(p, *cluster.meta(), shards, EXEC).expect("valid shards");
    if reloaded.read_file().expect("decodable") != bytes {
        problems.push("decoded file differs".into());
    }
    outcome(
        problems.is_empty(),
        format!(
            "1 MiB at k=4, {} stripes, problems {problems:?}",
            cluster.stripe_count()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden repair matrices", golden_matrices),
        ("encoder equivalence", encoder_equivalence),
        ("condition sweep", condition_sweep),
        ("repair correctness", repair_correctness),
        ("I/O meters", io_meters),
        ("lower-bound mechanics", lower_bound_mechanics),
        ("brute-force oracle", brute_force),
        ("end-to-end cluster", end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {} [{tag}] {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
