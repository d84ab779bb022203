use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use zigzag_msr::cluster::{ClusterState, RepairMode, RepairReport, ShardFile};
use zigzag_msr::repair::{brute_force_min_io, io_lower_bound, BruteForceReport, IoBoundReport};
use zigzag_msr::sweep::{verify_range, Fault, SweepOptions, SweepReport};
use zigzag_msr::{CodeParams, Execution, Gf3Matrix};

use crate::error::CliError;
use crate::manifest::{Manifest, MANIFEST_NAME};
use crate::{Cli, Command, Format};

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cli.command {
        Command::Encode { k, input, out_dir } => encode(cli, exec, *k, input, out_dir),
        Command::Decode {
            shards,
            manifest,
            out,
        } => decode(cli, exec, shards, manifest.as_deref(), out),
        Command::Repair {
            shards,
            rebuild,
            manifest,
            out_dir,
        } => repair(
            cli,
            exec,
            shards,
            *rebuild,
            manifest.as_deref(),
            out_dir.as_deref(),
        ),
        Command::Verify {
            k_range,
            files,
            inject_fault,
        } => verify(cli, exec, k_range, *files, *inject_fault),
        Command::Bound { k } => bound(cli, *k),
        Command::Bruteforce { k } => bruteforce(cli, exec, *k),
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> String) {
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("report serializes")
        ),
        Format::Text => print!("{}", text()),
    }
}

pub fn shard_name(node: usize) -> String {
    format!("node_{node}.shard")
}

#[derive(Serialize)]
struct EncodeOutput {
    k: usize,
    stripes: u64,
    original_len: u64,
    shards: Vec<PathBuf>,
    manifest: PathBuf,
}

fn encode(
    cli: &Cli,
    exec: Execution,
    k: usize,
    input: &Path,
    out_dir: &Path,
) -> Result<(), CliError> {
    let params = CodeParams::new(k)?;
    let bytes = fs::read(input).map_err(|e| CliError::io(input, e))?;
    let state = ClusterState::encode(params, &bytes, exec);
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;

    let mut shards = Vec::new();
    let mut shard_crc = Vec::new();
    for node in 0..params.node_count() {
        let file = state.shard_file(node)?;
        let path = out_dir.join(shard_name(node));
        fs::write(&path, file.to_bytes()).map_err(|e| CliError::io(&path, e))?;
        shard_crc.push(file.payload_crc());
        shards.push(path);
    }
    let manifest = Manifest {
        k,
        stripes: state.meta().stripes,
        original_len: state.meta().original_len,
        shard_crc,
    };
    let manifest_path = out_dir.join(MANIFEST_NAME);
    manifest.store(&manifest_path)?;

    let out = EncodeOutput {
        k,
        stripes: manifest.stripes,
        original_len: manifest.original_len,
        shards,
        manifest: manifest_path,
    };
    emit(cli, &out, || {
        let mut s = format!(
            "encoded {} bytes into {} stripe(s), k={} N={}\n",
            out.original_len,
            out.stripes,
            k,
            params.symbols_per_node()
        );
        for p in &out.shards {
            let _ = writeln!(s, "  {}", p.display());
        }
        let _ = writeln!(s, "manifest: {}", out.manifest.display());
        s
    });
    Ok(())
}

struct Inputs {
    params: CodeParams,
    manifest: Manifest,
    manifest_path: PathBuf,
    /// Indexed by node id; `None` where no file was given.
    shards: Vec<Option<ShardFile>>,
}

/// Reads shard files and the manifest, checking that they belong together.
fn load_inputs(paths: &[PathBuf], manifest: Option<&Path>) -> Result<Inputs, CliError> {
    let manifest_path = match manifest {
        Some(p) => p.to_path_buf(),
        None => paths[0]
            .parent()
            .unwrap_or(Path::new("."))
            .join(MANIFEST_NAME),
    };
    let m = Manifest::load(&manifest_path)?;
    let params = CodeParams::new(m.k)?;
    let mut shards: Vec<Option<ShardFile>> = vec![None; params.node_count()];
    for path in paths {
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        let file =
            ShardFile::from_bytes(&bytes).map_err(|e| CliError::Core(e).with_context(path))?;
        file.validate(&params)
            .map_err(|e| CliError::Core(e).with_context(path))?;
        let node = usize::from(file.node_id);
        if m.shard_crc[node] != file.payload_crc() {
            return Err(CliError::Manifest(format!(
                "{} does not belong to {} (payload CRC {:#010x}, manifest has {:#010x})",
                path.display(),
                manifest_path.display(),
                file.payload_crc(),
                m.shard_crc[node]
            )));
        }
        if shards[node].is_some() {
            return Err(CliError::Usage(format!("node {node} supplied twice")));
        }
        shards[node] = Some(file);
    }
    Ok(Inputs {
        params,
        manifest: m,
        manifest_path,
        shards,
    })
}

#[derive(Serialize)]
struct DecodeOutput {
    nodes_used: Vec<usize>,
    bytes: u64,
    out: PathBuf,
}

fn decode(
    cli: &Cli,
    exec: Execution,
    paths: &[PathBuf],
    manifest: Option<&Path>,
    out: &Path,
) -> Result<(), CliError> {
    let Inputs {
        params,
        manifest: m,
        shards,
        ..
    } = load_inputs(paths, manifest)?;
    let meta = m.meta(&params)?;
    let nodes_used: Vec<usize> = (0..shards.len()).filter(|&i| shards[i].is_some()).collect();
    let state = ClusterState::from_shards(params, meta, shards, exec)?;
    let bytes = state.read_file()?;
    fs::write(out, &bytes).map_err(|e| CliError::io(out, e))?;
    let o = DecodeOutput {
        nodes_used,
        bytes: bytes.len() as u64,
        out: out.to_path_buf(),
    };
    emit(cli, &o, || {
        format!(
            "decoded {} bytes from nodes {:?} -> {}\n",
            o.bytes,
            o.nodes_used,
            o.out.display()
        )
    });
    Ok(())
}

#[derive(Serialize)]
struct RepairOutput {
    label: &'static str,
    #[serde(flatten)]
    report: RepairReport,
    reads_per_stripe: u64,
    sent_per_stripe: u64,
    matches_expected: Option<bool>,
    crc_matches_manifest: bool,
    out: PathBuf,
}

fn repair(
    cli: &Cli,
    exec: Execution,
    paths: &[PathBuf],
    rebuild: usize,
    manifest: Option<&Path>,
    out_dir: Option<&Path>,
) -> Result<(), CliError> {
    let Inputs {
        params,
        manifest: m,
        manifest_path,
        shards,
    } = load_inputs(paths, manifest)?;
    params.check_node(rebuild)?;
    if shards[rebuild].is_some() {
        return Err(CliError::Usage(format!(
            "node {rebuild} is among the inputs; nothing to rebuild"
        )));
    }
    let meta = m.meta(&params)?;
    let mut state = ClusterState::from_shards(params, meta, shards, exec)?;
    let report = state.repair_node(rebuild)?;
    let file = state.shard_file(rebuild)?;
    let dir = out_dir.map_or_else(
        || {
            manifest_path
                .parent()
                .unwrap_or(Path::new("."))
                .to_path_buf()
        },
        Path::to_path_buf,
    );
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let out = dir.join(shard_name(rebuild));
    fs::write(&out, file.to_bytes()).map_err(|e| CliError::io(&out, e))?;

    let o = RepairOutput {
        label: report.label(),
        reads_per_stripe: report.reads_per_stripe(),
        sent_per_stripe: report.sent_per_stripe(),
        matches_expected: report.matches_expected(),
        crc_matches_manifest: file.payload_crc() == m.shard_crc[rebuild],
        out,
        report,
    };
    emit(cli, &o, || repair_text(&params, &o));
    if !o.crc_matches_manifest {
        return Err(CliError::Manifest(format!(
            "rebuilt node {rebuild} does not match the manifest CRC"
        )));
    }
    Ok(())
}

fn repair_text(params: &CodeParams, o: &RepairOutput) -> String {
    let r = &o.report;
    let mut s = format!("rebuilt node {} -> {}\n", r.node, o.out.display());
    match r.variant {
        Some(v) => {
            let _ = writeln!(
                s,
                "mode: {} ({})",
                o.label,
                serde_json::to_value(v)
                    .expect("variant")
                    .as_str()
                    .unwrap_or("")
            );
        }
        None => {
            let _ = writeln!(s, "mode: {}", o.label);
        }
    }
    let _ = writeln!(s, "stripes: {}", r.stripes);
    let per: Vec<String> = r
        .reads_per_node
        .iter()
        .map(|(n, c)| format!("{n}:{}", c / r.stripes.max(1)))
        .collect();
    let _ = writeln!(s, "reads per node per stripe: {}", per.join(" "));
    match (r.mode, r.expected_reads_per_stripe) {
        (RepairMode::Optimal, Some(e)) => {
            let status = if o.matches_expected == Some(true) {
                "MATCH"
            } else {
                "MISMATCH"
            };
            let _ = writeln!(s, "reads={}, expected={e}, {status}", o.reads_per_stripe);
            let _ = writeln!(
                s,
                "transfers={}, expected={}",
                o.sent_per_stripe,
                params.repair_bandwidth()
            );
        }
        _ => {
            let _ = writeln!(
                s,
                "reads={} (kN={})",
                o.reads_per_stripe,
                params.file_symbols()
            );
            let _ = writeln!(s, "transfers={}", o.sent_per_stripe);
        }
    }
    let _ = writeln!(
        s,
        "crc: {}",
        if o.crc_matches_manifest {
            "matches manifest"
        } else {
            "DIFFERS from manifest"
        }
    );
    s
}

fn parse_k_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--k-range expects a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    // Validate both ends up front so an out-of-range request fails fast.
    CodeParams::new(a)?;
    CodeParams::new(b)?;
    Ok((a, b))
}

fn verify(
    cli: &Cli,
    exec: Execution,
    k_range: &str,
    files: usize,
    inject_fault: bool,
) -> Result<(), CliError> {
    let (a, b) = parse_k_range(k_range)?;
    let opts = SweepOptions {
        random_files: files,
        seed: cli.seed,
        fault: inject_fault.then_some(Fault::FlipSign { j: 1, row: 0 }),
        exec,
    };
    let report = verify_range(a..=b, &opts)?;
    emit(cli, &report, || verify_text(cli, &report));
    let violations = report.violations().len();
    if violations > 0 {
        return Err(CliError::VerifyFailed(violations));
    }
    Ok(())
}

fn verify_text(cli: &Cli, r: &SweepReport) -> String {
    let mut s = String::new();
    if let Some(f) = r.fault {
        let _ = writeln!(s, "fault injected: {f:?}");
    }
    for kr in &r.results {
        let passed = kr.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(s, "k={}: {passed}/{} checks passed", kr.k, kr.checks.len());
        for c in &kr.checks {
            if !c.passed || cli.verbose > 0 {
                let tag = if c.passed { "ok  " } else { "FAIL" };
                let _ = writeln!(s, "  {tag} {} ({})", c.name, c.detail);
            }
        }
    }
    let v = r.violations().len();
    if v == 0 {
        let _ = writeln!(s, "all checks passed for k = {}..{}", r.k_min, r.k_max);
    } else {
        let _ = writeln!(s, "{v} violation(s)");
    }
    s
}

fn bound(cli: &Cli, k: usize) -> Result<(), CliError> {
    let r = io_lower_bound(k)?;
    emit(cli, &r, || bound_text(&r));
    Ok(())
}

fn bound_text(r: &IoBoundReport) -> String {
    let mut s = format!("k={} N={}\n", r.k, r.symbols_per_node);
    let _ = writeln!(
        s,
        "lower bound: {} (exact {})",
        r.lower_bound_ceil, r.lower_bound
    );
    let _ = writeln!(s, "achieved:    {}", r.achieved_io);
    let _ = writeln!(s, "gap:         {}", r.gap);
    let _ = writeln!(s, "per-matrix floor: {}", r.per_matrix_bound);
    if r.negative_correction {
        let _ = writeln!(
            s,
            "note: the correction term is negative at k=2; bound reported unclamped"
        );
    }
    s
}

fn bruteforce(cli: &Cli, exec: Execution, k: usize) -> Result<(), CliError> {
    let r = brute_force_min_io(k, exec)?;
    emit(cli, &r, || bruteforce_text(&r));
    Ok(())
}

fn matrix_text(m: &Gf3Matrix) -> String {
    m.to_residue_rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            format!("    [{}]\n", cells.join(" "))
        })
        .collect()
}

fn bruteforce_text(r: &BruteForceReport) -> String {
    let mut s = format!(
        "k={}: {} canonical matrices, {} pairs examined\n",
        r.k, r.canonical_matrices, r.pairs_examined
    );
    let _ = writeln!(s, "valid pairs: {}", r.valid_pairs);
    let _ = writeln!(
        s,
        "minimum I/O: {} ({} pair(s) reach it)",
        r.min_io, r.minimal_pairs
    );
    let _ = writeln!(s, "lower bound: {}", r.lower_bound_ceil);
    let _ = writeln!(s, "construction: {}", r.construction_io);
    let _ = writeln!(s, "witness S:");
    s.push_str(&matrix_text(&r.witness.s));
    let _ = writeln!(s, "witness S~:");
    s.push_str(&matrix_text(&r.witness.s_tilde));
    s
}
