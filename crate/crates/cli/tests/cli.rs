use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zigzag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zigzag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Deterministic pseudo-random bytes (xorshift).
fn sample_bytes(len: usize, mut state: u64) -> Vec<u8> {
    (0..len)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state as u8
        })
        .collect()
}

struct Encoded {
    dir: TempDir,
    input: Vec<u8>,
    k: usize,
}

impl Encoded {
    fn new(k: usize, len: usize) -> Self {
        let dir = TempDir::new().unwrap();
        let input = sample_bytes(len, 0x9E37_79B9_7F4A_7C15 ^ len as u64);
        let path = dir.path().join("input.bin");
        fs::write(&path, &input).unwrap();
        let out = zigzag(&[
            "encode",
            "--k",
            &k.to_string(),
            "--input",
            path.to_str().unwrap(),
            "--out-dir",
            dir.path().join("shards").to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        Encoded { dir, input, k }
    }

    fn shard(&self, node: usize) -> PathBuf {
        self.dir
            .path()
            .join("shards")
            .join(format!("node_{node}.shard"))
    }

    fn shards_except(&self, missing: &[usize]) -> Vec<String> {
        (0..self.k + 2)
            .filter(|n| !missing.contains(n))
            .map(|n| self.shard(n).to_str().unwrap().to_owned())
            .collect()
    }

    fn out(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn run_with_shards(pre: &[&str], shards: &[String], post: &[&str]) -> Output {
    let mut args: Vec<&str> = pre.to_vec();
    args.push("--shards");
    args.extend(shards.iter().map(String::as_str));
    args.extend_from_slice(post);
    zigzag(&args)
}

fn decode(e: &Encoded, missing: &[usize]) -> (Output, PathBuf) {
    let out = e.out("decoded.bin");
    let o = run_with_shards(
        &["decode"],
        &e.shards_except(missing),
        &["--out", out.to_str().unwrap()],
    );
    (o, out)
}

fn repair(e: &Encoded, node: usize, extra: &[&str]) -> Output {
    let rebuilt = e.out("rebuilt");
    let node_s = node.to_string();
    let mut post = vec![
        "--rebuild",
        node_s.as_str(),
        "--out-dir",
        rebuilt.to_str().unwrap(),
    ];
    post.extend_from_slice(extra);
    run_with_shards(&["repair"], &e.shards_except(&[node]), &post)
}

fn read_manifest(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("shards/manifest.json")).unwrap()).unwrap()
}

#[test]
fn encode_one_kib_at_k4() {
    let e = Encoded::new(4, 1024);
    for n in 0..6 {
        assert!(e.shard(n).exists());
    }
    let m = read_manifest(e.dir.path());
    // 1024 bytes × 6 trits / (kN = 32) = 192 stripes.
    assert_eq!(m["k"], 4);
    assert_eq!(m["stripes"], 192);
    assert_eq!(m["original_len"], 1024);
    assert_eq!(m["shard_crc"].as_array().unwrap().len(), 6);
    // Header + ceil(192·8 / 5) payload bytes + CRC.
    assert_eq!(fs::metadata(e.shard(0)).unwrap().len(), 19 + 308 + 4);
}

#[test]
fn empty_file_round_trips() {
    let e = Encoded::new(3, 0);
    assert_eq!(read_manifest(e.dir.path())["stripes"], 1);
    let (o, out) = decode(&e, &[0, 1]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(out).unwrap(), Vec::<u8>::new());
}

#[test]
fn k1_is_invalid() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("x");
    fs::write(&input, b"abc").unwrap();
    let o = zigzag(&[
        "encode",
        "--k",
        "1",
        "--input",
        input.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 5);
}

#[test]
fn decode_from_every_k_subset() {
    let e = Encoded::new(4, 777);
    for a in 0..6 {
        for b in a + 1..6 {
            let (o, out) = decode(&e, &[a, b]);
            assert_eq!(
                code(&o),
                0,
                "missing {a},{b}: {}",
                String::from_utf8_lossy(&o.stderr)
            );
            assert_eq!(fs::read(&out).unwrap(), e.input, "missing {a},{b}");
        }
    }
}

#[test]
fn decode_with_too_few_shards() {
    let e = Encoded::new(4, 100);
    let (o, _) = decode(&e, &[0, 1, 5]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("3 shards available, 4 required"), "{err}");
}

#[test]
fn decode_rejects_crc_damage() {
    let e = Encoded::new(3, 200);
    let mut bytes = fs::read(e.shard(1)).unwrap();
    bytes[25] ^= 0x01;
    fs::write(e.shard(1), bytes).unwrap();
    let (o, _) = decode(&e, &[]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("CRC mismatch"));
}

#[test]
fn decode_rejects_mixed_manifests() {
    let a = Encoded::new(3, 200);
    let b = Encoded::new(3, 201);
    fs::copy(b.shard(2), a.shard(2)).unwrap();
    let (o, _) = decode(&a, &[]);
    assert_eq!(code(&o), 4);
}

#[test]
fn repair_first_parity_k3() {
    let e = Encoded::new(3, 300);
    let o = repair(&e, 3, &[]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("reads=13, expected=13, MATCH"), "{text}");
    assert!(text.contains("transfers=8, expected=8"), "{text}");
    assert_eq!(
        fs::read(e.out("rebuilt/node_3.shard")).unwrap(),
        fs::read(e.shard(3)).unwrap()
    );
}

#[test]
fn repair_second_parity_k5_json() {
    let e = Encoded::new(5, 500);
    let o = repair(&e, 6, &["--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reads_per_stripe"], 91);
    assert_eq!(v["sent_per_stripe"], 48);
    assert_eq!(v["matches_expected"], true);
    assert_eq!(v["variant"], "second-parity");
    assert_eq!(
        fs::read(e.out("rebuilt/node_6.shard")).unwrap(),
        fs::read(e.shard(6)).unwrap()
    );
}

#[test]
fn repair_systematic_is_labeled_fallback() {
    let e = Encoded::new(4, 64);
    let o = repair(&e, 2, &[]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("fallback: full download, reads=kN"), "{text}");
    assert!(text.contains("reads=32 (kN=32)"), "{text}");
    assert_eq!(
        fs::read(e.out("rebuilt/node_2.shard")).unwrap(),
        fs::read(e.shard(2)).unwrap()
    );
}

#[test]
fn verify_passes_and_json_lists_conditions() {
    let o = zigzag(&["verify", "--k-range", "2..8", "--files", "20"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks passed for k = 2..8"));

    let o = zigzag(&[
        "verify",
        "--k-range",
        "2..4",
        "--files",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert!(results.iter().all(|r| r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true)));
}

#[test]
fn verify_catches_injected_fault() {
    let o = zigzag(&[
        "verify",
        "--k-range",
        "3..4",
        "--files",
        "5",
        "--inject-fault",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_rejects_bad_range() {
    assert_eq!(code(&zigzag(&["verify", "--k-range", "2..40"])), 5);
    assert_eq!(code(&zigzag(&["verify", "--k-range", "five"])), 5);
}

#[test]
fn bound_k5() {
    let o = zigzag(&["bound", "--k", "5", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lower_bound"], "84");
    assert_eq!(v["achieved_io"], 91);
}

#[test]
fn bruteforce_k3_and_k4() {
    let o = zigzag(&["bruteforce", "--k", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let m = v["min_io"].as_u64().unwrap();
    assert!((12..=13).contains(&m));
    assert_eq!(v["witness"]["s"].as_array().unwrap().len(), 2);

    let o = zigzag(&["bruteforce", "--k", "4"]);
    assert_eq!(code(&o), 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("max k = 3"));
}

#[test]
fn output_is_deterministic() {
    let a = zigzag(&[
        "verify",
        "--k-range",
        "2..4",
        "--files",
        "5",
        "--format",
        "json",
        "--seed",
        "7",
    ]);
    let b = zigzag(&[
        "verify",
        "--k-range",
        "2..4",
        "--files",
        "5",
        "--format",
        "json",
        "--seed",
        "7",
        "--sequential",
    ]);
    assert_eq!(stdout(&a), stdout(&b));
}
