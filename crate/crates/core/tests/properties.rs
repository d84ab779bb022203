use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zigzag_msr::cluster::{extract, ingest, ShardFile};
use zigzag_msr::gf3::{solve_left, solve_square};
use zigzag_msr::repair::plan_repair;
use zigzag_msr::zigzag::{build_coding_matrices, FileParts};
use zigzag_msr::{CodeParams, Gf3, Gf3Matrix, SignedPermutation, ZigzagCode};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Gf3Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(0u8..3, r * c).prop_map(move |v| {
            let data = v.into_iter().map(|x| Gf3::new(i64::from(x))).collect();
            Gf3Matrix::from_vec(r, c, data).unwrap()
        })
    })
}

fn signed_perm(max: usize) -> impl Strategy<Value = SignedPermutation> {
    (1..=max).prop_flat_map(|n| {
        (
            Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(t, s)| {
                let signs = s
                    .into_iter()
                    .map(|neg| if neg { Gf3::MINUS_ONE } else { Gf3::ONE })
                    .collect();
                SignedPermutation::new(t, signs).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(m in matrix(7, 7)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_of_product_is_bounded(a in matrix(6, 5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = Gf3Matrix::from_vec(
            a.cols(),
            4,
            (0..a.cols() * 4).map(|_| Gf3::new(rand::Rng::random_range(&mut rng, 0..3))).collect(),
        ).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn rref_preserves_rank(m in matrix(6, 8)) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(r.rank(), m.rank());
        prop_assert_eq!(pivots.len(), m.rank());
    }

    #[test]
    fn solve_left_round_trips(x in matrix(5, 6), seed in any::<u64>()) {
        // A target built from the rows of x is always reachable.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Gf3Matrix::from_vec(
            3,
            x.rows(),
            (0..3 * x.rows()).map(|_| Gf3::new(rand::Rng::random_range(&mut rng, 0..3))).collect(),
        ).unwrap();
        let target = w.mul(&x).unwrap();
        let t = solve_left(&x, &target).unwrap();
        prop_assert_eq!(t.mul(&x).unwrap(), target);
    }

    #[test]
    fn solve_square_round_trips(p in signed_perm(8), seed in any::<u64>()) {
        // Signed permutations plus the identity are not always invertible, so
        // test on p itself, which is.
        let a = p.to_dense();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Gf3Matrix::from_vec(
            a.rows(),
            1,
            (0..a.rows()).map(|_| Gf3::new(rand::Rng::random_range(&mut rng, 0..3))).collect(),
        ).unwrap();
        let y = a.mul(&x).unwrap();
        prop_assert_eq!(solve_square(&a, &y).unwrap(), x);
    }

    #[test]
    fn signed_permutation_round_trips(p in signed_perm(12)) {
        prop_assert_eq!(SignedPermutation::from_dense(&p.to_dense()).unwrap(), p.clone());
        let id = SignedPermutation::identity(p.size());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(p.to_dense().mul(&p.inverse().to_dense()).unwrap(), id.to_dense());
    }

    #[test]
    fn ingest_extract_is_identity(bytes in proptest::collection::vec(any::<u8>(), 0..20_000), k in 2usize..6) {
        let p = CodeParams::new(k).unwrap();
        let (stripes, meta) = ingest(&p, &bytes);
        prop_assert_eq!(extract(&p, &stripes, &meta).unwrap(), bytes);
    }

    #[test]
    fn shard_file_round_trips(k in 2usize..6, stripes in 0u32..5, node in 0usize..4, seed in any::<u64>()) {
        let p = CodeParams::new(k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let symbols = (0..stripes as usize * p.symbols_per_node())
            .map(|_| Gf3::new(rand::Rng::random_range(&mut rng, 0..3)))
            .collect();
        let f = ShardFile::new(&p, node, stripes, symbols).unwrap();
        prop_assert_eq!(ShardFile::from_bytes(&f.to_bytes()).unwrap(), f);
    }

    /// Changing one systematic symbol changes exactly one symbol of each
    /// parity shard.
    #[test]
    fn optimal_update(k in 2usize..8, seed in any::<u64>(), j_pick in any::<usize>(), i_pick in any::<usize>()) {
        let p = CodeParams::new(k).unwrap();
        let code = ZigzagCode::from_params(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FileParts::random(&p, &mut rng);
        let (j, i) = (j_pick % k, i_pick % p.symbols_per_node());
        let mut parts = f.clone().into_parts();
        parts[j][i] += Gf3::ONE;
        let g = FileParts::new(&p, parts).unwrap();
        let (a, b) = (code.encode(&f), code.encode(&g));
        for parity in [k, k + 1] {
            let changed = a.shard(parity).iter().zip(b.shard(parity)).filter(|(x, y)| x != y).count();
            prop_assert_eq!(changed, 1);
        }
    }

    #[test]
    fn parity_repair_is_exact(k in 2usize..7, seed in any::<u64>(), second in any::<bool>()) {
        let p = CodeParams::new(k).unwrap();
        let code = ZigzagCode::from_params(p);
        let f = FileParts::random(&p, &mut ChaCha8Rng::seed_from_u64(seed));
        let shards = code.encode(&f).into_shards();
        let node = if second { k + 1 } else { k };
        let plan = plan_repair(&code, node).unwrap();
        prop_assert_eq!(plan.repair_from_shards(&shards).unwrap(), shards[node].clone());
    }
}

#[test]
fn coding_matrices_are_mds_up_to_k8() {
    for k in 2..=8 {
        let cm = build_coding_matrices(&CodeParams::new(k).unwrap());
        let n = cm.params().symbols_per_node();
        for a in 0..k {
            for b in a + 1..k {
                let d = cm.dense(a).sub(&cm.dense(b)).unwrap();
                assert_eq!(d.rank(), n, "k={k} A_{a} - A_{b}");
            }
        }
    }
}
