//! Byte files to GF(3) stripes and back.
//!
//! Each byte becomes six base-3 digits, most significant first (`3^6 = 729`
//! covers every byte value). The digit stream is zero-padded to a multiple
//! of `kN`, then cut into stripes; within a stripe, part `j` takes digits
//! `jN .. (j+1)N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3::Gf3;
use crate::zigzag::{CodeParams, FileParts};

pub const TRITS_PER_BYTE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FileMeta {
    pub original_len: u64,
    pub stripes: u64,
    /// Zero trits appended after the last data trit.
    pub padding_trits: u64,
}

pub fn byte_to_trits(b: u8) -> [Gf3; TRITS_PER_BYTE] {
    let mut out = [Gf3::ZERO; TRITS_PER_BYTE];
    let mut v = b as i64;
    for t in out.iter_mut().rev() {
        *t = Gf3::new(v % 3);
        v /= 3;
    }
    out
}

pub fn trits_to_byte(t: &[Gf3]) -> Result<u8> {
    let v = t.iter().fold(0u32, |acc, d| acc * 3 + u32::from(d.value()));
    u8::try_from(v)
        .map_err(|_| Error::Corruption(format!("trit group decodes to {v}, beyond a byte")))
}

/// Number of stripes needed for `len` bytes. An empty file still occupies
/// one all-zero stripe.
pub fn stripe_count(params: &CodeParams, len: u64) -> u64 {
    let trits = len * TRITS_PER_BYTE as u64;
    let per = params.file_symbols() as u64;
    trits.div_ceil(per).max(1)
}

pub fn ingest(params: &CodeParams, bytes: &[u8]) -> (Vec<FileParts>, FileMeta) {
    let n = params.symbols_per_node();
    let stripes = stripe_count(params, bytes.len() as u64) as usize;
    let total = stripes * params.file_symbols();
    let mut trits = Vec::with_capacity(total);
    for &b in bytes {
        trits.extend_from_slice(&byte_to_trits(b));
    }
    let data_trits = trits.len();
    trits.resize(total, Gf3::ZERO);
    let parts = trits
        .chunks_exact(params.file_symbols())
        .map(|stripe| {
            let parts = stripe.chunks_exact(n).map(<[Gf3]>::to_vec).collect();
            FileParts::new(params, parts).expect("stripe is k parts of N symbols")
        })
        .collect();
    let meta = FileMeta {
        original_len: bytes.len() as u64,
        stripes: stripes as u64,
        padding_trits: (total - data_trits) as u64,
    };
    (parts, meta)
}

pub fn extract(params: &CodeParams, stripes: &[FileParts], meta: &FileMeta) -> Result<Vec<u8>> {
    if stripes.len() as u64 != meta.stripes {
        return Err(Error::Inconsistent(format!(
            "metadata records {} stripes, got {}",
            meta.stripes,
            stripes.len()
        )));
    }
    let needed = meta.original_len as usize * TRITS_PER_BYTE;
    let available = stripes.len() * params.file_symbols();
    if needed > available {
        return Err(Error::Inconsistent(format!(
            "metadata length {} bytes needs {needed} trits, stripes hold {available}",
            meta.original_len
        )));
    }
    let trits: Vec<Gf3> = stripes
        .iter()
        .flat_map(|s| s.parts().iter().flatten().copied())
        .take(needed)
        .collect();
    trits
        .chunks_exact(TRITS_PER_BYTE)
        .map(trits_to_byte)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn byte_examples() {
        let t: Vec<u8> = byte_to_trits(5).iter().map(|v| v.value()).collect();
        assert_eq!(t, vec![0, 0, 0, 0, 1, 2]);
        assert_eq!(trits_to_byte(&byte_to_trits(255)).unwrap(), 255);
        let high = [Gf3::MINUS_ONE; 6];
        assert!(matches!(trits_to_byte(&high), Err(Error::Corruption(_))));
    }

    #[test]
    fn empty_file_is_one_zero_stripe() {
        let p = CodeParams::new(3).unwrap();
        let (stripes, meta) = ingest(&p, &[]);
        assert_eq!(stripes.len(), 1);
        assert_eq!(meta.original_len, 0);
        assert!(stripes[0].parts().iter().flatten().all(|v| v.is_zero()));
        assert_eq!(extract(&p, &stripes, &meta).unwrap(), Vec::<u8>::new());
    }

    #[test]
    fn stripe_math() {
        let p = CodeParams::new(4).unwrap();
        // 1 KiB -> 6144 trits, 32 per stripe.
        let (stripes, meta) = ingest(&p, &[7u8; 1024]);
        assert_eq!(stripes.len(), 192);
        assert_eq!(meta.padding_trits, 0);
        let (stripes, meta) = ingest(&p, &[7u8; 3]);
        assert_eq!(stripes.len(), 1);
        assert_eq!(meta.padding_trits, 32 - 18);
    }

    proptest! {
        #[test]
        fn ingest_extract_round_trip(bytes in proptest::collection::vec(any::<u8>(), 0..4096), k in 2usize..7) {
            let p = CodeParams::new(k).unwrap();
            let (stripes, meta) = ingest(&p, &bytes);
            prop_assert_eq!(extract(&p, &stripes, &meta).unwrap(), bytes);
        }
    }
}
