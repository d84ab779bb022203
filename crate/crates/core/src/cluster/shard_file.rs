//! On-disk shard format.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "ZZG3" (5A 5A 47 33)
//! 4       1     version (01)
//! 5       1     k
//! 6       1     node id
//! 7       4     stripe count, little-endian
//! 11      8     payload trit count, little-endian
//! 19      ..    payload, 5 trits per byte: t0·81 + t1·27 + t2·9 + t3·3 + t4
//! end-4   4     CRC32 of the payload bytes, little-endian
//! ```
//!
//! The final payload byte is zero-padded when the trit count is not a
//! multiple of five.

use crate::error::{Error, Result};
use crate::gf3::Gf3;
use crate::zigzag::CodeParams;

pub const MAGIC: [u8; 4] = *b"ZZG3";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 19;
pub const TRITS_PER_PACKED_BYTE: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShardFile {
    pub k: u8,
    pub node_id: u8,
    pub stripe_count: u32,
    /// All stripes of this node back to back, `N` symbols each.
    pub symbols: Vec<Gf3>,
}

pub fn pack_trits(trits: &[Gf3]) -> Vec<u8> {
    trits
        .chunks(TRITS_PER_PACKED_BYTE)
        .map(|g| {
            let mut v = 0u8;
            for i in 0..TRITS_PER_PACKED_BYTE {
                v = v * 3 + g.get(i).map_or(0, |t| t.value());
            }
            v
        })
        .collect()
}

pub fn unpack_trits(bytes: &[u8], count: usize) -> Result<Vec<Gf3>> {
    if bytes.len() != count.div_ceil(TRITS_PER_PACKED_BYTE) {
        return Err(Error::Format(format!(
            "{} payload bytes cannot hold exactly {count} trits",
            bytes.len()
        )));
    }
    let mut out = Vec::with_capacity(bytes.len() * TRITS_PER_PACKED_BYTE);
    for &b in bytes {
        if b >= 243 {
            return Err(Error::Corruption(format!(
                "packed byte {b} exceeds 3^5 - 1"
            )));
        }
        let mut group = [Gf3::ZERO; TRITS_PER_PACKED_BYTE];
        let mut v = b;
        for t in group.iter_mut().rev() {
            *t = Gf3::new(i64::from(v % 3));
            v /= 3;
        }
        out.extend_from_slice(&group);
    }
    if out[count..].iter().any(|t| !t.is_zero()) {
        return Err(Error::Corruption(
            "nonzero padding trits in final payload byte".into(),
        ));
    }
    out.truncate(count);
    Ok(out)
}

impl ShardFile {
    pub fn new(
        params: &CodeParams,
        node_id: usize,
        stripe_count: u32,
        symbols: Vec<Gf3>,
    ) -> Result<Self> {
        params.check_node(node_id)?;
        let f = ShardFile {
            k: params.k() as u8,
            node_id: node_id as u8,
            stripe_count,
            symbols,
        };
        f.validate(params)?;
        Ok(f)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let payload = pack_trits(&self.symbols);
        let mut out = Vec::with_capacity(HEADER_LEN + payload.len() + 4);
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(self.k);
        out.push(self.node_id);
        out.extend_from_slice(&self.stripe_count.to_le_bytes());
        out.extend_from_slice(&(self.symbols.len() as u64).to_le_bytes());
        out.extend_from_slice(&payload);
        out.extend_from_slice(&crc32fast::hash(&payload).to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN + 4 {
            return Err(Error::Format(format!(
                "file of {} bytes is too short",
                bytes.len()
            )));
        }
        if bytes[0..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::Format(format!("unsupported version {}", bytes[4])));
        }
        let k = bytes[5];
        let node_id = bytes[6];
        let stripe_count = u32::from_le_bytes(bytes[7..11].try_into().expect("4 bytes"));
        let trit_count = u64::from_le_bytes(bytes[11..19].try_into().expect("8 bytes"));
        let trit_count = usize::try_from(trit_count)
            .map_err(|_| Error::Format("trit count overflows".into()))?;
        let payload = &bytes[HEADER_LEN..bytes.len() - 4];
        let stored = u32::from_le_bytes(bytes[bytes.len() - 4..].try_into().expect("4 bytes"));
        let computed = crc32fast::hash(payload);
        if stored != computed {
            return Err(Error::CrcMismatch { stored, computed });
        }
        let symbols = unpack_trits(payload, trit_count)?;
        Ok(ShardFile {
            k,
            node_id,
            stripe_count,
            symbols,
        })
    }

    /// CRC32 of the packed payload, as stored in the trailer.
    pub fn payload_crc(&self) -> u32 {
        crc32fast::hash(&pack_trits(&self.symbols))
    }

    pub fn validate(&self, params: &CodeParams) -> Result<()> {
        if usize::from(self.k) != params.k() {
            return Err(Error::Format(format!(
                "shard has k = {}, expected {}",
                self.k,
                params.k()
            )));
        }
        params.check_node(usize::from(self.node_id)).map_err(|_| {
            Error::Format(format!(
                "node id {} out of range for k = {}",
                self.node_id, self.k
            ))
        })?;
        let expect = self.stripe_count as usize * params.symbols_per_node();
        if self.symbols.len() != expect {
            return Err(Error::Format(format!(
                "{} symbols for {} stripes, expected {expect}",
                self.symbols.len(),
                self.stripe_count
            )));
        }
        Ok(())
    }

    /// Symbols of one stripe.
    pub fn stripe(&self, n: usize, stripe: usize) -> &[Gf3] {
        &self.symbols[stripe * n..(stripe + 1) * n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> ShardFile {
        let p = CodeParams::new(3).unwrap();
        let symbols = (0..8).map(Gf3::new).collect();
        ShardFile::new(&p, 4, 2, symbols).unwrap()
    }

    #[test]
    fn header_layout() {
        let bytes = sample().to_bytes();
        assert_eq!(&bytes[..4], &[0x5A, 0x5A, 0x47, 0x33]);
        assert_eq!(bytes[4], 0x01);
        assert_eq!(bytes[5], 3);
        assert_eq!(bytes[6], 4);
        assert_eq!(&bytes[7..11], &2u32.to_le_bytes());
        assert_eq!(&bytes[11..19], &8u64.to_le_bytes());
        // trits 0 1 2 0 1 | 2 0 1 (pad 0 0)
        assert_eq!(&bytes[19..21], &[27 + 18 + 1, 2 * 81 + 9]);
        let crc = crc32fast::hash(&bytes[19..21]);
        assert_eq!(&bytes[21..], &crc.to_le_bytes());
        assert_eq!(ShardFile::from_bytes(&bytes).unwrap(), sample());
    }

    #[test]
    fn detects_corruption() {
        let mut bytes = sample().to_bytes();
        bytes[19] ^= 1;
        assert!(matches!(
            ShardFile::from_bytes(&bytes),
            Err(Error::CrcMismatch { .. })
        ));

        let mut bytes = sample().to_bytes();
        bytes[0] = b'X';
        assert!(matches!(
            ShardFile::from_bytes(&bytes),
            Err(Error::Format(_))
        ));

        assert!(matches!(
            ShardFile::from_bytes(&[0u8; 5]),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn validates_against_params() {
        let f = sample();
        assert!(f.validate(&CodeParams::new(3).unwrap()).is_ok());
        assert!(f.validate(&CodeParams::new(4).unwrap()).is_err());
        let p = CodeParams::new(3).unwrap();
        assert!(ShardFile::new(&p, 4, 3, vec![Gf3::ZERO; 8]).is_err());
        assert!(ShardFile::new(&p, 5, 2, vec![Gf3::ZERO; 8]).is_err());
    }

    proptest! {
        #[test]
        fn pack_round_trip(v in proptest::collection::vec(0u8..3, 0..200)) {
            let trits: Vec<Gf3> = v.iter().map(|&x| Gf3::new(i64::from(x))).collect();
            let packed = pack_trits(&trits);
            prop_assert!(packed.iter().all(|&b| b < 243));
            prop_assert_eq!(unpack_trits(&packed, trits.len()).unwrap(), trits);
        }
    }
}
