use sha2::{Digest, Sha256};

use crate::{Error, Result};

pub const HEADER_LEN: usize = 80;

/// Double SHA-256.
pub fn sha256d(bytes: &[u8]) -> [u8; 32] {
    Sha256::digest(Sha256::digest(bytes)).into()
}

/// An 80-byte block header.
///
/// Layout, all integers little-endian:
///
/// | offset | size | field       |
/// |--------|------|-------------|
/// | 0      | 4    | version     |
/// | 4      | 32   | prev_hash   |
/// | 36     | 32   | merkle_root |
/// | 68     | 4    | timestamp   |
/// | 72     | 4    | bits        |
/// | 76     | 4    | nonce       |
///
/// The two digests are copied verbatim in stored byte order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BlockHeader {
    pub version: u32,
    pub prev_hash: [u8; 32],
    pub merkle_root: [u8; 32],
    pub timestamp: u32,
    pub bits: u32,
    pub nonce: u32,
}

impl BlockHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&self.version.to_le_bytes());
        out[4..36].copy_from_slice(&self.prev_hash);
        out[36..68].copy_from_slice(&self.merkle_root);
        out[68..72].copy_from_slice(&self.timestamp.to_le_bytes());
        out[72..76].copy_from_slice(&self.bits.to_le_bytes());
        out[76..80].copy_from_slice(&self.nonce.to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != HEADER_LEN {
            return Err(Error::Parse(format!(
                "block header must be {HEADER_LEN} bytes, got {}",
                bytes.len()
            )));
        }
        let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
        Ok(Self {
            version: u32_at(0),
            prev_hash: bytes[4..36].try_into().unwrap(),
            merkle_root: bytes[36..68].try_into().unwrap(),
            timestamp: u32_at(68),
            bits: u32_at(72),
            nonce: u32_at(76),
        })
    }

    pub fn hash(&self) -> [u8; 32] {
        sha256d(&self.to_bytes())
    }
}
