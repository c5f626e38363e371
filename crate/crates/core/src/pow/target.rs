use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// A hashcash threshold `1 <= t <= 2^256 - 1`, stored big-endian.
///
/// A header meets the target when its digest, read as a big-endian 256-bit
/// integer, is at most `t`. Mainnet Bitcoin reads digests little-endian; this
/// crate does not try to validate real blocks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Target([u8; 32]);

impl Target {
    pub const MAX: Target = Target([0xff; 32]);

    pub fn from_be_bytes(bytes: [u8; 32]) -> Result<Self> {
        if bytes.iter().all(|&b| b == 0) {
            return Err(Error::Target("target must be at least 1".into()));
        }
        Ok(Self(bytes))
    }

    pub fn from_biguint(value: &BigUint) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Target("target must be at least 1".into()));
        }
        let bytes = value.to_bytes_be();
        if bytes.len() > 32 {
            return Err(Error::Target("target exceeds 2^256 - 1".into()));
        }
        let mut out = [0u8; 32];
        out[32 - bytes.len()..].copy_from_slice(&bytes);
        Ok(Self(out))
    }

    /// `floor(2^exponent)`, for non-integer exponents too (`2^184.4`).
    pub fn from_log2(exponent: f64) -> Result<Self> {
        if !(0.0..256.0).contains(&exponent) {
            return Err(Error::Target(format!("2^{exponent} outside [1, 2^256)")));
        }
        let whole = exponent.floor();
        // 2^frac in [1, 2) carried as a 52-bit fixed-point mantissa.
        let mantissa = (2f64.powf(exponent - whole) * 2f64.powi(52)).floor() as u64;
        let shift = whole as i64 - 52;
        let value = if shift >= 0 {
            BigUint::from(mantissa) << shift as usize
        } else {
            BigUint::from(mantissa) >> (-shift) as usize
        };
        Self::from_biguint(&value)
    }

    pub fn to_be_bytes(&self) -> [u8; 32] {
        self.0
    }

    pub fn to_biguint(&self) -> BigUint {
        BigUint::from_bytes_be(&self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_biguint().to_f64().unwrap_or(f64::INFINITY)
    }

    /// True when `digest` (big-endian) is at most the target.
    pub fn is_met_by(&self, digest: &[u8; 32]) -> bool {
        digest <= &self.0
    }

    /// Success probability of one uniformly random hash, `(t + 1) / 2^256`.
    pub fn success_probability(&self) -> f64 {
        (self.to_f64() + 1.0) / 2f64.powi(256)
    }

    /// Compact "bits" encoding: a one-byte base-256 exponent and a 23-bit
    /// mantissa, truncating low-order bytes.
    pub fn to_compact(&self) -> u32 {
        let bytes = self.to_biguint().to_bytes_be();
        let mut size = bytes.len() as u32;
        let mut mantissa = if size <= 3 {
            let mut m = 0u32;
            for b in &bytes {
                m = (m << 8) | u32::from(*b);
            }
            m << (8 * (3 - size))
        } else {
            u32::from_be_bytes([0, bytes[0], bytes[1], bytes[2]])
        };
        if mantissa & 0x0080_0000 != 0 {
            mantissa >>= 8;
            size += 1;
        }
        (size << 24) | mantissa
    }

    pub fn from_compact(bits: u32) -> Result<Self> {
        let size = bits >> 24;
        let mantissa = bits & 0x007f_ffff;
        if bits & 0x0080_0000 != 0 {
            return Err(Error::Target(format!(
                "negative compact target {bits:#010x}"
            )));
        }
        let value = if size <= 3 {
            BigUint::from(mantissa >> (8 * (3 - size)))
        } else {
            BigUint::from(mantissa) << (8 * (size as usize - 3))
        };
        Self::from_biguint(&value)
    }
}

impl fmt::Debug for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Target({})", hex::encode(self.0))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(self.0))
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = s.trim().trim_start_matches("0x");
        let padded = format!("{raw:0>64}");
        let bytes = hex::decode(&padded).map_err(|e| Error::Parse(format!("target hex: {e}")))?;
        let arr: [u8; 32] = bytes
            .try_into()
            .map_err(|_| Error::Target("target exceeds 2^256 - 1".into()))?;
        Self::from_be_bytes(arr)
    }
}

/// `t = floor(2^224 / D)`, computed exactly from the binary expansion of `D`.
///
/// Any `D > 0` whose target lands in `[1, 2^256 - 1]` is accepted, so desk
/// experiments can use easy targets with `D < 1`.
pub fn difficulty_to_target(difficulty: f64) -> Result<Target> {
    if !(difficulty.is_finite() && difficulty > 0.0) {
        return Err(Error::Target(format!(
            "difficulty {difficulty} must be positive"
        )));
    }
    let (mantissa, exponent) = decode_f64(difficulty);
    // 2^224 / (mantissa * 2^exponent)
    let shift = 224 - exponent;
    let value = if shift >= 0 {
        (BigUint::from(1u8) << shift as usize) / BigUint::from(mantissa)
    } else {
        BigUint::from(1u8) / (BigUint::from(mantissa) << (-shift) as usize)
    };
    Target::from_biguint(&value)
}

/// `D = 2^224 / t`.
pub fn target_to_difficulty(target: &Target) -> f64 {
    2f64.powi(224) / target.to_f64()
}

/// Finite positive `x = mantissa * 2^exponent` with an integer mantissa.
fn decode_f64(x: f64) -> (u64, i64) {
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_difficulty() {
        let t = difficulty_to_target(1.0).unwrap();
        assert_eq!(t.to_biguint(), BigUint::from(1u8) << 224usize);
        assert_eq!(target_to_difficulty(&t), 1.0);
    }

    #[test]
    fn footnote_target() {
        let t = Target::from_log2(184.4).unwrap();
        let d = target_to_difficulty(&t);
        assert!((d - 2f64.powf(39.6)).abs() / d < 1e-12);
        assert!((d - 8.3e11).abs() / 8.3e11 < 0.01);
        assert!((d - 860e9).abs() / 860e9 < 0.05);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(difficulty_to_target(0.0).is_err());
        assert!(difficulty_to_target(-3.0).is_err());
        assert!(difficulty_to_target(f64::NAN).is_err());
        // t would be 2^256
        assert!(difficulty_to_target(2f64.powi(-32)).is_err());
        // t would be 0
        assert!(difficulty_to_target(2f64.powi(230)).is_err());
        assert!(Target::from_be_bytes([0; 32]).is_err());
        assert!(Target::from_log2(256.0).is_err());
    }

    #[test]
    fn max_target_accepts_everything() {
        assert!(Target::MAX.is_met_by(&[0xff; 32]));
        assert!(Target::MAX.is_met_by(&[0; 32]));
    }

    #[test]
    fn compact_bits() {
        let t = Target::from_compact(0x1d00_ffff).unwrap();
        assert_eq!(
            t.to_string(),
            "00000000ffff0000000000000000000000000000000000000000000000000000"
        );
        assert_eq!(t.to_compact(), 0x1d00_ffff);
        assert!(Target::from_compact(0x1d80_0000).is_err());
        // Small sizes shift the mantissa right.
        assert_eq!(
            Target::from_compact(0x0312_3456).unwrap().to_biguint(),
            BigUint::from(0x12_3456u32)
        );
        assert_eq!(
            Target::from_compact(0x0212_3456).unwrap().to_biguint(),
            BigUint::from(0x1234u32)
        );
    }

    #[test]
    fn hex_parsing() {
        let t: Target = "0x1000".parse().unwrap();
        assert_eq!(t.to_biguint(), BigUint::from(0x1000u32));
        assert!("0".parse::<Target>().is_err());
        assert!("zz".parse::<Target>().is_err());
    }

    proptest! {
        #[test]
        fn difficulty_round_trip(log_d in -31.9f64..190.0) {
            let d = 2f64.powf(log_d);
            let t = difficulty_to_target(d).unwrap();
            let back = target_to_difficulty(&t);
            prop_assert!(((back - d) / d).abs() <= 2f64.powi(-32), "{d} -> {back}");
        }

        #[test]
        fn compact_round_trip_is_truncation(bytes: [u8; 32]) {
            prop_assume!(bytes.iter().any(|&b| b != 0));
            let t = Target::from_be_bytes(bytes).unwrap();
            let c = Target::from_compact(t.to_compact()).unwrap();
            prop_assert!(c <= t);
            prop_assert_eq!(c.to_compact(), t.to_compact());
        }

        #[test]
        fn comparison_matches_integers(a: [u8; 32], b: [u8; 32]) {
            prop_assume!(b.iter().any(|&x| x != 0));
            let t = Target::from_be_bytes(b).unwrap();
            prop_assert_eq!(t.is_met_by(&a), BigUint::from_bytes_be(&a) <= t.to_biguint());
        }
    }
}
