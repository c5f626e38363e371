//! Key and signature sizes of post-quantum signature schemes, in kilobits.
//!
//! Totals are kept exactly as tabulated, so they are not always
//! `pk_kb + sig_kb` (RAINBOW lists 305 for 305 + 0.244).

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PqSignatureRecord {
    pub type_code: &'static str,
    pub name: &'static str,
    pub security_bits: u32,
    pub pk_kb: f64,
    pub sig_kb: f64,
    pub total_kb: f64,
}

const fn rec(
    type_code: &'static str,
    name: &'static str,
    security_bits: u32,
    pk_kb: f64,
    sig_kb: f64,
    total_kb: f64,
) -> PqSignatureRecord {
    PqSignatureRecord {
        type_code,
        name,
        security_bits,
        pk_kb,
        sig_kb,
        total_kb,
    }
}

/// Type I lattice, II multivariate, III hash based, IV code based.
pub const RECORDS: [PqSignatureRecord; 11] = [
    rec("I.1", "GPV", 100, 300.0, 240.0, 540.0),
    rec("I.2", "LYU", 100, 65.0, 103.0, 168.0),
    rec("I.3", "BLISS", 128, 7.0, 5.0, 12.0),
    rec("I.4", "DILITHIUM", 138, 11.8, 21.6, 33.4),
    rec("II.1", "RAINBOW", 160, 305.0, 0.244, 305.0),
    rec("III.1", "LMS", 128, 0.448, 20.0, 20.5),
    rec("III.2", "XMSS", 128, 0.544, 20.0, 20.5),
    rec("III.3", "SPHINCS", 128, 8.0, 328.0, 336.0),
    rec("III.4", "NSW", 128, 0.256, 36.0, 36.0),
    rec("IV.1", "CFS", 83, 9216.0, 0.1, 9216.0),
    rec("IV.2", "QUARTZ", 80, 568.0, 0.128, 568.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SortKey {
    SecurityBits,
    PkKb,
    SigKb,
    TotalKb,
}

impl SortKey {
    fn key(self, r: &PqSignatureRecord) -> f64 {
        match self {
            Self::SecurityBits => f64::from(r.security_bits),
            Self::PkKb => r.pk_kb,
            Self::SigKb => r.sig_kb,
            Self::TotalKb => r.total_kb,
        }
    }
}

/// Records in table order, or stably sorted by `key`.
pub fn sorted(key: Option<SortKey>, descending: bool) -> Vec<PqSignatureRecord> {
    let mut rows = RECORDS.to_vec();
    if let Some(k) = key {
        rows.sort_by(|a, b| {
            let ord = k.key(a).total_cmp(&k.key(b));
            if descending {
                ord.reverse()
            } else {
                ord
            }
        });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        assert_eq!(RECORDS.len(), 11);
        let asc = sorted(Some(SortKey::TotalKb), false);
        assert_eq!((asc[0].name, asc[0].total_kb), ("BLISS", 12.0));
        let desc = sorted(Some(SortKey::TotalKb), true);
        assert_eq!((desc[0].name, desc[0].total_kb), ("CFS", 9216.0));
    }

    #[test]
    fn ties_keep_table_order() {
        let rows = sorted(Some(SortKey::TotalKb), false);
        let lms = rows.iter().position(|r| r.name == "LMS").unwrap();
        assert_eq!(rows[lms + 1].name, "XMSS");
        let rows = sorted(Some(SortKey::SecurityBits), true);
        let names: Vec<_> = rows
            .iter()
            .filter(|r| r.security_bits == 128)
            .map(|r| r.name)
            .collect();
        assert_eq!(names, ["BLISS", "LMS", "XMSS", "SPHINCS", "NSW"]);
    }
}
