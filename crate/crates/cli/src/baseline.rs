//! Published reference tables, shipped as `data/baseline.toml` and checked
//! against the SHA-256 in `data/baseline.toml.sha256`.

use anyhow::{bail, ensure, Context, Result};
use serde::Deserialize;
use sha2::{Digest, Sha256};

pub const BASELINE_TOML: &str = include_str!("../data/baseline.toml");
pub const BASELINE_SHA256: &str = include_str!("../data/baseline.toml.sha256");

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Baseline {
    pub version: u32,
    pub sn_table: Vec<(u32, u32)>,
    pub dim_table: Vec<(u32, u32)>,
}

impl Baseline {
    /// The embedded copy, checksum-verified.
    pub fn embedded() -> Result<Self> {
        Self::parse_checked(BASELINE_TOML, BASELINE_SHA256.trim())
    }

    pub fn parse_checked(text: &str, sha256_hex: &str) -> Result<Self> {
        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        if !digest.eq_ignore_ascii_case(sha256_hex) {
            bail!("baseline checksum mismatch: expected {sha256_hex}, got {digest}");
        }
        let baseline: Baseline = toml::from_str(text).context("parsing baseline")?;
        baseline.validate()?;
        Ok(baseline)
    }

    fn validate(&self) -> Result<()> {
        ensure!(
            self.version == 1,
            "unsupported baseline version {}",
            self.version
        );
        let ns: Vec<u32> = self.sn_table.iter().map(|r| r.0).collect();
        ensure!(
            ns == (7..=30).collect::<Vec<_>>(),
            "s_n table must cover n = 7..30 in order"
        );
        ensure!(
            self.sn_table.iter().all(|&(n, s)| s <= n - 6),
            "s_n table has s_n > n - 6"
        );
        let es: Vec<u32> = self.dim_table.iter().map(|r| r.0).collect();
        ensure!(
            es == (1..=8).collect::<Vec<_>>(),
            "dimension table must cover e = 1..8 in order"
        );
        Ok(())
    }

    pub fn sn(&self, n: u32) -> Option<u32> {
        self.sn_table.iter().find(|r| r.0 == n).map(|r| r.1)
    }

    pub fn min_dimension(&self, e: u32) -> Option<u32> {
        self.dim_table.iter().find(|r| r.0 == e).map(|r| r.1)
    }
}
