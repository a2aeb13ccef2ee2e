use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tensorion_core::lie::JacobiMode;
use tensorion_core::tits::TitsConfig;

/// Everything that can change a computed result. Thread counts are absent because
/// results do not depend on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub tits: TitsConfig,
    pub jacobi: JacobiMode,
    /// Seed of the random pre-filter in Jordan-identity checks.
    pub jordan_seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tits: TitsConfig::default(),
            jacobi: JacobiMode::Full,
            jordan_seed: 0,
        }
    }
}

impl RunConfig {
    pub fn fingerprint(&self) -> String {
        fingerprint(self)
    }
}

/// Hex SHA-256 of the JSON form, prefixed with the crate version.
pub fn fingerprint(value: &impl Serialize) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(b"\0");
    h.update(serde_json::to_vec(value).expect("serializable"));
    hex::encode(h.finalize())
}
