use std::path::PathBuf;
use std::time::Duration;

use docket_core::crypto::XorKey;

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_SESSION_TTL_MIN: u64 = 30;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("DOCKETD_XOR_KEY is not set")]
    MissingKey,
    #[error("DOCKETD_XOR_KEY must be non-empty hex")]
    BadKey,
    #[error("{name} is not a valid number: {value:?}")]
    BadNumber { name: &'static str, value: String },
}

/// Runtime settings, read from `DOCKETD_*` environment variables.
#[derive(Debug, Clone)]
pub struct Config {
    pub port: u16,
    pub data_dir: PathBuf,
    pub xor_key: XorKey,
    pub session_ttl: Duration,
}

impl Config {
    pub fn from_env() -> Result<Self, ConfigError> {
        Self::from_lookup(|name| std::env::var(name).ok())
    }

    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        fn number<T: std::str::FromStr>(name: &'static str, raw: Option<String>, default: T) -> Result<T, ConfigError> {
            match raw {
                None => Ok(default),
                Some(value) => value.trim().parse().map_err(|_| ConfigError::BadNumber { name, value }),
            }
        }
        let key = get("DOCKETD_XOR_KEY").ok_or(ConfigError::MissingKey)?;
        Ok(Self {
            port: number("DOCKETD_PORT", get("DOCKETD_PORT"), DEFAULT_PORT)?,
            data_dir: get("DOCKETD_DATA_DIR").map_or_else(|| PathBuf::from("./data"), PathBuf::from),
            xor_key: XorKey::from_hex(&key).map_err(|_| ConfigError::BadKey)?,
            session_ttl: Duration::from_secs(
                60 * number("DOCKETD_SESSION_TTL_MIN", get("DOCKETD_SESSION_TTL_MIN"), DEFAULT_SESSION_TTL_MIN)?,
            ),
        })
    }
}
