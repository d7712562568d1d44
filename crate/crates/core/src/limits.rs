//! Size caps for enumeration-heavy operations.

use crate::error::{Error, Result};

/// Largest ring whose elements may be enumerated into tables by default.
pub const DEFAULT_MAX_RING_SIZE: u64 = 1 << 16;

/// Default cap on candidate polynomials or forms visited by one enumeration.
pub const DEFAULT_MAX_ENUMERATION: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_MAX_ENUMERATION`].
pub const CAP_ENV_VAR: &str = "RINGFUNC_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_ring_size: u64,
    pub max_enumeration: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_size: DEFAULT_MAX_RING_SIZE,
            max_enumeration: DEFAULT_MAX_ENUMERATION,
        }
    }
}

impl Limits {
    /// Defaults, with the enumeration cap taken from `RINGFUNC_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(CAP_ENV_VAR) {
            limits.max_enumeration = raw.trim().parse().map_err(|_| {
                Error::Precondition(format!(
                    "{CAP_ENV_VAR} must be a positive integer, got `{raw}`"
                ))
            })?;
        }
        Ok(limits)
    }

    pub fn unlimited() -> Self {
        Limits {
            max_ring_size: u64::MAX,
            max_enumeration: u64::MAX,
        }
    }

    pub fn check_enumeration(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.max_enumeration as u128 {
            return Err(Error::size_cap(what, needed, self.max_enumeration as u128));
        }
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u64, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}
