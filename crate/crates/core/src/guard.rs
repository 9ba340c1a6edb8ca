//! Hard caps on enumeration sizes.
//!
//! The default cap is one million elements per call. It can be raised through
//! the `DLIRRED_SIZE_GUARD` environment variable, up to ten times the default.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_LIMIT: u128 = 1_000_000;
pub const ENV_VAR: &str = "DLIRRED_SIZE_GUARD";

static LIMIT: OnceLock<u128> = OnceLock::new();

/// Parses an override value; values above the hard ceiling are clamped.
pub fn limit_from(value: Option<&str>) -> u128 {
    match value.and_then(|v| v.trim().parse::<u128>().ok()) {
        Some(v) if v > 0 => v.min(10 * DEFAULT_LIMIT),
        _ => DEFAULT_LIMIT,
    }
}

pub fn limit() -> u128 {
    *LIMIT.get_or_init(|| limit_from(std::env::var(ENV_VAR).ok().as_deref()))
}

pub fn check(what: &str, needed: u128) -> Result<()> {
    let limit = limit();
    if needed > limit {
        Err(Error::SizeGuard {
            what: what.to_string(),
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_is_capped() {
        assert_eq!(limit_from(None), DEFAULT_LIMIT);
        assert_eq!(limit_from(Some("5000")), 5000);
        assert_eq!(limit_from(Some("999999999999")), 10 * DEFAULT_LIMIT);
        assert_eq!(limit_from(Some("junk")), DEFAULT_LIMIT);
        assert_eq!(limit_from(Some("0")), DEFAULT_LIMIT);
    }
}
