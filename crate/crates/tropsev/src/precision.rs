//! Truncation-order retry policy: computations that certify valuations
//! start from a caller-chosen order and double it on ambiguity, up to
//! three retries, optionally capped by the `TROPSEV_MAX_TRUNC`
//! environment variable.

use crate::error::{Error, Result};
use num::rational::BigRational;
use num::FromPrimitive;

const MAX_RETRIES: usize = 3;

fn env_cap() -> Option<BigRational> {
    let raw = std::env::var("TROPSEV_MAX_TRUNC").ok()?;
    let raw = raw.trim();
    if let Ok(v) = raw.parse::<i64>() {
        return BigRational::from_i64(v);
    }
    crate::textio::parse_rational(raw).ok()
}

/// Run `f` with increasing truncation orders until it stops reporting
/// `Truncated`. Other errors pass through unchanged.
pub fn with_precision<T>(
    initial: BigRational,
    mut f: impl FnMut(&BigRational) -> Result<T>,
) -> Result<T> {
    let cap = env_cap();
    let mut tau = initial;
    let mut last_msg = String::new();
    for attempt in 0..=MAX_RETRIES {
        if let Some(cap) = &cap {
            if &tau > cap {
                return Err(Error::PrecisionExhausted(format!(
                    "truncation order {} exceeds TROPSEV_MAX_TRUNC={}; last ambiguity: {}",
                    tau, cap, last_msg
                )));
            }
        }
        match f(&tau) {
            Err(Error::Truncated(msg)) => {
                last_msg = msg;
                if attempt == MAX_RETRIES {
                    break;
                }
                tau = &tau + &tau;
            }
            other => return other,
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "still ambiguous after {} retries: {}",
        MAX_RETRIES, last_msg
    )))
}
