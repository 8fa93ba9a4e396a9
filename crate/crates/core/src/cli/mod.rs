//! Commands behind the `icobr` binary, usable as library calls.

pub mod analyze;
pub mod region;
pub mod sweep;
pub mod verify;

pub use analyze::{analyze, cmd_analyze, AnalysisReport};
pub use region::{cmd_region, region_dump, RegionDump};
pub use sweep::{cmd_sweep, write_csv, ObjectiveName, Range, SweepSpec};
pub use verify::{cmd_verify, random_scenario, VerifyOptions, VerifyReport};

use crate::error::{Error, Result};

/// Overrides the default sweep worker count when `--workers` is not given.
pub const WORKERS_ENV: &str = "ICOBR_WORKERS";

/// Significant digits in CSV output.
pub const CSV_DIGITS: i32 = 9;

/// `--workers`, else `ICOBR_WORKERS`, else the available parallelism.
pub fn resolve_workers(flag: Option<usize>) -> Result<usize> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var(WORKERS_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| Error::InvalidField {
                field: WORKERS_ENV.into(),
                reason: format!("not a worker count: `{v}`"),
            })?,
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        },
    };
    if n == 0 {
        return Err(Error::InvalidField {
            field: "workers".into(),
            reason: "must be at least 1".into(),
        });
    }
    Ok(n)
}

/// Fixed-point with 9 significant digits, trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (CSV_DIGITS - 1 - mag).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(0.5), "0.5");
        assert_eq!(fmt_sig(1.729_716_394_5), "1.72971639");
        assert_eq!(fmt_sig(12345.678_912_3), "12345.6789");
        assert_eq!(fmt_sig(0.000_123_456_789_12), "0.000123456789");
        assert_eq!(fmt_sig(-2.5), "-2.5");
    }

    #[test]
    fn explicit_workers_win() {
        assert_eq!(resolve_workers(Some(3)).unwrap(), 3);
        assert!(resolve_workers(Some(0)).is_err());
    }
}
