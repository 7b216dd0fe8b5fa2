//! dB/dBm conversions. All library math runs in linear units; decibels
//! appear only at input and output boundaries.

use crate::error::{Error, Result};

/// Convert decibels to a linear power ratio: 10^(x/10).
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Convert a linear power ratio to decibels.
///
/// Fails for ratios that are not strictly positive.
pub fn linear_to_db(ratio: f64) -> Result<f64> {
    if !(ratio > 0.0) {
        return Err(Error::Domain(format!(
            "cannot express {ratio} in dB: ratio must be > 0"
        )));
    }
    Ok(10.0 * ratio.log10())
}

/// Convert dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm) * 1e-3
}

/// Convert watts to dBm. Fails for non-positive power.
pub fn watts_to_dbm(watts: f64) -> Result<f64> {
    Ok(linear_to_db(watts)? + 30.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_identity_points() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert!((db_to_linear(10.0) - 10.0).abs() < 1e-12);
        // 10^0.3
        assert!((db_to_linear(3.0) - 1.9952623149688795).abs() < 1e-12);
    }

    #[test]
    fn linear_to_db_rejects_nonpositive() {
        assert!(linear_to_db(0.0).is_err());
        assert!(linear_to_db(-1.0).is_err());
        assert!(linear_to_db(f64::NAN).is_err());
    }

    #[test]
    fn dbm_watts() {
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-12);
        assert!((dbm_to_watts(0.0) - 1e-3).abs() < 1e-18);
        assert!((watts_to_dbm(1.0).unwrap() - 30.0).abs() < 1e-12);
    }

    #[test]
    fn round_trip() {
        for &x in &[1e-9, 0.5, 1.0, 3.0, 12345.678] {
            let db = linear_to_db(x).unwrap();
            assert!((db_to_linear(db) - x).abs() <= 1e-12 * x);
        }
    }
}
