//! Facility-level power accounting.
//!
//! A facility's draw splits into information-carrying power, supporting
//! power that is on the data path but carries no bits, and auxiliary power
//! (cooling, distribution). PUE compares total draw against IT draw and is
//! blind to how much of the IT draw actually moves bits; the facility
//! waste factor `W = 1/eta` keeps that distinction, so facilities with
//! identical PUE can still be ranked.

use serde::{Deserialize, Serialize};

use crate::cascade::{GeneralizedLink, LinkWaste};
use crate::error::{Error, Result};

/// Power inventory of one facility, in any single consistent unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataCenterProfile {
    /// Power spent carrying or storing information.
    pub p_info: f64,
    /// Power spent on the data path without carrying information.
    pub p_non_info: f64,
    /// Cooling, distribution, and other auxiliary power.
    pub p_aux: f64,
}

impl DataCenterProfile {
    pub fn new(p_info: f64, p_non_info: f64, p_aux: f64) -> Result<Self> {
        let profile = Self {
            p_info,
            p_non_info,
            p_aux,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p_info > 0.0) || !self.p_info.is_finite() {
            return Err(Error::InvalidInput(format!(
                "p_info must be > 0, got {}",
                self.p_info
            )));
        }
        if !(self.p_non_info >= 0.0) || !self.p_non_info.is_finite() {
            return Err(Error::InvalidInput(format!(
                "p_non_info must be >= 0, got {}",
                self.p_non_info
            )));
        }
        if !(self.p_aux >= 0.0) || !self.p_aux.is_finite() {
            return Err(Error::InvalidInput(format!(
                "p_aux must be >= 0, got {}",
                self.p_aux
            )));
        }
        Ok(())
    }

    /// Derived efficiency metrics:
    /// `eta = info/(info + non_info)`,
    /// `PUE = (info + non_info + aux)/(info + non_info)`,
    /// `W = 1/eta`.
    ///
    /// `W` is computed as `1/eta` rather than through the equivalent
    /// `aux/(info*(PUE-1))` form, which is 0/0 when there is no auxiliary
    /// draw.
    pub fn report(&self) -> Result<DataCenterReport> {
        self.validate()?;
        let it_power = self.p_info + self.p_non_info;
        let eta = self.p_info / it_power;
        Ok(DataCenterReport {
            eta,
            pue: (it_power + self.p_aux) / it_power,
            w_bar: 1.0 / eta,
        })
    }
}

/// Derived facility metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DataCenterReport {
    /// Fraction of on-path power that carries information, in (0, 1].
    pub eta: f64,
    /// Power usage effectiveness, >= 1.
    pub pue: f64,
    /// Facility waste factor, `1/eta`, >= 1.
    pub w_bar: f64,
}

/// Which of two compared facilities wastes less.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonVerdict {
    FirstMoreEfficient,
    SecondMoreEfficient,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DataCenterComparison {
    pub first: DataCenterReport,
    pub second: DataCenterReport,
    pub verdict: ComparisonVerdict,
}

/// Rank two facilities: the lower waste factor wins, equal values tie.
pub fn compare_datacenters(
    a: &DataCenterProfile,
    b: &DataCenterProfile,
) -> Result<DataCenterComparison> {
    let first = a.report()?;
    let second = b.report()?;
    let verdict = if first.w_bar < second.w_bar {
        ComparisonVerdict::FirstMoreEfficient
    } else if second.w_bar < first.w_bar {
        ComparisonVerdict::SecondMoreEfficient
    } else {
        ComparisonVerdict::Tie
    };
    Ok(DataCenterComparison {
        first,
        second,
        verdict,
    })
}

/// Link waste between two facilities, treating each facility's `W` as the
/// source/sink waste factor of a generalized link.
pub fn inter_datacenter_w(
    w_source: f64,
    g_channel: f64,
    g_rx: f64,
    w_sink: f64,
) -> Result<LinkWaste> {
    Ok(GeneralizedLink::new(w_source, g_channel, g_rx, w_sink)?.waste_factor())
}
