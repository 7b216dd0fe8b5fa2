//! Single-link transceiver model for the 28 GHz and 142 GHz bands.
//!
//! The transmit signal path is PA -> phase shifter -> antenna; the receive
//! path counted toward waste is antenna -> phase shifter -> mixer. The LNA
//! sits off the waste path: its DC draw is constant regardless of input
//! power, so it is booked as a non-path load while still shaping the
//! receiver noise figure. Directive antenna gains steer rather than
//! consume power, so they enter the channel-gain term of the link, while
//! radiation efficiency stays in the cascade as a dissipative stage.

use serde::{Deserialize, Serialize};

use crate::cascade::{CascadeSpec, GeneralizedLink, LinkWaste, StageSpec};
use crate::device::{antenna_stage, lna_dc_power, pa_stage, passive_stage, LnaSpec};
use crate::error::{Error, Result};
use crate::units::{db_to_linear, dbm_to_watts, linear_to_db};

/// Thermal noise floor at 290 K, dBm per Hz.
pub const THERMAL_NOISE_FLOOR_DBM_PER_HZ: f64 = -174.0;

/// Link direction. The user equipment transmits on the uplink; the base
/// station transmits on the downlink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "up")]
    Uplink,
    #[serde(rename = "down")]
    Downlink,
}

impl Direction {
    pub fn label(&self) -> &'static str {
        match self {
            Direction::Uplink => "up",
            Direction::Downlink => "down",
        }
    }
}

/// What counts in the consumption-efficiency denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CefMode {
    /// On-path power only: `rate / (W * P_signal_out)`.
    #[serde(rename = "path")]
    PathOnly,
    /// On-path plus non-path power (LNA DC, oscillators, screen, cooling).
    #[serde(rename = "total")]
    Total,
}

/// Per-band transceiver and deployment parameters.
///
/// The two built-in presets ([`RadioProfile::preset_28ghz`] and
/// [`RadioProfile::preset_142ghz`]) carry the standard parameter sets for
/// the mmWave and sub-THz bands; every field can be overridden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioProfile {
    pub carrier_frequency_ghz: f64,
    pub bandwidth_hz: f64,
    pub bs_antenna_gain_dbi: f64,
    pub ue_antenna_gain_dbi: f64,
    /// Path loss exponent under line of sight.
    pub ple_los: f64,
    /// Path loss exponent without line of sight.
    pub ple_nlos: f64,
    /// Array sizes, kept as deployment metadata; the beamforming network is
    /// collapsed into the single equivalent phase-shifter stage.
    pub bs_elements: u32,
    pub ue_elements: u32,
    pub lna: LnaSpec,
    pub mixer_loss_db: f64,
    pub ps_loss_db: f64,
    pub lo_power_dbm: f64,
    pub pa_efficiency: f64,
    pub antenna_efficiency: f64,
    /// Extra fraction of base-station draw spent on cooling.
    pub cooling_overhead: f64,
    pub ue_screen_power_w: f64,
    pub bs_pa_output_dbm: f64,
    pub ue_pa_output_dbm: f64,
    /// PA power gain. Anchoring outputs at the PA output makes every
    /// reported quantity independent of this value; it only fixes the
    /// absolute drive powers in a full-cascade trace.
    pub pa_gain_db: f64,
}

impl RadioProfile {
    /// mmWave preset: 28 GHz, 400 MHz of bandwidth.
    pub fn preset_28ghz() -> Self {
        Self {
            carrier_frequency_ghz: 28.0,
            bandwidth_hz: 400.0e6,
            bs_antenna_gain_dbi: 45.2,
            ue_antenna_gain_dbi: 15.2,
            ple_los: 2.0,
            ple_nlos: 3.2,
            bs_elements: 1024,
            ue_elements: 8,
            lna: LnaSpec {
                gain: db_to_linear(20.0),
                noise_factor: db_to_linear(3.0),
                figure_of_merit_per_mw: 24.83,
            },
            mixer_loss_db: 6.0,
            ps_loss_db: 10.0,
            lo_power_dbm: 10.0,
            pa_efficiency: 0.28,
            antenna_efficiency: 0.6,
            cooling_overhead: 0.2,
            ue_screen_power_w: 0.5,
            bs_pa_output_dbm: 30.0,
            ue_pa_output_dbm: 23.0,
            pa_gain_db: 30.0,
        }
    }

    /// Sub-THz preset: 142 GHz, 4 GHz of bandwidth.
    pub fn preset_142ghz() -> Self {
        Self {
            carrier_frequency_ghz: 142.0,
            bandwidth_hz: 4000.0e6,
            bs_antenna_gain_dbi: 59.1,
            ue_antenna_gain_dbi: 29.1,
            bs_elements: 4096,
            ue_elements: 64,
            lna: LnaSpec {
                gain: db_to_linear(20.0),
                noise_factor: db_to_linear(7.0),
                figure_of_merit_per_mw: 8.33,
            },
            lo_power_dbm: 19.9,
            pa_efficiency: 0.208,
            ..Self::preset_28ghz()
        }
    }

    /// Look up a preset by band name (`"28ghz"` or `"142ghz"`).
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "28ghz" => Ok(Self::preset_28ghz()),
            "142ghz" => Ok(Self::preset_142ghz()),
            other => Err(Error::InvalidInput(format!(
                "unknown band preset `{other}`: expected \"28ghz\" or \"142ghz\""
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("carrier_frequency_ghz", self.carrier_frequency_ghz),
            ("bandwidth_hz", self.bandwidth_hz),
        ];
        for (field, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{field} must be > 0, got {value}"
                )));
            }
        }
        let nonnegative = [
            ("ple_los", self.ple_los),
            ("ple_nlos", self.ple_nlos),
            ("mixer_loss_db", self.mixer_loss_db),
            ("ps_loss_db", self.ps_loss_db),
            ("cooling_overhead", self.cooling_overhead),
            ("ue_screen_power_w", self.ue_screen_power_w),
        ];
        for (field, value) in nonnegative {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{field} must be >= 0, got {value}"
                )));
            }
        }
        for (field, value) in [
            ("pa_efficiency", self.pa_efficiency),
            ("antenna_efficiency", self.antenna_efficiency),
        ] {
            if !(value > 0.0 && value <= 1.0) {
                return Err(Error::InvalidInput(format!(
                    "{field} must be in (0, 1], got {value}"
                )));
            }
        }
        self.lna.validate()
    }

    /// Close-in path loss with a 1 m free-space reference:
    /// `PL = 32.4 + 20*log10(f_GHz) + 10*n*log10(d)`.
    pub fn path_loss_db(&self, distance_m: f64, los: bool) -> Result<f64> {
        if !(distance_m >= 1.0) {
            return Err(Error::InvalidInput(format!(
                "distance {distance_m} m is below the 1 m reference"
            )));
        }
        let exponent = if los { self.ple_los } else { self.ple_nlos };
        Ok(32.4 + 20.0 * self.carrier_frequency_ghz.log10() + 10.0 * exponent * distance_m.log10())
    }

    /// Transmit signal path, source first: PA, phase shifter, antenna.
    pub fn tx_chain(&self) -> Result<CascadeSpec> {
        CascadeSpec::new(vec![
            pa_stage("pa", self.pa_efficiency, db_to_linear(self.pa_gain_db))?,
            passive_stage("phase shifter", self.ps_loss_db)?,
            antenna_stage("antenna", self.antenna_efficiency)?,
        ])
    }

    /// Receive signal path counted toward waste: antenna, phase shifter,
    /// mixer. The LNA is off-path; its DC draw is booked separately.
    pub fn rx_chain(&self) -> Result<CascadeSpec> {
        CascadeSpec::new(vec![
            antenna_stage("antenna", self.antenna_efficiency)?,
            passive_stage("phase shifter", self.ps_loss_db)?,
            passive_stage("mixer", self.mixer_loss_db)?,
        ])
    }

    /// Receiver noise figure in dB over antenna efficiency loss, LNA,
    /// phase shifter, and mixer.
    pub fn noise_figure_db(&self) -> Result<f64> {
        self.lna.validate()?;
        let chain = CascadeSpec::new(vec![
            antenna_stage("antenna", self.antenna_efficiency)?,
            StageSpec::new("lna", self.lna.gain, 1.0, self.lna.noise_factor)?,
            passive_stage("phase shifter", self.ps_loss_db)?,
            passive_stage("mixer", self.mixer_loss_db)?,
        ])?;
        linear_to_db(chain.noise_factor())
    }

    /// Evaluate one link at the given geometry.
    ///
    /// Received power is referenced at the receive antenna port: PA output
    /// minus the transmit-side chain losses, plus both directive gains,
    /// minus path loss. The folded channel gain is capped at unity so a
    /// near-field geometry can never appear to create power.
    pub fn evaluate_link(
        &self,
        distance_m: f64,
        los: bool,
        direction: Direction,
        cef_mode: CefMode,
    ) -> Result<LinkReport> {
        Ok(self
            .evaluate_link_parts(distance_m, los, direction, cef_mode)?
            .report)
    }

    pub(crate) fn evaluate_link_parts(
        &self,
        distance_m: f64,
        los: bool,
        direction: Direction,
        cef_mode: CefMode,
    ) -> Result<LinkParts> {
        self.validate()?;
        let path_loss_db = self.path_loss_db(distance_m, los)?;
        let (pa_output_dbm, tx_gain_dbi, rx_gain_dbi) = match direction {
            Direction::Downlink => (
                self.bs_pa_output_dbm,
                self.bs_antenna_gain_dbi,
                self.ue_antenna_gain_dbi,
            ),
            Direction::Uplink => (
                self.ue_pa_output_dbm,
                self.ue_antenna_gain_dbi,
                self.bs_antenna_gain_dbi,
            ),
        };

        let tx = self.tx_chain()?;
        let rx = self.rx_chain()?;
        let w_tx = tx.waste_factor();
        let w_rx = rx.waste_factor();
        // Gain between the PA output and the radiated signal.
        let g_tx_after_pa: f64 = tx.stages()[1..].iter().map(StageSpec::gain).product();
        let g_rx_chain = rx.total_gain();

        let p_radiated_w = dbm_to_watts(pa_output_dbm) * g_tx_after_pa;
        let g_channel = db_to_linear(tx_gain_dbi + rx_gain_dbi - path_loss_db).min(1.0);
        let w_link = GeneralizedLink::new(w_tx, g_channel, g_rx_chain, w_rx)?.waste_factor();

        let noise_power_w = dbm_to_watts(
            THERMAL_NOISE_FLOOR_DBM_PER_HZ
                + 10.0 * self.bandwidth_hz.log10()
                + self.noise_figure_db()?,
        );

        let tx_side_on_path_w = w_tx * p_radiated_w;
        let (rx_signal_power_w, p_signal_out_w, snr, rate_bps, on_path_w, rx_side_on_path_w) =
            match w_link {
                LinkWaste::Finite(w) => {
                    let rx_signal_power_w = p_radiated_w * g_channel;
                    let p_signal_out_w = rx_signal_power_w * g_rx_chain;
                    let snr = rx_signal_power_w / noise_power_w;
                    let rate_bps = shannon_rate(self.bandwidth_hz, snr);
                    let on_path_w = w * p_signal_out_w;
                    let rx_side = (w_rx * p_signal_out_w - rx_signal_power_w).max(0.0);
                    (rx_signal_power_w, p_signal_out_w, snr, rate_bps, on_path_w, rx_side)
                }
                // A dead channel delivers nothing, but the transmitter
                // still burns its full on-path power.
                LinkWaste::FullyLossy => (0.0, 0.0, 0.0, 0.0, tx_side_on_path_w, 0.0),
            };

        let lna_dc_w = lna_dc_power(&self.lna)?;
        let lo_w = dbm_to_watts(self.lo_power_dbm);
        let screen_w = self.ue_screen_power_w;
        let (ue_non_path_w, bs_fixed_non_path_w, bs_on_path_w) = match direction {
            Direction::Downlink => (lo_w + lna_dc_w + screen_w, lo_w, tx_side_on_path_w),
            Direction::Uplink => (lo_w + screen_w, lo_w + lna_dc_w, rx_side_on_path_w),
        };
        let cooling_w = self.cooling_overhead * (bs_fixed_non_path_w + bs_on_path_w);
        let p_non_path_w = ue_non_path_w + bs_fixed_non_path_w + cooling_w;
        let p_consumed_total_w = on_path_w + p_non_path_w;

        let cef_denominator_w = match cef_mode {
            CefMode::PathOnly => on_path_w,
            CefMode::Total => p_consumed_total_w,
        };
        let cef_bits_per_joule = if rate_bps > 0.0 && cef_denominator_w > 0.0 {
            rate_bps / cef_denominator_w
        } else {
            0.0
        };

        Ok(LinkParts {
            report: LinkReport {
                path_loss_db,
                rx_signal_power_w,
                noise_power_w,
                snr,
                rate_bps,
                w_link: w_link.value(),
                p_signal_out_w,
                p_non_path_w,
                p_consumed_total_w,
                cef_bits_per_joule,
            },
            on_path_w,
            ue_non_path_w,
            bs_fixed_non_path_w,
            bs_on_path_w,
        })
    }
}

/// Shannon capacity `B * log2(1 + snr)` in bits/s; `snr` is linear and
/// must be non-negative.
pub fn shannon_rate(bandwidth_hz: f64, snr: f64) -> f64 {
    debug_assert!(snr >= 0.0);
    bandwidth_hz * snr.ln_1p() / std::f64::consts::LN_2
}

/// Physical quantities of one evaluated link.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkReport {
    pub path_loss_db: f64,
    /// Signal power at the receive antenna reference port, watts.
    pub rx_signal_power_w: f64,
    pub noise_power_w: f64,
    /// Linear signal-to-noise ratio at the receive antenna port.
    pub snr: f64,
    pub rate_bps: f64,
    /// Link waste factor; infinite when the channel delivers nothing.
    pub w_link: f64,
    /// Useful signal power at the receive chain output, watts.
    pub p_signal_out_w: f64,
    pub p_non_path_w: f64,
    /// `w_link * p_signal_out_w + p_non_path_w`.
    pub p_consumed_total_w: f64,
    pub cef_bits_per_joule: f64,
}

/// Link report plus the side-resolved power splits the network aggregation
/// needs (base-station fixed loads are deduplicated per station there).
pub(crate) struct LinkParts {
    pub report: LinkReport,
    /// `w_link * p_signal_out_w`: on-path draw including the source drive.
    pub on_path_w: f64,
    pub ue_non_path_w: f64,
    pub bs_fixed_non_path_w: f64,
    pub bs_on_path_w: f64,
}
