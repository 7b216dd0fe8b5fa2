//! Cascade metrics: noise factor, waste factor, and the power-bookkeeping
//! trace behind them.
//!
//! Both metrics share one algebraic shape. The noise factor is referred to
//! the cascade input, so each stage's added noise is discounted by the gain
//! in front of it:
//!
//! ```text
//! F = F1 + (F2 - 1)/G1 + (F3 - 1)/(G1*G2) + ...
//! ```
//!
//! The waste factor is referred to the cascade output, so each stage's
//! wasted power is discounted by the gain behind it:
//!
//! ```text
//! W = W_N + (W_{N-1} - 1)/G_N + (W_{N-2} - 1)/(G_N*G_{N-1}) + ...
//! ```
//!
//! `W = 1` means every consumed watt reaches the output; a passive
//! attenuator has `W = F = 1/G`; `W -> inf` means the output is a dummy
//! load. [`CascadeSpec::power_trace`] evaluates the same waste ratio by
//! explicit per-stage power bookkeeping and is the reference that the
//! closed form is tested against.

use serde::Serialize;

use crate::error::{Error, Result};

/// One cascade stage: linear power gain plus its waste and noise factors.
///
/// `gain` must be positive; `waste_factor` and `noise_factor` are linear
/// ratios that can never drop below one for a physical stage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageSpec {
    name: String,
    gain: f64,
    waste_factor: f64,
    noise_factor: f64,
}

impl StageSpec {
    pub fn new(
        name: impl Into<String>,
        gain: f64,
        waste_factor: f64,
        noise_factor: f64,
    ) -> Result<Self> {
        let name = name.into();
        if !(gain > 0.0) || !gain.is_finite() {
            return Err(Error::stage(&name, format!("gain must be > 0, got {gain}")));
        }
        if !(waste_factor >= 1.0) || !waste_factor.is_finite() {
            return Err(Error::stage(
                &name,
                format!("waste factor must be >= 1, got {waste_factor}"),
            ));
        }
        if !(noise_factor >= 1.0) || !noise_factor.is_finite() {
            return Err(Error::stage(
                &name,
                format!("noise factor must be >= 1, got {noise_factor}"),
            ));
        }
        Ok(Self {
            name,
            gain,
            waste_factor,
            noise_factor,
        })
    }

    /// A passive stage draws no supply power: whatever the signal loses is
    /// the waste, so `W = F = 1/gain`. Requires `gain` in (0, 1].
    pub fn passive(name: impl Into<String>, gain: f64) -> Result<Self> {
        let name = name.into();
        if !(gain > 0.0 && gain <= 1.0) {
            return Err(Error::stage(
                &name,
                format!("passive gain must be in (0, 1], got {gain}"),
            ));
        }
        let loss = 1.0 / gain;
        Self::new(name, gain, loss, loss)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn waste_factor(&self) -> f64 {
        self.waste_factor
    }

    pub fn noise_factor(&self) -> f64 {
        self.noise_factor
    }

    /// Same stage with a different waste factor (used by sweeps).
    pub fn with_waste_factor(&self, waste_factor: f64) -> Result<Self> {
        Self::new(self.name.clone(), self.gain, waste_factor, self.noise_factor)
    }
}

/// An ordered source-to-sink chain of stages plus the source drive power.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CascadeSpec {
    stages: Vec<StageSpec>,
    source_power_w: f64,
}

impl CascadeSpec {
    /// Build a cascade with the default 1 W source drive. Stage order is
    /// source first, sink last.
    pub fn new(stages: Vec<StageSpec>) -> Result<Self> {
        Self::with_source_power(stages, 1.0)
    }

    pub fn with_source_power(stages: Vec<StageSpec>, source_power_w: f64) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::EmptyCascade);
        }
        if !(source_power_w > 0.0) || !source_power_w.is_finite() {
            return Err(Error::InvalidInput(format!(
                "source power must be > 0 W, got {source_power_w}"
            )));
        }
        Ok(Self {
            stages,
            source_power_w,
        })
    }

    pub fn stages(&self) -> &[StageSpec] {
        &self.stages
    }

    pub fn source_power_w(&self) -> f64 {
        self.source_power_w
    }

    pub fn total_gain(&self) -> f64 {
        self.stages.iter().map(StageSpec::gain).product()
    }

    /// Cascade noise factor (input-referred):
    /// `F = F1 + sum_i (F_i - 1) / prod_{j<i} G_j`.
    pub fn noise_factor(&self) -> f64 {
        let mut f = self.stages[0].noise_factor;
        let mut gain_ahead = self.stages[0].gain;
        for stage in &self.stages[1..] {
            f += (stage.noise_factor - 1.0) / gain_ahead;
            gain_ahead *= stage.gain;
        }
        f
    }

    /// Cascade waste factor (output-referred):
    /// `W = W_N + sum_i (W_i - 1) / prod_{j>i} G_j`, evaluated source to
    /// sink as `w <- W_i + (w - 1)/G_i`.
    pub fn waste_factor(&self) -> f64 {
        let mut w = self.stages[0].waste_factor;
        for stage in &self.stages[1..] {
            w = stage.waste_factor + (w - 1.0) / stage.gain;
        }
        w
    }

    /// Per-stage power bookkeeping.
    ///
    /// With `P_0` the source drive and `P_i = G_i * P_{i-1}` the signal at
    /// each output, stage `i` alone draws `W_i * P_i - P_{i-1}`; the path
    /// total is the sum of the per-stage draws plus the source drive, and
    /// the cascade waste factor is that total over the delivered output.
    ///
    /// A stage whose draw would come out negative (waste factor below
    /// `1/gain`) is physically impossible and is rejected.
    pub fn power_trace(&self) -> Result<CascadeReport> {
        let mut signal_w = self.source_power_w;
        let mut per_stage = Vec::with_capacity(self.stages.len());
        for stage in &self.stages {
            let out_w = stage.gain * signal_w;
            let consumed = stage.waste_factor * out_w - signal_w;
            // Tolerate rounding noise around zero for W = 1/G stages.
            let scale = (stage.waste_factor * out_w).max(signal_w);
            if consumed < -1e-12 * scale {
                return Err(Error::stage(
                    &stage.name,
                    format!(
                        "stage draw would be negative ({consumed:.3e} W): waste factor {} is \
                         below 1/gain = {}",
                        stage.waste_factor,
                        1.0 / stage.gain
                    ),
                ));
            }
            per_stage.push(consumed.max(0.0));
            signal_w = out_w;
        }
        let consumed_path_total_w: f64 = per_stage.iter().sum::<f64>() + self.source_power_w;
        Ok(CascadeReport {
            waste_factor: consumed_path_total_w / signal_w,
            noise_factor: self.noise_factor(),
            total_gain: self.total_gain(),
            signal_out_w: signal_w,
            consumed_path_total_w,
            per_stage_consumed_w: per_stage,
        })
    }
}

/// Computed cascade metrics plus the bookkeeping behind them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CascadeReport {
    /// Waste factor from the bookkeeping route (consumed path power over
    /// delivered signal power).
    pub waste_factor: f64,
    pub noise_factor: f64,
    pub total_gain: f64,
    /// Signal power delivered at the cascade output, watts.
    pub signal_out_w: f64,
    /// Power consumed by the signal path, source drive included, watts.
    pub consumed_path_total_w: f64,
    /// Power each stage draws on its own, watts (source drive excluded).
    pub per_stage_consumed_w: Vec<f64>,
}

/// Source/channel/sink decomposition of a link.
///
/// The channel is passive (`g_channel <= 1`); a zero channel gain models a
/// fully lossy hop that delivers nothing to the sink.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralizedLink {
    w_source: f64,
    g_channel: f64,
    g_rx: f64,
    w_sink: f64,
}

impl GeneralizedLink {
    pub fn new(w_source: f64, g_channel: f64, g_rx: f64, w_sink: f64) -> Result<Self> {
        if !(w_source >= 1.0) || !w_source.is_finite() {
            return Err(Error::InvalidInput(format!(
                "source waste factor must be >= 1, got {w_source}"
            )));
        }
        if !(w_sink >= 1.0) || !w_sink.is_finite() {
            return Err(Error::InvalidInput(format!(
                "sink waste factor must be >= 1, got {w_sink}"
            )));
        }
        if !(g_rx > 0.0) || !g_rx.is_finite() {
            return Err(Error::InvalidInput(format!(
                "receive gain must be > 0, got {g_rx}"
            )));
        }
        if !(0.0..=1.0).contains(&g_channel) {
            return Err(Error::InvalidInput(format!(
                "channel gain must lie in [0, 1], got {g_channel}"
            )));
        }
        Ok(Self {
            w_source,
            g_channel,
            g_rx,
            w_sink,
        })
    }

    pub fn w_source(&self) -> f64 {
        self.w_source
    }

    pub fn g_channel(&self) -> f64 {
        self.g_channel
    }

    pub fn g_rx(&self) -> f64 {
        self.g_rx
    }

    pub fn w_sink(&self) -> f64 {
        self.w_sink
    }

    /// Waste factor of the whole link:
    /// `W = W_sink + (1/G_rx)(1/G_ch - 1) + (W_src - 1)/(G_rx*G_ch)`.
    ///
    /// Identical to the three-stage cascade form with the channel treated
    /// as a passive attenuator of waste factor `1/G_ch`. A dead channel
    /// yields the fully lossy marker instead of an overflowed number.
    pub fn waste_factor(&self) -> LinkWaste {
        if self.g_channel == 0.0 {
            return LinkWaste::FullyLossy;
        }
        LinkWaste::Finite(
            self.w_sink
                + (1.0 / self.g_rx) * (1.0 / self.g_channel - 1.0)
                + (self.w_source - 1.0) / (self.g_rx * self.g_channel),
        )
    }
}

/// Waste factor of a source/channel/sink link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinkWaste {
    Finite(f64),
    /// No power reaches the sink; the waste factor grows without bound.
    FullyLossy,
}

impl LinkWaste {
    /// The numeric value, `f64::INFINITY` for a fully lossy link.
    pub fn value(&self) -> f64 {
        match self {
            LinkWaste::Finite(w) => *w,
            LinkWaste::FullyLossy => f64::INFINITY,
        }
    }

    pub fn is_fully_lossy(&self) -> bool {
        matches!(self, LinkWaste::FullyLossy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stage(gain: f64, w: f64, f: f64) -> StageSpec {
        StageSpec::new("stage", gain, w, f).unwrap()
    }

    #[test]
    fn friis_two_stage() {
        // F = 2 + (10 - 1)/10 = 2.9
        let c = CascadeSpec::new(vec![stage(10.0, 1.0, 2.0), stage(3.0, 1.0, 10.0)]).unwrap();
        assert!((c.noise_factor() - 2.9).abs() < 1e-12);
    }

    #[test]
    fn friis_single_stage_and_noiseless() {
        let c = CascadeSpec::new(vec![stage(5.0, 1.0, 4.2)]).unwrap();
        assert_eq!(c.noise_factor(), 4.2);

        let c = CascadeSpec::new(vec![stage(5.0, 1.0, 1.0), stage(0.5, 2.0, 1.0)]).unwrap();
        assert_eq!(c.noise_factor(), 1.0);
    }

    #[test]
    fn waste_two_stage() {
        // W = 3 + (2 - 1)/10 = 3.1
        let c = CascadeSpec::new(vec![stage(5.0, 2.0, 1.0), stage(10.0, 3.0, 1.0)]).unwrap();
        assert!((c.waste_factor() - 3.1).abs() < 1e-12);
    }

    #[test]
    fn waste_three_stage() {
        // W = 1.5 + (2 - 1)/2 + (4 - 1)/(2*4) = 2.375
        let c = CascadeSpec::new(vec![
            stage(7.0, 4.0, 1.0),
            stage(4.0, 2.0, 1.0),
            stage(2.0, 1.5, 1.0),
        ])
        .unwrap();
        assert_eq!(c.waste_factor(), 2.375);
    }

    #[test]
    fn waste_all_ideal_is_one() {
        let c = CascadeSpec::new(vec![stage(2.0, 1.0, 1.0), stage(3.0, 1.0, 1.0)]).unwrap();
        assert_eq!(c.waste_factor(), 1.0);
    }

    #[test]
    fn trace_single_stage() {
        // 1 W source, W=2, G=5: output 5 W, stage draws 9 W, path total 10 W.
        let c = CascadeSpec::new(vec![stage(5.0, 2.0, 1.0)]).unwrap();
        let report = c.power_trace().unwrap();
        assert_eq!(report.signal_out_w, 5.0);
        assert_eq!(report.per_stage_consumed_w, vec![9.0]);
        assert_eq!(report.consumed_path_total_w, 10.0);
        assert_eq!(report.waste_factor, 2.0);
    }

    #[test]
    fn trace_lossless_wire() {
        let c = CascadeSpec::new(vec![stage(1.0, 1.0, 1.0)]).unwrap();
        let report = c.power_trace().unwrap();
        assert_eq!(report.consumed_path_total_w, 1.0);
        assert_eq!(report.waste_factor, 1.0);
    }

    #[test]
    fn trace_waste_is_drive_invariant() {
        let stages = vec![stage(5.0, 2.0, 1.0), stage(0.5, 3.0, 2.0)];
        let low = CascadeSpec::with_source_power(stages.clone(), 1.0)
            .unwrap()
            .power_trace()
            .unwrap();
        let high = CascadeSpec::with_source_power(stages, 2.0)
            .unwrap()
            .power_trace()
            .unwrap();
        // Doubling is exact in binary floating point.
        assert_eq!(low.waste_factor, high.waste_factor);
    }

    #[test]
    fn trace_agrees_with_closed_form() {
        let c = CascadeSpec::new(vec![
            stage(12.0, 3.0, 2.0),
            stage(0.25, 9.0, 4.0),
            stage(30.0, 1.5, 1.2),
        ])
        .unwrap();
        let report = c.power_trace().unwrap();
        let closed = c.waste_factor();
        assert!((report.waste_factor - closed).abs() <= 1e-12 * closed);
    }

    #[test]
    fn port_duality_asymmetry() {
        // Same per-stage numbers, opposite ports of reference:
        // F = 2 + (2-1)/10 = 2.1 but W = 2 + (2-1)/1 = 3.0.
        let c = CascadeSpec::new(vec![stage(10.0, 2.0, 2.0), stage(1.0, 2.0, 2.0)]).unwrap();
        assert!((c.noise_factor() - 2.1).abs() < 1e-12);
        assert!((c.waste_factor() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn passive_stage_has_reciprocal_metrics() {
        let s = StageSpec::passive("pad", 0.5).unwrap();
        assert_eq!(s.waste_factor(), 2.0);
        assert_eq!(s.noise_factor(), 2.0);
        assert!(StageSpec::passive("bad", 1.5).is_err());
    }

    #[test]
    fn invalid_stages_rejected() {
        assert!(StageSpec::new("s", 0.0, 1.0, 1.0).is_err());
        assert!(StageSpec::new("s", -2.0, 1.0, 1.0).is_err());
        assert!(StageSpec::new("s", 1.0, 0.9, 1.0).is_err());
        assert!(StageSpec::new("s", 1.0, 1.0, 0.5).is_err());
        assert!(StageSpec::new("s", f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn empty_cascade_rejected() {
        assert!(matches!(
            CascadeSpec::new(Vec::new()),
            Err(Error::EmptyCascade)
        ));
    }

    #[test]
    fn nonpositive_source_power_rejected() {
        let stages = vec![stage(1.0, 1.0, 1.0)];
        assert!(CascadeSpec::with_source_power(stages, 0.0).is_err());
    }

    #[test]
    fn impossible_stage_fails_trace() {
        // Gain 0.5 with W = 1 claims lossless attenuation; the trace sees a
        // negative draw and refuses.
        let c = CascadeSpec::new(vec![stage(0.5, 1.0, 1.0)]).unwrap();
        let err = c.power_trace().unwrap_err();
        assert!(matches!(err, Error::InvalidStage { .. }));
    }

    #[test]
    fn generalized_link_examples() {
        // 2 + (1/100)(1/0.001 - 1) + (4 - 1)/(100*0.001) = 41.99
        let link = GeneralizedLink::new(4.0, 0.001, 100.0, 2.0).unwrap();
        let w = link.waste_factor().value();
        assert!((w - 41.99).abs() < 1e-10);

        let perfect = GeneralizedLink::new(1.0, 1.0, 7.7, 1.0).unwrap();
        assert_eq!(perfect.waste_factor().value(), 1.0);

        // Channel-only loss: W = 1/G_channel.
        let half = GeneralizedLink::new(1.0, 0.5, 1.0, 1.0).unwrap();
        assert_eq!(half.waste_factor().value(), 2.0);
    }

    #[test]
    fn generalized_link_matches_three_stage_cascade() {
        let link = GeneralizedLink::new(4.0, 0.001, 100.0, 2.0).unwrap();
        let cascade = CascadeSpec::new(vec![
            StageSpec::new("source", 1.0, 4.0, 1.0).unwrap(),
            StageSpec::passive("channel", 0.001).unwrap(),
            StageSpec::new("sink", 100.0, 2.0, 1.0).unwrap(),
        ])
        .unwrap();
        let direct = link.waste_factor().value();
        let composed = cascade.waste_factor();
        assert!((direct - composed).abs() <= 1e-12 * composed);
    }

    #[test]
    fn dead_channel_is_fully_lossy() {
        let link = GeneralizedLink::new(2.0, 0.0, 1.0, 1.0).unwrap();
        assert!(link.waste_factor().is_fully_lossy());
        assert!(link.waste_factor().value().is_infinite());
    }

    #[test]
    fn amplifying_channel_rejected() {
        assert!(GeneralizedLink::new(1.0, 1.5, 1.0, 1.0).is_err());
    }
}
