//! Seeded multi-UE/multi-BS scenario evaluation and parameter sweeps.
//!
//! Base stations sit on a centered hexagonal lattice; user equipment is
//! placed uniformly over the coverage disk by a seeded generator. Each UE
//! position is a pure function of the scenario seed and the UE index, so
//! every sweep point with the same entity counts sees identical geometry
//! and UE populations nest as the count grows. Rows are therefore
//! reproducible bit for bit regardless of how sweep points are scheduled
//! across threads.

use std::f64::consts::{PI, TAU};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radio::{CefMode, Direction, RadioProfile};

/// Which preset bands a scenario covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandSelection {
    #[serde(rename = "28ghz")]
    Band28,
    #[serde(rename = "142ghz")]
    Band142,
    #[serde(rename = "both")]
    Both,
}

impl BandSelection {
    fn preset_names(&self) -> &'static [&'static str] {
        match self {
            BandSelection::Band28 => &["28ghz"],
            BandSelection::Band142 => &["142ghz"],
            BandSelection::Both => &["28ghz", "142ghz"],
        }
    }
}

/// Which link directions a scenario covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DirectionSelection {
    #[serde(rename = "up")]
    Up,
    #[serde(rename = "down")]
    Down,
    #[serde(rename = "both")]
    Both,
}

impl DirectionSelection {
    fn directions(&self) -> &'static [Direction] {
        match self {
            DirectionSelection::Up => &[Direction::Uplink],
            DirectionSelection::Down => &[Direction::Downlink],
            DirectionSelection::Both => &[Direction::Uplink, Direction::Downlink],
        }
    }
}

/// Line-of-sight policy for the scenario links.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LosPolicy {
    /// Every link is line of sight.
    AllLos,
    /// Links within the threshold are LOS, the rest NLOS.
    DistanceThreshold { distance_threshold_m: f64 },
}

impl Serialize for LosPolicy {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LosPolicy::AllLos => serializer.serialize_str("all-los"),
            LosPolicy::DistanceThreshold {
                distance_threshold_m,
            } => {
                use serde::ser::SerializeStruct;
                let mut s = serializer.serialize_struct("LosPolicy", 1)?;
                s.serialize_field("distance_threshold_m", distance_threshold_m)?;
                s.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for LosPolicy {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Doc {
            Name(String),
            Threshold { distance_threshold_m: f64 },
        }
        match Doc::deserialize(deserializer)? {
            Doc::Name(name) if name == "all-los" => Ok(LosPolicy::AllLos),
            Doc::Name(name) => Err(serde::de::Error::custom(format!(
                "unknown LOS policy `{name}`: expected \"all-los\" or {{\"distance_threshold_m\": N}}"
            ))),
            Doc::Threshold {
                distance_threshold_m,
            } => Ok(LosPolicy::DistanceThreshold {
                distance_threshold_m,
            }),
        }
    }
}

/// The parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    PsLossDb,
    UeCount,
    BsCount,
}

impl SweepParameter {
    pub fn label(&self) -> &'static str {
        match self {
            SweepParameter::PsLossDb => "ps_loss_db",
            SweepParameter::UeCount => "ue_count",
            SweepParameter::BsCount => "bs_count",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// Partial overrides applied on top of a band preset. dB-valued knobs are
/// taken in dB and converted where the profile stores linear ratios.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProfileOverrides {
    pub carrier_frequency_ghz: Option<f64>,
    pub bandwidth_hz: Option<f64>,
    pub bs_antenna_gain_dbi: Option<f64>,
    pub ue_antenna_gain_dbi: Option<f64>,
    pub ple_los: Option<f64>,
    pub ple_nlos: Option<f64>,
    pub bs_elements: Option<u32>,
    pub ue_elements: Option<u32>,
    pub lna_gain_db: Option<f64>,
    pub lna_noise_figure_db: Option<f64>,
    pub lna_fom_per_mw: Option<f64>,
    pub mixer_loss_db: Option<f64>,
    pub ps_loss_db: Option<f64>,
    pub lo_power_dbm: Option<f64>,
    pub pa_efficiency: Option<f64>,
    pub antenna_efficiency: Option<f64>,
    pub cooling_overhead: Option<f64>,
    pub ue_screen_power_w: Option<f64>,
    pub bs_pa_output_dbm: Option<f64>,
    pub ue_pa_output_dbm: Option<f64>,
    pub pa_gain_db: Option<f64>,
}

impl ProfileOverrides {
    pub fn apply(&self, profile: &mut RadioProfile) {
        use crate::units::db_to_linear;
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { profile.$field = v; })*
            };
        }
        set!(
            carrier_frequency_ghz,
            bandwidth_hz,
            bs_antenna_gain_dbi,
            ue_antenna_gain_dbi,
            ple_los,
            ple_nlos,
            bs_elements,
            ue_elements,
            mixer_loss_db,
            ps_loss_db,
            lo_power_dbm,
            pa_efficiency,
            antenna_efficiency,
            cooling_overhead,
            ue_screen_power_w,
            bs_pa_output_dbm,
            ue_pa_output_dbm,
            pa_gain_db
        );
        if let Some(db) = self.lna_gain_db {
            profile.lna.gain = db_to_linear(db);
        }
        if let Some(db) = self.lna_noise_figure_db {
            profile.lna.noise_factor = db_to_linear(db);
        }
        if let Some(fom) = self.lna_fom_per_mw {
            profile.lna.figure_of_merit_per_mw = fom;
        }
    }
}

fn default_cell_radius() -> f64 {
    100.0
}
fn default_ue_count() -> usize {
    100
}
fn default_bs_count() -> usize {
    3
}
fn default_band() -> BandSelection {
    BandSelection::Both
}
fn default_direction() -> DirectionSelection {
    DirectionSelection::Both
}
fn default_cef_mode() -> CefMode {
    CefMode::Total
}
fn default_los_policy() -> LosPolicy {
    LosPolicy::AllLos
}

/// A full scenario description: deployment, seed, and the sweep to run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_band")]
    pub band: BandSelection,
    #[serde(default)]
    pub overrides: ProfileOverrides,
    /// Per-station cell radius in meters; the coverage disk radius is
    /// `cell_radius_m * sqrt(bs_count)`.
    #[serde(default = "default_cell_radius")]
    pub cell_radius_m: f64,
    #[serde(default = "default_ue_count")]
    pub ue_count: usize,
    #[serde(default = "default_bs_count")]
    pub bs_count: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_direction")]
    pub direction: DirectionSelection,
    #[serde(default = "default_cef_mode")]
    pub cef_mode: CefMode,
    #[serde(default = "default_los_policy")]
    pub los_policy: LosPolicy,
    pub sweep: SweepSpec,
}

impl ScenarioConfig {
    /// Phase-shifter loss sweep, 0 to 14 dB in 1 dB steps, both bands and
    /// both directions at 100 UEs over 3 stations.
    pub fn default_ps_sweep() -> Self {
        Self {
            band: BandSelection::Both,
            overrides: ProfileOverrides::default(),
            cell_radius_m: default_cell_radius(),
            ue_count: default_ue_count(),
            bs_count: default_bs_count(),
            seed: 0,
            direction: DirectionSelection::Both,
            cef_mode: CefMode::Total,
            los_policy: LosPolicy::AllLos,
            sweep: SweepSpec {
                parameter: SweepParameter::PsLossDb,
                values: (0..=14).map(f64::from).collect(),
            },
        }
    }

    /// UE densification sweep over {10, 20, 40, 80, 160} terminals.
    pub fn default_ue_sweep() -> Self {
        Self {
            sweep: SweepSpec {
                parameter: SweepParameter::UeCount,
                values: vec![10.0, 20.0, 40.0, 80.0, 160.0],
            },
            ..Self::default_ps_sweep()
        }
    }

    /// BS densification sweep over {1, 3, 7, 12, 19} stations at fixed
    /// total coverage area.
    pub fn default_bs_sweep() -> Self {
        Self {
            sweep: SweepSpec {
                parameter: SweepParameter::BsCount,
                values: vec![1.0, 3.0, 7.0, 12.0, 19.0],
            },
            ..Self::default_ps_sweep()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cell_radius_m > 0.0) || !self.cell_radius_m.is_finite() {
            return Err(Error::InvalidInput(format!(
                "cell_radius_m must be > 0, got {}",
                self.cell_radius_m
            )));
        }
        if self.ue_count == 0 {
            return Err(Error::InvalidInput("ue_count must be >= 1".into()));
        }
        if self.bs_count == 0 {
            return Err(Error::InvalidInput("bs_count must be >= 1".into()));
        }
        if let LosPolicy::DistanceThreshold {
            distance_threshold_m,
        } = self.los_policy
        {
            if !(distance_threshold_m > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "LOS distance threshold must be > 0, got {distance_threshold_m}"
                )));
            }
        }
        if self.sweep.values.is_empty() {
            return Err(Error::InvalidInput(
                "sweep.values must not be empty".into(),
            ));
        }
        if self.sweep.values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidInput(
                "sweep.values must be strictly increasing".into(),
            ));
        }
        if matches!(
            self.sweep.parameter,
            SweepParameter::UeCount | SweepParameter::BsCount
        ) {
            for &v in &self.sweep.values {
                if v.fract() != 0.0 || v < 1.0 {
                    return Err(Error::InvalidInput(format!(
                        "sweep.values for {} must be integers >= 1, got {v}",
                        self.sweep.parameter.label()
                    )));
                }
            }
        } else {
            for &v in &self.sweep.values {
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "sweep.values for ps_loss_db must be >= 0 dB, got {v}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Resolved band profiles with scenario overrides applied.
    pub fn profiles(&self) -> Result<Vec<RadioProfile>> {
        self.band
            .preset_names()
            .iter()
            .map(|name| {
                let mut profile = RadioProfile::preset(name)?;
                self.overrides.apply(&mut profile);
                profile.validate()?;
                Ok(profile)
            })
            .collect()
    }

    fn region_radius_m(&self) -> f64 {
        self.cell_radius_m * (self.bs_count as f64).sqrt()
    }
}

/// Deterministic entity positions for one scenario snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct Placements {
    pub bs_positions: Vec<[f64; 2]>,
    pub ue_positions: Vec<[f64; 2]>,
    pub region_radius_m: f64,
}

const UE_STREAM: u64 = 0x5545;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index)
}

/// Uniform in [0, 1) from the top 53 bits; implementation-stable.
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl Placements {
    pub(crate) fn generate(
        seed: u64,
        ue_count: usize,
        bs_count: usize,
        region_radius_m: f64,
    ) -> Self {
        let ue_positions = (0..ue_count)
            .map(|i| {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(derive_seed(seed, UE_STREAM, i as u64));
                // Uniform over the disk: radius from sqrt of a uniform draw.
                let radius = region_radius_m * unit_f64(&mut rng).sqrt();
                let angle = TAU * unit_f64(&mut rng);
                [radius * angle.cos(), radius * angle.sin()]
            })
            .collect();
        Self {
            bs_positions: hex_lattice(bs_count, region_radius_m),
            ue_positions,
            region_radius_m,
        }
    }
}

/// Deterministic entity placement: stations on a centered hexagonal
/// lattice scaled so `bs_count` cells tile the coverage disk, terminals
/// uniform over the disk via the seeded generator.
pub fn place_entities(config: &ScenarioConfig) -> Result<Placements> {
    config.validate()?;
    Ok(Placements::generate(
        config.seed,
        config.ue_count,
        config.bs_count,
        config.region_radius_m(),
    ))
}

/// First `count` points of a hexagonal lattice by distance from the
/// origin, spaced so each point covers an equal share of the disk area.
fn hex_lattice(count: usize, region_radius_m: f64) -> Vec<[f64; 2]> {
    if count == 1 {
        return vec![[0.0, 0.0]];
    }
    // Hexagonal packing: area per lattice point is (sqrt(3)/2) s^2.
    let spacing = region_radius_m * (2.0 * PI / (3f64.sqrt() * count as f64)).sqrt();
    let extent = (count as f64).sqrt().ceil() as i64 + 2;
    let mut points = Vec::new();
    for i in -extent..=extent {
        for j in -extent..=extent {
            let x = spacing * (i as f64 + 0.5 * j as f64);
            let y = spacing * (3f64.sqrt() / 2.0) * j as f64;
            points.push([x, y]);
        }
    }
    points.sort_by(|a, b| {
        let ka = (a[0] * a[0] + a[1] * a[1], a[1].atan2(a[0]));
        let kb = (b[0] * b[0] + b[1] * b[1], b[1].atan2(b[0]));
        ka.partial_cmp(&kb).expect("lattice keys are finite")
    });
    points.truncate(count);
    points
}

/// Aggregate metrics of one evaluated network snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NetworkReport {
    pub ue_count: usize,
    pub bs_count: usize,
    pub aggregate_rate_bps: f64,
    /// Sum over links of `w_link * p_signal_out`.
    pub aggregate_on_path_w: f64,
    /// Denominator of the network CEF under the configured mode.
    pub aggregate_consumed_w: f64,
    /// Network-level waste factor: on-path draw over delivered signal.
    pub network_w: f64,
    pub network_cef: f64,
}

/// Evaluate one (band, direction) snapshot over fixed placements.
///
/// Every terminal associates with its nearest station and stations share
/// time equally among their terminals, so each link contributes
/// `rate / attached_count` to the aggregate rate. On-path draw is summed
/// per link; in total mode each terminal's fixed loads count per link and
/// each station's fixed loads count once, with the cooling overhead
/// applied to everything drawn at the station. UE-BS separations are
/// floored at the 1 m path-loss reference.
pub fn evaluate_network(
    profile: &RadioProfile,
    direction: Direction,
    cef_mode: CefMode,
    los_policy: LosPolicy,
    placements: &Placements,
) -> Result<NetworkReport> {
    profile.validate()?;
    if placements.bs_positions.is_empty() {
        return Err(Error::InvalidInput(
            "placements must contain at least one base station".into(),
        ));
    }

    // Nearest-station association (lowest index wins ties).
    let associations: Vec<(usize, f64)> = placements
        .ue_positions
        .iter()
        .map(|ue| {
            placements
                .bs_positions
                .iter()
                .enumerate()
                .map(|(b, bs)| {
                    let dx = ue[0] - bs[0];
                    let dy = ue[1] - bs[1];
                    (b, (dx * dx + dy * dy).sqrt())
                })
                .min_by(|(_, da), (_, db)| da.partial_cmp(db).expect("finite distances"))
                .expect("at least one station")
        })
        .collect();

    let mut attached = vec![0usize; placements.bs_positions.len()];
    for (b, _) in &associations {
        attached[*b] += 1;
    }

    let mut aggregate_rate_bps = 0.0;
    let mut aggregate_on_path_w = 0.0;
    let mut aggregate_signal_out_w = 0.0;
    let mut ue_non_path_w = 0.0;
    let mut bs_fixed_non_path_w = 0.0;
    let mut bs_on_path_w = vec![0.0; placements.bs_positions.len()];

    for (b, distance) in &associations {
        let distance_m = distance.max(1.0);
        let los = match los_policy {
            LosPolicy::AllLos => true,
            LosPolicy::DistanceThreshold {
                distance_threshold_m,
            } => distance_m <= distance_threshold_m,
        };
        let parts = profile.evaluate_link_parts(distance_m, los, direction, cef_mode)?;
        aggregate_rate_bps += parts.report.rate_bps / attached[*b] as f64;
        aggregate_on_path_w += parts.on_path_w;
        aggregate_signal_out_w += parts.report.p_signal_out_w;
        ue_non_path_w += parts.ue_non_path_w;
        bs_fixed_non_path_w = parts.bs_fixed_non_path_w;
        bs_on_path_w[*b] += parts.bs_on_path_w;
    }
    if placements.ue_positions.is_empty() {
        // No links evaluated: recover the per-station fixed load directly.
        let parts = profile.evaluate_link_parts(1.0, true, direction, cef_mode)?;
        bs_fixed_non_path_w = parts.bs_fixed_non_path_w;
    }

    let cooling = profile.cooling_overhead;
    let non_path_total_w: f64 = ue_non_path_w
        + bs_on_path_w
            .iter()
            .map(|&on_path| bs_fixed_non_path_w + cooling * (bs_fixed_non_path_w + on_path))
            .sum::<f64>();

    let aggregate_consumed_w = match cef_mode {
        CefMode::PathOnly => aggregate_on_path_w,
        CefMode::Total => aggregate_on_path_w + non_path_total_w,
    };
    let network_w = if aggregate_signal_out_w > 0.0 {
        aggregate_on_path_w / aggregate_signal_out_w
    } else {
        f64::INFINITY
    };
    let network_cef = if aggregate_consumed_w > 0.0 {
        aggregate_rate_bps / aggregate_consumed_w
    } else {
        0.0
    };

    Ok(NetworkReport {
        ue_count: placements.ue_positions.len(),
        bs_count: placements.bs_positions.len(),
        aggregate_rate_bps,
        aggregate_on_path_w,
        aggregate_consumed_w,
        network_w,
        network_cef,
    })
}

/// One sweep sample, already shaped like a CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    /// Swept parameter name.
    pub param: &'static str,
    /// Swept parameter value at this point.
    pub value: f64,
    pub band_ghz: f64,
    pub direction: Direction,
    pub rate_bps: f64,
    pub w_total: f64,
    pub p_consumed_w: f64,
    pub cef_bpj: f64,
}

/// Run the configured sweep: one row per point per band per direction, in
/// that nesting order. Points are independent and evaluated in parallel;
/// the output order and values do not depend on scheduling.
pub fn run_sweep(config: &ScenarioConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let profiles = config.profiles()?;
    let directions = config.direction.directions();
    // The base configuration fixes the coverage area, so a BS-count sweep
    // densifies at constant area (per-cell radius shrinks as 1/sqrt(k)).
    let region_radius_m = config.region_radius_m();

    let rows: Result<Vec<Vec<SweepRow>>> = config
        .sweep
        .values
        .par_iter()
        .enumerate()
        .map(|(index, &value)| {
            point_rows(config, &profiles, directions, region_radius_m, value).map_err(|e| {
                annotate_point(index, value, e)
            })
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

fn annotate_point(index: usize, value: f64, e: Error) -> Error {
    let note = format!("sweep point {index} (value {value}): {e}");
    match e {
        Error::Domain(_) => Error::Domain(note),
        _ => Error::InvalidInput(note),
    }
}

fn point_rows(
    config: &ScenarioConfig,
    profiles: &[RadioProfile],
    directions: &[Direction],
    region_radius_m: f64,
    value: f64,
) -> Result<Vec<SweepRow>> {
    let (ue_count, bs_count) = match config.sweep.parameter {
        SweepParameter::UeCount => (value as usize, config.bs_count),
        SweepParameter::BsCount => (config.ue_count, value as usize),
        SweepParameter::PsLossDb => (config.ue_count, config.bs_count),
    };
    let placements = Placements::generate(config.seed, ue_count, bs_count, region_radius_m);

    let mut rows = Vec::with_capacity(profiles.len() * directions.len());
    for profile in profiles {
        let mut profile = profile.clone();
        if config.sweep.parameter == SweepParameter::PsLossDb {
            profile.ps_loss_db = value;
        }
        for &direction in directions {
            let report = evaluate_network(
                &profile,
                direction,
                config.cef_mode,
                config.los_policy,
                &placements,
            )?;
            rows.push(SweepRow {
                param: config.sweep.parameter.label(),
                value,
                band_ghz: profile.carrier_frequency_ghz,
                direction,
                rate_bps: report.aggregate_rate_bps,
                w_total: report.network_w,
                p_consumed_w: report.aggregate_consumed_w,
                cef_bpj: report.network_cef,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_ue_config() -> ScenarioConfig {
        ScenarioConfig {
            band: BandSelection::Band28,
            ue_count: 1,
            bs_count: 1,
            direction: DirectionSelection::Down,
            sweep: SweepSpec {
                parameter: SweepParameter::PsLossDb,
                values: vec![10.0],
            },
            ..ScenarioConfig::default_ps_sweep()
        }
    }

    #[test]
    fn single_bs_sits_at_origin() {
        let placements = place_entities(&one_ue_config()).unwrap();
        assert_eq!(placements.bs_positions, vec![[0.0, 0.0]]);
    }

    #[test]
    fn placement_is_deterministic() {
        let config = ScenarioConfig::default_ps_sweep();
        let a = place_entities(&config).unwrap();
        let b = place_entities(&config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ue_populations_nest_across_counts() {
        let small = Placements::generate(9, 10, 1, 100.0);
        let large = Placements::generate(9, 20, 1, 100.0);
        assert_eq!(&large.ue_positions[..10], &small.ue_positions[..]);
    }

    #[test]
    fn uniform_disk_mean_radius() {
        // E[r] = 2R/3 for a uniform disk.
        let placements = Placements::generate(1, 10_000, 1, 100.0);
        let mean: f64 = placements
            .ue_positions
            .iter()
            .map(|p| (p[0] * p[0] + p[1] * p[1]).sqrt())
            .sum::<f64>()
            / 10_000.0;
        let expected = 2.0 / 3.0 * 100.0;
        assert!(
            (mean - expected).abs() < 0.02 * expected,
            "mean radius {mean} vs expected {expected}"
        );
    }

    #[test]
    fn lattice_is_centered_and_spread() {
        let points = hex_lattice(7, 100.0);
        assert_eq!(points.len(), 7);
        assert_eq!(points[0], [0.0, 0.0]);
        // The first ring lands at equal distance from the origin.
        let r1 = (points[1][0].powi(2) + points[1][1].powi(2)).sqrt();
        for p in &points[1..] {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            assert!((r - r1).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_network_equals_single_link() {
        let config = one_ue_config();
        let profile = &config.profiles().unwrap()[0];
        let placements = Placements {
            bs_positions: vec![[0.0, 0.0]],
            ue_positions: vec![[60.0, 0.0]],
            region_radius_m: 100.0,
        };
        let network = evaluate_network(
            profile,
            Direction::Downlink,
            CefMode::Total,
            LosPolicy::AllLos,
            &placements,
        )
        .unwrap();
        let link = profile
            .evaluate_link(60.0, true, Direction::Downlink, CefMode::Total)
            .unwrap();
        assert!((network.aggregate_rate_bps - link.rate_bps).abs() <= 1e-12 * link.rate_bps);
        assert!(
            (network.aggregate_consumed_w - link.p_consumed_total_w).abs()
                <= 1e-12 * link.p_consumed_total_w
        );
        assert!(
            (network.network_cef - link.cef_bits_per_joule).abs()
                <= 1e-12 * link.cef_bits_per_joule
        );
    }

    #[test]
    fn duplicated_ues_share_time() {
        let config = one_ue_config();
        let profile = &config.profiles().unwrap()[0];
        let single = Placements {
            bs_positions: vec![[0.0, 0.0]],
            ue_positions: vec![[40.0, 0.0]],
            region_radius_m: 100.0,
        };
        let doubled = Placements {
            ue_positions: vec![[40.0, 0.0], [40.0, 0.0]],
            ..single.clone()
        };
        let one = evaluate_network(
            profile,
            Direction::Uplink,
            CefMode::PathOnly,
            LosPolicy::AllLos,
            &single,
        )
        .unwrap();
        let two = evaluate_network(
            profile,
            Direction::Uplink,
            CefMode::PathOnly,
            LosPolicy::AllLos,
            &doubled,
        )
        .unwrap();
        // The scheduler halves each share: total delivered rate is conserved.
        assert_eq!(one.aggregate_rate_bps, two.aggregate_rate_bps);
        // Both transmitters burn power.
        assert!((two.aggregate_consumed_w - 2.0 * one.aggregate_consumed_w).abs() < 1e-12);
    }

    #[test]
    fn dead_link_still_burns_power() {
        let config = one_ue_config();
        let profile = &config.profiles().unwrap()[0];
        let placements = Placements {
            bs_positions: vec![[0.0, 0.0]],
            ue_positions: vec![[1e170, 0.0]],
            region_radius_m: 100.0,
        };
        let network = evaluate_network(
            profile,
            Direction::Downlink,
            CefMode::Total,
            LosPolicy::AllLos,
            &placements,
        )
        .unwrap();
        assert_eq!(network.aggregate_rate_bps, 0.0);
        assert!(network.aggregate_consumed_w > 0.0);
        assert_eq!(network.network_cef, 0.0);
    }

    #[test]
    fn single_value_sweep_matches_network_eval() {
        let config = one_ue_config();
        let rows = run_sweep(&config).unwrap();
        assert_eq!(rows.len(), 1);
        let placements = place_entities(&config).unwrap();
        let mut profile = config.profiles().unwrap()[0].clone();
        profile.ps_loss_db = 10.0;
        let report = evaluate_network(
            &profile,
            Direction::Downlink,
            CefMode::Total,
            LosPolicy::AllLos,
            &placements,
        )
        .unwrap();
        assert_eq!(rows[0].cef_bpj, report.network_cef);
        assert_eq!(rows[0].rate_bps, report.aggregate_rate_bps);
    }

    #[test]
    fn sweep_validation_rejects_bad_values() {
        let mut config = ScenarioConfig::default_ue_sweep();
        config.sweep.values = vec![10.0, 10.5];
        assert!(run_sweep(&config).is_err());

        config.sweep.values = vec![20.0, 10.0];
        assert!(run_sweep(&config).is_err());

        config.sweep.values = Vec::new();
        assert!(run_sweep(&config).is_err());
    }

    #[test]
    fn sweep_rows_are_ordered_and_complete() {
        let mut config = ScenarioConfig::default_ps_sweep();
        config.ue_count = 5;
        config.sweep.values = vec![0.0, 7.0, 14.0];
        let rows = run_sweep(&config).unwrap();
        // 3 points x 2 bands x 2 directions.
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[0].value, 0.0);
        assert_eq!(rows[11].value, 14.0);
        let bands: Vec<f64> = rows.iter().map(|r| r.band_ghz).collect();
        assert_eq!(&bands[0..4], &[28.0, 28.0, 142.0, 142.0]);
    }

    #[test]
    fn directional_orderings_survive_seed_changes() {
        for seed in [1, 77] {
            let mut config = ScenarioConfig::default_ps_sweep();
            config.seed = seed;
            config.ue_count = 20;
            config.sweep.values = vec![0.0, 7.0, 14.0];
            let rows = run_sweep(&config).unwrap();
            for band in [28.0, 142.0] {
                for direction in [Direction::Uplink, Direction::Downlink] {
                    let cefs: Vec<f64> = rows
                        .iter()
                        .filter(|r| r.band_ghz == band && r.direction == direction)
                        .map(|r| r.cef_bpj)
                        .collect();
                    assert!(cefs.windows(2).all(|w| w[1] < w[0]));
                }
            }
            for row in &rows {
                if row.band_ghz == 28.0 {
                    let twin = rows
                        .iter()
                        .find(|r| {
                            r.band_ghz == 142.0
                                && r.value == row.value
                                && r.direction == row.direction
                        })
                        .unwrap();
                    assert!(twin.cef_bpj > row.cef_bpj);
                }
            }
        }
    }
}
