//! JSON sweep configuration.
//!
//! A config is a single JSON object. Unknown keys are rejected at every
//! level, and every semantic check reports the offending field by its JSON
//! path (for example `radio.kappa` or `axis_values[3]`).
//!
//! ```json
//! {
//!   "geometry": { "d_x": 400, "d_y": 10, "h_tx": 10, "h_rx": 1, "h_node": 10 },
//!   "radio": { "fc_ghz": 3.5, "bandwidth_hz": 1e8, "noise_figure_db": 8,
//!              "p_t_dbm": 20, "p_r_dbm": 20, "kappa": 1 },
//!   "sweep_axis": "elements",
//!   "axis_values": [100, 1000, 10000],
//!   "architectures": ["irs", "rir_df", "rir_af"],
//!   "beta_values_db": [15, 20, "max"],
//!   "mode": "upper_bound"
//! }
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use rir_core::geometry::ScenarioGeometry;
use rir_core::link_budget::RadioConfig;
use rir_core::rates::{IrsConvention, Mode};
use serde::{Deserialize, Serialize};

use crate::SimError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    pub d_x: f64,
    pub d_y: f64,
    pub h_tx: f64,
    pub h_rx: f64,
    pub h_node: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        let g = ScenarioGeometry::default();
        Self {
            d_x: g.d_x,
            d_y: g.d_y,
            h_tx: g.h_tx,
            h_rx: g.h_rx,
            h_node: g.h_node,
        }
    }
}

impl GeometryConfig {
    pub fn to_geometry(&self) -> ScenarioGeometry {
        ScenarioGeometry {
            d_x: self.d_x,
            d_y: self.d_y,
            h_tx: self.h_tx,
            h_rx: self.h_rx,
            h_node: self.h_node,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadioSection {
    pub fc_ghz: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub p_t_dbm: f64,
    pub p_r_dbm: f64,
    pub kappa: f64,
    /// Relay horn gain, linear.
    pub horn_gain: f64,
    /// Relay antenna height above the surface center, in wavelengths.
    pub relay_height_wavelengths: f64,
}

impl Default for RadioSection {
    fn default() -> Self {
        let r = RadioConfig::default();
        Self {
            fc_ghz: r.fc_ghz,
            bandwidth_hz: r.bandwidth_hz,
            noise_figure_db: r.noise_figure_db,
            p_t_dbm: r.p_t_dbm,
            p_r_dbm: r.p_r_dbm,
            kappa: r.kappa,
            horn_gain: r.horn_gain,
            relay_height_wavelengths: rir_core::geometry::DEFAULT_RELAY_HEIGHT_WAVELENGTHS,
        }
    }
}

impl RadioSection {
    pub fn to_radio(&self) -> RadioConfig {
        RadioConfig {
            fc_ghz: self.fc_ghz,
            bandwidth_hz: self.bandwidth_hz,
            noise_figure_db: self.noise_figure_db,
            p_t_dbm: self.p_t_dbm,
            p_r_dbm: self.p_r_dbm,
            kappa: self.kappa,
            horn_gain: self.horn_gain,
            af_gain_db: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Architecture {
    Irs,
    DfRelay,
    AfRelay,
    RirDf,
    RirAf,
}

impl Architecture {
    pub const ALL: [Architecture; 5] = [
        Architecture::Irs,
        Architecture::DfRelay,
        Architecture::AfRelay,
        Architecture::RirDf,
        Architecture::RirAf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Architecture::Irs => "irs",
            Architecture::DfRelay => "df_relay",
            Architecture::AfRelay => "af_relay",
            Architecture::RirDf => "rir_df",
            Architecture::RirAf => "rir_af",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.as_str() == s)
    }

    /// Whether rows are produced once per configured AF gain.
    pub fn uses_beta(self) -> bool {
        matches!(self, Architecture::AfRelay | Architecture::RirAf)
    }

    pub fn is_standalone_relay(self) -> bool {
        matches!(self, Architecture::DfRelay | Architecture::AfRelay)
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// AF gain in dB, or `"max"` for a relay that always transmits at full power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BetaRepr", into = "BetaRepr")]
pub enum BetaSetting {
    Db(f64),
    Max,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BetaRepr {
    Db(f64),
    Word(String),
}

impl TryFrom<BetaRepr> for BetaSetting {
    type Error = String;

    fn try_from(r: BetaRepr) -> Result<Self, String> {
        match r {
            BetaRepr::Db(v) => Ok(BetaSetting::Db(v)),
            BetaRepr::Word(w) if w == "max" => Ok(BetaSetting::Max),
            BetaRepr::Word(w) => Err(format!("expected a gain in dB or \"max\", found {w:?}")),
        }
    }
}

impl From<BetaSetting> for BetaRepr {
    fn from(b: BetaSetting) -> Self {
        match b {
            BetaSetting::Db(v) => BetaRepr::Db(v),
            BetaSetting::Max => BetaRepr::Word("max".into()),
        }
    }
}

impl BetaSetting {
    pub fn db(self) -> Option<f64> {
        match self {
            BetaSetting::Db(v) => Some(v),
            BetaSetting::Max => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Elements per panel.
    Elements,
    /// Transmitter-receiver separation `d_x`, meters.
    Distance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelMode {
    Exact,
    Los,
    #[default]
    UpperBound,
}

impl ChannelMode {
    pub fn to_mode(self) -> Mode {
        match self {
            ChannelMode::Exact => Mode::Exact,
            ChannelMode::Los => Mode::Los,
            ChannelMode::UpperBound => Mode::UpperBound,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exact" => Some(ChannelMode::Exact),
            "los" => Some(ChannelMode::Los),
            "upper_bound" => Some(ChannelMode::UpperBound),
            _ => None,
        }
    }
}

/// Element convention of the classical surface: `double` gives it `2M`
/// elements to match the two panels of the relay-aided design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IrsConventionSetting {
    Single,
    #[default]
    Double,
}

impl IrsConventionSetting {
    pub fn to_convention(self) -> IrsConvention {
        match self {
            IrsConventionSetting::Single => IrsConvention::Single,
            IrsConventionSetting::Double => IrsConvention::Double,
        }
    }
}

fn default_betas() -> Vec<BetaSetting> {
    vec![BetaSetting::Max]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub radio: RadioSection,
    pub sweep_axis: SweepAxis,
    pub axis_values: Vec<f64>,
    /// Elements per panel when sweeping distance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<u64>,
    pub architectures: Vec<Architecture>,
    #[serde(default = "default_betas")]
    pub beta_values_db: Vec<BetaSetting>,
    #[serde(default)]
    pub mode: ChannelMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_rate: Option<f64>,
    #[serde(default)]
    pub irs_convention: IrsConventionSetting,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, SimError> {
        let config: SweepConfig = serde_json::from_str(text).map_err(SimError::Json)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, SimError> {
        let text = std::fs::read_to_string(path).map_err(|error| SimError::Io {
            path: path.to_owned(),
            error,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config always serializes")
    }

    /// Checks shared by rate and sizing sweeps.
    pub fn validate(&self) -> Result<(), FieldError> {
        let g = &self.geometry;
        for (name, v, min_ok) in [
            ("geometry.d_x", g.d_x, g.d_x >= 0.0),
            ("geometry.d_y", g.d_y, g.d_y > 0.0),
            ("geometry.h_tx", g.h_tx, g.h_tx > 0.0),
            ("geometry.h_rx", g.h_rx, g.h_rx > 0.0),
            ("geometry.h_node", g.h_node, g.h_node > 0.0),
        ] {
            if !(min_ok && v.is_finite()) {
                let bound = if name == "geometry.d_x" { "non-negative" } else { "positive" };
                return Err(FieldError::new(name, format!("must be finite and {bound}, got {v}")));
            }
        }

        let r = &self.radio;
        let radio_checks = [
            ("radio.fc_ghz", r.fc_ghz > 0.0 && r.fc_ghz.is_finite(), "must be positive"),
            (
                "radio.bandwidth_hz",
                r.bandwidth_hz > 0.0 && r.bandwidth_hz.is_finite(),
                "must be positive",
            ),
            ("radio.noise_figure_db", r.noise_figure_db.is_finite(), "must be finite"),
            ("radio.p_t_dbm", r.p_t_dbm.is_finite(), "must be finite"),
            ("radio.p_r_dbm", r.p_r_dbm.is_finite(), "must be finite"),
            ("radio.kappa", r.kappa > 0.0 && r.kappa <= 1.0, "must lie in (0, 1]"),
            (
                "radio.horn_gain",
                r.horn_gain >= 1.0 && r.horn_gain.is_finite(),
                "must be at least 1 (linear)",
            ),
            (
                "radio.relay_height_wavelengths",
                r.relay_height_wavelengths > 0.0 && r.relay_height_wavelengths.is_finite(),
                "must be positive",
            ),
        ];
        for (name, ok, message) in radio_checks {
            if !ok {
                return Err(FieldError::new(name, message));
            }
        }

        if self.axis_values.is_empty() {
            return Err(FieldError::new("axis_values", "must not be empty"));
        }
        for (i, &v) in self.axis_values.iter().enumerate() {
            let field = format!("axis_values[{i}]");
            match self.sweep_axis {
                SweepAxis::Elements if !(v >= 1.0 && v.fract() == 0.0 && v <= 1e12) => {
                    return Err(FieldError::new(field, format!("element counts must be whole numbers in [1, 1e12], got {v}")));
                }
                SweepAxis::Distance if !(v >= 0.0 && v.is_finite()) => {
                    return Err(FieldError::new(field, format!("distances must be finite and non-negative, got {v}")));
                }
                _ => {}
            }
        }

        if self.architectures.is_empty() {
            return Err(FieldError::new("architectures", "must not be empty"));
        }
        for (i, a) in self.architectures.iter().enumerate() {
            if self.architectures[..i].contains(a) {
                return Err(FieldError::new(format!("architectures[{i}]"), format!("{a} is listed twice")));
            }
        }

        if self.architectures.iter().any(|a| a.uses_beta()) && self.beta_values_db.is_empty() {
            return Err(FieldError::new("beta_values_db", "AF architectures need at least one gain"));
        }
        for (i, b) in self.beta_values_db.iter().enumerate() {
            if let BetaSetting::Db(v) = b {
                if !v.is_finite() {
                    return Err(FieldError::new(format!("beta_values_db[{i}]"), "must be finite"));
                }
            }
            if self.beta_values_db[..i].contains(b) {
                return Err(FieldError::new(format!("beta_values_db[{i}]"), "duplicate gain"));
            }
        }

        if let Some(m) = self.elements {
            if m == 0 {
                return Err(FieldError::new("elements", "must be at least 1"));
            }
        }
        if let Some(t) = self.target_rate {
            if !(t > 0.0 && t.is_finite()) {
                return Err(FieldError::new("target_rate", "must be positive"));
            }
        }
        Ok(())
    }

    pub fn validate_rates(&self) -> Result<(), FieldError> {
        self.validate()?;
        if self.sweep_axis == SweepAxis::Distance && self.elements.is_none() {
            return Err(FieldError::new("elements", "required when sweeping distance"));
        }
        Ok(())
    }

    pub fn validate_sizing(&self) -> Result<(), FieldError> {
        self.validate()?;
        if self.target_rate.is_none() {
            return Err(FieldError::new("target_rate", "required for sizing sweeps"));
        }
        if self.sweep_axis != SweepAxis::Distance {
            return Err(FieldError::new("sweep_axis", "sizing sweeps run over distance"));
        }
        if self.mode != ChannelMode::UpperBound {
            return Err(FieldError::new(
                "mode",
                "sizing sweeps support upper_bound only; the other modes tie the channel statistics to M",
            ));
        }
        if let Some(i) = self.architectures.iter().position(|a| a.is_standalone_relay()) {
            return Err(FieldError::new(
                format!("architectures[{i}]"),
                format!("{} has no surface to size", self.architectures[i]),
            ));
        }
        Ok(())
    }

    /// Axis values in ascending order.
    pub fn sorted_axis(&self) -> Vec<f64> {
        let mut v = self.axis_values.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Architectures in canonical output order.
    pub fn sorted_architectures(&self) -> Vec<Architecture> {
        let mut a = self.architectures.clone();
        a.sort();
        a
    }
}
