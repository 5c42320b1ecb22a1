//! Exaggeration levels, the multiplier config, and the prosody planner.
//!
//! The planner maps an emphasis-annotated utterance to per-phone timing,
//! pitch and energy targets. Only emphasized phones are exaggerated; their
//! neighbours keep base values and the visual side smooths the transition.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::phone::{Phone, PhoneClass, Utterance};

/// Degree of exaggeration, ordered `Normal < Low < Medium < High`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum ExaggerationLevel {
    Normal,
    Low,
    #[default]
    Medium,
    High,
}

impl ExaggerationLevel {
    pub const ALL: [ExaggerationLevel; 4] = [
        ExaggerationLevel::Normal,
        ExaggerationLevel::Low,
        ExaggerationLevel::Medium,
        ExaggerationLevel::High,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            ExaggerationLevel::Normal => "normal",
            ExaggerationLevel::Low => "low",
            ExaggerationLevel::Medium => "medium",
            ExaggerationLevel::High => "high",
        }
    }
}

impl fmt::Display for ExaggerationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExaggerationLevel {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExaggerationLevel::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| ConfigError::Invalid(format!("unknown exaggeration level `{s}`")))
    }
}

/// A value per exaggeration level, indexed `[normal, low, medium, high]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerLevel(pub [f64; 4]);

impl PerLevel {
    pub fn at(&self, level: ExaggerationLevel) -> f64 {
        self.0[level.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExaggerationConfig {
    pub duration_mult: PerLevel,
    pub f0_mult: PerLevel,
    pub energy_mult: PerLevel,
    pub amplitude_gain: PerLevel,
    pub saturation_mult: PerLevel,
    pub brightness_mult: PerLevel,
    /// Glottal pitch of unexaggerated speech, in Hz.
    pub base_f0: f64,
    /// Base phone duration in ms, indexed by [`PhoneClass`] declaration order.
    pub base_ms: [f64; 9],
}

impl Default for ExaggerationConfig {
    fn default() -> Self {
        ExaggerationConfig {
            duration_mult: PerLevel([1.0, 1.3, 1.6, 2.0]),
            f0_mult: PerLevel([1.0, 1.1, 1.2, 1.3]),
            energy_mult: PerLevel([1.0, 1.25, 1.5, 2.0]),
            amplitude_gain: PerLevel([1.0, 1.3, 1.6, 2.0]),
            saturation_mult: PerLevel([1.0, 1.2, 1.4, 1.6]),
            brightness_mult: PerLevel([1.0, 1.1, 1.2, 1.3]),
            base_f0: 120.0,
            base_ms: [140.0, 180.0, 80.0, 110.0, 120.0, 90.0, 90.0, 90.0, 100.0],
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("reading config: {0}")]
    Io(#[from] std::io::Error),
}

const FAMILIES: [&str; 6] = [
    "duration_mult",
    "f0_mult",
    "energy_mult",
    "amplitude_gain",
    "saturation_mult",
    "brightness_mult",
];

impl ExaggerationConfig {
    pub fn base_ms_for(&self, class: PhoneClass) -> f64 {
        self.base_ms[class as usize]
    }

    fn family_mut(&mut self, name: &str) -> Option<&mut PerLevel> {
        Some(match name {
            "duration_mult" => &mut self.duration_mult,
            "f0_mult" => &mut self.f0_mult,
            "energy_mult" => &mut self.energy_mult,
            "amplitude_gain" => &mut self.amplitude_gain,
            "saturation_mult" => &mut self.saturation_mult,
            "brightness_mult" => &mut self.brightness_mult,
            _ => return None,
        })
    }

    fn families(&self) -> [(&'static str, &PerLevel); 6] {
        [
            (FAMILIES[0], &self.duration_mult),
            (FAMILIES[1], &self.f0_mult),
            (FAMILIES[2], &self.energy_mult),
            (FAMILIES[3], &self.amplitude_gain),
            (FAMILIES[4], &self.saturation_mult),
            (FAMILIES[5], &self.brightness_mult),
        ]
    }

    /// Checks every range and monotonicity constraint.
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, family) in self.families() {
            if family.0[0] != 1.0 {
                return Err(ConfigError::Invalid(format!("{name}.normal must be 1.0")));
            }
            if family.0.iter().any(|v| !v.is_finite() || *v <= 0.0) {
                return Err(ConfigError::Invalid(format!("{name} values must be positive")));
            }
            if family.0.windows(2).any(|w| w[1] < w[0]) {
                return Err(ConfigError::Invalid(format!(
                    "{name} must be non-decreasing from normal to high"
                )));
            }
        }
        if !(60.0..=400.0).contains(&self.base_f0) {
            return Err(ConfigError::Invalid(format!(
                "base_f0 {} outside [60, 400] Hz",
                self.base_f0
            )));
        }
        for class in PhoneClass::ALL {
            let ms = self.base_ms_for(class);
            if !(20.0..=400.0).contains(&ms) {
                return Err(ConfigError::Invalid(format!(
                    "base_ms.{} {ms} outside [20, 400] ms",
                    class.name()
                )));
            }
        }
        Ok(())
    }

    /// Parses the flat `key = value` config format on top of the defaults.
    ///
    /// Keys are `<family>.<level>` (for example `duration_mult.medium`),
    /// `base_f0`, and `base_ms.<class>`. `#` starts a comment. Unknown keys
    /// and repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = ExaggerationConfig::default();
        let mut seen = std::collections::HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| ConfigError::Syntax {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| syntax("expected `key = value`".into()))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| syntax(format!("`{}` is not a decimal number", value.trim())))?;
            if !seen.insert(key.to_string()) {
                return Err(syntax(format!("duplicate key `{key}`")));
            }
            let slot: &mut f64 = match key.split_once('.') {
                None if key == "base_f0" => &mut cfg.base_f0,
                Some(("base_ms", class)) => {
                    let c = PhoneClass::ALL
                        .into_iter()
                        .find(|c| c.name() == class)
                        .ok_or_else(|| syntax(format!("unknown phone class `{class}`")))?;
                    &mut cfg.base_ms[c as usize]
                }
                Some((family, level)) => {
                    let level: ExaggerationLevel = ExaggerationLevel::ALL
                        .into_iter()
                        .find(|l| l.name() == level)
                        .ok_or_else(|| syntax(format!("unknown level `{level}`")))?;
                    let fam = cfg
                        .family_mut(family)
                        .ok_or_else(|| syntax(format!("unknown key `{key}`")))?;
                    &mut fam.0[level.index()]
                }
                None => return Err(syntax(format!("unknown key `{key}`"))),
            };
            *slot = value;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        ExaggerationConfig::parse(&std::fs::read_to_string(path)?)
    }

    /// Renders every key in the config format accepted by [`parse`](Self::parse).
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("base_f0 = {}\n", self.base_f0));
        for class in PhoneClass::ALL {
            out.push_str(&format!("base_ms.{} = {}\n", class.name(), self.base_ms_for(class)));
        }
        for (name, family) in self.families() {
            for level in ExaggerationLevel::ALL {
                out.push_str(&format!("{name}.{} = {}\n", level.name(), family.at(level)));
            }
        }
        out
    }
}

/// Timing and prosody targets for one phone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhoneTiming {
    pub phone: Phone,
    pub start_ms: f64,
    pub duration_ms: f64,
    pub f0_mult: f64,
    pub energy_mult: f64,
    /// True when exaggeration was actually applied: the phone is flagged
    /// and the level is above `Normal`.
    pub emphasized: bool,
    /// Level applied to this phone; `Normal` unless `emphasized`.
    pub level: ExaggerationLevel,
}

impl PhoneTiming {
    pub fn end_ms(&self) -> f64 {
        self.start_ms + self.duration_ms
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProsodyPlan {
    pub timings: Vec<PhoneTiming>,
    pub total_ms: f64,
}

impl ProsodyPlan {
    pub fn len(&self) -> usize {
        self.timings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timings.is_empty()
    }
}

pub fn base_duration(phone: Phone, cfg: &ExaggerationConfig) -> f64 {
    cfg.base_ms_for(phone.class())
}

/// Plans per-phone durations and prosody multipliers.
pub fn plan(u: &Utterance, level: ExaggerationLevel, cfg: &ExaggerationConfig) -> ProsodyPlan {
    let mut cursor = 0.0;
    let timings = u
        .phones()
        .iter()
        .zip(u.emphasis())
        .map(|(&phone, &flag)| {
            let exaggerate = flag && level > ExaggerationLevel::Normal;
            let applied = if exaggerate { level } else { ExaggerationLevel::Normal };
            let duration_ms = base_duration(phone, cfg) * cfg.duration_mult.at(applied);
            let timing = PhoneTiming {
                phone,
                start_ms: cursor,
                duration_ms,
                f0_mult: cfg.f0_mult.at(applied),
                energy_mult: cfg.energy_mult.at(applied),
                emphasized: exaggerate,
                level: applied,
            };
            cursor += duration_ms;
            timing
        })
        .collect();
    ProsodyPlan {
        timings,
        total_ms: cursor,
    }
}

pub fn total_duration(p: &ProsodyPlan) -> f64 {
    p.timings.iter().map(|t| t.duration_ms).sum()
}
