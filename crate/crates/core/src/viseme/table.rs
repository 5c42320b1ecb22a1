use std::path::Path;

use thiserror::Error;

use super::{ArticulatorPose, VisemeId};
use crate::prosody::{ExaggerationConfig, ExaggerationLevel};

/// First line every pose table must start with.
pub const TABLE_MAGIC: &str = "# viseme-pose-table v1";

/// Required column header, in order.
pub const TABLE_HEADER: [&str; 10] = [
    "name",
    "jaw_open",
    "lip_aperture",
    "lip_spread",
    "lip_protrusion",
    "tongue_tip_raise",
    "tongue_body_height",
    "tongue_body_front",
    "velum_lowered",
    "teeth_visible",
];

/// The pose table shipped with the crate.
pub const DEFAULT_TABLE: &str = include_str!("../../data/visemes.v1.csv");

#[derive(Debug, Error)]
pub enum VisemeTableError {
    #[error("pose table must start with `{TABLE_MAGIC}`")]
    MissingVersion,
    #[error("pose table line {line}: {message}")]
    Record { line: u64, message: String },
    #[error("pose table has no entry for {0}")]
    Missing(&'static str),
    #[error("pose table: {0}")]
    Csv(#[from] csv::Error),
    #[error("reading pose table: {0}")]
    Io(#[from] std::io::Error),
}

/// Base (Normal-level) pose for every viseme.
#[derive(Debug, Clone, PartialEq)]
pub struct VisemeTable {
    poses: Vec<ArticulatorPose>,
}

impl Default for VisemeTable {
    fn default() -> Self {
        VisemeTable::parse(DEFAULT_TABLE).expect("bundled pose table is valid")
    }
}

impl VisemeTable {
    /// Parses a pose table. Every viseme must appear exactly once and every
    /// value must already lie in its field's range.
    pub fn parse(text: &str) -> Result<Self, VisemeTableError> {
        if text.lines().next().map(str::trim_end) != Some(TABLE_MAGIC) {
            return Err(VisemeTableError::MissingVersion);
        }
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());

        let headers = reader.headers()?.clone();
        if headers.iter().ne(TABLE_HEADER.iter().copied()) {
            return Err(VisemeTableError::Record {
                line: headers.position().map_or(0, |p| p.line()),
                message: format!("expected header `{}`", TABLE_HEADER.join(",")),
            });
        }

        let mut poses: Vec<Option<ArticulatorPose>> = vec![None; VisemeId::COUNT];
        for record in reader.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            let err = |message: String| VisemeTableError::Record { line, message };
            let name = &record[0];
            let id = VisemeId::from_name(name).ok_or_else(|| err(format!("unknown viseme `{name}`")))?;
            let mut values = [0.0; 9];
            for (k, slot) in values.iter_mut().enumerate() {
                let raw = &record[k + 1];
                let v: f64 = raw
                    .parse()
                    .map_err(|_| err(format!("`{raw}` is not a decimal number")))?;
                let (lo, hi) = ArticulatorPose::FIELD_RANGES[k];
                if !(lo..=hi).contains(&v) {
                    return Err(err(format!(
                        "{} = {v} outside [{lo}, {hi}]",
                        ArticulatorPose::FIELD_NAMES[k]
                    )));
                }
                *slot = v;
            }
            if poses[id.index()].replace(ArticulatorPose::from_fields(values)).is_some() {
                return Err(err(format!("duplicate entry for `{name}`")));
            }
        }

        let poses = poses
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or(VisemeTableError::Missing(super::VISEME_NAMES[i])))
            .collect::<Result<_, _>>()?;
        Ok(VisemeTable { poses })
    }

    pub fn load(path: &Path) -> Result<Self, VisemeTableError> {
        VisemeTable::parse(&std::fs::read_to_string(path)?)
    }

    pub fn base_pose(&self, viseme: VisemeId) -> ArticulatorPose {
        self.poses[viseme.index()]
    }

    pub fn neutral(&self) -> ArticulatorPose {
        self.base_pose(VisemeId::NEUTRAL)
    }

    /// The viseme's pose at a level: its displacement from the rest pose is
    /// multiplied by the level's amplitude gain, field by field, and clamped.
    pub fn pose_for(
        &self,
        viseme: VisemeId,
        level: ExaggerationLevel,
        cfg: &ExaggerationConfig,
    ) -> ArticulatorPose {
        let gain = cfg.amplitude_gain.at(level);
        let base = self.base_pose(viseme);
        if gain == 1.0 {
            return base;
        }
        let neutral = self.neutral().fields();
        let mut out = base.fields();
        for (v, n) in out.iter_mut().zip(neutral) {
            *v = n + gain * (*v - n);
        }
        ArticulatorPose::from_fields(out)
    }
}
