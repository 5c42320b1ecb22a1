//! Diagnosis to combined audio-visual feedback.
//!
//! [`build_feedback`] runs the whole chain in memory; [`generate_feedback`]
//! also writes the three artifacts of a bundle:
//!
//! | file            | contents                                   |
//! |-----------------|--------------------------------------------|
//! | `out.wav`       | 16 kHz mono 16-bit PCM speech              |
//! | `out.svg`       | animated mouth cutaway                     |
//! | `manifest.json` | [`TimelineManifest`], shared timeline      |

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::align::{align, emphasis_from_diagnosis, Diagnosis};
use crate::audio::{plan_samples, synth_utterance, wav_bytes, AudioBuffer, SAMPLE_RATE};
use crate::error::{Error, Result};
use crate::fsutil::write_atomic;
use crate::phone::Utterance;
use crate::prosody::{plan, ExaggerationConfig, ExaggerationLevel, ProsodyPlan};
use crate::svg::{render_animation, RenderSpec, SvgDocument};
use crate::viseme::{build_keyframes, ColorSpec, KeyframeTrack, VisemeTable, BASE_COLOR};

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;
pub const WAV_FILE: &str = "out.wav";
pub const SVG_FILE: &str = "out.svg";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Everything besides the utterances that shapes a bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct FeedbackSettings {
    pub config: ExaggerationConfig,
    pub visemes: VisemeTable,
    pub render: RenderSpec,
    pub base_color: ColorSpec,
}

impl Default for FeedbackSettings {
    fn default() -> Self {
        FeedbackSettings {
            config: ExaggerationConfig::default(),
            visemes: VisemeTable::default(),
            render: RenderSpec::default(),
            base_color: BASE_COLOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestPhone {
    pub symbol: String,
    pub start_ms: f64,
    pub duration_ms: f64,
    /// The diagnosis flag for this phone. At `Normal` level the flag is kept
    /// even though nothing is exaggerated.
    pub emphasized: bool,
    pub f0_mult: f64,
    pub energy_mult: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineManifest {
    pub schema_version: u32,
    pub label: String,
    pub level: ExaggerationLevel,
    /// Sum of the phone durations, rounded to microseconds. This is the
    /// exact animation duration written into the SVG.
    pub total_ms: f64,
    pub phones: Vec<ManifestPhone>,
    pub diagnosis: Diagnosis,
    pub wav: String,
    pub svg: String,
    pub sample_rate: u32,
    pub samples: usize,
}

impl TimelineManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// An in-memory bundle.
#[derive(Debug, Clone)]
pub struct Feedback {
    pub manifest: TimelineManifest,
    /// The reference with the diagnosed emphasis vector.
    pub utterance: Utterance,
    pub plan: ProsodyPlan,
    pub audio: AudioBuffer,
    pub track: KeyframeTrack,
    pub svg: SvgDocument,
}

/// A bundle written to disk.
#[derive(Debug, Clone, PartialEq)]
pub struct FeedbackBundle {
    pub manifest: TimelineManifest,
    pub wav_path: PathBuf,
    pub svg_path: PathBuf,
    pub manifest_path: PathBuf,
}

/// Rounds to three decimals, the precision of every time in the SVG.
pub fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

pub fn build_feedback(
    reference: &Utterance,
    hyp: &Utterance,
    level: ExaggerationLevel,
    settings: &FeedbackSettings,
) -> Result<Feedback> {
    settings.config.validate()?;
    settings.render.validate()?;
    let diagnosis = align(reference, hyp);
    let utterance = emphasis_from_diagnosis(&diagnosis, reference)?;
    let plan = plan(&utterance, level, &settings.config);
    let audio = synth_utterance(&plan, &settings.config);
    let track = build_keyframes(
        &utterance,
        &plan,
        &settings.config,
        &settings.visemes,
        settings.base_color,
    )?;
    let svg = render_animation(&track, &settings.render)?;

    let phones = plan
        .timings
        .iter()
        .zip(utterance.emphasis())
        .map(|(t, &flag)| ManifestPhone {
            symbol: t.phone.symbol().to_string(),
            start_ms: t.start_ms,
            duration_ms: t.duration_ms,
            emphasized: flag,
            f0_mult: t.f0_mult,
            energy_mult: t.energy_mult,
        })
        .collect();
    let manifest = TimelineManifest {
        schema_version: MANIFEST_SCHEMA_VERSION,
        label: reference.display_label(),
        level,
        total_ms: round3(plan.total_ms),
        phones,
        diagnosis,
        wav: WAV_FILE.to_string(),
        svg: SVG_FILE.to_string(),
        sample_rate: SAMPLE_RATE,
        samples: plan_samples(&plan),
    };
    debug_assert_eq!(manifest.samples, audio.len());
    Ok(Feedback {
        manifest,
        utterance,
        plan,
        audio,
        track,
        svg,
    })
}

/// Builds a bundle and writes it into `out_dir`, creating the directory if
/// needed. Each file is replaced atomically.
pub fn generate_feedback(
    reference: &Utterance,
    hyp: &Utterance,
    level: ExaggerationLevel,
    settings: &FeedbackSettings,
    out_dir: &Path,
) -> Result<FeedbackBundle> {
    let fb = build_feedback(reference, hyp, level, settings)?;
    std::fs::create_dir_all(out_dir).map_err(Error::file(out_dir))?;
    let wav_path = out_dir.join(WAV_FILE);
    let svg_path = out_dir.join(SVG_FILE);
    let manifest_path = out_dir.join(MANIFEST_FILE);
    write_atomic(&wav_path, &wav_bytes(&fb.audio)?).map_err(Error::file(&wav_path))?;
    write_atomic(&svg_path, fb.svg.as_str().as_bytes()).map_err(Error::file(&svg_path))?;
    write_atomic(&manifest_path, fb.manifest.to_json().as_bytes()).map_err(Error::file(&manifest_path))?;
    Ok(FeedbackBundle {
        manifest: fb.manifest,
        wav_path,
        svg_path,
        manifest_path,
    })
}
