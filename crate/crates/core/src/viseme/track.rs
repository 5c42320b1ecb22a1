use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{color_for, has_airflow, visemes_for_phone, ArticulatorPose, ColorSpec, VisemeTable};
use crate::phone::{PhoneClass, Utterance};
use crate::prosody::{ExaggerationConfig, ExaggerationLevel, ProsodyPlan};

/// Consonant keyframe position within its phone.
pub const MIDPOINT_FRACTION: f64 = 0.5;
/// Vowel onset keyframe position within its phone.
pub const ONSET_FRACTION: f64 = 0.2;
/// Vowel target keyframe position within its phone.
pub const TARGET_FRACTION: f64 = 0.7;
/// Half-width of an emphasized phone's hold window, as a fraction of the phone.
pub const HOLD_FRACTION: f64 = 0.15;
/// Tongue displacement from the previous keyframe that earns an arrow.
const ARROW_THRESHOLD: f64 = 0.2;

#[derive(Debug, Error, PartialEq)]
pub enum TrackError {
    #[error("prosody plan has {plan} phones but the utterance has {utterance}")]
    PlanMismatch { plan: usize, utterance: usize },
    #[error("time {0} ms is outside the track")]
    OutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Glyph {
    Airflow,
    TongueArrow,
}

/// Auxiliary graphics attached to a keyframe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GlyphSet {
    pub airflow: bool,
    pub tongue_arrow: bool,
}

impl GlyphSet {
    pub const EMPTY: GlyphSet = GlyphSet {
        airflow: false,
        tongue_arrow: false,
    };

    pub fn contains(&self, glyph: Glyph) -> bool {
        match glyph {
            Glyph::Airflow => self.airflow,
            Glyph::TongueArrow => self.tongue_arrow,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.airflow && !self.tongue_arrow
    }
}

impl FromIterator<Glyph> for GlyphSet {
    fn from_iter<I: IntoIterator<Item = Glyph>>(iter: I) -> Self {
        let mut set = GlyphSet::EMPTY;
        for g in iter {
            match g {
                Glyph::Airflow => set.airflow = true,
                Glyph::TongueArrow => set.tongue_arrow = true,
            }
        }
        set
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Keyframe {
    pub time_ms: f64,
    pub pose: ArticulatorPose,
    pub emphasized: bool,
    pub level: ExaggerationLevel,
    pub color: ColorSpec,
    pub glyphs: GlyphSet,
}

impl Keyframe {
    fn same_frame(&self, other: &Keyframe) -> bool {
        self.time_ms == other.time_ms
            && self.pose == other.pose
            && self.color == other.color
            && self.glyphs == other.glyphs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyframeTrack {
    pub keyframes: Vec<Keyframe>,
    pub total_ms: f64,
}

/// Pose and color at an instant of a track.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub pose: ArticulatorPose,
    pub color: ColorSpec,
}

impl KeyframeTrack {
    pub fn len(&self) -> usize {
        self.keyframes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keyframes.is_empty()
    }

    /// Number of keyframes with time `<= t`.
    fn upto(&self, t_ms: f64) -> usize {
        self.keyframes.partition_point(|k| k.time_ms <= t_ms)
    }

    fn check(&self, t_ms: f64) -> Result<(), TrackError> {
        if self.keyframes.is_empty() || !(0.0..=self.total_ms).contains(&t_ms) {
            return Err(TrackError::OutOfRange(t_ms));
        }
        Ok(())
    }

    /// Glyphs shown at `t_ms`: those of the latest keyframe at or before it.
    pub fn glyphs_at(&self, t_ms: f64) -> Result<GlyphSet, TrackError> {
        self.check(t_ms)?;
        Ok(self.keyframes[self.upto(t_ms).max(1) - 1].glyphs)
    }

    /// Start and end of every hold window (an emphasized key pose repeated
    /// at both ends of the window).
    pub fn hold_windows(&self) -> Vec<(f64, f64)> {
        self.keyframes
            .windows(3)
            .filter(|w| {
                w.iter().all(|k| k.emphasized)
                    && w[0].pose == w[1].pose
                    && w[1].pose == w[2].pose
                    && w[0].time_ms < w[2].time_ms
            })
            .map(|w| (w[0].time_ms, w[2].time_ms))
            .collect()
    }
}

/// `3u² − 2u³`: zero slope at both ends.
pub fn smoothstep(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * (3.0 - 2.0 * u)
}

fn lerp(a: f64, b: f64, s: f64) -> f64 {
    a + s * (b - a)
}

/// Samples a track. Between keyframes every pose field and color channel is
/// blended with [`smoothstep`]; at a keyframe time the keyframe is returned
/// exactly.
pub fn interpolate(track: &KeyframeTrack, t_ms: f64) -> Result<Sample, TrackError> {
    track.check(t_ms)?;
    let kfs = &track.keyframes;
    let idx = track.upto(t_ms);
    if idx > 0 && kfs[idx - 1].time_ms == t_ms || idx == kfs.len() {
        let k = &kfs[idx.max(1) - 1];
        return Ok(Sample {
            pose: k.pose,
            color: k.color,
        });
    }
    if idx == 0 {
        // t precedes the first keyframe, which only happens for malformed tracks
        return Err(TrackError::OutOfRange(t_ms));
    }
    let (k0, k1) = (&kfs[idx - 1], &kfs[idx]);
    let s = smoothstep((t_ms - k0.time_ms) / (k1.time_ms - k0.time_ms));
    let a = k0.pose.fields();
    let b = k1.pose.fields();
    let mut blended = [0.0; 9];
    for i in 0..9 {
        blended[i] = lerp(a[i], b[i], s);
    }
    Ok(Sample {
        pose: ArticulatorPose::from_fields(blended),
        color: ColorSpec {
            hue: lerp(k0.color.hue, k1.color.hue, s),
            saturation: lerp(k0.color.saturation, k1.color.saturation, s),
            value: lerp(k0.color.value, k1.color.value, s),
        },
    })
}

fn tongue_shift(a: &ArticulatorPose, b: &ArticulatorPose) -> f64 {
    let (fa, fb) = (a.fields(), b.fields());
    ArticulatorPose::TONGUE_FIELDS
        .iter()
        .map(|&i| (fa[i] - fb[i]).abs())
        .fold(0.0, f64::max)
}

struct TrackBuilder {
    keyframes: Vec<Keyframe>,
}

impl TrackBuilder {
    fn push(&mut self, k: Keyframe) {
        if self.keyframes.last().is_some_and(|last| last.same_frame(&k)) {
            return;
        }
        self.keyframes.push(k);
    }

    fn last_pose(&self) -> ArticulatorPose {
        self.keyframes.last().expect("track starts with a rest keyframe").pose
    }
}

/// Builds the keyframe track for an utterance and its prosody plan.
///
/// Consonants get one keyframe at the phone midpoint; vowels and diphthongs
/// an onset at 20% and a target at 70% of the phone. An emphasized phone's
/// key pose is repeated at ±15% of its duration around the key time so the
/// exaggerated pose is held. Silence holds the rest pose for its whole
/// span. The track starts and ends on the rest pose.
pub fn build_keyframes(
    u: &Utterance,
    p: &ProsodyPlan,
    cfg: &ExaggerationConfig,
    table: &VisemeTable,
    base_color: ColorSpec,
) -> Result<KeyframeTrack, TrackError> {
    if u.len() != p.len() || u.phones().iter().zip(&p.timings).any(|(a, t)| *a != t.phone) {
        return Err(TrackError::PlanMismatch {
            plan: p.len(),
            utterance: u.len(),
        });
    }
    let rest = |time_ms| Keyframe {
        time_ms,
        pose: table.neutral(),
        emphasized: false,
        level: ExaggerationLevel::Normal,
        color: base_color,
        glyphs: GlyphSet::EMPTY,
    };

    let mut b = TrackBuilder {
        keyframes: vec![rest(0.0)],
    };
    for timing in &p.timings {
        let phone = timing.phone;
        let (start, dur) = (timing.start_ms, timing.duration_ms);
        if phone.class() == PhoneClass::Silence {
            b.push(rest(start));
            b.push(rest(timing.end_ms()));
            continue;
        }
        let visemes = visemes_for_phone(phone);
        let fractions: &[f64] = if visemes.len() == 2 {
            &[ONSET_FRACTION, TARGET_FRACTION]
        } else {
            &[MIDPOINT_FRACTION]
        };
        let color = color_for(timing.emphasized, timing.level, base_color, cfg);
        for (k, (&viseme, &frac)) in visemes.iter().zip(fractions).enumerate() {
            let pose = table.pose_for(viseme, timing.level, cfg);
            let glyphs = GlyphSet {
                airflow: has_airflow(phone),
                tongue_arrow: timing.emphasized
                    && tongue_shift(&pose, &b.last_pose()) >= ARROW_THRESHOLD,
            };
            let key = |time_ms| Keyframe {
                time_ms,
                pose,
                emphasized: timing.emphasized,
                level: timing.level,
                color,
                glyphs,
            };
            let t = start + frac * dur;
            if timing.emphasized && k + 1 == visemes.len() {
                b.push(key(t - HOLD_FRACTION * dur));
                b.push(key(t));
                b.push(key(t + HOLD_FRACTION * dur));
            } else {
                b.push(key(t));
            }
        }
    }
    b.push(rest(p.total_ms));
    Ok(KeyframeTrack {
        keyframes: b.keyframes,
        total_ms: p.total_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phone::parse_script;
    use crate::prosody::plan;

    fn track(script: &str, level: ExaggerationLevel) -> KeyframeTrack {
        let cfg = ExaggerationConfig::default();
        let u = parse_script(script).unwrap();
        let p = plan(&u, level, &cfg);
        build_keyframes(&u, &p, &cfg, &VisemeTable::default(), super::super::BASE_COLOR).unwrap()
    }

    #[test]
    fn keyframe_counts() {
        assert_eq!(track("B EH D", ExaggerationLevel::Medium).len(), 6);
        assert_eq!(track("B EH* D", ExaggerationLevel::Medium).len(), 8);
        let sil = track("SIL", ExaggerationLevel::High);
        assert_eq!(sil.len(), 2);
        assert_eq!(sil.keyframes[0].pose, sil.keyframes[1].pose);
        assert_eq!((sil.keyframes[0].time_ms, sil.keyframes[1].time_ms), (0.0, 100.0));
    }

    #[test]
    fn keyframe_times() {
        let t = track("B EH* D", ExaggerationLevel::Medium);
        let times: Vec<f64> = t.keyframes.iter().map(|k| k.time_ms).collect();
        // B mid 40; EH (80..304, d=224) onset 124.8, target 236.8 ± 33.6; D mid 344
        let expected = [0.0, 40.0, 124.8, 203.2, 236.8, 270.4, 344.0, 384.0];
        for (a, e) in times.iter().zip(expected) {
            assert!((a - e).abs() < 1e-9, "{times:?}");
        }
        assert_eq!(t.hold_windows().len(), 1);
    }

    #[test]
    fn plan_mismatch() {
        let cfg = ExaggerationConfig::default();
        let u = parse_script("B EH D").unwrap();
        let p = plan(&parse_script("B EH").unwrap(), ExaggerationLevel::Normal, &cfg);
        assert_eq!(
            build_keyframes(&u, &p, &cfg, &VisemeTable::default(), super::super::BASE_COLOR),
            Err(TrackError::PlanMismatch { plan: 2, utterance: 3 })
        );
    }

    #[test]
    fn smoothstep_values() {
        assert_eq!(smoothstep(0.0), 0.0);
        assert_eq!(smoothstep(1.0), 1.0);
        assert_eq!(smoothstep(0.5), 0.5);
        assert_eq!(smoothstep(0.25), 0.15625);
    }

    #[test]
    fn interpolation_endpoints_and_range() {
        let t = track("S T R IY* T", ExaggerationLevel::High);
        for k in &t.keyframes {
            let s = interpolate(&t, k.time_ms).unwrap();
            assert_eq!(s.pose, k.pose);
        }
        assert!(matches!(interpolate(&t, -0.1), Err(TrackError::OutOfRange(_))));
        assert!(matches!(interpolate(&t, t.total_ms + 0.1), Err(TrackError::OutOfRange(_))));
        assert!(interpolate(&t, f64::NAN).is_err());
    }

    #[test]
    fn glyphs() {
        let t = track("S IY* T", ExaggerationLevel::High);
        assert!(t.keyframes.iter().any(|k| k.glyphs.airflow));
        assert!(t.keyframes.iter().any(|k| k.glyphs.tongue_arrow));
        for k in &t.keyframes {
            if !k.glyphs.is_empty() {
                assert!(k.emphasized || k.glyphs.airflow);
            }
        }
        let plain = track("S IY* T", ExaggerationLevel::Normal);
        assert!(plain.keyframes.iter().all(|k| !k.glyphs.tongue_arrow && !k.emphasized));
        assert!(plain.hold_windows().is_empty());
        assert!(t.glyphs_at(0.0).unwrap().is_empty());
    }

    #[test]
    fn glyph_set_from_iter() {
        let s: GlyphSet = [Glyph::TongueArrow].into_iter().collect();
        assert!(s.contains(Glyph::TongueArrow) && !s.contains(Glyph::Airflow));
    }
}
