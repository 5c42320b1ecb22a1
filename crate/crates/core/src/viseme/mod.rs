//! Viseme blending.
//!
//! Phones map to visemes, visemes map to parametric articulator poses, and
//! exaggeration acts on three axes:
//!
//! * **Amplitude**: a pose's displacement from the rest pose is scaled by
//!   the level's `amplitude_gain`, then clamped.
//! * **Duration**: emphasized phones are longer (from the prosody plan) and
//!   their key pose is held over a short window instead of passing through.
//! * **Contrast**: emphasized keyframes get a more saturated, brighter color.
//!
//! Keyframes are blended with smoothstep so articulators start and stop
//! with zero velocity.

mod table;
mod track;

use serde::{Deserialize, Serialize};

pub use table::{VisemeTable, VisemeTableError, DEFAULT_TABLE, TABLE_HEADER, TABLE_MAGIC};
pub use track::{
    build_keyframes, interpolate, smoothstep, Glyph, GlyphSet, Keyframe, KeyframeTrack, Sample,
    TrackError, HOLD_FRACTION, MIDPOINT_FRACTION, ONSET_FRACTION, TARGET_FRACTION,
};

use crate::phone::{Phone, PhoneClass};
use crate::prosody::{ExaggerationConfig, ExaggerationLevel};

/// Side-view mouth state. Every field is clamped into its range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArticulatorPose {
    /// Chin / lower jaw opening.
    pub jaw_open: f64,
    pub lip_aperture: f64,
    /// `-1` fully rounded, `+1` fully spread.
    pub lip_spread: f64,
    pub lip_protrusion: f64,
    pub tongue_tip_raise: f64,
    pub tongue_body_height: f64,
    pub tongue_body_front: f64,
    /// Soft palate lowering (nasal port open).
    pub velum_lowered: f64,
    pub teeth_visible: f64,
}

impl ArticulatorPose {
    pub const FIELD_NAMES: [&'static str; 9] = [
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

    pub const FIELD_RANGES: [(f64, f64); 9] = [
        (0.0, 1.0),
        (0.0, 1.0),
        (-1.0, 1.0),
        (0.0, 1.0),
        (0.0, 1.0),
        (0.0, 1.0),
        (0.0, 1.0),
        (0.0, 1.0),
        (0.0, 1.0),
    ];

    /// Indices of the tongue fields within [`fields`](Self::fields).
    pub const TONGUE_FIELDS: [usize; 3] = [4, 5, 6];

    pub fn fields(&self) -> [f64; 9] {
        [
            self.jaw_open,
            self.lip_aperture,
            self.lip_spread,
            self.lip_protrusion,
            self.tongue_tip_raise,
            self.tongue_body_height,
            self.tongue_body_front,
            self.velum_lowered,
            self.teeth_visible,
        ]
    }

    /// Builds a pose from field values, clamping each into range.
    pub fn from_fields(f: [f64; 9]) -> Self {
        let mut c = f;
        for (v, (lo, hi)) in c.iter_mut().zip(Self::FIELD_RANGES) {
            *v = v.clamp(lo, hi);
        }
        ArticulatorPose {
            jaw_open: c[0],
            lip_aperture: c[1],
            lip_spread: c[2],
            lip_protrusion: c[3],
            tongue_tip_raise: c[4],
            tongue_body_height: c[5],
            tongue_body_front: c[6],
            velum_lowered: c[7],
            teeth_visible: c[8],
        }
    }

    pub fn in_range(&self) -> bool {
        self.fields()
            .iter()
            .zip(Self::FIELD_RANGES)
            .all(|(v, (lo, hi))| (lo..=hi).contains(v))
    }
}

/// An HSV color with hue in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColorSpec {
    pub hue: f64,
    pub saturation: f64,
    pub value: f64,
}

impl ColorSpec {
    pub fn new(hue: f64, saturation: f64, value: f64) -> Self {
        ColorSpec {
            hue: hue.rem_euclid(360.0),
            saturation: saturation.clamp(0.0, 1.0),
            value: value.clamp(0.0, 1.0),
        }
    }

    /// `#rrggbb` for SVG fills.
    pub fn to_hex(&self) -> String {
        let c = self.value * self.saturation;
        let h = self.hue / 60.0;
        let x = c * (1.0 - (h.rem_euclid(2.0) - 1.0).abs());
        let (r, g, b) = match h as u32 {
            0 => (c, x, 0.0),
            1 => (x, c, 0.0),
            2 => (0.0, c, x),
            3 => (0.0, x, c),
            4 => (x, 0.0, c),
            _ => (c, 0.0, x),
        };
        let m = self.value - c;
        let byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
        format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
    }
}

/// Default fill for lips and tongue.
pub const BASE_COLOR: ColorSpec = ColorSpec {
    hue: 350.0,
    saturation: 0.55,
    value: 0.72,
};

/// Identifier of one viseme in the pose table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VisemeId(u8);

pub(crate) const VISEME_NAMES: [&str; 42] = [
    "BILABIAL",
    "LABIODENTAL",
    "DENTAL",
    "ALVEOLAR",
    "POSTALVEOLAR",
    "VELAR",
    "GLOTTAL",
    "RHOTIC",
    "LATERAL",
    "GLIDE_W",
    "GLIDE_Y",
    "NEUTRAL",
    "AA_onset",
    "AA_target",
    "AE_onset",
    "AE_target",
    "AH_onset",
    "AH_target",
    "AO_onset",
    "AO_target",
    "AW_onset",
    "AW_target",
    "AY_onset",
    "AY_target",
    "EH_onset",
    "EH_target",
    "ER_onset",
    "ER_target",
    "EY_onset",
    "EY_target",
    "IH_onset",
    "IH_target",
    "IY_onset",
    "IY_target",
    "OW_onset",
    "OW_target",
    "OY_onset",
    "OY_target",
    "UH_onset",
    "UH_target",
    "UW_onset",
    "UW_target",
];

impl VisemeId {
    pub const BILABIAL: VisemeId = VisemeId(0);
    pub const LABIODENTAL: VisemeId = VisemeId(1);
    pub const DENTAL: VisemeId = VisemeId(2);
    pub const ALVEOLAR: VisemeId = VisemeId(3);
    pub const POSTALVEOLAR: VisemeId = VisemeId(4);
    pub const VELAR: VisemeId = VisemeId(5);
    pub const GLOTTAL: VisemeId = VisemeId(6);
    pub const RHOTIC: VisemeId = VisemeId(7);
    pub const LATERAL: VisemeId = VisemeId(8);
    pub const GLIDE_W: VisemeId = VisemeId(9);
    pub const GLIDE_Y: VisemeId = VisemeId(10);
    pub const NEUTRAL: VisemeId = VisemeId(11);

    pub const COUNT: usize = VISEME_NAMES.len();

    pub fn all() -> impl Iterator<Item = VisemeId> {
        (0..Self::COUNT as u8).map(VisemeId)
    }

    pub fn name(self) -> &'static str {
        VISEME_NAMES[self.0 as usize]
    }

    pub fn from_name(name: &str) -> Option<VisemeId> {
        VISEME_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| VisemeId(i as u8))
    }

    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }

    fn vocalic(phone: Phone, suffix: &str) -> Option<VisemeId> {
        if !phone.class().is_vocalic() {
            return None;
        }
        VisemeId::from_name(&format!("{}_{suffix}", phone.symbol()))
    }

    pub fn onset(phone: Phone) -> Option<VisemeId> {
        Self::vocalic(phone, "onset")
    }

    pub fn target(phone: Phone) -> Option<VisemeId> {
        Self::vocalic(phone, "target")
    }
}

impl std::fmt::Display for VisemeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Visemes a phone passes through: one for consonants and silence, an
/// onset and a target for vowels and diphthongs.
pub fn visemes_for_phone(phone: Phone) -> Vec<VisemeId> {
    use Phone::*;
    let single = match phone {
        B | P | M => VisemeId::BILABIAL,
        F | V => VisemeId::LABIODENTAL,
        TH | DH => VisemeId::DENTAL,
        T | D | N | S | Z => VisemeId::ALVEOLAR,
        SH | ZH | CH | JH => VisemeId::POSTALVEOLAR,
        K | G | NG => VisemeId::VELAR,
        HH => VisemeId::GLOTTAL,
        R => VisemeId::RHOTIC,
        L => VisemeId::LATERAL,
        W => VisemeId::GLIDE_W,
        Y => VisemeId::GLIDE_Y,
        SIL => VisemeId::NEUTRAL,
        vowel => {
            debug_assert!(vowel.class().is_vocalic());
            return vec![
                VisemeId::onset(vowel).expect("vocalic phone has an onset viseme"),
                VisemeId::target(vowel).expect("vocalic phone has a target viseme"),
            ];
        }
    };
    vec![single]
}

/// Contrast boost for emphasized keyframes: saturation and value scale by
/// the level's multipliers and clamp to 1. Hue never changes.
pub fn color_for(
    emphasized: bool,
    level: ExaggerationLevel,
    base: ColorSpec,
    cfg: &ExaggerationConfig,
) -> ColorSpec {
    if !emphasized {
        return base;
    }
    ColorSpec {
        hue: base.hue,
        saturation: (base.saturation * cfg.saturation_mult.at(level)).min(1.0),
        value: (base.value * cfg.brightness_mult.at(level)).min(1.0),
    }
}

/// Whether a phone's keyframes carry the airflow glyph.
pub fn has_airflow(phone: Phone) -> bool {
    matches!(
        phone.class(),
        PhoneClass::Fricative | PhoneClass::Affricate | PhoneClass::Stop
    )
}
