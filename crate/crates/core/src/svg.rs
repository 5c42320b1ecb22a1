//! Deterministic SVG rendering of articulator poses and keyframe tracks.
//!
//! The drawing is a left-facing mid-sagittal cutaway. Every moving
//! articulator is a path whose control points are affine functions of the
//! pose fields (see [`Geometry`]). Numbers are printed with exactly three
//! decimals and attributes in a fixed order, so equal inputs give equal
//! bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::viseme::{interpolate, ArticulatorPose, ColorSpec, GlyphSet, KeyframeTrack, TrackError};

pub const VIEW_BOX: &str = "0 0 400 300";

/// Ids of the moving articulators, present in every single-pose document.
pub const ARTICULATOR_IDS: [&str; 7] = [
    "velum",
    "upper_teeth",
    "upper_lip",
    "jaw",
    "lower_teeth",
    "lower_lip",
    "tongue",
];

/// Ids of the auxiliary glyphs.
pub const GLYPH_IDS: [&str; 2] = ["airflow", "tongue_arrow"];

/// Vertical travel of the jaw group between `jaw_open = 0` and `1`, in px.
pub const JAW_RANGE: f64 = 60.0;

/// Bezier control points approximating smoothstep for SMIL splines.
pub const SMOOTHSTEP_SPLINE: &str = "0.25 0 0.75 1";

const TEETH_FILL: &str = "#f4f1ea";
const OUTLINE: &str = "#6b5a4e";
const VELUM_STROKE: &str = "#b05c6a";
const AIRFLOW_STROKE: &str = "#3b82c4";
const ARROW_STROKE: &str = "#e0662a";

const UPPER_TEETH_POINTS: &str = "116.000,122.000 128.000,122.000 128.000,140.000 116.000,140.000";
const LOWER_TEETH_POINTS: &str = "116.000,142.000 128.000,142.000 126.000,160.000 118.000,160.000";
const CHIN_D: &str = "M 100.000 160.000 Q 104.000 212.000 170.000 218.000 L 300.000 214.000";
const PALATE_D: &str = "M 128.000 118.000 Q 160.000 92.000 200.000 90.000 Q 240.000 90.000 270.000 104.000";
const AIRFLOW_D: &str = "M 80.000 128.000 q -8.000 -6.000 -16.000 0.000 t -16.000 0.000 \
M 80.000 140.000 q -8.000 -6.000 -16.000 0.000 t -16.000 0.000 \
M 80.000 152.000 q -8.000 -6.000 -16.000 0.000 t -16.000 0.000";
const ARROW_D: &str = "M 200.000 200.000 L 200.000 150.000 M 190.000 162.000 L 200.000 150.000 L 210.000 162.000";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RenderMode {
    /// One element per articulator animated with SMIL splines.
    #[default]
    SmilAnimated,
    /// One group per video frame, shown in turn.
    FrameSampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub width_px: u32,
    pub height_px: u32,
    pub fps: u32,
    pub mode: RenderMode,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width_px: 400,
            height_px: 300,
            fps: 60,
            mode: RenderMode::SmilAnimated,
        }
    }
}

impl RenderSpec {
    pub fn new(width_px: u32, height_px: u32, fps: u32, mode: RenderMode) -> Result<Self, RenderError> {
        let spec = RenderSpec {
            width_px,
            height_px,
            fps,
            mode,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        if !(12..=120).contains(&self.fps) {
            return Err(RenderError::InvalidSpec(format!("fps {} outside [12, 120]", self.fps)));
        }
        for (what, v) in [("width", self.width_px), ("height", self.height_px)] {
            if !(64..=4096).contains(&v) {
                return Err(RenderError::InvalidSpec(format!("{what} {v} outside [64, 4096]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("animation needs at least two keyframes")]
    DegenerateTrack,
    #[error("invalid render spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Track(#[from] TrackError),
}

/// A rendered SVG document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDocument {
    pub xml_text: String,
}

impl SvgDocument {
    pub fn as_str(&self) -> &str {
        &self.xml_text
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.xml_text.into_bytes()
    }
}

/// Fixed three-decimal formatting; negative zero prints as zero.
pub fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Articulator geometry for one pose.
///
/// With `lx = 96 − 30·lip_protrusion + 8·lip_spread`,
/// `uy = 140 − 10·lip_aperture − 6·teeth_visible`,
/// `ly = 144 + 10·lip_aperture + 6·teeth_visible`,
/// `tip = (150 − 20·tongue_body_front, 200 − 70·tongue_tip_raise)`,
/// `body = (250 − 90·tongue_body_front, 205 − 90·tongue_body_height)` and
/// `v = velum_lowered`, the paths are spelled out by the accessor methods.
/// The jaw group translates down by `JAW_RANGE · jaw_open`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub lip_x: f64,
    pub upper_lip_y: f64,
    pub lower_lip_y: f64,
    pub tip: (f64, f64),
    pub body: (f64, f64),
    pub velum: f64,
    pub jaw_dy: f64,
}

impl Geometry {
    pub fn of(p: &ArticulatorPose) -> Self {
        Geometry {
            lip_x: 96.0 - 30.0 * p.lip_protrusion + 8.0 * p.lip_spread,
            upper_lip_y: 140.0 - 10.0 * p.lip_aperture - 6.0 * p.teeth_visible,
            lower_lip_y: 144.0 + 10.0 * p.lip_aperture + 6.0 * p.teeth_visible,
            tip: (
                150.0 - 20.0 * p.tongue_body_front,
                200.0 - 70.0 * p.tongue_tip_raise,
            ),
            body: (
                250.0 - 90.0 * p.tongue_body_front,
                205.0 - 90.0 * p.tongue_body_height,
            ),
            velum: p.velum_lowered,
            jaw_dy: JAW_RANGE * p.jaw_open,
        }
    }

    pub fn velum_d(&self) -> String {
        let v = self.velum;
        format!(
            "M 270.000 104.000 Q 292.000 {} {} {}",
            num(108.0 + 10.0 * v),
            num(300.0 + 6.0 * v),
            num(122.0 + 40.0 * v)
        )
    }

    pub fn upper_lip_d(&self) -> String {
        let (lx, uy) = (self.lip_x, self.upper_lip_y);
        format!(
            "M 124.000 104.000 L {} 104.000 Q {} {} {} {} L 124.000 {} Z",
            num(lx + 6.0),
            num(lx - 6.0),
            num(uy - 8.0),
            num(lx),
            num(uy),
            num(uy)
        )
    }

    pub fn lower_lip_d(&self) -> String {
        let (lx, ly) = (self.lip_x, self.lower_lip_y);
        format!(
            "M 124.000 {} L {} {} Q {} {} {} {} L 124.000 {} Z",
            num(ly),
            num(lx),
            num(ly),
            num(lx - 6.0),
            num(ly + 8.0),
            num(lx + 6.0),
            num(ly + 16.0),
            num(ly + 16.0)
        )
    }

    pub fn tongue_d(&self) -> String {
        let ((tx, ty), (bx, by)) = (self.tip, self.body);
        format!(
            "M 300.000 230.000 C 300.000 {by} {bx30} {by} {bx} {by} C {bx40} {by} {tx20} {ty10} {tx} {ty} Q {tx10} {ty20} 160.000 218.000 L 300.000 230.000 Z",
            by = num(by),
            bx30 = num(bx + 30.0),
            bx = num(bx),
            bx40 = num(bx - 40.0),
            tx20 = num(tx + 20.0),
            ty10 = num(ty - 10.0),
            tx = num(tx),
            ty = num(ty),
            tx10 = num(tx + 10.0),
            ty20 = num(ty + 20.0),
        )
    }

    pub fn jaw_translate(&self) -> String {
        format!("0.000 {}", num(self.jaw_dy))
    }
}

fn header(out: &mut String, spec: &RenderSpec) {
    let _ = write!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{VIEW_BOX}\">\n\
<rect class=\"backdrop\" x=\"0\" y=\"0\" width=\"400\" height=\"300\" fill=\"#fbf7f2\"/>\n\
<path class=\"palate\" d=\"{PALATE_D}\" fill=\"none\" stroke=\"{OUTLINE}\" stroke-width=\"3\"/>\n",
        spec.width_px, spec.height_px
    );
}

fn footer(out: &mut String) {
    out.push_str("</svg>\n");
}

fn id_attr(name: &str, with_id: bool) -> String {
    if with_id {
        format!("id=\"{name}\" class=\"{name}\"")
    } else {
        format!("class=\"{name}\"")
    }
}

/// Moving articulators and glyphs for one pose.
fn articulators(out: &mut String, pose: &ArticulatorPose, color: &ColorSpec, glyphs: GlyphSet, with_ids: bool) {
    let g = Geometry::of(pose);
    let fill = color.to_hex();
    let a = |name| id_attr(name, with_ids);
    let _ = writeln!(
        out,
        "<path {} d=\"{}\" fill=\"none\" stroke=\"{VELUM_STROKE}\" stroke-width=\"6\" stroke-linecap=\"round\"/>",
        a("velum"),
        g.velum_d()
    );
    let _ = writeln!(
        out,
        "<polygon {} points=\"{UPPER_TEETH_POINTS}\" fill=\"{TEETH_FILL}\" stroke=\"{OUTLINE}\"/>",
        a("upper_teeth")
    );
    let _ = writeln!(out, "<path {} d=\"{}\" fill=\"{fill}\"/>", a("upper_lip"), g.upper_lip_d());
    let _ = writeln!(out, "<g {} transform=\"translate({})\">", a("jaw"), g.jaw_translate());
    let _ = writeln!(out, "<path class=\"chin\" d=\"{CHIN_D}\" fill=\"none\" stroke=\"{OUTLINE}\" stroke-width=\"3\"/>");
    let _ = writeln!(
        out,
        "<polygon {} points=\"{LOWER_TEETH_POINTS}\" fill=\"{TEETH_FILL}\" stroke=\"{OUTLINE}\"/>",
        a("lower_teeth")
    );
    let _ = writeln!(out, "<path {} d=\"{}\" fill=\"{fill}\"/>", a("lower_lip"), g.lower_lip_d());
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        "<path {} d=\"{}\" fill=\"{fill}\" stroke=\"{OUTLINE}\"/>",
        a("tongue"),
        g.tongue_d()
    );
    if glyphs.airflow {
        let _ = writeln!(
            out,
            "<path {} d=\"{AIRFLOW_D}\" fill=\"none\" stroke=\"{AIRFLOW_STROKE}\" stroke-width=\"2\"/>",
            a("airflow")
        );
    }
    if glyphs.tongue_arrow {
        let _ = writeln!(
            out,
            "<path {} d=\"{ARROW_D}\" fill=\"none\" stroke=\"{ARROW_STROKE}\" stroke-width=\"3\"/>",
            a("tongue_arrow")
        );
    }
}

/// Renders a single pose as a standalone document. Glyph elements appear
/// only for glyphs in the set.
pub fn render_pose(pose: &ArticulatorPose, color: &ColorSpec, glyphs: GlyphSet, spec: &RenderSpec) -> SvgDocument {
    let mut out = String::with_capacity(2048);
    header(&mut out, spec);
    articulators(&mut out, pose, color, glyphs, true);
    footer(&mut out);
    SvgDocument { xml_text: out }
}

/// SMIL clock value for a duration in ms.
pub fn clock_ms(ms: f64) -> String {
    format!("{}ms", num(ms))
}

fn key_time(t_ms: f64, total_ms: f64) -> String {
    if t_ms <= 0.0 {
        "0".to_string()
    } else if t_ms >= total_ms {
        "1".to_string()
    } else {
        format!("{:.6}", t_ms / total_ms)
    }
}

/// Times of the frames sampled at `fps`: every `k·1000/fps` strictly
/// before the end of the track.
pub fn frame_times(total_ms: f64, fps: u32) -> Vec<f64> {
    (0u64..)
        .map(|k| k as f64 * 1000.0 / f64::from(fps))
        .take_while(|&t| t == 0.0 || t < total_ms)
        .collect()
}

/// Renders a whole track as one animated document lasting `total_ms`.
pub fn render_animation(track: &KeyframeTrack, spec: &RenderSpec) -> Result<SvgDocument, RenderError> {
    spec.validate()?;
    if track.keyframes.len() < 2 {
        return Err(RenderError::DegenerateTrack);
    }
    match spec.mode {
        RenderMode::SmilAnimated => Ok(render_smil(track, spec)),
        RenderMode::FrameSampled => render_frames(track, spec),
    }
}

struct Timing {
    dur: String,
    key_times: String,
    splines: String,
}

impl Timing {
    fn spline(&self, attribute: &str, values: &[String]) -> String {
        format!(
            "<animate attributeName=\"{attribute}\" dur=\"{}\" begin=\"0s\" fill=\"freeze\" calcMode=\"spline\" keyTimes=\"{}\" keySplines=\"{}\" values=\"{}\"/>\n",
            self.dur,
            self.key_times,
            self.splines,
            values.join(";")
        )
    }

    fn discrete(&self, attribute: &str, values: &[String]) -> String {
        format!(
            "<animate attributeName=\"{attribute}\" dur=\"{}\" begin=\"0s\" fill=\"freeze\" calcMode=\"discrete\" keyTimes=\"{}\" values=\"{}\"/>\n",
            self.dur,
            self.key_times,
            values.join(";")
        )
    }
}

fn render_smil(track: &KeyframeTrack, spec: &RenderSpec) -> SvgDocument {
    let kfs = &track.keyframes;
    let geo: Vec<Geometry> = kfs.iter().map(|k| Geometry::of(&k.pose)).collect();
    let fills: Vec<String> = kfs.iter().map(|k| k.color.to_hex()).collect();
    let timing = Timing {
        dur: clock_ms(track.total_ms),
        key_times: kfs
            .iter()
            .map(|k| key_time(k.time_ms, track.total_ms))
            .collect::<Vec<_>>()
            .join(";"),
        splines: vec![SMOOTHSTEP_SPLINE; kfs.len() - 1].join(";"),
    };
    let col = |f: fn(&Geometry) -> String| geo.iter().map(f).collect::<Vec<_>>();
    let opacity = |on: fn(&GlyphSet) -> bool| {
        kfs.iter()
            .map(|k| if on(&k.glyphs) { "1" } else { "0" }.to_string())
            .collect::<Vec<_>>()
    };
    let (g0, fill0) = (&geo[0], &fills[0]);

    let mut out = String::with_capacity(4096);
    header(&mut out, spec);
    let _ = write!(
        out,
        "<path id=\"velum\" class=\"velum\" d=\"{}\" fill=\"none\" stroke=\"{VELUM_STROKE}\" stroke-width=\"6\" stroke-linecap=\"round\">\n{}</path>\n",
        g0.velum_d(),
        timing.spline("d", &col(Geometry::velum_d))
    );
    let _ = writeln!(
        out,
        "<polygon id=\"upper_teeth\" class=\"upper_teeth\" points=\"{UPPER_TEETH_POINTS}\" fill=\"{TEETH_FILL}\" stroke=\"{OUTLINE}\"/>"
    );
    let _ = write!(
        out,
        "<path id=\"upper_lip\" class=\"upper_lip\" d=\"{}\" fill=\"{fill0}\">\n{}{}</path>\n",
        g0.upper_lip_d(),
        timing.spline("d", &col(Geometry::upper_lip_d)),
        timing.spline("fill", &fills)
    );
    let _ = write!(
        out,
        "<g id=\"jaw\" class=\"jaw\" transform=\"translate({})\">\n\
<animateTransform attributeName=\"transform\" type=\"translate\" dur=\"{}\" begin=\"0s\" fill=\"freeze\" calcMode=\"spline\" keyTimes=\"{}\" keySplines=\"{}\" values=\"{}\"/>\n",
        g0.jaw_translate(),
        timing.dur,
        timing.key_times,
        timing.splines,
        col(Geometry::jaw_translate).join(";")
    );
    let _ = writeln!(out, "<path class=\"chin\" d=\"{CHIN_D}\" fill=\"none\" stroke=\"{OUTLINE}\" stroke-width=\"3\"/>");
    let _ = writeln!(
        out,
        "<polygon id=\"lower_teeth\" class=\"lower_teeth\" points=\"{LOWER_TEETH_POINTS}\" fill=\"{TEETH_FILL}\" stroke=\"{OUTLINE}\"/>"
    );
    let _ = write!(
        out,
        "<path id=\"lower_lip\" class=\"lower_lip\" d=\"{}\" fill=\"{fill0}\">\n{}{}</path>\n</g>\n",
        g0.lower_lip_d(),
        timing.spline("d", &col(Geometry::lower_lip_d)),
        timing.spline("fill", &fills)
    );
    let _ = write!(
        out,
        "<path id=\"tongue\" class=\"tongue\" d=\"{}\" fill=\"{fill0}\" stroke=\"{OUTLINE}\">\n{}{}</path>\n",
        g0.tongue_d(),
        timing.spline("d", &col(Geometry::tongue_d)),
        timing.spline("fill", &fills)
    );
    let airflow = opacity(|g| g.airflow);
    let _ = write!(
        out,
        "<path id=\"airflow\" class=\"airflow\" d=\"{AIRFLOW_D}\" fill=\"none\" stroke=\"{AIRFLOW_STROKE}\" stroke-width=\"2\" opacity=\"{}\">\n{}</path>\n",
        airflow[0],
        timing.discrete("opacity", &airflow)
    );
    let arrow = opacity(|g| g.tongue_arrow);
    let _ = write!(
        out,
        "<path id=\"tongue_arrow\" class=\"tongue_arrow\" d=\"{ARROW_D}\" fill=\"none\" stroke=\"{ARROW_STROKE}\" stroke-width=\"3\" opacity=\"{}\">\n{}</path>\n",
        arrow[0],
        timing.discrete("opacity", &arrow)
    );
    footer(&mut out);
    SvgDocument { xml_text: out }
}

fn render_frames(track: &KeyframeTrack, spec: &RenderSpec) -> Result<SvgDocument, RenderError> {
    let times = frame_times(track.total_ms, spec.fps);
    let total = track.total_ms;
    let dur = clock_ms(total);
    let mut out = String::with_capacity(times.len() * 2048);
    header(&mut out, spec);
    let last = times.len() - 1;
    for (k, &t) in times.iter().enumerate() {
        let sample = interpolate(track, t)?;
        let glyphs = track.glyphs_at(t)?;
        let start = key_time(t, total);
        let end = times.get(k + 1).map(|&next| key_time(next, total));
        let (values, key_times) = match (k == 0, k == last) {
            (true, true) => ("visible".to_string(), "0".to_string()),
            (true, false) => ("visible;hidden".to_string(), format!("0;{}", end.unwrap())),
            (false, true) => ("hidden;visible".to_string(), format!("0;{start}")),
            (false, false) => ("hidden;visible;hidden".to_string(), format!("0;{start};{}", end.unwrap())),
        };
        let _ = write!(
            out,
            "<g class=\"frame\" visibility=\"hidden\">\n\
<animate attributeName=\"visibility\" dur=\"{dur}\" begin=\"0s\" fill=\"freeze\" calcMode=\"discrete\" keyTimes=\"{key_times}\" values=\"{values}\"/>\n"
        );
        articulators(&mut out, &sample.pose, &sample.color, glyphs, false);
        out.push_str("</g>\n");
    }
    footer(&mut out);
    Ok(SvgDocument { xml_text: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::viseme::{Keyframe, VisemeTable, BASE_COLOR};
    use crate::prosody::ExaggerationLevel;

    fn neutral() -> ArticulatorPose {
        VisemeTable::default().neutral()
    }

    fn two_key_track(total_ms: f64) -> KeyframeTrack {
        let k = |t| Keyframe {
            time_ms: t,
            pose: neutral(),
            emphasized: false,
            level: ExaggerationLevel::Normal,
            color: BASE_COLOR,
            glyphs: GlyphSet::EMPTY,
        };
        KeyframeTrack {
            keyframes: vec![k(0.0), k(total_ms)],
            total_ms,
        }
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1.000");
        assert_eq!(num(-0.0001), "0.000");
        assert_eq!(num(2.0 / 3.0), "0.667");
    }

    #[test]
    fn neutral_rest_geometry() {
        // neutral: jaw .2, aperture .2, spread 0, protrusion .1, tip .2,
        // height .4, front .5, velum .6, teeth .2
        let g = Geometry::of(&neutral());
        assert_eq!(g.velum_d(), "M 270.000 104.000 Q 292.000 114.000 303.600 146.000");
        assert_eq!(
            g.upper_lip_d(),
            "M 124.000 104.000 L 99.000 104.000 Q 87.000 128.800 93.000 136.800 L 124.000 136.800 Z"
        );
        assert_eq!(
            g.lower_lip_d(),
            "M 124.000 147.200 L 93.000 147.200 Q 87.000 155.200 99.000 163.200 L 124.000 163.200 Z"
        );
        assert_eq!(
            g.tongue_d(),
            "M 300.000 230.000 C 300.000 169.000 235.000 169.000 205.000 169.000 C 165.000 169.000 160.000 176.000 140.000 186.000 Q 150.000 206.000 160.000 218.000 L 300.000 230.000 Z"
        );
        assert_eq!(g.jaw_translate(), "0.000 12.000");
    }

    #[test]
    fn jaw_full_range() {
        let mut f = neutral().fields();
        f[0] = 0.0;
        let closed = Geometry::of(&ArticulatorPose::from_fields(f));
        f[0] = 1.0;
        let open = Geometry::of(&ArticulatorPose::from_fields(f));
        assert_eq!(open.jaw_dy - closed.jaw_dy, JAW_RANGE);
    }

    #[test]
    fn pose_render_is_deterministic_and_glyph_aware() {
        let spec = RenderSpec::default();
        let a = render_pose(&neutral(), &BASE_COLOR, GlyphSet::EMPTY, &spec);
        let b = render_pose(&neutral(), &BASE_COLOR, GlyphSet::EMPTY, &spec);
        assert_eq!(a, b);
        assert!(!a.as_str().contains("airflow"));
        let both = GlyphSet {
            airflow: true,
            tongue_arrow: true,
        };
        let c = render_pose(&neutral(), &BASE_COLOR, both, &spec);
        assert!(c.as_str().contains("id=\"airflow\"") && c.as_str().contains("id=\"tongue_arrow\""));
    }

    #[test]
    fn smil_duration() {
        let doc = render_animation(&two_key_track(300.0), &RenderSpec::default()).unwrap();
        assert!(doc.as_str().contains("dur=\"300.000ms\""));
        assert!(doc.as_str().contains("keyTimes=\"0;1\""));
    }

    #[test]
    fn frame_count() {
        assert_eq!(frame_times(300.0, 60).len(), 18);
        assert_eq!(frame_times(384.0, 60).len(), 24);
        assert_eq!(frame_times(10.0, 12).len(), 1);
        let spec = RenderSpec {
            mode: RenderMode::FrameSampled,
            ..RenderSpec::default()
        };
        let doc = render_animation(&two_key_track(300.0), &spec).unwrap();
        assert_eq!(doc.as_str().matches("<g class=\"frame\"").count(), 18);
    }

    #[test]
    fn degenerate_track() {
        let mut t = two_key_track(300.0);
        t.keyframes.pop();
        assert_eq!(
            render_animation(&t, &RenderSpec::default()),
            Err(RenderError::DegenerateTrack)
        );
    }

    #[test]
    fn spec_limits() {
        assert!(RenderSpec::new(400, 300, 60, RenderMode::SmilAnimated).is_ok());
        assert!(RenderSpec::new(400, 300, 5, RenderMode::SmilAnimated).is_err());
        assert!(RenderSpec::new(10, 300, 60, RenderMode::FrameSampled).is_err());
        assert!(RenderSpec::new(400, 5000, 60, RenderMode::FrameSampled).is_err());
    }
}
