//! Exaggerated audio-visual pronunciation feedback.
//!
//! A learner's phone sequence is aligned against the reference; every
//! mispronounced phone is then exaggerated in two channels at once:
//!
//! * speech, by a formant synthesizer that lengthens the phone and raises
//!   its pitch and loudness;
//! * animation, by a mouth cutaway whose poses for the phone are pushed
//!   further from rest, held longer and drawn in a stronger color.
//!
//! ```
//! use visespeech::{build_feedback, parse_script, ExaggerationLevel, FeedbackSettings};
//!
//! let bed = parse_script("# bed\nB EH D")?;
//! let said = parse_script("B AE D")?;
//! let fb = build_feedback(&bed, &said, ExaggerationLevel::Medium, &FeedbackSettings::default())?;
//! assert_eq!(fb.manifest.phones[1].duration_ms, 224.0);
//! # Ok::<(), visespeech::Error>(())
//! ```

pub mod align;
pub mod audio;
pub mod cli;
mod error;
pub mod fsutil;
pub mod phone;
pub mod pipeline;
pub mod prosody;
pub mod studykit;
pub mod svg;
pub mod viseme;

#[cfg(test)]
mod proptests;

// Compiles and runs the guide's snippets as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scripts.md")]
    mod scripts {}
    #[doc = include_str!("../../../book/src/diagnosis.md")]
    mod diagnosis {}
    #[doc = include_str!("../../../book/src/exaggeration.md")]
    mod exaggeration {}
    #[doc = include_str!("../../../book/src/speech.md")]
    mod speech {}
    #[doc = include_str!("../../../book/src/animation.md")]
    mod animation {}
    #[doc = include_str!("../../../book/src/feedback.md")]
    mod feedback {}
    #[doc = include_str!("../../../book/src/study.md")]
    mod study {}
}

pub use align::{align, align_phones, emphasis_from_diagnosis, AlignmentStep, Diagnosis, StepKind};
pub use audio::{synth_utterance, AudioBuffer};
pub use error::{Error, Result};
pub use phone::{parse_script, serialize_script, Phone, PhoneClass, PhoneError, Utterance};
pub use pipeline::{build_feedback, generate_feedback, Feedback, FeedbackBundle, FeedbackSettings, TimelineManifest};
pub use prosody::{plan, ExaggerationConfig, ExaggerationLevel, ProsodyPlan};
pub use svg::{render_animation, render_pose, RenderMode, RenderSpec, SvgDocument};
pub use viseme::{build_keyframes, interpolate, ArticulatorPose, ColorSpec, KeyframeTrack, VisemeTable};
