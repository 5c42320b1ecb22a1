//! Source-filter speech synthesis of a prosody plan.
//!
//! Each phone is rendered from a glottal pulse train and/or white noise,
//! shaped by a cascade of three second-order resonators, brought to a
//! per-class loudness, and scaled by the plan's energy multiplier. Adjacent
//! phones overlap by a short linear cross-fade.

mod formants;
mod wav;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use formants::{class_level, formant_spec, glide_target, FormantSpec};
pub use wav::{quantize, wav_bytes, write_wav, WAV_HEADER_LEN};

use crate::phone::PhoneClass;
use crate::prosody::{ExaggerationConfig, PhoneTiming, ProsodyPlan};

pub const SAMPLE_RATE: u32 = 16_000;
const SAMPLES_PER_MS: f64 = SAMPLE_RATE as f64 / 1000.0;
/// 5 ms at 16 kHz.
pub const CROSSFADE_SAMPLES: usize = 80;
const CLOSURE_SAMPLES: usize = 160;
const BURST_SAMPLES: usize = 240;
const NOISE_SEED: u64 = 0x5eed_a0d1_0000_0000;
/// Peak level applied when the rendered signal would clip.
pub const CLIP_TARGET: f64 = 0.9;

#[derive(Debug, Error)]
pub enum AudioError {
    #[error("plan covers {needed} samples but the buffer holds {available}")]
    SpanMismatch { needed: usize, available: usize },
}

/// Mono samples in `[-1, 1]` at [`SAMPLE_RATE`].
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

impl AudioBuffer {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_ms(&self) -> f64 {
        self.samples.len() as f64 * 1000.0 / f64::from(self.sample_rate)
    }
}

/// Number of samples a phone of the given duration occupies. Every phone
/// rounds on its own; buffer length is the sum.
pub fn phone_samples(duration_ms: f64) -> usize {
    (duration_ms * SAMPLES_PER_MS).round() as usize
}

pub fn plan_samples(p: &ProsodyPlan) -> usize {
    p.timings.iter().map(|t| phone_samples(t.duration_ms)).sum()
}

/// Klatt-style two-pole resonator with unity gain at DC.
#[derive(Debug, Clone, Copy, Default)]
struct Resonator {
    a: f64,
    b: f64,
    c: f64,
    y1: f64,
    y2: f64,
}

impl Resonator {
    fn tune(&mut self, freq: f64, bandwidth: f64) {
        let t = 1.0 / f64::from(SAMPLE_RATE);
        let r = (-PI * bandwidth * t).exp();
        self.c = -(r * r);
        self.b = 2.0 * r * (2.0 * PI * freq * t).cos();
        self.a = 1.0 - self.b - self.c;
    }

    fn step(&mut self, x: f64) -> f64 {
        let y = self.a * x + self.b * self.y1 + self.c * self.y2;
        self.y2 = self.y1;
        self.y1 = y;
        y
    }
}

/// Rosenberg glottal pulse over one period, phase in `[0, 1)`.
fn glottal_flow(phase: f64) -> f64 {
    const OPEN: f64 = 0.4;
    const CLOSE: f64 = 0.16;
    if phase < OPEN {
        0.5 * (1.0 - (PI * phase / OPEN).cos())
    } else if phase < OPEN + CLOSE {
        (0.5 * PI * (phase - OPEN) / CLOSE).cos()
    } else {
        0.0
    }
}

/// Differentiated glottal flow (lip radiation folded in) at `f0` Hz.
struct GlottalSource {
    phase: f64,
    increment: f64,
    last: f64,
}

impl GlottalSource {
    fn new(f0: f64) -> Self {
        GlottalSource {
            phase: 0.0,
            increment: f0 / f64::from(SAMPLE_RATE),
            last: 0.0,
        }
    }

    fn next(&mut self) -> f64 {
        let flow = glottal_flow(self.phase);
        let out = flow - self.last;
        self.last = flow;
        self.phase += self.increment;
        if self.phase >= 1.0 {
            self.phase -= 1.0;
        }
        out
    }
}

fn lerp(a: f64, b: f64, s: f64) -> f64 {
    a + (b - a) * s
}

/// Renders one phone: `len` samples plus a cross-fade tail that continues
/// the same sound past the phone's end.
fn render_phone(timing: &PhoneTiming, index: usize, cfg: &ExaggerationConfig) -> Vec<f64> {
    let phone = timing.phone;
    let class = phone.class();
    let len = phone_samples(timing.duration_ms);
    let total = len + CROSSFADE_SAMPLES;
    if class == PhoneClass::Silence || len == 0 {
        return vec![0.0; total];
    }

    let onset = formant_spec(phone);
    let target = glide_target(phone).unwrap_or(onset);
    let mut source = GlottalSource::new(cfg.base_f0 * timing.f0_mult);
    let mut rng = ChaCha8Rng::seed_from_u64(NOISE_SEED ^ index as u64);
    let mut filters = [Resonator::default(); 3];
    let tune = |filters: &mut [Resonator; 3], s: f64| {
        filters[0].tune(lerp(onset.f1, target.f1, s), lerp(onset.b1, target.b1, s));
        filters[1].tune(lerp(onset.f2, target.f2, s), lerp(onset.b2, target.b2, s));
        filters[2].tune(lerp(onset.f3, target.f3, s), lerp(onset.b3, target.b3, s));
    };
    tune(&mut filters, 0.0);
    let gliding = glide_target(phone).is_some();

    let mut out = Vec::with_capacity(total);
    for n in 0..total {
        if gliding {
            tune(&mut filters, (n as f64 / len as f64).min(1.0));
        }
        let voice = source.next();
        let noise: f64 = rng.gen_range(-1.0..1.0);
        let excitation = if onset.burst {
            if n < CLOSURE_SAMPLES {
                0.0
            } else if class == PhoneClass::Stop && n < CLOSURE_SAMPLES + BURST_SAMPLES {
                noise
            } else {
                onset.voiced_gain * voice
                    + if class == PhoneClass::Affricate { onset.noise_gain * noise } else { 0.0 }
            }
        } else {
            onset.voiced_gain * voice + onset.noise_gain * noise
        };
        out.push(filters.iter_mut().fold(excitation, |x, f| f.step(x)));
    }

    let energy: f64 = out[..len].iter().map(|x| x * x).sum::<f64>() / len as f64;
    let rms = energy.sqrt();
    let gain = if rms > 1e-12 {
        class_level(class) / rms * timing.energy_mult
    } else {
        0.0
    };
    out.iter_mut().for_each(|x| *x *= gain);
    out
}

/// Renders a plan without the final clip protection. Exposed so level
/// ratios can be measured on the raw synthesis.
pub fn synth_unnormalized(p: &ProsodyPlan, cfg: &ExaggerationConfig) -> Vec<f64> {
    let mut out = vec![0.0; plan_samples(p)];
    let mut pos = 0;
    let mut tail: Vec<f64> = Vec::new();
    for (index, timing) in p.timings.iter().enumerate() {
        let seg = render_phone(timing, index, cfg);
        let len = phone_samples(timing.duration_ms);
        out[pos..pos + len].copy_from_slice(&seg[..len]);
        let fade = CROSSFADE_SAMPLES.min(len).min(tail.len());
        for i in 0..fade {
            let w = (i as f64 + 0.5) / CROSSFADE_SAMPLES as f64;
            out[pos + i] = tail[i] * (1.0 - w) + seg[i] * w;
        }
        tail = seg[len..].to_vec();
        pos += len;
    }
    out
}

/// Synthesizes the waveform for a plan. The result is peak-normalized to
/// [`CLIP_TARGET`] only when some sample would exceed full scale.
pub fn synth_utterance(p: &ProsodyPlan, cfg: &ExaggerationConfig) -> AudioBuffer {
    let mut samples = synth_unnormalized(p, cfg);
    let peak = samples.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if peak > 1.0 {
        let scale = CLIP_TARGET / peak;
        samples.iter_mut().for_each(|x| *x *= scale);
    }
    AudioBuffer {
        samples,
        sample_rate: SAMPLE_RATE,
    }
}

/// RMS over each phone's span of the buffer.
pub fn rms_per_phone(a: &AudioBuffer, p: &ProsodyPlan) -> Result<Vec<f64>, AudioError> {
    let needed = plan_samples(p);
    if needed > a.samples.len() {
        return Err(AudioError::SpanMismatch {
            needed,
            available: a.samples.len(),
        });
    }
    let mut pos = 0;
    Ok(p.timings
        .iter()
        .map(|t| {
            let len = phone_samples(t.duration_ms);
            let span = &a.samples[pos..pos + len];
            pos += len;
            if span.is_empty() {
                0.0
            } else {
                (span.iter().map(|x| x * x).sum::<f64>() / len as f64).sqrt()
            }
        })
        .collect())
}
