use crate::phone::{Phone, PhoneClass};

use super::SAMPLE_RATE;

/// Resonator and source settings for one phone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormantSpec {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    /// Weight of the glottal pulse train.
    pub voiced_gain: f64,
    /// Weight of the white-noise source.
    pub noise_gain: f64,
    /// Plosive release: closure, burst, then the voiced/silent remainder.
    pub burst: bool,
}

impl FormantSpec {
    /// Checks frequency ordering, bandwidth range, and that a non-silent
    /// phone has some source.
    pub fn is_valid(&self, silent: bool) -> bool {
        let nyquist = f64::from(SAMPLE_RATE) / 2.0;
        let ordered = 0.0 < self.f1 && self.f1 < self.f2 && self.f2 < self.f3 && self.f3 < nyquist;
        let bands = [self.b1, self.b2, self.b3]
            .iter()
            .all(|b| (40.0..=400.0).contains(b));
        let gains = (0.0..=1.0).contains(&self.voiced_gain) && (0.0..=1.0).contains(&self.noise_gain);
        let sourced = silent || self.voiced_gain + self.noise_gain > 0.0;
        ordered && bands && gains && sourced
    }
}

const fn vowel(f1: f64, f2: f64, f3: f64) -> FormantSpec {
    FormantSpec {
        f1,
        f2,
        f3,
        b1: 70.0,
        b2: 100.0,
        b3: 150.0,
        voiced_gain: 1.0,
        noise_gain: 0.0,
        burst: false,
    }
}

const fn sonorant(f1: f64, f2: f64, f3: f64) -> FormantSpec {
    FormantSpec {
        b1: 90.0,
        b2: 120.0,
        b3: 180.0,
        ..vowel(f1, f2, f3)
    }
}

const fn fricative(f1: f64, f2: f64, f3: f64, voiced: bool) -> FormantSpec {
    FormantSpec {
        f1,
        f2,
        f3,
        b1: 200.0,
        b2: 300.0,
        b3: 400.0,
        voiced_gain: if voiced { 0.5 } else { 0.0 },
        noise_gain: 1.0,
        burst: false,
    }
}

const fn stop(f1: f64, f2: f64, f3: f64, voiced: bool) -> FormantSpec {
    FormantSpec {
        f1,
        f2,
        f3,
        b1: 100.0,
        b2: 150.0,
        b3: 250.0,
        voiced_gain: if voiced { 1.0 } else { 0.0 },
        noise_gain: 1.0,
        burst: true,
    }
}

/// Formant table for every inventory phone. Diphthongs report their onset;
/// see [`glide_target`].
pub fn formant_spec(phone: Phone) -> FormantSpec {
    use Phone::*;
    match phone {
        IY => vowel(270.0, 2290.0, 3010.0),
        IH => vowel(390.0, 1990.0, 2550.0),
        EH => vowel(530.0, 1840.0, 2480.0),
        AE => vowel(660.0, 1720.0, 2410.0),
        AA => vowel(730.0, 1090.0, 2440.0),
        AO => vowel(570.0, 840.0, 2410.0),
        UH => vowel(440.0, 1020.0, 2240.0),
        UW => vowel(300.0, 870.0, 2240.0),
        AH => vowel(640.0, 1190.0, 2390.0),
        ER => vowel(490.0, 1350.0, 1690.0),
        AY | AW => formant_spec(AA),
        OY | OW => formant_spec(AO),
        EY => formant_spec(EH),
        B => stop(300.0, 1000.0, 2400.0, true),
        P => stop(300.0, 1000.0, 2400.0, false),
        D => stop(300.0, 1700.0, 2600.0, true),
        T => stop(300.0, 1700.0, 2600.0, false),
        G => stop(300.0, 2000.0, 2500.0, true),
        K => stop(300.0, 2000.0, 2500.0, false),
        F => fricative(1400.0, 4500.0, 6500.0, false),
        V => fricative(1400.0, 4500.0, 6500.0, true),
        TH => fricative(1400.0, 4000.0, 6000.0, false),
        DH => fricative(1400.0, 4000.0, 6000.0, true),
        S => fricative(2500.0, 5500.0, 7000.0, false),
        Z => fricative(2500.0, 5500.0, 7000.0, true),
        SH => fricative(1800.0, 2700.0, 4500.0, false),
        ZH => fricative(1800.0, 2700.0, 4500.0, true),
        HH => fricative(500.0, 1500.0, 2500.0, false),
        CH => FormantSpec {
            burst: true,
            ..fricative(1800.0, 2700.0, 4500.0, false)
        },
        JH => FormantSpec {
            burst: true,
            ..fricative(1800.0, 2700.0, 4500.0, true)
        },
        M => sonorant(280.0, 1000.0, 2300.0),
        N => sonorant(280.0, 1700.0, 2600.0),
        NG => sonorant(280.0, 2000.0, 2700.0),
        L => sonorant(360.0, 1300.0, 2700.0),
        R => sonorant(310.0, 1060.0, 1380.0),
        W => sonorant(300.0, 610.0, 2200.0),
        Y => sonorant(270.0, 2100.0, 3000.0),
        SIL => FormantSpec {
            voiced_gain: 0.0,
            noise_gain: 0.0,
            ..vowel(500.0, 1500.0, 2500.0)
        },
    }
}

/// The formant target a diphthong glides towards; `None` for other phones.
pub fn glide_target(phone: Phone) -> Option<FormantSpec> {
    use Phone::*;
    match phone {
        AY => Some(formant_spec(IH)),
        AW => Some(formant_spec(UH)),
        OY => Some(formant_spec(IY)),
        EY => Some(formant_spec(IY)),
        OW => Some(formant_spec(UW)),
        _ => None,
    }
}

/// RMS each phone class is rendered at before the energy multiplier.
pub fn class_level(class: PhoneClass) -> f64 {
    match class {
        PhoneClass::Vowel | PhoneClass::Diphthong => 0.12,
        PhoneClass::Liquid | PhoneClass::Glide => 0.09,
        PhoneClass::Nasal => 0.075,
        PhoneClass::Fricative | PhoneClass::Affricate | PhoneClass::Stop => 0.05,
        PhoneClass::Silence => 0.0,
    }
}
