//! Phone inventory and the emphasis-annotated phone-script format.
//!
//! The inventory is the 39-phone ARPAbet set plus `SIL`. A phone script is a
//! whitespace-separated list of phones, optionally preceded by a `# label`
//! line. A trailing `*` marks a phone for emphasis and vowel stress digits
//! (`EH1`) are accepted and dropped:
//!
//! ```text
//! # bed
//! B EH1* D
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Broad articulatory class of a phone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhoneClass {
    Vowel,
    Diphthong,
    Stop,
    Fricative,
    Affricate,
    Nasal,
    Liquid,
    Glide,
    Silence,
}

impl PhoneClass {
    pub const ALL: [PhoneClass; 9] = [
        PhoneClass::Vowel,
        PhoneClass::Diphthong,
        PhoneClass::Stop,
        PhoneClass::Fricative,
        PhoneClass::Affricate,
        PhoneClass::Nasal,
        PhoneClass::Liquid,
        PhoneClass::Glide,
        PhoneClass::Silence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PhoneClass::Vowel => "vowel",
            PhoneClass::Diphthong => "diphthong",
            PhoneClass::Stop => "stop",
            PhoneClass::Fricative => "fricative",
            PhoneClass::Affricate => "affricate",
            PhoneClass::Nasal => "nasal",
            PhoneClass::Liquid => "liquid",
            PhoneClass::Glide => "glide",
            PhoneClass::Silence => "silence",
        }
    }

    /// Vowels and diphthongs, the classes that carry stress and get two visemes.
    pub fn is_vocalic(self) -> bool {
        matches!(self, PhoneClass::Vowel | PhoneClass::Diphthong)
    }
}

/// Size of the phone inventory, silence included.
pub const PHONE_COUNT: usize = Phone::ALL.len();

macro_rules! inventory {
    ($($sym:ident => $class:ident, $voiced:expr;)*) => {
        /// One phone of the closed ARPAbet inventory.
        #[allow(clippy::upper_case_acronyms)]
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Phone {
            $($sym,)*
        }

        impl Phone {
            /// Every phone of the inventory, in declaration order.
            pub const ALL: &'static [Phone] = &[$(Phone::$sym,)*];

            pub fn symbol(self) -> &'static str {
                match self {
                    $(Phone::$sym => stringify!($sym),)*
                }
            }

            pub fn class(self) -> PhoneClass {
                match self {
                    $(Phone::$sym => PhoneClass::$class,)*
                }
            }

            pub fn is_voiced(self) -> bool {
                match self {
                    $(Phone::$sym => $voiced,)*
                }
            }

            fn from_symbol(symbol: &str) -> Option<Phone> {
                match symbol {
                    $(stringify!($sym) => Some(Phone::$sym),)*
                    _ => None,
                }
            }
        }
    };
}

inventory! {
    AA => Vowel, true;
    AE => Vowel, true;
    AH => Vowel, true;
    AO => Vowel, true;
    AW => Diphthong, true;
    AY => Diphthong, true;
    B => Stop, true;
    CH => Affricate, false;
    D => Stop, true;
    DH => Fricative, true;
    EH => Vowel, true;
    ER => Vowel, true;
    EY => Diphthong, true;
    F => Fricative, false;
    G => Stop, true;
    HH => Fricative, false;
    IH => Vowel, true;
    IY => Vowel, true;
    JH => Affricate, true;
    K => Stop, false;
    L => Liquid, true;
    M => Nasal, true;
    N => Nasal, true;
    NG => Nasal, true;
    OW => Diphthong, true;
    OY => Diphthong, true;
    P => Stop, false;
    R => Liquid, true;
    S => Fricative, false;
    SH => Fricative, false;
    T => Stop, false;
    TH => Fricative, false;
    UH => Vowel, true;
    UW => Vowel, true;
    V => Fricative, true;
    W => Glide, true;
    Y => Glide, true;
    Z => Fricative, true;
    ZH => Fricative, true;
    SIL => Silence, false;
}

impl Phone {
    pub fn is_silence(self) -> bool {
        self == Phone::SIL
    }
}

impl fmt::Display for Phone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Phone {
    type Err = PhoneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        phone_info(s)
    }
}

impl Serialize for Phone {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Phone {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        phone_info(&s).map_err(serde::de::Error::custom)
    }
}

/// Looks up a bare inventory symbol (no stress digit, no emphasis marker).
pub fn phone_info(symbol: &str) -> Result<Phone, PhoneError> {
    Phone::from_symbol(symbol).ok_or_else(|| PhoneError::UnknownPhone {
        token: symbol.to_string(),
        line: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhoneError {
    #[error("phone script contains no phones")]
    EmptyScript,
    #[error("unknown phone `{token}`{}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    UnknownPhone { token: String, line: Option<usize> },
    #[error("silence cannot be emphasized{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    EmphasizedSilence { line: Option<usize> },
    #[error("{phones} phones but {flags} emphasis flags")]
    LengthMismatch { phones: usize, flags: usize },
    #[error("label must be a single trimmed line")]
    InvalidLabel,
}

/// A phone sequence with one emphasis flag per phone.
///
/// Construction goes through [`Utterance::new`], which enforces equal
/// lengths, at least one phone, and no emphasized silence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Utterance {
    phones: Vec<Phone>,
    emphasis: Vec<bool>,
    label: Option<String>,
}

impl Utterance {
    pub fn new(
        phones: Vec<Phone>,
        emphasis: Vec<bool>,
        label: Option<String>,
    ) -> Result<Self, PhoneError> {
        if phones.is_empty() {
            return Err(PhoneError::EmptyScript);
        }
        if phones.len() != emphasis.len() {
            return Err(PhoneError::LengthMismatch {
                phones: phones.len(),
                flags: emphasis.len(),
            });
        }
        if phones
            .iter()
            .zip(&emphasis)
            .any(|(p, &e)| e && p.is_silence())
        {
            return Err(PhoneError::EmphasizedSilence { line: None });
        }
        if let Some(l) = &label {
            if l.contains(['\n', '\r']) || l.trim() != l {
                return Err(PhoneError::InvalidLabel);
            }
        }
        Ok(Utterance {
            phones,
            emphasis,
            label,
        })
    }

    /// An utterance with every emphasis flag cleared.
    pub fn plain(phones: Vec<Phone>) -> Result<Self, PhoneError> {
        let n = phones.len();
        Utterance::new(phones, vec![false; n], None)
    }

    pub fn phones(&self) -> &[Phone] {
        &self.phones
    }

    pub fn emphasis(&self) -> &[bool] {
        &self.emphasis
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn len(&self) -> usize {
        self.phones.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.phones.is_empty()
    }

    pub fn is_emphasized(&self, index: usize) -> bool {
        self.emphasis[index]
    }

    pub fn has_emphasis(&self) -> bool {
        self.emphasis.iter().any(|&e| e)
    }

    pub fn with_label(mut self, label: Option<String>) -> Result<Self, PhoneError> {
        if let Some(l) = &label {
            if l.contains(['\n', '\r']) || l.trim() != l {
                return Err(PhoneError::InvalidLabel);
            }
        }
        self.label = label;
        Ok(self)
    }

    /// Same phones and label, new emphasis vector.
    pub fn with_emphasis(&self, emphasis: Vec<bool>) -> Result<Self, PhoneError> {
        Utterance::new(self.phones.clone(), emphasis, self.label.clone())
    }

    pub fn cleared(&self) -> Self {
        Utterance {
            phones: self.phones.clone(),
            emphasis: vec![false; self.phones.len()],
            label: self.label.clone(),
        }
    }

    /// Display text: the label if present, else the serialized phones.
    pub fn display_label(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => serialize_phones(self),
        }
    }
}

impl FromStr for Utterance {
    type Err = PhoneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_script(s)
    }
}

impl fmt::Display for Utterance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_script(self))
    }
}

fn parse_token(token: &str, line: usize) -> Result<(Phone, bool), PhoneError> {
    let (body, emphasized) = match token.strip_suffix('*') {
        Some(b) => (b, true),
        None => (token, false),
    };
    let unknown = || PhoneError::UnknownPhone {
        token: body.to_string(),
        line: Some(line),
    };
    let phone = match Phone::from_symbol(body) {
        Some(p) => p,
        None => {
            // Stress digits are only meaningful on vowels.
            let stripped = body.strip_suffix(['0', '1', '2']).ok_or_else(unknown)?;
            match Phone::from_symbol(stripped) {
                Some(p) if p.class().is_vocalic() => p,
                _ => return Err(unknown()),
            }
        }
    };
    if emphasized && phone.is_silence() {
        return Err(PhoneError::EmphasizedSilence { line: Some(line) });
    }
    Ok((phone, emphasized))
}

/// Parses a phone script into an [`Utterance`].
///
/// Line numbers in errors are 1-based.
pub fn parse_script(text: &str) -> Result<Utterance, PhoneError> {
    let mut lines = text.lines().enumerate().peekable();
    let mut label = None;
    if let Some((_, first)) = lines.peek() {
        if let Some(rest) = first.trim_start().strip_prefix('#') {
            label = Some(rest.trim().to_string());
            lines.next();
        }
    }

    let mut phones = Vec::new();
    let mut emphasis = Vec::new();
    for (idx, line) in lines {
        for token in line.split_whitespace() {
            let (phone, flag) = parse_token(token, idx + 1)?;
            phones.push(phone);
            emphasis.push(flag);
        }
    }
    if phones.is_empty() {
        return Err(PhoneError::EmptyScript);
    }
    Utterance::new(phones, emphasis, label)
}

fn serialize_phones(u: &Utterance) -> String {
    let mut out = String::with_capacity(u.len() * 4);
    for (i, (p, &e)) in u.phones.iter().zip(&u.emphasis).enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(p.symbol());
        if e {
            out.push('*');
        }
    }
    out
}

/// Writes an utterance back out as a phone script. Stress digits are never
/// emitted; a label becomes a leading `# label` line.
pub fn serialize_script(u: &Utterance) -> String {
    match &u.label {
        Some(l) => format!("# {l}\n{}", serialize_phones(u)),
        None => serialize_phones(u),
    }
}
