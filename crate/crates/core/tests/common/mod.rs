#![allow(dead_code)]

use std::io::Write;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use visespeech::{Phone, Utterance};

/// Prints a criterion line straight to the process stdout so it shows up in
/// `cargo test` output even when the test passes.
pub fn report(criterion: u32, what: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {criterion} {verdict}: {what} [{detail}]\n");
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

pub fn speech_phones() -> Vec<Phone> {
    Phone::ALL.iter().copied().filter(|p| !p.is_silence()).collect()
}

/// 1..=max_len phones, occasionally silence, each non-silent phone flagged
/// with probability `p_flag`.
pub fn random_utterance(rng: &mut ChaCha8Rng, max_len: usize, p_flag: f64) -> Utterance {
    let n = rng.gen_range(1..=max_len);
    let mut phones = Vec::with_capacity(n);
    let mut flags = Vec::with_capacity(n);
    for _ in 0..n {
        let p = Phone::ALL[rng.gen_range(0..Phone::ALL.len())];
        flags.push(!p.is_silence() && rng.gen_bool(p_flag));
        phones.push(p);
    }
    Utterance::new(phones, flags, None).expect("valid utterance")
}

/// A learner version of `reference` with a few random edits.
pub fn mutate(rng: &mut ChaCha8Rng, reference: &Utterance) -> Utterance {
    let pool = speech_phones();
    let mut phones = reference.phones().to_vec();
    for _ in 0..rng.gen_range(0..=2) {
        match rng.gen_range(0..3) {
            0 if !phones.is_empty() => {
                let i = rng.gen_range(0..phones.len());
                phones[i] = pool[rng.gen_range(0..pool.len())];
            }
            1 if phones.len() > 1 => {
                phones.remove(rng.gen_range(0..phones.len()));
            }
            _ => {
                let i = rng.gen_range(0..=phones.len());
                phones.insert(i, pool[rng.gen_range(0..pool.len())]);
            }
        }
    }
    Utterance::plain(phones).expect("non-empty")
}
