//! Minimal-pair identification questionnaires and their scoring.
//!
//! Each word pair yields two questions, one per word. A question shows
//! feedback for the rendered word, diagnosed against the other word of the
//! pair, either exaggerated (`E`, at the configured level) or plain (`N`,
//! `Normal` level with the same diagnosis). The kind is drawn from a
//! generator seeded by the caller, so a seed fully determines the study.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::fsutil::write_atomic;
use crate::phone::parse_script;
use crate::pipeline::{generate_feedback, FeedbackSettings};
use crate::prosody::ExaggerationLevel;

pub const STUDY_SCHEMA_VERSION: u32 = 1;
pub const STUDY_MANIFEST_FILE: &str = "study.json";
/// Default top of the opinion scale.
pub const DEFAULT_MOS_SCALE: u32 = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StudyError {
    #[error("a study needs at least one word pair")]
    NoPairs,
    #[error("word pair {pair_id}: {message}")]
    BadPair { pair_id: usize, message: String },
    #[error("response to unknown question {0}")]
    UnknownQuestion(usize),
    #[error("participant `{participant}` did not answer question {question_id}")]
    MissingResponse { participant: String, question_id: usize },
    #[error("participant `{participant}` answered question {question_id} twice")]
    DuplicateResponse { participant: String, question_id: usize },
    #[error("no scores to average")]
    EmptyScores,
    #[error("score {score} outside the 1..={max_scale} scale")]
    OutOfScale { score: u32, max_scale: u32 },
}

/// A minimal pair with a phone script for each word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordPair {
    pub word_a: String,
    pub phones_a: String,
    pub word_b: String,
    pub phones_b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairList {
    pub pairs: Vec<WordPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeedbackKind {
    E,
    N,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudyQuestion {
    pub question_id: usize,
    pub pair_id: usize,
    pub word_a: String,
    pub word_b: String,
    pub rendered_word: String,
    pub feedback_kind: FeedbackKind,
    /// Bundle directory relative to the study manifest.
    pub bundle_path: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudyManifest {
    pub schema_version: u32,
    pub seed: u64,
    pub level: ExaggerationLevel,
    pub questions: Vec<StudyQuestion>,
}

impl StudyManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Response {
    pub participant: String,
    pub question_id: usize,
    pub answer: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResponseSheet {
    pub responses: Vec<Response>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub correct_e: usize,
    pub total_e: usize,
    pub correct_n: usize,
    pub total_n: usize,
    pub accuracy_e: f64,
    pub accuracy_n: f64,
}

/// Question layout and feedback kinds, without rendering anything.
pub fn plan_study(pairs: &[WordPair], seed: u64, level: ExaggerationLevel) -> Result<StudyManifest, StudyError> {
    if pairs.is_empty() {
        return Err(StudyError::NoPairs);
    }
    let width = (2 * pairs.len()).to_string().len().max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut questions = Vec::with_capacity(2 * pairs.len());
    for (pair_id, pair) in pairs.iter().enumerate() {
        for rendered in [&pair.word_a, &pair.word_b] {
            let question_id = questions.len() + 1;
            let feedback_kind = if rng.gen_bool(0.5) { FeedbackKind::E } else { FeedbackKind::N };
            questions.push(StudyQuestion {
                question_id,
                pair_id: pair_id + 1,
                word_a: pair.word_a.clone(),
                word_b: pair.word_b.clone(),
                rendered_word: rendered.clone(),
                feedback_kind,
                bundle_path: format!("q{question_id:0width$}"),
            });
        }
    }
    Ok(StudyManifest {
        schema_version: STUDY_SCHEMA_VERSION,
        seed,
        level,
        questions,
    })
}

/// Renders every question's bundle under `out_dir` and writes
/// `study.json` there.
pub fn generate(
    pairs: &[WordPair],
    seed: u64,
    level: ExaggerationLevel,
    settings: &FeedbackSettings,
    out_dir: &Path,
) -> Result<StudyManifest> {
    let manifest = plan_study(pairs, seed, level)?;
    let mut scripts = Vec::with_capacity(pairs.len());
    for (i, pair) in pairs.iter().enumerate() {
        let parse = |word: &str, script: &str| {
            parse_script(script)
                .and_then(|u| u.with_label(Some(word.trim().to_string())))
                .map_err(|e| StudyError::BadPair {
                    pair_id: i + 1,
                    message: format!("`{word}`: {e}"),
                })
        };
        scripts.push((parse(&pair.word_a, &pair.phones_a)?, parse(&pair.word_b, &pair.phones_b)?));
    }
    for q in &manifest.questions {
        let (a, b) = &scripts[q.pair_id - 1];
        // questions come in pair order: word a, then word b
        let (reference, hyp) = if q.question_id % 2 == 1 {
            (a, b)
        } else {
            (b, a)
        };
        let level = match q.feedback_kind {
            FeedbackKind::E => level,
            FeedbackKind::N => ExaggerationLevel::Normal,
        };
        generate_feedback(reference, hyp, level, settings, &out_dir.join(&q.bundle_path))?;
    }
    let path = out_dir.join(STUDY_MANIFEST_FILE);
    write_atomic(&path, manifest.to_json().as_bytes()).map_err(Error::file(&path))?;
    Ok(manifest)
}

fn round4(x: f64) -> f64 {
    (x * 10_000.0).round() / 10_000.0
}

fn ratio(correct: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        correct as f64 / total as f64
    }
}

/// Pools every participant's answers per feedback kind. An answer is correct
/// when it names the rendered word, ignoring case and surrounding space.
/// Every participant must answer every question exactly once.
pub fn score(manifest: &StudyManifest, sheet: &ResponseSheet) -> Result<ScoreReport, StudyError> {
    let questions: BTreeMap<usize, &StudyQuestion> =
        manifest.questions.iter().map(|q| (q.question_id, q)).collect();
    let mut answered: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
    let mut report = ScoreReport {
        correct_e: 0,
        total_e: 0,
        correct_n: 0,
        total_n: 0,
        accuracy_e: 0.0,
        accuracy_n: 0.0,
    };
    for r in &sheet.responses {
        let q = questions
            .get(&r.question_id)
            .ok_or(StudyError::UnknownQuestion(r.question_id))?;
        if !answered.entry(&r.participant).or_default().insert(r.question_id) {
            return Err(StudyError::DuplicateResponse {
                participant: r.participant.clone(),
                question_id: r.question_id,
            });
        }
        let correct = r.answer.trim().eq_ignore_ascii_case(q.rendered_word.trim());
        let (c, t) = match q.feedback_kind {
            FeedbackKind::E => (&mut report.correct_e, &mut report.total_e),
            FeedbackKind::N => (&mut report.correct_n, &mut report.total_n),
        };
        *t += 1;
        *c += usize::from(correct);
    }
    for (participant, ids) in &answered {
        if let Some(&missing) = questions.keys().find(|id| !ids.contains(id)) {
            return Err(StudyError::MissingResponse {
                participant: participant.to_string(),
                question_id: missing,
            });
        }
    }
    report.accuracy_e = round4(ratio(report.correct_e, report.total_e));
    report.accuracy_n = round4(ratio(report.correct_n, report.total_n));
    Ok(report)
}

/// Mean opinion score on a `1..=max_scale` scale, to two decimals.
pub fn mos(scores: &[u32], max_scale: u32) -> Result<f64, StudyError> {
    if scores.is_empty() {
        return Err(StudyError::EmptyScores);
    }
    if let Some(&score) = scores.iter().find(|&&s| s < 1 || s > max_scale) {
        return Err(StudyError::OutOfScale { score, max_scale });
    }
    let sum: u64 = scores.iter().map(|&s| u64::from(s)).sum();
    Ok((sum as f64 / scores.len() as f64 * 100.0).round() / 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &str, pa: &str, b: &str, pb: &str) -> WordPair {
        WordPair {
            word_a: a.into(),
            phones_a: pa.into(),
            word_b: b.into(),
            phones_b: pb.into(),
        }
    }

    #[test]
    fn two_questions_per_pair() {
        let pairs = vec![pair("bed", "B EH D", "bad", "B AE D"); 14];
        let m = plan_study(&pairs, 7, ExaggerationLevel::Medium).unwrap();
        assert_eq!(m.questions.len(), 28);
        assert_eq!(m.questions[0].rendered_word, "bed");
        assert_eq!(m.questions[1].rendered_word, "bad");
        assert_eq!(m.questions[27].bundle_path, "q28");
        assert_eq!(plan_study(&[], 7, ExaggerationLevel::Medium), Err(StudyError::NoPairs));
    }

    #[test]
    fn mos_examples() {
        assert_eq!(mos(&[3, 3, 3], 3).unwrap(), 3.0);
        assert_eq!(mos(&[1, 2, 3], 3).unwrap(), 2.0);
        assert_eq!(mos(&[], 3), Err(StudyError::EmptyScores));
        assert_eq!(mos(&[4], 3), Err(StudyError::OutOfScale { score: 4, max_scale: 3 }));
        assert_eq!(mos(&[0], 5), Err(StudyError::OutOfScale { score: 0, max_scale: 5 }));
        assert_eq!(mos(&[4, 5], 5).unwrap(), 4.5);
    }

    #[test]
    fn scoring_errors() {
        let pairs = vec![pair("bed", "B EH D", "bad", "B AE D")];
        let m = plan_study(&pairs, 1, ExaggerationLevel::Medium).unwrap();
        let r = |p: &str, q, a: &str| Response {
            participant: p.into(),
            question_id: q,
            answer: a.into(),
        };
        let sheet = ResponseSheet {
            responses: vec![r("p1", 1, "bed"), r("p1", 3, "bed")],
        };
        assert_eq!(score(&m, &sheet), Err(StudyError::UnknownQuestion(3)));
        let sheet = ResponseSheet {
            responses: vec![r("p1", 1, "bed")],
        };
        assert!(matches!(score(&m, &sheet), Err(StudyError::MissingResponse { question_id: 2, .. })));
        let sheet = ResponseSheet {
            responses: vec![r("p1", 1, " BED "), r("p1", 2, "bed")],
        };
        let rep = score(&m, &sheet).unwrap();
        assert_eq!(rep.correct_e + rep.correct_n, 1);
        assert_eq!(score(&m, &ResponseSheet::default()).unwrap().accuracy_e, 0.0);
    }
}
