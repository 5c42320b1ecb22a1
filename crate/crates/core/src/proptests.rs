//! Property tests over the public API.

use proptest::prelude::*;

use crate::align::{align_phones, emphasis_from_diagnosis, StepKind};
use crate::audio::{plan_samples, synth_utterance, wav_bytes};
use crate::phone::{parse_script, phone_info, serialize_script, Phone, PhoneError, Utterance};
use crate::pipeline::{build_feedback, FeedbackSettings};
use crate::prosody::{plan, ExaggerationConfig, ExaggerationLevel};
use crate::studykit::{score, FeedbackKind, Response, ResponseSheet, StudyManifest, StudyQuestion};
use crate::svg::{render_animation, RenderMode, RenderSpec, ARTICULATOR_IDS, GLYPH_IDS};
use crate::viseme::{build_keyframes, interpolate, visemes_for_phone, Glyph, VisemeTable, BASE_COLOR};

fn phone() -> impl Strategy<Value = Phone> {
    (0..Phone::ALL.len()).prop_map(|i| Phone::ALL[i])
}

fn phones(max: usize) -> impl Strategy<Value = Vec<Phone>> {
    prop::collection::vec(phone(), 1..=max)
}

fn level() -> impl Strategy<Value = ExaggerationLevel> {
    (0..4usize).prop_map(|i| ExaggerationLevel::ALL[i])
}

/// Utterances with random flags on non-silent phones and an optional label.
fn utterance(max: usize) -> impl Strategy<Value = Utterance> {
    (
        phones(max),
        prop::collection::vec(any::<bool>(), max),
        prop::option::of("[a-z]{1,8}( [a-z]{1,8})?"),
    )
        .prop_map(|(ps, flags, label)| {
            let flags = ps.iter().zip(flags).map(|(p, f)| f && !p.is_silence()).collect();
            Utterance::new(ps, flags, label).unwrap()
        })
}

/// A cost recomputed from the steps, which must cover both sides in order.
fn path_cost(r: &[Phone], h: &[Phone], steps: &[crate::AlignmentStep]) -> Option<u32> {
    let (mut i, mut j, mut cost) = (0, 0, 0);
    for s in steps {
        match (s.kind, s.ref_index, s.hyp_index) {
            (StepKind::Match, Some(a), Some(b)) if (a, b) == (i, j) && r[a] == h[b] => (i, j) = (i + 1, j + 1),
            (StepKind::Substitute, Some(a), Some(b)) if (a, b) == (i, j) && r[a] != h[b] => {
                (i, j, cost) = (i + 1, j + 1, cost + 1)
            }
            (StepKind::Delete, Some(a), None) if a == i => (i, cost) = (i + 1, cost + 1),
            (StepKind::Insert, None, Some(b)) if b == j => (j, cost) = (j + 1, cost + 1),
            _ => return None,
        }
    }
    (i == r.len() && j == h.len()).then_some(cost)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn script_round_trip(u in utterance(16)) {
        prop_assert_eq!(parse_script(&serialize_script(&u)).unwrap(), u);
    }

    #[test]
    fn unknown_tokens_are_rejected(token in "[A-Z]{1,4}[0-9]?") {
        prop_assume!(phone_info(&token).is_err());
        let stressed_vowel = token
            .strip_suffix(['0', '1', '2'])
            .and_then(|b| phone_info(b).ok())
            .is_some_and(|p| p.class().is_vocalic());
        prop_assume!(!stressed_vowel);
        let err = parse_script(&format!("B {token} D")).unwrap_err();
        prop_assert_eq!(err, PhoneError::UnknownPhone { token, line: Some(1) });
    }

    #[test]
    fn alignment_is_a_valid_minimal_path(r in phones(12), h in phones(12)) {
        let d = align_phones(&r, &h);
        prop_assert_eq!(path_cost(&r, &h, &d.steps), Some(d.cost));
        let back = align_phones(&h, &r);
        prop_assert_eq!(back.cost, d.cost);
        let swapped: Vec<_> = d.steps.iter().map(|s| s.swapped()).collect();
        prop_assert_eq!(path_cost(&h, &r, &swapped), Some(d.cost));
        prop_assert_eq!(d.cost == 0, r == h);
        let blamed = &d.mispronounced_ref_indices;
        prop_assert!(blamed.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(blamed.iter().all(|&i| i < r.len()));
    }

    #[test]
    fn emphasis_is_flagged_iff_there_is_an_error(r in phones(10), h in phones(10)) {
        prop_assume!(r.iter().any(|p| !p.is_silence()));
        let reference = Utterance::plain(r.clone()).unwrap();
        let d = align_phones(&r, &h);
        let u = emphasis_from_diagnosis(&d, &reference).unwrap();
        prop_assert_eq!(u.has_emphasis(), d.cost > 0);
        prop_assert!(u.phones().iter().zip(u.emphasis()).all(|(p, &e)| !(e && p.is_silence())));
    }

    #[test]
    fn plans_are_contiguous_and_pure(u in utterance(16), l in level()) {
        let cfg = ExaggerationConfig::default();
        let p = plan(&u, l, &cfg);
        prop_assert_eq!(&p, &plan(&u, l, &cfg));
        let mut cursor = 0.0;
        for t in &p.timings {
            prop_assert_eq!(t.start_ms, cursor);
            prop_assert!(t.duration_ms > 0.0);
            cursor += t.duration_ms;
        }
        prop_assert_eq!(p.total_ms, cursor);
        prop_assert_eq!(plan(&u, ExaggerationLevel::Normal, &cfg), plan(&u.cleared(), l, &cfg));
    }

    #[test]
    fn audio_length_and_determinism(u in utterance(8), l in level()) {
        let cfg = ExaggerationConfig::default();
        let p = plan(&u, l, &cfg);
        let a = synth_utterance(&p, &cfg);
        prop_assert_eq!(a.len(), plan_samples(&p));
        prop_assert!((a.len() as f64 - p.total_ms * 16.0).abs() <= 0.5 * p.len() as f64);
        prop_assert!(a.samples.iter().all(|x| x.abs() <= 1.0));
        prop_assert_eq!(wav_bytes(&a).unwrap(), wav_bytes(&synth_utterance(&p, &cfg)).unwrap());
    }

    #[test]
    fn tracks_hold_and_hit_their_keyframes(u in utterance(10), l in level(), frac in 0.0f64..=1.0) {
        let cfg = ExaggerationConfig::default();
        let table = VisemeTable::default();
        let track = build_keyframes(&u, &plan(&u, l, &cfg), &cfg, &table, BASE_COLOR).unwrap();
        let kfs = &track.keyframes;
        prop_assert_eq!(kfs[0].pose, table.neutral());
        prop_assert_eq!(kfs[kfs.len() - 1].pose, table.neutral());
        prop_assert!(kfs.windows(2).all(|w| w[0].time_ms <= w[1].time_ms));
        for (i, k) in kfs.iter().enumerate() {
            if kfs.get(i + 1).is_some_and(|n| n.time_ms == k.time_ms) {
                continue;
            }
            prop_assert_eq!(interpolate(&track, k.time_ms).unwrap().pose, k.pose);
        }
        for (start, end) in track.hold_windows() {
            let t = start + frac * (end - start);
            let held = kfs.iter().find(|k| k.time_ms == start).unwrap().pose;
            prop_assert_eq!(interpolate(&track, t).unwrap().pose, held);
        }
    }

    #[test]
    fn plain_tracks_carry_no_emphasis(ps in phones(10), l in level()) {
        let cfg = ExaggerationConfig::default();
        let u = Utterance::plain(ps).unwrap();
        let track = build_keyframes(&u, &plan(&u, l, &cfg), &cfg, &VisemeTable::default(), BASE_COLOR).unwrap();
        prop_assert!(track.hold_windows().is_empty());
        let plain = track.keyframes.iter().all(|k| {
            !k.glyphs.contains(Glyph::TongueArrow) && k.color == BASE_COLOR && !k.emphasized
        });
        prop_assert!(plain);
    }

    #[test]
    fn svg_is_well_formed_and_deterministic(u in utterance(6), l in level(), frames in any::<bool>()) {
        let cfg = ExaggerationConfig::default();
        let track = build_keyframes(&u, &plan(&u, l, &cfg), &cfg, &VisemeTable::default(), BASE_COLOR).unwrap();
        let mode = if frames { RenderMode::FrameSampled } else { RenderMode::SmilAnimated };
        let spec = RenderSpec::new(400, 300, 30, mode).unwrap();
        let doc = render_animation(&track, &spec).unwrap();
        let again = render_animation(&track, &spec).unwrap();
        prop_assert_eq!(doc.as_str(), again.as_str());
        let xml = roxmltree::Document::parse(doc.as_str()).unwrap();
        let mut ids: Vec<&str> = xml.descendants().filter_map(|n| n.attribute("id")).collect();
        ids.sort_unstable();
        let mut want: Vec<&str> = if frames { vec![] } else { ARTICULATOR_IDS.iter().chain(&GLYPH_IDS).copied().collect() };
        want.sort_unstable();
        prop_assert_eq!(ids, want);
    }

    #[test]
    fn feedback_is_deterministic_and_contrasts_with_plain(
        r in phones(6),
        h in phones(6),
        l in (1..4usize).prop_map(|i| ExaggerationLevel::ALL[i]),
    ) {
        let reference = Utterance::plain(r).unwrap();
        let hyp = Utterance::plain(h).unwrap();
        let settings = FeedbackSettings::default();
        let e = build_feedback(&reference, &hyp, l, &settings).unwrap();
        let again = build_feedback(&reference, &hyp, l, &settings).unwrap();
        prop_assert_eq!(wav_bytes(&e.audio).unwrap(), wav_bytes(&again.audio).unwrap());
        prop_assert_eq!(e.svg.as_str(), again.svg.as_str());
        prop_assert_eq!(e.manifest.to_json(), again.manifest.to_json());

        prop_assume!(e.utterance.has_emphasis());
        let n = build_feedback(&reference, &hyp, ExaggerationLevel::Normal, &settings).unwrap();
        let durations_differ = e.manifest.phones.iter().zip(&n.manifest.phones).any(|(a, b)| a.duration_ms != b.duration_ms);
        let colors_differ = e.track.keyframes.iter().any(|k| k.color != BASE_COLOR);
        prop_assert!(durations_differ && colors_differ);

        // A viseme already at rest, or pinned at its field limits, has nothing to amplify.
        let table = VisemeTable::default();
        let amplifiable = e.utterance.phones().iter().zip(e.utterance.emphasis()).any(|(&p, &flag)| {
            flag && visemes_for_phone(p).into_iter().any(|v| table.pose_for(v, l, &settings.config) != table.base_pose(v))
        });
        if amplifiable {
            let in_n = |pose: &crate::ArticulatorPose| n.track.keyframes.iter().any(|k| k.pose == *pose);
            prop_assert!(e.track.keyframes.iter().any(|k| !in_n(&k.pose)));
        }
    }

    #[test]
    fn scoring_conserves_correct_answers(kinds in prop::collection::vec(any::<bool>(), 1..10), answers in prop::collection::vec(any::<bool>(), 30)) {
        let questions: Vec<StudyQuestion> = kinds.iter().enumerate().map(|(i, &e)| StudyQuestion {
            question_id: i + 1,
            pair_id: i / 2 + 1,
            word_a: "bed".into(),
            word_b: "bad".into(),
            rendered_word: if i % 2 == 0 { "bed".into() } else { "bad".into() },
            feedback_kind: if e { FeedbackKind::E } else { FeedbackKind::N },
            bundle_path: format!("q{:02}", i + 1),
        }).collect();
        let manifest = StudyManifest { schema_version: 1, seed: 0, level: ExaggerationLevel::Medium, questions };
        let mut responses = Vec::new();
        let mut correct = 0;
        for p in 0..3 {
            for q in &manifest.questions {
                let right = answers[(p * 10 + q.question_id) % answers.len()];
                correct += usize::from(right);
                let answer = if right { q.rendered_word.clone() } else if q.rendered_word == "bed" { "bad".into() } else { "bed".into() };
                responses.push(Response { participant: format!("p{p}"), question_id: q.question_id, answer });
            }
        }
        let r = score(&manifest, &ResponseSheet { responses }).unwrap();
        prop_assert_eq!(r.correct_e + r.correct_n, correct);
        prop_assert_eq!(r.total_e + r.total_n, 3 * manifest.questions.len());
        let acc = |c: usize, t: usize| if t == 0 { 0.0 } else { (c as f64 / t as f64 * 10_000.0).round() / 10_000.0 };
        prop_assert_eq!(r.accuracy_e, acc(r.correct_e, r.total_e));
        prop_assert_eq!(r.accuracy_n, acc(r.correct_n, r.total_n));
    }
}
