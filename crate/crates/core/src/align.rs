//! Transcript-level mispronunciation diagnosis.
//!
//! The learner's phones are aligned against the reference with unit-cost
//! edit distance. Every reference phone that was substituted or deleted,
//! plus the reference phone an insertion intrudes upon, becomes an
//! emphasis target.

use serde::{Deserialize, Serialize};

use crate::phone::{Phone, PhoneError, Utterance, PHONE_COUNT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Match,
    Substitute,
    Delete,
    Insert,
}

/// One column of an alignment. `Delete` consumes a reference phone only,
/// `Insert` a learner phone only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlignmentStep {
    pub kind: StepKind,
    pub ref_index: Option<usize>,
    pub hyp_index: Option<usize>,
}

impl AlignmentStep {
    fn pair(kind: StepKind, r: usize, h: usize) -> Self {
        AlignmentStep {
            kind,
            ref_index: Some(r),
            hyp_index: Some(h),
        }
    }

    /// The same column seen from the other side: deletions become insertions.
    pub fn swapped(self) -> Self {
        let kind = match self.kind {
            StepKind::Delete => StepKind::Insert,
            StepKind::Insert => StepKind::Delete,
            k => k,
        };
        AlignmentStep {
            kind,
            ref_index: self.hyp_index,
            hyp_index: self.ref_index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnosis {
    pub steps: Vec<AlignmentStep>,
    pub cost: u32,
    /// Sorted, deduplicated reference indices blamed for an error.
    pub mispronounced_ref_indices: Vec<usize>,
}

impl Diagnosis {
    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }

    pub fn is_clean(&self) -> bool {
        self.cost == 0
    }
}

/// Aligns learner phones against reference phones.
pub fn align(reference: &Utterance, hyp: &Utterance) -> Diagnosis {
    align_phones(reference.phones(), hyp.phones())
}

/// Longest reference handled by the bit-parallel path.
const WORD_BITS: usize = 64;
/// Learner lengths below this keep their column masks on the stack.
const STACK_COLUMNS: usize = 8;

/// Slice form of [`align`]; an empty side is allowed here.
///
/// References of up to 64 phones use a bit-parallel edit distance that
/// keeps the cost differences between neighbouring table cells as bit
/// masks, one set per learner phone. Longer references fall back to the
/// plain table. Both give identical results.
pub fn align_phones(reference: &[Phone], hyp: &[Phone]) -> Diagnosis {
    let (n, m) = (reference.len(), hyp.len());
    if n == 0 || n > WORD_BITS {
        return align_table(reference, hyp);
    }
    if m < STACK_COLUMNS {
        let mut cols = [Column::default(); STACK_COLUMNS];
        align_bits(reference, hyp, &mut cols[..=m])
    } else {
        align_bits(reference, hyp, &mut vec![Column::default(); m + 1])
    }
}

/// Cost differences along one table column `j`, one bit per row.
#[derive(Debug, Clone, Copy, Default)]
struct Column {
    /// Bit `i-1` set when `d[i][j] - d[i-1][j]` is +1 (`up_minus` for -1).
    up_plus: u64,
    up_minus: u64,
    /// Bit `i` set when `d[i][j] - d[i][j-1]` is +1 (`left_minus` for -1).
    left_plus: u64,
    left_minus: u64,
}

fn align_bits(reference: &[Phone], hyp: &[Phone], cols: &mut [Column]) -> Diagnosis {
    let n = reference.len();
    let mask = low_bits(n);
    let mut peq = [0u64; PHONE_COUNT];
    for (i, &p) in reference.iter().enumerate() {
        peq[p as usize] |= 1 << i;
    }
    let (mut p, mut q) = (mask, 0u64);
    let mut total = n as u32;
    cols[0].up_plus = p;
    for (j, &c) in hyp.iter().enumerate() {
        let eq = peq[c as usize];
        let xv = eq | q;
        let xh = ((eq & p).wrapping_add(p) ^ p) | eq;
        let ph = q | !(xh | p);
        let mh = p & xh;
        let last = 1 << (n - 1);
        total = total + u32::from(ph & last != 0) - u32::from(mh & last != 0);
        // the top row grows by one per column, so a +1 enters at bit 0
        let ph = (ph << 1) | 1;
        let mh = mh << 1;
        p = (mh | !(xv | ph)) & mask;
        q = ph & xv & mask;
        cols[j + 1] = Column {
            up_plus: p,
            up_minus: q,
            left_plus: ph,
            left_minus: mh,
        };
    }
    trace(reference, hyp, total, |i, j| {
        let col = &cols[j];
        let k = i - 1;
        let up = (col.up_plus >> k & 1) as i32 - (col.up_minus >> k & 1) as i32;
        let left = (col.left_plus >> k & 1) as i32 - (col.left_minus >> k & 1) as i32;
        (up, left)
    })
}

fn low_bits(i: usize) -> u64 {
    if i >= WORD_BITS {
        u64::MAX
    } else {
        (1 << i) - 1
    }
}

fn align_table(reference: &[Phone], hyp: &[Phone]) -> Diagnosis {
    let n = reference.len();
    let m = hyp.len();
    let width = m + 1;
    let mut dist = vec![0u32; (n + 1) * width];
    for j in 0..=m {
        dist[j] = j as u32;
    }
    for i in 1..=n {
        let row = i * width;
        let prev = row - width;
        dist[row] = i as u32;
        for j in 1..=m {
            let sub = dist[prev + j - 1] + u32::from(reference[i - 1] != hyp[j - 1]);
            let del = dist[prev + j] + 1;
            let ins = dist[row + j - 1] + 1;
            dist[row + j] = sub.min(del).min(ins);
        }
    }
    let d = |i: usize, j: usize| dist[i * width + j] as i32;
    trace(reference, hyp, dist[n * width + m], |i, j| {
        (d(i, j) - d(i - 1, j), d(i - 1, j) - d(i - 1, j - 1))
    })
}

/// Walks back from the corner; at each cell prefer the diagonal, then
/// deletion, then insertion. For `i, j >= 1`, `deltas(i, j)` returns
/// `d[i][j] - d[i-1][j]` and `d[i-1][j] - d[i-1][j-1]`.
fn trace(reference: &[Phone], hyp: &[Phone], total: u32, deltas: impl Fn(usize, usize) -> (i32, i32)) -> Diagnosis {
    let (n, m) = (reference.len(), hyp.len());
    let mut steps = Vec::with_capacity(n + m);
    // each error step blames at most one phone
    let mut blamed: Vec<usize> = Vec::with_capacity(if total == 0 { 0 } else { (total as usize).min(n) });
    let mut blame = |r: usize| {
        if blamed.last() != Some(&r) {
            blamed.push(r);
        }
    };
    let delete = |i| AlignmentStep {
        kind: StepKind::Delete,
        ref_index: Some(i),
        hyp_index: None,
    };
    let insert = |j| AlignmentStep {
        kind: StepKind::Insert,
        ref_index: None,
        hyp_index: Some(j),
    };
    // An insertion is blamed on the next reference phone, or on the last one
    // when it trails the utterance. Walking backwards, the next reference
    // phone is the one consumed most recently.
    let mut next_ref = n.checked_sub(1);
    let (mut i, mut j) = (n, m);
    while i > 0 && j > 0 {
        let (up, left) = deltas(i, j);
        let (r, h) = (reference[i - 1], hyp[j - 1]);
        // d[i-1][j-1] = d[i][j] - up - left
        if up + left == i32::from(r != h) {
            i -= 1;
            j -= 1;
            let kind = if r == h {
                StepKind::Match
            } else {
                blame(i);
                StepKind::Substitute
            };
            next_ref = Some(i);
            steps.push(AlignmentStep::pair(kind, i, j));
        } else if up == 1 {
            i -= 1;
            blame(i);
            next_ref = Some(i);
            steps.push(delete(i));
        } else {
            j -= 1;
            if let Some(r) = next_ref {
                blame(r);
            }
            steps.push(insert(j));
        }
    }
    while i > 0 {
        i -= 1;
        blame(i);
        steps.push(delete(i));
    }
    while j > 0 {
        j -= 1;
        if let Some(r) = next_ref {
            blame(r);
        }
        steps.push(insert(j));
    }
    steps.reverse();
    blamed.reverse();

    Diagnosis {
        cost: total,
        steps,
        mispronounced_ref_indices: blamed,
    }
}

/// Turns a diagnosis into the emphasis vector over the reference.
///
/// Silence can never carry emphasis, so a blamed `SIL` hands its flag to the
/// nearest following non-silent phone, falling back to the nearest preceding
/// one. A reference made only of silence stays unflagged.
pub fn emphasis_from_diagnosis(
    diagnosis: &Diagnosis,
    reference: &Utterance,
) -> Result<Utterance, PhoneError> {
    let phones = reference.phones();
    let mut flags = vec![false; phones.len()];
    for &r in &diagnosis.mispronounced_ref_indices {
        let target = if !phones[r].is_silence() {
            Some(r)
        } else {
            (r + 1..phones.len())
                .find(|&k| !phones[k].is_silence())
                .or_else(|| (0..r).rev().find(|&k| !phones[k].is_silence()))
        };
        if let Some(t) = target {
            flags[t] = true;
        }
    }
    reference.with_emphasis(flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phone::parse_script;
    use Phone::*;

    fn utt(s: &str) -> Utterance {
        parse_script(s).unwrap()
    }

    #[test]
    fn bit_parallel_matches_table() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let pool = [B, AA, S, IY, N, T];
        for round in 0..3000 {
            let max = if round % 10 == 0 { 70 } else { 9 };
            let seq = |rng: &mut rand_chacha::ChaCha8Rng| {
                let len = rng.gen_range(0..=max);
                (0..len).map(|_| pool[rng.gen_range(0..pool.len())]).collect::<Vec<_>>()
            };
            let (r, h) = (seq(&mut rng), seq(&mut rng));
            assert_eq!(align_phones(&r, &h), align_table(&r, &h), "{r:?} / {h:?}");
        }
    }

    fn kinds(d: &Diagnosis) -> Vec<StepKind> {
        d.steps.iter().map(|s| s.kind).collect()
    }

    #[test]
    fn identical_sequences_match() {
        let d = align(&utt("B EH D"), &utt("B EH D"));
        assert_eq!(d.cost, 0);
        assert_eq!(kinds(&d), vec![StepKind::Match; 3]);
        assert!(d.mispronounced_ref_indices.is_empty());
    }

    #[test]
    fn substitution() {
        let d = align(&utt("B EH D"), &utt("B AE D"));
        assert_eq!(d.cost, 1);
        assert_eq!(d.steps[1], AlignmentStep::pair(StepKind::Substitute, 1, 1));
        assert_eq!(d.mispronounced_ref_indices, vec![1]);
    }

    #[test]
    fn deletion() {
        let d = align(&utt("S T R IY T"), &utt("S T IY T"));
        assert_eq!(d.cost, 1);
        let del: Vec<_> = d.steps.iter().filter(|s| s.kind == StepKind::Delete).collect();
        assert_eq!(del.len(), 1);
        assert_eq!(del[0].ref_index, Some(2));
        assert_eq!(del[0].hyp_index, None);
    }

    #[test]
    fn tie_break_prefers_diagonal_then_delete() {
        // [A B] vs [B]: delete A then match B, or substitute A->B then delete B.
        // Both cost 1; traceback from the end prefers the diagonal match.
        let d = align_phones(&[AA, B], &[B]);
        assert_eq!(kinds(&d), vec![StepKind::Delete, StepKind::Match]);
        // [A] vs [B C]: sub+ins or ins+sub, diagonal preferred at the last cell.
        let d = align_phones(&[AA], &[B, D]);
        assert_eq!(d.cost, 2);
        assert_eq!(kinds(&d), vec![StepKind::Insert, StepKind::Substitute]);
    }

    #[test]
    fn emphasis_examples() {
        let r = utt("B EH D");
        let clean = align(&r, &utt("B EH D"));
        assert!(!emphasis_from_diagnosis(&clean, &r).unwrap().has_emphasis());

        let sub = align(&r, &utt("B AE D"));
        let e = emphasis_from_diagnosis(&sub, &r).unwrap();
        assert_eq!(e.emphasis(), &[false, true, false]);

        let ins = align(&r, &utt("B AH EH D"));
        assert_eq!(ins.cost, 1);
        assert_eq!(ins.count(StepKind::Insert), 1);
        let e = emphasis_from_diagnosis(&ins, &r).unwrap();
        assert_eq!(e.emphasis(), &[false, true, false]);
    }

    #[test]
    fn trailing_insert_blames_last_phone() {
        let r = utt("B EH D");
        let d = align(&r, &utt("B EH D Z"));
        let e = emphasis_from_diagnosis(&d, &r).unwrap();
        assert_eq!(e.emphasis(), &[false, false, true]);
    }

    #[test]
    fn silence_hands_emphasis_on() {
        let r = utt("SIL B EH SIL");
        let d = align(&r, &utt("AA B EH SIL"));
        assert_eq!(d.mispronounced_ref_indices, vec![0]);
        let e = emphasis_from_diagnosis(&d, &r).unwrap();
        assert_eq!(e.emphasis(), &[false, true, false, false]);

        let d = align(&r, &utt("SIL B EH Z"));
        let e = emphasis_from_diagnosis(&d, &r).unwrap();
        assert_eq!(e.emphasis(), &[false, false, true, false]);

        let all_sil = utt("SIL");
        let d = align(&all_sil, &utt("B"));
        assert_eq!(d.cost, 1);
        assert!(!emphasis_from_diagnosis(&d, &all_sil).unwrap().has_emphasis());
    }

    #[test]
    fn swapped_steps() {
        let s = AlignmentStep {
            kind: StepKind::Delete,
            ref_index: Some(3),
            hyp_index: None,
        };
        assert_eq!(
            s.swapped(),
            AlignmentStep {
                kind: StepKind::Insert,
                ref_index: None,
                hyp_index: Some(3)
            }
        );
    }
}
