//! Error-correcting codes over small alphabets: Hamming distance, minimum
//! distance and capabilities, nearest-codeword decoding, the repetition
//! code, design-derived codes, the exact sphere-packing perfection test,
//! and a seeded noisy-channel simulation.

use crate::designs::BlockDesign;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub const MAX_DESIGN_CODE_POINTS: usize = 16;

#[derive(Debug, Error, PartialEq)]
pub enum CodeError {
    #[error("words have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("word has length {0}, code length is {1}")]
    BadWordLength(usize, usize),
    #[error("symbol {0} outside alphabet of size {1}")]
    BadSymbol(u8, u64),
    #[error("a code needs at least one codeword")]
    EmptyCode,
    #[error("duplicate codeword")]
    DuplicateCodeword,
    #[error("minimum distance needs at least two codewords")]
    SingletonCode,
    #[error("design has {0} points, cap is {MAX_DESIGN_CODE_POINTS}")]
    DesignTooLarge(usize),
    #[error("operation requires a binary code")]
    NotBinary,
    #[error("code has no message map")]
    NoMessageMap,
    #[error("flip probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("unknown message symbol {0:?}")]
    UnknownMessage(String),
}

pub type Word = Vec<u8>;

/// A fixed-length code over the alphabet `0..q`, with an optional
/// message-symbol-to-codeword map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Code {
    pub length: usize,
    pub alphabet_size: u64,
    pub codewords: Vec<Word>,
    pub message_map: Option<Vec<(String, Word)>>,
}

impl Code {
    pub fn new(
        length: usize,
        alphabet_size: u64,
        codewords: Vec<Word>,
        message_map: Option<Vec<(String, Word)>>,
    ) -> Result<Self, CodeError> {
        if codewords.is_empty() {
            return Err(CodeError::EmptyCode);
        }
        for w in &codewords {
            check_word(w, length, alphabet_size)?;
        }
        let mut sorted = codewords.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != codewords.len() {
            return Err(CodeError::DuplicateCodeword);
        }
        Ok(Code {
            length,
            alphabet_size,
            codewords,
            message_map,
        })
    }
}

fn check_word(w: &Word, length: usize, q: u64) -> Result<(), CodeError> {
    if w.len() != length {
        return Err(CodeError::BadWordLength(w.len(), length));
    }
    if let Some(&s) = w.iter().find(|&&s| s as u64 >= q) {
        return Err(CodeError::BadSymbol(s, q));
    }
    Ok(())
}

/// Number of differing positions.
pub fn hamming_distance(u: &[u8], v: &[u8]) -> Result<usize, CodeError> {
    if u.len() != v.len() {
        return Err(CodeError::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count())
}

/// Minimum pairwise distance and the detection/correction capabilities it
/// implies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub min_distance: usize,
    pub detect: usize,
    pub correct: usize,
}

pub fn min_distance(c: &Code) -> Result<DistanceReport, CodeError> {
    if c.codewords.len() < 2 {
        return Err(CodeError::SingletonCode);
    }
    let mut d = usize::MAX;
    for (i, u) in c.codewords.iter().enumerate() {
        for v in &c.codewords[i + 1..] {
            d = d.min(hamming_distance(u, v)?);
        }
    }
    Ok(DistanceReport {
        min_distance: d,
        detect: d - 1,
        correct: (d - 1) / 2,
    })
}

/// Outcome of nearest-codeword decoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Decoded {
    Unique { codeword: Word, distance: usize },
    Ambiguous { tied: Vec<Word>, distance: usize },
}

/// The codeword at minimum Hamming distance from `w`, or the tied set.
pub fn nearest_decode(c: &Code, w: &[u8]) -> Result<Decoded, CodeError> {
    check_word(&w.to_vec(), c.length, c.alphabet_size)?;
    let mut best = usize::MAX;
    let mut tied: Vec<Word> = Vec::new();
    for cw in &c.codewords {
        let d = hamming_distance(cw, w)?;
        if d < best {
            best = d;
            tied = vec![cw.clone()];
        } else if d == best {
            tied.push(cw.clone());
        }
    }
    if tied.len() == 1 {
        Ok(Decoded::Unique {
            codeword: tied.pop().unwrap(),
            distance: best,
        })
    } else {
        Ok(Decoded::Ambiguous {
            tied,
            distance: best,
        })
    }
}

/// The binary repetition code `0 -> 0^r, 1 -> 1^r`.
pub fn repetition_code(r: usize) -> Code {
    assert!(r >= 1);
    Code {
        length: r,
        alphabet_size: 2,
        codewords: vec![vec![0; r], vec![1; r]],
        message_map: Some(vec![
            ("0".to_string(), vec![0; r]),
            ("1".to_string(), vec![1; r]),
        ]),
    }
}

/// Binary code of block incidence vectors; when `extended`, also the
/// complements and the all-zero and all-one words.
pub fn code_from_design(d: &BlockDesign, extended: bool) -> Result<Code, CodeError> {
    if d.v > MAX_DESIGN_CODE_POINTS {
        return Err(CodeError::DesignTooLarge(d.v));
    }
    let incidence = |b: &Vec<usize>| -> Word {
        let mut w = vec![0u8; d.v];
        for &p in b {
            w[p] = 1;
        }
        w
    };
    let mut codewords: Vec<Word> = d.blocks.iter().map(incidence).collect();
    if extended {
        let complements: Vec<Word> = codewords
            .iter()
            .map(|w| w.iter().map(|&b| 1 - b).collect())
            .collect();
        codewords.extend(complements);
        codewords.push(vec![0; d.v]);
        codewords.push(vec![1; d.v]);
    }
    codewords.sort();
    codewords.dedup();
    Code::new(d.v, 2, codewords, None)
}

/// Exact sphere-packing equality: `|C| * sum_{i<=t} C(n,i)(q-1)^i = q^n`,
/// in integer arithmetic throughout.
pub fn is_perfect(c: &Code) -> Result<bool, CodeError> {
    let t = min_distance(c)?.correct as u128;
    let n = c.length as u128;
    let q = c.alphabet_size as u128;
    let mut ball = 0u128;
    for i in 0..=t {
        let mut binom = 1u128;
        for j in 0..i {
            binom = binom * (n - j) / (j + 1);
        }
        ball += binom * (q - 1).pow(i as u32);
    }
    Ok(c.codewords.len() as u128 * ball == q.pow(n as u32))
}

/// Deterministic, seeded channel simulation report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelReport {
    pub trials: u64,
    pub successes: u64,
    pub per_letter_success_rate: f64,
    pub seed: u64,
    pub flip_probability: f64,
    pub rng: &'static str,
}

/// Per trial: encode a uniformly random message letter, flip each
/// transmitted symbol independently with probability `p`, nearest-decode.
/// Ambiguous decodes count as failures. Identical inputs and seed give a
/// byte-identical report.
pub fn channel_simulate(
    c: &Code,
    flip_probability: f64,
    trials: u64,
    seed: u64,
) -> Result<ChannelReport, CodeError> {
    if !(0.0..=1.0).contains(&flip_probability) {
        return Err(CodeError::BadProbability(flip_probability));
    }
    if c.alphabet_size != 2 {
        return Err(CodeError::NotBinary);
    }
    let map = c.message_map.as_ref().ok_or(CodeError::NoMessageMap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0u64;
    for _ in 0..trials {
        let (_, codeword) = &map[rng.gen_range(0..map.len())];
        let mut received = codeword.clone();
        for s in received.iter_mut() {
            if rng.gen::<f64>() < flip_probability {
                *s = 1 - *s;
            }
        }
        if let Decoded::Unique { codeword: decoded, .. } = nearest_decode(c, &received)? {
            if &decoded == codeword {
                successes += 1;
            }
        }
    }
    Ok(ChannelReport {
        trials,
        successes,
        per_letter_success_rate: if trials == 0 {
            1.0
        } else {
            successes as f64 / trials as f64
        },
        seed,
        flip_probability,
        rng: "chacha8",
    })
}

/// Decodes a whitespace-separated sequence of received letters back to the
/// message string via the code's message map.
pub fn decode_transmission(c: &Code, transmission: &str) -> Result<String, CodeError> {
    let map = c.message_map.as_ref().ok_or(CodeError::NoMessageMap)?;
    let mut message = String::new();
    for letter in transmission.split_whitespace() {
        let word: Word = letter
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| CodeError::UnknownMessage(letter.to_string()))
            })
            .collect::<Result<_, _>>()?;
        check_word(&word, c.length, c.alphabet_size)?;
        match nearest_decode(c, &word)? {
            Decoded::Unique { codeword, .. } => {
                let (msg, _) = map
                    .iter()
                    .find(|(_, cw)| cw == &codeword)
                    .ok_or_else(|| CodeError::UnknownMessage(letter.to_string()))?;
                message.push_str(msg);
            }
            Decoded::Ambiguous { .. } => {
                message.push('?');
            }
        }
    }
    Ok(message)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::design_from_plane;
    use crate::fingeo::projective_plane;
    use crate::gfield::prime_field;

    fn fano_extended() -> Code {
        let plane = projective_plane(&prime_field(2).unwrap()).unwrap();
        let d = design_from_plane(&plane).unwrap();
        code_from_design(&d, true).unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_distance(&[0, 0, 0], &[0, 0, 0]).unwrap(), 0);
        assert_eq!(hamming_distance(&[0, 1, 0], &[0, 0, 0]).unwrap(), 1);
        assert_eq!(hamming_distance(&[0, 1, 0], &[1, 1, 1]).unwrap(), 2);
        assert!(hamming_distance(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn min_distance_examples() {
        let rep3 = repetition_code(3);
        let r = min_distance(&rep3).unwrap();
        assert_eq!((r.min_distance, r.detect, r.correct), (3, 2, 1));

        let fano = fano_extended();
        assert_eq!(min_distance(&fano).unwrap().min_distance, 3);

        let c = Code::new(2, 2, vec![vec![0, 0], vec![0, 1]], None).unwrap();
        let r = min_distance(&c).unwrap();
        assert_eq!((r.min_distance, r.correct), (1, 0));

        let single = Code::new(1, 2, vec![vec![0]], None).unwrap();
        assert_eq!(min_distance(&single), Err(CodeError::SingletonCode));
    }

    #[test]
    fn nearest_decode_examples() {
        let rep3 = repetition_code(3);
        match nearest_decode(&rep3, &[0, 1, 0]).unwrap() {
            Decoded::Unique { codeword, distance } => {
                assert_eq!(codeword, vec![0, 0, 0]);
                assert_eq!(distance, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let c = Code::new(2, 2, vec![vec![0, 0], vec![1, 1]], None).unwrap();
        match nearest_decode(&c, &[0, 1]).unwrap() {
            Decoded::Ambiguous { tied, .. } => {
                assert_eq!(tied, vec![vec![0, 0], vec![1, 1]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(nearest_decode(&rep3, &[0, 1]).is_err());
        assert!(nearest_decode(&rep3, &[0, 1, 7]).is_err());
    }

    #[test]
    fn decode_transmission_example() {
        let rep3 = repetition_code(3);
        assert_eq!(
            decode_transmission(&rep3, "010 111 110 000").unwrap(),
            "0110"
        );
    }

    #[test]
    fn decoding_fixes_codewords() {
        for c in [repetition_code(3), repetition_code(5), fano_extended()] {
            for w in &c.codewords {
                match nearest_decode(&c, w).unwrap() {
                    Decoded::Unique { codeword, distance } => {
                        assert_eq!(&codeword, w);
                        assert_eq!(distance, 0);
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
        }
    }

    #[test]
    fn decoding_within_radius_recovers() {
        // every word within the correction radius decodes to its codeword
        for c in [repetition_code(3), repetition_code(5), fano_extended()] {
            let t = min_distance(&c).unwrap().correct;
            for cw in &c.codewords {
                // all words at distance <= t: flip up to t positions
                let positions: Vec<usize> = (0..c.length).collect();
                let mut stack = vec![(Vec::new(), 0usize)];
                while let Some((flips, start)) = stack.pop() {
                    let mut w = cw.clone();
                    for &f in &flips {
                        w[f] = 1 - w[f];
                    }
                    match nearest_decode(&c, &w).unwrap() {
                        Decoded::Unique { codeword, .. } => assert_eq!(&codeword, cw),
                        other => panic!("unexpected {other:?}"),
                    }
                    if flips.len() < t {
                        for &p in &positions[start..] {
                            let mut next = flips.clone();
                            next.push(p);
                            stack.push((next, p + 1));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn repetition_codes() {
        assert_eq!(repetition_code(3).codewords, vec![vec![0; 3], vec![1; 3]]);
        assert_eq!(min_distance(&repetition_code(1)).unwrap().min_distance, 1);
        let r5 = min_distance(&repetition_code(5)).unwrap();
        assert_eq!((r5.min_distance, r5.correct), (5, 2));
    }

    #[test]
    fn design_code_counts() {
        let fano = fano_extended();
        assert_eq!(fano.codewords.len(), 16);
        assert_eq!(fano.length, 7);
        // closed under complement, contains 0 and 1
        assert!(fano.codewords.contains(&vec![0; 7]));
        assert!(fano.codewords.contains(&vec![1; 7]));
        for w in &fano.codewords {
            let comp: Word = w.iter().map(|&b| 1 - b).collect();
            assert!(fano.codewords.contains(&comp));
        }

        let plane = projective_plane(&prime_field(2).unwrap()).unwrap();
        let d = design_from_plane(&plane).unwrap();
        let plain = code_from_design(&d, false).unwrap();
        assert_eq!(plain.codewords.len(), d.blocks.len());
    }

    #[test]
    fn perfection_tests() {
        assert!(is_perfect(&repetition_code(3)).unwrap());
        assert!(is_perfect(&fano_extended()).unwrap());
        let c = Code::new(3, 2, vec![vec![0, 0, 0], vec![1, 1, 1], vec![1, 1, 0]], None).unwrap();
        assert!(!is_perfect(&c).unwrap());
        assert!(!is_perfect(&repetition_code(4)).unwrap());
    }

    #[test]
    fn channel_simulation_extremes() {
        let rep3 = repetition_code(3);
        let clean = channel_simulate(&rep3, 0.0, 500, 1).unwrap();
        assert_eq!(clean.per_letter_success_rate, 1.0);
        let noisy = channel_simulate(&rep3, 1.0, 500, 1).unwrap();
        assert_eq!(noisy.per_letter_success_rate, 0.0);
    }

    #[test]
    fn channel_simulation_reproducible() {
        let rep3 = repetition_code(3);
        let a = channel_simulate(&rep3, 0.05, 2000, 42).unwrap();
        let b = channel_simulate(&rep3, 0.05, 2000, 42).unwrap();
        assert_eq!(a, b);
        let c = channel_simulate(&rep3, 0.05, 2000, 43).unwrap();
        assert_ne!(a.successes, c.successes);
    }

    #[test]
    fn channel_simulation_matches_analytic_rate() {
        let rep3 = repetition_code(3);
        let p: f64 = 0.01;
        let n = 100_000u64;
        let report = channel_simulate(&rep3, p, n, 7).unwrap();
        let expected = 1.0 - 3.0 * p * p + 2.0 * p * p * p;
        let se = (expected * (1.0 - expected) / n as f64).sqrt();
        assert!(
            (report.per_letter_success_rate - expected).abs() <= 3.0 * se,
            "rate {} vs {}",
            report.per_letter_success_rate,
            expected
        );
    }

    #[test]
    fn channel_requires_map_and_probability() {
        let bare = Code::new(2, 2, vec![vec![0, 0], vec![1, 1]], None).unwrap();
        assert_eq!(
            channel_simulate(&bare, 0.1, 10, 0),
            Err(CodeError::NoMessageMap)
        );
        let rep3 = repetition_code(3);
        assert!(channel_simulate(&rep3, 1.5, 10, 0).is_err());
    }
}
