#![allow(dead_code)]

pub mod existence;
pub mod fuzz;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlz77::alphabet::terminated;
use rlz77::{Factor, Symbol};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` bytes drawn uniformly from the first `sigma` lowercase letters.
pub fn random_text(rng: &mut impl Rng, n: usize, sigma: u8) -> Vec<u8> {
    (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

/// A random block of `block` bytes repeated `copies` times, each copy with
/// `mutations` bytes overwritten at random.
pub fn repetitive(rng: &mut impl Rng, block: usize, copies: usize, mutations: usize) -> Vec<u8> {
    let base: Vec<u8> = (0..block).map(|_| rng.gen()).collect();
    let mut out = Vec::with_capacity(block * copies);
    for _ in 0..copies {
        let start = out.len();
        out.extend_from_slice(&base);
        for _ in 0..mutations {
            let at = start + rng.gen_range(0..block);
            out[at] = rng.gen();
        }
    }
    out
}

/// Checks `factors` against `reference` (both parses of `bytes`): the
/// lengths and trailing symbols must agree exactly, and every source must be
/// an earlier copy of its phrase. Returns a description of the first problem.
pub fn compare_parse(bytes: &[u8], factors: &[Factor], reference: &[Factor]) -> Option<String> {
    if factors.len() != reference.len() {
        return Some(format!(
            "{} factors, oracle has {}",
            factors.len(),
            reference.len()
        ));
    }
    let text = terminated(bytes);
    let mut start = 0;
    for (i, (f, g)) in factors.iter().zip(reference).enumerate() {
        if (f.len, f.c) != (g.len, g.c) {
            return Some(format!("factor {i}: got {f:?}, oracle {g:?}"));
        }
        if let Some(msg) = check_source(&text, start, f) {
            return Some(format!("factor {i}: {msg}"));
        }
        start += f.len + 1;
    }
    None
}

/// `f` is the factor starting at `start` of the terminated `text`.
pub fn check_source(text: &[Symbol], start: usize, f: &Factor) -> Option<String> {
    match f.pos {
        None if f.len == 0 => None,
        None => Some(format!("length {} without a source", f.len)),
        Some(_) if f.len == 0 => Some("literal with a source".into()),
        Some(p) if p >= start => Some(format!("source {p} not before start {start}")),
        Some(p) => (0..f.len)
            .any(|t| text[p + t] != text[start + t])
            .then(|| format!("source {p} does not match the phrase at {start}")),
    }
}
