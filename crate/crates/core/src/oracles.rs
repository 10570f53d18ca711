//! Brute-force reference implementations. They favor obviousness over speed
//! and exist to pin down the semantics of the real structures in tests.

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::parser::Factor;

/// Greedy LZ77 parse of `text` straight from the definition: each phrase is
/// the longest prefix of the remaining text that also starts at an earlier
/// position (overlap allowed), followed by one fresh symbol. `text` must end
/// with a unique `$`.
///
/// `pos` is the leftmost earlier occurrence; other valid sources exist in
/// general, so compare sources by content rather than by value.
pub fn naive_lz77(text: &[Symbol]) -> Result<Vec<Factor>> {
    let ends = text.iter().filter(|&&c| c == Symbol::TERM_LZ).count();
    if ends != 1 || text.last() != Some(&Symbol::TERM_LZ) {
        return Err(Error::Contract(
            "text must end with a single '$' and contain no other".into(),
        ));
    }
    let n = text.len();
    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        let mut best: Option<(usize, usize)> = None;
        for t in 0..start {
            let mut l = 0;
            while start + l < n - 1 && text[t + l] == text[start + l] {
                l += 1;
            }
            if l > 0 && best.is_none_or(|(_, bl)| l > bl) {
                best = Some((t, l));
            }
        }
        let (pos, len) = match best {
            Some((t, l)) => (Some(t), l),
            None => (None, 0),
        };
        out.push(Factor {
            pos,
            len,
            c: text[start + len],
        });
        start += len + 1;
    }
    Ok(out)
}

/// Suffix array by full comparison sort of all suffixes.
pub fn naive_suffix_array(s: &[Symbol]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..s.len()).collect();
    sa.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
    sa
}

/// BWT from the suffix array: each suffix's preceding symbol, cyclically.
pub fn naive_bwt(s: &[Symbol]) -> Vec<Symbol> {
    naive_suffix_array(s)
        .into_iter()
        .map(|i| s[(i + s.len() - 1) % s.len()])
        .collect()
}

/// Maximal equal-letter runs in `s`.
pub fn run_count<T: PartialEq>(s: &[T]) -> usize {
    if s.is_empty() {
        return 0;
    }
    1 + s.windows(2).filter(|w| w[0] != w[1]).count()
}

/// The reversed, terminated text `←(#T$)` together with its suffix array.
#[derive(Clone, Debug)]
pub struct OracleText {
    /// `T` with `$`, in text order.
    pub text: Vec<Symbol>,
    /// `←S` for `S = #T`.
    pub reversed: Vec<Symbol>,
    pub sa: Vec<usize>,
}

impl OracleText {
    /// `text` is `T` including its final `$`.
    pub fn new(text: &[Symbol]) -> Self {
        let mut reversed: Vec<Symbol> = text.iter().rev().copied().collect();
        reversed.push(Symbol::TERM_BWT);
        let sa = naive_suffix_array(&reversed);
        OracleText {
            text: text.to_vec(),
            reversed,
            sa,
        }
    }

    pub fn bwt(&self) -> Vec<Symbol> {
        naive_bwt(&self.reversed)
    }

    /// Inclusive BWT interval of the rows prefixed by `pattern`, or `None`.
    pub fn interval(&self, pattern: &[Symbol]) -> Option<(usize, usize)> {
        let rows: Vec<usize> = (0..self.sa.len())
            .filter(|&k| self.reversed[self.sa[k]..].starts_with(pattern))
            .collect();
        Some((*rows.first()?, *rows.last()?))
    }

    /// BWT row whose preceding symbol is `text[j]` (text position `j`).
    pub fn row_of(&self, j: usize) -> usize {
        let n = self.text.len();
        // text[j] sits at index n-1-j of reversed; its row starts right after
        let suffix = n - j;
        self.sa
            .iter()
            .position(|&s| s == suffix)
            .expect("suffix exists")
    }
}

/// Number of occurrences of `pattern` in `s` (overlapping).
pub fn count_occurrences<T: PartialEq>(s: &[T], pattern: &[T]) -> usize {
    if pattern.is_empty() {
        return s.len() + 1;
    }
    s.windows(pattern.len()).filter(|w| *w == pattern).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{format_symbols, parse_symbols, terminated};

    fn f(pos: Option<usize>, len: usize, c: &str) -> Factor {
        Factor {
            pos,
            len,
            c: parse_symbols(c)[0],
        }
    }

    #[test]
    fn lz77_examples() {
        assert_eq!(
            naive_lz77(&parse_symbols("aaaa$")).unwrap(),
            vec![f(None, 0, "a"), f(Some(0), 3, "$")]
        );
        assert_eq!(
            naive_lz77(&parse_symbols("ab$")).unwrap(),
            vec![f(None, 0, "a"), f(None, 0, "b"), f(None, 0, "$")]
        );
        assert_eq!(
            naive_lz77(&parse_symbols("a$")).unwrap(),
            vec![f(None, 0, "a"), f(None, 0, "$")]
        );
        assert_eq!(
            naive_lz77(&parse_symbols("abab$")).unwrap(),
            vec![f(None, 0, "a"), f(None, 0, "b"), f(Some(0), 2, "$")]
        );
        assert!(naive_lz77(&parse_symbols("ab")).is_err());
        assert!(naive_lz77(&parse_symbols("a$b$")).is_err());
    }

    #[test]
    fn bwt_examples() {
        assert_eq!(format_symbols(&naive_bwt(&parse_symbols("$ba#"))), "a#b$");
        assert_eq!(format_symbols(&naive_bwt(&parse_symbols("#"))), "#");
        let o = OracleText::new(&terminated(b"ab"));
        assert_eq!(format_symbols(&o.bwt()), "a#b$");
        // text position 0 ('a') is preceded-by in row 0, the '#' row
        assert_eq!(o.row_of(0), 0);
    }

    #[test]
    fn run_count_examples() {
        assert_eq!(run_count(&parse_symbols("bc#bbbbccccbaaaaaaaaaaa")), 7);
        assert_eq!(run_count(b"aaaa"), 1);
        assert_eq!(run_count::<u8>(&[]), 0);
    }
}
