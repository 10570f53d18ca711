use std::fmt;

/// Internal alphabet: the BWT terminator `#`, the LZ77 terminator `$`, then
/// the 256 byte values. Ordering of the codes is the lexicographic order used
/// by the index, so `# < $ < every byte`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u16);

impl Symbol {
    /// `#`, smaller than everything else.
    pub const TERM_BWT: Symbol = Symbol(0);
    /// `$`, closes the text and so the last factor.
    pub const TERM_LZ: Symbol = Symbol(1);
    /// Size of the internal alphabet.
    pub const SIGMA: usize = 258;

    #[inline]
    pub const fn from_byte(b: u8) -> Symbol {
        Symbol(b as u16 + 2)
    }

    /// Returns `None` for the code values outside `0..SIGMA`.
    pub fn from_code(code: u16) -> Option<Symbol> {
        ((code as usize) < Self::SIGMA).then_some(Symbol(code))
    }

    #[inline]
    pub const fn code(self) -> u16 {
        self.0
    }

    /// The input byte, or `None` for the two terminators.
    #[inline]
    pub fn byte(self) -> Option<u8> {
        self.0.checked_sub(2).map(|b| b as u8)
    }

    pub fn is_terminator(self) -> bool {
        self.0 < 2
    }
}

impl From<u8> for Symbol {
    fn from(b: u8) -> Self {
        Symbol::from_byte(b)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.byte() {
            None if *self == Symbol::TERM_BWT => f.write_str("#"),
            None => f.write_str("$"),
            Some(b) if b.is_ascii_graphic() => write!(f, "{}", b as char),
            Some(b) => write!(f, "\\x{b:02x}"),
        }
    }
}

/// `bytes` followed by `$`.
pub fn terminated(bytes: &[u8]) -> Vec<Symbol> {
    bytes
        .iter()
        .map(|&b| Symbol::from_byte(b))
        .chain(std::iter::once(Symbol::TERM_LZ))
        .collect()
}

/// Parses a string of printable characters where `#` and `$` stand for the
/// terminators; handy for writing small test vectors.
pub fn parse_symbols(s: &str) -> Vec<Symbol> {
    s.bytes()
        .map(|b| match b {
            b'#' => Symbol::TERM_BWT,
            b'$' => Symbol::TERM_LZ,
            b => Symbol::from_byte(b),
        })
        .collect()
}

pub fn format_symbols(s: &[Symbol]) -> String {
    s.iter().map(|c| c.to_string()).collect()
}
