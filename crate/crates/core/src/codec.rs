//! On-disk factor formats.
//!
//! **Binary.** The magic `RLZ7` and a version byte, then one record per
//! factor: `pos + 1` as an unsigned LEB128 varint (0 when there is no
//! source), `len` as a varint, then the trailing symbol. A byte other than
//! `0xFF` is written as itself; `0xFF` is escaped as `FF FF` and the `$`
//! terminator as `FF 00`. Varints must be minimal, so decoding and re-encoding
//! a valid file reproduces it byte for byte.
//!
//! **Text.** One `(pos, len, c)` line per factor, `_` for a missing source,
//! `c` as a decimal byte value or `$`. Meant for debugging small inputs.

use std::io::{BufRead, ErrorKind, Read, Write};

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::parser::Factor;

pub const MAGIC: &[u8; 4] = b"RLZ7";
pub const VERSION: u8 = 1;

const ESCAPE: u8 = 0xFF;
const ESCAPED_TERM: u8 = 0x00;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Binary,
    Text,
}

pub fn write_varint<W: Write>(w: &mut W, mut v: u64) -> std::io::Result<()> {
    let mut buf = [0u8; 10];
    let mut i = 0;
    loop {
        let byte = (v & 0x7F) as u8;
        v >>= 7;
        if v == 0 {
            buf[i] = byte;
            i += 1;
            break;
        }
        buf[i] = byte | 0x80;
        i += 1;
    }
    w.write_all(&buf[..i])
}

/// Reads one byte; `None` at end of input.
fn read_byte<R: Read>(r: &mut R) -> Result<Option<u8>> {
    let mut b = [0u8];
    loop {
        match r.read(&mut b) {
            Ok(0) => return Ok(None),
            Ok(_) => return Ok(Some(b[0])),
            Err(e) if e.kind() == ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        }
    }
}

fn need_byte<R: Read>(r: &mut R, what: &str) -> Result<u8> {
    read_byte(r)?.ok_or_else(|| Error::Malformed(format!("truncated {what}")))
}

/// Decodes a minimal LEB128 varint whose first byte has already been read.
fn finish_varint<R: Read>(r: &mut R, first: u8) -> Result<u64> {
    let mut v = (first & 0x7F) as u64;
    let mut byte = first;
    let mut shift = 7;
    while byte & 0x80 != 0 {
        byte = need_byte(r, "varint")?;
        if shift == 63 && byte > 1 || shift > 63 {
            return Err(Error::Malformed("varint overflows 64 bits".into()));
        }
        if byte == 0 {
            return Err(Error::Malformed("non-minimal varint".into()));
        }
        v |= ((byte & 0x7F) as u64) << shift;
        shift += 7;
    }
    Ok(v)
}

pub fn read_varint<R: Read>(r: &mut R) -> Result<u64> {
    let first = need_byte(r, "varint")?;
    finish_varint(r, first)
}

/// Streams factors out in either format.
pub struct FactorWriter<W: Write> {
    out: W,
    format: Format,
}

impl<W: Write> FactorWriter<W> {
    pub fn new(mut out: W, format: Format) -> Result<Self> {
        if format == Format::Binary {
            out.write_all(MAGIC)?;
            out.write_all(&[VERSION])?;
        }
        Ok(FactorWriter { out, format })
    }

    pub fn write(&mut self, f: &Factor) -> Result<()> {
        match self.format {
            Format::Binary => {
                write_varint(&mut self.out, f.pos.map_or(0, |p| p as u64 + 1))?;
                write_varint(&mut self.out, f.len as u64)?;
                match f.c.byte() {
                    Some(ESCAPE) => self.out.write_all(&[ESCAPE, ESCAPE])?,
                    Some(b) => self.out.write_all(&[b])?,
                    None if f.c == Symbol::TERM_LZ => {
                        self.out.write_all(&[ESCAPE, ESCAPED_TERM])?
                    }
                    None => return Err(Error::Contract("'#' never appears in a factor".into())),
                }
            }
            Format::Text => {
                let pos = f.pos.map_or_else(|| "_".to_string(), |p| p.to_string());
                let c = match f.c.byte() {
                    Some(b) => b.to_string(),
                    None if f.c == Symbol::TERM_LZ => "$".to_string(),
                    None => return Err(Error::Contract("'#' never appears in a factor".into())),
                };
                writeln!(self.out, "({pos}, {}, {c})", f.len)?;
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Iterator over the factors of a binary stream.
pub struct BinaryReader<R: Read> {
    input: R,
    failed: bool,
}

impl<R: Read> BinaryReader<R> {
    pub fn new(mut input: R) -> Result<Self> {
        let mut head = [0u8; 5];
        for (i, slot) in head.iter_mut().enumerate() {
            *slot = read_byte(&mut input)?
                .ok_or_else(|| Error::Malformed(format!("header truncated after {i} bytes")))?;
        }
        if &head[..4] != MAGIC {
            return Err(Error::Malformed(
                "not a binary factor file (bad magic)".into(),
            ));
        }
        if head[4] != VERSION {
            return Err(Error::Malformed(format!("unsupported version {}", head[4])));
        }
        Ok(BinaryReader {
            input,
            failed: false,
        })
    }

    fn record(&mut self) -> Result<Option<Factor>> {
        let Some(first) = read_byte(&mut self.input)? else {
            return Ok(None);
        };
        let pos = finish_varint(&mut self.input, first)?;
        let len = read_varint(&mut self.input)?;
        let c = match need_byte(&mut self.input, "symbol")? {
            ESCAPE => match need_byte(&mut self.input, "escape")? {
                ESCAPE => Symbol::from_byte(ESCAPE),
                ESCAPED_TERM => Symbol::TERM_LZ,
                other => return Err(Error::Malformed(format!("unknown escape 0x{other:02x}"))),
            },
            b => Symbol::from_byte(b),
        };
        let to_usize = |v: u64| {
            usize::try_from(v).map_err(|_| Error::Malformed(format!("value {v} too large")))
        };
        Ok(Some(Factor {
            pos: if pos == 0 {
                None
            } else {
                Some(to_usize(pos - 1)?)
            },
            len: to_usize(len)?,
            c,
        }))
    }
}

impl<R: Read> Iterator for BinaryReader<R> {
    type Item = Result<Factor>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let r = self.record().transpose();
        if matches!(r, Some(Err(_))) {
            self.failed = true;
        }
        r
    }
}

/// Iterator over the factors of a text stream.
pub struct TextReader<R: BufRead> {
    lines: std::io::Lines<R>,
    line_no: usize,
    failed: bool,
}

impl<R: BufRead> TextReader<R> {
    pub fn new(input: R) -> Self {
        TextReader {
            lines: input.lines(),
            line_no: 0,
            failed: false,
        }
    }
}

pub fn parse_text_line(line: &str) -> Result<Factor> {
    let bad = || Error::Malformed(format!("bad factor line {line:?}"));
    let inner = line
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let fields: Vec<&str> = inner.split(',').map(str::trim).collect();
    let [pos, len, c] = fields[..] else {
        return Err(bad());
    };
    let pos = match pos {
        "_" => None,
        p => Some(p.parse().map_err(|_| bad())?),
    };
    let len = len.parse().map_err(|_| bad())?;
    let c = match c {
        "$" => Symbol::TERM_LZ,
        b => Symbol::from_byte(b.parse().map_err(|_| bad())?),
    };
    Ok(Factor { pos, len, c })
}

impl<R: BufRead> Iterator for TextReader<R> {
    type Item = Result<Factor>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.failed {
            self.line_no += 1;
            let line = match self.lines.next()? {
                Ok(line) => line,
                Err(e) => {
                    self.failed = true;
                    let err = if e.kind() == ErrorKind::InvalidData {
                        Error::Malformed(format!("line {} is not UTF-8", self.line_no))
                    } else {
                        e.into()
                    };
                    return Some(Err(err));
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            let r = parse_text_line(&line);
            self.failed = r.is_err();
            return Some(r);
        }
        None
    }
}

/// Every factor in `input`.
pub fn read_all<R: BufRead>(input: R, format: Format) -> Result<Vec<Factor>> {
    match format {
        Format::Binary => BinaryReader::new(input)?.collect(),
        Format::Text => TextReader::new(input).collect(),
    }
}

pub fn write_all<W: Write>(out: W, format: Format, factors: &[Factor]) -> Result<W> {
    let mut w = FactorWriter::new(out, format)?;
    for f in factors {
        w.write(f)?;
    }
    w.finish()
}
