//! Two-phase LZ77 parser over the run-length BWT of the reversed text.
//!
//! Phase 1 ([`build`]) reads the text once, left to right, prepending each
//! symbol to a dynamic RLBWT so that at the end it indexes `←S` for
//! `S = #T$`. Phase 2 ([`factorize`]) walks the text again by LF-mapping
//! from the row of `#`, keeps the BWT interval of the reversed current phrase
//! prefix, and ends a phrase as soon as the prefix extended by the next symbol
//! has no earlier occurrence. The [`Sampler`] keeps at most two text
//! positions per BWT run, which is all that is needed to both decide that and
//! locate a source for every phrase.

use std::io::{ErrorKind, Read};
use std::sync::mpsc::{sync_channel, Receiver};
use std::thread::JoinHandle;

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::rlbwt::{NodeCounts, Rlbwt, RunBounds};
use crate::sampler::Sampler;

/// One LZ77 phrase: `len` symbols copied from text position `pos`, then the
/// literal `c`. `pos` is `None` exactly when `len` is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub pos: Option<usize>,
    pub len: usize,
    pub c: Symbol,
}

impl Factor {
    pub fn literal(c: Symbol) -> Self {
        Factor {
            pos: None,
            len: 0,
            c,
        }
    }

    pub fn copy(pos: usize, len: usize, c: Symbol) -> Self {
        Factor {
            pos: Some(pos),
            len,
            c,
        }
    }
}

/// Phase 1: reads `reader` to the end and returns the RLBWT of `←(#T$)`.
/// Input longer than `max_n` bytes is rejected.
pub fn build<R: Read>(mut reader: R, max_n: Option<u64>) -> Result<Rlbwt> {
    let mut bwt = Rlbwt::new();
    let mut buf = vec![0u8; 1 << 16];
    let mut total = 0u64;
    loop {
        let got = match reader.read(&mut buf) {
            Ok(0) => break,
            Ok(got) => got,
            Err(e) if e.kind() == ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        };
        total += got as u64;
        if let Some(limit) = max_n {
            if total > limit {
                return Err(Error::Malformed(format!(
                    "input is longer than the {limit}-byte limit"
                )));
            }
        }
        for &b in &buf[..got] {
            bwt.extend(Symbol::from_byte(b))?;
        }
    }
    bwt.extend(Symbol::TERM_LZ)?;
    Ok(bwt)
}

/// Phase 1 over a symbol string that already ends with its single `$`.
pub fn build_from_symbols(text: &[Symbol]) -> Result<Rlbwt> {
    if text.last() != Some(&Symbol::TERM_LZ)
        || text[..text.len() - 1].iter().any(|c| c.is_terminator())
    {
        return Err(Error::Contract("text must end with its only '$'".into()));
    }
    let mut bwt = Rlbwt::new();
    for &c in text {
        bwt.extend(c)?;
    }
    Ok(bwt)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Sweep the sampler invariants over every BWT run after this many
    /// processed positions (and once at the end). Costs `O(R)` per sweep.
    pub audit_every: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseStats {
    /// Text length including `$`.
    pub n: usize,
    /// Number of factors.
    pub z: usize,
    /// Runs in the BWT of `←(#T$)`.
    pub runs: usize,
    /// Most samples held at any point.
    pub max_samples: usize,
    pub final_samples: usize,
    /// Tree nodes allocated by the RLBWT.
    pub nodes: NodeCounts,
    /// Tree nodes visited by the RLBWT since it was created (both phases).
    pub bwt_visits: u64,
    /// Ordered-set operations on the samples.
    pub sampler_ops: u64,
    /// Invariant sweeps performed.
    pub audits: usize,
}

impl ParseStats {
    /// All nodes held by the working structures: RLBWT tree nodes plus the
    /// sample entries at their peak.
    pub fn total_nodes(&self) -> usize {
        self.nodes.total() + self.max_samples
    }

    /// Structure operations, counted as tree-node visits plus sample-set
    /// operations.
    pub fn total_ops(&self) -> u64 {
        self.bwt_visits + self.sampler_ops
    }
}

/// Phase 2 with default options.
pub fn factorize<F>(bwt: &Rlbwt, emit: F) -> Result<ParseStats>
where
    F: FnMut(Factor) -> Result<()>,
{
    factorize_with(bwt, ParseOptions::default(), emit)
}

/// Phase 2: emits the factors of `T` in text order through `emit`. The parse
/// itself is never stored.
pub fn factorize_with<F>(bwt: &Rlbwt, options: ParseOptions, mut emit: F) -> Result<ParseStats>
where
    F: FnMut(Factor) -> Result<()>,
{
    let n = bwt.len() - 1;
    if n == 0 {
        return Err(Error::Contract(
            "the index holds no text; phase 1 always appends '$'".into(),
        ));
    }
    let mut sampler = Sampler::new();
    let mut audit = options.audit_every.map(|every| Auditor::new(bwt, every));

    let full = bwt.full_interval();
    let mut iv = full;
    let mut len = 0usize;
    let mut occ: Option<usize> = None;
    let mut z = 0;
    let mut k = 0;
    let mut step = bwt.inspect(k)?;
    let mut c = step.run.c;

    for j in 0..n {
        if c == Symbol::TERM_BWT {
            return Err(Error::Corrupt(format!("reached '#' at text position {j}")));
        }
        let u = bwt.number_of_runs(iv)?;
        if u == 1 || sampler.exists_sample(c, iv) {
            // T[j-len..=j] occurs earlier; keep extending
            if u > 1 {
                let end = sampler.locate(c, iv)?;
                occ = Some(end.checked_sub(len).ok_or_else(|| {
                    Error::Corrupt(format!("sample at {end} cannot end a match of {len}"))
                })?);
            } else if occ.is_none() {
                return Err(Error::Corrupt(format!(
                    "single-run interval without a source at {j}"
                )));
            }
            len += 1;
            iv = bwt.lf_interval(iv, c)?.ok_or_else(|| {
                Error::Corrupt(format!("phrase prefix vanished from the index at {j}"))
            })?;
        } else {
            if len > 0 && occ.is_none() {
                return Err(Error::Corrupt(format!(
                    "phrase of length {len} has no source"
                )));
            }
            emit(Factor { pos: occ, len, c })?;
            z += 1;
            len = 0;
            occ = None;
            iv = full;
        }

        sampler.process(j, k, step.run)?;
        if let Some(a) = audit.as_mut() {
            a.tick(&sampler)?;
        }

        if j + 1 < n {
            k = step.lf;
            step = bwt.inspect(k)?;
            c = step.run.c;
        }
    }
    if len > 0 {
        return Err(Error::Corrupt("input ended inside a phrase".into()));
    }

    let mut audits = 0;
    if let Some(mut a) = audit {
        a.sweep(&sampler)?;
        audits = a.sweeps;
    }
    let runs = bwt.runs();
    if sampler.max_samples() > 2 * runs {
        return Err(Error::Corrupt(format!(
            "{} samples exceed two per run ({runs} runs)",
            sampler.max_samples()
        )));
    }
    Ok(ParseStats {
        n,
        z,
        runs,
        max_samples: sampler.max_samples(),
        final_samples: sampler.total_samples(),
        nodes: bwt.node_counts(),
        bwt_visits: bwt.visits(),
        sampler_ops: sampler.ops(),
        audits,
    })
}

/// Periodic full check of the sampler against the frozen BWT's runs.
struct Auditor {
    runs: Vec<RunBounds>,
    every: usize,
    since: usize,
    sweeps: usize,
    occupied: Vec<usize>,
}

impl Auditor {
    fn new(bwt: &Rlbwt, every: usize) -> Self {
        let mut runs = Vec::new();
        let mut k = 0;
        while k < bwt.len() {
            let run = bwt.locate_run(k).expect("k in range");
            k = run.r + 1;
            runs.push(run);
        }
        Auditor {
            runs,
            every: every.max(1),
            since: 0,
            sweeps: 0,
            occupied: Vec::new(),
        }
    }

    fn tick(&mut self, sampler: &Sampler) -> Result<()> {
        self.since += 1;
        if self.since >= self.every {
            self.since = 0;
            self.sweep(sampler)?;
        }
        Ok(())
    }

    fn sweep(&mut self, sampler: &Sampler) -> Result<()> {
        self.sweeps += 1;
        let occupied = sampler.check_runs(&self.runs)?;
        // once sampled, a run stays sampled
        let mut now = occupied.iter().peekable();
        for &run in &self.occupied {
            while now.next_if(|&&r| r < run).is_some() {}
            if now.peek() != Some(&&run) {
                return Err(Error::Corrupt(format!("run at {run} lost its samples")));
            }
        }
        if sampler.total_samples() > 2 * self.runs.len() {
            return Err(Error::Corrupt("more than two samples per run".into()));
        }
        self.occupied = occupied;
        Ok(())
    }
}

/// Runs phase 2 on its own thread, handing factors over a channel holding at
/// most `bound` of them; the parser blocks while the channel is full.
pub fn spawn_factorizer(
    bwt: Rlbwt,
    bound: usize,
) -> (Receiver<Factor>, JoinHandle<Result<ParseStats>>) {
    let (tx, rx) = sync_channel(bound);
    let handle = std::thread::spawn(move || {
        factorize(&bwt, |f| {
            tx.send(f)
                .map_err(|_| Error::Contract("factor consumer went away".into()))
        })
    });
    (rx, handle)
}

/// Both phases over an in-memory text; collects the factors.
pub fn parse(text: &[u8]) -> Result<(Vec<Factor>, ParseStats)> {
    let bwt = build(text, None)?;
    let mut out = Vec::new();
    let stats = factorize(&bwt, |f| {
        out.push(f);
        Ok(())
    })?;
    Ok((out, stats))
}

/// Rebuilds a text from its factors, one factor at a time.
#[derive(Clone, Debug, Default)]
pub struct Decoder {
    out: Vec<u8>,
    done: bool,
}

impl Decoder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, f: Factor) -> Result<()> {
        if self.done {
            return Err(Error::Malformed("factor after the terminating '$'".into()));
        }
        let start = self.out.len();
        match (f.pos, f.len) {
            (None, 0) => {}
            (Some(pos), len) if len > 0 => {
                if pos >= start {
                    return Err(Error::Malformed(format!(
                        "factor copies from {pos}, at or after its own start {start}"
                    )));
                }
                // the source may run into the phrase itself
                for i in 0..len {
                    let b = self.out[pos + i];
                    self.out.push(b);
                }
            }
            _ => {
                return Err(Error::Malformed(format!(
                    "factor with length {} and source {:?}",
                    f.len, f.pos
                )))
            }
        }
        match f.c.byte() {
            Some(b) => self.out.push(b),
            None if f.c == Symbol::TERM_LZ => self.done = true,
            None => return Err(Error::Malformed("'#' inside a factor".into())),
        }
        Ok(())
    }

    /// The decoded text without the final `$`.
    pub fn finish(self) -> Result<Vec<u8>> {
        if !self.done {
            return Err(Error::Malformed("factor stream ends before '$'".into()));
        }
        Ok(self.out)
    }
}

pub fn decompress<I>(factors: I) -> Result<Vec<u8>>
where
    I: IntoIterator<Item = Factor>,
{
    let mut dec = Decoder::new();
    for f in factors {
        dec.push(f)?;
    }
    dec.finish()
}
