//! Dynamic run-length encoded BWT with online left extension.
//!
//! Layout: one symbol per run in a dynamic string `H`, a gap-encoded
//! bitvector `V_all` marking run starts, and for every symbol `c` a
//! gap-encoded bitvector `V_c` concatenating the lengths of the `c`-runs in
//! BWT order (a run of length `m` is `1 0^{m-1}`). Symbol totals live in an
//! [`Spsi`] so `C(c)` is a prefix sum.
//!
//! The terminator `#` is not stored in `H`/`V_*`. Left extension overwrites
//! the old `#` and reinserts a new one elsewhere, and these structures only
//! support insertions and 0-deletions, so the run-length part holds the BWT
//! with `#` removed (the "core") and `#` is kept as the single position
//! `term_pos`. Every BWT-level query below splices it back in, so callers
//! see the full BWT.

use crate::alphabet::Symbol;
use crate::dynseq::DynSequence;
use crate::error::{out_of_range, Error, Result};
use crate::gapbv::GapBitvector;
use crate::spsi::Spsi;

/// Inclusive BWT range `⟨l, r⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub l: usize,
    pub r: usize,
}

impl Interval {
    pub fn new(l: usize, r: usize) -> Self {
        debug_assert!(l <= r);
        Interval { l, r }
    }

    pub fn width(&self) -> usize {
        self.r - self.l + 1
    }

    pub fn contains(&self, k: usize) -> bool {
        self.l <= k && k <= self.r
    }
}

/// Inclusive bounds of a maximal equal-letter run and its symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunBounds {
    pub l: usize,
    pub r: usize,
    pub c: Symbol,
}

/// What [`Rlbwt::inspect`] reports about a BWT position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub run: RunBounds,
    pub lf: usize,
}

/// Node counts per component, for space accounting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NodeCounts {
    pub heads: usize,
    pub run_starts: usize,
    pub run_lengths: usize,
    pub symbol_counts: usize,
}

impl NodeCounts {
    pub fn total(&self) -> usize {
        self.heads + self.run_starts + self.run_lengths + self.symbol_counts
    }
}

#[derive(Clone, Debug)]
pub struct Rlbwt {
    /// `H`: one symbol per run of the core.
    heads: DynSequence,
    /// `V_all` over the core.
    run_starts: GapBitvector,
    /// `V_c`, indexed by symbol code. The `#` slot stays empty.
    run_lengths: Vec<GapBitvector>,
    /// Element `c + 1` counts symbol `c` in the full BWT, `#` included.
    counts: Spsi,
    term_pos: usize,
    len: usize,
}

impl Default for Rlbwt {
    fn default() -> Self {
        Self::new()
    }
}

impl Rlbwt {
    /// BWT of the empty text: the single symbol `#`.
    pub fn new() -> Self {
        let mut counts = Spsi::with_zeros(Symbol::SIGMA);
        counts
            .update(Symbol::TERM_BWT.code() as usize + 1, 1)
            .expect("fresh counter");
        Rlbwt {
            heads: DynSequence::new(Symbol::SIGMA),
            run_starts: GapBitvector::new(),
            run_lengths: (0..Symbol::SIGMA).map(|_| GapBitvector::new()).collect(),
            counts,
            term_pos: 0,
            len: 1,
        }
    }

    /// Loads an explicit BWT string (exactly one `#`). The string need not be
    /// the BWT of anything; this is how fixed regression vectors get in.
    pub fn from_bwt(bwt: &[Symbol]) -> Result<Self> {
        let terms: Vec<usize> = (0..bwt.len())
            .filter(|&i| bwt[i] == Symbol::TERM_BWT)
            .collect();
        if terms.len() != 1 {
            return Err(Error::Contract(format!(
                "a BWT holds exactly one '#', found {}",
                terms.len()
            )));
        }
        let mut out = Rlbwt::new();
        for &c in bwt.iter().filter(|&&c| c != Symbol::TERM_BWT) {
            let end = out.core_len();
            out.core_insert(end, c)?;
            out.counts.update(c.code() as usize + 1, 1)?;
            out.len += 1;
        }
        out.term_pos = terms[0];
        Ok(out)
    }

    /// Length of the BWT, `#` included.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Never true: the BWT always holds `#`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position of `#`.
    #[inline]
    pub fn term_pos(&self) -> usize {
        self.term_pos
    }

    #[inline]
    fn core_len(&self) -> usize {
        self.len - 1
    }

    pub fn full_interval(&self) -> Interval {
        Interval::new(0, self.len - 1)
    }

    /// Number of occurrences of `c` in the BWT.
    pub fn occurrences(&self, c: Symbol) -> Result<usize> {
        Ok(self.counts.get(c.code() as usize + 1)? as usize)
    }

    /// `C(c)`: symbols in the BWT strictly smaller than `c`.
    pub fn c_count(&self, c: Symbol) -> Result<usize> {
        Ok(self.counts.sum(c.code() as usize)? as usize)
    }

    /// Prepends `c` to the indexed string: `X#` becomes `cX#`.
    pub fn extend(&mut self, c: Symbol) -> Result<()> {
        if c == Symbol::TERM_BWT {
            return Err(Error::Contract("cannot extend with '#'".into()));
        }
        let p = self.term_pos;
        // the old '#' at p turns into c, which in core coordinates is an
        // insertion at p. The row of the new suffix cX# is C(c) plus the
        // c-prefixed rows above X#'s row p.
        let rank = self.core_insert(p, c)?;
        let new_pos = self.c_count(c)? + rank;
        self.counts.update(c.code() as usize + 1, 1)?;
        self.len += 1;
        self.term_pos = new_pos;
        Ok(())
    }

    pub fn access(&self, k: usize) -> Result<Symbol> {
        if k >= self.len {
            return out_of_range("BWT position", k, self.len);
        }
        match k.cmp(&self.term_pos) {
            std::cmp::Ordering::Less => self.core_access(k),
            std::cmp::Ordering::Equal => Ok(Symbol::TERM_BWT),
            std::cmp::Ordering::Greater => self.core_access(k - 1),
        }
    }

    /// Occurrences of `c` in `BWT[0, k)`.
    pub fn rank(&self, c: Symbol, k: usize) -> Result<usize> {
        if k > self.len {
            return out_of_range("BWT position", k, self.len);
        }
        if c == Symbol::TERM_BWT {
            return Ok((k > self.term_pos) as usize);
        }
        let core_k = if k > self.term_pos { k - 1 } else { k };
        self.core_rank(c, core_k)
    }

    /// LF mapping: the BWT position of the suffix one symbol longer.
    pub fn lf(&self, k: usize) -> Result<usize> {
        Ok(self.inspect(k)?.lf)
    }

    /// Run containing `k` together with `LF(k)`, sharing one walk.
    pub fn inspect(&self, k: usize) -> Result<Step> {
        if k >= self.len {
            return out_of_range("BWT position", k, self.len);
        }
        let p = self.term_pos;
        if k == p {
            // '#' precedes every other symbol
            return Ok(Step {
                run: RunBounds {
                    l: p,
                    r: p,
                    c: Symbol::TERM_BWT,
                },
                lf: 0,
            });
        }
        let core_k = if k < p { k } else { k - 1 };
        let run = self.run_starts.rank1(core_k)? - 1;
        let (cl, cr) = self.core_run_bounds(run)?;
        let (code, q) = self.heads.access_and_rank(run)?;
        let c = Symbol::from_code(code).expect("valid code");
        let rank = self.run_lengths[code as usize].select1(q + 1)? + core_k - cl;
        Ok(Step {
            run: self.splice(k, cl, cr, c),
            lf: self.c_count(c)? + rank,
        })
    }

    /// One backward-search step. `None` when `c` does not occur in `iv`.
    pub fn lf_interval(&self, iv: Interval, c: Symbol) -> Result<Option<Interval>> {
        if iv.l > iv.r || iv.r >= self.len {
            return out_of_range("BWT position", iv.r, self.len);
        }
        if c == Symbol::TERM_BWT {
            return Err(Error::Contract("backward search never consumes '#'".into()));
        }
        let core = |k: usize| if k > self.term_pos { k - 1 } else { k };
        let (a, b) = (core(iv.l), core(iv.r + 1));
        let (ra, left_a) = self.core_rank_at(c.code(), a)?;
        let rb = match left_a {
            // [a, b) lies inside the run holding a - 1
            Some((run, matched)) if b > a && self.run_starts.rank1(b - 1)? - 1 == run => {
                ra + if matched { b - a } else { 0 }
            }
            _ if b == a => ra,
            _ => self.core_rank(c, b)?,
        };
        let base = self.c_count(c)?;
        Ok((ra < rb).then(|| Interval::new(base + ra, base + rb - 1)))
    }

    /// Number of runs of the full BWT, `#` included.
    pub fn runs(&self) -> usize {
        let n = self.core_len();
        if n == 0 {
            return 1;
        }
        let p = self.term_pos;
        let splits_run = p > 0 && p < n && !self.core_is_start(p).unwrap_or(true);
        self.heads.len() + 1 + splits_run as usize
    }

    /// Runs intersecting `[l, r]`: run heads in `(l, r]` plus the run holding `l`.
    pub fn number_of_runs(&self, iv: Interval) -> Result<usize> {
        if iv.l > iv.r || iv.r >= self.len {
            return out_of_range("BWT position", iv.r, self.len);
        }
        Ok(self.starts_upto(iv.r)? - self.starts_upto(iv.l)? + 1)
    }

    /// Bounds and symbol of the maximal run containing `k`.
    pub fn locate_run(&self, k: usize) -> Result<RunBounds> {
        if k >= self.len {
            return out_of_range("BWT position", k, self.len);
        }
        let p = self.term_pos;
        if k == p {
            return Ok(RunBounds {
                l: p,
                r: p,
                c: Symbol::TERM_BWT,
            });
        }
        let core_k = if k < p { k } else { k - 1 };
        let (cl, cr, c) = self.core_run(core_k)?;
        Ok(self.splice(k, cl, cr, c))
    }

    /// Full-BWT bounds of the core run `[cl, cr]` as seen from `k != term_pos`.
    fn splice(&self, k: usize, cl: usize, cr: usize, c: Symbol) -> RunBounds {
        let p = self.term_pos;
        if k < p {
            RunBounds {
                l: cl,
                r: cr.min(p - 1),
                c,
            }
        } else {
            RunBounds {
                l: cl.max(p) + 1,
                r: cr + 1,
                c,
            }
        }
    }

    /// Full-BWT run heads in `[0, k]`.
    fn starts_upto(&self, k: usize) -> Result<usize> {
        let p = self.term_pos;
        if k < p {
            self.run_starts.rank1(k)
        } else if k == p {
            Ok(if p == 0 {
                0
            } else {
                self.run_starts.rank1(p - 1)?
            } + 1)
        } else {
            // '#' heads its own run, and whatever follows it heads another
            let (ones, p_is_head) = self.run_starts.rank1_access(k - 1)?;
            let p_is_head = if k - 1 == p {
                p_is_head
            } else {
                self.core_is_start(p)?
            };
            Ok(ones + 1 + !p_is_head as usize)
        }
    }

    /// The full BWT.
    pub fn to_symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(self.len);
        for (c, run_len) in self.core_runs() {
            out.extend(std::iter::repeat_n(c, run_len));
        }
        out.insert(self.term_pos, Symbol::TERM_BWT);
        out
    }

    /// Runs of the core as (symbol, length), decoded from `H`, `V_all` and
    /// the per-symbol run lengths.
    fn core_runs(&self) -> Vec<(Symbol, usize)> {
        let mut next_run = vec![0usize; Symbol::SIGMA];
        let lengths: Vec<Vec<u64>> = self.run_lengths.iter().map(|v| v.gaps()).collect();
        self.heads
            .to_vec()
            .into_iter()
            .map(|code| {
                let i = next_run[code as usize];
                next_run[code as usize] += 1;
                (
                    Symbol::from_code(code).expect("valid code"),
                    lengths[code as usize][i] as usize,
                )
            })
            .collect()
    }

    pub fn node_counts(&self) -> NodeCounts {
        NodeCounts {
            heads: self.heads.node_count(),
            run_starts: self.run_starts.node_count(),
            run_lengths: self.run_lengths.iter().map(GapBitvector::node_count).sum(),
            symbol_counts: self.counts.node_count(),
        }
    }

    /// Tree nodes visited by all queries and updates so far.
    pub fn visits(&self) -> u64 {
        self.heads.visits()
            + self.run_starts.visits()
            + self
                .run_lengths
                .iter()
                .map(GapBitvector::visits)
                .sum::<u64>()
            + self.counts.visits()
    }

    /// Full consistency check: every tree's counters, the agreement between
    /// `H`, `V_all` and the `V_c`, and the symbol totals.
    pub fn audit(&self) -> Result<()> {
        self.heads.audit()?;
        self.run_starts.audit()?;
        self.counts.audit()?;
        for v in &self.run_lengths {
            v.audit()?;
        }
        let corrupt = |msg: String| Err(Error::Corrupt(msg));
        if self.run_starts.len() != self.core_len() {
            return corrupt(format!(
                "V_all has {} bits for a core of {}",
                self.run_starts.len(),
                self.core_len()
            ));
        }
        if self.run_starts.ones() != self.heads.len() {
            return corrupt("V_all ones differ from |H|".into());
        }
        if !self.run_lengths[Symbol::TERM_BWT.code() as usize].is_empty() {
            return corrupt("'#' has stored runs".into());
        }
        let heads = self.heads.to_vec();
        if heads.windows(2).any(|w| w[0] == w[1]) {
            return corrupt("adjacent runs share a symbol".into());
        }
        for (code, v) in self.run_lengths.iter().enumerate() {
            if v.ones() != self.heads.count(code as u16) {
                return corrupt(format!("V_c for code {code} disagrees with H on run count"));
            }
            let expect = self.counts.get(code + 1)? as usize
                - (code == Symbol::TERM_BWT.code() as usize) as usize;
            if v.len() != expect {
                return corrupt(format!("V_c for code {code} has wrong length"));
            }
        }
        if self.counts.total() as usize != self.len || self.term_pos >= self.len {
            return corrupt("symbol totals or '#' position inconsistent".into());
        }
        let mut pos = 0;
        for ((_, run_len), i) in self.core_runs().into_iter().zip(1..) {
            if self.run_starts.select1(i)? != pos {
                return corrupt(format!("run {i} starts at the wrong place"));
            }
            pos += run_len;
        }
        Ok(())
    }

    // ---- core: the BWT without '#' ----

    fn core_is_start(&self, k: usize) -> Result<bool> {
        if k == 0 {
            return Ok(true);
        }
        self.run_starts.access(k)
    }

    fn core_access(&self, k: usize) -> Result<Symbol> {
        let run = self.run_starts.rank1(k)? - 1;
        Ok(Symbol::from_code(self.heads.access(run)?).expect("valid code"))
    }

    /// Core run containing `k` as (first, last, symbol).
    fn core_run(&self, k: usize) -> Result<(usize, usize, Symbol)> {
        let run = self.run_starts.rank1(k)? - 1;
        let (l, r) = self.core_run_bounds(run)?;
        let c = Symbol::from_code(self.heads.access(run)?).expect("valid code");
        Ok((l, r, c))
    }

    fn core_run_bounds(&self, run: usize) -> Result<(usize, usize)> {
        let l = self.run_starts.select1(run + 1)?;
        let r = if run + 1 < self.run_starts.ones() {
            self.run_starts.select1(run + 2)? - 1
        } else {
            self.core_len() - 1
        };
        Ok((l, r))
    }

    /// Total length of the first `q` runs of `c`.
    fn c_runs_len(&self, c: u16, q: usize) -> Result<usize> {
        let v = &self.run_lengths[c as usize];
        if q == v.ones() {
            Ok(v.len())
        } else {
            v.select1(q + 1)
        }
    }

    /// Occurrences of `c` in `core[0, k)`.
    fn core_rank(&self, c: Symbol, k: usize) -> Result<usize> {
        Ok(self.core_rank_at(c.code(), k)?.0)
    }

    /// Core rank of `c` at `k`, plus the run holding `k - 1` and whether it
    /// is a `c`-run, when `0 < k < core_len`.
    fn core_rank_at(&self, c: u16, k: usize) -> Result<(usize, Option<(usize, bool)>)> {
        if k == 0 {
            return Ok((0, None));
        }
        if k == self.core_len() {
            return Ok((self.run_lengths[c as usize].len(), None));
        }
        let run = self.run_starts.rank1(k - 1)? - 1;
        let (q, matched) = self.heads.rank_and_match(c, run)?;
        let r = if matched {
            self.run_lengths[c as usize].select1(q + 1)? + k - self.run_starts.select1(run + 1)?
        } else {
            self.c_runs_len(c, q)?
        };
        Ok((r, Some((run, matched))))
    }

    /// Lengthens the `q`-th (0-based) run of `c` by one.
    fn grow_run(&mut self, q: usize, c: u16) -> Result<()> {
        let head = self.run_lengths[c as usize].select1(q + 1)?;
        self.run_lengths[c as usize].insert_bit(head + 1, false)
    }

    /// Opens a run of `c` with length 1 at core position `i`, which must be a
    /// run boundary; it becomes run number `run`, preceded by `q` runs of `c`.
    fn open_run(&mut self, run: usize, q: usize, i: usize, c: u16) -> Result<()> {
        let at = self.c_runs_len(c, q)?;
        self.heads.insert(run, c)?;
        self.run_starts.insert_bit(i, true)?;
        self.run_lengths[c as usize].insert_bit(at, true)
    }

    /// Inserts `c` at core position `i` and returns the occurrences of `c` in
    /// `core[0, i)` before the insertion.
    fn core_insert(&mut self, i: usize, c: Symbol) -> Result<usize> {
        let n = self.core_len();
        let code = c.code();
        if i > n {
            return out_of_range("core position", i, n);
        }
        if n == 0 {
            self.open_run(0, 0, 0, code)?;
            return Ok(0);
        }
        // q: c-runs up to and including the run left of i (none when i = 0)
        let (q, rank) = if i > 0 {
            let left = self.run_starts.rank1(i - 1)? - 1;
            let (q, matched) = self.heads.rank_and_match(code, left)?;
            if matched {
                // joins the run on its left
                let head = self.run_lengths[code as usize].select1(q + 1)?;
                let rank = head + i - self.run_starts.select1(left + 1)?;
                self.run_starts.insert_bit(i, false)?;
                self.run_lengths[code as usize].insert_bit(head + 1, false)?;
                return Ok(rank);
            }
            (q, self.c_runs_len(code, q)?)
        } else {
            (0, 0)
        };
        if i == n {
            self.open_run(self.heads.len(), q, i, code)?;
            return Ok(rank);
        }
        let (ones, is_start) = self.run_starts.rank1_access(i)?;
        let run = ones - 1;
        if is_start || i == 0 {
            if self.heads.access(run)? == code {
                // joins the run on its right; the head bit stays at i
                self.run_starts.insert_bit(i + 1, false)?;
                self.grow_run(q, code)?;
            } else {
                self.open_run(run, q, i, code)?;
            }
            return Ok(rank);
        }

        // strictly inside a run of d != c: d^a d^b becomes d^a c d^b
        let start = self.run_starts.select1(run + 1)?;
        let a = i - start;
        let (d, qd) = self.heads.access_and_rank(run)?;
        let d_head = self.run_lengths[d as usize].select1(qd + 1)?;
        let vd = &mut self.run_lengths[d as usize];
        vd.delete0(d_head + a)?;
        vd.insert_bit(d_head + a, true)?;

        let at = self.c_runs_len(code, q)?;
        self.run_lengths[code as usize].insert_bit(at, true)?;

        self.heads.insert(run + 1, code)?;
        self.heads.insert(run + 2, d)?;

        self.run_starts.insert_bit(i, true)?;
        self.run_starts.delete0(i + 1)?;
        self.run_starts.insert_bit(i + 1, true)?;
        Ok(rank)
    }
}
