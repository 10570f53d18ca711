use std::collections::HashMap;

use rlz77::alphabet::terminated;
use rlz77::oracles::OracleText;
use rlz77::parser::build_from_symbols;
use rlz77::{Interval, RunBounds, Sampler, Symbol};

/// Maximal runs of `bwt`, indexed by position.
fn run_table(bwt: &[Symbol]) -> Vec<RunBounds> {
    let mut table = Vec::with_capacity(bwt.len());
    let mut l = 0;
    while l < bwt.len() {
        let mut r = l;
        while r + 1 < bwt.len() && bwt[r + 1] == bwt[l] {
            r += 1;
        }
        let run = RunBounds { l, r, c: bwt[l] };
        table.extend(std::iter::repeat_n(run, r - l + 1));
        l = r + 1;
    }
    table
}

struct Branching {
    iv: Interval,
    /// Per symbol of the text: where `V` followed by it first ends.
    first_end: Vec<Option<usize>>,
}

/// Substrings of `text` followed by at least two distinct symbols, with
/// their BWT interval and the first end of every one-symbol extension.
fn branching(o: &OracleText, symbols: &[Symbol]) -> Vec<Branching> {
    let text = &o.text;
    let m = text.len();
    let mut follow: HashMap<&[Symbol], Vec<Option<usize>>> = HashMap::new();
    for p in 0..m {
        for e in p..m {
            // V = text[p..e], followed by text[e]
            let slot = follow
                .entry(&text[p..e])
                .or_insert_with(|| vec![None; symbols.len()]);
            let a = symbols.binary_search(&text[e]).unwrap();
            if slot[a].is_none_or(|x| e < x) {
                slot[a] = Some(e);
            }
        }
    }
    let mut out = Vec::new();
    for (v, first_end) in follow {
        if first_end.iter().filter(|x| x.is_some()).count() < 2 {
            continue;
        }
        let rev: Vec<Symbol> = v.iter().rev().copied().collect();
        let (l, r) = o.interval(&rev).expect("V occurs");
        out.push(Branching {
            iv: Interval::new(l, r),
            first_end,
        });
    }
    out
}

/// Drives a sampler over `bytes` in text order and checks, after every
/// position `j`, that `exists_sample(a, interval(←V))` holds exactly when
/// `Va` occurs in `T[0..=j]`, for every branching `V` and every symbol `a`.
///
/// With `via_index` the walk and the run bounds come from the dynamic index
/// (and are checked against the oracle); otherwise from the oracle alone.
/// Returns the number of predicate checks made.
pub fn check_existence(bytes: &[u8], via_index: bool) -> Result<usize, String> {
    let text = terminated(bytes);
    let o = OracleText::new(&text);
    let bwt = o.bwt();
    let runs = run_table(&bwt);
    let mut symbols = text.clone();
    symbols.sort();
    symbols.dedup();
    let cases = branching(&o, &symbols);
    let index = if via_index {
        Some(build_from_symbols(&text).map_err(|e| e.to_string())?)
    } else {
        None
    };

    let mut sampler = Sampler::new();
    let mut checks = 0;
    let mut k = o.row_of(0);
    for j in 0..text.len() {
        let want_k = o.row_of(j);
        let run = match &index {
            Some(idx) => {
                if k != want_k {
                    return Err(format!("walk reached row {k} at {j}, oracle says {want_k}"));
                }
                let step = idx.inspect(k).map_err(|e| e.to_string())?;
                if step.run != runs[k] {
                    return Err(format!("run at {k}: {:?} vs {:?}", step.run, runs[k]));
                }
                k = step.lf;
                runs[want_k]
            }
            None => runs[want_k],
        };
        sampler
            .process(j, want_k, run)
            .map_err(|e| format!("process({j}): {e}"))?;
        for case in &cases {
            for (a, first) in symbols.iter().zip(&case.first_end) {
                let want = first.is_some_and(|e| e <= j);
                if sampler.exists_sample(*a, case.iv) != want {
                    return Err(format!(
                        "after {j}: exists_sample({a}, [{}, {}]) != {want}",
                        case.iv.l, case.iv.r
                    ));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

/// For every `j` and every substring `W` of `T[0..=j]`, replays the parser's
/// source tracking over `W` and checks that it lands on an occurrence of `W`.
/// The last prefix of `W` whose source came from a sample must end by `j`;
/// steps taken inside a single run only extend that occurrence, so `W` itself
/// may run past `j`. Returns the number of substrings checked.
pub fn check_locate(bytes: &[u8]) -> Result<usize, String> {
    let text = terminated(bytes);
    let o = OracleText::new(&text);
    let idx = build_from_symbols(&text).map_err(|e| e.to_string())?;
    let mut sampler = Sampler::new();
    let mut checked = 0;
    for j in 0..text.len() {
        let k = o.row_of(j);
        let run = idx.locate_run(k).map_err(|e| e.to_string())?;
        sampler.process(j, k, run).map_err(|e| e.to_string())?;
        for p in 0..=j {
            for e in p + 1..=j + 1 {
                let w = &text[p..e];
                let mut iv = idx.full_interval();
                let mut occ: Option<usize> = None;
                let mut located_end = 0;
                for (i, &c) in w.iter().enumerate() {
                    let u = idx.number_of_runs(iv).map_err(|e| e.to_string())?;
                    if u > 1 {
                        let end = sampler
                            .locate(c, iv)
                            .map_err(|err| format!("W = text[{p}..{e}] at {j}: {err}"))?;
                        occ = Some(end - i);
                        located_end = end;
                    }
                    iv = idx
                        .lf_interval(iv, c)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| format!("W = text[{p}..{e}] missing from the index"))?;
                }
                let t = occ.ok_or("no source tracked")?;
                if located_end > j || text.get(t..t + w.len()) != Some(w) {
                    return Err(format!("W = text[{p}..{e}] located at {t} after {j}"));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}
