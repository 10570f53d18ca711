use rand::Rng;
use rlz77::{DynSequence, GapBitvector, Spsi};

const OPS: usize = 10_000;
pub const SEEDS: u64 = 20;

pub fn fuzz_spsi(seed: u64) -> Result<(), String> {
    let mut rng = super::rng(seed);
    let mut s = Spsi::new();
    let mut model: Vec<u64> = Vec::new();
    for op in 0..OPS {
        let m = model.len();
        match rng.gen_range(0..6) {
            0 | 1 => {
                let gap = rng.gen_range(0..=m);
                s.insert(gap).map_err(|e| e.to_string())?;
                model.insert(gap, 0);
            }
            2 if m > 0 => {
                let i = rng.gen_range(1..=m);
                let delta = rng.gen_range(-(model[i - 1] as i64)..=40);
                s.update(i, delta).map_err(|e| e.to_string())?;
                model[i - 1] = (model[i - 1] as i64 + delta) as u64;
            }
            3 if m > 0 => {
                let i = rng.gen_range(1..=m);
                // a decrement below zero must fail and change nothing
                let delta = -(model[i - 1] as i64) - 1;
                if s.update(i, delta).is_ok() {
                    return Err(format!("op {op}: update below zero accepted"));
                }
            }
            4 => {
                let i = rng.gen_range(0..=m);
                let want: u64 = model[..i].iter().sum();
                let got = s.sum(i).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!("op {op}: sum({i}) = {got}, want {want}"));
                }
            }
            _ => {
                let total: u64 = model.iter().sum();
                if total > 0 {
                    let x = rng.gen_range(1..=total);
                    let mut acc = 0;
                    let want = model
                        .iter()
                        .position(|&v| {
                            acc += v;
                            acc >= x
                        })
                        .unwrap()
                        + 1;
                    let got = s.search(x).map_err(|e| e.to_string())?;
                    if got != want {
                        return Err(format!("op {op}: search({x}) = {got}, want {want}"));
                    }
                }
            }
        }
    }
    s.audit().map_err(|e| e.to_string())?;
    if s.to_vec() != model {
        return Err("final contents differ".into());
    }
    Ok(())
}

pub fn fuzz_gapbv(seed: u64) -> Result<(), String> {
    let mut rng = super::rng(seed);
    let mut g = GapBitvector::new();
    let mut model: Vec<bool> = Vec::new();
    for op in 0..OPS {
        let n = model.len();
        match rng.gen_range(0..7) {
            0 | 1 => {
                let i = rng.gen_range(0..=n);
                // a leading 0 is not representable
                let b = i == 0 || rng.gen_bool(0.3);
                g.insert_bit(i, b).map_err(|e| e.to_string())?;
                model.insert(i, b);
            }
            2 if n > 0 => {
                let i = rng.gen_range(0..n);
                match (g.delete0(i), model[i]) {
                    (Ok(()), false) => {
                        model.remove(i);
                    }
                    (Err(_), true) => {}
                    (r, b) => return Err(format!("op {op}: delete0({i}) on {b} gave {r:?}")),
                }
            }
            3 if n > 0 => {
                let i = rng.gen_range(0..n);
                let want = model[..=i].iter().filter(|&&b| b).count();
                let got = g.rank1(i).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!("op {op}: rank1({i}) = {got}, want {want}"));
                }
            }
            4 if n > 0 => {
                let i = rng.gen_range(0..n);
                if g.access(i).map_err(|e| e.to_string())? != model[i] {
                    return Err(format!("op {op}: access({i})"));
                }
            }
            5 => {
                let ones: Vec<usize> = (0..n).filter(|&i| model[i]).collect();
                if !ones.is_empty() {
                    let k = rng.gen_range(1..=ones.len());
                    let got = g.select1(k).map_err(|e| e.to_string())?;
                    if got != ones[k - 1] {
                        return Err(format!(
                            "op {op}: select1({k}) = {got}, want {}",
                            ones[k - 1]
                        ));
                    }
                }
            }
            _ => {
                if g.insert_bit(0, false).is_ok() {
                    return Err(format!("op {op}: leading 0 accepted"));
                }
            }
        }
    }
    g.audit().map_err(|e| e.to_string())?;
    if g.to_bits() != model {
        return Err("final contents differ".into());
    }
    Ok(())
}

pub fn fuzz_dynseq(seed: u64) -> Result<(), String> {
    let mut rng = super::rng(seed);
    let sigma = [2usize, 5, 16, 258][seed as usize % 4];
    let mut h = DynSequence::new(sigma);
    let mut model: Vec<u16> = Vec::new();
    for op in 0..OPS {
        let n = model.len();
        // skew towards few symbols so runs of equal symbols show up
        let c = if rng.gen_bool(0.5) {
            rng.gen_range(0..sigma.min(3)) as u16
        } else {
            rng.gen_range(0..sigma) as u16
        };
        match rng.gen_range(0..7) {
            0 | 1 => {
                let i = rng.gen_range(0..=n);
                h.insert(i, c).map_err(|e| e.to_string())?;
                model.insert(i, c);
            }
            2 if n > 0 => {
                let i = rng.gen_range(0..n);
                if h.access(i).map_err(|e| e.to_string())? != model[i] {
                    return Err(format!("op {op}: access({i})"));
                }
            }
            3 => {
                let i = rng.gen_range(0..=n);
                let want = model[..i].iter().filter(|&&x| x == c).count();
                let got = h.rank(c, i).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!("op {op}: rank({c}, {i}) = {got}, want {want}"));
                }
            }
            4 if n > 0 => {
                let i = rng.gen_range(0..n);
                let want = (
                    model[..i].iter().filter(|&&x| x == c).count(),
                    model[i] == c,
                );
                let got = h.rank_and_match(c, i).map_err(|e| e.to_string())?;
                let d = model[i];
                let want_ar = (d, model[..i].iter().filter(|&&x| x == d).count());
                let got_ar = h.access_and_rank(i).map_err(|e| e.to_string())?;
                if got != want || got_ar != want_ar {
                    return Err(format!("op {op}: fused queries at {i}"));
                }
            }
            5 => {
                let occ: Vec<usize> = (0..n).filter(|&i| model[i] == c).collect();
                if !occ.is_empty() {
                    let k = rng.gen_range(1..=occ.len());
                    let got = h.select(c, k).map_err(|e| e.to_string())?;
                    if got != occ[k - 1] {
                        return Err(format!("op {op}: select({c}, {k}) = {got}"));
                    }
                } else if h.select(c, 1).is_ok() {
                    return Err(format!("op {op}: select of an absent symbol"));
                }
            }
            _ => {
                if h.insert(0, sigma as u16).is_ok() {
                    return Err(format!("op {op}: symbol outside the alphabet accepted"));
                }
            }
        }
    }
    h.audit().map_err(|e| e.to_string())?;
    if h.to_vec() != model {
        return Err("final contents differ".into());
    }
    Ok(())
}
