//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::io::Cursor;
use std::time::{Duration, Instant};

use rand::Rng;
use rlz77::alphabet::terminated;
use rlz77::codec::{self, FactorWriter, Format};
use rlz77::oracles::{naive_bwt, naive_lz77};
use rlz77::parser::{build, factorize_with, spawn_factorizer};
use rlz77::{Decoder, Factor, ParseOptions, ParseStats};

const AUDIT_EVERY: usize = 1000;

type Outcome = Result<String, String>;

fn audited() -> ParseOptions {
    ParseOptions {
        audit_every: Some(AUDIT_EVERY),
    }
}

/// The random suite: 200 texts for each length and alphabet size.
fn random_suite() -> Vec<Vec<u8>> {
    let mut rng = common::rng(2024);
    let mut out = Vec::new();
    for n in [16, 64, 256, 512] {
        for sigma in [2, 3, 4, 16] {
            for _ in 0..200 {
                out.push(common::random_text(&mut rng, n, sigma));
            }
        }
    }
    out
}

fn parse_audited(bytes: &[u8]) -> Result<(Vec<Factor>, ParseStats), String> {
    let bwt = build(bytes, None).map_err(|e| e.to_string())?;
    let mut factors = Vec::new();
    let stats = factorize_with(&bwt, audited(), |f| {
        factors.push(f);
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok((factors, stats))
}

fn oracle_equivalence(suite: &[Vec<u8>], budget: &mut Vec<(usize, usize)>) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut same_pos = 0usize;
    let mut copies = 0usize;
    for (i, t) in suite.iter().enumerate() {
        let (factors, stats) = parse_audited(t).map_err(|e| format!("text {i}: {e}"))?;
        budget.push((stats.max_samples, stats.runs));
        let reference = naive_lz77(&terminated(t)).map_err(|e| e.to_string())?;
        if let Some(msg) = common::compare_parse(t, &factors, &reference) {
            mismatches.push(format!("text {i}: {msg}"));
        }
        for (f, g) in factors.iter().zip(&reference) {
            if f.len > 0 {
                copies += 1;
                same_pos += (f.pos == g.pos) as usize;
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} texts, {} mismatches, {same_pos}/{copies} sources equal the leftmost, {:.1}s",
        suite.len(),
        mismatches.len(),
        elapsed.as_secs_f64()
    );
    if !mismatches.is_empty() {
        return Err(format!("{detail}; first: {}", mismatches[0]));
    }
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("{detail}; over 60s"));
    }
    Ok(detail)
}

fn bwt_construction() -> Outcome {
    let mut rng = common::rng(77);
    let mut bad = 0;
    let count = 150;
    for _ in 0..count {
        let n = rng.gen_range(0..=256);
        let sigma = rng.gen_range(1..=16);
        let t = common::random_text(&mut rng, n, sigma);
        let bwt = build(&t[..], None).map_err(|e| e.to_string())?;
        let mut reversed: Vec<_> = terminated(&t).into_iter().rev().collect();
        reversed.push(rlz77::Symbol::TERM_BWT);
        if bwt.to_symbols() != naive_bwt(&reversed) {
            bad += 1;
        }
    }
    let detail = format!("{count} texts, {bad} mismatches");
    if bad == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Compresses to the binary format through the streaming pipeline and
/// decodes it back.
fn binary_round_trip(bytes: &[u8]) -> Result<(Vec<u8>, ParseStats, usize), String> {
    let bwt = build(bytes, None).map_err(|e| e.to_string())?;
    let (tx, rx) = std::sync::mpsc::sync_channel(4096);
    let worker = std::thread::spawn(move || {
        factorize_with(&bwt, audited(), |f| {
            tx.send(f)
                .map_err(|_| rlz77::Error::Contract("receiver gone".into()))
        })
    });
    let mut writer = FactorWriter::new(Vec::new(), Format::Binary).map_err(|e| e.to_string())?;
    for f in rx.iter() {
        writer.write(&f).map_err(|e| e.to_string())?;
    }
    let stats = worker
        .join()
        .map_err(|_| "parser panicked".to_string())?
        .map_err(|e| e.to_string())?;
    let encoded = writer.finish().map_err(|e| e.to_string())?;
    let size = encoded.len();
    let mut dec = Decoder::new();
    for f in codec::BinaryReader::new(Cursor::new(encoded)).map_err(|e| e.to_string())? {
        dec.push(f.map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    }
    Ok((dec.finish().map_err(|e| e.to_string())?, stats, size))
}

fn round_trip(suite: &[Vec<u8>], budget: &mut Vec<(usize, usize)>) -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    for t in suite {
        let (back, stats, _) = binary_round_trip(t)?;
        budget.push((stats.max_samples, stats.runs));
        failures += (back != *t) as usize;
    }
    let mut rng = common::rng(10_000);
    let corpus = common::repetitive(&mut rng, 1000, 10_000, 1);
    let (back, stats, size) = binary_round_trip(&corpus)?;
    budget.push((stats.max_samples, stats.runs));
    failures += (back != corpus) as usize;
    // the pipeline above streams; this checks the spawned helper agrees
    let (rx, handle) = spawn_factorizer(build(&suite[0][..], None).map_err(|e| e.to_string())?, 8);
    let streamed: Vec<Factor> = rx.iter().collect();
    handle
        .join()
        .map_err(|_| "parser panicked")?
        .map_err(|e| e.to_string())?;
    failures += (rlz77::decompress(streamed).map_err(|e| e.to_string())? != suite[0]) as usize;

    let elapsed = start.elapsed();
    let detail = format!(
        "{} random texts + {} byte corpus (z = {}, R = {}, {} bytes encoded), {failures} failures, {:.1}s",
        suite.len(),
        corpus.len(),
        stats.z,
        stats.runs,
        size,
        elapsed.as_secs_f64()
    );
    if failures > 0 || elapsed >= Duration::from_secs(300) {
        Err(detail)
    } else {
        Ok(detail)
    }
}

fn sample_budget(budget: &[(usize, usize)]) -> Outcome {
    let violations = budget.iter().filter(|(s, r)| s > &(2 * r)).count();
    let worst = budget
        .iter()
        .map(|&(s, r)| s as f64 / r as f64)
        .fold(0.0, f64::max);
    let detail = format!(
        "{} parses swept every {AUDIT_EVERY} steps, {violations} violations, worst max_samples/R = {worst:.3}",
        budget.len()
    );
    if violations == 0 && !budget.is_empty() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn existence_check() -> Outcome {
    let start = Instant::now();
    let mut texts = 0usize;
    let mut checks = 0usize;
    for sigma in [2u8, 3] {
        for n in 0..=12u32 {
            let count = (sigma as usize).pow(n);
            let mut t = vec![b'a'; n as usize];
            for x in 0..count {
                let mut y = x;
                for b in t.iter_mut() {
                    *b = b'a' + (y % sigma as usize) as u8;
                    y /= sigma as usize;
                }
                checks += common::existence::check_existence(&t, false)
                    .map_err(|e| format!("{:?}: {e}", String::from_utf8_lossy(&t)))?;
                texts += 1;
            }
        }
    }
    let mut rng = common::rng(64);
    for _ in 0..50 {
        let n = rng.gen_range(1..=64);
        let sigma = rng.gen_range(2..=4);
        let t = common::random_text(&mut rng, n, sigma);
        checks += common::existence::check_existence(&t, true)
            .map_err(|e| format!("{:?}: {e}", String::from_utf8_lossy(&t)))?;
        texts += 1;
    }
    Ok(format!(
        "{texts} texts, {checks} predicate checks, 0 mismatches, {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn substrate_fuzz() -> Outcome {
    use common::fuzz::*;
    let mut failures = Vec::new();
    for seed in 0..SEEDS {
        for (name, run) in [
            ("spsi", fuzz_spsi as fn(u64) -> Result<(), String>),
            ("gapbv", fuzz_gapbv),
            ("dynseq", fuzz_dynseq),
        ] {
            if let Err(e) = run(seed) {
                failures.push(format!("{name} seed {seed}: {e}"));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "3 structures x {SEEDS} seeds x 10^4 ops, 0 mismatches"
        ))
    } else {
        Err(failures.join("; "))
    }
}

/// `(n, R, nodes, ops per char)` for the fixed block repeated `p` times.
fn scaling_runs() -> Result<Vec<(usize, usize, usize, f64)>, String> {
    let mut rng = common::rng(512);
    let block: Vec<u8> = (0..512).map(|_| rng.gen()).collect();
    let mut out = Vec::new();
    for p in [4, 16, 64, 256] {
        let text = block.repeat(p);
        let (_, stats) = rlz77::parse(&text).map_err(|e| e.to_string())?;
        out.push((
            stats.n,
            stats.runs,
            stats.total_nodes(),
            stats.total_ops() as f64 / stats.n as f64,
        ));
    }
    Ok(out)
}

fn space_scaling(runs: &[(usize, usize, usize, f64)]) -> Outcome {
    let ratios: Vec<f64> = runs
        .windows(2)
        .map(|w| w[1].2 as f64 / w[0].2 as f64)
        .collect();
    let detail = format!(
        "nodes {:?}, R {:?}, growth per 4x: {}",
        runs.iter().map(|r| r.2).collect::<Vec<_>>(),
        runs.iter().map(|r| r.1).collect::<Vec<_>>(),
        fmt_ratios(&ratios)
    );
    if ratios.iter().all(|&r| r < 1.5) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn time_scaling(runs: &[(usize, usize, usize, f64)]) -> Outcome {
    let changes: Vec<f64> = runs
        .windows(2)
        .map(|w| (w[1].3 - w[0].3).abs() / w[0].3)
        .collect();
    let detail = format!(
        "ops/char {}, relative change per 4x: {}",
        fmt_ratios(&runs.iter().map(|r| r.3).collect::<Vec<_>>()),
        fmt_ratios(&changes)
    );
    if changes.iter().all(|&c| c < 0.25) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fmt_ratios(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.3}")).collect();
    format!("[{}]", parts.join(", "))
}

fn report(id: usize, name: &str, outcome: &Outcome) -> bool {
    match outcome {
        Ok(detail) => println!("PASS  {id}. {name}: {detail}"),
        Err(detail) => println!("FAIL  {id}. {name}: {detail}"),
    }
    outcome.is_ok()
}

fn main() {
    let suite = random_suite();
    let mut budget = Vec::new();
    let mut ok = true;

    let r1 = oracle_equivalence(&suite, &mut budget);
    ok &= report(1, "oracle equivalence", &r1);
    ok &= report(2, "BWT construction", &bwt_construction());
    let r3 = round_trip(&suite, &mut budget);
    ok &= report(3, "round trip", &r3);
    ok &= report(4, "sample budget", &sample_budget(&budget));
    ok &= report(5, "existence queries", &existence_check());
    ok &= report(6, "substrate fuzz", &substrate_fuzz());
    match scaling_runs() {
        Ok(runs) => {
            ok &= report(7, "space scaling", &space_scaling(&runs));
            ok &= report(8, "time scaling", &time_scaling(&runs));
        }
        Err(e) => {
            ok &= report(7, "space scaling", &Err(e.clone()));
            ok &= report(8, "time scaling", &Err(e));
        }
    }
    if !ok {
        std::process::exit(1);
    }
}
