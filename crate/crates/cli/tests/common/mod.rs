#![allow(dead_code)]

use multistream_cli::trace::{format_event, TraceEvent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Case {
    pub args: Vec<String>,
    pub trace: String,
}

pub fn run(args: &[String], trace: &str) -> (i32, String, String) {
    let mut argv = vec!["multistream".to_string()];
    argv.extend(args.iter().cloned());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = multistream_cli::run_cli(argv, &mut trace.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// A random trace over a small alphabet, with occasional symbols that never
/// occur in the pattern and planted near-copies of the pattern.
pub fn random_case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = rng.gen_range(2..=4u8);
    let m = rng.gen_range(1..=24usize);
    let pattern: Vec<u8> = (0..m).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
    let (mode, k) = match rng.gen_range(0..3) {
        0 => ("exact", 0),
        1 => ("mismatch", rng.gen_range(0..=4usize)),
        _ => ("difference", rng.gen_range(1..=4usize)),
    };
    let streams = rng.gen_range(1..=5u64);
    let mut texts: Vec<Vec<u8>> = Vec::new();
    for _ in 0..streams {
        let mut t = Vec::new();
        let n = rng.gen_range(1..=150usize);
        while t.len() < n {
            if rng.gen_bool(0.1) {
                let mut copy = pattern.clone();
                for _ in 0..rng.gen_range(0..=k) {
                    let at = rng.gen_range(0..copy.len());
                    copy[at] = b'a' + rng.gen_range(0..sigma);
                }
                t.extend(copy);
            } else if rng.gen_bool(0.03) {
                t.push(*[b'z', b'\t', 0u8, 0xff].get(rng.gen_range(0..4)).unwrap());
            } else {
                t.push(b'a' + rng.gen_range(0..sigma));
            }
        }
        texts.push(t);
    }
    // interleave while keeping first mentions in id order
    let mut cursor = vec![0usize; texts.len()];
    let mut opened = 0usize;
    let mut lines = Vec::new();
    loop {
        let live: Vec<usize> = (0..texts.len())
            .filter(|&s| cursor[s] < texts[s].len() && s <= opened)
            .collect();
        if live.is_empty() {
            if opened + 1 < texts.len() {
                opened += 1;
                continue;
            }
            break;
        }
        let s = live[rng.gen_range(0..live.len())];
        if s == opened && opened + 1 < texts.len() {
            opened += 1;
        }
        lines.push(format_event(TraceEvent {
            stream_id: s as u64,
            symbol: texts[s][cursor[s]],
        }));
        cursor[s] += 1;
    }
    let mut args = vec![
        "--pattern".to_string(),
        String::from_utf8(pattern).unwrap(),
        "--mode".to_string(),
        mode.to_string(),
    ];
    if mode != "exact" {
        args.extend(["--k".to_string(), k.to_string()]);
    }
    Case {
        trace: lines.join("\n") + "\n",
        args,
    }
}
