//! Seeded random bundles and vocabularies.

use itassoc_core::{Event, EventStream, FuzzyInterval, MiningConfig, StreamBundle, Vocabulary, WindowConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream with up to `max_events` events at integer timestamps in `0..=horizon`
/// and values drawn uniformly from `[lo, hi]`.
pub fn stream<R: Rng>(rng: &mut R, name: &str, max_events: usize, horizon: u32, lo: f64, hi: f64) -> EventStream {
    let n = rng.random_range(0..=max_events);
    let events = (0..n)
        .map(|_| Event::new(rng.random_range(0..=horizon) as f64, rng.random_range(lo..=hi)))
        .collect();
    EventStream::new(name, events)
}

pub fn bundle<R: Rng>(rng: &mut R, max_events: usize, horizon: u32, lo: f64, hi: f64) -> StreamBundle {
    StreamBundle::new(
        stream(rng, "trigger one", max_events, horizon, lo, hi),
        stream(rng, "trigger two", max_events, horizon, lo, hi),
        stream(rng, "consequence", max_events, horizon, lo, hi),
    )
}

/// Bundle whose values are integers in `0..=max_value`.
pub fn integer_bundle<R: Rng>(rng: &mut R, max_events: usize, horizon: u32, max_value: u32) -> StreamBundle {
    let mut b = bundle(rng, max_events, horizon, 0.0, 0.0);
    for s in [&mut b.trigger1, &mut b.trigger2, &mut b.consequence] {
        for e in &mut s.events {
            e.value = rng.random_range(0..=max_value) as f64;
        }
    }
    b
}

/// Windows with real lengths in `[0.5, max]`.
pub fn windows<R: Rng>(rng: &mut R, max: f64) -> WindowConfig {
    WindowConfig::new(rng.random_range(0.5..=max), rng.random_range(0.5..=max)).unwrap()
}

fn labels(prefix: &str, k: usize) -> impl Iterator<Item = String> + '_ {
    (0..k).map(move |i| format!("{prefix}{i}"))
}

/// Ruspini partition of `[lo, hi]` with 1 to 4 labels: plateaus of random
/// (possibly zero) length joined by complementary ramps of positive length.
pub fn ruspini_vocabulary<R: Rng>(rng: &mut R, name: &str, lo: f64, hi: f64) -> Vocabulary {
    let k = rng.random_range(1..=4usize);
    // Alternating plateau, ramp, plateau, ..., plateau lengths.
    let lengths: Vec<f64> = (0..2 * k - 1)
        .map(|i| {
            if i % 2 == 0 {
                if rng.random_bool(0.25) { 0.0 } else { rng.random_range(0.0..1.0) }
            } else {
                rng.random_range(0.2..1.0)
            }
        })
        .collect();
    let total: f64 = lengths.iter().sum();
    let mut points = vec![lo];
    let mut acc = 0.0;
    for len in &lengths {
        acc += len;
        let prev = *points.last().unwrap();
        points.push((lo + (hi - lo) * (acc / total).min(1.0)).clamp(prev, hi));
    }
    *points.last_mut().unwrap() = hi;

    // Set i: ramp up over [p(2i-1), p(2i)], plateau [p(2i), p(2i+1)], ramp down to p(2i+2).
    let intervals = labels("R", k)
        .enumerate()
        .map(|(i, label)| {
            let b = points[2 * i];
            let c = points[2 * i + 1];
            let a = if i == 0 { b } else { points[2 * i - 1] };
            let d = if i == k - 1 { c } else { points[2 * i + 2] };
            FuzzyInterval::new(label, a, b, c, d).unwrap()
        })
        .collect();
    Vocabulary::new(name, intervals).unwrap()
}

/// Any valid vocabulary of 1 to 4 trapezoids inside `[lo, hi]`, with
/// overlaps, gaps and degenerate ramps all possible.
pub fn valid_vocabulary<R: Rng>(rng: &mut R, name: &str, lo: f64, hi: f64) -> Vocabulary {
    let k = rng.random_range(1..=4usize);
    let intervals = labels("V", k)
        .map(|label| {
            let mut p: [f64; 4] = std::array::from_fn(|_| {
                if rng.random_bool(0.2) {
                    rng.random_range(lo.ceil() as i64..=hi.floor() as i64) as f64
                } else {
                    rng.random_range(lo..=hi)
                }
            });
            p.sort_by(f64::total_cmp);
            if rng.random_bool(0.2) {
                p[1] = p[0];
            }
            if rng.random_bool(0.2) {
                p[2] = p[3];
            }
            FuzzyInterval::new(label, p[0], p[1], p[2], p[3]).unwrap()
        })
        .collect();
    Vocabulary::new(name, intervals).unwrap()
}

/// Rectangles `[lo_i, hi_i]` with integer bounds partitioning the integers
/// `0..=max` into consecutive, disjoint groups.
pub fn crisp_vocabulary<R: Rng>(rng: &mut R, name: &str, max: u32) -> Vocabulary {
    let mut intervals = Vec::new();
    let mut start = 0u32;
    let mut idx = 0;
    while start <= max {
        let end = (start + rng.random_range(0..=3)).min(max);
        let (lo, hi) = (start as f64, end as f64);
        intervals.push(FuzzyInterval::new(format!("K{idx}"), lo, lo, hi, hi).unwrap());
        idx += 1;
        start = end + 1;
    }
    Vocabulary::new(name, intervals).unwrap()
}

/// Mining config with Ruspini vocabularies covering values in `[lo, hi]` and
/// elapsed times in `[0, consequence window]`.
pub fn ruspini_config<R: Rng>(rng: &mut R, windows: WindowConfig, lo: f64, hi: f64) -> MiningConfig {
    MiningConfig::new(
        windows,
        ruspini_vocabulary(rng, "trigger1", lo, hi),
        ruspini_vocabulary(rng, "trigger2", lo, hi),
        ruspini_vocabulary(rng, "delta_t", 0.0, windows.consequence),
        ruspini_vocabulary(rng, "consequence", lo, hi),
    )
}

pub fn valid_config<R: Rng>(rng: &mut R, windows: WindowConfig, lo: f64, hi: f64) -> MiningConfig {
    MiningConfig::new(
        windows,
        valid_vocabulary(rng, "trigger1", lo, hi),
        valid_vocabulary(rng, "trigger2", lo, hi),
        valid_vocabulary(rng, "delta_t", 0.0, windows.consequence),
        valid_vocabulary(rng, "consequence", lo, hi),
    )
}
