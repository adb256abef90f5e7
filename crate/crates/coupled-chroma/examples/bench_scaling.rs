//! Wall-time growth of the constructive pipeline over increasing wheel
//! sizes. The whole run is search-free for these inputs, so the time grows
//! roughly with the graph size.
//!
//! ```bash
//! cargo run --release --example bench_scaling
//! ```

use std::time::Instant;

use coupled_chroma::{build_wheel, color_wheel, ListAssignment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    println!("{:>9} {:>12} {:>14}", "n", "median_ms", "ms_per_element");
    for n in [100usize, 1_000, 10_000, 100_000] {
        let (w, _) = build_wheel(n).unwrap();
        let elements = w.elements();
        let mut times = Vec::new();
        for trial in 0..5u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(trial ^ (n as u64) << 16);
            let mut lists = ListAssignment::new();
            for &e in &elements {
                let mut set = std::collections::BTreeSet::new();
                while set.len() < 5 {
                    set.insert(rng.gen_range(1..=15));
                }
                lists.insert(e, set);
            }
            let start = Instant::now();
            let coloring = color_wheel(n, &lists).unwrap();
            times.push(start.elapsed().as_secs_f64() * 1e3);
            std::hint::black_box(coloring);
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = times[times.len() / 2];
        println!(
            "{n:>9} {median:>12.3} {:>14.6}",
            median / (2 * n) as f64
        );
    }
}
