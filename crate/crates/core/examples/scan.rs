//! Seeded scan of random quadruples, printed as CSV with a summary trailer.
//!
//! `cargo run --release --example scan -- [seed] [count] [exact|float]`

use linchow::cli::{scan, Mode, RunConfig};
use linchow::scalar::{FloatComplex, GaussianRational};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(25);
    let mode = match args.next().as_deref() {
        Some("float") => Mode::Float,
        _ => Mode::Exact,
    };
    let config = RunConfig::new(mode, seed, count).expect("count ≥ 1");
    let out = match mode {
        Mode::Exact => scan::<GaussianRational>(&config, false),
        Mode::Float => scan::<FloatComplex>(&config, false),
    };
    print!("{}", out.stdout);
}
