//! Exact chain-map identities of the cycle map and the two experimental
//! boundary checks on random 5-tuples.
//!
//! `cargo run --release --example chain_maps -- [seed] [count]`

use linchow::cli::{run_chain_maps, Mode, RunConfig};
use linchow::scalar::GaussianRational;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let config = RunConfig::new(Mode::Exact, seed, count).expect("count ≥ 1");
    let summary = run_chain_maps::<GaussianRational>(&config);
    print!("{}", summary.to_text());
}
