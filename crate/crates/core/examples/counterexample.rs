//! The n = 2 counterexample: the group-side regulator is `D2(i)` while the
//! cycle-side regulator of its image vanishes.
//!
//! Run with `cargo run --example counterexample [-- float]`.

use linchow::cli::{verify_quadruple, RunConfig, Mode};
use linchow::grouphom::NormalizedQuadruple;
use linchow::scalar::{FloatComplex, GaussianRational, Scalar};

fn report<S: Scalar>(mode: Mode) {
    let lit = |s: &str| S::parse_literal(s).expect("valid literal");
    let q = NormalizedQuadruple::new(lit("1"), lit("-1"), lit("1-i"), lit("1+i")).expect("ad - bc = 2");
    let config = RunConfig::new(mode, 0, 1).expect("valid config");
    let verification = verify_quadruple(&q, &config).expect("nondegenerate quadruple");
    print!("{}", verification.to_text());
    println!("{}", verification.to_json());
}

fn main() {
    match std::env::args().nth(1).as_deref() {
        Some("float") => report::<FloatComplex>(Mode::Float),
        _ => report::<GaussianRational>(Mode::Exact),
    }
}
