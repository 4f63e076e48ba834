//! Both regulators through the full pipelines against their closed forms on
//! random quadruples.
//!
//! `cargo run --release --example closed_forms -- [seed] [count]`

use linchow::grouphom::{psi_tilde, BasisVector};
use linchow::regulators::{reg_b, reg_b_closed_form, reg_g, reg_g_closed_form};
use linchow::sampling::{random_invertible, random_quadruple, sample_rng, DEFAULT_HEIGHT};
use linchow::scalar::format_real;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let count: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let v = BasisVector::first(2);
    let (mut worst_b, mut worst_g) = (0f64, 0f64);
    for i in 0..count {
        let mut rng = sample_rng(seed, i);
        let Some(q) = random_quadruple(&mut rng, DEFAULT_HEIGHT) else { continue };
        // Move the normalized tuple by a random element so normalization is exercised.
        let h = random_invertible(&mut rng, 2, DEFAULT_HEIGHT);
        let t = q.to_tuple().left_translate(&h).expect("same size");
        let b = reg_b(&t, &v).unwrap();
        let b_closed = reg_b_closed_form(&q).unwrap();
        let Ok(g) = psi_tilde(&t, &v).map_err(drop).and_then(|c| reg_g(&c).map_err(drop)) else {
            println!("{i}: image not admissible, skipped");
            continue;
        };
        let g_closed = reg_g_closed_form(&q).unwrap();
        worst_b = worst_b.max((b - b_closed).abs());
        worst_g = worst_g.max((g - g_closed).abs());
        println!(
            "{i}: a={} b={} c={} d={}  reg_b={}  reg_g={}",
            q.a,
            q.b,
            q.c,
            q.d,
            format_real(b),
            format_real(g)
        );
    }
    println!("max |reg_b - D2(bc/ad)| = {:.2e}", worst_b);
    println!("max |reg_g - four-term form| = {:.2e}", worst_g);
}
