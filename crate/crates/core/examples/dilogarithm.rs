//! Values of `Li2` and the Bloch-Wigner function, and the residuals of its
//! functional equations at a few points.

use linchow::dilog::{d2, li2};
use linchow::scalar::{format_real, FloatComplex, Scalar};

fn c(re: f64, im: f64) -> FloatComplex {
    FloatComplex::new(re, im).expect("finite")
}

fn main() {
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    println!("li2(1)      = {}", li2(c(1.0, 0.0)));
    println!("pi^2/6      = {}", format_real(zeta2));
    println!("li2(-1)     = {}", li2(c(-1.0, 0.0)));
    println!("D2(i)       = {}", format_real(d2(c(0.0, 1.0))));
    println!("D2(e^(i pi/3)) = {}", format_real(d2(c(0.5, 3f64.sqrt() / 2.0))));

    let one = c(1.0, 0.0);
    for z in [c(0.3, 0.7), c(-2.0, 0.5), c(1.5, -3.0)] {
        let conj = d2(z) + d2(z.conj());
        let inv = d2(z) + d2(one.try_div(&z).unwrap());
        let refl = d2(z) + d2(one - z);
        println!(
            "z = {z}: conjugation {:.1e}, inversion {:.1e}, reflection {:.1e}",
            conj, inv, refl
        );
    }

    // Five-term relation in the form D2(x) + D2(y) + D2((1-x)/(1-xy))
    //   + D2(1-xy) + D2((1-y)/(1-xy)) = 0.
    let (x, y) = (c(0.2, 0.9), c(-1.1, 0.4));
    let xy = x * y;
    let w = one - xy;
    let five = d2(x) + d2(y) + d2((one - x).try_div(&w).unwrap()) + d2(w) + d2((one - y).try_div(&w).unwrap());
    println!("five-term residual {:.1e}", five);
}
