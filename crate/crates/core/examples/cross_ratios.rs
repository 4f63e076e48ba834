//! Points, divisors and cross-ratios on the projective line, and the finite
//! sum that evaluates the regulator integral of three rational functions.

use linchow::projline::{cross_ratio, MobiusMap, ProjPoint, RationalFunc};
use linchow::regulators::{eq7_sum, eq7_sum_with_base};
use linchow::scalar::{format_real, GaussianRational as G};

fn g(s: &str) -> G {
    s.parse().expect("valid literal")
}

fn main() {
    let p = |s: &str| ProjPoint::<G>::parse(s).expect("valid point");
    let cr = cross_ratio(&p("0"), &p("inf"), &p("1"), &p("i")).expect("distinct points");
    println!("CR(0, inf, 1, i) = {cr}, D2 = {}", format_real(cr.d2()));
    println!("CR(0, 1, 0, 2)  = {}", cross_ratio(&p("0"), &p("1"), &p("0"), &p("2")).unwrap());

    let phi = MobiusMap::new(g("2"), g("i"), g("1"), g("3")).expect("invertible");
    let moved = cross_ratio(&phi.apply(&p("0")), &phi.apply(&p("inf")), &phi.apply(&p("1")), &phi.apply(&p("i")))
        .unwrap();
    println!("after a Möbius map: {moved}");

    // f1 = t, f2 = (1-i) t + 1, f3 = (1+i) t - 1
    let f1 = RationalFunc::from_linear(g("1"), g("0")).unwrap();
    let f2 = RationalFunc::from_linear(g("1-i"), g("1")).unwrap();
    let f3 = RationalFunc::from_linear(g("1+i"), g("-1")).unwrap();
    for (name, f) in [("f1", &f1), ("f2", &f2), ("f3", &f3)] {
        println!("div {name} = {}", f.divisor().to_json());
    }
    println!("sum at base inf: {}", format_real(eq7_sum(&f1, &f2, &f3)));
    for base in ["0", "7", "2-5i"] {
        println!("sum at base {base}: {}", format_real(eq7_sum_with_base(&f1, &f2, &f3, &p(base))));
    }
    let pushed = [&f1, &f2, &f3].map(|f| f.mobius_push(&phi));
    println!(
        "after pushing through the Möbius map: {}",
        format_real(eq7_sum(&pushed[0], &pushed[1], &pushed[2]))
    );
}
