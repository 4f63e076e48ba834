//! Linear cycles in the algebraic simplex: the image of a group tuple, its
//! admissibility, faces and boundary.

use linchow::grouphom::{psi_tilde, BasisVector, NormalizedQuadruple};
use linchow::regulators::reg_g;
use linchow::scalar::{format_real, GaussianRational as G};
use linchow::simplicial::LinearCycle;

fn g(s: &str) -> G {
    s.parse().expect("valid literal")
}

fn show(label: &str, a: &str, b: &str, c: &str, d: &str) {
    let q = NormalizedQuadruple::new(g(a), g(b), g(c), g(d)).expect("ad - bc ≠ 0");
    let chain = psi_tilde(&q.to_tuple(), &BasisVector::first(2)).expect("admissible image");
    let (_, cycle) = &chain.terms()[0];
    println!("{label}: {}", cycle.to_json());
    println!("  admissible: {}", cycle.admissible());
    let par = cycle.parametrize_line().expect("a line");
    println!("  P = {:?}", par.base().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("  Q = {:?}", par.direction().iter().map(ToString::to_string).collect::<Vec<_>>());
    let boundary = chain.boundary().expect("proper faces");
    println!("  boundary has {} points: {}", boundary.terms().len(), boundary.to_json());
    println!("  boundary of boundary is zero: {}", boundary.boundary().unwrap().is_zero());
    println!("  reg_g = {}", format_real(reg_g(&chain).unwrap()));
}

fn main() {
    show("counterexample", "1", "-1", "1-i", "1+i");
    show("generic", "2", "3", "5", "-7");

    // A line inside a coordinate plane meets that face improperly.
    let bad = LinearCycle::from_rows(3, vec![vec![g("0"), g("0"), g("0"), g("1")], vec![g("1"), g("2"), g("3"), g("0")]])
        .unwrap()
        .unwrap();
    println!("coordinate line: {}", bad.admissible());
}
