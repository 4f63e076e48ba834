//! The dilogarithm `Li2` and the Bloch-Wigner function `D2`.
//!
//! `D2(z) = Im Li2(z) + arg(1 - z) log|z|` is real-analytic on `C \ {0, 1}`,
//! extends continuously by `0` to `0`, `1` and `∞`, and vanishes on the real
//! line. Both functions are evaluated by moving `z` with `z -> 1/z` and
//! `z -> 1 - z` into `{|z| <= 1, Re z <= 1/2}`, where the Bernoulli series in
//! `u = -log(1 - z)` converges geometrically (`|u| < 1.8 < 2π`).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::scalar::FloatComplex;

const PI2_6: f64 = PI * PI / 6.0;

/// `B_{2k} / (2k+1)!` for `k = 1..`.
#[allow(clippy::excessive_precision)]
const BERNOULLI_COEFFS: [f64; 19] = [
    0.027777777777777776,
    -0.0002777777777777778,
    4.72411186696901e-06,
    -9.185773074661964e-08,
    1.8978869988971e-09,
    -4.0647616451442256e-11,
    8.921691020456452e-13,
    -1.9939295860721074e-14,
    4.518980029619918e-16,
    -1.0356517612181247e-17,
    2.395218621026187e-19,
    -5.581785874325009e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.315975652702203e-26,
    -1.740845657234001e-27,
    4.1576356446139e-29,
    -9.962148488284622e-31,
    2.3940344248961652e-32,
];

const SERIES_CUTOFF: f64 = 1e-17;

/// `Li2(z)` for `|z| <= 1`, `Re z <= 1/2`.
fn li2_series(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    let mut sum = u - u2 * 0.25;
    let mut power = u * u2;
    for c in BERNOULLI_COEFFS {
        let term = power * c;
        sum += term;
        if term.norm() < SERIES_CUTOFF {
            break;
        }
        power *= u2;
    }
    sum
}

/// `Li2(z)` for `|z| <= 1`.
fn li2_unit_disk(z: Complex64) -> Complex64 {
    if z.re > 0.5 {
        let one = Complex64::new(1.0, 0.0);
        let w = one - z;
        if w.norm() == 0.0 {
            return Complex64::new(PI2_6, 0.0);
        }
        Complex64::new(PI2_6, 0.0) - z.ln() * w.ln() - li2_series(w)
    } else {
        li2_series(z)
    }
}

fn li2_real(x: f64) -> Complex64 {
    if x == 1.0 {
        Complex64::new(PI2_6, 0.0)
    } else if x > 1.0 {
        // Principal branch: the cut (1, ∞) takes the value approached from below.
        let ln = x.ln();
        let re = 2.0 * PI2_6 - 0.5 * ln * ln - li2_unit_disk(Complex64::new(1.0 / x, 0.0)).re;
        Complex64::new(re, -PI * ln)
    } else if x < -1.0 {
        let ln = (-x).ln();
        let re = -li2_unit_disk(Complex64::new(1.0 / x, 0.0)).re - PI2_6 - 0.5 * ln * ln;
        Complex64::new(re, 0.0)
    } else {
        Complex64::new(li2_unit_disk(Complex64::new(x, 0.0)).re, 0.0)
    }
}

/// Principal-branch dilogarithm.
///
/// On the cut `(1, ∞)` this returns the value continuous from the lower half
/// plane, i.e. `Im Li2(x) = -π ln x`.
pub fn li2(z: FloatComplex) -> FloatComplex {
    let z = z.value();
    let value = if z.im == 0.0 {
        li2_real(z.re)
    } else if z.norm() > 1.0 {
        let log_neg = (-z).ln();
        -li2_unit_disk(z.inv()) - PI2_6 - log_neg * log_neg * 0.5
    } else {
        li2_unit_disk(z)
    };
    FloatComplex::from_raw(value)
}

/// `D2` on `{|z| <= 1, Re z <= 1/2}`, `z` not real.
fn d2_reduced(z: Complex64) -> f64 {
    let one_minus = Complex64::new(1.0, 0.0) - z;
    li2_series(z).im + one_minus.arg() * z.norm().ln()
}

/// Bloch-Wigner dilogarithm at a finite point; `0` on the real line.
pub fn d2(z: FloatComplex) -> f64 {
    let mut z = z.value();
    if z.im == 0.0 {
        return 0.0;
    }
    let mut sign = 1.0;
    if z.norm() > 1.0 {
        z = z.inv();
        sign = -sign;
    }
    if z.re > 0.5 {
        z = Complex64::new(1.0, 0.0) - z;
        sign = -sign;
    }
    if z.im == 0.0 {
        return 0.0;
    }
    sign * d2_reduced(z)
}

/// `D2(∞)`, the continuous extension.
pub const D2_AT_INFINITY: f64 = 0.0;

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> FloatComplex {
        FloatComplex::new(re, im).unwrap()
    }

    /// Σ 1/k² with the integral tail bound 1/N folded in as a midpoint.
    fn zeta2_oracle() -> (f64, f64) {
        let n = 200_000u64;
        let partial: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
        // Tail Σ_{k>N} 1/k² lies in (1/(N+1), 1/N).
        let lo = partial + 1.0 / (n as f64 + 1.0);
        let hi = partial + 1.0 / n as f64;
        (0.5 * (lo + hi), 0.5 * (hi - lo))
    }

    fn catalan_oracle() -> f64 {
        // Alternating series; pairing consecutive terms gives a positive
        // decreasing series so truncation error is below the first omitted term.
        (0..2_000_000u64)
            .rev()
            .map(|k| {
                let t = 1.0 / ((2 * k + 1) as f64).powi(2);
                if k % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    }

    fn eta2_oracle() -> f64 {
        (1..=2_000_000u64)
            .rev()
            .map(|k| {
                let t = 1.0 / (k as f64 * k as f64);
                if k % 2 == 1 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    }

    #[test]
    fn li2_special_values() {
        assert_eq!(li2(c(0.0, 0.0)).value(), Complex64::new(0.0, 0.0));
        let (zeta2, half_width) = zeta2_oracle();
        assert!(half_width < 1e-10);
        let v = li2(c(1.0, 0.0));
        assert!((v.re() - zeta2).abs() <= 1e-12, "{} vs {}", v.re(), zeta2);
        assert!((v.re() - 1.6449340668482264).abs() <= 1e-15);
        assert_eq!(v.im(), 0.0);
        let v = li2(c(-1.0, 0.0));
        assert!((v.re() + eta2_oracle()).abs() <= 1e-12);
        assert!((v.re() + 0.8224670334241132).abs() <= 1e-15);
    }

    // Reference values from a 30-digit mpmath evaluation.
    const LI2_REFERENCE: [(f64, f64, f64, f64); 12] = [
        (0.3, 0.4, 0.26659686674274041589, 0.46136289181910899428),
        (-2.0, 0.5, -1.4501377210744505816, 0.27357261260490551454),
        (0.9, 0.1, 1.2641867323387539781, 0.24373567998101405169),
        (5.0, -3.0, 0.033260008208192192025, -4.6816673723804519905),
        (1000.0, 1000.0, -25.18225150071889051, 17.0931098368264244),
        (-0.5, -0.9, -0.55568099490062417184, -0.70127187392792542726),
        (0.5, 0.8660254037844386, 0.27415567780803776568, 1.0149416064096535795),
        (2.0, 0.0, 2.4674011002723396547, -2.1775860903036021305),
        (-7.0, 0.0, -3.4001620444283866457, 0.0),
        (0.7, 0.0, 0.88937762428603866222, 0.0),
        (1e6, 1.0, -92.14430199651402266, 43.402692658984801712),
        (1.0, -1e-3, 1.6433669749208800547, -0.0079085382630580532692),
    ];

    const D2_REFERENCE: [(f64, f64, f64); 8] = [
        (0.3, 0.4, 0.82120755720773763499),
        (-2.0, 0.5, 0.15409423442587993037),
        (0.9, 0.1, 0.32166718138011510565),
        (5.0, -3.0, -0.27708166715654499789),
        (1000.0, 1000.0, 0.0041291036491533674175),
        (-0.5, -0.9, -0.6855270468230896318),
        (0.5, 0.8660254037844386, 1.014941606409653625),
        (1.0, -1e-3, -0.0079077528652873546407),
    ];

    #[test]
    fn li2_matches_reference() {
        for (re, im, want_re, want_im) in LI2_REFERENCE {
            let v = li2(c(re, im));
            assert!(
                (v.re() - want_re).abs() <= 1e-13 && (v.im() - want_im).abs() <= 1e-13,
                "li2({re}+{im}i) = {v}, want {want_re}+{want_im}i"
            );
        }
    }

    #[test]
    fn d2_matches_reference() {
        for (re, im, want) in D2_REFERENCE {
            let v = d2(c(re, im));
            assert!((v - want).abs() <= 1e-13, "d2({re}+{im}i) = {v}, want {want}");
        }
    }

    #[test]
    fn d2_catalan() {
        let catalan = catalan_oracle();
        assert!((catalan - 0.9159655941772190).abs() < 1e-12);
        assert!((d2(c(0.0, 1.0)) - catalan).abs() <= 1e-12);
        assert!((d2(c(0.0, -1.0)) + catalan).abs() <= 1e-12);
    }

    #[test]
    fn d2_vanishes_on_real_line() {
        for x in [-1e9, -3.5, -1.0, 0.0, 0.25, 0.5, 1.0, 2.0, 1e12] {
            assert_eq!(d2(c(x, 0.0)), 0.0);
        }
        assert_eq!(D2_AT_INFINITY, 0.0);
    }

    #[test]
    fn d2_continuity_near_one() {
        for k in 0..16 {
            let theta = k as f64 * PI / 8.0;
            let z = c(1.0 + 1e-8 * theta.cos(), 1e-8 * theta.sin());
            assert!(d2(z).abs() <= 1e-6);
        }
    }

    fn random_point(rng: &mut ChaCha8Rng) -> Complex64 {
        // Log-uniform modulus in [1e-3, 1e3], uniform angle.
        let r = 10f64.powf(rng.gen_range(-3.0..3.0));
        let theta = rng.gen_range(-PI..PI);
        Complex64::from_polar(r, theta)
    }

    fn fc(z: Complex64) -> FloatComplex {
        FloatComplex::new(z.re, z.im).unwrap()
    }

    #[test]
    fn d2_functional_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let one = Complex64::new(1.0, 0.0);
        for _ in 0..10_000 {
            let z = random_point(&mut rng);
            let v = d2(fc(z));
            assert!((d2(fc(z.conj())) + v).abs() <= 1e-10);
            assert!((d2(fc(z.inv())) + v).abs() <= 1e-10);
            assert!((d2(fc(one - z)) + v).abs() <= 1e-10);
        }
    }

    #[test]
    fn d2_five_term_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let one = Complex64::new(1.0, 0.0);
        let mut checked = 0;
        while checked < 10_000 {
            let x = random_point(&mut rng);
            let y = random_point(&mut rng);
            let w = one - x * y;
            if w.norm() < 1e-6 {
                continue;
            }
            let sum = d2(fc(x)) + d2(fc(y)) + d2(fc((one - x) / w)) + d2(fc(w)) + d2(fc((one - y) / w));
            assert!(sum.abs() <= 1e-10, "five-term residual {sum:e} at x={x}, y={y}");
            checked += 1;
        }
    }

    #[test]
    fn li2_reflection_and_inversion_agree_with_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..2_000 {
            let z = random_point(&mut rng);
            if (z.im).abs() < 1e-6 {
                continue;
            }
            // D2 from li2 must match the reduced evaluation.
            let l = li2(fc(z)).value();
            let from_li2 = l.im + (Complex64::new(1.0, 0.0) - z).arg() * z.norm().ln();
            assert!((from_li2 - d2(fc(z))).abs() <= 1e-10);
        }
    }
}
