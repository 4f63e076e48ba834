//! Chain-level regulators for `n = 2`.
//!
//! Both sides reduce to the same finite sum over divisor points on `P¹`,
//!
//! ```text
//!   Σ ν_{x1}(f1) ν_{x2}(f2) ν_{x3}(f3) · D2(CR(x1, x2, x3, base))
//! ```
//!
//! evaluated by [`eq7_sum`]. The group side ([`reg_b`]) feeds it the ratios of
//! linear forms `ℓ_i / ℓ_0` with `ℓ_i(z) = (g_i v)_0 + (g_i v)_1 z`. The cycle
//! side ([`reg_g`]) pulls back `(x_1+x_2+x_3)/(-x_0)`, `(x_2+x_3)/(-x_1)`,
//! `x_3/(-x_2)` along a parametrization of the line.

use num_traits::ToPrimitive;
use serde_json::Value;
use thiserror::Error;

use crate::grouphom::{
    group_boundary, normalize_quadruple, psi_tilde, BasisVector, GroupChain, GroupError, GroupTuple,
    NormalizedQuadruple,
};
use crate::projline::{cross_ratio, ProjError, ProjPoint, RationalFunc};
use crate::scalar::{format_real, Scalar, ScalarError};
use crate::simplicial::{AdmissibilityReport, CycleChain, CycleError, LinearCycle, Parametrization};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegulatorError {
    #[error("regulators are implemented for n = 2 only, got n = {0}")]
    UnsupportedRank(usize),
    #[error("expected a tuple of length {expected}, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("closed form needs a ≠ 0, b ≠ 0, c ≠ d")]
    DegenerateParameters,
    #[error("pullback of function {0} is 0/0 along the cycle")]
    IdenticallySingular(usize),
    #[error("cycle is not admissible: {0}")]
    NonAdmissible(AdmissibilityReport),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl RegulatorError {
    /// `true` when the input itself is degenerate rather than malformed.
    pub fn is_degenerate_input(&self) -> bool {
        !matches!(
            self,
            RegulatorError::UnsupportedRank(_) | RegulatorError::WrongLength { .. }
        )
    }
}

/// The `P¹` integral of `r_3(f1, f2, f3)` as a sum over divisor supports,
/// with the fourth cross-ratio point at `∞`.
pub fn eq7_sum<S: Scalar>(f1: &RationalFunc<S>, f2: &RationalFunc<S>, f3: &RationalFunc<S>) -> f64 {
    eq7_sum_with_base(f1, f2, f3, &ProjPoint::Infinity)
}

/// [`eq7_sum`] with an arbitrary fourth point. Triples whose cross-ratio is
/// undefined or lands in `{0, 1, ∞}` contribute zero.
pub fn eq7_sum_with_base<S: Scalar>(
    f1: &RationalFunc<S>,
    f2: &RationalFunc<S>,
    f3: &RationalFunc<S>,
    base: &ProjPoint<S>,
) -> f64 {
    let mut sum = 0.0;
    for (x1, m1) in f1.divisor().terms() {
        for (x2, m2) in f2.divisor().terms() {
            for (x3, m3) in f3.divisor().terms() {
                let Ok(cr) = cross_ratio(x1, x2, x3, base) else {
                    continue;
                };
                let value = cr.d2();
                if value != 0.0 {
                    sum += (m1 * m2 * m3) as f64 * value;
                }
            }
        }
    }
    sum
}

fn check_quadruple_shape<S: Scalar>(t: &GroupTuple<S>) -> Result<(), RegulatorError> {
    if t.n() != 2 {
        return Err(RegulatorError::UnsupportedRank(t.n()));
    }
    if t.len() != 4 {
        return Err(RegulatorError::WrongLength {
            expected: 4,
            found: t.len(),
        });
    }
    Ok(())
}

/// The functions `f_i = ℓ_i / ℓ_0`, `i = 1, 2, 3`, on `P¹ ∋ z = X_1/X_0`.
pub fn group_side_functions<S: Scalar>(
    t: &GroupTuple<S>,
    v: &BasisVector<S>,
) -> Result<[RationalFunc<S>; 3], RegulatorError> {
    check_quadruple_shape(t)?;
    let w = t.images(v)?;
    // g_i v ≠ 0 because g_i is invertible and v ≠ 0.
    let linear: Vec<RationalFunc<S>> = w
        .iter()
        .map(|wi| RationalFunc::from_linear(wi[1].clone(), wi[0].clone()))
        .collect::<Result<_, _>>()?;
    Ok([
        linear[1].div(&linear[0]),
        linear[2].div(&linear[0]),
        linear[3].div(&linear[0]),
    ])
}

/// Group-side regulator of a 4-tuple in `GL_2`.
pub fn reg_b<S: Scalar>(t: &GroupTuple<S>, v: &BasisVector<S>) -> Result<f64, RegulatorError> {
    let [f1, f2, f3] = group_side_functions(t, v)?;
    Ok(eq7_sum(&f1, &f2, &f3))
}

/// `D2(bc/ad)`.
pub fn reg_b_closed_form<S: Scalar>(q: &NormalizedQuadruple<S>) -> Result<f64, RegulatorError> {
    for (name, x) in [("a", &q.a), ("b", &q.b), ("c", &q.c), ("d", &q.d)] {
        if x.is_zero() {
            return Err(RegulatorError::ZeroParameter(name));
        }
    }
    let ratio = (q.b.clone() * q.c.clone()).try_div(&(q.a.clone() * q.d.clone()))?;
    Ok(ProjPoint::Finite(ratio).d2())
}

/// Linear form `Σ w_j x_j` pulled back to `(slope, constant)` in `t`.
fn pull_back<S: Scalar>(par: &Parametrization<S>, weights: [i64; 4]) -> (S, S) {
    let dot = |v: &[S]| {
        v.iter()
            .zip(weights)
            .filter(|(_, w)| *w != 0)
            .fold(S::zero(), |acc, (x, w)| acc + S::from_integer(w) * x.clone())
    };
    (dot(par.direction()), dot(par.base()))
}

/// The pullbacks of `(x_1+x_2+x_3)/(-x_0)`, `(x_2+x_3)/(-x_1)`, `x_3/(-x_2)`.
pub fn cycle_side_functions<S: Scalar>(
    par: &Parametrization<S>,
) -> Result<[RationalFunc<S>; 3], RegulatorError> {
    const FORMS: [([i64; 4], [i64; 4]); 3] = [
        ([0, 1, 1, 1], [-1, 0, 0, 0]),
        ([0, 0, 1, 1], [0, -1, 0, 0]),
        ([0, 0, 0, 1], [0, 0, -1, 0]),
    ];
    let mut out = Vec::with_capacity(3);
    for (k, (num, den)) in FORMS.iter().enumerate() {
        let linear = |w: [i64; 4]| {
            let (slope, constant) = pull_back(par, w);
            RationalFunc::from_linear(slope, constant).map_err(|_| RegulatorError::IdenticallySingular(k + 1))
        };
        out.push(linear(*num)?.div(&linear(*den)?));
    }
    let [a, b, c] = <[RationalFunc<S>; 3]>::try_from(out).expect("three functions");
    Ok([a, b, c])
}

/// Cycle-side regulator on one line, along the given parametrization.
pub fn reg_g_along<S: Scalar>(par: &Parametrization<S>) -> Result<f64, RegulatorError> {
    let [f1, f2, f3] = cycle_side_functions(par)?;
    Ok(eq7_sum(&f1, &f2, &f3))
}

/// Cycle-side regulator of a single admissible line in `Δ³`.
pub fn reg_g_cycle<S: Scalar>(cycle: &LinearCycle<S>) -> Result<f64, RegulatorError> {
    let report = cycle.admissible();
    if !report.admissible {
        return Err(RegulatorError::NonAdmissible(report));
    }
    reg_g_along(&cycle.parametrize_line()?)
}

/// Cycle-side regulator of a chain of lines in `Δ³`.
pub fn reg_g<S: Scalar>(chain: &CycleChain<S>) -> Result<f64, RegulatorError> {
    if (chain.m(), chain.p()) != (3, 2) {
        return Err(CycleError::WrongShape {
            expected: (3, 2),
            found: (chain.m(), chain.p()),
        }
        .into());
    }
    let mut total = 0.0;
    for (coeff, cycle) in chain.terms() {
        let weight = coeff.to_f64().expect("finite coefficient");
        total += weight * reg_g_cycle(cycle)?;
    }
    Ok(total)
}

/// The four `D2` arguments of the cycle-side closed form, in display order.
pub fn cr_arguments<S: Scalar>(q: &NormalizedQuadruple<S>) -> Result<[S; 4], RegulatorError> {
    let NormalizedQuadruple { a, b, c, d } = q;
    if a.is_zero() || b.is_zero() || c.approx_eq(d) {
        return Err(RegulatorError::DegenerateParameters);
    }
    let one = S::one();
    let delta = q.delta();
    let c_minus_d = c.clone() - d.clone();
    let d_minus_c = -c_minus_d.clone();
    let b_minus_a = b.clone() - a.clone();
    let first = ((d.clone() - one.clone()) * delta.clone()).try_div(&(b.clone() * c_minus_d.clone()))?;
    let second = ((c.clone() - one.clone()) * delta).try_div(&(a.clone() * c_minus_d))?;
    let third = (b_minus_a.clone() * (d.clone() - one.clone())).try_div(&(b.clone() * d_minus_c.clone()))?;
    let fourth = (b_minus_a * (c.clone() - one)).try_div(&(a.clone() * d_minus_c))?;
    Ok([first, second, third, fourth])
}

/// `D2(A1) - D2(A2) - D2(A3) + D2(A4)` over [`cr_arguments`].
pub fn reg_g_closed_form<S: Scalar>(q: &NormalizedQuadruple<S>) -> Result<f64, RegulatorError> {
    let args = cr_arguments(q)?;
    let d = |x: &S| ProjPoint::Finite(x.clone()).d2();
    Ok(d(&args[0]) - d(&args[1]) - d(&args[2]) + d(&args[3]))
}

/// Both regulators on one 4-tuple and their difference.
#[derive(Clone, Debug)]
pub struct RegulatorReport<S> {
    pub reg_b: f64,
    pub reg_g: f64,
    pub discrepancy: f64,
    pub cr_arguments: Option<[S; 4]>,
    pub quadruple: Option<NormalizedQuadruple<S>>,
    pub exact_mode: bool,
}

impl<S: Scalar> RegulatorReport<S> {
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("reg_b".into(), json_real(self.reg_b));
        obj.insert("reg_g".into(), json_real(self.reg_g));
        obj.insert("discrepancy".into(), json_real(self.discrepancy));
        obj.insert(
            "cr_arguments".into(),
            match &self.cr_arguments {
                Some(args) => Value::Array(args.iter().map(|a| Value::String(a.to_string())).collect()),
                None => Value::Null,
            },
        );
        obj.insert(
            "quadruple".into(),
            self.quadruple.as_ref().map_or(Value::Null, |q| q.to_json()),
        );
        obj.insert("exact_mode".into(), Value::Bool(self.exact_mode));
        Value::Object(obj)
    }
}

/// A JSON number printed with 17 significant digits.
pub fn json_real(x: f64) -> Value {
    let text = format_real(x);
    serde_json::from_str(&text).expect("formatted reals are valid JSON numbers")
}

/// `reg_b(t, v)`, `reg_g(ψ̃(t, v))` and `reg_b - reg_g`.
pub fn discrepancy<S: Scalar>(t: &GroupTuple<S>, v: &BasisVector<S>) -> Result<RegulatorReport<S>, RegulatorError> {
    let b = reg_b(t, v)?;
    let g = reg_g(&psi_tilde(t, v)?)?;
    let quadruple = normalize_quadruple(t, v).ok();
    let cr_arguments = quadruple.as_ref().and_then(|q| cr_arguments(q).ok());
    Ok(RegulatorReport {
        reg_b: b,
        reg_g: g,
        discrepancy: b - g,
        cr_arguments,
        quadruple,
        exact_mode: S::EXACT,
    })
}

fn check_quintuple_shape<S: Scalar>(t5: &GroupTuple<S>) -> Result<(), RegulatorError> {
    if t5.n() != 2 {
        return Err(RegulatorError::UnsupportedRank(t5.n()));
    }
    if t5.len() != 5 {
        return Err(RegulatorError::WrongLength {
            expected: 5,
            found: t5.len(),
        });
    }
    Ok(())
}

/// `Σ (-1)^i reg_g(ψ̃(g_0, …, ĝ_i, …, g_4))`, with equal omissions merged
/// before evaluation.
pub fn boundary_vanishing_check<S: Scalar>(t5: &GroupTuple<S>, v: &BasisVector<S>) -> Result<f64, RegulatorError> {
    check_quintuple_shape(t5)?;
    let boundary = group_boundary(&GroupChain::from_tuple(t5.clone()))?;
    let mut total = 0.0;
    for (coeff, t) in boundary.terms() {
        let weight = coeff.to_f64().expect("finite coefficient");
        total += weight * reg_g(&psi_tilde(t, v)?)?;
    }
    Ok(total)
}

/// `Σ (-1)^i reg_b(g_0, …, ĝ_i, …, g_4)`, with equal omissions merged.
pub fn cocycle_check_b<S: Scalar>(t5: &GroupTuple<S>, v: &BasisVector<S>) -> Result<f64, RegulatorError> {
    check_quintuple_shape(t5)?;
    let boundary = group_boundary(&GroupChain::from_tuple(t5.clone()))?;
    let mut total = 0.0;
    for (coeff, t) in boundary.terms() {
        let weight = coeff.to_f64().expect("finite coefficient");
        total += weight * reg_b(t, v)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::projline::MobiusMap;
    use crate::scalar::{FloatComplex, GaussianRational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type G = GaussianRational;

    const CATALAN: f64 = 0.915_965_594_177_219;

    fn g(s: &str) -> G {
        s.parse().unwrap()
    }

    fn lin(alpha: &str, beta: &str) -> RationalFunc<G> {
        RationalFunc::from_linear(g(alpha), g(beta)).unwrap()
    }

    fn quad(a: &str, b: &str, c: &str, d: &str) -> NormalizedQuadruple<G> {
        NormalizedQuadruple::new(g(a), g(b), g(c), g(d)).unwrap()
    }

    fn counterexample() -> NormalizedQuadruple<G> {
        quad("1", "-1", "1-i", "1+i")
    }

    fn random_gaussian(rng: &mut ChaCha8Rng) -> G {
        G::from_fractions(
            rng.gen_range(-10..=10),
            rng.gen_range(1..=10),
            rng.gen_range(-10..=10),
            rng.gen_range(1..=10),
        )
    }

    fn random_quadruple(rng: &mut ChaCha8Rng) -> NormalizedQuadruple<G> {
        loop {
            let [a, b, c, d] = [0; 4].map(|_| random_gaussian(rng));
            let Ok(q) = NormalizedQuadruple::new(a, b, c, d) else { continue };
            if cr_arguments(&q).is_ok() && reg_b_closed_form(&q).is_ok() {
                return q;
            }
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix<G> {
        loop {
            let m = Matrix::from_rows((0..2).map(|_| (0..2).map(|_| random_gaussian(rng)).collect()).collect(), 2)
                .unwrap();
            if !Scalar::is_zero(&m.det()) {
                return m;
            }
        }
    }

    #[test]
    fn eq7_of_linear_triple_matches_closed_form() {
        // (z, cz + a, dz + b) → D2(bc/ad)
        let q = counterexample();
        let f1 = lin("1", "0");
        let f2 = RationalFunc::from_linear(q.c.clone(), q.a.clone()).unwrap();
        let f3 = RationalFunc::from_linear(q.d.clone(), q.b.clone()).unwrap();
        let v = eq7_sum(&f1, &f2, &f3);
        let bc_over_ad = (q.b.clone() * q.c.clone()).try_div(&(q.a.clone() * q.d.clone())).unwrap();
        assert_eq!(bc_over_ad, G::i());
        assert!((v - ProjPoint::Finite(bc_over_ad).d2()).abs() <= 1e-15);
        assert!((v - CATALAN).abs() <= 1e-12);
    }

    #[test]
    fn eq7_with_constant_argument_is_zero() {
        let c = RationalFunc::constant(g("3-i")).unwrap();
        assert_eq!(eq7_sum(&c, &lin("1", "2"), &lin("1", "i")), 0.0);
        assert_eq!(eq7_sum(&lin("1", "2"), &c, &lin("1", "i")), 0.0);
    }

    #[test]
    fn eq7_rescaling_is_exact() {
        let f1 = lin("2", "1+i").div(&lin("1", "-3"));
        let f2 = lin("1", "i");
        let f3 = lin("1/2", "-2").mul(&lin("1", "5i"));
        let base = eq7_sum(&f1, &f2, &f3);
        let lambda = g("7-2i");
        assert_eq!(eq7_sum(&f1.rescaled(&lambda).unwrap(), &f2, &f3), base);
        assert_eq!(eq7_sum(&f1, &f2.rescaled(&lambda).unwrap(), &f3), base);
        assert_eq!(eq7_sum(&f1, &f2, &f3.rescaled(&lambda).unwrap()), base);
    }

    #[test]
    fn eq7_base_point_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let random_func = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(1..=3);
            let mut f = RationalFunc::constant(G::one()).unwrap();
            for _ in 0..k {
                let a = random_gaussian(rng);
                let b = random_gaussian(rng);
                if let Ok(l) = RationalFunc::from_linear(a, b) {
                    f = if rng.gen_bool(0.5) { f.mul(&l) } else { f.div(&l) };
                }
            }
            f
        };
        for _ in 0..30 {
            let fs = [random_func(&mut rng), random_func(&mut rng), random_func(&mut rng)];
            let reference = eq7_sum(&fs[0], &fs[1], &fs[2]);
            for _ in 0..5 {
                let base = ProjPoint::Finite(random_gaussian(&mut rng));
                let v = eq7_sum_with_base(&fs[0], &fs[1], &fs[2], &base);
                assert!((v - reference).abs() <= 1e-10, "{v} vs {reference}");
            }
        }
    }

    #[test]
    fn reg_b_counterexample_is_catalan() {
        let t = counterexample().to_tuple();
        let v = reg_b(&t, &BasisVector::first(2)).unwrap();
        assert!((v.abs() - CATALAN).abs() <= 1e-9);
        assert!((v - reg_b_closed_form(&counterexample()).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn reg_b_invariances() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let v = BasisVector::first(2);
        for _ in 0..20 {
            let t = GroupTuple::new(2, (0..4).map(|_| random_matrix(&mut rng)).collect()).unwrap();
            let base = reg_b(&t, &v).unwrap();
            let h = random_matrix(&mut rng);
            let moved = reg_b(&t.left_translate(&h).unwrap(), &v).unwrap();
            assert!((moved - base).abs() <= 1e-10);
            let lambda = loop {
                let l = random_gaussian(&mut rng);
                if !Scalar::is_zero(&l) {
                    break l;
                }
            };
            let rescaled = reg_b(&t, &v.scaled(&lambda).unwrap()).unwrap();
            assert!((rescaled - base).abs() <= 1e-10);
        }
    }

    #[test]
    fn reg_b_closed_form_examples() {
        assert!((reg_b_closed_form(&counterexample()).unwrap() - CATALAN).abs() <= 1e-12);
        // bc = ad is excluded by Δ ≠ 0, so take bc/ad real instead of 1.
        assert_eq!(reg_b_closed_form(&quad("2", "3", "5", "-7")).unwrap(), 0.0);
        let q = NormalizedQuadruple { a: g("0"), b: g("1"), c: g("1"), d: g("1") };
        assert_eq!(reg_b_closed_form(&q).unwrap_err(), RegulatorError::ZeroParameter("a"));
    }

    #[test]
    fn reg_b_pipeline_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let v = BasisVector::first(2);
        for _ in 0..50 {
            let q = random_quadruple(&mut rng);
            let h = random_matrix(&mut rng);
            let t = q.to_tuple().left_translate(&h).unwrap();
            let pipeline = reg_b(&t, &v).unwrap();
            assert!((pipeline - reg_b_closed_form(&q).unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn reg_g_counterexample_is_exactly_zero() {
        let q = counterexample();
        let chain = psi_tilde(&q.to_tuple(), &BasisVector::first(2)).unwrap();
        assert_eq!(reg_g(&chain).unwrap(), 0.0);
        assert_eq!(cr_arguments(&q).unwrap(), [G::one(), G::one(), G::one(), G::one()]);
        assert_eq!(reg_g_closed_form(&q).unwrap(), 0.0);
    }

    #[test]
    fn cr_arguments_examples() {
        // Δ = a - b here as in the counterexample, which forces all four to 1.
        assert_eq!(cr_arguments(&quad("2", "3", "5", "7")).unwrap(), [G::one(), G::one(), G::one(), G::one()]);
        assert_eq!(
            cr_arguments(&quad("2", "3", "5", "-7")).unwrap(),
            [g("58/9"), g("-29/6"), g("2/9"), g("-1/6")]
        );
        let q = NormalizedQuadruple { a: g("1"), b: g("2"), c: g("3"), d: g("3") };
        assert_eq!(cr_arguments(&q).unwrap_err(), RegulatorError::DegenerateParameters);
        assert_eq!(reg_g_closed_form(&q).unwrap_err(), RegulatorError::DegenerateParameters);
    }

    #[test]
    fn reg_g_pipeline_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let v = BasisVector::first(2);
        for _ in 0..50 {
            let q = random_quadruple(&mut rng);
            let Ok(chain) = psi_tilde(&q.to_tuple(), &v) else { continue };
            let Ok(pipeline) = reg_g(&chain) else { continue };
            assert!((pipeline - reg_g_closed_form(&q).unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn reg_g_is_parametrization_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let v = BasisVector::first(2);
        for _ in 0..20 {
            let q = random_quadruple(&mut rng);
            let Ok(chain) = psi_tilde(&q.to_tuple(), &v) else { continue };
            let (_, cycle) = &chain.terms()[0];
            let par = cycle.parametrize_line().unwrap();
            let Ok(base) = reg_g_along(&par) else { continue };
            let phi = loop {
                let [a, b, c, d] = [0; 4].map(|_| random_gaussian(&mut rng));
                if let Ok(m) = MobiusMap::new(a, b, c, d) {
                    break m;
                }
            };
            let other = reg_g_along(&par.reparametrize(&phi)).unwrap();
            assert!((other - base).abs() <= 1e-10);
        }
    }

    #[test]
    fn explicit_parametrization_gives_same_value() {
        // t ↦ (Δ, Δt, bt - d, c - at)
        let q = quad("2", "1+i", "-3", "1/2-i");
        let chain = psi_tilde(&q.to_tuple(), &BasisVector::first(2)).unwrap();
        let (_, cycle) = &chain.terms()[0];
        let delta = q.delta();
        let par = Parametrization::new(
            cycle,
            vec![delta.clone(), G::zero(), -q.d.clone(), q.c.clone()],
            vec![G::zero(), delta, q.b.clone(), -q.a.clone()],
        )
        .unwrap();
        let a = reg_g_along(&par).unwrap();
        let b = reg_g(&chain).unwrap();
        assert!((a - b).abs() <= 1e-10);
        assert!((a - reg_g_closed_form(&q).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn reg_g_rejects_wrong_shape_and_singular_pullbacks() {
        let chain = CycleChain::<G>::zero(4, 2);
        assert!(matches!(reg_g(&chain), Err(RegulatorError::Cycle(CycleError::WrongShape { .. }))));
        // x_3 ≡ 0 on the line makes x_3/(-x_2) vanish identically; the cycle is
        // also not admissible, which is reported first.
        let c = LinearCycle::from_rows(3, vec![
            vec![g("0"), g("0"), g("0"), g("1")],
            vec![g("1"), g("2"), g("3"), g("0")],
        ])
        .unwrap()
        .unwrap();
        assert!(matches!(reg_g_cycle(&c), Err(RegulatorError::NonAdmissible(_))));
        let par = c.parametrize_line().unwrap();
        assert_eq!(reg_g_along(&par).unwrap_err(), RegulatorError::IdenticallySingular(3));
    }

    #[test]
    fn discrepancy_of_counterexample() {
        let report = discrepancy(&counterexample().to_tuple(), &BasisVector::first(2)).unwrap();
        assert_eq!(report.reg_g, 0.0);
        assert!((report.discrepancy.abs() - CATALAN).abs() <= 1e-9);
        assert_eq!(report.discrepancy, report.reg_b - report.reg_g);
        assert!(report.exact_mode);
        let json = report.to_json();
        assert_eq!(json["cr_arguments"], serde_json::json!(["1", "1", "1", "1"]));
        assert_eq!(json["quadruple"]["delta"], "2");
        assert_eq!(json["exact_mode"], true);
    }

    #[test]
    fn discrepancy_vanishes_for_real_arguments() {
        let report = discrepancy(&quad("2", "3", "5", "-7").to_tuple(), &BasisVector::first(2)).unwrap();
        assert_eq!(report.reg_b, 0.0);
        assert!(report.reg_g.abs() <= 1e-15);
        assert!(report.discrepancy.abs() <= 1e-15);
    }

    #[test]
    fn float_mode_agrees_with_exact() {
        let q = counterexample();
        let qf = NormalizedQuadruple::new(
            FloatComplex::from_gaussian(&q.a),
            FloatComplex::from_gaussian(&q.b),
            FloatComplex::from_gaussian(&q.c),
            FloatComplex::from_gaussian(&q.d),
        )
        .unwrap();
        let report = discrepancy(&qf.to_tuple(), &BasisVector::first(2)).unwrap();
        assert!(report.reg_g.abs() <= 1e-12);
        assert!((report.reg_b.abs() - CATALAN).abs() <= 1e-9);
        assert!(!report.exact_mode);
    }

    #[test]
    fn five_tuple_checks() {
        let e = Matrix::<G>::identity(2);
        let t5 = GroupTuple::new(2, vec![e.clone(); 5]).unwrap();
        let v = BasisVector::first(2);
        assert_eq!(cocycle_check_b(&t5, &v).unwrap(), 0.0);
        assert_eq!(boundary_vanishing_check(&t5, &v).unwrap(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(26);
        for _ in 0..5 {
            let t5 = GroupTuple::new(2, (0..5).map(|_| random_matrix(&mut rng)).collect()).unwrap();
            let base = cocycle_check_b(&t5, &v).unwrap();
            assert!(base.abs() <= 1e-8);
            let h = random_matrix(&mut rng);
            let moved = cocycle_check_b(&t5.left_translate(&h).unwrap(), &v).unwrap();
            assert!((moved - base).abs() <= 1e-10);
        }

        // g_0 v = g_1 v makes the omission (g_0, g_2, g_3, g_4) ~ (g_1, …) fine but
        // (g_0, g_1, g_2, g_3) non-admissible.
        let t5 = GroupTuple::new(
            2,
            vec![
                e.clone(),
                Matrix::from_rows(vec![vec![g("1"), g("1")], vec![g("0"), g("1")]], 2).unwrap(),
                random_matrix(&mut rng),
                random_matrix(&mut rng),
                random_matrix(&mut rng),
            ],
        )
        .unwrap();
        assert!(matches!(
            boundary_vanishing_check(&t5, &v),
            Err(RegulatorError::Group(GroupError::NonAdmissible(_)))
        ));
    }

    #[test]
    fn non_quadruples_are_rejected() {
        let e = Matrix::<G>::identity(3);
        let t = GroupTuple::new(3, vec![e.clone(); 4]).unwrap();
        assert_eq!(reg_b(&t, &BasisVector::first(3)).unwrap_err(), RegulatorError::UnsupportedRank(3));
        let e = Matrix::<G>::identity(2);
        let t = GroupTuple::new(2, vec![e.clone(); 3]).unwrap();
        assert_eq!(
            reg_b(&t, &BasisVector::first(2)).unwrap_err(),
            RegulatorError::WrongLength { expected: 4, found: 3 }
        );
    }
}
