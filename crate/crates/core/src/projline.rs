//! Points, divisors, factored rational functions and cross-ratios on `P¹`.
//!
//! Rational functions are kept in factored form
//! `f = scale · Π (t - r)^{m_r}`, with the multiplicity at `∞` stored
//! explicitly so that every divisor built here has degree zero. Nothing in
//! the crate ever needs a root finder.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dilog;
use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjError {
    #[error("linear form with both coefficients zero")]
    BothZero,
    #[error("rational function scale must be nonzero")]
    ZeroScale,
    #[error("three or more of the four cross-ratio points coincide")]
    TooManyCoincidences,
    #[error("Möbius matrix is singular")]
    SingularMobius,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("malformed divisor JSON: {0}")]
    Json(String),
}

/// A point of `P¹` over a coefficient domain.
#[derive(Clone, Debug)]
pub enum ProjPoint<S> {
    Finite(S),
    Infinity,
}

impl<S: Scalar> ProjPoint<S> {
    pub fn finite(value: S) -> Self {
        ProjPoint::Finite(value)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<&S> {
        match self {
            ProjPoint::Finite(v) => Some(v),
            ProjPoint::Infinity => None,
        }
    }

    /// Homogeneous coordinates `(x : 1)` or `(1 : 0)`.
    pub fn homogeneous(&self) -> (S, S) {
        match self {
            ProjPoint::Finite(v) => (v.clone(), S::one()),
            ProjPoint::Infinity => (S::one(), S::zero()),
        }
    }

    /// The point `(u : w)`; `None` if both are zero.
    pub fn from_homogeneous(u: S, w: S) -> Option<Self> {
        if w.is_zero() {
            if u.is_zero() {
                None
            } else {
                Some(ProjPoint::Infinity)
            }
        } else {
            Some(ProjPoint::Finite(u.try_div(&w).ok()?))
        }
    }

    /// Bloch-Wigner dilogarithm with `D2(∞) = 0`.
    pub fn d2(&self) -> f64 {
        match self {
            ProjPoint::Finite(v) => dilog::d2(v.to_complex()),
            ProjPoint::Infinity => dilog::D2_AT_INFINITY,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            Ok(ProjPoint::Infinity)
        } else {
            S::parse_literal(t).map(ProjPoint::Finite)
        }
    }
}

impl<S: Scalar> PartialEq for ProjPoint<S> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ProjPoint::Infinity, ProjPoint::Infinity) => true,
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a.approx_eq(b),
            _ => false,
        }
    }
}

impl<S: Scalar> fmt::Display for ProjPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(v) => write!(f, "{v}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A finite formal sum of points with nonzero integer multiplicities.
#[derive(Clone, Debug)]
pub struct Divisor<S> {
    terms: Vec<(ProjPoint<S>, i64)>,
}

impl<S: Scalar> Default for Divisor<S> {
    fn default() -> Self {
        Divisor { terms: Vec::new() }
    }
}

impl<S: Scalar> Divisor<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ProjPoint<S>, i64)>) -> Self {
        let mut d = Divisor::new();
        for (p, m) in terms {
            d.add_point(p, m);
        }
        d
    }

    /// Adds `mult · [point]`, merging with an identified point and dropping
    /// zero multiplicities.
    pub fn add_point(&mut self, point: ProjPoint<S>, mult: i64) {
        if mult == 0 {
            return;
        }
        if let Some(idx) = self.terms.iter().position(|(p, _)| *p == point) {
            self.terms[idx].1 += mult;
            if self.terms[idx].1 == 0 {
                self.terms.remove(idx);
            }
        } else {
            self.terms.push((point, mult));
        }
    }

    pub fn terms(&self) -> &[(ProjPoint<S>, i64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, point: &ProjPoint<S>) -> i64 {
        self.terms
            .iter()
            .find(|(p, _)| p == point)
            .map_or(0, |(_, m)| *m)
    }

    pub fn plus(&self, other: &Divisor<S>) -> Divisor<S> {
        let mut out = self.clone();
        for (p, m) in &other.terms {
            out.add_point(p.clone(), *m);
        }
        out
    }

    pub fn negated(&self) -> Divisor<S> {
        Divisor {
            terms: self.terms.iter().map(|(p, m)| (p.clone(), -m)).collect(),
        }
    }

    pub fn minus(&self, other: &Divisor<S>) -> Divisor<S> {
        self.plus(&other.negated())
    }

    /// Equality as formal sums, independent of term order.
    pub fn same_as(&self, other: &Divisor<S>) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(p, m)| other.multiplicity(p) == *m)
    }

    pub fn map_points(&self, f: impl Fn(&ProjPoint<S>) -> ProjPoint<S>) -> Divisor<S> {
        Divisor::from_terms(self.terms.iter().map(|(p, m)| (f(p), *m)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<DivisorEntry> = self
            .terms
            .iter()
            .map(|(p, m)| DivisorEntry {
                point: p.to_string(),
                mult: *m,
            })
            .collect();
        serde_json::to_value(entries).expect("divisor serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, ProjError> {
        let entries: Vec<DivisorEntry> =
            serde_json::from_value(value.clone()).map_err(|e| ProjError::Json(e.to_string()))?;
        let mut d = Divisor::new();
        for e in entries {
            d.add_point(ProjPoint::parse(&e.point)?, e.mult);
        }
        Ok(d)
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorEntry {
    point: String,
    mult: i64,
}

/// A nonzero rational function on `P¹` in factored form.
#[derive(Clone, Debug)]
pub struct RationalFunc<S> {
    scale: S,
    divisor: Divisor<S>,
}

impl<S: Scalar> RationalFunc<S> {
    pub fn constant(value: S) -> Result<Self, ProjError> {
        if value.is_zero() {
            return Err(ProjError::ZeroScale);
        }
        Ok(RationalFunc {
            scale: value,
            divisor: Divisor::new(),
        })
    }

    /// `t ↦ alpha·t + beta`.
    pub fn from_linear(alpha: S, beta: S) -> Result<Self, ProjError> {
        if alpha.is_zero() {
            if beta.is_zero() {
                return Err(ProjError::BothZero);
            }
            return RationalFunc::constant(beta);
        }
        let root = -(beta.try_div(&alpha)?);
        Ok(RationalFunc {
            scale: alpha,
            divisor: Divisor::from_terms([(ProjPoint::Finite(root), 1), (ProjPoint::Infinity, -1)]),
        })
    }

    /// `scale · Π (t - r)^{m_r}` over the finite points of `divisor`; the
    /// multiplicity at `∞` is recomputed so the degree is zero.
    pub fn from_factors(scale: S, divisor: &Divisor<S>) -> Result<Self, ProjError> {
        if scale.is_zero() {
            return Err(ProjError::ZeroScale);
        }
        let mut finite = Divisor::new();
        for (p, m) in divisor.terms() {
            if !p.is_infinity() {
                finite.add_point(p.clone(), *m);
            }
        }
        let deg = finite.degree();
        finite.add_point(ProjPoint::Infinity, -deg);
        Ok(RationalFunc {
            scale,
            divisor: finite,
        })
    }

    pub fn scale(&self) -> &S {
        &self.scale
    }

    pub fn divisor(&self) -> &Divisor<S> {
        &self.divisor
    }

    pub fn is_constant(&self) -> bool {
        self.divisor.is_empty()
    }

    /// `ν_x(f)`.
    pub fn order(&self, x: &ProjPoint<S>) -> i64 {
        self.divisor.multiplicity(x)
    }

    pub fn mul(&self, other: &RationalFunc<S>) -> RationalFunc<S> {
        RationalFunc {
            scale: self.scale.clone() * other.scale.clone(),
            divisor: self.divisor.plus(&other.divisor),
        }
    }

    pub fn div(&self, other: &RationalFunc<S>) -> RationalFunc<S> {
        let inv = other.scale.inv().expect("rational function scales are nonzero");
        RationalFunc {
            scale: self.scale.clone() * inv,
            divisor: self.divisor.minus(&other.divisor),
        }
    }

    pub fn powi(&self, k: i64) -> RationalFunc<S> {
        let mut out = RationalFunc::constant(S::one()).expect("one is nonzero");
        let base = if k < 0 {
            RationalFunc::constant(S::one()).expect("one is nonzero").div(self)
        } else {
            self.clone()
        };
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `λ · f`.
    pub fn rescaled(&self, lambda: &S) -> Result<RationalFunc<S>, ProjError> {
        if lambda.is_zero() {
            return Err(ProjError::ZeroScale);
        }
        Ok(RationalFunc {
            scale: self.scale.clone() * lambda.clone(),
            divisor: self.divisor.clone(),
        })
    }

    /// Value at a finite point away from the divisor support.
    pub fn eval(&self, t: &S) -> Option<S> {
        let mut acc = self.scale.clone();
        for (p, m) in self.divisor.terms() {
            let Some(r) = p.as_finite() else { continue };
            let factor = t.clone() - r.clone();
            let factor = if *m < 0 { factor.inv().ok()? } else { factor };
            for _ in 0..m.unsigned_abs() {
                acc = acc * factor.clone();
            }
        }
        Some(acc)
    }

    /// Push-forward `f ∘ φ⁻¹`, whose divisor is the image of `div f` under `φ`.
    pub fn mobius_push(&self, phi: &MobiusMap<S>) -> RationalFunc<S> {
        // φ⁻¹(t) = (δt - β)/(-γt + α), so t' - r pulls back to
        // ((δ + rγ)t - (β + rα)) / (-γt + α).
        let [a, b, c, d] = phi.coefficients();
        let denom = RationalFunc::from_linear(-c.clone(), a.clone()).expect("invertible map");
        let mut out = RationalFunc::constant(self.scale.clone()).expect("nonzero scale");
        for (p, m) in self.divisor.terms() {
            let Some(r) = p.as_finite() else { continue };
            let numer = RationalFunc::from_linear(
                d.clone() + r.clone() * c.clone(),
                -(b.clone() + r.clone() * a.clone()),
            )
            .expect("invertible map");
            out = out.mul(&numer.div(&denom).powi(*m));
        }
        out
    }
}

/// `t ↦ (αt + β)/(γt + δ)` with `αδ - βγ ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusMap<S> {
    alpha: S,
    beta: S,
    gamma: S,
    delta: S,
}

impl<S: Scalar> MobiusMap<S> {
    pub fn new(alpha: S, beta: S, gamma: S, delta: S) -> Result<Self, ProjError> {
        let det = alpha.clone() * delta.clone() - beta.clone() * gamma.clone();
        if det.is_zero() {
            return Err(ProjError::SingularMobius);
        }
        Ok(MobiusMap {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn identity() -> Self {
        MobiusMap {
            alpha: S::one(),
            beta: S::zero(),
            gamma: S::zero(),
            delta: S::one(),
        }
    }

    /// `t ↦ 1/t`.
    pub fn inversion() -> Self {
        MobiusMap {
            alpha: S::zero(),
            beta: S::one(),
            gamma: S::one(),
            delta: S::zero(),
        }
    }

    pub fn coefficients(&self) -> [&S; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    pub fn apply(&self, p: &ProjPoint<S>) -> ProjPoint<S> {
        let (u, w) = p.homogeneous();
        let nu = self.alpha.clone() * u.clone() + self.beta.clone() * w.clone();
        let nw = self.gamma.clone() * u + self.delta.clone() * w;
        ProjPoint::from_homogeneous(nu, nw).expect("invertible map sends points to points")
    }

    pub fn inverse(&self) -> Self {
        MobiusMap {
            alpha: self.delta.clone(),
            beta: -self.beta.clone(),
            gamma: -self.gamma.clone(),
            delta: self.alpha.clone(),
        }
    }
}

/// Mapping of points or functions under a Möbius transformation.
pub trait MobiusPush<S> {
    fn mobius_push(&self, phi: &MobiusMap<S>) -> Self;
}

impl<S: Scalar> MobiusPush<S> for ProjPoint<S> {
    fn mobius_push(&self, phi: &MobiusMap<S>) -> Self {
        phi.apply(self)
    }
}

impl<S: Scalar> MobiusPush<S> for RationalFunc<S> {
    fn mobius_push(&self, phi: &MobiusMap<S>) -> Self {
        RationalFunc::mobius_push(self, phi)
    }
}

fn hdet<S: Scalar>(x: &(S, S), y: &(S, S)) -> S {
    x.0.clone() * y.1.clone() - y.0.clone() * x.1.clone()
}

/// `CR(x1, x2, x3, x4) = ((x1 - x4)(x2 - x3)) / ((x1 - x3)(x2 - x4))`.
///
/// Configurations with exactly one coincident pair (or two disjoint pairs)
/// return the corresponding value in `{0, 1, ∞}` without arithmetic.
pub fn cross_ratio<S: Scalar>(
    x1: &ProjPoint<S>,
    x2: &ProjPoint<S>,
    x3: &ProjPoint<S>,
    x4: &ProjPoint<S>,
) -> Result<ProjPoint<S>, ProjError> {
    let pts = [x1, x2, x3, x4];
    for p in pts {
        if pts.iter().filter(|q| **q == p).count() >= 3 {
            return Err(ProjError::TooManyCoincidences);
        }
    }
    if x1 == x4 || x2 == x3 {
        return Ok(ProjPoint::Finite(S::zero()));
    }
    if x1 == x3 || x2 == x4 {
        return Ok(ProjPoint::Infinity);
    }
    if x1 == x2 || x3 == x4 {
        return Ok(ProjPoint::Finite(S::one()));
    }
    let h: Vec<(S, S)> = pts.iter().map(|p| p.homogeneous()).collect();
    let num = hdet(&h[0], &h[3]) * hdet(&h[1], &h[2]);
    let den = hdet(&h[0], &h[2]) * hdet(&h[1], &h[3]);
    Ok(ProjPoint::from_homogeneous(num, den).expect("distinct points give a defined ratio"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FloatComplex, GaussianRational};
    use proptest::prelude::*;

    type G = GaussianRational;

    fn g(s: &str) -> G {
        s.parse().unwrap()
    }

    fn fin(s: &str) -> ProjPoint<G> {
        ProjPoint::Finite(g(s))
    }

    fn inf() -> ProjPoint<G> {
        ProjPoint::Infinity
    }

    fn t() -> RationalFunc<G> {
        RationalFunc::from_linear(g("1"), g("0")).unwrap()
    }

    #[test]
    fn from_linear_examples() {
        let f = t();
        assert!(f.divisor().same_as(&Divisor::from_terms([(fin("0"), 1), (inf(), -1)])));
        assert_eq!(*f.scale(), g("1"));

        let c = RationalFunc::from_linear(g("0"), g("5")).unwrap();
        assert!(c.is_constant());
        assert_eq!(*c.scale(), g("5"));

        let f = RationalFunc::from_linear(g("2"), g("-2")).unwrap();
        assert!(f.divisor().same_as(&Divisor::from_terms([(fin("1"), 1), (inf(), -1)])));
        assert_eq!(*f.scale(), g("2"));

        assert_eq!(
            RationalFunc::from_linear(g("0"), g("0")).unwrap_err(),
            ProjError::BothZero
        );
    }

    #[test]
    fn mul_div_examples() {
        let tt = t().mul(&t());
        assert!(tt.divisor().same_as(&Divisor::from_terms([(fin("0"), 2), (inf(), -2)])));

        let one = t().div(&t());
        assert!(one.is_constant());
        assert_eq!(*one.scale(), g("1"));

        let t_minus_1 = RationalFunc::from_linear(g("1"), g("-1")).unwrap();
        let f = t().mul(&t_minus_1).div(&t());
        assert!(f.divisor().same_as(&Divisor::from_terms([(fin("1"), 1), (inf(), -1)])));
        assert_eq!(*f.scale(), g("1"));
        assert_eq!(f.divisor().degree(), 0);
    }

    #[test]
    fn order_examples() {
        assert_eq!(t().order(&fin("0")), 1);
        assert_eq!(t().order(&inf()), -1);
        assert_eq!(t().order(&fin("7")), 0);
    }

    #[test]
    fn cross_ratio_examples() {
        let cr = cross_ratio(&fin("0"), &fin("1"), &fin("2"), &inf()).unwrap();
        assert_eq!(cr, fin("1/2"));

        // (x1, x2, x3, ∞) → (x2 - x3)/(x1 - x3)
        let (x1, x2, x3) = (g("3+i"), g("-2/3"), g("5i"));
        let cr = cross_ratio(&ProjPoint::Finite(x1.clone()), &ProjPoint::Finite(x2.clone()), &ProjPoint::Finite(x3.clone()), &inf()).unwrap();
        let want = (x2 - x3.clone()).try_div(&(x1 - x3)).unwrap();
        assert_eq!(cr, ProjPoint::Finite(want));

        // (0, -a/c, -b/d, ∞) → 1 - ad/(bc)
        let (a, b, c, d) = (g("1"), g("-1"), g("1-i"), g("1+i"));
        let p2 = ProjPoint::Finite(-(a.try_div(&c).unwrap()));
        let p3 = ProjPoint::Finite(-(b.try_div(&d).unwrap()));
        let cr = cross_ratio(&fin("0"), &p2, &p3, &inf()).unwrap();
        let want = g("1") - (a * d).try_div(&(b * c)).unwrap();
        assert_eq!(cr, ProjPoint::Finite(want));
    }

    #[test]
    fn cross_ratio_degenerate_values() {
        let (a, b, c) = (fin("0"), fin("1"), fin("3"));
        assert_eq!(cross_ratio(&a, &b, &c, &a).unwrap(), fin("0"));
        assert_eq!(cross_ratio(&a, &b, &a, &c).unwrap(), inf());
        assert_eq!(cross_ratio(&a, &a, &b, &c).unwrap(), fin("1"));
        assert_eq!(cross_ratio(&a, &a, &b, &b).unwrap(), fin("1"));
        assert_eq!(
            cross_ratio(&a, &a, &a, &b).unwrap_err(),
            ProjError::TooManyCoincidences
        );
        assert_eq!(
            cross_ratio(&inf(), &b, &inf(), &inf()).unwrap_err(),
            ProjError::TooManyCoincidences
        );
    }

    #[test]
    fn cross_ratio_with_infinity_in_each_slot() {
        let pts = [fin("2+i"), fin("-1"), fin("1/2-3i"), fin("4")];
        let direct = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        // Send pts[k] to ∞ with a Möbius map; CR is unchanged.
        for k in 0..4 {
            let r = pts[k].as_finite().unwrap().clone();
            let phi = MobiusMap::new(g("0"), g("1"), g("1"), -r).unwrap();
            let moved: Vec<_> = pts.iter().map(|p| phi.apply(p)).collect();
            assert!(moved[k].is_infinity());
            let cr = cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3]).unwrap();
            assert_eq!(cr, direct);
        }
    }

    #[test]
    fn mobius_push_examples() {
        let f = t();
        let same = f.mobius_push(&MobiusMap::identity());
        assert!(same.divisor().same_as(f.divisor()));

        let pushed = f.mobius_push(&MobiusMap::inversion());
        assert!(pushed.divisor().same_as(&Divisor::from_terms([(inf(), 1), (fin("0"), -1)])));
    }

    #[test]
    fn mobius_push_is_composition_with_inverse() {
        let f = RationalFunc::from_linear(g("2-i"), g("3"))
            .unwrap()
            .div(&RationalFunc::from_linear(g("1"), g("1/2")).unwrap());
        let phi = MobiusMap::new(g("1"), g("2i"), g("-1"), g("3")).unwrap();
        let pushed = f.mobius_push(&phi);
        for s in ["5", "1+i", "-7/3"] {
            let s = g(s);
            let pre = phi.inverse().apply(&ProjPoint::Finite(s.clone()));
            let pre = pre.as_finite().unwrap();
            assert_eq!(pushed.eval(&s).unwrap(), f.eval(pre).unwrap());
        }
        let expect = f.divisor().map_points(|p| phi.apply(p));
        assert!(pushed.divisor().same_as(&expect));
    }

    #[test]
    fn divisor_json_round_trip() {
        let d = Divisor::from_terms([(fin("1-i"), 2), (inf(), -1), (fin("3/2"), -1)]);
        let v = d.to_json();
        assert_eq!(v[1]["point"], "inf");
        let back: Divisor<G> = Divisor::from_json(&v).unwrap();
        assert!(back.same_as(&d));
        assert!(Divisor::<G>::from_json(&serde_json::json!([{"point": "x", "mult": 1}])).is_err());
    }

    #[test]
    fn float_points_identified_within_tolerance() {
        let a = ProjPoint::Finite(FloatComplex::new(1.0, 0.0).unwrap());
        let b = ProjPoint::Finite(FloatComplex::new(1.0 + 1e-12, 0.0).unwrap());
        let c = ProjPoint::Finite(FloatComplex::new(1.0 + 1e-6, 0.0).unwrap());
        assert_eq!(a, b);
        assert_ne!(a, c);
        let mut d = Divisor::new();
        d.add_point(a, 1);
        d.add_point(b, -1);
        assert!(d.is_empty());
    }

    fn small_gaussian() -> impl Strategy<Value = G> {
        (-10i64..=10, 1i64..=10, -10i64..=10, 1i64..=10)
            .prop_map(|(a, b, c, d)| G::from_fractions(a, b, c, d))
    }

    fn mobius() -> impl Strategy<Value = MobiusMap<G>> {
        (small_gaussian(), small_gaussian(), small_gaussian(), small_gaussian())
            .prop_filter_map("singular", |(a, b, c, d)| MobiusMap::new(a, b, c, d).ok())
    }

    fn distinct4() -> impl Strategy<Value = [ProjPoint<G>; 4]> {
        proptest::collection::vec(small_gaussian(), 4).prop_filter_map("coincident", |v| {
            for i in 0..4 {
                for j in i + 1..4 {
                    if v[i] == v[j] {
                        return None;
                    }
                }
            }
            Some([
                ProjPoint::Finite(v[0].clone()),
                ProjPoint::Finite(v[1].clone()),
                ProjPoint::Finite(v[2].clone()),
                ProjPoint::Finite(v[3].clone()),
            ])
        })
    }

    proptest! {
        #[test]
        fn cross_ratio_is_mobius_invariant(p in distinct4(), phi in mobius()) {
            let before = cross_ratio(&p[0], &p[1], &p[2], &p[3]).unwrap();
            let q: Vec<_> = p.iter().map(|x| x.mobius_push(&phi)).collect();
            let after = cross_ratio(&q[0], &q[1], &q[2], &q[3]).unwrap();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn d2_cross_ratio_is_alternating(p in distinct4()) {
            let base = cross_ratio(&p[0], &p[1], &p[2], &p[3]).unwrap().d2();
            // All 24 permutations with their signs.
            let perms = permutations4();
            for (perm, sign) in perms {
                let v = cross_ratio(&p[perm[0]], &p[perm[1]], &p[perm[2]], &p[perm[3]]).unwrap().d2();
                prop_assert!((v - sign * base).abs() <= 1e-10, "perm {:?}: {} vs {}", perm, v, sign * base);
            }
        }

        #[test]
        fn pushed_divisors_keep_degree_zero(a in small_gaussian(), b in small_gaussian(), c in small_gaussian(), phi in mobius()) {
            prop_assume!(!crate::scalar::Scalar::is_zero(&a));
            let f = RationalFunc::from_linear(a, b).unwrap().div(&RationalFunc::from_linear(G::one(), c).unwrap());
            prop_assert_eq!(f.divisor().degree(), 0);
            prop_assert_eq!(f.mobius_push(&phi).divisor().degree(), 0);
        }
    }

    fn permutations4() -> Vec<([usize; 4], f64)> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut seen = [false; 4];
                        if p.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
                            continue;
                        }
                        let mut inversions = 0;
                        for i in 0..4 {
                            for j in i + 1..4 {
                                if p[i] > p[j] {
                                    inversions += 1;
                                }
                            }
                        }
                        out.push((p, if inversions % 2 == 0 { 1.0 } else { -1.0 }));
                    }
                }
            }
        }
        out
    }
}
