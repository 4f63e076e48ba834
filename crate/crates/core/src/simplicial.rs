//! Linear cycles on the algebraic simplex `Δᵐ = Pᵐ \ {x_0 + … + x_m = 0}`.
//!
//! A [`LinearCycle`] is the common zero set of `p` linear forms in the
//! homogeneous coordinates `x_0, …, x_m`, stored as the canonical reduced
//! echelon basis of their row space. Two cycles are equal iff their row
//! spaces are. A system whose row space contains `(1, …, 1)` cuts out a set
//! inside the removed hyperplane, so it is empty in `Δᵐ` and becomes the zero
//! chain.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::projline::MobiusMap;
use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CycleError {
    #[error("row has {found} entries, expected {expected}")]
    WrongWidth { expected: usize, found: usize },
    #[error("equations have rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("cycle does not meet face x_{face} = 0 properly")]
    ImproperFace { face: usize },
    #[error("cycle is not admissible: {0}")]
    NonAdmissible(AdmissibilityReport),
    #[error("expected a cycle with (m, p) = {expected:?}, got {found:?}")]
    WrongShape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("parametrization vectors are dependent or do not lie on the cycle")]
    Degenerate,
    #[error("chains on different complexes: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),
    #[error("the 0-simplex has no faces")]
    NoFaces,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("malformed cycle JSON: {0}")]
    Json(String),
}

/// A face `{x_i = 0 : i ∈ I}` where the rank condition fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceViolation {
    pub face: Vec<usize>,
    pub rank: usize,
    pub required: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<FaceViolation>,
}

impl fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.admissible {
            return write!(f, "admissible");
        }
        let faces: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?} (rank {} < {})", v.face, v.rank, v.required))
            .collect();
        write!(f, "improper faces {}", faces.join(", "))
    }
}

/// A codimension-`p` linear subvariety of `Δᵐ`.
#[derive(Clone, Debug)]
pub struct LinearCycle<S> {
    m: usize,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> LinearCycle<S> {
    /// The cycle cut out by `rows` in `Δᵐ`; `Ok(None)` when it is empty there.
    pub fn from_rows(m: usize, rows: Vec<Vec<S>>) -> Result<Option<Self>, CycleError> {
        let width = m + 1;
        if let Some(r) = rows.iter().find(|r| r.len() != width) {
            return Err(CycleError::WrongWidth {
                expected: width,
                found: r.len(),
            });
        }
        let ones = vec![S::one(); width];
        if linalg::in_row_space(&rows, &ones, width) {
            return Ok(None);
        }
        let expected = rows.len();
        let echelon = linalg::rref(rows, width);
        if echelon.rank() < expected {
            return Err(CycleError::RankDeficient {
                rank: echelon.rank(),
                expected,
            });
        }
        Ok(Some(LinearCycle {
            m,
            rows: echelon.rows,
        }))
    }

    /// Simplex dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Codimension.
    pub fn p(&self) -> usize {
        self.rows.len()
    }

    /// Canonical reduced echelon equations.
    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    fn rank_without(&self, removed: &[usize]) -> usize {
        let kept: Vec<Vec<S>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| !removed.contains(j))
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        linalg::rank(&kept, self.m + 1 - removed.len())
    }

    /// Rank of the equations augmented with the coordinate rows `e_i, i ∈ I`.
    fn face_rank(&self, face: &[usize]) -> usize {
        face.len() + self.rank_without(face)
    }

    /// Checks the proper-intersection rank condition on every face.
    pub fn admissible(&self) -> AdmissibilityReport {
        let n = self.m + 1;
        let mut violations = Vec::new();
        for mask in 1u32..(1 << n) {
            let face: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let required = (self.p() + face.len()).min(n);
            let rank = self.face_rank(&face);
            if rank < required {
                violations.push(FaceViolation {
                    face,
                    rank,
                    required,
                });
            }
        }
        AdmissibilityReport {
            admissible: violations.is_empty(),
            violations,
        }
    }

    /// Restriction to the face `x_i = 0`, identified with `Δ^{m-1}`.
    pub fn face_restrict(&self, i: usize) -> Result<Option<LinearCycle<S>>, CycleError> {
        if self.m == 0 {
            return Err(CycleError::NoFaces);
        }
        assert!(i <= self.m, "face index out of range");
        let required = (self.p() + 1).min(self.m + 1);
        if self.face_rank(&[i]) < required {
            return Err(CycleError::ImproperFace { face: i });
        }
        let rows: Vec<Vec<S>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        if linalg::rank(&rows, self.m) == self.m {
            // No points left in P^{m-1}.
            return Ok(None);
        }
        LinearCycle::from_rows(self.m - 1, rows)
    }

    /// Parametrizes a line in `Δ³` as `t ↦ [P + tQ]`, with `P, Q` the reduced
    /// echelon null-space basis.
    pub fn parametrize_line(&self) -> Result<Parametrization<S>, CycleError> {
        if (self.m, self.p()) != (3, 2) {
            return Err(CycleError::WrongShape {
                expected: (3, 2),
                found: (self.m, self.p()),
            });
        }
        let mut basis = linalg::null_space(&self.rows, 4);
        if basis.len() != 2 {
            return Err(CycleError::Degenerate);
        }
        let q = basis.pop().expect("two basis vectors");
        let p = basis.pop().expect("two basis vectors");
        Ok(Parametrization { p, q })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CycleJson {
            m: self.m,
            p: self.p(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect())
                .collect(),
        })
        .expect("cycle serializes")
    }

    /// Parses `{m, p, rows}`; `Ok(None)` for a system that is empty in `Δᵐ`.
    pub fn from_json(value: &serde_json::Value) -> Result<Option<Self>, CycleError> {
        let raw: CycleJson =
            serde_json::from_value(value.clone()).map_err(|e| CycleError::Json(e.to_string()))?;
        if raw.rows.len() != raw.p {
            return Err(CycleError::Json(format!(
                "p = {} but {} rows given",
                raw.p,
                raw.rows.len()
            )));
        }
        let rows = raw
            .rows
            .iter()
            .map(|r| r.iter().map(|s| S::parse_literal(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        LinearCycle::from_rows(raw.m, rows)
    }
}

impl<S: Scalar> PartialEq for LinearCycle<S> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.rows.len() == other.rows.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.approx_eq(y)))
    }
}

impl<S: Scalar> fmt::Display for LinearCycle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let terms: Vec<String> = r
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| format!("({v})x_{j}"))
                    .collect();
                format!("{} = 0", terms.join(" + "))
            })
            .collect();
        write!(f, "{{{}}} ⊂ Δ^{}", eqs.join(", "), self.m)
    }
}

#[derive(Serialize, Deserialize)]
struct CycleJson {
    m: usize,
    p: usize,
    rows: Vec<Vec<String>>,
}

/// `t ↦ [P + tQ]`, `t ∈ P¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization<S> {
    p: Vec<S>,
    q: Vec<S>,
}

impl<S: Scalar> Parametrization<S> {
    /// Checks that `P, Q` are independent and satisfy every equation of `cycle`.
    pub fn new(cycle: &LinearCycle<S>, p: Vec<S>, q: Vec<S>) -> Result<Self, CycleError> {
        let width = cycle.m() + 1;
        if p.len() != width || q.len() != width {
            return Err(CycleError::Degenerate);
        }
        if linalg::rank(&[p.clone(), q.clone()], width) < 2 {
            return Err(CycleError::Degenerate);
        }
        let on_cycle = |v: &[S]| {
            cycle.rows().iter().all(|r| {
                r.iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                    .is_zero()
            })
        };
        if !on_cycle(&p) || !on_cycle(&q) {
            return Err(CycleError::Degenerate);
        }
        Ok(Parametrization { p, q })
    }

    pub fn base(&self) -> &[S] {
        &self.p
    }

    pub fn direction(&self) -> &[S] {
        &self.q
    }

    /// Homogeneous coordinates at the finite parameter `t`.
    pub fn point_at(&self, t: &S) -> Vec<S> {
        self.p
            .iter()
            .zip(&self.q)
            .map(|(a, b)| a.clone() + t.clone() * b.clone())
            .collect()
    }

    /// The same line with parameter `s`, where `t = φ(s)`.
    pub fn reparametrize(&self, phi: &MobiusMap<S>) -> Parametrization<S> {
        // P + ((αs + β)/(γs + δ))Q ∝ (δP + βQ) + s(γP + αQ)
        let [a, b, c, d] = phi.coefficients();
        let comb = |x: &S, y: &S| -> Vec<S> {
            self.p
                .iter()
                .zip(&self.q)
                .map(|(pi, qi)| x.clone() * pi.clone() + y.clone() * qi.clone())
                .collect()
        };
        Parametrization {
            p: comb(d, b),
            q: comb(c, a),
        }
    }
}

/// Rational coefficient of a chain term.
pub type Coefficient = BigRational;

/// A `Q`-linear combination of cycles on one `(m, p)`.
#[derive(Clone, Debug)]
pub struct CycleChain<S> {
    m: usize,
    p: usize,
    terms: Vec<(Coefficient, LinearCycle<S>)>,
}

impl<S: Scalar> CycleChain<S> {
    pub fn zero(m: usize, p: usize) -> Self {
        CycleChain {
            m,
            p,
            terms: Vec::new(),
        }
    }

    pub fn from_cycle(cycle: LinearCycle<S>) -> Self {
        let mut c = CycleChain::zero(cycle.m(), cycle.p());
        c.terms.push((Coefficient::one(), cycle));
        c
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn terms(&self) -> &[(Coefficient, LinearCycle<S>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · cycle`, merging equal cycles and dropping zero terms.
    pub fn add_term(&mut self, coeff: Coefficient, cycle: LinearCycle<S>) -> Result<(), CycleError> {
        if (cycle.m(), cycle.p()) != (self.m, self.p) {
            return Err(CycleError::DimensionMismatch(
                (self.m, self.p),
                (cycle.m(), cycle.p()),
            ));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        if let Some(idx) = self.terms.iter().position(|(_, c)| *c == cycle) {
            self.terms[idx].0 += coeff;
            if self.terms[idx].0.is_zero() {
                self.terms.remove(idx);
            }
        } else {
            self.terms.push((coeff, cycle));
        }
        Ok(())
    }

    pub fn add_chain(&mut self, other: &CycleChain<S>, scale: &Coefficient) -> Result<(), CycleError> {
        if (other.m, other.p) != (self.m, self.p) {
            return Err(CycleError::DimensionMismatch((self.m, self.p), (other.m, other.p)));
        }
        for (c, cyc) in &other.terms {
            self.add_term(c * scale, cyc.clone())?;
        }
        Ok(())
    }

    /// Equality as formal sums.
    pub fn same_as(&self, other: &CycleChain<S>) -> bool {
        let mut diff = self.clone();
        match diff.add_chain(other, &-Coefficient::one()) {
            Ok(()) => diff.is_zero(),
            Err(_) => false,
        }
    }

    /// `∂ = Σ (-1)^i ρ_i^*`.
    pub fn boundary(&self) -> Result<CycleChain<S>, CycleError> {
        if self.m == 0 {
            return Err(CycleError::NoFaces);
        }
        let mut out = CycleChain::zero(self.m - 1, self.p);
        for (coeff, cycle) in &self.terms {
            for i in 0..=self.m {
                if let Some(face) = cycle.face_restrict(i)? {
                    let sign = if i % 2 == 0 { coeff.clone() } else { -coeff.clone() };
                    out.add_term(sign, face)?;
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(c, cyc)| serde_json::json!({ "coeff": c.to_string(), "cycle": cyc.to_json() }))
            .collect();
        serde_json::json!({ "m": self.m, "p": self.p, "terms": terms })
    }

    /// Accepts a chain object `{m, p, terms: [{coeff, cycle}]}` or a bare cycle.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, CycleError> {
        if value.get("terms").is_none() {
            let (m, p) = shape_of(value)?;
            return Ok(match LinearCycle::from_json(value)? {
                Some(c) => CycleChain::from_cycle(c),
                None => CycleChain::zero(m, p),
            });
        }
        let (m, p) = shape_of(value)?;
        let mut chain = CycleChain::zero(m, p);
        let terms = value["terms"]
            .as_array()
            .ok_or_else(|| CycleError::Json("terms must be an array".into()))?;
        for t in terms {
            let coeff = t
                .get("coeff")
                .and_then(|c| c.as_str().map(str::to_string).or_else(|| c.as_i64().map(|i| i.to_string())))
                .ok_or_else(|| CycleError::Json("term without coeff".into()))?;
            let coeff = parse_coefficient(&coeff)?;
            let cycle = t
                .get("cycle")
                .ok_or_else(|| CycleError::Json("term without cycle".into()))?;
            if let Some(c) = LinearCycle::from_json(cycle)? {
                chain.add_term(coeff, c)?;
            }
        }
        Ok(chain)
    }
}

fn shape_of(value: &serde_json::Value) -> Result<(usize, usize), CycleError> {
    let get = |k: &str| {
        value
            .get(k)
            .and_then(|v| v.as_u64())
            .map(|v| v as usize)
            .ok_or_else(|| CycleError::Json(format!("missing {k}")))
    };
    Ok((get("m")?, get("p")?))
}

/// Parses `p` or `p/q`.
pub fn parse_coefficient(text: &str) -> Result<Coefficient, CycleError> {
    let bad = || CycleError::Json(format!("bad coefficient {text:?}"));
    let (n, d) = match text.trim().split_once('/') {
        Some((n, d)) => (n, d),
        None => (text.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}
