//! Homogeneous group chains for `GL_n`, the cycle map `ψ̃` into linear cycles,
//! and the normalization of a 4-tuple in `GL_2` to parameters `(a, b, c, d)`.

use num_traits::{One, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::simplicial::{AdmissibilityReport, Coefficient, CycleChain, CycleError, LinearCycle};
use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("entry {index} is not an invertible {n}x{n} matrix")]
    NotInvertible { index: usize, n: usize },
    #[error("tuple entries must all be {n}x{n}")]
    ShapeMismatch { n: usize },
    #[error("expected tuples of length {expected}, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("tuple needs at least {0} entries")]
    TooShort(usize),
    #[error("basis vector must be nonzero of length {0}")]
    BadVector(usize),
    #[error("vectors g_i v span rank {rank} < {n}")]
    RankDeficient { rank: usize, n: usize },
    #[error("image cycle is not admissible: {0}")]
    NonAdmissible(AdmissibilityReport),
    #[error("g_0 v and g_1 v are linearly dependent")]
    DependentFrame,
    #[error("normalized quadruple has ad - bc = 0")]
    SingularQuadruple,
    #[error("only n = 2 is supported, got n = {0}")]
    UnsupportedRank(usize),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("malformed tuple JSON: {0}")]
    Json(String),
}

/// `(g_0, …, g_m)` with every `g_i ∈ GL_n`.
#[derive(Clone, Debug)]
pub struct GroupTuple<S> {
    n: usize,
    entries: Vec<Matrix<S>>,
}

impl<S: Scalar> GroupTuple<S> {
    pub fn new(n: usize, entries: Vec<Matrix<S>>) -> Result<Self, GroupError> {
        for (index, g) in entries.iter().enumerate() {
            if g.nrows() != n || g.ncols() != n {
                return Err(GroupError::ShapeMismatch { n });
            }
            if g.det().is_zero() {
                return Err(GroupError::NotInvertible { index, n });
            }
        }
        Ok(GroupTuple { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Matrix<S>] {
        &self.entries
    }

    /// `(g_0, …, ĝ_i, …, g_m)`.
    pub fn omit(&self, i: usize) -> GroupTuple<S> {
        let mut entries = self.entries.clone();
        entries.remove(i);
        GroupTuple { n: self.n, entries }
    }

    /// `(h g_0, …, h g_m)`.
    pub fn left_translate(&self, h: &Matrix<S>) -> Result<GroupTuple<S>, GroupError> {
        GroupTuple::new(self.n, self.entries.iter().map(|g| h.mul(g)).collect())
    }

    /// The vectors `g_i v`.
    pub fn images(&self, v: &BasisVector<S>) -> Result<Vec<Vec<S>>, GroupError> {
        if v.0.len() != self.n {
            return Err(GroupError::BadVector(self.n));
        }
        Ok(self.entries.iter().map(|g| g.mul_vec(&v.0)).collect())
    }

    pub fn approx_eq(&self, other: &GroupTuple<S>) -> bool {
        self.n == other.n
            && self.len() == other.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.approx_eq(b))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|g| {
                    Value::Array(
                        g.rows()
                            .iter()
                            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Parses a list of `n×n` matrices of scalar literals.
    pub fn from_json(value: &Value) -> Result<Self, GroupError> {
        let bad = |msg: &str| GroupError::Json(msg.to_string());
        let mats = value.as_array().ok_or_else(|| bad("expected a list of matrices"))?;
        let mut entries = Vec::with_capacity(mats.len());
        let mut n = None;
        for mat in mats {
            let rows = mat.as_array().ok_or_else(|| bad("matrix must be a list of rows"))?;
            let size = rows.len();
            if *n.get_or_insert(size) != size {
                return Err(GroupError::ShapeMismatch { n: n.unwrap_or(0) });
            }
            let parsed = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| bad("row must be a list"))?
                        .iter()
                        .map(|x| {
                            let s = x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string());
                            S::parse_literal(&s).map_err(GroupError::from)
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let m = Matrix::from_rows(parsed, size).ok_or(GroupError::ShapeMismatch { n: size })?;
            entries.push(m);
        }
        GroupTuple::new(n.unwrap_or(0), entries)
    }
}

/// A nonzero vector `v ∈ kⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisVector<S>(Vec<S>);

impl<S: Scalar> BasisVector<S> {
    pub fn new(v: Vec<S>) -> Result<Self, GroupError> {
        if v.is_empty() || v.iter().all(|x| x.is_zero()) {
            return Err(GroupError::BadVector(v.len()));
        }
        Ok(BasisVector(v))
    }

    /// `(1, 0, …, 0)`.
    pub fn first(n: usize) -> Self {
        let mut v = vec![S::zero(); n];
        v[0] = S::one();
        BasisVector(v)
    }

    pub fn scaled(&self, lambda: &S) -> Result<Self, GroupError> {
        BasisVector::new(self.0.iter().map(|x| x.clone() * lambda.clone()).collect())
    }

    pub fn components(&self) -> &[S] {
        &self.0
    }
}

/// Formal `Q`-combination of tuples of one size and length.
#[derive(Clone, Debug)]
pub struct GroupChain<S> {
    n: usize,
    len: usize,
    terms: Vec<(Coefficient, GroupTuple<S>)>,
}

impl<S: Scalar> GroupChain<S> {
    pub fn zero(n: usize, len: usize) -> Self {
        GroupChain {
            n,
            len,
            terms: Vec::new(),
        }
    }

    pub fn from_tuple(t: GroupTuple<S>) -> Self {
        let mut c = GroupChain::zero(t.n(), t.len());
        c.terms.push((Coefficient::one(), t));
        c
    }

    pub fn terms(&self) -> &[(Coefficient, GroupTuple<S>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn tuple_len(&self) -> usize {
        self.len
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(c, t)| serde_json::json!({ "coeff": c.to_string(), "tuple": t.to_json() }))
            .collect();
        serde_json::json!({ "n": self.n, "len": self.len, "terms": terms })
    }

    pub fn add_term(&mut self, coeff: Coefficient, t: GroupTuple<S>) -> Result<(), GroupError> {
        if t.n() != self.n {
            return Err(GroupError::ShapeMismatch { n: self.n });
        }
        if t.len() != self.len {
            return Err(GroupError::WrongLength {
                expected: self.len,
                found: t.len(),
            });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        if let Some(idx) = self.terms.iter().position(|(_, u)| u.approx_eq(&t)) {
            self.terms[idx].0 += coeff;
            if self.terms[idx].0.is_zero() {
                self.terms.remove(idx);
            }
        } else {
            self.terms.push((coeff, t));
        }
        Ok(())
    }
}

/// `∂(g_0, …, g_m) = Σ (-1)^i (g_0, …, ĝ_i, …, g_m)`, merged.
pub fn group_boundary<S: Scalar>(chain: &GroupChain<S>) -> Result<GroupChain<S>, GroupError> {
    if chain.len < 2 {
        return Err(GroupError::TooShort(2));
    }
    let mut out = GroupChain::zero(chain.n, chain.len - 1);
    for (coeff, t) in &chain.terms {
        for i in 0..t.len() {
            let sign = if i % 2 == 0 { coeff.clone() } else { -coeff.clone() };
            out.add_term(sign, t.omit(i))?;
        }
    }
    Ok(out)
}

/// `(g_0, …, g_m) ↦ {Σ x_i · g_i v = 0} ⊂ Δᵐ`.
///
/// Equation `j` has coefficient `(g_i v)_j` on `x_i`. The empty cycle is the
/// zero chain; an image with fewer than `n` independent equations, or one
/// failing admissibility, is an error.
pub fn psi_tilde<S: Scalar>(t: &GroupTuple<S>, v: &BasisVector<S>) -> Result<CycleChain<S>, GroupError> {
    if t.is_empty() {
        return Err(GroupError::TooShort(1));
    }
    let images = t.images(v)?;
    let m = t.len() - 1;
    let rows: Vec<Vec<S>> = (0..t.n())
        .map(|j| images.iter().map(|w| w[j].clone()).collect())
        .collect();
    let cycle = match LinearCycle::from_rows(m, rows) {
        Ok(Some(c)) => c,
        Ok(None) => return Ok(CycleChain::zero(m, t.n())),
        Err(CycleError::RankDeficient { rank, .. }) => {
            return Err(GroupError::RankDeficient { rank, n: t.n() })
        }
        Err(e) => return Err(e.into()),
    };
    let report = cycle.admissible();
    if !report.admissible {
        return Err(GroupError::NonAdmissible(report));
    }
    Ok(CycleChain::from_cycle(cycle))
}

/// `ψ̃` extended linearly to chains.
pub fn psi_tilde_chain<S: Scalar>(
    chain: &GroupChain<S>,
    v: &BasisVector<S>,
) -> Result<CycleChain<S>, GroupError> {
    let m = chain.len.checked_sub(1).ok_or(GroupError::TooShort(1))?;
    let mut out = CycleChain::zero(m, chain.n);
    for (coeff, t) in &chain.terms {
        out.add_chain(&psi_tilde(t, v)?, coeff)?;
    }
    Ok(out)
}

/// Parameters of a 4-tuple in `GL_2` after moving `g_0 v, g_1 v` to `e_1, e_2`:
/// `g_2 v = (a, c)`, `g_3 v = (b, d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedQuadruple<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> NormalizedQuadruple<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self, GroupError> {
        let q = NormalizedQuadruple { a, b, c, d };
        if q.delta().is_zero() {
            return Err(GroupError::SingularQuadruple);
        }
        Ok(q)
    }

    /// `Δ = ad - bc`.
    pub fn delta(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// A tuple whose `g_i e_1` are `e_1, e_2, (a, c), (b, d)`; second columns
    /// are chosen only to make each entry invertible.
    pub fn to_tuple(&self) -> GroupTuple<S> {
        let (z, o) = (S::zero(), S::one());
        let with_first_column = |x: &S, y: &S| {
            let second = if x.is_zero() { [o.clone(), z.clone()] } else { [z.clone(), o.clone()] };
            Matrix::from_rows(
                vec![vec![x.clone(), second[0].clone()], vec![y.clone(), second[1].clone()]],
                2,
            )
            .expect("2x2")
        };
        let entries = vec![
            with_first_column(&o, &z),
            with_first_column(&z, &o),
            with_first_column(&self.a, &self.c),
            with_first_column(&self.b, &self.d),
        ];
        GroupTuple::new(2, entries).expect("nonzero first columns give invertible entries")
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "c": self.c.to_string(),
            "d": self.d.to_string(),
            "delta": self.delta().to_string(),
        })
    }
}

/// `h = [g_0 v | g_1 v]⁻¹`, the change of frame sending `g_0 v, g_1 v` to the
/// standard basis.
pub fn normalizing_frame<S: Scalar>(t: &GroupTuple<S>, v: &BasisVector<S>) -> Result<Matrix<S>, GroupError> {
    if t.n() != 2 {
        return Err(GroupError::UnsupportedRank(t.n()));
    }
    if t.len() < 2 {
        return Err(GroupError::TooShort(2));
    }
    let w = t.images(v)?;
    let frame = Matrix::from_rows(
        vec![vec![w[0][0].clone(), w[1][0].clone()], vec![w[0][1].clone(), w[1][1].clone()]],
        2,
    )
    .expect("2x2");
    frame.inverse().ok_or(GroupError::DependentFrame)
}

pub fn normalize_quadruple<S: Scalar>(
    t: &GroupTuple<S>,
    v: &BasisVector<S>,
) -> Result<NormalizedQuadruple<S>, GroupError> {
    if t.len() != 4 {
        return Err(GroupError::WrongLength {
            expected: 4,
            found: t.len(),
        });
    }
    let h = normalizing_frame(t, v)?;
    let w = t.images(v)?;
    let ac = h.mul_vec(&w[2]);
    let bd = h.mul_vec(&w[3]);
    NormalizedQuadruple::new(ac[0].clone(), bd[0].clone(), ac[1].clone(), bd[1].clone())
}

/// Rank of the vectors `g_i v`.
pub fn image_rank<S: Scalar>(t: &GroupTuple<S>, v: &BasisVector<S>) -> Result<usize, GroupError> {
    let w = t.images(v)?;
    Ok(linalg::rank(&w, t.n()))
}
