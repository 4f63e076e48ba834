//! Seeded samplers for small-height Gaussian rationals and the group data
//! built from them.
//!
//! Every sample `index` under a `seed` draws from its own ChaCha stream, so
//! results do not depend on evaluation order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::grouphom::{psi_tilde, BasisVector, GroupTuple, NormalizedQuadruple};
use crate::linalg::Matrix;
use crate::regulators::{cr_arguments, reg_b_closed_form, reg_g};
use crate::scalar::{GaussianRational, Scalar};

/// Bound on numerators and denominators of sampled rationals.
pub const DEFAULT_HEIGHT: i64 = 10;

/// Draws allowed per sample before it is declared degenerate.
pub const MAX_ATTEMPTS: usize = 64;

/// The generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `p/q + (r/s)i` with `|p|, |r| ≤ height` and `1 ≤ q, s ≤ height`.
pub fn random_gaussian(rng: &mut impl Rng, height: i64) -> GaussianRational {
    GaussianRational::from_fractions(
        rng.gen_range(-height..=height),
        rng.gen_range(1..=height),
        rng.gen_range(-height..=height),
        rng.gen_range(1..=height),
    )
}

pub fn random_nonzero_gaussian(rng: &mut impl Rng, height: i64) -> GaussianRational {
    loop {
        let z = random_gaussian(rng, height);
        if !Scalar::is_zero(&z) {
            return z;
        }
    }
}

pub fn random_invertible(rng: &mut impl Rng, n: usize, height: i64) -> Matrix<GaussianRational> {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| random_gaussian(rng, height)).collect())
            .collect();
        let m = Matrix::from_rows(rows, n).expect("square rows");
        if !Scalar::is_zero(&m.det()) {
            return m;
        }
    }
}

pub fn random_tuple(rng: &mut impl Rng, n: usize, len: usize, height: i64) -> GroupTuple<GaussianRational> {
    let entries = (0..len).map(|_| random_invertible(rng, n, height)).collect();
    GroupTuple::new(n, entries).expect("entries are invertible")
}

/// A quadruple on which both closed forms are defined:
/// `Δ ≠ 0`, `a, b, c, d ≠ 0` and `c ≠ d`.
pub fn random_quadruple(rng: &mut impl Rng, height: i64) -> Option<NormalizedQuadruple<GaussianRational>> {
    (0..MAX_ATTEMPTS).find_map(|_| {
        let [a, b, c, d] = [(); 4].map(|_| random_gaussian(rng, height));
        let q = NormalizedQuadruple::new(a, b, c, d).ok()?;
        (cr_arguments(&q).is_ok() && reg_b_closed_form(&q).is_ok()).then_some(q)
    })
}

/// A tuple in `GL_2` whose `ψ̃` image is a nonzero admissible cycle. For
/// length 5 every omission must also give a cycle on which `reg_g` is defined.
pub fn random_admissible_tuple(rng: &mut impl Rng, len: usize, height: i64) -> Option<GroupTuple<GaussianRational>> {
    let v = BasisVector::first(2);
    (0..MAX_ATTEMPTS).find_map(|_| {
        let t = random_tuple(rng, 2, len, height);
        let chain = psi_tilde(&t, &v).ok()?;
        if chain.is_zero() {
            return None;
        }
        if len == 5 {
            for i in 0..len {
                reg_g(&psi_tilde(&t.omit(i), &v).ok()?).ok()?;
            }
        }
        Some(t)
    })
}

pub fn convert_matrix<S: Scalar>(m: &Matrix<GaussianRational>) -> Matrix<S> {
    let rows = m
        .rows()
        .iter()
        .map(|r| r.iter().map(S::from_gaussian).collect())
        .collect();
    Matrix::from_rows(rows, m.ncols()).expect("same shape")
}

/// The same tuple over another scalar domain.
pub fn convert_tuple<S: Scalar>(t: &GroupTuple<GaussianRational>) -> GroupTuple<S> {
    let entries = t.entries().iter().map(convert_matrix).collect();
    GroupTuple::new(t.n(), entries).expect("invertibility survives embedding")
}

pub fn convert_quadruple<S: Scalar>(
    q: &NormalizedQuadruple<GaussianRational>,
) -> Result<NormalizedQuadruple<S>, crate::grouphom::GroupError> {
    NormalizedQuadruple::new(
        S::from_gaussian(&q.a),
        S::from_gaussian(&q.b),
        S::from_gaussian(&q.c),
        S::from_gaussian(&q.d),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_of_order() {
        let a: Vec<_> = (0..4).map(|i| random_gaussian(&mut sample_rng(9, i), 10)).collect();
        let b: Vec<_> = (0..4).rev().map(|i| random_gaussian(&mut sample_rng(9, i), 10)).collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn samplers_respect_constraints() {
        let mut rng = sample_rng(3, 0);
        for _ in 0..20 {
            let q = random_quadruple(&mut rng, DEFAULT_HEIGHT).unwrap();
            assert!(!Scalar::is_zero(&q.delta()));
            assert_ne!(q.c, q.d);
            let t = random_admissible_tuple(&mut rng, 5, DEFAULT_HEIGHT).unwrap();
            assert_eq!(t.len(), 5);
        }
    }
}
