//! Hilbert-space semantics: evaluation, equality up to scalar and Born-rule
//! probabilities.

mod eval;
mod matrix;

pub use eval::{evaluate, evaluate_with, ContractionOrder, EvalOptions, DEFAULT_MAX_WIRES};
pub use matrix::{format_sig, Matrix, C};

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Result, ZxError};
use crate::graph::{Diagram, Point};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EqualityVerdict {
    pub equal: bool,
    /// `λ` with `a ≈ λ·b`, absent when `b` is numerically zero.
    pub scalar: Option<C>,
    pub max_residual: f64,
}

/// Decides whether `a = λ·b` for some nonzero `λ`, taking `λ` from the
/// largest-magnitude entry of `b`. Two numerically zero matrices are equal
/// with no scalar.
pub fn equal_up_to_scalar(a: &Matrix, b: &Matrix, tol: f64) -> Result<EqualityVerdict> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(ZxError::Dimension(a.rows(), a.cols(), b.rows(), b.cols()));
    }
    let (na, nb) = (a.max_abs(), b.max_abs());
    if na <= tol && nb <= tol {
        return Ok(EqualityVerdict {
            equal: true,
            scalar: None,
            max_residual: na.max(nb),
        });
    }
    if nb <= tol {
        return Ok(EqualityVerdict {
            equal: false,
            scalar: None,
            max_residual: na,
        });
    }
    let k = b.argmax();
    let lambda = a.data()[k] / b.data()[k];
    let residual = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - lambda * y).norm())
        .fold(0.0, f64::max);
    Ok(EqualityVerdict {
        equal: na > tol && residual <= tol * na.max(1.0),
        scalar: Some(lambda),
        max_residual: residual,
    })
}

/// Entrywise equality within `tol`.
pub fn equal_exact(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    a.max_diff(b).is_some_and(|d| d <= tol)
}

/// The unit-norm effect vector `⟨p|` (real, so no conjugation is needed).
pub fn effect_vector(p: Point) -> [f64; 2] {
    match p {
        Point::ZPlus => [1.0, 0.0],
        Point::ZMinus => [0.0, 1.0],
        Point::XPlus => [FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        Point::XMinus => [FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    }
}

/// `⟨effects|ψ⟩` for a state column vector over `effects.len()` qubits.
pub fn amplitude(state: &Matrix, effects: &[Point]) -> Result<C> {
    let n = effects.len();
    if state.cols() != 1 || state.rows() != 1 << n {
        return Err(ZxError::Arity {
            expected: n,
            found: state.rows().trailing_zeros() as usize,
        });
    }
    let vecs: Vec<[f64; 2]> = effects.iter().map(|&p| effect_vector(p)).collect();
    let mut amp = C::new(0.0, 0.0);
    for (x, z) in state.data().iter().enumerate() {
        let mut w = 1.0;
        for (q, v) in vecs.iter().enumerate() {
            w *= v[(x >> (n - 1 - q)) & 1];
            if w == 0.0 {
                break;
            }
        }
        amp += z * w;
    }
    Ok(amp)
}

/// `|⟨effects|ψ⟩|² / ⟨ψ|ψ⟩` for a state column vector.
pub fn born_probability_vector(state: &Matrix, effects: &[Point]) -> Result<f64> {
    let amp = amplitude(state, effects)?;
    let norm2 = state.norm().powi(2);
    if norm2 <= f64::MIN_POSITIVE {
        return Err(ZxError::ZeroNorm);
    }
    Ok(amp.norm_sqr() / norm2)
}

/// Outcome probability for a state diagram (no inputs, one effect per output).
pub fn born_probability(state: &Diagram, effects: &[Point]) -> Result<f64> {
    if !state.inputs().is_empty() {
        return Err(ZxError::Arity {
            expected: 0,
            found: state.inputs().len(),
        });
    }
    if state.outputs().len() != effects.len() {
        return Err(ZxError::Arity {
            expected: state.outputs().len(),
            found: effects.len(),
        });
    }
    born_probability_vector(&evaluate(state)?, effects)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_invariance() {
        let m = Matrix::real(&[&[1.0, 2.0], &[0.0, -1.0]]);
        let v = equal_up_to_scalar(&m.scale(C::new(0.0, 3.0)), &m, 1e-9).unwrap();
        assert!(v.equal);
        assert!((v.scalar.unwrap() - C::new(0.0, 3.0)).norm() < 1e-12);
    }

    #[test]
    fn paulis_differ() {
        let x = Matrix::real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let z = Matrix::real(&[&[1.0, 0.0], &[0.0, -1.0]]);
        assert!(!equal_up_to_scalar(&x, &z, 1e-9).unwrap().equal);
    }

    #[test]
    fn zero_matrices() {
        let z = Matrix::zeros(2, 2);
        let v = equal_up_to_scalar(&z, &z, 1e-9).unwrap();
        assert!(v.equal && v.scalar.is_none());
        let i = Matrix::identity(2);
        assert!(!equal_up_to_scalar(&z, &i, 1e-9).unwrap().equal);
        assert!(!equal_up_to_scalar(&i, &z, 1e-9).unwrap().equal);
    }

    #[test]
    fn dimension_mismatch() {
        let r = equal_up_to_scalar(&Matrix::identity(2), &Matrix::identity(4), 1e-9);
        assert!(matches!(r, Err(ZxError::Dimension(2, 2, 4, 4))));
    }

    #[test]
    fn zero_norm_state() {
        let s = Matrix::zeros(2, 1);
        assert_eq!(
            born_probability_vector(&s, &[Point::ZPlus]),
            Err(ZxError::ZeroNorm)
        );
    }
}
