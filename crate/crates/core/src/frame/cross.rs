// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Generalized cross product in `R^{n+1}`: the vector completing `n`
//! independent vectors to a positively oriented frame.

use crate::jet::{Jet, JetVector};
use crate::linalg::{self, det};

use super::FrameError;

/// Cofactor expansion along the last slot: component `j` of the result is
/// the signed minor of the matrix `(v_1 … v_n)` with row `j` deleted, so
/// that `det(v_1, …, v_n, x) = w · x` for every `x`.
fn cofactors<T: linalg::CofactorRing>(vectors: &[Vec<T>]) -> Vec<T> {
    let n = vectors.len();
    let dim = n + 1;
    (0..dim)
        .map(|j| {
            let minor: Vec<Vec<T>> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|&(row, _)| row != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let m = det(&minor);
            if (j + n).is_multiple_of(2) {
                m
            } else {
                m.zero_like().ring_sub(&m)
            }
        })
        .collect()
}

fn check_shape(count: usize, dims: impl Iterator<Item = usize>) -> Result<(), FrameError> {
    for d in dims {
        if d != count + 1 {
            return Err(FrameError::DegenerateSpan(0.0));
        }
    }
    if count == 0 {
        return Err(FrameError::DegenerateSpan(0.0));
    }
    Ok(())
}

/// Generalized cross product of `n` vectors in `R^{n+1}`.
///
/// The result is orthogonal to every input, and oriented so that
/// `det(v_1, …, v_n, w) > 0`. For orthonormal inputs it is the unit vector
/// completing a positively oriented orthonormal basis.
pub fn generalized_cross(vectors: &[Vec<f64>], degeneracy_tol: f64) -> Result<Vec<f64>, FrameError> {
    check_shape(vectors.len(), vectors.iter().map(Vec::len))?;
    let gram = linalg::gram_det(vectors);
    if !(gram > degeneracy_tol) {
        return Err(FrameError::DegenerateSpan(gram));
    }
    let mut w = cofactors(vectors);
    let mut full = vectors.to_vec();
    full.push(w.clone());
    if linalg::det_columns(&full) < 0.0 {
        w.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(w)
}

/// [`generalized_cross`] lifted to germs; the orientation is fixed from the
/// leading coefficients.
pub fn generalized_cross_jets(vectors: &[JetVector], degeneracy_tol: f64) -> Result<JetVector, FrameError> {
    check_shape(vectors.len(), vectors.iter().map(JetVector::dim))?;
    let values: Vec<Vec<f64>> = vectors.iter().map(JetVector::value).collect();
    let gram = linalg::gram_det(&values);
    if !(gram > degeneracy_tol) {
        return Err(FrameError::DegenerateSpan(gram));
    }
    let rows: Vec<Vec<Jet>> = vectors.iter().map(|v| v.components().to_vec()).collect();
    let w = JetVector::new(cofactors(&rows))?;
    let mut full = values;
    full.push(w.value());
    if linalg::det_columns(&full) < 0.0 {
        Ok(w.scale(-1.0))
    } else {
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis;

    #[test]
    fn completes_standard_bases() {
        let e3 = generalized_cross(&[basis(3, 0), basis(3, 1)], 1e-10).unwrap();
        assert_eq!(e3, basis(3, 2));
        let e4 = generalized_cross(&[basis(4, 0), basis(4, 1), basis(4, 2)], 1e-10).unwrap();
        assert_eq!(e4, basis(4, 3));
        let mut full = vec![basis(4, 0), basis(4, 1), basis(4, 2)];
        full.push(e4);
        assert_eq!(linalg::det_columns(&full), 1.0);
    }

    #[test]
    fn matches_three_dimensional_cross() {
        let a = vec![0.3, -1.0, 2.0];
        let b = vec![1.5, 0.2, -0.7];
        let w = generalized_cross(&[a.clone(), b.clone()], 1e-10).unwrap();
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        for (x, y) in w.iter().zip(cross) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn small_circle_dual_point() {
        // u_0(0), u_1(0) of the r = 0.8 small circle
        let w = generalized_cross(&[vec![0.8, 0.0, 0.6], vec![0.0, 1.0, 0.0]], 1e-10).unwrap();
        let expected = [-0.6, 0.0, 0.8];
        for (x, y) in w.iter().zip(expected) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn dependent_vectors_are_degenerate() {
        let r = generalized_cross(&[vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 0.0]], 1e-10);
        assert!(matches!(r, Err(FrameError::DegenerateSpan(_))));
        let r = generalized_cross(&[vec![1.0, 0.0]], 1e-10);
        assert!(r.is_ok());
        let r = generalized_cross(&[vec![1.0, 0.0, 0.0]], 1e-10);
        assert!(r.is_err());
    }
}
