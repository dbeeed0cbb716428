// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Small dense helpers on `f64` slices, plus a Laplace determinant generic
//! over anything that forms a commutative ring (plain floats and jets).

use crate::jet::Jet;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: &[f64], k: f64) -> Vec<f64> {
    a.iter().map(|x| x * k).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a + k b`
pub fn axpy(a: &[f64], k: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

pub fn normalize(a: &[f64]) -> Vec<f64> {
    scale(a, 1.0 / norm(a))
}

/// Unit basis vector `e_i` in `R^dim`.
pub fn basis(dim: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; dim];
    e[i] = 1.0;
    e
}

/// Ring operations needed by cofactor expansion.
pub trait CofactorRing: Clone {
    fn zero_like(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
}

impl CofactorRing for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl CofactorRing for Jet {
    fn zero_like(&self) -> Self {
        Jet::zero(self.base(), self.order())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Determinant of a square matrix given as rows, by Laplace expansion along
/// the first row. Intended for the small sizes used here (≤ 6).
pub fn det<T: CofactorRing>(rows: &[Vec<T>]) -> T {
    let size = rows.len();
    assert!(size > 0 && rows.iter().all(|r| r.len() == size), "square matrix");
    if size == 1 {
        return rows[0][0].clone();
    }
    if size == 2 {
        return rows[0][0]
            .ring_mul(&rows[1][1])
            .ring_sub(&rows[0][1].ring_mul(&rows[1][0]));
    }
    let mut acc = rows[0][0].zero_like();
    for col in 0..size {
        let minor: Vec<Vec<T>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = rows[0][col].ring_mul(&det(&minor));
        acc = if col % 2 == 0 {
            acc.ring_add(&term)
        } else {
            acc.ring_sub(&term)
        };
    }
    acc
}

/// Determinant of the matrix whose columns are `vectors`.
pub fn det_columns(vectors: &[Vec<f64>]) -> f64 {
    // det(A) = det(A^T)
    det(vectors)
}

/// Gram determinant `det(v_i · v_j)`.
pub fn gram_det(vectors: &[Vec<f64>]) -> f64 {
    let gram: Vec<Vec<f64>> = vectors
        .iter()
        .map(|a| vectors.iter().map(|b| dot(a, b)).collect())
        .collect();
    if gram.is_empty() {
        1.0
    } else {
        det(&gram)
    }
}
