//! Floating-point cross-check of the word oracle through the geometric
//! representation: `s(v) = v - 2 B(a_s, v) a_s` with
//! `B(a_s, a_t) = -cos(pi / m_st)` (and `-1` for `m_st = inf`). A generator
//! `s` is a right descent of `w` exactly when `w(a_s)` is a negative root.

use std::f64::consts::PI;

use serde::Serialize;

use crate::matrix::{CoxeterMatrix, Order, SubsetMask};
use crate::oracle::{Ball, Letter};

/// Coordinates within this distance of 0 count as 0 in the sign test.
pub const SIGN_TOLERANCE: f64 = 1e-8;

/// Row-major `rank x rank` matrices of the representation.
pub struct GeometricRepresentation {
    rank: usize,
    generators: Vec<Vec<f64>>,
}

impl GeometricRepresentation {
    pub fn new(matrix: &CoxeterMatrix) -> Self {
        let rank = matrix.rank();
        let bilinear = |i: usize, j: usize| match matrix.order(i, j) {
            Order::Finite(1) => 1.0,
            Order::Finite(m) => -(PI / m as f64).cos(),
            Order::Infinite => -1.0,
        };
        // Column j of s_i is s_i(a_j) = a_j - 2 B(a_i, a_j) a_i.
        let generators = (0..rank)
            .map(|i| {
                let mut g = identity(rank);
                for j in 0..rank {
                    g[i * rank + j] -= 2.0 * bilinear(i, j);
                }
                g
            })
            .collect();
        GeometricRepresentation { rank, generators }
    }

    pub fn identity(&self) -> Vec<f64> {
        identity(self.rank)
    }

    /// `w * s`.
    pub fn right_multiply(&self, w: &[f64], s: usize) -> Vec<f64> {
        let n = self.rank;
        let g = &self.generators[s];
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = w[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * g[k * n + j];
                }
            }
        }
        out
    }

    pub fn evaluate(&self, letters: &[Letter]) -> Vec<f64> {
        letters
            .iter()
            .fold(self.identity(), |w, &s| self.right_multiply(&w, s as usize))
    }

    /// `{ s : w(a_s) < 0 }`, reading column `s` of `w`.
    pub fn descents(&self, w: &[f64]) -> SubsetMask {
        let n = self.rank;
        (0..n)
            .filter(|&s| (0..n).all(|i| w[i * n + s] <= SIGN_TOLERANCE))
            .fold(SubsetMask::EMPTY, |acc, s| acc.insert(s))
    }
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

/// Per-layer output of the numeric enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericLayer {
    pub size: usize,
    /// Sorted descent masks of the layer's elements.
    pub descent_masks: Vec<u32>,
}

/// Enumerates elements by length using only the representation. Each
/// element `w'` of length `k + 1` is produced once, from `w = w' s` where
/// `s` is the least right descent of `w'`, so no floating-point
/// deduplication is needed.
pub fn numeric_spheres(matrix: &CoxeterMatrix, horizon: usize) -> Vec<NumericLayer> {
    let rep = GeometricRepresentation::new(matrix);
    let mut layer = vec![rep.identity()];
    let mut out = Vec::with_capacity(horizon + 1);
    for k in 0..=horizon {
        let mut masks: Vec<u32> = layer.iter().map(|w| rep.descents(w).bits()).collect();
        masks.sort_unstable();
        out.push(NumericLayer {
            size: layer.len(),
            descent_masks: masks,
        });
        if k == horizon {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            let d = rep.descents(w);
            for s in 0..matrix.rank() {
                if d.contains(s) {
                    continue;
                }
                let candidate = rep.right_multiply(w, s);
                let cd = rep.descents(&candidate);
                if cd.iter().next() == Some(s) {
                    next.push(candidate);
                }
            }
        }
        layer = next;
    }
    out
}

/// Comparison between the rewriting oracle and the numeric representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub horizon: usize,
    pub rewriting_sizes: Vec<usize>,
    pub numeric_sizes: Vec<usize>,
    pub mismatches: Vec<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Sphere sizes and descent sets must agree layer by layer, and the
/// representation of every canonical word must have the same descents.
pub fn cross_check(ball: &Ball) -> CrossCheckReport {
    let matrix = ball.matrix();
    let horizon = ball.horizon();
    let numeric = numeric_spheres(matrix, horizon);
    let rewriting_sizes = ball.sphere_sizes();
    let numeric_sizes: Vec<usize> = numeric.iter().map(|l| l.size).collect();
    let mut mismatches = Vec::new();
    if rewriting_sizes != numeric_sizes {
        mismatches.push(format!(
            "sphere sizes differ: rewriting {rewriting_sizes:?}, numeric {numeric_sizes:?}"
        ));
    }
    let rep = GeometricRepresentation::new(matrix);
    for (k, layer) in numeric.iter().enumerate() {
        let mut masks: Vec<u32> = ball
            .sphere(k)
            .iter()
            .map(|e| e.descents.mask().bits())
            .collect();
        masks.sort_unstable();
        if masks != layer.descent_masks {
            mismatches.push(format!("descent sets differ at length {k}"));
        }
        for e in ball.sphere(k) {
            let numeric_descents = rep.descents(&rep.evaluate(e.word.letters()));
            if numeric_descents != e.descents.mask() {
                mismatches.push(format!(
                    "In({}) = {} by rewriting, {} numerically",
                    e.word,
                    e.descents.mask(),
                    numeric_descents
                ));
            }
        }
    }
    CrossCheckReport {
        horizon,
        rewriting_sizes,
        numeric_sizes,
        mismatches,
    }
}
