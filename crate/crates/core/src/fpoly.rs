//! Floating-point images of exact polynomials for numerical work.

use nalgebra::{DMatrix, DVector};

use crate::poly::{rat_to_f64, PolyMap, Polynomial};

#[derive(Debug, Clone)]
pub struct FloatPoly {
    n: usize,
    terms: Vec<(Vec<i32>, f64)>,
}

impl FloatPoly {
    pub fn new(p: &Polynomial) -> Self {
        FloatPoly {
            n: p.n(),
            terms: p
                .terms()
                .map(|(k, c)| (k.as_slice().iter().map(|&e| e as i32).collect(), rat_to_f64(c)))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| k.iter().zip(x).fold(*c, |acc, (&e, &v)| acc * v.powi(e)))
            .sum()
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.n];
        for (k, c) in &self.terms {
            for (j, gj) in g.iter_mut().enumerate() {
                let ej = k[j];
                if ej == 0 {
                    continue;
                }
                let mut t = *c * ej as f64;
                for (i, (&e, &v)) in k.iter().zip(x).enumerate() {
                    t *= if i == j { v.powi(e - 1) } else { v.powi(e) };
                }
                *gj += t;
            }
        }
        g
    }

    /// Sum of `|c_k x^k|`, a scale for rounding error in [`eval`](Self::eval).
    pub fn magnitude(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| k.iter().zip(x).fold(c.abs(), |acc, (&e, &v)| acc * v.abs().powi(e)))
            .sum()
    }
}

/// A system of float polynomials with its Jacobian.
#[derive(Debug, Clone)]
pub struct FloatSystem {
    pub polys: Vec<FloatPoly>,
}

impl FloatSystem {
    pub fn new(ps: &[Polynomial]) -> Self {
        FloatSystem {
            polys: ps.iter().map(FloatPoly::new).collect(),
        }
    }

    pub fn from_map(f: &PolyMap) -> Self {
        Self::new(f.components())
    }

    pub fn eval(&self, x: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.polys.len(), self.polys.iter().map(|p| p.eval(x)))
    }

    pub fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let n = x.len();
        let mut j = DMatrix::zeros(self.polys.len(), n);
        for (i, p) in self.polys.iter().enumerate() {
            for (c, v) in p.gradient(x).into_iter().enumerate() {
                j[(i, c)] = v;
            }
        }
        j
    }
}
