//! Exact sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Exponent`], whose ordering is
//! graded lexicographic. Zero coefficients are never stored, so structural
//! equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("polynomial map must be square: {rows} components in {cols} variables")]
    NonSquare { rows: usize, cols: usize },
    #[error("polynomial map needs at least one component")]
    Empty,
}

/// Multi-index `k = (k_1, ..., k_n)` of a monomial `x^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(k: Vec<u32>) -> Self {
        Exponent(k)
    }

    pub fn zeros(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut k = vec![0; n];
        k[i] = 1;
        Exponent(k)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Weighted degree `<s, k>`.
    pub fn dot(&self, s: &[u64]) -> u64 {
        self.0.iter().zip(s).map(|(&e, &w)| e as u64 * w).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn from_ints(v: &[i64]) -> Self {
        RationalPoint(v.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact multivariate polynomial with rational coefficients in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Self::monomial(Exponent::zeros(n), c)
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> Result<Self, PolyError> {
        if i >= n {
            return Err(PolyError::VariableOutOfRange { index: i, n });
        }
        Ok(Self::monomial(Exponent::unit(n, i), BigRational::one()))
    }

    pub fn monomial(k: Exponent, c: BigRational) -> Self {
        let n = k.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Polynomial { n, terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(n: usize, it: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Polynomial::zero(n);
        for (k, c) in it {
            if k.len() != n {
                return Err(PolyError::DimensionMismatch {
                    expected: n,
                    found: k.len(),
                });
            }
            p.add_term(Exponent(k), c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, k: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &Exponent) -> BigRational {
        self.terms.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Exponent::zeros(self.n))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Exponent::is_constant)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Exponent::total_degree).max()
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for k in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(k.as_slice()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    /// Whether `x_i` occurs in some term.
    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|k| k.as_slice()[i] > 0)
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Exponent) -> bool) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term(ka.mul(kb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact partial derivative with respect to `x_i` (0-based).
    pub fn partial(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.n {
            return Err(PolyError::VariableOutOfRange { index: i, n: self.n });
        }
        let mut out = Polynomial::zero(self.n);
        for (k, c) in &self.terms {
            let e = k.0[i];
            if e == 0 {
                continue;
            }
            let mut dk = k.0.clone();
            dk[i] -= 1;
            out.add_term(Exponent(dk), c * BigRational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, pt: &[BigRational]) -> Result<BigRational, PolyError> {
        if pt.len() != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                found: pt.len(),
            });
        }
        let maxe = self.max_exponents();
        let powers: Vec<Vec<BigRational>> = pt
            .iter()
            .zip(&maxe)
            .map(|(x, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                v.push(BigRational::one());
                for j in 1..=m as usize {
                    let next = &v[j - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = BigRational::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in k.0.iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point value; `pt.len()` must equal `n`.
    pub fn eval_f64(&self, pt: &[f64]) -> f64 {
        debug_assert_eq!(pt.len(), self.n);
        self.terms
            .iter()
            .map(|(k, c)| {
                k.0.iter()
                    .zip(pt)
                    .fold(rat_to_f64(c), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Substitutes `x_i -> x_i + shift_i` and expands.
    pub fn translate(&self, shift: &[BigRational]) -> Result<Polynomial, PolyError> {
        if shift.len() != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                found: shift.len(),
            });
        }
        let maxe = self.max_exponents();
        // (x_i + b_i)^e for every needed e
        let shifted: Vec<Vec<Polynomial>> = (0..self.n)
            .map(|i| {
                let lin = &Polynomial::var(self.n, i).expect("index in range")
                    + &Polynomial::constant(self.n, shift[i].clone());
                let mut v = vec![Polynomial::one(self.n)];
                for j in 1..=maxe[i] as usize {
                    let next = &v[j - 1] * &lin;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Polynomial::zero(self.n);
        for (k, c) in &self.terms {
            let mut t = Polynomial::constant(self.n, c.clone());
            for (i, &e) in k.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &shifted[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        f.write_str(&crate::parse::print_poly(self, &names))
    }
}

/// A square polynomial map `F = (f_1, ..., f_n): R^n -> R^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, PolyError> {
        let rows = components.len();
        if rows == 0 {
            return Err(PolyError::Empty);
        }
        for c in &components {
            if c.n() != rows {
                return Err(PolyError::NonSquare { rows, cols: c.n() });
            }
        }
        Ok(PolyMap { components })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap {
            components: (0..n)
                .map(|i| Polynomial::var(n, i).expect("index in range"))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn evaluate(&self, pt: &[BigRational]) -> Result<Vec<BigRational>, PolyError> {
        self.components.iter().map(|f| f.evaluate(pt)).collect()
    }

    pub fn eval_f64(&self, pt: &[f64]) -> Vec<f64> {
        self.components.iter().map(|f| f.eval_f64(pt)).collect()
    }

    /// `F - F(0)`.
    pub fn centered(&self) -> PolyMap {
        let n = self.n();
        PolyMap {
            components: self
                .components
                .iter()
                .map(|f| f - &Polynomial::constant(n, f.constant_term()))
                .collect(),
        }
    }

    /// Entry `(i, j)` is `df_i / dx_j`.
    pub fn jacobian_matrix(&self) -> Vec<Vec<Polynomial>> {
        self.components
            .iter()
            .map(|f| {
                (0..self.n())
                    .map(|j| f.partial(j).expect("index in range"))
                    .collect()
            })
            .collect()
    }

    pub fn jacobian_det(&self) -> Polynomial {
        determinant(&self.jacobian_matrix(), self.n())
    }

    /// `H = (f_1^2 + ... + f_n^2) / 2`.
    pub fn h_norm(&self) -> Polynomial {
        let n = self.n();
        let mut sum = Polynomial::zero(n);
        for f in &self.components {
            sum = &sum + &(f * f);
        }
        sum.scale(&rat(1, 2))
    }

    /// `F(z + b) - F(b)`, exactly.
    pub fn translated(&self, b: &[BigRational]) -> Result<PolyMap, PolyError> {
        let n = self.n();
        let comps = self
            .components
            .iter()
            .map(|f| {
                let c = f.evaluate(b)?;
                Ok(&f.translate(b)? - &Polynomial::constant(n, c))
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        PolyMap::new(comps)
    }
}

/// The negated gradient field `(-dH/dx_1, ..., -dH/dx_n)`.
pub fn gradient_field(h: &Polynomial) -> PolyMap {
    PolyMap {
        components: (0..h.n())
            .map(|j| -&h.partial(j).expect("index in range"))
            .collect(),
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion along
/// rows, memoizing minors by the set of remaining columns.
pub fn determinant(m: &[Vec<Polynomial>], n: usize) -> Polynomial {
    if m.is_empty() {
        return Polynomial::one(n);
    }
    let size = m.len();
    assert!(size <= 20, "determinant size too large for bitmask minors");
    let mut memo: std::collections::HashMap<u32, Polynomial> = std::collections::HashMap::new();
    let full = (1u32 << size) - 1;
    minor(m, n, 0, full, &mut memo)
}

fn minor(
    m: &[Vec<Polynomial>],
    n: usize,
    row: usize,
    cols: u32,
    memo: &mut std::collections::HashMap<u32, Polynomial>,
) -> Polynomial {
    if cols == 0 {
        return Polynomial::one(n);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Polynomial::zero(n);
    let mut sign_positive = true;
    for (j, entry) in m[row].iter().enumerate() {
        if cols & (1 << j) == 0 {
            continue;
        }
        if !entry.is_zero() {
            let sub = minor(m, n, row + 1, cols & !(1 << j), memo);
            let term = entry * &sub;
            acc = if sign_positive { &acc + &term } else { &acc - &term };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(2, 0).unwrap()
    }
    fn y() -> Polynomial {
        Polynomial::var(2, 1).unwrap()
    }
    fn c(v: i64) -> Polynomial {
        Polynomial::constant(2, int(v))
    }

    fn ex1() -> PolyMap {
        let f = &(&x().pow(3) + &y().pow(3)) + &x();
        PolyMap::new(vec![f, y()]).unwrap()
    }

    #[test]
    fn add_cancels_and_keeps_identity() {
        assert_eq!(&(&x() + &y()) + &(-&x()), y());
        let p = &x().pow(2) + &y();
        assert_eq!(&p + &Polynomial::zero(2), p);
        let half = x().pow(2).scale(&rat(1, 2));
        assert_eq!(&half + &half, x().pow(2));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Polynomial::var(2, 0).unwrap();
        let b = Polynomial::var(3, 0).unwrap();
        assert!(matches!(a.try_add(&b), Err(PolyError::DimensionMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
        assert!(a.evaluate(&[int(1)]).is_err());
        assert!(Polynomial::var(2, 2).is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&(&x() + &y()) * &(&x() - &y()), &x().pow(2) - &y().pow(2));
        let p = &x().pow(2) + &y();
        assert_eq!(&p * &Polynomial::one(2), p);
        let s = &x().pow(3) + &y().pow(3);
        let expect = &(&x().pow(6) + &(&x().pow(3) * &y().pow(3)).scale(&int(2))) + &y().pow(6);
        assert_eq!(&s * &s, expect);
    }

    #[test]
    fn partial_examples() {
        let p = &(&x().pow(3) + &y().pow(3)) + &x();
        assert_eq!(p.partial(0).unwrap(), &x().pow(2).scale(&int(3)) + &c(1));
        assert!(x().pow(2).partial(1).unwrap().is_zero());
        assert!(p.partial(2).is_err());

        let u = Polynomial::var(1, 0).unwrap();
        let inner = &(&u.scale(&int(9)) + &Polynomial::constant(1, int(10))).pow(2)
            + &Polynomial::constant(1, int(8));
        let pp = &u.pow(2) * &inner;
        let d = pp.partial(0).unwrap();
        let expect = &(&u.pow(3).scale(&int(324)) + &u.pow(2).scale(&int(540))) + &u.scale(&int(216));
        assert_eq!(d, expect);
        assert_eq!(pp.evaluate(&[int(-1)]).unwrap(), int(9));
    }

    #[test]
    fn evaluate_examples() {
        let p = &x().pow(3) + &y().pow(3);
        assert_eq!(p.evaluate(&[int(1), int(-1)]).unwrap(), int(0));
        assert_eq!(p.evaluate(&[int(0), int(0)]).unwrap(), int(0));
    }

    #[test]
    fn jacobian_examples() {
        let j = ex1().jacobian_matrix();
        assert_eq!(j[0][0], &x().pow(2).scale(&int(3)) + &c(1));
        assert_eq!(j[0][1], y().pow(2).scale(&int(3)));
        assert!(j[1][0].is_zero());
        assert_eq!(j[1][1], c(1));
        let swap = PolyMap::new(vec![y(), x()]).unwrap().jacobian_matrix();
        assert_eq!(swap, vec![vec![c(0), c(1)], vec![c(1), c(0)]]);
        assert_eq!(ex1().jacobian_det(), &x().pow(2).scale(&int(3)) + &c(1));
        assert_eq!(PolyMap::identity(3).jacobian_det(), Polynomial::one(3));
        let g = PolyMap::new(vec![&x().pow(2) - &c(1), y()]).unwrap();
        assert_eq!(g.jacobian_det(), x().scale(&int(2)));
        assert_eq!(
            PolyMap::new(vec![y(), x()]).unwrap().jacobian_det(),
            c(-1)
        );
    }

    #[test]
    fn h_norm_examples() {
        let h = ex1().h_norm();
        let half = rat(1, 2);
        let expect = Polynomial::from_terms(
            2,
            vec![
                (vec![2, 0], half.clone()),
                (vec![4, 0], int(1)),
                (vec![6, 0], half.clone()),
                (vec![0, 2], half.clone()),
                (vec![1, 3], int(1)),
                (vec![3, 3], int(1)),
                (vec![0, 6], half.clone()),
            ],
        )
        .unwrap();
        assert_eq!(h, expect);
        assert_eq!(
            PolyMap::identity(2).h_norm(),
            (&x().pow(2) + &y().pow(2)).scale(&half)
        );
        let zero = PolyMap::new(vec![Polynomial::zero(2), Polynomial::zero(2)]).unwrap();
        assert!(zero.h_norm().is_zero());
    }

    #[test]
    fn gradient_field_examples() {
        let h = (&x().pow(2) + &y().pow(2)).scale(&rat(1, 2));
        assert_eq!(gradient_field(&h).components(), &[-&x(), -&y()]);
        let y_field = gradient_field(&ex1().h_norm());
        let gx = &(&(&(&x() + &x().pow(3).scale(&int(4))) + &x().pow(5).scale(&int(3))) + &y().pow(3))
            + &(&x().pow(2) * &y().pow(3)).scale(&int(3));
        let gy = &(&(&y() + &(&x() * &y().pow(2)).scale(&int(3)))
            + &(&x().pow(3) * &y().pow(2)).scale(&int(3)))
            + &y().pow(5).scale(&int(3));
        assert_eq!(y_field.components(), &[-&gx, -&gy]);
        assert!(gradient_field(&c(4)).components().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn translate_matches_evaluation() {
        let p = &(&x().pow(3) + &(&x() * &y())) - &c(2);
        let b = [rat(1, 3), int(-2)];
        let t = p.translate(&b).unwrap();
        let z = [rat(5, 7), rat(-1, 2)];
        let shifted = [&z[0] + &b[0], &z[1] + &b[1]];
        assert_eq!(t.evaluate(&z).unwrap(), p.evaluate(&shifted).unwrap());
    }

    #[test]
    fn non_square_map_rejected() {
        let p = Polynomial::var(3, 0).unwrap();
        assert!(matches!(
            PolyMap::new(vec![p.clone(), p]),
            Err(PolyError::NonSquare { .. })
        ));
    }

    #[test]
    fn graded_lex_order() {
        let a = Exponent::new(vec![3, 0]);
        let b = Exponent::new(vec![0, 3]);
        let c = Exponent::new(vec![1, 1]);
        assert!(a > b);
        assert!(b > c);
    }
}
