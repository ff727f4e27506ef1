//! Closed intervals with outward rounding.
//!
//! Every operation computes the round-to-nearest result and then steps each
//! endpoint one ulp outward, which encloses the exact real result of the
//! operation on the enclosed reals.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::Serialize;

use crate::poly::{rat_to_f64, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Encloses a rational whose float conversion may be inexact.
    pub fn from_rational(q: &BigRational) -> Self {
        let v = rat_to_f64(q);
        if crate::rational::from_f64(v) == *q {
            Interval::point(v)
        } else {
            Interval {
                lo: v.next_down(),
                hi: v.next_up(),
            }
        }
    }

    fn outward(lo: f64, hi: f64) -> Self {
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// `x^e`, tight for even powers of intervals straddling zero.
    pub fn powi(self, e: u32) -> Self {
        match e {
            0 => Interval::point(1.0),
            1 => self,
            _ if e % 2 == 1 => {
                // odd powers are monotone
                Interval::new(point_pow(self.lo, e).lo, point_pow(self.hi, e).hi)
            }
            _ => {
                let a = point_pow(self.lo.abs(), e);
                let b = point_pow(self.hi.abs(), e);
                if self.lo >= 0.0 || self.hi <= 0.0 {
                    Interval::new(a.lo.min(b.lo).max(0.0), a.hi.max(b.hi))
                } else {
                    Interval::new(0.0, a.hi.max(b.hi))
                }
            }
        }
    }

    /// `[x]^2` with the lower end clamped at zero.
    pub fn sqr(self) -> Self {
        self.powi(2)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let c = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::outward(lo, hi)
    }
}

/// Enclosure of `x^e` by repeated outward-rounded squaring.
fn point_pow(x: f64, e: u32) -> Interval {
    let mut result = Interval::point(1.0);
    let mut base = Interval::point(x);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base;
        }
        e >>= 1;
        if e > 0 {
            base = base * base;
        }
    }
    result
}

/// An axis-aligned box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IBox {
    pub sides: Vec<Interval>,
    pub depth: u32,
}

impl IBox {
    pub fn cube(n: usize, r: f64) -> Self {
        IBox {
            sides: vec![Interval::new(-r, r); n],
            depth: 0,
        }
    }

    pub fn center(&self) -> Vec<f64> {
        self.sides.iter().map(Interval::mid).collect()
    }

    pub fn max_width(&self) -> f64 {
        self.sides.iter().map(Interval::width).fold(0.0, f64::max)
    }

    /// Bisects the widest side (lowest index on ties).
    pub fn bisect(&self) -> [IBox; 2] {
        let mut k = 0;
        for (i, s) in self.sides.iter().enumerate() {
            if s.width() > self.sides[k].width() {
                k = i;
            }
        }
        let m = self.sides[k].mid();
        let mut a = self.clone();
        let mut b = self.clone();
        a.sides[k].hi = m;
        b.sides[k].lo = m;
        a.depth += 1;
        b.depth += 1;
        [a, b]
    }

    /// Enclosure of `|x|^2` over the box.
    pub fn norm_sq(&self) -> Interval {
        self.sides
            .iter()
            .fold(Interval::point(0.0), |acc, s| acc + s.sqr())
    }
}

/// A polynomial prepared for interval evaluation: each term is evaluated
/// as `coeff * prod x_i^k_i` directly.
#[derive(Debug, Clone)]
pub struct IntervalPoly {
    terms: Vec<(Vec<u32>, Interval)>,
    max_exp: Vec<u32>,
}

impl IntervalPoly {
    pub fn new(p: &Polynomial) -> Self {
        IntervalPoly {
            terms: p
                .terms()
                .map(|(k, c)| (k.as_slice().to_vec(), Interval::from_rational(c)))
                .collect(),
            max_exp: p.max_exponents(),
        }
    }

    pub fn eval(&self, b: &IBox) -> Interval {
        let powers: Vec<Vec<Interval>> = b
            .sides
            .iter()
            .zip(&self.max_exp)
            .map(|(s, &m)| (0..=m).map(|e| s.powi(e)).collect())
            .collect();
        let mut acc = Interval::point(0.0);
        for (k, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in k.iter().enumerate() {
                if e > 0 {
                    t = t * powers[i][e as usize];
                }
            }
            acc = acc + t;
        }
        acc
    }
}
