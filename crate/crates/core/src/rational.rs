//! Helpers for moving between floats and exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use serde::Serializer;

/// Last continued-fraction convergent of `x` whose denominator is at most
/// `max_den`.
pub fn snap(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Snaps every coordinate; `None` if any coordinate moves by more than `tol`.
pub fn snap_point(x: &[f64], max_den: i64, tol: f64) -> Option<Vec<BigRational>> {
    x.iter()
        .map(|&v| {
            let q = snap(v, max_den)?;
            let back = crate::poly::rat_to_f64(&q);
            ((back - v).abs() <= tol).then_some(q)
        })
        .collect()
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_f64(x).unwrap_or_else(BigRational::zero)
}

/// Rounds `x` to the nearest multiple of `1/den`.
pub fn dyadic(x: f64, den: i64) -> BigRational {
    BigRational::new(BigInt::from((x * den as f64).round() as i64), BigInt::from(den))
}

pub fn to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `(a, b, ...)` with exact entries.
pub fn point_to_string(p: &[BigRational]) -> String {
    let parts: Vec<String> = p.iter().map(to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn serialize_opt_point<S: Serializer>(
    v: &Option<Vec<BigRational>>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    match v {
        None => ser.serialize_none(),
        Some(p) => ser.collect_seq(p.iter().map(to_string)),
    }
}

pub fn serialize_point<S: Serializer>(v: &[BigRational], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(v.iter().map(to_string))
}
