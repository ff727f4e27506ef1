//! Deciding whether a system of quasi-homogeneous polynomials vanishes only
//! at the origin.
//!
//! If every `g_i` is `s`-quasi-homogeneous, the common zero set is invariant
//! under `x -> t^s x`, and each orbit through a non-zero point crosses the
//! Euclidean unit sphere. So "only the origin" is equivalent to "no common
//! zero on the unit sphere", which we decide by interval branch-and-bound
//! over `[-1, 1]^n`: boxes meeting the shell `1 - eps <= |x|^2 <= 1 + eps`
//! are kept, a box is discarded once some `g_i` provably has no zero in it,
//! and small surviving boxes seed a Gauss-Newton search for an explicit
//! witness on the sphere.

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::fpoly::FloatSystem;
use crate::interval::{IBox, IntervalPoly};
use crate::par;
use crate::poly::Polynomial;
use crate::quasihomog::{euler_check, higher_part, weighted_degree, Weight};
use crate::rational;
use crate::sequence::Rd;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertError {
    #[error("empty polynomial system")]
    EmptySystem,
    #[error("polynomial {index} is identically zero")]
    ZeroPolynomial { index: usize },
    #[error("polynomial {index} fails the Euler identity for weight {weight}: not quasi-homogeneous")]
    NotQuasiHomogeneous { index: usize, weight: Weight },
    #[error("polynomial {index} has {found} variables, weight has {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("polynomial takes a negative value near {point:?}")]
    NegativeValue { point: Vec<f64> },
    #[error("gradient component {0} vanishes identically and no zero lies on that axis")]
    DegenerateDirection(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertConfig {
    /// Half-thickness of the squared-norm shell around the unit sphere.
    pub shell_eps: f64,
    /// Maximum number of bisections along any branch.
    pub max_depth: u32,
    /// Bound on `|g_i(witness)|`.
    pub residual_tol: f64,
    /// Bound on `| |witness| - 1 |`.
    pub sphere_tol: f64,
    /// Hard cap on boxes examined before giving up as inconclusive.
    pub max_boxes: usize,
    /// Witness search starts once boxes are at most this wide.
    pub newton_width: f64,
    /// Largest denominator tried when snapping witnesses to rationals.
    pub snap_max_den: i64,
}

impl Default for CertConfig {
    fn default() -> Self {
        CertConfig {
            shell_eps: 1.0 / 16.0,
            max_depth: 24,
            residual_tol: 1e-10,
            sphere_tol: 1e-8,
            max_boxes: 4_000_000,
            newton_width: 0.25,
            snap_max_den: 1000,
        }
    }
}

/// A non-zero common zero. `point` lies on the unit sphere; `exact`, when
/// present, is a rational point on the same scaling orbit at which every
/// polynomial evaluates to exactly zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub point: Vec<f64>,
    pub residuals: Vec<f64>,
    #[serde(serialize_with = "rational::serialize_opt_point")]
    pub exact: Option<Vec<BigRational>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum CertOutcome {
    OnlyOrigin { max_depth_used: u32, box_count: usize },
    NontrivialZero { witness: Witness },
    Inconclusive { depth: u32, box_count: usize, deepest: IBox },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OutcomeClass {
    OnlyOrigin,
    NontrivialZero,
    Inconclusive,
}

impl CertOutcome {
    pub fn class(&self) -> OutcomeClass {
        match self {
            CertOutcome::OnlyOrigin { .. } => OutcomeClass::OnlyOrigin,
            CertOutcome::NontrivialZero { .. } => OutcomeClass::NontrivialZero,
            CertOutcome::Inconclusive { .. } => OutcomeClass::Inconclusive,
        }
    }

    pub fn is_only_origin(&self) -> bool {
        matches!(self, CertOutcome::OnlyOrigin { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CertOutcome::NontrivialZero { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Checks shape, non-zeroness and quasi-homogeneity; returns the degrees.
pub fn validate_system(g: &[Polynomial], s: &Weight) -> Result<Vec<u64>, CertError> {
    if g.is_empty() {
        return Err(CertError::EmptySystem);
    }
    g.iter()
        .enumerate()
        .map(|(index, p)| {
            if p.n() != s.len() {
                return Err(CertError::DimensionMismatch {
                    index,
                    expected: s.len(),
                    found: p.n(),
                });
            }
            let d = weighted_degree(p, s).map_err(|_| CertError::ZeroPolynomial { index })?;
            if !euler_check(p, s, d) {
                return Err(CertError::NotQuasiHomogeneous {
                    index,
                    weight: s.clone(),
                });
            }
            Ok(d)
        })
        .collect()
}

/// Decides whether the `s`-quasi-homogeneous system `g` has a common real
/// zero other than the origin.
pub fn only_origin(g: &[Polynomial], s: &Weight, cfg: &CertConfig) -> Result<CertOutcome, CertError> {
    validate_system(g, s)?;
    Ok(search(g, s, cfg))
}

fn search(g: &[Polynomial], s: &Weight, cfg: &CertConfig) -> CertOutcome {
    let n = s.len();
    let ipolys: Vec<IntervalPoly> = g.iter().map(IntervalPoly::new).collect();
    let fsys = FloatSystem::new(g);
    let in_shell = |b: &IBox| {
        let ns = b.norm_sq();
        ns.lo <= 1.0 + cfg.shell_eps && ns.hi >= 1.0 - cfg.shell_eps
    };
    let excluded = |b: &IBox| ipolys.iter().any(|p| !p.eval(b).contains_zero());

    let mut level = vec![IBox::cube(n, 1.0)];
    let mut box_count = 0usize;
    let mut depth = 0u32;
    loop {
        box_count += level.len();
        let survivors = par::filter(level, |b| in_shell(b) && !excluded(b));
        if survivors.is_empty() {
            return CertOutcome::OnlyOrigin {
                max_depth_used: depth,
                box_count,
            };
        }
        let width = survivors[0].max_width();
        if (depth as usize).is_multiple_of(n) && width <= cfg.newton_width {
            let found = par::find_map_first(&survivors, |b| {
                sphere_newton(&fsys, &b.center(), cfg).map(|p| make_witness(g, s, &fsys, p, cfg))
            });
            if let Some(witness) = found {
                return CertOutcome::NontrivialZero { witness };
            }
        }
        if depth >= cfg.max_depth || box_count + 2 * survivors.len() > cfg.max_boxes {
            return CertOutcome::Inconclusive {
                depth,
                box_count,
                deepest: survivors[0].clone(),
            };
        }
        level = survivors.iter().flat_map(|b| b.bisect()).collect();
        depth += 1;
    }
}

/// Damped Gauss-Newton for `g = 0` on the unit sphere: minimum-norm steps in
/// the tangent space followed by renormalization.
fn sphere_newton(sys: &FloatSystem, start: &[f64], cfg: &CertConfig) -> Option<Vec<f64>> {
    let n = start.len();
    let unit = |v: DVector<f64>| -> Option<DVector<f64>> {
        let norm = v.norm();
        (norm.is_finite() && norm > 0.0).then(|| v / norm)
    };
    let mut x = unit(DVector::from_column_slice(start))?;
    let mut r = sys.eval(x.as_slice());
    // keep iterating past acceptance: at multiple zeros the extra accuracy
    // is what makes exact snapping possible
    for _ in 0..100 {
        let proj = DMatrix::identity(n, n) - &x * x.transpose();
        let jt = sys.jacobian(x.as_slice()) * proj;
        let step = jt.svd(true, true).solve(&(-&r), 1e-14).ok()?;
        let phi0 = r.norm_squared();
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..40 {
            let Some(cand) = unit(&x + &step * t) else { break };
            let rc = sys.eval(cand.as_slice());
            if rc.norm_squared() < phi0 {
                x = cand;
                r = rc;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved || step.norm() * t < 1e-17 {
            break;
        }
    }
    accept(sys, x.as_slice(), cfg)
}

/// Projects to the sphere and checks the residual tolerances.
fn accept(sys: &FloatSystem, x: &[f64], cfg: &CertConfig) -> Option<Vec<f64>> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > cfg.sphere_tol.max(1e-6) {
        return None;
    }
    let p: Vec<f64> = x.iter().map(|v| v / norm).collect();
    let ok = sys.polys.iter().all(|g| g.eval(&p).abs() <= cfg.residual_tol);
    ok.then_some(p)
}

fn make_witness(
    g: &[Polynomial],
    s: &Weight,
    sys: &FloatSystem,
    point: Vec<f64>,
    cfg: &CertConfig,
) -> Witness {
    let residuals = sys.polys.iter().map(|p| p.eval(&point).abs()).collect();
    let exact = exact_on_orbit(g, s, &point, cfg.snap_max_den);
    Witness {
        point,
        residuals,
        exact,
    }
}

/// Tries small-denominator rational points on the orbit `t^s x`, also with
/// small coordinates flushed to zero, and keeps the one with the smallest
/// denominators.
pub fn exact_on_orbit(g: &[Polynomial], s: &Weight, x: &[f64], max_den: i64) -> Option<Vec<BigRational>> {
    let big = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut bases = vec![x.to_vec()];
    // multiple zeros are only located roughly
    for tau in [1e-3, 0.05, 0.2] {
        let flushed: Vec<f64> = x.iter().map(|&v| if v.abs() < tau * big { 0.0 } else { v }).collect();
        if !bases.contains(&flushed) {
            bases.push(flushed);
        }
    }
    let mut candidates = Vec::new();
    for base in &bases {
        candidates.push(base.clone());
        for (k, &xk) in base.iter().enumerate() {
            if xk.abs() < 1e-6 {
                continue;
            }
            let t = xk.abs().powf(-1.0 / s.as_slice()[k] as f64);
            candidates.push(
                base.iter()
                    .zip(s.as_slice())
                    .map(|(&v, &w)| v * t.powi(w as i32))
                    .collect(),
            );
        }
    }
    candidates
        .into_iter()
        .filter_map(|c| {
            let q = rational::snap_point(&c, max_den, 1e-4)?;
            if q.iter().all(Zero::is_zero) {
                return None;
            }
            g.iter()
                .all(|p| p.evaluate(&q).map(|v| v.is_zero()).unwrap_or(false))
                .then_some(q)
        })
        .min_by_key(|q| q.iter().map(|v| v.denom().clone()).max())
}

/// Heuristic non-negativity check at quasi-random sphere points.
fn check_nonneg(p: &Polynomial) -> Result<(), CertError> {
    let n = p.n();
    let fp = crate::fpoly::FloatPoly::new(p);
    let seq = Rd::new(n, 0x5eed);
    for k in 0..256 {
        let x = seq.in_box(k, 1.0);
        let v = fp.eval(&x);
        if v < -1e-9 * fp.magnitude(&x).max(1.0) {
            return Err(CertError::NegativeValue { point: x });
        }
    }
    Ok(())
}

/// Certifies that the non-negative quasi-homogeneous `p` vanishes only at
/// the origin, i.e. that its minimum on the unit sphere is positive.
pub fn unique_zero_nonneg(p: &Polynomial, s: &Weight, cfg: &CertConfig) -> Result<CertOutcome, CertError> {
    validate_system(std::slice::from_ref(p), s)?;
    check_nonneg(p)?;
    Ok(search(std::slice::from_ref(p), s, cfg))
}

/// Runs [`only_origin`] on the gradient `(d_1 p, ..., d_n p)`.
///
/// For non-negative quasi-homogeneous `p` of positive degree the two
/// questions coincide: a zero of `p` off the origin is a minimum and so a
/// critical point, and at a critical point `a` the Euler identity gives
/// `deg(p) * p(a) = sum s_i a_i d_i p(a) = 0`.
pub fn gradient_only_origin(p: &Polynomial, s: &Weight, cfg: &CertConfig) -> Result<CertOutcome, CertError> {
    validate_system(std::slice::from_ref(p), s)?;
    check_nonneg(p)?;
    let n = p.n();
    let grads: Vec<Polynomial> = (0..n).map(|j| p.partial(j).expect("index in range")).collect();
    if let Some(j) = grads.iter().position(Polynomial::is_zero) {
        // p does not depend on x_j; test the axis point e_j directly
        let e: Vec<BigRational> = (0..n)
            .map(|i| if i == j { BigRational::from_integer(1.into()) } else { BigRational::zero() })
            .collect();
        let all_zero = grads
            .iter()
            .all(|g| g.evaluate(&e).map(|v| v.is_zero()).unwrap_or(false));
        if !all_zero {
            return Err(CertError::DegenerateDirection(j));
        }
        let point: Vec<f64> = e.iter().map(crate::poly::rat_to_f64).collect();
        return Ok(CertOutcome::NontrivialZero {
            witness: Witness {
                residuals: vec![0.0; n],
                point,
                exact: Some(e),
            },
        });
    }
    Ok(search(&grads, s, cfg))
}

/// `H -> infinity` as `|x| -> infinity` follows when the higher `s`-part of
/// `H` vanishes only at the origin.
pub fn properness_certificate(
    h: &Polynomial,
    s: &Weight,
    cfg: &CertConfig,
) -> Result<(bool, CertOutcome), CertError> {
    let top = higher_part(h, s).map_err(|_| CertError::ZeroPolynomial { index: 0 })?;
    let out = unique_zero_nonneg(&top, s, cfg)?;
    Ok((out.is_only_origin(), out))
}

/// Result of [`brute_force_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    /// A refined sphere point with all `|g_i| <= tol`, if one was reached.
    pub witness: Option<Vec<f64>>,
}

/// Test oracle: scans normalized lattice directions `k / |k|` with
/// `k in {-res..res}^n \ {0}`, then refines the most promising candidates
/// with a Levenberg-Marquardt iteration independent of the certifier's.
pub fn brute_force_scan(g: &[Polynomial], resolution: u32) -> ScanResult {
    let n = g.first().map(Polynomial::n).unwrap_or(1);
    let sys = FloatSystem::new(g);
    let r = resolution as i64;
    let side = (2 * r + 1) as usize;
    let total = side.pow(n as u32);
    let mut scored: Vec<(f64, Vec<f64>)> = par::map_range(total, |idx| {
        let mut k = Vec::with_capacity(n);
        let mut rem = idx;
        for _ in 0..n {
            k.push((rem % side) as i64 - r);
            rem /= side;
        }
        let norm = (k.iter().map(|v| (v * v) as f64).sum::<f64>()).sqrt();
        if norm == 0.0 {
            return None;
        }
        let x: Vec<f64> = k.iter().map(|&v| v as f64 / norm).collect();
        let val = sys.eval(&x).norm_squared();
        Some((val, x))
    })
    .into_iter()
    .flatten()
    .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let witness = scored
        .iter()
        .take(8)
        .find_map(|(_, x)| oracle_refine(g, x, 1e-9));
    let (best_value, best_point) = scored
        .into_iter()
        .next()
        .unwrap_or((f64::INFINITY, vec![0.0; n]));
    ScanResult {
        best_point,
        best_value,
        witness,
    }
}

/// Levenberg-Marquardt on `g(x) = 0, |x|^2 = 1` from `start`; returns the
/// sphere point if every `|g_i| <= tol` there.
pub fn oracle_refine(g: &[Polynomial], start: &[f64], tol: f64) -> Option<Vec<f64>> {
    let sys = FloatSystem::new(g);
    let n = start.len();
    let norm = start.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let mut x = DVector::from_iterator(n, start.iter().map(|v| v / norm));
    let res = |x: &DVector<f64>| -> DVector<f64> {
        let mut r = sys.eval(x.as_slice()).data.as_vec().clone();
        r.push(x.norm_squared() - 1.0);
        DVector::from_vec(r)
    };
    let mut lambda = 1e-3;
    for _ in 0..400 {
        let r = res(&x);
        let mut j: DMatrix<f64> = sys.jacobian(x.as_slice()).insert_row(g.len(), 0.0);
        for c in 0..n {
            j[(g.len(), c)] = 2.0 * x[c];
        }
        let jt = j.transpose();
        let a = &jt * &j + DMatrix::identity(n, n) * lambda;
        let Some(step) = a.lu().solve(&(-(&jt * &r))) else {
            lambda *= 10.0;
            continue;
        };
        let cand = &x + &step;
        if res(&cand).norm_squared() < r.norm_squared() {
            x = cand;
            lambda = (lambda * 0.3).max(1e-15);
        } else {
            lambda *= 4.0;
            if lambda > 1e12 {
                break;
            }
        }
    }
    let p = &x / x.norm();
    sys.polys
        .iter()
        .all(|q| q.eval(p.as_slice()).abs() <= tol)
        .then(|| p.as_slice().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }
    fn p(src: &str) -> Polynomial {
        parse_expr(src, &xy()).unwrap()
    }
    fn w(v: &[u64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }
    fn cfg() -> CertConfig {
        CertConfig::default()
    }

    #[test]
    fn cubic_pair_vanishes_only_at_origin() {
        let out = only_origin(&[p("x^3 + y^3"), p("y")], &w(&[1, 1]), &cfg()).unwrap();
        assert!(out.is_only_origin(), "{out:?}");
        let lin = only_origin(&[p("x"), p("y")], &w(&[1, 1]), &cfg()).unwrap();
        assert!(lin.is_only_origin());
    }

    #[test]
    fn squared_cubic_has_antidiagonal_zero() {
        let out = only_origin(&[p("1/2*(x^3 + y^3)^2")], &w(&[1, 1]), &cfg()).unwrap();
        let wit = out.witness().expect("nontrivial zero");
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((wit.point[0].abs() - h).abs() < 1e-4);
        assert!((wit.point[0] + wit.point[1]).abs() < 1e-4);
        let norm = (wit.point[0].powi(2) + wit.point[1].powi(2)).sqrt();
        assert!((norm - 1.0).abs() <= 1e-8);
        assert!(wit.residuals.iter().all(|r| *r <= 1e-10));
        let exact = wit.exact.as_ref().expect("snaps to (1,-1) or (-1,1)");
        assert_eq!(&exact[0], &-exact[1].clone());
    }

    #[test]
    fn nonneg_examples() {
        let sq = unique_zero_nonneg(&p("1/2*(x^3+y^3)^2"), &w(&[1, 1]), &cfg()).unwrap();
        assert_eq!(sq.class(), OutcomeClass::NontrivialZero);
        let y6 = unique_zero_nonneg(&p("1/2*y^6"), &w(&[1, 2]), &cfg()).unwrap();
        let wit = y6.witness().unwrap();
        assert!(wit.point[1].abs() < 0.05 && (wit.point[0].abs() - 1.0).abs() < 1e-3);
        let e = wit.exact.as_ref().expect("axis point");
        assert!(e[1].is_zero() && !e[0].is_zero());
        let circ = unique_zero_nonneg(&p("x^2 + y^2"), &w(&[1, 1]), &cfg()).unwrap();
        assert!(circ.is_only_origin());
        assert!(matches!(
            unique_zero_nonneg(&p("x^2 - y^2"), &w(&[1, 1]), &cfg()),
            Err(CertError::NegativeValue { .. })
        ));
    }

    #[test]
    fn gradient_examples() {
        let c = gradient_only_origin(&p("x^2 + y^2"), &w(&[1, 1]), &cfg()).unwrap();
        assert!(c.is_only_origin());
        let sq = gradient_only_origin(&p("1/2*(x^3+y^3)^2"), &w(&[1, 1]), &cfg()).unwrap();
        assert_eq!(sq.class(), OutcomeClass::NontrivialZero);
        let axis = gradient_only_origin(&p("1/2*y^6"), &w(&[1, 2]), &cfg()).unwrap();
        assert_eq!(axis.witness().unwrap().exact, Some(vec![crate::poly::int(1), crate::poly::int(0)]));
    }

    #[test]
    fn input_validation() {
        assert_eq!(only_origin(&[], &w(&[1, 1]), &cfg()), Err(CertError::EmptySystem));
        assert!(matches!(
            only_origin(&[p("x + x^2")], &w(&[1, 1]), &cfg()),
            Err(CertError::NotQuasiHomogeneous { index: 0, .. })
        ));
        assert!(matches!(
            only_origin(&[p("x"), Polynomial::zero(2)], &w(&[1, 1]), &cfg()),
            Err(CertError::ZeroPolynomial { index: 1 })
        ));
    }

    #[test]
    fn weighted_system() {
        // x^2 + y is (1,2)-qh of degree 2; together with y it only vanishes at 0
        let out = only_origin(&[p("x^2 + y"), p("y")], &w(&[1, 2]), &cfg()).unwrap();
        assert!(out.is_only_origin());
        // x^2 - y vanishes on a parabola
        let out = only_origin(&[p("x^2 - y")], &w(&[1, 2]), &cfg()).unwrap();
        let wit = out.witness().unwrap();
        assert!((wit.point[0].powi(2) - wit.point[1]).abs() < 1e-9);
        assert!(wit.exact.is_some());
    }

    #[test]
    fn properness_examples() {
        let id = crate::poly::PolyMap::identity(2).h_norm();
        assert!(properness_certificate(&id, &w(&[1, 1]), &cfg()).unwrap().0);
        let h = crate::poly::PolyMap::new(vec![p("x^3 + y^3 + x"), p("y")]).unwrap().h_norm();
        for s in [[1, 1], [1, 2], [2, 1]] {
            assert!(!properness_certificate(&h, &w(&s), &cfg()).unwrap().0);
        }
        let q = p("(x^2 + y^2)^2 + x^2");
        assert!(properness_certificate(&q, &w(&[1, 1]), &cfg()).unwrap().0);
    }

    #[test]
    fn oracle_examples() {
        let none = brute_force_scan(&[p("x^3 + y^3"), p("y")], 12);
        assert!(none.witness.is_none());
        assert!(none.best_value > 1e-3);
        let some = brute_force_scan(&[p("(x^3 + y^3)^2")], 12);
        let wit = some.witness.expect("zero on y = -x");
        assert!((wit[0] + wit[1]).abs() < 1e-3);
        let one = brute_force_scan(&[parse_expr("x", &["x".to_string()]).unwrap()], 5);
        assert!(one.witness.is_none());
    }

    #[test]
    fn deeper_search_never_flips_a_decided_outcome() {
        let sys = [p("x^2 - 3*y^2")];
        let mut last = None;
        for depth in [8, 12, 16, 24] {
            let c = CertConfig { max_depth: depth, ..cfg() };
            let out = only_origin(&sys, &w(&[1, 1]), &c).unwrap().class();
            if let Some(prev) = last {
                if prev != OutcomeClass::Inconclusive {
                    assert_eq!(prev, out);
                }
            }
            last = Some(out);
        }
        assert_eq!(last, Some(OutcomeClass::NontrivialZero));
    }
}
