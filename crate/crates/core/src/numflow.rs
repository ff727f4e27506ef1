//! Floating-point dynamics of `F` and of the field `Y = -grad H`,
//! `H = |F|^2 / 2`.
//!
//! The zeros of `F` are exactly the singular points of `Y` when `det DF`
//! does not vanish, and at such a point `DY = -DF^T DF`, so its index is
//! `sign det DY = (-1)^n`. Along the flow of `Y`, `dH/dt = -|Y|^2 <= 0`.

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::fpoly::{FloatPoly, FloatSystem};
use crate::par;
use crate::poly::{gradient_field, rat_to_f64, PolyMap};
use crate::rational;
use crate::sequence::Rd;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("|F(q)| = {residual:e} exceeds the tolerance {tol:e}")]
    NotAZero { residual: f64, tol: f64 },
    #[error("Jacobian nearly singular at q (det DF = {det:e})")]
    NearSingular { det: f64 },
    #[error("index check needs a properness certificate")]
    NotProper,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonConfig {
    pub residual_tol: f64,
    pub max_iter: usize,
    pub max_halvings: usize,
    pub dedup_radius: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            residual_tol: 1e-10,
            max_iter: 100,
            max_halvings: 40,
            dedup_radius: 1e-6,
        }
    }
}

/// `F`, `Y` and `H` compiled for float evaluation.
#[derive(Debug, Clone)]
pub struct NumericMap {
    pub f: FloatSystem,
    pub y: FloatSystem,
    pub h: FloatPoly,
    n: usize,
}

impl NumericMap {
    pub fn new(f: &PolyMap) -> Self {
        let h = f.h_norm();
        NumericMap {
            f: FloatSystem::from_map(f),
            y: FloatSystem::from_map(&gradient_field(&h)),
            h: FloatPoly::new(&h),
            n: f.n(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn residual(&self, x: &[f64]) -> f64 {
        self.f.eval(x).norm()
    }
}

/// Damped Newton on `F(x) = 0`: backtracking on `|F|^2`, halving the step.
pub fn newton(map: &NumericMap, start: &[f64], cfg: &NewtonConfig) -> Option<Vec<f64>> {
    let mut x = DVector::from_column_slice(start);
    let mut r = map.f.eval(x.as_slice());
    let mut polish = 0;
    for _ in 0..cfg.max_iter {
        if r.norm() <= cfg.residual_tol {
            polish += 1;
            if polish > 2 {
                break;
            }
        }
        let j = map.f.jacobian(x.as_slice());
        let step = solve(j, -&r)?;
        let phi0 = r.norm_squared();
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..=cfg.max_halvings {
            let cand = &x + &step * t;
            let rc = map.f.eval(cand.as_slice());
            if rc.norm_squared() < phi0 || (rc.norm_squared() == 0.0 && phi0 == 0.0) {
                x = cand;
                r = rc;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
        if !x.iter().all(|v| v.is_finite()) {
            return None;
        }
    }
    (r.norm() <= cfg.residual_tol).then(|| x.as_slice().to_vec())
}

fn solve(j: DMatrix<f64>, rhs: DVector<f64>) -> Option<DVector<f64>> {
    if let Some(s) = j.clone().lu().solve(&rhs) {
        if s.iter().all(|v| v.is_finite()) {
            return Some(s);
        }
    }
    j.svd(true, true).solve(&rhs, 1e-14).ok()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoundZero {
    pub point: Vec<f64>,
    pub residual: f64,
    /// `sign det DY(q)`; `None` when `DF(q)` is numerically singular.
    pub index: Option<i8>,
    /// Start that first reached this zero.
    pub start: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroReport {
    pub zeros: Vec<FoundZero>,
    pub starts: usize,
    pub box_radius: f64,
    pub dedup_radius: f64,
    pub seed: u64,
}

/// Multi-start damped Newton from quasi-random points of `[-r, r]^n`.
pub fn find_zeros(f: &PolyMap, starts: usize, r: f64, seed: u64, cfg: &NewtonConfig) -> ZeroReport {
    let map = NumericMap::new(f);
    find_zeros_numeric(&map, starts, r, seed, cfg)
}

pub fn find_zeros_numeric(
    map: &NumericMap,
    starts: usize,
    r: f64,
    seed: u64,
    cfg: &NewtonConfig,
) -> ZeroReport {
    let seq = Rd::new(map.n(), seed);
    let hits = par::map_range(starts, |k| newton(map, &seq.in_box(k, r), cfg));
    let mut zeros: Vec<FoundZero> = Vec::new();
    for (start, hit) in hits.into_iter().enumerate() {
        let Some(point) = hit else { continue };
        let dup = zeros.iter().any(|z| dist(&z.point, &point) <= cfg.dedup_radius);
        if dup {
            continue;
        }
        zeros.push(FoundZero {
            residual: map.residual(&point),
            index: index_numeric(map, &point, cfg.residual_tol).ok(),
            point,
            start,
        });
    }
    ZeroReport {
        zeros,
        starts,
        box_radius: r,
        dedup_radius: cfg.dedup_radius,
        seed,
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Index of `Y` at a zero `q` of `F`, as `sign det DY(q)`.
pub fn index_at(f: &PolyMap, q: &[f64], tol: f64) -> Result<i8, NumError> {
    index_numeric(&NumericMap::new(f), q, tol)
}

fn index_numeric(map: &NumericMap, q: &[f64], tol: f64) -> Result<i8, NumError> {
    let residual = map.residual(q);
    if residual > tol {
        return Err(NumError::NotAZero { residual, tol });
    }
    let det_f = map.f.jacobian(q).determinant();
    if det_f.abs() < 1e-10 {
        return Err(NumError::NearSingular { det: det_f });
    }
    let det_y = map.y.jacobian(q).determinant();
    Ok(if det_y > 0.0 { 1 } else { -1 })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowConfig {
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    pub max_steps: usize,
    /// Local error tolerance per step (Heun against Euler).
    pub local_tol: f64,
    /// The flow is stopped once some coordinate exceeds this magnitude.
    pub box_radius: f64,
    pub residual_tol: f64,
    /// Allowed increase of `H` per accepted step.
    pub monotone_slack: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            initial_step: 1e-2,
            max_step: 0.5,
            min_step: 1e-14,
            max_steps: 200_000,
            local_tol: 1e-6,
            box_radius: 1e6,
            residual_tol: 1e-10,
            monotone_slack: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FlowStatus {
    ConvergedToZeroOfF,
    LeftBox,
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowSample {
    pub t: f64,
    pub point: Vec<f64>,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<FlowSample>,
    pub status: FlowStatus,
}

impl Trajectory {
    /// Whether `H` never rises by more than `slack` between samples.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.samples.windows(2).all(|w| w[1].h <= w[0].h + slack)
    }

    pub fn last(&self) -> &FlowSample {
        self.samples.last().expect("trajectory has a start sample")
    }
}

/// Integrates `x' = Y(x)` from `p` with Heun's method and step control.
/// Steps that raise `H` are rejected like steps that miss the error bound.
pub fn flow_descent(f: &PolyMap, p: &[f64], cfg: &FlowConfig) -> Trajectory {
    flow_numeric(&NumericMap::new(f), p, cfg)
}

pub fn flow_numeric(map: &NumericMap, p: &[f64], cfg: &FlowConfig) -> Trajectory {
    let mut x = DVector::from_column_slice(p);
    let mut t = 0.0;
    let mut hval = map.h.eval(p);
    let mut samples = vec![FlowSample {
        t,
        point: p.to_vec(),
        h: hval,
    }];
    let mut step = cfg.initial_step;
    let mut accepted = 0;
    let status = loop {
        if map.residual(x.as_slice()) <= cfg.residual_tol {
            break FlowStatus::ConvergedToZeroOfF;
        }
        if x.iter().any(|v| !v.is_finite() || v.abs() > cfg.box_radius) {
            break FlowStatus::LeftBox;
        }
        if accepted >= cfg.max_steps || step < cfg.min_step {
            break FlowStatus::StepLimit;
        }
        let k1 = map.y.eval(x.as_slice());
        let euler = &x + &k1 * step;
        let k2 = map.y.eval(euler.as_slice());
        let heun = &x + (&k1 + &k2) * (0.5 * step);
        let err = (&heun - &euler).norm();
        let scale = cfg.local_tol * (1.0 + x.norm());
        let h_new = map.h.eval(heun.as_slice());
        if err <= scale && h_new <= hval + cfg.monotone_slack && h_new.is_finite() {
            x = heun;
            t += step;
            hval = h_new;
            samples.push(FlowSample {
                t,
                point: x.as_slice().to_vec(),
                h: hval,
            });
            accepted += 1;
            let grow = if err > 0.0 { (0.9 * (scale / err).sqrt()).min(2.0) } else { 2.0 };
            step = (step * grow.max(1.0)).min(cfg.max_step);
        } else {
            step *= 0.5;
        }
    };
    Trajectory { samples, status }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessConfig {
    pub probes: usize,
    /// Probes beyond the `2n` axis points are drawn from `[-r, r]^n`.
    pub probe_radius: f64,
    pub starts_per_probe: usize,
    pub search_radius: f64,
    pub seed: u64,
    pub snap_max_den: i64,
    pub newton: NewtonConfig,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            probes: 50,
            probe_radius: 2.0,
            starts_per_probe: 32,
            search_radius: 5.0,
            seed: 0,
            snap_max_den: 1000,
            newton: NewtonConfig::default(),
        }
    }
}

/// Two distinct points with the same image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InjectivityWitness {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// `|F(a) - F(b)|` in floats.
    pub gap: f64,
    /// Rational `(a, b)` with `F(a) = F(b)` exactly, when snapping works.
    #[serde(serialize_with = "serialize_exact_pair")]
    pub exact: Option<(Vec<BigRational>, Vec<BigRational>)>,
    pub probe: usize,
}

fn serialize_exact_pair<S: serde::Serializer>(
    v: &Option<(Vec<BigRational>, Vec<BigRational>)>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    match v {
        None => ser.serialize_none(),
        Some((a, b)) => {
            let mut seq = ser.serialize_seq(Some(2))?;
            seq.serialize_element(&a.iter().map(rational::to_string).collect::<Vec<_>>())?;
            seq.serialize_element(&b.iter().map(rational::to_string).collect::<Vec<_>>())?;
            seq.end()
        }
    }
}

/// The rational probe points: `+-e_i` first, then dyadic quasi-random points.
pub fn probe_points(n: usize, cfg: &WitnessConfig) -> Vec<Vec<BigRational>> {
    let mut out = Vec::with_capacity(cfg.probes);
    for i in 0..n {
        for sign in [1i64, -1] {
            out.push(
                (0..n)
                    .map(|j| crate::poly::int(if j == i { sign } else { 0 }))
                    .collect(),
            );
        }
    }
    let seq = Rd::new(n, cfg.seed ^ 0x9e37_79b9);
    let mut k = 0;
    while out.len() < cfg.probes {
        out.push(
            seq.in_box(k, cfg.probe_radius)
                .into_iter()
                .map(|v| rational::dyadic(v, 64))
                .collect(),
        );
        k += 1;
    }
    out.truncate(cfg.probes);
    out
}

/// Looks for `a != b` with `F(a) = F(b)` by finding a second zero of the
/// translated map `z -> F(z + b) - F(b)`, whose zero at `z = 0` is known.
pub fn injectivity_witness(f: &PolyMap, cfg: &WitnessConfig) -> Option<InjectivityWitness> {
    let probes = probe_points(f.n(), cfg);
    let indexed: Vec<(usize, &Vec<BigRational>)> = probes.iter().enumerate().collect();
    par::find_map_first(&indexed, |&(k, b)| probe_once(f, k, b, cfg))
}

fn probe_once(f: &PolyMap, k: usize, b: &[BigRational], cfg: &WitnessConfig) -> Option<InjectivityWitness> {
    let shifted = f.translated(b).ok()?;
    let map = NumericMap::new(&shifted);
    let report = find_zeros_numeric(
        &map,
        cfg.starts_per_probe,
        cfg.search_radius,
        cfg.seed.wrapping_add(k as u64),
        &cfg.newton,
    );
    let bf: Vec<f64> = b.iter().map(rat_to_f64).collect();
    let fb = f.evaluate(b).ok()?;
    let fbf: Vec<f64> = fb.iter().map(rat_to_f64).collect();
    report.zeros.iter().find_map(|z| {
        if z.point.iter().map(|v| v * v).sum::<f64>().sqrt() <= 1e3 * cfg.newton.dedup_radius {
            return None;
        }
        let a: Vec<f64> = z.point.iter().zip(&bf).map(|(zi, bi)| zi + bi).collect();
        let fa = f.eval_f64(&a);
        let gap = dist(&fa, &fbf);
        let exact = rational::snap_point(&a, cfg.snap_max_den, 1e-6).and_then(|aq| {
            (aq.as_slice() != b && f.evaluate(&aq).ok()? == fb).then(|| (aq, b.to_vec()))
        });
        if exact.is_none() && gap > 2.0 * cfg.newton.residual_tol * (1.0 + fbf.iter().map(|v| v.abs()).sum::<f64>()) {
            return None;
        }
        Some(InjectivityWitness {
            a,
            b: bf.clone(),
            gap,
            exact,
            probe: k,
        })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexSumReport {
    pub zeros: usize,
    pub indices: Vec<Option<i8>>,
    pub expected: i8,
    pub ok: bool,
    pub diagnostic: Option<String>,
}

/// With a properness certificate the field `Y` has exactly one singular
/// point, of index `(-1)^n`; checks the zero report against that.
pub fn index_sum_check(f: &PolyMap, report: &ZeroReport, proper: bool) -> Result<IndexSumReport, NumError> {
    if !proper {
        return Err(NumError::NotProper);
    }
    let expected: i8 = if f.n().is_multiple_of(2) { 1 } else { -1 };
    let indices: Vec<Option<i8>> = report.zeros.iter().map(|z| z.index).collect();
    let diagnostic = if report.zeros.len() != 1 {
        Some(format!(
            "found {} zeros; a proper map with non-vanishing Jacobian has exactly one",
            report.zeros.len()
        ))
    } else if indices[0] != Some(expected) {
        Some(format!("index {:?} differs from (-1)^n = {expected}", indices[0]))
    } else {
        None
    };
    Ok(IndexSumReport {
        zeros: report.zeros.len(),
        ok: diagnostic.is_none(),
        indices,
        expected,
        diagnostic,
    })
}
