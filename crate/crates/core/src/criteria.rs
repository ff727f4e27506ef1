//! Sufficient criteria for global injectivity and the verdict built from them.
//!
//! Each criterion asks a quasi-homogeneous system to vanish only at the
//! origin:
//!
//! * `MapHigherPart`: the higher `s`-part `F_s` of the map.
//! * `HNormHigherPart`: the higher `s`-part `H_s` of `H = |F|^2 / 2`.
//! * `FieldHigherPart`: the higher `s`-part of the field `Y = -grad H`.
//!
//! All three assume `F(0) = 0` and `det DF != 0` everywhere. A success of the
//! field criterion at `s` carries over to the map criterion at a derived
//! weight `s~`, which [`derive_tilde_and_verify`] checks.

use nalgebra::DVector;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::fpoly::FloatPoly;
use crate::interval::{IBox, IntervalPoly};
use crate::numflow::{self, IndexSumReport, InjectivityWitness, NewtonConfig, WitnessConfig};
use crate::par;
use crate::poly::{rat, rat_to_f64, PolyMap, Polynomial};
use crate::quasihomog::{
    block_structure_from_degrees, higher_part, higher_part_field, higher_part_map, tilde_weights,
    BlockStructure, TildeWeights, Weight,
};
use crate::rational;
use crate::sequence::Rd;
use crate::zero_cert::{
    gradient_only_origin, only_origin, properness_certificate, unique_zero_nonneg, CertConfig,
    CertOutcome, OutcomeClass,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriteriaError {
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("derived weight {weight}: map criterion {}", if *.inconclusive { "inconclusive" } else { "failed" })]
    TildeNotVerified { weight: Weight, inconclusive: bool },
    #[error("0 <= H_s~ <= |F_s~|^2/2 fails at {point:?}")]
    SandwichViolated { point: Vec<String> },
    #[error("weights_max must be at least 1")]
    EmptySearch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisConfig {
    pub cert: CertConfig,
    /// Largest weight entry tried (`S_max`).
    pub weights_max: u64,
    /// Half-width of the box on which `det DF != 0` is checked.
    pub box_radius: f64,
    pub jac_depth: u32,
    pub jac_max_boxes: usize,
    pub jac_starts: usize,
    pub seed: u64,
    pub witness: WitnessConfig,
    /// Starts for the zero search feeding the index check.
    pub zero_starts: usize,
    pub sandwich_points: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            cert: CertConfig::default(),
            weights_max: 4,
            box_radius: 10.0,
            jac_depth: 16,
            jac_max_boxes: 200_000,
            jac_starts: 64,
            seed: 0,
            witness: WitnessConfig::default(),
            zero_starts: 64,
            sandwich_points: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum JacStatus {
    /// `det DF` is a non-zero constant.
    VerifiedGlobally,
    /// Interval arithmetic excludes `det DF = 0` on `[-radius, radius]^n`.
    VerifiedOnBox { radius: f64, depth: u32 },
    ViolationFound {
        point: Vec<f64>,
        #[serde(serialize_with = "rational::serialize_opt_point")]
        exact: Option<Vec<BigRational>>,
    },
    Assumed { reason: String },
}

/// How far the hypotheses are established, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AssumptionStatus {
    Violated,
    Assumed,
    VerifiedOnBox,
    Verified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assumptions {
    pub f_zero_at_origin: bool,
    pub jac_nonvanishing: JacStatus,
}

impl Assumptions {
    pub fn status(&self) -> AssumptionStatus {
        match self.jac_nonvanishing {
            JacStatus::VerifiedGlobally => AssumptionStatus::Verified,
            JacStatus::VerifiedOnBox { .. } => AssumptionStatus::VerifiedOnBox,
            JacStatus::ViolationFound { .. } => AssumptionStatus::Violated,
            JacStatus::Assumed { .. } => AssumptionStatus::Assumed,
        }
    }

    /// Names the hypothesis a conflicting witness points at.
    pub fn weakest_hypothesis(&self) -> String {
        match &self.jac_nonvanishing {
            JacStatus::VerifiedGlobally => "none (det DF is a non-zero constant)".into(),
            JacStatus::VerifiedOnBox { radius, .. } => {
                format!("det DF != 0 outside [-{radius}, {radius}]^n (not verified there)")
            }
            JacStatus::ViolationFound { point, .. } => format!("det DF != 0 (vanishes at {point:?})"),
            JacStatus::Assumed { reason } => format!("det DF != 0 (assumed: {reason})"),
        }
    }
}

/// Checks `F(0) = 0` exactly and `det DF != 0` on `[-R, R]^n`.
pub fn check_assumptions(f: &PolyMap, cfg: &AnalysisConfig) -> Assumptions {
    let n = f.n();
    let zero = vec![BigRational::zero(); n];
    let f_zero_at_origin = f
        .evaluate(&zero)
        .map(|v| v.iter().all(Zero::is_zero))
        .unwrap_or(false);
    Assumptions {
        f_zero_at_origin,
        jac_nonvanishing: jacobian_status(&f.jacobian_det(), cfg),
    }
}

fn jacobian_status(det: &Polynomial, cfg: &AnalysisConfig) -> JacStatus {
    let n = det.n();
    if det.is_constant() {
        return if det.is_zero() {
            JacStatus::ViolationFound {
                point: vec![0.0; n],
                exact: Some(vec![BigRational::zero(); n]),
            }
        } else {
            JacStatus::VerifiedGlobally
        };
    }
    if let Some((point, exact)) = det_zero_search(det, cfg) {
        return JacStatus::ViolationFound { point, exact };
    }
    let ip = IntervalPoly::new(det);
    let mut level = vec![IBox::cube(n, cfg.box_radius)];
    let mut depth = 0;
    let mut count = 0;
    loop {
        count += level.len();
        let survivors = par::filter(level, |b| ip.eval(b).contains_zero());
        if survivors.is_empty() {
            return JacStatus::VerifiedOnBox {
                radius: cfg.box_radius,
                depth,
            };
        }
        if depth >= cfg.jac_depth || count + 2 * survivors.len() > cfg.jac_max_boxes {
            return JacStatus::Assumed {
                reason: format!(
                    "interval bounds do not exclude det DF = 0 near {:?} at depth {depth}",
                    survivors[0].center()
                ),
            };
        }
        level = survivors.iter().flat_map(IBox::bisect).collect();
        depth += 1;
    }
}

/// Newton on the scalar equation `det DF(x) = 0` (minimum-norm steps) from
/// quasi-random starts; hits are rounded to small rationals and checked.
fn det_zero_search(det: &Polynomial, cfg: &AnalysisConfig) -> Option<(Vec<f64>, Option<Vec<BigRational>>)> {
    let n = det.n();
    let fp = FloatPoly::new(det);
    let seq = Rd::new(n, cfg.seed ^ 0xd37);
    let hits = par::map_range(cfg.jac_starts, |k| {
        let mut x = DVector::from_vec(seq.in_box(k, cfg.box_radius));
        for _ in 0..60 {
            let d = fp.eval(x.as_slice());
            let g = DVector::from_vec(fp.gradient(x.as_slice()));
            let gg = g.norm_squared();
            if gg == 0.0 || !d.is_finite() {
                return None;
            }
            x -= g * (d / gg);
        }
        let scale = fp.magnitude(x.as_slice()).max(1.0);
        (fp.eval(x.as_slice()).abs() <= 1e-12 * scale).then(|| x.as_slice().to_vec())
    });
    let hits: Vec<Vec<f64>> = hits.into_iter().flatten().collect();
    for x in &hits {
        for den in 1..=16 {
            let q: Vec<BigRational> = x.iter().map(|&v| rat((v * den as f64).round() as i64, den)).collect();
            if det.evaluate(&q).map(|v| v.is_zero()).unwrap_or(false) {
                return Some((q.iter().map(rat_to_f64).collect(), Some(q)));
            }
        }
    }
    hits.into_iter().next().map(|x| (x, None))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CriterionId {
    MapHigherPart,
    HNormHigherPart,
    FieldHigherPart,
}

impl CriterionId {
    pub const ALL: [CriterionId; 3] = [
        CriterionId::MapHigherPart,
        CriterionId::HNormHigherPart,
        CriterionId::FieldHigherPart,
    ];
}

impl std::fmt::Display for CriterionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CriterionId::MapHigherPart => "MapHigherPart",
            CriterionId::HNormHigherPart => "HNormHigherPart",
            CriterionId::FieldHigherPart => "FieldHigherPart",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attempt {
    Cert(CertOutcome),
    /// The system is not a valid input, e.g. it has a zero component.
    Degenerate { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AttemptClass {
    Success,
    Failure,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub criterion: CriterionId,
    pub weight: Weight,
    pub outcome: Attempt,
    /// Set for the field criterion when the block structure is defined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<BlockStructure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tilde: Option<TildeWeights>,
    pub assumptions: AssumptionStatus,
}

impl CriterionResult {
    pub fn class(&self) -> AttemptClass {
        match &self.outcome {
            Attempt::Cert(c) => match c.class() {
                OutcomeClass::OnlyOrigin => AttemptClass::Success,
                OutcomeClass::NontrivialZero => AttemptClass::Failure,
                OutcomeClass::Inconclusive => AttemptClass::Inconclusive,
            },
            Attempt::Degenerate { .. } => AttemptClass::Failure,
        }
    }

    pub fn succeeded(&self) -> bool {
        self.class() == AttemptClass::Success
    }

    pub fn cert(&self) -> Option<&CertOutcome> {
        match &self.outcome {
            Attempt::Cert(c) => Some(c),
            Attempt::Degenerate { .. } => None,
        }
    }

    fn new(criterion: CriterionId, weight: &Weight, outcome: Attempt, assumptions: AssumptionStatus) -> Self {
        CriterionResult {
            criterion,
            weight: weight.clone(),
            outcome,
            block: None,
            tilde: None,
            assumptions,
        }
    }
}

fn degenerate(reason: impl std::fmt::Display) -> Attempt {
    Attempt::Degenerate {
        reason: reason.to_string(),
    }
}

/// `F_s` vanishes only at the origin.
pub fn check_map_higher_part(
    f: &PolyMap,
    s: &Weight,
    cfg: &AnalysisConfig,
    status: AssumptionStatus,
) -> CriterionResult {
    let outcome = match higher_part_map(f, s) {
        Err(e) => degenerate(e),
        Ok(fs) => match only_origin(fs.components(), s, &cfg.cert) {
            Ok(c) => Attempt::Cert(c),
            Err(e) => degenerate(e),
        },
    };
    CriterionResult::new(CriterionId::MapHigherPart, s, outcome, status)
}

/// `H_s` vanishes only at the origin. The gradient form is run as well and
/// must agree, since for non-negative quasi-homogeneous polynomials the two
/// conditions are equivalent.
pub fn check_h_higher_part(
    f: &PolyMap,
    s: &Weight,
    cfg: &AnalysisConfig,
    status: AssumptionStatus,
) -> Result<CriterionResult, CriteriaError> {
    let h = f.h_norm();
    let hs = match higher_part(&h, s) {
        Ok(p) => p,
        Err(e) => return Ok(CriterionResult::new(CriterionId::HNormHigherPart, s, degenerate(e), status)),
    };
    let outcome = match unique_zero_nonneg(&hs, s, &cfg.cert) {
        Err(e) => degenerate(e),
        Ok(direct) => {
            if let Ok(grad) = gradient_only_origin(&hs, s, &cfg.cert) {
                let (a, b) = (direct.class(), grad.class());
                if a != b && a != OutcomeClass::Inconclusive && b != OutcomeClass::Inconclusive {
                    return Err(CriteriaError::Inconsistency(format!(
                        "H_s at s = {s}: zero-set test gives {a:?}, gradient test gives {b:?}"
                    )));
                }
            }
            Attempt::Cert(direct)
        }
    };
    Ok(CriterionResult::new(CriterionId::HNormHigherPart, s, outcome, status))
}

/// The higher `s`-part of `Y = -grad H` vanishes only at the origin.
pub fn check_field_higher_part(
    f: &PolyMap,
    s: &Weight,
    cfg: &AnalysisConfig,
    status: AssumptionStatus,
) -> CriterionResult {
    let h = f.h_norm();
    let fh = match higher_part_field(&h, s) {
        Ok(fh) => fh,
        Err(e) => return CriterionResult::new(CriterionId::FieldHigherPart, s, degenerate(e), status),
    };
    let outcome = match only_origin(fh.field.components(), s, &cfg.cert) {
        Ok(c) => Attempt::Cert(c),
        Err(e) => degenerate(e),
    };
    let mut res = CriterionResult::new(CriterionId::FieldHigherPart, s, outcome, status);
    if let Ok(bs) = block_structure_from_degrees(&fh.degrees, s) {
        res.tilde = tilde_weights(&bs).ok();
        res.block = Some(bs);
    }
    res
}

pub fn check_criterion(
    id: CriterionId,
    f: &PolyMap,
    s: &Weight,
    cfg: &AnalysisConfig,
    status: AssumptionStatus,
) -> Result<CriterionResult, CriteriaError> {
    match id {
        CriterionId::MapHigherPart => Ok(check_map_higher_part(f, s, cfg, status)),
        CriterionId::HNormHigherPart => check_h_higher_part(f, s, cfg, status),
        CriterionId::FieldHigherPart => Ok(check_field_higher_part(f, s, cfg, status)),
    }
}

/// A field-criterion success transported to the map criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TildeRecord {
    pub from: Weight,
    pub tilde: TildeWeights,
    pub map_result: CriterionResult,
    pub sandwich_points: usize,
}

/// Given a field-criterion success at `s`, checks the map criterion at the
/// derived weight `s~` and `0 <= H_s~ <= |F_s~|^2 / 2` at random rational
/// points.
pub fn derive_tilde_and_verify(
    f: &PolyMap,
    field: &CriterionResult,
    cfg: &AnalysisConfig,
) -> Result<TildeRecord, CriteriaError> {
    if field.criterion != CriterionId::FieldHigherPart || !field.succeeded() {
        return Err(CriteriaError::Precondition(format!(
            "needs a field criterion success, got {} {:?} at {}",
            field.criterion,
            field.class(),
            field.weight
        )));
    }
    let tilde = field
        .tilde
        .clone()
        .ok_or_else(|| CriteriaError::Inconsistency("field success without derived weight".into()))?;
    let st = &tilde.weight;
    let map_result = check_map_higher_part(f, st, cfg, field.assumptions);
    let hs = higher_part(&f.h_norm(), st).map_err(|e| CriteriaError::Inconsistency(e.to_string()))?;
    if let Ok(fs) = higher_part_map(f, st) {
        sandwich(&hs, &fs, cfg.sandwich_points, cfg.seed)?;
    }
    match map_result.class() {
        AttemptClass::Success => Ok(TildeRecord {
            from: field.weight.clone(),
            tilde,
            map_result,
            sandwich_points: cfg.sandwich_points,
        }),
        c => Err(CriteriaError::TildeNotVerified {
            weight: st.clone(),
            inconclusive: c == AttemptClass::Inconclusive,
        }),
    }
}

/// Random rational points with small numerators and denominators.
pub fn random_rational_points(n: usize, count: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| rat(rng.random_range(-20..=20), rng.random_range(1..=9)))
                .collect()
        })
        .collect()
}

fn sandwich(hs: &Polynomial, fs: &PolyMap, points: usize, seed: u64) -> Result<(), CriteriaError> {
    let half = rat(1, 2);
    for p in random_rational_points(hs.n(), points, seed) {
        let h = hs.evaluate(&p).expect("dimension checked");
        let norm: BigRational = fs
            .evaluate(&p)
            .expect("dimension checked")
            .iter()
            .map(|v| v * v)
            .sum::<BigRational>()
            * &half;
        if h.is_negative() || h > norm {
            return Err(CriteriaError::SandwichViolated {
                point: p.iter().map(rational::to_string).collect(),
            });
        }
    }
    Ok(())
}

/// Attempts for one criterion, in enumeration order, up to the first success.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchLog {
    pub criterion: CriterionId,
    pub attempts: Vec<CriterionResult>,
    pub success: Option<usize>,
}

impl SearchLog {
    pub fn success(&self) -> Option<&CriterionResult> {
        self.success.map(|i| &self.attempts[i])
    }

    pub fn inconclusive(&self) -> impl Iterator<Item = &CriterionResult> {
        self.attempts
            .iter()
            .filter(|a| a.class() == AttemptClass::Inconclusive)
    }
}

/// Tries canonical weights with entries in `1..=s_max`, ordered by
/// `(sum, lex)`, and stops each criterion at its first success. Weights with
/// the same sum are checked in parallel.
pub fn weight_search(
    f: &PolyMap,
    criteria: &[CriterionId],
    s_max: u64,
    cfg: &AnalysisConfig,
    status: AssumptionStatus,
) -> Result<Vec<SearchLog>, CriteriaError> {
    if s_max == 0 {
        return Err(CriteriaError::EmptySearch);
    }
    let weights = Weight::enumerate(f.n(), s_max);
    let mut levels: Vec<Vec<Weight>> = Vec::new();
    for w in weights {
        let sum: u64 = w.as_slice().iter().sum();
        match levels.last_mut() {
            Some(l) if l[0].as_slice().iter().sum::<u64>() == sum => l.push(w),
            _ => levels.push(vec![w]),
        }
    }
    let mut logs = Vec::with_capacity(criteria.len());
    for &id in criteria {
        let mut attempts = Vec::new();
        let mut success = None;
        for level in &levels {
            let results = par::map(level, |w| check_criterion(id, f, w, cfg, status));
            for r in results {
                attempts.push(r?);
            }
            if let Some(i) = attempts.iter().position(CriterionResult::succeeded) {
                attempts.truncate(i + 1);
                success = Some(i);
                break;
            }
        }
        logs.push(SearchLog {
            criterion: id,
            attempts,
            success,
        });
    }
    Ok(logs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Injective { by: CriterionId, weight: Weight },
    NotInjective { witness: InjectivityWitness },
    Unknown { reason: String },
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Injective { .. } => 0,
            Verdict::NotInjective { .. } => 2,
            Verdict::Unknown { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProperRecord {
    pub weight: Weight,
    /// `F_s` or `H_s`: whose only-origin property shows `|F| -> infinity`.
    pub via: String,
    pub proper: bool,
    pub outcome: Option<CertOutcome>,
}

/// Everything [`verdict`] computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Analysis {
    pub assumptions: Assumptions,
    /// Whether `F - F(0)` was analysed instead of `F`.
    pub centered: bool,
    pub searches: Vec<SearchLog>,
    pub tilde: Vec<TildeRecord>,
    pub properness: Option<ProperRecord>,
    pub index_check: Option<IndexSumReport>,
    pub witness: Option<InjectivityWitness>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

/// Runs all criteria, the witness search and the consistency checks.
///
/// Criteria are applied to `F - F(0)`, which is injective exactly when `F`
/// is. A witness pair always outranks a criterion; if both exist the
/// hypothesis that must have failed is reported, and with no failing
/// hypothesis in sight the run is an inconsistency.
pub fn verdict(f: &PolyMap, cfg: &AnalysisConfig) -> Result<Analysis, CriteriaError> {
    let assumptions = check_assumptions(f, cfg);
    let centered = !assumptions.f_zero_at_origin;
    let g = f.centered();
    let status = assumptions.status();
    let mut notes = Vec::new();
    if centered {
        notes.push("F(0) != 0; criteria applied to F - F(0)".to_string());
    }

    let searches = weight_search(&g, &CriterionId::ALL, cfg.weights_max, cfg, status)?;
    let mut tilde = Vec::new();
    if let Some(field) = searches
        .iter()
        .find(|l| l.criterion == CriterionId::FieldHigherPart)
        .and_then(SearchLog::success)
    {
        tilde.push(derive_tilde_and_verify(&g, field, cfg)?);
    }
    let fired = searches.iter().find_map(SearchLog::success);

    // F_s vanishing only at the origin already forces |F| -> infinity
    let map_success = searches
        .iter()
        .filter(|l| l.criterion == CriterionId::MapHigherPart)
        .filter_map(SearchLog::success)
        .chain(tilde.iter().map(|t| &t.map_result))
        .next();
    let h = g.h_norm();
    let properness = if let Some(r) = map_success {
        Some(ProperRecord {
            weight: r.weight.clone(),
            via: "F_s".into(),
            proper: true,
            outcome: r.cert().cloned(),
        })
    } else if h.is_zero() {
        None
    } else {
        let s = fired.map(|r| r.weight.clone()).unwrap_or_else(|| Weight::uniform(g.n()));
        Some(match properness_certificate(&h, &s, &cfg.cert) {
            Ok((proper, out)) => ProperRecord {
                weight: s,
                via: "H_s".into(),
                proper,
                outcome: Some(out),
            },
            Err(e) => {
                notes.push(format!("properness check skipped: {e}"));
                ProperRecord {
                    weight: s,
                    via: "H_s".into(),
                    proper: false,
                    outcome: None,
                }
            }
        })
    };
    let proper = properness.as_ref().is_some_and(|p| p.proper);
    let index_check = if proper && status != AssumptionStatus::Violated {
        let zeros = numflow::find_zeros(&g, cfg.zero_starts, cfg.witness.search_radius, cfg.seed, &NewtonConfig::default());
        let rep = numflow::index_sum_check(&g, &zeros, true).ok();
        if let Some(d) = rep.as_ref().and_then(|r| r.diagnostic.clone()) {
            notes.push(format!("index check: {d}"));
        }
        rep
    } else {
        None
    };

    let wcfg = WitnessConfig {
        seed: cfg.seed,
        ..cfg.witness.clone()
    };
    let witness = numflow::injectivity_witness(f, &wcfg);

    let verdict = match (&witness, fired) {
        (Some(w), Some(r)) => {
            let hyp = assumptions.weakest_hypothesis();
            if status == AssumptionStatus::Violated {
                notes.push(format!(
                    "{} fired at {} but a witness pair exists; violated hypothesis: {hyp}",
                    r.criterion, r.weight
                ));
                Verdict::NotInjective { witness: w.clone() }
            } else {
                return Err(CriteriaError::Inconsistency(format!(
                    "{} fired at {} but F({:?}) = F({:?}); hypothesis in question: {hyp}",
                    r.criterion, r.weight, w.a, w.b
                )));
            }
        }
        (Some(w), None) => Verdict::NotInjective { witness: w.clone() },
        (None, Some(r)) if status == AssumptionStatus::Violated => {
            notes.push(format!(
                "{} fired at {} but det DF vanishes somewhere, so it does not apply",
                r.criterion, r.weight
            ));
            Verdict::Unknown {
                reason: "criterion hypotheses violated and no witness pair found".into(),
            }
        }
        (None, Some(r)) => Verdict::Injective {
            by: r.criterion,
            weight: r.weight.clone(),
        },
        (None, None) => {
            let inconclusive: usize = searches.iter().map(|l| l.inconclusive().count()).sum();
            Verdict::Unknown {
                reason: format!(
                    "no criterion fired for weights up to {} ({inconclusive} inconclusive attempts) and no witness pair found",
                    cfg.weights_max
                ),
            }
        }
    };
    Ok(Analysis {
        assumptions,
        centered,
        searches,
        tilde,
        properness,
        index_check,
        witness,
        notes,
        verdict,
    })
}
