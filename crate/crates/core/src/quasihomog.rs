//! Weighted-degree algebra.
//!
//! A polynomial `P` is `s`-quasi-homogeneous of degree `l` when
//! `P(t^s1 x1, ..., t^sn xn) = t^l P(x)` for all `t > 0`; equivalently every
//! term `c x^k` has `<s, k> = l`. Everything here works term by term on that
//! characterization.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{PolyMap, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QhError {
    #[error("zero polynomial has no weighted degree")]
    ZeroPolynomial,
    #[error("component {index} of the map is identically zero")]
    ZeroComponent { index: usize },
    #[error("H does not depend on variable {0}")]
    DegenerateDirection(usize),
    #[error("weight entries must be positive integers")]
    NonPositiveWeight,
    #[error("weight has {found} entries, expected {expected}")]
    WeightLength { expected: usize, found: usize },
    #[error("block index {index} out of range for {blocks} blocks")]
    BlockOutOfRange { index: usize, blocks: usize },
    #[error("degree product overflows")]
    Overflow,
    #[error("cannot read weight {0:?}; expected e.g. 1,2")]
    BadWeight(String),
}

/// Weight exponents `s`, stored with `gcd(s) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Weight(Vec<u64>);

impl Weight {
    /// Canonicalizes `s` by dividing out the gcd of its entries.
    pub fn new(s: Vec<u64>) -> Result<Self, QhError> {
        if s.is_empty() || s.contains(&0) {
            return Err(QhError::NonPositiveWeight);
        }
        let g = s.iter().fold(0u64, |g, &v| g.gcd(&v));
        Ok(Weight(s.into_iter().map(|v| v / g).collect()))
    }

    pub fn uniform(n: usize) -> Self {
        Weight(vec![1; n])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_len(&self, n: usize) -> Result<(), QhError> {
        if self.0.len() != n {
            return Err(QhError::WeightLength {
                expected: n,
                found: self.0.len(),
            });
        }
        Ok(())
    }

    /// All canonical weights with entries in `1..=max`, ordered by
    /// `(sum, lexicographic)`.
    pub fn enumerate(n: usize, max: u64) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![1u64; n];
        loop {
            if cur.iter().fold(0u64, |g, &v| g.gcd(&v)) == 1 {
                out.push(Weight(cur.clone()));
            }
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort_by(|a, b| {
                        let sa: u64 = a.0.iter().sum();
                        let sb: u64 = b.0.iter().sum();
                        sa.cmp(&sb).then_with(|| a.0.cmp(&b.0))
                    });
                    return out;
                }
                i -= 1;
                if cur[i] < max {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 1;
            }
        }
    }
}

impl std::str::FromStr for Weight {
    type Err = QhError;

    /// Accepts `1,2,3`, optionally wrapped in parentheses.
    fn from_str(src: &str) -> Result<Self, QhError> {
        let inner = src.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = inner
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| QhError::BadWeight(src.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Weight::new(entries)
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `deg_s p`: the largest `<s, k>` over the terms of `p`.
pub fn weighted_degree(p: &Polynomial, s: &Weight) -> Result<u64, QhError> {
    s.check_len(p.n())?;
    p.terms()
        .map(|(k, _)| k.dot(s.as_slice()))
        .max()
        .ok_or(QhError::ZeroPolynomial)
}

/// `p` split into its `s`-quasi-homogeneous parts, ascending by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct QHDecomposition {
    pub parts: Vec<(u64, Polynomial)>,
}

impl QHDecomposition {
    pub fn sum(&self, n: usize) -> Polynomial {
        self.parts
            .iter()
            .fold(Polynomial::zero(n), |acc, (_, p)| &acc + p)
    }

    pub fn part(&self, degree: u64) -> Option<&Polynomial> {
        self.parts.iter().find(|(d, _)| *d == degree).map(|(_, p)| p)
    }

    pub fn top(&self) -> &(u64, Polynomial) {
        self.parts.last().expect("decomposition of a non-zero polynomial")
    }
}

pub fn qh_decompose(p: &Polynomial, s: &Weight) -> Result<QHDecomposition, QhError> {
    s.check_len(p.n())?;
    if p.is_zero() {
        return Err(QhError::ZeroPolynomial);
    }
    let mut groups: BTreeMap<u64, Vec<(Vec<u32>, BigRational)>> = BTreeMap::new();
    for (k, c) in p.terms() {
        groups
            .entry(k.dot(s.as_slice()))
            .or_default()
            .push((k.as_slice().to_vec(), c.clone()));
    }
    let parts = groups
        .into_iter()
        .map(|(d, ts)| (d, Polynomial::from_terms(p.n(), ts).expect("same dimension")))
        .collect();
    Ok(QHDecomposition { parts })
}

/// Part of maximal weighted degree.
pub fn higher_part(p: &Polynomial, s: &Weight) -> Result<Polynomial, QhError> {
    let d = weighted_degree(p, s)?;
    Ok(p.filter_terms(|k| k.dot(s.as_slice()) == d))
}

pub fn is_quasi_homogeneous(p: &Polynomial, s: &Weight) -> bool {
    let mut degs = p.terms().map(|(k, _)| k.dot(s.as_slice()));
    match degs.next() {
        None => true,
        Some(d) => degs.all(|e| e == d),
    }
}

/// Componentwise higher parts `F_s = (f_1^s, ..., f_n^s)`.
pub fn higher_part_map(f: &PolyMap, s: &Weight) -> Result<PolyMap, QhError> {
    s.check_len(f.n())?;
    let comps = f
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| higher_part(c, s).map_err(|_| QhError::ZeroComponent { index: i }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMap::new(comps).expect("same shape as input"))
}

/// Higher `s`-part of the field `-grad H`, built per component.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldHigherPart {
    /// `i_j = max { l : d_j H_l != 0 }`, in original coordinate order.
    pub degrees: Vec<u64>,
    /// `d_j H_{i_j}` (not negated).
    pub partials: Vec<Polynomial>,
    /// `-(d_1 H_{i_1}, ..., d_n H_{i_n})`.
    pub field: PolyMap,
}

pub fn higher_part_field(h: &Polynomial, s: &Weight) -> Result<FieldHigherPart, QhError> {
    s.check_len(h.n())?;
    let n = h.n();
    let mut degrees = Vec::with_capacity(n);
    let mut partials = Vec::with_capacity(n);
    for j in 0..n {
        let ij = h
            .terms()
            .filter(|(k, _)| k.as_slice()[j] > 0)
            .map(|(k, _)| k.dot(s.as_slice()))
            .max()
            .ok_or(QhError::DegenerateDirection(j))?;
        let part = h.filter_terms(|k| k.dot(s.as_slice()) == ij);
        degrees.push(ij);
        partials.push(part.partial(j).expect("index in range"));
    }
    let field = PolyMap::new(partials.iter().map(|p| -p).collect()).expect("square");
    Ok(FieldHigherPart {
        degrees,
        partials,
        field,
    })
}

/// Generalized Euler identity `sum_i s_i x_i d_i p = d p`, checked exactly.
pub fn euler_check(p: &Polynomial, s: &Weight, d: u64) -> bool {
    if s.check_len(p.n()).is_err() {
        return false;
    }
    let n = p.n();
    let mut lhs = Polynomial::zero(n);
    for i in 0..n {
        let xi = Polynomial::var(n, i).expect("index in range");
        let term = &xi * &p.partial(i).expect("index in range");
        lhs = &lhs + &term.scale(&BigRational::from_integer(s.as_slice()[i].into()));
    }
    lhs == p.scale(&BigRational::from_integer(d.into()))
}

/// Coordinates grouped by the degrees `i_j` of the field's higher part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockStructure {
    /// Original coordinate indices sorted so that `i_j` is non-increasing.
    pub perm: Vec<usize>,
    /// `i_j` per original coordinate.
    pub degrees: Vec<u64>,
    pub block_sizes: Vec<usize>,
    /// `m_1 > m_2 > ... > m_r`.
    pub block_degrees: Vec<u64>,
    /// Sub-vectors of `s` for each block, in permuted order.
    pub block_weights: Vec<Vec<u64>>,
    /// `m = m_1 * ... * m_r`.
    pub m: u64,
    /// The weight the structure was computed for.
    pub weight: Weight,
}

impl BlockStructure {
    pub fn blocks(&self) -> usize {
        self.block_sizes.len()
    }

    /// Original coordinate indices in block `b`.
    pub fn block_vars(&self, b: usize) -> &[usize] {
        let start: usize = self.block_sizes[..b].iter().sum();
        &self.perm[start..start + self.block_sizes[b]]
    }

    /// Block index of each original coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.perm.len()];
        for b in 0..self.blocks() {
            for &v in self.block_vars(b) {
                out[v] = b;
            }
        }
        out
    }
}

pub fn block_structure(h: &Polynomial, s: &Weight) -> Result<BlockStructure, QhError> {
    let field = higher_part_field(h, s)?;
    block_structure_from_degrees(&field.degrees, s)
}

pub fn block_structure_from_degrees(
    degrees: &[u64],
    s: &Weight,
) -> Result<BlockStructure, QhError> {
    s.check_len(degrees.len())?;
    let mut perm: Vec<usize> = (0..degrees.len()).collect();
    // stable: ties keep original order
    perm.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]));
    let mut block_sizes = Vec::new();
    let mut block_degrees: Vec<u64> = Vec::new();
    let mut block_weights: Vec<Vec<u64>> = Vec::new();
    for &j in &perm {
        if block_degrees.last() == Some(&degrees[j]) {
            *block_sizes.last_mut().expect("non-empty") += 1;
            block_weights.last_mut().expect("non-empty").push(s.as_slice()[j]);
        } else {
            block_degrees.push(degrees[j]);
            block_sizes.push(1);
            block_weights.push(vec![s.as_slice()[j]]);
        }
    }
    let m = block_degrees
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul(d))
        .ok_or(QhError::Overflow)?;
    Ok(BlockStructure {
        perm,
        degrees: degrees.to_vec(),
        block_sizes,
        block_degrees,
        block_weights,
        m,
        weight: s.clone(),
    })
}

/// `H_{m_b}` restricted to the monomials that involve only block-`b`
/// variables (`b` is 0-based).
pub fn script_h(
    h: &Polynomial,
    s: &Weight,
    bs: &BlockStructure,
    b: usize,
) -> Result<Polynomial, QhError> {
    if b >= bs.blocks() {
        return Err(QhError::BlockOutOfRange {
            index: b,
            blocks: bs.blocks(),
        });
    }
    let mb = bs.block_degrees[b];
    let block = bs.block_of();
    Ok(h.filter_terms(|k| {
        k.dot(s.as_slice()) == mb
            && k
                .as_slice()
                .iter()
                .enumerate()
                .all(|(v, &e)| e == 0 || block[v] == b)
    }))
}

/// Derived weight `(m/m_1 s_1, ..., m/m_r s_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TildeWeights {
    /// Unreduced entries in original coordinate order.
    pub raw: Vec<u64>,
    /// `m`; the raw weighted degree of `H` under `raw`.
    pub m: u64,
    pub weight: Weight,
}

pub fn tilde_weights(bs: &BlockStructure) -> Result<TildeWeights, QhError> {
    let block = bs.block_of();
    let raw = bs
        .weight
        .as_slice()
        .iter()
        .enumerate()
        .map(|(j, &sj)| {
            (bs.m / bs.block_degrees[block[j]])
                .checked_mul(sj)
                .ok_or(QhError::Overflow)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TildeWeights {
        weight: Weight::new(raw.clone())?,
        raw,
        m: bs.m,
    })
}

/// `sum_b script_h(H, s, bs, b)`.
pub fn script_h_sum(h: &Polynomial, s: &Weight) -> Result<Polynomial, QhError> {
    let bs = block_structure(h, s)?;
    let mut acc = Polynomial::zero(h.n());
    for b in 0..bs.blocks() {
        acc = &acc + &script_h(h, s, &bs, b)?;
    }
    Ok(acc)
}
