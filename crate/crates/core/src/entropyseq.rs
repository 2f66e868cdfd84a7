//! Entropy estimates from exact index sequences.
//!
//! For a compact open subgroup `U`, `a_n = [U : C_n]` (or `[T_n : U]`) has
//! `a_1 = 1` and the shifted sequence `b_n = a_{n+1}` is submultiplicative,
//! so `log(a_{n+1}) / n` decreases to the entropy and every such value is a
//! certified upper bound. Stabilization of the ratios `a_{n+1}/a_n` is only a
//! heuristic and is reported as such.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_WINDOW: usize = 3;

/// Indices `a_1, a_2, …` for consecutive `n = 1, 2, …`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IndexSequence {
    indices: Vec<BigInt>,
}

impl IndexSequence {
    /// Indices must be at least one and nondecreasing in `n`.
    pub fn new(indices: Vec<BigInt>) -> Result<Self> {
        if let Some(bad) = indices.iter().find(|a| **a < BigInt::one()) {
            return Err(Error::InvalidIndexSequence(format!(
                "index {bad} is below 1"
            )));
        }
        if let Some(n) = indices.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidIndexSequence(format!(
                "index decreases from n = {} to n = {}",
                n + 1,
                n + 2
            )));
        }
        Ok(IndexSequence { indices })
    }

    /// From explicit `(n, index)` pairs, which must run `1, 2, 3, …` without gaps.
    pub fn from_pairs(pairs: Vec<(usize, BigInt)>) -> Result<Self> {
        for (pos, (n, _)) in pairs.iter().enumerate() {
            if *n != pos + 1 {
                return Err(Error::InvalidIndexSequence(format!(
                    "expected n = {} at position {}, found {}",
                    pos + 1,
                    pos,
                    n
                )));
            }
        }
        Self::new(pairs.into_iter().map(|(_, a)| a).collect())
    }

    pub fn from_u64(indices: &[u64]) -> Result<Self> {
        Self::new(indices.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn indices(&self) -> &[BigInt] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `a_n`, one-based.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.indices.get(i))
    }

    pub fn push(&mut self, index: BigInt) -> Result<()> {
        let mut v = self.indices.clone();
        v.push(index);
        *self = Self::new(v)?;
        Ok(())
    }
}

/// `log(index) / steps`, kept exact.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LogRatio {
    #[serde(with = "crate::serde_big")]
    pub index: BigInt,
    pub steps: usize,
}

impl LogRatio {
    pub fn to_f64(&self) -> f64 {
        ln_big(&self.index) / self.steps as f64
    }
}

impl fmt::Display for LogRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index.is_one() {
            write!(f, "0")
        } else if self.steps == 1 {
            write!(f, "log {}", self.index)
        } else {
            write!(f, "log({})/{}", self.index, self.steps)
        }
    }
}

/// Compares `log(a)/n` with `log(b)/m` via `a^m` vs `b^n`.
pub fn compare_log_ratios(a: &LogRatio, b: &LogRatio) -> Ordering {
    let lhs: BigInt = Pow::pow(&a.index, b.steps as u32);
    let rhs: BigInt = Pow::pow(&b.index, a.steps as u32);
    lhs.cmp(&rhs)
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    match x.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let shift = x.bits().saturating_sub(64);
            let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateStatus {
    Stabilized,
    BoundedOnly,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct EntropyEstimate {
    /// Smallest `log(a_{n+1})/n` over the recorded data.
    pub upper_bound: LogRatio,
    /// `r` with entropy `log r`, when the tail ratios agree.
    #[serde(with = "crate::serde_big::option")]
    pub stabilized: Option<BigInt>,
    pub status: EstimateStatus,
    pub window: usize,
    pub float_value: f64,
}

impl EntropyEstimate {
    /// Exact rendering: `log r` when stabilized, otherwise `<= bound`.
    pub fn exact_string(&self) -> String {
        match &self.stabilized {
            Some(r) => log_string(r),
            None => format!("<= {}", self.upper_bound),
        }
    }
}

/// `"0"` for `r = 1`, otherwise `"log r"`.
pub fn log_string(r: &BigInt) -> String {
    if r.is_one() {
        "0".to_string()
    } else {
        format!("log {r}")
    }
}

pub fn estimate(seq: &IndexSequence, window: usize) -> Result<EntropyEstimate> {
    if window == 0 {
        return Err(Error::InvalidArgument(
            "stabilization window must be at least 1".into(),
        ));
    }
    let a = seq.indices();
    if a.len() < 2 {
        return Err(Error::TooFewEntries(a.len()));
    }

    let mut best = LogRatio {
        index: a[1].clone(),
        steps: 1,
    };
    for (n, an) in a.iter().enumerate().skip(2) {
        let cand = LogRatio {
            index: an.clone(),
            steps: n,
        };
        if compare_log_ratios(&cand, &best) == Ordering::Less {
            best = cand;
        }
    }

    let stabilized = tail_ratio(a, window).filter(|r| {
        // log r must not exceed any certified bound log(a_{n+1})/n
        (1..a.len()).all(|n| Pow::pow(r, n as u32) <= a[n])
    });

    let (status, float_value) = match &stabilized {
        Some(r) => (EstimateStatus::Stabilized, ln_big(r)),
        None => (EstimateStatus::BoundedOnly, best.to_f64()),
    };
    Ok(EntropyEstimate {
        upper_bound: best,
        stabilized,
        status,
        window,
        float_value,
    })
}

/// The common integer ratio of the last `window` successive quotients, if any.
fn tail_ratio(a: &[BigInt], window: usize) -> Option<BigInt> {
    if a.len() < window + 1 {
        return None;
    }
    let mut ratio: Option<BigInt> = None;
    for i in a.len() - window..a.len() {
        let (q, r) = a[i].div_rem(&a[i - 1]);
        if !r.is_zero() {
            return None;
        }
        match &ratio {
            Some(prev) if *prev != q => return None,
            Some(_) => {}
            None => ratio = Some(q),
        }
    }
    ratio
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    EqualExact,
    EqualBounds,
    Inconclusive,
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::EqualExact => "equal-exact",
            Verdict::EqualBounds => "equal-bounds",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Mismatch => "mismatch",
        })
    }
}

pub fn compare(e1: &EntropyEstimate, e2: &EntropyEstimate) -> Verdict {
    match (&e1.stabilized, &e2.stabilized) {
        (Some(r1), Some(r2)) if r1 == r2 => Verdict::EqualExact,
        (Some(_), Some(_)) => Verdict::Mismatch,
        (None, None) if compare_log_ratios(&e1.upper_bound, &e2.upper_bound) == Ordering::Equal => {
            Verdict::EqualBounds
        }
        _ => Verdict::Inconclusive,
    }
}
