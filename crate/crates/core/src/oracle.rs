//! Definitional brute-force multiplicities: finite differences of
//! `k ↦ ℓ(R/I^k)` and the normalized sequence `ℓ(R/I^{[q]})/q^d`.

use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use crate::branched::BranchedIdeal;
use crate::error::{Error, Result};
use crate::monomial::{factorial, MonomialIdeal};
use crate::rational::{self, int, Rational};
use crate::semigroup::SemigroupIdeal;

/// Largest accepted `k_max`; generator counts of `I^k` grow like `k^{d-1}`.
pub const K_MAX_CAP: u32 = 40;

/// Uniform access to the two colength sequences of an m-primary ideal.
pub trait RingModelHandle: Sync {
    /// `ℓ(R/I^k)`; `k = 0` gives 0.
    fn colength_of_power(&self, k: u32) -> Result<u64>;
    /// `ℓ(R/I^{[q]})`, `q ≥ 1`.
    fn colength_of_frobenius_power(&self, q: u32) -> Result<u64>;
    /// Krull dimension of the ambient ring.
    fn dimension(&self) -> usize;
}

impl RingModelHandle for MonomialIdeal {
    fn colength_of_power(&self, k: u32) -> Result<u64> {
        if k == 0 {
            return Ok(0);
        }
        self.power(k)?.colength()
    }

    fn colength_of_frobenius_power(&self, q: u32) -> Result<u64> {
        self.frobenius_power(q)?.colength()
    }

    fn dimension(&self) -> usize {
        self.dim()
    }
}

impl RingModelHandle for SemigroupIdeal {
    fn colength_of_power(&self, k: u32) -> Result<u64> {
        if k == 0 {
            return Ok(0);
        }
        Ok(self.power(k)?.colength())
    }

    fn colength_of_frobenius_power(&self, q: u32) -> Result<u64> {
        Ok(self.frobenius_power(q as u64)?.colength())
    }

    fn dimension(&self) -> usize {
        1
    }
}

impl RingModelHandle for BranchedIdeal {
    fn colength_of_power(&self, k: u32) -> Result<u64> {
        if k == 0 {
            return Ok(0);
        }
        self.power(k)?.colength()
    }

    fn colength_of_frobenius_power(&self, q: u32) -> Result<u64> {
        self.frobenius_power(q)?.colength()
    }

    fn dimension(&self) -> usize {
        self.ring().dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TracePoint {
    /// `k` for power sequences, `q` for Frobenius sequences.
    pub index: u32,
    pub colength: u64,
    /// `d!·ℓ/k^d` or `ℓ/q^d`.
    #[serde(with = "crate::rational::as_record")]
    pub normalized: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HsOracle {
    pub dimension: usize,
    /// Last `d`-th finite difference of `k ↦ ℓ(R/I^k)`.
    #[serde(with = "crate::rational::as_record")]
    pub estimate: Rational,
    /// The last three `d`-th differences agree.
    pub stabilized: bool,
    pub sequence: Vec<TracePoint>,
    /// `d`-th differences, indexed from `k = d`.
    pub differences: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HkOracle {
    pub dimension: usize,
    pub sequence: Vec<TracePoint>,
    /// Every normalized value is the same.
    pub constant: bool,
    /// Smallest `q` from which the colengths agree with one polynomial of
    /// degree `d` in `q` (checked on at least `d + 2` points).
    pub fit_from: Option<u32>,
    /// Leading coefficient of that polynomial.
    #[serde(with = "crate::rational::option_record")]
    pub limit_claim: Option<Rational>,
}

pub fn default_k_max(d: usize) -> u32 {
    d as u32 + 6
}

pub const DEFAULT_Q_LIST: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 27, 32];

/// Hilbert–Samuel estimate from `ℓ(R/I^k)`, `0 ≤ k ≤ k_max`.
pub fn hs_oracle<H: RingModelHandle + ?Sized>(h: &H, k_max: u32) -> Result<HsOracle> {
    let d = h.dimension();
    if (k_max as usize) < d + 2 || k_max > K_MAX_CAP {
        return Err(Error::InvalidArgument(format!(
            "k_max must lie in [{}, {}]",
            d + 2,
            K_MAX_CAP
        )));
    }
    let colengths: Vec<u64> = (0..=k_max)
        .into_par_iter()
        .map(|k| h.colength_of_power(k))
        .collect::<Result<_>>()?;
    let d_fact = int(factorial(d) as i64);
    let sequence: Vec<TracePoint> = colengths
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| TracePoint {
            index: k as u32,
            colength: c,
            normalized: &d_fact * int(c as i64) / int((k as i64).pow(d as u32)),
        })
        .collect();
    let differences: Vec<i64> = (d..colengths.len())
        .map(|k| {
            (0..=d)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d as i64, j as i64) * colengths[k - j] as i64
                })
                .sum()
        })
        .collect();
    let n = differences.len();
    let stabilized = n >= 3 && differences[n - 1] == differences[n - 2] && differences[n - 2] == differences[n - 3];
    Ok(HsOracle {
        dimension: d,
        estimate: int(differences[n - 1]),
        stabilized,
        sequence,
        differences,
    })
}

pub fn is_prime_power(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).expect("q ≥ 2 has a divisor");
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

/// `ℓ(R/I^{[q]})/q^d` for each prime power `q`.
pub fn hk_oracle<H: RingModelHandle + ?Sized>(h: &H, q_list: &[u32]) -> Result<HkOracle> {
    if q_list.is_empty() {
        return Err(Error::InvalidArgument("empty q list".into()));
    }
    if let Some(q) = q_list.iter().find(|&&q| !is_prime_power(q)) {
        return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
    }
    let d = h.dimension();
    let sequence: Vec<TracePoint> = q_list
        .par_iter()
        .map(|&q| {
            let c = h.colength_of_frobenius_power(q)?;
            Ok(TracePoint {
                index: q,
                colength: c,
                normalized: int(c as i64) / int((q as i64).pow(d as u32)),
            })
        })
        .collect::<Result<_>>()?;
    let first = &sequence[0].normalized;
    let constant = sequence.iter().all(|p| &p.normalized == first);
    let mut points: Vec<(u32, u64)> = sequence.iter().map(|p| (p.index, p.colength)).collect();
    points.sort_unstable();
    points.dedup();
    let (fit_from, limit_claim) = match tail_fit(&points, d) {
        Some((q, lead)) => (Some(q), Some(lead)),
        None if constant => (None, Some(first.clone())),
        None => (None, None),
    };
    Ok(HkOracle {
        dimension: d,
        sequence,
        constant,
        fit_from,
        limit_claim,
    })
}

/// Longest suffix of `points` (sorted by `q`) interpolated by a single
/// polynomial of degree `d`, via divided differences.
fn tail_fit(points: &[(u32, u64)], d: usize) -> Option<(u32, Rational)> {
    let n = points.len();
    if n < d + 2 {
        return None;
    }
    let xs: Vec<Rational> = points.iter().map(|&(q, _)| int(q as i64)).collect();
    // table[k][i] is the divided difference over points i..=i+k.
    let mut table: Vec<Vec<Rational>> = vec![points.iter().map(|&(_, c)| int(c as i64)).collect()];
    for k in 1..=d + 1 {
        let prev = &table[k - 1];
        let row = (0..n - k)
            .map(|i| (&prev[i + 1] - &prev[i]) / (&xs[i + k] - &xs[i]))
            .collect();
        table.push(row);
    }
    let top = &table[d + 1];
    let mut start = top.len();
    while start > 0 && top[start - 1] == int(0) {
        start -= 1;
    }
    if start == top.len() {
        return None;
    }
    Some((points[start].0, table[d][start].clone()))
}

/// CSV trace with header `index,colength,normalized,normalized_approx`.
pub fn trace_csv(points: &[TracePoint]) -> String {
    let mut out = String::from("index,colength,normalized,normalized_approx\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            p.index,
            p.colength,
            rational::exact_string(&p.normalized),
            rational::approx_decimal(&p.normalized, 6)
        ));
    }
    out
}
