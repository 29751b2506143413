//! Newton polyhedron `conv(gens) + ℝ^d_{≥0}`: exact membership and the
//! volume of its complement in the orthant.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exponent::{check_dims, minimize, pure_power_bounds, Exponent};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Decides whether `point ∈ conv(gens) + ℝ^d_{≥0}`.
///
/// The weights `λ ≥ 0, Σλ = 1, Σ λ_i g_i ≤ point` are eliminated one at a
/// time, in input order, by Fourier–Motzkin over the integers.
pub fn newton_membership(gens: &[Exponent], point: &Exponent, d: usize) -> Result<bool> {
    check_dims(gens, d)?;
    if point.dim() != d {
        return Err(Error::DimensionMismatch {
            index: gens.len(),
            expected: d,
            got: point.dim(),
        });
    }
    if gens.iter().any(|g| g.divides(point)) {
        return Ok(true);
    }
    let system = weight_system(gens, point);
    Ok(system.feasible())
}

fn weight_system(gens: &[Exponent], point: &Exponent) -> System {
    let k = gens.len();
    let mut system = System::new(k);
    for i in 0..k {
        let mut a = vec![BigInt::zero(); k];
        a[i] = -BigInt::one();
        system.push(a, BigInt::zero());
    }
    system.push(vec![BigInt::one(); k], BigInt::one());
    system.push(vec![-BigInt::one(); k], -BigInt::one());
    for j in 0..point.dim() {
        let a = gens.iter().map(|g| BigInt::from(g.get(j))).collect();
        system.push(a, BigInt::from(point.get(j)));
    }
    system
}

/// Inequalities `a·x ≤ b` with coprime integer coefficients and an exact
/// rational bound.
///
/// Each row remembers which original rows it was combined from. A row built
/// from more than `1 + s + i` originals is redundant and dropped, where `s`
/// counts explicitly eliminated variables and `i` those that vanished from
/// the row implicitly (Imbert's acceleration of Chernikov's rule). The rule
/// relies on every smaller-history row surviving, so only exact duplicates
/// (same row, same history) are merged.
struct System {
    vars: usize,
    originals: usize,
    supports: Vec<u128>,
    rows: BTreeSet<(Vec<BigInt>, Rational, u128)>,
    contradiction: bool,
    prune: bool,
}

impl System {
    fn new(vars: usize) -> Self {
        System {
            vars,
            originals: 0,
            supports: Vec::new(),
            rows: BTreeSet::new(),
            contradiction: false,
            prune: true,
        }
    }

    fn push(&mut self, a: Vec<BigInt>, b: BigInt) {
        let history = if self.originals < 128 {
            1u128 << self.originals
        } else {
            0
        };
        self.originals += 1;
        let support = a
            .iter()
            .enumerate()
            .filter(|(i, c)| *i < 128 && !c.is_zero())
            .fold(0u128, |m, (i, _)| m | (1u128 << i));
        self.supports.push(support);
        self.insert(a, Rational::from_integer(b), history);
    }

    fn insert(&mut self, mut a: Vec<BigInt>, mut b: Rational, history: u128) {
        let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            if b.is_negative() {
                self.contradiction = true;
            }
            return;
        }
        if !g.is_one() {
            for c in a.iter_mut() {
                *c /= &g;
            }
            b /= Rational::from_integer(g);
        }
        self.rows.insert((a, b, history));
    }

    fn feasible(mut self) -> bool {
        let prune = self.prune && self.originals <= 128 && self.vars <= 128;
        for var in 0..self.vars {
            if self.contradiction {
                return false;
            }
            let rows = std::mem::take(&mut self.rows);
            let mut upper = Vec::new();
            let mut lower = Vec::new();
            for (a, b, h) in rows {
                if a[var].is_positive() {
                    upper.push((a, b, h));
                } else if a[var].is_negative() {
                    lower.push((a, b, h));
                } else {
                    self.insert(a, b, h);
                }
            }
            let eliminated: u128 = if var + 1 >= 128 {
                u128::MAX
            } else {
                (1u128 << (var + 1)) - 1
            };
            for (au, bu, hu) in &upper {
                for (al, bl, hl) in &lower {
                    let history = hu | hl;
                    let cu = -&al[var];
                    let cl = &au[var];
                    let a: Vec<BigInt> = au
                        .iter()
                        .zip(al)
                        .map(|(x, y)| x * &cu + y * cl)
                        .collect();
                    if prune && !self.within_imbert_bound(&a, history, var + 1, eliminated) {
                        continue;
                    }
                    let b = bu * Rational::from_integer(cu.clone())
                        + bl * Rational::from_integer(cl.clone());
                    self.insert(a, b, history);
                }
            }
        }
        !self.contradiction && self.rows.iter().all(|(_, b, _)| !b.is_negative())
    }

    fn within_imbert_bound(&self, a: &[BigInt], history: u128, explicit: usize, eliminated: u128) -> bool {
        let size = history.count_ones() as usize;
        if size <= explicit + 1 {
            return true;
        }
        let mut touched = 0u128;
        let mut h = history;
        while h != 0 {
            let i = h.trailing_zeros() as usize;
            touched |= self.supports[i];
            h &= h - 1;
        }
        let zero_now = a
            .iter()
            .enumerate()
            .filter(|(i, c)| *i < 128 && c.is_zero())
            .fold(0u128, |m, (i, _)| m | (1u128 << i));
        let implicit = (touched & zero_now & !eliminated).count_ones() as usize;
        size <= explicit + 1 + implicit
    }
}

/// `vol(ℝ^d_{≥0} ∖ (conv(gens) + ℝ^d_{≥0}))` for `d ≤ 3`.
///
/// `d = 1` is the smallest generator, `d = 2` integrates under the lower
/// convex hull, and `d = 3` integrates the `d = 2` cross-section areas along
/// the last axis. Between consecutive generator heights the cross-section
/// area is a quadratic polynomial, so Simpson's rule is exact there.
pub fn newton_covolume(gens: &[Exponent], d: usize) -> Result<Rational> {
    if d > 3 {
        return Err(Error::DimensionUnsupported(d));
    }
    check_dims(gens, d)?;
    let gens = minimize(gens);
    let bounds = pure_power_bounds(&gens, d)?;
    if bounds.contains(&0) {
        return Ok(Rational::zero());
    }
    match d {
        0 => Ok(Rational::zero()),
        1 => Ok(int(bounds[0] as i64)),
        2 => {
            let pts: Vec<(Rational, Rational)> = gens
                .iter()
                .map(|g| (int(g.get(0) as i64), int(g.get(1) as i64)))
                .collect();
            Ok(area_under_hull(pts))
        }
        _ => Ok(covolume_3d(&gens, bounds[2])),
    }
}

fn covolume_3d(gens: &[Exponent], top: u32) -> Rational {
    let mut heights: Vec<u32> = gens.iter().map(|g| g.get(2)).filter(|&z| z <= top).collect();
    heights.push(0);
    heights.push(top);
    heights.sort_unstable();
    heights.dedup();

    let two = int(2);
    let six = int(6);
    let mut total = Rational::zero();
    for w in heights.windows(2) {
        let lo = int(w[0] as i64);
        let hi = int(w[1] as i64);
        let mid = (&lo + &hi) / &two;
        let a_lo = slice_area(gens, &lo);
        let a_mid = slice_area(gens, &mid);
        let a_hi = slice_area(gens, &hi);
        debug_assert!({
            // The quadratic through the three samples must also match a
            // quarter point.
            let quarter = (&lo * int(3) + &hi) / int(4);
            let interp = (&a_lo * int(3) + &a_mid * int(6) - &a_hi) / int(8);
            slice_area(gens, &quarter) == interp
        });
        total += (&hi - &lo) * (a_lo + a_mid * int(4) + a_hi) / &six;
    }
    total
}

/// Area of the complement of the cross-section of the Newton polyhedron at
/// height `t` along the last axis.
fn slice_area(gens: &[Exponent], t: &Rational) -> Rational {
    area_under_hull(slice_points(gens, t))
}

/// Generator projections and segment crossings spanning the slice at `t`.
fn slice_points(gens: &[Exponent], t: &Rational) -> Vec<(Rational, Rational)> {
    let lifted: Vec<(Rational, Rational, Rational)> = gens
        .iter()
        .map(|g| {
            (
                int(g.get(0) as i64),
                int(g.get(1) as i64),
                int(g.get(2) as i64),
            )
        })
        .collect();
    let mut pts = Vec::new();
    for (x, y, z) in &lifted {
        if z <= t {
            pts.push((x.clone(), y.clone()));
        }
    }
    // Points where segments between generators cross the slicing plane.
    for (i, (x0, y0, z0)) in lifted.iter().enumerate() {
        if z0 >= t {
            continue;
        }
        for (x1, y1, z1) in lifted.iter().skip(i + 1).chain(lifted.iter().take(i)) {
            if z1 <= t {
                continue;
            }
            let s = (t - z0) / (z1 - z0);
            pts.push((x0 + (x1 - x0) * &s, y0 + (y1 - y0) * &s));
        }
    }
    pts
}

/// Area of `ℝ^2_{≥0} ∖ (conv(points) + ℝ^2_{≥0})`. Requires a point on each
/// axis.
fn area_under_hull(mut pts: Vec<(Rational, Rational)>) -> Rational {
    pts.sort();
    pts.dedup();
    let mut hull: Vec<(Rational, Rational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let o = &hull[hull.len() - 2];
            let a = &hull[hull.len() - 1];
            let cross = (&a.0 - &o.0) * (&p.1 - &o.1) - (&a.1 - &o.1) * (&p.0 - &o.0);
            if cross.is_positive() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    let mut area = Rational::zero();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for w in hull.windows(2) {
        if w[0].1.is_zero() {
            break;
        }
        area += (&w[1].0 - &w[0].0) * (&w[0].1 + &w[1].1) * &half;
    }
    area
}
