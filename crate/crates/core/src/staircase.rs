//! Counting and volume of the complement of a staircase
//! `⋃_{a ∈ gens} (a + ℝ^d_{≥0})` in the non-negative orthant.

use num_bigint::BigInt;

use crate::exponent::{check_dims, minimize, pure_power_bounds, Exponent};
use crate::error::{Error, Result};
use crate::rational::{from_bigint, Rational};

/// Maximum antichain size accepted by [`volume_complement_union`].
pub const INCLUSION_EXCLUSION_CAP: usize = 20;

/// Number of lattice points of `ℝ^d_{≥0}` outside the staircase, i.e. the
/// number of standard monomials of the monomial ideal generated by `gens`.
pub fn lattice_points_outside_union(gens: &[Exponent], d: usize) -> Result<u64> {
    check_dims(gens, d)?;
    let gens = minimize(gens);
    pure_power_bounds(&gens, d)?;
    let coords: Vec<Vec<u32>> = gens.iter().map(|g| g.coords().to_vec()).collect();
    Ok(count_outside(&coords, d))
}

// Slices along the last coordinate; every slice still contains a pure power
// on each remaining axis, so the recursion stays bounded.
fn count_outside(gens: &[Vec<u32>], d: usize) -> u64 {
    match d {
        0 => {
            if gens.is_empty() {
                1
            } else {
                0
            }
        }
        1 => gens.iter().map(|g| g[0] as u64).min().unwrap_or(0),
        2 => {
            let mut pts: Vec<(u32, u32)> = gens.iter().map(|g| (g[0], g[1])).collect();
            pts.sort_unstable();
            let x_max = pts.iter().filter(|p| p.1 == 0).map(|p| p.0).min().unwrap_or(0);
            let mut total = 0u64;
            let mut best = u32::MAX;
            let mut it = pts.iter().peekable();
            for x in 0..x_max {
                while let Some(p) = it.peek() {
                    if p.0 <= x {
                        best = best.min(p.1);
                        it.next();
                    } else {
                        break;
                    }
                }
                total += best as u64;
            }
            total
        }
        _ => {
            let last = d - 1;
            let top = gens
                .iter()
                .filter(|g| g[..last].iter().all(|&c| c == 0))
                .map(|g| g[last])
                .min()
                .unwrap_or(0);
            let mut total = 0u64;
            for t in 0..top {
                let slice: Vec<Vec<u32>> = gens
                    .iter()
                    .filter(|g| g[last] <= t)
                    .map(|g| g[..last].to_vec())
                    .collect();
                total += count_outside(&minimize_raw(slice), last);
            }
            total
        }
    }
}

fn minimize_raw(gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let exps: Vec<Exponent> = gens.into_iter().map(Exponent::new).collect();
    minimize(&exps)
        .into_iter()
        .map(|e| e.coords().to_vec())
        .collect()
}

/// Exact volume of the complement of the staircase, by inclusion-exclusion
/// over subsets of the (minimized) generators with componentwise joins,
/// clipped to the box spanned by the pure powers.
pub fn volume_complement_union(gens: &[Exponent], d: usize) -> Result<Rational> {
    check_dims(gens, d)?;
    let gens = minimize(gens);
    if gens.len() > INCLUSION_EXCLUSION_CAP {
        return Err(Error::TooManyGenerators {
            count: gens.len(),
            cap: INCLUSION_EXCLUSION_CAP,
        });
    }
    let bounds = pure_power_bounds(&gens, d)?;
    let box_volume: BigInt = bounds.iter().map(|&m| BigInt::from(m)).product();

    // Subsets whose join leaves the box contribute zero, and so do all of
    // their supersets, so those branches are pruned.
    let coords: Vec<&[u32]> = gens.iter().map(|g| g.coords()).collect();
    let mut union = BigInt::from(0);
    let mut join = vec![0u32; d];
    inclusion_exclusion(&coords, &bounds, 0, &mut join, true, &mut union);
    Ok(from_bigint(box_volume - union))
}

fn inclusion_exclusion(
    gens: &[&[u32]],
    bounds: &[u32],
    start: usize,
    join: &mut Vec<u32>,
    positive: bool,
    acc: &mut BigInt,
) {
    for j in start..gens.len() {
        let saved = join.clone();
        let mut inside = true;
        for (i, c) in gens[j].iter().enumerate() {
            join[i] = join[i].max(*c);
            if join[i] >= bounds[i] {
                inside = false;
            }
        }
        if inside {
            let term: BigInt = join
                .iter()
                .zip(bounds)
                .map(|(&a, &m)| BigInt::from(m - a))
                .product();
            if positive {
                *acc += term;
            } else {
                *acc -= term;
            }
            inclusion_exclusion(gens, bounds, j + 1, join, !positive, acc);
        }
        *join = saved;
    }
}
