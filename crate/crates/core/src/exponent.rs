use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial in `d` variables.
///
/// The componentwise order on exponents is divisibility of monomials, so
/// `a.divides(&b)` reads as "x^a divides x^b".
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(coords: Vec<u32>) -> Self {
        Exponent(coords)
    }

    pub fn zero(d: usize) -> Self {
        Exponent(vec![0; d])
    }

    /// `x_axis^k` in `d` variables.
    pub fn pure_power(d: usize, axis: usize, k: u32) -> Self {
        let mut v = vec![0; d];
        v[axis] = k;
        Exponent(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, q: u32) -> Exponent {
        Exponent(self.0.iter().map(|a| a * q).collect())
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `Some((axis, k))` when this is `x_axis^k` with `k > 0`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let supp = self.support();
        match supp.as_slice() {
            [i] => Some((*i, self.0[*i])),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Keeps the coordinates listed in `axes`, in that order.
    pub fn project(&self, axes: &[usize]) -> Exponent {
        Exponent(axes.iter().map(|&i| self.0[i]).collect())
    }

    /// Inverse of [`Exponent::project`]: places the coordinates on `axes` of a
    /// `d`-dimensional vector, zero elsewhere.
    pub fn embed(&self, axes: &[usize], d: usize) -> Exponent {
        let mut v = vec![0; d];
        for (c, &i) in self.0.iter().zip(axes) {
            v[i] = *c;
        }
        Exponent(v)
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Checks that every generator has length `d` and that the set is non-empty.
pub fn check_dims(gens: &[Exponent], d: usize) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for (index, g) in gens.iter().enumerate() {
        if g.dim() != d {
            return Err(Error::DimensionMismatch {
                index,
                expected: d,
                got: g.dim(),
            });
        }
    }
    Ok(())
}

/// Reduces a generating set to its antichain of componentwise-minimal
/// elements, sorted lexicographically.
pub fn minimize(gens: &[Exponent]) -> Vec<Exponent> {
    let mut sorted: Vec<&Exponent> = gens.iter().collect();
    sorted.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let mut kept: Vec<Exponent> = Vec::new();
    for g in sorted {
        if !kept.iter().any(|h| h.divides(g)) {
            kept.push(g.clone());
        }
    }
    kept.sort();
    kept
}

/// Smallest pure-power exponent on each axis, i.e. the side lengths of the
/// box containing the complement of the staircase.
pub fn pure_power_bounds(gens: &[Exponent], d: usize) -> Result<Vec<u32>> {
    let mut bounds: Vec<Option<u32>> = vec![None; d];
    for g in gens {
        if g.is_zero() {
            return Ok(vec![0; d]);
        }
        if let Some((axis, k)) = g.as_pure_power() {
            bounds[axis] = Some(bounds[axis].map_or(k, |b| b.min(k)));
        }
    }
    bounds
        .into_iter()
        .enumerate()
        .map(|(axis, b)| b.ok_or(Error::UnboundedComplement { axis }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn minimize_drops_multiples_and_duplicates() {
        let gens = vec![e(&[2, 0]), e(&[1, 1]), e(&[2, 1]), e(&[1, 1]), e(&[0, 3])];
        assert_eq!(minimize(&gens), vec![e(&[0, 3]), e(&[1, 1]), e(&[2, 0])]);
    }

    #[test]
    fn bounds_need_every_axis() {
        let gens = vec![e(&[2, 0]), e(&[1, 1])];
        assert_eq!(
            pure_power_bounds(&gens, 2),
            Err(Error::UnboundedComplement { axis: 1 })
        );
        let gens = vec![e(&[2, 0]), e(&[0, 5]), e(&[0, 3])];
        assert_eq!(pure_power_bounds(&gens, 2).unwrap(), vec![2, 3]);
    }

    #[test]
    fn project_embed() {
        let a = e(&[3, 0, 4]);
        let p = a.project(&[0, 2]);
        assert_eq!(p, e(&[3, 4]));
        assert_eq!(p.embed(&[0, 2], 3), a);
        assert_eq!(a.support(), vec![0, 2]);
        assert_eq!(e(&[0, 7, 0]).as_pure_power(), Some((1, 7)));
    }
}
