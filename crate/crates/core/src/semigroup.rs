//! Numerical semigroup rings `k[[S]] ⊆ k[[T]]`.
//!
//! These are one-dimensional complete domains whose normalization is
//! `k[[T]]`, so the integrally closed m-primary ideals are exactly
//! `I_n = (T^n) ∩ R = {s ∈ S : s ≥ n}`, indexed by valuations `n ∈ S`.
//! In dimension one tight closure and integral closure agree and
//! `e_HK = e`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// `membership[s]` for `s < table_len`; every `s ≥ conductor` is in `S`.
    membership: Vec<bool>,
    gaps: Vec<u64>,
    conductor: u64,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if generators.contains(&0) {
            return Err(Error::InvalidArgument("generators must be positive".into()));
        }
        let g = generators.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::NotCoprime(g));
        }
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let smallest = gens[0];
        let largest = *gens.last().unwrap();

        // Grow the table until `smallest` consecutive members appear; from
        // there on every integer is reachable.
        let mut membership = vec![true];
        let mut run = 1u64;
        let mut s = 0usize;
        while run < smallest {
            s += 1;
            let member = gens
                .iter()
                .any(|&g| g as usize <= s && membership[s - g as usize]);
            membership.push(member);
            run = if member { run + 1 } else { 0 };
        }
        let gaps: Vec<u64> = membership
            .iter()
            .enumerate()
            .filter(|(_, &m)| !m)
            .map(|(i, _)| i as u64)
            .collect();
        let conductor = gaps.last().map_or(0, |f| f + 1);
        let table_len = (2 * conductor + largest + 1) as usize;
        membership.resize(table_len.max(membership.len()), true);
        membership.truncate(table_len.max(conductor as usize + 1));

        let generators = minimal_generators(&gens, &membership, conductor);

        Ok(NumericalSemigroup {
            generators,
            membership,
            gaps,
            conductor,
        })
    }

    /// Minimal generators.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, s: u64) -> bool {
        membership_of(&self.membership, self.conductor, s)
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Largest gap, `-1` when `S = ℕ`.
    pub fn frobenius_number(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    /// `e(R)`, the smallest positive element.
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn is_regular(&self) -> bool {
        self.contains(1)
    }

    /// `#{s ∈ S : s < n}`.
    pub fn count_below(&self, n: u64) -> u64 {
        if n >= self.conductor {
            n - self.genus()
        } else {
            (0..n).filter(|&s| self.contains(s)).count() as u64
        }
    }

    /// Smallest element of `S` that is `≥ n`.
    pub fn next_element(&self, n: u64) -> u64 {
        (n..).find(|&s| self.contains(s)).expect("S is cofinite")
    }

    /// Elements of `S` in `[lo, hi]`.
    pub fn elements_in(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        (lo..=hi).filter(move |&s| self.contains(s))
    }
}

fn membership_of(table: &[bool], conductor: u64, s: u64) -> bool {
    s >= conductor || table[s as usize]
}

fn minimal_generators(gens: &[u64], table: &[bool], conductor: u64) -> Vec<u64> {
    // g is redundant when g = a + b with a, b positive elements of S.
    gens.iter()
        .copied()
        .filter(|&g| {
            !(1..g).any(|a| membership_of(table, conductor, a) && membership_of(table, conductor, g - a))
        })
        .collect()
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NumericalSemigroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let gens = Vec::<u64>::deserialize(d)?;
        NumericalSemigroup::new(&gens).map_err(serde::de::Error::custom)
    }
}

/// A monomial ideal of `k[[S]]`: the set `⋃_g (g + S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupIdeal {
    semigroup: Arc<NumericalSemigroup>,
    generators: Vec<u64>,
}

/// Wire shape `{"semigroup": [3, 5], "gens": [5, 6]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemigroupIdealJson {
    pub semigroup: Vec<u64>,
    pub gens: Vec<u64>,
}

impl Serialize for SemigroupIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SemigroupIdealJson {
            semigroup: self.semigroup.generators().to_vec(),
            gens: self.generators.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SemigroupIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SemigroupIdealJson::deserialize(d)?;
        let s = NumericalSemigroup::new(&j.semigroup).map_err(serde::de::Error::custom)?;
        SemigroupIdeal::new(Arc::new(s), &j.gens).map_err(serde::de::Error::custom)
    }
}

impl SemigroupIdeal {
    /// The ideal generated by `T^g` for `g ∈ gens`. Generators must be
    /// positive elements of `S`; they are reduced to an antichain under
    /// `g − g' ∈ S`.
    pub fn new(semigroup: Arc<NumericalSemigroup>, gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for &g in gens {
            if g == 0 {
                return Err(Error::UnitIdeal);
            }
            if !semigroup.contains(g) {
                return Err(Error::NotInSemigroup(g));
            }
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut generators: Vec<u64> = Vec::new();
        for g in sorted {
            if !generators.iter().any(|&h| semigroup.contains(g - h)) {
                generators.push(g);
            }
        }
        Ok(SemigroupIdeal {
            semigroup,
            generators,
        })
    }

    pub fn semigroup(&self) -> &Arc<NumericalSemigroup> {
        &self.semigroup
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Smallest element, i.e. the `T`-adic valuation of the ideal.
    pub fn valuation(&self) -> u64 {
        self.generators[0]
    }

    pub fn contains(&self, x: u64) -> bool {
        self.generators
            .iter()
            .any(|&g| x >= g && self.semigroup.contains(x - g))
    }

    /// Every element of `S` at or above this bound lies in the ideal.
    fn saturation_bound(&self) -> u64 {
        self.valuation() + self.semigroup.conductor()
    }

    /// Elements of the ideal up to and including `hi`.
    pub fn elements_upto(&self, hi: u64) -> Vec<u64> {
        (0..=hi).filter(|&x| self.contains(x)).collect()
    }

    /// `ℓ(R/I) = #(S ∖ I)`.
    pub fn colength(&self) -> u64 {
        let s = &self.semigroup;
        (0..self.saturation_bound())
            .filter(|&x| s.contains(x) && !self.contains(x))
            .count() as u64
    }

    /// `e(I)`: the valuation of the ideal (the smallest generator).
    pub fn multiplicity(&self) -> u64 {
        self.valuation()
    }

    /// `I·J`, generated by pairwise sums.
    pub fn product(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal> {
        if self.semigroup != other.semigroup {
            return Err(Error::MixedSemigroups);
        }
        let sums: Vec<u64> = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a + b))
            .collect();
        SemigroupIdeal::new(self.semigroup.clone(), &sums)
    }

    /// `I^k`, `k ≥ 1`.
    pub fn power(&self, k: u32) -> Result<SemigroupIdeal> {
        if k == 0 {
            return Err(Error::UnitIdeal);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I^{[q]}`, generated by `T^{q·g}`.
    pub fn frobenius_power(&self, q: u64) -> Result<SemigroupIdeal> {
        if q == 0 {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        let gens: Vec<u64> = self.generators.iter().map(|g| g * q).collect();
        SemigroupIdeal::new(self.semigroup.clone(), &gens)
    }

    /// `J ⊆ I`.
    pub fn contains_ideal(&self, other: &SemigroupIdeal) -> bool {
        self.semigroup == other.semigroup && other.generators.iter().all(|&g| self.contains(g))
    }

    /// Integral closure, which in dimension one is also the tight closure:
    /// `I_v` for the valuation `v` of the ideal.
    pub fn closure(&self) -> SemigroupIdeal {
        ic_ideal(&self.semigroup, self.valuation())
            .expect("valuation is positive")
            .ideal
    }

    pub fn is_integrally_closed(&self) -> bool {
        self.closure() == *self
    }
}

/// `I_n` together with the requested index and its canonical valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcIdeal {
    pub requested: u64,
    /// `min{s ∈ S : s ≥ requested}`.
    pub valuation: u64,
    pub ideal: SemigroupIdeal,
    /// Set when `1 ∈ S`: the ring is a DVR and every ideal is some `I_n`.
    pub regular_ring: bool,
}

/// `I_n = (T^n) ∩ R`, canonicalized to the valuation `min{s ∈ S : s ≥ n}`.
pub fn ic_ideal(s: &Arc<NumericalSemigroup>, n: u64) -> Result<IcIdeal> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let v = s.next_element(n);
    // Minimal generators of {x ∈ S : x ≥ v} all lie below v + e(R).
    let candidates: Vec<u64> = s.elements_in(v, v + s.multiplicity() + s.conductor()).collect();
    let ideal = SemigroupIdeal::new(s.clone(), &candidates)?;
    Ok(IcIdeal {
        requested: n,
        valuation: v,
        ideal,
        regular_ring: s.is_regular(),
    })
}

/// `(e(I_n) − e(I_m)) / ℓ(I_m/I_n) = (n − m) / #{s ∈ S : m ≤ s < n}` for
/// valuations `m < n` in `S`.
pub fn ic_relative_drop(s: &NumericalSemigroup, m: u64, n: u64) -> Result<Rational> {
    for v in [m, n] {
        if v == 0 || !s.contains(v) {
            return Err(Error::NotInSemigroup(v));
        }
    }
    if m >= n {
        return Err(Error::NotNested);
    }
    let between = s.count_below(n) - s.count_below(m);
    Ok(Rational::new(((n - m) as i64).into(), (between as i64).into()))
}

/// Supremum of the relative drop over integrally closed pairs
/// `I_n ⊊ I_m`, with the lexicographically smallest witness `(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupDrop {
    pub value: Rational,
    pub witness: (u64, u64),
}

pub fn sup_relative_drop(s: &NumericalSemigroup) -> Result<SupDrop> {
    if s.is_regular() {
        return Err(Error::RegularRing);
    }
    let c = s.conductor();
    let top_m = c + s.generators().last().copied().unwrap_or(1);
    // For fixed m and n ≥ c the drop (n − m)/(n − g − ℓ(R/I_m)) is a
    // monotone linear-fractional function of n tending to 1, so its extreme
    // over n ≥ c is either the value at n = c or the limit 1. Pairs with
    // m ≥ c have drop exactly 1 and are represented by (m, m + 1).
    let mut best: Option<SupDrop> = None;
    for m in s.elements_in(1, top_m) {
        let n_hi = c.max(m + 1);
        for n in s.elements_in(m + 1, n_hi) {
            let value = ic_relative_drop(s, m, n)?;
            let better = match &best {
                None => true,
                Some(b) => value > b.value,
            };
            if better {
                best = Some(SupDrop {
                    value,
                    witness: (m, n),
                });
            }
        }
    }
    let best = best.expect("S has elements past the conductor");
    if best.value < int(1) {
        // The limit 1 exceeds every finite candidate; attained past the
        // conductor.
        return Ok(SupDrop {
            value: int(1),
            witness: (c.max(2), c.max(2) + 1),
        });
    }
    Ok(best)
}

/// `e(I_n)/ℓ(R/I_n)` for `n ∈ S` up to a bound, with the smallest constant
/// `C` such that every value is `≤ 1 + C/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioTrend {
    pub points: Vec<(u64, Rational)>,
    pub constant: Rational,
}

pub fn inf_ratio_trend(s: &NumericalSemigroup, n_max: u64) -> Result<RatioTrend> {
    if n_max < s.conductor() {
        return Err(Error::InvalidArgument(format!(
            "n_max {n_max} is below the conductor {}",
            s.conductor()
        )));
    }
    let mut points = Vec::new();
    let mut constant = int(0);
    for n in s.elements_in(1, n_max) {
        let colength = s.count_below(n);
        let r = Rational::new((n as i64).into(), (colength as i64).into());
        let c = (&r - int(1)) * int(n as i64);
        if c > constant {
            constant = c;
        }
        points.push((n, r));
    }
    Ok(RatioTrend { points, constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn sg(g: &[u64]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::new(g).unwrap())
    }

    #[test]
    fn construction() {
        let s = sg(&[2, 3]);
        assert_eq!((s.gaps(), s.conductor(), s.genus()), (&[1u64][..], 2, 1));
        let s = sg(&[3, 5]);
        assert_eq!((s.gaps(), s.conductor(), s.genus()), (&[1u64, 2, 4, 7][..], 8, 4));
        assert_eq!(s.frobenius_number(), 7);
        let s = sg(&[2, 5]);
        assert_eq!((s.gaps(), s.conductor(), s.genus()), (&[1u64, 3][..], 4, 2));
        let s = sg(&[1]);
        assert_eq!((s.frobenius_number(), s.conductor(), s.genus()), (-1, 0, 0));
        assert!(s.is_regular());
        assert_eq!(NumericalSemigroup::new(&[4, 6]), Err(Error::NotCoprime(2)));
        assert_eq!(sg(&[3, 5, 6, 10]).generators(), &[3, 5]);
    }

    // Brute force: x ∈ S iff x is a non-negative combination of generators.
    fn brute_member(gens: &[u64], x: u64) -> bool {
        if x == 0 {
            return true;
        }
        gens.iter().any(|&g| g <= x && brute_member(gens, x - g))
    }

    #[test]
    fn membership_matches_brute_force() {
        for gens in [&[2u64, 3][..], &[3, 5], &[4, 7, 9], &[5, 6, 13]] {
            let s = NumericalSemigroup::new(gens).unwrap();
            for x in 0..80 {
                assert_eq!(s.contains(x), brute_member(gens, x), "{gens:?} {x}");
            }
        }
    }

    #[test]
    fn ic_ideal_examples() {
        let s = sg(&[2, 5]);
        let i = ic_ideal(&s, 3).unwrap();
        assert_eq!(i.valuation, 4);
        assert!(!i.regular_ring);
        let i2 = ic_ideal(&sg(&[2, 3]), 2).unwrap().ideal;
        assert_eq!(i2.elements_upto(6), vec![2, 3, 4, 5, 6]);
        let i8 = ic_ideal(&sg(&[3, 5]), 8).unwrap().ideal;
        assert_eq!(i8.elements_upto(12), vec![8, 9, 10, 11, 12]);
        assert!(ic_ideal(&sg(&[1]), 3).unwrap().regular_ring);
    }

    #[test]
    fn multiplicity_and_colength() {
        let s = sg(&[2, 5]);
        let i4 = ic_ideal(&s, 4).unwrap().ideal;
        assert_eq!(i4.multiplicity(), 4);
        assert_eq!(i4.colength(), 2);
        let s23 = sg(&[2, 3]);
        let j = SemigroupIdeal::new(s23.clone(), &[4, 5]).unwrap();
        assert_eq!(j.multiplicity(), 4);
        let i2 = ic_ideal(&s23, 2).unwrap().ideal;
        assert_eq!((i2.multiplicity(), i2.colength()), (2, 1));
        let s35 = sg(&[3, 5]);
        for n in 8..40 {
            assert_eq!(ic_ideal(&s35, n).unwrap().ideal.colength(), n - 4);
        }
    }

    #[test]
    fn products() {
        let s23 = sg(&[2, 3]);
        let i2 = ic_ideal(&s23, 2).unwrap().ideal;
        // (T^2, T^3)^2 = (T^4, T^5): T^5 is not a multiple of T^4 since 1 ∉ S.
        let p = i2.product(&i2).unwrap();
        assert_eq!(p.generators(), &[4, 5]);
        assert_eq!(p.multiplicity(), 4);
        let s25 = sg(&[2, 5]);
        let a = ic_ideal(&s25, 2).unwrap().ideal;
        let b = ic_ideal(&s25, 5).unwrap().ideal;
        assert_eq!(a.product(&b).unwrap().multiplicity(), 7);
        let i = SemigroupIdeal::new(s23.clone(), &[4, 5]).unwrap();
        let j = SemigroupIdeal::new(s23.clone(), &[2]).unwrap();
        assert_eq!(i.product(&j).unwrap().multiplicity(), 6);
        assert_eq!(i.product(&a), Err(Error::MixedSemigroups));
    }

    #[test]
    fn closures() {
        let s23 = sg(&[2, 3]);
        let c = SemigroupIdeal::new(s23.clone(), &[4, 5]).unwrap().closure();
        assert_eq!(c.elements_upto(8), vec![4, 5, 6, 7, 8]);
        let s35 = sg(&[3, 5]);
        let c = SemigroupIdeal::new(s35.clone(), &[5, 6]).unwrap().closure();
        assert_eq!(c.elements_upto(11), vec![5, 6, 8, 9, 10, 11]);
        assert_eq!(c, ic_ideal(&s35, 5).unwrap().ideal);
        let i = ic_ideal(&s35, 6).unwrap().ideal;
        assert_eq!(i.closure(), i);
    }

    #[test]
    fn sup_drop_examples() {
        assert_eq!(sup_relative_drop(&sg(&[2, 3])).unwrap().value, int(1));
        let r = sup_relative_drop(&sg(&[2, 5])).unwrap();
        assert_eq!((r.value, r.witness), (int(2), (2, 4)));
        let s35 = sg(&[3, 5]);
        let r = sup_relative_drop(&s35).unwrap();
        assert_eq!(r.value, int(2));
        assert!(r.value < int(s35.multiplicity() as i64));
        assert_eq!(sup_relative_drop(&sg(&[1])), Err(Error::RegularRing));
    }

    // The finite search must agree with an exhaustive scan far past the
    // conductor.
    #[test]
    fn sup_drop_matches_exhaustive_scan() {
        for gens in [&[2u64, 3][..], &[2, 5], &[3, 5], &[4, 7, 9], &[3, 7], &[5, 6, 13], &[4, 5]] {
            let s = NumericalSemigroup::new(gens).unwrap();
            let limit = 3 * s.conductor() + 20;
            let mut best = int(0);
            for m in s.elements_in(1, limit) {
                for n in s.elements_in(m + 1, limit) {
                    best = best.max(ic_relative_drop(&s, m, n).unwrap());
                }
            }
            assert_eq!(sup_relative_drop(&s).unwrap().value, best, "{gens:?}");
        }
    }

    #[test]
    fn ratio_trend() {
        let s = sg(&[3, 5]);
        let t = inf_ratio_trend(&s, 4000).unwrap();
        let at = |n: u64| t.points.iter().find(|p| p.0 == n).unwrap().1.clone();
        assert_eq!(at(8), int(2));
        assert_eq!(at(4000), ratio(4000, 3996));
        // 4000/3996 = 1.001001…, just above 1.001.
        assert!(at(4000) > ratio(1001, 1000));
        assert!(at(4000) < ratio(10011, 10000));
        assert!(t.points.iter().all(|(_, r)| *r > int(1)));
        for (n, r) in &t.points {
            assert!(*r <= int(1) + &t.constant / int(*n as i64));
        }
        let past: Vec<_> = t.points.iter().filter(|p| p.0 >= 8).collect();
        assert!(past.windows(2).all(|w| w[1].1 < w[0].1));
        assert!(inf_ratio_trend(&s, 5).is_err());
    }
}
