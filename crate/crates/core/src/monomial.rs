//! Monomial ideals of `k[x_1, …, x_d]`, the model of a regular local ring
//! of dimension `d` (so `e(R) = e_HK(R) = 1`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{check_dims, minimize, pure_power_bounds, Exponent};
use crate::newton::{newton_covolume, newton_membership};
use crate::rational::{as_i64, int, Rational};
use crate::staircase::{INCLUSION_EXCLUSION_CAP, lattice_points_outside_union, volume_complement_union};

/// A monomial ideal stored as its antichain of minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealJson", into = "IdealJson")]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<Exponent>,
}

/// Wire shape `{"dim": d, "gens": [[e1, …, ed], …]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    pub dim: usize,
    pub gens: Vec<Vec<u32>>,
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;

    fn try_from(j: IdealJson) -> Result<Self> {
        MonomialIdeal::new(j.dim, j.gens.into_iter().map(Exponent::new).collect())
    }
}

impl From<MonomialIdeal> for IdealJson {
    fn from(i: MonomialIdeal) -> Self {
        IdealJson {
            dim: i.dim,
            gens: i.gens.iter().map(|g| g.coords().to_vec()).collect(),
        }
    }
}

impl MonomialIdeal {
    pub fn new(dim: usize, gens: Vec<Exponent>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        check_dims(&gens, dim)?;
        if gens.iter().any(Exponent::is_zero) {
            return Err(Error::UnitIdeal);
        }
        Ok(MonomialIdeal {
            dim,
            gens: minimize(&gens),
        })
    }

    /// The maximal ideal `(x_1, …, x_d)`.
    pub fn maximal(dim: usize) -> Self {
        let gens = (0..dim).map(|i| Exponent::pure_power(dim, i, 1)).collect();
        MonomialIdeal::new(dim, gens).expect("dim ≥ 1")
    }

    /// `(x_1^{a_1}, …, x_d^{a_d})`.
    pub fn parameter(exps: &[u32]) -> Result<Self> {
        let d = exps.len();
        if exps.contains(&0) {
            return Err(Error::UnitIdeal);
        }
        let gens = exps
            .iter()
            .enumerate()
            .map(|(i, &a)| Exponent::pure_power(d, i, a))
            .collect();
        MonomialIdeal::new(d, gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn is_m_primary(&self) -> bool {
        pure_power_bounds(&self.gens, self.dim).is_ok()
    }

    fn require_m_primary(&self) -> Result<Vec<u32>> {
        pure_power_bounds(&self.gens, self.dim).map_err(|_| Error::NotMPrimary)
    }

    pub fn contains(&self, monomial: &Exponent) -> bool {
        self.gens.iter().any(|g| g.divides(monomial))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// `ℓ(R/I)`, the number of standard monomials.
    pub fn colength(&self) -> Result<u64> {
        self.require_m_primary()?;
        lattice_points_outside_union(&self.gens, self.dim)
    }

    /// Standard monomials of `R/I` in lexicographic order.
    pub fn standard_monomials(&self) -> Result<Vec<Exponent>> {
        let bounds = self.require_m_primary()?;
        Ok(box_points(&bounds)
            .into_iter()
            .filter(|p| !self.contains(p))
            .collect())
    }

    /// Integral closure: the lattice points of the Newton polyhedron.
    pub fn integral_closure(&self) -> Result<MonomialIdeal> {
        self.require_m_primary()?;
        let vertices = self.newton_vertices()?;
        let mut gens = self.gens.clone();
        for p in self.standard_monomials()? {
            if gens.iter().any(|g| g.divides(&p)) {
                continue;
            }
            if newton_membership(&vertices, &p, self.dim)? {
                gens.push(p);
            }
        }
        MonomialIdeal::new(self.dim, gens)
    }

    /// Generators that are vertices of the Newton polyhedron; the others lie
    /// in the polyhedron spanned by the rest and can be dropped.
    ///
    /// Built incrementally so every membership query runs against the current
    /// vertex set, which stays small even when the generator set is large.
    pub fn newton_vertices(&self) -> Result<Vec<Exponent>> {
        let mut order: Vec<&Exponent> = self.gens.iter().collect();
        order.sort_by_key(|g| g.degree());
        let mut vertices: Vec<Exponent> = Vec::new();
        for g in order {
            if !vertices.is_empty() && newton_membership(&vertices, g, self.dim)? {
                continue;
            }
            vertices.push(g.clone());
            let mut i = 0;
            while i + 1 < vertices.len() {
                let others: Vec<Exponent> = vertices
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, v)| v.clone())
                    .collect();
                if newton_membership(&others, &vertices[i], self.dim)? {
                    vertices.remove(i);
                } else {
                    i += 1;
                }
            }
        }
        vertices.sort();
        Ok(vertices)
    }

    pub fn is_integrally_closed(&self) -> Result<bool> {
        Ok(self.integral_closure()? == *self)
    }

    /// `e(I) = d!·vol(ℝ^d_{≥0} ∖ NP(I))`, for `d ≤ 3`.
    pub fn hs_multiplicity(&self) -> Result<u64> {
        self.require_m_primary()?;
        let covolume = newton_covolume(&self.gens, self.dim)?;
        let e = covolume * int(factorial(self.dim) as i64);
        let e = as_i64(&e).expect("d!·covolume of a lattice polyhedron is an integer");
        Ok(e as u64)
    }

    /// `e_HK(I)`, the volume of the staircase complement. For monomial ideals
    /// of a polynomial ring this equals `ℓ(R/I)`; above the
    /// inclusion–exclusion cap the unit-cell count is returned directly.
    pub fn hk_multiplicity(&self) -> Result<Rational> {
        self.require_m_primary()?;
        let l = int(self.colength()? as i64);
        if self.gens.len() > INCLUSION_EXCLUSION_CAP {
            return Ok(l);
        }
        let v = volume_complement_union(&self.gens, self.dim)?;
        assert_eq!(v, l, "staircase volume disagrees with the cell count");
        Ok(v)
    }

    /// `I·J`.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                index: 0,
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.add(b));
            }
        }
        MonomialIdeal::new(self.dim, gens)
    }

    /// `I + J`.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.dim, gens)
    }

    /// `I^k`; `k = 0` is rejected since `R` itself is not m-primary.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Err(Error::UnitIdeal);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I^{[q]}`, generated by the `q`-th powers of the generators.
    pub fn frobenius_power(&self, q: u32) -> Result<MonomialIdeal> {
        if q == 0 {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        MonomialIdeal::new(self.dim, self.gens.iter().map(|g| g.scale(q)).collect())
    }

    /// `Some(a)` when `I = (x_1^{a_1}, …, x_d^{a_d})`.
    pub fn parameter_exponents(&self) -> Option<Vec<u32>> {
        if self.gens.len() != self.dim {
            return None;
        }
        let mut exps = vec![0; self.dim];
        for g in &self.gens {
            let (axis, k) = g.as_pure_power()?;
            exps[axis] = k;
        }
        exps.iter().all(|&a| a > 0).then_some(exps)
    }
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All lattice points of `[0, b_1) × … × [0, b_d)` in lexicographic order.
pub(crate) fn box_points(bounds: &[u32]) -> Vec<Exponent> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * b as usize);
        for prefix in &out {
            for c in 0..b {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Exponent::new).collect()
}

/// Outcome of comparing `e(I)` with `d!·e(R)·ℓ(R/I)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LechCheck {
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

/// Lech's inequality `e(I) ≤ d!·e(R)·ℓ(R/I)` with `e(R) = 1`.
pub fn check_lech(i: &MonomialIdeal) -> Result<LechCheck> {
    let lhs = i.hs_multiplicity()?;
    let rhs = factorial(i.dim()) * i.colength()?;
    Ok(LechCheck {
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeHkCheck {
    #[serde(with = "crate::rational::as_record")]
    pub drop: Rational,
    pub colength_diff: u64,
    pub holds: bool,
}

/// For `J ⊆ I`: `e_HK(J) − e_HK(I)` against `ℓ(I/J)`.
pub fn check_relative_hk(j: &MonomialIdeal, i: &MonomialIdeal) -> Result<RelativeHkCheck> {
    if j.dim() != i.dim() || !i.contains_ideal(j) {
        return Err(Error::NotNested);
    }
    let drop = j.hk_multiplicity()? - i.hk_multiplicity()?;
    let colength_diff = j.colength()? - i.colength()?;
    let holds = drop >= int(colength_diff as i64);
    Ok(RelativeHkCheck {
        drop,
        colength_diff,
        holds,
    })
}

/// `e_HK(mJ) − e_HK(J)` for a parameter ideal `J`; equals `d·e_HK(R) = d`.
pub fn param_socle_drop(j: &MonomialIdeal) -> Result<Rational> {
    if j.parameter_exponents().is_none() {
        return Err(Error::NotParameter);
    }
    let mj = MonomialIdeal::maximal(j.dim()).product(j)?;
    let drop = mj.hk_multiplicity()? - j.hk_multiplicity()?;
    debug_assert_eq!(drop, int(j.dim() as i64));
    Ok(drop)
}

/// The pair `a = m^n ⊆ b = m^n + (x_1^{n−1})` and its relative drop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupDropWitness {
    pub n: u32,
    pub dim: usize,
    pub a: MonomialIdeal,
    pub b: MonomialIdeal,
    pub e_a: u64,
    pub e_b: u64,
    pub colength_diff: u64,
    #[serde(with = "crate::rational::as_record")]
    pub drop: Rational,
}

pub fn sup_drop_witness(n: u32, d: usize) -> Result<SupDropWitness> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidArgument("need n ≥ 2 and d ≥ 2".into()));
    }
    let a = MonomialIdeal::maximal(d).power(n)?;
    let b = a.sum(&MonomialIdeal::new(d, vec![Exponent::pure_power(d, 0, n - 1)])?)?;
    let e_a = a.hs_multiplicity()?;
    let e_b = b.hs_multiplicity()?;
    let colength_diff = a.colength()? - b.colength()?;
    let drop = Rational::new((e_a as i64 - e_b as i64).into(), (colength_diff as i64).into());
    Ok(SupDropWitness {
        n,
        dim: d,
        a,
        b,
        e_a,
        e_b,
        colength_diff,
        drop,
    })
}

/// `e(I)/ℓ(R/I)`.
pub fn hs_ratio(i: &MonomialIdeal) -> Result<Rational> {
    Ok(Rational::new(
        (i.hs_multiplicity()? as i64).into(),
        (i.colength()? as i64).into(),
    ))
}

/// `(e(I) − e(J))/(ℓ(R/I) − ℓ(R/J))` for `I ⊊ J`; `None` when the colengths
/// coincide.
pub fn hs_relative_drop(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Option<Rational>> {
    if !j.contains_ideal(i) {
        return Err(Error::NotNested);
    }
    let dl = i.colength()? as i64 - j.colength()? as i64;
    if dl == 0 {
        return Ok(None);
    }
    let de = i.hs_multiplicity()? as i64 - j.hs_multiplicity()? as i64;
    Ok(Some(Rational::new(de.into(), dl.into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::sample::{instance_rng, random_ideal, SamplerConfig};
    use proptest::prelude::*;

    fn ideal(d: usize, v: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(d, v.iter().map(|c| Exponent::new(c.to_vec())).collect()).unwrap()
    }

    fn m_power(d: usize, n: u32) -> MonomialIdeal {
        MonomialIdeal::maximal(d).power(n).unwrap()
    }

    #[test]
    fn colength_examples() {
        assert_eq!(ideal(2, &[&[2, 0], &[0, 3]]).colength().unwrap(), 6);
        assert_eq!(m_power(2, 2).colength().unwrap(), 3);
        for n in 1..10u64 {
            assert_eq!(m_power(2, n as u32).colength().unwrap(), n * (n + 1) / 2);
        }
        assert_eq!(ideal(2, &[&[2, 0], &[1, 1]]).colength(), Err(Error::NotMPrimary));
    }

    #[test]
    fn newton_vertices_drop_interior_generators() {
        let i = ideal(2, &[&[4, 0], &[2, 2], &[3, 1], &[1, 3], &[0, 4]]);
        assert_eq!(
            i.newton_vertices().unwrap(),
            vec![Exponent::new(vec![0, 4]), Exponent::new(vec![4, 0])]
        );
        let i = ideal(2, &[&[4, 0], &[1, 1], &[0, 4]]);
        assert_eq!(i.newton_vertices().unwrap().len(), 3);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            ideal(2, &[&[2, 0], &[0, 2]]).integral_closure().unwrap(),
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
        );
        assert_eq!(
            MonomialIdeal::maximal(2).integral_closure().unwrap(),
            MonomialIdeal::maximal(2)
        );
        assert_eq!(
            ideal(2, &[&[3, 0], &[0, 3]]).integral_closure().unwrap(),
            ideal(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]])
        );
    }

    #[test]
    fn multiplicity_examples() {
        for (a, b) in [(1u32, 1u32), (2, 3), (4, 7)] {
            let i = MonomialIdeal::parameter(&[a, b]).unwrap();
            assert_eq!(i.hs_multiplicity().unwrap(), (a * b) as u64);
            assert_eq!(i.hk_multiplicity().unwrap(), int((a * b) as i64));
        }
        for n in 2..8u32 {
            assert_eq!(m_power(2, n).hs_multiplicity().unwrap(), (n * n) as u64);
            let w = sup_drop_witness(n, 2).unwrap();
            assert_eq!(w.e_b, (n * n - n) as u64);
        }
        assert_eq!(m_power(2, 2).hk_multiplicity().unwrap(), int(3));
        // 26 generators, past the inclusion–exclusion cap.
        assert_eq!(m_power(2, 25).hk_multiplicity().unwrap(), int(325));
        for d in 1..5 {
            assert_eq!(MonomialIdeal::maximal(d).hk_multiplicity().unwrap(), int(1));
        }
        assert_eq!(
            MonomialIdeal::maximal(4).hs_multiplicity(),
            Err(Error::DimensionUnsupported(4))
        );
    }

    #[test]
    fn powers() {
        let m = MonomialIdeal::maximal(2);
        assert_eq!(m.frobenius_power(3).unwrap(), ideal(2, &[&[3, 0], &[0, 3]]));
        assert_eq!(m.power(2).unwrap(), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(m_power(2, 2).frobenius_power(2).unwrap().colength().unwrap(), 12);
    }

    #[test]
    fn lech_examples() {
        assert_eq!(
            check_lech(&MonomialIdeal::maximal(2)).unwrap(),
            LechCheck { lhs: 1, rhs: 2, holds: true }
        );
        assert_eq!(
            check_lech(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap(),
            LechCheck { lhs: 6, rhs: 12, holds: true }
        );
        for n in 1..8u64 {
            assert_eq!(
                check_lech(&m_power(2, n as u32)).unwrap(),
                LechCheck { lhs: n * n, rhs: n * (n + 1), holds: true }
            );
        }
    }

    #[test]
    fn relative_hk_examples() {
        let m = MonomialIdeal::maximal(2);
        let m2 = m_power(2, 2);
        let r = check_relative_hk(&m2, &m).unwrap();
        assert_eq!((r.drop, r.colength_diff, r.holds), (int(2), 2, true));
        let r = check_relative_hk(&m, &m).unwrap();
        assert_eq!((r.drop, r.colength_diff, r.holds), (int(0), 0, true));
        assert_eq!(check_relative_hk(&m, &m2), Err(Error::NotNested));
    }

    #[test]
    fn socle_drop_examples() {
        assert_eq!(param_socle_drop(&MonomialIdeal::parameter(&[2, 3]).unwrap()).unwrap(), int(2));
        assert_eq!(param_socle_drop(&MonomialIdeal::maximal(2)).unwrap(), int(2));
        // e_HK(m^2) = 4 and e_HK(m) = 1 in three variables.
        let m3 = MonomialIdeal::maximal(3);
        assert_eq!(m3.power(2).unwrap().hk_multiplicity().unwrap(), int(4));
        assert_eq!(param_socle_drop(&m3).unwrap(), int(3));
        assert_eq!(param_socle_drop(&m_power(2, 2)), Err(Error::NotParameter));
    }

    #[test]
    fn sup_drop_examples() {
        assert_eq!(sup_drop_witness(3, 2).unwrap().drop, int(3));
        let w = sup_drop_witness(2, 2).unwrap();
        assert_eq!((w.e_a, w.e_b, w.colength_diff), (4, 2, 1));
        assert_eq!(w.drop, int(2));
        assert_eq!(sup_drop_witness(4, 3).unwrap().drop, int(16));
        assert_eq!(hs_ratio(&m_power(2, 3)).unwrap(), ratio(9, 6));
    }

    fn sampled(seed: u64, d: usize) -> MonomialIdeal {
        let mut rng = instance_rng(seed, 0);
        random_ideal(&mut rng, d, &SamplerConfig::default())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn closure_properties(seed in any::<u64>(), d in 2usize..4) {
            let i = sampled(seed, d);
            let c = i.integral_closure().unwrap();
            prop_assert!(c.contains_ideal(&i));
            prop_assert_eq!(c.integral_closure().unwrap(), c.clone());
            prop_assert_eq!(c.hs_multiplicity().unwrap(), i.hs_multiplicity().unwrap());
            prop_assert!(c.hs_multiplicity().unwrap() >= c.colength().unwrap());
            // Monotone: I·m ⊆ I, so closure(I·m) ⊆ closure(I).
            let smaller = i.product(&MonomialIdeal::maximal(d)).unwrap();
            prop_assert!(c.contains_ideal(&smaller.integral_closure().unwrap()));
        }

        #[test]
        fn frobenius_scaling(seed in any::<u64>(), d in 1usize..4, q in 1u32..5) {
            let i = sampled(seed, d);
            let l = i.colength().unwrap();
            prop_assert_eq!(i.frobenius_power(q).unwrap().colength().unwrap(), (q as u64).pow(d as u32) * l);
            prop_assert_eq!(i.hk_multiplicity().unwrap(), int(l as i64));
        }
    }
}
