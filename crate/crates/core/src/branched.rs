//! Stanley–Reisner rings of facet complexes ("branched" rings): unions of
//! coordinate subspaces such as `k[[x,y]]/(xy)`.
//!
//! A monomial is nonzero in the ring iff its support lies in some facet.
//! Multiplicities follow the additivity formula over the top-dimensional
//! minimal primes `p_F = (x_j : j ∉ F)`, each with `ℓ(R_p) = 1`, and
//! `R/p_F` is the polynomial ring on the variables of `F`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{minimize, Exponent};
use crate::monomial::{box_points, MonomialIdeal};
use crate::rational::{int, Rational};
use crate::staircase::lattice_points_outside_union;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchedRing {
    ambient: usize,
    /// Zero-based, each sorted; the list itself sorted.
    facets: Vec<Vec<usize>>,
}

/// Wire shape `{"dim": d, "facets": [[1], [2, 3]]}` with one-based variables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingJson {
    pub dim: usize,
    pub facets: Vec<Vec<usize>>,
}

impl Serialize for BranchedRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingJson {
            dim: self.ambient,
            facets: self
                .facets
                .iter()
                .map(|f| f.iter().map(|i| i + 1).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BranchedRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RingJson::deserialize(d)?;
        BranchedRing::from_one_based(j.dim, &j.facets).map_err(serde::de::Error::custom)
    }
}

impl BranchedRing {
    /// Facets given with zero-based variable indices.
    pub fn new(ambient: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        if ambient == 0 || facets.is_empty() {
            return Err(Error::InvalidComplex("need at least one variable and one facet".into()));
        }
        let mut facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        facets.sort();
        facets.dedup();
        for f in &facets {
            if f.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            if let Some(&i) = f.iter().find(|&&i| i >= ambient) {
                return Err(Error::InvalidComplex(format!("variable {} out of range", i + 1)));
            }
        }
        for (i, f) in facets.iter().enumerate() {
            for (j, g) in facets.iter().enumerate() {
                if i != j && f.iter().all(|v| g.contains(v)) {
                    return Err(Error::InvalidComplex(format!(
                        "facet {:?} is contained in {:?}",
                        one_based(f),
                        one_based(g)
                    )));
                }
            }
        }
        if let Some(v) = (0..ambient).find(|v| !facets.iter().any(|f| f.contains(v))) {
            return Err(Error::InvalidComplex(format!("variable {} lies in no facet", v + 1)));
        }
        Ok(BranchedRing { ambient, facets })
    }

    pub fn from_one_based(ambient: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(facets.len());
        for f in facets {
            if f.contains(&0) {
                return Err(Error::InvalidComplex("variables are numbered from 1".into()));
            }
            zero_based.push(f.iter().map(|i| i - 1).collect());
        }
        BranchedRing::new(ambient, zero_based)
    }

    /// `k[[x_1, …, x_t]]/(x_i x_j : i ≠ j)`, the union of the coordinate axes.
    pub fn axes(t: usize) -> Self {
        BranchedRing::new(t, (0..t).map(|i| vec![i]).collect()).expect("valid complex")
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Krull dimension: the largest facet size.
    pub fn dim(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_equidimensional(&self) -> bool {
        self.facets.iter().all(|f| f.len() == self.dim())
    }

    pub fn top_facets(&self) -> Vec<&Vec<usize>> {
        let d = self.dim();
        self.facets.iter().filter(|f| f.len() == d).collect()
    }

    /// `e(R)`, the number of top-dimensional facets.
    pub fn multiplicity(&self) -> u64 {
        self.top_facets().len() as u64
    }

    /// `e_HK(R)`; equal to `e(R)` for these rings.
    pub fn hk_multiplicity(&self) -> Rational {
        int(self.multiplicity() as i64)
    }

    pub fn is_axes_ring(&self) -> bool {
        self.facets.iter().all(|f| f.len() == 1)
    }

    fn supports_monomial(&self, e: &Exponent) -> bool {
        let supp = e.support();
        self.facets
            .iter()
            .any(|f| supp.iter().all(|v| f.contains(v)))
    }
}

fn one_based(f: &[usize]) -> Vec<usize> {
    f.iter().map(|i| i + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchedIdeal {
    ring: Arc<BranchedRing>,
    gens: Vec<Exponent>,
}

/// Wire shape `{"ring": {...}, "gens": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchedIdealJson {
    pub ring: BranchedRing,
    pub gens: Vec<Vec<u32>>,
}

impl Serialize for BranchedIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BranchedIdealJson {
            ring: (*self.ring).clone(),
            gens: self.gens.iter().map(|g| g.coords().to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BranchedIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BranchedIdealJson::deserialize(d)?;
        BranchedIdeal::new(
            Arc::new(j.ring),
            j.gens.into_iter().map(Exponent::new).collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl BranchedIdeal {
    /// Rejects generators that vanish in the ring.
    pub fn new(ring: Arc<BranchedRing>, gens: Vec<Exponent>) -> Result<Self> {
        crate::exponent::check_dims(&gens, ring.ambient)?;
        for g in &gens {
            if g.is_zero() {
                return Err(Error::UnitIdeal);
            }
            if !ring.supports_monomial(g) {
                return Err(Error::ZeroGenerator(g.coords().to_vec()));
            }
        }
        Ok(BranchedIdeal {
            gens: minimize(&gens),
            ring,
        })
    }

    /// Like [`BranchedIdeal::new`] but silently drops monomials that are
    /// zero in the ring, as happens when multiplying ideals.
    fn from_ring_monomials(ring: Arc<BranchedRing>, gens: Vec<Exponent>) -> Result<Self> {
        let kept: Vec<Exponent> = gens
            .into_iter()
            .filter(|g| ring.supports_monomial(g))
            .collect();
        BranchedIdeal::new(ring, kept)
    }

    /// The maximal ideal.
    pub fn maximal(ring: Arc<BranchedRing>) -> Self {
        let d = ring.ambient;
        let gens = (0..d).map(|i| Exponent::pure_power(d, i, 1)).collect();
        BranchedIdeal::new(ring, gens).expect("variables are nonzero")
    }

    /// `(x_1^{a_1}, …, x_d^{a_d})`.
    pub fn pure_powers(ring: Arc<BranchedRing>, exps: &[u32]) -> Result<Self> {
        let d = ring.ambient;
        if exps.len() != d {
            return Err(Error::DimensionMismatch {
                index: 0,
                expected: d,
                got: exps.len(),
            });
        }
        if exps.contains(&0) {
            return Err(Error::UnitIdeal);
        }
        let gens = exps
            .iter()
            .enumerate()
            .map(|(i, &a)| Exponent::pure_power(d, i, a))
            .collect();
        BranchedIdeal::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<BranchedRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn contains(&self, monomial: &Exponent) -> bool {
        !self.ring.supports_monomial(monomial) || self.gens.iter().any(|g| g.divides(monomial))
    }

    pub fn contains_ideal(&self, other: &BranchedIdeal) -> bool {
        self.ring == other.ring && other.gens.iter().all(|g| self.contains(g))
    }

    /// Generators supported in `face`, projected to its variables; `None`
    /// when no generator survives.
    fn restrict_to_face(&self, face: &[usize]) -> Option<MonomialIdeal> {
        let gens: Vec<Exponent> = self
            .gens
            .iter()
            .filter(|g| g.support().iter().all(|v| face.contains(v)))
            .map(|g| g.project(face))
            .collect();
        if gens.is_empty() {
            None
        } else {
            Some(MonomialIdeal::new(face.len(), gens).expect("projected generators are valid"))
        }
    }

    /// Image of the ideal in `R/p_F = k[x_F]`.
    pub fn restrict(&self, facet: &[usize]) -> Result<MonomialIdeal> {
        let mut f = facet.to_vec();
        f.sort_unstable();
        if !self.ring.facets.contains(&f) {
            return Err(Error::UnknownFacet(one_based(&f)));
        }
        self.restrict_to_face(&f).ok_or(Error::NotMPrimary)
    }

    pub fn is_m_primary(&self) -> bool {
        self.ring.facets.iter().all(|f| {
            self.restrict_to_face(f)
                .is_some_and(|i| i.is_m_primary())
        })
    }

    fn require_m_primary(&self) -> Result<()> {
        if self.is_m_primary() {
            Ok(())
        } else {
            Err(Error::NotMPrimary)
        }
    }

    /// `ℓ(R/I)`: standard monomials supported on some facet, counted by
    /// inclusion–exclusion over intersections of facets.
    pub fn colength(&self) -> Result<u64> {
        self.require_m_primary()?;
        let facets = &self.ring.facets;
        let mut total: i128 = 0;
        for mask in 1u64..(1u64 << facets.len()) {
            let mut face: Vec<usize> = (0..self.ring.ambient).collect();
            for (i, f) in facets.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    face.retain(|v| f.contains(v));
                }
            }
            let count = self.face_count(&face)? as i128;
            if mask.count_ones() % 2 == 1 {
                total += count;
            } else {
                total -= count;
            }
        }
        Ok(total as u64)
    }

    /// Standard monomials supported in `face`.
    fn face_count(&self, face: &[usize]) -> Result<u64> {
        if face.is_empty() {
            return Ok(1);
        }
        let restricted = self.restrict_to_face(face).ok_or(Error::NotMPrimary)?;
        lattice_points_outside_union(restricted.gens(), face.len())
    }

    /// `e(I) = Σ_{top F} e(I·R/p_F)`.
    pub fn hs_multiplicity(&self) -> Result<u64> {
        self.require_m_primary()?;
        let mut total = 0;
        for f in self.ring.top_facets() {
            total += self.restrict(f)?.hs_multiplicity()?;
        }
        Ok(total)
    }

    /// `e_HK(I) = Σ_{top F} e_HK(I·R/p_F)`.
    pub fn hk_multiplicity(&self) -> Result<Rational> {
        self.require_m_primary()?;
        let mut total = int(0);
        for f in self.ring.top_facets() {
            total += self.restrict(f)?.hk_multiplicity()?;
        }
        Ok(total)
    }

    pub fn product(&self, other: &BranchedIdeal) -> Result<BranchedIdeal> {
        if self.ring != other.ring {
            return Err(Error::InvalidArgument("ideals live in different rings".into()));
        }
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.add(b)))
            .collect();
        BranchedIdeal::from_ring_monomials(self.ring.clone(), gens)
    }

    pub fn power(&self, k: u32) -> Result<BranchedIdeal> {
        if k == 0 {
            return Err(Error::UnitIdeal);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn frobenius_power(&self, q: u32) -> Result<BranchedIdeal> {
        if q == 0 {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        BranchedIdeal::new(self.ring.clone(), self.gens.iter().map(|g| g.scale(q)).collect())
    }

    /// Monomial integral closure: a monomial `u` is integral over `I` iff
    /// its image is integral over `I·R/p` for every minimal prime `p`, and
    /// the image vanishes unless `p = p_F` with `supp(u) ⊆ F`.
    pub fn integral_closure(&self) -> Result<BranchedIdeal> {
        self.require_m_primary()?;
        let facets = &self.ring.facets;
        let closures: Vec<MonomialIdeal> = facets
            .iter()
            .map(|f| self.restrict(f)?.integral_closure())
            .collect::<Result<_>>()?;
        let in_closure = |u: &Exponent| {
            let supp = u.support();
            facets.iter().zip(&closures).all(|(f, c)| {
                !supp.iter().all(|v| f.contains(v)) || c.contains(&u.project(f))
            })
        };
        let mut gens = self.gens.clone();
        for (f, restricted) in facets.iter().zip(facets.iter().map(|f| self.restrict(f))) {
            let restricted = restricted?;
            let bounds = crate::exponent::pure_power_bounds(restricted.gens(), f.len())?;
            for p in box_points(&bounds) {
                let u = p.embed(f, self.ring.ambient);
                if u.is_zero() || gens.iter().any(|g| g.divides(&u)) {
                    continue;
                }
                if in_closure(&u) {
                    gens.push(u);
                }
            }
        }
        BranchedIdeal::new(self.ring.clone(), gens)
    }

    pub fn is_integrally_closed(&self) -> Result<bool> {
        Ok(self.integral_closure()? == *self)
    }
}

/// All `(x_1^{a_1}, …, x_t^{a_t})` with `1 ≤ a_i ≤ bound` in a union of
/// coordinate axes, each checked to be integrally closed.
pub fn cross_enumerate_ic(ring: &Arc<BranchedRing>, bound: u32) -> Result<Vec<BranchedIdeal>> {
    if !ring.is_axes_ring() {
        return Err(Error::NotAxesRing);
    }
    let t = ring.ambient_dimension();
    let mut out = Vec::new();
    let mut exps = vec![1u32; t];
    loop {
        let ideal = BranchedIdeal::pure_powers(ring.clone(), &exps)?;
        if ideal.is_integrally_closed()? {
            out.push(ideal);
        }
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if exps[i] < bound {
                exps[i] += 1;
                for e in exps.iter_mut().skip(i + 1) {
                    *e = 1;
                }
                break;
            }
        }
    }
}

/// `k[x,y,z]/(xy, xz)`: the plane `{x = 0}` and the line `{y = z = 0}`.
pub fn plane_and_line() -> BranchedRing {
    BranchedRing::new(3, vec![vec![1, 2], vec![0]]).expect("valid complex")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonEquidimPoint {
    pub n: u32,
    pub ideal: BranchedIdeal,
    pub multiplicity: u64,
    pub colength: u64,
    /// `e(I_n)/ℓ(R/I_n)`.
    pub ratio: Rational,
    /// `(e(I_n) − e(m))/(ℓ(R/I_n) − ℓ(R/m))`.
    pub drop: Rational,
}

/// `I_n = (x^n, y, z)` in `k[x,y,z]/(xy, xz)`. Only the plane is
/// top-dimensional, so `e(I_n) = 1` while `ℓ(R/I_n) = n`.
pub fn nonequidim_family(n: u32) -> Result<NonEquidimPoint> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let ring = Arc::new(plane_and_line());
    let ideal = BranchedIdeal::pure_powers(ring.clone(), &[n, 1, 1])?;
    let m = BranchedIdeal::maximal(ring);
    let multiplicity = ideal.hs_multiplicity()?;
    let colength = ideal.colength()?;
    let e_m = m.hs_multiplicity()?;
    let l_m = m.colength()?;
    let ratio = Rational::new((multiplicity as i64).into(), (colength as i64).into());
    let drop = Rational::new(
        (multiplicity as i64 - e_m as i64).into(),
        (colength as i64 - l_m as i64).into(),
    );
    Ok(NonEquidimPoint {
        n,
        ideal,
        multiplicity,
        colength,
        ratio,
        drop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn cross() -> Arc<BranchedRing> {
        Arc::new(BranchedRing::axes(2))
    }

    // Independent oracle: enumerate monomials supported on some facet inside
    // a box and test them against the generators directly.
    fn brute_colength(i: &BranchedIdeal, side: u32) -> u64 {
        let d = i.ring().ambient_dimension();
        box_points(&vec![side; d])
            .into_iter()
            .filter(|u| i.ring().supports_monomial(u) && !i.gens().iter().any(|g| g.divides(u)))
            .count() as u64
    }

    #[test]
    fn ring_validation() {
        assert!(BranchedRing::from_one_based(2, &[vec![1], vec![1, 2]]).is_err());
        assert!(BranchedRing::from_one_based(3, &[vec![1], vec![2]]).is_err());
        assert!(BranchedRing::from_one_based(2, &[vec![0], vec![1]]).is_err());
        let r = plane_and_line();
        assert_eq!(r.dim(), 2);
        assert!(!r.is_equidimensional());
        assert_eq!(r.multiplicity(), 1);
        assert_eq!(BranchedRing::axes(2).multiplicity(), 2);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"dim":3,"facets":[[1],[2,3]]}"#);
        let back: BranchedRing = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn zero_generators_rejected() {
        assert_eq!(
            BranchedIdeal::new(cross(), vec![e(&[1, 1])]),
            Err(Error::ZeroGenerator(vec![1, 1]))
        );
    }

    #[test]
    fn restrictions() {
        let i = BranchedIdeal::pure_powers(cross(), &[2, 3]).unwrap();
        assert_eq!(i.restrict(&[0]).unwrap(), MonomialIdeal::parameter(&[2]).unwrap());
        let r = Arc::new(plane_and_line());
        let n = 5;
        let i = BranchedIdeal::pure_powers(r, &[n, 1, 1]).unwrap();
        assert_eq!(i.restrict(&[1, 2]).unwrap(), MonomialIdeal::maximal(2));
        assert_eq!(i.restrict(&[0]).unwrap(), MonomialIdeal::parameter(&[n]).unwrap());
        assert_eq!(i.restrict(&[0, 1]), Err(Error::UnknownFacet(vec![1, 2])));
    }

    #[test]
    fn cross_ring_values() {
        for a in 1..7 {
            for b in 1..7 {
                let i = BranchedIdeal::pure_powers(cross(), &[a, b]).unwrap();
                assert_eq!(i.colength().unwrap(), (a + b - 1) as u64);
                assert_eq!(i.colength().unwrap(), brute_colength(&i, 8));
                assert_eq!(i.hs_multiplicity().unwrap(), (a + b) as u64);
                assert_eq!(i.hk_multiplicity().unwrap(), int((a + b) as i64));
            }
        }
        let m = BranchedIdeal::maximal(cross());
        assert_eq!((m.colength().unwrap(), m.hs_multiplicity().unwrap()), (1, 2));
    }

    #[test]
    fn colength_matches_enumeration() {
        let rings = [
            BranchedRing::from_one_based(3, &[vec![1, 2], vec![2, 3]]).unwrap(),
            BranchedRing::from_one_based(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap(),
            plane_and_line(),
        ];
        for ring in rings {
            let ring = Arc::new(ring);
            let gens = vec![
                e(&[3, 0, 0]),
                e(&[0, 4, 0]),
                e(&[0, 0, 2]),
                e(&[1, 2, 0]),
                e(&[0, 1, 1]),
            ];
            let gens: Vec<Exponent> = gens.into_iter().filter(|g| ring.supports_monomial(g)).collect();
            let i = BranchedIdeal::new(ring.clone(), gens).unwrap();
            assert_eq!(i.colength().unwrap(), brute_colength(&i, 6));
            assert_eq!(BranchedIdeal::maximal(ring).colength().unwrap(), 1);
        }
    }

    #[test]
    fn nonequidim_examples() {
        let p = nonequidim_family(2).unwrap();
        assert_eq!((p.multiplicity, p.colength), (1, 2));
        assert_eq!(p.ratio, ratio(1, 2));
        // e(m) = 1 here: only the plane is top-dimensional.
        assert_eq!(p.drop, int(0));
        let p = nonequidim_family(100).unwrap();
        assert_eq!(p.ratio, ratio(1, 100));
        let i = &nonequidim_family(7).unwrap().ideal;
        assert_eq!(i.colength().unwrap(), brute_colength(i, 9));
    }

    #[test]
    fn cross_enumeration() {
        let list = cross_enumerate_ic(&cross(), 2).unwrap();
        let exps: Vec<Vec<Vec<u32>>> = list
            .iter()
            .map(|i| i.gens().iter().map(|g| g.coords().to_vec()).collect())
            .collect();
        assert_eq!(
            exps,
            vec![
                vec![vec![0, 1], vec![1, 0]],
                vec![vec![0, 2], vec![1, 0]],
                vec![vec![0, 1], vec![2, 0]],
                vec![vec![0, 2], vec![2, 0]],
            ]
        );
        assert!(list.iter().all(|i| i.gens().len() == 2));
        assert_eq!(
            cross_enumerate_ic(&Arc::new(plane_and_line()), 2),
            Err(Error::NotAxesRing)
        );
        assert_eq!(cross_enumerate_ic(&Arc::new(BranchedRing::axes(3)), 2).unwrap().len(), 8);
    }

    #[test]
    fn closure_in_two_planes() {
        // Facets {x,y} and {y,z}: closure works facet by facet.
        let ring = Arc::new(BranchedRing::from_one_based(3, &[vec![1, 2], vec![2, 3]]).unwrap());
        let i = BranchedIdeal::new(ring.clone(), vec![e(&[2, 0, 0]), e(&[0, 2, 0]), e(&[0, 0, 2])]).unwrap();
        let c = i.integral_closure().unwrap();
        assert!(c.contains(&e(&[1, 1, 0])));
        assert!(c.contains(&e(&[0, 1, 1])));
        assert!(!c.contains(&e(&[0, 1, 0])));
        assert_eq!(c.integral_closure().unwrap(), c);
        assert_eq!(c.hs_multiplicity().unwrap(), i.hs_multiplicity().unwrap());
    }
}
