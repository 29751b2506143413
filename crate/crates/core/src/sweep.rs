//! Watanabe chains and bounded extremal searches for the four quantities
//! comparing multiplicity with colength.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branched::{plane_and_line, BranchedIdeal, BranchedRing};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::monomial::{factorial, MonomialIdeal};
use crate::rational::{self, int, Rational};
use crate::sample::{instance_rng, random_ideal, SamplerConfig};
use crate::semigroup::{ic_ideal, sup_relative_drop, NumericalSemigroup, SemigroupIdeal};

/// Above this many enumerated ideals the "all ideals" semigroup sweep bails out.
pub const ALL_CLASS_LIMIT: usize = 200_000;

/// Random ideals drawn per coordinate bound in the polynomial model.
pub const SAMPLES_PER_BOUND: u64 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    RatioSup,
    RatioInf,
    DropSup,
    DropInf,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [
        Quantity::RatioSup,
        Quantity::RatioInf,
        Quantity::DropSup,
        Quantity::DropInf,
    ];

    fn is_sup(self) -> bool {
        matches!(self, Quantity::RatioSup | Quantity::DropSup)
    }

    fn is_drop(self) -> bool {
        matches!(self, Quantity::DropSup | Quantity::DropInf)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureClass {
    All,
    IntegrallyClosed,
}

/// Which multiplicity is compared with colength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    HilbertSamuel,
    HilbertKunz,
}

macro_rules! snake_case_str {
    ($ty:ty, $($variant:path => $name:literal),+ $(,)?) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $name),+ })
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($variant),)+
                    other => Err(Error::InvalidArgument(format!("unknown value '{other}'"))),
                }
            }
        }
    };
}

snake_case_str!(Quantity,
    Quantity::RatioSup => "ratio_sup",
    Quantity::RatioInf => "ratio_inf",
    Quantity::DropSup => "drop_sup",
    Quantity::DropInf => "drop_inf",
);
snake_case_str!(ClosureClass,
    ClosureClass::All => "all",
    ClosureClass::IntegrallyClosed => "integrally_closed",
);
snake_case_str!(Theory,
    Theory::HilbertSamuel => "hs",
    Theory::HilbertKunz => "hk",
);

/// An enumerable family of m-primary ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Family {
    /// `k[[S]]`, ideals up to valuation `bound`.
    Semigroup { generators: Vec<u64> },
    /// `k[[x_1..x_d]]`: seeded random ideals with coordinates `≤ bound`,
    /// plus `m^n`, `m^n + (x_1^{n-1})` and `(x_1^2, x_2, …, x_d)`.
    Monomial { dim: usize, seed: u64 },
    /// `k[[x,y]]/(xy)`, ideals `(x^a, y^b)` with `a, b ≤ bound`.
    Cross,
    /// `k[[x,y,z]]/(xy,xz)`, pure-power ideals and powers of `m`.
    NonEquidim,
}

impl FromStr for Family {
    type Err = Error;

    /// `semigroup:3,5`, `monomial:2`, `monomial:3:7` (seed 7), `cross`,
    /// `nonequidim`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownFamily(s.to_string());
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        match (head, rest.as_slice()) {
            ("semigroup", [gens]) => {
                let generators = gens
                    .split(',')
                    .map(|g| g.trim().parse::<u64>().map_err(|_| unknown()))
                    .collect::<Result<Vec<u64>>>()?;
                Ok(Family::Semigroup { generators })
            }
            ("monomial", [d]) | ("monomial", [d, _]) => {
                let dim = d.parse().map_err(|_| unknown())?;
                let seed = match rest.get(1) {
                    Some(v) => v.parse().map_err(|_| unknown())?,
                    None => 0,
                };
                if !(1..=3).contains(&dim) {
                    return Err(Error::DimensionUnsupported(dim));
                }
                Ok(Family::Monomial { dim, seed })
            }
            ("cross", []) => Ok(Family::Cross),
            ("nonequidim", []) => Ok(Family::NonEquidim),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Semigroup { generators } => {
                let g: Vec<String> = generators.iter().map(u64::to_string).collect();
                write!(f, "semigroup:{}", g.join(","))
            }
            Family::Monomial { dim, seed } => write!(f, "monomial:{dim}:{seed}"),
            Family::Cross => f.write_str("cross"),
            Family::NonEquidim => f.write_str("nonequidim"),
        }
    }
}

/// Any of the three ideal models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyIdeal {
    Semigroup(SemigroupIdeal),
    Monomial(MonomialIdeal),
    Branched(BranchedIdeal),
}

impl AnyIdeal {
    pub fn colength(&self) -> Result<u64> {
        match self {
            AnyIdeal::Semigroup(i) => Ok(i.colength()),
            AnyIdeal::Monomial(i) => i.colength(),
            AnyIdeal::Branched(i) => i.colength(),
        }
    }

    pub fn multiplicity(&self, theory: Theory) -> Result<Rational> {
        match (self, theory) {
            (AnyIdeal::Semigroup(i), _) => Ok(int(i.multiplicity() as i64)),
            (AnyIdeal::Monomial(i), Theory::HilbertSamuel) => Ok(int(i.hs_multiplicity()? as i64)),
            (AnyIdeal::Monomial(i), Theory::HilbertKunz) => i.hk_multiplicity(),
            (AnyIdeal::Branched(i), Theory::HilbertSamuel) => Ok(int(i.hs_multiplicity()? as i64)),
            (AnyIdeal::Branched(i), Theory::HilbertKunz) => i.hk_multiplicity(),
        }
    }

    pub fn contains_ideal(&self, other: &AnyIdeal) -> bool {
        match (self, other) {
            (AnyIdeal::Semigroup(a), AnyIdeal::Semigroup(b)) => a.contains_ideal(b),
            (AnyIdeal::Monomial(a), AnyIdeal::Monomial(b)) => a.contains_ideal(b),
            (AnyIdeal::Branched(a), AnyIdeal::Branched(b)) => a.contains_ideal(b),
            _ => false,
        }
    }

    pub fn is_integrally_closed(&self) -> Result<bool> {
        match self {
            AnyIdeal::Semigroup(i) => Ok(i.is_integrally_closed()),
            AnyIdeal::Monomial(i) => i.is_integrally_closed(),
            AnyIdeal::Branched(i) => i.is_integrally_closed(),
        }
    }

    /// Generator list used for lexicographic tie-breaking.
    pub fn key(&self) -> Vec<Vec<u64>> {
        let lift = |gens: &[Exponent]| -> Vec<Vec<u64>> {
            gens.iter()
                .map(|g| g.coords().iter().map(|&c| c as u64).collect())
                .collect()
        };
        match self {
            AnyIdeal::Semigroup(i) => i.generators().iter().map(|&g| vec![g]).collect(),
            AnyIdeal::Monomial(i) => lift(i.gens()),
            AnyIdeal::Branched(i) => lift(i.gens()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AnyIdeal::Semigroup(i) => serde_json::to_value(i),
            AnyIdeal::Monomial(i) => serde_json::to_value(i),
            AnyIdeal::Branched(i) => serde_json::to_value(i),
        }
        .expect("ideals serialize")
    }
}

/// A fraction with positive denominator, small enough for `i128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn new(num: i128, den: i128) -> Frac {
        debug_assert!(den != 0);
        if den < 0 {
            Frac { num: -num, den: -den }
        } else {
            Frac { num, den }
        }
    }

    fn from_rational(r: &Rational) -> Frac {
        let num = r.numer().to_i128().expect("multiplicity fits in i128");
        let den = r.denom().to_i128().expect("multiplicity fits in i128");
        Frac::new(num, den)
    }

    fn sub(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    fn div_int(self, k: i128) -> Frac {
        Frac::new(self.num, self.den * k)
    }

    fn cmp_value(&self, o: &Frac) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }

    fn to_rational(self) -> Rational {
        Rational::new(self.num.into(), self.den.into())
    }
}

struct Item {
    ideal: AnyIdeal,
    key: Vec<Vec<u64>>,
    multiplicity: Frac,
    colength: u64,
    /// Enumeration bound at which the ideal first appears.
    tag: u64,
}

enum Pairs {
    /// Index pairs `(smaller, larger)`.
    Explicit(Vec<(usize, usize)>),
    /// Items form a descending chain: every `i < j` gives `items[j] ⊊ items[i]`.
    Chain,
}

struct Enumeration {
    items: Vec<Item>,
    pairs: Pairs,
    /// Krull dimension of the ring.
    dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepValue {
    Exact {
        #[serde(with = "crate::rational::as_record")]
        value: Rational,
    },
    /// The quantity is predicted infinite; `witness_value` is the largest
    /// value found at this bound.
    Diverging {
        #[serde(with = "crate::rational::as_record")]
        witness_value: Rational,
    },
}

impl SweepValue {
    pub fn value(&self) -> &Rational {
        match self {
            SweepValue::Exact { value } => value,
            SweepValue::Diverging { witness_value } => witness_value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Ideal {
        ideal: serde_json::Value,
        multiplicity: RationalField,
        colength: u64,
    },
    Pair {
        smaller: serde_json::Value,
        larger: serde_json::Value,
        multiplicities: [RationalField; 2],
        colengths: [u64; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RationalField(#[serde(with = "crate::rational::as_record")] pub Rational);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrendPoint {
    pub bound: u64,
    #[serde(with = "crate::rational::as_record")]
    pub value: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PredictedValue {
    Exact {
        #[serde(with = "crate::rational::as_record")]
        value: Rational,
    },
    Diverging,
    /// No value is asserted.
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub statement: String,
    pub value: PredictedValue,
    /// `Some(true)` when the extremum is asserted to be attained,
    /// `Some(false)` when asserted not to be, `None` when unstated.
    pub attained: Option<bool>,
    /// `None` when there is nothing to compare against.
    pub matched: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub quantity: Quantity,
    pub closure_class: ClosureClass,
    pub theory: Theory,
    pub family: Family,
    pub bound: u64,
    pub ideals_enumerated: usize,
    pub pairs_enumerated: usize,
    pub value: SweepValue,
    pub witness: Witness,
    /// Recomputing the value from the witness ideals reproduced it.
    pub witness_verified: bool,
    pub trend: Vec<TrendPoint>,
    pub trend_direction: Direction,
    pub trend_monotone: bool,
    pub prediction: Prediction,
}

/// Runs one bounded search.
pub fn compute_invariant(
    quantity: Quantity,
    closure_class: ClosureClass,
    theory: Theory,
    family: &Family,
    bound: u64,
) -> Result<SweepReport> {
    if bound < 2 {
        return Err(Error::InvalidArgument("bound must be at least 2".into()));
    }
    let en = enumerate(family, closure_class, theory, quantity, bound)?;
    let norm = if quantity == Quantity::RatioSup && theory == Theory::HilbertSamuel {
        factorial(en.dim) as i128
    } else {
        1
    };
    let sup = quantity.is_sup();
    let better = |a: &Candidate, b: &Candidate, items: &[Item]| -> bool {
        match a.value.cmp_value(&b.value) {
            Ordering::Greater => sup,
            Ordering::Less => !sup,
            Ordering::Equal => a.key_cmp(b, items) == Ordering::Less,
        }
    };
    let items = &en.items;

    // Best candidate per tag, then prefix extrema give the trend.
    let per_tag: BTreeMap<u64, Candidate> = if quantity.is_drop() {
        let pairs: Box<dyn Fn(usize) -> Vec<(usize, usize)> + Sync> = match &en.pairs {
            Pairs::Explicit(p) => {
                let p = p.clone();
                Box::new(move |chunk| {
                    p.iter().skip(chunk * 4096).take(4096).copied().collect()
                })
            }
            Pairs::Chain => Box::new(move |i| ((i + 1)..items.len()).map(|j| (j, i)).collect()),
        };
        let chunks = match &en.pairs {
            Pairs::Explicit(p) => p.len().div_ceil(4096),
            Pairs::Chain => items.len(),
        };
        (0..chunks)
            .into_par_iter()
            .fold(BTreeMap::new, |mut acc: BTreeMap<u64, Candidate>, chunk| {
                for (s, l) in pairs(chunk) {
                    let (a, b) = (&items[s], &items[l]);
                    let dl = a.colength as i128 - b.colength as i128;
                    debug_assert!(dl > 0);
                    let value = a.multiplicity.sub(b.multiplicity).div_int(dl);
                    let c = Candidate {
                        value,
                        smaller: s,
                        larger: Some(l),
                    };
                    merge(&mut acc, a.tag.max(b.tag), c, &better, items);
                }
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (tag, c) in b {
                    merge(&mut a, tag, c, &better, items);
                }
                a
            })
    } else {
        (0..items.len())
            .into_par_iter()
            .fold(BTreeMap::new, |mut acc: BTreeMap<u64, Candidate>, i| {
                let it = &items[i];
                let value = it.multiplicity.div_int(norm * it.colength as i128);
                let c = Candidate {
                    value,
                    smaller: i,
                    larger: None,
                };
                merge(&mut acc, it.tag, c, &better, items);
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (tag, c) in b {
                    merge(&mut a, tag, c, &better, items);
                }
                a
            })
    };

    let mut running: Option<Candidate> = None;
    let mut prefix = Vec::new();
    for (&tag, c) in &per_tag {
        running = Some(match running {
            Some(r) if !better(c, &r, items) => r,
            _ => c.clone(),
        });
        prefix.push((tag, running.clone().expect("just set")));
    }
    let best = prefix
        .last()
        .map(|(_, c)| c.clone())
        .ok_or_else(|| Error::InvalidArgument("enumeration is empty at this bound".into()))?;
    let trend = sample_trend(&prefix);
    let direction = if sup {
        Direction::NonDecreasing
    } else {
        Direction::NonIncreasing
    };
    let trend_monotone = trend.windows(2).all(|w| match direction {
        Direction::NonDecreasing => w[0].value <= w[1].value,
        Direction::NonIncreasing => w[0].value >= w[1].value,
    });

    let (witness, recomputed) = witness_of(&best, items, theory, norm)?;
    let value_r = best.value.to_rational();
    let prediction_value = predict(family, closure_class, theory, quantity, en.dim)?;
    let diverging = prediction_value.value == PredictedValue::Diverging;
    let value = if diverging {
        SweepValue::Diverging {
            witness_value: value_r.clone(),
        }
    } else {
        SweepValue::Exact {
            value: value_r.clone(),
        }
    };
    let prediction = judge(prediction_value, &value_r, sup, &trend, bound, en.dim);
    let pairs_enumerated = if quantity.is_drop() {
        match &en.pairs {
            Pairs::Explicit(p) => p.len(),
            Pairs::Chain => items.len() * items.len().saturating_sub(1) / 2,
        }
    } else {
        0
    };
    Ok(SweepReport {
        quantity,
        closure_class,
        theory,
        family: family.clone(),
        bound,
        ideals_enumerated: items.len(),
        pairs_enumerated,
        value,
        witness,
        witness_verified: recomputed == value_r,
        trend,
        trend_direction: direction,
        trend_monotone,
        prediction,
    })
}

/// All four quantities for one family, class and theory.
pub fn compute_table(
    closure_class: ClosureClass,
    theory: Theory,
    family: &Family,
    bound: u64,
) -> Result<Vec<SweepReport>> {
    Quantity::ALL
        .iter()
        .map(|&q| compute_invariant(q, closure_class, theory, family, bound))
        .collect()
}

#[derive(Debug, Clone)]
struct Candidate {
    value: Frac,
    smaller: usize,
    larger: Option<usize>,
}

impl Candidate {
    fn key_cmp(&self, other: &Candidate, items: &[Item]) -> Ordering {
        items[self.smaller]
            .key
            .cmp(&items[other.smaller].key)
            .then_with(|| {
                let k = |c: &Candidate| c.larger.map(|l| &items[l].key);
                k(self).cmp(&k(other))
            })
    }
}

fn merge(
    acc: &mut BTreeMap<u64, Candidate>,
    tag: u64,
    c: Candidate,
    better: &impl Fn(&Candidate, &Candidate, &[Item]) -> bool,
    items: &[Item],
) {
    match acc.get(&tag) {
        Some(cur) if !better(&c, cur, items) => {}
        _ => {
            acc.insert(tag, c);
        }
    }
}

/// At most about twelve trend points, always including the first and last.
fn sample_trend(prefix: &[(u64, Candidate)]) -> Vec<TrendPoint> {
    let n = prefix.len();
    let step = n.div_ceil(12).max(1);
    let mut idx: Vec<usize> = (0..n).step_by(step).collect();
    if idx.last() != Some(&(n - 1)) {
        idx.push(n - 1);
    }
    idx.into_iter()
        .map(|i| TrendPoint {
            bound: prefix[i].0,
            value: prefix[i].1.value.to_rational(),
        })
        .collect()
}

/// Builds the witness record and recomputes its value from scratch.
fn witness_of(best: &Candidate, items: &[Item], theory: Theory, norm: i128) -> Result<(Witness, Rational)> {
    let a = &items[best.smaller];
    let ea = a.ideal.multiplicity(theory)?;
    let la = a.ideal.colength()?;
    match best.larger {
        None => {
            let value = &ea / int((norm * la as i128) as i64);
            Ok((
                Witness::Ideal {
                    ideal: a.ideal.to_json(),
                    multiplicity: RationalField(ea),
                    colength: la,
                },
                value,
            ))
        }
        Some(l) => {
            let b = &items[l];
            let eb = b.ideal.multiplicity(theory)?;
            let lb = b.ideal.colength()?;
            let nested = b.ideal.contains_ideal(&a.ideal) && la > lb;
            let value = if nested {
                (&ea - &eb) / int(la as i64 - lb as i64)
            } else {
                int(-1)
            };
            Ok((
                Witness::Pair {
                    smaller: a.ideal.to_json(),
                    larger: b.ideal.to_json(),
                    multiplicities: [RationalField(ea), RationalField(eb)],
                    colengths: [la, lb],
                },
                value,
            ))
        }
    }
}

fn judge(p: Prediction, value: &Rational, sup: bool, trend: &[TrendPoint], bound: u64, dim: usize) -> Prediction {
    let matched = match &p.value {
        PredictedValue::Open => None,
        PredictedValue::Diverging => {
            // The structured witnesses give n^{d-1} at n = bound.
            let target = int((bound as i64).pow(dim as u32 - 1));
            let strictly_increasing = trend.windows(2).all(|w| w[0].value < w[1].value);
            Some(*value >= target && strictly_increasing && trend.len() >= 2)
        }
        PredictedValue::Exact { value: target } => Some(match p.attained {
            Some(true) => value == target,
            Some(false) => {
                if sup {
                    value < target
                } else {
                    value > target
                }
            }
            None => {
                if sup {
                    value <= target
                } else {
                    value >= target
                }
            }
        }),
    };
    Prediction { matched, ..p }
}

fn pred(statement: &str, value: PredictedValue, attained: Option<bool>) -> Prediction {
    Prediction {
        statement: statement.to_string(),
        value,
        attained,
        matched: None,
    }
}

fn exact(v: Rational) -> PredictedValue {
    PredictedValue::Exact { value: v }
}

/// The asserted value of each table cell for the modelled rings.
fn predict(
    family: &Family,
    class: ClosureClass,
    theory: Theory,
    q: Quantity,
    dim: usize,
) -> Result<Prediction> {
    use ClosureClass::*;
    use Quantity::*;
    use Theory::*;
    Ok(match family {
        Family::Semigroup { generators } => {
            // Dimension one: e_HK = e, so both theories share every cell.
            let s = NumericalSemigroup::new(generators)?;
            let e = int(s.multiplicity() as i64);
            let regular = s.is_regular();
            match (q, class) {
                (RatioSup, _) => pred("sup = e(R), attained at m (Lech in dimension one)", exact(e), Some(true)),
                (RatioInf, All) => pred("inf = 1/n(R) = 1 (Cohen–Macaulay)", exact(int(1)), None),
                (RatioInf, IntegrallyClosed) => pred(
                    "inf = 1 (the ring is a domain); attained only if R is regular",
                    exact(int(1)),
                    Some(regular),
                ),
                (DropSup, All) => pred("sup = e(R), attained by m(x) ⊂ (x)", exact(e), Some(true)),
                (DropSup, IntegrallyClosed) => {
                    if regular {
                        pred("every drop is 1 in a DVR", exact(int(1)), Some(true))
                    } else {
                        let sd = sup_relative_drop(&s)?;
                        pred(
                            "sup ≤ e(R); exact value from the finite search over I_m ⊋ I_n",
                            exact(sd.value),
                            Some(true),
                        )
                    }
                }
                (DropInf, All) => {
                    if regular {
                        pred("every drop is 1 in a DVR", exact(int(1)), Some(true))
                    } else {
                        pred("inf = 0 unless R is a DVR", exact(int(0)), None)
                    }
                }
                (DropInf, IntegrallyClosed) => pred(
                    "inf = 1, attained by consecutive elements past the conductor",
                    exact(int(1)),
                    Some(true),
                ),
            }
        }
        Family::Monomial { .. } => match (q, class, theory) {
            (RatioSup, _, HilbertSamuel) => pred("sup e/(d!ℓ) = lm(R) = e(R) = 1 (Lech)", exact(int(1)), if dim == 1 { Some(true) } else { None }),
            (RatioSup, _, HilbertKunz) => pred("sup = e_HK(R) = 1, attained at m", exact(int(1)), Some(true)),
            (RatioInf, All, HilbertSamuel) => pred("inf = 1/n(R) = 1 (Cohen–Macaulay)", exact(int(1)), None),
            (RatioInf, IntegrallyClosed, HilbertSamuel) => pred("inf = 1, attained since R is regular", exact(int(1)), Some(true)),
            (RatioInf, All, HilbertKunz) => pred("inf = ρ(R) = 1 (complete intersection)", exact(int(1)), None),
            (RatioInf, IntegrallyClosed, HilbertKunz) => pred("inf = 1 (equidimensional, generic point a field)", exact(int(1)), None),
            (DropSup, _, HilbertSamuel) if dim >= 2 => pred("sup = ∞ in dimension ≥ 2, witnesses m^n ⊂ m^n + (x^{n-1})", PredictedValue::Diverging, None),
            (DropSup, _, HilbertSamuel) => pred("sup = e(R) = 1 in a DVR", exact(int(1)), Some(true)),
            (DropSup, All, HilbertKunz) => pred("sup = e_HK(R) = 1, attained by mJ ⊂ J", exact(int(1)), Some(true)),
            (DropSup, IntegrallyClosed, HilbertKunz) => pred("bounded by the all-ideals value e_HK(R) = 1", exact(int(1)), None),
            (DropInf, All, HilbertSamuel) if dim >= 2 => pred("inf = 0 unless R is a DVR", exact(int(0)), None),
            (DropInf, All, HilbertSamuel) => pred("every drop is 1 in a DVR", exact(int(1)), Some(true)),
            (DropInf, IntegrallyClosed, HilbertSamuel) => pred("inf = 1 (equidimensional, generic point a field)", exact(int(1)), None),
            (DropInf, All, HilbertKunz) => pred("inf = s(R) = 1 for a regular ring", exact(int(1)), None),
            (DropInf, IntegrallyClosed, HilbertKunz) => pred("inf = 1 (equidimensional, generic point a field)", exact(int(1)), None),
        },
        Family::Cross => {
            let e = int(2);
            match (q, class, theory) {
                (RatioSup, _, _) => pred("sup = e(R) = e_HK(R) = 2, attained at m", exact(e), Some(true)),
                (RatioInf, All, HilbertSamuel) => pred("inf = 1/n(R) = 1 (Cohen–Macaulay)", exact(int(1)), None),
                (RatioInf, All, HilbertKunz) => pred("inf = ρ(R) = 1 (hypersurface)", exact(int(1)), None),
                (RatioInf, IntegrallyClosed, _) => pred("inf = 1, not attained since R is not regular", exact(int(1)), Some(false)),
                (DropSup, All, HilbertSamuel) => pred("sup = e(R) = 2 over all ideals; monomial ideals only reach a lower bound", exact(e), None),
                (DropSup, All, HilbertKunz) => pred("sup = e_HK(R) = 2 over all ideals; monomial ideals only reach a lower bound", exact(e), None),
                (DropSup, IntegrallyClosed, HilbertSamuel) => pred("sup = 1 < 2 = e(R)", exact(int(1)), Some(true)),
                (DropSup, IntegrallyClosed, HilbertKunz) => pred("open for integrally closed ideals", PredictedValue::Open, None),
                (DropInf, All, HilbertSamuel) => pred("inf = 0 unless R is a DVR", exact(int(0)), None),
                (DropInf, All, HilbertKunz) => pred("inf = s(R)", PredictedValue::Open, None),
                (DropInf, IntegrallyClosed, _) => pred("inf = 1 (equidimensional, generic point a field)", exact(int(1)), None),
            }
        }
        Family::NonEquidim => match (q, class, theory) {
            (RatioSup, _, HilbertSamuel) => pred("sup e/(d!ℓ) = lm(R) ∈ [1, e(R)] = {1}", exact(int(1)), None),
            (RatioSup, _, HilbertKunz) => pred("sup = e_HK(R) = 1, attained at m", exact(int(1)), Some(true)),
            (RatioInf, _, _) => pred("inf = 0: the completion is not equidimensional", exact(int(0)), Some(false)),
            (DropSup, _, HilbertSamuel) => pred("sup = ∞ in dimension ≥ 2, witnesses m^n ⊂ m^n + (y^{n-1})", PredictedValue::Diverging, None),
            (DropSup, All, HilbertKunz) => pred("sup = e_HK(R) = 1", exact(int(1)), None),
            (DropSup, IntegrallyClosed, HilbertKunz) => pred("open for integrally closed ideals", PredictedValue::Open, None),
            (DropInf, All, HilbertSamuel) => pred("inf = 0 unless R is a DVR", exact(int(0)), None),
            (DropInf, All, HilbertKunz) => pred("inf = s(R)", PredictedValue::Open, None),
            (DropInf, IntegrallyClosed, _) => pred("inf = 0: the completion is not equidimensional", exact(int(0)), None),
        },
    })
}

fn item(ideal: AnyIdeal, theory: Theory, tag: u64) -> Result<Item> {
    let multiplicity = Frac::from_rational(&ideal.multiplicity(theory)?);
    Ok(Item {
        key: ideal.key(),
        colength: ideal.colength()?,
        multiplicity,
        tag,
        ideal,
    })
}

fn enumerate(
    family: &Family,
    class: ClosureClass,
    theory: Theory,
    quantity: Quantity,
    bound: u64,
) -> Result<Enumeration> {
    match family {
        Family::Semigroup { generators } => {
            let s = Arc::new(NumericalSemigroup::new(generators)?);
            match class {
                ClosureClass::IntegrallyClosed => semigroup_ic(&s, theory, bound),
                ClosureClass::All => semigroup_all(&s, theory, quantity, bound),
            }
        }
        Family::Monomial { dim, seed } => monomial_family(*dim, *seed, class, theory, quantity, bound),
        Family::Cross => cross_family(theory, bound),
        Family::NonEquidim => nonequidim_family(class, theory, quantity, bound),
    }
}

/// `I_n` for `n ∈ S ∩ [1, bound]`, largest ideal first.
fn semigroup_ic(s: &Arc<NumericalSemigroup>, theory: Theory, bound: u64) -> Result<Enumeration> {
    let items = s
        .elements_in(1, bound)
        .collect::<Vec<u64>>()
        .into_par_iter()
        .map(|n| item(AnyIdeal::Semigroup(ic_ideal(s, n)?.ideal), theory, n))
        .collect::<Result<Vec<Item>>>()?;
    Ok(Enumeration {
        items,
        pairs: Pairs::Chain,
        dim: 1,
    })
}

/// Every ideal of valuation `≤ bound`. The minimal generators of an ideal
/// with valuation `v` are `v` and some `v + g` with `g` a gap, pairwise
/// incomparable. Drops are extremal on unit-colength steps `I ⊂ I + (T^s)`
/// (any nested pair refines to such a chain, and a ratio of sums lies
/// between the extreme summands), so only those pairs are listed.
fn semigroup_all(
    s: &Arc<NumericalSemigroup>,
    theory: Theory,
    quantity: Quantity,
    bound: u64,
) -> Result<Enumeration> {
    let mut ideals: Vec<(u64, SemigroupIdeal)> = Vec::new();
    for v in s.elements_in(1, bound) {
        // Subsets of {g gap : v + g ∈ S} with no difference in S.
        let mut patterns: Vec<Vec<u64>> = vec![vec![]];
        for &g in s.gaps().iter().filter(|&&g| s.contains(v + g)) {
            let extended: Vec<Vec<u64>> = patterns
                .iter()
                .filter(|p| p.iter().all(|&h| !s.contains(g - h)))
                .map(|p| {
                    let mut q = p.clone();
                    q.push(g);
                    q
                })
                .collect();
            patterns.extend(extended);
        }
        for p in &patterns {
            let mut gens = vec![v];
            gens.extend(p.iter().map(|g| v + g));
            ideals.push((v, SemigroupIdeal::new(s.clone(), &gens)?));
        }
        if ideals.len() > ALL_CLASS_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "more than {ALL_CLASS_LIMIT} ideals; lower the bound"
            )));
        }
    }
    let mut items: Vec<Item> = ideals
        .par_iter()
        .map(|(v, i)| item(AnyIdeal::Semigroup(i.clone()), theory, *v))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    if quantity.is_drop() {
        let n = items.len();
        let extra: Vec<(usize, Item)> = (0..n)
            .into_par_iter()
            .map(|idx| {
                let i = match &items[idx].ideal {
                    AnyIdeal::Semigroup(i) => i.clone(),
                    _ => unreachable!(),
                };
                socle_extensions(&i)
                    .into_iter()
                    .map(|j| Ok((idx, item(AnyIdeal::Semigroup(j), theory, items[idx].tag)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<Vec<_>>>>()?
            .into_iter()
            .flatten()
            .collect();
        for (idx, it) in extra {
            items.push(it);
            pairs.push((idx, items.len() - 1));
        }
    }
    Ok(Enumeration {
        items,
        pairs: Pairs::Explicit(pairs),
        dim: 1,
    })
}

/// `I + (T^s)` for each `s` in the socle `(I : m) ∖ I`.
fn socle_extensions(i: &SemigroupIdeal) -> Vec<SemigroupIdeal> {
    let s = i.semigroup();
    let v = i.valuation();
    // Socle elements lie below the largest generator plus the Frobenius number.
    let top = i.generators().last().copied().unwrap_or(v) + s.conductor() + 1;
    s.elements_in(1, top)
        .filter(|&x| !i.contains(x) && s.generators().iter().all(|&g| i.contains(x + g)))
        .map(|x| {
            let mut gens = i.generators().to_vec();
            gens.push(x);
            SemigroupIdeal::new(s.clone(), &gens).expect("elements of S")
        })
        .collect()
}

fn monomial_family(
    d: usize,
    seed: u64,
    class: ClosureClass,
    theory: Theory,
    quantity: Quantity,
    bound: u64,
) -> Result<Enumeration> {
    if !(1..=3).contains(&d) {
        return Err(Error::DimensionUnsupported(d));
    }
    let b = u32::try_from(bound).map_err(|_| Error::InvalidArgument("bound too large".into()))?;
    let closed = class == ClosureClass::IntegrallyClosed;
    let m = MonomialIdeal::maximal(d);
    let mut raw: Vec<(MonomialIdeal, u64)> = Vec::new();
    let mut structured_pairs: Vec<(usize, usize)> = Vec::new();
    let mut power = m.clone();
    let mut prev: Option<usize> = None;
    for n in 1..=b {
        if n > 1 {
            power = power.product(&m)?;
        }
        raw.push((power.clone(), n as u64));
        let here = raw.len() - 1;
        if n >= 2 && d >= 2 {
            let x = MonomialIdeal::new(d, vec![Exponent::pure_power(d, 0, n - 1)])?;
            raw.push((power.sum(&x)?, n as u64));
            structured_pairs.push((here, raw.len() - 1));
        }
        if let Some(p) = prev {
            structured_pairs.push((here, p));
        }
        prev = Some(here);
    }
    let mut param = vec![1u32; d];
    param[0] = 2;
    raw.push((MonomialIdeal::parameter(&param)?, 2));
    structured_pairs.push((raw.len() - 1, 0));

    let cfg = |t: u32| SamplerConfig {
        generators: 6,
        bound: t,
    };
    let sampled: Vec<(MonomialIdeal, u64)> = (2..=b)
        .flat_map(|t| (0..SAMPLES_PER_BOUND).map(move |k| (t, k)))
        .map(|(t, k)| {
            let mut rng = instance_rng(seed, t as u64 * 1000 + k);
            (random_ideal(&mut rng, d, &cfg(t)), t as u64)
        })
        .collect();
    // Each sample also contributes I·m, and its closure when distinct.
    let derived: Vec<Vec<(MonomialIdeal, u64, bool)>> = sampled
        .par_iter()
        .map(|(i, t)| {
            let mut out = Vec::new();
            let base = if closed { i.integral_closure()? } else { i.clone() };
            out.push((base.clone(), *t, true));
            if quantity.is_drop() {
                let im = base.product(&m)?;
                let im = if closed { im.integral_closure()? } else { im };
                out.push((im, *t, false));
                if !closed {
                    let c = i.integral_closure()?;
                    if c != *i {
                        out.push((c, *t, false));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    for group in derived {
        let start = raw.len();
        for (idx, (i, t, _)) in group.into_iter().enumerate() {
            raw.push((i, t));
            if idx > 0 {
                // (I·m, I) and (I, Ī) are nested.
                let pair = if idx == 1 { (start + 1, start) } else { (start, start + 2) };
                structured_pairs.push(pair);
            }
        }
    }
    build_explicit(
        raw.into_iter().map(|(i, t)| (AnyIdeal::Monomial(i), t)).collect(),
        structured_pairs,
        theory,
        quantity,
        d,
    )
}

/// Dedups ideals, then adds every nested pair among them.
fn build_explicit(
    raw: Vec<(AnyIdeal, u64)>,
    seeded_pairs: Vec<(usize, usize)>,
    theory: Theory,
    quantity: Quantity,
    dim: usize,
) -> Result<Enumeration> {
    let mut index: BTreeMap<Vec<Vec<u64>>, usize> = BTreeMap::new();
    let mut remap = Vec::with_capacity(raw.len());
    let mut unique: Vec<(AnyIdeal, u64)> = Vec::new();
    for (ideal, tag) in raw {
        let key = ideal.key();
        match index.get(&key) {
            Some(&u) => {
                unique[u].1 = unique[u].1.min(tag);
                remap.push(u);
            }
            None => {
                index.insert(key, unique.len());
                remap.push(unique.len());
                unique.push((ideal, tag));
            }
        }
    }
    let items: Vec<Item> = unique
        .into_par_iter()
        .map(|(i, t)| item(i, theory, t))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    if quantity.is_drop() {
        let mut seen = std::collections::BTreeSet::new();
        for (a, b) in seeded_pairs {
            seen.insert((remap[a], remap[b]));
        }
        let nested: Vec<(usize, usize)> = (0..items.len())
            .into_par_iter()
            .flat_map_iter(|a| {
                let items = &items;
                (0..items.len()).filter_map(move |b| {
                    (a != b
                        && items[a].colength > items[b].colength
                        && items[b].ideal.contains_ideal(&items[a].ideal))
                    .then_some((a, b))
                })
            })
            .collect();
        seen.extend(nested);
        pairs = seen
            .into_iter()
            .filter(|&(a, b)| a != b && items[a].colength > items[b].colength)
            .collect();
    }
    Ok(Enumeration {
        items,
        pairs: Pairs::Explicit(pairs),
        dim,
    })
}

/// `(x^a, y^b)` for `a, b ≤ bound`. In this ring every monomial ideal has
/// this form and is integrally closed, so both classes coincide.
fn cross_family(theory: Theory, bound: u64) -> Result<Enumeration> {
    let ring = Arc::new(BranchedRing::axes(2));
    let b = u32::try_from(bound).map_err(|_| Error::InvalidArgument("bound too large".into()))?;
    let mut raw = Vec::new();
    for a in 1..=b {
        for c in 1..=b {
            raw.push((
                AnyIdeal::Branched(BranchedIdeal::pure_powers(ring.clone(), &[a, c])?),
                a.max(c) as u64,
            ));
        }
    }
    build_explicit(raw, vec![], theory, Quantity::DropSup, 1)
}

/// `(x^a, y^b, z^c)` with `a ≤ bound`, `b, c ≤ 3`, together with `m^n` and
/// `m^n + (y^{n-1})` for `n ≤ bound`.
fn nonequidim_family(class: ClosureClass, theory: Theory, quantity: Quantity, bound: u64) -> Result<Enumeration> {
    let ring = Arc::new(plane_and_line());
    let b = u32::try_from(bound).map_err(|_| Error::InvalidArgument("bound too large".into()))?;
    let m = BranchedIdeal::maximal(ring.clone());
    let mut raw: Vec<(BranchedIdeal, u64)> = Vec::new();
    let mut seeded = Vec::new();
    for a in 1..=b {
        for y in 1..=3u32 {
            for z in 1..=3u32 {
                raw.push((BranchedIdeal::pure_powers(ring.clone(), &[a, y, z])?, a.max(y).max(z) as u64));
            }
        }
    }
    let mut power = m.clone();
    for n in 1..=b {
        if n > 1 {
            power = power.product(&m)?;
        }
        raw.push((power.clone(), n as u64));
        if n >= 2 {
            let y = BranchedIdeal::new(ring.clone(), vec![Exponent::pure_power(3, 1, n - 1)])?;
            let mut gens = power.gens().to_vec();
            gens.extend(y.gens().iter().cloned());
            raw.push((BranchedIdeal::new(ring.clone(), gens)?, n as u64));
            seeded.push((raw.len() - 2, raw.len() - 1));
        }
    }
    let raw: Vec<(AnyIdeal, u64)> = if class == ClosureClass::IntegrallyClosed {
        raw.into_par_iter()
            .map(|(i, t)| Ok((AnyIdeal::Branched(i.integral_closure()?), t)))
            .collect::<Result<_>>()?
    } else {
        raw.into_iter().map(|(i, t)| (AnyIdeal::Branched(i), t)).collect()
    };
    build_explicit(raw, seeded, theory, quantity, 2)
}

/// A maximal chain of integrally closed ideals, smallest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain<I> {
    pub ideals: Vec<I>,
    /// `ℓ(I_{i+1}/I_i)` for each adjacent pair.
    pub steps: Vec<u64>,
    /// `e(I_i) − e(I_{i+1})` for each adjacent pair.
    pub multiplicity_drops: Vec<u64>,
}

impl<I> Chain<I> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Unit colength steps and drops of at least one.
    pub fn has_unit_steps(&self) -> bool {
        self.steps.iter().all(|&s| s == 1) && self.multiplicity_drops.iter().all(|&d| d >= 1)
    }
}

/// `I_n ⊊ … ⊊ I_m` through the elements of `S` in `[m, n]`.
pub fn chain_semigroup(s: &Arc<NumericalSemigroup>, m: u64, n: u64) -> Result<Chain<SemigroupIdeal>> {
    for v in [m, n] {
        if v == 0 || !s.contains(v) {
            return Err(Error::NotInSemigroup(v));
        }
    }
    if m > n {
        return Err(Error::NotNested);
    }
    let mut vals: Vec<u64> = s.elements_in(m, n).collect();
    vals.reverse();
    let ideals: Vec<SemigroupIdeal> = vals
        .iter()
        .map(|&v| ic_ideal(s, v).map(|i| i.ideal))
        .collect::<Result<_>>()?;
    finish_chain(ideals, |i| Ok((i.colength(), i.multiplicity())))
}

/// `(x^a, y^b) ⊆ … ⊆ (x^c, y^d)` in `k[[x,y]]/(xy)`, lowering the `x`
/// exponent first.
pub fn chain_cross(a: u32, b: u32, c: u32, d: u32) -> Result<Chain<BranchedIdeal>> {
    if [a, b, c, d].contains(&0) {
        return Err(Error::UnitIdeal);
    }
    if c > a || d > b {
        return Err(Error::NotNested);
    }
    let ring = Arc::new(BranchedRing::axes(2));
    let mut exps = vec![(a, b)];
    let (mut x, mut y) = (a, b);
    while x > c {
        x -= 1;
        exps.push((x, y));
    }
    while y > d {
        y -= 1;
        exps.push((x, y));
    }
    let ideals: Vec<BranchedIdeal> = exps
        .into_iter()
        .map(|(x, y)| BranchedIdeal::pure_powers(ring.clone(), &[x, y]))
        .collect::<Result<_>>()?;
    finish_chain(ideals, |i| Ok((i.colength()?, i.hs_multiplicity()?)))
}

fn finish_chain<I>(ideals: Vec<I>, stats: impl Fn(&I) -> Result<(u64, u64)>) -> Result<Chain<I>> {
    let s: Vec<(u64, u64)> = ideals.iter().map(&stats).collect::<Result<_>>()?;
    let steps = s.windows(2).map(|w| w[0].0 - w[1].0).collect();
    let multiplicity_drops = s.windows(2).map(|w| w[0].1 - w[1].1).collect();
    Ok(Chain {
        ideals,
        steps,
        multiplicity_drops,
    })
}

/// Markdown table with one row per report.
pub fn render_markdown(reports: &[SweepReport]) -> String {
    let mut out = String::from(
        "| quantity | class | theory | family | bound | value | approx. | prediction | matched |\n\
         |---|---|---|---|---|---|---|---|---|\n",
    );
    for r in reports {
        let v = r.value.value();
        let shown = match &r.value {
            SweepValue::Exact { .. } => rational::exact_string(v),
            SweepValue::Diverging { .. } => format!("diverging (witness {})", rational::exact_string(v)),
        };
        let matched = match r.prediction.matched {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | ≈ {} | {} | {} |\n",
            r.quantity,
            r.closure_class,
            r.theory,
            r.family,
            r.bound,
            shown,
            rational::approx_decimal(v, 6),
            r.prediction.statement,
            matched
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn sg(g: &[u64]) -> Family {
        Family::Semigroup {
            generators: g.to_vec(),
        }
    }

    fn run(q: Quantity, c: ClosureClass, f: &Family, bound: u64) -> SweepReport {
        compute_invariant(q, c, Theory::HilbertSamuel, f, bound).unwrap()
    }

    #[test]
    fn family_parsing() {
        assert_eq!("semigroup:3,5".parse::<Family>().unwrap(), sg(&[3, 5]));
        assert_eq!(
            "monomial:2:9".parse::<Family>().unwrap(),
            Family::Monomial { dim: 2, seed: 9 }
        );
        assert_eq!("cross".parse::<Family>().unwrap(), Family::Cross);
        assert_eq!(
            "torus".parse::<Family>(),
            Err(Error::UnknownFamily("torus".into()))
        );
        assert_eq!("monomial:5".parse::<Family>(), Err(Error::DimensionUnsupported(5)));
        for f in ["semigroup:2,3", "monomial:3:1", "cross", "nonequidim"] {
            assert_eq!(f.parse::<Family>().unwrap().to_string().parse::<Family>().unwrap(), f.parse().unwrap());
        }
    }

    #[test]
    fn semigroup_chains() {
        let s = Arc::new(NumericalSemigroup::new(&[2, 3]).unwrap());
        let c = chain_semigroup(&s, 2, 5).unwrap();
        assert_eq!(c.len(), 3);
        let vals: Vec<u64> = c.ideals.iter().map(|i| i.valuation()).collect();
        assert_eq!(vals, vec![5, 4, 3, 2]);
        assert!(c.has_unit_steps());
        let s = Arc::new(NumericalSemigroup::new(&[3, 5]).unwrap());
        let c = chain_semigroup(&s, 3, 6).unwrap();
        let vals: Vec<u64> = c.ideals.iter().map(|i| i.valuation()).collect();
        assert_eq!(vals, vec![6, 5, 3]);
        assert_eq!(c.steps, vec![1, 1]);
        assert_eq!(chain_semigroup(&s, 3, 3).unwrap().len(), 0);
        assert_eq!(chain_semigroup(&s, 3, 4).unwrap_err(), Error::NotInSemigroup(4));
    }

    #[test]
    fn cross_chains() {
        let c = chain_cross(3, 2, 1, 1).unwrap();
        assert_eq!(c.len(), 3);
        let ls: Vec<u64> = c.ideals.iter().map(|i| i.colength().unwrap()).collect();
        assert_eq!(ls, vec![4, 3, 2, 1]);
        assert_eq!(chain_cross(2, 2, 2, 1).unwrap().len(), 1);
        assert_eq!(chain_cross(2, 2, 2, 2).unwrap().len(), 0);
        assert_eq!(chain_cross(2, 2, 3, 1).unwrap_err(), Error::NotNested);
        assert!(c.has_unit_steps());
    }

    #[test]
    fn cross_ring_drop_sup() {
        let r = run(Quantity::DropSup, ClosureClass::IntegrallyClosed, &Family::Cross, 10);
        assert_eq!(r.value, SweepValue::Exact { value: int(1) });
        assert_eq!(r.prediction.matched, Some(true));
        assert!(r.witness_verified);
        let r = run(Quantity::RatioSup, ClosureClass::IntegrallyClosed, &Family::Cross, 10);
        assert_eq!(r.value.value(), &int(2));
    }

    #[test]
    fn semigroup_ratio_inf_trend() {
        let r = run(Quantity::RatioInf, ClosureClass::IntegrallyClosed, &sg(&[3, 5]), 4000);
        assert_eq!(r.value.value(), &ratio(4000, 3996));
        assert!(r.trend_monotone);
        assert_eq!(r.trend_direction, Direction::NonIncreasing);
        assert_eq!(r.prediction.attained, Some(false));
        assert_eq!(r.prediction.matched, Some(true));
        match &r.witness {
            Witness::Ideal { colength, .. } => assert_eq!(*colength, 3996),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn semigroup_drops() {
        for (g, sup) in [(&[2u64, 3][..], int(1)), (&[2, 5][..], int(2)), (&[3, 5][..], int(2))] {
            let r = run(Quantity::DropSup, ClosureClass::IntegrallyClosed, &sg(g), 40);
            assert_eq!(r.value.value(), &sup, "{g:?}");
            assert_eq!(r.prediction.matched, Some(true));
            assert!(r.witness_verified);
            let r = run(Quantity::DropInf, ClosureClass::IntegrallyClosed, &sg(g), 40);
            assert_eq!(r.value.value(), &int(1));
            // All ideals: sup e(R) via m(x) ⊂ (x), inf 0.
            let all = run(Quantity::DropSup, ClosureClass::All, &sg(g), 20);
            assert_eq!(all.value.value(), &int(g[0] as i64));
            assert!(all.witness_verified);
            let all = run(Quantity::DropInf, ClosureClass::All, &sg(g), 20);
            assert_eq!(all.value.value(), &int(0));
        }
        let r = run(Quantity::DropSup, ClosureClass::IntegrallyClosed, &sg(&[2, 5]), 40);
        match r.witness {
            Witness::Pair { colengths, .. } => assert_eq!(colengths, [2, 1]),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn monomial_drop_sup_diverges() {
        let f = Family::Monomial { dim: 2, seed: 0 };
        let r = run(Quantity::DropSup, ClosureClass::All, &f, 12);
        assert_eq!(r.value, SweepValue::Diverging { witness_value: int(12) });
        assert_eq!(r.prediction.matched, Some(true));
        let r = run(Quantity::RatioSup, ClosureClass::All, &f, 6);
        assert!(r.value.value() <= &int(1));
        let r = compute_invariant(Quantity::RatioSup, ClosureClass::All, Theory::HilbertKunz, &f, 6).unwrap();
        assert_eq!(r.value.value(), &int(1));
        assert_eq!(r.prediction.matched, Some(true));
    }

    #[test]
    fn nonequidim_ratio_collapses() {
        let r = run(Quantity::RatioInf, ClosureClass::IntegrallyClosed, &Family::NonEquidim, 10);
        assert_eq!(r.value.value(), &ratio(1, 10));
        assert_eq!(r.prediction.matched, Some(true));
        let r = run(Quantity::DropInf, ClosureClass::IntegrallyClosed, &Family::NonEquidim, 6);
        assert_eq!(r.value.value(), &int(0));
    }

    #[test]
    fn deterministic_reports() {
        let f = Family::Monomial { dim: 2, seed: 3 };
        let a = run(Quantity::DropInf, ClosureClass::IntegrallyClosed, &f, 5);
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run(Quantity::DropInf, ClosureClass::IntegrallyClosed, &f, 5));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn markdown_rows() {
        let r = run(Quantity::DropSup, ClosureClass::IntegrallyClosed, &Family::Cross, 3);
        let md = render_markdown(&[r]);
        assert_eq!(md.lines().count(), 3);
        assert!(md.contains("| drop_sup | integrally_closed | hs | cross | 3 | 1 |"));
    }
}
