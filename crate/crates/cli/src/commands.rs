use std::str::FromStr;
use std::sync::Arc;

use anyhow::Result;
use clap::{Args, ValueEnum};
use lech_core::branched::{cross_enumerate_ic, nonequidim_family};
use lech_core::monomial::{check_lech, check_relative_hk, hs_relative_drop, param_socle_drop, sup_drop_witness};
use lech_core::oracle::{default_k_max, hk_oracle, hs_oracle, trace_csv, RingModelHandle, DEFAULT_Q_LIST};
use lech_core::rational::{approx_decimal, int};
use lech_core::semigroup::{ic_ideal, ic_relative_drop, inf_ratio_trend, sup_relative_drop};
use lech_core::sweep::{
    chain_cross, chain_semigroup, compute_invariant, render_markdown, Chain, ClosureClass, Family, Quantity,
    SweepReport, SweepValue, Theory,
};
use lech_core::verify::{self, CRITERIA};
use lech_core::{BranchedIdeal, MonomialIdeal, SemigroupIdeal};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::input::{self, usage};
use crate::render::{csv_table, rational, rational_fields, Report};

#[derive(Debug, Args)]
pub struct SemigroupArgs {
    /// Generators of the numerical semigroup, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub gens: Vec<u64>,
    /// An ideal: a JSON list of elements, or a {"semigroup", "gens"} record (inline or file).
    #[arg(long)]
    pub ideal: Option<String>,
    /// Supremum of the relative drop over integrally closed ideals.
    #[arg(long)]
    pub sup_drop: bool,
    /// The integrally closed ideal I_n = (T^n) ∩ R.
    #[arg(long, value_name = "N")]
    pub ic: Option<u64>,
    /// Relative drop of the pair I_n ⊆ I_m.
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "M,N")]
    pub drop: Option<Vec<u64>>,
    /// e(I_n)/ℓ(R/I_n) for n ∈ S up to --bound.
    #[arg(long)]
    pub trend: bool,
    /// Upper valuation for --trend (default: conductor + 20).
    #[arg(long)]
    pub bound: Option<u64>,
}

pub fn semigroup(a: &SemigroupArgs) -> Result<Report> {
    let s = input::semigroup(&a.gens)?;
    let mut out = Map::new();
    out.insert(
        "semigroup".into(),
        json!({
            "generators": s.generators(),
            "multiplicity": s.multiplicity(),
            "conductor": s.conductor(),
            "frobenius_number": s.frobenius_number(),
            "genus": s.genus(),
            "gaps": s.gaps(),
            "regular": s.is_regular(),
        }),
    );
    if let Some(arg) = &a.ideal {
        let i = input::semigroup_ideal(arg, &s)?;
        out.insert("ideal".into(), semigroup_ideal_summary(&i));
    }
    if a.sup_drop {
        let sd = sup_relative_drop(&s)?;
        let (m, n) = sd.witness;
        let larger = ic_ideal(&s, m)?.ideal;
        let smaller = ic_ideal(&s, n)?.ideal;
        let mut rec = Map::new();
        rec.insert("quantity".into(), json!("sup_relative_drop"));
        rational_fields(&mut rec, "value", &sd.value);
        rec.insert(
            "witness".into(),
            json!({
                "m": m,
                "n": n,
                "larger": larger,
                "smaller": smaller,
                "multiplicities": [smaller.multiplicity(), larger.multiplicity()],
                "colengths": [smaller.colength(), larger.colength()],
            }),
        );
        rec.insert("ring_multiplicity".into(), json!(s.multiplicity()));
        out.insert("sup_drop".into(), Value::Object(rec));
    }
    if let Some(n) = a.ic {
        let ic = ic_ideal(&s, n)?;
        let mut v = semigroup_ideal_summary(&ic.ideal);
        v["requested"] = json!(ic.requested);
        v["regular_ring"] = json!(ic.regular_ring);
        out.insert("ic".into(), v);
    }
    if let Some(mn) = &a.drop {
        let [m, n] = mn.as_slice() else {
            return Err(usage("--drop takes exactly two valuations M,N"));
        };
        let mut rec = Map::new();
        rec.insert("m".into(), json!(m));
        rec.insert("n".into(), json!(n));
        rational_fields(&mut rec, "value", &ic_relative_drop(&s, *m, *n)?);
        out.insert("drop".into(), Value::Object(rec));
    }
    if a.trend {
        let n_max = a.bound.unwrap_or(s.conductor() + 20);
        let t = inf_ratio_trend(&s, n_max)?;
        let points: Vec<Value> = t
            .points
            .iter()
            .map(|(n, r)| json!({"n": n, "ratio": rational(r)}))
            .collect();
        out.insert("trend".into(), json!({"points": points, "constant": rational(&t.constant)}));
    }
    Ok(Report::new(Value::Object(out)))
}

fn semigroup_ideal_summary(i: &SemigroupIdeal) -> Value {
    let e = i.multiplicity();
    json!({
        "ideal": i,
        "valuation": i.valuation(),
        "colength": i.colength(),
        "hs_multiplicity": e,
        "hk_multiplicity": rational(&int(e as i64)),
        "closure": i.closure(),
        "integrally_closed": i.is_integrally_closed(),
    })
}

#[derive(Debug, Args)]
pub struct MonomialArgs {
    /// {"dim": d, "gens": [[...], ...]}, inline or a file path.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Every invariant of --ideal (the default when no other flag is given).
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub colength: bool,
    /// Hilbert–Samuel multiplicity.
    #[arg(long)]
    pub hs: bool,
    /// Hilbert–Kunz multiplicity.
    #[arg(long)]
    pub hk: bool,
    /// Integral closure.
    #[arg(long)]
    pub closure: bool,
    /// Vertices of the Newton polyhedron.
    #[arg(long)]
    pub vertices: bool,
    /// Compare e(I) with d!·ℓ(R/I).
    #[arg(long)]
    pub lech: bool,
    /// An ideal containing --ideal; reports relative drops of the pair.
    #[arg(long, value_name = "IDEAL")]
    pub larger: Option<String>,
    /// e_HK(mJ) − e_HK(J) for a parameter ideal J.
    #[arg(long)]
    pub socle_drop: bool,
    /// The pair m^n ⊆ m^n + (x_1^{n−1}) in dimension --dim.
    #[arg(long, value_name = "N")]
    pub sup_drop: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
}

pub fn monomial(a: &MonomialArgs) -> Result<Report> {
    let mut out = Map::new();
    if let Some(n) = a.sup_drop {
        let w = sup_drop_witness(n, a.dim)?;
        out.insert("sup_drop".into(), serde_json::to_value(w)?);
    }
    let Some(arg) = &a.ideal else {
        if out.is_empty() {
            return Err(usage("monomial needs --ideal or --sup-drop"));
        }
        return Ok(Report::new(Value::Object(out)));
    };
    let i = input::monomial_ideal(arg)?;
    let selected = a.colength || a.hs || a.hk || a.closure || a.vertices || a.lech || a.socle_drop;
    let all = a.all || (!selected && a.larger.is_none());
    out.insert("ideal".into(), serde_json::to_value(&i)?);
    if all || a.colength {
        out.insert("colength".into(), json!(i.colength()?));
    }
    if all || a.hs {
        out.insert("hs_multiplicity".into(), json!(i.hs_multiplicity()?));
    }
    if all || a.hk {
        out.insert("hk_multiplicity".into(), rational(&i.hk_multiplicity()?));
    }
    if all || a.closure {
        let c = i.integral_closure()?;
        out.insert("closure_is_self".into(), json!(c == i));
        out.insert("closure".into(), serde_json::to_value(c)?);
    }
    if all || a.vertices {
        out.insert("newton_vertices".into(), serde_json::to_value(i.newton_vertices()?)?);
    }
    if all || a.lech {
        out.insert("lech".into(), serde_json::to_value(check_lech(&i)?)?);
    }
    if a.socle_drop {
        out.insert("socle_drop".into(), rational(&param_socle_drop(&i)?));
    }
    if let Some(l) = &a.larger {
        let big = input::monomial_ideal(l)?;
        let hk = check_relative_hk(&i, &big)?;
        let hs = hs_relative_drop(&i, &big)?;
        out.insert(
            "pair".into(),
            json!({
                "larger": big,
                "colength_diff": hk.colength_diff,
                "hs_relative_drop": hs.as_ref().map(rational),
                "hk_drop": rational(&hk.drop),
                "hk_drop_at_least_colength_diff": hk.holds,
            }),
        );
    }
    Ok(Report::new(Value::Object(out)))
}

#[derive(Debug, Args)]
pub struct BranchedArgs {
    /// {"dim": n, "facets": [[1], [2, 3]]} with one-based variables.
    #[arg(long)]
    pub ring: Option<String>,
    /// {"ring", "gens"}, or a generator list used with --ring.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Every integrally closed ideal of a union of axes with exponents ≤ --bound.
    #[arg(long)]
    pub cross_enumerate: bool,
    #[arg(long, default_value_t = 10)]
    pub bound: u32,
    /// (x^n, y, z) in k[[x,y,z]]/(xy,xz) for n = 2..=N.
    #[arg(long, value_name = "N")]
    pub nonequidim: Option<u32>,
}

pub fn branched(a: &BranchedArgs) -> Result<Report> {
    let mut out = Map::new();
    if let Some(arg) = &a.ideal {
        let i = input::branched_ideal(arg, a.ring.as_deref())?;
        let r = i.ring().clone();
        let c = i.integral_closure()?;
        let restrictions: Vec<Value> = r
            .facets()
            .iter()
            .map(|f| {
                let one_based: Vec<usize> = f.iter().map(|v| v + 1).collect();
                Ok(json!({"facet": one_based, "ideal": i.restrict(f)?}))
            })
            .collect::<Result<_>>()?;
        out.insert(
            "ring".into(),
            json!({
                "ambient_dimension": r.ambient_dimension(),
                "facets": r.facets().iter().map(|f| f.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "dim": r.dim(),
                "equidimensional": r.is_equidimensional(),
                "multiplicity": r.multiplicity(),
                "hk_multiplicity": rational(&r.hk_multiplicity()),
            }),
        );
        out.insert("ideal".into(), serde_json::to_value(&i)?);
        out.insert("colength".into(), json!(i.colength()?));
        out.insert("hs_multiplicity".into(), json!(i.hs_multiplicity()?));
        out.insert("hk_multiplicity".into(), rational(&i.hk_multiplicity()?));
        out.insert("closure_is_self".into(), json!(c == i));
        out.insert("closure".into(), serde_json::to_value(c)?);
        out.insert("restrictions".into(), Value::Array(restrictions));
    }
    if a.cross_enumerate {
        let ring = match &a.ring {
            Some(r) => input::ring(r)?,
            None => Arc::new(lech_core::BranchedRing::axes(2)),
        };
        let ideals = cross_enumerate_ic(&ring, a.bound)?;
        let rows: Vec<Value> = ideals
            .iter()
            .map(|i| {
                Ok(json!({
                    "ideal": i,
                    "generators": i.gens().len(),
                    "hs_multiplicity": i.hs_multiplicity()?,
                    "colength": i.colength()?,
                }))
            })
            .collect::<Result<_>>()?;
        out.insert(
            "cross_enumerate".into(),
            json!({"ring": &*ring, "bound": a.bound, "count": rows.len(), "ideals": rows}),
        );
    }
    if let Some(n_max) = a.nonequidim {
        let points: Vec<Value> = (2..=n_max.max(2))
            .map(|n| {
                let p = nonequidim_family(n)?;
                Ok(json!({
                    "n": p.n,
                    "ideal": p.ideal,
                    "hs_multiplicity": p.multiplicity,
                    "colength": p.colength,
                    "ratio": rational(&p.ratio),
                    "drop": rational(&p.drop),
                }))
            })
            .collect::<Result<_>>()?;
        out.insert("nonequidim".into(), Value::Array(points));
    }
    if out.is_empty() {
        return Err(usage("branched needs --ideal, --cross-enumerate or --nonequidim"));
    }
    Ok(Report::new(Value::Object(out)))
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// semigroup:3,5 | monomial:D[:SEED] | cross | nonequidim
    #[arg(long)]
    pub family: String,
    /// ratio_sup | ratio_inf | drop_sup | drop_inf | all
    #[arg(long, default_value = "all")]
    pub quantity: String,
    /// all | integrally_closed
    #[arg(long, default_value = "all")]
    pub class: String,
    /// hs | hk
    #[arg(long, default_value = "hs")]
    pub theory: String,
    #[arg(long, default_value_t = 8)]
    pub bound: u64,
    /// Seed for the randomized monomial family.
    #[arg(long)]
    pub seed: Option<u64>,
}

fn parse_enum<T: FromStr>(s: &str, flag: &str) -> Result<T> {
    s.parse().map_err(|_| usage(format!("invalid value {s:?} for {flag}")))
}

pub fn sweep(a: &SweepArgs) -> Result<Report> {
    let mut family: Family = a.family.parse()?;
    if let Family::Monomial { seed, .. } = &mut family {
        let inline = a.family.split(':').count() == 3;
        match (inline, a.seed) {
            (true, Some(s)) if s != *seed => return Err(usage("--seed conflicts with the seed in --family")),
            (true, _) => {}
            (false, Some(s)) => *seed = s,
            (false, None) => return Err(usage("the monomial family is randomized: pass --seed")),
        }
    }
    let class: ClosureClass = parse_enum(&a.class, "--class")?;
    let theory: Theory = parse_enum(&a.theory, "--theory")?;
    let quantities: Vec<Quantity> = if a.quantity == "all" {
        Quantity::ALL.to_vec()
    } else {
        vec![parse_enum(&a.quantity, "--quantity")?]
    };
    let reports: Vec<SweepReport> = quantities
        .iter()
        .map(|&q| compute_invariant(q, class, theory, &family, a.bound))
        .collect::<lech_core::Result<_>>()?;
    let rows: Vec<Vec<String>> = reports.iter().map(sweep_row).collect();
    Ok(Report {
        json: serde_json::to_value(&reports)?,
        markdown: Some(render_markdown(&reports)),
        csv: Some(csv_table(
            &[
                "quantity", "class", "theory", "family", "bound", "kind", "value_num", "value_den", "value_approx",
                "matched",
            ],
            &rows,
        )?),
    })
}

fn sweep_row(r: &SweepReport) -> Vec<String> {
    let v = r.value.value();
    let kind = match r.value {
        SweepValue::Exact { .. } => "exact",
        SweepValue::Diverging { .. } => "diverging",
    };
    vec![
        r.quantity.to_string(),
        r.closure_class.to_string(),
        r.theory.to_string(),
        r.family.to_string(),
        r.bound.to_string(),
        kind.into(),
        v.numer().to_string(),
        v.denom().to_string(),
        approx_decimal(v, 6),
        r.prediction.matched.map_or(String::new(), |m| m.to_string()),
    ]
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// Semigroup generators; the chain runs from I_--to up to I_--from.
    #[arg(long, value_delimiter = ',', requires_all = ["from", "to"], conflicts_with = "cross")]
    pub gens: Option<Vec<u64>>,
    #[arg(long, value_name = "M")]
    pub from: Option<u64>,
    #[arg(long, value_name = "N")]
    pub to: Option<u64>,
    /// (x^A, y^B) ⊆ … ⊆ (x^C, y^D) in k[[x,y]]/(xy).
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "A,B,C,D")]
    pub cross: Option<Vec<u32>>,
}

pub fn chain(a: &ChainArgs) -> Result<Report> {
    match (&a.gens, &a.cross) {
        (Some(g), None) => {
            let s = input::semigroup(g)?;
            let (m, n) = (a.from.unwrap_or_default(), a.to.unwrap_or_default());
            chain_report("semigroup", chain_semigroup(&s, m, n)?)
        }
        (None, Some(c)) => {
            let [x, y, z, w] = c.as_slice() else {
                return Err(usage("--cross takes exactly four exponents A,B,C,D"));
            };
            chain_report("cross", chain_cross(*x, *y, *z, *w)?)
        }
        _ => Err(usage("chain needs --gens with --from/--to, or --cross")),
    }
}

fn chain_report<I: Serialize>(model: &str, c: Chain<I>) -> Result<Report> {
    let rows: Vec<Vec<String>> = c
        .steps
        .iter()
        .zip(&c.multiplicity_drops)
        .enumerate()
        .map(|(i, (s, d))| vec![i.to_string(), s.to_string(), d.to_string()])
        .collect();
    let json = json!({
        "model": model,
        "length": c.len(),
        "unit_steps": c.has_unit_steps(),
        "steps": c.steps,
        "multiplicity_drops": c.multiplicity_drops,
        "ideals": c.ideals,
    });
    Ok(Report {
        json,
        markdown: None,
        csv: Some(csv_table(&["step", "colength_step", "multiplicity_drop"], &rows)?),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleTheory {
    Hs,
    Hk,
    Both,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Semigroup generators; --ideal is then a semigroup ideal.
    #[arg(long, value_delimiter = ',', conflicts_with = "ring")]
    pub gens: Option<Vec<u64>>,
    /// Facet complex; --ideal is then a branched ideal.
    #[arg(long)]
    pub ring: Option<String>,
    /// The ideal, in the shape of its model (monomial when neither --gens nor --ring is given).
    #[arg(long)]
    pub ideal: String,
    #[arg(long, value_enum, default_value_t = OracleTheory::Both)]
    pub theory: OracleTheory,
    /// Largest power k in ℓ(R/I^k) (default: d + 6).
    #[arg(long)]
    pub k_max: Option<u32>,
    /// Frobenius exponents q, comma separated prime powers.
    #[arg(long, value_delimiter = ',')]
    pub q: Option<Vec<u32>>,
}

pub fn oracle(a: &OracleArgs) -> Result<Report> {
    if let Some(g) = &a.gens {
        let s = input::semigroup(g)?;
        let i = input::semigroup_ideal(&a.ideal, &s)?;
        oracle_report("semigroup", &i, i.multiplicity(), a)
    } else if a.ring.is_some() || input::load_json(&a.ideal)?.get("ring").is_some() {
        let i: BranchedIdeal = input::branched_ideal(&a.ideal, a.ring.as_deref())?;
        let e = i.hs_multiplicity()?;
        oracle_report("branched", &i, e, a)
    } else {
        let i: MonomialIdeal = input::monomial_ideal(&a.ideal)?;
        let e = i.hs_multiplicity()?;
        oracle_report("monomial", &i, e, a)
    }
}

fn oracle_report<H: RingModelHandle + Serialize>(model: &str, h: &H, e: u64, a: &OracleArgs) -> Result<Report> {
    let mut out = Map::new();
    out.insert("model".into(), json!(model));
    out.insert("ideal".into(), serde_json::to_value(h)?);
    out.insert("dimension".into(), json!(h.dimension()));
    out.insert("hs_multiplicity".into(), json!(e));
    let mut csv = String::from("theory,index,colength,normalized,normalized_approx\n");
    let mut add_trace = |theory: &str, t: &[lech_core::oracle::TracePoint]| {
        for line in trace_csv(t).lines().skip(1) {
            csv.push_str(&format!("{theory},{line}\n"));
        }
    };
    if a.theory != OracleTheory::Hk {
        let o = hs_oracle(h, a.k_max.unwrap_or_else(|| default_k_max(h.dimension())))?;
        add_trace("hs", &o.sequence);
        out.insert("hs".into(), serde_json::to_value(&o)?);
        out.insert("hs_agrees".into(), json!(o.estimate == int(e as i64)));
    }
    if a.theory != OracleTheory::Hs {
        let qs = a.q.clone().unwrap_or_else(|| DEFAULT_Q_LIST.to_vec());
        let o = hk_oracle(h, &qs)?;
        add_trace("hk", &o.sequence);
        out.insert("hk".into(), serde_json::to_value(&o)?);
    }
    Ok(Report {
        json: Value::Object(out),
        markdown: None,
        csv: Some(csv),
    })
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Seed for the randomized property suites.
    #[arg(long, required = true)]
    pub seed: u64,
    /// Run one criterion by number.
    #[arg(long, value_name = "ID")]
    pub criterion: Option<u32>,
}

/// The report and whether every criterion passed.
pub fn verify(a: &VerifyArgs) -> Result<(Report, bool)> {
    let results = match a.criterion {
        Some(id) if !CRITERIA.iter().any(|c| c.0 == id) => {
            return Err(usage(format!("no criterion {id}; valid ids are 1..={}", CRITERIA.len())))
        }
        Some(id) => vec![verify::run_criterion(id, a.seed)],
        None => verify::run_all(a.seed),
    };
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        eprintln!("{tag} {} {}: {}", r.id, r.title, r.detail);
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let ok = passed == results.len();
    let mut md = String::from("| id | criterion | result | detail |\n|---|---|---|---|\n");
    let mut rows = Vec::new();
    for r in &results {
        let tag = if r.passed { "pass" } else { "fail" };
        md.push_str(&format!("| {} | {} | {} | {} |\n", r.id, r.title, tag, r.detail.replace('|', "\\|")));
        rows.push(vec![r.id.to_string(), r.title.to_string(), tag.to_string(), r.detail.clone()]);
    }
    let json = json!({
        "seed": a.seed,
        "passed": passed,
        "failed": results.len() - passed,
        "results": results,
    });
    let report = Report {
        json,
        markdown: Some(md),
        csv: Some(csv_table(&["id", "criterion", "result", "detail"], &rows)?),
    };
    Ok((report, ok))
}
