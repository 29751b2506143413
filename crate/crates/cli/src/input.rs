use std::fmt;
use std::path::Path;
use std::sync::Arc;

use lech_core::branched::RingJson;
use lech_core::monomial::IdealJson;
use lech_core::semigroup::SemigroupIdealJson;
use lech_core::{BranchedIdeal, BranchedRing, Exponent, MonomialIdeal, NumericalSemigroup, SemigroupIdeal};
use serde::de::DeserializeOwned;
use serde_json::Value;

/// Malformed input that clap could not catch. Exits with the usage code.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

/// Inline JSON when the argument starts with `{` or `[`, otherwise a path to
/// a UTF-8 JSON file.
pub fn load_json(arg: &str) -> anyhow::Result<Value> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| usage(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("invalid JSON in {}: {e}", short(arg))))
}

fn short(arg: &str) -> String {
    if arg.len() > 40 {
        format!("{}…", &arg[..arg.char_indices().nth(40).map_or(arg.len(), |(i, _)| i)])
    } else {
        arg.to_string()
    }
}

fn shape<T: DeserializeOwned>(v: Value, what: &str) -> anyhow::Result<T> {
    serde_json::from_value(v).map_err(|e| usage(format!("{what}: {e}")))
}

pub fn monomial_ideal(arg: &str) -> anyhow::Result<MonomialIdeal> {
    let j: IdealJson = shape(load_json(arg)?, "expected {\"dim\": d, \"gens\": [[...], ...]}")?;
    Ok(MonomialIdeal::try_from(j)?)
}

pub fn semigroup(gens: &[u64]) -> anyhow::Result<Arc<NumericalSemigroup>> {
    Ok(Arc::new(NumericalSemigroup::new(gens)?))
}

/// A bare list of generators of `S`, or a full `{"semigroup", "gens"}`
/// record whose semigroup must match `s`.
pub fn semigroup_ideal(arg: &str, s: &Arc<NumericalSemigroup>) -> anyhow::Result<SemigroupIdeal> {
    let v = load_json(arg)?;
    let gens: Vec<u64> = if v.is_array() {
        shape(v, "expected a list of semigroup elements")?
    } else {
        let j: SemigroupIdealJson = shape(v, "expected {\"semigroup\": [...], \"gens\": [...]}")?;
        if NumericalSemigroup::new(&j.semigroup)? != **s {
            return Err(usage("the ideal's semigroup differs from --gens"));
        }
        j.gens
    };
    Ok(SemigroupIdeal::new(s.clone(), &gens)?)
}

pub fn ring(arg: &str) -> anyhow::Result<Arc<BranchedRing>> {
    let j: RingJson = shape(load_json(arg)?, "expected {\"dim\": n, \"facets\": [[...], ...]}")?;
    Ok(Arc::new(BranchedRing::from_one_based(j.dim, &j.facets)?))
}

/// `{"ring", "gens"}`, or `{"gens"}` / a bare generator list paired with
/// `--ring`.
pub fn branched_ideal(arg: &str, ring_arg: Option<&str>) -> anyhow::Result<BranchedIdeal> {
    let v = load_json(arg)?;
    let (ring, gens): (Arc<BranchedRing>, Vec<Vec<u32>>) = match (&v, ring_arg) {
        (Value::Object(m), _) if m.contains_key("ring") => {
            let raw = m["ring"].clone();
            let j: RingJson = shape(raw, "ring: expected {\"dim\": n, \"facets\": [...]}")?;
            let r = Arc::new(BranchedRing::from_one_based(j.dim, &j.facets)?);
            if let Some(ra) = ring_arg {
                if *ring(ra)? != *r {
                    return Err(usage("the ideal's ring differs from --ring"));
                }
            }
            (r, shape(m.get("gens").cloned().unwrap_or(Value::Null), "gens")?)
        }
        (Value::Object(m), Some(ra)) => (ring(ra)?, shape(m.get("gens").cloned().unwrap_or(Value::Null), "gens")?),
        (Value::Array(_), Some(ra)) => (ring(ra)?, shape(v, "expected a list of exponent vectors")?),
        _ => return Err(usage("branched ideal needs a ring: pass --ring or a {\"ring\", \"gens\"} record")),
    };
    Ok(BranchedIdeal::new(ring, gens.into_iter().map(Exponent::new).collect())?)
}
