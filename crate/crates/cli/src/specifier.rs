//! Set-specifier parsing: the textual grammar behind `--set`.
//!
//! ```text
//!   grid
//!   random:size=N,seed=S
//!   line:auto
//!   subfield
//!   product:a,b,c;d,e;…        (one index list per coordinate)
//!   sphere:t=T
//!   sphere_subset:t=T,size=N,seed=S
//!   file:PATH
//! ```

use fqlab::{construct, Error, FieldSpec, Fq, PointSet, Result};
use std::collections::BTreeMap;

pub fn construct_set(field: &FieldSpec, d: u32, spec: &str) -> Result<PointSet> {
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, r),
        None => (spec, ""),
    };
    match head {
        "grid" => Ok(construct::grid(field, d)),
        "random" => {
            let kv = parse_kv(rest)?;
            let size = get_u64(&kv, "size", spec)?;
            let seed = get_u64(&kv, "seed", spec)?;
            construct::random_set(field, d, size, seed)
        }
        "line" => {
            if rest != "auto" {
                return Err(Error::SpecifierParse(format!("line supports only line:auto, got {spec}")));
            }
            if d != 2 {
                return Err(Error::ConstructionUnavailable("line:auto lives in d=2".into()));
            }
            construct::isotropic_line(field)
        }
        "subfield" => construct::subfield_power(field, d),
        "product" => {
            let parts: Vec<&str> = rest.split(';').collect();
            if parts.len() != d as usize {
                return Err(Error::SpecifierParse(format!(
                    "product needs {d} coordinate lists, got {}",
                    parts.len()
                )));
            }
            let mut sets = Vec::new();
            for part in parts {
                let mut coords = Vec::new();
                for tok in part.split(',') {
                    let idx: u64 = tok
                        .trim()
                        .parse()
                        .map_err(|_| Error::SpecifierParse(format!("bad element index {tok}")))?;
                    if idx >= field.q() {
                        return Err(Error::SpecifierParse(format!(
                            "element index {idx} out of range for q={}",
                            field.q()
                        )));
                    }
                    coords.push(Fq(idx as u32));
                }
                sets.push(coords);
            }
            construct::cartesian_product(field, &sets)
        }
        "sphere" => {
            let kv = parse_kv(rest)?;
            let t = element_arg(field, &kv, "t", spec)?;
            Ok(construct::sphere_full(field, d, t))
        }
        "sphere_subset" => {
            let kv = parse_kv(rest)?;
            let t = element_arg(field, &kv, "t", spec)?;
            let size = get_u64(&kv, "size", spec)?;
            let seed = get_u64(&kv, "seed", spec)?;
            construct::sphere_subset(field, d, t, size, seed)
        }
        "file" => {
            let text = std::fs::read_to_string(rest)
                .map_err(|e| Error::ParseError(format!("cannot read {rest}: {e}")))?;
            crate::io::parse_pointset(field, d, &text)
        }
        other => Err(Error::SpecifierParse(format!("unknown set kind {other}"))),
    }
}

fn parse_kv(rest: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    if rest.is_empty() {
        return Ok(out);
    }
    for pair in rest.split(',') {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::SpecifierParse(format!("expected key=value, got {pair}")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn element_arg(field: &FieldSpec, kv: &BTreeMap<String, String>, key: &str, spec: &str) -> Result<Fq> {
    let idx = get_u64(kv, key, spec)?;
    if idx >= field.q() {
        return Err(Error::SpecifierParse(format!(
            "{key}={idx} out of range for q={}",
            field.q()
        )));
    }
    Ok(field.element(idx))
}

fn get_u64(kv: &BTreeMap<String, String>, key: &str, spec: &str) -> Result<u64> {
    kv.get(key)
        .ok_or_else(|| Error::SpecifierParse(format!("{spec} is missing {key}=")))?
        .parse()
        .map_err(|_| Error::SpecifierParse(format!("{key} in {spec} is not an integer")))
}
