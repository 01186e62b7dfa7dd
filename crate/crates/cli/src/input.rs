//! Parsing of command-line values: ranges, lists, model files and presets.

use std::path::Path;

use fsq_core::finite_section::{GridSpec, SparseVector};
use fsq_core::operators::{Filtration, OperatorModel, SequenceRule, Support};
use fsq_core::C64;

use crate::CliError;

/// `"min:max:step"`.
pub fn parse_range(s: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(CliError::Usage(format!("range {s:?} is not of the form min:max:step")));
    };
    let num = |x: &str| x.parse::<f64>().map_err(|_| CliError::Usage(format!("bad number {x:?} in range {s:?}")));
    let (lo, hi, step) = (num(a)?, num(b)?, num(c)?);
    if !(step > 0.0) || !(hi >= lo) {
        return Err(CliError::Usage(format!("range {s:?} needs min <= max and step > 0")));
    }
    Ok((lo, hi, step))
}

pub fn grid(re: &str, im: Option<&str>) -> Result<GridSpec, CliError> {
    let (re_min, re_max, re_step) = parse_range(re)?;
    let (im_min, im_max, im_step) = parse_range(im.unwrap_or(re))?;
    Ok(GridSpec { re_min, re_max, re_step, im_min, im_max, im_step })
}

/// Comma-separated list; empty input gives an empty list.
pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|_| CliError::Usage(format!("bad {what} {x:?}"))))
        .collect()
}

/// `"k=v,..."` where `v` is `re` or `re:im`.
pub fn parse_rhs(s: &str) -> Result<SparseVector, CliError> {
    let mut out = SparseVector::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("rhs entry {item:?} is not index=value")))?;
        let k: i64 = k.trim().parse().map_err(|_| CliError::Usage(format!("bad rhs index {k:?}")))?;
        let bad = || CliError::Usage(format!("bad rhs value {v:?}"));
        let z = match v.split_once(':') {
            Some((re, im)) => C64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?),
            None => C64::new(v.trim().parse().map_err(|_| bad())?, 0.0),
        };
        out.insert(k, z);
    }
    if out.is_empty() {
        return Err(CliError::Usage("rhs needs at least one entry".into()));
    }
    Ok(out)
}

/// `coordinate`, `arithmetic:start:step` or `explicit:d1,d2,...`.
pub fn filtration(s: &str) -> Result<Filtration, CliError> {
    let f = if s == "coordinate" {
        Ok(Filtration::coordinate())
    } else if let Some(rest) = s.strip_prefix("arithmetic:") {
        let v: Vec<usize> = rest.split(':').map(|x| x.parse()).collect::<Result<_, _>>().map_err(|_| CliError::Usage(format!("bad filtration {s:?}")))?;
        match v.as_slice() {
            [start, step] => Filtration::arithmetic(*start, *step),
            _ => return Err(CliError::Usage(format!("bad filtration {s:?}"))),
        }
    } else if let Some(rest) = s.strip_prefix("explicit:") {
        Filtration::explicit(parse_list(rest, "dimension")?)
    } else {
        return Err(CliError::Usage(format!("unknown filtration {s:?}")));
    };
    f.map_err(|e| CliError::Usage(e.to_string()))
}

pub const PRESETS: [&str; 6] = ["unilateral-shift", "bilateral-shift", "laplacian", "identity", "zero", "alternating"];

fn preset(name: &str) -> Option<OperatorModel> {
    Some(match name {
        "unilateral-shift" => OperatorModel::unilateral_shift(),
        "bilateral-shift" => OperatorModel::bilateral_shift(),
        "laplacian" => OperatorModel::tridiagonal_toeplitz(Support::OneSided, 0.0, 1.0),
        "identity" => OperatorModel::scalar(1.0),
        "zero" => OperatorModel::scalar(0.0),
        "alternating" => OperatorModel::diagonal(Support::OneSided, SequenceRule::Periodic { values: vec![0.0, 1.0] }).ok()?,
        _ => return None,
    })
}

/// A model file path, or `preset:<name>`.
pub fn model(spec: &str) -> Result<OperatorModel, CliError> {
    if let Some(name) = spec.strip_prefix("preset:") {
        return preset(name)
            .ok_or_else(|| CliError::Usage(format!("unknown preset {name:?}; known: {}", PRESETS.join(", "))));
    }
    let text = std::fs::read_to_string(Path::new(spec)).map_err(|e| CliError::Usage(format!("cannot read model {spec:?}: {e}")))?;
    OperatorModel::from_json(&text).map_err(|e| match e {
        fsq_core::FsqError::Parse(m) => CliError::Usage(format!("model {spec:?}: {m}")),
        other => CliError::Domain(other),
    })
}
