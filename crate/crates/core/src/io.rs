//! Lattice functions on disk: JSON `{q, k_min, values: [[re, im], ...]}`
//! and two-column CSV `k,value` for real data.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::qseries::{c, QBase};
use crate::transform::QLatticeFunction;

pub fn to_json(f: &QLatticeFunction) -> Result<String> {
    Ok(serde_json::to_string(f)?)
}

pub fn from_json(s: &str) -> Result<QLatticeFunction> {
    Ok(serde_json::from_str(s)?)
}

/// Writes `k,value` rows in shortest round-trip form; fails on values with a
/// nonzero imaginary part.
pub fn write_csv<W: Write>(f: &QLatticeFunction, w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["k", "value"])?;
    for (k, v) in f.iter() {
        if v.im != 0.0 {
            return Err(Error::Domain(format!(
                "CSV holds real data only; value at k = {k} is {v}"
            )));
        }
        wr.write_record([k.to_string(), format!("{:?}", v.re)])?;
    }
    wr.flush()?;
    Ok(())
}

/// Reads `k,value` rows (header optional); missing `k` between the smallest
/// and largest index are zero.
pub fn read_csv<R: Read>(r: R, q: QBase) -> Result<QLatticeFunction> {
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(r);
    let mut points = BTreeMap::new();
    for (line, rec) in rd.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(Error::Parse(format!(
                "line {}: expected 2 columns, found {}",
                line + 1,
                rec.len()
            )));
        }
        let k = match rec[0].parse::<i64>() {
            Ok(k) => k,
            Err(_) if line == 0 => continue,
            Err(e) => return Err(Error::Parse(format!("line {}: {e}", line + 1))),
        };
        let v: f64 = rec[1]
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", line + 1)))?;
        if points.insert(k, v).is_some() {
            return Err(Error::Parse(format!("duplicate index k = {k}")));
        }
    }
    let (&lo, &hi) = match (points.keys().next(), points.keys().next_back()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::Parse("no data rows".into())),
    };
    QLatticeFunction::from_fn(q, lo, hi, |k| c(points.get(&k).copied().unwrap_or(0.0)))
}

/// Loads a lattice function, choosing the format by extension
/// (`.csv` needs `q`; anything else is read as JSON).
pub fn load(path: &Path, q: Option<QBase>) -> Result<QLatticeFunction> {
    let text = std::fs::read_to_string(path)?;
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        let q = q.ok_or_else(|| Error::Parse("CSV input needs a base q".into()))?;
        read_csv(text.as_bytes(), q)
    } else {
        from_json(&text)
    }
}
