//! `key=value` parameter lists and complex-number literals.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use qhankel::C64;

use crate::error::CliError;

/// Parses `1.5`, `-2i`, `0.3+0.4i`, `1e-3-2.5e-1j`.
pub fn parse_complex(s: &str) -> Result<C64, CliError> {
    let bad = || CliError::Usage(format!("cannot read `{s}` as a number"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t
            .parse::<f64>()
            .map(|re| C64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // split at the last sign that does not start the string or an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => x.parse::<f64>().map_err(|_| bad()),
    };
    match split {
        Some(i) => Ok(C64::new(
            body[..i].parse().map_err(|_| bad())?,
            imag(&body[i..])?,
        )),
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

/// A list of `key=value` pairs that remembers which keys were read.
pub struct Params {
    values: BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
}

impl Params {
    pub fn parse(items: &[String]) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for item in items {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected key=value, got `{item}`")))?;
            if values
                .insert(k.trim().to_string(), v.trim().to_string())
                .is_some()
            {
                return Err(CliError::Usage(format!("parameter `{k}` given twice")));
            }
        }
        Ok(Params {
            values,
            used: RefCell::new(BTreeSet::new()),
        })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.used.borrow_mut().insert(key.to_string());
        self.values.get(key).map(String::as_str)
    }

    fn required(&self, key: &str) -> Result<&str, CliError> {
        self.raw(key)
            .ok_or_else(|| CliError::Usage(format!("missing parameter `{key}`")))
    }

    pub fn complex(&self, key: &str) -> Result<C64, CliError> {
        parse_complex(self.required(key)?)
    }

    pub fn real(&self, key: &str) -> Result<f64, CliError> {
        let s = self.required(key)?;
        s.parse()
            .map_err(|_| CliError::Usage(format!("`{key}` must be a real number, got `{s}`")))
    }

    pub fn int(&self, key: &str) -> Result<i64, CliError> {
        let s = self.required(key)?;
        s.parse()
            .map_err(|_| CliError::Usage(format!("`{key}` must be an integer, got `{s}`")))
    }

    pub fn optional_int(&self, key: &str) -> Result<Option<i64>, CliError> {
        if self.raw(key).is_none() {
            return Ok(None);
        }
        self.int(key).map(Some)
    }

    /// Comma-separated complex list; empty string gives an empty list.
    pub fn complex_list(&self, key: &str) -> Result<Vec<C64>, CliError> {
        let s = self.raw(key).unwrap_or("");
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(parse_complex)
            .collect()
    }

    pub fn reject_unused(&self) -> Result<(), CliError> {
        let used = self.used.borrow();
        let extra: Vec<&str> = self
            .values
            .keys()
            .filter(|k| !used.contains(*k))
            .map(String::as_str)
            .collect();
        if extra.is_empty() {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "unused parameters: {}",
                extra.join(", ")
            )))
        }
    }

    /// The pairs as given, for echoing in output.
    pub fn echo(&self) -> BTreeMap<String, String> {
        self.values.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_complex("0.8i").unwrap(), C64::new(0.0, 0.8));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("0.3-0.4i").unwrap(), C64::new(0.3, -0.4));
        assert_eq!(parse_complex("1e-3+2.5e-1j").unwrap(), C64::new(1e-3, 0.25));
        assert_eq!(parse_complex("-2e+1").unwrap(), C64::new(-20.0, 0.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn unused_keys_are_reported() {
        let p = Params::parse(&["a=1".into(), "zz=2".into()]).unwrap();
        assert_eq!(p.real("a").unwrap(), 1.0);
        assert!(p.reject_unused().is_err());
        assert!(Params::parse(&["a".into()]).is_err());
    }
}
