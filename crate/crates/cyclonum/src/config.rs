//! Flat key-value sweep configuration.
//!
//! ```text
//! # comment
//! triple = 5,1,3
//! triple = 3,1,5
//! pin = 5,1,6,2
//! methods = oracle,rank,chars
//! enumeration_cap = 2000000
//! rank_cap = 400
//! ell_cap = 2197
//! precision_budget = 3.5e13
//! ```
//!
//! Without any `triple` line the default grid is used; without `methods`
//! every family is enabled.

use std::fmt;

use cyclonum_core::consistency::{MethodFamily, NormPin, SweepConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ConfigError {}

fn numbers<T: std::str::FromStr>(
    value: &str,
    count: usize,
    line: usize,
) -> Result<Vec<T>, ConfigError> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(ConfigError {
            line,
            message: format!(
                "expected {} comma-separated integers, got `{}`",
                count, value
            ),
        });
    }
    parts
        .iter()
        .map(|s| {
            s.parse().map_err(|_| ConfigError {
                line,
                message: format!("`{}` is not a nonnegative integer", s),
            })
        })
        .collect()
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(
    value: &str,
    key: &str,
    line: usize,
) -> Result<T, ConfigError> {
    match value.parse::<T>() {
        Ok(v) if v > T::default() => Ok(v),
        _ => Err(ConfigError {
            line,
            message: format!("`{}` must be a positive number, got `{}`", key, value),
        }),
    }
}

pub fn parse_config(text: &str) -> Result<SweepConfig, ConfigError> {
    let mut config = SweepConfig::default_grid();
    let mut triples = Vec::new();
    let mut methods = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError {
            line,
            message: format!("expected `key = value`, got `{}`", content),
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "triple" => {
                let v: Vec<u32> = numbers(value, 3, line)?;
                triples.push((v[0], v[1], v[2]));
            }
            "pin" => {
                let v: Vec<u64> = numbers(value, 4, line)?;
                let small = |x: u64| {
                    u32::try_from(x).map_err(|_| ConfigError {
                        line,
                        message: format!("`{}` is too large", x),
                    })
                };
                config.pins.push(NormPin {
                    p: small(v[0])?,
                    n: small(v[1])?,
                    r: small(v[2])?,
                    target: v[3],
                });
            }
            "methods" => {
                let mut list = Vec::new();
                for name in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let family = MethodFamily::parse(name).ok_or_else(|| ConfigError {
                        line,
                        message: format!("unknown method `{}`", name),
                    })?;
                    if !list.contains(&family) {
                        list.push(family);
                    }
                }
                methods = Some(list);
            }
            "enumeration_cap" => config.limits.enumeration = positive(value, key, line)?,
            "rank_cap" => config.limits.rank = positive(value, key, line)?,
            "ell_cap" => config.limits.ell = positive(value, key, line)?,
            "precision_budget" => config.limits.precision_budget = positive(value, key, line)?,
            other => {
                return Err(ConfigError {
                    line,
                    message: format!("unknown key `{}`", other),
                })
            }
        }
    }
    if !triples.is_empty() {
        config.triples = triples;
    }
    if let Some(list) = methods {
        config.methods = list;
    }
    config.validate().map_err(|e| ConfigError {
        line: 0,
        message: e.to_string(),
    })?;
    Ok(config)
}
