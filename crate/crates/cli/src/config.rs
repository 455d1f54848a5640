//! Flat `key = value` configuration for the `table` subcommand.
//!
//! ```text
//! # comment
//! lengths  = 100, 200, 300
//! switches = 1, 5, 10, 20
//! primes   = 13, 67, 127
//! trials   = 100
//! seed     = 42
//! ```

use std::str::FromStr;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct TableConfig {
    pub lengths: Option<Vec<usize>>,
    pub switches: Option<Vec<usize>>,
    pub primes: Option<Vec<u64>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

fn parse_list<T: FromStr>(key: &str, value: &str, line: usize) -> Result<Vec<T>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| format!("line {line}: '{s}' is not a valid entry for {key}"))
        })
        .collect()
}

fn parse_one<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("line {line}: '{value}' is not a valid value for {key}"))
}

impl FromStr for TableConfig {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let mut cfg = TableConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| format!("line {line}: expected 'key = value'"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "lengths" => cfg.lengths = Some(parse_list(key, value, line)?),
                "switches" => cfg.switches = Some(parse_list(key, value, line)?),
                "primes" => cfg.primes = Some(parse_list(key, value, line)?),
                "trials" => cfg.trials = Some(parse_one(key, value, line)?),
                "seed" => cfg.seed = Some(parse_one(key, value, line)?),
                other => return Err(format!("line {line}: unknown key '{other}'")),
            }
        }
        Ok(cfg)
    }
}
