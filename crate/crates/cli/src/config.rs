//! Flat `key = value` configuration files.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::exit::CliError;

#[derive(Debug, Default)]
pub struct Config {
    entries: BTreeMap<String, (String, usize)>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!("line {line_no}: expected `key = value`")));
            };
            let key = key.trim();
            if key.is_empty() {
                return Err(CliError::config(format!("line {line_no}: empty key")));
            }
            if entries.insert(key.to_string(), (value.trim().to_string(), line_no)).is_some() {
                return Err(CliError::config(format!("line {line_no}: duplicate key `{key}`")));
            }
        }
        Ok(Self { entries })
    }

    pub fn set(&mut self, key: &str, value: String) {
        self.entries.insert(key.to_string(), (value, 0));
    }

    fn take(&mut self, key: &str) -> Option<(String, usize)> {
        self.entries.remove(key)
    }

    pub fn string(&mut self, key: &str) -> Option<String> {
        self.take(key).map(|(v, _)| v)
    }

    pub fn parsed<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError> {
        match self.take(key) {
            None => Ok(None),
            Some((v, line)) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::config(format!("{}: cannot parse `{key} = {v}`", at(line)))),
        }
    }

    pub fn or<T: FromStr>(&mut self, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    pub fn required<T: FromStr>(&mut self, key: &str) -> Result<T, CliError> {
        self.parsed(key)?.ok_or_else(|| CliError::config(format!("missing required key `{key}`")))
    }

    /// Three comma-separated numbers.
    pub fn triple<T: FromStr + Copy + Default>(&mut self, key: &str) -> Result<Option<[T; 3]>, CliError> {
        let Some((v, line)) = self.take(key) else { return Ok(None) };
        let parts: Vec<&str> = v.split(',').map(str::trim).collect();
        let bad = || CliError::config(format!("{}: `{key}` needs three comma-separated numbers, got `{v}`", at(line)));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut out = [T::default(); 3];
        for (o, p) in out.iter_mut().zip(parts) {
            *o = p.parse().map_err(|_| bad())?;
        }
        Ok(Some(out))
    }

    /// Fails if any key was not consumed.
    pub fn finish(self) -> Result<(), CliError> {
        match self.entries.into_iter().next() {
            None => Ok(()),
            Some((key, (_, line))) => Err(CliError::config(format!("{}: unknown key `{key}`", at(line)))),
        }
    }
}

fn at(line: usize) -> String {
    if line == 0 {
        "command line".to_string()
    } else {
        format!("line {line}")
    }
}
