use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use m2z4_core::{DualKind, MPolicy, RingKind};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Format, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::Usage(format!(
                "unknown format {s:?} (text, json, csv)"
            ))),
        }
    }
}

/// Options shared by every subcommand, as given on the command line or in a config file.
#[derive(Clone, Debug, Default)]
pub struct RawOptions {
    pub n: Option<String>,
    pub ring: Option<String>,
    pub kind: Option<String>,
    pub m_policy: Option<String>,
    pub budget: Option<String>,
    pub format: Option<String>,
    pub out: Option<String>,
    pub slow: Option<bool>,
}

impl RawOptions {
    /// Reads `key=value` lines; blank lines and `#` comments are ignored.
    pub fn from_file(path: &Path) -> Result<RawOptions, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "{}:{}: expected key=value",
                    path.display(),
                    lineno + 1
                ))
            })?;
            map.insert(k.trim().replace('-', "_"), v.trim().to_string());
        }
        let mut o = RawOptions::default();
        for (k, v) in map {
            match k.as_str() {
                "n" => o.n = Some(v),
                "ring" => o.ring = Some(v),
                "kind" => o.kind = Some(v),
                "m_policy" => o.m_policy = Some(v),
                "budget" => o.budget = Some(v),
                "format" => o.format = Some(v),
                "out" => o.out = Some(v),
                "slow" => {
                    o.slow = Some(match v.as_str() {
                        "true" | "1" | "yes" => true,
                        "false" | "0" | "no" => false,
                        _ => {
                            return Err(CliError::Usage(format!(
                                "slow must be true or false, got {v:?}"
                            )))
                        }
                    })
                }
                _ => return Err(CliError::Usage(format!("unknown config key {k:?}"))),
            }
        }
        Ok(o)
    }

    /// `self` with gaps filled from `fallback`.
    pub fn or(self, fallback: RawOptions) -> RawOptions {
        RawOptions {
            n: self.n.or(fallback.n),
            ring: self.ring.or(fallback.ring),
            kind: self.kind.or(fallback.kind),
            m_policy: self.m_policy.or(fallback.m_policy),
            budget: self.budget.or(fallback.budget),
            format: self.format.or(fallback.format),
            out: self.out.or(fallback.out),
            slow: self.slow.or(fallback.slow),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Odd lengths, in increasing order; empty when not given.
    pub n: Vec<usize>,
    pub ring: RingKind,
    pub kind: DualKind,
    pub m_policy: MPolicy,
    pub budget: u128,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub slow: bool,
}

fn parse<T: FromStr>(what: &str, v: Option<String>, default: T) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    match v {
        None => Ok(default),
        Some(s) => s
            .parse()
            .map_err(|e| CliError::Usage(format!("invalid {what}: {e}"))),
    }
}

fn odd(n: usize) -> Result<usize, CliError> {
    if n.is_multiple_of(2) {
        Err(CliError::Usage(format!("n must be odd (got {n})")))
    } else {
        Ok(n)
    }
}

/// `7`, `3,5,7` or an inclusive range `3..9` (odd values only).
pub fn parse_n(s: &str) -> Result<Vec<usize>, CliError> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("invalid n {t:?}")))
    };
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(CliError::Usage(format!("empty n range {s}")));
        }
        let v: Vec<usize> = (a..=b).filter(|k| k % 2 == 1).collect();
        if v.is_empty() {
            return Err(CliError::Usage(format!(
                "n must be odd; range {s} has no odd values"
            )));
        }
        return Ok(v);
    }
    let mut v = s
        .split(',')
        .map(|t| num(t).and_then(odd))
        .collect::<Result<Vec<_>, _>>()?;
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

impl RunConfig {
    pub fn resolve(raw: RawOptions) -> Result<RunConfig, CliError> {
        let budget: u128 = parse("budget", raw.budget, m2z4_core::gray::DEFAULT_BUDGET)?;
        if budget == 0 {
            return Err(CliError::Usage("budget must be at least 1".into()));
        }
        Ok(RunConfig {
            n: match raw.n {
                Some(s) => parse_n(&s)?,
                None => Vec::new(),
            },
            ring: parse("ring", raw.ring, RingKind::M2Z4)?,
            kind: parse("kind", raw.kind, DualKind::Euclidean)?,
            m_policy: parse("m-policy", raw.m_policy, MPolicy::One)?,
            budget,
            format: parse("format", raw.format, Format::Text)?,
            out: raw.out.map(PathBuf::from),
            slow: raw.slow.unwrap_or(false),
        })
    }

    /// The single length given, if exactly one.
    pub fn single_n(&self) -> Result<Option<usize>, CliError> {
        match self.n.as_slice() {
            [] => Ok(None),
            [n] => Ok(Some(*n)),
            _ => Err(CliError::Usage("this command takes a single n".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_forms() {
        assert_eq!(parse_n("7").unwrap(), vec![7]);
        assert_eq!(parse_n("7,3,5").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_n("2..9").unwrap(), vec![3, 5, 7, 9]);
        assert!(parse_n("4")
            .unwrap_err()
            .to_string()
            .contains("n must be odd"));
        assert!(parse_n("9..3").is_err());
        assert!(parse_n("x").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.conf");
        fs::write(
            &p,
            "# comment\nn = 5\nkind=hermitian\nm-policy=all-units\nslow=true\n",
        )
        .unwrap();
        let file = RawOptions::from_file(&p).unwrap();
        let flags = RawOptions {
            n: Some("7".into()),
            ..RawOptions::default()
        };
        let cfg = RunConfig::resolve(flags.or(file)).unwrap();
        assert_eq!(cfg.n, vec![7]);
        assert_eq!(cfg.kind, DualKind::Hermitian);
        assert_eq!(cfg.m_policy, MPolicy::AllUnits);
        assert!(cfg.slow);
        assert_eq!(cfg.format, Format::Text);
    }

    #[test]
    fn bad_config() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.conf");
        fs::write(&p, "colour=blue\n").unwrap();
        assert!(RawOptions::from_file(&p).is_err());
        fs::write(&p, "no equals sign\n").unwrap();
        assert!(RawOptions::from_file(&p).is_err());
        let raw = RawOptions {
            budget: Some("0".into()),
            ..RawOptions::default()
        };
        assert!(RunConfig::resolve(raw).is_err());
    }
}
