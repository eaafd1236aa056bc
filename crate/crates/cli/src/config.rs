//! Optional TOML config. Keys mirror the long flags; anything given on the
//! command line (or through its environment variable) takes precedence.

use std::fs;
use std::path::Path;

use serde::Deserialize;

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Config {
    pub budget: Option<usize>,
    pub cap: Option<usize>,
    pub max_order: Option<usize>,
    pub seed: Option<u64>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text =
            fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
        Config::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Config, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

/// First of flag, config value, default.
pub fn pick<T: Copy>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_kebab_keys() {
        let c = Config::parse("budget = 10\nmax-order = 32\nseed = 3\n").unwrap();
        assert_eq!(c.budget, Some(10));
        assert_eq!(c.max_order, Some(32));
        assert_eq!(c.seed, Some(3));
        assert_eq!(c.cap, None);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(Config::parse("bugdet = 1").is_err());
    }

    #[test]
    fn flag_wins() {
        assert_eq!(pick(Some(1), Some(2), 3), 1);
        assert_eq!(pick(None, Some(2), 3), 2);
        assert_eq!(pick::<u8>(None, None, 3), 3);
    }
}
