//! Effective settings: defaults, then the config file, then `PERMV_*`
//! environment variables, then flags.

use std::path::Path;

use permv::Limits;
use permv::{FieldSpec, MonomialOrder};
use serde::Deserialize;

use crate::args::{Format, GlobalArgs};

pub const DEFAULT_ALPHA_CAP: u32 = 6;
pub const DEFAULT_SEARCH_CAP: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub field: FieldSpec,
    /// Degree ceiling for α computations.
    pub alpha_cap: u32,
    /// Degree ceiling for the witness search; never above `alpha_cap`.
    pub search_cap: u32,
    pub seed: u64,
    pub random_budget: usize,
    pub format: Format,
    pub limits: Limits,
    /// `None` means the shape's own order.
    pub order: Option<MonomialOrder>,
    pub timings: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: FieldSpec::RATIONALS,
            alpha_cap: DEFAULT_ALPHA_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
            seed: 0,
            random_budget: 64,
            format: Format::Text,
            limits: Limits::default(),
            order: None,
            timings: false,
        }
    }
}

/// Keys accepted in the TOML file. Unknown keys are an error.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    char: Option<u64>,
    max_degree: Option<u32>,
    search_cap: Option<u32>,
    seed: Option<u64>,
    random_budget: Option<usize>,
    format: Option<Format>,
    order: Option<String>,
    max_pair_reductions: Option<u64>,
    max_bytes: Option<u64>,
}

#[derive(Debug, Default)]
struct Layer {
    char: Option<u64>,
    max_degree: Option<u32>,
    seed: Option<u64>,
}

fn env_layer(env: &dyn Fn(&str) -> Option<String>) -> Result<Layer, String> {
    fn num<T: std::str::FromStr>(key: &str, value: Option<String>) -> Result<Option<T>, String> {
        value
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| format!("{key}={v:?} is not a non-negative integer"))
            })
            .transpose()
    }
    Ok(Layer {
        char: num("PERMV_CHAR", env("PERMV_CHAR"))?,
        max_degree: num("PERMV_MAX_DEGREE", env("PERMV_MAX_DEGREE"))?,
        seed: num("PERMV_SEED", env("PERMV_SEED"))?,
    })
}

fn parse_order(text: &str) -> Result<Option<MonomialOrder>, String> {
    match text.trim() {
        "shape-default" => Ok(None),
        t => MonomialOrder::parse(t).map(Some).map_err(|e| e.to_string()),
    }
}

/// Resolves the effective configuration. `env` looks up environment
/// variables so tests can supply their own.
pub fn load_config(
    path: Option<&Path>,
    env: &dyn Fn(&str) -> Option<String>,
    flags: &GlobalArgs,
) -> Result<Config, String> {
    let file = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("config {}: {e}", p.display()))?;
            toml::from_str::<FileConfig>(&text).map_err(|e| format!("config {}: {e}", p.display()))?
        }
        None => FileConfig::default(),
    };
    let env = env_layer(env)?;
    let mut cfg = Config::default();

    let characteristic = flags.characteristic.or(env.char).or(file.char).unwrap_or(0);
    cfg.field = FieldSpec::new(characteristic).map_err(|e| e.to_string())?;

    if let Some(d) = flags.max_degree.or(env.max_degree).or(file.max_degree) {
        cfg.alpha_cap = d;
    }
    cfg.search_cap = file.search_cap.unwrap_or(DEFAULT_SEARCH_CAP).min(cfg.alpha_cap);
    cfg.seed = flags.seed.or(env.seed).or(file.seed).unwrap_or(0);
    if let Some(b) = file.random_budget {
        cfg.random_budget = b;
    }
    cfg.format = flags.format.or(file.format).unwrap_or_default();
    if let Some(n) = file.max_pair_reductions {
        cfg.limits.max_pair_reductions = n;
    }
    if let Some(n) = file.max_bytes {
        cfg.limits.max_bytes = n;
    }
    if let Some(o) = flags.order.as_deref().or(file.order.as_deref()) {
        cfg.order = parse_order(o)?;
    }
    cfg.timings = flags.timings;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_env(_: &str) -> Option<String> {
        None
    }

    #[test]
    fn defaults_without_any_source() {
        let c = load_config(None, &no_env, &GlobalArgs::default()).unwrap();
        assert_eq!(c, Config::default());
        assert_eq!((c.field.characteristic(), c.alpha_cap, c.search_cap, c.seed), (0, 6, 4, 0));
    }

    #[test]
    fn env_overrides_file_and_flags_override_env() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("permv.toml");
        std::fs::write(&path, "char = 7\nseed = 11\nmax-degree = 5\n").unwrap();
        let env = |k: &str| (k == "PERMV_CHAR").then(|| "3".to_string());
        let c = load_config(Some(&path), &env, &GlobalArgs::default()).unwrap();
        assert_eq!(c.field.characteristic(), 3);
        assert_eq!((c.seed, c.alpha_cap), (11, 5));
        let flags = GlobalArgs {
            characteristic: Some(5),
            ..Default::default()
        };
        let c = load_config(Some(&path), &env, &flags).unwrap();
        assert_eq!(c.field.characteristic(), 5);
    }

    #[test]
    fn composite_characteristic_rejected() {
        let env = |k: &str| (k == "PERMV_CHAR").then(|| "4".to_string());
        assert!(load_config(None, &env, &GlobalArgs::default()).is_err());
    }

    #[test]
    fn malformed_file_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(&path, "colour = \"blue\"\n").unwrap();
        assert!(load_config(Some(&path), &no_env, &GlobalArgs::default()).is_err());
        std::fs::write(&path, "char = \"zero\"\n").unwrap();
        assert!(load_config(Some(&path), &no_env, &GlobalArgs::default()).is_err());
    }

    #[test]
    fn search_cap_never_exceeds_alpha_cap() {
        let flags = GlobalArgs {
            max_degree: Some(2),
            ..Default::default()
        };
        let c = load_config(None, &no_env, &flags).unwrap();
        assert_eq!((c.alpha_cap, c.search_cap), (2, 2));
    }

    #[test]
    fn order_spellings() {
        assert_eq!(parse_order("shape-default").unwrap(), None);
        assert!(parse_order("lex:a,b").unwrap().is_some());
        assert!(parse_order("grevlex").is_err());
    }
}
