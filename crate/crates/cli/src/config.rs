//! JSON run configuration: defaults, file merge and dotted-path overrides.
//!
//! Loading starts from the serialized defaults, merges the file on top of
//! them and then applies `--set path=value` overrides. Keys that do not exist
//! in the defaults are rejected with their full path. Link-fading objects
//! (anything carrying a `family` key) are replaced whole rather than merged,
//! since their fields depend on the family.

use std::fs;
use std::path::{Path, PathBuf};

use risfade_core::montecarlo::SweepSpec;
use risfade_core::sysmodel::{Scheme, SystemConfig, User};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSettings {
    pub power_points_dbm: Vec<f64>,
    pub trials_per_point: u64,
    pub master_seed: u64,
    pub user: User,
}

/// Everything `op-curve` needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemConfig<f64>,
    pub sweep: SweepSettings,
    pub schemes: Vec<Scheme>,
    pub output: PathBuf,
}

pub const DEFAULT_TRIALS: u64 = 200_000;
pub const DEFAULT_SEED: u64 = 1;

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            system: SystemConfig::default(),
            sweep: SweepSettings {
                power_points_dbm: SweepSpec::linspace_dbm(0.0, 40.0, 2.0).expect("static grid"),
                trials_per_point: DEFAULT_TRIALS,
                master_seed: DEFAULT_SEED,
                user: User::U1,
            },
            schemes: vec![Scheme::RisNoma, Scheme::ConventionalNoma],
            output: PathBuf::from("op_curve.csv"),
        }
    }
}

impl RunConfig {
    /// Module-level invariants of the system and the sweep.
    pub fn validate(&self) -> Result<()> {
        self.system.validate()?;
        self.sweep_spec(Scheme::RisNoma).validate()?;
        if self.schemes.is_empty() {
            return Err(CliError::Config("schemes: at least one scheme is required".into()));
        }
        Ok(())
    }

    pub fn sweep_spec(&self, scheme: Scheme) -> SweepSpec<f64> {
        SweepSpec {
            power_points_dbm: self.sweep.power_points_dbm.clone(),
            trials_per_point: self.sweep.trials_per_point,
            master_seed: self.sweep.master_seed,
            scheme,
            user: self.sweep.user,
        }
    }
}

/// A `path=value` override. The value is parsed as JSON, falling back to a
/// plain string.
#[derive(Debug, Clone, PartialEq)]
pub struct Override {
    pub path: String,
    pub value: Value,
}

impl std::str::FromStr for Override {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (path, raw) = s
            .split_once('=')
            .ok_or_else(|| format!("expected path=value, got `{s}`"))?;
        let path = path.trim();
        if path.is_empty() {
            return Err(format!("empty path in `{s}`"));
        }
        let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
        Ok(Self {
            path: path.to_string(),
            value,
        })
    }
}

/// Reads `path` (if any) over the defaults of `T`, applies `overrides`, and deserializes.
pub fn load<T>(path: Option<&Path>, overrides: &[Override]) -> Result<T>
where
    T: Default + Serialize + DeserializeOwned,
{
    let mut root = serde_json::to_value(T::default()).expect("defaults serialize");
    if let Some(path) = path {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let patch: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        merge(&mut root, patch, "")?;
    }
    for o in overrides {
        set_path(&mut root, &o.path, o.value.clone())?;
    }
    from_value(root)
}

pub fn from_value<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let at = e.path().to_string();
        CliError::Config(format!("{at}: {}", e.into_inner()))
    })
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn is_tagged(v: &Value) -> bool {
    matches!(v, Value::Object(m) if m.contains_key("family"))
}

/// Recursively overlays `patch` on `base`.
pub fn merge(base: &mut Value, patch: Value, prefix: &str) -> Result<()> {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                let here = join(prefix, &k);
                let Some(slot) = b.get_mut(&k) else {
                    return Err(CliError::Config(format!("unknown key `{here}`")));
                };
                if is_tagged(slot) || !slot.is_object() || !v.is_object() {
                    *slot = v;
                } else {
                    merge(slot, v, &here)?;
                }
            }
            Ok(())
        }
        (b, p) => {
            *b = p;
            Ok(())
        }
    }
}

/// Sets one dotted path; every segment must already exist, except fields
/// inside a link-fading object whose family is being changed.
pub fn set_path(root: &mut Value, dotted: &str, value: Value) -> Result<()> {
    let parts: Vec<&str> = dotted.split('.').collect();
    let mut cur = root;
    for (i, key) in parts.iter().enumerate() {
        let here = parts[..=i].join(".");
        let tagged = is_tagged(cur);
        let Value::Object(map) = cur else {
            return Err(CliError::Config(format!("`{}` is not an object", parts[..i].join("."))));
        };
        let last = i + 1 == parts.len();
        if last {
            if !map.contains_key(*key) && !tagged {
                return Err(CliError::Config(format!("unknown key `{here}`")));
            }
            map.insert(key.to_string(), value);
            if tagged && *key == "family" {
                retain_family_fields(map);
            }
            return Ok(());
        }
        cur = map
            .get_mut(*key)
            .ok_or_else(|| CliError::Config(format!("unknown key `{here}`")))?;
    }
    unreachable!("split yields at least one segment")
}

/// After a family switch, drop the previous family's parameters.
fn retain_family_fields(map: &mut Map<String, Value>) {
    let keep: &[&str] = match map.get("family").and_then(Value::as_str) {
        Some("nakagami") => &["family", "m"],
        Some("alpha_mu") => &["family", "alpha", "mu"],
        Some("kappa_mu") => &["family", "kappa", "mu"],
        _ => return,
    };
    map.retain(|k, _| keep.contains(&k.as_str()));
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("config serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use risfade_core::sysmodel::LinkFading;

    fn defaults() -> Value {
        serde_json::to_value(RunConfig::default()).unwrap()
    }

    #[test]
    fn defaults_round_trip() {
        let c: RunConfig = from_value(defaults()).unwrap();
        assert_eq!(c, RunConfig::default());
        c.validate().unwrap();
        assert_eq!(c.sweep.power_points_dbm.len(), 21);
    }

    #[test]
    fn unknown_keys_name_their_path() {
        let mut v = defaults();
        let e = merge(&mut v, serde_json::json!({"system": {"d3": 1.0}}), "").unwrap_err();
        assert!(e.to_string().contains("system.d3"), "{e}");
        let e = set_path(&mut v, "sweep.seed", Value::from(3)).unwrap_err();
        assert!(e.to_string().contains("sweep.seed"), "{e}");
    }

    #[test]
    fn link_objects_are_replaced() {
        let mut v = defaults();
        merge(
            &mut v,
            serde_json::json!({"system": {"direct_u1": {"family": "kappa_mu", "kappa": 0.0, "mu": 2.0}}}),
            "",
        )
        .unwrap();
        let c: RunConfig = from_value(v).unwrap();
        assert_eq!(c.system.direct_u1, LinkFading::KappaMu { kappa: 0.0, mu: 2.0 });
    }

    #[test]
    fn dotted_overrides() {
        let mut v = defaults();
        set_path(&mut v, "system.n_elements", Value::from(4)).unwrap();
        set_path(&mut v, "system.direct_u1.family", Value::from("alpha_mu")).unwrap();
        set_path(&mut v, "system.direct_u1.alpha", Value::from(2.5)).unwrap();
        set_path(&mut v, "system.direct_u1.mu", Value::from(1.5)).unwrap();
        let c: RunConfig = from_value(v).unwrap();
        assert_eq!(c.system.n_elements, 4);
        assert_eq!(c.system.direct_u1, LinkFading::AlphaMu { alpha: 2.5, mu: 1.5 });
    }

    #[test]
    fn override_parsing() {
        let o: Override = "system.d1=90".parse().unwrap();
        assert_eq!(o.value, Value::from(90));
        let o: Override = "sweep.user=u2".parse().unwrap();
        assert_eq!(o.value, Value::from("u2"));
        assert!("nothing".parse::<Override>().is_err());
    }

    #[test]
    fn type_errors_carry_path() {
        let mut v = defaults();
        set_path(&mut v, "system.d1", Value::from("far")).unwrap();
        let e = from_value::<RunConfig>(v).unwrap_err();
        assert!(e.to_string().contains("system.d1"), "{e}");
    }
}
