//! Flat `key=value` sweep configuration.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::{Symbol12Args, DEFAULT_DIGITS};
use crate::geometry::NEAR_CAUSTIC;
use crate::spin::Spin;

const SPIN_KEYS: [&str; 11] = [
    "j1", "s2", "j12", "j346", "j3", "j4", "j34", "j135", "j13", "j24", "j6",
];
const OTHER_KEYS: [&str; 5] = ["j5_min", "j5_max", "margin", "precision", "workers"];

/// A j5 sweep of a 12j symbol with the other eleven spins fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    /// The fixed spins; `j5` is ignored.
    pub base: Symbol12Args,
    pub j5_min: Option<Spin>,
    pub j5_max: Option<Spin>,
    /// Rows with either caustic margin below this are left out of the metrics.
    pub margin: f64,
    /// Significant digits of the exact column.
    pub precision: u32,
    /// Worker threads; 0 means one per core.
    pub workers: usize,
}

impl SweepConfig {
    pub fn new(base: Symbol12Args) -> Self {
        SweepConfig {
            base,
            j5_min: None,
            j5_max: None,
            margin: NEAR_CAUSTIC,
            precision: DEFAULT_DIGITS,
            workers: 0,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        text.parse()
    }

    pub fn to_config_string(&self) -> String {
        let b = &self.base;
        let spins = [
            b.j1, b.s2, b.j12, b.j346, b.j3, b.j4, b.j34, b.j135, b.j13, b.j24, b.j6,
        ];
        let mut out = String::new();
        for (k, v) in SPIN_KEYS.iter().zip(spins) {
            out.push_str(&format!("{k}={v}\n"));
        }
        let bound = |s: Option<Spin>| s.map_or_else(|| "auto".to_string(), |s| s.to_string());
        out.push_str(&format!("j5_min={}\n", bound(self.j5_min)));
        out.push_str(&format!("j5_max={}\n", bound(self.j5_max)));
        out.push_str(&format!("margin={}\n", self.margin));
        out.push_str(&format!("precision={}\n", self.precision));
        out.push_str(&format!("workers={}\n", self.workers));
        out
    }
}

impl std::str::FromStr for SweepConfig {
    type Err = Error;

    /// Blank lines and lines starting with `#` are skipped. All eleven fixed
    /// spins are required; the rest default.
    fn from_str(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if !SPIN_KEYS.contains(&k) && !OTHER_KEYS.contains(&k) {
                return Err(Error::Config(format!("line {}: unknown key {k:?}", n + 1)));
            }
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Config(format!(
                    "line {}: duplicate key {k:?}",
                    n + 1
                )));
            }
        }
        let spin = |k: &str| -> Result<Spin> {
            let v = map
                .get(k)
                .ok_or_else(|| Error::Config(format!("missing key {k:?}")))?;
            v.parse()
                .map_err(|_| Error::Config(format!("{k}: {v:?} is not a spin")))
        };
        let mut s = [Spin::ZERO; 12];
        // array slot of each fixed key; slot 10 is j5
        for (k, slot) in SPIN_KEYS.iter().zip([0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11]) {
            s[slot] = spin(k)?;
        }
        let bound = |k: &str| -> Result<Option<Spin>> {
            match map.get(k).map(String::as_str) {
                None | Some("auto") => Ok(None),
                Some(_) => spin(k).map(Some),
            }
        };
        let mut cfg = SweepConfig::new(Symbol12Args::from_array(s));
        cfg.j5_min = bound("j5_min")?;
        cfg.j5_max = bound("j5_max")?;
        if let Some(v) = map.get("margin") {
            cfg.margin = v
                .parse()
                .ok()
                .filter(|m: &f64| *m >= 0.0 && m.is_finite())
                .ok_or_else(|| {
                    Error::Config(format!("margin: {v:?} is not a nonnegative number"))
                })?;
        }
        if let Some(v) = map.get("precision") {
            cfg.precision = v.parse().ok().filter(|p| *p > 0).ok_or_else(|| {
                Error::Config(format!("precision: {v:?} is not a positive integer"))
            })?;
        }
        if let Some(v) = map.get("workers") {
            cfg.workers = v
                .parse()
                .map_err(|_| Error::Config(format!("workers: {v:?} is not a count")))?;
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG7: &str = "\
# 177/2 family
j1=177/2
s2=5/2
j12=88
j346=89
j3=181/2
j4=141/2
j34=87
j135=77
j13=75
j24=73
j6=91
j5_min=auto
workers=2
";

    #[test]
    fn parse_and_round_trip() {
        let cfg: SweepConfig = FIG7.parse().unwrap();
        assert_eq!(cfg.base.j1, Spin::half(177));
        assert_eq!(cfg.base.j6, Spin::int(91));
        assert_eq!(cfg.j5_min, None);
        assert_eq!(cfg.workers, 2);
        assert_eq!(cfg.margin, NEAR_CAUSTIC);
        let again: SweepConfig = cfg.to_config_string().parse().unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            "j1=3".parse::<SweepConfig>(),
            Err(Error::Config(_))
        ));
        let unknown = format!("{FIG7}j7=2\n");
        assert!(unknown.parse::<SweepConfig>().is_err());
        let bad_spin = FIG7.replace("j6=91", "j6=91/3");
        assert!(bad_spin.parse::<SweepConfig>().is_err());
        let neg = format!("{FIG7}margin=-1\n");
        assert!(neg.parse::<SweepConfig>().is_err());
        let dup = format!("{FIG7}j6=3\n");
        assert!(dup.parse::<SweepConfig>().is_err());
    }
}
