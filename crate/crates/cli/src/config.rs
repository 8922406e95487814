//! Experiment configuration: a JSON document selecting the scheme, the
//! window, and per-command defaults. Command-line flags override it.

use std::path::Path;

use serde::Deserialize;

use modelset_core::{CpsDescriptor, Window};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum CpsSpec {
    /// `"golden"`
    Named(String),
    /// `{"mode": "numeric", ...}`
    Full(CpsDescriptor),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub cps: Option<CpsSpec>,
    pub window: Option<Window>,
    /// Second window for cover commands (the Meyer subset's window).
    pub sub_window: Option<Window>,
    pub region: Option<[f64; 2]>,
    pub avg_indices: Option<Vec<u64>>,
    pub seed: Option<u64>,
    pub precision: Option<u32>,
    pub k: Option<u32>,
    pub r: Option<u32>,
    pub n: Option<u32>,
    pub eps: Option<f64>,
}

pub struct Resolved {
    pub cps: CpsDescriptor,
    pub window: Window,
    pub sub_window: Option<Window>,
    pub region: Option<[f64; 2]>,
    pub seed: u64,
    pub precision: u32,
    pub config: ExperimentConfig,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| {
            format!(
                "{}:{}:{}: {e}",
                path.display(),
                e.line(),
                e.column()
            )
        })
    }

    pub fn resolve(
        self,
        region_flag: Option<[f64; 2]>,
        seed_flag: Option<u64>,
        precision_flag: Option<u32>,
    ) -> Result<Resolved, String> {
        let cps = match &self.cps {
            None => CpsDescriptor::Golden,
            Some(CpsSpec::Named(name)) if name == "golden" => CpsDescriptor::Golden,
            Some(CpsSpec::Named(name)) => {
                return Err(format!("unknown scheme name {name:?}; use \"golden\""))
            }
            Some(CpsSpec::Full(d)) => d.clone(),
        };
        let window = self.window.clone().unwrap_or_else(Window::fibonacci);
        if !window_fits(&cps, &window) {
            return Err(format!(
                "window dimension {} does not match the scheme's internal dimension {}",
                window.internal_dim(),
                cps.internal_dim()
            ));
        }
        Ok(Resolved {
            cps,
            window,
            sub_window: self.sub_window.clone(),
            region: region_flag.or(self.region),
            seed: seed_flag.or(self.seed).unwrap_or(0),
            precision: precision_flag.or(self.precision).unwrap_or(60),
            config: self,
        })
    }
}

fn window_fits(cps: &CpsDescriptor, window: &Window) -> bool {
    window.internal_dim() == cps.internal_dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_shape() {
        let text = r#"{
            "cps": "golden",
            "window": {"type": "interval", "lo": {"m": -1, "n": 0}, "hi": {"m": -1, "n": 1}}
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(text).unwrap();
        let resolved = cfg.resolve(None, None, None).unwrap();
        assert_eq!(resolved.window, Window::fibonacci());
        assert!(matches!(resolved.cps, CpsDescriptor::Golden));
        assert_eq!(resolved.seed, 0);
        assert_eq!(resolved.precision, 60);
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = r#"{"cps": "golden", "wndow": {}}"#;
        assert!(serde_json::from_str::<ExperimentConfig>(text).is_err());
    }

    #[test]
    fn flags_override_config() {
        let text = r#"{"region": [-10, 10], "seed": 3}"#;
        let cfg: ExperimentConfig = serde_json::from_str(text).unwrap();
        let resolved = cfg.resolve(Some([-5.0, 5.0]), Some(9), None).unwrap();
        assert_eq!(resolved.region, Some([-5.0, 5.0]));
        assert_eq!(resolved.seed, 9);
    }
}
