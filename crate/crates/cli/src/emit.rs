//! Export of the twisting 4-form `H` as a TOML table of components.

use std::collections::BTreeMap;

use courant_core::courant::checks;
use courant_core::{Battery, BatteryConfig, Courant, Report};
use serde::Serialize;

use crate::model_file::LoadedModel;

#[derive(Debug, Serialize)]
pub struct HFile {
    pub model: String,
    pub coordinates: Vec<String>,
    pub seed: u64,
    pub closed: bool,
    /// Every `H_{ijkl}` with `i<j<k<l` (1-based, comma-separated), zeros included.
    pub components: BTreeMap<String, String>,
}

/// Extracts `H`. Returns the checks alongside; callers must refuse to write
/// the file when they fail.
pub fn extract(loaded: &LoadedModel, config: BatteryConfig) -> (Report, HFile) {
    let m = &loaded.model;
    let c = Courant::new(m);
    let battery = Battery::new(m, config);
    let (report, h) = checks::h_check(&c, &battery);
    let n = m.chart_dim();
    let mut components = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let key = format!("{},{},{},{}", i + 1, j + 1, k + 1, l + 1);
                    components.insert(key, h.component(&[i, j, k, l]).to_string());
                }
            }
        }
    }
    let file = HFile {
        model: loaded.name.clone(),
        coordinates: m.vars().names().to_vec(),
        seed: battery.config.seed,
        closed: h.exterior_derivative().is_zero(),
        components,
    };
    (report, file)
}

pub fn to_toml(file: &HFile) -> String {
    toml::to_string(file).expect("H file serializes")
}
