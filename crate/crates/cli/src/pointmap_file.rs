//! On-disk point-map schema: a JSON document with index-aligned point and
//! image arrays. Re-parsing a written file reproduces the map bit-exactly
//! (serde_json renders every f64 with enough digits to round-trip).

use std::path::Path;

use serde::{Deserialize, Serialize};

use isostab::PointMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointMapFile {
    pub dimension: usize,
    pub d: f64,
    pub points: Vec<Vec<f64>>,
    pub images: Vec<Vec<f64>>,
}

impl PointMapFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
    }

    pub fn into_point_map(self) -> isostab::Result<PointMap> {
        PointMap::new(self.dimension, self.points, self.images, self.d)
    }

    pub fn from_point_map(pm: &PointMap) -> Self {
        PointMapFile {
            dimension: pm.dimension(),
            d: pm.radius(),
            points: pm.domain_points().to_vec(),
            images: pm.image_points().to_vec(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("point maps serialize");
        text.push('\n');
        text
    }
}
