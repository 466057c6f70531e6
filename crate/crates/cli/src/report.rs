use std::time::Duration;

use ringcover::{ElementSet, RingTable};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RingSummary {
    pub order: usize,
    pub char: u64,
    pub commutative: bool,
}

impl RingSummary {
    pub fn of(ring: &RingTable) -> Self {
        RingSummary {
            order: ring.order(),
            char: ring.characteristic(),
            commutative: ring.is_commutative(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

impl From<Duration> for Timing {
    fn from(d: Duration) -> Self {
        Timing {
            elapsed_ms: d.as_secs_f64() * 1e3,
        }
    }
}

/// The JSON object printed by every single-ring command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub spec: String,
    pub ring: RingSummary,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<Vec<u64>>>>,
    pub timing: Timing,
}

/// Elements of a set as coordinate vectors.
pub fn coords_of(ring: &RingTable, set: &ElementSet) -> Vec<Vec<u64>> {
    set.iter().map(|x| ring.coords(x)).collect()
}

pub fn format_elem(coords: &[u64]) -> String {
    let inner: Vec<String> = coords.iter().map(u64::to_string).collect();
    format!("({})", inner.join(","))
}

pub fn format_set(ring: &RingTable, set: &ElementSet) -> String {
    let inner: Vec<String> = set.iter().map(|x| format_elem(&ring.coords(x))).collect();
    format!("{{{}}}", inner.join(", "))
}
