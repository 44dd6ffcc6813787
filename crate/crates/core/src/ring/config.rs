use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{OrderTable, Ring, RingError};

/// On-disk ring description.
///
/// ```json
/// {"kind": "order", "rank": 2, "mul_table": [1,0, 0,1, 0,1, 2,0], "localize_at": [1, 0]}
/// ```
///
/// `rank` is the number of basis elements, `mul_table` lists the coordinates
/// of `xi_i * xi_j` for every `(i, j)` (flat or nested), and `localize_at` gives
/// the coordinates of the inverted element `u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul_table: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub localize_at: Option<Vec<i64>>,
}

fn flatten(v: &Value, out: &mut Vec<i64>) -> Result<(), RingError> {
    match v {
        Value::Array(items) => items.iter().try_for_each(|i| flatten(i, out)),
        Value::Number(n) => {
            let x = n
                .as_i64()
                .ok_or_else(|| RingError::BadTable(format!("non-integer entry {n}")))?;
            out.push(x);
            Ok(())
        }
        other => Err(RingError::BadTable(format!("unexpected entry {other}"))),
    }
}

impl RingConfig {
    pub fn from_json(text: &str) -> Result<Self, RingError> {
        serde_json::from_str(text).map_err(|e| RingError::BadTable(e.to_string()))
    }

    pub fn build(&self) -> Result<Ring, RingError> {
        let base = match self.kind.as_str() {
            "integers" => Ring::integers(),
            "modular" => {
                let m = self
                    .modulus
                    .ok_or_else(|| RingError::BadTable("modular ring needs `modulus`".into()))?;
                if self.localize_at.is_some() {
                    return Err(RingError::BadLocalizationBase);
                }
                return Ring::modular(m);
            }
            "order" => {
                let rank = self
                    .rank
                    .ok_or_else(|| RingError::BadTable("order needs `rank`".into()))?;
                let table = self
                    .mul_table
                    .as_ref()
                    .ok_or_else(|| RingError::BadTable("order needs `mul_table`".into()))?;
                let mut flat = Vec::new();
                flatten(table, &mut flat)?;
                Ring::order(OrderTable::new(rank, flat)?)
            }
            other => return Err(RingError::BadTable(format!("unknown ring kind `{other}`"))),
        };
        match &self.localize_at {
            None => Ok(base),
            Some(u) => {
                let coords: Vec<BigInt> = u.iter().map(|&c| BigInt::from(c)).collect();
                let u = base.element(&coords, 0)?;
                Ring::localized(&base, &u)
            }
        }
    }
}
