use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{QPoly, UPoly};

/// Whether `q` is kept as an indeterminate or fixed to an integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QMode {
    Symbolic,
    Numeric(BigInt),
}

impl QMode {
    pub fn numeric(q: i64) -> Self {
        QMode::Numeric(BigInt::from(q))
    }

    /// `q` as an element of ℤ[q].
    pub fn q(&self) -> QPoly {
        match self {
            QMode::Symbolic => QPoly::q(),
            QMode::Numeric(v) => QPoly::constant(v.clone()),
        }
    }

    pub fn specialize(&self, p: &QPoly) -> QPoly {
        match self {
            QMode::Symbolic => p.clone(),
            QMode::Numeric(v) => p.specialize(v),
        }
    }

    pub fn specialize_u(&self, p: &UPoly) -> UPoly {
        match self {
            QMode::Symbolic => p.clone(),
            QMode::Numeric(v) => p.specialize(v),
        }
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Symbolic => write!(f, "sym"),
            QMode::Numeric(v) => write!(f, "{v}"),
        }
    }
}
