//! Orders of possibly infinite groups.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A group order: either a finite count or countably infinite.
///
/// Serializes as a JSON number, or as the string `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Finite(u128),
    Infinite,
}

impl Cardinal {
    pub const ONE: Cardinal = Cardinal::Finite(1);

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn finite(self) -> Option<u128> {
        match self {
            Cardinal::Finite(n) => Some(n),
            Cardinal::Infinite => None,
        }
    }

    /// Product, or `None` when a finite product does not fit in `u128`.
    pub fn checked_mul(self, rhs: Cardinal) -> Option<Cardinal> {
        match (self, rhs) {
            (Cardinal::Finite(0), _) | (_, Cardinal::Finite(0)) => Some(Cardinal::Finite(0)),
            (Cardinal::Finite(a), Cardinal::Finite(b)) => a.checked_mul(b).map(Cardinal::Finite),
            _ => Some(Cardinal::Infinite),
        }
    }
}

impl From<u64> for Cardinal {
    fn from(n: u64) -> Self {
        Cardinal::Finite(n as u128)
    }
}

/// Panics on overflow of a finite product; use [`Cardinal::checked_mul`]
/// where the operands are not already bounded.
impl Mul for Cardinal {
    type Output = Cardinal;

    fn mul(self, rhs: Cardinal) -> Cardinal {
        self.checked_mul(rhs).expect("cardinal product overflows u128")
    }
}

impl std::iter::Product for Cardinal {
    fn product<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Cardinal::ONE, |acc, c| acc * c)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cardinal::Finite(n) => s.serialize_u128(*n),
            Cardinal::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u128),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(n) => Ok(Cardinal::Finite(n)),
            Repr::Text(s) if s == "infinite" => Ok(Cardinal::Infinite),
            Repr::Text(s) => Err(serde::de::Error::custom(format!("bad cardinal {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs() {
        assert_eq!(Cardinal::Finite(3) * Cardinal::Infinite, Cardinal::Infinite);
        assert_eq!(Cardinal::Finite(3) * Cardinal::Finite(4), Cardinal::Finite(12));
        assert_eq!(Cardinal::Finite(u128::MAX).checked_mul(Cardinal::Finite(2)), None);
    }

    #[test]
    fn json_shape() {
        assert_eq!(serde_json::to_string(&Cardinal::Finite(64)).unwrap(), "64");
        assert_eq!(serde_json::to_string(&Cardinal::Infinite).unwrap(), "\"infinite\"");
        let c: Cardinal = serde_json::from_str("\"infinite\"").unwrap();
        assert_eq!(c, Cardinal::Infinite);
    }
}
