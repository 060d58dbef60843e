use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Canonical name of a place: `real#i`, `complex#i` or `p=P#i` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceLabel {
    Real(usize),
    Complex(usize),
    Finite { p: u64, index: usize },
}

impl PlaceLabel {
    pub fn is_real(&self) -> bool {
        matches!(self, PlaceLabel::Real(_))
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            PlaceLabel::Finite { p, .. } => Some(*p),
            _ => None,
        }
    }
}

impl fmt::Display for PlaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceLabel::Real(i) => write!(f, "real#{i}"),
            PlaceLabel::Complex(i) => write!(f, "complex#{i}"),
            PlaceLabel::Finite { p, index } => write!(f, "p={p}#{index}"),
        }
    }
}

impl FromStr for PlaceLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("malformed place label {s:?}"));
        let (head, idx) = s.trim().split_once('#').ok_or_else(bad)?;
        let index: usize = idx.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        match head {
            "real" => Ok(PlaceLabel::Real(index)),
            "complex" => Ok(PlaceLabel::Complex(index)),
            _ => {
                let p = head.strip_prefix("p=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Ok(PlaceLabel::Finite { p, index })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for s in ["p=5#1", "real#2", "complex#1"] {
            assert_eq!(s.parse::<PlaceLabel>().unwrap().to_string(), s);
        }
        assert!("p=5#0".parse::<PlaceLabel>().is_err());
        assert!("q=5#1".parse::<PlaceLabel>().is_err());
    }
}
