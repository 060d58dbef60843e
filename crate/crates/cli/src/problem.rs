//! Problem files.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use qmdecide_core::brauer::{quaternion_class_over_q, QuaternionClass};
use qmdecide_core::honda_tate::{GroundField, IsogenyClass};
use qmdecide_core::nf::NumberField;
use qmdecide_core::places::PlaceLabel;
use qmdecide_core::{Error, IntPoly, Rat, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ground {
    pub p: u64,
    pub r: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub h: Vec<i64>,
    pub m: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Isogeny {
    Charpoly { charpoly: Vec<i64> },
    Factors { factors: Vec<FactorSpec> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub defining_poly: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum AlgebraSpec {
    Ramified { ramified_places: Vec<String> },
    Split { split: bool },
    Hilbert { hilbert: [i64; 2] },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ground: Ground,
    pub isogeny: Isogeny,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_e: Option<FieldSpec>,
    pub algebra_d: AlgebraSpec,
}

/// A parsed and validated problem.
pub struct Problem {
    pub class: IsogenyClass,
    pub field: NumberField,
    pub algebra: QuaternionClass,
}

pub fn int_poly(cs: &[i64]) -> Result<IntPoly> {
    if cs.is_empty() {
        return Err(Error::InvalidInput("empty coefficient list".into()));
    }
    Ok(IntPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect()))
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        // accept the capitalised keys field_E / algebra_D as well
        let text = text.replace("\"field_E\"", "\"field_e\"").replace("\"algebra_D\"", "\"algebra_d\"");
        serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("problem file: {e}")))
    }

    pub fn build(&self, cap: Option<u32>) -> Result<Problem> {
        let ground = GroundField::new(self.ground.p, self.ground.r)?;
        let class = match &self.isogeny {
            Isogeny::Charpoly { charpoly } => IsogenyClass::from_charpoly_with_cap(ground, &int_poly(charpoly)?, cap)?,
            Isogeny::Factors { factors } => {
                let pairs = factors
                    .iter()
                    .map(|f| Ok((int_poly(&f.h)?, f.m)))
                    .collect::<Result<Vec<_>>>()?;
                IsogenyClass::from_factors_with_cap(ground, &pairs, cap)?
            }
        };
        let field = match &self.field_e {
            Some(f) => NumberField::new(int_poly(&f.defining_poly)?)?,
            None => NumberField::rationals(),
        };
        let algebra = match &self.algebra_d {
            AlgebraSpec::Split { split: true } => QuaternionClass::split(&field),
            AlgebraSpec::Split { split: false } => {
                return Err(Error::InvalidInput("\"split\": false is not a class; list ramified places".into()))
            }
            AlgebraSpec::Ramified { ramified_places } => {
                let labels = ramified_places
                    .iter()
                    .map(|s| s.parse::<PlaceLabel>())
                    .collect::<Result<Vec<_>>>()?;
                QuaternionClass::from_ramified(&field, &labels)?
            }
            AlgebraSpec::Hilbert { hilbert: [a, b] } => {
                if field.degree() != 1 {
                    return Err(Error::InvalidInput("Hilbert symbols are only accepted over Q".into()));
                }
                if *a == 0 || *b == 0 {
                    return Err(Error::InvalidInput("Hilbert symbol entries must be nonzero".into()));
                }
                quaternion_class_over_q(&Rat::from_integer((*a).into()), &Rat::from_integer((*b).into()))?
            }
        };
        Ok(Problem { class, field, algebra })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_isogeny_forms() {
        let a = r#"{"ground":{"p":2,"r":2},"isogeny":{"charpoly":[4,-4,1]},
            "field_E":{"defining_poly":[1,0,1]},"algebra_D":{"split":true}}"#;
        let p = ProblemFile::from_json(a).unwrap().build(None).unwrap();
        assert_eq!(p.class.factors[0].m, 2);
        let b = r#"{"ground":{"p":2,"r":1},"isogeny":{"factors":[{"h":[-2,0,1],"m":2}]},
            "field_E":{"defining_poly":[1,0,1]},"algebra_D":{"ramified_places":["p=17#1","p=17#2"]}}"#;
        let p = ProblemFile::from_json(b).unwrap().build(None).unwrap();
        assert!(!p.algebra.is_split());
    }

    #[test]
    fn rejects_bad_labels_and_keys() {
        let a = r#"{"ground":{"p":2,"r":1},"isogeny":{"charpoly":[-2,0,1]},
            "field_E":{"defining_poly":[1,0,1]},"algebra_D":{"ramified_places":["p=5#3","p=5#1"]}}"#;
        assert!(ProblemFile::from_json(a).unwrap().build(None).is_err());
        let b = r#"{"ground":{"p":2,"r":1},"isogeny":{"charpoly":[-2,0,1]},"extra":1,
            "algebra_D":{"split":true}}"#;
        assert!(ProblemFile::from_json(b).is_err());
    }
}
