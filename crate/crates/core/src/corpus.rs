//! Fixed test corpora and the one-line-per-polynomial corpus format
//! `q; a_0, a_1, ..., a_{d-1}, 1`.

use num_bigint::BigInt;

use crate::brauer::QuaternionClass;
use crate::error::{invalid, Error, Result};
use crate::honda_tate::{enumerate_weil, GroundField, IsogenyClass, WeilPoly, DEFAULT_ENUMERATION_CAP};
use crate::nf::NumberField;
use crate::places::PlaceLabel;
use crate::IntPoly;

pub fn format_corpus_line(w: &WeilPoly) -> String {
    let cs: Vec<String> = w.h.coeffs().iter().map(|c| c.to_string()).collect();
    format!("{}; {}", w.ground.q, cs.join(", "))
}

pub fn parse_corpus_line(line: &str) -> Result<WeilPoly> {
    let (q, rest) = line
        .split_once(';')
        .ok_or_else(|| Error::InvalidInput(format!("missing ';' in corpus line {line:?}")))?;
    let q: u64 = q.trim().parse().map_err(|_| Error::InvalidInput(format!("bad q in {line:?}")))?;
    let cs = rest
        .split(',')
        .map(|c| c.trim().parse::<BigInt>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidInput(format!("bad coefficient in {line:?}")))?;
    WeilPoly::new(GroundField::from_q(q)?, IntPoly::new(cs))
}

/// All Weil `q`-polynomials of degree `1..=max_deg`, for each `q` in turn.
pub fn weil_corpus(qs: &[u64], max_deg: usize) -> Result<Vec<WeilPoly>> {
    let mut out = Vec::new();
    for &q in qs {
        let g = GroundField::from_q(q)?;
        for d in 1..=max_deg {
            out.extend(enumerate_weil(&g, d, DEFAULT_ENUMERATION_CAP)?);
        }
    }
    Ok(out)
}

/// `Q(i)`, `Q(sqrt -3)`, `Q(zeta_8)`, `Q(zeta_12)`.
pub fn sample_fields() -> Vec<NumberField> {
    [&[1, 0, 1][..], &[3, 0, 1], &[1, 0, 0, 0, 1], &[1, 0, -1, 0, 1]]
        .iter()
        .map(|cs| NumberField::new(IntPoly::from_i64s(cs)).expect("sample field"))
        .collect()
}

fn division_labels(e: &NumberField) -> Result<[[&'static str; 2]; 3]> {
    let poly: Vec<i64> = e.defining_poly().coeffs().iter().map(|c| i64::try_from(c).unwrap_or(0)).collect();
    Ok(match poly.as_slice() {
        [1, 0, 1] => [["p=2#1", "p=5#1"], ["p=5#1", "p=5#2"], ["p=3#1", "p=13#2"]],
        [3, 0, 1] => [["p=3#1", "p=7#1"], ["p=7#1", "p=7#2"], ["p=2#1", "p=3#1"]],
        [1, 0, 0, 0, 1] => [["p=2#1", "p=17#1"], ["p=17#1", "p=17#2"], ["p=3#1", "p=3#2"]],
        [1, 0, -1, 0, 1] => [["p=2#1", "p=3#1"], ["p=13#1", "p=13#2"], ["p=13#3", "p=7#1"]],
        _ => return invalid("no fixed division algebras for this field"),
    })
}

/// The split class followed by three fixed division classes over a sample field.
pub fn sample_algebras(e: &NumberField) -> Result<Vec<QuaternionClass>> {
    let mut out = vec![QuaternionClass::split(e)];
    for pair in division_labels(e)? {
        let ls: Vec<PlaceLabel> = pair.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        out.push(QuaternionClass::from_ramified(e, &ls)?);
    }
    Ok(out)
}

/// One QM question.
#[derive(Clone, Debug)]
pub struct QmInstance {
    pub class: IsogenyClass,
    pub field: NumberField,
    pub algebra: QuaternionClass,
}

/// Iso-simple classes `A_1^m` with `m dim A_1 <= 4g`, over every sample field and algebra.
pub fn qm_corpus(weil: &[WeilPoly]) -> Result<Vec<QmInstance>> {
    let mut out = Vec::new();
    let classes: Vec<IsogenyClass> = weil
        .iter()
        .map(|w| IsogenyClass::from_factors(w.ground, &[(w.h.clone(), 1)]))
        .collect::<Result<_>>()?;
    for e in sample_fields() {
        let four_g = 2 * e.degree() as u64;
        let algebras = sample_algebras(&e)?;
        for base in &classes {
            let dim = base.factors[0].endalg.dim;
            for m in 1..=(four_g / dim) {
                let mut class = base.clone();
                class.factors[0].m = m as u32;
                for d in &algebras {
                    out.push(QmInstance { class: class.clone(), field: e.clone(), algebra: d.clone() });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_line_roundtrip() {
        let w = parse_corpus_line("2; -2, 0, 1").unwrap();
        assert_eq!(format_corpus_line(&w), "2; -2, 0, 1");
        assert!(parse_corpus_line("4; 4, -5, 1").is_err());
        assert!(parse_corpus_line("2 -2 0 1").is_err());
    }

    #[test]
    fn sample_algebras_exist() {
        for e in sample_fields() {
            let a = sample_algebras(&e).unwrap();
            assert_eq!(a.len(), 4);
            assert!(a[0].is_split() && a[1..].iter().all(|d| !d.is_split()));
        }
    }
}
