//! Splitting `End^0(A_1) (x)_Q D^op` into simple factors over the fields `E_i`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::brauer::{base_change, frac, signature, BrauerClass, QuaternionClass};
use crate::error::{internal, invalid, Result};
use crate::honda_tate::EndAlgebra;
use crate::nf::{factor_over_nf, relative_extension, Embedding, NfElem, NumberField, RelativeExtension};
use crate::places::{places_above_p_with_cap, real_places};
use crate::{IntPoly, Rat};

/// How `E_i` sits over `E` and receives `pi`.
#[derive(Clone, Debug)]
pub enum PieceEmbedding {
    /// `h_i` is linear: `E_i = E` and `pi` maps into `E`.
    Linear(Embedding),
    Relative(RelativeExtension),
}

#[derive(Clone, Debug)]
pub struct TensorPiece {
    pub field: NumberField,
    pub embedding: PieceEmbedding,
    /// Image of `pi` in `E_i`.
    pub pi_image: NfElem,
    /// `[E_i : E]`.
    pub rel_degree: u64,
    pub n: u64,
    pub local_index: u64,
    /// Class of `End^0(A_1) (x) E_i`.
    pub eps_class: BrauerClass,
    /// Class of `D (x) E_i`.
    pub d_class: BrauerClass,
    pub diff_class: BrauerClass,
}

impl TensorPiece {
    pub fn is_linear(&self) -> bool {
        matches!(self.embedding, PieceEmbedding::Linear(_))
    }
}

#[derive(Clone, Debug)]
pub struct TensorDecomposition {
    pub pieces: Vec<TensorPiece>,
}

/// Invariants of `eps (x)_{L, j} E_i` from Tate's formula at the places of `E_i`.
pub fn transported_class(
    endalg: &EndAlgebra,
    field: &NumberField,
    pi_image: &NfElem,
    cap: Option<u32>,
) -> Result<BrauerClass> {
    let g = endalg.weil.ground;
    let half = Rat::new(1.into(), 2.into());
    let mut inv: Vec<_> = real_places(field).iter().map(|a| (a.label(), half.clone())).collect();
    for u in places_above_p_with_cap(field, g.p, cap)? {
        let v = u.valuation(pi_image)?;
        let x = Rat::new(BigInt::from(v) * BigInt::from(u.f), BigInt::from(g.r));
        inv.push((u.label(), frac(&x)));
    }
    BrauerClass::new(field, inv)
}

pub fn decompose_tensor(endalg: &EndAlgebra, e: &NumberField, d: &QuaternionClass) -> Result<TensorDecomposition> {
    decompose_tensor_with_cap(endalg, e, d, None)
}

/// The part of a piece that does not depend on `D`.
#[derive(Clone, Debug)]
struct BasePiece {
    field: NumberField,
    embedding: PieceEmbedding,
    pi_image: NfElem,
    rel_degree: u64,
    eps_class: BrauerClass,
}

type BaseKey = (IntPoly, IntPoly, u64, u32, Option<u32>);
type BaseMemo = Mutex<HashMap<BaseKey, Arc<Vec<BasePiece>>>>;
type FullMemo = Mutex<HashMap<(BaseKey, String), Arc<TensorDecomposition>>>;

fn base_memo() -> &'static BaseMemo {
    static MEMO: OnceLock<BaseMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn full_memo() -> &'static FullMemo {
    static MEMO: OnceLock<FullMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn base_pieces(endalg: &EndAlgebra, e: &NumberField, cap: Option<u32>, key: &BaseKey) -> Result<Arc<Vec<BasePiece>>> {
    if let Some(v) = base_memo().lock().unwrap().get(key) {
        return Ok(v.clone());
    }
    let h = e.lift_poly(&endalg.weil.h.to_rat());
    let only_real_ramification = endalg.invariants.support().iter().all(|l| l.is_real());
    let mut pieces = Vec::new();
    for (hi, mult) in factor_over_nf(e, &h)? {
        if mult != 1 {
            return internal("Weil polynomial is not separable over E");
        }
        let (field, embedding, pi_image) = if hi.deg() == 1 {
            let rho = e.adopt(&-&hi.monic().coeff(0));
            let emb = Embedding { source: endalg.field.clone(), target: e.clone(), image: rho.clone() };
            (e.clone(), PieceEmbedding::Linear(emb), rho)
        } else {
            let ext = relative_extension(e, &hi)?;
            (ext.abs_field.clone(), PieceEmbedding::Relative(ext.clone()), ext.pi_image.clone())
        };
        let eps_class = transported_class(endalg, &field, &pi_image, cap)?;
        if only_real_ramification && signature(&field).0 == 0 && !eps_class.is_zero() {
            return internal("algebra ramified only at real places fails to split over a totally imaginary field");
        }
        pieces.push(BasePiece { field, embedding, pi_image, rel_degree: hi.deg() as u64, eps_class });
    }
    let total: u64 = pieces.iter().map(|p| p.rel_degree).sum();
    if total as usize != endalg.weil.degree() {
        return internal("factor degrees over E do not add up to deg h");
    }
    let v = Arc::new(pieces);
    Ok(base_memo().lock().unwrap().entry(key.clone()).or_insert(v).clone())
}

pub fn decompose_tensor_with_cap(
    endalg: &EndAlgebra,
    e: &NumberField,
    d: &QuaternionClass,
    cap: Option<u32>,
) -> Result<TensorDecomposition> {
    if d.class().field() != e {
        return invalid("D is not defined over E");
    }
    let g = endalg.weil.ground;
    let key: BaseKey = (e.defining_poly().clone(), endalg.weil.h.clone(), g.p, g.r, cap);
    let full_key = (key.clone(), format!("{:?}", d.ramified()));
    if let Some(v) = full_memo().lock().unwrap().get(&full_key) {
        return Ok((**v).clone());
    }
    let c = endalg.c;
    let mut pieces = Vec::new();
    for bp in base_pieces(endalg, e, cap, &key)?.iter() {
        let d_class = match &bp.embedding {
            PieceEmbedding::Linear(_) => d.class().clone(),
            PieceEmbedding::Relative(ext) => base_change(d.class(), ext)?,
        };
        let diff_class = bp.eps_class.sub(&d_class)?;
        let li = diff_class.index();
        if (2 * c) % li != 0 {
            return internal(format!("local index {li} does not divide 2c = {}", 2 * c));
        }
        pieces.push(TensorPiece {
            field: bp.field.clone(),
            embedding: bp.embedding.clone(),
            pi_image: bp.pi_image.clone(),
            rel_degree: bp.rel_degree,
            n: 2 * c / li,
            local_index: li,
            eps_class: bp.eps_class.clone(),
            d_class,
            diff_class,
        });
    }
    let dec = TensorDecomposition { pieces };
    full_memo().lock().unwrap().insert(full_key, Arc::new(dec.clone()));
    Ok(dec)
}
