//! QM decisions: the case analysis, the direct Yu path, and the
//! specialised totally real and surface-over-Q criteria.

use std::fmt;

use crate::brauer::{base_change, signature, BrauerClass, QuaternionClass};
use crate::error::{internal, invalid, Error, Result};
use crate::honda_tate::{totally_real_classify, EndAlgebra, IsogenyClass, TotallyRealKind};
use crate::nf::{relative_extension, Embedding, NumberField, RelativeExtension};
use crate::places::PlaceLabel;
use crate::qm::tensor::{decompose_tensor_with_cap, PieceEmbedding, TensorDecomposition};
use crate::qm::yu::{yu_feasible, YuBlock, YuFactor, YuInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CasePath {
    Product,
    SmallerDim,
    MainI,
    MainII,
    MainIII,
    SurfaceA,
    SurfaceB,
    SurfaceC,
    SurfaceProduct,
    YuDirect,
}

impl CasePath {
    pub fn as_str(&self) -> &'static str {
        match self {
            CasePath::Product => "product",
            CasePath::SmallerDim => "smaller-dim",
            CasePath::MainI => "main-i",
            CasePath::MainII => "main-ii",
            CasePath::MainIII => "main-iii",
            CasePath::SurfaceA => "appendix-a",
            CasePath::SurfaceB => "appendix-b",
            CasePath::SurfaceC => "appendix-c",
            CasePath::SurfaceProduct => "appendix-2",
            CasePath::YuDirect => "yu-direct",
        }
    }
}

impl fmt::Display for CasePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which class of a tensor piece a witness records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassRole {
    /// `End^0(A_1) (x) E_i`.
    Eps,
    /// `D (x) E_i`.
    D,
    /// Their difference.
    Diff,
}

impl ClassRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassRole::Eps => "eps",
            ClassRole::D => "D",
            ClassRole::Diff => "diff",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Witness {
    Embedding { factor: usize, embedding: Embedding },
    Extension { factor: usize, extension: RelativeExtension },
    Class { factor: usize, piece: usize, role: ClassRole, class: BrauerClass },
    Yu { factor: usize, v_dim: u64, steps: Vec<u64>, x: Vec<u64> },
}

#[derive(Clone, Debug)]
pub struct QmDecision {
    pub verdict: bool,
    pub path: CasePath,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    /// Per-factor decisions when the class has several iso-simple factors.
    pub factors: Vec<QmDecision>,
}

impl QmDecision {
    fn new(verdict: bool, path: CasePath) -> Self {
        QmDecision { verdict, path, witnesses: Vec::new(), notes: Vec::new(), factors: Vec::new() }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct QmOptions {
    pub precision_cap: Option<u32>,
}

fn even_degree(e: &NumberField) -> Result<u64> {
    let n = e.degree() as u64;
    if n % 2 == 1 {
        return invalid(format!("E has odd degree {n}; the QM setting needs [E:Q] = 2g"));
    }
    Ok(n)
}

fn class_witnesses(factor: usize, piece: usize, dec: &TensorDecomposition, roles: &[ClassRole]) -> Vec<Witness> {
    let p = &dec.pieces[piece];
    roles
        .iter()
        .map(|&role| Witness::Class {
            factor,
            piece,
            role,
            class: match role {
                ClassRole::Eps => p.eps_class.clone(),
                ClassRole::D => p.d_class.clone(),
                ClassRole::Diff => p.diff_class.clone(),
            },
        })
        .collect()
}

fn embedding_witness(factor: usize, dec: &TensorDecomposition, piece: usize) -> Witness {
    match &dec.pieces[piece].embedding {
        PieceEmbedding::Linear(emb) => Witness::Embedding { factor, embedding: emb.clone() },
        PieceEmbedding::Relative(ext) => Witness::Extension { factor, extension: ext.clone() },
    }
}

/// The Yu block of one factor `A_i^{m_i}` with `F = Q`, `A = D`.
pub fn factor_yu_block(endalg: &EndAlgebra, m: u32, e: &NumberField, dec: &TensorDecomposition) -> YuBlock {
    let c = endalg.c;
    YuBlock {
        v_dim: u64::from(m),
        delta_dim: c * c * endalg.weil.degree() as u64,
        factors: dec
            .pieces
            .iter()
            .map(|p| YuFactor {
                m: p.n,
                d_dim: p.local_index * p.local_index * p.rel_degree * e.degree() as u64,
            })
            .collect(),
    }
}

pub fn qm_decide_factor(endalg: &EndAlgebra, m: u32, e: &NumberField, d: &QuaternionClass) -> Result<QmDecision> {
    decide_factor(0, endalg, m, e, d, &QmOptions::default())
}

pub fn qm_decide_factor_with(
    endalg: &EndAlgebra,
    m: u32,
    e: &NumberField,
    d: &QuaternionClass,
    opts: &QmOptions,
) -> Result<QmDecision> {
    decide_factor(0, endalg, m, e, d, opts)
}

fn decide_factor(
    idx: usize,
    endalg: &EndAlgebra,
    m: u32,
    e: &NumberField,
    d: &QuaternionClass,
    opts: &QmOptions,
) -> Result<QmDecision> {
    let two_g = even_degree(e)?;
    let dim = u64::from(m) * endalg.dim;
    let dec = decompose_tensor_with_cap(endalg, e, d, opts.precision_cap)?;
    if dim > 2 * two_g {
        let inst = YuInstance { blocks: vec![factor_yu_block(endalg, m, e, &dec)] };
        let out = yu_feasible(&inst)?;
        let mut r = QmDecision::new(out.feasible, CasePath::YuDirect)
            .note(format!("dimension {dim} exceeds 4g = {}: outside the case analysis, decided via direct Yu", 2 * two_g));
        if let Some(x) = out.witness {
            r.witnesses.push(Witness::Yu { factor: idx, v_dim: u64::from(m), steps: out.steps[0].clone(), x: x[0].clone() });
        }
        return Ok(r);
    }
    if dim < 2 * two_g {
        if dim != two_g {
            return Ok(QmDecision::new(false, CasePath::SmallerDim)
                .note(format!("factor dimension {dim} is neither 2g = {two_g} nor 4g")));
        }
        let hit = dec.pieces.iter().position(|p| p.is_linear() && p.diff_class.is_zero());
        return Ok(match hit {
            Some(k) => {
                let mut r = QmDecision::new(true, CasePath::SmallerDim);
                r.witnesses.push(embedding_witness(idx, &dec, k));
                r.witnesses.extend(class_witnesses(idx, k, &dec, &[ClassRole::Eps, ClassRole::D]));
                let c = endalg.c;
                let shape = if d.is_split() {
                    format!("eps (x) E = M_{c}(E)")
                } else {
                    format!("eps (x) E = M_{}(D)", c / 2)
                };
                r.note(shape)
            }
            None => QmDecision::new(false, CasePath::SmallerDim)
                .note("no embedding Q(pi) -> E makes eps (x) E and D equal in Br(E)"),
        });
    }
    let mut holding: Vec<(CasePath, usize)> = Vec::new();
    for (k, p) in dec.pieces.iter().enumerate() {
        if p.is_linear() && p.diff_class.is_zero() {
            holding.push((CasePath::MainI, k));
        }
    }
    for (k, p) in dec.pieces.iter().enumerate() {
        if p.is_linear() && !p.diff_class.is_zero() && p.diff_class.as_quaternion().is_ok() {
            holding.push((CasePath::MainII, k));
        }
    }
    for (k, p) in dec.pieces.iter().enumerate() {
        if p.rel_degree == 2 && p.diff_class.is_zero() {
            holding.push((CasePath::MainIII, k));
        }
    }
    let Some(&(path, k)) = holding.first() else {
        return Ok(QmDecision::new(false, CasePath::MainI).note("none of the cases (i), (ii), (iii) holds"));
    };
    if holding.iter().all(|(c, _)| *c == CasePath::MainI) && m % 2 == 1 {
        return internal(format!("only case (i) holds but m = {m} is odd"));
    }
    let mut r = QmDecision::new(true, path);
    r.witnesses.push(embedding_witness(idx, &dec, k));
    let roles: &[ClassRole] = match path {
        CasePath::MainII => &[ClassRole::Diff],
        _ => &[ClassRole::Eps, ClassRole::D],
    };
    r.witnesses.extend(class_witnesses(idx, k, &dec, roles));
    let mut names: Vec<&str> = holding.iter().map(|(c, _)| c.as_str()).collect();
    names.dedup();
    Ok(r.note(format!("cases holding: {}", names.join(", "))))
}

pub fn qm_decide(ic: &IsogenyClass, e: &NumberField, d: &QuaternionClass) -> Result<QmDecision> {
    qm_decide_with(ic, e, d, &QmOptions::default())
}

pub fn qm_decide_with(ic: &IsogenyClass, e: &NumberField, d: &QuaternionClass, opts: &QmOptions) -> Result<QmDecision> {
    let two_g = even_degree(e)?;
    if d.class().field() != e {
        return invalid("D is not defined over E");
    }
    let total = ic.total_dim();
    let l = ic.factors.len();
    if total == 2 * two_g && l > 2 {
        return Ok(QmDecision::new(false, CasePath::Product)
            .note(format!("{l} iso-simple factors; at dimension 4g at most two are possible")));
    }
    if total < 2 * two_g && (l > 1 || ic.factors[0].dim() != two_g) {
        let path = if l > 1 { CasePath::Product } else { CasePath::SmallerDim };
        return Ok(QmDecision::new(false, path)
            .note(format!("dimension {total} < 4g requires a single iso-simple factor of dimension 2g = {two_g}")));
    }
    let mut decisions = Vec::with_capacity(l);
    for (i, f) in ic.factors.iter().enumerate() {
        decisions.push(decide_factor(i, &f.endalg, f.m, e, d, opts)?);
    }
    if l == 1 {
        return Ok(decisions.pop().unwrap());
    }
    let mut r = QmDecision::new(decisions.iter().all(|x| x.verdict), CasePath::Product);
    if total == 2 * two_g {
        r.notes.push(format!("two factors at dimension 4g: each must have dimension 2g = {two_g}"));
    }
    r.factors = decisions;
    Ok(r)
}

pub fn qm_decide_direct_yu(ic: &IsogenyClass, e: &NumberField, d: &QuaternionClass) -> Result<QmDecision> {
    qm_decide_direct_yu_with(ic, e, d, &QmOptions::default())
}

/// Yu's criterion with `F = Q`, `A = D` and `B = prod M_{m_i}(End^0(A_i))`;
/// valid for every `E` (including `Q`) and every dimension.
pub fn qm_decide_direct_yu_with(
    ic: &IsogenyClass,
    e: &NumberField,
    d: &QuaternionClass,
    opts: &QmOptions,
) -> Result<QmDecision> {
    let mut blocks = Vec::new();
    for f in &ic.factors {
        let dec = decompose_tensor_with_cap(&f.endalg, e, d, opts.precision_cap)?;
        blocks.push(factor_yu_block(&f.endalg, f.m, e, &dec));
    }
    let inst = YuInstance { blocks };
    let out = yu_feasible(&inst)?;
    let mut r = QmDecision::new(out.feasible, CasePath::YuDirect);
    if let Some(xs) = out.witness {
        for (i, (x, b)) in xs.into_iter().zip(&inst.blocks).enumerate() {
            r.witnesses.push(Witness::Yu { factor: i, v_dim: b.v_dim, steps: out.steps[i].clone(), x });
        }
    }
    Ok(r)
}

pub fn qm_decide_totally_real(ic: &IsogenyClass, e: &NumberField, d: &QuaternionClass) -> Result<QmDecision> {
    let two_g = even_degree(e)?;
    if signature(e).0 != 0 {
        return invalid("E must be totally imaginary");
    }
    if ic.factors.len() != 1 {
        return invalid("the isogeny class must be iso-simple");
    }
    let f = &ic.factors[0];
    if !f.endalg.totally_real_center {
        return invalid("Q(pi) must be totally real");
    }
    let dim = f.dim();
    if dim != two_g && dim != 2 * two_g {
        return invalid(format!("dimension {dim} is neither 2g nor 4g"));
    }
    let kind = totally_real_classify(&f.endalg.weil)?;
    let dec = decompose_tensor_with_cap(&f.endalg, e, d, None)?;
    let four_g = dim == 2 * two_g;
    let linear_split = dec.pieces.iter().position(|p| p.is_linear() && p.eps_class.is_zero());
    let (verdict, path, piece) = match kind {
        TotallyRealKind::SurfaceDPrime if four_g => {
            let quad = dec
                .pieces
                .iter()
                .position(|p| p.rel_degree == 2 && p.eps_class.is_zero() && p.d_class.is_zero());
            match (linear_split, quad) {
                (Some(k), _) => (true, if d.is_split() { CasePath::MainI } else { CasePath::MainII }, Some(k)),
                (None, Some(k)) => (true, CasePath::MainIII, Some(k)),
                (None, None) => (false, CasePath::MainI, None),
            }
        }
        TotallyRealKind::SurfaceDPrime => {
            let ok = d.is_split() && linear_split.is_some();
            (ok, CasePath::SmallerDim, linear_split.filter(|_| ok))
        }
        TotallyRealKind::EllipticDp => {
            let p0 = &dec.pieces[0];
            if four_g {
                let path = if p0.diff_class.is_zero() { CasePath::MainI } else { CasePath::MainII };
                (true, path, Some(0))
            } else {
                let ok = p0.eps_class == p0.d_class;
                (ok, CasePath::SmallerDim, Some(0).filter(|_| ok))
            }
        }
        TotallyRealKind::NotTotallyReal => return internal("totally real centre classified as not totally real"),
    };
    let mut r = QmDecision::new(verdict, path).note(format!("totally real centre, {}", kind.name()));
    if let Some(k) = piece {
        r.witnesses.push(embedding_witness(0, &dec, k));
        r.witnesses.extend(class_witnesses(0, k, &dec, &[ClassRole::Eps, ClassRole::D]));
    }
    Ok(r)
}

fn definite_pattern(p: u64) -> Vec<PlaceLabel> {
    vec![PlaceLabel::Real(1), PlaceLabel::Finite { p, index: 1 }]
}

/// Abelian surfaces with QM by a quaternion algebra `B` over Q.
pub fn qm_surface_over_q(ic: &IsogenyClass, b: &QuaternionClass) -> Result<QmDecision> {
    if b.class().field().degree() != 1 {
        return invalid("B must be a quaternion algebra over Q");
    }
    if ic.total_dim() != 2 {
        return invalid(format!("total dimension {} is not 2", ic.total_dim()));
    }
    let g = ic.ground;
    let r_even = g.r % 2 == 0;
    let is_dp = |ea: &EndAlgebra| ea.weil.degree() == 1 && ea.invariants.support() == definite_pattern(g.p);
    if ic.factors.len() == 2 {
        let ok = r_even && b.ramified() == definite_pattern(g.p) && ic.factors.iter().all(|f| is_dp(&f.endalg));
        return Ok(QmDecision::new(ok, CasePath::SurfaceProduct));
    }
    let f = &ic.factors[0];
    let ea = &f.endalg;
    if ea.dim == 1 && r_even && is_dp(ea) {
        return Ok(QmDecision::new(true, CasePath::SurfaceA));
    }
    if ea.weil.degree() == 2 {
        let q = NumberField::rationals();
        let h = q.lift_poly(&ea.weil.h.to_rat());
        let ext = relative_extension(&q, &h)?;
        let bc = base_change(b.class(), &ext)?;
        if ext.abs_field.defining_poly() != ea.field.defining_poly() {
            return Err(Error::InternalInconsistency("Q(pi) presentation changed under extension".into()));
        }
        let mut wit = vec![Witness::Class { factor: 0, piece: 0, role: ClassRole::D, class: bc.clone() }];
        if ea.dim == 1 && ea.c == 1 && bc.is_zero() {
            let mut r = QmDecision::new(true, CasePath::SurfaceB);
            r.witnesses.append(&mut wit);
            return Ok(r);
        }
        if f.m == 1 && !bc.is_zero() && bc.invariants() == ea.invariants.invariants() {
            let mut r = QmDecision::new(true, CasePath::SurfaceC);
            r.witnesses.append(&mut wit);
            return Ok(r);
        }
    }
    Ok(QmDecision::new(false, CasePath::SurfaceA).note("none of (a), (b), (c) holds"))
}

/// Re-checks every witness of `dec` from scratch against `(ic, e, d)`.
pub fn revalidate(dec: &QmDecision, ic: &IsogenyClass, e: &NumberField, d: &QuaternionClass) -> Result<()> {
    let fail = |msg: String| Err(Error::InternalInconsistency(format!("witness check failed: {msg}")));
    let decomp = |i: usize| -> Result<TensorDecomposition> {
        let f = ic
            .factors
            .get(i)
            .ok_or_else(|| Error::InternalInconsistency(format!("witness names factor {i}")))?;
        decompose_tensor_with_cap(&f.endalg, e, d, None)
    };
    for w in &dec.witnesses {
        match w {
            Witness::Embedding { factor, embedding } => {
                if !embedding.verify() || embedding.source != ic.factors[*factor].endalg.field {
                    return fail(format!("embedding for factor {factor}"));
                }
            }
            Witness::Extension { factor, extension } => {
                if !extension.verify() {
                    return fail(format!("extension for factor {factor}"));
                }
            }
            Witness::Class { factor, piece, role, class } => {
                let t = decomp(*factor)?;
                let p = t
                    .pieces
                    .get(*piece)
                    .ok_or_else(|| Error::InternalInconsistency(format!("witness names piece {piece}")))?;
                let expect = match role {
                    ClassRole::Eps => &p.eps_class,
                    ClassRole::D => &p.d_class,
                    ClassRole::Diff => &p.diff_class,
                };
                if expect != class {
                    return fail(format!("{} class of factor {factor}", role.as_str()));
                }
            }
            Witness::Yu { factor, v_dim, steps, x } => {
                let t = decomp(*factor)?;
                let f = &ic.factors[*factor];
                let block = factor_yu_block(&f.endalg, f.m, e, &t);
                let inst = YuInstance { blocks: vec![block] };
                if &inst.steps()?[0] != steps || *v_dim != u64::from(f.m) || !inst.check_witness(&[x.clone()])? {
                    return fail(format!("Yu vector of factor {factor}"));
                }
            }
        }
    }
    for sub in &dec.factors {
        revalidate(sub, ic, e, d)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::honda_tate::GroundField;
    use crate::IntPoly;

    fn ip(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    fn ic(q: u64, fs: &[(&[i64], u32)]) -> IsogenyClass {
        let pairs: Vec<_> = fs.iter().map(|(h, m)| (ip(h), *m)).collect();
        IsogenyClass::from_factors(GroundField::from_q(q).unwrap(), &pairs).unwrap()
    }

    fn qi() -> NumberField {
        NumberField::new(ip(&[1, 0, 1])).unwrap()
    }

    fn ram(k: &NumberField, labels: &[&str]) -> QuaternionClass {
        let ls: Vec<PlaceLabel> = labels.iter().map(|s| s.parse().unwrap()).collect();
        QuaternionClass::from_ramified(k, &ls).unwrap()
    }

    fn both(c: &IsogenyClass, e: &NumberField, d: &QuaternionClass) -> QmDecision {
        let a = qm_decide(c, e, d).unwrap();
        let b = qm_decide_direct_yu(c, e, d).unwrap();
        assert_eq!(a.verdict, b.verdict, "case analysis and Yu disagree");
        revalidate(&a, c, e, d).unwrap();
        revalidate(&b, c, e, d).unwrap();
        a
    }

    #[test]
    fn tensor_examples() {
        let e = qi();
        let split = QuaternionClass::split(&e);
        let t = crate::qm::decompose_tensor(&ic(4, &[(&[-2, 1], 1)]).factors[0].endalg, &e, &split).unwrap();
        assert_eq!(t.pieces.len(), 1);
        assert!(t.pieces[0].diff_class.is_zero());
        assert_eq!((t.pieces[0].local_index, t.pieces[0].n), (1, 4));

        let t = crate::qm::decompose_tensor(&ic(3, &[(&[3, -1, 1], 1)]).factors[0].endalg, &e, &split).unwrap();
        assert_eq!((t.pieces.len(), t.pieces[0].rel_degree), (1, 2));
        assert_eq!(t.pieces[0].n * t.pieces[0].local_index, 2);

        let t = crate::qm::decompose_tensor(&ic(2, &[(&[-2, 0, 1], 1)]).factors[0].endalg, &e, &split).unwrap();
        assert_eq!((t.pieces.len(), t.pieces[0].rel_degree), (1, 2));
        assert!(t.pieces[0].diff_class.is_zero());
        assert_eq!(t.pieces[0].n, 4);
    }

    #[test]
    fn factor_examples() {
        let e = qi();
        let split = QuaternionClass::split(&e);
        let d5 = ram(&e, &["p=5#1", "p=5#2"]);
        let d17 = ram(&e, &["p=17#1", "p=17#2"]);
        let r = both(&ic(4, &[(&[-2, 1], 2)]), &e, &split);
        assert!(r.verdict);
        assert_eq!(r.path, CasePath::SmallerDim);
        assert!(!both(&ic(4, &[(&[-2, 1], 2)]), &e, &d5).verdict);
        let r = both(&ic(2, &[(&[-2, 0, 1], 2)]), &e, &d17);
        assert!(!r.verdict);
        let r = both(&ic(2, &[(&[-2, 0, 1], 2)]), &e, &split);
        assert!(r.verdict);
        assert_eq!(r.path, CasePath::MainIII);
    }

    #[test]
    fn class_examples() {
        let e = qi();
        let split = QuaternionClass::split(&e);
        for d in [split.clone(), ram(&e, &["p=5#1", "p=5#2"]), ram(&e, &["p=2#1", "p=3#1"])] {
            assert!(both(&ic(4, &[(&[-2, 1], 4)]), &e, &d).verdict);
            assert!(qm_decide_totally_real(&ic(4, &[(&[-2, 1], 4)]), &e, &d).unwrap().verdict);
        }
        let r = both(&ic(4, &[(&[-2, 1], 1), (&[2, 1], 1)]), &e, &split);
        assert!(!r.verdict);
        let r = qm_decide_direct_yu(&ic(4, &[(&[-2, 1], 2)]), &e, &split).unwrap();
        match &r.witnesses[0] {
            Witness::Yu { steps, x, .. } => assert_eq!((steps.clone(), x.clone()), (vec![2], vec![2])),
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(!qm_decide_direct_yu(&ic(4, &[(&[-2, 1], 1)]), &e, &split).unwrap().verdict);
        let r = qm_decide_direct_yu(&ic(2, &[(&[-2, 0, 1], 2)]), &e, &split).unwrap();
        assert!(matches!(&r.witnesses[0], Witness::Yu { steps, .. } if steps == &vec![2]));
    }

    #[test]
    fn totally_real_examples() {
        let e = qi();
        let split = QuaternionClass::split(&e);
        let d5 = ram(&e, &["p=5#1", "p=5#2"]);
        assert!(qm_decide_totally_real(&ic(4, &[(&[-2, 1], 2)]), &e, &split).unwrap().verdict);
        assert!(!qm_decide_totally_real(&ic(4, &[(&[-2, 1], 2)]), &e, &d5).unwrap().verdict);
        assert!(!qm_decide_totally_real(&ic(2, &[(&[-2, 0, 1], 1)]), &e, &split).unwrap().verdict);
        assert!(qm_decide_totally_real(&ic(3, &[(&[3, -1, 1], 2)]), &e, &split).is_err());
    }

    #[test]
    fn surface_examples() {
        let q = NumberField::rationals();
        let b = crate::brauer::quaternion_class_over_q(&crate::Rat::from_integer((-1).into()), &crate::Rat::from_integer((-1).into())).unwrap();
        let r = qm_surface_over_q(&ic(9, &[(&[-3, 1], 2)]), &b).unwrap();
        assert_eq!((r.verdict, r.path), (true, CasePath::SurfaceA));
        let r = qm_surface_over_q(&ic(3, &[(&[3, -1, 1], 2)]), &b).unwrap();
        assert_eq!((r.verdict, r.path), (true, CasePath::SurfaceB));
        let r = qm_surface_over_q(&ic(4, &[(&[-2, 1], 1), (&[2, 1], 1)]), &b).unwrap();
        assert_eq!((r.verdict, r.path), (true, CasePath::SurfaceProduct));
        let r = qm_surface_over_q(&ic(2, &[(&[-2, 0, 1], 1)]), &b).unwrap();
        assert_eq!((r.verdict, r.path), (true, CasePath::SurfaceC));
        for c in [
            ic(9, &[(&[-3, 1], 2)]),
            ic(3, &[(&[3, -1, 1], 2)]),
            ic(4, &[(&[-2, 1], 1), (&[2, 1], 1)]),
            ic(2, &[(&[-2, 0, 1], 1)]),
        ] {
            assert!(qm_decide_direct_yu(&c, &q, &b).unwrap().verdict);
        }
    }
}
