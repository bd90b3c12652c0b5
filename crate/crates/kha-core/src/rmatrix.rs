//! Blocks of the R-matrix with auxiliary framing `ς^i`, their limits at
//! `u = 0, ∞`, and the generator-level coproduct on tensor products of
//! fixed-point modules.

use crate::arith::{expand_at, limit, Direction, RationalFunction, VarId};
use crate::error::{KhaError, Result};
use crate::fixedpoint::{Diagonal, FixedPointLabel, FixedPointModule, ModuleVector, WeightFunction, NON_GRASSMANNIAN};
use crate::quiver::{DimVector, Quiver};
use crate::report::Report;
use crate::taut::KClass;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// The spectral parameter `u` of the auxiliary factor.
pub fn u_aux() -> VarId {
    VarId::aux("u").unwrap()
}

/// Spectral parameter of aux slot `a` at vertex `j` for a general auxiliary framing.
pub fn u_aux_slot(j: usize, a: usize) -> VarId {
    VarId::aux(&format!("r{}{}", j + 1, a)).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `⟨0|R(u)|0⟩`
    Diag00,
    /// `⟨ς^i|R(u)|0⟩`, lowers `v` by `ς^i`.
    LowerF,
    /// `⟨0|R(u)|ς^i⟩`, raises `v` by `ς^i`.
    RaiseE,
}

impl BlockKind {
    pub fn parse(s: &str) -> Result<BlockKind> {
        match s {
            "diag" | "diag00" => Ok(BlockKind::Diag00),
            "f" | "lower" => Ok(BlockKind::LowerF),
            "e" | "raise" => Ok(BlockKind::RaiseE),
            _ => Err(KhaError::Config(format!("unknown block `{s}` (expected diag, f or e)"))),
        }
    }

    /// Change in `v_i` caused by the block.
    pub fn shift(self) -> i64 {
        match self {
            BlockKind::Diag00 => 0,
            BlockKind::LowerF => -1,
            BlockKind::RaiseE => 1,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RBlock {
    pub kind: BlockKind,
    pub vertex: usize,
    pub u: VarId,
}

impl RBlock {
    pub fn new(kind: BlockKind, vertex: usize) -> RBlock {
        RBlock { kind, vertex, u: u_aux() }
    }

    pub fn apply(&self, m: &FixedPointModule, x: &ModuleVector) -> Result<ModuleVector> {
        let u = RationalFunction::var(self.u);
        match self.kind {
            BlockKind::Diag00 => r_block_diag(m, self.vertex, &u, x),
            BlockKind::LowerF => r_lower(m, self.vertex, &u, x),
            BlockKind::RaiseE => r_raise(m, self.vertex, &u, x),
        }
    }
}

/// `qh^{v_i} ∧•(𝒱_i (1 − q) / u)` at a fixed point.
pub fn r_diag_eigenvalue(m: &FixedPointModule, i: usize, u: &RationalFunction, label: &FixedPointLabel) -> Result<RationalFunction> {
    let d = m.restrict(label);
    let cls = d.vclass[i].mul(&KClass::int(1).sub(&KClass::qh_pow(2)));
    let mut acc = RationalFunction::qh_pow(label.v()[i] as i32);
    for (ch, mult) in cls.terms() {
        let term = RationalFunction::one().sub(&RationalFunction::monomial(crate::arith::Q::ONE, ch.clone()).div(u)?);
        acc = acc.mul(&term.pow(mult as i32)?);
    }
    Ok(acc)
}

pub fn r_block_diag(m: &FixedPointModule, i: usize, u: &RationalFunction, x: &ModuleVector) -> Result<ModuleVector> {
    let terms: Vec<Result<(FixedPointLabel, RationalFunction)>> = x.coeffs.par_iter().map(|(l, c)| Ok((l.clone(), c.mul(&r_diag_eigenvalue(m, i, u, l)?)))).collect();
    Ok(ModuleVector::from_terms(terms.into_iter().collect::<Result<Vec<_>>>()?))
}

/// `⟨0|R|0⟩` for a general auxiliary framing: the product over aux slots `(j, a)`, `a ≤ w^aux_j`.
pub fn r_vacuum_general(m: &FixedPointModule, w_aux: &[i64], x: &ModuleVector) -> Result<ModuleVector> {
    let mut acc = x.clone();
    for (j, &n) in w_aux.iter().enumerate() {
        for a in 1..=n as usize {
            acc = r_block_diag(m, j, &RationalFunction::var(u_aux_slot(j, a)), &acc)?;
        }
    }
    Ok(acc)
}

/// `ℓ ↦ (1 − q) / (1 − qℓ/u)`.
pub fn f_block_weight(u: &RationalFunction) -> Result<WeightFunction> {
    let l = RationalFunction::var(WeightFunction::slot());
    let one = RationalFunction::one();
    let q = RationalFunction::qh_pow(2);
    Ok(WeightFunction(one.sub(&q).div(&one.sub(&q.mul(&l).div(u)?))?))
}

/// `ℓ ↦ qh^{-1} (1 − q) / (1 − u/(qℓ))`.
pub fn e_block_weight(u: &RationalFunction) -> Result<WeightFunction> {
    let l = RationalFunction::var(WeightFunction::slot());
    let one = RationalFunction::one();
    let q = RationalFunction::qh_pow(2);
    let num = RationalFunction::qh_pow(-1).mul(&one.sub(&q));
    Ok(WeightFunction(num.div(&one.sub(&u.div(&q.mul(&l))?))?))
}

pub fn r_block_f(m: &FixedPointModule, i: usize, u: &RationalFunction, x: &ModuleVector) -> Result<ModuleVector> {
    m.act_f_weighted(i, &f_block_weight(u)?, x)
}

pub fn r_block_e(m: &FixedPointModule, i: usize, u: &RationalFunction, x: &ModuleVector) -> Result<ModuleVector> {
    m.act_e_weighted(i, &e_block_weight(u)?, x)
}

/// Scalar in front of the raising block: `qh^{-1} Π_{loops at i} (−qh/t_e)`.
pub fn kappa_e(q: &Quiver, i: usize) -> RationalFunction {
    let mut acc = RationalFunction::qh_pow(-1);
    for e in q.loops(i) {
        acc = acc.mul(&RationalFunction::qh_pow(1).div(&q.t(e)).unwrap().neg());
    }
    acc
}

/// `⟨ς^i|R(u)|0⟩ = r_block_diag ∘ r_block_f`.
pub fn r_lower(m: &FixedPointModule, i: usize, u: &RationalFunction, x: &ModuleVector) -> Result<ModuleVector> {
    r_block_diag(m, i, u, &r_block_f(m, i, u, x)?)
}

/// `⟨0|R(u)|ς^i⟩ = κ_e · r_block_e ∘ r_block_diag`.
pub fn r_raise(m: &FixedPointModule, i: usize, u: &RationalFunction, x: &ModuleVector) -> Result<ModuleVector> {
    Ok(r_block_e(m, i, u, &r_block_diag(m, i, u, x)?)?.scale(&kappa_e(m.quiver(), i)))
}

/// Coefficientwise limit in `var`.
pub fn vector_limit(x: &ModuleVector, var: VarId, dir: Direction) -> Result<ModuleVector> {
    let mut terms = Vec::new();
    for (l, c) in &x.coeffs {
        terms.push((l.clone(), limit(c, var, dir)?));
    }
    Ok(ModuleVector::from_terms(terms))
}

/// Coefficient of `var^d` in the expansion of every coordinate.
pub fn vector_coefficient(x: &ModuleVector, var: VarId, dir: Direction, d: i32) -> Result<ModuleVector> {
    let order = match dir {
        Direction::AtZero => d,
        Direction::AtInfinity => -d,
    };
    let mut terms = Vec::new();
    for (l, c) in &x.coeffs {
        terms.push((l.clone(), expand_at(c, var, dir, order)?.coeff(d)));
    }
    Ok(ModuleVector::from_terms(terms))
}

/// A block's matrix on a source sector: `(row label, column label, entry)` for nonzero entries.
pub fn block_matrix(m: &FixedPointModule, block: RBlock, v_source: &[i64]) -> Result<Vec<(FixedPointLabel, FixedPointLabel, RationalFunction)>> {
    let mut out = Vec::new();
    for col in m.enumerate_basis(v_source) {
        let image = block.apply(m, &ModuleVector::basis(col.clone()))?;
        for (row, c) in image.coeffs {
            out.push((row, col.clone(), c));
        }
    }
    Ok(out)
}

/// Limits (a)–(c) and the expansion property of the f- and e-blocks on sectors `v ≤ vmax`.
pub fn limit_checks(q: &Quiver, i: usize, w: &DimVector, vmax: &DimVector) -> Result<Report> {
    let m = FixedPointModule::new(q, w)?;
    let u = RationalFunction::var(u_aux());
    let uv = u_aux();
    let one = RationalFunction::one();
    let qq = RationalFunction::qh_pow(2);
    let mut report = Report::new();
    let unit = q.unit(i);
    for v in m.sectors(vmax) {
        let sector = format!("w={w} v={v}");
        let basis = m.enumerate_basis(&v);

        // (a) k = v_i, l = 0
        let mut ok = true;
        let mut detail = String::new();
        for l in &basis {
            let x = ModuleVector::basis(l.clone());
            let r = r_block_diag(&m, i, &u, &x)?;
            let k = v[i] as i32;
            let at0 = vector_limit(&r, uv, Direction::AtZero)?;
            let atinf = vector_limit(&r, uv, Direction::AtInfinity)?;
            if !at0.equals(&x.scale(&RationalFunction::qh_pow(-k))) || !atinf.equals(&x.scale(&RationalFunction::qh_pow(k))) {
                ok = false;
                detail = format!("at I[{l}]");
            }
        }
        report.check(format!("limit (a) diag i={} {sector}", i + 1), ok, detail);

        // (a) for the all-ones auxiliary framing: k = Σ_j v_j
        let w_aux = vec![1; q.n_vertices()];
        let k: i64 = v.iter().sum();
        let mut ok = true;
        let mut detail = String::new();
        for l in &basis {
            let x = ModuleVector::basis(l.clone());
            let mut r = r_vacuum_general(&m, &w_aux, &x)?;
            let mut s = r.clone();
            for j in 0..q.n_vertices() {
                r = vector_limit(&r, u_aux_slot(j, 1), Direction::AtZero)?;
                s = vector_limit(&s, u_aux_slot(j, 1), Direction::AtInfinity)?;
            }
            if !r.equals(&x.scale(&RationalFunction::qh_pow(-k as i32))) || !s.equals(&x.scale(&RationalFunction::qh_pow(k as i32))) {
                ok = false;
                detail = format!("at I[{l}]");
            }
        }
        report.check(format!("limit (a) general framing {sector}"), ok, detail);

        // (c) lim_{u→∞} ⟨ς^i|R|0⟩ = qh^{v_i}(1 − q) f_{i,0}, v the target sector
        let source = v.add(&unit);
        let mut ok = true;
        let mut detail = String::new();
        for l in m.enumerate_basis(&source) {
            let x = ModuleVector::basis(l.clone());
            let lhs = vector_limit(&r_lower(&m, i, &u, &x)?, uv, Direction::AtInfinity)?;
            let rhs = m.act_f(i, 0, &x)?.scale(&RationalFunction::qh_pow(v[i] as i32).mul(&one.sub(&qq)));
            if !lhs.equals(&rhs) {
                ok = false;
                detail = format!("at I[{l}]");
            }
            for n in 0..=3 {
                let c = vector_coefficient(&r_block_f(&m, i, &u, &x)?, uv, Direction::AtInfinity, -n)?;
                let expect = m.act_f(i, n, &x)?.scale(&one.sub(&qq).mul(&RationalFunction::qh_pow(2 * n)));
                if !c.equals(&expect) {
                    ok = false;
                    detail = format!("u^-{n} coefficient of the f-block at I[{l}]");
                }
            }
        }
        report.check(format!("limit (c) f i={} {sector}", i + 1), ok, detail);

        // (b) lim_{u→0} ⟨0|R|ς^i⟩ = qh^{-(v_i+1)}(qh^{-1} − qh) Π(−qh/t_e) e_{i,0}, v the source sector
        if !q.is_edge_free() && !v.is_zero() {
            report.skip(format!("limit (b) e i={} {sector}", i + 1), format!("unsupported: {NON_GRASSMANNIAN}"));
            continue;
        }
        let mut loops = RationalFunction::one();
        for e in q.loops(i) {
            loops = loops.mul(&RationalFunction::qh_pow(1).div(&q.t(e))?.neg());
        }
        let scalar = RationalFunction::qh_pow(-(v[i] as i32 + 1)).mul(&RationalFunction::qh_pow(-1).sub(&RationalFunction::qh_pow(1))).mul(&loops);
        let mut ok = true;
        let mut detail = String::new();
        for l in &basis {
            let x = ModuleVector::basis(l.clone());
            let lhs = vector_limit(&r_raise(&m, i, &u, &x)?, uv, Direction::AtZero)?;
            let rhs = m.act_e(i, 0, &x)?.scale(&scalar);
            if !lhs.equals(&rhs) {
                ok = false;
                detail = format!("at I[{l}]");
            }
            for n in 0..=3 {
                let c = vector_coefficient(&r_block_e(&m, i, &u, &x)?, uv, Direction::AtZero, n)?;
                let expect = m.act_e(i, -n, &x)?.scale(&RationalFunction::qh_pow(-1 - 2 * n).mul(&one.sub(&qq)));
                if !c.equals(&expect) {
                    ok = false;
                    detail = format!("u^{n} coefficient of the e-block at I[{l}]");
                }
            }
        }
        report.check(format!("limit (b) e i={} {sector}", i + 1), ok, detail);
    }
    Ok(report)
}

/// Basis element of `K(w¹) ⊗ K(w²)`.
pub type TensorLabel = (FixedPointLabel, FixedPointLabel);

#[derive(Clone, Debug, Default)]
pub struct TensorVector {
    pub coeffs: BTreeMap<TensorLabel, RationalFunction>,
}

impl TensorVector {
    pub fn basis(a: FixedPointLabel, b: FixedPointLabel) -> TensorVector {
        TensorVector { coeffs: BTreeMap::from([((a, b), RationalFunction::one())]) }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (TensorLabel, RationalFunction)>) -> TensorVector {
        let mut acc: BTreeMap<TensorLabel, Vec<RationalFunction>> = BTreeMap::new();
        for (l, c) in it {
            acc.entry(l).or_default().push(c);
        }
        TensorVector { coeffs: acc.into_iter().map(|(l, cs)| (l, RationalFunction::sum(cs.iter()))).filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn add(&self, o: &TensorVector) -> TensorVector {
        TensorVector::from_terms(self.coeffs.iter().chain(o.coeffs.iter()).map(|(l, c)| (l.clone(), c.clone())))
    }

    pub fn sub(&self, o: &TensorVector) -> TensorVector {
        self.add(&o.scale(&RationalFunction::int(-1)))
    }

    pub fn scale(&self, c: &RationalFunction) -> TensorVector {
        TensorVector::from_terms(self.coeffs.iter().map(|(l, x)| (l.clone(), x.mul(c))))
    }

    pub fn equals(&self, o: &TensorVector) -> bool {
        let keys: std::collections::BTreeSet<&TensorLabel> = self.coeffs.keys().chain(o.coeffs.keys()).collect();
        keys.into_iter().all(|k| {
            let a = self.coeffs.get(k).cloned().unwrap_or_default();
            let b = o.coeffs.get(k).cloned().unwrap_or_default();
            a.rf_eq(&b)
        })
    }
}

/// Single-factor operators used in coproduct formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Id,
    E(usize, i32),
    F(usize, i32),
    Diag(Diagonal),
}

impl Op {
    pub fn apply(self, m: &FixedPointModule, x: &ModuleVector) -> Result<ModuleVector> {
        match self {
            Op::Id => Ok(x.clone()),
            Op::E(i, d) => m.act_e(i, d, x),
            Op::F(i, d) => m.act_f(i, d, x),
            Op::Diag(op) => m.act_diagonal(op, x),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Id => write!(f, "1"),
            Op::E(i, d) => write!(f, "e[{},{d}]", i + 1),
            Op::F(i, d) => write!(f, "f[{},{d}]", i + 1),
            Op::Diag(Diagonal::HPlus(i, 0)) => write!(f, "h[{},0]", i + 1),
            Op::Diag(Diagonal::HMinus(i, 0)) => write!(f, "h[{},0]^-1", i + 1),
            Op::Diag(d) => write!(f, "{d:?}"),
        }
    }
}

/// `Σ c · A ⊗ B`.
#[derive(Clone, Debug, Default)]
pub struct TensorOperator {
    pub terms: Vec<(RationalFunction, Op, Op)>,
}

impl TensorOperator {
    pub fn term(c: RationalFunction, a: Op, b: Op) -> TensorOperator {
        TensorOperator { terms: vec![(c, a, b)] }
    }

    pub fn plus(mut self, c: RationalFunction, a: Op, b: Op) -> TensorOperator {
        self.terms.push((c, a, b));
        self
    }

    pub fn apply(&self, m1: &FixedPointModule, m2: &FixedPointModule, x: &TensorVector) -> Result<TensorVector> {
        let mut out = Vec::new();
        for ((l1, l2), c) in &x.coeffs {
            for (k, a, b) in &self.terms {
                let ya = a.apply(m1, &ModuleVector::basis(l1.clone()))?;
                if ya.is_zero() {
                    continue;
                }
                let yb = b.apply(m2, &ModuleVector::basis(l2.clone()))?;
                for (r1, c1) in &ya.coeffs {
                    for (r2, c2) in &yb.coeffs {
                        out.push(((r1.clone(), r2.clone()), c.mul(k).mul(c1).mul(c2)));
                    }
                }
            }
        }
        Ok(TensorVector::from_terms(out))
    }
}

impl fmt::Display for TensorOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(c, a, b)| if c.is_one() { format!("{a} ⊗ {b}") } else { format!("({c}) {a} ⊗ {b}") }).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Δ` of the degree-zero generators at vertex `i`, and of `b_{i,d}` for the given `d`.
pub fn coproduct_generators(i: usize, d: i32) -> Vec<(String, TensorOperator)> {
    let one = RationalFunction::one();
    let h = Op::Diag(Diagonal::HPlus(i, 0));
    let hinv = Op::Diag(Diagonal::HMinus(i, 0));
    let b = Op::Diag(Diagonal::B(i, d));
    vec![
        ("e".into(), TensorOperator::term(one.clone(), hinv, Op::E(i, 0)).plus(one.clone(), Op::E(i, 0), Op::Id)),
        ("f".into(), TensorOperator::term(one.clone(), Op::F(i, 0), h).plus(one.clone(), Op::Id, Op::F(i, 0))),
        ("h".into(), TensorOperator::term(one.clone(), h, h)),
        ("b".into(), TensorOperator::term(one.clone(), b, Op::Id).plus(one.clone(), Op::Id, b)),
        ("qv".into(), TensorOperator::term(one.clone(), Op::Diag(Diagonal::Qv(i, 1)), Op::Diag(Diagonal::Qv(i, 1)))),
        ("qw".into(), TensorOperator::term(one, Op::Diag(Diagonal::Qw(i, 1)), Op::Diag(Diagonal::Qw(i, 1)))),
    ]
}

/// Modules for `K(w¹) ⊗ K(w²)` (second factor's characters shifted past the first) and for `K(w¹ + w²)`.
pub fn tensor_modules(q: &Quiver, w1: &DimVector, w2: &DimVector) -> Result<(FixedPointModule, FixedPointModule, FixedPointModule)> {
    let m1 = FixedPointModule::new(q, w1)?;
    let m2 = FixedPointModule::new(q, w2)?.with_offset(w1.iter().map(|&x| x as usize).collect());
    let merged = FixedPointModule::new(q, &w1.add(w2))?;
    Ok((m1, m2, merged))
}

fn merge_labels(w1: &DimVector, a: &FixedPointLabel, b: &FixedPointLabel) -> FixedPointLabel {
    FixedPointLabel::new(a.subsets.iter().zip(&b.subsets).enumerate().map(|(i, (x, y))| x.iter().copied().chain(y.iter().map(|&c| c + w1[i] as u16)).collect()).collect())
}

/// `[Δe_{i,0}, Δf_{i,0}] = γ_i(Δh_{i,0}^{-1} − Δh_{i,0})` on every basis pair, plus the diagonal coproducts.
pub fn coproduct_relation_check(q: &Quiver, w1: &DimVector, w2: &DimVector, i: usize) -> Result<Report> {
    if !q.is_edge_free() {
        return Err(KhaError::Unsupported(NON_GRASSMANNIAN.into()));
    }
    let (m1, m2, merged) = tensor_modules(q, w1, w2)?;
    let gens: BTreeMap<String, TensorOperator> = coproduct_generators(i, 1).into_iter().collect();
    let hinv2 = TensorOperator::term(RationalFunction::one(), Op::Diag(Diagonal::HMinus(i, 0)), Op::Diag(Diagonal::HMinus(i, 0)));
    let gamma = q.gamma(i);
    let pairs: Vec<TensorLabel> = m1
        .sectors(w1)
        .into_iter()
        .flat_map(|v| m1.enumerate_basis(&v))
        .flat_map(|a| m2.sectors(w2).into_iter().flat_map(|v| m2.enumerate_basis(&v)).map(move |b| (a.clone(), b)))
        .collect();
    let mut report = Report::new();
    let tag = format!("w1={w1} w2={w2} i={}", i + 1);

    let results: Vec<Result<Option<String>>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let x = TensorVector::basis(a.clone(), b.clone());
            let ef = gens["e"].apply(&m1, &m2, &gens["f"].apply(&m1, &m2, &x)?)?;
            let fe = gens["f"].apply(&m1, &m2, &gens["e"].apply(&m1, &m2, &x)?)?;
            let rhs = hinv2.apply(&m1, &m2, &x)?.sub(&gens["h"].apply(&m1, &m2, &x)?).scale(&gamma);
            Ok((!ef.sub(&fe).equals(&rhs)).then(|| format!("at I[{a}] ⊗ I[{b}]")))
        })
        .collect();
    let mut bad = None;
    for r in results {
        if let Some(d) = r? {
            bad.get_or_insert(d);
        }
    }
    report.check(format!("coproduct [De,Df] {tag}"), bad.is_none(), bad.unwrap_or_default());

    // diagonal coproducts against the merged framing
    let mut bad = None;
    for (a, b) in &pairs {
        let x = TensorVector::basis(a.clone(), b.clone());
        let merged_label = merge_labels(w1, a, b);
        for (name, op) in [("b", Diagonal::B(i, 1)), ("qv", Diagonal::Qv(i, 1)), ("qw", Diagonal::Qw(i, 1))] {
            let lhs = gens[name].apply(&m1, &m2, &x)?;
            let rhs = x.scale(&merged.eigenvalue(op, &merged_label)?);
            if !lhs.equals(&rhs) {
                bad.get_or_insert(format!("{name} at I[{a}] ⊗ I[{b}]"));
            }
        }
    }
    report.check(format!("coproduct diagonal {tag}"), bad.is_none(), bad.unwrap_or_default());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rf;

    fn dv(x: &[i64]) -> DimVector {
        DimVector(x.to_vec())
    }

    #[test]
    fn diag_examples() {
        let a1 = Quiver::a1();
        let m = FixedPointModule::new(&a1, &dv(&[1])).unwrap();
        let u = RationalFunction::var(u_aux());
        assert!(r_diag_eigenvalue(&m, 0, &u, &FixedPointLabel::vacuum(1)).unwrap().is_one());
        let s = FixedPointLabel::parse("{1}", m.w()).unwrap();
        let expect = parse_rf("qh*(1 - u[1,1]/u)/(1 - qh^2*u[1,1]/u)").unwrap();
        assert!(r_diag_eigenvalue(&m, 0, &u, &s).unwrap().rf_eq(&expect));
    }

    #[test]
    fn f_block_example() {
        let a1 = Quiver::a1();
        let m = FixedPointModule::new(&a1, &dv(&[1])).unwrap();
        let u = RationalFunction::var(u_aux());
        let s = FixedPointLabel::parse("{1}", m.w()).unwrap();
        let out = r_block_f(&m, 0, &u, &ModuleVector::basis(s)).unwrap();
        let expect = parse_rf("(1 - qh^2)/(1 - qh^2*u[1,1]/u)").unwrap();
        assert!(out.coeff(&FixedPointLabel::vacuum(1)).rf_eq(&expect));
        let up = r_block_e(&m, 0, &u, &ModuleVector::basis(FixedPointLabel::vacuum(1))).unwrap();
        assert!(up.coeffs.keys().all(|l| l.v()[0] == 1));
    }

    #[test]
    fn a1_and_jordan_limits() {
        let r = limit_checks(&Quiver::a1(), 0, &dv(&[2]), &dv(&[2])).unwrap();
        assert!(r.ok(), "{}", r.to_text());
        let r = limit_checks(&Quiver::jordan(), 0, &dv(&[1]), &dv(&[1])).unwrap();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn a1_coproduct() {
        let r = coproduct_relation_check(&Quiver::a1(), &dv(&[1]), &dv(&[1]), 0).unwrap();
        assert!(r.ok(), "{}", r.to_text());
        assert!(coproduct_relation_check(&Quiver::jordan(), &dv(&[1]), &dv(&[1]), 0).is_err());
    }
}
