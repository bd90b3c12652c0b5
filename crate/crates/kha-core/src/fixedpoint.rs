//! The localized module `K(w)` on its basis of Grassmannian fixed points
//! `I_S`, `S_i ⊆ {1..w_i}`.
//!
//! The lowering operators come from the explicit fixed-point formula; the
//! raising operators are their adjoints for the modified pairing. On quivers
//! with edges the fixed locus has further points not of this form, so there
//! the raising operators are only the compression to this span.

use crate::arith::{delta_coefficients, expand_at, Direction, Monomial, RationalFunction, VarId, Q};
use crate::error::{KhaError, Result};
use crate::quiver::{DimVector, Quiver};
use crate::report::Report;
use crate::shuffle::{evaluate, ShuffleElement};
use crate::taut::{h_function, z_var, KClass, TautData};
use itertools::Itertools;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

pub const MAX_FRAMING: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPointLabel {
    pub subsets: Vec<Vec<u16>>,
}

impl FixedPointLabel {
    pub fn new(mut subsets: Vec<Vec<u16>>) -> FixedPointLabel {
        for s in &mut subsets {
            s.sort_unstable();
            s.dedup();
        }
        FixedPointLabel { subsets }
    }

    pub fn vacuum(n_vertices: usize) -> FixedPointLabel {
        FixedPointLabel { subsets: vec![Vec::new(); n_vertices] }
    }

    pub fn v(&self) -> DimVector {
        DimVector(self.subsets.iter().map(|s| s.len() as i64).collect())
    }

    pub fn contains(&self, i: usize, b: u16) -> bool {
        self.subsets[i].binary_search(&b).is_ok()
    }

    pub fn without(&self, i: usize, a: u16) -> FixedPointLabel {
        let mut s = self.clone();
        s.subsets[i].retain(|&b| b != a);
        s
    }

    pub fn with(&self, i: usize, a: u16) -> FixedPointLabel {
        let mut s = self.clone();
        if let Err(pos) = s.subsets[i].binary_search(&a) {
            s.subsets[i].insert(pos, a);
        }
        s
    }

    /// Parses `{1,2}|{}` (one brace group per vertex).
    pub fn parse(text: &str, w: &DimVector) -> Result<FixedPointLabel> {
        let groups: Vec<&str> = text.split('|').map(str::trim).collect();
        if groups.len() != w.len() {
            return Err(KhaError::Parse(format!("label `{text}` has {} groups, expected {}", groups.len(), w.len())));
        }
        let mut subsets = Vec::new();
        for (i, g) in groups.iter().enumerate() {
            let inner = g
                .strip_prefix('{')
                .and_then(|g| g.strip_suffix('}'))
                .ok_or_else(|| KhaError::Parse(format!("label group `{g}` is not of the form {{..}}")))?;
            let mut s = Vec::new();
            for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let b: u16 = part.parse().map_err(|_| KhaError::Parse(format!("bad index `{part}` in label")))?;
                if b == 0 || b as i64 > w[i] {
                    return Err(KhaError::Parse(format!("index {b} outside 1..={} at vertex {}", w[i], i + 1)));
                }
                s.push(b);
            }
            subsets.push(s);
        }
        Ok(FixedPointLabel::new(subsets))
    }
}

impl fmt::Display for FixedPointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups: Vec<String> = self.subsets.iter().map(|s| format!("{{{}}}", s.iter().join(","))).collect();
        f.write_str(&groups.join("|"))
    }
}

/// Finite combination of fixed-point classes.
#[derive(Clone, Debug, Default)]
pub struct ModuleVector {
    pub coeffs: BTreeMap<FixedPointLabel, RationalFunction>,
}

impl ModuleVector {
    pub fn zero() -> ModuleVector {
        ModuleVector::default()
    }

    pub fn basis(label: FixedPointLabel) -> ModuleVector {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(label, RationalFunction::one());
        ModuleVector { coeffs }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (FixedPointLabel, RationalFunction)>) -> ModuleVector {
        let mut acc: BTreeMap<FixedPointLabel, Vec<RationalFunction>> = BTreeMap::new();
        for (l, c) in it {
            acc.entry(l).or_default().push(c);
        }
        let coeffs = acc.into_iter().map(|(l, cs)| (l, RationalFunction::sum(cs.iter()))).filter(|(_, c)| !c.is_zero()).collect();
        ModuleVector { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, l: &FixedPointLabel) -> RationalFunction {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &ModuleVector) -> ModuleVector {
        ModuleVector::from_terms(self.coeffs.iter().chain(o.coeffs.iter()).map(|(l, c)| (l.clone(), c.clone())))
    }

    pub fn sub(&self, o: &ModuleVector) -> ModuleVector {
        self.add(&o.scale(&RationalFunction::int(-1)))
    }

    pub fn scale(&self, c: &RationalFunction) -> ModuleVector {
        ModuleVector::from_terms(self.coeffs.iter().map(|(l, x)| (l.clone(), x.mul(c))))
    }

    /// Coefficientwise `rf_eq`.
    pub fn equals(&self, o: &ModuleVector) -> bool {
        let labels: std::collections::BTreeSet<&FixedPointLabel> = self.coeffs.keys().chain(o.coeffs.keys()).collect();
        labels.into_iter().all(|l| self.coeff(l).rf_eq(&o.coeff(l)))
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (l, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "I[{l}]: {c}")?;
        }
        Ok(())
    }
}

/// Rational function of the slot symbol `l`, evaluated at `l = u[i,a]`.
#[derive(Clone, Debug)]
pub struct WeightFunction(pub RationalFunction);

impl WeightFunction {
    pub fn slot() -> VarId {
        VarId::aux("l").unwrap()
    }

    /// `l^d`.
    pub fn power(d: i32) -> WeightFunction {
        WeightFunction(RationalFunction::var_pow(Self::slot(), d))
    }

    pub fn eval(&self, at: &RationalFunction) -> Result<RationalFunction> {
        self.0.substitute(&[(Self::slot(), at.clone())])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    /// `a_{i,d}`: multiplication by `p_d(𝒱_i(1 − q^{-1}))`.
    A(usize, i32),
    /// `b_{i,d}`: multiplication by `p_d(W_i(1 − q^{-1}))`.
    B(usize, i32),
    /// `q^{±v_i/2}`.
    Qv(usize, i32),
    /// `q^{±w_i/2}`.
    Qw(usize, i32),
    /// `h_{i,n}`, `n ≥ 0`, from the expansion of the h-function at `z = ∞`.
    HPlus(usize, u32),
    /// `h_{i,-n}`, `n ≥ 0`, from the expansion at `z = 0`; `HMinus(i, 0) = h_{i,0}^{-1}`.
    HMinus(usize, u32),
}

#[derive(Clone, Debug)]
pub struct FixedPointModule {
    quiver: Quiver,
    w: DimVector,
    offset: Vec<usize>,
    pairing_cache: Arc<Mutex<FxHashMap<FixedPointLabel, RationalFunction>>>,
}

impl FixedPointModule {
    pub fn new(quiver: &Quiver, w: &DimVector) -> Result<FixedPointModule> {
        if w.len() != quiver.n_vertices() {
            return Err(KhaError::Config(format!("framing {w} has {} entries for {} vertices", w.len(), quiver.n_vertices())));
        }
        if w.iter().any(|&x| !(0..=MAX_FRAMING).contains(&x)) {
            return Err(KhaError::OutOfRange(format!("framing entries must lie in 0..={MAX_FRAMING}")));
        }
        Ok(FixedPointModule {
            quiver: quiver.clone(),
            w: w.clone(),
            offset: vec![0; quiver.n_vertices()],
            pairing_cache: Default::default(),
        })
    }

    /// Shift the framing characters: slot `b` at vertex `i` becomes `u[i, offset_i + b]`.
    pub fn with_offset(mut self, offset: Vec<usize>) -> FixedPointModule {
        self.offset = offset;
        self.pairing_cache = Default::default();
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn w(&self) -> &DimVector {
        &self.w
    }

    pub fn u_var(&self, i: usize, b: u16) -> VarId {
        VarId::u(i, self.offset[i] + b as usize)
    }

    pub fn u(&self, i: usize, b: u16) -> RationalFunction {
        RationalFunction::var(self.u_var(i, b))
    }

    fn u_mono(&self, i: usize, b: u16) -> Monomial {
        Monomial::var(self.u_var(i, b), 1)
    }

    /// Labels of the `v` sector: sorted subsets, vertices in declaration order.
    pub fn enumerate_basis(&self, v: &[i64]) -> Vec<FixedPointLabel> {
        if v.len() != self.w.len() || v.iter().zip(self.w.iter()).any(|(&a, &b)| a < 0 || a > b) {
            return Vec::new();
        }
        let per_vertex: Vec<Vec<Vec<u16>>> = v.iter().zip(self.w.iter()).map(|(&k, &n)| (1..=n as u16).combinations(k as usize).collect()).collect();
        if per_vertex.is_empty() {
            return vec![FixedPointLabel::vacuum(0)];
        }
        per_vertex.into_iter().multi_cartesian_product().map(FixedPointLabel::new).collect()
    }

    /// Sectors `v ≤ vmax` with a nonempty basis.
    pub fn sectors(&self, vmax: &[i64]) -> Vec<DimVector> {
        let bound: Vec<i64> = vmax.iter().zip(self.w.iter()).map(|(&a, &b)| a.min(b)).collect();
        DimVector::box_below(&bound)
    }

    pub fn restrict(&self, label: &FixedPointLabel) -> TautData {
        let vclass = label.subsets.iter().enumerate().map(|(i, s)| s.iter().fold(KClass::zero(), |acc, &b| acc.add(&KClass::character(self.u_mono(i, b))))).collect();
        let wclass = self.w.iter().enumerate().map(|(i, &n)| (1..=n as u16).fold(KClass::zero(), |acc, b| acc.add(&KClass::character(self.u_mono(i, b))))).collect();
        TautData { v: label.v(), w: self.w.clone(), vclass, wclass }
    }

    pub fn tangent_character(&self, label: &FixedPointLabel) -> KClass {
        let d = self.restrict(label);
        let q = KClass::qh_pow(2);
        let mut tan = KClass::zero();
        for (e, edge) in self.quiver.edges().iter().enumerate() {
            let t = KClass::var(VarId::t(e));
            let vi_dual = d.vclass[edge.src].dual();
            let vj = &d.vclass[edge.dst];
            tan = tan.add(&vj.mul(&vi_dual).mul(&t.dual()));
            tan = tan.add(&t.mul(&d.vclass[edge.src]).mul(&q.dual()).mul(&vj.dual()));
        }
        for i in 0..self.quiver.n_vertices() {
            let vi = &d.vclass[i];
            let wi = &d.wclass[i];
            tan = tan.sub(&KClass::int(1).add(&q.dual()).mul(vi).mul(&vi.dual()));
            tan = tan.add(&vi.mul(&wi.dual())).add(&wi.mul(&q.dual()).mul(&vi.dual()));
        }
        tan
    }

    /// `(I_S, I_S)' = ∧•(Tan^∨) · sdet[Σ_e qh 𝒱_j/(t_e 𝒱_i) − Σ_i qh 𝒱_i/𝒱_i + Σ_i qh 𝒱_i/W_i]` at `I_S`.
    pub fn pairing_diag(&self, label: &FixedPointLabel) -> Result<RationalFunction> {
        if let Some(v) = self.pairing_cache.lock().unwrap().get(label) {
            return Ok(v.clone());
        }
        let tan = self.tangent_character(label);
        if let Some((_, m)) = tan.terms().find(|(c, _)| c.is_one()) {
            return Err(KhaError::DegenerateFixedPoint(format!("tangent space at I[{label}] contains the trivial character {m} times")));
        }
        let d = self.restrict(label);
        let qh = KClass::qh_pow(1);
        let mut line = KClass::zero();
        for (e, edge) in self.quiver.edges().iter().enumerate() {
            let t = KClass::var(VarId::t(e));
            line = line.add(&qh.mul(&d.vclass[edge.dst]).mul(&t.dual()).mul(&d.vclass[edge.src].dual()));
        }
        for i in 0..self.quiver.n_vertices() {
            line = line.sub(&qh.mul(&d.vclass[i]).mul(&d.vclass[i].dual()));
            line = line.add(&qh.mul(&d.vclass[i]).mul(&d.wclass[i].dual()));
        }
        let value = tan.dual().wedge()?.mul(&line.sdet().to_rf());
        self.pairing_cache.lock().unwrap().insert(label.clone(), value.clone());
        Ok(value)
    }

    /// Bilinear extension of the diagonal rule.
    pub fn pairing(&self, x: &ModuleVector, y: &ModuleVector) -> Result<RationalFunction> {
        let mut terms = Vec::new();
        for (l, c) in &x.coeffs {
            if let Some(d) = y.coeffs.get(l) {
                terms.push(c.mul(d).mul(&self.pairing_diag(l)?));
            }
        }
        Ok(RationalFunction::sum(terms.iter()))
    }

    /// The factor attached to removing `u[i,a]` from `S` when the result is `T`.
    fn removal_factor(&self, i: usize, a: u16, s: &FixedPointLabel, t: &FixedPointLabel) -> Result<RationalFunction> {
        let q = &self.quiver;
        let one = RationalFunction::one();
        let qh = RationalFunction::qh_pow(1);
        let qq = RationalFunction::qh_pow(2);
        let ua = self.u(i, a);
        let mut num = q.sigma(i);
        for (e, edge) in q.out_edges(i) {
            let j = edge.dst;
            let den = ua.mul(&q.t(e));
            for &b in &t.subsets[j] {
                num = num.mul(&qh.mul(&one.sub(&self.u(j, b).div(&den)?)));
            }
        }
        for (e, edge) in q.in_edges(i) {
            let j = edge.src;
            let top = qq.mul(&ua);
            for &b in &t.subsets[j] {
                num = num.mul(&one.sub(&top.div(&q.t(e).mul(&self.u(j, b)))?));
            }
        }
        for b in 1..=self.w[i] as u16 {
            if !s.contains(i, b) {
                num = num.mul(&one.sub(&qq.mul(&ua).div(&self.u(i, b))?));
            }
        }
        let mut den = RationalFunction::one();
        for &b in &t.subsets[i] {
            den = den.mul(&qh.mul(&one.sub(&self.u(i, b).div(&ua)?)));
        }
        num.div(&den)
    }

    /// Coefficient of `I_{S − a_i}` in `f_{i,weight}(I_S)`.
    pub fn f_coefficient(&self, i: usize, weight: &WeightFunction, s: &FixedPointLabel, a: u16) -> Result<RationalFunction> {
        let t = s.without(i, a);
        Ok(weight.eval(&self.u(i, a))?.mul(&self.removal_factor(i, a, s, &t)?))
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i >= self.quiver.n_vertices() {
            return Err(KhaError::Config(format!("vertex {} out of range", i + 1)));
        }
        Ok(())
    }

    fn apply_basis<F>(&self, x: &ModuleVector, f: F) -> Result<ModuleVector>
    where
        F: Fn(&FixedPointLabel) -> Result<Vec<(FixedPointLabel, RationalFunction)>> + Sync,
    {
        let parts: Vec<Result<Vec<(FixedPointLabel, RationalFunction)>>> = x
            .coeffs
            .par_iter()
            .map(|(l, c)| Ok(f(l)?.into_iter().map(|(m, k)| (m, k.mul(c))).collect()))
            .collect();
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        Ok(ModuleVector::from_terms(all))
    }

    pub fn act_f_weighted(&self, i: usize, weight: &WeightFunction, x: &ModuleVector) -> Result<ModuleVector> {
        self.check_vertex(i)?;
        self.apply_basis(x, |s| s.subsets[i].iter().map(|&a| Ok((s.without(i, a), self.f_coefficient(i, weight, s, a)?))).collect())
    }

    pub fn act_f(&self, i: usize, d: i32, x: &ModuleVector) -> Result<ModuleVector> {
        self.act_f_weighted(i, &WeightFunction::power(d), x)
    }

    /// Pairing adjoint of `act_f_weighted`: `c^e_{T→S} = c^f_{S→T} (I_T,I_T)' / (I_S,I_S)'`.
    pub fn act_e_weighted(&self, i: usize, weight: &WeightFunction, x: &ModuleVector) -> Result<ModuleVector> {
        self.check_vertex(i)?;
        self.apply_basis(x, |t| {
            let mut out = Vec::new();
            for a in 1..=self.w[i] as u16 {
                if t.contains(i, a) {
                    continue;
                }
                let s = t.with(i, a);
                let c = self.f_coefficient(i, weight, &s, a)?;
                out.push((s.clone(), c.mul(&self.pairing_diag(t)?).div(&self.pairing_diag(&s)?)?));
            }
            Ok(out)
        })
    }

    pub fn act_e(&self, i: usize, d: i32, x: &ModuleVector) -> Result<ModuleVector> {
        self.act_e_weighted(i, &WeightFunction::power(d), x)
    }

    /// `f_{i_1,d_1} ⋯ f_{i_n,d_n}(x)`; the last letter acts first.
    pub fn act_word_f(&self, word: &[(usize, i32)], x: &ModuleVector) -> Result<ModuleVector> {
        let mut acc = x.clone();
        for &(i, d) in word.iter().rev() {
            acc = self.act_f(i, d, &acc)?;
        }
        Ok(acc)
    }

    pub fn act_word_e(&self, word: &[(usize, i32)], x: &ModuleVector) -> Result<ModuleVector> {
        let mut acc = x.clone();
        for &(i, d) in word.iter().rev() {
            acc = self.act_e(i, d, &acc)?;
        }
        Ok(acc)
    }

    /// Action of a shuffle element: `R` evaluated at the removed characters, times the removal factors.
    pub fn act_shuffle(&self, r: &ShuffleElement, x: &ModuleVector) -> Result<ModuleVector> {
        let n = &r.degree;
        if n.len() != self.quiver.n_vertices() {
            return Err(KhaError::Config(format!("shuffle degree {n} does not match the quiver")));
        }
        self.apply_basis(x, |s| {
            if s.subsets.iter().zip(n.iter()).any(|(sub, &k)| (sub.len() as i64) < k) {
                return Ok(Vec::new());
            }
            let choices: Vec<Vec<Vec<u16>>> = s.subsets.iter().zip(n.iter()).map(|(sub, &k)| sub.iter().copied().combinations(k as usize).collect()).collect();
            let mut out = Vec::new();
            for removed in choices.into_iter().multi_cartesian_product() {
                let mut t = s.clone();
                for (i, rm) in removed.iter().enumerate() {
                    t.subsets[i].retain(|b| !rm.contains(b));
                }
                let values: Vec<Vec<RationalFunction>> = removed.iter().enumerate().map(|(i, rm)| rm.iter().map(|&a| self.u(i, a)).collect()).collect();
                let mut c = evaluate(r, &values)?;
                for (i, rm) in removed.iter().enumerate() {
                    for &a in rm {
                        c = c.mul(&self.removal_factor(i, a, s, &t)?);
                    }
                }
                out.push((t, c));
            }
            Ok(out)
        })
    }

    /// The h-function `qh^{w_i − (v,ς^i)} ∧•((q^{-1} − 1)𝒰_i/z)` at `I_S`.
    pub fn h_function_at(&self, i: usize, label: &FixedPointLabel) -> Result<RationalFunction> {
        h_function(&self.quiver, i, &self.restrict(label), z_var())
    }

    pub fn eigenvalue(&self, op: Diagonal, label: &FixedPointLabel) -> Result<RationalFunction> {
        let one_minus = |d: i32| RationalFunction::one().sub(&RationalFunction::qh_pow(-2 * d));
        let d = self.restrict(label);
        Ok(match op {
            Diagonal::A(i, k) => {
                self.check_vertex(i)?;
                d.vclass[i].power_sum(k).mul(&one_minus(k))
            }
            Diagonal::B(i, k) => {
                self.check_vertex(i)?;
                d.wclass[i].power_sum(k).mul(&one_minus(k))
            }
            Diagonal::Qv(i, s) => RationalFunction::qh_pow(s * label.v()[i] as i32),
            Diagonal::Qw(i, s) => RationalFunction::qh_pow(s * self.w[i] as i32),
            Diagonal::HPlus(i, n) => {
                let h = self.h_function_at(i, label)?;
                expand_at(&h, z_var(), Direction::AtInfinity, n as i32)?.coeff(-(n as i32))
            }
            Diagonal::HMinus(i, n) => {
                let h = self.h_function_at(i, label)?;
                expand_at(&h, z_var(), Direction::AtZero, n as i32)?.coeff(n as i32)
            }
        })
    }

    pub fn act_diagonal(&self, op: Diagonal, x: &ModuleVector) -> Result<ModuleVector> {
        self.apply_basis(x, |l| Ok(vec![(l.clone(), self.eigenvalue(op, l)?)]))
    }
}

/// Which sectors relation 5 is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel5Scope {
    /// Every sector on edge-free quivers, the vacuum sector otherwise.
    Auto,
    Full,
    Vacuum,
}

pub const NON_GRASSMANNIAN: &str = "non-Grassmannian fixed points";

/// `γ_i · (−h_{i,n}, h_{i,0}^{-1} − h_{i,0}, h_{i,n})` by the sign of `n = d + k`.
pub fn rel5_rhs_three_case(m: &FixedPointModule, i: usize, n: i32, label: &FixedPointLabel) -> Result<RationalFunction> {
    let h = if n > 0 {
        m.eigenvalue(Diagonal::HPlus(i, n as u32), label)?.neg()
    } else if n == 0 {
        m.eigenvalue(Diagonal::HMinus(i, 0), label)?.sub(&m.eigenvalue(Diagonal::HPlus(i, 0), label)?)
    } else {
        m.eigenvalue(Diagonal::HMinus(i, (-n) as u32), label)?
    };
    Ok(m.quiver().gamma(i).mul(&h))
}

/// Exact checks of relations 0 to 5 on the fixed basis of every sector `v ≤ vmax`.
pub fn relation_suite(q: &Quiver, w: &DimVector, vmax: &DimVector, dmin: i32, dmax: i32, scope: Rel5Scope) -> Result<Report> {
    let m = FixedPointModule::new(q, w)?;
    let full = match scope {
        Rel5Scope::Full if !q.is_edge_free() => return Err(KhaError::Unsupported(NON_GRASSMANNIAN.into())),
        Rel5Scope::Full => true,
        Rel5Scope::Auto => q.is_edge_free(),
        Rel5Scope::Vacuum => false,
    };
    let n = q.n_vertices();
    let ds: Vec<i32> = (dmin..=dmax).collect();
    let nonzero_ds: Vec<i32> = ds.iter().copied().filter(|&d| d != 0).collect();
    let mut report = Report::new();

    for v in m.sectors(vmax) {
        let basis = m.enumerate_basis(&v);
        let sector = format!("w={w} v={v}");
        let vecs: Vec<(FixedPointLabel, ModuleVector)> = basis.iter().map(|l| (l.clone(), ModuleVector::basis(l.clone()))).collect();

        // rel 0: q^{±w/2} and b are central
        let mut ok = true;
        let mut detail = String::new();
        for i in 0..n {
            let mut centrals = vec![Diagonal::Qw(i, 1), Diagonal::Qw(i, -1)];
            centrals.extend(nonzero_ds.iter().map(|&d| Diagonal::B(i, d)));
            for c in centrals {
                for j in 0..n {
                    for &d in &ds {
                        for (l, x) in &vecs {
                            let lhs_e = m.act_diagonal(c, &m.act_e(j, d, x)?)?.sub(&m.act_e(j, d, &m.act_diagonal(c, x)?)?);
                            let lhs_f = m.act_diagonal(c, &m.act_f(j, d, x)?)?.sub(&m.act_f(j, d, &m.act_diagonal(c, x)?)?);
                            if !lhs_e.is_zero() || !lhs_f.is_zero() {
                                ok = false;
                                detail = format!("{c:?} vs e/f[{},{d}] at I[{l}]", j + 1);
                            }
                        }
                    }
                }
            }
        }
        report.check(format!("rel0 central {sector}"), ok, detail);

        // rel 1-2: e q^{±v_j/2} = q^{±v_j/2} e q^{∓δ/2}, f q^{±v_j/2} = q^{±v_j/2} f q^{±δ/2}
        let mut ok = true;
        let mut detail = String::new();
        for i in 0..n {
            for j in 0..n {
                for s in [1, -1] {
                    let shift = if i == j { RationalFunction::qh_pow(s) } else { RationalFunction::one() };
                    for &d in &ds {
                        for (l, x) in &vecs {
                            let qv = Diagonal::Qv(j, s);
                            let e_lhs = m.act_e(i, d, &m.act_diagonal(qv, x)?)?;
                            let e_rhs = m.act_diagonal(qv, &m.act_e(i, d, x)?)?.scale(&shift.inv()?);
                            let f_lhs = m.act_f(i, d, &m.act_diagonal(qv, x)?)?;
                            let f_rhs = m.act_diagonal(qv, &m.act_f(i, d, x)?)?.scale(&shift);
                            if !e_lhs.equals(&e_rhs) || !f_lhs.equals(&f_rhs) {
                                ok = false;
                                detail = format!("e/f[{},{d}] vs q^(v{}/2)^{s} at I[{l}]", i + 1, j + 1);
                            }
                        }
                    }
                }
            }
        }
        report.check(format!("rel1-2 q^v {sector}"), ok, detail);

        // rel 3-4: [e_{i,m}, a_{j,d}] = δ (q^{-d} − 1) e_{i,m+d}, [f_{i,m}, a_{j,d}] = δ (1 − q^{-d}) f_{i,m+d}
        let mut ok = true;
        let mut detail = String::new();
        for i in 0..n {
            for j in 0..n {
                for &d in &nonzero_ds {
                    let c = RationalFunction::qh_pow(-2 * d).sub(&RationalFunction::one());
                    for &mm in &ds {
                        for (l, x) in &vecs {
                            let a = Diagonal::A(j, d);
                            let e_lhs = m.act_e(i, mm, &m.act_diagonal(a, x)?)?.sub(&m.act_diagonal(a, &m.act_e(i, mm, x)?)?);
                            let f_lhs = m.act_f(i, mm, &m.act_diagonal(a, x)?)?.sub(&m.act_diagonal(a, &m.act_f(i, mm, x)?)?);
                            let (e_rhs, f_rhs) = if i == j {
                                (m.act_e(i, mm + d, x)?.scale(&c), m.act_f(i, mm + d, x)?.scale(&c.neg()))
                            } else {
                                (ModuleVector::zero(), ModuleVector::zero())
                            };
                            if !e_lhs.equals(&e_rhs) || !f_lhs.equals(&f_rhs) {
                                ok = false;
                                detail = format!("[e/f[{},{mm}], a[{},{d}]] at I[{l}]", i + 1, j + 1);
                            }
                        }
                    }
                }
            }
        }
        report.check(format!("rel3-4 a {sector}"), ok, detail);

        // rel 5
        if !full && !v.is_zero() {
            report.skip(format!("rel5 {sector}"), format!("unsupported: {NON_GRASSMANNIAN}"));
            continue;
        }
        let mut ok = true;
        let mut detail = String::new();
        for i in 0..n {
            for (l, x) in &vecs {
                let h = m.h_function_at(i, l)?;
                let deltas = delta_coefficients(&h, z_var(), -2 * dmax, -2 * dmin)?;
                for j in 0..n {
                    for &d in &ds {
                        for &k in &ds {
                            let lhs = m.act_e(i, d, &m.act_f(j, k, x)?)?.sub(&m.act_f(j, k, &m.act_e(i, d, x)?)?);
                            let rhs = if i == j {
                                let c = rel5_rhs_three_case(&m, i, d + k, l)?;
                                let via_delta = m.quiver().gamma(i).mul(&deltas[(-(d + k) + 2 * dmax) as usize]).neg();
                                if !c.rf_eq(&via_delta) {
                                    ok = false;
                                    detail = format!("three-case and delta forms differ at n={} I[{l}]", d + k);
                                }
                                ModuleVector::basis(l.clone()).scale(&c)
                            } else {
                                ModuleVector::zero()
                            };
                            if !lhs.equals(&rhs) {
                                ok = false;
                                detail = format!("[e[{},{d}], f[{},{k}]] at I[{l}]", i + 1, j + 1);
                            }
                        }
                    }
                }
            }
        }
        report.check(format!("rel5 {sector}"), ok, detail);
    }
    Ok(report)
}

/// Gram matrix of the modified pairing on one sector.
pub fn gram_matrix(m: &FixedPointModule, v: &[i64]) -> Result<Vec<Vec<RationalFunction>>> {
    let basis = m.enumerate_basis(v);
    basis
        .iter()
        .map(|a| basis.iter().map(|b| m.pairing(&ModuleVector::basis(a.clone()), &ModuleVector::basis(b.clone()))).collect())
        .collect()
}

pub fn q_int(n: i64) -> RationalFunction {
    RationalFunction::constant(Q::from_int(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rf;

    fn dv(x: &[i64]) -> DimVector {
        DimVector(x.to_vec())
    }

    fn label(s: &str, w: &DimVector) -> FixedPointLabel {
        FixedPointLabel::parse(s, w).unwrap()
    }

    #[test]
    fn basis_enumeration() {
        let a1 = Quiver::a1();
        let m = FixedPointModule::new(&a1, &dv(&[2])).unwrap();
        let b: Vec<String> = m.enumerate_basis(&[1]).iter().map(|l| l.to_string()).collect();
        assert_eq!(b, ["{1}", "{2}"]);
        assert_eq!(m.enumerate_basis(&[0]), vec![FixedPointLabel::vacuum(1)]);
        let m1 = FixedPointModule::new(&a1, &dv(&[1])).unwrap();
        assert!(m1.enumerate_basis(&[2]).is_empty());
        let a2 = FixedPointModule::new(&Quiver::a2(), &dv(&[2, 2])).unwrap();
        assert_eq!(a2.enumerate_basis(&[1, 2]).len(), 2);
        assert_eq!(label("{2,1}|{}", &dv(&[2, 1])).to_string(), "{1,2}|{}");
    }

    #[test]
    fn tangent_characters() {
        let a1 = Quiver::a1();
        let m = FixedPointModule::new(&a1, &dv(&[1])).unwrap();
        assert!(m.tangent_character(&label("{1}", m.w())).is_zero());
        assert!(m.tangent_character(&label("{}", m.w())).is_zero());
        let m = FixedPointModule::new(&a1, &dv(&[2])).unwrap();
        let tan = m.tangent_character(&label("{1}", m.w()));
        assert!(tan.to_rf_sum().rf_eq(&parse_rf("u[1,1]/u[1,2] + u[1,2]/(qh^2*u[1,1])").unwrap()));
        assert_eq!(tan.rank(), 2);
    }

    #[test]
    fn single_f_examples() {
        let a1 = Quiver::a1();
        let m = FixedPointModule::new(&a1, &dv(&[1])).unwrap();
        let out = m.act_f(0, 0, &ModuleVector::basis(label("{1}", m.w()))).unwrap();
        assert!(out.equals(&ModuleVector::basis(FixedPointLabel::vacuum(1))));
        assert!(m.act_f(0, 3, &ModuleVector::basis(FixedPointLabel::vacuum(1))).unwrap().is_zero());
        let m = FixedPointModule::new(&a1, &dv(&[2])).unwrap();
        let out = m.act_f(0, 0, &ModuleVector::basis(label("{1,2}", m.w()))).unwrap();
        assert!(out.coeff(&label("{2}", m.w())).rf_eq(&parse_rf("1/(qh*(1 - u[1,2]/u[1,1]))").unwrap()));
        assert!(out.coeff(&label("{1}", m.w())).rf_eq(&parse_rf("1/(qh*(1 - u[1,1]/u[1,2]))").unwrap()));
    }

    #[test]
    fn e_and_commutator_on_vacuum() {
        let a1 = Quiver::a1();
        let m = FixedPointModule::new(&a1, &dv(&[1])).unwrap();
        let vac = ModuleVector::basis(FixedPointLabel::vacuum(1));
        let e = m.act_e(0, 0, &vac).unwrap();
        assert!(e.equals(&ModuleVector::basis(label("{1}", m.w()))));
        let comm = m.act_e(0, 0, &m.act_f(0, 0, &vac).unwrap()).unwrap().sub(&m.act_f(0, 0, &e).unwrap());
        assert!(comm.equals(&vac.scale(&q_int(-1))));
    }

    #[test]
    fn pairing_examples() {
        let a1 = Quiver::a1();
        let m = FixedPointModule::new(&a1, &dv(&[1])).unwrap();
        assert!(m.pairing_diag(&label("{1}", m.w())).unwrap().is_one());
        assert!(m.pairing_diag(&label("{}", m.w())).unwrap().is_one());
        let m = FixedPointModule::new(&a1, &dv(&[2])).unwrap();
        let g = gram_matrix(&m, &[1]).unwrap();
        assert!(g[0][1].is_zero() && g[1][0].is_zero());
        assert!(!g[0][0].is_zero() && !g[1][1].is_zero());
    }

    #[test]
    fn diagonal_examples() {
        let a1 = Quiver::a1();
        let m = FixedPointModule::new(&a1, &dv(&[1])).unwrap();
        let s = label("{1}", m.w());
        assert!(m.eigenvalue(Diagonal::A(0, 1), &s).unwrap().rf_eq(&parse_rf("u[1,1]*(1 - qh^-2)").unwrap()));
        assert!(m.eigenvalue(Diagonal::A(0, 1), &FixedPointLabel::vacuum(1)).unwrap().is_zero());
        // h_{i,0} = qh^{w_i − (v,ς^i)}
        assert!(m.eigenvalue(Diagonal::HPlus(0, 0), &s).unwrap().rf_eq(&RationalFunction::qh_pow(-1)));
        assert!(m.eigenvalue(Diagonal::HMinus(0, 0), &s).unwrap().rf_eq(&RationalFunction::qh_pow(1)));
    }

    #[test]
    fn a1_suite_small() {
        let r = relation_suite(&Quiver::a1(), &dv(&[1]), &dv(&[1]), -1, 1, Rel5Scope::Auto).unwrap();
        for c in r.failures() {
            eprintln!("{} {}", c.name, c.detail);
        }
        assert!(r.ok());
    }

    #[test]
    fn full_rel5_on_quiver_with_edges_is_unsupported() {
        let err = relation_suite(&Quiver::jordan(), &dv(&[1]), &dv(&[1]), 0, 0, Rel5Scope::Full).unwrap_err();
        assert_eq!(err.to_string(), "unsupported: non-Grassmannian fixed points");
    }
}
