//! Rational functions with factored denominators.
//!
//! The numerator is an expanded Laurent polynomial. The denominator is kept as a
//! multiset of primitive polynomials (integer content 1, no monomial factor,
//! positive leading coefficient); constants and monomials are absorbed into the
//! numerator. Sums use the lcm of the factor multisets and cancellation is done
//! by exact trial division, so no multivariate gcd is ever needed.

use super::coeff::Q;
use super::poly::{LaurentPoly, Monomial};
use super::var::VarId;
use crate::error::{KhaError, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor(Arc<LaurentPoly>);

impl Factor {
    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }
}

impl Ord for Factor {
    fn cmp(&self, o: &Factor) -> Ordering {
        if Arc::ptr_eq(&self.0, &o.0) {
            return Ordering::Equal;
        }
        let (a, b) = (self.0.terms(), o.0.terms());
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b.iter()) {
                let c = x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, o: &Factor) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

type Den = Vec<(Factor, u32)>;

#[derive(Clone, Debug, Default)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: Den,
}

/// Split a polynomial into `c·m·p`; `p` is `None` when it is a unit of the Laurent ring.
fn split_unit(p: &LaurentPoly) -> (Q, Monomial, Option<Factor>) {
    let (c, m, prim) = p.primitive_decomposition();
    if prim.len() <= 1 {
        (c, m, None)
    } else {
        (c, m, Some(Factor(Arc::new(prim))))
    }
}

fn merge_den(a: &Den, b: &Den) -> Den {
    let mut map: BTreeMap<Factor, u32> = a.iter().cloned().collect();
    for (f, k) in b {
        *map.entry(f.clone()).or_insert(0) += k;
    }
    map.into_iter().collect()
}

fn lcm_den<'a>(dens: impl IntoIterator<Item = &'a Den>) -> Den {
    let mut map: BTreeMap<Factor, u32> = BTreeMap::new();
    for d in dens {
        for (f, k) in d {
            let e = map.entry(f.clone()).or_insert(0);
            *e = (*e).max(*k);
        }
    }
    map.into_iter().collect()
}

fn expand_den(d: &Den) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (f, k) in d {
        acc = acc.mul(&f.0.pow(*k));
    }
    acc
}

/// `L / d` expanded, where `d` divides the multiset `l`.
fn cofactor(l: &Den, d: &Den) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (f, k) in l {
        let have = d.iter().find(|(g, _)| g == f).map(|p| p.1).unwrap_or(0);
        if *k > have {
            acc = acc.mul(&f.0.pow(k - have));
        }
    }
    acc
}

/// Divide out as many denominator factors from `num` as exact division allows.
fn cancel(mut num: LaurentPoly, den: Den) -> (LaurentPoly, Den) {
    if num.is_zero() {
        return (num, Vec::new());
    }
    let mut out = Vec::with_capacity(den.len());
    for (f, mut k) in den {
        while k > 0 {
            match num.try_div(&f.0) {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        if k > 0 {
            out.push((f, k));
        }
    }
    (num, out)
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::int(n))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    pub fn var_pow(v: VarId, e: i32) -> Self {
        Self::from_poly(LaurentPoly::var_pow(v, e))
    }

    pub fn monomial(c: Q, m: Monomial) -> Self {
        Self::from_poly(LaurentPoly::term(c, m))
    }

    /// `qh^e`.
    pub fn qh_pow(e: i32) -> Self {
        Self::var_pow(VarId::QH, e)
    }

    /// `num / den`, failing when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        Self::from_poly(num).div(&Self::from_poly(den))
    }

    /// Product of polynomial factors over product of polynomial factors.
    pub fn from_factors(nums: &[LaurentPoly], dens: &[LaurentPoly]) -> Result<Self> {
        let mut num = LaurentPoly::product(nums.iter());
        let mut den: BTreeMap<Factor, u32> = BTreeMap::new();
        for d in dens {
            if d.is_zero() {
                return Err(KhaError::DivisionByZero);
            }
            let (c, m, f) = split_unit(d);
            num = num.mul_term(&c.recip(), &m.inv());
            if let Some(f) = f {
                *den.entry(f).or_insert(0) += 1;
            }
        }
        let (num, den) = cancel(num, den.into_iter().collect());
        Ok(RationalFunction { num, den })
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(Factor, u32)] {
        &self.den
    }

    pub fn den_poly(&self) -> LaurentPoly {
        expand_den(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// Whether the value is a Laurent polynomial in this representation.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Q> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut vs = self.num.vars();
        for (f, _) in &self.den {
            vs.extend(f.0.vars());
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.num.contains_var(v) || self.den.iter().any(|(f, _)| f.0.contains_var(v))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_term(&self, c: &Q, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.mul_term(c, m), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let (num, den) = cancel(self.num.add(&o.num), self.den.clone());
            return RationalFunction { num, den };
        }
        let l = lcm_den([&self.den, &o.den]);
        let num = self.num.mul(&cofactor(&l, &self.den)).add(&o.num.mul(&cofactor(&l, &o.den)));
        let (num, den) = cancel(num, l);
        RationalFunction { num, den }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Sum of many terms over one common denominator, cancelling once at the end.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Self>) -> Self {
        let mut groups: BTreeMap<Den, LaurentPoly> = BTreeMap::new();
        for it in items {
            if it.is_zero() {
                continue;
            }
            match groups.get_mut(&it.den) {
                Some(acc) => *acc = acc.add(&it.num),
                None => {
                    groups.insert(it.den.clone(), it.num.clone());
                }
            }
        }
        groups.retain(|_, n| !n.is_zero());
        if groups.len() == 1 {
            let (den, num) = groups.into_iter().next().unwrap();
            let (num, den) = cancel(num, den);
            return RationalFunction { num, den };
        }
        let l = lcm_den(groups.keys());
        let parts: Vec<LaurentPoly> = groups.iter().map(|(d, n)| n.mul(&cofactor(&l, d))).collect();
        let (num, den) = cancel(LaurentPoly::sum(parts.iter()), l);
        RationalFunction { num, den }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_empty() && o.den.is_empty() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let (a_num, b_den) = cancel(self.num.clone(), o.den.clone());
        let (b_num, a_den) = cancel(o.num.clone(), self.den.clone());
        RationalFunction { num: a_num.mul(&b_num), den: merge_den(&a_den, &b_den) }
    }

    pub fn product<'a>(items: impl IntoIterator<Item = &'a Self>) -> Self {
        let mut acc = Self::one();
        for it in items {
            acc = acc.mul(it);
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(KhaError::DivisionByZero);
        }
        let (c, m, f) = split_unit(&self.num);
        let num = expand_den(&self.den).mul_term(&c.recip(), &m.inv());
        Ok(RationalFunction { num, den: f.map(|f| vec![(f, 1)]).unwrap_or_default() })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        if base.den.is_empty() {
            return Ok(Self::from_poly(base.num.pow(e.unsigned_abs())));
        }
        let den = base.den.iter().map(|(f, k)| (f.clone(), k * e.unsigned_abs())).collect();
        Ok(RationalFunction { num: base.num.pow(e.unsigned_abs()), den })
    }

    /// Exact equality by cross-multiplication.
    pub fn rf_eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        let l = lcm_den([&self.den, &o.den]);
        self.num.mul(&cofactor(&l, &self.den)) == o.num.mul(&cofactor(&l, &o.den))
    }

    /// Monomial bindings `v ↦ c·m`, if every binding has that shape.
    fn monomial_bindings(bindings: &[(VarId, Self)]) -> Option<Vec<(VarId, Q, Monomial)>> {
        bindings
            .iter()
            .map(|(v, f)| {
                let (m, c) = f.as_poly()?.as_term()?;
                Some((*v, c.clone(), m.clone()))
            })
            .collect()
    }

    /// Substitute each bound variable by a rational function.
    pub fn substitute(&self, bindings: &[(VarId, Self)]) -> Result<Self> {
        if let Some(mb) = Self::monomial_bindings(bindings) {
            let mut num = self.num.substitute_monomials(&mb);
            let mut den: BTreeMap<Factor, u32> = BTreeMap::new();
            for (f, k) in &self.den {
                let img = f.0.substitute_monomials(&mb);
                if img.is_zero() {
                    return Err(KhaError::Pole { factor: crate::arith::text::poly_to_string(&f.0) });
                }
                let (c, m, g) = split_unit(&img);
                num = num.mul_term(&c.pow(-(*k as i32)), &m.pow(-(*k as i32)));
                if let Some(g) = g {
                    *den.entry(g).or_insert(0) += k;
                }
            }
            let (num, den) = cancel(num, den.into_iter().collect());
            return Ok(RationalFunction { num, den });
        }
        let eval = |p: &LaurentPoly| -> Result<Self> {
            let mut terms = Vec::with_capacity(p.len());
            for (m, c) in p.terms() {
                let mut t = Self::constant(c.clone());
                for (v, e) in m.iter() {
                    match bindings.iter().find(|b| b.0 == v) {
                        Some((_, img)) => t = t.mul(&img.pow(e)?),
                        None => t = t.mul(&Self::var_pow(v, e)),
                    }
                }
                terms.push(t);
            }
            Ok(Self::sum(terms.iter()))
        };
        let mut acc = eval(&self.num)?;
        for (f, k) in &self.den {
            let img = eval(&f.0)?;
            if img.is_zero() {
                return Err(KhaError::Pole { factor: crate::arith::text::poly_to_string(&f.0) });
            }
            acc = acc.div(&img.pow(*k as i32)?)?;
        }
        Ok(acc)
    }

    /// Rename variables (a monomial substitution with unit coefficients).
    pub fn rename(&self, map: &[(VarId, VarId)]) -> Self {
        let b: Vec<(VarId, Self)> = map.iter().map(|(a, b)| (*a, Self::var(*b))).collect();
        self.substitute(&b).expect("renaming cannot create poles")
    }

    /// Split `self = (y-free part) · (y-dependent part)` by denominator factors.
    pub(crate) fn split_den_by_var(&self, v: VarId) -> (Den, Den) {
        self.den.iter().cloned().partition(|(f, _)| f.0.contains_var(v))
    }

    pub(crate) fn from_raw(num: LaurentPoly, den: Vec<(Factor, u32)>) -> Self {
        let (num, den) = cancel(num, den);
        RationalFunction { num, den }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        self.rf_eq(o)
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RationalFunction {
        RationalFunction::var(VarId::aux("x").unwrap())
    }
    fn one() -> RationalFunction {
        RationalFunction::one()
    }

    #[test]
    fn partial_fractions() {
        let a = one().div(&one().sub(&x())).unwrap();
        let b = one().div(&one().add(&x())).unwrap();
        let expect = RationalFunction::int(2).div(&one().sub(&x().mul(&x()))).unwrap();
        assert!(a.add(&b).rf_eq(&expect));
    }

    #[test]
    fn laurent_inverse_and_cancellation() {
        let xi = x().inv().unwrap();
        assert!(x().mul(&xi).is_one());
        let f = x().mul(&x()).sub(&one()).div(&x().sub(&one())).unwrap();
        assert!(f.as_poly().is_some());
        assert!(f.rf_eq(&x().add(&one())));
        assert!(!x().rf_eq(&x().add(&one())));
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(one().div(&RationalFunction::zero()), Err(KhaError::DivisionByZero)));
    }

    #[test]
    fn substitution_pole() {
        let y = RationalFunction::var(VarId::aux("y").unwrap());
        let f = one().div(&x().sub(&y)).unwrap();
        let err = f.substitute(&[(VarId::aux("x").unwrap(), y.clone())]).unwrap_err();
        assert!(matches!(err, KhaError::Pole { .. }));
        let sq = x().mul(&x()).substitute(&[(VarId::aux("x").unwrap(), RationalFunction::var(VarId::QH))]).unwrap();
        assert!(sq.rf_eq(&RationalFunction::qh_pow(2)));
    }
}
