//! Laurent expansions of rational functions at `var → 0` and `var → ∞`.
//!
//! Expansions are written in the local parameter `s = var` (at zero) or
//! `s = 1/var` (at infinity). Each denominator factor that involves `var` is
//! inverted as a power series in `s` by the usual recurrence; factors free of
//! `var` are carried along as a common multiplier of all coefficients.

use super::poly::LaurentPoly;
use super::rational::RationalFunction;
use super::var::VarId;
use crate::error::{KhaError, Result};
use std::collections::BTreeMap;

pub const DEFAULT_ORDER: i32 = 8;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    AtInfinity,
    AtZero,
}

impl Direction {
    fn local(self, e: i32) -> i32 {
        match self {
            Direction::AtZero => e,
            Direction::AtInfinity => -e,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LaurentSeries {
    pub var: VarId,
    pub direction: Direction,
    /// Local exponent of `coeffs[0]`.
    pub valuation: i32,
    pub coeffs: Vec<RationalFunction>,
    /// All local exponents up to and including `order` are exact.
    pub order: i32,
}

impl LaurentSeries {
    /// Coefficient of `s^n` in the local parameter.
    pub fn local_coeff(&self, n: i32) -> RationalFunction {
        assert!(n <= self.order, "coefficient beyond truncation order");
        if n < self.valuation {
            return RationalFunction::zero();
        }
        self.coeffs.get((n - self.valuation) as usize).cloned().unwrap_or_default()
    }

    /// Coefficient of `var^d`.
    pub fn coeff(&self, d: i32) -> RationalFunction {
        self.local_coeff(self.direction.local(d))
    }

    /// Nonzero terms as `(exponent of var, coefficient)`, in increasing local order.
    pub fn terms(&self) -> Vec<(i32, RationalFunction)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.direction.local(self.valuation + k as i32), c.clone()))
            .collect()
    }
}

/// Power series in `s` starting at `s^0`, truncated to `len` coefficients.
type Ser = Vec<RationalFunction>;

fn ser_mul(a: &Ser, b: &Ser, len: usize) -> Ser {
    let mut out = vec![Vec::new(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j].push(x.mul(y));
        }
    }
    out.iter().map(|ts| RationalFunction::sum(ts.iter())).collect()
}

fn ser_coeff(a: &Ser, b: &Ser, n: usize) -> RationalFunction {
    let mut ts = Vec::new();
    for i in 0..=n {
        if let (Some(x), Some(y)) = (a.get(i), b.get(n - i)) {
            if !x.is_zero() && !y.is_zero() {
                ts.push(x.mul(y));
            }
        }
    }
    RationalFunction::sum(ts.iter())
}

/// Local coefficient table of a polynomial: local exponent → coefficient.
fn local_coeffs(p: &LaurentPoly, var: VarId, dir: Direction) -> BTreeMap<i32, LaurentPoly> {
    p.coefficients_in(var).into_iter().map(|(e, c)| (dir.local(e), c)).collect()
}

struct Plan {
    valuation: i32,
    /// Multiplier common to every coefficient.
    outer: RationalFunction,
    /// Numerator series, shifted to start at `s^0`.
    num: Ser,
    /// Inverse series of each `var`-dependent factor (normalized leading coefficient 1), with multiplicity.
    inverses: Vec<(Vec<(usize, RationalFunction)>, u32)>,
}

fn plan(f: &RationalFunction, var: VarId, dir: Direction) -> Result<Plan> {
    let (dep, free) = f.split_den_by_var(var);
    let mut outer = RationalFunction::from_raw(LaurentPoly::one(), free);
    let num_c = local_coeffs(f.num(), var, dir);
    let num_lo = num_c.keys().next().copied().unwrap_or(0);
    let num_hi = num_c.keys().last().copied().unwrap_or(0);
    let mut num = vec![RationalFunction::zero(); (num_hi - num_lo + 1) as usize];
    for (e, c) in num_c {
        num[(e - num_lo) as usize] = RationalFunction::from_poly(c);
    }
    let mut valuation = num_lo;
    let mut inverses = Vec::new();
    for (fac, k) in dep {
        let cs = local_coeffs(fac.poly(), var, dir);
        let lo = *cs.keys().next().unwrap();
        let lead = RationalFunction::from_poly(cs[&lo].clone());
        let lead_inv = lead.inv()?;
        let ratios: Vec<(usize, RationalFunction)> =
            cs.iter().filter(|(e, _)| **e != lo).map(|(e, c)| ((e - lo) as usize, RationalFunction::from_poly(c.clone()).mul(&lead_inv))).collect();
        outer = outer.mul(&lead_inv.pow(k as i32)?);
        valuation -= lo * k as i32;
        inverses.push((ratios, k));
    }
    Ok(Plan { valuation, outer, num, inverses })
}

/// `1 / (1 + Σ r_m s^m)` to `len` coefficients.
fn inverse_series(ratios: &[(usize, RationalFunction)], len: usize) -> Ser {
    let mut g: Ser = Vec::with_capacity(len);
    if len == 0 {
        return g;
    }
    g.push(RationalFunction::one());
    for n in 1..len {
        let ts: Vec<RationalFunction> = ratios.iter().filter(|(m, _)| *m <= n).filter(|(m, _)| !g[n - m].is_zero()).map(|(m, r)| r.mul(&g[n - m])).collect();
        g.push(RationalFunction::sum(ts.iter()).neg());
    }
    g
}

fn factor_series(p: &Plan, len: usize) -> Vec<Ser> {
    let mut out = vec![p.num.iter().take(len).cloned().collect::<Ser>()];
    for (ratios, k) in &p.inverses {
        let inv = inverse_series(ratios, len);
        for _ in 0..*k {
            out.push(inv.clone());
        }
    }
    out
}

/// Laurent expansion of `f` in `var` at the given end, exact through local exponent `order`.
pub fn expand_at(f: &RationalFunction, var: VarId, direction: Direction, order: i32) -> Result<LaurentSeries> {
    let p = plan(f, var, direction)?;
    let len = (order - p.valuation + 1).max(0) as usize;
    let mut coeffs: Ser = Vec::new();
    if len > 0 && !f.is_zero() {
        let parts = factor_series(&p, len);
        let mut acc = parts[0].clone();
        acc.resize(len, RationalFunction::zero());
        for s in &parts[1..] {
            acc = ser_mul(&acc, s, len);
        }
        coeffs = acc.iter().map(|c| c.mul(&p.outer)).collect();
    }
    Ok(LaurentSeries { var, direction, valuation: p.valuation, coeffs, order })
}

/// Only the coefficient of `var^d` in the expansion at one end.
pub fn coefficient_at(f: &RationalFunction, var: VarId, direction: Direction, d: i32) -> Result<RationalFunction> {
    if f.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let p = plan(f, var, direction)?;
    let n = direction.local(d) - p.valuation;
    if n < 0 {
        return Ok(RationalFunction::zero());
    }
    let len = n as usize + 1;
    let parts = factor_series(&p, len);
    let c = if parts.len() == 1 {
        parts[0].get(n as usize).cloned().unwrap_or_default()
    } else {
        let mut acc = parts[0].clone();
        acc.resize(len, RationalFunction::zero());
        for s in &parts[1..parts.len() - 1] {
            acc = ser_mul(&acc, s, len);
        }
        ser_coeff(&acc, parts.last().unwrap(), n as usize)
    };
    Ok(c.mul(&p.outer))
}

/// `[var^d]` at infinity minus `[var^d]` at zero.
pub fn delta_coefficient(f: &RationalFunction, var: VarId, d: i32) -> Result<RationalFunction> {
    if f.as_poly().is_some() || !f.contains_var(var) {
        return Ok(RationalFunction::zero());
    }
    let inf = coefficient_at(f, var, Direction::AtInfinity, d)?;
    let zero = coefficient_at(f, var, Direction::AtZero, d)?;
    Ok(inf.sub(&zero))
}

/// Delta coefficients for every exponent in `lo..=hi`, sharing the two expansions.
pub fn delta_coefficients(f: &RationalFunction, var: VarId, lo: i32, hi: i32) -> Result<Vec<RationalFunction>> {
    if f.as_poly().is_some() || !f.contains_var(var) {
        return Ok(vec![RationalFunction::zero(); (hi - lo + 1).max(0) as usize]);
    }
    let inf = expand_at(f, var, Direction::AtInfinity, -lo)?;
    let zero = expand_at(f, var, Direction::AtZero, hi)?;
    Ok((lo..=hi).map(|d| inf.coeff(d).sub(&zero.coeff(d))).collect())
}

/// Exact limit as `var` tends to zero or infinity; fails if the expansion has a pole there.
pub fn limit(f: &RationalFunction, var: VarId, direction: Direction) -> Result<RationalFunction> {
    let s = expand_at(f, var, direction, 0)?;
    for n in s.valuation..0 {
        if !s.local_coeff(n).is_zero() {
            return Err(KhaError::Divergent { var: var.to_string() });
        }
    }
    Ok(s.local_coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> VarId {
        VarId::aux("z").unwrap()
    }
    fn w() -> RationalFunction {
        RationalFunction::var(VarId::aux("w").unwrap())
    }
    fn geometric() -> RationalFunction {
        let one = RationalFunction::one();
        one.div(&one.sub(&RationalFunction::var(z()).div(&w()).unwrap())).unwrap()
    }

    #[test]
    fn geometric_both_ends() {
        let f = geometric();
        let s0 = expand_at(&f, z(), Direction::AtZero, 3).unwrap();
        for d in 0..=3 {
            assert!(s0.coeff(d).rf_eq(&w().pow(-d).unwrap()));
        }
        let si = expand_at(&f, z(), Direction::AtInfinity, 3).unwrap();
        assert!(si.coeff(0).is_zero());
        for d in 1..=3 {
            assert!(si.coeff(-d).rf_eq(&w().pow(d).unwrap().neg()));
        }
    }

    #[test]
    fn delta_of_geometric() {
        let f = geometric();
        assert!(delta_coefficient(&f, z(), 0).unwrap().rf_eq(&RationalFunction::int(-1)));
        assert!(delta_coefficient(&f, z(), -1).unwrap().rf_eq(&w().neg()));
        let all = delta_coefficients(&f, z(), -3, 3).unwrap();
        for (k, d) in (-3..=3).enumerate() {
            assert!(all[k].rf_eq(&delta_coefficient(&f, z(), d).unwrap()));
            assert!(all[k].rf_eq(&w().pow(-d).unwrap().neg()));
        }
    }

    #[test]
    fn limits() {
        let f = geometric();
        assert!(limit(&f, z(), Direction::AtZero).unwrap().is_one());
        assert!(limit(&f, z(), Direction::AtInfinity).unwrap().is_zero());
        let g = RationalFunction::var(z());
        assert!(limit(&g, z(), Direction::AtInfinity).is_err());
    }
}
