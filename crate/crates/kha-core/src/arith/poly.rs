//! Sparse multivariate Laurent polynomials over ℚ.

use super::coeff::Q;
use super::var::VarId;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Laurent monomial: nonzero exponents sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(SmallVec<[(VarId, i32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId, e: i32) -> Monomial {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i32)>) -> Monomial {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn exp(&self, v: VarId) -> i32 {
        match self.0.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(k) => self.0[k].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        if o.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return o.clone();
        }
        let mut out = SmallVec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, b) = (self.0[i], o.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    if a.1 + b.1 != 0 {
                        out.push((a.0, a.1 + b.1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Drop one variable.
    pub fn without(&self, v: VarId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect())
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|p| p.1 < 0)
    }

    /// Componentwise min against the current accumulator (used for shifting to a polynomial).
    fn min_with(acc: &mut BTreeMap<VarId, i32>, m: &Monomial, first: bool) {
        if first {
            for &(v, e) in m.0.iter() {
                acc.insert(v, e);
            }
            return;
        }
        for (v, e) in acc.iter_mut() {
            *e = (*e).min(m.exp(*v));
        }
        for &(v, e) in m.0.iter() {
            acc.entry(v).or_insert(0);
            let slot = acc.get_mut(&v).unwrap();
            *slot = (*slot).min(e);
        }
    }

    /// True when every exponent of `self` is at least the one in `o`.
    pub fn divisible_by(&self, o: &Monomial) -> bool {
        o.0.iter().all(|&(v, e)| self.exp(v) >= e)
    }
}

impl Ord for Monomial {
    /// Lexicographic with the smallest variable most significant.
    fn cmp(&self, o: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(a), None) => return a.1.cmp(&0),
                (None, Some(b)) => return 0.cmp(&b.1),
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => return a.1.cmp(&0),
                    Ordering::Greater => return 0.cmp(&b.1),
                    Ordering::Equal => {
                        if a.1 != b.1 {
                            return a.1.cmp(&b.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Monomial) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Terms sorted by descending monomial order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Q)>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> LaurentPoly {
        Self::constant(Q::ONE)
    }

    pub fn constant(c: Q) -> LaurentPoly {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> LaurentPoly {
        Self::constant(Q::from_int(n))
    }

    pub fn term(c: Q, m: Monomial) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: vec![(m, c)] }
    }

    pub fn monomial(m: Monomial) -> LaurentPoly {
        Self::term(Q::ONE, m)
    }

    pub fn var(v: VarId) -> LaurentPoly {
        Self::monomial(Monomial::var(v, 1))
    }

    pub fn var_pow(v: VarId, e: i32) -> LaurentPoly {
        Self::monomial(Monomial::var(v, e))
    }

    /// Build from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Q)>) -> LaurentPoly {
        let mut map: FxHashMap<Monomial, Q> = FxHashMap::default();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(slot) => *slot = slot.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: FxHashMap<Monomial, Q>) -> LaurentPoly {
        let mut terms: Vec<(Monomial, Q)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms }
    }

    /// Terms must already be strictly descending and nonzero.
    fn from_sorted(terms: Vec<(Monomial, Q)>) -> LaurentPoly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The single term, if this is `c·m`.
    pub fn as_term(&self) -> Option<(&Monomial, &Q)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Q)> {
        self.terms.first()
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.iter().flat_map(|t| t.0.iter().map(|p| p.0)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) != 0)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &Q) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect() }
    }

    /// Multiply by `c·m`; monomial shifts preserve the term order.
    pub fn mul_term(&self, c: &Q, m: &Monomial) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect() }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.merge(o, true)
    }

    fn merge(&self, o: &LaurentPoly, negate: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let sgn = |c: &Q| if negate { c.neg() } else { c.clone() };
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match a.0.cmp(&b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), sgn(&b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a.1.sub(&b.1) } else { a.1.add(&b.1) };
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (m.clone(), sgn(c))));
        LaurentPoly::from_sorted(out)
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = o.as_term() {
            return self.mul_term(c, m);
        }
        if let Some((m, c)) = self.as_term() {
            return o.mul_term(c, m);
        }
        let (small, large) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut map: FxHashMap<Monomial, Q> = FxHashMap::default();
        map.reserve(large.len() * 2);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match map.get_mut(&m) {
                    Some(slot) => *slot = slot.add(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(map)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn product<'a>(it: impl IntoIterator<Item = &'a LaurentPoly>) -> LaurentPoly {
        let mut acc = Self::one();
        for p in it {
            acc = acc.mul(p);
        }
        acc
    }

    pub fn sum<'a>(it: impl IntoIterator<Item = &'a LaurentPoly>) -> LaurentPoly {
        Self::from_terms(it.into_iter().flat_map(|p| p.terms.iter().cloned()))
    }

    /// Monomial `m` with `self / m` a polynomial having no monomial factor.
    pub fn min_monomial(&self) -> Monomial {
        let mut acc: BTreeMap<VarId, i32> = BTreeMap::new();
        for (k, (m, _)) in self.terms.iter().enumerate() {
            Monomial::min_with(&mut acc, m, k == 0);
        }
        Monomial::from_pairs(acc)
    }

    /// Write `self = c · m · p` with `p` primitive: integer coefficients with gcd 1,
    /// nonnegative exponents with no monomial factor, positive leading coefficient.
    pub fn primitive_decomposition(&self) -> (Q, Monomial, LaurentPoly) {
        if self.is_zero() {
            return (Q::ZERO, Monomial::one(), Self::zero());
        }
        let m = self.min_monomial();
        let mut c = Q::content_of(self.terms.iter().map(|t| &t.1));
        if self.terms[0].1.signum() < 0 {
            c = c.neg();
        }
        let inv_m = m.inv();
        let inv_c = c.recip();
        let p = LaurentPoly { terms: self.terms.iter().map(|(n, d)| (n.mul(&inv_m), d.mul(&inv_c))).collect() };
        (c, m, p)
    }

    /// Exponent range of `v` over all terms.
    pub fn degree_range(&self, v: VarId) -> Option<(i32, i32)> {
        let mut it = self.terms.iter().map(|t| t.0.exp(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Coefficients with respect to `v` (the remaining variables stay in each coefficient).
    pub fn coefficients_in(&self, v: VarId) -> BTreeMap<i32, LaurentPoly> {
        let mut groups: BTreeMap<i32, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.exp(v)).or_default().push((m.without(v), c.clone()));
        }
        // Removing one variable from a descending list keeps each group descending.
        groups.into_iter().map(|(e, ts)| (e, LaurentPoly::from_sorted(ts))).collect()
    }

    /// Substitute monomial images `v ↦ c·m` for the variables in `map`.
    pub fn substitute_monomials(&self, map: &[(VarId, Q, Monomial)]) -> LaurentPoly {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut mono = Monomial::one();
            for (v, e) in m.iter() {
                match map.iter().find(|b| b.0 == v) {
                    Some((_, bc, bm)) => {
                        coeff = coeff.mul(&bc.pow(e));
                        mono = mono.mul(&bm.pow(e));
                    }
                    None => mono = mono.mul(&Monomial::var(v, e)),
                }
            }
            (mono, coeff)
        }))
    }

    /// Exact quotient `self / g` in the Laurent ring, if it exists.
    ///
    /// `g` must be a polynomial without monomial factor (as produced by
    /// [`primitive_decomposition`](Self::primitive_decomposition)).
    pub fn try_div(&self, g: &LaurentPoly) -> Option<LaurentPoly> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((m, c)) = g.as_term() {
            return Some(self.mul_term(&c.recip(), &m.inv()));
        }
        let shift = self.min_monomial();
        let f = self.mul_term(&Q::ONE, &shift.inv());
        let (lm, lc) = g.leading().cloned().unwrap();
        let inv_lc = lc.recip();
        let mut rem: BTreeMap<Monomial, Q> = f.terms.into_iter().collect();
        let mut quot: Vec<(Monomial, Q)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !m.divisible_by(&lm) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c.mul(&inv_lc);
            for (gm, gc) in g.terms.iter().skip(1) {
                let tm = gm.mul(&qm);
                let tc = gc.mul(&qc).neg();
                match rem.get_mut(&tm) {
                    Some(slot) => {
                        *slot = slot.add(&tc);
                        if slot.is_zero() {
                            rem.remove(&tm);
                        }
                    }
                    None => {
                        rem.insert(tm, tc);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(LaurentPoly::from_sorted(quot).mul_term(&Q::ONE, &shift))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Q) -> Q) -> LaurentPoly {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentPoly {
        LaurentPoly::var(VarId::aux("x").unwrap())
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(VarId::aux("y").unwrap())
    }

    #[test]
    fn lex_order_qh_first() {
        let qh2 = Monomial::var(VarId::QH, 2);
        let u = Monomial::var(VarId::u(0, 1), 1);
        assert!(qh2 > u);
        assert!(Monomial::var(VarId::QH, 1) > Monomial::one());
        assert!(Monomial::one() > Monomial::var(VarId::QH, -1));
    }

    #[test]
    fn exact_division() {
        let one = LaurentPoly::one();
        let f = x().mul(&x()).sub(&one);
        let g = x().sub(&one);
        assert_eq!(f.try_div(&g).unwrap(), x().add(&one));
        assert!(f.try_div(&y().sub(&one)).is_none());
        // Laurent dividend
        let xinv = LaurentPoly::var_pow(VarId::aux("x").unwrap(), -3);
        let h = f.mul(&xinv);
        assert_eq!(h.try_div(&g).unwrap(), x().add(&one).mul(&xinv));
    }

    #[test]
    fn primitive_parts() {
        let p = x().scale(&Q::from_int(-4)).add(&LaurentPoly::int(6)).mul(&LaurentPoly::var_pow(VarId::QH, -1));
        let (c, m, prim) = p.primitive_decomposition();
        assert_eq!(c, Q::from_int(-2));
        assert_eq!(m, Monomial::var(VarId::QH, -1));
        assert_eq!(prim, x().scale(&Q::from_int(2)).sub(&LaurentPoly::int(3)));
    }
}
