//! The shuffle algebra: symmetric rational functions in `z[i,a]` with the
//! ζ-kernel product.

use crate::arith::{RationalFunction, VarId, Q};
use crate::error::{KhaError, Result};
use crate::quiver::{DimVector, Quiver};
use itertools::Itertools;
use rayon::prelude::*;

/// Largest number of variables per vertex handled by symmetrization.
pub const MAX_DEGREE_PER_VERTEX: i64 = 4;

#[derive(Clone, Debug)]
pub struct ShuffleElement {
    pub degree: DimVector,
    pub value: RationalFunction,
}

impl PartialEq for ShuffleElement {
    fn eq(&self, o: &Self) -> bool {
        self.degree == o.degree && self.value.rf_eq(&o.value)
    }
}

impl ShuffleElement {
    pub fn unit(n_vertices: usize) -> ShuffleElement {
        ShuffleElement { degree: DimVector(vec![0; n_vertices]), value: RationalFunction::one() }
    }

    pub fn new(degree: DimVector, value: RationalFunction) -> Result<ShuffleElement> {
        check_degree(&degree)?;
        for v in value.vars() {
            match v.kind() {
                crate::arith::VarKind::Z(i, a) => {
                    if i as usize >= degree.len() || a as i64 > degree[i as usize] {
                        return Err(KhaError::Config(format!("variable {v} outside degree {degree}")));
                    }
                }
                crate::arith::VarKind::U(..) | crate::arith::VarKind::X(..) | crate::arith::VarKind::Aux(_) => {
                    return Err(KhaError::Config(format!("unexpected variable {v} in a shuffle element")));
                }
                _ => {}
            }
        }
        Ok(ShuffleElement { degree, value })
    }

    pub fn is_laurent(&self) -> bool {
        self.value.as_poly().is_some()
    }

    /// Invariance under every adjacent transposition inside each vertex block.
    pub fn is_symmetric(&self) -> bool {
        self.degree.iter().enumerate().all(|(i, &n)| {
            (1..n as usize).all(|a| {
                let swapped = self.value.rename(&[(VarId::z(i, a), VarId::z(i, a + 1)), (VarId::z(i, a + 1), VarId::z(i, a))]);
                swapped.rf_eq(&self.value)
            })
        })
    }
}

fn check_degree(n: &[i64]) -> Result<()> {
    if n.iter().any(|&k| k < 0) {
        return Err(KhaError::Config("negative shuffle degree".into()));
    }
    if n.iter().any(|&k| k > MAX_DEGREE_PER_VERTEX) {
        return Err(KhaError::OutOfRange(format!("shuffle degree {} exceeds {MAX_DEGREE_PER_VERTEX} per vertex", DimVector(n.to_vec()))));
    }
    Ok(())
}

/// Every element of `S(n_1) × … × S(n_k)` as a renaming of the `z` variables.
fn block_permutations(n: &[i64]) -> Vec<Vec<(VarId, VarId)>> {
    n.iter()
        .enumerate()
        .map(|(i, &k)| (1..=k as usize).permutations(k as usize).map(move |p| p.into_iter().enumerate().map(move |(a, b)| (VarId::z(i, a + 1), VarId::z(i, b))).collect::<Vec<_>>()))
        .multi_cartesian_product()
        .map(|parts| parts.concat())
        .collect()
}

/// Sum of `f` over all permutations within each vertex block (no prefactor).
pub fn symmetrize(f: &RationalFunction, n: &DimVector) -> Result<ShuffleElement> {
    check_degree(n)?;
    let perms = block_permutations(n);
    let terms: Vec<RationalFunction> = perms.par_iter().map(|p| f.rename(p)).collect();
    ShuffleElement::new(n.clone(), RationalFunction::sum(terms.iter()))
}

pub fn generator(q: &Quiver, i: usize, d: i32) -> ShuffleElement {
    ShuffleElement { degree: q.unit(i), value: RationalFunction::var_pow(VarId::z(i, 1), d) }
}

fn z(i: usize, a: usize) -> RationalFunction {
    RationalFunction::var(VarId::z(i, a))
}

/// `ζ_{ji}(z_b / z_a)` for `z_a` at vertex `i` and `z_b` at vertex `j`.
fn kernel(q: &Quiver, i: usize, a: usize, j: usize, b: usize) -> RationalFunction {
    q.zeta(j, i, &z(j, b).div(&z(i, a)).unwrap())
}

/// `R * R'`: `Sym[R(z_first) R'(z_rest) Π ζ] / (n! n'!)`.
///
/// For symmetric inputs this equals the sum over shuffles (which slots the first
/// factor occupies), which is how it is evaluated.
pub fn shuffle_mul(q: &Quiver, r: &ShuffleElement, s: &ShuffleElement) -> Result<ShuffleElement> {
    let n = &r.degree;
    let m = &s.degree;
    let total = n.add(m);
    check_degree(&total)?;
    let per_vertex: Vec<Vec<Vec<usize>>> = (0..q.n_vertices()).map(|i| (1..=total[i] as usize).combinations(n[i] as usize).collect()).collect();
    let choices: Vec<Vec<Vec<usize>>> = per_vertex.into_iter().multi_cartesian_product().collect();
    let terms: Vec<RationalFunction> = choices
        .par_iter()
        .map(|choice| {
            let mut first_map = Vec::new();
            let mut second_map = Vec::new();
            let mut firsts: Vec<(usize, usize)> = Vec::new();
            let mut seconds: Vec<(usize, usize)> = Vec::new();
            for i in 0..q.n_vertices() {
                let a_slots = &choice[i];
                let b_slots: Vec<usize> = (1..=total[i] as usize).filter(|x| !a_slots.contains(x)).collect();
                for (k, &a) in a_slots.iter().enumerate() {
                    first_map.push((VarId::z(i, k + 1), VarId::z(i, a)));
                    firsts.push((i, a));
                }
                for (k, &b) in b_slots.iter().enumerate() {
                    second_map.push((VarId::z(i, k + 1), VarId::z(i, b)));
                    seconds.push((i, b));
                }
            }
            let mut t = r.value.rename(&first_map).mul(&s.value.rename(&second_map));
            for &(i, a) in &firsts {
                for &(j, b) in &seconds {
                    t = t.mul(&kernel(q, i, a, j, b));
                }
            }
            t
        })
        .collect();
    let value = RationalFunction::sum(terms.iter());
    if r.is_laurent() && s.is_laurent() && value.as_poly().is_none() {
        return Err(KhaError::Integrity(format!("shuffle product in degree {total} failed to cancel its denominator")));
    }
    Ok(ShuffleElement { degree: total, value })
}

/// Slot of each letter: the k-th occurrence of vertex `i` gets slot `k`.
pub fn word_slots(word: &[(usize, i32)]) -> Vec<usize> {
    let mut seen = std::collections::HashMap::new();
    word.iter()
        .map(|(i, _)| {
            let c = seen.entry(*i).or_insert(0usize);
            *c += 1;
            *c
        })
        .collect()
}

/// Image of `f_{i_1,d_1} ⋯ f_{i_n,d_n}`: `Sym[Π z^{d_k} Π_{k<l} ζ_{i_l i_k}(z_l/z_k)]`.
pub fn word_to_shuffle(q: &Quiver, word: &[(usize, i32)]) -> Result<ShuffleElement> {
    let mut degree = q.zeros();
    for (i, _) in word {
        if *i >= q.n_vertices() {
            return Err(KhaError::Config(format!("vertex {} out of range", i + 1)));
        }
        degree.0[*i] += 1;
    }
    let slots = word_slots(word);
    let mut f = RationalFunction::one();
    for (k, (i, d)) in word.iter().enumerate() {
        f = f.mul(&RationalFunction::var_pow(VarId::z(*i, slots[k]), *d));
    }
    for k in 0..word.len() {
        for l in k + 1..word.len() {
            f = f.mul(&kernel(q, word[k].0, slots[k], word[l].0, slots[l]));
        }
    }
    symmetrize(&f, &degree)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WheelVerdict {
    Pass { specializations: usize },
    /// No admissible triple exists in this degree.
    Vacuous,
    Fail { specialization: String },
}

impl WheelVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, WheelVerdict::Fail { .. })
    }
}

/// All wheel specializations for the element's degree, as monomial bindings with a description.
pub fn wheel_specializations(q: &Quiver, degree: &[i64]) -> Vec<(String, Vec<(VarId, RationalFunction)>)> {
    let qq = || RationalFunction::qh_pow(2);
    let mut out = Vec::new();
    for (e, edge) in q.edges().iter().enumerate() {
        let (i, j) = (edge.src, edge.dst);
        let t = q.t(e);
        // z[i,a] = q z[j,b] / t = q z[i,c]
        for a in 1..=degree[i] as usize {
            for c in 1..=degree[i] as usize {
                for b in 1..=degree[j] as usize {
                    if a == c || (i == j && (b == a || b == c)) {
                        continue;
                    }
                    let desc = format!("{} = q*{}/{} = q*{}", VarId::z(i, a), VarId::z(j, b), VarId::t(e), VarId::z(i, c));
                    let zc = z(i, c);
                    out.push((desc, vec![(VarId::z(i, a), qq().mul(&zc)), (VarId::z(j, b), t.mul(&zc))]));
                }
            }
        }
        // z[j,a] = t z[i,b] = q z[j,c]
        for a in 1..=degree[j] as usize {
            for c in 1..=degree[j] as usize {
                for b in 1..=degree[i] as usize {
                    if a == c || (i == j && (b == a || b == c)) {
                        continue;
                    }
                    let desc = format!("{} = {}*{} = q*{}", VarId::z(j, a), VarId::t(e), VarId::z(i, b), VarId::z(j, c));
                    let zc = z(j, c);
                    out.push((desc, vec![(VarId::z(j, a), qq().mul(&zc)), (VarId::z(i, b), qq().div(&t).unwrap().mul(&zc))]));
                }
            }
        }
    }
    out
}

/// Vanishing on every wheel specialization.
pub fn wheel_check(q: &Quiver, r: &ShuffleElement) -> Result<WheelVerdict> {
    let specs = wheel_specializations(q, &r.degree);
    if specs.is_empty() {
        return Ok(WheelVerdict::Vacuous);
    }
    let results: Vec<Result<bool>> = specs.par_iter().map(|(_, b)| r.value.substitute(b).map(|v| v.is_zero())).collect();
    for ((desc, _), res) in specs.iter().zip(results) {
        if !res? {
            return Ok(WheelVerdict::Fail { specialization: desc.clone() });
        }
    }
    Ok(WheelVerdict::Pass { specializations: specs.len() })
}

/// Evaluate `R` at `z[i,k] ↦ values[i][k-1]`.
pub fn evaluate(r: &ShuffleElement, values: &[Vec<RationalFunction>]) -> Result<RationalFunction> {
    let mut b = Vec::new();
    for (i, vs) in values.iter().enumerate() {
        for (k, v) in vs.iter().enumerate() {
            b.push((VarId::z(i, k + 1), v.clone()));
        }
    }
    r.value.substitute(&b)
}

/// `n! = Π n_i!` as a coefficient.
pub fn degree_factorial(n: &[i64]) -> Q {
    let mut acc = Q::ONE;
    for &k in n {
        for m in 2..=k {
            acc = acc.mul(&Q::from_int(m));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rf;

    #[test]
    fn symmetrize_examples() {
        let n = DimVector(vec![2]);
        let s = symmetrize(&parse_rf("z[1,1]").unwrap(), &n).unwrap();
        assert!(s.value.rf_eq(&parse_rf("z[1,1] + z[1,2]").unwrap()));
        let s = symmetrize(&parse_rf("z[1,1]/z[1,2]").unwrap(), &n).unwrap();
        assert!(s.value.rf_eq(&parse_rf("z[1,1]/z[1,2] + z[1,2]/z[1,1]").unwrap()));
        let s = symmetrize(&parse_rf("z[1,1]*z[1,2]").unwrap(), &n).unwrap();
        assert!(s.value.rf_eq(&parse_rf("2*z[1,1]*z[1,2]").unwrap()));
        assert!(s.is_symmetric());
    }

    #[test]
    fn a1_square_of_generator() {
        let q = Quiver::a1();
        let g = generator(&q, 0, 0);
        let p = shuffle_mul(&q, &g, &g).unwrap();
        assert_eq!(p.degree.0, vec![2]);
        assert_eq!(p.value.to_string(), "qh^1 + qh^-1");
        let w = word_to_shuffle(&q, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(w, p);
    }

    #[test]
    fn unit_is_neutral() {
        let q = Quiver::a2();
        let g = word_to_shuffle(&q, &[(0, 1), (1, -1)]).unwrap();
        let u = ShuffleElement::unit(2);
        assert_eq!(shuffle_mul(&q, &g, &u).unwrap(), g);
        assert_eq!(shuffle_mul(&q, &u, &g).unwrap(), g);
    }

    #[test]
    fn wheel_examples() {
        let j = Quiver::jordan();
        let w = word_to_shuffle(&j, &[(0, 0), (0, 0), (0, 0)]).unwrap();
        assert!(matches!(wheel_check(&j, &w).unwrap(), WheelVerdict::Pass { .. }));
        let g = generator(&j, 0, 2);
        assert_eq!(wheel_check(&j, &g).unwrap(), WheelVerdict::Vacuous);
        let one = ShuffleElement::new(DimVector(vec![3]), RationalFunction::one()).unwrap();
        assert!(matches!(wheel_check(&j, &one).unwrap(), WheelVerdict::Fail { .. }));
    }

    #[test]
    fn degree_cap() {
        let q = Quiver::a1();
        let w = word_to_shuffle(&q, &[(0, 0), (0, 0), (0, 0)]).unwrap();
        assert!(matches!(shuffle_mul(&q, &w, &w), Err(KhaError::OutOfRange(_))));
    }
}
