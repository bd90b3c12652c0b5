//! Quivers, dimension vectors, the bilinear forms and the ζ-kernel.

use crate::arith::{RationalFunction, VarId};
use crate::error::{KhaError, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::ops::Deref;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDesc {
    pub src: String,
    pub dst: String,
    pub id: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDesc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDesc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
}

/// A finite quiver. Vertices and edges are addressed by position; the string
/// ids are kept for serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_ids: Vec<String>,
    edge_ids: Vec<String>,
    edges: Vec<Edge>,
}

impl Quiver {
    pub fn from_desc(desc: &QuiverDesc) -> Result<Quiver> {
        if desc.vertices.is_empty() {
            return Err(KhaError::Config("`vertices` must be non-empty".into()));
        }
        let mut seen = HashSet::new();
        for v in &desc.vertices {
            if !seen.insert(v.as_str()) {
                return Err(KhaError::Config(format!("duplicate vertex id `{v}`")));
            }
        }
        let pos = |id: &str, k: usize, field: &str| {
            desc.vertices
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| KhaError::Config(format!("edges[{k}].{field}: undeclared vertex `{id}`")))
        };
        let mut ids = HashSet::new();
        let mut edges = Vec::new();
        for (k, e) in desc.edges.iter().enumerate() {
            if !ids.insert(e.id.as_str()) {
                return Err(KhaError::Config(format!("edges[{k}].id: duplicate edge id `{}`", e.id)));
            }
            edges.push(Edge { src: pos(&e.src, k, "src")?, dst: pos(&e.dst, k, "dst")? });
        }
        Ok(Quiver { vertex_ids: desc.vertices.clone(), edge_ids: desc.edges.iter().map(|e| e.id.clone()).collect(), edges })
    }

    pub fn from_json(text: &str) -> Result<Quiver> {
        let desc: QuiverDesc = serde_json::from_str(text).map_err(|e| KhaError::Config(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        Self::from_desc(&desc)
    }

    pub fn to_desc(&self) -> QuiverDesc {
        QuiverDesc {
            vertices: self.vertex_ids.clone(),
            edges: self
                .edges
                .iter()
                .zip(&self.edge_ids)
                .map(|(e, id)| EdgeDesc { src: self.vertex_ids[e.src].clone(), dst: self.vertex_ids[e.dst].clone(), id: id.clone() })
                .collect(),
        }
    }

    /// One vertex, no edges.
    pub fn a1() -> Quiver {
        Self::build(&["1"], &[])
    }

    /// Two vertices, one edge `1 → 2`.
    pub fn a2() -> Quiver {
        Self::build(&["1", "2"], &[(0, 1)])
    }

    /// One vertex with one loop.
    pub fn jordan() -> Quiver {
        Self::build(&["1"], &[(0, 0)])
    }

    pub fn build(vertices: &[&str], edges: &[(usize, usize)]) -> Quiver {
        Quiver {
            vertex_ids: vertices.iter().map(|s| s.to_string()).collect(),
            edge_ids: (1..=edges.len()).map(|k| format!("e{k}")).collect(),
            edges: edges.iter().map(|&(src, dst)| Edge { src, dst }).collect(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_edge_free(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges `i → j` with their positions.
    pub fn edges_between(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.src == i && e.dst == j).map(|(k, _)| k)
    }

    pub fn out_edges(&self, i: usize) -> impl Iterator<Item = (usize, Edge)> + '_ {
        self.edges.iter().copied().enumerate().filter(move |(_, e)| e.src == i)
    }

    pub fn in_edges(&self, i: usize) -> impl Iterator<Item = (usize, Edge)> + '_ {
        self.edges.iter().copied().enumerate().filter(move |(_, e)| e.dst == i)
    }

    pub fn loops(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges_between(i, i)
    }

    pub fn t(&self, edge: usize) -> RationalFunction {
        RationalFunction::var(VarId::t(edge))
    }

    pub fn zeros(&self) -> DimVector {
        DimVector(vec![0; self.n_vertices()])
    }

    pub fn unit(&self, i: usize) -> DimVector {
        let mut v = self.zeros();
        v.0[i] = 1;
        v
    }

    pub fn dot(&self, v: &[i64], w: &[i64]) -> i64 {
        v.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    /// `⟨v,w⟩ = v·w − Σ_{e: i→j} v_i w_j`.
    pub fn euler_form(&self, v: &[i64], w: &[i64]) -> i64 {
        self.dot(v, w) - self.edges.iter().map(|e| v[e.src] * w[e.dst]).sum::<i64>()
    }

    pub fn sym_form(&self, v: &[i64], w: &[i64]) -> i64 {
        self.euler_form(v, w) + self.euler_form(w, v)
    }

    pub fn dim_nakajima(&self, v: &[i64], w: &[i64]) -> i64 {
        2 * self.dot(w, v) - self.sym_form(v, v)
    }

    /// Exponent of `qh` in the eigenvalue of `h_{i,0}` on the `(v,w)` sector.
    pub fn h0_exponent(&self, i: usize, v: &[i64], w: &[i64]) -> i64 {
        w[i] - self.sym_form(v, &self.unit(i))
    }

    /// `ζ_{ij}(x)`.
    pub fn zeta(&self, i: usize, j: usize, x: &RationalFunction) -> RationalFunction {
        let one = RationalFunction::one();
        let qh = RationalFunction::qh_pow(1);
        let q = RationalFunction::qh_pow(2);
        let mut acc = one.clone();
        if i == j {
            let num = x.sub(&q);
            let den = qh.mul(&x.sub(&one));
            acc = num.div(&den).expect("ζ evaluated at x = 1");
        }
        for e in self.edges_between(i, j) {
            let xt = x.mul(&self.t(e));
            acc = acc.mul(&qh.mul(&one.sub(&xt.inv().expect("ζ evaluated at x = 0"))));
        }
        for e in self.edges_between(j, i) {
            acc = acc.mul(&one.sub(&q.mul(x).div(&self.t(e)).unwrap()));
        }
        acc
    }

    /// `γ_i = Π_{loops}[(qh − t qh⁻¹)(1 − t)] / (qh − qh⁻¹)`.
    pub fn gamma(&self, i: usize) -> RationalFunction {
        let one = RationalFunction::one();
        let qh = RationalFunction::qh_pow(1);
        let qhi = RationalFunction::qh_pow(-1);
        let mut num = one.clone();
        for e in self.loops(i) {
            let t = self.t(e);
            num = num.mul(&qh.sub(&t.mul(&qhi)).mul(&one.sub(&t)));
        }
        num.div(&qh.sub(&qhi)).unwrap()
    }

    /// `σ_i = Π_{loops}(1 − t)(1 − q/t)`.
    pub fn sigma(&self, i: usize) -> RationalFunction {
        let one = RationalFunction::one();
        let q = RationalFunction::qh_pow(2);
        let mut acc = one.clone();
        for e in self.loops(i) {
            let t = self.t(e);
            acc = acc.mul(&one.sub(&t)).mul(&one.sub(&q.div(&t).unwrap()));
        }
        acc
    }
}

/// Integer vector indexed by vertex position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn add(&self, o: &[i64]) -> DimVector {
        DimVector(self.0.iter().zip(o).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &[i64]) -> DimVector {
        DimVector(self.0.iter().zip(o).map(|(a, b)| a - b).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| *x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0)
    }

    /// Parse `"1,2"`.
    pub fn parse(s: &str) -> Result<DimVector> {
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| KhaError::Config(format!("bad vector entry `{t}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }

    /// All vectors `0 ≤ v ≤ bound` componentwise, in lexicographic order.
    pub fn box_below(bound: &[i64]) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &b in bound {
            out = out.into_iter().flat_map(|p: Vec<i64>| (0..=b.max(-1)).map(move |x| [p.clone(), vec![x]].concat())).collect();
        }
        out.into_iter().map(DimVector).collect()
    }
}

impl Deref for DimVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl std::fmt::Display for DimVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rf;

    #[test]
    fn forms() {
        let a2 = Quiver::a2();
        assert_eq!(a2.euler_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(a2.euler_form(&[0, 1], &[1, 0]), 0);
        assert_eq!(a2.sym_form(&[1, 0], &[0, 1]), -1);
        let j = Quiver::jordan();
        assert_eq!(j.sym_form(&[3], &[3]), 0);
        assert_eq!(j.dim_nakajima(&[2], &[1]), 4);
        assert_eq!(Quiver::a1().dim_nakajima(&[1], &[3]), 4);
        assert_eq!(a2.dot(&[1, 2], &[3, 4]), 11);
    }

    #[test]
    fn zeta_kernels() {
        let x = RationalFunction::var(VarId::aux("x").unwrap());
        let a1 = Quiver::a1();
        assert!(a1.zeta(0, 0, &x).rf_eq(&parse_rf("(x - qh^2) / (qh*(x - 1))").unwrap()));
        let j = Quiver::jordan();
        assert!(j.zeta(0, 0, &x).rf_eq(&parse_rf("(x - qh^2)*(1 - 1/(x*t[1]))*(1 - qh^2*x/t[1]) / (x - 1)").unwrap()));
        let a2 = Quiver::a2();
        assert!(a2.zeta(0, 1, &x).rf_eq(&parse_rf("qh*(1 - 1/(x*t[1]))").unwrap()));
        assert!(a2.zeta(1, 0, &x).rf_eq(&parse_rf("1 - qh^2*x/t[1]").unwrap()));
        assert!(j.gamma(0).rf_eq(&parse_rf("(qh - t[1]/qh)*(1 - t[1]) / (qh - 1/qh)").unwrap()));
        assert!(a1.gamma(0).rf_eq(&parse_rf("1/(qh - qh^-1)").unwrap()));
        assert!(a1.sigma(0).is_one());
    }

    #[test]
    fn config_validation() {
        let q = Quiver::from_json(r#"{"vertices":["1","2"],"edges":[{"src":"1","dst":"2","id":"a"}]}"#).unwrap();
        assert_eq!(q, Quiver::from_desc(&q.to_desc()).unwrap());
        assert_eq!(q.edges().len(), 1);
        let j = Quiver::from_json(r#"{"vertices":["1"],"edges":[{"src":"1","dst":"1","id":"l"}]}"#).unwrap();
        assert_eq!(j.loops(0).count(), 1);
        let err = Quiver::from_json(r#"{"vertices":["1"],"edges":[{"src":"1","dst":"9","id":"a"}]}"#).unwrap_err();
        assert!(err.to_string().contains("edges[0].dst"));
        assert!(Quiver::from_json(r#"{"vertices":["1"],"edges":[{"src":"1"}]}"#).is_err());
    }

    #[test]
    fn boxes() {
        assert_eq!(DimVector::box_below(&[1, 2]).len(), 6);
        assert_eq!(DimVector::parse("1, 2").unwrap().0, vec![1, 2]);
    }
}
