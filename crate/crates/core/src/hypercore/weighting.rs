use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Hypergraph;
use crate::error::{invalid, Result};
use crate::rational::{self, Rational};

/// Exact weight in `[0, 1]` for every vertex.
///
/// Used as a fractional vertex cover, as a storage allocation and as the
/// generator of a threshold hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexWeighting {
    #[serde(with = "rational::serde_str_vec")]
    weights: Vec<Rational>,
}

impl VertexWeighting {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some((v, w)) = weights.iter().enumerate().find(|(_, w)| !rational::in_unit_interval(w)) {
            return Err(invalid(format!(
                "weight of vertex {v} is {}, outside [0, 1]",
                rational::format(w)
            )));
        }
        Ok(VertexWeighting { weights })
    }

    pub fn uniform(n: usize, value: Rational) -> Result<Self> {
        Self::new(vec![value; n])
    }

    /// Indicator weighting of `set` on `n` vertices.
    pub fn indicator(n: usize, set: &[usize]) -> Result<Self> {
        let mut weights = vec![rational::zero(); n];
        for &v in set {
            if v >= n {
                return Err(invalid(format!("vertex {v} outside 0..{n}")));
            }
            weights[v] = rational::one();
        }
        Ok(VertexWeighting { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn sum_over(&self, set: &[usize]) -> Rational {
        set.iter().fold(Rational::zero(), |acc, &v| acc + &self.weights[v])
    }

    /// True when every edge of `h` has weight sum at least one.
    pub fn covers(&self, h: &Hypergraph) -> bool {
        self.len() == h.n() && h.edges().iter().all(|e| self.sum_over(e) >= rational::one())
    }
}

/// Exact weight in `[0, 1]` for every edge of an associated hypergraph,
/// aligned with its canonical edge order, with vertex loads at most one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeWeighting {
    #[serde(with = "rational::serde_str_vec")]
    weights: Vec<Rational>,
}

impl EdgeWeighting {
    pub fn new(h: &Hypergraph, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != h.edge_count() {
            return Err(invalid(format!(
                "{} edge weights for {} edges",
                weights.len(),
                h.edge_count()
            )));
        }
        if weights.iter().any(|w| !rational::in_unit_interval(w)) {
            return Err(invalid("edge weight outside [0, 1]"));
        }
        let ew = EdgeWeighting { weights };
        if let Some((v, load)) = ew.vertex_loads(h).into_iter().enumerate().find(|(_, l)| *l > rational::one()) {
            return Err(invalid(format!(
                "vertex {v} carries load {} > 1",
                rational::format(&load)
            )));
        }
        Ok(ew)
    }

    pub fn zeros(h: &Hypergraph) -> Self {
        EdgeWeighting { weights: vec![Rational::zero(); h.edge_count()] }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn vertex_loads(&self, h: &Hypergraph) -> Vec<Rational> {
        let mut loads = vec![Rational::zero(); h.n()];
        for (e, w) in h.edges().iter().zip(&self.weights) {
            if w.is_zero() {
                continue;
            }
            for &v in e {
                loads[v] += w;
            }
        }
        loads
    }

    /// Every vertex load equals one.
    pub fn is_perfect(&self, h: &Hypergraph) -> bool {
        self.vertex_loads(h).iter().all(|l| *l == rational::one())
    }
}
