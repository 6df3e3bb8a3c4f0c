use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{good_vertex_set, LabeledGraph};
use crate::error::{Error, Result};
use crate::monoid::MonoidHandle;

/// Outcome of the bicyclic halving check on a finite `{p,q}`-graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalvingReport {
    pub r: usize,
    pub vertex_count: usize,
    pub good: Vec<String>,
    /// `(v, v')` with `v'` the `p`-successor of the good vertex `v`.
    pub successors: Vec<(String, String)>,
    /// No `p`-successor of a good vertex is good.
    pub successors_outside: bool,
    pub injective: bool,
    /// `2|V(r)| ≤ |V|`.
    pub halving: bool,
    pub counterexamples: Vec<String>,
    pub pass: bool,
}

/// Computes `V(r)` against the bicyclic monoid and checks that `v ↦ v'`
/// (following the `p`-edge) maps `V(r)` injectively outside `V(r)`, which
/// forces `|V(r)| ≤ |V|/2`.
pub fn bicyclic_halving_check(g: &LabeledGraph, r: usize) -> Result<HalvingReport> {
    if r < 2 {
        return Err(Error::Argument(format!("halving check needs r >= 2, got {r}")));
    }
    let p = g
        .label_index("p")
        .ok_or_else(|| Error::Argument("graph has no label `p`".into()))?;
    let good = good_vertex_set(g, &MonoidHandle::bicyclic(), r)?;
    let mut is_good = vec![false; g.vertex_count()];
    for &v in &good {
        is_good[v] = true;
    }
    let id = |v: usize| g.vertices()[v].clone();
    let mut counterexamples = Vec::new();
    let mut successors = Vec::with_capacity(good.len());
    let mut preimage: BTreeMap<usize, usize> = BTreeMap::new();
    let (mut outside, mut injective) = (true, true);
    for &v in &good {
        let targets: Vec<usize> = g.successors(v, p).collect();
        let [w] = targets[..] else {
            return Err(Error::Structural(format!(
                "good vertex `{}` has {} outgoing p-edges",
                id(v),
                targets.len()
            )));
        };
        if is_good[w] {
            outside = false;
            counterexamples.push(format!("p-successor `{}` of `{}` is good", id(w), id(v)));
        }
        if let Some(&u) = preimage.get(&w) {
            injective = false;
            counterexamples.push(format!("`{}` and `{}` share the p-successor `{}`", id(u), id(v), id(w)));
        }
        preimage.entry(w).or_insert(v);
        successors.push((id(v), id(w)));
    }
    let halving = 2 * good.len() <= g.vertex_count();
    if !halving {
        counterexamples.push(format!(
            "|V({r})| = {} exceeds half of |V| = {}",
            good.len(),
            g.vertex_count()
        ));
    }
    Ok(HalvingReport {
        r,
        vertex_count: g.vertex_count(),
        good: good.iter().map(|&v| id(v)).collect(),
        successors,
        successors_outside: outside,
        injective,
        halving,
        pass: outside && injective && halving,
        counterexamples,
    })
}
