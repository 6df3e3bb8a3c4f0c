use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ball::vertex_ball;
use super::{cayley_ball_graph, pointed_isomorphism, CayleyBall, LabeledGraph};
use crate::error::Result;
use crate::fraction::Fraction;
use crate::monoid::MonoidHandle;

/// If `B_r(v)` is isomorphic to the Cayley ball, the isomorphism as a map
/// from Cayley-ball vertex indices to vertex indices of `g`.
pub fn ball_match(g: &LabeledGraph, cayley: &CayleyBall, v: usize) -> Result<Option<Vec<usize>>> {
    let ball = vertex_ball(g, v, cayley.ball.radius)?;
    let Some(psi) = pointed_isomorphism(&cayley.ball, &ball)? else {
        return Ok(None);
    };
    Ok(Some(
        psi.into_iter()
            .map(|i| g.index_of(&ball.graph.vertices()[i]).expect("ball vertex belongs to g"))
            .collect(),
    ))
}

/// `V(r)` against a precomputed Cayley ball, in vertex order.
pub fn good_vertices_for(g: &LabeledGraph, cayley: &CayleyBall) -> Result<Vec<usize>> {
    let flags = (0..g.vertex_count())
        .into_par_iter()
        .map(|v| ball_match(g, cayley, v).map(|m| m.is_some()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(flags.iter().enumerate().filter(|(_, &ok)| ok).map(|(v, _)| v).collect())
}

/// `V(r)`: vertices whose `r`-ball is isomorphic, as a pointed labeled
/// graph, to `B_r(1_M)` in the Cayley graph of `h`.
pub fn good_vertex_set(g: &LabeledGraph, h: &MonoidHandle, r: usize) -> Result<Vec<usize>> {
    good_vertices_for(g, &cayley_ball_graph(h, r)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeissReport {
    pub r: usize,
    pub delta: Fraction,
    pub vertex_count: usize,
    pub good: Vec<String>,
    pub good_count: usize,
    /// `|V(r)| / |V|`.
    pub ratio: Fraction,
    /// `|V(r)| ≥ (1 − δ)|V|`.
    pub pass: bool,
}

pub fn weiss_report(g: &LabeledGraph, r: usize, delta: Fraction, good: &[usize]) -> WeissReport {
    let n = g.vertex_count();
    let ratio = Fraction::new(good.len() as u128, n as u128);
    let threshold = Fraction::ONE.checked_sub(delta).unwrap_or(Fraction::ZERO);
    WeissReport {
        r,
        delta,
        vertex_count: n,
        good: good.iter().map(|&v| g.vertices()[v].clone()).collect(),
        good_count: good.len(),
        ratio,
        pass: ratio >= threshold,
    }
}

pub fn weiss_check(g: &LabeledGraph, h: &MonoidHandle, r: usize, delta: Fraction) -> Result<WeissReport> {
    let good = good_vertex_set(g, h, r)?;
    Ok(weiss_report(g, r, delta, &good))
}
