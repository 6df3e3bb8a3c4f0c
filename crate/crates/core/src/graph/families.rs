//! Example graphs: the fan, the Schreier graphs of the diagonal action of
//! `Map({0,1})`, cycles and paths, plus seeded random deterministic graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LabeledGraph;
use crate::error::{budget, Error, Result};

fn positive(what: &str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument(format!("{what} needs at least one vertex")));
    }
    Ok(())
}

/// Vertices `x0..x{n-1}` and the apex `a`; every vertex has an `a`-edge to
/// the apex, which therefore carries a loop.
pub fn fan_graph(x_count: usize) -> Result<LabeledGraph> {
    positive("fan graph", x_count)?;
    let mut vertices: Vec<String> = (0..x_count).map(|i| format!("x{i}")).collect();
    vertices.push("a".into());
    let apex = x_count;
    let edges = (0..=x_count).map(|v| (v, 0, apex)).collect();
    LabeledGraph::assemble(vec!["a".into()], vertices, edges)
}

/// Vertices are bit strings of length `n`; `a` flips every bit and `c0`
/// sends every vertex to `0…0`.
pub fn schreier_graph(n: usize) -> Result<LabeledGraph> {
    positive("Schreier graph", n)?;
    if n > 20 {
        return Err(budget("Schreier graph vertices", 1u128 << n, 1 << 20));
    }
    let size = 1usize << n;
    let mask = size - 1;
    let vertices = (0..size).map(|x| format!("{x:0n$b}")).collect();
    let edges = (0..size).flat_map(|x| [(x, 0, x ^ mask), (x, 1, 0)]).collect();
    LabeledGraph::assemble(vec!["a".into(), "c0".into()], vertices, edges)
}

/// `0 → 1 → … → n−1 → 0`, label `1`.
pub fn cycle_graph(n: usize) -> Result<LabeledGraph> {
    positive("cycle graph", n)?;
    let edges = (0..n).map(|k| (k, 0, (k + 1) % n)).collect();
    LabeledGraph::assemble(vec!["1".into()], (0..n).map(|k| k.to_string()).collect(), edges)
}

/// `0 → 1 → … → n−1`, label `1`.
pub fn path_graph(n: usize) -> Result<LabeledGraph> {
    positive("path graph", n)?;
    let edges = (1..n).map(|k| (k - 1, 0, k)).collect();
    LabeledGraph::assemble(vec!["1".into()], (0..n).map(|k| k.to_string()).collect(), edges)
}

/// Vertices `0..n-1`; each (vertex, label) independently gets one edge to a
/// uniform target with probability `fill`.
pub fn random_deterministic_graph(labels: &[String], n: usize, fill: f64, seed: u64) -> Result<LabeledGraph> {
    positive("random graph", n)?;
    if !(0.0..=1.0).contains(&fill) {
        return Err(Error::Argument(format!("fill probability {fill} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for l in 0..labels.len() {
            if rng.gen_bool(fill) {
                edges.push((u, l, rng.gen_range(0..n)));
            }
        }
    }
    LabeledGraph::assemble(labels.to_vec(), (0..n).map(|k| k.to_string()).collect(), edges)
}
