//! Pointed Σ-labeled graph isomorphism. Labels are matched by name.

use std::collections::{BTreeMap, VecDeque};

use super::{LabeledGraph, PointedBall};
use crate::error::{budget, Result};

/// Default node budget of the backtracking search.
pub const DEFAULT_ISO_BUDGET: usize = 1_000_000;

/// `a`'s label indices translated to `b`'s, or `None` if some label used on
/// an edge of `a` does not exist in `b`.
fn translate_labels(a: &LabeledGraph, b: &LabeledGraph) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.labels().len()];
    for (i, l) in a.labels().iter().enumerate() {
        if let Some(j) = b.label_index(l) {
            map[i] = j;
        }
    }
    if a.edges().iter().any(|&(_, l, _)| map[l] == usize::MAX) {
        return None;
    }
    Some(map)
}

/// Checks that `psi` (indexed by `a`'s vertices) is a pointed isomorphism.
pub fn is_pointed_isomorphism(a: &PointedBall, b: &PointedBall, psi: &[usize]) -> bool {
    let (ga, gb) = (&a.graph, &b.graph);
    if psi.len() != ga.vertex_count() || ga.vertex_count() != gb.vertex_count() {
        return false;
    }
    if ga.edge_count() != gb.edge_count() || psi.get(a.center) != Some(&b.center) {
        return false;
    }
    let mut hit = vec![false; gb.vertex_count()];
    for &v in psi {
        if v >= hit.len() || std::mem::replace(&mut hit[v], true) {
            return false;
        }
    }
    let Some(lmap) = translate_labels(ga, gb) else {
        return false;
    };
    // equal edge counts plus injectivity on edges makes the edge map onto
    ga.edges().iter().all(|&(u, l, v)| gb.has_edge(psi[u], lmap[l], psi[v]))
}

/// Synchronized BFS for a deterministic source whose vertices are all
/// reachable from the center. The bijection, if any, is forced.
fn synchronized(a: &PointedBall, b: &PointedBall, lmap: &[usize]) -> Option<Vec<usize>> {
    let (ga, gb) = (&a.graph, &b.graph);
    let n = ga.vertex_count();
    let mut psi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    psi[a.center] = b.center;
    used[b.center] = true;
    let mut queue = VecDeque::from([a.center]);
    while let Some(u) = queue.pop_front() {
        for &(l, v) in ga.out_edges(u) {
            let mut targets = gb.successors(psi[u], lmap[l]);
            let w = targets.next()?;
            if targets.next().is_some() {
                return None;
            }
            if psi[v] == usize::MAX {
                if used[w] {
                    return None;
                }
                psi[v] = w;
                used[w] = true;
                queue.push_back(v);
            } else if psi[v] != w {
                return None;
            }
        }
    }
    if psi.contains(&usize::MAX) {
        return None;
    }
    is_pointed_isomorphism(a, b, &psi).then_some(psi)
}

/// Per-vertex invariant: sorted out labels, in labels and loop labels.
fn signature(g: &LabeledGraph, v: usize, lmap: Option<&[usize]>) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let tr = |l: usize| lmap.map_or(l, |m| m[l]);
    let mut out: Vec<usize> = g.out_edges(v).iter().map(|&(l, _)| tr(l)).collect();
    let mut inc: Vec<usize> = g.in_edges(v).iter().map(|&(l, _)| tr(l)).collect();
    let mut loops: Vec<usize> = g.out_edges(v).iter().filter(|&&(_, w)| w == v).map(|&(l, _)| tr(l)).collect();
    out.sort_unstable();
    inc.sort_unstable();
    loops.sort_unstable();
    (out, inc, loops)
}

/// Sorted labels on edges `u -> v`, keyed by the ordered pair.
fn pair_labels(g: &LabeledGraph, lmap: Option<&[usize]>) -> BTreeMap<(usize, usize), Vec<usize>> {
    let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(u, l, v) in g.edges() {
        map.entry((u, v)).or_default().push(lmap.map_or(l, |m| m[l]));
    }
    for labels in map.values_mut() {
        labels.sort_unstable();
    }
    map
}

struct Search<'a> {
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    a_pairs: BTreeMap<(usize, usize), Vec<usize>>,
    b_pairs: BTreeMap<(usize, usize), Vec<usize>>,
    psi: Vec<usize>,
    used: Vec<bool>,
    nodes: usize,
    budget: usize,
    limit: usize,
    found: Vec<Vec<usize>>,
    a: &'a PointedBall,
    b: &'a PointedBall,
}

impl Search<'_> {
    fn consistent(&self, u: usize, w: usize) -> bool {
        let empty = Vec::new();
        let same = |x: (usize, usize), y: (usize, usize)| {
            self.a_pairs.get(&x).unwrap_or(&empty) == self.b_pairs.get(&y).unwrap_or(&empty)
        };
        if !same((u, u), (w, w)) {
            return false;
        }
        self.order.iter().all(|&v| {
            let pv = self.psi[v];
            pv == usize::MAX || (same((u, v), (w, pv)) && same((v, u), (pv, w)))
        })
    }

    fn run(&mut self, depth: usize) -> Result<()> {
        if self.found.len() >= self.limit {
            return Ok(());
        }
        if depth == self.order.len() {
            if is_pointed_isomorphism(self.a, self.b, &self.psi) {
                self.found.push(self.psi.clone());
            }
            return Ok(());
        }
        let u = self.order[depth];
        for i in 0..self.candidates[u].len() {
            let w = self.candidates[u][i];
            if self.used[w] || !self.consistent(u, w) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(budget("pointed isomorphism search nodes", self.nodes as u128, self.budget as u128));
            }
            self.psi[u] = w;
            self.used[w] = true;
            self.run(depth + 1)?;
            self.psi[u] = usize::MAX;
            self.used[w] = false;
            if self.found.len() >= self.limit {
                break;
            }
        }
        Ok(())
    }
}

fn backtrack(a: &PointedBall, b: &PointedBall, lmap: &[usize], limit: usize, node_budget: usize) -> Result<Vec<Vec<usize>>> {
    let (ga, gb) = (&a.graph, &b.graph);
    let n = ga.vertex_count();
    // vertices in undirected BFS order from the center, then the rest
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([a.center]);
    seen[a.center] = true;
    while order.len() < n {
        let u = match queue.pop_front() {
            Some(u) => u,
            None => {
                let u = (0..n).find(|&v| !seen[v]).expect("unseen vertex remains");
                seen[u] = true;
                u
            }
        };
        order.push(u);
        for &(_, v) in ga.out_edges(u).iter().chain(ga.in_edges(u)) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    let b_sigs: Vec<_> = (0..n).map(|w| signature(gb, w, None)).collect();
    let candidates = (0..n)
        .map(|u| {
            if u == a.center {
                let ok = signature(ga, u, Some(lmap)) == b_sigs[b.center];
                return if ok { vec![b.center] } else { vec![] };
            }
            let sig = signature(ga, u, Some(lmap));
            (0..n).filter(|&w| w != b.center && b_sigs[w] == sig).collect()
        })
        .collect();
    let mut search = Search {
        order,
        candidates,
        a_pairs: pair_labels(ga, Some(lmap)),
        b_pairs: pair_labels(gb, None),
        psi: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        budget: node_budget,
        limit,
        found: Vec::new(),
        a,
        b,
    };
    search.run(0)?;
    Ok(search.found)
}

/// A bijection `ψ` (indexed by `a`'s vertices) with `ψ(center_a) = center_b`
/// preserving labeled edges in both directions, if one exists.
pub fn pointed_isomorphism(a: &PointedBall, b: &PointedBall) -> Result<Option<Vec<usize>>> {
    pointed_isomorphism_with_budget(a, b, DEFAULT_ISO_BUDGET)
}

pub fn pointed_isomorphism_with_budget(
    a: &PointedBall,
    b: &PointedBall,
    node_budget: usize,
) -> Result<Option<Vec<usize>>> {
    let (ga, gb) = (&a.graph, &b.graph);
    if ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count() {
        return Ok(None);
    }
    let Some(lmap) = translate_labels(ga, gb) else {
        return Ok(None);
    };
    if ga.is_deterministic() && a.is_reachable() {
        return Ok(synchronized(a, b, &lmap));
    }
    Ok(backtrack(a, b, &lmap, 1, node_budget)?.pop())
}

/// Up to `limit` pointed isomorphisms, always by exhaustive backtracking.
pub fn all_pointed_isomorphisms(a: &PointedBall, b: &PointedBall, limit: usize, node_budget: usize) -> Result<Vec<Vec<usize>>> {
    let (ga, gb) = (&a.graph, &b.graph);
    if ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count() {
        return Ok(vec![]);
    }
    let Some(lmap) = translate_labels(ga, gb) else {
        return Ok(vec![]);
    };
    backtrack(a, b, &lmap, limit, node_budget)
}
