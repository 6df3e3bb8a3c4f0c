use std::collections::{BTreeMap, VecDeque};

use super::LabeledGraph;
use crate::error::{Error, Result};
use crate::monoid::{Element, MonoidHandle};

/// The subgraph induced on a directed ball, pointed at its center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedBall {
    pub graph: LabeledGraph,
    /// Index of the center in `graph`.
    pub center: usize,
    pub radius: usize,
    pub deterministic: bool,
}

impl PointedBall {
    /// Wraps an arbitrary graph as a pointed graph of unspecified radius.
    pub fn pointed(graph: LabeledGraph, center: usize) -> Result<Self> {
        if center >= graph.vertex_count() {
            return Err(Error::Domain(format!("center index {center} out of range")));
        }
        let deterministic = graph.is_deterministic();
        let radius = graph.vertex_count();
        Ok(PointedBall {
            graph,
            center,
            radius,
            deterministic,
        })
    }

    pub fn center_id(&self) -> &str {
        &self.graph.vertices()[self.center]
    }

    /// True when every vertex is reachable from the center.
    pub fn is_reachable(&self) -> bool {
        distances(&self.graph, self.center, usize::MAX).len() == self.graph.vertex_count()
    }
}

/// Directed BFS distances from `v`, truncated at `r`.
pub(crate) fn distances(g: &LabeledGraph, v: usize, r: usize) -> BTreeMap<usize, usize> {
    let mut dist = BTreeMap::new();
    dist.insert(v, 0);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        if d == r {
            continue;
        }
        for &(_, w) in g.out_edges(u) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Vertex indices of `B_r(v)` in increasing order.
pub(crate) fn ball_vertices(g: &LabeledGraph, v: usize, r: usize) -> Vec<usize> {
    distances(g, v, r).into_keys().collect()
}

/// `B_r(v)`: endpoints of directed paths of length `≤ r` from `v`, with every
/// edge of `g` between them.
pub fn vertex_ball(g: &LabeledGraph, v: usize, r: usize) -> Result<PointedBall> {
    if v >= g.vertex_count() {
        return Err(Error::Domain(format!("vertex index {v} out of range")));
    }
    let members = ball_vertices(g, v, r);
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &u) in members.iter().enumerate() {
        local[u] = i;
    }
    let edges = members
        .iter()
        .flat_map(|&u| {
            g.out_edges(u)
                .iter()
                .filter(|&&(_, w)| local[w] != usize::MAX)
                .map(|&(l, w)| (local[u], l, local[w]))
                .collect::<Vec<_>>()
        })
        .collect();
    let ids = members.iter().map(|&u| g.vertices()[u].clone()).collect();
    // the members are already in id order, so local indices survive sorting
    let graph = LabeledGraph::assemble(g.labels().to_vec(), ids, edges)?;
    let deterministic = graph.is_deterministic();
    Ok(PointedBall {
        center: local[v],
        graph,
        radius: r,
        deterministic,
    })
}

pub fn vertex_ball_by_id(g: &LabeledGraph, id: &str, r: usize) -> Result<PointedBall> {
    let v = g
        .index_of(id)
        .ok_or_else(|| Error::Domain(format!("unknown vertex `{id}`")))?;
    vertex_ball(g, v, r)
}

/// `B_r(1_M)` in the Cayley graph `C(M, Σ)` together with the element
/// behind each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyBall {
    pub ball: PointedBall,
    /// `elements[i]` is the element at vertex `i` of `ball.graph`.
    pub elements: Vec<Element>,
}

impl CayleyBall {
    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }
}

/// Induced subgraph of the Cayley graph (edges `s → sσ`) on `B_r(1_M)`.
pub fn cayley_ball_graph(h: &MonoidHandle, r: usize) -> Result<CayleyBall> {
    let elements = h.elements_ball(r)?;
    let index: BTreeMap<&Element, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let gens = h.generators();
    let mut edges = Vec::new();
    for (i, s) in elements.iter().enumerate() {
        for (l, g) in gens.iter().enumerate() {
            if let Some(&j) = index.get(&h.multiply(s, g)?) {
                edges.push((i, l, j));
            }
        }
    }
    let ids: Vec<String> = elements.iter().map(|e| h.format(e)).collect();
    let graph = LabeledGraph::assemble(h.labels().to_vec(), ids.clone(), edges)?;
    let elements_sorted = graph
        .vertices()
        .iter()
        .map(|id| elements[ids.iter().position(|x| x == id).expect("same ids")].clone())
        .collect();
    let center = graph
        .index_of(&h.format(&h.identity()))
        .expect("identity is in every ball");
    Ok(CayleyBall {
        ball: PointedBall {
            center,
            deterministic: graph.is_deterministic(),
            graph,
            radius: r,
        },
        elements: elements_sorted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, fan_graph};

    fn edge_ids(g: &LabeledGraph) -> Vec<(String, String, String)> {
        g.to_json().edges
    }

    fn t(u: &str, l: &str, v: &str) -> (String, String, String) {
        (u.into(), l.into(), v.into())
    }

    #[test]
    fn cayley_ball_examples() {
        let n = cayley_ball_graph(&MonoidHandle::naturals(), 2).unwrap();
        assert_eq!(n.ball.graph.vertices(), ["0", "1", "2"]);
        assert_eq!(edge_ids(&n.ball.graph), [t("0", "1", "1"), t("1", "1", "2")]);

        let b = cayley_ball_graph(&MonoidHandle::bicyclic(), 1).unwrap();
        assert_eq!(b.ball.graph.vertices(), ["1", "p", "q"]);
        let mut edges = edge_ids(&b.ball.graph);
        edges.sort();
        assert_eq!(edges, [t("1", "p", "p"), t("1", "q", "q"), t("p", "q", "1")]);
        assert_eq!(b.ball.center_id(), "1");
        assert!(b.ball.deterministic);

        let f = MonoidHandle::free(vec!["a".into()]).unwrap();
        let ball = cayley_ball_graph(&f, 0).unwrap();
        assert_eq!(ball.ball.graph.vertex_count(), 1);
        assert_eq!(ball.ball.graph.edge_count(), 0);
    }

    #[test]
    fn vertex_ball_examples() {
        let c5 = cycle_graph(5).unwrap();
        let b = vertex_ball_by_id(&c5, "0", 2).unwrap();
        assert_eq!(b.graph.vertices(), ["0", "1", "2"]);
        assert_eq!(edge_ids(&b.graph), [t("0", "1", "1"), t("1", "1", "2")]);
        let fan = fan_graph(3).unwrap();
        let apex = vertex_ball_by_id(&fan, "a", 1).unwrap();
        assert_eq!(apex.graph.vertices(), ["a"]);
        assert_eq!(edge_ids(&apex.graph), [t("a", "a", "a")]);
        let zero = vertex_ball_by_id(&fan, "x1", 0).unwrap();
        assert_eq!(zero.graph.vertex_count(), 1);
        assert_eq!(zero.graph.edge_count(), 0);
        assert!(vertex_ball_by_id(&fan, "nope", 1).is_err());
    }

    #[test]
    fn elements_follow_vertex_order() {
        let b = cayley_ball_graph(&MonoidHandle::bicyclic(), 3).unwrap();
        let h = MonoidHandle::bicyclic();
        for (i, e) in b.elements.iter().enumerate() {
            assert_eq!(h.format(e), b.ball.graph.vertices()[i]);
        }
        assert_eq!(b.elements.len(), 10);
    }
}
