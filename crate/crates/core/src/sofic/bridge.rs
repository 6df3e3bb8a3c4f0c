//! Passing between labeled graphs satisfying the Weiss inequality and
//! `(K,ε)`-morphisms. Both directions use [`Convention::Diagrammatic`]:
//! `v^{φ(s)φ(t)} = (v^{φ(s)})^{φ(t)}` matches walking `s` then `t` in a graph.

use std::collections::VecDeque;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{canonical_k, defect_report, ApproxMap, DefectReport};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::graph::{
    ball_match, cayley_ball_graph, CayleyBall, good_vertices_for, weiss_check, weiss_report, GraphJson, LabeledGraph,
    WeissReport,
};
use crate::monoid::{Cancellativity, Element, MonoidHandle};
use crate::transform::{Convention, Transformation};

/// A morphism read off a graph, with the data that produced it.
#[derive(Debug, Clone)]
pub struct GraphToMorphism {
    pub approx: ApproxMap,
    /// Smallest `r₀` with `K ∪ K² ⊂ B_{r₀}(1_M)`.
    pub r0: usize,
    /// `r = 2r₀`, the radius at which `V(r)` is computed.
    pub r: usize,
    pub weiss: WeissReport,
    pub report: DefectReport,
    /// The result is a `(K,1−ε)`-injective `(K,ε)`-morphism.
    pub verified: bool,
}

/// How [`graph_to_morphism`] defines `v^{φ(s)}` at vertices outside `V(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extension {
    /// `v^{φ(s)} = v`.
    Identity,
    /// Follow a geodesic word for `s` from `v` in the graph; stay at `v` if
    /// an edge is missing or not unique.
    #[default]
    Walk,
}

impl FromStr for Extension {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Extension::Identity),
            "walk" => Ok(Extension::Walk),
            other => Err(Error::Parse(format!("unknown extension `{other}` (identity|walk)"))),
        }
    }
}

/// [`graph_to_morphism_with`] using [`Extension::Walk`].
pub fn graph_to_morphism(g: &LabeledGraph, h: &MonoidHandle, k: &[Element], epsilon: Fraction) -> Result<GraphToMorphism> {
    graph_to_morphism_with(g, h, k, epsilon, Extension::Walk)
}

/// `v^{φ(s)} = ψ_{v,r}(s)` for `v ∈ V(r)` and `s ∈ B_r(1_M)`, extended to
/// the other vertices by `extension`, assigned on `K ∪ K² ∪ {1_M}` with
/// `X = V`.
///
/// Requires `|V(r)| ≥ (1−ε)|V|` at `r = 2r₀`.
pub fn graph_to_morphism_with(
    g: &LabeledGraph,
    h: &MonoidHandle,
    k: &[Element],
    epsilon: Fraction,
    extension: Extension,
) -> Result<GraphToMorphism> {
    let k = canonical_k(h, k)?;
    let closure = h.square_closure(&k)?;
    let bound = closure.iter().map(|e| h.length_bound(e)).max().unwrap_or(0);
    let r0 = h.radius_covering(&closure, bound)?;
    let r = 2 * r0;
    let cayley = cayley_ball_graph(h, r)?;
    let good = good_vertices_for(g, &cayley)?;
    let weiss = weiss_report(g, r, epsilon, &good);
    if !weiss.pass {
        return Err(Error::Precondition(format!(
            "|V({r})| = {} of {} vertices is below (1-ε)|V| for ε = {epsilon}",
            weiss.good_count, weiss.vertex_count
        )));
    }
    let n = g.vertex_count();
    let mut psi: Vec<Option<Vec<usize>>> = vec![None; n];
    for &v in &good {
        psi[v] = ball_match(g, &cayley, v)?;
    }
    let label_map: Vec<Option<usize>> = cayley.ball.graph.labels().iter().map(|l| g.label_index(l)).collect();
    let paths = geodesics(&cayley);
    let walk = |v: usize, path: &[usize]| -> usize {
        let mut at = v;
        for &l in path {
            let Some(l) = label_map[l] else { return v };
            let mut next = g.successors(at, l);
            match (next.next(), next.next()) {
                (Some(w), None) => at = w,
                _ => return v,
            }
        }
        at
    };
    let items = closure
        .iter()
        .map(|s| {
            let at = cayley.index_of(s).expect("K ∪ K² lies in the ball");
            let images = (0..n)
                .map(|v| match (&psi[v], extension) {
                    (Some(m), _) => m[at],
                    (None, Extension::Identity) => v,
                    (None, Extension::Walk) => walk(v, &paths[at]),
                } as u32)
                .collect();
            Ok((s.clone(), Transformation::new(images)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let approx = ApproxMap::from_assignments(h.clone(), n, Convention::Diagrammatic, items)?;
    let report = defect_report(&approx, &k)?;
    Ok(GraphToMorphism {
        verified: report.passes(epsilon),
        approx,
        r0,
        r,
        weiss,
        report,
    })
}

/// Label sequence of a shortest path from the center to each ball vertex.
fn geodesics(cayley: &CayleyBall) -> Vec<Vec<usize>> {
    let g = &cayley.ball.graph;
    let mut paths: Vec<Option<Vec<usize>>> = vec![None; g.vertex_count()];
    paths[cayley.ball.center] = Some(Vec::new());
    let mut queue = VecDeque::from([cayley.ball.center]);
    while let Some(u) = queue.pop_front() {
        let base = paths[u].clone().expect("queued vertices have paths");
        for &(l, w) in g.out_edges(u) {
            if paths[w].is_none() {
                let mut p = base.clone();
                p.push(l);
                paths[w] = Some(p);
                queue.push_back(w);
            }
        }
    }
    paths.into_iter().map(Option::unwrap_or_default).collect()
}

/// The graph on `X` with edges `(v, σ, v^{φ(σ)})`, vertices named `0..n-1`.
pub fn morphism_to_graph(phi: &ApproxMap) -> Result<LabeledGraph> {
    if phi.convention() != Convention::Diagrammatic {
        return Err(Error::Domain(
            "reading a graph off φ needs the diagrammatic convention".into(),
        ));
    }
    let h = phi.handle();
    if !phi.image(&h.identity()).is_identity() {
        return Err(Error::Precondition(
            "φ(1_M) must be Id_X; normalize the identity first".into(),
        ));
    }
    let n = phi.x_size();
    let mut edges = Vec::with_capacity(n * h.generator_count());
    for (l, sigma) in h.generators().iter().enumerate() {
        let t = phi.image(sigma);
        edges.extend((0..n).map(|v| (v, l, t.apply(v))));
    }
    LabeledGraph::assemble(h.labels().to_vec(), (0..n).map(|v| v.to_string()).collect(), edges)
}

/// `ε = δ / (|B_r(1_M)|·|Σ| + |B_r(1_M)|²)`.
pub fn epsilon_for_delta(ball_size: usize, sigma_size: usize, delta: Fraction) -> Fraction {
    let b = ball_size as u128;
    delta / Fraction::from_integer(b * sigma_size as u128 + b * b)
}

/// The graph built from a morphism and everything needed to compare it with
/// the Weiss inequality it is supposed to satisfy.
#[derive(Debug, Clone, Serialize)]
pub struct MorphismToWeiss {
    pub r: usize,
    pub delta: Fraction,
    /// The accuracy `ε` demanded of `φ` on `K = B_{2r+1}(1_M)`.
    pub epsilon: Fraction,
    pub ball_size: usize,
    pub k_size: usize,
    pub report: DefectReport,
    /// `φ` is a `(K,1−ε)`-injective `(K,ε)`-morphism.
    pub hypothesis: bool,
    pub graph: GraphJson,
    /// Vertices where `ψ_v(s) = v^{φ(s)}` is multiplicative along edges
    /// and injective on `B_r(1_M)`; these are good by construction.
    pub v0: Vec<String>,
    pub weiss: WeissReport,
    /// When the hypothesis holds: `V₀ ⊂ V(r)` and the Weiss inequality.
    pub pass: bool,
}

/// Builds the graph of `φ` and checks the Weiss inequality at `(r, δ)`.
///
/// `M` must be left-cancellative; an unknown flag is refused unless
/// `allow_unknown` is set.
pub fn weiss_from_morphism(phi: &ApproxMap, r: usize, delta: Fraction, allow_unknown: bool) -> Result<MorphismToWeiss> {
    let h = phi.handle();
    match h.left_cancellative() {
        Cancellativity::Yes => {}
        Cancellativity::Unknown if allow_unknown => {}
        flag => {
            return Err(Error::Precondition(format!(
                "the monoid must be left-cancellative (flag: {flag})"
            )))
        }
    }
    let graph = morphism_to_graph(phi)?;
    let ball = h.elements_ball(r)?;
    let k = h.elements_ball(2 * r + 1)?;
    let epsilon = epsilon_for_delta(ball.len(), h.generator_count(), delta);
    let report = defect_report(phi, &k)?;
    let hypothesis = report.passes(epsilon);

    let n = phi.x_size();
    let gens = h.generators();
    let gen_images: Vec<_> = gens.iter().map(|g| phi.image(g).into_owned()).collect();
    let ball_images: Vec<_> = ball.iter().map(|s| phi.image(s).into_owned()).collect();
    let mut products = Vec::with_capacity(ball.len());
    for s in &ball {
        let row = gens
            .iter()
            .map(|g| Ok(phi.image(&h.multiply(s, g)?).into_owned()))
            .collect::<Result<Vec<_>>>()?;
        products.push(row);
    }
    let v0: Vec<usize> = (0..n)
        .filter(|&v| {
            let multiplicative = ball_images.iter().enumerate().all(|(i, fs)| {
                gen_images
                    .iter()
                    .enumerate()
                    .all(|(j, fg)| products[i][j].apply(v) == fg.apply(fs.apply(v)))
            });
            let mut seen: Vec<usize> = ball_images.iter().map(|f| f.apply(v)).collect();
            seen.sort_unstable();
            multiplicative && seen.windows(2).all(|w| w[0] != w[1])
        })
        .collect();
    let weiss = weiss_check(&graph, h, r, delta)?;
    let good: std::collections::BTreeSet<&String> = weiss.good.iter().collect();
    let v0_ids: Vec<String> = v0.iter().map(|&v| graph.vertices()[v].clone()).collect();
    let v0_good = v0_ids.iter().all(|v| good.contains(v));
    Ok(MorphismToWeiss {
        r,
        delta,
        epsilon,
        ball_size: ball.len(),
        k_size: k.len(),
        report,
        hypothesis,
        graph: graph.to_json(),
        v0: v0_ids,
        pass: !hypothesis || (v0_good && weiss.pass),
        weiss,
    })
}
