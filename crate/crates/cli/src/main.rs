mod input;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use sofic_core::graph::{
    bicyclic_halving_check, cayley_ball_graph, cycle_graph, fan_graph, good_vertex_set, path_graph,
    random_deterministic_graph, schreier_graph, vertex_ball_by_id, weiss_check, LabeledGraph,
};
use sofic_core::monoid::{adjoin_identity, MonoidHandle};
use sofic_core::sofic::{
    adjoin_identity_approx, amplify_approx, bicyclic_chain_certificate, defect_report, epsilon_star_bicyclic,
    exhaustive_search, graph_to_morphism_with, morphism_to_graph, product_approx, randomized_search,
    weiss_from_morphism, ApproxMap, Conclusion, DefectReport, EpsilonStarMode, Extension, SearchStatus,
};
use sofic_core::transform::{Convention, Transformation};
use sofic_core::{Error, Fraction};

#[derive(Parser)]
#[command(name = "sofic", version, about = "Finite approximations of monoids and the Weiss graph condition")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fan,
    Schreier,
    Cycle,
    Path,
    Random,
    Cayley,
}

#[derive(Subcommand)]
enum Command {
    /// The ball `B_r(1)` of a monoid, or `B_r(v)` of a graph vertex.
    Ball {
        #[arg(long, conflicts_with = "graph")]
        monoid: Option<String>,
        #[arg(long, requires = "vertex")]
        graph: Option<PathBuf>,
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long)]
        r: usize,
    },
    /// The Cayley graph induced on `B_r(1)`.
    Cayley {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        r: usize,
    },
    /// Generates a graph from one of the example families.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Size parameter (fan: leaves, schreier: bits, cycle/path/random: vertices).
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated labels for random graphs.
        #[arg(long, default_value = "p,q")]
        labels: String,
        #[arg(long, default_value_t = 1.0)]
        fill: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        monoid: Option<String>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Checks `|V(r)| ≥ (1−δ)|V|`.
    Weiss {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta: Fraction,
    },
    /// Lists `V(r)`.
    GoodVertices {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        r: usize,
    },
    /// Reads a `(K,ε)`-morphism off a graph satisfying the Weiss inequality.
    BridgeG2m {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        monoid: String,
        /// `ball:R`, a JSON file of element strings, or a comma-separated list.
        #[arg(long)]
        k: String,
        #[arg(long)]
        epsilon: Fraction,
        /// Definition of `φ` at vertices outside `V(r)`: walk or identity.
        #[arg(long, default_value = "walk")]
        extension: Extension,
    },
    /// Builds the graph of a diagrammatic morphism and checks the Weiss inequality.
    BridgeM2g {
        #[arg(long)]
        approx: PathBuf,
        #[arg(long)]
        monoid: Option<String>,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta: Fraction,
        /// Accept monoids whose left cancellativity is unknown.
        #[arg(long)]
        allow_unknown: bool,
    },
    /// Exact defect and injectivity report of an approximation.
    Verify {
        #[arg(long)]
        approx: PathBuf,
        #[arg(long)]
        monoid: Option<String>,
        #[arg(long)]
        k: String,
        #[arg(long)]
        epsilon: Fraction,
    },
    /// Diagonal amplification onto `X^power`.
    Amplify {
        #[arg(long)]
        approx: PathBuf,
        #[arg(long)]
        monoid: Option<String>,
        #[arg(long)]
        power: u32,
    },
    /// Product approximation of `M₁ × M₂`; pass `--approx` twice.
    Product {
        #[arg(long, num_args = 1, required = true)]
        approx: Vec<PathBuf>,
    },
    /// Approximation of a finite semigroup with an identity adjoined.
    AdjoinId {
        /// JSON file, `idempotent`, `left-zero-N` or `right-zero-N`.
        #[arg(long)]
        semigroup: String,
        #[arg(long)]
        epsilon: Fraction,
        #[arg(long)]
        k: Option<String>,
    },
    /// Chain certificate for `φ(1), φ(p), φ(q), φ(qp)` on the bicyclic monoid.
    CertifyBicyclic {
        /// JSON object with maps `h`, `f`, `g`, `k`, or a bicyclic approximation.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: Fraction,
        /// Convention for `h f g k` tuples; approximations carry their own.
        #[arg(long, default_value = "standard")]
        convention: Convention,
    },
    /// Exhaustive minimum `ε` for the bicyclic monoid on `n` points.
    EpsilonStar {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "relaxed")]
        mode: EpsilonStarMode,
    },
    /// Searches `Map(X)` for a `(K,1−ε)`-injective `(K,ε)`-morphism.
    Search {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        k: String,
        #[arg(long)]
        epsilon: Fraction,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "standard")]
        convention: Convention,
        /// Node budget of the exhaustive search.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Run the seeded randomized search instead.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        iterations: u64,
    },
    /// Bicyclic halving check: `p` maps `V(r)` injectively outside `V(r)`.
    HalvingCheck {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Følner interior `{s ∈ Ω : sK ⊂ Ω}`.
    Folner {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        k: String,
    },
}

struct Report {
    json: Value,
    text: String,
    graph: Option<(LabeledGraph, Option<usize>)>,
    pass: bool,
}

impl Report {
    fn new(json: Value, text: String, pass: bool) -> Self {
        Report {
            json,
            text,
            graph: None,
            pass,
        }
    }

    fn with_graph(mut self, g: LabeledGraph, center: Option<usize>) -> Self {
        self.graph = Some((g, center));
        self
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn optional_monoid(arg: &Option<String>) -> Result<Option<MonoidHandle>> {
    arg.as_deref().map(input::monoid).transpose()
}

fn approx_json(phi: &ApproxMap) -> Value {
    serde_json::to_value(phi.to_json()).expect("approximation serializes")
}

fn defect_text(rep: &DefectReport) -> String {
    let mut s = format!(
        "|K| = {}, |X| = {}\nproduct defect {}",
        rep.k.len(),
        rep.x_size,
        rep.max_product_defect
    );
    if let Some((a, b)) = &rep.product_argmax {
        let _ = write!(s, " at ({a}, {b})");
    }
    let _ = write!(s, "\nidentity defect {}\ninjectivity {}", rep.identity_defect, rep.min_injectivity);
    if let Some((a, b)) = &rep.injectivity_argmin {
        let _ = write!(s, " at ({a}, {b})");
    }
    s
}

fn graph_summary(g: &LabeledGraph) -> String {
    format!(
        "{} vertices, {} edges, labels [{}]{}",
        g.vertex_count(),
        g.edge_count(),
        g.labels().join(", "),
        if g.is_deterministic() { ", deterministic" } else { "" }
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Tuple {
    h: Transformation,
    f: Transformation,
    g: Transformation,
    k: Transformation,
}

fn run(command: Command) -> Result<Report> {
    Ok(match command {
        Command::Ball { monoid, graph, vertex, r } => match (monoid, graph) {
            (Some(m), None) => {
                let h = input::monoid(&m)?;
                let cayley = cayley_ball_graph(&h, r)?;
                let elements: Vec<String> = h.elements_ball(r)?.iter().map(|e| h.format(e)).collect();
                let text = format!("|B_{r}(1)| = {}\n{}", elements.len(), elements.join(" "));
                let json = json!({ "monoid": h.kind_name(), "r": r, "size": elements.len(), "elements": elements });
                Report::new(json, text, true).with_graph(cayley.ball.graph, Some(cayley.ball.center))
            }
            (None, Some(path)) => {
                let g = input::graph(&path)?;
                let v = vertex.expect("clap requires --vertex with --graph");
                let ball = vertex_ball_by_id(&g, &v, r)?;
                let text = format!("B_{r}({v}): {}", graph_summary(&ball.graph));
                let json = json!({
                    "center": v,
                    "r": r,
                    "deterministic": ball.deterministic,
                    "graph": ball.graph.to_json(),
                });
                Report::new(json, text, true).with_graph(ball.graph, Some(ball.center))
            }
            _ => bail!("pass exactly one of --monoid or --graph"),
        },
        Command::Cayley { monoid, r } => {
            let h = input::monoid(&monoid)?;
            let cayley = cayley_ball_graph(&h, r)?;
            let elements: Vec<String> = cayley.elements.iter().map(|e| h.format(e)).collect();
            let text = format!("Cayley ball of radius {r}: {}", graph_summary(&cayley.ball.graph));
            let json = json!({ "r": r, "elements": elements, "graph": cayley.ball.graph.to_json() });
            Report::new(json, text, true).with_graph(cayley.ball.graph, Some(cayley.ball.center))
        }
        Command::Gen {
            family,
            n,
            labels,
            fill,
            seed,
            monoid,
            r,
        } => {
            let size = || n.context("this family needs --n");
            let (g, center) = match family {
                Family::Fan => (fan_graph(size()?)?, None),
                Family::Schreier => (schreier_graph(size()?)?, None),
                Family::Cycle => (cycle_graph(size()?)?, None),
                Family::Path => (path_graph(size()?)?, None),
                Family::Random => {
                    let labels: Vec<String> = labels.split(',').map(str::to_string).collect();
                    (random_deterministic_graph(&labels, size()?, fill, seed)?, None)
                }
                Family::Cayley => {
                    let h = input::monoid(monoid.as_deref().context("cayley needs --monoid")?)?;
                    let c = cayley_ball_graph(&h, r.context("cayley needs --r")?)?;
                    (c.ball.graph, Some(c.ball.center))
                }
            };
            let json = serde_json::to_value(g.to_json())?;
            Report::new(json, graph_summary(&g), true).with_graph(g, center)
        }
        Command::Weiss { graph, monoid, r, delta } => {
            let g = input::graph(&graph)?;
            let h = input::monoid(&monoid)?;
            let rep = weiss_check(&g, &h, r, delta)?;
            let text = format!(
                "|V({r})| = {} of {} (ratio {}), need ≥ 1 - {delta}: {}",
                rep.good_count,
                rep.vertex_count,
                rep.ratio,
                verdict(rep.pass)
            );
            Report::new(serde_json::to_value(&rep)?, text, rep.pass)
        }
        Command::GoodVertices { graph, monoid, r } => {
            let g = input::graph(&graph)?;
            let h = input::monoid(&monoid)?;
            let good: Vec<String> = good_vertex_set(&g, &h, r)?.iter().map(|&v| g.vertices()[v].clone()).collect();
            let text = format!("|V({r})| = {} of {}\n{}", good.len(), g.vertex_count(), good.join(" "));
            let json = json!({ "r": r, "vertex_count": g.vertex_count(), "good_count": good.len(), "good": good });
            Report::new(json, text, true)
        }
        Command::BridgeG2m {
            graph,
            monoid,
            k,
            epsilon,
            extension,
        } => {
            let g = input::graph(&graph)?;
            let h = input::monoid(&monoid)?;
            let k = input::elements(&h, &k)?;
            let out = graph_to_morphism_with(&g, &h, &k, epsilon, extension)?;
            let text = format!(
                "r0 = {}, r = {}, |V(r)| = {} of {}\n{}\nverified at ε = {epsilon}: {}",
                out.r0,
                out.r,
                out.weiss.good_count,
                out.weiss.vertex_count,
                defect_text(&out.report),
                verdict(out.verified)
            );
            let json = json!({
                "approx": approx_json(&out.approx),
                "r0": out.r0,
                "r": out.r,
                "weiss": out.weiss,
                "report": out.report,
                "verified": out.verified,
            });
            Report::new(json, text, out.verified)
        }
        Command::BridgeM2g {
            approx,
            monoid,
            r,
            delta,
            allow_unknown,
        } => {
            let phi = input::approx(&approx, optional_monoid(&monoid)?.as_ref())?;
            let out = weiss_from_morphism(&phi, r, delta, allow_unknown)?;
            let g = morphism_to_graph(&phi)?;
            let text = format!(
                "ε(δ) = {} on |K| = {}: hypothesis {}\n|V₀| = {}, |V({r})| = {} of {}: {}",
                out.epsilon,
                out.k_size,
                if out.hypothesis { "holds" } else { "fails" },
                out.v0.len(),
                out.weiss.good_count,
                out.weiss.vertex_count,
                verdict(out.pass)
            );
            let pass = out.pass;
            Report::new(serde_json::to_value(&out)?, text, pass).with_graph(g, None)
        }
        Command::Verify {
            approx,
            monoid,
            k,
            epsilon,
        } => {
            let phi = input::approx(&approx, optional_monoid(&monoid)?.as_ref())?;
            let k = input::elements(phi.handle(), &k)?;
            let rep = defect_report(&phi, &k)?;
            let pass = rep.passes(epsilon);
            let text = format!("{}\n(K,1-ε)-injective (K,ε)-morphism at ε = {epsilon}: {}", defect_text(&rep), verdict(pass));
            let json = json!({ "epsilon": epsilon, "report": rep, "pass": pass });
            Report::new(json, text, pass)
        }
        Command::Amplify { approx, monoid, power } => {
            let phi = input::approx(&approx, optional_monoid(&monoid)?.as_ref())?;
            let out = amplify_approx(&phi, power)?;
            let text = format!("amplified to {} points", out.x_size());
            Report::new(approx_json(&out), text, true)
        }
        Command::Product { approx } => {
            let [a, b] = &approx[..] else {
                bail!("product takes exactly two --approx files, got {}", approx.len());
            };
            let out = product_approx(&input::approx(a, None)?, &input::approx(b, None)?)?;
            let text = format!("product on {} points, {} assignments", out.x_size(), out.assignments().len());
            Report::new(approx_json(&out), text, true)
        }
        Command::AdjoinId { semigroup, epsilon, k } => {
            let s = input::semigroup(&semigroup)?;
            let k = match k {
                Some(k) => {
                    let handle = MonoidHandle::finite(
                        adjoin_identity(&s),
                        (0..s.size()).collect(),
                        Some(s.names().to_vec()),
                    )?;
                    Some(input::elements(&handle, &k)?)
                }
                None => None,
            };
            let out = adjoin_identity_approx(&s, k.as_deref(), epsilon)?;
            let text = format!(
                "|Y| = {}, |Z| = {}, |X| = {}, bound {}\n{}\nverified at ε = {epsilon}: {}",
                out.y.len(),
                out.z_size,
                out.approx.x_size(),
                out.bound,
                defect_text(&out.report),
                verdict(out.verified)
            );
            let h = out.approx.handle();
            let json = json!({
                "approx": approx_json(&out.approx),
                "report": out.report,
                "y": out.y.iter().map(|e| h.format(e)).collect::<Vec<_>>(),
                "y0": out.y0,
                "z_size": out.z_size,
                "bound": out.bound,
                "verified": out.verified,
            });
            Report::new(json, text, out.verified)
        }
        Command::CertifyBicyclic {
            input: path,
            epsilon,
            convention,
        } => {
            let text = std::fs::read_to_string(&path).with_context(|| format!("cannot read `{}`", path.display()))?;
            let (t, convention) = match serde_json::from_str::<Tuple>(&text) {
                Ok(t) => (t, convention),
                Err(_) => {
                    let phi = ApproxMap::from_json_str(&text, Some(&MonoidHandle::bicyclic()))
                        .with_context(|| format!("`{}` is neither a tuple nor an approximation", path.display()))?;
                    let h = phi.handle();
                    if h.kind_name() != "bicyclic" {
                        bail!("certificate needs a bicyclic approximation, got {}", h.kind_name());
                    }
                    let at = |s: &str| -> Result<Transformation> { Ok(phi.image(&h.parse(s)?).into_owned()) };
                    (
                        Tuple {
                            h: at("1")?,
                            f: at(&h.labels()[0])?,
                            g: at(&h.labels()[1])?,
                            k: at(&format!("{}{}", h.labels()[1], h.labels()[0]))?,
                        },
                        phi.convention(),
                    )
                }
            };
            let c = bicyclic_chain_certificate(&t.h, &t.f, &t.g, &t.k, epsilon, convention)?;
            let pass = c.lemma_holds
                && c.triangle_holds
                && c.chain_holds
                && !(c.conclusion == Conclusion::Consistent && epsilon < Fraction::new(1, 5));
            let text = format!(
                "d(h,Id) = {}, d(h,fg) = {}, d(k,gf) = {}\nd(fg,Id) = {} = d(gf,Id) = {}\nd(k,h) = {} ≤ {}\nconclusion: {:?}",
                c.d_h_id, c.d_h_fg, c.d_k_gf, c.d_fg_id, c.d_gf_id, c.d_k_h, c.chain_bound, c.conclusion
            );
            Report::new(serde_json::to_value(&c)?, text, pass)
        }
        Command::EpsilonStar { n, mode } => {
            let star = epsilon_star_bicyclic(n, mode)?;
            let mut text = format!("ε*({n}) = {} over {} assignments", star.value, star.assignments_scanned);
            for (name, t) in &star.witness {
                let _ = write!(text, "\n  {name} ↦ {:?}", t.images());
            }
            Report::new(serde_json::to_value(&star)?, text, star.meets_bound)
        }
        Command::Search {
            monoid,
            k,
            epsilon,
            n,
            convention,
            budget,
            seed,
            iterations,
        } => {
            let h = input::monoid(&monoid)?;
            let k = input::elements(&h, &k)?;
            let out = match seed {
                Some(seed) => randomized_search(&h, &k, epsilon, n, convention, seed, iterations)?,
                None => exhaustive_search(&h, &k, epsilon, n, convention, budget)?,
            };
            let status = serde_json::to_value(out.status)?;
            let mut text = format!("{} after {} nodes", status.as_str().unwrap_or_default(), out.nodes);
            if let Some(rep) = &out.report {
                let _ = write!(text, "\n{}", defect_text(rep));
            }
            let json = json!({
                "status": status,
                "nodes": out.nodes,
                "best": out.best,
                "approx": out.approx.as_ref().map(approx_json),
                "report": out.report,
            });
            Report::new(json, text, out.status == SearchStatus::Found)
        }
        Command::HalvingCheck { graph, r } => {
            let g = input::graph(&graph)?;
            let rep = bicyclic_halving_check(&g, r)?;
            let mut text = format!("|V({r})| = {} of {}: {}", rep.good.len(), rep.vertex_count, verdict(rep.pass));
            for c in &rep.counterexamples {
                let _ = write!(text, "\n  {c}");
            }
            Report::new(serde_json::to_value(&rep)?, text, rep.pass)
        }
        Command::Folner { monoid, omega, k } => {
            let h = input::monoid(&monoid)?;
            let omega = input::elements(&h, &omega)?;
            let k = input::elements(&h, &k)?;
            let interior: Vec<String> = h.folner_interior(&omega, &k)?.iter().map(|e| h.format(e)).collect();
            let distinct = omega.iter().collect::<std::collections::BTreeSet<_>>().len();
            let ratio = Fraction::new(interior.len() as u128, distinct as u128);
            let text = format!("{} of {} elements of Ω are interior ({ratio})\n{}", interior.len(), distinct, interior.join(" "));
            let json = json!({ "omega_size": distinct, "interior": interior, "ratio": ratio });
            Report::new(json, text, true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let report = match run(cli.command) {
        Ok(report) => report,
        Err(err) => {
            let failed_check = matches!(
                err.downcast_ref::<Error>(),
                Some(Error::Precondition(_) | Error::Contract(_))
            );
            eprintln!("error: {err:#}");
            return ExitCode::from(if failed_check { 1 } else { 2 });
        }
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("report serializes")),
        Format::Text => println!("{}", report.text),
        Format::Dot => match &report.graph {
            Some((g, center)) => print!("{}", g.to_dot(*center)),
            None => {
                eprintln!("error: this command has no graph to draw; use --format json or text");
                return ExitCode::from(2);
            }
        },
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
