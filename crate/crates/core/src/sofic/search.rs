//! Searching `Map(X)` for `(K,1−ε)`-injective `(K,ε)`-morphisms.
//!
//! The unknowns are `φ(m)` for `m ∈ K ∪ K² ∪ {1}`; everything else is sent
//! to `Id_X`. Both searches score an assignment by the integer
//! `max(product defects, identity defect, n − min injectivity)` counted in
//! points, which is at most `⌊εn⌋` exactly when the assignment passes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{canonical_k, defect_report, ApproxMap, DefectReport};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::monoid::{Element, MonoidHandle};
use crate::transform::{compose, disagreements, Convention, Transformation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    /// The exhaustive search finished without a solution.
    NoneExists,
    /// Budget or iterations ran out first.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub approx: Option<ApproxMap>,
    pub report: Option<DefectReport>,
    /// Assignments tried (exhaustive) or iterations run (randomized).
    pub nodes: u64,
    /// Score of the returned assignment, or the best one seen.
    pub best: Option<Fraction>,
}

#[derive(Debug, Clone, Copy)]
enum Constraint {
    Identity(usize),
    /// `d(φ(c), φ(a)φ(b))`
    Product(usize, usize, usize),
    /// `n − d(φ(a), φ(b))`
    Distinct(usize, usize),
}

impl Constraint {
    fn last(&self) -> usize {
        match *self {
            Constraint::Identity(a) => a,
            Constraint::Product(a, b, c) => a.max(b).max(c),
            Constraint::Distinct(a, b) => a.max(b),
        }
    }
}

struct Problem {
    handle: MonoidHandle,
    vars: Vec<Element>,
    constraints: Vec<Constraint>,
    k: Vec<Element>,
    n: usize,
    convention: Convention,
    threshold: usize,
}

impl Problem {
    fn new(h: &MonoidHandle, k: &[Element], epsilon: Fraction, n: usize, convention: Convention) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("n must be positive".into()));
        }
        if epsilon > Fraction::ONE {
            return Err(Error::Argument(format!("ε = {epsilon} exceeds 1")));
        }
        let k = canonical_k(h, k)?;
        let vars = h.square_closure(&k)?;
        let var = |e: &Element| vars.binary_search(e).expect("closure contains K, K² and 1");
        let mut constraints = vec![Constraint::Identity(var(&h.identity()))];
        for a in &k {
            for b in &k {
                constraints.push(Constraint::Product(var(a), var(b), var(&h.multiply(a, b)?)));
            }
        }
        for (i, a) in k.iter().enumerate() {
            for b in &k[i + 1..] {
                constraints.push(Constraint::Distinct(var(a), var(b)));
            }
        }
        let threshold = (epsilon * n as u128).numer() / (epsilon * n as u128).denom();
        Ok(Problem {
            handle: h.clone(),
            constraints,
            k,
            n,
            convention,
            threshold: threshold as usize,
            vars,
        })
    }

    fn cost(&self, c: Constraint, t: &[Transformation]) -> usize {
        match c {
            Constraint::Identity(a) => disagreements(&t[a], &Transformation::identity(self.n)).expect("same size"),
            Constraint::Product(a, b, c) => {
                let ab = compose(&t[a], &t[b], self.convention).expect("same size");
                disagreements(&t[c], &ab).expect("same size")
            }
            Constraint::Distinct(a, b) => self.n - disagreements(&t[a], &t[b]).expect("same size"),
        }
    }

    fn score(&self, t: &[Transformation]) -> usize {
        self.constraints.iter().map(|&c| self.cost(c, t)).max().unwrap_or(0)
    }

    fn finish(&self, t: &[Transformation]) -> Result<(ApproxMap, DefectReport)> {
        let phi = ApproxMap::from_assignments(
            self.handle.clone(),
            self.n,
            self.convention,
            self.vars.iter().cloned().zip(t.iter().cloned()),
        )?;
        let report = defect_report(&phi, &self.k)?;
        let eps = Fraction::new(self.threshold as u128, self.n as u128);
        if !report.passes(eps) {
            return Err(Error::Validation("search produced an assignment that fails verification".into()));
        }
        Ok((phi, report))
    }
}

/// Depth-first search over `φ(m)`, `m ∈ K ∪ K² ∪ {1}` in element order, each
/// ranging over `Map(X)` in lexicographic order. The first solution found is
/// the lexicographically least one.
pub fn exhaustive_search(
    h: &MonoidHandle,
    k: &[Element],
    epsilon: Fraction,
    n: usize,
    convention: Convention,
    node_budget: u64,
) -> Result<SearchOutcome> {
    let prob = Problem::new(h, k, epsilon, n, convention)?;
    let m = (n as u64).checked_pow(n as u32).ok_or_else(|| Error::Argument(format!("n = {n} too large")))?;
    let mut by_var: Vec<Vec<Constraint>> = vec![Vec::new(); prob.vars.len()];
    for &c in &prob.constraints {
        by_var[c.last()].push(c);
    }
    let mut t: Vec<Transformation> = vec![Transformation::identity(n); prob.vars.len()];
    let mut idx = vec![0u64; prob.vars.len()];
    let mut nodes = 0u64;
    let mut depth = 0usize;
    let inconclusive = |nodes| SearchOutcome {
        status: SearchStatus::Inconclusive,
        approx: None,
        report: None,
        nodes,
        best: None,
    };
    loop {
        if idx[depth] == m {
            if depth == 0 {
                return Ok(SearchOutcome {
                    status: SearchStatus::NoneExists,
                    approx: None,
                    report: None,
                    nodes,
                    best: None,
                });
            }
            idx[depth] = 0;
            depth -= 1;
            idx[depth] += 1;
            continue;
        }
        nodes += 1;
        if nodes > node_budget {
            return Ok(inconclusive(nodes - 1));
        }
        t[depth] = Transformation::from_index(n, idx[depth]);
        if by_var[depth].iter().all(|&c| prob.cost(c, &t) <= prob.threshold) {
            if depth + 1 == t.len() {
                let (phi, report) = prob.finish(&t)?;
                return Ok(SearchOutcome {
                    status: SearchStatus::Found,
                    approx: Some(phi),
                    report: Some(report),
                    nodes,
                    best: Some(Fraction::new(prob.score(&t) as u128, n as u128)),
                });
            }
            depth += 1;
        } else {
            idx[depth] += 1;
        }
    }
}

/// Seeded hill climbing: change one `φ(m)` to a random map per step and keep
/// the change unless the score gets worse. Never reports
/// [`SearchStatus::NoneExists`].
pub fn randomized_search(
    h: &MonoidHandle,
    k: &[Element],
    epsilon: Fraction,
    n: usize,
    convention: Convention,
    seed: u64,
    iterations: u64,
) -> Result<SearchOutcome> {
    let prob = Problem::new(h, k, epsilon, n, convention)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_map = |rng: &mut ChaCha8Rng| {
        Transformation::new((0..n).map(|_| rng.gen_range(0..n as u32)).collect()).expect("valid map")
    };
    let mut t: Vec<Transformation> = (0..prob.vars.len()).map(|_| random_map(&mut rng)).collect();
    let mut score = prob.score(&t);
    let mut best = score;
    let mut nodes = 0u64;
    while score > prob.threshold && nodes < iterations {
        nodes += 1;
        let i = rng.gen_range(0..t.len());
        let candidate = random_map(&mut rng);
        let old = std::mem::replace(&mut t[i], candidate);
        let s = prob.score(&t);
        if s <= score {
            score = s;
            best = best.min(s);
        } else {
            t[i] = old;
        }
    }
    let best = Some(Fraction::new(best as u128, n as u128));
    if score <= prob.threshold {
        let (phi, report) = prob.finish(&t)?;
        return Ok(SearchOutcome {
            status: SearchStatus::Found,
            approx: Some(phi),
            report: Some(report),
            nodes,
            best,
        });
    }
    Ok(SearchOutcome {
        status: SearchStatus::Inconclusive,
        approx: None,
        report: None,
        nodes,
        best,
    })
}
