//! Certificates that the bicyclic monoid `⟨p,q : pq = 1⟩` admits no
//! `(K,1−ε)`-injective `(K,ε)`-morphism for `K = {1,p,q,qp}` and `ε < 1/5`.
//!
//! With `h = φ(1)`, `f = φ(p)`, `g = φ(q)`, `k = φ(qp)`:
//! `d(fg,Id) ≤ d(h,Id) + d(h,fg)`, `d(gf,Id) = d(fg,Id)`, and
//! `d(k,h) ≤ d(k,gf) + d(gf,Id) + d(h,Id)`. If the three constraints are at
//! most `ε` then `d(k,h) ≤ 4ε`, which is incompatible with `d(k,h) ≥ 1−ε`
//! as soon as `ε < 1/5`.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{budget, Error, Result};
use crate::fraction::Fraction;
use crate::monoid::{Element, MonoidHandle};
use crate::transform::{all_maps, compose, disagreements, hamming, Convention, Transformation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// Some constraint `d(h,Id)`, `d(h,fg)`, `d(k,gf)` exceeds `ε`.
    ConstraintViolated,
    /// All constraints hold, and `d(k,h) < 1−ε`: `φ` is not injective enough.
    NotInjective,
    /// All constraints hold and `d(k,h) ≥ 1−ε`; only possible for `ε ≥ 1/5`.
    Consistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub convention: Convention,
    pub epsilon: Fraction,
    pub h: Transformation,
    pub f: Transformation,
    pub g: Transformation,
    pub k: Transformation,
    pub d_h_id: Fraction,
    pub d_h_fg: Fraction,
    pub d_fg_id: Fraction,
    pub d_gf_id: Fraction,
    pub d_k_gf: Fraction,
    pub d_k_h: Fraction,
    /// `d(fg,Id) = d(gf,Id)`.
    pub lemma_holds: bool,
    /// `d(fg,Id) ≤ d(h,Id) + d(h,fg)`.
    pub triangle_holds: bool,
    /// `d(k,gf) + d(gf,Id) + d(h,Id)`.
    pub chain_bound: Fraction,
    /// `d(k,h) ≤ chain_bound`.
    pub chain_holds: bool,
    pub constraints_hold: bool,
    pub conclusion: Conclusion,
}

pub fn bicyclic_chain_certificate(
    h: &Transformation,
    f: &Transformation,
    g: &Transformation,
    k: &Transformation,
    epsilon: Fraction,
    convention: Convention,
) -> Result<Certificate> {
    let id = Transformation::identity(h.domain_size());
    let fg = compose(f, g, convention)?;
    let gf = compose(g, f, convention)?;
    let d_h_id = hamming(h, &id)?;
    let d_h_fg = hamming(h, &fg)?;
    let d_fg_id = hamming(&fg, &id)?;
    let d_gf_id = hamming(&gf, &id)?;
    let d_k_gf = hamming(k, &gf)?;
    let d_k_h = hamming(k, h)?;
    let chain_bound = d_k_gf + d_gf_id + d_h_id;
    let constraints_hold = d_h_id <= epsilon && d_h_fg <= epsilon && d_k_gf <= epsilon;
    let injective = epsilon <= Fraction::ONE && d_k_h >= Fraction::ONE - epsilon;
    let conclusion = match (constraints_hold, injective) {
        (false, _) => Conclusion::ConstraintViolated,
        (true, false) => Conclusion::NotInjective,
        (true, true) => Conclusion::Consistent,
    };
    Ok(Certificate {
        convention,
        epsilon,
        h: h.clone(),
        f: f.clone(),
        g: g.clone(),
        k: k.clone(),
        lemma_holds: d_fg_id == d_gf_id,
        triangle_holds: d_fg_id <= d_h_id + d_h_fg,
        chain_holds: d_k_h <= chain_bound,
        d_h_id,
        d_h_fg,
        d_fg_id,
        d_gf_id,
        d_k_gf,
        d_k_h,
        chain_bound,
        constraints_hold,
        conclusion,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EpsilonStarMode {
    /// Only `φ(1), φ(p), φ(q), φ(qp)` and the constraints `d(φ(1),Id)`,
    /// `d(φ(1), φ(p)φ(q))`, `d(φ(qp), φ(q)φ(p))` plus injectivity on `K`.
    Relaxed,
    /// All of `K ∪ K² = {1,p,q,qp,p²,q²,qp²,q²p}` and every product
    /// constraint over `K × K`.
    Full,
}

impl FromStr for EpsilonStarMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relaxed" => Ok(EpsilonStarMode::Relaxed),
            "full" => Ok(EpsilonStarMode::Full),
            other => Err(Error::Parse(format!("unknown mode `{other}` (relaxed|full)"))),
        }
    }
}

/// Smallest `ε` for which some assignment on `n` points is a
/// `(K,1−ε)`-injective `(K,ε)`-morphism (within the mode's constraints).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonStar {
    pub n: usize,
    pub mode: EpsilonStarMode,
    pub value: Fraction,
    /// Lexicographically least optimal assignment, keyed by element.
    pub witness: Vec<(String, Transformation)>,
    pub assignments_scanned: u64,
    /// `value ≥ 1/5`.
    pub meets_bound: bool,
}

/// Largest number of assignments the exhaustive scan will visit.
pub const EPSILON_STAR_LIMIT: u128 = 10_000_000;

struct Problem {
    /// Variables in order; the scan is lexicographic in this order.
    vars: Vec<Element>,
    /// `(a, b, c)`: `d(φ(c), φ(a)φ(b))`.
    products: Vec<(usize, usize, usize)>,
    identity: usize,
    /// Distinct pairs of `K`.
    pairs: Vec<(usize, usize)>,
}

fn problem(mode: EpsilonStarMode) -> Result<Problem> {
    let b = MonoidHandle::bicyclic();
    let k = b.parse_all(&["1", "p", "q", "qp"])?;
    let vars = match mode {
        EpsilonStarMode::Relaxed => k.clone(),
        EpsilonStarMode::Full => b.square_closure(&k)?,
    };
    let at = |e: &Element| vars.iter().position(|v| v == e);
    let var = |e: &Element| at(e).expect("element is a variable");
    let factors: Vec<(Element, Element)> = match mode {
        EpsilonStarMode::Full => k.iter().flat_map(|x| k.iter().map(move |y| (x.clone(), y.clone()))).collect(),
        EpsilonStarMode::Relaxed => vec![(k[1].clone(), k[2].clone()), (k[2].clone(), k[1].clone())],
    };
    let mut products = Vec::new();
    for (x, y) in &factors {
        products.push((var(x), var(y), var(&b.multiply(x, y)?)));
    }
    let kidx: Vec<usize> = k.iter().map(var).collect();
    let pairs = kidx
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| kidx[i + 1..].iter().map(move |&c| (a, c)))
        .collect();
    Ok(Problem {
        identity: var(&b.identity()),
        vars,
        products,
        pairs,
    })
}

/// Exhaustive minimum of `max(defects, 1 − min injectivity)` over all
/// assignments of maps of `{0..n-1}`, with the standard convention. The value
/// is convention independent: the diagrammatic problem is the standard one
/// with `p` and `q` exchanged.
pub fn epsilon_star_bicyclic(n: usize, mode: EpsilonStarMode) -> Result<EpsilonStar> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let prob = problem(mode)?;
    let v = prob.vars.len() as u32;
    let m = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let total = m.checked_pow(v).unwrap_or(u128::MAX);
    if total > EPSILON_STAR_LIMIT {
        return Err(budget("epsilon-star assignments", total, EPSILON_STAR_LIMIT));
    }
    let maps = all_maps(n)?;
    let m = maps.len();
    let id = Transformation::identity(n).index() as usize;
    let mut comp = vec![0usize; m * m];
    let mut dist = vec![0usize; m * m];
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            comp[i * m + j] = compose(f, g, Convention::Standard)?.index() as usize;
            dist[i * m + j] = disagreements(f, g)?;
        }
    }
    let score = |t: &[usize]| -> usize {
        let mut worst = dist[t[prob.identity] * m + id];
        for &(a, b, c) in &prob.products {
            worst = worst.max(dist[t[c] * m + comp[t[a] * m + t[b]]]);
        }
        let inj = prob.pairs.iter().map(|&(a, b)| dist[t[a] * m + t[b]]).min().unwrap_or(n);
        worst.max(n - inj)
    };
    // split on the first variable; each worker scans its block in order
    let best = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut t = vec![0usize; v as usize];
            t[0] = first;
            let mut best = (usize::MAX, Vec::new());
            loop {
                let s = score(&t);
                if s < best.0 {
                    best = (s, t.clone());
                }
                // odometer over positions 1.., last position fastest
                let mut pos = t.len();
                loop {
                    if pos == 1 {
                        return best;
                    }
                    pos -= 1;
                    t[pos] += 1;
                    if t[pos] < m {
                        break;
                    }
                    t[pos] = 0;
                }
            }
        })
        .reduce(|| (usize::MAX, Vec::new()), |a, b| if b.0 < a.0 { b } else { a });
    let b = MonoidHandle::bicyclic();
    let value = Fraction::new(best.0 as u128, n as u128);
    Ok(EpsilonStar {
        n,
        mode,
        value,
        witness: prob
            .vars
            .iter()
            .zip(&best.1)
            .map(|(e, &i)| (b.format(e), maps[i].clone()))
            .collect(),
        assignments_scanned: total as u64,
        meets_bound: value >= Fraction::new(1, 5),
    })
}
