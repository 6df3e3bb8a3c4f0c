//! Finitely generated monoids with canonical normal forms.
//!
//! A [`MonoidHandle`] bundles a presentation (or table) with its generator
//! labels `Σ` and a multiplication oracle on normal forms. Elements are
//! plain values; every operation that combines them goes through the
//! handle, which rejects elements of the wrong shape.

mod finite;
mod rewriting;
mod spec;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

pub use finite::{adjoin_identity, full_map_monoid, FiniteMonoid, FiniteSemigroup};
pub use rewriting::{format_word, shortlex_cmp, tokenize, CriticalPair, RewriteSystem, Rule, Word};
pub use spec::{builtin_handle, builtin_semigroup, HandleSpec, SemigroupSpec};

use crate::error::{budget, Error, Result};

/// Default cap on the number of elements a ball enumeration may visit.
pub const DEFAULT_BALL_LIMIT: usize = 1_000_000;

/// A canonical representative of a monoid element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// Free and rewriting monoids: an irreducible word of generator indices.
    Word(Word),
    /// Free commutative monoids (and the naturals): exponent per generator.
    Exponents(Vec<u64>),
    /// Bicyclic monoid: `q^a p^b`.
    Bicyclic { a: u64, b: u64 },
    /// Index into a finite table.
    Finite(usize),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    fn tag(&self) -> u8 {
        match self {
            Element::Word(_) => 0,
            Element::Exponents(_) => 1,
            Element::Bicyclic { .. } => 2,
            Element::Finite(_) => 3,
            Element::Pair(..) => 4,
        }
    }
}

/// Shortlex order on normal-form words; pairs compare componentwise.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Word(x), Element::Word(y)) => shortlex_cmp(x, y),
            (Element::Exponents(x), Element::Exponents(y)) => {
                let (sx, sy): (u64, u64) = (x.iter().sum(), y.iter().sum());
                // The sorted word g0^e0 g1^e1 .. is lexicographically smaller
                // when it has more of the earlier generators.
                sx.cmp(&sy).then_with(|| y.cmp(x))
            }
            (Element::Bicyclic { a, b }, Element::Bicyclic { a: c, b: d }) => {
                (a + b).cmp(&(c + d)).then(a.cmp(c))
            }
            (Element::Finite(x), Element::Finite(y)) => x.cmp(y),
            (Element::Pair(a, b), Element::Pair(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
            _ => self.tag().cmp(&other.tag()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Whether every left multiplication is injective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cancellativity {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Cancellativity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cancellativity::Yes => "yes",
            Cancellativity::No => "no",
            Cancellativity::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidKind {
    Free,
    FreeCommutative,
    Naturals,
    /// `⟨p, q : pq = 1⟩`; generator 0 plays `p`, generator 1 plays `q`.
    Bicyclic,
    Finite {
        monoid: FiniteMonoid,
        generators: Vec<usize>,
    },
    Rewriting(RewriteSystem),
    Product(Box<MonoidHandle>, Box<MonoidHandle>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHandle {
    kind: MonoidKind,
    labels: Vec<String>,
    left_cancellative: Cancellativity,
    ball_limit: usize,
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut sorted: Vec<&String> = labels.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Validation(format!("duplicate generator label in {labels:?}")));
    }
    if labels.iter().any(|l| l.is_empty() || l.contains(['(', ')', ',', '.', ' '])) {
        return Err(Error::Validation(format!(
            "generator labels must be non-empty and avoid `( ) , .` and spaces: {labels:?}"
        )));
    }
    Ok(())
}

fn default_letters(k: usize) -> Vec<String> {
    if k <= 26 {
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..k).map(|i| format!("x{i}")).collect()
    }
}

impl MonoidHandle {
    fn build(kind: MonoidKind, labels: Vec<String>, left_cancellative: Cancellativity) -> Self {
        MonoidHandle {
            kind,
            labels,
            left_cancellative,
            ball_limit: DEFAULT_BALL_LIMIT,
        }
    }

    pub fn free(labels: Vec<String>) -> Result<Self> {
        check_labels(&labels)?;
        Ok(Self::build(MonoidKind::Free, labels, Cancellativity::Yes))
    }

    pub fn free_commutative(labels: Vec<String>) -> Result<Self> {
        check_labels(&labels)?;
        Ok(Self::build(MonoidKind::FreeCommutative, labels, Cancellativity::Yes))
    }

    pub fn free_commutative_rank(k: usize) -> Result<Self> {
        Self::free_commutative(default_letters(k))
    }

    /// `(ℕ, +)` generated by `1`.
    pub fn naturals() -> Self {
        Self::build(MonoidKind::Naturals, vec!["1".into()], Cancellativity::Yes)
    }

    pub fn bicyclic() -> Self {
        Self::build(MonoidKind::Bicyclic, vec!["p".into(), "q".into()], Cancellativity::No)
    }

    /// Bicyclic monoid `⟨p_label, q_label : p_label q_label = 1⟩`.
    pub fn bicyclic_with_labels(p_label: &str, q_label: &str) -> Result<Self> {
        let labels = vec![p_label.to_string(), q_label.to_string()];
        check_labels(&labels)?;
        Ok(Self::build(MonoidKind::Bicyclic, labels, Cancellativity::No))
    }

    /// A finite monoid with explicit generators `Σ` (element indices). Labels
    /// default to the generators' element names.
    pub fn finite(monoid: FiniteMonoid, generators: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(&g) = generators.iter().find(|&&g| g >= monoid.size()) {
            return Err(Error::Validation(format!("generator index {g} out of range")));
        }
        let labels = labels.unwrap_or_else(|| generators.iter().map(|&g| monoid.names()[g].clone()).collect());
        if labels.len() != generators.len() {
            return Err(Error::Validation("one label per generator required".into()));
        }
        check_labels(&labels)?;
        let flag = if monoid.is_left_cancellative() {
            Cancellativity::Yes
        } else {
            Cancellativity::No
        };
        Ok(Self::build(MonoidKind::Finite { monoid, generators }, labels, flag))
    }

    pub fn rewriting(system: RewriteSystem) -> Result<Self> {
        let labels = system.alphabet().to_vec();
        check_labels(&labels)?;
        Ok(Self::build(MonoidKind::Rewriting(system), labels, Cancellativity::Unknown))
    }

    /// Direct product `M1 × M2`, generated by `(σ,1)` and `(1,τ)`.
    pub fn product(left: MonoidHandle, right: MonoidHandle) -> Self {
        let lid = left.format(&left.identity());
        let rid = right.format(&right.identity());
        let labels = left
            .labels
            .iter()
            .map(|l| format!("({l},{rid})"))
            .chain(right.labels.iter().map(|r| format!("({lid},{r})")))
            .collect();
        let flag = match (left.left_cancellative, right.left_cancellative) {
            (Cancellativity::Yes, Cancellativity::Yes) => Cancellativity::Yes,
            (Cancellativity::No, _) | (_, Cancellativity::No) => Cancellativity::No,
            _ => Cancellativity::Unknown,
        };
        Self::build(MonoidKind::Product(Box::new(left), Box::new(right)), labels, flag)
    }

    pub fn with_ball_limit(mut self, limit: usize) -> Self {
        self.ball_limit = limit;
        self
    }

    /// Record a cancellativity fact established outside the library.
    pub fn with_left_cancellative(mut self, flag: Cancellativity) -> Self {
        self.left_cancellative = flag;
        self
    }

    pub fn kind(&self) -> &MonoidKind {
        &self.kind
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn left_cancellative(&self) -> Cancellativity {
        self.left_cancellative
    }

    pub fn ball_limit(&self) -> usize {
        self.ball_limit
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            MonoidKind::Free => "free",
            MonoidKind::FreeCommutative => "free_commutative",
            MonoidKind::Naturals => "naturals",
            MonoidKind::Bicyclic => "bicyclic",
            MonoidKind::Finite { .. } => "finite",
            MonoidKind::Rewriting(_) => "rewriting",
            MonoidKind::Product(..) => "product",
        }
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            MonoidKind::Free | MonoidKind::Rewriting(_) => Element::Word(Vec::new()),
            MonoidKind::FreeCommutative | MonoidKind::Naturals => {
                Element::Exponents(vec![0; self.labels.len()])
            }
            MonoidKind::Bicyclic => Element::Bicyclic { a: 0, b: 0 },
            MonoidKind::Finite { monoid, .. } => Element::Finite(monoid.identity()),
            MonoidKind::Product(l, r) => Element::Pair(Box::new(l.identity()), Box::new(r.identity())),
        }
    }

    pub fn is_identity(&self, e: &Element) -> bool {
        *e == self.identity()
    }

    /// The element represented by generator `i`.
    pub fn generator(&self, i: usize) -> Result<Element> {
        if i >= self.labels.len() {
            return Err(Error::Domain(format!("generator index {i} out of range")));
        }
        self.normalize(&[i as u32])
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.labels.len())
            .map(|i| self.generator(i).expect("index in range"))
            .collect()
    }

    /// Canonical form of the product of the generators in `word`.
    pub fn normalize(&self, word: &[u32]) -> Result<Element> {
        let k = self.labels.len() as u32;
        if let Some(&c) = word.iter().find(|&&c| c >= k) {
            return Err(Error::Domain(format!("letter {c} is not a generator (|Σ| = {k})")));
        }
        match &self.kind {
            MonoidKind::Free => Ok(Element::Word(word.to_vec())),
            MonoidKind::Rewriting(rs) => Ok(Element::Word(rs.normalize(word)?)),
            MonoidKind::FreeCommutative | MonoidKind::Naturals => {
                let mut exps = vec![0u64; k as usize];
                for &c in word {
                    exps[c as usize] += 1;
                }
                Ok(Element::Exponents(exps))
            }
            MonoidKind::Bicyclic => {
                let (mut a, mut b) = (0u64, 0u64);
                for &c in word {
                    if c == 0 {
                        b += 1;
                    } else if b > 0 {
                        b -= 1;
                    } else {
                        a += 1;
                    }
                }
                Ok(Element::Bicyclic { a, b })
            }
            MonoidKind::Finite { monoid, generators } => Ok(Element::Finite(
                word.iter()
                    .fold(monoid.identity(), |acc, &c| monoid.mul(acc, generators[c as usize])),
            )),
            MonoidKind::Product(l, r) => {
                let split = l.generator_count() as u32;
                let lw: Vec<u32> = word.iter().filter(|&&c| c < split).copied().collect();
                let rw: Vec<u32> = word.iter().filter(|&&c| c >= split).map(|&c| c - split).collect();
                Ok(Element::Pair(Box::new(l.normalize(&lw)?), Box::new(r.normalize(&rw)?)))
            }
        }
    }

    /// Checks that `e` is a canonical element of this monoid.
    pub fn validate(&self, e: &Element) -> Result<()> {
        let ok = match (&self.kind, e) {
            (MonoidKind::Free, Element::Word(w)) => w.iter().all(|&c| (c as usize) < self.labels.len()),
            (MonoidKind::Rewriting(rs), Element::Word(w)) => {
                w.iter().all(|&c| (c as usize) < self.labels.len()) && rs.is_normal(w)
            }
            (MonoidKind::FreeCommutative | MonoidKind::Naturals, Element::Exponents(x)) => {
                x.len() == self.labels.len()
            }
            (MonoidKind::Bicyclic, Element::Bicyclic { .. }) => true,
            (MonoidKind::Finite { monoid, .. }, Element::Finite(i)) => *i < monoid.size(),
            (MonoidKind::Product(l, r), Element::Pair(x, y)) => {
                return l.validate(x).and_then(|_| r.validate(y));
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{e:?} is not an element of this {} monoid",
                self.kind_name()
            )))
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.validate(x)?;
        self.validate(y)?;
        self.multiply_unchecked(x, y)
    }

    fn multiply_unchecked(&self, x: &Element, y: &Element) -> Result<Element> {
        match (&self.kind, x, y) {
            (MonoidKind::Free, Element::Word(u), Element::Word(v)) => {
                Ok(Element::Word(u.iter().chain(v).copied().collect()))
            }
            (MonoidKind::Rewriting(rs), Element::Word(u), Element::Word(v)) => {
                let w: Word = u.iter().chain(v).copied().collect();
                Ok(Element::Word(rs.normalize(&w)?))
            }
            (MonoidKind::FreeCommutative | MonoidKind::Naturals, Element::Exponents(u), Element::Exponents(v)) => {
                Ok(Element::Exponents(u.iter().zip(v).map(|(a, b)| a + b).collect()))
            }
            // q^a p^b q^c p^d: the middle p^b q^c cancels to q^(c-b) or p^(b-c).
            (MonoidKind::Bicyclic, &Element::Bicyclic { a, b }, &Element::Bicyclic { a: c, b: d }) => {
                if b <= c {
                    Ok(Element::Bicyclic { a: a + c - b, b: d })
                } else {
                    Ok(Element::Bicyclic { a, b: b - c + d })
                }
            }
            (MonoidKind::Finite { monoid, .. }, &Element::Finite(i), &Element::Finite(j)) => {
                Ok(Element::Finite(monoid.mul(i, j)))
            }
            (MonoidKind::Product(l, r), Element::Pair(x1, x2), Element::Pair(y1, y2)) => Ok(Element::Pair(
                Box::new(l.multiply_unchecked(x1, y1)?),
                Box::new(r.multiply_unchecked(x2, y2)?),
            )),
            _ => Err(Error::Domain("element does not belong to this monoid".into())),
        }
    }

    /// Canonical generator word of `e`, when the kind has one (not for finite
    /// tables, whose elements are named instead).
    pub fn word(&self, e: &Element) -> Option<Word> {
        match (&self.kind, e) {
            (MonoidKind::Free | MonoidKind::Rewriting(_), Element::Word(w)) => Some(w.clone()),
            (MonoidKind::FreeCommutative | MonoidKind::Naturals, Element::Exponents(x)) => Some(
                x.iter()
                    .enumerate()
                    .flat_map(|(i, &n)| std::iter::repeat_n(i as u32, n as usize))
                    .collect(),
            ),
            (MonoidKind::Bicyclic, &Element::Bicyclic { a, b }) => Some(
                std::iter::repeat_n(1u32, a as usize)
                    .chain(std::iter::repeat_n(0u32, b as usize))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// An upper bound on the distance from `1_M` to `e` in the Cayley graph.
    pub fn length_bound(&self, e: &Element) -> usize {
        match (&self.kind, e) {
            (MonoidKind::Finite { monoid, .. }, _) => monoid.size(),
            (MonoidKind::Product(l, r), Element::Pair(x, y)) => l.length_bound(x) + r.length_bound(y),
            _ => self.word(e).map_or(0, |w| w.len()),
        }
    }

    /// Normal-form string of `e` (`1` for the identity of word kinds).
    pub fn format(&self, e: &Element) -> String {
        match (&self.kind, e) {
            (MonoidKind::Naturals, Element::Exponents(x)) => x[0].to_string(),
            (MonoidKind::Finite { monoid, .. }, &Element::Finite(i)) => monoid.names()[i].clone(),
            (MonoidKind::Product(l, r), Element::Pair(x, y)) => format!("({},{})", l.format(x), r.format(y)),
            _ => match self.word(e) {
                Some(w) => format_word(&self.labels, &w),
                None => format!("{e:?}"),
            },
        }
    }

    /// Reads an element from its string form, or from any word over `Σ`.
    pub fn parse(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        match &self.kind {
            MonoidKind::Naturals => text
                .parse::<u64>()
                .map(|n| Element::Exponents(vec![n]))
                .map_err(|_| Error::Parse(format!("`{text}` is not a natural number"))),
            MonoidKind::Finite { monoid, .. } => match monoid.index_of(text) {
                Some(i) => Ok(Element::Finite(i)),
                None => self.normalize(&tokenize(&self.labels, text)?),
            },
            MonoidKind::Product(l, r) => {
                let inner = text
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("`{text}` is not a pair (x,y)")))?;
                let mut depth = 0i32;
                let comma = inner
                    .char_indices()
                    .find(|&(_, c)| {
                        match c {
                            '(' => depth += 1,
                            ')' => depth -= 1,
                            _ => {}
                        }
                        c == ',' && depth == 0
                    })
                    .map(|(i, _)| i)
                    .ok_or_else(|| Error::Parse(format!("`{text}` is not a pair (x,y)")))?;
                Ok(Element::Pair(
                    Box::new(l.parse(&inner[..comma])?),
                    Box::new(r.parse(&inner[comma + 1..])?),
                ))
            }
            _ => self.normalize(&tokenize(&self.labels, text)?),
        }
    }

    pub fn parse_all<S: AsRef<str>>(&self, texts: &[S]) -> Result<Vec<Element>> {
        texts.iter().map(|t| self.parse(t.as_ref())).collect()
    }

    /// Breadth-first distances from `1_M` along right multiplication by
    /// generators, for all elements within `r` steps.
    pub fn ball_distances(&self, r: usize) -> Result<BTreeMap<Element, usize>> {
        let gens = self.generators();
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        let one = self.identity();
        dist.insert(one.clone(), 0);
        queue.push_back(one);
        while let Some(s) = queue.pop_front() {
            let d = dist[&s];
            if d == r {
                continue;
            }
            for g in &gens {
                let t = self.multiply_unchecked(&s, g)?;
                if !dist.contains_key(&t) {
                    if dist.len() >= self.ball_limit {
                        return Err(budget("ball enumeration", dist.len() as u128 + 1, self.ball_limit as u128));
                    }
                    dist.insert(t.clone(), d + 1);
                    queue.push_back(t);
                }
            }
        }
        Ok(dist)
    }

    /// `B_r(1_M)` in shortlex order.
    pub fn elements_ball(&self, r: usize) -> Result<Vec<Element>> {
        Ok(self.ball_distances(r)?.into_keys().collect())
    }

    /// Smallest `r` with every target inside `B_r(1_M)`, searching up to
    /// `max_radius`.
    pub fn radius_covering(&self, targets: &[Element], max_radius: usize) -> Result<usize> {
        for t in targets {
            self.validate(t)?;
        }
        let dist = self.ball_distances(max_radius)?;
        targets
            .iter()
            .map(|t| {
                dist.get(t).copied().ok_or_else(|| {
                    Error::Precondition(format!(
                        "{} is not within distance {max_radius} of the identity",
                        self.format(t)
                    ))
                })
            })
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// `K ∪ K² ∪ {1}`, sorted and deduplicated.
    pub fn square_closure(&self, k: &[Element]) -> Result<Vec<Element>> {
        let mut out: BTreeSet<Element> = BTreeSet::new();
        out.insert(self.identity());
        for a in k {
            self.validate(a)?;
            out.insert(a.clone());
            for b in k {
                out.insert(self.multiply_unchecked(a, b)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// `{s ∈ Ω : sK ⊂ Ω}`. Candidates are drawn from `Ω`.
    pub fn folner_interior(&self, omega: &[Element], k: &[Element]) -> Result<Vec<Element>> {
        let omega_set: BTreeSet<Element> = omega.iter().cloned().collect();
        for e in omega.iter().chain(k) {
            self.validate(e)?;
        }
        let mut out = Vec::new();
        for s in &omega_set {
            let mut inside = true;
            for t in k {
                if !omega_set.contains(&self.multiply_unchecked(s, t)?) {
                    inside = false;
                    break;
                }
            }
            if inside {
                out.push(s.clone());
            }
        }
        Ok(out)
    }

    /// A handle for the opposite monoid with the same generator labels: the
    /// element written `w` there is the element written `reverse(w)` here.
    pub fn opposite(&self) -> Result<MonoidHandle> {
        let handle = match &self.kind {
            MonoidKind::Free | MonoidKind::FreeCommutative | MonoidKind::Naturals => self.clone(),
            // ⟨p,q : qp = 1⟩ is bicyclic with q in the role of p.
            MonoidKind::Bicyclic => MonoidHandle::bicyclic_with_labels(&self.labels[1], &self.labels[0])?,
            MonoidKind::Finite { monoid, generators } => {
                MonoidHandle::finite(monoid.transpose(), generators.clone(), Some(self.labels.clone()))?
            }
            MonoidKind::Rewriting(rs) => {
                let mut h = MonoidHandle::rewriting(rs.reversed()?)?;
                h.left_cancellative = Cancellativity::Unknown;
                h
            }
            MonoidKind::Product(l, r) => MonoidHandle::product(l.opposite()?, r.opposite()?),
        };
        Ok(handle.with_ball_limit(self.ball_limit))
    }
}
