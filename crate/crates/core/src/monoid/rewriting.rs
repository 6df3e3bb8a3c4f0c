//! Length-lex reducing string rewriting systems.
//!
//! Normalization is leftmost-innermost: the redex whose right end comes
//! first is rewritten, and among redexes ending at the same position the
//! shortest one wins (ties go to the earlier rule). Every rule must be
//! length-lex reducing, so normalization terminates; a step budget still
//! guards against pathological inputs.

use crate::error::{Error, Result};

pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;

pub type Word = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// Shortlex comparison: shorter words first, then lexicographic on letters.
pub fn shortlex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn is_reducing(rule: &Rule) -> bool {
    shortlex_cmp(&rule.rhs, &rule.lhs).is_lt()
}

/// An overlap or inclusion of two left-hand sides and the two one-step
/// reducts it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub rules: (usize, usize),
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
    pub left_normal: Word,
    pub right_normal: Word,
}

impl CriticalPair {
    pub fn is_joinable(&self) -> bool {
        self.left_normal == self.right_normal
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    alphabet: Vec<String>,
    rules: Vec<Rule>,
    step_limit: usize,
}

impl RewriteSystem {
    pub fn new(alphabet: Vec<String>, rules: Vec<Rule>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::Validation("empty alphabet".into()));
        }
        let mut sorted = alphabet.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) || alphabet.iter().any(String::is_empty) {
            return Err(Error::Validation("alphabet letters must be distinct and non-empty".into()));
        }
        let k = alphabet.len() as u32;
        for (i, rule) in rules.iter().enumerate() {
            if rule.lhs.is_empty() {
                return Err(Error::Validation(format!("rule {i} has an empty left-hand side")));
            }
            if rule.lhs.iter().chain(&rule.rhs).any(|&c| c >= k) {
                return Err(Error::Validation(format!("rule {i} uses a letter outside the alphabet")));
            }
            if !is_reducing(rule) {
                return Err(Error::Validation(format!(
                    "rule {i} is not length-lex reducing"
                )));
            }
        }
        Ok(RewriteSystem {
            alphabet,
            rules,
            step_limit: DEFAULT_STEP_LIMIT,
        })
    }

    /// Rules given as strings over the alphabet, e.g. `("pq", "")`.
    pub fn from_strings(alphabet: Vec<String>, rules: &[(String, String)]) -> Result<Self> {
        let parsed = rules
            .iter()
            .map(|(l, r)| {
                Ok(Rule {
                    lhs: tokenize(&alphabet, l)?,
                    rhs: tokenize(&alphabet, r)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RewriteSystem::new(alphabet, parsed)
    }

    pub fn with_step_limit(mut self, limit: usize) -> Self {
        self.step_limit = limit;
        self
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn step_limit(&self) -> usize {
        self.step_limit
    }

    /// The normal form of `word`.
    pub fn normalize(&self, word: &[u32]) -> Result<Word> {
        if let Some(&c) = word.iter().find(|&&c| c as usize >= self.alphabet.len()) {
            return Err(Error::Domain(format!("letter index {c} outside the alphabet")));
        }
        // `done` is always irreducible; rewriting pushes the right-hand side
        // back in front of the unread input.
        let mut done: Word = Vec::with_capacity(word.len());
        let mut pending: Vec<u32> = word.iter().rev().copied().collect();
        let mut steps = 0usize;
        while let Some(c) = pending.pop() {
            done.push(c);
            if let Some(rule) = self.redex_at_end(&done) {
                steps += 1;
                if steps > self.step_limit {
                    return Err(Error::NonTermination {
                        steps: self.step_limit,
                    });
                }
                done.truncate(done.len() - rule.lhs.len());
                pending.extend(rule.rhs.iter().rev());
            }
        }
        Ok(done)
    }

    fn redex_at_end(&self, word: &[u32]) -> Option<&Rule> {
        self.rules
            .iter()
            .filter(|r| word.ends_with(&r.lhs))
            .min_by_key(|r| r.lhs.len())
    }

    pub fn is_normal(&self, word: &[u32]) -> bool {
        !self
            .rules
            .iter()
            .any(|r| word.windows(r.lhs.len()).any(|w| w == r.lhs.as_slice()))
    }

    /// All overlaps and inclusions between left-hand sides.
    pub fn critical_pairs(&self) -> Result<Vec<CriticalPair>> {
        let mut out = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let (li, lj) = (&ri.lhs, &rj.lhs);
                // proper overlap: a suffix of li equals a prefix of lj
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] == lj[..k] {
                        let mut overlap = li.clone();
                        overlap.extend_from_slice(&lj[k..]);
                        let mut left = ri.rhs.clone();
                        left.extend_from_slice(&lj[k..]);
                        let mut right = li[..li.len() - k].to_vec();
                        right.extend_from_slice(&rj.rhs);
                        out.push(self.pair((i, j), overlap, left, right)?);
                    }
                }
                // inclusion: lj occurs inside li
                if i != j && lj.len() <= li.len() {
                    for t in 0..=li.len() - lj.len() {
                        if li[t..t + lj.len()] == lj[..] {
                            let mut right = li[..t].to_vec();
                            right.extend_from_slice(&rj.rhs);
                            right.extend_from_slice(&li[t + lj.len()..]);
                            out.push(self.pair((i, j), li.clone(), ri.rhs.clone(), right)?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn pair(&self, rules: (usize, usize), overlap: Word, left: Word, right: Word) -> Result<CriticalPair> {
        let left_normal = self.normalize(&left)?;
        let right_normal = self.normalize(&right)?;
        Ok(CriticalPair {
            rules,
            overlap,
            left,
            right,
            left_normal,
            right_normal,
        })
    }

    /// Critical pairs whose reducts have different normal forms. Empty means
    /// the system is locally confluent (and, being terminating, confluent).
    pub fn confluence_violations(&self) -> Result<Vec<CriticalPair>> {
        Ok(self
            .critical_pairs()?
            .into_iter()
            .filter(|p| !p.is_joinable())
            .collect())
    }

    /// The presentation of the opposite monoid: every rule word reversed and
    /// re-oriented so it stays length-lex reducing. Rules that become
    /// trivial are dropped.
    pub fn reversed(&self) -> Result<Self> {
        let rules = self
            .rules
            .iter()
            .filter_map(|r| {
                let l: Word = r.lhs.iter().rev().copied().collect();
                let rr: Word = r.rhs.iter().rev().copied().collect();
                match shortlex_cmp(&rr, &l) {
                    std::cmp::Ordering::Less => Some(Rule { lhs: l, rhs: rr }),
                    std::cmp::Ordering::Greater => Some(Rule { lhs: rr, rhs: l }),
                    std::cmp::Ordering::Equal => None,
                }
            })
            .collect();
        Ok(RewriteSystem::new(self.alphabet.clone(), rules)?.with_step_limit(self.step_limit))
    }

    pub fn format_word(&self, word: &[u32]) -> String {
        format_word(&self.alphabet, word)
    }
}

/// Splits `text` into letters by greedy longest match. `1` and the empty
/// string denote the empty word unless `1` is itself a letter; `.` and
/// whitespace may separate letters.
pub fn tokenize(alphabet: &[String], text: &str) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() || (text == "1" && !alphabet.iter().any(|a| a == "1")) {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..alphabet.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(alphabet[i].len()));
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        if let Some(stripped) = rest.strip_prefix(['.', ' ', '\t']) {
            rest = stripped;
            continue;
        }
        let hit = order
            .iter()
            .find(|&&i| rest.starts_with(alphabet[i].as_str()))
            .ok_or_else(|| Error::Parse(format!("cannot read `{rest}` as letters of {alphabet:?}")))?;
        out.push(*hit as u32);
        rest = &rest[alphabet[*hit].len()..];
    }
    Ok(out)
}

/// Concatenated letters, `.`-separated when some letter is longer than one
/// character; the empty word prints as `1`.
pub fn format_word(alphabet: &[String], word: &[u32]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let sep = if alphabet.iter().all(|a| a.chars().count() == 1) { "" } else { "." };
    word.iter()
        .map(|&c| alphabet[c as usize].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}
