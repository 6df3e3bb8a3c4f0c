//! JSON descriptions and built-in names for monoid handles.

use serde::{Deserialize, Serialize};

use super::rewriting::DEFAULT_STEP_LIMIT;
use super::{format_word, full_map_monoid, FiniteMonoid, FiniteSemigroup, MonoidHandle, MonoidKind, RewriteSystem};
use crate::error::{Error, Result};
use crate::transform::{Convention, Transformation};

/// Serialized form of a [`MonoidHandle`], tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HandleSpec {
    Bicyclic {
        /// `[p, q]` labels; defaults to `["p", "q"]`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<[String; 2]>,
    },
    Naturals,
    Free {
        alphabet: Vec<String>,
    },
    FreeCommutative {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rank: Option<usize>,
    },
    Finite {
        table: Vec<Vec<usize>>,
        identity: usize,
        /// Generator element indices; all non-identity elements if omitted.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Rewriting {
        alphabet: Vec<String>,
        rules: Vec<(String, String)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        step_limit: Option<usize>,
    },
    Product {
        left: Box<HandleSpec>,
        right: Box<HandleSpec>,
    },
}

impl HandleSpec {
    pub fn build(&self) -> Result<MonoidHandle> {
        match self {
            HandleSpec::Bicyclic { alphabet: None } => Ok(MonoidHandle::bicyclic()),
            HandleSpec::Bicyclic { alphabet: Some([p, q]) } => MonoidHandle::bicyclic_with_labels(p, q),
            HandleSpec::Naturals => Ok(MonoidHandle::naturals()),
            HandleSpec::Free { alphabet } => MonoidHandle::free(alphabet.clone()),
            HandleSpec::FreeCommutative { alphabet, rank } => match (alphabet, rank) {
                (Some(a), None) => MonoidHandle::free_commutative(a.clone()),
                (None, Some(k)) => MonoidHandle::free_commutative_rank(*k),
                (Some(a), Some(k)) if a.len() == *k => MonoidHandle::free_commutative(a.clone()),
                _ => Err(Error::Validation(
                    "free_commutative needs `alphabet` or `rank` (consistent if both)".into(),
                )),
            },
            HandleSpec::Finite {
                table,
                identity,
                generators,
                labels,
                names,
            } => {
                let mut monoid = FiniteMonoid::from_table(table.clone(), *identity)?;
                if let Some(names) = names {
                    monoid = monoid.with_names(names.clone())?;
                }
                let generators = generators
                    .clone()
                    .unwrap_or_else(|| (0..monoid.size()).filter(|&i| i != *identity).collect());
                MonoidHandle::finite(monoid, generators, labels.clone())
            }
            HandleSpec::Rewriting {
                alphabet,
                rules,
                step_limit,
            } => {
                let mut rs = RewriteSystem::from_strings(alphabet.clone(), rules)?;
                if let Some(limit) = step_limit {
                    rs = rs.with_step_limit(*limit);
                }
                MonoidHandle::rewriting(rs)
            }
            HandleSpec::Product { left, right } => Ok(MonoidHandle::product(left.build()?, right.build()?)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("monoid spec: {e}")))
    }
}

impl MonoidHandle {
    /// The JSON description that rebuilds this handle.
    pub fn to_spec(&self) -> HandleSpec {
        let word = |alphabet: &[String], w: &[u32]| if w.is_empty() { String::new() } else { format_word(alphabet, w) };
        match self.kind() {
            MonoidKind::Naturals => HandleSpec::Naturals,
            MonoidKind::Free => HandleSpec::Free {
                alphabet: self.labels().to_vec(),
            },
            MonoidKind::FreeCommutative => HandleSpec::FreeCommutative {
                alphabet: Some(self.labels().to_vec()),
                rank: None,
            },
            MonoidKind::Bicyclic => HandleSpec::Bicyclic {
                alphabet: (self.labels() != ["p", "q"]).then(|| [self.labels()[0].clone(), self.labels()[1].clone()]),
            },
            MonoidKind::Finite { monoid, generators } => HandleSpec::Finite {
                table: monoid.table(),
                identity: monoid.identity(),
                generators: Some(generators.clone()),
                labels: Some(self.labels().to_vec()),
                names: Some(monoid.names().to_vec()),
            },
            MonoidKind::Rewriting(rs) => HandleSpec::Rewriting {
                alphabet: rs.alphabet().to_vec(),
                rules: rs
                    .rules()
                    .iter()
                    .map(|r| (word(rs.alphabet(), &r.lhs), word(rs.alphabet(), &r.rhs)))
                    .collect(),
                step_limit: (rs.step_limit() != DEFAULT_STEP_LIMIT).then_some(rs.step_limit()),
            },
            MonoidKind::Product(l, r) => HandleSpec::Product {
                left: Box::new(l.to_spec()),
                right: Box::new(r.to_spec()),
            },
        }
    }
}

/// Resolves a built-in monoid name:
/// `naturals`, `bicyclic`, `idempotent` (`{1,a}`, `a² = a`), `trivial`,
/// `free:a,b,..`, `free-commutative:k`, `cyclic:n`, `full-map:n`.
///
/// `full-map:2` is generated by the swap `a` and the constant `c0`;
/// `full-map:n` for `n ≥ 3` by a transposition `t`, the cycle `c` and the
/// collapse `e` of `1` onto `0`. Full map monoids multiply diagrammatically.
pub fn builtin_handle(name: &str) -> Result<MonoidHandle> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let number = |what: &str| -> Result<usize> {
        arg.ok_or_else(|| Error::Argument(format!("`{head}` needs `:{what}`")))?
            .parse()
            .map_err(|_| Error::Argument(format!("`{name}`: {what} must be a non-negative integer")))
    };
    match head {
        "naturals" => Ok(MonoidHandle::naturals()),
        "bicyclic" => Ok(MonoidHandle::bicyclic()),
        "trivial" => MonoidHandle::finite(FiniteMonoid::trivial(), vec![], Some(vec![])),
        "idempotent" => {
            let m = FiniteMonoid::from_table(vec![vec![0, 1], vec![1, 1]], 0)?
                .with_names(vec!["1".into(), "a".into()])?;
            MonoidHandle::finite(m, vec![1], None)
        }
        "free" => {
            let letters = arg.ok_or_else(|| Error::Argument("`free` needs `:a,b,...`".into()))?;
            MonoidHandle::free(letters.split(',').map(str::to_string).collect())
        }
        "free-commutative" => MonoidHandle::free_commutative_rank(number("rank")?),
        "cyclic" => {
            let n = number("order")?;
            let labels = if n == 1 { Some(vec![]) } else { None };
            let gens = if n == 1 { vec![] } else { vec![1] };
            MonoidHandle::finite(FiniteMonoid::cyclic_group(n)?, gens, labels)
        }
        "full-map" => {
            let n = number("size")?;
            let (monoid, _) = full_map_monoid(n, Convention::Diagrammatic)?;
            let idx = |images: Vec<u32>| Transformation::new(images).expect("valid map").index() as usize;
            let (gens, labels): (Vec<usize>, Vec<&str>) = match n {
                1 => (vec![], vec![]),
                2 => (vec![idx(vec![1, 0]), idx(vec![0, 0])], vec!["a", "c0"]),
                _ => {
                    let mut t: Vec<u32> = (0..n as u32).collect();
                    t.swap(0, 1);
                    let c: Vec<u32> = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
                    let mut e: Vec<u32> = (0..n as u32).collect();
                    e[1] = 0;
                    (vec![idx(t), idx(c), idx(e)], vec!["t", "c", "e"])
                }
            };
            MonoidHandle::finite(monoid, gens, Some(labels.into_iter().map(str::to_string).collect()))
        }
        _ => Err(Error::Argument(format!("unknown built-in monoid `{name}`"))),
    }
}

/// Serialized finite semigroup: a table with optional element names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupSpec {
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl SemigroupSpec {
    pub fn build(&self) -> Result<FiniteSemigroup> {
        let s = FiniteSemigroup::from_table(self.table.clone())?;
        match &self.names {
            Some(names) => s.with_names(names.clone()),
            None => Ok(s),
        }
    }
}

/// `idempotent` (`{a}`, `a² = a`), `left-zero-N`, `right-zero-N`.
pub fn builtin_semigroup(name: &str) -> Result<FiniteSemigroup> {
    let size = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.parse().ok().filter(|&n| n > 0) };
    if name == "idempotent" {
        Ok(FiniteSemigroup::trivial_idempotent())
    } else if let Some(n) = size("left-zero-") {
        Ok(FiniteSemigroup::left_zero(n))
    } else if let Some(n) = size("right-zero-") {
        Ok(FiniteSemigroup::right_zero(n))
    } else {
        Err(Error::Argument(format!("unknown built-in semigroup `{name}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_json_forms() {
        let b = HandleSpec::from_json(r#"{"kind":"bicyclic"}"#).unwrap().build().unwrap();
        assert_eq!(b, MonoidHandle::bicyclic());
        let f = HandleSpec::from_json(r#"{"kind":"finite","table":[[0,1],[1,1]],"identity":0}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(f.labels(), ["e1"]);
        let r = HandleSpec::from_json(r#"{"kind":"rewriting","alphabet":["p","q"],"rules":[["pq",""]]}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(r.format(&r.parse("qppq").unwrap()), "qp");
        assert!(HandleSpec::from_json(r#"{"kind":"nope"}"#).is_err());
    }

    #[test]
    fn spec_round_trips() {
        let spec = HandleSpec::Product {
            left: Box::new(HandleSpec::Naturals),
            right: Box::new(HandleSpec::FreeCommutative {
                alphabet: None,
                rank: Some(2),
            }),
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(HandleSpec::from_json(&json).unwrap(), spec);
        assert_eq!(spec.build().unwrap().generator_count(), 3);
    }

    #[test]
    fn handles_rebuild_from_their_spec() {
        let rs = RewriteSystem::from_strings(
            vec!["a".into(), "b".into()],
            &[("ba".into(), "ab".into()), ("bb".into(), "".into())],
        )
        .unwrap();
        let handles = vec![
            MonoidHandle::bicyclic(),
            MonoidHandle::bicyclic_with_labels("x", "y").unwrap(),
            MonoidHandle::naturals(),
            MonoidHandle::free(vec!["a".into()]).unwrap(),
            MonoidHandle::free_commutative_rank(3).unwrap(),
            builtin_handle("full-map:3").unwrap(),
            MonoidHandle::rewriting(rs).unwrap(),
            MonoidHandle::product(builtin_handle("cyclic:2").unwrap(), MonoidHandle::bicyclic()),
        ];
        for h in handles {
            let json = serde_json::to_string(&h.to_spec()).unwrap();
            assert_eq!(HandleSpec::from_json(&json).unwrap().build().unwrap(), h, "{json}");
        }
    }

    #[test]
    fn builtins() {
        let m = builtin_handle("full-map:2").unwrap();
        assert_eq!(m.labels(), ["a", "c0"]);
        let a = m.parse("a").unwrap();
        assert_eq!(m.format(&a), "10");
        // c0 then a is the constant 1 in the diagrammatic product
        assert_eq!(m.format(&m.parse("c0a").unwrap()), "11");
        assert_eq!(builtin_handle("full-map:3").unwrap().elements_ball(6).unwrap().len(), 27);
        assert_eq!(builtin_handle("cyclic:5").unwrap().elements_ball(4).unwrap().len(), 5);
        assert_eq!(builtin_handle("idempotent").unwrap().elements_ball(1).unwrap().len(), 2);
        assert_eq!(builtin_handle("free:x,y").unwrap().labels(), ["x", "y"]);
        assert!(builtin_handle("cyclic").is_err());
        assert!(builtin_handle("whatever").is_err());
        assert_eq!(builtin_semigroup("right-zero-3").unwrap().size(), 3);
        assert!(builtin_semigroup("left-zero-0").is_err());
    }
}
