//! `(K,ε)`-morphisms into `Map(X)`: verification, combinators, the bridges
//! to labeled graphs and the bicyclic certificates.
//!
//! An [`ApproxMap`] stores finitely many assignments `m ↦ φ(m)`; every
//! element without an assignment is sent to `Id_X`. Products `φ(a)φ(b)` are
//! taken in the map's recorded [`Convention`].

mod bicyclic;
mod bridge;
mod combinators;
mod search;

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use bicyclic::{
    bicyclic_chain_certificate, epsilon_star_bicyclic, Certificate, Conclusion, EpsilonStar, EpsilonStarMode,
};
pub use bridge::{
    epsilon_for_delta, graph_to_morphism, graph_to_morphism_with, morphism_to_graph, weiss_from_morphism, Extension,
    GraphToMorphism, MorphismToWeiss,
};
pub use combinators::{adjoin_identity_approx, amplify_approx, normalize_identity, product_approx, AdjoinedApprox};
pub use search::{exhaustive_search, randomized_search, SearchOutcome, SearchStatus};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::monoid::{Element, HandleSpec, MonoidHandle};
use crate::transform::{compose, disagreements, Convention, Transformation};

/// A finite assignment `M → Map(X)`, identity elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxMap {
    handle: MonoidHandle,
    x_size: usize,
    convention: Convention,
    assignments: BTreeMap<Element, Transformation>,
}

/// JSON form; `assignments` is keyed by normal-form strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApproxJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<HandleSpec>,
    pub x_size: usize,
    pub convention: Convention,
    pub assignments: BTreeMap<String, Transformation>,
}

impl ApproxMap {
    pub fn new(handle: MonoidHandle, x_size: usize, convention: Convention) -> Result<Self> {
        if x_size == 0 {
            return Err(Error::Argument("X must be non-empty".into()));
        }
        Ok(ApproxMap {
            handle,
            x_size,
            convention,
            assignments: BTreeMap::new(),
        })
    }

    pub fn from_assignments<I>(handle: MonoidHandle, x_size: usize, convention: Convention, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Element, Transformation)>,
    {
        let mut map = ApproxMap::new(handle, x_size, convention)?;
        for (e, t) in items {
            map.assign(e, t)?;
        }
        Ok(map)
    }

    pub fn assign(&mut self, e: Element, t: Transformation) -> Result<()> {
        self.handle.validate(&e)?;
        if t.domain_size() != self.x_size {
            return Err(Error::Domain(format!(
                "transformation on {} points assigned in a map on {} points",
                t.domain_size(),
                self.x_size
            )));
        }
        self.assignments.insert(e, t);
        Ok(())
    }

    pub fn handle(&self) -> &MonoidHandle {
        &self.handle
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn assignments(&self) -> &BTreeMap<Element, Transformation> {
        &self.assignments
    }

    /// `φ(e)`, defaulting to `Id_X`.
    pub fn image(&self, e: &Element) -> Cow<'_, Transformation> {
        match self.assignments.get(e) {
            Some(t) => Cow::Borrowed(t),
            None => Cow::Owned(Transformation::identity(self.x_size)),
        }
    }

    pub fn to_json(&self) -> ApproxJson {
        ApproxJson {
            monoid: Some(self.handle.to_spec()),
            x_size: self.x_size,
            convention: self.convention,
            assignments: self
                .assignments
                .iter()
                .map(|(e, t)| (self.handle.format(e), t.clone()))
                .collect(),
        }
    }

    /// Rebuilds from JSON. The embedded monoid, if present, wins over
    /// `fallback`; one of the two is required.
    pub fn from_json(json: &ApproxJson, fallback: Option<&MonoidHandle>) -> Result<Self> {
        let handle = match (&json.monoid, fallback) {
            (Some(spec), _) => spec.build()?,
            (None, Some(h)) => h.clone(),
            (None, None) => {
                return Err(Error::Argument("approximation JSON names no monoid; pass one explicitly".into()))
            }
        };
        let mut map = ApproxMap::new(handle, json.x_size, json.convention)?;
        for (key, t) in &json.assignments {
            let e = map.handle.parse(key)?;
            if map.assignments.contains_key(&e) {
                return Err(Error::Validation(format!("element `{key}` assigned twice")));
            }
            map.assign(e, t.clone())?;
        }
        Ok(map)
    }

    pub fn from_json_str(text: &str, fallback: Option<&MonoidHandle>) -> Result<Self> {
        let json: ApproxJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("approximation: {e}")))?;
        Self::from_json(&json, fallback)
    }
}

/// Exact defects of `φ` over a finite `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub k: Vec<String>,
    pub x_size: usize,
    /// `max d(φ(k₁k₂), φ(k₁)φ(k₂))` over ordered pairs of `K`.
    pub max_product_defect: Fraction,
    pub product_argmax: Option<(String, String)>,
    /// `d(φ(1_M), Id_X)`.
    pub identity_defect: Fraction,
    /// `min d(φ(k₁), φ(k₂))` over distinct pairs; `1` when `|K| < 2`.
    pub min_injectivity: Fraction,
    pub injectivity_argmin: Option<(String, String)>,
}

impl DefectReport {
    pub fn defect(&self) -> Fraction {
        self.max_product_defect.max(self.identity_defect)
    }

    pub fn is_morphism(&self, epsilon: Fraction) -> bool {
        self.defect() <= epsilon
    }

    pub fn is_injective(&self, alpha: Fraction) -> bool {
        self.min_injectivity >= alpha
    }

    /// `(K,1−ε)`-injective `(K,ε)`-morphism.
    pub fn passes(&self, epsilon: Fraction) -> bool {
        self.is_morphism(epsilon) && epsilon <= Fraction::ONE && self.is_injective(Fraction::ONE - epsilon)
    }
}

/// Sorted, duplicate-free `K`, validated against the handle.
pub(crate) fn canonical_k(h: &MonoidHandle, k: &[Element]) -> Result<Vec<Element>> {
    for e in k {
        h.validate(e)?;
    }
    Ok(k.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect())
}

pub fn defect_report(phi: &ApproxMap, k: &[Element]) -> Result<DefectReport> {
    let h = phi.handle();
    let k = canonical_k(h, k)?;
    let n = phi.x_size() as u128;
    let images: Vec<Cow<'_, Transformation>> = k.iter().map(|e| phi.image(e)).collect();

    let mut product: Option<(usize, usize, usize)> = None;
    for (i, a) in k.iter().enumerate() {
        for (j, b) in k.iter().enumerate() {
            let ab = h.multiply(a, b)?;
            let composed = compose(&images[i], &images[j], phi.convention())?;
            let c = disagreements(&phi.image(&ab), &composed)?;
            if product.is_none_or(|(best, _, _)| c > best) {
                product = Some((c, i, j));
            }
        }
    }
    let mut injectivity: Option<(usize, usize, usize)> = None;
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            let c = disagreements(&images[i], &images[j])?;
            if injectivity.is_none_or(|(best, _, _)| c < best) {
                injectivity = Some((c, i, j));
            }
        }
    }
    let one = h.identity();
    let id_count = disagreements(&phi.image(&one), &Transformation::identity(phi.x_size()))?;
    let name = |i: usize| h.format(&k[i]);
    Ok(DefectReport {
        k: k.iter().map(|e| h.format(e)).collect(),
        x_size: phi.x_size(),
        max_product_defect: Fraction::new(product.map_or(0, |(c, _, _)| c) as u128, n),
        product_argmax: product.map(|(_, i, j)| (name(i), name(j))),
        identity_defect: Fraction::new(id_count as u128, n),
        min_injectivity: injectivity.map_or(Fraction::ONE, |(c, _, _)| Fraction::new(c as u128, n)),
        injectivity_argmin: injectivity.map(|(_, i, j)| (name(i), name(j))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{builtin_handle, FiniteMonoid};

    fn z5_left_regular() -> ApproxMap {
        let h = builtin_handle("cyclic:5").unwrap();
        let reps = FiniteMonoid::cyclic_group(5).unwrap().left_regular_embedding();
        ApproxMap::from_assignments(
            h,
            5,
            Convention::Standard,
            reps.into_iter().enumerate().map(|(i, t)| (Element::Finite(i), t)),
        )
        .unwrap()
    }

    #[test]
    fn exact_morphism_has_zero_defect() {
        let phi = z5_left_regular();
        let k = phi.handle().elements_ball(4).unwrap();
        let rep = defect_report(&phi, &k).unwrap();
        assert_eq!(rep.max_product_defect, Fraction::ZERO);
        assert_eq!(rep.identity_defect, Fraction::ZERO);
        assert_eq!(rep.min_injectivity, Fraction::ONE);
        assert!(rep.passes(Fraction::ZERO));
    }

    #[test]
    fn all_identity_map_collapses() {
        let h = MonoidHandle::bicyclic();
        let phi = ApproxMap::new(h.clone(), 2, Convention::Standard).unwrap();
        let k = h.parse_all(&["1", "p", "q", "qp"]).unwrap();
        let rep = defect_report(&phi, &k).unwrap();
        assert_eq!(rep.defect(), Fraction::ZERO);
        assert_eq!(rep.min_injectivity, Fraction::ZERO);
        assert_eq!(rep.injectivity_argmin, Some(("1".into(), "p".into())));
        let single = defect_report(&phi, &k[..1]).unwrap();
        assert_eq!(single.min_injectivity, Fraction::ONE);
    }

    #[test]
    fn json_round_trip() {
        let phi = z5_left_regular();
        let json = serde_json::to_string(&phi.to_json()).unwrap();
        let back = ApproxMap::from_json_str(&json, None).unwrap();
        assert_eq!(back, phi);
        let bare = r#"{"x_size":3,"convention":"diagrammatic","assignments":{"qp":[0,0,2],"p":[1,1,1]}}"#;
        let b = ApproxMap::from_json_str(bare, Some(&MonoidHandle::bicyclic())).unwrap();
        assert_eq!(b.image(&b.handle().parse("qp").unwrap()).images(), &[0, 0, 2]);
        assert!(b.image(&b.handle().identity()).is_identity());
        assert!(ApproxMap::from_json_str(bare, None).is_err());
        let bad = r#"{"x_size":2,"convention":"standard","assignments":{"p":[0,0,0]}}"#;
        assert!(ApproxMap::from_json_str(bad, Some(&MonoidHandle::bicyclic())).is_err());
        let dup = r#"{"x_size":1,"convention":"standard","assignments":{"pq":[0],"1":[0]}}"#;
        assert!(ApproxMap::from_json_str(dup, Some(&MonoidHandle::bicyclic())).is_err());
    }
}
