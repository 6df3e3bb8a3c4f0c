use std::collections::BTreeSet;

use super::{canonical_k, defect_report, ApproxMap, DefectReport};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::monoid::{adjoin_identity, Element, FiniteSemigroup, MonoidHandle};
use crate::transform::{diagonal_amplify, product_combine, Convention, Transformation};

/// Replaces `φ(1_M)` by `Id_X`.
///
/// The input must be a `(K,1−ε/2)`-injective `(K,ε/2)`-morphism; the output
/// is checked to be a `(K,1−ε)`-injective `(K,ε)`-morphism.
pub fn normalize_identity(phi: &ApproxMap, k: &[Element], epsilon: Fraction) -> Result<ApproxMap> {
    if epsilon > Fraction::ONE {
        return Err(Error::Argument(format!("ε = {epsilon} exceeds 1")));
    }
    let half = epsilon / Fraction::from_integer(2);
    let before = defect_report(phi, k)?;
    if !before.passes(half) {
        return Err(Error::Contract(format!(
            "input is not a (K,1-ε/2)-injective (K,ε/2)-morphism for ε/2 = {half}: defect {}, injectivity {}",
            before.defect(),
            before.min_injectivity
        )));
    }
    let mut out = phi.clone();
    let one = out.handle().identity();
    out.assign(one, Transformation::identity(out.x_size()))?;
    let after = defect_report(&out, k)?;
    if !after.passes(epsilon) {
        return Err(Error::Contract(format!(
            "normalized map fails (K,ε) verification at ε = {epsilon}: defect {}, injectivity {}",
            after.defect(),
            after.min_injectivity
        )));
    }
    Ok(out)
}

/// `ψ = Δ ∘ φ` on `X^power`.
pub fn amplify_approx(phi: &ApproxMap, power: u32) -> Result<ApproxMap> {
    if power == 0 {
        return Err(Error::Argument("amplification power must be positive".into()));
    }
    let x_size = (phi.x_size() as u128)
        .checked_pow(power)
        .filter(|&n| n <= crate::transform::MAX_POINTS as u128)
        .ok_or_else(|| {
            crate::error::budget(
                "amplified domain",
                (phi.x_size() as u128).saturating_pow(power),
                crate::transform::MAX_POINTS as u128,
            )
        })? as usize;
    let items = phi
        .assignments()
        .iter()
        .map(|(e, t)| Ok((e.clone(), diagonal_amplify(t, power)?)))
        .collect::<Result<Vec<_>>>()?;
    ApproxMap::from_assignments(phi.handle().clone(), x_size, phi.convention(), items)
}

/// `φ(m₁,m₂) = φ₁(m₁) × φ₂(m₂)` on `X₁ × X₂`, an approximation of
/// `M₁ × M₂`. Assigned on pairs from `(dom φ₁ ∪ {1}) × (dom φ₂ ∪ {1})`.
pub fn product_approx(phi1: &ApproxMap, phi2: &ApproxMap) -> Result<ApproxMap> {
    if phi1.convention() != phi2.convention() {
        return Err(Error::Domain(format!(
            "cannot combine {} and {} approximations",
            phi1.convention(),
            phi2.convention()
        )));
    }
    let handle = MonoidHandle::product(phi1.handle().clone(), phi2.handle().clone());
    let domain = |phi: &ApproxMap| -> Vec<Element> {
        let mut d: BTreeSet<Element> = phi.assignments().keys().cloned().collect();
        d.insert(phi.handle().identity());
        d.into_iter().collect()
    };
    let (d1, d2) = (domain(phi1), domain(phi2));
    let x_size = phi1
        .x_size()
        .checked_mul(phi2.x_size())
        .filter(|&n| n <= crate::transform::MAX_POINTS)
        .ok_or_else(|| {
            crate::error::budget(
                "product domain",
                phi1.x_size() as u128 * phi2.x_size() as u128,
                crate::transform::MAX_POINTS as u128,
            )
        })?;
    let mut items = Vec::with_capacity(d1.len() * d2.len());
    for a in &d1 {
        for b in &d2 {
            let t = product_combine(&[phi1.image(a).into_owned(), phi2.image(b).into_owned()])?;
            items.push((Element::Pair(Box::new(a.clone()), Box::new(b.clone())), t));
        }
    }
    ApproxMap::from_assignments(handle, x_size, phi1.convention(), items)
}

/// The explicit approximation of `M(S) = S ∪ {1}` and its layout.
#[derive(Debug, Clone)]
pub struct AdjoinedApprox {
    pub approx: ApproxMap,
    pub report: DefectReport,
    /// `Y = K ∪ K²`, occupying points `0..|Y|`.
    pub y: Vec<Element>,
    /// The sink point `y₀ = |Y|`.
    pub y0: usize,
    /// `|Z|`; `Z` occupies the last `|Z|` points.
    pub z_size: usize,
    /// `|Z|/|X|`, the guaranteed bound on both defect and injectivity.
    pub bound: Fraction,
    pub verified: bool,
}

/// Builds `φ: M(S) → Map(X)` with `X = Y ∪ {y₀} ∪ Z`, `Y = K ∪ K²`,
/// `|Z| = ⌈(1−ε)(|Y|+1)/ε⌉`, `φ(1) = Id` and for `s ∈ S`:
/// `φ(s)x = s` if `s ∈ Y, x ∈ Z`; `sx` if `s, x, sx ∈ Y`; `y₀` otherwise.
///
/// Composition is [`Convention::Standard`]. `K = None` means `K = M(S)`.
pub fn adjoin_identity_approx(s: &FiniteSemigroup, k: Option<&[Element]>, epsilon: Fraction) -> Result<AdjoinedApprox> {
    if epsilon.is_zero() || epsilon >= Fraction::ONE {
        return Err(Error::Argument(format!("ε = {epsilon} must lie in (0, 1)")));
    }
    let monoid = adjoin_identity(s);
    let handle = MonoidHandle::finite(monoid.clone(), (0..s.size()).collect(), Some(s.names().to_vec()))?;
    let all: Vec<Element> = (0..monoid.size()).map(Element::Finite).collect();
    let k = canonical_k(&handle, k.unwrap_or(&all))?;
    let y: Vec<Element> = {
        let mut set: BTreeSet<Element> = k.iter().cloned().collect();
        for a in &k {
            for b in &k {
                set.insert(handle.multiply(a, b)?);
            }
        }
        set.into_iter().collect()
    };
    let idx = |e: &Element| match e {
        Element::Finite(i) => *i,
        _ => unreachable!("finite handle"),
    };
    let mut point = vec![None; monoid.size()];
    for (pos, e) in y.iter().enumerate() {
        point[idx(e)] = Some(pos);
    }
    let y0 = y.len();
    let z_size = ((epsilon.complement() * Fraction::from_integer(y.len() as u128 + 1)) / epsilon).ceil() as usize;
    let x_size = y.len() + 1 + z_size;
    let mut items = vec![(Element::Finite(monoid.identity()), Transformation::identity(x_size))];
    for si in 0..s.size() {
        let images = (0..x_size)
            .map(|x| {
                let Some(s_pos) = point[si] else {
                    return y0 as u32;
                };
                if x > y0 {
                    s_pos as u32
                } else if x < y0 {
                    let sx = monoid.mul(si, idx(&y[x]));
                    point[sx].unwrap_or(y0) as u32
                } else {
                    y0 as u32
                }
            })
            .collect();
        items.push((Element::Finite(si), Transformation::new(images)?));
    }
    let approx = ApproxMap::from_assignments(handle, x_size, Convention::Standard, items)?;
    let report = defect_report(&approx, &k)?;
    let bound = Fraction::new(z_size as u128, x_size as u128);
    let verified = report.passes(epsilon) && report.defect() <= bound.complement() && report.is_injective(bound);
    Ok(AdjoinedApprox {
        approx,
        report,
        y,
        y0,
        z_size,
        bound,
        verified,
    })
}
