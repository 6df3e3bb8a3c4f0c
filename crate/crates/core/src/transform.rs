//! Self-maps of a finite set `{0, .., n-1}` and the Hamming metric on them.
//!
//! Products of sets are indexed in lexicographic mixed-radix order: the tuple
//! `(x_1, .., x_p)` over radices `(n_1, .., n_p)` has index
//! `((x_1 * n_2 + x_2) * n_3 + x_3) ...`, so the first coordinate is the most
//! significant digit. Amplification and products both use this order.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{budget, Error, Result};
use crate::fraction::Fraction;

/// Largest point set a product or amplification may build.
pub const MAX_POINTS: usize = 1 << 24;

/// Order in which `compose(f, g, ..)` applies its arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `(f g)(x) = f(g(x))`: the right factor acts first.
    Standard,
    /// `(f g)(x) = g(f(x))`: the left factor acts first (`x^{fg} = (x^f)^g`).
    Diagrammatic,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Standard => "standard",
            Convention::Diagrammatic => "diagrammatic",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Convention::Standard),
            "diagrammatic" => Ok(Convention::Diagrammatic),
            other => Err(Error::Parse(format!("unknown convention `{other}`"))),
        }
    }
}

/// A total map `{0..n-1} -> {0..n-1}`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Transformation {
    images: Vec<u32>,
}

impl Transformation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::Domain("a transformation needs a non-empty domain".into()));
        }
        if let Some((x, &y)) = images.iter().enumerate().find(|(_, &y)| y as usize >= n) {
            return Err(Error::Domain(format!(
                "image {y} of point {x} is outside the domain of size {n}"
            )));
        }
        Ok(Transformation { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity on an empty set");
        Transformation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn constant(n: usize, value: u32) -> Self {
        assert!((value as usize) < n, "constant value outside domain");
        Transformation {
            images: vec![value; n],
        }
    }

    /// The `index`-th map of `{0..n-1}` in lexicographic order of image
    /// sequences (first image most significant).
    pub fn from_index(n: usize, mut index: u64) -> Self {
        let mut images = vec![0u32; n];
        for slot in images.iter_mut().rev() {
            *slot = (index % n as u64) as u32;
            index /= n as u64;
        }
        Transformation { images }
    }

    /// Inverse of [`Transformation::from_index`].
    pub fn index(&self) -> u64 {
        let n = self.images.len() as u64;
        self.images.iter().fold(0u64, |acc, &y| acc * n + y as u64)
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<u32>::deserialize(deserializer)?;
        Transformation::new(images).map_err(serde::de::Error::custom)
    }
}

fn check_sizes(f: &Transformation, g: &Transformation) -> Result<()> {
    if f.domain_size() != g.domain_size() {
        return Err(Error::Domain(format!(
            "domain sizes differ: {} vs {}",
            f.domain_size(),
            g.domain_size()
        )));
    }
    Ok(())
}

pub fn compose(f: &Transformation, g: &Transformation, convention: Convention) -> Result<Transformation> {
    check_sizes(f, g)?;
    let (first, second) = match convention {
        Convention::Standard => (g, f),
        Convention::Diagrammatic => (f, g),
    };
    Ok(Transformation {
        images: first
            .images
            .iter()
            .map(|&x| second.images[x as usize])
            .collect(),
    })
}

/// Number of points where `f` and `g` disagree.
pub fn disagreements(f: &Transformation, g: &Transformation) -> Result<usize> {
    check_sizes(f, g)?;
    Ok(f.images
        .iter()
        .zip(&g.images)
        .filter(|(a, b)| a != b)
        .count())
}

/// Normalized Hamming distance `|{x : f(x) != g(x)}| / n`.
pub fn hamming(f: &Transformation, g: &Transformation) -> Result<Fraction> {
    let count = disagreements(f, g)?;
    Ok(Fraction::new(count as u128, f.domain_size() as u128))
}

pub fn fixed_point_count(f: &Transformation) -> usize {
    f.images
        .iter()
        .enumerate()
        .filter(|(x, &y)| *x == y as usize)
        .count()
}

/// Hamming distance to the identity, `1 - fixed/n`.
pub fn distance_to_identity(f: &Transformation) -> Fraction {
    let n = f.domain_size();
    Fraction::new((n - fixed_point_count(f)) as u128, n as u128)
}

fn checked_points(radices: impl IntoIterator<Item = usize>) -> Result<usize> {
    let mut total: u128 = 1;
    for r in radices {
        total = total.saturating_mul(r as u128);
        if total > MAX_POINTS as u128 {
            return Err(budget("product point set", total, MAX_POINTS as u128));
        }
    }
    Ok(total as usize)
}

/// Coordinate-wise action of `f` on `X^power`.
pub fn diagonal_amplify(f: &Transformation, power: u32) -> Result<Transformation> {
    if power == 0 {
        return Err(Error::Argument("amplification power must be positive".into()));
    }
    let factors = vec![f.clone(); power as usize];
    product_combine(&factors)
}

/// The map `(x_1, .., x_p) -> (f_1(x_1), .., f_p(x_p))` on the product set.
pub fn product_combine(fs: &[Transformation]) -> Result<Transformation> {
    if fs.is_empty() {
        return Err(Error::Argument("product of an empty sequence".into()));
    }
    let total = checked_points(fs.iter().map(Transformation::domain_size))?;
    // images[i] for the product is built digit by digit, most significant first.
    let mut images: Vec<u32> = vec![0];
    for f in fs {
        let n = f.domain_size() as u32;
        let mut next = Vec::with_capacity(images.len() * n as usize);
        for &prefix in &images {
            for x in 0..n {
                next.push(prefix * n + f.images[x as usize]);
            }
        }
        images = next;
    }
    debug_assert_eq!(images.len(), total);
    Ok(Transformation { images })
}

/// All `n^n` maps of `{0..n-1}` in lexicographic order.
pub fn all_maps(n: usize) -> Result<Vec<Transformation>> {
    let count = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > MAX_POINTS as u128 {
        return Err(budget("enumeration of Map(X)", count, MAX_POINTS as u128));
    }
    Ok((0..count as u64).map(|i| Transformation::from_index(n, i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[u32]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_images() {
        assert!(Transformation::new(vec![]).is_err());
        assert!(Transformation::new(vec![0, 2]).is_err());
        assert!(serde_json::from_str::<Transformation>("[0,3,1]").is_err());
        let f: Transformation = serde_json::from_str("[1,0,2]").unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), "[1,0,2]");
    }

    #[test]
    fn compose_examples() {
        let id = Transformation::identity(3);
        let h = t(&[2, 2, 0]);
        for c in [Convention::Standard, Convention::Diagrammatic] {
            assert_eq!(compose(&id, &h, c).unwrap(), h);
            assert_eq!(compose(&h, &id, c).unwrap(), h);
        }
        let const0 = Transformation::constant(3, 0);
        let cycle = t(&[1, 2, 0]);
        assert_eq!(compose(&const0, &cycle, Convention::Standard).unwrap(), const0);
        assert_eq!(
            compose(&const0, &cycle, Convention::Diagrammatic).unwrap(),
            Transformation::constant(3, 1)
        );
        assert!(compose(&const0, &Transformation::identity(2), Convention::Standard).is_err());
    }

    #[test]
    fn hamming_examples() {
        let swap = t(&[1, 0]);
        assert_eq!(hamming(&swap, &swap).unwrap(), Fraction::ZERO);
        assert_eq!(hamming(&Transformation::identity(2), &swap).unwrap(), Fraction::ONE);
        assert_eq!(
            hamming(&Transformation::constant(3, 0), &Transformation::identity(3)).unwrap(),
            Fraction::new(2, 3)
        );
        assert!(hamming(&swap, &Transformation::identity(3)).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(fixed_point_count(&Transformation::identity(4)), 4);
        assert_eq!(fixed_point_count(&Transformation::constant(3, 0)), 1);
        assert_eq!(fixed_point_count(&t(&[1, 0])), 0);
        assert_eq!(distance_to_identity(&Transformation::constant(3, 0)), Fraction::new(2, 3));
    }

    #[test]
    fn amplify_examples() {
        assert_eq!(
            diagonal_amplify(&Transformation::identity(3), 3).unwrap(),
            Transformation::identity(27)
        );
        let swap = t(&[1, 0]);
        let sq = diagonal_amplify(&swap, 2).unwrap();
        assert_eq!(sq.images(), &[3, 2, 1, 0]);
        // d(f, g) = 1/2 on two points
        let f = t(&[0, 0]);
        let g = t(&[0, 1]);
        let d = hamming(&diagonal_amplify(&f, 2).unwrap(), &diagonal_amplify(&g, 2).unwrap()).unwrap();
        assert_eq!(d, Fraction::new(3, 4));
        assert!(diagonal_amplify(&swap, 0).is_err());
        assert!(matches!(
            diagonal_amplify(&Transformation::identity(10), 8),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn product_examples() {
        let h = t(&[2, 0, 0]);
        assert_eq!(product_combine(std::slice::from_ref(&h)).unwrap(), h);
        assert_eq!(
            product_combine(&[Transformation::identity(2), Transformation::identity(3)]).unwrap(),
            Transformation::identity(6)
        );
        let p = product_combine(&[t(&[1, 0]), Transformation::constant(3, 0)]).unwrap();
        assert_eq!(hamming(&p, &Transformation::identity(6)).unwrap(), Fraction::ONE);
        assert!(product_combine(&[]).is_err());
    }

    #[test]
    fn product_uses_mixed_radix_order() {
        // (x1, x2) over radices (2, 3) has index 3*x1 + x2.
        let p = product_combine(&[t(&[1, 0]), t(&[1, 2, 0])]).unwrap();
        for x1 in 0..2u32 {
            for x2 in 0..3u32 {
                let want = 3 * (1 - x1) + (x2 + 1) % 3;
                assert_eq!(p.apply((3 * x1 + x2) as usize) as u32, want);
            }
        }
    }

    #[test]
    fn index_round_trip_and_order() {
        let maps = all_maps(3).unwrap();
        assert_eq!(maps.len(), 27);
        assert_eq!(maps[0], Transformation::constant(3, 0));
        assert_eq!(maps[26], Transformation::constant(3, 2));
        assert!(maps.windows(2).all(|w| w[0] < w[1]));
        for (i, m) in maps.iter().enumerate() {
            assert_eq!(m.index(), i as u64);
        }
    }
}
