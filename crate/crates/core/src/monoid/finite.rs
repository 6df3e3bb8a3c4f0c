//! Finite monoids and semigroups given by multiplication tables.

use crate::error::{budget, Error, Result};
use crate::transform::{all_maps, compose, Convention, Transformation};

fn validate_square(table: &[Vec<usize>]) -> Result<usize> {
    let m = table.len();
    if m == 0 {
        return Err(Error::Validation("empty multiplication table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != m {
            return Err(Error::Validation(format!(
                "row {i} has {} entries, expected {m}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&e| e >= m) {
            return Err(Error::Validation(format!("entry {bad} in row {i} is out of range")));
        }
    }
    Ok(m)
}

fn flatten(table: &[Vec<usize>]) -> Vec<usize> {
    table.iter().flatten().copied().collect()
}

/// First triple `(x, y, z)` in lexicographic order with `(xy)z != x(yz)`.
fn associativity_witness(size: usize, cells: &[usize]) -> Option<(usize, usize, usize)> {
    let mul = |a: usize, b: usize| cells[a * size + b];
    for x in 0..size {
        for y in 0..size {
            let xy = mul(x, y);
            for z in 0..size {
                if mul(xy, z) != mul(x, mul(y, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

fn default_semigroup_names(size: usize) -> Vec<String> {
    if size <= 26 {
        (0..size).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..size).map(|i| format!("s{i}")).collect()
    }
}

fn check_names(names: &[String], size: usize) -> Result<()> {
    if names.len() != size {
        return Err(Error::Validation(format!(
            "{} names given for {size} elements",
            names.len()
        )));
    }
    let mut sorted: Vec<&String> = names.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Validation("element names must be distinct".into()));
    }
    if names.iter().any(|n| n.is_empty()) {
        return Err(Error::Validation("element names must be non-empty".into()));
    }
    Ok(())
}

/// An associative table without a required identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    cells: Vec<usize>,
    names: Vec<String>,
}

impl FiniteSemigroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let size = validate_square(&table)?;
        let cells = flatten(&table);
        if let Some((x, y, z)) = associativity_witness(size, &cells) {
            return Err(Error::NotAssociative { x, y, z });
        }
        Ok(FiniteSemigroup {
            size,
            cells,
            names: default_semigroup_names(size),
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        check_names(&names, self.size)?;
        self.names = names;
        Ok(self)
    }

    /// `xy = x` for all `x, y`.
    pub fn left_zero(size: usize) -> Self {
        let table = (0..size).map(|x| vec![x; size]).collect();
        FiniteSemigroup::from_table(table).expect("left-zero table is associative")
    }

    /// `xy = y` for all `x, y`.
    pub fn right_zero(size: usize) -> Self {
        let table = (0..size).map(|_| (0..size).collect()).collect();
        FiniteSemigroup::from_table(table).expect("right-zero table is associative")
    }

    /// The one-element semigroup `{a}` with `a^2 = a`.
    pub fn trivial_idempotent() -> Self {
        FiniteSemigroup::from_table(vec![vec![0]]).expect("trivial table")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.size + y]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.size).map(<[usize]>::to_vec).collect()
    }
}

/// A finite monoid: an associative table with a two-sided identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    cells: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

impl FiniteMonoid {
    /// Validates shape, range, identity and associativity (exhaustively).
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let size = validate_square(&table)?;
        if identity >= size {
            return Err(Error::Validation(format!("identity index {identity} out of range")));
        }
        if let Some(x) = (0..size).find(|&x| table[identity][x] != x || table[x][identity] != x) {
            return Err(Error::Validation(format!(
                "element {identity} is not an identity: fails on element {x}"
            )));
        }
        let cells = flatten(&table);
        if let Some((x, y, z)) = associativity_witness(size, &cells) {
            return Err(Error::NotAssociative { x, y, z });
        }
        let names = (0..size)
            .map(|i| if i == identity { "1".to_string() } else { format!("e{i}") })
            .collect();
        Ok(FiniteMonoid {
            size,
            cells,
            identity,
            names,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        check_names(&names, self.size)?;
        self.names = names;
        Ok(self)
    }

    pub fn trivial() -> Self {
        FiniteMonoid::from_table(vec![vec![0]], 0).expect("trivial monoid")
    }

    /// `Z/n` with identity `0`, element `k` named `k`.
    pub fn cyclic_group(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        FiniteMonoid::from_table(table, 0)?.with_names((0..n).map(|k| k.to_string()).collect())
    }

    /// Direct product with pairs `(x, y)` indexed `x * |other| + y`.
    pub fn direct_product(&self, other: &FiniteMonoid) -> Result<Self> {
        let (m, k) = (self.size, other.size);
        if m.saturating_mul(k) > 4096 {
            return Err(budget("direct product table", (m * k) as u128, 4096));
        }
        let table = (0..m * k)
            .map(|a| {
                (0..m * k)
                    .map(|b| self.mul(a / k, b / k) * k + other.mul(a % k, b % k))
                    .collect()
            })
            .collect();
        let names = (0..m * k)
            .map(|a| format!("({},{})", self.names[a / k], other.names[a % k]))
            .collect();
        FiniteMonoid::from_table(table, self.identity * k + other.identity)?.with_names(names)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.size + y]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// The opposite monoid: the transposed table.
    pub fn transpose(&self) -> Self {
        let size = self.size;
        let mut cells = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                cells[x * size + y] = self.mul(y, x);
            }
        }
        FiniteMonoid {
            size,
            cells,
            identity: self.identity,
            names: self.names.clone(),
        }
    }

    /// True iff every left multiplication `t -> s t` is injective.
    pub fn is_left_cancellative(&self) -> bool {
        (0..self.size).all(|s| {
            let mut seen = vec![false; self.size];
            (0..self.size).all(|t| !std::mem::replace(&mut seen[self.mul(s, t)], true))
        })
    }

    pub fn is_right_cancellative(&self) -> bool {
        self.transpose().is_left_cancellative()
    }

    /// `m -> L_m` with `L_m(x) = m x`; a morphism for [`Convention::Standard`].
    pub fn left_regular_embedding(&self) -> Vec<Transformation> {
        (0..self.size)
            .map(|m| {
                let row = (0..self.size).map(|x| self.mul(m, x) as u32).collect();
                Transformation::new(row).expect("row entries are in range")
            })
            .collect()
    }

    /// `m -> R_m` with `R_m(x) = x m`; a morphism for [`Convention::Diagrammatic`].
    pub fn right_regular_embedding(&self) -> Vec<Transformation> {
        (0..self.size)
            .map(|m| {
                let col = (0..self.size).map(|x| self.mul(x, m) as u32).collect();
                Transformation::new(col).expect("column entries are in range")
            })
            .collect()
    }
}

/// `M = S ∪ {1}`; the new identity gets index `|S|` and the name `1`.
pub fn adjoin_identity(s: &FiniteSemigroup) -> FiniteMonoid {
    let n = s.size();
    let one = n;
    let table = (0..=n)
        .map(|x| {
            (0..=n)
                .map(|y| match (x == one, y == one) {
                    (true, _) => y,
                    (_, true) => x,
                    _ => s.mul(x, y),
                })
                .collect()
        })
        .collect();
    let mut names = s.names().to_vec();
    let identity_name = if names.iter().any(|n| n == "1") { "1_M" } else { "1" };
    names.push(identity_name.to_string());
    FiniteMonoid::from_table(table, one)
        .and_then(|m| m.with_names(names))
        .expect("adjoining an identity to a semigroup yields a monoid")
}

/// The monoid `Map({0..n-1})` of all self-maps, elements in lexicographic
/// order of their image sequences, multiplied with the given convention.
/// Element names are the concatenated images (`"01"` is the identity on two points).
pub fn full_map_monoid(n: usize, convention: Convention) -> Result<(FiniteMonoid, Vec<Transformation>)> {
    if n == 0 {
        return Err(Error::Argument("Map(X) needs a non-empty X".into()));
    }
    if n > 4 {
        return Err(budget("full map monoid (n^n elements)", (n as u128).pow(n as u32), 256));
    }
    let maps = all_maps(n)?;
    let table = maps
        .iter()
        .map(|f| {
            maps.iter()
                .map(|g| compose(f, g, convention).expect("same size").index() as usize)
                .collect()
        })
        .collect();
    let identity = Transformation::identity(n).index() as usize;
    let names = maps
        .iter()
        .map(|f| f.images().iter().map(|y| y.to_string()).collect::<String>())
        .collect();
    let monoid = FiniteMonoid::from_table(table, identity)?.with_names(names)?;
    Ok((monoid, maps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idempotent_pair() -> FiniteMonoid {
        // {1, a} with a^2 = a; index 0 = 1, index 1 = a
        FiniteMonoid::from_table(vec![vec![0, 1], vec![1, 1]], 0).unwrap()
    }

    #[test]
    fn from_table_examples() {
        let t = FiniteMonoid::from_table(vec![vec![0]], 0).unwrap();
        assert_eq!(t.size(), 1);
        assert_eq!(idempotent_pair().mul(1, 1), 1);
        // xy = x except 1 is neutral is fine; break associativity on purpose
        let bad = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]];
        match FiniteMonoid::from_table(bad, 0) {
            Err(Error::NotAssociative { x, y, z }) => {
                let t = [[0, 1, 2], [1, 2, 1], [2, 2, 2]];
                assert_ne!(t[t[x][y]][z], t[x][t[y][z]]);
            }
            other => panic!("expected associativity witness, got {other:?}"),
        }
        assert!(matches!(
            FiniteMonoid::from_table(vec![vec![0, 1], vec![1, 1]], 1),
            Err(Error::Validation(_))
        ));
        assert!(FiniteMonoid::from_table(vec![vec![0, 1]], 0).is_err());
        assert!(FiniteMonoid::from_table(vec![vec![0, 2], vec![1, 0]], 0).is_err());
    }

    #[test]
    fn full_map_monoid_examples() {
        let (m1, _) = full_map_monoid(1, Convention::Standard).unwrap();
        assert_eq!(m1.size(), 1);
        let (m2, maps) = full_map_monoid(2, Convention::Diagrammatic).unwrap();
        assert_eq!(m2.size(), 4);
        let names: Vec<_> = m2.names().to_vec();
        assert_eq!(names, ["00", "01", "10", "11"]);
        assert_eq!(maps[m2.identity()], Transformation::identity(2));
        // c0 then swap is c1 in the diagrammatic product
        let (c0, swap, c1) = (0, 2, 3);
        assert_eq!(m2.mul(c0, swap), c1);
        let (m2s, _) = full_map_monoid(2, Convention::Standard).unwrap();
        assert_eq!(m2s.mul(c0, swap), c0);
        let (m3, _) = full_map_monoid(3, Convention::Standard).unwrap();
        assert_eq!(m3.size(), 27);
        assert!(full_map_monoid(5, Convention::Standard).is_err());
    }

    #[test]
    fn cancellativity_examples() {
        assert!(FiniteMonoid::cyclic_group(5).unwrap().is_left_cancellative());
        assert!(!idempotent_pair().is_left_cancellative());
        let (m2, _) = full_map_monoid(2, Convention::Standard).unwrap();
        assert!(!m2.is_left_cancellative());
    }

    #[test]
    fn left_regular_examples() {
        assert_eq!(
            FiniteMonoid::trivial().left_regular_embedding(),
            vec![Transformation::identity(1)]
        );
        let z3 = FiniteMonoid::cyclic_group(3).unwrap().left_regular_embedding();
        assert_eq!(z3[0].images(), &[0, 1, 2]);
        assert_eq!(z3[1].images(), &[1, 2, 0]);
        assert_eq!(z3[2].images(), &[2, 0, 1]);
        let e = idempotent_pair().left_regular_embedding();
        assert_eq!(e[1], Transformation::constant(2, 1));
    }

    #[test]
    fn regular_embeddings_are_morphisms() {
        let (m3, _) = full_map_monoid(3, Convention::Standard).unwrap();
        let left = m3.left_regular_embedding();
        let right = m3.right_regular_embedding();
        for x in 0..m3.size() {
            for y in 0..m3.size() {
                let xy = m3.mul(x, y);
                assert_eq!(left[xy], compose(&left[x], &left[y], Convention::Standard).unwrap());
                assert_eq!(right[xy], compose(&right[x], &right[y], Convention::Diagrammatic).unwrap());
            }
        }
        let mut distinct = left.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), m3.size());
    }

    #[test]
    fn adjoin_identity_examples() {
        let m = adjoin_identity(&FiniteSemigroup::left_zero(2));
        assert_eq!(m.size(), 3);
        assert_eq!(m.identity(), 2);
        assert_eq!(m.mul(0, 1), 0);
        assert_eq!(m.mul(1, 0), 1);
        let pair = adjoin_identity(&FiniteSemigroup::trivial_idempotent());
        assert_eq!(pair.table(), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(pair.names(), ["a", "1"]);
        let again = FiniteMonoid::from_table(pair.table(), pair.identity()).unwrap();
        assert_eq!(again.table(), pair.table());
    }

    #[test]
    fn adjoined_identity_is_neutral_and_semigroup_embeds() {
        for s in [
            FiniteSemigroup::left_zero(3),
            FiniteSemigroup::right_zero(3),
            FiniteSemigroup::trivial_idempotent(),
        ] {
            let m = adjoin_identity(&s);
            let one = m.identity();
            for x in 0..m.size() {
                assert_eq!(m.mul(one, x), x);
                assert_eq!(m.mul(x, one), x);
            }
            for x in 0..s.size() {
                for y in 0..s.size() {
                    assert_eq!(m.mul(x, y), s.mul(x, y));
                }
            }
        }
    }

    #[test]
    fn transpose_is_the_opposite() {
        let (m, _) = full_map_monoid(2, Convention::Standard).unwrap();
        let op = m.transpose();
        assert!(FiniteMonoid::from_table(op.table(), op.identity()).is_ok());
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(op.mul(x, y), m.mul(y, x));
            }
        }
        assert_eq!(op.transpose(), m);
    }

    #[test]
    fn semigroup_validation() {
        assert!(FiniteSemigroup::from_table(vec![vec![1, 0], vec![0, 0]]).is_err());
        let lz = FiniteSemigroup::left_zero(2);
        assert_eq!(lz.names(), ["a", "b"]);
        assert!(lz.clone().with_names(vec!["x".into(), "x".into()]).is_err());
    }

    #[test]
    fn klein_group_as_direct_product() {
        let z2 = FiniteMonoid::cyclic_group(2).unwrap();
        let v4 = z2.direct_product(&z2).unwrap();
        assert_eq!(v4.size(), 4);
        assert!(v4.is_left_cancellative());
        assert_eq!(v4.names()[3], "(1,1)");
        assert!((0..4).all(|x| v4.mul(x, x) == v4.identity()));
    }
}
