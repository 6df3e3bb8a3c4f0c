use std::collections::BTreeSet;

use proptest::prelude::*;
use sofic_core::monoid::{
    adjoin_identity, builtin_handle, format_word, full_map_monoid, Cancellativity, Element, FiniteMonoid,
    FiniteSemigroup, MonoidHandle, RewriteSystem,
};
use sofic_core::transform::{compose, Convention};
use sofic_core::Error;

fn pq_system() -> RewriteSystem {
    RewriteSystem::from_strings(vec!["p".into(), "q".into()], &[("pq".into(), "".into())]).unwrap()
}

fn word(max: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..2, 0..=max)
}

// normal forms of every word of length ≤ r, via rewriting only
fn naive_ball(rs: &RewriteSystem, r: usize) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..=r {
        let mut next = Vec::new();
        for w in &layer {
            out.insert(rs.normalize(w).unwrap());
            for c in 0..2 {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

#[test]
fn bicyclic_ball_sizes() {
    let b = MonoidHandle::bicyclic();
    let rs = pq_system();
    for r in 0..=8 {
        let ball = b.elements_ball(r).unwrap();
        assert_eq!(ball.len(), (r + 1) * (r + 2) / 2, "r = {r}");
        let oracle: BTreeSet<String> = naive_ball(&rs, r).iter().map(|w| format_word(rs.alphabet(), w)).collect();
        let ours: BTreeSet<String> = ball.iter().map(|e| b.format(e)).collect();
        assert_eq!(ours, oracle);
    }
}

#[test]
fn regular_embeddings_are_morphisms() {
    for conv in [Convention::Standard, Convention::Diagrammatic] {
        let (m, _) = full_map_monoid(3, conv).unwrap();
        assert_eq!(m.size(), 27);
        let left = m.left_regular_embedding();
        let right = m.right_regular_embedding();
        for x in 0..m.size() {
            for y in 0..m.size() {
                let xy = m.mul(x, y);
                assert_eq!(left[xy], compose(&left[x], &left[y], Convention::Standard).unwrap());
                assert_eq!(right[xy], compose(&right[x], &right[y], Convention::Diagrammatic).unwrap());
            }
        }
    }
}

#[test]
fn adjoined_identity_is_neutral() {
    let semigroups = [
        FiniteSemigroup::trivial_idempotent(),
        FiniteSemigroup::left_zero(3),
        FiniteSemigroup::right_zero(4),
    ];
    for s in &semigroups {
        let m = adjoin_identity(s);
        assert_eq!(m.size(), s.size() + 1);
        assert_eq!(m.identity(), s.size());
        for x in 0..s.size() {
            assert_eq!(m.mul(m.identity(), x), x);
            assert_eq!(m.mul(x, m.identity()), x);
            for y in 0..s.size() {
                assert_eq!(m.mul(x, y), s.mul(x, y));
            }
        }
    }
}

#[test]
fn cancellativity_flags() {
    for n in 1..=6 {
        let g = FiniteMonoid::cyclic_group(n).unwrap();
        assert!(g.is_left_cancellative() && g.is_right_cancellative());
    }
    // {1, a, b} with a and b left zeros: rows of a and b are constant
    let m = FiniteMonoid::from_table(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0).unwrap();
    assert!(!m.is_left_cancellative());
    let h = MonoidHandle::finite(m, vec![1, 2], None).unwrap();
    assert_eq!(h.left_cancellative(), Cancellativity::No);
    assert_eq!(MonoidHandle::bicyclic().left_cancellative(), Cancellativity::No);
    assert_eq!(MonoidHandle::naturals().left_cancellative(), Cancellativity::Yes);
}

#[test]
fn non_associative_table_is_rejected() {
    // (1·1)·2 = 2 but 1·(1·2) = 1
    let table = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
    match FiniteMonoid::from_table(table, 0) {
        Err(Error::NotAssociative { .. }) => {}
        other => panic!("expected an associativity failure, got {other:?}"),
    }
}

fn opposite_cases() -> Vec<(MonoidHandle, Vec<&'static str>)> {
    let rs = RewriteSystem::from_strings(
        vec!["a".into(), "b".into()],
        &[("ba".into(), "ab".into()), ("bbb".into(), "".into())],
    )
    .unwrap();
    vec![
        (MonoidHandle::bicyclic(), vec!["1", "p", "q", "qp", "qqp", "ppp"]),
        (builtin_handle("full-map:3").unwrap(), vec!["t", "c", "e", "tc", "ce"]),
        (MonoidHandle::rewriting(rs).unwrap(), vec!["a", "b", "ab", "bb", "aab"]),
        (
            MonoidHandle::product(builtin_handle("cyclic:3").unwrap(), MonoidHandle::bicyclic()),
            vec!["(1,qp)", "(2,p)", "(1,q)"],
        ),
    ]
}

#[test]
fn opposite_is_an_involution() {
    for (h, samples) in opposite_cases() {
        let op = h.opposite().unwrap();
        let back = op.opposite().unwrap();
        for x in &samples {
            for y in &samples {
                let direct = h.format(&h.multiply(&h.parse(x).unwrap(), &h.parse(y).unwrap()).unwrap());
                let twice = back.format(&back.multiply(&back.parse(x).unwrap(), &back.parse(y).unwrap()).unwrap());
                assert_eq!(direct, twice, "{} {x}·{y}", h.kind_name());
            }
        }
    }
}

#[test]
fn opposite_reverses_finite_products() {
    let h = builtin_handle("full-map:3").unwrap();
    let op = h.opposite().unwrap();
    let elements: Vec<Element> = (0..27).map(Element::Finite).collect();
    for x in &elements {
        for y in &elements {
            assert_eq!(op.multiply(x, y).unwrap(), h.multiply(y, x).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn closed_form_matches_rewriting(u in word(12), v in word(12)) {
        let b = MonoidHandle::bicyclic();
        let rs = pq_system();
        let product = b.multiply(&b.normalize(&u).unwrap(), &b.normalize(&v).unwrap()).unwrap();
        let mut uv = u.clone();
        uv.extend(&v);
        prop_assert_eq!(b.format(&product), format_word(rs.alphabet(), &rs.normalize(&uv).unwrap()));
    }

    #[test]
    fn normalize_is_idempotent(w in word(20)) {
        let rs = RewriteSystem::from_strings(
            vec!["a".into(), "b".into()],
            &[("ba".into(), "ab".into()), ("bbb".into(), "".into())],
        )
        .unwrap();
        for system in [pq_system(), rs] {
            let nf = system.normalize(&w).unwrap();
            prop_assert!(system.is_normal(&nf));
            prop_assert_eq!(system.normalize(&nf).unwrap(), nf);
        }
        let b = MonoidHandle::bicyclic();
        let e = b.normalize(&w).unwrap();
        prop_assert_eq!(b.normalize(&b.word(&e).unwrap()).unwrap(), e);
    }

    #[test]
    fn multiplication_is_associative(u in word(8), v in word(8), w in word(8)) {
        let b = MonoidHandle::bicyclic();
        let (x, y, z) = (b.normalize(&u).unwrap(), b.normalize(&v).unwrap(), b.normalize(&w).unwrap());
        let left = b.multiply(&b.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = b.multiply(&x, &b.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(b.multiply(&x, &b.identity()).unwrap(), x.clone());
        prop_assert_eq!(b.multiply(&b.identity(), &x).unwrap(), x);
    }
}
