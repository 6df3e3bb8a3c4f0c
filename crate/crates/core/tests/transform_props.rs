use proptest::prelude::*;
use sofic_core::transform::{
    all_maps, compose, diagonal_amplify, distance_to_identity, fixed_point_count, hamming, product_combine,
    Convention, Transformation,
};
use sofic_core::Fraction;

const CONVENTIONS: [Convention; 2] = [Convention::Standard, Convention::Diagrammatic];

fn map_on(n: usize) -> impl Strategy<Value = Transformation> {
    prop::collection::vec(0..n as u32, n).prop_map(|v| Transformation::new(v).unwrap())
}

fn sized_map(max: usize) -> impl Strategy<Value = Transformation> {
    (1..=max).prop_flat_map(map_on)
}

fn triple(max: usize) -> impl Strategy<Value = (Transformation, Transformation, Transformation)> {
    (1..=max).prop_flat_map(|n| (map_on(n), map_on(n), map_on(n)))
}

fn pair(max: usize) -> impl Strategy<Value = (Transformation, Transformation)> {
    (1..=max).prop_flat_map(|n| (map_on(n), map_on(n)))
}

// naive count, independent of the library
fn naive_distance(f: &Transformation, g: &Transformation) -> Fraction {
    let n = f.domain_size();
    let diff = (0..n).filter(|&x| f.apply(x) != g.apply(x)).count();
    Fraction::new(diff as u128, n as u128)
}

fn naive_compose(f: &Transformation, g: &Transformation, c: Convention) -> Transformation {
    let n = f.domain_size();
    let images = (0..n)
        .map(|x| match c {
            Convention::Standard => f.apply(g.apply(x)),
            Convention::Diagrammatic => g.apply(f.apply(x)),
        } as u32)
        .collect();
    Transformation::new(images).unwrap()
}

#[test]
fn metric_axioms_exhaustive_small() {
    for n in 1..=3 {
        let maps = all_maps(n).unwrap();
        for f in &maps {
            for g in &maps {
                let d = hamming(f, g).unwrap();
                assert_eq!(d, hamming(g, f).unwrap());
                assert_eq!(d.is_zero(), f == g);
                assert!(d <= Fraction::ONE);
                for h in &maps {
                    assert!(hamming(f, h).unwrap() <= d + hamming(g, h).unwrap());
                }
            }
        }
    }
}

#[test]
fn lemma_exhaustive_n3() {
    let maps = all_maps(3).unwrap();
    let id = Transformation::identity(3);
    let mut pairs = 0;
    for f in &maps {
        for g in &maps {
            for c in CONVENTIONS {
                let fg = compose(f, g, c).unwrap();
                let gf = compose(g, f, c).unwrap();
                assert_eq!(hamming(&fg, &id).unwrap(), hamming(&gf, &id).unwrap());
                assert_eq!(fixed_point_count(&fg), fixed_point_count(&gf));
            }
            pairs += 1;
        }
    }
    assert_eq!(pairs, 729);
}

#[test]
fn all_maps_is_lexicographic() {
    let maps = all_maps(3).unwrap();
    assert_eq!(maps[0].images(), &[0, 0, 0]);
    assert_eq!(maps[1].images(), &[0, 0, 1]);
    assert_eq!(maps[26].images(), &[2, 2, 2]);
    assert!(maps.windows(2).all(|w| w[0].images() < w[1].images()));
    for (i, m) in maps.iter().enumerate() {
        assert_eq!(m.index(), i as u64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn metric_axioms((f, g, h) in triple(16)) {
        let d = hamming(&f, &g).unwrap();
        prop_assert_eq!(d, naive_distance(&f, &g));
        prop_assert_eq!(d, hamming(&g, &f).unwrap());
        prop_assert_eq!(d.is_zero(), f == g);
        prop_assert!(d <= Fraction::ONE);
        prop_assert!(hamming(&f, &h).unwrap() <= d + hamming(&g, &h).unwrap());
    }

    #[test]
    fn compose_matches_pointwise((f, g, h) in triple(10)) {
        let id = Transformation::identity(f.domain_size());
        for c in CONVENTIONS {
            let fg = compose(&f, &g, c).unwrap();
            prop_assert_eq!(&fg, &naive_compose(&f, &g, c));
            prop_assert_eq!(
                compose(&fg, &h, c).unwrap(),
                compose(&f, &compose(&g, &h, c).unwrap(), c).unwrap()
            );
            prop_assert_eq!(compose(&f, &id, c).unwrap(), f.clone());
            prop_assert_eq!(compose(&id, &f, c).unwrap(), f.clone());
        }
    }

    #[test]
    fn lemma_and_trace((f, g) in pair(12)) {
        let id = Transformation::identity(f.domain_size());
        for c in CONVENTIONS {
            let fg = compose(&f, &g, c).unwrap();
            let gf = compose(&g, &f, c).unwrap();
            prop_assert_eq!(naive_distance(&fg, &id), naive_distance(&gf, &id));
            prop_assert_eq!(distance_to_identity(&fg), distance_to_identity(&gf));
            prop_assert_eq!(fixed_point_count(&fg), fixed_point_count(&gf));
        }
    }

    #[test]
    fn product_formula(pairs in prop::collection::vec(pair(6), 1..=4)) {
        let (fs, gs): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let pf = product_combine(&fs).unwrap();
        let pg = product_combine(&gs).unwrap();
        let expected = fs
            .iter()
            .zip(&gs)
            .fold(Fraction::ONE, |acc, (f, g)| acc * hamming(f, g).unwrap().complement())
            .complement();
        prop_assert_eq!(naive_distance(&pf, &pg), expected);
        prop_assert_eq!(hamming(&pf, &pg).unwrap(), expected);
    }

    #[test]
    fn product_is_lexicographic(fs in prop::collection::vec(sized_map(4), 1..=3)) {
        let p = product_combine(&fs).unwrap();
        let radices: Vec<usize> = fs.iter().map(Transformation::domain_size).collect();
        for x in 0..p.domain_size() {
            let mut rest = x;
            let mut digits = vec![0; fs.len()];
            for i in (0..fs.len()).rev() {
                digits[i] = rest % radices[i];
                rest /= radices[i];
            }
            let image = digits
                .iter()
                .zip(&fs)
                .zip(&radices)
                .fold(0, |acc, ((&d, f), &r)| acc * r + f.apply(d));
            prop_assert_eq!(p.apply(x), image);
        }
    }

    #[test]
    fn amplification_formula((f, g) in pair(5), power in 1u32..=3) {
        let d = hamming(&f, &g).unwrap();
        let amplified = hamming(&diagonal_amplify(&f, power).unwrap(), &diagonal_amplify(&g, power).unwrap()).unwrap();
        prop_assert_eq!(amplified, d.complement().pow(power).complement());
    }
}
