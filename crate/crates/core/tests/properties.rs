use proptest::prelude::*;
use twosegal::algebra::{characteristic_embedding_failures, convolve, hall_algebra, FnOnBasis, Rational};
use twosegal::category::{Morphism, PartialCategory};
use twosegal::generators::{nerve, quiver_partial_category, Quiver};
use twosegal::segal::{category_roundtrip, check_2segal, check_segal, check_unitality};
use twosegal::SimplicialSet;

const TOP: usize = 3;

/// Cayley tables with the unit at index 0.
fn tables() -> Vec<Vec<Vec<usize>>> {
    let cyclic = |k: usize| (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
    let klein = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    // maps {0,1} -> {0,1}: id, const 0, const 1, swap; (f, g) -> g after f
    let maps = [[0, 1], [0, 0], [1, 1], [1, 0]];
    let trans = (0..4)
        .map(|f| {
            (0..4)
                .map(|g| {
                    let h = [maps[g][maps[f][0]], maps[g][maps[f][1]]];
                    maps.iter().position(|m| *m == h).unwrap()
                })
                .collect()
        })
        .collect();
    vec![cyclic(2), cyclic(3), cyclic(4), klein, trans]
}

/// The restriction of a monoid to a subset containing the unit, keeping
/// only products that land in the subset, when that is a partial category.
fn restricted(table: &[Vec<usize>], keep: u8) -> Option<PartialCategory> {
    let elems: Vec<usize> = (0..table.len()).filter(|&a| a == 0 || keep & (1 << a) != 0).collect();
    let morphisms = elems
        .iter()
        .map(|a| Morphism {
            name: format!("m{a}"),
            src: 0,
            tgt: 0,
        })
        .collect();
    let mut comps = Vec::new();
    for (fi, &f) in elems.iter().enumerate() {
        for (gi, &g) in elems.iter().enumerate() {
            if let Some(hi) = elems.iter().position(|&h| h == table[f][g]) {
                comps.push((gi, fi, hi));
            }
        }
    }
    PartialCategory::new(vec!["*".into()], morphisms, comps, vec![0]).ok()
}

fn monoid_strategy() -> impl Strategy<Value = PartialCategory> {
    (0..tables().len(), any::<u8>()).prop_filter_map("not a partial category", |(t, keep)| restricted(&tables()[t], keep))
}

fn quiver_strategy() -> impl Strategy<Value = PartialCategory> {
    (1usize..=3)
        .prop_flat_map(|nv| (Just(nv), prop::collection::vec((0..nv, 0..nv), 0..=3)))
        .prop_map(|(nv, edges)| {
            let q = Quiver {
                vertices: (0..nv).map(|v| format!("v{v}")).collect(),
                edges: edges.into_iter().enumerate().map(|(i, (s, t))| (format!("e{i}"), s, t)).collect(),
            };
            quiver_partial_category(&q).unwrap()
        })
}

fn category_strategy() -> impl Strategy<Value = PartialCategory> {
    prop_oneof![monoid_strategy(), quiver_strategy()]
}

fn function(s: &SimplicialSet, seed: &[i8]) -> FnOnBasis {
    FnOnBasis(
        (0..s.level_size(1))
            .map(|i| Rational::new(seed[i % seed.len()].into(), (1 + i as i64 % 3).into()))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nerves_are_unital_two_segal(c in category_strategy()) {
        let s = nerve(&c, TOP).unwrap();
        prop_assert!(s.validate_identities().is_clean());
        prop_assert!(check_2segal(&s).unwrap().holds());
        prop_assert!(check_unitality(&s).unwrap().holds());
        prop_assert_eq!(check_segal(&s).unwrap().holds(), c.is_total());
    }

    #[test]
    fn nerves_give_back_their_category(c in category_strategy()) {
        let s = nerve(&c, TOP).unwrap();
        prop_assert!(matches!(category_roundtrip(&s), Ok(Ok(_))));
    }

    #[test]
    fn hall_algebras_of_nerves_satisfy_the_axioms(c in category_strategy()) {
        let s = nerve(&c, TOP).unwrap();
        let h = hall_algebra(&s).unwrap();
        prop_assert!(h.verify_axioms().holds());
        prop_assert!(characteristic_embedding_failures(&s, &h).unwrap().is_empty());
    }

    #[test]
    fn convolution_is_associative_and_unital(
        c in category_strategy(),
        a in prop::collection::vec(-3i8..=3, 1..5),
        b in prop::collection::vec(-3i8..=3, 1..5),
        d in prop::collection::vec(-3i8..=3, 1..5),
    ) {
        let s = nerve(&c, TOP).unwrap();
        let (f, g, k) = (function(&s, &a), function(&s, &b), function(&s, &d));
        let fg_k = convolve(&s, &convolve(&s, &f, &g).unwrap(), &k).unwrap();
        let f_gk = convolve(&s, &f, &convolve(&s, &g, &k).unwrap()).unwrap();
        prop_assert_eq!(fg_k, f_gk);
        let h = hall_algebra(&s).unwrap();
        let unit = FnOnBasis(h.unit.iter().map(|&u| Rational::from_integer(u.into())).collect());
        prop_assert_eq!(&convolve(&s, &unit, &f).unwrap(), &f);
        prop_assert_eq!(&convolve(&s, &f, &unit).unwrap(), &f);
    }
}

#[test]
fn restrictions_include_proper_partial_monoids() {
    let z4 = &tables()[2];
    let c = restricted(z4, 0b0010).unwrap();
    assert_eq!(c.morphisms().len(), 2);
    assert!(!c.is_total());
    let partial = (0..=u8::MAX)
        .filter_map(|k| restricted(z4, k))
        .filter(|c| !c.is_total())
        .count();
    assert!(partial > 1);
}
