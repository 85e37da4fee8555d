mod common;

use common::{map_strategy, parity_strategy, ring_xy};
use mfcert::supermod::{Parity, ParityMap, SuperModule};
use proptest::prelude::*;

fn module(e: usize, o: usize, name: &str) -> SuperModule {
    SuperModule::with_ranks(&ring_xy(), e, o, name)
}

fn composable_triple() -> impl Strategy<Value = (ParityMap, ParityMap, ParityMap)> {
    (0..3usize, 0..3usize, 0..3usize, 0..3usize, parity_strategy(), parity_strategy(), parity_strategy())
        .prop_flat_map(|(a, b, c, d, p, q, s)| {
            let m0 = module(a, b, "a");
            let m1 = module(b, c, "b");
            let m2 = module(c, d, "c");
            let m3 = module(d, a, "d");
            (map_strategy(m0, m1.clone(), p), map_strategy(m1, m2.clone(), q), map_strategy(m2, m3, s))
        })
}

fn tensor_pairs() -> impl Strategy<Value = (ParityMap, ParityMap, ParityMap, ParityMap)> {
    (0..3usize, 0..3usize, 0..2usize, 1..3usize, parity_strategy(), parity_strategy(), parity_strategy(), parity_strategy())
        .prop_flat_map(|(a, b, c, d, pf, pg, pf2, pg2)| {
            let u = module(a, b, "u");
            let v = module(c, d, "v");
            (
                map_strategy(u.clone(), u.clone(), pf),
                map_strategy(v.clone(), v.clone(), pg),
                map_strategy(u.clone(), u, pf2),
                map_strategy(v.clone(), v, pg2),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_associative((f, g, h) in composable_triple()) {
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left.parity(), f.parity() + g.parity() + h.parity());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tensor_interchange_sign((f, g, f2, g2) in tensor_pairs()) {
        let lhs = f.tensor(&g).unwrap().compose(&f2.tensor(&g2).unwrap()).unwrap();
        let mut rhs = f.compose(&f2).unwrap().tensor(&g.compose(&g2).unwrap()).unwrap();
        if g.parity().sign_with(f2.parity()) < 0 {
            rhs = rhs.neg();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_and_dual_involutions((f, _g, _h) in composable_triple()) {
        prop_assert_eq!(f.shift().shift(), f.clone());
        prop_assert_eq!(f.dual().dual(), f.clone());
        let shifted = f.shift();
        prop_assert_eq!(shifted.block(Parity::Even), f.block(Parity::Odd));
        prop_assert_eq!(f.shift().source().ranks(), (f.source().ranks().1, f.source().ranks().0));
    }

    #[test]
    fn dual_reverses_composition((f, g, _h) in composable_triple()) {
        let lhs = g.compose(&f).unwrap().dual();
        let rhs = f.dual().compose(&g.dual()).unwrap();
        prop_assert_eq!(lhs.to_full(), rhs.to_full());
    }
}
