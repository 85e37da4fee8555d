#![allow(dead_code)]

use mfcert::algebra::{Monomial, Poly, Ring, Scalar, ScalarField};
use mfcert::supermod::{Parity, ParityMap, PolyMatrix, SuperModule};
use proptest::prelude::*;

pub fn ring_xy() -> Ring {
    Ring::new(ScalarField::rationals(), &["x", "y"]).unwrap()
}

pub fn poly_from_terms(ring: &Ring, terms: &[(Vec<u32>, i64)]) -> Poly {
    let mut p = ring.zero();
    for (e, c) in terms {
        let t = Poly::monomial(ring, Monomial::from_exponents(e), Scalar::from_int(ring.field(), *c));
        p.add_assign_ref(&t);
    }
    p
}

/// Small integer polynomials in the ring's variables.
pub fn poly_strategy(ring: Ring, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -3i64..=3), 0..=max_terms)
        .prop_map(move |terms| {
            let terms: Vec<_> = terms
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
                .collect();
            poly_from_terms(&ring, &terms)
        })
}

pub fn matrix_strategy(ring: Ring, rows: usize, cols: usize) -> impl Strategy<Value = PolyMatrix> {
    let r2 = ring.clone();
    prop::collection::vec(poly_strategy(ring, 2, 2), rows * cols).prop_map(move |data| {
        let rows_v = data.chunks(cols.max(1)).take(rows).map(<[Poly]>::to_vec).collect();
        PolyMatrix::from_rows(&r2, if cols == 0 { vec![vec![]; rows] } else { rows_v }, cols)
            .unwrap()
    })
}

pub fn map_strategy(
    source: SuperModule,
    target: SuperModule,
    parity: Parity,
) -> impl Strategy<Value = ParityMap> {
    let ring = source.ring().clone();
    let (se, so) = source.ranks();
    let te = target.rank(parity);
    let to = target.rank(parity.flip());
    (matrix_strategy(ring.clone(), te, se), matrix_strategy(ring, to, so)).prop_map(
        move |(a, b)| ParityMap::new(&source, &target, parity, a, b).unwrap(),
    )
}

pub fn parity_strategy() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}
