mod common;

use common::{poly_strategy, ring_xy};
use mfcert::algebra::{cyclotomic_field, roots_of_unity, Poly, Ring, Scalar};
use proptest::prelude::*;

proptest! {
    #[test]
    fn ring_axioms(a in poly_strategy(ring_xy(), 3, 4),
                   b in poly_strategy(ring_xy(), 3, 4),
                   c in poly_strategy(ring_xy(), 3, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_divide_inverts_multiplication(q in poly_strategy(ring_xy(), 3, 4),
                                           s in poly_strategy(ring_xy(), 3, 4)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&q * &s).exact_divide(&q).unwrap(), s);
    }

    #[test]
    fn text_round_trip(p in poly_strategy(ring_xy(), 4, 6)) {
        let r = ring_xy();
        prop_assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }
}

#[test]
fn roots_of_unity_orthogonality() {
    for r in 1..=12u32 {
        let field = cyclotomic_field(r).unwrap();
        let roots = roots_of_unity(&field, r).unwrap();
        assert_eq!(roots.len(), r as usize);
        for k in 0..=r {
            let mut sum = Scalar::zero(&field);
            for xi in &roots {
                sum = &sum + &xi.pow(k);
            }
            let expected = if k % r == 0 { r as i64 } else { 0 };
            assert_eq!(sum, Scalar::from_int(&field, expected), "r={r} k={k}");
        }
        for xi in &roots {
            assert!(xi.pow(r).is_one());
        }
        // Product of (t - xi) is t^r - 1.
        let ring = Ring::new(field.clone(), &["t"]).unwrap();
        let t = ring.var("t").unwrap();
        let prod = roots
            .iter()
            .fold(ring.one(), |acc: Poly, xi| &acc * &(&t - &ring.constant(xi.clone())));
        assert_eq!(prod, &t.pow(r) - &ring.one());
    }
}

#[test]
fn cyclotomic_coefficients_round_trip() {
    let field = cyclotomic_field(5).unwrap();
    let ring = Ring::new(field, &["x"]).unwrap();
    let p = ring.parse("(zeta^3 - 2/3*zeta)*x^2 + zeta^4").unwrap();
    assert_eq!(ring.parse(&p.to_string()).unwrap(), p);
}
