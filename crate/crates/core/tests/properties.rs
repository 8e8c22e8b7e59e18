//! Randomized algebraic invariants.

use fieldlab::modarith::{residue_op, Residue, RingOp};
use fieldlab::polyring::{poly_divmod, poly_op, PolyOp, PrimePoly};
use proptest::prelude::*;

fn arb_poly(p: u64) -> impl Strategy<Value = PrimePoly> {
    prop::collection::vec(0..p, 0..=8).prop_map(move |c| PrimePoly::new(p, c).unwrap())
}

proptest! {
    #[test]
    fn residue_ops_agree_with_integers(n in 1u64..10_000, a in 0u64..10_000, b in 0u64..10_000) {
        let ra = Residue::new(a % n, n).unwrap();
        let rb = Residue::new(b % n, n).unwrap();
        prop_assert_eq!(residue_op(ra, rb, RingOp::Add).unwrap().value, (a + b) % n);
        prop_assert_eq!(residue_op(ra, rb, RingOp::Mul).unwrap().value, (a % n) * (b % n) % n);
        prop_assert_eq!(
            residue_op(ra, rb, RingOp::Sub).unwrap().value,
            (a % n + n - b % n) % n
        );
    }

    #[test]
    fn divmod_reconstructs_dividend(
        (f, g) in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
            .prop_flat_map(|p| (arb_poly(p), arb_poly(p)))
    ) {
        prop_assume!(!g.is_zero());
        let (q, r) = poly_divmod(&f, &g).unwrap();
        let back = poly_op(&poly_op(&q, &g, PolyOp::Mul).unwrap(), &r, PolyOp::Add).unwrap();
        prop_assert_eq!(back, f);
        if let (Some(dr), Some(dg)) = (r.degree(), g.degree()) {
            prop_assert!(dr < dg);
        }
    }
}
