// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Algebraic laws of truncated Taylor jets on random inputs.

use orthotomic::jet::Jet;
use proptest::prelude::*;

const MAX_ORDER: usize = 8;

fn coeffs(order: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, order + 1)
}

fn jet_triple() -> impl Strategy<Value = (Jet, Jet, Jet)> {
    (0..=MAX_ORDER, -1.0..1.0f64).prop_flat_map(|(order, base)| {
        (coeffs(order), coeffs(order), coeffs(order)).prop_map(move |(a, b, c)| {
            (
                Jet::new(base, a).unwrap(),
                Jet::new(base, b).unwrap(),
                Jet::new(base, c).unwrap(),
            )
        })
    })
}

// leading coefficient bounded away from zero, magnitude in [0.5, 1]
fn leading(c: f64) -> f64 {
    c.signum() * (0.5 + 0.5 * c.abs())
}

proptest! {
    #[test]
    fn mul_commutes((a, b, _) in jet_triple()) {
        let d = (&a * &b).max_abs_diff(&(&b * &a));
        prop_assert!(d <= 1e-13, "{d}");
    }

    #[test]
    fn mul_associates((a, b, c) in jet_triple()) {
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        let d = left.max_abs_diff(&right);
        prop_assert!(d <= 1e-13, "{d}");
    }

    #[test]
    fn div_undoes_mul((a, b, _) in jet_triple()) {
        let mut bc = b.coeffs().to_vec();
        bc[0] = leading(bc[0]);
        let b = Jet::new(b.base(), bc).unwrap();
        let back = a.try_mul(&b).unwrap().try_div(&b).unwrap();
        let d = back.max_abs_diff(&a);
        prop_assert!(d <= 1e-12, "{d}");
    }

    #[test]
    fn invert_is_right_inverse((g, _, _) in jet_triple()) {
        prop_assume!(g.order() >= 1);
        let mut gc = g.coeffs().to_vec();
        // higher terms damped so the reversion stays well conditioned
        for c in gc.iter_mut().skip(2) {
            *c *= 0.25;
        }
        gc[0] = 0.0;
        gc[1] = leading(gc[1]);
        let g = Jet::new(g.base(), gc).unwrap();
        let h = g.invert().unwrap();
        let id = g.compose(&h).unwrap();
        let d = id.max_abs_diff(&Jet::identity(g.base(), g.order()));
        prop_assert!(d <= 1e-12, "{d}");
    }
}
