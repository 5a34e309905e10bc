//! Invariants checked on seeded random monomial modules.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gdl::complexes::{dual_complex, ext_over_a_dim, free_resolution};
use gdl::graded::GradedPresentation;
use gdl::harness::{duality_check, random_module, route_equivalence};
use gdl::local_cohomology::{default_k_cap, lc_free_complex_dim, lc_resolution_route, LcInput};
use gdl::poly::binomial;
use gdl::Context;

fn module(seed: u64) -> GradedPresentation {
    random_module(&mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_cohomology_lives_in_zero_to_n(seed in any::<u64>(), p in -8i64..5) {
        let g = module(seed);
        let n = g.ctx.n as i64;
        let input = LcInput::Module(g);
        for i in [-2, -1, n + 1, n + 2] {
            prop_assert!(lc_resolution_route(&input, i, p).is_zero(), "i={} p={}", i, p);
        }
    }

    #[test]
    fn free_modules_only_have_top_cohomology(twists in prop::collection::vec(-3i64..4, 1..4), n in 1usize..4, p in -9i64..4) {
        let g = GradedPresentation::free(Context::new(0, n), twists.clone());
        let input = LcInput::Module(g);
        let src = input.source();
        let window = p..=p;
        let cap = default_k_cap(&src.free_model, &window);
        for i in 0..=n as i64 {
            let res = lc_resolution_route(&input, i, p).field_dim();
            let (kz, _) = src.koszul(i, p, cap).unwrap();
            let want: u64 = if i == n as i64 { twists.iter().map(|q| binomial(q - p - 1, n as i64 - 1)).sum() } else { 0 };
            prop_assert_eq!(res as u64, want, "resolution route, i={}", i);
            prop_assert_eq!(kz.field_dim() as u64, want, "koszul route, i={}", i);
        }
    }

    #[test]
    fn routes_agree(seed in any::<u64>()) {
        let r = route_equivalence(&module(seed), -7..=4, None).unwrap();
        prop_assert!(r.verdict.passed(), "{:?}", r.failures);
    }

    #[test]
    fn duality_holds(seed in any::<u64>()) {
        let g = module(seed);
        let r = duality_check(&g, -8..=4, 0..=0);
        prop_assert!(r.verdict.passed(), "{:?}", r.failures);
    }

    #[test]
    fn sign_twist_keeps_ext_and_local_cohomology(seed in any::<u64>(), p in -7i64..3) {
        let g = module(seed);
        let t = g.sign_twist();
        let n = g.ctx.n as i64;
        for j in -n..=1 {
            prop_assert_eq!(ext_over_a_dim(&g, j, p), ext_over_a_dim(&t, j, p));
        }
        let (a, b) = (LcInput::Module(g), LcInput::Module(t));
        for i in 0..=n {
            prop_assert_eq!(lc_resolution_route(&a, i, p).field_dim(), lc_resolution_route(&b, i, p).field_dim());
        }
    }

    #[test]
    fn ext_does_not_depend_on_the_resolution(seed in any::<u64>(), p in -7i64..3) {
        let g = module(seed);
        let n = g.ctx.n as i64;
        let minimal = dual_complex(&free_resolution(&g, true).complex, n);
        let raw = free_resolution(&g, false);
        let dual_raw = dual_complex(&raw.complex, n);
        for j in -n - 1..=2 {
            prop_assert_eq!(minimal.cohomology_dim(j, p), dual_raw.cohomology_dim(j, p), "j={}", j);
            prop_assert_eq!(lc_free_complex_dim(&minimal, j, p), lc_free_complex_dim(&dual_raw, j, p), "j={}", j);
        }
    }

    #[test]
    fn truncated_complexes_square_to_zero(seed in any::<u64>(), p in -6i64..4, k in 1u32..5, cech in any::<bool>()) {
        let g = module(seed);
        let src = LcInput::Module(g.clone()).source();
        for t in -1..=g.ctx.n as i64 + 1 {
            let (d0, d1) = src.field_differentials(t, p, k, cech);
            prop_assert!(d1.compose(&d0).is_zero(), "t={} p={} k={}", t, p, k);
        }
    }

    #[test]
    fn resolutions_are_exact(seed in any::<u64>()) {
        let g = module(seed);
        for minimize in [true, false] {
            let cert = free_resolution(&g, minimize);
            prop_assert!(cert.verify(-8..=6).is_ok());
            if minimize {
                prop_assert!(cert.complex.is_minimal());
            }
        }
    }
}

/// Cancelling a constant entry leaves non-zero coordinates on the removed
/// generator in the previous differential; pruning must drop them.
#[test]
fn pruning_with_entries_on_the_cancelled_generator() {
    let g = module(14159412061876004056);
    let cert = free_resolution(&g, true);
    cert.verify(-8..=6).unwrap();
    assert!(cert.complex.is_minimal());
}
