mod common;

use common::{random_lie_with_endo, random_matrix, random_twisted, rng};
use homlie_core::alpha_ce::{cohomology, total_differential, total_differential_with, Formula};
use homlie_core::hom::HomLieBialgebra;
use homlie_core::linalg::{rank, RatMatrix};
use homlie_core::morphism::{invert, phi_inverse_matrix, phi_matrix};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twists_stay_hom_lie(seed in any::<u64>()) {
        let g = random_twisted(&mut rng(seed));
        prop_assert!(g.validate().passed());
    }

    #[test]
    fn direct_and_symmetrized_differentials_agree(seed in any::<u64>()) {
        let g = random_twisted(&mut rng(seed));
        let m = g.adjoint();
        for k in 1..=g.n + 1 {
            prop_assert_eq!(total_differential(&g, &m, k), total_differential_with(&g, &m, k, Formula::Symmetrized));
        }
    }

    #[test]
    fn euler_characteristic_matches(seed in any::<u64>()) {
        let g = random_twisted(&mut rng(seed));
        let rep = cohomology(&g, &g.adjoint(), g.n + 1).unwrap();
        let mut chi_c = 0i64;
        let mut chi_h = 0i64;
        for (i, row) in rep.rows.iter().enumerate() {
            prop_assert_eq!(row.dim_im + row.dim_ker, row.dim_c);
            let s = if i % 2 == 0 { 1 } else { -1 };
            chi_c += s * row.dim_c as i64;
            chi_h += s * row.dim_h as i64;
        }
        prop_assert_eq!(chi_c, chi_h);
    }

    #[test]
    fn phi_inverts_for_invertible_gamma(seed in any::<u64>()) {
        let (g, gamma) = random_lie_with_endo(&mut rng(seed));
        prop_assume!(invert(&gamma).is_ok());
        for k in 1..=g.n + 1 {
            let phi = phi_matrix(&g, &gamma, k);
            let inv = phi_inverse_matrix(&g, &gamma, k).unwrap();
            prop_assert_eq!(inv.matmul(&phi), RatMatrix::identity(phi.cols()));
        }
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let b = HomLieBialgebra::from_algebra(random_twisted(&mut rng(seed)));
        prop_assert_eq!(b.dual().dual(), b.clone());
        prop_assert!(b.dual().validate().passed());
    }

    #[test]
    fn rank_is_transpose_invariant(seed in any::<u64>(), rows in 1usize..8, cols in 1usize..8) {
        let m = random_matrix(&mut rng(seed), rows, cols, 2);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert_eq!(rank(&m), m.rref().1.len());
    }
}
