use super::*;
use crate::alpha_ce::total_differential;
use crate::catalog::{aff1_bialgebra, example1, lie_example, lie_example_gamma, sl2};
use crate::cochain::{flatten, unflatten};
use crate::linalg::{rat, ratio};

fn coboundary(g: &HomLieAlgebra, r: &[i64]) -> HomLieBialgebra {
    let r: Vec<Rational> = r.iter().map(|&x| rat(x)).collect();
    let mut b = HomLieBialgebra::from_algebra(g.clone());
    let cols: Vec<Vec<Rational>> = (0..g.n).map(|x| b.ad_wedge2(&unit(g.n, x), &r)).collect();
    b.cobracket = RatMatrix::from_columns(binom(g.n, 2), &cols);
    b
}

fn diag(v: &[Rational]) -> RatMatrix {
    let mut m = RatMatrix::zeros(v.len(), v.len());
    for (k, x) in v.iter().enumerate() {
        m[(k, k)] = x.clone();
    }
    m
}

fn gamma3() -> RatMatrix {
    diag(&[rat(1), rat(2), ratio(1, 2)])
}

/// [e₀,e₁] = e₁, [e₀,e₂] = e₂
fn book() -> HomLieAlgebra {
    HomLieAlgebra::from_table(3, &[(0, 1, unit(3, 1)), (0, 2, unit(3, 2))], RatMatrix::identity(3)).unwrap()
}

/// sl₂ ⊕ ℝ
fn sl2_line() -> HomLieAlgebra {
    let s = sl2();
    let mut table = Vec::new();
    for a in 0..3 {
        for c in a + 1..3 {
            let mut v = s.bracket_basis(a, c);
            v.push(rat(0));
            table.push((a, c, v));
        }
    }
    HomLieAlgebra::from_table(4, &table, RatMatrix::identity(4)).unwrap()
}

fn sl2_r() -> HomLieBialgebra {
    coboundary(&sl2(), &[0, 0, 1])
}

fn book_r() -> HomLieBialgebra {
    coboundary(&book(), &[0, 0, 1])
}

fn three_dim_cases() -> Vec<(&'static str, HomLieBialgebra)> {
    let aff = aff1_bialgebra();
    let ex1 = HomLieBialgebra::from_algebra(example1());
    vec![
        ("sl2 r", sl2_r()),
        ("sl2 r'", coboundary(&sl2(), &[1, 2, -1])),
        ("sl2 r twisted", sl2_r().yau_twist(&gamma3(), TwistMode::Both).unwrap()),
        ("aff1 twisted", aff.yau_twist(&diag(&[rat(1), rat(2)]), TwistMode::Both).unwrap()),
        ("aff1", aff),
        ("example 1", ex1.clone()),
        ("example 1 dual", ex1.dual()),
        ("lie example", HomLieBialgebra::from_algebra(lie_example())),
        ("book r", book_r()),
        ("book r twisted", book_r().yau_twist(&gamma3(), TwistMode::Both).unwrap()),
    ]
}

fn four_dim_cases() -> Vec<HomLieBialgebra> {
    let g = sl2_line();
    [[0, 0, -1, 0, -1, -1], [1, -1, 0, 0, -1, -1]]
        .iter()
        .map(|r| {
            let b = coboundary(&g, r);
            assert!(b.validate().passed() && !b.cobracket.is_zero() && !b.alg.bracket.is_zero());
            b
        })
        .collect()
}

fn block(d: &BialgDifferential, from: Slot, to: Slot) -> RatMatrix {
    d.arrows
        .iter()
        .filter(|a| a.from == from && a.to == to)
        .fold(RatMatrix::zeros(to.dim(d.n), from.dim(d.n)), |acc, a| &acc + &a.mat)
}

#[test]
fn slot_layout() {
    assert_eq!(slots(3, 1), vec![Slot::nu(1, 1)]);
    assert_eq!(slots(3, 3), vec![Slot::nu(1, 3), Slot::nu(2, 2), Slot::nu(3, 1), Slot::alpha(1, 2), Slot::alpha(2, 1)]);
    assert_eq!(complex_dim(3, 2), 9 + 9 + 9);
    assert!(slots(2, 4).iter().all(|s| s.i <= 2 && s.j <= 2));
}

#[test]
fn d_squared_vanishes() {
    for (name, b) in three_dim_cases() {
        assert!(b.validate().passed(), "{name} is not a bialgebra");
        let r = verify_d_squared(&b, b.n() + 3, &BialgSigns::default()).unwrap();
        assert!(r.passed(), "{name}: {}", r.failures[0]);
    }
    for b in four_dim_cases() {
        let r = verify_d_squared(&b, 5, &BialgSigns::default()).unwrap();
        assert!(r.passed(), "{}", r.failures[0]);
    }
}

#[test]
fn co_alpha_nu_parity_is_only_visible_in_dimension_four() {
    let parity = BialgSigns {
        co_alpha_nu: -1,
        co_alpha_nu_parity: true,
        ..BialgSigns::default()
    };
    assert!(verify_d_squared(&sl2_r(), 5, &parity).unwrap().passed());
    let r = verify_d_squared(&four_dim_cases()[0], 4, &parity).unwrap();
    assert!(!r.passed());
    assert_eq!((r.failures[0].from, r.failures[0].to), (Slot::alpha(1, 1), Slot::nu(2, 3)));
}

#[test]
fn bridge_with_power_k_plus_l_fails() {
    let b = &three_dim_cases()[2].1;
    let powers = BridgePowers {
        delta: Affine::new(2, 1, 1),
        ..BridgePowers::default()
    };
    for bridge_parity in [false, true] {
        for s in BialgSigns::all_sign_choices(powers, true, bridge_parity) {
            if s.co_nu_nu != 1 || s.co_alpha_nu != 1 || s.co_alpha_alpha != -1 {
                continue;
            }
            let r = verify_d_squared(b, 4, &s).unwrap();
            assert!(!r.passed(), "{s:?}");
            assert!(r.failures.iter().any(|f| f.paths.iter().any(|p| matches!(p.0, Piece::Bridge1 | Piece::Bridge2) || matches!(p.2, Piece::Bridge1 | Piece::Bridge2))));
        }
    }
}

#[test]
fn dimension_two_has_no_bridge_contribution() {
    let b = aff1_bialgebra().yau_twist(&diag(&[rat(1), rat(2)]), TwistMode::Both).unwrap();
    let without = BialgSigns {
        bridge1: 0,
        bridge2: 0,
        ..BialgSigns::default()
    };
    let d2 = bialg_differential(&b, 2, &BialgSigns::default()).unwrap();
    let d3 = bialg_differential(&b, 3, &BialgSigns::default()).unwrap();
    assert!(d2.arrows.iter().any(|a| a.piece == Piece::Bridge1));
    assert!(verify_d_squared(&b, 4, &without).unwrap().passed());
    let _ = d3;
}

/// The degree-2 blocks into ν(2,2) are minus the derivative of the
/// compatibility residual along the matching perturbation of (ν, δ, α = β).
#[test]
fn blocks_into_nu22_linearize_compatibility() {
    let residual = |b: &HomLieBialgebra| -> Vec<Rational> {
        let n = b.n();
        let cols: Vec<Vec<Rational>> = space(n)
            .masks(2)
            .iter()
            .map(|&m| {
                let e = mask_elems(m);
                b.compatibility_residual(e[0], e[1])
            })
            .collect();
        flatten(&RatMatrix::from_columns(binom(n, 2), &cols))
    };
    for b in [three_dim_cases()[2].1.clone(), three_dim_cases()[9].1.clone()] {
        let n = b.n();
        let d = bialg_differential(&b, 2, &BialgSigns::default()).unwrap();
        for from in [Slot::nu(2, 1), Slot::nu(1, 2), Slot::alpha(1, 1)] {
            let blk = block(&d, from, Slot::nu(2, 2));
            for c in 0..from.dim(n) {
                let mut v = vec![rat(0); from.dim(n)];
                v[c] = rat(1);
                let at = |t: i64| {
                    let w: Vec<Rational> = v.iter().map(|x| x * rat(t)).collect();
                    let mut p = b.clone();
                    match from.part {
                        Part::Nu if from.i == 2 => p.alg.bracket = &p.alg.bracket + &unflatten(n, 2, n, &w),
                        Part::Nu => p.cobracket = &p.cobracket + &unflatten(n, 1, binom(n, 2), &w),
                        Part::Alpha => {
                            let e = unflatten(n, 1, n, &w);
                            p.alg.alpha = &p.alg.alpha + &e;
                            p.beta = &p.beta + &e;
                        }
                    }
                    residual(&p)
                };
                // exact for polynomials of degree ≤ 4
                let (m2, m1, p1, p2) = (at(-2), at(-1), at(1), at(2));
                let moved: Vec<Rational> = (0..m2.len())
                    .map(|k| -(-&p2[k] + rat(8) * &p1[k] - rat(8) * &m1[k] + &m2[k]) / rat(12))
                    .collect();
                assert_eq!(blk.mul_vec(&v), moved, "{from} column {c}");
            }
        }
    }
}

#[test]
fn cobracket_free_case_is_the_alpha_ce_complex() {
    let tw = HomLieBialgebra::from_algebra(sl2().yau_twist(&gamma3()).unwrap());
    for b in [HomLieBialgebra::from_algebra(example1()), HomLieBialgebra::from_algebra(lie_example()), tw] {
        let g = &b.alg;
        let n = g.n;
        assert_eq!(wedge_module(g, 1).action, g.adjoint().action);
        for k in 2..n {
            let d = bialg_differential(&b, k, &BialgSigns::default()).unwrap();
            let rows = [Slot::nu(k + 1, 1), Slot::alpha(k, 1)];
            let cols = [Slot::nu(k, 1), Slot::alpha(k - 1, 1)];
            let top = block(&d, cols[0], rows[0]).hstack(&block(&d, cols[1], rows[0]));
            let bottom = block(&d, cols[0], rows[1]).hstack(&block(&d, cols[1], rows[1]));
            assert_eq!(top.vstack(&bottom), total_differential(g, &g.adjoint(), k), "degree {k}");
        }
    }
}

#[test]
fn wedge_modules_are_modules() {
    for g in [example1(), lie_example(), sl2().yau_twist(&gamma3()).unwrap()] {
        for j in 1..=g.n {
            assert!(wedge_module(&g, j).validate(&g).passed(), "Λ^{j}");
        }
    }
}

#[test]
fn unequal_structure_maps_are_rejected() {
    let mut b = HomLieBialgebra::from_algebra(example1());
    b.beta = RatMatrix::identity(3).scale(&rat(2));
    assert!(matches!(bialg_differential(&b, 1, &BialgSigns::default()), Err(Error::Unsupported(_))));
    assert!(matches!(bialg_differential(&sl2_r(), 0, &BialgSigns::default()), Err(Error::Degree(_))));
}

#[test]
fn dimension_two_search() {
    let b = search_dim2_bialgebra().expect("grid contains a bialgebra");
    assert!(b.validate().passed());
    assert!(!b.alg.bracket.is_zero() && !b.cobracket.is_zero());
    assert_eq!(b.beta, b.alg.alpha);
    assert!(verify_d_squared(&b, 5, &BialgSigns::default()).unwrap().passed());
}

#[test]
fn cohomology_rows_are_consistent() {
    for (name, b) in three_dim_cases().into_iter().take(3) {
        let rows = bialg_cohomology(&b, 4, &BialgSigns::default()).unwrap();
        for (k, r) in rows.iter().enumerate() {
            assert_eq!(r.dim_c, complex_dim(3, k + 1), "{name}");
            assert_eq!(r.dim_c, r.dim_ker + r.dim_im);
            if k > 0 {
                assert_eq!(r.dim_h, r.dim_ker - rows[k - 1].dim_im);
            }
        }
    }
}

fn morphism_cases() -> Vec<(&'static str, HomLieBialgebra, RatMatrix)> {
    let book0 = HomLieBialgebra::from_algebra(book());
    let g3 = diag(&[rat(1), rat(2), rat(3)]);
    vec![
        ("sl2 r, id", sl2_r(), RatMatrix::identity(3)),
        ("sl2 r, diag", sl2_r(), gamma3()),
        ("sl2 r', id", coboundary(&sl2(), &[1, 2, -1]), RatMatrix::identity(3)),
        ("book r, diag", book_r(), gamma3()),
        ("book, δ = 0", book0.clone(), g3.clone()),
        ("book dual, ν = 0", book0.dual(), g3.transpose()),
        ("sl2, δ = 0", HomLieBialgebra::from_algebra(sl2()), gamma3()),
        ("aff1, id", aff1_bialgebra(), RatMatrix::identity(2)),
    ]
}

#[test]
fn morphism_complex_squares_to_zero() {
    for (name, b, g) in morphism_cases() {
        for k in 1..=b.n() + 1 {
            let d1 = bialg_morphism_differential(&b, &g, k, &MorphismSigns::default()).unwrap().matrix();
            let d2 = bialg_morphism_differential(&b, &g, k + 1, &MorphismSigns::default()).unwrap().matrix();
            assert!(d2.matmul(&d1).is_zero(), "{name}, degree {k}");
        }
    }
}

#[test]
fn phi_is_a_chain_map() {
    for (name, b, g) in morphism_cases() {
        let r = verify_phi_chain_map(&b, &g, b.n() + 1, &MorphismSigns::default()).unwrap();
        assert!(r.passed(), "{name}: {}", r.failures[0]);
        assert!(r.phi_bijective(), "{name}");
    }
    let b = &four_dim_cases()[0];
    let r = verify_phi_chain_map(b, &RatMatrix::identity(4), 3, &MorphismSigns::default()).unwrap();
    assert!(r.passed(), "{}", r.failures[0]);
}

#[test]
fn phi_with_a_singular_gamma() {
    let b = HomLieBialgebra::from_algebra(lie_example());
    let r = verify_phi_chain_map(&b, &lie_example_gamma(), 4, &MorphismSigns::default()).unwrap();
    assert!(r.passed());
    assert!(!r.phi_bijective());
}

#[test]
fn identity_endomorphism_without_cobracket_doubles_the_rows() {
    let b = HomLieBialgebra::from_algebra(sl2());
    let id = RatMatrix::identity(3);
    for k in 2..=3 {
        let d = bialg_morphism_differential(&b, &id, k, &MorphismSigns::default()).unwrap();
        // φ ∈ ν(i,j) sits one degree below ψ ∈ α(i,j)
        assert!(d.arrows.iter().any(|a| a.piece == Piece::AlphaAlpha));
        let down = bialg_morphism_differential(&b, &id, k - 1, &MorphismSigns::default()).unwrap();
        assert!(d.arrows.iter().all(|a| a.piece != Piece::NuAlpha && a.piece != Piece::CoNuNu && a.piece != Piece::CoAlphaAlpha));
        for a in d.arrows.iter().filter(|a| a.piece == Piece::AlphaAlpha) {
            let twin = block(&down, Slot::nu(a.from.i, a.from.j), Slot::nu(a.to.i, a.to.j));
            assert_eq!(a.mat, -&twin);
        }
    }
}

#[test]
fn morphism_complex_preconditions() {
    let bad = diag(&[rat(1), rat(2), rat(3)]);
    assert!(matches!(bialg_morphism_differential(&sl2_r(), &bad, 1, &MorphismSigns::default()), Err(Error::NotMorphism(_))));
    let twisted = HomLieBialgebra::from_algebra(example1());
    assert!(matches!(
        bialg_phi(&twisted, &RatMatrix::identity(3), 1, &MorphismSigns::default()),
        Err(Error::Unsupported(_))
    ));
}
