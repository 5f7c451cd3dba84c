//! Seeded generators shared by the acceptance and property targets.
#![allow(dead_code)]

use homlie_core::catalog::sl2;
use homlie_core::exterior::binom;
use homlie_core::hom::{HomLieAlgebra, HomLieBialgebra};
use homlie_core::linalg::{rat, ratio, RatMatrix, Rational};
use homlie_core::morphism::invert;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(r: &mut Rand, bound: i64) -> i64 {
    r.gen_range(-bound..=bound)
}

pub fn small_rational(r: &mut Rand) -> Rational {
    ratio(small_int(r, 3), r.gen_range(1..=2))
}

pub fn random_matrix(r: &mut Rand, rows: usize, cols: usize, bound: i64) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = rat(small_int(r, bound));
        }
    }
    m
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![rat(0); n];
    v[i] = rat(1);
    v
}

fn table_algebra(n: usize, table: &[(usize, usize, Vec<i64>)]) -> HomLieAlgebra {
    let t: Vec<(usize, usize, Vec<Rational>)> = table.iter().map(|(i, j, v)| (*i, *j, v.iter().map(|&x| rat(x)).collect())).collect();
    HomLieAlgebra::from_table(n, &t, RatMatrix::identity(n)).expect("table shapes")
}

/// ℝe₀ ⋉_A ℝⁿ⁻¹ with [e₀, v] = Av and an endomorphism e₀ ↦ e₀ + w, v ↦ (c₀ + c₁A)v,
/// or the degenerate e₀ ↦ w, V ↦ 0.
fn semidirect(r: &mut Rand, n: usize) -> (HomLieAlgebra, RatMatrix) {
    let k = n - 1;
    let a = random_matrix(r, k, k, 2);
    let table: Vec<(usize, usize, Vec<Rational>)> = (0..k)
        .map(|c| {
            let mut v = vec![rat(0)];
            v.extend(a.column(c));
            (0, c + 1, v)
        })
        .collect();
    let g = HomLieAlgebra::from_table(n, &table, RatMatrix::identity(n)).expect("table shapes");
    let mut gamma = RatMatrix::zeros(n, n);
    let degenerate = r.gen_bool(0.2);
    if !degenerate {
        gamma[(0, 0)] = rat(1);
        let (c0, c1) = (small_rational(r), small_rational(r));
        let b = &RatMatrix::identity(k).scale(&c0) + &a.scale(&c1);
        gamma.paste(1, 1, &b);
    }
    for i in 1..n {
        gamma[(i, 0)] = rat(small_int(r, 1));
    }
    (g, gamma)
}

/// sl₂ (⊕ ℝ when n = 4) with the scaling automorphism diag(1, t, 1/t) (⊕ s) or zero.
fn sl2_family(r: &mut Rand, n: usize) -> (HomLieAlgebra, RatMatrix) {
    let s = sl2();
    let mut table = Vec::new();
    for a in 0..3 {
        for c in a + 1..3 {
            let mut v = s.bracket_basis(a, c);
            v.resize(n, rat(0));
            table.push((a, c, v));
        }
    }
    let g = HomLieAlgebra::from_table(n, &table, RatMatrix::identity(n)).expect("table shapes");
    let mut gamma = RatMatrix::zeros(n, n);
    if r.gen_bool(0.85) {
        let t = ratio([1, 2, -1, 3][r.gen_range(0..4)], [1, 1, 2, 1][r.gen_range(0..4)]);
        gamma[(0, 0)] = rat(1);
        gamma[(1, 1)] = t.clone();
        gamma[(2, 2)] = rat(1) / t;
    }
    if n == 4 {
        gamma[(3, 3)] = small_rational(r);
    }
    (g, gamma)
}

/// Heisenberg [x,y] = z (⊕ central e₃) with x, y ↦ anything, z ↦ det·z.
fn heisenberg_family(r: &mut Rand, n: usize) -> (HomLieAlgebra, RatMatrix) {
    let mut v = vec![0; n];
    v[2] = 1;
    let g = table_algebra(n, &[(0, 1, v)]);
    let mut gamma = random_matrix(r, n, n, 2);
    for c in 0..n {
        if c != 2 {
            gamma[(2, c)] = rat(small_int(r, 2));
        }
    }
    let det = &gamma[(0, 0)] * &gamma[(1, 1)] - &gamma[(0, 1)] * &gamma[(1, 0)];
    for row in 0..n {
        gamma[(row, 2)] = rat(0);
    }
    gamma[(2, 2)] = det;
    if n == 4 {
        // e₃ central: its image may only involve central vectors z and e₃
        gamma[(0, 3)] = rat(0);
        gamma[(1, 3)] = rat(0);
        gamma[(3, 0)] = rat(small_int(r, 1));
        gamma[(3, 1)] = rat(small_int(r, 1));
    }
    (g, gamma)
}

/// aff₁ ⊕ aff₁ with blockwise x ↦ x + b y, y ↦ d y.
fn aff_pair(r: &mut Rand) -> (HomLieAlgebra, RatMatrix) {
    let g = table_algebra(4, &[(0, 1, vec![0, 1, 0, 0]), (2, 3, vec![0, 0, 0, 1])]);
    let mut gamma = RatMatrix::zeros(4, 4);
    for base in [0, 2] {
        gamma[(base, base)] = rat(1);
        gamma[(base + 1, base)] = rat(small_int(r, 2));
        gamma[(base + 1, base + 1)] = small_rational(r);
    }
    (g, gamma)
}

fn abelian(r: &mut Rand, n: usize) -> (HomLieAlgebra, RatMatrix) {
    (HomLieAlgebra::abelian(n, RatMatrix::identity(n)), random_matrix(r, n, n, 2))
}

fn random_invertible(r: &mut Rand, n: usize) -> RatMatrix {
    loop {
        let mut p = RatMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && r.gen_bool(0.4) {
                    p[(i, j)] = rat(small_int(r, 1));
                }
            }
        }
        if invert(&p).is_ok() {
            return p;
        }
    }
}

/// Transports a Lie algebra and an endomorphism along the basis e′ᵢ = P eᵢ.
fn change_basis(g: &HomLieAlgebra, gamma: &RatMatrix, p: &RatMatrix) -> (HomLieAlgebra, RatMatrix) {
    let n = g.n;
    let pinv = invert(p).expect("invertible");
    let mut table = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = g.bracket_vec(&p.column(i), &p.column(j));
            table.push((i, j, pinv.mul_vec(&v)));
        }
    }
    let h = HomLieAlgebra::from_table(n, &table, RatMatrix::identity(n)).expect("table shapes");
    (h, pinv.matmul(gamma).matmul(p))
}

/// A random Lie algebra of dimension 2..=4 with a verified endomorphism.
pub fn random_lie_with_endo(r: &mut Rand) -> (HomLieAlgebra, RatMatrix) {
    let n = r.gen_range(2..=4);
    let (g, gamma) = match r.gen_range(0..5) {
        0 | 1 => semidirect(r, n),
        2 if n >= 3 => sl2_family(r, n),
        3 if n >= 3 => heisenberg_family(r, n),
        4 if n == 4 => aff_pair(r),
        _ => abelian(r, n),
    };
    let (g, gamma) = if r.gen_bool(0.5) {
        let p = random_invertible(r, g.n);
        change_basis(&g, &gamma, &p)
    } else {
        (g, gamma)
    };
    assert!(g.validate().passed(), "generator produced a non-Lie bracket");
    g.check_endomorphism(&gamma).expect("generator produced a non-endomorphism");
    (g, gamma)
}

/// The Yau twist of a random Lie algebra by a random endomorphism.
pub fn random_twisted(r: &mut Rand) -> HomLieAlgebra {
    let (g, gamma) = random_lie_with_endo(r);
    g.yau_twist(&gamma).expect("verified endomorphism")
}

/// A cobracket δ(x) = ad_x r for r ∈ Λ²g.
pub fn coboundary(g: &HomLieAlgebra, r: &[Rational]) -> HomLieBialgebra {
    let n = g.n;
    let mut b = HomLieBialgebra::from_algebra(g.clone());
    let cols: Vec<Vec<Rational>> = (0..n).map(|x| b.ad_wedge2(&unit(n, x), r)).collect();
    b.cobracket = RatMatrix::from_columns(binom(n, 2), &cols);
    b
}
