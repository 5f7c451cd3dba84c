//! Small named algebras used in tests, examples and the CLI.
//! Basis vectors x, y, z are e_0, e_1, e_2.

use crate::hom::{HomLieAlgebra, HomLieBialgebra};
use crate::linalg::{rat, RatMatrix, Rational};

fn v(c: &[i64]) -> Vec<Rational> {
    c.iter().map(|&a| rat(a)).collect()
}

/// [x,y] = x, [y,z] = z, [x,z] = z with α = diag(1,1,0). Not of Lie type.
pub fn example1() -> HomLieAlgebra {
    HomLieAlgebra::from_table(
        3,
        &[(0, 1, v(&[1, 0, 0])), (1, 2, v(&[0, 0, 1])), (0, 2, v(&[0, 0, 1]))],
        RatMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
    )
    .expect("static shapes")
}

/// The Lie algebra [x,y] = x, [x,z] = x, [y,z] = y − z.
pub fn lie_example() -> HomLieAlgebra {
    HomLieAlgebra::from_table(
        3,
        &[(0, 1, v(&[1, 0, 0])), (0, 2, v(&[1, 0, 0])), (1, 2, v(&[0, 1, -1]))],
        RatMatrix::identity(3),
    )
    .expect("static shapes")
}

/// γ = diag(0,1,1), an endomorphism of [`lie_example`].
pub fn lie_example_gamma() -> RatMatrix {
    RatMatrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]])
}

/// The Yau twist of [`lie_example`] by [`lie_example_gamma`].
pub fn lie_example_twisted() -> HomLieAlgebra {
    lie_example().yau_twist(&lie_example_gamma()).expect("γ is an endomorphism")
}

/// sl₂ with basis h, e, f.
pub fn sl2() -> HomLieAlgebra {
    HomLieAlgebra::from_table(
        3,
        &[(0, 1, v(&[0, 2, 0])), (0, 2, v(&[0, 0, -2])), (1, 2, v(&[1, 0, 0]))],
        RatMatrix::identity(3),
    )
    .expect("static shapes")
    .with_labels(vec!["h".into(), "e".into(), "f".into()])
}

/// Heisenberg algebra [x,y] = z.
pub fn heisenberg() -> HomLieAlgebra {
    HomLieAlgebra::from_table(3, &[(0, 1, v(&[0, 0, 1]))], RatMatrix::identity(3)).expect("static shapes")
}

/// The two-dimensional Lie bialgebra [x,y] = y, δ(y) = x∧y.
pub fn aff1_bialgebra() -> HomLieBialgebra {
    let g = HomLieAlgebra::from_table(2, &[(0, 1, v(&[0, 1]))], RatMatrix::identity(2)).expect("static shapes");
    HomLieBialgebra::new(g, RatMatrix::from_i64(&[&[0, 1]]), RatMatrix::identity(2)).expect("static shapes")
}
