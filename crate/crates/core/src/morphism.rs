//! The complex C(g, γ) of a Lie algebra endomorphism, the comparison map
//! Φ: C(g, γ) → C̃(g_γ), the Lie-as-Hom-Lie decomposition and Whitehead data.
//!
//! The classical Chevalley–Eilenberg differential here works on index lists
//! and permutation signs only. It shares no code with `alpha_ce`, so it can
//! serve as an independent check of that module.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::alpha_ce::{self, AlphaCochain};
use crate::cochain::{hom_dim, unflatten};
use crate::error::{Error, Result};
use crate::exterior::{binom, mask_elems, mask_of, space, sort_sign};
use crate::hom::{HomLieAlgebra, Representation};
use crate::linalg::{kernel_basis, quotient_dim, rank, RatMatrix, Rational};

pub type MorphismCochain = AlphaCochain;

fn pm(parity: usize) -> Rational {
    if parity.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Accumulates `c · f(e_{idx})` into the row block of output monomial `s`,
/// where `idx` is an unsorted index list.
fn add_eval(out: &mut RatMatrix, n: usize, s: usize, m: usize, idx: &[usize], c: &Rational, a: Option<&RatMatrix>) {
    let (sg, sorted) = sort_sign(idx);
    let Some(sorted) = sorted else { return };
    let t = space(n).index_of(mask_of(&sorted));
    let c = c * Rational::from_integer(sg.into());
    for r in 0..m {
        match a {
            None => out[(s * m + r, t * m + r)] += &c,
            Some(a) => {
                for q in 0..m {
                    if !a[(r, q)].is_zero() {
                        out[(s * m + r, t * m + q)] += &c * &a[(r, q)];
                    }
                }
            }
        }
    }
}

/// Classical CE differential Hom(Λᵏg, M) → Hom(Λ^{k+1}g, M) for a Lie algebra
/// acting on M by the matrices `action[i] = ρ(e_i)`.
pub fn classical_ce(g: &HomLieAlgebra, action: &[RatMatrix], m: usize, k: usize) -> RatMatrix {
    let n = g.n;
    let rows = hom_dim(n, k + 1, m);
    let cols = hom_dim(n, k, m);
    let mut out = RatMatrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return out;
    }
    for (s, &mask) in space(n).masks(k + 1).iter().enumerate() {
        let xs = mask_elems(mask);
        for i in 0..xs.len() {
            let rest: Vec<usize> = xs.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, &x)| x).collect();
            add_eval(&mut out, n, s, m, &rest, &pm(i), Some(&action[xs[i]]));
        }
        for (i, j) in (0..xs.len()).tuple_combinations() {
            let br = g.bracket_basis(xs[i], xs[j]);
            let rest: Vec<usize> = xs.iter().enumerate().filter(|&(l, _)| l != i && l != j).map(|(_, &x)| x).collect();
            for (c, b) in br.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut idx = vec![c];
                idx.extend(&rest);
                add_eval(&mut out, n, s, m, &idx, &(b * pm(i + j)), None);
            }
        }
    }
    out
}

fn adjoint_action(g: &HomLieAlgebra, gamma: Option<&RatMatrix>) -> Vec<RatMatrix> {
    (0..g.n)
        .map(|i| {
            let x = match gamma {
                None => crate::hom::unit(g.n, i),
                Some(gm) => gm.column(i),
            };
            g.ad(&x)
        })
        .collect()
}

/// ∂_γ φ = γφ − φ∘Λᵏγ on Hom(Λᵏg, g).
pub fn d_gamma(g: &HomLieAlgebra, gamma: &RatMatrix, k: usize) -> RatMatrix {
    let rep = Representation {
        m: g.n,
        action: vec![RatMatrix::zeros(g.n, g.n); g.n],
        beta: gamma.clone(),
    };
    let twisted = HomLieAlgebra {
        alpha: gamma.clone(),
        ..g.clone()
    };
    alpha_ce::dna(&twisted, &rep, k, alpha_ce::Formula::Direct)
}

fn require_lie_endo(g: &HomLieAlgebra, gamma: &RatMatrix) -> Result<()> {
    if !g.is_lie() {
        return Err(Error::Invalid("the morphism complex needs a Lie algebra (α = id)".into()));
    }
    let rep = g.validate();
    if let Some(f) = rep.failures().next() {
        return Err(Error::Invalid(format!("not a Lie algebra: {} fails at {:?}", f.axiom, f.witness)));
    }
    g.check_endomorphism(gamma)
}

/// δ(φ, ψ) = (∂φ, −∂′ψ + ∂_γφ) on Cⁿ(g, γ), where ∂′ uses the twisted action x·y = [γx, y].
pub fn morphism_differential(g: &HomLieAlgebra, gamma: &RatMatrix, n: usize) -> Result<RatMatrix> {
    require_lie_endo(g, gamma)?;
    if n == 0 {
        return Err(Error::Degree("the complex starts in degree 1".into()));
    }
    Ok(morphism_differential_unchecked(g, gamma, n))
}

fn morphism_differential_unchecked(g: &HomLieAlgebra, gamma: &RatMatrix, n: usize) -> RatMatrix {
    let nn = g.n;
    let d = classical_ce(g, &adjoint_action(g, None), nn, n);
    let d_tw = classical_ce(g, &adjoint_action(g, Some(gamma)), nn, n - 1);
    let dg = d_gamma(g, gamma, n);
    let zero_tr = RatMatrix::zeros(hom_dim(nn, n + 1, nn), hom_dim(nn, n - 1, nn));
    RatMatrix::block2(&d, &zero_tr, &dg, &-&d_tw)
}

/// (ψ∘ν)(x_1, …, x_k) = Σ_{i<j} (−1)^{i+j−1} ψ([x_i,x_j], …x̂_i…x̂_j…) as a matrix
/// Hom(Λ^{k−1}g, g) → Hom(Λᵏg, g).
pub fn compose_with_bracket(g: &HomLieAlgebra, k: usize) -> RatMatrix {
    compose_with_bracket_into(g, k, g.n)
}

/// ψ ↦ ψ∘ν on Hom(Λᵏ⁻¹g, M) for a coefficient space of dimension m.
pub fn compose_with_bracket_into(g: &HomLieAlgebra, k: usize, m: usize) -> RatMatrix {
    let n = g.n;
    let rows = hom_dim(n, k, m);
    let cols = hom_dim(n, k.saturating_sub(1), m);
    let mut out = RatMatrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return out;
    }
    for (s, &mask) in space(n).masks(k).iter().enumerate() {
        let xs = mask_elems(mask);
        for (i, j) in (0..xs.len()).tuple_combinations() {
            let br = g.bracket_basis(xs[i], xs[j]);
            let rest: Vec<usize> = xs.iter().enumerate().filter(|&(l, _)| l != i && l != j).map(|(_, &x)| x).collect();
            for (c, b) in br.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut idx = vec![c];
                idx.extend(&rest);
                add_eval(&mut out, n, s, m, &idx, &(b * pm(i + j + 1)), None);
            }
        }
    }
    out
}

/// Post-composition with a linear map on Hom(Λᵏg, g).
fn post_compose(n: usize, k: usize, a: &RatMatrix) -> RatMatrix {
    let blocks = binom(n, k);
    let size = hom_dim(n, k, n);
    let mut out = RatMatrix::zeros(size, size);
    if k == 0 {
        return out;
    }
    for b in 0..blocks {
        out.paste(b * n, b * n, a);
    }
    out
}

/// Φ: Cⁿ(g, γ) → C̃ⁿ(g_γ), (φ, ψ) ↦ (γⁿ⁻¹φ + γⁿ⁻²(ψ∘ν), γⁿ⁻²ψ).
pub fn phi_matrix(g: &HomLieAlgebra, gamma: &RatMatrix, n: usize) -> RatMatrix {
    let nn = g.n;
    let top_left = post_compose(nn, n, &gamma.pow(n - 1));
    let (top_right, bottom_right) = if n >= 2 {
        let gp = gamma.pow(n - 2);
        (
            post_compose(nn, n, &gp).matmul(&compose_with_bracket(g, n)),
            post_compose(nn, n - 1, &gp),
        )
    } else {
        (
            RatMatrix::zeros(hom_dim(nn, n, nn), 0),
            RatMatrix::zeros(0, 0),
        )
    };
    let bottom_left = RatMatrix::zeros(hom_dim(nn, n - 1, nn), hom_dim(nn, n, nn));
    RatMatrix::block2(&top_left, &top_right, &bottom_left, &bottom_right)
}

/// Φ⁻¹(φ, ψ) = (γ^{1−n}(φ − ψ∘ν), γ^{2−n}ψ) for invertible γ.
pub fn phi_inverse_matrix(g: &HomLieAlgebra, gamma: &RatMatrix, n: usize) -> Result<RatMatrix> {
    let inv = invert(gamma)?;
    let nn = g.n;
    let top_left = post_compose(nn, n, &inv.pow(n - 1));
    let (top_right, bottom_right) = if n >= 2 {
        (
            -&top_left.matmul(&compose_with_bracket(g, n)),
            post_compose(nn, n - 1, &inv.pow(n - 2)),
        )
    } else {
        (
            RatMatrix::zeros(hom_dim(nn, n, nn), 0),
            RatMatrix::zeros(0, 0),
        )
    };
    let bottom_left = RatMatrix::zeros(hom_dim(nn, n - 1, nn), hom_dim(nn, n, nn));
    Ok(RatMatrix::block2(&top_left, &top_right, &bottom_left, &bottom_right))
}

pub fn phi_comparison(g: &HomLieAlgebra, gamma: &RatMatrix, c: &MorphismCochain) -> AlphaCochain {
    let v = phi_matrix(g, gamma, c.degree).mul_vec(&c.to_vector());
    let tw = HomLieAlgebra {
        bracket: gamma.matmul(&g.bracket),
        alpha: gamma.clone(),
        ..g.clone()
    };
    AlphaCochain::from_vector(&tw, &tw.adjoint(), c.degree, &v)
}

pub fn invert(a: &RatMatrix) -> Result<RatMatrix> {
    let n = a.rows();
    let (r, pivots) = a.hstack(&RatMatrix::identity(n)).rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Invalid("matrix is singular".into()));
    }
    Ok(r.submatrix(0, n, n, n))
}

/// Per-degree cohomology dimensions of C(g, γ), degrees 1..=max_degree.
pub fn morphism_cohomology(g: &HomLieAlgebra, gamma: &RatMatrix, max_degree: usize) -> Result<Vec<usize>> {
    require_lie_endo(g, gamma)?;
    let mut dims = Vec::new();
    let mut prev_rank = 0;
    for n in 1..=max_degree {
        let d = morphism_differential_unchecked(g, gamma, n);
        let r = rank(&d);
        dims.push(d.cols() - r - prev_rank);
        prev_rank = r;
    }
    Ok(dims)
}

/// Classical CE cohomology of g with adjoint coefficients, complex started in degree 1
/// (so degree 1 is Der(g)); entries for degrees 1..=max_degree.
pub fn classical_cohomology(g: &HomLieAlgebra, max_degree: usize) -> Vec<usize> {
    let action = adjoint_action(g, None);
    let mut dims = Vec::new();
    let mut prev_rank = 0;
    for k in 1..=max_degree {
        let d = classical_ce(g, &action, g.n, k);
        let r = rank(&d);
        dims.push(hom_dim(g.n, k, g.n) - r - prev_rank);
        prev_rank = r;
    }
    dims
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Classical dims with degree 1 replaced by Der(g); index 0 is degree 1.
    pub classical: Vec<usize>,
    /// Hⁿ + Hⁿ⁻¹ from the classical dims.
    pub predicted: Vec<usize>,
    /// α-type dims computed directly.
    pub alpha_type: Vec<usize>,
}

impl Decomposition {
    pub fn agrees(&self) -> bool {
        self.predicted == self.alpha_type
    }
}

pub fn lie_as_homlie(g: &HomLieAlgebra, max_degree: usize) -> Result<Decomposition> {
    if !g.is_lie() {
        return Err(Error::Invalid("decomposition needs α = id".into()));
    }
    let classical = classical_cohomology(g, max_degree);
    let predicted = (0..max_degree)
        .map(|i| classical[i] + if i == 0 { 0 } else { classical[i - 1] })
        .collect();
    let alpha_type = alpha_ce::cohomology(g, &g.adjoint(), max_degree)?.h_dims();
    Ok(Decomposition {
        classical,
        predicted,
        alpha_type,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteheadData {
    /// dim of derivations commuting with γ.
    pub der_gamma: usize,
    /// dim γ(Der g) / ∂_γ(Der g).
    pub quotient: usize,
}

pub fn whitehead_data(g: &HomLieAlgebra, gamma: &RatMatrix) -> Result<WhiteheadData> {
    invert(gamma).map_err(|_| Error::Invalid("γ must be invertible".into()))?;
    require_lie_endo(g, gamma)?;
    let n = g.n;
    let der = g.derivations();
    let flat = |m: &RatMatrix| (0..n).flat_map(|c| m.column(c)).collect::<Vec<_>>();
    let gder: Vec<Vec<Rational>> = der.iter().map(|d| flat(&gamma.matmul(d))).collect();
    let dgder: Vec<Vec<Rational>> = der
        .iter()
        .map(|d| flat(&(&gamma.matmul(d) - &d.matmul(gamma))))
        .collect();
    let big = RatMatrix::from_columns(n * n, &gder);
    let small = RatMatrix::from_columns(n * n, &dgder);
    let commuting = der_commuting_with(g, gamma);
    Ok(WhiteheadData {
        der_gamma: commuting,
        quotient: quotient_dim(&big, &small)?,
    })
}

fn der_commuting_with(g: &HomLieAlgebra, gamma: &RatMatrix) -> usize {
    let n = g.n;
    let der = g.derivations();
    if der.is_empty() {
        return 0;
    }
    // coefficients c with Σ c_i (γD_i − D_iγ) = 0
    let cols: Vec<Vec<Rational>> = der
        .iter()
        .map(|d| {
            let c = &gamma.matmul(d) - &d.matmul(gamma);
            (0..n).flat_map(|j| c.column(j)).collect()
        })
        .collect();
    kernel_basis(&RatMatrix::from_columns(n * n, &cols)).len()
}

/// Rank of the map Hⁿ(γ) → H̃ⁿ(g_γ) induced by Φ. With `nu_only`, only cocycles
/// of the form (φ, 0) are used, i.e. classical cocycles of g compatible with γ.
pub fn induced_rank(g: &HomLieAlgebra, gamma: &RatMatrix, n: usize, nu_only: bool) -> Result<usize> {
    let d = morphism_differential(g, gamma, n)?;
    let mut cycles = kernel_basis(&d);
    if nu_only {
        let split = hom_dim(g.n, n, g.n);
        let zm = RatMatrix::from_columns(d.cols(), &cycles);
        let psi = zm.submatrix(split, 0, d.cols() - split, cycles.len());
        cycles = kernel_basis(&psi).iter().map(|c| zm.mul_vec(c)).collect();
    }
    let tw = g.yau_twist(gamma)?;
    let p = phi_matrix(g, gamma, n);
    let images: Vec<Vec<Rational>> = cycles.iter().map(|z| p.mul_vec(z)).collect();
    let rows = p.rows();
    let boundaries = if n >= 2 {
        alpha_ce::total_differential(&tw, &tw.adjoint(), n - 1)
    } else {
        RatMatrix::zeros(rows, 0)
    };
    let both = boundaries.hstack(&RatMatrix::from_columns(rows, &images));
    Ok(rank(&both) - rank(&boundaries))
}

/// Unflatten helper for callers holding raw coordinate vectors.
pub fn cochain_from_vector(g: &HomLieAlgebra, n: usize, v: &[Rational]) -> MorphismCochain {
    let split = hom_dim(g.n, n, g.n);
    AlphaCochain {
        degree: n,
        phi: unflatten(g.n, n, g.n, &v[..split]),
        psi: unflatten(g.n, n - 1, g.n, &v[split..]),
    }
}
