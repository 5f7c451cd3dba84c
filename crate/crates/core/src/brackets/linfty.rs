//! The low-degree L∞ brackets on C̃(g, g), the Hom-Lie Maurer–Cartan
//! expansion, and the differentials obtained from the brackets by inserting
//! the Maurer–Cartan element.
//!
//! Maps are plain `MultiMap`s; `f ∧ g` is the shuffle wedge and juxtaposition
//! is composition.

use num_traits::One;

use super::add_maps;
use crate::alpha_ce::total_differential;
use crate::cochain::{assemble_by_columns, cochain_dim_parts};
use crate::error::{Error, Result};
use crate::exterior::MultiMap;
use crate::hom::HomLieAlgebra;
use crate::linalg::{ratio, RatMatrix, Rational};

fn expect(m: &MultiMap, src: usize, tgt: usize, what: &str) -> Result<()> {
    if m.src != src || m.tgt != tgt {
        return Err(Error::Shape(format!(
            "{what} must map Λ^{src} → Λ^{tgt}, got Λ^{} → Λ^{}",
            m.src, m.tgt
        )));
    }
    Ok(())
}

fn sum(a: MultiMap, b: MultiMap) -> MultiMap {
    add_maps(&a, &b, &Rational::one())
}

fn neg(a: MultiMap) -> MultiMap {
    MultiMap { mat: -&a.mat, ..a }
}

/// [ν₁, ν₂, α]_ν = ν₁(ν₂ ∧ α) + ν₂(ν₁ ∧ α).
pub fn nu_nu_alpha(nu1: &MultiMap, nu2: &MultiMap, alpha: &MultiMap) -> Result<MultiMap> {
    expect(nu1, 2, 1, "ν₁")?;
    expect(nu2, 2, 1, "ν₂")?;
    expect(alpha, 1, 1, "α")?;
    Ok(sum(nu1.compose(&nu2.wedge(alpha)), nu2.compose(&nu1.wedge(alpha))))
}

/// [ν, α]_α = αν.
pub fn nu_alpha(nu: &MultiMap, alpha: &MultiMap) -> Result<MultiMap> {
    expect(nu, 2, 1, "ν")?;
    expect(alpha, 1, 1, "α")?;
    Ok(alpha.compose(nu))
}

/// [ν, α₁, α₂]_α = −ν(α₁ ∧ α₂).
pub fn nu_alpha_alpha(nu: &MultiMap, a1: &MultiMap, a2: &MultiMap) -> Result<MultiMap> {
    expect(nu, 2, 1, "ν")?;
    expect(a1, 1, 1, "α₁")?;
    expect(a2, 1, 1, "α₂")?;
    Ok(neg(nu.compose(&a1.wedge(a2))))
}

/// [φ₃, ν, α₁, α₂]_ν = φ₃(ν ∧ α₁ ∧ α₂) − ν(φ₃ ∧ α₁α₂) − ν(φ₃ ∧ α₂α₁).
pub fn phi_nu_alpha_alpha(phi: &MultiMap, nu: &MultiMap, a1: &MultiMap, a2: &MultiMap) -> Result<MultiMap> {
    expect(phi, 3, 1, "φ₃")?;
    expect(nu, 2, 1, "ν")?;
    expect(a1, 1, 1, "α₁")?;
    expect(a2, 1, 1, "α₂")?;
    let first = phi.compose(&nu.wedge(a1).wedge(a2));
    let second = nu.compose(&phi.wedge(&a1.compose(a2)));
    let third = nu.compose(&phi.wedge(&a2.compose(a1)));
    Ok(sum(first, neg(sum(second, third))))
}

/// [ψ₃, ν₁, ν₂, α₁, α₂]_ν = Σ_{σ∈S₂} ν_{σ1}(ψ₃ ∧ ν_{σ2}(α₁ ∧ α₂)).
pub fn psi_nu_nu_alpha_alpha(psi: &MultiMap, nu1: &MultiMap, nu2: &MultiMap, a1: &MultiMap, a2: &MultiMap) -> Result<MultiMap> {
    expect(psi, 2, 1, "ψ₃")?;
    expect(nu1, 2, 1, "ν₁")?;
    expect(nu2, 2, 1, "ν₂")?;
    expect(a1, 1, 1, "α₁")?;
    expect(a2, 1, 1, "α₂")?;
    let aa = a1.wedge(a2);
    let t1 = nu1.compose(&psi.wedge(&nu2.compose(&aa)));
    let t2 = nu2.compose(&psi.wedge(&nu1.compose(&aa)));
    Ok(sum(t1, t2))
}

/// [φ₃, α]_α = αφ₃.
pub fn phi_alpha(phi: &MultiMap, alpha: &MultiMap) -> Result<MultiMap> {
    expect(phi, 3, 1, "φ₃")?;
    expect(alpha, 1, 1, "α")?;
    Ok(alpha.compose(phi))
}

/// [φ₃, α₁, α₂, α₃]_α = −φ₃(α₁ ∧ α₂ ∧ α₃).
pub fn phi_alpha3(phi: &MultiMap, a1: &MultiMap, a2: &MultiMap, a3: &MultiMap) -> Result<MultiMap> {
    expect(phi, 3, 1, "φ₃")?;
    for a in [a1, a2, a3] {
        expect(a, 1, 1, "αᵢ")?;
    }
    Ok(neg(phi.compose(&a1.wedge(a2).wedge(a3))))
}

/// [ψ₃, ν, α]_α = ψ₃(α ∧ ν).
pub fn psi_nu_alpha(psi: &MultiMap, nu: &MultiMap, alpha: &MultiMap) -> Result<MultiMap> {
    expect(psi, 2, 1, "ψ₃")?;
    expect(nu, 2, 1, "ν")?;
    expect(alpha, 1, 1, "α")?;
    Ok(psi.compose(&alpha.wedge(nu)))
}

/// [ψ₃, ν, α₁, α₂]_α = −ν(ψ₃ ∧ α₁α₂) − ν(ψ₃ ∧ α₂α₁).
pub fn psi_nu_alpha_alpha(psi: &MultiMap, nu: &MultiMap, a1: &MultiMap, a2: &MultiMap) -> Result<MultiMap> {
    expect(psi, 2, 1, "ψ₃")?;
    expect(nu, 2, 1, "ν")?;
    expect(a1, 1, 1, "α₁")?;
    expect(a2, 1, 1, "α₂")?;
    let t1 = nu.compose(&psi.wedge(&a1.compose(a2)));
    let t2 = nu.compose(&psi.wedge(&a2.compose(a1)));
    Ok(neg(sum(t1, t2)))
}

fn scaled(m: MultiMap, s: Rational) -> MultiMap {
    MultiMap { mat: m.mat.scale(&s), ..m }
}

pub fn nu_of(g: &HomLieAlgebra) -> MultiMap {
    MultiMap::with_default_height(g.n, 2, 1, g.bracket.clone()).expect("bracket shape")
}

pub fn alpha_of(g: &HomLieAlgebra) -> MultiMap {
    MultiMap::with_default_height(g.n, 1, 1, g.alpha.clone()).expect("square α")
}

/// Σ_k (1/k!) l_k(x, …, x) for x = (ν, α), as (Λ³ → g, Λ² → g).
pub fn mc_check_homlie(g: &HomLieAlgebra) -> Result<(MultiMap, MultiMap)> {
    let nu = nu_of(g);
    let a = alpha_of(g);
    let jac = scaled(nu_nu_alpha(&nu, &nu, &a)?, ratio(1, 2));
    let mult = sum(nu_alpha(&nu, &a)?, scaled(nu_alpha_alpha(&nu, &a, &a)?, ratio(1, 2)));
    Ok((jac, mult))
}

/// The linear part of the bracket expansion at the Maurer–Cartan element,
/// as four blocks [[νν, αν], [να, αα]] on C̃ⁿ for n ∈ {2, 3}: each listed
/// bracket with the remaining slots filled by ν and α, weighted 1/(a!·b!)
/// for a copies of α and b copies of ν.
pub fn bracket_differential_blocks(g: &HomLieAlgebra, n: usize) -> Result<[RatMatrix; 4]> {
    let nu = nu_of(g);
    let a = alpha_of(g);
    let dim = g.n;
    let half = ratio(1, 2);
    let op = |src: usize, f: &dyn Fn(&MultiMap) -> Result<MultiMap>, out_src: usize| -> Result<RatMatrix> {
        let err = std::cell::RefCell::new(None);
        let m = assemble_by_columns(dim, src, dim, out_src, dim, |c| {
            let input = MultiMap::with_default_height(dim, src, 1, c.clone()).expect("cochain shape");
            match f(&input) {
                Ok(r) => r.mat,
                Err(e) => {
                    *err.borrow_mut() = Some(e);
                    RatMatrix::zeros(dim, crate::exterior::binom(dim, out_src))
                }
            }
        });
        match err.into_inner() {
            Some(e) => Err(e),
            None => Ok(m),
        }
    };
    match n {
        2 => Ok([
            op(2, &|phi| nu_nu_alpha(phi, &nu, &a), 3)?,
            op(1, &|psi| Ok(scaled(nu_nu_alpha(&nu, &nu, psi)?, half.clone())), 3)?,
            op(2, &|phi| Ok(sum(nu_alpha(phi, &a)?, scaled(nu_alpha_alpha(phi, &a, &a)?, half.clone()))), 2)?,
            op(1, &|psi| Ok(sum(nu_alpha(&nu, psi)?, nu_alpha_alpha(&nu, psi, &a)?)), 2)?,
        ]),
        3 => Ok([
            op(3, &|phi| Ok(scaled(phi_nu_alpha_alpha(phi, &nu, &a, &a)?, half.clone())), 4)?,
            op(2, &|psi| Ok(scaled(psi_nu_nu_alpha_alpha(psi, &nu, &nu, &a, &a)?, ratio(1, 4))), 4)?,
            op(3, &|phi| Ok(sum(phi_alpha(phi, &a)?, scaled(phi_alpha3(phi, &a, &a, &a)?, ratio(1, 6)))), 3)?,
            op(2, &|psi| Ok(sum(psi_nu_alpha(psi, &nu, &a)?, scaled(psi_nu_alpha_alpha(psi, &nu, &a, &a)?, half.clone()))), 3)?,
        ]),
        _ => Err(Error::Degree(format!("brackets are listed for C̃² and C̃³ only, not C̃{n}"))),
    }
}

/// Per-block sign s with bracket block = s · (block of ∂), or None where a
/// block is not ± the corresponding block of `total_differential`.
pub fn differential_consistency(g: &HomLieAlgebra, n: usize) -> Result<[Option<i8>; 4]> {
    let blocks = bracket_differential_blocks(g, n)?;
    let d = total_differential(g, &g.adjoint(), n);
    let (nu_in, _) = cochain_dim_parts(g.n, n, g.n);
    let (nu_out, _) = cochain_dim_parts(g.n, n + 1, g.n);
    let parts = [
        d.submatrix(0, 0, nu_out, nu_in),
        d.submatrix(0, nu_in, nu_out, d.cols() - nu_in),
        d.submatrix(nu_out, 0, d.rows() - nu_out, nu_in),
        d.submatrix(nu_out, nu_in, d.rows() - nu_out, d.cols() - nu_in),
    ];
    let mut out = [None; 4];
    for (k, (b, p)) in blocks.iter().zip(&parts).enumerate() {
        out[k] = if b == p {
            Some(1)
        } else if *b == -p {
            Some(-1)
        } else {
            None
        };
    }
    Ok(out)
}
