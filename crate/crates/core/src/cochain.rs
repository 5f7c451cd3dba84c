//! Cochain spaces Hom(Λᵏg, M) and the matrix assembly shared by all complexes.
//!
//! A cochain f: Λᵏg → M is an m × C(n,k) matrix. Flattened, coordinate
//! `col * m + row` holds f(e_col)_row. Hom(Λ⁰g, M) is taken to be zero.

use num_traits::Zero;

use crate::exterior::{binom, space};
use crate::linalg::{RatMatrix, Rational};

pub fn hom_dim(n: usize, k: usize, m: usize) -> usize {
    if k == 0 {
        0
    } else {
        binom(n, k) * m
    }
}

/// (dim Hom(Λⁿg, M), dim Hom(Λⁿ⁻¹g, M)): the φ and ψ parts of C̃ⁿ.
pub fn cochain_dim_parts(n: usize, degree: usize, m: usize) -> (usize, usize) {
    (hom_dim(n, degree, m), hom_dim(n, degree.saturating_sub(1), m))
}

pub fn flatten(f: &RatMatrix) -> Vec<Rational> {
    (0..f.cols()).flat_map(|c| f.column(c)).collect()
}

pub fn unflatten(n: usize, k: usize, m: usize, v: &[Rational]) -> RatMatrix {
    assert_eq!(v.len(), hom_dim(n, k, m), "cochain vector has wrong length");
    let cols = if k == 0 { 0 } else { binom(n, k) };
    let mut f = RatMatrix::zeros(m, cols);
    for c in 0..cols {
        for r in 0..m {
            f[(r, c)] = v[c * m + r].clone();
        }
    }
    f
}

/// One summand of an output value: `a · f(w)`, with `a = None` meaning the identity.
pub struct Term {
    pub a: Option<RatMatrix>,
    pub w: Vec<Rational>,
}

impl Term {
    pub fn eval(a: Option<RatMatrix>, w: Vec<Rational>) -> Self {
        Term { a, w }
    }
}

/// Matrix of the linear map Hom(Λ^k_in, M_in) → Hom(Λ^k_out, M_out) given by
/// f ↦ (S ↦ Σ_terms a · f(w)), where `terms(S)` lists the summands for the
/// output monomial S.
pub fn assemble<F>(n: usize, k_in: usize, m_in: usize, k_out: usize, m_out: usize, terms: F) -> RatMatrix
where
    F: Fn(u32) -> Vec<Term>,
{
    let rows = hom_dim(n, k_out, m_out);
    let cols = hom_dim(n, k_in, m_in);
    let mut out = RatMatrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return out;
    }
    for (s, &mask) in space(n).masks(k_out).iter().enumerate() {
        for term in terms(mask) {
            for (t, wt) in term.w.iter().enumerate() {
                if wt.is_zero() {
                    continue;
                }
                match &term.a {
                    None => {
                        for r in 0..m_out {
                            out[(s * m_out + r, t * m_in + r)] += wt;
                        }
                    }
                    Some(a) => {
                        for r in 0..m_out {
                            for q in 0..m_in {
                                let c = &a[(r, q)];
                                if !c.is_zero() {
                                    out[(s * m_out + r, t * m_in + q)] += c * wt;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Matrix of a linear operator given as a function on cochains, built column by column.
pub fn assemble_by_columns<F>(n: usize, k_in: usize, m_in: usize, k_out: usize, m_out: usize, op: F) -> RatMatrix
where
    F: Fn(&RatMatrix) -> RatMatrix,
{
    let rows = hom_dim(n, k_out, m_out);
    let cols = hom_dim(n, k_in, m_in);
    let mut out = RatMatrix::zeros(rows, cols);
    for c in 0..cols {
        let mut e = vec![Rational::zero(); cols];
        e[c] = Rational::from_integer(1.into());
        let img = op(&unflatten(n, k_in, m_in, &e));
        if rows > 0 {
            out.set_column(c, &flatten(&img));
        }
    }
    out
}
