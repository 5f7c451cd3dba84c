//! Truncated one-parameter formal deformations (ν_t, α_t) of a Hom-Lie algebra.
//!
//! Order-n equations, obstruction cochains (R¹ₙ, R²ₙ), the cocycle checks,
//! equivalence steps and greedy order-by-order extension.

use num_traits::{One, Zero};

use crate::alpha_ce::total_differential;
use crate::cochain::flatten;
use crate::error::{Error, Result};
use crate::exterior::{mask_elems, space};
use crate::hom::{unit, HomLieAlgebra};
use crate::linalg::{axpy, is_zero_vec, solve, vec_sub, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedDeformation {
    pub base: HomLieAlgebra,
    /// ν₁..ν_N as n × C(n,2) bracket matrices.
    pub nu: Vec<RatMatrix>,
    /// α₁..α_N.
    pub alpha: Vec<RatMatrix>,
}

/// ν(u, v) for a bracket matrix in the exterior encoding.
fn bil(nu: &RatMatrix, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let n = u.len();
    let mut out = vec![Rational::zero(); nu.rows()];
    for (col, &m) in space(n).masks(2).iter().enumerate() {
        let e = mask_elems(m);
        let (a, b) = (e[0], e[1]);
        let c = &u[a] * &v[b] - &u[b] * &v[a];
        if !c.is_zero() {
            axpy(&mut out, &c, &nu.column(col));
        }
    }
    out
}

fn map_from_columns(n: usize, k: usize, f: impl Fn(&[usize]) -> Vec<Rational>) -> RatMatrix {
    let cols: Vec<Vec<Rational>> = space(n).masks(k).iter().map(|&m| f(&mask_elems(m))).collect();
    RatMatrix::from_columns(n, &cols)
}

impl TruncatedDeformation {
    pub fn new(base: HomLieAlgebra, nu: Vec<RatMatrix>, alpha: Vec<RatMatrix>) -> Result<Self> {
        if nu.len() != alpha.len() {
            return Err(Error::Shape(format!("{} bracket terms but {} structure-map terms", nu.len(), alpha.len())));
        }
        let n = base.n;
        for (i, (v, a)) in nu.iter().zip(&alpha).enumerate() {
            if v.shape() != base.bracket.shape() || a.shape() != (n, n) {
                return Err(Error::Shape(format!("order {} term has the wrong shape", i + 1)));
            }
        }
        Ok(TruncatedDeformation { base, nu, alpha })
    }

    pub fn trivial(base: HomLieAlgebra, order: usize) -> Self {
        let nu = vec![RatMatrix::zeros(base.n, base.bracket.cols()); order];
        let alpha = vec![RatMatrix::zeros(base.n, base.n); order];
        TruncatedDeformation { base, nu, alpha }
    }

    pub fn order(&self) -> usize {
        self.nu.len()
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    fn nu_at(&self, i: usize) -> &RatMatrix {
        if i == 0 {
            &self.base.bracket
        } else {
            &self.nu[i - 1]
        }
    }

    fn alpha_at(&self, i: usize) -> &RatMatrix {
        if i == 0 {
            &self.base.alpha
        } else {
            &self.alpha[i - 1]
        }
    }

    /// Σ ⟲ ν_i(α_j x, ν_k(y,z)) over i+j+k = n with every index ≤ bound.
    fn jacobi_sum(&self, n: usize, bound: usize) -> RatMatrix {
        let dim = self.n();
        map_from_columns(dim, 3, |xs| {
            let mut acc = vec![Rational::zero(); dim];
            for (x, y, z) in [(xs[0], xs[1], xs[2]), (xs[1], xs[2], xs[0]), (xs[2], xs[0], xs[1])] {
                for i in 0..=bound.min(n) {
                    for j in 0..=bound.min(n - i) {
                        let k = n - i - j;
                        if k > bound {
                            continue;
                        }
                        let inner = bil(self.nu_at(k), &unit(dim, y), &unit(dim, z));
                        let ax = self.alpha_at(j).column(x);
                        axpy(&mut acc, &Rational::one(), &bil(self.nu_at(i), &ax, &inner));
                    }
                }
            }
            acc
        })
    }

    /// Σ ν_i(α_j x, α_k y) over i+j+k = n with every index ≤ bound.
    fn twisted_bracket_sum(&self, n: usize, bound: usize) -> RatMatrix {
        let dim = self.n();
        map_from_columns(dim, 2, |xs| {
            let mut acc = vec![Rational::zero(); dim];
            for i in 0..=bound.min(n) {
                for j in 0..=bound.min(n - i) {
                    let k = n - i - j;
                    if k > bound {
                        continue;
                    }
                    let v = bil(self.nu_at(i), &self.alpha_at(j).column(xs[0]), &self.alpha_at(k).column(xs[1]));
                    axpy(&mut acc, &Rational::one(), &v);
                }
            }
            acc
        })
    }

    /// Σ α_i ν_{n−i} over lo ≤ i ≤ hi.
    fn alpha_nu_sum(&self, n: usize, lo: usize, hi: usize) -> RatMatrix {
        let mut acc = RatMatrix::zeros(self.n(), self.base.bracket.cols());
        for i in lo..=hi {
            acc = &acc + &self.alpha_at(i).matmul(self.nu_at(n - i));
        }
        acc
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.order() {
            return Err(Error::Degree(format!("order {n} exceeds truncation {}", self.order())));
        }
        Ok(())
    }

    /// Order-n coefficient of the Hom-Jacobi expansion.
    pub fn residual_jacobi(&self, n: usize) -> Result<RatMatrix> {
        self.check_order(n)?;
        Ok(self.jacobi_sum(n, n))
    }

    /// Order-n coefficient of α_t∘ν_t − ν_t∘(α_t ⊗ α_t).
    pub fn residual_mult(&self, n: usize) -> Result<RatMatrix> {
        self.check_order(n)?;
        Ok(&self.alpha_nu_sum(n, 0, n) - &self.twisted_bracket_sum(n, n))
    }

    /// Highest k ≤ N such that the equations hold at every order ≤ k, or None
    /// if the base itself fails.
    pub fn valid_to(&self) -> Option<usize> {
        let mut last = None;
        for k in 0..=self.order() {
            let ok = self.residual_jacobi(k).map(|m| m.is_zero()).unwrap_or(false)
                && self.residual_mult(k).map(|m| m.is_zero()).unwrap_or(false);
            if !ok {
                break;
            }
            last = Some(k);
        }
        last
    }

    /// (R¹ₙ, R²ₙ), built from terms of order ≤ n−1. Valid for n ≤ N+1.
    pub fn obstruction(&self, n: usize) -> Result<(RatMatrix, RatMatrix)> {
        if n == 0 || n > self.order() + 1 {
            return Err(Error::Degree(format!("obstruction order {n} out of range 1..={}", self.order() + 1)));
        }
        match self.valid_to() {
            Some(k) if k + 1 >= n => {}
            Some(k) => {
                return Err(Error::Invalid(format!("deformation fails its equations at order {}", k + 1)));
            }
            None => return Err(Error::Invalid("base is not a Hom-Lie algebra".into())),
        }
        let r1 = -&self.jacobi_sum(n, n - 1);
        let r2 = &self.twisted_bracket_sum(n, n - 1) - &self.alpha_nu_sum(n, 1, n - 1);
        Ok((r1, r2))
    }

    /// Coordinates of (νₙ, αₙ) in C̃².
    pub fn term_vector(&self, n: usize) -> Vec<Rational> {
        let mut v = flatten(self.nu_at(n));
        v.extend(flatten(self.alpha_at(n)));
        v
    }

    fn differential(&self, k: usize) -> RatMatrix {
        total_differential(&self.base, &self.base.adjoint(), k)
    }
}

fn pair_vector(a: &RatMatrix, b: &RatMatrix) -> Vec<Rational> {
    let mut v = flatten(a);
    v.extend(flatten(b));
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleReport {
    pub order: usize,
    /// ∂(ν₁, α₁) = 0, checked when order = 1.
    pub first_order_cocycle: Option<bool>,
    /// ∂(νₙ, αₙ) − (R¹ₙ, R²ₙ) equals the order-n residuals exactly.
    pub identity_holds: bool,
    /// The order-n equations hold.
    pub order_valid: bool,
    /// ∂(R¹ₙ, R²ₙ) = 0.
    pub obstruction_closed: bool,
}

impl CocycleReport {
    /// The identity and closedness hold, and at order 1 the cocycle condition
    /// agrees with validity.
    pub fn passed(&self) -> bool {
        self.identity_holds && self.obstruction_closed && self.first_order_cocycle.is_none_or(|c| c == self.order_valid)
    }
}

pub fn verify_cocycle_identities(d: &TruncatedDeformation, n: usize) -> Result<CocycleReport> {
    d.check_order(n)?;
    let (r1, r2) = d.obstruction(n)?;
    let d2 = d.differential(2);
    let d3 = d.differential(3);
    let lhs = vec_sub(&d2.mul_vec(&d.term_vector(n)), &pair_vector(&r1, &r2));
    let jac = d.residual_jacobi(n)?;
    let mult = d.residual_mult(n)?;
    let residual = pair_vector(&jac, &mult);
    let first = (n == 1).then(|| is_zero_vec(&d2.mul_vec(&d.term_vector(1))));
    Ok(CocycleReport {
        order: n,
        first_order_cocycle: first,
        identity_holds: lhs == residual,
        order_valid: is_zero_vec(&residual),
        obstruction_closed: is_zero_vec(&d3.mul_vec(&pair_vector(&r1, &r2))),
    })
}

/// Sₙ with (id + tⁿSₙ) carrying `other` to a deformation that agrees with `d`
/// through order n, or None when νₙ − ν′ₙ is a nontrivial class.
pub fn equivalence_step(d: &TruncatedDeformation, other: &TruncatedDeformation, n: usize) -> Result<Option<RatMatrix>> {
    if d.base != other.base {
        return Err(Error::Invalid("deformations of different algebras".into()));
    }
    d.check_order(n)?;
    other.check_order(n)?;
    if n == 0 {
        return Err(Error::Degree("equivalence steps start at order 1".into()));
    }
    for i in 1..n {
        if d.nu_at(i) != other.nu_at(i) || d.alpha_at(i) != other.alpha_at(i) {
            return Err(Error::Invalid(format!("deformations differ at order {i} < {n}")));
        }
    }
    let diff = vec_sub(&d.term_vector(n), &other.term_vector(n));
    if !is_zero_vec(&d.differential(2).mul_vec(&diff)) {
        return Err(Error::Invalid(format!("order-{n} difference is not a 2-cocycle")));
    }
    let dim = d.n();
    Ok(solve(&d.differential(1), &diff)?.map(|t| {
        let mut s = RatMatrix::zeros(dim, dim);
        for c in 0..dim {
            for r in 0..dim {
                s[(r, c)] = -&t[c * dim + r];
            }
        }
        s
    }))
}

/// Coefficients T₀..T_N of the inverse series of S = id + Σ Sᵢtⁱ.
fn inverse_series(s: &[RatMatrix], order: usize, dim: usize) -> Vec<RatMatrix> {
    let s_at = |i: usize| if i == 0 { RatMatrix::identity(dim) } else { s.get(i - 1).cloned().unwrap_or_else(|| RatMatrix::zeros(dim, dim)) };
    let mut t = vec![RatMatrix::identity(dim)];
    for m in 1..=order {
        let mut acc = RatMatrix::zeros(dim, dim);
        for i in 1..=m {
            acc = &acc - &s_at(i).matmul(&t[m - i]);
        }
        t.push(acc);
    }
    t
}

/// The deformation [u,v]ᵗ = S[S⁻¹u, S⁻¹v]′, α = Sα′S⁻¹ for S = id + Σ Sᵢtⁱ, truncated at the order of `d`.
pub fn transport(d: &TruncatedDeformation, s: &[RatMatrix]) -> Result<TruncatedDeformation> {
    let dim = d.n();
    if s.iter().any(|m| m.shape() != (dim, dim)) {
        return Err(Error::Shape("series terms must be square of the algebra dimension".into()));
    }
    let order = d.order();
    let t = inverse_series(s, order, dim);
    let s_at = |i: usize| if i == 0 { RatMatrix::identity(dim) } else { s.get(i - 1).cloned().unwrap_or_else(|| RatMatrix::zeros(dim, dim)) };
    let mut nu = Vec::new();
    let mut alpha = Vec::new();
    for m in 1..=order {
        let mut a = RatMatrix::zeros(dim, dim);
        for p in 0..=m {
            for q in 0..=m - p {
                a = &a + &s_at(p).matmul(d.alpha_at(q)).matmul(&t[m - p - q]);
            }
        }
        alpha.push(a);
        let b = map_from_columns(dim, 2, |xs| {
            let mut acc = vec![Rational::zero(); dim];
            for p in 0..=m {
                for q in 0..=m - p {
                    for r in 0..=m - p - q {
                        let u = t[r].column(xs[0]);
                        let v = t[m - p - q - r].column(xs[1]);
                        let w = s_at(p).mul_vec(&bil(d.nu_at(q), &u, &v));
                        axpy(&mut acc, &Rational::one(), &w);
                    }
                }
            }
            acc
        });
        nu.push(b);
    }
    TruncatedDeformation::new(d.base.clone(), nu, alpha)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extension {
    pub deformation: TruncatedDeformation,
    /// First order whose obstruction has no solution.
    pub obstructed_at: Option<usize>,
}

/// Extends a deformation valid through its own order by solving
/// ∂(νₘ, αₘ) = (R¹ₘ, R²ₘ) for m up to `target`.
pub fn extend_greedy(d: &TruncatedDeformation, target: usize) -> Result<Extension> {
    if d.valid_to() != Some(d.order()) {
        return Err(Error::Invalid("deformation must satisfy its equations through its order".into()));
    }
    let d2 = d.differential(2);
    let dim = d.n();
    let split = d.base.bracket.rows() * d.base.bracket.cols();
    let mut cur = d.clone();
    for m in d.order() + 1..=target {
        let (r1, r2) = cur.obstruction(m)?;
        match solve(&d2, &pair_vector(&r1, &r2))? {
            Some(x) => {
                cur.nu.push(crate::cochain::unflatten(dim, 2, dim, &x[..split]));
                cur.alpha.push(crate::cochain::unflatten(dim, 1, dim, &x[split..]));
            }
            None => {
                return Ok(Extension {
                    deformation: cur,
                    obstructed_at: Some(m),
                })
            }
        }
    }
    Ok(Extension {
        deformation: cur,
        obstructed_at: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{example1, lie_example, sl2};
    use crate::cochain::unflatten;
    use crate::linalg::{kernel_basis, rat, vec_scale};

    fn cocycle_combo(g: &HomLieAlgebra, coeffs: &[i64]) -> (RatMatrix, RatMatrix) {
        let n = g.n;
        let z = kernel_basis(&total_differential(g, &g.adjoint(), 2));
        let mut v = vec![rat(0); z[0].len()];
        for (c, b) in coeffs.iter().zip(&z) {
            v = crate::linalg::vec_add(&v, &vec_scale(b, &rat(*c)));
        }
        let split = g.bracket.rows() * g.bracket.cols();
        (unflatten(n, 2, n, &v[..split]), unflatten(n, 1, n, &v[split..]))
    }

    fn first_order(g: &HomLieAlgebra, coeffs: &[i64]) -> TruncatedDeformation {
        let (nu, a) = cocycle_combo(g, coeffs);
        TruncatedDeformation::new(g.clone(), vec![nu], vec![a]).unwrap()
    }

    #[test]
    fn trivial_deformation() {
        let d = TruncatedDeformation::trivial(example1(), 3);
        for n in 0..=3 {
            assert!(d.residual_jacobi(n).unwrap().is_zero());
            assert!(d.residual_mult(n).unwrap().is_zero());
        }
        for n in 1..=4 {
            let (r1, r2) = d.obstruction(n).unwrap();
            assert!(r1.is_zero() && r2.is_zero());
        }
        assert!(d.residual_jacobi(4).is_err());
        assert!(verify_cocycle_identities(&d, 2).unwrap().passed());
    }

    #[test]
    fn abelian_order_two() {
        let base = HomLieAlgebra::abelian(3, RatMatrix::identity(3));
        let nu1 = RatMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 2], &[0, 3, 1]]);
        let nu2 = RatMatrix::from_i64(&[&[5, 0, 0], &[0, 0, 0], &[0, 0, 7]]);
        let d = TruncatedDeformation::new(base, vec![nu1.clone(), nu2], vec![RatMatrix::zeros(3, 3); 2]).unwrap();
        let e = |i| unit(3, i);
        let cyc = {
            let f = |a: usize, b: usize, c: usize| bil(&nu1, &e(a), &bil(&nu1, &e(b), &e(c)));
            let mut v = f(0, 1, 2);
            axpy(&mut v, &rat(1), &f(1, 2, 0));
            axpy(&mut v, &rat(1), &f(2, 0, 1));
            v
        };
        assert_eq!(d.residual_jacobi(2).unwrap().column(0), cyc);
        let (r1, r2) = d.obstruction(2).unwrap();
        assert_eq!(r1.column(0), vec_scale(&cyc, &rat(-1)));
        assert!(r2.is_zero());
    }

    #[test]
    fn first_order_structure_map_must_be_derivation() {
        let g = sl2();
        let ad_h = g.ad(&unit(3, 0));
        let d = TruncatedDeformation::new(g.clone(), vec![RatMatrix::zeros(3, 3)], vec![ad_h]).unwrap();
        assert!(d.residual_mult(1).unwrap().is_zero());
        let proj = RatMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let d = TruncatedDeformation::new(g, vec![RatMatrix::zeros(3, 3)], vec![proj]).unwrap();
        assert!(!d.residual_mult(1).unwrap().is_zero());
        let rep = verify_cocycle_identities(&d, 1).unwrap();
        assert_eq!(rep.first_order_cocycle, Some(false));
        assert!(rep.passed());
    }

    #[test]
    fn second_cohomology_class_is_first_order() {
        let g = lie_example();
        // φ(x,y) = z, φ(x,z) = −y + 2z
        let nu1 = RatMatrix::from_i64(&[&[0, 0, 0], &[0, -1, 0], &[1, 2, 0]]);
        let d = TruncatedDeformation::new(g.clone(), vec![nu1.clone()], vec![RatMatrix::zeros(3, 3)]).unwrap();
        let rep = verify_cocycle_identities(&d, 1).unwrap();
        assert_eq!(rep.first_order_cocycle, Some(true));
        assert!(rep.order_valid && rep.passed());
        let c = crate::alpha_ce::AlphaCochain { degree: 2, phi: nu1, psi: RatMatrix::zeros(3, 3) };
        assert!(crate::alpha_ce::is_nontrivial_class(&g, &g.adjoint(), &c));
        // without the 2z term it is not closed
        let printed = RatMatrix::from_i64(&[&[0, 0, 0], &[0, -1, 0], &[1, 0, 0]]);
        let d = TruncatedDeformation::new(g, vec![printed], vec![RatMatrix::zeros(3, 3)]).unwrap();
        assert_eq!(verify_cocycle_identities(&d, 1).unwrap().first_order_cocycle, Some(false));
    }

    #[test]
    fn identity_on_arbitrary_next_term() {
        for g in [example1(), lie_example(), sl2()] {
            let ext = extend_greedy(&first_order(&g, &[1, -2, 3, 1, 1]), 2).unwrap();
            let mut d = ext.deformation;
            let k = d.order();
            d.nu.push(RatMatrix::from_i64(&[&[1, 0, 2], &[0, -1, 0], &[3, 0, 1]]));
            d.alpha.push(RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[2, 0, 1]]));
            let rep = verify_cocycle_identities(&d, k + 1).unwrap();
            assert!(rep.identity_holds && rep.obstruction_closed, "{rep:?}");
        }
    }

    #[test]
    fn sl2_extends_to_order_four() {
        let g = sl2();
        let ext = extend_greedy(&first_order(&g, &[1, 2, -1]), 4).unwrap();
        assert_eq!(ext.obstructed_at, None);
        assert_eq!(ext.deformation.valid_to(), Some(4));
        for n in 1..=4 {
            assert!(verify_cocycle_identities(&ext.deformation, n).unwrap().passed());
        }
    }

    #[test]
    fn equivalence_through_transport() {
        let g = lie_example();
        let d = extend_greedy(&first_order(&g, &[1, 1, 0, 2]), 2).unwrap().deformation;
        let s1 = RatMatrix::from_i64(&[&[1, 2, 0], &[0, 0, 1], &[1, 0, -1]]);
        let moved = transport(&d, &[s1]).unwrap();
        assert_eq!(moved.valid_to(), Some(2));
        let s = equivalence_step(&d, &moved, 1).unwrap().expect("equivalent");
        let back = transport(&moved, &[s]).unwrap();
        assert_eq!(back.nu[0], d.nu[0]);
        assert_eq!(back.alpha[0], d.alpha[0]);
        assert_eq!(equivalence_step(&d, &d, 1).unwrap(), Some(RatMatrix::zeros(3, 3)));
    }

    #[test]
    fn equivalence_preconditions() {
        let g = lie_example();
        let d = TruncatedDeformation::trivial(g.clone(), 1);
        let bad = TruncatedDeformation::new(g, vec![RatMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]])], vec![RatMatrix::zeros(3, 3)]).unwrap();
        assert!(equivalence_step(&d, &bad, 1).is_err());
        assert!(bad.obstruction(2).is_err());
    }
}
