//! Hom-Lie coalgebras and bialgebras.

use num_traits::{Signed, Zero};

use super::{pairs, unit, AxiomCheck, HomLieAlgebra, ValidationReport};
use crate::error::{Error, Result};
use crate::exterior::{binom, compound, mask_elems, space, wedge_vectors};
use crate::linalg::{axpy, vec_sub, RatMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistMode {
    Bracket,
    Cobracket,
    Both,
}

/// (g, ν, δ, α, β). The cobracket is a C(n,2) × n matrix: column i is δ(e_i) ∈ Λ²g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLieBialgebra {
    pub alg: HomLieAlgebra,
    pub cobracket: RatMatrix,
    pub beta: RatMatrix,
}

impl HomLieBialgebra {
    pub fn new(alg: HomLieAlgebra, cobracket: RatMatrix, beta: RatMatrix) -> Result<Self> {
        let n = alg.n;
        if cobracket.shape() != (binom(n, 2), n) {
            return Err(Error::Shape(format!("cobracket on dimension {n} must be {}x{n}", binom(n, 2))));
        }
        if beta.shape() != (n, n) {
            return Err(Error::Shape("β must be n x n".into()));
        }
        Ok(HomLieBialgebra { alg, cobracket, beta })
    }

    /// A Hom-Lie algebra with zero cobracket and β = α.
    pub fn from_algebra(alg: HomLieAlgebra) -> Self {
        let n = alg.n;
        let beta = alg.alpha.clone();
        HomLieBialgebra {
            alg,
            cobracket: RatMatrix::zeros(binom(n, 2), n),
            beta,
        }
    }

    pub fn n(&self) -> usize {
        self.alg.n
    }

    /// The algebra (g*, δᵀ, βᵀ); Hom-Jacobi there is co-Jacobi here.
    pub fn dual_algebra(&self) -> HomLieAlgebra {
        HomLieAlgebra::new(self.cobracket.transpose(), self.beta.transpose())
            .expect("transposed shapes are consistent")
    }

    /// The bialgebra (g*, δᵀ, νᵀ, βᵀ, αᵀ).
    pub fn dual(&self) -> HomLieBialgebra {
        HomLieBialgebra {
            alg: self.dual_algebra(),
            cobracket: self.alg.bracket.transpose(),
            beta: self.alg.alpha.transpose(),
        }
    }

    pub fn cobracket_vec(&self, x: &[Rational]) -> Vec<Rational> {
        self.cobracket.mul_vec(x)
    }

    /// ad_x(a ∧ b) = [x,a] ∧ α(b) + α(a) ∧ [x,b], extended linearly to Λ²g.
    pub fn ad_wedge2(&self, x: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let n = self.n();
        let g = &self.alg;
        let mut out = vec![Rational::zero(); binom(n, 2)];
        for (c, &m) in w.iter().zip(space(n).masks(2)) {
            if c.is_zero() {
                continue;
            }
            let e = mask_elems(m);
            let (a, b) = (unit(n, e[0]), unit(n, e[1]));
            let t1 = wedge_vectors(n, &[&g.bracket_vec(x, &a), &g.alpha_vec(&b)]);
            let t2 = wedge_vectors(n, &[&g.alpha_vec(&a), &g.bracket_vec(x, &b)]);
            axpy(&mut out, c, &t1);
            axpy(&mut out, c, &t2);
        }
        out
    }

    /// δ[x,y] − ad_{βx}δ(y) + ad_{βy}δ(x)
    pub fn compatibility_residual(&self, i: usize, j: usize) -> Vec<Rational> {
        let lhs = self.cobracket_vec(&self.alg.bracket_basis(i, j));
        let a = self.ad_wedge2(&self.beta.column(i), &self.cobracket.column(j));
        let b = self.ad_wedge2(&self.beta.column(j), &self.cobracket.column(i));
        vec_sub(&lhs, &vec_sub(&a, &b))
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.n();
        let mut rep = self.alg.validate();
        let dual = self.dual_algebra().validate();
        for (name, c) in [("co-jacobi", "hom-jacobi"), ("co-multiplicativity", "multiplicativity")] {
            let d = dual.get(c).expect("dual report has both axioms");
            rep.checks.push(AxiomCheck {
                axiom: name,
                residual: d.residual.clone(),
                witness: d.witness.clone(),
            });
        }
        rep.push(
            "compatibility",
            pairs(n).map(|(i, j)| (vec![i, j], self.compatibility_residual(i, j))),
        );
        rep.push(
            "beta-bracket",
            pairs(n).map(|(i, j)| {
                let lhs = self.beta.mul_vec(&self.alg.bracket_basis(i, j));
                let rhs = self.alg.bracket_vec(&self.beta.column(i), &self.beta.column(j));
                (vec![i, j], vec_sub(&lhs, &rhs))
            }),
        );
        let a2 = compound(&self.alg.alpha, 2);
        rep.push(
            "cobracket-alpha",
            (0..n).map(|i| {
                let lhs = self.cobracket_vec(&self.alg.alpha.column(i));
                let rhs = a2.mul_vec(&self.cobracket.column(i));
                (vec![i], vec_sub(&lhs, &rhs))
            }),
        );
        let ab = self.alg.alpha.matmul(&self.beta);
        let ba = self.beta.matmul(&self.alg.alpha);
        rep.push("alpha-beta-commute", (0..n).map(|i| (vec![i], vec_sub(&ab.column(i), &ba.column(i)))));
        rep
    }

    /// Co-Jacobi computed directly on g⊗g⊗g: (1 + σ + σ²)(δ ⊗ β)δ(x), max-abs over x.
    pub fn co_jacobi_tensor_residual(&self) -> Rational {
        let n = self.n();
        let full = |x: &[Rational]| -> Vec<Rational> {
            let w = self.cobracket_vec(x);
            let mut t = vec![Rational::zero(); n * n];
            for (c, &m) in w.iter().zip(space(n).masks(2)) {
                let e = mask_elems(m);
                t[e[0] * n + e[1]] += c;
                t[e[1] * n + e[0]] -= c;
            }
            t
        };
        let mut worst = Rational::zero();
        for l in 0..n {
            let tl = full(&unit(n, l));
            let mut u = vec![Rational::zero(); n * n * n];
            for a in 0..n {
                for b in 0..n {
                    let c = &tl[a * n + b];
                    if c.is_zero() {
                        continue;
                    }
                    let ta = full(&unit(n, a));
                    let bb = self.beta.column(b);
                    for p in 0..n {
                        for q in 0..n {
                            if ta[p * n + q].is_zero() {
                                continue;
                            }
                            for r in 0..n {
                                u[(p * n + q) * n + r] += c * &ta[p * n + q] * &bb[r];
                            }
                        }
                    }
                }
            }
            let at = |i: usize, j: usize, k: usize| &u[(i * n + j) * n + k];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let s = at(i, j, k) + at(j, k, i) + at(k, i, j);
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// γ must preserve ν and δ and commute with α and β.
    pub fn check_morphism(&self, gamma: &RatMatrix) -> Result<()> {
        self.alg.check_endomorphism(gamma)?;
        let g2 = compound(gamma, 2);
        let n = self.n();
        if let Some(i) = (0..n).find(|&i| self.cobracket_vec(&gamma.column(i)) != g2.mul_vec(&self.cobracket.column(i))) {
            return Err(Error::NotMorphism(format!("δγ({l}) ≠ (γ∧γ)δ({l})", l = self.alg.labels[i])));
        }
        if gamma.matmul(&self.beta) != self.beta.matmul(gamma) {
            return Err(Error::NotMorphism("γ does not commute with β".into()));
        }
        Ok(())
    }

    pub fn yau_twist(&self, gamma: &RatMatrix, mode: TwistMode) -> Result<HomLieBialgebra> {
        self.check_morphism(gamma)?;
        let mut out = self.clone();
        if matches!(mode, TwistMode::Bracket | TwistMode::Both) {
            out.alg.bracket = gamma.matmul(&self.alg.bracket);
            out.alg.alpha = gamma.matmul(&self.alg.alpha);
        }
        if matches!(mode, TwistMode::Cobracket | TwistMode::Both) {
            out.cobracket = self.cobracket.matmul(gamma);
            out.beta = gamma.matmul(&self.beta);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn sl2() -> HomLieAlgebra {
        // h, e, f with [h,e] = 2e, [h,f] = −2f, [e,f] = h
        HomLieAlgebra::from_table(
            3,
            &[
                (0, 1, vec![rat(0), rat(2), rat(0)]),
                (0, 2, vec![rat(0), rat(0), rat(-2)]),
                (1, 2, vec![rat(1), rat(0), rat(0)]),
            ],
            RatMatrix::identity(3),
        )
        .unwrap()
    }

    /// Standard Lie bialgebra on the two-dimensional non-abelian algebra:
    /// [x,y] = y, δ(y) = x∧y.
    pub(crate) fn aff1() -> HomLieBialgebra {
        let g = HomLieAlgebra::from_table(2, &[(0, 1, vec![rat(0), rat(1)])], RatMatrix::identity(2)).unwrap();
        let delta = RatMatrix::from_i64(&[&[0, 1]]);
        HomLieBialgebra::new(g, delta, RatMatrix::identity(2)).unwrap()
    }

    #[test]
    fn zero_cobracket_is_bialgebra() {
        let b = HomLieBialgebra::from_algebra(sl2());
        assert!(b.validate().passed());
        assert!(b.co_jacobi_tensor_residual().is_zero());
    }

    #[test]
    fn two_dim_bialgebra() {
        let b = aff1();
        assert!(b.validate().passed(), "{:?}", b.validate());
        assert!(b.co_jacobi_tensor_residual().is_zero());
        // every cobracket on the two-dimensional algebra is compatible; use sl2 with δ(h) = e∧f
        let bad = HomLieBialgebra::new(
            sl2(),
            RatMatrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]),
            RatMatrix::identity(3),
        )
        .unwrap();
        let rep = bad.validate();
        assert!(!rep.get("compatibility").unwrap().passed());
    }

    #[test]
    fn co_jacobi_routes_agree() {
        // three-dimensional cobracket dual to the Heisenberg-breaking bracket
        let g = HomLieAlgebra::abelian(3, RatMatrix::identity(3));
        for delta in [
            RatMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]),
            RatMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
            RatMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[3, 0, 1]]),
        ] {
            let b = HomLieBialgebra::new(g.clone(), delta, RatMatrix::identity(3)).unwrap();
            let via_dual = b.validate().get("co-jacobi").unwrap().passed();
            assert_eq!(via_dual, b.co_jacobi_tensor_residual().is_zero());
        }
    }

    #[test]
    fn twists() {
        let b = HomLieBialgebra::from_algebra(sl2());
        assert_eq!(b.yau_twist(&RatMatrix::identity(3), TwistMode::Both).unwrap(), b);
        let g = RatMatrix::from_rows(vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(2), rat(0)],
            vec![rat(0), rat(0), ratio(1, 2)],
        ])
        .unwrap();
        let t = b.yau_twist(&g, TwistMode::Bracket).unwrap();
        assert!(t.cobracket.is_zero());
        assert_eq!(t.alg, sl2().yau_twist(&g).unwrap());
        assert!(t.validate().passed());
        for mode in [TwistMode::Bracket, TwistMode::Cobracket, TwistMode::Both] {
            let a = aff1();
            let gamma = RatMatrix::from_i64(&[&[1, 0], &[0, 3]]);
            assert!(a.yau_twist(&gamma, mode).unwrap().validate().passed());
        }
        let bad = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(aff1().yau_twist(&bad, TwistMode::Both).is_err());
    }
}
