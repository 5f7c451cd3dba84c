//! Hom-associative algebras and their bimodules.

use num_traits::Zero;

use super::{unit, HomLieAlgebra, Representation, ValidationReport};
use crate::error::{Error, Result};
use crate::exterior::space;
use crate::linalg::{axpy, vec_sub, RatMatrix, Rational};

/// `mult[i * n + j]` is the product e_i e_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomAssociativeAlgebra {
    pub n: usize,
    pub mult: Vec<Vec<Rational>>,
    pub alpha: RatMatrix,
}

impl HomAssociativeAlgebra {
    pub fn new(mult: Vec<Vec<Rational>>, alpha: RatMatrix) -> Result<Self> {
        let n = alpha.rows();
        if alpha.cols() != n || mult.len() != n * n || mult.iter().any(|v| v.len() != n) {
            return Err(Error::Shape("multiplication table must have n² entries of length n".into()));
        }
        Ok(HomAssociativeAlgebra { n, mult, alpha })
    }

    pub fn product(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    axpy(&mut out, &(a * b), &self.mult[i * self.n + j]);
                }
            }
        }
        out
    }

    fn e(&self, i: usize) -> Vec<Rational> {
        unit(self.n, i)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let mut rep = ValidationReport::default();
        rep.push(
            "hom-associativity",
            (0..n * n * n).map(|t| {
                let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
                let lhs = self.product(&self.product(&self.e(i), &self.e(j)), &self.alpha.column(k));
                let rhs = self.product(&self.alpha.column(i), &self.product(&self.e(j), &self.e(k)));
                (vec![i, j, k], vec_sub(&lhs, &rhs))
            }),
        );
        rep.push(
            "multiplicativity",
            (0..n * n).map(|t| {
                let (i, j) = (t / n, t % n);
                let lhs = self.alpha.mul_vec(&self.mult[t]);
                let rhs = self.product(&self.alpha.column(i), &self.alpha.column(j));
                (vec![i, j], vec_sub(&lhs, &rhs))
            }),
        );
        rep
    }

    /// The commutator algebra A_L with [x,y] = xy − yx and the same α.
    pub fn commutator_lie(&self) -> Result<HomLieAlgebra> {
        let rep = self.validate();
        if let Some(f) = rep.failures().next() {
            return Err(Error::Invalid(format!("{} fails at {:?}", f.axiom, f.witness)));
        }
        let n = self.n;
        let cols: Vec<Vec<Rational>> = space(n)
            .masks(2)
            .iter()
            .map(|&m| {
                let i = m.trailing_zeros() as usize;
                let j = 31 - m.leading_zeros() as usize;
                vec_sub(&self.mult[i * n + j], &self.mult[j * n + i])
            })
            .collect();
        HomLieAlgebra::new(RatMatrix::from_columns(n, &cols), self.alpha.clone())
    }

    /// A as a bimodule over itself.
    pub fn regular_bimodule(&self) -> Bimodule {
        let n = self.n;
        let left = (0..n)
            .map(|i| RatMatrix::from_columns(n, &(0..n).map(|j| self.mult[i * n + j].clone()).collect::<Vec<_>>()))
            .collect();
        let right = (0..n)
            .map(|i| RatMatrix::from_columns(n, &(0..n).map(|j| self.mult[j * n + i].clone()).collect::<Vec<_>>()))
            .collect();
        Bimodule {
            m: n,
            left,
            right,
            beta: self.alpha.clone(),
        }
    }
}

/// `left[i]` is m ↦ e_i·m and `right[i]` is m ↦ m·e_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    pub m: usize,
    pub left: Vec<RatMatrix>,
    pub right: Vec<RatMatrix>,
    pub beta: RatMatrix,
}

impl Bimodule {
    fn lact(&self, a: &[Rational], v: &[Rational]) -> Vec<Rational> {
        combine(&self.left, a, v, self.m)
    }

    fn ract(&self, v: &[Rational], a: &[Rational]) -> Vec<Rational> {
        combine(&self.right, a, v, self.m)
    }

    pub fn validate(&self, a: &HomAssociativeAlgebra) -> ValidationReport {
        let (n, m) = (a.n, self.m);
        let mut rep = ValidationReport::default();
        let idx = |t: usize| (t / (n * m), (t / m) % n, t % m);
        let em = |v| unit(m, v);
        rep.push(
            "left-module",
            (0..n * n * m).map(|t| {
                let (i, j, v) = idx(t);
                let lhs = self.lact(&a.product(&a.e(i), &a.e(j)), &self.beta.mul_vec(&em(v)));
                let rhs = self.lact(&a.alpha.column(i), &self.lact(&a.e(j), &em(v)));
                (vec![i, j, v], vec_sub(&lhs, &rhs))
            }),
        );
        rep.push(
            "right-module",
            (0..n * n * m).map(|t| {
                let (i, j, v) = idx(t);
                let lhs = self.ract(&self.beta.mul_vec(&em(v)), &a.product(&a.e(i), &a.e(j)));
                let rhs = self.ract(&self.ract(&em(v), &a.e(i)), &a.alpha.column(j));
                (vec![i, j, v], vec_sub(&lhs, &rhs))
            }),
        );
        rep.push(
            "bimodule-exchange",
            (0..n * n * m).map(|t| {
                let (i, j, v) = idx(t);
                let lhs = self.lact(&a.alpha.column(i), &self.ract(&em(v), &a.e(j)));
                let rhs = self.ract(&self.lact(&a.e(i), &em(v)), &a.alpha.column(j));
                (vec![i, j, v], vec_sub(&lhs, &rhs))
            }),
        );
        rep.push(
            "module-multiplicativity",
            (0..n * m).flat_map(|t| {
                let (i, v) = (t / m, t % m);
                let l = vec_sub(
                    &self.beta.mul_vec(&self.lact(&a.e(i), &em(v))),
                    &self.lact(&a.alpha.column(i), &self.beta.mul_vec(&em(v))),
                );
                let r = vec_sub(
                    &self.beta.mul_vec(&self.ract(&em(v), &a.e(i))),
                    &self.ract(&self.beta.mul_vec(&em(v)), &a.alpha.column(i)),
                );
                [(vec![i, v], l), (vec![i, v], r)]
            }),
        );
        rep
    }

    /// The representation of A_L with a·m = a·m − m·a.
    pub fn to_lie_module(&self, a: &HomAssociativeAlgebra) -> Result<Representation> {
        if self.left.len() != a.n || self.right.len() != a.n {
            return Err(Error::Shape("one action matrix per algebra basis vector".into()));
        }
        let rep = self.validate(a);
        if let Some(f) = rep.failures().next() {
            return Err(Error::Invalid(format!("{} fails at {:?}", f.axiom, f.witness)));
        }
        Ok(Representation {
            m: self.m,
            action: self.left.iter().zip(&self.right).map(|(l, r)| l - r).collect(),
            beta: self.beta.clone(),
        })
    }
}

fn combine(mats: &[RatMatrix], a: &[Rational], v: &[Rational], m: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); m];
    for (c, mat) in a.iter().zip(mats) {
        if !c.is_zero() {
            axpy(&mut out, c, &mat.mul_vec(v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, rat};

    /// Upper-triangular 2×2 matrices with basis E11, E12, E22.
    fn upper_triangular() -> HomAssociativeAlgebra {
        let z = || vec![rat(0); 3];
        let e = |i| unit(3, i);
        let mut mult = vec![z(); 9];
        mult[0] = e(0); // E11 E11
        mult[1] = e(1); // E11 E12
        mult[5] = e(1); // E12 E22
        mult[8] = e(2); // E22 E22
        HomAssociativeAlgebra::new(mult, RatMatrix::identity(3)).unwrap()
    }

    #[test]
    fn upper_triangular_commutator() {
        let a = upper_triangular();
        assert!(a.validate().passed());
        let g = a.commutator_lie().unwrap();
        assert!(g.validate().passed());
        assert_eq!(rank(&g.bracket), 1);
        // [E11, E12] = E12, [E12, E22] = E12, [E11, E22] = 0
        assert_eq!(g.bracket_basis(0, 1), unit(3, 1));
        assert_eq!(g.bracket_basis(1, 2), unit(3, 1));
        assert_eq!(g.bracket_basis(0, 2), vec![rat(0); 3]);
    }

    #[test]
    fn commutative_and_zero_products() {
        // polynomial-like commutative algebra: e0 unit, e1 e1 = 0
        let mut mult = vec![vec![rat(0); 2]; 4];
        mult[0] = unit(2, 0);
        mult[1] = unit(2, 1);
        mult[2] = unit(2, 1);
        let a = HomAssociativeAlgebra::new(mult, RatMatrix::identity(2)).unwrap();
        assert!(a.commutator_lie().unwrap().bracket.is_zero());
        let z = HomAssociativeAlgebra::new(vec![vec![rat(0); 2]; 4], RatMatrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        assert!(z.commutator_lie().unwrap().bracket.is_zero());
    }

    #[test]
    fn non_associative_rejected() {
        let mut mult = vec![vec![rat(0); 2]; 4];
        mult[0] = unit(2, 1); // e0 e0 = e1
        mult[2] = unit(2, 0); // e1 e0 = e0
        let a = HomAssociativeAlgebra::new(mult, RatMatrix::identity(2)).unwrap();
        assert!(!a.validate().passed());
        assert!(a.commutator_lie().is_err());
    }

    #[test]
    fn regular_bimodule_gives_adjoint() {
        let a = upper_triangular();
        let rep = a.regular_bimodule().to_lie_module(&a).unwrap();
        assert_eq!(rep, a.commutator_lie().unwrap().adjoint());
    }

    #[test]
    fn left_module_and_symmetric_bimodule() {
        let a = upper_triangular();
        let reg = a.regular_bimodule();
        let left_only = Bimodule {
            right: vec![RatMatrix::zeros(3, 3); 3],
            ..reg.clone()
        };
        let rep = left_only.to_lie_module(&a).unwrap();
        assert_eq!(rep.action, reg.left);

        // a commutative algebra acting on itself: left = right, Lie action vanishes
        let mut mult = vec![vec![rat(0); 2]; 4];
        mult[0] = unit(2, 0);
        mult[1] = unit(2, 1);
        mult[2] = unit(2, 1);
        let c = HomAssociativeAlgebra::new(mult, RatMatrix::identity(2)).unwrap();
        let rep = c.regular_bimodule().to_lie_module(&c).unwrap();
        assert!(rep.action.iter().all(RatMatrix::is_zero));
    }

    #[test]
    fn broken_bimodule_rejected() {
        let a = upper_triangular();
        let mut b = a.regular_bimodule();
        b.left[0] = RatMatrix::identity(3).scale(&rat(2));
        assert!(matches!(b.to_lie_module(&a), Err(Error::Invalid(_))));
    }
}
