//! Hom-Lie algebras, coalgebras, bialgebras, Hom-associative algebras and
//! their representations, with validators that return witnesses.
//!
//! Brackets are stored in the exterior encoding: a bracket is an
//! n × C(n,2) matrix whose column for the pair (i,j), i<j, is [e_i, e_j].
//! Skew-symmetry is therefore structural. Cobrackets are C(n,2) × n.

mod assoc;
mod bialgebra;

pub use assoc::{Bimodule, HomAssociativeAlgebra};
pub use bialgebra::{HomLieBialgebra, TwistMode};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{binom, space};
use crate::linalg::{axpy, kernel_basis, rat, vec_sub, RatMatrix, Rational};

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub(crate) fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero)
}

/// Outcome of one axiom check. Witness indices are 0-based basis positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub residual: Rational,
    pub witness: Option<Vec<usize>>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub(crate) fn push<I>(&mut self, axiom: &'static str, residuals: I)
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<Rational>)>,
    {
        let mut worst = Rational::zero();
        let mut witness = None;
        for (idx, r) in residuals {
            let m = max_abs(&r);
            if witness.is_none() && !m.is_zero() {
                witness = Some(idx);
            }
            if m > worst {
                worst = m;
            }
        }
        self.checks.push(AxiomCheck {
            axiom,
            residual: worst,
            witness,
        });
    }
}

pub(crate) fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

pub(crate) fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(n).flat_map(move |(i, j)| (j + 1..n).map(move |k| (i, j, k)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLieAlgebra {
    pub n: usize,
    pub bracket: RatMatrix,
    pub alpha: RatMatrix,
    pub labels: Vec<String>,
}

impl HomLieAlgebra {
    pub fn new(bracket: RatMatrix, alpha: RatMatrix) -> Result<Self> {
        let n = alpha.rows();
        if alpha.cols() != n {
            return Err(Error::Shape("structure map must be square".into()));
        }
        if bracket.shape() != (n, binom(n, 2)) {
            return Err(Error::Shape(format!(
                "bracket on dimension {n} must be {}x{}, got {}x{}",
                n,
                binom(n, 2),
                bracket.rows(),
                bracket.cols()
            )));
        }
        if n > crate::exterior::MAX_DIM {
            return Err(Error::Shape(format!("dimension {n} is too large")));
        }
        Ok(HomLieAlgebra {
            n,
            bracket,
            alpha,
            labels: default_labels(n),
        })
    }

    /// Builds a bracket from (i, j, [e_i, e_j]) triples with 0-based i ≠ j.
    pub fn from_table(n: usize, table: &[(usize, usize, Vec<Rational>)], alpha: RatMatrix) -> Result<Self> {
        let mut b = RatMatrix::zeros(n, binom(n, 2));
        let sp = space(n);
        for (i, j, v) in table {
            if i == j || *i >= n || *j >= n || v.len() != n {
                return Err(Error::Shape(format!("bad bracket entry ({i},{j})")));
            }
            let (lo, hi, s) = if i < j { (*i, *j, rat(1)) } else { (*j, *i, rat(-1)) };
            let col = sp.index_of((1 << lo) | (1 << hi));
            for (r, c) in v.iter().enumerate() {
                b[(r, col)] += &s * c;
            }
        }
        Self::new(b, alpha)
    }

    pub fn abelian(n: usize, alpha: RatMatrix) -> Self {
        Self::new(RatMatrix::zeros(n, binom(n, 2)), alpha).expect("abelian shapes")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn is_lie(&self) -> bool {
        self.alpha == RatMatrix::identity(self.n)
    }

    /// [e_i, e_j] for any i, j.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        if i == j {
            return vec![Rational::zero(); self.n];
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let col = self.bracket.column(space(self.n).index_of((1 << lo) | (1 << hi)));
        if i < j {
            col
        } else {
            col.into_iter().map(|v| -v).collect()
        }
    }

    pub fn bracket_vec(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (col, &m) in space(self.n).masks(2).iter().enumerate() {
            let i = m.trailing_zeros() as usize;
            let j = 31 - m.leading_zeros() as usize;
            let c = &u[i] * &v[j] - &u[j] * &v[i];
            if c.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let b = &self.bracket[(r, col)];
                if !b.is_zero() {
                    *o += &c * b;
                }
            }
        }
        out
    }

    pub fn alpha_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.alpha.mul_vec(v)
    }

    /// ad_x as an n × n matrix.
    pub fn ad(&self, x: &[Rational]) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.n).map(|j| self.bracket_vec(x, &unit(self.n, j))).collect();
        RatMatrix::from_columns(self.n, &cols)
    }

    pub fn hom_jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let e = |a| unit(self.n, a);
        let term = |a, b, c| self.bracket_vec(&self.bracket_basis(a, b), &self.alpha_vec(&e(c)));
        let mut r = term(i, j, k);
        axpy(&mut r, &rat(1), &term(j, k, i));
        axpy(&mut r, &rat(1), &term(k, i, j));
        r
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        rep.push(
            "hom-jacobi",
            triples(self.n).map(|(i, j, k)| (vec![i, j, k], self.hom_jacobi_residual(i, j, k))),
        );
        rep.push(
            "multiplicativity",
            pairs(self.n).map(|(i, j)| {
                let lhs = self.alpha_vec(&self.bracket_basis(i, j));
                let rhs = self.bracket_vec(&self.alpha.column(i), &self.alpha.column(j));
                (vec![i, j], vec_sub(&lhs, &rhs))
            }),
        );
        rep
    }

    /// Checks that γ preserves the bracket and commutes with α.
    pub fn check_endomorphism(&self, gamma: &RatMatrix) -> Result<()> {
        if gamma.shape() != (self.n, self.n) {
            return Err(Error::Shape("endomorphism must be n x n".into()));
        }
        for (i, j) in pairs(self.n) {
            let lhs = gamma.mul_vec(&self.bracket_basis(i, j));
            let rhs = self.bracket_vec(&gamma.column(i), &gamma.column(j));
            if lhs != rhs {
                return Err(Error::NotMorphism(format!(
                    "γ[{a},{b}] ≠ [γ{a},γ{b}]",
                    a = self.labels[i],
                    b = self.labels[j]
                )));
            }
        }
        if let Some(i) = (0..self.n).find(|&i| gamma.mul_vec(&self.alpha.column(i)) != self.alpha.mul_vec(&gamma.column(i))) {
            return Err(Error::NotMorphism(format!("γα({a}) ≠ αγ({a})", a = self.labels[i])));
        }
        Ok(())
    }

    /// (g, γ∘ν, γ∘α) for an endomorphism γ.
    pub fn yau_twist(&self, gamma: &RatMatrix) -> Result<HomLieAlgebra> {
        self.check_endomorphism(gamma)?;
        Ok(HomLieAlgebra {
            n: self.n,
            bracket: gamma.matmul(&self.bracket),
            alpha: gamma.matmul(&self.alpha),
            labels: self.labels.clone(),
        })
    }

    /// Basis of {D : D[x,y] = [Dx,y] + [x,Dy]} as n × n matrices.
    pub fn derivations(&self) -> Vec<RatMatrix> {
        self.derivation_space(&RatMatrix::identity(self.n), false)
    }

    /// Basis of {D : D[x,y] = [Dx,αy] + [αx,Dy]}.
    pub fn alpha_derivations(&self) -> Vec<RatMatrix> {
        self.derivation_space(&self.alpha, false)
    }

    /// Derivations that also commute with α (the first cohomology for the adjoint module).
    pub fn derivations_commuting(&self) -> Vec<RatMatrix> {
        self.derivation_space(&RatMatrix::identity(self.n), true)
    }

    fn derivation_space(&self, twist: &RatMatrix, commute: bool) -> Vec<RatMatrix> {
        let n = self.n;
        // unknown D has coordinate D[(r,c)] at index c*n + r
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (i, j) in pairs(n) {
            let bij = self.bracket_basis(i, j);
            let ti = twist.column(i);
            let tj = twist.column(j);
            for r in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                // D[x,y]
                for (c, v) in bij.iter().enumerate() {
                    row[c * n + r] += v;
                }
                // − [D e_i, t e_j] − [t e_i, D e_j]
                for s in 0..n {
                    let a = self.bracket_vec(&unit(n, s), &tj);
                    row[i * n + s] -= &a[r];
                    let b = self.bracket_vec(&ti, &unit(n, s));
                    row[j * n + s] -= &b[r];
                }
                rows.push(row);
            }
        }
        if commute {
            for c in 0..n {
                for r in 0..n {
                    // (Dα − αD)[(r,c)]
                    let mut row = vec![Rational::zero(); n * n];
                    for s in 0..n {
                        row[s * n + r] += &self.alpha[(s, c)];
                        row[c * n + s] -= &self.alpha[(r, s)];
                    }
                    rows.push(row);
                }
            }
        }
        let m = if rows.is_empty() {
            RatMatrix::zeros(0, n * n)
        } else {
            RatMatrix::from_rows(rows).expect("uniform rows")
        };
        kernel_basis(&m).into_iter().map(|v| unflatten_square(n, &v)).collect()
    }

    /// Sound test for not being a Yau twist of a Lie algebra with the same image of α:
    /// a vector in Im ν outside Im α.
    pub fn lie_type_obstruction(&self) -> Option<Vec<Rational>> {
        let alpha_rank = crate::linalg::rank(&self.alpha);
        crate::linalg::column_space_basis(&self.bracket)
            .into_iter()
            .find(|v| crate::linalg::rank(&self.alpha.hstack(&RatMatrix::from_columns(self.n, std::slice::from_ref(v)))) > alpha_rank)
    }

    pub fn adjoint(&self) -> Representation {
        Representation {
            m: self.n,
            action: (0..self.n).map(|i| self.ad(&unit(self.n, i))).collect(),
            beta: self.alpha.clone(),
        }
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    const XYZ: [&str; 3] = ["x", "y", "z"];
    if n <= 3 {
        XYZ[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("e{i}")).collect()
    }
}

/// Column-major unflattening: index c*n + r holds entry (r, c).
pub fn unflatten_square(n: usize, v: &[Rational]) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for c in 0..n {
        for r in 0..n {
            m[(r, c)] = v[c * n + r].clone();
        }
    }
    m
}

/// A Hom-module V with an action of g; `action[i]` is ρ(e_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub m: usize,
    pub action: Vec<RatMatrix>,
    pub beta: RatMatrix,
}

impl Representation {
    pub fn trivial(n: usize, beta: RatMatrix) -> Self {
        let m = beta.rows();
        Representation {
            m,
            action: vec![RatMatrix::zeros(m, m); n],
            beta,
        }
    }

    /// ρ(x) for an arbitrary x ∈ g.
    pub fn rho(&self, x: &[Rational]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.m, self.m);
        for (c, a) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                out = &out + &a.scale(c);
            }
        }
        out
    }

    pub fn act(&self, x: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.m];
        for (c, a) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                axpy(&mut out, c, &a.mul_vec(v));
            }
        }
        out
    }

    pub fn validate(&self, g: &HomLieAlgebra) -> ValidationReport {
        let mut rep = ValidationReport::default();
        if self.action.len() != g.n || self.beta.shape() != (self.m, self.m) || self.action.iter().any(|a| a.shape() != (self.m, self.m)) {
            rep.checks.push(AxiomCheck {
                axiom: "module-shape",
                residual: rat(1),
                witness: None,
            });
            return rep;
        }
        let n = g.n;
        rep.push(
            "module",
            pairs(n).flat_map(|(i, j)| {
                (0..self.m).map(move |v| {
                    let ev = unit(self.m, v);
                    let lhs = self.act(&g.bracket_basis(i, j), &self.beta.mul_vec(&ev));
                    let a = self.act(&g.alpha.column(i), &self.act(&unit(n, j), &ev));
                    let b = self.act(&g.alpha.column(j), &self.act(&unit(n, i), &ev));
                    (vec![i, j, v], vec_sub(&lhs, &vec_sub(&a, &b)))
                })
            }),
        );
        rep.push(
            "module-multiplicativity",
            (0..n).flat_map(|i| {
                (0..self.m).map(move |v| {
                    let ev = unit(self.m, v);
                    let lhs = self.beta.mul_vec(&self.act(&unit(n, i), &ev));
                    let rhs = self.act(&g.alpha.column(i), &self.beta.mul_vec(&ev));
                    (vec![i, v], vec_sub(&lhs, &rhs))
                })
            }),
        );
        rep
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{example1, lie_example, lie_example_gamma, lie_example_twisted, sl2};

    #[test]
    fn known_algebras_validate() {
        assert!(example1().validate().passed());
        assert!(sl2().validate().passed());
        assert!(lie_example().validate().passed());
        assert!(lie_example_twisted().validate().passed());
    }

    #[test]
    fn zero_alpha_always_passes() {
        let mut g = sl2();
        g.alpha = RatMatrix::zeros(3, 3);
        g.bracket = RatMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert!(g.validate().passed());
    }

    #[test]
    fn broken_jacobi_has_witness() {
        let g = HomLieAlgebra::from_table(
            3,
            &[(0, 1, vec![rat(0), rat(0), rat(1)]), (1, 2, vec![rat(1), rat(0), rat(0)]), (0, 2, vec![rat(1), rat(0), rat(0)])],
            RatMatrix::identity(3),
        )
        .unwrap();
        let rep = g.validate();
        let j = rep.get("hom-jacobi").unwrap();
        assert!(!j.passed());
        assert_eq!(j.witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn twist_of_lie_example() {
        let t = lie_example_twisted();
        let expect = HomLieAlgebra::from_table(3, &[(1, 2, vec![rat(0), rat(1), rat(-1)])], lie_example_gamma()).unwrap();
        assert_eq!(t.bracket, expect.bracket);
        assert_eq!(t.alpha, lie_example_gamma());
        assert_eq!(lie_example().yau_twist(&RatMatrix::identity(3)).unwrap(), lie_example());
        // γ(x) = y, identity elsewhere
        let bad = RatMatrix::from_i64(&[&[0, 0, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert!(matches!(lie_example().yau_twist(&bad), Err(Error::NotMorphism(_))));
    }

    #[test]
    fn derivation_dimensions() {
        assert_eq!(lie_example().derivations().len(), 6);
        assert_eq!(sl2().derivations().len(), 3);
        let ab = HomLieAlgebra::abelian(3, RatMatrix::identity(3));
        assert_eq!(ab.derivations().len(), 9);
        assert_eq!(ab.alpha_derivations().len(), 9);
    }

    #[test]
    fn twisted_derivations() {
        // x ↦ λ₁x, y ↦ λ₂(y − z), z ↦ λ₃(y − z)
        let g = lie_example_twisted();
        let listed = |l1: i64, l2: i64, l3: i64| RatMatrix::from_i64(&[&[l1, 0, 0], &[0, l2, l3], &[0, -l2, -l3]]);
        let commuting = g.derivations_commuting();
        assert_eq!(commuting.len(), 3);
        let span = RatMatrix::from_columns(9, &commuting.iter().map(flatten_square).collect::<Vec<_>>());
        for m in [listed(1, 0, 0), listed(0, 1, 0), listed(0, 0, 1)] {
            assert!(crate::linalg::in_column_space(&span, &flatten_square(&m)));
        }
        // without commuting with γ there is one more: y, z ↦ x
        assert_eq!(g.derivations().len(), 4);
        assert_eq!(g.alpha_derivations().len(), 4);
    }

    #[test]
    fn obstruction_certificates() {
        let w = example1().lie_type_obstruction().expect("z ∈ Im ν \\ Im α");
        assert!(!w[2].is_zero());
        assert!(sl2().lie_type_obstruction().is_none());
        assert!(HomLieAlgebra::abelian(2, RatMatrix::zeros(2, 2)).lie_type_obstruction().is_none());
    }

    #[test]
    fn adjoint_is_a_module() {
        for g in [example1(), lie_example(), lie_example_twisted(), sl2()] {
            assert!(g.adjoint().validate(&g).passed());
        }
        let g = sl2();
        let mut bad = g.adjoint();
        bad.beta = RatMatrix::zeros(3, 3);
        bad.beta[(0, 0)] = rat(1);
        assert!(!bad.validate(&g).passed());
    }

    fn flatten_square(m: &RatMatrix) -> Vec<Rational> {
        (0..m.cols()).flat_map(|c| m.column(c)).collect()
    }
}
