//! The circle product and grand crochet on Hom(Λ•g, Λ•g) with heights, the
//! compatible subspace B^{i,j}, bialgebra Maurer–Cartan checks and the
//! fixed-structure-map bialgebra complex.

mod linfty;

pub use linfty::*;

use num_traits::{One, Zero};

use crate::cochain::flatten;
use crate::error::{Error, Result};
use crate::exterior::{binom, compound, space, submasks, wedge_sign, ExtElem, Height, MultiMap};
use crate::hom::HomLieBialgebra;
use crate::linalg::{kernel_basis, rank, solve, RatMatrix, Rational};
use crate::morphism::invert;

/// The commuting pair (α, β) with optional exact inverses for negative heights.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureMaps {
    pub alpha: RatMatrix,
    pub beta: RatMatrix,
    alpha_inv: Option<RatMatrix>,
    beta_inv: Option<RatMatrix>,
}

impl StructureMaps {
    pub fn new(alpha: RatMatrix, beta: RatMatrix) -> Result<Self> {
        let n = alpha.rows();
        if alpha.shape() != (n, n) || beta.shape() != (n, n) {
            return Err(Error::Shape("α and β must be square of the same size".into()));
        }
        if alpha.matmul(&beta) != beta.matmul(&alpha) {
            return Err(Error::Invalid("α and β do not commute".into()));
        }
        Ok(StructureMaps {
            alpha,
            beta,
            alpha_inv: None,
            beta_inv: None,
        })
    }

    pub fn only_alpha(alpha: RatMatrix) -> Self {
        let n = alpha.rows();
        StructureMaps::new(alpha, RatMatrix::identity(n)).expect("identity commutes")
    }

    /// Opts into negative heights; fails if α or β is singular.
    pub fn with_inverses(mut self) -> Result<Self> {
        self.alpha_inv = Some(invert(&self.alpha)?);
        self.beta_inv = Some(invert(&self.beta)?);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.alpha.rows()
    }

    /// α^a β^b on g.
    pub fn power(&self, h: Height) -> Result<RatMatrix> {
        let pick = |base: &RatMatrix, inv: &Option<RatMatrix>, e: i64, name: &'static str| -> Result<RatMatrix> {
            if e >= 0 {
                Ok(base.pow(e as usize))
            } else {
                match inv {
                    Some(i) => Ok(i.pow(e.unsigned_abs() as usize)),
                    None => Err(Error::NegativeHeight {
                        map: name,
                        height: (h.alpha, h.beta),
                    }),
                }
            }
        };
        let a = pick(&self.alpha, &self.alpha_inv, h.alpha, "alpha")?;
        let b = pick(&self.beta, &self.beta_inv, h.beta, "beta")?;
        Ok(a.matmul(&b))
    }

    /// The Hopf extension of α^a β^b to Λᵏg. Degree 0 needs no power at all.
    pub fn power_on(&self, h: Height, k: usize) -> Result<RatMatrix> {
        if k == 0 {
            return Ok(RatMatrix::identity(1));
        }
        Ok(compound(&self.power(h)?, k))
    }
}

fn sign(parity: usize) -> Rational {
    if parity.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// ψ∘φ = μ(ψ ⊗ α^ψ)(μ ⊗ id)(id ⊗ pr ⊗ id)(id ⊗ Δ)(α^φ ⊗ φ)Δ.
pub fn circle(psi: &MultiMap, phi: &MultiMap, maps: &StructureMaps) -> Result<MultiMap> {
    let n = psi.n;
    if phi.n != n || maps.n() != n {
        return Err(Error::Shape("maps live on different spaces".into()));
    }
    if psi.src == 0 || phi.tgt == 0 {
        return Err(Error::Degree("circle product needs ψ with inputs and φ with outputs".into()));
    }
    let p = psi.src - 1;
    let src = p + phi.src;
    let tgt = psi.tgt + phi.tgt - 1;
    let height = psi.height + phi.height;
    if src > n {
        return Ok(MultiMap::zero(n, src, tgt, height));
    }
    let a_phi = maps.power_on(phi.height, p)?;
    let a_psi = maps.power_on(psi.height, phi.tgt - 1)?;
    let koszul = sign((phi.tgt + phi.src) * p);
    let sp = space(n);
    let cols: Vec<Vec<Rational>> = sp
        .masks(src)
        .iter()
        .map(|&m| {
            let mut acc = ExtElem::zero(n);
            for a in submasks(m) {
                if a.count_ones() as usize != p {
                    continue;
                }
                let b = m & !a;
                let s = &koszul * Rational::from_integer(wedge_sign(a, b).into());
                let left = if p == 0 {
                    ExtElem::one(n)
                } else {
                    ExtElem::from_dense(n, p, &a_phi.column(space(n).index_of(a)))
                };
                let f = phi.apply_mask(b);
                for (&mono, c) in &f.terms {
                    for t in 0..n {
                        if mono & (1 << t) == 0 {
                            continue;
                        }
                        let rest = mono & !(1 << t);
                        let sg = Rational::from_integer(wedge_sign(1 << t, rest).into());
                        let inner = left.wedge(&ExtElem::monomial(n, 1 << t, Rational::one()));
                        let out_left = psi.apply(&inner);
                        let out_right = if phi.tgt == 1 {
                            ExtElem::one(n)
                        } else {
                            ExtElem::from_dense(n, phi.tgt - 1, &a_psi.column(space(n).index_of(rest)))
                        };
                        acc.add_scaled(&(&s * c * sg), &out_left.wedge(&out_right));
                    }
                }
            }
            acc.to_dense(tgt)
        })
        .collect();
    Ok(MultiMap {
        n,
        src,
        tgt,
        mat: RatMatrix::from_columns(binom(n, tgt), &cols),
        height,
    })
}

/// Degree used for bracket signs: i + j − 2 on Hom(Λⁱ, Λʲ).
pub fn bracket_degree(m: &MultiMap) -> usize {
    (m.src + m.tgt).saturating_sub(2)
}

pub(crate) fn add_maps(a: &MultiMap, b: &MultiMap, s: &Rational) -> MultiMap {
    debug_assert_eq!((a.n, a.src, a.tgt), (b.n, b.src, b.tgt));
    MultiMap {
        mat: &a.mat + &b.mat.scale(s),
        ..a.clone()
    }
}

/// ⟦φ, ψ⟧ = φ∘ψ − (−1)^{deg φ · deg ψ} ψ∘φ.
pub fn grand_bracket(phi: &MultiMap, psi: &MultiMap, maps: &StructureMaps) -> Result<MultiMap> {
    let a = circle(phi, psi, maps)?;
    let b = circle(psi, phi, maps)?;
    Ok(add_maps(&a, &b, &-sign(bracket_degree(phi) * bracket_degree(psi))))
}

/// Whether φ commutes with the Hopf extensions of α and β.
pub fn in_b(phi: &MultiMap, maps: &StructureMaps) -> bool {
    [&maps.alpha, &maps.beta].iter().all(|m| {
        let out = if phi.tgt == 0 { RatMatrix::identity(1) } else { compound(m, phi.tgt) };
        let inp = if phi.src == 0 { RatMatrix::identity(1) } else { compound(m, phi.src) };
        out.matmul(&phi.mat) == phi.mat.matmul(&inp)
    })
}

/// Basis of B^{i,j}, each element with the default height (i−1, j−1).
pub fn b_basis(maps: &StructureMaps, i: usize, j: usize) -> Vec<MultiMap> {
    let n = maps.n();
    if i == 0 || j == 0 || i > n || j > n {
        return Vec::new();
    }
    let (r, c) = (binom(n, j), binom(n, i));
    let constraints: Vec<(RatMatrix, RatMatrix)> = [&maps.alpha, &maps.beta].iter().map(|m| (compound(m, j), compound(m, i))).collect();
    let mut cols = Vec::new();
    for k in 0..r * c {
        let mut e = RatMatrix::zeros(r, c);
        e[(k % r, k / r)] = Rational::one();
        let mut v = Vec::new();
        for (out, inp) in &constraints {
            v.extend(flatten(&(&out.matmul(&e) - &e.matmul(inp))));
        }
        cols.push(v);
    }
    let system = RatMatrix::from_columns(2 * r * c, &cols);
    kernel_basis(&system)
        .into_iter()
        .map(|v| {
            let mut mat = RatMatrix::zeros(r, c);
            for (k, x) in v.into_iter().enumerate() {
                mat[(k % r, k / r)] = x;
            }
            MultiMap::with_default_height(n, i, j, mat).expect("shape from binomials")
        })
        .collect()
}

/// (−1)^{|φ||χ|}⟦φ,⟦ψ,χ⟧⟧ + (−1)^{|ψ||φ|}⟦ψ,⟦χ,φ⟧⟧ + (−1)^{|χ||ψ|}⟦χ,⟦φ,ψ⟧⟧.
pub fn graded_jacobi_check(phi: &MultiMap, psi: &MultiMap, chi: &MultiMap, maps: &StructureMaps) -> Result<MultiMap> {
    for (name, m) in [("first", phi), ("second", psi), ("third", chi)] {
        if !in_b(m, maps) {
            return Err(Error::Invalid(format!("{name} argument does not commute with α and β")));
        }
    }
    let (dp, ds, dc) = (bracket_degree(phi), bracket_degree(psi), bracket_degree(chi));
    let t1 = grand_bracket(phi, &grand_bracket(psi, chi, maps)?, maps)?;
    let t2 = grand_bracket(psi, &grand_bracket(chi, phi, maps)?, maps)?;
    let t3 = grand_bracket(chi, &grand_bracket(phi, psi, maps)?, maps)?;
    let acc = MultiMap {
        mat: t1.mat.scale(&sign(dp * dc)),
        ..t1
    };
    let acc = add_maps(&acc, &t2, &sign(ds * dp));
    Ok(add_maps(&acc, &t3, &sign(dc * ds)))
}

pub fn bracket_map(b: &HomLieBialgebra) -> MultiMap {
    MultiMap::new(b.n(), 2, 1, b.alg.bracket.clone(), Height::new(1, 0)).expect("bracket shape")
}

pub fn cobracket_map(b: &HomLieBialgebra) -> MultiMap {
    MultiMap::new(b.n(), 1, 2, b.cobracket.clone(), Height::new(0, 1)).expect("cobracket shape")
}

pub fn bialgebra_maps(b: &HomLieBialgebra) -> Result<StructureMaps> {
    StructureMaps::new(b.alg.alpha.clone(), b.beta.clone())
}

/// The three components of ⟦ν+δ, ν+δ⟧.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    /// ⟦ν,ν⟧ on Λ³ → g.
    pub bracket_part: MultiMap,
    /// ⟦ν,δ⟧ + ⟦δ,ν⟧ on Λ² → Λ².
    pub mixed_part: MultiMap,
    /// ⟦δ,δ⟧ on g → Λ³.
    pub cobracket_part: MultiMap,
    pub compatible: bool,
}

impl McReport {
    pub fn holds(&self) -> bool {
        self.bracket_part.is_zero() && self.mixed_part.is_zero() && self.cobracket_part.is_zero()
    }
}

pub fn mc_check_bialgebra(b: &HomLieBialgebra) -> Result<McReport> {
    let maps = bialgebra_maps(b)?;
    let nu = bracket_map(b);
    let delta = cobracket_map(b);
    let mixed = add_maps(&grand_bracket(&nu, &delta, &maps)?, &grand_bracket(&delta, &nu, &maps)?, &Rational::one());
    Ok(McReport {
        bracket_part: grand_bracket(&nu, &nu, &maps)?,
        mixed_part: mixed,
        cobracket_part: grand_bracket(&delta, &delta, &maps)?,
        compatible: in_b(&nu, &maps) && in_b(&delta, &maps),
    })
}

/// Basis of the total space Bⁿ = ⊕_{i+j=n} B^{i,j}, with ambient coordinates
/// concatenated over i = 1..n−1.
fn total_basis(maps: &StructureMaps, total: usize) -> Vec<(usize, MultiMap)> {
    (1..total).flat_map(|i| b_basis(maps, i, total - i).into_iter().map(move |m| (i, m))).collect()
}

fn ambient_layout(n: usize, total: usize) -> Vec<(usize, usize, usize)> {
    let mut off = 0;
    let mut out = Vec::new();
    for i in 1..total {
        let j = total - i;
        let size = if i <= n && j <= n { binom(n, i) * binom(n, j) } else { 0 };
        out.push((i, off, size));
        off += size;
    }
    out
}

fn ambient_vector(n: usize, total: usize, parts: &[MultiMap]) -> Vec<Rational> {
    let layout = ambient_layout(n, total);
    let len = layout.last().map_or(0, |&(_, o, s)| o + s);
    let mut v = vec![Rational::zero(); len];
    for p in parts {
        if let Some(&(_, off, size)) = layout.iter().find(|&&(i, _, _)| i == p.src) {
            if size > 0 {
                for (k, x) in flatten(&p.mat).into_iter().enumerate() {
                    v[off + k] += x;
                }
            }
        }
    }
    v
}

/// ∂φ = ⟦ν+δ, φ⟧, split into its bidegree components.
pub fn bialgebra_bracket_differential(b: &HomLieBialgebra, phi: &MultiMap) -> Result<Vec<MultiMap>> {
    let maps = bialgebra_maps(b)?;
    let mut out = Vec::new();
    if phi.src < b.n() {
        out.push(grand_bracket(&bracket_map(b), phi, &maps)?);
    }
    if phi.tgt < b.n() {
        out.push(grand_bracket(&cobracket_map(b), phi, &maps)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedMapsReport {
    pub rows: Vec<crate::alpha_ce::DegreeRow>,
    /// Per total degree, cocycles completing the coboundaries, as (i, map) components.
    pub representatives: Vec<Vec<Vec<MultiMap>>>,
}

impl FixedMapsReport {
    pub fn h_dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim_h).collect()
    }
}

/// Matrix of ∂: Bⁿ → Bⁿ⁺¹ in the chosen bases.
fn fixed_differential(b: &HomLieBialgebra, maps: &StructureMaps, total: usize) -> Result<(usize, usize, RatMatrix)> {
    let n = b.n();
    let src = total_basis(maps, total);
    let dst = total_basis(maps, total + 1);
    let dst_mat = RatMatrix::from_columns(
        ambient_vector(n, total + 1, &[]).len(),
        &dst.iter().map(|(_, m)| ambient_vector(n, total + 1, std::slice::from_ref(m))).collect::<Vec<_>>(),
    );
    let mut cols = Vec::new();
    for (_, m) in &src {
        let img = ambient_vector(n, total + 1, &bialgebra_bracket_differential(b, m)?);
        let coords = solve(&dst_mat, &img)?.ok_or_else(|| Error::Invalid("∂ leaves the compatible subspace".into()))?;
        cols.push(coords);
    }
    Ok((src.len(), dst.len(), RatMatrix::from_columns(dst.len(), &cols)))
}

/// Cohomology of (B•, ⟦ν+δ,·⟧) for total degrees 2..=max_total_degree.
pub fn bialg_cohomology_fixed_maps(b: &HomLieBialgebra, max_total_degree: usize) -> Result<FixedMapsReport> {
    let rep = b.validate();
    if let Some(f) = rep.failures().next() {
        return Err(Error::Invalid(format!("not a Hom-Lie bialgebra: {} fails", f.axiom)));
    }
    let maps = bialgebra_maps(b)?;
    let mut rows = Vec::new();
    let mut representatives = Vec::new();
    let mut prev: Option<RatMatrix> = None;
    for total in 2..=max_total_degree {
        let (dim_c, _, d) = fixed_differential(b, &maps, total)?;
        let r = rank(&d);
        let kernel = kernel_basis(&d);
        let image = prev.take().unwrap_or_else(|| RatMatrix::zeros(dim_c, 0));
        let prev_rank = rank(&image);
        let reps = crate::alpha_ce::complement_representatives(&kernel, &image);
        let basis = total_basis(&maps, total);
        representatives.push(
            reps.iter()
                .map(|v| {
                    let mut parts: Vec<MultiMap> = Vec::new();
                    for ((_, m), c) in basis.iter().zip(v) {
                        if c.is_zero() {
                            continue;
                        }
                        match parts.iter_mut().find(|p| p.src == m.src) {
                            Some(p) => *p = add_maps(p, m, c),
                            None => parts.push(MultiMap { mat: m.mat.scale(c), ..m.clone() }),
                        }
                    }
                    parts
                })
                .collect(),
        );
        rows.push(crate::alpha_ce::DegreeRow {
            degree: total,
            dim_c,
            dim_im: r,
            dim_ker: dim_c - r,
            dim_h: dim_c - r - prev_rank,
        });
        prev = Some(d);
    }
    Ok(FixedMapsReport { rows, representatives })
}

/// ∂∘∂ on Bⁿ for the fixed-map complex, as a matrix.
pub fn fixed_maps_d_squared(b: &HomLieBialgebra, total: usize) -> Result<RatMatrix> {
    let maps = bialgebra_maps(b)?;
    let (_, _, d1) = fixed_differential(b, &maps, total)?;
    let (_, _, d2) = fixed_differential(b, &maps, total + 1)?;
    Ok(d2.matmul(&d1))
}
