//! The α-type complex of a Hom-Lie bialgebra with α = β.
//!
//! 𝔠̃ᵏ = ⊕ Hom(Λⁱg, Λʲg) over ν-slots (i + j − 1 = k) and α-slots (i + j = k).
//! On column j the bracket-side pieces are the α-type Chevalley–Eilenberg
//! components with coefficients in the module Λʲg. The cobracket-side pieces
//! are the same components for the dual algebra (g*, δᵀ, αᵀ), conjugated by
//! transposition Hom(Λⁱg, Λʲg) ≅ Hom(Λʲg*, Λⁱg*). The bridge ∂_b = ∂_b1 + ∂_b2
//! maps the α-slot (i, j) to the ν-slot (i + 1, j + 1); ∂_b2 is the transpose
//! of ∂_b1 computed on the dual.

use num_traits::{One, Zero};

use crate::alpha_ce::{daa, dan, dna, dnn, DegreeRow, Formula};
use crate::cochain::{assemble, hom_dim, Term};
use crate::error::{Error, Result};
use crate::exterior::{binom, compound, mask_elems, space, wedge_vectors, ExtElem};
use crate::hom::{unit, HomLieAlgebra, HomLieBialgebra, Representation, TwistMode};
use crate::linalg::{axpy, rank, RatMatrix, Rational};
use crate::morphism::{classical_ce, compose_with_bracket_into};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Nu,
    Alpha,
}

/// Hom(Λⁱg, Λʲg) inside 𝔠̃, tagged with its part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub part: Part,
    pub i: usize,
    pub j: usize,
}

impl Slot {
    pub fn nu(i: usize, j: usize) -> Self {
        Slot { part: Part::Nu, i, j }
    }

    pub fn alpha(i: usize, j: usize) -> Self {
        Slot { part: Part::Alpha, i, j }
    }

    pub fn degree(&self) -> usize {
        match self.part {
            Part::Nu => self.i + self.j - 1,
            Part::Alpha => self.i + self.j,
        }
    }

    /// Integer height: i + j − 2 on ν-slots, i + j − 1 on α-slots.
    pub fn height(&self) -> usize {
        self.degree() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        hom_dim(n, self.i, binom(n, self.j))
    }
}

impl std::fmt::Display for Slot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = match self.part {
            Part::Nu => "nu",
            Part::Alpha => "alpha",
        };
        write!(f, "{p}({},{})", self.i, self.j)
    }
}

/// Slots of 𝔠̃ᵏ on dimension n, ν-slots first, each part ordered by i.
pub fn slots(n: usize, k: usize) -> Vec<Slot> {
    let nu = (1..=k).map(|i| Slot::nu(i, k + 1 - i));
    let alpha = (1..k).map(|i| Slot::alpha(i, k - i));
    nu.chain(alpha).filter(|s| s.i <= n && s.j <= n).collect()
}

pub fn complex_dim(n: usize, k: usize) -> usize {
    slots(n, k).iter().map(|s| s.dim(n)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Piece {
    NuNu,
    NuAlpha,
    CoNuNu,
    AlphaNu,
    AlphaAlpha,
    CoAlphaNu,
    CoAlphaAlpha,
    Bridge1,
    Bridge2,
    Comparison,
}

impl Piece {
    pub fn name(&self) -> &'static str {
        match self {
            Piece::NuNu => "d_nn",
            Piece::NuAlpha => "d_na",
            Piece::CoNuNu => "d^c_nn",
            Piece::AlphaNu => "d_an",
            Piece::AlphaAlpha => "d_aa",
            Piece::CoAlphaNu => "d^c_an",
            Piece::CoAlphaAlpha => "d^c_aa",
            Piece::Bridge1 => "d_b1",
            Piece::Bridge2 => "d_b2",
            Piece::Comparison => "phi",
        }
    }
}

/// An exponent c + a·(k − 1) + b·(l − 1) depending on the source slot (k, l).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Affine {
    pub c: i64,
    pub a: i64,
    pub b: i64,
}

impl Affine {
    pub const fn new(c: i64, a: i64, b: i64) -> Self {
        Affine { c, a, b }
    }

    pub fn eval(&self, k: usize, l: usize) -> i64 {
        self.c + self.a * (k as i64 - 1) + self.b * (l as i64 - 1)
    }
}

/// Powers of α inside ∂_b1 ψ(x) = Σ_j ± Σ α^wedge(u) ∧ ρ(v)ψ(α^rest x̂_j),
/// where u ∧ v runs over δ(α^delta x_j) and ρ is the action on Λˡg with
/// α^module on the untouched factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BridgePowers {
    pub delta: Affine,
    pub wedge: Affine,
    pub module: Affine,
    pub rest: Affine,
}

impl Default for BridgePowers {
    fn default() -> Self {
        BridgePowers {
            delta: Affine::new(0, 1, 1),
            wedge: Affine::new(1, 0, 0),
            module: Affine::new(1, 0, 0),
            rest: Affine::new(0, 0, 0),
        }
    }
}

/// Overall signs on the cobracket-side and bridge pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BialgSigns {
    pub co_nu_nu: i8,
    pub co_alpha_nu: i8,
    pub co_alpha_alpha: i8,
    pub bridge1: i8,
    pub bridge2: i8,
    pub powers: BridgePowers,
    /// Multiply the cobracket-side pieces leaving slot (i, j) by (−1)^i.
    pub co_parity: bool,
    pub co_alpha_nu_parity: bool,
    /// Multiply the bridge pieces leaving slot (i, j) by (−1)^i.
    pub bridge_parity: bool,
}

impl Default for BialgSigns {
    fn default() -> Self {
        BialgSigns {
            co_nu_nu: 1,
            co_alpha_nu: 1,
            co_alpha_alpha: -1,
            bridge1: 1,
            bridge2: 1,
            powers: BridgePowers::default(),
            co_parity: true,
            co_alpha_nu_parity: false,
            bridge_parity: true,
        }
    }
}

impl BialgSigns {
    pub fn all_sign_choices(powers: BridgePowers, co_parity: bool, bridge_parity: bool) -> Vec<BialgSigns> {
        (0..32u32)
            .map(|m| {
                let s = |b: u32| if m >> b & 1 == 0 { 1 } else { -1 };
                BialgSigns {
                    co_nu_nu: s(0),
                    co_alpha_nu: s(1),
                    co_alpha_alpha: s(2),
                    bridge1: s(3),
                    bridge2: s(4),
                    powers,
                    co_parity,
                    co_alpha_nu_parity: false,
                    bridge_parity,
                }
            })
            .collect()
    }
}

/// Λʲg as a module: x acts by w₁ ∧ … ∧ w_j ↦ Σ_l α(w₁) ∧ … ∧ [α^{j−1}x, w_l] ∧ … ∧ α(w_j).
/// The shift by α^{j−1} makes the ν-slot differential carry the slot height.
pub fn wedge_module(g: &HomLieAlgebra, j: usize) -> Representation {
    let base = wedge_module_with(g, j, &g.alpha);
    let shift = g.alpha.pow(j.saturating_sub(1));
    let action = (0..g.n).map(|x| base.rho(&shift.column(x))).collect();
    Representation { action, ..base }
}

/// As `wedge_module`, with `other` in place of α on the untouched factors.
fn wedge_module_with(g: &HomLieAlgebra, j: usize, other: &RatMatrix) -> Representation {
    let n = g.n;
    let dim = binom(n, j);
    let action = (0..n)
        .map(|x| {
            let ad = g.ad(&unit(n, x));
            let cols: Vec<Vec<Rational>> = space(n)
                .masks(j)
                .iter()
                .map(|&m| {
                    let e = mask_elems(m);
                    let mut acc = vec![Rational::zero(); dim];
                    for l in 0..e.len() {
                        let vs: Vec<Vec<Rational>> = e
                            .iter()
                            .enumerate()
                            .map(|(p, &s)| if p == l { ad.column(s) } else { other.column(s) })
                            .collect();
                        let refs: Vec<&[Rational]> = vs.iter().map(Vec::as_slice).collect();
                        axpy(&mut acc, &Rational::one(), &wedge_vectors(n, &refs));
                    }
                    acc
                })
                .collect();
            RatMatrix::from_columns(dim, &cols)
        })
        .collect();
    Representation {
        m: dim,
        action,
        beta: compound(&g.alpha, j),
    }
}

/// Permutation Hom(Λⁱ, Λʲ) → Hom(Λʲ, Λⁱ) in flattened coordinates, f ↦ fᵀ.
fn transpose_perm(n: usize, i: usize, j: usize) -> RatMatrix {
    let (ci, cj) = (binom(n, i), binom(n, j));
    let mut p = RatMatrix::zeros(ci * cj, ci * cj);
    for c in 0..ci {
        for r in 0..cj {
            p[(r * ci + c, c * cj + r)] = Rational::one();
        }
    }
    p
}

/// T⁻¹ · m · T for a map m between transposed slots on the dual side.
fn conjugate(n: usize, src: (usize, usize), tgt: (usize, usize), m: &RatMatrix) -> RatMatrix {
    let t_in = transpose_perm(n, src.0, src.1);
    let t_out_inv = transpose_perm(n, tgt.1, tgt.0);
    t_out_inv.matmul(&m.matmul(&t_in))
}

/// w ↦ Σ_{s<t} u_st (a(e_s) ∧ ρ(e_t)w − a(e_t) ∧ ρ(e_s)w) on Λˡg, for u ∈ Λ²g.
fn sweedler_action(g: &HomLieAlgebra, module: &Representation, l: usize, u: &[Rational], a: &RatMatrix) -> RatMatrix {
    let n = g.n;
    let out_dim = binom(n, l + 1);
    let mut out = RatMatrix::zeros(out_dim, binom(n, l));
    for (c, &m) in u.iter().zip(space(n).masks(2)) {
        if c.is_zero() {
            continue;
        }
        let e = mask_elems(m);
        for (first, second, sg) in [(e[0], e[1], c.clone()), (e[1], e[0], -c.clone())] {
            let act = &module.action[second];
            let cols: Vec<Vec<Rational>> = (0..act.cols())
                .map(|w| ExtElem::from_vector(&a.column(first)).wedge(&ExtElem::from_dense(n, l, &act.column(w))).to_dense(l + 1))
                .map(|v| v.into_iter().map(|x| x * &sg).collect())
                .collect();
            out = &out + &RatMatrix::from_columns(out_dim, &cols);
        }
    }
    out
}

fn alpha_power(g: &HomLieAlgebra, e: i64) -> Result<RatMatrix> {
    if e < 0 {
        return Err(Error::NegativeHeight { map: "alpha", height: (e, 0) });
    }
    Ok(g.alpha.pow(e as usize))
}

/// ∂_b1: Hom(Λᵏ, Λˡ) → Hom(Λᵏ⁺¹, Λˡ⁺¹), ψ ↦ Σ_j (−1)^j δ(α^p x_j)·ψ(…x̂_j…)
/// with the powers of `BridgePowers`.
fn bridge1(b: &HomLieBialgebra, k: usize, l: usize, pw: &BridgePowers) -> Result<RatMatrix> {
    let g = &b.alg;
    let n = g.n;
    let ap = alpha_power(g, pw.delta.eval(k, l))?;
    let aw = alpha_power(g, pw.wedge.eval(k, l))?;
    let module = wedge_module_with(g, l, &alpha_power(g, pw.module.eval(k, l))?);
    let rest = compound(&alpha_power(g, pw.rest.eval(k, l))?, k);
    Ok(assemble(n, k, binom(n, l), k + 1, binom(n, l + 1), |s| {
        mask_elems(s)
            .iter()
            .enumerate()
            .map(|(a, &x)| {
                let u = b.cobracket.mul_vec(&ap.column(x));
                let sg = if a % 2 == 0 { -Rational::one() } else { Rational::one() };
                let w = rest.column(space(n).index_of(s & !(1 << x)));
                Term::eval(Some(sweedler_action(g, &module, l, &u, &aw).scale(&sg)), w)
            })
            .collect()
    }))
}

/// One nonzero block of the differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub piece: Piece,
    pub from: Slot,
    pub to: Slot,
    pub mat: RatMatrix,
}

/// ∂: 𝔠̃ᵏ → 𝔠̃ᵏ⁺¹ as a list of blocks between slots.
#[derive(Debug, Clone)]
pub struct BialgDifferential {
    pub n: usize,
    pub degree: usize,
    pub sources: Vec<Slot>,
    pub targets: Vec<Slot>,
    pub arrows: Vec<Arrow>,
}

fn offsets(n: usize, ss: &[Slot], s: Slot) -> usize {
    ss.iter().take_while(|&&t| t != s).map(|t| t.dim(n)).sum()
}

impl BialgDifferential {
    pub fn matrix(&self) -> RatMatrix {
        let rows: usize = self.targets.iter().map(|s| s.dim(self.n)).sum();
        let cols: usize = self.sources.iter().map(|s| s.dim(self.n)).sum();
        let mut out = RatMatrix::zeros(rows, cols);
        for a in &self.arrows {
            let r0 = offsets(self.n, &self.targets, a.to);
            let c0 = offsets(self.n, &self.sources, a.from);
            let cur = out.submatrix(r0, c0, a.mat.rows(), a.mat.cols());
            out.paste(r0, c0, &(&cur + &a.mat));
        }
        out
    }
}

pub fn require_equal_maps(b: &HomLieBialgebra) -> Result<()> {
    if b.beta != b.alg.alpha {
        return Err(Error::Unsupported("the α-type bialgebra complex needs α = β".into()));
    }
    Ok(())
}

fn scaled(m: RatMatrix, s: i8) -> RatMatrix {
    if s == 1 {
        m
    } else {
        m.scale(&Rational::from_integer(s.into()))
    }
}

pub fn bialg_differential(b: &HomLieBialgebra, k: usize, signs: &BialgSigns) -> Result<BialgDifferential> {
    require_equal_maps(b)?;
    if k == 0 {
        return Err(Error::Degree("the bialgebra complex starts in degree 1".into()));
    }
    let g = &b.alg;
    let dual = b.dual();
    let gd = &dual.alg;
    let n = g.n;
    let sources = slots(n, k);
    let targets = slots(n, k + 1);
    let f = Formula::Direct;
    let mut arrows = Vec::new();
    let mut push = |piece: Piece, from: Slot, to: Slot, mat: RatMatrix| {
        if targets.contains(&to) && !mat.is_zero() {
            arrows.push(Arrow { piece, from, to, mat });
        }
    };
    for &s in &sources {
        let (i, j) = (s.i, s.j);
        let rep = wedge_module(g, j);
        let rep_dual = wedge_module(gd, i);
        let flip = |on: bool, sg: i8| if on && i % 2 == 1 { -sg } else { sg };
        let (c_nn, c_an, c_aa) = (flip(signs.co_parity, signs.co_nu_nu), flip(signs.co_alpha_nu_parity, signs.co_alpha_nu), flip(signs.co_parity, signs.co_alpha_alpha));
        let (b1, b2) = (flip(signs.bridge_parity, signs.bridge1), flip(signs.bridge_parity, signs.bridge2));
        match s.part {
            Part::Nu => {
                push(Piece::NuNu, s, Slot::nu(i + 1, j), dnn(g, &rep, i, f));
                push(Piece::NuAlpha, s, Slot::alpha(i, j), dna(g, &rep, i, f));
                let m = conjugate(n, (i, j), (i, j + 1), &dnn(gd, &rep_dual, j, f));
                push(Piece::CoNuNu, s, Slot::nu(i, j + 1), scaled(m, c_nn));
            }
            Part::Alpha => {
                push(Piece::AlphaNu, s, Slot::nu(i + 2, j), -&dan(g, &rep, i, f));
                push(Piece::AlphaAlpha, s, Slot::alpha(i + 1, j), -&daa(g, &rep, i, f));
                let m = conjugate(n, (i, j), (i, j + 2), &dan(gd, &rep_dual, j, f));
                push(Piece::CoAlphaNu, s, Slot::nu(i, j + 2), scaled(m, c_an));
                let m = conjugate(n, (i, j), (i, j + 1), &daa(gd, &rep_dual, j, f));
                push(Piece::CoAlphaAlpha, s, Slot::alpha(i, j + 1), scaled(m, c_aa));
                if i < n && j < n {
                    let to = Slot::nu(i + 1, j + 1);
                    push(Piece::Bridge1, s, to, scaled(bridge1(b, i, j, &signs.powers)?, b1));
                    let m = conjugate(n, (i, j), (i + 1, j + 1), &bridge1(&dual, j, i, &signs.powers)?);
                    push(Piece::Bridge2, s, to, scaled(m, b2));
                }
            }
        }
    }
    Ok(BialgDifferential {
        n,
        degree: k,
        sources,
        targets,
        arrows,
    })
}

/// A nonzero block of ∂∘∂ with the piece pairs that contribute to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFailure {
    pub degree: usize,
    pub from: Slot,
    pub to: Slot,
    pub paths: Vec<(Piece, Slot, Piece)>,
    pub max_abs: Rational,
}

impl std::fmt::Display for SquareFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "degree {}: {} -> {} (max |entry| {}) via", self.degree, self.from, self.to, self.max_abs)?;
        for (first, mid, second) in &self.paths {
            write!(f, " [{} then {} through {}]", first.name(), second.name(), mid)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SquareReport {
    pub checked_degrees: Vec<usize>,
    pub failures: Vec<SquareFailure>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact check of ∂∘∂ = 0 on 𝔠̃ᵏ for k = 1..=max_degree − 1, block by block.
pub fn verify_d_squared(b: &HomLieBialgebra, max_degree: usize, signs: &BialgSigns) -> Result<SquareReport> {
    let mut report = SquareReport::default();
    let mut next = bialg_differential(b, 1, signs)?;
    for k in 1..max_degree {
        let first = next;
        next = bialg_differential(b, k + 1, signs)?;
        for &from in &first.sources {
            for &to in &next.targets {
                let mut total: Option<RatMatrix> = None;
                let mut paths = Vec::new();
                for a1 in first.arrows.iter().filter(|a| a.from == from) {
                    for a2 in next.arrows.iter().filter(|a| a.from == a1.to && a.to == to) {
                        let prod = a2.mat.matmul(&a1.mat);
                        paths.push((a1.piece, a1.to, a2.piece));
                        total = Some(match total {
                            None => prod,
                            Some(t) => &t + &prod,
                        });
                    }
                }
                if let Some(t) = total.filter(|t| !t.is_zero()) {
                    report.failures.push(SquareFailure {
                        degree: k,
                        from,
                        to,
                        paths,
                        max_abs: t.max_abs(),
                    });
                }
            }
        }
        report.checked_degrees.push(k);
    }
    Ok(report)
}

/// f ↦ post · f · pre on flattened Hom(Λⁱg, Λʲg).
fn sandwich(post: &RatMatrix, pre: &RatMatrix) -> RatMatrix {
    let (mo, mj) = post.shape();
    let (ci, co) = pre.shape();
    let mut out = RatMatrix::zeros(mo * co, mj * ci);
    for c in 0..co {
        for cp in 0..ci {
            let q = &pre[(cp, c)];
            if q.is_zero() {
                continue;
            }
            for r in 0..mo {
                for rp in 0..mj {
                    let p = &post[(r, rp)];
                    if !p.is_zero() {
                        out[(c * mo + r, cp * mj + rp)] = p * q;
                    }
                }
            }
        }
    }
    out
}

/// ±(−1)^{e_i·i + e_j·j + e_ij·ij}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignRule {
    pub c: i8,
    pub e_i: bool,
    pub e_j: bool,
    pub e_ij: bool,
}

impl SignRule {
    pub const fn new(c: i8, e_i: bool, e_j: bool, e_ij: bool) -> Self {
        SignRule { c, e_i, e_j, e_ij }
    }

    pub fn eval(&self, i: usize, j: usize) -> i8 {
        let e = (self.e_i as usize) * i + (self.e_j as usize) * j + (self.e_ij as usize) * i * j;
        if e.is_multiple_of(2) {
            self.c
        } else {
            -self.c
        }
    }

    pub fn all() -> Vec<SignRule> {
        (0..16u32)
            .map(|m| SignRule::new(if m & 1 == 0 { 1 } else { -1 }, m & 2 != 0, m & 4 != 0, m & 8 != 0))
            .collect()
    }
}

/// Signs of the co-side pieces of C(γ) and of the δ∘ψ term of Φ, as functions of the source slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismSigns {
    pub co_nu: SignRule,
    pub co_alpha: SignRule,
    pub delta_circ: SignRule,
}

impl Default for MorphismSigns {
    fn default() -> Self {
        MorphismSigns {
            co_nu: SignRule::new(1, true, false, false),
            co_alpha: SignRule::new(-1, true, false, false),
            delta_circ: SignRule::new(-1, true, false, false),
        }
    }
}

fn require_lie_bialgebra_endo(b: &HomLieBialgebra, gamma: &RatMatrix) -> Result<()> {
    let id = RatMatrix::identity(b.n());
    if b.alg.alpha != id || b.beta != id {
        return Err(Error::Unsupported("the morphism complex is defined for Lie bialgebras (α = β = id)".into()));
    }
    b.check_morphism(gamma)
}

/// Λʲg as a module over a Lie algebra, optionally with x acting through γ(x).
fn lie_wedge_action(g: &HomLieAlgebra, j: usize, gamma: Option<&RatMatrix>) -> Vec<RatMatrix> {
    let m = wedge_module_with(g, j, &RatMatrix::identity(g.n));
    match gamma {
        None => m.action,
        Some(c) => (0..g.n).map(|x| m.rho(&c.column(x))).collect(),
    }
}

/// The differential of C(γ) for a Lie bialgebra endomorphism γ, on the slots of 𝔠̃:
/// ∂φ = (∂_CE φ, ∂_γ φ, ∂ᶜ_CE φ) and ∂ψ = (−∂_CE ψ, −∂ᶜ_CE ψ) with x·ψ = γ(x)ψ.
pub fn bialg_morphism_differential(b: &HomLieBialgebra, gamma: &RatMatrix, k: usize, signs: &MorphismSigns) -> Result<BialgDifferential> {
    require_lie_bialgebra_endo(b, gamma)?;
    if k == 0 {
        return Err(Error::Degree("the bialgebra complex starts in degree 1".into()));
    }
    let g = &b.alg;
    let gd = b.dual_algebra();
    let gt = gamma.transpose();
    let n = g.n;
    let sources = slots(n, k);
    let targets = slots(n, k + 1);
    let mut arrows = Vec::new();
    let mut push = |piece: Piece, from: Slot, to: Slot, mat: RatMatrix| {
        if targets.contains(&to) && !mat.is_zero() {
            arrows.push(Arrow { piece, from, to, mat });
        }
    };
    for &s in &sources {
        let (i, j) = (s.i, s.j);
        let (mi, mj) = (binom(n, i), binom(n, j));
        match s.part {
            Part::Nu => {
                push(Piece::NuNu, s, Slot::nu(i + 1, j), classical_ce(g, &lie_wedge_action(g, j, None), mj, i));
                let dg = &sandwich(&compound(gamma, j), &RatMatrix::identity(mi)) - &sandwich(&RatMatrix::identity(mj), &compound(gamma, i));
                push(Piece::NuAlpha, s, Slot::alpha(i, j), dg);
                let m = conjugate(n, (i, j), (i, j + 1), &classical_ce(&gd, &lie_wedge_action(&gd, i, None), mi, j));
                push(Piece::CoNuNu, s, Slot::nu(i, j + 1), scaled(m, signs.co_nu.eval(i, j)));
            }
            Part::Alpha => {
                let d = classical_ce(g, &lie_wedge_action(g, j, Some(gamma)), mj, i);
                push(Piece::AlphaAlpha, s, Slot::alpha(i + 1, j), -&d);
                let m = conjugate(n, (i, j), (i, j + 1), &classical_ce(&gd, &lie_wedge_action(&gd, i, Some(&gt)), mi, j));
                push(Piece::CoAlphaAlpha, s, Slot::alpha(i, j + 1), scaled(m, signs.co_alpha.eval(i, j)));
            }
        }
    }
    Ok(BialgDifferential {
        n,
        degree: k,
        sources,
        targets,
        arrows,
    })
}

/// Φ: C(γ) → 𝔠̃(g_γ) in degree k, where g_γ = (γν, δγ, γ, γ):
/// φ ↦ γ^{i−1}φγ^{j−1} and ψ ↦ (γ^{i−1}(ψ∘ν)γ^{j−1}, γ^{i−1}ψγ^{j−1}, γ^{i−1}(δ∘ψ)γ^{j−1}),
/// where γ^{i−1} acts on outputs and γ^{j−1} on inputs. δ∘ψ is the transpose of ψᵀ∘δᵀ on g*.
pub fn bialg_phi(b: &HomLieBialgebra, gamma: &RatMatrix, k: usize, signs: &MorphismSigns) -> Result<BialgDifferential> {
    require_lie_bialgebra_endo(b, gamma)?;
    let g = &b.alg;
    let gd = b.dual_algebra();
    let n = g.n;
    let sources = slots(n, k);
    let targets = sources.clone();
    let mut arrows = Vec::new();
    for &s in &sources {
        let (i, j) = (s.i, s.j);
        let around = |tgt_i: usize, tgt_j: usize| sandwich(&compound(&gamma.pow(i - 1), tgt_j), &compound(&gamma.pow(j - 1), tgt_i));
        let mut push = |to: Slot, mat: RatMatrix| {
            if targets.contains(&to) && !mat.is_zero() {
                arrows.push(Arrow {
                    piece: Piece::Comparison,
                    from: s,
                    to,
                    mat,
                });
            }
        };
        match s.part {
            Part::Nu => push(s, around(i, j)),
            Part::Alpha => {
                let circ = compose_with_bracket_into(g, i + 1, binom(n, j));
                push(Slot::nu(i + 1, j), around(i + 1, j).matmul(&circ));
                push(s, around(i, j));
                let circ = conjugate(n, (i, j), (i, j + 1), &compose_with_bracket_into(&gd, j + 1, binom(n, i)));
                push(Slot::nu(i, j + 1), scaled(around(i, j + 1).matmul(&circ), signs.delta_circ.eval(i, j)));
            }
        }
    }
    Ok(BialgDifferential {
        n,
        degree: k,
        sources,
        targets,
        arrows,
    })
}

/// A block of ∂∘Φ − Φ∘∂ that does not vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainFailure {
    pub degree: usize,
    pub from: Slot,
    pub to: Slot,
    pub max_abs: Rational,
}

impl std::fmt::Display for ChainFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "degree {}: {} -> {} (max |entry| {})", self.degree, self.from, self.to, self.max_abs)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChainReport {
    pub checked_degrees: Vec<usize>,
    pub failures: Vec<ChainFailure>,
    /// rank of Φ in each checked degree, next to the dimension of 𝔠̃ᵏ
    pub phi_ranks: Vec<(usize, usize)>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn phi_bijective(&self) -> bool {
        self.phi_ranks.iter().all(|(r, d)| r == d)
    }
}

/// Checks ∂_{g_γ}∘Φ = Φ∘∂_{C(γ)} exactly on degrees 1..=max_degree, block by block.
pub fn verify_phi_chain_map(b: &HomLieBialgebra, gamma: &RatMatrix, max_degree: usize, signs: &MorphismSigns) -> Result<ChainReport> {
    let tw = b.yau_twist(gamma, TwistMode::Both)?;
    let bs = BialgSigns::default();
    let n = b.n();
    let mut report = ChainReport::default();
    let mut phi = bialg_phi(b, gamma, 1, signs)?;
    for k in 1..=max_degree {
        let next = bialg_phi(b, gamma, k + 1, signs)?;
        let p = phi.matrix();
        report.phi_ranks.push((rank(&p), p.rows()));
        let d = bialg_morphism_differential(b, gamma, k, signs)?;
        let lhs = bialg_differential(&tw, k, &bs)?.matrix().matmul(&p);
        let diff = &lhs - &next.matrix().matmul(&d.matrix());
        for &to in &d.targets {
            for &from in &d.sources {
                let blk = diff.submatrix(offsets(n, &d.targets, to), offsets(n, &d.sources, from), to.dim(n), from.dim(n));
                if !blk.is_zero() {
                    report.failures.push(ChainFailure {
                        degree: k,
                        from,
                        to,
                        max_abs: blk.max_abs(),
                    });
                }
            }
        }
        report.checked_degrees.push(k);
        phi = next;
    }
    Ok(report)
}

/// Dimensions of 𝔠̃ᵏ, Im ∂ᵏ, ker ∂ᵏ and H̃ᵏ for k = 1..=max_degree.
pub fn bialg_cohomology(b: &HomLieBialgebra, max_degree: usize, signs: &BialgSigns) -> Result<Vec<DegreeRow>> {
    let mut rows = Vec::new();
    let mut prev_rank = 0;
    for k in 1..=max_degree {
        let d = bialg_differential(b, k, signs)?.matrix();
        let r = rank(&d);
        let dim_ker = d.cols() - r;
        rows.push(DegreeRow {
            degree: k,
            dim_c: d.cols(),
            dim_im: r,
            dim_ker,
            dim_h: dim_ker - prev_rank,
        });
        prev_rank = r;
    }
    Ok(rows)
}

/// First valid two-dimensional bialgebra with ν ≠ 0, δ ≠ 0 and α = β ≠ id on a
/// small integer grid: [e₀,e₁] = a e₀ + b e₁, δ(e₀) = c e₀∧e₁, δ(e₁) = d e₀∧e₁,
/// α = diag(p, q). Falls back to α = id if no twisted example exists on the grid.
pub fn search_dim2_bialgebra() -> Option<HomLieBialgebra> {
    let vals = [1i64, -1, 2, 0];
    let mut alphas: Vec<(i64, i64)> = vals.iter().flat_map(|&p| vals.iter().map(move |&q| (p, q))).filter(|&pq| pq != (1, 1)).collect();
    alphas.push((1, 1));
    for (p, q) in alphas {
        let alpha = RatMatrix::from_i64(&[&[p, 0], &[0, q]]);
        for &a in &vals {
            for &bb in &vals {
                if a == 0 && bb == 0 {
                    continue;
                }
                for &c in &vals {
                    for &d in &vals {
                        if c == 0 && d == 0 {
                            continue;
                        }
                        let Ok(g) = HomLieAlgebra::new(RatMatrix::from_i64(&[&[a], &[bb]]), alpha.clone()) else {
                            continue;
                        };
                        let Ok(b) = HomLieBialgebra::new(g, RatMatrix::from_i64(&[&[c, d]]), alpha.clone()) else {
                            continue;
                        };
                        if b.validate().passed() {
                            return Some(b);
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests;
