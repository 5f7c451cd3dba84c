//! The exterior algebra Λ•g of a finite-dimensional space.
//!
//! A basis monomial e_{i1} ∧ … ∧ e_{ik} with i1 < … < ik is stored as a
//! bitmask; bit `i` stands for the (0-based) basis vector e_i. Inside a fixed
//! degree monomials are ordered lexicographically by their sorted index lists,
//! which is the column/row order of every matrix in this crate.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, RatMatrix, Rational};

pub const MAX_DIM: usize = 12;

pub struct ExtSpace {
    n: usize,
    by_degree: Vec<Vec<u32>>,
    pos: Vec<u32>,
}

impl ExtSpace {
    fn build(n: usize) -> Self {
        let mut pos = vec![0u32; 1 << n];
        let by_degree: Vec<Vec<u32>> = (0..=n)
            .map(|k| {
                let masks: Vec<u32> = (0..n)
                    .combinations(k)
                    .map(|c| c.iter().fold(0u32, |m, &i| m | (1 << i)))
                    .collect();
                for (p, &m) in masks.iter().enumerate() {
                    pos[m as usize] = p as u32;
                }
                masks
            })
            .collect();
        ExtSpace { n, by_degree, pos }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Monomials of degree `k`, lexicographic; empty when `k > n`.
    pub fn masks(&self, k: usize) -> &[u32] {
        self.by_degree.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self, k: usize) -> usize {
        self.masks(k).len()
    }

    pub fn index_of(&self, mask: u32) -> usize {
        self.pos[mask as usize] as usize
    }
}

/// Shared per-dimension basis tables.
pub fn space(n: usize) -> &'static ExtSpace {
    static SPACES: [OnceLock<ExtSpace>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];
    assert!(n <= MAX_DIM, "dimension {n} exceeds the supported maximum {MAX_DIM}");
    SPACES[n].get_or_init(|| ExtSpace::build(n))
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn mask_elems(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

pub fn mask_of(elems: &[usize]) -> u32 {
    elems.iter().fold(0, |m, &i| m | (1 << i))
}

/// Sign of `a ∧ b` relative to the sorted monomial `a | b`; zero if they share an index.
pub fn wedge_sign(a: u32, b: u32) -> i8 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    for p in mask_elems(a) {
        inversions += (b & ((1u32 << p) - 1)).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A basis element of Λᵏ, with 1-based indices as users see them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtIndex {
    pub n: usize,
    pub subset: Vec<usize>,
}

impl ExtIndex {
    pub fn from_mask(n: usize, mask: u32) -> Self {
        ExtIndex {
            n,
            subset: mask_elems(mask).into_iter().map(|i| i + 1).collect(),
        }
    }

    pub fn mask(&self) -> u32 {
        self.subset.iter().fold(0, |m, &i| m | (1 << (i - 1)))
    }

    pub fn degree(&self) -> usize {
        self.subset.len()
    }

    pub fn position(&self) -> usize {
        space(self.n).index_of(self.mask())
    }
}

pub fn enumerate_basis(n: usize, k: usize) -> Vec<ExtIndex> {
    space(n)
        .masks(k)
        .iter()
        .map(|&m| ExtIndex::from_mask(n, m))
        .collect()
}

/// Sign of the permutation sorting `indices`, and the sorted list.
/// Returns `(0, None)` on a repeated index.
pub fn sort_sign(indices: &[usize]) -> (i8, Option<Vec<usize>>) {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (0, None);
    }
    (sign, Some(v))
}

/// Element of Λ•g, possibly of mixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElem {
    pub n: usize,
    pub terms: BTreeMap<u32, Rational>,
}

impl ExtElem {
    pub fn zero(n: usize) -> Self {
        ExtElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, Rational::one())
    }

    pub fn monomial(n: usize, mask: u32, c: Rational) -> Self {
        let mut e = Self::zero(n);
        e.add_term(mask, c);
        e
    }

    pub fn from_vector(v: &[Rational]) -> Self {
        Self::from_dense(v.len(), 1, v)
    }

    pub fn from_dense(n: usize, k: usize, v: &[Rational]) -> Self {
        let masks = space(n).masks(k);
        assert_eq!(v.len(), masks.len(), "dense vector has wrong length for Λ^{k}");
        let mut e = Self::zero(n);
        for (&m, c) in masks.iter().zip(v) {
            e.add_term(m, c.clone());
        }
        e
    }

    pub fn add_term(&mut self, mask: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add_scaled(&mut self, s: &Rational, other: &ExtElem) {
        for (&m, c) in &other.terms {
            self.add_term(m, s * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut e = Self::zero(self.n);
        e.add_scaled(s, self);
        e
    }

    pub fn wedge(&self, other: &ExtElem) -> Self {
        assert_eq!(self.n, other.n);
        let mut e = Self::zero(self.n);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                match wedge_sign(a, b) {
                    0 => {}
                    s => e.add_term(a | b, Rational::from_integer(s.into()) * ca * cb),
                }
            }
        }
        e
    }

    pub fn degree_part(&self, k: usize) -> Self {
        ExtElem {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, k: usize) -> Vec<Rational> {
        let sp = space(self.n);
        let mut v = vec![Rational::zero(); sp.len(k)];
        for (&m, c) in &self.terms {
            if m.count_ones() as usize == k {
                v[sp.index_of(m)] = c.clone();
            }
        }
        v
    }

    /// Degree-one component as a vector of g.
    pub fn project_deg1(&self) -> Vec<Rational> {
        self.to_dense(1)
    }

    /// Shuffle coproduct, as a list of (left, right, coefficient) terms.
    pub fn coproduct(&self) -> Vec<(u32, u32, Rational)> {
        let mut out = Vec::new();
        for (&m, c) in &self.terms {
            for a in submasks(m) {
                let b = m & !a;
                out.push((a, b, Rational::from_integer(wedge_sign(a, b).into()) * c));
            }
        }
        out
    }
}

/// All submasks of `m`, including 0 and `m`.
pub fn submasks(m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut s = m;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & m;
    }
    out.reverse();
    out
}

/// For each degree-k monomial (by position), the (p,q)-splittings of Δ with their signs.
pub fn coproduct_split(n: usize, k: usize, p: usize, q: usize) -> Vec<Vec<(u32, u32, i8)>> {
    assert_eq!(p + q, k, "split must add up to the degree");
    space(n)
        .masks(k)
        .iter()
        .map(|&m| {
            submasks(m)
                .into_iter()
                .filter(|a| a.count_ones() as usize == p)
                .map(|a| (a, m & !a, wedge_sign(a, m & !a)))
                .collect()
        })
        .collect()
}

/// Dense coordinates of v1 ∧ … ∧ vk in Λᵏ.
pub fn wedge_vectors(n: usize, vs: &[&[Rational]]) -> Vec<Rational> {
    let mut acc = ExtElem::one(n);
    for v in vs {
        acc = acc.wedge(&ExtElem::from_vector(v));
        if acc.is_zero() {
            break;
        }
    }
    acc.to_dense(vs.len())
}

/// Λᵏ of a linear map `m`: the matrix of e_S ↦ ∧_{s∈S} m(e_s).
pub fn compound(m: &RatMatrix, k: usize) -> RatMatrix {
    assert_eq!(m.rows(), m.cols(), "compound of a non-square matrix");
    let n = m.rows();
    let sp = space(n);
    let cols: Vec<Vec<Rational>> = sp
        .masks(k)
        .iter()
        .map(|&s| {
            let images: Vec<Vec<Rational>> = mask_elems(s).into_iter().map(|i| m.column(i)).collect();
            let refs: Vec<&[Rational]> = images.iter().map(Vec::as_slice).collect();
            wedge_vectors(n, &refs)
        })
        .collect();
    RatMatrix::from_columns(sp.len(k), &cols)
}

/// Alternating sum over all orderings of each basis k-subset.
/// `f` receives 0-based indices and returns a vector of length `out_dim`.
pub fn antisymmetrize<F>(n: usize, k: usize, out_dim: usize, f: F) -> RatMatrix
where
    F: Fn(&[usize]) -> Vec<Rational>,
{
    let sp = space(n);
    let cols: Vec<Vec<Rational>> = sp
        .masks(k)
        .iter()
        .map(|&s| {
            let elems = mask_elems(s);
            let mut acc = vec![Rational::zero(); out_dim];
            for perm in elems.iter().copied().permutations(k) {
                let (sign, _) = sort_sign(&perm);
                axpy(&mut acc, &Rational::from_integer(sign.into()), &f(&perm));
            }
            acc
        })
        .collect();
    RatMatrix::from_columns(out_dim, &cols)
}

/// Bookkeeping exponents of α and β absorbed by a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Height {
    pub alpha: i64,
    pub beta: i64,
}

impl Height {
    pub const fn new(alpha: i64, beta: i64) -> Self {
        Height { alpha, beta }
    }
}

impl std::ops::Add for Height {
    type Output = Height;
    fn add(self, o: Height) -> Height {
        Height::new(self.alpha + o.alpha, self.beta + o.beta)
    }
}

impl std::ops::Sub for Height {
    type Output = Height;
    fn sub(self, o: Height) -> Height {
        Height::new(self.alpha - o.alpha, self.beta - o.beta)
    }
}

/// A linear map Λ^src g → Λ^tgt g together with its height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMap {
    pub n: usize,
    pub src: usize,
    pub tgt: usize,
    pub mat: RatMatrix,
    pub height: Height,
}

impl MultiMap {
    pub fn new(n: usize, src: usize, tgt: usize, mat: RatMatrix, height: Height) -> Result<Self> {
        let expect = (binom(n, tgt), binom(n, src));
        if mat.shape() != expect {
            return Err(Error::Shape(format!(
                "map Λ^{src} → Λ^{tgt} on dimension {n} needs a {}x{} matrix, got {}x{}",
                expect.0,
                expect.1,
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(MultiMap {
            n,
            src,
            tgt,
            mat,
            height,
        })
    }

    /// Height defaults to (src − 1, tgt − 1).
    pub fn with_default_height(n: usize, src: usize, tgt: usize, mat: RatMatrix) -> Result<Self> {
        Self::new(n, src, tgt, mat, Height::new(src as i64 - 1, tgt as i64 - 1))
    }

    pub fn zero(n: usize, src: usize, tgt: usize, height: Height) -> Self {
        MultiMap {
            n,
            src,
            tgt,
            mat: RatMatrix::zeros(binom(n, tgt), binom(n, src)),
            height,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// Image of a mixed-degree element; only its degree-src part contributes.
    pub fn apply(&self, x: &ExtElem) -> ExtElem {
        let v = self.mat.mul_vec(&x.to_dense(self.src));
        ExtElem::from_dense(self.n, self.tgt, &v)
    }

    pub fn apply_mask(&self, mask: u32) -> ExtElem {
        let col = self.mat.column(space(self.n).index_of(mask));
        ExtElem::from_dense(self.n, self.tgt, &col)
    }

    /// x ↦ Σ_{Δx} a(x′) ∧ b(x″), with x′ of degree a.src and x″ of degree b.src.
    pub fn wedge(&self, other: &MultiMap) -> MultiMap {
        assert_eq!(self.n, other.n, "wedge of maps on different spaces");
        let n = self.n;
        let src = self.src + other.src;
        let tgt = self.tgt + other.tgt;
        let cols: Vec<Vec<Rational>> = space(n)
            .masks(src)
            .iter()
            .map(|&m| {
                let mut acc = ExtElem::zero(n);
                for a in submasks(m) {
                    if a.count_ones() as usize != self.src {
                        continue;
                    }
                    let b = m & !a;
                    let term = self.apply_mask(a).wedge(&other.apply_mask(b));
                    acc.add_scaled(&Rational::from_integer(wedge_sign(a, b).into()), &term);
                }
                acc.to_dense(tgt)
            })
            .collect();
        MultiMap {
            n,
            src,
            tgt,
            mat: RatMatrix::from_columns(binom(n, tgt), &cols),
            height: self.height + other.height,
        }
    }

    /// `self ∘ other`; heights add.
    pub fn compose(&self, other: &MultiMap) -> MultiMap {
        assert_eq!(self.src, other.tgt, "composition degree mismatch");
        MultiMap {
            n: self.n,
            src: other.src,
            tgt: self.tgt,
            mat: self.mat.matmul(&other.mat),
            height: self.height + other.height,
        }
    }
}
