//! The algebra document: parsing with located errors and canonical emission.

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use super::json::{self, Node};
use crate::error::{Error, Result};
use crate::exterior::{binom, mask_elems, space};
use crate::hom::{default_labels, HomLieAlgebra, HomLieBialgebra, Representation};
use crate::linalg::{RatMatrix, Rational};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBlock {
    pub dim: usize,
    /// ρ(e_i) for each basis vector of the algebra.
    pub action: Vec<RatMatrix>,
    pub beta: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationTerm {
    pub bracket: RatMatrix,
    pub alpha: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub format_version: u64,
    pub dim: usize,
    pub basis: Vec<String>,
    /// n × C(n,2), column (i,j) is [e_i, e_j].
    pub bracket: RatMatrix,
    pub alpha: RatMatrix,
    /// C(n,2) × n, column k is δ(e_k).
    pub cobracket: Option<RatMatrix>,
    pub beta: Option<RatMatrix>,
    pub module: Option<ModuleBlock>,
    /// Orders 1..N of a truncated deformation.
    pub deformation: Vec<DeformationTerm>,
}

fn err(location: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.to_owned(),
        message: message.into(),
    }
}

fn child(loc: &str, key: &str) -> String {
    format!("{loc}.\"{key}\"")
}

fn item(loc: &str, i: usize) -> String {
    format!("{loc}[{i}]")
}

pub fn parse_rational_str(s: &str, loc: &str) -> Result<Rational> {
    let bad = || err(loc, format!("malformed rational \"{s}\""));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let int = |t: &str, signed: bool| -> Result<num_bigint::BigInt> {
        let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    let p = int(num, true)?;
    let q = match den {
        Some(q) => int(q, false)?,
        None => num_bigint::BigInt::one(),
    };
    if q.is_zero() {
        return Err(err(loc, format!("zero denominator in \"{s}\"")));
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational(node: &Node, loc: &str) -> Result<Rational> {
    match node {
        Node::Str(s) => parse_rational_str(s, loc),
        Node::Int(i) => Ok(Rational::from_integer((*i).into())),
        other => Err(err(loc, format!("expected a rational string, found {}", other.kind()))),
    }
}

fn count(node: &Node, loc: &str) -> Result<usize> {
    match node {
        Node::Int(i) if *i >= 0 => usize::try_from(*i).map_err(|_| err(loc, "number too large")),
        other => Err(err(loc, format!("expected a non-negative integer, found {}", other.kind()))),
    }
}

fn object<'a>(node: &'a Node, loc: &str) -> Result<&'a [(String, Node)]> {
    match node {
        Node::Object(e) => Ok(e),
        other => Err(err(loc, format!("expected an object, found {}", other.kind()))),
    }
}

fn array<'a>(node: &'a Node, loc: &str) -> Result<&'a [Node]> {
    match node {
        Node::Array(a) => Ok(a),
        other => Err(err(loc, format!("expected an array, found {}", other.kind()))),
    }
}

pub fn parse_matrix(node: &Node, rows: usize, cols: usize, loc: &str) -> Result<RatMatrix> {
    let r = array(node, loc)?;
    if r.len() != rows {
        return Err(err(loc, format!("expected {rows} rows, found {}", r.len())));
    }
    let mut m = RatMatrix::zeros(rows, cols);
    for (i, row) in r.iter().enumerate() {
        let rl = item(loc, i);
        let entries = array(row, &rl)?;
        if entries.len() != cols {
            return Err(err(&rl, format!("expected {cols} entries, found {}", entries.len())));
        }
        for (j, e) in entries.iter().enumerate() {
            m[(i, j)] = rational(e, &item(&rl, j))?;
        }
    }
    Ok(m)
}

/// A 1-based index "k" into a basis of size n, returned 0-based.
fn index_key(key: &str, n: usize, loc: &str) -> Result<usize> {
    let k: usize = key.trim().parse().map_err(|_| err(loc, format!("malformed index \"{key}\"")))?;
    if k == 0 || k > n {
        return Err(err(loc, format!("index {k} out of range 1..{n}")));
    }
    Ok(k - 1)
}

/// "i,j" with 1 ≤ i < j ≤ n, returned as the column of e_i∧e_j.
fn pair_key(key: &str, n: usize, loc: &str) -> Result<usize> {
    let Some((a, b)) = key.split_once(',') else {
        return Err(err(loc, format!("malformed pair \"{key}\", expected \"i,j\"")));
    };
    let (i, j) = (index_key(a, n, loc)?, index_key(b, n, loc)?);
    if i >= j {
        return Err(err(loc, format!("pair \"{key}\" must have i < j")));
    }
    Ok(space(n).index_of((1 << i) | (1 << j)))
}

fn pair_label(n: usize, col: usize) -> String {
    let e = mask_elems(space(n).masks(2)[col]);
    format!("{},{}", e[0] + 1, e[1] + 1)
}

/// Keys that differ as text but name the same index, such as "1,2" and "1, 2".
#[derive(Default)]
struct Seen(Vec<usize>);

impl Seen {
    fn insert(&mut self, idx: usize, key: &str, loc: &str) -> Result<usize> {
        if self.0.contains(&idx) {
            return Err(err(loc, format!("duplicate key \"{key}\"")));
        }
        self.0.push(idx);
        Ok(idx)
    }
}

fn parse_bracket(node: &Node, n: usize, loc: &str) -> Result<RatMatrix> {
    let mut m = RatMatrix::zeros(n, binom(n, 2));
    let mut cols = Seen::default();
    for (key, coeffs) in object(node, loc)? {
        let kl = child(loc, key);
        let col = cols.insert(pair_key(key, n, &kl)?, key, &kl)?;
        let mut rows = Seen::default();
        for (k, c) in object(coeffs, &kl)? {
            let cl = child(&kl, k);
            let r = rows.insert(index_key(k, n, &cl)?, k, &cl)?;
            m[(r, col)] = rational(c, &cl)?;
        }
    }
    Ok(m)
}

fn parse_cobracket(node: &Node, n: usize, loc: &str) -> Result<RatMatrix> {
    let mut m = RatMatrix::zeros(binom(n, 2), n);
    let mut cols = Seen::default();
    for (key, coeffs) in object(node, loc)? {
        let kl = child(loc, key);
        let col = cols.insert(index_key(key, n, &kl)?, key, &kl)?;
        let mut rows = Seen::default();
        for (p, c) in object(coeffs, &kl)? {
            let cl = child(&kl, p);
            let r = rows.insert(pair_key(p, n, &cl)?, p, &cl)?;
            m[(r, col)] = rational(c, &cl)?;
        }
    }
    Ok(m)
}

fn bracket_value(m: &RatMatrix, n: usize) -> Value {
    let mut out = Map::new();
    for col in 0..m.cols() {
        let mut coeffs = Map::new();
        for r in 0..n {
            if !m[(r, col)].is_zero() {
                coeffs.insert((r + 1).to_string(), Value::String(format_rational(&m[(r, col)])));
            }
        }
        if !coeffs.is_empty() {
            out.insert(pair_label(n, col), Value::Object(coeffs));
        }
    }
    Value::Object(out)
}

fn cobracket_value(m: &RatMatrix, n: usize) -> Value {
    let mut out = Map::new();
    for k in 0..n {
        let mut coeffs = Map::new();
        for p in 0..m.rows() {
            if !m[(p, k)].is_zero() {
                coeffs.insert(pair_label(n, p), Value::String(format_rational(&m[(p, k)])));
            }
        }
        if !coeffs.is_empty() {
            out.insert((k + 1).to_string(), Value::Object(coeffs));
        }
    }
    Value::Object(out)
}

pub fn matrix_value(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(format_rational(x))).collect())).collect())
}

fn check_keys(entries: &[(String, Node)], allowed: &[&str], loc: &str) -> Result<()> {
    match entries.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        Some((k, _)) => Err(err(&child(loc, k), format!("unknown field \"{k}\""))),
        None => Ok(()),
    }
}

fn parse_module(node: &Node, n: usize, loc: &str) -> Result<ModuleBlock> {
    let entries = object(node, loc)?;
    check_keys(entries, &["dim", "action", "beta"], loc)?;
    let dim = count(node.get("dim").ok_or_else(|| err(loc, "missing field \"dim\""))?, &child(loc, "dim"))?;
    let al = child(loc, "action");
    let action = array(node.get("action").ok_or_else(|| err(loc, "missing field \"action\""))?, &al)?;
    if action.len() != n {
        return Err(err(&al, format!("expected {n} matrices, one per basis vector, found {}", action.len())));
    }
    let action = action.iter().enumerate().map(|(i, a)| parse_matrix(a, dim, dim, &item(&al, i))).collect::<Result<_>>()?;
    let beta = match node.get("beta") {
        Some(b) => parse_matrix(b, dim, dim, &child(loc, "beta"))?,
        None => RatMatrix::identity(dim),
    };
    Ok(ModuleBlock { dim, action, beta })
}

fn parse_deformation(node: &Node, n: usize, loc: &str) -> Result<Vec<DeformationTerm>> {
    let terms = array(node, loc)?;
    let mut out: Vec<Option<DeformationTerm>> = vec![None; terms.len()];
    for (i, t) in terms.iter().enumerate() {
        let tl = item(loc, i);
        check_keys(object(t, &tl)?, &["order", "bracket", "alpha"], &tl)?;
        let ol = child(&tl, "order");
        let order = count(t.get("order").ok_or_else(|| err(&tl, "missing field \"order\""))?, &ol)?;
        if order == 0 || order > terms.len() {
            return Err(err(&ol, format!("order {order} out of range 1..{}", terms.len())));
        }
        if out[order - 1].is_some() {
            return Err(err(&ol, format!("duplicate order {order}")));
        }
        let bracket = match t.get("bracket") {
            Some(b) => parse_bracket(b, n, &child(&tl, "bracket"))?,
            None => RatMatrix::zeros(n, binom(n, 2)),
        };
        let alpha = match t.get("alpha") {
            Some(a) => parse_matrix(a, n, n, &child(&tl, "alpha"))?,
            None => RatMatrix::zeros(n, n),
        };
        out[order - 1] = Some(DeformationTerm { bracket, alpha });
    }
    Ok(out.into_iter().map(|t| t.expect("orders are a permutation")).collect())
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_node(&json::parse(text)?)
    }

    pub fn from_node(root: &Node) -> Result<Self> {
        let loc = "$";
        let entries = object(root, loc)?;
        check_keys(entries, &["format_version", "dim", "basis", "bracket", "alpha", "cobracket", "beta", "module", "deformation"], loc)?;
        let format_version = match root.get("format_version") {
            Some(v) => count(v, &child(loc, "format_version"))? as u64,
            None => return Err(err(loc, "missing field \"format_version\"")),
        };
        if format_version != FORMAT_VERSION {
            return Err(err(&child(loc, "format_version"), format!("unsupported format version {format_version}")));
        }
        let dl = child(loc, "dim");
        let dim = count(root.get("dim").ok_or_else(|| err(loc, "missing field \"dim\""))?, &dl)?;
        if dim == 0 || dim > crate::exterior::MAX_DIM {
            return Err(err(&dl, format!("dimension must be in 1..{}", crate::exterior::MAX_DIM)));
        }
        let basis = match root.get("basis") {
            Some(b) => {
                let bl = child(loc, "basis");
                let names = array(b, &bl)?;
                if names.len() != dim {
                    return Err(err(&bl, format!("expected {dim} labels, found {}", names.len())));
                }
                let mut out: Vec<String> = Vec::new();
                for (i, s) in names.iter().enumerate() {
                    match s {
                        Node::Str(s) if out.contains(s) => return Err(err(&item(&bl, i), format!("duplicate label \"{s}\""))),
                        Node::Str(s) => out.push(s.clone()),
                        other => return Err(err(&item(&bl, i), format!("expected a string, found {}", other.kind()))),
                    }
                }
                out
            }
            None => default_labels(dim),
        };
        let bracket = match root.get("bracket") {
            Some(b) => parse_bracket(b, dim, &child(loc, "bracket"))?,
            None => RatMatrix::zeros(dim, binom(dim, 2)),
        };
        let alpha = match root.get("alpha") {
            Some(a) => parse_matrix(a, dim, dim, &child(loc, "alpha"))?,
            None => RatMatrix::identity(dim),
        };
        let cobracket = root.get("cobracket").map(|c| parse_cobracket(c, dim, &child(loc, "cobracket"))).transpose()?;
        let beta = root.get("beta").map(|b| parse_matrix(b, dim, dim, &child(loc, "beta"))).transpose()?;
        let module = root.get("module").map(|m| parse_module(m, dim, &child(loc, "module"))).transpose()?;
        let deformation = match root.get("deformation") {
            Some(d) => parse_deformation(d, dim, &child(loc, "deformation"))?,
            None => Vec::new(),
        };
        Ok(AlgebraDocument {
            format_version,
            dim,
            basis,
            bracket,
            alpha,
            cobracket,
            beta,
            module,
            deformation,
        })
    }

    pub fn from_algebra(g: &HomLieAlgebra) -> Self {
        AlgebraDocument {
            format_version: FORMAT_VERSION,
            dim: g.n,
            basis: g.labels.clone(),
            bracket: g.bracket.clone(),
            alpha: g.alpha.clone(),
            cobracket: None,
            beta: None,
            module: None,
            deformation: Vec::new(),
        }
    }

    pub fn from_bialgebra(b: &HomLieBialgebra) -> Self {
        AlgebraDocument {
            cobracket: Some(b.cobracket.clone()),
            beta: Some(b.beta.clone()),
            ..Self::from_algebra(&b.alg)
        }
    }

    pub fn algebra(&self) -> Result<HomLieAlgebra> {
        Ok(HomLieAlgebra::new(self.bracket.clone(), self.alpha.clone())?.with_labels(self.basis.clone()))
    }

    /// The bialgebra when a cobracket is present; β defaults to α.
    pub fn bialgebra(&self) -> Result<Option<HomLieBialgebra>> {
        let Some(c) = &self.cobracket else {
            return Ok(None);
        };
        let beta = self.beta.clone().unwrap_or_else(|| self.alpha.clone());
        HomLieBialgebra::new(self.algebra()?, c.clone(), beta).map(Some)
    }

    pub fn representation(&self) -> Option<Representation> {
        self.module.as_ref().map(|m| Representation {
            m: m.dim,
            action: m.action.clone(),
            beta: m.beta.clone(),
        })
    }

    pub fn to_value(&self) -> Value {
        let n = self.dim;
        let mut out = Map::new();
        out.insert("format_version".into(), json!(self.format_version));
        out.insert("dim".into(), json!(n));
        out.insert("basis".into(), json!(self.basis));
        out.insert("bracket".into(), bracket_value(&self.bracket, n));
        out.insert("alpha".into(), matrix_value(&self.alpha));
        if let Some(c) = &self.cobracket {
            out.insert("cobracket".into(), cobracket_value(c, n));
        }
        if let Some(b) = &self.beta {
            out.insert("beta".into(), matrix_value(b));
        }
        if let Some(m) = &self.module {
            out.insert(
                "module".into(),
                json!({
                    "dim": m.dim,
                    "action": m.action.iter().map(matrix_value).collect::<Vec<_>>(),
                    "beta": matrix_value(&m.beta),
                }),
            );
        }
        if !self.deformation.is_empty() {
            let terms = self
                .deformation
                .iter()
                .enumerate()
                .map(|(i, t)| json!({"order": i + 1, "bracket": bracket_value(&t.bracket, n), "alpha": matrix_value(&t.alpha)}))
                .collect();
            out.insert("deformation".into(), Value::Array(terms));
        }
        Value::Object(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("documents serialize")
    }
}

/// A square matrix file: either an array of rows or {"gamma": rows}.
pub fn parse_matrix_document(text: &str, n: usize) -> Result<RatMatrix> {
    let root = json::parse(text)?;
    match &root {
        Node::Object(entries) => {
            check_keys(entries, &["gamma"], "$")?;
            let g = root.get("gamma").ok_or_else(|| err("$", "missing field \"gamma\""))?;
            parse_matrix(g, n, n, "$.\"gamma\"")
        }
        _ => parse_matrix(&root, n, n, "$"),
    }
}

/// A sparse map {"i₁,…,i_k": {"r": "p/q"}} for a linear map Λᵏ → V given by its columns.
pub fn sparse_cochain(n: usize, k: usize, m: &RatMatrix) -> Value {
    let mut out = Map::new();
    for (col, &mask) in space(n).masks(k).iter().enumerate().take(m.cols()) {
        let mut coeffs = Map::new();
        for r in 0..m.rows() {
            if !m[(r, col)].is_zero() {
                coeffs.insert((r + 1).to_string(), Value::String(format_rational(&m[(r, col)])));
            }
        }
        if !coeffs.is_empty() {
            let key = mask_elems(mask).iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(",");
            out.insert(key, Value::Object(coeffs));
        }
    }
    Value::Object(out)
}
