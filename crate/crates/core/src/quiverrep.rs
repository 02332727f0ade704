//! Nilpotent representations of the cyclic quiver over Q(ζ_{n²}): string
//! modules, comodule structure maps, tensor products and the rank-based
//! decomposition oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNumber, CyclotomicField};
use crate::error::{Error, Result};
use crate::majid::{coproduct, MajidAlgebra, Params, PathElement};
use crate::rank::rank_profile;

/// Label of the string module V(i, e): `e + 1` basis vectors starting at
/// vertex `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndecompClass {
    pub i: usize,
    pub e: usize,
}

impl IndecompClass {
    /// Normalizes `i` mod n and checks `e < d`.
    pub fn new(i: usize, e: usize, params: &Params) -> Result<Self> {
        if e >= params.d() {
            return Err(Error::InvalidClass {
                i,
                e,
                n: params.n(),
                d: params.d(),
            });
        }
        Ok(IndecompClass { i: i % params.n(), e })
    }

    /// All `n * d` classes ordered by `(i, e)`.
    pub fn all(params: &Params) -> Vec<IndecompClass> {
        let d = params.d();
        (0..params.n())
            .flat_map(|i| (0..d).map(move |e| IndecompClass { i, e }))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.e + 1
    }
}

impl fmt::Display for IndecompClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({},{})", self.i, self.e)
    }
}

/// A multiset of string modules.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Decomposition {
    multiplicities: BTreeMap<IndecompClass, usize>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, c: IndecompClass, mult: usize) {
        if mult > 0 {
            *self.multiplicities.entry(c).or_insert(0) += mult;
        }
    }

    pub fn get(&self, c: &IndecompClass) -> usize {
        self.multiplicities.get(c).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndecompClass, &usize)> {
        self.multiplicities.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// Number of summands counted with multiplicity.
    pub fn count(&self) -> usize {
        self.multiplicities.values().sum()
    }

    pub fn total_dim(&self) -> usize {
        self.multiplicities.iter().map(|(c, m)| m * c.dim()).sum()
    }

    pub fn merge(&mut self, other: &Decomposition) {
        for (c, m) in &other.multiplicities {
            self.add(*c, *m);
        }
    }

    /// Number of summands V(i, ?) for each starting vertex i.
    pub fn counts_by_vertex(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for (c, m) in &self.multiplicities {
            out[c.i] += m;
        }
        out
    }
}

impl FromIterator<(IndecompClass, usize)> for Decomposition {
    fn from_iter<T: IntoIterator<Item = (IndecompClass, usize)>>(iter: T) -> Self {
        let mut out = Decomposition::new();
        for (c, m) in iter {
            out.add(c, m);
        }
        out
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, m) in &self.multiplicities {
            if !first {
                write!(f, " ⊕ ")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{m}*{c}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct SummandRepr {
    i: usize,
    e: usize,
    mult: usize,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            summands: Vec<SummandRepr>,
        }
        Repr {
            summands: self
                .multiplicities
                .iter()
                .map(|(c, m)| SummandRepr {
                    i: c.i,
                    e: c.e,
                    mult: *m,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Column-sparse matrix over Q(ζ): `columns[c]` lists `(row, value)` with
/// rows increasing and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, CycNumber)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_dense(rows: &[Vec<CycNumber>], ncols: usize) -> Result<Self> {
        let mut out = Self::zero(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {r} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    out.columns[c].push((r, x.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn identity(size: usize, field: &Arc<CyclotomicField>) -> Self {
        let mut out = Self::zero(size, size);
        for c in 0..size {
            out.columns[c].push((c, CycNumber::one(field)));
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, CycNumber)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Adds `value` at `(row, col)`.
    pub fn add_entry(&mut self, row: usize, col: usize, value: CycNumber) {
        assert!(row < self.rows && col < self.cols, "entry out of bounds");
        if value.is_zero() {
            return;
        }
        let column = &mut self.columns[col];
        match column.binary_search_by_key(&row, |(r, _)| *r) {
            Ok(pos) => {
                let sum = &column[pos].1 + &value;
                if sum.is_zero() {
                    column.remove(pos);
                } else {
                    column[pos].1 = sum;
                }
            }
            Err(pos) => column.insert(pos, (row, value)),
        }
    }

    pub fn get(&self, row: usize, col: usize, field: &Arc<CyclotomicField>) -> CycNumber {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(|| CycNumber::zero(field))
    }

    pub fn to_dense(&self, field: &Arc<CyclotomicField>) -> Vec<Vec<CycNumber>> {
        let mut out = vec![vec![CycNumber::zero(field); self.cols]; self.rows];
        for (c, column) in self.columns.iter().enumerate() {
            for (r, x) in column {
                out[*r][c] = x.clone();
            }
        }
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = SparseMatrix::zero(self.rows, rhs.cols);
        for (c, column) in rhs.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, CycNumber> = BTreeMap::new();
            for (k, y) in column {
                for (r, x) in &self.columns[*k] {
                    let prod = x * y;
                    match acc.get_mut(r) {
                        Some(v) => *v = &*v + &prod,
                        None => {
                            acc.insert(*r, prod);
                        }
                    }
                }
            }
            out.columns[c] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }
}

/// A representation of Z_n: a space per vertex and `maps[i]: V_i -> V_{i+1}`
/// (shape `dims[i+1] x dims[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    n: usize,
    field: Arc<CyclotomicField>,
    dims: Vec<usize>,
    maps: Vec<SparseMatrix>,
}

impl QuiverRep {
    pub fn new(n: usize, dims: Vec<usize>, maps: Vec<SparseMatrix>) -> Result<Self> {
        if n == 0 || dims.len() != n || maps.len() != n {
            return Err(Error::Shape(format!(
                "expected {n} vertex dimensions and {n} maps, got {} and {}",
                dims.len(),
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            let (rows, cols) = (dims[(i + 1) % n], dims[i]);
            if m.rows != rows || m.cols != cols {
                return Err(Error::Shape(format!(
                    "map at vertex {i} is {}x{}, expected {rows}x{cols}",
                    m.rows, m.cols
                )));
            }
        }
        Ok(QuiverRep {
            n,
            field: CyclotomicField::get((n * n) as u32),
            dims,
            maps,
        })
    }

    pub fn zero(n: usize) -> Self {
        QuiverRep::new(n, vec![0; n], vec![SparseMatrix::zero(0, 0); n]).expect("consistent shapes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[SparseMatrix] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &SparseMatrix {
        &self.maps[i % self.n]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The composite `T_{i+l-1} ⋯ T_i` (identity for `l = 0`).
    pub fn power_map(&self, i: usize, l: usize) -> SparseMatrix {
        let i = i % self.n;
        let mut acc = SparseMatrix::identity(self.dims[i], &self.field);
        for t in 0..l {
            acc = self.maps[(i + t) % self.n].mul(&acc);
        }
        acc
    }

    /// Applies an invertible change of basis `g[i]` at each vertex:
    /// `T_i ↦ g[i+1] T_i g[i]^{-1}`. The caller supplies both `g` and its
    /// inverse.
    pub fn conjugate(&self, g: &[SparseMatrix], g_inv: &[SparseMatrix]) -> Result<Self> {
        if g.len() != self.n || g_inv.len() != self.n {
            return Err(Error::Shape("one basis change per vertex required".into()));
        }
        let maps = (0..self.n)
            .map(|i| g[(i + 1) % self.n].mul(&self.maps[i].mul(&g_inv[i])))
            .collect();
        QuiverRep::new(self.n, self.dims.clone(), maps)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            dims: Vec<usize>,
            maps: Vec<Vec<Vec<Vec<String>>>>,
        }
        let maps = self
            .maps
            .iter()
            .map(|m| {
                m.to_dense(&self.field)
                    .iter()
                    .map(|row| row.iter().map(CycNumber::coeff_strings).collect())
                    .collect()
            })
            .collect();
        serde_json::to_string(&Repr {
            n: self.n,
            dims: self.dims.clone(),
            maps,
        })
        .expect("plain data serializes")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            dims: Vec<usize>,
            maps: Vec<Vec<Vec<Vec<String>>>>,
        }
        let repr: Repr = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        if repr.n == 0 || repr.dims.len() != repr.n || repr.maps.len() != repr.n {
            return Err(Error::Shape("n, dims and maps disagree".into()));
        }
        let field = CyclotomicField::get((repr.n * repr.n) as u32);
        let mut maps = Vec::with_capacity(repr.n);
        for (i, rows) in repr.maps.iter().enumerate() {
            let ncols = repr.dims[i];
            let dense = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| CycNumber::from_coeff_strings(&field, c))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(SparseMatrix::from_dense(&dense, ncols)?);
        }
        QuiverRep::new(repr.n, repr.dims, maps)
    }
}

/// The string module V(i, e): basis `v_0..v_e`, `v_m` at vertex `(i+m)'`,
/// arrows `v_m ↦ v_{m+1}`, `v_e ↦ 0`.
pub fn standard_indecomposable(c: IndecompClass, params: &Params) -> Result<QuiverRep> {
    let c = IndecompClass::new(c.i, c.e, params)?;
    Ok(string_module(params.n(), c.i, c.e))
}

/// V(i, e) without a bound on `e`.
pub fn string_module(n: usize, i: usize, e: usize) -> QuiverRep {
    let coaction = Coaction::string(n, i, e);
    coaction.to_rep(n)
}

/// One term `coeff * basis[target] ⊗ path` of a structure map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionTerm {
    pub target: usize,
    pub path: PathElement,
    pub coeff: CycNumber,
}

/// A right comodule structure map on a space with a labelled basis.
#[derive(Clone, Debug)]
pub struct Coaction {
    field: Arc<CyclotomicField>,
    /// Vertex carrying each basis vector.
    vertices: Vec<usize>,
    images: Vec<Vec<CoactionTerm>>,
}

impl Coaction {
    fn string(n: usize, i: usize, e: usize) -> Self {
        let field = CyclotomicField::get((n * n) as u32);
        let one = CycNumber::one(&field);
        let vertices = (0..=e).map(|m| (i + m) % n).collect();
        let images = (0..=e)
            .map(|m| {
                (m..=e)
                    .map(|x| CoactionTerm {
                        target: x,
                        path: PathElement {
                            i: (i + m) % n,
                            l: x - m,
                        },
                        coeff: one.clone(),
                    })
                    .collect()
            })
            .collect();
        Coaction {
            field,
            vertices,
            images,
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, b: usize) -> usize {
        self.vertices[b]
    }

    pub fn terms(&self, b: usize) -> &[CoactionTerm] {
        &self.images[b]
    }

    /// The representation read off the degree-one terms: `T(u)` is the sum
    /// of `coeff * target` over terms of `δ(u)` whose path has length 1.
    pub fn to_rep(&self, n: usize) -> QuiverRep {
        let mut dims = vec![0; n];
        let mut local = Vec::with_capacity(self.dim());
        for &v in &self.vertices {
            local.push(dims[v]);
            dims[v] += 1;
        }
        let mut maps: Vec<SparseMatrix> = (0..n)
            .map(|i| SparseMatrix::zero(dims[(i + 1) % n], dims[i]))
            .collect();
        for (b, terms) in self.images.iter().enumerate() {
            let v = self.vertices[b];
            for t in terms.iter().filter(|t| t.path.l == 1) {
                debug_assert_eq!(t.path.i, v);
                debug_assert_eq!(self.vertices[t.target], (v + 1) % n);
                maps[v].add_entry(local[t.target], local[b], t.coeff.clone());
            }
        }
        QuiverRep {
            n,
            field: self.field.clone(),
            dims,
            maps,
        }
    }

    /// Checks `(id ⊗ ε)δ = id` and the coassociativity axiom
    /// `(δ ⊗ id)δ = (id ⊗ Δ)δ` exactly on every basis vector. Returns the
    /// first failing basis index.
    pub fn check_axioms(&self, n: usize) -> std::result::Result<(), usize> {
        type Key = (usize, PathElement, PathElement);
        for b in 0..self.dim() {
            let mut counit: BTreeMap<usize, CycNumber> = BTreeMap::new();
            for t in self.images[b].iter().filter(|t| t.path.l == 0) {
                let e = counit
                    .entry(t.target)
                    .or_insert_with(|| CycNumber::zero(&self.field));
                *e = &*e + &t.coeff;
            }
            counit.retain(|_, c| !c.is_zero());
            if counit.len() != 1 || !counit.get(&b).is_some_and(CycNumber::is_one) {
                return Err(b);
            }
            let mut lhs: BTreeMap<Key, CycNumber> = BTreeMap::new();
            for t1 in &self.images[b] {
                for t2 in &self.images[t1.target] {
                    let e = lhs
                        .entry((t2.target, t2.path, t1.path))
                        .or_insert_with(|| CycNumber::zero(&self.field));
                    *e = &*e + &(&t1.coeff * &t2.coeff);
                }
            }
            let mut rhs: BTreeMap<Key, CycNumber> = BTreeMap::new();
            for t in &self.images[b] {
                for (p1, p2) in coproduct(t.path, n) {
                    let e = rhs
                        .entry((t.target, p1, p2))
                        .or_insert_with(|| CycNumber::zero(&self.field));
                    *e = &*e + &t.coeff;
                }
            }
            lhs.retain(|_, c| !c.is_zero());
            rhs.retain(|_, c| !c.is_zero());
            if lhs != rhs {
                return Err(b);
            }
        }
        Ok(())
    }
}

/// `δ(v_m) = Σ_{x=m}^{e} v_x ⊗ p_{(i+m)'}^{x-m}`.
pub fn coaction_indecomposable(c: IndecompClass, params: &Params) -> Result<Coaction> {
    let c = IndecompClass::new(c.i, c.e, params)?;
    Ok(Coaction::string(params.n(), c.i, c.e))
}

/// Index of `v_x ⊗ v_y` in the basis of V(i, e) ⊗ V(j, f) (row-major in x).
pub fn tensor_index(x: usize, y: usize, f: usize) -> usize {
    x * (f + 1) + y
}

/// Structure map of V(i, e) ⊗ V(j, f):
/// `δ(v_a ⊗ v_b) = Σ C v_x ⊗ v_y ⊗ p_{(i+a+j+b)'}^{x+y-a-b}` where `C` is
/// the structure constant of `p_{(i+a)'}^{x-a} · p_{(j+b)'}^{y-b}`. Terms of
/// path length `>= d` (whose constants vanish) are omitted, as are terms
/// beyond `max_degree` when given.
pub fn tensor_coaction(
    a: IndecompClass,
    b: IndecompClass,
    params: &Params,
    max_degree: Option<usize>,
) -> Result<Coaction> {
    let a = IndecompClass::new(a.i, a.e, params)?;
    let b = IndecompClass::new(b.i, b.e, params)?;
    let n = params.n();
    let d = params.d();
    let limit = max_degree.map_or(d - 1, |m| m.min(d - 1));
    let alg = MajidAlgebra::shared(params);
    let (e, f) = (a.e, b.e);
    let mut vertices = Vec::with_capacity((e + 1) * (f + 1));
    let mut images = Vec::with_capacity((e + 1) * (f + 1));
    for x0 in 0..=e {
        for y0 in 0..=f {
            vertices.push((a.i + b.i + x0 + y0) % n);
            let src = (a.i + b.i + x0 + y0) % n;
            let mut terms = Vec::new();
            for x in x0..=e {
                for y in y0..=f {
                    let deg = x + y - x0 - y0;
                    if deg > limit {
                        continue;
                    }
                    let coeff = alg.coefficient((a.i + x0) % n, x - x0, (b.i + y0) % n, y - y0);
                    if coeff.is_zero() {
                        continue;
                    }
                    terms.push(CoactionTerm {
                        target: tensor_index(x, y, f),
                        path: PathElement { i: src, l: deg },
                        coeff,
                    });
                }
            }
            images.push(terms);
        }
    }
    Ok(Coaction {
        field: params.field().clone(),
        vertices,
        images,
    })
}

/// The representation of V(i, e) ⊗ V(j, f), taken from the degree-one part
/// of [`tensor_coaction`].
pub fn tensor_rep(a: IndecompClass, b: IndecompClass, params: &Params) -> Result<QuiverRep> {
    Ok(tensor_coaction(a, b, params, Some(1))?.to_rep(params.n()))
}

/// Block-diagonal sum.
pub fn direct_sum(r1: &QuiverRep, r2: &QuiverRep) -> Result<QuiverRep> {
    if r1.n != r2.n {
        return Err(Error::Shape(format!(
            "cannot add representations of Z_{} and Z_{}",
            r1.n, r2.n
        )));
    }
    let n = r1.n;
    let dims: Vec<usize> = (0..n).map(|i| r1.dims[i] + r2.dims[i]).collect();
    let maps = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let mut m = SparseMatrix::zero(dims[j], dims[i]);
            for (c, column) in r1.maps[i].columns.iter().enumerate() {
                m.columns[c] = column.clone();
            }
            for (c, column) in r2.maps[i].columns.iter().enumerate() {
                m.columns[r1.dims[i] + c] = column
                    .iter()
                    .map(|(r, x)| (r1.dims[j] + r, x.clone()))
                    .collect();
            }
            m
        })
        .collect();
    QuiverRep::new(n, dims, maps)
}

/// Exact dimension of `ker T_i` at each vertex.
pub fn kernel_dims(r: &QuiverRep) -> Result<Vec<usize>> {
    let profile = rank_profile(r)?;
    Ok((0..r.n).map(|i| r.dims[i] - profile.rank(i, 1)).collect())
}

/// Multiplicity of every V(i, e) in `r`, from exact ranks of the iterated
/// arrow maps:
/// `m(i,e) = r(i,e) - r(i,e+1) - r(i-1,e+1) + r(i-1,e+2)`
/// with `r(i,l) = rank T_i^l` and `r(i,0) = dim V_i`.
pub fn decompose_oracle(r: &QuiverRep, d: usize) -> Result<Decomposition> {
    let profile = rank_profile(r)?;
    let n = r.n;
    if profile.nilpotency_index() > d {
        let vertex = (0..n).find(|&i| profile.rank(i, d) > 0).unwrap_or(0);
        return Err(Error::NotNilpotent { vertex, power: d });
    }
    let mut out = Decomposition::new();
    for i in 0..n {
        let prev = (i + n - 1) % n;
        for e in 0..d {
            let m = profile.rank(i, e) as i64 - profile.rank(i, e + 1) as i64
                - profile.rank(prev, e + 1) as i64
                + profile.rank(prev, e + 2) as i64;
            assert!(m >= 0, "rank data is inconsistent with a nilpotent representation");
            out.add(IndecompClass { i, e }, m as usize);
        }
    }
    Ok(out)
}
