//! Exact ranks of the iterated arrow maps `T_i^l` of a representation.
//!
//! When every nonzero arrow entry raises an integer grading by one, the
//! representation splits into chains `W_0 → W_1 → ⋯` of small blocks. On a
//! chain the ranks of all composites are read off a barcode computed modulo
//! a prime, which only bounds them from below. They are then certified:
//! `T^D = 0` is verified exactly, and for `0 < l < D` the Frobenius
//! inequality `rank T^l ≤ dim W_{L+l} - rank(T^{D-l} on W_{L+l})` (and its
//! mirror image) bounds each rank from above by modular data. Where the two
//! bounds meet the modular value is exact. Anything else, including
//! ungraded input, goes through exact elimination over Q(ζ).

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::cyclotomic::{CycNumber, CyclotomicField};
use crate::error::{Error, Result};
use crate::modp::{rank_mod, PrimeField};
use crate::quiverrep::{QuiverRep, SparseMatrix};

static CERTIFIED_CHAINS: AtomicUsize = AtomicUsize::new(0);
static EXACT_CHAINS: AtomicUsize = AtomicUsize::new(0);
static UNGRADED: AtomicUsize = AtomicUsize::new(0);

/// Process-wide counters of how rank computations were resolved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub certified_chains: usize,
    pub exact_chains: usize,
    pub ungraded: usize,
}

pub fn engine_stats() -> EngineStats {
    EngineStats {
        certified_chains: CERTIFIED_CHAINS.load(Ordering::Relaxed),
        exact_chains: EXACT_CHAINS.load(Ordering::Relaxed),
        ungraded: UNGRADED.load(Ordering::Relaxed),
    }
}

fn prime_field(order: u32) -> Arc<PrimeField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<PrimeField>>>> = OnceLock::new();
    let mut cache = CACHE
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    cache
        .entry(order)
        .or_insert_with(|| Arc::new(PrimeField::for_order(order)))
        .clone()
}

/// `rank T_i^l` for every vertex and every `l` below the nilpotency index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    nilpotency: usize,
    ranks: Vec<Vec<usize>>,
}

impl RankProfile {
    /// Rank of `T_i^l`; `l = 0` gives `dim V_i`.
    pub fn rank(&self, i: usize, l: usize) -> usize {
        self.ranks[i].get(l).copied().unwrap_or(0)
    }

    /// The least `D` with `T^D = 0` (0 for the zero representation).
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency
    }
}

/// Exact rank profile, using the graded fast path when available.
pub fn rank_profile(rep: &QuiverRep) -> Result<RankProfile> {
    match split_graded(rep) {
        Some(chains) => {
            let n = rep.n();
            let pf = prime_field(rep.field().order());
            let mut tables = Vec::with_capacity(chains.len());
            for chain in &chains {
                tables.push(chain_ranks(chain, rep.field(), &pf));
            }
            let nilpotency = tables.iter().map(|t| t.1).max().unwrap_or(0);
            let mut ranks: Vec<Vec<usize>> = (0..n)
                .map(|i| {
                    let mut row = vec![0; nilpotency + 1];
                    row[0] = rep.dims()[i];
                    row
                })
                .collect();
            for (chain, (table, _)) in chains.iter().zip(&tables) {
                for (t, row) in table.iter().enumerate() {
                    let vertex = (chain.base_level + t as i64).rem_euclid(n as i64) as usize;
                    for (l, r) in row.iter().enumerate().skip(1) {
                        ranks[vertex][l] += r;
                    }
                }
            }
            Ok(RankProfile { nilpotency, ranks })
        }
        None => {
            UNGRADED.fetch_add(1, Ordering::Relaxed);
            exact_profile(rep)
        }
    }
}

/// Rank profile by exact elimination only, ignoring any grading.
pub fn rank_profile_exact(rep: &QuiverRep) -> Result<RankProfile> {
    exact_profile(rep)
}

fn exact_profile(rep: &QuiverRep) -> Result<RankProfile> {
    let n = rep.n();
    let total = rep.total_dim();
    let field = rep.field();
    let pf = prime_field(field.order());
    let mut ranks: Vec<Vec<usize>> = rep.dims().iter().map(|&d| vec![d]).collect();
    if total == 0 {
        return Ok(RankProfile {
            nilpotency: 0,
            ranks,
        });
    }
    let mut current: Vec<SparseMatrix> = (0..n)
        .map(|i| SparseMatrix::identity(rep.dims()[i], field))
        .collect();
    for l in 1..=total {
        let mut any = false;
        for i in 0..n {
            current[i] = rep.map((i + l - 1) % n).mul(&current[i]);
            let r = exact_rank(&current[i], field, &pf);
            ranks[i].push(r);
            any |= r > 0;
        }
        if !any {
            return Ok(RankProfile {
                nilpotency: l,
                ranks,
            });
        }
    }
    let vertex = (0..n).find(|&i| ranks[i][total] > 0).unwrap_or(0);
    Err(Error::NotNilpotent {
        vertex,
        power: total,
    })
}

/// Rank over Q(ζ) of a sparse matrix: modular rank when it is already
/// maximal, exact Gaussian elimination otherwise.
pub fn exact_rank(m: &SparseMatrix, field: &Arc<CyclotomicField>, pf: &PrimeField) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 || m.is_zero() {
        return 0;
    }
    let mut dense = vec![vec![0u64; cols]; rows];
    let mut ok = true;
    'outer: for c in 0..cols {
        for (r, x) in m.column(c) {
            match pf.image(x) {
                Some(v) => dense[*r][c] = v,
                None => {
                    ok = false;
                    break 'outer;
                }
            }
        }
    }
    if ok && rank_mod(pf, &mut dense) == rows.min(cols) {
        return rows.min(cols);
    }
    rank_dense_exact(m.to_dense(field))
}

/// Gaussian elimination over Q(ζ); the pivot is the first nonzero entry in
/// column order.
pub fn rank_dense_exact(mut rows: Vec<Vec<CycNumber>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot_row[c]);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// One graded component: `maps[t][c]` lists `(row, value)` for the image of
/// basis vector `c` of level `t` in level `t + 1`.
struct Chain {
    base_level: i64,
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<(usize, CycNumber)>>>,
}

fn split_graded(rep: &QuiverRep) -> Option<Vec<Chain>> {
    let n = rep.n();
    let dims = rep.dims();
    let mut offsets = vec![0usize; n + 1];
    for i in 0..n {
        offsets[i + 1] = offsets[i] + dims[i];
    }
    let total = offsets[n];
    let vertex_of = |g: usize| offsets.partition_point(|&o| o <= g) - 1;
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut succs: Vec<Vec<(usize, CycNumber)>> = vec![Vec::new(); total];
    for (g, succ) in succs.iter_mut().enumerate() {
        let v = vertex_of(g);
        let next = (v + 1) % n;
        for (r, x) in rep.map(v).column(g - offsets[v]) {
            let h = offsets[next] + r;
            succ.push((h, x.clone()));
            preds[h].push(g);
        }
    }
    let mut level: Vec<Option<i64>> = vec![None; total];
    let mut component = vec![usize::MAX; total];
    let mut roots = Vec::new();
    for start in 0..total {
        if level[start].is_some() {
            continue;
        }
        let comp = roots.len();
        roots.push(start);
        level[start] = Some(vertex_of(start) as i64);
        component[start] = comp;
        let mut queue = VecDeque::from([start]);
        while let Some(g) = queue.pop_front() {
            let lg = level[g].expect("visited");
            let neighbours = succs[g]
                .iter()
                .map(|(h, _)| (*h, lg + 1))
                .chain(preds[g].iter().map(|&h| (h, lg - 1)));
            for (h, want) in neighbours {
                match level[h] {
                    Some(lh) if lh != want => return None,
                    Some(_) => {}
                    None => {
                        level[h] = Some(want);
                        component[h] = comp;
                        queue.push_back(h);
                    }
                }
            }
        }
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); roots.len()];
    for g in 0..total {
        members[component[g]].push(g);
    }
    let mut position = vec![0usize; total];
    let mut chains = Vec::with_capacity(members.len());
    for nodes in members {
        let lo = nodes.iter().map(|&g| level[g].unwrap()).min().unwrap();
        let hi = nodes.iter().map(|&g| level[g].unwrap()).max().unwrap();
        let height = (hi - lo + 1) as usize;
        let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); height];
        for &g in &nodes {
            let t = (level[g].unwrap() - lo) as usize;
            position[g] = by_level[t].len();
            by_level[t].push(g);
        }
        let maps = by_level[..height - 1]
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|&g| {
                        succs[g]
                            .iter()
                            .map(|(h, x)| (position[*h], x.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        chains.push(Chain {
            base_level: lo,
            dims: by_level.iter().map(Vec::len).collect(),
            maps,
        });
    }
    Some(chains)
}

/// `table[t][l]` = rank of the composite from level `t` to `t + l`, for
/// `l` below the chain's nilpotency index, together with that index.
fn chain_ranks(
    chain: &Chain,
    field: &Arc<CyclotomicField>,
    pf: &PrimeField,
) -> (Vec<Vec<usize>>, usize) {
    if let Some(result) = certified_chain_ranks(chain, field, pf) {
        CERTIFIED_CHAINS.fetch_add(1, Ordering::Relaxed);
        return result;
    }
    EXACT_CHAINS.fetch_add(1, Ordering::Relaxed);
    exact_chain_ranks(chain, field, pf)
}

fn certified_chain_ranks(
    chain: &Chain,
    field: &Arc<CyclotomicField>,
    pf: &PrimeField,
) -> Option<(Vec<Vec<usize>>, usize)> {
    let mut maps_mod = Vec::with_capacity(chain.maps.len());
    for layer in &chain.maps {
        let mut out = Vec::with_capacity(layer.len());
        for column in layer {
            let mut col = Vec::with_capacity(column.len());
            for (r, x) in column {
                col.push((*r, pf.image(x)?));
            }
            out.push(col);
        }
        maps_mod.push(out);
    }
    let bars = barcode(&chain.dims, &maps_mod, pf);
    let height = chain.dims.len();
    let nilpotency = bars.iter().map(|(b, e)| e - b + 1).max().unwrap_or(0);
    let mut table = vec![vec![0usize; nilpotency]; height];
    for &(b, e) in &bars {
        for (t, row) in table.iter_mut().enumerate().take(e + 1).skip(b) {
            for slot in row.iter_mut().take(e - t + 1) {
                *slot += 1;
            }
        }
    }
    if !certify_nilpotent(chain, nilpotency, field) {
        return None;
    }
    let top = height - 1;
    let get = |t: usize, l: usize| if l < nilpotency { table[t][l] } else { 0 };
    for t in 0..height {
        for l in 1..nilpotency {
            if t + l > top {
                break;
            }
            let mut upper = chain.dims[t].min(chain.dims[t + l]);
            if t + nilpotency <= top {
                upper = upper.min(chain.dims[t + l] - get(t + l, nilpotency - l));
            }
            if t + l >= nilpotency {
                upper = upper.min(chain.dims[t] - get(t + l - nilpotency, nilpotency - l));
            }
            if table[t][l] != upper {
                return None;
            }
        }
    }
    Some((table, nilpotency))
}

/// Interval decomposition of a chain over F_p by the elder rule; returns
/// `(birth, death)` level pairs, both inclusive.
fn barcode(dims: &[usize], maps: &[Vec<Vec<(usize, u64)>>], pf: &PrimeField) -> Vec<(usize, usize)> {
    let top = dims.len() - 1;
    let mut bars = Vec::new();
    let mut alive: Vec<(usize, Vec<u64>)> = (0..dims[0])
        .map(|c| {
            let mut v = vec![0u64; dims[0]];
            v[c] = 1;
            (0, v)
        })
        .collect();
    for t in 0..top {
        let next = dims[t + 1];
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::with_capacity(next);
        let mut survivors = Vec::with_capacity(next);
        for (birth, v) in alive {
            let mut w = vec![0u64; next];
            for (c, &x) in v.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for &(r, y) in &maps[t][c] {
                    w[r] = pf.add(w[r], pf.mul(x, y));
                }
            }
            match reduce(&mut w, &pivots, pf) {
                Some(p) => {
                    pivots.push((p, w.clone()));
                    survivors.push((birth, w));
                }
                None => bars.push((birth, t)),
            }
        }
        for c in 0..next {
            if pivots.len() == next {
                break;
            }
            let mut w = vec![0u64; next];
            w[c] = 1;
            if let Some(p) = reduce(&mut w, &pivots, pf) {
                pivots.push((p, w.clone()));
                survivors.push((t + 1, w));
            }
        }
        alive = survivors;
    }
    bars.extend(alive.into_iter().map(|(birth, _)| (birth, top)));
    bars
}

/// Reduces `w` against normalized pivots; on a nonzero remainder, normalizes
/// it and returns its pivot index.
fn reduce(w: &mut [u64], pivots: &[(usize, Vec<u64>)], pf: &PrimeField) -> Option<usize> {
    for (p, row) in pivots {
        let f = w[*p];
        if f == 0 {
            continue;
        }
        for (x, &y) in w.iter_mut().zip(row) {
            if y != 0 {
                *x = pf.sub(*x, pf.mul(f, y));
            }
        }
    }
    let p = w.iter().position(|&x| x != 0)?;
    let inv = pf.inv(w[p]);
    for x in w.iter_mut() {
        *x = pf.mul(*x, inv);
    }
    Some(p)
}

/// Exact check that every composite of `power` consecutive maps vanishes.
fn certify_nilpotent(chain: &Chain, power: usize, field: &Arc<CyclotomicField>) -> bool {
    let height = chain.dims.len();
    if power == 0 || power >= height {
        return power >= height;
    }
    let lifted: Option<Vec<Vec<Vec<(usize, bool, usize)>>>> = chain
        .maps
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(r, x)| x.as_unit().map(|(neg, e)| (*r, neg, e as usize)))
                        .collect()
                })
                .collect()
        })
        .collect();
    match lifted {
        Some(lifted) if lifted_bound_ok(chain, &lifted, power) => {
            nilpotent_lifted(chain, &lifted, power, field)
        }
        _ => nilpotent_exact(chain, power, field),
    }
}

fn lifted_bound_ok(chain: &Chain, lifted: &[Vec<Vec<(usize, bool, usize)>>], power: usize) -> bool {
    let row_nnz: Vec<f64> = lifted
        .iter()
        .zip(&chain.dims[1..])
        .map(|(layer, &rows)| {
            let mut counts = vec![0usize; rows];
            for col in layer {
                for (r, _, _) in col {
                    counts[*r] += 1;
                }
            }
            counts.into_iter().max().unwrap_or(0).max(1) as f64
        })
        .collect();
    row_nnz.windows(power).all(|w| w.iter().product::<f64>() < 2f64.powi(60))
}

/// Propagates each basis vector through `power` maps in Z[x]/(x^N - 1),
/// where every entry ±ζ^e acts as a signed cyclic shift, then tests the
/// results for divisibility by Φ_N.
fn nilpotent_lifted(
    chain: &Chain,
    lifted: &[Vec<Vec<(usize, bool, usize)>>],
    power: usize,
    field: &Arc<CyclotomicField>,
) -> bool {
    let order = field.order() as usize;
    let height = chain.dims.len();
    for start in 0..height - power {
        for c in 0..chain.dims[start] {
            let mut cur = vec![0i64; chain.dims[start] * order];
            cur[c * order] = 1;
            let mut live = vec![false; chain.dims[start]];
            live[c] = true;
            for (t, layer) in lifted.iter().enumerate().skip(start).take(power) {
                let rows = chain.dims[t + 1];
                let mut next = vec![0i64; rows * order];
                let mut next_live = vec![false; rows];
                for (src, col) in layer.iter().enumerate() {
                    if !live[src] {
                        continue;
                    }
                    let input = &cur[src * order..(src + 1) * order];
                    for &(r, neg, e) in col {
                        next_live[r] = true;
                        let out = &mut next[r * order..(r + 1) * order];
                        let (lo, hi) = input.split_at(order - e);
                        if neg {
                            out[e..].iter_mut().zip(lo).for_each(|(o, x)| *o -= x);
                            out[..e].iter_mut().zip(hi).for_each(|(o, x)| *o -= x);
                        } else {
                            out[e..].iter_mut().zip(lo).for_each(|(o, x)| *o += x);
                            out[..e].iter_mut().zip(hi).for_each(|(o, x)| *o += x);
                        }
                    }
                }
                cur = next;
                live = next_live;
            }
            for (r, is_live) in live.iter().enumerate() {
                if *is_live && !vanishes_mod_cyclotomic(&cur[r * order..(r + 1) * order], field) {
                    return false;
                }
            }
        }
    }
    true
}

fn vanishes_mod_cyclotomic(poly: &[i64], field: &CyclotomicField) -> bool {
    if poly.iter().all(|&c| c == 0) {
        return true;
    }
    let mut acc = vec![0i128; field.degree()];
    for (t, &c) in poly.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (a, &p) in acc.iter_mut().zip(field.power_coeffs(t as i64)) {
            *a += c as i128 * p as i128;
        }
    }
    acc.iter().all(|&a| a == 0)
}

fn nilpotent_exact(chain: &Chain, power: usize, field: &Arc<CyclotomicField>) -> bool {
    let height = chain.dims.len();
    for start in 0..height - power {
        for c in 0..chain.dims[start] {
            let mut cur: BTreeMap<usize, CycNumber> = BTreeMap::from([(c, CycNumber::one(field))]);
            for layer in chain.maps.iter().skip(start).take(power) {
                cur = apply_exact(layer, &cur);
            }
            if !cur.is_empty() {
                return false;
            }
        }
    }
    true
}

fn apply_exact(
    layer: &[Vec<(usize, CycNumber)>],
    v: &BTreeMap<usize, CycNumber>,
) -> BTreeMap<usize, CycNumber> {
    let mut out: BTreeMap<usize, CycNumber> = BTreeMap::new();
    for (src, x) in v {
        for (r, y) in &layer[*src] {
            let prod = x * y;
            match out.get_mut(r) {
                Some(acc) => *acc = &*acc + &prod,
                None => {
                    out.insert(*r, prod);
                }
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

fn exact_chain_ranks(
    chain: &Chain,
    field: &Arc<CyclotomicField>,
    pf: &PrimeField,
) -> (Vec<Vec<usize>>, usize) {
    let height = chain.dims.len();
    let mut table: Vec<Vec<usize>> = Vec::with_capacity(height);
    let mut nilpotency = 0;
    for start in 0..height {
        let mut row = vec![chain.dims[start]];
        let mut vectors: Vec<BTreeMap<usize, CycNumber>> = (0..chain.dims[start])
            .map(|c| BTreeMap::from([(c, CycNumber::one(field))]))
            .collect();
        for t in start..height - 1 {
            vectors = vectors
                .iter()
                .map(|v| apply_exact(&chain.maps[t], v))
                .collect();
            let mut m = SparseMatrix::zero(chain.dims[t + 1], vectors.len());
            for (c, v) in vectors.iter().enumerate() {
                for (r, x) in v {
                    m.add_entry(*r, c, x.clone());
                }
            }
            let r = exact_rank(&m, field, pf);
            if r == 0 {
                break;
            }
            row.push(r);
        }
        nilpotency = nilpotency.max(row.len());
        table.push(row);
    }
    for row in &mut table {
        row.resize(nilpotency, 0);
    }
    (table, nilpotency)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majid::validate_params;
    use crate::quiverrep::{direct_sum, string_module, tensor_rep, IndecompClass};

    #[test]
    fn single_string_profile() {
        let v = string_module(3, 1, 4);
        let p = rank_profile(&v).unwrap();
        assert_eq!(p.nilpotency_index(), 5);
        // basis vectors sit at vertices 1,2,0,1,2
        assert_eq!(p.rank(1, 0), 2);
        assert_eq!(p.rank(1, 1), 2);
        assert_eq!(p.rank(1, 3), 1);
        assert_eq!(p.rank(1, 4), 1);
        assert_eq!(p.rank(2, 3), 1);
        assert_eq!(p.rank(2, 4), 0);
        assert_eq!(p, rank_profile_exact(&v).unwrap());
    }

    #[test]
    fn graded_and_exact_paths_agree_on_tensor_products() {
        for (n, s, k) in [(2, 1, 1), (3, 1, 1), (3, 0, 3), (3, 2, 8)] {
            let params = validate_params(n, s, k).unwrap();
            for a in IndecompClass::all(&params).into_iter().step_by(2) {
                for b in IndecompClass::all(&params).into_iter().step_by(3) {
                    let r = tensor_rep(a, b, &params).unwrap();
                    assert_eq!(
                        rank_profile(&r).unwrap(),
                        rank_profile_exact(&r).unwrap(),
                        "{params:?} {a} {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn sums_split_into_chains() {
        let a = string_module(2, 0, 3);
        let b = string_module(2, 1, 1);
        let sum = direct_sum(&a, &b).unwrap();
        let chains = split_graded(&sum).unwrap();
        assert_eq!(chains.len(), 2);
        assert_eq!(rank_profile(&sum).unwrap(), rank_profile_exact(&sum).unwrap());
    }

    #[test]
    fn barcode_of_a_chain() {
        let pf = PrimeField::for_order(4);
        // W0 (dim 2) -> W1 (dim 2) -> W2 (dim 1), first map rank 1
        let maps = vec![
            vec![vec![(0, 1)], vec![(0, 3)]],
            vec![vec![(0, 1)], vec![]],
        ];
        let mut bars = barcode(&[2, 2, 1], &maps, &pf);
        bars.sort();
        assert_eq!(bars, vec![(0, 0), (0, 2), (1, 1)]);
    }

    #[test]
    fn lifted_nilpotency_detects_cancellation() {
        // ζ_4 and ζ_4^3 = -ζ_4 cancel along two parallel paths.
        let field = CyclotomicField::get(4);
        let z = CycNumber::root(&field, 1);
        let z3 = CycNumber::root(&field, 3);
        let one = CycNumber::one(&field);
        let chain = Chain {
            base_level: 0,
            dims: vec![1, 2, 1],
            maps: vec![
                vec![vec![(0, one.clone()), (1, one.clone())]],
                vec![vec![(0, z)], vec![(0, z3)]],
            ],
        };
        assert!(certify_nilpotent(&chain, 2, &field));
        let chain_bad = Chain {
            base_level: 0,
            dims: vec![1, 2, 1],
            maps: vec![
                vec![vec![(0, one.clone()), (1, one.clone())]],
                vec![vec![(0, one.clone())], vec![(0, one)]],
            ],
        };
        assert!(!certify_nilpotent(&chain_bad, 2, &field));
    }

    #[test]
    fn ungraded_input_uses_exact_elimination() {
        // T v0 = w0 + w1, T w0 = v1, T v1 = w1, T w1 = 0 on Z_2.
        let field = CyclotomicField::get(4);
        let one = CycNumber::one(&field);
        let zero = CycNumber::zero(&field);
        let t0 = SparseMatrix::from_dense(
            &[vec![one.clone(), zero.clone()], vec![one.clone(), one.clone()]],
            2,
        )
        .unwrap();
        let t1 = SparseMatrix::from_dense(&[vec![zero.clone(), zero.clone()], vec![one, zero]], 2)
            .unwrap();
        let rep = QuiverRep::new(2, vec![2, 2], vec![t0, t1]).unwrap();
        assert!(split_graded(&rep).is_none());
        let p = rank_profile(&rep).unwrap();
        let got: Vec<Vec<usize>> = (0..2).map(|i| (0..5).map(|l| p.rank(i, l)).collect()).collect();
        assert_eq!(got, vec![vec![2, 2, 1, 1, 0], vec![2, 1, 1, 0, 0]]);
        assert_eq!(p.nilpotency_index(), 4);
    }
}
