//! Invariant suites run by `ptc verify` and the acceptance test. Each suite
//! counts the checks it performed and keeps the first failure in its
//! deterministic iteration order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::Result;
use crate::fusion::{count_n, summands_from_kernels, FusionContext};
use crate::greenring::{fibonacci_closed_form, fibonacci_poly, GreenElement, GreenRing, IntPoly2, NormalForm};
use crate::majid::{coproduct, counit, MajidAlgebra, Params, PathElement};
use crate::modp::Fingerprinter;
use crate::quiverrep::{
    coaction_indecomposable, decompose_oracle, direct_sum, kernel_dims, standard_indecomposable, tensor_coaction,
    tensor_rep, Decomposition, IndecompClass, QuiverRep,
};
use crate::sweep::{class_pairs, oracle_sweep, Execution};

/// Tensor products whose comodule axioms are checked exhaustively with
/// exact arithmetic up to this `d`; larger `d` uses a fingerprinted sample.
const EXACT_COMODULE_MAX_D: usize = 9;
const COMODULE_SAMPLE: usize = 4;
const ADDITIVITY_SAMPLES: usize = 12;
pub const DEFAULT_TRIPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Recorded for information only; never fails the run.
    pub informational: bool,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.informational || self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsReport {
    pub params: Params,
    pub suites: Vec<SuiteReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub global: Vec<SuiteReport>,
    pub sections: Vec<ParamsReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.global.iter().all(SuiteReport::passed)
            && self.sections.iter().all(|s| s.suites.iter().all(SuiteReport::passed))
    }

    /// The first failing suite with its parameter set, if any.
    pub fn first_failure(&self) -> Option<(Option<&Params>, &SuiteReport)> {
        self.global
            .iter()
            .find(|s| !s.passed())
            .map(|s| (None, s))
            .or_else(|| {
                self.sections
                    .iter()
                    .flat_map(|sec| sec.suites.iter().map(move |s| (Some(&sec.params), s)))
                    .find(|(_, s)| !s.passed())
            })
    }
}

struct Tally {
    name: &'static str,
    checked: u64,
    failed: u64,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            failed: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            checked: self.checked,
            failed: self.failed,
            counterexample: self.first,
            informational: false,
        }
    }
}

fn class(i: usize, e: usize) -> IndecompClass {
    IndecompClass { i, e }
}

fn binomial_u128(m: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, t| acc * (m - t) as u128 / (t + 1) as u128)
}

/// `count_n` against enumeration for every `n <= max_n`.
pub fn suite_count_n(max_n: usize) -> SuiteReport {
    let mut t = Tally::new("count-n");
    for n in 1..=max_n {
        for a in 0..n {
            for b in 0..n {
                let mut brute = vec![0usize; n];
                for x in 0..=a {
                    for y in 0..=b {
                        brute[(x + y) % n] += 1;
                    }
                }
                for (k, &want) in brute.iter().enumerate() {
                    let got = count_n(a, b, k, n).ok();
                    t.record(got == Some(want), || {
                        format!("count_n({a},{b},{k},{n}) = {got:?}, enumeration gives {want}")
                    });
                }
            }
        }
    }
    t.finish()
}

/// Recursion against closed form for `f_1 .. f_max`.
pub fn suite_fibonacci(max: usize) -> SuiteReport {
    let mut t = Tally::new("fibonacci");
    for i in 1..=max {
        let rec = fibonacci_poly(i);
        let closed = fibonacci_closed_form(i);
        t.record(rec.is_ok() && rec == closed, || format!("f_{i}: recursion {rec:?} vs closed form {closed:?}"));
    }
    t.finish()
}

/// ħ has order `d`, and every structure constant with `l + m >= d`
/// (`l, m < d`) is exactly zero.
pub fn suite_truncation(params: &Params) -> SuiteReport {
    let mut t = Tally::new("truncation");
    let d = params.d();
    let hbar = params.hbar();
    let mut power = CycNumber::one(params.field());
    for j in 1..=d {
        power = &power * &hbar;
        t.record(power.is_one() == (j == d), || format!("hbar^{j} is_one = {}", power.is_one()));
    }
    let alg = MajidAlgebra::shared(params);
    for i in 0..params.n() {
        for j in 0..params.n() {
            for l in 0..d {
                for m in d.saturating_sub(l)..d {
                    let c = alg.coefficient(i, l, j, m);
                    t.record(c.is_zero(), || format!("p_{i}^{l} * p_{j}^{m} has coefficient {c}"));
                }
            }
        }
    }
    t.finish()
}

/// Coassociativity and both counit laws on every basis path.
pub fn suite_coalgebra(params: &Params) -> SuiteReport {
    let mut t = Tally::new("coalgebra");
    let n = params.n();
    for p in PathElement::all(params) {
        let delta = coproduct(p, n);
        let mut left: Vec<(PathElement, PathElement, PathElement)> = delta
            .iter()
            .flat_map(|&(a, b)| coproduct(a, n).into_iter().map(move |(x, y)| (x, y, b)))
            .collect();
        let mut right: Vec<(PathElement, PathElement, PathElement)> = delta
            .iter()
            .flat_map(|&(a, b)| coproduct(b, n).into_iter().map(move |(x, y)| (a, x, y)))
            .collect();
        left.sort();
        right.sort();
        t.record(left == right, || format!("coassociativity fails on {p}"));
        let via_left: Vec<PathElement> = delta.iter().filter(|(a, _)| counit(*a) == 1).map(|(_, b)| *b).collect();
        let via_right: Vec<PathElement> = delta.iter().filter(|(_, b)| counit(*b) == 1).map(|(a, _)| *a).collect();
        t.record(via_left == [p] && via_right == [p], || format!("counit law fails on {p}"));
    }
    t.finish()
}

/// Fingerprints of every untruncated structure constant, indexed by
/// `[i][l][j][m]` flattened, together with the zero test.
struct ConstantTable {
    fp: Fingerprinter,
    n: usize,
    d: usize,
    table: Vec<Vec<u64>>,
}

impl ConstantTable {
    fn new(params: &Params) -> Self {
        let (n, d) = (params.n(), params.d());
        let fp = Fingerprinter::new(params.order() as u32);
        let alg = MajidAlgebra::shared(params);
        let binoms: Vec<Vec<Vec<u64>>> = (0..2 * d - 1)
            .map(|m| {
                (0..=m)
                    .map(|k| {
                        fp.images(alg.binomials().get(m, k).expect("within table"))
                            .expect("Gaussian binomials are algebraic integers")
                    })
                    .collect()
            })
            .collect();
        let mut table = Vec::with_capacity(n * d * n * d);
        for i in 0..n {
            for l in 0..d {
                for j in 0..n {
                    for m in 0..d {
                        let e = alg.exponent(i, l, j, m);
                        table.push(fp.mul(&fp.unit(false, e), &binoms[l + m][l]));
                    }
                }
            }
        }
        ConstantTable { fp, n, d, table }
    }

    fn get(&self, i: usize, l: usize, j: usize, m: usize) -> &[u64] {
        &self.table[((i * self.d + l) * self.n + j) * self.d + m]
    }
}

/// `Δ(a·b) = Δ(a)·Δ(b)` and `ε(a·b) = ε(a)ε(b)` for every pair of basis
/// paths. The coproduct identity is decided by fingerprints, whose exactness
/// rests on the L1 bound `2·C(l+m, l)` of the difference of both sides.
pub fn suite_multiplicativity(params: &Params, exec: Execution) -> SuiteReport {
    let mut t = Tally::new("multiplicativity");
    let (n, d) = (params.n(), params.d());
    let table = ConstantTable::new(params);
    let fp = &table.fp;
    let bound_ok = 2 * binomial_u128(2 * d - 2, d - 1) < fp.bound();
    t.record(bound_ok, || format!("L1 bound for d = {d} exceeds the fingerprint modulus"));
    let alg = MajidAlgebra::shared(params);
    let paths = PathElement::all(params);
    let pairs: Vec<(PathElement, PathElement)> =
        paths.iter().flat_map(|&a| paths.iter().map(move |&b| (a, b))).collect();
    let results = exec.map(&pairs, |&(a, b)| {
        let (l, m) = (a.l, b.l);
        for z in 0..=(l + m) {
            if l + m - z >= d || z >= d {
                continue;
            }
            let mut acc = fp.zero();
            for x in z.saturating_sub(m)..=z.min(l) {
                let y = z - x;
                let first = table.get((a.i + x) % n, l - x, (b.i + y) % n, m - y);
                let second = table.get(a.i, x, b.i, y);
                fp.mul_add(&mut acc, first, second);
            }
            if l + m < d {
                fp.sub_assign(&mut acc, table.get(a.i, l, b.i, m));
            }
            if !Fingerprinter::is_zero(&acc) {
                return Some(format!("Δ({a}·{b}) ≠ Δ({a})·Δ({b}) at split length {z}"));
            }
        }
        let prod = alg.path_mul(a, b);
        let eps = prod.counit();
        let want = counit(a) * counit(b);
        (eps != CycNumber::from_integer(params.field(), want))
            .then(|| format!("ε({a}·{b}) = {eps}, expected {want}"))
    });
    for r in results {
        t.record(r.is_none(), || r.clone().unwrap_or_default());
    }
    t.finish()
}

/// Comodule axioms for every string module, and for tensor products:
/// exact on every pair when `d <= 9`, otherwise decided by fingerprints on
/// the covering family below plus a few random pairs.
pub fn suite_comodule(params: &Params, exec: Execution) -> Result<SuiteReport> {
    let mut t = Tally::new("comodule");
    let n = params.n();
    for c in IndecompClass::all(params) {
        let ok = coaction_indecomposable(c, params)?.check_axioms(n).is_ok();
        t.record(ok, || format!("coaction of {c} violates the comodule axioms"));
    }
    let pairs = class_pairs(params);
    if params.d() <= EXACT_COMODULE_MAX_D {
        let results = exec.map(&pairs, |&(a, b)| -> Result<Option<usize>> {
            Ok(tensor_coaction(a, b, params, None)?.check_axioms(n).err())
        });
        for (&(a, b), r) in pairs.iter().zip(results) {
            let bad = r?;
            t.record(bad.is_none(), || {
                format!("tensor coaction of {a}⊗{b} fails at basis vector {}", bad.unwrap_or(0))
            });
        }
    } else {
        // Every constant at a basis vector v_x0 ⊗ v_y0 of V(i,e)⊗V(j,f)
        // depends only on (i+x0)', (j+y0)' and offsets, so the origin of the
        // n² products V(r,d-1)⊗V(t,d-1) covers every case.
        let table = ConstantTable::new(params);
        let d = params.d();
        let mut jobs: Vec<(IndecompClass, IndecompClass, bool)> = (0..n)
            .flat_map(|r| (0..n).map(move |u| (class(r, d - 1), class(u, d - 1), true)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ params.order() as u64);
        for _ in 0..COMODULE_SAMPLE {
            let (a, b) = pairs[rng.random_range(0..pairs.len())];
            jobs.push((a, b, false));
        }
        let results = exec.map(&jobs, |&(a, b, origin)| tensor_coassociative_fingerprint(&table, a, b, origin));
        for (&(a, b, _), r) in jobs.iter().zip(results) {
            t.record(r.is_none(), || format!("tensor coaction of {a}⊗{b} fails: {}", r.clone().unwrap_or_default()));
        }
    }
    Ok(t.finish())
}

/// Coassociativity of the tensor structure map on every basis vector of
/// V(a)⊗V(b): for each target `v_x ⊗ v_y` and split length `z`,
/// `Σ C(src→mid) C(mid→dst) = C(src→dst)` over intermediate vectors at
/// distance `z`. Counit holds by construction (degree-zero constants are 1).
fn tensor_coassociative_fingerprint(
    table: &ConstantTable,
    a: IndecompClass,
    b: IndecompClass,
    origin_only: bool,
) -> Option<String> {
    let (n, d) = (table.n, table.d);
    let fp = &table.fp;
    let constant = |x0: usize, y0: usize, x: usize, y: usize| -> Option<&[u64]> {
        (x + y - x0 - y0 < d).then(|| table.get((a.i + x0) % n, x - x0, (b.i + y0) % n, y - y0))
    };
    let bound = 2 * binomial_u128(2 * d - 2, d - 1);
    if bound >= fp.bound() {
        return Some("L1 bound exceeds the fingerprint modulus".into());
    }
    let (x_top, y_top) = if origin_only { (0, 0) } else { (a.e, b.e) };
    for x0 in 0..=x_top {
        for y0 in 0..=y_top {
            for x2 in x0..=a.e {
                for y2 in y0..=b.e {
                    let total = x2 + y2 - x0 - y0;
                    if total >= d {
                        continue;
                    }
                    let direct = constant(x0, y0, x2, y2).expect("total < d");
                    for z in 0..=total {
                        let mut acc = fp.zero();
                        for x1 in x0..=x2.min(x0 + z) {
                            let y1 = y0 + z - (x1 - x0);
                            if y1 > y2 {
                                continue;
                            }
                            if let (Some(c1), Some(c2)) = (constant(x0, y0, x1, y1), constant(x1, y1, x2, y2)) {
                                fp.mul_add(&mut acc, c1, c2);
                            }
                        }
                        fp.sub_assign(&mut acc, direct);
                        if !Fingerprinter::is_zero(&acc) {
                            return Some(format!("v_{x0}⊗v_{y0} → v_{x2}⊗v_{y2} at split {z}"));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Closed form against the rank oracle on every class pair.
pub fn suite_oracle(params: &Params, exec: Execution) -> Result<SuiteReport> {
    let report = oracle_sweep(params, exec)?;
    Ok(SuiteReport {
        name: "oracle",
        checked: report.checked as u64,
        failed: report.mismatches.len() as u64,
        counterexample: report.mismatches.first().map(|m| {
            format!(
                "{} ⊗ {}: formula {} vs oracle {}",
                m.left, m.right, m.formula, m.oracle
            )
        }),
        informational: false,
    })
}

/// The oracle recovers random direct sums of at most five string modules.
pub fn suite_additivity(params: &Params, seed: u64) -> Result<SuiteReport> {
    let mut t = Tally::new("additivity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (params.order() as u64 * 31 + params.k() as u64));
    let all = IndecompClass::all(params);
    for _ in 0..ADDITIVITY_SAMPLES {
        let count = rng.random_range(1..=5);
        let mut want = Decomposition::new();
        let mut rep = QuiverRep::zero(params.n());
        for _ in 0..count {
            let c = all[rng.random_range(0..all.len())];
            want.add(c, 1);
            rep = direct_sum(&rep, &standard_indecomposable(c, params)?)?;
        }
        let got = decompose_oracle(&rep, params.d())?;
        t.record(got == want, || format!("oracle gives {got} for {want}"));
    }
    Ok(t.finish())
}

/// Vertex dimensions, kernel dimensions and summand counts of
/// V(0,e)⊗V(0,f) against the counting formulas.
pub fn suite_counting(params: &Params, exec: Execution) -> Result<SuiteReport> {
    let mut t = Tally::new("counting");
    let ctx = FusionContext::new(params);
    let d = params.d();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|e| (0..d).map(move |f| (e, f))).collect();
    let results = exec.map(&pairs, |&(e, f)| -> Result<Vec<(bool, String)>> {
        let rep = tensor_rep(class(0, e), class(0, f), params)?;
        let kernels = kernel_dims(&rep)?;
        let oracle = decompose_oracle(&rep, d)?;
        let counts: Vec<usize> = ctx.summand_counts(e, f);
        let mut out = Vec::new();
        for i in 0..params.n() {
            let dim = ctx.vertex_dim(e, f, i);
            out.push((rep.dims()[i] == dim, format!("dim at vertex {i} of V(0,{e})⊗V(0,{f}) is {} not {dim}", rep.dims()[i])));
            let ker = ctx.kernel_dim(e, f, i);
            out.push((kernels[i] == ker, format!("kernel at vertex {i} of V(0,{e})⊗V(0,{f}) is {} not {ker}", kernels[i])));
        }
        let from_kernels = summands_from_kernels(rep.dims(), &kernels);
        let expected: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
        out.push((from_kernels == expected, format!("summand counts from kernels {from_kernels:?} vs {counts:?} for ({e},{f})")));
        let by_vertex = oracle.counts_by_vertex(params.n());
        out.push((by_vertex == counts, format!("oracle summand counts {by_vertex:?} vs {counts:?} for ({e},{f})")));
        Ok(out)
    });
    for r in results {
        for (ok, msg) in r? {
            t.record(ok, || msg);
        }
    }
    Ok(t.finish())
}

/// Unit, commutativity and dimension conservation of the closed form on
/// every pair, and agreement of its per-vertex counts with the summand
/// count formula.
pub fn suite_fusion_laws(params: &Params) -> SuiteReport {
    let mut t = Tally::new("fusion-laws");
    let ctx = FusionContext::new(params);
    let unit = class(0, 0);
    for (a, b) in class_pairs(params) {
        let ab = ctx.decompose(a, b);
        let ba = ctx.decompose(b, a);
        t.record(ab == ba, || format!("{a}⊗{b} = {ab} but {b}⊗{a} = {ba}"));
        t.record(ab.total_dim() == a.dim() * b.dim(), || format!("{a}⊗{b} = {ab} has the wrong dimension"));
        if a == unit {
            let want: Decomposition = [(b, 1)].into_iter().collect();
            t.record(ab == want, || format!("V(0,0)⊗{b} = {ab}"));
        }
        if a.i == 0 && b.i == 0 {
            let counts = ab.counts_by_vertex(params.n());
            t.record(counts == ctx.summand_counts(a.e, b.e), || format!("vertex counts of {a}⊗{b} are {counts:?}"));
        }
    }
    t.finish()
}

/// The named identities: `V(0,1)⊗V(0,f)`, `V(0,e)⊗V(0,d-1)`, and the three
/// Green ring relations.
pub fn suite_identities(params: &Params) -> Result<SuiteReport> {
    let mut t = Tally::new("identities");
    let ctx = FusionContext::new(params);
    let ring = GreenRing::new(params)?;
    let (n, d) = (params.n(), params.d());
    for f in 1..d.saturating_sub(1) {
        let got = ctx.decompose(class(0, 1), class(0, f));
        let want: Decomposition = [(class(0, f + 1), 1), (class(1 % n, f - 1), 1)].into_iter().collect();
        t.record(got == want, || format!("V(0,1)⊗V(0,{f}) = {got}, expected {want}"));
    }
    for e in 0..d {
        let got = ctx.decompose(class(0, e), class(0, d - 1));
        let want: Decomposition = (0..=e).map(|k| (class(k % n, d - 1), 1)).collect();
        t.record(got == want, || format!("V(0,{e})⊗V(0,{}) = {got}, expected {want}", d - 1));
    }
    let g = |i: usize, e: usize| GreenElement::basis(class(i % n, e));
    let mut power = GreenElement::one();
    for _ in 0..n {
        power = ring.mul(&power, &g(1, 0))?;
    }
    t.record(power == GreenElement::one(), || format!("[V(1,0)]^{n} = {power}"));
    for l in 2..d {
        let lhs = g(0, l);
        let rhs = ring.mul(&g(0, 1), &g(0, l - 1))?.sub(&ring.mul(&g(1, 0), &g(0, l - 2))?)?;
        t.record(lhs == rhs, || format!("[V(0,{l})] ≠ {rhs}"));
    }
    if d >= 2 {
        let lhs = ring.mul(&g(0, 1), &g(0, d - 1))?;
        let rhs = g(0, d - 1).add(&ring.mul(&g(1, 0), &g(0, d - 1))?)?;
        t.record(lhs == rhs, || format!("[V(0,1)][V(0,{})] = {lhs}, expected {rhs}", d - 1));
    }
    Ok(t.finish())
}

/// The isomorphism with Z[x,y]/J: multiplicativity on all basis pairs,
/// both round trips, vanishing relations and rank `nd`.
pub fn suite_green_ring(params: &Params, exec: Execution) -> Result<SuiteReport> {
    let mut t = Tally::new("green-ring");
    let ring = GreenRing::new(params)?;
    let (n, d) = (params.n(), params.d());
    let pairs = class_pairs(params);
    let results = exec.map(&pairs, |&(a, b)| -> Result<bool> {
        let u = GreenElement::basis(a);
        let v = GreenElement::basis(b);
        let lhs = ring.to_poly(&ring.mul(&u, &v)?)?;
        let rhs = ring.mul_normal(&ring.to_poly(&u)?, &ring.to_poly(&v)?)?;
        Ok(lhs == rhs)
    });
    for (&(a, b), r) in pairs.iter().zip(results) {
        let ok = r?;
        t.record(ok, || format!("to_poly([{a}]·[{b}]) differs from the reduced product"));
    }
    let mut images = Vec::with_capacity(n * d);
    for c in IndecompClass::all(params) {
        let u = GreenElement::basis(c);
        let nf = ring.to_poly(&u)?;
        let back = ring.from_poly(&nf)?;
        t.record(back == u, || format!("from_poly(to_poly([{c}])) = {back}"));
        images.push(nf);
    }
    for i in 0..n {
        for j in 0..d {
            let m = NormalForm::monomial(i, j, params)?;
            let back = ring.to_poly(&ring.from_poly(&m)?)?;
            t.record(back == m, || format!("to_poly(from_poly(x^{i} y^{j})) = {back}"));
        }
    }
    let rank = normal_form_rank(&images);
    t.record(rank == n * d && images.len() == n * d, || format!("basis images have rank {rank}, expected {}", n * d));
    let x_n = IntPoly2::monomial(n as u32, 0, 1).sub(&IntPoly2::one())?;
    t.record(ring.reduce(&x_n)?.is_zero(), || "x^n - 1 does not reduce to 0".into());
    let rel = IntPoly2::y().sub(&IntPoly2::x())?.sub(&IntPoly2::one())?.mul(&fibonacci_poly(d)?)?;
    t.record(ring.reduce(&rel)?.is_zero(), || "(y - x - 1) f_d does not reduce to 0".into());
    let x = GreenElement::basis(class(1 % n, 0));
    let mut power = GreenElement::one();
    for _ in 0..n {
        power = ring.mul(&power, &x)?;
    }
    let rel1 = ring.to_poly(&power.sub(&GreenElement::one())?)?;
    t.record(rel1.is_zero(), || format!("to_poly([V(1,0)]^n - 1) = {rel1}"));
    let top = GreenElement::basis(class(0, d - 1));
    let y_minus = GreenElement::basis(class(0, 1 % d))
        .sub(&x)?
        .sub(&GreenElement::one())?;
    if d >= 2 {
        let rel3 = ring.to_poly(&ring.mul(&y_minus, &top)?)?;
        t.record(rel3.is_zero(), || format!("to_poly(([V(0,1)] - [V(1,0)] - 1)[V(0,d-1)]) = {rel3}"));
    }
    Ok(t.finish())
}

/// Rank over Q of integer normal forms, by fraction-free elimination in i128.
fn normal_form_rank(forms: &[NormalForm]) -> usize {
    let mut rows: Vec<Vec<i128>> = forms
        .iter()
        .map(|f| f.coeffs().iter().flatten().map(|&c| c as i128).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let g = num_integer::gcd(f, pivot[c]);
            let (a, b) = (pivot[c] / g, f / g);
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = *x * a - y * b;
            }
            let content = row.iter().fold(0i128, |acc, &x| num_integer::gcd(acc, x));
            if content > 1 {
                row.iter_mut().for_each(|x| *x /= content);
            }
        }
        rank += 1;
    }
    rank
}

fn random_element(rng: &mut ChaCha8Rng, all: &[IndecompClass]) -> GreenElement {
    let mut out = GreenElement::zero();
    for _ in 0..rng.random_range(1..=3) {
        let c = all[rng.random_range(0..all.len())];
        let mut k = 0;
        while k == 0 {
            k = rng.random_range(-3..=3);
        }
        out.add_term(c, k).expect("small coefficients");
    }
    out
}

/// Commutativity of the Green ring product on all basis pairs and random
/// elements, associativity on `triples` random triples.
pub fn suite_ring_laws(params: &Params, triples: usize, seed: u64) -> Result<SuiteReport> {
    let mut t = Tally::new("ring-laws");
    let ring = GreenRing::new(params)?;
    for (a, b) in class_pairs(params) {
        let (u, v) = (GreenElement::basis(a), GreenElement::basis(b));
        t.record(ring.mul(&u, &v)? == ring.mul(&v, &u)?, || format!("[{a}]·[{b}] ≠ [{b}]·[{a}]"));
    }
    let all = IndecompClass::all(params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((params.order() as u64) << 8) ^ params.k() as u64);
    for _ in 0..triples {
        let u = random_element(&mut rng, &all);
        let v = random_element(&mut rng, &all);
        let w = random_element(&mut rng, &all);
        let left = ring.mul(&ring.mul(&u, &v)?, &w)?;
        let right = ring.mul(&u, &ring.mul(&v, &w)?)?;
        t.record(left == right, || format!("({u})·({v})·({w}) depends on bracketing"));
        t.record(ring.mul(&u, &v)? == ring.mul(&v, &u)?, || format!("({u})·({v}) is not commutative"));
    }
    Ok(t.finish())
}

/// Informational: how many triples of basis paths multiply associatively.
/// Both bracketings equal a root of unity times the same Gaussian
/// multinomial, so only the prefactor exponents are compared when the
/// multinomial is nonzero (total length below `d`); for `d <= 9` the
/// products are also compared exactly.
pub fn suite_path_associativity(params: &Params) -> SuiteReport {
    let mut t = Tally::new("path-associativity");
    let (n, d) = (params.n() as i64, params.d());
    let order = params.order() as i64;
    let alg = MajidAlgebra::shared(params);
    let paths = PathElement::all(params);
    for &a in &paths {
        for &b in &paths {
            for &c in &paths {
                if a.l + b.l + c.l >= d {
                    continue;
                }
                let ab = ((a.i + b.i) as i64 % n) as usize;
                let bc = ((b.i + c.i) as i64 % n) as usize;
                let left = alg.exponent(a.i, a.l, b.i, b.l) + alg.exponent(ab, a.l + b.l, c.i, c.l);
                let right = alg.exponent(b.i, b.l, c.i, c.l) + alg.exponent(a.i, a.l, bc, b.l + c.l);
                let same = (left - right).rem_euclid(order) == 0;
                if d <= EXACT_COMODULE_MAX_D {
                    let exact_left = alg.mul(&alg.path_mul(a, b), &crate::majid::MajidElement::basis(c, params.field()));
                    let exact_right = alg.mul(&crate::majid::MajidElement::basis(a, params.field()), &alg.path_mul(b, c));
                    assert_eq!(same, exact_left == exact_right, "prefactor shortcut disagrees with exact products");
                }
                t.record(same, || format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
            }
        }
    }
    let mut report = t.finish();
    report.informational = true;
    report
}

/// Suites independent of the parameters.
pub fn verify_global() -> Vec<SuiteReport> {
    vec![suite_count_n(8), suite_fibonacci(30)]
}

/// Every per-parameter suite.
pub fn verify_params(params: &Params, exec: Execution) -> Result<ParamsReport> {
    let suites = vec![
        suite_truncation(params),
        suite_coalgebra(params),
        suite_multiplicativity(params, exec),
        suite_comodule(params, exec)?,
        suite_oracle(params, exec)?,
        suite_additivity(params, DEFAULT_SEED)?,
        suite_counting(params, exec)?,
        suite_fusion_laws(params),
        suite_identities(params)?,
        suite_green_ring(params, exec)?,
        suite_ring_laws(params, DEFAULT_TRIPLES, DEFAULT_SEED)?,
        suite_path_associativity(params),
    ];
    Ok(ParamsReport {
        params: params.clone(),
        suites,
    })
}

/// `Quick` runs the given parameter set; `Full` sweeps every set with
/// `n <= 5`.
pub fn verify(level: Level, params: &Params, exec: Execution) -> Result<VerifyReport> {
    let targets = match level {
        Level::Quick => vec![params.clone()],
        Level::Full => Params::all_up_to(5),
    };
    let sections = targets
        .iter()
        .map(|p| verify_params(p, exec))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        level,
        global: verify_global(),
        sections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majid::validate_params;

    #[test]
    fn quick_verification_passes_on_small_parameters() {
        for (n, s, k) in [(2, 0, 2), (2, 1, 1), (3, 2, 5)] {
            let p = validate_params(n, s, k).unwrap();
            let report = verify(Level::Quick, &p, Execution::Parallel).unwrap();
            assert!(report.passed(), "{:?}", report.first_failure());
            assert!(report.sections[0].suites.iter().all(|s| s.checked > 0 || s.name == "path-associativity"));
        }
    }

    #[test]
    fn fingerprinted_comodule_check_matches_exact_on_small_d() {
        let p = validate_params(3, 1, 1).unwrap();
        let table = ConstantTable::new(&p);
        for (a, b) in class_pairs(&p).into_iter().step_by(7) {
            assert_eq!(tensor_coassociative_fingerprint(&table, a, b, false), None, "{a} {b}");
        }
    }

    #[test]
    fn fingerprints_catch_a_corrupted_constant() {
        let p = validate_params(2, 1, 1).unwrap();
        let mut table = ConstantTable::new(&p);
        let idx = ((table.d + 1) * table.n) * table.d + 1;
        let fp = table.fp.clone();
        table.table[idx] = fp.mul(&table.table[idx], &fp.unit(true, 0));
        let bad = class_pairs(&p)
            .into_iter()
            .any(|(a, b)| tensor_coassociative_fingerprint(&table, a, b, false).is_some());
        assert!(bad);
    }

    #[test]
    fn counterexamples_are_reported() {
        let mut t = Tally::new("demo");
        t.record(true, || unreachable!());
        t.record(false, || "first".into());
        t.record(false, || "second".into());
        let r = t.finish();
        assert_eq!((r.checked, r.failed), (3, 2));
        assert_eq!(r.counterexample.as_deref(), Some("first"));
        assert!(!r.passed());
    }
}
