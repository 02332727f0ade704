//! The truncated path coalgebra of the cyclic quiver Z_n with its graded
//! coquasi-Hopf multiplication.
//!
//! Paths are written `p_i^l` (source vertex `i`, length `l`). The scalar
//! field is Q(ζ) with ζ a primitive n²-th root of unity; the primitive n-th
//! root used by the multiplication is ζ^n and the deformation parameter is
//! `q = ζ^k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNumber, CyclotomicField, QBinomTable};
use crate::error::{Error, ParamError, Result};

/// Largest supported `n`; the ambient field has degree φ(n²).
pub const MAX_N: i64 = 32;

/// A validated parameter triple together with the order `d` of `q`.
#[derive(Clone)]
pub struct Params {
    n: usize,
    s: usize,
    k: usize,
    d: usize,
    field: Arc<CyclotomicField>,
}

impl PartialEq for Params {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.s, self.k) == (other.n, other.s, other.k)
    }
}

impl Eq for Params {}

impl fmt::Debug for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Params(n={}, s={}, k={}, d={})", self.n, self.s, self.k, self.d)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} s={} k={} (d={})", self.n, self.s, self.k, self.d)
    }
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            s: usize,
            k: usize,
            d: usize,
        }
        Repr {
            n: self.n,
            s: self.s,
            k: self.k,
            d: self.d,
        }
        .serialize(serializer)
    }
}

/// Checks `(n, s, k)` and computes `d`, the exact multiplicative order of
/// `q = ζ^k`. `k` is reduced mod n² first.
pub fn validate_params(n: i64, s: i64, k: i64) -> Result<Params, ParamError> {
    if n <= 1 {
        return Err(ParamError::NTooSmall(n));
    }
    if n > MAX_N {
        return Err(ParamError::NTooLarge(n));
    }
    if !(0..n).contains(&s) {
        return Err(ParamError::SOutOfRange { s, n });
    }
    if (k - s).rem_euclid(n) != 0 {
        return Err(ParamError::ExponentMismatch { k, s, n });
    }
    let order = n * n;
    let k = k.rem_euclid(order);
    let d = order / k.gcd(&order);
    Ok(Params {
        n: n as usize,
        s: s as usize,
        k: k as usize,
        d: d as usize,
        field: CyclotomicField::get(order as u32),
    })
}

impl Params {
    pub fn new(n: i64, s: i64, k: i64) -> Result<Self, ParamError> {
        validate_params(n, s, k)
    }

    /// Every valid parameter set with `2 <= n <= max_n`, ordered by `(n, s, k)`.
    pub fn all_up_to(max_n: usize) -> Vec<Params> {
        let mut out = Vec::new();
        for n in 2..=max_n as i64 {
            for s in 0..n {
                let mut k = s;
                while k < n * n {
                    out.push(validate_params(n, s, k).expect("enumerated parameters are valid"));
                    k += n;
                }
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Exponent of q as a power of ζ, in `[0, n²)`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Order of q; paths of length `>= d` are truncated away.
    pub fn d(&self) -> usize {
        self.d
    }

    /// n², the order of ζ.
    pub fn order(&self) -> usize {
        self.n * self.n
    }

    /// Number of indecomposables, `n * d`.
    pub fn basis_size(&self) -> usize {
        self.n * self.d
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// m reduced into `[0, n)`.
    pub fn residue(&self, m: i64) -> usize {
        m.rem_euclid(self.n as i64) as usize
    }

    /// ζ^t.
    pub fn zeta(&self, t: i64) -> CycNumber {
        CycNumber::root(&self.field, t)
    }

    /// The primitive n-th root of unity ζ^n.
    pub fn primitive_nth_root(&self) -> CycNumber {
        self.zeta(self.n as i64)
    }

    pub fn q(&self) -> CycNumber {
        self.zeta(self.k as i64)
    }

    /// Exponent h with ζ^h the base of the Gaussian binomials in the
    /// multiplication: ζ^{-ns} q^{-1}.
    pub fn hbar_exponent(&self) -> i64 {
        let order = self.order() as i64;
        (-((self.n * self.s) as i64) - self.k as i64).rem_euclid(order)
    }

    pub fn hbar(&self) -> CycNumber {
        self.zeta(self.hbar_exponent())
    }
}

/// The basis path `p_i^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PathElement {
    /// Source vertex.
    pub i: usize,
    /// Length.
    pub l: usize,
}

impl PathElement {
    pub fn new(i: usize, l: usize, params: &Params) -> Result<Self> {
        if i >= params.n || l >= params.d {
            return Err(Error::InvalidPath {
                i,
                l,
                n: params.n,
                d: params.d,
            });
        }
        Ok(PathElement { i, l })
    }

    /// Target vertex `(i + l)'`.
    pub fn target(&self, n: usize) -> usize {
        (self.i + self.l) % n
    }

    /// All `n * d` basis paths, ordered by `(i, l)`.
    pub fn all(params: &Params) -> Vec<PathElement> {
        (0..params.n)
            .flat_map(|i| (0..params.d).map(move |l| PathElement { i, l }))
            .collect()
    }
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p_{}^{}", self.i, self.l)
    }
}

/// `Δ(p_i^l) = Σ_m p_{(i+m)'}^{l-m} ⊗ p_i^m`, every coefficient 1.
pub fn coproduct(p: PathElement, n: usize) -> Vec<(PathElement, PathElement)> {
    (0..=p.l)
        .map(|m| {
            (
                PathElement {
                    i: (p.i + m) % n,
                    l: p.l - m,
                },
                PathElement { i: p.i, l: m },
            )
        })
        .collect()
}

pub fn counit(p: PathElement) -> i64 {
    i64::from(p.l == 0)
}

/// A finite linear combination of basis paths.
#[derive(Clone, PartialEq, Eq)]
pub struct MajidElement {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<PathElement, CycNumber>,
}

impl fmt::Debug for MajidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl MajidElement {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        MajidElement {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(p: PathElement, field: &Arc<CyclotomicField>) -> Self {
        let mut out = Self::zero(field);
        out.add_term(p, CycNumber::one(field));
        out
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn add_term(&mut self, p: PathElement, c: CycNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&p) {
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(p, sum);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<PathElement, CycNumber> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &PathElement) -> CycNumber {
        self.terms
            .get(p)
            .cloned()
            .unwrap_or_else(|| CycNumber::zero(&self.field))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, -c);
        }
        out
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        let mut out = Self::zero(&self.field);
        for (p, x) in &self.terms {
            out.add_term(*p, x * c);
        }
        out
    }

    /// Linear extension of ε.
    pub fn counit(&self) -> CycNumber {
        self.terms
            .iter()
            .filter(|(p, _)| p.l == 0)
            .fold(CycNumber::zero(&self.field), |acc, (_, c)| &acc + c)
    }

    /// Linear extension of Δ, as a map from pairs of paths to coefficients.
    pub fn coproduct(&self, n: usize) -> BTreeMap<(PathElement, PathElement), CycNumber> {
        let mut out: BTreeMap<(PathElement, PathElement), CycNumber> = BTreeMap::new();
        for (p, c) in &self.terms {
            for pair in coproduct(*p, n) {
                let entry = out.entry(pair).or_insert_with(|| CycNumber::zero(&self.field));
                *entry = &*entry + c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Parses `{"terms": [{"i": .., "l": .., "coeff": ["p/q", ..]}]}`.
    pub fn from_json(json: &str, params: &Params) -> Result<Self> {
        let repr: MajidElementRepr =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::zero(&params.field);
        for t in repr.terms {
            let p = PathElement::new(t.i, t.l, params)?;
            out.add_term(p, CycNumber::from_coeff_strings(&params.field, &t.coeff)?);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct MajidTermRepr {
    i: usize,
    l: usize,
    coeff: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct MajidElementRepr {
    terms: Vec<MajidTermRepr>,
}

impl Serialize for MajidElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MajidElementRepr {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| MajidTermRepr {
                    i: p.i,
                    l: p.l,
                    coeff: c.coeff_strings(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Structure constants of the multiplication for one parameter set.
pub struct MajidAlgebra {
    params: Params,
    binomials: QBinomTable,
}

impl fmt::Debug for MajidAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MajidAlgebra({:?})", self.params)
    }
}

fn algebra_cache() -> &'static Mutex<HashMap<(usize, usize, usize), Arc<MajidAlgebra>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, usize), Arc<MajidAlgebra>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl MajidAlgebra {
    pub fn new(params: &Params) -> Self {
        let max_m = 2 * params.d.saturating_sub(1);
        MajidAlgebra {
            params: params.clone(),
            binomials: QBinomTable::new(&params.hbar(), max_m),
        }
    }

    /// A process-wide shared instance for `params`.
    pub fn shared(params: &Params) -> Arc<Self> {
        let key = (params.n, params.s, params.k);
        if let Some(a) = algebra_cache()
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .get(&key)
        {
            return a.clone();
        }
        let built = Arc::new(Self::new(params));
        algebra_cache()
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .entry(key)
            .or_insert(built)
            .clone()
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Gaussian binomials in ħ up to `m = 2d - 2`.
    pub fn binomials(&self) -> &QBinomTable {
        &self.binomials
    }

    /// Exponent E, reduced mod n², of the root-of-unity prefactor in
    /// `p_i^l · p_j^m = ζ^E (l+m choose l)_ħ p_{(i+j)'}^{l+m}`.
    pub fn exponent(&self, i: usize, l: usize, j: usize, m: usize) -> i64 {
        let (n, s, k) = (self.params.n as i64, self.params.s as i64, self.params.k as i64);
        let (i, l, j, m) = (i as i64, l as i64, j as i64, m as i64);
        let carry_num = m + j - (m + j).rem_euclid(n);
        assert_eq!(carry_num % n, 0, "carry term must be divisible by n");
        let carry = carry_num / n;
        let e = -n * s * j * l - k * j * l + n * s * (i + l.rem_euclid(n)) * carry;
        e.rem_euclid(n * n)
    }

    /// The untruncated structure constant of `p_i^l · p_j^m` (valid for
    /// `l + m <= 2d - 2`).
    pub fn coefficient(&self, i: usize, l: usize, j: usize, m: usize) -> CycNumber {
        let binom = self
            .binomials
            .get(l + m, l)
            .expect("path lengths stay within the binomial table");
        if binom.is_zero() {
            return binom.clone();
        }
        &self.params.zeta(self.exponent(i, l, j, m)) * binom
    }

    /// Product of two basis paths in the truncated algebra. When `l + m >= d`
    /// the result is zero, and the untruncated coefficient vanishes as well.
    pub fn path_mul(&self, a: PathElement, b: PathElement) -> MajidElement {
        let mut out = MajidElement::zero(&self.params.field);
        if a.l + b.l >= self.params.d {
            debug_assert!(self.coefficient(a.i, a.l, b.i, b.l).is_zero());
            return out;
        }
        out.add_term(
            PathElement {
                i: (a.i + b.i) % self.params.n,
                l: a.l + b.l,
            },
            self.coefficient(a.i, a.l, b.i, b.l),
        );
        out
    }

    /// Bilinear extension of [`MajidAlgebra::path_mul`].
    pub fn mul(&self, x: &MajidElement, y: &MajidElement) -> MajidElement {
        let mut out = MajidElement::zero(&self.params.field);
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                for (p, c) in self.path_mul(*a, *b).terms {
                    out.add_term(p, &(ca * cb) * &c);
                }
            }
        }
        out
    }
}

pub fn path_mul(a: PathElement, b: PathElement, params: &Params) -> MajidElement {
    MajidAlgebra::shared(params).path_mul(a, b)
}

pub fn majid_mul(x: &MajidElement, y: &MajidElement, params: &Params) -> MajidElement {
    MajidAlgebra::shared(params).mul(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::q_binomial;

    fn p(i: usize, l: usize) -> PathElement {
        PathElement { i, l }
    }

    #[test]
    fn parameter_validation() {
        let a = validate_params(2, 0, 2).unwrap();
        assert_eq!(a.d(), 2);
        assert_eq!(a.q(), CycNumber::from_integer(a.field(), -1));
        let b = validate_params(2, 1, 1).unwrap();
        assert_eq!(b.d(), 4);
        assert_eq!(
            validate_params(2, 1, 2).unwrap_err(),
            ParamError::ExponentMismatch { k: 2, s: 1, n: 2 }
        );
        assert_eq!(validate_params(1, 0, 0).unwrap_err(), ParamError::NTooSmall(1));
        assert!(matches!(validate_params(3, 3, 3), Err(ParamError::SOutOfRange { .. })));
        assert!(matches!(validate_params(99, 0, 0), Err(ParamError::NTooLarge(99))));
        assert_eq!(validate_params(3, 1, -2).unwrap().k(), 7);
        assert_eq!(validate_params(4, 0, 0).unwrap().d(), 1);
    }

    #[test]
    fn order_matches_repeated_multiplication() {
        for params in Params::all_up_to(4) {
            let q = params.q();
            let mut power = q.clone();
            let mut order = 1;
            while !power.is_one() {
                power = &power * &q;
                order += 1;
            }
            assert_eq!(order, params.d(), "{params:?}");
            if params.s() == 0 {
                assert_eq!(params.n() % params.d(), 0);
            }
            assert!(params.q().pow(params.n() as i64) == params.primitive_nth_root().pow(params.s() as i64));
        }
    }

    #[test]
    fn hbar_has_order_d() {
        for params in Params::all_up_to(4) {
            let h = params.hbar();
            for t in 1..params.d() {
                assert!(!h.pow(t as i64).is_one());
            }
            assert!(h.pow(params.d() as i64).is_one());
        }
    }

    #[test]
    fn parameter_enumeration_counts() {
        let all = Params::all_up_to(5);
        assert_eq!(all.len(), 4 + 9 + 16 + 25);
        let d25 = all.iter().filter(|p| p.d() == 25).count();
        assert_eq!(d25, 20);
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(coproduct(p(3, 0), 5), vec![(p(3, 0), p(3, 0))]);
        assert_eq!(coproduct(p(0, 1), 2), vec![(p(0, 1), p(0, 0)), (p(1, 0), p(0, 1))]);
        assert_eq!(
            coproduct(p(1, 2), 3),
            vec![(p(1, 2), p(1, 0)), (p(2, 1), p(1, 1)), (p(0, 0), p(1, 2))]
        );
        assert_eq!(counit(p(0, 0)), 1);
        assert_eq!(counit(p(2, 1)), 0);
    }

    #[test]
    fn vertex_products_are_group_multiplication() {
        let params = validate_params(3, 1, 4).unwrap();
        let alg = MajidAlgebra::new(&params);
        for i in 0..3 {
            for j in 0..3 {
                let prod = alg.path_mul(p(i, 0), p(j, 0));
                assert_eq!(prod, MajidElement::basis(p((i + j) % 3, 0), params.field()));
            }
        }
    }

    #[test]
    fn truncated_product_vanishes() {
        let params = validate_params(2, 0, 2).unwrap();
        let alg = MajidAlgebra::new(&params);
        assert!(alg.path_mul(p(0, 1), p(1, 1)).is_zero());
        assert!(alg.coefficient(0, 1, 1, 1).is_zero());
    }

    #[test]
    fn coefficient_matches_factorwise_evaluation() {
        // n=2, s=1, q=ζ_4: p_1^1 · p_1^1 = qq^{-1} q^{-1} qq^{2} (2 choose 1)_ħ p_0^2.
        let params = validate_params(2, 1, 1).unwrap();
        let alg = MajidAlgebra::new(&params);
        let qq = params.primitive_nth_root();
        let q = params.q();
        let hbar = &qq.inv().unwrap() * &q.inv().unwrap();
        let expected = &(&(&qq.inv().unwrap() * &q.inv().unwrap()) * &qq.pow(2))
            * &q_binomial(2, 1, &hbar).unwrap();
        let prod = alg.path_mul(p(1, 1), p(1, 1));
        assert_eq!(prod.coeff(&p(0, 2)), expected);
        assert_eq!(prod.terms().len(), 1);
    }

    #[test]
    fn unit_acts_trivially_on_the_left() {
        for params in Params::all_up_to(3) {
            let alg = MajidAlgebra::new(&params);
            for b in PathElement::all(&params) {
                let prod = alg.path_mul(p(0, 0), b);
                assert_eq!(prod, MajidElement::basis(b, params.field()));
            }
        }
    }

    #[test]
    fn element_products_are_bilinear() {
        let params = validate_params(3, 2, 5).unwrap();
        let f = params.field().clone();
        let alg = MajidAlgebra::new(&params);
        let mut x1 = MajidElement::zero(&f);
        x1.add_term(p(0, 1), params.zeta(3));
        x1.add_term(p(2, 0), CycNumber::from_integer(&f, -2));
        let mut x2 = MajidElement::zero(&f);
        x2.add_term(p(1, 2), params.zeta(1));
        let mut y = MajidElement::zero(&f);
        y.add_term(p(1, 1), CycNumber::from_integer(&f, 5));
        y.add_term(p(0, 3), params.zeta(7));
        assert_eq!(alg.mul(&x1.add(&x2), &y), alg.mul(&x1, &y).add(&alg.mul(&x2, &y)));
        assert!(alg.mul(&MajidElement::zero(&f), &y).is_zero());
    }

    #[test]
    fn exact_delta_multiplicativity_small() {
        for params in Params::all_up_to(3) {
            let n = params.n();
            let alg = MajidAlgebra::new(&params);
            let f = params.field().clone();
            for a in PathElement::all(&params) {
                for b in PathElement::all(&params) {
                    let lhs = alg.path_mul(a, b).coproduct(n);
                    let mut rhs: BTreeMap<(PathElement, PathElement), CycNumber> = BTreeMap::new();
                    for (a1, a2) in coproduct(a, n) {
                        for (b1, b2) in coproduct(b, n) {
                            let left = alg.path_mul(a1, b1);
                            let right = alg.path_mul(a2, b2);
                            for (x, cx) in left.terms() {
                                for (y, cy) in right.terms() {
                                    let e = rhs.entry((*x, *y)).or_insert_with(|| CycNumber::zero(&f));
                                    *e = &*e + &(cx * cy);
                                }
                            }
                        }
                    }
                    rhs.retain(|_, c| !c.is_zero());
                    assert_eq!(lhs, rhs, "{params:?} {a} {b}");
                    let eps = alg.path_mul(a, b).counit();
                    assert_eq!(eps, CycNumber::from_integer(&f, counit(a) * counit(b)));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let params = validate_params(2, 1, 1).unwrap();
        let f = params.field().clone();
        let mut x = MajidElement::zero(&f);
        x.add_term(p(1, 3), params.zeta(1));
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"terms":[{"i":1,"l":3,"coeff":["0/1","1/1"]}]}"#);
        assert_eq!(MajidElement::from_json(&json, &params).unwrap(), x);
        assert!(MajidElement::from_json(r#"{"terms":[{"i":2,"l":0,"coeff":["1","0"]}]}"#, &params).is_err());
    }
}
